//! Exact integer row reduction: Hermite normal form, lattice membership and
//! left integer kernels. Matrices are tiny, so plain Euclidean elimination
//! over `BigInt` is used throughout.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub type IntRow = Vec<BigInt>;

fn sub_multiple(target: &mut IntRow, source: &IntRow, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for (t, s) in target.iter_mut().zip(source) {
        *t -= q * s;
    }
}

/// Row Hermite normal form of the lattice spanned by `rows`.
///
/// Output rows are sorted by pivot column, pivots are positive, entries above
/// each pivot lie in `[0, pivot)`, and zero rows are dropped. The result is a
/// canonical basis: two generating sets of the same lattice give identical
/// output.
pub fn row_hnf(mut rows: Vec<IntRow>, ncols: usize) -> Vec<IntRow> {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    let mut pivot = 0;
    for col in 0..ncols {
        if pivot == rows.len() {
            break;
        }
        loop {
            let best = (pivot..rows.len())
                .filter(|&r| !rows[r][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let Some(best) = best else { break };
            rows.swap(pivot, best);
            let mut clean = true;
            for r in pivot + 1..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let q = rows[r][col].div_floor(&rows[pivot][col]);
                let src = rows[pivot].clone();
                sub_multiple(&mut rows[r], &src, &q);
                if !rows[r][col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if rows[pivot][col].is_zero() {
            continue;
        }
        if rows[pivot][col].is_negative() {
            for x in rows[pivot].iter_mut() {
                *x = -x.clone();
            }
        }
        let src = rows[pivot].clone();
        for r in 0..pivot {
            let q = rows[r][col].div_floor(&src[col]);
            sub_multiple(&mut rows[r], &src, &q);
        }
        pivot += 1;
    }
    rows.truncate(pivot);
    rows
}

/// Pivot column of each HNF row.
pub fn pivots(hnf: &[IntRow]) -> Vec<usize> {
    hnf.iter()
        .map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero HNF row"))
        .collect()
}

/// Solves `v = sum_i k_i hnf[i]` over the integers by forward substitution;
/// returns the coefficients when `v` lies in the lattice.
pub fn solve_in_lattice(hnf: &[IntRow], v: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut rest: IntRow = v.to_vec();
    let mut coeffs = Vec::with_capacity(hnf.len());
    for (row, col) in hnf.iter().zip(pivots(hnf)) {
        let (q, r) = rest[col].div_rem(&row[col]);
        if !r.is_zero() {
            return None;
        }
        sub_multiple(&mut rest, row, &q);
        coeffs.push(q);
    }
    if rest.iter().all(Zero::is_zero) {
        Some(coeffs)
    } else {
        None
    }
}

/// Z-basis (in HNF) of the left kernel `{z : z^T A = 0}` of an integer
/// matrix given by its rows.
pub fn left_kernel(rows: &[IntRow]) -> Vec<IntRow> {
    let r = rows.len();
    if r == 0 {
        return Vec::new();
    }
    let ncols = rows[0].len();
    // [A | I] reduced on the A columns; rows whose A part vanishes carry the kernel
    let augmented: Vec<IntRow> = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut a = row.clone();
            a.extend((0..r).map(|j| BigInt::from((i == j) as i64)));
            a
        })
        .collect();
    let reduced = row_hnf(augmented, ncols + r);
    let kernel: Vec<IntRow> = reduced
        .into_iter()
        .filter(|row| row[..ncols].iter().all(Zero::is_zero))
        .map(|row| row[ncols..].to_vec())
        .collect();
    row_hnf(kernel, r)
}
