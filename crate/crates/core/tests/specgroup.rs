use bohrlift::apcore::{Frequency, RealBase, TrigPoly};
use bohrlift::rational::{int, ratio};
use bohrlift::specgroup::*;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn s2(b: &RealBase, a: [i64; 2], c: [i64; 2]) -> Frequency {
    Frequency::scalar(b, &[a, c]).unwrap()
}

#[test]
fn spectrum_examples() {
    let b = RealBase::sqrt2();
    assert!(spectrum(&TrigPoly::zero(&b, 1)).is_empty());
    let q = RealBase::rational();
    let one = Frequency::integer(&q, 1).unwrap();
    let sp = spectrum(&TrigPoly::sine(&one, 1.0));
    assert_eq!(sp.into_iter().collect::<Vec<_>>(), vec![-one.clone(), one]);
    let mut p = TrigPoly::constant(&b, 1, 3.0);
    let r2 = s2(&b, [0, 1], [1, 1]);
    p.add_cosine(&r2, 1.0).unwrap();
    let sp = spectrum(&p);
    assert_eq!(sp.len(), 3);
    assert!(sp.contains(&Frequency::zero(&b, 1)) && sp.contains(&r2) && sp.contains(&-r2));
}

#[test]
fn group_examples() {
    let b = RealBase::sqrt2();
    let r2 = s2(&b, [0, 1], [1, 1]);
    let half = s2(&b, [0, 1], [1, 2]);
    let g = group_generated([&r2, &half]).unwrap();
    assert_eq!(g.generators(), vec![half.clone()]);
    assert_eq!(g.denominator(), &BigInt::from(2));
    assert_eq!(g.hnf(), &[vec![BigInt::from(0), BigInt::from(1)]]);
    // brute force: every k1 sqrt2 + k2 sqrt2/2 with |k| <= 5 is a multiple of sqrt2/2, and sqrt2/2 is attained
    let mut attained = false;
    for k1 in -5..=5 {
        for k2 in -5..=5 {
            let x = r2.scale(&int(k1)).checked_add(&half.scale(&int(k2))).unwrap();
            let c = x.coord(0, 1) * ratio(2, 1);
            assert!(c.is_integer() && x.coord(0, 0) == &int(0));
            attained |= x == half;
        }
    }
    assert!(attained);

    let q = RealBase::rational();
    let z = group_generated([&Frequency::integer(&q, 1).unwrap()]).unwrap();
    assert_eq!(z.generators(), vec![Frequency::integer(&q, 1).unwrap()]);
    let one = s2(&b, [1, 1], [0, 1]);
    let g2 = group_generated([&one, &r2]).unwrap();
    assert_eq!(g2.rank(), 2);
    assert_eq!(g2.generators(), vec![one, r2]);
    let empty: [&Frequency; 0] = [];
    assert_eq!(group_generated(empty).unwrap().rank(), 0);
}

#[test]
fn member_examples() {
    let b = RealBase::sqrt2();
    let half = s2(&b, [0, 1], [1, 2]);
    let g = group_generated([&half]).unwrap();
    let m = g.member(&s2(&b, [0, 1], [3, 2])).unwrap().unwrap();
    assert_eq!(m.coefficients, vec![BigInt::from(3)]);
    assert!(g.member(&s2(&b, [1, 1], [0, 1])).unwrap().is_none());
    let zero = g.member(&Frequency::zero(&b, 1)).unwrap().unwrap();
    assert_eq!(zero.coefficients, vec![BigInt::from(0)]);
    let other = Frequency::integer(&RealBase::rational(), 1).unwrap();
    assert!(g.member(&other).is_err());
}

#[test]
fn qbasis_examples() {
    let q = RealBase::rational();
    let h = Frequency::scalar(&q, &[[1, 2]]).unwrap();
    let t = Frequency::scalar(&q, &[[1, 3]]).unwrap();
    let basis = qlinear_basis(&q, 1, [&h, &t]).unwrap();
    assert_eq!(basis.vectors(), &[h]);
    assert_eq!(basis.coords(&t).unwrap(), vec![ratio(2, 3)]);

    let b = RealBase::sqrt2();
    let one = s2(&b, [1, 1], [0, 1]);
    let r2 = s2(&b, [0, 1], [1, 1]);
    let both = s2(&b, [1, 1], [1, 1]);
    let basis = qlinear_basis(&b, 1, [&one, &r2, &both]).unwrap();
    assert_eq!(basis.vectors(), &[one, r2]);
    assert_eq!(basis.coords(&both).unwrap(), vec![int(1), int(1)]);

    let half = s2(&b, [0, 1], [1, 2]);
    let full = s2(&b, [0, 1], [1, 1]);
    let basis = qlinear_basis(&b, 1, [&half, &full]).unwrap();
    assert_eq!(basis.vectors(), &[half]);
    assert_eq!(basis.coords(&full).unwrap(), vec![int(2)]);
}

/// Random generators with `n * d <= 4`, numerators `|.| <= 6`.
fn random_instance(rng: &mut ChaCha8Rng) -> (RealBase, usize, Vec<Frequency>) {
    let (base, dims) = match rng.random_range(0..4) {
        0 => (RealBase::rational(), 1),
        1 => (RealBase::sqrt2(), 1),
        2 => (RealBase::rational(), 2),
        _ => (RealBase::sqrt2(), 2),
    };
    let count = rng.random_range(1..=3);
    let gens = (0..count)
        .map(|_| {
            let rows = (0..dims)
                .map(|_| {
                    (0..base.len())
                        .map(|_| ratio(rng.random_range(-6..=6), rng.random_range(1..=3)))
                        .collect()
                })
                .collect();
            Frequency::new(&base, rows).unwrap()
        })
        .collect();
    (base, dims, gens)
}

fn combos(r: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-bound..=bound).map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    out
}

fn det(m: &[Vec<BigInt>]) -> BigInt {
    if m.len() == 1 {
        return m[0][0].clone();
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<BigInt>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let sign = if j % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
            sign * &m[0][j] * det(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (k - 1..n)
        .flat_map(|last| {
            subsets(last, k - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })
        })
        .collect()
}

/// `(rank, gcd of all rank x rank minors)`: a lattice invariant independent of the generating set.
fn minor_invariant(rows: &[Vec<BigInt>]) -> (usize, BigInt) {
    use num_integer::Integer;
    let w = rows.first().map_or(0, Vec::len);
    for k in (1..=rows.len().min(w)).rev() {
        let mut g = BigInt::from(0);
        for rs in subsets(rows.len(), k) {
            for cs in subsets(w, k) {
                let m: Vec<Vec<BigInt>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| rows[r][c].clone()).collect())
                    .collect();
                g = g.gcd(&det(&m));
            }
        }
        if g != BigInt::from(0) {
            return (k, g);
        }
    }
    (0, BigInt::from(1))
}

fn combine(base: &RealBase, dims: usize, gens: &[Frequency], k: &[i64]) -> Frequency {
    gens.iter().zip(k).fold(Frequency::zero(base, dims), |acc, (g, &c)| {
        acc.checked_add(&g.scale(&int(c))).unwrap()
    })
}

#[test]
fn membership_agrees_with_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..60 {
        let (base, dims, gens) = random_instance(&mut rng);
        let g = group_generated_in(&base, dims, gens.iter()).unwrap();
        let d = BigRational::from_integer(g.denominator().clone());
        let members = combos(gens.len(), 4);
        for k in &members {
            let lambda = combine(&base, dims, &gens, k);
            let cert = g.member(&lambda).unwrap().expect("integer combination is a member");
            assert_eq!(g.combine(&cert.coefficients).unwrap(), lambda);
        }
        // offset by 1/(2D) in one coordinate: never a member, and the enumeration finds no match
        let k = &members[rng.random_range(0..members.len())];
        let lambda = combine(&base, dims, &gens, k);
        let mut coords = lambda.coords().to_vec();
        let pos = rng.random_range(0..coords.len());
        coords[pos] += BigRational::new(BigInt::from(1), BigInt::from(2)) / &d;
        let off = Frequency::from_flat(&base, dims, coords).unwrap();
        assert!(g.member(&off).unwrap().is_none());
        assert!(members.iter().all(|k| combine(&base, dims, &gens, k) != off));
        // minimality: same rank and same gcd of maximal minors as the input rows
        let scale = |f: &Frequency| -> Vec<BigInt> { f.coords().iter().map(|c| (c * &d).to_integer()).collect() };
        let input_rows: Vec<Vec<BigInt>> = gens.iter().map(scale).collect();
        let hnf_rows: Vec<Vec<BigInt>> = g.generators().iter().map(scale).collect();
        assert_eq!(minor_invariant(&input_rows), minor_invariant(&hnf_rows));
    }
}

#[test]
fn group_generation_is_idempotent() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..100 {
        let (base, dims, gens) = random_instance(&mut rng);
        let g = group_generated_in(&base, dims, gens.iter()).unwrap();
        let again = group_generated_in(&base, dims, g.generators().iter()).unwrap();
        assert_eq!(again.hnf(), g.hnf());
        assert_eq!(again.denominator(), g.denominator());
    }
}

#[test]
fn spectrum_lies_in_its_group() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..30 {
        let (base, dims, gens) = random_instance(&mut rng);
        let mut p = TrigPoly::zero(&base, dims);
        for f in &gens {
            p.add_term(f, Complex64::new(1.0, 0.5)).unwrap();
        }
        let sp = spectrum(&p);
        let g = group_generated_in(&base, dims, sp.iter()).unwrap();
        for f in &sp {
            let c = g.member(f).unwrap().unwrap();
            assert_eq!(&g.combine(&c.coefficients).unwrap(), f);
        }
    }
}

#[test]
fn qbasis_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..50 {
        let (base, dims, gens) = random_instance(&mut rng);
        let basis = qlinear_basis(&base, dims, gens.iter()).unwrap();
        for f in &gens {
            assert_eq!(&basis.reconstruct(&basis.coords(f).unwrap()).unwrap(), f);
        }
    }
}
