use bohrlift::apcore::{besicovitch_norm_on, ess_sup_on, Frequency, RealBase, TorusGrid, TrigPoly};
use bohrlift::fejer::*;
use bohrlift::lift::LiftSpec;
use bohrlift::specgroup::{qlinear_basis, QBasis};
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn plan_for(dirs: &[Frequency], r: u32) -> FejerPlan {
    let b = dirs[0].base();
    FejerPlan::new(qlinear_basis(b, dirs[0].dims(), dirs.iter()).unwrap(), r).unwrap()
}

fn one(b: &RealBase) -> Frequency {
    Frequency::scalar(b, &[[1, 1], [0, 1]]).unwrap()
}

fn r2(b: &RealBase) -> Frequency {
    Frequency::scalar(b, &[[0, 1], [1, 1]]).unwrap()
}

fn three_lines() -> TrigPoly {
    let b = RealBase::sqrt2();
    let mut p = TrigPoly::cosine(&one(&b), 1.0);
    p.add_sine(&r2(&b), 0.5).unwrap();
    p.add_cosine(&one(&b).checked_add(&r2(&b)).unwrap(), 0.3).unwrap();
    p
}

#[test]
fn closed_form_matches_coefficient_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let b = RealBase::sqrt2();
    for dir in [one(&b), r2(&b), r2(&b).scale(&bohrlift::rational::ratio(3, 2))] {
        for r in 1..=2 {
            let plan = plan_for(std::slice::from_ref(&dir), r);
            let k = kernel_trigpoly(&plan).unwrap();
            assert_eq!(k.mean_value().re, 1.0);
            for _ in 0..100 {
                let x = rng.random_range(-50.0..50.0);
                assert!((kernel_eval(&plan, &[x]) - k.eval_real(&[x])).abs() <= 1e-9);
            }
            // points on the singular set itself
            let xr = dir.to_real()[0];
            for m in [0.0, 1.0, 2.0, -7.0] {
                let x = m * plan_r_fact(r) / xr;
                assert!((kernel_eval(&plan, &[x]) - k.eval_real(&[x])).abs() <= 1e-9);
            }
        }
    }
}

fn plan_r_fact(r: u32) -> f64 {
    (1..=r).product::<u32>() as f64
}

#[test]
fn kernel_is_nonnegative() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let b = RealBase::sqrt2();
    for r in 1..=7 {
        let plan = plan_for(&[one(&b), r2(&b)], r);
        for _ in 0..10_000 / 7 + 1 {
            let x = rng.random_range(-100.0..100.0);
            assert!(kernel_eval(&plan, &[x]) >= 0.0);
        }
    }
}

#[test]
fn weight_at_zero_is_one() {
    let b = RealBase::sqrt2();
    for r in 1..=7 {
        let plan = plan_for(&[one(&b), r2(&b)], r);
        let w = fejer_weights(&plan).at(&Frequency::zero(&b, 1)).unwrap();
        assert_eq!(w.weight, BigRational::one());
    }
}

#[test]
fn weights_grow_with_order() {
    let b = RealBase::sqrt2();
    let lines = [
        one(&b),
        r2(&b),
        one(&b).checked_add(&r2(&b)).unwrap(),
        r2(&b).scale(&bohrlift::rational::ratio(1, 2)),
    ];
    for l in &lines {
        let mut prev: Option<BigRational> = None;
        for r in 1..=7 {
            let w = fejer_weights(&plan_for(&[one(&b), r2(&b)], r)).at(l).unwrap();
            if w.index.is_some() {
                if let Some(p) = &prev {
                    assert!(&w.weight >= p);
                }
                prev = Some(w.weight);
            }
        }
        assert!(prev.is_some());
    }
}

#[test]
fn summation_converges_in_mean_norm() {
    let p = three_lines();
    let b = p.base().clone();
    let lift = LiftSpec::new(vec![one(&b), r2(&b)]).unwrap();
    let grid = TorusGrid::new(1024);
    let mut prev = f64::INFINITY;
    for r in 2..=5 {
        let s = bochner_fejer(&p, &plan_for(&[one(&b), r2(&b)], r)).unwrap();
        let err = besicovitch_norm_on(&s.sub(&p).unwrap(), &lift, grid).unwrap().value;
        assert!(err < prev, "r = {r}: {err} vs {prev}");
        prev = err;
    }
}

#[test]
fn summation_does_not_raise_the_sup() {
    let p = three_lines();
    let b = p.base().clone();
    let lift = LiftSpec::new(vec![one(&b), r2(&b)]).unwrap();
    let grid = TorusGrid::new(1024);
    let sup = ess_sup_on(&p, &lift, grid).unwrap();
    for r in 1..=4 {
        let s = bochner_fejer(&p, &plan_for(&[one(&b), r2(&b)], r)).unwrap();
        assert!(ess_sup_on(&s, &lift, grid).unwrap() <= sup + 1e-8);
        // the spectrum can only shrink
        assert!(s.frequencies().all(|f| p.frequencies().any(|g| g == f)));
    }
}

#[test]
fn oscillation_decreases_with_order() {
    let b = RealBase::rational();
    let k1 = Frequency::integer(&b, 1).unwrap();
    let mut p = TrigPoly::sine(&k1, 1.0);
    p.add_cosine(&Frequency::integer(&b, 3).unwrap(), 0.5).unwrap();
    let lift = LiftSpec::new(vec![k1.clone()]).unwrap();
    let grid = TorusGrid::new(512);
    let quantum = 1.0 / 512.0;
    let mut prev = f64::INFINITY;
    for r in 1..=6 {
        let mut q = QBasis::empty(&b, 1);
        q.try_push(&k1).unwrap();
        let v = oscillation(&p, &FejerPlan::new(q, r).unwrap(), &lift, grid).unwrap();
        assert!(v <= prev + quantum, "r = {r}: {v} vs {prev}");
        prev = v;
    }
}
