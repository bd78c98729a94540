//! JSON documents for polynomials, fluxes, groups and reports. This module only
//! converts between values and JSON; reading and writing files is left to callers.
//!
//! Rationals are `[num, den]` pairs. Base entries are decimal strings; the
//! names `sqrt2`, `sqrt3`, `sqrt5` stand for the built-in constants.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::apcore::base::{SQRT2, SQRT3, SQRT5};
use crate::apcore::{Frequency, RealBase, TrigPoly};
use crate::error::{Error, Result};
use crate::flux::{NdReport, PiecewiseFlux, Verdict};
use crate::rational::{from_pair, rationalize, to_f64, to_pair};
use crate::specgroup::{group_generated_in, FreqGroup, QBasis};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermDoc {
    pub coords: Vec<[i64; 2]>,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrigPolyDoc {
    pub base: Vec<String>,
    pub dims: usize,
    #[serde(default)]
    pub terms: Vec<TermDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FrequencyDoc {
    pub coords: Vec<[i64; 2]>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupDoc {
    pub base: Vec<String>,
    pub dims: usize,
    #[serde(default)]
    pub generators: Vec<FrequencyDoc>,
}

/// A flux coefficient: an exact `[num, den]` pair or a float to be rationalized.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffDoc {
    Exact([i64; 2]),
    Float(f64),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FluxDoc {
    pub dims: usize,
    pub breakpoints: Vec<CoeffDoc>,
    /// `pieces[i][c]`: ascending coefficients of component `c` on interval `i`.
    pub pieces: Vec<Vec<Vec<CoeffDoc>>>,
}

pub fn parse_base(entries: &[String]) -> Result<RealBase> {
    let decimals: Vec<String> = entries
        .iter()
        .map(|e| match e.trim() {
            "sqrt2" => SQRT2.to_string(),
            "sqrt3" => SQRT3.to_string(),
            "sqrt5" => SQRT5.to_string(),
            other => other.to_string(),
        })
        .collect();
    RealBase::from_decimals(&decimals)
}

fn frequency_from_pairs(base: &RealBase, dims: usize, coords: &[[i64; 2]]) -> Result<Frequency> {
    let q = coords.iter().map(|&p| from_pair(p)).collect::<Result<Vec<_>>>()?;
    Frequency::from_flat(base, dims, q)
}

fn frequency_pairs(f: &Frequency) -> Result<Vec<[i64; 2]>> {
    f.coords().iter().map(to_pair).collect()
}

pub fn trigpoly_from_doc(doc: &TrigPolyDoc) -> Result<TrigPoly> {
    let base = parse_base(&doc.base)?;
    let mut p = TrigPoly::zero(&base, doc.dims);
    for t in &doc.terms {
        if !t.re.is_finite() || !t.im.is_finite() {
            return Err(Error::InvalidInput("non-finite amplitude".into()));
        }
        let lambda = frequency_from_pairs(&base, doc.dims, &t.coords)?;
        p.add_term(&lambda, Complex64::new(t.re, t.im))?;
    }
    Ok(p)
}

pub fn trigpoly_to_doc(p: &TrigPoly) -> Result<TrigPolyDoc> {
    let terms = p
        .terms()
        .map(|(lambda, a)| {
            Ok(TermDoc {
                coords: frequency_pairs(lambda)?,
                re: a.re,
                im: a.im,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TrigPolyDoc {
        base: p.base().decimals().to_vec(),
        dims: p.dims(),
        terms,
    })
}

pub fn trigpoly_from_json(s: &str) -> Result<TrigPoly> {
    trigpoly_from_doc(&serde_json::from_str(s)?)
}

pub fn trigpoly_to_json(p: &TrigPoly) -> Result<String> {
    Ok(serde_json::to_string_pretty(&trigpoly_to_doc(p)?)?)
}

pub fn group_from_doc(doc: &GroupDoc) -> Result<FreqGroup> {
    let base = parse_base(&doc.base)?;
    let gens = doc
        .generators
        .iter()
        .map(|g| frequency_from_pairs(&base, doc.dims, &g.coords))
        .collect::<Result<Vec<_>>>()?;
    group_generated_in(&base, doc.dims, gens.iter())
}

pub fn group_to_doc(g: &FreqGroup) -> Result<GroupDoc> {
    Ok(GroupDoc {
        base: g.base().decimals().to_vec(),
        dims: g.dims(),
        generators: g
            .generators()
            .iter()
            .map(|f| {
                Ok(FrequencyDoc {
                    coords: frequency_pairs(f)?,
                })
            })
            .collect::<Result<Vec<_>>>()?,
    })
}

fn coeff(c: &CoeffDoc, inexact: &mut bool) -> Result<BigRational> {
    match c {
        CoeffDoc::Exact(p) => from_pair(*p),
        CoeffDoc::Float(x) => {
            let q = rationalize(*x, crate::flux::piecewise::RATIONALIZE_MAX_DEN)?;
            *inexact |= to_f64(&q) != *x;
            Ok(q)
        }
    }
}

pub fn flux_from_doc(doc: &FluxDoc) -> Result<PiecewiseFlux> {
    let mut inexact = false;
    let bps = doc
        .breakpoints
        .iter()
        .map(|c| coeff(c, &mut inexact))
        .collect::<Result<Vec<_>>>()?;
    let pieces = doc
        .pieces
        .iter()
        .map(|piece| {
            piece
                .iter()
                .map(|comp| comp.iter().map(|c| coeff(c, &mut inexact)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if inexact {
        log::warn!(
            "flux coefficients rationalized with denominators <= {}",
            crate::flux::piecewise::RATIONALIZE_MAX_DEN
        );
    }
    PiecewiseFlux::new(doc.dims, bps, pieces)
}

pub fn flux_to_doc(f: &PiecewiseFlux) -> Result<FluxDoc> {
    let exact = |q: &BigRational| to_pair(q).map(CoeffDoc::Exact);
    Ok(FluxDoc {
        dims: f.dims(),
        breakpoints: f.breakpoints().iter().map(exact).collect::<Result<Vec<_>>>()?,
        pieces: f
            .pieces()
            .iter()
            .map(|piece| {
                piece
                    .iter()
                    .map(|comp| comp.iter().map(exact).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?,
    })
}

pub fn flux_from_json(s: &str) -> Result<PiecewiseFlux> {
    flux_from_doc(&serde_json::from_str(s)?)
}

fn rational_json(q: &BigRational) -> Value {
    match to_pair(q) {
        Ok(p) => json!(p),
        Err(_) => json!([q.numer().to_string(), q.denom().to_string()]),
    }
}

fn rationals_json(qs: &[BigRational]) -> Value {
    Value::Array(qs.iter().map(rational_json).collect())
}

fn bigint_json(z: &BigInt) -> Value {
    match i64::try_from(z) {
        Ok(v) => json!(v),
        Err(_) => json!(z.to_string()),
    }
}

pub fn frequency_json(f: &Frequency) -> Value {
    json!({
        "coords": rationals_json(f.coords()),
        "display": f.to_string(),
    })
}

pub fn nd_report_json(r: &NdReport) -> Value {
    let witness = r.witness.as_ref().map_or(Value::Null, |w| {
        json!({
            "xi": frequency_json(&w.xi),
            "coefficients": w.coefficients.iter().map(bigint_json).collect::<Vec<_>>(),
            "piece": w.piece,
            "interval": [rational_json(&w.interval.0), rational_json(&w.interval.1)],
            "slope": rationals_json(&w.slope),
            "intercept": rationals_json(&w.intercept),
            "slope_value": w.slope_f64(),
        })
    });
    json!({
        "verdict": match r.verdict { Verdict::Holds => "holds", Verdict::Fails => "fails" },
        "witness": witness,
    })
}

pub fn group_json(g: &FreqGroup) -> Value {
    json!({
        "denominator": bigint_json(g.denominator()),
        "hnf": g.hnf().iter().map(|row| row.iter().map(bigint_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "generators": g.generators().iter().map(frequency_json).collect::<Vec<_>>(),
    })
}

pub fn qbasis_json(q: &QBasis) -> Value {
    Value::Array(q.vectors().iter().map(frequency_json).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn trigpoly_round_trip() {
        let b = RealBase::sqrt2();
        let l = Frequency::scalar(&b, &[[1, 2], [3, 4]]).unwrap();
        let mut p = TrigPoly::constant(&b, 1, 0.25);
        p.add_sine(&l, 0.7).unwrap();
        let s = trigpoly_to_json(&p).unwrap();
        let q = trigpoly_from_json(&s).unwrap();
        assert_eq!(q.terms().collect::<Vec<_>>(), p.terms().collect::<Vec<_>>());
        assert!(q.is_real_valued());
        assert_eq!(q.base(), p.base());
    }

    #[test]
    fn named_base_entries() {
        let doc = r#"{"base": ["1", "sqrt2"], "dims": 1,
            "terms": [{"coords": [[0,1],[1,1]], "re": 2.0, "im": 0.0}]}"#;
        let p = trigpoly_from_json(doc).unwrap();
        assert_eq!(p.base(), &RealBase::sqrt2());
        assert!(!p.is_real_valued());
    }

    #[test]
    fn flux_documents() {
        let doc = r#"{"dims": 2, "breakpoints": [[-1,1],[1,1]],
            "pieces": [[[[0,1],[0,1],[1,2]], [0.0, 1.0]]]}"#;
        let f = flux_from_json(doc).unwrap();
        assert_eq!(f.pieces()[0][0], vec![int(0), int(0), ratio(1, 2)]);
        assert_eq!(f.pieces()[0][1], vec![int(0), int(1)]);
        let back = flux_from_doc(&flux_to_doc(&f).unwrap()).unwrap();
        assert_eq!(back, f);
        assert!(flux_from_json(r#"{"dims": 1, "breakpoints": [[0,1]], "pieces": []}"#).is_err());
    }

    #[test]
    fn malformed_input_is_an_error() {
        assert!(matches!(trigpoly_from_json("{"), Err(Error::Json(_))));
        let zero_den = r#"{"base": ["1"], "dims": 1, "terms": [{"coords": [[1,0]], "re": 1.0}]}"#;
        assert!(matches!(trigpoly_from_json(zero_den), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn group_round_trip() {
        let doc = r#"{"base": ["1","sqrt2"], "dims": 1,
            "generators": [{"coords": [[0,1],[1,1]]}, {"coords": [[0,1],[1,2]]}]}"#;
        let g = group_from_doc(&serde_json::from_str(doc).unwrap()).unwrap();
        assert_eq!(g.rank(), 1);
        let again = group_from_doc(&group_to_doc(&g).unwrap()).unwrap();
        assert_eq!(again, g);
    }
}
