use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};

pub const SQRT2: &str = "1.4142135623730950488016887242096980785696718753769";
pub const SQRT3: &str = "1.7320508075688772935274463415058723669428052538104";
pub const SQRT5: &str = "2.2360679774997896964091736687312762354406183596115";

/// An ordered list of real numbers that the user declares linearly
/// independent over the rationals. Frequencies are rational combinations of
/// these reals.
///
/// Independence is taken on trust. A base that is secretly dependent (say
/// `{1, 0.5}`) silently changes the arithmetic of spectra and groups.
#[derive(Clone)]
pub struct RealBase(Arc<BaseInner>);

struct BaseInner {
    labels: Vec<String>,
    decimals: Vec<String>,
    values: Vec<f64>,
}

impl RealBase {
    /// Builds a base from `(label, decimal expansion)` pairs. Decimal strings
    /// should carry at least 30 significant digits for irrational entries.
    pub fn new<L: Into<String>, D: Into<String>>(entries: Vec<(L, D)>) -> Result<Self> {
        let mut labels = Vec::with_capacity(entries.len());
        let mut decimals = Vec::with_capacity(entries.len());
        let mut values = Vec::with_capacity(entries.len());
        for (label, decimal) in entries {
            let decimal: String = decimal.into();
            let value: f64 = decimal
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("base entry {decimal:?} is not a decimal")))?;
            if !value.is_finite() || value == 0.0 {
                return Err(Error::InvalidInput(format!(
                    "base entry {decimal} must be finite and nonzero"
                )));
            }
            if let Some(&prev) = values.last() {
                if value <= prev {
                    return Err(Error::InvalidInput("base values must be strictly increasing".into()));
                }
            }
            labels.push(label.into());
            decimals.push(decimal.trim().to_string());
            values.push(value);
        }
        if values.is_empty() {
            return Err(Error::InvalidInput("a real base needs at least one entry".into()));
        }
        Ok(Self(Arc::new(BaseInner {
            labels,
            decimals,
            values,
        })))
    }

    /// Base given only by decimal strings; labels default to the strings
    /// themselves, except `1` and a few well-known surds.
    pub fn from_decimals(decimals: &[String]) -> Result<Self> {
        let entries = decimals.iter().map(|d| (default_label(d), d.clone())).collect();
        Self::new(entries)
    }

    /// The base `{1}`: purely rational frequencies.
    pub fn rational() -> Self {
        Self::new(vec![("1", "1")]).expect("valid base")
    }

    /// `{1, sqrt2}`.
    pub fn sqrt2() -> Self {
        Self::new(vec![("1", "1"), ("sqrt2", SQRT2)]).expect("valid base")
    }

    /// `{1, sqrt2, sqrt3}`.
    pub fn sqrt2_sqrt3() -> Self {
        Self::new(vec![("1", "1"), ("sqrt2", SQRT2), ("sqrt3", SQRT3)]).expect("valid base")
    }

    pub fn len(&self) -> usize {
        self.0.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.0.values
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn decimals(&self) -> &[String] {
        &self.0.decimals
    }

    /// True for the single-element base `{1}`.
    pub fn is_rational(&self) -> bool {
        self.len() == 1 && self.0.values[0] == 1.0
    }

    pub fn ensure_same(&self, other: &RealBase) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::BaseMismatch(format!("{self} vs {other}")))
        }
    }
}

fn default_label(decimal: &str) -> String {
    let d = decimal.trim();
    let known = [("sqrt2", SQRT2), ("sqrt3", SQRT3), ("sqrt5", SQRT5)];
    if d == "1" || d == "1.0" {
        return "1".into();
    }
    for (name, digits) in known {
        if d.len() >= 12 && digits.starts_with(d) {
            return name.into();
        }
    }
    d.to_string()
}

impl PartialEq for RealBase {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.decimals == other.0.decimals
    }
}

impl Eq for RealBase {}

impl PartialOrd for RealBase {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RealBase {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.0.decimals.cmp(&other.0.decimals)
    }
}

impl Hash for RealBase {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.decimals.hash(state);
    }
}

impl fmt::Debug for RealBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RealBase{:?}", self.0.labels)
    }
}

impl fmt::Display for RealBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.labels.join(", "))
    }
}
