use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::ExtendedExponent;
use crate::norms::lp_reduce;

/// Finitely supported sequence on `Z^d`, keyed by lattice point.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TruncatedSequence {
    d: usize,
    points: BTreeMap<Vec<i64>, Complex64>,
}

impl TruncatedSequence {
    pub fn new(d: usize) -> Self {
        Self {
            d,
            points: BTreeMap::new(),
        }
    }

    pub fn from_points(d: usize, points: impl IntoIterator<Item = (Vec<i64>, Complex64)>) -> Result<Self> {
        let mut s = Self::new(d);
        for (k, v) in points {
            s.insert(k, v)?;
        }
        Ok(s)
    }

    /// `δ_k`.
    pub fn delta(k: Vec<i64>) -> Self {
        let d = k.len();
        let mut points = BTreeMap::new();
        points.insert(k, Complex64::new(1.0, 0.0));
        Self { d, points }
    }

    /// The value `1` on the box `[-r, r]^d`.
    pub fn ones_box(d: usize, r: i64) -> Self {
        let mut s = Self::new(d);
        crate::lattice::weight::for_each_box_point(d, r, |p| {
            s.points.insert(p.to_vec(), Complex64::new(1.0, 0.0));
        });
        s
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Sets a value; zeros are dropped from the support.
    pub fn insert(&mut self, k: Vec<i64>, v: Complex64) -> Result<()> {
        if k.len() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                got: k.len(),
            });
        }
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::NonFinite(self.points.len()));
        }
        if v == Complex64::new(0.0, 0.0) {
            self.points.remove(&k);
        } else {
            self.points.insert(k, v);
        }
        Ok(())
    }

    /// Adds to the value at `k`, keeping explicit zeros so support tracking stays structural.
    pub(crate) fn accumulate(&mut self, k: Vec<i64>, v: Complex64) {
        *self.points.entry(k).or_insert(Complex64::new(0.0, 0.0)) += v;
    }

    pub fn get(&self, k: &[i64]) -> Complex64 {
        self.points.get(k).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<i64>, &Complex64)> {
        self.points.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.points.keys()
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            d: self.d,
            points: self.points.iter().map(|(k, v)| (k.clone(), f(*v))).collect(),
        }
    }

    /// `ℓ^p` quasi-norm.
    pub fn lp_norm(&self, p: ExtendedExponent) -> f64 {
        lp_reduce(self.points.values().map(|v| v.norm()), p.p_f64())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for (k, v) in &self.points {
            worst = worst.max((v - other.get(k)).norm());
        }
        for (k, v) in &other.points {
            worst = worst.max((v - self.get(k)).norm());
        }
        worst
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SequenceJson {
    d: usize,
    points: Vec<(Vec<i64>, f64, f64)>,
}

impl Serialize for TruncatedSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SequenceJson {
            d: self.d,
            points: self.points.iter().map(|(k, v)| (k.clone(), v.re, v.im)).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TruncatedSequence {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = SequenceJson::deserialize(deserializer)?;
        Self::from_points(raw.d, raw.points.into_iter().map(|(k, re, im)| (k, Complex64::new(re, im))))
            .map_err(serde::de::Error::custom)
    }
}
