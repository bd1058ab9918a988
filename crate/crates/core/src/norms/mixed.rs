use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{ExtendedExponent, MixedNormSpec};

/// `(Σ a_i^p)^{1/p}`, or `max a_i` for `p = ∞`. Inputs are nonnegative.
pub fn lp_reduce(values: impl IntoIterator<Item = f64>, p: f64) -> f64 {
    if p.is_infinite() {
        values.into_iter().fold(0.0, f64::max)
    } else {
        values.into_iter().map(|a| a.powf(p)).sum::<f64>().powf(1.0 / p)
    }
}

/// Mixed norm over an `outer × inner` index set with magnitudes from `entry(outer, inner)`.
///
/// Inner norms are computed in parallel over the outer index and reduced in order.
pub fn mixed_norm_with<F>(outer_len: usize, inner_len: usize, p: f64, q: f64, entry: F) -> f64
where
    F: Fn(usize, usize) -> f64 + Sync,
{
    let inner: Vec<f64> = (0..outer_len)
        .into_par_iter()
        .map(|o| lp_reduce((0..inner_len).map(|i| entry(o, i)), p))
        .collect();
    lp_reduce(inner, q)
}

/// Complex array on an integer box: entry `i` sits at `origin + multi_index(i)`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct NdArray {
    pub shape: Vec<usize>,
    pub origin: Vec<i64>,
    pub values: Vec<Complex64>,
}

impl NdArray {
    pub fn new(shape: Vec<usize>, origin: Vec<i64>, values: Vec<Complex64>) -> Result<Self> {
        if shape.len() != origin.len() {
            return Err(Error::DimensionMismatch {
                expected: shape.len(),
                got: origin.len(),
            });
        }
        let len: usize = shape.iter().product();
        if values.len() != len {
            return Err(Error::DimensionMismatch {
                expected: len,
                got: values.len(),
            });
        }
        Ok(Self { shape, origin, values })
    }

    /// Array on `[0, n)` per axis.
    pub fn from_values(shape: Vec<usize>, values: Vec<Complex64>) -> Result<Self> {
        let origin = vec![0; shape.len()];
        Self::new(shape, origin, values)
    }

    pub fn ndim(&self) -> usize {
        self.shape.len()
    }

    /// Integer coordinates of a flat index.
    pub fn point(&self, mut idx: usize) -> Vec<i64> {
        let mut out = vec![0i64; self.ndim()];
        for axis in (0..self.ndim()).rev() {
            out[axis] = self.origin[axis] + (idx % self.shape[axis]) as i64;
            idx /= self.shape[axis];
        }
        out
    }
}

/// `( Σ_outer ( Σ_inner |a|^p w^p )^{q/p} )^{1/q}`, with `sup` for infinite exponents.
///
/// The leading `inner_dims` axes form the inner block.
pub fn mixed_norm(a: &NdArray, spec: &MixedNormSpec) -> Result<f64> {
    if a.ndim() != spec.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: spec.ambient_dim(),
            got: a.ndim(),
        });
    }
    if let Some(i) = a.values.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::NonFinite(i));
    }
    let inner_len: usize = a.shape[..spec.inner_dims].iter().product();
    let outer_len: usize = a.shape[spec.inner_dims..].iter().product();
    let trivial = spec.weight.is_trivial();
    let (p, q) = (spec.p.p_f64(), spec.q.p_f64());
    Ok(mixed_norm_with(outer_len, inner_len, p, q, |o, i| {
        let idx = i * outer_len + o;
        let v = a.values[idx].norm();
        if trivial || v == 0.0 {
            v
        } else {
            let z: Vec<f64> = a.point(idx).into_iter().map(|k| k as f64).collect();
            v * spec.weight.eval_unchecked(&z)
        }
    }))
}

/// Plain `ℓ^p` norm of a slice.
pub fn lp_norm(values: &[Complex64], p: ExtendedExponent) -> f64 {
    lp_reduce(values.iter().map(|z| z.norm()), p.p_f64())
}
