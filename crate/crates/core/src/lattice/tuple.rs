use serde::{Deserialize, Serialize};

use super::exponent::ExtendedExponent;
use super::weight::SeparableWeight;
use crate::error::{Error, Result};

/// Exponent data `(m; p, q; p_0..p_m; q_0..q_m)` of a multilinear mapping question.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExponentTuple {
    pub m: usize,
    pub p: ExtendedExponent,
    pub q: ExtendedExponent,
    pub pj: Vec<ExtendedExponent>,
    pub qj: Vec<ExtendedExponent>,
}

impl ExponentTuple {
    pub fn new(
        m: usize,
        p: ExtendedExponent,
        q: ExtendedExponent,
        pj: Vec<ExtendedExponent>,
        qj: Vec<ExtendedExponent>,
    ) -> Result<Self> {
        let t = Self { m, p, q, pj, qj };
        t.validate()?;
        Ok(t)
    }

    /// Every exponent equal to `e`.
    pub fn uniform(m: usize, e: ExtendedExponent) -> Self {
        Self {
            m,
            p: e,
            q: e,
            pj: vec![e; m + 1],
            qj: vec![e; m + 1],
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::InvalidArgument("multilinearity order m must be at least 1".into()));
        }
        for (name, v) in [("pj", &self.pj), ("qj", &self.qj)] {
            if v.len() != self.m + 1 {
                return Err(Error::InvalidArgument(format!(
                    "{name} must have m+1 = {} entries, got {}",
                    self.m + 1,
                    v.len()
                )));
            }
        }
        Ok(())
    }
}

/// Weighted mixed norm `L^{p,q}_w`: `p` over the inner block, `q` over the outer block.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixedNormSpec {
    pub p: ExtendedExponent,
    pub q: ExtendedExponent,
    pub weight: SeparableWeight,
    /// Number of leading axes summed in `L^p`.
    pub inner_dims: usize,
    /// Number of trailing axes summed in `L^q`.
    pub outer_dims: usize,
}

impl MixedNormSpec {
    pub fn new(
        p: ExtendedExponent,
        q: ExtendedExponent,
        weight: SeparableWeight,
        inner_dims: usize,
        outer_dims: usize,
    ) -> Result<Self> {
        if weight.dim() != inner_dims + outer_dims {
            return Err(Error::DimensionMismatch {
                expected: inner_dims + outer_dims,
                got: weight.dim(),
            });
        }
        Ok(Self {
            p,
            q,
            weight,
            inner_dims,
            outer_dims,
        })
    }

    pub fn unweighted(p: ExtendedExponent, q: ExtendedExponent, inner_dims: usize, outer_dims: usize) -> Self {
        Self {
            p,
            q,
            weight: SeparableWeight::trivial(inner_dims + outer_dims),
            inner_dims,
            outer_dims,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.inner_dims + self.outer_dims
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arity_is_checked() {
        let two = ExtendedExponent::int(2);
        assert!(ExponentTuple::new(1, two, two, vec![two; 2], vec![two; 2]).is_ok());
        assert!(ExponentTuple::new(1, two, two, vec![two; 3], vec![two; 2]).is_err());
        assert!(ExponentTuple::new(0, two, two, vec![two], vec![two]).is_err());
    }

    #[test]
    fn tuple_json_round_trip() {
        let t = ExponentTuple::uniform(2, "4/3".parse().unwrap());
        let s = serde_json::to_string(&t).unwrap();
        let back: ExponentTuple = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn spec_dims_match_weight() {
        let two = ExtendedExponent::int(2);
        assert!(MixedNormSpec::new(two, two, SeparableWeight::trivial(3), 1, 1).is_err());
        assert_eq!(MixedNormSpec::unweighted(two, two, 1, 2).ambient_dim(), 3);
    }
}
