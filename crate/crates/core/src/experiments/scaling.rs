use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bump::dilated_bump;
use super::fit::fit_log_slope;
use crate::discrete::{star_ratio, TruncatedSequence};
use crate::error::{Error, Result};
use crate::lattice::{ExponentTuple, ExtendedExponent, Grid, Rational};
use crate::regions::lambda_set;
use crate::rihaczek::{boundedness_ratio, Denominator, RatioSetup, Target};

/// Width of the Gaussian windows used by the dilated-bump runs.
pub const SCALING_WINDOW_WIDTH: f64 = 4.0;

/// Measured ratios along a one-parameter family and their log-log fit.
///
/// `growth` is the variable the slope is fitted against: `1/λ` for dilations,
/// `N` for truncation sizes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingReport {
    pub parameter: String,
    pub values: Vec<f64>,
    pub growth: Vec<f64>,
    pub ratios: Vec<f64>,
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
    pub predicted: f64,
    pub max_residual: f64,
}

impl ScalingReport {
    /// Fits `log ratio` against `log growth`; values must be strictly monotone with at least four points.
    pub fn fit(
        parameter: impl Into<String>,
        values: Vec<f64>,
        growth: Vec<f64>,
        ratios: Vec<f64>,
        predicted: f64,
    ) -> Result<Self> {
        if values.len() < 4 {
            return Err(Error::TooFewPoints { need: 4, got: values.len() });
        }
        let increasing = values.windows(2).all(|w| w[0] < w[1]);
        let decreasing = values.windows(2).all(|w| w[0] > w[1]);
        if !(increasing || decreasing) {
            return Err(Error::InvalidArgument("parameter values must be strictly monotone".into()));
        }
        if let Some(i) = ratios.iter().position(|r| *r == 0.0) {
            return Err(Error::ZeroDenominator(format!("ratio {i} is zero")));
        }
        let fit = fit_log_slope(&growth, &ratios)?;
        Ok(Self {
            parameter: parameter.into(),
            values,
            growth,
            ratios,
            slope: fit.slope,
            intercept: fit.intercept,
            r2: fit.r2,
            predicted,
            max_residual: fit.max_residual,
        })
    }

    pub fn within(&self, tolerance: f64) -> bool {
        (self.slope - self.predicted).abs() <= tolerance
    }

    /// CSV with header `parameter,ratio`.
    pub fn to_csv(&self) -> String {
        let mut out = format!("{},ratio\n", self.parameter);
        for (v, r) in self.values.iter().zip(&self.ratios) {
            out.push_str(&format!("{v},{r}\n"));
        }
        out
    }
}

/// Evaluates `ratio(value)` for each value in parallel and fits against `growth(value)`.
pub fn scaling_ratio_series<F, G>(
    parameter: &str,
    values: &[f64],
    growth: G,
    predicted: f64,
    ratio: F,
) -> Result<ScalingReport>
where
    F: Fn(f64) -> Result<f64> + Sync,
    G: Fn(f64) -> f64,
{
    let ratios: Vec<f64> = values.par_iter().map(|&v| ratio(v)).collect::<Result<_>>()?;
    let grow: Vec<f64> = values.iter().map(|&v| growth(v)).collect();
    ScalingReport::fit(parameter, values.to_vec(), grow, ratios, predicted)
}

fn f(x: Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Growth exponent in `λ^{-1}` of the dilated-bump lower bound:
/// `d·[(|Λ|-1)/p + 1/q - Σ_{j∈Λ}(1 - 1/(p_j∧2))]`, and `0` when `Λ` is empty.
pub fn predicted_bump_exponent(tuple: &ExponentTuple, d: usize) -> f64 {
    let lambda = lambda_set(tuple);
    if lambda.is_empty() {
        return 0.0;
    }
    let size = Rational::from_integer(lambda.len() as i128);
    let one = Rational::from_integer(1);
    let mut e = (size - one) * tuple.p.reciprocal() + tuple.q.reciprocal();
    for &j in &lambda {
        e -= one - tuple.pj[j].meet2().reciprocal();
    }
    d as f64 * f(e)
}

/// `‖R_m(h_λ, …, h_λ)‖ / ∏ ‖h_λ‖_{L^{p_j∧2}}` over `λ`, with Gaussian windows.
pub fn bump_scaling_series(
    grid: Grid,
    tuple: &ExponentTuple,
    target: Target,
    lambdas: &[f64],
) -> Result<ScalingReport> {
    tuple.validate()?;
    let mut local = tuple.clone();
    local.pj = tuple.pj.iter().map(|p| p.meet2()).collect();
    let setup = RatioSetup::gaussian(grid, tuple.m, SCALING_WINDOW_WIDTH, target, Denominator::Lebesgue);
    scaling_ratio_series(
        "lambda",
        lambdas,
        |l| 1.0 / l,
        predicted_bump_exponent(tuple, grid.d),
        |l| {
            let h = dilated_bump(l, grid)?;
            boundedness_ratio(&h, &vec![h.clone(); tuple.m], &local, &setup)
        },
    )
}

/// `N`-exponent `d(1 + m/q - Σ_j 1/q_j)` of the truncated-ones ⋆ family.
pub fn predicted_star_exponent(q: ExtendedExponent, qs: &[ExtendedExponent], d: usize) -> f64 {
    let m = Rational::from_integer(qs.len() as i128 - 1);
    let e = Rational::from_integer(1) + m * q.reciprocal() - qs.iter().map(|e| e.reciprocal()).sum::<Rational>();
    d as f64 * f(e)
}

/// `‖a ⋆ b⃗‖_{ℓ^q} / ∏‖·‖_{ℓ^{q_j}}` with every input the indicator of `[-2N, 2N]^d`.
pub fn star_growth_series(
    q: ExtendedExponent,
    qs: &[ExtendedExponent],
    d: usize,
    sizes: &[usize],
) -> Result<ScalingReport> {
    if qs.len() < 2 {
        return Err(Error::InvalidArgument("need m+1 ≥ 2 exponents".into()));
    }
    let m = qs.len() - 1;
    let values: Vec<f64> = sizes.iter().map(|&n| n as f64).collect();
    scaling_ratio_series("N", &values, |n| n, predicted_star_exponent(q, qs, d), |n| {
        let ones = TruncatedSequence::ones_box(d, 2 * n as i64);
        star_ratio(&ones, &vec![ones.clone(); m], q, qs)
    })
}
