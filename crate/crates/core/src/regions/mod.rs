//! Exact decision procedures for sharp boundedness regions.
//!
//! Every predicate works on exact reciprocals `1/p`, so `p = ∞` is the value
//! `0` and boundary points are decided without rounding. Condition identifiers
//! follow the order in which the conditions are listed for each region, with
//! `[i=j]` marking the index of a per-input condition.

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{ConditionTrace, ExponentTuple, ExtendedExponent, Rational, Verdict};

fn one() -> Rational {
    Rational::one()
}

fn r(e: &ExtendedExponent) -> Rational {
    e.reciprocal()
}

/// `1/(p ∧ 2)`.
fn r_meet2(e: &ExtendedExponent) -> Rational {
    e.meet2().reciprocal()
}

/// `Λ = {j : 1/p ≥ 1 - 1/(p_j ∧ 2)}` for the tuple's `p` and `p_0..p_m`.
pub fn lambda_set(t: &ExponentTuple) -> Vec<usize> {
    lambda_of(t.p, &t.pj)
}

fn lambda_of(p: ExtendedExponent, pj: &[ExtendedExponent]) -> Vec<usize> {
    pj.iter()
        .enumerate()
        .filter(|(_, e)| r(&p) >= one() - r_meet2(e))
        .map(|(j, _)| j)
        .collect()
}

/// Local conditions shared by the modulation-target regions:
/// `cd1[i=j]`: `1/q ≤ 1 - 1/(p_j∧2)`; `cd2`: the `Λ` condition when `|Λ| ≥ 1`.
fn local_conditions(trace: &mut ConditionTrace, p: ExtendedExponent, q: ExtendedExponent, pj: &[ExtendedExponent]) {
    for (j, e) in pj.iter().enumerate() {
        trace.le(format!("cd1[i={j}]"), r(&q), one() - r_meet2(e));
    }
    let lambda = lambda_of(p, pj);
    if !lambda.is_empty() {
        let size = Rational::from_integer(lambda.len() as i128);
        let lhs = (size - one()) * r(&p) + r(&q);
        let rhs = size - lambda.iter().map(|&j| r_meet2(&pj[j])).sum::<Rational>();
        trace.le("cd2", lhs, rhs);
    }
}

/// Rihaczek distribution from Wiener amalgam spaces into `M^{p,q}`.
///
/// * `cd1[i=j]`: `1/q ≤ 1 - 1/(p_j ∧ 2)`
/// * `cd2`: `(|Λ|-1)/p + 1/q ≤ |Λ| - Σ_{j∈Λ} 1/(p_j ∧ 2)` when `|Λ| ≥ 1`
/// * `cd3[i=j]`: `1/q ≤ 1/q_j`
/// * `cd4`: `1/p + m/q ≤ Σ_j 1/q_j`
pub fn brwm_verdict(t: &ExponentTuple) -> Result<Verdict> {
    t.validate()?;
    let mut trace = ConditionTrace::default();
    local_conditions(&mut trace, t.p, t.q, &t.pj);
    global_conditions(&mut trace, t.m, t.p, t.q, &t.qj, "cd3", "cd4");
    Ok(trace.finish())
}

fn global_conditions(
    trace: &mut ConditionTrace,
    m: usize,
    p: ExtendedExponent,
    q: ExtendedExponent,
    qj: &[ExtendedExponent],
    per_index: &str,
    sum_id: &str,
) {
    for (j, e) in qj.iter().enumerate() {
        trace.le(format!("{per_index}[i={j}]"), r(&q), r(e));
    }
    let m = Rational::from_integer(m as i128);
    trace.le(sum_id, r(&p) + m * r(&q), qj.iter().map(r).sum());
}

/// Rihaczek distribution from Wiener amalgam spaces into `FM^{p,q}`.
///
/// * `cd1`: `1/p ≤ 1 - 1/(p_0 ∧ 2)` and `1/q ≤ 1/q_0`
/// * `cd2[i=j]`, `j ≥ 1`: `1/q ≤ 1 - 1/(p_j ∧ 2)` and `1/p, 1/q ≤ 1/q_j`
pub fn brwf_verdict(t: &ExponentTuple) -> Result<Verdict> {
    t.validate()?;
    let mut trace = ConditionTrace::default();
    trace.le("cd1", r(&t.p), one() - r_meet2(&t.pj[0]));
    trace.le("cd1", r(&t.q), r(&t.qj[0]));
    for j in 1..=t.m {
        let id = format!("cd2[i={j}]");
        trace.le(id.clone(), r(&t.q), one() - r_meet2(&t.pj[j]));
        trace.le(id.clone(), r(&t.p), r(&t.qj[j]));
        trace.le(id, r(&t.q), r(&t.qj[j]));
    }
    Ok(trace.finish())
}

fn check_multi(qs: &[ExtendedExponent]) -> Result<usize> {
    if qs.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "need m+1 ≥ 2 exponents, got {}",
            qs.len()
        )));
    }
    Ok(qs.len() - 1)
}

/// `ℓ^{q_0} * ⋯ * ℓ^{q_m} ⊂ ℓ^q`, with `S = {j : q_j ≥ 1}`.
///
/// * `cd1[i=j]`: `1/q ≤ 1/q_j`
/// * `cd2`: `(|S|-1) + 1/q ≤ Σ_{j∈S} 1/q_j` when `|S| ≥ 1`
pub fn conv_sharp_verdict(q: ExtendedExponent, qs: &[ExtendedExponent]) -> Result<Verdict> {
    check_multi(qs)?;
    let mut trace = ConditionTrace::default();
    for (j, e) in qs.iter().enumerate() {
        trace.le(format!("cd1[i={j}]"), r(&q), r(e));
    }
    let s: Vec<&ExtendedExponent> = qs.iter().filter(|e| e.is_banach()).collect();
    if !s.is_empty() {
        let size = Rational::from_integer(s.len() as i128);
        trace.le("cd2", size - one() + r(&q), s.iter().map(|e| r(e)).sum());
    }
    Ok(trace.finish())
}

/// `ℓ^{q_0} ⋆ (⊗_j ℓ^{q_j}) ⊂ ℓ^q`.
///
/// * `cd1[i=j]`: `1/q ≤ 1/q_j`
/// * `cd2`: `1 + m/q ≤ Σ_j 1/q_j`
pub fn star_conv_verdict(q: ExtendedExponent, qs: &[ExtendedExponent]) -> Result<Verdict> {
    let m = check_multi(qs)?;
    let mut trace = ConditionTrace::default();
    for (j, e) in qs.iter().enumerate() {
        trace.le(format!("cd1[i={j}]"), r(&q), r(e));
    }
    let mm = Rational::from_integer(m as i128);
    trace.le("cd2", one() + mm * r(&q), qs.iter().map(r).sum());
    Ok(trace.finish())
}

/// `τ_m(⊗_j ℓ^{q_j}) ⊂ ℓ^{p,q}`.
///
/// * `cd1`: `1/p + m/q ≤ Σ_j 1/q_j`
/// * `cd2[i=j]`: `1/q ≤ 1/q_j`
pub fn tau_embed_verdict(p: ExtendedExponent, q: ExtendedExponent, qs: &[ExtendedExponent]) -> Result<Verdict> {
    let m = check_multi(qs)?;
    let mut trace = ConditionTrace::default();
    let mm = Rational::from_integer(m as i128);
    trace.le("cd1", r(&p) + mm * r(&q), qs.iter().map(r).sum());
    for (j, e) in qs.iter().enumerate() {
        trace.le(format!("cd2[i={j}]"), r(&q), r(e));
    }
    Ok(trace.finish())
}

/// `R_m : L^{p_0∧2}(B_δ) × ⋯ → M^{p,q}` for inputs supported in a small ball.
///
/// * `cd1[i=j]`: `1/q ≤ 1 - 1/(p_j ∧ 2)`
/// * `cd2`: the `Λ` condition when `|Λ| ≥ 1`
pub fn local_brwm_verdict(p: ExtendedExponent, q: ExtendedExponent, ps: &[ExtendedExponent]) -> Result<Verdict> {
    check_multi(ps)?;
    let mut trace = ConditionTrace::default();
    local_conditions(&mut trace, p, q, ps);
    Ok(trace.finish())
}

fn require_banach(named: &[(&str, ExtendedExponent)]) -> Result<()> {
    for (name, e) in named {
        if !e.is_banach() {
            return Err(Error::ExponentDomain(format!("{name} = {e} must be at least 1")));
        }
    }
    Ok(())
}

fn conj_r(e: &ExtendedExponent) -> Rational {
    one() - r(e)
}

/// `K_σ : W(L^{p_1}, L^{q_1}) → W(L^{p_2}, L^{q_2})` for all `σ ∈ M^{p,q}`.
///
/// * `cd1[..]`: `q ≤ p_1∧2, p_2'∧2, q_1', q_2`
/// * `cd2`: `1/p ≥ 1/q' + max(1/(p_1∧2) - 1/(p_2∨2), 1/q_2 - 1/q_1)`
pub fn bpwm_verdict(
    p: ExtendedExponent,
    q: ExtendedExponent,
    p1: ExtendedExponent,
    q1: ExtendedExponent,
    p2: ExtendedExponent,
    q2: ExtendedExponent,
) -> Result<Verdict> {
    require_banach(&[("p", p), ("q", q), ("p1", p1), ("q1", q1), ("p2", p2), ("q2", q2)])?;
    let mut trace = ConditionTrace::default();
    trace.le("cd1[p1]", r_meet2(&p1), r(&q));
    trace.le("cd1[p2']", r_meet2(&p2.conjugate()?), r(&q));
    trace.le("cd1[q1']", conj_r(&q1), r(&q));
    trace.le("cd1[q2]", r(&q2), r(&q));
    let local = r_meet2(&p1) - r(&p2.join2());
    let global = r(&q2) - r(&q1);
    trace.le("cd2", conj_r(&q) + local.max(global), r(&p));
    Ok(trace.finish())
}

/// `K_σ : W(L^{p_1}, L^{q_1}) → W(L^{p_2}, L^{q_2})` for all `σ ∈ FM^{p,q}`.
///
/// * `cd1[..]`: `q ≤ p_1∧2, q_1', q_2`
/// * `cd2[..]`: `p ≤ p_2'∧2, q_1'`
pub fn bpwf_verdict(
    p: ExtendedExponent,
    q: ExtendedExponent,
    p1: ExtendedExponent,
    q1: ExtendedExponent,
    p2: ExtendedExponent,
    q2: ExtendedExponent,
) -> Result<Verdict> {
    require_banach(&[("p", p), ("q", q), ("p1", p1), ("q1", q1), ("p2", p2), ("q2", q2)])?;
    let mut trace = ConditionTrace::default();
    trace.le("cd1[p1]", r_meet2(&p1), r(&q));
    trace.le("cd1[q1']", conj_r(&q1), r(&q));
    trace.le("cd1[q2]", r(&q2), r(&q));
    trace.le("cd2[p2']", r_meet2(&p2.conjugate()?), r(&p));
    trace.le("cd2[q1']", conj_r(&q1), r(&p));
    Ok(trace.finish())
}

/// `d·(1/(p_1∧2) - 1/(p_2∨2))`, the smallest admissible smoothness.
pub fn bessel_threshold(d: usize, p1: ExtendedExponent, p2: ExtendedExponent) -> Rational {
    Rational::from_integer(d as i128) * (r_meet2(&p1) - r(&p2.join2()))
}

/// `K_σ : J_s W(L^{p_1}, L^{q_1}) → W(L^{p_2}, L^{q_2})` for all `σ ∈ M^{∞,1}`.
///
/// * `cd1`: `s ≥ d(1/(p_1∧2) - 1/(p_2∨2))`, strict when `p_1 = 1` or `p_2 = ∞`
/// * `cd2`: `1/q_2 ≤ 1/q_1`
///
/// With `q_i = p_i` this is the Bessel-potential version on Lebesgue spaces.
pub fn bessel_bpwm_verdict(
    s: Rational,
    d: usize,
    p1: ExtendedExponent,
    q1: ExtendedExponent,
    p2: ExtendedExponent,
    q2: ExtendedExponent,
) -> Result<Verdict> {
    require_banach(&[("p1", p1), ("q1", q1), ("p2", p2), ("q2", q2)])?;
    if d == 0 {
        return Err(Error::InvalidArgument("dimension d must be positive".into()));
    }
    let mut trace = ConditionTrace::default();
    let threshold = bessel_threshold(d, p1, p2);
    if r(&p1) == one() || p2.is_infinite() {
        trace.lt("cd1", threshold, s);
    } else {
        trace.le("cd1", threshold, s);
    }
    trace.le("cd2", r(&q2), r(&q1));
    Ok(trace.finish())
}

/// `‖f̂‖_{L^q_s} ≲ ‖f‖_{L^p}` for `f` supported in a fixed ball, `p ∈ [1,∞]`, `q ∈ [1,2]`.
///
/// * `cd1`: `s ≤ d(1 - 1/(p∧2) - 1/q)`, strict when `1/q > 1/(p∧2)` (`p ≠ 1`) or `q ≠ ∞` (`p = 1`)
pub fn fourier_embedding_verdict(s: Rational, d: usize, p: ExtendedExponent, q: ExtendedExponent) -> Result<Verdict> {
    require_banach(&[("p", p), ("q", q)])?;
    if r(&q) < Rational::new(1, 2) {
        return Err(Error::ExponentDomain(format!("q = {q} must lie in [1, 2]")));
    }
    let bound = Rational::from_integer(d as i128) * (one() - r_meet2(&p) - r(&q));
    let strict = if r(&p) == one() {
        !q.is_infinite()
    } else {
        r(&q) > r_meet2(&p)
    };
    let mut trace = ConditionTrace::default();
    if strict {
        trace.lt("cd1", s, bound);
    } else {
        trace.le("cd1", s, bound);
    }
    Ok(trace.finish())
}

/// Conjugates `p, q, p_0, q_0`; the remaining `p_j, q_j` are unchanged.
///
/// This maps a bilinear-pairing question about `K_σ` to one about `R_m` and back.
pub fn dual_exponents(t: &ExponentTuple) -> Result<ExponentTuple> {
    t.validate()?;
    let mut out = t.clone();
    out.p = t.p.conjugate()?;
    out.q = t.q.conjugate()?;
    out.pj[0] = t.pj[0].conjugate()?;
    out.qj[0] = t.qj[0].conjugate()?;
    Ok(out)
}

/// The region families that can be queried by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionKind {
    Brwm,
    Brwf,
    Conv,
    StarConv,
    TauEmbed,
    LocalBrwm,
    Bpwm,
    Bpwf,
    Bessel,
    FourierEmbed,
}

impl RegionKind {
    pub const ALL: [RegionKind; 10] = [
        Self::Brwm,
        Self::Brwf,
        Self::Conv,
        Self::StarConv,
        Self::TauEmbed,
        Self::LocalBrwm,
        Self::Bpwm,
        Self::Bpwf,
        Self::Bessel,
        Self::FourierEmbed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Brwm => "brwm",
            Self::Brwf => "brwf",
            Self::Conv => "conv",
            Self::StarConv => "star_conv",
            Self::TauEmbed => "tau_embed",
            Self::LocalBrwm => "local_brwm",
            Self::Bpwm => "bpwm",
            Self::Bpwf => "bpwf",
            Self::Bessel => "bessel",
            Self::FourierEmbed => "fourier_embed",
        }
    }

    /// Fields of [`RegionQuery`] that must be present; `m` is always optional.
    pub fn required_inputs(self) -> &'static [&'static str] {
        match self {
            Self::Brwm | Self::Brwf => &["p", "q", "pj", "qj"],
            Self::Conv | Self::StarConv => &["q", "qj"],
            Self::TauEmbed => &["p", "q", "qj"],
            Self::LocalBrwm => &["p", "q", "pj"],
            Self::Bpwm | Self::Bpwf => &["p", "q", "p1", "q1", "p2", "q2"],
            Self::Bessel => &["s", "d", "p1", "q1", "p2", "q2"],
            Self::FourierEmbed => &["s", "d", "p", "q"],
        }
    }

    /// Inputs each kind reads from a [`RegionQuery`].
    pub fn arity(self) -> &'static str {
        match self {
            Self::Brwm | Self::Brwf => "m, p, q, pj (m+1), qj (m+1)",
            Self::Conv | Self::StarConv => "q, qj (m+1)",
            Self::TauEmbed => "p, q, qj (m+1)",
            Self::LocalBrwm => "p, q, pj (m+1)",
            Self::Bpwm | Self::Bpwf => "p, q, p1, q1, p2, q2",
            Self::Bessel => "s, d, p1, q1, p2, q2",
            Self::FourierEmbed => "s, d, p, q",
        }
    }
}

impl fmt::Display for RegionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RegionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        let alias = match key.as_str() {
            "bpwm_linear" => "bpwm",
            "bpwf_linear" => "bpwf",
            "bessel_bpwm" => "bessel",
            other => other,
        };
        Self::ALL
            .into_iter()
            .find(|k| k.name() == alias)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown region kind {s:?}")))
    }
}

/// Named exponent inputs; each kind reads the fields listed by [`RegionKind::arity`].
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionQuery {
    pub m: Option<usize>,
    pub p: Option<ExtendedExponent>,
    pub q: Option<ExtendedExponent>,
    pub pj: Option<Vec<ExtendedExponent>>,
    pub qj: Option<Vec<ExtendedExponent>>,
    pub p1: Option<ExtendedExponent>,
    pub q1: Option<ExtendedExponent>,
    pub p2: Option<ExtendedExponent>,
    pub q2: Option<ExtendedExponent>,
    #[serde(default, with = "opt_rational")]
    pub s: Option<Rational>,
    pub d: Option<usize>,
}

pub(crate) mod opt_rational {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::lattice::{parse_rational, Rational};

    pub fn serialize<S: Serializer>(v: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => s.serialize_str(&x.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Str(String),
            Num(f64),
        }
        match Option::<Raw>::deserialize(d)? {
            None => Ok(None),
            Some(Raw::Str(t)) => parse_rational(&t)
                .map(Some)
                .ok_or_else(|| serde::de::Error::custom(format!("cannot parse {t:?} as a rational"))),
            Some(Raw::Num(x)) => parse_rational(&format!("{x}"))
                .map(Some)
                .ok_or_else(|| serde::de::Error::custom(format!("cannot represent {x} exactly"))),
        }
    }
}

fn need<T: Clone>(v: &Option<T>, name: &str, kind: RegionKind) -> Result<T> {
    v.clone().ok_or_else(|| {
        Error::InvalidArgument(format!("{kind} needs {name} (inputs: {})", kind.arity()))
    })
}

impl RegionQuery {
    /// Names from [`RegionKind::required_inputs`] that are absent.
    pub fn missing(&self, kind: RegionKind) -> Vec<&'static str> {
        kind.required_inputs()
            .iter()
            .copied()
            .filter(|name| match *name {
                "p" => self.p.is_none(),
                "q" => self.q.is_none(),
                "pj" => self.pj.is_none(),
                "qj" => self.qj.is_none(),
                "p1" => self.p1.is_none(),
                "q1" => self.q1.is_none(),
                "p2" => self.p2.is_none(),
                "q2" => self.q2.is_none(),
                "s" => self.s.is_none(),
                "d" => self.d.is_none(),
                _ => false,
            })
            .collect()
    }

    /// Builds the exponent tuple from `m, p, q, pj, qj`; `m` defaults to `len(pj) - 1`.
    pub fn tuple(&self, kind: RegionKind) -> Result<ExponentTuple> {
        let pj = need(&self.pj, "pj", kind)?;
        let qj = need(&self.qj, "qj", kind)?;
        let m = match self.m {
            Some(m) => m,
            None => pj.len().checked_sub(1).ok_or_else(|| Error::InvalidArgument("pj is empty".into()))?,
        };
        ExponentTuple::new(m, need(&self.p, "p", kind)?, need(&self.q, "q", kind)?, pj, qj)
    }

    fn check_m(&self, len: usize) -> Result<()> {
        match self.m {
            Some(m) if m + 1 != len => Err(Error::InvalidArgument(format!(
                "m = {m} needs {} exponents, got {len}",
                m + 1
            ))),
            _ => Ok(()),
        }
    }

    pub fn evaluate(&self, kind: RegionKind) -> Result<Verdict> {
        let k = kind;
        match kind {
            RegionKind::Brwm => brwm_verdict(&self.tuple(k)?),
            RegionKind::Brwf => brwf_verdict(&self.tuple(k)?),
            RegionKind::Conv | RegionKind::StarConv => {
                let qj = need(&self.qj, "qj", k)?;
                self.check_m(qj.len())?;
                let q = need(&self.q, "q", k)?;
                if kind == RegionKind::Conv {
                    conv_sharp_verdict(q, &qj)
                } else {
                    star_conv_verdict(q, &qj)
                }
            }
            RegionKind::TauEmbed => {
                let qj = need(&self.qj, "qj", k)?;
                self.check_m(qj.len())?;
                tau_embed_verdict(need(&self.p, "p", k)?, need(&self.q, "q", k)?, &qj)
            }
            RegionKind::LocalBrwm => {
                let pj = need(&self.pj, "pj", k)?;
                self.check_m(pj.len())?;
                local_brwm_verdict(need(&self.p, "p", k)?, need(&self.q, "q", k)?, &pj)
            }
            RegionKind::Bpwm | RegionKind::Bpwf => {
                let args = (
                    need(&self.p, "p", k)?,
                    need(&self.q, "q", k)?,
                    need(&self.p1, "p1", k)?,
                    need(&self.q1, "q1", k)?,
                    need(&self.p2, "p2", k)?,
                    need(&self.q2, "q2", k)?,
                );
                if kind == RegionKind::Bpwm {
                    bpwm_verdict(args.0, args.1, args.2, args.3, args.4, args.5)
                } else {
                    bpwf_verdict(args.0, args.1, args.2, args.3, args.4, args.5)
                }
            }
            RegionKind::Bessel => bessel_bpwm_verdict(
                need(&self.s, "s", k)?,
                need(&self.d, "d", k)?,
                need(&self.p1, "p1", k)?,
                need(&self.q1, "q1", k)?,
                need(&self.p2, "p2", k)?,
                need(&self.q2, "q2", k)?,
            ),
            RegionKind::FourierEmbed => fourier_embedding_verdict(
                need(&self.s, "s", k)?,
                need(&self.d, "d", k)?,
                need(&self.p, "p", k)?,
                need(&self.q, "q", k)?,
            ),
        }
    }
}
