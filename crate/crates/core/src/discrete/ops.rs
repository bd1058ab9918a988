//! Shifted tensor products, shared-shift convolutions and the weighted operators `T_{p,Ω}`, `S_{p,Ω}`.
//!
//! Everything works on exact finite supports; outputs are accumulated over the
//! product of input supports, which maps bijectively onto the summation indices.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::sequence::TruncatedSequence;
use crate::error::{Error, Result};
use crate::lattice::{ExtendedExponent, MixedNormSpec, SeparableWeight};
use crate::norms::{mixed_norm, NdArray};

fn same_dims(d: usize, seqs: &[&TruncatedSequence]) -> Result<()> {
    for s in seqs {
        if s.d() != d {
            return Err(Error::DimensionMismatch { expected: d, got: s.d() });
        }
    }
    Ok(())
}

/// Calls `f` with one support entry from each sequence, over the full product.
fn for_each_combination<'a>(seqs: &[&'a TruncatedSequence], mut f: impl FnMut(&[(&'a Vec<i64>, &'a Complex64)])) {
    let lists: Vec<Vec<(&Vec<i64>, &Complex64)>> = seqs.iter().map(|s| s.iter().collect()).collect();
    if lists.iter().any(|l| l.is_empty()) {
        return;
    }
    let mut pos = vec![0usize; lists.len()];
    let mut pick = Vec::with_capacity(lists.len());
    loop {
        pick.clear();
        pick.extend(lists.iter().zip(&pos).map(|(l, &i)| l[i]));
        f(&pick);
        let mut axis = lists.len();
        loop {
            if axis == 0 {
                return;
            }
            axis -= 1;
            pos[axis] += 1;
            if pos[axis] < lists[axis].len() {
                break;
            }
            pos[axis] = 0;
        }
    }
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `τ_m(b_0 ⊗ b⃗)(k_0, k⃗) = b_0(k_0) ∏ b_j(k_j + k_0)` on `Z^{(m+1)d}`.
pub fn tau_m(b0: &TruncatedSequence, bs: &[TruncatedSequence]) -> Result<TruncatedSequence> {
    let d = b0.d();
    let refs: Vec<&TruncatedSequence> = std::iter::once(b0).chain(bs).collect();
    same_dims(d, &refs)?;
    let mut out = TruncatedSequence::new((bs.len() + 1) * d);
    for_each_combination(&refs, |pick| {
        let (k0, v0) = pick[0];
        let mut key = k0.clone();
        let mut v = *v0;
        for (c, vj) in &pick[1..] {
            key.extend(sub(c, k0));
            v *= *vj;
        }
        out.accumulate(key, v);
    });
    Ok(out)
}

/// `(a ⋆ b⃗)(k⃗) = Σ_{k_0} a(k_0) ∏ b_j(k_j - k_0)` on `Z^{md}`.
pub fn star_convolve(a: &TruncatedSequence, bs: &[TruncatedSequence]) -> Result<TruncatedSequence> {
    if bs.is_empty() {
        return Err(Error::InvalidArgument("need at least one b_j (m ≥ 1)".into()));
    }
    let d = a.d();
    let refs: Vec<&TruncatedSequence> = std::iter::once(a).chain(bs).collect();
    same_dims(d, &refs)?;
    let mut out = TruncatedSequence::new(bs.len() * d);
    for_each_combination(&refs, |pick| {
        let (k0, v0) = pick[0];
        let mut key = Vec::with_capacity(bs.len() * d);
        let mut v = *v0;
        for (c, vj) in &pick[1..] {
            key.extend(add(c, k0));
            v *= *vj;
        }
        out.accumulate(key, v);
    });
    Ok(out)
}

/// Ordinary convolution `(a * b)(k) = Σ_l a(l) b(k - l)`.
pub fn convolve(a: &TruncatedSequence, b: &TruncatedSequence) -> Result<TruncatedSequence> {
    same_dims(a.d(), &[b])?;
    let mut out = TruncatedSequence::new(a.d());
    for (l, va) in a.iter() {
        for (c, vb) in b.iter() {
            out.accumulate(add(l, c), va * vb);
        }
    }
    Ok(out)
}

/// `(ρ *_2 c)(k_0, n_0) = Σ_l ρ(l) c(k_0, n_0 - l)`: convolution in the second variable.
pub fn conv_star_2(rho: &TruncatedSequence, c: &TruncatedSequence) -> Result<TruncatedSequence> {
    let d = rho.d();
    if c.d() != 2 * d {
        return Err(Error::DimensionMismatch {
            expected: 2 * d,
            got: c.d(),
        });
    }
    let mut out = TruncatedSequence::new(2 * d);
    for (l, vr) in rho.iter() {
        for (kn, vc) in c.iter() {
            let mut key = kn[..d].to_vec();
            key.extend(add(&kn[d..], l));
            out.accumulate(key, vr * vc);
        }
    }
    Ok(out)
}

/// Accumulates `|term|^p` (or the max for `p = ∞`) per output point.
struct PowerSums {
    p: f64,
    sums: BTreeMap<Vec<i64>, f64>,
}

impl PowerSums {
    fn new(p: ExtendedExponent) -> Self {
        Self {
            p: p.p_f64(),
            sums: BTreeMap::new(),
        }
    }

    fn add(&mut self, key: Vec<i64>, magnitude: f64) {
        let slot = self.sums.entry(key).or_insert(0.0);
        if self.p.is_infinite() {
            *slot = slot.max(magnitude);
        } else {
            *slot += magnitude.powf(self.p);
        }
    }

    fn finish(self, d: usize) -> TruncatedSequence {
        let p = self.p;
        let mut out = TruncatedSequence::new(d);
        for (k, s) in self.sums {
            let v = if p.is_infinite() { s } else { s.powf(1.0 / p) };
            out.accumulate(k, Complex64::new(v, 0.0));
        }
        out
    }
}

fn check_operator_inputs(
    a: &TruncatedSequence,
    bs: &[TruncatedSequence],
    omega: &SeparableWeight,
) -> Result<usize> {
    if bs.is_empty() {
        return Err(Error::InvalidArgument("need at least one b_j (m ≥ 1)".into()));
    }
    if !a.d().is_multiple_of(2) {
        return Err(Error::InvalidArgument("a must live on Z^d × Z^d".into()));
    }
    let d = a.d() / 2;
    let refs: Vec<&TruncatedSequence> = bs.iter().collect();
    same_dims(2 * d, &refs)?;
    let m = bs.len();
    if omega.dim() != 2 * (m + 1) * d {
        return Err(Error::DimensionMismatch {
            expected: 2 * (m + 1) * d,
            got: omega.dim(),
        });
    }
    Ok(d)
}

fn weight_at(omega: &SeparableWeight, ks: &[i64], ns: &[i64]) -> f64 {
    if omega.is_trivial() {
        return 1.0;
    }
    let z: Vec<f64> = ks.iter().chain(ns).map(|&v| v as f64).collect();
    omega.eval_unchecked(&z)
}

/// `T_{p,Ω}(a, b⃗)(n_0, n⃗) = ( Σ_{k_0,k⃗} |a(k_0, n_0 + Σk_j) ∏ b_j(n_j + k_0, k_j)|^p Ω^p )^{1/p}`,
/// with `Ω` evaluated at `((k_0, k⃗), (n_0, n⃗))`.
pub fn t_p_omega(
    a: &TruncatedSequence,
    bs: &[TruncatedSequence],
    p: ExtendedExponent,
    omega: &SeparableWeight,
) -> Result<TruncatedSequence> {
    let d = check_operator_inputs(a, bs, omega)?;
    let m = bs.len();
    let refs: Vec<&TruncatedSequence> = std::iter::once(a).chain(bs).collect();
    let mut acc = PowerSums::new(p);
    for_each_combination(&refs, |pick| {
        // a at (u, v): k_0 = u, n_0 = v - Σ k_j; b_j at (s_j, t_j): k_j = t_j, n_j = s_j - u.
        let (uv, va) = pick[0];
        let (u, v) = (&uv[..d], &uv[d..]);
        let mut ks = u.to_vec();
        let mut n0 = v.to_vec();
        let mut ns_tail = Vec::with_capacity(m * d);
        let mut value = va.norm();
        for (st, vb) in &pick[1..] {
            let (s, t) = (&st[..d], &st[d..]);
            ks.extend_from_slice(t);
            n0 = sub(&n0, t);
            ns_tail.extend(sub(s, u));
            value *= vb.norm();
        }
        let mut ns = n0;
        ns.extend(ns_tail);
        let w = weight_at(omega, &ks, &ns);
        acc.add(ns, value * w);
    });
    Ok(acc.finish((m + 1) * d))
}

/// `S_{p,Ω}(a, b⃗)(n_0, n⃗) = ( Σ_{k_0,k⃗} |a(n_0, -k_0 + Σn_j) ∏ b_j(-k_j + n_0, n_j) Ω|^p )^{1/p}`,
/// with `Ω` evaluated at `((k_0, k⃗), (n_0, n⃗))`.
pub fn s_p_omega(
    a: &TruncatedSequence,
    bs: &[TruncatedSequence],
    p: ExtendedExponent,
    omega: &SeparableWeight,
) -> Result<TruncatedSequence> {
    let d = check_operator_inputs(a, bs, omega)?;
    let m = bs.len();
    let refs: Vec<&TruncatedSequence> = std::iter::once(a).chain(bs).collect();
    let mut acc = PowerSums::new(p);
    for_each_combination(&refs, |pick| {
        // a at (u, v): n_0 = u, k_0 = Σ n_j - v; b_j at (s_j, t_j): n_j = t_j, k_j = u - s_j.
        let (uv, va) = pick[0];
        let (u, v) = (&uv[..d], &uv[d..]);
        let mut ns = u.to_vec();
        let mut k0: Vec<i64> = v.iter().map(|x| -x).collect();
        let mut ks_tail = Vec::with_capacity(m * d);
        let mut value = va.norm();
        for (st, vb) in &pick[1..] {
            let (s, t) = (&st[..d], &st[d..]);
            ns.extend_from_slice(t);
            k0 = add(&k0, t);
            ks_tail.extend(sub(u, s));
            value *= vb.norm();
        }
        let mut ks = k0;
        ks.extend(ks_tail);
        let w = weight_at(omega, &ks, &ns);
        acc.add(ns, value * w);
    });
    Ok(acc.finish((m + 1) * d))
}

/// Dense copy of a sequence on the bounding box of its support.
pub fn to_dense(seq: &TruncatedSequence) -> NdArray {
    let d = seq.d();
    if seq.is_empty() {
        return NdArray::new(vec![1; d], vec![0; d], vec![Complex64::new(0.0, 0.0)]).expect("unit box");
    }
    let mut lo = vec![i64::MAX; d];
    let mut hi = vec![i64::MIN; d];
    for k in seq.support() {
        for i in 0..d {
            lo[i] = lo[i].min(k[i]);
            hi[i] = hi[i].max(k[i]);
        }
    }
    let shape: Vec<usize> = lo.iter().zip(&hi).map(|(a, b)| (b - a + 1) as usize).collect();
    let mut values = vec![Complex64::new(0.0, 0.0); shape.iter().product()];
    for (k, v) in seq.iter() {
        let idx = k
            .iter()
            .zip(&lo)
            .zip(&shape)
            .fold(0usize, |acc, ((x, l), s)| acc * s + (x - l) as usize);
        values[idx] = *v;
    }
    NdArray::new(shape, lo, values).expect("consistent shape")
}

/// `‖τ_m(b⃗)‖_{ℓ^{p,q}} / ∏ ‖b_j‖_{ℓ^{q_j}}` with `k_0` inner and `k⃗` outer.
pub fn tau_embedding_ratio(
    b0: &TruncatedSequence,
    bs: &[TruncatedSequence],
    p: ExtendedExponent,
    q: ExtendedExponent,
    qs: &[ExtendedExponent],
) -> Result<f64> {
    if qs.len() != bs.len() + 1 {
        return Err(Error::DimensionMismatch {
            expected: bs.len() + 1,
            got: qs.len(),
        });
    }
    let d = b0.d();
    let tau = tau_m(b0, bs)?;
    let num = mixed_norm(&to_dense(&tau), &MixedNormSpec::unweighted(p, q, d, bs.len() * d))?;
    let mut den = 1.0;
    for (b, qj) in std::iter::once(b0).chain(bs).zip(qs) {
        den *= b.lp_norm(*qj);
    }
    if den == 0.0 {
        return Err(Error::ZeroDenominator("some b_j is zero".into()));
    }
    Ok(num / den)
}

/// `‖a ⋆ b⃗‖_{ℓ^q} / ∏ ‖·‖_{ℓ^{q_j}}`.
pub fn star_ratio(
    a: &TruncatedSequence,
    bs: &[TruncatedSequence],
    q: ExtendedExponent,
    qs: &[ExtendedExponent],
) -> Result<f64> {
    if qs.len() != bs.len() + 1 {
        return Err(Error::DimensionMismatch {
            expected: bs.len() + 1,
            got: qs.len(),
        });
    }
    let num = star_convolve(a, bs)?.lp_norm(q);
    let mut den = 1.0;
    for (b, qj) in std::iter::once(a).chain(bs).zip(qs) {
        den *= b.lp_norm(*qj);
    }
    if den == 0.0 {
        return Err(Error::ZeroDenominator("some input is zero".into()));
    }
    Ok(num / den)
}
