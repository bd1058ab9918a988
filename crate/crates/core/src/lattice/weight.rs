use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Japanese bracket `⟨z⟩ = (1 + |z|²)^{1/2}`.
pub fn bracket(z: &[f64]) -> f64 {
    (1.0 + z.iter().map(|x| x * x).sum::<f64>()).sqrt()
}

/// Product weight `w(z) = ∏_i ⟨z_i⟩^{s_i}` over consecutive coordinate blocks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "WeightFile")]
pub struct SeparableWeight {
    blocks: Vec<usize>,
    s: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WeightFile {
    blocks: Vec<usize>,
    s: Vec<f64>,
}

impl TryFrom<WeightFile> for SeparableWeight {
    type Error = Error;

    fn try_from(f: WeightFile) -> Result<Self> {
        Self::new(f.blocks, f.s)
    }
}

impl SeparableWeight {
    pub fn new(blocks: Vec<usize>, s: Vec<f64>) -> Result<Self> {
        if blocks.len() != s.len() {
            return Err(Error::DimensionMismatch {
                expected: blocks.len(),
                got: s.len(),
            });
        }
        if blocks.contains(&0) {
            return Err(Error::InvalidArgument("weight blocks must be nonempty".into()));
        }
        if s.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("weight exponents must be finite".into()));
        }
        Ok(Self { blocks, s })
    }

    /// `w ≡ 1` on `R^dim`.
    pub fn trivial(dim: usize) -> Self {
        Self {
            blocks: vec![dim],
            s: vec![0.0],
        }
    }

    /// `⟨z⟩^s` on `R^dim` as a single block.
    pub fn polynomial(dim: usize, s: f64) -> Self {
        Self {
            blocks: vec![dim],
            s: vec![s],
        }
    }

    /// One block of size `block` per exponent.
    pub fn uniform_blocks(block: usize, s: &[f64]) -> Self {
        Self {
            blocks: vec![block; s.len()],
            s: s.to_vec(),
        }
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn exponents(&self) -> &[f64] {
        &self.s
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.s.iter().all(|&x| x == 0.0)
    }

    /// `Σ|s_i|`, the exponent of the submultiplicative weight `v = ⟨·⟩^{Σ|s_i|}`.
    pub fn total_order(&self) -> f64 {
        self.s.iter().map(|x| x.abs()).sum()
    }

    /// Pointwise inverse `1/w`.
    pub fn inverse(&self) -> Self {
        Self {
            blocks: self.blocks.clone(),
            s: self.s.iter().map(|x| -x).collect(),
        }
    }

    /// Concatenation `w ⊗ other` on the product space.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut blocks = self.blocks.clone();
        blocks.extend_from_slice(&other.blocks);
        let mut s = self.s.clone();
        s.extend_from_slice(&other.s);
        Self { blocks, s }
    }

    /// Evaluates at a real point.
    pub fn eval_real(&self, z: &[f64]) -> Result<f64> {
        if z.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: z.len(),
            });
        }
        Ok(self.eval_unchecked(z))
    }

    pub(crate) fn eval_unchecked(&self, z: &[f64]) -> f64 {
        let mut offset = 0;
        let mut w = 1.0;
        for (&b, &s) in self.blocks.iter().zip(&self.s) {
            if s != 0.0 {
                w *= bracket(&z[offset..offset + b]).powf(s);
            }
            offset += b;
        }
        w
    }

    /// Evaluates at an integer point.
    pub fn eval(&self, z: &[i64]) -> Result<f64> {
        let zf: Vec<f64> = z.iter().map(|&k| k as f64).collect();
        self.eval_real(&zf)
    }
}

/// `weight_eval`: `∏ ⟨z_i⟩^{s_i}` at an integer point.
pub fn weight_eval(w: &SeparableWeight, z: &[i64]) -> Result<f64> {
    w.eval(z)
}

/// Structural conditions on a weight over the Rihaczek phase space `R^{2(m+1)d}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightCondition {
    M0,
    M1,
    M2,
    W0,
    W1,
    W2,
}

impl WeightCondition {
    pub const ALL: [WeightCondition; 6] = [Self::M0, Self::M1, Self::M2, Self::W0, Self::W1, Self::W2];
}

impl fmt::Display for WeightCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for WeightCondition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "M0" => Ok(Self::M0),
            "M1" => Ok(Self::M1),
            "M2" => Ok(Self::M2),
            "W0" => Ok(Self::W0),
            "W1" => Ok(Self::W1),
            "W2" => Ok(Self::W2),
            _ => Err(Error::UnknownCondition(s.to_string())),
        }
    }
}

/// Outcome of [`moderate_condition_probe`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeReport {
    pub max_ratio: f64,
    /// Maximizing sample, laid out as `(z_0, z_1..z_m, ζ_0, ζ_1..ζ_m)`.
    pub witness: Vec<i64>,
}

/// Phase-space point `((z_0, z⃗), (ζ_0, ζ⃗))` with each slot in `Z^d`.
struct PhasePoint {
    m: usize,
    d: usize,
    coords: Vec<i64>,
}

impl PhasePoint {
    fn zero(m: usize, d: usize) -> Self {
        Self {
            m,
            d,
            coords: vec![0; 2 * (m + 1) * d],
        }
    }

    /// Slot `0..=m` is `z_j`, slot `m+1..=2m+1` is `ζ_j`.
    fn set(&mut self, slot: usize, v: &[i64]) {
        self.coords[slot * self.d..(slot + 1) * self.d].copy_from_slice(v);
    }

    fn z(&mut self, j: usize, v: &[i64]) -> &mut Self {
        self.set(j, v);
        self
    }

    fn zeta(&mut self, j: usize, v: &[i64]) -> &mut Self {
        let slot = self.m + 1 + j;
        self.set(slot, v);
        self
    }

    fn eval(&self, w: &SeparableWeight) -> f64 {
        let z: Vec<f64> = self.coords.iter().map(|&k| k as f64).collect();
        w.eval_unchecked(&z)
    }
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn neg(a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| -x).collect()
}

/// Ratio LHS/RHS of the chosen condition at one phase-space sample.
fn condition_ratio(w: &SeparableWeight, cond: WeightCondition, m: usize, d: usize, x: &[i64]) -> f64 {
    let slot = |j: usize| &x[j * d..(j + 1) * d];
    let z = |j: usize| slot(j);
    let zeta = |j: usize| slot(m + 1 + j);
    let zero = vec![0i64; d];
    let pt = || PhasePoint::zero(m, d);
    match cond {
        WeightCondition::M0 => {
            let mut lhs = pt();
            lhs.coords.copy_from_slice(x);
            let mut r1 = pt();
            r1.z(0, z(0));
            for j in 1..=m {
                r1.zeta(j, zeta(j));
            }
            let mut r2 = pt();
            for j in 1..=m {
                r2.z(j, z(j));
            }
            r2.zeta(0, zeta(0));
            lhs.eval(w) / (r1.eval(w) * r2.eval(w))
        }
        WeightCondition::M1 => {
            let mut lhs = pt();
            lhs.z(0, z(0));
            for j in 1..=m {
                lhs.zeta(j, zeta(j));
            }
            let mut r0 = pt();
            r0.z(0, z(0));
            let nz0 = neg(z(0));
            for j in 1..=m {
                r0.zeta(j, &nz0);
            }
            let mut rhs = r0.eval(w);
            for j in 1..=m {
                let mut rj = pt();
                rj.zeta(j, &add(zeta(j), z(0)));
                rhs *= rj.eval(w);
            }
            lhs.eval(w) / rhs
        }
        WeightCondition::M2 => {
            let mut lhs = pt();
            for j in 1..=m {
                lhs.z(j, z(j));
            }
            lhs.zeta(0, zeta(0));
            let mut total = zeta(0).to_vec();
            for j in 1..=m {
                total = add(&total, z(j));
            }
            let mut r0 = pt();
            r0.zeta(0, &total);
            let mut rhs = r0.eval(w);
            for j in 1..=m {
                let mut rj = pt();
                rj.z(j, z(j)).zeta(0, &neg(z(j)));
                rhs *= rj.eval(w);
            }
            lhs.eval(w) / rhs
        }
        WeightCondition::W0 => {
            let mut first = z(0).to_vec();
            for j in 1..=m {
                first = add(&first, zeta(j));
            }
            let mut lhs = pt();
            lhs.z(0, &first);
            for j in 1..=m {
                lhs.z(j, &add(z(j), zeta(0)));
                lhs.zeta(j, zeta(j));
            }
            lhs.zeta(0, zeta(0));
            let mut r0 = pt();
            r0.z(0, z(0));
            for j in 1..=m {
                r0.z(j, zeta(0));
            }
            r0.zeta(0, zeta(0));
            let mut rhs = r0.eval(w);
            for i in 1..=m {
                let mut ri = pt();
                ri.z(0, zeta(i)).z(i, z(i)).zeta(i, zeta(i));
                rhs *= ri.eval(w);
            }
            lhs.eval(w) / rhs
        }
        WeightCondition::W1 => {
            // Ω_0(z_0, ζ_0) = Ω((z_0, (ζ_0,…,ζ_0)), (ζ_0, 0⃗))
            let omega0 = |a: &[i64], b: &[i64]| {
                let mut p = pt();
                p.z(0, a);
                for j in 1..=m {
                    p.z(j, b);
                }
                p.zeta(0, b);
                p.eval(w)
            };
            omega0(z(0), zeta(0)) / (omega0(z(0), &zero) * omega0(&zero, zeta(0)))
        }
        WeightCondition::W2 => {
            // Ω_i(z_i, ζ_i) = Ω((ζ_i, e_i·(−z_i)), (0, e_i·ζ_i))
            let omega_i = |i: usize, a: &[i64], b: &[i64]| {
                let mut p = pt();
                p.z(0, b).z(i, &neg(a)).zeta(i, b);
                p.eval(w)
            };
            (1..=m)
                .map(|i| omega_i(i, z(i), zeta(i)) / (omega_i(i, z(i), &zero) * omega_i(i, &zero, zeta(i))))
                .fold(0.0, f64::max)
        }
    }
}

/// Visits every integer point of `[-r, r]^dim`.
pub(crate) fn for_each_box_point(dim: usize, r: i64, mut f: impl FnMut(&[i64])) {
    let mut p = vec![-r; dim];
    loop {
        f(&p);
        let mut axis = dim;
        loop {
            if axis == 0 {
                return;
            }
            axis -= 1;
            if p[axis] < r {
                p[axis] += 1;
                for q in p.iter_mut().skip(axis + 1) {
                    *q = -r;
                }
                break;
            }
        }
    }
}

/// Scans the integer box of radius `sample_box` in `R^{2(m+1)d}` and reports
/// the largest LHS/RHS ratio of the named condition.
///
/// A condition holds in the `≲` sense when the ratio stays bounded as the box grows.
pub fn moderate_condition_probe(
    w: &SeparableWeight,
    condition: &str,
    m: usize,
    d: usize,
    sample_box: i64,
) -> Result<ProbeReport> {
    let cond: WeightCondition = condition.parse()?;
    probe_condition(w, cond, m, d, sample_box)
}

pub fn probe_condition(
    w: &SeparableWeight,
    cond: WeightCondition,
    m: usize,
    d: usize,
    sample_box: i64,
) -> Result<ProbeReport> {
    let dim = 2 * (m + 1) * d;
    if w.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: w.dim(),
        });
    }
    if m == 0 || d == 0 || sample_box < 0 {
        return Err(Error::InvalidArgument("need m ≥ 1, d ≥ 1, radius ≥ 0".into()));
    }
    let mut best = ProbeReport {
        max_ratio: 0.0,
        witness: vec![0; dim],
    };
    for_each_box_point(dim, sample_box, |x| {
        let r = condition_ratio(w, cond, m, d, x);
        if r > best.max_ratio {
            best.max_ratio = r;
            best.witness = x.to_vec();
        }
    });
    Ok(best)
}

/// Smallest `C` with `w(z1 + z2) ≤ C·v(z1)·w(z2)` over the box, `v = ⟨·⟩^{Σ|s_i|}`.
pub fn moderation_constant(w: &SeparableWeight, radius: i64) -> f64 {
    let dim = w.dim();
    let v = SeparableWeight::polynomial(dim, w.total_order());
    let mut pts = Vec::new();
    for_each_box_point(dim, radius, |p| pts.push(p.iter().map(|&k| k as f64).collect::<Vec<_>>()));
    let mut c: f64 = 0.0;
    for z1 in &pts {
        let v1 = v.eval_unchecked(z1);
        for z2 in &pts {
            let sum: Vec<f64> = z1.iter().zip(z2).map(|(a, b)| a + b).collect();
            c = c.max(w.eval_unchecked(&sum) / (v1 * w.eval_unchecked(z2)));
        }
    }
    c
}
