use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::{Grid, LatticeSignal};
use crate::transforms::dft;

/// Function of `(x, ξ_1..ξ_m)` on the `(m+1)·d`-dimensional lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSpaceSignal {
    m: usize,
    signal: LatticeSignal,
}

impl PhaseSpaceSignal {
    pub fn new(m: usize, signal: LatticeSignal) -> Result<Self> {
        if m == 0 || !signal.d().is_multiple_of(m + 1) {
            return Err(Error::DimensionMismatch {
                expected: (m + 1) * (signal.d() / (m + 1)).max(1),
                got: signal.d(),
            });
        }
        Ok(Self { m, signal })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Dimension `d` of each slot.
    pub fn base_dim(&self) -> usize {
        self.signal.d() / (self.m + 1)
    }

    /// Grid of a single slot.
    pub fn base_grid(&self) -> Grid {
        self.signal.grid().with_dim(self.base_dim())
    }

    pub fn signal(&self) -> &LatticeSignal {
        &self.signal
    }

    pub fn into_signal(self) -> LatticeSignal {
        self.signal
    }
}

/// Index arithmetic on `k` slots of `(Z_N^d)`, each slot addressed by its flat index.
#[derive(Debug, Clone)]
pub(crate) struct Slots {
    pub grid: Grid,
    pub coords: Vec<Vec<i64>>,
}

impl Slots {
    pub fn new(grid: Grid) -> Self {
        let coords = (0..grid.len())
            .map(|i| grid.coords(i).into_iter().map(|k| k as i64).collect())
            .collect();
        Self { grid, coords }
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    /// Splits a flat index over `count` slots, most significant first.
    pub fn split(&self, mut flat: usize, count: usize, out: &mut Vec<usize>) {
        out.clear();
        out.resize(count, 0);
        let l = self.len();
        for slot in out.iter_mut().rev() {
            *slot = flat % l;
            flat /= l;
        }
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let n = self.grid.n;
        self.coords[a]
            .iter()
            .zip(&self.coords[b])
            .fold(0, |acc, (x, y)| acc * n + ((x + y) as usize % n))
    }

    pub fn dot(&self, a: usize, b: usize) -> i64 {
        self.coords[a].iter().zip(&self.coords[b]).map(|(x, y)| x * y).sum()
    }
}

pub(crate) fn check_family(g: &LatticeSignal, fs: &[LatticeSignal]) -> Result<()> {
    if fs.is_empty() {
        return Err(Error::InvalidArgument("need at least one f_j (m ≥ 1)".into()));
    }
    for f in fs {
        g.grid().ensure_same(&f.grid())?;
    }
    Ok(())
}

/// `R_m(g, f⃗)(x, ξ⃗) = g(x) · conj(∏ f̂_j(ξ_j)) · e^{-2πi x·Σξ_j/N}`.
pub fn rihaczek(g: &LatticeSignal, fs: &[LatticeSignal]) -> Result<PhaseSpaceSignal> {
    check_family(g, fs)?;
    let m = fs.len();
    let grid = g.grid();
    let slots = Slots::new(grid);
    let l = slots.len();
    let spectra: Vec<LatticeSignal> = fs.iter().map(|f| dft(f, false)).collect();
    let big = grid.with_dim((m + 1) * grid.d);
    let tail = l.pow(m as u32);
    let mut values = Vec::with_capacity(l * tail);
    let mut idx = Vec::new();
    for x in 0..l {
        let gx = g.values()[x];
        for rest in 0..tail {
            if gx == Complex64::new(0.0, 0.0) {
                values.push(gx);
                continue;
            }
            slots.split(rest, m, &mut idx);
            let mut prod = Complex64::new(1.0, 0.0);
            let mut dot = 0i64;
            for (j, &xi) in idx.iter().enumerate() {
                prod *= spectra[j].values()[xi];
                dot += slots.dot(x, xi);
            }
            values.push(gx * prod.conj() * grid.phase(-dot));
        }
    }
    PhaseSpaceSignal::new(m, LatticeSignal::new(big, values)?)
}
