//! File formats: signal, weight, sequence and phase-space JSON, STFT CSV/JSON.
//!
//! * signal: `{"d", "N", "alpha", "re": [...], "im": [...]}`, row-major
//! * phase-space signal: `{"m", "signal": <signal>}`; accepted wherever a signal is read
//! * weight: `{"blocks": [...], "s": [...]}`
//! * sequence: `{"d", "points": [[[coords], re, im], ...]}`
//! * STFT: columns `x0..x{d-1}, xi0..xi{d-1}, re, im` with centered lattice indices

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Grid, LatticeSignal};
use crate::rihaczek::PhaseSpaceSignal;
use crate::transforms::StftArray;

/// Serialized form of a [`LatticeSignal`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignalFile {
    pub d: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub alpha: f64,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl From<&LatticeSignal> for SignalFile {
    fn from(s: &LatticeSignal) -> Self {
        let g = s.grid();
        Self {
            d: g.d,
            n: g.n,
            alpha: g.alpha,
            re: s.values().iter().map(|z| z.re).collect(),
            im: s.values().iter().map(|z| z.im).collect(),
        }
    }
}

impl TryFrom<SignalFile> for LatticeSignal {
    type Error = Error;

    fn try_from(f: SignalFile) -> Result<Self> {
        let grid = Grid::new(f.d, f.n, f.alpha)?;
        if f.re.len() != f.im.len() {
            return Err(Error::InvalidSignal(format!(
                "re has {} entries but im has {}",
                f.re.len(),
                f.im.len()
            )));
        }
        let values = f.re.into_iter().zip(f.im).map(|(a, b)| Complex64::new(a, b)).collect();
        LatticeSignal::new(grid, values)
    }
}

impl Serialize for LatticeSignal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SignalFile::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticeSignal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        LatticeSignal::try_from(SignalFile::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PhaseSpaceFile {
    m: usize,
    signal: LatticeSignal,
}

impl Serialize for PhaseSpaceSignal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PhaseSpaceFile {
            m: self.m(),
            signal: self.signal().clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PhaseSpaceSignal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let f = PhaseSpaceFile::deserialize(d)?;
        PhaseSpaceSignal::new(f.m, f.signal).map_err(serde::de::Error::custom)
    }
}

/// Reads and parses a JSON file, naming the path in any error.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        context: format!("reading {}", path.display()),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| Error::Json {
        context: format!("parsing {}", path.display()),
        source,
    })
}

/// Reads a signal file, or the underlying signal of a phase-space file.
pub fn read_signal(path: &Path) -> Result<LatticeSignal> {
    let value: serde_json::Value = read_json(path)?;
    let parsed = if value.get("m").is_some() {
        serde_json::from_value::<PhaseSpaceSignal>(value).map(PhaseSpaceSignal::into_signal)
    } else {
        serde_json::from_value(value)
    };
    parsed.map_err(|source| Error::Json {
        context: format!("parsing {}", path.display()),
        source,
    })
}

/// Pretty-printed JSON followed by a newline.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|source| Error::Json {
        context: "serializing".into(),
        source,
    })?;
    s.push('\n');
    Ok(s)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    write_text(path, &to_json_string(value)?)
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        context: format!("writing {}", path.display()),
        source,
    })
}

fn stft_columns(d: usize) -> Vec<String> {
    let mut cols: Vec<String> = (0..d).map(|i| format!("x{i}")).collect();
    cols.extend((0..d).map(|i| format!("xi{i}")));
    cols.push("re".into());
    cols.push("im".into());
    cols
}

fn stft_rows(v: &StftArray) -> impl Iterator<Item = (Vec<i64>, Vec<i64>, Complex64)> + '_ {
    let grid = v.grid();
    (0..grid.len()).flat_map(move |x| {
        (0..grid.len()).map(move |xi| (grid.centered_coords(x), grid.centered_coords(xi), v.at(x, xi)))
    })
}

/// One row per `(x, ξ)`, `x` outer, with a header line.
pub fn stft_to_csv(v: &StftArray) -> String {
    let mut out = stft_columns(v.grid().d).join(",");
    out.push('\n');
    for (x, xi, z) in stft_rows(v) {
        for k in x.iter().chain(&xi) {
            out.push_str(&format!("{k},"));
        }
        out.push_str(&format!("{},{}\n", z.re, z.im));
    }
    out
}

/// Serialized STFT: grid parameters plus the same rows as the CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StftFile {
    pub d: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub alpha: f64,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

pub fn stft_to_file(v: &StftArray) -> StftFile {
    let g = v.grid();
    let rows = stft_rows(v)
        .map(|(x, xi, z)| {
            let mut r: Vec<f64> = x.iter().chain(&xi).map(|&k| k as f64).collect();
            r.push(z.re);
            r.push(z.im);
            r
        })
        .collect();
    StftFile {
        d: g.d,
        n: g.n,
        alpha: g.alpha,
        columns: stft_columns(g.d),
        rows,
    }
}

/// Rebuilds the array; rows may come in any order but must cover every `(x, ξ)` once.
pub fn stft_from_file(f: &StftFile) -> Result<StftArray> {
    let grid = Grid::new(f.d, f.n, f.alpha)?;
    if f.columns != stft_columns(f.d) {
        return Err(Error::InvalidArgument(format!("unexpected STFT columns {:?}", f.columns)));
    }
    let len = grid.len();
    if f.rows.len() != len * len {
        return Err(Error::DimensionMismatch {
            expected: len * len,
            got: f.rows.len(),
        });
    }
    let mut data = vec![Complex64::new(0.0, 0.0); len * len];
    let mut seen = vec![false; len * len];
    for row in &f.rows {
        if row.len() != 2 * f.d + 2 {
            return Err(Error::DimensionMismatch {
                expected: 2 * f.d + 2,
                got: row.len(),
            });
        }
        let coord = |s: &[f64]| -> Vec<i64> { s.iter().map(|v| v.round() as i64).collect() };
        let at = grid.index_of(&coord(&row[..f.d])) * len + grid.index_of(&coord(&row[f.d..2 * f.d]));
        if seen[at] {
            return Err(Error::InvalidArgument(format!("duplicate STFT row at {:?}", &row[..2 * f.d])));
        }
        seen[at] = true;
        data[at] = Complex64::new(row[2 * f.d], row[2 * f.d + 1]);
    }
    Ok(StftArray::from_rows(grid, data))
}
