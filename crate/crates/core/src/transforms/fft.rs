//! One-dimensional transforms applied axis by axis to row-major arrays.

use std::f64::consts::PI;

use num_complex::Complex64;

/// Exponent sign of the kernel `e^{sign·2πi·k·n/N}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    fn sign(self) -> f64 {
        match self {
            Direction::Forward => -1.0,
            Direction::Backward => 1.0,
        }
    }
}

/// `e^{∓2πi·k/n}` with the sign of `dir`.
pub fn unit_root(n: usize, k: usize, dir: Direction) -> Complex64 {
    Complex64::from_polar(1.0, dir.sign() * 2.0 * PI * (k % n) as f64 / n as f64)
}

/// Unnormalized direct sum, `O(n²)`.
pub fn dft_1d_naive(x: &[Complex64], dir: Direction) -> Vec<Complex64> {
    let n = x.len();
    let table: Vec<Complex64> = (0..n).map(|k| unit_root(n, k, dir)).collect();
    (0..n)
        .map(|freq| {
            x.iter()
                .enumerate()
                .map(|(k, &v)| v * table[(k * freq) % n])
                .sum()
        })
        .collect()
}

/// In-place iterative radix-2 transform; `x.len()` must be a power of two.
pub fn fft_radix2(x: &mut [Complex64], dir: Direction) {
    let n = x.len();
    assert!(n.is_power_of_two(), "radix-2 length must be a power of two");
    if n <= 1 {
        return;
    }
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if j > i {
            x.swap(i, j);
        }
    }
    let table: Vec<Complex64> = (0..n / 2).map(|k| unit_root(n, k, dir)).collect();
    let mut len = 2;
    while len <= n {
        let stride = n / len;
        for start in (0..n).step_by(len) {
            for k in 0..len / 2 {
                let w = table[k * stride];
                let a = x[start + k];
                let b = x[start + k + len / 2] * w;
                x[start + k] = a + b;
                x[start + k + len / 2] = a - b;
            }
        }
        len <<= 1;
    }
}

/// Unnormalized 1-D transform, radix-2 when possible.
pub fn dft_1d(x: &mut [Complex64], dir: Direction) {
    if x.len().is_power_of_two() {
        fft_radix2(x, dir);
    } else {
        let out = dft_1d_naive(x, dir);
        x.copy_from_slice(&out);
    }
}

/// Unnormalized `d`-dimensional transform of an `n^d` row-major array.
pub fn dft_nd(data: &mut [Complex64], n: usize, d: usize, dir: Direction) {
    debug_assert_eq!(data.len(), n.pow(d as u32));
    let mut line = vec![Complex64::new(0.0, 0.0); n];
    for axis in 0..d {
        let stride = n.pow((d - 1 - axis) as u32);
        let block = stride * n;
        for outer in (0..data.len()).step_by(block) {
            for inner in 0..stride {
                let base = outer + inner;
                for (i, slot) in line.iter_mut().enumerate() {
                    *slot = data[base + i * stride];
                }
                dft_1d(&mut line, dir);
                for (i, v) in line.iter().enumerate() {
                    data[base + i * stride] = *v;
                }
            }
        }
    }
}
