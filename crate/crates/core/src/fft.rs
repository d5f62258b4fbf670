//! Radix-2 FFT for power-of-two lengths.
//!
//! Only power-of-two sizes are ever constructed by this crate, so a plain
//! iterative Cooley-Tukey kernel is all that is needed.

use alloc::vec::Vec;

use crate::C64;

/// Direction of the unnormalized transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Kernel `sum_m x_m e^{-2 pi i k m / N}`.
    Forward,
    /// Kernel `sum_k X_k e^{+2 pi i k m / N}` (no 1/N factor).
    Inverse,
}

/// In-place unnormalized FFT of a power-of-two length slice.
pub fn fft_in_place(data: &mut [C64], dir: Direction) {
    let n = data.len();
    debug_assert!(n.is_power_of_two());
    if n <= 1 {
        return;
    }

    // bit-reversal permutation
    let mut j = 0usize;
    for i in 0..n {
        if i < j {
            data.swap(i, j);
        }
        let mut mask = n >> 1;
        while mask != 0 && j & mask != 0 {
            j &= !mask;
            mask >>= 1;
        }
        j |= mask;
    }

    let sign = match dir {
        Direction::Forward => -1.0,
        Direction::Inverse => 1.0,
    };
    let mut len = 2;
    while len <= n {
        let ang = sign * 2.0 * core::f64::consts::PI / len as f64;
        let wlen = C64::new(libm::cos(ang), libm::sin(ang));
        for start in (0..n).step_by(len) {
            let mut w = C64::new(1.0, 0.0);
            for k in 0..len / 2 {
                let a = data[start + k];
                let b = data[start + k + len / 2] * w;
                data[start + k] = a + b;
                data[start + k + len / 2] = a - b;
                w *= wlen;
            }
        }
        len <<= 1;
    }
}

/// Applies the 1D kernel along one axis of an `n`-dimensional array stored in
/// lexicographic order with the first index varying slowest. All axes have
/// length `n_per_axis`.
pub fn fft_axis(data: &mut [C64], n_per_axis: usize, ndim: usize, axis: usize, dir: Direction) {
    debug_assert!(axis < ndim);
    debug_assert_eq!(data.len(), n_per_axis.pow(ndim as u32));
    // stride of the chosen axis; lexicographic, first index slowest
    let stride = n_per_axis.pow((ndim - 1 - axis) as u32);
    let lines = data.len() / n_per_axis;
    let mut buf: Vec<C64> = Vec::with_capacity(n_per_axis);
    for line in 0..lines {
        // decompose the line counter into (outer, inner) around the axis
        let outer = line / stride;
        let inner = line % stride;
        let base = outer * stride * n_per_axis + inner;
        buf.clear();
        for i in 0..n_per_axis {
            buf.push(data[base + i * stride]);
        }
        fft_in_place(&mut buf, dir);
        for i in 0..n_per_axis {
            data[base + i * stride] = buf[i];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_dft(x: &[C64], dir: Direction) -> Vec<C64> {
        let n = x.len();
        let sign = match dir {
            Direction::Forward => -1.0,
            Direction::Inverse => 1.0,
        };
        (0..n)
            .map(|k| {
                (0..n)
                    .map(|m| {
                        let ang = sign * 2.0 * core::f64::consts::PI * (k * m) as f64 / n as f64;
                        x[m] * C64::new(libm::cos(ang), libm::sin(ang))
                    })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn matches_naive_dft() {
        let x: Vec<C64> = (0..16)
            .map(|i| C64::new((i as f64).sin(), (3.0 + i as f64).cos()))
            .collect();
        for dir in [Direction::Forward, Direction::Inverse] {
            let mut y = x.clone();
            fft_in_place(&mut y, dir);
            let want = naive_dft(&x, dir);
            for (a, b) in y.iter().zip(&want) {
                assert!((a - b).norm() < 1e-10, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn round_trip_identity() {
        let x: Vec<C64> = (0..64).map(|i| C64::new(i as f64, -(i as f64) * 0.5)).collect();
        let mut y = x.clone();
        fft_in_place(&mut y, Direction::Forward);
        fft_in_place(&mut y, Direction::Inverse);
        for (a, b) in y.iter().zip(&x) {
            assert!((a / 64.0 - b).norm() < 1e-10);
        }
    }

    #[test]
    fn axis_transform_matches_full_2d() {
        // 2D transform via axes equals nested naive DFT
        let n = 8;
        let x: Vec<C64> = (0..n * n)
            .map(|i| C64::new((i as f64 * 0.7).sin(), (i as f64 * 0.3).cos()))
            .collect();
        let mut y = x.clone();
        fft_axis(&mut y, n, 2, 0, Direction::Forward);
        fft_axis(&mut y, n, 2, 1, Direction::Forward);

        for k0 in 0..n {
            for k1 in 0..n {
                let mut want = C64::new(0.0, 0.0);
                for m0 in 0..n {
                    for m1 in 0..n {
                        let ang = -2.0 * core::f64::consts::PI * (k0 * m0 + k1 * m1) as f64 / n as f64;
                        want += x[m0 * n + m1] * C64::new(libm::cos(ang), libm::sin(ang));
                    }
                }
                assert!((y[k0 * n + k1] - want).norm() < 1e-9);
            }
        }
    }
}
