//! The discrete periodic domain and its spectral transforms.
//!
//! A `Lattice` models `[0, L)^n` with `N` points per axis. The frequency
//! lattice is `{2 pi k / L : k in [-N/2, N/2)}` per axis, stored centered
//! (negative to positive), lexicographic with the first component varying
//! slowest. The forward transform carries the quadrature weight `h^n` so
//! discrete values approximate the continuum integral `f^(xi) = int e^{-i x
//! xi} f(x) dx`; the inverse is the `(2 pi)^{-n}`-normalized frequency sum
//! with weight `(2 pi / L)^n`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::C64;

/// Discrete periodic model of `R^n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lattice {
    dim: usize,
    size: usize,
    period: f64,
}

impl Lattice {
    /// Builds a lattice; `n in {1,2}`, `size` a power of two `>= 8`, `period > 0`.
    pub fn new(dim: usize, size: usize, period: f64) -> Result<Self> {
        if dim == 0 || dim > 2 {
            return Err(Error::InvalidDimension(dim));
        }
        if !size.is_power_of_two() || size < 8 {
            return Err(Error::InvalidSize(size));
        }
        if !(period > 0.0) || !period.is_finite() {
            return Err(Error::NonpositivePeriod(period));
        }
        Ok(Lattice { dim, size, period })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Points per axis.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    /// Grid spacing `h = L / N`.
    pub fn spacing(&self) -> f64 {
        self.period / self.size as f64
    }

    /// Frequency step `2 pi / L`.
    pub fn freq_step(&self) -> f64 {
        2.0 * core::f64::consts::PI / self.period
    }

    /// Half-width of the frequency window, `pi N / L`.
    pub fn freq_extent(&self) -> f64 {
        self.freq_step() * (self.size as f64) / 2.0
    }

    /// Total number of lattice points, `N^n`.
    pub fn points(&self) -> usize {
        self.size.pow(self.dim as u32)
    }

    /// Quadrature weight of one spatial sample, `h^n`.
    pub fn space_weight(&self) -> f64 {
        libm::pow(self.spacing(), self.dim as f64)
    }

    /// Quadrature weight of one frequency sample, `(2 pi / L)^n`.
    pub fn freq_weight(&self) -> f64 {
        libm::pow(self.freq_step(), self.dim as f64)
    }

    /// Decodes a lexicographic index into per-axis indices in `0..N`.
    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0usize; self.dim];
        for axis in (0..self.dim).rev() {
            out[axis] = index % self.size;
            index /= self.size;
        }
        out
    }

    pub fn encode(&self, per_axis: &[usize]) -> usize {
        per_axis.iter().fold(0usize, |acc, &i| acc * self.size + i)
    }

    /// Spatial point `x = m h` for a lexicographic index.
    pub fn point(&self, index: usize) -> Vec<f64> {
        self.decode(index)
            .into_iter()
            .map(|m| m as f64 * self.spacing())
            .collect()
    }

    /// Spatial point in centered coordinates `[-L/2, L/2)`.
    pub fn centered_point(&self, index: usize) -> Vec<f64> {
        self.point(index)
            .into_iter()
            .map(|x| if x >= self.period / 2.0 { x - self.period } else { x })
            .collect()
    }

    /// Integer frequency multi-index `k in [-N/2, N/2)` for a lexicographic
    /// slot of the centered spectrum ordering.
    pub fn freq_index(&self, index: usize) -> Vec<i64> {
        self.decode(index)
            .into_iter()
            .map(|c| c as i64 - self.size as i64 / 2)
            .collect()
    }

    /// Frequency vector `xi = (2 pi / L) k` for a centered spectrum slot.
    pub fn frequency(&self, index: usize) -> Vec<f64> {
        self.freq_index(index)
            .into_iter()
            .map(|k| k as f64 * self.freq_step())
            .collect()
    }

    /// Lexicographic spectrum slot for an integer frequency multi-index, or
    /// `None` if any component falls outside `[-N/2, N/2)`.
    pub fn freq_slot(&self, k: &[i64]) -> Option<usize> {
        let half = self.size as i64 / 2;
        let mut index = 0usize;
        for &ki in k {
            if ki < -half || ki >= half {
                return None;
            }
            index = index * self.size + (ki + half) as usize;
        }
        Some(index)
    }

    /// Periodic Euclidean distance between two spatial lattice points.
    pub fn periodic_distance(&self, a: usize, b: usize) -> f64 {
        let pa = self.decode(a);
        let pb = self.decode(b);
        let mut sq = 0.0;
        for axis in 0..self.dim {
            let d = (pa[axis] as f64 - pb[axis] as f64).abs() * self.spacing();
            let d = if d > self.period / 2.0 { self.period - d } else { d };
            sq += d * d;
        }
        libm::sqrt(sq)
    }

    /// All frequency vectors in lexicographic order (first component slowest).
    pub fn frequency_grid(&self) -> Vec<Vec<f64>> {
        (0..self.points()).map(|i| self.frequency(i)).collect()
    }
}

/// Complex samples over the spatial lattice points.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    lattice: Lattice,
    values: Vec<C64>,
}

/// Complex coefficients over the centered frequency lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    lattice: Lattice,
    coeffs: Vec<C64>,
}

impl Field {
    pub fn new(lattice: Lattice, values: Vec<C64>) -> Result<Self> {
        if values.len() != lattice.points() {
            return Err(Error::LatticeMismatch);
        }
        Ok(Field { lattice, values })
    }

    pub fn zero(lattice: Lattice) -> Self {
        Field { lattice, values: vec![C64::new(0.0, 0.0); lattice.points()] }
    }

    pub fn constant(lattice: Lattice, c: C64) -> Self {
        Field { lattice, values: vec![c; lattice.points()] }
    }

    /// Samples a closed-form function of the (non-centered) spatial point.
    pub fn from_fn(lattice: Lattice, f: impl Fn(&[f64]) -> C64) -> Self {
        let values = (0..lattice.points()).map(|i| f(&lattice.point(i))).collect();
        Field { lattice, values }
    }

    /// Plane wave `e^{i x . xi}` for an integer frequency multi-index.
    pub fn plane_wave(lattice: Lattice, k: &[i64]) -> Self {
        let step = lattice.freq_step();
        Field::from_fn(lattice, |x| {
            let phase: f64 = x.iter().zip(k).map(|(xi, &ki)| xi * ki as f64 * step).sum();
            C64::new(libm::cos(phase), libm::sin(phase))
        })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [C64] {
        &mut self.values
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        Field { lattice: self.lattice, values: self.values.iter().map(|&v| f(v)).collect() }
    }

    pub fn zip_map(&self, other: &Field, f: impl Fn(C64, C64) -> C64) -> Result<Self> {
        if self.lattice != other.lattice {
            return Err(Error::LatticeMismatch);
        }
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect();
        Ok(Field { lattice: self.lattice, values })
    }

    pub fn scale(&self, c: C64) -> Self {
        self.map(|v| v * c)
    }

    pub fn add(&self, other: &Field) -> Result<Self> {
        self.zip_map(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Field) -> Result<Self> {
        self.zip_map(other, |a, b| a - b)
    }

    /// Lattice average `(1/L^n) int f = N^{-n} sum f`.
    pub fn mean(&self) -> C64 {
        self.values.iter().sum::<C64>() / self.values.len() as f64
    }

    /// Forward transform: `f^(xi) = h^n sum_x e^{-i x xi} f(x)`.
    pub fn transform(&self) -> Spectrum {
        let lat = self.lattice;
        let mut data = self.values.clone();
        for axis in 0..lat.dim() {
            crate::fft::fft_axis(&mut data, lat.size(), lat.dim(), axis, crate::fft::Direction::Forward);
        }
        let w = lat.space_weight();
        // reorder DFT bins to the centered frequency ordering
        let coeffs = reorder(&data, lat, |c, n| (c + n / 2) % n);
        Spectrum { lattice: lat, coeffs: coeffs.into_iter().map(|v| v * w).collect() }
    }
}

impl Spectrum {
    pub fn new(lattice: Lattice, coeffs: Vec<C64>) -> Result<Self> {
        if coeffs.len() != lattice.points() {
            return Err(Error::LatticeMismatch);
        }
        Ok(Spectrum { lattice, coeffs })
    }

    pub fn zero(lattice: Lattice) -> Self {
        Spectrum { lattice, coeffs: vec![C64::new(0.0, 0.0); lattice.points()] }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [C64] {
        &mut self.coeffs
    }

    /// Inverse transform: `f(x) = (2 pi)^{-n} (2 pi / L)^n sum_xi e^{i x xi} f^(xi)`.
    pub fn inverse(&self) -> Field {
        let lat = self.lattice;
        // centered ordering back to DFT bins
        let mut data = reorder(&self.coeffs, lat, |c, n| (c + n / 2) % n);
        for axis in 0..lat.dim() {
            crate::fft::fft_axis(&mut data, lat.size(), lat.dim(), axis, crate::fft::Direction::Inverse);
        }
        let w = libm::pow(lat.period(), -(lat.dim() as f64));
        Field { lattice: lat, values: data.into_iter().map(|v| v * w).collect() }
    }
}

/// Applies a per-axis index permutation to a lexicographic array.
///
/// `slot(c, n)` gives, for each axis, the source index for destination `c`.
/// The same closure works both ways here because `(c + n/2) % n` is an
/// involution for even `n`.
fn reorder(data: &[C64], lat: Lattice, slot: impl Fn(usize, usize) -> usize) -> Vec<C64> {
    let n = lat.size();
    let mut out = vec![C64::new(0.0, 0.0); data.len()];
    for (dst, slot_out) in out.iter_mut().enumerate() {
        let idx = lat.decode(dst);
        let src: Vec<usize> = idx.into_iter().map(|c| slot(c, n)).collect();
        *slot_out = data[lat.encode(&src)];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_lattice_arithmetic() {
        let lat = Lattice::new(1, 64, 2.0 * core::f64::consts::PI).unwrap();
        assert!((lat.spacing() - 2.0 * core::f64::consts::PI / 64.0).abs() < 1e-15);
        assert!((lat.freq_step() - 1.0).abs() < 1e-15);

        let lat2 = Lattice::new(2, 16, 1.0).unwrap();
        assert_eq!(lat2.points(), 256);
        assert!((lat2.freq_step() - 2.0 * core::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn make_lattice_rejects_bad_inputs() {
        assert_eq!(Lattice::new(1, 7, 1.0).unwrap_err(), Error::InvalidSize(7));
        assert_eq!(Lattice::new(3, 16, 1.0).unwrap_err(), Error::InvalidDimension(3));
        assert_eq!(Lattice::new(1, 16, -1.0).unwrap_err(), Error::NonpositivePeriod(-1.0));
        assert_eq!(Lattice::new(1, 4, 1.0).unwrap_err(), Error::InvalidSize(4));
    }

    #[test]
    fn frequency_grid_1d() {
        let lat = Lattice::new(1, 8, 2.0 * core::f64::consts::PI).unwrap();
        let grid: Vec<f64> = lat.frequency_grid().into_iter().map(|v| v[0]).collect();
        let want = [-4.0, -3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0];
        for (a, b) in grid.iter().zip(want) {
            assert!((a - b).abs() < 1e-14);
        }

        let lat = Lattice::new(1, 8, core::f64::consts::PI).unwrap();
        let grid: Vec<f64> = lat.frequency_grid().into_iter().map(|v| v[0]).collect();
        let want = [-8.0, -6.0, -4.0, -2.0, 0.0, 2.0, 4.0, 6.0];
        for (a, b) in grid.iter().zip(want) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn frequency_grid_2d_first_component_slowest() {
        let lat = Lattice::new(2, 8, 2.0 * core::f64::consts::PI).unwrap();
        let grid = lat.frequency_grid();
        assert_eq!(grid.len(), 64);
        // first component constant across the first 8 entries
        for v in &grid[0..8] {
            assert!((v[0] + 4.0).abs() < 1e-14);
        }
        assert!((grid[8][0] + 3.0).abs() < 1e-14);
    }

    #[test]
    fn single_mode_spectrum() {
        let l = 2.0 * core::f64::consts::PI;
        let lat = Lattice::new(1, 64, l).unwrap();
        let f = Field::plane_wave(lat, &[1]);
        let spec = f.transform();
        for (i, c) in spec.coeffs().iter().enumerate() {
            let k = lat.freq_index(i)[0];
            if k == 1 {
                assert!((c - C64::new(l, 0.0)).norm() < 1e-10);
            } else {
                assert!(c.norm() < 1e-10);
            }
        }
    }

    #[test]
    fn constant_is_dc_mode() {
        let lat = Lattice::new(1, 32, 1.0).unwrap();
        let f = Field::constant(lat, C64::new(2.5, 0.0));
        let spec = f.transform();
        for (i, c) in spec.coeffs().iter().enumerate() {
            if lat.freq_index(i)[0] == 0 {
                assert!((c - C64::new(2.5, 0.0)).norm() < 1e-12);
            } else {
                assert!(c.norm() < 1e-12);
            }
        }
    }

    #[test]
    fn round_trip_2d() {
        let lat = Lattice::new(2, 16, 3.0).unwrap();
        let f = Field::from_fn(lat, |x| C64::new(libm::sin(5.0 * x[0] + x[1]), libm::cos(2.0 * x[1])));
        let back = f.transform().inverse();
        let num: f64 = f.values().iter().zip(back.values()).map(|(a, b)| (a - b).norm_sqr()).sum();
        let den: f64 = f.values().iter().map(|a| a.norm_sqr()).sum();
        assert!((num / den) < 1e-24);
    }

    #[test]
    fn translation_covariance() {
        let lat = Lattice::new(1, 32, 2.0 * core::f64::consts::PI).unwrap();
        let f = Field::from_fn(lat, |x| C64::new(libm::sin(3.0 * x[0]), libm::cos(x[0])));
        // shift by 5 lattice steps
        let shift = 5usize;
        let shifted = Field::new(
            lat,
            (0..lat.points()).map(|i| f.values()[(i + lat.points() - shift) % lat.points()]).collect(),
        )
        .unwrap();
        let a = lat.spacing() * shift as f64;
        let spec_f = f.transform();
        let spec_s = shifted.transform();
        for (i, (cf, cs)) in spec_f.coeffs().iter().zip(spec_s.coeffs()).enumerate() {
            let xi = lat.frequency(i)[0];
            let phase = C64::new(libm::cos(-a * xi), libm::sin(-a * xi));
            assert!((cf * phase - cs).norm() < 1e-10);
        }
    }

    #[test]
    fn real_field_conjugate_symmetry() {
        let lat = Lattice::new(1, 32, 2.0).unwrap();
        let f = Field::from_fn(lat, |x| C64::new(libm::sin(7.0 * x[0]) + 0.2, 0.0));
        let spec = f.transform();
        for i in 0..lat.points() {
            let k = lat.freq_index(i)[0];
            if let Some(j) = lat.freq_slot(&[-k]) {
                let a = spec.coeffs()[i];
                let b = spec.coeffs()[j].conj();
                assert!((a - b).norm() < 1e-10);
            }
        }
    }
}
