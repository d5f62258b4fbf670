//! Function-space norms: Lebesgue, Sobolev, product/mixed Sobolev and Besov
//! norms of bilinear symbols, BMO, a discrete Hardy space norm, and Carleson
//! measure constants.

use alloc::vec;
use alloc::vec::Vec;

use crate::calculus::dyadic_radii;
use crate::error::{Error, Result};
use crate::lattice::{Field, Lattice};
use crate::rng::SeededRng;
use crate::symbols::{dyadic_piece, product_lp_piece, BilinearSymbol, WindowFamily};
use crate::C64;

/// The frequency grid of `lat`, viewed as a spatial lattice in its own
/// right: `N` points per axis, period `2 pi N / L` (the frequency window
/// length). Fields over this lattice are symbol slices in one `xi` factor;
/// its own frequency grid is the dual variable `y`, with spacing `h` and
/// extent `L/2`.
pub fn grid_lattice(lat: &Lattice) -> Lattice {
    Lattice::new(lat.dim(), lat.size(), lat.size() as f64 * lat.freq_step())
        .expect("frequency grid of a valid lattice is a valid lattice")
}

/// A function of `(xi_1, xi_2)` sampled on the product of two copies of a
/// lattice's frequency grid, stored lexicographically with the `xi_1` slot
/// varying slowest.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductField {
    factor: Lattice,
    values: Vec<C64>,
}

impl ProductField {
    pub fn from_fn(factor: Lattice, f: impl Fn(&[f64], &[f64]) -> C64) -> Self {
        let p = factor.points();
        let mut values = Vec::with_capacity(p * p);
        for i1 in 0..p {
            let xi1 = factor.frequency(i1);
            for i2 in 0..p {
                let xi2 = factor.frequency(i2);
                values.push(f(&xi1, &xi2));
            }
        }
        ProductField { factor, values }
    }

    pub fn zero(factor: Lattice) -> Self {
        let p = factor.points();
        ProductField { factor, values: vec![C64::new(0.0, 0.0); p * p] }
    }

    pub fn factor_lattice(&self) -> &Lattice {
        &self.factor
    }

    /// Samples per factor, `N^n`.
    pub fn points_per_factor(&self) -> usize {
        self.factor.points()
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [C64] {
        &mut self.values
    }

    pub fn get(&self, i1: usize, i2: usize) -> C64 {
        self.values[i1 * self.factor.points() + i2]
    }

    pub fn set(&mut self, i1: usize, i2: usize, v: C64) {
        let p = self.factor.points();
        self.values[i1 * p + i2] = v;
    }

    /// Value at an on-grid point, or `None` if either argument misses the
    /// grid by more than a rounding tolerance.
    pub fn lookup(&self, xi1: &[f64], xi2: &[f64]) -> Option<C64> {
        let slot = |xi: &[f64]| -> Option<usize> {
            let step = self.factor.freq_step();
            let mut k = Vec::with_capacity(xi.len());
            for &v in xi {
                let ki = libm::round(v / step);
                if (v - ki * step).abs() > 1e-9 * step.max(1.0) {
                    return None;
                }
                k.push(ki as i64);
            }
            self.factor.freq_slot(&k)
        };
        Some(self.get(slot(xi1)?, slot(xi2)?))
    }

    pub fn swap_factors(&self) -> Self {
        let p = self.factor.points();
        let mut out = self.clone();
        for i1 in 0..p {
            for i2 in 0..p {
                out.values[i1 * p + i2] = self.values[i2 * p + i1];
            }
        }
        out
    }

    /// Multiplies pointwise by a real window of the two frequency vectors.
    pub fn scale_by_window(&mut self, w: impl Fn(&[f64], &[f64]) -> f64) {
        let p = self.factor.points();
        for i1 in 0..p {
            let xi1 = self.factor.frequency(i1);
            for i2 in 0..p {
                let xi2 = self.factor.frequency(i2);
                self.values[i1 * p + i2] *= w(&xi1, &xi2);
            }
        }
    }

    pub fn add(&self, other: &ProductField) -> Result<Self> {
        if self.factor != other.factor {
            return Err(Error::LatticeMismatch);
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(ProductField { factor: self.factor, values })
    }

    pub fn sub(&self, other: &ProductField) -> Result<Self> {
        if self.factor != other.factor {
            return Err(Error::LatticeMismatch);
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        Ok(ProductField { factor: self.factor, values })
    }

    pub fn scale(&self, c: C64) -> Self {
        ProductField { factor: self.factor, values: self.values.iter().map(|v| v * c).collect() }
    }

    /// Adjoint change of variables on the grid: `which = 1` maps the value
    /// at `(k1, k2)` to the value of the source at `(-k1-k2, k2)`; `which =
    /// 2` to `(k1, -k1-k2)`. Errors when the sheared index leaves the
    /// frequency window.
    pub fn shear(&self, which: u8, lat: &Lattice) -> Result<Self> {
        if &self.factor != lat {
            return Err(Error::LatticeMismatch);
        }
        let p = self.factor.points();
        let mut out = ProductField::zero(self.factor);
        for i1 in 0..p {
            let k1 = self.factor.freq_index(i1);
            for i2 in 0..p {
                let k2 = self.factor.freq_index(i2);
                let folded: Vec<i64> = k1.iter().zip(&k2).map(|(a, b)| -a - b).collect();
                let src = if which == 1 {
                    let s1 = self.factor.freq_slot(&folded).ok_or(Error::OffGridShear)?;
                    self.get(s1, i2)
                } else {
                    let s2 = self.factor.freq_slot(&folded).ok_or(Error::OffGridShear)?;
                    self.get(i1, s2)
                };
                out.set(i1, i2, src);
            }
        }
        Ok(out)
    }

    /// A smooth random symbol: independent complex Gaussian coefficients on
    /// the dual grid inside `|y_1|, |y_2| <= radius`, transformed back to
    /// the frequency grid and normalized to peak modulus 1.
    pub fn random_bandlimited(factor: Lattice, seed: u64, radius: f64) -> Self {
        let grid = grid_lattice(&factor);
        let p = grid.points();
        let mut rng = SeededRng::new(seed);
        let mut coeffs = Vec::with_capacity(p * p);
        for i1 in 0..p {
            let y1 = grid.frequency(i1);
            let r1 = libm::sqrt(y1.iter().map(|v| v * v).sum());
            for i2 in 0..p {
                let y2 = grid.frequency(i2);
                let r2 = libm::sqrt(y2.iter().map(|v| v * v).sum());
                let g = rng.complex_gaussian();
                coeffs.push(if r1 <= radius && r2 <= radius { g } else { C64::new(0.0, 0.0) });
            }
        }
        // coefficients live on the dual grid; bring them to the xi domain
        let mut pf = ProductField { factor, values: coeffs };
        pf = pf.inverse_along(1);
        pf = pf.inverse_along(2);
        let peak = pf.values.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
        if peak > 0.0 {
            pf = pf.scale(C64::new(1.0 / peak, 0.0));
        }
        pf
    }

    /// Applies a `Field -> Field` operation to every slice along one factor.
    fn map_slices(&self, which: u8, op: impl Fn(&Field) -> Field) -> Self {
        let grid = grid_lattice(&self.factor);
        let p = grid.points();
        let mut out = self.clone();
        for other in 0..p {
            let mut slice = Vec::with_capacity(p);
            for me in 0..p {
                let (i1, i2) = if which == 1 { (me, other) } else { (other, me) };
                slice.push(self.get(i1, i2));
            }
            let f = Field::new(grid, slice).expect("slice length matches grid");
            let g = op(&f);
            for me in 0..p {
                let (i1, i2) = if which == 1 { (me, other) } else { (other, me) };
                out.set(i1, i2, g.values()[me]);
            }
        }
        out
    }

    /// Treats stored values along one factor as centered dual-grid
    /// coefficients and replaces them by the inverse transform samples.
    fn inverse_along(&self, which: u8) -> Self {
        let grid = grid_lattice(&self.factor);
        let p = grid.points();
        let mut out = self.clone();
        for other in 0..p {
            let mut slice = Vec::with_capacity(p);
            for me in 0..p {
                let (i1, i2) = if which == 1 { (me, other) } else { (other, me) };
                slice.push(self.get(i1, i2));
            }
            let spec = crate::lattice::Spectrum::new(grid, slice).expect("slice length matches grid");
            let g = spec.inverse();
            for me in 0..p {
                let (i1, i2) = if which == 1 { (me, other) } else { (other, me) };
                out.set(i1, i2, g.values()[me]);
            }
        }
        out
    }

    /// Applies a Fourier multiplier in the dual variable of one factor.
    pub fn multiplier_along_factor(&self, which: u8, sym: impl Fn(&[f64]) -> C64) -> Self {
        let grid = grid_lattice(&self.factor);
        self.map_slices(which, |f| {
            let mut spec = f.transform();
            for (i, c) in spec.coeffs_mut().iter_mut().enumerate() {
                *c *= sym(&grid.frequency(i));
            }
            spec.inverse()
        })
    }

    /// `<D_{xi_i}>^s` applied along one factor.
    pub fn bessel_along_factor(&self, which: u8, s: f64) -> Self {
        self.multiplier_along_factor(which, move |y| {
            C64::new(libm::pow(1.0 + y.iter().map(|v| v * v).sum::<f64>(), s / 2.0), 0.0)
        })
    }

    /// Largest resolvable product Littlewood-Paley block index: the dual
    /// grid extends to `|y| = L/2`, so `psi_k` is resolvable while
    /// `2^{k-1} <= L/2`.
    pub fn resolvable_k_max(&self) -> Result<i32> {
        let extent = grid_lattice(&self.factor).freq_extent();
        let max = libm::floor(libm::log2(2.0 * extent)) as i32;
        if max < 0 {
            return Err(Error::InsufficientResolution { requested: 0, max });
        }
        Ok(max)
    }
}

/// `L^p` norm with the spatial quadrature weight `h^n`; `p = infinity` gives
/// the max modulus.
pub fn lp_norm(f: &Field, p: f64) -> Result<f64> {
    check_exponent(p)?;
    if p.is_infinite() {
        return Ok(f.values().iter().map(|c| c.norm()).fold(0.0, f64::max));
    }
    let w = f.lattice().space_weight();
    let sum: f64 = f.values().iter().map(|c| libm::pow(c.norm(), p)).sum();
    Ok(libm::pow(sum * w, 1.0 / p))
}

fn check_exponent(p: f64) -> Result<()> {
    if p.is_infinite() && p > 0.0 {
        return Ok(());
    }
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::InvalidExponent(p));
    }
    Ok(())
}

/// Sesquilinear inner product `h^n sum f conj(g)`.
pub fn inner(f: &Field, g: &Field) -> Result<C64> {
    if f.lattice() != g.lattice() {
        return Err(Error::LatticeMismatch);
    }
    let w = f.lattice().space_weight();
    Ok(f.values().iter().zip(g.values()).map(|(a, b)| a * b.conj()).sum::<C64>() * w)
}

/// Bilinear (unconjugated) pairing `h^n sum f g`.
pub fn pairing(f: &Field, g: &Field) -> Result<C64> {
    if f.lattice() != g.lattice() {
        return Err(Error::LatticeMismatch);
    }
    let w = f.lattice().space_weight();
    Ok(f.values().iter().zip(g.values()).map(|(a, b)| a * b).sum::<C64>() * w)
}

/// Sobolev norm `||<.>^s f^||_{L^2}` over the frequency grid.
pub fn sobolev_norm(f: &Field, s: f64) -> f64 {
    let spec = f.transform();
    let lat = f.lattice();
    let w = lat.freq_weight();
    let sum: f64 = spec
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let xi = lat.frequency(i);
            let js = libm::pow(1.0 + xi.iter().map(|v| v * v).sum::<f64>(), s);
            js * c.norm_sqr()
        })
        .sum();
    libm::sqrt(sum * w)
}

/// Which symbol-norm flavor a smoothness pair refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormFlavor {
    /// Plain product Sobolev norm (L^2 in both factors).
    Product,
    /// `W_1`: inner `L^2` in `xi_1`, outer `L^infty` in `xi_2`.
    Mixed1,
    /// `W_2`: inner `L^2` in `xi_2`, outer `L^infty` in `xi_1`.
    Mixed2,
    /// `B_1`: Besov refinement of `W_1`.
    Besov1,
    /// `B_2`: Besov refinement of `W_2`.
    Besov2,
}

/// Smoothness exponents plus the flavor they parametrize.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothnessParams {
    pub s1: f64,
    pub s2: f64,
    pub flavor: NormFlavor,
}

impl SmoothnessParams {
    pub fn new(s1: f64, s2: f64, flavor: NormFlavor) -> Self {
        SmoothnessParams { s1, s2, flavor }
    }
}

/// Iterated Lebesgue norm of a product field: exponent `p1` in `xi_1`, `p2`
/// in `xi_2`, with the `inner` factor integrated first. Quadrature weight
/// `(2 pi / L)^n` per factor sample.
pub fn mixed_lp(pf: &ProductField, p1: f64, p2: f64, inner_factor: u8) -> Result<f64> {
    check_exponent(p1)?;
    check_exponent(p2)?;
    if inner_factor != 1 && inner_factor != 2 {
        return Err(Error::AxisOutOfRange { axis: inner_factor as usize, dim: 2 });
    }
    let w = pf.factor_lattice().freq_weight();
    let p = pf.points_per_factor();
    let (p_in, p_out) = if inner_factor == 1 { (p1, p2) } else { (p2, p1) };

    let inner_norm = |outer: usize| -> f64 {
        let slice = (0..p).map(|me| {
            let (i1, i2) = if inner_factor == 1 { (me, outer) } else { (outer, me) };
            pf.get(i1, i2).norm()
        });
        if p_in.is_infinite() {
            slice.fold(0.0, f64::max)
        } else {
            libm::pow(slice.map(|v| libm::pow(v, p_in)).sum::<f64>() * w, 1.0 / p_in)
        }
    };

    let outer_vals = (0..p).map(inner_norm);
    Ok(if p_out.is_infinite() {
        outer_vals.fold(0.0, f64::max)
    } else {
        libm::pow(outer_vals.map(|v| libm::pow(v, p_out)).sum::<f64>() * w, 1.0 / p_out)
    })
}

/// Product Sobolev norm `||<y_1>^{s_1} <y_2>^{s_2} m^(y_1, y_2)||_{L^2}`
/// over the dual grids of both factors.
pub fn product_sobolev(pf: &ProductField, s1: f64, s2: f64) -> f64 {
    let grid = grid_lattice(pf.factor_lattice());
    let hat = pf.transform_along(1).transform_along(2);
    let p = grid.points();
    let wd = grid.freq_weight();
    let mut sum = 0.0;
    for i1 in 0..p {
        let y1 = grid.frequency(i1);
        let j1 = libm::pow(1.0 + y1.iter().map(|v| v * v).sum::<f64>(), s1);
        for i2 in 0..p {
            let y2 = grid.frequency(i2);
            let j2 = libm::pow(1.0 + y2.iter().map(|v| v * v).sum::<f64>(), s2);
            sum += j1 * j2 * hat.get(i1, i2).norm_sqr();
        }
    }
    libm::sqrt(sum * wd * wd)
}

impl ProductField {
    /// Forward transform of one factor's slices, coefficients stored in
    /// centered dual ordering.
    pub fn transform_along(&self, which: u8) -> Self {
        let grid = grid_lattice(&self.factor);
        let p = grid.points();
        let mut out = self.clone();
        for other in 0..p {
            let mut slice = Vec::with_capacity(p);
            for me in 0..p {
                let (i1, i2) = if which == 1 { (me, other) } else { (other, me) };
                slice.push(self.get(i1, i2));
            }
            let spec = Field::new(grid, slice).expect("slice length matches grid").transform();
            for me in 0..p {
                let (i1, i2) = if which == 1 { (me, other) } else { (other, me) };
                out.set(i1, i2, spec.coeffs()[me]);
            }
        }
        out
    }
}

/// Mixed Sobolev norm `W_i`: Bessel weights in both dual variables, then
/// inner `L^2` in `xi_i` and outer `L^infty` in the other factor.
pub fn mixed_sobolev(pf: &ProductField, s1: f64, s2: f64, i: u8) -> Result<f64> {
    if i != 1 && i != 2 {
        return Err(Error::AxisOutOfRange { axis: i as usize, dim: 2 });
    }
    let b = pf.bessel_along_factor(1, s1).bessel_along_factor(2, s2);
    let (p1, p2) = if i == 1 { (2.0, f64::INFINITY) } else { (f64::INFINITY, 2.0) };
    mixed_lp(&b, p1, p2, i)
}

/// Product Besov norm `B_i`: sup over resolvable blocks of
/// `2^{k1 s1 + k2 s2}` times the `(L^2_{xi_i}, L^infty)` mixed norm of the
/// block.
pub fn besov_product(pf: &ProductField, s1: f64, s2: f64, i: u8, w: &WindowFamily) -> Result<f64> {
    if i != 1 && i != 2 {
        return Err(Error::AxisOutOfRange { axis: i as usize, dim: 2 });
    }
    let kmax = pf.resolvable_k_max()?;
    let (p1, p2) = if i == 1 { (2.0, f64::INFINITY) } else { (f64::INFINITY, 2.0) };
    let mut best = 0.0f64;
    for k1 in 0..=kmax as u32 {
        for k2 in 0..=kmax as u32 {
            let block = product_lp_piece(pf, k1, k2, w)?;
            let val = libm::pow(2.0, k1 as f64 * s1 + k2 as f64 * s2) * mixed_lp(&block, p1, p2, i)?;
            if val > best {
                best = val;
            }
        }
    }
    Ok(best)
}

/// Dispatches on the flavor of a smoothness parameter set.
pub fn symbol_norm(pf: &ProductField, params: &SmoothnessParams, w: &WindowFamily) -> Result<f64> {
    match params.flavor {
        NormFlavor::Product => Ok(product_sobolev(pf, params.s1, params.s2)),
        NormFlavor::Mixed1 => mixed_sobolev(pf, params.s1, params.s2, 1),
        NormFlavor::Mixed2 => mixed_sobolev(pf, params.s1, params.s2, 2),
        NormFlavor::Besov1 => besov_product(pf, params.s1, params.s2, 1, w),
        NormFlavor::Besov2 => besov_product(pf, params.s1, params.s2, 2, w),
    }
}

/// Sup over dyadic levels of a symbol-norm flavor applied to the dyadic
/// pieces `m_j`.
pub fn sup_dyadic_norm(
    m: &BilinearSymbol,
    params: &SmoothnessParams,
    w: &WindowFamily,
    lat: &Lattice,
    jmin: i32,
    jmax: i32,
) -> Result<f64> {
    if jmin > jmax {
        return Err(Error::Precondition(alloc::string::String::from("empty dyadic level range")));
    }
    let mut best = 0.0f64;
    for j in jmin..=jmax {
        let piece = dyadic_piece(m, j, w, lat)?;
        let val = symbol_norm(&piece, params, w)?;
        if val > best {
            best = val;
        }
    }
    Ok(best)
}

/// BMO norm: max mean oscillation over lattice-aligned periodic dyadic
/// cubes with side `2^{-l} L`, `l = 0 .. log2 N`, anchored at every lattice
/// point.
pub fn bmo_norm(f: &Field) -> f64 {
    let lat = *f.lattice();
    let n = lat.dim();
    let size = lat.size();
    let levels = libm::log2(size as f64) as u32;
    let mut best = 0.0f64;
    for level in 0..=levels {
        let side = size >> level;
        if side == 0 {
            break;
        }
        let cube_pts = side.pow(n as u32);
        for anchor in 0..lat.points() {
            let a = lat.decode(anchor);
            let mut mean = C64::new(0.0, 0.0);
            let mut cube_indices = Vec::with_capacity(cube_pts);
            for off in 0..cube_pts {
                let mut idx = vec![0usize; n];
                let mut rem = off;
                for axis in (0..n).rev() {
                    idx[axis] = (a[axis] + rem % side) % size;
                    rem /= side;
                }
                let i = lat.encode(&idx);
                cube_indices.push(i);
                mean += f.values()[i];
            }
            mean /= cube_pts as f64;
            let osc: f64 =
                cube_indices.iter().map(|&i| (f.values()[i] - mean).norm()).sum::<f64>() / cube_pts as f64;
            if osc > best {
                best = osc;
            }
        }
    }
    best
}

/// Discrete Hardy space norm: `||sup_t |phi_t * f|||_{L^1}` over the dyadic
/// scale set, with `phi_t(x) = t^{-n} phi(x/t)` evaluated by trigonometric
/// interpolation of `phi`.
pub fn hardy1_norm(f: &Field, phi: &Field) -> Result<f64> {
    if f.lattice() != phi.lattice() {
        return Err(Error::LatticeMismatch);
    }
    let lat = *f.lattice();
    let n = lat.dim() as f64;
    let phi_spec = phi.transform();
    let dc = lat.freq_slot(&vec![0i64; lat.dim()]).expect("dc mode on grid");
    if phi_spec.coeffs()[dc].norm() < 1e-12 {
        return Err(Error::ZeroMeanAveragingFunction);
    }

    // trig-interpolated dilate, sampled back on the lattice
    let winv = libm::pow(lat.period(), -n);
    let dilate = |t: f64| -> Field {
        let mut out = Field::zero(lat);
        for ix in 0..lat.points() {
            let x = lat.centered_point(ix);
            let mut acc = C64::new(0.0, 0.0);
            for (iq, c) in phi_spec.coeffs().iter().enumerate() {
                let xi = lat.frequency(iq);
                let phase: f64 = x.iter().zip(&xi).map(|(a, b)| a / t * b).sum();
                acc += c * C64::new(libm::cos(phase), libm::sin(phase));
            }
            out.values_mut()[ix] = acc * winv * libm::pow(t, -n);
        }
        out
    };

    let mut maximal = Field::zero(lat);
    for t in dyadic_radii(&lat) {
        let conv = crate::calculus::convolve(&dilate(t), f)?;
        for (m, v) in maximal.values_mut().iter_mut().zip(conv.values()) {
            let a = v.norm();
            if a > m.re {
                *m = C64::new(a, 0.0);
            }
        }
    }
    lp_norm(&maximal, 1.0)
}

/// A point mass in the upper half space: lattice site, dyadic scale, weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CarlesonAtom {
    pub point: usize,
    pub scale: f64,
    pub mass: f64,
}

/// A discrete measure on `lattice x (0, infinity)`.
#[derive(Debug, Clone)]
pub struct CarlesonMeasure {
    pub lattice: Lattice,
    pub atoms: Vec<CarlesonAtom>,
}

impl CarlesonMeasure {
    pub fn new(lattice: Lattice, atoms: Vec<CarlesonAtom>) -> Result<Self> {
        if atoms.iter().any(|a| a.point >= lattice.points() || !(a.scale > 0.0) || a.mass < 0.0) {
            return Err(Error::Precondition(alloc::string::String::from(
                "atoms need on-lattice points, positive scales, nonnegative mass",
            )));
        }
        Ok(CarlesonMeasure { lattice, atoms })
    }
}

/// Carleson constant: max over dyadic cubes `Q` of
/// `mu(Q x (0, side(Q))) / |Q|`.
pub fn carleson_constant(mu: &CarlesonMeasure) -> f64 {
    let lat = mu.lattice;
    let n = lat.dim();
    let size = lat.size();
    let levels = libm::log2(size as f64) as u32;
    let mut best = 0.0f64;
    for level in 0..=levels {
        let side = size >> level;
        if side == 0 {
            break;
        }
        let side_len = side as f64 * lat.spacing();
        let volume = libm::pow(side_len, n as f64);
        for anchor in 0..lat.points() {
            let a = lat.decode(anchor);
            let mut mass = 0.0;
            for atom in &mu.atoms {
                if atom.scale >= side_len {
                    continue;
                }
                let p = lat.decode(atom.point);
                let inside = (0..n).all(|axis| (p[axis] + size - a[axis]) % size < side);
                if inside {
                    mass += atom.mass;
                }
            }
            if mass / volume > best {
                best = mass / volume;
            }
        }
    }
    best
}

/// Builds the Carleson measure `|psi(2^{-j} D) b(x)|^2 smoothed by zeta_j`,
/// one atom per lattice site and level, scale `2^{-j}`, following the
/// classical BMO recipe.
pub fn carleson_from_bmo(
    b: &Field,
    w: &WindowFamily,
    decay: f64,
    levels: &[i32],
) -> Result<CarlesonMeasure> {
    let lat = *b.lattice();
    let mut atoms = Vec::new();
    for &j in levels {
        let scale = libm::pow(2.0, -j as f64);
        let wj = *w;
        let filtered = crate::calculus::multiplier_apply(
            b,
            &crate::calculus::LinearSymbol::closed(move |xi: &[f64]| {
                let scaled: Vec<f64> = xi.iter().map(|v| v * libm::pow(2.0, -j as f64)).collect();
                C64::new(wj.big_psi(&scaled), 0.0)
            }),
        )?;
        let squared = filtered.map(|c| C64::new(c.norm_sqr(), 0.0));
        let kernel = crate::calculus::PeakKernelSpec::new(j, decay)?;
        let smoothed = crate::calculus::zeta_convolve(&squared, kernel)?;
        let wspace = lat.space_weight();
        for (i, v) in smoothed.values().iter().enumerate() {
            let mass = v.re.max(0.0) * wspace;
            if mass > 0.0 {
                atoms.push(CarlesonAtom { point: i, scale, mass });
            }
        }
    }
    CarlesonMeasure::new(lat, atoms)
}
