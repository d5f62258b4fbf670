//! Linear operators on fields: Bessel potentials, Fourier multipliers,
//! pseudo-differential operators, Riesz transforms, maximal functions,
//! peaked-kernel smoothing, and nontangential maximal functions.

use alloc::boxed::Box;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lattice::{Field, Lattice};
use crate::C64;

/// A linear Fourier multiplier symbol: closed-form evaluator of the
/// frequency vector, or a table sampled over a lattice's frequency grid.
#[derive(Clone)]
pub enum LinearSymbol {
    Closed(Arc<dyn Fn(&[f64]) -> C64 + Send + Sync>),
    Sampled(Vec<C64>),
}

impl LinearSymbol {
    pub fn closed(f: impl Fn(&[f64]) -> C64 + Send + Sync + 'static) -> Self {
        LinearSymbol::Closed(Arc::new(f))
    }

    /// Values over the centered frequency grid of `lat`.
    pub fn eval_on_grid(&self, lat: &Lattice) -> Result<Vec<C64>> {
        let vals: Vec<C64> = match self {
            LinearSymbol::Closed(f) => (0..lat.points()).map(|i| f(&lat.frequency(i))).collect(),
            LinearSymbol::Sampled(v) => {
                if v.len() != lat.points() {
                    return Err(Error::LatticeMismatch);
                }
                v.clone()
            }
        };
        if vals.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::Precondition(alloc::string::String::from(
                "symbol undefined at a grid point",
            )));
        }
        Ok(vals)
    }
}

/// `<D>^s f`: pointwise frequency scaling by `(1 + |xi|^2)^{s/2}`.
pub fn bessel_apply(f: &Field, s: f64) -> Field {
    let mut spec = f.transform();
    let lat = *f.lattice();
    for (i, c) in spec.coeffs_mut().iter_mut().enumerate() {
        let xi = lat.frequency(i);
        let w = libm::pow(1.0 + xi.iter().map(|v| v * v).sum::<f64>(), s / 2.0);
        *c *= w;
    }
    spec.inverse()
}

/// Applies the linear Fourier multiplier operator `sigma(D)`.
pub fn multiplier_apply(f: &Field, sigma: &LinearSymbol) -> Result<Field> {
    let vals = sigma.eval_on_grid(f.lattice())?;
    let mut spec = f.transform();
    for (c, s) in spec.coeffs_mut().iter_mut().zip(&vals) {
        *c *= s;
    }
    Ok(spec.inverse())
}

/// Riesz transform along `axis` (1-based): multiplier `-i xi_k / |xi|`,
/// with the zero mode mapped to 0. Modes with any component at the
/// unpaired Nyquist index `-N/2` are also mapped to 0: they have no
/// conjugate partner on the grid, and an imaginary multiplier there would
/// break realness of real inputs.
pub fn riesz_transform(f: &Field, axis: usize) -> Result<Field> {
    let lat = *f.lattice();
    let n = lat.dim();
    if axis == 0 || axis > n {
        return Err(Error::AxisOutOfRange { axis, dim: n });
    }
    let half = lat.size() as i64 / 2;
    let vals: Vec<C64> = (0..lat.points())
        .map(|i| {
            let k = lat.freq_index(i);
            if k.iter().any(|&ki| ki == -half) {
                return C64::new(0.0, 0.0);
            }
            let xi = lat.frequency(i);
            let norm = libm::sqrt(xi.iter().map(|v| v * v).sum::<f64>());
            if norm == 0.0 {
                C64::new(0.0, 0.0)
            } else {
                C64::new(0.0, -xi[axis - 1] / norm)
            }
        })
        .collect();
    multiplier_apply(f, &LinearSymbol::Sampled(vals))
}

/// The Riesz symbol `-i xi_k / |xi|` (0 at the origin), axis 1-based.
pub fn riesz_symbol(axis: usize) -> LinearSymbol {
    LinearSymbol::closed(move |xi: &[f64]| {
        let norm = libm::sqrt(xi.iter().map(|v| v * v).sum::<f64>());
        if norm == 0.0 {
            C64::new(0.0, 0.0)
        } else {
            C64::new(0.0, -xi[axis - 1] / norm)
        }
    })
}

/// Linear pseudo-differential operator `sigma(X, D)`:
/// `out(x) = (2 pi)^{-n} (2 pi / L)^n sum_xi e^{i x xi} sigma(x, xi) f^(xi)`.
pub fn pseudodiff_apply(f: &Field, sigma: impl Fn(&[f64], &[f64]) -> C64) -> Field {
    let lat = *f.lattice();
    let spec = f.transform();
    let weight = libm::pow(lat.period(), -(lat.dim() as f64));
    let mut out = Field::zero(lat);
    for ix in 0..lat.points() {
        let x = lat.point(ix);
        let mut acc = C64::new(0.0, 0.0);
        for (iq, c) in spec.coeffs().iter().enumerate() {
            let xi = lat.frequency(iq);
            let phase: f64 = x.iter().zip(&xi).map(|(a, b)| a * b).sum();
            acc += C64::new(libm::cos(phase), libm::sin(phase)) * sigma(&x, &xi) * c;
        }
        out.values_mut()[ix] = acc * weight;
    }
    out
}

/// Dyadic radii `{h, 2h, 4h, ...}` up to `L/2`, shared by the maximal
/// function and the Hardy-norm scale set.
pub fn dyadic_radii(lat: &Lattice) -> Vec<f64> {
    let mut out = Vec::new();
    let mut r = lat.spacing();
    while r <= lat.period() / 2.0 + 1e-12 {
        out.push(r);
        r *= 2.0;
    }
    out
}

/// Hardy-Littlewood maximal function over the dyadic radius set, with
/// periodic distance: `Mf(x) = max_r r^{-n} sum_{|x-y|<r} |f(y)| h^n`.
pub fn hl_maximal(f: &Field) -> Field {
    let lat = *f.lattice();
    let n = lat.dim() as f64;
    let abs: Vec<f64> = f.values().iter().map(|c| c.norm()).collect();
    let radii = dyadic_radii(&lat);

    // per-radius lists of lattice offsets with periodic |offset| < r
    let offsets: Vec<Vec<usize>> = radii
        .iter()
        .map(|&r| (0..lat.points()).filter(|&d| lat.periodic_distance(d, 0) < r).collect())
        .collect();

    let size = lat.size();
    let mut out = Field::zero(lat);
    for ix in 0..lat.points() {
        let xi = lat.decode(ix);
        let mut best = 0.0f64;
        for (r, offs) in radii.iter().zip(&offsets) {
            let mut sum = 0.0;
            for &d in offs {
                let di = lat.decode(d);
                let y: Vec<usize> = xi.iter().zip(&di).map(|(&a, &b)| (a + b) % size).collect();
                sum += abs[lat.encode(&y)];
            }
            let avg = sum * lat.space_weight() / libm::pow(*r, n);
            if avg > best {
                best = avg;
            }
        }
        out.values_mut()[ix] = C64::new(best, 0.0);
    }
    out
}

/// The peaked kernel `zeta_j(x) = 2^{jn} (1 + 2^j |x|)^{-2s}`.
#[derive(Debug, Clone, Copy)]
pub struct PeakKernelSpec {
    pub level: i32,
    pub decay: f64,
}

impl PeakKernelSpec {
    /// `decay >= 0`; `|level|` must stay within `log2(N)/2` of the target
    /// lattice or sampling the kernel aliases.
    pub fn new(level: i32, decay: f64) -> Result<Self> {
        if !(decay >= 0.0) {
            return Err(Error::Precondition(alloc::string::String::from("decay exponent must be >= 0")));
        }
        Ok(PeakKernelSpec { level, decay })
    }

    fn check_resolvable(&self, lat: &Lattice) -> Result<()> {
        let max_abs = (libm::log2(lat.size() as f64) / 2.0) as i32;
        if self.level.abs() > max_abs {
            return Err(Error::UnresolvableScale { level: self.level, max_abs });
        }
        Ok(())
    }

    /// Kernel sampled on the lattice (periodic distance to the origin).
    pub fn sample(&self, lat: &Lattice) -> Result<Field> {
        self.check_resolvable(lat)?;
        let scale = libm::pow(2.0, self.level as f64);
        let n = lat.dim() as f64;
        let s = self.decay;
        Ok(Field::from_fn(*lat, |x| {
            let r = libm::sqrt(
                x.iter()
                    .map(|&v| {
                        let c = if v >= lat.period() / 2.0 { v - lat.period() } else { v };
                        c * c
                    })
                    .sum::<f64>(),
            );
            C64::new(libm::pow(scale, n) * libm::pow(1.0 + scale * r, -2.0 * s), 0.0)
        }))
    }
}

/// Periodic convolution `zeta_j * f` computed in the frequency domain.
pub fn zeta_convolve(f: &Field, spec: PeakKernelSpec) -> Result<Field> {
    let kernel = spec.sample(f.lattice())?;
    convolve(&kernel, f)
}

/// Periodic convolution `(g * f)(x) = h^n sum_y g(x - y) f(y)`.
pub fn convolve(g: &Field, f: &Field) -> Result<Field> {
    if g.lattice() != f.lattice() {
        return Err(Error::LatticeMismatch);
    }
    let sg = g.transform();
    let mut sf = f.transform();
    for (c, k) in sf.coeffs_mut().iter_mut().zip(sg.coeffs()) {
        *c *= k;
    }
    Ok(sf.inverse())
}

/// A function `F(x, t)` sampled at a strictly decreasing list of dyadic
/// scales `t = 2^{-j}`, one field per scale.
pub struct TimeScaleField {
    lattice: Lattice,
    scales: Vec<f64>,
    slices: Vec<Field>,
}

impl TimeScaleField {
    pub fn new(lattice: Lattice, scales: Vec<f64>, slices: Vec<Field>) -> Result<Self> {
        if scales.is_empty() || scales.len() != slices.len() {
            return Err(Error::Precondition(alloc::string::String::from(
                "need one slice per scale, at least one scale",
            )));
        }
        if scales.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::Precondition(alloc::string::String::from(
                "scales must be strictly decreasing",
            )));
        }
        if slices.iter().any(|f| f.lattice() != &lattice) {
            return Err(Error::LatticeMismatch);
        }
        Ok(TimeScaleField { lattice, scales, slices })
    }

    pub fn scales(&self) -> &[f64] {
        &self.scales
    }

    pub fn slices(&self) -> &[Field] {
        &self.slices
    }

    /// Nontangential maximal function `F^*(x) = sup_{|x-y| < t} |F(y, t)|`
    /// over the listed scales, periodic distance.
    pub fn nontangential_max(&self) -> Field {
        let lat = self.lattice;
        let mut out = Field::zero(lat);
        for (t, slice) in self.scales.iter().zip(&self.slices) {
            for ix in 0..lat.points() {
                for iy in 0..lat.points() {
                    if lat.periodic_distance(ix, iy) < *t {
                        let v = slice.values()[iy].norm();
                        if v > out.values()[ix].re {
                            out.values_mut()[ix] = C64::new(v, 0.0);
                        }
                    }
                }
            }
        }
        out
    }
}

/// Boxed x-dependent symbol used by callers that store pseudo-differential
/// symbols.
pub type XiSymbol = Box<dyn Fn(&[f64], &[f64]) -> C64 + Send + Sync>;
