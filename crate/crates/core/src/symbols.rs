//! Bilinear symbols and the dyadic machinery around them: window families,
//! dyadic pieces, product Littlewood-Paley blocks, the cone partition of the
//! product frequency sphere, adjoint symbol transforms, and a catalog of
//! test symbols.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::norms::{grid_lattice, ProductField};
use crate::rng::SeededRng;
use crate::C64;

/// Taper profile used to build all windows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TaperProfile {
    /// Raised-cosine ramp between the knots.
    CosineTaper,
    /// Polynomial smoothstep; order 7 is C^3 at the knots.
    Smoothstep(u32),
}

impl Default for TaperProfile {
    fn default() -> Self {
        TaperProfile::Smoothstep(7)
    }
}

/// Smooth ramp `S(0) = 0`, `S(1) = 1`, flat at both ends.
fn ramp(profile: TaperProfile, t: f64) -> f64 {
    let t = t.clamp(0.0, 1.0);
    match profile {
        TaperProfile::CosineTaper => 0.5 * (1.0 - libm::cos(core::f64::consts::PI * t)),
        TaperProfile::Smoothstep(order) => match order {
            3 => t * t * (3.0 - 2.0 * t),
            5 => t * t * t * (10.0 + t * (-15.0 + 6.0 * t)),
            // degree-7 smoothstep
            _ => t * t * t * t * (35.0 + t * (-84.0 + t * (70.0 - 20.0 * t))),
        },
    }
}

/// The dyadic partition windows of the toolkit.
///
/// Built from one radial taper `theta` with `theta = 1` on `[0,1]` and
/// `theta = 0` on `[2, inf)`. Then `Psi(xi) = theta(|xi|) - theta(2|xi|)` is
/// supported in the annulus `1/2 <= |xi| <= 2` and telescopes to 1 away from
/// the origin, and `psi_0 = theta(|.|)`, `psi_k = Psi(. / 2^k)` give the
/// inhomogeneous family with `psi_0 + sum_{k>=1} psi_k = 1`.
#[derive(Debug, Clone, Copy)]
pub struct WindowFamily {
    profile: TaperProfile,
}

impl WindowFamily {
    pub fn new(profile: TaperProfile) -> Self {
        WindowFamily { profile }
    }

    pub fn default_family() -> Self {
        WindowFamily { profile: TaperProfile::default() }
    }

    /// Radial taper: 1 on `[0,1]`, 0 on `[2,inf)`.
    pub fn taper(&self, r: f64) -> f64 {
        if r <= 1.0 {
            1.0
        } else if r >= 2.0 {
            0.0
        } else {
            1.0 - ramp(self.profile, r - 1.0)
        }
    }

    /// Annular window `Psi` on a vector of any dimension.
    pub fn big_psi(&self, v: &[f64]) -> f64 {
        let r = norm(v);
        self.taper(r) - self.taper(2.0 * r)
    }

    pub fn big_psi_radial(&self, r: f64) -> f64 {
        self.taper(r) - self.taper(2.0 * r)
    }

    /// `psi_k`: `psi_0 = theta(|.|)`, `psi_k = Psi(. / 2^k)` for `k >= 1`.
    pub fn psi_k(&self, k: u32, v: &[f64]) -> f64 {
        self.psi_k_radial(k, norm(v))
    }

    pub fn psi_k_radial(&self, k: u32, r: f64) -> f64 {
        if k == 0 {
            self.taper(r)
        } else {
            self.big_psi_radial(r / libm::pow(2.0, k as f64))
        }
    }

    /// Low-pass cutoff (equal to 1 near the origin, supported in `|xi| <= 8`).
    pub fn lowpass(&self, v: &[f64]) -> f64 {
        self.taper(norm(v) / 4.0)
    }

    /// Wide annular cutoff: 1 on `1/8 <= |xi| <= 8`, supported away from 0.
    pub fn wide_annulus(&self, v: &[f64]) -> f64 {
        let r = norm(v);
        self.taper(r / 8.0) * (1.0 - self.taper(16.0 * r))
    }

    /// Compactly supported annular cutoff: 1 on `1/2 <= |xi| <= 2`,
    /// supported in `1/4 <= |xi| <= 4`.
    pub fn snug_annulus(&self, v: &[f64]) -> f64 {
        let r = norm(v);
        self.taper(r / 2.0) * (1.0 - self.taper(4.0 * r))
    }
}

fn norm(v: &[f64]) -> f64 {
    libm::sqrt(v.iter().map(|x| x * x).sum())
}

/// Shared closed-form evaluator of a bilinear symbol.
pub type BilinearEval = Arc<dyn Fn(&[f64], &[f64]) -> C64 + Send + Sync>;

enum SymbolKind {
    Closed(BilinearEval),
    Sampled(ProductField),
}

impl Clone for SymbolKind {
    fn clone(&self) -> Self {
        match self {
            SymbolKind::Closed(f) => SymbolKind::Closed(f.clone()),
            SymbolKind::Sampled(pf) => SymbolKind::Sampled(pf.clone()),
        }
    }
}

/// A bilinear Fourier multiplier symbol `m(xi1, xi2)`.
#[derive(Clone)]
pub struct BilinearSymbol {
    kind: SymbolKind,
    /// Optional separable form `sum_r a_r(xi1) b_r(xi2)`.
    separable: Option<Vec<(BilinearEval1, BilinearEval1)>>,
    pub vanishes_at_xi2_zero: bool,
    pub vanishes_on_antidiagonal: bool,
    pub homogeneous: bool,
}

pub type BilinearEval1 = Arc<dyn Fn(&[f64]) -> C64 + Send + Sync>;

impl BilinearSymbol {
    pub fn closed(f: impl Fn(&[f64], &[f64]) -> C64 + Send + Sync + 'static) -> Self {
        BilinearSymbol {
            kind: SymbolKind::Closed(Arc::new(f)),
            separable: None,
            vanishes_at_xi2_zero: false,
            vanishes_on_antidiagonal: false,
            homogeneous: false,
        }
    }

    pub fn sampled(pf: ProductField) -> Self {
        BilinearSymbol {
            kind: SymbolKind::Sampled(pf),
            separable: None,
            vanishes_at_xi2_zero: false,
            vanishes_on_antidiagonal: false,
            homogeneous: false,
        }
    }

    pub fn with_separable(mut self, factors: Vec<(BilinearEval1, BilinearEval1)>) -> Self {
        self.separable = Some(factors);
        self
    }

    pub fn is_closed(&self) -> bool {
        matches!(self.kind, SymbolKind::Closed(_))
    }

    pub fn separable_factors(&self) -> Option<&[(BilinearEval1, BilinearEval1)]> {
        self.separable.as_deref()
    }

    /// Closed-form evaluation; for sampled symbols the point must lie on the
    /// grid of the backing table.
    pub fn eval(&self, xi1: &[f64], xi2: &[f64]) -> C64 {
        match &self.kind {
            SymbolKind::Closed(f) => f(xi1, xi2),
            SymbolKind::Sampled(pf) => pf.lookup(xi1, xi2).unwrap_or(C64::new(f64::NAN, f64::NAN)),
        }
    }

    /// Samples the symbol on the product frequency grid of `lat`.
    pub fn sample(&self, lat: &Lattice) -> Result<ProductField> {
        match &self.kind {
            SymbolKind::Closed(f) => Ok(ProductField::from_fn(*lat, |a, b| f(a, b))),
            SymbolKind::Sampled(pf) => {
                if pf.factor_lattice() != lat {
                    return Err(Error::LatticeMismatch);
                }
                Ok(pf.clone())
            }
        }
    }

    /// Argument-swapped symbol `m(xi2, xi1)`.
    pub fn swap(&self) -> Result<BilinearSymbol> {
        let mut out = match &self.kind {
            SymbolKind::Closed(f) => {
                let f = f.clone();
                BilinearSymbol::closed(move |a: &[f64], b: &[f64]| f(b, a))
            }
            SymbolKind::Sampled(pf) => BilinearSymbol::sampled(pf.swap_factors()),
        };
        out.homogeneous = self.homogeneous;
        Ok(out)
    }
}

/// The dyadic piece `m_j(xi1, xi2) = m(2^j xi1, 2^j xi2) Psi(xi1, xi2)`
/// sampled on the product frequency grid of `lat`.
pub fn dyadic_piece(m: &BilinearSymbol, j: i32, w: &WindowFamily, lat: &Lattice) -> Result<ProductField> {
    let scale = libm::pow(2.0, j as f64);
    match &m.kind {
        SymbolKind::Closed(f) => {
            let f = f.clone();
            Ok(ProductField::from_fn(*lat, |xi1, xi2| {
                let joint: Vec<f64> = xi1.iter().chain(xi2.iter()).copied().collect();
                let psi = w.big_psi(&joint);
                if psi == 0.0 {
                    return C64::new(0.0, 0.0);
                }
                let a: Vec<f64> = xi1.iter().map(|v| v * scale).collect();
                let b: Vec<f64> = xi2.iter().map(|v| v * scale).collect();
                f(&a, &b) * psi
            }))
        }
        SymbolKind::Sampled(pf) => {
            if j != 0 {
                return Err(Error::UnsupportedLevelForSampledSymbol(j));
            }
            if pf.factor_lattice() != lat {
                return Err(Error::LatticeMismatch);
            }
            let mut out = pf.clone();
            out.scale_by_window(|xi1, xi2| {
                let joint: Vec<f64> = xi1.iter().chain(xi2.iter()).copied().collect();
                w.big_psi(&joint)
            });
            Ok(out)
        }
    }
}

/// The product Littlewood-Paley block `Delta_k m = psi_{k1}(D_{xi1})
/// psi_{k2}(D_{xi2}) m`, multipliers applied slice-wise in the dual
/// variables.
pub fn product_lp_piece(m: &ProductField, k1: u32, k2: u32, w: &WindowFamily) -> Result<ProductField> {
    let kmax = m.resolvable_k_max()?;
    if k1 as i32 > kmax || k2 as i32 > kmax {
        return Err(Error::BlockOutOfRange { k: k1.max(k2) as i32, max: kmax });
    }
    let wa = *w;
    let a = m.multiplier_along_factor(1, move |y| C64::new(wa.psi_k(k1, y), 0.0));
    Ok(a.multiplier_along_factor(2, move |y| C64::new(wa.psi_k(k2, y), 0.0)))
}

/// Degree-0 homogeneous partition of unity subordinate to the three cones
/// over
/// `V_0 = {|xi1| > c, |xi2| > c}`, `V_1 = {|xi1| > c, |xi1+xi2| > c}`,
/// `V_2 = {|xi2| > c, |xi1+xi2| > c}` on the product-space unit sphere.
#[derive(Debug, Clone, Copy)]
pub struct ConePartition {
    aperture: f64,
    profile: TaperProfile,
}

impl ConePartition {
    /// `0 < c < 1/sqrt(2)`; errors if the three sets fail to cover the
    /// sphere at this aperture (which happens for `c >= 1/sqrt(5)`).
    pub fn new(aperture: f64) -> Result<Self> {
        if !(aperture > 0.0 && aperture < core::f64::consts::FRAC_1_SQRT_2) {
            return Err(Error::ApertureTooLarge(aperture));
        }
        let cp = ConePartition { aperture, profile: TaperProfile::default() };
        // audit the cover on a deterministic sphere sample
        let mut rng = SeededRng::new(0x636f6e65);
        for i in 0..2048usize {
            let p = if i < 720 {
                // regular angular sweep covers the n = 1 circle densely
                let th = 2.0 * core::f64::consts::PI * i as f64 / 720.0;
                alloc::vec![libm::cos(th), libm::sin(th)]
            } else {
                let mut v = alloc::vec![rng.symmetric(), rng.symmetric(), rng.symmetric(), rng.symmetric()];
                let n = norm(&v);
                if n < 1e-3 {
                    continue;
                }
                v.iter_mut().for_each(|x| *x /= n);
                v
            };
            let half = p.len() / 2;
            if cp.bump_sum(&p[..half], &p[half..]) <= 1e-9 {
                return Err(Error::ApertureTooLarge(aperture));
            }
        }
        Ok(cp)
    }

    pub fn aperture(&self) -> f64 {
        self.aperture
    }

    fn slack(&self, i: usize, xi1: &[f64], xi2: &[f64]) -> f64 {
        let n1 = norm(xi1);
        let n2 = norm(xi2);
        let nsum = libm::sqrt(xi1.iter().zip(xi2).map(|(a, b)| (a + b) * (a + b)).sum());
        let c = self.aperture;
        match i {
            0 => n1.min(n2) - c,
            1 => n1.min(nsum) - c,
            _ => n2.min(nsum) - c,
        }
    }

    fn bump(&self, i: usize, xi1: &[f64], xi2: &[f64]) -> f64 {
        // smooth ramp of the defining inequalities' slack, width c/2
        ramp(self.profile, self.slack(i, xi1, xi2) / (self.aperture / 2.0))
    }

    fn bump_sum(&self, xi1: &[f64], xi2: &[f64]) -> f64 {
        (0..3).map(|i| self.bump(i, xi1, xi2)).sum()
    }

    /// `Phi_i(xi1, xi2)`; 0 at the origin by convention.
    pub fn phi(&self, i: usize, xi1: &[f64], xi2: &[f64]) -> f64 {
        debug_assert!(i < 3);
        let r = libm::sqrt(xi1.iter().chain(xi2.iter()).map(|x| x * x).sum());
        if r == 0.0 {
            return 0.0;
        }
        let a: Vec<f64> = xi1.iter().map(|v| v / r).collect();
        let b: Vec<f64> = xi2.iter().map(|v| v / r).collect();
        self.bump(i, &a, &b) / self.bump_sum(&a, &b)
    }
}

/// Adjoint symbol transforms `m^{*1}(xi1, xi2) = m(-xi1-xi2, xi2)` and
/// `m^{*2}(xi1, xi2) = m(xi1, -xi1-xi2)`.
pub fn dual_transform(m: &BilinearSymbol, which: u8, lat_for_sampled: Option<&Lattice>) -> Result<BilinearSymbol> {
    let mut out = match &m.kind {
        SymbolKind::Closed(f) => {
            let f = f.clone();
            if which == 1 {
                BilinearSymbol::closed(move |xi1: &[f64], xi2: &[f64]| {
                    let a: Vec<f64> = xi1.iter().zip(xi2).map(|(x, y)| -x - y).collect();
                    f(&a, xi2)
                })
            } else {
                BilinearSymbol::closed(move |xi1: &[f64], xi2: &[f64]| {
                    let b: Vec<f64> = xi1.iter().zip(xi2).map(|(x, y)| -x - y).collect();
                    f(xi1, &b)
                })
            }
        }
        SymbolKind::Sampled(pf) => {
            let lat = lat_for_sampled.copied().unwrap_or(*pf.factor_lattice());
            BilinearSymbol::sampled(pf.shear(which, &lat)?)
        }
    };
    // vanishing metadata moves with the change of variables:
    // m^{*2}(xi1, 0) = m(xi1, -xi1) and m^{*2}(xi1, -xi1) = m(xi1, 0).
    if which == 2 {
        out.vanishes_at_xi2_zero = m.vanishes_on_antidiagonal;
        out.vanishes_on_antidiagonal = m.vanishes_at_xi2_zero;
    } else {
        // m^{*1}(xi1, 0) = m(-xi1, 0)
        out.vanishes_at_xi2_zero = m.vanishes_at_xi2_zero;
    }
    out.homogeneous = m.homogeneous;
    Ok(out)
}

/// Arguments for a symbol catalog entry: numeric `key=value` pairs plus bare
/// word arguments (used by `tensor`).
#[derive(Debug, Clone, Default)]
pub struct SymbolParams {
    pub nums: Vec<(String, f64)>,
    pub words: Vec<String>,
}

impl SymbolParams {
    pub fn num(&self, key: &str, default: f64) -> f64 {
        self.nums.iter().rev().find(|(k, _)| k == key).map(|(_, v)| *v).unwrap_or(default)
    }
}

fn sq_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum()
}

fn tensor_profile(name: &str) -> Result<BilinearEval1> {
    match name {
        "gauss" => Ok(Arc::new(|xi: &[f64]| C64::new(libm::exp(-sq_norm(xi)), 0.0))),
        "lorentz" => Ok(Arc::new(|xi: &[f64]| C64::new(1.0 / (1.0 + sq_norm(xi)), 0.0))),
        "wave" => Ok(Arc::new(|xi: &[f64]| {
            let r = libm::sqrt(sq_norm(xi));
            C64::new(libm::cos(r), libm::sin(r)) * libm::exp(-0.25 * sq_norm(xi))
        })),
        other => Err(Error::UnknownSymbol(String::from(other))),
    }
}

/// Test-symbol catalog.
///
/// Known names: `constant-one`, `coifman-meyer(alpha)`,
/// `homogeneous-angular(ell)`, `vanish-at-xi2-zero(alpha)`,
/// `vanish-on-antidiagonal(alpha)`, `random-bandlimited(seed, radius)`,
/// `tensor(a, b)` with 1D profiles `gauss`, `lorentz`, `wave`.
pub fn symbol_library(name: &str, params: &SymbolParams, lat: &Lattice) -> Result<BilinearSymbol> {
    match name {
        "constant-one" => {
            let one: BilinearEval1 = Arc::new(|_: &[f64]| C64::new(1.0, 0.0));
            let mut m = BilinearSymbol::closed(|_, _| C64::new(1.0, 0.0))
                .with_separable(alloc::vec![(one.clone(), one)]);
            m.homogeneous = true;
            Ok(m)
        }
        "coifman-meyer" => {
            let alpha = params.num("alpha", 1.0);
            Ok(BilinearSymbol::closed(move |xi1: &[f64], xi2: &[f64]| {
                C64::new(libm::pow(1.0 + sq_norm(xi1) + sq_norm(xi2), -alpha / 2.0), 0.0)
            }))
        }
        "homogeneous-angular" => {
            let ell = params.num("ell", 1.0);
            let mut m = BilinearSymbol::closed(move |xi1: &[f64], xi2: &[f64]| {
                let th = libm::atan2(xi2[0], xi1[0]);
                C64::new(libm::cos(ell * th), libm::sin(ell * th))
            });
            m.homogeneous = true;
            Ok(m)
        }
        "vanish-at-xi2-zero" => {
            let alpha = params.num("alpha", 1.0);
            let mut m = BilinearSymbol::closed(move |xi1: &[f64], xi2: &[f64]| {
                let factor = xi2[0] / libm::sqrt(1.0 + sq_norm(xi2));
                C64::new(factor * libm::pow(1.0 + sq_norm(xi1) + sq_norm(xi2), -alpha / 2.0), 0.0)
            });
            m.vanishes_at_xi2_zero = true;
            Ok(m)
        }
        "vanish-on-antidiagonal" => {
            let alpha = params.num("alpha", 1.0);
            let mut m = BilinearSymbol::closed(move |xi1: &[f64], xi2: &[f64]| {
                let s0 = xi1[0] + xi2[0];
                let ssq: f64 = xi1.iter().zip(xi2).map(|(a, b)| (a + b) * (a + b)).sum();
                let factor = s0 / libm::sqrt(1.0 + ssq);
                C64::new(factor * libm::pow(1.0 + sq_norm(xi1) + sq_norm(xi2), -alpha / 2.0), 0.0)
            });
            m.vanishes_on_antidiagonal = true;
            Ok(m)
        }
        "random-bandlimited" => {
            let seed = params.num("seed", 7.0) as u64;
            let radius = params.num("radius", grid_lattice(lat).freq_extent() / 2.0);
            Ok(BilinearSymbol::sampled(ProductField::random_bandlimited(*lat, seed, radius)))
        }
        "tensor" => {
            if params.words.len() != 2 {
                return Err(Error::Precondition(String::from("tensor needs two profile names")));
            }
            let a = tensor_profile(&params.words[0])?;
            let b = tensor_profile(&params.words[1])?;
            let (ac, bc) = (a.clone(), b.clone());
            Ok(BilinearSymbol::closed(move |xi1: &[f64], xi2: &[f64]| ac(xi1) * bc(xi2))
                .with_separable(alloc::vec![(a, b)]))
        }
        other => Err(Error::UnknownSymbol(String::from(other))),
    }
}
