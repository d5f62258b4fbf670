//! Constructive decompositions: the vanishing-moment dyadic decomposition
//! and the Riesz-transform split of a BMO function, plus the
//! homogeneous-multiplication Sobolev check.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::calculus::riesz_transform;
use crate::error::{Error, Result};
use crate::lattice::{Field, Spectrum};
use crate::norms::{lp_norm, sobolev_norm};
use crate::symbols::{TaperProfile, WindowFamily};
use crate::C64;

/// Dyadic pieces `g_k` with vanishing transform mass summing to the source.
#[derive(Debug, Clone)]
pub struct VanishingDecomposition {
    pub pieces: Vec<Field>,
    pub source: Field,
    pub smoothness: f64,
    /// `||g_k||_{L^2} 2^{k s}` per level, the decay report.
    pub decay: Vec<f64>,
}

/// Annular bump profile on `{1 <= r <= 2}`, before normalization.
fn theta_profile(r: f64) -> f64 {
    let up = ((r - 1.0) / 0.5).clamp(0.0, 1.0);
    let down = ((r - 1.5) / 0.5).clamp(0.0, 1.0);
    smooth(up) * (1.0 - smooth(down))
}

fn smooth(t: f64) -> f64 {
    // degree-7 smoothstep, matching the default window family
    t * t * t * t * (35.0 + t * (-84.0 + t * (70.0 - 20.0 * t)))
}

/// The vanishing-moment decomposition: the input field's own domain plays
/// the frequency variable of the lemma, so windows and bumps act on the
/// transform of `f`. Pieces satisfy `sum_k g_k = f`, each with zero total
/// transform mass, with hard dyadic supports.
pub fn vanishing_decompose(f: &Field, s: f64, max_level: i32) -> Result<VanishingDecomposition> {
    let lat = *f.lattice();
    let n = lat.dim();
    if !(s > n as f64 / 2.0) {
        return Err(Error::Precondition(String::from("smoothness must exceed n/2")));
    }
    if max_level < 0 {
        return Err(Error::InsufficientResolution { requested: max_level, max: 0 });
    }
    let spec = f.transform();
    let wq = lat.freq_weight();
    let mass: C64 = spec.coeffs().iter().sum::<C64>() * wq;
    let fnorm = lp_norm(f, 2.0)?;
    if mass.norm() > 1e-10 * fnorm.max(1.0) {
        return Err(Error::MassNotZero(mass.norm()));
    }

    // the window partition must close on the grid: 2^K >= max |xi|
    let max_r = lat.freq_extent() * libm::sqrt(n as f64);
    let needed = libm::ceil(libm::log2(max_r)).max(0.0) as i32;
    if max_level < needed {
        return Err(Error::InsufficientResolution { requested: max_level, max: needed });
    }
    let k_top = max_level as usize;

    let w = WindowFamily::new(TaperProfile::Smoothstep(7));
    let radii: Vec<f64> = (0..lat.points())
        .map(|i| libm::sqrt(lat.frequency(i).iter().map(|v| v * v).sum()))
        .collect();

    // normalized theta_k samples on the frequency grid; theta_k is the
    // dilate 2^{-kn} theta(2^{-k} xi), renormalized so the discrete mass is
    // exactly 1. Levels whose annulus misses the grid get an empty bump;
    // they may only carry an exactly-vanishing coefficient.
    let mut thetas: Vec<Option<Vec<f64>>> = Vec::with_capacity(k_top + 1);
    for k in 0..=k_top {
        let scale = libm::pow(2.0, k as f64);
        let raw: Vec<f64> = radii.iter().map(|&r| theta_profile(r / scale)).collect();
        let m: f64 = raw.iter().sum::<f64>() * wq;
        if m > 0.0 {
            thetas.push(Some(raw.into_iter().map(|v| v / m).collect()));
        } else {
            thetas.push(None);
        }
    }

    let block_mass = |k: usize| -> C64 {
        spec.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| c * w.psi_k_radial(k as u32, radii[i]))
            .sum::<C64>()
            * wq
    };

    let mut pieces = Vec::with_capacity(k_top + 1);
    let mut decay = Vec::with_capacity(k_top + 1);
    let mut running = C64::new(0.0, 0.0); // A_{k-1}
    for k in 0..=k_top {
        let a_k = block_mass(k);
        let a_prev = running;
        let a_cur = running + a_k;
        let mut coeffs: Vec<C64> = spec
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| c * w.psi_k_radial(k as u32, radii[i]))
            .collect();
        if k >= 1 {
            match &thetas[k - 1] {
                Some(t) => {
                    for (c, &tv) in coeffs.iter_mut().zip(t) {
                        *c += a_prev * tv;
                    }
                }
                None => {
                    if a_prev.norm() > 1e-10 * fnorm.max(1.0) {
                        return Err(Error::InsufficientResolution {
                            requested: k as i32 - 1,
                            max: k_top as i32,
                        });
                    }
                }
            }
        }
        // the top-level subtraction carries A_K, which the mass-zero
        // precondition makes negligible when its bump is unresolvable
        let drop_top = k == k_top && thetas[k].is_none();
        if !drop_top {
            match &thetas[k] {
                Some(t) => {
                    for (c, &tv) in coeffs.iter_mut().zip(t) {
                        *c -= a_cur * tv;
                    }
                }
                None => {
                    if a_cur.norm() > 1e-10 * fnorm.max(1.0) {
                        return Err(Error::InsufficientResolution { requested: k as i32, max: k_top as i32 });
                    }
                }
            }
        }
        let piece = Spectrum::new(lat, coeffs)?.inverse();
        decay.push(lp_norm(&piece, 2.0)? * libm::pow(2.0, k as f64 * s));
        pieces.push(piece);
        running = a_cur;
    }

    Ok(VanishingDecomposition { pieces, source: f.clone(), smoothness: s, decay })
}

/// Components of the Riesz-transform split `g = g_0 + sum_k R_k(g_k)`.
#[derive(Debug, Clone)]
pub struct FsSplit {
    /// `g_0, g_1, ..., g_n`.
    pub components: Vec<Field>,
}

impl FsSplit {
    /// Reassembles `g_0 + sum_k R_k(g_k)`.
    pub fn reconstruct(&self) -> Result<Field> {
        let mut out = self.components[0].clone();
        for k in 1..self.components.len() {
            out = out.add(&riesz_transform(&self.components[k], k)?)?;
        }
        Ok(out)
    }

    /// Diagnostic `sum_k ||g_k||_infty` (not guaranteed bounded by the BMO
    /// norm for this constructive split).
    pub fn linf_budget(&self) -> f64 {
        self.components
            .iter()
            .map(|g| g.values().iter().map(|c| c.norm()).fold(0.0, f64::max))
            .sum()
    }
}

/// Constructive Fefferman-Stein-shaped split: `g_0` carries the modes the
/// Riesz multipliers annihilate (the mean and the unpaired Nyquist modes),
/// `g_k = -R_k(g)`; `sum_k R_k^2 = -(I - P)` on the remaining modes makes
/// the reconstruction exact.
pub fn fs_split(g: &Field) -> Result<FsSplit> {
    let lat = *g.lattice();
    let half = lat.size() as i64 / 2;
    let spec = g.transform();
    let mut kept = Spectrum::zero(lat);
    for i in 0..lat.points() {
        let k = lat.freq_index(i);
        if k.iter().all(|&ki| ki == 0) || k.iter().any(|&ki| ki == -half) {
            kept.coeffs_mut()[i] = spec.coeffs()[i];
        }
    }
    let mut components = vec![kept.inverse()];
    for k in 1..=lat.dim() {
        components.push(riesz_transform(g, k)?.scale(C64::new(-1.0, 0.0)));
    }
    Ok(FsSplit { components })
}

/// Measures the homogeneous-multiplication estimate: returns
/// `(||sigma . f||_{W^{s~}}, ||f||_{W^s})` where `sigma . f` is the
/// pointwise product in centered coordinates with `sigma(0) := 0`.
pub fn homogeneous_product_sobolev_check(
    sigma: impl Fn(&[f64]) -> C64,
    f: &Field,
    s: f64,
    s_tilde: f64,
) -> Result<(f64, f64)> {
    let lat = *f.lattice();
    let n = lat.dim();
    if !(s > n as f64 / 2.0) {
        return Err(Error::Precondition(String::from("s must exceed n/2")));
    }
    let cap = (n / 2) as f64 + 1.0;
    if !(s_tilde >= 0.0 && s_tilde < s.min(cap)) {
        return Err(Error::Precondition(String::from("need 0 <= s~ < min(s, [n/2]+1)")));
    }
    let spec = f.transform();
    let mass: C64 = spec.coeffs().iter().sum::<C64>() * lat.freq_weight();
    let fnorm = lp_norm(f, 2.0)?;
    if mass.norm() > 1e-10 * fnorm.max(1.0) {
        return Err(Error::MassNotZero(mass.norm()));
    }
    let peak = f.values().iter().map(|c| c.norm()).fold(0.0, f64::max);
    for i in 0..lat.points() {
        let x = lat.centered_point(i);
        let r = libm::sqrt(x.iter().map(|v| v * v).sum());
        if r > 2.0 && f.values()[i].norm() > 1e-12 * peak.max(1.0) {
            return Err(Error::Precondition(String::from("f must be supported in the ball of radius 2")));
        }
    }
    let mut prod = Field::zero(lat);
    for i in 0..lat.points() {
        let x = lat.centered_point(i);
        let r: f64 = x.iter().map(|v| v * v).sum();
        let sv = if r == 0.0 { C64::new(0.0, 0.0) } else { sigma(&x) };
        prod.values_mut()[i] = sv * f.values()[i];
    }
    Ok((sobolev_norm(&prod, s_tilde), sobolev_norm(f, s)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Lattice;
    use crate::rng::SeededRng;

    fn tau() -> f64 {
        2.0 * core::f64::consts::PI
    }

    /// Random field whose transform is band-limited and has exactly zero
    /// total mass (the DC-balanced construction used by the admissible
    /// examples).
    fn admissible_field(lat: &Lattice, seed: u64) -> Field {
        let mut rng = SeededRng::new(seed);
        let mut spec = crate::lattice::Spectrum::zero(*lat);
        let cut = (lat.size() / 4) as i64;
        for i in 0..lat.points() {
            let k = lat.freq_index(i);
            if k.iter().all(|v| v.abs() <= cut) {
                spec.coeffs_mut()[i] = rng.complex_gaussian();
            }
        }
        // cancel the total mass against the DC slot
        let total: C64 = spec.coeffs().iter().sum();
        let dc = lat.freq_slot(&alloc::vec![0i64; lat.dim()]).unwrap();
        spec.coeffs_mut()[dc] -= total;
        spec.inverse()
    }

    #[test]
    fn low_frequency_input_is_a_single_piece() {
        let lat = Lattice::new(1, 32, tau()).unwrap();
        let mut spec = crate::lattice::Spectrum::zero(lat);
        spec.coeffs_mut()[lat.freq_slot(&[1]).unwrap()] = C64::new(1.0, 0.5);
        spec.coeffs_mut()[lat.freq_slot(&[-1]).unwrap()] = C64::new(-1.0, -0.5);
        let f = spec.inverse();
        let d = vanishing_decompose(&f, 0.8, 5).unwrap();
        assert_eq!(d.pieces.len(), 6);
        for (i, (a, b)) in d.pieces[0].values().iter().zip(f.values()).enumerate() {
            assert!((a - b).norm() < 1e-12, "slot {i}");
        }
        for g in &d.pieces[1..] {
            assert!(lp_norm(g, 2.0).unwrap() < 1e-12);
        }
    }

    #[test]
    fn decomposition_reconstructs_with_vanishing_masses_and_supports() {
        // Frequency step 1/2, so the averaging bumps `theta_k` have grid
        // points strictly inside every dyadic annulus down to [1, 2].
        let lat = Lattice::new(1, 64, 2.0 * tau()).unwrap();
        let f = admissible_field(&lat, 17);
        let fnorm = lp_norm(&f, 2.0).unwrap();
        let d = vanishing_decompose(&f, 0.8, 5).unwrap();

        let mut sum = Field::zero(lat);
        for g in &d.pieces {
            sum = sum.add(g).unwrap();
        }
        for (a, b) in sum.values().iter().zip(f.values()) {
            assert!((a - b).norm() < 1e-10 * fnorm.max(1.0));
        }

        for (k, g) in d.pieces.iter().enumerate() {
            let spec = g.transform();
            let mass: C64 = spec.coeffs().iter().sum::<C64>() * lat.freq_weight();
            assert!(mass.norm() < 1e-10 * fnorm.max(1.0), "level {k}");
            for i in 0..lat.points() {
                let r = libm::sqrt(lat.frequency(i).iter().map(|v| v * v).sum());
                let inside = if k == 0 {
                    r <= 2.0
                } else {
                    r >= libm::pow(2.0, k as f64 - 1.0) && r <= libm::pow(2.0, k as f64 + 1.0)
                };
                if !inside {
                    assert!(spec.coeffs()[i].norm() < 1e-12 * fnorm.max(1.0), "level {k} slot {i}");
                }
            }
        }
        assert_eq!(d.decay.len(), d.pieces.len());
        assert!(d.decay.iter().all(|v| v.is_finite()));
    }

    #[test]
    fn decomposition_preconditions() {
        let lat = Lattice::new(1, 32, tau()).unwrap();
        let bad_mass = Field::constant(lat, C64::new(1.0, 0.0));
        assert!(matches!(vanishing_decompose(&bad_mass, 0.8, 5), Err(Error::MassNotZero(_))));
        let f = admissible_field(&lat, 1);
        assert!(matches!(
            vanishing_decompose(&f, 0.8, 2),
            Err(Error::InsufficientResolution { .. })
        ));
        assert!(vanishing_decompose(&f, 0.3, 5).is_err());
    }

    #[test]
    fn fs_split_of_constant_and_cosine() {
        let lat = Lattice::new(1, 64, tau()).unwrap();
        let c = Field::constant(lat, C64::new(3.0, -1.0));
        let s = fs_split(&c).unwrap();
        assert_eq!(s.components.len(), 2);
        for (a, b) in s.components[0].values().iter().zip(c.values()) {
            assert!((a - b).norm() < 1e-12);
        }
        assert!(lp_norm(&s.components[1], 2.0).unwrap() < 1e-12);

        let g = Field::from_fn(lat, |x| C64::new(libm::cos(x[0]), 0.0));
        let s = fs_split(&g).unwrap();
        assert!(lp_norm(&s.components[0], f64::INFINITY).unwrap() < 1e-12);
        for (i, v) in s.components[1].values().iter().enumerate() {
            let x = lat.point(i)[0];
            assert!((v - C64::new(-libm::sin(x), 0.0)).norm() < 1e-12);
        }
        let back = s.reconstruct().unwrap();
        for (a, b) in back.values().iter().zip(g.values()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn fs_split_reconstructs_and_stays_real() {
        let lat = Lattice::new(2, 8, 3.0).unwrap();
        let mut rng = SeededRng::new(9);
        let g = Field::new(lat, (0..lat.points()).map(|_| C64::new(rng.symmetric(), 0.0)).collect()).unwrap();
        let s = fs_split(&g).unwrap();
        assert_eq!(s.components.len(), 3);
        for comp in &s.components {
            for v in comp.values() {
                assert!(v.im.abs() < 1e-12);
            }
        }
        let back = s.reconstruct().unwrap();
        for (a, b) in back.values().iter().zip(g.values()) {
            assert!((a - b).norm() < 1e-12);
        }
        assert!(s.linf_budget().is_finite());
    }

    /// Compactly supported admissible input for the homogeneous check.
    fn bump_field(lat: &Lattice, seed: u64) -> Field {
        let mut rng = SeededRng::new(seed);
        let amp = C64::new(rng.symmetric(), rng.symmetric());
        let mut f = Field::from_fn(*lat, |x| {
            let r2: f64 = x
                .iter()
                .map(|&v| {
                    let c = if v >= lat.period() / 2.0 { v - lat.period() } else { v };
                    c * c
                })
                .sum();
            if r2 < 4.0 {
                amp * libm::exp(-1.0 / (4.0 - r2)) * (4.0 - r2)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        // remove the transform mass while staying inside the support: the
        // correction reuses the same bump profile
        let spec = f.transform();
        let total: C64 = spec.coeffs().iter().sum();
        let profile = Field::from_fn(*lat, |x| {
            let r2: f64 = x
                .iter()
                .map(|&v| {
                    let c = if v >= lat.period() / 2.0 { v - lat.period() } else { v };
                    c * c
                })
                .sum();
            if r2 < 4.0 {
                C64::new(libm::exp(-1.0 / (4.0 - r2)) * (4.0 - r2), 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        let ptotal: C64 = profile.transform().coeffs().iter().sum();
        f = f.sub(&profile.scale(total / ptotal)).unwrap();
        f
    }

    #[test]
    fn homogeneous_check_ratio_properties() {
        let lat = Lattice::new(1, 64, tau()).unwrap();
        let f = bump_field(&lat, 23);
        let (num, den) = homogeneous_product_sobolev_check(|_| C64::new(1.0, 0.0), &f, 0.8, 0.4).unwrap();
        assert!(num <= den * (1.0 + 1e-12), "{num} vs {den}");

        let riesz = |x: &[f64]| {
            let r = libm::sqrt(x.iter().map(|v| v * v).sum::<f64>());
            C64::new(0.0, -x[0] / r)
        };
        let (a1, b1) = homogeneous_product_sobolev_check(riesz, &f, 0.8, 0.4).unwrap();
        let g = f.scale(C64::new(2.5, 0.0));
        let (a2, b2) = homogeneous_product_sobolev_check(riesz, &g, 0.8, 0.4).unwrap();
        assert!(((a1 / b1) / (a2 / b2) - 1.0).abs() < 1e-10);

        let (z1, z2) = homogeneous_product_sobolev_check(riesz, &Field::zero(lat), 0.8, 0.4).unwrap();
        assert_eq!((z1, z2), (0.0, 0.0));
    }

    #[test]
    fn homogeneous_check_preconditions() {
        let lat = Lattice::new(1, 64, tau()).unwrap();
        let f = bump_field(&lat, 2);
        let one = |_: &[f64]| C64::new(1.0, 0.0);
        assert!(homogeneous_product_sobolev_check(one, &f, 0.4, 0.2).is_err());
        assert!(homogeneous_product_sobolev_check(one, &f, 0.8, 0.9).is_err());
        assert!(homogeneous_product_sobolev_check(one, &f, 0.8, -0.1).is_err());
        let wide = Field::constant(lat, C64::new(1.0, 0.0));
        assert!(homogeneous_product_sobolev_check(one, &wide, 0.8, 0.4).is_err());
    }
}
