//! Acceptance gate: one test per criterion, each printing a single
//! pass/fail line.

use bifour::config::RunConfig;
use bifour::verify;
use bifour_core::bilinear::{
    ApplyPath, SearchBudget, SpaceTriple, adjoint_pairing_complex, apply_bilinear,
    apply_bilinear_with, estimate_norm,
};
use bifour_core::calculus::riesz_transform;
use bifour_core::decomp::{fs_split, vanishing_decompose};
use bifour_core::norms::lp_norm;
use bifour_core::rng::SeededRng;
use bifour_core::symbols::{
    BilinearEval1, BilinearSymbol, SymbolParams, WindowFamily, dual_transform, symbol_library,
};
use bifour_core::{C64, Field, Lattice, Spectrum};
use std::sync::Arc;
use std::time::Instant;

const TAU: f64 = std::f64::consts::TAU;

fn base_lattice() -> Lattice {
    Lattice::new(1, 64, TAU).unwrap()
}

fn catalog(name: &str, lat: &Lattice) -> BilinearSymbol {
    symbol_library(name, &SymbolParams::default(), lat).unwrap()
}

/// Band-limited random field, coefficients keyed by frequency index.
fn band_field(lat: &Lattice, seed: u64, band: i64) -> Field {
    let mut spec = Spectrum::zero(*lat);
    for i in 0..lat.points() {
        let k = lat.freq_index(i);
        if k.iter().all(|v| v.abs() <= band) {
            let mut key = 1u64;
            for &ki in &k {
                key = key.wrapping_mul(1000003).wrapping_add((ki + 512) as u64);
            }
            spec.coeffs_mut()[i] = SeededRng::derive(seed, key).complex_gaussian();
        }
    }
    spec.inverse()
}

fn max_err(a: &Field, b: &Field) -> f64 {
    a.values().iter().zip(b.values()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

#[test]
fn criterion_1_exact_identities() {
    let start = Instant::now();
    let lat = base_lattice();

    // T_1(f1, f2) = f1 f2.
    let one = catalog("constant-one", &lat);
    let f1 = band_field(&lat, 21, 8);
    let f2 = band_field(&lat, 22, 8);
    let t = apply_bilinear(&one, &f1, &f2).unwrap();
    let prod = f1.zip_map(&f2, |a, b| a * b).unwrap();
    assert!(max_err(&t, &prod) <= 1e-12, "T_1 is not the pointwise product");

    // Three-way adjoint pairing equality on 20 random band-limited triples.
    let m = catalog("coifman-meyer", &lat);
    for trial in 0..20u64 {
        let a = band_field(&lat, 100 + trial, 6);
        let b = band_field(&lat, 200 + trial, 6);
        let g = band_field(&lat, 300 + trial, 6);
        let p = adjoint_pairing_complex(&m, &a, &b, &g).unwrap();
        let scale = p.iter().map(|c| c.norm()).fold(1e-300, f64::max);
        let d = (p[0] - p[1]).norm().max((p[0] - p[2]).norm()).max((p[1] - p[2]).norm());
        assert!(d / scale <= 1e-10, "pairing identity failed at trial {trial}");
    }

    // (m^{*2})^{*2} = m on the grid.
    let twice = dual_transform(&dual_transform(&m, 2, Some(&lat)).unwrap(), 2, Some(&lat)).unwrap();
    let ma = m.sample(&lat).unwrap();
    let mb = twice.sample(&lat).unwrap();
    let dual_err = ma
        .values()
        .iter()
        .zip(mb.values())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max);
    assert!(dual_err <= 1e-12, "dual transform is not an involution: {dual_err}");

    // Vanishing decomposition: reconstruction and hard support containment.
    let fine = Lattice::new(1, 64, 2.0 * TAU).unwrap();
    let f = {
        let raw = band_field(&fine, 31, 8);
        let mut spec = raw.transform();
        let dc = fine.freq_slot(&[0]).unwrap();
        let total: C64 = spec.coeffs().iter().sum();
        spec.coeffs_mut()[dc] -= total;
        spec.inverse()
    };
    let fnorm = lp_norm(&f, 2.0).unwrap().max(1.0);
    let d = vanishing_decompose(&f, 0.8, 5).unwrap();
    let mut sum = Field::zero(fine);
    for g in &d.pieces {
        sum = sum.add(g).unwrap();
    }
    assert!(max_err(&sum, &f) <= 1e-10 * fnorm, "decomposition does not reconstruct");
    for (k, g) in d.pieces.iter().enumerate() {
        let spec = g.transform();
        for i in 0..fine.points() {
            let r = fine.frequency(i)[0].abs();
            let inside = if k == 0 {
                r <= 2.0
            } else {
                r >= 2.0f64.powi(k as i32 - 1) && r <= 2.0f64.powi(k as i32 + 1)
            };
            if !inside {
                assert!(spec.coeffs()[i].norm() <= 1e-12 * fnorm, "support leak at level {k}");
            }
        }
    }

    // Fefferman-Stein-style split reconstructs exactly.
    let g = band_field(&lat, 41, 10).map(|c| C64::new(c.re, 0.0));
    let split = fs_split(&g).unwrap();
    let gnorm = lp_norm(&g, 2.0).unwrap().max(1.0);
    assert!(max_err(&split.reconstruct().unwrap(), &g) <= 1e-12 * gnorm, "fs split broken");

    // Window partitions telescope to 1 on resolvable points.
    let w = WindowFamily::default_family();
    for i in 1..lat.points() {
        let r = lat.frequency(i)[0].abs();
        if r == 0.0 || r > lat.freq_extent() / 2.0 {
            continue;
        }
        let mut hom = 0.0;
        for k in -12..=12 {
            hom += w.big_psi_radial(r / 2.0f64.powi(k));
        }
        assert!((hom - 1.0).abs() <= 1e-12, "homogeneous partition fails at r = {r}");
        let mut inhom = 0.0;
        for k in 0..=12u32 {
            inhom += w.psi_k_radial(k, r);
        }
        assert!((inhom - 1.0).abs() <= 1e-12, "inhomogeneous partition fails at r = {r}");
    }

    // Plancherel with the (2 pi)^{n/2} convention.
    let h = band_field(&lat, 51, 10);
    let hat = h.transform();
    let hat_l2 = (hat.coeffs().iter().map(|c| c.norm_sqr()).sum::<f64>() * lat.freq_weight()).sqrt();
    let l2 = lp_norm(&h, 2.0).unwrap();
    assert!((hat_l2 - TAU.sqrt() * l2).abs() <= 1e-12 * l2.max(1.0), "Plancherel violated");

    // sum_k R_k^2 = -(I - mean) away from the Nyquist mode.
    let v = band_field(&lat, 61, 10);
    let rr = riesz_transform(&riesz_transform(&v, 1).unwrap(), 1).unwrap();
    let mean = v.mean();
    for (a, b) in rr.values().iter().zip(v.values()) {
        assert!((a + (b - mean)).norm() <= 1e-12, "Riesz identity violated");
    }

    let secs = start.elapsed().as_secs_f64();
    assert!(secs < 10.0, "exact identities took {secs:.1}s");
    println!("criterion 1 (exact identities): pass ({secs:.2}s)");
}

#[test]
fn criterion_2_inequality_suites() {
    let start = Instant::now();
    let cfg = RunConfig::default();
    let reports = verify::run_suite(&cfg).unwrap();
    assert_eq!(reports.len(), 22);
    for r in &reports {
        assert!(r.constant.is_finite(), "{} recorded a non-finite constant", r.id);
        assert!(r.pass, "{} failed: constant {} drift {}", r.id, r.constant, r.drift);
    }
    let secs = start.elapsed().as_secs_f64();
    assert!(secs < 300.0, "inequality suites took {secs:.1}s");
    println!("criterion 2 (inequality suites, 22 checks): pass ({secs:.2}s)");
}

#[test]
fn criterion_3_known_norm_calibration() {
    let start = Instant::now();
    let lat = base_lattice();
    let one = catalog("constant-one", &lat);
    let est =
        estimate_norm(&one, &lat, SpaceTriple::L2LinfL2, SearchBudget::default(), 7).unwrap();
    assert!(
        est.value >= 1.0 - 1e-4 && est.value <= 1.0 + 1e-6,
        "calibration off: {}",
        est.value
    );
    let secs = start.elapsed().as_secs_f64();
    assert!(secs < 30.0, "calibration took {secs:.1}s");
    println!("criterion 3 (known-norm calibration): pass, value {} ({secs:.2}s)", est.value);
}

#[test]
fn criterion_4_separable_fast_path() {
    let start = Instant::now();

    // Rank-4 separable symbol on n = 1, N = 256.
    let lat = Lattice::new(1, 256, TAU).unwrap();
    let widths = [1.0, 2.0, 4.0, 8.0];
    let mut factors: Vec<(BilinearEval1, BilinearEval1)> = Vec::new();
    for &s in &widths {
        let a: BilinearEval1 = Arc::new(move |xi: &[f64]| C64::new((-xi[0] * xi[0] / s).exp(), 0.0));
        let b: BilinearEval1 =
            Arc::new(move |xi: &[f64]| C64::new(1.0 / (1.0 + xi[0] * xi[0] / s), 0.0));
        factors.push((a, b));
    }
    let m = BilinearSymbol::closed(move |xi1: &[f64], xi2: &[f64]| {
        let mut acc = C64::new(0.0, 0.0);
        for &s in &widths {
            acc += C64::new(
                (-xi1[0] * xi1[0] / s).exp() / (1.0 + xi2[0] * xi2[0] / s),
                0.0,
            );
        }
        acc
    })
    .with_separable(factors);
    let f1 = band_field(&lat, 71, 120);
    let f2 = band_field(&lat, 72, 120);

    let mut naive_time = f64::INFINITY;
    let mut naive = None;
    for _ in 0..3 {
        let t0 = Instant::now();
        naive = Some(apply_bilinear_with(&m, &f1, &f2, ApplyPath::Naive).unwrap());
        naive_time = naive_time.min(t0.elapsed().as_secs_f64());
    }
    let naive = naive.unwrap();

    let mut fast_time = f64::INFINITY;
    let mut fast = None;
    for _ in 0..5 {
        let t1 = Instant::now();
        fast = Some(apply_bilinear_with(&m, &f1, &f2, ApplyPath::Separable).unwrap());
        fast_time = fast_time.min(t1.elapsed().as_secs_f64());
    }
    let fast = fast.unwrap();

    let scale = fast.values().iter().map(|c| c.norm()).fold(1.0f64, f64::max);
    assert!(max_err(&naive, &fast) <= 1e-10 * scale, "paths disagree");
    let speedup = naive_time / fast_time;
    assert!(speedup >= 10.0, "speedup only {speedup:.1}x");

    // Naive 2-D apply at N = 16 stays well under a minute.
    let lat2 = Lattice::new(2, 16, TAU).unwrap();
    let m2 = catalog("coifman-meyer", &lat2);
    let g1 = band_field(&lat2, 81, 4);
    let g2 = band_field(&lat2, 82, 4);
    let t2 = Instant::now();
    let _ = apply_bilinear_with(&m2, &g1, &g2, ApplyPath::Naive).unwrap();
    let naive2 = t2.elapsed().as_secs_f64();
    assert!(naive2 < 60.0, "2-D naive apply took {naive2:.1}s");

    let secs = start.elapsed().as_secs_f64();
    println!(
        "criterion 4 (performance): pass, speedup {speedup:.0}x, 2-D naive {naive2:.2}s ({secs:.2}s)"
    );
}

#[test]
fn criterion_5_deterministic_verify() {
    let start = Instant::now();
    let bin = env!("CARGO_BIN_EXE_bifour");
    let mut outputs = Vec::new();
    for run in 0..2 {
        let dir = tempfile::tempdir().unwrap();
        let status = std::process::Command::new(bin)
            .args(["verify", "--all", "--seed", "7"])
            .env("BIFOUR_OUT", dir.path())
            .stdout(std::process::Stdio::null())
            .status()
            .unwrap();
        assert!(status.success(), "verify run {run} failed");
        outputs.push(std::fs::read(dir.path().join("reports.jsonl")).unwrap());
    }
    assert!(!outputs[0].is_empty());
    assert_eq!(outputs[0], outputs[1], "verify output is not byte-identical");
    let secs = start.elapsed().as_secs_f64();
    println!("criterion 5 (determinism): pass ({secs:.2}s)");
}
