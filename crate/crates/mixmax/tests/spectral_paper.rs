//! Spectrum-shape checks at realistic sizes: the leaf-shaped limiting
//! curve of the inverse spectrum, real-eigenvalue counts, and the
//! large-radius behaviour of the three-parameter family.

use num_complex::Complex64;

use mixmax::operators::OperatorSpec;
use mixmax::spectral::{self, Precision};

/// Distance from a point to the limiting curve, by dense sampling.
fn distance_to_curve(mu: Complex64) -> f64 {
    let samples = 20_000;
    let mut best = f64::INFINITY;
    for k in 0..=samples {
        let phi = -std::f64::consts::PI + 2.0 * std::f64::consts::PI * k as f64 / samples as f64;
        let on_curve = Complex64::from_polar(spectral::limiting_curve(phi), phi);
        best = best.min((mu - on_curve).norm());
    }
    best
}

#[test]
fn inverse_spectrum_lies_on_the_leaf() {
    // non-real reciprocal eigenvalues stay within 2% of the curve's apex
    // radius (4) for N = 256
    let spec = OperatorSpec::two_param(256, -1).unwrap();
    let sp = spectral::eigenvalues(&spec).unwrap();
    let mut max_dist: f64 = 0.0;
    let mut count = 0;
    for l in sp.eigenvalues() {
        if l.im == 0.0 {
            continue;
        }
        let mu = Complex64::new(1.0, 0.0) / l;
        max_dist = max_dist.max(distance_to_curve(mu));
        count += 1;
    }
    assert_eq!(count, 254);
    assert!(
        max_dist <= 0.02 * 4.0,
        "max distance {max_dist:.4} exceeds 2% of the apex radius"
    );
}

#[test]
fn real_eigenvalue_counts_at_scale() {
    // two real eigenvalues for even N, three for odd, at moderate s
    for n in [64u32, 128, 256, 512] {
        let sp = spectral::eigenvalues(&OperatorSpec::two_param(n, -1).unwrap()).unwrap();
        assert_eq!(sp.real_count(), 2, "N={n}");
    }
    let s0 = spectral::eigenvalues(&OperatorSpec::two_param(256, 0).unwrap()).unwrap();
    assert_eq!(s0.real_count(), 2);
    // odd N: observational, not load-bearing
    for n in [255u32, 257] {
        let sp = spectral::eigenvalues(&OperatorSpec::two_param(n, -1).unwrap()).unwrap();
        assert_eq!(sp.real_count(), 3, "N={n}");
    }
}

#[test]
fn three_param_radius_tracks_m() {
    // the leaf radius scales with m; the N = 60 prefactor is ~2.43
    // (measured here and against an independent high-precision run)
    let m = (1u64 << 52) + 1;
    let spec = OperatorSpec::three_param(60, 0, m).unwrap();
    let sp = spectral::eigenvalues(&spec).unwrap();
    assert_eq!(sp.precision(), Precision::DoubleDouble);
    let ratio = sp.lambda_max() / m as f64;
    assert!(
        (ratio - 2.4298).abs() <= 0.05 * 2.4298,
        "lambda_max / m = {ratio:.4}"
    );
    let h = spectral::entropy(&sp).entropy;
    assert!((h - 2090.5).abs() <= 1.5, "h = {h:.4}");
}

#[test]
fn three_param_small_eigenvalue_shrinks_geometrically() {
    // the tiny eigenvalue collapses geometrically in m; expected values
    // frozen from an independent 40-digit run (resolvable only in the
    // extended-precision path at these sizes)
    let expected = [(256u64, 3.637131e-15), (512, 5.616614e-17), (1024, 8.724614e-19)];
    for (m, want) in expected {
        let spec = OperatorSpec::three_param(8, 0, m).unwrap();
        let opts = spectral::SpectralOptions {
            cap: spectral::DEFAULT_SPECTRAL_CAP,
            force_precision: Some(Precision::DoubleDouble),
        };
        let sp = spectral::eigenvalues_with(&spec, opts).unwrap();
        assert!(sp.fully_resolved(), "m={m}");
        let lmin = sp.lambda_min();
        assert!(
            (lmin / want - 1.0).abs() < 1e-3,
            "m={m}: lambda_min = {lmin:.6e}, want {want:.6e}"
        );
    }
}

#[test]
fn huge_s_spectrum_is_resolved_in_dd() {
    // the magic-s operator needs the double-double path: in f64 the
    // determinant residual collapses, in dd the expanding and contracting
    // sums agree to full reported precision
    let spec = OperatorSpec::two_param(256, 487013230256099064).unwrap();
    let sp = spectral::eigenvalues(&spec).unwrap();
    assert_eq!(sp.precision(), Precision::DoubleDouble);
    assert!(sp.fully_resolved());
    let rep = spectral::entropy(&sp);
    let hc = rep.entropy_contracting.expect("resolved");
    assert!((rep.entropy - hc).abs() <= 1e-6 * rep.entropy);
    let verdict = spectral::check_c_condition(&sp, 1e-6);
    assert!(verdict.pass);
}

#[test]
fn eq9_estimate_vs_spectral_values() {
    // 2N/π underestimates the true slope by ~1.5%; both stay within the
    // documented 0.02 band of h/N
    for n in [64u32, 256] {
        let sp = spectral::eigenvalues(&OperatorSpec::two_param(n, -1).unwrap()).unwrap();
        let h = spectral::entropy(&sp).entropy;
        let est = spectral::entropy_asymptotic(n);
        assert!((h - est).abs() / n as f64 <= 0.02, "N={n}: h={h:.2} est={est:.2}");
    }
}
