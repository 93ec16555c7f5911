//! Spectrum, Kolmogorov entropy, and hyperbolicity verification.
//!
//! The entropy of an operator is the sum of log-moduli of its expanding
//! eigenvalues. The hyperbolicity condition requires determinant one and
//! no eigenvalue modulus equal to one; both are checked numerically from
//! the computed spectrum, with the determinant identity `Σ ln|λ| = 0`
//! doubling as an accuracy witness.
//!
//! Precision: matrices whose entries stay below 2^52 are solved in plain
//! `f64`; larger entries (big `m` or `s`) switch to double-double so the
//! input is exact and eigenvalue error stays near 1e-32·‖A‖. Eigenvalues
//! whose true modulus lies below ε·λ_max cannot be resolved by any QR in
//! fixed precision; they surface here as sub-resolution values (possibly
//! exact zeros) and the contracting-side entropy is reported as
//! unavailable rather than garbage.

use num_complex::Complex64;
use serde::Serialize;

use crate::dd::Dd;
use crate::eigen::{self, Mat, Scalar};
use crate::error::{Error, Result};
use crate::operators::OperatorSpec;

/// Entries at or above this magnitude trigger the double-double path.
pub const EXTENDED_PRECISION_THRESHOLD: i128 = 1 << 52;

/// Default cap on the matrix dimension for dense eigenvalue work.
pub const DEFAULT_SPECTRAL_CAP: u32 = 4096;

/// Sub-resolution safety factor on ε·λ_max.
const RESOLUTION_SAFETY: f64 = 64.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Precision {
    F64,
    DoubleDouble,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum SpectralWarning {
    /// Entries exceed 2^52; the solver ran in extended precision.
    ExtendedPrecision { max_entry_log2: f64 },
    /// Some contracting eigenvalues lie below the resolution floor; their
    /// values (and anything summing them) are not meaningful.
    UnresolvedContracting { count: usize, floor: f64 },
}

/// The N eigenvalues of an operator, sorted by ascending modulus.
#[derive(Clone, Debug)]
pub struct Spectrum {
    n: u32,
    eigenvalues: Vec<Complex64>,
    /// Count of eigenvalues with modulus < 1.
    d: usize,
    real_count: usize,
    precision: Precision,
    /// Moduli below this are numerically unresolved.
    resolution_floor: f64,
    warnings: Vec<SpectralWarning>,
}

impl Spectrum {
    /// Wraps an externally computed eigenvalue list (sorted internally).
    pub fn from_complex(eigs: Vec<Complex64>) -> Self {
        Self::assemble(eigs, Precision::F64, f64::EPSILON, Vec::new())
    }

    fn assemble(
        mut eigs: Vec<Complex64>,
        precision: Precision,
        eps: f64,
        mut warnings: Vec<SpectralWarning>,
    ) -> Self {
        eigs.sort_by(|a, b| {
            (a.norm(), a.re, a.im)
                .partial_cmp(&(b.norm(), b.re, b.im))
                .expect("eigenvalues are finite")
        });
        let n = eigs.len() as u32;
        let d = eigs.iter().filter(|l| l.norm() < 1.0).count();
        let real_count = eigs.iter().filter(|l| l.im == 0.0).count();
        let lambda_max = eigs.last().map(|l| l.norm()).unwrap_or(0.0);
        let resolution_floor = eps * lambda_max * RESOLUTION_SAFETY;
        let unresolved = eigs.iter().filter(|l| l.norm() < resolution_floor).count();
        if unresolved > 0 {
            warnings.push(SpectralWarning::UnresolvedContracting {
                count: unresolved,
                floor: resolution_floor,
            });
        }
        Spectrum { n, eigenvalues: eigs, d, real_count, precision, resolution_floor, warnings }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Ascending by modulus; conjugate pairs adjacent.
    pub fn eigenvalues(&self) -> &[Complex64] {
        &self.eigenvalues
    }

    pub fn contracting_count(&self) -> usize {
        self.d
    }

    pub fn real_count(&self) -> usize {
        self.real_count
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn warnings(&self) -> &[SpectralWarning] {
        &self.warnings
    }

    pub fn lambda_min(&self) -> f64 {
        self.eigenvalues.first().map(|l| l.norm()).unwrap_or(0.0)
    }

    pub fn lambda_max(&self) -> f64 {
        self.eigenvalues.last().map(|l| l.norm()).unwrap_or(0.0)
    }

    /// Smallest distance of any modulus from the unit circle.
    pub fn min_unit_circle_gap(&self) -> f64 {
        self.eigenvalues
            .iter()
            .map(|l| (l.norm() - 1.0).abs())
            .fold(f64::INFINITY, f64::min)
    }

    /// True when every modulus is above the resolution floor.
    pub fn fully_resolved(&self) -> bool {
        self.eigenvalues
            .iter()
            .all(|l| l.norm() >= self.resolution_floor && l.norm() > 0.0)
    }

    fn det_tolerance(&self) -> f64 {
        let per_dim = match self.precision {
            Precision::F64 => 1e-6,
            // entries near 2^55 relax the attainable residual
            Precision::DoubleDouble => 1e-3,
        };
        per_dim * self.n as f64
    }
}

/// Options for [`eigenvalues_with`].
#[derive(Clone, Copy, Debug)]
pub struct SpectralOptions {
    pub cap: u32,
    pub force_precision: Option<Precision>,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        SpectralOptions { cap: DEFAULT_SPECTRAL_CAP, force_precision: None }
    }
}

/// Numerical spectrum of an operator with automatic precision selection.
pub fn eigenvalues(spec: &OperatorSpec) -> Result<Spectrum> {
    eigenvalues_with(spec, SpectralOptions::default())
}

pub fn eigenvalues_with(spec: &OperatorSpec, opts: SpectralOptions) -> Result<Spectrum> {
    let n = spec.n();
    if n > opts.cap {
        return Err(Error::DimensionTooLarge { n, cap: opts.cap });
    }
    let max_entry = spec.max_abs_entry();
    let precision = opts.force_precision.unwrap_or(if max_entry >= EXTENDED_PRECISION_THRESHOLD {
        Precision::DoubleDouble
    } else {
        Precision::F64
    });
    let mut warnings = Vec::new();
    if max_entry >= EXTENDED_PRECISION_THRESHOLD {
        warnings.push(SpectralWarning::ExtendedPrecision {
            max_entry_log2: (max_entry as f64).log2(),
        });
    }
    match precision {
        Precision::F64 => {
            let eigs = solve::<f64>(spec)?;
            Ok(Spectrum::assemble(eigs, precision, f64::EPSILON, warnings))
        }
        Precision::DoubleDouble => {
            let eigs = solve::<Dd>(spec)?;
            Ok(Spectrum::assemble(eigs, precision, 4.93e-32, warnings))
        }
    }
}

fn solve<T: Scalar>(spec: &OperatorSpec) -> Result<Vec<Complex64>> {
    let n = spec.n() as usize;
    let mat = Mat::from_fn(n, |i, j| T::from_i128(spec.entry(i as u32 + 1, j as u32 + 1)));
    let pairs = eigen::eigenvalues(mat).map_err(Error::ConvergenceFailure)?;
    Ok(pairs
        .into_iter()
        .map(|(re, im)| Complex64::new(re.to_f64(), im.to_f64()))
        .collect())
}

/// Entropy and spectral extremes derived from a computed spectrum.
#[derive(Clone, Debug, Serialize)]
pub struct EntropyReport {
    pub n: u32,
    /// Σ ln|λ| over the expanding set (|λ| > 1), in nats.
    pub entropy: f64,
    /// Σ -ln|λ| over the contracting set, when every contracting modulus
    /// is resolved; must agree with `entropy` for a determinant-one matrix.
    pub entropy_contracting: Option<f64>,
    /// The large-N slope approximation 2N/π.
    pub asymptotic: f64,
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub min_unit_circle_gap: f64,
    pub precision: Precision,
}

/// The large-N entropy approximation 2N/π.
pub fn entropy_asymptotic(n: u32) -> f64 {
    2.0 * n as f64 / std::f64::consts::PI
}

pub fn entropy(sp: &Spectrum) -> EntropyReport {
    let mut expanding = 0.0;
    let mut contracting = 0.0;
    let mut contracting_ok = true;
    for l in &sp.eigenvalues {
        let r = l.norm();
        if r > 1.0 {
            expanding += r.ln();
        } else if r >= sp.resolution_floor && r > 0.0 {
            contracting -= r.ln();
        } else {
            contracting_ok = false;
        }
    }
    EntropyReport {
        n: sp.n,
        entropy: expanding,
        entropy_contracting: contracting_ok.then_some(contracting),
        asymptotic: entropy_asymptotic(sp.n),
        lambda_min: sp.lambda_min(),
        lambda_max: sp.lambda_max(),
        min_unit_circle_gap: sp.min_unit_circle_gap(),
        precision: sp.precision,
    }
}

/// Outcome of the hyperbolicity check.
#[derive(Clone, Debug, Serialize)]
pub struct CVerdict {
    pub pass: bool,
    /// min_i ||λ_i| - 1|.
    pub min_gap: f64,
    pub gap_tol: f64,
    /// |Σ ln|λ_i||, the determinant-one residual, when all moduli resolve.
    pub log_det_residual: Option<f64>,
    pub det_tol: f64,
}

/// Verifies no eigenvalue sits on the unit circle and that the spectrum is
/// consistent with determinant one.
///
/// When contracting eigenvalues fall below the resolution floor the
/// determinant residual cannot be formed numerically; the verdict then
/// rests on the gap condition alone (determinant one is checked exactly,
/// mod several primes, on the operator side).
pub fn check_c_condition(sp: &Spectrum, gap_tol: f64) -> CVerdict {
    let min_gap = sp.min_unit_circle_gap();
    let det_tol = sp.det_tolerance();
    let residual = sp.fully_resolved().then(|| {
        sp.eigenvalues
            .iter()
            .map(|l| l.norm().ln())
            .sum::<f64>()
            .abs()
    });
    let det_ok = residual.map(|r| r <= det_tol).unwrap_or(true);
    CVerdict { pass: min_gap > gap_tol && det_ok, min_gap, gap_tol, log_det_residual: residual, det_tol }
}

/// The limiting curve radius r(φ) = 4 cos²(φ/2) on which the inverse
/// spectrum accumulates as N grows.
pub fn limiting_curve(phi: f64) -> f64 {
    let c = (phi / 2.0).cos();
    4.0 * c * c
}

/// Finite-N eigenvalue approximation for the two-parameter family at
/// s = -1: λ_j = exp(iπj/N) / (4cos²(jπ/2N)).
///
/// Stated for |j| ≤ N/2; it describes the small (conjugate-pair)
/// eigenvalues and degrades toward the largest ones.
pub fn approx_eigenvalue(j: i64, n: u32) -> Complex64 {
    let nf = n as f64;
    let phase = std::f64::consts::PI * j as f64 / nf;
    let c = (phase / 2.0).cos();
    Complex64::from_polar(1.0 / (4.0 * c * c), phase)
}

/// Index of the formula eigenvalue nearest in phase.
pub fn nearest_formula_index(lambda: Complex64, n: u32) -> i64 {
    (lambda.arg() * n as f64 / std::f64::consts::PI).round() as i64
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenvalueRow {
    pub re: f64,
    pub im: f64,
    pub modulus: f64,
    pub phase: f64,
    pub is_expanding: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CurveSample {
    pub phi: f64,
    pub radius: f64,
}

/// Plot-ready spectrum document: eigenvalues of A and A⁻¹ plus samples of
/// the limiting curve.
#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub spec: OperatorSpec,
    pub n: u32,
    pub precision: Precision,
    pub entropy: EntropyReport,
    pub c_condition: CVerdict,
    pub eigenvalues: Vec<EigenvalueRow>,
    /// Spectrum of the inverse operator: the reciprocals 1/λ.
    pub inverse_eigenvalues: Vec<EigenvalueRow>,
    pub curve: Vec<CurveSample>,
    pub warnings: Vec<SpectralWarning>,
}

fn row_of(l: Complex64) -> EigenvalueRow {
    EigenvalueRow {
        re: l.re,
        im: l.im,
        modulus: l.norm(),
        phase: l.arg(),
        is_expanding: l.norm() > 1.0,
    }
}

pub fn spectrum_report(spec: &OperatorSpec) -> Result<SpectrumReport> {
    spectrum_report_with(spec, SpectralOptions::default(), 256)
}

pub fn spectrum_report_with(
    spec: &OperatorSpec,
    opts: SpectralOptions,
    curve_samples: usize,
) -> Result<SpectrumReport> {
    let sp = eigenvalues_with(spec, opts)?;
    let report = entropy(&sp);
    let verdict = check_c_condition(&sp, 1e-6);
    let rows: Vec<EigenvalueRow> = sp.eigenvalues().iter().copied().map(row_of).collect();
    let inverse: Vec<EigenvalueRow> = sp
        .eigenvalues()
        .iter()
        .filter(|l| l.norm() > 0.0)
        .map(|l| row_of(Complex64::new(1.0, 0.0) / l))
        .collect();
    let curve = (0..=curve_samples)
        .map(|k| {
            let phi = -std::f64::consts::PI
                + 2.0 * std::f64::consts::PI * k as f64 / curve_samples as f64;
            CurveSample { phi, radius: limiting_curve(phi) }
        })
        .collect();
    Ok(SpectrumReport {
        spec: *spec,
        n: sp.n(),
        precision: sp.precision(),
        entropy: report,
        c_condition: verdict,
        eigenvalues: rows,
        inverse_eigenvalues: inverse,
        curve,
        warnings: sp.warnings().to_vec(),
    })
}

/// CSV rows (re, im, modulus, phase, is_expanding) for a spectrum.
pub fn spectrum_csv(sp: &Spectrum) -> String {
    let mut out = String::from("re,im,modulus,phase,is_expanding\n");
    for l in sp.eigenvalues() {
        let row = row_of(*l);
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            row.re, row.im, row.modulus, row.phase, row.is_expanding
        ));
    }
    out
}
