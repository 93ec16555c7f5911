//! Parameter scanning over candidate tuning values `s` and consolidated
//! quality reports combining entropy, the hyperbolicity verdict, and
//! period certification.
//!
//! Cheap filters run first (determinant, irreducibility); the optional
//! full certification runs only when a verified factorization of q is
//! supplied. Per-candidate failures are captured in the report instead of
//! aborting the scan, and report order is deterministic.

use serde::Serialize;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::Result;
use crate::factor::FactorizationOfQ;
use crate::field::Modulus;
use crate::galois::{self, PeriodCertificate};
use crate::operators::{Family, OperatorSpec};
use crate::spectral::{self, CVerdict, SpectralOptions};

/// Entropy below this is considered empirically unacceptable.
pub const DEFAULT_ENTROPY_THRESHOLD: f64 = 50.0;

#[derive(Clone, Copy, Debug)]
pub struct ScanConfig {
    pub family: Family,
    pub n: u32,
    pub m: u64,
    pub b: i64,
    pub modulus: Modulus,
    pub entropy_threshold: f64,
    pub spectral_cap: u32,
}

impl ScanConfig {
    pub fn new(family: Family, n: u32, m: u64, b: i64, modulus: Modulus) -> Self {
        ScanConfig {
            family,
            n,
            m,
            b,
            modulus,
            entropy_threshold: DEFAULT_ENTROPY_THRESHOLD,
            spectral_cap: spectral::DEFAULT_SPECTRAL_CAP,
        }
    }
}

/// Everything learned about one candidate `s`.
#[derive(Clone, Debug, Serialize)]
pub struct CandidateReport {
    pub s: String,
    pub spec: Option<OperatorSpec>,
    pub det_ok: Option<bool>,
    pub irreducible: Option<bool>,
    pub entropy: Option<f64>,
    pub entropy_is_estimate: bool,
    pub entropy_ok: Option<bool>,
    pub c_condition: Option<CVerdict>,
    pub certificate: Option<PeriodCertificate>,
    /// Decimal digit count of q = (p^N - 1)/(p - 1).
    pub log10_period: u64,
    pub error: Option<String>,
}

fn examine(cfg: &ScanConfig, s: i64, factors: Option<&FactorizationOfQ>) -> CandidateReport {
    let log10_period = galois::digits10(&galois::q_of(cfg.modulus.p(), cfg.n));
    let mut report = CandidateReport {
        s: s.to_string(),
        spec: None,
        det_ok: None,
        irreducible: None,
        entropy: None,
        entropy_is_estimate: false,
        entropy_ok: None,
        c_condition: None,
        certificate: None,
        log10_period,
        error: None,
    };
    let spec = match OperatorSpec::new(cfg.family, cfg.n, s, cfg.m, cfg.b) {
        Ok(spec) => spec,
        Err(e) => {
            report.error = Some(e.to_string());
            return report;
        }
    };
    report.spec = Some(spec);
    report.det_ok = Some(spec.det_mod(cfg.modulus) == 1);

    match galois::char_poly_mod(&spec, cfg.modulus) {
        Ok(poly) => report.irreducible = Some(galois::is_irreducible(&poly)),
        Err(e) => report.error = Some(e.to_string()),
    }

    if cfg.n <= cfg.spectral_cap {
        let opts = SpectralOptions { cap: cfg.spectral_cap, force_precision: None };
        match spectral::eigenvalues_with(&spec, opts) {
            Ok(sp) => {
                let rep = spectral::entropy(&sp);
                report.entropy = Some(rep.entropy);
                report.entropy_ok = Some(rep.entropy >= cfg.entropy_threshold);
                report.c_condition = Some(spectral::check_c_condition(&sp, 1e-6));
            }
            Err(e) => report.error = Some(e.to_string()),
        }
    } else {
        let est = spectral::entropy_asymptotic(cfg.n);
        report.entropy = Some(est);
        report.entropy_is_estimate = true;
        report.entropy_ok = Some(est >= cfg.entropy_threshold);
    }

    if let Some(f) = factors {
        match galois::certify_max_period(&spec, cfg.modulus, f) {
            Ok(cert) => report.certificate = Some(cert),
            Err(e) => report.error = Some(e.to_string()),
        }
    }
    report
}

fn sort_reports(reports: &mut [CandidateReport]) {
    reports.sort_by(|a, b| {
        let am = a.certificate.as_ref().map(|c| c.maximal).unwrap_or(false);
        let bm = b.certificate.as_ref().map(|c| c.maximal).unwrap_or(false);
        bm.cmp(&am)
            .then_with(|| {
                b.entropy
                    .unwrap_or(f64::NEG_INFINITY)
                    .partial_cmp(&a.entropy.unwrap_or(f64::NEG_INFINITY))
                    .unwrap()
            })
            .then_with(|| a.s.cmp(&b.s))
    });
}

/// Examines each candidate `s` sequentially.
pub fn scan(
    cfg: &ScanConfig,
    s_candidates: &[i64],
    factors: Option<&FactorizationOfQ>,
) -> Vec<CandidateReport> {
    let mut reports: Vec<CandidateReport> =
        s_candidates.iter().map(|&s| examine(cfg, s, factors)).collect();
    sort_reports(&mut reports);
    reports
}

/// Fan-out version of [`scan`]; report order is identical.
#[cfg(feature = "parallel")]
pub fn par_scan(
    cfg: &ScanConfig,
    s_candidates: &[i64],
    factors: Option<&FactorizationOfQ>,
) -> Vec<CandidateReport> {
    let mut reports: Vec<CandidateReport> =
        s_candidates.par_iter().map(|&s| examine(cfg, s, factors)).collect();
    sort_reports(&mut reports);
    reports
}

/// Dispatches on the `parallel` feature.
pub fn scan_auto(
    cfg: &ScanConfig,
    s_candidates: &[i64],
    factors: Option<&FactorizationOfQ>,
) -> Vec<CandidateReport> {
    #[cfg(feature = "parallel")]
    {
        par_scan(cfg, s_candidates, factors)
    }
    #[cfg(not(feature = "parallel"))]
    {
        scan(cfg, s_candidates, factors)
    }
}

/// One formatted table row: entropy and the period magnitude.
#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub n: u32,
    pub s: String,
    pub m: String,
    pub entropy: f64,
    pub entropy_is_estimate: bool,
    /// Exact decimal digit count of q.
    pub log10_q: u64,
}

/// Builds a table row; entropy is computed spectrally up to the cap and
/// estimated as 2N/π (flagged) beyond it.
pub fn table_row(spec: &OperatorSpec, modulus: Modulus, spectral_cap: u32) -> Result<TableRow> {
    let q = galois::q_of(modulus.p(), spec.n());
    let (entropy, is_estimate) = if spec.n() <= spectral_cap {
        let sp = spectral::eigenvalues_with(
            spec,
            SpectralOptions { cap: spectral_cap, force_precision: None },
        )?;
        (spectral::entropy(&sp).entropy, false)
    } else {
        (spectral::entropy_asymptotic(spec.n()), true)
    };
    Ok(TableRow {
        n: spec.n(),
        s: spec.s().to_string(),
        m: spec.m().to_string(),
        entropy,
        entropy_is_estimate: is_estimate,
        log10_q: galois::digits10(&q),
    })
}

/// Aligned-text rendering of a table, mirroring the reference layout.
pub fn render_table(rows: &[TableRow]) -> String {
    let mut out = String::from(format!(
        "{:>8} {:>22} {:>22} {:>12} {:>10}\n",
        "N", "s", "m", "entropy", "log10(q)"
    ));
    for r in rows {
        let h = if r.entropy_is_estimate {
            format!("~{:.1}", r.entropy)
        } else {
            format!("{:.1}", r.entropy)
        };
        out.push_str(&format!(
            "{:>8} {:>22} {:>22} {:>12} {:>10}\n",
            r.n, r.s, r.m, h, r.log10_q
        ));
    }
    out
}
