//! Command-line surface for the mixmax library: stream generation,
//! spectrum/entropy reports, period certification, the brute-force orbit
//! oracle, parameter scans, statistical smoke tests, and a jump-ahead
//! timing comparison.
//!
//! Exit codes: 0 on success, 1 when a requested verdict fails (certify
//! finds a non-maximal operator, stats detects a failure), 2 on usage or
//! input errors.

use std::io::{IsTerminal, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use mixmax::factor::FactorizationOfQ;
use mixmax::galois;
use mixmax::generator::DEFAULT_STREAM_SPACING_LOG2;
use mixmax::scan::{self, ScanConfig};
use mixmax::spectral::{self, SpectralOptions};
use mixmax::stats::{self, PassBand};
use mixmax::{Family, GeneratorState, Modulus, OperatorSpec};

#[derive(Parser)]
#[command(name = "mixmax", version, about = "Matrix-recurrence RNG toolkit over GF(p)")]
struct Cli {
    /// Worker threads for parallel sections (0 = rayon default).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SpecArgs {
    /// Operator family.
    #[arg(long, value_enum, default_value_t = FamilyArg::Two)]
    family: FamilyArg,
    /// Matrix dimension N. May instead come from the MIXMAX_SPEC JSON
    /// object {"family","N","s","m","b"}.
    #[arg(long)]
    n: Option<u32>,
    /// Tuning integer added at entry (3,2).
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    s: String,
    /// Band multiplier (three- and four-parameter families).
    #[arg(long, default_value = "1")]
    m: String,
    /// Band offset (four-parameter family).
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    b: String,
    /// Prime modulus, decimal.
    #[arg(long, default_value = "2305843009213693951")]
    p: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Two,
    Three,
    Four,
}

impl SpecArgs {
    fn resolve(&self) -> anyhow::Result<(OperatorSpec, Modulus)> {
        let modulus = Modulus::new(self.p.parse()?)?;
        if self.n.is_none() {
            if let Ok(json) = std::env::var("MIXMAX_SPEC") {
                let spec: OperatorSpec = serde_json::from_str(&json)
                    .map_err(|e| anyhow::anyhow!("MIXMAX_SPEC: {e}"))?;
                return Ok((spec, modulus));
            }
        }
        let n = self
            .n
            .ok_or_else(|| anyhow::anyhow!("--n is required (or set MIXMAX_SPEC)"))?;
        let family = match self.family {
            FamilyArg::Two => Family::TwoParam,
            FamilyArg::Three => Family::ThreeParam,
            FamilyArg::Four => Family::FourParam,
        };
        let m = match family {
            Family::TwoParam => 1,
            _ => self.m.parse()?,
        };
        let spec = OperatorSpec::new(family, n, self.s.parse()?, m, self.b.parse()?)?;
        for w in spec.validate(modulus) {
            eprintln!("warning: {w}");
        }
        Ok((spec, modulus))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Emit a stream of draws.
    Gen {
        #[command(flatten)]
        spec: SpecArgs,
        /// 64-bit seed word, expanded through the splitmix64 mixer.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Explicit comma-separated seed vector (overrides --seed).
        #[arg(long)]
        seed_vector: Option<String>,
        /// Jump to this parallel substream before emitting.
        #[arg(long)]
        stream_id: Option<u64>,
        /// Substream spacing exponent (stream k starts k·2^this steps in).
        #[arg(long, default_value_t = DEFAULT_STREAM_SPACING_LOG2)]
        stream_spacing: u32,
        #[arg(long, default_value_t = 10)]
        count: u64,
        #[arg(long, value_enum, default_value_t = GenFormat::Text)]
        format: GenFormat,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Allow raw binary output on a terminal.
        #[arg(long)]
        force: bool,
    },
    /// Full spectrum report (eigenvalues of A and A⁻¹, limiting curve).
    Spectrum {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
        /// Dimension cap for the dense eigenvalue solver.
        #[arg(long, default_value_t = spectral::DEFAULT_SPECTRAL_CAP)]
        cap: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Entropy and spectral extremes.
    Entropy {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = spectral::DEFAULT_SPECTRAL_CAP)]
        cap: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maximal-period certification (exit 1 if not maximal).
    Certify {
        #[command(flatten)]
        spec: SpecArgs,
        /// Factorization of q as "prime multiplicity" lines.
        #[arg(long)]
        factors: Option<PathBuf>,
        /// Only run the cheap half: irreducibility and A^q ≡ I.
        #[arg(long)]
        cond1_only: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Brute-force period of a seed at tiny parameters.
    Oracle {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        seed_vector: String,
        /// Also enumerate the full orbit partition.
        #[arg(long)]
        orbits: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scan candidate s values and rank them.
    Scan {
        #[command(flatten)]
        spec: SpecArgs,
        /// Comma-separated candidate s values.
        #[arg(long, allow_hyphen_values = true)]
        s_list: String,
        #[arg(long)]
        factors: Option<PathBuf>,
        /// Entropy acceptability threshold.
        #[arg(long, default_value_t = scan::DEFAULT_ENTROPY_THRESHOLD)]
        threshold: f64,
        #[arg(long, value_enum, default_value_t = ScanFormat::Json)]
        format: ScanFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Statistical smoke tests (exit 1 on any failure).
    Stats {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 10_000_000)]
        draws: u64,
        #[arg(long, default_value_t = 1000)]
        bins: usize,
        #[arg(long, default_value_t = 32)]
        grid: usize,
        /// Test autocorrelation at lags 1..=this.
        #[arg(long, default_value_t = 64)]
        max_lag: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 0.001)]
        fail_low: f64,
        #[arg(long, default_value_t = 0.999)]
        fail_high: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time jump-ahead against sequential stepping.
    SkipBench {
        #[command(flatten)]
        spec: SpecArgs,
        /// Steps to jump, decimal (may be astronomically large).
        #[arg(long, default_value = "1000000")]
        k: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenFormat {
    /// One decimal residue per line.
    Text,
    /// 8-byte little-endian residues.
    Raw,
    /// 8-byte little-endian IEEE doubles in [0,1).
    F64,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScanFormat {
    Json,
    Table,
}

fn main() {
    let cli = Cli::parse();
    if cli.jobs > 0 {
        #[cfg(feature = "parallel")]
        let _ = mixmax::configure_threads(cli.jobs);
    }
    match run(cli.command) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn emit_json<T: serde::Serialize>(
    schema: &str,
    value: &T,
    out: Option<&PathBuf>,
) -> anyhow::Result<()> {
    let mut doc = serde_json::to_value(value)?;
    if let Some(obj) = doc.as_object_mut() {
        obj.insert("schema".into(), serde_json::Value::String(schema.into()));
    }
    let mut text = serde_json::to_string_pretty(&doc)?;
    text.push('\n');
    emit(&text, out)
}

fn parse_seed_vector(text: &str) -> anyhow::Result<Vec<u64>> {
    text.split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|e| anyhow::anyhow!("seed vector: {e}")))
        .collect()
}

fn run(command: Command) -> anyhow::Result<i32> {
    match command {
        Command::Gen {
            spec,
            seed,
            seed_vector,
            stream_id,
            stream_spacing,
            count,
            format,
            out,
            force,
        } => {
            let (spec, modulus) = spec.resolve()?;
            let mut state = match seed_vector {
                Some(text) => {
                    GeneratorState::seed_from_vector(spec, modulus, &parse_seed_vector(&text)?)?
                }
                None => GeneratorState::seed_from_word(spec, modulus, seed),
            };
            if let Some(id) = stream_id {
                state = state.derive_stream_spaced(id, stream_spacing);
            }
            let binary = !matches!(format, GenFormat::Text);
            if binary && out.is_none() && std::io::stdout().is_terminal() && !force {
                anyhow::bail!("refusing to write binary to a terminal (use --force or --out)");
            }
            let mut sink: Box<dyn Write> = match &out {
                Some(path) => Box::new(std::io::BufWriter::new(std::fs::File::create(path)?)),
                None => Box::new(std::io::BufWriter::new(std::io::stdout().lock())),
            };
            match format {
                GenFormat::Text => {
                    for _ in 0..count {
                        writeln!(sink, "{}", state.next_residue())?;
                    }
                }
                GenFormat::Raw => {
                    for _ in 0..count {
                        sink.write_all(&state.next_residue().to_le_bytes())?;
                    }
                }
                GenFormat::F64 => {
                    for _ in 0..count {
                        sink.write_all(&state.next_unit().to_le_bytes())?;
                    }
                }
            }
            sink.flush()?;
            Ok(0)
        }
        Command::Spectrum { spec, format, cap, out } => {
            let (spec, _modulus) = spec.resolve()?;
            let opts = SpectralOptions { cap, force_precision: None };
            match format {
                ReportFormat::Json => {
                    let report = spectral::spectrum_report_with(&spec, opts, 256)?;
                    emit_json("mixmax.spectrum/1", &report, out.as_ref())?;
                }
                ReportFormat::Csv => {
                    let sp = spectral::eigenvalues_with(&spec, opts)?;
                    emit(&spectral::spectrum_csv(&sp), out.as_ref())?;
                }
            }
            Ok(0)
        }
        Command::Entropy { spec, cap, out } => {
            let (spec, _modulus) = spec.resolve()?;
            let sp = spectral::eigenvalues_with(&spec, SpectralOptions { cap, force_precision: None })?;
            let report = spectral::entropy(&sp);
            emit_json("mixmax.entropy/1", &report, out.as_ref())?;
            Ok(0)
        }
        Command::Certify { spec, factors, cond1_only, out } => {
            let (spec, modulus) = spec.resolve()?;
            if cond1_only {
                let report = galois::check_condition1(&spec, modulus)?;
                emit_json("mixmax.condition1/1", &report, out.as_ref())?;
                return Ok(if report.cond1 && report.irreducible { 0 } else { 1 });
            }
            let factors = match factors {
                Some(path) => FactorizationOfQ::from_file(&path)?,
                None => {
                    let q = galois::q_of(modulus.p(), spec.n());
                    FactorizationOfQ::compute(&q)?
                }
            };
            let cert = galois::certify_max_period(&spec, modulus, &factors)?;
            let maximal = cert.maximal;
            emit_json("mixmax.certificate/1", &cert, out.as_ref())?;
            Ok(if maximal { 0 } else { 1 })
        }
        Command::Oracle { spec, seed_vector, orbits, out } => {
            let (spec, modulus) = spec.resolve()?;
            let seed = parse_seed_vector(&seed_vector)?;
            let period = galois::brute_force_period(&spec, modulus, &seed)?;
            let summary = if orbits {
                Some(galois::enumerate_orbits(&spec, modulus)?)
            } else {
                None
            };
            let doc = serde_json::json!({
                "period": period,
                "q": galois::q_of(modulus.p(), spec.n()).to_string(),
                "orbits": summary,
            });
            emit_json("mixmax.oracle/1", &doc, out.as_ref())?;
            Ok(0)
        }
        Command::Scan { spec, s_list, factors, threshold, format, out } => {
            let (n, family, m, b, modulus) = {
                let (resolved, modulus) = SpecArgs { s: "0".into(), ..spec.clone() }.resolve()?;
                (resolved.n(), resolved.family(), resolved.m(), resolved.b(), modulus)
            };
            let candidates: Vec<i64> = s_list
                .split(',')
                .map(|t| t.trim().parse::<i64>().map_err(|e| anyhow::anyhow!("s list: {e}")))
                .collect::<anyhow::Result<_>>()?;
            let factors = match factors {
                Some(path) => Some(FactorizationOfQ::from_file(&path)?),
                None => None,
            };
            let mut cfg = ScanConfig::new(family, n, m, b, modulus);
            cfg.entropy_threshold = threshold;
            let reports = scan::scan_auto(&cfg, &candidates, factors.as_ref());
            match format {
                ScanFormat::Json => {
                    let doc = serde_json::json!({ "reports": reports });
                    emit_json("mixmax.scan/1", &doc, out.as_ref())?;
                }
                ScanFormat::Table => {
                    let rows: Vec<_> = reports
                        .iter()
                        .filter_map(|r| {
                            r.spec.map(|s| scan::TableRow {
                                n: s.n(),
                                s: s.s().to_string(),
                                m: s.m().to_string(),
                                entropy: r.entropy.unwrap_or(f64::NAN),
                                entropy_is_estimate: r.entropy_is_estimate,
                                log10_q: r.log10_period,
                            })
                        })
                        .collect();
                    emit(&scan::render_table(&rows), out.as_ref())?;
                }
            }
            Ok(0)
        }
        Command::Stats {
            spec,
            draws,
            bins,
            grid,
            max_lag,
            seed,
            fail_low,
            fail_high,
            out,
        } => {
            let (spec, modulus) = spec.resolve()?;
            let band = PassBand { low: fail_low, high: fail_high };
            let mut results = Vec::new();
            let mut g1 = GeneratorState::seed_from_word(spec, modulus, seed);
            results.push(stats::chisq_uniform(g1.iter_units(), draws, bins, band)?);
            let mut g2 = GeneratorState::seed_from_word(spec, modulus, seed.wrapping_add(1));
            results.push(stats::serial_pairs(g2.iter_units(), draws, grid, band)?);
            let mut g3 = GeneratorState::seed_from_word(spec, modulus, seed.wrapping_add(2));
            let lags: Vec<usize> = (1..=max_lag).collect();
            results.extend(stats::autocorrelation(g3.iter_units(), draws, &lags, band)?);
            let all_pass = results.iter().all(|r| r.pass);
            let doc = serde_json::json!({ "all_pass": all_pass, "results": results });
            emit_json("mixmax.stats/1", &doc, out.as_ref())?;
            Ok(if all_pass { 0 } else { 1 })
        }
        Command::SkipBench { spec, k, seed, out } => {
            let (spec, modulus) = spec.resolve()?;
            let k: BigUint = k.parse().map_err(|e| anyhow::anyhow!("bad k: {e}"))?;
            let base = GeneratorState::seed_from_word(spec, modulus, seed);

            let mut jumped = base.clone();
            let t0 = Instant::now();
            jumped.skip(&k);
            let skip_seconds = t0.elapsed().as_secs_f64();

            // measure sequential stepping on a bounded sample and extrapolate
            let sample: u64 = 1_000_000;
            let steps_to_run = std::cmp::min(
                k.clone(),
                BigUint::from(sample),
            );
            let steps_to_run_u64 = steps_to_run.to_string().parse::<u64>().unwrap_or(sample);
            let mut walker = base.clone();
            let t1 = Instant::now();
            for _ in 0..steps_to_run_u64 {
                walker.step();
            }
            let stepped_seconds = t1.elapsed().as_secs_f64();
            let ns_per_step = if steps_to_run_u64 > 0 {
                stepped_seconds * 1e9 / steps_to_run_u64 as f64
            } else {
                0.0
            };
            // bit-exactness check when the full walk was feasible
            let verified = if BigUint::from(steps_to_run_u64) == k {
                Some(walker == jumped)
            } else {
                None
            };
            let k_f64: f64 = k.to_string().parse().unwrap_or(f64::INFINITY);
            let doc = serde_json::json!({
                "n": spec.n(),
                "p": modulus.p().to_string(),
                "k": k.to_string(),
                "skip_seconds": skip_seconds,
                "steps_measured": steps_to_run_u64,
                "ns_per_step": ns_per_step,
                "sequential_seconds_extrapolated": ns_per_step * k_f64 / 1e9,
                "skip_matches_stepping": verified,
            });
            emit_json("mixmax.skip_bench/1", &doc, out.as_ref())?;
            if verified == Some(false) {
                return Ok(1);
            }
            Ok(0)
        }
    }
}
