//! Command-line front end: batch analysis of a plane cover, ramification
//! prediction and oracle queries, series expansion, the field-growth
//! experiment, and prediction-vs-oracle verification.
//!
//! Exit codes: 0 success; 1 verify found mismatches; 2 invalid input;
//! 3 degenerate or non-irreducible model; 4 not principal; 5 Hensel
//! precondition; 6 bad place; 7 critical fiber; 8 experiment scan failure;
//! 9 other geometry errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use ramcover::cover::{self, CoverError, PlaneCover};
use ramcover::dz;
use ramcover::field::FieldElement;
use ramcover::ideal::prime_splitting;
use ramcover::io as rio;
use ramcover::padic::local_ramified_oracle;
use ramcover::ram::{self, RamError};
use ramcover::rat::parse_rat;

#[derive(Parser)]
#[command(name = "ramcover", version, about = "ramification of plane-cover fibers, exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// JSON config with the field and cover specification
    #[arg(long)]
    config: PathBuf,
    /// write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// output format (json, csv where supported)
    #[arg(long, default_value = "json")]
    format: String,
}

#[derive(Subcommand)]
enum Command {
    /// Critical polynomial, profiles, and the bad set
    Analyze(Common),
    /// The bad set S alone
    BadSet(Common),
    /// Delta-criterion prediction at (tau, p)
    Predict {
        #[command(flatten)]
        common: Common,
        /// element of O_K: "n", "p/q", or "a,b" for a + b sqrt(d)
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        /// rational prime; every place above it is reported
        #[arg(long)]
        p: u64,
    },
    /// p-adic oracle on the fiber of tau at every place above p
    Oracle {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        tau: String,
        #[arg(long)]
        p: u64,
    },
    /// Power-series expansion of u at a point, with integrality report
    Puiseux {
        #[command(flatten)]
        common: Common,
        /// base point "tau;u" with coordinates like "0;0" or "1,2;0"
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// truncation order N
        #[arg(long, default_value_t = 8)]
        order: usize,
        /// check coefficient integrality at places of norm up to this bound
        #[arg(long, default_value_t = 50)]
        prime_bound: u64,
    },
    /// The field-growth experiment at height B
    Experiment {
        #[command(flatten)]
        common: Common,
        /// size bound B
        #[arg(long)]
        bound: String,
        /// window constant lambda (default: calibrated on places up to 60)
        #[arg(long)]
        lambda: Option<String>,
        /// directory for omega.csv and fields.csv
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Prediction-vs-oracle comparison; exits 1 iff mismatches exist
    Verify {
        #[command(flatten)]
        common: Common,
        /// inclusive integer range "lo..hi" for tau
        #[arg(long, allow_hyphen_values = true)]
        tau_range: String,
        /// compare at places of norm up to this bound (outside S)
        #[arg(long, default_value_t = 101)]
        prime_bound: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

fn ram_error_code(e: &RamError) -> u8 {
    match e {
        RamError::BadPlace(_) => 6,
        RamError::CriticalFiber => 7,
        RamError::NonIntegralTau => 2,
        RamError::WitnessNotUnique(_) => 6,
        RamError::Cover(c) => cover_error_code(c),
    }
}

fn cover_error_code(e: &CoverError) -> u8 {
    match e {
        CoverError::NotIrreducible(_) | CoverError::DegenerateModel(_) => 3,
        CoverError::NotOnCurve | CoverError::NotRegular | CoverError::RamifiedBasePoint => 9,
    }
}

fn load_cover(common: &Common) -> Result<PlaneCover, Failure> {
    let text = fs::read_to_string(&common.config)
        .map_err(|e| fail(2, format!("cannot read {}: {}", common.config.display(), e)))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| {
        fail(
            2,
            format!(
                "{}: invalid JSON at line {} column {}",
                common.config.display(),
                e.line(),
                e.column()
            ),
        )
    })?;
    rio::parse_cover_config(&value).map_err(|e| {
        let code = if e.0.contains("irreducible") || e.0.contains("degenerate") { 3 } else { 2 };
        fail(code, format!("{}: {}", common.config.display(), e))
    })
}

fn emit(common: &Common, text: String) -> Result<(), Failure> {
    match &common.out {
        None => {
            println!("{}", text);
            Ok(())
        }
        Some(path) => fs::write(path, text + "\n")
            .map_err(|e| fail(2, format!("cannot write {}: {}", path.display(), e))),
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Analyze(common) => {
            let cover = load_cover(&common)?;
            let (crit, bad) =
                ram::analyze(&cover).map_err(|e| fail(ram_error_code(&e), e.to_string()))?;
            let report = rio::analyze_json(&cover, &crit, &bad);
            emit(&common, serde_json::to_string_pretty(&report).unwrap())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::BadSet(common) => {
            let cover = load_cover(&common)?;
            let (_, bad) =
                ram::analyze(&cover).map_err(|e| fail(ram_error_code(&e), e.to_string()))?;
            emit(&common, serde_json::to_string_pretty(&rio::bad_set_json(&bad)).unwrap())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Predict { common, tau, p } => {
            let cover = load_cover(&common)?;
            let (crit, bad) =
                ram::analyze(&cover).map_err(|e| fail(ram_error_code(&e), e.to_string()))?;
            let tau =
                rio::parse_element_str(&tau, cover.field()).map_err(|e| fail(2, e.to_string()))?;
            let mut rows = Vec::new();
            for place in prime_splitting(p, cover.field()) {
                let pred = ram::predict(&cover, &crit, &bad, &tau, &place)
                    .map_err(|e| fail(ram_error_code(&e), e.to_string()))?;
                rows.push(serde_json::json!({
                    "place": rio::place_json(&place),
                    "prediction": rio::prediction_json(&pred, &crit),
                }));
            }
            let report = serde_json::json!({
                "tau": rio::element_json(&tau),
                "p": p,
                "places": rows,
            });
            emit(&common, serde_json::to_string_pretty(&report).unwrap())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle { common, tau, p } => {
            let cover = load_cover(&common)?;
            let tau =
                rio::parse_element_str(&tau, cover.field()).map_err(|e| fail(2, e.to_string()))?;
            let factors = ram::fiber_factors(&cover, &tau);
            let mut rows = Vec::new();
            for place in prime_splitting(p, cover.field()) {
                let status = ram::fiber_ramified_at(&cover, &tau, &place);
                let detail: Vec<Value> = factors
                    .iter()
                    .map(|g| {
                        let v = local_ramified_oracle(g, &place);
                        serde_json::json!({
                            "factor": rio::kpoly_json(g),
                            "verdict": rio::oracle_verdict_json(&v),
                        })
                    })
                    .collect();
                rows.push(serde_json::json!({
                    "place": rio::place_json(&place),
                    "status": status.as_str(),
                    "factors": detail,
                }));
            }
            let report = serde_json::json!({
                "tau": rio::element_json(&tau),
                "p": p,
                "places": rows,
            });
            emit(&common, serde_json::to_string_pretty(&report).unwrap())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Puiseux { common, point, order, prime_bound } => {
            let cover = load_cover(&common)?;
            let (tau_s, u_s) =
                point.split_once(';').ok_or_else(|| fail(2, "point must be \"tau;u\""))?;
            let tau =
                rio::parse_element_str(tau_s, cover.field()).map_err(|e| fail(2, e.to_string()))?;
            let u0 =
                rio::parse_element_str(u_s, cover.field()).map_err(|e| fail(2, e.to_string()))?;
            let series = cover::puiseux_expand(&cover, (tau, u0), order)
                .map_err(|e| fail(cover_error_code(&e), e.to_string()))?;
            let eis = cover::eisenstein_check(&series, cover.field(), prime_bound);
            let report = rio::puiseux_json(&series, Some((prime_bound, &eis.failures)));
            emit(&common, serde_json::to_string_pretty(&report).unwrap())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Experiment { common, bound, lambda, out_dir } => {
            let cover = load_cover(&common)?;
            let (crit, bad) =
                ram::analyze(&cover).map_err(|e| fail(ram_error_code(&e), e.to_string()))?;
            let b = parse_rat(&bound).ok_or_else(|| fail(2, "bad bound"))?;
            let lam = match lambda {
                Some(s) => parse_rat(&s).ok_or_else(|| fail(2, "bad lambda"))?,
                None => dz::calibrate_lambda(&cover, &crit, &bad, 60),
            };
            let rep = dz::run_experiment(&cover, &crit, &bad, &b, &lam)
                .map_err(|e| fail(8, e.to_string()))?;
            let dir = out_dir.unwrap_or_else(|| PathBuf::from("."));
            fs::create_dir_all(&dir)
                .map_err(|e| fail(2, format!("cannot create {}: {}", dir.display(), e)))?;
            fs::write(dir.join("omega.csv"), rio::omega_csv(&rep))
                .map_err(|e| fail(2, format!("omega.csv: {}", e)))?;
            let fields = dz::distinct_field_count(&cover, &b);
            fs::write(dir.join("fields.csv"), rio::fields_csv(&fields.signatures))
                .map_err(|e| fail(2, format!("fields.csv: {}", e)))?;
            emit(&common, serde_json::to_string_pretty(&rio::experiment_json(&rep)).unwrap())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { common, tau_range, prime_bound } => {
            let cover = load_cover(&common)?;
            let (crit, bad) =
                ram::analyze(&cover).map_err(|e| fail(ram_error_code(&e), e.to_string()))?;
            let (lo, hi) =
                tau_range.split_once("..").ok_or_else(|| fail(2, "tau-range must be \"lo..hi\""))?;
            let lo: i64 = lo.trim().parse().map_err(|_| fail(2, "bad range start"))?;
            let hi: i64 = hi.trim().parse().map_err(|_| fail(2, "bad range end"))?;
            if lo > hi {
                return Err(fail(2, "empty tau range"));
            }
            let taus: Vec<FieldElement> = (lo..=hi).map(FieldElement::from_int).collect();
            let rep = ram::cross_validate(&cover, &crit, &bad, &taus, prime_bound);
            let text = if common.format == "csv" {
                rio::verify_csv(&rep, &crit)
            } else {
                serde_json::to_string_pretty(&rio::verify_json(&rep)).unwrap()
            };
            emit(&common, text)?;
            if rep.mismatches > 0 {
                return Ok(ExitCode::from(1));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
