//! Command-line front end: table validation, criterion certification, and
//! numeric identity verification.
//!
//! Exit codes: 0 all checks passed, 1 a mathematical check failed,
//! 2 usage or domain error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;

use theta_cert::criteria::{
    self, build_criterion, certify_nonvanishing, CriteriaError, Target,
};
use theta_cert::report::{
    record_from_certificate, record_from_entry, record_from_identity,
    records_from_validation, RunReport,
};
use theta_cert::tables;
use theta_cert::theta::{
    verify_duplication, verify_jacobi, verify_modular_vanishing, verify_product_form,
    TauPoint, ThetaError,
};

#[derive(Parser)]
#[command(
    name = "theta-cert",
    version,
    about = "Exact certificates and rigorous numerics for theta-constant modular polynomials"
)]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Inspect, validate, or load modular-polynomial tables.
    Tables {
        /// Run all structural invariants on the embedded tables.
        #[arg(long)]
        validate: bool,
        /// List embedded tables with their degrees (default action).
        #[arg(long)]
        list: bool,
        /// Parse and validate an external .mptab file.
        #[arg(long, value_name = "PATH")]
        load: Option<PathBuf>,
    },
    /// Produce a residue certificate that a criterion resultant is nonzero.
    Certify {
        /// theta2, theta3, or theta4.
        #[arg(long)]
        target: String,
        /// Index n of the pair (theta(n tau), theta(tau)).
        #[arg(long)]
        n: u32,
        /// Candidate specialization points Y = y0 (comma-separated).
        #[arg(long, value_delimiter = ',')]
        y: Option<Vec<i64>>,
        /// Candidate primes (comma-separated).
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
    },
    /// Numerically verify theta identities with rigorous enclosures.
    Verify {
        /// Tau as RE,IM (decimal; IM > 0).
        #[arg(long, value_name = "RE,IM")]
        tau: String,
        /// Working precision in bits.
        #[arg(long, default_value_t = 192)]
        prec: u64,
        /// Check Jacobi's identity and the seven duplication identities.
        #[arg(long)]
        identities: bool,
        /// Check modular-polynomial vanishing for this n (requires --target
        /// except for powers of two).
        #[arg(long)]
        n: Option<u64>,
        /// Target theta for --n.
        #[arg(long)]
        target: Option<String>,
        /// Check the product form over (u,v,w) triples for this odd n at
        /// X = 0, 1, 2.
        #[arg(long = "product-form", value_name = "N")]
        product_form: Option<u64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (mut report, code) = match cli.cmd {
        Cmd::Tables {
            validate,
            list,
            load,
        } => cmd_tables(validate, list, load),
        Cmd::Certify {
            target,
            n,
            y,
            primes,
        } => cmd_certify(&target, n, y, primes),
        Cmd::Verify {
            tau,
            prec,
            identities,
            n,
            target,
            product_form,
        } => cmd_verify(&tau, prec, identities, n, target.as_deref(), product_form),
    };
    report.wall_time_ms = start.elapsed().as_millis();
    match cli.format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => print!("{}", report.to_json()),
    }
    ExitCode::from(code)
}

fn exit_code(report: &RunReport) -> u8 {
    match report.verdict.as_str() {
        "pass" => 0,
        "fail" => 1,
        _ => 2,
    }
}

fn cmd_tables(validate: bool, list: bool, load: Option<PathBuf>) -> (RunReport, u8) {
    let mut report = RunReport::new("tables");
    if let Some(path) = load {
        report.input("load", path.display().to_string());
        match std::fs::read_to_string(&path) {
            Ok(text) => match tables::load_external(&text) {
                Ok(entry) => report.push(record_from_entry(&entry)),
                Err(e) => report.set_error(e.to_string()),
            },
            Err(e) => report.set_error(format!("cannot read {}: {e}", path.display())),
        }
        report.finalize();
        let code = exit_code(&report);
        return (report, code);
    }
    if validate {
        report.input("mode", "validate");
        for rec in records_from_validation(&tables::validate_tables()) {
            report.push(rec);
        }
    }
    if list || !validate {
        report.input("mode", if validate { "validate+list" } else { "list" });
        for entry in tables::embedded_entries() {
            report.push(record_from_entry(entry));
        }
    }
    // Entries from an external table directory, if configured.
    if let Ok(dir) = std::env::var("THETA_CERT_TABLE_PATH") {
        report.input("table_path", dir.clone());
        let mut paths: Vec<PathBuf> = match std::fs::read_dir(&dir) {
            Ok(rd) => rd
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "mptab"))
                .collect(),
            Err(e) => {
                report.set_error(format!("cannot read table dir {dir}: {e}"));
                report.finalize();
                let code = exit_code(&report);
                return (report, code);
            }
        };
        paths.sort();
        for p in paths {
            match std::fs::read_to_string(&p).map_err(|e| e.to_string()).and_then(
                |text| tables::load_external(&text).map_err(|e| e.to_string()),
            ) {
                Ok(entry) => report.push(
                    record_from_entry(&entry).with("source", p.display().to_string()),
                ),
                Err(e) => report.push(
                    theta_cert::report::CheckRecord::new(
                        format!("external_{}", p.display()),
                        false,
                    )
                    .with("error", e),
                ),
            }
        }
    }
    report.finalize();
    let code = exit_code(&report);
    (report, code)
}

fn cmd_certify(
    target: &str,
    n: u32,
    y: Option<Vec<i64>>,
    primes: Option<Vec<u64>>,
) -> (RunReport, u8) {
    let mut report = RunReport::new("certify");
    report.input("target", target);
    report.input("n", n.to_string());
    let target = match Target::from_str(target) {
        Ok(t) => t,
        Err(()) => {
            report.set_error(format!("unknown target `{target}` (theta2|theta3|theta4)"));
            return (report, 2);
        }
    };
    let y = y.unwrap_or_else(|| criteria::DEFAULT_Y_CANDIDATES.to_vec());
    let primes = primes.unwrap_or_else(|| criteria::DEFAULT_PRIMES.to_vec());
    report.input(
        "y_candidates",
        y.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","),
    );
    report.input(
        "primes",
        primes
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(","),
    );
    let spec = match build_criterion(target, n) {
        Ok(s) => s,
        Err(e) => {
            report.set_error(e.to_string());
            return (report, 2);
        }
    };
    report.input("lemma", format!("{:?}", spec.lemma));
    report.input("sylvester_dim", spec.sylvester_dim().to_string());
    match certify_nonvanishing(&spec, &y, &primes) {
        Ok(cert) => {
            report.push(record_from_certificate(&cert));
            report.finalize();
            (report, 0)
        }
        Err(e @ CriteriaError::NoCertificateFound { .. }) => {
            report.push(
                theta_cert::report::CheckRecord::new("certificate", false)
                    .with("error", e.to_string()),
            );
            report.finalize();
            (report, 1)
        }
        Err(e) => {
            report.set_error(e.to_string());
            (report, 2)
        }
    }
}

fn cmd_verify(
    tau: &str,
    prec: u64,
    identities: bool,
    n: Option<u64>,
    target: Option<&str>,
    product_form: Option<u64>,
) -> (RunReport, u8) {
    let mut report = RunReport::new("verify");
    report.input("tau", tau);
    report.input("prec", prec.to_string());
    let Some((re, im)) = tau.split_once(',') else {
        report.set_error(format!("--tau expects RE,IM, got `{tau}`"));
        return (report, 2);
    };
    let tau = match TauPoint::from_decimal(re, im, prec) {
        Ok(t) => t,
        Err(e) => {
            report.set_error(e);
            return (report, 2);
        }
    };
    // With no explicit selection, run the identity suite.
    let identities = identities || (n.is_none() && product_form.is_none());
    let result = run_verifications(
        &mut report,
        &tau,
        prec,
        identities,
        n,
        target,
        product_form,
    );
    if let Err(e) = result {
        report.set_error(e);
        return (report, 2);
    }
    report.finalize();
    let code = exit_code(&report);
    (report, code)
}

fn run_verifications(
    report: &mut RunReport,
    tau: &TauPoint,
    prec: u64,
    identities: bool,
    n: Option<u64>,
    target: Option<&str>,
    product_form: Option<u64>,
) -> Result<(), String> {
    let describe = |e: ThetaError| e.to_string();
    if identities {
        report.push(record_from_identity(&verify_jacobi(tau, prec).map_err(describe)?));
        for c in verify_duplication(tau, prec).map_err(describe)? {
            report.push(record_from_identity(&c));
        }
    }
    if let Some(n) = n {
        let target = match target {
            Some(t) => Target::from_str(t)
                .map_err(|()| format!("unknown target `{t}` (theta2|theta3|theta4)"))?,
            // the pow2 relation involves theta3 and theta4 jointly; default
            // for it and require --target otherwise
            None if n.is_power_of_two() => Target::Theta3,
            None => return Err("--n requires --target for non-power-of-two n".to_string()),
        };
        report.input("n", n.to_string());
        report.input("target", target.as_str());
        let c = verify_modular_vanishing(target, n, tau, prec).map_err(describe)?;
        report.push(record_from_identity(&c));
    }
    if let Some(pn) = product_form {
        report.input("product_form_n", pn.to_string());
        let xs: Vec<BigRational> = (0..3)
            .map(|k| BigRational::from_integer(BigInt::from(k)))
            .collect();
        for c in verify_product_form(pn, tau, &xs, prec).map_err(describe)? {
            report.push(record_from_identity(&c));
        }
    }
    Ok(())
}
