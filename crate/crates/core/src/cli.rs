//! Command-line front end. Every command produces a JSON document; the text
//! format is a rendering of the same data.
//!
//! Exit codes: 0 success, 2 validation error, 3 capacity guard,
//! 4 verification failure.

use std::fmt::Write as _;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::character::{
    graded_ktype_table, harmonic_table, hesselink_exponent, rational_weight, stable_agreement_sweep,
    stable_range, QuiverConfig, RationalWeight,
};
use crate::combinatorics::Partition;
use crate::error::Error;
use crate::lr::{lr_coefficient_classical, lr_coefficient_crystal, ClrQuery};
use crate::qseries::QSeries;
use crate::stable::{
    enumerate_distinguished_with_threads, separation_sides, stable_multiplicity_definition,
    stable_multiplicity_with_threads, KType, NodePair,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "quiver-harmonics", version, about = "Graded K-type multiplicities in cyclic-quiver harmonics")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Worker threads for tableau enumeration.
    #[arg(long, default_value_t = 1, global = true)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyMode {
    Definition,
    Character,
    Hesselink,
    Separation,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Stable multiplicity series of a K-type.
    StableMult {
        /// K-type as inline JSON or a path to a JSON file.
        #[arg(long)]
        ktype: String,
        #[arg(long)]
        max_degree: usize,
    },
    /// Distinguished tableau tuples with their lambda profiles.
    Distinguished {
        #[arg(long)]
        ktype: String,
        #[arg(long)]
        max_degree: usize,
    },
    /// Littlewood-Richardson coefficient, crystal and classical.
    Lr {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
    },
    /// Cross-check the stable formula against an independent route.
    Verify {
        #[arg(long, value_enum)]
        mode: VerifyMode,
        #[arg(long)]
        ktype: Option<String>,
        #[arg(long)]
        max_degree: usize,
        /// Node dimensions for `--mode character`, e.g. `2,2`.
        #[arg(long)]
        dims: Option<String>,
        /// Rank for `--mode hesselink` (default `max_degree + 1`).
        #[arg(long)]
        n: Option<usize>,
    },
    /// Generalized exponents of GL_n via Hesselink's formula.
    Exponents {
        #[arg(long)]
        n: Option<usize>,
        /// Dominant weight, e.g. `1,0,-1`.
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[arg(long)]
        max_degree: usize,
    },
    /// Graded K-type table of a small quiver.
    Oracle {
        #[arg(long)]
        dims: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        max_degree: usize,
    },
}

/// A validated command with its output settings.
#[derive(Debug, Clone)]
pub struct RunRequest {
    pub command: Command,
    pub format: Format,
    pub threads: usize,
}

impl From<Cli> for RunRequest {
    fn from(cli: Cli) -> Self {
        RunRequest { command: cli.command, format: cli.format, threads: cli.threads.max(1) }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub json: Value,
    pub text: String,
    pub exit_code: i32,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Report { json, text, exit_code: EXIT_OK }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("serializable"),
            Format::Text => self.text.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: &'static str,
    pub message: String,
    pub exit_code: i32,
}

impl CliError {
    fn validation(code: &'static str, message: impl Into<String>) -> Self {
        CliError { code, message: message.into(), exit_code: EXIT_VALIDATION }
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": { "code": self.code, "message": self.message, "exit_code": self.exit_code } })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.to_json()).expect("serializable"),
            Format::Text => format!("error [{}]: {}", self.code, self.message),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::WrongBasis { .. } => "wrong_basis",
            Error::InvalidPartition(_) => "invalid_partition",
            Error::InvalidTableau(_) => "invalid_tableau",
            Error::InvalidKType(_) => "invalid_ktype",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::NotDistinguished => "not_distinguished",
            Error::ShapeMismatch => "shape_mismatch",
            Error::ProfileNotPartition(_) => "profile_not_partition",
            Error::Stability(_) => "stability",
            Error::Capacity(_) => "capacity",
            Error::NotACharacter(_) => "not_a_character",
            Error::InvalidWeight(_) => "invalid_weight",
            Error::InvalidQuiver(_) => "invalid_quiver",
        };
        let exit_code = if matches!(e, Error::Capacity(_)) { EXIT_CAPACITY } else { EXIT_VALIDATION };
        CliError { code, message: e.to_string(), exit_code }
    }
}

/// Inline JSON when the argument starts with `{`, otherwise a file path.
pub fn load_ktype(arg: &str) -> Result<KType, CliError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(Path::new(arg))
            .map_err(|e| CliError::validation("io", format!("cannot read {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::validation("invalid_json", e.to_string()))
}

fn parse_ints(arg: &str) -> Result<Vec<i64>, CliError> {
    arg.trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<i64>()
                .map_err(|_| CliError::validation("invalid_number", format!("not an integer: {s:?}")))
        })
        .collect()
}

/// `3,2,1`, `[3,2,1]` or empty for the empty partition.
pub fn parse_partition(arg: &str) -> Result<Partition, CliError> {
    let ints = parse_ints(arg)?;
    if ints.iter().any(|&v| v < 0) {
        return Err(CliError::validation("invalid_partition", format!("negative part in {arg:?}")));
    }
    Ok(Partition::new(ints.into_iter().map(|v| v as usize).collect())?)
}

fn parse_dims(arg: &str) -> Result<QuiverConfig, CliError> {
    let ints = parse_ints(arg)?;
    if ints.iter().any(|&v| v <= 0) {
        return Err(CliError::validation("invalid_quiver", "dimensions must be positive"));
    }
    Ok(QuiverConfig::new(ints.into_iter().map(|v| v as usize).collect())?)
}

fn series_text(s: &QSeries) -> String {
    s.to_string()
}

pub fn run(req: &RunRequest) -> Result<Report, CliError> {
    match &req.command {
        Command::StableMult { ktype, max_degree } => {
            let nu = load_ktype(ktype)?;
            let s = stable_multiplicity_with_threads(&nu, *max_degree, req.threads);
            let mut json = serde_json::to_value(&s).expect("serializable");
            json["ktype"] = serde_json::to_value(&nu).expect("serializable");
            Ok(Report::ok(json, format!("m_nu^inf(q, {}) for nu = {nu}:\n{}", nu.k(), series_text(&s))))
        }
        Command::Distinguished { ktype, max_degree } => {
            let nu = load_ktype(ktype)?;
            let found = enumerate_distinguished_with_threads(&nu, *max_degree, req.threads);
            let mut text = String::new();
            let rows: Vec<Value> = found
                .iter()
                .map(|(t, p)| {
                    let lambdas: Vec<String> = p.lambdas.iter().map(ToString::to_string).collect();
                    let _ = writeln!(
                        text,
                        "{t}  lambda_min={}  lambdas=[{}]  degree={}",
                        p.lambda_min,
                        lambdas.join(" "),
                        p.degree
                    );
                    json!({
                        "tuple": t,
                        "lambda_min": p.lambda_min,
                        "lambdas": p.lambdas,
                        "alphas": p.alphas,
                        "degree": p.degree,
                    })
                })
                .collect();
            let _ = write!(text, "{} distinguished tuples up to degree {max_degree}", rows.len());
            Ok(Report::ok(json!({ "ktype": nu, "max_degree": max_degree, "tuples": rows }), text))
        }
        Command::Lr { lambda, alpha, nu } => {
            let q = ClrQuery::new(parse_partition(lambda)?, parse_partition(alpha)?, parse_partition(nu)?);
            let crystal = lr_coefficient_crystal(&q);
            let classical = lr_coefficient_classical(&q);
            let text = format!(
                "c^{}_{{{},{}}}: crystal {crystal}, classical {classical}",
                q.lambda, q.alpha, q.nu
            );
            Ok(Report::ok(
                json!({
                    "lambda": q.lambda,
                    "alpha": q.alpha,
                    "nu": q.nu,
                    "crystal": crystal,
                    "classical": classical,
                    "agree": crystal == classical,
                }),
                text,
            ))
        }
        Command::Verify { mode, ktype, max_degree, dims, n } => verify(req, *mode, ktype.as_deref(), *max_degree, dims.as_deref(), *n),
        Command::Exponents { n, weight, max_degree } => {
            let w = RationalWeight::new(parse_ints(weight)?)?;
            if let Some(n) = n {
                if *n != w.n() {
                    return Err(CliError::validation(
                        "invalid_weight",
                        format!("--n {n} but the weight has {} entries", w.n()),
                    ));
                }
            }
            let s = hesselink_exponent(&w, *max_degree);
            let mut json = serde_json::to_value(&s).expect("serializable");
            json["weight"] = serde_json::to_value(&w).expect("serializable");
            json["n"] = json!(w.n());
            Ok(Report::ok(json, format!("K_(lambda,0)(q) for lambda = {:?}:\n{}", w.entries(), series_text(&s))))
        }
        Command::Oracle { dims, k, max_degree } => {
            let cfg = parse_dims(dims)?;
            if let Some(k) = k {
                if *k != cfg.k() {
                    return Err(CliError::validation(
                        "invalid_quiver",
                        format!("--k {k} but {} dimensions were given", cfg.k()),
                    ));
                }
            }
            let ring = graded_ktype_table(&cfg, *max_degree)?;
            let harmonics = harmonic_table(&cfg, *max_degree)?;
            let mut text = format!(
                "quiver dims {:?}, k = {}, n = {}, degrees 0..={max_degree}\n",
                cfg.dims(),
                cfg.k(),
                cfg.n()
            );
            let rows: Vec<Value> = harmonics
                .iter()
                .map(|(nu, h)| {
                    let ring_mults: Vec<u64> =
                        ring.iter().map(|layer| layer.get(nu).copied().unwrap_or(0)).collect();
                    let _ = writeln!(text, "{nu}: C[p] {ring_mults:?}  H {}", series_text(h));
                    json!({ "ktype": nu, "coordinate_ring": ring_mults, "harmonic": h })
                })
                .collect();
            Ok(Report::ok(
                json!({
                    "dims": cfg.dims(),
                    "k": cfg.k(),
                    "n": cfg.n(),
                    "max_degree": max_degree,
                    "ktypes": rows,
                }),
                text.trim_end().to_string(),
            ))
        }
    }
}

fn verdict(mode: &str, pass: bool, mut json: Value, detail: String) -> Report {
    json["mode"] = json!(mode);
    json["pass"] = json!(pass);
    let text = format!("verify {mode}: {}\n{detail}", if pass { "PASS" } else { "FAIL" });
    Report {
        json,
        text: text.trim_end().to_string(),
        exit_code: if pass { EXIT_OK } else { EXIT_VERIFICATION },
    }
}

fn verify(
    req: &RunRequest,
    mode: VerifyMode,
    ktype: Option<&str>,
    max_degree: usize,
    dims: Option<&str>,
    n: Option<usize>,
) -> Result<Report, CliError> {
    let require_ktype = || {
        ktype
            .map(load_ktype)
            .unwrap_or_else(|| Err(CliError::validation("missing_argument", "--ktype is required for this mode")))
    };
    match mode {
        VerifyMode::Definition => {
            let nu = require_ktype()?;
            let theorem = stable_multiplicity_with_threads(&nu, max_degree, req.threads);
            let definition = stable_multiplicity_definition(&nu, max_degree);
            let pass = theorem == definition;
            let detail = format!("tuples:     {}\ndefinition: {}", series_text(&theorem), series_text(&definition));
            Ok(verdict(
                "definition",
                pass,
                json!({ "ktype": nu, "theorem": theorem, "definition": definition }),
                detail,
            ))
        }
        VerifyMode::Separation => {
            let nu = require_ktype()?;
            let (lhs, rhs) = separation_sides(&nu, max_degree);
            let pass = lhs == rhs;
            let detail = format!("branching sum:       {}\ninvariants x tuples: {}", series_text(&lhs), series_text(&rhs));
            Ok(verdict("separation", pass, json!({ "ktype": nu, "lhs": lhs, "rhs": rhs }), detail))
        }
        VerifyMode::Character => {
            let cfg = parse_dims(
                dims.ok_or_else(|| CliError::validation("missing_argument", "--dims is required for --mode character"))?,
            )?;
            let degree = max_degree.min(stable_range(&cfg));
            let nus = match ktype {
                Some(arg) => {
                    let nu = load_ktype(arg)?;
                    if !cfg.realizes(&nu) {
                        return Err(Error::Stability(format!("{nu} is not realizable on dims {:?}", cfg.dims())).into());
                    }
                    Some(vec![nu])
                }
                None => None,
            };
            let report = stable_agreement_sweep(&cfg, degree, nus)?;
            let pass = report.mismatches.is_empty();
            let mismatches: Vec<Value> = report
                .mismatches
                .iter()
                .map(|m| json!({ "ktype": m.ktype, "oracle": m.oracle, "stable": m.stable }))
                .collect();
            let mut detail = format!("{} K-types compared up to degree {degree}", report.checked);
            for m in &report.mismatches {
                let _ = write!(detail, "\n{}: oracle {} vs stable {}", m.ktype, series_text(&m.oracle), series_text(&m.stable));
            }
            Ok(verdict(
                "character",
                pass,
                json!({
                    "dims": cfg.dims(),
                    "degree": degree,
                    "checked": report.checked,
                    "mismatches": mismatches,
                }),
                detail,
            ))
        }
        VerifyMode::Hesselink => {
            let nu = match ktype {
                Some(arg) => load_ktype(arg)?,
                None => KType::new(vec![NodePair::new(Partition::column(1), Partition::column(1))])?,
            };
            if nu.k() != 1 {
                return Err(CliError::validation("invalid_ktype", "hesselink mode needs a K-type with k = 1"));
            }
            let n = n.unwrap_or(max_degree + 1);
            if n < max_degree + 1 {
                return Err(CliError::validation("stability", format!("need n >= max_degree + 1, got n = {n}")));
            }
            let pair = &nu.pairs()[0];
            let w = rational_weight(&pair.plus, &pair.minus, n)?;
            let hesselink = hesselink_exponent(&w, max_degree);
            let theorem = stable_multiplicity_with_threads(&nu, max_degree, req.threads);
            let pass = hesselink == theorem;
            let detail = format!("tuples:    {}\nhesselink: {}", series_text(&theorem), series_text(&hesselink));
            Ok(verdict(
                "hesselink",
                pass,
                json!({ "ktype": nu, "n": n, "weight": w, "theorem": theorem, "hesselink": hesselink }),
                detail,
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn req(command: Command) -> RunRequest {
        RunRequest { command, format: Format::Json, threads: 1 }
    }

    const ADJOINT: &str = r#"{"k":1,"nu":[{"plus":[1],"minus":[1]}]}"#;

    #[test]
    fn parses_partitions() {
        assert_eq!(parse_partition("3,2,1").unwrap(), Partition::new(vec![3, 2, 1]).unwrap());
        assert_eq!(parse_partition("[2,1]").unwrap(), Partition::new(vec![2, 1]).unwrap());
        assert_eq!(parse_partition("").unwrap(), Partition::empty());
        assert_eq!(parse_partition("1,2").unwrap_err().code, "invalid_partition");
        assert_eq!(parse_partition("a").unwrap_err().code, "invalid_number");
    }

    #[test]
    fn stable_mult_report() {
        let r = run(&req(Command::StableMult { ktype: ADJOINT.into(), max_degree: 4 })).unwrap();
        assert_eq!(r.json["coeffs"], json!([0, 1, 1, 1, 1]));
        assert_eq!(r.exit_code, EXIT_OK);
    }

    #[test]
    fn lr_report() {
        let r = run(&req(Command::Lr { lambda: "3,2,1".into(), alpha: "2,1".into(), nu: "2,1".into() })).unwrap();
        assert_eq!(r.json["crystal"], json!(2));
        assert_eq!(r.json["classical"], json!(2));
        assert_eq!(r.json["agree"], json!(true));
    }

    #[test]
    fn failed_verdict_exits_4() {
        let r = verdict("definition", false, json!({}), String::new());
        assert_eq!(r.exit_code, EXIT_VERIFICATION);
        assert_eq!(r.json["pass"], json!(false));
        assert!(r.text.starts_with("verify definition: FAIL"));
    }

    #[test]
    fn error_codes() {
        let e = run(&req(Command::StableMult { ktype: "{not json".into(), max_degree: 2 })).unwrap_err();
        assert_eq!((e.code, e.exit_code), ("invalid_json", EXIT_VALIDATION));
        let e = run(&req(Command::Oracle { dims: "4,4".into(), k: None, max_degree: 1 })).unwrap_err();
        assert_eq!((e.code, e.exit_code), ("capacity", EXIT_CAPACITY));
        let e = run(&req(Command::Oracle { dims: "2,2".into(), k: Some(3), max_degree: 1 })).unwrap_err();
        assert_eq!(e.code, "invalid_quiver");
        assert_eq!(e.to_json()["error"]["code"], json!("invalid_quiver"));
    }
}
