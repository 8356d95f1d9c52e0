//! Batch front-end for the kernel: parse algebra expressions in one of
//! five dialects, dispatch to kernel operations and print text or JSON.
//!
//! Exit codes: 0 success, 1 kernel/domain error, 2 parse error,
//! 3 check-suite failure.

pub mod config;
pub mod dialect;
pub mod parser;

use std::collections::HashMap;
use std::io::{BufRead, Write};
use std::path::PathBuf;

use clap::{Parser as ClapParser, Subcommand};
use qpadic::checks;
use qpadic::qalgebra::{RadiusSpec, Variant};
use qpadic::scalars::PPower;
use qpadic::weierstrass::{wdivide, wprepare};
use serde_json::json;

use config::{OutputFormat, SessionConfig};
use dialect::{CliError, CliResult, DialectTag, Session, Value};

#[derive(ClapParser, Debug)]
#[command(name = "qpadic", about = "Exact p-adic quantum-algebra calculator")]
pub struct Cli {
    /// Config file (key=value lines or a JSON object)
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Odd prime p
    #[arg(long, global = true)]
    pub p: Option<u64>,
    /// Square root of q, as an exact rational
    #[arg(long, global = true)]
    pub u: Option<String>,
    /// R_E = p^eE
    #[arg(long = "ee", global = true)]
    pub e_e: Option<i64>,
    /// R_F = p^eF
    #[arg(long = "ef", global = true)]
    pub e_f: Option<i64>,
    /// R_K = p^eK (must stay 0 for Hopf operations)
    #[arg(long = "ek", global = true)]
    pub e_k: Option<i64>,
    /// Precision floor exponent for iterative division
    #[arg(long, global = true)]
    pub floor: Option<i64>,
    /// Output format: text or json
    #[arg(long, global = true)]
    pub output: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse an expression and print its normal form
    Normalize {
        expr: String,
        #[arg(long, default_value = "uq")]
        dialect: DialectTag,
    },
    /// Weighted norm of an element (Gauss/dual norm per dialect)
    Norm {
        expr: String,
        #[arg(long, default_value = "uq")]
        dialect: DialectTag,
        /// Use the divided-power norm nu'
        #[arg(long)]
        nuprime: bool,
        /// Use the plain Gauss norm nu (default)
        #[arg(long)]
        nu: bool,
    },
    /// Gauss norm nu_R
    Nu {
        expr: String,
        #[arg(long, default_value = "uq")]
        dialect: DialectTag,
    },
    /// Divided-power norm nu'_R (uq/breve only)
    Nuprime {
        expr: String,
        #[arg(long, default_value = "uq")]
        dialect: DialectTag,
    },
    /// Dual norm of a coordinate-algebra element
    Dualnorm { expr: String },
    /// Duality pairing <x, y>: x in uq, y in slq2
    Pair { x: String, y: String },
    /// Breve pairing <x, y>: x in breve, y in slq2
    Brevepair { x: String, y: String },
    /// Coproduct
    Delta {
        expr: String,
        #[arg(long, default_value = "uq")]
        dialect: DialectTag,
    },
    /// Counit
    Epsilon {
        expr: String,
        #[arg(long, default_value = "uq")]
        dialect: DialectTag,
    },
    /// Antipode
    Antipode {
        expr: String,
        #[arg(long, default_value = "uq")]
        dialect: DialectTag,
    },
    /// Weierstrass division g = q*f + r in the skew dialect
    Wdiv { g: String, f: String },
    /// Weierstrass preparation of a regular element
    Wprep { f: String },
    /// Product in the quantum double
    Doublemul {
        x: String,
        y: String,
        /// Engine: relations (default) or formula
        #[arg(long, default_value = "relations")]
        engine: String,
    },
    /// Image in the quotient by the Cartan-identification ideal
    Quotient { expr: String },
    /// Run a named invariant suite (or `all`)
    Check { suite: String },
    /// Read expressions from stdin and print normal forms
    Repl {
        #[arg(long, default_value = "uq")]
        dialect: DialectTag,
    },
}

fn build_config(cli: &Cli, env: &HashMap<String, String>) -> CliResult<SessionConfig> {
    let mut cfg = SessionConfig::default();
    if let Some(path) = &cli.config {
        cfg.load_file(path)?;
    }
    cfg.load_env(env)?;
    if let Some(p) = cli.p {
        cfg.p = p;
    }
    if let Some(u) = &cli.u {
        cfg.u = u.clone();
    }
    if let Some(e) = cli.e_e {
        cfg.e_e = e;
    }
    if let Some(e) = cli.e_f {
        cfg.e_f = e;
    }
    if let Some(e) = cli.e_k {
        cfg.e_k = e;
    }
    if let Some(f) = cli.floor {
        cfg.precision_floor_exp = f;
    }
    if let Some(o) = &cli.output {
        cfg.output = match o.as_str() {
            "text" => OutputFormat::Text,
            "json" => OutputFormat::Json,
            other => {
                return Err(CliError::Kernel(qpadic::Error::Config(format!(
                    "output must be `text` or `json`, got `{other}`"
                ))))
            }
        };
    }
    Ok(cfg)
}

fn radius(cfg: &SessionConfig) -> RadiusSpec {
    RadiusSpec {
        e_e: cfg.e_e,
        e_f: cfg.e_f,
    }
}

fn element_output(session: &Session, v: &Value) -> String {
    match session.cfg.output {
        OutputFormat::Text => session.print(v),
        OutputFormat::Json => session.value_to_json(v).to_string(),
    }
}

fn scalar_output(session: &Session, c: &qpadic::PadicScalar) -> String {
    match session.cfg.output {
        OutputFormat::Text => c.to_string(),
        OutputFormat::Json => json!({ "value": c }).to_string(),
    }
}

fn norm_output(session: &Session, n: &PPower) -> String {
    match session.cfg.output {
        OutputFormat::Text => n.to_string(),
        OutputFormat::Json => json!({ "norm": n.to_string() }).to_string(),
    }
}

fn norm_of(session: &Session, v: &Value, prime: bool) -> CliResult<PPower> {
    let rs = radius(&session.cfg);
    Ok(match v {
        Value::Uq(x) => {
            let alg = session.uq(x.variant);
            if prime {
                alg.nu_prime_norm(x, rs)?
            } else {
                alg.nu_norm(x, rs)
            }
        }
        Value::Double(x) => {
            if prime {
                return Err(CliError::Kernel(qpadic::Error::Structure(
                    "nu' is defined on the enveloping-algebra dialects".into(),
                )));
            }
            session.double().nu_norm(x, rs)
        }
        Value::Coord(x) => session.slq2().dual_norm(x, rs),
        Value::Skew(x) => session.skew().gauss_norm(x),
    })
}

fn tensor_text<L: std::fmt::Display, R: std::fmt::Display>(
    terms: Vec<(L, R, qpadic::PadicScalar)>,
) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    terms
        .into_iter()
        .map(|(l, r, c)| format!("{c} * ({l}) (x) ({r})"))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn delta_output(session: &Session, tag: DialectTag, v: &Value) -> CliResult<String> {
    let one = qpadic::PadicScalar::one;
    let as_json = session.cfg.output == OutputFormat::Json;
    let (text, jsonv) = match v {
        Value::Uq(x) => {
            let alg = session.uq(x.variant);
            let d = alg.coproduct(x)?;
            let terms: Vec<_> = d
                .terms
                .iter()
                .map(|((l, r), c)| {
                    (
                        dialect::print_uq(&alg.monomial_elem(*l, one())),
                        dialect::print_uq(&alg.monomial_elem(*r, one())),
                        c.clone(),
                    )
                })
                .collect();
            let j = json!({"dialect": tag.as_str(), "tensor": terms.iter().map(|(l, r, c)| json!({"left": l, "right": r, "coeff": c})).collect::<Vec<_>>()});
            (tensor_text(terms), j)
        }
        Value::Double(x) => {
            let alg = session.double();
            let d = alg.double_coproduct(x);
            let terms: Vec<_> = d
                .terms
                .iter()
                .map(|((l, r), c)| {
                    (
                        dialect::print_double(&alg.monomial_elem(*l, one())),
                        dialect::print_double(&alg.monomial_elem(*r, one())),
                        c.clone(),
                    )
                })
                .collect();
            let j = json!({"dialect": "double", "tensor": terms.iter().map(|(l, r, c)| json!({"left": l, "right": r, "coeff": c})).collect::<Vec<_>>()});
            (tensor_text(terms), j)
        }
        Value::Coord(x) => {
            let alg = session.slq2();
            let d = alg.coproduct(x);
            let terms: Vec<_> = d
                .terms
                .iter()
                .map(|((l, r), c)| {
                    (
                        dialect::print_coord(&alg.monomial_elem(*l, one())),
                        dialect::print_coord(&alg.monomial_elem(*r, one())),
                        c.clone(),
                    )
                })
                .collect();
            let j = json!({"dialect": "slq2", "tensor": terms.iter().map(|(l, r, c)| json!({"left": l, "right": r, "coeff": c})).collect::<Vec<_>>()});
            (tensor_text(terms), j)
        }
        Value::Skew(_) => {
            return Err(CliError::Kernel(qpadic::Error::Structure(
                "the skew dialect has no coalgebra structure".into(),
            )))
        }
    };
    Ok(if as_json { jsonv.to_string() } else { text })
}

/// Run one command; returns (exit code, output lines).
pub fn execute(cli: Cli, env: &HashMap<String, String>) -> (i32, String) {
    match try_execute(cli, env) {
        Ok(out) => (0, out),
        Err(ExecError::Cli(e)) => (e.exit_code(), format!("error: {e}")),
        Err(ExecError::CheckFailed(out)) => (3, out),
    }
}

enum ExecError {
    Cli(CliError),
    CheckFailed(String),
}

impl<E: Into<CliError>> From<E> for ExecError {
    fn from(e: E) -> Self {
        ExecError::Cli(e.into())
    }
}

fn try_execute(cli: Cli, env: &HashMap<String, String>) -> Result<String, ExecError> {
    let cfg = build_config(&cli, env)?;
    let session = Session::new(cfg)?;
    let out = match &cli.command {
        Command::Normalize { expr, dialect } => {
            let v = session.eval(*dialect, expr)?;
            element_output(&session, &v)
        }
        Command::Norm {
            expr,
            dialect,
            nuprime,
            nu,
        } => {
            if *nuprime && *nu {
                return Err(CliError::Kernel(qpadic::Error::Config(
                    "--nu and --nuprime are mutually exclusive".into(),
                ))
                .into());
            }
            let v = session.eval(*dialect, expr)?;
            norm_output(&session, &norm_of(&session, &v, *nuprime)?)
        }
        Command::Nu { expr, dialect } => {
            let v = session.eval(*dialect, expr)?;
            norm_output(&session, &norm_of(&session, &v, false)?)
        }
        Command::Nuprime { expr, dialect } => {
            let v = session.eval(*dialect, expr)?;
            norm_output(&session, &norm_of(&session, &v, true)?)
        }
        Command::Dualnorm { expr } => {
            let v = session.eval(DialectTag::Slq2, expr)?;
            norm_output(&session, &norm_of(&session, &v, false)?)
        }
        Command::Pair { x, y } => {
            session.cfg.require_trivial_cartan_radius()?;
            let (Value::Uq(xe), Value::Coord(ye)) = (
                session.eval(DialectTag::Uq, x)?,
                session.eval(DialectTag::Slq2, y)?,
            ) else {
                unreachable!("dialects are fixed")
            };
            scalar_output(&session, &session.slq2().uq_pairing(&xe, &ye)?)
        }
        Command::Brevepair { x, y } => {
            session.cfg.require_trivial_cartan_radius()?;
            let (Value::Uq(xe), Value::Coord(ye)) = (
                session.eval(DialectTag::Breve, x)?,
                session.eval(DialectTag::Slq2, y)?,
            ) else {
                unreachable!("dialects are fixed")
            };
            scalar_output(&session, &session.slq2().breve_pairing(&xe, &ye)?)
        }
        Command::Delta { expr, dialect } => {
            session.cfg.require_trivial_cartan_radius()?;
            let v = session.eval(*dialect, expr)?;
            delta_output(&session, *dialect, &v)?
        }
        Command::Epsilon { expr, dialect } => {
            session.cfg.require_trivial_cartan_radius()?;
            let v = session.eval(*dialect, expr)?;
            let c = match &v {
                Value::Uq(x) => session.uq(x.variant).counit(x)?,
                Value::Double(x) => session.double().double_counit(x),
                Value::Coord(x) => session.slq2().counit(x),
                Value::Skew(_) => {
                    return Err(CliError::Kernel(qpadic::Error::Structure(
                        "the skew dialect has no coalgebra structure".into(),
                    ))
                    .into())
                }
            };
            scalar_output(&session, &c)
        }
        Command::Antipode { expr, dialect } => {
            session.cfg.require_trivial_cartan_radius()?;
            let v = session.eval(*dialect, expr)?;
            let sv = match &v {
                Value::Uq(x) => Value::Uq(session.uq(x.variant).antipode(x)?),
                Value::Double(x) => Value::Double(session.double().double_antipode(x)),
                Value::Coord(x) => Value::Coord(session.slq2().antipode(x)),
                Value::Skew(_) => {
                    return Err(CliError::Kernel(qpadic::Error::Structure(
                        "the skew dialect has no coalgebra structure".into(),
                    ))
                    .into())
                }
            };
            element_output(&session, &sv)
        }
        Command::Wdiv { g, f } => {
            let alg = session.skew();
            let (Value::Skew(ge), Value::Skew(fe)) = (
                session.eval(DialectTag::Skew, g)?,
                session.eval(DialectTag::Skew, f)?,
            ) else {
                unreachable!("dialects are fixed")
            };
            let floor = PPower::Pow(session.cfg.precision_floor_exp);
            let div = wdivide(&alg, &ge, &fe, floor)?;
            let residual = match div.residual_floor {
                PPower::Zero => "exact".to_string(),
                other => format!("residual <= {other}"),
            };
            match session.cfg.output {
                OutputFormat::Text => format!(
                    "q = {}\nr = {}\n{residual}",
                    dialect::print_skew(&div.quotient),
                    dialect::print_skew(&div.remainder),
                ),
                OutputFormat::Json => json!({
                    "quotient": session.value_to_json(&Value::Skew(div.quotient.clone()))["element"],
                    "remainder": session.value_to_json(&Value::Skew(div.remainder.clone()))["element"],
                    "residual": div.residual_floor.to_string(),
                })
                .to_string(),
            }
        }
        Command::Wprep { f } => {
            let alg = session.skew();
            let Value::Skew(fe) = session.eval(DialectTag::Skew, f)? else {
                unreachable!("dialect is fixed")
            };
            let floor = PPower::Pow(session.cfg.precision_floor_exp);
            let prep = wprepare(&alg, &fe, floor)?;
            match session.cfg.output {
                OutputFormat::Text => format!(
                    "w = {}\ne' = {}\ne_inv = {}",
                    dialect::print_skew(&prep.w),
                    dialect::print_skew(&prep.e_prime),
                    dialect::print_skew(&prep.e_inv),
                ),
                OutputFormat::Json => json!({
                    "w": session.value_to_json(&Value::Skew(prep.w.clone()))["element"],
                    "ePrime": session.value_to_json(&Value::Skew(prep.e_prime.clone()))["element"],
                    "eInv": session.value_to_json(&Value::Skew(prep.e_inv.clone()))["element"],
                    "residual": prep.residual_floor.to_string(),
                })
                .to_string(),
            }
        }
        Command::Doublemul { x, y, engine } => {
            let alg = session.double();
            let (Value::Double(xe), Value::Double(ye)) = (
                session.eval(DialectTag::Double, x)?,
                session.eval(DialectTag::Double, y)?,
            ) else {
                unreachable!("dialects are fixed")
            };
            let prod = match engine.as_str() {
                "relations" => alg.double_mul_relations(&xe, &ye),
                "formula" => alg.double_mul_formula(&xe, &ye)?,
                other => {
                    return Err(CliError::Kernel(qpadic::Error::Config(format!(
                        "engine must be `relations` or `formula`, got `{other}`"
                    )))
                    .into())
                }
            };
            element_output(&session, &Value::Double(prod))
        }
        Command::Quotient { expr } => {
            let Value::Double(xe) = session.eval(DialectTag::Double, expr)? else {
                unreachable!("dialect is fixed")
            };
            let uq = session.uq(Variant::Standard);
            let img = session.double().quotient_to_uq(&uq, &xe)?;
            element_output(&session, &Value::Uq(img))
        }
        Command::Check { suite } => {
            let outcomes = checks::run_suite(suite)?;
            let mut lines = Vec::new();
            let mut all_pass = true;
            for o in &outcomes {
                all_pass &= o.passed;
                lines.push(format!(
                    "{} {}: {}",
                    if o.passed { "PASS" } else { "FAIL" },
                    o.suite,
                    o.detail
                ));
            }
            let out = lines.join("\n");
            if !all_pass {
                return Err(ExecError::CheckFailed(out));
            }
            out
        }
        Command::Repl { dialect } => {
            let stdin = std::io::stdin();
            let mut out_lines = Vec::new();
            for line in stdin.lock().lines() {
                let line = line.map_err(|e| {
                    CliError::Kernel(qpadic::Error::Config(format!("stdin: {e}")))
                })?;
                let line = line.trim();
                if line.is_empty() {
                    continue;
                }
                if line == "quit" || line == "exit" {
                    break;
                }
                match session.eval(*dialect, line) {
                    Ok(v) => out_lines.push(element_output(&session, &v)),
                    Err(e) => out_lines.push(format!("error: {e}")),
                }
            }
            out_lines.join("\n")
        }
    };
    Ok(out)
}

/// Entry point used by the binary.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let env: HashMap<String, String> = std::env::vars().collect();
    let (code, out) = execute(cli, &env);
    let mut stream: Box<dyn Write> = if code == 0 || code == 3 {
        Box::new(std::io::stdout())
    } else {
        Box::new(std::io::stderr())
    };
    let _ = writeln!(stream, "{out}");
    code
}
