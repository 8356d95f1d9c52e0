//! Dialect dispatch: evaluate a parsed expression in one of the kernel
//! algebras and print kernel elements back in the same grammar.

use std::fmt;
use std::str::FromStr;

use qpadic::qalgebra::{PBWElement, PBWMonomial, UqAlgebra, Variant};
use qpadic::qdouble::{DoubleAlgebra, DoubleElement, DoubleMonomial};
use qpadic::scalars::{PPower, PadicScalar, QParams};
use qpadic::skewseries::{OreData, ScalarField, SkewElem, SkewSeriesAlgebra};
use qpadic::slq2::{CoordElement, CoordKind, Slq2};
use serde_json::json;

use crate::config::SessionConfig;
use crate::parser::{Expr, ParseError, Pos};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DialectTag {
    Uq,
    Breve,
    Double,
    Slq2,
    Skew,
}

impl DialectTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            DialectTag::Uq => "uq",
            DialectTag::Breve => "breve",
            DialectTag::Double => "double",
            DialectTag::Slq2 => "slq2",
            DialectTag::Skew => "skew",
        }
    }
}

impl FromStr for DialectTag {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "uq" => Ok(DialectTag::Uq),
            "breve" => Ok(DialectTag::Breve),
            "double" => Ok(DialectTag::Double),
            "slq2" => Ok(DialectTag::Slq2),
            "skew" => Ok(DialectTag::Skew),
            other => Err(format!(
                "unknown dialect `{other}` (expected uq, breve, double, slq2 or skew)"
            )),
        }
    }
}

/// CLI-level error with the documented exit codes: 1 kernel, 2 parse.
#[derive(Debug)]
pub enum CliError {
    Parse(ParseError),
    Kernel(qpadic::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Kernel(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(e) => write!(f, "{e}"),
            CliError::Kernel(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<qpadic::Error> for CliError {
    fn from(e: qpadic::Error) -> Self {
        CliError::Kernel(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Uq(PBWElement),
    Double(DoubleElement),
    Coord(CoordElement),
    Skew(SkewElem<ScalarField>),
}

/// A configured session: parameters plus lazily constructed algebras.
pub struct Session {
    pub cfg: SessionConfig,
    pub qp: QParams,
}

impl Session {
    pub fn new(cfg: SessionConfig) -> CliResult<Session> {
        let qp = cfg.qparams()?;
        Ok(Session { cfg, qp })
    }

    pub fn uq(&self, variant: Variant) -> UqAlgebra {
        UqAlgebra::new(self.qp.clone(), variant)
    }

    pub fn double(&self) -> DoubleAlgebra {
        DoubleAlgebra::new(self.qp.clone())
    }

    pub fn slq2(&self) -> Slq2 {
        Slq2::new(self.qp.clone())
    }

    pub fn skew(&self) -> SkewSeriesAlgebra<ScalarField> {
        SkewSeriesAlgebra::new(ScalarField::new(self.qp.clone()), OreData::trivial(), 0)
    }

    pub fn eval(&self, tag: DialectTag, src: &str) -> CliResult<Value> {
        let expr = crate::parser::parse(src)?;
        match tag {
            DialectTag::Uq => {
                let ops = UqOps {
                    alg: self.uq(Variant::Standard),
                };
                Ok(Value::Uq(eval(&ops, &self.qp, &expr)?))
            }
            DialectTag::Breve => {
                let ops = UqOps {
                    alg: self.uq(Variant::Breve),
                };
                Ok(Value::Uq(eval(&ops, &self.qp, &expr)?))
            }
            DialectTag::Double => {
                let ops = DoubleOps { alg: self.double() };
                Ok(Value::Double(eval(&ops, &self.qp, &expr)?))
            }
            DialectTag::Slq2 => {
                let ops = CoordOps { alg: self.slq2() };
                Ok(Value::Coord(eval(&ops, &self.qp, &expr)?))
            }
            DialectTag::Skew => {
                let ops = SkewOps { alg: self.skew() };
                Ok(Value::Skew(eval(&ops, &self.qp, &expr)?))
            }
        }
    }

    pub fn print(&self, v: &Value) -> String {
        match v {
            Value::Uq(x) => print_uq(x),
            Value::Double(x) => print_double(x),
            Value::Coord(x) => print_coord(x),
            Value::Skew(x) => print_skew(x),
        }
    }

    pub fn value_to_json(&self, v: &Value) -> serde_json::Value {
        match v {
            Value::Uq(x) => {
                let alg = self.uq(x.variant);
                json!({"dialect": if x.variant == Variant::Breve { "breve" } else { "uq" },
                       "element": alg.element_to_json(x)})
            }
            Value::Double(x) => {
                json!({"dialect": "double", "element": self.double().element_to_json(x)})
            }
            Value::Coord(x) => {
                json!({"dialect": "slq2", "element": self.slq2().element_to_json(x)})
            }
            Value::Skew(x) => {
                let terms: Vec<_> = x
                    .coeffs
                    .iter()
                    .map(|(d, c)| json!({"deg": d, "coeff": c}))
                    .collect();
                json!({"dialect": "skew", "element": {"terms": terms}})
            }
        }
    }
}

// ----------------------------------------------------------------------
// generic evaluator
// ----------------------------------------------------------------------

trait Ops {
    type El: Clone;
    fn scalar(&self, c: PadicScalar) -> Self::El;
    fn add(&self, a: &Self::El, b: &Self::El) -> CliResult<Self::El>;
    fn neg(&self, a: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> CliResult<Self::El>;
    fn gen_pow(&self, name: &str, e: i64, pos: Pos) -> CliResult<Self::El>;
}

fn unknown_ident(name: &str, pos: Pos, dialect: &str) -> CliError {
    CliError::Parse(ParseError {
        pos,
        message: format!("unknown identifier `{name}` for dialect {dialect}"),
    })
}

fn negative_exponent(name: &str, pos: Pos) -> CliError {
    CliError::Parse(ParseError {
        pos,
        message: format!("generator `{name}` does not allow negative exponents"),
    })
}

fn eval<O: Ops>(ops: &O, qp: &QParams, expr: &Expr) -> CliResult<O::El> {
    match expr {
        Expr::Scalar(c) => Ok(ops.scalar(c.clone())),
        Expr::QLit => Ok(ops.scalar(qp.q().clone())),
        Expr::Gen(name, pos) => ops.gen_pow(name, 1, *pos),
        Expr::Neg(e) => Ok(ops.neg(&eval(ops, qp, e)?)),
        Expr::Add(a, b) => ops.add(&eval(ops, qp, a)?, &eval(ops, qp, b)?),
        Expr::Sub(a, b) => {
            let rhs = eval(ops, qp, b)?;
            ops.add(&eval(ops, qp, a)?, &ops.neg(&rhs))
        }
        Expr::Mul(a, b) => ops.mul(&eval(ops, qp, a)?, &eval(ops, qp, b)?),
        Expr::Pow(base, e, pos) => match &**base {
            Expr::Gen(name, gpos) => ops.gen_pow(name, *e, *gpos),
            Expr::QLit => Ok(ops.scalar(qp.q_pow(*e))),
            Expr::Scalar(c) => Ok(ops.scalar(c.pow(*e).map_err(CliError::Kernel)?)),
            _ => {
                if *e < 0 {
                    return Err(CliError::Parse(ParseError {
                        pos: *pos,
                        message: "negative exponents apply only to generators, q and scalars"
                            .into(),
                    }));
                }
                let b = eval(ops, qp, base)?;
                let mut acc = ops.scalar(PadicScalar::one());
                for _ in 0..*e {
                    acc = ops.mul(&acc, &b)?;
                }
                Ok(acc)
            }
        },
    }
}

struct UqOps {
    alg: UqAlgebra,
}

impl Ops for UqOps {
    type El = PBWElement;

    fn scalar(&self, c: PadicScalar) -> PBWElement {
        self.alg.scalar_elem(c)
    }

    fn add(&self, a: &PBWElement, b: &PBWElement) -> CliResult<PBWElement> {
        Ok(self.alg.add(a, b)?)
    }

    fn neg(&self, a: &PBWElement) -> PBWElement {
        self.alg.neg(a)
    }

    fn mul(&self, a: &PBWElement, b: &PBWElement) -> CliResult<PBWElement> {
        Ok(self.alg.mul(a, b)?)
    }

    fn gen_pow(&self, name: &str, e: i64, pos: Pos) -> CliResult<PBWElement> {
        let dialect = if self.alg.variant == Variant::Breve {
            "breve"
        } else {
            "uq"
        };
        let m = match name {
            "E" if e >= 0 => PBWMonomial::new(e as u32, 0, 0),
            "F" if e >= 0 => PBWMonomial::new(0, 0, e as u32),
            "E" | "F" => return Err(negative_exponent(name, pos)),
            "K" => PBWMonomial::new(0, e, 0),
            _ => return Err(unknown_ident(name, pos, dialect)),
        };
        Ok(self.alg.monomial_elem(m, PadicScalar::one()))
    }
}

struct DoubleOps {
    alg: DoubleAlgebra,
}

impl Ops for DoubleOps {
    type El = DoubleElement;

    fn scalar(&self, c: PadicScalar) -> DoubleElement {
        self.alg.monomial_elem(DoubleMonomial::ONE, c)
    }

    fn add(&self, a: &DoubleElement, b: &DoubleElement) -> CliResult<DoubleElement> {
        Ok(self.alg.add(a, b))
    }

    fn neg(&self, a: &DoubleElement) -> DoubleElement {
        self.alg.neg(a)
    }

    fn mul(&self, a: &DoubleElement, b: &DoubleElement) -> CliResult<DoubleElement> {
        Ok(self.alg.double_mul_relations(a, b))
    }

    fn gen_pow(&self, name: &str, e: i64, pos: Pos) -> CliResult<DoubleElement> {
        let m = match name {
            "E" if e >= 0 => DoubleMonomial::new(e as u32, 0, 0, 0),
            "F" if e >= 0 => DoubleMonomial::new(0, 0, 0, e as u32),
            "E" | "F" => return Err(negative_exponent(name, pos)),
            "K" => DoubleMonomial::new(0, e, 0, 0),
            "K_-" => DoubleMonomial::new(0, 0, e, 0),
            _ => return Err(unknown_ident(name, pos, "double")),
        };
        Ok(self.alg.monomial_elem(m, PadicScalar::one()))
    }
}

struct CoordOps {
    alg: Slq2,
}

impl Ops for CoordOps {
    type El = CoordElement;

    fn scalar(&self, c: PadicScalar) -> CoordElement {
        self.alg.scalar_mul(&c, &self.alg.one())
    }

    fn add(&self, a: &CoordElement, b: &CoordElement) -> CliResult<CoordElement> {
        Ok(self.alg.add(a, b))
    }

    fn neg(&self, a: &CoordElement) -> CoordElement {
        self.alg.neg(a)
    }

    fn mul(&self, a: &CoordElement, b: &CoordElement) -> CliResult<CoordElement> {
        Ok(self.alg.mul(a, b))
    }

    fn gen_pow(&self, name: &str, e: i64, pos: Pos) -> CliResult<CoordElement> {
        use qpadic::slq2::CoordGen;
        let g = match name {
            "a" => CoordGen::A,
            "b" => CoordGen::B,
            "c" => CoordGen::C,
            "d" => CoordGen::D,
            _ => return Err(unknown_ident(name, pos, "slq2")),
        };
        if e < 0 {
            return Err(negative_exponent(name, pos));
        }
        let word = vec![g; e as usize];
        Ok(self.alg.normalize(&word))
    }
}

struct SkewOps {
    alg: SkewSeriesAlgebra<ScalarField>,
}

impl Ops for SkewOps {
    type El = SkewElem<ScalarField>;

    fn scalar(&self, c: PadicScalar) -> Self::El {
        self.alg.embed(c)
    }

    fn add(&self, a: &Self::El, b: &Self::El) -> CliResult<Self::El> {
        Ok(self.alg.add(a, b)?)
    }

    fn neg(&self, a: &Self::El) -> Self::El {
        self.alg.neg(a)
    }

    fn mul(&self, a: &Self::El, b: &Self::El) -> CliResult<Self::El> {
        Ok(self.alg.skew_multiply(a, b)?)
    }

    fn gen_pow(&self, name: &str, e: i64, pos: Pos) -> CliResult<Self::El> {
        if name != "z" {
            return Err(unknown_ident(name, pos, "skew"));
        }
        if e < 0 {
            return Err(negative_exponent(name, pos));
        }
        Ok(self.alg.monomial(e as u32, PadicScalar::one()))
    }
}

// ----------------------------------------------------------------------
// printers (inverse of the grammar)
// ----------------------------------------------------------------------

fn push_term(out: &mut Vec<String>, coeff: &PadicScalar, gens: &str) {
    if gens.is_empty() {
        out.push(coeff.to_string());
    } else if coeff == &PadicScalar::one() {
        out.push(gens.to_string());
    } else if coeff == &(-&PadicScalar::one()) {
        out.push(format!("-{gens}"));
    } else {
        out.push(format!("{coeff}*{gens}"));
    }
}

fn gen_piece(name: &str, e: i64) -> Option<String> {
    match e {
        0 => None,
        1 => Some(name.to_string()),
        e => Some(format!("{name}^{e}")),
    }
}

fn join_terms(terms: Vec<String>) -> String {
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

pub fn print_uq(x: &PBWElement) -> String {
    let mut terms = Vec::new();
    for (m, c) in &x.terms {
        let gens: Vec<String> = [
            gen_piece("E", m.n_e as i64),
            gen_piece("K", m.n_k),
            gen_piece("F", m.n_f as i64),
        ]
        .into_iter()
        .flatten()
        .collect();
        push_term(&mut terms, c, &gens.join("*"));
    }
    join_terms(terms)
}

pub fn print_double(x: &DoubleElement) -> String {
    let mut terms = Vec::new();
    for (m, c) in &x.terms {
        let gens: Vec<String> = [
            gen_piece("E", m.n_e as i64),
            gen_piece("K", m.n_k),
            gen_piece("K_-", m.n_km),
            gen_piece("F", m.n_f as i64),
        ]
        .into_iter()
        .flatten()
        .collect();
        push_term(&mut terms, c, &gens.join("*"));
    }
    join_terms(terms)
}

pub fn print_coord(x: &CoordElement) -> String {
    let mut terms = Vec::new();
    for (m, c) in &x.terms {
        let lead = match m.kind {
            CoordKind::A => "a",
            CoordKind::D => "d",
        };
        let gens: Vec<String> = [
            gen_piece(lead, m.s as i64),
            gen_piece("c", m.r as i64),
            gen_piece("b", m.t as i64),
        ]
        .into_iter()
        .flatten()
        .collect();
        push_term(&mut terms, c, &gens.join("*"));
    }
    join_terms(terms)
}

pub fn print_skew(x: &SkewElem<ScalarField>) -> String {
    let mut terms = Vec::new();
    for (d, c) in &x.coeffs {
        let gens: Vec<String> = [gen_piece("z", *d as i64)].into_iter().flatten().collect();
        push_term(&mut terms, c, &gens.join("*"));
    }
    join_terms(terms)
}

/// Render a norm value.
pub fn print_ppower(n: &PPower) -> String {
    n.to_string()
}
