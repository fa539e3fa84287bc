//! `cosorbit`: JSON front end for the decision procedures.
//!
//! Every command prints one JSON line on stdout. Exit status is 0 for a
//! completed answer, 2 for bad input or a domain error and 3 when the
//! precision cap is hit.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cosorbit_core::algebraic::{
    alg_arith_with, alg_inv, alg_pow, alg_sqrt_nonneg_with, isolate_roots, AlgebraicNumber, ArithOp,
};
use cosorbit_core::arith::{ComplexBox, RatPoly};
use cosorbit_core::continuize::{
    ep_square_and_rewrite, square_and_rewrite, Angle, BaseTag, CosSumExpr, CosTerm, ExpPolyCosExpr,
    ExpPolyCosTerm,
};
use cosorbit_core::engine::{decide_cos_with, decide_rcos_contracting_with, CosInstance, RCosInstance};
use cosorbit_core::field::{membership_with, FieldElement, NumberField};
use cosorbit_core::lrs::{cos_recurrence, cos_recurrence_algebraic, LinearRecurrence, LrsValue};
use cosorbit_core::power::{solve_power_with, Certificate, Decision, PowerInstance};
use cosorbit_core::{Error, Precision};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Deserialize;
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(name = "cosorbit", version, about = "Decide cos(t theta) = c and related orbit problems")]
struct Cli {
    /// Hard cap on working precision, in bits.
    #[arg(long, global = true, default_value_t = 65536)]
    precision_cap_bits: u32,
    /// Smallest admissible exponent.
    #[arg(long, global = true, default_value_t = 0)]
    t_min: u64,
    /// Output is always JSON; accepted for compatibility.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Is cos(t theta) = c for some t, given cos theta = alpha?
    CosDecide {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
    },
    /// Is r^t cos(t theta) = c for some t, given r cos theta and r^2 (r < 1)?
    RcosDecide {
        #[arg(long, allow_hyphen_values = true)]
        r_cos: String,
        #[arg(long, allow_hyphen_values = true)]
        r_sq: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
    },
    /// Is base^t = target in the field generated by a root of the minpoly?
    PowerSolve {
        #[command(flatten)]
        field: FieldArgs,
        /// Power-basis coordinates; defaults to the generator.
        #[arg(long, allow_hyphen_values = true)]
        base: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        target: String,
    },
    /// Does w lie in the field?
    Membership {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
    },
    /// Evaluate an expression tree of algebraic numbers.
    Minpoly {
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
    },
    /// Linear recurrence terms and value scans.
    Lrs {
        #[command(subcommand)]
        cmd: LrsCommand,
    },
    /// Rewrite a cosine-sum equation into a single real-variable instance.
    Continuize {
        #[arg(long)]
        expr_file: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
    },
}

#[derive(Args)]
struct FieldArgs {
    /// Generator polynomial, coefficients from the constant term up.
    #[arg(long, allow_hyphen_values = true)]
    field_minpoly: String,
    /// Disk `{"x","y","r"}` picking the generator; default is the root with
    /// the largest imaginary part, then the largest real part.
    #[arg(long, allow_hyphen_values = true)]
    field_box: Option<String>,
}

#[derive(Args)]
struct RecArgs {
    /// Recurrence coefficients `c_1, ..., c_k` of `a_n = sum c_i a_(n-i)`.
    #[arg(long, allow_hyphen_values = true, requires = "initial", conflicts_with = "alpha")]
    coeffs: Option<String>,
    /// Initial terms `a_0, ..., a_(k-1)`.
    #[arg(long, allow_hyphen_values = true)]
    initial: Option<String>,
    /// Use the cosine recurrence `a_t = cos(t theta)` with `cos theta = alpha`.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
}

#[derive(Subcommand)]
enum LrsCommand {
    /// Term `a_t`, counting from `a_0`.
    Eval {
        #[command(flatten)]
        rec: RecArgs,
        #[arg(long)]
        t: u64,
    },
    /// Every `t` in `[t_min, t_max]` with `a_t = value`.
    Scan {
        #[command(flatten)]
        rec: RecArgs,
        #[arg(long, allow_hyphen_values = true)]
        value: String,
        #[arg(long)]
        t_max: u64,
    },
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Out = Result<Value, Failure>;

fn bad(msg: impl Into<String>) -> Failure {
    Failure::Input(msg.into())
}

fn parse_json(s: &str, what: &str) -> Result<Value, Failure> {
    serde_json::from_str(s).map_err(|e| bad(format!("{what}: {e}")))
}

fn rational(s: &str) -> Result<BigRational, Failure> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|_| bad(format!("not a rational: {s:?}")))
}

fn rational_value(v: &Value) -> Result<BigRational, Failure> {
    match v {
        Value::String(s) => rational(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => rational(&n.to_string()),
        _ => Err(bad(format!("expected a rational string, got {v}"))),
    }
}

fn rational_list(v: &Value) -> Result<Vec<BigRational>, Failure> {
    v.as_array()
        .ok_or_else(|| bad(format!("expected an array, got {v}")))?
        .iter()
        .map(rational_value)
        .collect()
}

/// JSON array of rationals, or the tuple form `(a,b,...)`.
fn coords(s: &str) -> Result<Vec<BigRational>, Failure> {
    let t = s.trim();
    if let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        return inner.split(',').map(rational).collect();
    }
    rational_list(&parse_json(t, "coordinates")?)
}

fn rat_str(q: &BigRational) -> String {
    q.to_string()
}

fn rat_strs(v: &[BigRational]) -> Vec<String> {
    v.iter().map(rat_str).collect()
}

#[derive(Deserialize)]
struct BoxJson {
    x: Value,
    y: Value,
    r: Value,
}

fn complex_box(v: &Value) -> Result<ComplexBox, Failure> {
    let b: BoxJson = serde_json::from_value(v.clone()).map_err(|e| bad(format!("box: {e}")))?;
    let r = rational_value(&b.r)?;
    if r < BigRational::zero() {
        return Err(bad("box radius is negative"));
    }
    Ok(ComplexBox::new(rational_value(&b.x)?, rational_value(&b.y)?, r))
}

fn minpoly(v: &Value) -> Result<RatPoly, Failure> {
    let p = RatPoly::new(rational_list(v)?);
    if p.degree() == 0 {
        return Err(bad("polynomial must have positive degree"));
    }
    Ok(p)
}

/// Root of `p` with the largest imaginary part, ties broken by real part.
fn default_root(p: &RatPoly, prec: &Precision) -> Result<AlgebraicNumber, Failure> {
    let bx = isolate_roots(p)
        .into_iter()
        .max_by(|a, b| {
            a.center_y()
                .cmp(b.center_y())
                .then_with(|| a.center_x().cmp(b.center_x()))
        })
        .ok_or_else(|| bad("polynomial has no roots"))?;
    Ok(AlgebraicNumber::from_poly_and_box_with(p, &bx, prec)?)
}

fn alg_value(v: &Value, prec: &Precision) -> Result<AlgebraicNumber, Failure> {
    match v {
        Value::String(_) | Value::Number(_) => Ok(AlgebraicNumber::from_rational(&rational_value(v)?)),
        Value::Object(m) => {
            if let Some(q) = m.get("rational") {
                return Ok(AlgebraicNumber::from_rational(&rational_value(q)?));
            }
            let p = minpoly(m.get("minpoly").ok_or_else(|| bad("missing \"minpoly\" or \"rational\""))?)?;
            match m.get("box") {
                Some(b) => Ok(AlgebraicNumber::from_poly_and_box_with(&p, &complex_box(b)?, prec)?),
                None => default_root(&p, prec),
            }
        }
        _ => Err(bad(format!("not an algebraic number: {v}"))),
    }
}

/// Accepts an AlgNumJson object or a bare rational.
fn alg(s: &str, prec: &Precision) -> Result<AlgebraicNumber, Failure> {
    if s.trim_start().starts_with(['{', '"']) {
        return alg_value(&parse_json(s, "algebraic number")?, prec);
    }
    Ok(AlgebraicNumber::from_rational(&rational(s)?))
}

fn alg_json(a: &AlgebraicNumber) -> Value {
    if let Some(q) = a.to_rational() {
        return json!({ "rational": rat_str(&q) });
    }
    let b = a.isolating_box();
    json!({
        "minpoly": rat_strs(a.minpoly().coeffs()),
        "box": {
            "x": rat_str(b.center_x()),
            "y": rat_str(b.center_y()),
            "r": rat_str(b.radius()),
        }
    })
}

fn decision_json(d: &Decision) -> Value {
    match d {
        Decision::Yes { witness } => json!({ "answer": "yes", "witness": witness }),
        Decision::No { certificate } => {
            let mut m = Map::new();
            m.insert("answer".into(), "no".into());
            m.insert("certificate".into(), certificate.as_str().into());
            if let Certificate::BoundExhausted { bound } = certificate {
                m.insert("bound".into(), (*bound).into());
            }
            Value::Object(m)
        }
    }
}

fn field(args: &FieldArgs, prec: &Precision) -> Result<NumberField, Failure> {
    let p = minpoly(&parse_json(&args.field_minpoly, "field minpoly")?)?;
    let g = match &args.field_box {
        Some(b) => AlgebraicNumber::from_poly_and_box_with(&p, &complex_box(&parse_json(b, "field box")?)?, prec)?,
        None => default_root(&p, prec)?,
    };
    Ok(NumberField::new(g))
}

fn element(k: &NumberField, s: &str) -> Result<FieldElement, Failure> {
    Ok(k.element(coords(s)?)?)
}

fn eval_expr(v: &Value, prec: &Precision) -> Result<AlgebraicNumber, Failure> {
    let Some(op) = v.get("op").and_then(Value::as_str) else {
        return alg_value(v, prec);
    };
    let args = || -> Result<Vec<AlgebraicNumber>, Failure> {
        v.get("args")
            .and_then(Value::as_array)
            .ok_or_else(|| bad(format!("{op}: missing \"args\"")))?
            .iter()
            .map(|a| eval_expr(a, prec))
            .collect()
    };
    let fold = |o: ArithOp| -> Result<AlgebraicNumber, Failure> {
        let xs = args()?;
        let (first, rest) = xs.split_first().ok_or_else(|| bad(format!("{op}: no arguments")))?;
        let mut acc = first.clone();
        for x in rest {
            acc = alg_arith_with(o, &acc, x, prec)?;
        }
        Ok(acc)
    };
    let unary = || -> Result<AlgebraicNumber, Failure> {
        let mut xs = args()?;
        if xs.len() != 1 {
            return Err(bad(format!("{op}: expects one argument")));
        }
        Ok(xs.pop().unwrap())
    };
    match op {
        "add" => fold(ArithOp::Add),
        "sub" => fold(ArithOp::Sub),
        "mul" => fold(ArithOp::Mul),
        "div" => fold(ArithOp::Div),
        "neg" => Ok(unary()?.neg()),
        "sqrt" => Ok(alg_sqrt_nonneg_with(&unary()?, prec)?),
        "pow" => {
            let x = unary()?;
            let n = v
                .get("n")
                .and_then(Value::as_i64)
                .ok_or_else(|| bad("pow: missing integer \"n\""))?;
            let e = u32::try_from(n.unsigned_abs()).map_err(|_| bad("pow: exponent too large"))?;
            let p = alg_pow(&x, e)?;
            Ok(if n < 0 { alg_inv(&p)? } else { p })
        }
        _ => Err(bad(format!("unknown op {op:?}"))),
    }
}

fn run_lrs<V: LrsValue>(
    rec: &LinearRecurrence<V>,
    cmd: &LrsCommand,
    t_min: u64,
    value: impl Fn(&str) -> Result<V, Failure>,
    show: impl Fn(&V) -> Value,
) -> Out {
    match cmd {
        LrsCommand::Eval { t, .. } => Ok(json!({ "t": t, "value": show(&rec.term_at(*t)?) })),
        LrsCommand::Scan { value: v, t_max, .. } => {
            let target = value(v)?;
            let hits: Vec<u64> = rec
                .scan_for_value(&target, *t_max)?
                .into_iter()
                .filter(|&t| t >= t_min)
                .collect();
            Ok(json!({ "hits": hits }))
        }
    }
}

fn lrs(cmd: &LrsCommand, t_min: u64, prec: &Precision) -> Out {
    let rec = match cmd {
        LrsCommand::Eval { rec, .. } | LrsCommand::Scan { rec, .. } => rec,
    };
    let rational_target = |s: &str| -> Result<BigRational, Failure> {
        alg(s, prec)?
            .to_rational()
            .ok_or_else(|| bad("a rational recurrence never takes an irrational value"))
    };
    let show_q = |q: &BigRational| json!({ "rational": rat_str(q) });
    match (&rec.coeffs, &rec.initial, &rec.alpha) {
        (Some(c), Some(a), None) => {
            let r = LinearRecurrence::new(coords(c)?, coords(a)?)?;
            run_lrs(&r, cmd, t_min, rational_target, show_q)
        }
        (None, None, Some(alpha)) => {
            let alpha = alg(alpha, prec)?;
            match alpha.to_rational() {
                Some(q) => run_lrs(&cos_recurrence(&q)?, cmd, t_min, rational_target, show_q),
                None => run_lrs(&cos_recurrence_algebraic(&alpha)?, cmd, t_min, |s| alg(s, prec), alg_json),
            }
        }
        _ => Err(bad("give either --coeffs with --initial, or --alpha")),
    }
}

fn angle(term: &Value) -> Result<Angle, Failure> {
    let theta = match term.get("theta") {
        Some(v) => rational_list(v)?,
        None => Vec::new(),
    };
    let pi = match term.get("pi") {
        Some(v) => rational_value(v)?,
        None => BigRational::zero(),
    };
    Ok(Angle::new(theta, pi))
}

fn angle_json(m: &mut Map<String, Value>, a: &Angle) {
    m.insert("theta".into(), json!(rat_strs(a.theta_coeffs())));
    m.insert("pi".into(), json!(rat_str(a.pi_coeff())));
}

/// Each term is `coeff * poly(t) * (prod r_i^tags[i])^t * cos(t angle)`;
/// missing fields default to 1, the empty angle list to 0.
fn continuize(path: &str, c: &str, prec: &Precision) -> Out {
    let text = fs::read_to_string(path).map_err(|e| bad(format!("{path}: {e}")))?;
    let v = parse_json(&text, path)?;
    let c = alg(c, prec)?
        .to_rational()
        .ok_or_else(|| bad("c must be rational"))?;
    let constant = match v.get("constant") {
        Some(x) => rational_value(x)?,
        None => BigRational::zero(),
    };
    let raw = match v.get("terms") {
        Some(t) => t.as_array().ok_or_else(|| bad("\"terms\" must be an array"))?.clone(),
        None => Vec::new(),
    };
    let mut terms = Vec::new();
    let mut plain = true;
    for t in &raw {
        let coeff = match t.get("coeff") {
            Some(x) => rational_value(x)?,
            None => BigRational::one(),
        };
        let poly = match t.get("poly") {
            Some(p) => RatPoly::new(rational_list(p)?),
            None => RatPoly::one(),
        };
        let tags = match t.get("base").map(|b| b.get("r_tags")) {
            Some(Some(Value::Array(xs))) => xs
                .iter()
                .map(|x| x.as_u64().and_then(|n| u32::try_from(n).ok()))
                .collect::<Option<Vec<u32>>>()
                .ok_or_else(|| bad("r_tags must be small nonnegative integers"))?,
            Some(_) => return Err(bad("base must be {\"r_tags\": [...]}")),
            None => Vec::new(),
        };
        let base = BaseTag::new(tags);
        plain &= base.is_one() && poly.degree() == 0;
        terms.push(ExpPolyCosTerm::new(base, poly.scale(&coeff), angle(t)?));
    }
    let mut out = Map::new();
    out.insert("kind".into(), "real-variable instance".into());
    let body: Vec<Value> = if plain {
        let cos = terms
            .iter()
            .map(|t| CosTerm::new(t.poly.coeff(0), t.angle.clone()))
            .collect();
        let r = square_and_rewrite(&CosSumExpr::new(constant, cos), &c);
        out.insert("constant".into(), rat_str(&r.constant).into());
        r.terms
            .iter()
            .map(|t| {
                let mut m = Map::new();
                m.insert("coeff".into(), rat_str(&t.coeff).into());
                angle_json(&mut m, &t.angle);
                Value::Object(m)
            })
            .collect()
    } else {
        let r = ep_square_and_rewrite(&ExpPolyCosExpr::new(constant, terms), &c);
        out.insert("constant".into(), rat_str(&r.constant).into());
        r.terms
            .iter()
            .map(|t| {
                let mut m = Map::new();
                m.insert("coeff".into(), "1".into());
                angle_json(&mut m, &t.angle);
                m.insert("base".into(), json!({ "r_tags": t.base.tags() }));
                m.insert("poly".into(), json!(rat_strs(t.poly.coeffs())));
                Value::Object(m)
            })
            .collect()
    };
    out.insert("terms".into(), body.into());
    Ok(Value::Object(out))
}

fn run(cli: &Cli) -> Out {
    let prec = Precision::with_cap(cli.precision_cap_bits);
    let t_min = cli.t_min;
    match &cli.cmd {
        Command::CosDecide { alpha, c } => {
            let inst = CosInstance::new(alg(alpha, &prec)?, alg(c, &prec)?, t_min);
            Ok(decision_json(&decide_cos_with(&inst, &prec)?))
        }
        Command::RcosDecide { r_cos, r_sq, c } => {
            let inst = RCosInstance::new(alg(r_cos, &prec)?, alg(r_sq, &prec)?, alg(c, &prec)?, t_min);
            Ok(decision_json(&decide_rcos_contracting_with(&inst, &prec)?))
        }
        Command::PowerSolve { field: f, base, target } => {
            let k = field(f, &prec)?;
            let base = match base {
                Some(b) => element(&k, b)?,
                None => k.gen(),
            };
            let target = element(&k, target)?;
            Ok(decision_json(&solve_power_with(&PowerInstance::new(k, base, target, t_min), &prec)?))
        }
        Command::Membership { field: f, w } => {
            let k = field(f, &prec)?;
            Ok(match membership_with(&k, &alg(w, &prec)?, &prec)? {
                Some(e) => json!({ "member": true, "coords": rat_strs(e.coords()) }),
                None => json!({ "member": false }),
            })
        }
        Command::Minpoly { expr } => Ok(alg_json(&eval_expr(&parse_json(expr, "expr")?, &prec)?)),
        Command::Lrs { cmd } => lrs(cmd, t_min, &prec),
        Command::Continuize { expr_file, c } => continuize(expr_file, c, &prec),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(v) => {
            println!("{v}");
            ExitCode::SUCCESS
        }
        Err(Failure::Core(e @ Error::PrecisionCapExceeded { .. })) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
