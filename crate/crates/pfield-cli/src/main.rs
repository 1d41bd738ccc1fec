//! `pfield`: command-line front end for the pfield library.

use std::io::{Read, Write};
use std::process::ExitCode;
use std::sync::OnceLock;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pfield::arith::{parse, parse_scalar, parse_tpoly, print_canonical};
use pfield::classify::{classify_flag, recognize, CanonicalType, Recognized};
use pfield::flagbounds::{bounds_certified, build_infinite_flag, dpb_upper_for_flag, BoundedElement};
use pfield::isomaut::{
    aut_family1_structure, aut_family2, aut_group, dixmier_report, embed_decide, iso_decide, subfield_witness,
    GroupReport, SubfieldWitness, WitnessKind,
};
use pfield::logderiv::{necessary_conditions, solve_inverse_logderiv, SplitPoly};
use pfield::poisson::{bracket, jacobiator};
use pfield::valuation::{gamma1_zero, height, is_flabby, mono_val, w_level, Height, MonomialValuation};
use pfield::{Error, FactoredFlag, Mode, PoissonField, RatFunc2, Scalar, UniPoly};
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(name = "pfield", version, about = "Exact computations in Poisson fields of two variables")]
struct Cli {
    /// Scalar field: q (rationals) or qt (rational functions in t).
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Q)]
    mode: ModeArg,
    /// Print one JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Q,
    Qt,
}

#[derive(Args)]
struct FlagArg {
    /// The flag {x, y}; `-` reads it from stdin.
    #[arg(long, allow_hyphen_values = true)]
    flag: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// {g, h} under the flag.
    Bracket {
        #[command(flatten)]
        flag: FlagArg,
        #[arg(allow_hyphen_values = true)]
        g: String,
        #[arg(allow_hyphen_values = true)]
        h: String,
    },
    /// Jacobiator of three elements; exit 1 when nonzero.
    Jacobi {
        #[command(flatten)]
        flag: FlagArg,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(allow_hyphen_values = true)]
        c: String,
    },
    /// Canonical type with a verified change of variables.
    Classify {
        #[command(flatten)]
        flag: FlagArg,
    },
    /// Decide whether two flags define isomorphic fields.
    Iso {
        #[arg(allow_hyphen_values = true)]
        first: String,
        #[arg(allow_hyphen_values = true)]
        second: String,
    },
    /// Automorphism group.
    Aut {
        #[command(flatten)]
        flag: FlagArg,
        /// Roots of p for flags p(x) x y, comma separated (needed in qt mode).
        #[arg(long, allow_hyphen_values = true)]
        roots: Option<String>,
    },
    /// Decide whether the field of SOURCE embeds in the field of TARGET.
    Embed {
        #[arg(allow_hyphen_values = true)]
        source: String,
        #[arg(allow_hyphen_values = true)]
        target: String,
    },
    /// Monomial valuation of expressions and the w-level of the flag.
    Valuation {
        #[command(flatten)]
        flag: FlagArg,
        /// Weights `z1,z2`.
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        #[arg(allow_hyphen_values = true)]
        exprs: Vec<String>,
    },
    /// Flag height and 1-valuation height.
    FlagHeight {
        #[command(flatten)]
        flag: FlagArg,
    },
    /// Flabbiness of a product of linear forms.
    Flabby {
        #[command(flatten)]
        flag: FlagArg,
    },
    /// Solve s'/s = 1/f for a split polynomial f in t.
    Logderiv {
        /// Polynomial in t (q mode only).
        #[arg(allow_hyphen_values = true)]
        poly: Option<String>,
        /// Roots of f, comma separated, instead of the polynomial.
        #[arg(long, allow_hyphen_values = true)]
        roots: Option<String>,
        /// Leading coefficient when roots are given.
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        gamma: String,
    },
    /// Denominator bounds for h(x), or the prime-divisor bound for a flag.
    Ddb {
        #[arg(long, allow_hyphen_values = true, conflicts_with = "flag")]
        h: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        flag: Option<String>,
    },
    /// The flag x y f(h) together with its obstruction certificate.
    BuildInfiniteFlag {
        #[arg(long, allow_hyphen_values = true)]
        h: String,
        /// Polynomial f in t.
        #[arg(long, allow_hyphen_values = true)]
        f: String,
    },
    /// Dixmier property; exit 1 when it fails.
    Dixmier {
        #[command(flatten)]
        flag: FlagArg,
    },
    /// Explicit Poisson subfield with its flag.
    SubfieldWitness(Box<WitnessArgs>),
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    WeylF,
    WeylPower,
    Torus,
    MonomialPower,
    QskewSub,
    Reparam,
    PowerReparam,
    CubicLog,
    WeylIn1n0,
}

#[derive(Args)]
struct WitnessArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long, allow_hyphen_values = true)]
    f: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    g: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    r: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    d: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    m: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    n: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a2: Option<String>,
}

/// Exit statuses.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Status {
    Decided,
    Negative,
    Unsupported,
    InputError,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Decided => 0,
            Status::Negative => 1,
            Status::Unsupported => 2,
            Status::InputError => 3,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Decided => "decided",
            Status::Negative => "negative",
            Status::Unsupported => "unsupported",
            Status::InputError => "input-error",
        }
    }
}

struct Failure {
    status: Status,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Unsupported(_)
            | Error::UnresolvedInput(_)
            | Error::RootsUnavailable
            | Error::UnfactoredDenominator
            | Error::NotFlabby
            | Error::IndeterminateResult => Status::Unsupported,
            Error::IdentityFails(_) => Status::Negative,
            _ => Status::InputError,
        };
        Failure { status, message: e.to_string() }
    }
}

fn input_error(msg: impl Into<String>) -> Failure {
    Failure { status: Status::InputError, message: msg.into() }
}

fn unsupported(msg: impl Into<String>) -> Failure {
    Failure { status: Status::Unsupported, message: msg.into() }
}

/// A finished command: its status, text lines and JSON fields.
struct Report {
    status: Status,
    text: Vec<String>,
    fields: Map<String, Value>,
}

impl Report {
    fn new(status: Status) -> Self {
        Report { status, text: Vec::new(), fields: Map::new() }
    }

    fn line(mut self, s: impl Into<String>) -> Self {
        self.text.push(s.into());
        self
    }

    fn field(mut self, k: &str, v: Value) -> Self {
        self.fields.insert(k.into(), v);
        self
    }
}

type Outcome = Result<Report, Failure>;

struct Ctx {
    mode: Mode,
}

fn stdin_text() -> Result<&'static str, Failure> {
    static STDIN: OnceLock<Result<String, String>> = OnceLock::new();
    let r = STDIN.get_or_init(|| {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map(|_| s.trim().to_string()).map_err(|e| e.to_string())
    });
    r.as_deref().map_err(|e| input_error(format!("reading stdin: {e}")))
}

fn text_of(s: &str) -> Result<&str, Failure> {
    if s == "-" {
        stdin_text()
    } else {
        Ok(s)
    }
}

impl Ctx {
    fn expr(&self, s: &str) -> Result<RatFunc2, Failure> {
        Ok(parse(text_of(s)?, self.mode)?)
    }

    fn field(&self, s: &str) -> Result<PoissonField, Failure> {
        Ok(PoissonField::parse(text_of(s)?, self.mode)?)
    }

    fn factored(&self, s: &str) -> Result<FactoredFlag, Failure> {
        Ok(FactoredFlag::parse(text_of(s)?, self.mode)?)
    }

    fn scalar(&self, s: &str) -> Result<Scalar, Failure> {
        Ok(parse_scalar(text_of(s)?, self.mode)?)
    }

    fn scalars(&self, s: &str) -> Result<Vec<Scalar>, Failure> {
        text_of(s)?.split(',').map(|p| self.scalar(p.trim())).collect()
    }
}

fn int_arg(s: &str, what: &str) -> Result<i64, Failure> {
    text_of(s)?.trim().parse().map_err(|_| input_error(format!("{what} must be an integer")))
}

fn show(f: &RatFunc2) -> String {
    print_canonical(f)
}

fn show_upoly(p: &UniPoly) -> String {
    show(&RatFunc2::from_upoly_x(p))
}

fn height_value(h: Height) -> Value {
    match h {
        Height::Finite(n) => json!(n),
        other => json!(other.to_string()),
    }
}

fn ctype_value(t: &CanonicalType) -> Value {
    match t {
        CanonicalType::Weyl => json!({"kind": "weyl"}),
        CanonicalType::Kq(q) => json!({"kind": "kq", "q": q.to_string()}),
        CanonicalType::K1n0 { n, q } => json!({"kind": "k1n0", "n": n, "q": q.to_string()}),
        CanonicalType::UnresolvedOverField(r) => json!({"kind": "unresolved", "reason": r}),
        CanonicalType::OutsideScope => json!({"kind": "outside-scope"}),
    }
}

fn witness_value(w: &SubfieldWitness) -> Value {
    json!({
        "base_flag": show(&w.base_flag),
        "generators": [show(&w.generators.0), show(&w.generators.1)],
        "target_flag": show(&w.target_flag),
        "verified": w.verified,
    })
}

fn witness_lines(w: &SubfieldWitness) -> Vec<String> {
    vec![
        format!("generators: u = {}, v = {}", show(&w.generators.0), show(&w.generators.1)),
        format!("bracket: {{u, v}} = {} in u, v", show(&w.target_flag)),
        format!("verified: {}", w.verified),
    ]
}

fn group_report(family: &str, g: &GroupReport) -> Report {
    let order = match g.order {
        Some(n) => json!(n),
        None => json!("infinite"),
    };
    let elements: Vec<String> = g.elements.iter().map(|e| e.to_string()).collect();
    let checks: Vec<Value> = g.checks.iter().map(|(n, ok)| json!({"name": n, "ok": ok})).collect();
    let mut r = Report::new(if g.checks_pass() { Status::Decided } else { Status::Negative })
        .line(format!("family: {family}"))
        .line(format!("order: {}", g.order.map_or("infinite".to_string(), |n| n.to_string())));
    if g.order.is_none() {
        r = r.line(format!("finite part: {} listed elements", elements.len()));
    }
    for e in &elements {
        r = r.line(format!("  {e}"));
    }
    if !g.infinite_factors.is_empty() {
        r = r.line(format!("infinite factors: {}", g.infinite_factors.join(", ")));
    }
    if let Some(s) = &g.exact_sequence {
        r = r.line(format!("sequence: {s}"));
    }
    if let Some(b) = g.bound {
        r = r.line(format!("bound: {b}"));
    }
    r = r.line(format!("closure verified: {}", g.closure_verified));
    for (n, ok) in &g.checks {
        r = r.line(format!("check: {n}: {}", if *ok { "ok" } else { "FAILED" }));
    }
    for n in &g.notes {
        r = r.line(format!("note: {n}"));
    }
    r.field("family", json!(family))
        .field("order", order)
        .field("elements", json!(elements))
        .field("infinite_factors", json!(g.infinite_factors))
        .field("exact_sequence", json!(g.exact_sequence))
        .field("closure_verified", json!(g.closure_verified))
        .field("bound", json!(g.bound))
        .field("checks", json!(checks))
        .field("notes", json!(g.notes))
}

fn run_bracket(cx: &Ctx, flag: &str, g: &str, h: &str) -> Outcome {
    let f = cx.expr(flag)?;
    if f.is_zero() {
        return Err(input_error("the flag must be nonzero"));
    }
    let b = show(&bracket(&f, &cx.expr(g)?, &cx.expr(h)?));
    Ok(Report::new(Status::Decided).line(b.clone()).field("bracket", json!(b)))
}

fn run_jacobi(cx: &Ctx, flag: &str, a: &str, b: &str, c: &str) -> Outcome {
    let f = cx.expr(flag)?;
    if f.is_zero() {
        return Err(input_error("the flag must be nonzero"));
    }
    let j = jacobiator(&f, &cx.expr(a)?, &cx.expr(b)?, &cx.expr(c)?);
    let status = if j.is_zero() { Status::Decided } else { Status::Negative };
    Ok(Report::new(status)
        .line(format!("jacobiator: {}", show(&j)))
        .field("jacobiator", json!(show(&j)))
        .field("zero", json!(j.is_zero())))
}

fn run_classify(cx: &Ctx, flag: &str) -> Outcome {
    let c = classify_flag(&cx.field(flag)?);
    let status = if c.ctype.is_resolved() && c.verified { Status::Decided } else { Status::Unsupported };
    let mut r = Report::new(status).line(format!("type: {}", c.ctype)).line(format!("verified: {}", c.verified));
    let cov = c.cov.as_ref().map(|cov| {
        json!({
            "forward": [show(&cov.forward.0), show(&cov.forward.1)],
            "inverse": [show(&cov.inverse.0), show(&cov.inverse.1)],
        })
    });
    if let Some(cov) = &c.cov {
        r = r
            .line(format!("u = {}, v = {}", show(&cov.forward.0), show(&cov.forward.1)))
            .line(format!("x = {}, y = {} (in u, v)", show(&cov.inverse.0), show(&cov.inverse.1)));
    }
    for s in &c.steps {
        r = r.line(format!("step: {s}"));
    }
    Ok(r.field("type", ctype_value(&c.ctype))
        .field("label", json!(c.ctype.to_string()))
        .field("verified", json!(c.verified))
        .field("change_of_variables", json!(cov))
        .field("final_flag", json!(show(&c.final_flag)))
        .field("steps", json!(c.steps)))
}

fn run_iso(cx: &Ctx, a: &str, b: &str) -> Outcome {
    let r = iso_decide(&cx.field(a)?, &cx.field(b)?)?;
    let status = if r.isomorphic { Status::Decided } else { Status::Negative };
    Ok(Report::new(status)
        .line(format!("isomorphic: {}", r.isomorphic))
        .line(format!("reason: {}", r.reason))
        .field("isomorphic", json!(r.isomorphic))
        .field("reason", json!(r.reason)))
}

fn run_aut(cx: &Ctx, flag: &str, roots: Option<&str>) -> Outcome {
    let k = cx.field(flag)?;
    let roots = roots.map(|s| cx.scalars(s)).transpose()?;
    match recognize(&k)? {
        Recognized::Canonical(c) => match c.ctype {
            CanonicalType::K1n0 { n, .. } => Ok(group_report("x^(n+1) y", &aut_family1_structure(n)?)),
            t => Err(unsupported(format!("automorphisms of {t} are not computed"))),
        },
        Recognized::Family2 { p, .. } => Ok(group_report("p(x) x y", &aut_family2(&p, roots.as_deref())?)),
        Recognized::Family4 { flag, .. } => Ok(group_report("split product", &aut_group(&flag)?)),
        Recognized::Flabby(flag) => Ok(group_report("flabby", &aut_group(&flag)?)),
    }
}

fn canonical_of(cx: &Ctx, s: &str) -> Result<CanonicalType, Failure> {
    let c = classify_flag(&cx.field(s)?);
    if !c.ctype.is_resolved() || !c.verified {
        return Err(unsupported(format!("'{s}' has no verified canonical type: {}", c.ctype)));
    }
    Ok(c.ctype)
}

fn run_embed(cx: &Ctx, source: &str, target: &str) -> Outcome {
    let (t1, t2) = (canonical_of(cx, source)?, canonical_of(cx, target)?);
    let r = embed_decide(&t1, &t2)?;
    let status = if r.embeds { Status::Decided } else { Status::Negative };
    let mut rep = Report::new(status)
        .line(format!("source: {t1}"))
        .line(format!("target: {t2}"))
        .line(format!("embeds: {}", r.embeds))
        .line(format!("reason: {}", r.reason));
    if let Some(w) = &r.witness {
        for l in witness_lines(w) {
            rep = rep.line(l);
        }
    }
    Ok(rep
        .field("source_type", ctype_value(&t1))
        .field("target_type", ctype_value(&t2))
        .field("embeds", json!(r.embeds))
        .field("reason", json!(r.reason))
        .field("witness", r.witness.as_ref().map_or(Value::Null, witness_value)))
}

fn run_valuation(cx: &Ctx, flag: &str, nu: &str, exprs: &[String]) -> Outcome {
    let parts: Vec<&str> = text_of(nu)?.split(',').collect();
    if parts.len() != 2 {
        return Err(input_error("--nu takes two integers z1,z2"));
    }
    let nu = MonomialValuation::new(int_arg(parts[0], "z1")?, int_arg(parts[1], "z2")?);
    let k = cx.field(flag)?;
    let w = w_level(nu, &k.flag);
    let mut r = Report::new(Status::Decided).line(format!("nu: {nu}")).line(format!("w-level of flag: {w}"));
    let mut values = Vec::new();
    for e in exprs {
        let u = cx.expr(e)?;
        let v = mono_val(nu, &u);
        r = r.line(format!("nu({}) = {}", show(&u), v.map_or("+inf".into(), |v| v.to_string())));
        values.push(json!({"expr": show(&u), "value": v.map_or(json!("+inf"), |v| json!(v))}));
    }
    let cap = gamma1_zero(&k).ok().map(|g| g.ring.to_string());
    if let Some(c) = &cap {
        r = r.line(format!("cap ring: {c}"));
    }
    Ok(r.field("nu", json!([nu.z1, nu.z2])).field("w_level", json!(w)).field("values", json!(values)).field("cap_ring", json!(cap)))
}

fn run_flag_height(cx: &Ctx, flag: &str) -> Outcome {
    let r = height(&cx.field(flag)?)?;
    let vht = r.valuation_height1.map_or("unknown".to_string(), |h| h.to_string());
    let wit = r.witness.map_or("none".to_string(), |(nu, w)| format!("{nu}@w={w}"));
    Ok(Report::new(Status::Decided)
        .line(format!("fht={} vht1={vht} witness={wit}", r.flag_height))
        .field("fht", height_value(r.flag_height))
        .field("vht1", r.valuation_height1.map_or(Value::Null, height_value))
        .field("witness", r.witness.map_or(Value::Null, |(nu, w)| json!({"nu": [nu.z1, nu.z2], "w": w})))
        .field("presentation", json!(show(&r.presentation)))
        .field("cohereditary", json!(r.cohereditary))
        .field("family", json!(r.family))
        .field("theorem", json!(r.theorem)))
}

fn run_flabby(cx: &Ctx, flag: &str) -> Outcome {
    let f = cx.factored(flag)?;
    let r = is_flabby(&f)?;
    let factors: Vec<String> = f.all_factors()?.iter().map(|(l, _)| l.to_string()).collect();
    let failing = r.failing_index.map(|i| factors[i].clone());
    let status = if r.flabby { Status::Decided } else { Status::Negative };
    let mut rep = Report::new(status).line(format!("flabby: {}", r.flabby));
    if let Some(l) = &failing {
        rep = rep.line(format!("failing factor: {l}"));
    }
    Ok(rep.field("flabby", json!(r.flabby)).field("factors", json!(factors)).field("failing_factor", json!(failing)))
}

fn run_logderiv(cx: &Ctx, poly: Option<&str>, roots: Option<&str>, gamma: &str) -> Outcome {
    let f = match (poly, roots) {
        (Some(p), None) => {
            if cx.mode != Mode::Q {
                return Err(unsupported("in qt mode give the roots with --roots"));
            }
            SplitPoly::from_unipoly(&parse_tpoly(text_of(p)?)?, Mode::Q)?
        }
        (None, Some(r)) => SplitPoly::new(cx.scalar(gamma)?, cx.scalars(r)?)?,
        _ => return Err(input_error("give either a polynomial or --roots")),
    };
    // the solution is printed in s when t is the scalar parameter
    let var = if cx.mode == Mode::Q { "t" } else { "s" };
    let sol = solve_inverse_logderiv(&f)?;
    let conds = necessary_conditions(&f).ok();
    let zs: Vec<String> = f.exponents().iter().map(|z| z.to_string()).collect();
    let roots: Vec<String> = f.roots.iter().map(|a| a.to_string()).collect();
    let status = if sol.is_some() { Status::Decided } else { Status::Negative };
    let mut r = Report::new(status)
        .line(format!("roots: {}", roots.join(", ")))
        .line(format!("exponents: {}", zs.join(", ")))
        .line(format!("solution: {}", sol.as_ref().map_or("none".to_string(), |s| s.fmt_var(var))));
    if let Some(c) = &conds {
        r = r.line(format!("sum zero: {}, moment zero: {}", c.sum_zero, c.moment_zero));
    }
    Ok(r.field("variable", json!(var))
        .field("roots", json!(roots))
        .field("exponents", json!(zs))
        .field("solution", json!(sol.as_ref().map(|s| s.fmt_var(var))))
        .field("sum_zero", json!(conds.as_ref().map(|c| c.sum_zero)))
        .field("moment_zero", json!(conds.as_ref().map(|c| c.moment_zero))))
}

fn run_ddb(cx: &Ctx, h: Option<&str>, flag: Option<&str>) -> Outcome {
    match (h, flag) {
        (Some(h), None) => {
            let b = BoundedElement::from_univariate(&cx.expr(h)?, cx.mode)?;
            let r = bounds_certified(&b);
            let opt = |v: Option<i64>| v.map_or("unknown".to_string(), |v| v.to_string());
            Ok(Report::new(Status::Decided)
                .line(format!("w: {}", b.w()))
                .line(format!("dpb >= {}", r.dpb_lower))
                .line(format!("ddb: {}, dpb: {}, fdb: {}", opt(r.ddb_exact), opt(r.dpb_exact), opt(r.fdb_exact)))
                .line(format!("framed: {}", r.framed.as_ref().map_or("none".to_string(), show)))
                .field("w", json!(b.w()))
                .field("dpb_lower", json!(r.dpb_lower))
                .field("ddb", json!(r.ddb_exact))
                .field("dpb", json!(r.dpb_exact))
                .field("fdb", json!(r.fdb_exact))
                .field("framed", json!(r.framed.as_ref().map(show))))
        }
        (None, Some(g)) => {
            let d = dpb_upper_for_flag(&cx.expr(g)?, cx.mode)?;
            Ok(Report::new(Status::Decided).line(format!("dpb <= {d}")).field("dpb_upper", json!(d)))
        }
        _ => Err(input_error("give either --h or --flag")),
    }
}

fn run_build(cx: &Ctx, h: &str, f: &str) -> Outcome {
    let b = BoundedElement::from_univariate(&cx.expr(h)?, cx.mode)?;
    let fp = parse_tpoly(text_of(f)?)?;
    let c = build_infinite_flag(&b, &fp)?;
    Ok(Report::new(Status::Decided)
        .line(format!("flag: {}", show(&c.flag)))
        .line(format!("no Poisson morphism into K{{g}} when the denominator of g has fewer than {} prime divisors", c.w_threshold))
        .line("fht=+inf")
        .field("flag", json!(show(&c.flag)))
        .field("h", json!(show(&b.expand())))
        .field("f", json!(show_upoly(&fp)))
        .field("w_threshold", json!(c.w_threshold))
        .field("gamma_degree", json!(c.gamma_degree))
        .field("fht", json!("+inf")))
}

fn run_dixmier(cx: &Ctx, flag: &str) -> Outcome {
    let r = dixmier_report(&cx.field(flag)?)?;
    let status = match r.verdict {
        Some(true) => Status::Decided,
        Some(false) => Status::Negative,
        None => Status::Unsupported,
    };
    let verdict = r.verdict.map_or("unknown".to_string(), |v| v.to_string());
    let mut rep = Report::new(status)
        .line(format!("dixmier: {verdict}"))
        .line(format!("family: {}", r.family))
        .line(format!("theorem: {}", r.theorem));
    let cert = r.certificate.as_ref().map(|e| {
        json!({
            "images": [show(&e.images.0), show(&e.images.1)],
            "index": e.index,
            "verified": e.verified,
        })
    });
    if let Some(e) = &r.certificate {
        rep = rep
            .line(format!("endomorphism: x -> {}, y -> {}", show(&e.images.0), show(&e.images.1)))
            .line(format!("verified: {}", e.verified));
    }
    Ok(rep
        .field("dixmier", json!(r.verdict))
        .field("family", json!(r.family))
        .field("theorem", json!(r.theorem))
        .field("certificate", json!(cert)))
}

fn run_witness(cx: &Ctx, w: &WitnessArgs) -> Outcome {
    let need = |v: &Option<String>, name: &str| v.clone().ok_or_else(|| input_error(format!("--{name} is required")));
    let e = |v: &Option<String>, name: &str| cx.expr(&need(v, name)?);
    let s = |v: &Option<String>, name: &str| cx.scalar(&need(v, name)?);
    let i = |v: &Option<String>, name: &str| int_arg(&need(v, name)?, name);
    let kind = match w.kind {
        KindArg::WeylF => WitnessKind::WeylF { f: e(&w.f, "f")? },
        KindArg::WeylPower => WitnessKind::WeylPower { a: i(&w.a, "a")? },
        KindArg::Torus => WitnessKind::Torus { q: s(&w.q, "q")?, a: i(&w.a, "a")?, b: i(&w.b, "b")?, c: i(&w.c, "c")?, d: i(&w.d, "d")? },
        KindArg::MonomialPower => {
            WitnessKind::MonomialPower { q: s(&w.q, "q")?, a: i(&w.a, "a")?, b: i(&w.b, "b")?, c: i(&w.c, "c")?, d: i(&w.d, "d")? }
        }
        KindArg::QskewSub => WitnessKind::QskewSub { q: s(&w.q, "q")?, a: i(&w.a, "a")?, b: s(&w.b, "b")? },
        KindArg::Reparam => WitnessKind::Reparam {
            f: e(&w.f, "f")?,
            g: e(&w.g, "g")?,
            r: e(&w.r, "r")?,
            p: e(&w.p, "p")?,
            lambda: s(&w.lambda, "lambda")?,
        },
        KindArg::PowerReparam => WitnessKind::PowerReparam {
            f: e(&w.f, "f")?,
            g: e(&w.g, "g")?,
            p: e(&w.p, "p")?,
            lambda: s(&w.lambda, "lambda")?,
            m: i(&w.m, "m")?,
        },
        KindArg::CubicLog => WitnessKind::CubicLog { a1: s(&w.a1, "a1")?, a2: s(&w.a2, "a2")? },
        KindArg::WeylIn1n0 => {
            let n = u32::try_from(i(&w.n, "n")?).map_err(|_| input_error("n must be positive"))?;
            WitnessKind::WeylIn1n0 { n, q: s(&w.q, "q")? }
        }
    };
    let wit = subfield_witness(&kind)?;
    let mut r = Report::new(if wit.verified { Status::Decided } else { Status::Negative });
    r = r.line(format!("base flag: {}", show(&wit.base_flag)));
    for l in witness_lines(&wit) {
        r = r.line(l);
    }
    if let Value::Object(m) = witness_value(&wit) {
        r.fields.extend(m);
    }
    Ok(r)
}

fn command_name(c: &Cmd) -> &'static str {
    match c {
        Cmd::Bracket { .. } => "bracket",
        Cmd::Jacobi { .. } => "jacobi",
        Cmd::Classify { .. } => "classify",
        Cmd::Iso { .. } => "iso",
        Cmd::Aut { .. } => "aut",
        Cmd::Embed { .. } => "embed",
        Cmd::Valuation { .. } => "valuation",
        Cmd::FlagHeight { .. } => "flag-height",
        Cmd::Flabby { .. } => "flabby",
        Cmd::Logderiv { .. } => "logderiv",
        Cmd::Ddb { .. } => "ddb",
        Cmd::BuildInfiniteFlag { .. } => "build-infinite-flag",
        Cmd::Dixmier { .. } => "dixmier",
        Cmd::SubfieldWitness(_) => "subfield-witness",
    }
}

fn dispatch(cx: &Ctx, cmd: &Cmd) -> Outcome {
    match cmd {
        Cmd::Bracket { flag, g, h } => run_bracket(cx, &flag.flag, g, h),
        Cmd::Jacobi { flag, a, b, c } => run_jacobi(cx, &flag.flag, a, b, c),
        Cmd::Classify { flag } => run_classify(cx, &flag.flag),
        Cmd::Iso { first, second } => run_iso(cx, first, second),
        Cmd::Aut { flag, roots } => run_aut(cx, &flag.flag, roots.as_deref()),
        Cmd::Embed { source, target } => run_embed(cx, source, target),
        Cmd::Valuation { flag, nu, exprs } => run_valuation(cx, &flag.flag, nu, exprs),
        Cmd::FlagHeight { flag } => run_flag_height(cx, &flag.flag),
        Cmd::Flabby { flag } => run_flabby(cx, &flag.flag),
        Cmd::Logderiv { poly, roots, gamma } => run_logderiv(cx, poly.as_deref(), roots.as_deref(), gamma),
        Cmd::Ddb { h, flag } => run_ddb(cx, h.as_deref(), flag.as_deref()),
        Cmd::BuildInfiniteFlag { h, f } => run_build(cx, h, f),
        Cmd::Dixmier { flag } => run_dixmier(cx, &flag.flag),
        Cmd::SubfieldWitness(w) => run_witness(cx, w),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { Status::InputError.code() } else { 0 };
            return ExitCode::from(code);
        }
    };
    let cx = Ctx { mode: match cli.mode {
        ModeArg::Q => Mode::Q,
        ModeArg::Qt => Mode::Qt,
    } };
    let name = command_name(&cli.cmd);
    let out = dispatch(&cx, &cli.cmd);
    let status = match &out {
        Ok(r) => r.status,
        Err(f) => f.status,
    };
    let mut stdout = std::io::stdout().lock();
    if cli.json {
        let mut obj = Map::new();
        obj.insert("command".into(), json!(name));
        obj.insert("mode".into(), json!(cx.mode.to_string()));
        obj.insert("status".into(), json!(status.label()));
        obj.insert("exit_code".into(), json!(status.code()));
        match out {
            Ok(r) => {
                obj.insert("result".into(), Value::Object(r.fields));
            }
            Err(f) => {
                obj.insert("error".into(), json!(f.message));
            }
        }
        let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&Value::Object(obj)).expect("serializable"));
    } else {
        match out {
            Ok(r) => {
                for l in r.text {
                    if writeln!(stdout, "{l}").is_err() {
                        break;
                    }
                }
            }
            Err(f) => eprintln!("error: {}", f.message),
        }
    }
    ExitCode::from(status.code())
}
