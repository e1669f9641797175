use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::ser::{Serialize, SerializeMap, Serializer};
use serde::Deserialize;
use serde_json::{json, Value};

use witt_modulus::extensions::{compare_levels, DVEmbedding};
use witt_modulus::fields::descriptor::FieldDescriptor;
use witt_modulus::fields::parse::{parse_elem, parse_symbol, parse_witt};
use witt_modulus::fields::ring::Ring;
use witt_modulus::filtration::{filf_level, flat_filf_min, naive_level, theta_bar};
use witt_modulus::modulus::{
    global_ctx, modulus_divisor, refined_swan, render_rsw, swan_conductor, GroupPoint, SplitGroupDescriptor,
};
use witt_modulus::symbols::{gm_symbol, higher_local_symbol, set_rank_cap, MilnorSymbol};
use witt_modulus::verify::{embedding_by_name, run_suite, suite_names};
use witt_modulus::witt::polys::set_cap_n;
use witt_modulus::witt::{WittRing, WittVector};
use witt_modulus::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "wmod", version, about = "Witt-vector filtrations, local symbols and moduli of rational maps")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct Opts {
    /// Field descriptor, e.g. "F2((t))", "F4(u)((t))", "F2(x)", "Z/8".
    #[arg(long, global = true)]
    field: Option<String>,
    /// Split group, e.g. "Gm x W2" or "Ga^2".
    #[arg(long, global = true)]
    group: Option<String>,
    #[arg(short = 'p', global = true)]
    p: Option<u32>,
    /// Witt vector length.
    #[arg(short = 'n', global = true)]
    n: Option<usize>,
    /// Laurent window and completion precision.
    #[arg(long, global = true)]
    prec: Option<i64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Trial count, or "exhaustive" for the suite default.
    #[arg(long, global = true)]
    trials: Option<String>,
    #[arg(long, global = true)]
    #[serde(skip)]
    json: bool,
    /// Cap on the Witt length for structure polynomials.
    #[arg(long = "cap-n", global = true)]
    cap_n: Option<usize>,
    /// Cap on the number of Laurent layers for higher symbols.
    #[arg(long = "rank-cap", global = true)]
    rank_cap: Option<usize>,
    /// Rational map for `modulus`, coordinates separated by ';'.
    #[arg(long, global = true)]
    phi: Option<String>,
    /// Embedding name (identity, tame:e, wild:e, unramified:d, perfect:e) or a JSON config.
    #[arg(long, global = true)]
    emb: Option<String>,
    /// JSON file whose keys stand in for absent flags.
    #[arg(long, global = true)]
    #[serde(skip)]
    config: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Witt arithmetic: `x`, `F x`, `V x`, `neg x`, `ghost x` or `x (+|-|*) y`.
    Witt { args: Vec<String> },
    /// Naive, fil^F and least flat level.
    Level { x: String },
    /// Least flat level and the dlog coordinate of the top graded class.
    Flat { x: String },
    /// Local symbol of a Witt vector against a unit or a Milnor symbol.
    Symbol { f: String, g: String },
    /// Modulus divisor of a rational map over F_q(x).
    Modulus,
    /// Swan and refined Swan conductor.
    Swan { x: String },
    /// Level comparison along an extension.
    Extend { x: String },
    /// Run a verification suite.
    Verify { suite: String },
}

/// Ordered key/value report shared by the JSON and text renderers.
struct Report(Vec<(&'static str, Value)>);

impl Serialize for Report {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

impl Report {
    fn text(&self) -> String {
        self.0
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}: {s}"),
                other => format!("{k}: {other}"),
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

enum Failure {
    Err(Error),
    Verification(Report),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Err(e)
    }
}

fn merge_config(opts: &mut Opts) -> Result<()> {
    let Some(path) = opts.config.clone() else { return Ok(()) };
    let src = std::fs::read_to_string(&path).map_err(|e| Error::Parse { pos: 0, msg: format!("{path}: {e}") })?;
    let cfg: Opts = serde_json::from_str(&src).map_err(|e| Error::Parse { pos: e.column(), msg: e.to_string() })?;
    macro_rules! fill {
        ($($f:ident),*) => { $( if opts.$f.is_none() { opts.$f = cfg.$f; } )* };
    }
    fill!(field, group, p, n, prec, seed, trials, cap_n, rank_cap, phi, emb);
    Ok(())
}

struct Ctx {
    k: Ring,
    p: u32,
    n: usize,
    prec: i64,
}

fn smallest_prime_factor(m: u64) -> Option<u32> {
    (2..=m).find(|d| m.is_multiple_of(*d)).map(|d| d as u32)
}

fn context(o: &Opts) -> Result<Ctx> {
    let src = o.field.as_deref().ok_or_else(|| Error::Parse { pos: 0, msg: "missing --field".into() })?.trim();
    let prec = o.prec.unwrap_or(32);
    let k = if src == "Z" {
        Ring::Int
    } else if let Some(m) = src.strip_prefix("Z/") {
        Ring::Zmod(m.trim().parse().map_err(|_| Error::Parse { pos: 2, msg: "expected a modulus".into() })?)
    } else {
        FieldDescriptor::parse(src)?.to_ring_with_window(prec)?
    };
    let inferred = match &k {
        Ring::Zmod(m) => smallest_prime_factor(*m),
        other => other.char_p(),
    };
    let p = o.p.or(inferred).ok_or_else(|| Error::Parse { pos: 0, msg: "missing -p".into() })?;
    if let Some(q) = inferred {
        if q != p {
            return Err(Error::CharacteristicMismatch(format!("-p {p} over {}", k.describe())));
        }
    }
    Ok(Ctx { k, p, n: o.n.unwrap_or(1), prec })
}

fn parse_vec(c: &Ctx, src: &str) -> Result<(WittRing, WittVector)> {
    let comps = parse_witt(&c.k, src)?;
    let n = if src.trim_start().starts_with("W(") { comps.len() } else { c.n };
    let w = WittRing::new(c.k.clone(), c.p, n)?;
    let x = if comps.len() == n { WittVector::new(comps) } else { w.teichmuller(comps[0].clone()) };
    Ok((w, x))
}

fn witt_cmd(c: &Ctx, args: &[String]) -> Result<Report> {
    let unary = |op: &str, src: &str| -> Result<Report> {
        let (w, x) = parse_vec(c, src)?;
        let v = match op {
            "F" => json!(w.render(&w.frobenius(&x)?)),
            "V" => json!(w.render(&w.verschiebung(&x))),
            "neg" => json!(w.render(&w.neg(&x))),
            "ghost" => json!(w.ghost(&x)?.iter().map(|g| c.k.render(g)).collect::<Vec<_>>()),
            _ => return Err(Error::Parse { pos: 0, msg: format!("unknown unary operator '{op}'") }),
        };
        Ok(Report(vec![("result", v)]))
    };
    match args {
        [x] => {
            let (w, x) = parse_vec(c, x)?;
            Ok(Report(vec![("result", json!(w.render(&x)))]))
        }
        [op, x] => unary(op, x),
        [x, op, y] => {
            let (w, a) = parse_vec(c, x)?;
            let (_, b) = parse_vec(c, y)?;
            if a.len() != b.len() {
                return Err(Error::ShapeMismatch(format!("lengths {} and {}", a.len(), b.len())));
            }
            let r = match op.as_str() {
                "+" => w.add(&a, &b),
                "-" => w.sub(&a, &b),
                "*" => w.mul(&a, &b),
                _ => return Err(Error::Parse { pos: 0, msg: format!("unknown operator '{op}'") }),
            };
            Ok(Report(vec![("result", json!(w.render(&r)))]))
        }
        _ => Err(Error::Parse { pos: 0, msg: "expected 1 to 3 arguments".into() }),
    }
}

fn level_cmd(c: &Ctx, src: &str) -> Result<Report> {
    let (w, x) = parse_vec(c, src)?;
    let (s, dec) = filf_level(&w, &x)?;
    Ok(Report(vec![
        ("naive", json!(naive_level(&w, &x)?)),
        ("filF", json!(s)),
        ("flat_min", json!(flat_filf_min(&w, &x)?)),
        ("witness", json!(dec.parts.iter().map(|y| w.render(y)).collect::<Vec<_>>())),
    ]))
}

fn flat_cmd(c: &Ctx, src: &str) -> Result<Report> {
    let (w, x) = parse_vec(c, src)?;
    let (s, dec) = filf_level(&w, &x)?;
    let theta = if s > 0 { theta_bar(&w, &dec, s)?.render() } else { "0".into() };
    Ok(Report(vec![("filF", json!(s)), ("flat_min", json!(flat_filf_min(&w, &x)?)), ("theta", json!(theta))]))
}

fn symbol_cmd(c: &Ctx, o: &Opts, f: &str, g: &str) -> Result<Report> {
    let entries = if g.trim_start().starts_with('{') { parse_symbol(&c.k, g)? } else { vec![parse_elem(&c.k, g)?] };
    let sym = MilnorSymbol::new(&c.k, entries)?;
    if o.group.as_deref().map(str::trim) == Some("Gm") {
        let fe = parse_elem(&c.k, f)?;
        let [ge] = sym.entries.as_slice() else {
            return Err(Error::ShapeMismatch("tame symbol takes one unit".into()));
        };
        let v = gm_symbol(&c.k, &fe, ge)?;
        return Ok(Report(vec![
            ("f", json!(c.k.render(&fe))),
            ("g", json!(sym.render(&c.k))),
            ("value", json!([c.k.bottom().render(&v)])),
            ("group", json!("Gm")),
        ]));
    }
    let (w, x) = parse_vec(c, f)?;
    let v = higher_local_symbol(&w, &x, &sym)?;
    let kappa = c.k.bottom();
    Ok(Report(vec![
        ("f", json!(w.render(&x))),
        ("g", json!(sym.render(&c.k))),
        ("value", json!(v.comps.iter().map(|e| kappa.render(e)).collect::<Vec<_>>())),
        ("group", json!(if w.n == 1 { "Ga".to_string() } else { format!("W{}", w.n) })),
    ]))
}

fn modulus_cmd(c: &Ctx, o: &Opts) -> Result<Report> {
    let g = SplitGroupDescriptor::parse(o.group.as_deref().unwrap_or("Ga"))?;
    let src = o.phi.as_deref().ok_or_else(|| Error::Parse { pos: 0, msg: "missing --phi".into() })?;
    let phi = GroupPoint::parse(&c.k, &g, src)?;
    let d = modulus_divisor(&c.k, &g, &phi, c.prec)?;
    let r = global_ctx(&c.k)?;
    let divisor: Vec<Report> =
        d.entries.iter().map(|(v, m)| Report(vec![("place", json!(v.name(r))), ("mult", json!(m))])).collect();
    let divisor = serde_json::to_value(&divisor).expect("serializable");
    Ok(Report(vec![("divisor", divisor), ("degree", json!(d.degree()))]))
}

fn swan_cmd(c: &Ctx, src: &str) -> Result<Report> {
    let (w, x) = parse_vec(c, src)?;
    let sw = swan_conductor(&w, &x)?;
    let rsw: serde_json::Map<String, Value> =
        render_rsw(&refined_swan(&w, &x)?).into_iter().map(|(b, v)| (b, Value::String(v))).collect();
    Ok(Report(vec![("swan", json!(sw)), ("rsw", Value::Object(rsw))]))
}

fn extend_cmd(c: &Ctx, o: &Opts, src: &str) -> Result<Report> {
    let spec = o.emb.as_deref().unwrap_or("identity").trim();
    let emb =
        if spec.starts_with('{') { DVEmbedding::from_config(&c.k, spec)? } else { embedding_by_name(&c.k, spec)? };
    let (_, x) = parse_vec(c, src)?;
    let r = compare_levels(&emb, c.p, &x)?;
    Ok(Report(vec![
        ("target", json!(emb.target.describe())),
        ("e", json!(r.e)),
        ("s_K", json!(r.s_k)),
        ("s_K'", json!(r.s_kp)),
        ("flat_min", json!(r.flat_min_k)),
        ("containment_ok", json!(r.containment_ok)),
        ("equality_expected", json!(r.equality_expected)),
        ("equality_ok", json!(r.equality_ok)),
    ]))
}

fn verify_cmd(o: &Opts, suite: &str) -> std::result::Result<Report, Failure> {
    let trials = match o.trials.as_deref() {
        None | Some("exhaustive") => None,
        Some(t) => Some(t.parse::<usize>().map_err(|_| Error::Parse { pos: 0, msg: format!("bad --trials '{t}'") })?),
    };
    let rep = run_suite(suite, o.seed.unwrap_or(1), trials).map_err(|e| match e {
        Error::UnknownSuite(s) => Error::UnknownSuite(format!("{s} (known: {})", suite_names().join(", "))),
        e => e,
    })?;
    let mut out = vec![("passed", json!(rep.passed)), ("instances", json!(rep.instances))];
    if !rep.counterexamples.is_empty() {
        out.push(("counterexamples", serde_json::to_value(&rep.counterexamples).expect("serializable")));
    }
    let out = Report(out);
    if rep.passed {
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}

fn run(cli: &mut Cli) -> std::result::Result<Report, Failure> {
    merge_config(&mut cli.opts)?;
    let o = &cli.opts;
    if let Some(n) = o.cap_n {
        set_cap_n(n);
    }
    if let Some(r) = o.rank_cap {
        set_rank_cap(r);
    }
    if let Cmd::Verify { suite } = &cli.cmd {
        return verify_cmd(o, suite);
    }
    let c = context(o)?;
    Ok(match &cli.cmd {
        Cmd::Witt { args } => witt_cmd(&c, args)?,
        Cmd::Level { x } => level_cmd(&c, x)?,
        Cmd::Flat { x } => flat_cmd(&c, x)?,
        Cmd::Symbol { f, g } => symbol_cmd(&c, o, f, g)?,
        Cmd::Modulus => modulus_cmd(&c, o)?,
        Cmd::Swan { x } => swan_cmd(&c, x)?,
        Cmd::Extend { x } => extend_cmd(&c, o, x)?,
        Cmd::Verify { .. } => unreachable!(),
    })
}

fn emit(r: &Report, json: bool) {
    if json {
        println!("{}", serde_json::to_string(r).expect("serializable"));
    } else {
        println!("{}", r.text());
    }
}

fn main() -> ExitCode {
    let mut cli = Cli::parse();
    let json = cli.opts.json;
    match run(&mut cli) {
        Ok(r) => {
            emit(&r, json);
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(r)) => {
            emit(&r, json);
            ExitCode::from(4)
        }
        Err(Failure::Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Parse { .. } => 2,
                Error::PrecisionExhausted(_) => 3,
                _ => 1,
            })
        }
    }
}
