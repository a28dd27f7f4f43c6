use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_bigint::{BigInt, BigUint};
use serde_json::{json, Value};

use ecpair::curve::Point;
use ecpair::field::{Fe, Field};
use ecpair::io::{
    self, ContextDescriptor, CurveDescriptor, ElementJson, FamilyDescriptor, Int, PointJson,
};
use ecpair::ntheory;
use ecpair::optimal::{family_instantiate, lll_reduce, shortest_vector, CurveFamily, RootLattice};
use ecpair::pairings::{HessMode, PairingContext, PairingValue, TateDef, WeilDef};
use ecpair::rng::Seed;
use ecpair::verify::{self, Suite};
use ecpair::{miller, presets};

use crate::output::Output;

#[derive(Parser)]
#[command(
    name = "ecpair",
    version,
    about = "Pairings on elliptic curves over finite fields"
)]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Print one JSON object instead of key: value lines.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Describe F_{p^k}.
    FieldInfo {
        #[arg(long)]
        p: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Describe the curve and groups of a context.
    CurveInfo {
        #[arg(long)]
        context: String,
    },
    /// Write a context file from a preset or a curve file.
    ContextNew {
        #[arg(long, conflicts_with = "curve")]
        preset: Option<String>,
        /// Curve JSON with its group order.
        #[arg(long)]
        curve: Option<PathBuf>,
        #[arg(long)]
        r: Option<String>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        twist: Option<u32>,
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a pairing.
    Pair {
        #[arg(long)]
        context: String,
        /// weil, tate, ate, twisted_ate, ate_i, r_ate, hess or vercauteren.
        #[arg(long)]
        pairing: String,
        #[arg(long)]
        def: Option<u32>,
        #[arg(long, default_value_t = 1)]
        i: u32,
        #[arg(long)]
        twisted: bool,
        #[arg(long)]
        reduced: bool,
        #[arg(long = "P")]
        p: Option<String>,
        #[arg(long = "Q")]
        q: Option<String>,
        /// Coefficients of t(Y), constant first, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        t0: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        t1: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        l0: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        l1: Option<String>,
    },
    /// Run an invariant suite.
    Verify {
        /// weil-equivalence, reciprocity, ate-relation, hess-relation, bkls or trace.
        suite: String,
        #[arg(long)]
        context: String,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// Reduce the lattice of polynomials vanishing at y modulo r.
    Lattice {
        #[arg(long)]
        r: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Instantiate a polynomial curve family.
    Family {
        /// Family JSON; the k = 10 Freeman family when omitted.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, default_value_t = presets::FREEMAN_RANGE)]
        max: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare Miller loop lengths.
    Bench {
        #[arg(long)]
        context: String,
    },
}

pub enum CliError {
    /// Verification failed; carries the rendered report.
    Failed(String),
    Malformed(String),
}

fn bad(e: impl std::fmt::Display) -> CliError {
    CliError::Malformed(e.to_string())
}

type Res<T> = Result<T, CliError>;

pub fn run(cli: &Cli) -> Res<String> {
    let seed = Seed::new(cli.seed);
    let mut out = Output::new();
    match &cli.command {
        Command::FieldInfo { p, k } => field_info(&mut out, p, *k)?,
        Command::CurveInfo { context } => {
            let ctx = load_context(context, seed)?;
            curve_info(&mut out, &ctx);
        }
        Command::ContextNew {
            preset,
            curve,
            r,
            k,
            twist,
            name,
            out: path,
        } => {
            let ctx = match (preset, curve) {
                (Some(name), _) => build_preset(name, seed)?,
                (None, Some(file)) => {
                    let curve: CurveDescriptor = serde_json::from_str(&read(file)?).map_err(bad)?;
                    let (Some(r), Some(k)) = (r, k) else {
                        return Err(bad("--curve needs --r and --k"));
                    };
                    let desc = ContextDescriptor {
                        name: name.clone().unwrap_or_else(|| "custom".into()),
                        curve,
                        r: Int(parse_int(r)?),
                        k: *k,
                        ext: None,
                        g1: None,
                        g2: None,
                        twist: *twist,
                    };
                    desc.to_context(&mut seed.stream("context")).map_err(bad)?
                }
                (None, None) => return Err(bad("context-new needs --preset or --curve")),
            };
            let text = io::context_to_json(&ctx) + "\n";
            match path {
                Some(p) => {
                    std::fs::write(p, &text).map_err(|e| bad(format!("{}: {e}", p.display())))?;
                    out.put("name", ctx.name())
                        .put("written", p.display().to_string());
                }
                None => return Ok(text),
            }
        }
        Command::Pair { context, .. } => {
            let ctx = load_context(context, seed)?;
            pair(&mut out, &ctx, &cli.command, seed)?;
        }
        Command::Verify {
            suite,
            context,
            trials,
        } => {
            let suite: Suite = suite.parse().map_err(bad)?;
            let ctx = load_context(context, seed)?;
            let checks = verify::run(suite, &ctx, *trials, &mut seed.stream("verify"));
            let pass = checks.iter().all(|c| c.pass);
            out.put("suite", suite.name()).put("context", ctx.name());
            for c in &checks {
                let status = if c.pass { "pass" } else { "FAIL" };
                if cli.json {
                    out.put(&c.property, json!({"pass": c.pass, "detail": c.detail}));
                } else {
                    out.put(&c.property, format!("{status} ({})", c.detail));
                }
            }
            out.put("result", if pass { "pass" } else { "fail" });
            if !pass {
                return Err(CliError::Failed(out.render(cli.json)));
            }
        }
        Command::Lattice { r, y, k, dim } => {
            let r = parse_uint(r)?;
            let y = parse_int(y)?;
            let dim = dim.unwrap_or(ntheory::euler_phi(*k as u64) as usize);
            let l = RootLattice::new(&r, &y, dim, *k).map_err(bad)?;
            let reduced = lll_reduce(l.basis()).map_err(bad)?;
            let v = shortest_vector(l.basis()).map_err(bad)?;
            out.put("basis", ints2(l.basis()))
                .put("reduced", ints2(&reduced))
                .put("shortest", ints(&v))
                .put("loop_bits", max_bits(&v))
                .put("r_bits", miller::loop_bits(&BigInt::from(r)));
        }
        Command::Family {
            file,
            max,
            out: path,
        } => {
            let family = match file {
                Some(f) => serde_json::from_str::<FamilyDescriptor>(&read(f)?)
                    .map_err(bad)?
                    .to_family(),
                None => CurveFamily::freeman(),
            };
            family.check_identities().map_err(bad)?;
            let (x0, ctx) =
                family_instantiate(&family, *max, &mut seed.stream("family")).map_err(bad)?;
            let q = BigInt::from(ctx.q().clone());
            let dim = ntheory::euler_phi(family.k as u64) as usize;
            let v = RootLattice::new(ctx.r(), &q, dim, family.k)
                .and_then(|l| shortest_vector(l.basis()))
                .map_err(bad)?;
            out.put("identities", "ok")
                .put("x0", int(&x0))
                .put("p", uint(ctx.q()))
                .put("r", uint(ctx.r()))
                .put("u", int(&family.u_at(&x0)))
                .put("order", uint(ctx.order()))
                .put("curve", ints(&curve_a(&ctx)))
                .put("shortest", ints(&v))
                .put("hess_loop_bits", max_bits(&v))
                .put(
                    "tate_loop_bits",
                    miller::loop_bits(&BigInt::from(ctx.r().clone())),
                );
            if let Some(p) = path {
                std::fs::write(p, io::context_to_json(&ctx) + "\n")
                    .map_err(|e| bad(format!("{}: {e}", p.display())))?;
                out.put("written", p.display().to_string());
            }
        }
        Command::Bench { context } => {
            let ctx = load_context(context, seed)?;
            let rep = ctx.loop_report();
            out.put("context", ctx.name())
                .put("tate", rep.tate)
                .put("ate", rep.ate)
                .put(
                    "twisted_ate",
                    rep.twisted_ate.map(Value::from).unwrap_or(Value::Null),
                )
                .put("hess", rep.hess)
                .put("hess_vector", ints(&rep.hess_vector))
                .put("phi_k", ntheory::euler_phi(ctx.k() as u64));
        }
    }
    Ok(out.render(cli.json))
}

fn read(path: &Path) -> Res<String> {
    std::fs::read_to_string(path).map_err(|e| bad(format!("{}: {e}", path.display())))
}

fn build_preset(name: &str, seed: Seed) -> Res<PairingContext> {
    presets::build(name, &mut seed.stream("context"))
        .ok_or_else(|| {
            bad(format!(
                "unknown context {name:?}; presets: {}",
                presets::NAMES.join(", ")
            ))
        })?
        .map_err(bad)
}

/// A context file, or a preset name with an optional `.json` suffix.
fn load_context(arg: &str, seed: Seed) -> Res<PairingContext> {
    let path = Path::new(arg);
    if path.is_file() {
        return io::context_from_json(&read(path)?, &mut seed.stream("context")).map_err(bad);
    }
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(arg);
    if presets::NAMES.contains(&stem) {
        return build_preset(stem, seed);
    }
    Err(bad(format!("{arg}: no such file or preset")))
}

fn parse_int(s: &str) -> Res<BigInt> {
    s.trim()
        .parse()
        .map_err(|_| bad(format!("not an integer: {s}")))
}

fn parse_uint(s: &str) -> Res<BigUint> {
    s.trim()
        .parse()
        .map_err(|_| bad(format!("not a nonnegative integer: {s}")))
}

fn parse_list(s: &str) -> Res<Vec<BigInt>> {
    s.trim_matches(|c| c == '[' || c == ']')
        .split(',')
        .map(parse_int)
        .collect()
}

fn uint(v: &BigUint) -> Value {
    serde_json::to_value(Int::from(v)).unwrap()
}

fn int(v: &BigInt) -> Value {
    serde_json::to_value(Int::from(v)).unwrap()
}

fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

fn ints2(v: &[Vec<BigInt>]) -> Value {
    Value::Array(v.iter().map(|r| ints(r)).collect())
}

fn element(x: &Fe) -> Value {
    serde_json::to_value(ElementJson::from_fe(x)).unwrap()
}

fn point(p: &Point) -> Value {
    serde_json::to_value(PointJson::from_point(p)).unwrap()
}

fn max_bits(v: &[BigInt]) -> u64 {
    v.iter().map(miller::loop_bits).max().unwrap_or(0)
}

fn curve_a(ctx: &PairingContext) -> Vec<BigInt> {
    ctx.base_curve()
        .coeffs()
        .iter()
        .map(|c| BigInt::from(c.coeffs().first().cloned().unwrap_or_default()))
        .collect()
}

fn field_info(out: &mut Output, p: &str, k: usize) -> Res<()> {
    let f = Field::new(parse_uint(p)?, k).map_err(bad)?;
    let d = f.descriptor();
    out.put("p", d.p.clone())
        .put("k", k)
        .put("order", uint(f.order()))
        .put("modulus", serde_json::to_value(&d.modulus).unwrap());
    Ok(())
}

fn curve_info(out: &mut Output, ctx: &PairingContext) {
    let (r1, r2) = ctx.group_structure();
    out.put("name", ctx.name())
        .put("q", uint(ctx.q()))
        .put(
            "a",
            serde_json::to_value(CurveDescriptor::from_curve(ctx.base_curve(), None).a).unwrap(),
        )
        .put("order", uint(ctx.order()))
        .put("trace", int(ctx.t()))
        .put("r", uint(ctx.r()))
        .put("k", ctx.k())
        .put("embedding_degree", ctx.embedding_degree())
        .put("h1", uint(&ctx.h1()))
        .put("h2", uint(&ctx.h2()))
        .put("ext_group", json!([uint(&r1), uint(&r2)]))
        .put(
            "twist",
            ctx.twist()
                .map(|t| Value::from(t.degree()))
                .unwrap_or(Value::Null),
        )
        .put("g1", point(ctx.g1()))
        .put("g2", point(ctx.g2()));
}

fn pair(out: &mut Output, ctx: &PairingContext, cmd: &Command, seed: Seed) -> Res<()> {
    let Command::Pair {
        pairing,
        def,
        i,
        twisted,
        reduced,
        p,
        q,
        t,
        y,
        t0,
        t1,
        l0,
        l1,
        ..
    } = cmd
    else {
        unreachable!()
    };
    let curve = ctx.curve();
    let parse = |s: &Option<String>, default: &Point| match s {
        Some(s) => io::parse_point(s, curve).map_err(bad),
        None => Ok(default.clone()),
    };
    let (pp, qq) = (parse(p, ctx.g1())?, parse(q, ctx.g2())?);
    let mut rng = seed.stream("pair");
    let reduced = *reduced;
    out.put("pairing", pairing.as_str());
    let value: PairingValue = match pairing.as_str() {
        "weil" => {
            let d = def.unwrap_or(2);
            let wd =
                WeilDef::from_index(d).ok_or_else(|| bad("--def for weil must be 1, 2 or 3"))?;
            out.put("def", d);
            ctx.weil(&pp, &qq, wd, &mut rng).map_err(bad)?
        }
        "tate" => {
            let d = def.unwrap_or(2);
            let td = TateDef::from_index(d).ok_or_else(|| bad("--def for tate must be 1 or 2"))?;
            out.put("def", d);
            ctx.tate(&pp, &qq, td, reduced, &mut rng).map_err(bad)?
        }
        "ate" | "ate_i" | "twisted_ate" => {
            let tw = *twisted || pairing == "twisted_ate";
            let a = ctx.ate(&pp, &qq, *i, tw, reduced).map_err(bad)?;
            out.put("i", *i)
                .put("twisted", tw)
                .put("lambda", int(&a.lambda))
                .put("degenerate", a.degenerate);
            a.value
        }
        "r_ate" => {
            let need = |v: &Option<String>, flag: &str| match v {
                Some(s) => parse_int(s),
                None => Err(bad(format!("r_ate needs --{flag}"))),
            };
            let (a0, a1, b0, b1) = (
                need(t0, "t0")?,
                need(t1, "t1")?,
                need(l0, "l0")?,
                need(l1, "l1")?,
            );
            let v = ctx
                .r_ate(&pp, &qq, &a0, &a1, &b0, &b1, reduced)
                .map_err(bad)?;
            out.put("m", uint(&v.m));
            v.value
        }
        "hess" | "vercauteren" => {
            let mode = match (pairing.as_str(), *twisted) {
                ("vercauteren", true) => return Err(bad("vercauteren has no twisted mode")),
                ("vercauteren", false) => HessMode::Vercauteren,
                (_, true) => HessMode::Twisted,
                (_, false) => HessMode::Generic,
            };
            let (order, e) = match mode {
                HessMode::Twisted => {
                    let d = ctx
                        .twist()
                        .ok_or_else(|| bad("context has no twist"))?
                        .degree();
                    (d, ctx.k() / d)
                }
                _ => (ctx.k(), 1),
            };
            let y = match y {
                Some(s) => parse_int(s)?,
                None => BigInt::from(ctx.q().clone()).pow(e),
            };
            let t = match t {
                Some(s) => parse_list(s)?,
                None => {
                    let dim = ntheory::euler_phi(order as u64) as usize;
                    RootLattice::new(ctx.r(), &y, dim, order)
                        .and_then(|l| shortest_vector(l.basis()))
                        .map_err(bad)?
                }
            };
            let h = ctx.hess(&pp, &qq, &t, &y, mode, reduced).map_err(bad)?;
            out.put("t", ints(&t))
                .put("y", int(&y))
                .put("n", int(&h.n))
                .put("power", uint(&h.power))
                .put("exponent", uint(&h.exponent));
            h.value
        }
        other => return Err(bad(format!("unknown pairing {other:?}"))),
    };
    out.put("reduced", value.reduced)
        .put("value", element(&value.value))
        .put("loop_bits", value.loop_bits)
        .put("chain_length", value.chain_len)
        .put("miller_calls", value.miller_calls);
    Ok(())
}
