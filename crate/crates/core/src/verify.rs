//! Named invariant suites run against a pairing context.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use rand::{Rng, RngCore};

use crate::curve::{Curve, Point};
use crate::field::Fe;
use crate::function_field::{weil_reciprocity_check, LineProduct};
use crate::ntheory;
use crate::optimal::{shortest_vector, RootLattice};
use crate::pairings::{HessMode, PairingContext, PairingError, TateDef, WeilDef};

/// Largest `#E(F_q)` for which the reciprocity suite enumerates points.
const ENUMERATION_LIMIT: u64 = 1 << 16;
/// Largest `r^2` for which the Weil suite runs over all of `E[r] x E[r]`.
const EXHAUSTIVE_LIMIT: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    WeilEquivalence,
    Reciprocity,
    AteRelation,
    HessRelation,
    Bkls,
    Trace,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::WeilEquivalence,
        Suite::Reciprocity,
        Suite::AteRelation,
        Suite::HessRelation,
        Suite::Bkls,
        Suite::Trace,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::WeilEquivalence => "weil-equivalence",
            Suite::Reciprocity => "reciprocity",
            Suite::AteRelation => "ate-relation",
            Suite::HessRelation => "hess-relation",
            Suite::Bkls => "bkls",
            Suite::Trace => "trace",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Suite, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

/// Outcome of one property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub property: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(property: &str, pass: bool, detail: impl Into<String>) -> Check {
        Check {
            property: property.into(),
            pass,
            detail: detail.into(),
        }
    }
}

/// Counts passing trials of a property; an error in any trial fails it.
struct Tally {
    property: &'static str,
    trials: usize,
    failures: usize,
    first: Option<String>,
}

impl Tally {
    fn new(property: &'static str) -> Tally {
        Tally {
            property,
            trials: 0,
            failures: 0,
            first: None,
        }
    }

    fn record(&mut self, outcome: Result<bool, PairingError>, what: impl FnOnce() -> String) {
        self.trials += 1;
        let failed = match outcome {
            Ok(true) => return,
            Ok(false) => what(),
            Err(e) => format!("{}: {e}", what()),
        };
        self.failures += 1;
        self.first.get_or_insert(failed);
    }

    fn finish(self) -> Check {
        let detail = match self.first {
            None => format!("{} trials", self.trials),
            Some(f) => format!(
                "{}/{} trials failed, first: {f}",
                self.failures, self.trials
            ),
        };
        Check::new(self.property, self.failures == 0 && self.trials > 0, detail)
    }
}

fn skipped(property: &str, why: &str) -> Check {
    Check::new(property, true, format!("skipped: {why}"))
}

fn pow_int(x: &Fe, n: &BigInt) -> Fe {
    x.pow_signed(n).expect("pairing values are units")
}

/// Runs `suite` with `trials` random samples per randomized property.
pub fn run(suite: Suite, ctx: &PairingContext, trials: usize, rng: &mut dyn RngCore) -> Vec<Check> {
    match suite {
        Suite::WeilEquivalence => weil_equivalence(ctx, trials, rng),
        Suite::Reciprocity => reciprocity(ctx.base_curve(), trials, rng),
        Suite::AteRelation => ate_relation(ctx, trials, rng),
        Suite::HessRelation => hess_relation(ctx, trials, rng),
        Suite::Bkls => bkls(ctx, trials, rng),
        Suite::Trace => trace(ctx, trials, rng),
    }
}

pub fn weil_equivalence(ctx: &PairingContext, trials: usize, rng: &mut dyn RngCore) -> Vec<Check> {
    let r2 = ctx.r() * ctx.r();
    let pairs: Vec<(Point, Point)> = match ctx.torsion_points() {
        Ok(pts) if r2 <= BigUint::from(EXHAUSTIVE_LIMIT) => pts
            .iter()
            .flat_map(|p| pts.iter().map(move |q| (p.clone(), q.clone())))
            .collect(),
        _ => (0..trials)
            .map(|_| (ctx.random_torsion(rng), ctx.random_torsion(rng)))
            .collect(),
    };
    let defs: &[WeilDef] = match ctx.def1_degree() {
        Ok(_) => &[WeilDef::Translation, WeilDef::Miller, WeilDef::Divisor],
        Err(_) => &[WeilDef::Miller, WeilDef::Divisor],
    };
    let mut agree = Tally::new(if defs.len() == 3 {
        "definitions 1, 2, 3 agree"
    } else {
        "definitions 2, 3 agree (1 infeasible)"
    });
    let mut roots = Tally::new("values are r-th roots of unity");
    for (p, q) in &pairs {
        let vals: Result<Vec<Fe>, PairingError> = defs
            .iter()
            .map(|&d| ctx.weil(p, q, d, rng).map(|v| v.value))
            .collect();
        let desc = || format!("P = {p}, Q = {q}");
        match vals {
            Ok(v) => {
                agree.record(Ok(v.windows(2).all(|w| w[0] == w[1])), desc);
                roots.record(Ok(v[0].pow(ctx.r()).is_one()), desc);
            }
            Err(e) => agree.record(Err(e), desc),
        }
    }
    vec![agree.finish(), roots.finish()]
}

/// A product of random chord, tangent and vertical lines with exponents in `-3..=3`.
pub fn random_line_product(
    curve: &Curve,
    pts: &[Point],
    factors: usize,
    rng: &mut dyn RngCore,
) -> LineProduct {
    let mut f = LineProduct::one();
    for _ in 0..factors {
        let p = &pts[rng.gen_range(0..pts.len())];
        let q = &pts[rng.gen_range(0..pts.len())];
        let (_, l, v) = curve.add_with_lines(p, q);
        f.mul_line(&l, rng.gen_range(-3..=3));
        f.mul_line(&v, rng.gen_range(-2..=2));
    }
    let mut c = curve.field().zero();
    while c.is_zero() {
        c = curve.field().random(rng);
    }
    f.scale(&c)
}

pub fn reciprocity(curve: &Curve, trials: usize, rng: &mut dyn RngCore) -> Vec<Check> {
    let small = curve.field().order() <= &BigUint::from(ENUMERATION_LIMIT);
    let pts = match curve.enumerate_points() {
        Ok(pts) if small => pts,
        _ => {
            return vec![skipped(
                "product of tame symbols is 1",
                "curve too large to enumerate",
            )]
        }
    };
    let mut random = Tally::new("product of tame symbols is 1");
    let mut overlap = Tally::new("product is 1 with shared support");
    for _ in 0..trials {
        let f = random_line_product(curve, &pts, 3, rng);
        let g = random_line_product(curve, &pts, 3, rng);
        random.record(Ok(weil_reciprocity_check(curve, &f, &g)), || {
            format!("f = {}, g = {}", f.dump(), g.dump())
        });
        let fg = f.mul(&g);
        overlap.record(
            Ok(weil_reciprocity_check(curve, &f, &f) && weil_reciprocity_check(curve, &f, &fg)),
            || format!("f = {}, g = {}", f.dump(), g.dump()),
        );
    }
    vec![random.finish(), overlap.finish()]
}

pub fn ate_relation(ctx: &PairingContext, trials: usize, rng: &mut dyn RngCore) -> Vec<Check> {
    if !ctx.has_eigenspaces() {
        return vec![skipped("ate relation", "r divides q - 1")];
    }
    let mut out = Vec::new();
    let mut relation = Tally::new("ate_i^c = tate(Q, P)^n");
    let mut bilinear = Tally::new("ate_i bilinear");
    for i in 1..ctx.k() {
        for _ in 0..trials {
            let (p, q) = (ctx.random_g1(rng), ctx.random_g2(rng));
            let desc = || format!("i = {i}, P = {p}, Q = {q}");
            let outcome = (|| {
                let (c, n) = ctx.ate_relation(i, false)?;
                let a = ctx.ate(&p, &q, i, false, true)?;
                let t = ctx.tate(&q, &p, TateDef::Miller, true, rng)?.value;
                Ok(a.value.value.pow(&c) == pow_int(&t, &n))
            })();
            relation.record(outcome, desc);
            let (x, y) = (rng.gen_range(1..1000u64), rng.gen_range(1..1000u64));
            let outcome = (|| {
                let c = ctx.curve();
                let a = ctx.ate(&p, &q, i, false, true)?.value.value;
                let b = ctx
                    .ate(
                        &c.mul_u(&x.into(), &p),
                        &c.mul_u(&y.into(), &q),
                        i,
                        false,
                        true,
                    )?
                    .value
                    .value;
                Ok(b == a.pow_u64(x * y))
            })();
            bilinear.record(outcome, desc);
        }
    }
    out.push(relation.finish());
    out.push(bilinear.finish());
    match ctx.twist() {
        None => out.push(skipped("twisted ate^c = tate(P, Q)^n", "no twist")),
        Some(tw) => {
            let mut twisted = Tally::new("twisted ate^c = tate(P, Q)^n");
            for i in 1..tw.degree() {
                for _ in 0..trials {
                    let (p, q) = (ctx.random_g1(rng), ctx.random_g2(rng));
                    let outcome = (|| {
                        let (c, n) = ctx.ate_relation(i, true)?;
                        let a = ctx.ate(&p, &q, i, true, true)?;
                        let t = ctx.tate(&p, &q, TateDef::Miller, true, rng)?.value;
                        Ok(a.value.value.pow(&c) == pow_int(&t, &n))
                    })();
                    twisted.record(outcome, || format!("i = {i}, P = {p}, Q = {q}"));
                }
            }
            out.push(twisted.finish());
        }
    }
    out
}

pub fn hess_relation(ctx: &PairingContext, trials: usize, rng: &mut dyn RngCore) -> Vec<Check> {
    if !ctx.has_eigenspaces() {
        return vec![skipped("hess relation", "r divides q - 1")];
    }
    let k = ctx.k();
    let r = BigInt::from(ctx.r().clone());
    let q = BigInt::from(ctx.q().clone());
    let big_t = ctx.big_t().clone();
    let c = BigInt::from(k) * q.pow(k - 1);
    let mut out = Vec::new();

    let n_const = crate::pairings::nondegeneracy_exponent(
        std::slice::from_ref(&r),
        &big_t,
        ctx.q(),
        k,
        ctx.r(),
    );
    out.push(Check::new(
        "N = k q^(k-1) for t = r",
        n_const.as_ref().is_ok_and(|n| *n == c),
        format!("{n_const:?}"),
    ));
    let n_lin = crate::pairings::nondegeneracy_exponent(
        &[-big_t.clone(), BigInt::one()],
        &big_t,
        ctx.q(),
        k,
        ctx.r(),
    );
    let expected = -(big_t.pow(k) - 1u32) / &r;
    out.push(Check::new(
        "N = -(T^k - 1)/r for t = Y - T",
        n_lin.as_ref().is_ok_and(|n| *n == expected),
        format!("{n_lin:?}"),
    ));

    let dim = ntheory::euler_phi(k as u64) as usize;
    let short = RootLattice::new(ctx.r(), &q, dim, k)
        .map_err(|e| e.to_string())
        .and_then(|l| shortest_vector(l.basis()).map_err(|e| e.to_string()));
    let t = match short {
        Ok(t) => t,
        Err(e) => {
            out.push(Check::new("short lattice vector", false, e));
            return out;
        }
    };
    let mut relation = Tally::new("hess^(k q^(k-1)) = tate(Q, P)^N'");
    let mut agree = Tally::new("vercauteren = generic");
    for _ in 0..trials {
        let (p, qq) = (ctx.random_g1(rng), ctx.random_g2(rng));
        let desc = || format!("t = {t:?}, P = {p}, Q = {qq}");
        let outcome = (|| {
            let h = ctx.hess(&p, &qq, &t, &q, HessMode::Generic, true)?;
            let tate = ctx.tate(&qq, &p, TateDef::Miller, true, rng)?.value;
            Ok(h.value.value.pow(&h.power) == tate.pow(&h.exponent))
        })();
        relation.record(outcome, desc);
        let outcome = (|| {
            let g = ctx.hess(&p, &qq, &t, &q, HessMode::Generic, true)?;
            let v = ctx.hess(&p, &qq, &t, &q, HessMode::Vercauteren, true)?;
            Ok(g.value.value == v.value.value)
        })();
        agree.record(outcome, desc);
    }
    out.push(relation.finish());
    out.push(agree.finish());
    out
}

pub fn bkls(ctx: &PairingContext, trials: usize, rng: &mut dyn RngCore) -> Vec<Check> {
    const NAME: &str = "denominator-free tate = full tate";
    if ctx.curve().distortion(ctx.g1()).is_err() {
        return vec![skipped(NAME, "no distortion map")];
    }
    let mut t = Tally::new(NAME);
    for _ in 0..trials {
        let p = ctx.random_g1(rng);
        let q = ctx.random_g1(rng);
        let outcome = (|| {
            let dq = ctx.curve().distortion(&q).map_err(PairingError::from)?;
            let full = ctx.tate(&p, &dq, TateDef::Miller, true, rng)?.value;
            Ok(ctx.tate_reduced_without_denominators(&p, &dq)? == full)
        })();
        t.record(outcome, || format!("P = {p}, Q = {q}"));
    }
    vec![t.finish()]
}

pub fn trace(ctx: &PairingContext, trials: usize, rng: &mut dyn RngCore) -> Vec<Check> {
    let k = BigUint::from(ctx.k());
    let c = ctx.curve();
    let mut g1 = Tally::new("Tr(P) = kP on G1");
    let mut rational = Tally::new("Tr(R) lies in E(F_q)");
    for _ in 0..trials {
        let p = ctx.random_g1(rng);
        g1.record(Ok(ctx.trace(&p) == c.mul_u(&k, &p)), || format!("P = {p}"));
        let r = ctx.random_point(rng);
        let tr = ctx.trace(&r);
        rational.record(Ok(ctx.frobenius(&tr, 1) == tr), || format!("R = {r}"));
    }
    let mut out = vec![g1.finish(), rational.finish()];
    if ctx.has_eigenspaces() {
        let mut g2 = Tally::new("Tr(Q) = O on G2");
        for _ in 0..trials {
            let q = ctx.random_g2(rng);
            g2.record(Ok(ctx.trace(&q).is_infinity()), || format!("Q = {q}"));
        }
        out.push(g2.finish());
    } else {
        out.push(skipped("Tr(Q) = O on G2", "r divides q - 1"));
    }
    out
}
