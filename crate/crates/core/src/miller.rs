//! Addition–negation chains and Miller's algorithm, factored or evaluated.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::curve::{Curve, Line, Point};
use crate::field::Fe;
use crate::function_field::{Divisor, LineProduct};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MillerError {
    #[error("a line through the multiple {value}P meets the evaluation divisor at {point}")]
    SupportCollision { value: BigInt, point: Point },
    #[error("no chain reaches {0} while avoiding the forbidden multiples")]
    UnreachableTarget(BigInt),
    #[error("support avoidance failed after {0} attempts")]
    RandomizationExhausted(u32),
    #[error("malformed chain: {0}")]
    MalformedChain(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    Init,
    Neg(usize),
    Add(usize, usize),
}

/// Addition–negation chain; indices in rules are 0-based positions in `entries`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    entries: Vec<(BigInt, Rule)>,
}

impl Chain {
    fn start() -> Chain {
        Chain {
            entries: vec![(BigInt::one(), Rule::Init)],
        }
    }

    fn push(&mut self, rule: Rule) -> usize {
        let v = match rule {
            Rule::Init => BigInt::one(),
            Rule::Neg(j) => -&self.entries[j].0,
            Rule::Add(j, k) => &self.entries[j].0 + &self.entries[k].0,
        };
        self.entries.push((v, rule));
        self.entries.len() - 1
    }

    pub fn entries(&self) -> &[(BigInt, Rule)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn last_value(&self) -> &BigInt {
        &self.entries.last().unwrap().0
    }

    pub fn values(&self) -> impl Iterator<Item = &BigInt> {
        self.entries.iter().map(|(v, _)| v)
    }

    pub fn index_of(&self, v: &BigInt) -> Option<usize> {
        self.entries.iter().position(|(x, _)| x == v)
    }

    /// Number of doubling steps (additions of an entry to itself).
    pub fn doublings(&self) -> usize {
        self.entries
            .iter()
            .filter(|(_, r)| matches!(r, Rule::Add(j, k) if j == k))
            .count()
    }

    /// Checks the structural invariants and that the stored values replay.
    pub fn validate(&self) -> Result<(), MillerError> {
        let bad = |m: String| Err(MillerError::MalformedChain(m));
        match self.entries.first() {
            Some((v, Rule::Init)) if v.is_one() => {}
            _ => return bad("first entry must be 1 = init".into()),
        }
        for (i, (v, r)) in self.entries.iter().enumerate().skip(1) {
            let want = match *r {
                Rule::Init => return bad(format!("init at position {}", i + 1)),
                Rule::Neg(j) if j < i => -&self.entries[j].0,
                Rule::Add(j, k) if j < i && k < i => &self.entries[j].0 + &self.entries[k].0,
                _ => return bad(format!("forward reference at position {}", i + 1)),
            };
            if &want != v {
                return bad(format!("value mismatch at position {}", i + 1));
            }
        }
        Ok(())
    }

    /// `index: value = rule` lines with 1-based indices.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (i, (v, r)) in self.entries.iter().enumerate() {
            let rule = match r {
                Rule::Init => "init".to_string(),
                Rule::Neg(j) => format!("neg({})", j + 1),
                Rule::Add(j, k) => format!("add({}, {})", j + 1, k + 1),
            };
            s.push_str(&format!("{}: {} = {}\n", i + 1, v, rule));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Chain, MillerError> {
        let bad = |l: &str| MillerError::MalformedChain(l.to_string());
        let mut entries = Vec::new();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let (idx, rest) = line.split_once(':').ok_or_else(|| bad(line))?;
            let (val, rule) = rest.split_once('=').ok_or_else(|| bad(line))?;
            let idx: usize = idx.trim().parse().map_err(|_| bad(line))?;
            if idx != entries.len() + 1 {
                return Err(bad(line));
            }
            let val: BigInt = val.trim().parse().map_err(|_| bad(line))?;
            let rule = rule.trim();
            let args = |s: &str| -> Result<Vec<usize>, MillerError> {
                let inner = s
                    .split_once('(')
                    .and_then(|(_, r)| r.strip_suffix(')'))
                    .ok_or_else(|| bad(line))?;
                inner
                    .split(',')
                    .map(|a| {
                        a.trim()
                            .parse::<usize>()
                            .ok()
                            .filter(|&x| x >= 1)
                            .map(|x| x - 1)
                            .ok_or_else(|| bad(line))
                    })
                    .collect()
            };
            let r = if rule == "init" {
                Rule::Init
            } else if rule.starts_with("neg") {
                match args(rule)?[..] {
                    [j] => Rule::Neg(j),
                    _ => return Err(bad(line)),
                }
            } else if rule.starts_with("add") {
                match args(rule)?[..] {
                    [j, k] => Rule::Add(j, k),
                    _ => return Err(bad(line)),
                }
            } else {
                return Err(bad(line));
            };
            entries.push((val, r));
        }
        let c = Chain { entries };
        c.validate()?;
        Ok(c)
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.dump())
    }
}

/// How `build_chain` chooses its chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainMode {
    DoubleAndAdd,
    Avoid(BTreeSet<BigInt>),
    Multi(Vec<BigInt>),
}

pub fn build_chain(n: &BigInt, mode: &ChainMode) -> Result<Chain, MillerError> {
    if n.is_zero() && !matches!(mode, ChainMode::Multi(_)) {
        return Err(MillerError::UnreachableTarget(n.clone()));
    }
    match mode {
        ChainMode::DoubleAndAdd => Ok(double_and_add(n)),
        ChainMode::Avoid(forbidden) => avoiding_chain(n, forbidden),
        ChainMode::Multi(targets) => Ok(multi_chain(targets)),
    }
}

/// Big-endian double-and-add, negated at the end for negative `n`.
fn double_and_add(n: &BigInt) -> Chain {
    let mut c = Chain::start();
    let m = n.magnitude();
    let mut cur = 0;
    for i in (0..m.bits().saturating_sub(1)).rev() {
        cur = c.push(Rule::Add(cur, cur));
        if m.bit(i) {
            cur = c.push(Rule::Add(cur, 0));
        }
    }
    if n.sign() == Sign::Minus {
        c.push(Rule::Neg(cur));
    }
    c
}

/// A chain avoiding `forbidden`: plain binary, then binary with sign flips, then
/// random signed-digit expansions.
fn avoiding_chain(n: &BigInt, forbidden: &BTreeSet<BigInt>) -> Result<Chain, MillerError> {
    let plain = double_and_add(n);
    if plain.values().all(|v| !forbidden.contains(v)) {
        return Ok(plain);
    }
    let unreachable = || MillerError::UnreachableTarget(n.clone());
    let ok = |v: &BigInt| !v.is_zero() && !forbidden.contains(v);
    if !ok(&BigInt::one()) || !ok(n) {
        return Err(unreachable());
    }
    if let Ok(c) = signed_binary_chain(n, forbidden) {
        return Ok(c);
    }
    let mut rng = ChaCha20Rng::seed_from_u64(0xc4a1);
    for _ in 0..256 {
        let c = signed_digit_chain(n, &mut rng);
        if c.values().all(|v| !forbidden.contains(v)) {
            return Ok(c);
        }
    }
    Err(unreachable())
}

/// Random signed-digit expansion: odd values step to `(v -+ 1)/2`.
fn signed_digit_chain(n: &BigInt, rng: &mut dyn RngCore) -> Chain {
    let mut v = n.magnitude().clone();
    let mut digits: Vec<i8> = Vec::new();
    while !v.is_one() {
        if v.is_even() {
            digits.push(0);
            v >>= 1;
        } else if rng.next_u32() & 1 == 0 {
            digits.push(1);
            v = (v - 1u32) >> 1;
        } else {
            digits.push(-1);
            v = (v + 1u32) >> 1;
        }
    }
    let mut c = Chain::start();
    let mut cur = 0;
    let mut minus_one = None;
    for &d in digits.iter().rev() {
        cur = c.push(Rule::Add(cur, cur));
        match d {
            1 => cur = c.push(Rule::Add(cur, 0)),
            -1 => {
                let m = *minus_one.get_or_insert_with(|| c.push(Rule::Neg(0)));
                cur = c.push(Rule::Add(cur, m));
            }
            _ => {}
        }
    }
    if n.sign() == Sign::Minus {
        c.push(Rule::Neg(cur));
    }
    c
}

/// Binary chain where each prefix may be held with either sign.
fn signed_binary_chain(n: &BigInt, forbidden: &BTreeSet<BigInt>) -> Result<Chain, MillerError> {
    let unreachable = || MillerError::UnreachableTarget(n.clone());
    let ok = |v: &BigInt| !v.is_zero() && !forbidden.contains(v);
    let m = n.magnitude();
    let bits: Vec<bool> = (0..m.bits()).rev().map(|i| m.bit(i)).collect();
    let minus_one_ok = ok(&BigInt::from(-1));
    // State: (prefix value a, sign s) with the chain holding s*a.
    // dp[s] = Some(steps) with back-pointers kept as explicit paths (short: <= 3 log n).
    #[derive(Clone)]
    enum Step {
        Double,
        AddOne,
        Flip,
    }
    let mut paths: [Option<Vec<Step>>; 2] = [Some(Vec::new()), None];
    let mut a = BigInt::one();
    let sval = |s: usize, a: &BigInt| if s == 0 { a.clone() } else { -a };
    let relax = |paths: &mut [Option<Vec<Step>>; 2], a: &BigInt| {
        for s in 0..2 {
            let t = 1 - s;
            if let Some(p) = paths[s].clone() {
                if ok(&sval(t, a)) && paths[t].as_ref().is_none_or(|q| q.len() > p.len() + 1) {
                    let mut p = p;
                    p.push(Step::Flip);
                    paths[t] = Some(p);
                }
            }
        }
    };
    relax(&mut paths, &a);
    for &bit in &bits[1..] {
        let mut next: [Option<Vec<Step>>; 2] = [None, None];
        let doubled = &a * 2;
        for s in 0..2 {
            let Some(p) = &paths[s] else { continue };
            if !ok(&sval(s, &doubled)) {
                continue;
            }
            let mut p = p.clone();
            p.push(Step::Double);
            if bit {
                if s == 1 && !minus_one_ok {
                    continue;
                }
                if !ok(&sval(s, &(&doubled + 1))) {
                    continue;
                }
                p.push(Step::AddOne);
            }
            next[s] = Some(p);
        }
        a = if bit { doubled + 1 } else { doubled };
        paths = next;
        relax(&mut paths, &a);
        if paths.iter().all(|p| p.is_none()) {
            return Err(unreachable());
        }
    }
    let s_final = if n.sign() == Sign::Minus { 1 } else { 0 };
    let path = paths[s_final].clone().ok_or_else(unreachable)?;
    let mut c = Chain::start();
    let mut cur = 0;
    let mut sign = 0;
    let mut minus_one: Option<usize> = None;
    for step in path {
        match step {
            Step::Double => cur = c.push(Rule::Add(cur, cur)),
            Step::AddOne => {
                let one = if sign == 0 {
                    0
                } else {
                    *minus_one.get_or_insert_with(|| c.push(Rule::Neg(0)))
                };
                cur = c.push(Rule::Add(cur, one));
            }
            Step::Flip => {
                cur = c.push(Rule::Neg(cur));
                sign = 1 - sign;
            }
        }
    }
    debug_assert_eq!(c.last_value(), n);
    if c.values().any(|v| forbidden.contains(v)) {
        return Err(unreachable());
    }
    Ok(c)
}

/// Union of double-and-add chains for every target, sharing common prefixes.
fn multi_chain(targets: &[BigInt]) -> Chain {
    let mut c = Chain::start();
    let mut index: HashMap<BigInt, usize> = HashMap::from([(BigInt::one(), 0)]);
    let push = |c: &mut Chain, index: &mut HashMap<BigInt, usize>, rule: Rule| -> usize {
        let v = match rule {
            Rule::Neg(j) => -&c.entries[j].0,
            Rule::Add(j, k) => &c.entries[j].0 + &c.entries[k].0,
            Rule::Init => BigInt::one(),
        };
        if let Some(&i) = index.get(&v) {
            return i;
        }
        let i = c.push(rule);
        index.insert(v, i);
        i
    };
    let mut sorted: Vec<&BigInt> = targets.iter().filter(|t| !t.is_zero()).collect();
    sorted.sort_by_key(|t| t.magnitude().clone());
    for t in sorted {
        if index.contains_key(t) {
            continue;
        }
        let m = t.magnitude();
        let mut cur = 0;
        for i in (0..m.bits().saturating_sub(1)).rev() {
            cur = push(&mut c, &mut index, Rule::Add(cur, cur));
            if m.bit(i) {
                cur = push(&mut c, &mut index, Rule::Add(cur, 0));
            }
        }
        if t.sign() == Sign::Minus {
            push(&mut c, &mut index, Rule::Neg(cur));
        }
    }
    c
}

/// Output of a Miller run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MillerValue {
    /// `f_{n,P}` as a merged product of lines.
    Factored(LineProduct),
    /// `f_{n,P}(D)`.
    Evaluated(Fe),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MillerResult {
    pub value: MillerValue,
    pub endpoint: Point,
    pub chain_len: usize,
}

impl MillerResult {
    pub fn function(&self) -> Option<&LineProduct> {
        match &self.value {
            MillerValue::Factored(f) => Some(f),
            MillerValue::Evaluated(_) => None,
        }
    }

    pub fn field_value(&self) -> Option<&Fe> {
        match &self.value {
            MillerValue::Evaluated(v) => Some(v),
            MillerValue::Factored(_) => None,
        }
    }
}

/// Numerator and denominator of `f(D)` for a single line, or the offending point.
fn line_at_divisor(l: &Line, d: &Divisor, one: &Fe) -> Result<(Fe, Fe), Point> {
    let mut num = one.clone();
    let mut den = one.clone();
    if l.is_one() {
        return Ok((num, den));
    }
    for (p, n) in d.terms() {
        // Lines are monic at O.
        let Some(v) = l.eval(p) else { continue };
        if v.is_zero() {
            return Err(p.clone());
        }
        let e = n.unsigned_abs();
        if n > 0 {
            num = num * v.pow_u64(e);
        } else {
            den = den * v.pow_u64(e);
        }
    }
    Ok((num, den))
}

/// Per-entry `(f_i, multiple)` in factored form.
pub fn miller_factored_entries(
    curve: &Curve,
    chain: &Chain,
    p: &Point,
) -> Vec<(LineProduct, Point)> {
    let mut out: Vec<(LineProduct, Point)> = Vec::with_capacity(chain.len());
    for (_, rule) in chain.entries() {
        let next = match *rule {
            Rule::Init => (LineProduct::one(), p.clone()),
            Rule::Neg(j) => {
                let (fj, pj) = &out[j];
                let v = Line::vertical(pj);
                let f = fj.mul(&LineProduct::line(&v)).inv();
                (f, curve.neg(pj))
            }
            Rule::Add(j, k) => {
                let (r, l, v) = curve.add_with_lines(&out[j].1, &out[k].1);
                let f = out[j].0.mul(&out[k].0).mul(&LineProduct::ratio(&l, &v));
                (f, r)
            }
        };
        out.push(next);
    }
    out
}

/// Per-entry `(numerator, denominator, multiple)` of `f_i(D)`.
pub fn miller_evaluated_entries(
    curve: &Curve,
    chain: &Chain,
    p: &Point,
    d: &Divisor,
) -> Result<Vec<(Fe, Fe, Point)>, MillerError> {
    let one = curve.field().one();
    let mut out: Vec<(Fe, Fe, Point)> = Vec::with_capacity(chain.len());
    // Name the multiple whose point (up to sign) met the divisor.
    let collision = |cands: &[(&BigInt, &Point)], point: Point| {
        let value = cands
            .iter()
            .find(|(_, q)| **q == point || curve.neg(q) == point)
            .map_or_else(|| cands[0].0.clone(), |(v, _)| (*v).clone());
        MillerError::SupportCollision { value, point }
    };
    for (value, rule) in chain.entries() {
        let next = match *rule {
            Rule::Init => (one.clone(), one.clone(), p.clone()),
            Rule::Neg(j) => {
                let (nj, dj, pj) = &out[j];
                let vj = &chain.entries()[j].0;
                let (vn, vd) = line_at_divisor(&Line::vertical(pj), d, &one)
                    .map_err(|pt| collision(&[(vj, pj)], pt))?;
                (dj * &vd, nj * &vn, curve.neg(pj))
            }
            Rule::Add(j, k) => {
                let (r, l, v) = curve.add_with_lines(&out[j].2, &out[k].2);
                let cands = [
                    (&chain.entries()[j].0, &out[j].2),
                    (&chain.entries()[k].0, &out[k].2),
                    (value, &r),
                ];
                let (ln, ld) = line_at_divisor(&l, d, &one).map_err(|pt| collision(&cands, pt))?;
                let (vn, vd) =
                    line_at_divisor(&v, d, &one).map_err(|pt| collision(&cands[2..], pt))?;
                let num = &out[j].0 * &out[k].0 * ln * vd;
                let den = &out[j].1 * &out[k].1 * ld * vn;
                (num, den, r)
            }
        };
        out.push(next);
    }
    Ok(out)
}

/// Miller's algorithm along a given chain. Without `eval_at` the function is returned
/// in factored form; with it, `f(eval_at)` is accumulated as numerator/denominator.
pub fn miller_with_chain(
    curve: &Curve,
    chain: &Chain,
    p: &Point,
    eval_at: Option<&Divisor>,
) -> Result<MillerResult, MillerError> {
    match eval_at {
        None => {
            let (f, endpoint) = miller_factored_entries(curve, chain, p).pop().unwrap();
            Ok(MillerResult {
                value: MillerValue::Factored(f),
                endpoint,
                chain_len: chain.len(),
            })
        }
        Some(d) => {
            let (num, den, endpoint) = miller_evaluated_entries(curve, chain, p, d)?.pop().unwrap();
            Ok(MillerResult {
                value: MillerValue::Evaluated(num / den),
                endpoint,
                chain_len: chain.len(),
            })
        }
    }
}

/// Miller's algorithm with the default double-and-add chain.
pub fn miller(
    curve: &Curve,
    n: &BigInt,
    p: &Point,
    eval_at: Option<&Divisor>,
) -> Result<MillerResult, MillerError> {
    if n.is_zero() {
        return Ok(MillerResult {
            value: match eval_at {
                None => MillerValue::Factored(LineProduct::one()),
                Some(_) => MillerValue::Evaluated(curve.field().one()),
            },
            endpoint: Point::Infinity,
            chain_len: 0,
        });
    }
    miller_with_chain(curve, &double_and_add(n), p, eval_at)
}

/// `(f_{n,P}, nP)` in factored form.
pub fn miller_function(curve: &Curve, n: i64, p: &Point) -> (LineProduct, Point) {
    let r = miller(curve, &BigInt::from(n), p, None).unwrap();
    match r.value {
        MillerValue::Factored(f) => (f, r.endpoint),
        MillerValue::Evaluated(_) => unreachable!(),
    }
}

/// `f_{n,P}(D)` with the default chain.
pub fn miller_value(curve: &Curve, n: &BigInt, p: &Point, d: &Divisor) -> Result<Fe, MillerError> {
    let r = miller(curve, n, p, Some(d))?;
    Ok(r.field_value().unwrap().clone())
}

/// Values `f_{t,P}(D)` for every target `t` from one multi-target pass.
pub fn miller_multi(
    curve: &Curve,
    targets: &[BigInt],
    p: &Point,
    d: &Divisor,
) -> Result<(Vec<Fe>, Chain), MillerError> {
    let chain = multi_chain(targets);
    let entries = miller_evaluated_entries(curve, &chain, p, d)?;
    let one = curve.field().one();
    let vals = targets
        .iter()
        .map(|t| {
            if t.is_zero() {
                return one.clone();
            }
            let i = chain.index_of(t).expect("target in chain");
            &entries[i].0 / &entries[i].1
        })
        .collect();
    Ok((vals, chain))
}

/// The three support-avoidance strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Replace `D` by the equivalent `sum n_P [P + R]` (degree-0 `D` only).
    ShiftDivisor,
    /// Replace every affine point `Q` of `D` by `Q + nR`.
    ShiftByNR,
    /// Keep `D` and use a chain avoiding the colliding multiples.
    AvoidChain,
}

const RETRIES: u32 = 64;

/// `f_{n,P}` at `D` (or at a divisor equivalent to it, depending on the strategy).
pub fn eval_with_avoidance(
    curve: &Curve,
    n: &BigInt,
    p: &Point,
    d: &Divisor,
    strategy: Strategy,
    rng: &mut dyn RngCore,
) -> Result<Fe, MillerError> {
    if let Ok(v) = miller_value(curve, n, p, d) {
        return Ok(v);
    }
    match strategy {
        Strategy::ShiftDivisor => {
            for _ in 0..RETRIES {
                let r = curve.random_point(rng);
                let shifted = d.map_points(|x| curve.add(x, &r));
                if let Ok(v) = miller_value(curve, n, p, &shifted) {
                    return Ok(v);
                }
            }
        }
        Strategy::ShiftByNR => {
            for _ in 0..RETRIES {
                let r = curve.random_point(rng);
                let nr = curve.mul(n, &r);
                let shifted = d.map_points(|x| {
                    if x.is_infinity() {
                        x.clone()
                    } else {
                        curve.add(x, &nr)
                    }
                });
                if let Ok(v) = miller_value(curve, n, p, &shifted) {
                    return Ok(v);
                }
            }
        }
        Strategy::AvoidChain => {
            let mut forbidden = BTreeSet::new();
            for _ in 0..RETRIES {
                let chain = avoiding_chain(n, &forbidden)?;
                match miller_with_chain(curve, &chain, p, Some(d)) {
                    Ok(r) => return Ok(r.field_value().unwrap().clone()),
                    Err(MillerError::SupportCollision { value, .. }) => {
                        if !forbidden.insert(value.clone()) {
                            return Err(MillerError::UnreachableTarget(n.clone()));
                        }
                        // The vertical through vP also meets -vP.
                        forbidden.insert(-value);
                    }
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Err(MillerError::RandomizationExhausted(RETRIES))
}

/// `floor(log2 |n|)`, the doubling count of a double-and-add loop on `n`.
pub fn loop_bits(n: &BigInt) -> u64 {
    n.abs().bits().saturating_sub(1)
}

pub fn to_i64(n: &BigInt) -> Option<i64> {
    n.to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use num_bigint::BigUint;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn e13() -> Curve {
        Curve::from_i64(&Field::new(13u32, 1).unwrap(), [1, 2, 3, 4, 5]).unwrap()
    }

    /// Expected divisor of f_{n,P}: n[P] - [nP] - (n-1)[O].
    fn def7(curve: &Curve, n: i64, p: &Point) -> Divisor {
        let mut d = Divisor::point(p, n);
        d.add_term(&curve.mul_i64(n, p), -1);
        d.add_term(&Point::Infinity, -(n - 1));
        d
    }

    #[test]
    fn chain_shapes() {
        let vals = |c: &Chain| c.values().cloned().collect::<Vec<_>>();
        assert_eq!(
            vals(&build_chain(&b(1), &ChainMode::DoubleAndAdd).unwrap()),
            vec![b(1)]
        );
        assert_eq!(
            vals(&build_chain(&b(6), &ChainMode::DoubleAndAdd).unwrap()),
            [1, 2, 3, 6].map(b).to_vec()
        );
        for n in 1..300i64 {
            let c = build_chain(&b(n), &ChainMode::DoubleAndAdd).unwrap();
            c.validate().unwrap();
            assert_eq!(c.last_value(), &b(n));
            assert!(c.len() as u64 <= 2 * loop_bits(&b(n)) + 1);
            let c = build_chain(&b(-n), &ChainMode::DoubleAndAdd).unwrap();
            assert_eq!(c.last_value(), &b(-n));
        }
        assert!(build_chain(&b(0), &ChainMode::DoubleAndAdd).is_err());
    }

    #[test]
    fn avoiding_chains() {
        let forbidden: BTreeSet<BigInt> = [b(2)].into();
        let c = build_chain(&b(5), &ChainMode::Avoid(forbidden.clone())).unwrap();
        c.validate().unwrap();
        assert_eq!(c.last_value(), &b(5));
        assert!(c.values().all(|v| !forbidden.contains(v)));
        let mut rng = ChaCha20Rng::seed_from_u64(4);
        for _ in 0..300 {
            let n = b(rng.gen_range(3..5000));
            let forbidden: BTreeSet<BigInt> = (0..3)
                .map(|_| b(rng.gen_range(2..(n.to_i64().unwrap()))))
                .collect();
            match build_chain(&n, &ChainMode::Avoid(forbidden.clone())) {
                Ok(c) => {
                    c.validate().unwrap();
                    assert_eq!(c.last_value(), &n);
                    assert!(c.values().all(|v| !forbidden.contains(v)));
                }
                Err(MillerError::UnreachableTarget(_)) => {}
                Err(e) => panic!("{e}"),
            }
        }
        let blocked: BTreeSet<BigInt> = [b(1)].into();
        assert!(build_chain(&b(5), &ChainMode::Avoid(blocked)).is_err());
    }

    #[test]
    fn multi_target_chain_covers_all() {
        let targets = [b(13), b(-7), b(100), b(3), b(13)];
        let c = build_chain(&b(1), &ChainMode::Multi(targets.to_vec())).unwrap();
        c.validate().unwrap();
        for t in &targets {
            assert!(c.index_of(t).is_some());
        }
    }

    #[test]
    fn chain_dump_round_trips() {
        let c = build_chain(&b(-11), &ChainMode::DoubleAndAdd).unwrap();
        let text = c.dump();
        assert!(text.starts_with("1: 1 = init\n2: 2 = add(1, 1)\n"));
        assert_eq!(Chain::parse(&text).unwrap(), c);
        assert!(Chain::parse("1: 1 = init\n2: 3 = add(1, 1)\n").is_err());
        assert!(Chain::parse("1: 1 = init\n2: 2 = add(2, 1)\n").is_err());
    }

    #[test]
    fn miller_one_is_constant() {
        let e = e13();
        let p = e.enumerate_points().unwrap()[4].clone();
        let r = miller(&e, &b(1), &p, None).unwrap();
        assert!(r.function().unwrap().is_one());
        assert_eq!(r.endpoint, p);
    }

    #[test]
    fn miller_two_at_two_torsion_is_the_vertical() {
        let e = Curve::from_i64(&Field::new(7u32, 1).unwrap(), [0, 0, 0, 1, 0]).unwrap();
        let t = e.point_u64(0, 0).unwrap();
        let (f, end) = miller_function(&e, 2, &t);
        assert_eq!(end, Point::Infinity);
        let mut want = Divisor::point(&t, 2);
        want.add_term(&Point::Infinity, -2);
        assert_eq!(f.divisor(&e), want);
        assert_eq!(f, LineProduct::line(&Line::vertical(&t)));
    }

    #[test]
    fn definition_seven_divisors() {
        let e = e13();
        let pts = e.enumerate_points().unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(8);
        for _ in 0..50 {
            let p = &pts[rng.gen_range(1..pts.len())];
            let n = rng.gen_range(-40..40i64);
            let (f, end) = miller_function(&e, n, p);
            assert_eq!(end, e.mul_i64(n, p));
            assert_eq!(f.divisor(&e), def7(&e, n, p), "n={n} P={p}");
            assert!(f.lc_at_infinity(&e).is_one());
        }
    }

    #[test]
    fn factored_and_evaluated_agree() {
        let f = Field::new(1009u32, 2).unwrap();
        let e = Curve::from_i64(&f, [0, 0, 0, 3, 11]).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        for _ in 0..20 {
            let p = e.random_point(&mut rng);
            let q = e.random_point(&mut rng);
            let s = e.random_point(&mut rng);
            let d = Divisor::point(&q, 1).sub(&Divisor::point(&s, 1));
            let n = b(rng.gen_range(-500..500));
            let c = build_chain(&n, &ChainMode::DoubleAndAdd).unwrap_or_else(|_| Chain::start());
            let fac = miller_with_chain(&e, &c, &p, None).unwrap();
            let ev = miller_with_chain(&e, &c, &p, Some(&d)).unwrap();
            assert_eq!(fac.endpoint, ev.endpoint);
            assert_eq!(
                fac.function().unwrap().evaluate(&e, &d).unwrap(),
                ev.field_value().unwrap().clone()
            );
        }
    }

    #[test]
    fn avoidance_strategies_resolve_collisions() {
        let f = Field::new(1009u32, 1).unwrap();
        let e = Curve::from_i64(&f, [0, 0, 0, 3, 11]).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(6);
        let p = e.random_point(&mut rng);
        // D contains 3P, which the chain for 13 passes through.
        let d =
            Divisor::point(&e.mul_i64(3, &p), 1).sub(&Divisor::point(&e.random_point(&mut rng), 1));
        assert!(matches!(
            miller_value(&e, &b(13), &p, &d),
            Err(MillerError::SupportCollision { .. })
        ));
        for s in [super::Strategy::ShiftDivisor, super::Strategy::AvoidChain] {
            eval_with_avoidance(&e, &b(13), &p, &d, s, &mut rng).unwrap();
        }
        // With AvoidChain the value is exact: it matches the factored function.
        let (fun, _) = miller_function(&e, 13, &p);
        let v =
            eval_with_avoidance(&e, &b(13), &p, &d, super::Strategy::AvoidChain, &mut rng).unwrap();
        assert_eq!(v, fun.evaluate(&e, &d).unwrap());
    }

    #[test]
    fn multiple_of_order_and_composition() {
        // Curve with a point of prime order r over F_p and evaluation in F_{p^2}.
        let base = Field::new(1009u32, 1).unwrap();
        let e0 = Curve::from_i64(&base, [0, 0, 0, 3, 11]).unwrap();
        let n = e0.count_points().unwrap();
        let (r, _) = crate::ntheory::factor(&n).pop().unwrap();
        let l = Field::new(1009u32, 2).unwrap();
        let e = e0.base_change(&l).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(21);
        let p = loop {
            let pt = e0.random_point(&mut rng);
            let pr = e0.mul_u(&(&n / &r), &pt);
            if !pr.is_infinity() {
                break pr.map(|c| c.lift_to(&l).unwrap());
            }
        };
        let r = BigInt::from(r);
        for _ in 0..5 {
            let q = e.random_point(&mut rng);
            let s = e.random_point(&mut rng);
            let d = Divisor::point(&q, 1).sub(&Divisor::point(&s, 1));
            let fr = miller_value(&e, &r, &p, &d).unwrap();
            for c in [2i64, 3, 5] {
                let fcr = miller_value(&e, &(&r * c), &p, &d).unwrap();
                assert_eq!(fcr, fr.pow_u64(c as u64));
                let fcr1 = miller_value(&e, &(&r * c + 1), &p, &d).unwrap();
                assert_eq!(fcr1, fcr);
            }
            for _ in 0..5 {
                let i = rng.gen_range(1..200i64);
                let j = rng.gen_range(1..200i64);
                let (_, lij, vij) = e.add_with_lines(&e.mul_i64(i, &p), &e.mul_i64(j, &p));
                let fi = miller_value(&e, &b(i), &p, &d).unwrap();
                let fj = miller_value(&e, &b(j), &p, &d).unwrap();
                let fij = miller_value(&e, &b(i + j), &p, &d).unwrap();
                let corr = LineProduct::ratio(&lij, &vij).evaluate(&e, &d).unwrap();
                assert_eq!(fij, fi * fj * corr);
            }
        }
        let _ = BigUint::one();
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn endpoint_is_scalar_multiple(seed in any::<u64>(), n in 1i64..65536) {
            let e = Curve::from_i64(&Field::new(1009u32, 1).unwrap(), [0, 0, 0, 3, 11]).unwrap();
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            let p = e.random_point(&mut rng);
            let r = miller(&e, &b(n), &p, None).unwrap();
            prop_assert_eq!(r.endpoint, e.mul_i64(n, &p));
        }
    }
}
