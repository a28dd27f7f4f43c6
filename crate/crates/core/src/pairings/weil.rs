//! The Weil pairing `E[r] x E[r] -> mu_r` by its three classical definitions.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use super::{PairingContext, PairingError, PairingValue, RETRIES};
use crate::curve::{Curve, Point};
use crate::field::{Embedding, Field};
use crate::function_field::{function_from_divisor, Divisor};
use crate::miller::{self, MillerError};
use crate::ntheory;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WeilDef {
    /// `(g_P o tau_Q)/g_P` with `div g_P = [r]^*([P] - [O])`.
    Translation,
    /// `(-1)^r f_P(Q)/f_Q(P)` with monic Miller functions.
    Miller,
    /// `f_{D_P}(D_Q)/f_{D_Q}(D_P)` for shifted divisors.
    Divisor,
}

impl WeilDef {
    pub fn from_index(i: u32) -> Option<WeilDef> {
        match i {
            1 => Some(WeilDef::Translation),
            2 => Some(WeilDef::Miller),
            3 => Some(WeilDef::Divisor),
            _ => None,
        }
    }
}

/// Largest field size over which the full `r`-primary torsion is enumerated.
const DEF1_BOUND: u64 = 1 << 20;

/// An extension `F_{p^m}` containing `E[r^2]`, with `E[r]` and a preimage under `[r]`
/// for each of its points.
#[derive(Debug, Clone)]
pub(super) struct Def1Data {
    field: Field,
    curve: Curve,
    emb: Embedding,
    torsion: Vec<Point>,
    preimage: BTreeMap<Point, Point>,
}

impl Def1Data {
    pub(super) fn degree(&self) -> usize {
        self.field.degree()
    }
}

/// The `r`-Sylow subgroup of `E(F)`, of order `r^v`, grown from random points coset by coset.
fn sylow_subgroup(
    curve: &Curve,
    n: &BigUint,
    r: &BigUint,
    v: u32,
    rng: &mut dyn RngCore,
) -> BTreeSet<Point> {
    let size = r.pow(v);
    let h = n / &size;
    let mut s = BTreeSet::from([Point::Infinity]);
    while BigUint::from(s.len()) < size {
        let g = curve.mul_u(&h, &curve.random_point(rng));
        if s.contains(&g) {
            continue;
        }
        let base: Vec<Point> = s.iter().cloned().collect();
        let mut shift = g.clone();
        while !s.contains(&shift) {
            for b in &base {
                s.insert(curve.add(b, &shift));
            }
            shift = curve.add(&shift, &g);
        }
    }
    s
}

impl PairingContext {
    fn def1_setup(&self) -> Result<Def1Data, PairingError> {
        let mut rng = ChaCha20Rng::seed_from_u64(0xdef1);
        let p = self.p().clone();
        for mult in 1u32.. {
            let m = self.k * mult;
            let n_m = ntheory::extension_order(&self.order, &self.q, m);
            if n_m > BigUint::from(DEF1_BOUND) {
                return Err(PairingError::Def1Infeasible(format!(
                    "#E(F_q^{m}) = {n_m} exceeds 2^20 before E[r^2] is rational"
                )));
            }
            let v = ntheory::valuation(&n_m, &self.r);
            if v < 4 {
                continue;
            }
            let field = if m == self.k {
                self.ext.clone()
            } else {
                Field::new(p.clone(), m as usize)?
            };
            let curve = self.base.base_change(&field)?;
            let sylow = sylow_subgroup(&curve, &n_m, &self.r, v, &mut rng);
            let torsion: Vec<Point> = sylow
                .iter()
                .filter(|s| curve.mul_u(&self.r, s).is_infinity())
                .cloned()
                .collect();
            if BigUint::from(torsion.len()) != &self.r * &self.r {
                continue;
            }
            let mut preimage = BTreeMap::new();
            for s in &sylow {
                preimage
                    .entry(curve.mul_u(&self.r, s))
                    .or_insert_with(|| s.clone());
            }
            if !torsion.iter().all(|t| preimage.contains_key(t)) {
                continue;
            }
            let emb = self
                .ext
                .embedding_into(&field, &mut rng)
                .ok_or_else(|| PairingError::Def1Infeasible("no embedding of L".into()))?;
            return Ok(Def1Data {
                field,
                curve,
                emb,
                torsion,
                preimage,
            });
        }
        unreachable!()
    }

    fn def1_data(&self) -> Result<&Def1Data, PairingError> {
        self.def1
            .get_or_init(|| self.def1_setup())
            .as_ref()
            .map_err(|e| e.clone())
    }

    /// Degree over `F_p` of the field in which the first definition is evaluated.
    pub fn def1_degree(&self) -> Result<usize, PairingError> {
        Ok(self.def1_data()?.degree())
    }

    /// `e_r(P, Q)` by the chosen definition. All three agree exactly.
    pub fn weil(
        &self,
        p: &Point,
        q: &Point,
        def: WeilDef,
        rng: &mut dyn RngCore,
    ) -> Result<PairingValue, PairingError> {
        if p.is_infinity() || q.is_infinity() {
            if !self.curve.contains(p) || !self.curve.contains(q) {
                return Err(crate::curve::CurveError::NotOnCurve.into());
            }
            return Ok(PairingValue::trivial(self, true));
        }
        self.check_torsion(p)?;
        self.check_torsion(q)?;
        match def {
            WeilDef::Translation => self.weil_translation(p, q, rng),
            WeilDef::Miller => self.weil_miller(p, q),
            WeilDef::Divisor => self.weil_divisor(p, q, rng),
        }
    }

    fn weil_translation(
        &self,
        p: &Point,
        q: &Point,
        rng: &mut dyn RngCore,
    ) -> Result<PairingValue, PairingError> {
        let data = self.def1_data()?;
        let c = &data.curve;
        let map = |x: &Point| x.map(|a| data.emb.apply(a));
        let (pm, qm) = (map(p), map(q));
        let p0 = &data.preimage[&pm];
        let mut d = Divisor::zero();
        for t in &data.torsion {
            d.add_term(&c.add(p0, t), 1);
            d.add_term(t, -1);
        }
        let g = function_from_divisor(c, &d)?;
        for _ in 0..RETRIES {
            let x = c.random_point(rng);
            let (Ok(a), Ok(b)) = (g.value_at(c, &c.add(&x, &qm)), g.value_at(c, &x)) else {
                continue;
            };
            let e = a / b;
            let value = data
                .emb
                .preimage(&e)
                .ok_or_else(|| PairingError::Def1Infeasible("value outside L".into()))?;
            return Ok(PairingValue {
                value,
                reduced: true,
                loop_bits: 0,
                chain_len: g.num_factors(),
                miller_calls: 0,
            });
        }
        Err(PairingError::RandomizationExhausted(RETRIES))
    }

    fn weil_miller(&self, p: &Point, q: &Point) -> Result<PairingValue, PairingError> {
        if p == q {
            return Ok(PairingValue::trivial(self, true));
        }
        let r = BigInt::from(self.r.clone());
        let (a, la) = self.miller_at_point(&r, p, q)?;
        let (b, lb) = self.miller_at_point(&r, q, p)?;
        let mut value = a / b;
        if self.r.bit(0) {
            value = -value;
        }
        Ok(PairingValue {
            value,
            reduced: true,
            loop_bits: miller::loop_bits(&r),
            chain_len: la + lb,
            miller_calls: 2,
        })
    }

    /// `f_{D_X}(D_Y)` where `D_X = [X + R] - [R]`, so `f_{D_X} = f_{r,X+R}/f_{r,R}`.
    pub(super) fn shifted_value(
        &self,
        x: &Point,
        shift: &Point,
        at: &Divisor,
    ) -> Result<(crate::field::Fe, usize), MillerError> {
        let r = BigInt::from(self.r.clone());
        let a = miller::miller(&self.curve, &r, &self.curve.add(x, shift), Some(at))?;
        let b = miller::miller(&self.curve, &r, shift, Some(at))?;
        Ok((
            a.field_value().unwrap() / b.field_value().unwrap(),
            a.chain_len + b.chain_len,
        ))
    }

    /// Degree-0 divisor `[X + R] - [R]`.
    pub(super) fn shifted_divisor(&self, x: &Point, shift: &Point) -> Divisor {
        let mut d = Divisor::point(&self.curve.add(x, shift), 1);
        d.add_term(shift, -1);
        d
    }

    fn weil_divisor(
        &self,
        p: &Point,
        q: &Point,
        rng: &mut dyn RngCore,
    ) -> Result<PairingValue, PairingError> {
        for _ in 0..RETRIES {
            let r1 = self.curve.random_point(rng);
            let r2 = self.curve.random_point(rng);
            let dp = self.shifted_divisor(p, &r1);
            let dq = self.shifted_divisor(q, &r2);
            let bad = |d: &Divisor| d.terms().any(|(x, _)| x.is_infinity());
            if bad(&dp) || bad(&dq) || !dp.disjoint_from(&dq) {
                continue;
            }
            let (Ok((a, la)), Ok((b, lb))) = (
                self.shifted_value(p, &r1, &dq),
                self.shifted_value(q, &r2, &dp),
            ) else {
                continue;
            };
            return Ok(PairingValue {
                value: a / b,
                reduced: true,
                loop_bits: miller::loop_bits(&BigInt::from(self.r.clone())),
                chain_len: la + lb,
                miller_calls: 4,
            });
        }
        Err(PairingError::RandomizationExhausted(RETRIES))
    }

    /// All of `E[r]`, when the first definition is feasible.
    pub fn torsion_points(&self) -> Result<Vec<Point>, PairingError> {
        let data = self.def1_data()?;
        if data.field == self.ext {
            return Ok(data.torsion.clone());
        }
        // Pull back through the embedding: E[r] is defined over L.
        let mut out = Vec::new();
        for t in &data.torsion {
            out.push(match t {
                Point::Infinity => Point::Infinity,
                Point::Affine { x, y } => {
                    let pre = |a| {
                        data.emb
                            .preimage(a)
                            .ok_or(PairingError::Def1Infeasible("E[r] not over L".into()))
                    };
                    Point::new(pre(x)?, pre(y)?)
                }
            });
        }
        out.sort();
        Ok(out)
    }
}
