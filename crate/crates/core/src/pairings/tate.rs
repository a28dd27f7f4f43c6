//! The Tate pairing `E[r] x E(L)/rE(L) -> L*/(L*)^r`, its reduced form, and the
//! denominator-free evaluation for distorted arguments.

use num_bigint::BigInt;
use rand::RngCore;

use super::{PairingContext, PairingError, PairingValue, RETRIES};
use crate::curve::Point;
use crate::field::Fe;
use crate::miller::{self, Rule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TateDef {
    /// `f_{D_P}(D_Q)` with `D_P = [P + R] - [R]`, `D_Q = [Q + S] - [S]`.
    Divisor,
    /// `f_P(Q)` with the monic Miller function.
    Miller,
}

impl TateDef {
    pub fn from_index(i: u32) -> Option<TateDef> {
        match i {
            1 => Some(TateDef::Divisor),
            2 => Some(TateDef::Miller),
            _ => None,
        }
    }
}

impl PairingContext {
    /// Tate pairing of `P in E[r]` and `Q in E(L)`. Unreduced values are coset
    /// representatives and depend on the definition and the random shifts.
    pub fn tate(
        &self,
        p: &Point,
        q: &Point,
        def: TateDef,
        reduced: bool,
        rng: &mut dyn RngCore,
    ) -> Result<PairingValue, PairingError> {
        self.check_torsion(p)?;
        if !self.curve.contains(q) {
            return Err(crate::curve::CurveError::NotOnCurve.into());
        }
        if p.is_infinity() || q.is_infinity() {
            return Ok(PairingValue::trivial(self, reduced));
        }
        let v = match def {
            TateDef::Divisor => self.tate_divisor(p, q, rng)?,
            TateDef::Miller => self.tate_miller(p, q, rng)?,
        };
        Ok(if reduced { self.reduced(v) } else { v })
    }

    /// Reduced Tate pairing by the Miller definition.
    pub fn tate_reduced(
        &self,
        p: &Point,
        q: &Point,
        rng: &mut dyn RngCore,
    ) -> Result<Fe, PairingError> {
        Ok(self.tate(p, q, TateDef::Miller, true, rng)?.value)
    }

    fn tate_divisor(
        &self,
        p: &Point,
        q: &Point,
        rng: &mut dyn RngCore,
    ) -> Result<PairingValue, PairingError> {
        for _ in 0..RETRIES {
            let r1 = self.curve.random_point(rng);
            let s = self.curve.random_point(rng);
            let dp = self.shifted_divisor(p, &r1);
            let dq = self.shifted_divisor(q, &s);
            let has_o =
                |d: &crate::function_field::Divisor| d.terms().any(|(x, _)| x.is_infinity());
            if has_o(&dp) || has_o(&dq) || !dp.disjoint_from(&dq) {
                continue;
            }
            let Ok((value, len)) = self.shifted_value(p, &r1, &dq) else {
                continue;
            };
            return Ok(PairingValue {
                value,
                reduced: false,
                loop_bits: miller::loop_bits(&BigInt::from(self.r.clone())),
                chain_len: len,
                miller_calls: 2,
            });
        }
        Err(PairingError::RandomizationExhausted(RETRIES))
    }

    /// `Q + rR` with `rR not in {O, -Q}`, for the diagonal case of the Miller definition.
    pub fn shift_by_r(&self, q: &Point, rng: &mut dyn RngCore) -> Result<Point, PairingError> {
        let neg_q = self.curve.neg(q);
        for _ in 0..RETRIES {
            let rr = self.curve.mul_u(&self.r, &self.curve.random_point(rng));
            if !rr.is_infinity() && rr != neg_q {
                return Ok(self.curve.add(q, &rr));
            }
        }
        if let Ok(points) = self.curve.enumerate_points() {
            for x in points {
                let rr = self.curve.mul_u(&self.r, &x);
                if !rr.is_infinity() && rr != neg_q {
                    return Ok(self.curve.add(q, &rr));
                }
            }
        }
        Err(PairingError::RandomizationExhausted(RETRIES))
    }

    fn tate_miller(
        &self,
        p: &Point,
        q: &Point,
        rng: &mut dyn RngCore,
    ) -> Result<PairingValue, PairingError> {
        let q = if p == q {
            self.shift_by_r(q, rng)?
        } else {
            q.clone()
        };
        let r = BigInt::from(self.r.clone());
        let (value, len) = self.miller_at_point(&r, p, &q)?;
        Ok(PairingValue {
            value,
            reduced: false,
            loop_bits: miller::loop_bits(&r),
            chain_len: len,
            miller_calls: 1,
        })
    }

    /// Reduced `f_{r,P}(Q)` with every vertical-line denominator dropped. Valid when `Q`
    /// has its `X`-coordinate in `F_q`, as for images of the distortion map.
    pub fn tate_reduced_without_denominators(
        &self,
        p: &Point,
        q: &Point,
    ) -> Result<Fe, PairingError> {
        self.check_torsion(p)?;
        if p.is_infinity() || q.is_infinity() {
            return Ok(self.ext.one());
        }
        let qx = q.x().unwrap();
        if qx.frobenius(1) != *qx {
            return Err(PairingError::InvalidParameters(
                "X-coordinate of Q must lie in F_q".into(),
            ));
        }
        let r = BigInt::from(self.r.clone());
        let chain = miller::build_chain(&r, &miller::ChainMode::DoubleAndAdd)?;
        let mut out: Vec<(Fe, Point)> = Vec::with_capacity(chain.len());
        for (_, rule) in chain.entries() {
            let next = match *rule {
                Rule::Init => (self.ext.one(), p.clone()),
                Rule::Add(j, k) => {
                    let (sum, l, _v) = self.curve.add_with_lines(&out[j].1, &out[k].1);
                    let lq = l.eval(q).unwrap();
                    if lq.is_zero() {
                        return Err(PairingError::InvalidParameters(
                            "Q lies on a Miller line".into(),
                        ));
                    }
                    (&out[j].0 * &out[k].0 * lq, sum)
                }
                Rule::Neg(_) => {
                    return Err(PairingError::InvalidParameters(
                        "denominator elimination needs a pure addition chain".into(),
                    ))
                }
            };
            out.push(next);
        }
        Ok(self.reduce(&out.pop().unwrap().0))
    }
}
