//! Loop-shortened pairings on `G1 x G2`: ate, twisted ate, ate_i, R-ate, Heß and the
//! Vercauteren specialisation, with the exponents relating each to the reduced Tate pairing.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{PairingContext, PairingError, PairingValue};
use crate::curve::Point;
use crate::field::Fe;
use crate::function_field::Divisor;
use crate::miller;
use crate::ntheory;

/// An ate-family value with its loop parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AteValue {
    pub value: PairingValue,
    /// The Miller loop parameter `lambda`.
    pub lambda: BigInt,
    /// Set when `r^2 | lambda^k' - 1` for `k'` the order of `lambda` modulo `r`.
    pub degenerate: bool,
}

/// An R-ate value and its exponent `M` with `rate = tate(Q, P)^M` after reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RateValue {
    pub value: PairingValue,
    pub m: BigUint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HessMode {
    /// Separate Miller loops for each `f_{t_i, y^i Q}`.
    Generic,
    /// `y = q mod r`: one multi-target loop based at `Q` plus Frobenius powers.
    Vercauteren,
    /// Based at `P`, evaluated at `Q`, with `y` a `d`-th root of unity.
    Twisted,
}

/// A Heß value with its exponents. After reduction, `hess^power = tate^exponent`, where
/// the Tate pairing is `tate(Q, P)` (or `tate(P, Q)` in twisted mode).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HessValue {
    pub value: PairingValue,
    /// `(c t(y) - (t(y^K) - t(1)))/r`, with `c = K q^(E(K-1))`.
    pub n: BigInt,
    /// `c` above: `k q^(k-1)`, or `d q^(e(d-1))` in twisted mode.
    pub power: BigUint,
    /// The exact exponent modulo `r`, which agrees with `n` when `y = q mod r` and
    /// `deg t <= 1`.
    pub exponent: BigUint,
}

/// `t(x)` for coefficients `t` (constant first).
fn eval_poly(t: &[BigInt], x: &BigInt) -> BigInt {
    t.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn generic_exponent(
    t: &[BigInt],
    y: &BigInt,
    c: &BigInt,
    k: u32,
    r: &BigUint,
) -> Result<BigInt, PairingError> {
    let r = BigInt::from(r.clone());
    let ty = eval_poly(t, y);
    if !(&ty % &r).is_zero() {
        return Err(PairingError::DivisibilityViolation("r must divide t(y)"));
    }
    let tail = eval_poly(t, &y.pow(k)) - eval_poly(t, &BigInt::one());
    if !(&tail % &r).is_zero() {
        return Err(PairingError::DivisibilityViolation(
            "r must divide t(y^k) - t(1)",
        ));
    }
    let num = c * ty - tail;
    if !(&num % &r).is_zero() {
        return Err(PairingError::DivisibilityViolation(
            "r must divide the numerator of N",
        ));
    }
    Ok(num / r)
}

/// `N = (k q^(k-1) t(y) - (t(y^k) - t(1)))/r`. The Heß pairing is non-degenerate iff `r` does not divide `N`.
pub fn nondegeneracy_exponent(
    t: &[BigInt],
    y: &BigInt,
    q: &BigUint,
    k: u32,
    r: &BigUint,
) -> Result<BigInt, PairingError> {
    let c = BigInt::from(k) * BigInt::from(q.pow(k - 1));
    generic_exponent(t, y, &c, k, r)
}

/// `N = (d q^(e(d-1)) t(y) - (t(y^d) - t(1)))/r` for the twisted Heß pairing.
pub fn twisted_nondegeneracy_exponent(
    t: &[BigInt],
    y: &BigInt,
    q: &BigUint,
    d: u32,
    e: u32,
    r: &BigUint,
) -> Result<BigInt, PairingError> {
    let c = BigInt::from(d) * BigInt::from(q.pow(e * (d - 1)));
    generic_exponent(t, y, &c, d, r)
}

/// Smallest `m < order` with `g^m = x mod r`.
fn discrete_log(g: &BigUint, x: &BigInt, r: &BigUint, order: u32) -> Option<u32> {
    let x = ntheory::mod_floor(x, r);
    let mut acc = BigUint::one() % r;
    for m in 0..order {
        if acc == x {
            return Some(m);
        }
        acc = acc * g % r;
    }
    None
}

/// `r^2 | lambda^k' - 1` with `k'` the order of `lambda` modulo `r`.
fn is_degenerate(lambda: &BigInt, r: &BigUint, bound: u32) -> bool {
    let Some(order) = ntheory::multiplicative_order(lambda, r, bound as u64) else {
        return true;
    };
    let r2 = BigInt::from(r * r);
    (lambda.pow(order as u32) - 1u32).mod_floor(&r2).is_zero()
}

impl PairingContext {
    fn twist_shape(&self) -> Result<(u32, u32), PairingError> {
        self.require_eigenspaces()?;
        let tw = self.twist.as_ref().ok_or(PairingError::MissingTwist)?;
        Ok((tw.degree(), self.k / tw.degree()))
    }

    /// Loop parameter of ate_i (`T` for `i = 1`, else `T^i mod r`), or of twisted ate_i
    /// (`T^e`, else `T^(ei) mod r`).
    pub fn ate_lambda(&self, i: u32, twisted: bool) -> Result<BigInt, PairingError> {
        self.require_eigenspaces()?;
        let (bound, step) = if twisted {
            let (d, e) = self.twist_shape()?;
            (d, e)
        } else {
            (self.k, 1)
        };
        if i == 0 || i >= bound {
            return Err(PairingError::InvalidParameters(format!(
                "i must lie in 1..{bound}"
            )));
        }
        let lambda = self.big_t.pow(step * i);
        Ok(if i == 1 {
            lambda
        } else {
            BigInt::from(self.mod_r(&lambda))
        })
    }

    /// Exponents `(c, n)`, with `c` reduced modulo `r`, such that `ate_i(P, Q)^c = tate(Q, P)^n` after reduction, or
    /// `twisted(P, Q)^c = tate(P, Q)^n` when `twisted`.
    pub fn ate_relation(&self, i: u32, twisted: bool) -> Result<(BigUint, BigInt), PairingError> {
        let lambda = self.ate_lambda(i, twisted)?;
        let (order, g) = if twisted {
            let (d, e) = self.twist_shape()?;
            (d, self.q.modpow(&BigUint::from(e), &self.r))
        } else {
            (self.k, &self.q % &self.r)
        };
        let m = discrete_log(&g, &lambda, &self.r, order)
            .ok_or_else(|| PairingError::NotAPowerOfQ(lambda.clone()))?;
        let c = BigUint::from(order) * g.modpow(&BigUint::from(m * (order - 1)), &self.r) % &self.r;
        let n = (lambda.pow(order) - 1u32) / BigInt::from(self.r.clone());
        Ok((c, n))
    }

    /// ate_i (`f_{lambda,Q}(P)`) or twisted ate_i (`f_{lambda,P}(Q)`).
    pub fn ate(
        &self,
        p: &Point,
        q: &Point,
        i: u32,
        twisted: bool,
        reduced: bool,
    ) -> Result<AteValue, PairingError> {
        self.check_g1(p)?;
        self.check_g2(q)?;
        let lambda = self.ate_lambda(i, twisted)?;
        let bound = if twisted {
            self.twist_shape()?.0
        } else {
            self.k
        };
        let degenerate = is_degenerate(&lambda, &self.r, bound);
        let mut value = if p.is_infinity() || q.is_infinity() {
            PairingValue::trivial(self, false)
        } else {
            let (base, at) = if twisted { (p, q) } else { (q, p) };
            let (v, len) = self.miller_at_point(&lambda, base, at)?;
            PairingValue {
                value: v,
                reduced: false,
                loop_bits: miller::loop_bits(&lambda),
                chain_len: len,
                miller_calls: 1,
            }
        };
        if reduced {
            value = self.reduced(value);
        }
        Ok(AteValue {
            value,
            lambda,
            degenerate,
        })
    }

    /// `M(lambda) = ((lambda^k - 1)/r) (k q^(m(k-1)))^(-1) mod r` with `q^m = lambda mod r`,
    /// so that `f_{lambda,Q}(P) = tate(Q, P)^M(lambda)` after reduction.
    fn ate_exponent(&self, lambda: &BigInt) -> Result<BigUint, PairingError> {
        self.require_eigenspaces()?;
        let g = &self.q % &self.r;
        let m = discrete_log(&g, lambda, &self.r, self.k)
            .ok_or_else(|| PairingError::NotAPowerOfQ(lambda.clone()))?;
        let c = BigUint::from(self.k) * g.modpow(&BigUint::from(m * (self.k - 1)), &self.r);
        let inv = ntheory::mod_inverse(&BigInt::from(c), &self.r).expect("r is prime to k q");
        let n = (lambda.pow(self.k) - 1u32) / BigInt::from(self.r.clone());
        Ok(self.mod_r(&(n * BigInt::from(inv))))
    }

    /// `f_{n,base}(at)` with its endpoint `n base`; `n = 0` gives the constant 1.
    fn miller_with_endpoint(
        &self,
        n: &BigInt,
        base: &Point,
        at: &Point,
    ) -> Result<(Fe, Point, usize), PairingError> {
        let end = self.curve.mul(n, base);
        if n.is_zero() || base.is_infinity() {
            return Ok((self.ext.one(), end, 0));
        }
        let (v, len) = self.miller_at_point(n, base, at)?;
        Ok((v, end, len))
    }

    /// `f_{l1,t0 Q}(P) f_{l0,Q}(P) l(P)/v(P)` with the lines from adding `l1 t0 Q` and `l0 Q`.
    #[allow(clippy::too_many_arguments)]
    pub fn r_ate(
        &self,
        p: &Point,
        q: &Point,
        t0: &BigInt,
        t1: &BigInt,
        l0: &BigInt,
        l1: &BigInt,
        reduced: bool,
    ) -> Result<RateValue, PairingError> {
        if *t1 != t0 * l1 + l0 {
            return Err(PairingError::BadDecomposition);
        }
        self.check_g1(p)?;
        self.check_g2(q)?;
        let m1 = self.ate_exponent(t1)?;
        let m0 = self.ate_exponent(t0)?;
        let m = self.mod_r(&(BigInt::from(m1) - l1 * BigInt::from(m0)));
        if p.is_infinity() || q.is_infinity() {
            return Ok(RateValue {
                value: PairingValue::trivial(self, reduced),
                m,
            });
        }
        let t0q = self.curve.mul(t0, q);
        let (a, a_end, la) = self.miller_with_endpoint(l1, &t0q, p)?;
        let (b, b_end, lb) = self.miller_with_endpoint(l0, q, p)?;
        let (_, l, v) = self.curve.add_with_lines(&a_end, &b_end);
        let (lp, vp) = (l.eval(p).unwrap(), v.eval(p).unwrap());
        if lp.is_zero() || vp.is_zero() {
            return Err(PairingError::InvalidParameters(
                "P lies on a correction line".into(),
            ));
        }
        let mut value = PairingValue {
            value: a * b * lp / vp,
            reduced: false,
            loop_bits: miller::loop_bits(l1).max(miller::loop_bits(l0)),
            chain_len: la + lb,
            miller_calls: usize::from(!l1.is_zero()) + usize::from(!l0.is_zero()),
        };
        if reduced {
            value = self.reduced(value);
        }
        Ok(RateValue { value, m })
    }

    /// The Heß pairing for `div f = sum t_i ([y^i Q] - [O])`, evaluated at `P` (or its
    /// twisted variant based at `P` and evaluated at `Q`).
    pub fn hess(
        &self,
        p: &Point,
        q: &Point,
        t: &[BigInt],
        y: &BigInt,
        mode: HessMode,
        reduced: bool,
    ) -> Result<HessValue, PairingError> {
        self.require_eigenspaces()?;
        self.check_g1(p)?;
        self.check_g2(q)?;
        let (order, e) = match mode {
            HessMode::Twisted => self.twist_shape()?,
            _ => (self.k, 1),
        };
        let y_r = self.mod_r(y);
        if y_r.modpow(&BigUint::from(order), &self.r) != BigUint::one() {
            return Err(PairingError::NotRootOfUnity);
        }
        if !self.mod_r(&eval_poly(t, y)).is_zero() {
            return Err(PairingError::NotInLatticeKernel);
        }
        let g = self.q.modpow(&BigUint::from(e), &self.r);
        if mode == HessMode::Vercauteren && y_r != g {
            return Err(PairingError::InvalidParameters(
                "Vercauteren mode needs y = q mod r".into(),
            ));
        }
        let power = BigUint::from(order) * self.q.pow(e * (order - 1));
        let n = generic_exponent(t, y, &BigInt::from(power.clone()), order, &self.r)?;
        let exponent = self.hess_exponent(t, y, &g, order, &power)?;
        let mut value = if p.is_infinity() || q.is_infinity() {
            PairingValue::trivial(self, false)
        } else {
            let (base, at) = if mode == HessMode::Twisted {
                (p, q)
            } else {
                (q, p)
            };
            match mode {
                HessMode::Vercauteren => match self.hess_vercauteren(t, base, at) {
                    Ok(v) => v,
                    Err(PairingError::Miller(miller::MillerError::SupportCollision { .. })) => {
                        self.hess_generic(t, &y_r, base, at)?
                    }
                    Err(err) => return Err(err),
                },
                _ => self.hess_generic(t, &y_r, base, at)?,
            }
        };
        if reduced {
            value = self.reduced(value);
        }
        Ok(HessValue {
            value,
            n,
            power,
            exponent,
        })
    }

    /// `c t(y)/r - sum_i t_i ((y^(iK) - 1)/r) c (K g^(m_i(K-1)))^(-1) mod r` with `y^i = g^(m_i)`.
    fn hess_exponent(
        &self,
        t: &[BigInt],
        y: &BigInt,
        g: &BigUint,
        order: u32,
        power: &BigUint,
    ) -> Result<BigUint, PairingError> {
        let r = BigInt::from(self.r.clone());
        let c = BigInt::from(power.clone());
        let mut acc = &c * (eval_poly(t, y) / &r);
        for (i, ti) in t.iter().enumerate() {
            let yi = y.pow(i as u32);
            let m = discrete_log(g, &yi, &self.r, order).ok_or(PairingError::NotRootOfUnity)?;
            let ci = BigInt::from(order)
                * BigInt::from(g.modpow(&BigUint::from(m * (order - 1)), &self.r));
            let inv = ntheory::mod_inverse(&ci, &self.r).expect("r is prime to K q");
            let li = (yi.pow(order) - 1u32) / &r;
            acc -= ti * li * &c * BigInt::from(inv);
        }
        Ok(self.mod_r(&acc))
    }

    /// `prod f_{t_i,R_i}(at) prod l_{S_(i-1), t_i R_i}(at)/v_{S_i}(at)` with `R_i = y^i base`.
    fn hess_generic(
        &self,
        t: &[BigInt],
        y: &BigUint,
        base: &Point,
        at: &Point,
    ) -> Result<PairingValue, PairingError> {
        let mut acc = self.ext.one();
        let mut s = Point::Infinity;
        let mut r_i = base.clone();
        let (mut len, mut calls) = (0, 0);
        for ti in t {
            let (f, end, l) = self.miller_with_endpoint(ti, &r_i, at)?;
            len += l;
            calls += usize::from(!ti.is_zero());
            acc = acc * f * self.correction(&s, &end, at)?;
            s = self.curve.add(&s, &end);
            r_i = self.curve.mul_u(y, &r_i);
        }
        Ok(PairingValue {
            value: acc,
            reduced: false,
            loop_bits: t.iter().map(miller::loop_bits).max().unwrap_or(0),
            chain_len: len,
            miller_calls: calls,
        })
    }

    /// All `f_{t_i,Q}(P)` from one multi-target pass, raised to `q^i`.
    fn hess_vercauteren(
        &self,
        t: &[BigInt],
        base: &Point,
        at: &Point,
    ) -> Result<PairingValue, PairingError> {
        let (vals, chain) = miller::miller_multi(&self.curve, t, base, &Divisor::point(at, 1))?;
        let mut acc = self.ext.one();
        let mut s = Point::Infinity;
        for (i, (ti, f)) in t.iter().zip(vals).enumerate() {
            let end = self.frobenius(&self.curve.mul(ti, base), i as u32);
            let fi = f.pow(&self.q.pow(i as u32));
            acc = acc * fi * self.correction(&s, &end, at)?;
            s = self.curve.add(&s, &end);
        }
        Ok(PairingValue {
            value: acc,
            reduced: false,
            loop_bits: t.iter().map(miller::loop_bits).max().unwrap_or(0),
            chain_len: chain.len(),
            miller_calls: 1,
        })
    }

    /// `l_{a,b}(at)/v_{a+b}(at)`.
    fn correction(&self, a: &Point, b: &Point, at: &Point) -> Result<Fe, PairingError> {
        let (_, l, v) = self.curve.add_with_lines(a, b);
        let (lv, vv) = (l.eval(at).unwrap(), v.eval(at).unwrap());
        if lv.is_zero() || vv.is_zero() {
            return Err(PairingError::InvalidParameters(
                "evaluation point lies on a correction line".into(),
            ));
        }
        Ok(lv / vv)
    }
}
