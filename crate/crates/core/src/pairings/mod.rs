//! Pairings on `G1 x G2` over an immutable context: Weil (three definitions), Tate
//! (two definitions, reduced), ate, twisted ate, ate_i, R-ate, Heß and Vercauteren.

mod ate;
mod tate;
mod weil;

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::curve::{cofactor_prime_to, Curve, CurveError, Point};
use crate::field::{Fe, Field, FieldError};
use crate::function_field::{Divisor, FunctionError};
use crate::miller::{self, MillerError};
use crate::ntheory;
use crate::twist::Twist;

pub use ate::{
    nondegeneracy_exponent, twisted_nondegeneracy_exponent, AteValue, HessMode, HessValue,
    RateValue,
};
pub use tate::TateDef;
pub use weil::WeilDef;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PairingError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("point is not {0}-torsion")]
    NotTorsion(BigUint),
    #[error("point is not in {0}")]
    NotInGroup(&'static str),
    #[error("first Weil definition infeasible: {0}")]
    Def1Infeasible(String),
    #[error("the map Q -> (r2/r)Q is not injective")]
    NotInjective,
    #[error("context has no twist")]
    MissingTwist,
    #[error("t1 != t0*l1 + l0")]
    BadDecomposition,
    #[error("{0} is not a power of q modulo r")]
    NotAPowerOfQ(BigInt),
    #[error("y is not a root of unity of the required order modulo r")]
    NotRootOfUnity,
    #[error("r does not divide t(y)")]
    NotInLatticeKernel,
    #[error("divisibility violated: {0}")]
    DivisibilityViolation(&'static str),
    #[error("no support-disjoint divisors after {0} draws")]
    RandomizationExhausted(u32),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Function(#[from] FunctionError),
    #[error(transparent)]
    Miller(#[from] MillerError),
}

/// A pairing value with the loop metadata of its computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingValue {
    /// A coset representative of `L*/(L*)^r`, or an `r`-th root of unity when `reduced`.
    pub value: Fe,
    pub reduced: bool,
    /// `floor(log2 |lambda|)` of the longest Miller loop used.
    pub loop_bits: u64,
    /// Total number of chain entries over all Miller runs.
    pub chain_len: usize,
    pub miller_calls: usize,
}

impl PairingValue {
    fn trivial(ctx: &PairingContext, reduced: bool) -> PairingValue {
        PairingValue {
            value: ctx.ext.one(),
            reduced,
            loop_bits: 0,
            chain_len: 0,
            miller_calls: 0,
        }
    }
}

/// Inputs of a context. Points are over `L = F_{q^k}`.
#[derive(Debug, Clone)]
pub struct ContextSpec {
    pub name: String,
    /// `E` over the prime field `F_q`.
    pub curve: Curve,
    pub r: BigUint,
    pub k: u32,
    /// `#E(F_q)`.
    pub order: BigUint,
    pub g1: Option<Point>,
    pub g2: Option<Point>,
    /// Twist degree, when the context carries a twist.
    pub twist: Option<u32>,
}

#[derive(Debug, Clone)]
struct GroupStructure {
    r1: BigUint,
    r2: BigUint,
}

/// Everything a pairing computation needs, validated once.
#[derive(Debug)]
pub struct PairingContext {
    name: String,
    base: Curve,
    q: BigUint,
    k: u32,
    embedding_degree: u32,
    r: BigUint,
    order: BigUint,
    t: BigInt,
    big_t: BigInt,
    ext: Field,
    curve: Curve,
    ext_order: BigUint,
    final_exp: BigUint,
    g1: Point,
    g2: Point,
    twist: Option<Twist>,
    structure: OnceLock<GroupStructure>,
    def1: OnceLock<Result<weil::Def1Data, PairingError>>,
}

const RETRIES: u32 = 64;

fn invalid(msg: impl Into<String>) -> PairingError {
    PairingError::InvalidParameters(msg.into())
}

impl PairingContext {
    /// Validates `spec`, drawing missing generators from `rng`.
    pub fn new(spec: ContextSpec, rng: &mut dyn RngCore) -> Result<PairingContext, PairingError> {
        let ContextSpec {
            name,
            curve: base,
            r,
            k,
            order,
            g1,
            g2,
            twist,
        } = spec;
        let fq = base.field().clone();
        if fq.degree() != 1 {
            return Err(invalid("base field must be a prime field F_q"));
        }
        let q = fq.order().clone();
        if !ntheory::is_prime(&r) {
            return Err(invalid("r is not prime"));
        }
        if (&q % &r).is_zero() {
            return Err(invalid("gcd(r, p) != 1"));
        }
        if !(&order % &r).is_zero() {
            return Err(invalid("r does not divide #E(F_q)"));
        }
        if k < 2 {
            return Err(invalid("embedding degree must be at least 2"));
        }
        let qr = BigInt::from(q.clone());
        let embedding_degree = match ntheory::multiplicative_order(&qr, &r, k as u64) {
            Some(o) if o == k as u64 || o == 1 => o as u32,
            Some(_) => return Err(invalid("r divides q^j - 1 for some 1 < j < k")),
            None => return Err(invalid("r does not divide q^k - 1")),
        };
        let hasse = BigInt::from(order.clone()) - BigInt::from(&q + 1u32);
        if &hasse * &hasse > BigInt::from(4u32) * &qr {
            return Err(invalid("#E(F_q) violates the Hasse bound"));
        }
        let ext = Field::new(q.clone(), k as usize)?;
        let curve = base.base_change(&ext)?;
        let ext_order = ntheory::extension_order(&order, &q, k);
        if embedding_degree != k && !(&ext_order % (&r * &r)).is_zero() {
            return Err(invalid(
                "r divides q - 1 but E[r] is not defined over F_q^k",
            ));
        }
        let t = BigInt::from(&q + 1u32) - BigInt::from(order.clone());
        let big_t = &t - 1;
        let final_exp = (q.pow(k) - 1u32) / &r;
        let twist = match twist {
            None => None,
            Some(_) if embedding_degree != k => {
                return Err(invalid("twists need embedding degree k"))
            }
            Some(d) => {
                if k % d != 0 {
                    return Err(invalid("twist degree must divide k"));
                }
                let e = k / d;
                let (curve_e, order_e) = if e == 1 {
                    (base.clone(), order.clone())
                } else {
                    let fe = Field::new(q.clone(), e as usize)?;
                    (
                        base.base_change(&fe)?,
                        ntheory::extension_order(&order, &q, e),
                    )
                };
                Some(Twist::find(&curve_e, &order_e, d, &r, 1, &ext, rng)?)
            }
        };
        let mut ctx = PairingContext {
            name,
            base,
            q,
            k,
            embedding_degree,
            r,
            order,
            t,
            big_t,
            ext,
            curve,
            ext_order,
            final_exp,
            g1: Point::Infinity,
            g2: Point::Infinity,
            twist,
            structure: OnceLock::new(),
            def1: OnceLock::new(),
        };
        ctx.g1 = match g1 {
            Some(p) => p,
            None => ctx.find_g1(rng),
        };
        ctx.g2 = match g2 {
            Some(p) => p,
            None => ctx.find_g2(rng),
        };
        ctx.check_g1(&ctx.g1)?;
        ctx.check_g2(&ctx.g2)?;
        if ctx.g1.is_infinity() || ctx.g2.is_infinity() {
            return Err(invalid("generators must be nonzero"));
        }
        Ok(ctx)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `E` over `F_q`.
    pub fn base_curve(&self) -> &Curve {
        &self.base
    }

    /// `E` over `L`.
    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn q(&self) -> &BigUint {
        &self.q
    }

    pub fn p(&self) -> &BigUint {
        self.ext.characteristic()
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Order of `q` modulo `r`: either `k`, or `1` for contexts where `r | q - 1` and `k` is
    /// the degree over which `E[r]` becomes rational.
    pub fn embedding_degree(&self) -> u32 {
        self.embedding_degree
    }

    /// `G2` is the `q`-eigenspace of Frobenius, distinct from `G1`.
    pub fn has_eigenspaces(&self) -> bool {
        self.embedding_degree == self.k
    }

    fn require_eigenspaces(&self) -> Result<(), PairingError> {
        if self.has_eigenspaces() {
            Ok(())
        } else {
            Err(invalid("this pairing needs q of order k modulo r"))
        }
    }

    pub fn r(&self) -> &BigUint {
        &self.r
    }

    /// `#E(F_q)`.
    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// `#E(L)`.
    pub fn ext_order(&self) -> &BigUint {
        &self.ext_order
    }

    /// Trace of Frobenius.
    pub fn t(&self) -> &BigInt {
        &self.t
    }

    /// `T = t - 1`.
    pub fn big_t(&self) -> &BigInt {
        &self.big_t
    }

    /// `L = F_{q^k}`.
    pub fn ext(&self) -> &Field {
        &self.ext
    }

    pub fn g1(&self) -> &Point {
        &self.g1
    }

    pub fn g2(&self) -> &Point {
        &self.g2
    }

    pub fn twist(&self) -> Option<&Twist> {
        self.twist.as_ref()
    }

    /// `#E(F_q)/r`.
    pub fn h1(&self) -> BigUint {
        &self.order / &self.r
    }

    /// `#E(L)/r^2`.
    pub fn h2(&self) -> BigUint {
        &self.ext_order / (&self.r * &self.r)
    }

    /// `(q^k - 1)/r`.
    pub fn final_exponent(&self) -> &BigUint {
        &self.final_exp
    }

    /// `x^((q^k - 1)/r)`.
    pub fn reduce(&self, x: &Fe) -> Fe {
        x.pow(&self.final_exp)
    }

    fn reduced(&self, mut v: PairingValue) -> PairingValue {
        v.value = self.reduce(&v.value);
        v.reduced = true;
        v
    }

    /// `q^i` on points of `E(L)`.
    pub fn frobenius(&self, p: &Point, i: u32) -> Point {
        p.frobenius(&self.q, i)
    }

    /// `Tr(P) = sum_{i<k} pi^i(P)`.
    pub fn trace(&self, p: &Point) -> Point {
        self.curve.trace(p, &self.q, self.k)
    }

    /// `P` lifted from `E(F_q)` to `E(L)`.
    pub fn lift(&self, p: &Point) -> Result<Point, PairingError> {
        Ok(match p {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => Point::new(x.lift_to(&self.ext)?, y.lift_to(&self.ext)?),
        })
    }

    fn q_mod_r(&self) -> BigInt {
        BigInt::from(&self.q % &self.r)
    }

    pub fn is_torsion(&self, p: &Point) -> bool {
        self.curve.contains(p) && self.curve.mul_u(&self.r, p).is_infinity()
    }

    fn check_torsion(&self, p: &Point) -> Result<(), PairingError> {
        if self.is_torsion(p) {
            Ok(())
        } else {
            Err(PairingError::NotTorsion(self.r.clone()))
        }
    }

    /// `P in E(F_q)[r]`: `r`-torsion with Frobenius eigenvalue 1.
    pub fn check_g1(&self, p: &Point) -> Result<(), PairingError> {
        self.check_torsion(p)?;
        if self.frobenius(p, 1) != *p {
            return Err(PairingError::NotInGroup("G1"));
        }
        Ok(())
    }

    /// `Q in E[r]` with Frobenius eigenvalue `q`. When `r | q - 1`, any torsion point
    /// outside `E(F_q)` is accepted.
    pub fn check_g2(&self, p: &Point) -> Result<(), PairingError> {
        self.check_torsion(p)?;
        if !self.has_eigenspaces() {
            if !p.is_infinity() && self.frobenius(p, 1) == *p {
                return Err(PairingError::NotInGroup("G2"));
            }
            return Ok(());
        }
        if self.frobenius(p, 1) != self.curve.mul(&self.q_mod_r(), p) {
            return Err(PairingError::NotInGroup("G2"));
        }
        Ok(())
    }

    /// Kills the cofactor of `group_order` and reduces an `r`-power-torsion point to `E[r]`.
    fn to_r_torsion(&self, curve: &Curve, p: &Point, group_order: &BigUint) -> Point {
        let mut x = curve.mul_u(&cofactor_prime_to(group_order, &self.r), p);
        loop {
            let y = curve.mul_u(&self.r, &x);
            if y.is_infinity() {
                return x;
            }
            x = y;
        }
    }

    fn find_g1(&self, rng: &mut dyn RngCore) -> Point {
        loop {
            let p = self.base.random_point(rng);
            let g = self.to_r_torsion(&self.base, &p, &self.order);
            if !g.is_infinity() {
                return self.lift(&g).unwrap();
            }
        }
    }

    fn find_g2(&self, rng: &mut dyn RngCore) -> Point {
        loop {
            let p = self.curve.random_point(rng);
            if let Some(g) = self.project_g2(&p) {
                return g;
            }
        }
    }

    /// `R -> kR - Tr(R)` after cofactor clearing; `None` when the result is `O`.
    fn project_g2(&self, p: &Point) -> Option<Point> {
        let r = self.to_r_torsion(&self.curve, p, &self.ext_order);
        if !self.has_eigenspaces() {
            return (self.frobenius(&r, 1) != r).then_some(r);
        }
        let g = self.curve.sub(
            &self.curve.mul_u(&BigUint::from(self.k), &r),
            &self.trace(&r),
        );
        (!g.is_infinity()).then_some(g)
    }

    pub fn random_g1(&self, rng: &mut dyn RngCore) -> Point {
        let s = rng.next_u64();
        self.curve.mul_u(&(BigUint::from(s) % &self.r), &self.g1)
    }

    pub fn random_g2(&self, rng: &mut dyn RngCore) -> Point {
        let s = rng.next_u64();
        self.curve.mul_u(&(BigUint::from(s) % &self.r), &self.g2)
    }

    /// A uniformly drawn point of `E[r]`, as `aG1 + bG2`.
    pub fn random_torsion(&self, rng: &mut dyn RngCore) -> Point {
        self.curve.add(&self.random_g1(rng), &self.random_g2(rng))
    }

    /// Hash onto `G1` (cofactor clearing) or `G2` (cofactor clearing, then `kR - Tr(R)`).
    pub fn hash_to_g1(&self, msg: &[u8]) -> Result<Point, PairingError> {
        for ctr in 0u32..256 {
            let mut m = msg.to_vec();
            m.extend_from_slice(&ctr.to_be_bytes());
            let p = self.base.hash_to_curve(b"ecpair-G1", &m)?;
            let g = self.to_r_torsion(&self.base, &p, &self.order);
            if !g.is_infinity() {
                return self.lift(&g);
            }
        }
        Err(CurveError::HashFailure(256).into())
    }

    pub fn hash_to_g2(&self, msg: &[u8]) -> Result<Point, PairingError> {
        for ctr in 0u32..256 {
            let mut m = msg.to_vec();
            m.extend_from_slice(&ctr.to_be_bytes());
            let p = self.curve.hash_to_curve(b"ecpair-G2", &m)?;
            if let Some(g) = self.project_g2(&p) {
                return Ok(g);
            }
        }
        Err(CurveError::HashFailure(256).into())
    }

    fn structure(&self) -> &GroupStructure {
        self.structure.get_or_init(|| {
            let mut rng = ChaCha20Rng::seed_from_u64(0x5eed);
            let r2 = crate::curve::sampled_exponent(&self.curve, &self.ext_order, &mut rng, 24);
            GroupStructure {
                r1: &self.ext_order / &r2,
                r2,
            }
        })
    }

    /// `(r1, r2)` with `E(L) = Z/r1 x Z/r2` and `r1 | r2`.
    pub fn group_structure(&self) -> (BigUint, BigUint) {
        let s = self.structure();
        (s.r1.clone(), s.r2.clone())
    }

    /// The representative map `Q -> (r2/r)Q` from `E(L)/rE(L)` to `E[r]`.
    pub fn torsion_representative(&self, q: &Point) -> Result<Point, PairingError> {
        let s = self.structure();
        if !(&s.r2 / &s.r1).gcd(&self.r).is_one() {
            return Err(PairingError::NotInjective);
        }
        Ok(self.curve.mul_u(&(&s.r2 / &self.r), q))
    }

    /// `f_{n,base}(at)` for a single affine point `at` and the monic Miller function.
    /// Falls back to the factored function when intermediate lines meet `at`.
    fn miller_at_point(
        &self,
        n: &BigInt,
        base: &Point,
        at: &Point,
    ) -> Result<(Fe, usize), PairingError> {
        self.miller_at_point_on(&self.curve, n, base, at)
    }

    fn miller_at_point_on(
        &self,
        curve: &Curve,
        n: &BigInt,
        base: &Point,
        at: &Point,
    ) -> Result<(Fe, usize), PairingError> {
        let d = Divisor::point(at, 1);
        match miller::miller(curve, n, base, Some(&d)) {
            Ok(res) => Ok((res.field_value().unwrap().clone(), res.chain_len)),
            Err(MillerError::SupportCollision { .. }) => {
                let res = miller::miller(curve, n, base, None)?;
                Ok((res.function().unwrap().value_at(curve, at)?, res.chain_len))
            }
            Err(e) => Err(e.into()),
        }
    }

    /// A random point of `E(L)`.
    pub fn random_point(&self, rng: &mut dyn RngCore) -> Point {
        self.curve.random_point(rng)
    }

    /// `a mod r` as a nonnegative integer.
    fn mod_r(&self, a: &BigInt) -> BigUint {
        ntheory::mod_floor(a, &self.r)
    }

    /// Multiplicative order of a reduced pairing value (a divisor of `r`).
    pub fn value_order(&self, v: &Fe) -> BigUint {
        if v.is_one() {
            BigUint::one()
        } else {
            self.r.clone()
        }
    }
}

/// Loop lengths `floor(log2 lambda)` of the Miller loops of the main pairings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopReport {
    pub tate: u64,
    pub ate: u64,
    pub twisted_ate: Option<u64>,
    /// Longest loop of the Heß function from the shortest lattice vector.
    pub hess: u64,
    pub hess_vector: Vec<BigInt>,
}

impl PairingContext {
    pub fn loop_report(&self) -> LoopReport {
        let twisted_ate = self.twist.as_ref().map(|tw| {
            let e = self.k / tw.degree();
            miller::loop_bits(&self.big_t.pow(e))
        });
        let y = BigInt::from(&self.q % &self.r);
        let dim = ntheory::euler_phi(self.k as u64) as usize;
        let lattice = crate::optimal::RootLattice::new(&self.r, &y, dim, self.k)
            .expect("q is a k-th root of unity mod r");
        let v = crate::optimal::shortest_vector(lattice.basis()).expect("full rank");
        let hess = v.iter().map(miller::loop_bits).max().unwrap_or(0);
        LoopReport {
            tate: miller::loop_bits(&BigInt::from(self.r.clone())),
            ate: miller::loop_bits(&self.big_t),
            twisted_ate,
            hess,
            hess_vector: v,
        }
    }
}

#[cfg(test)]
pub(crate) mod testctx;
