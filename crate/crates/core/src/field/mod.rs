//! Prime fields and their extensions `F_p[w]/(m(w))`.

mod embed;
pub mod fpoly;
pub(crate) mod poly;

pub use embed::Embedding;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint, RandBigInt, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::ntheory;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("modulus {0} is not prime")]
    CompositeModulus(BigUint),
    #[error("characteristic must be at least 5, got {0}")]
    SmallCharacteristic(BigUint),
    #[error("extension degree must be positive")]
    ZeroDegree,
    #[error("no irreducible polynomial of degree {0} found")]
    IrreducibleSearchExhausted(usize),
    #[error("supplied modulus is not monic irreducible of the stated degree")]
    ReducibleModulus,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("element has no root of the requested degree")]
    NoRoot,
    #[error("element is not a root of unity of order <= {0}")]
    NotARoot(u64),
    #[error("malformed element: {0}")]
    Malformed(String),
}

struct FieldInner {
    p: BigUint,
    k: usize,
    /// Monic, length `k + 1`, constant term first.
    modulus: Vec<BigUint>,
    /// `(j, p - m_j)` for the nonzero lower coefficients: `w^k = sum (p - m_j) w^j`.
    reduction: Vec<(usize, BigUint)>,
    order: BigUint,
    nonresidue: OnceLock<Vec<BigUint>>,
}

/// Handle to `F_{p^k}`. Cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

/// Serialisable shape of a field: `{p, k, modulus}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: String,
    pub k: usize,
    pub modulus: Vec<String>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.0.p, self.0.k)
    }
}

/// Monic polynomial of degree `k` indexed by `idx`: the lower coefficients are
/// the base-`b` digits of `idx`, least significant first.
fn candidate(idx: &BigUint, b: &BigUint, k: usize) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(k + 1);
    let mut n = idx.clone();
    for _ in 0..k {
        let (q, r) = n.div_rem(b);
        out.push(r);
        n = q;
    }
    out.push(BigUint::one());
    out
}

const SEARCH_BOUND: u64 = 1_000_000;
/// Coefficients below this bound are tried first.
const SMALL_DIGITS: u32 = 16;

fn field_cache() -> &'static Mutex<HashMap<(BigUint, usize), Field>> {
    static CACHE: OnceLock<Mutex<HashMap<(BigUint, usize), Field>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

impl Field {
    /// `F_{p^k}` with the first irreducible modulus in a fixed enumeration order:
    /// lower coefficients as base-`min(p, 16)` digits of 1, 2, ..., then as base-`p`
    /// digits. For k = 1 the modulus is `X`.
    pub fn new(p: impl Into<BigUint>, k: usize) -> Result<Field, FieldError> {
        let p = p.into();
        Self::check_prime(&p)?;
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        if k == 1 {
            return Ok(Self::build(p, vec![BigUint::zero(), BigUint::one()]));
        }
        let key = (p.clone(), k);
        if let Some(f) = field_cache().lock().unwrap().get(&key) {
            return Ok(f.clone());
        }
        let small = BigUint::from(SMALL_DIGITS).min(p.clone());
        let small_count = small.pow(k as u32);
        let mut found = None;
        for base in [&small, &p] {
            let mut idx = BigUint::one();
            for _ in 0..SEARCH_BOUND {
                if base == &small && idx >= small_count {
                    break;
                }
                let f = candidate(&idx, base, k);
                if poly::is_irreducible(&f, &p) {
                    found = Some(f);
                    break;
                }
                idx += 1u32;
            }
            if found.is_some() {
                break;
            }
        }
        let f = Self::build(p, found.ok_or(FieldError::IrreducibleSearchExhausted(k))?);
        field_cache().lock().unwrap().insert(key, f.clone());
        Ok(f)
    }

    pub fn prime(p: impl Into<BigUint>) -> Result<Field, FieldError> {
        Self::new(p, 1)
    }

    /// Field with an explicit monic modulus (constant term first).
    pub fn with_modulus(p: impl Into<BigUint>, modulus: Vec<BigUint>) -> Result<Field, FieldError> {
        let p = p.into();
        Self::check_prime(&p)?;
        let mut m: Vec<BigUint> = modulus.into_iter().map(|c| c % &p).collect();
        poly::trim(&mut m);
        let deg = poly::degree(&m).ok_or(FieldError::ReducibleModulus)?;
        if deg == 0 || !m[deg].is_one() || !poly::is_irreducible(&m, &p) {
            return Err(FieldError::ReducibleModulus);
        }
        Ok(Self::build(p, m))
    }

    pub fn from_descriptor(d: &FieldDescriptor) -> Result<Field, FieldError> {
        let parse = |s: &str| {
            s.parse::<BigUint>()
                .map_err(|_| FieldError::Malformed(s.to_string()))
        };
        let p = parse(&d.p)?;
        let m = d
            .modulus
            .iter()
            .map(|s| parse(s))
            .collect::<Result<Vec<_>, _>>()?;
        let f = Self::with_modulus(p, m)?;
        if f.degree() != d.k {
            return Err(FieldError::ReducibleModulus);
        }
        Ok(f)
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.0.p.to_string(),
            k: self.0.k,
            modulus: self.0.modulus.iter().map(|c| c.to_string()).collect(),
        }
    }

    fn check_prime(p: &BigUint) -> Result<(), FieldError> {
        if !ntheory::is_prime(p) {
            return Err(FieldError::CompositeModulus(p.clone()));
        }
        if p < &BigUint::from(5u32) {
            return Err(FieldError::SmallCharacteristic(p.clone()));
        }
        Ok(())
    }

    fn build(p: BigUint, modulus: Vec<BigUint>) -> Field {
        let k = modulus.len() - 1;
        let reduction = modulus[..k]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (j, &p - c))
            .collect();
        let order = p.pow(k as u32);
        Field(Arc::new(FieldInner {
            p,
            k,
            modulus,
            reduction,
            order,
            nonresidue: OnceLock::new(),
        }))
    }

    pub fn characteristic(&self) -> &BigUint {
        &self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.k
    }

    pub fn order(&self) -> &BigUint {
        &self.0.order
    }

    pub fn modulus(&self) -> &[BigUint] {
        &self.0.modulus
    }

    pub fn zero(&self) -> Fe {
        Fe {
            field: self.clone(),
            c: vec![BigUint::zero(); self.0.k],
        }
    }

    pub fn one(&self) -> Fe {
        self.from_u64(1)
    }

    pub fn from_u64(&self, v: u64) -> Fe {
        self.from_biguint(&BigUint::from(v))
    }

    pub fn from_biguint(&self, v: &BigUint) -> Fe {
        let mut e = self.zero();
        e.c[0] = v % &self.0.p;
        e
    }

    pub fn from_bigint(&self, v: &BigInt) -> Fe {
        let mut e = self.zero();
        e.c[0] = ntheory::mod_floor(v, &self.0.p);
        e
    }

    pub fn from_i64(&self, v: i64) -> Fe {
        self.from_bigint(&BigInt::from(v))
    }

    /// Element from a coefficient list, constant term first. Longer lists are reduced.
    pub fn from_coeffs(&self, coeffs: &[BigUint]) -> Fe {
        let p = &self.0.p;
        let v: Vec<BigUint> = coeffs.iter().map(|c| c % p).collect();
        let c = if v.len() <= self.0.k {
            let mut v = v;
            v.resize(self.0.k, BigUint::zero());
            v
        } else {
            let mut r = poly::rem(&v, &self.0.modulus, p);
            r.resize(self.0.k, BigUint::zero());
            r
        };
        Fe {
            field: self.clone(),
            c,
        }
    }

    pub fn from_u64_coeffs(&self, coeffs: &[u64]) -> Fe {
        let v: Vec<BigUint> = coeffs.iter().map(|&c| BigUint::from(c)).collect();
        self.from_coeffs(&v)
    }

    /// The class of `w` (for k = 1 this is 0, the root of the modulus `X`).
    pub fn generator(&self) -> Fe {
        if self.0.k == 1 {
            return self.zero();
        }
        let mut e = self.zero();
        e.c[1] = BigUint::one();
        e
    }

    /// `index`-th element in base-`p` digit order: index 0 is zero, index 1 is one.
    pub fn element(&self, index: &BigUint) -> Fe {
        let mut c = Vec::with_capacity(self.0.k);
        let mut n = index % &self.0.order;
        for _ in 0..self.0.k {
            let (q, r) = n.div_rem(&self.0.p);
            c.push(r);
            n = q;
        }
        Fe {
            field: self.clone(),
            c,
        }
    }

    /// All field elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        let n = self.0.order.to_u64().expect("field too large to enumerate");
        (0..n).map(move |i| self.element(&BigUint::from(i)))
    }

    pub fn random(&self, rng: &mut dyn RngCore) -> Fe {
        let c = (0..self.0.k)
            .map(|_| rng.gen_biguint_below(&self.0.p))
            .collect();
        Fe {
            field: self.clone(),
            c,
        }
    }

    pub fn random_nonzero(&self, rng: &mut dyn RngCore) -> Fe {
        loop {
            let e = self.random(rng);
            if !e.is_zero() {
                return e;
            }
        }
    }

    /// A fixed quadratic non-residue: the first one in enumeration order.
    pub fn nonresidue(&self) -> Fe {
        let c = self.0.nonresidue.get_or_init(|| {
            self.search_order()
                .find(|e| !e.is_square())
                .expect("a field of odd order has nonsquares")
                .c
        });
        Fe {
            field: self.clone(),
            c: c.clone(),
        }
    }

    /// A primitive `n`-th root of unity, if `n | order - 1`.
    pub fn primitive_root_of_unity(&self, n: u64) -> Option<Fe> {
        let m1 = &self.0.order - 1u32;
        let nb = BigUint::from(n);
        if n == 0 || !(&m1 % &nb).is_zero() {
            return None;
        }
        let e = &m1 / &nb;
        let primes: Vec<u64> = ntheory::factor(&nb)
            .into_iter()
            .map(|(q, _)| q.to_u64().unwrap())
            .collect();
        self.search_order()
            .map(|x| x.pow(&e))
            .find(|z| !z.is_zero() && primes.iter().all(|&q| !z.pow_u64(n / q).is_one()))
    }

    /// Nonzero elements in a fixed order: `w + i` for `i in 0..p` when `k > 1`, then
    /// the elements indexed `2, 3, ...`.
    fn search_order(&self) -> impl Iterator<Item = Fe> + '_ {
        let upto = |from: u32, end: &BigUint| {
            let end = end.clone();
            std::iter::successors(Some(BigUint::from(from)), |i| Some(i + 1u32))
                .take_while(move |i| *i < end)
        };
        let shifted = (self.0.k > 1).then(|| {
            let w = self.generator();
            upto(0, &self.0.p).map(move |i| &w + &self.element(&i))
        });
        let plain = upto(2, &self.0.order).map(|i| self.element(&i));
        shifted.into_iter().flatten().chain(plain)
    }

    /// `q^k` for a subfield of order `q = p^d` is contained here iff `d | k`.
    pub fn contains_subfield_of_degree(&self, d: usize) -> bool {
        d > 0 && self.0.k.is_multiple_of(d)
    }

    /// Embed `self` into `target` by sending `w` to a root of the modulus.
    pub fn embedding_into(&self, target: &Field, rng: &mut dyn RngCore) -> Option<Embedding> {
        Embedding::new(self, target, rng)
    }

    fn reduce_product(&self, mut prod: Vec<BigUint>) -> Vec<BigUint> {
        let k = self.0.k;
        let p = &self.0.p;
        if k == 1 {
            prod.truncate(1);
            prod[0] %= p;
            return prod;
        }
        for d in (k..prod.len()).rev() {
            let c = std::mem::take(&mut prod[d]) % p;
            if c.is_zero() {
                continue;
            }
            for (j, m) in &self.0.reduction {
                prod[d - k + j] += &c * m;
            }
        }
        prod.truncate(k);
        for c in prod.iter_mut() {
            *c %= p;
        }
        prod
    }
}

/// Element of a [`Field`]; coefficients of `w^0..w^(k-1)` reduced mod `p`.
#[derive(Clone)]
pub struct Fe {
    field: Field,
    c: Vec<BigUint>,
}

impl PartialEq for Fe {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && self.field == other.field
    }
}
impl Eq for Fe {}

impl std::hash::Hash for Fe {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

/// Lexicographic on the coefficient vector, constant term first.
impl Ord for Fe {
    fn cmp(&self, other: &Self) -> Ordering {
        self.c.cmp(&other.c)
    }
}
impl PartialOrd for Fe {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.len() == 1 {
            return write!(f, "{}", self.c[0]);
        }
        write!(f, "[")?;
        for (i, c) in self.c.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl Fe {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.c
    }

    pub fn coeff_strings(&self) -> Vec<String> {
        self.c.iter().map(|c| c.to_string()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(|c| c.is_zero())
    }

    /// True if the element lies in the prime subfield.
    pub fn is_in_prime_field(&self) -> bool {
        self.c[1..].iter().all(|c| c.is_zero())
    }

    /// Constant coefficient, meaningful for prime-subfield elements.
    pub fn to_biguint(&self) -> BigUint {
        self.c[0].clone()
    }

    fn same(&self, other: &Fe) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Fe) -> Result<Fe, FieldError> {
        self.same(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &Fe) -> Result<Fe, FieldError> {
        self.same(other)?;
        Ok(self.sub_unchecked(other))
    }

    pub fn try_mul(&self, other: &Fe) -> Result<Fe, FieldError> {
        self.same(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn try_div(&self, other: &Fe) -> Result<Fe, FieldError> {
        self.same(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    fn add_unchecked(&self, other: &Fe) -> Fe {
        let p = &self.field.0.p;
        let c = self
            .c
            .iter()
            .zip(&other.c)
            .map(|(a, b)| {
                let s = a + b;
                if &s >= p {
                    s - p
                } else {
                    s
                }
            })
            .collect();
        Fe {
            field: self.field.clone(),
            c,
        }
    }

    fn sub_unchecked(&self, other: &Fe) -> Fe {
        let p = &self.field.0.p;
        let c = self
            .c
            .iter()
            .zip(&other.c)
            .map(|(a, b)| if a >= b { a - b } else { p - (b - a) })
            .collect();
        Fe {
            field: self.field.clone(),
            c,
        }
    }

    fn mul_unchecked(&self, other: &Fe) -> Fe {
        let k = self.c.len();
        let mut prod = vec![BigUint::zero(); 2 * k - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Fe {
            field: self.field.clone(),
            c: self.field.reduce_product(prod),
        }
    }

    pub fn square(&self) -> Fe {
        self.mul_unchecked(self)
    }

    pub fn double(&self) -> Fe {
        self.add_unchecked(self)
    }

    pub fn scale(&self, n: i64) -> Fe {
        self.mul_unchecked(&self.field.from_i64(n))
    }

    pub fn inv(&self) -> Result<Fe, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let f = &self.field.0;
        if f.k == 1 {
            let c = self.c[0].modpow(&(&f.p - 2u32), &f.p);
            return Ok(Fe {
                field: self.field.clone(),
                c: vec![c],
            });
        }
        let inv = poly::inverse_mod(&self.c, &f.modulus, &f.p).expect("modulus is irreducible");
        Ok(self.field.from_coeffs(&inv))
    }

    pub fn pow(&self, e: &BigUint) -> Fe {
        let mut result = self.field.one();
        for i in (0..e.bits()).rev() {
            result = result.square();
            if e.bit(i) {
                result = result.mul_unchecked(self);
            }
        }
        result
    }

    pub fn pow_u64(&self, e: u64) -> Fe {
        self.pow(&BigUint::from(e))
    }

    /// Power with a signed exponent; negative exponents go through the inverse.
    pub fn pow_signed(&self, e: &BigInt) -> Result<Fe, FieldError> {
        match e.sign() {
            Sign::Minus => Ok(self.inv()?.pow(e.magnitude())),
            _ => Ok(self.pow(e.magnitude())),
        }
    }

    /// `self^(p^i)`.
    pub fn frobenius(&self, i: usize) -> Fe {
        let mut x = self.clone();
        for _ in 0..(i % self.field.0.k.max(1)) {
            x = x.pow(&self.field.0.p);
        }
        x
    }

    /// Quadratic residuosity (zero counts as a square).
    pub fn is_square(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        let e = (self.field.order() - 1u32) >> 1;
        self.pow(&e).is_one()
    }

    /// Canonical square root: the root with the lexicographically smaller coefficient vector.
    pub fn sqrt(&self) -> Option<Fe> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let r = self.prime_root(2)?;
        let neg = -&r;
        Some(if neg < r { neg } else { r })
    }

    /// True iff `self` is an `n`-th power: `a^((m-1)/gcd(n, m-1)) = 1`.
    pub fn residue_class(&self, n: u64) -> Result<bool, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroInput);
        }
        let m1 = self.field.order() - 1u32;
        let g = m1.gcd(&BigUint::from(n));
        Ok(self.pow(&(m1 / g)).is_one())
    }

    /// Smallest `d <= bound` with `self^d = 1`.
    pub fn unity_order(&self, bound: u64) -> Result<u64, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroInput);
        }
        let mut x = self.clone();
        for d in 1..=bound {
            if x.is_one() {
                return Ok(d);
            }
            x = x.mul_unchecked(self);
        }
        Err(FieldError::NotARoot(bound))
    }

    /// Exact multiplicative order, via the factorisation of `order - 1`.
    pub fn multiplicative_order(&self) -> Result<BigUint, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroInput);
        }
        let m1 = self.field.order() - 1u32;
        let mut ord = m1.clone();
        for (q, e) in ntheory::factor(&m1) {
            for _ in 0..e {
                let cand = &ord / &q;
                if self.pow(&cand).is_one() {
                    ord = cand;
                } else {
                    break;
                }
            }
        }
        Ok(ord)
    }

    /// Some `n`-th root, searching over the roots of unity when `n` is composite.
    pub fn nth_root(&self, n: u64) -> Option<Fe> {
        if n == 0 {
            return None;
        }
        if n == 1 || self.is_zero() {
            return Some(self.clone());
        }
        let l = ntheory::factor(&BigUint::from(n))[0].0.to_u64().unwrap();
        let y0 = self.prime_root(l)?;
        let rest = n / l;
        if rest == 1 {
            return Some(y0);
        }
        let zeta = self.field.primitive_root_of_unity(l);
        let mut y = y0;
        let tries = if zeta.is_some() { l } else { 1 };
        for _ in 0..tries {
            if let Some(x) = y.nth_root(rest) {
                return Some(x);
            }
            if let Some(z) = &zeta {
                y = &y * z;
            }
        }
        None
    }

    /// An `l`-th root for prime `l` (Adleman–Manders–Miller generalisation of Tonelli–Shanks).
    fn prime_root(&self, l: u64) -> Option<Fe> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let field = &self.field;
        let lb = BigUint::from(l);
        let m1 = field.order() - 1u32;
        let s = ntheory::valuation(&m1, &lb);
        if s == 0 {
            // x -> x^l is a bijection.
            let e = ntheory::mod_inverse(&BigInt::from(l), &m1).unwrap();
            return Some(self.pow(&e));
        }
        if !self.pow(&(&m1 / &lb)).is_one() {
            return None;
        }
        let t = &m1 / lb.pow(s);
        let e = if t.is_one() {
            BigUint::zero()
        } else {
            ntheory::mod_inverse(&BigInt::from(l), &t).unwrap()
        };
        // x0^l = a * b with b in the cyclic l-Sylow subgroup S.
        let x0 = self.pow(&e);
        let b = x0.pow_u64(l) * self.inv().ok()?;
        let g = field
            .search_order()
            .find(|z| !z.is_zero() && !z.pow(&(&m1 / &lb)).is_one())?
            .pow(&t);
        let zeta = g.pow(&lb.pow(s - 1));
        let ginv = g.inv().ok()?;
        // Discrete log of b to base g, one base-l digit at a time.
        let mut beta = BigUint::zero();
        for j in 0..s {
            let probe = (&b * &ginv.pow(&beta)).pow(&lb.pow(s - 1 - j));
            let mut z = field.one();
            let mut d = 0u64;
            while z != probe {
                z = &z * &zeta;
                d += 1;
                if d >= l {
                    return None;
                }
            }
            beta += BigUint::from(d) * lb.pow(j);
        }
        if !(&beta % &lb).is_zero() {
            return None;
        }
        Some(x0 * ginv.pow(&(beta / &lb)))
    }

    /// Image of a prime-subfield element in another field of the same characteristic.
    pub fn lift_to(&self, target: &Field) -> Result<Fe, FieldError> {
        if !self.is_in_prime_field() || target.characteristic() != self.field.characteristic() {
            return Err(FieldError::FieldMismatch);
        }
        Ok(target.from_biguint(&self.c[0]))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&Fe> for &Fe {
            type Output = Fe;
            fn $m(self, rhs: &Fe) -> Fe {
                assert!(self.field == rhs.field, "field mismatch");
                self.$f(rhs)
            }
        }
        impl $tr<Fe> for Fe {
            type Output = Fe;
            fn $m(self, rhs: Fe) -> Fe {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Fe> for Fe {
            type Output = Fe;
            fn $m(self, rhs: &Fe) -> Fe {
                (&self).$m(rhs)
            }
        }
        impl $tr<Fe> for &Fe {
            type Output = Fe;
            fn $m(self, rhs: Fe) -> Fe {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, add_unchecked);
binop!(Sub, sub, sub_unchecked);
binop!(Mul, mul, mul_unchecked);

impl Div<&Fe> for &Fe {
    type Output = Fe;
    fn div(self, rhs: &Fe) -> Fe {
        self.try_div(rhs).expect("division by zero")
    }
}
impl Div<Fe> for Fe {
    type Output = Fe;
    fn div(self, rhs: Fe) -> Fe {
        &self / &rhs
    }
}
impl Div<&Fe> for Fe {
    type Output = Fe;
    fn div(self, rhs: &Fe) -> Fe {
        &self / rhs
    }
}

impl Neg for &Fe {
    type Output = Fe;
    fn neg(self) -> Fe {
        self.field.zero().sub_unchecked(self)
    }
}
impl Neg for Fe {
    type Output = Fe;
    fn neg(self) -> Fe {
        -&self
    }
}

impl AddAssign<&Fe> for Fe {
    fn add_assign(&mut self, rhs: &Fe) {
        *self = &*self + rhs;
    }
}
impl SubAssign<&Fe> for Fe {
    fn sub_assign(&mut self, rhs: &Fe) {
        *self = &*self - rhs;
    }
}
impl MulAssign<&Fe> for Fe {
    fn mul_assign(&mut self, rhs: &Fe) {
        *self = &*self * rhs;
    }
}
