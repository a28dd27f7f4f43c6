//! Short loop parameters: the lattice of polynomials vanishing at a root of unity modulo
//! `r`, exact LLL reduction, and the Freeman `k = 10` family.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::RngCore;

use crate::curve::Curve;
use crate::field::Field;
use crate::ntheory;
use crate::pairings::{ContextSpec, PairingContext, PairingError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OptimalError {
    #[error("y is not a k-th root of unity modulo r")]
    NotRootOfUnity,
    #[error("lattice dimension must equal phi(k) = {0}")]
    InvalidDimension(usize),
    #[error("basis is rank deficient")]
    RankDeficient,
    #[error("no x0 with p(x0) and r(x0) prime for |x0| <= {0}")]
    NoInstanceInRange(u64),
    #[error("no curve with the family order found after {0} tries")]
    CurveSearchFailed(u32),
    #[error("family identity fails: {0}")]
    FamilyIdentity(&'static str),
    #[error(transparent)]
    Pairing(#[from] PairingError),
}

/// The lattice `{t in Z[Y] : deg t < dim, r | t(y)}` with basis
/// `r, Y - y, Y^2 - (y^2 mod r), ...` (coefficients constant first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootLattice {
    r: BigUint,
    y: BigInt,
    basis: Vec<Vec<BigInt>>,
}

impl RootLattice {
    pub fn new(r: &BigUint, y: &BigInt, dim: usize, k: u32) -> Result<RootLattice, OptimalError> {
        let phi = ntheory::euler_phi(k as u64) as usize;
        if dim != phi || dim == 0 {
            return Err(OptimalError::InvalidDimension(phi));
        }
        let y_r = ntheory::mod_floor(y, r);
        if y_r.modpow(&BigUint::from(k), r) != BigUint::one() % r {
            return Err(OptimalError::NotRootOfUnity);
        }
        let mut basis = Vec::with_capacity(dim);
        let mut row = vec![BigInt::zero(); dim];
        row[0] = BigInt::from(r.clone());
        basis.push(row);
        for i in 1..dim {
            let mut row = vec![BigInt::zero(); dim];
            row[0] = -BigInt::from(y_r.modpow(&BigUint::from(i), r));
            row[i] = BigInt::one();
            basis.push(row);
        }
        Ok(RootLattice {
            r: r.clone(),
            y: y.clone(),
            basis,
        })
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `r | t(y)`.
    pub fn contains(&self, t: &[BigInt]) -> bool {
        let v = t
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * &self.y + c);
        ntheory::mod_floor(&v, &self.r).is_zero()
    }
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn to_rational(v: &[BigInt]) -> Vec<BigRational> {
    v.iter()
        .map(|x| BigRational::from_integer(x.clone()))
        .collect()
}

/// Gram-Schmidt vectors and coefficients `mu[i][j]`.
type Matrix = Vec<Vec<BigRational>>;

fn gram_schmidt(b: &[Vec<BigInt>]) -> Result<(Matrix, Matrix), OptimalError> {
    let n = b.len();
    let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        let bi = to_rational(&b[i]);
        let mut v = bi.clone();
        for j in 0..i {
            let norm = dot(&star[j], &star[j]);
            mu[i][j] = dot(&bi, &star[j]) / norm;
            for (vc, sc) in v.iter_mut().zip(&star[j]) {
                *vc -= &mu[i][j] * sc;
            }
        }
        if v.iter().all(|x| x.is_zero()) {
            return Err(OptimalError::RankDeficient);
        }
        star.push(v);
    }
    Ok((star, mu))
}

fn round(x: &BigRational) -> BigInt {
    let two = BigInt::from(2);
    (x.numer() * &two + x.denom()).div_floor(&(x.denom() * &two))
}

/// The reduction parameter.
pub const DELTA: (u32, u32) = (99, 100);

/// LLL reduction with `delta = 0.99` over exact rationals.
pub fn lll_reduce(basis: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>, OptimalError> {
    let mut b = basis.to_vec();
    let n = b.len();
    if n == 0 || b.iter().any(|row| row.len() != b[0].len()) {
        return Err(OptimalError::RankDeficient);
    }
    let delta = BigRational::new(DELTA.0.into(), DELTA.1.into());
    let (mut star, mut mu) = gram_schmidt(&b)?;
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let c = round(&mu[k][j]);
            if !c.is_zero() {
                let bj = b[j].clone();
                for (x, y) in b[k].iter_mut().zip(&bj) {
                    *x -= &c * y;
                }
                (star, mu) = gram_schmidt(&b)?;
            }
        }
        let lhs = dot(&star[k], &star[k]);
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * dot(&star[k - 1], &star[k - 1]);
        if lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            (star, mu) = gram_schmidt(&b)?;
            k = k.saturating_sub(1).max(1);
        }
    }
    Ok(b)
}

/// Size reduction `|mu_ij| <= 1/2` and the Lovász condition for `delta = 0.99`.
pub fn is_lll_reduced(b: &[Vec<BigInt>]) -> bool {
    let Ok((star, mu)) = gram_schmidt(b) else {
        return false;
    };
    let half = BigRational::new(1.into(), 2.into());
    let delta = BigRational::new(DELTA.0.into(), DELTA.1.into());
    for i in 0..b.len() {
        if mu[i][..i].iter().any(|m| m.abs() > half) {
            return false;
        }
        if i > 0 {
            let lhs = dot(&star[i], &star[i]);
            let rhs = (&delta - &mu[i][i - 1] * &mu[i][i - 1]) * dot(&star[i - 1], &star[i - 1]);
            if lhs < rhs {
                return false;
            }
        }
    }
    true
}

fn norm2(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x * x).sum()
}

/// `v` or `-v`, whichever has a positive first nonzero entry.
fn normalise(v: &[BigInt]) -> Vec<BigInt> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => v.iter().map(|c| -c).collect(),
        _ => v.to_vec(),
    }
}

/// The first row of the LLL-reduced basis, in nonnegative-leading form; among reduced
/// rows of the same length the lexicographically smallest wins.
pub fn shortest_vector(basis: &[Vec<BigInt>]) -> Result<Vec<BigInt>, OptimalError> {
    let reduced = lll_reduce(basis)?;
    let first = norm2(&reduced[0]);
    let best = reduced
        .iter()
        .filter(|v| norm2(v) == first)
        .map(|v| normalise(v))
        .min()
        .expect("nonempty basis");
    Ok(best)
}

/// Polynomials `p(X)`, `u(X)`, `r(X)` (coefficients constant first) such that
/// `p(x0)`, `r(x0)` prime yields a curve over `F_p(x0)` with trace `u(x0)` and a subgroup
/// of order `r(x0)` with embedding degree `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveFamily {
    pub k: u32,
    pub p: Vec<BigInt>,
    pub u: Vec<BigInt>,
    pub r: Vec<BigInt>,
}

fn poly_eval(c: &[BigInt], x: &BigInt) -> BigInt {
    c.iter().rev().fold(BigInt::zero(), |acc, a| acc * x + a)
}

type QPoly = Vec<BigRational>;

fn qtrim(mut a: QPoly) -> QPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn qmul(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    qtrim(out)
}

fn qrem(a: &QPoly, m: &QPoly) -> QPoly {
    let mut a = qtrim(a.clone());
    let lead = m.last().expect("nonzero modulus").clone();
    while a.len() >= m.len() {
        let c = a.last().unwrap() / &lead;
        let shift = a.len() - m.len();
        for (i, mc) in m.iter().enumerate() {
            a[shift + i] -= &c * mc;
        }
        a = qtrim(a);
    }
    a
}

fn to_qpoly(c: &[BigInt]) -> QPoly {
    qtrim(to_rational(c))
}

impl CurveFamily {
    /// The `k = 10` family `p = 25X^4 + 25X^3 + 25X^2 + 10X + 3`, `u = 10X^2 + 5X + 3`,
    /// `r = 25X^4 + 25X^3 + 15X^2 + 5X + 1`.
    pub fn freeman() -> CurveFamily {
        let v = |c: &[i64]| c.iter().map(|&x| BigInt::from(x)).collect();
        CurveFamily {
            k: 10,
            p: v(&[3, 10, 25, 25, 25]),
            u: v(&[3, 5, 10]),
            r: v(&[1, 5, 15, 25, 25]),
        }
    }

    /// `r(X) | p(X) + 1 - u(X)` and `r(X) | p(X)^k - 1` in `Q[X]`.
    pub fn check_identities(&self) -> Result<(), OptimalError> {
        let r = to_qpoly(&self.r);
        if r.is_empty() {
            return Err(OptimalError::FamilyIdentity("r(X) is zero"));
        }
        let n = self.order_poly();
        if !qrem(&to_qpoly(&n), &r).is_empty() {
            return Err(OptimalError::FamilyIdentity(
                "r(X) does not divide p(X) + 1 - u(X)",
            ));
        }
        let p = qrem(&to_qpoly(&self.p), &r);
        let mut acc: QPoly = vec![BigRational::one()];
        for _ in 0..self.k {
            acc = qrem(&qmul(&acc, &p), &r);
        }
        acc = qtrim(acc);
        if acc != vec![BigRational::one()] {
            return Err(OptimalError::FamilyIdentity(
                "r(X) does not divide p(X)^k - 1",
            ));
        }
        Ok(())
    }

    /// `p(X) + 1 - u(X)`.
    pub fn order_poly(&self) -> Vec<BigInt> {
        let len = self.p.len().max(self.u.len()).max(1);
        (0..len)
            .map(|i| {
                let p = self.p.get(i).cloned().unwrap_or_default();
                let u = self.u.get(i).cloned().unwrap_or_default();
                p - u
                    + if i == 0 {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
            })
            .collect()
    }

    pub fn p_at(&self, x: &BigInt) -> BigInt {
        poly_eval(&self.p, x)
    }

    pub fn u_at(&self, x: &BigInt) -> BigInt {
        poly_eval(&self.u, x)
    }

    pub fn r_at(&self, x: &BigInt) -> BigInt {
        poly_eval(&self.r, x)
    }

    /// The smallest `|x0| <= max_abs` (ties broken towards positive) with `p(x0) >= 5` and
    /// `r(x0)` prime.
    pub fn find_x0(&self, max_abs: u64) -> Result<BigInt, OptimalError> {
        let prime = |v: &BigInt| v.is_positive() && ntheory::is_prime(v.magnitude());
        for a in 0..=max_abs {
            let cands: Vec<BigInt> = if a == 0 {
                vec![BigInt::zero()]
            } else {
                vec![BigInt::from(a), -BigInt::from(a)]
            };
            for x in cands {
                let p = self.p_at(&x);
                if p >= BigInt::from(5) && prime(&p) && prime(&self.r_at(&x)) {
                    return Ok(x);
                }
            }
        }
        Err(OptimalError::NoInstanceInRange(max_abs))
    }
}

const CURVE_TRIES: u32 = 100_000;

/// Instantiates `family` at the smallest admissible `x0` and finds a curve of order
/// `p(x0) + 1 - u(x0)` by random search.
pub fn family_instantiate(
    family: &CurveFamily,
    max_abs: u64,
    rng: &mut dyn RngCore,
) -> Result<(BigInt, PairingContext), OptimalError> {
    family.check_identities()?;
    let x0 = family.find_x0(max_abs)?;
    let p = family.p_at(&x0).magnitude().clone();
    let r = family.r_at(&x0).magnitude().clone();
    let n: BigInt = family.p_at(&x0) + 1 - family.u_at(&x0);
    let n = n.magnitude().clone();
    let twist_n = twist_order(&p, &n).ok_or(OptimalError::FamilyIdentity(
        "order exceeds the Hasse bound",
    ))?;
    let fp = Field::prime(p.clone()).map_err(PairingError::from)?;
    let nonres = fp.nonresidue();
    for _ in 0..CURVE_TRIES {
        let (a, b) = (fp.random(rng), fp.random(rng));
        let Ok(curve) = Curve::short(&fp, a.clone(), b.clone()) else {
            continue;
        };
        if !has_order(&curve, &n, rng) {
            continue;
        }
        let d2 = nonres.square();
        let twisted =
            Curve::short(&fp, &d2 * &a, &d2 * &nonres * &b).expect("twist is nonsingular");
        if !has_order(&twisted, &twist_n, rng) {
            continue;
        }
        let spec = ContextSpec {
            name: format!("freeman-k{}", family.k),
            curve,
            r: r.clone(),
            k: family.k,
            order: n.clone(),
            g1: None,
            g2: None,
            twist: None,
        };
        return Ok((x0, PairingContext::new(spec, rng)?));
    }
    Err(OptimalError::CurveSearchFailed(CURVE_TRIES))
}

/// `2(p + 1) - n`.
fn twist_order(p: &BigUint, n: &BigUint) -> Option<BigUint> {
    let two = (p + 1u32) * 2u32;
    (two >= *n).then(|| two - n)
}

/// `nP = O` for a handful of random points.
fn has_order(curve: &Curve, n: &BigUint, rng: &mut dyn RngCore) -> bool {
    (0..8).all(|_| curve.mul_u(n, &curve.random_point(rng)).is_infinity())
}
