//! Long Weierstraß curves with tangent-and-chord arithmetic that reports its lines.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::One;
use rand::RngCore;
use sha2::{Digest, Sha256};

use crate::field::{Fe, Field, FieldError};
use crate::ntheory;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CurveError {
    #[error("singular curve (zero discriminant)")]
    SingularCurve,
    #[error("points or coefficients from different curves or fields")]
    CurveMismatch,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("field too large to enumerate")]
    FieldTooLarge,
    #[error("curve not supported by this operation: {0}")]
    UnsupportedCurve(&'static str),
    #[error("curve not in the required shape: {0}")]
    UnsupportedShape(&'static str),
    #[error("field lacks the root-of-unity structure for this twist")]
    BadResidueStructure,
    #[error("hash-to-curve failed after {0} attempts")]
    HashFailure(u32),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// `O` or an affine point. Ordered with `O` first, then by `(x, y)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Infinity,
    Affine { x: Fe, y: Fe },
}

impl Point {
    pub fn new(x: Fe, y: Fe) -> Point {
        Point::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn x(&self) -> Option<&Fe> {
        match self {
            Point::Infinity => None,
            Point::Affine { x, .. } => Some(x),
        }
    }

    pub fn y(&self) -> Option<&Fe> {
        match self {
            Point::Infinity => None,
            Point::Affine { y, .. } => Some(y),
        }
    }

    /// Coordinate-wise `q^i`-power Frobenius.
    pub fn frobenius(&self, q: &BigUint, i: u32) -> Point {
        match self {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => {
                let e = q.pow(i);
                Point::new(x.pow(&e), y.pow(&e))
            }
        }
    }

    /// Apply a coordinate map (e.g. a field embedding).
    pub fn map(&self, f: impl Fn(&Fe) -> Fe) -> Point {
        match self {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => Point::new(f(x), f(y)),
        }
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => write!(f, "O"),
            Point::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

/// A line function on the curve, normalised so that equal lines compare equal.
/// `Vertical { x0 }` is `X - x0`; `Chord { lambda, nu }` is `Y - lambda*X - nu`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Line {
    One,
    Vertical { x0: Fe },
    Chord { lambda: Fe, nu: Fe },
}

impl Line {
    pub fn vertical(p: &Point) -> Line {
        match p {
            Point::Infinity => Line::One,
            Point::Affine { x, .. } => Line::Vertical { x0: x.clone() },
        }
    }

    /// Value at an affine point; `None` at `O`, which needs the local treatment.
    pub fn eval(&self, p: &Point) -> Option<Fe> {
        match (self, p) {
            (_, Point::Infinity) => None,
            (Line::One, Point::Affine { x, .. }) => Some(x.field().one()),
            (Line::Vertical { x0 }, Point::Affine { x, .. }) => Some(x - x0),
            (Line::Chord { lambda, nu }, Point::Affine { x, y }) => Some(y - &(lambda * x) - nu),
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Line::One)
    }

    /// Order of the pole at `O`.
    pub fn pole_order(&self) -> i64 {
        match self {
            Line::One => 0,
            Line::Vertical { .. } => 2,
            Line::Chord { .. } => 3,
        }
    }

    pub fn map(&self, f: impl Fn(&Fe) -> Fe) -> Line {
        match self {
            Line::One => Line::One,
            Line::Vertical { x0 } => Line::Vertical { x0: f(x0) },
            Line::Chord { lambda, nu } => Line::Chord {
                lambda: f(lambda),
                nu: f(nu),
            },
        }
    }
}

impl fmt::Debug for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Line::One => write!(f, "1"),
            Line::Vertical { x0 } => write!(f, "X - {x0}"),
            Line::Chord { lambda, nu } => write!(f, "Y - {lambda}*X - {nu}"),
        }
    }
}

/// `Y^2 + a1 XY + a3 Y = X^3 + a2 X^2 + a4 X + a6` over `field`.
#[derive(Clone, PartialEq, Eq)]
pub struct Curve {
    field: Field,
    a: [Fe; 5],
}

impl fmt::Debug for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "E[{}, {}, {}, {}, {}] over {:?}",
            self.a[0], self.a[1], self.a[2], self.a[3], self.a[4], self.field
        )
    }
}

impl Curve {
    pub fn new(field: &Field, a: [Fe; 5]) -> Result<Curve, CurveError> {
        if a.iter().any(|c| c.field() != field) {
            return Err(CurveError::CurveMismatch);
        }
        let c = Curve {
            field: field.clone(),
            a,
        };
        if c.discriminant().is_zero() {
            return Err(CurveError::SingularCurve);
        }
        Ok(c)
    }

    pub fn from_i64(field: &Field, a: [i64; 5]) -> Result<Curve, CurveError> {
        Self::new(field, a.map(|c| field.from_i64(c)))
    }

    /// `Y^2 = X^3 + aX + b`.
    pub fn short(field: &Field, a: Fe, b: Fe) -> Result<Curve, CurveError> {
        let z = field.zero();
        Self::new(field, [z.clone(), z.clone(), z, a, b])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fe; 5] {
        &self.a
    }

    pub fn a1(&self) -> &Fe {
        &self.a[0]
    }
    pub fn a2(&self) -> &Fe {
        &self.a[1]
    }
    pub fn a3(&self) -> &Fe {
        &self.a[2]
    }
    pub fn a4(&self) -> &Fe {
        &self.a[3]
    }
    pub fn a6(&self) -> &Fe {
        &self.a[4]
    }

    pub fn is_short(&self) -> bool {
        self.a[0].is_zero() && self.a[1].is_zero() && self.a[2].is_zero()
    }

    pub fn discriminant(&self) -> Fe {
        let [a1, a2, a3, a4, a6] = &self.a;
        let b2 = a1.square() + a2.scale(4);
        let b4 = a4.double() + a1 * a3;
        let b6 = a3.square() + a6.scale(4);
        let b8 =
            a1.square() * a6 + (a2 * a6).scale(4) - a1 * a3 * a4 + a2 * a3.square() - a4.square();
        -(b2.square() * &b8) - b4.pow_u64(3).scale(8) - b6.square().scale(27)
            + (b2 * b4 * b6).scale(9)
    }

    /// The same equation over a field containing the coefficient field's prime subfield.
    /// Coefficients must lie in the prime field.
    pub fn base_change(&self, target: &Field) -> Result<Curve, CurveError> {
        let a = self
            .a
            .iter()
            .map(|c| c.lift_to(target))
            .collect::<Result<Vec<_>, _>>()?;
        Curve::new(target, a.try_into().unwrap())
    }

    /// Base change along an arbitrary field embedding.
    pub fn base_change_with(&self, emb: &crate::field::Embedding) -> Result<Curve, CurveError> {
        Curve::new(emb.target(), self.a.clone().map(|c| emb.apply(&c)))
    }

    /// `F(x, y) = y^2 + a1 xy + a3 y - x^3 - a2 x^2 - a4 x - a6`.
    pub fn equation(&self, x: &Fe, y: &Fe) -> Fe {
        let [a1, a2, a3, a4, a6] = &self.a;
        y.square() + a1 * x * y + a3 * y - x.pow_u64(3) - a2 * &x.square() - a4 * x - a6
    }

    pub fn contains(&self, p: &Point) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine { x, y } => {
                x.field() == &self.field
                    && y.field() == &self.field
                    && self.equation(x, y).is_zero()
            }
        }
    }

    pub fn point(&self, x: Fe, y: Fe) -> Result<Point, CurveError> {
        let p = Point::new(x, y);
        if self.contains(&p) {
            Ok(p)
        } else {
            Err(CurveError::NotOnCurve)
        }
    }

    pub fn point_u64(&self, x: u64, y: u64) -> Result<Point, CurveError> {
        self.point(self.field.from_u64(x), self.field.from_u64(y))
    }

    pub fn neg(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => Point::new(x.clone(), -y - &(&self.a[0] * x) - &self.a[2]),
        }
    }

    /// `P + Q` together with the lines `l` and `v` with `div(l/v) = [P] + [Q] - [P+Q] - [O]`.
    pub fn add_with_lines(&self, p: &Point, q: &Point) -> (Point, Line, Line) {
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return (q.clone(), Line::One, Line::One),
            (_, Point::Infinity) => return (p.clone(), Line::One, Line::One),
            (Point::Affine { x: x1, y: y1 }, Point::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let [a1, a2, a3, a4, _] = &self.a;
        if x1 == x2 && *y2 == -y1 - &(a1 * x1) - a3 {
            return (
                Point::Infinity,
                Line::Vertical { x0: x1.clone() },
                Line::One,
            );
        }
        let lambda = if x1 != x2 {
            (y2 - y1) / (x2 - x1)
        } else {
            let num = x1.square().scale(3) + (a2 * x1).double() + a4 - a1 * y1;
            let den = y1.double() + a1 * x1 + a3;
            num / den
        };
        let nu = y1 - &(&lambda * x1);
        let x3 = lambda.square() + a1 * &lambda - a2 - x1 - x2;
        let y3 = -(&lambda * &x3 + &nu) - a1 * &x3 - a3;
        (
            Point::new(x3.clone(), y3),
            Line::Chord { lambda, nu },
            Line::Vertical { x0: x3 },
        )
    }

    pub fn add(&self, p: &Point, q: &Point) -> Point {
        self.add_with_lines(p, q).0
    }

    pub fn sub(&self, p: &Point, q: &Point) -> Point {
        self.add(p, &self.neg(q))
    }

    pub fn double(&self, p: &Point) -> Point {
        self.add(p, p)
    }

    pub fn mul(&self, n: &BigInt, p: &Point) -> Point {
        let base = if n.sign() == Sign::Minus {
            self.neg(p)
        } else {
            p.clone()
        };
        let m = n.magnitude();
        let mut acc = Point::Infinity;
        for i in (0..m.bits()).rev() {
            acc = self.double(&acc);
            if m.bit(i) {
                acc = self.add(&acc, &base);
            }
        }
        acc
    }

    pub fn mul_u(&self, n: &BigUint, p: &Point) -> Point {
        self.mul(&BigInt::from(n.clone()), p)
    }

    pub fn mul_i64(&self, n: i64, p: &Point) -> Point {
        self.mul(&BigInt::from(n), p)
    }

    /// Exact order of `p`, given a multiple `n` of it (e.g. the group order).
    pub fn order_of(&self, p: &Point, n: &BigUint) -> BigUint {
        let mut ord = n.clone();
        for (q, e) in ntheory::factor(n) {
            for _ in 0..e {
                let cand = &ord / &q;
                if self.mul_u(&cand, p).is_infinity() {
                    ord = cand;
                } else {
                    break;
                }
            }
        }
        ord
    }

    /// Points with the given `x`, smaller `y` first.
    pub fn points_with_x(&self, x: &Fe) -> Vec<Point> {
        // y^2 + b y - c = 0 with b = a1 x + a3, c = x^3 + a2 x^2 + a4 x + a6.
        let [a1, a2, a3, a4, a6] = &self.a;
        let b = a1 * x + a3;
        let c = x.pow_u64(3) + a2 * &x.square() + a4 * x + a6;
        let disc = b.square() + c.scale(4);
        let Some(s) = disc.sqrt() else {
            return Vec::new();
        };
        let half = self.field.from_u64(2).inv().unwrap();
        let y0 = (-&b + &s) * &half;
        let y1 = (-&b - &s) * &half;
        let mut out = vec![Point::new(x.clone(), y0.clone())];
        if y1 != y0 {
            out.push(Point::new(x.clone(), y1));
        }
        out.sort();
        out
    }

    /// All points, `O` first, then in field-enumeration order of `x`.
    pub fn enumerate_points(&self) -> Result<Vec<Point>, CurveError> {
        if self.field.order() > &BigUint::from(1u64 << 20) {
            return Err(CurveError::FieldTooLarge);
        }
        let mut out = vec![Point::Infinity];
        for x in self.field.elements() {
            out.extend(self.points_with_x(&x));
        }
        Ok(out)
    }

    pub fn random_point(&self, rng: &mut dyn RngCore) -> Point {
        loop {
            let x = self.field.random(rng);
            let pts = self.points_with_x(&x);
            if pts.is_empty() {
                continue;
            }
            let i = (rng.next_u32() as usize) % pts.len();
            return pts[i].clone();
        }
    }

    /// Try-and-increment hash onto the curve: SHA-256 of `(tag, msg, counter, coeff)`
    /// yields each coordinate coefficient.
    pub fn hash_to_curve(&self, tag: &[u8], msg: &[u8]) -> Result<Point, CurveError> {
        const TRIES: u32 = 256;
        let p = self.field.characteristic();
        for ctr in 0..TRIES {
            let coeffs: Vec<BigUint> = (0..self.field.degree() as u32)
                .map(|i| {
                    let mut h = Sha256::new();
                    h.update((tag.len() as u32).to_be_bytes());
                    h.update(tag);
                    h.update(msg);
                    h.update(ctr.to_be_bytes());
                    h.update(i.to_be_bytes());
                    BigUint::from_bytes_be(&h.finalize()) % p
                })
                .collect();
            let x = self.field.from_coeffs(&coeffs);
            let pts = self.points_with_x(&x);
            if let Some(pt) = pts.first() {
                return Ok(pt.clone());
            }
        }
        Err(CurveError::HashFailure(TRIES))
    }

    /// `Tr(P) = sum_{i<k} pi^i(P)` with `pi` the `q`-power Frobenius.
    pub fn trace(&self, p: &Point, q: &BigUint, k: u32) -> Point {
        let mut acc = Point::Infinity;
        let mut cur = p.clone();
        for _ in 0..k {
            acc = self.add(&acc, &cur);
            cur = cur.frobenius(q, 1);
        }
        acc
    }

    /// Distortion map on `Y^2 = X^3 + X` (p = 3 mod 4): `(x, y) -> (-x, iy)`,
    /// or on `Y^2 = X^3 + 1` (p = 2 mod 3): `(x, y) -> (zeta x, y)`.
    /// The curve must be defined over `F_{p^2}` (or an extension of even degree).
    pub fn distortion(&self, pt: &Point) -> Result<Point, CurveError> {
        let f = &self.field;
        let p = f.characteristic();
        let zero = f.zero();
        let one = f.one();
        let shape_x3_x = self.is_short() && self.a[3] == one && self.a[4] == zero;
        let shape_x3_1 = self.is_short() && self.a[3] == zero && self.a[4] == one;
        let four = BigUint::from(4u32);
        let three = BigUint::from(3u32);
        if shape_x3_x && (p % &four) == BigUint::from(3u32) {
            let i = (-&one)
                .sqrt()
                .ok_or(CurveError::UnsupportedCurve("no sqrt(-1) in field"))?;
            return Ok(match pt {
                Point::Infinity => Point::Infinity,
                Point::Affine { x, y } => Point::new(-x, &i * y),
            });
        }
        if shape_x3_1 && (p % &three) == BigUint::from(2u32) {
            let zeta = self.cube_root_of_unity()?;
            return Ok(match pt {
                Point::Infinity => Point::Infinity,
                Point::Affine { x, y } => Point::new(&zeta * x, y.clone()),
            });
        }
        Err(CurveError::UnsupportedCurve(
            "distortion needs Y^2 = X^3 + X with p = 3 mod 4 or Y^2 = X^3 + 1 with p = 2 mod 3",
        ))
    }

    /// `(-1 + sqrt(-3))/2` with the canonical square root.
    fn cube_root_of_unity(&self) -> Result<Fe, CurveError> {
        let f = &self.field;
        let s = f.from_i64(-3).sqrt().ok_or(CurveError::UnsupportedCurve(
            "no cube root of unity in field",
        ))?;
        Ok((s - f.one()) / f.from_u64(2))
    }

    /// Curve order over the field by enumeration.
    pub fn count_points(&self) -> Result<BigUint, CurveError> {
        if self.field.order() > &BigUint::from(1u64 << 20) {
            return Err(CurveError::FieldTooLarge);
        }
        let mut n = BigUint::one();
        let [a1, a2, a3, a4, a6] = &self.a;
        for x in self.field.elements() {
            let b = a1 * &x + a3;
            let c = x.pow_u64(3) + a2 * &x.square() + a4 * &x + a6;
            let disc = b.square() + c.scale(4);
            n += if disc.is_zero() {
                1u32
            } else if disc.is_square() {
                2
            } else {
                0
            };
        }
        Ok(n)
    }
}

/// Largest `r^v` dividing `n`.
pub fn prime_power_part(n: &BigUint, r: &BigUint) -> BigUint {
    r.pow(ntheory::valuation(n, r))
}

/// `n / r^v(n)`, the cofactor prime to `r`.
pub fn cofactor_prime_to(n: &BigUint, r: &BigUint) -> BigUint {
    n / prime_power_part(n, r)
}

/// Frobenius trace `q + 1 - n`.
pub fn trace_of(q: &BigUint, n: &BigUint) -> BigInt {
    BigInt::from(q + 1u32) - BigInt::from(n.clone())
}

/// Exponent of the group generated by the sampled points: the lcm of their orders.
pub fn sampled_exponent(
    curve: &Curve,
    group_order: &BigUint,
    rng: &mut dyn RngCore,
    samples: usize,
) -> BigUint {
    let mut e = BigUint::one();
    for _ in 0..samples {
        let pt = curve.random_point(rng);
        e = e.lcm(&curve.order_of(&pt, group_order));
    }
    e
}
