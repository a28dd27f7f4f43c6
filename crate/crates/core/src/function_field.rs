//! Divisors and factored rational functions (products of lines), with valuations,
//! leading coefficients, evaluation, tame symbols and Weil reciprocity.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;

use crate::curve::{Curve, Line, Point};
use crate::field::{fpoly, Fe};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FunctionError {
    #[error("function vanishes or has a pole at {0}")]
    SupportCollision(Point),
    #[error("divisor is not principal")]
    NotPrincipal,
    #[error("zero function")]
    ZeroFunction,
    #[error("points from different curves")]
    CurveMismatch,
}

/// Finite formal sum of points.
#[derive(Clone, PartialEq, Eq, Default, Hash, PartialOrd, Ord)]
pub struct Divisor {
    coeffs: BTreeMap<Point, i64>,
}

impl Divisor {
    pub fn zero() -> Divisor {
        Divisor::default()
    }

    /// `n[P]`.
    pub fn point(p: &Point, n: i64) -> Divisor {
        let mut d = Divisor::zero();
        d.add_term(p, n);
        d
    }

    /// `[P] - [O]`.
    pub fn minus_infinity(p: &Point) -> Divisor {
        let mut d = Divisor::point(p, 1);
        d.add_term(&Point::Infinity, -1);
        d
    }

    pub fn from_terms<'a>(terms: impl IntoIterator<Item = (&'a Point, i64)>) -> Divisor {
        let mut d = Divisor::zero();
        for (p, n) in terms {
            d.add_term(p, n);
        }
        d
    }

    pub fn add_term(&mut self, p: &Point, n: i64) {
        if n == 0 {
            return;
        }
        let e = self.coeffs.entry(p.clone()).or_insert(0);
        *e += n;
        if *e == 0 {
            self.coeffs.remove(p);
        }
    }

    pub fn coeff(&self, p: &Point) -> i64 {
        self.coeffs.get(p).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Point, i64)> {
        self.coeffs.iter().map(|(p, &n)| (p, n))
    }

    pub fn support(&self) -> Vec<Point> {
        self.coeffs.keys().cloned().collect()
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (p, n) in other.terms() {
            d.add_term(p, n);
        }
        d
    }

    pub fn neg(&self) -> Divisor {
        self.scale(-1)
    }

    pub fn sub(&self, other: &Divisor) -> Divisor {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> Divisor {
        let mut d = Divisor::zero();
        for (p, n) in self.terms() {
            d.add_term(p, n * k);
        }
        d
    }

    /// `sum n_P P` in the group.
    pub fn sum_on_curve(&self, curve: &Curve) -> Point {
        self.terms().fold(Point::Infinity, |acc, (p, n)| {
            curve.add(&acc, &curve.mul_i64(n, p))
        })
    }

    /// Degree zero and summing to `O`.
    pub fn is_principal(&self, curve: &Curve) -> bool {
        self.degree() == 0 && self.sum_on_curve(curve).is_infinity()
    }

    /// Map every point (e.g. translation or Frobenius).
    pub fn map_points(&self, f: impl Fn(&Point) -> Point) -> Divisor {
        let mut d = Divisor::zero();
        for (p, n) in self.terms() {
            d.add_term(&f(p), n);
        }
        d
    }

    pub fn disjoint_from(&self, other: &Divisor) -> bool {
        self.coeffs.keys().all(|p| !other.coeffs.contains_key(p))
    }
}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|(p, n)| format!("({p}, {n})")).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// `constant * prod line^e`, never expanded.
#[derive(Clone, PartialEq, Eq)]
pub struct LineProduct {
    factors: BTreeMap<Line, i64>,
    constant: Option<Fe>,
}

impl Default for LineProduct {
    fn default() -> Self {
        LineProduct::one()
    }
}

impl LineProduct {
    pub fn one() -> LineProduct {
        LineProduct {
            factors: BTreeMap::new(),
            constant: None,
        }
    }

    pub fn line(l: &Line) -> LineProduct {
        let mut f = LineProduct::one();
        f.mul_line(l, 1);
        f
    }

    /// `l / v`, the usual output of one group-law step.
    pub fn ratio(l: &Line, v: &Line) -> LineProduct {
        let mut f = LineProduct::one();
        f.mul_line(l, 1);
        f.mul_line(v, -1);
        f
    }

    pub fn constant(c: Fe) -> LineProduct {
        LineProduct {
            factors: BTreeMap::new(),
            constant: Some(c),
        }
    }

    pub fn mul_line(&mut self, l: &Line, e: i64) {
        if l.is_one() || e == 0 {
            return;
        }
        let x = self.factors.entry(l.clone()).or_insert(0);
        *x += e;
        if *x == 0 {
            self.factors.remove(l);
        }
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Line, i64)> {
        self.factors.iter().map(|(l, &e)| (l, e))
    }

    pub fn scalar(&self) -> Option<&Fe> {
        self.constant.as_ref()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty() && self.constant.as_ref().is_none_or(|c| c.is_one())
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn mul(&self, other: &LineProduct) -> LineProduct {
        let mut out = self.clone();
        for (l, e) in other.factors() {
            out.mul_line(l, e);
        }
        out.constant = match (&self.constant, &other.constant) {
            (None, c) | (c, None) => c.clone(),
            (Some(a), Some(b)) => Some(a * b),
        };
        out
    }

    pub fn pow(&self, k: i64) -> LineProduct {
        let mut out = LineProduct::one();
        for (l, e) in self.factors() {
            out.mul_line(l, e * k);
        }
        out.constant = self
            .constant
            .as_ref()
            .map(|c| c.pow_signed(&BigInt::from(k)).expect("nonzero constant"));
        out
    }

    pub fn inv(&self) -> LineProduct {
        self.pow(-1)
    }

    pub fn div(&self, other: &LineProduct) -> LineProduct {
        self.mul(&other.inv())
    }

    pub fn scale(&self, c: &Fe) -> LineProduct {
        self.mul(&LineProduct::constant(c.clone()))
    }

    /// Map the coefficients of every line (e.g. a field embedding or Frobenius).
    pub fn map_coeffs(&self, f: impl Fn(&Fe) -> Fe) -> LineProduct {
        let mut out = LineProduct::one();
        for (l, e) in self.factors() {
            out.mul_line(&l.map(&f), e);
        }
        out.constant = self.constant.as_ref().map(&f);
        out
    }

    fn constant_or_one(&self, curve: &Curve) -> Fe {
        self.constant.clone().unwrap_or_else(|| curve.field().one())
    }

    /// `ord_P(f)`.
    pub fn ord_at(&self, curve: &Curve, p: &Point) -> i64 {
        self.factors()
            .map(|(l, e)| e * line_local(curve, l, p).0)
            .sum()
    }

    /// Leading coefficient at `P` for the canonical local parameter at `P`.
    pub fn lc_at(&self, curve: &Curve, p: &Point) -> Fe {
        let mut acc = self.constant_or_one(curve);
        for (l, e) in self.factors() {
            let (_, c) = line_local(curve, l, p);
            acc = acc * c.pow_signed(&BigInt::from(e)).unwrap();
        }
        acc
    }

    /// Leading coefficient at `O` with respect to `X/Y`.
    pub fn lc_at_infinity(&self, curve: &Curve) -> Fe {
        self.lc_at(curve, &Point::Infinity)
    }

    pub fn make_monic(&self, curve: &Curve) -> LineProduct {
        let lc = self.lc_at_infinity(curve);
        self.scale(&lc.inv().unwrap())
    }

    /// `f(P)`, defined when `ord_P(f) = 0`. Factors that vanish at `P` individually but
    /// cancel overall are handled through their leading coefficients.
    pub fn value_at(&self, curve: &Curve, p: &Point) -> Result<Fe, FunctionError> {
        if p.is_infinity() {
            if self.ord_at(curve, p) != 0 {
                return Err(FunctionError::SupportCollision(p.clone()));
            }
            return Ok(self.lc_at(curve, p));
        }
        let mut acc = self.constant_or_one(curve);
        let mut ord = 0;
        for (l, e) in self.factors() {
            let v = l.eval(p).unwrap();
            let c = if v.is_zero() {
                let (o, c) = line_local(curve, l, p);
                ord += o * e;
                c
            } else {
                v
            };
            acc = acc * c.pow_signed(&BigInt::from(e)).unwrap();
        }
        if ord != 0 {
            return Err(FunctionError::SupportCollision(p.clone()));
        }
        Ok(acc)
    }

    /// `f(D) = prod f(P)^{n_P}`. At `O` the leading coefficient stands in for the value,
    /// so `f([Q] - [O]) = f(Q)/lc(f)`. Affine points of `supp(div f)` are rejected.
    pub fn evaluate(&self, curve: &Curve, d: &Divisor) -> Result<Fe, FunctionError> {
        let mut acc = curve.field().one();
        for (p, n) in d.terms() {
            let v = if p.is_infinity() {
                self.lc_at_infinity(curve)
            } else {
                self.value_at(curve, p)?
            };
            acc = acc * v.pow_signed(&BigInt::from(n)).unwrap();
        }
        Ok(acc)
    }

    /// `div(f)` over the rational points of the curve's field.
    pub fn divisor(&self, curve: &Curve) -> Divisor {
        let mut d = Divisor::zero();
        for (l, e) in self.factors() {
            for p in line_zeros(curve, l) {
                d.add_term(&p, e * line_local(curve, l, &p).0);
            }
            d.add_term(&Point::Infinity, -e * l.pole_order());
        }
        d
    }

    /// Zeros and poles of every factor, plus `O`.
    pub fn support_points(&self, curve: &Curve) -> BTreeSet<Point> {
        let mut s: BTreeSet<Point> = self
            .factors()
            .flat_map(|(l, _)| line_zeros(curve, l))
            .collect();
        s.insert(Point::Infinity);
        s
    }

    /// Text dump: the scalar constant, then one `line^e` per factor.
    pub fn dump(&self) -> String {
        let mut s = match &self.constant {
            Some(c) => format!("constant: {c}\n"),
            None => "constant: 1\n".to_string(),
        };
        for (l, e) in self.factors() {
            s.push_str(&format!("({l})^{e}\n"));
        }
        s
    }
}

impl fmt::Debug for LineProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.dump().trim_end().replace('\n', " * "))
    }
}

/// Truncation degree of the local power series; line orders never exceed 3.
const SERIES_LEN: usize = 5;

type Series = Vec<Fe>;

fn series_mul(a: &Series, b: &Series) -> Series {
    let zero = a[0].field().zero();
    let mut out = vec![zero; SERIES_LEN];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(SERIES_LEN - i) {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// Local expansion of `(X, Y)` at an affine point: returns the power series of
/// `u = X - x` and `eta = Y - y` in the canonical parameter (`u`, or `eta` at
/// points where the tangent is vertical).
fn local_coordinates(curve: &Curve, x: &Fe, y: &Fe) -> (Series, Series) {
    let [a1, a2, a3, a4, _] = curve.coeffs();
    let f = curve.field();
    let fx = a1 * y - x.square().scale(3) - (a2 * x).double() - a4;
    let fy = y.double() + a1 * x + a3;
    let c2 = x.scale(3) + a2;
    let zero = f.zero();
    let mut t: Series = vec![zero.clone(); SERIES_LEN];
    t[1] = f.one();
    let mut s: Series = vec![zero; SERIES_LEN];
    // G(u, eta) = fx u + fy eta + eta^2 + a1 u eta - c2 u^2 - u^3 = 0.
    let ramified = fy.is_zero();
    let (lin, other_lin) = if ramified { (&fx, &fy) } else { (&fy, &fx) };
    let inv = lin.inv().expect("non-singular curve");
    for _ in 0..SERIES_LEN {
        let (u, eta) = if ramified { (&s, &t) } else { (&t, &s) };
        let u2 = series_mul(u, u);
        let terms = [
            series_mul(eta, eta),
            series_mul(u, eta).iter().map(|c| c * a1).collect(),
            u2.iter().map(|c| -(c * &c2)).collect(),
            series_mul(&u2, u).iter().map(|c| -c).collect(),
            t.iter().map(|c| c * other_lin).collect(),
        ];
        let mut rhs: Series = vec![f.zero(); SERIES_LEN];
        for term in terms.iter() {
            for (r, c) in rhs.iter_mut().zip(term) {
                *r = &*r + c;
            }
        }
        s = rhs.iter().map(|c| -(c * &inv)).collect();
    }
    if ramified {
        (s, t)
    } else {
        (t, s)
    }
}

/// `(ord_P(l), leading coefficient)` for the canonical parameter at `P`.
pub(crate) fn line_local(curve: &Curve, l: &Line, p: &Point) -> (i64, Fe) {
    let f = curve.field();
    let (x, y) = match p {
        Point::Infinity => return (-l.pole_order(), f.one()),
        Point::Affine { x, y } => (x, y),
    };
    if let Line::One = l {
        return (0, f.one());
    }
    let v = l.eval(p).unwrap();
    if !v.is_zero() {
        return (0, v);
    }
    let (u, eta) = local_coordinates(curve, x, y);
    let series: Series = match l {
        Line::One => unreachable!(),
        Line::Vertical { x0 } => {
            let mut s = u;
            s[0] = &s[0] + &(x - x0);
            s
        }
        Line::Chord { lambda, .. } => {
            let mut s: Series = eta
                .iter()
                .zip(&u)
                .map(|(e, uu)| e - &(lambda * uu))
                .collect();
            s[0] = &s[0] + &v;
            s
        }
    };
    let (ord, c) = series
        .iter()
        .enumerate()
        .find(|(_, c)| !c.is_zero())
        .expect("line order exceeds series precision");
    (ord as i64, c.clone())
}

/// Affine zeros of a line among the curve's rational points.
pub fn line_zeros(curve: &Curve, l: &Line) -> Vec<Point> {
    match l {
        Line::One => Vec::new(),
        Line::Vertical { x0 } => curve.points_with_x(x0),
        Line::Chord { lambda, nu } => {
            // Substitute Y = lambda X + nu into the curve equation.
            let [a1, a2, a3, a4, a6] = curve.coeffs();
            let f = curve.field();
            let c0 = nu.square() + a3 * nu - a6;
            let c1 = (lambda * nu).double() + a1 * nu + a3 * lambda - a4;
            let c2 = lambda.square() + a1 * lambda - a2;
            let c3 = -f.one();
            fpoly::roots(&[c0, c1, c2, c3])
                .into_iter()
                .map(|x| Point::new(x.clone(), lambda * &x + nu))
                .collect()
        }
    }
}

/// `<f, g>_P = (-1)^{ab} lc_f^b / lc_g^a` with `a = ord_P f`, `b = ord_P g`.
pub fn tame_symbol(curve: &Curve, f: &LineProduct, g: &LineProduct, p: &Point) -> Fe {
    let a = f.ord_at(curve, p);
    let b = g.ord_at(curve, p);
    let lf = f.lc_at(curve, p);
    let lg = g.lc_at(curve, p);
    let mut v = lf.pow_signed(&BigInt::from(b)).unwrap() / lg.pow_signed(&BigInt::from(a)).unwrap();
    if (a * b) % 2 != 0 {
        v = -v;
    }
    v
}

/// Product of tame symbols over the joint support, which must equal 1, and, when the
/// supports are disjoint, the identity `f(div g) = g(div f)`.
pub fn weil_reciprocity_check(curve: &Curve, f: &LineProduct, g: &LineProduct) -> bool {
    let mut support = f.support_points(curve);
    support.extend(g.support_points(curve));
    let prod = support.iter().fold(curve.field().one(), |acc, p| {
        acc * tame_symbol(curve, f, g, p)
    });
    if !prod.is_one() {
        return false;
    }
    let df = f.divisor(curve);
    let dg = g.divisor(curve);
    let affine = |d: &Divisor| {
        let mut d = d.clone();
        d.add_term(&Point::Infinity, -d.coeff(&Point::Infinity));
        d
    };
    if affine(&df).disjoint_from(&affine(&dg))
        && df.coeff(&Point::Infinity) == 0
        && dg.coeff(&Point::Infinity) == 0
    {
        return match (f.evaluate(curve, &dg), g.evaluate(curve, &df)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        };
    }
    true
}

/// A monic function with divisor `D`: each `n[P]` is absorbed by the Miller function
/// `f_{n,P}`, then the points `nP` are summed with chord lines.
pub fn function_from_divisor(curve: &Curve, d: &Divisor) -> Result<LineProduct, FunctionError> {
    if !d.is_principal(curve) {
        return Err(FunctionError::NotPrincipal);
    }
    let mut f = LineProduct::one();
    let mut acc = Point::Infinity;
    for (p, n) in d.terms() {
        if p.is_infinity() {
            continue;
        }
        let (fp, np) = crate::miller::miller_function(curve, n, p);
        f = f.mul(&fp);
        let (sum, l, v) = curve.add_with_lines(&acc, &np);
        f = f.mul(&LineProduct::ratio(&l, &v));
        acc = sum;
    }
    Ok(f.make_monic(curve))
}

/// `f` composed with the translation `X -> X + R`, evaluated pointwise.
#[derive(Clone, Debug)]
pub struct Translated<'a> {
    pub f: &'a LineProduct,
    pub by: Point,
}

impl Translated<'_> {
    pub fn value_at(&self, curve: &Curve, p: &Point) -> Result<Fe, FunctionError> {
        self.f.value_at(curve, &curve.add(p, &self.by))
    }

    pub fn ord_at(&self, curve: &Curve, p: &Point) -> i64 {
        self.f.ord_at(curve, &curve.add(p, &self.by))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    fn e7() -> Curve {
        Curve::from_i64(&Field::new(7u32, 1).unwrap(), [0, 0, 0, 1, 0]).unwrap()
    }

    fn e13() -> Curve {
        Curve::from_i64(&Field::new(13u32, 1).unwrap(), [1, 2, 3, 4, 5]).unwrap()
    }

    fn random_product(
        curve: &Curve,
        pts: &[Point],
        rng: &mut ChaCha20Rng,
        n: usize,
    ) -> LineProduct {
        let mut f = LineProduct::one();
        for _ in 0..n {
            let p = &pts[rng.gen_range(0..pts.len())];
            let q = &pts[rng.gen_range(0..pts.len())];
            let (_, l, v) = curve.add_with_lines(p, q);
            let e = rng.gen_range(-3..=3);
            f.mul_line(&l, e);
            f.mul_line(&v, rng.gen_range(-2..=2));
        }
        f.scale(&curve.field().from_u64(rng.gen_range(1..13)))
    }

    #[test]
    fn divisor_basics() {
        let e = e7();
        let t = e.point_u64(0, 0).unwrap();
        let p = e
            .point_u64(1, 3)
            .unwrap_or_else(|_| e.enumerate_points().unwrap()[3].clone());
        assert_eq!(Divisor::minus_infinity(&p).degree(), 0);
        assert!(!Divisor::minus_infinity(&p).is_principal(&e));
        let d = Divisor::point(&t, 2).add(&Divisor::point(&Point::Infinity, -2));
        assert_eq!(d.sum_on_curve(&e), Point::Infinity);
        assert!(d.is_principal(&e));
        assert!(d.sub(&d).is_zero());
    }

    #[test]
    fn orders_of_vertical_line_at_ramified_point() {
        let e = e7();
        let t = e.point_u64(0, 0).unwrap();
        let v = LineProduct::line(&Line::vertical(&t));
        assert_eq!(v.ord_at(&e, &t), 2);
        assert_eq!(v.ord_at(&e, &Point::Infinity), -2);
        assert!(v.lc_at_infinity(&e).is_one());
        assert_eq!(LineProduct::one().ord_at(&e, &t), 0);
        // Value of X - 0 at (1, y) is 1.
        for p in e.points_with_x(&e.field().one()) {
            assert!(v.evaluate(&e, &Divisor::point(&p, 1)).unwrap().is_one());
        }
    }

    #[test]
    fn group_law_lines_have_the_right_divisor() {
        for e in [e7(), e13()] {
            let pts = e.enumerate_points().unwrap();
            for p in &pts {
                for q in &pts {
                    let (r, l, v) = e.add_with_lines(p, q);
                    let f = LineProduct::ratio(&l, &v);
                    let mut want = Divisor::point(p, 1);
                    want.add_term(q, 1);
                    want.add_term(&r, -1);
                    want.add_term(&Point::Infinity, -1);
                    assert_eq!(f.divisor(&e), want, "P={p} Q={q}");
                    for s in &pts {
                        assert_eq!(f.ord_at(&e, s), want.coeff(s));
                    }
                    assert!(f.lc_at_infinity(&e).is_one());
                    assert_eq!(LineProduct::line(&l).divisor(&e).degree(), 0);
                }
            }
        }
    }

    #[test]
    fn leading_coefficient_is_multiplicative() {
        let e = e13();
        let c = e.field().from_u64(5);
        let pts = e.enumerate_points().unwrap();
        let (_, l, _) = e.add_with_lines(&pts[1], &pts[2]);
        let f = LineProduct::line(&l);
        assert_eq!(f.scale(&c).lc_at_infinity(&e), &c * &f.lc_at_infinity(&e));
        assert!(f.scale(&c).make_monic(&e).lc_at_infinity(&e).is_one());
    }

    #[test]
    fn divisor_of_product_is_sum() {
        let e = e13();
        let pts = e.enumerate_points().unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        for _ in 0..100 {
            let f = random_product(&e, &pts, &mut rng, 3);
            let g = random_product(&e, &pts, &mut rng, 3);
            assert_eq!(f.mul(&g).divisor(&e), f.divisor(&e).add(&g.divisor(&e)));
            assert_eq!(f.divisor(&e).degree(), 0);
            assert!(f.divisor(&e).is_principal(&e));
        }
    }

    #[test]
    fn tame_symbol_collapses_off_support() {
        let e = e13();
        let pts = e.enumerate_points().unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        let f = random_product(&e, &pts, &mut rng, 2);
        let g = random_product(&e, &pts, &mut rng, 2);
        for p in &pts {
            let (a, b) = (f.ord_at(&e, p), g.ord_at(&e, p));
            let s = tame_symbol(&e, &f, &g, p);
            if a == 0 && b == 0 {
                assert!(s.is_one());
            }
            if a == 0 && !p.is_infinity() {
                assert_eq!(
                    s,
                    f.value_at(&e, p)
                        .unwrap()
                        .pow_signed(&BigInt::from(b))
                        .unwrap()
                );
            }
        }
    }

    #[test]
    fn reciprocity_on_random_pairs() {
        let e = e13();
        let pts = e.enumerate_points().unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(11);
        for _ in 0..200 {
            let f = random_product(&e, &pts, &mut rng, 3);
            let g = random_product(&e, &pts, &mut rng, 3);
            assert!(weil_reciprocity_check(&e, &f, &g));
            assert!(weil_reciprocity_check(&e, &f, &f));
        }
    }

    #[test]
    fn reciprocity_detects_a_broken_symbol() {
        // Dropping the sign of the tame symbol breaks the product for some pair.
        let e = e13();
        let pts = e.enumerate_points().unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        let mut found = false;
        for _ in 0..50 {
            let f = random_product(&e, &pts, &mut rng, 2);
            let g = random_product(&e, &pts, &mut rng, 2);
            let mut support = f.support_points(&e);
            support.extend(g.support_points(&e));
            let unsigned = support.iter().fold(e.field().one(), |acc, p| {
                let (a, b) = (f.ord_at(&e, p), g.ord_at(&e, p));
                acc * f.lc_at(&e, p).pow_signed(&BigInt::from(b)).unwrap()
                    / g.lc_at(&e, p).pow_signed(&BigInt::from(a)).unwrap()
            });
            if !unsigned.is_one() {
                found = true;
                break;
            }
        }
        assert!(found);
    }

    #[test]
    fn function_from_divisor_examples() {
        let e = e7();
        assert!(function_from_divisor(&e, &Divisor::zero())
            .unwrap()
            .is_one());
        let t = e.point_u64(0, 0).unwrap();
        let d = Divisor::point(&t, 2).add(&Divisor::point(&Point::Infinity, -2));
        let f = function_from_divisor(&e, &d).unwrap();
        assert_eq!(f.divisor(&e), d);
        // Any monic function with this divisor equals X: compare values.
        let x = LineProduct::line(&Line::vertical(&t));
        for p in e
            .enumerate_points()
            .unwrap()
            .iter()
            .filter(|p| **p != t && !p.is_infinity())
        {
            assert_eq!(f.value_at(&e, p).unwrap(), x.value_at(&e, p).unwrap());
        }
        let e = e13();
        let pts = e.enumerate_points().unwrap();
        let (p, q) = (&pts[3], &pts[7]);
        let (r, l, _) = e.add_with_lines(p, q);
        let mut d = Divisor::point(p, 1);
        d.add_term(q, 1);
        d.add_term(&e.neg(&r), 1);
        d.add_term(&Point::Infinity, -3);
        let f = function_from_divisor(&e, &d).unwrap();
        let line = LineProduct::line(&l);
        for s in pts.iter().filter(|s| !d.support().contains(s)) {
            assert_eq!(f.value_at(&e, s).unwrap(), line.value_at(&e, s).unwrap());
        }
        assert_eq!(
            function_from_divisor(&e, &Divisor::minus_infinity(p)),
            Err(FunctionError::NotPrincipal)
        );
    }

    #[test]
    fn function_from_random_principal_divisors() {
        let e = e13();
        let pts = e.enumerate_points().unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(9);
        for _ in 0..100 {
            let mut d = Divisor::zero();
            for _ in 0..5 {
                d.add_term(&pts[rng.gen_range(1..pts.len())], rng.gen_range(-3..=3));
            }
            let s = d.sum_on_curve(&e);
            d.add_term(&e.neg(&s), 1);
            let deg = d.degree();
            d.add_term(&Point::Infinity, -deg);
            let f = function_from_divisor(&e, &d).unwrap();
            assert_eq!(f.divisor(&e), d);
            assert!(f.lc_at_infinity(&e).is_one());
        }
    }

    #[test]
    fn translation_shifts_orders() {
        let e = e13();
        let pts = e.enumerate_points().unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(2);
        for _ in 0..20 {
            let f = random_product(&e, &pts, &mut rng, 2);
            let r = pts[rng.gen_range(0..pts.len())].clone();
            let t = Translated {
                f: &f,
                by: r.clone(),
            };
            for p in &pts {
                // ord_{P-R}(f o tau_R) = ord_P(f)
                assert_eq!(t.ord_at(&e, &e.sub(p, &r)), f.ord_at(&e, p));
            }
        }
    }

    #[test]
    fn evaluation_at_infinity_uses_leading_coefficient() {
        let e = e13();
        let pts = e.enumerate_points().unwrap();
        let (_, l, v) = e.add_with_lines(&pts[2], &pts[5]);
        let c = e.field().from_u64(4);
        let f = LineProduct::ratio(&l, &v).scale(&c);
        let q = pts
            .iter()
            .find(|q| !q.is_infinity() && f.ord_at(&e, q) == 0)
            .unwrap();
        let got = f.evaluate(&e, &Divisor::minus_infinity(q)).unwrap();
        assert_eq!(got, f.value_at(&e, q).unwrap() / c);
        assert!(LineProduct::one()
            .evaluate(&e, &Divisor::minus_infinity(q))
            .unwrap()
            .is_one());
    }
}
