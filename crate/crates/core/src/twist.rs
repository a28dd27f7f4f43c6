//! Twists of degree 2, 3, 4 and 6 of short Weierstraß curves, with the explicit
//! isomorphism `psi: E' -> E`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::RngCore;

use crate::curve::{Curve, CurveError, Point};
use crate::field::{Embedding, Fe, Field};
use crate::ntheory;

/// A twist `E'` over a finite field `F` together with `psi(x, y) = (x / u^2, y / u^3)`
/// over an extension `psi_field` of `F`.
///
/// `u^2 = D` for `d = 2`, `u^4 = D` for `d = 4`, `u^6 = D` for `d in {3, 6}`.
#[derive(Debug, Clone)]
pub struct Twist {
    d: u32,
    class: usize,
    coeff: Fe,
    curve: Curve,
    order: BigUint,
    source: Curve,
    target: Curve,
    scale_x: Fe,
    scale_y: Fe,
    emb: Option<Embedding>,
}

/// Number of twist classes of degree `d` up to `F_q`-isomorphism.
pub fn twist_classes(d: u32) -> usize {
    if d == 2 {
        1
    } else {
        2
    }
}

fn primitive_root(f: &Field) -> Fe {
    let m1 = f.order() - 1u32;
    let factors = ntheory::factor(&m1);
    let mut i = BigUint::from(2u32);
    loop {
        let g = f.element(&i);
        if factors.iter().all(|(l, _)| !g.pow(&(&m1 / l)).is_one()) {
            return g;
        }
        i += 1u32;
    }
}

impl Twist {
    /// The twist of degree `d` in class `class`, with `D` the first element of `F` in
    /// enumeration order satisfying the residue condition of that class.
    /// `base_order` is `#E(F)`; `psi_field` must contain the degree-`d` extension of `F`.
    pub fn new(
        curve: &Curve,
        base_order: &BigUint,
        d: u32,
        class: usize,
        psi_field: &Field,
        rng: &mut dyn RngCore,
    ) -> Result<Twist, CurveError> {
        let f = curve.field();
        let q = f.order().clone();
        if !curve.is_short() {
            return Err(CurveError::UnsupportedShape("twists need a short curve"));
        }
        if ![2, 3, 4, 6].contains(&d) || class >= twist_classes(d) {
            return Err(CurveError::UnsupportedShape(
                "twist degree must be 2, 3, 4 or 6",
            ));
        }
        if psi_field.characteristic() != f.characteristic()
            || !psi_field.degree().is_multiple_of(f.degree() * d as usize)
        {
            return Err(CurveError::CurveMismatch);
        }
        let (a, b) = (curve.a4().clone(), curve.a6().clone());
        match d {
            4 if !b.is_zero() || (&q % 4u32) != BigUint::one() => {
                return Err(CurveError::UnsupportedShape(
                    "quartic twist needs b = 0 and q = 1 mod 4",
                ))
            }
            3 | 6 if !a.is_zero() || (&q % 3u32) != BigUint::one() => {
                return Err(CurveError::UnsupportedShape(
                    "cubic and sextic twists need a = 0 and q = 1 mod 3",
                ))
            }
            _ => {}
        }
        let g = primitive_root(f);
        let class_ok = |x: &Fe| -> bool {
            let sq = x.is_square();
            let cube = x.residue_class(3).unwrap_or(false);
            match d {
                2 => !sq,
                4 => {
                    let m = if class == 0 { &g * x } else { g.pow_u64(3) * x };
                    !sq && m.residue_class(4).unwrap()
                }
                3 | 6 => {
                    let m = if class == 0 { &g * x } else { g.square() * x };
                    let sq_ok = if d == 3 { sq } else { !sq };
                    sq_ok && !cube && m.residue_class(3).unwrap()
                }
                _ => unreachable!(),
            }
        };
        let coeff = f
            .elements()
            .skip(1)
            .find(class_ok)
            .ok_or(CurveError::BadResidueStructure)?;
        let twisted = match d {
            2 => Curve::short(f, coeff.square() * &a, coeff.pow_u64(3) * &b)?,
            4 => Curve::short(f, &coeff * &a, f.zero())?,
            _ => Curve::short(f, f.zero(), &coeff * &b)?,
        };
        let root_deg = if d == 2 {
            2
        } else if d == 4 {
            4
        } else {
            6
        };
        let emb = if f.degree() == 1 {
            None
        } else {
            Some(
                f.embedding_into(psi_field, rng)
                    .ok_or(CurveError::CurveMismatch)?,
            )
        };
        let up = |c: &Curve| match &emb {
            None => c.base_change(psi_field),
            Some(e) => c.base_change_with(e),
        };
        let big_d = match &emb {
            None => coeff.lift_to(psi_field)?,
            Some(e) => e.apply(&coeff),
        };
        let u = big_d
            .nth_root(root_deg)
            .ok_or(CurveError::BadResidueStructure)?;
        let u2 = u.square();
        let scale_x = u2.inv()?;
        let scale_y = (&u2 * &u).inv()?;
        let order = twist_order(curve, base_order, &twisted, d, rng)?;
        let tw = Twist {
            d,
            class,
            coeff,
            source: up(&twisted)?,
            target: up(curve)?,
            curve: twisted,
            order,
            scale_x,
            scale_y,
            emb,
        };
        for _ in 0..4 {
            let pt = tw.source.random_point(rng);
            if !tw.target.contains(&tw.psi(&pt)) {
                return Err(CurveError::BadResidueStructure);
            }
        }
        Ok(tw)
    }

    /// The class whose twist has `r | #E'(F_{q^e})`.
    pub fn find(
        curve: &Curve,
        base_order: &BigUint,
        d: u32,
        r: &BigUint,
        e: u32,
        psi_field: &Field,
        rng: &mut dyn RngCore,
    ) -> Result<Twist, CurveError> {
        for class in 0..twist_classes(d) {
            let tw = Twist::new(curve, base_order, d, class, psi_field, rng)?;
            if (tw.order_over(e) % r).is_zero() {
                return Ok(tw);
            }
        }
        Err(CurveError::BadResidueStructure)
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn class(&self) -> usize {
        self.class
    }

    /// The twist coefficient `D`.
    pub fn coeff(&self) -> &Fe {
        &self.coeff
    }

    /// `E'` over `F`.
    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    /// `E'` over the field of definition of `psi`.
    pub fn source(&self) -> &Curve {
        &self.source
    }

    /// `E` over the field of definition of `psi`.
    pub fn target(&self) -> &Curve {
        &self.target
    }

    /// A point of `E'(F)` as a point of `source()`.
    pub fn lift(&self, p: &Point) -> Result<Point, CurveError> {
        let f = self.source.field();
        Ok(match p {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => match &self.emb {
                None => Point::new(x.lift_to(f)?, y.lift_to(f)?),
                Some(e) => Point::new(e.apply(x), e.apply(y)),
            },
        })
    }

    /// `#E'(F)`.
    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// `#E'` over the degree-`e` extension of `F`.
    pub fn order_over(&self, e: u32) -> BigUint {
        ntheory::extension_order(&self.order, self.curve.field().order(), e)
    }

    pub fn scales(&self) -> (&Fe, &Fe) {
        (&self.scale_x, &self.scale_y)
    }

    /// `psi: E' -> E`.
    pub fn psi(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => Point::new(x * &self.scale_x, y * &self.scale_y),
        }
    }

    /// `psi^{-1}: E -> E'`.
    pub fn psi_inv(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => Point::new(x / &self.scale_x, y / &self.scale_y),
        }
    }
}

/// `#E'(F_q)`, chosen among the traces allowed for a twist of degree `d` by checking
/// random points, or by counting when the field is small and the check is ambiguous.
fn twist_order(
    curve: &Curve,
    base_order: &BigUint,
    twisted: &Curve,
    d: u32,
    rng: &mut dyn RngCore,
) -> Result<BigUint, CurveError> {
    let q = curve.field().order().clone();
    let qi = BigInt::from(q.clone());
    let t = BigInt::from(&q + 1u32) - BigInt::from(base_order.clone());
    let disc = BigInt::from(4) * &qi - &t * &t;
    let mut traces = vec![-t.clone()];
    let isqrt_exact = |n: &BigInt| -> Option<BigInt> {
        if n.is_negative() {
            return None;
        }
        let s = n.sqrt();
        (&s * &s == *n).then_some(s)
    };
    match d {
        4 => {
            if let Some(v) = isqrt_exact(&(&disc / 4)) {
                traces.extend([v.clone() * 2, -v * 2]);
            }
        }
        3 | 6 if disc.is_multiple_of(&BigInt::from(3)) => {
            if let Some(v) = isqrt_exact(&(&disc / 3)) {
                for s in [&t + &v * 3, &t - &v * 3] {
                    let s: BigInt = s;
                    if s.is_even() {
                        let h: BigInt = s / 2;
                        traces.extend([h.clone(), -h]);
                    }
                }
            }
        }
        _ => {}
    }
    let mut cands: Vec<BigUint> = traces
        .into_iter()
        .filter(|c| *c != t)
        .filter_map(|c: BigInt| (&qi + BigInt::one() - c).to_biguint())
        .collect();
    cands.sort();
    cands.dedup();
    for _ in 0..16 {
        if cands.len() <= 1 {
            break;
        }
        let pt = twisted.random_point(rng);
        cands.retain(|n| twisted.mul_u(n, &pt).is_infinity());
    }
    match cands.len() {
        1 => Ok(cands.pop().unwrap()),
        _ => twisted.count_points(),
    }
}
