//! JSON descriptors for fields, curves, points, contexts and curve families.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use rand::RngCore;
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::curve::{Curve, CurveError, Point};
use crate::field::{Fe, Field, FieldDescriptor, FieldError};
use crate::optimal::CurveFamily;
use crate::pairings::{ContextSpec, PairingContext, PairingError};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed value: {0}")]
    Malformed(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Pairing(#[from] PairingError),
}

/// An integer written as a JSON number when it fits in 64 bits, else as a decimal string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if let Some(v) = self.0.to_i64() {
            s.serialize_i64(v)
        } else if let Some(v) = self.0.to_u64() {
            s.serialize_u64(v)
        } else {
            s.serialize_str(&self.0.to_string())
        }
    }
}

struct IntVisitor;

impl<'de> Visitor<'de> for IntVisitor {
    type Value = Int;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
        Ok(Int(v.into()))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
        Ok(Int(v.into()))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
        BigInt::from_str(v.trim())
            .map(Int)
            .map_err(|_| E::custom(format!("not an integer: {v}")))
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
        d.deserialize_any(IntVisitor)
    }
}

impl From<&BigUint> for Int {
    fn from(v: &BigUint) -> Int {
        Int(BigInt::from(v.clone()))
    }
}

impl From<&BigInt> for Int {
    fn from(v: &BigInt) -> Int {
        Int(v.clone())
    }
}

impl Int {
    pub fn to_biguint(&self) -> Result<BigUint, IoError> {
        self.0.to_biguint().ok_or_else(|| {
            IoError::Malformed(format!("expected a nonnegative integer, got {}", self.0))
        })
    }
}

/// A field element as its coefficient list (constant first), or a single integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementJson {
    Scalar(Int),
    Coeffs(Vec<Int>),
}

impl ElementJson {
    pub fn from_fe(x: &Fe) -> ElementJson {
        ElementJson::Coeffs(x.coeffs().iter().map(Int::from).collect())
    }

    pub fn to_fe(&self, f: &Field) -> Result<Fe, IoError> {
        let coeffs: Vec<&Int> = match self {
            ElementJson::Scalar(v) => vec![v],
            ElementJson::Coeffs(v) => v.iter().collect(),
        };
        if coeffs.len() > f.degree().max(1) {
            return Err(IoError::Malformed(format!(
                "{} coefficients for a field of degree {}",
                coeffs.len(),
                f.degree()
            )));
        }
        let mut acc = f.zero();
        let mut w = f.one();
        let gen = if f.degree() > 1 {
            f.generator()
        } else {
            f.one()
        };
        for c in coeffs {
            acc = acc + f.from_bigint(&c.0) * &w;
            w *= &gen;
        }
        Ok(acc)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointJson {
    Infinity(InfinityTag),
    Affine { x: ElementJson, y: ElementJson },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InfinityTag;

impl Serialize for InfinityTag {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str("infinity")
    }
}

impl<'de> Deserialize<'de> for InfinityTag {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<InfinityTag, D::Error> {
        let s = String::deserialize(d)?;
        if s.eq_ignore_ascii_case("infinity") || s == "O" {
            Ok(InfinityTag)
        } else {
            Err(de::Error::custom(format!(
                "expected \"infinity\", got {s:?}"
            )))
        }
    }
}

impl PointJson {
    pub fn from_point(p: &Point) -> PointJson {
        match p {
            Point::Infinity => PointJson::Infinity(InfinityTag),
            Point::Affine { x, y } => PointJson::Affine {
                x: ElementJson::from_fe(x),
                y: ElementJson::from_fe(y),
            },
        }
    }

    /// The point on `curve`, checked to satisfy its equation.
    pub fn to_point(&self, curve: &Curve) -> Result<Point, IoError> {
        Ok(match self {
            PointJson::Infinity(_) => Point::Infinity,
            PointJson::Affine { x, y } => {
                let f = curve.field();
                curve.point(x.to_fe(f)?, y.to_fe(f)?)?
            }
        })
    }
}

/// Parses a point given as JSON text or the bare word `infinity`.
pub fn parse_point(text: &str, curve: &Curve) -> Result<Point, IoError> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("infinity") || t == "O" {
        return Ok(Point::Infinity);
    }
    serde_json::from_str::<PointJson>(t)?.to_point(curve)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveDescriptor {
    pub field: FieldDescriptor,
    /// `[a1, a2, a3, a4, a6]`.
    pub a: Vec<ElementJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Int>,
}

impl CurveDescriptor {
    pub fn from_curve(c: &Curve, order: Option<&BigUint>) -> CurveDescriptor {
        CurveDescriptor {
            field: c.field().descriptor(),
            a: c.coeffs().iter().map(ElementJson::from_fe).collect(),
            order: order.map(Int::from),
        }
    }

    pub fn to_curve(&self) -> Result<Curve, IoError> {
        let f = Field::from_descriptor(&self.field)?;
        if self.a.len() != 5 {
            return Err(IoError::Malformed(
                "a must list [a1, a2, a3, a4, a6]".into(),
            ));
        }
        let a: Vec<Fe> = self
            .a
            .iter()
            .map(|c| c.to_fe(&f))
            .collect::<Result<_, _>>()?;
        Ok(Curve::new(&f, a.try_into().unwrap())?)
    }
}

/// A pairing context: the curve over `F_q`, `r`, `k`, `#E(F_q)`, optional generators
/// over `L = F_{q^k}` and an optional twist degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextDescriptor {
    pub name: String,
    pub curve: CurveDescriptor,
    pub r: Int,
    pub k: u32,
    /// The field `L` in which generator coordinates are written.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ext: Option<FieldDescriptor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g1: Option<PointJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g2: Option<PointJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<u32>,
}

impl ContextDescriptor {
    pub fn from_context(ctx: &PairingContext) -> ContextDescriptor {
        ContextDescriptor {
            name: ctx.name().to_string(),
            curve: CurveDescriptor::from_curve(ctx.base_curve(), Some(ctx.order())),
            r: Int::from(ctx.r()),
            k: ctx.k(),
            ext: Some(ctx.ext().descriptor()),
            g1: Some(PointJson::from_point(ctx.g1())),
            g2: Some(PointJson::from_point(ctx.g2())),
            twist: ctx.twist().map(|t| t.degree()),
        }
    }

    /// Validates the descriptor into a context; missing generators are drawn from `rng`.
    pub fn to_context(&self, rng: &mut dyn RngCore) -> Result<PairingContext, IoError> {
        let curve = self.curve.to_curve()?;
        let order = match &self.curve.order {
            Some(o) => o.to_biguint()?,
            None => curve.count_points()?,
        };
        let p = curve.field().characteristic().clone();
        let ext = Field::new(p, self.k as usize)?;
        if let Some(d) = &self.ext {
            if Field::from_descriptor(d)? != ext {
                return Err(IoError::Malformed(
                    "ext must be the canonical model of F_p^k".into(),
                ));
            }
        }
        let lifted = curve.base_change(&ext)?;
        let gen = |g: &Option<PointJson>| g.as_ref().map(|pj| pj.to_point(&lifted)).transpose();
        let (g1, g2) = (gen(&self.g1)?, gen(&self.g2)?);
        let spec = ContextSpec {
            name: self.name.clone(),
            curve,
            r: self.r.to_biguint()?,
            k: self.k,
            order,
            g1,
            g2,
            twist: self.twist,
        };
        let ctx = PairingContext::new(spec, rng)?;
        Ok(ctx)
    }
}

pub fn context_from_json(text: &str, rng: &mut dyn RngCore) -> Result<PairingContext, IoError> {
    serde_json::from_str::<ContextDescriptor>(text)?.to_context(rng)
}

pub fn context_to_json(ctx: &PairingContext) -> String {
    serde_json::to_string_pretty(&ContextDescriptor::from_context(ctx)).expect("serialisable")
}

/// `{k, p: [...], u: [...], r: [...]}` with coefficients constant first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDescriptor {
    pub k: u32,
    pub p: Vec<Int>,
    pub u: Vec<Int>,
    pub r: Vec<Int>,
}

impl FamilyDescriptor {
    pub fn from_family(f: &CurveFamily) -> FamilyDescriptor {
        let v = |c: &[BigInt]| c.iter().map(Int::from).collect();
        FamilyDescriptor {
            k: f.k,
            p: v(&f.p),
            u: v(&f.u),
            r: v(&f.r),
        }
    }

    pub fn to_family(&self) -> CurveFamily {
        let v = |c: &[Int]| c.iter().map(|x| x.0.clone()).collect();
        CurveFamily {
            k: self.k,
            p: v(&self.p),
            u: v(&self.u),
            r: v(&self.r),
        }
    }
}
