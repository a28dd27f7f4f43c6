//! Named example contexts, rebuilt deterministically from a generator.

use num_bigint::BigUint;
use rand::RngCore;

use crate::curve::Curve;
use crate::field::Field;
use crate::optimal::{family_instantiate, CurveFamily, OptimalError};
use crate::pairings::{ContextSpec, PairingContext, PairingError};

pub const NAMES: [&str; 7] = [
    "tiny-f49",
    "tiny-f25",
    "ss103",
    "mnt4",
    "j1728-k4",
    "bn-k12",
    "freeman-k10",
];

/// Range searched for the Freeman parameter `x0`.
pub const FREEMAN_RANGE: u64 = 1000;

#[allow(clippy::too_many_arguments)]
fn short(
    name: &str,
    p: u64,
    a: i64,
    b: i64,
    order: u64,
    r: u64,
    k: u32,
    twist: Option<u32>,
    rng: &mut dyn RngCore,
) -> Result<PairingContext, PairingError> {
    let f = Field::prime(p)?;
    let spec = ContextSpec {
        name: name.into(),
        curve: Curve::from_i64(&f, [0, 0, 0, a, b])?,
        r: BigUint::from(r),
        k,
        order: BigUint::from(order),
        g1: None,
        g2: None,
        twist,
    };
    PairingContext::new(spec, rng)
}

/// The context called `name`, or `None` for an unknown name.
pub fn build(name: &str, rng: &mut dyn RngCore) -> Option<Result<PairingContext, OptimalError>> {
    let ctx = match name {
        // Y^2 = X^3 + X over F_7; E[2] is rational over F_49.
        "tiny-f49" => short(name, 7, 1, 0, 8, 2, 2, None, rng),
        // Y^2 = X^3 + 1 over F_5; E[3] is rational over F_25.
        "tiny-f25" => short(name, 5, 0, 1, 6, 3, 2, None, rng),
        // Supersingular Y^2 = X^3 + X over F_103 with G2 the distortion image of G1.
        "ss103" => short(name, 103, 1, 0, 104, 13, 2, None, rng).and_then(|ctx| {
            let g2 = ctx.curve().distortion(ctx.g1())?;
            let spec = ContextSpec {
                name: name.into(),
                curve: ctx.base_curve().clone(),
                r: ctx.r().clone(),
                k: 2,
                order: ctx.order().clone(),
                g1: Some(ctx.g1().clone()),
                g2: Some(g2),
                twist: None,
            };
            PairingContext::new(spec, rng)
        }),
        "mnt4" => short(name, 42643, 1, 1942, 42437, 42437, 4, Some(2), rng),
        "j1728-k4" => short(name, 3061, 6, 0, 3050, 61, 4, Some(4), rng),
        "bn-k12" => short(name, 103, 0, 5, 97, 97, 12, Some(6), rng),
        "freeman-k10" => {
            return Some(
                family_instantiate(&CurveFamily::freeman(), FREEMAN_RANGE, rng).map(|(_, ctx)| ctx),
            )
        }
        _ => return None,
    };
    Some(ctx.map_err(OptimalError::from))
}
