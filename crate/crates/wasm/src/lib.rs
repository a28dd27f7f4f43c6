//! Browser bindings: curve points, pairing definitions side by side, short lattice vectors.
//!
//! Every export returns a JSON string. The plain functions are also usable natively.

use std::cell::RefCell;
use std::collections::HashMap;

use ecpair::curve::{Curve, Point};
use ecpair::field::Field;
use ecpair::io::{CurveDescriptor, ElementJson, Int, PointJson};
use ecpair::miller;
use ecpair::ntheory;
use ecpair::optimal::{shortest_vector, RootLattice};
use ecpair::pairings::{PairingContext, TateDef, WeilDef};
use ecpair::presets;
use ecpair::rng::Seed;
use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use rand::RngCore;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Presets small enough to pair interactively.
pub const DEMO_PRESETS: [&str; 3] = ["tiny-f49", "tiny-f25", "ss103"];

const MAX_P: u32 = 1000;

thread_local! {
    static CONTEXTS: RefCell<HashMap<String, PairingContext>> = RefCell::new(HashMap::new());
}

fn with_context<T>(
    name: &str,
    f: impl FnOnce(&PairingContext) -> Result<T, String>,
) -> Result<T, String> {
    if !DEMO_PRESETS.contains(&name) {
        return Err(format!("unknown preset {name}"));
    }
    CONTEXTS.with(|cache| {
        let mut cache = cache.borrow_mut();
        if !cache.contains_key(name) {
            let ctx = presets::build(name, &mut Seed::new(7).stream("context"))
                .expect("demo preset exists")
                .map_err(|e| e.to_string())?;
            cache.insert(name.to_string(), ctx);
        }
        f(&cache[name])
    })
}

fn fe(x: &ecpair::field::Fe) -> Value {
    serde_json::to_value(ElementJson::from_fe(x)).unwrap()
}

fn point(p: &Point) -> Value {
    serde_json::to_value(PointJson::from_point(p)).unwrap()
}

fn coeffs(e: &Curve) -> Value {
    serde_json::to_value(CurveDescriptor::from_curve(e, None).a).unwrap()
}

fn ints(v: &[BigInt]) -> Value {
    Value::Array(
        v.iter()
            .map(|x| serde_json::to_value(Int(x.clone())).unwrap())
            .collect(),
    )
}

/// All points of `Y^2 = X^3 + aX + b` over `F_p`, for `p < 1000`.
pub fn curve_points(p: u32, a: i64, b: i64) -> Result<Value, String> {
    if p >= MAX_P {
        return Err(format!("p must be below {MAX_P}"));
    }
    let f = Field::prime(p).map_err(|e| e.to_string())?;
    let e = Curve::from_i64(&f, [0, 0, 0, a, b]).map_err(|e| e.to_string())?;
    let pts = e.enumerate_points().map_err(|e| e.to_string())?;
    let order = BigUint::from(pts.len());
    let pts: Vec<Value> = pts
        .iter()
        .map(|q| json!({ "point": point(q), "order": Int::from(&e.order_of(q, &order)) }))
        .collect();
    Ok(json!({ "a": coeffs(&e), "order": pts.len(), "points": pts }))
}

/// A torsion point outside `<P>` when one turns up quickly, so the Weil value is nontrivial.
fn independent_torsion(ctx: &PairingContext, p: &Point, rng: &mut dyn RngCore) -> Point {
    let mut multiples = vec![Point::Infinity];
    if let Some(r) = ctx.r().to_u32().filter(|r| *r <= 1000) {
        for _ in 1..r {
            multiples.push(ctx.curve().add(multiples.last().unwrap(), p));
        }
    }
    let mut q = ctx.random_torsion(rng);
    for _ in 0..32 {
        if !multiples.contains(&q) {
            break;
        }
        q = ctx.random_torsion(rng);
    }
    q
}

/// Weil or Tate pairing of random torsion points under every definition.
pub fn compare_definitions(preset: &str, pairing: &str, seed: u64) -> Result<Value, String> {
    with_context(preset, |ctx| {
        let seed = Seed::new(seed);
        let mut rng = seed.stream("points");
        let p = ctx.random_torsion(&mut rng);
        let q = match pairing {
            "weil" => independent_torsion(ctx, &p, &mut rng),
            "tate" => ctx.random_point(&mut rng),
            _ => return Err(format!("unknown pairing {pairing}")),
        };
        let mut rows = Vec::new();
        let mut values = Vec::new();
        let mut rng = seed.stream("shifts");
        if pairing == "weil" {
            for def in [WeilDef::Translation, WeilDef::Miller, WeilDef::Divisor] {
                let row = match ctx.weil(&p, &q, def, &mut rng) {
                    Ok(v) => {
                        values.push(v.value.clone());
                        json!({ "def": format!("{def:?}"), "value": fe(&v.value), "miller_calls": v.miller_calls })
                    }
                    Err(e) => json!({ "def": format!("{def:?}"), "error": e.to_string() }),
                };
                rows.push(row);
            }
        } else {
            for def in [TateDef::Divisor, TateDef::Miller] {
                let v = ctx
                    .tate(&p, &q, def, false, &mut rng)
                    .map_err(|e| e.to_string())?;
                let reduced = ctx.reduce(&v.value);
                values.push(reduced.clone());
                rows.push(json!({ "def": format!("{def:?}"), "value": fe(&v.value), "reduced": fe(&reduced) }));
            }
        }
        let agree = values.windows(2).all(|w| w[0] == w[1]);
        Ok(json!({
            "context": ctx.name(),
            "a": coeffs(ctx.base_curve()),
            "r": Int::from(ctx.r()),
            "k": ctx.k(),
            "P": point(&p),
            "Q": point(&q),
            "definitions": rows,
            "agree": agree,
        }))
    })
}

/// LLL-reduced basis and shortest vector of the lattice of polynomials vanishing at `y` mod `r`.
pub fn short_vector(r: &str, y: &str, k: u32) -> Result<Value, String> {
    let r: BigUint = r.trim().parse().map_err(|_| format!("bad integer {r}"))?;
    let y: BigInt = y.trim().parse().map_err(|_| format!("bad integer {y}"))?;
    let dim = ntheory::euler_phi(k as u64) as usize;
    let l = RootLattice::new(&r, &y, dim, k).map_err(|e| e.to_string())?;
    let v = shortest_vector(l.basis()).map_err(|e| e.to_string())?;
    let bits = v.iter().map(miller::loop_bits).max().unwrap_or(0);
    Ok(json!({
        "basis": l.basis().iter().map(|b| ints(b)).collect::<Vec<_>>(),
        "shortest": ints(&v),
        "loop_bits": bits,
        "r_bits": miller::loop_bits(&BigInt::from(r)),
    }))
}

fn export(v: Result<Value, String>) -> Result<String, JsError> {
    v.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = curvePoints)]
pub fn curve_points_js(p: u32, a: i32, b: i32) -> Result<String, JsError> {
    export(curve_points(p, a.into(), b.into()))
}

#[wasm_bindgen(js_name = compareDefinitions)]
pub fn compare_definitions_js(preset: &str, pairing: &str, seed: u32) -> Result<String, JsError> {
    export(compare_definitions(preset, pairing, seed.into()))
}

#[wasm_bindgen(js_name = shortVector)]
pub fn short_vector_js(r: &str, y: &str, k: u32) -> Result<String, JsError> {
    export(short_vector(r, y, k))
}
