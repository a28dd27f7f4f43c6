//! Polynomials over an arbitrary [`Field`]: just enough for root finding.

use num_bigint::BigUint;
use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use super::{Fe, Field};

pub(crate) type FePoly = Vec<Fe>;

pub(crate) fn trim(a: &mut FePoly) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

pub(crate) fn deg(a: &FePoly) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

pub(crate) fn mul(a: &FePoly, b: &FePoly, zero: &Fe) -> FePoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![zero.clone(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn rem(a: &FePoly, b: &FePoly) -> FePoly {
    let db = deg(b).expect("division by zero polynomial");
    let mut r = a.clone();
    trim(&mut r);
    let inv = b[db].inv().unwrap();
    while let Some(dr) = deg(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] * &inv;
        for j in 0..=db {
            r[dr - db + j] = &r[dr - db + j] - &(&c * &b[j]);
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn gcd(a: &FePoly, b: &FePoly) -> FePoly {
    let (mut x, mut y) = (a.clone(), b.clone());
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(d) = deg(&x) {
        let inv = x[d].inv().unwrap();
        x = x.iter().map(|c| c * &inv).collect();
    }
    x
}

pub(crate) fn powmod(base: &FePoly, e: &BigUint, m: &FePoly, one: &Fe) -> FePoly {
    let zero = one.field().zero();
    let mut result = vec![one.clone()];
    let b = rem(base, m);
    for i in (0..e.bits()).rev() {
        result = rem(&mul(&result, &result, &zero), m);
        if e.bit(i) {
            result = rem(&mul(&result, &b, &zero), m);
        }
    }
    result
}

/// One root of a squarefree polynomial that splits into linear factors.
pub(crate) fn split_root(f: &FePoly, field: &Field, rng: &mut dyn RngCore) -> Option<Fe> {
    let mut f = f.clone();
    trim(&mut f);
    let half = (field.order() - 1u32) >> 1;
    let one = field.one();
    for _ in 0..10_000 {
        match deg(&f)? {
            0 => return None,
            1 => return Some(-(&f[0] / &f[1])),
            _ => {}
        }
        let delta = field.random(rng);
        let x_plus = vec![delta, one.clone()];
        let mut h = powmod(&x_plus, &half, &f, &one);
        if h.is_empty() {
            h.push(field.zero());
        }
        h[0] = &h[0] - &one;
        trim(&mut h);
        let g = gcd(&f, &h);
        if let Some(dg) = deg(&g) {
            if dg > 0 && Some(dg) < deg(&f) {
                f = if 2 * dg <= deg(&f).unwrap() {
                    g
                } else {
                    quotient(&f, &g)
                };
            }
        }
    }
    None
}

pub(crate) fn quotient(a: &FePoly, b: &FePoly) -> FePoly {
    let db = deg(b).unwrap();
    let mut r = a.clone();
    trim(&mut r);
    let da = deg(&r).unwrap();
    let zero = a[0].field().zero();
    let mut q = vec![zero; da - db + 1];
    let inv = b[db].inv().unwrap();
    while let Some(dr) = deg(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] * &inv;
        for j in 0..=db {
            r[dr - db + j] = &r[dr - db + j] - &(&c * &b[j]);
        }
        q[dr - db] = c;
        trim(&mut r);
    }
    trim(&mut q);
    q
}

/// All distinct roots in the field of the polynomial with the given coefficients
/// (constant term first), in ascending order.
pub fn roots(coeffs: &[Fe]) -> Vec<Fe> {
    let mut f: FePoly = coeffs.to_vec();
    trim(&mut f);
    let Some(d) = deg(&f) else {
        return Vec::new();
    };
    if d == 0 {
        return Vec::new();
    }
    let field = f[0].field().clone();
    let one = field.one();
    let zero = field.zero();
    // g = gcd(f, X^q - X) keeps exactly the rational roots, each once.
    let x = vec![zero.clone(), one.clone()];
    let mut h = powmod(&x, field.order(), &f, &one);
    h.resize(h.len().max(2), zero.clone());
    h[1] = &h[1] - &one;
    trim(&mut h);
    let g = if h.is_empty() { f.clone() } else { gcd(&f, &h) };
    let mut rng = ChaCha20Rng::seed_from_u64(0x5eed);
    let mut out = Vec::new();
    split_all(g, &field, &mut rng, &mut out);
    out.sort();
    out
}

fn split_all(f: FePoly, field: &Field, rng: &mut dyn RngCore, out: &mut Vec<Fe>) {
    let Some(d) = deg(&f) else { return };
    match d {
        0 => {}
        1 => out.push(-(&f[0] / &f[1])),
        _ => {
            let one = field.one();
            let half = (field.order() - 1u32) >> 1;
            loop {
                let x_plus = vec![field.random(rng), one.clone()];
                let mut h = powmod(&x_plus, &half, &f, &one);
                if h.is_empty() {
                    h.push(field.zero());
                }
                h[0] = &h[0] - &one;
                trim(&mut h);
                let g = gcd(&f, &h);
                let dg = deg(&g).unwrap_or(0);
                if dg > 0 && dg < d {
                    let q = quotient(&f, &g);
                    split_all(g, field, rng, out);
                    split_all(q, field, rng, out);
                    return;
                }
            }
        }
    }
}
