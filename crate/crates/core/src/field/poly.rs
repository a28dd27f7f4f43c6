//! Dense polynomials over `F_p` with `BigUint` coefficients, constant term first.
//! Only what field construction and inversion need.

use num_bigint::BigUint;
use num_traits::{One, Zero};

pub(crate) type Poly = Vec<BigUint>;

pub(crate) fn trim(a: &mut Poly) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

pub(crate) fn degree(a: &[BigUint]) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

fn sub_mod(a: &BigUint, b: &BigUint, p: &BigUint) -> BigUint {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

pub(crate) fn sub(a: &[BigUint], b: &[BigUint], p: &BigUint) -> Poly {
    let n = a.len().max(b.len());
    let zero = BigUint::zero();
    let mut out: Poly = (0..n)
        .map(|i| sub_mod(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero), p))
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[BigUint], b: &[BigUint], p: &BigUint) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigUint::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    for c in out.iter_mut() {
        *c %= p;
    }
    trim(&mut out);
    out
}

fn inv_mod(a: &BigUint, p: &BigUint) -> BigUint {
    a.modpow(&(p - 2u32), p)
}

/// `(q, r)` with `a = q*b + r`, `deg r < deg b`. Panics on `b = 0`.
pub(crate) fn divrem(a: &[BigUint], b: &[BigUint], p: &BigUint) -> (Poly, Poly) {
    let db = degree(b).expect("division by zero polynomial");
    let mut r: Poly = a.to_vec();
    trim(&mut r);
    let Some(da) = degree(&r) else {
        return (Vec::new(), Vec::new());
    };
    if da < db {
        return (Vec::new(), r);
    }
    let lead_inv = inv_mod(&b[db], p);
    let mut q = vec![BigUint::zero(); da - db + 1];
    for i in (0..=da - db).rev() {
        let c = (&r[i + db] * &lead_inv) % p;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(db + 1) {
            let t = (&c * bj) % p;
            r[i + j] = sub_mod(&r[i + j], &t, p);
        }
        q[i] = c;
    }
    trim(&mut q);
    trim(&mut r);
    (q, r)
}

pub(crate) fn rem(a: &[BigUint], b: &[BigUint], p: &BigUint) -> Poly {
    divrem(a, b, p).1
}

fn make_monic(mut a: Poly, p: &BigUint) -> Poly {
    trim(&mut a);
    if let Some(d) = degree(&a) {
        let inv = inv_mod(&a[d], p);
        for c in a.iter_mut() {
            *c = (&*c * &inv) % p;
        }
    }
    a
}

pub(crate) fn gcd(a: &[BigUint], b: &[BigUint], p: &BigUint) -> Poly {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    make_monic(x, p)
}

/// Inverse of `a` modulo `m` (which must be coprime to `a`).
pub(crate) fn inverse_mod(a: &[BigUint], m: &[BigUint], p: &BigUint) -> Option<Poly> {
    // Extended Euclid tracking only the coefficient of `a`.
    let (mut r0, mut r1) = (m.to_vec(), rem(a, m, p));
    let (mut s0, mut s1): (Poly, Poly) = (Vec::new(), vec![BigUint::one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if degree(&r0) != Some(0) {
        return None;
    }
    let c = inv_mod(&r0[0], p);
    let mut out: Poly = s0.iter().map(|x| (x * &c) % p).collect();
    trim(&mut out);
    Some(out)
}

pub(crate) fn powmod(base: &[BigUint], e: &BigUint, m: &[BigUint], p: &BigUint) -> Poly {
    let mut result: Poly = vec![BigUint::one()];
    let b = rem(base, m, p);
    for i in (0..e.bits()).rev() {
        result = rem(&mul(&result, &result, p), m, p);
        if e.bit(i) {
            result = rem(&mul(&result, &b, p), m, p);
        }
    }
    result
}

/// Ben-Or irreducibility test: `f` of degree `n` is irreducible iff
/// `gcd(X^(p^i) - X, f) = 1` for every `1 <= i <= n/2`.
pub(crate) fn is_irreducible(f: &[BigUint], p: &BigUint) -> bool {
    let Some(n) = degree(f) else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let x: Poly = vec![BigUint::zero(), BigUint::one()];
    let mut h = x.clone();
    for _ in 1..=n / 2 {
        h = powmod(&h, p, f, p);
        let g = gcd(&sub(&h, &x, p), f, p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Poly {
        v.iter().map(|&c| BigUint::from(c)).collect()
    }

    #[test]
    fn divrem_reconstructs() {
        let m = BigUint::from(7u32);
        let a = p(&[3, 0, 5, 1, 6]);
        let b = p(&[2, 1, 3]);
        let (q, r) = divrem(&a, &b, &m);
        let back = mul(&q, &b, &m);
        let zero = BigUint::zero();
        let sum: Poly = (0..a.len())
            .map(|i| (back.get(i).unwrap_or(&zero) + r.get(i).unwrap_or(&zero)) % &m)
            .collect();
        assert_eq!(sum, a);
        assert!(degree(&r) < degree(&b));
    }

    #[test]
    fn irreducibility_small_cases() {
        let seven = BigUint::from(7u32);
        // X^2 + 1 irreducible mod 7, X^2 - 2 = (X-3)(X+3) mod 7.
        assert!(is_irreducible(&p(&[1, 0, 1]), &seven));
        assert!(!is_irreducible(&p(&[5, 0, 1]), &seven));
        // X^3 - 2 mod 7: 2 is not a cube mod 7, so irreducible.
        assert!(is_irreducible(&p(&[5, 0, 0, 1]), &seven));
        // (X^2+1)^2 reducible.
        assert!(!is_irreducible(&p(&[1, 0, 2, 0, 1]), &seven));
    }

    #[test]
    fn inverse_mod_poly() {
        let seven = BigUint::from(7u32);
        let m = p(&[1, 0, 1]);
        let a = p(&[3, 5]);
        let inv = inverse_mod(&a, &m, &seven).unwrap();
        assert_eq!(rem(&mul(&a, &inv, &seven), &m, &seven), p(&[1]));
    }
}
