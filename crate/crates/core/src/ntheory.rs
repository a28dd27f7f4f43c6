//! Integer number theory used throughout: primality, factoring of desk-scale
//! group orders, Euler's totient and a few modular helpers.

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

const SMALL_PRIMES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Miller–Rabin with the first 13 prime bases is deterministic below this bound.
fn deterministic_bound() -> BigUint {
    // 3_317_044_064_679_887_385_961_981
    BigUint::parse_bytes(b"3317044064679887385961981", 10).unwrap()
}

fn miller_rabin_round(n: &BigUint, d: &BigUint, s: u32, a: &BigUint) -> bool {
    let one = BigUint::one();
    let n1 = n - &one;
    let mut x = a.modpow(d, n);
    if x == one || x == n1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n1 {
            return true;
        }
        if x == one {
            return false;
        }
    }
    false
}

/// Primality test. Deterministic below ~3.3e24, 64 seeded random rounds above.
pub fn is_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    for &p in &SMALL_PRIMES {
        let p = BigUint::from(p);
        if n == &p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n1 = n - 1u32;
    let s = n1.trailing_zeros().unwrap_or(0) as u32;
    let d = &n1 >> s;
    if n < &deterministic_bound() {
        return SMALL_PRIMES
            .iter()
            .all(|&a| miller_rabin_round(n, &d, s, &BigUint::from(a)));
    }
    // Fixed seed: the same input always gets the same verdict.
    let mut rng = ChaCha20Rng::seed_from_u64(0x005e_ed0f_9a11);
    (0..64).all(|_| {
        let a = rng.gen_biguint_range(&two, &n1);
        miller_rabin_round(n, &d, s, &a)
    })
}

pub fn is_prime_u64(n: u64) -> bool {
    is_prime(&BigUint::from(n))
}

/// Pollard–Brent rho; returns a non-trivial factor of composite `n`.
fn rho_factor(n: &BigUint) -> BigUint {
    if n.is_even() {
        return BigUint::from(2u32);
    }
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        let mut d = BigUint::one();
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            d = diff.gcd(n);
        }
        if &d != n {
            return d;
        }
        c += 1u32;
    }
}

/// Full factorisation into `(prime, exponent)` pairs, ascending.
pub fn factor(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    let push =
        |p: BigUint, out: &mut Vec<(BigUint, u32)>| match out.iter_mut().find(|(q, _)| *q == p) {
            Some(entry) => entry.1 += 1,
            None => out.push((p, 1)),
        };
    if n.is_zero() {
        return out;
    }
    let mut m = n.clone();
    let mut d = 2u32;
    while d < 10_000 {
        let bd = BigUint::from(d);
        if &bd * &bd > m {
            break;
        }
        while (&m % &bd).is_zero() {
            push(bd.clone(), &mut out);
            m /= &bd;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut stack = vec![m];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            push(m, &mut out);
            continue;
        }
        let f = rho_factor(&m);
        stack.push(&m / &f);
        stack.push(f);
    }
    out.sort();
    out
}

/// Euler's totient of a small integer.
pub fn euler_phi(k: u64) -> u64 {
    factor(&BigUint::from(k))
        .into_iter()
        .fold(k, |acc, (p, _)| {
            let p = p.to_u64().unwrap();
            acc / p * (p - 1)
        })
}

/// Largest `v` with `p^v | n` (n > 0).
pub fn valuation(n: &BigUint, p: &BigUint) -> u32 {
    let mut v = 0;
    let mut m = n.clone();
    while !m.is_zero() && (&m % p).is_zero() {
        m /= p;
        v += 1;
    }
    v
}

/// Canonical residue of `a` modulo `m` in `[0, m)`.
pub fn mod_floor(a: &BigInt, m: &BigUint) -> BigUint {
    let m = BigInt::from(m.clone());
    a.mod_floor(&m).to_biguint().unwrap()
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: &BigInt, m: &BigUint) -> Option<BigUint> {
    let mi = BigInt::from(m.clone());
    let e = a.mod_floor(&mi).extended_gcd(&mi);
    if !e.gcd.is_one() {
        return None;
    }
    Some(mod_floor(&e.x, m))
}

/// Multiplicative order of `a` modulo prime-or-composite `m`, if `gcd(a, m) = 1`
/// and the order does not exceed `bound`.
pub fn multiplicative_order(a: &BigInt, m: &BigUint, bound: u64) -> Option<u64> {
    let a = mod_floor(a, m);
    if m.is_one() {
        return Some(1);
    }
    let mut x = a.clone();
    for d in 1..=bound {
        if x.is_one() {
            return Some(d);
        }
        x = (&x * &a) % m;
    }
    None
}

/// `floor(log2 |n|)`, with 0 for |n| <= 1.
pub fn floor_log2(n: &BigInt) -> u64 {
    let bits = n.abs().bits();
    bits.saturating_sub(1)
}

/// Trace of Frobenius over `F_{q^m}` from the trace over `F_q`:
/// `t_m = t * t_{m-1} - q * t_{m-2}`, `t_0 = 2`, `t_1 = t`.
pub fn extension_trace(t: &BigInt, q: &BigUint, m: u32) -> BigInt {
    let q = BigInt::from(q.clone());
    let (mut prev, mut cur) = (BigInt::from(2), t.clone());
    if m == 0 {
        return prev;
    }
    for _ in 1..m {
        let next = t * &cur - &q * &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `#E(F_{q^m})` from `#E(F_q)`.
pub fn extension_order(base_order: &BigUint, q: &BigUint, m: u32) -> BigUint {
    let t = BigInt::from(q + 1u32) - BigInt::from(base_order.clone());
    let tm = extension_trace(&t, q, m);
    (BigInt::from(q.pow(m)) + BigInt::one() - tm)
        .to_biguint()
        .expect("Hasse bound")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_prime(n: u64) -> bool {
        n >= 2
            && (2..n)
                .take_while(|d| d * d <= n)
                .all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..5000u64 {
            assert_eq!(is_prime_u64(n), naive_prime(n), "n = {n}");
        }
        // Carmichael numbers and a strong pseudoprime to base 2.
        for n in [561u64, 1105, 1729, 2047, 3215031751] {
            assert!(!is_prime_u64(n));
        }
        assert!(is_prime_u64(4294967291));
    }

    #[test]
    fn large_prime_goes_probabilistic() {
        // 2^89 - 1 is a Mersenne prime, 2^89 + 1 is divisible by 3.
        let m89 = (BigUint::one() << 89usize) - 1u32;
        assert!(is_prime(&m89));
        assert!(!is_prime(&(&m89 + 2u32)));
    }

    #[test]
    fn factor_recovers_input() {
        for n in [
            1u64,
            2,
            12,
            97 * 101,
            2 * 3 * 3 * 5 * 7 * 7 * 7,
            1_000_003 * 999_983,
        ] {
            let f = factor(&BigUint::from(n));
            let back = f.iter().fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e));
            assert_eq!(back, BigUint::from(n));
            assert!(f.iter().all(|(p, _)| is_prime(p)));
        }
    }

    #[test]
    fn totient_small_values() {
        let want = [1u64, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4];
        for (k, w) in (1..=12).zip(want) {
            assert_eq!(euler_phi(k), w);
        }
    }

    #[test]
    fn extension_orders_of_supersingular_curve() {
        // Y^2 = X^3 + X over F_7 has 8 points and trace 0; over F_49 it has 64.
        let q = BigUint::from(7u32);
        assert_eq!(
            extension_order(&BigUint::from(8u32), &q, 2),
            BigUint::from(64u32)
        );
        // Y^2 = X^3 + 1 over F_5: 6 points; over F_{5^6}: 126^2.
        let q = BigUint::from(5u32);
        assert_eq!(
            extension_order(&BigUint::from(6u32), &q, 6),
            BigUint::from(126u32 * 126)
        );
    }
}
