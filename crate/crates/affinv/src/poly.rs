//! Dense univariate polynomial arithmetic over a prime field F_p.
//!
//! Coefficient vectors are stored constant term first. These routines only
//! back field construction (irreducibility testing, modulus search) and
//! element inversion; they are sized for desk-scale moduli, not asymptotics.

use crate::error::{Error, Result};

/// Deterministic trial-division primality check. `p` stays small here, so
/// nothing fancier is warranted.
pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Inverse of `a` modulo the prime `p` (a != 0 mod p).
pub(crate) fn mod_inv(a: u64, p: u64) -> u64 {
    // Extended Euclid on integers; p is prime so any nonzero a is a unit.
    debug_assert!(!a.is_multiple_of(p));
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    s0.rem_euclid(p as i128) as u64
}

pub(crate) fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Degree, or None for the zero polynomial.
pub(crate) fn degree(v: &[u64]) -> Option<usize> {
    v.iter().rposition(|&c| c != 0)
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    trim(&mut out);
    out
}

/// Remainder of `a` modulo `b` (b nonzero), in place of a full divmod.
pub(crate) fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = mod_inv(b[db], p);
    let mut r: Vec<u64> = a.to_vec();
    trim(&mut r);
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let coef = (r[dr] * lead_inv) % p;
        let shift = dr - db;
        for j in 0..=db {
            if b[j] != 0 {
                let sub = (coef * b[j]) % p;
                r[shift + j] = (r[shift + j] + p - sub) % p;
            }
        }
        trim(&mut r);
    }
    r
}

/// Inverse of `a` modulo the monic polynomial `m` over F_p, when gcd(a, m) = 1.
pub(crate) fn inv_mod(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
    // Extended Euclid over F_p[x]: maintain r, s with s*a = r (mod m).
    let mut r0: Vec<u64> = m.to_vec();
    let mut r1: Vec<u64> = rem(a, m, p);
    let mut s0: Vec<u64> = Vec::new();
    let mut s1: Vec<u64> = vec![1];
    trim(&mut r0);
    while !r1.is_empty() {
        // One full division step r0 = q*r1 + r2.
        let d1 = degree(&r1).unwrap();
        let lead_inv = mod_inv(r1[d1], p);
        let mut q = vec![0u64; degree(&r0).map_or(0, |d| d.saturating_sub(d1)) + 1];
        let mut r2 = r0.clone();
        while let Some(d2) = degree(&r2) {
            if d2 < d1 {
                break;
            }
            let coef = (r2[d2] * lead_inv) % p;
            q[d2 - d1] = (q[d2 - d1] + coef) % p;
            for j in 0..=d1 {
                if r1[j] != 0 {
                    let sub = (coef * r1[j]) % p;
                    r2[d2 - d1 + j] = (r2[d2 - d1 + j] + p - sub) % p;
                }
            }
            trim(&mut r2);
        }
        let qs1 = mul(&q, &s1, p);
        let mut s2 = s0.clone();
        s2.resize(s2.len().max(qs1.len()), 0);
        for (i, &c) in qs1.iter().enumerate() {
            s2[i] = (s2[i] + p - c) % p;
        }
        trim(&mut s2);
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    let d = degree(&r0)?;
    if d != 0 {
        return None; // gcd not a unit
    }
    let scale = mod_inv(r0[0], p);
    let mut out: Vec<u64> = s0.iter().map(|&c| c * scale % p).collect();
    trim(&mut out);
    Some(rem(&out, m, p))
}

/// Irreducibility over F_p by trial division against every monic polynomial
/// of degree 1..=deg/2. Quadratic in the candidate count, which is fine for
/// the supported degrees (n <= 16).
pub(crate) fn is_irreducible(m: &[u64], p: u64) -> bool {
    let d = match degree(m) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if d == 1 {
        return true;
    }
    for dd in 1..=d / 2 {
        // All monic divisors of degree dd: dd free coefficients.
        let count = p.pow(dd as u32);
        let mut div = vec![0u64; dd + 1];
        div[dd] = 1;
        for idx in 0..count {
            let mut v = idx;
            for c in div.iter_mut().take(dd) {
                *c = v % p;
                v /= p;
            }
            if rem(m, &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The lexicographically smallest monic irreducible of degree `n` over F_p,
/// comparing coefficient vectors constant term first.
pub(crate) fn first_irreducible(p: u64, n: usize) -> Vec<u64> {
    assert!(n >= 1);
    let mut m = vec![0u64; n + 1];
    m[n] = 1;
    let total = (p as u128).pow(n as u32);
    for idx in 0..total {
        // Constant-first lexicographic order: c0 is the most significant digit.
        let mut v = idx;
        for i in (0..n).rev() {
            m[i] = (v % p as u128) as u64;
            v /= p as u128;
        }
        if is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("an irreducible of every degree exists over F_p")
}

pub(crate) fn modulus_string(m: &[u64]) -> String {
    let terms: Vec<String> = m
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| match (i, c) {
            (0, c) => format!("{c}"),
            (1, 1) => "x".to_string(),
            (1, c) => format!("{c}x"),
            (i, 1) => format!("x^{i}"),
            (i, c) => format!("{c}x^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

pub(crate) fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NonPrime(p))
    }
}
