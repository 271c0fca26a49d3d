//! Arithmetic in GF(p^n) for a runtime-configured prime p and degree n.
//!
//! A [`Field`] is a cheap handle (an `Arc`) around the validated parameters;
//! a [`FieldElement`] stores its field handle plus the canonical integer
//! encoding `value = sum c_i * p^i` of its coefficient vector. For p = 2 the
//! canonical value is exactly the familiar bit-packed representation, so AES
//! style hex constants round-trip directly.
//!
//! Supported range: p < 2^16 prime, 1 <= n <= 16, p^n < 2^32. Inversion uses
//! the extended Euclidean algorithm over `F_p[x]`; exponentiation by p^n - 2 is
//! kept to the test suite as an independent oracle.

use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly;

/// Largest supported extension degree.
pub const MAX_EXTENSION_DEGREE: usize = 16;
const MAX_CHARACTERISTIC: u64 = 1 << 16;
const MAX_ORDER: u128 = 1 << 32;

type CoeffBuf = [u64; MAX_EXTENSION_DEGREE];

#[derive(Debug)]
struct FieldCore {
    p: u64,
    n: usize,
    q: u64,
    modulus: Vec<u64>,
}

/// Handle to a finite field GF(p^n), realized as `F_p[x]` modulo a monic
/// irreducible of degree n.
#[derive(Clone)]
pub struct Field(Arc<FieldCore>);

/// Serializable description of a field: `{ "p": .., "n": .., "modulus": [c0..cn] }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescription {
    pub p: u64,
    pub n: usize,
    pub modulus: Vec<u64>,
}

impl Field {
    /// Constructs GF(p^n). When `modulus` is omitted, the lexicographically
    /// smallest monic irreducible of degree n is selected, comparing
    /// coefficient vectors constant term first.
    pub fn new(p: u64, n: usize, modulus: Option<&[u64]>) -> Result<Field> {
        poly::check_prime(p)?;
        if !(1..=MAX_EXTENSION_DEGREE).contains(&n) {
            return Err(Error::FieldTooLarge(format!(
                "extension degree must be in 1..={MAX_EXTENSION_DEGREE}, got {n}"
            )));
        }
        if p >= MAX_CHARACTERISTIC || (p as u128).pow(n as u32) >= MAX_ORDER {
            return Err(Error::FieldTooLarge(format!(
                "p^n must stay below 2^32 with p < 2^16, got p={p} n={n}"
            )));
        }
        let modulus = match modulus {
            Some(m) => {
                let mut m = m.to_vec();
                poly::trim(&mut m);
                match poly::degree(&m) {
                    Some(d) if d == n => {}
                    Some(d) => {
                        return Err(Error::DegreeMismatch {
                            expected: n,
                            got: d,
                        })
                    }
                    None => {
                        return Err(Error::DegreeMismatch {
                            expected: n,
                            got: 0,
                        })
                    }
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::Parse(format!(
                        "modulus coefficients must be reduced modulo {p}"
                    )));
                }
                if m[n] != 1 {
                    return Err(Error::Parse("modulus must be monic".to_string()));
                }
                if !poly::is_irreducible(&m, p) {
                    return Err(Error::Reducible(poly::modulus_string(&m), p));
                }
                m
            }
            None => poly::first_irreducible(p, n),
        };
        let q = p.pow(n as u32);
        Ok(Field(Arc::new(FieldCore { p, n, q, modulus })))
    }

    /// Reconstructs a field from its serialized description.
    pub fn from_description(d: &FieldDescription) -> Result<Field> {
        Field::new(d.p, d.n, Some(&d.modulus))
    }

    pub fn description(&self) -> FieldDescription {
        FieldDescription {
            p: self.0.p,
            n: self.0.n,
            modulus: self.0.modulus.clone(),
        }
    }

    /// Characteristic p.
    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    /// Extension degree n over F_p.
    pub fn degree(&self) -> usize {
        self.0.n
    }

    /// Field order p^n.
    pub fn order(&self) -> u64 {
        self.0.q
    }

    /// Modulus coefficients, constant term first, length n + 1.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    /// Human-readable modulus, e.g. `x^8 + x^4 + x^3 + x + 1`.
    pub fn modulus_string(&self) -> String {
        poly::modulus_string(&self.0.modulus)
    }

    /// Structural equality of field parameters (two handles to equal
    /// parameters are the same field).
    pub fn same_field(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.n == other.0.n && self.0.modulus == other.0.modulus)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            value: 0,
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_value(1).expect("1 < p^n")
    }

    /// Element from its canonical integer encoding.
    pub fn from_value(&self, value: u64) -> Result<FieldElement> {
        if value >= self.0.q {
            return Err(Error::ValueOutOfRange {
                value,
                order: self.0.q,
            });
        }
        Ok(FieldElement {
            field: self.clone(),
            value,
        })
    }

    /// Element from a coefficient vector (constant term first, at most n
    /// entries; coefficients are reduced modulo p).
    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.0.n {
            return Err(Error::DegreeMismatch {
                expected: self.0.n,
                got: coeffs.len(),
            });
        }
        let mut buf = [0u64; MAX_EXTENSION_DEGREE];
        for (i, &c) in coeffs.iter().enumerate() {
            buf[i] = c % self.0.p;
        }
        Ok(FieldElement {
            field: self.clone(),
            value: self.compose(&buf),
        })
    }

    /// The prime-subfield element c * 1.
    pub fn scalar(&self, c: u64) -> FieldElement {
        FieldElement {
            field: self.clone(),
            value: c % self.0.p,
        }
    }

    /// All field elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.q).map(move |v| FieldElement {
            field: self.clone(),
            value: v,
        })
    }

    pub(crate) fn decompose(&self, value: u64) -> CoeffBuf {
        let mut buf = [0u64; MAX_EXTENSION_DEGREE];
        let mut v = value;
        for c in buf.iter_mut().take(self.0.n) {
            *c = v % self.0.p;
            v /= self.0.p;
        }
        buf
    }

    pub(crate) fn compose(&self, coeffs: &CoeffBuf) -> u64 {
        let mut v = 0u64;
        for i in (0..self.0.n).rev() {
            v = v * self.0.p + coeffs[i];
        }
        v
    }

    pub(crate) fn add_values(&self, a: u64, b: u64) -> u64 {
        if self.0.p == 2 {
            return a ^ b;
        }
        let ca = self.decompose(a);
        let cb = self.decompose(b);
        let mut out = [0u64; MAX_EXTENSION_DEGREE];
        for i in 0..self.0.n {
            out[i] = (ca[i] + cb[i]) % self.0.p;
        }
        self.compose(&out)
    }

    pub(crate) fn neg_value(&self, a: u64) -> u64 {
        if self.0.p == 2 {
            return a;
        }
        let ca = self.decompose(a);
        let mut out = [0u64; MAX_EXTENSION_DEGREE];
        for i in 0..self.0.n {
            out[i] = (self.0.p - ca[i]) % self.0.p;
        }
        self.compose(&out)
    }

    pub(crate) fn sub_values(&self, a: u64, b: u64) -> u64 {
        self.add_values(a, self.neg_value(b))
    }

    pub(crate) fn mul_values(&self, a: u64, b: u64) -> u64 {
        let n = self.0.n;
        let p = self.0.p;
        let ca = self.decompose(a);
        let cb = self.decompose(b);
        let mut prod = [0u64; 2 * MAX_EXTENSION_DEGREE];
        for i in 0..n {
            if ca[i] == 0 {
                continue;
            }
            for j in 0..n {
                prod[i + j] += ca[i] * cb[j];
            }
        }
        for c in prod.iter_mut() {
            *c %= p;
        }
        // Reduce x^i for i >= n against the monic modulus.
        for i in (n..=2 * n - 2).rev() {
            let t = prod[i];
            if t == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..n {
                let m = self.0.modulus[j];
                if m != 0 {
                    prod[i - n + j] = (prod[i - n + j] + t * (p - m)) % p;
                }
            }
        }
        let mut out = [0u64; MAX_EXTENSION_DEGREE];
        out[..n].copy_from_slice(&prod[..n]);
        self.compose(&out)
    }

    pub(crate) fn pow_value(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_values(acc, base);
            }
            base = self.mul_values(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse extended by 0 -> 0, as a raw canonical value.
    pub(crate) fn inv_value(&self, a: u64) -> u64 {
        if a == 0 {
            return 0;
        }
        let buf = self.decompose(a);
        let coeffs: Vec<u64> = buf[..self.0.n].to_vec();
        let inv = poly::inv_mod(&coeffs, &self.0.modulus, self.0.p)
            .expect("nonzero elements of a field are units");
        let mut out = [0u64; MAX_EXTENSION_DEGREE];
        out[..inv.len()].copy_from_slice(&inv);
        self.compose(&out)
    }

    fn check_same(&self, other: &Field) -> Result<()> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GF({}^{}; {})",
            self.0.p,
            self.0.n,
            self.modulus_string()
        )
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other)
    }
}
impl Eq for Field {}

/// An element of a [`Field`]. Plain data: cloneable, sendable, no interior
/// mutability.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    value: u64,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Canonical integer encoding `sum c_i * p^i`.
    pub fn value(&self) -> u64 {
        self.value
    }

    /// Coefficient vector, constant term first, length n.
    pub fn coeffs(&self) -> Vec<u64> {
        self.field.decompose(self.value)[..self.field.0.n].to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_one(&self) -> bool {
        self.value == 1
    }

    pub fn try_add(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.field.check_same(&rhs.field)?;
        Ok(FieldElement {
            field: self.field.clone(),
            value: self.field.add_values(self.value, rhs.value),
        })
    }

    pub fn try_sub(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.field.check_same(&rhs.field)?;
        Ok(FieldElement {
            field: self.field.clone(),
            value: self.field.sub_values(self.value, rhs.value),
        })
    }

    pub fn try_mul(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.field.check_same(&rhs.field)?;
        Ok(FieldElement {
            field: self.field.clone(),
            value: self.field.mul_values(self.value, rhs.value),
        })
    }

    /// Multiplicative inverse extended by 0 -> 0 (total on the field).
    pub fn inv0(&self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            value: self.field.inv_value(self.value),
        }
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            value: self.field.pow_value(self.value, e),
        }
    }

    /// x^(p^k). The exponent is taken modulo n, so any k >= 0 is accepted.
    pub fn frobenius(&self, k: usize) -> FieldElement {
        let n = self.field.0.n;
        let k = k % n;
        let e = self.field.0.p.pow(k as u32);
        self.pow(e)
    }

    /// Absolute trace sum_{i<n} x^(p^i); lands in the prime subfield.
    pub fn trace(&self) -> FieldElement {
        let mut acc = self.field.zero();
        let mut y = self.clone();
        for _ in 0..self.field.0.n {
            acc = acc.try_add(&y).unwrap();
            y = y.pow(self.field.0.p);
        }
        debug_assert!(acc.value < self.field.0.p, "trace lies in F_p");
        acc
    }

    /// Trace as a scalar in 0..p.
    pub fn trace_scalar(&self) -> u64 {
        self.trace().value
    }

    /// Euler-criterion square test: for odd p, true iff x = y^2 has a
    /// solution; every element of a binary field is a square.
    pub fn is_square(&self) -> bool {
        if self.field.0.p == 2 || self.value == 0 {
            return true;
        }
        self.pow((self.field.0.q - 1) / 2).is_one()
    }

    /// Degrees k (divisors of n) of the subfields F_{p^k} containing x,
    /// i.e. { k | n : x^(p^k) = x }. Always contains n; the minimum is the
    /// degree of x over F_p.
    pub fn subfield_degrees(&self) -> BTreeSet<usize> {
        let n = self.field.0.n;
        (1..=n)
            .filter(|k| n.is_multiple_of(*k))
            .filter(|&k| k == n || self.frobenius(k) == *self)
            .collect()
    }

    /// True iff x lies in no proper subfield of GF(p^n). For n = 1 there are
    /// no proper subfields, so every element qualifies.
    pub fn generates_field(&self) -> bool {
        let n = self.field.0.n;
        (1..n)
            .filter(|k| n.is_multiple_of(*k))
            .all(|k| self.frobenius(k) != *self)
    }

    /// Hex rendering of the canonical value for binary fields.
    pub fn hex(&self) -> Option<String> {
        if self.field.0.p == 2 {
            let width = self.field.0.n.div_ceil(4);
            Some(format!("0x{:0width$X}", self.value, width = width))
        } else {
            None
        }
    }

    /// JSON-facing record: canonical integer, plus hex for p = 2.
    pub fn record(&self) -> ElementRecord {
        ElementRecord {
            value: self.value,
            hex: self.hex(),
        }
    }
}

/// Serialized element: `{ "value": 200, "hex": "0xC8" }` (hex only for p = 2).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementRecord {
    pub value: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hex: Option<String>,
}

impl Serialize for FieldElement {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.record().serialize(serializer)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.hex() {
            Some(h) => write!(f, "{h}"),
            None => write!(f, "{}", self.value),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_field(&other.field) && self.value == other.value
    }
}
impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.0.p.hash(state);
        self.field.0.n.hash(state);
        self.value.hash(state);
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (
            self.field.0.p,
            self.field.0.n,
            &self.field.0.modulus,
            self.value,
        )
            .cmp(&(
                other.field.0.p,
                other.field.0.n,
                &other.field.0.modulus,
                other.value,
            ))
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $delegate:ident) => {
        impl std::ops::$trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$delegate(&rhs).expect("field mismatch")
            }
        }
        impl std::ops::$trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$delegate(rhs).expect("field mismatch")
            }
        }
        impl std::ops::$trait<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$delegate(&rhs).expect("field mismatch")
            }
        }
        impl std::ops::$trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$delegate(rhs).expect("field mismatch")
            }
        }
    };
}

impl_binop!(Add, add, try_add);
impl_binop!(Sub, sub, try_sub);
impl_binop!(Mul, mul, try_mul);

impl std::ops::Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            value: self.field.neg_value(self.value),
            field: self.field,
        }
    }
}

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            value: self.field.neg_value(self.value),
        }
    }
}


#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn test_field() -> Field {
        Field::new(3, 2, None).unwrap()
    }

    proptest! {
        #[test]
        fn ring_axioms(a in 0u64..9, b in 0u64..9, c in 0u64..9) {
            let f = test_field();
            let (a, b, c) = (
                f.from_value(a).unwrap(),
                f.from_value(b).unwrap(),
                f.from_value(c).unwrap(),
            );
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            prop_assert_eq!(&a + (-&a), f.zero());
        }

        #[test]
        fn inverse_and_encoding(v in 0u64..256) {
            let f = Field::new(2, 8, Some(&[1, 1, 0, 1, 1, 0, 0, 0, 1])).unwrap();
            let x = f.from_value(v).unwrap();
            prop_assert_eq!(x.inv0().inv0(), x.clone());
            let back = f.element(&x.coeffs()).unwrap();
            prop_assert_eq!(back, x);
        }
    }
}
