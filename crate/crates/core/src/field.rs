//! Finite fields `F_p` and `F_{p^m}`.
//!
//! A [`Field`] is a cheap, clonable descriptor. Elements are stored as `u32`
//! codes: the polynomial `c_0 + c_1 t + ... + c_{m-1} t^{m-1}` is encoded as
//! `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`. Matrices and other containers keep a
//! single `Field` next to a buffer of codes; [`FieldElement`] pairs one code
//! with its field for the public, self-describing API.
//!
//! Extension moduli default to the least monic irreducible polynomial of the
//! requested degree, where candidates are ordered by the integer code of
//! their lower coefficients. `F_4` is `t^2 + t + 1`, `F_8` is `t^3 + t + 1`,
//! `F_16` is `t^4 + t + 1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::poly::UniPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("modulus must be monic of degree {expected}")]
    BadModulus { expected: usize },
    #[error("modulus is reducible over F_{0}")]
    Reducible(u32),
    #[error("field of order {p}^{m} is too large")]
    TooLarge { p: u64, m: usize },
    #[error("division by zero")]
    DivByZero,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("no embedding of F_{p}^{from} into F_{p}^{to}")]
    NoEmbedding { p: u32, from: usize, to: usize },
    #[error("cannot parse field element {0:?}")]
    Parse(String),
}

/// Largest field order for which log/exp tables are built.
const TABLE_LIMIT: u32 = 1 << 16;

struct Tables {
    log: Vec<u32>,
    exp: Vec<u32>,
}

struct Inner {
    p: u32,
    m: usize,
    /// Monic modulus, low to high, length `m + 1`; empty for prime fields.
    modulus: Vec<u32>,
    order: u32,
    /// `p^i` for `i < m`.
    place: Vec<u32>,
    tables: Option<Tables>,
}

/// The finite field `F_{p^m}`.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.m == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{}", self.0.p, self.0.m)
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Field {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Field, FieldError> {
        Field::new(p, 1, None)
    }

    /// `F_{p^m}`, optionally with an explicit monic modulus (low-to-high,
    /// `m + 1` coefficients).
    pub fn new(p: u64, m: usize, modulus: Option<&[u32]>) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NonPrime(p));
        }
        if m == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let order = (p as u128)
            .checked_pow(m as u32)
            .filter(|&q| q <= u32::MAX as u128);
        let Some(order) = order else {
            return Err(FieldError::TooLarge { p, m });
        };
        let p32 = p as u32;
        let prime_field = Field::raw(p32, 1, Vec::new(), p32);
        if m == 1 {
            if let Some(md) = modulus {
                if !md.is_empty() && !(md.len() == 2 && md[1] == 1) {
                    return Err(FieldError::BadModulus { expected: 1 });
                }
            }
            return Ok(prime_field);
        }
        let modulus = match modulus {
            Some(md) => {
                if md.len() != m + 1 || md[m] != 1 || md.iter().any(|&c| c >= p32) {
                    return Err(FieldError::BadModulus { expected: m });
                }
                let f = UniPoly::from_coeffs(md.to_vec());
                if !f.is_irreducible(&prime_field) {
                    return Err(FieldError::Reducible(p32));
                }
                md.to_vec()
            }
            None => least_irreducible(&prime_field, m),
        };
        Ok(Field::raw(p32, m, modulus, order as u32))
    }

    fn raw(p: u32, m: usize, modulus: Vec<u32>, order: u32) -> Field {
        let place = (0..m).map(|i| p.pow(i as u32)).collect();
        let mut inner = Inner {
            p,
            m,
            modulus,
            order,
            place,
            tables: None,
        };
        if m > 1 && order <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        Field(Arc::new(inner))
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.m
    }

    pub fn order(&self) -> u32 {
        self.0.order
    }

    /// Full monic modulus, low to high; empty for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.m == 1
    }

    /// The prime subfield `F_p`.
    pub fn prime_subfield(&self) -> Field {
        if self.is_prime_field() {
            self.clone()
        } else {
            Field::raw(self.0.p, 1, Vec::new(), self.0.p)
        }
    }

    /// `F_{p^{m r}}` with its default modulus.
    pub fn extension(&self, r: usize) -> Result<Field, FieldError> {
        Field::new(self.0.p as u64, self.0.m * r, None)
    }

    #[inline]
    pub fn zero(&self) -> u32 {
        0
    }

    #[inline]
    pub fn one(&self) -> u32 {
        1
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.0.p as i64) as u32
    }

    /// All element codes, `0..q`.
    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.0.order
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.0.order)
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(1..self.0.order)
    }

    pub fn digits(&self, a: u32) -> Vec<u32> {
        let p = self.0.p;
        let mut a = a;
        (0..self.0.m)
            .map(|_| {
                let d = a % p;
                a /= p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> u32 {
        debug_assert!(digits.len() <= self.0.m);
        digits
            .iter()
            .zip(&self.0.place)
            .map(|(&d, &w)| (d % self.0.p) * w)
            .sum()
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let inner = &*self.0;
        if inner.m == 1 {
            let s = a as u64 + b as u64;
            (if s >= inner.p as u64 {
                s - inner.p as u64
            } else {
                s
            }) as u32
        } else if inner.p == 2 {
            a ^ b
        } else {
            let p = inner.p;
            let (mut a, mut b) = (a, b);
            let mut out = 0;
            for &w in &inner.place {
                let s = a % p + b % p;
                out += (if s >= p { s - p } else { s }) * w;
                a /= p;
                b /= p;
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let inner = &*self.0;
        if inner.m == 1 {
            if a == 0 {
                0
            } else {
                inner.p - a
            }
        } else if inner.p == 2 {
            a
        } else {
            let p = inner.p;
            let mut a = a;
            let mut out = 0;
            for &w in &inner.place {
                let d = a % p;
                out += (if d == 0 { 0 } else { p - d }) * w;
                a /= p;
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let inner = &*self.0;
        if inner.m == 1 {
            return ((a as u64 * b as u64) % inner.p as u64) as u32;
        }
        if let Some(t) = &inner.tables {
            let n = inner.order - 1;
            let s = t.log[a as usize] + t.log[b as usize];
            return t.exp[(if s >= n { s - n } else { s }) as usize];
        }
        poly_mul_mod(inner, a, b)
    }

    /// `a * b + c`.
    #[inline]
    pub fn mul_add(&self, a: u32, b: u32, c: u32) -> u32 {
        self.add(self.mul(a, b), c)
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> Result<u32, FieldError> {
        if a == 0 {
            return Err(FieldError::DivByZero);
        }
        if let Some(t) = &self.0.tables {
            let n = self.0.order - 1;
            let l = t.log[a as usize];
            return Ok(t.exp[((n - l) % n) as usize]);
        }
        Ok(self.pow(a, self.0.order as u64 - 2))
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^p`.
    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.0.p as u64)
    }

    /// The unique `b` with `b^p = a`.
    pub fn pth_root(&self, a: u32) -> u32 {
        if self.0.m == 1 {
            return a;
        }
        self.pow(a, (self.0.order / self.0.p) as u64)
    }

    pub fn element(&self, code: u32) -> FieldElement {
        assert!(code < self.0.order, "code {code} out of range for {self}");
        FieldElement {
            field: self.clone(),
            code,
        }
    }

    /// Element string: decimal residue for prime fields, comma-separated
    /// coefficients low-to-high for extensions.
    pub fn format(&self, a: u32) -> String {
        if self.0.m == 1 {
            a.to_string()
        } else {
            self.digits(a)
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }

    pub fn parse(&self, s: &str) -> Result<u32, FieldError> {
        let bad = || FieldError::Parse(s.to_string());
        let parts: Vec<&str> = s.trim().split(',').map(str::trim).collect();
        if parts.len() > self.0.m || parts.iter().any(|x| x.is_empty()) {
            return Err(bad());
        }
        let mut digits = Vec::with_capacity(parts.len());
        for part in parts {
            let v: i64 = part.parse().map_err(|_| bad())?;
            digits.push(self.from_int(v));
        }
        Ok(self.from_digits(&digits))
    }

    /// Embedding of `self` into `target`, sending the generator `t` to the
    /// least root (by code) of this field's modulus in `target`.
    pub fn embedding_into(&self, target: &Field) -> Result<Embedding, FieldError> {
        let (m, n) = (self.0.m, target.0.m);
        if self.0.p != target.0.p || n % m != 0 {
            return Err(FieldError::NoEmbedding {
                p: self.0.p,
                from: m,
                to: n,
            });
        }
        if self == target {
            let images = (0..m)
                .map(|i| target.from_digits(&unit_digits(i, m)))
                .collect();
            return Ok(Embedding {
                source: self.clone(),
                target: target.clone(),
                images,
            });
        }
        let generator = if m == 1 {
            1
        } else {
            let f = UniPoly::from_coeffs(self.0.modulus.clone());
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
            let roots = f.roots(target, &mut rng);
            *roots
                .iter()
                .min()
                .expect("irreducible modulus splits in an extension")
        };
        let mut images = Vec::with_capacity(m);
        let mut acc = 1;
        for _ in 0..m {
            images.push(acc);
            acc = target.mul(acc, generator);
        }
        Ok(Embedding {
            source: self.clone(),
            target: target.clone(),
            images,
        })
    }
}

fn unit_digits(i: usize, m: usize) -> Vec<u32> {
    let mut d = vec![0; m];
    d[i] = 1;
    d
}

fn poly_mul_mod(inner: &Inner, a: u32, b: u32) -> u32 {
    let p = inner.p as u64;
    let m = inner.m;
    let da = digits_of(inner, a);
    let db = digits_of(inner, b);
    let mut prod = vec![0u64; 2 * m - 1];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
        }
    }
    for deg in (m..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for i in 0..m {
            let sub = c * inner.modulus[i] as u64 % p;
            let idx = deg - m + i;
            prod[idx] = (prod[idx] + p - sub) % p;
        }
    }
    prod[..m]
        .iter()
        .zip(&inner.place)
        .map(|(&d, &w)| d as u32 * w)
        .sum()
}

fn digits_of(inner: &Inner, mut a: u32) -> Vec<u32> {
    (0..inner.m)
        .map(|_| {
            let d = a % inner.p;
            a /= inner.p;
            d
        })
        .collect()
}

fn build_tables(inner: &Inner) -> Tables {
    let q = inner.order;
    let n = (q - 1) as u64;
    let factors = prime_factors(n);
    let pow_slow = |a: u32, mut e: u64| {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_mul_mod(inner, acc, base);
            }
            base = poly_mul_mod(inner, base, base);
            e >>= 1;
        }
        acc
    };
    let g = (2..q)
        .find(|&g| factors.iter().all(|&r| pow_slow(g, n / r) != 1))
        .expect("multiplicative group is cyclic");
    let mut exp = vec![0u32; q as usize - 1];
    let mut log = vec![0u32; q as usize];
    let mut acc = 1u32;
    for (i, slot) in exp.iter_mut().enumerate() {
        *slot = acc;
        log[acc as usize] = i as u32;
        acc = poly_mul_mod(inner, acc, g);
    }
    Tables { log, exp }
}

/// Least monic irreducible of degree `m` over `prime`, ordering candidates by
/// the code of their lower coefficients.
fn least_irreducible(prime: &Field, m: usize) -> Vec<u32> {
    let p = prime.characteristic() as u64;
    let count = p.pow(m as u32);
    for code in 0..count {
        let mut coeffs = Vec::with_capacity(m + 1);
        let mut c = code;
        for _ in 0..m {
            coeffs.push((c % p) as u32);
            c /= p;
        }
        if coeffs[0] == 0 {
            continue;
        }
        coeffs.push(1);
        let f = UniPoly::from_coeffs(coeffs.clone());
        if f.is_irreducible(prime) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Ring embedding `F_{p^m} -> F_{p^{mr}}`.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Field,
    target: Field,
    /// Images of `1, t, ..., t^{m-1}`.
    images: Vec<u32>,
}

impl Embedding {
    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn map(&self, a: u32) -> u32 {
        let t = &self.target;
        self.source
            .digits(a)
            .iter()
            .zip(&self.images)
            .fold(0, |acc, (&d, &img)| t.add(acc, t.mul(d, img)))
    }

    pub fn map_element(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        if a.field != self.source {
            return Err(FieldError::FieldMismatch);
        }
        Ok(self.target.element(self.map(a.code)))
    }
}

/// A field element together with its field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    code: u32,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    fn same(&self, other: &FieldElement) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    fn with(&self, code: u32) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            code,
        }
    }

    pub fn try_add(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.same(other)?;
        Ok(self.with(self.field.add(self.code, other.code)))
    }

    pub fn try_sub(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.same(other)?;
        Ok(self.with(self.field.sub(self.code, other.code)))
    }

    pub fn try_mul(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.same(other)?;
        Ok(self.with(self.field.mul(self.code, other.code)))
    }

    pub fn try_div(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.same(other)?;
        Ok(self.with(self.field.div(self.code, other.code)?))
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        Ok(self.with(self.field.inv(self.code)?))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.with(self.field.pow(self.code, e))
    }

    pub fn frobenius(&self) -> FieldElement {
        self.with(self.field.frobenius(self.code))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.field.format(self.code), self.field)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(self.code))
    }
}

// Operator forms panic on mixed fields; use the `try_*` methods to get an error.
impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.try_add(rhs).expect("field mismatch")
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.try_sub(rhs).expect("field mismatch")
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.try_mul(rhs).expect("field mismatch")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.with(self.field.neg(self.code))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_fields() -> Vec<Field> {
        vec![
            Field::prime(2).unwrap(),
            Field::prime(3).unwrap(),
            Field::new(2, 2, None).unwrap(),
            Field::prime(5).unwrap(),
            Field::prime(7).unwrap(),
            Field::new(2, 3, None).unwrap(),
            Field::new(3, 2, None).unwrap(),
            Field::prime(11).unwrap(),
            Field::prime(13).unwrap(),
            Field::new(2, 4, None).unwrap(),
        ]
    }

    /// Brute force: a quadratic is irreducible iff it has no root.
    fn quadratic_has_root(p: u32, c0: u32, c1: u32) -> bool {
        (0..p).any(|x| (x * x + c1 * x + c0).is_multiple_of(p))
    }

    #[test]
    fn prime_field_and_composite() {
        let f2 = Field::new(2, 1, None).unwrap();
        assert_eq!(f2.order(), 2);
        assert!(f2.modulus().is_empty());
        assert_eq!(Field::new(4, 1, None), Err(FieldError::NonPrime(4)));
        assert_eq!(Field::new(2, 0, None), Err(FieldError::ZeroDegree));
    }

    #[test]
    fn f4_default_modulus_is_least_irreducible_quadratic() {
        let irreducible: Vec<(u32, u32)> = (0..4)
            .map(|code| (code % 2, code / 2))
            .filter(|&(c0, c1)| !quadratic_has_root(2, c0, c1))
            .collect();
        assert_eq!(irreducible, vec![(1, 1)]);
        let f4 = Field::new(2, 2, None).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
    }

    #[test]
    fn default_moduli_are_least_irreducible() {
        assert_eq!(Field::new(2, 3, None).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(Field::new(2, 4, None).unwrap().modulus(), &[1, 1, 0, 0, 1]);
        // Over F_3 the least irreducible quadratic has no root: t^2 + 1.
        let first = (0..9u32)
            .map(|c| (c % 3, c / 3))
            .find(|&(c0, c1)| c0 != 0 && !quadratic_has_root(3, c0, c1))
            .unwrap();
        assert_eq!(
            Field::new(3, 2, None).unwrap().modulus(),
            &[first.0, first.1, 1]
        );
    }

    #[test]
    fn reducible_modulus_rejected() {
        // t^2 + 1 = (t + 1)^2 over F_2
        assert_eq!(
            Field::new(2, 2, Some(&[1, 0, 1])),
            Err(FieldError::Reducible(2))
        );
        assert!(matches!(
            Field::new(2, 2, Some(&[1, 1])),
            Err(FieldError::BadModulus { expected: 2 })
        ));
    }

    #[test]
    fn arithmetic_examples() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.add(3, 4), 2);
        let f4 = Field::new(2, 2, None).unwrap();
        let t = f4.from_digits(&[0, 1]);
        assert_eq!(f4.digits(f4.mul(t, t)), vec![1, 1]);
        assert_eq!(f5.inv(0), Err(FieldError::DivByZero));
        assert_eq!(f5.div(1, 0), Err(FieldError::DivByZero));
    }

    #[test]
    fn frobenius_squared_is_identity_on_f9() {
        let f9 = Field::new(3, 2, None).unwrap();
        for a in f9.elements() {
            assert_eq!(f9.frobenius(f9.frobenius(a)), a);
        }
        assert!(f9.elements().any(|a| f9.frobenius(a) != a));
    }

    #[test]
    fn field_axioms_exhaustive_up_to_16() {
        for f in small_fields() {
            assert!(f.order() <= 16);
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0, "{f}");
                assert_eq!(f.pow(a, f.order() as u64), a, "{f}: a^q = a");
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "{f}");
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn table_and_schoolbook_multiplication_agree() {
        let f = Field::new(3, 3, None).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.mul(a, b), poly_mul_mod(&f.0, a, b));
            }
        }
    }

    #[test]
    fn large_extension_without_tables() {
        let f = Field::new(7, 8, None).unwrap();
        assert!(f.0.tables.is_none());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let a = f.random_nonzero(&mut rng);
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            assert_eq!(f.pow(a, f.order() as u64), a);
        }
    }

    #[test]
    fn embeddings() {
        let f2 = Field::prime(2).unwrap();
        let f4 = Field::new(2, 2, None).unwrap();
        let f8 = Field::new(2, 3, None).unwrap();
        let f16 = Field::new(2, 4, None).unwrap();
        assert_eq!(f2.embedding_into(&f4).unwrap().map(1), 1);
        assert!(matches!(
            f4.embedding_into(&f8),
            Err(FieldError::NoEmbedding { from: 2, to: 3, .. })
        ));
        let e = f4.embedding_into(&f16).unwrap();
        assert_eq!(e.map(1), 1);
        let mut images = Vec::new();
        for a in f4.elements() {
            images.push(e.map(a));
            for b in f4.elements() {
                assert_eq!(e.map(f4.mul(a, b)), f16.mul(e.map(a), e.map(b)));
                assert_eq!(e.map(f4.add(a, b)), f16.add(e.map(a), e.map(b)));
            }
        }
        images.sort();
        images.dedup();
        assert_eq!(images.len(), 4, "injective");
    }

    #[test]
    fn element_strings() {
        let f8 = Field::new(2, 3, None).unwrap();
        let a = f8.parse("1,0,1").unwrap();
        assert_eq!(f8.digits(a), vec![1, 0, 1]);
        assert_eq!(f8.format(a), "1,0,1");
        assert_eq!(f8.parse("1").unwrap(), 1);
        assert!(f8.parse("1,0,1,1").is_err());
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.parse("-1").unwrap(), 6);
        assert_eq!(f7.format(3), "3");
        assert!(f7.parse("x").is_err());
    }

    #[test]
    fn mixed_fields_detected() {
        let a = Field::prime(3).unwrap().element(1);
        let b = Field::prime(5).unwrap().element(1);
        assert_eq!(a.try_add(&b), Err(FieldError::FieldMismatch));
        let c = Field::prime(3).unwrap().element(2);
        assert_eq!((&a + &c).code(), 0);
    }
}
