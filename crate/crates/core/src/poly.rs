//! Dense univariate polynomials over a [`Field`], with irreducibility testing
//! and complete factorization (square-free, distinct-degree, equal-degree).
//!
//! Coefficients are field codes, low degree first, with no trailing zeros.
//! Every operation takes the field explicitly.

use std::fmt;

use rand::Rng;

use crate::field::Field;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct UniPoly {
    coeffs: Vec<u32>,
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly{:?}", self.coeffs)
    }
}

impl UniPoly {
    pub fn from_coeffs(mut coeffs: Vec<u32>) -> UniPoly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> UniPoly {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> UniPoly {
        UniPoly { coeffs: vec![1] }
    }

    pub fn constant(c: u32) -> UniPoly {
        UniPoly::from_coeffs(vec![c])
    }

    pub fn x() -> UniPoly {
        UniPoly { coeffs: vec![0, 1] }
    }

    /// `c x^d`
    pub fn monomial(c: u32, d: usize) -> UniPoly {
        let mut coeffs = vec![0; d + 1];
        coeffs[d] = c;
        UniPoly::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, f: &Field, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::from_coeffs(
            (0..n)
                .map(|i| f.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, f: &Field, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::from_coeffs(
            (0..n)
                .map(|i| f.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn scale(&self, f: &Field, c: u32) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, f: &Field, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.mul_add(a, b, out[i + j]);
            }
        }
        UniPoly::from_coeffs(out)
    }

    /// Quotient and remainder. Panics on division by the zero polynomial.
    pub fn divrem(&self, f: &Field, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let Some(sd) = self.degree() else {
            return (UniPoly::zero(), UniPoly::zero());
        };
        if sd < dd {
            return (UniPoly::zero(), self.clone());
        }
        let inv_lead = f.inv(divisor.lead()).expect("nonzero lead");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0; sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = f.mul(rem[k + dd], inv_lead);
            if c == 0 {
                continue;
            }
            quot[k] = c;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = f.sub(rem[k + j], f.mul(c, b));
            }
        }
        rem.truncate(dd);
        (UniPoly::from_coeffs(quot), UniPoly::from_coeffs(rem))
    }

    pub fn rem(&self, f: &Field, divisor: &UniPoly) -> UniPoly {
        self.divrem(f, divisor).1
    }

    pub fn monic(&self, f: &Field) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let inv = f.inv(self.lead()).expect("nonzero lead");
        self.scale(f, inv)
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, f: &Field, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(f, &b);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn derivative(&self, f: &Field) -> UniPoly {
        UniPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
                .collect(),
        )
    }

    pub fn eval(&self, f: &Field, x: u32) -> u32 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.mul_add(acc, x, c))
    }

    pub fn mulmod(&self, f: &Field, other: &UniPoly, modulus: &UniPoly) -> UniPoly {
        self.mul(f, other).rem(f, modulus)
    }

    pub fn powmod(&self, f: &Field, mut e: u64, modulus: &UniPoly) -> UniPoly {
        let mut base = self.rem(f, modulus);
        let mut acc = UniPoly::one().rem(f, modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(f, &base, modulus);
            }
            base = base.mulmod(f, &base, modulus);
            e >>= 1;
        }
        acc
    }

    /// Rabin's test over the given field.
    pub fn is_irreducible(&self, f: &Field) -> bool {
        let Some(n) = self.degree() else {
            return false;
        };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let g = self.monic(f);
        let q = f.order() as u64;
        let x = UniPoly::x();
        // xq[i] = x^{q^i} mod g
        let mut xq = vec![x.rem(f, &g)];
        for i in 1..=n {
            let next = xq[i - 1].powmod(f, q, &g);
            xq.push(next);
        }
        if xq[n] != x.rem(f, &g) {
            return false;
        }
        prime_divisors(n).into_iter().all(|r| {
            let h = xq[n / r].sub(f, &x);
            h.gcd(f, &g).is_one()
        })
    }

    /// Square-free decomposition of a nonzero polynomial: pairs
    /// `(square-free monic factor, multiplicity)`.
    pub fn squarefree(&self, f: &Field) -> Vec<(UniPoly, usize)> {
        let mut out = Vec::new();
        squarefree_into(&self.monic(f), f, 1, &mut out);
        out
    }

    /// Complete factorization into monic irreducibles with multiplicities,
    /// sorted by (degree, coefficients).
    pub fn factor<R: Rng + ?Sized>(&self, f: &Field, rng: &mut R) -> Vec<(UniPoly, usize)> {
        assert!(!self.is_zero(), "factor of zero polynomial");
        let mut out: Vec<(UniPoly, usize)> = Vec::new();
        for (part, mult) in self.squarefree(f) {
            for (d, block) in distinct_degree(&part, f) {
                for irr in equal_degree(&block, d, f, rng) {
                    match out.iter_mut().find(|(g, _)| *g == irr) {
                        Some(entry) => entry.1 += mult,
                        None => out.push((irr, mult)),
                    }
                }
            }
        }
        out.sort_by(|a, b| (a.0.degree(), &a.0.coeffs).cmp(&(b.0.degree(), &b.0.coeffs)));
        out
    }

    /// Distinct roots in the given field, ascending by code.
    pub fn roots<R: Rng + ?Sized>(&self, f: &Field, rng: &mut R) -> Vec<u32> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let g = self.monic(f);
        let xq = UniPoly::x().powmod(f, f.order() as u64, &g);
        let linear = xq.sub(f, &UniPoly::x()).gcd(f, &g);
        if linear.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let mut roots: Vec<u32> = equal_degree(&linear, 1, f, rng)
            .into_iter()
            .map(|l| f.neg(l.coeff(0)))
            .collect();
        roots.sort();
        roots
    }
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
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

fn squarefree_into(g: &UniPoly, f: &Field, scale: usize, out: &mut Vec<(UniPoly, usize)>) {
    if g.degree().unwrap_or(0) == 0 {
        return;
    }
    let p = f.characteristic() as usize;
    let mut c = g.gcd(f, &g.derivative(f));
    let mut w = g.divrem(f, &c).0;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(f, &c);
        let fac = w.divrem(f, &y).0;
        if !fac.is_one() {
            out.push((fac.monic(f), i * scale));
        }
        w = y;
        c = c.divrem(f, &w).0;
        i += 1;
    }
    if !c.is_one() {
        // c is a p-th power
        let root =
            UniPoly::from_coeffs(c.coeffs.iter().step_by(p).map(|&a| f.pth_root(a)).collect());
        squarefree_into(&root, f, scale * p, out);
    }
}

/// Splits a square-free monic polynomial into products of irreducibles of
/// equal degree.
fn distinct_degree(g: &UniPoly, f: &Field) -> Vec<(usize, UniPoly)> {
    let q = f.order() as u64;
    let x = UniPoly::x();
    let mut out = Vec::new();
    let mut rest = g.clone();
    let mut xq = x.rem(f, &rest);
    let mut d = 0;
    while let Some(n) = rest.degree() {
        if n < 2 * (d + 1) {
            break;
        }
        d += 1;
        xq = xq.powmod(f, q, &rest);
        let h = rest.gcd(f, &xq.sub(f, &x));
        if !h.is_one() {
            rest = rest.divrem(f, &h).0;
            xq = xq.rem(f, &rest);
            out.push((d, h));
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        out.push((rest.degree().unwrap(), rest));
    }
    out
}

/// Cantor–Zassenhaus splitting of a product of distinct monic irreducibles
/// all of degree `d`.
fn equal_degree<R: Rng + ?Sized>(g: &UniPoly, d: usize, f: &Field, rng: &mut R) -> Vec<UniPoly> {
    let n = g.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    if n == d {
        return vec![g.monic(f)];
    }
    let q = f.order() as u64;
    let p = f.characteristic();
    loop {
        let h = UniPoly::from_coeffs((0..n).map(|_| f.random(rng)).collect());
        if h.degree().unwrap_or(0) == 0 {
            continue;
        }
        let candidate = if p == 2 {
            // absolute trace map to F_2
            let steps = f.degree() * d;
            let mut acc = h.rem(f, g);
            let mut t = acc.clone();
            for _ in 1..steps {
                t = t.mulmod(f, &t, g);
                acc = acc.add(f, &t);
            }
            acc
        } else {
            // h^{(q^d - 1)/2} = (h^{1 + q + ... + q^{d-1}})^{(q-1)/2}
            let mut t = h.rem(f, g);
            let mut norm = t.clone();
            for _ in 1..d {
                t = t.powmod(f, q, g);
                norm = norm.mulmod(f, &t, g);
            }
            norm.powmod(f, (q - 1) / 2, g).sub(f, &UniPoly::one())
        };
        let split = g.gcd(f, &candidate);
        let sd = split.degree().unwrap_or(0);
        if sd > 0 && sd < n {
            let other = g.divrem(f, &split).0;
            let mut out = equal_degree(&split, d, f, rng);
            out.extend(equal_degree(&other.monic(f), d, f, rng));
            return out;
        }
    }
}
