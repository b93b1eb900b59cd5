use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::liealg::LieAlgebra;

use super::EnvError;

/// Exponent vector of an ordered PBW monomial, one entry per basis element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Monomial {
        Monomial(vec![0; n])
    }

    pub fn generator(n: usize, i: usize) -> Monomial {
        let mut v = vec![0; n];
        v[i] = 1;
        Monomial(v)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Monomial {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    /// Index of the leftmost factor.
    pub fn first(&self) -> Option<usize> {
        self.0.iter().position(|&e| e != 0)
    }

    fn bumped(&self, i: usize, delta: i64) -> Monomial {
        let mut v = self.0.clone();
        v[i] = (v[i] as i64 + delta) as u32;
        Monomial(v)
    }
}

/// Graded lexicographic: total degree first, then exponents in basis order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

type Terms = BTreeMap<Monomial, u32>;

/// Element of `U(L)` in PBW normal form, truncated at total degree `cap`.
#[derive(Clone)]
pub struct PbwElement {
    alg: Arc<LieAlgebra>,
    cap: usize,
    terms: Terms,
}

impl PartialEq for PbwElement {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.alg, &other.alg) || *self.alg == *other.alg) && self.terms == other.terms
    }
}

impl Eq for PbwElement {}

impl PbwElement {
    pub fn zero(alg: &Arc<LieAlgebra>, cap: usize) -> PbwElement {
        PbwElement {
            alg: alg.clone(),
            cap,
            terms: Terms::new(),
        }
    }

    pub fn scalar(alg: &Arc<LieAlgebra>, cap: usize, c: u32) -> PbwElement {
        let mut e = PbwElement::zero(alg, cap);
        e.add_term(Monomial::one(alg.dim()), c);
        e
    }

    pub fn one(alg: &Arc<LieAlgebra>, cap: usize) -> PbwElement {
        PbwElement::scalar(alg, cap, 1)
    }

    pub fn generator(alg: &Arc<LieAlgebra>, cap: usize, i: usize) -> PbwElement {
        let mut e = PbwElement::zero(alg, cap);
        e.add_term(Monomial::generator(alg.dim(), i), 1);
        e
    }

    /// Degree-one element with the given Lie coordinates.
    pub fn from_lie(alg: &Arc<LieAlgebra>, cap: usize, coords: &[u32]) -> PbwElement {
        let mut e = PbwElement::zero(alg, cap);
        for (i, &c) in coords.iter().enumerate() {
            e.add_term(Monomial::generator(alg.dim(), i), c);
        }
        e
    }

    pub fn from_terms<I>(
        alg: &Arc<LieAlgebra>,
        cap: usize,
        terms: I,
    ) -> Result<PbwElement, EnvError>
    where
        I: IntoIterator<Item = (Monomial, u32)>,
    {
        let mut e = PbwElement::zero(alg, cap);
        for (m, c) in terms {
            if m.degree() > cap {
                return Err(EnvError::CapOverflow {
                    degree: m.degree(),
                    cap,
                });
            }
            e.add_term(m, c);
        }
        Ok(e)
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.alg
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, u32> {
        &self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    fn add_term(&mut self, m: Monomial, c: u32) {
        if c == 0 {
            return;
        }
        let f = self.alg.field();
        let slot = self.terms.entry(m);
        match slot {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = f.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_compatible(&self, other: &PbwElement) {
        assert!(
            Arc::ptr_eq(&self.alg, &other.alg) || *self.alg == *other.alg,
            "PBW elements over different algebras"
        );
    }

    pub fn add(&self, other: &PbwElement) -> PbwElement {
        self.check_compatible(other);
        let mut out = self.clone();
        out.cap = self.cap.max(other.cap);
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: u32) -> PbwElement {
        let f = self.alg.field();
        let mut out = PbwElement::zero(&self.alg, self.cap);
        for (m, &x) in &self.terms {
            out.add_term(m.clone(), f.mul(c, x));
        }
        out
    }

    pub fn neg(&self) -> PbwElement {
        self.scale(self.alg.field().neg(1))
    }

    pub fn sub(&self, other: &PbwElement) -> PbwElement {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PbwElement) -> Result<PbwElement, EnvError> {
        self.check_compatible(other);
        let cap = self.cap.max(other.cap);
        let mut st = Straightener::new(&self.alg, cap);
        let f = self.alg.field();
        let mut out = PbwElement::zero(&self.alg, cap);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let c = f.mul(ca, cb);
                for (m, x) in st.mono_mul(a, b)? {
                    out.add_term(m, f.mul(c, x));
                }
            }
        }
        Ok(out)
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &PbwElement) -> Result<PbwElement, EnvError> {
        Ok(self.mul(other)?.sub(&other.mul(self)?))
    }

    pub fn pow(&self, e: u64) -> Result<PbwElement, EnvError> {
        let mut acc = PbwElement::one(&self.alg, self.cap);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }
}

impl fmt::Debug for PbwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PbwElement {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        let field = self.alg.field();
        let mut parts = Vec::new();
        for (m, &c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.alg.name(i).to_string()),
                    _ => factors.push(format!("{}^{}", self.alg.name(i), e)),
                }
            }
            let mono = factors.join("*");
            parts.push(match (c, mono.is_empty()) {
                (_, true) => field.format(c),
                (1, false) => mono,
                _ => format!("({})*{}", field.format(c), mono),
            });
        }
        write!(out, "{}", parts.join(" + "))
    }
}

/// Memoized left multiplication by generators on normal monomials.
struct Straightener<'a> {
    alg: &'a LieAlgebra,
    cap: usize,
    memo: HashMap<(usize, Monomial), Vec<(Monomial, u32)>>,
}

impl<'a> Straightener<'a> {
    fn new(alg: &'a LieAlgebra, cap: usize) -> Straightener<'a> {
        Straightener {
            alg,
            cap,
            memo: HashMap::new(),
        }
    }

    /// Normal form of `e_j * m`.
    fn left_mul_gen(&mut self, j: usize, m: &Monomial) -> Result<Vec<(Monomial, u32)>, EnvError> {
        if m.degree() + 1 > self.cap {
            return Err(EnvError::CapOverflow {
                degree: m.degree() + 1,
                cap: self.cap,
            });
        }
        let i = match m.first() {
            Some(i) if i < j => i,
            _ => return Ok(vec![(m.bumped(j, 1), 1)]),
        };
        if let Some(hit) = self.memo.get(&(j, m.clone())) {
            return Ok(hit.clone());
        }
        // e_j e_i m' = e_i (e_j m') + [e_j, e_i] m'
        let f = self.alg.field().clone();
        let rest = m.bumped(i, -1);
        let mut acc: Terms = Terms::new();
        let push = |acc: &mut Terms, mono: Monomial, c: u32| {
            let e = acc.entry(mono).or_insert(0);
            *e = f.add(*e, c);
        };
        for (t, c) in self.left_mul_gen(j, &rest)? {
            for (u, d) in self.left_mul_gen(i, &t)? {
                push(&mut acc, u, f.mul(c, d));
            }
        }
        let bracket = self.alg.basis_bracket(j, i).to_vec();
        for (k, &c) in bracket.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (u, d) in self.left_mul_gen(k, &rest)? {
                push(&mut acc, u, f.mul(c, d));
            }
        }
        let out: Vec<(Monomial, u32)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        self.memo.insert((j, m.clone()), out.clone());
        Ok(out)
    }

    /// Normal form of `a * b`.
    fn mono_mul(&mut self, a: &Monomial, b: &Monomial) -> Result<Vec<(Monomial, u32)>, EnvError> {
        if a.degree() + b.degree() > self.cap {
            return Err(EnvError::CapOverflow {
                degree: a.degree() + b.degree(),
                cap: self.cap,
            });
        }
        let f = self.alg.field().clone();
        let mut current: Terms = Terms::new();
        current.insert(b.clone(), 1);
        // apply the factors of `a` from the right
        for (g, &e) in a.exponents().iter().enumerate().rev() {
            for _ in 0..e {
                let mut next = Terms::new();
                for (m, c) in &current {
                    for (u, d) in self.left_mul_gen(g, m)? {
                        let slot = next.entry(u).or_insert(0);
                        *slot = f.mul_add(*c, d, *slot);
                    }
                }
                next.retain(|_, c| *c != 0);
                current = next;
            }
        }
        Ok(current.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::liealg::{family_build, heisenberg, FamilyMember};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn l23() -> Arc<LieAlgebra> {
        Arc::new(family_build(2, 1, 3, FamilyMember::L).unwrap())
    }

    fn random_element(
        alg: &Arc<LieAlgebra>,
        cap: usize,
        max_deg: u32,
        rng: &mut ChaCha8Rng,
    ) -> PbwElement {
        let n = alg.dim();
        let terms: Vec<(Monomial, u32)> = (0..3)
            .map(|_| {
                let mut exps = vec![0; n];
                for _ in 0..rng.gen_range(0..=max_deg) {
                    exps[rng.gen_range(0..n)] += 1;
                }
                (Monomial::from_exponents(exps), alg.field().random(rng))
            })
            .collect();
        PbwElement::from_terms(alg, cap, terms).unwrap()
    }

    #[test]
    fn graded_lex_order() {
        let a = Monomial::from_exponents(vec![0, 2]);
        let b = Monomial::from_exponents(vec![1, 0]);
        let c = Monomial::from_exponents(vec![1, 1]);
        assert!(b < a && a < c);
        assert!(Monomial::from_exponents(vec![0, 1]) < b);
    }

    #[test]
    fn straightening_examples() {
        let l = l23();
        let x1 = PbwElement::generator(&l, 4, 0);
        let x2 = PbwElement::generator(&l, 4, 1);
        let d = PbwElement::generator(&l, 4, 4);
        let prod = d.mul(&x1).unwrap();
        let x1d = x1.mul(&d).unwrap();
        assert_eq!(prod, x1d.add(&x1));
        assert_eq!(prod.to_string(), "x1*D + x1");
        let d2 = d.mul(&d).unwrap();
        assert!(d2.commutator(&x2).unwrap().is_zero());
        let u = random_element(&l, 4, 3, &mut ChaCha8Rng::seed_from_u64(0));
        assert_eq!(PbwElement::one(&l, 4).mul(&u).unwrap(), u);
        assert_eq!(u.mul(&PbwElement::one(&l, 4)).unwrap(), u);
    }

    #[test]
    fn degree_one_commutators_are_brackets() {
        for (p, which) in [
            (2, FamilyMember::L),
            (3, FamilyMember::Lprime),
            (5, FamilyMember::AD),
        ] {
            let alg = Arc::new(family_build(p, 1, 4, which).unwrap());
            for i in 0..alg.dim() {
                for j in 0..alg.dim() {
                    let a = PbwElement::generator(&alg, 2, i);
                    let b = PbwElement::generator(&alg, 2, j);
                    let expect = PbwElement::from_lie(&alg, 2, alg.basis_bracket(i, j));
                    assert_eq!(a.commutator(&b).unwrap(), expect);
                }
            }
        }
    }

    #[test]
    fn cap_overflow_is_an_error() {
        let l = l23();
        let d = PbwElement::generator(&l, 2, 4);
        let d2 = d.mul(&d).unwrap();
        assert_eq!(d2.mul(&d), Err(EnvError::CapOverflow { degree: 3, cap: 2 }));
    }

    #[test]
    fn associativity_and_bilinearity() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let h = Arc::new(heisenberg(&Field::prime(3).unwrap()));
        let l = Arc::new(family_build(3, 1, 3, FamilyMember::L).unwrap());
        for alg in [h, l] {
            for _ in 0..40 {
                let a = random_element(&alg, 9, 3, &mut rng);
                let b = random_element(&alg, 9, 3, &mut rng);
                let c = random_element(&alg, 9, 3, &mut rng);
                let left = a.mul(&b).unwrap().mul(&c).unwrap();
                let right = a.mul(&b.mul(&c).unwrap()).unwrap();
                assert_eq!(left, right);
                let sum = a.mul(&b.add(&c)).unwrap();
                assert_eq!(sum, a.mul(&b).unwrap().add(&a.mul(&c).unwrap()));
            }
        }
    }
}
