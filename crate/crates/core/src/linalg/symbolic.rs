use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Matrix;
use crate::field::{Embedding, Field};

/// Sparse multivariate polynomial; terms keyed by exponent vector, lex order
/// with `t_1` most significant.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MPoly {
    terms: BTreeMap<Vec<u16>, u32>,
}

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly::default()
    }

    pub fn constant(nvars: usize, c: u32) -> MPoly {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(vec![0; nvars], c);
        }
        MPoly { terms }
    }

    /// `c_0 + c_1 t_1 + ... + c_n t_n`
    pub fn linear(coeffs: &[u32]) -> MPoly {
        let nvars = coeffs.len() - 1;
        let mut terms = BTreeMap::new();
        for (i, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mut e = vec![0u16; nvars];
            if i > 0 {
                e[i - 1] = 1;
            }
            terms.insert(e, c);
        }
        MPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum())
            .max()
            .unwrap_or(0)
    }

    fn add_term(&mut self, f: &Field, e: Vec<u16>, c: u32) {
        if c == 0 {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                let s = f.add(*slot.get(), c);
                if s == 0 {
                    slot.remove();
                } else {
                    *slot.get_mut() = s;
                }
            }
        }
    }

    pub fn sub(&self, f: &Field, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(f, e.clone(), f.neg(c));
        }
        out
    }

    pub fn mul(&self, f: &Field, other: &MPoly) -> MPoly {
        let mut acc: BTreeMap<Vec<u16>, u32> = BTreeMap::new();
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let e: Vec<u16> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let slot = acc.entry(e).or_insert(0);
                *slot = f.mul_add(ca, cb, *slot);
            }
        }
        acc.retain(|_, c| *c != 0);
        MPoly { terms: acc }
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder.
    pub fn exact_div(&self, f: &Field, divisor: &MPoly) -> Option<MPoly> {
        let (lead_e, &lead_c) = divisor.terms.iter().next_back()?;
        let inv = f.inv(lead_c).ok()?;
        let mut rem = self.clone();
        let mut quot = MPoly::zero();
        while let Some((e, &c)) = rem.terms.iter().next_back() {
            if e.iter().zip(lead_e).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Vec<u16> = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            let qc = f.mul(c, inv);
            let term = MPoly {
                terms: BTreeMap::from([(qe.clone(), qc)]),
            };
            rem = rem.sub(f, &term.mul(f, divisor));
            quot.add_term(f, qe, qc);
        }
        Some(quot)
    }

    pub fn eval(&self, emb: &Embedding, point: &[u32]) -> u32 {
        let t = emb.target();
        self.terms.iter().fold(0, |acc, (e, &c)| {
            let mono = e
                .iter()
                .zip(point)
                .fold(emb.map(c), |m, (&k, &x)| t.mul(m, t.pow(x, k as u64)));
            t.add(acc, mono)
        })
    }
}

/// Matrix whose entries are affine-linear forms in `t_1..t_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearPolyMatrix {
    field: Field,
    nvars: usize,
    rows: usize,
    cols: usize,
    /// Row-major; each entry is `[c_0, c_1, ..., c_n]`.
    entries: Vec<Vec<u32>>,
}

impl LinearPolyMatrix {
    pub fn zeros(field: &Field, nvars: usize, rows: usize, cols: usize) -> LinearPolyMatrix {
        LinearPolyMatrix {
            field: field.clone(),
            nvars,
            rows,
            cols,
            entries: vec![vec![0; nvars + 1]; rows * cols],
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> &[u32] {
        &self.entries[r * self.cols + c]
    }

    pub fn set_entry(&mut self, r: usize, c: usize, coeffs: Vec<u32>) {
        assert_eq!(coeffs.len(), self.nvars + 1);
        self.entries[r * self.cols + c] = coeffs;
    }

    /// Coefficient of `t_var` (1-based; 0 is the constant) at `(r, c)`.
    pub fn set_coeff(&mut self, r: usize, c: usize, var: usize, value: u32) {
        self.entries[r * self.cols + c][var] = value;
    }

    pub fn is_skew(&self) -> bool {
        let f = &self.field;
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let a = self.entry(i, j);
                    let b = self.entry(j, i);
                    a.iter().zip(b).all(|(&x, &y)| f.add(x, y) == 0)
                        && (i != j || a.iter().all(|&x| x == 0))
                })
            })
    }

    /// Substitutes `t_i = point[i]`, where the point lives in the target of
    /// `emb`.
    pub fn evaluate(&self, emb: &Embedding, point: &[u32]) -> Matrix {
        assert_eq!(point.len(), self.nvars);
        let t = emb.target();
        let data = self
            .entries
            .iter()
            .map(|coeffs| {
                point
                    .iter()
                    .zip(&coeffs[1..])
                    .fold(emb.map(coeffs[0]), |acc, (&x, &c)| {
                        t.mul_add(emb.map(c), x, acc)
                    })
            })
            .collect();
        Matrix::from_flat(t, self.rows, self.cols, data)
    }
}

/// Rank over the rational function field `F(t_1..t_n)`, by fraction-free
/// (Bareiss) elimination with exact multivariate division. Pivots are taken
/// as the first nonzero entry of the remaining block in row-major order.
pub fn symbolic_rank(m: &LinearPolyMatrix) -> usize {
    let f = &m.field;
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<MPoly>> = (0..rows)
        .map(|r| (0..cols).map(|c| MPoly::linear(m.entry(r, c))).collect())
        .collect();
    let mut prev = MPoly::constant(m.nvars, 1);
    let mut rank = 0;
    for k in 0..rows.min(cols) {
        let pivot = (k..rows)
            .flat_map(|i| (k..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_zero());
        let Some((pi, pj)) = pivot else {
            break;
        };
        a.swap(k, pi);
        if pj != k {
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
        }
        for i in k + 1..rows {
            for j in k + 1..cols {
                let num = a[k][k].mul(f, &a[i][j]).sub(f, &a[i][k].mul(f, &a[k][j]));
                a[i][j] = num
                    .exact_div(f, &prev)
                    .expect("Bareiss quotients are exact");
            }
            a[i][k] = MPoly::zero();
        }
        prev = a[k][k].clone();
        rank += 1;
    }
    rank
}

/// Largest rank seen over `trials` uniform evaluation points in
/// `F_{p^{m ext}}`. A lower bound for [`symbolic_rank`]; only a cross-check.
pub fn sampled_rank(m: &LinearPolyMatrix, trials: usize, ext: usize, seed: u64) -> usize {
    let target = m.field.extension(ext).expect("extension field");
    let emb = m.field.embedding_into(&target).expect("embedding");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| {
            let point: Vec<u32> = (0..m.nvars).map(|_| target.random(&mut rng)).collect();
            m.evaluate(&emb, &point).rank()
        })
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn skew_two_by_two_and_zero() {
        let f = Field::prime(2).unwrap();
        let mut m = LinearPolyMatrix::zeros(&f, 1, 2, 2);
        m.set_coeff(0, 1, 1, 1);
        m.set_coeff(1, 0, 1, f.neg(1));
        assert!(m.is_skew());
        assert_eq!(symbolic_rank(&m), 2);
        assert_eq!(symbolic_rank(&LinearPolyMatrix::zeros(&f, 3, 4, 4)), 0);
    }

    #[test]
    fn exact_division() {
        let f = Field::prime(3).unwrap();
        let a = MPoly::linear(&[1, 1, 0]);
        let b = MPoly::linear(&[0, 2, 1]);
        let prod = a.mul(&f, &b);
        assert_eq!(prod.exact_div(&f, &a), Some(b.clone()));
        assert_eq!(prod.exact_div(&f, &b), Some(a));
        assert_eq!(MPoly::linear(&[1, 0, 1]).exact_div(&f, &b), None);
    }

    /// Determinant over the polynomial ring by cofactor expansion, as an
    /// independent route to "full rank".
    fn det(f: &Field, a: &[Vec<MPoly>]) -> MPoly {
        let n = a.len();
        if n == 1 {
            return a[0][0].clone();
        }
        let mut acc = MPoly::zero();
        for j in 0..n {
            let minor: Vec<Vec<MPoly>> = a[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let term = a[0][j].mul(f, &det(f, &minor));
            acc = if j % 2 == 0 {
                acc.sub(f, &MPoly::zero().sub(f, &term))
            } else {
                acc.sub(f, &term)
            };
        }
        acc
    }

    #[test]
    fn full_rank_iff_determinant_nonzero() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f = Field::prime(2).unwrap();
        for _ in 0..40 {
            let n = rng.gen_range(1..5);
            let nvars = 3;
            let mut m = LinearPolyMatrix::zeros(&f, nvars, n, n);
            for r in 0..n {
                for c in 0..n {
                    let coeffs = (0..=nvars)
                        .map(|_| if rng.gen_bool(0.3) { 1 } else { 0 })
                        .collect();
                    m.set_entry(r, c, coeffs);
                }
            }
            let polys: Vec<Vec<MPoly>> = (0..n)
                .map(|r| (0..n).map(|c| MPoly::linear(m.entry(r, c))).collect())
                .collect();
            let full = !det(&f, &polys).is_zero();
            assert_eq!(symbolic_rank(&m) == n, full);
        }
    }

    #[test]
    fn sampled_rank_never_exceeds_symbolic() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let f = Field::prime(3).unwrap();
        for _ in 0..20 {
            let (r, c, nvars) = (
                rng.gen_range(1..6),
                rng.gen_range(1..6),
                rng.gen_range(1..4),
            );
            let mut m = LinearPolyMatrix::zeros(&f, nvars, r, c);
            for i in 0..r {
                for j in 0..c {
                    let coeffs = (0..=nvars)
                        .map(|_| {
                            if rng.gen_bool(0.4) {
                                f.random(&mut rng)
                            } else {
                                0
                            }
                        })
                        .collect();
                    m.set_entry(i, j, coeffs);
                }
            }
            let s = symbolic_rank(&m);
            assert!(sampled_rank(&m, 20, 1, 1) <= s);
            assert_eq!(sampled_rank(&m, 50, 6, 1), s);
        }
    }
}
