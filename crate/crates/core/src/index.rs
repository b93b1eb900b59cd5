//! Coadjoint forms and the index of a Lie algebra.

use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::field::Field;
use crate::liealg::LieAlgebra;
use crate::linalg::{symbolic_rank, LinearPolyMatrix, Matrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IndexError {
    #[error("dim - index is odd (dim {dim}, index {index})")]
    ParityViolation { dim: usize, index: usize },
}

/// `B[i][j] = χ([e_i, e_j])`.
pub fn coadjoint_form(alg: &LieAlgebra, chi: &[u32]) -> Matrix {
    let n = alg.dim();
    assert_eq!(chi.len(), n);
    let f = alg.field();
    let mut b = Matrix::zeros(f, n, n);
    for i in 0..n {
        for j in 0..n {
            let v = alg
                .basis_bracket(i, j)
                .iter()
                .zip(chi)
                .fold(0, |acc, (&c, &x)| f.mul_add(c, x, acc));
            b.set(i, j, v);
        }
    }
    b
}

/// Dimension of the stabilizer `L_χ`, the radical of the coadjoint form.
pub fn stabilizer_dim(alg: &LieAlgebra, chi: &[u32]) -> usize {
    alg.dim() - coadjoint_form(alg, chi).rank()
}

/// The generic coadjoint form with entries `sum_k c_{ij}^k t_k`.
pub fn generic_form(alg: &LieAlgebra) -> LinearPolyMatrix {
    let n = alg.dim();
    let mut m = LinearPolyMatrix::zeros(alg.field(), n, n, n);
    for i in 0..n {
        for j in 0..n {
            for (k, &c) in alg.basis_bracket(i, j).iter().enumerate() {
                if c != 0 {
                    m.set_coeff(i, j, k + 1, c);
                }
            }
        }
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexReport {
    pub dim: usize,
    pub index: usize,
    pub generic_rank: usize,
    /// `(dim - index) / 2`; the conjectured bound is `p` to this power.
    pub kw1_exponent: usize,
    /// A form over the base field attaining the index, if one was found.
    pub witness_chi: Option<Vec<u32>>,
}

impl IndexReport {
    /// Flat `key: value` lines.
    pub fn to_text(&self, alg: &LieAlgebra) -> String {
        let mut s = String::new();
        writeln!(s, "dim: {}", self.dim).unwrap();
        writeln!(s, "index: {}", self.index).unwrap();
        writeln!(s, "generic_rank: {}", self.generic_rank).unwrap();
        writeln!(s, "kw1_exponent: {}", self.kw1_exponent).unwrap();
        let witness = match &self.witness_chi {
            Some(chi) => format_form(alg, chi),
            None => "none".into(),
        };
        writeln!(s, "witness_chi: {witness}").unwrap();
        s
    }
}

/// `name=value;...` over the nonzero coordinates.
pub fn format_form(alg: &LieAlgebra, chi: &[u32]) -> String {
    let parts: Vec<String> = chi
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| format!("{}={}", alg.name(i), alg.field().format(c)))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(";")
    }
}

/// Exact index over the algebraic closure, via the rank of the generic form.
pub fn index_symbolic(alg: &LieAlgebra) -> IndexReport {
    let n = alg.dim();
    let rank = symbolic_rank(&generic_form(alg));
    let index = n - rank;
    IndexReport {
        dim: n,
        index,
        generic_rank: rank,
        kw1_exponent: rank / 2,
        witness_chi: base_field_witness(alg, index),
    }
}

/// First base-field form in enumeration order whose stabilizer has the
/// generic dimension. Enumeration is exhaustive for small spaces and
/// otherwise a fixed pseudo-random sample.
fn base_field_witness(alg: &LieAlgebra, index: usize) -> Option<Vec<u32>> {
    let f = alg.field();
    let n = alg.dim();
    let q = f.order() as u64;
    let total = q.checked_pow(n as u32).filter(|&t| t <= 4096);
    let hit = |chi: &Vec<u32>| stabilizer_dim(alg, chi) == index;
    match total {
        Some(t) => (0..t)
            .map(|mut code| {
                (0..n)
                    .map(|_| {
                        let c = (code % q) as u32;
                        code /= q;
                        c
                    })
                    .collect::<Vec<u32>>()
            })
            .find(hit),
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            (0..1000)
                .map(|_| (0..n).map(|_| f.random(&mut rng)).collect::<Vec<u32>>())
                .find(hit)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampledIndex {
    /// Smallest stabilizer dimension seen; an upper bound on the index.
    pub bound: usize,
    /// Field the witness lives in.
    pub field: Field,
    pub witness_chi: Vec<u32>,
}

/// splitmix64 step, used to derive independent per-task seeds.
pub fn split_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed.wrapping_add(stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Minimum stabilizer dimension over `trials` random forms with
/// coordinates in the degree-`ext` extension of the base field.
pub fn index_sampled(alg: &LieAlgebra, trials: usize, ext: usize, seed: u64) -> SampledIndex {
    assert!(trials >= 1);
    let target = alg.field().extension(ext.max(1)).expect("extension field");
    let big = alg.over(&target).expect("embedding");
    let (bound, _, chi) = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(split_seed(seed, t));
            let chi: Vec<u32> = (0..big.dim()).map(|_| target.random(&mut rng)).collect();
            (stabilizer_dim(&big, &chi), t, chi)
        })
        .min_by_key(|(d, t, _)| (*d, *t))
        .expect("at least one trial");
    SampledIndex {
        bound,
        field: target,
        witness_chi: chi,
    }
}

/// Exponent `d` of the conjectured maximal simple dimension `p^d`.
pub fn kw1_predicted(alg: &LieAlgebra) -> Result<usize, IndexError> {
    let r = index_symbolic(alg);
    if !r.generic_rank.is_multiple_of(2) {
        return Err(IndexError::ParityViolation {
            dim: r.dim,
            index: r.index,
        });
    }
    Ok(r.kw1_exponent)
}
