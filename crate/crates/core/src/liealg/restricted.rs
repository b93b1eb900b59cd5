use std::fmt;

use crate::field::Field;
use crate::linalg::{solve_columns, solve_membership, Matrix, Subspace};

use super::LieAlgebra;

/// Smallest subspace of `gl(L)` containing `ad(L)` that is closed under
/// commutators and p-th powers.
#[derive(Clone, Debug)]
pub struct RestrictedClosure {
    n: usize,
    span: Subspace,
    ad_dim: usize,
    rounds: usize,
}

impl RestrictedClosure {
    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    /// Dimension of `ad(L)` itself.
    pub fn ad_dim(&self) -> usize {
        self.ad_dim
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn subspace(&self) -> &Subspace {
        &self.span
    }

    pub fn basis(&self) -> Vec<Matrix> {
        self.span
            .basis()
            .iter()
            .map(|v| Matrix::from_flat(self.span.field(), self.n, self.n, v.clone()))
            .collect()
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.span.contains(m.as_slice())
    }

    /// Re-checks bracket and p-power closure on the final basis.
    pub fn verify(&self) -> bool {
        let basis = self.basis();
        basis
            .iter()
            .all(|b| self.contains(&b.p_power(1).expect("square")))
            && basis.iter().enumerate().all(|(i, a)| {
                basis[i + 1..]
                    .iter()
                    .all(|b| self.contains(&a.commutator(b)))
            })
    }
}

pub fn restricted_closure(alg: &LieAlgebra) -> RestrictedClosure {
    let n = alg.dim();
    let mut span = Subspace::new(alg.field(), n * n);
    for i in 0..n {
        span.insert(alg.ad_basis(i).into_vec());
    }
    let ad_dim = span.dim();
    let mut rounds = 0;
    loop {
        rounds += 1;
        let current: Vec<Matrix> = span
            .basis()
            .iter()
            .map(|v| Matrix::from_flat(alg.field(), n, n, v.clone()))
            .collect();
        let before = span.dim();
        for (i, a) in current.iter().enumerate() {
            span.insert(a.p_power(1).expect("square").into_vec());
            for b in &current[i + 1..] {
                span.insert(a.commutator(b).into_vec());
            }
        }
        if span.dim() == before {
            break;
        }
    }
    RestrictedClosure {
        n,
        span,
        ad_dim,
        rounds,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restrictability {
    pub restrictable: bool,
    /// First basis index `i` with `ad(e_i)^p` outside `ad(L)`, and that power.
    pub witness: Option<(usize, Matrix)>,
}

/// `L` is restrictable iff `ad(e_i)^p` lies in `ad(L)` for every basis
/// element (Jacobson).
pub fn is_restrictable(alg: &LieAlgebra) -> Restrictability {
    let ads: Vec<Matrix> = (0..alg.dim()).map(|i| alg.ad_basis(i)).collect();
    for (i, a) in ads.iter().enumerate() {
        let power = a.p_power(1).expect("square");
        if solve_membership(&power, &ads)
            .expect("shapes agree")
            .is_none()
        {
            return Restrictability {
                restrictable: false,
                witness: Some((i, power)),
            };
        }
    }
    Restrictability {
        restrictable: true,
        witness: None,
    }
}

/// Monic p-polynomial `T^{p^r} + sum_{i<r} λ_i T^{p^i}`, stored as
/// `[λ_0, ..., λ_{r-1}, 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PPolynomial {
    field: Field,
    coeffs: Vec<u32>,
}

impl PPolynomial {
    pub fn new(field: &Field, coeffs: Vec<u32>) -> PPolynomial {
        assert_eq!(coeffs.last(), Some(&1), "p-polynomial must be monic");
        PPolynomial {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// `r` in `T^{p^r}`.
    pub fn p_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Ordinary degree `p^r`.
    pub fn degree(&self) -> u64 {
        (self.field.characteristic() as u64).pow(self.p_degree() as u32)
    }

    pub fn eval(&self, x: u32) -> u32 {
        let f = &self.field;
        let mut acc = 0;
        let mut power = x;
        for &c in &self.coeffs {
            acc = f.mul_add(c, power, acc);
            power = f.frobenius(power);
        }
        acc
    }

    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        let mut acc = Matrix::zeros(m.field(), m.rows(), m.cols());
        let mut power = m.clone();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                acc.add_scaled(&power, c);
            }
            if i + 1 < self.coeffs.len() {
                power = power.p_power(1).expect("square");
            }
        }
        acc
    }

    /// The polynomial without its leading term.
    pub fn tail(&self) -> Vec<u32> {
        self.coeffs[..self.coeffs.len() - 1].to_vec()
    }
}

impl fmt::Display for PPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.field.characteristic() as u64;
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = if i == 0 {
                "T".to_string()
            } else {
                format!("T^{}", p.pow(i as u32))
            };
            terms.push(if c == 1 {
                mono
            } else {
                format!("({})*{}", self.field.format(c), mono)
            });
        }
        write!(f, "{}", terms.join(" + "))
    }
}

/// Minimal monic p-polynomial annihilating `ad(e_i)`.
pub fn central_p_polynomial(alg: &LieAlgebra, i: usize) -> PPolynomial {
    let f = alg.field();
    let a = alg.ad_basis(i);
    if a.is_zero() {
        return PPolynomial::new(f, vec![1]);
    }
    let mut powers = vec![a.into_vec()];
    loop {
        let n = alg.dim();
        let last = Matrix::from_flat(f, n, n, powers.last().unwrap().clone());
        let next = last.p_power(1).expect("square").into_vec();
        if let Some(c) = solve_columns(f, &powers, &next) {
            let mut coeffs: Vec<u32> = c.iter().map(|&x| f.neg(x)).collect();
            coeffs.push(1);
            return PPolynomial::new(f, coeffs);
        }
        powers.push(next);
    }
}
