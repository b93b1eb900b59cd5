//! Modules over finite-dimensional algebras given by generator matrices:
//! spinning, MeatAxe composition factors, endomorphism degrees, and the
//! maximal-simple-dimension sweep over central characters.

mod charpoly;
mod hom;
mod meataxe;
mod sweep;

use thiserror::Error;

use crate::env::{parse_generators, write_generators, EnvError, ReducedAlgebra};
use crate::field::{Embedding, Field};
use crate::linalg::{Matrix, Subspace};

pub use charpoly::{charpoly, eval_poly_matrix, hessenberg};
pub use hom::{absolute_dims, endo_degree, hom_dim, verify_absolute};
pub use meataxe::{chop, spin_certificate, ChopResult, Factor};
pub use sweep::{m_sweep, CharacterRow, CharacterSet, SweepReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepnError {
    #[error("cannot spin the zero vector")]
    ZeroVector,
    #[error("no splitting element found after {0} attempts; rerun with another seed")]
    RetryExhausted(usize),
    #[error("reduced dimension {dim} exceeds the budget {budget}")]
    BudgetExceeded { dim: u128, budget: u128 },
    #[error("generator matrices must be square of equal size")]
    BadShape,
    #[error(transparent)]
    Env(#[from] EnvError),
}

/// A module given by the matrices of the algebra generators, acting on
/// column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleAction {
    field: Field,
    dim: usize,
    names: Vec<String>,
    gens: Vec<Matrix>,
}

impl ModuleAction {
    pub fn new(field: &Field, dim: usize, gens: Vec<Matrix>) -> Result<ModuleAction, RepnError> {
        let names = (1..=gens.len()).map(|i| format!("g{i}")).collect();
        ModuleAction::with_names(field, dim, names, gens)
    }

    pub fn with_names(
        field: &Field,
        dim: usize,
        names: Vec<String>,
        gens: Vec<Matrix>,
    ) -> Result<ModuleAction, RepnError> {
        if names.len() != gens.len()
            || gens
                .iter()
                .any(|g| g.rows() != dim || g.cols() != dim || g.field() != field)
        {
            return Err(RepnError::BadShape);
        }
        Ok(ModuleAction {
            field: field.clone(),
            dim,
            names,
            gens,
        })
    }

    /// Left regular module of a reduced algebra.
    pub fn regular(r: &ReducedAlgebra) -> ModuleAction {
        ModuleAction {
            field: r.field().clone(),
            dim: r.dim(),
            names: r.algebra().names().to_vec(),
            gens: r.generators().to_vec(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.gens
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn transposed(&self) -> ModuleAction {
        ModuleAction {
            field: self.field.clone(),
            dim: self.dim,
            names: self.names.clone(),
            gens: self.gens.iter().map(Matrix::transpose).collect(),
        }
    }

    pub fn embed(&self, emb: &Embedding) -> ModuleAction {
        ModuleAction {
            field: emb.target().clone(),
            dim: self.dim,
            names: self.names.clone(),
            gens: self.gens.iter().map(|g| g.embed(emb)).collect(),
        }
    }

    /// Action on an invariant subspace, in the echelon basis of `s`.
    pub fn submodule(&self, s: &Subspace) -> ModuleAction {
        let d = s.dim();
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let columns: Vec<Vec<u32>> = s
                    .basis()
                    .iter()
                    .map(|b| {
                        let image = g.mul_vec(b);
                        s.coordinates(&image).expect("subspace is invariant")
                    })
                    .collect();
                Matrix::from_columns(&self.field, d, &columns)
            })
            .collect();
        ModuleAction {
            field: self.field.clone(),
            dim: d,
            names: self.names.clone(),
            gens,
        }
    }

    /// Action on `M / s`, with basis the unit vectors of the non-pivot
    /// coordinates of `s`.
    pub fn quotient(&self, s: &Subspace) -> ModuleAction {
        let comp = s.complement_columns();
        let d = comp.len();
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let columns: Vec<Vec<u32>> = comp
                    .iter()
                    .map(|&c| {
                        let reduced = s.reduce(&g.column(c));
                        comp.iter().map(|&r| reduced[r]).collect()
                    })
                    .collect();
                Matrix::from_columns(&self.field, d, &columns)
            })
            .collect();
        ModuleAction {
            field: self.field.clone(),
            dim: d,
            names: self.names.clone(),
            gens,
        }
    }

    pub fn to_text(&self) -> String {
        if self.gens.is_empty() {
            return format!(
                "dim: {}\nfield: {} {}\ngenerators: 0\n",
                self.dim,
                self.field.characteristic(),
                self.field.degree()
            );
        }
        write_generators(&self.field, &self.names, &self.gens)
    }

    pub fn from_text(text: &str) -> Result<ModuleAction, RepnError> {
        let (field, names, gens) = parse_generators(text)?;
        let dim = gens.first().map_or(0, Matrix::rows);
        ModuleAction::with_names(&field, dim, names, gens)
    }
}

/// Breadth-first spin tree: basis vectors `u_0 = v`, `u_t = g_{gen} u_{parent}`.
pub(crate) struct SpinTree {
    pub vectors: Vec<Vec<u32>>,
    /// `(parent, generator)` for every vector after the first.
    pub edges: Vec<Option<(usize, usize)>>,
    pub span: Subspace,
}

pub(crate) fn spin_tree(m: &ModuleAction, v: &[u32]) -> Result<SpinTree, RepnError> {
    if v.iter().all(|&c| c == 0) {
        return Err(RepnError::ZeroVector);
    }
    let mut span = Subspace::new(&m.field, m.dim);
    span.insert(v.to_vec());
    let mut vectors = vec![v.to_vec()];
    let mut edges = vec![None];
    let mut head = 0;
    while head < vectors.len() && !span.is_full() {
        for (gi, g) in m.gens.iter().enumerate() {
            let w = g.mul_vec(&vectors[head]);
            if span.insert(w.clone()) {
                vectors.push(w);
                edges.push(Some((head, gi)));
            }
        }
        head += 1;
    }
    Ok(SpinTree {
        vectors,
        edges,
        span,
    })
}

/// Smallest invariant subspace containing `v`.
pub fn spin(m: &ModuleAction, v: &[u32]) -> Result<Subspace, RepnError> {
    Ok(spin_tree(m, v)?.span)
}
