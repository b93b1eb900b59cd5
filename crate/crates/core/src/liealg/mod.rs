//! Lie algebras given by structure constants over a finite field.
//!
//! The canonical bracket data is a sparse list of triples `[e_i, e_j] =
//! sum_k c_{ij}^k e_k` with `i < j`; the opposite orientation is generated
//! by antisymmetry. A dense structure-constant table is derived from it for
//! fast brackets.

mod family;
mod restricted;

use std::fmt;

use thiserror::Error;

use crate::field::{Embedding, Field, FieldError};
use crate::linalg::Matrix;

pub use family::{abelian, family_build, heisenberg, FamilyMember};
pub use restricted::{
    central_p_polynomial, is_restrictable, restricted_closure, PPolynomial, Restrictability,
    RestrictedClosure,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("family requires k >= 3, got {0}")]
    BadK(usize),
    #[error("not a derivation: Leibniz rule fails on ({left}, {right})")]
    NotADerivation { left: String, right: String },
    #[error("invalid bracket table: {0}")]
    Invalid(Violation),
    #[error("duplicate basis name {0:?}")]
    DuplicateName(String),
    #[error("basis index {0} out of range")]
    BadIndex(usize),
    #[error("field mismatch")]
    FieldMismatch,
}

/// First failing axiom found by [`lie_validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Antisymmetry { left: String, right: String },
    Jacobi { a: String, b: String, c: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Antisymmetry { left, right } => {
                write!(f, "antisymmetry fails at ({left}, {right})")
            }
            Violation::Jacobi { a, b, c } => write!(f, "Jacobi identity fails at ({a}, {b}, {c})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violation: Option<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// One bracket entry of an input table: `[left, right] = sum coeffs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketEntry {
    pub left: usize,
    pub right: usize,
    pub coeffs: Vec<(usize, u32)>,
}

#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    field: Field,
    names: Vec<String>,
    /// `table[i * n + j]` = coordinates of `[e_i, e_j]`.
    table: Vec<Vec<u32>>,
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LieAlgebra over {} <{}>",
            self.field,
            self.names.join(", ")
        )?;
        for (i, j, coords) in self.nonzero_brackets() {
            write!(
                f,
                " [{},{}]={}",
                self.names[i],
                self.names[j],
                self.format_element(&coords)
            )?;
        }
        Ok(())
    }
}

/// Dense table from raw entries, or the first antisymmetry violation.
fn complete_table(
    field: &Field,
    names: &[String],
    entries: &[BracketEntry],
) -> Result<Vec<Vec<u32>>, LieError> {
    let n = names.len();
    let mut given: Vec<Option<Vec<u32>>> = vec![None; n * n];
    for e in entries {
        if e.left >= n || e.right >= n {
            return Err(LieError::BadIndex(e.left.max(e.right)));
        }
        let mut coords = vec![0; n];
        for &(k, c) in &e.coeffs {
            if k >= n {
                return Err(LieError::BadIndex(k));
            }
            coords[k] = field.add(coords[k], c);
        }
        let slot = &mut given[e.left * n + e.right];
        match slot {
            Some(prev) if *prev != coords => {
                return Err(LieError::Invalid(Violation::Antisymmetry {
                    left: names[e.left].clone(),
                    right: names[e.right].clone(),
                }))
            }
            _ => *slot = Some(coords),
        }
    }
    let mut table = vec![vec![0; n]; n * n];
    for i in 0..n {
        for j in 0..n {
            let fwd = &given[i * n + j];
            let back = &given[j * n + i];
            let neg = |v: &Vec<u32>| v.iter().map(|&c| field.neg(c)).collect::<Vec<u32>>();
            let violation = || {
                LieError::Invalid(Violation::Antisymmetry {
                    left: names[i].clone(),
                    right: names[j].clone(),
                })
            };
            table[i * n + j] = match (fwd, back) {
                (Some(a), _) if i == j && a.iter().any(|&c| c != 0) => return Err(violation()),
                (Some(a), Some(b)) if *a != neg(b) => return Err(violation()),
                (Some(a), _) => a.clone(),
                (None, Some(b)) => neg(b),
                (None, None) => vec![0; n],
            };
        }
    }
    Ok(table)
}

impl LieAlgebra {
    /// Builds and validates an algebra. Entries may be given in either
    /// orientation; both orientations of one pair must agree up to sign.
    pub fn new(
        field: &Field,
        names: Vec<String>,
        entries: &[BracketEntry],
    ) -> Result<LieAlgebra, LieError> {
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(LieError::DuplicateName(a.clone()));
            }
        }
        let table = complete_table(field, &names, entries)?;
        let alg = LieAlgebra {
            field: field.clone(),
            names,
            table,
        };
        match lie_validate(&alg).violation {
            Some(v) => Err(LieError::Invalid(v)),
            None => Ok(alg),
        }
    }

    /// Convenience constructor from name-based brackets with integer
    /// coefficients in the prime subfield.
    pub fn from_named(
        field: &Field,
        names: &[&str],
        brackets: &[(&str, &str, &[(&str, i64)])],
    ) -> Result<LieAlgebra, LieError> {
        let idx = |s: &str| {
            names
                .iter()
                .position(|n| *n == s)
                .expect("known basis name")
        };
        let entries: Vec<BracketEntry> = brackets
            .iter()
            .map(|(l, r, coeffs)| BracketEntry {
                left: idx(l),
                right: idx(r),
                coeffs: coeffs
                    .iter()
                    .map(|(k, c)| (idx(k), field.from_int(*c)))
                    .collect(),
            })
            .collect();
        LieAlgebra::new(
            field,
            names.iter().map(|s| s.to_string()).collect(),
            &entries,
        )
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Coordinates of `[e_i, e_j]`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[u32] {
        &self.table[i * self.dim() + j]
    }

    /// Structure constant `c_{ij}^k`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> u32 {
        self.table[i * self.dim() + j][k]
    }

    /// Sparse canonical triples `(i, j, coords)` with `i < j` and nonzero
    /// bracket.
    pub fn nonzero_brackets(&self) -> Vec<(usize, usize, Vec<u32>)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = &self.table[i * n + j];
                if v.iter().any(|&c| c != 0) {
                    out.push((i, j, v.clone()));
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        v
    }

    pub fn bracket(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let n = self.dim();
        let f = &self.field;
        let mut out = vec![0; n];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let ab = f.mul(a, b);
                for (o, &c) in out.iter_mut().zip(&self.table[i * n + j]) {
                    if c != 0 {
                        *o = f.mul_add(ab, c, *o);
                    }
                }
            }
        }
        out
    }

    /// Matrix of `[x, -]`; column `j` holds `[x, e_j]`.
    pub fn ad(&self, x: &[u32]) -> Matrix {
        let n = self.dim();
        let columns: Vec<Vec<u32>> = (0..n)
            .map(|j| self.bracket(x, &self.basis_vector(j)))
            .collect();
        Matrix::from_columns(&self.field, n, &columns)
    }

    pub fn ad_basis(&self, i: usize) -> Matrix {
        self.ad(&self.basis_vector(i))
    }

    pub fn is_central(&self, i: usize) -> bool {
        (0..self.dim()).all(|j| self.basis_bracket(i, j).iter().all(|&c| c == 0))
    }

    /// First basis pair on which the Leibniz rule fails, if any.
    pub fn leibniz_failure(&self, d: &Matrix) -> Option<(usize, usize)> {
        let n = self.dim();
        assert_eq!((d.rows(), d.cols()), (n, n));
        let f = &self.field;
        let images: Vec<Vec<u32>> = (0..n).map(|i| d.column(i)).collect();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = d.mul_vec(self.basis_bracket(i, j));
                let a = self.bracket(&images[i], &self.basis_vector(j));
                let b = self.bracket(&self.basis_vector(i), &images[j]);
                let rhs: Vec<u32> = a.iter().zip(&b).map(|(&x, &y)| f.add(x, y)).collect();
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// `self ⋊ F d` with the new basis element `name` appended last.
    pub fn semidirect(&self, d: &DerivationMatrix, name: &str) -> Result<LieAlgebra, LieError> {
        if let Some((i, j)) = self.leibniz_failure(&d.matrix) {
            return Err(LieError::NotADerivation {
                left: self.names[i].clone(),
                right: self.names[j].clone(),
            });
        }
        let n = self.dim();
        let mut names = self.names.clone();
        if names.iter().any(|x| x == name) {
            return Err(LieError::DuplicateName(name.to_string()));
        }
        names.push(name.to_string());
        let mut table = vec![vec![0; n + 1]; (n + 1) * (n + 1)];
        for i in 0..n {
            for j in 0..n {
                let mut v = self.table[i * n + j].clone();
                v.push(0);
                table[i * (n + 1) + j] = v;
            }
            let mut image = d.matrix.column(i);
            image.push(0);
            let neg: Vec<u32> = image.iter().map(|&c| self.field.neg(c)).collect();
            table[n * (n + 1) + i] = image;
            table[i * (n + 1) + n] = neg;
        }
        let alg = LieAlgebra {
            field: self.field.clone(),
            names,
            table,
        };
        debug_assert!(lie_validate(&alg).passed());
        Ok(alg)
    }

    /// Same algebra with basis reordered: new basis element `i` is old
    /// element `order[i]`.
    pub fn permuted(&self, order: &[usize]) -> LieAlgebra {
        let n = self.dim();
        assert_eq!(order.len(), n);
        let mut inverse = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            inverse[old] = new;
        }
        let mut table = vec![vec![0; n]; n * n];
        for i in 0..n {
            for j in 0..n {
                let old = &self.table[order[i] * n + order[j]];
                let mut v = vec![0; n];
                for (k, &c) in old.iter().enumerate() {
                    v[inverse[k]] = c;
                }
                table[i * n + j] = v;
            }
        }
        LieAlgebra {
            field: self.field.clone(),
            names: order.iter().map(|&i| self.names[i].clone()).collect(),
            table,
        }
    }

    /// Extension of scalars along an embedding of the coefficient field.
    pub fn extend_scalars(&self, emb: &Embedding) -> Result<LieAlgebra, LieError> {
        if emb.source() != &self.field {
            return Err(LieError::FieldMismatch);
        }
        Ok(LieAlgebra {
            field: emb.target().clone(),
            names: self.names.clone(),
            table: self
                .table
                .iter()
                .map(|v| v.iter().map(|&c| emb.map(c)).collect())
                .collect(),
        })
    }

    /// Extension of scalars to `target`, which must contain the current field.
    pub fn over(&self, target: &Field) -> Result<LieAlgebra, LieError> {
        let emb = self.field.embedding_into(target)?;
        self.extend_scalars(&emb)
    }

    pub fn format_element(&self, coords: &[u32]) -> String {
        let terms: Vec<String> = coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                if c == 1 {
                    self.names[i].clone()
                } else {
                    format!("({})*{}", self.field.format(c), self.names[i])
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// Checks antisymmetry and the Jacobi identity on all basis triples.
pub fn lie_validate(alg: &LieAlgebra) -> ValidationReport {
    let n = alg.dim();
    let f = &alg.field;
    for i in 0..n {
        for j in i..n {
            let a = alg.basis_bracket(i, j);
            let b = alg.basis_bracket(j, i);
            let ok = if i == j {
                a.iter().all(|&c| c == 0)
            } else {
                a.iter().zip(b).all(|(&x, &y)| f.add(x, y) == 0)
            };
            if !ok {
                return ValidationReport {
                    violation: Some(Violation::Antisymmetry {
                        left: alg.names[i].clone(),
                        right: alg.names[j].clone(),
                    }),
                };
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (ei, ej, ek) = (
                    alg.basis_vector(i),
                    alg.basis_vector(j),
                    alg.basis_vector(k),
                );
                let t1 = alg.bracket(&ei, alg.basis_bracket(j, k));
                let t2 = alg.bracket(&ej, alg.basis_bracket(k, i));
                let t3 = alg.bracket(&ek, alg.basis_bracket(i, j));
                let zero = t1
                    .iter()
                    .zip(&t2)
                    .zip(&t3)
                    .all(|((&a, &b), &c)| f.add(f.add(a, b), c) == 0);
                if !zero {
                    return ValidationReport {
                        violation: Some(Violation::Jacobi {
                            a: alg.names[i].clone(),
                            b: alg.names[j].clone(),
                            c: alg.names[k].clone(),
                        }),
                    };
                }
            }
        }
    }
    ValidationReport { violation: None }
}

/// Validates a raw, possibly inconsistent table without building an algebra.
pub fn validate_table(
    field: &Field,
    names: &[String],
    entries: &[BracketEntry],
) -> ValidationReport {
    match complete_table(field, names, entries) {
        Err(LieError::Invalid(v)) => ValidationReport { violation: Some(v) },
        Err(_) => ValidationReport {
            violation: Some(Violation::Antisymmetry {
                left: "?".into(),
                right: "?".into(),
            }),
        },
        Ok(table) => lie_validate(&LieAlgebra {
            field: field.clone(),
            names: names.to_vec(),
            table,
        }),
    }
}

/// `[X, -]` as a matrix.
pub fn ad(alg: &LieAlgebra, x: &[u32]) -> Matrix {
    alg.ad(x)
}

/// A matrix known to satisfy the Leibniz rule on a given algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationMatrix {
    matrix: Matrix,
    label: String,
}

impl DerivationMatrix {
    pub fn new(
        alg: &LieAlgebra,
        matrix: Matrix,
        label: &str,
    ) -> Result<DerivationMatrix, LieError> {
        if let Some((i, j)) = alg.leibniz_failure(&matrix) {
            return Err(LieError::NotADerivation {
                left: alg.names[i].clone(),
                right: alg.names[j].clone(),
            });
        }
        Ok(DerivationMatrix {
            matrix,
            label: label.to_string(),
        })
    }

    /// Skips the Leibniz check; [`LieAlgebra::semidirect`] re-checks it.
    pub fn unchecked(matrix: Matrix, label: &str) -> DerivationMatrix {
        DerivationMatrix {
            matrix,
            label: label.to_string(),
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

/// Semidirect product `alg ⋊ F d`.
pub fn semidirect(
    alg: &LieAlgebra,
    d: &DerivationMatrix,
    name: &str,
) -> Result<LieAlgebra, LieError> {
    alg.semidirect(d, name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn abelian_validates() {
        let a = abelian(&Field::prime(3).unwrap(), 4);
        assert!(lie_validate(&a).passed());
        assert!(a.nonzero_brackets().is_empty());
    }

    #[test]
    fn antisymmetry_violation_reported() {
        let f5 = Field::prime(5).unwrap();
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let entries = vec![
            BracketEntry {
                left: 0,
                right: 1,
                coeffs: vec![(2, 1)],
            },
            BracketEntry {
                left: 1,
                right: 0,
                coeffs: vec![(2, 1)],
            },
        ];
        let report = validate_table(&f5, &names, &entries);
        assert_eq!(
            report.violation,
            Some(Violation::Antisymmetry {
                left: "x".into(),
                right: "y".into()
            })
        );
        assert!(matches!(
            LieAlgebra::new(&f5, names.clone(), &entries),
            Err(LieError::Invalid(_))
        ));
        // over F_2 the same table is antisymmetric
        let f2 = Field::prime(2).unwrap();
        assert!(validate_table(&f2, &names, &entries).passed());
    }

    #[test]
    fn jacobi_violation_reported() {
        let f3 = Field::prime(3).unwrap();
        // [x,y]=y, [x,z]=z, [y,z]=x fails Jacobi
        let r = LieAlgebra::from_named(
            &f3,
            &["x", "y", "z"],
            &[
                ("x", "y", &[("y", 1)]),
                ("x", "z", &[("z", 1)]),
                ("y", "z", &[("x", 1)]),
            ],
        );
        assert!(matches!(
            r,
            Err(LieError::Invalid(Violation::Jacobi { .. }))
        ));
    }

    #[test]
    fn sl2_like_over_f7() {
        let f7 = Field::prime(7).unwrap();
        let so3 = LieAlgebra::from_named(
            &f7,
            &["x", "y", "z"],
            &[
                ("x", "y", &[("z", 1)]),
                ("y", "z", &[("x", 1)]),
                ("z", "x", &[("y", 1)]),
            ],
        )
        .unwrap();
        assert!(lie_validate(&so3).passed());
    }

    #[test]
    fn ad_is_a_lie_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for (p, k, which) in [
            (2, 3, FamilyMember::L),
            (3, 4, FamilyMember::Lprime),
            (5, 3, FamilyMember::AD),
        ] {
            let alg = family_build(p, 1, k, which).unwrap();
            let f = alg.field().clone();
            for _ in 0..20 {
                let x: Vec<u32> = (0..alg.dim()).map(|_| f.random(&mut rng)).collect();
                let y: Vec<u32> = (0..alg.dim()).map(|_| f.random(&mut rng)).collect();
                let lhs = alg.ad(&alg.bracket(&x, &y));
                let rhs = alg.ad(&x).commutator(&alg.ad(&y));
                assert_eq!(lhs, rhs);
                assert!(alg.leibniz_failure(&alg.ad(&x)).is_none());
            }
        }
    }

    #[test]
    fn ad_examples_on_family() {
        let l = family_build(2, 1, 3, FamilyMember::L).unwrap();
        let (x1, x2, x3, d0, d) = (0, 1, 2, 3, 4);
        assert_eq!(l.names(), &["x1", "x2", "x3", "D0", "D"]);
        let ad_d = l.ad_basis(d);
        assert_eq!(ad_d.column(x1), l.basis_vector(x1));
        assert_eq!(ad_d.column(x2), l.basis_vector(x3));
        assert!(ad_d.column(x3).iter().all(|&c| c == 0));
        assert!(ad_d.column(d0).iter().all(|&c| c == 0));
        assert!(l.ad_basis(d0).is_zero());
        let ad_x1 = l.ad_basis(x1);
        let neg_x1: Vec<u32> = l
            .basis_vector(x1)
            .iter()
            .map(|&c| l.field().neg(c))
            .collect();
        assert_eq!(ad_x1.column(d), neg_x1);
        for j in 0..4 {
            assert!(ad_x1.column(j).iter().all(|&c| c == 0));
        }
    }

    #[test]
    fn semidirect_examples() {
        let f3 = Field::prime(3).unwrap();
        let a = abelian(&f3, 3);
        let zero = DerivationMatrix::new(&a, Matrix::zeros(&f3, 3, 3), "z").unwrap();
        let ext = a.semidirect(&zero, "z").unwrap();
        assert_eq!(ext.dim(), 4);
        assert!(ext.nonzero_brackets().is_empty());

        let h = heisenberg(&f3);
        // x -> x, everything else fixed: [Dx, y] + [x, Dy] = z but D z = 0
        let mut m = Matrix::zeros(&f3, 3, 3);
        m.set(0, 0, 1);
        let bad = DerivationMatrix::unchecked(m.clone(), "E");
        assert!(matches!(
            h.semidirect(&bad, "E"),
            Err(LieError::NotADerivation { .. })
        ));
        assert!(DerivationMatrix::new(&h, m, "E").is_err());
    }

    #[test]
    fn permutation_and_scalar_extension_preserve_validity() {
        let l = family_build(3, 1, 4, FamilyMember::Lprime).unwrap();
        let perm: Vec<usize> = (0..l.dim()).rev().collect();
        let q = l.permuted(&perm);
        assert!(lie_validate(&q).passed());
        assert_eq!(q.permuted(&perm), l);
        let big = l.over(&Field::new(3, 2, None).unwrap()).unwrap();
        assert!(lie_validate(&big).passed());
        assert_eq!(big.dim(), l.dim());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x: Vec<u32> = (0..l.dim()).map(|_| rng.gen_range(0..3)).collect();
        let y: Vec<u32> = (0..l.dim()).map(|_| rng.gen_range(0..3)).collect();
        assert_eq!(big.bracket(&x, &y), l.bracket(&x, &y));
    }
}
