use std::fmt;
use std::str::FromStr;

use crate::field::Field;
use crate::linalg::Matrix;

use super::{BracketEntry, DerivationMatrix, LieAlgebra, LieError};

/// Members of the solvable family built on the abelian algebra
/// `A = <x1, ..., xk>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyMember {
    /// The abelian algebra itself.
    A,
    /// `A ⋊ F D` with `D x_i = x_i` (i <= k-2), `D x_{k-1} = x_k`, `D x_k = 0`.
    AD,
    /// `A_D` with an extra central element `D0`; basis `(x.., D0, D)`.
    L,
    /// `A_D ⋊ F D'` with `D' = ad(D)^p`; basis `(x.., D, D')`.
    Lprime,
}

impl FamilyMember {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilyMember::A => "A",
            FamilyMember::AD => "A_D",
            FamilyMember::L => "L",
            FamilyMember::Lprime => "Lprime",
        }
    }
}

impl fmt::Display for FamilyMember {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyMember {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" => Ok(FamilyMember::A),
            "A_D" | "AD" => Ok(FamilyMember::AD),
            "L" => Ok(FamilyMember::L),
            "Lprime" | "L'" => Ok(FamilyMember::Lprime),
            other => Err(format!(
                "unknown family member {other:?} (expected A, A_D, L or Lprime)"
            )),
        }
    }
}

/// Abelian algebra with basis `e1, ..., en`.
pub fn abelian(field: &Field, n: usize) -> LieAlgebra {
    let names = (1..=n).map(|i| format!("e{i}")).collect();
    LieAlgebra::new(field, names, &[]).expect("abelian table is valid")
}

/// Three-dimensional Heisenberg algebra `[x, y] = z`.
pub fn heisenberg(field: &Field) -> LieAlgebra {
    let names = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    let entries = [BracketEntry {
        left: 0,
        right: 1,
        coeffs: vec![(2, 1)],
    }];
    LieAlgebra::new(field, names, &entries).expect("Heisenberg table is valid")
}

pub fn family_build(
    p: u64,
    m: usize,
    k: usize,
    which: FamilyMember,
) -> Result<LieAlgebra, LieError> {
    if k < 3 {
        return Err(LieError::BadK(k));
    }
    let field = Field::new(p, m, None)?;
    let names = (1..=k).map(|i| format!("x{i}")).collect();
    let a = LieAlgebra::new(&field, names, &[])?;
    if which == FamilyMember::A {
        return Ok(a);
    }

    let mut d = Matrix::zeros(&field, k, k);
    for i in 0..k - 2 {
        d.set(i, i, 1);
    }
    d.set(k - 1, k - 2, 1);
    let ad = a.semidirect(&DerivationMatrix::new(&a, d, "D")?, "D")?;
    match which {
        FamilyMember::A => unreachable!(),
        FamilyMember::AD => Ok(ad),
        FamilyMember::L => {
            let zero = DerivationMatrix::new(&ad, Matrix::zeros(&field, k + 1, k + 1), "D0")?;
            let with_d0 = ad.semidirect(&zero, "D0")?;
            let mut order: Vec<usize> = (0..k).collect();
            order.extend([k + 1, k]);
            Ok(with_d0.permuted(&order))
        }
        FamilyMember::Lprime => {
            let dp = ad.ad_basis(k).p_power(1).expect("square matrix");
            ad.semidirect(&DerivationMatrix::new(&ad, dp, "D'")?, "D'")
        }
    }
}
