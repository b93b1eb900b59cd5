use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::env::{mu_from_chi, reduced_algebra, reduced_dim};
use crate::field::Field;
use crate::index::{format_form, index_symbolic, split_seed, stabilizer_dim};
use crate::liealg::{family_build, FamilyMember, LieAlgebra};

use super::{chop, ModuleAction, RepnError};

/// Which central characters a sweep visits. Characters are linear forms
/// `χ`, turned into central values by `μ_e = f_e(χ(e))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CharacterSet {
    /// Every form with coordinates in the base field.
    AllOverBase,
    /// `count` seeded forms over the field of absolute degree `degree`.
    Random { count: usize, degree: usize },
    /// Explicit forms over the base field.
    Explicit(Vec<Vec<u32>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterRow {
    pub field_order: u32,
    pub chi: String,
    pub stabilizer_dim: usize,
    pub factors: String,
    pub max_abs_dim: usize,
    /// Absolute dimension of each factor class.
    pub abs_dims: Vec<usize>,
    pub accounting_ok: bool,
    pub certified: bool,
    /// Every absolute factor dimension is divisible by `p^{(dim - s)/2}`.
    pub stabilizer_divides: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub p: u64,
    pub m: usize,
    pub k: usize,
    pub which: FamilyMember,
    pub dim: usize,
    pub index: usize,
    pub kw1_exponent: usize,
    pub reduced_dim: usize,
    pub seed: u64,
    pub rows: Vec<CharacterRow>,
}

impl SweepReport {
    pub fn predicted(&self) -> u64 {
        self.p.pow(self.kw1_exponent as u32)
    }

    pub fn max_abs_dim(&self) -> usize {
        self.rows.iter().map(|r| r.max_abs_dim).max().unwrap_or(0)
    }

    pub fn divisible_by_p(&self) -> bool {
        (self.max_abs_dim() as u64).is_multiple_of(self.p)
    }

    pub fn divisible_by_p2(&self) -> bool {
        (self.max_abs_dim() as u64).is_multiple_of(self.p * self.p)
    }

    pub fn all_accounted(&self) -> bool {
        self.rows.iter().all(|r| r.accounting_ok)
    }

    pub fn all_certified(&self) -> bool {
        self.rows.iter().all(|r| r.certified)
    }

    pub fn verdict(&self) -> String {
        let observed = self.max_abs_dim() as u64;
        let predicted = self.predicted();
        if observed > predicted {
            format!("KW1 FAILS for {}", self.which)
        } else if observed == predicted {
            format!("consistent with KW1 for {}", self.which)
        } else {
            format!(
                "inconclusive for {} (observed below prediction)",
                self.which
            )
        }
    }

    /// One line per character.
    pub fn table(&self) -> String {
        let cw = self
            .rows
            .iter()
            .map(|r| r.chi.len())
            .chain([9])
            .max()
            .unwrap();
        let fw = self
            .rows
            .iter()
            .map(|r| r.factors.len())
            .chain([16])
            .max()
            .unwrap();
        let mut s = String::new();
        writeln!(
            s,
            "{:<6} {:<cw$} {:>3}  {:<fw$} {:>7}  flags",
            "field", "character", "s", "factors dim^mult", "max_abs"
        )
        .unwrap();
        for r in &self.rows {
            let mut flags = Vec::new();
            if !r.accounting_ok {
                flags.push("ACCOUNTING");
            }
            if !r.certified {
                flags.push("UNCERTIFIED");
            }
            if (r.max_abs_dim as u64).is_multiple_of(self.p) {
                flags.push("p|dim");
            }
            if (r.max_abs_dim as u64).is_multiple_of(self.p * self.p) {
                flags.push("p^2|dim");
            }
            let field = format!("F{}", r.field_order);
            writeln!(
                s,
                "{:<6} {:<cw$} {:>3}  {:<fw$} {:>7}  {}",
                field,
                r.chi,
                r.stabilizer_dim,
                r.factors,
                r.max_abs_dim,
                flags.join(",")
            )
            .unwrap();
        }
        s
    }
}

fn characters(
    p: u64,
    m: usize,
    k: usize,
    which: FamilyMember,
    sets: &[CharacterSet],
    seed: u64,
) -> Result<Vec<(LieAlgebra, Vec<u32>)>, RepnError> {
    let base = family_build(p, m, k, which).map_err(crate::env::EnvError::from)?;
    let n = base.dim();
    let mut out = Vec::new();
    for (si, set) in sets.iter().enumerate() {
        match set {
            CharacterSet::AllOverBase => {
                let q = base.field().order() as u64;
                let total = q.pow(n as u32);
                for mut code in 0..total {
                    let chi = (0..n)
                        .map(|_| {
                            let c = (code % q) as u32;
                            code /= q;
                            c
                        })
                        .collect();
                    out.push((base.clone(), chi));
                }
            }
            CharacterSet::Explicit(list) => {
                for chi in list {
                    out.push((base.clone(), chi.clone()));
                }
            }
            CharacterSet::Random { count, degree } => {
                let deg = if degree % m == 0 { *degree } else { degree * m };
                let alg = family_build(p, deg, k, which).map_err(crate::env::EnvError::from)?;
                let f: Field = alg.field().clone();
                let mut rng = ChaCha8Rng::seed_from_u64(split_seed(seed, 1 << 32 | si as u64));
                for _ in 0..*count {
                    let chi = (0..n).map(|_| f.random(&mut rng)).collect();
                    out.push((alg.clone(), chi));
                }
            }
        }
    }
    Ok(out)
}

/// Chops the regular module of the reduced algebra at each character and
/// compares the largest absolute simple dimension with the conjectured
/// `p^{(dim - ind)/2}`. Refuses when the nominal size `p^{k+2}` reaches
/// `budget`.
pub fn m_sweep(
    p: u64,
    m: usize,
    k: usize,
    which: FamilyMember,
    sets: &[CharacterSet],
    seed: u64,
    budget: u128,
) -> Result<SweepReport, RepnError> {
    let nominal = (p as u128).checked_pow(k as u32 + 2).unwrap_or(u128::MAX);
    if nominal >= budget {
        return Err(RepnError::BudgetExceeded {
            dim: nominal,
            budget,
        });
    }
    let base = family_build(p, m, k, which).map_err(crate::env::EnvError::from)?;
    let rdim = reduced_dim(&base);
    if rdim >= budget {
        return Err(RepnError::BudgetExceeded { dim: rdim, budget });
    }
    let idx = index_symbolic(&base);
    let chars = characters(p, m, k, which, sets, seed)?;
    let rows: Result<Vec<CharacterRow>, RepnError> = chars
        .par_iter()
        .enumerate()
        .map(|(i, (alg, chi))| {
            let mu = mu_from_chi(alg, chi)?;
            let r = reduced_algebra(alg, &mu)?;
            let res = chop(&ModuleAction::regular(&r), split_seed(seed, i as u64))?;
            let s = stabilizer_dim(alg, chi);
            let divisor = (p as usize).pow(((alg.dim() - s) / 2) as u32);
            Ok(CharacterRow {
                field_order: alg.field().order(),
                chi: format_form(alg, chi),
                stabilizer_dim: s,
                factors: res.summary(),
                max_abs_dim: res.max_abs_dim(),
                abs_dims: res.factors.iter().map(|f| f.abs_dim).collect(),
                accounting_ok: res.accounting_ok(),
                certified: res.all_certified(),
                stabilizer_divides: res.factors.iter().all(|f| f.abs_dim % divisor == 0),
            })
        })
        .collect();
    Ok(SweepReport {
        p,
        m,
        k,
        which,
        dim: base.dim(),
        index: idx.index,
        kw1_exponent: idx.kw1_exponent,
        reduced_dim: rdim as usize,
        seed,
        rows: rows?,
    })
}
