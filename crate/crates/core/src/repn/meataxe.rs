use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{Matrix, Subspace};

use super::charpoly::{charpoly, eval_poly_matrix};
use super::hom::{endo_degree, hom_dim};
use super::{spin, ModuleAction, RepnError};

const MAX_ATTEMPTS: usize = 400;
const ESCALATE_AFTER: usize = 20;
const CERT_VECTORS: usize = 20;

/// One isomorphism class of composition factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub module: ModuleAction,
    pub dim: usize,
    pub multiplicity: usize,
    /// Dimension of the endomorphism field over the base field.
    pub endo_degree: usize,
    pub abs_dim: usize,
    /// The Norton test certified irreducibility.
    pub norton: bool,
    /// Random vectors that spun the whole factor, out of those tried.
    pub spin_passed: usize,
    pub spin_tried: usize,
}

impl Factor {
    pub fn certified(&self) -> bool {
        self.norton && self.spin_passed == self.spin_tried
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChopResult {
    pub module_dim: usize,
    pub seed: u64,
    pub factors: Vec<Factor>,
}

impl ChopResult {
    /// `sum dim * multiplicity`.
    pub fn accounted_dim(&self) -> usize {
        self.factors.iter().map(|f| f.dim * f.multiplicity).sum()
    }

    pub fn accounting_ok(&self) -> bool {
        self.accounted_dim() == self.module_dim
    }

    pub fn max_abs_dim(&self) -> usize {
        self.factors.iter().map(|f| f.abs_dim).max().unwrap_or(0)
    }

    pub fn all_certified(&self) -> bool {
        self.factors.iter().all(Factor::certified)
    }

    /// `dim^mult` list with the endomorphism degree when it is not 1,
    /// e.g. `1^2 2(e=2)^1 4^3`.
    pub fn summary(&self) -> String {
        self.factors
            .iter()
            .map(|f| {
                if f.endo_degree == 1 {
                    format!("{}^{}", f.dim, f.multiplicity)
                } else {
                    format!("{}(e={})^{}", f.dim, f.endo_degree, f.multiplicity)
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

enum Outcome {
    Split(Subspace),
    Irreducible,
}

/// Products of generator words used to form random algebra elements.
struct Words {
    gens: Vec<Matrix>,
    squares: Vec<Matrix>,
}

impl Words {
    fn new(m: &ModuleAction) -> Words {
        let gens = m.generators().to_vec();
        let mut squares = Vec::new();
        for a in &gens {
            for b in &gens {
                squares.push(a.mul(b));
            }
        }
        Words { gens, squares }
    }

    /// `c0 + sum c_i g_i + sum c_ij g_i g_j`, plus random degree-3 words
    /// when `deep`.
    fn random_element<R: Rng>(&self, m: &ModuleAction, deep: bool, rng: &mut R) -> Matrix {
        let f = m.field();
        let n = m.dim();
        let mut theta = Matrix::scalar(f, n, f.random(rng));
        for g in self.gens.iter().chain(&self.squares) {
            let c = f.random(rng);
            if c != 0 {
                theta.add_scaled(g, c);
            }
        }
        if deep && !self.gens.is_empty() {
            for _ in 0..self.gens.len().max(2) {
                let a = &self.squares[rng.gen_range(0..self.squares.len())];
                let b = &self.gens[rng.gen_range(0..self.gens.len())];
                theta.add_scaled(&a.mul(b), f.random_nonzero(rng));
            }
        }
        theta
    }
}

/// Finds a proper submodule or certifies irreducibility (Norton).
fn split_or_certify<R: Rng>(m: &ModuleAction, rng: &mut R) -> Result<Outcome, RepnError> {
    let n = m.dim();
    let f = m.field().clone();
    if n == 1 {
        return Ok(Outcome::Irreducible);
    }
    let words = Words::new(m);
    for attempt in 0..MAX_ATTEMPTS {
        let theta = words.random_element(m, attempt >= ESCALATE_AFTER, rng);
        let cp = charpoly(&theta);
        for (g, _) in cp.factor(&f, rng) {
            let deg = g.degree().expect("nonconstant factor");
            let gt = eval_poly_matrix(&f, &g, &theta);
            let kernel = gt.nullspace();
            let s = spin(m, &kernel[0])?;
            if !s.is_full() {
                return Ok(Outcome::Split(s));
            }
            if kernel.len() != deg {
                continue;
            }
            // every nonzero kernel vector spins to M; check the dual side
            let dual = m.transposed();
            let w = gt.left_nullspace();
            let t = spin(&dual, &w[0])?;
            if t.is_full() {
                return Ok(Outcome::Irreducible);
            }
            return Ok(Outcome::Split(t.annihilator()));
        }
    }
    Err(RepnError::RetryExhausted(MAX_ATTEMPTS))
}

fn composition_series<R: Rng>(
    m: &ModuleAction,
    rng: &mut R,
    out: &mut Vec<ModuleAction>,
) -> Result<(), RepnError> {
    match split_or_certify(m, rng)? {
        Outcome::Irreducible => out.push(m.clone()),
        Outcome::Split(s) => {
            composition_series(&m.submodule(&s), rng, out)?;
            composition_series(&m.quotient(&s), rng, out)?;
        }
    }
    Ok(())
}

/// Number of random nonzero vectors out of `count` that spin the whole
/// module.
pub fn spin_certificate<R: Rng>(m: &ModuleAction, count: usize, rng: &mut R) -> usize {
    let f = m.field();
    (0..count)
        .filter(|_| {
            let v: Vec<u32> = loop {
                let v: Vec<u32> = (0..m.dim()).map(|_| f.random(rng)).collect();
                if v.iter().any(|&c| c != 0) {
                    break v;
                }
            };
            spin(m, &v).map(|s| s.is_full()).unwrap_or(false)
        })
        .count()
}

/// Composition factors of `m` up to isomorphism, with multiplicities.
/// Deterministic for a given seed.
pub fn chop(m: &ModuleAction, seed: u64) -> Result<ChopResult, RepnError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pieces = Vec::new();
    if m.dim() > 0 {
        composition_series(m, &mut rng, &mut pieces)?;
    }
    let mut classes: Vec<Factor> = Vec::new();
    for piece in pieces {
        let known = classes
            .iter_mut()
            .find(|c| c.dim == piece.dim() && hom_dim(&c.module, &piece) > 0);
        match known {
            Some(c) => c.multiplicity += 1,
            None => {
                let e = endo_degree(&piece);
                let passed = spin_certificate(&piece, CERT_VECTORS, &mut rng);
                classes.push(Factor {
                    dim: piece.dim(),
                    multiplicity: 1,
                    endo_degree: e,
                    abs_dim: piece.dim() / e,
                    norton: true,
                    spin_passed: passed,
                    spin_tried: CERT_VECTORS,
                    module: piece,
                });
            }
        }
    }
    classes.sort_by_key(|c| (c.dim, c.endo_degree));
    Ok(ChopResult {
        module_dim: m.dim(),
        seed,
        factors: classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::env::{reduced_algebra, reduced_algebra_with};
    use crate::field::Field;
    use crate::liealg::{abelian, family_build, heisenberg, FamilyMember, PPolynomial};

    #[test]
    fn truncated_ring_has_one_factor() {
        let f3 = Field::prime(3).unwrap();
        let a = abelian(&f3, 1);
        let r = reduced_algebra_with(&a, vec![PPolynomial::new(&f3, vec![0, 1])], &[1]).unwrap();
        let res = chop(&ModuleAction::regular(&r), 1).unwrap();
        assert_eq!(res.factors.len(), 1);
        assert_eq!((res.factors[0].dim, res.factors[0].multiplicity), (1, 3));
        assert!(res.accounting_ok() && res.all_certified());
    }

    #[test]
    fn companion_matrix_is_field_type() {
        let f2 = Field::prime(2).unwrap();
        // t^2 + t + 1
        let c = Matrix::from_rows(&f2, &[vec![0, 1], vec![1, 1]]);
        let m = ModuleAction::new(&f2, 2, vec![c]).unwrap();
        let res = chop(&m, 0).unwrap();
        assert_eq!(res.factors.len(), 1);
        let fac = &res.factors[0];
        assert_eq!(
            (fac.dim, fac.multiplicity, fac.endo_degree, fac.abs_dim),
            (2, 1, 2, 1)
        );
    }

    #[test]
    fn heisenberg_control() {
        let f2 = Field::prime(2).unwrap();
        let h = heisenberg(&f2);
        let r = reduced_algebra(&h, &[0, 0, 1]).unwrap();
        let res = chop(&ModuleAction::regular(&r), 3).unwrap();
        assert!(res.accounting_ok() && res.all_certified());
        assert_eq!(res.max_abs_dim(), 2);
        // the T^p variant of dimension 8 agrees
        let tp = PPolynomial::new(&f2, vec![0, 1]);
        let r8 = reduced_algebra_with(&h, vec![tp; 3], &[0, 0, 1]).unwrap();
        let res8 = chop(&ModuleAction::regular(&r8), 3).unwrap();
        assert_eq!(r8.dim(), 8);
        assert!(res8.accounting_ok());
        assert_eq!(res8.max_abs_dim(), 2);
    }

    #[test]
    fn family_all_ones_character() {
        let l = family_build(2, 1, 3, FamilyMember::L).unwrap();
        let r = reduced_algebra(&l, &[1, 1, 1, 1, 1]).unwrap();
        let res = chop(&ModuleAction::regular(&r), 11).unwrap();
        assert!(res.accounting_ok() && res.all_certified());
        assert!(res.factors.iter().all(|f| f.abs_dim % 4 == 0));
        assert_eq!(res.max_abs_dim(), 4);
    }

    #[test]
    fn deterministic() {
        let l = family_build(3, 1, 3, FamilyMember::L).unwrap();
        let r = reduced_algebra(&l, &[1, 2, 0, 1, 1]).unwrap();
        let m = ModuleAction::regular(&r);
        assert_eq!(chop(&m, 5).unwrap(), chop(&m, 5).unwrap());
        let a = chop(&m, 5).unwrap();
        let b = chop(&m, 6).unwrap();
        assert_eq!(a.summary(), b.summary());
    }
}
