use std::fmt::Write as _;
use std::sync::Arc;

use crate::field::Field;
use crate::liealg::{central_p_polynomial, LieAlgebra, PPolynomial};
use crate::linalg::Matrix;

use super::EnvError;

/// Sparse column: `(row, value)` pairs.
type Sparse = Vec<(usize, u32)>;

/// `U(L) / (f_e(e) - μ_e : e basis)`, realized by its left regular action.
///
/// Basis: monomials `e_1^{a_1} ... e_n^{a_n}` with `a_i < p^{r_i}`, indexed
/// in mixed radix with the first basis element varying fastest.
#[derive(Clone, Debug)]
pub struct ReducedAlgebra {
    alg: Arc<LieAlgebra>,
    polys: Vec<PPolynomial>,
    mu: Vec<u32>,
    bounds: Vec<usize>,
    strides: Vec<usize>,
    dim: usize,
    gens: Vec<Matrix>,
}

/// Dimension the reduced algebra of `alg` would have.
pub fn reduced_dim(alg: &LieAlgebra) -> u128 {
    (0..alg.dim())
        .map(|i| central_p_polynomial(alg, i).degree() as u128)
        .product()
}

/// `μ_e = f_e(χ(e))` for each basis element.
pub fn mu_from_chi(alg: &LieAlgebra, chi: &[u32]) -> Result<Vec<u32>, EnvError> {
    if chi.len() != alg.dim() {
        return Err(EnvError::BadCharacter {
            expected: alg.dim(),
            got: chi.len(),
        });
    }
    Ok((0..alg.dim())
        .map(|i| central_p_polynomial(alg, i).eval(chi[i]))
        .collect())
}

/// Reduced algebra using the minimal central p-polynomial of each basis
/// element.
pub fn reduced_algebra(alg: &LieAlgebra, mu: &[u32]) -> Result<ReducedAlgebra, EnvError> {
    let polys: Vec<PPolynomial> = (0..alg.dim())
        .map(|i| central_p_polynomial(alg, i))
        .collect();
    reduced_algebra_with(alg, polys, mu)
}

/// Reduced algebra for caller-chosen p-polynomials; each must annihilate
/// `ad` of its basis element.
pub fn reduced_algebra_with(
    alg: &LieAlgebra,
    polys: Vec<PPolynomial>,
    mu: &[u32],
) -> Result<ReducedAlgebra, EnvError> {
    let n = alg.dim();
    if mu.len() != n || polys.len() != n {
        return Err(EnvError::BadCharacter {
            expected: n,
            got: mu.len().min(polys.len()),
        });
    }
    if let Some(i) = (0..n).find(|&i| !polys[i].eval_matrix(&alg.ad_basis(i)).is_zero()) {
        return Err(EnvError::NotCentral(alg.name(i).to_string()));
    }
    let f = alg.field().clone();
    let bounds: Vec<usize> = polys.iter().map(|g| g.degree() as usize).collect();
    let mut strides = vec![1usize; n];
    for i in 1..n {
        strides[i] = strides[i - 1] * bounds[i - 1];
    }
    let dim = strides.last().map_or(1, |&s| s * bounds[n - 1]);
    let p = f.characteristic() as usize;

    let exps = |m: usize| -> Vec<usize> { (0..n).map(|i| (m / strides[i]) % bounds[i]).collect() };
    let first = |m: usize| (0..n).find(|&i| !(m / strides[i]).is_multiple_of(bounds[i]));

    // e_j * m when e_j is already in order in front of m
    let base = |j: usize, m: usize| -> Sparse {
        let a = (m / strides[j]) % bounds[j];
        if a + 1 < bounds[j] {
            return vec![(m + strides[j], 1)];
        }
        // e^{p^r} = μ - sum λ_l e^{p^l}
        let rest = m - a * strides[j];
        let mut out = Vec::new();
        if mu[j] != 0 {
            out.push((rest, mu[j]));
        }
        let mut pl = 1;
        for &lam in polys[j].tail().iter() {
            if lam != 0 {
                out.push((rest + pl * strides[j], f.neg(lam)));
            }
            pl *= p;
        }
        out
    };

    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by_key(|&m| exps(m).iter().sum::<usize>());
    let mut cols: Vec<Vec<Option<Sparse>>> = vec![vec![None; dim]; n];
    let mut acc = vec![0u32; dim];
    let mut touched: Vec<usize> = Vec::new();
    for &m in &order {
        for j in 0..n {
            let col = match first(m) {
                Some(i) if i < j => {
                    // e_j e_i m' = e_i (e_j m') + [e_j, e_i] m'
                    let rest = m - strides[i];
                    let mut add = |u: usize, c: u32| {
                        if acc[u] == 0 {
                            touched.push(u);
                        }
                        acc[u] = f.add(acc[u], c);
                    };
                    for &(t, c) in cols[j][rest].as_ref().expect("lower degree done") {
                        let prod = match first(t) {
                            Some(ft) if ft < i => cols[i][t].clone().expect("lower degree done"),
                            _ => base(i, t),
                        };
                        for (u, d) in prod {
                            add(u, f.mul(c, d));
                        }
                    }
                    for (k, &c) in alg.basis_bracket(j, i).iter().enumerate() {
                        if c == 0 {
                            continue;
                        }
                        for &(u, d) in cols[k][rest].as_ref().expect("lower degree done") {
                            add(u, f.mul(c, d));
                        }
                    }
                    touched.sort_unstable();
                    touched.dedup();
                    let out: Sparse = touched
                        .iter()
                        .filter(|&&u| acc[u] != 0)
                        .map(|&u| (u, acc[u]))
                        .collect();
                    for &u in &touched {
                        acc[u] = 0;
                    }
                    touched.clear();
                    out
                }
                _ => base(j, m),
            };
            cols[j][m] = Some(col);
        }
    }

    let gens = cols
        .into_iter()
        .map(|columns| {
            let mut mat = Matrix::zeros(&f, dim, dim);
            for (m, col) in columns.into_iter().enumerate() {
                for (u, c) in col.expect("filled") {
                    mat.set(u, m, c);
                }
            }
            mat
        })
        .collect();
    Ok(ReducedAlgebra {
        alg: Arc::new(alg.clone()),
        polys,
        mu: mu.to_vec(),
        bounds,
        strides,
        dim,
        gens,
    })
}

impl ReducedAlgebra {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.alg
    }

    pub fn field(&self) -> &Field {
        self.alg.field()
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.gens
    }

    pub fn into_generators(self) -> Vec<Matrix> {
        self.gens
    }

    pub fn polynomials(&self) -> &[PPolynomial] {
        &self.polys
    }

    pub fn mu(&self) -> &[u32] {
        &self.mu
    }

    /// Exponent bound `p^{r_e}` per basis element.
    pub fn bounds(&self) -> &[usize] {
        &self.bounds
    }

    pub fn monomial_index(&self, exps: &[usize]) -> usize {
        exps.iter().zip(&self.strides).map(|(&a, &s)| a * s).sum()
    }

    pub fn monomial(&self, m: usize) -> Vec<usize> {
        self.strides
            .iter()
            .zip(&self.bounds)
            .map(|(&s, &b)| (m / s) % b)
            .collect()
    }

    /// `M_i M_j - M_j M_i = sum_k c_{ij}^k M_k` for all pairs.
    pub fn check_relations(&self) -> bool {
        let n = self.alg.dim();
        (0..n).all(|i| {
            (i + 1..n).all(|j| {
                let lhs = self.gens[i].commutator(&self.gens[j]);
                let mut rhs = Matrix::zeros(self.field(), self.dim, self.dim);
                for (k, &c) in self.alg.basis_bracket(i, j).iter().enumerate() {
                    if c != 0 {
                        rhs.add_scaled(&self.gens[k], c);
                    }
                }
                lhs == rhs
            })
        })
    }

    /// `f_e(M_e) = μ_e Id` for every basis element.
    pub fn check_central(&self) -> bool {
        self.polys
            .iter()
            .zip(&self.gens)
            .zip(&self.mu)
            .all(|((g, m), &mu)| g.eval_matrix(m) == Matrix::scalar(self.field(), self.dim, mu))
    }

    pub fn to_text(&self) -> String {
        write_generators(self.field(), self.alg.names(), &self.gens)
    }
}

/// Text form of a list of square matrices:
///
/// ```text
/// dim: N
/// field: p m [modulus c0,c1,...]
/// generators: g
/// gen NAME
/// <N rows of N whitespace-separated element strings>
/// ...
/// ```
pub fn write_generators(field: &Field, names: &[String], mats: &[Matrix]) -> String {
    let dim = mats.first().map_or(0, Matrix::rows);
    let mut s = String::new();
    writeln!(s, "dim: {dim}").unwrap();
    if field.is_prime_field() {
        writeln!(s, "field: {} 1", field.characteristic()).unwrap();
    } else {
        let modulus: Vec<String> = field.modulus().iter().map(|c| c.to_string()).collect();
        writeln!(
            s,
            "field: {} {} modulus {}",
            field.characteristic(),
            field.degree(),
            modulus.join(",")
        )
        .unwrap();
    }
    writeln!(s, "generators: {}", mats.len()).unwrap();
    for (name, m) in names.iter().zip(mats) {
        writeln!(s, "gen {name}").unwrap();
        for r in 0..m.rows() {
            let row: Vec<String> = m.row(r).iter().map(|&c| field.format(c)).collect();
            writeln!(s, "{}", row.join(" ")).unwrap();
        }
    }
    s
}

pub fn parse_generators(text: &str) -> Result<(Field, Vec<String>, Vec<Matrix>), EnvError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let mut next = |what: &str| {
        lines
            .next()
            .map(|(i, l)| (i + 1, l.trim()))
            .ok_or_else(|| EnvError::Parse(format!("unexpected end of input, expected {what}")))
    };
    let err = |line: usize, msg: &str| EnvError::Parse(format!("line {line}: {msg}"));
    let header = |line: (usize, &str), key: &str| -> Result<String, EnvError> {
        line.1
            .strip_prefix(key)
            .and_then(|r| r.strip_prefix(':'))
            .map(|r| r.trim().to_string())
            .ok_or_else(|| err(line.0, &format!("expected `{key}:`")))
    };
    let num = |line: usize, s: &str| {
        s.parse::<usize>()
            .map_err(|_| err(line, &format!("bad number {s:?}")))
    };

    let l = next("dim")?;
    let dim = num(l.0, &header(l, "dim")?)?;
    let l = next("field")?;
    let fs = header(l, "field")?;
    let parts: Vec<&str> = fs.split_whitespace().collect();
    let field = match parts.as_slice() {
        [p, m] => Field::new(num(l.0, p)? as u64, num(l.0, m)?, None),
        [p, m, "modulus", coeffs] => {
            let c: Result<Vec<u32>, _> = coeffs
                .split(',')
                .map(|x| num(l.0, x).map(|v| v as u32))
                .collect();
            Field::new(num(l.0, p)? as u64, num(l.0, m)?, Some(&c?))
        }
        _ => return Err(err(l.0, "expected `field: p m [modulus c0,...]`")),
    }
    .map_err(|e| err(l.0, &e.to_string()))?;
    let l = next("generators")?;
    let g = num(l.0, &header(l, "generators")?)?;
    let mut names = Vec::with_capacity(g);
    let mut mats = Vec::with_capacity(g);
    for _ in 0..g {
        let l = next("gen")?;
        let name =
            l.1.strip_prefix("gen ")
                .ok_or_else(|| err(l.0, "expected `gen NAME`"))?;
        names.push(name.trim().to_string());
        let mut data = Vec::with_capacity(dim * dim);
        for _ in 0..dim {
            let l = next("matrix row")?;
            let row: Vec<&str> = l.1.split_whitespace().collect();
            if row.len() != dim {
                return Err(err(
                    l.0,
                    &format!("expected {dim} entries, found {}", row.len()),
                ));
            }
            for x in row {
                data.push(field.parse(x).map_err(|e| err(l.0, &e.to_string()))?);
            }
        }
        mats.push(Matrix::from_flat(&field, dim, dim, data));
    }
    if let Some(l) = lines.next() {
        return Err(err(l.0 + 1, "trailing input"));
    }
    Ok((field, names, mats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::env::{Monomial, PbwElement};
    use crate::liealg::{abelian, family_build, heisenberg, FamilyMember};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn basis_vector(n: usize, i: usize) -> Vec<u32> {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    }

    /// Applies a PBW monomial to the class of 1 through the generator
    /// matrices, rightmost factor first.
    fn act(r: &ReducedAlgebra, exps: &[u32], v: &[u32]) -> Vec<u32> {
        let mut w = v.to_vec();
        for (i, &e) in exps.iter().enumerate().rev() {
            for _ in 0..e {
                w = r.generators()[i].mul_vec(&w);
            }
        }
        w
    }

    #[test]
    fn truncated_polynomial_ring() {
        let f3 = Field::prime(3).unwrap();
        let a = abelian(&f3, 1);
        let r = reduced_algebra(&a, &[2]).unwrap();
        assert_eq!(r.dim(), 1);
        // f = T for a central element, so e acts as the scalar μ
        assert_eq!(r.generators()[0].get(0, 0), 2);
        // with f = T^p instead: F[x]/(x^3 - 2)
        let r = reduced_algebra_with(&a, vec![PPolynomial::new(&f3, vec![0, 1])], &[2]).unwrap();
        assert_eq!(r.dim(), 3);
        let x = &r.generators()[0];
        assert_eq!(x.pow(3).unwrap(), Matrix::scalar(&f3, 3, 2));
        assert!(r.check_relations() && r.check_central());
        let bad = reduced_algebra_with(
            &heisenberg(&f3),
            vec![PPolynomial::new(&f3, vec![1]); 3],
            &[0; 3],
        );
        assert_eq!(bad.unwrap_err(), EnvError::NotCentral("x".into()));
    }

    #[test]
    fn heisenberg_with_restricted_center() {
        let f2 = Field::prime(2).unwrap();
        let h = heisenberg(&f2);
        let tp = PPolynomial::new(&f2, vec![0, 1]);
        let r = reduced_algebra_with(&h, vec![tp; 3], &[0, 0, 1]).unwrap();
        assert_eq!(r.dim(), 8);
        assert!(r.check_relations() && r.check_central());
    }

    #[test]
    fn dimensions() {
        let f2 = Field::prime(2).unwrap();
        let h = heisenberg(&f2);
        let r = reduced_algebra(&h, &[0, 0, 1]).unwrap();
        assert_eq!(r.bounds(), &[2, 2, 1]);
        assert_eq!(r.dim(), 4);
        assert_eq!(reduced_dim(&h), 4);
        let l = family_build(2, 1, 3, FamilyMember::L).unwrap();
        let r = reduced_algebra(&l, &[1, 0, 1, 1, 0]).unwrap();
        // x3 and D0 are central, so both get f = T
        assert_eq!(r.bounds(), &[2, 2, 1, 1, 4]);
        assert_eq!(r.dim(), 16);
        let lp = family_build(2, 1, 3, FamilyMember::Lprime).unwrap();
        assert_eq!(reduced_dim(&lp), 32);
    }

    #[test]
    fn relations_hold() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let cases = [
            family_build(2, 1, 3, FamilyMember::L).unwrap(),
            family_build(2, 1, 3, FamilyMember::Lprime).unwrap(),
            family_build(3, 1, 3, FamilyMember::L).unwrap(),
            family_build(2, 2, 3, FamilyMember::L).unwrap(),
            heisenberg(&Field::prime(3).unwrap()),
        ];
        for alg in cases {
            for _ in 0..3 {
                let mu: Vec<u32> = (0..alg.dim())
                    .map(|_| alg.field().random(&mut rng))
                    .collect();
                let r = reduced_algebra(&alg, &mu).unwrap();
                assert!(r.check_relations(), "{alg:?}");
                assert!(r.check_central(), "{alg:?}");
            }
        }
    }

    #[test]
    fn basis_is_ordered_monomials() {
        let l = family_build(2, 1, 3, FamilyMember::L).unwrap();
        let r = reduced_algebra(&l, &[1, 1, 1, 1, 1]).unwrap();
        let one = basis_vector(r.dim(), 0);
        for m in 0..r.dim() {
            let exps: Vec<u32> = r.monomial(m).iter().map(|&e| e as u32).collect();
            assert_eq!(r.monomial_index(&r.monomial(m)), m);
            assert_eq!(act(&r, &exps, &one), basis_vector(r.dim(), m));
        }
    }

    #[test]
    fn agrees_with_pbw_products() {
        // PBW products of normal monomials whose result stays below the
        // exponent bounds must match the regular action exactly
        let l = Arc::new(family_build(3, 1, 3, FamilyMember::L).unwrap());
        let r = reduced_algebra(&l, &[0, 2, 1, 1, 2]).unwrap();
        let one = basis_vector(r.dim(), 0);
        let small: Vec<Vec<u32>> = vec![
            vec![0, 0, 0, 0, 1],
            vec![1, 0, 0, 0, 1],
            vec![0, 1, 0, 0, 2],
            vec![1, 1, 0, 0, 0],
        ];
        for a in &small {
            for b in &small {
                let ea = PbwElement::from_terms(&l, 8, [(Monomial::from_exponents(a.clone()), 1)])
                    .unwrap();
                let eb = PbwElement::from_terms(&l, 8, [(Monomial::from_exponents(b.clone()), 1)])
                    .unwrap();
                let prod = ea.mul(&eb).unwrap();
                let mut via_pbw = vec![0; r.dim()];
                for (m, &c) in prod.terms() {
                    let exps = m.exponents();
                    let fits = exps
                        .iter()
                        .zip(r.bounds())
                        .all(|(&e, &bd)| (e as usize) < bd);
                    let v = if fits {
                        basis_vector(
                            r.dim(),
                            r.monomial_index(&exps.iter().map(|&e| e as usize).collect::<Vec<_>>()),
                        )
                    } else {
                        act(&r, exps, &one)
                    };
                    for (x, y) in via_pbw.iter_mut().zip(v) {
                        *x = l.field().mul_add(c, y, *x);
                    }
                }
                let direct = act(&r, a, &act(&r, b, &one));
                assert_eq!(via_pbw, direct);
            }
        }
    }

    #[test]
    fn character_conversion() {
        let l = family_build(3, 1, 3, FamilyMember::L).unwrap();
        let f = l.field().clone();
        let chi = [1, 2, 0, 2, 2];
        let mu = mu_from_chi(&l, &chi).unwrap();
        let d = 2u32;
        assert_eq!(mu[..3], [1, 2, 0]);
        assert_eq!(mu[3], 2);
        assert_eq!(mu[4], f.sub(f.pow(d, 9), f.pow(d, 3)));
        assert!(mu_from_chi(&l, &[1]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let l = family_build(2, 2, 3, FamilyMember::L).unwrap();
        let r = reduced_algebra(&l, &[1, 2, 3, 1, 0]).unwrap();
        let text = r.to_text();
        assert!(text.starts_with("dim: 16\nfield: 2 2 modulus 1,1,1\ngenerators: 5\ngen x1\n"));
        let (field, names, mats) = parse_generators(&text).unwrap();
        assert_eq!(&field, l.field());
        assert_eq!(names, l.names());
        assert_eq!(mats, r.generators());
        assert!(parse_generators("dim: 2\nfield: 2 1\ngenerators: 1\ngen a\n0 1\n").is_err());
    }
}
