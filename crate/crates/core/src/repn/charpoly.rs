use crate::field::Field;
use crate::linalg::Matrix;
use crate::poly::UniPoly;

/// Upper Hessenberg form similar to `a`.
pub fn hessenberg(a: &Matrix) -> Matrix {
    assert!(a.is_square());
    let f = a.field().clone();
    let n = a.rows();
    let mut h = a.clone();
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| h.get(i, j) != 0) else {
            continue;
        };
        if piv != j + 1 {
            for c in 0..n {
                let (x, y) = (h.get(piv, c), h.get(j + 1, c));
                h.set(piv, c, y);
                h.set(j + 1, c, x);
            }
            for r in 0..n {
                let (x, y) = (h.get(r, piv), h.get(r, j + 1));
                h.set(r, piv, y);
                h.set(r, j + 1, x);
            }
        }
        let inv = f.inv(h.get(j + 1, j)).expect("pivot is nonzero");
        for i in j + 2..n {
            let u = f.mul(h.get(i, j), inv);
            if u == 0 {
                continue;
            }
            // row_i -= u row_{j+1}, then col_{j+1} += u col_i
            let neg = f.neg(u);
            for c in 0..n {
                let v = f.mul_add(neg, h.get(j + 1, c), h.get(i, c));
                h.set(i, c, v);
            }
            for r in 0..n {
                let v = f.mul_add(u, h.get(r, i), h.get(r, j + 1));
                h.set(r, j + 1, v);
            }
        }
    }
    h
}

/// Characteristic polynomial `det(x I - a)`, monic.
pub fn charpoly(a: &Matrix) -> UniPoly {
    let f = a.field().clone();
    let n = a.rows();
    let h = hessenberg(a);
    // p_m = (x - h_mm) p_{m-1} - sum_{i<m} h_{i,m} (prod_{j=i+1}^{m} h_{j,j-1}) p_{i-1}
    let mut ps: Vec<UniPoly> = vec![UniPoly::one()];
    for m in 0..n {
        let lin = UniPoly::from_coeffs(vec![f.neg(h.get(m, m)), 1]);
        let mut next = lin.mul(&f, &ps[m]);
        let mut prod = 1;
        for i in (0..m).rev() {
            prod = f.mul(prod, h.get(i + 1, i));
            if prod == 0 {
                break;
            }
            let c = f.mul(h.get(i, m), prod);
            if c != 0 {
                next = next.sub(&f, &ps[i].scale(&f, c));
            }
        }
        ps.push(next);
    }
    ps.pop().unwrap()
}

/// `g(a)` by Horner's rule.
pub fn eval_poly_matrix(field: &Field, g: &UniPoly, a: &Matrix) -> Matrix {
    let n = a.rows();
    let mut acc = Matrix::zeros(field, n, n);
    for &c in g.coeffs().iter().rev() {
        acc = acc.mul(a);
        if c != 0 {
            for i in 0..n {
                let v = field.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Determinant by elimination, as an oracle.
    fn det(m: &Matrix) -> u32 {
        let f = m.field().clone();
        let n = m.rows();
        let mut a = m.clone();
        let mut d = 1;
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| a.get(r, c) != 0) else {
                return 0;
            };
            if p != c {
                for j in 0..n {
                    let (x, y) = (a.get(p, j), a.get(c, j));
                    a.set(p, j, y);
                    a.set(c, j, x);
                }
                d = f.neg(d);
            }
            let piv = a.get(c, c);
            d = f.mul(d, piv);
            let inv = f.inv(piv).unwrap();
            for r in c + 1..n {
                let u = f.neg(f.mul(a.get(r, c), inv));
                for j in 0..n {
                    let v = f.mul_add(u, a.get(c, j), a.get(r, j));
                    a.set(r, j, v);
                }
            }
        }
        d
    }

    #[test]
    fn matches_determinant_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for (p, m) in [(2, 1), (3, 1), (2, 3), (5, 1)] {
            let f = Field::new(p, m, None).unwrap();
            for n in 1..7 {
                let a = Matrix::random(&f, n, n, &mut rng);
                let cp = charpoly(&a);
                assert_eq!(cp.degree(), Some(n));
                for x in f.elements().take(8) {
                    let xi = Matrix::scalar(&f, n, x);
                    assert_eq!(cp.eval(&f, x), det(&xi.sub(&a)));
                }
                // Cayley-Hamilton
                assert!(eval_poly_matrix(&f, &cp, &a).is_zero());
            }
        }
    }

    #[test]
    fn hessenberg_is_similar_and_shaped() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f = Field::prime(7).unwrap();
        let a = Matrix::random(&f, 6, 6, &mut rng);
        let h = hessenberg(&a);
        for i in 0..6usize {
            for j in 0..i.saturating_sub(1) {
                assert_eq!(h.get(i, j), 0);
            }
        }
        assert_eq!(charpoly(&h), charpoly(&a));
    }
}
