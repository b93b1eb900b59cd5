use crate::linalg::{Matrix, Subspace};

use super::{chop, spin_tree, ModuleAction};

/// `dim Hom(a, b)` over the base field.
///
/// When `a` is generated by its first unit vector, a module map is fixed by
/// the image `y` of that vector, propagated along the spin tree; the
/// remaining relations give a linear system in `y`. Otherwise falls back to
/// the full commutation system.
pub fn hom_dim(a: &ModuleAction, b: &ModuleAction) -> usize {
    assert_eq!(a.field(), b.field());
    assert_eq!(a.generators().len(), b.generators().len());
    let (na, nb) = (a.dim(), b.dim());
    if na == 0 || nb == 0 {
        return 0;
    }
    let f = a.field();
    let mut v = vec![0; na];
    v[0] = 1;
    let tree = spin_tree(a, &v).expect("nonzero vector");
    if !tree.span.is_full() {
        return hom_dim_full(a, b);
    }
    let u = Matrix::from_columns(f, na, &tree.vectors);
    let uinv = u.inverse().expect("spin basis is a basis");
    // X(u_t) = w[t] * y
    let mut w: Vec<Matrix> = Vec::with_capacity(na);
    for edge in &tree.edges {
        match edge {
            None => w.push(Matrix::identity(f, nb)),
            Some((parent, g)) => {
                let next = b.generators()[*g].mul(&w[*parent]);
                w.push(next);
            }
        }
    }
    let mut rows = Subspace::new(f, nb);
    'outer: for t in 0..na {
        for (gi, (ag, bg)) in a.generators().iter().zip(b.generators()).enumerate() {
            if tree.edges.contains(&Some((t, gi))) {
                continue;
            }
            let kappa = uinv.mul_vec(&ag.mul_vec(&tree.vectors[t]));
            let mut c = bg.mul(&w[t]);
            for (s, &k) in kappa.iter().enumerate() {
                if k != 0 {
                    c.add_scaled(&w[s], f.neg(k));
                }
            }
            for r in 0..nb {
                rows.insert(c.row(r).to_vec());
                if rows.is_full() {
                    break 'outer;
                }
            }
        }
    }
    nb - rows.dim()
}

/// `dim Hom(a, b)` from the `nb * na` unknowns of `X a_g = b_g X`.
pub(crate) fn hom_dim_full(a: &ModuleAction, b: &ModuleAction) -> usize {
    let f = a.field();
    let (na, nb) = (a.dim(), b.dim());
    let unknowns = nb * na;
    let mut rows = Subspace::new(f, unknowns);
    for (ag, bg) in a.generators().iter().zip(b.generators()) {
        // (X a_g - b_g X)[i][j] = sum_k X[i][k] a_g[k][j] - sum_k b_g[i][k] X[k][j]
        for i in 0..nb {
            for j in 0..na {
                let mut row = vec![0; unknowns];
                for k in 0..na {
                    let c = ag.get(k, j);
                    if c != 0 {
                        row[i * na + k] = f.add(row[i * na + k], c);
                    }
                }
                for k in 0..nb {
                    let c = bg.get(i, k);
                    if c != 0 {
                        row[k * na + j] = f.sub(row[k * na + j], c);
                    }
                }
                rows.insert(row);
            }
        }
    }
    unknowns - rows.dim()
}

/// Degree over the base field of the endomorphism field of an irreducible
/// module.
pub fn endo_degree(m: &ModuleAction) -> usize {
    hom_dim(m, m)
}

/// `(e, dim / e)` for an irreducible module.
pub fn absolute_dims(m: &ModuleAction) -> (usize, usize) {
    let e = endo_degree(m);
    (e, m.dim() / e)
}

/// Extends scalars to the degree-`e` extension and re-chops: an irreducible
/// module with endomorphism degree `e` must break into exactly `e`
/// absolutely irreducible factors of dimension `dim / e`.
pub fn verify_absolute(m: &ModuleAction, seed: u64) -> bool {
    let (e, abs) = absolute_dims(m);
    if e == 1 {
        return true;
    }
    let target = m.field().extension(e).expect("extension field");
    let emb = m.field().embedding_into(&target).expect("embedding");
    let Ok(res) = chop(&m.embed(&emb), seed) else {
        return false;
    };
    let count: usize = res.factors.iter().map(|f| f.multiplicity).sum();
    count == e
        && res
            .factors
            .iter()
            .all(|f| f.dim == abs && f.endo_degree == 1)
}
