use crate::field::Field;

/// Subspace of `F^n` held as a reduced row echelon basis, so two subspaces
/// are equal iff their bases are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(field: &Field, ambient: usize) -> Subspace {
        Subspace {
            field: field.clone(),
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors<I>(field: &Field, ambient: usize, vectors: I) -> Subspace
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        let mut s = Subspace::new(field, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its projection onto the pivot coordinates.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.ambient);
        let f = &self.field;
        let mut w = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = w[pc];
            if c == 0 {
                continue;
            }
            let neg = f.neg(c);
            for (x, &r) in w.iter_mut().zip(row).skip(pc) {
                if r != 0 {
                    *x = f.mul_add(r, neg, *x);
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Coordinates of a member vector in the echelon basis.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc]).collect())
    }

    /// Adds `v`; returns `true` if the dimension grew.
    pub fn insert(&mut self, v: Vec<u32>) -> bool {
        let f = self.field.clone();
        let mut w = self.reduce(&v);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(w[pc]).expect("nonzero");
        for x in w.iter_mut() {
            *x = f.mul(*x, inv);
        }
        // clear the new pivot column from existing rows
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c == 0 {
                continue;
            }
            let neg = f.neg(c);
            for (x, &r) in row.iter_mut().zip(&w).skip(pc) {
                if r != 0 {
                    *x = f.mul_add(r, neg, *x);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < pc);
        self.pivots.insert(at, pc);
        self.rows.insert(at, w);
        true
    }

    /// Non-pivot coordinates, which index a basis of the quotient space.
    pub fn complement_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// Vectors orthogonal to every basis vector under the standard pairing.
    pub fn annihilator(&self) -> Subspace {
        let m = super::Matrix::from_rows(&self.field, &self.rows);
        let kernel = if self.rows.is_empty() {
            (0..self.ambient)
                .map(|i| {
                    let mut v = vec![0; self.ambient];
                    v[i] = 1;
                    v
                })
                .collect()
        } else {
            m.nullspace()
        };
        Subspace::from_vectors(&self.field, self.ambient, kernel)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_basis() {
        let f = Field::prime(5).unwrap();
        let a = Subspace::from_vectors(&f, 3, vec![vec![1, 2, 3], vec![0, 1, 1]]);
        let b = Subspace::from_vectors(&f, 3, vec![vec![1, 3, 4], vec![2, 4, 1], vec![1, 2, 3]]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert_eq!(a.basis(), &[vec![1, 0, 1], vec![0, 1, 1]]);
        assert_eq!(a.complement_columns(), vec![2]);
        assert_eq!(a.coordinates(&[2, 3, 0]), Some(vec![2, 3]));
        assert_eq!(a.coordinates(&[0, 0, 1]), None);
    }

    #[test]
    fn annihilator_dimension() {
        let f = Field::prime(3).unwrap();
        let a = Subspace::from_vectors(&f, 4, vec![vec![1, 1, 0, 0]]);
        let ann = a.annihilator();
        assert_eq!(ann.dim(), 3);
        for v in ann.basis() {
            let dot = v
                .iter()
                .zip(&a.basis()[0])
                .fold(0, |acc, (&x, &y)| f.mul_add(x, y, acc));
            assert_eq!(dot, 0);
        }
        assert_eq!(Subspace::new(&f, 2).annihilator().dim(), 2);
    }
}
