use std::fmt;

use rand::Rng;

use super::LinalgError;
use crate::field::{Embedding, Field};

/// Dense row-major matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|&a| self.field.format(a)).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn scalar(field: &Field, n: usize, c: u32) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    pub fn from_rows(field: &Field, rows: &[Vec<u32>]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            field: field.clone(),
            rows: r,
            cols: c,
            data: rows.concat(),
        }
    }

    pub fn from_flat(field: &Field, rows: usize, cols: usize, data: Vec<u32>) -> Matrix {
        assert_eq!(rows * cols, data.len());
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &Field, rows: usize, columns: &[Vec<u32>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, &v) in col.iter().enumerate() {
                m.data[i * m.cols + j] = v;
            }
        }
        m
    }

    pub fn random<R: Rng + ?Sized>(field: &Field, rows: usize, cols: usize, rng: &mut R) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: (0..rows * cols).map(|_| field.random(rng)).collect(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[u32] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&a| a == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.zip(other, |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.zip(other, |f, a, b| f.sub(a, b))
    }

    fn zip(&self, other: &Matrix, op: impl Fn(&Field, u32, u32) -> u32) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| op(f, a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &Matrix, c: u32) {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
        if c == 0 {
            return;
        }
        let f = &self.field;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = f.mul_add(b, c, *a);
        }
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::ShapeMismatch);
        }
        Ok(self.mul(other))
    }

    /// Product; panics when inner dimensions differ.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let f = &self.field;
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let mut out = vec![0u32; n * m];
        if f.is_prime_field() {
            let p = f.characteristic() as u64;
            // lazy reduction: (p-1)^2 * chunk fits in u64
            let chunk = (u64::MAX / ((p - 1) * (p - 1)).max(1)).max(1) as usize;
            let mut acc = vec![0u64; m];
            for i in 0..n {
                acc.iter_mut().for_each(|a| *a = 0);
                let mut pending = 0;
                for t in 0..k {
                    let a = self.data[i * k + t] as u64;
                    if a == 0 {
                        continue;
                    }
                    let row = &other.data[t * m..(t + 1) * m];
                    for (slot, &b) in acc.iter_mut().zip(row) {
                        *slot += a * b as u64;
                    }
                    pending += 1;
                    if pending + 1 >= chunk {
                        acc.iter_mut().for_each(|a| *a %= p);
                        pending = 0;
                    }
                }
                for (o, &a) in out[i * m..(i + 1) * m].iter_mut().zip(&acc) {
                    *o = (a % p) as u32;
                }
            }
        } else {
            for i in 0..n {
                let orow = &mut out[i * m..(i + 1) * m];
                for t in 0..k {
                    let a = self.data[i * k + t];
                    if a == 0 {
                        continue;
                    }
                    let row = &other.data[t * m..(t + 1) * m];
                    for (slot, &b) in orow.iter_mut().zip(row) {
                        if b != 0 {
                            *slot = f.add(*slot, f.mul(a, b));
                        }
                    }
                }
            }
        }
        Matrix {
            field: f.clone(),
            rows: n,
            cols: m,
            data: out,
        }
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "shape mismatch");
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r).iter().zip(v).fold(
                    0,
                    |acc, (&a, &b)| if b == 0 { acc } else { f.mul_add(a, b, acc) },
                )
            })
            .collect()
    }

    /// `v^T * self`
    pub fn vec_mul(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.rows, "shape mismatch");
        let f = &self.field;
        let mut out = vec![0; self.cols];
        for (r, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &a) in out.iter_mut().zip(self.row(r)) {
                *o = f.mul_add(a, c, *o);
            }
        }
        out
    }

    /// `self * other - other * self`
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn pow(&self, mut e: u64) -> Result<Matrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare);
        }
        let mut base = self.clone();
        let mut acc = Matrix::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// `self^{p^e}` by repeated p-th powering.
    pub fn p_power(&self, e: u32) -> Result<Matrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare);
        }
        let p = self.field.characteristic() as u64;
        let mut acc = self.clone();
        for _ in 0..e {
            acc = acc.pow(p)?;
        }
        Ok(acc)
    }

    /// In-place reduced row echelon form; returns pivot columns. Pivots are
    /// the first nonzero entry scanning columns left to right, rows top down.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.data[r * cols + c]).expect("nonzero pivot");
            for j in c..cols {
                self.data[r * cols + j] = f.mul(self.data[r * cols + j], inv);
            }
            let pivot_row: Vec<u32> = self.data[r * cols + c..(r + 1) * cols].to_vec();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * cols + c];
                if factor == 0 {
                    continue;
                }
                let neg = f.neg(factor);
                for (j, &pv) in pivot_row.iter().enumerate() {
                    if pv != 0 {
                        let idx = i * cols + c + j;
                        self.data[idx] = f.mul_add(pv, neg, self.data[idx]);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right null space, in reduced echelon form.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let f = &self.field;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let raw: Vec<Vec<u32>> = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0; self.cols];
                v[free] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(m.get(i, free));
                }
                v
            })
            .collect();
        super::Subspace::from_vectors(f, self.cols, raw)
            .basis()
            .to_vec()
    }

    /// Left null space: vectors `w` with `w^T * self = 0`.
    pub fn left_nullspace(&self) -> Vec<Vec<u32>> {
        self.transpose().nullspace()
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(&self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, 1);
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(&self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, aug.get(r, n + c));
            }
        }
        Some(inv)
    }

    /// Entrywise image under a field embedding.
    pub fn embed(&self, emb: &Embedding) -> Matrix {
        assert_eq!(&self.field, emb.source());
        Matrix {
            field: emb.target().clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| emb.map(a)).collect(),
        }
    }

    pub fn permute(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(&self.field, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.set(i, j, self.get(r, c));
            }
        }
        m
    }
}

/// Rank and right kernel basis (kernel in reduced echelon form).
pub fn rank_kernel(a: &Matrix) -> (usize, Vec<Vec<u32>>) {
    let kernel = a.nullspace();
    (a.cols - kernel.len(), kernel)
}

/// `a^{p^e}`.
pub fn mat_p_power(a: &Matrix, e: u32) -> Result<Matrix, LinalgError> {
    a.p_power(e)
}

/// Coordinates `c` with `sum c_i S_i = v`, or `None` when `v` is outside the
/// span. Free coordinates are set to zero.
pub fn solve_membership(v: &Matrix, span: &[Matrix]) -> Result<Option<Vec<u32>>, LinalgError> {
    if span
        .iter()
        .any(|s| (s.rows, s.cols) != (v.rows, v.cols) || s.field != v.field)
    {
        return Err(LinalgError::ShapeMismatch);
    }
    let columns: Vec<Vec<u32>> = span.iter().map(|s| s.data.clone()).collect();
    Ok(solve_columns(&v.field, &columns, &v.data))
}

/// Solves `sum c_i columns_i = target`.
pub fn solve_columns(field: &Field, columns: &[Vec<u32>], target: &[u32]) -> Option<Vec<u32>> {
    let len = target.len();
    let k = columns.len();
    let mut aug = Matrix::zeros(field, len, k + 1);
    for (j, col) in columns.iter().enumerate() {
        for (i, &v) in col.iter().enumerate() {
            aug.set(i, j, v);
        }
    }
    for (i, &v) in target.iter().enumerate() {
        aug.set(i, k, v);
    }
    let pivots = aug.rref();
    if pivots.last() == Some(&k) {
        return None;
    }
    let mut coords = vec![0; k];
    for (i, &c) in pivots.iter().enumerate() {
        coords[c] = aug.get(i, k);
    }
    Some(coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rank_kernel_examples() {
        let f5 = Field::prime(5).unwrap();
        let (r, k) = rank_kernel(&Matrix::identity(&f5, 3));
        assert_eq!((r, k.len()), (3, 0));
        let (r, k) = rank_kernel(&Matrix::zeros(&f5, 2, 4));
        assert_eq!((r, k.len()), (0, 4));
        let f2 = Field::prime(2).unwrap();
        let (r, k) = rank_kernel(&Matrix::from_rows(&f2, &[vec![0, 1], vec![0, 0]]));
        assert_eq!(r, 1);
        assert_eq!(k, vec![vec![1, 0]]);
    }

    #[test]
    fn kernel_vectors_annihilate_and_rank_is_permutation_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for field in [
            Field::prime(2).unwrap(),
            Field::prime(7).unwrap(),
            Field::new(3, 2, None).unwrap(),
        ] {
            for _ in 0..30 {
                let (r, c) = (rng.gen_range(1..7), rng.gen_range(1..7));
                // low rank product
                let inner = rng.gen_range(1..5);
                let a = Matrix::random(&field, r, inner, &mut rng)
                    .mul(&Matrix::random(&field, inner, c, &mut rng));
                let (rank, kernel) = rank_kernel(&a);
                assert_eq!(rank + kernel.len(), c);
                for v in &kernel {
                    assert!(a.mul_vec(v).iter().all(|&x| x == 0));
                }
                let mut rp: Vec<usize> = (0..r).collect();
                let mut cp: Vec<usize> = (0..c).collect();
                rp.shuffle(&mut rng);
                cp.shuffle(&mut rng);
                assert_eq!(a.permute(&rp, &cp).rank(), rank);
            }
        }
    }

    #[test]
    fn p_power_examples_and_naive_oracle() {
        let f2 = Field::prime(2).unwrap();
        let jordan = Matrix::from_rows(&f2, &[vec![0, 1], vec![0, 0]]);
        assert!(mat_p_power(&jordan, 1).unwrap().is_zero());
        let id = Matrix::identity(&f2, 3);
        assert_eq!(mat_p_power(&id, 3).unwrap(), id);
        assert_eq!(
            mat_p_power(&Matrix::zeros(&f2, 2, 3), 1),
            Err(LinalgError::NotSquare)
        );

        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for field in [
            Field::prime(3).unwrap(),
            Field::prime(5).unwrap(),
            Field::new(2, 2, None).unwrap(),
        ] {
            let p = field.characteristic() as u64;
            for _ in 0..10 {
                let a = Matrix::random(&field, 4, 4, &mut rng);
                for e in 0..3u32 {
                    let mut naive = Matrix::identity(&field, 4);
                    for _ in 0..p.pow(e) {
                        naive = naive.mul(&a);
                    }
                    assert_eq!(mat_p_power(&a, e).unwrap(), naive);
                }
            }
        }
    }

    #[test]
    fn membership() {
        let f3 = Field::prime(3).unwrap();
        let s1 = Matrix::from_rows(&f3, &[vec![1, 0], vec![0, 0]]);
        let s2 = Matrix::from_rows(&f3, &[vec![0, 1], vec![0, 0]]);
        let span = [s1.clone(), s2.clone()];
        assert_eq!(solve_membership(&s1, &span).unwrap(), Some(vec![1, 0]));
        assert_eq!(
            solve_membership(&Matrix::zeros(&f3, 2, 2), &span).unwrap(),
            Some(vec![0, 0])
        );
        assert_eq!(
            solve_membership(&Matrix::identity(&f3, 2), &span).unwrap(),
            None
        );
        assert_eq!(
            solve_membership(&Matrix::zeros(&f3, 3, 3), &span),
            Err(LinalgError::ShapeMismatch)
        );
    }

    #[test]
    fn inverse_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let f = Field::new(2, 3, None).unwrap();
        let mut found = 0;
        while found < 10 {
            let a = Matrix::random(&f, 5, 5, &mut rng);
            if let Some(inv) = a.inverse() {
                assert_eq!(a.mul(&inv), Matrix::identity(&f, 5));
                found += 1;
            } else {
                assert!(a.rank() < 5);
            }
        }
    }
}
