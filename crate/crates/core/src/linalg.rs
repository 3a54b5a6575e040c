//! Dense exact linear algebra over a [`Field`]: row reduction, kernels and
//! incrementally grown subspaces.

use alloc::vec;
use alloc::vec::Vec;

use crate::scalars::Field;

/// Row-major dense matrix. Scalars live in the caller's field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_elem(rows: usize, cols: usize, v: E) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![v; rows * cols],
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<E>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn zero<F: Field<Elem = E>>(field: &F, rows: usize, cols: usize) -> Self {
        Self::from_elem(rows, cols, field.zero())
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [E] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.data.iter().all(|x| field.is_zero(x))
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zero(field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if field.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !field.is_zero(b) {
                        field.add_mul_assign(&mut out.data[i * other.cols + j], a, b);
                    }
                }
            }
        }
        out
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| field.add(a, b))
                .collect(),
        }
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| field.mul(a, c)).collect(),
        }
    }

    /// Row vector times matrix.
    pub fn apply_row<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![field.zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if field.is_zero(vi) {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                field.add_mul_assign(o, vi, &self[(i, j)]);
            }
        }
        out
    }

    pub fn trace<F: Field<Elem = E>>(&self, field: &F) -> E {
        let mut t = field.zero();
        for i in 0..self.rows.min(self.cols) {
            field.add_assign(&mut t, &self[(i, i)]);
        }
        t
    }

    pub fn rank<F: Field<Elem = E>>(&self, field: &F) -> usize {
        let mut s = Subspace::new(field.clone(), self.cols);
        for i in 0..self.rows {
            s.insert(self.row(i).to_vec());
        }
        s.dim()
    }

    /// Basis of `{x : x * self = 0}`.
    pub fn left_kernel<F: Field<Elem = E>>(&self, field: &F) -> Vec<Vec<E>> {
        self.transpose().kernel(field)
    }

    /// Basis of `{x : self * x = 0}` (column vectors).
    pub fn kernel<F: Field<Elem = E>>(&self, field: &F) -> Vec<Vec<E>> {
        let mut s = Subspace::new(field.clone(), self.cols);
        for i in 0..self.rows {
            s.insert(self.row(i).to_vec());
        }
        s.orthogonal_complement()
    }
}

impl<E> core::ops::Index<(usize, usize)> for Matrix<E> {
    type Output = E;
    fn index(&self, (i, j): (usize, usize)) -> &E {
        &self.data[i * self.cols + j]
    }
}

impl<E> core::ops::IndexMut<(usize, usize)> for Matrix<E> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut E {
        &mut self.data[i * self.cols + j]
    }
}

/// A subspace of `F^n` kept in reduced row echelon form.
#[derive(Debug, Clone)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
    row_of_pivot: Vec<Option<usize>>,
}

impl<F: Field> Subspace<F> {
    pub fn new(field: F, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
            row_of_pivot: vec![None; ambient],
        }
    }

    pub fn spanned_by(field: F, ambient: usize, vectors: impl IntoIterator<Item = Vec<F::Elem>>) -> Self {
        let mut s = Self::new(field, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residue of `v` after eliminating every pivot column.
    pub fn reduce(&self, mut v: Vec<F::Elem>) -> Vec<F::Elem> {
        let f = &self.field;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&v[pc]) {
                continue;
            }
            let c = v[pc].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !f.is_zero(r) {
                    *x = f.sub(x, &f.mul(&c, r));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v.to_vec()).iter().all(|x| self.field.is_zero(x))
    }

    /// Adds `v` to the span. Returns `true` if the dimension grew.
    pub fn insert(&mut self, v: Vec<F::Elem>) -> bool {
        assert_eq!(v.len(), self.ambient);
        let f = self.field.clone();
        let mut v = self.reduce(v);
        let Some(pc) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[pc]).expect("nonzero pivot");
        for x in v.iter_mut() {
            *x = f.mul(x, &inv);
        }
        for row in self.rows.iter_mut() {
            if f.is_zero(&row[pc]) {
                continue;
            }
            let c = row[pc].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        self.row_of_pivot[pc] = Some(self.rows.len());
        self.rows.push(v);
        self.pivots.push(pc);
        true
    }

    /// Coordinates of `v` with respect to [`Self::basis`], if `v` lies in
    /// the subspace.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let coords: Vec<F::Elem> = self.pivots.iter().map(|&pc| v[pc].clone()).collect();
        let mut recon = vec![self.field.zero(); self.ambient];
        for (c, row) in coords.iter().zip(&self.rows) {
            if self.field.is_zero(c) {
                continue;
            }
            for (x, r) in recon.iter_mut().zip(row) {
                self.field.add_mul_assign(x, c, r);
            }
        }
        (recon == v).then_some(coords)
    }

    /// Basis of `{x : <row, x> = 0 for every row}`.
    pub fn orthogonal_complement(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let mut out = Vec::new();
        for free in 0..self.ambient {
            if self.row_of_pivot[free].is_some() {
                continue;
            }
            let mut x = vec![f.zero(); self.ambient];
            x[free] = f.one();
            for (row, &pc) in self.rows.iter().zip(&self.pivots) {
                x[pc] = f.neg(&row[free]);
            }
            out.push(x);
        }
        out
    }
}

/// Sum of `coeff * vector` into `acc`.
pub fn axpy<F: Field>(field: &F, acc: &mut [F::Elem], coeff: &F::Elem, v: &[F::Elem]) {
    if field.is_zero(coeff) {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !field.is_zero(x) {
            field.add_mul_assign(a, coeff, x);
        }
    }
}

/// Coefficients `c` with `sum_i c_i vectors[i] = target`, if any exist.
/// With independent `vectors` the answer is unique.
pub fn solve_combination<F: Field>(field: &F, vectors: &[Vec<F::Elem>], target: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let m = vectors.len();
    let dim = target.len();
    // columns: vectors then target; a kernel vector with last entry nonzero
    let rows: Vec<Vec<F::Elem>> = (0..dim)
        .map(|i| {
            let mut row: Vec<F::Elem> = vectors.iter().map(|v| v[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let kernel = Matrix::from_rows(m + 1, rows).kernel(field);
    let k = kernel.into_iter().find(|k| !field.is_zero(&k[m]))?;
    let scale = field.neg(&field.inv(&k[m]).expect("nonzero"));
    Some(k[..m].iter().map(|x| field.mul(x, &scale)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{PrimeField, Rationals};

    #[test]
    fn kernel_and_rank() {
        let f = PrimeField::new(7).unwrap();
        // rows (1,2,3), (2,4,6), (0,1,1)
        let m = Matrix::from_rows(3, vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(m.rank(&f), 2);
        let k = m.kernel(&f);
        assert_eq!(k.len(), 1);
        let col = Matrix::from_rows(1, k[0].iter().map(|x| vec![*x]).collect());
        assert!(m.mul(&f, &col).is_zero(&f));
        let lk = m.left_kernel(&f);
        assert_eq!(lk.len(), 1);
        assert!(m
            .transpose()
            .mul(&f, &Matrix::from_rows(1, lk[0].iter().map(|x| vec![*x]).collect()))
            .is_zero(&f));
    }

    #[test]
    fn subspace_coordinates() {
        let q = Rationals;
        let v = |xs: &[i64]| xs.iter().map(|&x| q.from_i64(x)).collect::<Vec<_>>();
        let mut s = Subspace::new(q, 3);
        assert!(s.insert(v(&[1, 1, 0])));
        assert!(s.insert(v(&[0, 2, 2])));
        assert!(!s.insert(v(&[1, 3, 2])));
        let target = v(&[2, 5, 3]);
        let c = s.coordinates(&target).unwrap();
        let mut recon = v(&[0, 0, 0]);
        for (ci, row) in c.iter().zip(s.basis()) {
            axpy(&q, &mut recon, ci, row);
        }
        assert_eq!(recon, target);
        assert!(s.coordinates(&v(&[0, 0, 1])).is_none());
        assert_eq!(s.orthogonal_complement().len(), 1);
    }

    #[test]
    fn combination_solve() {
        let f = PrimeField::new(11).unwrap();
        let vs = vec![vec![1, 0, 1], vec![0, 1, 1]];
        assert_eq!(solve_combination(&f, &vs, &[3, 4, 7]), Some(vec![3, 4]));
        assert_eq!(solve_combination(&f, &vs, &[0, 0, 1]), None);
    }
}
