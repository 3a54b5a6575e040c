//! Finite-dimensional algebras given by structure constants on a fixed basis.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand_core::RngCore;
use thiserror::Error;

use crate::linalg::{axpy, Matrix, Subspace};
use crate::scalars::Field;

/// Sparse coordinates: `(basis index, nonzero coefficient)`, sorted by index.
pub type SparseVec<E> = Vec<(usize, E)>;

/// Computes `b_i * b_j` on demand.
pub trait ProductOracle<E>: Send + Sync {
    fn product(&self, i: usize, j: usize) -> SparseVec<E>;
}

#[derive(Clone)]
enum Products<E> {
    Table(Arc<Vec<Vec<SparseVec<E>>>>),
    Lazy(Arc<dyn ProductOracle<E>>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
}

/// An associative unital algebra with basis `b_0, ..., b_(d-1)`.
#[derive(Clone)]
pub struct StructureAlgebra<F: Field> {
    field: F,
    labels: Vec<String>,
    products: Products<F::Elem>,
    unit: Vec<F::Elem>,
    generators: Option<Vec<Vec<F::Elem>>>,
}

impl<F: Field> core::fmt::Debug for StructureAlgebra<F> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("StructureAlgebra")
            .field("field", &self.field)
            .field("dim", &self.dim())
            .field("tabulated", &self.is_tabulated())
            .finish()
    }
}

/// `e A e` together with the images of its basis in `A`.
#[derive(Debug, Clone)]
pub struct CornerAlgebra<F: Field> {
    pub algebra: StructureAlgebra<F>,
    pub embedding: Vec<Vec<F::Elem>>,
    pub idempotent: Vec<F::Elem>,
}

impl<F: Field> CornerAlgebra<F> {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }
}

/// Tabulate products up to this dimension; above it products stay lazy.
pub const TABULATE_LIMIT: usize = 512;

impl<F: Field> StructureAlgebra<F> {
    pub fn from_table(field: F, labels: Vec<String>, table: Vec<Vec<SparseVec<F::Elem>>>, unit: Vec<F::Elem>) -> Self {
        let d = labels.len();
        assert_eq!(table.len(), d);
        assert_eq!(unit.len(), d);
        StructureAlgebra {
            field,
            labels,
            products: Products::Table(Arc::new(table)),
            unit,
            generators: None,
        }
    }

    /// Tabulates when `dim <= TABULATE_LIMIT`, otherwise keeps the oracle.
    pub fn from_oracle(
        field: F,
        labels: Vec<String>,
        oracle: Box<dyn ProductOracle<F::Elem>>,
        unit: Vec<F::Elem>,
    ) -> Self {
        let d = labels.len();
        let oracle: Arc<dyn ProductOracle<F::Elem>> = Arc::from(oracle);
        let products = if d <= TABULATE_LIMIT {
            let table = (0..d).map(|i| (0..d).map(|j| oracle.product(i, j)).collect()).collect();
            Products::Table(Arc::new(table))
        } else {
            Products::Lazy(oracle)
        };
        StructureAlgebra {
            field,
            labels,
            products,
            unit,
            generators: None,
        }
    }

    /// Records a generating set; analyses that only need to test
    /// commutation or invariance use it instead of the full basis.
    pub fn with_generators(mut self, generators: Vec<Vec<F::Elem>>) -> Self {
        self.generators = Some(generators);
        self
    }

    /// The recorded generating set, or the basis.
    pub fn generators(&self) -> Vec<Vec<F::Elem>> {
        match &self.generators {
            Some(g) => g.clone(),
            None => (0..self.dim()).map(|i| self.basis_vector(i)).collect(),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn is_tabulated(&self) -> bool {
        matches!(self.products, Products::Table(_))
    }

    pub fn unit(&self) -> &[F::Elem] {
        &self.unit
    }

    pub fn zero_vector(&self) -> Vec<F::Elem> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F::Elem> {
        let mut v = self.zero_vector();
        v[i] = self.field.one();
        v
    }

    pub fn basis_product(&self, i: usize, j: usize) -> SparseVec<F::Elem> {
        match &self.products {
            Products::Table(t) => t[i][j].clone(),
            Products::Lazy(o) => o.product(i, j),
        }
    }

    fn with_product<R>(&self, i: usize, j: usize, k: impl FnOnce(&[(usize, F::Elem)]) -> R) -> R {
        match &self.products {
            Products::Table(t) => k(&t[i][j]),
            Products::Lazy(o) => k(&o.product(i, j)),
        }
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = self.zero_vector();
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) {
                    continue;
                }
                let c = f.mul(xi, yj);
                self.with_product(i, j, |row| {
                    for (k, v) in row {
                        f.add_mul_assign(&mut out[*k], &c, v);
                    }
                });
            }
        }
        out
    }

    /// Matrix of `y -> x y` acting on row vectors: row `j` is `x b_j`.
    pub fn left_mult_matrix(&self, x: &[F::Elem]) -> Matrix<F::Elem> {
        let rows = (0..self.dim()).map(|j| self.mul(x, &self.basis_vector(j))).collect();
        Matrix::from_rows(self.dim(), rows)
    }

    /// Matrix of `y -> y x`: row `j` is `b_j x`.
    pub fn right_mult_matrix(&self, x: &[F::Elem]) -> Matrix<F::Elem> {
        let rows = (0..self.dim()).map(|j| self.mul(&self.basis_vector(j), x)).collect();
        Matrix::from_rows(self.dim(), rows)
    }

    pub fn pow(&self, x: &[F::Elem], k: u64) -> Vec<F::Elem> {
        let mut acc = self.unit.clone();
        let mut base = x.to_vec();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn random_element(&self, rng: &mut dyn RngCore) -> Vec<F::Elem> {
        (0..self.dim()).map(|_| self.field.random(rng)).collect()
    }

    /// Associativity on `samples` random basis triples. Returns the first
    /// failing triple.
    pub fn check_associativity(&self, samples: usize, rng: &mut dyn RngCore) -> Option<(usize, usize, usize)> {
        let d = self.dim();
        if d == 0 {
            return None;
        }
        for _ in 0..samples {
            let (i, j, k) = (
                rng.next_u32() as usize % d,
                rng.next_u32() as usize % d,
                rng.next_u32() as usize % d,
            );
            let (bi, bj, bk) = (self.basis_vector(i), self.basis_vector(j), self.basis_vector(k));
            if self.mul(&self.mul(&bi, &bj), &bk) != self.mul(&bi, &self.mul(&bj, &bk)) {
                return Some((i, j, k));
            }
        }
        None
    }

    /// Basis (in RREF) of the two-sided ideal generated by `x`.
    pub fn ideal_generated_by(&self, x: &[F::Elem]) -> Subspace<F> {
        let d = self.dim();
        let mut left = Subspace::new(self.field.clone(), d);
        for i in 0..d {
            left.insert(self.mul(&self.basis_vector(i), x));
        }
        let mut ideal = Subspace::new(self.field.clone(), d);
        for l in left.basis() {
            for j in 0..d {
                ideal.insert(self.mul(l, &self.basis_vector(j)));
                if ideal.dim() == d {
                    return ideal;
                }
            }
        }
        ideal
    }

    pub fn is_idempotent(&self, e: &[F::Elem]) -> bool {
        self.mul(e, e) == e
    }

    /// `e A e` with unit `e`, on the RREF basis of `span{e b_i e}`.
    pub fn corner_algebra(&self, e: &[F::Elem]) -> Result<CornerAlgebra<F>, StructureError> {
        if !self.is_idempotent(e) {
            return Err(StructureError::NotIdempotent);
        }
        let f = &self.field;
        let d = self.dim();
        let mut span = Subspace::new(f.clone(), d);
        for i in 0..d {
            let v = self.mul(&self.mul(e, &self.basis_vector(i)), e);
            span.insert(v);
        }
        let basis: Vec<Vec<F::Elem>> = span.basis().to_vec();
        let m = basis.len();
        let coords = |v: &[F::Elem]| -> Vec<F::Elem> { span.coordinates(v).expect("closed under products") };
        let mut table = Vec::with_capacity(m);
        for a in &basis {
            let mut row = Vec::with_capacity(m);
            for b in &basis {
                let c = coords(&self.mul(a, b));
                row.push(c.into_iter().enumerate().filter(|(_, x)| !f.is_zero(x)).collect());
            }
            table.push(row);
        }
        let unit = coords(e);
        let labels = (0..m).map(|i| alloc::format!("c{i}")).collect();
        Ok(CornerAlgebra {
            algebra: StructureAlgebra::from_table(f.clone(), labels, table, unit),
            embedding: basis,
            idempotent: e.to_vec(),
        })
    }

    /// Linear combination of basis vectors.
    pub fn combine(&self, terms: &[(F::Elem, Vec<F::Elem>)]) -> Vec<F::Elem> {
        let mut out = self.zero_vector();
        for (c, v) in terms {
            axpy(&self.field, &mut out, c, v);
        }
        out
    }

    /// Dense structure constants: `table[i][j]` is `b_i b_j`.
    pub fn products_sparse(&self) -> Vec<Vec<SparseVec<F::Elem>>> {
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.basis_product(i, j)).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::PrimeField;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Group algebra of Z/m over GF(p).
    pub(crate) fn cyclic_group_algebra(p: u64, m: usize) -> StructureAlgebra<PrimeField> {
        let f = PrimeField::new(p).unwrap();
        let table = (0..m)
            .map(|i| (0..m).map(|j| vec![((i + j) % m, 1u64)]).collect())
            .collect();
        let mut unit = vec![0u64; m];
        unit[0] = 1;
        StructureAlgebra::from_table(f, (0..m).map(|i| alloc::format!("t{i}")).collect(), table, unit)
    }

    #[test]
    fn group_algebra_basics() {
        let a = cyclic_group_algebra(7, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(a.check_associativity(200, &mut rng).is_none());
        let t1 = a.basis_vector(1);
        assert_eq!(a.pow(&t1, 3), a.unit().to_vec());
        assert_eq!(a.ideal_generated_by(&t1).dim(), 3);
        assert_eq!(a.ideal_generated_by(&a.zero_vector()).dim(), 0);
        // augmentation ideal generated by t1 - 1
        let mut aug = t1.clone();
        aug[0] = 6;
        assert_eq!(a.ideal_generated_by(&aug).dim(), 2);
    }

    #[test]
    fn corner_of_unit_is_everything() {
        let a = cyclic_group_algebra(7, 3);
        let c = a.corner_algebra(a.unit()).unwrap();
        assert_eq!(c.dim(), 3);
        assert_eq!(c.algebra.unit(), &[1, 0, 0]);
        // e = (1 + t + t^2)/3 is a central idempotent with one-dimensional corner
        let third = a.field().inv(&3).unwrap();
        let e = vec![third; 3];
        assert_eq!(a.corner_algebra(&e).unwrap().dim(), 1);
        assert_eq!(
            a.corner_algebra(&a.basis_vector(1)).unwrap_err(),
            StructureError::NotIdempotent
        );
    }
}
