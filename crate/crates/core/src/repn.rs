//! Jacobson radical, Wedderburn blocks and simple modules of a
//! finite-dimensional algebra, and the idempotent truncation functor.

use alloc::vec;
use alloc::vec::Vec;

use rand_core::RngCore;
use thiserror::Error;

use crate::linalg::{axpy, solve_combination, Matrix, Subspace};
use crate::presentation::structure::{CornerAlgebra, StructureAlgebra};
use crate::scalars::{Field, FieldElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReprError {
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("no primitive idempotent found in block {0} after {1} attempts")]
    NoPrimitiveIdempotent(usize, usize),
    #[error("block {0} is not split over the ground field")]
    NotSplit(usize),
    #[error("module and algebra disagree: {0}")]
    Mismatch(&'static str),
}

/// A right module: `actions[k]` is the matrix of `v -> v b_k` on row vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleRep<F: Field> {
    field: F,
    dim: usize,
    actions: Vec<Matrix<F::Elem>>,
}

impl<F: Field> ModuleRep<F> {
    pub fn new(field: F, dim: usize, actions: Vec<Matrix<F::Elem>>) -> Self {
        for m in &actions {
            assert_eq!((m.rows(), m.cols()), (dim, dim));
        }
        ModuleRep { field, dim, actions }
    }

    /// `A` acting on itself by right multiplication.
    pub fn regular(a: &StructureAlgebra<F>) -> Self {
        let actions = (0..a.dim()).map(|k| a.right_mult_matrix(&a.basis_vector(k))).collect();
        ModuleRep::new(a.field().clone(), a.dim(), actions)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn actions(&self) -> &[Matrix<F::Elem>] {
        &self.actions
    }

    /// Matrix of `v -> v x` for `x` in algebra coordinates.
    pub fn action_of(&self, x: &[F::Elem]) -> Matrix<F::Elem> {
        let f = &self.field;
        let mut out = Matrix::zero(f, self.dim, self.dim);
        for (c, m) in x.iter().zip(&self.actions) {
            if f.is_zero(c) {
                continue;
            }
            out = out.add(f, &m.scale(f, c));
        }
        out
    }

    /// `action(b_i) action(b_j) = action(b_i b_j)` on sampled pairs.
    pub fn respects(&self, a: &StructureAlgebra<F>, samples: usize, rng: &mut dyn RngCore) -> bool {
        let d = a.dim();
        if d != self.actions.len() {
            return false;
        }
        (0..samples).all(|_| {
            let (i, j) = (rng.next_u32() as usize % d, rng.next_u32() as usize % d);
            let lhs = self.actions[i].mul(&self.field, &self.actions[j]);
            let rhs = self.action_of(&a.mul(&a.basis_vector(i), &a.basis_vector(j)));
            lhs == rhs
        })
    }

    /// Burnside: the action matrices span all `dim x dim` matrices.
    pub fn is_absolutely_irreducible(&self) -> bool {
        if self.dim == 0 {
            return false;
        }
        let mut span = Subspace::new(self.field.clone(), self.dim * self.dim);
        for m in &self.actions {
            let flat: Vec<F::Elem> = m.to_rows().into_iter().flatten().collect();
            span.insert(flat);
            if span.dim() == self.dim * self.dim {
                return true;
            }
        }
        false
    }
}

fn integer_lift<F: Field>(field: &F, x: &F::Elem) -> u64 {
    match field.to_element(x) {
        FieldElement::Residue { value, .. } => value,
        FieldElement::Rational(_) => unreachable!("lifts are only taken in positive characteristic"),
    }
}

fn mat_mul_mod(a: &[u64], b: &[u64], n: usize, m: u64) -> Vec<u64> {
    let mut out = vec![0u64; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            let row = &b[k * n..(k + 1) * n];
            let dst = &mut out[i * n..(i + 1) * n];
            for (d, y) in dst.iter_mut().zip(row) {
                *d = (*d + x * y) % m;
            }
        }
    }
    out
}

/// `(Tr(L^(p^i)) mod p^(i+1)) / p^i` for an integer lift `L` of the left
/// multiplication by `x`.
fn lifted_trace_functional<F: Field>(a: &StructureAlgebra<F>, x: &[F::Elem], p: u64, i: u32) -> F::Elem {
    let f = a.field();
    let n = a.dim();
    let modulus = p.pow(i + 1);
    let l = a.left_mult_matrix(x);
    let mut base: Vec<u64> = (0..n * n).map(|k| integer_lift(f, &l[(k / n, k % n)])).collect();
    let mut acc: Vec<u64> = (0..n * n).map(|k| u64::from(k / n == k % n)).collect();
    let mut e = p.pow(i);
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul_mod(&acc, &base, n, modulus);
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul_mod(&base, &base, n, modulus);
        }
    }
    let tr = (0..n).fold(0u64, |t, k| (t + acc[k * n + k]) % modulus);
    f.from_i64((tr / p.pow(i)) as i64)
}

/// Basis of the Jacobson radical. In characteristic `0`, or `p` above the
/// dimension, this is the kernel of the trace form `Tr(L_(xy))`; for small
/// `p` the trace condition is refined through `p`-power traces of integer
/// lifts.
pub fn radical<F: Field>(a: &StructureAlgebra<F>) -> Subspace<F> {
    let f = a.field();
    let d = a.dim();
    let p = f.characteristic();
    let rounds = if p == 0 || p as usize > d {
        0
    } else {
        let mut l = 0u32;
        let mut pw = p;
        while pw as usize <= d {
            l += 1;
            pw = pw.saturating_mul(p);
        }
        l
    };
    let mut ideal = Subspace::new(f.clone(), d);
    for k in 0..d {
        ideal.insert(a.basis_vector(k));
    }
    for i in 0..=rounds {
        let basis: Vec<Vec<F::Elem>> = ideal.basis().to_vec();
        if basis.is_empty() {
            break;
        }
        let g: Vec<F::Elem> = if i == 0 {
            basis.iter().map(|c| a.left_mult_matrix(c).trace(f)).collect()
        } else {
            basis.iter().map(|c| lifted_trace_functional(a, c, p, i)).collect()
        };
        // G[m][j] = g(c_m b_j), g extended linearly over the ideal's basis
        let rows: Vec<Vec<F::Elem>> = basis
            .iter()
            .map(|c| {
                (0..d)
                    .map(|j| {
                        let prod = a.mul(c, &a.basis_vector(j));
                        let coords = ideal.coordinates(&prod).expect("ideal is closed");
                        let mut s = f.zero();
                        for (x, gv) in coords.iter().zip(&g) {
                            f.add_mul_assign(&mut s, x, gv);
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        let kernel = Matrix::from_rows(d, rows).left_kernel(f);
        let mut next = Subspace::new(f.clone(), d);
        for k in kernel {
            let mut v = a.zero_vector();
            for (x, c) in k.iter().zip(&basis) {
                axpy(f, &mut v, x, c);
            }
            next.insert(v);
        }
        ideal = next;
    }
    ideal
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedderburnReport {
    pub dim: usize,
    pub radical_dim: usize,
    /// Matrix sizes `d_i` of the blocks of `A / rad A`.
    pub blocks: Vec<usize>,
    pub split: bool,
}

impl WedderburnReport {
    pub fn sum_of_squares(&self) -> usize {
        self.blocks.iter().map(|d| d * d).sum()
    }
}

/// One simple component of `A / rad A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block<E> {
    /// Central idempotent, in quotient coordinates.
    pub idempotent: Vec<E>,
    pub dim: usize,
    pub center_dim: usize,
    /// `d` with block `M_d(k)`, when the block is split.
    pub degree: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct Wedderburn<F: Field> {
    pub report: WedderburnReport,
    pub quotient: StructureAlgebra<F>,
    pub blocks: Vec<Block<F::Elem>>,
    radical: Subspace<F>,
    quotient_cols: Vec<usize>,
}

impl<F: Field> Wedderburn<F> {
    pub fn radical(&self) -> &Subspace<F> {
        &self.radical
    }

    /// Image of `x` in `A / rad A`.
    pub fn project(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        let r = self.radical.reduce(x.to_vec());
        self.quotient_cols.iter().map(|&k| r[k].clone()).collect()
    }
}

fn quotient_algebra<F: Field>(a: &StructureAlgebra<F>, rad: &Subspace<F>) -> (StructureAlgebra<F>, Vec<usize>) {
    let f = a.field();
    let d = a.dim();
    let mut is_pivot = vec![false; d];
    for &p in rad.pivots() {
        is_pivot[p] = true;
    }
    let cols: Vec<usize> = (0..d).filter(|k| !is_pivot[*k]).collect();
    let project = |v: Vec<F::Elem>| -> Vec<F::Elem> {
        let r = rad.reduce(v);
        cols.iter().map(|&k| r[k].clone()).collect()
    };
    let table = cols
        .iter()
        .map(|&i| {
            cols.iter()
                .map(|&j| {
                    let prod = a.mul(&a.basis_vector(i), &a.basis_vector(j));
                    project(prod)
                        .into_iter()
                        .enumerate()
                        .filter(|(_, x)| !f.is_zero(x))
                        .collect()
                })
                .collect()
        })
        .collect();
    let labels = cols.iter().map(|&k| a.labels()[k].clone()).collect();
    let unit = project(a.unit().to_vec());
    let gens = a.generators().into_iter().map(project).collect();
    (
        StructureAlgebra::from_table(f.clone(), labels, table, unit).with_generators(gens),
        cols,
    )
}

/// Center of `s`, from commutation with its generators.
pub fn center<F: Field>(s: &StructureAlgebra<F>) -> Subspace<F> {
    let f = s.field();
    let d = s.dim();
    let mut constraints = Subspace::new(f.clone(), d);
    for g in s.generators() {
        // z -> z g - g z, one functional per output coordinate
        let m = s.right_mult_matrix(&g);
        let l = s.left_mult_matrix(&g);
        for col in 0..d {
            let func: Vec<F::Elem> = (0..d).map(|j| f.sub(&m[(j, col)], &l[(j, col)])).collect();
            constraints.insert(func);
        }
    }
    Subspace::spanned_by(f.clone(), d, constraints.orthogonal_complement())
}

fn span_of_products<F: Field>(
    s: &StructureAlgebra<F>,
    x: &[F::Elem],
    others: &[Vec<F::Elem>],
    left: bool,
) -> Subspace<F> {
    let mut span = Subspace::new(s.field().clone(), s.dim());
    for o in others {
        span.insert(if left { s.mul(x, o) } else { s.mul(o, x) });
    }
    span
}

/// Minimal polynomial (ascending, monic) of `x` inside the corner with
/// unit `unit`.
fn minimal_polynomial<F: Field>(s: &StructureAlgebra<F>, unit: &[F::Elem], x: &[F::Elem]) -> Vec<F::Elem> {
    let f = s.field();
    let mut powers = vec![unit.to_vec()];
    loop {
        let next = s.mul(powers.last().expect("nonempty"), x);
        if let Some(c) = solve_combination(f, &powers, &next) {
            let mut poly: Vec<F::Elem> = c.iter().map(|v| f.neg(v)).collect();
            poly.push(f.one());
            return poly;
        }
        powers.push(next);
    }
}

/// `poly / (t - root)`, assuming exact division.
fn divide_linear<F: Field>(f: &F, poly: &[F::Elem], root: &F::Elem) -> (Vec<F::Elem>, F::Elem) {
    let deg = poly.len() - 1;
    let mut q = vec![f.zero(); deg];
    let mut carry = f.zero();
    for k in (0..=deg).rev() {
        let c = f.add(&poly[k], &f.mul(&carry, root));
        if k == 0 {
            return (q, c);
        }
        q[k - 1] = c.clone();
        carry = c;
    }
    unreachable!()
}

fn eval_poly<F: Field>(f: &F, poly: &[F::Elem], t: &F::Elem) -> F::Elem {
    poly.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, t), c))
}

fn eval_poly_in<F: Field>(s: &StructureAlgebra<F>, unit: &[F::Elem], poly: &[F::Elem], x: &[F::Elem]) -> Vec<F::Elem> {
    let f = s.field();
    let mut acc = s.zero_vector();
    for c in poly.iter().rev() {
        acc = s.mul(&acc, x);
        axpy(f, &mut acc, c, unit);
    }
    acc
}

/// Idempotents `h(x) / h(λ)` for every root `λ` that is simple in the
/// minimal polynomial of `x` within `unit · s · unit`.
fn eigen_idempotents<F: Field>(
    s: &StructureAlgebra<F>,
    unit: &[F::Elem],
    x: &[F::Elem],
    rng: &mut dyn RngCore,
) -> Vec<Vec<F::Elem>> {
    let f = s.field();
    let m = minimal_polynomial(s, unit, x);
    if m.len() <= 2 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for root in f.roots(&m, rng) {
        let (h, rem) = divide_linear(f, &m, &root);
        debug_assert!(f.is_zero(&rem));
        let hl = eval_poly(f, &h, &root);
        if f.is_zero(&hl) {
            continue;
        }
        let e = eval_poly_in(s, unit, &h, x);
        let inv = f.inv(&hl).expect("nonzero");
        out.push(e.iter().map(|v| f.mul(v, &inv)).collect());
    }
    out
}

fn sub_vec<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().zip(b).map(|(x, y)| f.sub(x, y)).collect()
}

fn combine_random<F: Field>(f: &F, basis: &[Vec<F::Elem>], dim: usize, rng: &mut dyn RngCore) -> Vec<F::Elem> {
    let mut v = vec![f.zero(); dim];
    for b in basis {
        let c = if f.characteristic() == 0 {
            f.from_i64((rng.next_u32() % 19) as i64 - 9)
        } else {
            f.random(rng)
        };
        axpy(f, &mut v, &c, b);
    }
    v
}

/// Splits `A / rad A` into blocks by central idempotents.
pub fn wedderburn<F: Field>(a: &StructureAlgebra<F>, rad: Subspace<F>, rng: &mut dyn RngCore) -> Wedderburn<F> {
    let f = a.field().clone();
    let (s, cols) = quotient_algebra(a, &rad);
    let sd = s.dim();
    let z = center(&s);
    let z_basis: Vec<Vec<F::Elem>> = z.basis().to_vec();
    // splitting space: fixed points of Frobenius in characteristic p
    let split_basis: Vec<Vec<F::Elem>> = if f.characteristic() > 0 && !z_basis.is_empty() {
        let p = f.characteristic();
        let rows: Vec<Vec<F::Elem>> = z_basis
            .iter()
            .enumerate()
            .map(|(t, zt)| {
                let mut c = z.coordinates(&s.pow(zt, p)).expect("center is a subalgebra");
                c[t] = f.sub(&c[t], &f.one());
                c
            })
            .collect();
        Matrix::from_rows(z_basis.len(), rows)
            .left_kernel(&f)
            .into_iter()
            .map(|k| {
                let mut v = s.zero_vector();
                for (x, zt) in k.iter().zip(&z_basis) {
                    axpy(&f, &mut v, x, zt);
                }
                v
            })
            .collect()
    } else {
        z_basis.clone()
    };

    let dim_in = |e: &[F::Elem], basis: &[Vec<F::Elem>]| span_of_products(&s, e, basis, true).dim();
    let mut idempotents: Vec<Vec<F::Elem>> = if sd == 0 { Vec::new() } else { vec![s.unit().to_vec()] };
    let mut attempts = 0;
    while attempts < 200 && idempotents.iter().any(|e| dim_in(e, &split_basis) > 1) {
        attempts += 1;
        let w = combine_random(&f, &split_basis, sd, rng);
        let mut next = Vec::new();
        for e in idempotents {
            if dim_in(&e, &split_basis) <= 1 {
                next.push(e);
                continue;
            }
            let x = s.mul(&e, &w);
            let parts = eigen_idempotents(&s, &e, &x, rng);
            let mut rest = e.clone();
            for part in parts {
                rest = sub_vec(&f, &rest, &part);
                next.push(part);
            }
            if rest.iter().any(|v| !f.is_zero(v)) {
                next.push(rest);
            }
        }
        idempotents = next;
    }

    let s_basis: Vec<Vec<F::Elem>> = (0..sd).map(|k| s.basis_vector(k)).collect();
    let mut blocks: Vec<Block<F::Elem>> = idempotents
        .into_iter()
        .map(|e| {
            let dim = dim_in(&e, &s_basis);
            let center_dim = dim_in(&e, &z_basis);
            let split_dim = dim_in(&e, &split_basis);
            let degree = (center_dim == 1 && split_dim == 1)
                .then(|| isqrt(dim))
                .filter(|d| d * d == dim);
            Block {
                idempotent: e,
                dim,
                center_dim,
                degree,
            }
        })
        .collect();
    blocks.sort_by(|x, y| {
        y.dim
            .cmp(&x.dim)
            .then_with(|| x.idempotent.len().cmp(&y.idempotent.len()))
    });
    let split = blocks.iter().all(|b| b.degree.is_some());
    let report = WedderburnReport {
        dim: a.dim(),
        radical_dim: rad.dim(),
        blocks: blocks
            .iter()
            .map(|b| b.degree.unwrap_or_else(|| isqrt(b.dim / b.center_dim.max(1))))
            .collect(),
        split,
    };
    Wedderburn {
        report,
        quotient: s,
        blocks,
        radical: rad,
        quotient_cols: cols,
    }
}

fn isqrt(n: usize) -> usize {
    let mut r = (n as f64).sqrt() as usize;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Radical plus Wedderburn blocks.
pub fn analyze<F: Field>(a: &StructureAlgebra<F>, rng: &mut dyn RngCore) -> Wedderburn<F> {
    let rad = radical(a);
    wedderburn(a, rad, rng)
}

/// Number of blocks and whether the count is trustworthy (split).
pub fn count_simples<F: Field>(a: &StructureAlgebra<F>, rng: &mut dyn RngCore) -> (usize, bool) {
    let w = analyze(a, rng);
    (w.report.blocks.len(), w.report.split)
}

/// A rank-one idempotent in the block `M_d(k)` cut out by `block`.
fn primitive_idempotent<F: Field>(
    s: &StructureAlgebra<F>,
    block: &Block<F::Elem>,
    index: usize,
    rng: &mut dyn RngCore,
) -> Result<Vec<F::Elem>, ReprError> {
    let f = s.field();
    let d = block.degree.ok_or(ReprError::NotSplit(index))?;
    let s_basis: Vec<Vec<F::Elem>> = (0..s.dim()).map(|k| s.basis_vector(k)).collect();
    let rank = |e: &[F::Elem]| span_of_products(s, e, &s_basis, true).dim() / d;
    let gens = s.generators();
    let mut e = block.idempotent.clone();
    let mut r = d;
    const ATTEMPTS: usize = 400;
    for attempt in 0..ATTEMPTS {
        if r == 1 {
            return Ok(e);
        }
        // generators first, then products of pairs, then random elements
        let c = if attempt < gens.len() {
            gens[attempt].clone()
        } else if attempt < gens.len() * (gens.len() + 1) {
            let k = attempt - gens.len();
            s.mul(&gens[k / gens.len()], &gens[k % gens.len()])
        } else {
            combine_random(f, &gens, s.dim(), rng)
        };
        let x = s.mul(&s.mul(&e, &c), &e);
        for part in eigen_idempotents(s, &e, &x, rng) {
            let pr = rank(&part);
            let rest = sub_vec(f, &e, &part);
            let rr = r - pr;
            let (cand, cr) = if pr <= rr { (part, pr) } else { (rest, rr) };
            if cr > 0 && cr < r {
                e = cand;
                r = cr;
                break;
            }
        }
    }
    if r == 1 {
        Ok(e)
    } else {
        Err(ReprError::NoPrimitiveIdempotent(index, ATTEMPTS))
    }
}

/// One simple right module per split block, as `y (A / rad A)` for a
/// primitive idempotent `y`, with `A` acting through the quotient.
pub fn simple_modules<F: Field>(
    a: &StructureAlgebra<F>,
    w: &Wedderburn<F>,
    rng: &mut dyn RngCore,
) -> Result<Vec<ModuleRep<F>>, ReprError> {
    let s = &w.quotient;
    let f = s.field();
    let s_basis: Vec<Vec<F::Elem>> = (0..s.dim()).map(|k| s.basis_vector(k)).collect();
    let images: Vec<Vec<F::Elem>> = (0..a.dim()).map(|k| w.project(&a.basis_vector(k))).collect();
    let mut out = Vec::new();
    for (i, block) in w.blocks.iter().enumerate() {
        let y = primitive_idempotent(s, block, i, rng)?;
        let v = span_of_products(s, &y, &s_basis, true);
        let vb = v.basis().to_vec();
        let m = vb.len();
        let actions = images
            .iter()
            .map(|img| {
                let rows = vb
                    .iter()
                    .map(|b| v.coordinates(&s.mul(b, img)).expect("right ideal"))
                    .collect();
                Matrix::from_rows(m, rows)
            })
            .collect();
        out.push(ModuleRep::new(f.clone(), m, actions));
    }
    Ok(out)
}

/// `M e` as a module for the corner `e A e`.
pub fn truncate_module<F: Field>(m: &ModuleRep<F>, corner: &CornerAlgebra<F>) -> Result<ModuleRep<F>, ReprError> {
    let f = m.field();
    let e = m.action_of(&corner.idempotent);
    if e.mul(f, &e) != e {
        return Err(ReprError::NotIdempotent);
    }
    let image = Subspace::spanned_by(f.clone(), m.dim(), e.to_rows());
    let basis = image.basis().to_vec();
    let k = basis.len();
    let actions = corner
        .embedding
        .iter()
        .map(|c| {
            let act = m.action_of(c);
            let rows = basis
                .iter()
                .map(|b| {
                    image
                        .coordinates(&act.apply_row(f, b))
                        .ok_or(ReprError::Mismatch("M e is not stable under e A e"))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Matrix::from_rows(k, rows))
        })
        .collect::<Result<Vec<_>, ReprError>>()?;
    Ok(ModuleRep::new(f.clone(), k, actions))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctorReport {
    pub simples: usize,
    pub annihilated: usize,
    pub survivors: usize,
    /// Every nonzero truncation is an absolutely irreducible corner module.
    pub survivors_simple: bool,
    /// Dimensions of the truncations, in the order of the input simples.
    pub truncated_dims: Vec<usize>,
}

/// Truncates each simple module and checks the survivors are simple.
pub fn functor_grading_check<F: Field>(
    corner: &CornerAlgebra<F>,
    simples: &[ModuleRep<F>],
) -> Result<FunctorReport, ReprError> {
    let mut truncated_dims = Vec::new();
    let mut survivors_simple = true;
    for m in simples {
        let t = truncate_module(m, corner)?;
        if t.dim() > 0 && !t.is_absolutely_irreducible() {
            survivors_simple = false;
        }
        truncated_dims.push(t.dim());
    }
    let annihilated = truncated_dims.iter().filter(|d| **d == 0).count();
    Ok(FunctorReport {
        simples: simples.len(),
        annihilated,
        survivors: simples.len() - annihilated,
        survivors_simple,
        truncated_dims,
    })
}
