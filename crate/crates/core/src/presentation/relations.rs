//! The defining relations, with `g_i^-1` and `x_1^-1` expanded into
//! polynomials in the remaining generators.

use alloc::vec::Vec;

use super::rewriting::RewriteRule;
use super::word::{AlgebraElement, Alphabet, Generator, Word};
use crate::params::{elementary_symmetric, ParamError, ParameterSet};
use crate::scalars::Field;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Bmw,
    /// The quotient by the ideal generated by the `e_i`.
    ArikiKoike,
}

/// Which element stands in for `y_1` in `g_1 y_1 g_1 x_1 e_1 = e_1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum YOrientation {
    /// `y_1 = x_1`: the relation is the `*`-image of `e_1 x_1 g_1 x_1 g_1 = e_1`.
    X,
    /// `y_1 = x_1^-1`.
    XInverse,
}

/// Scalar `c` in `e_i g_(i+-1) e_i = c e_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TripleScalar {
    /// `rho^-1`, the value forced by `g_i g_(i+-1) e_i = e_(i+-1) e_i` together
    /// with `e_i g_i = rho e_i`.
    RhoInverse,
    /// `rho`, as the relation is usually printed.
    Rho,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PresentationConfig {
    pub y: YOrientation,
    pub triple: TripleScalar,
}

impl Default for PresentationConfig {
    fn default() -> Self {
        PresentationConfig {
            y: YOrientation::X,
            triple: TripleScalar::RhoInverse,
        }
    }
}

struct Builder<'a, F: Field> {
    f: &'a F,
    a: Alphabet,
}

impl<F: Field> Builder<'_, F> {
    fn word(&self, gens: &[Generator]) -> AlgebraElement<F::Elem> {
        AlgebraElement::from_word(self.f, self.a.word(gens))
    }

    fn one(&self) -> AlgebraElement<F::Elem> {
        AlgebraElement::scalar(self.f, self.f.one())
    }

    fn mul(&self, x: &AlgebraElement<F::Elem>, y: &AlgebraElement<F::Elem>) -> AlgebraElement<F::Elem> {
        x.concat_mul(self.f, y)
    }

    fn prod(&self, xs: &[&AlgebraElement<F::Elem>]) -> AlgebraElement<F::Elem> {
        xs.iter().fold(self.one(), |acc, x| self.mul(&acc, x))
    }

    fn g(&self, i: usize) -> AlgebraElement<F::Elem> {
        self.word(&[Generator::G(i)])
    }

    fn e(&self, i: usize) -> AlgebraElement<F::Elem> {
        self.word(&[Generator::E(i)])
    }

    fn x(&self) -> AlgebraElement<F::Elem> {
        self.word(&[Generator::X])
    }
}

/// `f(x_1) = sum_k (-1)^(r-k) sigma_(r-k) x_1^k` over the letter code of `x_1`.
pub fn cyclotomic_polynomial<F: Field>(p: &ParameterSet<F>, alphabet: &Alphabet) -> AlgebraElement<F::Elem> {
    let f = p.field();
    let r = p.r();
    let sig = elementary_symmetric(f, p.u());
    let x = alphabet.code(Generator::X);
    let mut out = AlgebraElement::zero();
    for k in 0..=r {
        let mut c = sig[r - k].clone();
        if (r - k) % 2 == 1 {
            c = f.neg(&c);
        }
        out.add_term(f, Word(alloc::vec![x; k]), c);
    }
    out
}

/// `x_1^-1` as a polynomial of degree `r - 1` in `x_1`.
pub fn x_inverse<F: Field>(p: &ParameterSet<F>, alphabet: &Alphabet) -> AlgebraElement<F::Elem> {
    let f = p.field();
    let r = p.r();
    let sig = elementary_symmetric(f, p.u());
    let x = alphabet.code(Generator::X);
    // x h(x) = (-1)^(r+1) sigma_r
    let mut lead = sig[r].clone();
    if r % 2 == 0 {
        lead = f.neg(&lead);
    }
    let scale = f.inv(&lead).expect("u nonzero");
    let mut out = AlgebraElement::zero();
    for k in 1..=r {
        let mut c = f.mul(&sig[r - k], &scale);
        if (r - k) % 2 == 1 {
            c = f.neg(&c);
        }
        out.add_term(f, Word(alloc::vec![x; k - 1]), c);
    }
    out
}

/// `g_i^-1 = g_i - delta + delta e_i`.
pub fn g_inverse<F: Field>(p: &ParameterSet<F>, alphabet: &Alphabet, i: usize) -> AlgebraElement<F::Elem> {
    let f = p.field();
    let b = Builder { f, a: *alphabet };
    let mut out = b.g(i);
    out.add_term(f, Word::empty(), f.neg(p.delta()));
    out.add_term(f, alphabet.word(&[Generator::E(i)]), p.delta().clone());
    out
}

/// Relations as polynomials that vanish in the algebra.
pub fn relation_polynomials<F: Field>(
    n: usize,
    p: &ParameterSet<F>,
    variant: Variant,
    config: PresentationConfig,
) -> Result<Vec<AlgebraElement<F::Elem>>, ParamError> {
    assert!(n >= 1);
    let f = p.field();
    let a = Alphabet::new(n);
    let b = Builder { f, a };
    let mut rels = Vec::new();
    let eq = |rels: &mut Vec<AlgebraElement<F::Elem>>, l: AlgebraElement<F::Elem>, r: AlgebraElement<F::Elem>| {
        rels.push(l.sub(f, &r));
    };
    let sc = |x: &AlgebraElement<F::Elem>, c: &F::Elem| x.scale(f, c);

    rels.push(cyclotomic_polynomial(p, &a));
    if n == 1 {
        return Ok(rels);
    }
    let rho = p.rho().clone();
    let rho_inv = f.inv(&rho)?;
    let x = b.x();

    if variant == Variant::ArikiKoike {
        for i in 1..n {
            rels.push(b.e(i));
        }
    }

    for i in 1..n {
        let gi = b.g(i);
        let ginv = g_inverse(p, &a, i);
        // invertibility, with g_i^-1 expanded
        eq(&mut rels, b.mul(&gi, &ginv), b.one());
        eq(&mut rels, b.mul(&ginv, &gi), b.one());
        // e_i^2 = omega_0 e_i
        eq(&mut rels, b.mul(&b.e(i), &b.e(i)), sc(&b.e(i), &p.omega(0)?));
        // e_i g_i = g_i e_i = rho e_i
        eq(&mut rels, b.mul(&b.e(i), &gi), sc(&b.e(i), &rho));
        eq(&mut rels, b.mul(&gi, &b.e(i)), sc(&b.e(i), &rho));
        for j in 1..n {
            if i.abs_diff(j) > 1 && i < j {
                // far commutation
                eq(&mut rels, b.mul(&gi, &b.g(j)), b.mul(&b.g(j), &gi));
                eq(&mut rels, b.mul(&b.e(i), &b.e(j)), b.mul(&b.e(j), &b.e(i)));
            }
            if i.abs_diff(j) > 1 {
                eq(&mut rels, b.mul(&gi, &b.e(j)), b.mul(&b.e(j), &gi));
            }
            if i.abs_diff(j) == 1 {
                let (ei, ej, gj) = (b.e(i), b.e(j), b.g(j));
                // e_i g_j e_i = c e_i, e_i e_j e_i = e_i
                let c = match config.triple {
                    TripleScalar::RhoInverse => rho_inv.clone(),
                    TripleScalar::Rho => rho.clone(),
                };
                eq(&mut rels, b.prod(&[&ei, &gj, &ei]), sc(&ei, &c));
                eq(&mut rels, b.prod(&[&ei, &ej, &ei]), ei.clone());
                // g_i g_j e_i = e_j e_i and its mirror image
                eq(&mut rels, b.prod(&[&gi, &gj, &ei]), b.mul(&ej, &ei));
                eq(&mut rels, b.prod(&[&ei, &gj, &gi]), b.mul(&ei, &ej));
            }
        }
        if i + 1 < n {
            // braid relation
            let gj = b.g(i + 1);
            eq(&mut rels, b.prod(&[&gi, &gj, &gi]), b.prod(&[&gj, &gi, &gj]));
        }
        if i >= 2 {
            // x_1 commutes with g_i, i >= 2; also with g_i^-1, hence with e_i
            eq(&mut rels, b.mul(&x, &gi), b.mul(&gi, &x));
            eq(&mut rels, b.mul(&x, &b.e(i)), b.mul(&b.e(i), &x));
        }
    }

    let (g1, e1) = (b.g(1), b.e(1));
    // x_1 g_1 x_1 g_1 = g_1 x_1 g_1 x_1
    eq(&mut rels, b.prod(&[&x, &g1, &x, &g1]), b.prod(&[&g1, &x, &g1, &x]));
    // e_1 x_1^k e_1 = omega_k e_1; higher powers follow from the cyclotomic relation
    let mut xa = b.one();
    for k in 1..p.r() {
        xa = b.mul(&xa, &x);
        eq(&mut rels, b.prod(&[&e1, &xa, &e1]), sc(&e1, &p.omega(k as i64)?));
    }
    // e_1 x_1 g_1 x_1 g_1 = e_1 and g_1 y_1 g_1 x_1 e_1 = e_1
    eq(&mut rels, b.prod(&[&e1, &x, &g1, &x, &g1]), e1.clone());
    let y = match config.y {
        YOrientation::X => x.clone(),
        YOrientation::XInverse => x_inverse(p, &a),
    };
    eq(&mut rels, b.prod(&[&g1, &y, &g1, &x, &e1]), e1.clone());
    Ok(rels)
}

/// The relations oriented as rewrite rules, leading word largest.
pub fn canonical_relations<F: Field>(
    n: usize,
    p: &ParameterSet<F>,
    variant: Variant,
    config: PresentationConfig,
) -> Result<Vec<RewriteRule<F::Elem>>, ParamError> {
    let f = p.field();
    Ok(relation_polynomials(n, p, variant, config)?
        .into_iter()
        .filter_map(|rel| RewriteRule::from_relation(f, rel))
        .collect())
}
