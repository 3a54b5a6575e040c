//! Cyclotomic BMW and Ariki–Koike algebras built by completing the
//! presentation.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use hashbrown::HashMap;
use thiserror::Error;

use super::relations::{canonical_relations, x_inverse, PresentationConfig, TripleScalar, Variant, YOrientation};
use super::rewriting::{complete, CompletionError, CompletionStats, RewriteSystem};
use super::structure::{ProductOracle, SparseVec, StructureAlgebra};
use super::word::{AlgebraElement, Alphabet, Generator, Word};
use crate::linalg::Subspace;
use crate::params::{OmegaMode, ParamError, ParameterSet};
use crate::scalars::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("n must be at least 1")]
    InvalidN,
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Completion(#[from] CompletionError),
    #[error("omega_0 = 0 needs n >= 3 for the truncation idempotent")]
    TruncationNeedsN3,
}

/// `4n + 2r`
pub fn default_degree_cap(n: usize, r: usize) -> usize {
    4 * n + 2 * r
}

fn double_factorial_odd(n: usize) -> usize {
    // (2n - 1)!!
    (1..=n).map(|k| 2 * k - 1).product()
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// The dimension predicted for these parameters, when a formula applies.
pub fn expected_dimension<F: Field>(n: usize, p: &ParameterSet<F>, variant: Variant) -> Option<usize> {
    let r = p.r();
    let rn = r.pow(n as u32);
    match (variant, p.mode()) {
        (Variant::ArikiKoike, _) => Some(rn * factorial(n)),
        (Variant::Bmw, OmegaMode::Admissible) => Some(rn * double_factorial_odd(n)),
        (Variant::Bmw, OmegaMode::SemiAdmissible { degree }) => {
            let dn = degree.pow(n as u32);
            Some(dn * double_factorial_odd(n) + rn * factorial(n) - dn * factorial(n))
        }
        (Variant::Bmw, OmegaMode::Explicit(_)) => None,
    }
}

struct WordOracle<F: Field> {
    system: Arc<RewriteSystem<F>>,
    basis: Arc<Vec<Word>>,
    index: Arc<HashMap<Word, usize>>,
}

impl<F: Field> ProductOracle<F::Elem> for WordOracle<F> {
    fn product(&self, i: usize, j: usize) -> SparseVec<F::Elem> {
        let nf = self.system.reduce_word(self.basis[i].concat(&self.basis[j]));
        let mut out: SparseVec<F::Elem> = nf.into_terms().into_iter().map(|(w, c)| (self.index[&w], c)).collect();
        out.sort_by_key(|(k, _)| *k);
        out
    }
}

/// Build summary for reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildReport {
    pub n: usize,
    pub r: usize,
    pub variant: Variant,
    pub config: PresentationConfig,
    pub dimension: usize,
    pub expected_dimension: Option<usize>,
    pub completion: CompletionStats,
}

impl BuildReport {
    pub fn dimension_matches(&self) -> Option<bool> {
        self.expected_dimension.map(|d| d == self.dimension)
    }
}

/// `B_(r,n)(u)` (or its Ariki–Koike quotient) with an explicit word basis.
#[derive(Debug, Clone)]
pub struct CyclotomicAlgebra<F: Field> {
    n: usize,
    params: ParameterSet<F>,
    variant: Variant,
    config: PresentationConfig,
    alphabet: Alphabet,
    system: Arc<RewriteSystem<F>>,
    basis: Arc<Vec<Word>>,
    index: Arc<HashMap<Word, usize>>,
    structure: StructureAlgebra<F>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaCheck {
    pub checked: Vec<i64>,
    pub failures: Vec<i64>,
}

impl OmegaCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl<F: Field> CyclotomicAlgebra<F> {
    pub fn build(
        n: usize,
        params: ParameterSet<F>,
        variant: Variant,
        config: PresentationConfig,
        degree_cap: Option<usize>,
    ) -> Result<Self, BuildError> {
        if n == 0 {
            return Err(BuildError::InvalidN);
        }
        let field = params.field().clone();
        let cap = degree_cap.unwrap_or_else(|| default_degree_cap(n, params.r()));
        let rules = canonical_relations(n, &params, variant, config)?;
        let system = complete(&field, rules, cap)?;
        let alphabet = Alphabet::new(n);
        let basis = system.irreducible_words(alphabet.len(), cap)?;
        let index: HashMap<Word, usize> = basis.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let labels: Vec<String> = basis.iter().map(|w| alphabet.render(w)).collect();
        let system = Arc::new(system);
        let basis = Arc::new(basis);
        let index = Arc::new(index);
        let mut unit = alloc::vec![field.zero(); basis.len()];
        if let Some(&k) = index.get(&Word::empty()) {
            unit[k] = field.one();
        }
        let oracle = WordOracle {
            system: system.clone(),
            basis: basis.clone(),
            index: index.clone(),
        };
        let structure = StructureAlgebra::from_oracle(field, labels, Box::new(oracle), unit);
        let mut built = CyclotomicAlgebra {
            n,
            params,
            variant,
            config,
            alphabet,
            system,
            basis,
            index,
            structure,
        };
        let gens = built.generator_vectors();
        built.structure = built.structure.with_generators(gens);
        Ok(built)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.params.r()
    }

    pub fn params(&self) -> &ParameterSet<F> {
        &self.params
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn config(&self) -> PresentationConfig {
        self.config
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn field(&self) -> &F {
        self.params.field()
    }

    pub fn system(&self) -> &RewriteSystem<F> {
        &self.system
    }

    pub fn basis(&self) -> &[Word] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn structure(&self) -> &StructureAlgebra<F> {
        &self.structure
    }

    pub fn expected_dimension(&self) -> Option<usize> {
        expected_dimension(self.n, &self.params, self.variant)
    }

    pub fn report(&self) -> BuildReport {
        BuildReport {
            n: self.n,
            r: self.r(),
            variant: self.variant,
            config: self.config,
            dimension: self.dim(),
            expected_dimension: self.expected_dimension(),
            completion: self.system.stats(),
        }
    }

    pub fn normal_form(&self, x: &AlgebraElement<F::Elem>) -> AlgebraElement<F::Elem> {
        self.system.normal_form(x)
    }

    /// Coordinates of `x` after normalization.
    pub fn to_vector(&self, x: &AlgebraElement<F::Elem>) -> Vec<F::Elem> {
        let mut v = self.structure.zero_vector();
        for (w, c) in self.normal_form(x).into_terms() {
            v[self.index[&w]] = c;
        }
        v
    }

    pub fn from_vector(&self, v: &[F::Elem]) -> AlgebraElement<F::Elem> {
        let f = self.field();
        let mut out = AlgebraElement::zero();
        for (w, c) in self.basis.iter().zip(v) {
            out.add_term(f, w.clone(), c.clone());
        }
        out
    }

    pub fn word_element(&self, gens: &[Generator]) -> AlgebraElement<F::Elem> {
        AlgebraElement::from_word(self.field(), self.alphabet.word(gens))
    }

    pub fn generator_vector(&self, g: Generator) -> Vec<F::Elem> {
        self.to_vector(&self.word_element(&[g]))
    }

    /// All generators as coordinate vectors.
    pub fn generator_vectors(&self) -> Vec<Vec<F::Elem>> {
        self.alphabet.generators().map(|g| self.generator_vector(g)).collect()
    }

    pub fn mul(&self, x: &AlgebraElement<F::Elem>, y: &AlgebraElement<F::Elem>) -> AlgebraElement<F::Elem> {
        let f = self.field();
        self.normal_form(&self.normal_form(x).concat_mul(f, &self.normal_form(y)))
    }

    /// The anti-involution fixing every generator.
    pub fn star(&self, x: &AlgebraElement<F::Elem>) -> AlgebraElement<F::Elem> {
        self.normal_form(&x.reversed())
    }

    /// `x_1^a` for any integer `a`.
    pub fn x_power(&self, a: i64) -> AlgebraElement<F::Elem> {
        let f = self.field();
        let base = if a >= 0 {
            self.word_element(&[Generator::X])
        } else {
            x_inverse(&self.params, &self.alphabet)
        };
        let mut acc = AlgebraElement::scalar(f, f.one());
        for _ in 0..a.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        acc
    }

    /// `e_1 x_1^a e_1 = omega_a e_1` for each `a` in range.
    pub fn check_omega_relations(&self, range: RangeInclusive<i64>) -> Result<OmegaCheck, BuildError> {
        let f = self.field();
        let e1 = self.word_element(&[Generator::E(1)]);
        let mut out = OmegaCheck {
            checked: Vec::new(),
            failures: Vec::new(),
        };
        for a in range {
            let lhs = self.mul(&self.mul(&e1, &self.x_power(a)), &e1);
            let rhs = self.normal_form(&e1.scale(f, &self.params.omega(a)?));
            out.checked.push(a);
            if lhs != rhs {
                out.failures.push(a);
            }
        }
        Ok(out)
    }

    /// Minimal `d` with `e_1 x_1^d` in the span of `e_1 x_1^k`, `k < d`;
    /// `0` when `e_1 = 0`.
    pub fn semi_admissibility_degree(&self) -> usize {
        let f = self.field();
        let e1 = self.word_element(&[Generator::E(1)]);
        let mut span = Subspace::new(f.clone(), self.dim());
        for d in 0..=self.r() {
            let v = self.to_vector(&self.mul(&e1, &self.x_power(d as i64)));
            if !span.insert(v) {
                return d;
            }
        }
        unreachable!("x_1 satisfies a polynomial of degree r")
    }

    /// An idempotent `e` with `e A e` isomorphic to the algebra on `n - 2`
    /// strands: `omega_0^-1 e_(n-1)`, or `c^-1 e_(n-1) g_(n-2)` when
    /// `omega_0 = 0`, where `e_i g_(i+-1) e_i = c e_i`.
    pub fn truncation_idempotent(&self) -> Result<AlgebraElement<F::Elem>, BuildError> {
        let f = self.field();
        let n = self.n;
        if n < 2 {
            return Err(BuildError::InvalidN);
        }
        let w0 = self.params.omega(0)?;
        let en = self.word_element(&[Generator::E(n - 1)]);
        if !f.is_zero(&w0) {
            return Ok(en.scale(f, &f.inv(&w0).expect("nonzero")));
        }
        if n < 3 {
            return Err(BuildError::TruncationNeedsN3);
        }
        let c_inv = match self.config.triple {
            TripleScalar::RhoInverse => self.params.rho().clone(),
            TripleScalar::Rho => f.inv(self.params.rho()).expect("rho nonzero"),
        };
        Ok(self
            .word_element(&[Generator::E(n - 1), Generator::G(n - 2)])
            .scale(f, &c_inv))
    }
}

/// Outcome of trying one orientation of the `y_1` relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientationTrial {
    pub y: YOrientation,
    pub dimension: Option<usize>,
    pub expected_dimension: Option<usize>,
    pub omega_ok: bool,
}

impl OrientationTrial {
    pub fn passed(&self) -> bool {
        self.dimension.is_some() && self.dimension == self.expected_dimension && self.omega_ok
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientationChoice {
    pub config: PresentationConfig,
    pub trials: Vec<OrientationTrial>,
    pub validated: bool,
}

/// Tries each orientation on two strands with these parameters and picks
/// the first one whose dimension and omega relations check out; falls back
/// to the default when neither does (or nothing can be checked).
pub fn select_orientation<F: Field>(params: &ParameterSet<F>, degree_cap: Option<usize>) -> OrientationChoice {
    let mut trials = Vec::new();
    let mut chosen = None;
    for y in [YOrientation::X, YOrientation::XInverse] {
        let config = PresentationConfig {
            y,
            ..PresentationConfig::default()
        };
        let built = CyclotomicAlgebra::build(2, params.clone(), Variant::Bmw, config, degree_cap);
        let trial = match built {
            Ok(a) => {
                let r = params.r() as i64;
                let omega_ok = a.check_omega_relations(0..=2 * r).map(|c| c.passed()).unwrap_or(false);
                OrientationTrial {
                    y,
                    dimension: Some(a.dim()),
                    expected_dimension: a.expected_dimension(),
                    omega_ok,
                }
            }
            Err(_) => OrientationTrial {
                y,
                dimension: None,
                expected_dimension: expected_dimension(2, params, Variant::Bmw),
                omega_ok: false,
            },
        };
        if chosen.is_none() && trial.passed() {
            chosen = Some(config);
        }
        trials.push(trial);
    }
    OrientationChoice {
        config: chosen.unwrap_or_default(),
        validated: chosen.is_some(),
        trials,
    }
}

/// `d` computed in `B_(r,2)` built from `params`.
pub fn semi_admissibility_degree<F: Field>(
    params: &ParameterSet<F>,
    config: PresentationConfig,
    degree_cap: Option<usize>,
) -> Result<usize, BuildError> {
    Ok(CyclotomicAlgebra::build(2, params.clone(), Variant::Bmw, config, degree_cap)?.semi_admissibility_degree())
}
