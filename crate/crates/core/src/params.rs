//! The scalar parameters of a cyclotomic BMW algebra and the admissibility
//! formulas relating them.

use alloc::vec;
use alloc::vec::Vec;

use rand_core::RngCore;
use thiserror::Error;

use crate::scalars::{Field, Order, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("q must be nonzero with q^2 != 1")]
    InvalidQ,
    #[error("rho must be nonzero")]
    ZeroRho,
    #[error("need at least one cyclotomic parameter u")]
    EmptyU,
    #[error("u{0} is zero")]
    ZeroU(usize),
    #[error("u{0} = u{1}; the weights gamma_i need distinct parameters")]
    RepeatedU(usize, usize),
    #[error("rho^-1 is not alpha * prod(u) for any allowed alpha")]
    NotAdmissible,
    #[error("semi-admissibility degree {0} outside 1..=r")]
    BadSemiDegree(usize),
    #[error("expected {expected} explicit omega values (omega_1..omega_(r-1)), got {got}")]
    OmegaLength { expected: usize, got: usize },
    #[error("omega_{0} is not determined by these parameters")]
    OmegaUnavailable(i64),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Where the values `omega_a` come from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OmegaMode<E> {
    /// `omega_a = sum_j u_j^a gamma_j` over all `r` parameters.
    Admissible,
    /// Admissible with respect to the first `degree` parameters only; the
    /// remaining `u` enter the cyclotomic polynomial but not the weights.
    SemiAdmissible { degree: usize },
    /// Caller-supplied `omega_1, ..., omega_(r-1)`; `omega_0` always comes
    /// from `q` and `rho`.
    Explicit(Vec<E>),
}

#[derive(Debug, Clone)]
pub struct ParameterSet<F: Field> {
    field: F,
    q: F::Elem,
    rho: F::Elem,
    delta: F::Elem,
    u: Vec<F::Elem>,
    alpha: Option<F::Elem>,
    e: Order,
    mode: OmegaMode<F::Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityReport<E> {
    pub pass: bool,
    pub alpha: Option<E>,
    /// `1 - delta^-1 (rho - rho^-1)`
    pub omega0_preamble: E,
    /// The closed form in terms of `prod u`, evaluated at the witness `alpha`.
    pub omega0_closed: Option<E>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VanishingReport {
    pub all_zero: bool,
    pub first_nonzero: Option<usize>,
}

/// `sigma_0, ..., sigma_r` of the given values.
pub fn elementary_symmetric<F: Field>(field: &F, vals: &[F::Elem]) -> Vec<F::Elem> {
    let mut sig = vec![field.one()];
    for v in vals {
        let mut next = sig.clone();
        next.push(field.zero());
        for k in 1..next.len() {
            let t = field.mul(&sig[k - 1], v);
            field.add_assign(&mut next[k], &t);
        }
        sig = next;
    }
    sig
}

fn product<F: Field>(field: &F, vals: impl IntoIterator<Item = F::Elem>) -> F::Elem {
    vals.into_iter().fold(field.one(), |acc, v| field.mul(&acc, &v))
}

/// Candidates for `alpha` in `rho^-1 = alpha * prod(u)`.
pub fn allowed_alphas<F: Field>(field: &F, q: &F::Elem, r: usize) -> Result<[F::Elem; 2], ScalarError> {
    if r % 2 == 1 {
        Ok([field.one(), field.neg(&field.one())])
    } else {
        Ok([field.inv(q)?, field.neg(q)])
    }
}

/// `gamma_1, ..., gamma_r` for parameters `us` (any length), with the
/// parity of `us.len()` selecting `gamma_r(z)`.
pub fn gamma_weights_for<F: Field>(
    field: &F,
    q: &F::Elem,
    rho: &F::Elem,
    us: &[F::Elem],
) -> Result<Vec<F::Elem>, ParamError> {
    let f = field;
    let r = us.len();
    for i in 0..r {
        for j in i + 1..r {
            if us[i] == us[j] {
                return Err(ParamError::RepeatedU(i + 1, j + 1));
            }
        }
    }
    let delta = f.sub(q, &f.inv(q)?);
    let delta_inv = f.inv(&delta).map_err(|_| ParamError::InvalidQ)?;
    let mut out = Vec::with_capacity(r);
    for (i, ui) in us.iter().enumerate() {
        let others = || {
            us.iter()
                .enumerate()
                .filter(move |(j, _)| *j != i)
                .map(|(_, u)| u.clone())
        };
        let head = if r % 2 == 1 { f.one() } else { f.neg(ui) };
        let u_sq_minus_one = f.sub(&f.mul(ui, ui), &f.one());
        let second = f.mul(&f.mul(&delta_inv, rho), &f.mul(&u_sq_minus_one, &product(f, others())));
        let mut g = f.add(&head, &second);
        for uj in others() {
            let num = f.sub(&f.mul(ui, &uj), &f.one());
            let den = f.sub(ui, &uj);
            g = f.mul(&g, &f.div(&num, &den)?);
        }
        out.push(g);
    }
    Ok(out)
}

impl<F: Field> ParameterSet<F> {
    /// Validates and builds a parameter set. For the admissible modes the
    /// relation `rho^-1 = alpha prod(u)` is checked and its witness kept.
    pub fn new(
        field: F,
        q: F::Elem,
        rho: F::Elem,
        u: Vec<F::Elem>,
        mode: OmegaMode<F::Elem>,
    ) -> Result<Self, ParamError> {
        let f = &field;
        if f.is_zero(&q) || f.is_one(&f.mul(&q, &q)) {
            return Err(ParamError::InvalidQ);
        }
        if f.is_zero(&rho) {
            return Err(ParamError::ZeroRho);
        }
        if u.is_empty() {
            return Err(ParamError::EmptyU);
        }
        if let Some(i) = u.iter().position(|x| f.is_zero(x)) {
            return Err(ParamError::ZeroU(i + 1));
        }
        let delta = f.sub(&q, &f.inv(&q)?);
        let e = f.multiplicative_order(&f.mul(&q, &q))?;
        let r = u.len();
        let alpha = match &mode {
            OmegaMode::Admissible => {
                let a = find_alpha(f, &q, &rho, &u)?.ok_or(ParamError::NotAdmissible)?;
                gamma_weights_for(f, &q, &rho, &u)?;
                Some(a)
            }
            OmegaMode::SemiAdmissible { degree } => {
                if *degree == 0 || *degree > r {
                    return Err(ParamError::BadSemiDegree(*degree));
                }
                let v = &u[..*degree];
                let a = find_alpha(f, &q, &rho, v)?.ok_or(ParamError::NotAdmissible)?;
                gamma_weights_for(f, &q, &rho, v)?;
                Some(a)
            }
            OmegaMode::Explicit(w) => {
                if w.len() != r - 1 {
                    return Err(ParamError::OmegaLength {
                        expected: r - 1,
                        got: w.len(),
                    });
                }
                None
            }
        };
        Ok(ParameterSet {
            field,
            q,
            rho,
            delta,
            u,
            alpha,
            e,
            mode,
        })
    }

    /// Admissible parameters with `rho` solved from the chosen `alpha`
    /// (`alpha_choice` indexes the two allowed values).
    pub fn admissible(field: F, q: F::Elem, u: Vec<F::Elem>, alpha_choice: usize) -> Result<Self, ParamError> {
        let rho = solve_rho(&field, &q, &u, alpha_choice)?;
        Self::new(field, q, rho, u, OmegaMode::Admissible)
    }

    /// `degree`-semi-admissible parameters: `rho` and the weights come from
    /// the first `degree` entries of `u`.
    pub fn semi_admissible(
        field: F,
        q: F::Elem,
        u: Vec<F::Elem>,
        degree: usize,
        alpha_choice: usize,
    ) -> Result<Self, ParamError> {
        if degree == 0 || degree > u.len() {
            return Err(ParamError::BadSemiDegree(degree));
        }
        let rho = solve_rho(&field, &q, &u[..degree], alpha_choice)?;
        Self::new(field, q, rho, u, OmegaMode::SemiAdmissible { degree })
    }

    /// Random admissible parameters with `r` distinct nonzero `u`.
    pub fn random_admissible(field: F, r: usize, rng: &mut dyn RngCore) -> Self {
        loop {
            let q = field.random(rng);
            if field.is_zero(&q) || field.is_one(&field.mul(&q, &q)) {
                continue;
            }
            let u: Vec<F::Elem> = (0..r).map(|_| field.random(rng)).collect();
            let choice = (rng.next_u32() % 2) as usize;
            if let Ok(p) = Self::admissible(field.clone(), q, u, choice) {
                return p;
            }
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn q(&self) -> &F::Elem {
        &self.q
    }
    pub fn rho(&self) -> &F::Elem {
        &self.rho
    }
    pub fn delta(&self) -> &F::Elem {
        &self.delta
    }
    pub fn u(&self) -> &[F::Elem] {
        &self.u
    }
    pub fn r(&self) -> usize {
        self.u.len()
    }
    pub fn alpha(&self) -> Option<&F::Elem> {
        self.alpha.as_ref()
    }
    /// Multiplicative order of `q^2`.
    pub fn e(&self) -> Order {
        self.e
    }
    pub fn mode(&self) -> &OmegaMode<F::Elem> {
        &self.mode
    }
    pub fn is_admissible(&self) -> bool {
        matches!(self.mode, OmegaMode::Admissible)
    }

    /// `1 - delta^-1 (rho - rho^-1)`
    pub fn omega0_preamble(&self) -> F::Elem {
        let f = &self.field;
        let diff = f.sub(&self.rho, &f.inv(&self.rho).expect("rho nonzero"));
        f.sub(&f.one(), &f.div(&diff, &self.delta).expect("delta nonzero"))
    }

    /// The parameters the weights are taken over.
    fn weight_parameters(&self) -> Option<&[F::Elem]> {
        match &self.mode {
            OmegaMode::Admissible => Some(&self.u),
            OmegaMode::SemiAdmissible { degree } => Some(&self.u[..*degree]),
            OmegaMode::Explicit(_) => None,
        }
    }

    pub fn gamma_weights(&self) -> Result<Vec<F::Elem>, ParamError> {
        let us = self.weight_parameters().unwrap_or(&self.u);
        gamma_weights_for(&self.field, &self.q, &self.rho, us)
    }

    pub fn omega(&self, a: i64) -> Result<F::Elem, ParamError> {
        let f = &self.field;
        match (&self.mode, self.weight_parameters()) {
            (OmegaMode::Explicit(w), _) => {
                if a == 0 {
                    Ok(self.omega0_preamble())
                } else if a > 0 && (a as usize) < self.r() {
                    Ok(w[a as usize - 1].clone())
                } else {
                    Err(ParamError::OmegaUnavailable(a))
                }
            }
            (_, Some(us)) => {
                let gammas = gamma_weights_for(f, &self.q, &self.rho, us)?;
                let mut acc = f.zero();
                for (uj, gj) in us.iter().zip(&gammas) {
                    let t = f.mul(&f.pow(uj, a)?, gj);
                    f.add_assign(&mut acc, &t);
                }
                Ok(acc)
            }
            _ => unreachable!("weights exist for admissible modes"),
        }
    }

    /// `omega_1, ..., omega_(r-1)`, the values the presentation needs.
    pub fn omega_relation_values(&self) -> Result<Vec<F::Elem>, ParamError> {
        (1..self.r() as i64).map(|a| self.omega(a)).collect()
    }

    pub fn omega_vanishing_report(&self) -> Result<VanishingReport, ParamError> {
        for a in 0..self.r() {
            if !self.field.is_zero(&self.omega(a as i64)?) {
                return Ok(VanishingReport {
                    all_zero: false,
                    first_nonzero: Some(a),
                });
            }
        }
        Ok(VanishingReport {
            all_zero: true,
            first_nonzero: None,
        })
    }

    /// A copy with a different `rho`, skipping admissibility validation.
    /// Used to build negative controls.
    pub fn with_rho_unchecked(&self, rho: F::Elem) -> Self {
        ParameterSet { rho, ..self.clone() }
    }
}

fn find_alpha<F: Field>(field: &F, q: &F::Elem, rho: &F::Elem, us: &[F::Elem]) -> Result<Option<F::Elem>, ParamError> {
    let prod = product(field, us.iter().cloned());
    let rho_inv = field.inv(rho)?;
    for a in allowed_alphas(field, q, us.len())? {
        if field.mul(&a, &prod) == rho_inv {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

fn solve_rho<F: Field>(field: &F, q: &F::Elem, us: &[F::Elem], choice: usize) -> Result<F::Elem, ParamError> {
    if field.is_zero(q) || field.is_one(&field.mul(q, q)) {
        return Err(ParamError::InvalidQ);
    }
    if let Some(i) = us.iter().position(|x| field.is_zero(x)) {
        return Err(ParamError::ZeroU(i + 1));
    }
    let alpha = allowed_alphas(field, q, us.len())?[choice % 2].clone();
    let prod = product(field, us.iter().cloned());
    Ok(field.inv(&field.mul(&alpha, &prod))?)
}

/// Admissibility test on raw `(q, rho, u)`: a witness `alpha` must exist
/// and the closed-form `omega_0` must agree with `1 - delta^-1 (rho - rho^-1)`.
pub fn check_admissible<F: Field>(p: &ParameterSet<F>) -> AdmissibilityReport<F::Elem> {
    let f = p.field();
    let preamble = p.omega0_preamble();
    let alpha = find_alpha(f, p.q(), p.rho(), p.u()).ok().flatten();
    let closed = alpha.as_ref().map(|a| {
        let prod_sq = product(f, p.u().iter().map(|x| f.mul(x, x)));
        let first = f
            .div(&f.mul(p.rho(), &f.sub(&prod_sq, &f.one())), p.delta())
            .expect("delta nonzero");
        let mut w = f.add(&first, &f.one());
        if p.r() % 2 == 0 {
            let t = f.inv(&f.mul(a, p.rho())).expect("nonzero");
            w = f.sub(&w, &t);
        }
        w
    });
    let pass = closed.as_ref().is_some_and(|c| *c == preamble);
    AdmissibilityReport {
        pass,
        alpha,
        omega0_preamble: preamble,
        omega0_closed: closed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{PrimeField, Rationals};
    use proptest::prelude::*;
    use rand_chacha::ChaCha8Rng;
    use rand_core::SeedableRng;

    fn qq(s: &str) -> num_rational::BigRational {
        Rationals.parse(s).unwrap()
    }

    fn rank_one_rational() -> ParameterSet<Rationals> {
        ParameterSet::new(Rationals, qq("2"), qq("1/3"), vec![qq("3")], OmegaMode::Admissible).unwrap()
    }

    #[test]
    fn rank_one_gamma_and_omega() {
        let p = rank_one_rational();
        assert_eq!(p.delta(), &qq("3/2"));
        assert_eq!(p.gamma_weights().unwrap(), vec![qq("25/9")]);
        assert_eq!(p.omega(0).unwrap(), qq("25/9"));
        assert_eq!(p.omega0_preamble(), qq("25/9"));
        assert_eq!(p.omega(1).unwrap(), qq("25/3"));
        assert_eq!(p.omega(-1).unwrap(), qq("25/27"));
        assert_eq!(p.alpha(), Some(&qq("1")));
    }

    #[test]
    fn unit_parameter_gives_unit_weight() {
        let p = ParameterSet::admissible(Rationals, qq("5"), vec![qq("1")], 1).unwrap();
        assert_eq!(p.gamma_weights().unwrap(), vec![qq("1")]);
    }

    #[test]
    fn admissibility_checks() {
        let r = check_admissible(&rank_one_rational());
        assert!(r.pass);
        assert_eq!(r.alpha, Some(qq("1")));
        let bad = rank_one_rational().with_rho_unchecked(qq("5"));
        let r = check_admissible(&bad);
        assert!(!r.pass);
        assert_eq!(r.alpha, None);
        assert_eq!(
            ParameterSet::new(Rationals, qq("2"), qq("5"), vec![qq("3")], OmegaMode::Admissible).unwrap_err(),
            ParamError::NotAdmissible
        );
    }

    /// Straight-line evaluation of the r = 2 weights, written out by hand.
    fn gamma_r2_by_hand(f: &PrimeField, q: u64, rho: u64, u1: u64, u2: u64) -> (u64, u64) {
        let delta = f.sub(&q, &f.inv(&q).unwrap());
        let di = f.inv(&delta).unwrap();
        let t = |ui: u64, uj: u64| {
            let head = f.neg(&ui);
            let tail = f.mul(&f.mul(&di, &rho), &f.mul(&f.sub(&f.mul(&ui, &ui), &1), &uj));
            let frac = f.div(&f.sub(&f.mul(&ui, &uj), &1), &f.sub(&ui, &uj)).unwrap();
            f.mul(&f.add(&head, &tail), &frac)
        };
        (t(u1, u2), t(u2, u1))
    }

    #[test]
    fn rank_two_weights_match_hand_evaluation() {
        let f = PrimeField::new(101).unwrap();
        let p = ParameterSet::admissible(f, 3, vec![4, 5], 0).unwrap();
        // alpha = q^-1, rho = (alpha * 20)^-1 = 3/20
        assert_eq!(*p.rho(), f.div(&3, &20).unwrap());
        let (g1, g2) = gamma_r2_by_hand(&f, 3, *p.rho(), 4, 5);
        assert_eq!(p.gamma_weights().unwrap(), vec![g1, g2]);
        let report = check_admissible(&p);
        assert!(report.pass);
        assert_eq!(report.omega0_closed, Some(report.omega0_preamble));
        assert_eq!(p.omega(0).unwrap(), p.omega0_preamble());
    }

    #[test]
    fn repeated_parameters_rejected() {
        let f = PrimeField::new(101).unwrap();
        assert_eq!(
            ParameterSet::admissible(f, 3, vec![4, 4], 0).unwrap_err(),
            ParamError::RepeatedU(1, 2)
        );
        assert_eq!(
            ParameterSet::admissible(f, 1, vec![4], 0).unwrap_err(),
            ParamError::InvalidQ
        );
        assert_eq!(
            ParameterSet::admissible(f, 100, vec![4], 0).unwrap_err(),
            ParamError::InvalidQ
        );
    }

    #[test]
    fn vanishing_report() {
        let p = rank_one_rational();
        assert_eq!(
            p.omega_vanishing_report().unwrap(),
            VanishingReport {
                all_zero: false,
                first_nonzero: Some(0)
            }
        );
        // rho = q, u = q^-1 makes omega_0 vanish at r = 1
        let f = PrimeField::new(101).unwrap();
        let q = 7u64;
        let p = ParameterSet::new(f, q, q, vec![f.inv(&q).unwrap()], OmegaMode::Admissible).unwrap();
        let rep = p.omega_vanishing_report().unwrap();
        assert!(rep.all_zero);
        for a in -3..=3 {
            assert_eq!(p.omega(a).unwrap(), 0);
        }
    }

    #[test]
    fn explicit_and_semi_modes() {
        let f = PrimeField::new(101).unwrap();
        let p = ParameterSet::semi_admissible(f, 3, vec![4, 5], 1, 0).unwrap();
        // weights over u1 only: omega_a = u1^a omega_0
        let w0 = p.omega(0).unwrap();
        assert_eq!(w0, p.omega0_preamble());
        assert_eq!(p.omega(2).unwrap(), f.mul(&16, &w0));
        let ex = ParameterSet::new(f, 3, 9, vec![4, 5], OmegaMode::Explicit(vec![11])).unwrap();
        assert_eq!(ex.omega(1).unwrap(), 11);
        assert_eq!(ex.omega(2).unwrap_err(), ParamError::OmegaUnavailable(2));
        assert!(matches!(
            ParameterSet::new(f, 3, 9, vec![4, 5], OmegaMode::Explicit(vec![])),
            Err(ParamError::OmegaLength { .. })
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        /// omega_a obeys the recurrence from f(x1) = 0 and both omega_0
        /// expressions agree.
        #[test]
        fn admissible_recurrence(seed in any::<u64>(), r in 1usize..=4) {
            let f = PrimeField::new(101).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = ParameterSet::random_admissible(f, r, &mut rng);
            prop_assert_eq!(p.omega(0).unwrap(), p.omega0_preamble());
            let rep = check_admissible(&p);
            prop_assert!(rep.pass);
            let sigma = elementary_symmetric(&f, p.u());
            let lim = 3 * r as i64;
            for a in -lim..=lim {
                let mut acc = 0u64;
                for k in 0..=r {
                    let mut c = sigma[r - k];
                    if (r - k) % 2 == 1 {
                        c = f.neg(&c);
                    }
                    acc = f.add(&acc, &f.mul(&c, &p.omega(a + k as i64).unwrap()));
                }
                prop_assert_eq!(acc, 0);
            }
            let van = p.omega_vanishing_report().unwrap();
            if van.all_zero {
                for a in -lim..=lim {
                    prop_assert_eq!(p.omega(a).unwrap(), 0);
                }
            }
        }
    }
}
