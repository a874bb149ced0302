//! Informativeness of statistical experiments.
//!
//! An experiment is a kernel `Θ → X`. `f` is more informative than `g` when
//! some garbling `c : X → Y` gives `c ∘ f = g`, or `c ∘ f ≈_m g` relative to
//! a prior `m`. Garblings are synthesized as solutions of exact linear
//! feasibility problems.

use num_traits::{One, Zero};

use crate::conditioning::{ase, bayesian_inverse, conditional, Side};
use crate::feasibility::{LinearSystem, VarId};
use crate::findist::FinDist;
use crate::finset::FiniteSet;
use crate::kernel::{chain, compose, tensor, Kernel};
use crate::semiring::Rational;
use crate::{Error, Result};

type QKernel = Kernel<Rational>;

fn check_experiments(f: &QKernel, g: &QKernel) -> Result<()> {
    if f.dom() != g.dom() {
        return Err(Error::ShapeMismatch(format!(
            "experiments on {} and {}",
            f.dom(),
            g.dom()
        )));
    }
    Ok(())
}

fn check_prior(f: &QKernel, m: &QKernel) -> Result<Vec<usize>> {
    let prior = m.expect_state()?;
    if prior.base() != f.dom() {
        return Err(Error::ShapeMismatch(format!(
            "prior over {} for experiments on {}",
            prior.base(),
            f.dom()
        )));
    }
    Ok(prior.support().collect())
}

/// Builds the kernel `rows[x][y]` from an LP solution, filling unconstrained rows.
fn kernel_from_solution(
    x: &FiniteSet,
    y: &FiniteSet,
    vars: &[Option<Vec<VarId>>],
    solution: &[Rational],
) -> Result<QKernel> {
    let fallback = FinDist::uniform(y).expect("rational uniform");
    let columns = vars
        .iter()
        .map(|row| match row {
            Some(ids) => FinDist::new(y, ids.iter().map(|v| solution[v.index()].clone()).collect()),
            None => Ok(fallback.clone()),
        })
        .collect::<Result<Vec<_>>>()?;
    Kernel::new(x, y, columns)
}

/// Variables `c(y|x)`, row normalization for every `x`, and the transfer
/// equations `Σ_x c(y|x) f(x|θ) = g(y|θ)` for `θ` in `thetas`.
fn garbling_system(f: &QKernel, g: &QKernel, thetas: &[usize]) -> Result<(LinearSystem, Vec<Option<Vec<VarId>>>)> {
    let (x, y) = (f.cod(), g.cod());
    let mut sys = LinearSystem::new();
    let vars: Vec<Vec<VarId>> = (0..x.len())
        .map(|xi| {
            (0..y.len())
                .map(|yi| sys.add_variable(format!("c({}|{})", y.label(yi), x.label(xi))))
                .collect()
        })
        .collect();
    for row in &vars {
        sys.add_equality(row.iter().map(|v| (*v, Rational::one())), Rational::one())?;
    }
    for &t in thetas {
        for yi in 0..y.len() {
            let terms = vars
                .iter()
                .enumerate()
                .map(|(xi, row)| (row[yi], f.weight(t, xi).clone()));
            sys.add_equality(terms, g.weight(t, yi).clone())?;
        }
    }
    Ok((sys, vars.into_iter().map(Some).collect()))
}

/// The system solved by [`find_garbling`] (`m = None`) or [`find_garbling_as`].
pub fn garbling_lp(f: &QKernel, g: &QKernel, m: Option<&QKernel>) -> Result<LinearSystem> {
    check_experiments(f, g)?;
    let thetas = match m {
        Some(m) => check_prior(f, m)?,
        None => (0..f.dom().len()).collect(),
    };
    Ok(garbling_system(f, g, &thetas)?.0)
}

/// A garbling `c` with `c ∘ f = g`, if one exists.
pub fn find_garbling(f: &QKernel, g: &QKernel) -> Result<Option<QKernel>> {
    check_experiments(f, g)?;
    let thetas: Vec<usize> = (0..f.dom().len()).collect();
    let (sys, vars) = garbling_system(f, g, &thetas)?;
    sys.find_feasible()
        .solution()
        .map(|s| kernel_from_solution(f.cod(), g.cod(), &vars, &s))
        .transpose()
}

/// A garbling `c` with `c ∘ f ≈_m g`, if one exists.
pub fn find_garbling_as(f: &QKernel, g: &QKernel, m: &QKernel) -> Result<Option<QKernel>> {
    check_experiments(f, g)?;
    let support = check_prior(f, m)?;
    let (sys, vars) = garbling_system(f, g, &support)?;
    sys.find_feasible()
        .solution()
        .map(|s| kernel_from_solution(f.cod(), g.cod(), &vars, &s))
        .transpose()
}

/// Bayesian informativeness for a finite hypothesis set: the a.s. comparison
/// under the uniform prior.
pub fn find_garbling_bayes(f: &QKernel, g: &QKernel) -> Result<Option<QKernel>> {
    let m = uniform_prior(f.dom());
    find_garbling_as(f, g, &m)
}

pub fn uniform_prior(theta: &FiniteSet) -> QKernel {
    Kernel::state(FinDist::uniform(theta).expect("rational uniform"))
}

pub fn is_garbling(c: &QKernel, f: &QKernel, g: &QKernel) -> Result<bool> {
    Ok(compose(c, f)? == *g)
}

pub fn is_garbling_as(c: &QKernel, f: &QKernel, g: &QKernel, m: &QKernel) -> Result<bool> {
    ase(&compose(c, f)?, g, m)
}

/// Joint experiment `h : Θ → X × Y` together with the recovery kernel
/// `alpha : X → X × Y` witnessing that the `X` projection is sufficient.
#[derive(Debug, Clone, PartialEq)]
pub struct SufficiencyWitness {
    pub h: QKernel,
    pub alpha: QKernel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SufficiencyCheck {
    pub statistic_equation: bool,
    pub left_marginal_exact: bool,
    pub right_marginal_as: bool,
}

impl SufficiencyCheck {
    pub fn passed(&self) -> bool {
        self.statistic_equation && self.left_marginal_exact && self.right_marginal_as
    }
}

/// `(id ⊗ s) ∘ copy ∘ h = (alpha ⊗ id) ∘ copy ∘ s ∘ h` for the projection `s : X × Y → X`.
pub fn is_sufficient_statistic(h: &QKernel, alpha: &QKernel) -> Result<bool> {
    let (x, y) = h.cod().expect_factors()?;
    let xy = h.cod();
    let s = Kernel::projection(x, y, Side::Left);
    let lhs = chain(&[&tensor(&Kernel::identity(xy), &s), &Kernel::copy(xy), h])?;
    let rhs = chain(&[&tensor(alpha, &Kernel::identity(x)), &Kernel::copy(x), &s, h])?;
    Ok(lhs == rhs)
}

impl SufficiencyWitness {
    pub fn check(&self, f: &QKernel, g: &QKernel, m: &QKernel) -> Result<SufficiencyCheck> {
        Ok(SufficiencyCheck {
            statistic_equation: is_sufficient_statistic(&self.h, &self.alpha)?,
            left_marginal_exact: self.h.marginal(Side::Left)? == *f,
            right_marginal_as: ase(&self.h.marginal(Side::Right)?, g, m)?,
        })
    }
}

/// `h = (id ⊗ c) ∘ copy ∘ f` and `alpha = (id ⊗ c) ∘ copy` from a garbling `c`.
pub fn sufficiency_witness(f: &QKernel, g: &QKernel, c: &QKernel, m: &QKernel) -> Result<SufficiencyWitness> {
    if !is_garbling_as(c, f, g, m)? {
        return Err(Error::Precondition("c is not an m-a.s. garbling of f into g".into()));
    }
    let alpha = compose(&tensor(&Kernel::identity(f.cod()), c), &Kernel::copy(f.cod()))?;
    let h = compose(&alpha, f)?;
    Ok(SufficiencyWitness { h, alpha })
}

/// Outcomes `x` with `f(x|θ) > 0` for some `θ` in the support.
fn reachable(f: &QKernel, support: &[usize]) -> Vec<bool> {
    let mut reach = vec![false; f.cod().len()];
    for &t in support {
        for xi in f.column(t).support() {
            reach[xi] = true;
        }
    }
    reach
}

/// Searches for a joint experiment whose `X` projection is sufficient.
///
/// The sufficiency equation with `h`'s `X`-marginal equal to `f` forces
/// `h(x, y|θ) = f(x|θ) · alpha(x, y|x)` and `alpha(x', y|x) = 0` for
/// `x' ≠ x`, so the unknowns are the diagonal entries `alpha(x, y|x)` over
/// reachable `x`. Any solution is rebuilt into `(h, alpha)` and checked
/// against the categorical equations.
pub fn search_sufficiency(f: &QKernel, g: &QKernel, m: &QKernel) -> Result<Option<SufficiencyWitness>> {
    check_experiments(f, g)?;
    let support = check_prior(f, m)?;
    let (x, y) = (f.cod(), g.cod());
    let reach = reachable(f, &support);
    let mut sys = LinearSystem::new();
    let vars: Vec<Option<Vec<VarId>>> = (0..x.len())
        .map(|xi| {
            reach[xi].then(|| {
                (0..y.len())
                    .map(|yi| sys.add_variable(format!("alpha({},{}|{})", x.label(xi), y.label(yi), x.label(xi))))
                    .collect()
            })
        })
        .collect();
    for row in vars.iter().flatten() {
        sys.add_equality(row.iter().map(|v| (*v, Rational::one())), Rational::one())?;
    }
    for &t in &support {
        for yi in 0..y.len() {
            let terms = vars
                .iter()
                .enumerate()
                .filter_map(|(xi, row)| row.as_ref().map(|r| (r[yi], f.weight(t, xi).clone())));
            sys.add_equality(terms, g.weight(t, yi).clone())?;
        }
    }
    let Some(solution) = sys.find_feasible().solution() else {
        return Ok(None);
    };
    let a = kernel_from_solution(x, y, &vars, &solution)?;
    let alpha = compose(&tensor(&Kernel::identity(x), &a), &Kernel::copy(x))?;
    let h = compose(&alpha, f)?;
    let witness = SufficiencyWitness { h, alpha };
    if !witness.check(f, g, m)?.passed() {
        return Err(Error::Precondition("sufficiency witness failed verification".into()));
    }
    Ok(Some(witness))
}

/// A state `mu : I → Θ × (X × Y)` with a decomposition through `X`:
/// `mu = (k ⊗ (id ⊗ c)) ∘ (id ⊗ copy) ∘ copy ∘ n`.
#[derive(Debug, Clone, PartialEq)]
pub struct IndependenceWitness {
    pub mu: QKernel,
    pub n: QKernel,
    pub k: QKernel,
    pub c: QKernel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndependenceCheck {
    /// `Θ`-marginal of `mu` is the prior.
    pub prior_marginal: bool,
    /// `mu` factors through `X` as stored in the witness.
    pub markov_factorization: bool,
    /// Conditional of `X` given `Θ` is `m`-a.s. `f`.
    pub x_given_theta: bool,
    /// Conditional of `Y` given `Θ` is `m`-a.s. `g`.
    pub y_given_theta: bool,
}

impl IndependenceCheck {
    pub fn passed(&self) -> bool {
        self.prior_marginal && self.markov_factorization && self.x_given_theta && self.y_given_theta
    }
}

/// `n ↦ (k ⊗ (id ⊗ c)) ∘ (id ⊗ copy) ∘ copy ∘ n`.
fn factor_through(n: &QKernel, k: &QKernel, c: &QKernel) -> Result<QKernel> {
    let x = n.cod();
    chain(&[
        &tensor(k, &tensor(&Kernel::identity(x), c)),
        &tensor(&Kernel::identity(x), &Kernel::copy(x)),
        &Kernel::copy(x),
        n,
    ])
}

/// Conditional `Θ → Z` of a state on `Θ × Z`.
fn given_left(state: &QKernel) -> Result<QKernel> {
    let (theta, _) = state.cod().expect_factors()?;
    compose(&conditional(state, Side::Left)?, &Kernel::unit_right_inv(theta))
}

impl IndependenceWitness {
    pub fn check(&self, f: &QKernel, g: &QKernel, m: &QKernel) -> Result<IndependenceCheck> {
        let (theta, xy) = self.mu.cod().expect_factors()?;
        let (x, y) = xy.expect_factors()?;
        let theta_x = compose(
            &tensor(&Kernel::identity(theta), &Kernel::projection(x, y, Side::Left)),
            &self.mu,
        )?;
        let theta_y = compose(
            &tensor(&Kernel::identity(theta), &Kernel::projection(x, y, Side::Right)),
            &self.mu,
        )?;
        Ok(IndependenceCheck {
            prior_marginal: self.mu.marginal(Side::Left)? == *m,
            markov_factorization: factor_through(&self.n, &self.k, &self.c)? == self.mu,
            x_given_theta: ase(&given_left(&theta_x)?, f, m)?,
            y_given_theta: ase(&given_left(&theta_y)?, g, m)?,
        })
    }

    /// The garbling read off the decomposition.
    pub fn garbling(&self) -> &QKernel {
        &self.c
    }
}

/// `mu = (id ⊗ h) ∘ copy ∘ m` with its decomposition through `X`.
pub fn conditional_independence_witness(h: &QKernel, m: &QKernel) -> Result<IndependenceWitness> {
    let theta = h.dom();
    let (x, y) = h.cod().expect_factors()?;
    let mu = chain(&[&tensor(&Kernel::identity(theta), h), &Kernel::copy(theta), m])?;
    let xy_state = mu.marginal(Side::Right)?;
    let n = xy_state.marginal(Side::Left)?;
    let theta_x = compose(
        &tensor(&Kernel::identity(theta), &Kernel::projection(x, y, Side::Left)),
        &mu,
    )?;
    let k = compose(&conditional(&theta_x, Side::Right)?, &Kernel::unit_right_inv(x))?;
    let c = compose(&conditional(&xy_state, Side::Left)?, &Kernel::unit_right_inv(x))?;
    Ok(IndependenceWitness { mu, n, k, c })
}

/// Searches for a state displaying `Θ ⊥ Y | X` with the required marginals.
///
/// The prior and `X`-given-`Θ` conditions pin the `(Θ, X)` part to the
/// joint of `m` and `f`, so `n = f ∘ m` and `k` is the Bayesian inverse of
/// `f`; the unknown is `c(y|x)` on the support of `n`, constrained by the
/// `(Θ, Y)` joint `m(θ) g(y|θ)`.
pub fn search_conditional_independence(f: &QKernel, g: &QKernel, m: &QKernel) -> Result<Option<IndependenceWitness>> {
    check_experiments(f, g)?;
    let support = check_prior(f, m)?;
    let prior = m.expect_state()?.clone();
    let (x, y) = (f.cod(), g.cod());
    let n = compose(f, m)?;
    let n_state = n.expect_state()?.clone();
    let mut sys = LinearSystem::new();
    let vars: Vec<Option<Vec<VarId>>> = (0..x.len())
        .map(|xi| {
            (!n_state.weight(xi).is_zero()).then(|| {
                (0..y.len())
                    .map(|yi| sys.add_variable(format!("c({}|{})", y.label(yi), x.label(xi))))
                    .collect()
            })
        })
        .collect();
    for row in vars.iter().flatten() {
        sys.add_equality(row.iter().map(|v| (*v, Rational::one())), Rational::one())?;
    }
    for &t in &support {
        let mt = prior.weight(t);
        for yi in 0..y.len() {
            let terms = vars
                .iter()
                .enumerate()
                .filter_map(|(xi, row)| row.as_ref().map(|r| (r[yi], mt * f.weight(t, xi))));
            sys.add_equality(terms, mt * g.weight(t, yi))?;
        }
    }
    let Some(solution) = sys.find_feasible().solution() else {
        return Ok(None);
    };
    let c = kernel_from_solution(x, y, &vars, &solution)?;
    let k = bayesian_inverse(f, m)?;
    let mu = factor_through(&n, &k, &c)?;
    let witness = IndependenceWitness { mu, n, k, c };
    if !witness.check(f, g, m)?.passed() {
        return Err(Error::Precondition("independence witness failed verification".into()));
    }
    Ok(Some(witness))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(labels: &[&str]) -> FiniteSet {
        FiniteSet::atoms(labels.iter().copied()).unwrap()
    }

    fn rod() -> (QKernel, QKernel, QKernel, QKernel) {
        let theta = set(&["safe", "faulty"]);
        let x = set(&["pass", "fail"]);
        let f = Kernel::from_literals(&theta, &x, &[&["0.96", "0.04"], &["0.6", "0.4"]]).unwrap();
        let g = Kernel::from_literals(&theta, &x, &[&["0.72", "0.28"], &["0.45", "0.55"]]).unwrap();
        let c = Kernel::from_literals(&x, &x, &[&["0.75", "0.25"], &["0", "1"]]).unwrap();
        (f, g, c, uniform_prior(&theta))
    }

    #[test]
    fn rod_garbling_exists_and_known_witness_verifies() {
        let (f, g, c, m) = rod();
        let found = find_garbling(&f, &g).unwrap().expect("feasible");
        assert!(is_garbling(&found, &f, &g).unwrap());
        assert!(is_garbling(&c, &f, &g).unwrap());
        assert!(find_garbling_bayes(&f, &g).unwrap().is_some());
        assert!(find_garbling_as(&f, &g, &m).unwrap().is_some());
        assert!(find_garbling(&g, &f).unwrap().is_none());
    }

    #[test]
    fn identity_and_uninformative_cases() {
        let (f, _, _, m) = rod();
        let c = find_garbling(&f, &f).unwrap().unwrap();
        assert!(is_garbling(&c, &f, &f).unwrap());
        assert!(is_garbling(&Kernel::identity(f.cod()), &f, &f).unwrap());

        let theta = f.dom().clone();
        let flat = Kernel::constant(&theta, f.column(0));
        let id = Kernel::<Rational>::identity(&theta);
        assert!(find_garbling(&flat, &id).unwrap().is_none());
        assert!(find_garbling_as(&flat, &id, &m).unwrap().is_none());
    }

    #[test]
    fn point_prior_only_needs_one_column() {
        let (f, _, _, _) = rod();
        let theta = f.dom().clone();
        let y = set(&["u", "v", "w"]);
        let g = Kernel::from_literals(&theta, &y, &[&["1/8", "3/8", "1/2"], &["1", "0", "0"]]).unwrap();
        let m = Kernel::state(FinDist::dirac(&theta, 0));
        let c = find_garbling_as(&f, &g, &m).unwrap().expect("feasible");
        assert!(is_garbling_as(&c, &f, &g, &m).unwrap());
        let constant = Kernel::constant(f.cod(), g.column(0));
        assert!(is_garbling_as(&constant, &f, &g, &m).unwrap());
    }

    #[test]
    fn differing_off_support_uses_identity() {
        let (f, _, _, _) = rod();
        let theta = f.dom().clone();
        let mut cols = f.columns().to_vec();
        cols[1] = FinDist::dirac(f.cod(), 1);
        let g = Kernel::new(&theta, f.cod(), cols).unwrap();
        let m = Kernel::state(FinDist::dirac(&theta, 0));
        assert!(is_garbling_as(&Kernel::identity(f.cod()), &f, &g, &m).unwrap());
        assert!(find_garbling_as(&f, &g, &m).unwrap().is_some());
    }

    #[test]
    fn rod_sufficiency_and_independence() {
        let (f, g, c, m) = rod();
        let w = sufficiency_witness(&f, &g, &c, &m).unwrap();
        assert!(w.check(&f, &g, &m).unwrap().passed());
        assert_eq!(w.h.marginal(Side::Left).unwrap(), f);
        assert_eq!(w.h.marginal(Side::Right).unwrap(), g);

        let ci = conditional_independence_witness(&w.h, &m).unwrap();
        assert!(ci.check(&f, &g, &m).unwrap().passed());
        assert!(is_garbling_as(ci.garbling(), &f, &g, &m).unwrap());

        assert!(search_sufficiency(&f, &g, &m).unwrap().is_some());
        assert!(search_conditional_independence(&f, &g, &m).unwrap().is_some());
        assert!(search_sufficiency(&g, &f, &m).unwrap().is_none());
        assert!(search_conditional_independence(&g, &f, &m).unwrap().is_none());
    }

    #[test]
    fn identity_garbling_gives_copy() {
        let (f, _, _, m) = rod();
        let w = sufficiency_witness(&f, &f, &Kernel::identity(f.cod()), &m).unwrap();
        assert_eq!(w.h, compose(&Kernel::copy(f.cod()), &f).unwrap());
    }

    #[test]
    fn deterministic_experiment_pairs_dirac_with_garbling() {
        let (f, _, c, m) = rod();
        let det = Kernel::<Rational>::from_fn(f.dom(), f.cod(), |i| i);
        let g = compose(&c, &det).unwrap();
        let w = sufficiency_witness(&det, &g, &c, &m).unwrap();
        let xy = w.h.cod().clone();
        for t in 0..2 {
            for k in w.h.column(t).support() {
                assert_eq!(xy.split_index(k).0, t);
            }
            assert_eq!(w.h.column(t).marginal(Side::Right).unwrap(), *c.column(t));
        }
    }

    #[test]
    fn rejects_invalid_garbling() {
        let (f, g, _, m) = rod();
        let bad = Kernel::identity(f.cod());
        assert!(matches!(
            sufficiency_witness(&f, &g, &bad, &m),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn constant_garbling_factorizes_trivially() {
        let (f, _, _, m) = rod();
        let y = set(&["u", "v"]);
        let q = FinDist::from_literals(&y, &[("u", "1/3"), ("v", "2/3")]).unwrap();
        let c = Kernel::constant(f.cod(), &q);
        let g = compose(&c, &f).unwrap();
        let w = sufficiency_witness(&f, &g, &c, &m).unwrap();
        let ci = conditional_independence_witness(&w.h, &m).unwrap();
        assert!(ci.check(&f, &g, &m).unwrap().passed());
        assert!(ci.c.columns().iter().all(|col| *col == q));
    }
}
