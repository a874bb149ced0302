//! Standard experiments and measures, dilations, second-order dominance, and
//! the Blackwell-Sherman-Stein equivalence between garblings and dilations.
//!
//! Distributions over posteriors live on finite sets of [`Point`]s. The
//! algebra on points is the barycenter map, so a dilation is a kernel on
//! points whose rows average back to their source point.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::comparison::{find_garbling, find_garbling_as, is_garbling_as};
use crate::conditioning::{ase, bayesian_inverse, is_bayesian_inverse, Point, PointSpace};
use crate::feasibility::{LinearSystem, VarId};
use crate::findist::{FinDist, Mixture};
use crate::finset::FiniteSet;
use crate::kernel::{chain, compose, Kernel};
use crate::semiring::Rational;
use crate::{Error, Result};

type QKernel = Kernel<Rational>;

/// Descending lexicographic order on weight vectors.
fn point_cmp(a: &Point, b: &Point) -> Ordering {
    b.weights().cmp(a.weights())
}

/// A finitely supported distribution over points of `PΘ`.
///
/// Points are distinct and sorted by their weight vectors, largest first,
/// so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MetaDist {
    theta: FiniteSet,
    entries: Vec<(Point, Rational)>,
}

impl MetaDist {
    /// Merges equal points, drops zero weights, checks normalization.
    pub fn new(theta: &FiniteSet, entries: impl IntoIterator<Item = (Point, Rational)>) -> Result<Self> {
        let mixture = Mixture::new(entries)?;
        let mut entries = mixture.entries().to_vec();
        if let Some((p, _)) = entries.iter().find(|(p, _)| p.base() != theta) {
            return Err(Error::ShapeMismatch(format!(
                "point over {} in a meta-distribution over {theta}",
                p.base()
            )));
        }
        entries.sort_by(|a, b| point_cmp(&a.0, &b.0));
        Ok(MetaDist {
            theta: theta.clone(),
            entries,
        })
    }

    pub fn dirac(point: Point) -> Self {
        MetaDist {
            theta: point.base().clone(),
            entries: vec![(point, Rational::one())],
        }
    }

    /// A state on a point object, read as a distribution over its points.
    pub fn from_state(space: &PointSpace<Rational>, state: &FinDist<Rational>) -> Result<Self> {
        if state.base() != space.set() {
            return Err(Error::ShapeMismatch(format!(
                "state over {} for points {}",
                state.base(),
                space.set()
            )));
        }
        MetaDist::new(
            space.theta(),
            state
                .support()
                .map(|i| (space.point(i).clone(), state.weight(i).clone())),
        )
    }

    pub fn theta(&self) -> &FiniteSet {
        &self.theta
    }

    pub fn entries(&self) -> &[(Point, Rational)] {
        &self.entries
    }

    pub fn points(&self) -> impl Iterator<Item = &Point> {
        self.entries.iter().map(|(p, _)| p)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn weight_of(&self, point: &Point) -> Rational {
        self.entries
            .iter()
            .find(|(p, _)| p == point)
            .map(|(_, w)| w.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// The weight-averaged point.
    pub fn barycenter(&self) -> Point {
        let mut acc = vec![Rational::zero(); self.theta.len()];
        for (p, w) in &self.entries {
            for (a, x) in acc.iter_mut().zip(p.weights()) {
                *a += w * x;
            }
        }
        FinDist::new(&self.theta, acc).expect("convex combination of points is normalized")
    }
}

pub fn barycenter(md: &MetaDist) -> Point {
    md.barycenter()
}

/// A kernel on points, stored on its source points only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dilation {
    rows: Vec<(Point, MetaDist)>,
}

impl Dilation {
    pub fn new(rows: Vec<(Point, MetaDist)>) -> Result<Self> {
        for (i, (p, row)) in rows.iter().enumerate() {
            if rows[..i].iter().any(|(q, _)| q == p) {
                return Err(Error::DuplicateLabel(p.vector_label()));
            }
            if row.theta() != p.base() {
                return Err(Error::ShapeMismatch("row over a different Θ".into()));
            }
        }
        Ok(Dilation { rows })
    }

    /// Each point of `md` goes to itself.
    pub fn identity(md: &MetaDist) -> Self {
        Dilation {
            rows: md.points().map(|p| (p.clone(), MetaDist::dirac(p.clone()))).collect(),
        }
    }

    pub fn rows(&self) -> &[(Point, MetaDist)] {
        &self.rows
    }

    pub fn row(&self, source: &Point) -> Option<&MetaDist> {
        self.rows.iter().find(|(p, _)| p == source).map(|(_, r)| r)
    }

    fn covering_rows<'a>(&'a self, wrt: &'a MetaDist) -> Result<Vec<(&'a Point, &'a Rational, &'a MetaDist)>> {
        wrt.entries()
            .iter()
            .map(|(p, w)| {
                self.row(p)
                    .map(|r| (p, w, r))
                    .ok_or_else(|| Error::Precondition(format!("no row for source point {}", p.vector_label())))
            })
            .collect()
    }

    /// Every row on the support of `wrt` has its source point as barycenter.
    pub fn is_dilation(&self, wrt: &MetaDist) -> Result<bool> {
        Ok(self
            .covering_rows(wrt)?
            .into_iter()
            .all(|(p, _, row)| row.barycenter() == *p))
    }

    /// Pushes `q_hat` through the rows.
    pub fn transport(&self, q_hat: &MetaDist) -> Result<MetaDist> {
        let mut entries = Vec::new();
        for (_, w, row) in self.covering_rows(q_hat)? {
            for (p, v) in row.entries() {
                entries.push((p.clone(), w * v));
            }
        }
        MetaDist::new(q_hat.theta(), entries)
    }

    /// The rows as a kernel between two point objects. Source points of
    /// `dom` without a row map uniformly; they lie outside the support.
    pub fn to_kernel(&self, dom: &PointSpace<Rational>, cod: &PointSpace<Rational>) -> Result<QKernel> {
        let fallback = FinDist::uniform(cod.set()).ok_or_else(|| Error::ShapeMismatch("empty point object".into()))?;
        let columns = dom
            .points()
            .iter()
            .map(|p| match self.row(p) {
                None => Ok(fallback.clone()),
                Some(row) => {
                    let mut weights = vec![Rational::zero(); cod.set().len()];
                    for (target, w) in row.entries() {
                        let j = cod.index_of(target).ok_or_else(|| {
                            Error::Precondition(format!("target point {} outside the codomain", target.vector_label()))
                        })?;
                        weights[j] = w.clone();
                    }
                    FinDist::new(cod.set(), weights)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Kernel::new(dom.set(), cod.set(), columns)
    }
}

/// `f̂ = (f†)♯ ∘ f`, together with the point object and the posterior map `(f†)♯`.
#[derive(Clone, Debug, PartialEq)]
pub struct StandardExperiment {
    pub space: PointSpace<Rational>,
    /// `Θ → P`.
    pub kernel: QKernel,
    /// `X → P`, sending an observation to its posterior.
    pub posterior: QKernel,
}

pub fn standard_experiment(f: &QKernel, m: &QKernel) -> Result<StandardExperiment> {
    let inverse = bayesian_inverse(f, m)?;
    let space = PointSpace::from_kernels(&[&inverse])?;
    let posterior = space.sharp(&inverse)?;
    let kernel = compose(&posterior, f)?;
    Ok(StandardExperiment {
        space,
        kernel,
        posterior,
    })
}

/// `f̂_m = f̂ ∘ m` as a distribution over posteriors.
pub fn standard_measure(f: &QKernel, m: &QKernel) -> Result<MetaDist> {
    let se = standard_experiment(f, m)?;
    let state = compose(&se.kernel, m)?;
    MetaDist::from_state(&se.space, state.expect_state()?)
}

fn dilation_vars(p_hat: &MetaDist, q_hat: &MetaDist) -> Result<(LinearSystem, Vec<Vec<VarId>>)> {
    if p_hat.theta() != q_hat.theta() {
        return Err(Error::ShapeMismatch(format!(
            "meta-distributions over {} and {}",
            p_hat.theta(),
            q_hat.theta()
        )));
    }
    let mut sys = LinearSystem::new();
    let vars: Vec<Vec<VarId>> = q_hat
        .points()
        .map(|mu| {
            p_hat
                .points()
                .map(|nu| sys.add_variable(format!("t({}|{})", nu.vector_label(), mu.vector_label())))
                .collect()
        })
        .collect();
    for (row, mu) in vars.iter().zip(q_hat.points()) {
        sys.add_equality(row.iter().map(|v| (*v, Rational::one())), Rational::one())?;
        for th in 0..q_hat.theta().len() {
            let terms = row
                .iter()
                .zip(p_hat.points())
                .map(|(v, nu)| (*v, nu.weight(th).clone()));
            sys.add_equality(terms, mu.weight(th).clone())?;
        }
    }
    for (j, (_, p)) in p_hat.entries().iter().enumerate() {
        let terms = vars
            .iter()
            .zip(q_hat.entries())
            .map(|(row, (_, q))| (row[j], q.clone()));
        sys.add_equality(terms, p.clone())?;
    }
    Ok((sys, vars))
}

/// The system solved by [`find_dilation`]: variables `t(ν|μ)` for `μ` in the
/// support of `q_hat` and `ν` in the support of `p_hat`.
pub fn dilation_lp(p_hat: &MetaDist, q_hat: &MetaDist) -> Result<LinearSystem> {
    Ok(dilation_vars(p_hat, q_hat)?.0)
}

/// A dilation of `q_hat` transporting it onto `p_hat`, if one exists.
pub fn find_dilation(p_hat: &MetaDist, q_hat: &MetaDist) -> Result<Option<Dilation>> {
    let theta = q_hat.theta();
    let (sys, vars) = dilation_vars(p_hat, q_hat)?;
    let Some(solution) = sys.find_feasible().solution() else {
        return Ok(None);
    };
    let rows = vars
        .iter()
        .zip(q_hat.points())
        .map(|(row, mu)| {
            let entries = row
                .iter()
                .zip(p_hat.points())
                .map(|(v, nu)| (nu.clone(), solution[v.index()].clone()));
            Ok((mu.clone(), MetaDist::new(theta, entries)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(Dilation::new(rows)?))
}

/// A distribution over meta-distributions: the rows of a dilation weighted by `q_hat`.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialEvaluation {
    pub theta: FiniteSet,
    pub r: Mixture<MetaDist, Rational>,
}

impl PartialEvaluation {
    /// Flattening leg: the mixture of the rows.
    pub fn sample_leg(&self) -> Result<MetaDist> {
        let entries = self
            .r
            .entries()
            .iter()
            .flat_map(|(row, w)| row.entries().iter().map(move |(p, v)| (p.clone(), w * v)));
        MetaDist::new(&self.theta, entries.collect::<Vec<_>>())
    }

    /// Algebra leg: the pushforward of `r` along the barycenter map.
    pub fn algebra_leg(&self) -> Result<MetaDist> {
        MetaDist::new(
            &self.theta,
            self.r.entries().iter().map(|(row, w)| (row.barycenter(), w.clone())),
        )
    }
}

pub fn derive_partial_evaluation(t: &Dilation, q_hat: &MetaDist) -> Result<PartialEvaluation> {
    if !t.is_dilation(q_hat)? {
        return Err(Error::Precondition("not a dilation of the given measure".into()));
    }
    let r = Mixture::new(
        q_hat
            .entries()
            .iter()
            .map(|(p, w)| (t.row(p).expect("covered").clone(), w.clone())),
    )?;
    Ok(PartialEvaluation {
        theta: q_hat.theta().clone(),
        r,
    })
}

/// `Points → X`: a Bayesian inverse of the posterior map with respect to `f ∘ m`.
pub fn recovery_map(f: &QKernel, m: &QKernel) -> Result<QKernel> {
    let se = standard_experiment(f, m)?;
    recovery_from(&se, f, m)
}

fn recovery_from(se: &StandardExperiment, f: &QKernel, m: &QKernel) -> Result<QKernel> {
    bayesian_inverse(&se.posterior, &compose(f, m)?)
}

/// Builds a dilation of `ĝ_m` onto `f̂_m` from an `m`-a.s. garbling `c ∘ f ≈_m g`.
pub fn garbling_to_dilation(c: &QKernel, f: &QKernel, g: &QKernel, m: &QKernel) -> Result<Dilation> {
    if !is_garbling_as(c, f, g, m)? {
        return Err(Error::Precondition("c is not an m-a.s. garbling of f into g".into()));
    }
    let se_f = standard_experiment(f, m)?;
    let se_g = standard_experiment(g, m)?;
    let recover = recovery_from(&se_f, f, m)?;
    let lifted = chain(&[&se_g.posterior, c, &recover])?;
    if !ase(&compose(&lifted, &se_f.kernel)?, &se_g.kernel, m)? {
        return Err(Error::Precondition(
            "lifted garbling does not convert the standard experiments".into(),
        ));
    }
    let f_state = compose(&se_f.kernel, m)?;
    let inverse = bayesian_inverse(&lifted, &f_state)?;
    let g_hat = standard_measure(g, m)?;
    let rows = g_hat
        .points()
        .map(|nu| {
            let j = se_g.space.index_of(nu).expect("support point of ĝ_m");
            let col = inverse.column(j);
            let row = MetaDist::new(
                f.dom(),
                col.support()
                    .map(|i| (se_f.space.point(i).clone(), col.weight(i).clone())),
            )?;
            Ok((nu.clone(), row))
        })
        .collect::<Result<Vec<_>>>()?;
    Dilation::new(rows)
}

/// Builds a garbling `c` with `c ∘ f ≈_m g` from a dilation of `ĝ_m` onto `f̂_m`.
pub fn dilation_to_garbling(t: &Dilation, f: &QKernel, g: &QKernel, m: &QKernel) -> Result<QKernel> {
    let se_f = standard_experiment(f, m)?;
    let se_g = standard_experiment(g, m)?;
    let f_hat = MetaDist::from_state(&se_f.space, compose(&se_f.kernel, m)?.expect_state()?)?;
    let g_state = compose(&se_g.kernel, m)?;
    let g_hat = MetaDist::from_state(&se_g.space, g_state.expect_state()?)?;
    if !t.is_dilation(&g_hat)? || t.transport(&g_hat)? != f_hat {
        return Err(Error::Precondition("t is not a dilation of ĝ_m onto f̂_m".into()));
    }
    let t_kernel = t.to_kernel(&se_g.space, &se_f.space)?;
    let t_inverse = bayesian_inverse(&t_kernel, &g_state)?;
    let recover_g = recovery_from(&se_g, g, m)?;
    chain(&[&recover_g, &t_inverse, &se_f.posterior])
}

/// Whether the sampling map on `f̂`'s points is a Bayesian inverse of `f̂` for `m`.
pub fn verify_samp_is_bayesian_inverse(f: &QKernel, m: &QKernel) -> Result<bool> {
    let se = standard_experiment(f, m)?;
    is_bayesian_inverse(&se.kernel, m, &se.space.samp())
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstructiveCheck {
    /// The dilation built from the garbling passes the dilation and transport checks.
    pub dilation_from_garbling: bool,
    /// The garbling built from the dilation satisfies `c ∘ f ≈_m g`.
    pub garbling_from_dilation: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BssReport {
    pub f_measure: MetaDist,
    pub g_measure: MetaDist,
    pub garbling: Option<QKernel>,
    pub dilation: Option<Dilation>,
    /// Both searches returned the same verdict.
    pub agree: bool,
    /// Plain `f ⪰ g` verdict, reported when the prior has full support.
    pub plain: Option<bool>,
    pub constructive: Option<ConstructiveCheck>,
}

impl BssReport {
    pub fn garbling_exists(&self) -> bool {
        self.garbling.is_some()
    }

    pub fn dilation_exists(&self) -> bool {
        self.dilation.is_some()
    }

    /// Verdict agreement, plus agreement with the plain order and the
    /// constructive directions where those were run.
    pub fn consistent(&self) -> bool {
        self.agree
            && self.plain.is_none_or(|p| p == self.garbling_exists())
            && self
                .constructive
                .as_ref()
                .is_none_or(|c| c.dilation_from_garbling && c.garbling_from_dilation)
    }
}

/// Runs both sides of the equivalence and cross-checks them.
pub fn bss_check(f: &QKernel, g: &QKernel, m: &QKernel) -> Result<BssReport> {
    let garbling = find_garbling_as(f, g, m)?;
    let f_measure = standard_measure(f, m)?;
    let g_measure = standard_measure(g, m)?;
    let dilation = find_dilation(&f_measure, &g_measure)?;
    let full_support = m.expect_state()?.support().count() == f.dom().len();
    let plain = if full_support {
        Some(find_garbling(f, g)?.is_some())
    } else {
        None
    };
    let constructive = match (&garbling, &dilation) {
        (Some(c), Some(t)) => {
            let built = garbling_to_dilation(c, f, g, m)?;
            let dilation_from_garbling = built.is_dilation(&g_measure)? && built.transport(&g_measure)? == f_measure;
            let back = dilation_to_garbling(t, f, g, m)?;
            Some(ConstructiveCheck {
                dilation_from_garbling,
                garbling_from_dilation: is_garbling_as(&back, f, g, m)?,
            })
        }
        _ => None,
    };
    Ok(BssReport {
        agree: garbling.is_some() == dilation.is_some(),
        f_measure,
        g_measure,
        garbling,
        dilation,
        plain,
        constructive,
    })
}
