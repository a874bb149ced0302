//! Conditionals, Bayesian inverses, almost-sure equality, domination,
//! distribution points with their sampling maps, and the doubling
//! constructions for kernels into products.

use crate::findist::FinDist;
pub use crate::findist::Side;
use crate::finset::FiniteSet;
use crate::kernel::{chain, compose, tensor, Kernel};
use crate::semiring::{ConditionalStrategy, Rational, Semiring};
use crate::{Error, Result};

/// A rational probability vector over `Θ`: an element of `PΘ`.
pub type Point = FinDist<Rational>;

fn capability<S: Semiring>(operation: &'static str) -> Error {
    Error::Capability {
        semiring: S::NAME,
        operation,
    }
}

/// The weight of `y` given `(x, a)` from a joint weight and its marginal.
fn conditional_weight<S: Semiring>(joint: &S, marginal: &S) -> Result<S> {
    match S::CONDITIONALS {
        ConditionalStrategy::Division => joint
            .try_div(marginal)
            .ok_or_else(|| Error::Precondition(format!("no exact quotient {}/{}", joint.render(), marginal.render()))),
        ConditionalStrategy::OrderedIdempotent => {
            if joint.order(marginal) == Some(std::cmp::Ordering::Less) {
                Ok(joint.clone())
            } else {
                Ok(S::one())
            }
        }
        ConditionalStrategy::None => Err(capability::<S>("conditional")),
    }
}

/// Column used where the marginal vanishes and the conditional is unconstrained.
fn fallback_column<S: Semiring>(y: &FiniteSet) -> Result<FinDist<S>> {
    match S::CONDITIONALS {
        ConditionalStrategy::Division => FinDist::uniform(y).ok_or_else(|| capability::<S>("uniform fallback")),
        ConditionalStrategy::OrderedIdempotent => Ok(FinDist::dirac(y, 0)),
        ConditionalStrategy::None => Err(capability::<S>("conditional")),
    }
}

fn conditional_left<S: Semiring>(f: &Kernel<S>) -> Result<Kernel<S>> {
    let (x, y) = f.cod().expect_factors()?;
    let xy = f.cod();
    let a = f.dom();
    let xa = FiniteSet::product(x, a);
    let fallback = fallback_column::<S>(y)?;
    let mut columns = Vec::with_capacity(xa.len());
    for k in 0..xa.len() {
        let (xi, ai) = xa.split_index(k);
        let col = f.column(ai);
        let joint: Vec<&S> = (0..y.len()).map(|yi| col.weight(xy.pair_index(xi, yi))).collect();
        let marginal = S::sum(joint.iter().copied());
        if marginal.is_zero() {
            columns.push(fallback.clone());
            continue;
        }
        let weights = joint
            .into_iter()
            .map(|j| conditional_weight(j, &marginal))
            .collect::<Result<Vec<_>>>()?;
        columns.push(FinDist::new(y, weights)?);
    }
    Kernel::new(&xa, y, columns)
}

/// A conditional of `f : A → X × Y`.
///
/// With respect to `Left` the result is `X × A → Y`; with respect to
/// `Right` it is `Y × A → X`. Columns whose conditioning marginal vanishes
/// are filled with the uniform distribution (division semirings) or the
/// Dirac delta at the first label (ordered idempotent semirings).
pub fn conditional<S: Semiring>(f: &Kernel<S>, wrt: Side) -> Result<Kernel<S>> {
    if !S::supports_conditionals() {
        return Err(capability::<S>("conditional"));
    }
    match wrt {
        Side::Left => conditional_left(f),
        Side::Right => {
            let (x, y) = f.cod().expect_factors()?;
            conditional_left(&compose(&Kernel::swap(x, y), f)?)
        }
    }
}

/// `A → X × (X × A)`: the `X`-marginal of `f` paired with a copy of itself and of the input.
fn marginal_with_input<S: Semiring>(fx: &Kernel<S>) -> Result<Kernel<S>> {
    let a = fx.dom();
    let x = fx.cod();
    chain(&[
        &Kernel::assoc(x, x, a),
        &tensor(&Kernel::copy(x), &Kernel::identity(a)),
        &tensor(fx, &Kernel::identity(a)),
        &Kernel::copy(a),
    ])
}

/// Rebuilds `A → X × Y` from its `X`-marginal and a conditional `X × A → Y`.
pub fn reassemble_left<S: Semiring>(fx: &Kernel<S>, cond: &Kernel<S>) -> Result<Kernel<S>> {
    compose(&tensor(&Kernel::identity(fx.cod()), cond), &marginal_with_input(fx)?)
}

/// Whether `cond` satisfies the defining equation of a conditional of `f`.
pub fn is_conditional<S: Semiring>(f: &Kernel<S>, cond: &Kernel<S>, wrt: Side) -> Result<bool> {
    let (x, y) = f.cod().expect_factors()?;
    match wrt {
        Side::Left => Ok(reassemble_left(&f.marginal(Side::Left)?, cond)? == *f),
        Side::Right => {
            let swapped = compose(&Kernel::swap(x, y), f)?;
            Ok(reassemble_left(&swapped.marginal(Side::Left)?, cond)? == swapped)
        }
    }
}

/// The joint state `(f ⊗ id) ∘ copy ∘ m : I → X × A`.
pub fn joint<S: Semiring>(f: &Kernel<S>, m: &Kernel<S>) -> Result<Kernel<S>> {
    chain(&[&tensor(f, &Kernel::identity(f.dom())), &Kernel::copy(f.dom()), m])
}

/// A Bayesian inverse `X → A` of `f : A → X` with respect to the prior `m : I → A`.
pub fn bayesian_inverse<S: Semiring>(f: &Kernel<S>, m: &Kernel<S>) -> Result<Kernel<S>> {
    m.expect_state()?;
    let cond = conditional(&joint(f, m)?, Side::Left)?;
    compose(&cond, &Kernel::unit_right_inv(f.cod()))
}

/// Checks `(id ⊗ f†) ∘ copy ∘ f ∘ m = (f ⊗ id) ∘ copy ∘ m`.
pub fn is_bayesian_inverse<S: Semiring>(f: &Kernel<S>, m: &Kernel<S>, inverse: &Kernel<S>) -> Result<bool> {
    let lhs = chain(&[
        &tensor(&Kernel::identity(f.cod()), inverse),
        &Kernel::copy(f.cod()),
        f,
        m,
    ])?;
    Ok(lhs == joint(f, m)?)
}

/// `f ≈_h g`: `(f ⊗ id) ∘ copy ∘ h = (g ⊗ id) ∘ copy ∘ h`.
pub fn ase<S: Semiring>(f: &Kernel<S>, g: &Kernel<S>, h: &Kernel<S>) -> Result<bool> {
    if f.dom() != g.dom() || f.cod() != g.cod() {
        return Err(Error::ShapeMismatch(format!(
            "{}→{} vs {}→{}",
            f.dom(),
            f.cod(),
            g.dom(),
            g.cod()
        )));
    }
    Ok(joint(f, h)? == joint(g, h)?)
}

/// `mu ≪ nu` for rational states: the support of `mu` lies in that of `nu`.
pub fn dominates(mu: &Kernel<Rational>, nu: &Kernel<Rational>) -> Result<bool> {
    let (m, n) = (mu.expect_state()?, nu.expect_state()?);
    if m.base() != n.base() {
        return Err(Error::ShapeMismatch(format!("{} vs {}", m.base(), n.base())));
    }
    Ok(m.support().all(|i| !n.weight(i).is_zero()))
}

/// A finite set of distributions over `Θ`, used as a finite piece of `PΘ`.
///
/// Each point becomes an atom labelled by its weight vector, e.g. `[8/13,5/13]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSpace<S> {
    theta: FiniteSet,
    points: Vec<FinDist<S>>,
    set: FiniteSet,
}

impl<S: Semiring> PointSpace<S> {
    /// Distinct points over a common base, in first-appearance order.
    pub fn new(theta: &FiniteSet, points: impl IntoIterator<Item = FinDist<S>>) -> Result<Self> {
        let mut distinct: Vec<FinDist<S>> = Vec::new();
        for p in points {
            if p.base() != theta {
                return Err(Error::ShapeMismatch(format!(
                    "point over {} in a space over {theta}",
                    p.base()
                )));
            }
            if !distinct.contains(&p) {
                distinct.push(p);
            }
        }
        let set = FiniteSet::atoms(distinct.iter().map(FinDist::vector_label))?;
        Ok(PointSpace {
            theta: theta.clone(),
            points: distinct,
            set,
        })
    }

    /// All distinct columns of the given kernels.
    pub fn from_kernels(kernels: &[&Kernel<S>]) -> Result<Self> {
        let theta = kernels
            .first()
            .ok_or_else(|| Error::ShapeMismatch("no kernels".into()))?
            .cod();
        PointSpace::new(theta, kernels.iter().flat_map(|k| k.columns().iter().cloned()))
    }

    pub fn theta(&self) -> &FiniteSet {
        &self.theta
    }

    pub fn points(&self) -> &[FinDist<S>] {
        &self.points
    }

    pub fn point(&self, index: usize) -> &FinDist<S> {
        &self.points[index]
    }

    /// The object of points.
    pub fn set(&self) -> &FiniteSet {
        &self.set
    }

    pub fn index_of(&self, point: &FinDist<S>) -> Option<usize> {
        self.points.iter().position(|p| p == point)
    }

    /// The deterministic kernel sending `a` to the point `f(·|a)`.
    pub fn sharp(&self, f: &Kernel<S>) -> Result<Kernel<S>> {
        let targets = f
            .columns()
            .iter()
            .map(|c| {
                self.index_of(c).ok_or_else(|| {
                    Error::Precondition(format!("column {} is not a point of the space", c.vector_label()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Kernel::from_fn(f.dom(), &self.set, |a| targets[a]))
    }

    /// The sampling map `points → Θ`: each point as a distribution.
    pub fn samp(&self) -> Kernel<S> {
        Kernel::from_columns(&self.set, &self.theta, self.points.clone())
    }

    /// A state on the point object viewed as a distribution over points.
    pub fn to_mixture(&self, state: &FinDist<S>) -> crate::findist::Mixture<FinDist<S>, S> {
        crate::findist::Mixture::merge(
            state
                .support()
                .map(|i| (self.points[i].clone(), state.weight(i).clone())),
        )
    }
}

/// `f♯`: the deterministic kernel into the space of `f`'s distinct columns.
pub fn sharp<S: Semiring>(f: &Kernel<S>) -> Result<(PointSpace<S>, Kernel<S>)> {
    let space = PointSpace::from_kernels(&[f])?;
    let k = space.sharp(f)?;
    Ok((space, k))
}

/// The sampling map restricted to the given points.
pub fn samp_on<S: Semiring>(theta: &FiniteSet, points: &[FinDist<S>]) -> Result<Kernel<S>> {
    Ok(PointSpace::new(theta, points.iter().cloned())?.samp())
}

/// The doubling of `f : A → X × Y` given one factor.
///
/// Given `Left` the result is `A → (X × Y) × Y`, drawing a second `Y`
/// from the conditional; given `Right` it is `A → (X × X) × Y`.
pub fn doubling<S: Semiring>(f: &Kernel<S>, given: Side) -> Result<Kernel<S>> {
    let (x, y) = f.cod().expect_factors()?;
    let a = f.dom();
    let with_input = compose(&tensor(f, &Kernel::identity(a)), &Kernel::copy(a))?;
    let xy = f.cod();
    match given {
        Side::Left => {
            let cond = conditional(f, Side::Left)?;
            let xa = FiniteSet::product(x, a);
            let dom = FiniteSet::product(xy, a);
            let cod = FiniteSet::product(xy, &xa);
            let rewire = Kernel::from_fn(&dom, &cod, |k| {
                let (pair, ai) = dom.split_index(k);
                let (xi, _) = xy.split_index(pair);
                cod.pair_index(pair, xa.pair_index(xi, ai))
            });
            chain(&[&tensor(&Kernel::identity(xy), &cond), &rewire, &with_input])
        }
        Side::Right => {
            let cond = conditional(f, Side::Right)?;
            let ya = FiniteSet::product(y, a);
            let yay = FiniteSet::product(&ya, y);
            let dom = FiniteSet::product(xy, a);
            let cod = FiniteSet::product(x, &yay);
            let rewire = Kernel::from_fn(&dom, &cod, |k| {
                let (pair, ai) = dom.split_index(k);
                let (xi, yi) = xy.split_index(pair);
                cod.pair_index(xi, yay.pair_index(ya.pair_index(yi, ai), yi))
            });
            chain(&[
                &Kernel::assoc_inv(x, x, y),
                &tensor(&Kernel::identity(x), &tensor(&cond, &Kernel::identity(y))),
                &rewire,
                &with_input,
            ])
        }
    }
}

/// Whether `f : A → X × Y` is deterministic given the named factor.
pub fn is_deterministic_given<S: Semiring>(f: &Kernel<S>, given: Side) -> Result<bool> {
    let (x, y) = f.cod().expect_factors()?;
    let doubled = doubling(f, given)?;
    let expected = match given {
        Side::Left => chain(&[
            &Kernel::assoc_inv(x, y, y),
            &tensor(&Kernel::identity(x), &Kernel::copy(y)),
            f,
        ])?,
        Side::Right => compose(&tensor(&Kernel::copy(x), &Kernel::identity(y)), f)?,
    };
    Ok(doubled == expected)
}

/// The partial adjunct `A → X × P` of `f : A → X × Y`: the `X`-marginal paired
/// with the conditional distribution of `Y` as a point.
pub fn partial_adjunct<S: Semiring>(f: &Kernel<S>) -> Result<(PointSpace<S>, Kernel<S>)> {
    let cond = conditional(f, Side::Left)?;
    let (space, cond_sharp) = sharp(&cond)?;
    let h = reassemble_left(&f.marginal(Side::Left)?, &cond_sharp)?;
    Ok((space, h))
}
