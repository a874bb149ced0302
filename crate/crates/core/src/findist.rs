//! Finitely supported normalized distributions and the distribution monad.

use std::collections::BTreeMap;

use crate::finset::FiniteSet;
use crate::semiring::Semiring;
use crate::{Error, Result};

/// Which factor of a binary product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// A normalized `S`-valued distribution over a finite set.
///
/// Stored densely in the base set's element order; the support is the set
/// of nonzero entries, so zero weights never count as support.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinDist<S> {
    base: FiniteSet,
    weights: Vec<S>,
}

impl<S: Semiring> FinDist<S> {
    /// Validates length and normalization.
    pub fn new(base: &FiniteSet, weights: Vec<S>) -> Result<Self> {
        if weights.len() != base.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} weights for a base of size {}",
                weights.len(),
                base.len()
            )));
        }
        if S::sum(&weights) != S::one() {
            return Err(Error::NotNormalized(format!(
                "weights over {base} sum to {}",
                S::sum(&weights).render()
            )));
        }
        Ok(FinDist {
            base: base.clone(),
            weights,
        })
    }

    /// Caller guarantees length and normalization.
    pub(crate) fn from_raw(base: &FiniteSet, weights: Vec<S>) -> Self {
        debug_assert_eq!(weights.len(), base.len());
        FinDist {
            base: base.clone(),
            weights,
        }
    }

    /// Label-keyed weights; missing labels have weight zero.
    pub fn from_labels<'a, I>(base: &FiniteSet, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, S)>,
    {
        let mut weights = vec![S::zero(); base.len()];
        let mut seen = vec![false; base.len()];
        for (label, w) in entries {
            let i = base.index_of(label)?;
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::DuplicateLabel(label.to_string()));
            }
            weights[i] = w;
        }
        Self::new(base, weights)
    }

    /// Like [`FinDist::from_labels`] with weights given as literals.
    pub fn from_literals(base: &FiniteSet, entries: &[(&str, &str)]) -> Result<Self> {
        let parsed = entries
            .iter()
            .map(|(l, v)| Ok((*l, S::parse(v)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_labels(base, parsed)
    }

    pub fn dirac(base: &FiniteSet, index: usize) -> Self {
        let mut weights = vec![S::zero(); base.len()];
        weights[index] = S::one();
        FinDist {
            base: base.clone(),
            weights,
        }
    }

    pub fn dirac_label(base: &FiniteSet, label: &str) -> Result<Self> {
        Ok(Self::dirac(base, base.index_of(label)?))
    }

    /// Uniform weight `1/n`, when `1/n` exists in the semiring.
    pub fn uniform(base: &FiniteSet) -> Option<Self> {
        let w = S::one().try_div(&S::from_count(base.len()))?;
        Self::new(base, vec![w; base.len()]).ok()
    }

    pub fn base(&self) -> &FiniteSet {
        &self.base
    }

    pub fn weights(&self) -> &[S] {
        &self.weights
    }

    pub fn weight(&self, index: usize) -> &S {
        &self.weights[index]
    }

    pub fn weight_of(&self, label: &str) -> Result<&S> {
        Ok(&self.weights[self.base.index_of(label)?])
    }

    /// Indices with nonzero weight, in base order.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_zero())
            .map(|(i, _)| i)
    }

    /// The point `x` if this is exactly `δ_x`.
    pub fn as_dirac(&self) -> Option<usize> {
        let mut support = self.support();
        let first = support.next()?;
        (support.next().is_none() && self.weights[first] == S::one()).then_some(first)
    }

    /// `(D f)(p)(y) = Σ_{x ∈ f⁻¹(y)} p(x)` for an index map `f` into `cod`.
    pub fn pushforward(&self, cod: &FiniteSet, f: impl Fn(usize) -> usize) -> Self {
        let mut weights = vec![S::zero(); cod.len()];
        for i in self.support() {
            let j = f(i);
            weights[j] = weights[j].add(&self.weights[i]);
        }
        FinDist::from_raw(cod, weights)
    }

    /// Pushforward along a function on labels.
    pub fn pushforward_labels(&self, cod: &FiniteSet, f: impl Fn(&str) -> String) -> Result<Self> {
        let map = (0..self.base.len())
            .map(|i| cod.index_of(&f(&self.base.label(i))))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.pushforward(cod, |i| map[i]))
    }

    /// Product distribution `(p ⊗ q)(x, y) = p(x) · q(y)` over `X × Y`.
    pub fn product(&self, other: &FinDist<S>) -> FinDist<S> {
        let base = FiniteSet::product(&self.base, &other.base);
        let mut weights = Vec::with_capacity(base.len());
        for p in &self.weights {
            for q in &other.weights {
                weights.push(p.mul(q));
            }
        }
        FinDist { base, weights }
    }

    /// Marginal onto one factor of a product base.
    pub fn marginal(&self, side: Side) -> Result<FinDist<S>> {
        let (left, right) = self.base.expect_factors()?;
        let target = match side {
            Side::Left => left.clone(),
            Side::Right => right.clone(),
        };
        let base = self.base.clone();
        Ok(self.pushforward(&target, |k| {
            let (i, j) = base.split_index(k);
            match side {
                Side::Left => i,
                Side::Right => j,
            }
        }))
    }

    /// Label → rendered weight for the support.
    pub fn to_label_map(&self) -> BTreeMap<String, String> {
        self.support()
            .map(|i| (self.base.label(i), self.weights[i].render()))
            .collect()
    }

    /// Compact rendering `"[w0,w1,...]"` of the full weight vector.
    pub fn vector_label(&self) -> String {
        let parts: Vec<String> = self.weights.iter().map(Semiring::render).collect();
        format!("[{}]", parts.join(","))
    }
}

/// A finitely supported distribution over arbitrary values `T`.
///
/// Entries are distinct, carry nonzero weight, and sum to one. Entries keep
/// first-appearance order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mixture<T, S> {
    entries: Vec<(T, S)>,
}

impl<T: PartialEq + Clone, S: Semiring> Mixture<T, S> {
    /// Merges equal values, drops zero weights and checks normalization.
    pub fn new<I>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (T, S)>,
    {
        let merged = Self::merge(entries);
        let total = S::sum(merged.entries.iter().map(|(_, w)| w));
        if total != S::one() {
            return Err(Error::NotNormalized(format!(
                "mixture weights sum to {}",
                total.render()
            )));
        }
        Ok(merged)
    }

    pub(crate) fn merge<I>(entries: I) -> Self
    where
        I: IntoIterator<Item = (T, S)>,
    {
        let mut out: Vec<(T, S)> = Vec::new();
        for (value, w) in entries {
            if w.is_zero() {
                continue;
            }
            match out.iter_mut().find(|(v, _)| *v == value) {
                Some((_, acc)) => *acc = acc.add(&w),
                None => out.push((value, w)),
            }
        }
        out.retain(|(_, w)| !w.is_zero());
        Mixture { entries: out }
    }

    pub fn dirac(value: T) -> Self {
        Mixture {
            entries: vec![(value, S::one())],
        }
    }

    pub fn entries(&self) -> &[(T, S)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn weight_of(&self, value: &T) -> S {
        self.entries
            .iter()
            .find(|(v, _)| v == value)
            .map(|(_, w)| w.clone())
            .unwrap_or_else(S::zero)
    }

    /// Pushforward along `f`, merging values that collide.
    pub fn map<U: PartialEq + Clone>(&self, f: impl Fn(&T) -> U) -> Mixture<U, S> {
        Mixture::merge(self.entries.iter().map(|(v, w)| (f(v), w.clone())))
    }
}

/// Monad multiplication: `μ(φ)(x) = Σ_p φ(p) · p(x)`.
pub fn flatten<S: Semiring>(phi: &Mixture<FinDist<S>, S>) -> Result<FinDist<S>> {
    let (first, _) = phi
        .entries()
        .first()
        .ok_or_else(|| Error::NotNormalized("empty mixture".into()))?;
    let base = first.base().clone();
    let mut weights = vec![S::zero(); base.len()];
    for (p, w) in phi.entries() {
        if p.base() != &base {
            return Err(Error::ShapeMismatch(format!(
                "inner distributions over {} and {}",
                base,
                p.base()
            )));
        }
        for i in p.support() {
            weights[i] = weights[i].add(&w.mul(p.weight(i)));
        }
    }
    Ok(FinDist::from_raw(&base, weights))
}
