//! Commutative semirings carrying the weights of distributions and kernels.
//!
//! A semiring here is a set with two commutative monoid structures, `add`
//! with unit `zero` and `mul` with unit `one`, where `mul` distributes over
//! `add` and annihilates at `zero`. Instances also declare which algorithm
//! (if any) can build conditionals over them.

mod pair;
mod rational;
mod trilattice;

use std::cmp::Ordering;
use std::fmt::Debug;
use std::hash::Hash;

pub use pair::Pair;
pub use rational::{parse_rational, rational_to_decimal, Rational};
pub use trilattice::TriLattice;

use crate::Result;

/// How conditionals are constructed over a semiring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionalStrategy {
    /// Divide the joint weight by the marginal weight.
    Division,
    /// Totally ordered semiring with `add = max` and `mul = min`.
    OrderedIdempotent,
    /// No validated construction.
    None,
}

pub trait Semiring: Clone + PartialEq + Eq + Hash + Debug + Send + Sync + 'static {
    /// Name used to select the instance in input files.
    const NAME: &'static str;
    /// Nonzero and free of zero divisors.
    const IS_ENTIRE: bool;
    const CONDITIONALS: ConditionalStrategy;

    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;

    /// Some `q` with `q * divisor == self`, if one exists.
    ///
    /// When several quotients exist the instance returns a canonical one
    /// (the least, for ordered instances).
    fn try_div(&self, divisor: &Self) -> Option<Self>;

    /// Total order used by [`ConditionalStrategy::OrderedIdempotent`].
    fn order(&self, _other: &Self) -> Option<Ordering> {
        None
    }

    fn parse(text: &str) -> Result<Self>;
    fn render(&self) -> String;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    fn supports_conditionals() -> bool {
        Self::CONDITIONALS != ConditionalStrategy::None
    }

    /// Semiring sum of an iterator of values.
    fn sum<'a, I>(values: I) -> Self
    where
        I: IntoIterator<Item = &'a Self>,
    {
        values.into_iter().fold(Self::zero(), |acc, v| acc.add(v))
    }

    /// `one + one + ... + one` (`n` times).
    fn from_count(n: usize) -> Self {
        (0..n).fold(Self::zero(), |acc, _| acc.add(&Self::one()))
    }
}

/// Checks the commutative semiring axioms on one triple.
pub fn laws_hold<S: Semiring>(a: &S, b: &S, c: &S) -> bool {
    let zero = S::zero();
    let one = S::one();
    a.add(b) == b.add(a)
        && a.add(&b.add(c)) == a.add(b).add(c)
        && a.add(&zero) == *a
        && a.mul(b) == b.mul(a)
        && a.mul(&b.mul(c)) == a.mul(b).mul(c)
        && a.mul(&one) == *a
        && a.mul(&b.add(c)) == a.mul(b).add(&a.mul(c))
        && a.mul(&zero) == zero
}

/// Searches `candidates` for a zero-divisor pair `(a, b)`: both nonzero with `a * b == 0`.
pub fn find_zero_divisor<S: Semiring>(candidates: &[S]) -> Option<(S, S)> {
    for a in candidates.iter().filter(|a| !a.is_zero()) {
        for b in candidates.iter().filter(|b| !b.is_zero()) {
            if a.mul(b).is_zero() {
                return Some((a.clone(), b.clone()));
            }
        }
    }
    None
}
