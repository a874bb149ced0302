use std::cmp::Ordering;

use super::{ConditionalStrategy, Semiring};
use crate::{Error, Result};

/// The three-element chain `0 < eps < 1` with `add = max` and `mul = min`.
///
/// `eps` stands for outcomes that are possible but negligible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TriLattice {
    Zero,
    Eps,
    One,
}

impl TriLattice {
    pub const ALL: [TriLattice; 3] = [TriLattice::Zero, TriLattice::Eps, TriLattice::One];
}

impl Semiring for TriLattice {
    const NAME: &'static str = "trilattice";
    const IS_ENTIRE: bool = true;
    const CONDITIONALS: ConditionalStrategy = ConditionalStrategy::OrderedIdempotent;

    fn zero() -> Self {
        TriLattice::Zero
    }

    fn one() -> Self {
        TriLattice::One
    }

    fn add(&self, other: &Self) -> Self {
        *self.max(other)
    }

    fn mul(&self, other: &Self) -> Self {
        *self.min(other)
    }

    /// Least `q` with `min(q, divisor) == self`.
    fn try_div(&self, divisor: &Self) -> Option<Self> {
        match self.cmp(divisor) {
            Ordering::Less => Some(*self),
            Ordering::Equal => Some(*divisor),
            Ordering::Greater => None,
        }
    }

    fn order(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }

    fn parse(text: &str) -> Result<Self> {
        match text.trim() {
            "0" => Ok(TriLattice::Zero),
            "eps" | "ε" => Ok(TriLattice::Eps),
            "1" => Ok(TriLattice::One),
            other => Err(Error::Parse(format!("invalid trilattice literal {other:?}"))),
        }
    }

    fn render(&self) -> String {
        match self {
            TriLattice::Zero => "0",
            TriLattice::Eps => "eps",
            TriLattice::One => "1",
        }
        .to_string()
    }
}
