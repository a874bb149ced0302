use super::{ConditionalStrategy, Semiring};
use crate::{Error, Result};

/// Direct sum `R ⊕ R` with component-wise operations.
///
/// Never entire: `(0,1)·(1,0) = (0,0)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pair<S> {
    pub left: S,
    pub right: S,
}

impl<S> Pair<S> {
    pub fn new(left: S, right: S) -> Self {
        Pair { left, right }
    }
}

impl<S: Semiring> Semiring for Pair<S> {
    const NAME: &'static str = "pair-rational";
    const IS_ENTIRE: bool = false;
    const CONDITIONALS: ConditionalStrategy = ConditionalStrategy::None;

    fn zero() -> Self {
        Pair::new(S::zero(), S::zero())
    }

    fn one() -> Self {
        Pair::new(S::one(), S::one())
    }

    fn add(&self, other: &Self) -> Self {
        Pair::new(self.left.add(&other.left), self.right.add(&other.right))
    }

    fn mul(&self, other: &Self) -> Self {
        Pair::new(self.left.mul(&other.left), self.right.mul(&other.right))
    }

    fn try_div(&self, divisor: &Self) -> Option<Self> {
        Some(Pair::new(
            self.left.try_div(&divisor.left)?,
            self.right.try_div(&divisor.right)?,
        ))
    }

    /// `"(a,b)"` with base literals inside.
    fn parse(text: &str) -> Result<Self> {
        let inner = text
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("invalid pair literal {text:?}")))?;
        let (l, r) = inner
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("invalid pair literal {text:?}")))?;
        Ok(Pair::new(S::parse(l)?, S::parse(r)?))
    }

    fn render(&self) -> String {
        format!("({},{})", self.left.render(), self.right.render())
    }
}
