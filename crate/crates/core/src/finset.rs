//! Finite labelled sets: the objects of the finite Markov category.

use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

/// Reserved label of the one-element monoidal unit.
pub const UNIT_LABEL: &str = "*";

/// A finite set with an ordered list of elements.
///
/// Either a list of atomic string labels or a binary product of two sets.
/// Product elements are enumerated in lexicographic order, so element
/// `(i, j)` of `X × Y` has index `i * |Y| + j`. Cloning is cheap.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteSet(Arc<Node>);

#[derive(PartialEq, Eq, Hash)]
enum Node {
    Atoms(Vec<String>),
    Product {
        left: FiniteSet,
        right: FiniteSet,
        size: usize,
    },
}

impl FiniteSet {
    /// Atomic set from distinct, nonempty labels.
    pub fn atoms<I, L>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = L>,
        L: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        for (i, l) in labels.iter().enumerate() {
            if l == UNIT_LABEL {
                return Err(Error::DuplicateLabel(format!("{l} is reserved for the unit")));
            }
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(FiniteSet(Arc::new(Node::Atoms(labels))))
    }

    /// The monoidal unit `I`.
    pub fn unit() -> Self {
        FiniteSet(Arc::new(Node::Atoms(vec![UNIT_LABEL.to_string()])))
    }

    pub fn product(left: &FiniteSet, right: &FiniteSet) -> Self {
        let size = left.len() * right.len();
        FiniteSet(Arc::new(Node::Product {
            left: left.clone(),
            right: right.clone(),
            size,
        }))
    }

    pub fn is_unit(&self) -> bool {
        matches!(&*self.0, Node::Atoms(l) if l.len() == 1 && l[0] == UNIT_LABEL)
    }

    pub fn len(&self) -> usize {
        match &*self.0 {
            Node::Atoms(l) => l.len(),
            Node::Product { size, .. } => *size,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The two factors, if this is a product.
    pub fn factors(&self) -> Option<(&FiniteSet, &FiniteSet)> {
        match &*self.0 {
            Node::Product { left, right, .. } => Some((left, right)),
            Node::Atoms(_) => None,
        }
    }

    pub(crate) fn expect_factors(&self) -> Result<(&FiniteSet, &FiniteSet)> {
        self.factors().ok_or_else(|| Error::NotAProduct(self.to_string()))
    }

    /// Index of `(i, j)` in a product set.
    pub fn pair_index(&self, i: usize, j: usize) -> usize {
        let (_, right) = self.factors().expect("pair_index on a non-product set");
        i * right.len() + j
    }

    /// Inverse of [`FiniteSet::pair_index`].
    pub fn split_index(&self, index: usize) -> (usize, usize) {
        let (_, right) = self.factors().expect("split_index on a non-product set");
        (index / right.len(), index % right.len())
    }

    /// Flattened tuple components of the element at `index`.
    pub fn label_parts(&self, index: usize) -> Vec<String> {
        match &*self.0 {
            Node::Atoms(l) => vec![l[index].clone()],
            Node::Product { left, right, .. } => {
                let (i, j) = self.split_index(index);
                let mut parts = left.label_parts(i);
                parts.extend(right.label_parts(j));
                parts
            }
        }
    }

    /// Rendered label: the atom itself, or `"(a,b,c)"` for product elements.
    pub fn label(&self, index: usize) -> String {
        match &*self.0 {
            Node::Atoms(l) => l[index].clone(),
            Node::Product { .. } => format!("({})", self.label_parts(index).join(",")),
        }
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.len()).map(|i| self.label(i)).collect()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        let found = match &*self.0 {
            Node::Atoms(l) => l.iter().position(|x| x == label),
            Node::Product { .. } => {
                let wanted = label.replace(' ', "");
                (0..self.len()).find(|&i| self.label(i) == wanted)
            }
        };
        found.ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }
}

impl fmt::Display for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            Node::Atoms(_) if self.is_unit() => write!(f, "I"),
            Node::Atoms(l) => write!(f, "{{{}}}", l.join(",")),
            Node::Product { left, right, .. } => write!(f, "{left}×{right}"),
        }
    }
}

impl fmt::Debug for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteSet({self})")
    }
}
