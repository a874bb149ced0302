//! Exact finite Markov categories over commutative semirings.
//!
//! Objects are finite labelled sets, morphisms are column-normalized
//! semiring-valued kernels. On top of the categorical structure the crate
//! provides conditionals and Bayesian inversion, exact rational linear
//! feasibility, comparison of statistical experiments by garbling, standard
//! measures, dilations, and the Blackwell-Sherman-Stein equivalence between
//! the two. Nothing is approximate: every check is an exact equality.
//!
//! ```
//! use finmarkov::{compose, FiniteSet, Kernel, Rational, Semiring};
//!
//! let theta = FiniteSet::atoms(["safe", "faulty"]).unwrap();
//! let x = FiniteSet::atoms(["pass", "fail"]).unwrap();
//! let f = Kernel::<Rational>::from_literals(&theta, &x, &[&["0.96", "0.04"], &["0.6", "0.4"]]).unwrap();
//! let c = Kernel::<Rational>::from_literals(&x, &x, &[&["3/4", "1/4"], &["0", "1"]]).unwrap();
//! let g = compose(&c, &f).unwrap();
//! assert_eq!(g.weight(0, 0).render(), "18/25");
//! ```

pub mod blackwell;
pub mod comparison;
pub mod conditioning;
mod error;
pub mod feasibility;
pub mod findist;
pub mod finset;
pub mod io;
pub mod kernel;
pub mod random;
pub mod semiring;

pub use blackwell::{Dilation, MetaDist};
pub use conditioning::{Point, PointSpace, Side};
pub use error::{Error, Result};
pub use findist::{FinDist, Mixture};
pub use finset::FiniteSet;
pub use kernel::{compose, tensor, Kernel, ParamKernel};
pub use semiring::{ConditionalStrategy, Pair, Rational, Semiring, TriLattice};
