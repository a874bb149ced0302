//! Fixtures shared by the benchmarks.

use finmarkov::random::{corpus, Instance};
use finmarkov::{FinDist, FiniteSet, Kernel, Rational};

/// The two-hypothesis inspection example: `f` and its garbling `g`, with a uniform prior.
pub struct Rod {
    pub f: Kernel<Rational>,
    pub g: Kernel<Rational>,
    pub m: Kernel<Rational>,
}

pub fn rod() -> Rod {
    let theta = FiniteSet::atoms(["safe", "faulty"]).unwrap();
    let x = FiniteSet::atoms(["pass", "fail"]).unwrap();
    let f = Kernel::from_literals(&theta, &x, &[&["0.96", "0.04"], &["0.6", "0.4"]]).unwrap();
    let g = Kernel::from_literals(&theta, &x, &[&["0.72", "0.28"], &["0.45", "0.55"]]).unwrap();
    let m = Kernel::state(FinDist::uniform(&theta).unwrap());
    Rod { f, g, m }
}

/// A fixed slice of the seeded random corpus.
pub fn instances(n: usize) -> Vec<Instance> {
    corpus(0xbe4c, n)
}
