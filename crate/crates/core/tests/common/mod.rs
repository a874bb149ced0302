#![allow(dead_code)]

use finmarkov::{FinDist, FiniteSet, Kernel, Rational, TriLattice};
use proptest::prelude::*;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn set(prefix: &str, n: usize) -> FiniteSet {
    FiniteSet::atoms((0..n).map(|i| format!("{prefix}{i}"))).unwrap()
}

/// Weights `k_i / Σ k` from small nonnegative integers.
pub fn dist(base: &FiniteSet) -> impl Strategy<Value = FinDist<Rational>> {
    let base = base.clone();
    prop::collection::vec(0i64..6, base.len())
        .prop_filter("nonzero total", |ks| ks.iter().sum::<i64>() > 0)
        .prop_map(move |ks| {
            let total: i64 = ks.iter().sum();
            FinDist::new(&base, ks.iter().map(|k| q(*k, total)).collect()).unwrap()
        })
}

pub fn kernel(dom: &FiniteSet, cod: &FiniteSet) -> impl Strategy<Value = Kernel<Rational>> {
    let (dom, cod) = (dom.clone(), cod.clone());
    prop::collection::vec(dist(&cod), dom.len()).prop_map(move |cols| Kernel::new(&dom, &cod, cols).unwrap())
}

pub fn state(base: &FiniteSet) -> impl Strategy<Value = Kernel<Rational>> {
    dist(base).prop_map(Kernel::state)
}

/// Object sizes in `1..=3`.
pub fn size() -> impl Strategy<Value = usize> {
    1usize..=3
}

/// Every trilattice distribution on `base`.
pub fn tri_dists(base: &FiniteSet) -> Vec<FinDist<TriLattice>> {
    let mut out = vec![Vec::new()];
    for _ in 0..base.len() {
        out = out
            .into_iter()
            .flat_map(|w: Vec<TriLattice>| {
                TriLattice::ALL.iter().map(move |v| {
                    let mut w = w.clone();
                    w.push(*v);
                    w
                })
            })
            .collect();
    }
    out.into_iter().filter_map(|w| FinDist::new(base, w).ok()).collect()
}

/// Every trilattice kernel `dom → cod`.
pub fn tri_kernels(dom: &FiniteSet, cod: &FiniteSet) -> Vec<Kernel<TriLattice>> {
    let columns = tri_dists(cod);
    let mut out = vec![Vec::new()];
    for _ in 0..dom.len() {
        out = out
            .into_iter()
            .flat_map(|cols: Vec<FinDist<TriLattice>>| {
                columns.iter().map(move |c| {
                    let mut cols = cols.clone();
                    cols.push(c.clone());
                    cols
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|cols| Kernel::new(dom, cod, cols).unwrap())
        .collect()
}
