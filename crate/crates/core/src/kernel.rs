//! The finite Markov category: semiring-valued stochastic kernels.

use crate::findist::{FinDist, Side};
use crate::finset::FiniteSet;
use crate::semiring::Semiring;
use crate::{Error, Result};

/// A morphism `dom → cod`: one normalized distribution over `cod` per element of `dom`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Kernel<S> {
    dom: FiniteSet,
    cod: FiniteSet,
    columns: Vec<FinDist<S>>,
}

impl<S: Semiring> Kernel<S> {
    pub fn new(dom: &FiniteSet, cod: &FiniteSet, columns: Vec<FinDist<S>>) -> Result<Self> {
        if columns.len() != dom.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} columns for domain {dom}",
                columns.len()
            )));
        }
        if let Some(bad) = columns.iter().find(|c| c.base() != cod) {
            return Err(Error::ShapeMismatch(format!(
                "column over {} in a kernel into {cod}",
                bad.base()
            )));
        }
        Ok(Kernel {
            dom: dom.clone(),
            cod: cod.clone(),
            columns,
        })
    }

    /// `rows[a][x]` is the weight of `x` given `a`; every row must be normalized.
    pub fn from_matrix(dom: &FiniteSet, cod: &FiniteSet, rows: Vec<Vec<S>>) -> Result<Self> {
        let columns = rows
            .into_iter()
            .map(|r| FinDist::new(cod, r))
            .collect::<Result<Vec<_>>>()?;
        Self::new(dom, cod, columns)
    }

    pub fn from_literals(dom: &FiniteSet, cod: &FiniteSet, rows: &[&[&str]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|v| S::parse(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_matrix(dom, cod, rows)
    }

    /// Unchecked constructor for internally computed kernels.
    pub(crate) fn from_columns(dom: &FiniteSet, cod: &FiniteSet, columns: Vec<FinDist<S>>) -> Self {
        debug_assert_eq!(columns.len(), dom.len());
        Kernel {
            dom: dom.clone(),
            cod: cod.clone(),
            columns,
        }
    }

    /// The deterministic kernel of an index function.
    pub fn from_fn(dom: &FiniteSet, cod: &FiniteSet, f: impl Fn(usize) -> usize) -> Self {
        let columns = (0..dom.len()).map(|a| FinDist::dirac(cod, f(a))).collect();
        Self::from_columns(dom, cod, columns)
    }

    /// A state `I → X`.
    pub fn state(dist: FinDist<S>) -> Self {
        let cod = dist.base().clone();
        Self::from_columns(&FiniteSet::unit(), &cod, vec![dist])
    }

    /// The constant kernel with every column equal to `dist`.
    pub fn constant(dom: &FiniteSet, dist: &FinDist<S>) -> Self {
        Self::from_columns(dom, dist.base(), vec![dist.clone(); dom.len()])
    }

    pub fn identity(x: &FiniteSet) -> Self {
        Self::from_fn(x, x, |i| i)
    }

    /// `x ↦ δ_(x,x)`.
    pub fn copy(x: &FiniteSet) -> Self {
        let xx = FiniteSet::product(x, x);
        Self::from_fn(x, &xx, |i| xx.pair_index(i, i))
    }

    pub fn discard(x: &FiniteSet) -> Self {
        Self::from_fn(x, &FiniteSet::unit(), |_| 0)
    }

    /// `X × Y → Y × X`.
    pub fn swap(x: &FiniteSet, y: &FiniteSet) -> Self {
        let xy = FiniteSet::product(x, y);
        let yx = FiniteSet::product(y, x);
        Self::from_fn(&xy, &yx, |k| {
            let (i, j) = xy.split_index(k);
            yx.pair_index(j, i)
        })
    }

    /// `(X × Y) × Z → X × (Y × Z)`.
    pub fn assoc(x: &FiniteSet, y: &FiniteSet, z: &FiniteSet) -> Self {
        let xy = FiniteSet::product(x, y);
        let dom = FiniteSet::product(&xy, z);
        let yz = FiniteSet::product(y, z);
        let cod = FiniteSet::product(x, &yz);
        Self::from_fn(&dom, &cod, |k| {
            let (ij, l) = dom.split_index(k);
            let (i, j) = xy.split_index(ij);
            cod.pair_index(i, yz.pair_index(j, l))
        })
    }

    /// `X × (Y × Z) → (X × Y) × Z`.
    pub fn assoc_inv(x: &FiniteSet, y: &FiniteSet, z: &FiniteSet) -> Self {
        let yz = FiniteSet::product(y, z);
        let dom = FiniteSet::product(x, &yz);
        let xy = FiniteSet::product(x, y);
        let cod = FiniteSet::product(&xy, z);
        Self::from_fn(&dom, &cod, |k| {
            let (i, jl) = dom.split_index(k);
            let (j, l) = yz.split_index(jl);
            cod.pair_index(xy.pair_index(i, j), l)
        })
    }

    /// `(W × X) × (Y × Z) → (W × Y) × (X × Z)`.
    pub fn interchange(w: &FiniteSet, x: &FiniteSet, y: &FiniteSet, z: &FiniteSet) -> Self {
        let wx = FiniteSet::product(w, x);
        let yz = FiniteSet::product(y, z);
        let dom = FiniteSet::product(&wx, &yz);
        let wy = FiniteSet::product(w, y);
        let xz = FiniteSet::product(x, z);
        let cod = FiniteSet::product(&wy, &xz);
        Self::from_fn(&dom, &cod, |k| {
            let (a, b) = dom.split_index(k);
            let (wi, xi) = wx.split_index(a);
            let (yi, zi) = yz.split_index(b);
            cod.pair_index(wy.pair_index(wi, yi), xz.pair_index(xi, zi))
        })
    }

    /// Projection `X × Y → X` (left) or `X × Y → Y` (right).
    pub fn projection(x: &FiniteSet, y: &FiniteSet, side: Side) -> Self {
        let xy = FiniteSet::product(x, y);
        let cod = match side {
            Side::Left => x,
            Side::Right => y,
        };
        Self::from_fn(&xy, cod, |k| {
            let (i, j) = xy.split_index(k);
            match side {
                Side::Left => i,
                Side::Right => j,
            }
        })
    }

    /// `X → X × I`.
    pub fn unit_right_inv(x: &FiniteSet) -> Self {
        let xi = FiniteSet::product(x, &FiniteSet::unit());
        Self::from_fn(x, &xi, |i| i)
    }

    /// `X → I × X`.
    pub fn unit_left_inv(x: &FiniteSet) -> Self {
        let ix = FiniteSet::product(&FiniteSet::unit(), x);
        Self::from_fn(x, &ix, |i| i)
    }

    pub fn dom(&self) -> &FiniteSet {
        &self.dom
    }

    pub fn cod(&self) -> &FiniteSet {
        &self.cod
    }

    pub fn columns(&self) -> &[FinDist<S>] {
        &self.columns
    }

    pub fn column(&self, a: usize) -> &FinDist<S> {
        &self.columns[a]
    }

    /// Weight of output `x` given input `a`.
    pub fn weight(&self, a: usize, x: usize) -> &S {
        self.columns[a].weight(x)
    }

    /// The distribution of a state `I → X`.
    pub fn as_state(&self) -> Option<&FinDist<S>> {
        self.dom.is_unit().then(|| &self.columns[0])
    }

    pub(crate) fn expect_state(&self) -> Result<&FinDist<S>> {
        self.as_state()
            .ok_or_else(|| Error::ShapeMismatch(format!("expected a state, got a kernel from {}", self.dom)))
    }

    /// Post-composes with the projection onto one factor of the codomain.
    pub fn marginal(&self, side: Side) -> Result<Kernel<S>> {
        let (x, y) = self.cod.expect_factors()?;
        compose(&Kernel::projection(x, y, side), self)
    }

    /// Carboni–Walters condition `copy ∘ f = (f ⊗ f) ∘ copy`.
    ///
    /// Column `a` of the left side is `p_a` on the diagonal and column `a`
    /// of the right side is `p_a ⊗ p_a`, so the check runs per column
    /// without forming `f ⊗ f`.
    pub fn is_deterministic(&self) -> bool {
        self.columns.iter().all(|p| {
            let w = p.weights();
            w.iter().enumerate().all(|(i, wi)| {
                w.iter().enumerate().all(|(j, wj)| {
                    let prod = wi.mul(wj);
                    if i == j {
                        prod == *wi
                    } else {
                        prod.is_zero()
                    }
                })
            })
        })
    }

    /// Every column is a Dirac delta.
    pub fn is_dirac_valued(&self) -> bool {
        self.columns.iter().all(|c| c.as_dirac().is_some())
    }

    /// A state that is exactly one Dirac delta.
    pub fn state_is_dirac(&self) -> bool {
        self.as_state().is_some_and(|s| s.as_dirac().is_some())
    }

    /// Row-major weights `rows[a][x]`.
    pub fn to_rows(&self) -> Vec<Vec<S>> {
        self.columns.iter().map(|c| c.weights().to_vec()).collect()
    }
}

/// Kleisli composition `(g ∘ f)(z|x) = Σ_y g(z|y) · f(y|x)`.
pub fn compose<S: Semiring>(g: &Kernel<S>, f: &Kernel<S>) -> Result<Kernel<S>> {
    if f.cod != g.dom {
        return Err(Error::ShapeMismatch(format!(
            "cannot compose {}→{} after {}→{}",
            g.dom, g.cod, f.dom, f.cod
        )));
    }
    let columns = f
        .columns
        .iter()
        .map(|col| {
            let mut acc = vec![S::zero(); g.cod.len()];
            for y in col.support() {
                let fy = col.weight(y);
                for z in g.columns[y].support() {
                    acc[z] = acc[z].add(&fy.mul(g.weight(y, z)));
                }
            }
            FinDist::from_raw(&g.cod, acc)
        })
        .collect();
    Ok(Kernel::from_columns(&f.dom, &g.cod, columns))
}

/// Composes a chain applied right to left: `chain(&[h, g, f]) = h ∘ g ∘ f`.
pub fn chain<S: Semiring>(kernels: &[&Kernel<S>]) -> Result<Kernel<S>> {
    let (last, rest) = kernels
        .split_last()
        .ok_or_else(|| Error::ShapeMismatch("empty composition chain".into()))?;
    rest.iter().rev().try_fold((*last).clone(), |acc, k| compose(k, &acc))
}

/// Monoidal product: column `(a, b)` is `f(·|a) ⊗ g(·|b)`.
pub fn tensor<S: Semiring>(f: &Kernel<S>, g: &Kernel<S>) -> Kernel<S> {
    let dom = FiniteSet::product(&f.dom, &g.dom);
    let cod = FiniteSet::product(&f.cod, &g.cod);
    let mut columns = Vec::with_capacity(dom.len());
    for fa in &f.columns {
        for gb in &g.columns {
            columns.push(fa.product(gb));
        }
    }
    Kernel::from_columns(&dom, &cod, columns)
}

/// A morphism `A → X` of the category parametrized by `B`: a kernel `B × A → X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamKernel<S> {
    param: FiniteSet,
    inner: Kernel<S>,
}

impl<S: Semiring> ParamKernel<S> {
    pub fn new(param: &FiniteSet, inner: Kernel<S>) -> Result<Self> {
        let (b, _) = inner.dom().expect_factors()?;
        if b != param {
            return Err(Error::ShapeMismatch(format!(
                "parameter {param} but kernel domain {}",
                inner.dom()
            )));
        }
        Ok(ParamKernel {
            param: param.clone(),
            inner,
        })
    }

    /// A kernel that ignores the parameter.
    pub fn lift(param: &FiniteSet, k: &Kernel<S>) -> Self {
        let inner =
            compose(k, &Kernel::projection(param, k.dom(), Side::Right)).expect("projection lands in the domain");
        ParamKernel {
            param: param.clone(),
            inner,
        }
    }

    pub fn identity(param: &FiniteSet, a: &FiniteSet) -> Self {
        Self::lift(param, &Kernel::identity(a))
    }

    /// Copy map of `A`, with the parameter discarded.
    pub fn copy(param: &FiniteSet, a: &FiniteSet) -> Self {
        Self::lift(param, &Kernel::copy(a))
    }

    pub fn discard(param: &FiniteSet, a: &FiniteSet) -> Self {
        Self::lift(param, &Kernel::discard(a))
    }

    pub fn param(&self) -> &FiniteSet {
        &self.param
    }

    pub fn inner(&self) -> &Kernel<S> {
        &self.inner
    }

    /// The domain `A` (second factor of the inner domain).
    pub fn dom(&self) -> &FiniteSet {
        self.inner.dom().factors().expect("checked on construction").1
    }

    pub fn cod(&self) -> &FiniteSet {
        self.inner.cod()
    }

    /// The plain kernel at one parameter value.
    pub fn at(&self, b: usize) -> Kernel<S> {
        let dom = self.dom().clone();
        let columns = (0..dom.len())
            .map(|a| self.inner.column(self.inner.dom().pair_index(b, a)).clone())
            .collect();
        Kernel::from_columns(&dom, self.cod(), columns)
    }
}

fn check_param<S>(f: &ParamKernel<S>, g: &ParamKernel<S>) -> Result<()> {
    if f.param != g.param {
        return Err(Error::ShapeMismatch(format!(
            "parameters {} and {} differ",
            f.param, g.param
        )));
    }
    Ok(())
}

/// `g ∘ f` in the parametric category: one copy of the parameter feeds each factor.
pub fn param_compose<S: Semiring>(g: &ParamKernel<S>, f: &ParamKernel<S>) -> Result<ParamKernel<S>> {
    check_param(f, g)?;
    let b = &f.param;
    let a = f.dom();
    let spread = compose(&Kernel::assoc(b, b, a), &tensor(&Kernel::copy(b), &Kernel::identity(a)))?;
    let fed = compose(&tensor(&Kernel::identity(b), &f.inner), &spread)?;
    Ok(ParamKernel {
        param: b.clone(),
        inner: compose(&g.inner, &fed)?,
    })
}

/// `f ⊗ g` in the parametric category.
pub fn param_tensor<S: Semiring>(f: &ParamKernel<S>, g: &ParamKernel<S>) -> Result<ParamKernel<S>> {
    check_param(f, g)?;
    let b = &f.param;
    let (a, c) = (f.dom(), g.dom());
    let ac = FiniteSet::product(a, c);
    let spread = compose(
        &Kernel::interchange(b, b, a, c),
        &tensor(&Kernel::copy(b), &Kernel::identity(&ac)),
    )?;
    Ok(ParamKernel {
        param: b.clone(),
        inner: compose(&tensor(&f.inner, &g.inner), &spread)?,
    })
}
