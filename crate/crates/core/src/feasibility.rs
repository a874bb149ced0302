//! Exact rational linear feasibility.
//!
//! Decides whether `A x = b, x ≥ 0` has a solution with a phase-one simplex
//! over exact rationals, using Bland's rule so that the pivot sequence is
//! finite and deterministic.

use std::collections::{BTreeMap, HashMap};

use num_traits::{Signed, Zero};

use crate::semiring::Rational;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId(usize);

impl VarId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Equality {
    pub coefficients: BTreeMap<VarId, Rational>,
    pub rhs: Rational,
}

/// Linear equalities over named nonnegative variables.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LinearSystem {
    names: Vec<String>,
    rows: Vec<Equality>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Feasibility {
    Feasible(Vec<Rational>),
    Infeasible,
}

impl Feasibility {
    pub fn solution(self) -> Option<Vec<Rational>> {
        match self {
            Feasibility::Feasible(x) => Some(x),
            Feasibility::Infeasible => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

impl LinearSystem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_variable(&mut self, name: impl Into<String>) -> VarId {
        self.names.push(name.into());
        VarId(self.names.len() - 1)
    }

    /// Adds `Σ coeff · var = rhs`; repeated variables accumulate.
    pub fn add_equality<I>(&mut self, terms: I, rhs: Rational) -> Result<()>
    where
        I: IntoIterator<Item = (VarId, Rational)>,
    {
        let mut coefficients = BTreeMap::new();
        for (v, c) in terms {
            if v.0 >= self.names.len() {
                return Err(Error::UnknownVariable(format!("#{}", v.0)));
            }
            *coefficients.entry(v).or_insert_with(Rational::zero) += c;
        }
        coefficients.retain(|_, c| !c.is_zero());
        self.rows.push(Equality { coefficients, rhs });
        Ok(())
    }

    pub fn variable_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn equalities(&self) -> &[Equality] {
        &self.rows
    }

    /// Exact substitution check of a full assignment (indexed by variable).
    pub fn verify(&self, assignment: &[Rational]) -> Result<bool> {
        if assignment.len() != self.names.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} values for {} variables",
                assignment.len(),
                self.names.len()
            )));
        }
        if assignment.iter().any(Signed::is_negative) {
            return Ok(false);
        }
        Ok(self.rows.iter().all(|row| {
            let lhs: Rational = row.coefficients.iter().map(|(v, c)| c * &assignment[v.0]).sum();
            lhs == row.rhs
        }))
    }

    /// Like [`LinearSystem::verify`] with values keyed by variable name;
    /// missing names default to zero.
    pub fn verify_named(&self, assignment: &HashMap<String, Rational>) -> Result<bool> {
        let mut values = vec![Rational::zero(); self.names.len()];
        for (name, value) in assignment {
            let i = self
                .names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::UnknownVariable(name.clone()))?;
            values[i] = value.clone();
        }
        self.verify(&values)
    }

    pub fn find_feasible(&self) -> Feasibility {
        Simplex::phase_one(self).solve()
    }
}

/// Dense tableau for `min Σ artificials` over `[A | I] (x, s) = b`.
struct Simplex {
    n: usize,
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    /// Reduced costs for every column.
    cost: Vec<Rational>,
}

impl Simplex {
    fn phase_one(sys: &LinearSystem) -> Self {
        let n = sys.names.len();
        let m = sys.rows.len();
        let mut rows = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        for (i, eq) in sys.rows.iter().enumerate() {
            let flip = eq.rhs.is_negative();
            let mut row = vec![Rational::zero(); n + m];
            for (v, c) in &eq.coefficients {
                row[v.0] = if flip { -c } else { c.clone() };
            }
            row[n + i] = Rational::from_integer(1.into());
            rows.push(row);
            rhs.push(eq.rhs.abs());
        }
        let mut cost = vec![Rational::zero(); n + m];
        for row in &rows {
            for j in 0..n {
                cost[j] -= &row[j];
            }
        }
        Simplex {
            n,
            rows,
            rhs,
            basis: (n..n + m).collect(),
            cost,
        }
    }

    fn solve(mut self) -> Feasibility {
        // Bland: entering = lowest index with negative reduced cost,
        // leaving = minimum ratio, ties broken by lowest basic index.
        while let Some(enter) = self.cost.iter().position(Signed::is_negative) {
            let mut leave: Option<(usize, Rational)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[r] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            // Phase one is bounded below by zero, so a ratio always exists.
            let (r, _) = leave.expect("phase-one objective is bounded");
            self.pivot(r, enter);
        }
        let m = self.rows.len();
        let residual = self
            .basis
            .iter()
            .zip(&self.rhs)
            .filter(|(b, _)| **b >= self.n)
            .any(|(_, v)| !v.is_zero());
        if residual {
            return Feasibility::Infeasible;
        }
        let mut x = vec![Rational::zero(); self.n];
        for r in 0..m {
            if self.basis[r] < self.n {
                x[self.basis[r]] = self.rhs[r].clone();
            }
        }
        Feasibility::Feasible(x)
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        self.rhs[r] /= &p;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
            self.rhs[i] -= &factor * &pivot_rhs;
        }
        let factor = self.cost[col].clone();
        if !factor.is_zero() {
            for (v, pv) in self.cost.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
        }
        self.basis[r] = col;
    }
}
