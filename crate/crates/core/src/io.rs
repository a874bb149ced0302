//! JSON experiment files and serializations of kernels, points and
//! meta-distributions.
//!
//! A file names its semiring, the parameter labels `theta`, and any number
//! of named kernels and states:
//!
//! ```json
//! {
//!   "semiring": "rational",
//!   "theta": ["safe", "faulty"],
//!   "kernels": {
//!     "f": {
//!       "dom": ["safe", "faulty"],
//!       "cod": ["pass", "fail"],
//!       "columns": {
//!         "safe": {"pass": "0.96", "fail": "0.04"},
//!         "faulty": {"pass": "0.6", "fail": "0.4"}
//!       }
//!     }
//!   },
//!   "states": {"m": {"weights": {"safe": "1/2", "faulty": "1/2"}}}
//! }
//! ```
//!
//! Objects are label arrays or `{"product": [left, right]}`. A deterministic
//! kernel may give `"function": {dom-label: cod-label}` instead of columns.
//! Missing codomain entries in a column are zero. States default to `theta`
//! as their base.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::blackwell::{Dilation, MetaDist};
use crate::conditioning::Point;
use crate::findist::FinDist;
use crate::finset::{FiniteSet, UNIT_LABEL};
use crate::kernel::Kernel;
use crate::semiring::{Pair, Rational, Semiring, TriLattice};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SetSpec {
    Labels(Vec<String>),
    Product { product: Vec<SetSpec> },
}

impl SetSpec {
    pub fn build(&self) -> Result<FiniteSet> {
        match self {
            SetSpec::Labels(labels) if labels.len() == 1 && labels[0] == UNIT_LABEL => Ok(FiniteSet::unit()),
            SetSpec::Labels(labels) => FiniteSet::atoms(labels.iter().map(String::as_str)),
            SetSpec::Product { product } => match product.as_slice() {
                [l, r] => Ok(FiniteSet::product(&l.build()?, &r.build()?)),
                _ => Err(Error::Parse(format!(
                    "product needs two factors, got {}",
                    product.len()
                ))),
            },
        }
    }

    pub fn of(set: &FiniteSet) -> Self {
        match set.factors() {
            Some((l, r)) => SetSpec::Product {
                product: vec![SetSpec::of(l), SetSpec::of(r)],
            },
            None => SetSpec::Labels(set.labels()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelSpec {
    pub dom: SetSpec,
    pub cod: SetSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub columns: Option<BTreeMap<String, BTreeMap<String, String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub function: Option<BTreeMap<String, String>>,
}

impl KernelSpec {
    pub fn build<S: Semiring>(&self) -> Result<Kernel<S>> {
        let dom = self.dom.build()?;
        let cod = self.cod.build()?;
        match (&self.columns, &self.function) {
            (Some(columns), None) => {
                for label in columns.keys() {
                    dom.index_of(label)?;
                }
                let columns = (0..dom.len())
                    .map(|a| {
                        let label = dom.label(a);
                        let column = columns
                            .iter()
                            .find(|(k, _)| dom.index_of(k).ok() == Some(a))
                            .map(|(_, v)| v)
                            .ok_or_else(|| Error::ShapeMismatch(format!("no column for {label:?}")))?;
                        column_dist(&cod, column)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Kernel::new(&dom, &cod, columns)
            }
            (None, Some(function)) => {
                let mut targets = vec![None; dom.len()];
                for (a, x) in function {
                    targets[dom.index_of(a)?] = Some(cod.index_of(x)?);
                }
                let targets = targets
                    .into_iter()
                    .enumerate()
                    .map(|(a, t)| t.ok_or_else(|| Error::ShapeMismatch(format!("no value for {:?}", dom.label(a)))))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Kernel::from_fn(&dom, &cod, |a| targets[a]))
            }
            _ => Err(Error::Parse(
                "a kernel needs exactly one of \"columns\" and \"function\"".into(),
            )),
        }
    }

    pub fn of<S: Semiring>(kernel: &Kernel<S>) -> Self {
        let columns = kernel
            .columns()
            .iter()
            .enumerate()
            .map(|(a, col)| (kernel.dom().label(a), col.to_label_map()))
            .collect();
        KernelSpec {
            dom: SetSpec::of(kernel.dom()),
            cod: SetSpec::of(kernel.cod()),
            columns: Some(columns),
            function: None,
        }
    }
}

fn column_dist<S: Semiring>(cod: &FiniteSet, column: &BTreeMap<String, String>) -> Result<FinDist<S>> {
    let mut weights = vec![S::zero(); cod.len()];
    for (label, value) in column {
        weights[cod.index_of(label)?] = S::parse(value)?;
    }
    FinDist::new(cod, weights)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<SetSpec>,
    pub weights: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    semiring: String,
    theta: Vec<String>,
    #[serde(default)]
    kernels: BTreeMap<String, KernelSpec>,
    #[serde(default)]
    states: BTreeMap<String, StateSpec>,
}

/// The semirings a file may name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SemiringKind {
    Rational,
    TriLattice,
    PairRational,
}

impl SemiringKind {
    pub fn from_name(name: &str) -> Result<Self> {
        [
            SemiringKind::Rational,
            SemiringKind::TriLattice,
            SemiringKind::PairRational,
        ]
        .into_iter()
        .find(|k| k.name() == name)
        .ok_or_else(|| Error::Parse(format!("unknown semiring {name:?}")))
    }

    pub fn name(self) -> &'static str {
        match self {
            SemiringKind::Rational => Rational::NAME,
            SemiringKind::TriLattice => TriLattice::NAME,
            SemiringKind::PairRational => Pair::<Rational>::NAME,
        }
    }
}

/// A parsed and validated experiment file.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentFile {
    kind: SemiringKind,
    theta: FiniteSet,
    raw: RawFile,
}

impl ExperimentFile {
    pub fn new(kind: SemiringKind, theta: &FiniteSet) -> Self {
        ExperimentFile {
            kind,
            theta: theta.clone(),
            raw: RawFile {
                semiring: kind.name().to_string(),
                theta: theta.labels(),
                kernels: BTreeMap::new(),
                states: BTreeMap::new(),
            },
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let file = ExperimentFile {
            kind: SemiringKind::from_name(&raw.semiring)?,
            theta: FiniteSet::atoms(raw.theta.iter().map(String::as_str))?,
            raw,
        };
        file.validate()?;
        Ok(file)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    fn validate(&self) -> Result<()> {
        match self.kind {
            SemiringKind::Rational => self.validate_as::<Rational>(),
            SemiringKind::TriLattice => self.validate_as::<TriLattice>(),
            SemiringKind::PairRational => self.validate_as::<Pair<Rational>>(),
        }
    }

    fn validate_as<S: Semiring>(&self) -> Result<()> {
        for name in self.raw.kernels.keys() {
            self.kernel::<S>(name)
                .map_err(|e| Error::Parse(format!("kernel {name:?}: {e}")))?;
        }
        for name in self.raw.states.keys() {
            self.state::<S>(name)
                .map_err(|e| Error::Parse(format!("state {name:?}: {e}")))?;
        }
        Ok(())
    }

    pub fn semiring(&self) -> SemiringKind {
        self.kind
    }

    pub fn theta(&self) -> &FiniteSet {
        &self.theta
    }

    pub fn kernel_names(&self) -> impl Iterator<Item = &str> {
        self.raw.kernels.keys().map(String::as_str)
    }

    pub fn state_names(&self) -> impl Iterator<Item = &str> {
        self.raw.states.keys().map(String::as_str)
    }

    fn check_semiring<S: Semiring>(&self) -> Result<()> {
        if S::NAME != self.kind.name() {
            return Err(Error::Precondition(format!(
                "file is over {}, requested {}",
                self.kind.name(),
                S::NAME
            )));
        }
        Ok(())
    }

    pub fn kernel<S: Semiring>(&self, name: &str) -> Result<Kernel<S>> {
        self.check_semiring::<S>()?;
        self.raw
            .kernels
            .get(name)
            .ok_or_else(|| Error::UnknownName(format!("kernel named {name:?}")))?
            .build()
    }

    /// A named state as a kernel out of the unit.
    pub fn state<S: Semiring>(&self, name: &str) -> Result<Kernel<S>> {
        self.check_semiring::<S>()?;
        let spec = self
            .raw
            .states
            .get(name)
            .ok_or_else(|| Error::UnknownName(format!("state named {name:?}")))?;
        let base = match &spec.base {
            Some(b) => b.build()?,
            None => self.theta.clone(),
        };
        Ok(Kernel::state(column_dist(&base, &spec.weights)?))
    }

    /// A kernel by name, falling back to a state of the same name.
    pub fn morphism<S: Semiring>(&self, name: &str) -> Result<Kernel<S>> {
        if self.raw.kernels.contains_key(name) {
            self.kernel(name)
        } else {
            self.state(name)
        }
    }

    pub fn insert_kernel<S: Semiring>(&mut self, name: &str, kernel: &Kernel<S>) -> Result<()> {
        self.check_semiring::<S>()?;
        self.raw.kernels.insert(name.to_string(), KernelSpec::of(kernel));
        Ok(())
    }

    pub fn insert_state<S: Semiring>(&mut self, name: &str, state: &FinDist<S>) -> Result<()> {
        self.check_semiring::<S>()?;
        let base = (state.base() != &self.theta).then(|| SetSpec::of(state.base()));
        self.raw.states.insert(
            name.to_string(),
            StateSpec {
                base,
                weights: state.to_label_map(),
            },
        );
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.raw).expect("plain data serializes")
    }
}

pub fn kernel_to_value<S: Semiring>(kernel: &Kernel<S>) -> serde_json::Value {
    serde_json::to_value(KernelSpec::of(kernel)).expect("plain data serializes")
}

/// `["p/q", ...]` aligned with the label order of `Θ`.
pub fn point_to_value(point: &Point) -> serde_json::Value {
    point
        .weights()
        .iter()
        .map(|w| serde_json::Value::String(w.to_string()))
        .collect()
}

/// `[{"weight": w, "point": [p(θ), ...]}, ...]` in canonical point order.
pub fn meta_to_value(md: &MetaDist) -> serde_json::Value {
    md.entries()
        .iter()
        .map(|(p, w)| serde_json::json!({"weight": w.to_string(), "point": point_to_value(p)}))
        .collect()
}

pub fn dilation_to_value(t: &Dilation) -> serde_json::Value {
    t.rows()
        .iter()
        .map(|(p, row)| serde_json::json!({"source": point_to_value(p), "row": meta_to_value(row)}))
        .collect()
}
