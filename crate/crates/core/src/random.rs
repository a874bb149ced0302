//! Seeded random instances with small rational entries.
//!
//! Every generated weight is `k / d` with `d ≤ 8`. Instances that compose a
//! garbling with an experiment keep that bound by pairing deterministic or
//! half-valued garblings with experiments of denominator at most four.

use std::ops::RangeInclusive;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::findist::FinDist;
use crate::finset::FiniteSet;
use crate::kernel::{compose, Kernel};
use crate::semiring::Rational;

/// Seed used when the environment does not provide one.
pub const DEFAULT_SEED: u64 = 0x5eed_b1ac;

/// Name of the environment variable read by [`seed_from_env`].
pub const SEED_VAR: &str = "FINMARKOV_SEED";

/// Reads [`SEED_VAR`] as a decimal `u64`, else [`DEFAULT_SEED`].
pub fn seed_from_env() -> u64 {
    std::env::var(SEED_VAR)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceKind {
    /// `g = c ∘ f` for a deterministic `c`.
    DeterministicGarbling,
    /// `g = c ∘ f` with `c` valued in halves.
    HalfGarbling,
    /// The two experiments of a garbled pair, swapped.
    Reversed,
    /// Independent experiments.
    Unrelated,
}

/// Experiments `f: Θ → X`, `g: Θ → Y` and a prior `m` on `Θ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub kind: InstanceKind,
    pub f: Kernel<Rational>,
    pub g: Kernel<Rational>,
    pub m: Kernel<Rational>,
    /// A known garbling with `c ∘ f = g`, when the construction provides one.
    pub garbling: Option<Kernel<Rational>>,
}

pub struct InstanceGenerator {
    rng: ChaCha8Rng,
}

fn labelled(prefix: &str, n: usize) -> FiniteSet {
    FiniteSet::atoms((0..n).map(|i| format!("{prefix}{i}"))).expect("distinct labels")
}

impl InstanceGenerator {
    pub fn new(seed: u64) -> Self {
        InstanceGenerator {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// A set of `n ∈ {2,3,4}` atoms named `prefix0, prefix1, ...`.
    pub fn set(&mut self, prefix: &str) -> FiniteSet {
        self.set_sized(prefix, 2..=4)
    }

    pub fn set_sized(&mut self, prefix: &str, sizes: RangeInclusive<usize>) -> FiniteSet {
        let n = self.rng.gen_range(sizes);
        labelled(prefix, n)
    }

    /// Splits `d` into `parts` nonnegative integers, uniformly over cut points.
    fn composition(&mut self, d: u32, parts: usize) -> Vec<u32> {
        let mut cuts: Vec<u32> = (0..parts - 1).map(|_| self.rng.gen_range(0..=d)).collect();
        cuts.sort_unstable();
        let mut out = Vec::with_capacity(parts);
        let mut prev = 0;
        for c in cuts {
            out.push(c - prev);
            prev = c;
        }
        out.push(d - prev);
        out
    }

    /// A distribution with weights in `(1/d) ℕ` for a `d` drawn from `denominators`.
    pub fn dist_from(&mut self, base: &FiniteSet, denominators: &[u32]) -> FinDist<Rational> {
        let d = *denominators.choose(&mut self.rng).expect("nonempty");
        let weights = self
            .composition(d, base.len())
            .into_iter()
            .map(|k| Rational::new(k.into(), d.into()))
            .collect();
        FinDist::new(base, weights).expect("parts sum to d")
    }

    pub fn dist(&mut self, base: &FiniteSet) -> FinDist<Rational> {
        self.dist_from(base, &[1, 2, 3, 4, 5, 6, 7, 8])
    }

    pub fn kernel_from(&mut self, dom: &FiniteSet, cod: &FiniteSet, denominators: &[u32]) -> Kernel<Rational> {
        let columns = (0..dom.len()).map(|_| self.dist_from(cod, denominators)).collect();
        Kernel::new(dom, cod, columns).expect("columns over cod")
    }

    pub fn kernel(&mut self, dom: &FiniteSet, cod: &FiniteSet) -> Kernel<Rational> {
        self.kernel_from(dom, cod, &[1, 2, 3, 4, 5, 6, 7, 8])
    }

    pub fn function(&mut self, dom: &FiniteSet, cod: &FiniteSet) -> Kernel<Rational> {
        let targets: Vec<usize> = (0..dom.len()).map(|_| self.rng.gen_range(0..cod.len())).collect();
        Kernel::from_fn(dom, cod, |a| targets[a])
    }

    /// Uniform, random with full support, or random with a zero somewhere.
    pub fn prior(&mut self, theta: &FiniteSet) -> Kernel<Rational> {
        let n = theta.len();
        let dist = match self.rng.gen_range(0..3) {
            0 => FinDist::uniform(theta).expect("nonempty"),
            1 => {
                let d = self.rng.gen_range(n as u32..=8);
                let weights = self
                    .composition(d - n as u32, n)
                    .into_iter()
                    .map(|k| Rational::new((k + 1).into(), d.into()))
                    .collect();
                FinDist::new(theta, weights).expect("parts sum to d")
            }
            _ => loop {
                let dist = self.dist(theta);
                if dist.weights().iter().any(Zero::is_zero) {
                    break dist;
                }
            },
        };
        Kernel::state(dist)
    }

    pub fn instance(&mut self) -> Instance {
        let theta = self.set("t");
        let x = self.set("x");
        let y = self.set("y");
        let m = self.prior(&theta);
        let kinds = [
            InstanceKind::DeterministicGarbling,
            InstanceKind::HalfGarbling,
            InstanceKind::Reversed,
            InstanceKind::Unrelated,
        ];
        let kind = *kinds.choose(&mut self.rng).expect("nonempty");
        let garbled = |gen: &mut Self, half: bool| {
            let (f, c) = if half {
                (
                    gen.kernel_from(&theta, &x, &[1, 2, 4]),
                    gen.kernel_from(&x, &y, &[1, 2]),
                )
            } else {
                (gen.kernel(&theta, &x), gen.function(&x, &y))
            };
            let g = compose(&c, &f).expect("matching objects");
            (f, g, c)
        };
        match kind {
            InstanceKind::DeterministicGarbling | InstanceKind::HalfGarbling => {
                let (f, g, c) = garbled(self, kind == InstanceKind::HalfGarbling);
                Instance {
                    kind,
                    f,
                    g,
                    m,
                    garbling: Some(c),
                }
            }
            InstanceKind::Reversed => {
                let half = self.rng.gen_bool(0.5);
                let (f, g, _) = garbled(self, half);
                Instance {
                    kind,
                    f: g,
                    g: f,
                    m,
                    garbling: None,
                }
            }
            InstanceKind::Unrelated => Instance {
                kind,
                f: self.kernel(&theta, &x),
                g: self.kernel(&theta, &y),
                m,
                garbling: None,
            },
        }
    }
}

/// `n` instances from one seed.
pub fn corpus(seed: u64, n: usize) -> Vec<Instance> {
    let mut gen = InstanceGenerator::new(seed);
    (0..n).map(|_| gen.instance()).collect()
}
