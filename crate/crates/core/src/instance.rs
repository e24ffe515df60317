//! Parameterized instances: graph, modulator, accuracy and target class.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::classes::{self, ClassLabel};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Accuracy parameter, kept as an exact rational so that branch thresholds
/// never depend on floating point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Epsilon(Ratio<u64>);

impl Epsilon {
    /// Accepts `0 < num/den <= 1`.
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num == 0 || num > den {
            return Err(Error::Invalid(format!("epsilon {num}/{den} must lie in (0, 1]")));
        }
        Ok(Epsilon(Ratio::new(num, den)))
    }

    pub fn ratio(self) -> Ratio<u64> {
        self.0
    }

    pub fn numer(self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(self) -> u64 {
        *self.0.denom()
    }

    /// `⌈1/ε⌉`.
    pub fn ceil_inv(self) -> u64 {
        self.denom().div_ceil(self.numer())
    }

    /// `⌈6k/ε⌉`.
    pub fn k_prime(self, k: usize) -> u64 {
        (6 * k as u64 * self.denom()).div_ceil(self.numer())
    }

    /// Whether `s <= (ε/6)·l`.
    pub fn small_modulator(self, s: usize, l: usize) -> bool {
        6 * s as u128 * self.denom() as u128 <= self.numer() as u128 * l as u128
    }

    /// Whether `x <= ε·y`.
    pub fn at_most_eps_times(self, x: usize, y: usize) -> bool {
        x as u128 * self.denom() as u128 <= self.numer() as u128 * y as u128
    }

    /// `1 + ε`.
    pub fn one_plus(self) -> Ratio<u64> {
        Ratio::from_integer(1) + self.0
    }

    pub fn to_f64(self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for Epsilon {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("epsilon {s:?} is not a rational \"num/den\""));
        let (num, den) = match s.trim().split_once('/') {
            Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
            None => (s.trim().parse().map_err(|_| bad())?, 1),
        };
        Epsilon::new(num, den)
    }
}

impl Serialize for Epsilon {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Epsilon {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Class that `G - S` must belong to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Tw(usize),
    Chordal,
    /// Every component of `G - S` is a split graph or a cograph.
    SplitCograph,
    /// Every component is a cograph, chordal, or of treewidth at most η.
    Unified(usize),
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Tw(eta) => write!(f, "tw({eta})"),
            Mode::Chordal => write!(f, "chordal"),
            Mode::SplitCograph => write!(f, "split-cograph"),
            Mode::Unified(eta) => write!(f, "unified({eta})"),
        }
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Invalid(format!("unknown mode {s:?}"));
        let arg = |prefix: &str| -> Option<Result<usize>> {
            s.strip_prefix(prefix)?
                .strip_suffix(')')
                .map(|x| x.trim().parse().map_err(|_| bad()))
        };
        if let Some(eta) = arg("tw(") {
            return Ok(Mode::Tw(eta?));
        }
        if let Some(eta) = arg("unified(") {
            return Ok(Mode::Unified(eta?));
        }
        match s {
            "chordal" => Ok(Mode::Chordal),
            "split-cograph" | "split" | "cograph" => Ok(Mode::SplitCograph),
            _ => Err(bad()),
        }
    }
}

impl Serialize for Mode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Mode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Labels the components of `g - s` for `mode`, failing with the first
/// component outside the class.
pub fn component_labels(g: &Graph, s: &VertexSet, mode: Mode) -> Result<Vec<(VertexSet, ClassLabel)>> {
    let rest = g.without(s);
    if mode == Mode::Chordal && !classes::chordal::is_chordal(&rest) {
        return Err(Error::Invalid("mode validity: G - S is not chordal".into()));
    }
    let mut out = Vec::new();
    for comp in rest.connected_components() {
        let sub = rest.induced_subgraph(&comp)?;
        let first = *comp.iter().next().unwrap();
        let label = match mode {
            Mode::Chordal => ClassLabel::Chordal,
            Mode::Tw(eta) => {
                if classes::treewidth::decomposition_within(&sub, eta)?.is_none() {
                    return Err(Error::Invalid(format!(
                        "mode validity: component containing {first} has treewidth above {eta}"
                    )));
                }
                ClassLabel::Tw(eta)
            }
            Mode::SplitCograph => {
                if classes::split::is_split(&sub) {
                    ClassLabel::Split
                } else if classes::cograph::is_cograph(&sub) {
                    ClassLabel::Cograph
                } else {
                    return Err(Error::Invalid(format!(
                        "mode validity: component containing {first} is neither split nor a cograph"
                    )));
                }
            }
            Mode::Unified(eta) => match classes::classify_graph(&sub, eta)? {
                ClassLabel::None => {
                    return Err(Error::Invalid(format!(
                        "mode validity: component containing {first} is in no supported class"
                    )))
                }
                label => label,
            },
        };
        out.push((comp, label));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulatorInstance {
    pub graph: Graph,
    pub modulator: VertexSet,
    pub k: usize,
    pub epsilon: Epsilon,
    pub mode: Mode,
    /// Decision budget; carried through but unused by the optimization
    /// pipelines.
    pub target: Option<u64>,
}

impl ModulatorInstance {
    /// Builds and validates an instance.
    pub fn new(graph: Graph, modulator: VertexSet, epsilon: Epsilon, mode: Mode) -> Result<Self> {
        let inst = ModulatorInstance { k: modulator.len(), graph, modulator, epsilon, mode, target: None };
        inst.validate()?;
        Ok(inst)
    }

    pub fn with_target(mut self, target: Option<u64>) -> Self {
        self.target = target;
        self
    }

    /// Structural checks (modulator inside the graph, `k = |S|`,
    /// connectivity) followed by mode validity.
    pub fn validate(&self) -> Result<()> {
        if let Some(&v) = self.modulator.iter().find(|&&v| !self.graph.contains(v)) {
            return Err(Error::Invalid(format!("modulator vertex absent: {v}")));
        }
        if self.k != self.modulator.len() {
            return Err(Error::Invalid(format!(
                "k = {} but the modulator has {} vertices",
                self.k,
                self.modulator.len()
            )));
        }
        if self.graph.is_empty() {
            return Err(Error::Invalid("graph has no vertices".into()));
        }
        if !self.graph.is_connected() {
            return Err(Error::Invalid("graph disconnected".into()));
        }
        self.labels().map(|_| ())
    }

    pub fn labels(&self) -> Result<Vec<(VertexSet, ClassLabel)>> {
        component_labels(&self.graph, &self.modulator, self.mode)
    }
}
