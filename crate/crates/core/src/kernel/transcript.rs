//! Replayable record of every reduction applied to an instance.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};

/// Which branch the kernelization took.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "kebab-case")]
pub enum Case {
    /// The modulator was small: the cover below was computed directly and
    /// the kernel is a constant-size placeholder.
    SmallModulator { cover: VertexSet },
    LargeModulator { k_prime: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "kebab-case")]
pub enum Event {
    IdentifySet { members: VertexSet, label: VertexId },
    /// A maximal clique of `G - S` replaced by `label`, plus a pendant.
    ContractClique { clique: VertexSet, label: VertexId, pendant: VertexId },
    CaseTag(Case),
    MarkRecord { h: VertexSet, r: VertexSet, i: VertexSet, marked: VertexSet },
    /// `vertex` and its neighbours `members` in H merged into `label`.
    SuperVertexMerge { vertex: VertexId, members: VertexSet, label: VertexId },
    /// `dropped` touches the same components of `G[H]` (named by their
    /// smallest vertex in `signature`) as `kept`.
    TwinDropped { kept: VertexId, dropped: VertexId, signature: Vec<VertexId> },
    PendantAdded { on: VertexId, label: VertexId },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelTranscript {
    pub events: Vec<Event>,
}

/// The constant-size kernel emitted by the small-modulator branch.
pub fn trivial_kernel() -> Graph {
    Graph::from_edges([(1, 2)]).expect("single edge")
}

impl KernelTranscript {
    pub fn push(&mut self, e: Event) {
        self.events.push(e);
    }

    pub fn case(&self) -> Option<&Case> {
        self.events.iter().find_map(|e| match e {
            Event::CaseTag(c) => Some(c),
            _ => None,
        })
    }

    /// Re-applies every event to `original`; the result must equal the
    /// kernel graph.
    pub fn replay(&self, original: &Graph) -> Result<Graph> {
        let mut g = original.clone();
        for e in &self.events {
            g = match e {
                Event::IdentifySet { members, label } => g.identify_as(members, *label)?,
                Event::ContractClique { clique, label, pendant } => {
                    g.identify_as(clique, *label)?.add_pendant_as(*label, *pendant)?
                }
                Event::CaseTag(Case::SmallModulator { .. }) => trivial_kernel(),
                Event::CaseTag(Case::LargeModulator { .. }) | Event::MarkRecord { .. } => g,
                Event::SuperVertexMerge { vertex, members, label } => {
                    let mut set = members.clone();
                    set.insert(*vertex);
                    g.identify_as(&set, *label)?
                }
                Event::TwinDropped { dropped, .. } => {
                    if !g.contains(*dropped) {
                        return Err(Error::UnknownVertex(*dropped));
                    }
                    g.without(&VertexSet::from([*dropped]))
                }
                Event::PendantAdded { on, label } => g.add_pendant_as(*on, *label)?,
            };
        }
        Ok(g)
    }

    /// One JSON object per line.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for e in &self.events {
            out.push_str(&serde_json::to_string(e).expect("events serialize"));
            out.push('\n');
        }
        out
    }

    pub fn from_jsonl(text: &str) -> Result<Self> {
        let mut events = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let e = serde_json::from_str(line).map_err(|err| Error::Parse { line: i + 1, msg: err.to_string() })?;
            events.push(e);
        }
        Ok(KernelTranscript { events })
    }
}
