//! Reduction algorithms and the per-mode kernelization pipelines.

pub mod bound;
pub mod lpr;
pub mod rr1;
pub mod small;
pub mod transcript;

use crate::approx::savage_2approx;
use crate::classes::chordal::{build_clique_tree, recognize_chordal};
use crate::classes::ClassLabel;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::instance::{Epsilon, Mode, ModulatorInstance};

pub use bound::size_bound;
pub use lpr::{lpr_kernel, LprKernel};
pub use rr1::{eta_for, rr1_contract_cliques};
pub use small::{small_modulator_solve, SmallSolve};
pub use transcript::{trivial_kernel, Case, Event, KernelTranscript};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelOutput {
    pub graph: Graph,
    pub modulator: VertexSet,
    pub k_prime: u64,
    pub epsilon: Epsilon,
    /// Class of `G' - S'`.
    pub mode: Mode,
    /// `B(k, ε)` for the input parameter.
    pub bound: u64,
    pub transcript: KernelTranscript,
}

impl KernelOutput {
    pub fn is_trivial(&self) -> bool {
        matches!(self.transcript.case(), Some(Case::SmallModulator { .. }))
    }
}

/// The graph and component labels the branch decision runs on, after the
/// chordal pre-pass when there is one.
pub struct Stage {
    pub graph: Graph,
    pub labels: Vec<(VertexSet, ClassLabel)>,
    pub mode: Mode,
    pub events: Vec<Event>,
}

/// Applies clique contraction in chordal mode and labels the components of
/// `G - S` for the exact solvers.
pub fn prepare(inst: &ModulatorInstance) -> Result<Stage> {
    if inst.mode != Mode::Chordal {
        return Ok(Stage { graph: inst.graph.clone(), labels: inst.labels()?, mode: inst.mode, events: vec![] });
    }
    let eta = eta_for(inst.epsilon);
    let (graph, events) = rr1_contract_cliques(&inst.graph, &inst.modulator, inst.epsilon)?;
    let rest = graph.without(&inst.modulator);
    let mut labels = Vec::new();
    for comp in rest.connected_components() {
        let sub = rest.induced_subgraph(&comp)?;
        let peo = recognize_chordal(&sub)
            .ok_or_else(|| Error::Assertion("clique contraction broke chordality".into()))?;
        let width = build_clique_tree(&sub, &peo)?.width();
        if width > eta - 2 {
            return Err(Error::Assertion(format!(
                "clique tree of width {width} after contraction, expected at most {}",
                eta - 2
            )));
        }
        labels.push((comp, ClassLabel::Chordal));
    }
    Ok(Stage { graph, labels, mode: Mode::Tw(eta - 2), events })
}

/// Runs the pipeline for the instance's mode.
///
/// The small branch is taken iff `|S| <= (ε/6)|L|` with `L` the Savage cover
/// of the (possibly contracted) graph; it stores a near-optimal cover in
/// the transcript and returns a single edge. Otherwise the marking and
/// contraction kernel runs.
pub fn kernelize(inst: &ModulatorInstance) -> Result<KernelOutput> {
    inst.validate()?;
    let stage = prepare(inst)?;
    let mut transcript = KernelTranscript { events: stage.events.clone() };
    let s = &inst.modulator;
    let l = savage_2approx(&stage.graph)?;
    let bound = size_bound(inst.k, inst.epsilon);
    if inst.epsilon.small_modulator(inst.k, l.cover.len()) {
        let solved = small_modulator_solve(&stage.graph, s, inst.epsilon, &stage.labels)?;
        if let Some((_, apex)) = &solved.apex {
            transcript.push(Event::IdentifySet { members: s.clone(), label: *apex });
        }
        transcript.push(Event::CaseTag(Case::SmallModulator { cover: solved.result.cover }));
        return Ok(KernelOutput {
            graph: trivial_kernel(),
            modulator: VertexSet::new(),
            k_prime: 0,
            epsilon: inst.epsilon,
            mode: stage.mode,
            bound,
            transcript,
        });
    }
    let lk = lpr_kernel(&stage.graph, s, inst.epsilon)?;
    transcript.push(Event::CaseTag(Case::LargeModulator { k_prime: lk.k_prime }));
    transcript.events.extend(lk.events);
    Ok(KernelOutput {
        graph: lk.graph,
        modulator: lk.modulator,
        k_prime: lk.k_prime,
        epsilon: inst.epsilon,
        mode: stage.mode,
        bound,
        transcript,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::vset;

    #[test]
    fn empty_modulator_takes_small_branch() {
        let c4 = Graph::from_edges([(1, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
        let inst = ModulatorInstance::new(c4, VertexSet::new(), Epsilon::new(1, 2).unwrap(), Mode::Tw(2)).unwrap();
        let out = kernelize(&inst).unwrap();
        assert!(out.is_trivial());
        assert_eq!(out.graph, trivial_kernel());
        let Some(Case::SmallModulator { cover }) = out.transcript.case() else { panic!() };
        assert_eq!(cover.len(), 3);
    }

    #[test]
    fn chordal_k10_plus_p3() {
        let mut edges = Vec::new();
        for a in 1..=10u64 {
            for b in a + 1..=10 {
                edges.push((a, b));
            }
        }
        edges.extend([(11, 12), (12, 13), (20, 1), (20, 11)]);
        let g = Graph::from_edges(edges).unwrap();
        let inst = ModulatorInstance::new(g, vset(&[20]), Epsilon::new(1, 2).unwrap(), Mode::Chordal).unwrap();
        let out = kernelize(&inst).unwrap();
        let contractions = out
            .transcript
            .events
            .iter()
            .filter(|e| matches!(e, Event::ContractClique { .. }))
            .count();
        assert_eq!(contractions, 1);
        assert_eq!(out.mode, Mode::Tw(2));
        assert_eq!(out.transcript.replay(&inst.graph).unwrap(), out.graph);
    }

    #[test]
    fn kernelize_is_deterministic() {
        let g = Graph::from_edges((2..=28).map(|v| (1, v))).unwrap();
        let inst = ModulatorInstance::new(g, vset(&[1]), Epsilon::new(1, 1).unwrap(), Mode::Tw(1)).unwrap();
        let a = kernelize(&inst).unwrap();
        let b = kernelize(&inst).unwrap();
        assert!(!a.is_trivial());
        assert_eq!(a.transcript.to_jsonl(), b.transcript.to_jsonl());
        assert_eq!(a.transcript.replay(&inst.graph).unwrap(), a.graph);
        assert!(a.graph.n() as u64 <= a.bound);
    }
}
