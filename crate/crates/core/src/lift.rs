//! Turning kernel solutions back into covers of the original graph.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::approx::{minimalize, reconnect};
use crate::error::{Error, Result};
use crate::exact::{cvc_oracle, ORACLE_GUARD};
use crate::graph::{Graph, VertexSet};
use crate::instance::ModulatorInstance;
use crate::kernel::{Case, Event, KernelOutput};

/// Exact approximation factor.
pub type Factor = Ratio<u64>;

/// Serializes a ratio as `"num/den"`.
pub mod ratio_str {
    use num_rational::Ratio;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Ratio<u64>, D::Error> {
        let text = String::deserialize(d)?;
        parse(&text).ok_or_else(|| D::Error::custom(format!("bad ratio {text:?}")))
    }

    pub fn parse(text: &str) -> Option<Ratio<u64>> {
        let (n, d) = text.split_once('/').unwrap_or((text, "1"));
        let (n, d) = (n.trim().parse().ok()?, d.trim().parse().ok()?);
        (d != 0).then(|| Ratio::new(n, d))
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(r: &Option<Ratio<u64>>, s: S) -> Result<S::Ok, S::Error> {
            match r {
                Some(r) => super::serialize(r, s),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Ratio<u64>>, D::Error> {
            match Option::<String>::deserialize(d)? {
                Some(text) => parse(&text).map(Some).ok_or_else(|| D::Error::custom(format!("bad ratio {text:?}"))),
                None => Ok(None),
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub original_n: usize,
    pub cover: VertexSet,
    pub size: usize,
    #[serde(with = "ratio_str")]
    pub claimed_bound: Ratio<u64>,
    /// `max{c, 1+ε}·(1+ε)`; only set by [`lift`].
    #[serde(with = "ratio_str::option", default)]
    pub conservative_bound: Option<Ratio<u64>>,
    pub oracle_opt: Option<usize>,
    #[serde(with = "ratio_str::option", default)]
    pub oracle_ratio: Option<Ratio<u64>>,
    pub reconnect_added: usize,
    pub checks: Vec<Check>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_checks(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }
}

/// Checks that `cover` is a connected vertex cover of `g` and, when `g` is
/// small enough for the oracle, that `|cover| <= bound · OPT`.
pub fn certify(g: &Graph, cover: &VertexSet, bound: Ratio<u64>) -> Certificate {
    let mut checks = vec![Check { name: "connected vertex cover".into(), passed: g.is_connected_vertex_cover(cover) }];
    let (mut oracle_opt, mut oracle_ratio) = (None, None);
    if g.n() <= ORACLE_GUARD && g.is_connected() {
        if let Ok(opt) = cvc_oracle(g, &VertexSet::new(), &VertexSet::new()) {
            let within = if opt.size == 0 {
                cover.is_empty()
            } else {
                let r = Ratio::new(cover.len() as u64, opt.size as u64);
                oracle_ratio = Some(r);
                r <= bound
            };
            oracle_opt = Some(opt.size);
            checks.push(Check { name: "ratio within bound".into(), passed: within });
        }
    }
    Certificate {
        original_n: g.n(),
        cover: cover.clone(),
        size: cover.len(),
        claimed_bound: bound,
        conservative_bound: None,
        oracle_opt,
        oracle_ratio,
        reconnect_added: 0,
        checks,
    }
}

/// Undoes a single event on a cover of the graph after that event.
/// Events that do not change the vertex set map covers to themselves.
pub fn lift_event(d: &VertexSet, event: &Event) -> VertexSet {
    let mut d = d.clone();
    match event {
        Event::ContractClique { clique, label, pendant } => {
            let hit = d.remove(label) | d.remove(pendant);
            if hit {
                d.extend(clique.iter().copied());
            }
        }
        Event::SuperVertexMerge { vertex, members, label } => {
            if d.remove(label) {
                d.insert(*vertex);
                d.extend(members.iter().copied());
            }
        }
        Event::PendantAdded { on, label } => {
            if d.remove(label) {
                d.insert(*on);
            }
        }
        Event::IdentifySet { .. } | Event::CaseTag(_) | Event::MarkRecord { .. } | Event::TwinDropped { .. } => {}
    }
    d
}

/// Applies [`lift_event`] to `events` in reverse order.
pub fn lift_events(d: &VertexSet, events: &[Event]) -> VertexSet {
    events.iter().rev().fold(d.clone(), |d, e| lift_event(&d, e))
}

/// Lifts a connected vertex cover `q` of the kernel, assumed to be a
/// `c`-approximation, to a cover of the original graph.
///
/// Small branch: the cover stored in the transcript is used and `q` is only
/// validated. Large branch: `q` is minimalized in the kernel and every
/// event is undone in reverse. Both end with a reconnect in the original
/// graph; an invalid result is an assertion error.
pub fn lift(original: &ModulatorInstance, kernel: &KernelOutput, q: &VertexSet, c: Ratio<u64>) -> Result<Certificate> {
    if !kernel.graph.is_connected_vertex_cover(q) {
        return Err(Error::Invalid("solution is not a connected vertex cover of the kernel".into()));
    }
    let events = &kernel.transcript.events;
    let tag = events
        .iter()
        .position(|e| matches!(e, Event::CaseTag(_)))
        .ok_or_else(|| Error::Invalid("transcript has no case tag".into()))?;
    let one_plus = original.epsilon.one_plus();
    let (d, claimed) = match &events[tag] {
        Event::CaseTag(Case::SmallModulator { cover }) => (lift_events(cover, &events[..tag]), one_plus),
        _ => {
            let min = minimalize(&kernel.graph, q)?;
            (lift_events(&min, events), c * one_plus)
        }
    };
    let g = &original.graph;
    if let Some(v) = d.iter().find(|v| !g.contains(**v)) {
        return Err(Error::Assertion(format!("lifted cover names {v}, which is not in the original graph")));
    }
    let (d, added) = reconnect(g, &d).map_err(|e| Error::Assertion(format!("lifted cover is invalid: {e}")))?;
    if !g.is_connected_vertex_cover(&d) {
        return Err(Error::Assertion("lifted cover is not a connected vertex cover".into()));
    }
    let mut cert = certify(g, &d, claimed);
    cert.conservative_bound = Some(std::cmp::max(c, one_plus) * one_plus);
    cert.reconnect_added = added;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::solve_exact;
    use crate::graph::{vset, VertexId};
    use crate::instance::{Epsilon, Mode};
    use crate::kernel::kernelize;

    fn one() -> Ratio<u64> {
        Ratio::from_integer(1)
    }

    #[test]
    fn clique_step_expands_label() {
        let e = Event::ContractClique { clique: vset(&[1, 2, 3, 4]), label: VertexId(10), pendant: VertexId(11) };
        let d = lift_event(&vset(&[10, 5, 6, 7, 8, 9, 12]), &e);
        assert_eq!(d.len(), 7 + 3);
        assert!(d.is_superset(&vset(&[1, 2, 3, 4])));
        assert_eq!(lift_event(&vset(&[5]), &e), vset(&[5]));
    }

    #[test]
    fn small_branch_ignores_q() {
        let c4 = Graph::from_edges([(1, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
        let inst = ModulatorInstance::new(c4, VertexSet::new(), Epsilon::new(1, 2).unwrap(), Mode::Tw(2)).unwrap();
        let out = kernelize(&inst).unwrap();
        let Some(Case::SmallModulator { cover }) = out.transcript.case() else { panic!() };
        for q in [vset(&[1]), vset(&[2]), vset(&[1, 2])] {
            let cert = lift(&inst, &out, &q, one()).unwrap();
            assert_eq!(&cert.cover, cover);
            assert!(cert.passed());
        }
        assert!(lift(&inst, &out, &VertexSet::new(), one()).is_err());
    }

    #[test]
    fn chordal_lift_round_trip() {
        let mut edges = Vec::new();
        for a in 1..=6u64 {
            for b in a + 1..=6 {
                edges.push((a, b));
            }
        }
        edges.extend([(7, 1), (7, 8), (8, 9), (9, 10), (10, 11), (11, 12), (7, 12), (8, 11)]);
        let g = Graph::from_edges(edges).unwrap();
        let inst = ModulatorInstance::new(g, vset(&[7, 8, 9, 10]), Epsilon::new(1, 1).unwrap(), Mode::Chordal).unwrap();
        let out = kernelize(&inst).unwrap();
        assert!(!out.is_trivial());
        let q = solve_exact(&out.graph).unwrap().cover;
        let cert = lift(&inst, &out, &q, one()).unwrap();
        assert!(cert.passed(), "{:?}", cert.failed_checks());
        assert_eq!(cert.claimed_bound, Ratio::from_integer(2));
    }

    #[test]
    fn certificate_json_round_trip() {
        let p4 = Graph::from_edges([(1, 2), (2, 3), (3, 4)]).unwrap();
        let cert = certify(&p4, &vset(&[1, 2, 3]), Ratio::new(3, 2));
        assert!(cert.passed());
        assert_eq!(cert.oracle_ratio, Some(Ratio::new(3, 2)));
        let text = serde_json::to_string(&cert).unwrap();
        assert!(text.contains("\"3/2\""));
        assert_eq!(serde_json::from_str::<Certificate>(&text).unwrap(), cert);
        assert!(!certify(&p4, &vset(&[1, 3]), Ratio::new(2, 1)).passed());
    }
}
