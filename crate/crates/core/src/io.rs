//! Text formats: edge lists, modulator files, structured JSON instances,
//! kernel documents and PACE-style tree decompositions.
//!
//! Edge list grammar, one item per line:
//!
//! ```text
//! c <free text>            comment
//! p edge <n> <m>           header, exactly once, before any e/v line
//! v <label>                declares a vertex (optional, see below)
//! e <u> <v>                an edge
//! x <key> <value...>       metadata, kept verbatim
//! ```
//!
//! Without `v` lines the vertex set is `1..=n`. With them it is exactly the
//! declared labels, which lets graphs with non-contiguous labels (kernels,
//! shuffled instances) round-trip.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::classes::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::instance::{Epsilon, Mode, ModulatorInstance};
use crate::kernel::{KernelOutput, KernelTranscript};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeListDoc {
    pub graph: Graph,
    pub meta: BTreeMap<String, String>,
}

fn parse_label(tok: &str, line: usize) -> Result<VertexId> {
    tok.parse::<u64>()
        .map(VertexId)
        .map_err(|_| Error::Parse { line, msg: format!("bad vertex label {tok:?}") })
}

fn parse_count(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    tok.and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse { line, msg: format!("header needs a numeric {what}") })
}

pub fn read_edge_list(text: &str) -> Result<EdgeListDoc> {
    let mut header: Option<(usize, usize)> = None;
    let mut declared: Vec<(usize, VertexId)> = Vec::new();
    let mut edges: Vec<(usize, VertexId, VertexId)> = Vec::new();
    let mut meta = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut toks = raw.split_whitespace();
        let Some(kind) = toks.next() else { continue };
        let need_header = |h: &Option<(usize, usize)>| {
            h.is_none().then(|| Error::Parse { line, msg: "item before the `p edge` header".into() })
        };
        match kind {
            "c" => {}
            "p" => {
                if header.is_some() {
                    return Err(Error::Parse { line, msg: "second header".into() });
                }
                if toks.next() != Some("edge") {
                    return Err(Error::Parse { line, msg: "header must read `p edge <n> <m>`".into() });
                }
                let n = parse_count(toks.next(), line, "vertex count")?;
                let m = parse_count(toks.next(), line, "edge count")?;
                header = Some((n, m));
            }
            "v" => {
                if let Some(e) = need_header(&header) {
                    return Err(e);
                }
                let tok = toks.next().ok_or(Error::Parse { line, msg: "`v` needs a label".into() })?;
                declared.push((line, parse_label(tok, line)?));
            }
            "e" => {
                if let Some(e) = need_header(&header) {
                    return Err(e);
                }
                let (Some(a), Some(b)) = (toks.next(), toks.next()) else {
                    return Err(Error::Parse { line, msg: "`e` needs two endpoints".into() });
                };
                edges.push((line, parse_label(a, line)?, parse_label(b, line)?));
            }
            "x" => {
                let key = toks.next().ok_or(Error::Parse { line, msg: "`x` needs a key".into() })?;
                meta.insert(key.to_string(), toks.collect::<Vec<_>>().join(" "));
                continue;
            }
            other => return Err(Error::Parse { line, msg: format!("unknown line type {other:?}") }),
        }
        if toks.next().is_some() && kind != "c" {
            return Err(Error::Parse { line, msg: "trailing tokens".into() });
        }
    }
    let (n, m) = header.ok_or(Error::Parse { line: 0, msg: "missing `p edge <n> <m>` header".into() })?;
    let mut graph = Graph::new();
    if declared.is_empty() {
        for v in 1..=n as u64 {
            graph.insert_vertex(VertexId(v));
        }
    } else {
        for &(line, v) in &declared {
            if !graph.insert_vertex(v) {
                return Err(Error::Parse { line, msg: format!("duplicate vertex {v}") });
            }
        }
        if graph.n() != n {
            return Err(Error::Parse { line: 0, msg: format!("header says {n} vertices, {} declared", graph.n()) });
        }
    }
    for &(line, u, v) in &edges {
        if u == v {
            return Err(Error::Parse { line, msg: format!("self-loop on vertex {u}") });
        }
        for w in [u, v] {
            if !graph.contains(w) {
                return Err(Error::Parse { line, msg: format!("edge endpoint {w} is not a vertex") });
            }
        }
        if !graph.insert_edge(u, v) {
            return Err(Error::Parse { line, msg: format!("duplicate edge {u} {v}") });
        }
    }
    if graph.m() != m {
        return Err(Error::Parse { line: 0, msg: format!("header says {m} edges, found {}", graph.m()) });
    }
    Ok(EdgeListDoc { graph, meta })
}

/// Canonical form: header, `v` lines only when the labels are not `1..=n`,
/// sorted edges, then metadata sorted by key.
pub fn write_edge_list(g: &Graph, meta: &BTreeMap<String, String>) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.m());
    let contiguous = g.vertices().enumerate().all(|(i, v)| v.0 == i as u64 + 1);
    if !contiguous {
        for v in g.vertices() {
            out.push_str(&format!("v {v}\n"));
        }
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    for (k, v) in meta {
        out.push_str(&format!("x {k} {v}\n"));
    }
    out
}

pub fn parse_vertex_list(text: &str) -> Result<VertexSet> {
    let mut out = VertexSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let raw = raw.trim();
        if raw.is_empty() || raw.starts_with('c') || raw.starts_with('#') {
            continue;
        }
        for tok in raw.split_whitespace() {
            if !out.insert(parse_label(tok, line)?) {
                return Err(Error::Parse { line, msg: format!("vertex {tok} listed twice") });
            }
        }
    }
    Ok(out)
}

/// One label per line.
pub fn write_vertex_list(set: &VertexSet) -> String {
    set.iter().map(|v| format!("{v}\n")).collect()
}

fn join(set: &VertexSet) -> String {
    set.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn split_labels(text: &str) -> Result<VertexSet> {
    text.split_whitespace().map(|t| parse_label(t, 0)).collect()
}

/// Instance parameters carried in edge-list metadata. Missing keys can be
/// supplied by the caller; explicit arguments win.
pub fn instance_from_edge_list(
    doc: &EdgeListDoc,
    modulator: Option<VertexSet>,
    epsilon: Option<Epsilon>,
    mode: Option<Mode>,
) -> Result<ModulatorInstance> {
    let missing = |what: &str| Error::Invalid(format!("no {what} given and none in the file"));
    let modulator = match modulator {
        Some(s) => s,
        None => split_labels(doc.meta.get("modulator").map(String::as_str).unwrap_or(""))?,
    };
    let epsilon = match epsilon {
        Some(e) => e,
        None => doc.meta.get("epsilon").ok_or_else(|| missing("epsilon"))?.parse()?,
    };
    let mode = match mode {
        Some(m) => m,
        None => doc.meta.get("mode").ok_or_else(|| missing("mode"))?.parse()?,
    };
    let target = match doc.meta.get("target") {
        Some(t) => Some(t.parse().map_err(|_| Error::Invalid(format!("target {t:?} is not an integer")))?),
        None => None,
    };
    Ok(ModulatorInstance::new(doc.graph.clone(), modulator, epsilon, mode)?.with_target(target))
}

pub fn write_instance_edge_list(inst: &ModulatorInstance) -> String {
    let mut meta = BTreeMap::new();
    meta.insert("modulator".to_string(), join(&inst.modulator));
    meta.insert("epsilon".to_string(), inst.epsilon.to_string());
    meta.insert("mode".to_string(), inst.mode.to_string());
    if let Some(t) = inst.target {
        meta.insert("target".to_string(), t.to_string());
    }
    write_edge_list(&inst.graph, &meta)
}

/// The structured instance document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceDoc {
    pub n: usize,
    /// Omitted when the labels are `1..=n`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<VertexId>>,
    pub edges: Vec<(VertexId, VertexId)>,
    pub modulator: Vec<VertexId>,
    pub k: usize,
    pub epsilon: Epsilon,
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<u64>,
}

pub fn read_instance_json(text: &str) -> Result<ModulatorInstance> {
    let doc: InstanceDoc = serde_json::from_str(text)?;
    let vertices = doc.vertices.unwrap_or_else(|| (1..=doc.n as u64).map(VertexId).collect());
    if vertices.len() != doc.n {
        return Err(Error::Invalid(format!("n = {} but {} vertices listed", doc.n, vertices.len())));
    }
    let graph = Graph::from_parts(vertices, doc.edges)?;
    let modulator: VertexSet = doc.modulator.iter().copied().collect();
    if modulator.len() != doc.modulator.len() {
        return Err(Error::Invalid("modulator lists a vertex twice".into()));
    }
    let mut inst = ModulatorInstance { k: doc.k, graph, modulator, epsilon: doc.epsilon, mode: doc.mode, target: doc.target };
    inst.validate()?;
    inst.k = inst.modulator.len();
    Ok(inst)
}

pub fn write_instance_json(inst: &ModulatorInstance) -> String {
    let g = &inst.graph;
    let contiguous = g.vertices().enumerate().all(|(i, v)| v.0 == i as u64 + 1);
    let doc = InstanceDoc {
        n: g.n(),
        vertices: (!contiguous).then(|| g.vertices().collect()),
        edges: g.edges().collect(),
        modulator: inst.modulator.iter().copied().collect(),
        k: inst.k,
        epsilon: inst.epsilon,
        mode: inst.mode,
        target: inst.target,
    };
    serde_json::to_string_pretty(&doc).expect("instance serializes") + "\n"
}

/// Reads either format, deciding by the first non-blank character.
pub fn read_instance(text: &str) -> Result<ModulatorInstance> {
    if text.trim_start().starts_with('{') {
        read_instance_json(text)
    } else {
        instance_from_edge_list(&read_edge_list(text)?, None, None, None)
    }
}

/// Kernel graph as an edge list with `S'`, `k'`, `ε`, mode and bound in
/// metadata. The transcript travels separately as JSON lines.
pub fn write_kernel(k: &KernelOutput) -> String {
    let mut meta = BTreeMap::new();
    meta.insert("kernel-modulator".to_string(), join(&k.modulator));
    meta.insert("k-prime".to_string(), k.k_prime.to_string());
    meta.insert("epsilon".to_string(), k.epsilon.to_string());
    meta.insert("mode".to_string(), k.mode.to_string());
    meta.insert("bound".to_string(), k.bound.to_string());
    meta.insert("case".to_string(), if k.is_trivial() { "small-modulator" } else { "large-modulator" }.to_string());
    write_edge_list(&k.graph, &meta)
}

pub fn read_kernel(doc: &str, transcript: &str) -> Result<KernelOutput> {
    let d = read_edge_list(doc)?;
    let get = |key: &str| d.meta.get(key).ok_or_else(|| Error::Invalid(format!("kernel document lacks `x {key}`")));
    let num = |key: &str| -> Result<u64> {
        let v = get(key)?;
        v.parse().map_err(|_| Error::Invalid(format!("`x {key}` is not an integer: {v:?}")))
    };
    let out = KernelOutput {
        modulator: split_labels(get("kernel-modulator")?)?,
        k_prime: num("k-prime")?,
        epsilon: get("epsilon")?.parse()?,
        mode: get("mode")?.parse()?,
        bound: num("bound")?,
        transcript: KernelTranscript::from_jsonl(transcript)?,
        graph: d.graph,
    };
    if let Some(v) = out.modulator.iter().find(|v| !out.graph.contains(**v)) {
        return Err(Error::Invalid(format!("kernel modulator vertex absent: {v}")));
    }
    Ok(out)
}

/// PACE `.td` text: `s td <bags> <width+1> <n>`, `b <i> <labels...>`
/// (1-based bag ids), then one `<i> <j>` line per tree edge.
pub fn write_td(td: &TreeDecomposition, n: usize) -> String {
    let mut out = format!("s td {} {} {}\n", td.bags.len(), td.width() + 1, n);
    for (i, bag) in td.bags.iter().enumerate() {
        out.push_str(&format!("b {}", i + 1));
        for v in bag {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
    }
    for &(a, b) in &td.edges {
        out.push_str(&format!("{} {}\n", a + 1, b + 1));
    }
    out
}

pub fn read_td(text: &str) -> Result<TreeDecomposition> {
    let mut bags: Option<Vec<Option<VertexSet>>> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        let bad = |msg: &str| Error::Parse { line, msg: msg.to_string() };
        let index = |tok: &str, count: usize| -> Result<usize> {
            match tok.parse::<usize>() {
                Ok(j) if (1..=count).contains(&j) => Ok(j - 1),
                _ => Err(bad(&format!("bag id {tok:?} out of range"))),
            }
        };
        match toks.first().copied() {
            None | Some("c") => {}
            Some("s") => {
                if toks.len() != 5 || toks[1] != "td" || bags.is_some() {
                    return Err(bad("expected a single `s td <bags> <width+1> <n>` line"));
                }
                let count: usize = toks[2].parse().map_err(|_| bad("bad bag count"))?;
                bags = Some(vec![None; count]);
            }
            Some("b") => {
                let slots = bags.as_mut().ok_or_else(|| bad("bag before the `s td` line"))?;
                let count = slots.len();
                let j = index(toks.get(1).ok_or_else(|| bad("`b` needs an id"))?, count)?;
                let bag = toks[2..].iter().map(|t| parse_label(t, line)).collect::<Result<VertexSet>>()?;
                if slots[j].replace(bag).is_some() {
                    return Err(bad("bag listed twice"));
                }
            }
            Some(_) => {
                let count = bags.as_ref().ok_or_else(|| bad("edge before the `s td` line"))?.len();
                if toks.len() != 2 {
                    return Err(bad("tree edge needs two bag ids"));
                }
                edges.push((index(toks[0], count)?, index(toks[1], count)?));
            }
        }
    }
    let bags = bags.ok_or(Error::Parse { line: 0, msg: "missing `s td` line".into() })?;
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| Error::Invalid(format!("bag {} is never listed", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    Ok(TreeDecomposition { bags, edges })
}
