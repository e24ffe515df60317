//! Seeded random instances with planted component classes.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classes::cograph::{CoKind, Cotree, CotreeNode};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::instance::{Epsilon, Mode, ModulatorInstance};

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenClass {
    Tree,
    Chordal,
    /// Chordal with larger cliques.
    DenseChordal,
    Split,
    Cograph,
    /// Random connected subgraph of a `w`-tree.
    PartialKTree(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSpec {
    pub class: GenClass,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub components: Vec<ComponentSpec>,
    /// Number of modulator vertices.
    pub k: usize,
    /// Probability of each modulator-to-component and modulator-to-modulator
    /// edge beyond the ones needed for connectivity.
    #[serde(default = "default_density")]
    pub density: f64,
    pub epsilon: Epsilon,
    pub mode: Mode,
    #[serde(default)]
    pub seed: u64,
}

fn default_density() -> f64 {
    0.3
}

/// Edges over local indices `0..size`.
type Local = Vec<(usize, usize)>;

fn random_tree(rng: &mut Rng64, size: usize) -> Local {
    (1..size).map(|i| (rng.gen_range(0..i), i)).collect()
}

/// Each new vertex is joined to a random clique grown around a random
/// earlier vertex, so insertion order reversed is a perfect elimination
/// order.
fn random_chordal(rng: &mut Rng64, size: usize, grow: f64) -> Local {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); size];
    let mut edges = Vec::new();
    for v in 1..size {
        let u = rng.gen_range(0..v);
        let mut clique = vec![u];
        let mut cand = adj[u].clone();
        cand.shuffle(rng);
        for w in cand {
            if rng.gen_bool(grow) && clique.iter().all(|c| adj[*c].contains(&w)) {
                clique.push(w);
            }
        }
        for c in clique {
            adj[c].push(v);
            adj[v].push(c);
            edges.push((c, v));
        }
    }
    edges
}

fn random_split(rng: &mut Rng64, size: usize) -> Local {
    if size <= 1 {
        return Vec::new();
    }
    let c = rng.gen_range(1..size);
    let mut edges = Vec::new();
    for a in 0..c {
        for b in a + 1..c {
            edges.push((a, b));
        }
    }
    for i in c..size {
        let first = rng.gen_range(0..c);
        for a in 0..c {
            if a == first || rng.gen_bool(0.4) {
                edges.push((a, i));
            }
        }
    }
    edges
}

/// Random cotree on `leaves` with a join at the top, so the cograph is
/// connected.
pub fn random_cotree(rng: &mut Rng64, leaves: &[VertexId]) -> Cotree {
    fn build(rng: &mut Rng64, leaves: &[VertexId], join: bool, nodes: &mut Vec<CotreeNode>) -> usize {
        if let [v] = leaves {
            nodes.push(CotreeNode { kind: CoKind::Leaf(*v), children: vec![] });
            return nodes.len() - 1;
        }
        let parts = rng.gen_range(2..=leaves.len().min(3));
        let mut cuts: Vec<usize> = (1..leaves.len()).collect();
        cuts.shuffle(rng);
        let mut cuts: Vec<usize> = cuts.into_iter().take(parts - 1).collect();
        cuts.sort();
        cuts.insert(0, 0);
        cuts.push(leaves.len());
        let children = cuts.windows(2).map(|w| build(rng, &leaves[w[0]..w[1]], !join, nodes)).collect();
        nodes.push(CotreeNode { kind: if join { CoKind::Join } else { CoKind::Union }, children });
        nodes.len() - 1
    }
    let mut nodes = Vec::new();
    let root = build(rng, leaves, true, &mut nodes);
    Cotree { nodes, root }
}

fn random_cograph(rng: &mut Rng64, size: usize) -> Local {
    let leaves: Vec<VertexId> = (0..size as u64).map(VertexId).collect();
    let g = random_cotree(rng, &leaves).to_graph();
    g.edges().map(|(a, b)| (a.0 as usize, b.0 as usize)).collect()
}

/// A `w`-tree on `size` vertices with edges dropped at random while the
/// graph stays connected.
fn random_partial_ktree(rng: &mut Rng64, size: usize, w: usize) -> Local {
    let w = w.max(1);
    let base = size.min(w + 1);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for a in 0..base {
        for b in a + 1..base {
            edges.push((a, b));
        }
    }
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    if base == w + 1 {
        for skip in 0..base {
            cliques.push((0..base).filter(|&x| x != skip).collect());
        }
    }
    for v in base..size {
        let host = cliques[rng.gen_range(0..cliques.len())].clone();
        for &x in &host {
            edges.push((x, v));
        }
        for skip in 0..host.len() {
            let mut c: Vec<usize> = host.iter().copied().filter(|&x| x != host[skip]).collect();
            c.push(v);
            cliques.push(c);
        }
    }
    edges.shuffle(rng);
    let mut kept = edges.clone();
    for e in edges {
        if rng.gen_bool(0.35) {
            let trial: Vec<_> = kept.iter().copied().filter(|&f| f != e).collect();
            if local_connected(size, &trial) {
                kept = trial;
            }
        }
    }
    kept
}

fn local_connected(size: usize, edges: &Local) -> bool {
    let g = Graph::from_parts((0..size as u64).map(VertexId), edges.iter().map(|&(a, b)| (VertexId(a as u64), VertexId(b as u64))))
        .expect("local graph is simple");
    g.is_connected()
}

pub fn planted_component(rng: &mut Rng64, spec: ComponentSpec) -> Local {
    match spec.class {
        GenClass::Tree => random_tree(rng, spec.size),
        GenClass::Chordal => random_chordal(rng, spec.size, 0.6),
        GenClass::DenseChordal => random_chordal(rng, spec.size, 0.95),
        GenClass::Split => random_split(rng, spec.size),
        GenClass::Cograph => random_cograph(rng, spec.size),
        GenClass::PartialKTree(w) => random_partial_ktree(rng, spec.size, w),
    }
}

/// Relabels `g` by a random bijection onto `1..=n`.
pub fn shuffle_labels(rng: &mut Rng64, g: &Graph, keep: &VertexSet) -> (Graph, VertexSet) {
    let mut targets: Vec<u64> = (1..=g.n() as u64).collect();
    targets.shuffle(rng);
    let map: std::collections::BTreeMap<VertexId, VertexId> =
        g.vertices().zip(targets.into_iter().map(VertexId)).collect();
    let g2 = Graph::from_parts(map.values().copied(), g.edges().map(|(a, b)| (map[&a], map[&b])))
        .expect("relabelling keeps the graph simple");
    (g2, keep.iter().map(|v| map[v]).collect())
}

/// Builds the components in their classes, then `k` modulator vertices with
/// random edges into them, enough to make the whole graph connected.
pub fn gen_instance(spec: &GenSpec) -> Result<ModulatorInstance> {
    let mut rng = rng(spec.seed);
    gen_with(&mut rng, spec)
}

pub fn gen_with(rng: &mut Rng64, spec: &GenSpec) -> Result<ModulatorInstance> {
    if spec.components.iter().any(|c| c.size == 0) {
        return Err(Error::Invalid("component of size 0".into()));
    }
    if spec.k == 0 && spec.components.len() != 1 {
        return Err(Error::Invalid("without a modulator exactly one component is needed for connectivity".into()));
    }
    if !(0.0..=1.0).contains(&spec.density) {
        return Err(Error::Invalid("density must lie in [0, 1]".into()));
    }
    let mut vertices = Vec::new();
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let mut comps: Vec<Vec<VertexId>> = Vec::new();
    let mut next = 1u64;
    for &c in &spec.components {
        let ids: Vec<VertexId> = (next..next + c.size as u64).map(VertexId).collect();
        next += c.size as u64;
        edges.extend(planted_component(rng, c).into_iter().map(|(a, b)| (ids[a], ids[b])));
        vertices.extend(ids.iter().copied());
        comps.push(ids);
    }
    let s: Vec<VertexId> = (next..next + spec.k as u64).map(VertexId).collect();
    vertices.extend(s.iter().copied());
    for &m in &s {
        for comp in &comps {
            for &v in comp {
                if rng.gen_bool(spec.density) {
                    edges.push((m, v));
                }
            }
        }
    }
    for (i, &a) in s.iter().enumerate() {
        for &b in &s[i + 1..] {
            if rng.gen_bool(spec.density) {
                edges.push((a, b));
            }
        }
    }
    let mut g = Graph::from_edges(edges.iter().map(|(a, b)| (a.0, b.0)))?;
    for &v in &vertices {
        g.insert_vertex(v);
    }
    // Join the pieces: every extra connection goes through a modulator
    // vertex, so the components of G - S are left untouched.
    loop {
        let pieces = g.connected_components();
        if pieces.len() <= 1 {
            break;
        }
        let a = &pieces[0];
        let b = &pieces[rng.gen_range(1..pieces.len())];
        let mods = |p: &VertexSet| -> Vec<VertexId> { p.iter().copied().filter(|v| s.contains(v)).collect() };
        let any = |rng: &mut Rng64, p: &VertexSet| -> VertexId {
            *p.iter().collect::<Vec<_>>().choose(rng).copied().expect("pieces are nonempty")
        };
        let (u, v) = if let Some(&x) = mods(a).choose(rng) {
            (x, any(rng, b))
        } else if let Some(&y) = mods(b).choose(rng) {
            (y, any(rng, a))
        } else {
            let m = *s.choose(rng).ok_or_else(|| Error::Invalid("cannot connect the components".into()))?;
            (m, any(rng, a))
        };
        g.insert_edge(u, v);
    }
    let modulator: VertexSet = s.iter().copied().collect();
    let (g, modulator) = shuffle_labels(rng, &g, &modulator);
    ModulatorInstance::new(g, modulator, spec.epsilon, spec.mode)
}

/// High-degree instance for the marking kernel: `hubs` modulator vertices,
/// each with many private or shared leaves, plus a few extra vertices so
/// `G - S` is a forest of small stars.
pub fn gen_hub_instance(rng: &mut Rng64, hubs: usize, leaves: usize, eps: Epsilon, mode: Mode) -> Result<ModulatorInstance> {
    if hubs == 0 {
        return Err(Error::Invalid("hub instance needs at least one hub".into()));
    }
    let hub_ids: Vec<u64> = (1..=hubs as u64).collect();
    let mut edges = Vec::new();
    let mut next = hubs as u64 + 1;
    // hubs are joined through connector leaves, never directly, so they
    // stay separate components of the high-degree part
    for i in 1..hubs {
        edges.push((hub_ids[rng.gen_range(0..i)], next));
        edges.push((hub_ids[i], next));
        next += 1;
    }
    for _ in 0..leaves {
        let v = next;
        next += 1;
        let touch = rng.gen_range(1..=hubs.min(3));
        let mut chosen = hub_ids.clone();
        chosen.shuffle(rng);
        for &h in &chosen[..touch] {
            edges.push((h, v));
        }
        if rng.gen_bool(0.1) {
            edges.push((v, next));
            next += 1;
        }
    }
    let g = Graph::from_edges(edges)?;
    let s: VertexSet = hub_ids.into_iter().map(VertexId).collect();
    let (g, s) = shuffle_labels(rng, &g, &s);
    ModulatorInstance::new(g, s, eps, mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::cograph::is_cograph;
    use crate::classes::recognize_chordal;
    use crate::io::write_instance_json;

    fn spec(components: Vec<ComponentSpec>, k: usize, mode: Mode, seed: u64) -> GenSpec {
        GenSpec { components, k, density: 0.3, epsilon: Epsilon::new(1, 2).unwrap(), mode, seed }
    }

    #[test]
    fn two_chordal_components() {
        let c = ComponentSpec { class: GenClass::Chordal, size: 5 };
        let inst = gen_instance(&spec(vec![c, c], 2, Mode::Chordal, 1)).unwrap();
        assert_eq!(inst.graph.n(), 12);
        assert!(recognize_chordal(&inst.graph.without(&inst.modulator)).is_some());
    }

    #[test]
    fn single_cograph_without_modulator() {
        let c = ComponentSpec { class: GenClass::Cograph, size: 6 };
        let inst = gen_instance(&spec(vec![c], 0, Mode::SplitCograph, 3)).unwrap();
        assert!(inst.graph.is_connected());
        assert!(is_cograph(&inst.graph));
    }

    #[test]
    fn same_seed_same_bytes() {
        let comps = vec![
            ComponentSpec { class: GenClass::PartialKTree(2), size: 6 },
            ComponentSpec { class: GenClass::Tree, size: 4 },
        ];
        let a = gen_instance(&spec(comps.clone(), 3, Mode::Tw(2), 9)).unwrap();
        let b = gen_instance(&spec(comps, 3, Mode::Tw(2), 9)).unwrap();
        assert_eq!(write_instance_json(&a), write_instance_json(&b));
    }

    #[test]
    fn every_class_is_valid() {
        let mut r = rng(5);
        for class in [GenClass::Tree, GenClass::Chordal, GenClass::Split, GenClass::Cograph, GenClass::PartialKTree(3), GenClass::DenseChordal] {
            for size in 1..9 {
                let e = planted_component(&mut r, ComponentSpec { class, size });
                let g = Graph::from_parts(
                    (0..size as u64).map(VertexId),
                    e.iter().map(|&(a, b)| (VertexId(a as u64), VertexId(b as u64))),
                )
                .unwrap();
                assert!(g.is_connected(), "{class:?} {size}");
            }
        }
    }

    #[test]
    fn disconnected_without_modulator_is_rejected() {
        let c = ComponentSpec { class: GenClass::Tree, size: 3 };
        assert!(gen_instance(&spec(vec![c, c], 0, Mode::Tw(1), 1)).is_err());
    }
}
