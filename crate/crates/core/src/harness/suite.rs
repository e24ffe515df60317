//! Batch property checks against the exhaustive oracles.
//!
//! Each `check_*` function runs one property over freshly generated
//! instances and reports how many trials violated it. Nothing here panics
//! on a violation; the caller decides what a failure means.

use std::fmt::Write as _;

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::approx::{minimalize, savage_2approx};
use crate::brute;
use crate::classes::chordal::{build_clique_tree, recognize_chordal};
use crate::classes::cograph::recognize_cograph;
use crate::classes::{min_fill_decomposition, ClassLabel};
use crate::error::Result;
use crate::exact::apex::solve_component;
use crate::exact::{cvc_oracle, cvc_treewidth_dp, cvc_tw_apex, solve_exact, ApexProblem, ORACLE_GUARD};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::harness::gen::{gen_hub_instance, gen_with, planted_component, rng, ComponentSpec, GenClass, GenSpec, Rng64};
use crate::instance::{Epsilon, Mode, ModulatorInstance};
use crate::kernel::{eta_for, kernelize, lpr_kernel, prepare, rr1_contract_cliques, small_modulator_solve, Event};
use crate::lift::{lift, lift_event, lift_events};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub id: String,
    pub name: String,
    pub trials: usize,
    pub failures: usize,
    /// Largest observed `ratio / bound`-style quantity, when meaningful.
    pub max_ratio: Option<f64>,
    pub bound: Option<f64>,
    /// `false` for measurements that are recorded but not required to hold.
    pub asserted: bool,
    pub notes: Vec<String>,
}

impl PropertyReport {
    fn new(id: &str, name: &str) -> Self {
        PropertyReport { id: id.into(), name: name.into(), asserted: true, ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        !self.asserted || self.failures == 0
    }

    fn fail(&mut self, note: impl Into<String>) {
        self.failures += 1;
        if self.notes.len() < 8 {
            self.notes.push(note.into());
        }
    }

    fn observe(&mut self, ratio: f64) {
        self.max_ratio = Some(self.max_ratio.map_or(ratio, |r| r.max(ratio)));
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub trials: usize,
    pub rows: Vec<PropertyReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(PropertyReport::passed)
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{:<6} {:<52} {:>7} {:>8} {:>10} {:>8}", "id", "property", "trials", "failures", "max ratio", "bound");
        for r in &self.rows {
            let f = |x: Option<f64>| x.map_or("-".to_string(), |v| format!("{v:.4}"));
            let failures = if r.asserted { r.failures.to_string() } else { format!("({})", r.failures) };
            let _ = writeln!(
                out,
                "{:<6} {:<52} {:>7} {:>8} {:>10} {:>8}",
                r.id,
                r.name,
                r.trials,
                failures,
                f(r.max_ratio),
                f(r.bound)
            );
        }
        out
    }
}

fn ratio_f64(num: usize, den: usize) -> f64 {
    if den == 0 {
        if num == 0 { 1.0 } else { f64::INFINITY }
    } else {
        num as f64 / den as f64
    }
}

fn within(size: usize, opt: usize, bound: Ratio<u64>) -> bool {
    Ratio::from_integer(size as u64) <= bound * Ratio::from_integer(opt as u64)
}

/// Exact optimum; the oracle on small graphs, the decomposition program
/// otherwise.
pub fn opt(g: &Graph) -> Result<usize> {
    let none = VertexSet::new();
    let sol = if g.n() <= ORACLE_GUARD { cvc_oracle(g, &none, &none)? } else { solve_exact(g)? };
    Ok(sol.size)
}

pub fn random_connected(rng: &mut Rng64, n: usize, p: f64) -> Graph {
    let mut edges: Vec<(u64, u64)> = (2..=n as u64).map(|v| (rng.gen_range(1..v), v)).collect();
    for a in 1..=n as u64 {
        for b in a + 1..=n as u64 {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    let mut g = Graph::from_edges(edges).expect("no self-loops");
    if n == 1 {
        g.insert_vertex(VertexId(1));
    }
    g
}

fn random_graph(rng: &mut Rng64, n: usize, p: f64) -> Graph {
    let mut g = Graph::new();
    for v in 1..=n as u64 {
        g.insert_vertex(VertexId(v));
    }
    for a in 1..=n as u64 {
        for b in a + 1..=n as u64 {
            if rng.gen_bool(p) {
                g.insert_edge(VertexId(a), VertexId(b));
            }
        }
    }
    g
}

fn local_graph(edges: &[(usize, usize)], size: usize) -> Graph {
    let mut g = Graph::new();
    for v in 1..=size as u64 {
        g.insert_vertex(VertexId(v));
    }
    for &(a, b) in edges {
        g.insert_edge(VertexId(a as u64 + 1), VertexId(b as u64 + 1));
    }
    g
}

/// Grows a connected vertex cover `q` to `target` vertices by adding the
/// smallest label adjacent to it, keeping it connected.
pub fn pad(g: &Graph, q: &VertexSet, target: usize) -> VertexSet {
    let mut q = q.clone();
    while q.len() < target {
        let next = if q.is_empty() {
            g.vertices().next()
        } else {
            g.open_neighborhood(&q).into_iter().next()
        };
        match next {
            Some(v) => {
                q.insert(v);
            }
            None => break,
        }
    }
    q
}

fn floor_times(c: Ratio<u64>, x: usize) -> usize {
    (c * Ratio::from_integer(x as u64)).to_integer() as usize
}

pub const EPSILONS: [(u64, u64); 3] = [(1, 4), (1, 2), (1, 1)];

fn eps_at(i: usize) -> Epsilon {
    let (n, d) = EPSILONS[i % EPSILONS.len()];
    Epsilon::new(n, d).expect("constant epsilons are valid")
}

const PADDINGS: [(u64, u64); 3] = [(1, 1), (3, 2), (2, 1)];

/// The class each exact solver is checked on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolverClass {
    Split,
    Chordal,
    Cograph,
    Treewidth,
}

/// Solver value equals the oracle value on random apex problems of at
/// most 14 vertices, apex included.
pub fn check_class_solver(class: SolverClass, trials: usize, seed: u64) -> PropertyReport {
    let mut rep = PropertyReport::new("1", &format!("{class:?} apex solver equals oracle").to_lowercase());
    let mut rng = rng(seed);
    for t in 0..trials {
        let size = rng.gen_range(1..=13);
        let (gen_class, label) = match class {
            SolverClass::Split => (GenClass::Split, ClassLabel::Split),
            SolverClass::Chordal => {
                (if t % 2 == 0 { GenClass::Chordal } else { GenClass::DenseChordal }, ClassLabel::Chordal)
            }
            SolverClass::Cograph => (GenClass::Cograph, ClassLabel::Cograph),
            SolverClass::Treewidth => {
                let w = rng.gen_range(1..=3);
                (GenClass::PartialKTree(w), ClassLabel::Tw(w))
            }
        };
        let comp = local_graph(&planted_component(&mut rng, ComponentSpec { class: gen_class, size }), size);
        let density = rng.gen_range(0.05..0.8);
        let mut m: VertexSet = comp.vertices().filter(|_| rng.gen_bool(density)).collect();
        if m.is_empty() && rng.gen_bool(0.8) {
            m.insert(VertexId(rng.gen_range(1..=size as u64)));
        }
        let apex_in = rng.gen_bool(0.5);
        let p = ApexProblem::new(comp, m, apex_in).expect("apex neighbours lie in the component");
        let (g, apex) = p.with_apex();
        let apex_set = VertexSet::from([apex]);
        let none = VertexSet::new();
        let (req, forb) = if apex_in { (&apex_set, &none) } else { (&none, &apex_set) };
        let want = match cvc_oracle(&g, req, forb) {
            Ok(s) => s,
            Err(e) => {
                rep.fail(format!("trial {t}: oracle error {e}"));
                continue;
            }
        };
        rep.trials += 1;
        let got = solve_component(&p, label);
        let mut results = vec![("class solver", got)];
        if class == SolverClass::Treewidth {
            let ntd = min_fill_decomposition(&g).to_nice();
            results.push(("decomposition program", cvc_treewidth_dp(&g, &ntd, req, forb).map(|mut s| {
                s.cover.remove(&apex);
                s.size = s.cover.len();
                s
            })));
            if let ClassLabel::Tw(w) = label {
                results.push(("treewidth apex solver", cvc_tw_apex(&p, w)));
            }
        }
        let mut bad = None;
        for (what, res) in results {
            match res {
                Ok(s) if s.feasible != want.feasible => bad = Some(format!("{what}: feasibility differs")),
                Ok(s) if s.feasible && (s.size != want.size.saturating_sub(apex_in as usize) || !p.accepts(&s.cover)) => {
                    bad = Some(format!("{what}: size {} vs oracle {}", s.size, want.size.saturating_sub(apex_in as usize)))
                }
                Ok(_) => {}
                Err(e) => bad = Some(format!("{what}: {e}")),
            }
        }
        if let Some(why) = bad {
            rep.fail(format!("trial {t} (n = {}, apex_in = {apex_in}): {why}", g.n()));
        }
    }
    rep
}

/// Savage's cover is a connected vertex cover of size at most `2·OPT`.
pub fn check_savage(trials: usize, seed: u64) -> PropertyReport {
    let mut rep = PropertyReport::new("2", "savage cover within 2·OPT");
    rep.bound = Some(2.0);
    let mut rng = rng(seed);
    for t in 0..trials {
        let n = rng.gen_range(1..=14);
        let p = rng.gen_range(0.0..0.5);
        let g = random_connected(&mut rng, n, p);
        rep.trials += 1;
        let l = match savage_2approx(&g) {
            Ok(l) => l.cover,
            Err(e) => {
                rep.fail(format!("trial {t}: {e}"));
                continue;
            }
        };
        let o = opt(&g).expect("oracle within guard");
        rep.observe(ratio_f64(l.len(), o));
        if !g.is_connected_vertex_cover(&l) || l.len() > 2 * o {
            rep.fail(format!("trial {t}: |L| = {} with OPT = {o}", l.len()));
        }
    }
    rep
}

/// Identifying any vertex set never raises the optimum.
pub fn check_identification(trials: usize, seed: u64) -> PropertyReport {
    let mut rep = PropertyReport::new("3", "OPT(identify(G, X)) <= OPT(G)");
    let mut rng = rng(seed);
    for t in 0..trials {
        let n = rng.gen_range(2..=14);
        let p = rng.gen_range(0.0..0.5);
        let g = random_connected(&mut rng, n, p);
        let size = rng.gen_range(1..=n);
        let mut vs: Vec<VertexId> = g.vertices().collect();
        vs.shuffle(&mut rng);
        let x: VertexSet = vs.into_iter().take(size).collect();
        let (h, _) = g.identify(&x).expect("nonempty set of vertices");
        rep.trials += 1;
        let (a, b) = (opt(&g).expect("oracle"), opt(&h).expect("oracle"));
        rep.observe(ratio_f64(b, a));
        if b > a {
            rep.fail(format!("trial {t}: OPT rose from {a} to {b} identifying {x:?}"));
        }
    }
    rep
}

/// Which generator to draw components from for a mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeKind {
    Tw,
    Chordal,
    SplitCograph,
    Unified,
}

impl ModeKind {
    pub const ALL: [ModeKind; 4] = [ModeKind::Tw, ModeKind::Chordal, ModeKind::SplitCograph, ModeKind::Unified];
}

/// Random instance of at most `max_n` vertices whose components match the
/// mode, with `k` drawn from `k_range`.
pub fn random_instance(
    rng: &mut Rng64,
    kind: ModeKind,
    eps: Epsilon,
    max_n: usize,
    k_range: std::ops::RangeInclusive<usize>,
) -> ModulatorInstance {
    loop {
        let k = rng.gen_range(k_range.clone());
        let budget = max_n.saturating_sub(k).max(1);
        let count = if k == 0 { 1 } else { rng.gen_range(1..=3.min(budget)) };
        let eta = rng.gen_range(1..=3);
        let mode = match kind {
            ModeKind::Tw => Mode::Tw(eta),
            ModeKind::Chordal => Mode::Chordal,
            ModeKind::SplitCograph => Mode::SplitCograph,
            ModeKind::Unified => Mode::Unified(eta),
        };
        let mut left = budget;
        let mut components = Vec::new();
        for i in 0..count {
            let most = left - (count - 1 - i);
            let size = rng.gen_range(1..=most.min(9));
            left -= size;
            let class = match kind {
                ModeKind::Tw => *[GenClass::Tree, GenClass::PartialKTree(eta)].choose(rng).unwrap(),
                ModeKind::Chordal => *[GenClass::Chordal, GenClass::DenseChordal].choose(rng).unwrap(),
                ModeKind::SplitCograph => *[GenClass::Split, GenClass::Cograph].choose(rng).unwrap(),
                ModeKind::Unified => *[
                    GenClass::Tree,
                    GenClass::Chordal,
                    GenClass::Split,
                    GenClass::Cograph,
                    GenClass::PartialKTree(eta),
                ]
                .choose(rng)
                .unwrap(),
            };
            components.push(ComponentSpec { class, size });
        }
        let spec = GenSpec { components, k, density: rng.gen_range(0.1..0.5), epsilon: eps, mode, seed: 0 };
        if let Ok(inst) = gen_with(rng, &spec) {
            return inst;
        }
    }
}

fn is_small_branch(inst: &ModulatorInstance) -> Result<bool> {
    let stage = prepare(inst)?;
    let l = savage_2approx(&stage.graph)?;
    Ok(inst.epsilon.small_modulator(inst.k, l.cover.len()))
}

/// Whenever the small branch fires, the lifted cover is within `(1+ε)·OPT`;
/// the direct solve on the original graph is also within `OPT + 2|S|`.
pub fn check_small_branch(trials: usize, seed: u64) -> PropertyReport {
    let mut rep = PropertyReport::new("4", "small branch within (1+ε)·OPT and OPT+2|S|");
    let mut rng = rng(seed);
    let mut attempts = 0;
    while rep.trials < trials && attempts < trials * 50 {
        attempts += 1;
        let eps = eps_at(rep.trials);
        let kind = ModeKind::ALL[rng.gen_range(0..4)];
        let inst = random_instance(&mut rng, kind, eps, 14, 0..=2);
        if !is_small_branch(&inst).unwrap_or(false) {
            continue;
        }
        rep.trials += 1;
        let t = rep.trials;
        let o = opt(&inst.graph).expect("oracle");
        let run = || -> Result<(usize, usize)> {
            let k = kernelize(&inst)?;
            if !k.is_trivial() {
                return Err(crate::Error::Assertion("small branch expected".into()));
            }
            let q = VertexSet::from([VertexId(1)]);
            let cert = lift(&inst, &k, &q, Ratio::from_integer(1))?;
            let labels = inst.labels()?;
            let direct = small_modulator_solve(&inst.graph, &inst.modulator, eps, &labels)?;
            if !inst.graph.is_connected_vertex_cover(&direct.result.cover) || !cert.checks.iter().all(|c| c.passed) {
                return Err(crate::Error::Assertion("invalid cover".into()));
            }
            Ok((cert.size, direct.result.cover.len()))
        };
        match run() {
            Ok((lifted, direct)) => {
                rep.observe(ratio_f64(lifted, o) / eps.one_plus().to_f64_lossy());
                let b = eps.one_plus();
                if !within(lifted, o, b) || !within(direct, o, b) || direct > o + 2 * inst.k {
                    rep.fail(format!("trial {t}: lifted {lifted}, direct {direct}, OPT {o}, k {}, ε {eps}", inst.k));
                }
            }
            Err(e) => rep.fail(format!("trial {t}: {e}")),
        }
    }
    if rep.trials < trials {
        rep.fail(format!("only {} small-branch instances in {attempts} attempts", rep.trials));
    }
    rep.bound = Some(1.0);
    rep
}

trait ToF64 {
    fn to_f64_lossy(&self) -> f64;
}

impl ToF64 for Ratio<u64> {
    fn to_f64_lossy(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

/// A large-branch instance: alternately a random instance with a big
/// modulator and a hub instance whose kernel has a non-empty `H`.
fn large_instance(rng: &mut Rng64, i: usize, max_kernel: usize) -> Option<ModulatorInstance> {
    let eps = eps_at(i);
    let inst = if i % 2 == 0 {
        let kind = ModeKind::ALL[rng.gen_range(0..4)];
        random_instance(rng, kind, eps, 14, 3..=6)
    } else {
        let (hubs, eps) = match rng.gen_range(0..3) {
            0 => (1, Epsilon::new(1, 1).unwrap()),
            1 => (1, Epsilon::new(1, 2).unwrap()),
            _ => (2, Epsilon::new(1, 1).unwrap()),
        };
        let kp = eps.k_prime(hubs) as usize;
        let leaves = rng.gen_range(kp + 1..=kp + max_kernel.min(12));
        gen_hub_instance(rng, hubs, leaves, eps, Mode::Tw(1)).ok()?
    };
    (!is_small_branch(&inst).ok()?).then_some(inst)
}

/// Kernels up to this size get every minimal connected vertex cover
/// enumerated.
pub const MAX_ENUMERATION: usize = 18;

#[derive(Default)]
struct LargeOutcome {
    violation: Option<String>,
    had_h: bool,
    enumerated: bool,
}

/// Marking kernel on instances where the large branch fires:
/// `OPT(G') <= (1+ε)·OPT(G)`, every minimal connected vertex cover of `G'`
/// lifts to a connected vertex cover of `G` before any reconnection, and
/// the merge loop runs at most `ε·|H|` times.
pub fn check_large_branch(trials: usize, seed: u64) -> PropertyReport {
    let mut rep = PropertyReport::new("5", "large branch: OPT', minimal-cover lifting, merges");
    let mut rng = rng(seed);
    let mut attempts = 0;
    let (mut enumerated, mut with_h) = (0, 0);
    while rep.trials < trials && attempts < trials * 50 {
        attempts += 1;
        let Some(inst) = large_instance(&mut rng, attempts, MAX_ENUMERATION) else { continue };
        rep.trials += 1;
        let t = rep.trials;
        let run = || -> Result<LargeOutcome> {
            let mut out = LargeOutcome::default();
            let stage = prepare(&inst)?;
            let lk = lpr_kernel(&stage.graph, &inst.modulator, inst.epsilon)?;
            out.had_h = lk.h_size > 0;
            if !inst.epsilon.at_most_eps_times(lk.iterations, lk.h_size) {
                out.violation = Some(format!("{} merges with |H| = {}", lk.iterations, lk.h_size));
                return Ok(out);
            }
            let k = kernelize(&inst)?;
            let (a, b) = (opt(&inst.graph)?, opt(&k.graph)?);
            if !within(b, a, inst.epsilon.one_plus()) {
                out.violation = Some(format!("OPT(G') = {b}, OPT(G) = {a}"));
                return Ok(out);
            }
            if k.graph.n() <= MAX_ENUMERATION {
                out.enumerated = true;
                for q in brute::minimal_connected_vertex_covers(&k.graph) {
                    let d = lift_events(&minimalize(&k.graph, &q)?, &k.transcript.events);
                    if !inst.graph.is_connected_vertex_cover(&d) {
                        out.violation = Some(format!("minimal cover {q:?} lifts to a non-cover {d:?}"));
                        return Ok(out);
                    }
                }
            }
            Ok(out)
        };
        match run() {
            Ok(o) => {
                with_h += o.had_h as usize;
                enumerated += o.enumerated as usize;
                if let Some(why) = o.violation {
                    rep.fail(format!("trial {t}: {why}"));
                }
            }
            Err(e) => rep.fail(format!("trial {t}: {e}")),
        }
    }
    if rep.trials < trials {
        rep.fail(format!("only {} large-branch instances in {attempts} attempts", rep.trials));
    }
    rep.notes.push(format!("{with_h} runs with non-empty H, {enumerated} with exhaustive minimal-cover enumeration"));
    rep
}

/// Clique contraction on chordal instances where at least one clique is
/// contracted. Checks clique sizes and clique-tree width afterwards,
/// `OPT(G) >= OPT(G') + Σ(|C| - 2)`, the per-event growth of a lifted
/// cover against both `η - 1` and `|C| - 1`, and the stage ratio
/// `max{c, (η-1)/(η-2)}` for padded covers.
pub fn check_clique_contraction(trials: usize, seed: u64) -> PropertyReport {
    let mut rep = PropertyReport::new("6", "clique contraction: cliques, width, lifting");
    let mut rng = rng(seed);
    let (mut attempts, mut literal, mut events_seen, mut oversized) = (0, 0, 0, 0);
    while rep.trials < trials && attempts < trials * 50 {
        attempts += 1;
        let eps = eps_at(attempts);
        let inst = random_instance(&mut rng, ModeKind::Chordal, eps, 14, 0..=3);
        let eta = eta_for(eps);
        let Ok((g2, events)) = rr1_contract_cliques(&inst.graph, &inst.modulator, eps) else {
            rep.trials += 1;
            rep.fail(format!("attempt {attempts}: contraction failed"));
            continue;
        };
        if events.is_empty() {
            continue;
        }
        rep.trials += 1;
        let t = rep.trials;
        let mut why: Vec<String> = Vec::new();
        let rest = g2.without(&inst.modulator);
        let biggest = brute::maximal_cliques(&rest).iter().map(|c| c.len()).max().unwrap_or(0);
        if biggest > eta - 1 {
            why.push(format!("clique of size {biggest} survives with η = {eta}"));
        }
        match recognize_chordal(&rest).map(|peo| build_clique_tree(&rest, &peo)) {
            Some(Ok(ct)) if ct.width() <= eta - 2 => {}
            Some(Ok(ct)) => why.push(format!("clique tree width {} above η - 2 = {}", ct.width(), eta - 2)),
            _ => why.push("contracted graph minus S is not chordal".into()),
        }
        if !g2.is_connected() {
            why.push("contraction disconnected the graph".into());
        }
        let (o, o2) = (opt(&inst.graph).expect("oracle"), opt(&g2).expect("oracle"));
        let shrink: usize = events
            .iter()
            .map(|e| match e {
                Event::ContractClique { clique, .. } => clique.len() - 2,
                _ => 0,
            })
            .sum();
        if o < o2 + shrink {
            why.push(format!("OPT(G) = {o} < OPT(G') + Σ(|C|-2) = {}", o2 + shrink));
        }

        // graphs before each event, to check every intermediate cover
        let mut graphs = vec![inst.graph.clone()];
        for e in &events {
            let Event::ContractClique { clique, label, pendant } = e else { continue };
            let g = graphs.last().unwrap().identify_as(clique, *label).and_then(|g| g.add_pendant_as(*label, *pendant));
            graphs.push(g.expect("replay of a fresh contraction"));
        }
        let none = VertexSet::new();
        let mut d = cvc_oracle(&g2, &none, &none).expect("oracle").cover;
        for (i, e) in events.iter().enumerate().rev() {
            let Event::ContractClique { clique, .. } = e else { continue };
            events_seen += 1;
            oversized += (clique.len() > eta) as usize;
            let before = lift_event(&d, e);
            if before.len() > d.len() + eta - 1 {
                literal += 1;
                why.push(format!(
                    "lifted cover grew by {} through a clique of size {} (η - 1 = {})",
                    before.len() - d.len(),
                    clique.len(),
                    eta - 1
                ));
            }
            if before.len() > d.len() + clique.len() - 1 {
                why.push(format!("lifted cover grew by {} through |C| = {}", before.len() - d.len(), clique.len()));
            }
            if !graphs[i].is_connected_vertex_cover(&before) {
                why.push(format!("event {i}: lifted set is not a connected vertex cover"));
            }
            d = before;
        }

        let threshold = Ratio::new(eta as u64 - 1, eta as u64 - 2);
        let q_opt = cvc_oracle(&g2, &none, &none).expect("oracle").cover;
        for (cn, cd) in PADDINGS {
            let c = Ratio::new(cn, cd);
            let q = pad(&g2, &q_opt, floor_times(c, q_opt.len()));
            let d = lift_events(&q, &events);
            let bound = std::cmp::max(c, threshold);
            rep.observe(ratio_f64(d.len(), o) / bound.to_f64_lossy());
            if !inst.graph.is_connected_vertex_cover(&d) || !within(d.len(), o, bound) {
                why.push(format!("c = {c}: lifted {} against OPT {o} and bound {bound}", d.len()));
            }
        }
        if !why.is_empty() {
            rep.fail(format!("trial {t} (η = {eta}): {}", why.join("; ")));
        }
    }
    if rep.trials < trials {
        rep.fail(format!("only {} instances with a contraction in {attempts} attempts", rep.trials));
    }
    rep.bound = Some(1.0);
    rep.notes.push(format!(
        "{events_seen} contraction events, {oversized} with |C| > η, {literal} exceeding the |D'| + η - 1 growth bound"
    ));
    rep
}

/// Kernelize, solve the kernel exactly, pad to `c` times the optimum and
/// lift: the result must be within `c·(1+ε)·OPT(G)`.
pub fn check_end_to_end(kind: ModeKind, trials: usize, seed: u64) -> PropertyReport {
    let mut rep = PropertyReport::new("7", &format!("end-to-end {kind:?} within c·(1+ε)").to_lowercase());
    let mut rng = rng(seed);
    let (mut small, mut large) = (0, 0);
    for t in 0..trials {
        let eps = eps_at(t);
        let inst = random_instance(&mut rng, kind, eps, 14, 0..=5);
        rep.trials += 1;
        let run = || -> Result<Vec<String>> {
            let k = kernelize(&inst)?;
            let o = opt(&inst.graph)?;
            let q_opt = solve_exact(&k.graph)?.cover;
            let mut why = Vec::new();
            let mut worst = 0.0f64;
            for (cn, cd) in PADDINGS {
                let c = Ratio::new(cn, cd);
                let q = pad(&k.graph, &q_opt, floor_times(c, q_opt.len()));
                let cert = lift(&inst, &k, &q, c)?;
                let bound = c * eps.one_plus();
                worst = worst.max(ratio_f64(cert.size, o) / bound.to_f64_lossy());
                if !cert.checks[0].passed || !within(cert.size, o, bound) {
                    why.push(format!("c = {c}: lifted {} with OPT {o}, ε = {eps}", cert.size));
                }
            }
            why.push(format!("{worst}|{}", k.is_trivial()));
            Ok(why)
        };
        match run() {
            Ok(mut why) => {
                let last = why.pop().unwrap();
                let (worst, trivial) = last.split_once('|').unwrap();
                rep.observe(worst.parse().unwrap());
                if trivial == "true" { small += 1 } else { large += 1 }
                if !why.is_empty() {
                    rep.fail(format!("trial {t} ({} , k = {}): {}", inst.mode, inst.k, why.join("; ")));
                }
            }
            Err(e) => rep.fail(format!("trial {t} ({}, k = {}): {e}", inst.mode, inst.k)),
        }
    }
    rep.bound = Some(1.0);
    rep.notes.push(format!("{small} small-branch and {large} large-branch runs"));
    rep
}

/// `|V(G')| <= B(k, ε)` on every large-branch run, over random instances
/// of up to 40 vertices and hub instances of up to 90.
pub fn check_kernel_size(trials: usize, seed: u64) -> PropertyReport {
    let mut rep = PropertyReport::new("8", "kernel size within B(k, ε)");
    let mut rng = rng(seed);
    let mut attempts = 0;
    while rep.trials < trials && attempts < trials * 50 {
        attempts += 1;
        let eps = eps_at(attempts);
        let inst = if attempts % 2 == 0 {
            let kind = ModeKind::ALL[rng.gen_range(0..4)];
            random_instance(&mut rng, kind, eps, 40, 4..=12)
        } else {
            let hubs = rng.gen_range(1..=4);
            let kp = eps.k_prime(hubs) as usize;
            let leaves = rng.gen_range(kp / 2..=kp + 60);
            match gen_hub_instance(&mut rng, hubs, leaves, eps, Mode::Tw(1)) {
                Ok(i) => i,
                Err(_) => continue,
            }
        };
        let k = match kernelize(&inst) {
            Ok(k) => k,
            Err(e) => {
                rep.trials += 1;
                rep.fail(format!("attempt {attempts}: {e}"));
                continue;
            }
        };
        if k.is_trivial() {
            continue;
        }
        rep.trials += 1;
        let b = crate::kernel::size_bound(inst.k, eps);
        rep.observe(k.graph.n() as f64 / b as f64);
        if k.graph.n() as u64 > b || k.bound != b {
            rep.fail(format!("n = {}, k = {}, ε = {eps}: kernel has {} vertices, B = {b}", inst.graph.n(), inst.k, k.graph.n()));
        }
    }
    if rep.trials < trials {
        rep.fail(format!("only {} large-branch runs in {attempts} attempts", rep.trials));
    }
    rep.bound = Some(1.0);
    rep
}

/// Chordal and cograph recognition against induced-subgraph brute force on
/// graphs of at most 9 vertices; clique trees and cotrees must rebuild the
/// graph exactly.
pub fn check_recognition(trials: usize, seed: u64) -> PropertyReport {
    let mut rep = PropertyReport::new("9", "recognition matches brute force");
    let mut rng = rng(seed);
    let (mut chordal, mut cograph) = (0, 0);
    for t in 0..trials {
        let n = rng.gen_range(1..=9);
        let g = match t % 4 {
            0 | 1 => {
                let p = rng.gen_range(0.1..0.9);
                random_graph(&mut rng, n, p)
            }
            2 => {
                let class = *[GenClass::Chordal, GenClass::DenseChordal, GenClass::Split].choose(&mut rng).unwrap();
                local_graph(&planted_component(&mut rng, ComponentSpec { class, size: n }), n)
            }
            _ => local_graph(&planted_component(&mut rng, ComponentSpec { class: GenClass::Cograph, size: n }), n),
        };
        rep.trials += 1;
        let mut why = Vec::new();
        let peo = recognize_chordal(&g);
        if peo.is_some() == brute::has_long_induced_cycle(&g) {
            why.push(format!("chordal recognizer says {}", peo.is_some()));
        }
        if let Some(peo) = peo {
            chordal += 1;
            if !peo.is_valid_for(&g) {
                why.push("invalid elimination order".into());
            }
            match build_clique_tree(&g, &peo) {
                Ok(ct) => {
                    let mut bags = ct.cliques().to_vec();
                    bags.sort();
                    let mut want = brute::maximal_cliques(&g);
                    want.sort();
                    if bags != want || !ct.decomposition.is_valid(&g) || ct.decomposition.edges.len() + 1 != bags.len() {
                        why.push("clique tree differs from the maximal cliques".into());
                    }
                }
                Err(e) => why.push(format!("clique tree: {e}")),
            }
        }
        let cot = recognize_cograph(&g);
        if cot.is_some() == brute::has_induced_p4(&g) {
            why.push(format!("cograph recognizer says {}", cot.is_some()));
        }
        if let Some(cot) = cot {
            cograph += 1;
            if cot.to_graph() != g || !cot.is_canonical() {
                why.push("cotree does not rebuild the graph".into());
            }
        }
        if !why.is_empty() {
            rep.fail(format!("trial {t}: {} on {:?}", why.join("; "), g.edges().collect::<Vec<_>>()));
        }
    }
    rep.notes.push(format!("{chordal} chordal and {cograph} cograph samples"));
    rep
}

/// Kernel size for ε = 1, 1/2, 1/4 on the same instance. Recorded only:
/// a smaller ε is expected but not guaranteed to give a larger kernel.
pub fn record_eps_monotonicity(trials: usize, seed: u64) -> PropertyReport {
    let mut rep = PropertyReport::new("eps", "kernel size nondecreasing in 1/ε (recorded)");
    rep.asserted = false;
    let mut rng = rng(seed);
    for t in 0..trials {
        let hubs = rng.gen_range(1..=3);
        let leaves = rng.gen_range(10..=60);
        let Ok(base) = gen_hub_instance(&mut rng, hubs, leaves, Epsilon::new(1, 1).unwrap(), Mode::Tw(1)) else {
            continue;
        };
        rep.trials += 1;
        let sizes: Vec<usize> = [(1, 1), (1, 2), (1, 4)]
            .iter()
            .map(|&(n, d)| {
                let mut inst = base.clone();
                inst.epsilon = Epsilon::new(n, d).unwrap();
                kernelize(&inst).map(|k| k.graph.n()).unwrap_or(usize::MAX)
            })
            .collect();
        if sizes.windows(2).any(|w| w[0] > w[1]) {
            rep.fail(format!("trial {t}: sizes {sizes:?}"));
        }
    }
    rep
}

/// Property groups accepted by [`run_named`].
pub const GROUPS: [&str; 10] = [
    "class-solvers",
    "savage",
    "identification",
    "small-branch",
    "large-branch",
    "clique-contraction",
    "end-to-end",
    "kernel-size",
    "recognition",
    "eps-monotonicity",
];

fn run_group(group: &str, trials: usize, seed: u64) -> Vec<PropertyReport> {
    let s = |i: u64| seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i);
    match group {
        "class-solvers" => [SolverClass::Split, SolverClass::Chordal, SolverClass::Cograph, SolverClass::Treewidth]
            .into_iter()
            .enumerate()
            .map(|(i, c)| check_class_solver(c, trials, s(10 + i as u64)))
            .collect(),
        "savage" => vec![check_savage(trials, s(20))],
        "identification" => vec![check_identification(trials, s(30))],
        "small-branch" => vec![check_small_branch(trials, s(40))],
        "large-branch" => vec![check_large_branch(trials, s(50))],
        "clique-contraction" => vec![check_clique_contraction(trials, s(60))],
        "end-to-end" => ModeKind::ALL
            .into_iter()
            .enumerate()
            .map(|(i, k)| check_end_to_end(k, trials, s(70 + i as u64)))
            .collect(),
        "kernel-size" => vec![check_kernel_size(trials, s(80))],
        "recognition" => vec![check_recognition(trials, s(90))],
        "eps-monotonicity" => vec![record_eps_monotonicity(trials, s(100))],
        _ => Vec::new(),
    }
}

/// Runs one group, or every group for `"all"`.
pub fn run_named(group: &str, trials: usize, seed: u64) -> Result<SuiteReport> {
    let rows = if group == "all" {
        GROUPS.iter().flat_map(|g| run_group(g, trials, seed)).collect()
    } else if GROUPS.contains(&group) {
        run_group(group, trials, seed)
    } else {
        return Err(crate::Error::Invalid(format!("unknown suite {group:?}; expected all or one of {}", GROUPS.join(", "))));
    };
    Ok(SuiteReport { seed, trials, rows })
}

/// Runs every property with `trials` trials each (per class or per mode
/// where the property is split that way).
pub fn run_suite(trials: usize, seed: u64) -> SuiteReport {
    run_named("all", trials, seed).expect("\"all\" is a known suite")
}
