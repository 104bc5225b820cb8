//! Oddness, resistance, density, cyclic edge-connectivity, the odd-circuit
//! classification of an array, and the inequality audit over a report.

use std::collections::{BTreeSet, VecDeque};

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::colouring::{is_colourable, EdgeColouring};
use crate::error::{Error, Result};
use crate::graph::{EdgeCut, Graph};
use crate::matchings::{
    core_of, defect_from, enumerate_perfect_matchings, PerfectMatching, ThreeArray, MAX_EDGES,
};
use crate::multipole::UnionFind;
use crate::search::{Budget, Outcome};

/// Edge sets of the circuits of the 2-factor `G - m`, ordered by least edge.
pub fn two_factor_circuits(g: &Graph, m: PerfectMatching) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(g.vertex_count());
    for e in 0..g.edge_count() {
        if !m.contains(e) {
            let (a, b) = g.endpoints(e);
            uf.union(a, b);
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for e in 0..g.edge_count() {
        if !m.contains(e) {
            let r = uf.find(g.endpoints(e).0);
            groups.entry(r).or_default().push(e);
        }
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort();
    out
}

fn odd_circuits(g: &Graph, m: PerfectMatching) -> Vec<Vec<usize>> {
    two_factor_circuits(g, m)
        .into_iter()
        .filter(|c| c.len() % 2 == 1)
        .collect()
}

fn ensure_bridgeless(g: &Graph) -> Result<()> {
    match g.bridges().first() {
        Some(&b) => Err(Error::Bridged(b)),
        None => Ok(()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddnessResult {
    pub oddness: usize,
    pub matching_index: usize,
    pub matching: PerfectMatching,
    pub odd_circuits: Vec<Vec<usize>>,
}

pub fn oddness(g: &Graph) -> Result<OddnessResult> {
    ensure_bridgeless(g)?;
    let pms = enumerate_perfect_matchings(g)?;
    oddness_from(g, &pms)
}

/// Minimum number of odd circuits over the 2-factors complementary to the
/// given matchings; the witness is the first minimiser.
pub fn oddness_from(g: &Graph, pms: &[PerfectMatching]) -> Result<OddnessResult> {
    let counts: Vec<usize> = pms.par_iter().map(|&m| odd_circuits(g, m).len()).collect();
    let (idx, &best) = counts
        .iter()
        .enumerate()
        .min_by_key(|&(i, c)| (*c, i))
        .ok_or(Error::NoPerfectMatching)?;
    Ok(OddnessResult {
        oddness: best,
        matching_index: idx,
        matching: pms[idx],
        odd_circuits: odd_circuits(g, pms[idx]),
    })
}

/// Colourability of `G - S` for an edge set `S`: every edge of `S` is cut
/// into two dangling edges whose free ends are unconstrained.
pub fn colourable_without(g: &Graph, edges: &[usize], budget: Budget) -> Result<Outcome<EdgeColouring>> {
    let m = g.multipole().cut_edges(edges)?;
    is_colourable(&m, budget)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResistanceResult {
    pub resistance: usize,
    pub edges: Vec<usize>,
}

/// Smallest `k` such that removing some `k` edges leaves a colourable
/// graph. Subsets are tried by increasing size, lexicographically. A known
/// witness of size `u` (for instance one edge from each odd circuit of an
/// optimal 2-factor) stops the search at `u`.
pub fn resistance(g: &Graph, upper: Option<Vec<usize>>, budget: Budget) -> Result<Outcome<ResistanceResult>> {
    let m = g.edge_count();
    let cap = upper.as_ref().map_or(m, Vec::len);
    for k in 0..=cap {
        if Some(k) == upper.as_ref().map(Vec::len) {
            let mut edges = upper.expect("upper bound");
            edges.sort_unstable();
            return Ok(Outcome::Found(ResistanceResult { resistance: k, edges }));
        }
        let subsets: Vec<Vec<usize>> = (0..m).combinations(k).collect();
        let hit = subsets
            .par_iter()
            .map(|s| colourable_without(g, s, budget).map(|o| o.map(|_| ())))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .zip(subsets)
            .find(|(o, _)| !matches!(o, Outcome::NotFound));
        match hit {
            Some((Outcome::Found(()), edges)) => {
                return Ok(Outcome::Found(ResistanceResult { resistance: k, edges }))
            }
            Some((_, _)) => return Ok(Outcome::Undecided),
            None => {}
        }
    }
    Ok(Outcome::NotFound)
}

/// One least-index edge from each odd circuit: removing them leaves a
/// colourable graph.
pub fn resistance_witness_from_oddness(o: &OddnessResult) -> Vec<usize> {
    let mut v: Vec<usize> = o.odd_circuits.iter().map(|c| c[0]).collect();
    v.sort_unstable();
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityResult {
    pub density: usize,
    pub pair: [usize; 2],
    pub common: Vec<usize>,
}

pub fn density(g: &Graph) -> Result<DensityResult> {
    let pms = enumerate_perfect_matchings(g)?;
    density_from(&pms)
}

/// Minimum of `|Mi ∩ Mj|` over all ordered pairs, equal pairs included.
/// An equal pair only wins when there is a single perfect matching.
pub fn density_from(pms: &[PerfectMatching]) -> Result<DensityResult> {
    if pms.is_empty() {
        return Err(Error::NoPerfectMatching);
    }
    let (d, i, j) = (0..pms.len())
        .into_par_iter()
        .map(|i| {
            (0..pms.len())
                .map(|j| (pms[i].intersection(pms[j]).len(), i, j))
                .min()
                .expect("nonempty")
        })
        .min()
        .expect("nonempty");
    Ok(DensityResult {
        density: d,
        pair: [i, j],
        common: pms[i].intersection(pms[j]).to_vec(),
    })
}

/// Edges of one shortest circuit, or `None` for forests.
pub fn shortest_cycle(g: &Graph) -> Option<Vec<usize>> {
    if let Some(e) = (0..g.edge_count()).find(|&e| {
        let (a, b) = g.endpoints(e);
        a == b
    }) {
        return Some(vec![e]);
    }
    let n = g.vertex_count();
    let mut best: Option<Vec<usize>> = None;
    for root in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            if best.as_ref().is_some_and(|b| 2 * dist[x] >= b.len()) {
                break;
            }
            for inc in g.incidences(x) {
                if inc.edge == parent[x] {
                    continue;
                }
                let y = inc.neighbour;
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = inc.edge;
                    queue.push_back(y);
                } else {
                    let len = dist[x] + dist[y] + 1;
                    if best.as_ref().is_none_or(|b| len < b.len()) {
                        let mut edges = vec![inc.edge];
                        for mut v in [x, y] {
                            while v != root {
                                let e = parent[v];
                                edges.push(e);
                                let (a, b) = g.endpoints(e);
                                v = if a == v { b } else { a };
                            }
                        }
                        edges.sort_unstable();
                        edges.dedup();
                        if edges.len() == len {
                            best = Some(edges);
                        }
                    }
                }
            }
        }
    }
    best
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicConnectivity {
    pub k: usize,
    pub holds: bool,
    pub exact: bool,
    pub witness: Option<EdgeCut>,
}

fn exceptional(g: &Graph) -> Option<&'static str> {
    let n = g.vertex_count();
    if n == 2 && !g.has_loop() {
        Some("theta graph")
    } else if n == 4 && g.is_simple() {
        Some("K4")
    } else if n == 6 && g.is_simple() && g.is_bipartite() {
        Some("K3,3")
    } else {
        None
    }
}

/// Connected vertex sets of exactly `size` vertices containing `root`
/// (or any vertex when `root` is `None`), each as a sorted list.
fn connected_sets(g: &Graph, size: usize, root: Option<usize>) -> Vec<Vec<usize>> {
    fn grow(g: &Graph, set: &mut Vec<usize>, size: usize, out: &mut BTreeSet<Vec<usize>>) {
        if set.len() == size {
            let mut s = set.clone();
            s.sort_unstable();
            out.insert(s);
            return;
        }
        let frontier: BTreeSet<usize> = set
            .iter()
            .flat_map(|&v| g.incidences(v).iter().map(|x| x.neighbour))
            .filter(|w| !set.contains(w))
            .collect();
        for w in frontier {
            set.push(w);
            let mut key = set.clone();
            key.sort_unstable();
            // prune sets already expanded through another order
            if set.len() < size || !out.contains(&key) {
                grow(g, set, size, out);
            }
            set.pop();
        }
    }
    let mut out = BTreeSet::new();
    let roots: Vec<usize> = match root {
        Some(r) => vec![r],
        None => (0..g.vertex_count()).collect(),
    };
    for r in roots {
        let mut set = vec![r];
        grow(g, &mut set, size, &mut out);
    }
    out.into_iter().collect()
}

/// Unit-capacity max-flow between the contracted sets `a` and `b`, stopped
/// once it reaches `cap`. Returns the flow value and, when it is below
/// `cap`, the source side of a minimum cut.
fn bounded_flow(g: &Graph, a: &[usize], b: &[usize], cap: usize) -> (usize, Option<Vec<usize>>) {
    let n = g.vertex_count();
    let mut role = vec![0u8; n];
    for &v in a {
        role[v] = 1;
    }
    for &v in b {
        role[v] = 2;
    }
    // flow[e] = +1 means one unit from the first endpoint to the second
    let mut flow = vec![0i8; g.edge_count()];
    let mut value = 0;
    loop {
        let mut via = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &v in a {
            seen[v] = true;
            queue.push_back(v);
        }
        let mut sink = None;
        'bfs: while let Some(x) = queue.pop_front() {
            for inc in g.incidences(x) {
                let y = inc.neighbour;
                if seen[y] || x == y {
                    continue;
                }
                let (p, _) = g.endpoints(inc.edge);
                let forward = if p == x { 1 } else { -1 };
                if flow[inc.edge] == forward {
                    continue;
                }
                seen[y] = true;
                via[y] = inc.edge;
                if role[y] == 2 {
                    sink = Some(y);
                    break 'bfs;
                }
                queue.push_back(y);
            }
        }
        let Some(mut y) = sink else {
            let side: Vec<usize> = (0..n).filter(|&v| seen[v]).collect();
            return (value, Some(side));
        };
        while role[y] != 1 {
            let e = via[y];
            let (p, q) = g.endpoints(e);
            let x = if q == y { p } else { q };
            flow[e] += if p == x { 1 } else { -1 };
            y = x;
        }
        value += 1;
        if value >= cap {
            return (value, None);
        }
    }
}

/// Decides whether every cycle-separating edge cut has at least `k` edges.
///
/// A smallest violating cut can be taken with both sides connected, and a
/// connected side `X` with `|∂X| = c` contains a circuit iff `|X| >= c`.
/// With `s = k - 1`, sides on fewer than `s` vertices are enumerated
/// directly. Otherwise the side of vertex 0 contains a connected `s`-set `A`
/// through vertex 0 and the other side contains some connected `s`-set `B`;
/// a max-flow between `A` and `B` below `k` exposes a violating cut, and
/// every such flow cut is cycle-separating by the same counting.
pub fn cyclic_connectivity_at_least(g: &Graph, k: usize) -> Result<CyclicConnectivity> {
    if let Some(name) = exceptional(g) {
        return Err(Error::ExceptionalGraph(name.into()));
    }
    if !g.is_connected() {
        return Err(Error::InvalidMultipole("graph is disconnected".into()));
    }
    let ok = |witness: Option<EdgeCut>| CyclicConnectivity {
        k,
        holds: witness.is_none(),
        exact: true,
        witness,
    };
    if k <= 1 {
        return Ok(ok(None));
    }
    let s = k - 1;
    for size in 1..s {
        let found = connected_sets(g, size, None).into_iter().find_map(|x| {
            let cut = EdgeCut::around(g, &x);
            (cut.edges.len() < k && cut.is_cycle_separating(g)).then_some(cut)
        });
        if found.is_some() {
            return Ok(ok(found));
        }
    }
    let seeds = connected_sets(g, s, Some(0));
    let others = connected_sets(g, s, None);
    let pairs: Vec<(&Vec<usize>, &Vec<usize>)> = seeds
        .iter()
        .flat_map(|a| {
            others
                .iter()
                .filter(move |b| b.iter().all(|v| a.binary_search(v).is_err()))
                .map(move |b| (a, b))
        })
        .collect();
    let found = pairs.par_iter().find_map_first(|(a, b)| {
        let (value, side) = bounded_flow(g, a, b, k);
        if value < k {
            let cut = EdgeCut::around(g, &side.expect("cut side"));
            debug_assert!(cut.is_cycle_separating(g));
            Some(cut)
        } else {
            None
        }
    });
    Ok(ok(found))
}

/// Exact cyclic edge-connectivity and a smallest cycle-separating cut,
/// searching sizes up to `max_k`. Returns `None` when no cut below `max_k`
/// exists, i.e. the value is at least `max_k`.
pub fn cyclic_connectivity(g: &Graph, max_k: usize) -> Result<Option<(usize, EdgeCut)>> {
    for c in 0..max_k {
        let r = cyclic_connectivity_at_least(g, c + 1)?;
        if let Some(w) = r.witness {
            return Ok(Some((w.edges.len(), w)));
        }
    }
    Ok(None)
}

/// Odd circuits of the 2-factor complementary to member `index` (0-based)
/// of an array, split as in the proof of the defect/oddness bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddCircuitClassification {
    pub index: usize,
    /// Inside the core, every edge uncovered.
    pub c1: Vec<Vec<usize>>,
    /// Inside the core, with a doubly covered edge.
    pub c2: Vec<Vec<usize>>,
    /// Not contained in the core.
    pub c3: Vec<Vec<usize>>,
    /// Vertices incident with a triply covered edge.
    pub special: Vec<usize>,
    pub doubly_covered_in_member: usize,
    pub triply_covered: usize,
}

impl OddCircuitClassification {
    pub fn odd_count(&self) -> usize {
        self.c1.len() + self.c2.len() + self.c3.len()
    }

    /// `|C¹| <= 2|E3|/3`.
    pub fn c1_bound_holds(&self) -> bool {
        3 * self.c1.len() <= 2 * self.triply_covered
    }

    /// `|C³_i| <= |E2 ∩ M_i|`; the proof uses optimality of the array.
    pub fn c3_bound_holds(&self) -> bool {
        self.c3.len() <= self.doubly_covered_in_member
    }
}

pub fn classify_odd_circuits(g: &Graph, a: &ThreeArray, index: usize) -> Result<OddCircuitClassification> {
    let mi = *a
        .members()
        .get(index)
        .ok_or_else(|| Error::Unsupported(format!("array index {index} out of range 0..3")))?;
    let [e0, _, e2, e3] = a.classes();
    let core = core_of(g, a).edges;
    let mut out = OddCircuitClassification {
        index,
        c1: Vec::new(),
        c2: Vec::new(),
        c3: Vec::new(),
        special: Vec::new(),
        doubly_covered_in_member: e2.intersection(mi).len(),
        triply_covered: e3.len(),
    };
    for c in odd_circuits(g, mi) {
        if !c.iter().all(|&e| core.contains(e)) {
            out.c3.push(c);
        } else if c.iter().all(|&e| e0.contains(e)) {
            out.c1.push(c);
        } else {
            out.c2.push(c);
        }
    }
    let mut special: BTreeSet<usize> = BTreeSet::new();
    for e in e3.iter() {
        let (x, y) = g.endpoints(e);
        special.insert(x);
        special.insert(y);
    }
    out.special = special.into_iter().collect();
    Ok(out)
}

/// All three classifications of an array with the counting bounds checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationAudit {
    pub classes: Vec<OddCircuitClassification>,
    pub c1_shared: bool,
    pub c1_bound: bool,
    pub c2_bound: bool,
    /// Checked only for optimal arrays; `None` otherwise.
    pub c3_bounds: Option<bool>,
    /// `3ω <= Σ odd(F_i) <= 4|E3| + 2|E2|`, for optimal arrays.
    pub aggregate: Option<bool>,
}

impl ClassificationAudit {
    pub fn passes(&self) -> bool {
        self.c1_shared
            && self.c1_bound
            && self.c2_bound
            && self.c3_bounds != Some(false)
            && self.aggregate != Some(false)
    }
}

pub fn audit_classification(
    g: &Graph,
    a: &ThreeArray,
    optimal: bool,
    oddness: Option<usize>,
) -> Result<ClassificationAudit> {
    let classes: Vec<OddCircuitClassification> =
        (0..3).map(|i| classify_odd_circuits(g, a, i)).collect::<Result<_>>()?;
    let [_, _, e2, e3] = a.class_sizes();
    let c1_shared = classes.windows(2).all(|w| w[0].c1 == w[1].c1);
    let c1_bound = classes[0].c1_bound_holds();
    let c2_total: usize = classes.iter().map(|c| c.c2.len()).sum();
    let c2_bound = c2_total <= 2 * e3;
    let c3_bounds = optimal.then(|| classes.iter().all(|c| c.c3_bound_holds()));
    let total: usize = classes.iter().map(|c| c.odd_count()).sum();
    let aggregate = optimal.then(|| {
        total <= 4 * e3 + 2 * e2 && oddness.is_none_or(|w| 3 * w <= total)
    });
    Ok(ClassificationAudit {
        classes,
        c1_shared,
        c1_bound,
        c2_bound,
        c3_bounds,
        aggregate,
    })
}

/// A measured quantity: exact when `upper == Some(lower)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Value {
    pub lower: usize,
    pub upper: Option<usize>,
}

impl Value {
    pub fn exact(v: usize) -> Value {
        Value {
            lower: v,
            upper: Some(v),
        }
    }

    pub fn at_least(v: usize) -> Value {
        Value { lower: v, upper: None }
    }

    pub fn is_exact(&self) -> bool {
        self.upper == Some(self.lower)
    }

    pub fn get(&self) -> Option<usize> {
        self.is_exact().then_some(self.lower)
    }
}

impl std::fmt::Display for Value {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.upper {
            Some(u) if u == self.lower => write!(f, "{u}"),
            Some(u) => write!(f, "{}..{u}", self.lower),
            None => write!(f, ">={}", self.lower),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasureOptions {
    pub defect: bool,
    pub oddness: bool,
    pub resistance: bool,
    pub density: bool,
    pub cyclic: bool,
    /// Largest cut size probed when computing cyclic connectivity.
    pub cyclic_limit: usize,
    pub budget: Budget,
}

impl MeasureOptions {
    pub fn all() -> Self {
        MeasureOptions {
            defect: true,
            oddness: true,
            resistance: true,
            density: true,
            cyclic: true,
            cyclic_limit: 6,
            budget: Budget::unlimited(),
        }
    }

    pub fn none() -> Self {
        MeasureOptions {
            defect: false,
            oddness: false,
            resistance: false,
            density: false,
            cyclic: false,
            cyclic_limit: 6,
            budget: Budget::unlimited(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnesses {
    pub defect_array: Option<ThreeArray>,
    pub core_edges: Option<Vec<usize>>,
    pub oddness_matching: Option<PerfectMatching>,
    pub resistance_edges: Option<Vec<usize>>,
    pub density_pair: Option<[PerfectMatching; 2]>,
    pub girth_cycle: Option<Vec<usize>>,
    pub cyclic_cut: Option<EdgeCut>,
}

/// Every invariant of one graph, with exactness recorded per field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasureReport {
    pub vertices: usize,
    pub edges: usize,
    pub bridgeless: bool,
    pub colourable: Option<bool>,
    pub perfect_matchings: Option<usize>,
    pub girth: Option<usize>,
    pub defect: Option<Value>,
    pub oddness: Option<Value>,
    pub resistance: Option<Value>,
    pub density: Option<Value>,
    pub cyclic_connectivity: Option<Value>,
    pub witnesses: Witnesses,
}

impl MeasureReport {
    /// True when some requested field could not be settled exactly.
    pub fn has_undecided(&self) -> bool {
        self.colourable.is_none()
            || [self.defect, self.oddness, self.resistance, self.density]
                .iter()
                .flatten()
                .any(|v| !v.is_exact())
    }
}

/// Computes the requested invariants. Exact values need the perfect
/// matchings in memory; above that size only certified bounds are reported.
pub fn measure(g: &Graph, opts: &MeasureOptions) -> Result<MeasureReport> {
    let bridgeless = g.is_bridgeless();
    let cycle = shortest_cycle(g);
    let mut r = MeasureReport {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        bridgeless,
        colourable: None,
        perfect_matchings: None,
        girth: cycle.as_ref().map(Vec::len),
        defect: None,
        oddness: None,
        resistance: None,
        density: None,
        cyclic_connectivity: None,
        witnesses: Witnesses {
            girth_cycle: cycle,
            ..Witnesses::default()
        },
    };
    r.colourable = match is_colourable(g.multipole(), opts.budget)? {
        Outcome::Found(_) => Some(true),
        Outcome::NotFound => Some(false),
        Outcome::Undecided => None,
    };
    let needs_matchings = opts.defect || opts.oddness || opts.density || opts.resistance;
    if needs_matchings && g.edge_count() <= MAX_EDGES {
        let pms = enumerate_perfect_matchings(g)?;
        r.perfect_matchings = Some(pms.len());
        if !pms.is_empty() {
            if opts.defect {
                let d = defect_from(g, &pms)?;
                r.defect = Some(Value::exact(d.defect));
                r.witnesses.core_edges = Some(core_of(g, &d.witness).edges.to_vec());
                r.witnesses.defect_array = Some(d.witness);
            }
            if opts.density {
                let d = density_from(&pms)?;
                r.density = Some(Value::exact(d.density));
                r.witnesses.density_pair = Some(d.pair.map(|i| pms[i]));
            }
            let odd = if bridgeless && (opts.oddness || opts.resistance) {
                Some(oddness_from(g, &pms)?)
            } else {
                None
            };
            if let (true, Some(o)) = (opts.oddness, &odd) {
                r.oddness = Some(Value::exact(o.oddness));
                r.witnesses.oddness_matching = Some(o.matching);
            }
            if opts.resistance {
                let upper = odd.as_ref().map(resistance_witness_from_oddness);
                r.resistance = Some(match resistance(g, upper, opts.budget)? {
                    Outcome::Found(res) => {
                        let v = Value::exact(res.resistance);
                        r.witnesses.resistance_edges = Some(res.edges);
                        v
                    }
                    _ => Value {
                        lower: 0,
                        upper: odd.as_ref().map(|o| o.oddness),
                    },
                });
            }
        }
    } else if needs_matchings {
        // bounds that follow from colourability alone
        let (d, w, rho, dn) = match r.colourable {
            Some(true) => (Value::exact(0), Value::exact(0), Value::exact(0), Value::exact(0)),
            Some(false) => {
                let girth_half = r.girth.map_or(0, |g| g.div_ceil(2));
                (
                    Value::at_least(3.max(girth_half)),
                    Value::at_least(2),
                    Value::at_least(2),
                    Value::at_least(1),
                )
            }
            None => (Value::at_least(0), Value::at_least(0), Value::at_least(0), Value::at_least(0)),
        };
        r.defect = opts.defect.then_some(d);
        r.oddness = (opts.oddness && bridgeless).then_some(w);
        r.resistance = opts.resistance.then_some(rho);
        r.density = opts.density.then_some(dn);
    }
    if opts.cyclic && g.is_connected() && exceptional(g).is_none() {
        r.cyclic_connectivity = Some(match cyclic_connectivity(g, opts.cyclic_limit)? {
            Some((c, cut)) => {
                r.witnesses.cyclic_cut = Some(cut);
                Value::exact(c)
            }
            None => Value::at_least(opts.cyclic_limit),
        });
    }
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditRow {
    pub name: String,
    pub verdict: Verdict,
    /// `rhs - lhs` when both sides are exact.
    pub slack: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityAudit {
    pub rows: Vec<AuditRow>,
}

impl InequalityAudit {
    pub fn violations(&self) -> usize {
        self.rows.iter().filter(|r| r.verdict == Verdict::Fail).count()
    }

    pub fn inconclusive(&self) -> usize {
        self.rows.iter().filter(|r| r.verdict == Verdict::Inconclusive).count()
    }
}

/// `(lower, upper)` of `scale * v + shift`, with `None` as infinity.
fn affine(v: Option<Value>, scale: i64, shift: i64) -> Option<(i64, Option<i64>)> {
    v.map(|v| {
        (
            scale * v.lower as i64 + shift,
            v.upper.map(|u| scale * u as i64 + shift),
        )
    })
}

fn le(name: &str, lhs: Option<(i64, Option<i64>)>, rhs: Option<(i64, Option<i64>)>) -> AuditRow {
    let (verdict, slack) = match (lhs, rhs) {
        (Some((llo, lhi)), Some((rlo, rhi))) => {
            let slack = match (lhi, rhi) {
                (Some(lh), Some(rh)) if lh == llo && rh == rlo => Some(rlo - llo),
                _ => None,
            };
            if lhi.is_some_and(|lh| lh <= rlo) {
                (Verdict::Pass, slack)
            } else if rhi.is_some_and(|rh| llo > rh) {
                (Verdict::Fail, slack)
            } else {
                (Verdict::Inconclusive, None)
            }
        }
        _ => (Verdict::Inconclusive, None),
    };
    AuditRow {
        name: name.into(),
        verdict,
        slack,
    }
}

/// Checks `ω <= 2dn <= df - 1`, `df >= 3ω/2`, `df >= ⌈girth/2⌉`, `ρ <= ω`
/// and `ρ = 2 ⇔ ω = 2` on an uncolourable graph's report. Bounds that are
/// only known one-sidedly give `inconclusive` unless they already decide.
pub fn audit_inequalities(r: &MeasureReport) -> InequalityAudit {
    let names = [
        "oddness <= 2 density",
        "2 density <= defect - 1",
        "defect >= 3 oddness / 2",
        "defect >= ceil(girth / 2)",
        "resistance <= oddness",
        "resistance = 2 iff oddness = 2",
    ];
    if r.colourable != Some(false) {
        let verdict = if r.colourable == Some(true) {
            Verdict::Skipped
        } else {
            Verdict::Inconclusive
        };
        return InequalityAudit {
            rows: names
                .iter()
                .map(|n| AuditRow {
                    name: (*n).into(),
                    verdict,
                    slack: None,
                })
                .collect(),
        };
    }
    let girth_half = r.girth.map(|g| Value::exact(g.div_ceil(2)));
    let mut rows = vec![
        le(names[0], affine(r.oddness, 1, 0), affine(r.density, 2, 0)),
        le(names[1], affine(r.density, 2, 0), affine(r.defect, 1, -1)),
        {
            // ω is even for bridgeless cubic graphs, so 3ω/2 is an integer
            let mut row = le(names[2], affine(r.oddness, 3, 0), affine(r.defect, 2, 0));
            row.slack = row.slack.map(|s| s / 2);
            row
        },
        le(names[3], affine(girth_half, 1, 0), affine(r.defect, 1, 0)),
        le(names[4], affine(r.resistance, 1, 0), affine(r.oddness, 1, 0)),
    ];
    let iff = match (r.resistance.and_then(|v| v.get()), r.oddness.and_then(|v| v.get())) {
        (Some(rho), Some(w)) => {
            if (rho == 2) == (w == 2) {
                Verdict::Pass
            } else {
                Verdict::Fail
            }
        }
        _ => Verdict::Inconclusive,
    };
    rows.push(AuditRow {
        name: names[5].into(),
        verdict: iff,
        slack: None,
    });
    InequalityAudit { rows }
}
