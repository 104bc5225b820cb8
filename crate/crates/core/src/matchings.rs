//! Perfect matchings, 3-arrays and the colouring defect.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::search::{Budget, Outcome};

/// Largest edge count supported by the bitset representation.
pub const MAX_EDGES: usize = 128;

/// A set of edge indices below [`MAX_EDGES`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct EdgeSet(u128);

impl EdgeSet {
    pub fn from_edges(edges: impl IntoIterator<Item = usize>) -> EdgeSet {
        let mut s = EdgeSet::default();
        for e in edges {
            s.insert(e);
        }
        s
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn insert(&mut self, e: usize) {
        assert!(e < MAX_EDGES, "edge index {e} exceeds bitset width");
        self.0 |= 1 << e;
    }

    pub fn contains(self, e: usize) -> bool {
        e < MAX_EDGES && self.0 >> e & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, o: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 | o.0)
    }

    pub fn intersection(self, o: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 & o.0)
    }

    pub fn difference(self, o: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 & !o.0)
    }

    pub fn complement(self, edge_count: usize) -> EdgeSet {
        let all = if edge_count == 128 { u128::MAX } else { (1u128 << edge_count) - 1 };
        EdgeSet(!self.0 & all)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let e = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(e)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Order of the sorted index lists: the smaller set holds the lowest
    /// element of the symmetric difference. Sets must have equal size.
    pub fn lex_cmp(self, o: EdgeSet) -> std::cmp::Ordering {
        let diff = self.0 ^ o.0;
        if diff == 0 {
            return std::cmp::Ordering::Equal;
        }
        if self.0 >> diff.trailing_zeros() & 1 == 1 {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    }
}

impl Serialize for EdgeSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for EdgeSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        if let Some(&e) = v.iter().find(|&&e| e >= MAX_EDGES) {
            return Err(serde::de::Error::custom(format!("edge index {e} too large")));
        }
        Ok(EdgeSet::from_edges(v))
    }
}

impl fmt::Display for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

pub type PerfectMatching = EdgeSet;

fn check_size(g: &Graph) -> Result<()> {
    if g.edge_count() > MAX_EDGES {
        return Err(Error::TooLarge(format!(
            "{} edges; matching search supports at most {MAX_EDGES}",
            g.edge_count()
        )));
    }
    Ok(())
}

pub fn is_perfect_matching(g: &Graph, s: EdgeSet) -> bool {
    let mut covered = vec![0u8; g.vertex_count()];
    for e in s.iter() {
        if e >= g.edge_count() {
            return false;
        }
        let (a, b) = g.endpoints(e);
        if a == b {
            return false;
        }
        covered[a] += 1;
        covered[b] += 1;
    }
    covered.iter().all(|&c| c == 1)
}

/// All perfect matchings, sorted lexicographically by their edge lists.
pub fn enumerate_perfect_matchings(g: &Graph) -> Result<Vec<PerfectMatching>> {
    enumerate_with(g, EdgeSet::default())
}

fn enumerate_with(g: &Graph, forced: EdgeSet) -> Result<Vec<PerfectMatching>> {
    check_size(g)?;
    let n = g.vertex_count();
    let mut covered = vec![false; n];
    let mut current = EdgeSet::default();
    for e in forced.iter() {
        let (a, b) = g.endpoints(e);
        if a == b || covered[a] || covered[b] {
            return Ok(Vec::new());
        }
        covered[a] = true;
        covered[b] = true;
        current.insert(e);
    }
    let mut out = Vec::new();
    extend(g, &mut covered, &mut current, 0, &mut out);
    out.sort_by(|a, b| a.lex_cmp(*b));
    Ok(out)
}

fn extend(g: &Graph, covered: &mut [bool], current: &mut EdgeSet, from: usize, out: &mut Vec<EdgeSet>) {
    let Some(v) = (from..covered.len()).find(|&v| !covered[v]) else {
        out.push(*current);
        return;
    };
    let mut tried = EdgeSet::default();
    for inc in g.incidences(v) {
        let w = inc.neighbour;
        if w == v || covered[w] || tried.contains(inc.edge) {
            continue;
        }
        tried.insert(inc.edge);
        covered[v] = true;
        covered[w] = true;
        current.insert(inc.edge);
        // an uncovered neighbour of w left without options kills the branch
        let dead = g.incidences(w).iter().any(|x| {
            let y = x.neighbour;
            !covered[y] && g.incidences(y).iter().all(|z| covered[z.neighbour] || z.neighbour == y)
        });
        if !dead {
            extend(g, covered, current, v + 1, out);
        }
        current.0 &= !(1u128 << inc.edge);
        covered[v] = false;
        covered[w] = false;
    }
}

/// The first perfect matching, in canonical order, that contains `e`.
pub fn matching_through_edge(g: &Graph, e: usize) -> Result<PerfectMatching> {
    if e >= g.edge_count() {
        return Err(Error::NoSuchEdge(e));
    }
    enumerate_with(g, EdgeSet::from_edges([e]))?
        .into_iter()
        .next()
        .ok_or(Error::NoMatchingThroughEdge(e))
}

/// A multiset of three perfect matchings, stored sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ThreeArray {
    edge_count: usize,
    members: [PerfectMatching; 3],
}

impl ThreeArray {
    pub fn new(g: &Graph, members: [PerfectMatching; 3]) -> Result<ThreeArray> {
        check_size(g)?;
        for (i, m) in members.iter().enumerate() {
            if !is_perfect_matching(g, *m) {
                return Err(Error::IllFormedColouring(format!(
                    "array member {} is not a perfect matching",
                    i + 1
                )));
            }
        }
        let mut members = members;
        members.sort_by(|a, b| a.lex_cmp(*b));
        Ok(ThreeArray {
            edge_count: g.edge_count(),
            members,
        })
    }

    pub fn members(&self) -> &[PerfectMatching; 3] {
        &self.members
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Edges covered exactly 0, 1, 2 and 3 times.
    pub fn classes(&self) -> [EdgeSet; 4] {
        let [a, b, c] = self.members;
        let e3 = a.intersection(b).intersection(c);
        let any2 = a.intersection(b).union(a.intersection(c)).union(b.intersection(c));
        let all = a.union(b).union(c);
        [
            all.complement(self.edge_count),
            all.difference(any2),
            any2.difference(e3),
            e3,
        ]
    }

    pub fn class_sizes(&self) -> [usize; 4] {
        self.classes().map(EdgeSet::len)
    }

    pub fn uncovered(&self) -> EdgeSet {
        self.classes()[0]
    }

    /// Number of members containing `e`.
    pub fn coverage(&self, e: usize) -> usize {
        self.members.iter().filter(|m| m.contains(e)).count()
    }

    /// The identity `|E0| = |E2| + 2|E3|`.
    pub fn bookkeeping_holds(&self) -> bool {
        let [e0, _, e2, e3] = self.class_sizes();
        e0 == e2 + 2 * e3
    }
}

/// Optimal 3-array and its uncovered edge count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectResult {
    pub defect: usize,
    pub witness: ThreeArray,
    pub witness_indices: [usize; 3],
    pub matching_count: usize,
}

/// Colouring defect with the lexicographically least optimal triple of
/// perfect matching indices `i <= j <= k`.
pub fn defect(g: &Graph) -> Result<DefectResult> {
    let pms = enumerate_perfect_matchings(g)?;
    defect_from(g, &pms)
}

/// Same as [`defect`] with the matchings supplied in canonical order.
pub fn defect_from(g: &Graph, pms: &[PerfectMatching]) -> Result<DefectResult> {
    if pms.is_empty() {
        return Err(Error::NoPerfectMatching);
    }
    let m = g.edge_count();
    let half = g.vertex_count() / 2;
    let best = AtomicUsize::new(usize::MAX);
    let per_i: Vec<Option<(usize, [usize; 3])>> = (0..pms.len())
        .into_par_iter()
        .map(|i| {
            let mut local: Option<(usize, [usize; 3])> = None;
            for j in i..pms.len() {
                let u = pms[i].union(pms[j]);
                let base = m - u.len();
                // the third matching adds at most |V|/2 new edges
                if base.saturating_sub(half) > best.load(Ordering::Relaxed) {
                    continue;
                }
                for (k, pk) in pms.iter().enumerate().skip(j) {
                    let d = base - pk.difference(u).len();
                    if local.is_none_or(|(b, _)| d < b) {
                        local = Some((d, [i, j, k]));
                        best.fetch_min(d, Ordering::Relaxed);
                        if d == 0 {
                            return local;
                        }
                    }
                }
            }
            local
        })
        .collect();
    let (d, idx) = per_i
        .into_iter()
        .flatten()
        .min()
        .expect("at least one matching");
    Ok(DefectResult {
        defect: d,
        witness: ThreeArray::new(g, idx.map(|i| pms[i]))?,
        witness_indices: idx,
        matching_count: pms.len(),
    })
}

/// Defect by plain enumeration of every triple of perfect matchings, with
/// no pruning. Used to cross-check [`defect`].
pub fn defect_exhaustive(g: &Graph) -> Result<usize> {
    let pms = enumerate_perfect_matchings(g)?;
    if pms.is_empty() {
        return Err(Error::NoPerfectMatching);
    }
    let m = g.edge_count();
    let mut best = m;
    for i in 0..pms.len() {
        for j in i..pms.len() {
            for k in j..pms.len() {
                let covered = pms[i].union(pms[j]).union(pms[k]).len();
                best = best.min(m - covered);
            }
        }
    }
    Ok(best)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComponentKind {
    EvenCircuit,
    OddCircuit,
    Subdivision,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreComponent {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub kind: ComponentKind,
}

/// The subgraph spanned by the edges that are not simply covered.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Core {
    pub edges: EdgeSet,
    pub components: Vec<CoreComponent>,
    pub cyclic: bool,
    /// Vertices whose core incidences break the 2-valent/3-valent pattern.
    pub pattern_violations: Vec<usize>,
}

impl Core {
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

pub fn core_of(g: &Graph, a: &ThreeArray) -> Core {
    let [e0, _, e2, e3] = a.classes();
    let edges = e0.union(e2).union(e3);
    let mask: Vec<bool> = (0..g.edge_count()).map(|e| edges.contains(e)).collect();
    let mut components = Vec::new();
    let mut pattern_violations = Vec::new();
    for vertices in g.edge_subgraph_components(&mask) {
        let comp_edges: Vec<usize> = edges
            .iter()
            .filter(|&e| vertices.binary_search(&g.endpoints(e).0).is_ok())
            .collect();
        let mut cubic = false;
        for &v in &vertices {
            let cov: Vec<usize> = g
                .incidences(v)
                .iter()
                .filter(|x| edges.contains(x.edge))
                .map(|x| a.coverage(x.edge))
                .collect();
            let mut sorted = cov.clone();
            sorted.sort_unstable();
            match sorted.as_slice() {
                [0, 2] => {}
                [0, 0, 3] => cubic = true,
                _ => pattern_violations.push(v),
            }
        }
        let kind = if cubic {
            ComponentKind::Subdivision
        } else if comp_edges.len() % 2 == 0 {
            ComponentKind::EvenCircuit
        } else {
            ComponentKind::OddCircuit
        };
        components.push(CoreComponent {
            vertices,
            edges: comp_edges,
            kind,
        });
    }
    Core {
        edges,
        components,
        cyclic: e3.is_empty(),
        pattern_violations,
    }
}

/// For every edge, the set of array members containing it, as a bitmask
/// with bit `i` standing for member `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiLabel {
    pub labels: Vec<u8>,
}

impl PhiLabel {
    /// The label of `e` written as its sorted member list, `∅` when empty.
    pub fn label(&self, e: usize) -> String {
        let l = self.labels[e];
        if l == 0 {
            return "∅".into();
        }
        (0..3).filter(|i| l >> i & 1 == 1).map(|i| char::from(b'1' + i)).collect()
    }

    /// Whether the labels form a proper colouring by colour sets, which
    /// happens exactly when no edge lies in all three members.
    pub fn is_proper(&self) -> bool {
        self.labels.iter().all(|&l| l != 0b111)
    }

    /// Each member number appears exactly once around every vertex.
    pub fn locally_consistent(&self, g: &Graph) -> bool {
        (0..g.vertex_count()).all(|v| {
            let mut seen = [0; 3];
            for x in g.incidences(v) {
                for (i, s) in seen.iter_mut().enumerate() {
                    if self.labels[x.edge] >> i & 1 == 1 {
                        *s += 1;
                    }
                }
            }
            seen == [1, 1, 1]
        })
    }
}

pub fn phi_of(a: &ThreeArray) -> PhiLabel {
    let labels = (0..a.edge_count)
        .map(|e| {
            a.members
                .iter()
                .enumerate()
                .filter(|(_, m)| m.contains(e))
                .fold(0u8, |l, (i, _)| l | 1 << i)
        })
        .collect();
    PhiLabel { labels }
}

/// First triple `i <= j <= k` in canonical order whose members have empty
/// common intersection. The budget counts examined triples.
pub fn fan_raspaud_array(g: &Graph, budget: Budget) -> Result<Outcome<ThreeArray>> {
    let pms = enumerate_perfect_matchings(g)?;
    let mut examined = 0u64;
    for i in 0..pms.len() {
        for j in i..pms.len() {
            let ij = pms[i].intersection(pms[j]);
            for k in j..pms.len() {
                examined += 1;
                if budget.max_nodes.is_some_and(|l| examined > l) {
                    return Ok(Outcome::Undecided);
                }
                if ij.intersection(pms[k]).is_empty() {
                    return Ok(Outcome::Found(ThreeArray::new(g, [pms[i], pms[j], pms[k]])?));
                }
            }
        }
    }
    Ok(Outcome::NotFound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    fn brute_matchings(g: &Graph) -> Vec<EdgeSet> {
        let m = g.edge_count();
        let half = g.vertex_count() / 2;
        let mut out = Vec::new();
        // all subsets of size |V|/2, by recursion over edge indices
        fn rec(g: &Graph, e: usize, left: usize, cur: EdgeSet, out: &mut Vec<EdgeSet>, m: usize) {
            if left == 0 {
                if is_perfect_matching(g, cur) {
                    out.push(cur);
                }
                return;
            }
            if e == m || m - e < left {
                return;
            }
            let mut with = cur;
            with.insert(e);
            rec(g, e + 1, left - 1, with, out, m);
            rec(g, e + 1, left, cur, out, m);
        }
        rec(g, 0, half, EdgeSet::default(), &mut out, m);
        out
    }

    #[test]
    fn matching_counts() {
        let p = enumerate_perfect_matchings(&named::petersen()).unwrap();
        assert_eq!(p.len(), 6);
        for e in 0..15 {
            assert_eq!(p.iter().filter(|m| m.contains(e)).count(), 2);
        }
        assert_eq!(enumerate_perfect_matchings(&named::k4()).unwrap().len(), 3);
        assert_eq!(enumerate_perfect_matchings(&named::k33()).unwrap().len(), 6);
        assert_eq!(enumerate_perfect_matchings(&named::theta()).unwrap().len(), 3);
    }

    #[test]
    fn enumeration_matches_subset_oracle() {
        for (name, g) in named::small_cubic_corpus() {
            if g.vertex_count() > 12 {
                continue;
            }
            let mut fast = enumerate_perfect_matchings(&g).unwrap();
            let mut slow = brute_matchings(&g);
            fast.sort_by_key(|s| s.bits());
            slow.sort_by_key(|s| s.bits());
            assert_eq!(fast, slow, "{name}");
        }
    }

    #[test]
    fn canonical_order_is_lexicographic() {
        let p = enumerate_perfect_matchings(&named::petersen()).unwrap();
        let lists: Vec<Vec<usize>> = p.iter().map(|m| m.to_vec()).collect();
        let mut sorted = lists.clone();
        sorted.sort();
        assert_eq!(lists, sorted);
    }

    #[test]
    fn petersen_defect_and_core() {
        let g = named::petersen();
        let r = defect(&g).unwrap();
        assert_eq!(r.defect, 3);
        assert_eq!(r.witness.class_sizes(), [3, 9, 3, 0]);
        let core = core_of(&g, &r.witness);
        assert_eq!(core.components.len(), 1);
        assert_eq!(core.components[0].kind, ComponentKind::EvenCircuit);
        assert_eq!(core.components[0].edges.len(), 6);
        assert!(core.cyclic && core.pattern_violations.is_empty());
    }

    #[test]
    fn triple_same_matching() {
        let g = named::petersen();
        let m = enumerate_perfect_matchings(&g).unwrap()[0];
        let a = ThreeArray::new(&g, [m, m, m]).unwrap();
        assert_eq!(a.class_sizes(), [10, 0, 0, 5]);
        assert!(a.bookkeeping_holds());
        let phi = phi_of(&a);
        assert!(phi.labels.iter().all(|&l| l == 0 || l == 0b111));
        assert!(phi.locally_consistent(&g));
        assert!(!core_of(&g, &a).cyclic);
    }

    #[test]
    fn colourable_graphs_have_defect_zero() {
        for g in [named::k4(), named::k33(), named::prism(3), named::heawood()] {
            let r = defect(&g).unwrap();
            assert_eq!(r.defect, 0);
            assert!(core_of(&g, &r.witness).is_empty());
            assert_eq!(
                phi_of(&r.witness).labels.iter().filter(|&&l| l.count_ones() == 1).count(),
                g.edge_count()
            );
        }
    }

    #[test]
    fn through_edge() {
        let g = named::bridged_16();
        let bridge = g.bridges()[0];
        let all = enumerate_perfect_matchings(&g).unwrap();
        assert!(!all.is_empty());
        assert!(all.iter().all(|m| m.contains(bridge)));
        assert!(matching_through_edge(&g, bridge).unwrap().contains(bridge));
        let p = named::petersen();
        for e in 0..15 {
            assert!(matching_through_edge(&p, e).unwrap().contains(e));
        }
    }

    #[test]
    fn fan_raspaud_on_petersen() {
        let a = fan_raspaud_array(&named::petersen(), Budget::unlimited())
            .unwrap()
            .found()
            .unwrap();
        assert!(a.classes()[3].is_empty());
    }
}
