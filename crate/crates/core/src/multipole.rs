//! Cubic multipoles: graphs whose edges may have free ends (semiedges),
//! with free ends grouped into ordered connectors.
//!
//! Ordinary graphs are 0-poles. Loops, parallel edges, dangling edges (one
//! free end) and isolated edges (two free ends) are all representable.
//!
//! Edge indices are canonical: ends are stored in increasing order (a free
//! end sorts after every vertex) and edges are sorted by
//! `(first end, second end, insertion rank)`.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum End {
    Vertex(usize),
    Free,
}

impl End {
    pub fn vertex(self) -> Option<usize> {
        match self {
            End::Vertex(v) => Some(v),
            End::Free => None,
        }
    }

    pub fn is_free(self) -> bool {
        matches!(self, End::Free)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub ends: [End; 2],
}

impl Edge {
    pub fn new(a: End, b: End) -> Self {
        Edge { ends: [a, b] }
    }

    pub fn between(u: usize, v: usize) -> Self {
        Edge::new(End::Vertex(u), End::Vertex(v))
    }

    pub fn dangling(v: usize) -> Self {
        Edge::new(End::Vertex(v), End::Free)
    }

    pub fn isolated() -> Self {
        Edge::new(End::Free, End::Free)
    }

    pub fn is_loop(&self) -> bool {
        matches!(self.ends, [End::Vertex(a), End::Vertex(b)] if a == b)
    }

    pub fn is_isolated(&self) -> bool {
        self.ends[0].is_free() && self.ends[1].is_free()
    }

    pub fn is_dangling(&self) -> bool {
        self.ends[0].is_free() != self.ends[1].is_free()
    }

    /// Both endpoints, when the edge has no free end.
    pub fn endpoints(&self) -> Option<(usize, usize)> {
        match self.ends {
            [End::Vertex(a), End::Vertex(b)] => Some((a, b)),
            _ => None,
        }
    }
}

/// One end of one edge. Used both for free ends (connector entries) and for
/// vertex incidences.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfEdge {
    pub edge: usize,
    pub side: usize,
}

impl HalfEdge {
    pub fn new(edge: usize, side: usize) -> Self {
        HalfEdge { edge, side }
    }

    pub fn opposite(self) -> Self {
        HalfEdge::new(self.edge, 1 - self.side)
    }
}

impl fmt::Display for HalfEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.edge, self.side)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Multipole {
    vertex_count: usize,
    edges: Vec<Edge>,
    connectors: Vec<Vec<HalfEdge>>,
}

/// One problem found by [`Multipole::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Issue {
    /// A vertex is not incident with exactly three edge-ends.
    Degree { vertex: usize, degree: usize },
    /// An edge refers to a vertex id outside the vertex range.
    EndpointOutOfRange { edge: usize, vertex: usize },
    /// A connector entry names a missing edge or an end attached to a vertex.
    DanglingConnectorReference {
        connector: usize,
        position: usize,
        end: HalfEdge,
    },
    /// A free end is listed more than once across all connectors.
    DuplicateFreeEnd { end: HalfEdge },
}

impl Issue {
    pub fn is_structural(&self) -> bool {
        !matches!(self, Issue::Degree { .. })
    }
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Issue::Degree { vertex, degree } => {
                write!(f, "vertex {vertex} has {degree} edge-ends, expected 3")
            }
            Issue::EndpointOutOfRange { edge, vertex } => {
                write!(f, "edge {edge} refers to missing vertex {vertex}")
            }
            Issue::DanglingConnectorReference {
                connector,
                position,
                end,
            } => write!(
                f,
                "connector {connector} position {position} refers to {end}, which is not a free end"
            ),
            Issue::DuplicateFreeEnd { end } => {
                write!(f, "free end {end} belongs to more than one connector slot")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostics {
    pub vertices: usize,
    pub edges: usize,
    pub free_ends: usize,
    pub connector_sizes: Vec<usize>,
    pub issues: Vec<Issue>,
}

impl Diagnostics {
    /// Well-formed and cubic.
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }

    /// Well-formed, ignoring vertex degrees.
    pub fn is_structurally_sound(&self) -> bool {
        self.issues.iter().all(|i| !i.is_structural())
    }

    pub fn is_cubic(&self) -> bool {
        !self.issues.iter().any(|i| matches!(i, Issue::Degree { .. }))
    }
}

impl Multipole {
    /// Stores the parts as given, without checks or canonical reordering.
    /// Use [`Multipole::validate`] to inspect the result.
    pub fn from_parts(vertex_count: usize, edges: Vec<Edge>, connectors: Vec<Vec<HalfEdge>>) -> Self {
        Multipole {
            vertex_count,
            edges,
            connectors,
        }
    }

    /// Checks structure (not degrees) and returns the canonical form.
    pub fn new(vertex_count: usize, edges: Vec<Edge>, connectors: Vec<Vec<HalfEdge>>) -> Result<Self> {
        let m = Multipole::from_parts(vertex_count, edges, connectors);
        let diag = m.validate();
        if let Some(issue) = diag.issues.iter().find(|i| i.is_structural()) {
            return Err(Error::InvalidMultipole(issue.to_string()));
        }
        Ok(m.canonicalize().0)
    }

    /// Multigraph without free ends from an edge list.
    pub fn from_edge_list(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Multipole::new(
            vertex_count,
            edges.iter().map(|&(u, v)| Edge::between(u, v)).collect(),
            Vec::new(),
        )
    }

    /// A single vertex with three dangling edges, each in its own connector
    /// when `split` is set, otherwise all in one connector.
    pub fn claw(split: bool) -> Self {
        let edges = vec![Edge::dangling(0); 3];
        let ends: Vec<HalfEdge> = (0..3).map(|e| HalfEdge::new(e, 1)).collect();
        let connectors = if split {
            ends.into_iter().map(|h| vec![h]).collect()
        } else {
            vec![ends]
        };
        Multipole::from_parts(1, edges, connectors)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Result<&Edge> {
        self.edges.get(e).ok_or(Error::NoSuchEdge(e))
    }

    pub fn connectors(&self) -> &[Vec<HalfEdge>] {
        &self.connectors
    }

    pub fn connector(&self, c: usize) -> Result<&[HalfEdge]> {
        self.connectors
            .get(c)
            .map(Vec::as_slice)
            .ok_or(Error::NoSuchConnector(c))
    }

    pub fn connector_sizes(&self) -> Vec<usize> {
        self.connectors.iter().map(Vec::len).collect()
    }

    /// All connector entries, connector by connector.
    pub fn connector_ends(&self) -> Vec<HalfEdge> {
        self.connectors.iter().flatten().copied().collect()
    }

    /// Every free end, in edge order.
    pub fn free_ends(&self) -> Vec<HalfEdge> {
        let mut out = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            for side in 0..2 {
                if e.ends[side].is_free() {
                    out.push(HalfEdge::new(i, side));
                }
            }
        }
        out
    }

    pub fn free_end_count(&self) -> usize {
        self.edges
            .iter()
            .map(|e| e.ends.iter().filter(|x| x.is_free()).count())
            .sum()
    }

    pub fn is_graph(&self) -> bool {
        self.free_end_count() == 0
    }

    /// Incident edge-ends of every vertex, sorted by `(edge, side)`. A loop
    /// contributes two entries.
    pub fn incidence(&self) -> Vec<Vec<HalfEdge>> {
        let mut inc = vec![Vec::new(); self.vertex_count];
        for (i, e) in self.edges.iter().enumerate() {
            for side in 0..2 {
                if let End::Vertex(v) = e.ends[side] {
                    if v < self.vertex_count {
                        inc[v].push(HalfEdge::new(i, side));
                    }
                }
            }
        }
        inc
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .flat_map(|e| e.ends.iter())
            .filter(|&&x| x == End::Vertex(v))
            .count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.incidence().iter().map(Vec::len).collect()
    }

    pub fn validate(&self) -> Diagnostics {
        let mut issues = Vec::new();
        let mut degree = vec![0usize; self.vertex_count];
        for (i, e) in self.edges.iter().enumerate() {
            for end in e.ends {
                if let End::Vertex(v) = end {
                    if v < self.vertex_count {
                        degree[v] += 1;
                    } else {
                        issues.push(Issue::EndpointOutOfRange { edge: i, vertex: v });
                    }
                }
            }
        }
        for (v, &d) in degree.iter().enumerate() {
            if d != 3 {
                issues.push(Issue::Degree { vertex: v, degree: d });
            }
        }
        let mut seen = HashSet::new();
        for (c, conn) in self.connectors.iter().enumerate() {
            for (p, &h) in conn.iter().enumerate() {
                let free = h.side < 2
                    && self
                        .edges
                        .get(h.edge)
                        .is_some_and(|e| e.ends[h.side].is_free());
                if !free {
                    issues.push(Issue::DanglingConnectorReference {
                        connector: c,
                        position: p,
                        end: h,
                    });
                } else if !seen.insert(h) {
                    issues.push(Issue::DuplicateFreeEnd { end: h });
                }
            }
        }
        Diagnostics {
            vertices: self.vertex_count,
            edges: self.edges.len(),
            free_ends: self.free_end_count(),
            connector_sizes: self.connector_sizes(),
            issues,
        }
    }

    /// Errors unless the multipole is well-formed and every vertex is cubic.
    pub fn ensure_cubic(&self) -> Result<()> {
        match self.validate().issues.first() {
            None => Ok(()),
            Some(i @ Issue::Degree { .. }) => Err(Error::NotCubic(i.to_string())),
            Some(i) => Err(Error::InvalidMultipole(i.to_string())),
        }
    }

    /// Canonical reordering. Returns the new multipole and, for every old
    /// edge index, its new index.
    pub fn canonicalize(mut self) -> (Multipole, Vec<usize>) {
        let m = self.edges.len();
        let mut swapped = vec![false; m];
        for (i, e) in self.edges.iter_mut().enumerate() {
            if e.ends[0] > e.ends[1] {
                e.ends.swap(0, 1);
                swapped[i] = true;
            }
        }
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&i| (self.edges[i].ends[0], self.edges[i].ends[1], i));
        let mut new_index = vec![0; m];
        for (pos, &old) in order.iter().enumerate() {
            new_index[old] = pos;
        }
        let edges = order.iter().map(|&i| self.edges[i]).collect();
        let connectors = self
            .connectors
            .iter()
            .map(|conn| {
                conn.iter()
                    .map(|h| {
                        let side = if swapped.get(h.edge).copied().unwrap_or(false) {
                            1 - h.side
                        } else {
                            h.side
                        };
                        HalfEdge::new(new_index.get(h.edge).copied().unwrap_or(h.edge), side)
                    })
                    .collect()
            })
            .collect();
        (
            Multipole {
                vertex_count: self.vertex_count,
                edges,
                connectors,
            },
            new_index,
        )
    }

    pub fn is_canonical(&self) -> bool {
        self.clone().canonicalize().0 == *self
    }

    /// Deletes `vertices`; each of their incident edge-ends becomes a free
    /// end. One new connector per removed vertex is appended (in the order
    /// given), listing the new free ends by `(edge, side)`. Edges between two
    /// removed vertices become isolated edges. Returns the multipole (in
    /// canonical form) and the old-to-new vertex map.
    pub fn remove_vertices(&self, vertices: &[usize]) -> Result<(Multipole, Vec<Option<usize>>)> {
        self.remove_vertices_mapped(vertices).map(|(m, map, _)| (m, map))
    }

    /// [`Multipole::remove_vertices`] also returning the new index of every
    /// edge (no edge is deleted).
    pub fn remove_vertices_mapped(&self, vertices: &[usize]) -> Result<(Multipole, Vec<Option<usize>>, Vec<usize>)> {
        let mut removed_rank = vec![None; self.vertex_count];
        for (rank, &v) in vertices.iter().enumerate() {
            if v >= self.vertex_count {
                return Err(Error::NoSuchVertex(v));
            }
            if removed_rank[v].is_some() {
                return Err(Error::InvalidMultipole(format!("vertex {v} removed twice")));
            }
            removed_rank[v] = Some(rank);
        }
        let mut map = vec![None; self.vertex_count];
        let mut next = 0;
        for v in 0..self.vertex_count {
            if removed_rank[v].is_none() {
                map[v] = Some(next);
                next += 1;
            }
        }
        let mut new_conns: Vec<Vec<HalfEdge>> = vec![Vec::new(); vertices.len()];
        let mut edges = Vec::with_capacity(self.edges.len());
        for (i, e) in self.edges.iter().enumerate() {
            let mut ends = e.ends;
            for side in 0..2 {
                if let End::Vertex(v) = e.ends[side] {
                    match removed_rank[v] {
                        Some(r) => {
                            ends[side] = End::Free;
                            new_conns[r].push(HalfEdge::new(i, side));
                        }
                        None => ends[side] = End::Vertex(map[v].expect("kept vertex")),
                    }
                }
            }
            edges.push(Edge { ends });
        }
        let mut connectors = self.connectors.clone();
        connectors.extend(new_conns);
        let (m, order) = Multipole::from_parts(next, edges, connectors).canonicalize();
        Ok((m, map, order))
    }

    /// Cuts each listed edge into two dangling edges. Two connectors are
    /// appended: the halves at the first endpoints, then the halves at the
    /// second endpoints, both in the order the edges were listed.
    pub fn cut_edges(&self, edges: &[usize]) -> Result<Multipole> {
        let mut seen = HashSet::new();
        let mut out = self.edges.clone();
        let mut first = Vec::new();
        let mut second = Vec::new();
        for &e in edges {
            let (a, b) = self
                .edge(e)?
                .endpoints()
                .ok_or_else(|| Error::InvalidMultipole(format!("edge {e} has a free end")))?;
            if !seen.insert(e) {
                return Err(Error::InvalidMultipole(format!("edge {e} cut twice")));
            }
            out[e] = Edge::dangling(a);
            first.push(HalfEdge::new(e, 1));
            out.push(Edge::dangling(b));
            second.push(HalfEdge::new(out.len() - 1, 1));
        }
        let mut connectors = self.connectors.clone();
        connectors.push(first);
        connectors.push(second);
        Ok(Multipole::from_parts(self.vertex_count, out, connectors)
            .canonicalize()
            .0)
    }

    /// The sub-multipole induced by `vertices`. Every edge with exactly one
    /// end in the set must be listed in exactly one of `boundary`; each
    /// listed edge becomes a dangling edge and the lists become the
    /// connectors, in order. Vertices keep their relative order.
    pub fn induced(&self, vertices: &[usize], boundary: &[Vec<usize>]) -> Result<Multipole> {
        let mut map = vec![None; self.vertex_count];
        let mut sorted: Vec<usize> = vertices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for (i, &v) in sorted.iter().enumerate() {
            if v >= self.vertex_count {
                return Err(Error::NoSuchVertex(v));
            }
            map[v] = Some(i);
        }
        let inside = |end: End| end.vertex().and_then(|v| map[v]);
        let mut listed = std::collections::HashMap::new();
        for (c, list) in boundary.iter().enumerate() {
            for (p, &e) in list.iter().enumerate() {
                self.edge(e)?;
                if listed.insert(e, (c, p)).is_some() {
                    return Err(Error::InvalidMultipole(format!(
                        "boundary edge {e} listed twice"
                    )));
                }
            }
        }
        let mut edges = Vec::new();
        let mut connectors: Vec<Vec<Option<HalfEdge>>> =
            boundary.iter().map(|l| vec![None; l.len()]).collect();
        for (i, e) in self.edges.iter().enumerate() {
            let a = inside(e.ends[0]);
            let b = inside(e.ends[1]);
            match (a, b) {
                (Some(x), Some(y)) => {
                    if listed.contains_key(&i) {
                        return Err(Error::InvalidMultipole(format!(
                            "boundary edge {i} has both ends inside"
                        )));
                    }
                    edges.push(Edge::between(x, y));
                }
                (Some(x), None) | (None, Some(x)) => {
                    edges.push(Edge::dangling(x));
                    let host_free = e.ends.iter().any(|end| end.is_free());
                    match listed.get(&i) {
                        Some(&(c, p)) => {
                            connectors[c][p] = Some(HalfEdge::new(edges.len() - 1, 1))
                        }
                        None if host_free => {}
                        None => {
                            return Err(Error::InvalidMultipole(format!(
                                "edge {i} leaves the vertex set but is not listed"
                            )))
                        }
                    }
                }
                (None, None) => {
                    if listed.contains_key(&i) {
                        return Err(Error::InvalidMultipole(format!(
                            "boundary edge {i} has no end inside"
                        )));
                    }
                }
            }
        }
        let connectors = connectors
            .into_iter()
            .map(|c| c.into_iter().map(|h| h.expect("filled")).collect())
            .collect();
        Ok(Multipole::from_parts(sorted.len(), edges, connectors)
            .canonicalize()
            .0)
    }

    /// Vertex sets of connected components (via edges with both ends on
    /// vertices), each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.vertex_count);
        for e in &self.edges {
            if let Some((a, b)) = e.endpoints() {
                uf.union(a, b);
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        let mut root_first = vec![usize::MAX; self.vertex_count];
        for v in 0..self.vertex_count {
            let r = uf.find(v);
            if root_first[r] == usize::MAX {
                root_first[r] = v;
            }
            groups.entry(root_first[r]).or_default().push(v);
        }
        groups.into_values().collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Length of a shortest circuit through vertices, ignoring free ends.
    /// Loops have length 1 and parallel pairs length 2.
    pub fn girth(&self) -> Option<usize> {
        crate::graph::girth_of(self.vertex_count, &self.edges)
    }

    /// True iff deleting `vertices` leaves no circuit.
    pub fn is_decycling(&self, vertices: &[usize]) -> bool {
        let removed: HashSet<usize> = vertices.iter().copied().collect();
        let mut uf = UnionFind::new(self.vertex_count);
        for e in &self.edges {
            if let Some((a, b)) = e.endpoints() {
                if removed.contains(&a) || removed.contains(&b) {
                    continue;
                }
                if !uf.union(a, b) {
                    return false;
                }
            }
        }
        true
    }
}

/// Disjoint-set forest with path halving.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> Multipole {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((i + 5, 5 + (i + 2) % 5));
        }
        Multipole::from_edge_list(10, &e).unwrap()
    }

    #[test]
    fn petersen_is_valid() {
        let d = petersen().validate();
        assert!(d.is_valid());
        assert_eq!((d.vertices, d.edges, d.free_ends), (10, 15, 0));
    }

    #[test]
    fn claw_is_valid_three_pole() {
        let d = Multipole::claw(false).validate();
        assert!(d.is_valid());
        assert_eq!(d.free_ends, 3);
        assert_eq!(d.connector_sizes, vec![3]);
    }

    #[test]
    fn degree_two_vertex_reported() {
        let m = Multipole::from_parts(
            1,
            vec![Edge::dangling(0), Edge::dangling(0)],
            vec![vec![HalfEdge::new(0, 1), HalfEdge::new(1, 1)]],
        );
        let d = m.validate();
        assert_eq!(d.issues, vec![Issue::Degree { vertex: 0, degree: 2 }]);
        assert!(d.is_structurally_sound());
    }

    #[test]
    fn bad_connector_references_reported() {
        let m = Multipole::from_parts(
            1,
            vec![Edge::dangling(0); 3],
            vec![
                vec![HalfEdge::new(0, 1), HalfEdge::new(0, 0)],
                vec![HalfEdge::new(0, 1), HalfEdge::new(9, 1)],
            ],
        );
        let d = m.validate();
        assert!(d.issues.contains(&Issue::DanglingConnectorReference {
            connector: 0,
            position: 1,
            end: HalfEdge::new(0, 0)
        }));
        assert!(d.issues.contains(&Issue::DuplicateFreeEnd {
            end: HalfEdge::new(0, 1)
        }));
        assert!(d.issues.contains(&Issue::DanglingConnectorReference {
            connector: 1,
            position: 1,
            end: HalfEdge::new(9, 1)
        }));
        assert!(Multipole::new(1, m.edges().to_vec(), m.connectors().to_vec()).is_err());
    }

    #[test]
    fn canonical_order_puts_free_ends_last() {
        let m = Multipole::new(
            2,
            vec![
                Edge::new(End::Free, End::Vertex(1)),
                Edge::between(1, 0),
                Edge::isolated(),
                Edge::between(0, 1),
            ],
            vec![vec![HalfEdge::new(0, 0), HalfEdge::new(2, 1)]],
        )
        .unwrap();
        assert_eq!(
            m.edges(),
            &[
                Edge::between(0, 1),
                Edge::between(0, 1),
                Edge::dangling(1),
                Edge::isolated()
            ]
        );
        assert_eq!(m.connectors()[0], vec![HalfEdge::new(2, 1), HalfEdge::new(3, 1)]);
        assert!(m.is_canonical());
    }

    #[test]
    fn remove_vertices_makes_connectors() {
        let p = petersen();
        let (m, map) = p.remove_vertices(&[0]).unwrap();
        assert_eq!(m.vertex_count(), 9);
        assert_eq!(m.connector_sizes(), vec![3]);
        assert_eq!(map[0], None);
        assert_eq!(map[1], Some(0));
        assert!(m.validate().is_valid());
        // adjacent pair: the joining edge becomes isolated
        let (m2, _) = p.remove_vertices(&[0, 1]).unwrap();
        assert_eq!(m2.connector_sizes(), vec![3, 3]);
        assert_eq!(m2.edges().iter().filter(|e| e.is_isolated()).count(), 1);
    }

    #[test]
    fn decycling_sets() {
        let p = petersen();
        assert!(!p.is_decycling(&[]));
        assert!(p.is_decycling(&[0, 2, 8]));
    }

    #[test]
    fn induced_round_trip() {
        let p = petersen();
        let (m, _) = p.remove_vertices(&[0]).unwrap();
        let bd: Vec<usize> = m.connectors()[0].iter().map(|h| h.edge).collect();
        let back = m.induced(&(0..9).collect::<Vec<_>>(), &[bd]).unwrap();
        assert_eq!(back, m);
    }
}
