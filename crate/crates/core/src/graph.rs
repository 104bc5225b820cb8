//! Closed cubic graphs (0-poles) with cached adjacency, plus the basic
//! structural queries used throughout: girth, bridges, bipartiteness.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::multipole::{Edge, Multipole};

/// One incidence of a vertex: the edge and the vertex at its other end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Incidence {
    pub edge: usize,
    pub neighbour: usize,
}

/// A cubic multigraph without free ends, in canonical edge order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    inner: Multipole,
    ends: Vec<(usize, usize)>,
    adj: Vec<[Incidence; 3]>,
}

impl Graph {
    pub fn new(m: Multipole) -> Result<Graph> {
        if !m.is_graph() {
            return Err(Error::InvalidMultipole(format!(
                "graph expected, found {} free ends",
                m.free_end_count()
            )));
        }
        m.ensure_cubic()?;
        let m = if m.is_canonical() { m } else { m.canonicalize().0 };
        let ends: Vec<(usize, usize)> = m
            .edges()
            .iter()
            .map(|e| e.endpoints().expect("no free ends"))
            .collect();
        let mut adj = vec![Vec::with_capacity(3); m.vertex_count()];
        for (i, &(a, b)) in ends.iter().enumerate() {
            adj[a].push(Incidence {
                edge: i,
                neighbour: b,
            });
            adj[b].push(Incidence {
                edge: i,
                neighbour: a,
            });
        }
        let adj = adj
            .into_iter()
            .map(|v| [v[0], v[1], v[2]])
            .collect();
        Ok(Graph {
            inner: m,
            ends,
            adj,
        })
    }

    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        Graph::new(Multipole::from_edge_list(vertex_count, edges)?)
    }

    pub fn multipole(&self) -> &Multipole {
        &self.inner
    }

    pub fn into_multipole(self) -> Multipole {
        self.inner
    }

    pub fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.ends[e]
    }

    pub fn edge_list(&self) -> &[(usize, usize)] {
        &self.ends
    }

    pub fn incidences(&self, v: usize) -> &[Incidence; 3] {
        &self.adj[v]
    }

    pub fn has_loop(&self) -> bool {
        self.ends.iter().any(|&(a, b)| a == b)
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.ends.iter().all(|&(a, b)| a != b && seen.insert((a, b)))
    }

    pub fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    pub fn girth(&self) -> Result<usize> {
        self.inner.girth().ok_or(Error::Acyclic)
    }

    pub fn is_decycling(&self, vertices: &[usize]) -> bool {
        self.inner.is_decycling(vertices)
    }

    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].expect("queued");
            for inc in &self.adj[x] {
                if dist[inc.neighbour].is_none() {
                    dist[inc.neighbour] = Some(d + 1);
                    queue.push_back(inc.neighbour);
                }
            }
        }
        dist
    }

    pub fn distance(&self, a: usize, b: usize) -> Option<usize> {
        self.distances_from(a)[b]
    }

    /// Proper 2-colouring of the vertices, if one exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let n = self.vertex_count();
        let mut side: Vec<Option<bool>> = vec![None; n];
        for s in 0..n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                let sx = side[x].expect("queued");
                for inc in &self.adj[x] {
                    match side[inc.neighbour] {
                        None => {
                            side[inc.neighbour] = Some(!sx);
                            queue.push_back(inc.neighbour);
                        }
                        Some(sy) if sy == sx => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.expect("visited")).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Bridge edges, ascending. Parallel edges are never bridges.
    pub fn bridges(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut bridges = Vec::new();
        let mut timer = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            // (vertex, edge used to enter it, next incidence index)
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            while let Some(&mut (v, parent_edge, ref mut next)) = stack.last_mut() {
                if *next < 3 {
                    let inc = self.adj[v][*next];
                    *next += 1;
                    if inc.edge == parent_edge {
                        continue;
                    }
                    let w = inc.neighbour;
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, inc.edge, 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[v]);
                        if low[v] > disc[p] {
                            bridges.push(parent_edge);
                        }
                    }
                }
            }
        }
        bridges.sort_unstable();
        bridges
    }

    pub fn is_bridgeless(&self) -> bool {
        self.bridges().is_empty()
    }

    /// Vertex sets of the components of the subgraph spanned by `edges`
    /// (a boolean mask), restricted to vertices touched by them.
    pub(crate) fn edge_subgraph_components(&self, mask: &[bool]) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut uf = crate::multipole::UnionFind::new(n);
        let mut touched = vec![false; n];
        for (e, &(a, b)) in self.ends.iter().enumerate() {
            if mask[e] {
                uf.union(a, b);
                touched[a] = true;
                touched[b] = true;
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for v in 0..n {
            if touched[v] {
                let r = uf.find(v);
                groups.entry(r).or_default().push(v);
            }
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }
}

/// An edge cut together with the two vertex sets it separates.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct EdgeCut {
    pub edges: Vec<usize>,
    pub sides: [Vec<usize>; 2],
}

impl EdgeCut {
    /// The cut `∂X` for a vertex set `X`.
    pub fn around(g: &Graph, side: &[usize]) -> EdgeCut {
        let mut inside = vec![false; g.vertex_count()];
        for &v in side {
            inside[v] = true;
        }
        let edges = (0..g.edge_count())
            .filter(|&e| {
                let (a, b) = g.endpoints(e);
                inside[a] != inside[b]
            })
            .collect();
        let (x, y): (Vec<usize>, Vec<usize>) = (0..g.vertex_count()).partition(|&v| inside[v]);
        EdgeCut { edges, sides: [x, y] }
    }

    /// True iff removing the cut leaves at least two components that
    /// contain circuits.
    pub fn is_cycle_separating(&self, g: &Graph) -> bool {
        let removed: std::collections::HashSet<usize> = self.edges.iter().copied().collect();
        let n = g.vertex_count();
        let mut uf = crate::multipole::UnionFind::new(n);
        let mut cyclic_roots = Vec::new();
        for (e, &(a, b)) in g.edge_list().iter().enumerate() {
            if !removed.contains(&e) && !uf.union(a, b) {
                cyclic_roots.push(a);
            }
        }
        let mut roots: Vec<usize> = cyclic_roots.into_iter().map(|v| uf.find(v)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len() >= 2
    }
}

/// Girth over vertex-to-vertex edges; free ends are ignored.
pub(crate) fn girth_of(vertex_count: usize, edges: &[Edge]) -> Option<usize> {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); vertex_count];
    for (i, e) in edges.iter().enumerate() {
        if let Some((a, b)) = e.endpoints() {
            if a == b {
                return Some(1);
            }
            adj[a].push((i, b));
            adj[b].push((i, a));
        }
    }
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; vertex_count];
    let mut parent = vec![usize::MAX; vertex_count];
    let mut queue = VecDeque::new();
    for root in 0..vertex_count {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[root] = 0;
        parent[root] = usize::MAX;
        queue.clear();
        queue.push_back(root);
        'bfs: while let Some(x) = queue.pop_front() {
            if let Some(b) = best {
                if 2 * dist[x] >= b {
                    break 'bfs;
                }
            }
            for &(e, y) in &adj[x] {
                if e == parent[x] {
                    continue;
                }
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = e;
                    queue.push_back(y);
                } else {
                    let len = dist[x] + dist[y] + 1;
                    if best.is_none_or(|b| len < b) {
                        best = Some(len);
                    }
                }
            }
        }
    }
    best
}
