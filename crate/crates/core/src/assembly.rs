//! Junctions of multipoles and substitution of vertices and edges by
//! multipoles. Every operation returns a new multipole in canonical form;
//! the `*_mapped` variants also report where each input edge went.

use crate::colour::Colour;
use crate::colouring::EdgeColouring;
use crate::error::{Error, Result};
use crate::multipole::{Edge, End, HalfEdge, Multipole};

/// Result of a two-operand operation with edge provenance. `left[e]` is the
/// output edge containing edge `e` of the first operand (`None` if it was
/// deleted) and `right[f]` the same for the second operand. Merged edges
/// share an output index. Vertices of the first operand come first, in
/// order, followed by those of the second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assembled {
    pub multipole: Multipole,
    pub left: Vec<Option<usize>>,
    pub right: Vec<usize>,
}

impl Assembled {
    /// Transfers colourings of both operands onto the result. Merged edges
    /// must agree; deleted edges are ignored.
    pub fn transfer(&self, left: &EdgeColouring, right: &EdgeColouring) -> Result<EdgeColouring> {
        let mut out: Vec<Option<Colour>> = vec![None; self.multipole.edge_count()];
        let sources = self
            .left
            .iter()
            .zip(left.colours())
            .filter_map(|(t, c)| t.map(|t| (t, *c)))
            .chain(self.right.iter().copied().zip(right.colours().iter().copied()));
        for (t, c) in sources {
            match out[t] {
                Some(old) if old != c => {
                    return Err(Error::IllFormedColouring(format!(
                        "merged edge {t} receives colours {old} and {c}"
                    )))
                }
                _ => out[t] = Some(c),
            }
        }
        out.into_iter()
            .enumerate()
            .map(|(e, c)| c.ok_or_else(|| Error::IllFormedColouring(format!("edge {e} left uncoloured"))))
            .collect::<Result<Vec<_>>>()
            .map(EdgeColouring)
    }
}

/// Disjoint union; `b`'s vertices and edges are shifted past `a`'s and its
/// connectors follow `a`'s.
pub fn disjoint_union(a: &Multipole, b: &Multipole) -> Multipole {
    let (nv, ne) = (a.vertex_count(), a.edge_count());
    let shift = |end: End| match end {
        End::Vertex(v) => End::Vertex(v + nv),
        End::Free => End::Free,
    };
    let mut edges = a.edges().to_vec();
    edges.extend(b.edges().iter().map(|e| Edge::new(shift(e.ends[0]), shift(e.ends[1]))));
    let mut connectors = a.connectors().to_vec();
    connectors.extend(
        b.connectors()
            .iter()
            .map(|c| c.iter().map(|h| HalfEdge::new(h.edge + ne, h.side)).collect()),
    );
    Multipole::from_parts(nv + b.vertex_count(), edges, connectors)
}

/// Gluing without canonical reordering; returns the old-to-new edge map.
fn glue_raw(m: &Multipole, pairs: &[(HalfEdge, HalfEdge)]) -> Result<(Multipole, Vec<usize>)> {
    let ne = m.edge_count();
    let idx = |h: HalfEdge| 2 * h.edge + h.side;
    let mut partner = vec![usize::MAX; 2 * ne];
    for &(x, y) in pairs {
        for h in [x, y] {
            let e = m.edge(h.edge)?;
            if h.side > 1 || !e.ends[h.side].is_free() {
                return Err(Error::InvalidMultipole(format!("{h} is not a free end")));
            }
            if partner[idx(h)] != usize::MAX {
                return Err(Error::InvalidMultipole(format!("free end {h} glued twice")));
            }
        }
        if x == y {
            return Err(Error::InvalidMultipole(format!("free end {x} glued to itself")));
        }
        partner[idx(x)] = idx(y);
        partner[idx(y)] = idx(x);
    }
    let end_of = |h: usize| m.edges()[h / 2].ends[h % 2];
    // every chain runs between two unglued half-edges
    let mut new_of_half = vec![usize::MAX; 2 * ne];
    let mut side_of_half = vec![0usize; 2 * ne];
    let mut edges = Vec::new();
    for start in 0..2 * ne {
        if partner[start] != usize::MAX || new_of_half[start] != usize::MAX {
            continue;
        }
        let id = edges.len();
        new_of_half[start] = id;
        side_of_half[start] = 0;
        let mut h = start ^ 1;
        while partner[h] != usize::MAX {
            new_of_half[h] = id;
            let p = partner[h];
            new_of_half[p] = id;
            h = p ^ 1;
        }
        new_of_half[h] = id;
        side_of_half[h] = 1;
        edges.push(Edge::new(end_of(start), end_of(h)));
    }
    if new_of_half.contains(&usize::MAX) {
        return Err(Error::InvalidMultipole(
            "gluing closes a circle of isolated edges".into(),
        ));
    }
    let connectors: Vec<Vec<HalfEdge>> = m
        .connectors()
        .iter()
        .map(|c| {
            c.iter()
                .filter(|h| partner[idx(**h)] == usize::MAX)
                .map(|h| HalfEdge::new(new_of_half[idx(*h)], side_of_half[idx(*h)]))
                .collect::<Vec<_>>()
        })
        .filter(|c| !c.is_empty())
        .collect();
    let map = (0..ne).map(|e| new_of_half[2 * e]).collect();
    Ok((Multipole::from_parts(m.vertex_count(), edges, connectors), map))
}

/// Canonicalizes and composes the provenance maps.
fn finish(m: Multipole, left: Vec<Option<usize>>, right: Vec<usize>) -> Assembled {
    let (multipole, order) = m.canonicalize();
    Assembled {
        multipole,
        left: left.into_iter().map(|e| e.map(|e| order[e])).collect(),
        right: right.into_iter().map(|e| order[e]).collect(),
    }
}

/// Identifies pairs of free ends of `m`. Each pair merges two edges into
/// one; a chain of isolated edges collapses into a single edge. Connector
/// entries that were glued are dropped, as are connectors left empty.
/// Returns the canonical result and, per input edge, its new index.
pub fn glue(m: &Multipole, pairs: &[(HalfEdge, HalfEdge)]) -> Result<(Multipole, Vec<usize>)> {
    let (raw, map) = glue_raw(m, pairs)?;
    let (out, order) = raw.canonicalize();
    Ok((out, map.into_iter().map(|e| order[e]).collect()))
}

fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(Error::InvalidPermutation(format!(
            "length {} for connector of size {n}",
            perm.len()
        )));
    }
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidPermutation(format!("{perm:?} is not a permutation")));
        }
    }
    Ok(())
}

/// Unions `a` and `b` and glues the given pairs (`b`'s half-edges unshifted).
fn union_glue(a: &Multipole, b: &Multipole, pairs: &[(HalfEdge, HalfEdge)]) -> Result<Assembled> {
    let shift = a.edge_count();
    let pairs: Vec<_> = pairs
        .iter()
        .map(|&(x, y)| (x, HalfEdge::new(y.edge + shift, y.side)))
        .collect();
    let (raw, map) = glue_raw(&disjoint_union(a, b), &pairs)?;
    let left = map[..shift].iter().map(|&e| Some(e)).collect();
    let right = map[shift..].to_vec();
    Ok(finish(raw, left, right))
}

/// Identifies the `i`-th free end of connector `ca` of `a` with free end
/// `perm[i]` of connector `cb` of `b` (identity when `perm` is `None`).
/// Remaining connectors keep their order, `a`'s first.
pub fn junction_mapped(
    a: &Multipole,
    ca: usize,
    b: &Multipole,
    cb: usize,
    perm: Option<&[usize]>,
) -> Result<Assembled> {
    let left = a.connector(ca)?;
    let right = b.connector(cb)?;
    if left.len() != right.len() {
        return Err(Error::ConnectorSizeMismatch {
            left: left.len(),
            right: right.len(),
        });
    }
    let identity: Vec<usize> = (0..left.len()).collect();
    let perm = perm.unwrap_or(&identity);
    check_permutation(perm, left.len())?;
    let pairs: Vec<_> = left.iter().zip(perm).map(|(&x, &p)| (x, right[p])).collect();
    union_glue(a, b, &pairs)
}

/// [`junction_mapped`] also returning the joining edges in connector order.
pub fn junction_with_edges(
    a: &Multipole,
    ca: usize,
    b: &Multipole,
    cb: usize,
    perm: Option<&[usize]>,
) -> Result<(Multipole, Vec<usize>)> {
    let out = junction_mapped(a, ca, b, cb, perm)?;
    let joined = a.connector(ca)?.iter().map(|h| out.left[h.edge].expect("kept")).collect();
    Ok((out.multipole, joined))
}

pub fn junction(a: &Multipole, ca: usize, b: &Multipole, cb: usize, perm: Option<&[usize]>) -> Result<Multipole> {
    junction_mapped(a, ca, b, cb, perm).map(|x| x.multipole)
}

/// Identifies the `i`-th end of connector `c1` with the `i`-th end of
/// connector `c2` inside a single multipole.
pub fn self_junction(m: &Multipole, c1: usize, c2: usize) -> Result<Multipole> {
    let (x, y) = (m.connector(c1)?, m.connector(c2)?);
    if c1 == c2 {
        return Err(Error::InvalidMultipole("connector joined to itself".into()));
    }
    if x.len() != y.len() {
        return Err(Error::ConnectorSizeMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let pairs: Vec<_> = x.iter().copied().zip(y.iter().copied()).collect();
    glue(m, &pairs).map(|(m, _)| m)
}

/// Replaces vertex `v` by `sup`. The `i`-th edge-end at `v` (in the order
/// of [`Multipole::incidence`]) is identified with `assignment[i]`, a free
/// end of `sup`. Any degree is accepted as long as the counts agree, so
/// higher-degree positions left by [`substitute_edge`] can be filled.
/// `g`'s remaining vertices keep their order; `sup`'s follow.
pub fn substitute_vertex_mapped(g: &Multipole, v: usize, sup: &Multipole, assignment: &[HalfEdge]) -> Result<Assembled> {
    if v >= g.vertex_count() {
        return Err(Error::NoSuchVertex(v));
    }
    let incidence = g.incidence().swap_remove(v);
    if assignment.len() != incidence.len() {
        return Err(Error::ArityMismatch {
            expected: incidence.len(),
            found: assignment.len(),
        });
    }
    let edges = g
        .edges()
        .iter()
        .map(|e| {
            let f = |end: End| match end {
                End::Vertex(x) if x == v => End::Free,
                End::Vertex(x) if x > v => End::Vertex(x - 1),
                other => other,
            };
            Edge::new(f(e.ends[0]), f(e.ends[1]))
        })
        .collect();
    let rest = Multipole::from_parts(g.vertex_count() - 1, edges, g.connectors().to_vec());
    let pairs: Vec<_> = incidence.into_iter().zip(assignment.iter().copied()).collect();
    union_glue(&rest, sup, &pairs)
}

pub fn substitute_vertex(g: &Multipole, v: usize, sup: &Multipole, assignment: &[HalfEdge]) -> Result<Multipole> {
    substitute_vertex_mapped(g, v, sup, assignment).map(|x| x.multipole)
}

/// [`substitute_vertex`] with the assignment read off `sup`'s connectors:
/// the listed connectors are concatenated and then permuted by `perm`.
pub fn substitute_vertex_by_connectors(
    g: &Multipole,
    v: usize,
    sup: &Multipole,
    connectors: &[usize],
    perm: Option<&[usize]>,
) -> Result<Multipole> {
    let mut ends = Vec::new();
    for &c in connectors {
        ends.extend_from_slice(sup.connector(c)?);
    }
    let ends = match perm {
        Some(p) => {
            check_permutation(p, ends.len())?;
            p.iter().map(|&i| ends[i]).collect()
        }
        None => ends,
    };
    substitute_vertex(g, v, sup, &ends)
}

/// Replaces edge `e = uw` by `sup`: the free ends of connector `ca` attach
/// to `u` and those of `cb` to `w`, where `u` is the first endpoint in
/// canonical order. The two connectors must hold all of `sup`'s free ends.
/// Attaching `k > 1` ends raises the endpoint's degree to `k + 2`.
pub fn substitute_edge_mapped(g: &Multipole, e: usize, sup: &Multipole, ca: usize, cb: usize) -> Result<Assembled> {
    let edge = *g.edge(e)?;
    if edge.is_loop() {
        return Err(Error::LoopSubstitution(e));
    }
    let (u, w) = edge
        .endpoints()
        .ok_or_else(|| Error::InvalidMultipole(format!("edge {e} has a free end")))?;
    if ca == cb {
        return Err(Error::InvalidMultipole("superedge connectors must differ".into()));
    }
    let (xa, xb) = (sup.connector(ca)?, sup.connector(cb)?);
    if xa.len() + xb.len() != sup.free_end_count() {
        return Err(Error::InvalidMultipole(
            "superedge connectors must hold every free end".into(),
        ));
    }
    let mut attach = vec![[None, None]; sup.edge_count()];
    for (list, target) in [(xa, u), (xb, w)] {
        for h in list {
            if attach[h.edge][h.side].replace(target).is_some() {
                return Err(Error::InvalidMultipole(format!("free end {h} listed twice")));
            }
        }
    }
    let nv = g.vertex_count();
    let mut edges: Vec<Edge> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != e)
        .map(|(_, x)| *x)
        .collect();
    let left = (0..g.edge_count())
        .map(|i| match i.cmp(&e) {
            std::cmp::Ordering::Less => Some(i),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(i - 1),
        })
        .collect::<Vec<_>>();
    let right = (0..sup.edge_count()).map(|i| edges.len() + i).collect();
    for (i, x) in sup.edges().iter().enumerate() {
        let mut ends = [End::Free; 2];
        for s in 0..2 {
            ends[s] = match (x.ends[s], attach[i][s]) {
                (End::Vertex(v), _) => End::Vertex(v + nv),
                (End::Free, Some(t)) => End::Vertex(t),
                (End::Free, None) => End::Free,
            };
        }
        edges.push(Edge::new(ends[0], ends[1]));
    }
    let connectors = g
        .connectors()
        .iter()
        .map(|c| c.iter().map(|h| HalfEdge::new(left[h.edge].unwrap_or(h.edge), h.side)).collect())
        .collect();
    Ok(finish(
        Multipole::from_parts(nv + sup.vertex_count(), edges, connectors),
        left,
        right,
    ))
}

pub fn substitute_edge(g: &Multipole, e: usize, sup: &Multipole, ca: usize, cb: usize) -> Result<Multipole> {
    substitute_edge_mapped(g, e, sup, ca, cb).map(|x| x.multipole)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    fn k4_minus_vertex() -> Multipole {
        named::k4().multipole().remove_vertices(&[0]).unwrap().0
    }

    #[test]
    fn junction_of_two_tripoles() {
        let a = k4_minus_vertex();
        let m = junction(&a, 0, &a, 0, None).unwrap();
        assert!(m.is_graph());
        assert_eq!(m.vertex_count(), 6);
        assert_eq!(m.edge_count(), 2 * a.edge_count() - 3);
        m.ensure_cubic().unwrap();
    }

    #[test]
    fn junction_then_cut_recovers_parts() {
        let a = k4_minus_vertex();
        let b = named::petersen().multipole().remove_vertices(&[3]).unwrap().0;
        let (m, joined) = junction_with_edges(&a, 0, &b, 0, None).unwrap();
        assert_eq!(m.free_end_count(), a.free_end_count() + b.free_end_count() - 6);
        let left: Vec<usize> = (0..a.vertex_count()).collect();
        let right: Vec<usize> = (a.vertex_count()..m.vertex_count()).collect();
        assert_eq!(m.induced(&left, &[joined.clone()]).unwrap(), a);
        assert_eq!(m.induced(&right, &[joined]).unwrap(), b);
    }

    #[test]
    fn junction_size_mismatch() {
        let a = k4_minus_vertex();
        let b = Multipole::claw(true);
        assert!(matches!(
            junction(&a, 0, &b, 0, None),
            Err(Error::ConnectorSizeMismatch { left: 3, right: 1 })
        ));
    }

    #[test]
    fn claw_substitution_is_identity() {
        let g = named::petersen();
        let claw = Multipole::claw(false);
        for v in 0..g.vertex_count() {
            let t = substitute_vertex_by_connectors(g.multipole(), v, &claw, &[0], None).unwrap();
            t.ensure_cubic().unwrap();
            assert_eq!(crate::Graph::new(t).unwrap().girth().unwrap(), 5);
        }
    }

    #[test]
    fn triangle_substitution_truncates() {
        let g = named::k4();
        let triangle = named::k4().multipole().remove_vertices(&[0]).unwrap().0;
        let t = substitute_vertex_by_connectors(g.multipole(), 3, &triangle, &[0], None).unwrap();
        let t = crate::Graph::new(t).unwrap();
        assert_eq!(t.vertex_count(), 6);
        assert_eq!(t.girth().unwrap(), 3);
        assert_eq!(t.edge_count(), named::truncate(&g, 3).edge_count());
    }

    #[test]
    fn isolated_edge_superedge_is_identity() {
        let g = named::petersen();
        let sup = Multipole::from_parts(
            0,
            vec![Edge::isolated()],
            vec![vec![HalfEdge::new(0, 0)], vec![HalfEdge::new(0, 1)]],
        );
        for e in 0..g.edge_count() {
            let m = substitute_edge(g.multipole(), e, &sup, 0, 1).unwrap();
            assert_eq!(&m, g.multipole());
        }
    }

    #[test]
    fn loop_substitution_rejected() {
        let g = Multipole::from_parts(
            2,
            vec![Edge::between(0, 0), Edge::between(0, 1), Edge::between(1, 1)],
            Vec::new(),
        );
        let sup = Multipole::from_parts(
            0,
            vec![Edge::isolated()],
            vec![vec![HalfEdge::new(0, 0)], vec![HalfEdge::new(0, 1)]],
        );
        assert_eq!(substitute_edge(&g, 0, &sup, 0, 1), Err(Error::LoopSubstitution(0)));
    }

    #[test]
    fn fat_edge_raises_degree_and_vertex_fills_it() {
        let g = named::petersen();
        // a (3,3)-pole: three parallel isolated edges
        let sup = Multipole::from_parts(
            0,
            vec![Edge::isolated(); 3],
            vec![
                (0..3).map(|e| HalfEdge::new(e, 0)).collect(),
                (0..3).map(|e| HalfEdge::new(e, 1)).collect(),
            ],
        );
        let m = substitute_edge(g.multipole(), 0, &sup, 0, 1).unwrap();
        let (u, w) = g.endpoints(0);
        assert_eq!((m.degree(u), m.degree(w)), (5, 5));
        let five = Multipole::from_parts(
            0,
            vec![Edge::isolated(); 0],
            Vec::new(),
        );
        assert!(matches!(
            substitute_vertex(&m, u, &five, &[]),
            Err(Error::ArityMismatch { expected: 5, found: 0 })
        ));
        assert!(matches!(
            substitute_vertex_by_connectors(g.multipole(), u, &k4_minus_vertex(), &[0], None).map(|m| m.vertex_count()),
            Ok(12)
        ));
        let bad = substitute_vertex_by_connectors(&m, u, &k4_minus_vertex(), &[0], None);
        assert!(matches!(bad, Err(Error::ArityMismatch { expected: 5, found: 3 })));
    }

    #[test]
    fn gluing_isolated_circle_rejected() {
        let m = Multipole::from_parts(0, vec![Edge::isolated()], Vec::new());
        assert!(glue(&m, &[(HalfEdge::new(0, 0), HalfEdge::new(0, 1))]).is_err());
    }
}
