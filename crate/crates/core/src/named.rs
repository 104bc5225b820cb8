//! A catalogue of small named cubic graphs: classical colourable graphs,
//! snarks, and a few multigraphs. Vertex labels are fixed so that tests and
//! reports are reproducible.

use crate::graph::Graph;

fn build(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges).expect("catalogue graphs are cubic")
}

/// Graph from LCF notation: a Hamiltonian cycle `0..n` plus chords given by
/// the cyclically repeated shift list.
pub fn lcf(n: usize, shifts: &[i64]) -> Graph {
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    for i in 0..n {
        let s = shifts[i % shifts.len()];
        let j = (i as i64 + s).rem_euclid(n as i64) as usize;
        if i < j {
            edges.push((i, j));
        }
    }
    build(n, &edges)
}

/// Two vertices joined by three parallel edges.
pub fn theta() -> Graph {
    build(2, &[(0, 1), (0, 1), (0, 1)])
}

/// A cycle of `k >= 2` digons: vertices `2i, 2i+1` are joined twice and
/// `2i+1` is joined to `2i+2`.
pub fn digon_ring(k: usize) -> Graph {
    let n = 2 * k;
    let mut edges = Vec::new();
    for i in 0..k {
        edges.push((2 * i, 2 * i + 1));
        edges.push((2 * i, 2 * i + 1));
        edges.push((2 * i + 1, (2 * i + 2) % n));
    }
    build(n, &edges)
}

pub fn k4() -> Graph {
    build(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
}

pub fn k33() -> Graph {
    let mut edges = Vec::new();
    for a in 0..3 {
        for b in 3..6 {
            edges.push((a, b));
        }
    }
    build(6, &edges)
}

/// The `n`-prism: outer cycle `0..n`, inner cycle `n..2n`, spokes `i, n+i`.
pub fn prism(n: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        edges.push((i, (i + 1) % n));
        edges.push((n + i, n + (i + 1) % n));
        edges.push((i, n + i));
    }
    build(2 * n, &edges)
}

pub fn cube() -> Graph {
    lcf(8, &[3, -3])
}

/// Möbius ladder on 8 vertices.
pub fn wagner() -> Graph {
    lcf(8, &[4])
}

pub fn franklin() -> Graph {
    lcf(12, &[5, -5])
}

pub fn frucht() -> Graph {
    lcf(12, &[-5, -2, -4, 2, 5, -2, 2, 5, -2, -5, 4, 2])
}

pub fn truncated_tetrahedron() -> Graph {
    lcf(12, &[2, 6, -2])
}

pub fn heawood() -> Graph {
    lcf(14, &[5, -5])
}

pub fn mobius_kantor() -> Graph {
    lcf(16, &[5, -5])
}

pub fn dodecahedron() -> Graph {
    lcf(20, &[10, 7, 4, -4, -7, 10, -4, 7, -7, 4])
}

pub fn desargues() -> Graph {
    lcf(20, &[5, -5, 9, -9])
}

/// Outer cycle `v0..v4` (vertices 0..4), inner pentagram `u0..u4`
/// (vertices 5..9), spokes `vi ui`.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, 5 + i));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    build(10, &edges)
}

/// Flower snark `J_n` for odd `n >= 3`. Vertex `4i` is the centre of claw
/// `i`, and `4i+1`, `4i+2`, `4i+3` are its three leaves.
pub fn flower_snark(n: usize) -> Graph {
    assert!(n >= 3 && n % 2 == 1, "flower snarks need odd n >= 3");
    let id = |i: usize, k: usize| 4 * (i % n) + k;
    let mut edges = Vec::new();
    for i in 0..n {
        for k in 1..4 {
            edges.push((id(i, 0), id(i, k)));
        }
        edges.push((id(i, 1), id(i + 1, 1)));
        if i + 1 < n {
            edges.push((id(i, 2), id(i + 1, 2)));
            edges.push((id(i, 3), id(i + 1, 3)));
        } else {
            edges.push((id(i, 2), id(0, 3)));
            edges.push((id(i, 3), id(0, 2)));
        }
    }
    build(4 * n, &edges)
}

/// Replaces vertex `v` by a triangle. The triangle takes the ids `v`,
/// `n`, `n+1`.
pub fn truncate(g: &Graph, v: usize) -> Graph {
    let n = g.vertex_count();
    let corners = [v, n, n + 1];
    let mut edges = Vec::new();
    let mut slot = 0;
    for &(a, b) in g.edge_list() {
        let mut ends = [a, b];
        for end in ends.iter_mut() {
            if *end == v {
                *end = corners[slot];
                slot += 1;
            }
        }
        edges.push((ends[0], ends[1]));
    }
    edges.extend([(v, n), (n, n + 1), (n + 1, v)]);
    build(n + 2, &edges)
}

/// Isaacs dot product: delete independent edges `ab`, `cd` of `g` and the
/// adjacent vertices `x`, `y` of `h`, then join `a`, `b` to the remaining
/// neighbours of `x` and `c`, `d` to those of `y`. Vertices of `h` are
/// renumbered after those of `g`.
pub fn dot_product(
    g: &Graph,
    (a, b): (usize, usize),
    (c, d): (usize, usize),
    h: &Graph,
    (x, y): (usize, usize),
) -> Graph {
    let n = g.vertex_count();
    let map = |w: usize| -> usize {
        let shift = [x, y].iter().filter(|&&r| r < w).count();
        n + w - shift
    };
    let mut edges = Vec::new();
    let mut removed = [false, false];
    for &(p, q) in g.edge_list() {
        let key = (p.min(q), p.max(q));
        if key == (a.min(b), a.max(b)) && !removed[0] {
            removed[0] = true;
            continue;
        }
        if key == (c.min(d), c.max(d)) && !removed[1] {
            removed[1] = true;
            continue;
        }
        edges.push((p, q));
    }
    assert!(removed == [true, true], "dot product edges must exist in g");
    let mut xn = Vec::new();
    let mut yn = Vec::new();
    for &(p, q) in h.edge_list() {
        match ([p == x || p == y, q == x || q == y], (p, q)) {
            ([true, true], _) => {}
            ([true, false], (p, q)) => (if p == x { &mut xn } else { &mut yn }).push(q),
            ([false, true], (p, q)) => (if q == x { &mut xn } else { &mut yn }).push(p),
            _ => edges.push((map(p), map(q))),
        }
    }
    assert!(xn.len() == 2 && yn.len() == 2, "x and y must be adjacent");
    edges.extend([(a, map(xn[0])), (b, map(xn[1])), (c, map(yn[0])), (d, map(yn[1]))]);
    build(n + h.vertex_count() - 2, &edges)
}

/// First Blanuša snark: the deleted edges of the first Petersen are joined
/// by an edge.
pub fn blanusa_1() -> Graph {
    dot_product(&petersen(), (0, 1), (2, 3), &petersen(), (0, 1))
}

/// Second Blanuša snark: the deleted edges are at distance two.
pub fn blanusa_2() -> Graph {
    dot_product(&petersen(), (0, 1), (7, 9), &petersen(), (0, 1))
}

pub fn tietze() -> Graph {
    truncate(&petersen(), 0)
}

/// A cubic graph on 16 vertices with exactly one bridge: `K3,3` and the cube,
/// each with one edge subdivided, joined at the subdivision vertices.
pub fn bridged_16() -> Graph {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let left = k33();
    let right = cube();
    let subdivide = |g: &Graph, offset: usize, mid: usize, edges: &mut Vec<(usize, usize)>| {
        for (i, &(a, b)) in g.edge_list().iter().enumerate() {
            if i == 0 {
                edges.push((a + offset, mid));
                edges.push((mid, b + offset));
            } else {
                edges.push((a + offset, b + offset));
            }
        }
    };
    subdivide(&left, 0, 6, &mut edges);
    subdivide(&right, 7, 15, &mut edges);
    edges.push((6, 15));
    build(16, &edges)
}

/// Bridgeless cubic graphs on at most 14 vertices, multigraphs included.
pub fn small_cubic_corpus() -> Vec<(&'static str, Graph)> {
    vec![
        ("theta", theta()),
        ("digon-ring-2", digon_ring(2)),
        ("k4", k4()),
        ("digon-ring-3", digon_ring(3)),
        ("k33", k33()),
        ("prism-3", prism(3)),
        ("cube", cube()),
        ("wagner", wagner()),
        ("digon-ring-4", digon_ring(4)),
        ("petersen", petersen()),
        ("prism-5", prism(5)),
        ("franklin", franklin()),
        ("frucht", frucht()),
        ("truncated-tetrahedron", truncated_tetrahedron()),
        ("tietze", tietze()),
        ("flower-j3", flower_snark(3)),
        ("prism-6", prism(6)),
        ("heawood", heawood()),
        ("prism-7", prism(7)),
        ("petersen-truncated-2", truncate(&tietze(), 7)),
    ]
}

/// Snarks (bridgeless, uncolourable) used by the inequality audit.
pub fn snark_corpus() -> Vec<(&'static str, Graph)> {
    vec![
        ("petersen", petersen()),
        ("tietze", tietze()),
        ("flower-j3", flower_snark(3)),
        ("petersen-truncated-2", truncate(&tietze(), 7)),
        ("blanusa-1", blanusa_1()),
        ("blanusa-2", blanusa_2()),
        ("flower-j5", flower_snark(5)),
        ("petersen-dot-tietze", dot_product(&petersen(), (0, 1), (2, 3), &tietze(), (5, 7))),
        ("blanusa-1-truncated", truncate(&blanusa_1(), 0)),
        ("petersen-dot-blanusa-2", dot_product(&petersen(), (0, 1), (2, 3), &blanusa_2(), (2, 3))),
        ("flower-j7", flower_snark(7)),
    ]
}

/// Every catalogue graph by name.
pub fn by_name(name: &str) -> Option<Graph> {
    let extra = [
        ("mobius-kantor", mobius_kantor as fn() -> Graph),
        ("dodecahedron", dodecahedron),
        ("desargues", desargues),
        ("bridged-16", bridged_16),
        ("flower-j5", || flower_snark(5)),
        ("flower-j7", || flower_snark(7)),
        ("mcgee", crate::cages::mcgee),
        ("tutte-coxeter", crate::cages::tutte_coxeter),
    ];
    small_cubic_corpus()
        .into_iter()
        .chain(snark_corpus())
        .find(|(n, _)| *n == name)
        .map(|(_, g)| g)
        .or_else(|| extra.iter().find(|(n, _)| *n == name).map(|(_, f)| f()))
}
