//! Brute-force oracles shared by the integration tests. They use nothing
//! from the library except the edge list.

#![allow(dead_code)]

use itertools::Itertools;
use snarkdefect::Graph;

/// Perfect matchings as sorted edge lists, by trying every edge subset of
/// size |V|/2.
pub fn perfect_matchings(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let edges = g.edge_list();
    (0..edges.len())
        .combinations(n / 2)
        .filter(|s| {
            let mut hit = vec![false; n];
            s.iter().all(|&e| {
                let (a, b) = edges[e];
                a != b && !std::mem::replace(&mut hit[a], true) && !std::mem::replace(&mut hit[b], true)
            })
        })
        .collect()
}

fn mask(m: &[usize]) -> u128 {
    m.iter().fold(0, |acc, &e| acc | 1 << e)
}

pub fn defect(g: &Graph) -> usize {
    let pms: Vec<u128> = perfect_matchings(g).iter().map(|m| mask(m)).collect();
    let m = g.edge_count() as u32;
    let mut best = u32::MAX;
    for i in 0..pms.len() {
        for j in i..pms.len() {
            for k in j..pms.len() {
                best = best.min(m - (pms[i] | pms[j] | pms[k]).count_ones());
            }
        }
    }
    best as usize
}

/// Number of odd circuits in the complement of a perfect matching.
pub fn odd_circuits(g: &Graph, pm: &[usize]) -> usize {
    let n = g.vertex_count();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (e, &(a, b)) in g.edge_list().iter().enumerate() {
        if !pm.contains(&e) {
            adj[a].push((e, b));
            adj[b].push((e, a));
        }
    }
    let mut seen = vec![false; n];
    let mut odd = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            len += 1;
            for &(_, w) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        // every vertex has degree 2 in the complement, so components are circuits
        odd += len % 2;
    }
    odd
}

pub fn oddness(g: &Graph) -> usize {
    perfect_matchings(g).iter().map(|m| odd_circuits(g, m)).min().unwrap()
}

/// Least intersection over pairs of perfect matchings, equal pairs included.
pub fn density(g: &Graph) -> usize {
    let pms: Vec<u128> = perfect_matchings(g).iter().map(|m| mask(m)).collect();
    let mut best = u32::MAX;
    for i in 0..pms.len() {
        for j in i..pms.len() {
            best = best.min((pms[i] & pms[j]).count_ones());
        }
    }
    best as usize
}

/// Proper 3-edge-colourability by exhaustive assignment with pruning at
/// fully coloured vertices.
pub fn colourable(g: &Graph) -> bool {
    let edges = g.edge_list();
    let n = g.vertex_count();
    let mut inc: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, &(a, b)) in edges.iter().enumerate() {
        inc[a].push(e);
        inc[b].push(e);
    }
    fn rec(i: usize, c: &mut Vec<u8>, edges: &[(usize, usize)], inc: &[Vec<usize>]) -> bool {
        if i == c.len() {
            return true;
        }
        let (a, b) = edges[i];
        if a == b {
            return false;
        }
        for col in 1..=3u8 {
            let clash = [a, b]
                .iter()
                .any(|&v| inc[v].iter().any(|&f| f < i && c[f] == col));
            if !clash {
                c[i] = col;
                if rec(i + 1, c, edges, inc) {
                    return true;
                }
            }
        }
        c[i] = 0;
        false
    }
    rec(0, &mut vec![0; edges.len()], edges, &inc)
}

/// Length of a shortest circuit by BFS from every vertex (loops and
/// parallel edges included).
pub fn girth(g: &Graph) -> usize {
    let n = g.vertex_count();
    let edges = g.edge_list();
    let mut best = usize::MAX;
    for (e, &(a, b)) in edges.iter().enumerate() {
        if a == b {
            return 1;
        }
        // shortest a-b path avoiding e
        let mut dist = vec![usize::MAX; n];
        dist[a] = 0;
        let mut queue = std::collections::VecDeque::from([a]);
        while let Some(v) = queue.pop_front() {
            for (f, &(x, y)) in edges.iter().enumerate() {
                if f == e || (x != v && y != v) {
                    continue;
                }
                let w = if x == v { y } else { x };
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        if dist[b] != usize::MAX {
            best = best.min(dist[b] + 1);
        }
    }
    best
}

/// Vertices where the edge values do not XOR to zero.
pub fn kirchhoff_failures(g: &Graph, colours: &[u8]) -> Vec<usize> {
    let mut sum = vec![0u8; g.vertex_count()];
    for (e, &(a, b)) in g.edge_list().iter().enumerate() {
        sum[a] ^= colours[e];
        sum[b] ^= colours[e];
    }
    (0..sum.len()).filter(|&v| sum[v] != 0).collect()
}

/// Whether deleting `removed` leaves a forest, via union-find on the
/// remaining edges of a vertex/edge list.
pub fn is_forest_without(n: usize, edges: &[(usize, usize)], removed: &[usize]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for &(a, b) in edges {
        if removed.contains(&a) || removed.contains(&b) {
            continue;
        }
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}
