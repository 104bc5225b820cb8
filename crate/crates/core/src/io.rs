//! graph6, sparse6 and the native multipole text format, plus the small
//! JSON files that carry colourings and arrays alongside a graph checksum.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::colour::Colour;
use crate::colouring::EdgeColouring;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matchings::{EdgeSet, ThreeArray};
use crate::multipole::{Edge, End, HalfEdge, Multipole};

const G6_HEADER: &str = ">>graph6<<";
const S6_HEADER: &str = ">>sparse6<<";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Graph6,
    Sparse6,
    Native,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "graph6" | "g6" => Ok(Format::Graph6),
            "sparse6" | "s6" => Ok(Format::Sparse6),
            "native" | "multipole" | "mp" => Ok(Format::Native),
            _ => Err(Error::Unsupported(format!("unknown format {s:?}"))),
        }
    }
}

/// Guesses the format from the first non-blank, non-comment line.
pub fn detect(text: &str) -> Option<Format> {
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))?;
    if line.starts_with(':') || line.starts_with(S6_HEADER) {
        Some(Format::Sparse6)
    } else if line.starts_with("VERTICES") {
        Some(Format::Native)
    } else if line.starts_with(G6_HEADER) || line.bytes().all(|b| (63..=126).contains(&b)) {
        Some(Format::Graph6)
    } else {
        None
    }
}

fn encode_n(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for s in [12, 6, 0] {
            out.push(((n >> s) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for s in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> s) & 63) as u8 + 63);
        }
    }
}

/// Reads `N(n)`; returns `n` and the number of bytes consumed.
fn decode_n(bytes: &[u8], line: usize, offset: usize) -> Result<(usize, usize)> {
    let val = |i: usize| -> Result<usize> {
        match bytes.get(i) {
            Some(&b) if (63..=126).contains(&b) => Ok((b - 63) as usize),
            Some(_) => Err(Error::parse(line, offset + i + 1, "byte outside 63..=126")),
            None => Err(Error::parse(line, offset + i + 1, "truncated vertex count")),
        }
    };
    let fold = |from: usize, count: usize| -> Result<usize> {
        (from..from + count).try_fold(0usize, |acc, i| Ok((acc << 6) | val(i)?))
    };
    match (bytes.first(), bytes.get(1)) {
        (Some(126), Some(126)) => Ok((fold(2, 6)?, 8)),
        (Some(126), _) => Ok((fold(1, 3)?, 4)),
        (Some(_), _) => Ok((val(0)?, 1)),
        (None, _) => Err(Error::parse(line, offset + 1, "empty input")),
    }
}

fn pack_bits(bits: &[bool], pad: bool, out: &mut Vec<u8>) {
    for chunk in bits.chunks(6) {
        let mut x = 0u8;
        for i in 0..6 {
            let b = chunk.get(i).copied().unwrap_or(pad);
            x = (x << 1) | b as u8;
        }
        out.push(x + 63);
    }
}

fn unpack_bits(bytes: &[u8], line: usize, offset: usize) -> Result<Vec<bool>> {
    let mut bits = Vec::with_capacity(6 * bytes.len());
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::parse(line, offset + i + 1, "byte outside 63..=126"));
        }
        let x = b - 63;
        bits.extend((0..6).rev().map(|s| (x >> s) & 1 == 1));
    }
    Ok(bits)
}

/// graph6 encoding; only simple graphs are representable.
pub fn to_graph6(g: &Graph) -> Result<String> {
    if !g.is_simple() {
        return Err(Error::Unsupported(
            "graph6 cannot encode loops or parallel edges; use sparse6".into(),
        ));
    }
    let n = g.vertex_count();
    let mut adj = vec![false; n * n];
    for &(u, v) in g.edge_list() {
        adj[u * n + v] = true;
        adj[v * n + u] = true;
    }
    let bits: Vec<bool> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).map(|(i, j)| adj[i * n + j]).collect();
    let mut out = Vec::new();
    encode_n(n, &mut out);
    pack_bits(&bits, false, &mut out);
    Ok(String::from_utf8(out).expect("printable"))
}

fn parse_graph6_line(s: &str, line: usize) -> Result<Graph> {
    let (body, offset) = match s.strip_prefix(G6_HEADER) {
        Some(rest) => (rest, G6_HEADER.len()),
        None => (s, 0),
    };
    let bytes = body.as_bytes();
    let (n, used) = decode_n(bytes, line, offset)?;
    let need = (n * n.saturating_sub(1) / 2).div_ceil(6);
    let data = &bytes[used..];
    if data.len() != need {
        return Err(Error::parse(
            line,
            offset + used + data.len().min(need) + 1,
            format!("expected {need} adjacency bytes for {n} vertices, found {}", data.len()),
        ));
    }
    let bits = unpack_bits(data, line, offset + used)?;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[k] {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &edges)
}

fn bit_width(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// sparse6 encoding; loops and parallel edges are kept.
pub fn to_sparse6(g: &Graph) -> String {
    let n = g.vertex_count();
    let k = bit_width(n);
    let mut edges: Vec<(usize, usize)> = g.edge_list().iter().map(|&(u, v)| (u.max(v), u.min(v))).collect();
    edges.sort_unstable();
    let mut bits = Vec::new();
    let push = |bits: &mut Vec<bool>, b: bool, x: usize| {
        bits.push(b);
        bits.extend((0..k).rev().map(|s| (x >> s) & 1 == 1));
    };
    let mut cur = 0;
    for (v, u) in edges {
        if v == cur {
            push(&mut bits, false, u);
        } else if v == cur + 1 {
            push(&mut bits, true, u);
        } else {
            push(&mut bits, true, v);
            push(&mut bits, false, u);
        }
        cur = v;
    }
    let rem = (6 - bits.len() % 6) % 6;
    if k < 6 && n == 1 << k && cur + 2 == n && rem > k {
        bits.push(false);
    }
    let mut out = vec![b':'];
    encode_n(n, &mut out);
    pack_bits(&bits, true, &mut out);
    String::from_utf8(out).expect("printable")
}

fn parse_sparse6_line(s: &str, line: usize) -> Result<Graph> {
    let (body, offset) = match s.strip_prefix(S6_HEADER) {
        Some(rest) => (rest, S6_HEADER.len()),
        None => (s, 0),
    };
    let body = body
        .strip_prefix(':')
        .ok_or_else(|| Error::parse(line, offset + 1, "sparse6 must start with ':'"))?;
    let offset = offset + 1;
    let bytes = body.as_bytes();
    let (n, used) = decode_n(bytes, line, offset)?;
    let bits = unpack_bits(&bytes[used..], line, offset + used)?;
    let k = bit_width(n);
    let mut edges = Vec::new();
    let mut v = 0usize;
    let mut pos = 0;
    while pos + 1 + k <= bits.len() {
        let b = bits[pos];
        let x = bits[pos + 1..pos + 1 + k]
            .iter()
            .fold(0usize, |acc, &bit| (acc << 1) | bit as usize);
        pos += 1 + k;
        if b {
            v += 1;
        }
        if v >= n {
            break;
        }
        if x > v {
            v = x;
        } else {
            edges.push((x, v));
        }
    }
    Graph::from_edges(n, &edges)
}

/// Serializes a multipole in canonical form:
///
/// ```text
/// VERTICES 1
/// EDGES
/// 0 -
/// 0 -
/// 0 -
/// CONNECTORS
/// 0.1 1.1
/// 2.1
/// ```
///
/// Edge lines are in index order; `-` marks a free end. Each connector line
/// lists free ends as `edge.side`.
pub fn to_native(m: &Multipole) -> String {
    let m = m.clone().canonicalize().0;
    let end = |e: End| match e {
        End::Vertex(v) => v.to_string(),
        End::Free => "-".into(),
    };
    let mut out = format!("VERTICES {}\nEDGES\n", m.vertex_count());
    for e in m.edges() {
        out += &format!("{} {}\n", end(e.ends[0]), end(e.ends[1]));
    }
    if !m.connectors().is_empty() {
        out += "CONNECTORS\n";
        for c in m.connectors() {
            let line: Vec<String> = c.iter().map(HalfEdge::to_string).collect();
            out += &line.join(" ");
            out += "\n";
        }
    }
    out
}

pub fn parse_native(text: &str) -> Result<Multipole> {
    #[derive(PartialEq)]
    enum Section {
        Start,
        Edges,
        Connectors,
    }
    let mut section = Section::Start;
    let mut vertices = None;
    let mut edges = Vec::new();
    let mut connectors = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let col = |tok: &str| tok.as_ptr() as usize - raw.as_ptr() as usize + 1;
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some(&head) = tokens.first() else { continue };
        match head {
            "VERTICES" => {
                if vertices.is_some() {
                    return Err(Error::parse(line, col(head), "duplicate VERTICES"));
                }
                let tok = tokens
                    .get(1)
                    .ok_or_else(|| Error::parse(line, col(head) + 8, "missing vertex count"))?;
                vertices = Some(
                    tok.parse::<usize>()
                        .map_err(|_| Error::parse(line, col(tok), "bad vertex count"))?,
                );
            }
            "EDGES" if section == Section::Start => section = Section::Edges,
            "CONNECTORS" if section != Section::Connectors => section = Section::Connectors,
            _ if section == Section::Edges => {
                if tokens.len() != 2 {
                    return Err(Error::parse(line, col(head), "edge line needs two ends"));
                }
                let mut ends = [End::Free; 2];
                for (s, tok) in tokens.iter().enumerate() {
                    if *tok != "-" {
                        ends[s] = End::Vertex(
                            tok.parse()
                                .map_err(|_| Error::parse(line, col(tok), "bad vertex id"))?,
                        );
                    }
                }
                edges.push(Edge { ends });
            }
            _ if section == Section::Connectors => {
                let conn = tokens
                    .iter()
                    .map(|tok| {
                        let bad = || Error::parse(line, col(tok), "expected edge.side");
                        let (e, s) = tok.split_once('.').ok_or_else(bad)?;
                        Ok(HalfEdge::new(
                            e.parse().map_err(|_| bad())?,
                            s.parse().map_err(|_| bad())?,
                        ))
                    })
                    .collect::<Result<Vec<_>>>()?;
                connectors.push(conn);
            }
            _ => return Err(Error::parse(line, col(head), format!("unexpected {head:?}"))),
        }
    }
    let n = vertices.ok_or_else(|| Error::parse(1, 1, "missing VERTICES line"))?;
    Multipole::new(n, edges, connectors)
}

/// Every graph in a file: one per line for graph6 and sparse6, a single
/// graph for the native format.
pub fn parse_graphs(text: &str) -> Result<Vec<Graph>> {
    match detect(text) {
        Some(Format::Native) => Ok(vec![Graph::new(parse_native(text)?)?]),
        Some(f) => text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
            .map(|(i, l)| {
                let l = l.trim();
                let is_s6 = l.starts_with(':') || l.starts_with(S6_HEADER);
                match (f, is_s6) {
                    (_, true) => parse_sparse6_line(l, i + 1),
                    _ => parse_graph6_line(l, i + 1),
                }
            })
            .collect(),
        None => Err(Error::parse(1, 1, "unrecognised graph format")),
    }
}

/// Exactly one graph, in any supported format.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut all = parse_graphs(text)?;
    match all.len() {
        1 => Ok(all.remove(0)),
        0 => Err(Error::parse(1, 1, "no graph found")),
        k => Err(Error::parse(1, 1, format!("expected one graph, found {k}"))),
    }
}

pub fn format_graph(g: &Graph, f: Format) -> Result<String> {
    Ok(match f {
        Format::Graph6 => to_graph6(g)? + "\n",
        Format::Sparse6 => to_sparse6(g) + "\n",
        Format::Native => to_native(g.multipole()),
    })
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    parse_graph(&std::fs::read_to_string(path)?)
}

pub fn read_multipole(path: &Path) -> Result<Multipole> {
    let text = std::fs::read_to_string(path)?;
    match detect(&text) {
        Some(Format::Native) => parse_native(&text),
        _ => parse_graph(&text).map(Graph::into_multipole),
    }
}

pub fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// SHA-256 of the canonical native serialization.
pub fn checksum(m: &Multipole) -> String {
    hex(&Sha256::digest(to_native(m).as_bytes()))
}

pub fn graph_checksum(g: &Graph) -> String {
    checksum(g.multipole())
}

fn check_checksum(g: &Graph, declared: &str) -> Result<()> {
    let actual = graph_checksum(g);
    if actual != declared {
        return Err(Error::CertificateMismatch(format!(
            "graph checksum {actual} does not match file ({declared})"
        )));
    }
    Ok(())
}

/// A colouring (or near-colouring) of a specific graph, indexed by edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColouringFile {
    pub graph_checksum: String,
    pub colours: Vec<u8>,
    /// Vertices where the colouring is allowed to be improper; empty for a
    /// proper colouring.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub improper: Vec<usize>,
}

impl ColouringFile {
    pub fn new(g: &Graph, c: &EdgeColouring) -> Self {
        ColouringFile {
            graph_checksum: graph_checksum(g),
            colours: c.values(),
            improper: Vec::new(),
        }
    }

    /// A colouring proper everywhere except at `improper`.
    pub fn near(g: &Graph, c: &EdgeColouring, mut improper: Vec<usize>) -> Self {
        improper.sort_unstable();
        ColouringFile {
            improper,
            ..ColouringFile::new(g, c)
        }
    }

    /// Checks the checksum and that every entry is a colour in 1..=3.
    pub fn load(&self, g: &Graph) -> Result<EdgeColouring> {
        check_checksum(g, &self.graph_checksum)?;
        if self.colours.len() != g.edge_count() {
            return Err(Error::IllFormedColouring(format!(
                "{} colours for {} edges",
                self.colours.len(),
                g.edge_count()
            )));
        }
        self.colours
            .iter()
            .enumerate()
            .map(|(e, &c)| match Colour::new(c) {
                Some(c) if !c.is_zero() => Ok(c),
                _ => Err(Error::IllFormedColouring(format!("edge {e} has colour {c}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(EdgeColouring)
    }
}

/// A 3-array with its declared class sizes `|E0|..|E3|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrayFile {
    pub graph_checksum: String,
    pub members: [Vec<usize>; 3],
    pub classes: [usize; 4],
}

impl ArrayFile {
    pub fn new(g: &Graph, a: &ThreeArray) -> Self {
        ArrayFile {
            graph_checksum: graph_checksum(g),
            members: a.members().map(|m| m.to_vec()),
            classes: a.class_sizes(),
        }
    }

    /// Rejects files whose declared classes break `|E0| = |E2| + 2|E3|` or
    /// disagree with the members.
    pub fn load(&self, g: &Graph) -> Result<ThreeArray> {
        check_checksum(g, &self.graph_checksum)?;
        let [e0, _, e2, e3] = self.classes;
        if e0 != e2 + 2 * e3 || self.classes.iter().sum::<usize>() != g.edge_count() {
            return Err(Error::IllFormedColouring(format!(
                "declared classes {:?} violate the array bookkeeping",
                self.classes
            )));
        }
        for m in &self.members {
            if let Some(&e) = m.iter().find(|&&e| e >= g.edge_count()) {
                return Err(Error::NoSuchEdge(e));
            }
        }
        let members = self.members.clone().map(EdgeSet::from_edges);
        let a = ThreeArray::new(g, members)?;
        if a.class_sizes() != self.classes {
            return Err(Error::IllFormedColouring(format!(
                "declared classes {:?} differ from computed {:?}",
                self.classes,
                a.class_sizes()
            )));
        }
        Ok(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    /// Independent graph6 decoder over the raw bit string.
    fn oracle_graph6_edges(s: &str) -> Vec<(usize, usize)> {
        let b = s.as_bytes();
        let n = (b[0] - 63) as usize;
        let bits: Vec<u8> = b[1..]
            .iter()
            .flat_map(|x| (0..6).rev().map(move |i| ((x - 63) >> i) & 1))
            .collect();
        let mut out = Vec::new();
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if bits[k] == 1 {
                    out.push((i, j));
                }
                k += 1;
            }
        }
        out
    }

    #[test]
    fn petersen_graph6() {
        let g = parse_graph("IheA@GUAo").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (10, 15));
        assert_eq!(g.girth().unwrap(), 5);
        assert_eq!(oracle_graph6_edges("IheA@GUAo").len(), 15);
        let p = named::petersen();
        let s = to_graph6(&p).unwrap();
        let mut edges = oracle_graph6_edges(&s);
        edges.sort();
        let mut want: Vec<_> = p.edge_list().iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        want.sort();
        assert_eq!(edges, want);
    }

    #[test]
    fn k4_known_strings() {
        assert_eq!(to_graph6(&named::k4()).unwrap(), "C~");
        let k4 = parse_graph(":CcKI").unwrap();
        assert_eq!(k4.edge_count(), 6);
        assert!(k4.is_simple());
    }

    #[test]
    fn sparse6_parallel_edges_and_loops() {
        let theta = named::theta();
        let s = to_sparse6(&theta);
        let back = parse_graph(&s).unwrap();
        assert_eq!(back.edge_list(), theta.edge_list());
        for (name, g) in named::small_cubic_corpus() {
            let back = parse_graph(&to_sparse6(&g)).unwrap();
            assert_eq!(back.edge_list(), g.edge_list(), "{name}");
        }
        let looped = Graph::from_edges(2, &[(0, 0), (0, 1), (1, 1)]).unwrap();
        assert_eq!(parse_graph(&to_sparse6(&looped)).unwrap(), looped);
    }

    #[test]
    fn graph6_round_trip_and_multigraph_refusal() {
        for (name, g) in named::small_cubic_corpus() {
            match to_graph6(&g) {
                Ok(s) => assert_eq!(parse_graph(&s).unwrap().edge_list(), g.edge_list(), "{name}"),
                Err(_) => assert!(!g.is_simple()),
            }
        }
        assert!(to_graph6(&named::theta()).is_err());
    }

    #[test]
    fn native_round_trip() {
        let m = named::petersen().multipole().remove_vertices(&[0, 5]).unwrap().0;
        let text = to_native(&m);
        let back = parse_native(&text).unwrap();
        assert_eq!(back, m);
        assert_eq!(to_native(&back), text);
        assert_eq!(detect(&text), Some(Format::Native));
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_graph("I~~") {
            Err(Error::Parse { line: 1, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_native("VERTICES 1\nEDGES\n0 x\n") {
            Err(Error::Parse { line: 3, column: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn array_file_bookkeeping() {
        let g = named::petersen();
        let d = crate::matchings::defect(&g).unwrap();
        let f = ArrayFile::new(&g, &d.witness);
        assert_eq!(f.load(&g).unwrap(), d.witness);
        let mut bad = f.clone();
        bad.classes = [3, 9, 2, 1];
        assert!(bad.load(&g).is_err());
        let mut wrong = f;
        wrong.graph_checksum = "0".into();
        assert!(matches!(wrong.load(&g), Err(Error::CertificateMismatch(_))));
    }
}
