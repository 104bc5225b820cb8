//! Superposition construction of cyclically 5-edge-connected snarks of
//! prescribed girth with oddness two.
//!
//! Pipeline: three Petersen graphs give the graph `K` with four 5-valent
//! vertices `z1..z4`; each `zi` is replaced by the 5-pole `M_g` (a cage
//! minus a 2-path), and deleting `u1`, `u3` yields the (3,3)-pole `F_g`.
//! In the Petersen base, four edges of a 6-cycle become copies of `F_g`,
//! four cycle vertices become copies of `M_g` and the remaining two become
//! copies of the (3,3,1)-pole `Z`.
//!
//! When `M_g` is colourable, every junction is wired by matching colours
//! of precomputed colourings, which yields a colouring of `G - {u, v}`.

use serde::{Deserialize, Serialize};

use crate::assembly::{substitute_edge_mapped, substitute_vertex_mapped, Assembled};
use crate::cages::{self, CageEntry};
use crate::colour::{BoundaryVector, Colour, ColourPermutation};
use crate::colouring::{boundary_of, find_colouring, find_flow, residual_support, EdgeColouring};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::multipole::{Edge, HalfEdge, Multipole};
use crate::named;
use crate::search::{Budget, Outcome};

/// Fixed vertex choices in the standard Petersen labelling (outer cycle
/// `0..5`, spokes `i, i+5`, inner pentagram `i+5, (i+2)%5+5`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labelling {
    /// `(u, v, w)` chosen in the first and third copy.
    pub triple: [usize; 3],
    /// The edges `x1x2` and `x3x4` of the second copy.
    pub x_edges: [[usize; 2]; 2],
    /// The base 6-cycle `v0..v5`; edge `e_i` joins `v_i` and `v_{i+1}`.
    pub base_cycle: [usize; 6],
}

impl Default for Labelling {
    fn default() -> Self {
        Labelling {
            triple: [0, 2, 8],
            x_edges: [[0, 1], [3, 8]],
            base_cycle: [0, 1, 2, 3, 8, 5],
        }
    }
}

/// Cycle positions whose edges become superedges.
pub const SUPEREDGE_POSITIONS: [usize; 4] = [1, 2, 4, 5];
/// Cycle positions whose vertices become copies of `Z`.
pub const ZED_POSITIONS: [usize; 2] = [2, 5];
/// Cycle positions whose vertices become copies of `M_g`.
pub const MG_POSITIONS: [usize; 4] = [0, 1, 3, 4];

fn construction(msg: impl Into<String>) -> Error {
    Error::Construction(msg.into())
}

/// The tree left by the base cycle: its centre `v` and the leaf `u`
/// adjacent to the `Z` positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseTree {
    pub centre: usize,
    pub u: usize,
}

impl Labelling {
    /// Checks every property the construction relies on and returns the
    /// derived tree vertices.
    pub fn validate(&self) -> Result<BaseTree> {
        let p = named::petersen();
        let dist = |a: usize, b: usize| p.distance(a, b);
        let t = self.triple;
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            if dist(t[i], t[j]) != Some(2) {
                return Err(construction(format!("triple {t:?} is not at pairwise distance 2")));
            }
        }
        if !p.is_decycling(&t) {
            return Err(construction(format!("triple {t:?} is not decycling")));
        }
        let [[x1, x2], [x3, x4]] = self.x_edges;
        for [a, b] in self.x_edges {
            if dist(a, b) != Some(1) {
                return Err(construction(format!("{a}{b} is not an edge")));
            }
        }
        for a in [x1, x2] {
            for b in [x3, x4] {
                if dist(a, b) != Some(2) {
                    return Err(construction(format!("x vertices {a} and {b} are not at distance 2")));
                }
            }
        }
        if !p.is_decycling(&[x1, x2, x3, x4]) {
            return Err(construction("x vertices are not decycling"));
        }
        let c = self.base_cycle;
        let mut seen = [false; 10];
        for i in 0..6 {
            if c[i] >= 10 || std::mem::replace(&mut seen[c[i]], true) {
                return Err(construction(format!("base cycle {c:?} repeats or leaves the graph")));
            }
            if dist(c[i], c[(i + 1) % 6]) != Some(1) {
                return Err(construction(format!("base cycle {c:?} is not a cycle")));
            }
        }
        let off: Vec<usize> = (0..10).filter(|x| !c.contains(x)).collect();
        let neighbours = |x: usize| -> Vec<usize> { p.incidences(x).iter().map(|i| i.neighbour).collect() };
        let centre = off
            .iter()
            .copied()
            .find(|&x| neighbours(x).iter().all(|y| off.contains(y)))
            .ok_or_else(|| construction("edges off the base cycle do not form a star-centred tree"))?;
        let (v2, v5) = (c[ZED_POSITIONS[0]], c[ZED_POSITIONS[1]]);
        let u = neighbours(centre)
            .into_iter()
            .find(|&y| {
                let n = neighbours(y);
                n.contains(&v2) && n.contains(&v5)
            })
            .ok_or_else(|| construction("no tree leaf is adjacent to both Z positions"))?;
        if !p.is_decycling(&MG_POSITIONS.map(|i| c[i])) {
            return Err(construction("supervertex positions are not decycling"));
        }
        Ok(BaseTree { centre, u })
    }
}

/// The graph `K`: 26 vertices, four of them 5-valent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KGraph {
    pub multipole: Multipole,
    pub z: [usize; 4],
    pub u1: usize,
    pub u3: usize,
}

impl KGraph {
    /// `W ∪ {u1, u3}`.
    pub fn u_set(&self) -> Vec<usize> {
        let mut u = self.z.to_vec();
        u.extend([self.u1, self.u3]);
        u
    }
}

/// Builds `K` from `P1 ∪ (P2 - {x1x2, x3x4}) ∪ P3`, identifying `v1~x1`,
/// `w1~x2`, `v3~x3`, `w3~x4`. Vertices: `P1` as `0..10`, the six remaining
/// vertices of `P2` as `10..16`, `P3` as `16..26`.
pub fn build_k(lab: &Labelling) -> Result<KGraph> {
    lab.validate()?;
    let p = named::petersen();
    let [u, v, w] = lab.triple;
    let [[x1, x2], [x3, x4]] = lab.x_edges;
    let xs = [x1, x2, x3, x4];
    let mut p2 = [usize::MAX; 10];
    let kept: Vec<usize> = (0..10).filter(|x| !xs.contains(x)).collect();
    for (i, &x) in kept.iter().enumerate() {
        p2[x] = 10 + i;
    }
    let z = [v, w, 16 + v, 16 + w];
    for (x, target) in xs.iter().zip(z) {
        p2[*x] = target;
    }
    let mut edges = Vec::new();
    for &(a, b) in p.edge_list() {
        edges.push((a, b));
        edges.push((16 + a, 16 + b));
        let removed = [[a, b], [b, a]].iter().any(|e| lab.x_edges.contains(e));
        if !removed {
            edges.push((p2[a], p2[b]));
        }
    }
    let k = KGraph {
        multipole: Multipole::from_edge_list(26, &edges)?,
        z,
        u1: u,
        u3: 16 + u,
    };
    let degrees = k.multipole.degrees();
    if k.z.iter().any(|&z| degrees[z] != 5) || degrees.iter().filter(|&&d| d == 3).count() != 22 {
        return Err(construction("K does not have four 5-valent vertices"));
    }
    if !k.multipole.is_decycling(&k.u_set()) {
        return Err(construction("U is not decycling in K"));
    }
    Ok(k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PathRole {
    Endpoint,
    Midpoint,
}

/// `M_g`: a cubic graph minus a path of length 2, as a 5-pole with one
/// connector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FivePole {
    pub multipole: Multipole,
    /// The removed path `p q r` with midpoint `q`.
    pub path: [usize; 3],
    /// For each connector end, whether it hung from an endpoint or the
    /// midpoint of the path.
    pub roles: Vec<PathRole>,
}

/// Removes the canonical 2-path: the least-index edge together with the
/// least-index edge extending it.
pub fn make_mg(l: &Graph) -> Result<FivePole> {
    if l.girth()? < 5 {
        return Err(construction("M_g needs a cage of girth at least 5"));
    }
    let (a, b) = l.endpoints(0);
    let ext = (1..l.edge_count())
        .find(|&e| {
            let (x, y) = l.endpoints(e);
            x != y && [x, y].iter().any(|t| *t == a || *t == b)
        })
        .ok_or_else(|| construction("cage has no 2-path"))?;
    let (x, y) = l.endpoints(ext);
    let path = if x == b || y == b {
        [a, b, if x == b { y } else { x }]
    } else {
        [if x == a { y } else { x }, a, b]
    };
    let (m, _) = l.multipole().remove_vertices(&path)?;
    // the two path edges end up with both ends free; drop them
    let mut index = vec![None; m.edge_count()];
    let mut edges = Vec::new();
    for (i, e) in m.edges().iter().enumerate() {
        if e.ends.iter().any(|x| x.vertex().is_some()) {
            index[i] = Some(edges.len());
            edges.push(*e);
        }
    }
    let mut ends = Vec::new();
    let mut roles = Vec::new();
    for (i, c) in m.connectors().iter().enumerate() {
        let role = if i == 1 { PathRole::Midpoint } else { PathRole::Endpoint };
        for h in c {
            if let Some(e) = index[h.edge] {
                ends.push(HalfEdge::new(e, h.side));
                roles.push(role);
            }
        }
    }
    let multipole = Multipole::new(m.vertex_count(), edges, vec![ends])?;
    Ok(FivePole { multipole, path, roles })
}

/// The (3,3,1)-pole `Z`: a vertex with one dangling edge in each connector
/// and two isolated edges joining the two connectors of size 3.
pub fn build_z() -> Multipole {
    let mut edges = vec![Edge::dangling(0); 3];
    edges.extend([Edge::isolated(), Edge::isolated()]);
    let h = HalfEdge::new;
    Multipole::from_parts(
        1,
        edges,
        vec![
            vec![h(0, 1), h(3, 0), h(4, 0)],
            vec![h(1, 1), h(3, 1), h(4, 1)],
            vec![h(2, 1)],
        ],
    )
}

/// Finds a colour permutation carrying `boundary` onto the multiset
/// `incident`, and a bijection sending incidence `j` to a boundary
/// position of the same (permuted) colour.
fn match_colours(incident: &[Colour], boundary: &BoundaryVector) -> Option<(ColourPermutation, Vec<usize>)> {
    let mut want: Vec<Colour> = incident.to_vec();
    want.sort();
    let pi = ColourPermutation::all().into_iter().find(|p| {
        let mut got = boundary.permuted(p).0;
        got.sort();
        got == want
    })?;
    let image = boundary.permuted(&pi).0;
    let mut used = vec![false; image.len()];
    let assignment = incident
        .iter()
        .map(|c| {
            let k = (0..image.len()).find(|&k| !used[k] && image[k] == *c).expect("same multiset");
            used[k] = true;
            k
        })
        .collect();
    Some((pi, assignment))
}

fn permute(c: &EdgeColouring, pi: &ColourPermutation) -> EdgeColouring {
    EdgeColouring(c.0.iter().map(|&x| pi.apply(x)).collect())
}

/// A multipole under assembly, with a provenance tag per vertex and an
/// optional colouring carried along.
struct Tracked<T> {
    m: Multipole,
    tags: Vec<T>,
    colouring: Option<EdgeColouring>,
}

impl<T: Clone + PartialEq> Tracked<T> {
    fn position(&self, tag: &T) -> Result<usize> {
        self.tags
            .iter()
            .position(|t| t == tag)
            .ok_or_else(|| construction("vertex lost during assembly"))
    }

    fn absorb(&mut self, out: Assembled, removed: Option<usize>, sup_tags: Vec<T>, sup_colouring: Option<EdgeColouring>) -> Result<()> {
        self.colouring = match (&self.colouring, sup_colouring) {
            (Some(a), Some(b)) => Some(out.transfer(a, &b)?),
            _ => None,
        };
        if let Some(v) = removed {
            self.tags.remove(v);
        }
        self.tags.extend(sup_tags);
        self.m = out.multipole;
        Ok(())
    }

    fn incident_colours(&self, v: usize) -> Option<Vec<Colour>> {
        let c = self.colouring.as_ref()?;
        Some(self.m.incidence()[v].iter().map(|h| c.0[h.edge]).collect())
    }
}

/// The superedge `F_g` with connectors `S1`, `S2` (ends formerly at `u1`
/// and `u3`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Superedge {
    pub multipole: Multipole,
    /// Per `zi`, the `M_g` connector position glued to each incidence.
    pub attachments: [Vec<usize>; 4],
    /// Vertex sets of the four copies of `M_g`.
    pub blocks: Vec<Vec<usize>>,
    /// A colouring whose connectors both carry the colours 1, 1, 2.
    pub colouring: Option<EdgeColouring>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum FTag {
    K(usize),
    M(usize),
}

const ARRANGEMENTS: [[u8; 3]; 3] = [[1, 1, 2], [1, 2, 1], [2, 1, 1]];

/// Builds `F_g = K_M - {u1, u3}`. Without explicit attachments, and when
/// `M_g` is colourable, a flow of `K - {u1, u3}` with connectors coloured
/// 1, 1, 2 is found first and each copy of `M_g` is glued by matching
/// colours; otherwise the identity attachment is used. `rotation` shifts
/// the order in which the connector arrangements are tried.
pub fn build_fg(
    k: &KGraph,
    mg: &FivePole,
    attachments: Option<&[Vec<usize>; 4]>,
    rotation: usize,
    budget: Budget,
) -> Result<Superedge> {
    let (kp, map) = k.multipole.remove_vertices(&[k.u1, k.u3])?;
    let mu = match find_colouring(&mg.multipole, None, None, budget)? {
        Outcome::Found(c) => Some(c),
        Outcome::NotFound => None,
        Outcome::Undecided => return Err(construction("budget exhausted colouring M_g")),
    };
    let mut flow = None;
    if mu.is_some() {
        let mut candidates = Vec::new();
        for a in ARRANGEMENTS {
            for b in ARRANGEMENTS {
                let v: Vec<u8> = a.iter().chain(&b).copied().collect();
                candidates.push(BoundaryVector::from_values(&v).expect("colours"));
            }
        }
        let n = candidates.len();
        candidates.rotate_left(rotation % n);
        for b in &candidates {
            match find_flow(&kp, Some(b), None, budget)? {
                Outcome::Found(f) => {
                    flow = Some(EdgeColouring(f.0));
                    break;
                }
                Outcome::NotFound => {}
                Outcome::Undecided => return Err(construction("budget exhausted searching the K flow")),
            }
        }
        if flow.is_none() {
            return Err(construction("no flow of K - {u1,u3} with connectors 1,1,2"));
        }
    }
    let mu_boundary = mu.as_ref().map(|c| boundary_of(&mg.multipole, c));
    let mut t = Tracked {
        m: kp,
        tags: map.iter().enumerate().filter(|(_, x)| x.is_some()).map(|(i, _)| FTag::K(i)).collect(),
        colouring: flow,
    };
    let ends = mg.multipole.connector(0)?.to_vec();
    let mut used: Vec<Vec<usize>> = Vec::new();
    for (i, &z) in k.z.iter().enumerate() {
        let v = t.position(&FTag::K(z))?;
        let derived = match (t.incident_colours(v), &mu_boundary) {
            (Some(inc), Some(b)) => match_colours(&inc, b),
            _ => None,
        };
        let perm: Vec<usize> = match (attachments, &derived) {
            (Some(a), _) => a[i].clone(),
            (None, Some((_, d))) => d.clone(),
            (None, None) => (0..ends.len()).collect(),
        };
        if perm.len() != ends.len() || perm.iter().any(|&j| j >= ends.len()) {
            return Err(Error::InvalidPermutation(format!("attachment {perm:?}")));
        }
        let sup_colouring = match (&derived, &mu) {
            (Some((pi, d)), Some(mu)) if *d == perm => Some(permute(mu, pi)),
            _ => None,
        };
        let assignment: Vec<HalfEdge> = perm.iter().map(|&j| ends[j]).collect();
        let out = substitute_vertex_mapped(&t.m, v, &mg.multipole, &assignment)?;
        t.absorb(out, Some(v), vec![FTag::M(i); mg.multipole.vertex_count()], sup_colouring)?;
        used.push(perm);
    }
    let attachments: [Vec<usize>; 4] = used.try_into().expect("four attachments");
    if let Some(c) = &t.colouring {
        if !residual_support(&t.m, c.colours()).is_empty() {
            return Err(construction("superedge colouring is not proper"));
        }
    }
    let blocks = (0..4)
        .map(|i| (0..t.tags.len()).filter(|&v| t.tags[v] == FTag::M(i)).collect())
        .collect();
    Ok(Superedge {
        multipole: t.m,
        attachments,
        blocks,
        colouring: t.colouring,
    })
}

/// Where a vertex of the final graph came from: a base vertex (itself, or
/// the interior of the supervertex replacing it) or a superedge copy
/// (indexed in [`SUPEREDGE_POSITIONS`] order).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Part {
    Vertex(usize),
    Superedge(usize),
}

/// Construction inputs. Unset wirings are derived during the build and
/// filled into the echoed plan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionPlan {
    pub girth: usize,
    /// Registry name or path to a graph file.
    pub cage: String,
    /// Rotates the order in which superedge connector arrangements are
    /// tried. The build has no other source of variation.
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub labelling: Labelling,
    pub superedge_attachments: Option<[Vec<usize>; 4]>,
    /// Per `Z` copy, the position in `Z`'s connector ends glued to each
    /// incidence.
    pub zed_assignments: Option<[Vec<usize>; 2]>,
    /// Per `M_g` copy (base positions 0, 1, 3, 4).
    pub mg_assignments: Option<[Vec<usize>; 4]>,
}

impl ConstructionPlan {
    pub fn new(girth: usize, cage: impl Into<String>) -> Self {
        ConstructionPlan {
            girth,
            cage: cage.into(),
            seed: 0,
            labelling: Labelling::default(),
            superedge_attachments: None,
            zed_assignments: None,
            mg_assignments: None,
        }
    }

    /// The registry cage for the girth.
    pub fn for_girth(girth: usize) -> Result<Self> {
        check_girth(girth)?;
        let cage = cages::for_girth(girth).ok_or_else(|| {
            construction(format!(
                "no registry cage of girth {girth}; supply a cubic graph file with --cage"
            ))
        })?;
        Ok(ConstructionPlan::new(girth, cage))
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Unsupported(e.to_string()))
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| {
            let (line, column) = e
                .span()
                .map(|s| {
                    let before = &text[..s.start];
                    let line = before.matches('\n').count() + 1;
                    (line, s.start - before.rfind('\n').map_or(0, |i| i + 1) + 1)
                })
                .unwrap_or((1, 1));
            Error::Parse {
                line,
                column,
                message: e.message().to_string(),
            }
        })
    }

    pub fn resolve_cage(&self) -> Result<CageEntry> {
        match cages::lookup(&self.cage) {
            Ok(c) => Ok(c),
            Err(_) if std::path::Path::new(&self.cage).exists() => {
                let g = crate::io::read_graph(std::path::Path::new(&self.cage))?;
                CageEntry::from_graph(self.cage.clone(), g)
            }
            Err(e) => Err(e),
        }
    }
}

pub const GIRTH_FIVE_GUIDANCE: &str = "girth 5 is not built here: cyclically 5-edge-connected snarks of girth 5 \
are available from known infinite families such as rotation snarks and permutation snarks";

fn check_girth(g: usize) -> Result<()> {
    match g {
        5 => Err(Error::Unsupported(GIRTH_FIVE_GUIDANCE.into())),
        0..=4 => Err(Error::Unsupported(format!("girth {g} is below 5"))),
        _ => Ok(()),
    }
}

/// A finished build.
#[derive(Clone, Debug)]
pub struct Construction {
    /// The plan with every wiring filled in.
    pub plan: ConstructionPlan,
    pub cage: CageEntry,
    pub k: KGraph,
    pub mg: FivePole,
    pub superedge: Superedge,
    pub graph: Graph,
    pub tree: BaseTree,
    /// Final ids of the base vertices `u` and `v`.
    pub u: usize,
    pub v: usize,
    pub parts: Vec<Part>,
    /// Proper at every vertex except `u` and `v`.
    pub near_colouring: Option<EdgeColouring>,
}

/// Runs the whole pipeline. Even girth with a bipartite cage also yields
/// the near-colouring; odd girth yields the snark alone.
pub fn build(plan: &ConstructionPlan, budget: Budget) -> Result<Construction> {
    check_girth(plan.girth)?;
    let cage = plan.resolve_cage()?;
    if cage.girth != plan.girth {
        return Err(construction(format!(
            "cage {} has girth {}, plan asks for {}",
            cage.name, cage.girth, plan.girth
        )));
    }
    let lab = &plan.labelling;
    let tree = lab.validate()?;
    let k = build_k(lab)?;
    let mg = make_mg(&cage.graph)?;
    if mg.multipole.girth() != Some(plan.girth) {
        return Err(construction(format!(
            "cage {} loses every {}-cycle when the 2-path is removed",
            cage.name, plan.girth
        )));
    }
    let superedge = build_fg(
        &k,
        &mg,
        plan.superedge_attachments.as_ref(),
        plan.seed as usize,
        budget,
    )?;
    let mu = match find_colouring(&mg.multipole, None, None, budget)? {
        Outcome::Found(c) => Some(c),
        _ => None,
    };
    let c = lab.base_cycle;
    let base = named::petersen();
    let mut t: Tracked<Part> = Tracked {
        m: base.multipole().clone(),
        tags: (0..10).map(Part::Vertex).collect(),
        colouring: None,
    };
    if cage.bipartite && superedge.colouring.is_some() && mu.is_some() {
        let (relaxed, _, order) = base.multipole().remove_vertices_mapped(&[tree.u, tree.centre])?;
        if let Outcome::Found(x) = find_colouring(&relaxed, None, None, budget)? {
            t.colouring = Some(EdgeColouring(order.iter().map(|&e| x.0[e]).collect()));
        }
    }
    let edge_between = |t: &Tracked<Part>, a: usize, b: usize| -> Result<usize> {
        let (pa, pb) = (t.position(&Part::Vertex(a))?, t.position(&Part::Vertex(b))?);
        t.m.edges()
            .iter()
            .position(|e| e.endpoints().is_some_and(|(x, y)| (x, y) == (pa.min(pb), pa.max(pb))))
            .ok_or_else(|| construction(format!("base edge {a}{b} missing")))
    };
    let is_zed = |x: usize| ZED_POSITIONS.iter().any(|&i| c[i] == x);
    for (k_idx, &i) in SUPEREDGE_POSITIONS.iter().enumerate() {
        let (a, b) = (c[i], c[(i + 1) % 6]);
        let (mside, zside) = if is_zed(a) { (b, a) } else { (a, b) };
        let e = edge_between(&t, mside, zside)?;
        let (ca, cb) = if t.position(&Part::Vertex(mside))? < t.position(&Part::Vertex(zside))? {
            (0, 1)
        } else {
            (1, 0)
        };
        // total flow 2 maps to the base colour, the doubled colour 1 to the
        // colour of the tree edge at the Z end
        let sup_colouring = match (&t.colouring, &superedge.colouring) {
            (Some(xi), Some(phi)) => {
                let a_col = xi.0[e];
                let b_col = xi.0[edge_between(&t, zside, tree.u)?];
                let rest = a_col + b_col;
                let pi = ColourPermutation::from_images([b_col, a_col, rest])
                    .ok_or_else(|| construction("base colouring is not proper at a Z position"))?;
                Some(permute(phi, &pi))
            }
            _ => None,
        };
        let out = substitute_edge_mapped(&t.m, e, &superedge.multipole, ca, cb)?;
        let n = superedge.multipole.vertex_count();
        t.absorb(out, None, vec![Part::Superedge(k_idx); n], sup_colouring)?;
    }
    let z = build_z();
    let z_ends = z.connector_ends();
    let mut zed_used = Vec::new();
    for (j, &i) in ZED_POSITIONS.iter().enumerate() {
        let x = c[i];
        let vx = t.position(&Part::Vertex(x))?;
        let inc = t.m.incidence()[vx].clone();
        let other = |h: &HalfEdge| -> Part {
            let end = t.m.edges()[h.edge].ends[1 - h.side];
            t.tags[end.vertex().expect("closed graph")]
        };
        let mut copies: Vec<usize> = inc
            .iter()
            .filter_map(|h| match other(h) {
                Part::Superedge(k) => Some(k),
                _ => None,
            })
            .collect();
        copies.sort_unstable();
        copies.dedup();
        if copies.len() != 2 {
            return Err(construction("Z position must meet two superedges"));
        }
        let colours = t.incident_colours(vx);
        let derived: Vec<usize> = {
            // connector slots: [dangling, isolated, isolated] per copy, then the tree edge
            let mut next = [0usize; 2];
            let tree_colour = colours.as_ref().and_then(|cs| {
                inc.iter()
                    .zip(cs)
                    .find(|(h, _)| matches!(other(h), Part::Vertex(_)))
                    .map(|(_, c)| *c)
            });
            inc.iter()
                .enumerate()
                .map(|(pos, h)| match other(h) {
                    Part::Superedge(k) => {
                        let side = usize::from(k == copies[1]);
                        let doubled = match (&colours, tree_colour) {
                            (Some(cs), Some(b)) => cs[pos] == b,
                            _ => false,
                        };
                        let slot = if colours.is_some() {
                            if doubled {
                                next[side] = next[side].max(1);
                                let s = next[side];
                                next[side] += 1;
                                s
                            } else {
                                0
                            }
                        } else {
                            let s = next[side];
                            next[side] += 1;
                            s
                        };
                        3 * side + slot
                    }
                    Part::Vertex(_) => 6,
                })
                .collect()
        };
        let perm = match &plan.zed_assignments {
            Some(a) => a[j].clone(),
            None => derived.clone(),
        };
        if perm.len() != z_ends.len() || perm.iter().any(|&p| p >= z_ends.len()) {
            return Err(Error::InvalidPermutation(format!("Z assignment {perm:?}")));
        }
        let sup_colouring = match &colours {
            Some(cs) if perm == derived => {
                let mut zc = vec![Colour::ZERO; 5];
                for (pos, &slot) in perm.iter().enumerate() {
                    let end = z_ends[slot];
                    zc[end.edge] = cs[pos];
                }
                Some(EdgeColouring(zc))
            }
            _ => None,
        };
        let assignment: Vec<HalfEdge> = perm.iter().map(|&p| z_ends[p]).collect();
        let out = substitute_vertex_mapped(&t.m, vx, &z, &assignment)?;
        t.absorb(out, Some(vx), vec![Part::Vertex(x)], sup_colouring)?;
        zed_used.push(perm);
    }
    let mu_boundary = mu.as_ref().map(|m| boundary_of(&mg.multipole, m));
    let m_ends = mg.multipole.connector(0)?.to_vec();
    let mut mg_used = Vec::new();
    for (j, &i) in MG_POSITIONS.iter().enumerate() {
        let x = c[i];
        let vx = t.position(&Part::Vertex(x))?;
        let derived = match (t.incident_colours(vx), &mu_boundary) {
            (Some(inc), Some(b)) => match_colours(&inc, b),
            _ => None,
        };
        let perm = match (&plan.mg_assignments, &derived) {
            (Some(a), _) => a[j].clone(),
            (None, Some((_, d))) => d.clone(),
            (None, None) => (0..m_ends.len()).collect(),
        };
        if perm.len() != m_ends.len() || perm.iter().any(|&p| p >= m_ends.len()) {
            return Err(Error::InvalidPermutation(format!("M_g assignment {perm:?}")));
        }
        let sup_colouring = match (&derived, &mu) {
            (Some((pi, d)), Some(mu)) if *d == perm => Some(permute(mu, pi)),
            _ => None,
        };
        let assignment: Vec<HalfEdge> = perm.iter().map(|&p| m_ends[p]).collect();
        let out = substitute_vertex_mapped(&t.m, vx, &mg.multipole, &assignment)?;
        let n = mg.multipole.vertex_count();
        t.absorb(out, Some(vx), vec![Part::Vertex(x); n], sup_colouring)?;
        mg_used.push(perm);
    }
    let u = t.position(&Part::Vertex(tree.u))?;
    let v = t.position(&Part::Vertex(tree.centre))?;
    let graph = Graph::new(t.m)?;
    let girth = graph.girth()?;
    if girth != plan.girth {
        return Err(construction(format!("built graph has girth {girth}, expected {}", plan.girth)));
    }
    if let Some(col) = &t.colouring {
        let support = residual_support(graph.multipole(), col.colours());
        let mut want = vec![u, v];
        want.sort_unstable();
        if support != want {
            return Err(construction(format!("near-colouring fails at {support:?}, expected {want:?}")));
        }
    }
    let mut echo = plan.clone();
    echo.superedge_attachments = Some(superedge.attachments.clone());
    echo.zed_assignments = Some(zed_used.try_into().expect("two Z copies"));
    echo.mg_assignments = Some(mg_used.try_into().expect("four M_g copies"));
    Ok(Construction {
        plan: echo,
        cage,
        k,
        mg,
        superedge,
        graph,
        tree,
        u,
        v,
        parts: t.tags,
        near_colouring: t.colouring,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::{boundary_spectrum, boundary_spectrum_blocked, find_nowhere_zero_flow, is_proper};

    #[test]
    fn default_labelling_is_valid() {
        let t = Labelling::default().validate().unwrap();
        assert_eq!(t, BaseTree { centre: 9, u: 7 });
        let mut bad = Labelling::default();
        bad.triple = [0, 1, 8];
        assert!(bad.validate().is_err());
    }

    #[test]
    fn k_has_26_vertices_and_no_flow() {
        let k = build_k(&Labelling::default()).unwrap();
        assert_eq!(k.multipole.vertex_count(), 26);
        assert!(k.multipole.is_decycling(&k.u_set()));
        assert_eq!(find_nowhere_zero_flow(&k.multipole, Budget::unlimited()), Outcome::NotFound);
    }

    #[test]
    fn heawood_five_pole() {
        let mg = make_mg(&named::heawood()).unwrap();
        assert_eq!(mg.multipole.vertex_count(), 11);
        assert_eq!(mg.multipole.connector_sizes(), vec![5]);
        assert_eq!(mg.roles.iter().filter(|r| **r == PathRole::Midpoint).count(), 1);
        assert_eq!(mg.multipole.girth(), Some(6));
    }

    #[test]
    fn zed_shape() {
        let z = build_z();
        assert_eq!(z.connector_sizes(), vec![3, 3, 1]);
        assert_eq!(z.free_end_count(), 7);
        assert!(z.validate().is_valid());
    }

    #[test]
    fn superedge_six_has_112_colouring() {
        let k = build_k(&Labelling::default()).unwrap();
        let mg = make_mg(&named::heawood()).unwrap();
        let f = build_fg(&k, &mg, None, 0, Budget::unlimited()).unwrap();
        assert_eq!(f.multipole.vertex_count(), 64);
        assert_eq!(f.multipole.connector_sizes(), vec![3, 3]);
        let c = f.colouring.as_ref().unwrap();
        assert!(is_proper(&f.multipole, c));
        let b = boundary_of(&f.multipole, c);
        assert_eq!(b.class_counts(), [4, 2, 0]);
        assert!(f.multipole.girth().unwrap() >= 6);
        let direct = boundary_spectrum(&f.multipole, Budget::unlimited()).unwrap();
        let blocked = boundary_spectrum_blocked(&f.multipole, &f.blocks, Budget::unlimited()).unwrap();
        assert_eq!(direct, blocked);
    }

    #[test]
    fn girth_six_build_has_near_colouring() {
        let plan = ConstructionPlan::for_girth(6).unwrap();
        let c = build(&plan, Budget::unlimited()).unwrap();
        assert_eq!(c.graph.vertex_count(), 306);
        assert_eq!(c.graph.girth().unwrap(), 6);
        assert!(c.near_colouring.is_some());
        assert_eq!(c.parts.len(), 306);
        let echoed = ConstructionPlan::from_toml(&c.plan.to_toml().unwrap()).unwrap();
        let again = build(&echoed, Budget::unlimited()).unwrap();
        assert_eq!(again.graph, c.graph);
    }

    #[test]
    fn girth_five_is_refused_with_guidance() {
        let e = build(&ConstructionPlan::new(5, "petersen"), Budget::unlimited()).unwrap_err();
        assert!(e.to_string().contains("rotation snarks"));
    }
}
