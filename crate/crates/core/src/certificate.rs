//! Certificates for superposition snarks and the bundle written next to a
//! built graph.
//!
//! Snarkness is certified by projection. Every vertex of the big graph is
//! tagged with the base vertex or base edge it came from. Given any
//! colouring of the big graph, each plain base edge takes the colour of
//! the unique edge joining the two parts, and each superedge copy
//! contributes its total flow. If every copy is a proper dipole this is a
//! nowhere-zero flow of the base graph, so an uncolourable base leaves the
//! big graph uncolourable too.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::colour::{BoundaryVector, Colour};
use crate::colouring::{boundary_spectrum, boundary_spectrum_blocked, is_colourable, residual_support, EdgeColouring};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io::graph_checksum;
use crate::measures::{cyclic_connectivity_at_least, shortest_cycle};
use crate::search::{Budget, Outcome};
use crate::superposition::{Construction, ConstructionPlan, Part, SUPEREDGE_POSITIONS};

/// One superedge copy: the base edge it replaces (the endpoint whose side
/// is the first connector comes first), optional blocks that speed up the
/// spectrum computation, and the spectrum itself.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperedgeWitness {
    pub base_edge: [usize; 2],
    #[serde(default)]
    pub blocks: Vec<Vec<usize>>,
    pub spectrum: Vec<BoundaryVector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnarkCertificate {
    pub base_vertices: usize,
    pub base_edges: Vec<[usize; 2]>,
    /// Origin of each vertex of the certified graph.
    pub parts: Vec<Part>,
    pub superedges: Vec<SuperedgeWitness>,
}

/// Outcome of [`certify_snark`]: valid iff `failures` is empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub failures: Vec<String>,
}

impl CertificateReport {
    pub fn valid(&self) -> bool {
        self.failures.is_empty()
    }
}

fn mismatch(msg: impl Into<String>) -> Error {
    Error::CertificateMismatch(msg.into())
}

/// Derives the certificate of a finished build.
pub fn snark_certificate(c: &Construction, budget: Budget) -> Result<SnarkCertificate> {
    let base = crate::named::petersen();
    let cycle = c.plan.labelling.base_cycle;
    let zed = |x: usize| crate::superposition::ZED_POSITIONS.iter().any(|&i| cycle[i] == x);
    let mut cert = SnarkCertificate {
        base_vertices: base.vertex_count(),
        base_edges: base.edge_list().iter().map(|&(a, b)| [a, b]).collect(),
        parts: c.parts.clone(),
        superedges: Vec::new(),
    };
    for (k, &i) in SUPEREDGE_POSITIONS.iter().enumerate() {
        let (a, b) = (cycle[i], cycle[(i + 1) % 6]);
        // the first connector of F_g faces the M_g side
        let base_edge = if zed(a) { [b, a] } else { [a, b] };
        // substitution keeps the relative order of a copy's vertices
        let members = members_of(&c.parts, k);
        if members.len() != c.superedge.multipole.vertex_count() {
            return Err(Error::Construction(format!("superedge copy {k} has the wrong size")));
        }
        let blocks = c
            .superedge
            .blocks
            .iter()
            .map(|b| b.iter().map(|&l| members[l]).collect())
            .collect();
        cert.superedges.push(SuperedgeWitness {
            base_edge,
            blocks,
            spectrum: Vec::new(),
        });
    }
    let (failures, sides) = classify(c.graph.edge_list(), &cert);
    if !failures.is_empty() {
        return Err(Error::Construction(failures.join("; ")));
    }
    for k in 0..cert.superedges.len() {
        let spectrum = match copy_spectrum(&c.graph, &cert, k, &sides[k], budget)? {
            Outcome::Found(s) => s,
            _ => return Err(Error::Construction("budget exhausted computing a superedge spectrum".into())),
        };
        cert.superedges[k].spectrum = spectrum;
    }
    Ok(cert)
}

fn members_of(parts: &[Part], k: usize) -> Vec<usize> {
    (0..parts.len()).filter(|&v| parts[v] == Part::Superedge(k)).collect()
}

/// Spectrum of copy `k` cut out of `g` as a dipole whose connectors are
/// `sides`.
fn copy_spectrum(
    g: &Graph,
    cert: &SnarkCertificate,
    k: usize,
    sides: &[Vec<usize>; 2],
    budget: Budget,
) -> Result<Outcome<Vec<BoundaryVector>>> {
    let members = members_of(&cert.parts, k);
    let local: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut blocks = Vec::new();
    for b in &cert.superedges[k].blocks {
        match b.iter().map(|v| local.get(v).copied()).collect::<Option<Vec<usize>>>() {
            Some(l) => blocks.push(l),
            None => return Err(mismatch(format!("a block of superedge {k} leaves the copy"))),
        }
    }
    let sub = g.multipole().induced(&members, sides)?;
    if blocks.is_empty() {
        boundary_spectrum(&sub, budget)
    } else {
        boundary_spectrum_blocked(&sub, &blocks, budget)
    }
}

/// Sorts every edge of the graph into the projection: edges inside a part,
/// edges realising a plain base edge, and edges on the two sides of a
/// superedge copy. Returns the violations and, per copy, the edges on the
/// side of each end of its base edge, in edge order.
fn classify(edges: &[(usize, usize)], cert: &SnarkCertificate) -> (Vec<String>, Vec<[Vec<usize>; 2]>) {
    let mut failures = Vec::new();
    let mut replaced: HashMap<[usize; 2], usize> = HashMap::new();
    for (k, w) in cert.superedges.iter().enumerate() {
        let key = sorted(w.base_edge);
        let available = cert.base_edges.iter().filter(|e| sorted(**e) == key).count();
        let used = replaced.entry(key).or_insert(0);
        *used += 1;
        if *used > available {
            failures.push(format!("superedge {k} sits on {:?}, which is not a free base edge", w.base_edge));
        }
    }
    let mut plain: BTreeMap<[usize; 2], usize> = BTreeMap::new();
    for e in &cert.base_edges {
        *plain.entry(sorted(*e)).or_insert(0) += 1;
    }
    for (key, n) in &replaced {
        if let Some(c) = plain.get_mut(key) {
            *c = c.saturating_sub(*n);
        }
    }
    let mut seen: BTreeMap<[usize; 2], usize> = BTreeMap::new();
    let mut sides: Vec<[Vec<usize>; 2]> = vec![[Vec::new(), Vec::new()]; cert.superedges.len()];
    for (e, &(a, b)) in edges.iter().enumerate() {
        match (cert.parts[a], cert.parts[b]) {
            (Part::Vertex(x), Part::Vertex(y)) if x == y => {}
            (Part::Vertex(x), Part::Vertex(y)) => {
                *seen.entry(sorted([x, y])).or_insert(0) += 1;
            }
            (Part::Superedge(k), Part::Superedge(l)) if k == l => {}
            (Part::Superedge(k), Part::Vertex(y)) | (Part::Vertex(y), Part::Superedge(k)) => {
                match cert.superedges[k].base_edge.iter().position(|&x| x == y) {
                    Some(s) => sides[k][s].push(e),
                    None => failures.push(format!(
                        "edge {e} joins superedge {k} to base vertex {y}, not an end of its base edge"
                    )),
                }
            }
            (Part::Superedge(k), Part::Superedge(l)) => {
                let (ek, el) = (cert.superedges[k].base_edge, cert.superedges[l].base_edge);
                let shared: Vec<usize> = ek.iter().copied().filter(|x| el.contains(x)).collect();
                if shared.len() != 1 {
                    failures.push(format!("edge {e} joins superedges {k} and {l} without a unique shared end"));
                    continue;
                }
                let x = shared[0];
                sides[k][ek.iter().position(|&y| y == x).expect("shared")].push(e);
                sides[l][el.iter().position(|&y| y == x).expect("shared")].push(e);
            }
        }
    }
    for (key, &want) in &plain {
        let got = seen.remove(key).unwrap_or(0);
        if got != want {
            failures.push(format!("base edge {key:?} is realised by {got} edges, expected {want}"));
        }
    }
    for (key, got) in seen {
        failures.push(format!("{got} edges join parts {key:?}, which are not adjacent in the base"));
    }
    (failures, sides)
}

/// Checks the certificate against `g`. Structural inconsistencies (wrong
/// lengths, unknown ids) are errors; failed checks are listed in the
/// report.
pub fn certify_snark(g: &Graph, cert: &SnarkCertificate, budget: Budget) -> Result<CertificateReport> {
    let mut report = CertificateReport::default();
    if cert.parts.len() != g.vertex_count() {
        return Err(mismatch(format!(
            "certificate tags {} vertices, graph has {}",
            cert.parts.len(),
            g.vertex_count()
        )));
    }
    let nb = cert.base_vertices;
    for p in &cert.parts {
        match *p {
            Part::Vertex(x) if x >= nb => {
                report.failures.push(format!("part {x} is not a base vertex"));
                return Ok(report);
            }
            Part::Superedge(k) if k >= cert.superedges.len() => {
                return Err(mismatch(format!("superedge {k} out of range")))
            }
            _ => {}
        }
    }
    let base = match Graph::from_edges(nb, &cert.base_edges.iter().map(|&[a, b]| (a, b)).collect::<Vec<_>>()) {
        Ok(b) => b,
        Err(e) => {
            report.failures.push(format!("base graph: {e}"));
            return Ok(report);
        }
    };
    if base.has_loop() {
        report.failures.push("base graph has a loop".into());
    }
    match is_colourable(base.multipole(), budget)? {
        Outcome::NotFound => {}
        Outcome::Found(_) => report.failures.push("base graph is colourable".into()),
        Outcome::Undecided => report.failures.push("base colourability undecided within budget".into()),
    }

    let (failures, sides) = classify(g.edge_list(), cert);
    report.failures.extend(failures);
    for (k, w) in cert.superedges.iter().enumerate() {
        if sides[k].iter().any(|s| s.is_empty()) {
            report.failures.push(format!("superedge {k} is not attached at both ends"));
            continue;
        }
        let spectrum = match copy_spectrum(g, cert, k, &sides[k], budget)? {
            Outcome::Found(s) => s,
            _ => {
                report.failures.push(format!("spectrum of superedge {k} undecided within budget"));
                continue;
            }
        };
        if spectrum != w.spectrum {
            report.failures.push(format!("stored spectrum of superedge {k} does not match"));
        }
        let first = sides[k][0].len();
        let zero: Vec<&BoundaryVector> = w
            .spectrum
            .iter()
            .chain(&spectrum)
            .filter(|b| b.0.len() < first || b.sum_range(0..first).is_zero())
            .collect();
        if !zero.is_empty() {
            report
                .failures
                .push(format!("superedge {k} admits zero total flow: {:?}", zero[0].values()));
        }
    }
    Ok(report)
}

fn sorted([a, b]: [usize; 2]) -> [usize; 2] {
    [a.min(b), a.max(b)]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GirthClaim {
    pub value: usize,
    /// Edges of a shortest circuit.
    pub cycle: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectivityClaim {
    pub at_least: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NearColouring {
    pub u: usize,
    pub v: usize,
    pub colours: Vec<Colour>,
}

/// Invariant values the bundle asserts once its certificates verify.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claims {
    pub snark: bool,
    pub oddness: Option<usize>,
    pub resistance: Option<usize>,
    pub defect_at_least: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bundle {
    pub graph_checksum: String,
    pub girth: GirthClaim,
    pub snark: SnarkCertificate,
    pub cyclic_connectivity: ConnectivityClaim,
    pub near_colouring: Option<NearColouring>,
    pub claims: Claims,
    pub plan: ConstructionPlan,
}

impl Bundle {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("bundle serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }
}

/// Assembles and self-checks the bundle of a build.
pub fn bundle(c: &Construction, budget: Budget) -> Result<Bundle> {
    let girth = c.graph.girth()?;
    let cycle = shortest_cycle(&c.graph).ok_or_else(|| Error::Construction("built graph is acyclic".into()))?;
    let near_colouring = c.near_colouring.as_ref().map(|col| NearColouring {
        u: c.u,
        v: c.v,
        colours: col.0.clone(),
    });
    let b = Bundle {
        graph_checksum: graph_checksum(&c.graph),
        girth: GirthClaim { value: girth, cycle },
        snark: snark_certificate(c, budget)?,
        cyclic_connectivity: ConnectivityClaim { at_least: 5 },
        claims: Claims {
            snark: true,
            oddness: near_colouring.as_ref().map(|_| 2),
            resistance: near_colouring.as_ref().map(|_| 2),
            defect_at_least: girth.div_ceil(2),
        },
        near_colouring,
        plan: c.plan.clone(),
    };
    Ok(b)
}

/// One line of a verification report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleReport {
    pub checks: Vec<Check>,
}

impl BundleReport {
    pub fn valid(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn push(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }
}

/// Re-checks every certificate in the bundle against `g`. A checksum
/// mismatch is an error, failed certificates are reported.
pub fn verify_bundle(g: &Graph, b: &Bundle, budget: Budget) -> Result<BundleReport> {
    let sum = graph_checksum(g);
    if sum != b.graph_checksum {
        return Err(mismatch(format!("graph checksum {sum} differs from bundle {}", b.graph_checksum)));
    }
    let mut r = BundleReport::default();

    let girth = g.girth()?;
    let cycle_ok = is_circuit(g, &b.girth.cycle) && b.girth.cycle.len() == b.girth.value;
    r.push(
        "girth",
        girth == b.girth.value && cycle_ok,
        format!("computed {girth}, claimed {}, witness circuit {}", b.girth.value, if cycle_ok { "ok" } else { "invalid" }),
    );

    let snark = certify_snark(g, &b.snark, budget)?;
    r.push(
        "snark",
        snark.valid(),
        if snark.valid() { "projection onto an uncolourable base verified".to_string() } else { snark.failures.join("; ") },
    );

    let k = b.cyclic_connectivity.at_least;
    let cc = cyclic_connectivity_at_least(g, k)?;
    r.push(
        "cyclic-connectivity",
        cc.holds && cc.exact,
        match (&cc.witness, cc.exact) {
            (Some(cut), _) => format!("cycle-separating cut of size {} found", cut.edges.len()),
            (None, true) => format!("no cycle-separating cut below {k}"),
            (None, false) => "undecided".to_string(),
        },
    );

    let near_ok = match &b.near_colouring {
        None => {
            r.push("near-colouring", true, "absent");
            false
        }
        Some(n) => {
            let (ok, detail) = check_near_colouring(g, n);
            r.push("near-colouring", ok, detail);
            ok
        }
    };

    let c = &b.claims;
    let mut bad = Vec::new();
    if c.snark && !snark.valid() {
        bad.push("snark claimed without a valid certificate".to_string());
    }
    for (name, value) in [("oddness", c.oddness), ("resistance", c.resistance)] {
        if let Some(x) = value {
            if x != 2 || !near_ok || !snark.valid() {
                bad.push(format!("{name} = {x} is not backed by a snark certificate and a near-colouring"));
            }
        }
    }
    if c.defect_at_least > girth.div_ceil(2) || (c.defect_at_least > 0 && !snark.valid()) {
        bad.push(format!("defect >= {} exceeds the girth bound", c.defect_at_least));
    }
    r.push(
        "claims",
        bad.is_empty(),
        if bad.is_empty() {
            format!(
                "snark, defect >= {}{}",
                c.defect_at_least,
                if c.oddness.is_some() { ", oddness = 2, resistance = 2" } else { "" }
            )
        } else {
            bad.join("; ")
        },
    );
    Ok(r)
}

fn check_near_colouring(g: &Graph, n: &NearColouring) -> (bool, String) {
    if n.colours.len() != g.edge_count() {
        return (false, format!("{} colours for {} edges", n.colours.len(), g.edge_count()));
    }
    if let Some(e) = n.colours.iter().position(|c| c.is_zero()) {
        return (false, format!("edge {e} has colour 0"));
    }
    let support = residual_support(g.multipole(), &n.colours);
    let mut want = vec![n.u, n.v];
    want.sort_unstable();
    if support == want {
        (true, format!("proper except at vertices {} and {}", n.u, n.v))
    } else {
        (false, format!("improper at vertices {support:?}, expected {want:?}"))
    }
}

/// True iff the edges form one circuit.
fn is_circuit(g: &Graph, edges: &[usize]) -> bool {
    if edges.is_empty() || edges.iter().any(|&e| e >= g.edge_count()) {
        return false;
    }
    let mut deg: HashMap<usize, usize> = HashMap::new();
    for &e in edges {
        let (a, b) = g.endpoints(e);
        *deg.entry(a).or_insert(0) += 1;
        *deg.entry(b).or_insert(0) += 1;
    }
    if deg.values().any(|&d| d != 2) || deg.len() != edges.len() {
        return false;
    }
    // connected: walk from the first edge
    let mut unused: Vec<usize> = edges.to_vec();
    let (start, mut at) = g.endpoints(unused.remove(0));
    while let Some(i) = unused.iter().position(|&e| {
        let (a, b) = g.endpoints(e);
        a == at || b == at
    }) {
        let (a, b) = g.endpoints(unused.remove(i));
        at = if a == at { b } else { a };
    }
    unused.is_empty() && at == start
}

/// Applies a near-colouring file to a graph, for callers that only hold
/// the colours.
pub fn near_colouring_of(b: &Bundle) -> Option<EdgeColouring> {
    b.near_colouring.as_ref().map(|n| EdgeColouring(n.colours.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superposition::build;

    fn girth_six() -> (Construction, Bundle) {
        let c = build(&ConstructionPlan::for_girth(6).unwrap(), Budget::unlimited()).unwrap();
        let b = bundle(&c, Budget::unlimited()).unwrap();
        (c, b)
    }

    #[test]
    fn fresh_bundle_verifies() {
        let (c, b) = girth_six();
        let r = verify_bundle(&c.graph, &b, Budget::unlimited()).unwrap();
        assert!(r.valid(), "{r:?}");
        assert_eq!(b.claims.oddness, Some(2));
        assert_eq!(b.claims.defect_at_least, 3);
        assert_eq!(b.girth.value, 6);
        let back = Bundle::from_json(&b.to_json()).unwrap();
        assert_eq!(back, b);
    }

    #[test]
    fn zero_flow_spectrum_entry_is_rejected() {
        let (c, mut b) = girth_six();
        let bad = BoundaryVector::from_values(&[1, 2, 3, 1, 2, 3]).unwrap();
        assert!(bad.sum_range(0..3).is_zero());
        b.snark.superedges[0].spectrum.push(bad);
        let r = certify_snark(&c.graph, &b.snark, Budget::unlimited()).unwrap();
        assert!(!r.valid());
    }

    #[test]
    fn colourable_base_is_rejected() {
        let (c, mut b) = girth_six();
        b.snark.base_vertices = 4;
        b.snark.base_edges = crate::named::k4().edge_list().iter().map(|&(x, y)| [x, y]).collect();
        let r = certify_snark(&c.graph, &b.snark, Budget::unlimited()).unwrap();
        assert!(!r.valid());
    }

    #[test]
    fn flipped_colour_is_located() {
        let (c, mut b) = girth_six();
        let n = b.near_colouring.as_mut().unwrap();
        let e = 0;
        n.colours[e] = if n.colours[e] == Colour::ONE { Colour::TWO } else { Colour::ONE };
        let r = verify_bundle(&c.graph, &b, Budget::unlimited()).unwrap();
        let check = r.checks.iter().find(|c| c.name == "near-colouring").unwrap();
        assert!(!check.pass);
        let (x, y) = c.graph.endpoints(e);
        assert!(check.detail.contains(&x.to_string()) && check.detail.contains(&y.to_string()));
    }

    #[test]
    fn checksum_mismatch_is_an_error() {
        let (_, b) = girth_six();
        let other = crate::named::petersen();
        assert!(matches!(
            verify_bundle(&other, &b, Budget::unlimited()),
            Err(Error::CertificateMismatch(_))
        ));
    }
}
