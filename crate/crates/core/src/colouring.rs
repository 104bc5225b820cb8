//! Proper 3-edge-colourings of multipoles, boundary spectra, dipole
//! properness, removability and the colouring/flow correspondence.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::colour::{BoundaryVector, Colour};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::multipole::{End, Multipole};
use crate::search::{Budget, KleinProblem, Outcome, TableProblem};

/// Colour of every edge, indexed by edge id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeColouring(pub Vec<Colour>);

/// A Z2 x Z2 valuation of the edges, read as a flow.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct KleinFlow(pub Vec<Colour>);

impl EdgeColouring {
    pub fn colours(&self) -> &[Colour] {
        &self.0
    }

    pub fn values(&self) -> Vec<u8> {
        self.0.iter().map(|c| c.value()).collect()
    }
}

/// Sum of the values at every vertex. Loops contribute twice and cancel.
pub fn residuals(m: &Multipole, values: &[Colour]) -> Vec<Colour> {
    let mut out = vec![Colour::ZERO; m.vertex_count()];
    for (e, edge) in m.edges().iter().enumerate() {
        for end in edge.ends {
            if let End::Vertex(v) = end {
                out[v] += values[e];
            }
        }
    }
    out
}

/// Vertices where the Kirchhoff law fails.
pub fn residual_support(m: &Multipole, values: &[Colour]) -> Vec<usize> {
    residuals(m, values)
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(v, _)| v)
        .collect()
}

/// True iff `c` colours every edge of the cubic multipole `m` with a nonzero
/// colour and the three colours at every vertex are distinct.
pub fn is_proper(m: &Multipole, c: &EdgeColouring) -> bool {
    c.0.len() == m.edge_count()
        && c.0.iter().all(|x| !x.is_zero())
        && m.degrees().iter().all(|&d| d == 3)
        && residuals(m, &c.0).iter().all(|r| r.is_zero())
}

pub fn colouring_to_flow(c: &EdgeColouring) -> KleinFlow {
    KleinFlow(c.0.clone())
}

/// Inverse of [`colouring_to_flow`] on cubic multipoles. Rejects flows with
/// a zero edge or a vertex where the Kirchhoff law fails.
pub fn flow_to_colouring(m: &Multipole, f: &KleinFlow) -> Result<EdgeColouring> {
    if f.0.len() != m.edge_count() {
        return Err(Error::IllFormedColouring(format!(
            "flow has {} values for {} edges",
            f.0.len(),
            m.edge_count()
        )));
    }
    if let Some(e) = f.0.iter().position(|c| c.is_zero()) {
        return Err(Error::IllFormedColouring(format!("edge {e} carries 0")));
    }
    m.ensure_cubic()?;
    if let Some(v) = residual_support(m, &f.0).first() {
        return Err(Error::IllFormedColouring(format!("Kirchhoff law fails at vertex {v}")));
    }
    Ok(EdgeColouring(f.0.clone()))
}

/// Colours of the connector entries, connector by connector.
pub fn boundary_of(m: &Multipole, c: &EdgeColouring) -> BoundaryVector {
    BoundaryVector(m.connector_ends().iter().map(|h| c.0[h.edge]).collect())
}

fn check_partial(m: &Multipole, partial: &[Option<Colour>]) -> Result<()> {
    if partial.len() != m.edge_count() {
        return Err(Error::IllFormedColouring(format!(
            "partial colouring has {} entries for {} edges",
            partial.len(),
            m.edge_count()
        )));
    }
    if let Some(e) = partial.iter().position(|c| c.is_some_and(|c| c.is_zero())) {
        return Err(Error::IllFormedColouring(format!("edge {e} coloured 0")));
    }
    for (v, inc) in m.incidence().iter().enumerate() {
        let given: Vec<Colour> = inc.iter().filter_map(|h| partial[h.edge]).collect();
        for i in 0..given.len() {
            for j in i + 1..given.len() {
                if given[i] == given[j] {
                    return Err(Error::IllFormedColouring(format!(
                        "two edges at vertex {v} share colour {}",
                        given[i]
                    )));
                }
            }
        }
    }
    Ok(())
}

fn problem(
    m: &Multipole,
    boundary: Option<&BoundaryVector>,
    partial: Option<&[Option<Colour>]>,
    proper: bool,
) -> Result<KleinProblem> {
    let mut p = KleinProblem::from_multipole(m);
    if let Some(b) = boundary {
        let ends = m.connector_ends();
        if b.len() != ends.len() {
            return Err(Error::IllFormedColouring(format!(
                "boundary has {} entries for {} connector ends",
                b.len(),
                ends.len()
            )));
        }
        for (h, &c) in ends.iter().zip(&b.0) {
            if c.is_zero() {
                return Err(Error::IllFormedColouring("boundary colour 0".into()));
            }
            p.fix(h.edge, c);
        }
    }
    if let Some(partial) = partial {
        if proper {
            check_partial(m, partial)?;
        } else if partial.len() != m.edge_count() || partial.iter().flatten().any(|c| c.is_zero()) {
            return Err(Error::IllFormedColouring("partial flow must be nonzero, one entry per edge".into()));
        }
        for (e, c) in partial.iter().enumerate() {
            if let Some(c) = c {
                p.fix(e, *c);
            }
        }
    }
    Ok(p)
}

/// A proper colouring of the cubic multipole `m` extending the optional
/// boundary vector (indexed like [`Multipole::connector_ends`]) and partial
/// colouring.
pub fn find_colouring(
    m: &Multipole,
    boundary: Option<&BoundaryVector>,
    partial: Option<&[Option<Colour>]>,
    budget: Budget,
) -> Result<Outcome<EdgeColouring>> {
    m.ensure_cubic()?;
    Ok(problem(m, boundary, partial, true)?.solve(budget).map(EdgeColouring))
}

pub fn is_colourable(m: &Multipole, budget: Budget) -> Result<Outcome<EdgeColouring>> {
    find_colouring(m, None, None, budget)
}

/// Nowhere-zero Z2 x Z2-flow on a multipole of arbitrary degrees, with free
/// ends unconstrained.
pub fn find_nowhere_zero_flow(m: &Multipole, budget: Budget) -> Outcome<KleinFlow> {
    KleinProblem::from_multipole(m).solve(budget).map(KleinFlow)
}

/// [`find_nowhere_zero_flow`] with a boundary vector over the connector ends
/// and a partial valuation fixed in advance.
pub fn find_flow(
    m: &Multipole,
    boundary: Option<&BoundaryVector>,
    partial: Option<&[Option<Colour>]>,
    budget: Budget,
) -> Result<Outcome<KleinFlow>> {
    Ok(problem(m, boundary, partial, false)?.solve(budget).map(KleinFlow))
}

/// Every vector in `{1,2,3}^n` whose entries sum to 0, in lexicographic
/// order.
pub fn parity_candidates(n: usize) -> Vec<BoundaryVector> {
    let mut out = Vec::new();
    let total = 3usize.pow(n as u32);
    for mut code in 0..total {
        let mut v = vec![Colour::ONE; n];
        for slot in v.iter_mut().rev() {
            *slot = Colour::NONZERO[code % 3];
            code /= 3;
        }
        let b = BoundaryVector(v);
        if b.sum().is_zero() {
            out.push(b);
        }
    }
    out
}

/// The exact set of boundary vectors realised by proper colourings of `m`,
/// in lexicographic order. The budget applies to each candidate separately.
pub fn boundary_spectrum(m: &Multipole, budget: Budget) -> Result<Outcome<Vec<BoundaryVector>>> {
    m.ensure_cubic()?;
    let n = m.connector_ends().len();
    if n == 0 {
        return Err(Error::InvalidMultipole("spectrum needs at least one connector end".into()));
    }
    if n > 12 {
        return Err(Error::TooLarge(format!("{n} connector ends")));
    }
    let base = problem(m, None, None, true)?;
    let ends = m.connector_ends();
    let results: Vec<Outcome<()>> = parity_candidates(n)
        .par_iter()
        .map(|b| {
            let mut p = base.clone();
            for (h, &c) in ends.iter().zip(&b.0) {
                p.fix(h.edge, c);
            }
            p.solve(budget).map(|_| ())
        })
        .collect();
    if results.iter().any(Outcome::is_undecided) {
        return Ok(Outcome::Undecided);
    }
    Ok(Outcome::Found(
        parity_candidates(n)
            .into_iter()
            .zip(results)
            .filter(|(_, r)| r.is_found())
            .map(|(b, _)| b)
            .collect(),
    ))
}

/// The spectrum of `m` computed through disjoint vertex blocks. Each block
/// is cut out along the edges leaving it and replaced by the tuples its own
/// spectrum allows on those edges, which leaves a much smaller problem with
/// the same solutions on the outer edges. The result equals
/// [`boundary_spectrum`] of `m`.
pub fn boundary_spectrum_blocked(
    m: &Multipole,
    blocks: &[Vec<usize>],
    budget: Budget,
) -> Result<Outcome<Vec<BoundaryVector>>> {
    m.ensure_cubic()?;
    let ends = m.connector_ends();
    let n = ends.len();
    if n == 0 {
        return Err(Error::InvalidMultipole("spectrum needs at least one connector end".into()));
    }
    if n > 12 {
        return Err(Error::TooLarge(format!("{n} connector ends")));
    }
    let mut block_of = vec![None; m.vertex_count()];
    for (b, vs) in blocks.iter().enumerate() {
        for &v in vs {
            if v >= m.vertex_count() {
                return Err(Error::NoSuchVertex(v));
            }
            if block_of[v].replace(b).is_some() {
                return Err(Error::InvalidMultipole(format!("vertex {v} in two blocks")));
            }
        }
    }
    let block_at = |end: End| end.vertex().and_then(|v| block_of[v]);
    let mut var = vec![None; m.edge_count()];
    let mut vars = 0;
    for (i, e) in m.edges().iter().enumerate() {
        let (a, b) = (block_at(e.ends[0]), block_at(e.ends[1]));
        if a.is_none() || a != b {
            var[i] = Some(vars);
            vars += 1;
        }
    }
    let mut p = TableProblem::new(vars);
    for (v, inc) in m.incidence().iter().enumerate() {
        if block_of[v].is_none() {
            let vs: Vec<usize> = inc.iter().map(|h| var[h.edge].expect("outer edge")).collect();
            p.add_xor(&vs);
        }
    }
    for (b, vs) in blocks.iter().enumerate() {
        let crossing: Vec<usize> = m
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| {
                let (x, y) = (block_at(e.ends[0]), block_at(e.ends[1]));
                (x == Some(b)) != (y == Some(b))
            })
            .map(|(i, _)| i)
            .collect();
        if crossing.is_empty() {
            // a closed block only matters through its own colourability
            match is_colourable(&m.induced(vs, &[])?, budget)? {
                Outcome::Found(_) => continue,
                Outcome::NotFound => return Ok(Outcome::Found(Vec::new())),
                Outcome::Undecided => return Ok(Outcome::Undecided),
            }
        }
        let sub = m.induced(vs, std::slice::from_ref(&crossing))?;
        let tuples = match boundary_spectrum(&sub, budget)? {
            Outcome::Found(s) => s.into_iter().map(|b| b.values()).collect(),
            _ => return Ok(Outcome::Undecided),
        };
        p.add_table(crossing.iter().map(|&e| var[e].expect("crossing edge")).collect(), tuples);
    }
    let candidates = parity_candidates(n);
    let results: Vec<Outcome<()>> = candidates
        .par_iter()
        .map(|b| {
            let mut q = p.clone();
            for (h, &c) in ends.iter().zip(&b.0) {
                q.fix(var[h.edge].expect("boundary edge"), c);
            }
            q.solve(budget).map(|_| ())
        })
        .collect();
    if results.iter().any(Outcome::is_undecided) {
        return Ok(Outcome::Undecided);
    }
    Ok(Outcome::Found(
        candidates
            .into_iter()
            .zip(results)
            .filter(|(_, r)| r.is_found())
            .map(|(b, _)| b)
            .collect(),
    ))
}

/// True iff the set is closed under every permutation of the colours.
pub fn closed_under_permutations(spectrum: &[BoundaryVector]) -> bool {
    let set: std::collections::HashSet<&BoundaryVector> = spectrum.iter().collect();
    spectrum.iter().all(|b| {
        crate::colour::ColourPermutation::all()
            .iter()
            .all(|p| set.contains(&b.permuted(p)))
    })
}

/// Outcome of a properness test: the spectrum and the flow through the
/// first connector of each member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DipoleReport {
    pub proper: bool,
    pub first_connector: usize,
    pub spectrum: Vec<BoundaryVector>,
}

impl DipoleReport {
    pub fn total_flow(&self, b: &BoundaryVector) -> Colour {
        b.sum_range(0..self.first_connector)
    }

    /// Members whose total flow is zero.
    pub fn violations(&self) -> Vec<&BoundaryVector> {
        self.spectrum
            .iter()
            .filter(|b| self.total_flow(b).is_zero())
            .collect()
    }
}

/// Decides whether every colouring of the dipole `f` has nonzero total flow
/// through it. Uncolourable dipoles are proper vacuously.
pub fn is_proper_dipole(f: &Multipole, budget: Budget) -> Result<Outcome<DipoleReport>> {
    if f.connectors().len() != 2 {
        return Err(Error::InvalidMultipole(format!(
            "dipole expected, found {} connectors",
            f.connectors().len()
        )));
    }
    let first = f.connectors()[0].len();
    Ok(boundary_spectrum(f, budget)?.map(|spectrum| {
        let mut r = DipoleReport {
            proper: true,
            first_connector: first,
            spectrum,
        };
        r.proper = r.violations().is_empty();
        r
    }))
}

/// Removability of the vertex set `h` in the snark `g`: true iff `g - h`
/// is still uncolourable. With `strict` set a colourable `g` is an error;
/// otherwise the flag is computed as defined.
pub fn is_removable(g: &Graph, h: &[usize], strict: bool, budget: Budget) -> Result<Outcome<bool>> {
    if strict {
        match is_colourable(g.multipole(), budget)? {
            Outcome::Found(_) => return Err(Error::NotASnark("graph is colourable".into())),
            Outcome::Undecided => return Ok(Outcome::Undecided),
            Outcome::NotFound => {}
        }
    }
    let (rest, _) = g.multipole().remove_vertices(h)?;
    Ok(match is_colourable(&rest, budget)? {
        Outcome::Found(_) => Outcome::Found(false),
        Outcome::NotFound => Outcome::Found(true),
        Outcome::Undecided => Outcome::Undecided,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    fn brute_colourable(g: &Graph) -> bool {
        let m = g.edge_count();
        let mut c = vec![Colour::ONE; m];
        fn rec(g: &Graph, c: &mut Vec<Colour>, i: usize) -> bool {
            if i == c.len() {
                return (0..g.vertex_count()).all(|v| {
                    let inc = g.incidences(v);
                    let cs: Vec<Colour> = inc.iter().map(|x| c[x.edge]).collect();
                    cs[0] != cs[1] && cs[1] != cs[2] && cs[0] != cs[2]
                });
            }
            for col in Colour::NONZERO {
                c[i] = col;
                // prune: an endpoint whose edges are all set must be proper
                let (a, b) = g.endpoints(i);
                let ok = [a, b].iter().all(|&v| {
                    let inc = g.incidences(v);
                    let set: Vec<Colour> = inc
                        .iter()
                        .filter(|x| x.edge <= i)
                        .map(|x| c[x.edge])
                        .collect();
                    (0..set.len()).all(|p| (p + 1..set.len()).all(|q| set[p] != set[q]))
                });
                if ok && rec(g, c, i + 1) {
                    return true;
                }
            }
            false
        }
        rec(g, &mut c, 0)
    }

    #[test]
    fn colourability_matches_brute_force() {
        for (name, g) in named::small_cubic_corpus() {
            let found = is_colourable(g.multipole(), Budget::unlimited()).unwrap();
            assert_eq!(found.is_found(), brute_colourable(&g), "{name}");
            if let Outcome::Found(c) = found {
                assert!(is_proper(g.multipole(), &c), "{name}");
            }
        }
    }

    #[test]
    fn claw_spectrum_is_all_permutations() {
        let s = boundary_spectrum(&Multipole::claw(false), Budget::unlimited())
            .unwrap()
            .found()
            .unwrap();
        assert_eq!(s.len(), 6);
        assert!(closed_under_permutations(&s));
    }

    #[test]
    fn isolated_edge_is_proper_dipole() {
        let m = Multipole::from_parts(
            0,
            vec![crate::Edge::isolated()],
            vec![vec![crate::HalfEdge::new(0, 0)], vec![crate::HalfEdge::new(0, 1)]],
        );
        let r = is_proper_dipole(&m, Budget::unlimited()).unwrap().found().unwrap();
        assert!(r.proper);
        assert_eq!(r.spectrum.len(), 3);
    }

    #[test]
    fn flow_round_trip_and_rejection() {
        let g = named::k4();
        let c = is_colourable(g.multipole(), Budget::unlimited()).unwrap().found().unwrap();
        let f = colouring_to_flow(&c);
        assert!(residuals(g.multipole(), &f.0).iter().all(|r| r.is_zero()));
        assert_eq!(flow_to_colouring(g.multipole(), &f).unwrap(), c);
        let mut bad = f.clone();
        bad.0[0] = Colour::ZERO;
        assert!(flow_to_colouring(g.multipole(), &bad).is_err());
    }

    #[test]
    fn partial_must_be_locally_proper() {
        let g = named::k4();
        let mut partial = vec![None; 6];
        partial[0] = Some(Colour::ONE);
        partial[1] = Some(Colour::ONE);
        assert!(find_colouring(g.multipole(), None, Some(&partial), Budget::unlimited()).is_err());
    }

    #[test]
    fn petersen_removability() {
        let g = named::petersen();
        // a single vertex never helps, by the Parity Lemma
        assert_eq!(
            is_removable(&g, &[0], true, Budget::unlimited()).unwrap(),
            Outcome::Found(true)
        );
        assert_eq!(
            is_removable(&g, &[0, 1], true, Budget::unlimited()).unwrap(),
            Outcome::Found(false)
        );
        assert!(is_removable(&named::k4(), &[0], true, Budget::unlimited()).is_err());
    }

    #[test]
    fn blocked_spectrum_matches_direct() {
        let (m, _) = named::petersen().multipole().remove_vertices(&[0, 7]).unwrap();
        let direct = boundary_spectrum(&m, Budget::unlimited()).unwrap();
        for blocks in [vec![], vec![vec![0, 1, 2]], vec![vec![0, 4], vec![5, 6, 7]]] {
            let blocked = boundary_spectrum_blocked(&m, &blocks, Budget::unlimited()).unwrap();
            assert_eq!(blocked, direct);
        }
    }
}
