//! Registry of cubic cages used as the high-girth ingredient of the
//! superposition construction. Entries are revalidated on load.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::named::lcf;

pub fn mcgee() -> Graph {
    lcf(24, &[12, 7, -7])
}

pub fn tutte_coxeter() -> Graph {
    lcf(30, &[-13, -9, 7, -7, 9, 13])
}

#[derive(Clone, Debug, Serialize)]
pub struct CageEntry {
    pub name: String,
    pub girth: usize,
    pub bipartite: bool,
    #[serde(skip)]
    pub graph: Graph,
}

impl CageEntry {
    /// Checks cubicity, connectivity and the declared girth and
    /// bipartiteness against the graph itself.
    pub fn new(name: impl Into<String>, girth: usize, bipartite: bool, graph: Graph) -> Result<Self> {
        let name = name.into();
        if !graph.is_connected() {
            return Err(Error::Construction(format!("cage {name} is disconnected")));
        }
        let actual = graph.girth()?;
        if actual != girth {
            return Err(Error::Construction(format!(
                "cage {name} declares girth {girth} but has girth {actual}"
            )));
        }
        if graph.is_bipartite() != bipartite {
            return Err(Error::Construction(format!(
                "cage {name} bipartite flag does not match the graph"
            )));
        }
        Ok(CageEntry {
            name,
            girth,
            bipartite,
            graph,
        })
    }

    /// Wraps a user-supplied graph, measuring girth and bipartiteness.
    pub fn from_graph(name: impl Into<String>, graph: Graph) -> Result<Self> {
        let girth = graph.girth()?;
        let bipartite = graph.is_bipartite();
        CageEntry::new(name, girth, bipartite, graph)
    }
}

pub const REGISTRY: [&str; 3] = ["heawood", "mcgee", "tutte-coxeter"];

pub fn lookup(name: &str) -> Result<CageEntry> {
    match name {
        "heawood" => CageEntry::new(name, 6, true, crate::named::heawood()),
        "mcgee" => CageEntry::new(name, 7, false, mcgee()),
        "tutte-coxeter" => CageEntry::new(name, 8, true, tutte_coxeter()),
        _ => Err(Error::Construction(format!(
            "unknown cage {name}; known: {}",
            REGISTRY.join(", ")
        ))),
    }
}

/// Registry entry for a girth, if any.
pub fn for_girth(g: usize) -> Option<&'static str> {
    match g {
        6 => Some("heawood"),
        7 => Some("mcgee"),
        8 => Some("tutte-coxeter"),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_loads() {
        for name in REGISTRY {
            let c = lookup(name).unwrap();
            assert_eq!(for_girth(c.girth), Some(name));
        }
        assert_eq!(lookup("mcgee").unwrap().graph.vertex_count(), 24);
        assert_eq!(lookup("tutte-coxeter").unwrap().graph.vertex_count(), 30);
    }
}
