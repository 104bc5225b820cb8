//! The eight acceptance criteria, each printed as one PASS/FAIL line.
//! Run with `cargo test --test acceptance -- --nocapture` to see them.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

use snarkdefect::certificate::{bundle, certify_snark};
use snarkdefect::cli;
use snarkdefect::colour::ColourPermutation;
use snarkdefect::colouring::{boundary_spectrum, find_nowhere_zero_flow, is_colourable};
use snarkdefect::matchings::{core_of, defect, enumerate_perfect_matchings, ComponentKind, ThreeArray};
use snarkdefect::measures::{audit_inequalities, cyclic_connectivity_at_least, measure, MeasureOptions, Verdict};
use snarkdefect::superposition::{build, build_fg, build_k, make_mg, ConstructionPlan, Labelling};
use snarkdefect::{named, Budget, Graph, Outcome};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/corpus")
}

fn petersen_golden() -> Check {
    let g = named::petersen();
    let pms = enumerate_perfect_matchings(&g).map_err(|e| e.to_string())?;
    ensure(pms.len() == 6, format!("{} perfect matchings", pms.len()))?;
    let d = defect(&g).map_err(|e| e.to_string())?;
    ensure(d.defect == 3, format!("defect {}", d.defect))?;
    let core = core_of(&g, &d.witness);
    ensure(
        core.components.len() == 1
            && core.components[0].kind == ComponentKind::EvenCircuit
            && core.components[0].edges.len() == 6,
        format!("core is not a 6-circuit: {:?}", core.components),
    )?;
    let r = measure(&g, &MeasureOptions::all()).map_err(|e| e.to_string())?;
    let get = |v: Option<snarkdefect::measures::Value>| v.and_then(|v| v.get());
    ensure(get(r.oddness) == Some(2), "oddness")?;
    ensure(get(r.resistance) == Some(2), "resistance")?;
    ensure(get(r.density) == Some(1), "density")?;
    ensure(r.girth == Some(5) && common::girth(&g) == 5, "girth")?;
    Ok("d=3 (core 6-circuit), oddness=2, resistance=2, density=1, girth=5, 6 perfect matchings".into())
}

fn array_bookkeeping() -> Check {
    let graphs: Vec<(&str, Graph)> = named::small_cubic_corpus()
        .into_iter()
        .chain(named::snark_corpus())
        .filter(|(_, g)| g.edge_count() <= 60)
        .collect();
    let pms: Vec<_> = graphs
        .iter()
        .map(|(_, g)| enumerate_perfect_matchings(g).unwrap())
        .collect();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut checked = 0;
    while checked < 1000 {
        let i = rng.random_range(0..graphs.len());
        let (name, g) = &graphs[i];
        let p = &pms[i];
        let pick = [0; 3].map(|_| p[rng.random_range(0..p.len())]);
        let a = ThreeArray::new(g, pick).map_err(|e| e.to_string())?;
        let [e0, _, e2, e3] = a.class_sizes();
        ensure(e0 == e2 + 2 * e3, format!("{name}: |E0|={e0}, |E2|={e2}, |E3|={e3}"))?;
        let uncovered = a.uncovered().to_vec();
        let rest = g.multipole().cut_edges(&uncovered).map_err(|e| e.to_string())?;
        ensure(
            is_colourable(&rest, Budget::unlimited()).map_err(|e| e.to_string())?.is_found(),
            format!("{name}: G - E0 is not colourable"),
        )?;
        checked += 1;
    }
    Ok(format!("{checked} sampled arrays over {} graphs, zero exceptions", graphs.len()))
}

fn oracle_equivalence() -> Check {
    let mut n = 0;
    for (name, g) in named::small_cubic_corpus().into_iter().chain(named::snark_corpus()) {
        if g.vertex_count() > 14 || !g.is_bridgeless() {
            continue;
        }
        let r = measure(&g, &MeasureOptions::all()).map_err(|e| e.to_string())?;
        let got = |v: Option<snarkdefect::measures::Value>| v.and_then(|v| v.get());
        ensure(got(r.defect) == Some(common::defect(&g)), format!("{name}: defect"))?;
        ensure(got(r.oddness) == Some(common::oddness(&g)), format!("{name}: oddness"))?;
        ensure(got(r.density) == Some(common::density(&g)), format!("{name}: density"))?;
        ensure(r.colourable == Some(common::colourable(&g)), format!("{name}: colourability"))?;
        n += 1;
    }
    ensure(n >= 15, format!("only {n} graphs"))?;
    Ok(format!("defect, oddness, density and colourability agree on {n} graphs"))
}

fn inequality_audit() -> Check {
    let corpus = named::snark_corpus();
    let names: Vec<&str> = corpus.iter().map(|(n, _)| *n).collect();
    for need in ["petersen", "blanusa-1", "blanusa-2", "flower-j5"] {
        ensure(names.contains(&need), format!("{need} missing from corpus"))?;
    }
    ensure(corpus.len() >= 10, "fewer than 10 snarks")?;
    let mut rows = 0;
    for (name, g) in &corpus {
        let r = measure(g, &MeasureOptions::all()).map_err(|e| e.to_string())?;
        ensure(r.colourable == Some(false), format!("{name} is not a snark"))?;
        let a = audit_inequalities(&r);
        for row in &a.rows {
            ensure(row.verdict == Verdict::Pass, format!("{name}: {} is {:?}", row.name, row.verdict))?;
            rows += 1;
        }
    }
    Ok(format!("{} snarks, {rows} inequality checks, zero violations", corpus.len()))
}

fn construction(girth: usize) -> Check {
    let plan = ConstructionPlan::for_girth(girth).map_err(|e| e.to_string())?;
    let c = build(&plan, Budget::unlimited()).map_err(|e| e.to_string())?;
    let g = &c.graph;
    ensure(common::girth(g) == girth, format!("brute-force girth {}", common::girth(g)))?;
    let b = bundle(&c, Budget::unlimited()).map_err(|e| e.to_string())?;
    let cert = certify_snark(g, &b.snark, Budget::unlimited()).map_err(|e| e.to_string())?;
    ensure(cert.valid(), format!("snark certificate: {:?}", cert.failures))?;
    let near = c.near_colouring.as_ref().ok_or("no near-colouring")?;
    let values: Vec<u8> = near.0.iter().map(|c| c.value()).collect();
    ensure(values.iter().all(|&v| (1..=3).contains(&v)), "near-colouring has a zero")?;
    let mut uv = vec![c.u, c.v];
    uv.sort_unstable();
    ensure(common::kirchhoff_failures(g, &values) == uv, "residual support is not {u, v}")?;
    let cc = cyclic_connectivity_at_least(g, 5).map_err(|e| e.to_string())?;
    ensure(cc.holds && cc.exact, "cyclic connectivity below 5")?;
    ensure(
        b.claims.oddness == Some(2) && b.claims.resistance == Some(2) && b.claims.defect_at_least == girth / 2,
        format!("claims {:?}", b.claims),
    )?;
    Ok(format!(
        "g={girth}: {} vertices, girth {girth}, snark certified, support {{u,v}}, cyclically 5-connected, defect >= {}",
        g.vertex_count(),
        girth / 2
    ))
}

fn construction_six_and_eight() -> Check {
    let six = construction(6)?;
    let eight = construction(8)?;
    Ok(format!("{six}; {eight}"))
}

fn flow_obstruction() -> Check {
    let k = build_k(&Labelling::default()).map_err(|e| e.to_string())?;
    ensure(k.multipole.vertex_count() == 26, "K does not have 26 vertices")?;
    ensure(
        find_nowhere_zero_flow(&k.multipole, Budget::unlimited()) == Outcome::NotFound,
        "K has a nowhere-zero flow",
    )?;
    let edges: Vec<(usize, usize)> = k
        .multipole
        .edges()
        .iter()
        .map(|e| e.endpoints().expect("closed"))
        .collect();
    ensure(common::is_forest_without(26, &edges, &k.u_set()), "U is not decycling")?;
    Ok("K (26 vertices) has no nowhere-zero Klein flow; U is decycling".into())
}

fn properness() -> Check {
    let k = build_k(&Labelling::default()).map_err(|e| e.to_string())?;
    let mg = make_mg(&named::heawood()).map_err(|e| e.to_string())?;
    let f = build_fg(&k, &mg, None, 0, Budget::unlimited()).map_err(|e| e.to_string())?;
    let s = match boundary_spectrum(&f.multipole, Budget::unlimited()).map_err(|e| e.to_string())? {
        Outcome::Found(s) => s,
        _ => return Err("spectrum undecided".into()),
    };
    ensure(!s.is_empty(), "empty spectrum")?;
    let first = f.multipole.connector_sizes()[0];
    for b in &s {
        let flow = b.0[..first].iter().fold(0u8, |acc, c| acc ^ c.value());
        ensure(flow != 0, format!("zero total flow: {:?}", b.values()))?;
    }
    for b in &s {
        for p in ColourPermutation::all() {
            ensure(s.contains(&b.permuted(&p)), "spectrum not closed under colour permutations")?;
        }
    }
    Ok(format!("F_6 spectrum has {} vectors, all with nonzero flow, closed under permutations", s.len()))
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["snarkdefect"];
    full.extend_from_slice(args);
    let code = cli::run(full, &mut out, &mut err);
    out.extend(err);
    (code, out)
}

fn determinism() -> Check {
    let corpus = corpus_dir();
    let petersen = corpus.join("petersen.g6");
    let blanusa = corpus.join("blanusa-1.g6");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let prefix = dir.path().join("g6");
    let prefix = prefix.to_str().unwrap();
    let s6 = format!("{prefix}.s6");
    let bundle = format!("{prefix}.bundle.json");
    let commands: Vec<Vec<&str>> = vec![
        vec!["measure", petersen.to_str().unwrap(), "--all"],
        vec!["measure", petersen.to_str().unwrap(), "--all", "--json"],
        vec!["defect", blanusa.to_str().unwrap(), "--oracle"],
        vec!["audit-corpus", corpus.to_str().unwrap()],
        vec!["build-snark", "--girth", "6", "--prefix", prefix],
        vec!["verify", &s6, &bundle],
    ];
    let files = ["s6", "bundle.json", "plan.toml", "near.json"];
    let snapshot = || -> Vec<Vec<u8>> {
        files
            .iter()
            .map(|ext| std::fs::read(format!("{prefix}.{ext}")).unwrap_or_default())
            .collect()
    };
    let mut first = Vec::new();
    for c in &commands {
        first.push(run_cli(c));
    }
    let files_first = snapshot();
    for (c, before) in commands.iter().zip(&first) {
        let again = run_cli(c);
        ensure(&again == before, format!("`{}` differs between runs", c.join(" ")))?;
        ensure(again.0 == 0, format!("`{}` exited with {}", c.join(" "), again.0))?;
    }
    ensure(snapshot() == files_first, "build outputs differ between runs")?;
    Ok(format!("{} commands and {} output files byte-identical across two runs", commands.len(), files.len()))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Check, Duration); 8] = [
        ("petersen golden values", petersen_golden, Duration::from_secs(1)),
        ("array bookkeeping", array_bookkeeping, Duration::from_secs(30)),
        ("oracle equivalence", oracle_equivalence, Duration::from_secs(300)),
        ("inequality audit", inequality_audit, Duration::from_secs(600)),
        ("construction g=6 and g=8", construction_six_and_eight, Duration::from_secs(1800)),
        ("flow obstruction", flow_obstruction, Duration::from_secs(120)),
        ("properness of F_6", properness, Duration::from_secs(600)),
        ("determinism", determinism, Duration::from_secs(600)),
    ];
    let mut failed = Vec::new();
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(d) if took > *limit => Err(format!("{d}; took {took:.2?}, limit {limit:?}")),
            o => o,
        };
        match &outcome {
            Ok(d) => println!("criterion {} ({name}): PASS - {d} [{took:.2?}]", i + 1),
            Err(e) => {
                println!("criterion {} ({name}): FAIL - {e} [{took:.2?}]", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
