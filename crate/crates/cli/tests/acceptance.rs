//! Acceptance criteria. Each criterion prints one `[PASS]` or `[FAIL]`
//! line; the process exits non-zero when any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::Rng;

use rmis_core::classification::{all_mis_robust, classify, RobustnessTag};
use rmis_core::construction::extract_rmis;
use rmis_core::generate::{
    cycle, fixture_component_b, random_biconnected, random_connected_with, random_sparse_connected,
    rng_from_seed, FIXTURE_COMPONENT_B_IDS,
};
use rmis_core::labeling::{
    decide, is_satisfiable, AttachmentFlag, ComponentProblem, Label, LabelSet, SatOutcome,
};
use rmis_core::oracle::{
    enumerate_mis, exists_rmis_bf, forall_rmis_bf, is_robust_mis, is_robust_mis_exhaustive,
    suitable_rmis, suitable_rmis_exists,
};
use rmis_core::twosat::{Literal, TwoSatFormula};
use rmis_core::{Graph, VertexSet};
use rmis_testkit::{connected_graphs_by_size, connected_labeled_graphs};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::new(n, edges.iter().copied()).unwrap()
}

fn set(n: usize, vs: &[usize]) -> VertexSet {
    VertexSet::from_vertices(n, vs.iter().copied()).unwrap()
}

fn triangle() -> Graph {
    graph(3, &[(0, 1), (1, 2), (2, 0)])
}

fn bull() -> Graph {
    graph(5, &[(0, 1), (1, 2), (1, 3), (2, 3), (2, 4)])
}

fn square() -> Graph {
    graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])
}

fn exhaustive_graphs() -> Vec<Graph> {
    (1..=6)
        .flat_map(connected_labeled_graphs)
        .map(|sg| Graph::new(sg.n, sg.edges).unwrap())
        .collect()
}

const RANDOM_COUNT: usize = 10_000;

fn random_graphs() -> Vec<Graph> {
    let mut rng = rng_from_seed(20_240_601);
    (0..RANDOM_COUNT)
        .map(|_| {
            let n = rng.gen_range(7..=10);
            let p = rng.gen_range(0.08..0.7);
            random_connected_with(n, p, &mut rng).unwrap()
        })
        .collect()
}

const BICONNECTED_COUNT: usize = 1_000;

fn biconnected_graphs() -> Vec<Graph> {
    let mut rng = rng_from_seed(7_777);
    (0..BICONNECTED_COUNT)
        .map(|i| {
            let bipartite = i % 2 == 0;
            let n = rng.gen_range(if bipartite { 4 } else { 3 }..=12);
            random_biconnected(n, rng.gen_range(0..4), bipartite, &mut rng).unwrap()
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    ensure(!decide(&triangle()).unwrap().accepts(), "triangle accepted")?;

    let b = bull();
    let d = decide(&b).unwrap();
    ensure(d.accepts(), "bull rejected")?;
    let w = extract_rmis(&b, &d).map_err(|e| e.to_string())?;
    ensure(
        is_robust_mis(&b, w.set()).unwrap(),
        "bull witness not robust",
    )?;
    ensure(
        !is_robust_mis(&b, &set(5, &[0, 2])).unwrap(),
        "bull {a,c} reported robust",
    )?;
    let mut out = Vec::new();
    let mut err = Vec::new();
    let file = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(file.path(), "0 1\n1 2\n1 3\n2 3\n2 4\n").unwrap();
    let code = rmis::run(
        [
            "rmis",
            "verify",
            file.path().to_str().unwrap(),
            "--mis",
            "0,2",
        ],
        &mut out,
        &mut err,
    );
    ensure(
        code == 1 && out == b"NOT_ROBUST\n",
        "CLI verify of bull {a,c} is not NOT_ROBUST",
    )?;

    let c4 = square();
    ensure(decide(&c4).unwrap().accepts(), "C4 rejected")?;
    ensure(
        classify(&c4).unwrap().tag == RobustnessTag::AllRobust,
        "C4 not ALL_ROBUST",
    )?;
    let elapsed = start.elapsed();
    ensure(
        elapsed < Duration::from_secs(1),
        format!("took {elapsed:?}"),
    )?;
    Ok(format!(
        "triangle NO, bull YES witness {:?}, C4 ALL_ROBUST in {elapsed:?}",
        w.set().to_vec()
    ))
}

fn criterion_2() -> Outcome {
    let graphs = exhaustive_graphs();
    let mismatches = graphs
        .iter()
        .filter(|g| all_mis_robust(g) != forall_rmis_bf(g).unwrap())
        .count();
    ensure(mismatches == 0, format!("{mismatches} mismatches"))?;
    Ok(format!(
        "{} connected labeled graphs, 0 mismatches",
        graphs.len()
    ))
}

fn criterion_3() -> Outcome {
    let mut total = 0;
    let mut accepted = 0;
    let mut mismatches = 0;
    for g in exhaustive_graphs().iter().chain(random_graphs().iter()) {
        let yes = decide(g).unwrap().accepts();
        if yes != exists_rmis_bf(g).unwrap().is_some() {
            mismatches += 1;
        }
        total += 1;
        accepted += usize::from(yes);
    }
    ensure(
        mismatches == 0,
        format!("{mismatches} mismatches out of {total}"),
    )?;
    Ok(format!(
        "{total} graphs ({RANDOM_COUNT} random), {accepted} accepted, 0 mismatches"
    ))
}

fn criterion_4() -> Outcome {
    let graphs = connected_graphs_by_size(10);
    let mut pairs = 0;
    let mut mismatches = 0;
    for sg in &graphs {
        let g = Graph::new(sg.n, sg.edges.clone()).unwrap();
        for m in enumerate_mis(&g).unwrap() {
            if is_robust_mis(&g, &m).unwrap() != is_robust_mis_exhaustive(&g, &m).unwrap() {
                mismatches += 1;
            }
            pairs += 1;
        }
    }
    ensure(
        mismatches == 0,
        format!("{mismatches} mismatches out of {pairs}"),
    )?;
    Ok(format!(
        "{} graphs up to isomorphism, {pairs} (graph, MIS) pairs, 0 mismatches",
        graphs.len()
    ))
}

fn criterion_5() -> Outcome {
    let mut problems = 0;
    let mut satisfied = 0;
    let mut mismatches = 0;
    for g in exhaustive_graphs() {
        let d = decide(&g).unwrap();
        for check in d.checks() {
            let sat = is_satisfiable(&check.problem).is_satisfied();
            if sat != suitable_rmis_exists(&check.problem).unwrap() {
                mismatches += 1;
            }
            problems += 1;
            satisfied += usize::from(sat);
        }
    }
    ensure(
        mismatches == 0,
        format!("{mismatches} mismatches out of {problems}"),
    )?;
    ensure(problems > 0, "no component problems generated")?;
    Ok(format!(
        "{problems} component problems ({satisfied} satisfiable), 0 mismatches"
    ))
}

fn fixture_problem(flag: AttachmentFlag, artificial: bool) -> ComponentProblem {
    let local = |v: usize| {
        FIXTURE_COMPONENT_B_IDS
            .iter()
            .position(|&w| w == v)
            .unwrap()
    };
    let mut constraints = vec![LabelSet::EMPTY; 8];
    let pi_po = LabelSet::of(&[Label::PossiblyIn, Label::PossiblyOut]);
    constraints[local(2)] = pi_po;
    constraints[local(6)] = pi_po;
    constraints[local(11)] = pi_po;
    constraints[local(8)] = LabelSet::of(&[Label::PossiblyIn]);
    if artificial {
        constraints[local(10)] = LabelSet::of(&[Label::PossiblyOut]);
    }
    ComponentProblem::new(fixture_component_b(), constraints, Some(local(10)), flag).unwrap()
}

fn criterion_6() -> Outcome {
    let include = fixture_problem(AttachmentFlag::In, false);
    let SatOutcome::Satisfied(solution) = is_satisfiable(&include) else {
        return Err("flag=in unsatisfiable".into());
    };
    let picked: Vec<usize> = solution
        .selected()
        .iter()
        .map(|v| FIXTURE_COMPONENT_B_IDS[v])
        .collect();
    ensure(
        picked == [2, 8, 10, 13],
        format!("flag=in extracted {picked:?}"),
    )?;
    let oracle_in = suitable_rmis(&include).unwrap();
    ensure(
        oracle_in
            .iter()
            .any(|s| s.iter().filter(|&v| v < 8).eq(solution.selected().iter())),
        "no suitable gadget RMIS projects to the extracted set",
    )?;

    let exclude = fixture_problem(AttachmentFlag::Out, false);
    ensure(
        !is_satisfiable(&exclude).is_satisfied(),
        "flag=out satisfiable",
    )?;
    ensure(
        !suitable_rmis_exists(&exclude).unwrap(),
        "oracle finds flag=out suitable set",
    )?;

    let external = fixture_problem(AttachmentFlag::Out, true);
    let verdict = is_satisfiable(&external).is_satisfied();
    let oracle = suitable_rmis_exists(&external).unwrap();
    ensure(
        verdict == oracle,
        format!("external case: algorithm {verdict}, oracle {oracle}"),
    )?;
    Ok(format!(
        "in -> {{2,8,10,13}}, out -> unsatisfiable, external -> {verdict} (oracle agrees)"
    ))
}

fn criterion_7() -> Outcome {
    let graphs = biconnected_graphs();
    let bipartite = graphs.iter().filter(|g| g.is_bipartite()).count();
    let mismatches = graphs
        .iter()
        .filter(|g| decide(g).unwrap().accepts() != g.is_bipartite())
        .count();
    ensure(mismatches == 0, format!("{mismatches} random mismatches"))?;
    for n in (5..=15).step_by(2) {
        ensure(
            !decide(&cycle(n).unwrap()).unwrap().accepts(),
            format!("C{n} accepted"),
        )?;
    }
    for n in (4..=16).step_by(2) {
        ensure(
            decide(&cycle(n).unwrap()).unwrap().accepts(),
            format!("C{n} rejected"),
        )?;
    }
    Ok(format!(
        "{} random biconnected graphs ({bipartite} bipartite), odd C5..C15 NO, even C4..C16 YES",
        graphs.len()
    ))
}

fn criterion_8() -> Outcome {
    let mut instances: Vec<Graph> = vec![triangle(), bull(), square()];
    instances.extend(exhaustive_graphs());
    instances.extend(random_graphs());
    instances.extend(biconnected_graphs());
    let mut accepted = 0;
    let mut failures = 0;
    for g in &instances {
        let d = decide(g).unwrap();
        if !d.accepts() {
            continue;
        }
        accepted += 1;
        let robust = extract_rmis(g, &d)
            .map(|w| is_robust_mis(g, w.set()).unwrap_or(false))
            .unwrap_or(false);
        failures += usize::from(!robust);
    }
    ensure(
        failures == 0,
        format!("{failures} of {accepted} witnesses not robust"),
    )?;
    Ok(format!(
        "{accepted} accepting instances, every witness robust"
    ))
}

/// Spanning tree plus extra edges joining vertices of opposite depth
/// parity: bipartite, so labeling visits every node and accepts.
fn sparse_bipartite(n: usize, degree: f64, seed: u64) -> Graph {
    let mut rng = rng_from_seed(seed);
    let mut parity = vec![false; n];
    let mut pairs = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        parity[v] = !parity[u];
        pairs.push((u, v));
        seen.insert((u, v));
    }
    let target = (n as f64 * degree / 2.0) as usize;
    while pairs.len() < target {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if parity[u] != parity[v] && seen.insert((u.min(v), u.max(v))) {
            pairs.push((u, v));
        }
    }
    Graph::new(n, pairs).unwrap()
}

fn median_time(g: &Graph) -> (Duration, bool) {
    let mut accepted = false;
    let mut samples: Vec<Duration> = (0..5)
        .map(|_| {
            let start = Instant::now();
            let d = decide(g).unwrap();
            accepted = d.accepts();
            start.elapsed()
        })
        .collect();
    samples.sort();
    (samples[2], accepted)
}

fn scaling(label: &str, make: impl Fn(usize) -> Graph) -> Result<String, String> {
    let sizes = [500, 1000, 2000];
    let runs: Vec<(Duration, bool)> = sizes.iter().map(|&n| median_time(&make(n))).collect();
    let t2000 = runs[2].0;
    ensure(
        t2000 < Duration::from_secs(5),
        format!("{label}: n=2000 took {t2000:?}"),
    )?;
    let r1 = runs[1].0.as_secs_f64() / runs[0].0.as_secs_f64();
    let r2 = runs[2].0.as_secs_f64() / runs[1].0.as_secs_f64();
    ensure(
        r1 <= 10.0 && r2 <= 10.0,
        format!("{label}: growth factors {r1:.2}, {r2:.2}"),
    )?;
    let verdicts: Vec<&str> = runs
        .iter()
        .map(|r| if r.1 { "YES" } else { "NO" })
        .collect();
    Ok(format!(
        "{label} {:?}/{:?}/{:?} ({}) growth {r1:.2}x {r2:.2}x",
        runs[0].0,
        runs[1].0,
        runs[2].0,
        verdicts.join("/")
    ))
}

fn criterion_9() -> Outcome {
    let random = scaling("random", |n| {
        random_sparse_connected(n, 4.0, &mut rng_from_seed(n as u64)).unwrap()
    })?;
    let bipartite = scaling("bipartite", |n| sparse_bipartite(n, 4.0, n as u64))?;
    Ok(format!(
        "n=500/1000/2000, average degree 4: {random}; {bipartite}"
    ))
}

fn truth_table(vars: usize, clauses: &[(Literal, Literal)]) -> bool {
    let holds = |mask: u32, l: Literal| (mask >> l.var() & 1 == 1) == l.is_positive();
    (0u32..1 << vars).any(|mask| {
        clauses
            .iter()
            .all(|&(a, b)| holds(mask, a) || holds(mask, b))
    })
}

fn criterion_10() -> Outcome {
    let mut rng = rng_from_seed(2_048);
    let mut satisfiable = 0;
    let mut mismatches = 0;
    let count = 10_000;
    for _ in 0..count {
        let vars = rng.gen_range(1..=15);
        let mut f = TwoSatFormula::new(vars);
        for _ in 0..rng.gen_range(0..=3 * vars) {
            let mut lit = || {
                let v = rng.gen_range(0..vars);
                if rng.gen_bool(0.5) {
                    Literal::pos(v)
                } else {
                    Literal::neg(v)
                }
            };
            let (a, b) = (lit(), lit());
            f.add_clause(a, b).unwrap();
        }
        let brute = truth_table(vars, f.clauses());
        match f.solve() {
            Some(a) => {
                satisfiable += 1;
                if !brute || !a.satisfies(&f) {
                    mismatches += 1;
                }
            }
            None => mismatches += usize::from(brute),
        }
    }
    ensure(mismatches == 0, format!("{mismatches} mismatches"))?;
    Ok(format!(
        "{count} formulas ({satisfiable} satisfiable), 0 mismatches"
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("small examples", criterion_1),
        ("all-robust characterization", criterion_2),
        ("decision vs brute force", criterion_3),
        ("robustness check vs spanning subgraphs", criterion_4),
        ("component check vs gadget oracle", criterion_5),
        ("component fixture", criterion_6),
        ("biconnected dichotomy", criterion_7),
        ("constructed witnesses are robust", criterion_8),
        ("running time", criterion_9),
        ("2-SAT vs truth tables", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("[PASS] criterion {}: {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] criterion {}: {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
