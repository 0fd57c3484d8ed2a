//! End-to-end acceptance checks. Runs without the libtest harness and prints
//! one PASS or FAIL line per criterion; exits non-zero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use transitset::hypergraph::{hypergraph_to_transitions, validate_connecting};
use transitset::sat::{build_formula_graph, configuration_table, verify_reduction, Assignment, CnfFormula, TableOptions};
use transitset::solvers::{
    exact_min_transitions, lower_bound, min_cost_cover, solve, tau, tau_heuristic_hypergraph, CoverInstance,
    CoverOptions, Method, SolveMode,
};
use transitset::transitions::{is_t_connected, oracle_is_t_connected, transitions_to_hypergraph};
use transitset::{Family, Graph};

/// Subset budget for the brute-force transition search.
const BRUTE_LIMIT: u64 = 2_000_000_000;

/// Minimum cost of each clause configuration, as published.
const TABLE: [(&str, usize); 20] = [
    ("BBB", 28),
    ("BBU", 27),
    ("BBS", 27),
    ("BBN", 27),
    ("BUU", 26),
    ("BUS", 26),
    ("BUN", 26),
    ("BSS", 26),
    ("BSN", 26),
    ("BNN", 26),
    ("UUU", 26),
    ("UUS", 25),
    ("UUN", 25),
    ("USS", 25),
    ("USN", 25),
    ("UNN", 25),
    ("SSS", 25),
    ("SSN", 25),
    ("SNN", 25),
    ("NNN", 25),
];

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed <= limit, || format!("took {elapsed:.1?}, limit {limit:?}"))
}

fn exact_cover_cost(g: &Graph) -> usize {
    min_cost_cover(&CoverInstance::connecting(g), CoverOptions::default())
        .expect("small instances solve")
        .cost
}

fn configuration_costs() -> Outcome {
    let start = Instant::now();
    let table = configuration_table(&TableOptions::default()).map_err(|e| e.to_string())?;
    let mut wrong = Vec::new();
    for (name, expected) in TABLE {
        let got = table.iter().find(|(c, _)| c.to_string() == name).map(|(_, s)| s.cost);
        if got != Some(expected) {
            wrong.push(format!("{name}: expected {expected}, got {got:?}"));
        }
    }
    ensure(table.len() == 20 && wrong.is_empty(), || wrong.join("; "))?;
    within(start.elapsed(), Duration::from_secs(3600))?;
    Ok(format!("20/20 entries match in {:.1?}", start.elapsed()))
}

fn path_complement_seven() -> Outcome {
    let start = Instant::now();
    let g = Family::PathComplement(7).build().unwrap();
    let h = solve(&g, SolveMode::Heuristic, None).map_err(|e| e.to_string())?;
    let e = solve(&g, SolveMode::Exact, None).map_err(|e| e.to_string())?;
    let t = tau(&g).unwrap();
    ensure(h.cost == 5 && t == 5, || format!("heuristic {} tau {t}, expected 5", h.cost))?;
    ensure(e.cost == 4 && e.transitions.len() == 4, || {
        format!("exact cost {} with {} transitions", e.cost, e.transitions.len())
    })?;
    ensure(e.lower_bound == 4 && e.optimal, || {
        format!("lower bound {} optimal {}", e.lower_bound, e.optimal)
    })?;
    ensure(is_t_connected(&g, &e.transitions), || "exact transitions not connecting".into())?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("exact 4, heuristic 5, lower bound 4 in {:.1?}", start.elapsed()))
}

fn spider_complement() -> Outcome {
    let start = Instant::now();
    let g = Family::SpiderComplement(3).build().unwrap();
    let h = tau_heuristic_hypergraph(&g).unwrap();
    let e = solve(&g, SolveMode::Exact, None).map_err(|e| e.to_string())?;
    ensure(h.cost() == 8, || format!("heuristic {}", h.cost()))?;
    ensure(e.cost == 6 && e.optimal && e.lower_bound == 6, || {
        format!("exact {} lower bound {} optimal {}", e.cost, e.lower_bound, e.optimal)
    })?;
    ensure(is_t_connected(&g, &e.transitions), || "exact transitions not connecting".into())?;
    within(start.elapsed(), Duration::from_secs(60))?;

    let mut ratios = Vec::new();
    for n in 2..=5 {
        let g = Family::SpiderComplement(n).build().unwrap();
        let heuristic = tau_heuristic_hypergraph(&g).unwrap().cost();
        let lb = lower_bound(&g).unwrap();
        ensure(heuristic == 3 * n - 1 && lb == 2 * n, || {
            format!("n={n}: heuristic {heuristic}, lower bound {lb}")
        })?;
        ratios.push(heuristic as f64 / lb as f64);
    }
    ensure(ratios.windows(2).all(|w| w[0] < w[1]) && ratios.iter().all(|&r| r < 1.5), || {
        format!("ratios {ratios:?}")
    })?;
    Ok(format!("heuristic 8, exact 6 certified; ratios {ratios:.3?}"))
}

fn trees_and_cut_vertices() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut brute_checked = 0;
    let mut graphs = Vec::new();
    for seed in 0..200 {
        let n = rng.gen_range(2..=9);
        graphs.push(Family::RandomTree { n, seed }.build().unwrap());
    }
    for _ in 0..100 {
        let n = rng.gen_range(3..=8);
        let g = common::random_cut_vertex_graph(&mut rng, n);
        ensure(g.has_cut_vertex().unwrap(), || "generator produced a 2-connected graph".into())?;
        graphs.push(g);
    }
    for g in &graphs {
        let n = g.vertex_count();
        let expected = n.saturating_sub(2);
        let exact = exact_cover_cost(g);
        ensure(exact == expected, || format!("{g:?}: exact {exact}, expected {expected}"))?;
        let report = solve(g, SolveMode::Auto, None).unwrap();
        ensure(report.cost == expected && report.optimal, || {
            format!("{g:?}: solve reported {}", report.cost)
        })?;
        ensure(matches!(report.method, Method::Tree | Method::CutVertex), || {
            format!("{g:?}: method {:?}", report.method)
        })?;
        if n <= 7 {
            let brute = exact_min_transitions(g, BRUTE_LIMIT).map_err(|e| e.to_string())?;
            ensure(brute.len() == expected, || format!("{g:?}: brute force {}", brute.len()))?;
            brute_checked += 1;
        }
    }
    within(start.elapsed(), Duration::from_secs(300))?;
    Ok(format!(
        "300 graphs at n-2, {brute_checked} confirmed by brute force, in {:.1?}",
        start.elapsed()
    ))
}

fn small_graph_corpus() -> Vec<Graph> {
    let mut corpus: Vec<Graph> = (1..=6).flat_map(common::connected_graphs_up_to_isomorphism).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let p = rng.gen_range(0.1..0.9);
        corpus.push(common::random_connected(&mut rng, 7, p));
    }
    corpus
}

fn transitions_equal_cover(corpus: &[Graph]) -> Outcome {
    let start = Instant::now();
    let classes = corpus.len() - 100;
    ensure(classes == 143, || format!("{classes} connected graphs on at most 6 vertices"))?;
    for g in corpus {
        let brute = exact_min_transitions(g, BRUTE_LIMIT).map_err(|e| e.to_string())?;
        let cover = exact_cover_cost(g);
        ensure(brute.len() == cover, || format!("{g:?}: brute {} cover {cover}", brute.len()))?;
    }
    within(start.elapsed(), Duration::from_secs(1800))?;
    Ok(format!(
        "{} graphs ({classes} classes up to 6 vertices, 100 on 7) agree in {:.1?}",
        corpus.len(),
        start.elapsed()
    ))
}

fn sandwich(corpus: &[Graph]) -> Outcome {
    let mut violations = Vec::new();
    for g in corpus {
        let (lb, exact, t) = (lower_bound(g).unwrap(), exact_cover_cost(g), tau(g).unwrap());
        if !(lb <= exact && exact <= t && 2 * t <= 3 * exact) {
            violations.push(format!("{g:?}: lb {lb} exact {exact} tau {t}"));
        }
    }
    ensure(violations.is_empty(), || violations.join("; "))?;
    Ok(format!("{} graphs, zero violations", corpus.len()))
}

fn conversions() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..500 {
        let n = rng.gen_range(2..=8);
        let p = rng.gen_range(0.1..0.8);
        let g = common::random_connected(&mut rng, n, p);
        if i % 2 == 0 {
            let h = common::random_connecting_hypergraph(&mut rng, &g);
            let report = validate_connecting(&g, &h);
            ensure(report.valid, || format!("generator produced invalid {h}"))?;
            let t = hypergraph_to_transitions(&g, &h).map_err(|e| e.to_string())?;
            ensure(t.len() <= h.cost() && is_t_connected(&g, &t), || {
                format!("{g:?} {h}: {} transitions, cost {}", t.len(), h.cost())
            })?;
        } else {
            let t = common::random_minimal_connecting(&mut rng, &g);
            let h = transitions_to_hypergraph(&g, &t).map_err(|e| e.to_string())?;
            ensure(h.cost() <= t.len() && validate_connecting(&g, &h).valid, || {
                format!("{g:?} {t}: hypergraph {h} cost {}", h.cost())
            })?;
        }
    }
    Ok("500 instances, zero violations".into())
}

fn checker_matches_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut connected = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=7);
        let g = if rng.gen_bool(0.8) {
            let p = rng.gen_range(0.0..0.7);
            common::random_connected(&mut rng, n, p)
        } else {
            common::random_graph(&mut rng, n, 0.4)
        };
        let keep = rng.gen_range(0.0..1.0);
        let t = common::random_transitions(&mut rng, &g, keep);
        let fast = is_t_connected(&g, &t);
        ensure(fast == oracle_is_t_connected(&g, &t), || format!("{g:?} {t}: checker says {fast}"))?;
        connected += fast as usize;
    }
    within(start.elapsed(), Duration::from_secs(120))?;
    Ok(format!("1000 pairs ({connected} connected), zero discrepancies"))
}

fn reduction_end_to_end() -> Outcome {
    let f = CnfFormula::parse_dimacs("p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n").map_err(|e| e.to_string())?;
    let gadget = build_formula_graph(&f).map_err(|e| e.to_string())?;
    let g = &gadget.graph;
    ensure(g.vertex_count() == 64 && g.edge_count() == 80, || {
        format!("{} vertices, {} edges", g.vertex_count(), g.edge_count())
    })?;
    ensure(g.is_connected() && g.is_co_connected(), || "not connected and co-connected".into())?;
    let opts = TableOptions::default();
    let mut costs = Vec::new();
    for (values, expected) in [([true, false, false], 50), ([true, true, true], 51)] {
        let a = Assignment::new(values.to_vec());
        let (_, _, report) = verify_reduction(&f, &a, &opts).map_err(|e| e.to_string())?;
        ensure(report.passed() && report.cost == expected, || {
            format!("{values:?}: cost {} passed {}", report.cost, report.passed())
        })?;
        costs.push(report.cost);
    }
    Ok(format!("64 vertices, 80 edges; satisfying {} falsifying {}", costs[0], costs[1]))
}

fn main() -> ExitCode {
    let corpus = small_graph_corpus();
    let criteria: Vec<Criterion> = vec![
        ("configuration table", Box::new(configuration_costs)),
        ("path complement on 7 vertices", Box::new(path_complement_seven)),
        ("spider complement certification", Box::new(spider_complement)),
        ("tree and cut-vertex optimum", Box::new(trees_and_cut_vertices)),
        ("transition optimum equals cover optimum", Box::new(|| transitions_equal_cover(&corpus))),
        ("lower bound and tau sandwich", Box::new(|| sandwich(&corpus))),
        ("conversion inequalities", Box::new(conversions)),
        ("checker matches oracle", Box::new(checker_matches_oracle)),
        ("reduction end to end", Box::new(reduction_end_to_end)),
    ];
    // optional criterion numbers on the command line select a subset
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        if !only.is_empty() && !only.contains(&(i + 1)) {
            continue;
        }
        match check() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {failed} failed");
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
