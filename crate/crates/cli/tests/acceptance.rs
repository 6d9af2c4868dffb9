//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde_json::Value;

use edgeprim_core::actions::{is_primitive, Action};
use edgeprim_core::certify::suite::{run_suites, FixtureStore};
use edgeprim_core::certify::{Certificate, Checker, Verdict};
use edgeprim_core::constructions::{
    agammal1, agl1, alternating, complete_bipartite, complete_graph, cycle, heawood,
    hoffman_singleton, mathieu10, petersen, pgl2, psl2, symmetric,
};
use edgeprim_core::graph::{automorphism_group, s_arc_profile, Graph, MAX_S};
use edgeprim_core::{Group, Permutation};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

macro_rules! t {
    ($e:expr) => {
        $e.map_err(|err| format!("{}: {err}", stringify!($e)))?
    };
}

fn order(g: &Group) -> u64 {
    g.order_u64().expect("orders fit in u64")
}

fn checker() -> Checker {
    Checker::default()
}

fn expect_verdict(c: &Certificate, v: Verdict) -> Result<(), String> {
    ensure!(
        c.verdict == v,
        "{} gave {} ({:?}), expected {}",
        c.check_name,
        c.verdict.as_str(),
        c.reason,
        v.as_str()
    );
    Ok(())
}

fn evidence_u64(c: &Certificate, key: &str) -> Result<u64, String> {
    c.get_u64(key)
        .ok_or_else(|| format!("{} lacks integer evidence `{key}`", c.check_name))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let hs = hoffman_singleton();
    ensure!(hs.n() == 50, "order {}", hs.n());
    ensure!(hs.valency() == Some(7), "valency {:?}", hs.valency());
    ensure!(hs.girth() == Some(5), "girth {:?}", hs.girth());
    let aut = t!(automorphism_group(&hs));
    ensure!(order(&aut) == 252_000, "|Aut| = {}", aut.order());

    let c = checker();
    let ep = t!(c.is_edge_primitive(&aut, &hs));
    expect_verdict(&ep, Verdict::Pass)?;
    ensure!(evidence_u64(&ep, "edge_count")? == 175, "edge count");
    ensure!(
        evidence_u64(&ep, "edge_stabilizer_order")? == 1440,
        "edge stabilizer"
    );

    let s = t!(c.s_transitivity_degree(&aut, &hs));
    expect_verdict(&s, Verdict::Pass)?;
    ensure!(
        evidence_u64(&s, "s_degree")? == 3,
        "s-degree {:?}",
        s.get("s_degree")
    );

    let local = t!(c.local_structure(&aut, &hs));
    expect_verdict(&local, Verdict::Pass)?;
    ensure!(
        evidence_u64(&local, "kernel_order")? == 1,
        "G_v^[1] is not trivial"
    );

    let core = aut.perfect_core();
    for (g, stab, edge) in [(&aut, 5040, 1440), (&core, 2520, 720)] {
        let cert = t!(c.three_arc_criterion(g, &hs));
        expect_verdict(&cert, Verdict::Pass)?;
        let v = order(&t!(g.point_stabilizer(0)));
        ensure!(v == stab, "|G_v| = {v}, expected {stab}");
        let e = evidence_u64(&t!(c.is_edge_primitive(g, &hs)), "edge_stabilizer_order")?;
        ensure!(e == edge, "|G_uv| = {e}, expected {edge}");
    }

    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(120), "took {elapsed:?}");
    Ok(format!(
        "|Aut| = 252000, s = 3, {:.1}s",
        elapsed.as_secs_f64()
    ))
}

fn criterion_2() -> Outcome {
    let c = checker();
    let hs = hoffman_singleton();
    let k33 = t!(complete_bipartite(3));
    let cases = [
        (
            "HS",
            t!(automorphism_group(&hs)),
            hs.clone(),
            "almost-simple",
        ),
        ("K8", t!(pgl2(7)), t!(complete_graph(8)), "almost-simple"),
        (
            "K33",
            t!(automorphism_group(&k33)),
            k33,
            "complete-bipartite",
        ),
    ];
    for (name, g, graph, branch) in &cases {
        let cert = t!(c.theorem_main_check(g, graph));
        expect_verdict(&cert, Verdict::Pass).map_err(|e| format!("{name}: {e}"))?;
        let got = cert.get("branch").and_then(Value::as_str);
        ensure!(got == Some(*branch), "{name}: branch {got:?}");
    }
    Ok("3 of 3 pass".into())
}

fn criterion_3() -> Outcome {
    let c = checker();
    let k14 = t!(complete_graph(14));
    let psl = t!(psl2(13));
    ensure!(order(&psl) == 1092, "|PSL(2,13)| = {}", psl.order());
    expect_verdict(&t!(c.prime_valency_check(&psl, &k14)), Verdict::Pass)?;
    expect_verdict(&t!(c.is_edge_primitive(&psl, &k14)), Verdict::Pass)?;
    let s = t!(c.s_transitivity_degree(&psl, &k14));
    ensure!(
        evidence_u64(&s, "s_degree")? == 1,
        "K14 s-degree {:?}",
        s.get("s_degree")
    );

    let hw = heawood();
    let g = t!(automorphism_group(&hw));
    let reference = t!(pgl2(7));
    ensure!(order(&g) == 336, "|Aut(Heawood)| = {}", g.order());
    ensure!(
        g.fingerprint(1_000_000) == reference.fingerprint(1_000_000),
        "Aut(Heawood) does not match PGL(2,7)"
    );
    expect_verdict(&t!(c.prime_valency_check(&g, &hw)), Verdict::Pass)?;
    expect_verdict(&t!(c.is_edge_primitive(&g, &hw)), Verdict::Pass)?;
    let s = t!(c.s_transitivity_degree(&g, &hw));
    ensure!(
        evidence_u64(&s, "s_degree")? == 4,
        "Heawood s-degree {:?}",
        s.get("s_degree")
    );
    let local = t!(c.local_structure(&g, &hw));
    ensure!(evidence_u64(&local, "arc_kernel_order")? == 2, "|G_uv^[1]|");
    ensure!(
        local.get_bool("arc_kernel_p_group") == Some(true),
        "G_uv^[1] not a p-group"
    );
    Ok("K14 s = 1, Heawood s = 4 with |G_uv^[1]| = 2".into())
}

fn criterion_4() -> Outcome {
    let p = petersen();
    let aut = t!(automorphism_group(&p));
    ensure!(order(&aut) == 120, "|Aut(Petersen)| = {}", aut.order());
    let cert = t!(checker().is_edge_primitive(&aut, &p));
    expect_verdict(&cert, Verdict::Fail)?;

    let witness = cert.get("block_witness").ok_or("no block witness")?;
    let blocks: Vec<BTreeSet<(usize, usize)>> =
        serde_json::from_value(witness.clone()).map_err(|e| e.to_string())?;
    let edges: BTreeSet<(usize, usize)> = blocks.iter().flatten().copied().collect();
    ensure!(
        edges.len() == p.edge_count(),
        "witness does not partition the edges"
    );
    let size = blocks[0].len();
    ensure!(size > 1 && size < p.edge_count(), "witness is trivial");
    ensure!(blocks.iter().all(|b| b.len() == size), "unequal blocks");
    let all: HashSet<&BTreeSet<(usize, usize)>> = blocks.iter().collect();
    for g in aut.generators() {
        for b in &blocks {
            let image: BTreeSet<(usize, usize)> = b
                .iter()
                .map(|&(u, v)| {
                    let (x, y) = (g.apply(u), g.apply(v));
                    (x.min(y), x.max(y))
                })
                .collect();
            ensure!(all.contains(&image), "witness is not invariant");
        }
    }
    Ok(format!("fail with {} blocks of size {size}", blocks.len()))
}

fn criterion_5() -> Outcome {
    let dir = t!(tempfile::tempdir());
    let store = FixtureStore::new(dir.path());
    let suites = vec!["counting".to_string(), "selfnorm".to_string()];
    let report = t!(run_suites(&store, &suites, &Default::default()));
    let required = [
        "k5",
        "k33",
        "k8-pgl27",
        "k14-psl213",
        "heawood",
        "hoffman-singleton",
    ];
    let mut pairs = BTreeSet::new();
    for row in &report.rows {
        expect_verdict(&row.certificate, Verdict::Pass)
            .map_err(|e| format!("{} {:?}: {e}", row.fixture, row.subject))?;
        pairs.insert((row.fixture.clone(), row.subject.clone()));
    }
    for f in required {
        ensure!(
            report.rows.iter().any(|r| r.fixture == f),
            "fixture {f} not exercised"
        );
    }
    let small = report
        .rows
        .iter()
        .filter(|r| r.suite == "counting")
        .filter(|r| {
            r.certificate
                .get_u64("n_order")
                .is_some_and(|o| o <= 100_000)
        })
        .count();
    ensure!(small >= 8, "only {small} pairs with |N| <= 10^5");
    Ok(format!(
        "{} (G, N) pairs, {small} with |N| <= 10^5",
        pairs.len()
    ))
}

fn closure_order(gens: &[Permutation], limit: usize) -> Option<usize> {
    let id = Permutation::identity(gens[0].degree());
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                if seen.len() > limit {
                    return None;
                }
                queue.push_back(y);
            }
        }
    }
    Some(seen.len())
}

fn random_perm(rng: &mut StdRng, n: usize) -> Permutation {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    Permutation::new(v).unwrap()
}

/// Searches all partitions into equal cells of size `b` for one preserved by
/// every generator.
fn invariant_partition(gens: &[Permutation], n: usize, b: usize) -> bool {
    fn extend(
        gens: &[Permutation],
        cell: &mut Vec<usize>,
        used: &mut Vec<bool>,
        b: usize,
        blocks: &mut Vec<Vec<usize>>,
    ) -> bool {
        let n = used.len();
        if cell.len() == b {
            blocks.push(std::mem::take(cell));
            let found = extend(gens, cell, used, b, blocks);
            *cell = blocks.pop().unwrap();
            return found;
        }
        if cell.is_empty() {
            let Some(first) = used.iter().position(|u| !u) else {
                return preserved(gens, blocks, n);
            };
            used[first] = true;
            cell.push(first);
            let found = extend(gens, cell, used, b, blocks);
            cell.pop();
            used[first] = false;
            return found;
        }
        let last = *cell.last().unwrap();
        for x in last + 1..n {
            if used[x] {
                continue;
            }
            used[x] = true;
            cell.push(x);
            let found = extend(gens, cell, used, b, blocks);
            cell.pop();
            used[x] = false;
            if found {
                return true;
            }
        }
        false
    }

    fn preserved(gens: &[Permutation], blocks: &[Vec<usize>], n: usize) -> bool {
        let mut cell_of = vec![0; n];
        for (i, b) in blocks.iter().enumerate() {
            for &x in b {
                cell_of[x] = i;
            }
        }
        gens.iter().all(|g| {
            blocks.iter().all(|b| {
                let target = cell_of[g.apply(b[0])];
                b.iter().all(|&x| cell_of[g.apply(x)] == target)
            })
        })
    }

    extend(
        gens,
        &mut Vec::new(),
        &mut vec![false; n],
        b,
        &mut Vec::new(),
    )
}

fn primitive_by_search(g: &Group) -> bool {
    let n = g.degree();
    (2..n)
        .filter(|&b| n.is_multiple_of(b))
        .all(|b| !invariant_partition(g.generators(), n, b))
}

fn automorphisms_by_brute_force(graph: &Graph) -> HashSet<Permutation> {
    fn rec(
        graph: &Graph,
        img: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut HashSet<Permutation>,
    ) {
        let n = graph.n();
        let k = img.len();
        if k == n {
            out.insert(Permutation::new(img.clone()).unwrap());
            return;
        }
        for y in 0..n {
            if used[y] {
                continue;
            }
            if (0..k).any(|x| graph.has_edge(x, k) != graph.has_edge(img[x], y)) {
                continue;
            }
            used[y] = true;
            img.push(y);
            rec(graph, img, used, out);
            img.pop();
            used[y] = false;
        }
    }
    let mut out = HashSet::new();
    rec(
        graph,
        &mut Vec::new(),
        &mut vec![false; graph.n()],
        &mut out,
    );
    out
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed);

    let mut groups = 0;
    while groups < 50 {
        let n = rng.gen_range(2..=8);
        let k = rng.gen_range(1..=3);
        let gens: Vec<Permutation> = (0..k).map(|_| random_perm(&mut rng, n)).collect();
        let Some(expected) = closure_order(&gens, 5000) else {
            continue;
        };
        let g = t!(Group::build(&gens));
        ensure!(
            order(&g) == expected as u64,
            "order {} vs closure {expected}",
            g.order()
        );
        groups += 1;
    }

    let k33 = t!(complete_bipartite(3));
    let mut fixtures: Vec<(String, Group)> = vec![
        ("S4".into(), t!(symmetric(4))),
        ("S5".into(), t!(symmetric(5))),
        ("A5".into(), t!(alternating(5))),
        ("S6".into(), t!(symmetric(6))),
        ("PGL(2,5)".into(), t!(pgl2(5))),
        ("PSL(2,7)".into(), t!(psl2(7))),
        ("PGL(2,7)".into(), t!(pgl2(7))),
        ("AGammaL(1,8)".into(), t!(agammal1(8))),
        ("AGL(1,9)".into(), t!(agl1(9))),
        ("M10".into(), t!(mathieu10())),
        ("PSL(2,11)".into(), t!(psl2(11))),
        ("PGL(2,11)".into(), t!(pgl2(11))),
        ("Aut(K33)".into(), t!(automorphism_group(&k33))),
        ("Aut(Petersen)".into(), t!(automorphism_group(&petersen()))),
        (
            "S4 on K4 edges".into(),
            t!(Action::on_2sets(&t!(symmetric(4)))).image().clone(),
        ),
    ];
    for m in 3..=12 {
        fixtures.push((format!("Aut(C{m})"), t!(automorphism_group(&t!(cycle(m))))));
    }
    for (name, g) in &fixtures {
        ensure!(
            g.is_transitive() && g.degree() <= 12,
            "{name} is not a valid fixture"
        );
        let (fast, _) = t!(is_primitive(g));
        ensure!(
            fast == primitive_by_search(g),
            "{name}: primitivity mismatch"
        );
    }

    for i in 0..30 {
        let n = rng.gen_range(1..=8);
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(0.5))
            .collect();
        let graph = t!(Graph::new(n, edges));
        let aut = t!(automorphism_group(&graph));
        let brute = automorphisms_by_brute_force(&graph);
        let elements: HashSet<Permutation> = t!(aut.elements(1_000_000)).into_iter().collect();
        ensure!(elements == brute, "graph {i}: automorphism group mismatch");
    }

    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(format!(
        "50 groups, {} primitivity fixtures, 30 graphs, {:.1}s",
        fixtures.len(),
        elapsed.as_secs_f64()
    ))
}

fn criterion_7() -> Outcome {
    let dir = t!(tempfile::tempdir());
    let store = FixtureStore::new(dir.path());
    let report = t!(run_suites(
        &store,
        &["weiss".to_string()],
        &Default::default()
    ));
    let mut two_arc = 0;
    for row in &report.rows {
        expect_verdict(&row.certificate, Verdict::Pass)
            .map_err(|e| format!("{}: {e}", row.fixture))?;
        let s = evidence_u64(&row.certificate, "s_degree")?;
        if s < 2 {
            continue;
        }
        two_arc += 1;
        ensure!(s <= 7, "{}: s-degree {s}", row.fixture);
        let fixture = t!(store.load(&row.fixture));
        let graph = fixture.graph.as_ref().ok_or("fixture without graph")?;
        let profile = t!(s_arc_profile(&fixture.group, graph, MAX_S));
        ensure!(
            !profile.transitive[MAX_S],
            "{}: transitive on 8-arcs",
            row.fixture
        );
    }
    ensure!(two_arc > 0, "no 2-arc-transitive fixtures");
    Ok(format!("{two_arc} 2-arc-transitive fixtures, all s <= 7"))
}

fn run_cli(args: &[&str], dir: &Path) -> Result<(i32, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_edgeprim"))
        .args(args)
        .current_dir(dir)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), out.stdout))
}

fn criterion_8() -> Outcome {
    let dir = t!(tempfile::tempdir());
    let path = dir.path();
    let (code, _) = run_cli(
        &[
            "construct",
            "--family",
            "hoffman-singleton",
            "--out",
            "hs.graph",
        ],
        path,
    )?;
    ensure!(code == 0, "construct exited {code}");
    let runs = [
        vec!["lemmas", "--suite", "all", "--fixtures", "fx", "--json"],
        vec!["analyze", "--graph", "hs.graph", "--json"],
    ];
    let mut bytes = 0;
    for args in &runs {
        let (c1, first) = run_cli(args, path)?;
        let (c2, second) = run_cli(args, path)?;
        ensure!(c1 == 0 && c2 == 0, "{} exited {c1}/{c2}", args[0]);
        ensure!(
            !first.is_empty() && first == second,
            "{} output differs",
            args[0]
        );
        bytes += first.len();
    }
    Ok(format!("{bytes} bytes identical across runs"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("Hoffman-Singleton pipeline", criterion_1),
        ("main theorem on HS, K8, K33", criterion_2),
        ("prime-valency corollary", criterion_3),
        ("Petersen negative control", criterion_4),
        ("counting and self-normalizing lemmas", criterion_5),
        ("oracle equivalence", criterion_6),
        ("s-degree cap", criterion_7),
        ("determinism", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let result = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
