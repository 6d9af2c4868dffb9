//! Fixture store, manifest and the parallel lemma-suite runner.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Certificate, CheckConfig, Checker, Verdict, SCHEMA_VERSION};
use crate::constructions::{
    agammal1, agl1, complete_bipartite, complete_graph, heawood, hoffman_singleton, petersen, pgl2,
    psl2, symmetric,
};
use crate::error::{Error, Result};
use crate::graph::{automorphism_group, Graph};
use crate::group::Group;
use crate::io::{parse_graph, parse_group, write_graph, write_group};

/// Built-in fixtures: name and description.
pub const FIXTURES: &[(&str, &str)] = &[
    ("k4", "K_4 with Sym(4)"),
    ("k5", "K_5 with Sym(5)"),
    ("k33", "K_{3,3} with its full automorphism group"),
    ("k8-pgl27", "K_8 with PGL(2,7) on the projective line"),
    ("k14-psl213", "K_14 with PSL(2,13) on the projective line"),
    ("heawood", "Heawood graph with its full automorphism group"),
    (
        "hoffman-singleton",
        "Hoffman-Singleton graph with its full automorphism group",
    ),
    (
        "hoffman-singleton-core",
        "Hoffman-Singleton graph with the perfect core of its automorphism group",
    ),
    (
        "petersen",
        "Petersen graph with its full automorphism group",
    ),
    ("affine-agl19", "AGL(1,9) on 9 points"),
    ("affine-agammal18", "AGammaL(1,8) on 8 points"),
];

/// Suites in canonical order.
pub const SUITES: &[&str] = &[
    "edge-primitive",
    "weiss",
    "local",
    "main",
    "counting",
    "selfnorm",
    "sylow",
    "prime-valency",
    "three-arc",
    "affine",
];

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub graph: Option<Graph>,
    pub group: Group,
}

fn build_fixture(name: &str) -> Result<(Option<Graph>, Group)> {
    let with_aut = |g: Graph| -> Result<(Option<Graph>, Group)> {
        let aut = automorphism_group(&g)?;
        Ok((Some(g), aut))
    };
    match name {
        "k4" => Ok((Some(complete_graph(4)?), symmetric(4)?)),
        "k5" => Ok((Some(complete_graph(5)?), symmetric(5)?)),
        "k33" => with_aut(complete_bipartite(3)?),
        "k8-pgl27" => Ok((Some(complete_graph(8)?), pgl2(7)?)),
        "k14-psl213" => Ok((Some(complete_graph(14)?), psl2(13)?)),
        "heawood" => with_aut(heawood()),
        "hoffman-singleton" => with_aut(hoffman_singleton()),
        "hoffman-singleton-core" => {
            let g = hoffman_singleton();
            let core = automorphism_group(&g)?.perfect_core();
            Ok((Some(g), core))
        }
        "petersen" => with_aut(petersen()),
        "affine-agl19" => Ok((None, agl1(9)?)),
        "affine-agammal18" => Ok((None, agammal1(8)?)),
        _ => Err(Error::Unknown {
            what: "fixture",
            name: name.to_string(),
        }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub schema_version: u32,
    /// Suite name to fixture names.
    pub suites: BTreeMap<String, Vec<String>>,
}

impl Default for Manifest {
    fn default() -> Self {
        let list = |names: &[&str]| names.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        let lemma_fixtures = [
            "k5",
            "k33",
            "k8-pgl27",
            "k14-psl213",
            "heawood",
            "hoffman-singleton",
        ];
        let graph_fixtures = [
            "k4",
            "k5",
            "k33",
            "k8-pgl27",
            "k14-psl213",
            "heawood",
            "hoffman-singleton",
            "hoffman-singleton-core",
            "petersen",
        ];
        let edge_primitive: Vec<&str> = graph_fixtures
            .iter()
            .copied()
            .filter(|f| !matches!(*f, "k4" | "petersen"))
            .collect();
        let mut suites = BTreeMap::new();
        suites.insert("edge-primitive".into(), list(&edge_primitive));
        suites.insert("weiss".into(), list(&graph_fixtures));
        suites.insert("local".into(), list(&graph_fixtures));
        suites.insert("main".into(), list(&graph_fixtures));
        suites.insert("counting".into(), list(&lemma_fixtures));
        suites.insert("selfnorm".into(), list(&lemma_fixtures));
        suites.insert("sylow".into(), list(&lemma_fixtures));
        suites.insert(
            "prime-valency".into(),
            list(&[
                "k8-pgl27",
                "k14-psl213",
                "heawood",
                "hoffman-singleton",
                "hoffman-singleton-core",
            ]),
        );
        suites.insert(
            "three-arc".into(),
            list(&[
                "k8-pgl27",
                "heawood",
                "hoffman-singleton",
                "hoffman-singleton-core",
                "petersen",
            ]),
        );
        suites.insert("affine".into(), list(&["affine-agl19", "affine-agammal18"]));
        Manifest {
            schema_version: SCHEMA_VERSION,
            suites,
        }
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, text).map_err(|e| io_err(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| io_err(path, e))
}

/// Fixture files `<name>.graph` / `<name>.group` under one directory,
/// generated on first use.
#[derive(Clone, Debug)]
pub struct FixtureStore {
    dir: PathBuf,
}

impl FixtureStore {
    pub fn new(dir: impl Into<PathBuf>) -> FixtureStore {
        FixtureStore { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn graph_path(&self, name: &str) -> PathBuf {
        self.dir.join(format!("{name}.graph"))
    }

    pub fn group_path(&self, name: &str) -> PathBuf {
        self.dir.join(format!("{name}.group"))
    }

    fn ensure_dir(&self) -> Result<()> {
        fs::create_dir_all(&self.dir).map_err(|e| io_err(&self.dir, e))
    }

    /// Loads a fixture, generating its files if the group file is missing.
    pub fn load(&self, name: &str) -> Result<Fixture> {
        let group_path = self.group_path(name);
        let graph_path = self.graph_path(name);
        if !group_path.exists() {
            let (graph, group) = build_fixture(name)?;
            self.ensure_dir()?;
            if let Some(g) = &graph {
                write_atomic(&graph_path, &write_graph(g))?;
            }
            write_atomic(&group_path, &write_group(&group))?;
        }
        let group_text = fs::read_to_string(&group_path).map_err(|e| io_err(&group_path, e))?;
        let group = parse_group(&group_text)?;
        let graph = if graph_path.exists() {
            let text = fs::read_to_string(&graph_path).map_err(|e| io_err(&graph_path, e))?;
            Some(parse_graph(&text)?)
        } else {
            None
        };
        Ok(Fixture {
            name: name.to_string(),
            graph,
            group,
        })
    }

    /// Reads the manifest, writing the default one if absent.
    pub fn manifest(&self) -> Result<Manifest> {
        let path = self.dir.join(MANIFEST_FILE);
        if !path.exists() {
            self.ensure_dir()?;
            let text = serde_json::to_string_pretty(&Manifest::default()).expect("serializable");
            write_atomic(&path, &(text + "\n"))?;
        }
        let text = fs::read_to_string(&path).map_err(|e| io_err(&path, e))?;
        serde_json::from_str(&text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })
    }
}

/// Nontrivial normal subgroups used as `N`: all of them when `|G|` is within
/// the sweep cutoff, otherwise `G` and its perfect core.
pub fn harvest_normal_subgroups(g: &Group, config: &CheckConfig) -> Result<Vec<Group>> {
    let small = g
        .order_u64()
        .is_some_and(|o| o <= config.normal_sweep_cutoff);
    if small {
        return g.normal_subgroups(config.enumeration_cutoff);
    }
    let mut out = Vec::new();
    let core = g.perfect_core();
    if !core.is_trivial() && core != *g {
        out.push(core);
    }
    out.push(g.clone());
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteRow {
    pub suite: String,
    pub fixture: String,
    pub subject: Option<String>,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteReport {
    pub rows: Vec<SuiteRow>,
}

impl SuiteReport {
    pub fn count(&self, verdict: Verdict) -> usize {
        self.rows
            .iter()
            .filter(|r| r.certificate.verdict == verdict)
            .count()
    }

    /// Fixture-by-check summary, one line per cell.
    pub fn table(&self) -> String {
        let mut out = String::new();
        let w_suite = self
            .rows
            .iter()
            .map(|r| r.suite.len())
            .max()
            .unwrap_or(5)
            .max(5);
        let w_fix = self
            .rows
            .iter()
            .map(|r| r.fixture.len())
            .max()
            .unwrap_or(7)
            .max(7);
        let w_subj = self
            .rows
            .iter()
            .map(|r| r.subject.as_deref().unwrap_or("-").len())
            .max()
            .unwrap_or(7)
            .max(7);
        writeln!(
            out,
            "{:w_suite$}  {:w_fix$}  {:w_subj$}  verdict",
            "suite", "fixture", "subject"
        )
        .unwrap();
        for r in &self.rows {
            let verdict = r.certificate.verdict.as_str();
            let reason = r
                .certificate
                .reason
                .as_deref()
                .map(|s| format!(" ({s})"))
                .unwrap_or_default();
            writeln!(
                out,
                "{:w_suite$}  {:w_fix$}  {:w_subj$}  {verdict}{reason}",
                r.suite,
                r.fixture,
                r.subject.as_deref().unwrap_or("-"),
            )
            .unwrap();
        }
        writeln!(
            out,
            "{} cells: {} pass, {} fail, {} not-applicable, {} scale-limit",
            self.rows.len(),
            self.count(Verdict::Pass),
            self.count(Verdict::Fail),
            self.count(Verdict::NotApplicable),
            self.count(Verdict::ScaleLimit),
        )
        .unwrap();
        out
    }
}

fn uses_normal_subgroups(suite: &str) -> bool {
    matches!(suite, "counting" | "selfnorm" | "sylow" | "affine")
}

struct Cell<'a> {
    suite: &'a str,
    fixture: &'a str,
    normal: Option<usize>,
}

fn expand_suites(manifest: &Manifest, requested: &[String]) -> Result<Vec<(String, Vec<String>)>> {
    let names: Vec<String> = if requested.iter().any(|s| s == "all") {
        SUITES
            .iter()
            .filter(|s| manifest.suites.contains_key(**s))
            .map(|s| s.to_string())
            .collect()
    } else {
        requested.to_vec()
    };
    names
        .into_iter()
        .map(|s| {
            if !SUITES.contains(&s.as_str()) {
                return Err(Error::Unknown {
                    what: "suite",
                    name: s,
                });
            }
            let fixtures = manifest.suites.get(&s).cloned().unwrap_or_default();
            Ok((s, fixtures))
        })
        .collect()
}

/// Runs the requested suites (or `all`) over the store's manifest.
pub fn run_suites(
    store: &FixtureStore,
    requested: &[String],
    config: &CheckConfig,
) -> Result<SuiteReport> {
    let manifest = store.manifest()?;
    let selected = expand_suites(&manifest, requested)?;

    let names: BTreeSet<&str> = selected
        .iter()
        .flat_map(|(_, f)| f.iter().map(String::as_str))
        .collect();
    let fixtures: HashMap<&str, Fixture> = names
        .par_iter()
        .map(|&n| store.load(n).map(|f| (n, f)))
        .collect::<Result<_>>()?;

    let harvest_names: BTreeSet<&str> = selected
        .iter()
        .filter(|(s, _)| uses_normal_subgroups(s))
        .flat_map(|(_, f)| f.iter().map(String::as_str))
        .collect();
    let normals: HashMap<&str, Vec<Group>> = harvest_names
        .par_iter()
        .map(|&n| harvest_normal_subgroups(&fixtures[n].group, config).map(|v| (n, v)))
        .collect::<Result<_>>()?;

    let mut cells = Vec::new();
    for (suite, fs) in &selected {
        for f in fs {
            if uses_normal_subgroups(suite) {
                for i in 0..normals[f.as_str()].len() {
                    cells.push(Cell {
                        suite,
                        fixture: f,
                        normal: Some(i),
                    });
                }
            } else {
                cells.push(Cell {
                    suite,
                    fixture: f,
                    normal: None,
                });
            }
        }
    }

    let rows = cells
        .par_iter()
        .map(|cell| {
            let fixture = &fixtures[cell.fixture];
            let n = cell.normal.map(|i| &normals[cell.fixture][i]);
            let subject = cell
                .normal
                .zip(n)
                .map(|(i, n)| format!("N#{i} order {}", n.order()));
            let mut inputs = vec![format!("fixture:{}", fixture.name)];
            inputs.extend(subject.clone());
            let checker = Checker::new(config.clone(), inputs);
            let certificate = evaluate(&checker, cell.suite, fixture, n)?;
            Ok(SuiteRow {
                suite: cell.suite.to_string(),
                fixture: cell.fixture.to_string(),
                subject,
                certificate,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport { rows })
}

fn evaluate(c: &Checker, suite: &str, fixture: &Fixture, n: Option<&Group>) -> Result<Certificate> {
    let g = &fixture.group;
    if suite == "affine" {
        return c.affine_normal_check(g, n.expect("affine cells carry N"));
    }
    let graph = fixture.graph.as_ref().ok_or_else(|| Error::Unknown {
        what: "graph for fixture",
        name: fixture.name.clone(),
    })?;
    match suite {
        "edge-primitive" => c.is_edge_primitive(g, graph),
        "weiss" => c.s_transitivity_degree(g, graph),
        "local" => c.local_structure(g, graph),
        "main" => c.theorem_main_check(g, graph),
        "counting" => c.lemma_counting_check(g, n.expect("N"), graph),
        "selfnorm" => c.corollary_selfnorm_check(g, n.expect("N"), graph),
        "sylow" => c.sylow_arc_check(g, n.expect("N"), graph),
        "prime-valency" => c.prime_valency_check(g, graph),
        "three-arc" => c.three_arc_criterion(g, graph),
        other => Err(Error::Unknown {
            what: "suite",
            name: other.to_string(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_covers_known_names() {
        let m = Manifest::default();
        let fixture_names: Vec<&str> = FIXTURES.iter().map(|(n, _)| *n).collect();
        for (suite, fixtures) in &m.suites {
            assert!(SUITES.contains(&suite.as_str()), "{suite}");
            for f in fixtures {
                assert!(fixture_names.contains(&f.as_str()), "{f}");
            }
        }
    }

    #[test]
    fn unknown_names_are_reported() {
        assert!(matches!(build_fixture("nope"), Err(Error::Unknown { .. })));
        let m = Manifest::default();
        assert!(matches!(
            expand_suites(&m, &["bogus".to_string()]),
            Err(Error::Unknown { .. })
        ));
        assert_eq!(
            expand_suites(&m, &["all".to_string()]).unwrap().len(),
            SUITES.len()
        );
    }

    #[test]
    fn harvest_small_and_large() {
        let config = CheckConfig::default();
        let s5 = symmetric(5).unwrap();
        let orders: Vec<u64> = harvest_normal_subgroups(&s5, &config)
            .unwrap()
            .iter()
            .map(|g| g.order_u64().unwrap())
            .collect();
        assert_eq!(orders, vec![60, 120]);
        let tight = CheckConfig {
            normal_sweep_cutoff: 100,
            ..CheckConfig::default()
        };
        let orders: Vec<u64> = harvest_normal_subgroups(&s5, &tight)
            .unwrap()
            .iter()
            .map(|g| g.order_u64().unwrap())
            .collect();
        assert_eq!(orders, vec![60, 120]);
    }
}
