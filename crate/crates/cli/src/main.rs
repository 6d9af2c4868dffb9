use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use sha2::{Digest, Sha256};

use edgeprim_core::actions::is_primitive;
use edgeprim_core::certify::suite::{run_suites, FixtureStore, SuiteReport};
use edgeprim_core::certify::{Certificate, CheckConfig, Checker, Verdict};
use edgeprim_core::constructions::{
    complete_bipartite, complete_graph, coset_graph, cycle, heawood, hoffman_singleton, petersen,
    CosetGraphSpec,
};
use edgeprim_core::error::Error;
use edgeprim_core::graph::{automorphism_group, Graph, MAX_S};
use edgeprim_core::group::Group;
use edgeprim_core::io::{parse_graph, parse_group, write_graph, write_group};
use edgeprim_core::perm::Permutation;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_SCALE: u8 = 3;

const MIN_CUTOFF: u64 = 1_000;

const FAMILIES: &[(&str, &str)] = &[
    ("complete:<n>", "complete graph K_n"),
    ("complete-bipartite:<d>", "complete bipartite graph K_{d,d}"),
    ("cycle:<n>", "cycle C_n"),
    ("petersen", "Petersen graph"),
    ("heawood", "Heawood graph"),
    ("hoffman-singleton", "Hoffman-Singleton graph"),
    (
        "coset:<spec.json>",
        "coset graph Cos(G, H, HaH); also writes the group file",
    ),
];

const CHECKS: &[&str] = &[
    "edge-primitive",
    "s-degree",
    "local-structure",
    "almost-simple",
    "main-theorem",
    "prime-valency",
    "three-arc",
];

#[derive(Parser)]
#[command(
    name = "edgeprim",
    version,
    about = "Certify edge-primitive and s-arc-transitive graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Limits {
    /// Element-enumeration cutoff (at least 1000)
    #[arg(long, default_value_t = 1_000_000)]
    cutoff: u64,
    /// Largest s probed for s-arc-transitivity (at most 8)
    #[arg(long, default_value_t = MAX_S)]
    s_cap: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named graph family and write it in canonical form
    Construct {
        #[arg(long)]
        family: String,
        /// Output graph file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run checks on a graph and a group acting on it
    Analyze {
        #[arg(long)]
        graph: PathBuf,
        /// Group file; the full automorphism group is computed when omitted
        #[arg(long)]
        group: Option<PathBuf>,
        /// Comma-separated checks; all of them when omitted
        #[arg(long, value_delimiter = ',')]
        check: Vec<String>,
        #[command(flatten)]
        limits: Limits,
        /// Print certificates as JSON
        #[arg(long)]
        json: bool,
        /// Directory receiving one `<check>.json` per certificate
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the lemma suite over the fixture manifest
    Lemmas {
        /// Comma-separated suite names, or `all`
        #[arg(long, value_delimiter = ',', default_value = "all")]
        suite: Vec<String>,
        /// Fixture directory; missing fixtures are generated
        #[arg(long, default_value = "fixtures")]
        fixtures: PathBuf,
        #[command(flatten)]
        limits: Limits,
        /// Print the full report as JSON
        #[arg(long)]
        json: bool,
        /// File receiving the JSON report
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Basic queries on a permutation group
    Group {
        #[arg(value_enum)]
        query: GroupQuery,
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupQuery {
    Order,
    Orbits,
    Blocks,
}

/// Error carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn core(context: &str, e: Error) -> Failure {
        let code = if e.is_scale_limit() {
            EXIT_SCALE
        } else {
            EXIT_USAGE
        };
        Failure {
            code,
            message: format!("{context}: {e}"),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Construct { family, out } => construct(&family, out.as_deref()),
        Command::Analyze {
            graph,
            group,
            check,
            limits,
            json,
            out,
        } => analyze(
            &graph,
            group.as_deref(),
            &check,
            &limits,
            json,
            out.as_deref(),
        ),
        Command::Lemmas {
            suite,
            fixtures,
            limits,
            json,
            out,
        } => lemmas(&suite, &fixtures, &limits, json, out.as_deref()),
        Command::Group { query, group, json } => group_query(query, &group, json),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> CliResult<(Graph, String)> {
    let text = read(path)?;
    let g = parse_graph(&text).map_err(|e| Failure::core(&path.display().to_string(), e))?;
    Ok((g, text))
}

fn load_group(path: &Path) -> CliResult<(Group, String)> {
    let text = read(path)?;
    let g = parse_group(&text).map_err(|e| Failure::core(&path.display().to_string(), e))?;
    Ok((g, text))
}

fn sha256(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn config(limits: &Limits) -> CliResult<CheckConfig> {
    if limits.cutoff < MIN_CUTOFF {
        return Err(Failure::usage(format!(
            "--cutoff must be at least {MIN_CUTOFF}"
        )));
    }
    if limits.s_cap == 0 || limits.s_cap > MAX_S {
        return Err(Failure::usage(format!("--s-cap must lie in 1..={MAX_S}")));
    }
    Ok(CheckConfig {
        enumeration_cutoff: limits.cutoff,
        s_cap: limits.s_cap,
        ..CheckConfig::default()
    })
}

fn registry() -> String {
    let mut out = String::from("known families:\n");
    for (name, what) in FAMILIES {
        writeln!(out, "  {name:26} {what}").unwrap();
    }
    out
}

fn family_arg(family: &str, value: &str) -> CliResult<usize> {
    value.parse().map_err(|_| {
        Failure::usage(format!(
            "family `{family}` expects an integer, got `{value}`\n{}",
            registry()
        ))
    })
}

#[derive(Deserialize)]
struct CosetSpecFile {
    /// Group file, relative to the spec file.
    group: PathBuf,
    subgroup: Vec<Vec<usize>>,
    connector: Vec<usize>,
}

fn load_coset_spec(path: &Path) -> CliResult<CosetGraphSpec> {
    let text = read(path)?;
    let spec: CosetSpecFile = serde_json::from_str(&text)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let group_path = path.parent().unwrap_or(Path::new(".")).join(&spec.group);
    let (group, _) = load_group(&group_path)?;
    let perm = |images: Vec<usize>| {
        Permutation::new(images).map_err(|e| Failure::core(&path.display().to_string(), e))
    };
    let gens = spec
        .subgroup
        .into_iter()
        .map(perm)
        .collect::<CliResult<Vec<_>>>()?;
    let subgroup = if gens.is_empty() {
        Group::trivial(group.degree())
    } else {
        Group::build(&gens).map_err(|e| Failure::core(&path.display().to_string(), e))?
    };
    if !group.contains_group(&subgroup) {
        return Err(Failure::usage(format!(
            "{}: subgroup generators are not in the group",
            path.display()
        )));
    }
    Ok(CosetGraphSpec {
        group,
        subgroup,
        connector: perm(spec.connector)?,
    })
}

fn construct(family: &str, out: Option<&Path>) -> CliResult<u8> {
    let (name, arg) = match family.split_once(':') {
        Some((n, a)) => (n, Some(a)),
        None => (family, None),
    };
    let built = |r: edgeprim_core::error::Result<Graph>| r.map_err(|e| Failure::core(family, e));
    let (graph, group) = match (name, arg) {
        ("complete", Some(a)) => (built(complete_graph(family_arg(family, a)?))?, None),
        ("complete-bipartite", Some(a)) => {
            (built(complete_bipartite(family_arg(family, a)?))?, None)
        }
        ("cycle", Some(a)) => (built(cycle(family_arg(family, a)?))?, None),
        ("petersen", None) => (petersen(), None),
        ("heawood", None) => (heawood(), None),
        ("hoffman-singleton", None) => (hoffman_singleton(), None),
        ("coset", Some(spec)) => {
            let spec = load_coset_spec(Path::new(spec))?;
            let cg = coset_graph(&spec).map_err(|e| Failure::core(family, e))?;
            (cg.graph, Some(cg.action))
        }
        _ => {
            return Err(Failure::usage(format!(
                "unknown family `{family}`\n{}",
                registry()
            )));
        }
    };
    let text = write_graph(&graph);
    match (out, group) {
        (Some(path), group) => {
            write(path, &text)?;
            if let Some(g) = group {
                let group_path = path.with_extension("group");
                write(&group_path, &write_group(&g))?;
                eprintln!("wrote {} and {}", path.display(), group_path.display());
            }
        }
        (None, None) => print!("{text}"),
        (None, Some(_)) => {
            return Err(Failure::usage(
                "coset families need --out for the companion group file",
            ));
        }
    }
    Ok(0)
}

fn exit_for(verdicts: impl IntoIterator<Item = Verdict>) -> u8 {
    let mut code = 0;
    for v in verdicts {
        match v {
            Verdict::Fail => return EXIT_FAIL,
            Verdict::ScaleLimit => code = EXIT_SCALE,
            Verdict::Pass | Verdict::NotApplicable => {}
        }
    }
    code
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn render_certificate(c: &Certificate) -> String {
    let mut out = format!("{}: {}", c.check_name, c.verdict.as_str());
    if let Some(r) = &c.reason {
        write!(out, " ({r})").unwrap();
    }
    out.push('\n');
    for (k, v) in &c.evidence {
        writeln!(out, "  {k} = {v}").unwrap();
    }
    out
}

fn analyze(
    graph_path: &Path,
    group_path: Option<&Path>,
    checks: &[String],
    limits: &Limits,
    json: bool,
    out: Option<&Path>,
) -> CliResult<u8> {
    let config = config(limits)?;
    let checks: Vec<&str> = if checks.is_empty() {
        CHECKS.to_vec()
    } else {
        checks.iter().map(String::as_str).collect()
    };
    if let Some(bad) = checks.iter().find(|c| !CHECKS.contains(c)) {
        return Err(Failure::usage(format!(
            "unknown check `{bad}`; known checks: {}",
            CHECKS.join(", ")
        )));
    }

    let (graph, graph_text) = load_graph(graph_path)?;
    let mut inputs = vec![format!(
        "graph:{} sha256:{}",
        graph_path.display(),
        sha256(&graph_text)
    )];
    let group = match group_path {
        Some(p) => {
            let (g, text) = load_group(p)?;
            if g.degree() != graph.n() {
                return Err(Failure::usage(format!(
                    "{}: group degree {} does not match graph order {}",
                    p.display(),
                    g.degree(),
                    graph.n()
                )));
            }
            graph
                .check_automorphisms(&g)
                .map_err(|e| Failure::core(&p.display().to_string(), e))?;
            inputs.push(format!("group:{} sha256:{}", p.display(), sha256(&text)));
            g
        }
        None => {
            inputs.push("group:automorphism-group".to_string());
            automorphism_group(&graph).map_err(|e| Failure::core("automorphism group", e))?
        }
    };

    let checker = Checker::new(config, inputs);
    let mut certs = Vec::new();
    for &name in &checks {
        let cert = match name {
            "edge-primitive" => checker.is_edge_primitive(&group, &graph),
            "s-degree" => checker.s_transitivity_degree(&group, &graph),
            "local-structure" => checker.local_structure(&group, &graph),
            "almost-simple" => checker.almost_simple_certificate(&group),
            "main-theorem" => checker.theorem_main_check(&group, &graph),
            "prime-valency" => checker.prime_valency_check(&group, &graph),
            "three-arc" => checker.three_arc_criterion(&group, &graph),
            _ => unreachable!("validated above"),
        }
        .map_err(|e| Failure::core(name, e))?;
        certs.push(cert);
    }

    if let Some(dir) = out {
        fs::create_dir_all(dir).map_err(|e| Failure::usage(format!("{}: {e}", dir.display())))?;
        for c in &certs {
            write(&dir.join(format!("{}.json", c.check_name)), &to_json(c))?;
        }
    }
    if json {
        print!("{}", to_json(&certs));
    } else {
        for c in &certs {
            print!("{}", render_certificate(c));
        }
    }
    Ok(exit_for(certs.iter().map(|c| c.verdict)))
}

fn lemmas(
    suites: &[String],
    fixtures: &Path,
    limits: &Limits,
    json: bool,
    out: Option<&Path>,
) -> CliResult<u8> {
    let config = config(limits)?;
    let store = FixtureStore::new(fixtures);
    let report: SuiteReport =
        run_suites(&store, suites, &config).map_err(|e| Failure::core("lemma suite", e))?;
    if let Some(path) = out {
        write(path, &to_json(&report))?;
    }
    if json {
        print!("{}", to_json(&report));
    } else {
        print!("{}", report.table());
    }
    Ok(exit_for(report.rows.iter().map(|r| r.certificate.verdict)))
}

fn group_query(query: GroupQuery, path: &Path, json: bool) -> CliResult<u8> {
    let (g, _) = load_group(path)?;
    let text = match query {
        GroupQuery::Order => {
            if json {
                to_json(
                    &serde_json::json!({ "degree": g.degree(), "order": g.order().to_string() }),
                )
            } else {
                format!("{}\n", g.order())
            }
        }
        GroupQuery::Orbits => {
            let orbits = g.orbits();
            if json {
                to_json(&orbits)
            } else {
                orbits
                    .iter()
                    .map(|o| {
                        o.iter()
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                            + "\n"
                    })
                    .collect()
            }
        }
        GroupQuery::Blocks => {
            if !g.is_transitive() {
                let orbits = g.orbits().len();
                if json {
                    to_json(&serde_json::json!({ "transitive": false, "orbits": orbits }))
                } else {
                    format!("intransitive ({orbits} orbits)\n")
                }
            } else {
                let (primitive, blocks) =
                    is_primitive(&g).map_err(|e| Failure::core("blocks", e))?;
                if json {
                    to_json(&serde_json::json!({
                        "transitive": true,
                        "primitive": primitive,
                        "blocks": blocks,
                    }))
                } else if primitive {
                    "primitive\n".to_string()
                } else {
                    let b = blocks.expect("imprimitive groups carry a witness");
                    let mut s = format!(
                        "imprimitive: {} blocks of size {}\n",
                        b.blocks.len(),
                        b.block_size
                    );
                    for block in &b.blocks {
                        let line: Vec<String> = block.iter().map(|x| x.to_string()).collect();
                        writeln!(s, "{}", line.join(" ")).unwrap();
                    }
                    s
                }
            }
        }
    };
    print!("{text}");
    Ok(0)
}
