use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{Map, Value};

use modop::canon::{canonical_encoding, canonical_graph, is_isomorphic};
use modop::cyclic::{enumerate_cyclic_orders, induce_cyclic_order, restrict_to_trees};
use modop::enumerate::{corpus, enumerate_graphs};
use modop::factorize::factorize;
use modop::field::Field;
use modop::frobenius::FrobeniusAlgebra;
use modop::genus::{conservation_sweep, enumerate_graded_graphs, pushforward, GradedGraph};
use modop::hom::enumerate_maps;
use modop::io::{self, AnyAlgebra, IoError};
use modop::laws::HomTable;
use modop::linear::LinearPresheaf;
use modop::segal::{
    functoriality_sweep, segal_check, Grading, Monoid, MonoidPresheaf, Orientations, SetPresheaf,
    Terminal,
};
use modop::tqft::{basis_tuples, evaluate_graph, evaluate_graph_shuffled, invariance_check};
use modop::{Graph, GraphMap, MapFilter};

/// Graphs, graph maps, Segal presheaves, 2D TQFTs and cyclic orders.
#[derive(Parser)]
#[command(name = "modop", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Tsv, global = true)]
    format: Format,
    /// Seed for randomized contraction orders.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Worker threads (0: one per core).
    #[arg(long, default_value_t = 0, global = true)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Connected half-edge graphs: enumeration, canonical forms, isomorphism.
    #[command(subcommand)]
    Graphs(GraphsCmd),
    /// Graph maps: validation, composition, inert/active classes and
    /// factorization, hom-set enumeration.
    #[command(subcommand)]
    Maps(MapsCmd),
    /// Segal condition and functoriality of set-valued presheaves on graphs.
    #[command(subcommand)]
    Segal(SegalCmd),
    /// Commutative Frobenius algebras and their evaluation on genus-labelled
    /// dual graphs.
    #[command(subcommand)]
    Tqft(TqftCmd),
    /// Cyclic orders and their blow-up along maps with ordered fibers.
    #[command(subcommand)]
    Cyclic(CyclicCmd),
    /// Genus-labelled graphs: stable enumeration, pushforward along maps,
    /// genus conservation.
    #[command(subcommand)]
    Genus(GenusCmd),
}

#[derive(Subcommand)]
enum GraphsCmd {
    /// List isomorphism classes of connected graphs. With --legs, counts only
    /// internal edges toward --max-edges; otherwise all edges count.
    Enumerate {
        #[arg(long)]
        max_vertices: usize,
        #[arg(long)]
        max_edges: usize,
        #[arg(long)]
        legs: Option<usize>,
    },
    /// Canonical encoding and structural predicates of a graph file.
    Canon {
        file: PathBuf,
        /// Print the canonical representative as a graph file instead.
        #[arg(long)]
        emit: bool,
    },
    /// Whether two graph files describe isomorphic graphs.
    Iso { first: PathBuf, second: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum FilterArg {
    All,
    Inert,
    Active,
    QuasiCollapse,
    Iso,
}

impl From<FilterArg> for MapFilter {
    fn from(f: FilterArg) -> Self {
        match f {
            FilterArg::All => MapFilter::All,
            FilterArg::Inert => MapFilter::Inert,
            FilterArg::Active => MapFilter::Active,
            FilterArg::QuasiCollapse => MapFilter::QuasiCollapse,
            FilterArg::Iso => MapFilter::Isomorphism,
        }
    }
}

#[derive(Subcommand)]
enum MapsCmd {
    /// Parse and validate a map file.
    Validate { file: PathBuf },
    /// The composite `then ∘ first`.
    Compose {
        #[arg(long)]
        first: PathBuf,
        #[arg(long)]
        then: PathBuf,
    },
    /// Inert, active and quasi-collapse flags of a map.
    Classify { file: PathBuf },
    /// Inert–active factorization of a map.
    Factorize { file: PathBuf },
    /// Every map between two graph files.
    Hom {
        source: PathBuf,
        target: PathBuf,
        #[arg(long, value_enum, default_value_t = FilterArg::All)]
        filter: FilterArg,
    },
}

#[derive(Args)]
struct PresheafArgs {
    /// terminal | orientation | grading:<bound> | monoid:<file> | linear:<file>
    #[arg(long)]
    presheaf: String,
    /// Restrict the presheaf to trees.
    #[arg(long)]
    trees: bool,
    /// Largest element set enumerated explicitly.
    #[arg(long, default_value_t = 1 << 16)]
    bound: usize,
}

#[derive(Subcommand)]
enum SegalCmd {
    /// The Segal comparison on every corpus graph (or on one graph file).
    Check {
        #[command(flatten)]
        presheaf: PresheafArgs,
        #[arg(long, default_value_t = 3)]
        max_vertices: usize,
        #[arg(long, default_value_t = 4)]
        max_edges: usize,
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Functoriality over every composable pair of corpus maps.
    Sweep {
        #[command(flatten)]
        presheaf: PresheafArgs,
        #[arg(long, default_value_t = 2)]
        max_vertices: usize,
        #[arg(long, default_value_t = 3)]
        max_edges: usize,
    },
}

#[derive(Subcommand)]
enum TqftCmd {
    /// Load and validate an algebra; print its derived data.
    Load {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Evaluate a genus-g surface with k boundary circles, or a labelled
    /// dual graph.
    Eval {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        genus: Option<u32>,
        #[arg(long, default_value_t = 0)]
        legs: usize,
        /// Basis indices, one per leg; all tuples when omitted.
        #[arg(long)]
        inputs: Option<String>,
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Vertex labels `v0=1,v1=0`, overriding those in the graph file.
        #[arg(long)]
        labels: Option<String>,
        /// Contract internal edges in an order shuffled by --seed.
        #[arg(long)]
        shuffle: bool,
    },
    /// Gluing invariance over every graded graph of the given shape.
    Invariance {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        genus: u32,
        #[arg(long, default_value_t = 0)]
        legs: usize,
        #[arg(long)]
        max_edges: usize,
    },
}

#[derive(Subcommand)]
enum CyclicCmd {
    /// Every cyclic order on n elements.
    Orders {
        #[arg(long)]
        n: usize,
    },
    /// Blow up a cyclic order along a fibered map.
    Induce {
        #[arg(long)]
        order: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
}

#[derive(Subcommand)]
enum GenusCmd {
    /// Graded graphs of a given total genus and leg count.
    Enumerate {
        #[arg(long)]
        total: u32,
        #[arg(long, default_value_t = 0)]
        legs: usize,
        #[arg(long)]
        stable: bool,
        /// Bound on internal edges; needed unless --stable.
        #[arg(long)]
        max_edges: Option<usize>,
    },
    /// Push vertex labels forward along a map.
    Push {
        #[arg(long)]
        map: PathBuf,
        #[arg(long, default_value = "")]
        labels: String,
    },
    /// Genus conservation and functoriality over the corpus maps.
    Conserve {
        #[arg(long, default_value_t = 2)]
        max_vertices: usize,
        #[arg(long, default_value_t = 3)]
        max_edges: usize,
        #[arg(long, default_value_t = 2)]
        label_bound: u32,
    },
}

enum CliError {
    Usage(String),
    Domain(String),
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        if e.is_usage() {
            CliError::Usage(e.to_string())
        } else {
            CliError::Domain(e.to_string())
        }
    }
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

/// Command output: rendered as TSV with a header row or as a JSON array of
/// objects with string values.
enum Output {
    Table {
        columns: Vec<&'static str>,
        rows: Vec<Vec<String>>,
    },
    Text(String),
}

fn table(columns: Vec<&'static str>, rows: Vec<Vec<String>>) -> Output {
    Output::Table { columns, rows }
}

fn render(out: Output, format: Format) -> String {
    match out {
        Output::Text(text) => text,
        Output::Table { columns, rows } => match format {
            Format::Tsv => {
                let clean = |s: &str| s.replace(['\t', '\n'], " ");
                let mut text = columns.join("\t") + "\n";
                for row in rows {
                    text += &row.iter().map(|c| clean(c)).collect::<Vec<_>>().join("\t");
                    text.push('\n');
                }
                text
            }
            Format::Json => {
                let objects: Vec<Value> = rows
                    .into_iter()
                    .map(|row| {
                        let object: Map<String, Value> = columns
                            .iter()
                            .zip(row)
                            .map(|(k, v)| (k.to_string(), Value::String(v)))
                            .collect();
                        Value::Object(object)
                    })
                    .collect();
                serde_json::to_string_pretty(&objects).expect("serializable") + "\n"
            }
        },
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn graph_row(g: &Graph) -> Vec<String> {
    vec![
        io::graph_inline(g),
        g.vertex_count().to_string(),
        g.edge_count().to_string(),
        g.leg_count().to_string(),
        g.betti_number().to_string(),
        g.is_tree().to_string(),
        g.is_linear().to_string(),
    ]
}

const GRAPH_COLUMNS: [&str; 7] = [
    "graph", "vertices", "edges", "legs", "betti", "tree", "linear",
];

fn map_row(m: &GraphMap) -> Vec<String> {
    let class = m.classify();
    let vs: Vec<String> = m.vertex_map().iter().map(|e| e.to_string()).collect();
    let arcs: Vec<String> = m.arc_map().iter().map(|a| a.to_string()).collect();
    vec![
        io::graph_inline(m.source()),
        io::graph_inline(m.target()),
        vs.join(","),
        arcs.join(","),
        class.inert.to_string(),
        class.active.to_string(),
        class.quasi_collapse.to_string(),
    ]
}

const MAP_COLUMNS: [&str; 7] = [
    "source",
    "target",
    "vertex_map",
    "arc_map",
    "inert",
    "active",
    "quasi_collapse",
];

fn graphs(cmd: GraphsCmd) -> Result<Output, CliError> {
    Ok(match cmd {
        GraphsCmd::Enumerate {
            max_vertices,
            max_edges,
            legs,
        } => {
            let gs = match legs {
                Some(k) => enumerate_graphs(max_vertices, max_edges, k),
                None => corpus(max_vertices, max_edges),
            };
            let mut columns = vec!["index"];
            columns.extend(GRAPH_COLUMNS);
            let rows = gs
                .iter()
                .enumerate()
                .map(|(i, g)| {
                    let mut row = vec![i.to_string()];
                    row.extend(graph_row(g));
                    row
                })
                .collect();
            table(columns, rows)
        }
        GraphsCmd::Canon { file, emit } => {
            let g = io::load_graph(&file)?.graph;
            let (canon, _) = canonical_graph(&g, None);
            if emit {
                Output::Text(io::serialize_graph(&canon))
            } else {
                let mut columns = vec!["encoding"];
                columns.extend(GRAPH_COLUMNS);
                let mut row = vec![hex(&canonical_encoding(&g))];
                row.extend(graph_row(&canon));
                table(columns, vec![row])
            }
        }
        GraphsCmd::Iso { first, second } => {
            let a = io::load_graph(&first)?.graph;
            let b = io::load_graph(&second)?.graph;
            table(
                vec!["isomorphic", "first", "second"],
                vec![vec![
                    is_isomorphic(&a, &b).to_string(),
                    hex(&canonical_encoding(&a)),
                    hex(&canonical_encoding(&b)),
                ]],
            )
        }
    })
}

fn maps(cmd: MapsCmd) -> Result<Output, CliError> {
    Ok(match cmd {
        MapsCmd::Validate { file } | MapsCmd::Classify { file } => {
            let m = io::load_map(&file)?.map;
            table(MAP_COLUMNS.to_vec(), vec![map_row(&m)])
        }
        MapsCmd::Compose { first, then } => {
            let f = io::load_map(&first)?.map;
            let g = io::load_map(&then)?.map;
            let composite = g.compose(&f).map_err(domain)?;
            table(MAP_COLUMNS.to_vec(), vec![map_row(&composite)])
        }
        MapsCmd::Factorize { file } => {
            let m = io::load_map(&file)?.map;
            let fac = factorize(&m);
            let mut columns = vec!["factor"];
            columns.extend(MAP_COLUMNS);
            let rows = [("inert", &fac.inert), ("active", &fac.active)]
                .into_iter()
                .map(|(name, f)| {
                    let mut row = vec![name.to_string()];
                    row.extend(map_row(f));
                    row
                })
                .collect();
            table(columns, rows)
        }
        MapsCmd::Hom {
            source,
            target,
            filter,
        } => {
            let s = io::load_graph(&source)?.graph;
            let t = io::load_graph(&target)?.graph;
            let ms = enumerate_maps(&s, &t, filter.into()).map_err(domain)?;
            let mut columns = vec!["index"];
            columns.extend(MAP_COLUMNS);
            let rows = ms
                .iter()
                .enumerate()
                .map(|(i, m)| {
                    let mut row = vec![i.to_string()];
                    row.extend(map_row(m));
                    row
                })
                .collect();
            table(columns, rows)
        }
    })
}

enum PresheafChoice {
    Terminal,
    Orientation,
    Grading(u32),
    Monoid(Monoid),
    Linear(LinearPresheaf),
}

fn parse_presheaf(choice: &str) -> Result<PresheafChoice, CliError> {
    let (kind, arg) = choice.split_once(':').unwrap_or((choice, ""));
    Ok(match (kind, arg) {
        ("terminal", "") => PresheafChoice::Terminal,
        ("orientation", "") => PresheafChoice::Orientation,
        ("grading", b) => PresheafChoice::Grading(
            b.parse()
                .map_err(|_| CliError::Usage(format!("bad grading bound `{b}`")))?,
        ),
        ("monoid", file) if !file.is_empty() => {
            let path = PathBuf::from(file);
            PresheafChoice::Monoid(io::parse_monoid(&io::read_file(&path)?, file)?)
        }
        ("linear", file) if !file.is_empty() => {
            let path = PathBuf::from(file);
            PresheafChoice::Linear(io::parse_linear(&io::read_file(&path)?, file)?)
        }
        _ => return Err(CliError::Usage(format!("unknown presheaf `{choice}`"))),
    })
}

/// Work that can run against any presheaf.
trait PresheafTask {
    fn run<P: SetPresheaf>(self, p: &P) -> Output;
}

fn with_presheaf<T: PresheafTask>(choice: PresheafChoice, trees: bool, task: T) -> Output {
    fn go<P: SetPresheaf, T: PresheafTask>(p: P, trees: bool, task: T) -> Output {
        if trees {
            task.run(&restrict_to_trees(p))
        } else {
            task.run(&p)
        }
    }
    match choice {
        PresheafChoice::Terminal => go(Terminal, trees, task),
        PresheafChoice::Orientation => go(Orientations, trees, task),
        PresheafChoice::Grading(label_bound) => go(Grading { label_bound }, trees, task),
        PresheafChoice::Monoid(monoid) => go(MonoidPresheaf { monoid }, trees, task),
        PresheafChoice::Linear(l) => go(l, trees, task),
    }
}

struct SegalTask {
    graphs: Vec<Graph>,
    bound: usize,
}

impl PresheafTask for SegalTask {
    fn run<P: SetPresheaf>(self, p: &P) -> Output {
        let rows = self
            .graphs
            .par_iter()
            .map(|g| {
                let mut row = vec![
                    p.name(),
                    io::graph_inline(g),
                    g.vertex_count().to_string(),
                    g.edge_count().to_string(),
                ];
                match segal_check(p, g, self.bound) {
                    Ok(r) => row.extend([
                        r.lhs_size.to_string(),
                        r.pullback_size.to_string(),
                        r.is_bijection.to_string(),
                        r.witness.unwrap_or_default(),
                    ]),
                    Err(e) => {
                        row.extend([String::new(), String::new(), String::new(), e.to_string()])
                    }
                }
                row
            })
            .collect();
        table(
            vec![
                "presheaf",
                "graph",
                "vertices",
                "edges",
                "elements",
                "pullback",
                "bijection",
                "note",
            ],
            rows,
        )
    }
}

struct SweepTask {
    table: HomTable,
    bound: usize,
}

impl PresheafTask for SweepTask {
    fn run<P: SetPresheaf>(self, p: &P) -> Output {
        let r = functoriality_sweep(p, &self.table, self.bound);
        table(
            vec![
                "presheaf",
                "graphs",
                "maps",
                "pairs",
                "skipped",
                "functorial",
                "witness",
            ],
            vec![vec![
                p.name(),
                self.table.graphs.len().to_string(),
                r.maps.to_string(),
                r.pairs.to_string(),
                r.skipped.to_string(),
                r.passed().to_string(),
                r.witness.clone().unwrap_or_default(),
            ]],
        )
    }
}

fn segal(cmd: SegalCmd) -> Result<Output, CliError> {
    Ok(match cmd {
        SegalCmd::Check {
            presheaf,
            max_vertices,
            max_edges,
            graph,
        } => {
            let choice = parse_presheaf(&presheaf.presheaf)?;
            let mut graphs = match graph {
                Some(path) => vec![io::load_graph(&path)?.graph],
                None => corpus(max_vertices, max_edges),
            };
            if presheaf.trees {
                graphs.retain(Graph::is_tree);
            }
            with_presheaf(
                choice,
                presheaf.trees,
                SegalTask {
                    graphs,
                    bound: presheaf.bound,
                },
            )
        }
        SegalCmd::Sweep {
            presheaf,
            max_vertices,
            max_edges,
        } => {
            let choice = parse_presheaf(&presheaf.presheaf)?;
            let mut graphs = corpus(max_vertices, max_edges);
            if presheaf.trees {
                graphs.retain(Graph::is_tree);
            }
            let table = HomTable::build(graphs).map_err(domain)?;
            with_presheaf(
                choice,
                presheaf.trees,
                SweepTask {
                    table,
                    bound: presheaf.bound,
                },
            )
        }
    })
}

/// Work that can run against an algebra over any field.
trait AlgebraTask {
    fn run<F: Field>(self, a: &FrobeniusAlgebra<F>) -> Result<Output, CliError>;
}

fn with_algebra<T: AlgebraTask>(path: &std::path::Path, task: T) -> Result<Output, CliError> {
    match io::load_algebra(path)? {
        AnyAlgebra::Rational(a) => task.run(&a),
        AnyAlgebra::Prime(a) => task.run(&a),
    }
}

fn format_vector<F: Field>(f: &F, v: &[F::Elem]) -> String {
    v.iter().map(|x| f.format(x)).collect::<Vec<_>>().join(",")
}

fn format_matrix<F: Field>(f: &F, m: &[Vec<F::Elem>]) -> String {
    m.iter()
        .map(|row| format_vector(f, row))
        .collect::<Vec<_>>()
        .join(";")
}

struct LoadTask;

impl AlgebraTask for LoadTask {
    fn run<F: Field>(self, a: &FrobeniusAlgebra<F>) -> Result<Output, CliError> {
        let f = a.field();
        let mut rows = vec![
            vec!["field".to_string(), f.tag()],
            vec!["dim".to_string(), a.dim().to_string()],
            vec!["unit".to_string(), format_vector(f, a.unit())],
            vec!["trace".to_string(), format_vector(f, a.trace())],
            vec!["pairing".to_string(), format_matrix(f, a.pairing())],
            vec!["copairing".to_string(), format_matrix(f, a.copairing())],
            vec!["handle".to_string(), format_vector(f, &a.handle(a.unit()))],
        ];
        for g in 0..=3 {
            rows.push(vec![
                format!("closed_genus_{g}"),
                f.format(&a.evaluate_closed(g)),
            ]);
        }
        Ok(table(vec!["property", "value"], rows))
    }
}

struct EvalTask {
    graph: GradedGraph,
    inputs: Option<Vec<usize>>,
    shuffle: Option<u64>,
}

impl AlgebraTask for EvalTask {
    fn run<F: Field>(self, a: &FrobeniusAlgebra<F>) -> Result<Output, CliError> {
        let tuples = match self.inputs {
            Some(t) => {
                if let Some(&bad) = t.iter().find(|&&i| i >= a.dim()) {
                    return Err(CliError::Usage(format!(
                        "basis index {bad} out of range for dimension {}",
                        a.dim()
                    )));
                }
                vec![t]
            }
            None => basis_tuples(a.dim(), self.graph.graph().leg_count()),
        };
        let mut rows = Vec::new();
        for t in tuples {
            let inputs: Vec<Vec<F::Elem>> = t.iter().map(|&i| a.basis(i)).collect();
            let value = match self.shuffle {
                Some(seed) => evaluate_graph_shuffled(a, &self.graph, &inputs, seed),
                None => evaluate_graph(a, &self.graph, &inputs),
            }
            .map_err(domain)?;
            rows.push(vec![
                io::graph_inline(self.graph.graph()),
                io::labels_inline(self.graph.labels()),
                t.iter().map(usize::to_string).collect::<Vec<_>>().join(","),
                a.field().format(&value),
            ]);
        }
        Ok(table(vec!["graph", "labels", "inputs", "value"], rows))
    }
}

struct InvarianceTask {
    genus: u32,
    legs: usize,
    max_edges: usize,
}

impl AlgebraTask for InvarianceTask {
    fn run<F: Field>(self, a: &FrobeniusAlgebra<F>) -> Result<Output, CliError> {
        let r = invariance_check(a, self.genus, self.legs, self.max_edges);
        Ok(table(
            vec![
                "total_genus",
                "legs",
                "graphs",
                "evaluations",
                "invariant",
                "discrepancy",
            ],
            vec![vec![
                r.total_genus.to_string(),
                r.legs.to_string(),
                r.graphs.to_string(),
                r.evaluations.to_string(),
                r.passed().to_string(),
                r.discrepancy.clone().unwrap_or_default(),
            ]],
        ))
    }
}

fn parse_index_list(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| CliError::Usage(format!("bad basis index `{t}`")))
        })
        .collect()
}

fn tqft(cmd: TqftCmd, seed: u64) -> Result<Output, CliError> {
    match cmd {
        TqftCmd::Load { algebra } => with_algebra(&algebra, LoadTask),
        TqftCmd::Eval {
            algebra,
            genus,
            legs,
            inputs,
            graph,
            labels,
            shuffle,
        } => {
            let graph = match (graph, genus) {
                (Some(path), _) => {
                    let (parsed, gg) = io::load_graded_graph(&path)?;
                    let mut l = gg.labels().to_vec();
                    if let Some(list) = &labels {
                        io::apply_label_list(&parsed, &mut l, list)?;
                    }
                    GradedGraph::new(parsed.graph, l).map_err(domain)?
                }
                (None, Some(g)) => {
                    GradedGraph::new(Graph::corolla(legs), vec![g]).map_err(domain)?
                }
                (None, None) => return Err(CliError::Usage("give --genus or --graph".into())),
            };
            let inputs = inputs.as_deref().map(parse_index_list).transpose()?;
            with_algebra(
                &algebra,
                EvalTask {
                    graph,
                    inputs,
                    shuffle: shuffle.then_some(seed),
                },
            )
        }
        TqftCmd::Invariance {
            algebra,
            genus,
            legs,
            max_edges,
        } => with_algebra(
            &algebra,
            InvarianceTask {
                genus,
                legs,
                max_edges,
            },
        ),
    }
}

fn cyclic(cmd: CyclicCmd) -> Result<Output, CliError> {
    Ok(match cmd {
        CyclicCmd::Orders { n } => {
            let rows = enumerate_cyclic_orders(n)
                .iter()
                .enumerate()
                .map(|(i, c)| vec![i.to_string(), io::labels_inline_usize(c.sequence())])
                .collect();
            table(vec!["index", "order"], rows)
        }
        CyclicCmd::Induce { order, map } => {
            let c = io::parse_cyclic_order(&io::read_file(&order)?, &order.display().to_string())?;
            let f = io::parse_fibered_map(&io::read_file(&map)?, &map.display().to_string())?;
            let induced = induce_cyclic_order(&c, &f).map_err(domain)?;
            table(
                vec!["order"],
                vec![vec![io::labels_inline_usize(induced.sequence())]],
            )
        }
    })
}

fn genus(cmd: GenusCmd) -> Result<Output, CliError> {
    Ok(match cmd {
        GenusCmd::Enumerate {
            total,
            legs,
            stable,
            max_edges,
        } => {
            let ggs = enumerate_graded_graphs(total, legs, stable, max_edges).map_err(domain)?;
            let rows = ggs
                .iter()
                .enumerate()
                .map(|(i, gg)| {
                    vec![
                        i.to_string(),
                        io::graph_inline(gg.graph()),
                        io::labels_inline(gg.labels()),
                        gg.graph().vertex_count().to_string(),
                        gg.graph().internal_edge_count().to_string(),
                        gg.is_stable().to_string(),
                    ]
                })
                .collect();
            table(
                vec![
                    "index",
                    "graph",
                    "labels",
                    "vertices",
                    "internal_edges",
                    "stable",
                ],
                rows,
            )
        }
        GenusCmd::Push { map, labels } => {
            let file = io::load_map(&map)?;
            let mut l = vec![0; file.map.source().vertex_count()];
            io::apply_label_list(&file.source, &mut l, &labels)?;
            let gg = GradedGraph::new(file.map.source().clone(), l).map_err(domain)?;
            let pushed = pushforward(&file.map, &gg).map_err(domain)?;
            table(
                vec![
                    "source",
                    "source_labels",
                    "target",
                    "target_labels",
                    "source_total",
                    "target_total",
                ],
                vec![vec![
                    io::graph_inline(gg.graph()),
                    io::labels_inline(gg.labels()),
                    io::graph_inline(pushed.graph()),
                    io::labels_inline(pushed.labels()),
                    gg.total_genus().to_string(),
                    pushed.total_genus().to_string(),
                ]],
            )
        }
        GenusCmd::Conserve {
            max_vertices,
            max_edges,
            label_bound,
        } => {
            let t = HomTable::corpus(max_vertices, max_edges).map_err(domain)?;
            let r = conservation_sweep(&t, label_bound);
            table(
                vec![
                    "graphs",
                    "maps",
                    "labellings",
                    "pairs",
                    "violations",
                    "first_violation",
                ],
                vec![vec![
                    t.graphs.len().to_string(),
                    r.maps.to_string(),
                    r.labellings.to_string(),
                    r.pairs.to_string(),
                    r.violations.len().to_string(),
                    r.violations.first().cloned().unwrap_or_default(),
                ]],
            )
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match cli.command {
        Command::Graphs(c) => graphs(c),
        Command::Maps(c) => maps(c),
        Command::Segal(c) => segal(c),
        Command::Tqft(c) => tqft(c, cli.seed),
        Command::Cyclic(c) => cyclic(c),
        Command::Genus(c) => genus(c),
    };
    match result {
        Ok(out) => {
            print!("{}", render(out, cli.format));
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
