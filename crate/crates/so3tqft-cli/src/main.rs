//! `so3tqft`: command-line front end. Every report starts with a header
//! naming the command and seed; output is deterministic for fixed flags.
//! Exit codes: 0 pass, 1 failed assertion, 2 usage or input error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use so3tqft::checks::{self, Scope};
use so3tqft::fkb::{self, KnotInSolidTorus};
use so3tqft::invariants::{
    eval_surgery, lollipop_divisibility_suite, mapping_torus_closed, mapping_torus_trace, InvariantResult,
    SurgeryPresentation,
};
use so3tqft::lattice::{det_valuation, GramMatrix, GramMethod, HandlebodyVector, Space};
use so3tqft::lollipop::{exponent_b, exponent_bsharp, LollipopTree};
use so3tqft::planar::{ColoredDiagram, Role};
use so3tqft::recoupling::RecouplingTable;
use so3tqft::{make_context, CycloElem, PrimeContext};

/// Version tag of the JSON report layout.
const SCHEMA: &str = "so3tqft-report/1";

#[derive(Parser)]
#[command(name = "so3tqft", version, about = "Integral SO(3) TQFT computations at an odd prime")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text", env = "SO3TQFT_FORMAT")]
    format: Format,
    /// Seed for sampled computations; printed in every header.
    #[arg(long, global = true, default_value_t = 0, env = "SO3TQFT_SEED")]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Clone)]
struct TreeArgs {
    #[arg(long, default_value_t = 5)]
    p: u64,
    /// Genus of the standard tree (loops on a comb).
    #[arg(long, default_value_t = 1)]
    genus: usize,
    /// Comma-separated boundary point colors.
    #[arg(long, value_delimiter = ',')]
    points: Vec<i64>,
    /// Explicit tree such as `(L L);(1 1)`; overrides genus and points.
    #[arg(long)]
    tree: Option<String>,
}

impl TreeArgs {
    fn tree(&self) -> Result<LollipopTree, Failure> {
        match &self.tree {
            Some(s) => s.parse().map_err(|e| Failure::Usage(format!("bad tree {s:?}: {e}"))),
            None => Ok(LollipopTree::standard(self.genus, &self.points)),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisKind {
    /// Small graph basis.
    Graph,
    /// The lattice basis `B`.
    B,
    /// Pairing of `B` against `B♯`.
    Dual,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Fusion,
    Surgery,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension and exponent totals of a surface space.
    Dims(TreeArgs),
    /// List small colorings with their exponents.
    Colorings(TreeArgs),
    /// Coordinates of the bases `B` and `B♯` in the graph basis.
    Bases(TreeArgs),
    /// Gram matrix, its determinant and valuation.
    Gram {
        #[command(flatten)]
        tree: TreeArgs,
        #[arg(long, value_enum, default_value = "b")]
        basis: BasisKind,
        #[arg(long, value_enum, default_value = "fusion")]
        method: MethodArg,
    },
    /// Run named checks (`all` runs every one).
    Check {
        /// Check key, alias, or `all`.
        #[arg(long = "paper", default_value = "all")]
        key: String,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        genus: Option<usize>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// List the available keys and exit.
        #[arg(long)]
        list: bool,
    },
    /// Invariant of a surgery presentation read from a diagram file.
    Invariant {
        #[arg(long)]
        pd: PathBuf,
        #[arg(long, default_value_t = 5)]
        p: u64,
        /// Colors for the cargo components, in file order.
        #[arg(long, value_delimiter = ',')]
        cargo: Vec<i64>,
    },
    /// Invariants of the mapping tori of `T^n` on the genus-2 surface.
    MappingTorus {
        #[arg(long, default_value_t = 5)]
        p: u64,
        /// A single exponent; omitted means `0..=2p`.
        #[arg(long)]
        n: Option<i64>,
    },
    /// Cut-number bound `⌊o_p / (d − 1)⌋`.
    Cutbound {
        #[arg(long, default_value_t = 5)]
        p: u64,
        /// Use a given valuation.
        #[arg(long, conflicts_with_all = ["pd", "mapping_torus"])]
        o_p: Option<u32>,
        /// Use the invariant of a surgery presentation.
        #[arg(long)]
        pd: Option<PathBuf>,
        /// Use the mapping torus with this exponent.
        #[arg(long)]
        mapping_torus: Option<i64>,
    },
    /// Seeded random v-graphs and their divisibility by `h`.
    LollipopSuite {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 5)]
        p: u64,
    },
    /// Obstruction ideal of a knot in a solid torus.
    Fkb {
        /// Diagram file; a missing `L9a12.pd` falls back to the bundled copy.
        #[arg(long, default_value = "L9a12.pd")]
        pd: PathBuf,
        #[arg(long, default_value = "J")]
        axis: String,
        #[arg(long, default_value = "K")]
        surgery: String,
        #[arg(long)]
        framing: i64,
        #[arg(long, default_value_t = 5)]
        p: u64,
        /// Form the refined ideal in `O⁺`.
        #[arg(long)]
        plus: bool,
    },
}

enum Failure {
    Usage(String),
    Assertion(Value),
}

impl From<so3tqft::Error> for Failure {
    fn from(e: so3tqft::Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

struct Out {
    format: Format,
}

impl Out {
    fn elem(&self, x: &CycloElem) -> Value {
        match self.format {
            Format::Json => serde_json::to_value(x.to_repr()).expect("serializable"),
            Format::Text => Value::String(x.to_string()),
        }
    }

    fn vector(&self, v: &[CycloElem]) -> Value {
        Value::Array(v.iter().map(|x| self.elem(x)).collect())
    }

    fn matrix(&self, m: &[Vec<CycloElem>]) -> Value {
        Value::Array(m.iter().map(|r| self.vector(r)).collect())
    }

    fn print(&self, command: &str, seed: u64, params: Value, result: Value) {
        match self.format {
            Format::Json => {
                let doc = json!({
                    "header": { "schema": SCHEMA, "command": command, "seed": seed, "params": params },
                    "result": result,
                });
                println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            }
            Format::Text => {
                let mut head = format!("# so3tqft {command} seed={seed}");
                if let Value::Object(m) = &params {
                    for (k, v) in m {
                        head.push_str(&format!(" {k}={}", plain(v)));
                    }
                }
                println!("{head}");
                match result {
                    Value::Object(m) => {
                        for (k, v) in m {
                            print_field(&k, &v);
                        }
                    }
                    v => println!("{}", plain(&v)),
                }
            }
        }
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn print_field(key: &str, v: &Value) {
    match v {
        Value::Array(items) if items.iter().any(|x| x.is_array() || x.is_object()) => {
            println!("{key}:");
            for x in items {
                println!("  {}", plain(x));
            }
        }
        _ => println!("{key}: {}", plain(v)),
    }
}

fn context(p: u64) -> Result<PrimeContext, Failure> {
    make_context(p).map_err(|e| Failure::Usage(e.to_string()))
}

fn read_diagram(path: &Path) -> Result<ColoredDiagram, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    ColoredDiagram::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn surgery_from_file(path: &Path, cargo: &[i64]) -> Result<SurgeryPresentation, Failure> {
    let mut d = read_diagram(path)?;
    let edges: Vec<usize> = d.components.iter().filter(|c| c.role == Role::Cargo).map(|c| c.edge).collect();
    if !cargo.is_empty() && cargo.len() != edges.len() {
        return Err(Failure::Usage(format!("{} cargo colors given for {} cargo components", cargo.len(), edges.len())));
    }
    for (e, &c) in edges.iter().zip(cargo) {
        d.recolor_component(*e, c)?;
    }
    Ok(SurgeryPresentation::new(d))
}

fn invariant_json(r: &InvariantResult, out: &Out) -> Value {
    json!({ "value": out.elem(&r.value), "o_p": r.o_p, "cut_bound": r.cut_bound })
}

fn gram_json(ctx: &PrimeContext, g: &GramMatrix, out: &Out) -> Result<Value, Failure> {
    let det = g.det(ctx)?;
    Ok(json!({
        "size": g.entries.len(),
        "entries": out.matrix(&g.entries),
        "hermitian": g.is_hermitian(),
        "entries_in_o": g.all_in_o(),
        "det": out.elem(&det),
        "det_valuation": det_valuation(ctx, g)?,
        "det_is_unit": ctx.is_unit(&det)?,
    }))
}

fn vectors_json(vs: &[HandlebodyVector], out: &Out) -> Value {
    Value::Array(vs.iter().map(|v| out.vector(&v.coords)).collect())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let out = Out { format: cli.format };
    let seed = cli.seed;
    match &cli.command {
        Command::Dims(t) => {
            let tree = t.tree()?;
            let s = tree.stats(t.p as usize)?;
            let params = json!({ "p": t.p, "tree": tree.to_string() });
            let result = json!({
                "dim": s.dim.to_string(),
                "genus": tree.genus(),
                "n": s.n.to_string(),
                "n_sharp": s.n_sharp.to_string(),
                "g_dminus1_dim": s.rhs.to_string(),
                "index_identity": s.holds(),
            });
            out.print("dims", seed, params, result);
        }
        Command::Colorings(t) => {
            let tree = t.tree()?;
            let cols = tree.small_colorings(t.p as usize)?;
            let list: Vec<Value> = cols
                .iter()
                .map(|c| {
                    json!({
                        "a": c.a, "b": c.b, "c": c.c, "e": c.e, "edges": c.edges,
                        "exp_b": exponent_b(c), "exp_bsharp": exponent_bsharp(c), "odd": c.is_odd(),
                    })
                })
                .collect();
            let params = json!({ "p": t.p, "tree": tree.to_string() });
            out.print("colorings", seed, params, json!({ "dim": cols.len(), "colorings": list }));
        }
        Command::Bases(t) => {
            let tree = t.tree()?;
            let s = Space::new(&tree, &context(t.p)?)?;
            let labels: Vec<Value> = s.colorings.iter().map(|c| json!(c.edges)).collect();
            let params = json!({ "p": t.p, "tree": tree.to_string() });
            let result = json!({
                "graph_basis": labels,
                "b": vectors_json(&s.basis_b()?, &out),
                "b_sharp": vectors_json(&s.basis_bsharp()?, &out),
            });
            out.print("bases", seed, params, result);
        }
        Command::Gram { tree: t, basis, method } => {
            let tree = t.tree()?;
            let ctx = context(t.p)?;
            let s = Space::new(&tree, &ctx)?;
            let method = match method {
                MethodArg::Fusion => GramMethod::Fusion,
                MethodArg::Surgery => GramMethod::Surgery,
            };
            let (name, g) = match basis {
                BasisKind::Graph => ("graph", s.gram_graph(method)?),
                BasisKind::B => ("b", s.gram_b()?),
                BasisKind::Dual => ("dual", s.dual_pairing()?),
            };
            let params = json!({ "p": t.p, "tree": tree.to_string(), "basis": name });
            out.print("gram", seed, params, gram_json(&ctx, &g, &out)?);
        }
        Command::Check { key, p, genus, samples, list } => {
            if *list {
                let keys: Vec<Value> =
                    checks::CHECKS.iter().map(|c| json!({ "key": c.key, "aliases": c.aliases, "title": c.title })).collect();
                out.print("check", seed, json!({}), json!({ "checks": keys }));
                return Ok(());
            }
            let scope = Scope { p: *p, genus: *genus, seed, samples: *samples };
            let selected: Vec<&checks::Check> = if key == "all" {
                checks::CHECKS.iter().collect()
            } else {
                vec![checks::find(key).ok_or_else(|| Failure::Usage(format!("unknown check {key:?}")))?]
            };
            let outcomes: Vec<_> = selected.iter().map(|c| checks::run(c, &scope)).collect();
            let pass = outcomes.iter().all(|o| o.pass);
            let params = json!({ "key": key, "p": p, "genus": genus, "samples": samples });
            let mut result = Map::new();
            for o in &outcomes {
                let v = match out.format {
                    Format::Json => json!({ "pass": o.pass, "title": o.title, "detail": o.detail }),
                    Format::Text => json!(format!("{} ({})", if o.pass { "pass" } else { "FAIL" }, o.detail)),
                };
                result.insert(o.key.to_string(), v);
            }
            result.insert("pass".into(), json!(pass));
            out.print("check", seed, params, Value::Object(result));
            if !pass {
                return Err(Failure::Assertion(json!(outcomes.iter().filter(|o| !o.pass).map(|o| o.key).collect::<Vec<_>>())));
            }
        }
        Command::Invariant { pd, p, cargo } => {
            let table = RecouplingTable::new(&context(*p)?);
            let pres = surgery_from_file(pd, cargo)?;
            let r = eval_surgery(&pres, &table)?;
            let params = json!({ "p": p, "pd": pd.display().to_string(), "cargo": cargo });
            out.print("invariant", seed, params, invariant_json(&r, &out));
        }
        Command::MappingTorus { p, n } => {
            let table = RecouplingTable::new(&context(*p)?);
            let ctx = table.ctx();
            let range: Vec<i64> = match n {
                Some(n) => vec![*n],
                None => (0..=2 * *p as i64).collect(),
            };
            let mut rows = Vec::new();
            let mut agree = true;
            for n in range {
                let closed = mapping_torus_closed(ctx, n);
                let same = closed == mapping_torus_trace(&table, n)?;
                agree &= same;
                let r = InvariantResult::new(ctx, closed)?;
                let mut v = invariant_json(&r, &out);
                v["n"] = json!(n);
                v["paths_agree"] = json!(same);
                rows.push(v);
            }
            out.print("mapping-torus", seed, json!({ "p": p, "n": n }), json!({ "tori": rows, "paths_agree": agree }));
            if !agree {
                return Err(Failure::Assertion(json!("mapping torus paths disagree")));
            }
        }
        Command::Cutbound { p, o_p, pd, mapping_torus } => {
            let ctx = context(*p)?;
            let (source, value) = match (o_p, pd, mapping_torus) {
                (Some(v), _, _) => ("given".to_string(), Some(*v)),
                (None, Some(path), _) => {
                    let table = RecouplingTable::new(&ctx);
                    (path.display().to_string(), eval_surgery(&surgery_from_file(path, &[])?, &table)?.o_p)
                }
                (None, None, Some(n)) => {
                    (format!("mapping torus n={n}"), InvariantResult::new(&ctx, mapping_torus_closed(&ctx, *n))?.o_p)
                }
                _ => return Err(Failure::Usage("give one of --o-p, --pd or --mapping-torus".into())),
            };
            let bound = value.map(|o| so3tqft::invariants::cut_bound(o, ctx.d()));
            let params = json!({ "p": p, "source": source });
            out.print("cutbound", seed, params, json!({ "o_p": value, "d": ctx.d(), "cut_bound": bound }));
        }
        Command::LollipopSuite { samples, p } => {
            let ctx = context(*p)?;
            let r = lollipop_divisibility_suite(&ctx, *samples, seed)?;
            let nonzero = r.samples.iter().filter(|s| s.valuation.is_some()).count();
            let rows: Vec<Value> = r
                .samples
                .iter()
                .map(|s| {
                    json!({
                        "index": s.index, "sticks": s.sticks, "v_circles": s.v_circles, "crossings": s.crossings,
                        "bound": s.bound, "valuation": s.valuation, "pass": s.pass,
                    })
                })
                .collect();
            let params = json!({ "p": p, "samples": samples });
            let result = json!({
                "samples": rows,
                "nonzero": nonzero,
                "split_basic_zero": r.split_basic_zero,
                "pass": r.pass,
            });
            out.print("lollipop-suite", seed, params, result);
            if !r.pass {
                return Err(Failure::Assertion(json!("lollipop divisibility failed")));
            }
        }
        Command::Fkb { pd, axis, surgery, framing, p, plus } => {
            let table = RecouplingTable::new(&context(*p)?);
            let bundled = !pd.exists() && pd.file_name().is_some_and(|f| f == "L9a12.pd");
            let text = if bundled {
                fkb::L9A12.to_string()
            } else {
                std::fs::read_to_string(pd).map_err(|e| Failure::Usage(format!("{}: {e}", pd.display())))?
            };
            let n = KnotInSolidTorus::parse(&text, axis, surgery, *framing)?;
            let r = fkb::fkb_report(&n, &table, *plus)?;
            let gens: Vec<CycloElem> =
                r.generators.iter().map(|g| CycloElem::from_repr(table.ctx().field(), g)).collect::<Result<_, _>>()?;
            let params = json!({
                "p": p, "pd": if bundled { "bundled L9a12.pd".to_string() } else { pd.display().to_string() },
                "axis": axis, "surgery": surgery, "framing": framing, "plus": plus,
            });
            let result = json!({
                "generators": out.vector(&gens),
                "ring": if *plus { "O+" } else { "O" },
                "hnf": r.ideal.hnf,
                "z_index": r.index,
                "unit_ideal": r.unit_ideal,
                "equals_1_plus_2z3": r.equals_one_plus_two_zeta_cubed,
                "generators_in_oplus_or_i_oplus": r.generators_in_oplus_or_i_oplus,
                "obstructs_s3": r.obstructs_s3,
                "obstructs_s1xs2": r.obstructs_s1xs2,
            });
            out.print("fkb", seed, params, result);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Assertion(v)) => {
            eprintln!("assertion failed: {v}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
