//! Command-line front end. Every command prints one JSON document on
//! stdout; logs go to stderr.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{AbelianGroup, FieldElement, FiniteField, GroupElement, DEFAULT_FIELD_CAP};
use crate::dense::{construct_dense, DenseName};
use crate::incidence::{self_dual_via_negation, IncidenceStructure};
use crate::planes3::{recover_constructions, Family, PlaneAction, DEFAULT_PLANE_CAP};
use crate::search::{self, Verdict, DEFAULT_BUDGET};
use crate::sidon::{is_perfect_difference_set, is_sidon};
use crate::sparse::{self, framework::FrameworkSpec};
use crate::{Error, Result};

/// Exit status for precondition and input errors.
pub const EXIT_PRECONDITION: i32 = 2;
/// Exit status for inconclusive results and exhausted budgets.
pub const EXIT_INCONCLUSIVE: i32 = 3;

const FLOAT_NOTE: &str = "floating-point fields are f64 roundings of fixed-point values computed with at least 128 bits";

#[derive(Debug, Parser)]
#[command(name = "sidon", version, about = "Sidon sets in finite abelian groups")]
pub struct Cli {
    /// Worker threads (results do not depend on this).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Output format; csv is available for sigma tables only.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Largest field order accepted.
    #[arg(long, global = true, default_value_t = DEFAULT_FIELD_CAP)]
    pub field_cap: u64,
    /// Largest field order accepted for plane computations.
    #[arg(long, global = true, default_value_t = DEFAULT_PLANE_CAP)]
    pub plane_cap: u64,
    /// More log output on stderr (repeatable).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a dense construction over GF(q).
    Construct {
        #[arg(long)]
        name: DenseName,
        #[arg(long)]
        q: u64,
        /// Field modulus coefficients, constant term first.
        #[arg(long, value_delimiter = ',')]
        modulus: Option<Vec<u64>>,
    },
    /// Check a set for the Sidon property.
    Verify(GroupSet),
    /// Build the development of a set and check incidence axioms.
    Develop {
        #[command(flatten)]
        input: GroupSet,
        /// Also print the incidence graph in DOT format.
        #[arg(long)]
        dot: bool,
    },
    /// Abelian subgroups of the collineation group of PG(2, q).
    Planes {
        #[arg(long)]
        q: u64,
        /// Family tag (i to ix); all applicable families when omitted.
        #[arg(long)]
        family: Option<Family>,
        /// Compare extracted sets with the direct constructions.
        #[arg(long)]
        recover: bool,
    },
    /// Sparse constructions.
    Sparse(SparseArgs),
    /// Exhaustive search for maximum Sidon sets.
    Search {
        /// Invariant factors, e.g. `3,3` or `21`.
        #[arg(long, value_delimiter = ',')]
        group: Option<Vec<u64>>,
        /// Enumerate canonical Sidon sets of this size instead.
        #[arg(long)]
        enumerate: Option<usize>,
        /// Maximum sizes for the cyclic groups of orders `a..=b`, e.g. `1..30`.
        #[arg(long)]
        table: Option<String>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Run a conjecture tester.
    Conjecture {
        #[arg(long, value_enum)]
        name: ConjectureName,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Order shapes of groups that may carry dense Sidon sets.
    Orders {
        #[arg(long)]
        n: u64,
    },
}

#[derive(Debug, Args)]
pub struct GroupSet {
    /// Invariant factors, e.g. `7` or `3,3`.
    #[arg(long, value_delimiter = ',', required_unless_present = "input")]
    pub group: Option<Vec<u64>>,
    /// Elements separated by commas; coordinates of one element separated
    /// by `:` (e.g. `0:1,1:2`). Cyclic groups take plain integers.
    #[arg(long, required_unless_present = "input")]
    pub set: Option<String>,
    /// A JSON document with `group` and `elements` (or `S`) fields, such as
    /// any output of this tool.
    #[arg(long, conflicts_with_all = ["group", "set"])]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConjectureName {
    #[value(name = "T-subgroup", alias = "t-subgroup")]
    TSubgroup,
    #[value(name = "extendable")]
    Extendable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SparseName {
    A,
    B,
    C,
    D,
    E,
    F,
    H,
    Framework,
}

#[derive(Debug, Args)]
pub struct SparseArgs {
    #[arg(long, value_enum, ignore_case = true)]
    pub construction: SparseName,
    /// X for A, m for B, n for C, D for D and E, q for F.
    #[arg(long)]
    pub param: Option<u64>,
    /// Framework spec as a JSON file.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// For E: the field is asserted to have class number one.
    #[arg(long)]
    pub class_number_one: bool,
    /// For F: field elements of U by index; for H: the integer Sidon set.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub set: Option<Vec<i64>>,
    /// For H: one of -1, 0, 1 per element.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub eps: Option<Vec<i8>>,
}

/// Result of one invocation: the exit status and the report.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PRECONDITION } else { 0 };
            return Outcome { code, stdout: e.render().to_string() };
        }
    };
    run_cli(&cli)
}

pub fn run_cli(cli: &Cli) -> Outcome {
    let result = match cli.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| dispatch(cli)),
            Err(e) => Err(Error::InvalidParameter(e.to_string())),
        },
        None => dispatch(cli),
    };
    match result {
        Ok((value, inconclusive)) => {
            let stdout = match value {
                Report::Json(v) => serde_json::to_string_pretty(&v).expect("serializable") + "\n",
                Report::Text(s) => s,
            };
            Outcome { code: if inconclusive { EXIT_INCONCLUSIVE } else { 0 }, stdout }
        }
        Err(e) => {
            let code = match e {
                Error::BudgetExhausted => EXIT_INCONCLUSIVE,
                _ => EXIT_PRECONDITION,
            };
            let stdout = serde_json::to_string_pretty(&json!({ "error": e.to_string() })).expect("serializable") + "\n";
            Outcome { code, stdout }
        }
    }
}

enum Report {
    Json(Value),
    Text(String),
}

fn to_value(x: &impl Serialize) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn field(q: u64, modulus: Option<&[u64]>, cap: u64) -> Result<FiniteField> {
    let (p, d) = crate::algebra::arith::prime_power(q)
        .ok_or_else(|| Error::InvalidParameter(format!("{q} is not a prime power")))?;
    FiniteField::create(p, d, modulus, cap)
}

fn parse_group(factors: &[u64]) -> Result<AbelianGroup> {
    let f: Vec<u64> = factors.iter().copied().filter(|&n| n != 1).collect();
    if factors.contains(&0) {
        return Err(Error::InvalidGroup("factors must be positive".into()));
    }
    AbelianGroup::new(f)
}

fn parse_set(group: &AbelianGroup, text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|item| {
            let coords: Vec<u64> = item
                .split(':')
                .map(|c| c.trim().parse::<u64>().map_err(|_| Error::InvalidParameter(format!("bad element {item:?}"))))
                .collect::<Result<_>>()?;
            if coords.len() == 1 && group.rank() == 1 {
                group.encode(&[coords[0] % group.order()])
            } else if coords.len() == 1 && group.rank() == 0 && coords[0] == 0 {
                Ok(0)
            } else {
                group.encode(&coords)
            }
        })
        .collect()
}

fn read_group_set(input: &GroupSet) -> Result<(AbelianGroup, Vec<usize>)> {
    if let Some(path) = &input.input {
        let text = std::fs::read_to_string(path)?;
        let v: Value = serde_json::from_str(&text)?;
        let group: AbelianGroup = serde_json::from_value(
            v.get("group").cloned().ok_or_else(|| Error::InvalidParameter("missing \"group\"".into()))?,
        )?;
        let elems = v
            .get("elements")
            .or_else(|| v.get("S"))
            .cloned()
            .ok_or_else(|| Error::InvalidParameter("missing \"elements\"".into()))?;
        let elems: Vec<GroupElement> = serde_json::from_value(elems)?;
        let set = elems.iter().map(|e| group.index_of(e)).collect::<Result<Vec<_>>>()?;
        return Ok((group, set));
    }
    let group = parse_group(input.group.as_deref().unwrap_or_default())?;
    let set = parse_set(&group, input.set.as_deref().unwrap_or_default())?;
    Ok((group, set))
}

fn elements(group: &AbelianGroup, set: &[usize]) -> Vec<GroupElement> {
    set.iter().map(|&x| group.element(x)).collect()
}

fn dispatch(cli: &Cli) -> Result<(Report, bool)> {
    let json_only = |r: Value| Ok((Report::Json(r), false));
    if cli.format == Format::Csv && !matches!(cli.command, Command::Search { table: Some(_), .. }) {
        return Err(Error::InvalidParameter("csv output is only available for search --table".into()));
    }
    match &cli.command {
        Command::Construct { name, q, modulus } => {
            let f = field(*q, modulus.as_deref(), cli.field_cap)?;
            let c = construct_dense(*name, &f)?;
            let report = is_sidon(&c.group, &c.set);
            let mut v = to_value(&c);
            v["sidon"] = json!(report.is_sidon);
            v["perfect_difference_set"] = json!(is_perfect_difference_set(&c.group, &c.set));
            json_only(v)
        }
        Command::Verify(input) => {
            let (g, set) = read_group_set(input)?;
            let report = is_sidon(&g, &set);
            let mut v = json!({ "group": g, "elements": elements(&g, &crate::sidon::normalize_set(&set)) });
            let r = to_value(&report);
            for (k, x) in r.as_object().expect("object") {
                v[k] = x.clone();
            }
            v["perfect_difference_set"] = json!(is_perfect_difference_set(&g, &set));
            json_only(v)
        }
        Command::Develop { input, dot } => {
            let (g, set) = read_group_set(input)?;
            let set = crate::sidon::normalize_set(&set);
            let dev = IncidenceStructure::develop(&g, &set);
            if *dot {
                return Ok((Report::Text(dev.to_dot()), false));
            }
            let pls = dev.is_partial_linear_space();
            let plane = dev.is_projective_plane();
            json_only(json!({
                "group": g,
                "elements": elements(&g, &set),
                "points": dev.n_points(),
                "lines": dev.n_lines(),
                "incidences": dev.incidences().len(),
                "partial_linear_space": pls.is_ok(),
                "quadrilateral": pls.err(),
                "projective_plane": plane.is_ok(),
                "order": plane.as_ref().ok(),
                "plane_violation": plane.as_ref().err().map(|v| v.to_string()),
                "self_dual_via_negation": self_dual_via_negation(&g, &set),
                "deficiency": dev.deficiency(set.len()),
            }))
        }
        Command::Planes { q, family, recover } => {
            let (p, d) = crate::algebra::arith::prime_power(*q)
                .ok_or_else(|| Error::InvalidParameter(format!("{q} is not a prime power")))?;
            if *q > cli.plane_cap {
                return Err(Error::FieldTooLarge { order: *q as u128, cap: cli.plane_cap });
            }
            let f = FiniteField::create(p, d, None, cli.field_cap)?;
            if *recover {
                return json_only(to_value(&recover_constructions(&f)?));
            }
            let families: Vec<Family> = match family {
                Some(fam) => vec![*fam],
                None => Family::ALL.into_iter().filter(|fam| !matches!(fam, Family::Viii | Family::Ix) || q % 3 == 1).collect(),
            };
            let mut out = Vec::new();
            for fam in families {
                let action = PlaneAction::new(&f, fam)?;
                let orbits = action.orbit_analysis()?;
                let extraction = match action.extract_default() {
                    Ok(e) => to_value(&e),
                    Err(e) => json!({ "error": e.to_string() }),
                };
                out.push(json!({
                    "summary": action.summary(),
                    "orbits": orbits,
                    "extraction": extraction,
                }));
            }
            json_only(Value::Array(out))
        }
        Command::Sparse(args) => sparse_command(args),
        Command::Search { group, enumerate, table, budget } => {
            if let Some(range) = table {
                let (a, b) = parse_range(range)?;
                let rows: Vec<search::SearchResult> =
                    (a..=b).map(|n| search::max_sidon_capped(&AbelianGroup::cyclic(n), *budget, 0)).collect();
                let inconclusive = rows.iter().any(|r| !r.exhaustive);
                if cli.format == Format::Csv {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(["n", "sigma", "exhaustive", "nodes"]).map_err(|e| Error::Io(e.to_string()))?;
                    for (n, r) in (a..=b).zip(&rows) {
                        w.write_record([n.to_string(), r.sigma.to_string(), r.exhaustive.to_string(), r.nodes_visited.to_string()])
                            .map_err(|e| Error::Io(e.to_string()))?;
                    }
                    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
                    return Ok((Report::Text(String::from_utf8(bytes).expect("utf8")), inconclusive));
                }
                let v: Vec<Value> = (a..=b)
                    .zip(&rows)
                    .map(|(n, r)| json!({"n": n, "sigma": r.sigma, "exhaustive": r.exhaustive, "nodes_visited": r.nodes_visited}))
                    .collect();
                return Ok((Report::Json(Value::Array(v)), inconclusive));
            }
            let g = parse_group(group.as_deref().ok_or_else(|| Error::InvalidParameter("--group is required".into()))?)?;
            match enumerate {
                Some(k) => {
                    let e = search::enumerate_sidon(&g, *k, *budget);
                    let sets: Vec<Vec<GroupElement>> = e.sets.iter().map(|s| elements(&g, s)).collect();
                    Ok((
                        Report::Json(json!({
                            "group": g,
                            "size": k,
                            "count": sets.len(),
                            "sets": sets,
                            "nodes_visited": e.nodes_visited,
                            "exhaustive": e.exhaustive,
                        })),
                        !e.exhaustive,
                    ))
                }
                None => {
                    let r = search::max_sidon(&g, *budget);
                    let inconclusive = !r.exhaustive;
                    Ok((Report::Json(to_value(&r)), inconclusive))
                }
            }
        }
        Command::Conjecture { name, p, budget } => {
            let (v, verdict) = match name {
                ConjectureName::TSubgroup => {
                    let r = search::test_t_subgroup(*p, *budget)?;
                    (to_value(&r), r.verdict)
                }
                ConjectureName::Extendable => {
                    let r = search::test_extendable(*p, *budget)?;
                    (to_value(&r), r.verdict)
                }
            };
            Ok((Report::Json(v), verdict == Verdict::Inconclusive))
        }
        Command::Orders { n } => {
            if *n == 0 {
                return Err(Error::precondition("n must be positive"));
            }
            json_only(json!({ "n": n, "matches": search::admissible_orders(*n) }))
        }
    }
}

fn parse_range(s: &str) -> Result<(u64, u64)> {
    let bad = || Error::InvalidParameter(format!("bad range {s:?}, expected a..b"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: u64 = a.trim().parse().map_err(|_| bad())?;
    let b: u64 = b.trim_start_matches('=').trim().parse().map_err(|_| bad())?;
    if a == 0 || a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn sparse_command(args: &SparseArgs) -> Result<(Report, bool)> {
    let param = || args.param.ok_or_else(|| Error::InvalidParameter("--param is required".into()));
    let (name, result): (&str, Value) = match args.construction {
        SparseName::A => ("A", to_value(&sparse::log_primes(param()?)?)),
        SparseName::B => {
            let r = sparse::quotient_ring_primes(param()?)?;
            ("B", to_value(&r))
        }
        SparseName::C => ("C", to_value(&sparse::gaussian_angles(param()?)?)),
        SparseName::D => ("D", to_value(&sparse::class_group_primes(param()?)?)),
        SparseName::E => ("E", to_value(&sparse::real_quadratic(param()?, args.class_number_one)?)),
        SparseName::F => {
            let f = FiniteField::of_order(param()?)?;
            let u: Vec<FieldElement> = match &args.set {
                Some(idx) => idx
                    .iter()
                    .map(|&i| {
                        u64::try_from(i)
                            .map_err(|_| Error::InvalidParameter(format!("bad field element {i}")))
                            .and_then(|i| f.element(i))
                    })
                    .collect::<Result<_>>()?,
                None => sparse::max_cubic_subset(&f),
            };
            let (g, set) = sparse::cubic_graph(&f, &u)?;
            let sidon = is_sidon(&g, &set).is_sidon;
            ("F", json!({ "group": g, "U": u, "elements": elements(&g, &set), "sidon": sidon }))
        }
        SparseName::H => {
            let set = args.set.clone().ok_or_else(|| Error::InvalidParameter("--set is required".into()))?;
            let eps = args.eps.clone().unwrap_or_else(|| vec![0; set.len()]);
            let out = sparse::perturb(&set, &eps)?;
            let sidon = crate::sidon::is_sidon_integers(&out).sidon;
            ("H", json!({ "input": set, "eps": eps, "elements": out, "sidon": sidon }))
        }
        SparseName::Framework => {
            let path = args.spec.as_ref().ok_or_else(|| Error::InvalidParameter("--spec is required".into()))?;
            let spec: FrameworkSpec = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            ("framework", to_value(&sparse::framework_build(&spec)?))
        }
    };
    Ok((Report::Json(json!({ "construction": name, "result": result, "float_note": FLOAT_NOTE })), false))
}
