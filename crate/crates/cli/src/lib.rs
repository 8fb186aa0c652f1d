//! Command-line front end for the `polymat` library.
//!
//! Every subcommand reads JSON documents, calls one library operation and
//! prints a JSON report `{command, version, verdict | result, witness?,
//! timing_ms}`. Exit code 0 means the property holds or the computation is
//! done, 1 means the property fails (the report carries a witness), 2 means a
//! usage, schema or library error.

mod document;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use polymat::algebra::{
    closed_inseparable_subsets, ehrhart_gorenstein, generic_base_ring_gorenstein,
    generic_gorenstein_rank, h_star, hilbert_values, is_generic, normality_check,
    GenericGorensteinParams, GenericityFailure, GradedGenerators,
};
use polymat::constructions::{
    borel_gorenstein, is_transversal, principal_borel_bases, transversal, veronese,
};
use polymat::exchange::{
    exchange_property, is_sortable, rewrite_balanced, sort_pair, ExchangeMode, ExchangeWitness,
};
use polymat::polymatroid::{
    contract, is_base_set, is_discrete_polymatroid, lift, polymatroid_sum, truncate,
    validate_rank_function, DiscretePolymatroid, PolymatroidViolation, RankViolation,
};
use polymat::toric::white_check;
use polymat::Verdict;
use serde_json::{json, Map, Value};

use document::{
    base_set_doc, rank_doc, subset_json, transversal_doc, vector_json, vector_set_doc, vectors_json,
};
pub use document::{parse_document, parse_vector, Document};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("schema error in `{field}`: {message}")]
    Schema { field: String, message: String },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Library(#[from] polymat::Error),
}

#[derive(Parser, Debug)]
#[command(
    name = "polymat",
    version,
    about = "Discrete polymatroids: exchange, toric and Hilbert checks"
)]
struct Cli {
    /// Omit `timing_ms` so that reports are byte-identical across runs.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Weak,
    Base,
    Strong,
    Symmetric,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Ring {
    Base,
    Ehrhart,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Criterion,
    Hstar,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a document describes what its kind claims.
    Validate { file: PathBuf },
    /// The base set.
    Bases { file: PathBuf },
    /// The ground set rank function, indexed by bitmask.
    Rank { file: PathBuf },
    /// Check an exchange property of the base set.
    Exchange {
        #[arg(long, value_enum)]
        mode: Mode,
        file: PathBuf,
    },
    /// Sort a pair of vectors of equal modulus, given as `1,0,2`.
    Sort { u: String, v: String },
    /// Check that the base set is closed under sorting.
    Sortable { file: PathBuf },
    /// Balance a sequence of bases by symmetric exchanges.
    Rewrite {
        file: PathBuf,
        #[arg(required = true)]
        vectors: Vec<String>,
    },
    /// Check connectivity of every degree-m fiber under symmetric exchange moves.
    White {
        #[arg(long)]
        degree: usize,
        file: PathBuf,
    },
    /// Hilbert function values H(0), ..., H(T-1).
    Hilbert {
        #[arg(long, value_enum)]
        which: Ring,
        #[arg(long)]
        terms: u64,
        file: PathBuf,
    },
    /// Decide the Gorenstein property of the base ring or the Ehrhart ring.
    Gorenstein {
        #[arg(long, value_enum)]
        which: Ring,
        #[arg(long, value_enum)]
        method: Method,
        file: PathBuf,
    },
    /// Closed inseparable subsets and their ranks.
    Facets { file: PathBuf },
    /// Check genericity.
    Generic { file: PathBuf },
    /// Build a polymatroid from construction data.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// Search for a transversal presentation.
    IsTransversal { file: PathBuf },
    /// Truncate to the points of modulus at most d.
    Truncate {
        #[arg(long)]
        degree: u64,
        file: PathBuf,
    },
    /// Contract at a point, given as `1,0,2`.
    Contract {
        #[arg(long)]
        point: String,
        file: PathBuf,
    },
    /// The lifted base set on one more element.
    Lift { file: PathBuf },
    /// Polymatroid sum of several inputs.
    Sum {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Search for a lattice point of t conv(G) outside the semigroup, t <= T.
    Normality {
        #[arg(long, value_enum)]
        which: Ring,
        #[arg(long)]
        degree: u64,
        file: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// Veronese type base set `{ u <= caps : |u| = d }`.
    Veronese {
        #[arg(long)]
        caps: String,
        #[arg(long)]
        degree: u64,
    },
    /// Principal Borel base set of a generator such as `0,1,0,1`.
    Borel {
        #[arg(long)]
        generator: String,
    },
    /// Transversal polymatroid of a presentation document.
    Transversal { file: PathBuf },
    /// Polymatroid of a sublattice document.
    Sublattice { file: PathBuf },
    /// Rank function from generic Gorenstein parameters.
    GenericGorenstein {
        #[arg(long, conflicts_with = "file")]
        alpha: Option<String>,
        #[arg(long, requires = "alpha")]
        degree: Option<u64>,
        file: Option<PathBuf>,
    },
}

/// Exit code and output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Body {
    Result(Value),
    Verdict {
        holds: bool,
        result: Option<Value>,
        witness: Option<Value>,
    },
}

fn verdict<W>(v: Verdict<W>, render: impl FnOnce(W) -> Value) -> Body {
    match v {
        Verdict::Holds => Body::Verdict {
            holds: true,
            result: None,
            witness: None,
        },
        Verdict::Violated(w) => Body::Verdict {
            holds: false,
            result: None,
            witness: Some(render(w)),
        },
    }
}

fn load(path: &PathBuf) -> Result<Document, CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_document(&bytes)
}

fn exchange_witness(w: ExchangeWitness) -> Value {
    let mut m = Map::new();
    m.insert("u".into(), vector_json(&w.u));
    m.insert("v".into(), vector_json(&w.v));
    if let Some(i) = w.i {
        m.insert("i".into(), json!(i + 1));
    }
    if let Some(j) = w.j {
        m.insert("j".into(), json!(j + 1));
    }
    m.insert("description".into(), json!(w.to_string()));
    Value::Object(m)
}

fn polymatroid_witness(w: PolymatroidViolation) -> Value {
    let description = w.to_string();
    match w {
        PolymatroidViolation::NotDownwardClosed { member, missing } => json!({
            "violation": "not-downward-closed",
            "member": vector_json(&member),
            "missing": vector_json(&missing),
            "description": description,
        }),
        PolymatroidViolation::NoAugmentation { u, v } => json!({
            "violation": "no-augmentation",
            "u": vector_json(&u),
            "v": vector_json(&v),
            "description": description,
        }),
    }
}

fn rank_witness(w: RankViolation) -> Value {
    let description = w.to_string();
    match w {
        RankViolation::EmptySetNonzero(v) => json!({
            "violation": "empty-set-nonzero",
            "value": v,
            "description": description,
        }),
        RankViolation::NotNondecreasing { smaller, larger } => json!({
            "violation": "not-nondecreasing",
            "smaller": subset_json(smaller),
            "larger": subset_json(larger),
            "description": description,
        }),
        RankViolation::NotSubmodular { a, b } => json!({
            "violation": "not-submodular",
            "a": subset_json(a),
            "b": subset_json(b),
            "description": description,
        }),
    }
}

fn genericity_witness(w: GenericityFailure) -> Value {
    let description = w.to_string();
    match w {
        GenericityFailure::ZeroCoordinate { base, i } => json!({
            "violation": "zero-coordinate",
            "base": vector_json(&base),
            "i": i + 1,
            "description": description,
        }),
        GenericityFailure::BasesNotFacet { dim } => json!({
            "violation": "bases-not-facet",
            "dim": dim,
            "description": description,
        }),
        GenericityFailure::FaceTooSmall { subset, dim } => json!({
            "violation": "face-too-small",
            "subset": subset_json(subset),
            "dim": dim,
            "description": description,
        }),
    }
}

fn generators(which: Ring, doc: &Document) -> Result<GradedGenerators, CliError> {
    Ok(match which {
        Ring::Base => GradedGenerators::base_ring(&doc.base_set()?)?,
        Ring::Ehrhart => GradedGenerators::ehrhart_ring(&doc.polymatroid()?)?,
    })
}

fn polymatroid_result(p: &DiscretePolymatroid) -> Value {
    json!({
        "rank": p.rank(),
        "bases": base_set_doc(p.bases()),
        "points": vector_set_doc(p.points()),
    })
}

fn parse_list(text: &str) -> Result<Vec<u64>, CliError> {
    text.split(',')
        .map(|s| s.trim().parse::<u64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Usage(format!("bad list {text:?}: {e}")))
}

fn validate(doc: &Document) -> Result<Body, CliError> {
    Ok(match doc {
        Document::VectorSet(s) => verdict(is_discrete_polymatroid(s), polymatroid_witness),
        Document::BaseSet(b) => verdict(is_base_set(b), exchange_witness),
        Document::RankFunction(rho) => verdict(validate_rank_function(rho), rank_witness),
        _ => {
            let p = doc.polymatroid()?;
            Body::Verdict {
                holds: true,
                result: Some(json!({"rank": p.rank(), "bases": p.bases().len()})),
                witness: None,
            }
        }
    })
}

fn construct(what: &Construct) -> Result<Body, CliError> {
    Ok(match what {
        Construct::Veronese { caps, degree } => {
            Body::Result(base_set_doc(&veronese(&parse_vector(caps)?, *degree)?))
        }
        Construct::Borel { generator } => Body::Result(base_set_doc(&principal_borel_bases(
            &parse_vector(generator)?,
        )?)),
        Construct::Transversal { file } => {
            let Document::Transversal(pres) = load(file)? else {
                return Err(CliError::Usage("expected a transversal document".into()));
            };
            let (b, rho) = transversal(&pres)?;
            Body::Result(json!({"bases": base_set_doc(&b), "rank": rank_doc(&rho)}))
        }
        Construct::Sublattice { file } => {
            let doc = load(file)?;
            if !matches!(doc, Document::Sublattice { .. }) {
                return Err(CliError::Usage("expected a sublattice document".into()));
            }
            let p = doc.polymatroid()?;
            Body::Result(
                json!({"bases": base_set_doc(p.bases()), "rank": rank_doc(&p.rank_function())}),
            )
        }
        Construct::GenericGorenstein {
            alpha,
            degree,
            file,
        } => {
            let params = match (alpha, degree, file) {
                (Some(alpha), Some(d), None) => {
                    GenericGorensteinParams::new(parse_list(alpha)?, *d)?
                }
                (None, None, Some(file)) => match load(file)? {
                    Document::Params(p) => p,
                    _ => return Err(CliError::Usage("expected a params document".into())),
                },
                _ => {
                    return Err(CliError::Usage(
                        "give either --alpha and --degree or a params document".into(),
                    ))
                }
            };
            Body::Result(rank_doc(&generic_gorenstein_rank(&params)))
        }
    })
}

fn execute(command: &Command) -> Result<Body, CliError> {
    Ok(match command {
        Command::Validate { file } => validate(&load(file)?)?,
        Command::Bases { file } => Body::Result(base_set_doc(&load(file)?.base_set()?)),
        Command::Rank { file } => Body::Result(rank_doc(&load(file)?.rank_function()?)),
        Command::Exchange { mode, file } => {
            let b = load(file)?.base_set()?;
            let mode = match mode {
                Mode::Weak => ExchangeMode::Weak,
                Mode::Base => ExchangeMode::BaseExchange,
                Mode::Strong => ExchangeMode::Strong,
                Mode::Symmetric => ExchangeMode::Symmetric,
            };
            verdict(exchange_property(&b, mode), exchange_witness)
        }
        Command::Sort { u, v } => {
            let (s, t) = sort_pair(&parse_vector(u)?, &parse_vector(v)?)?;
            Body::Result(json!([vector_json(&s), vector_json(&t)]))
        }
        Command::Sortable { file } => {
            let b = load(file)?.base_set()?;
            verdict(is_sortable(&b), |(u, v)| {
                let (s, t) = sort_pair(&u, &v).expect("equal moduli in a base set");
                json!({"u": vector_json(&u), "v": vector_json(&v), "sorted": [vector_json(&s), vector_json(&t)]})
            })
        }
        Command::Rewrite { file, vectors } => {
            let b = load(file)?.base_set()?;
            let seq = vectors
                .iter()
                .map(|v| parse_vector(v))
                .collect::<Result<Vec<_>, _>>()?;
            let (balanced, moves) = rewrite_balanced(&seq, &b)?;
            let moves: Vec<Value> = moves
                .iter()
                .map(|m| {
                    json!({
                        "k": m.k + 1, "l": m.l + 1,
                        "u": vector_json(&m.u), "v": vector_json(&m.v),
                        "i": m.i + 1, "j": m.j + 1,
                    })
                })
                .collect();
            Body::Result(json!({"sequence": vectors_json(&balanced), "moves": moves}))
        }
        Command::White { degree, file } => {
            let b = load(file)?.base_set()?;
            match white_check(&b, *degree)? {
                Verdict::Holds => Body::Verdict {
                    holds: true,
                    result: Some(json!({"degree": degree, "status": "verified instance"})),
                    witness: None,
                },
                Verdict::Violated(f) => {
                    let components: Vec<Value> = f
                        .components
                        .iter()
                        .map(|c| Value::Array(c.iter().map(vectors_json).collect()))
                        .collect();
                    Body::Verdict {
                        holds: false,
                        result: Some(
                            json!({"degree": degree, "status": "candidate counterexample"}),
                        ),
                        witness: Some(json!({
                            "degree": f.degree,
                            "sum": vector_json(&f.sum),
                            "components": components,
                        })),
                    }
                }
            }
        }
        Command::Hilbert { which, terms, file } => {
            if *terms == 0 {
                return Err(CliError::Usage("--terms must be at least 1".into()));
            }
            let g = generators(*which, &load(file)?)?;
            let values = hilbert_values(&g, terms - 1)?;
            Body::Result(json!({"values": values, "krull_dim": g.krull_dim()}))
        }
        Command::Gorenstein {
            which,
            method,
            file,
        } => {
            let doc = load(file)?;
            match method {
                Method::Hstar => {
                    let data = h_star(&generators(*which, &doc)?)?;
                    let trimmed = data.trimmed();
                    let holds = trimmed.iter().eq(trimmed.iter().rev());
                    let result = json!({"h_star": trimmed, "krull_dim": data.krull_dim});
                    Body::Verdict {
                        holds,
                        witness: (!holds)
                            .then(|| json!({"h_star": trimmed, "reason": "h* is not palindromic"})),
                        result: Some(result),
                    }
                }
                Method::Criterion => match which {
                    Ring::Ehrhart => {
                        let delta = ehrhart_gorenstein(&doc.polymatroid()?.rank_function())?;
                        Body::Verdict {
                            holds: delta.is_some(),
                            result: Some(json!({"delta": delta})),
                            witness: delta.is_none().then(|| {
                                json!({"reason": "no common delta with delta rho(A) = |A| + 1 on closed inseparable A"})
                            }),
                        }
                    }
                    Ring::Base => {
                        let (holds, rule) = match &doc {
                            Document::Borel(a) => (borel_gorenstein(a), "principal borel"),
                            _ => (
                                generic_base_ring_gorenstein(&doc.polymatroid()?)?,
                                "generic",
                            ),
                        };
                        Body::Verdict {
                            holds,
                            result: Some(json!({"rule": rule})),
                            witness: (!holds)
                                .then(|| json!({"reason": format!("{rule} criterion fails")})),
                        }
                    }
                },
            }
        }
        Command::Facets { file } => {
            let f = closed_inseparable_subsets(&load(file)?.polymatroid()?.rank_function())?;
            let coordinate: Vec<usize> = f.coordinate.iter().map(|i| i + 1).collect();
            let rank: Vec<Value> = f
                .rank
                .iter()
                .map(|&(a, r)| json!({"subset": subset_json(a), "rank": r}))
                .collect();
            Body::Result(json!({"coordinate": coordinate, "rank": rank}))
        }
        Command::Generic { file } => {
            verdict(is_generic(&load(file)?.polymatroid()?)?, genericity_witness)
        }
        Command::Construct { what } => construct(what)?,
        Command::IsTransversal { file } => {
            let p = load(file)?.polymatroid()?;
            match is_transversal(&p)? {
                Some(pres) => Body::Verdict {
                    holds: true,
                    result: Some(transversal_doc(&pres)),
                    witness: None,
                },
                None => Body::Verdict {
                    holds: false,
                    result: None,
                    witness: Some(json!({"reason": "no presentation exists"})),
                },
            }
        }
        Command::Truncate { degree, file } => Body::Result(polymatroid_result(&truncate(
            &load(file)?.polymatroid()?,
            *degree,
        )?)),
        Command::Contract { point, file } => {
            let x = parse_vector(point)?;
            Body::Result(polymatroid_result(&contract(
                &load(file)?.polymatroid()?,
                &x,
            )?))
        }
        Command::Lift { file } => Body::Result(base_set_doc(&lift(&load(file)?.polymatroid()?))),
        Command::Sum { files } => {
            let parts = files
                .iter()
                .map(|f| load(f)?.polymatroid())
                .collect::<Result<Vec<_>, _>>()?;
            let refs: Vec<&DiscretePolymatroid> = parts.iter().collect();
            Body::Result(polymatroid_result(&polymatroid_sum(&refs)?))
        }
        Command::Normality {
            which,
            degree,
            file,
        } => {
            let g = generators(*which, &load(file)?)?;
            verdict(
                normality_check(&g, *degree)?,
                |gap| json!({"degree": gap.degree, "point": vector_json(&gap.point), "description": gap.to_string()}),
            )
        }
    })
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Validate { .. } => "validate",
        Command::Bases { .. } => "bases",
        Command::Rank { .. } => "rank",
        Command::Exchange { .. } => "exchange",
        Command::Sort { .. } => "sort",
        Command::Sortable { .. } => "sortable",
        Command::Rewrite { .. } => "rewrite",
        Command::White { .. } => "white",
        Command::Hilbert { .. } => "hilbert",
        Command::Gorenstein { .. } => "gorenstein",
        Command::Facets { .. } => "facets",
        Command::Generic { .. } => "generic",
        Command::Construct { .. } => "construct",
        Command::IsTransversal { .. } => "is-transversal",
        Command::Truncate { .. } => "truncate",
        Command::Contract { .. } => "contract",
        Command::Lift { .. } => "lift",
        Command::Sum { .. } => "sum",
        Command::Normality { .. } => "normality",
    }
}

fn render(report: Map<String, Value>) -> String {
    let mut s =
        serde_json::to_string_pretty(&Value::Object(report)).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Parses `argv` (program name first), runs the command and builds the report.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let mut report = Map::new();
                report.insert("version".into(), json!(VERSION));
                let first = text.lines().next().unwrap_or_default();
                report.insert("error".into(), json!(first.trim_start_matches("error: ")));
                Outcome {
                    code: 2,
                    stdout: render(report),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let name = command_name(&cli.command);
    let mut report = Map::new();
    report.insert("command".into(), json!(name));
    report.insert("version".into(), json!(VERSION));

    let start = Instant::now();
    let body = execute(&cli.command);
    let elapsed = start.elapsed().as_millis() as u64;
    if !cli.no_timing {
        report.insert("timing_ms".into(), json!(elapsed));
    }

    let code = match body {
        Err(e) => {
            let message = e.to_string();
            report.insert("error".into(), json!(message));
            return Outcome {
                code: 2,
                stdout: render(report),
                stderr: format!("error: {message}\n"),
            };
        }
        Ok(Body::Result(value)) => {
            report.insert("result".into(), value);
            0
        }
        Ok(Body::Verdict {
            holds,
            result,
            witness,
        }) => {
            report.insert(
                "verdict".into(),
                json!(if holds { "holds" } else { "fails" }),
            );
            if let Some(r) = result {
                report.insert("result".into(), r);
            }
            if let Some(w) = witness {
                report.insert("witness".into(), w);
            }
            if holds {
                0
            } else {
                1
            }
        }
    };
    Outcome {
        code,
        stdout: render(report),
        stderr: String::new(),
    }
}
