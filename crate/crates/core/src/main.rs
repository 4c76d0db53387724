//! Batch CLI over the library: generators, chamber and skeleton queries,
//! normal forms, equality, the base-chamber order, degree reports, and the
//! invariant suites.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hyperarr::arrangement::Arrangement;
use hyperarr::check;
use hyperarr::deligne::{deligne_nf, word_problem};
use hyperarr::error::Error;
use hyperarr::paths::{minimal_paths, PositivePath};
use hyperarr::shadow::{degree_report, orient};
use hyperarr::skeleton::ChamberGraph;

#[derive(Parser)]
#[command(name = "hyperarr", version, about = "Exact computation with simplicial hyperplane arrangements and their Deligne groupoids")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Args)]
struct Source {
    /// read the arrangement from a file
    #[arg(long, conflicts_with = "generator", value_name = "PATH")]
    file: Option<std::path::PathBuf>,
    /// use a built-in generator
    #[arg(long = "gen", value_name = "NAME")]
    generator: Option<String>,
}

#[derive(Args)]
struct Common {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// search cap for equivalence-class enumeration
    #[arg(long, default_value_t = hyperarr::paths::DEFAULT_CAP)]
    cap: usize,
}

#[derive(Subcommand)]
enum Verb {
    /// Print a built-in arrangement in file format
    Gen { name: String },
    /// Count and list the chambers
    Chambers(Common),
    /// Emit the 1-skeleton
    Graph(Common),
    /// List the minimal positive paths between two chambers
    Atoms {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
    },
    /// Deligne normal form of a path literal
    Nf {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        path: String,
    },
    /// Decide equivalence of two path literals
    Equal {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        path1: String,
        #[arg(long, allow_hyphen_values = true)]
        path2: String,
    },
    /// Emit the base-chamber order on the 1-skeleton
    Order {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        base: String,
    },
    /// Degree report for a path's normal form
    Degrees {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        path: String,
        #[arg(long)]
        d: usize,
    },
    /// Run the invariant suites
    Check(Common),
}

const EXIT_USAGE: u8 = 1;
const EXIT_CHECK: u8 = 2;
const EXIT_NOT_EQUIVALENT: u8 = 3;
const EXIT_CAP: u8 = 4;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version are successes, everything else is usage
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(EXIT_USAGE);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::CapExceeded(_) => EXIT_CAP,
                _ => EXIT_USAGE,
            })
        }
    }
}

fn load(source: &Source) -> Result<Arrangement, Error> {
    match (&source.file, &source.generator) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
                line: 0,
                message: format!("{}: {e}", path.display()),
            })?;
            Arrangement::parse(&text)
        }
        (None, Some(name)) => Arrangement::generator(name),
        _ => Err(Error::Parse {
            line: 0,
            message: "exactly one of --file and --gen is required".into(),
        }),
    }
}

fn graph(source: &Source) -> Result<ChamberGraph, Error> {
    ChamberGraph::build(load(source)?)
}

fn unsupported(format: &str, verb: &str) -> Error {
    Error::Parse {
        line: 0,
        message: format!("format {format} is not defined for {verb}"),
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.verb {
        Verb::Gen { name } => {
            print!("{}", Arrangement::generator(&name)?.to_text());
        }
        Verb::Chambers(c) => {
            let arr = load(&c.source)?;
            let chambers = arr.enumerate_chambers();
            match c.format {
                Format::Text => {
                    println!("{}", chambers.len());
                    for ch in &chambers {
                        let witness: Vec<String> =
                            ch.witness.iter().map(|x| x.to_string()).collect();
                        println!("{} {}", ch.id, witness.join(" "));
                    }
                }
                Format::Json => {
                    let items: Vec<serde_json::Value> = chambers
                        .iter()
                        .map(|ch| {
                            serde_json::json!({
                                "id": ch.id,
                                "witness": ch.witness.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    println!(
                        "{}",
                        serde_json::json!({"count": chambers.len(), "chambers": items})
                    );
                }
                Format::Dot => return Err(unsupported("dot", "chambers")),
            }
        }
        Verb::Graph(c) => {
            let g = graph(&c.source)?;
            match c.format {
                Format::Text => {
                    println!("{} chambers, {} arrows", g.chambers().len(), g.arrow_count());
                    for i in 0..g.chambers().len() {
                        for a in g.arrows_from(i) {
                            println!("{} -> {} [{}]", g.id(i), g.id(a.target), a.hyperplane);
                        }
                    }
                }
                Format::Json => println!("{}", g.to_json()),
                Format::Dot => print!("{}", g.to_dot()),
            }
        }
        Verb::Atoms { common, from, to } => {
            let g = graph(&common.source)?;
            let c = g.lookup(&from)?;
            let d = g.lookup(&to)?;
            let atoms = minimal_paths(&g, c, d);
            match common.format {
                Format::Text => {
                    for a in &atoms {
                        println!("{}", a.path().literal(&g));
                    }
                }
                Format::Json => {
                    let literals: Vec<String> =
                        atoms.iter().map(|a| a.path().literal(&g)).collect();
                    println!("{}", serde_json::json!(literals));
                }
                Format::Dot => return Err(unsupported("dot", "atoms")),
            }
        }
        Verb::Nf { common, path } => {
            let g = graph(&common.source)?;
            let p = PositivePath::parse(&g, &path)?;
            let nf = deligne_nf(&g, &p, common.cap)?;
            match common.format {
                Format::Text => println!("{}", nf.to_text(&g)),
                Format::Json => println!("{}", nf.to_json(&g)),
                Format::Dot => return Err(unsupported("dot", "nf")),
            }
        }
        Verb::Equal { common, path1, path2 } => {
            let g = graph(&common.source)?;
            let p = PositivePath::parse(&g, &path1)?;
            let q = PositivePath::parse(&g, &path2)?;
            if word_problem(&g, &p, &q, common.cap)? {
                println!("equivalent");
            } else {
                println!("not equivalent");
                return Ok(ExitCode::from(EXIT_NOT_EQUIVALENT));
            }
        }
        Verb::Order { common, base } => {
            let g = graph(&common.source)?;
            let os = orient(&g, &base)?;
            match common.format {
                Format::Text => {
                    let mut lines = Vec::new();
                    for (&(c, d), &up) in os.edges() {
                        let down = if up == c { d } else { c };
                        lines.push(format!("{} > {}", g.id(up), g.id(down)));
                    }
                    lines.sort();
                    for l in lines {
                        println!("{l}");
                    }
                }
                Format::Dot => print!("{}", os.to_dot()),
                Format::Json => return Err(unsupported("json", "order")),
            }
        }
        Verb::Degrees { common, path, d } => {
            let g = graph(&common.source)?;
            let p = PositivePath::parse(&g, &path)?;
            let nf = deligne_nf(&g, &p, common.cap)?;
            let report = degree_report(&g, &nf, d, common.cap)?;
            match common.format {
                Format::Text => {
                    let walls: Vec<String> =
                        report.achieving_walls.iter().map(|h| h.to_string()).collect();
                    println!(
                        "k={} d={} max_degree={} achieving_walls=[{}]",
                        report.k,
                        report.d,
                        report.max_degree,
                        walls.join(",")
                    );
                }
                Format::Json => println!("{}", serde_json::to_string(&report).unwrap()),
                Format::Dot => return Err(unsupported("dot", "degrees")),
            }
        }
        Verb::Check(c) => {
            let arr = load(&c.source)?;
            let results = check::run_all(&arr)?;
            let mut violated = false;
            for r in &results {
                println!("{}: {} passed, {} failed", r.name, r.passed, r.failed);
                violated |= r.failed > 0;
            }
            if violated {
                return Ok(ExitCode::from(EXIT_CHECK));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
