//! `stripcat`: extended persistence diagrams, block objects and presented
//! functors from the command line.
//!
//! Exit codes: 0 on success, 2 when an input file does not parse or violates
//! its schema, 3 when a computation or an invariant check fails.

mod check;
mod plot;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};
use stripcat::dcat::{self, rep, MorphismJson};
use stripcat::epd::{self, DiagramJson};
use stripcat::homology::ComplexJson;
use stripcat::k0::K0Element;
use stripcat::presj::{self, PresentedJson};
use stripcat::{
    DcatMorphism, DcatObject, Diagram, Fp, IntStripFunction, PresentedFunctor, SimplicialFunction,
};

#[derive(Parser)]
#[command(
    name = "stripcat",
    version,
    about = "Extended persistence and sheaves on the real line"
)]
struct Cli {
    /// Characteristic of the coefficient field; overrides the `char` field of every input.
    #[arg(long = "char", global = true, value_name = "P")]
    char: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extended persistence diagram of a simplexwise linear function.
    Epd {
        complex: PathBuf,
        /// Also write a strip plot of the diagram.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// The interval sheaves of a diagram.
    Sheaf { diagram: PathBuf },
    /// Dimension and basis of the morphism space between two objects.
    Hom { source: PathBuf, target: PathBuf },
    /// Mapping cone of a morphism.
    Cone {
        morphism: PathBuf,
        /// Also report the maps of the distinguished triangle.
        #[arg(long)]
        triangle: bool,
    },
    /// Betti functions and the Euler function of a presented functor.
    Resolve {
        functor: PathBuf,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        /// Truncate the Euler function at this degree instead of requiring finite support.
        #[arg(long)]
        horizon: Option<i64>,
    },
    /// Arithmetic on classes of Euler functions.
    K0 {
        #[arg(value_enum)]
        op: K0Op,
        a: PathBuf,
        b: PathBuf,
    },
    /// Runs every invariant check on a simplexwise linear function.
    Check { complex: PathBuf },
    /// Writes an SVG plot of a diagram on the strip.
    Plot {
        diagram: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum K0Op {
    Add,
    Sub,
    Eq,
}

/// A failure, classified by exit code.
#[derive(Debug)]
enum Failure {
    Input(String),
    Compute(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Compute(_) => 3,
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn compute<T>(r: stripcat::Result<T>) -> CliResult<T> {
    r.map_err(|e| Failure::Compute(e.to_string()))
}

fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| {
        Failure::Input(format!(
            "{}:{}:{}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })
}

fn schema<T>(path: &Path, r: stripcat::Result<T>) -> CliResult<T> {
    r.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|e| Failure::Compute(format!("{}: {e}", path.display())))
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

struct Session {
    char: Option<u32>,
}

impl Session {
    fn field(&self, file_char: u32, path: &Path) -> CliResult<Fp> {
        schema(path, Fp::new(self.char.unwrap_or(file_char)))
    }

    fn complex(&self, path: &Path) -> CliResult<SimplicialFunction> {
        let mut j: ComplexJson = parse(path)?;
        j.char = self.field(j.char, path)?.char();
        schema(path, SimplicialFunction::from_json(&j))
    }

    fn diagram(&self, path: &Path) -> CliResult<Diagram> {
        let mut j: DiagramJson = parse(path)?;
        j.char = self.field(j.char, path)?.char();
        schema(path, Diagram::from_json(&j))
    }

    fn object(&self, path: &Path) -> CliResult<DcatObject> {
        Ok(DcatObject::new(self.diagram(path)?.expanded()))
    }

    fn morphism(&self, path: &Path) -> CliResult<DcatMorphism> {
        let mut j: MorphismJson = parse(path)?;
        j.char = self.field(j.char, path)?.char();
        schema(path, DcatMorphism::from_json(&j))
    }

    fn functor(&self, path: &Path) -> CliResult<PresentedFunctor> {
        let mut j: PresentedJson = parse(path)?;
        j.delta.char = self.field(j.delta.char, path)?.char();
        schema(path, PresentedFunctor::from_json(&j))
    }

    fn function(&self, path: &Path) -> CliResult<IntStripFunction> {
        let text = read_text(path)?;
        IntStripFunction::from_json(&text).map_err(|e| {
            Failure::Input(format!(
                "{}:{}:{}: {e}",
                path.display(),
                e.line(),
                e.column()
            ))
        })
    }
}

fn function_value(f: &IntStripFunction) -> Value {
    serde_json::from_str(&f.to_json()).expect("function JSON round-trips")
}

fn run(cli: Cli) -> CliResult<String> {
    let s = Session { char: cli.char };
    match cli.command {
        Command::Epd { complex, svg } => {
            let f = s.complex(&complex)?;
            let d = compute(epd::diagram(&f))?;
            if let Some(out) = svg {
                write_file(&out, &plot::svg(&d))?;
            }
            Ok(pretty(&d.to_json()))
        }
        Command::Sheaf { diagram } => Ok(s.diagram(&diagram)?.sheaf_string()),
        Command::Hom { source, target } => {
            let (a, b) = (s.object(&source)?, s.object(&target)?);
            let basis = dcat::hom_basis(&a, &b);
            let slots: Vec<Value> = basis
                .iter()
                .map(|&(j, i)| json!({"source": i, "target": j, "from": a.summands[i].to_string(), "to": b.summands[j].to_string()}))
                .collect();
            Ok(pretty(&json!({"dim": basis.len(), "basis": slots})))
        }
        Command::Cone { morphism, triangle } => {
            let phi = s.morphism(&morphism)?;
            if triangle {
                let tri = compute(rep::triangle(&phi))?;
                Ok(pretty(&json!({
                    "cone": tri.cone.to_json(),
                    "sheaves": tri.cone.to_string(),
                    "to_cone": tri.to_cone.to_json(),
                    "from_cone": tri.from_cone.to_json(),
                })))
            } else {
                let c = compute(dcat::cone(&phi))?;
                Ok(pretty(
                    &json!({"cone": c.to_json(), "sheaves": c.to_string()}),
                ))
            }
        }
        Command::Resolve {
            functor,
            depth,
            horizon,
        } => {
            let f = s.functor(&functor)?;
            let res = compute(presj::equivariant_resolution(&f, depth))?;
            let betti: Vec<Value> = (0..res.depth())
                .map(|n| function_value(&res.betti(n)))
                .collect();
            let euler = match horizon {
                Some(h) => {
                    json!({"max_deg": h, "function": function_value(&compute(presj::euler_upto(&f, h))?)})
                }
                None => match presj::euler(&f) {
                    Ok(chi) => json!({"function": function_value(&chi)}),
                    Err(stripcat::Error::InfiniteSupport(why)) => json!({"infinite_support": why}),
                    Err(e) => return Err(Failure::Compute(e.to_string())),
                },
            };
            Ok(pretty(&json!({"betti": betti, "euler": euler})))
        }
        Command::K0 { op, a, b } => {
            let x = compute(K0Element::new(s.function(&a)?))?;
            let y = compute(K0Element::new(s.function(&b)?))?;
            Ok(match op {
                K0Op::Add => x.add(&y).to_json(),
                K0Op::Sub => x.sub(&y).to_json(),
                K0Op::Eq => (x == y).to_string(),
            })
        }
        Command::Check { complex } => {
            let f = s.complex(&complex)?;
            let report = check::run(&f);
            let text = report.to_string();
            if report.passed() {
                Ok(text)
            } else {
                print!("{text}");
                Err(Failure::Compute("invariant checks failed".into()))
            }
        }
        Command::Plot { diagram, output } => {
            let d = s.diagram(&diagram)?;
            write_file(&output, &plot::svg(&d))?;
            Ok(format!("wrote {}", output.display()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            if out.ends_with('\n') {
                print!("{out}");
            } else {
                println!("{out}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            let msg = match &e {
                Failure::Input(m) | Failure::Compute(m) => m,
            };
            eprintln!("error: {msg}");
            ExitCode::from(e.code())
        }
    }
}
