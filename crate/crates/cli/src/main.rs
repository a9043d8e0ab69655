use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use coeffective::builder::{strand_complex, validate_structure, StructureInput};
use coeffective::homology::{cohomology_with, cohomology_with_generators, LesReport};
use coeffective::models::{builtin, model_file, BuiltinModel, BuiltinParams, ModelFile, PolynomialModel, RingModel};
use coeffective::pipeline::{hj_direct, les_ring, les_structure, plain_and_twisted};
use coeffective::report::{report, ReportConfig};
use coeffective::sweeps::{local_exactness, symbol_sweep, LocalExactness, Shape, StrandClass, DEFAULT_SEED};
use coeffective::{CalibrationKind, Error, Execution};

#[derive(Parser, Debug)]
#[command(name = "coeffective", version, about = "Extended coeffective complexes on exact finite models")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Shipped example: torus, torus7_g2, hopf4, kodaira_thurston, cpn, local
    #[arg(long, global = true)]
    builtin: Option<String>,

    /// Model file in the JSON schema
    #[arg(long, global = true, conflicts_with = "builtin")]
    model: Option<PathBuf>,

    /// Half-dimension for symplectic shapes (torus, cpn, local, symbol-check)
    #[arg(long, global = true)]
    n: Option<usize>,

    #[arg(long, global = true, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,

    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    #[arg(long, global = true)]
    max_homogeneity: Option<usize>,

    /// symplectic or g2
    #[arg(long, global = true)]
    shape: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Markdown)]
    format: Format,

    /// Write the output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Run everything on the calling thread
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Check d² = 0, dα = 0, dF = 2α∧F and the calibration profile
    Validate,
    /// Plain and twisted (weight 2) cohomology of the model
    Cohomology,
    /// Serialize the extended complex
    Build,
    /// Cohomology of the extended complex
    Hj,
    /// Exact-sequence prediction compared with the direct table
    Les,
    /// Exactness of symbol complexes at random covectors
    SymbolCheck,
    /// Cohomology of polynomial strands up to the given homogeneity
    LocalExactness,
    /// Markdown summary of the shipped examples
    Report,
    /// Print a Lie-algebra builtin as a model file
    Emit,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Markdown,
    Csv,
}

/// What a subcommand produced: text plus whether every check held.
struct Outcome {
    text: String,
    ok: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, ok: true }
    }
}

enum Source {
    Lie(StructureInput),
    Ring(RingModel),
    Polynomial(PolynomialModel),
}

fn shape_kind(cli: &Cli) -> Result<Option<CalibrationKind>, Error> {
    match cli.shape.as_deref() {
        None => Ok(None),
        Some("symplectic") => Ok(Some(CalibrationKind::Symplectic)),
        Some("g2") => Ok(Some(CalibrationKind::G2)),
        Some(other) => Err(Error::BadParameter(format!("unknown shape {other}; expected symplectic or g2"))),
    }
}

fn source(cli: &Cli) -> Result<Source, Error> {
    if let Some(path) = &cli.model {
        return Ok(Source::Lie(ModelFile::read(path)?.to_input()?));
    }
    let name = cli
        .builtin
        .as_deref()
        .ok_or_else(|| Error::BadParameter("give --builtin <name> or --model <path>".into()))?;
    let params = BuiltinParams { n: cli.n, max_homogeneity: cli.max_homogeneity, shape: shape_kind(cli)? };
    Ok(match builtin(name, &params)? {
        BuiltinModel::Lie(s) => Source::Lie(s),
        BuiltinModel::Ring(r) => Source::Ring(r),
        BuiltinModel::Polynomial(p) => Source::Polynomial(p),
    })
}

fn exec(cli: &Cli) -> Execution {
    if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output serializes");
    s.push('\n');
    s
}

fn dims_table(header: &[&str], rows: &[Vec<String>], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut s = header.join(",") + "\n";
            for r in rows {
                s += &(r.join(",") + "\n");
            }
            s
        }
        _ => {
            let mut s = format!("| {} |\n|{}\n", header.join(" | "), "---|".repeat(header.len()));
            for r in rows {
                s += &format!("| {} |\n", r.join(" | "));
            }
            s
        }
    }
}

fn les_output(rep: &LesReport, format: Format) -> Outcome {
    let text = match format {
        Format::Json => pretty(rep),
        Format::Markdown => rep.to_markdown(),
        Format::Csv => rep.to_csv(),
    };
    Outcome { text, ok: rep.all_match() }
}

fn validate(cli: &Cli) -> Result<Outcome, Error> {
    match source(cli)? {
        Source::Lie(input) => {
            let rep = validate_structure(&input);
            let text = match cli.format {
                Format::Json => pretty(&rep),
                _ => {
                    let mut s = format!("model {}: {}\n\n", rep.name, if rep.valid { "valid" } else { "INVALID" });
                    let rows: Vec<Vec<String>> =
                        rep.checks.iter().map(|c| vec![c.check.to_string(), c.passed.to_string()]).collect();
                    s += &dims_table(&["check", "passed"], &rows, cli.format);
                    if let Some(f) = &rep.failure {
                        s += &format!("\n{}: {}\n", f.code.as_str(), f.message);
                    }
                    s
                }
            };
            if let Some(f) = &rep.failure {
                eprintln!("{}", json!({ "error": f.code.as_str(), "message": f.message, "offending": f.offending }));
            }
            Ok(Outcome { text, ok: rep.valid })
        }
        Source::Ring(r) => Ok(Outcome::ok(format!("ring model {} with graded dims {:?}: valid\n", r.name, r.dims))),
        Source::Polynomial(p) => Ok(Outcome::ok(format!(
            "local model on Q^{} ({}), homogeneity ≤ {}: valid\n",
            p.dim,
            p.calibration.kind(),
            p.max_homogeneity
        ))),
    }
}

fn cohomology_cmd(cli: &Cli) -> Result<Outcome, Error> {
    let (plain, twisted) = match source(cli)? {
        Source::Lie(input) => {
            let s = input.validate()?;
            let (p, t) = plain_and_twisted(&s)?;
            (cohomology_with_generators(&p).dims, cohomology_with_generators(&t).dims)
        }
        Source::Ring(r) => (r.dims.clone(), r.dims.clone()),
        Source::Polynomial(_) => return Err(Error::BadParameter("cohomology needs a Lie or ring model".into())),
    };
    let text = match cli.format {
        Format::Json => pretty(&json!({ "plain": plain, "twisted": twisted })),
        f => {
            let rows: Vec<Vec<String>> =
                (0..plain.len()).map(|k| vec![k.to_string(), plain[k].to_string(), twisted[k].to_string()]).collect();
            dims_table(&["degree", "plain", "twisted"], &rows, f)
        }
    };
    Ok(Outcome::ok(text))
}

fn build(cli: &Cli) -> Result<Outcome, Error> {
    let ec = match source(cli)? {
        Source::Lie(input) => hj_direct(&input.validate()?, exec(cli))?.0,
        Source::Polynomial(p) => {
            let ec = strand_complex(&p.calibration, p.max_homogeneity, exec(cli))?;
            ec.complex.check_d_squared()?;
            ec
        }
        Source::Ring(_) => return Err(Error::BadParameter("ring models have no form-level complex to build".into())),
    };
    let text = match cli.format {
        Format::Json => pretty(&ec.to_json_value()),
        f => {
            let rows: Vec<Vec<String>> = ec
                .positions
                .iter()
                .map(|p| {
                    let order = match p.order {
                        Some(o) => format!("{o:?}").to_lowercase(),
                        None => "-".into(),
                    };
                    vec![p.index.to_string(), p.label(ec.form_degree), p.dim.to_string(), order]
                })
                .collect();
            dims_table(&["position", "space", "dim", "order"], &rows, f)
        }
    };
    Ok(Outcome::ok(text))
}

fn hj(cli: &Cli) -> Result<Outcome, Error> {
    let dims = match source(cli)? {
        Source::Lie(input) => hj_direct(&input.validate()?, exec(cli))?.1.dims,
        Source::Ring(r) => les_ring(&r)?.direct.expect("compared"),
        Source::Polynomial(p) => {
            let ec = strand_complex(&p.calibration, p.max_homogeneity, exec(cli))?;
            cohomology_with(&ec.complex, exec(cli)).dims
        }
    };
    let text = match cli.format {
        Format::Json => pretty(&json!({ "dims": dims })),
        f => {
            let rows: Vec<Vec<String>> = dims.iter().enumerate().map(|(r, d)| vec![r.to_string(), d.to_string()]).collect();
            dims_table(&["degree", "dim"], &rows, f)
        }
    };
    Ok(Outcome::ok(text))
}

fn les(cli: &Cli) -> Result<Outcome, Error> {
    let rep = match source(cli)? {
        Source::Lie(input) => les_structure(&input.validate()?, exec(cli))?,
        Source::Ring(r) => les_ring(&r)?,
        Source::Polynomial(_) => return Err(Error::BadParameter("les needs a Lie or ring model".into())),
    };
    Ok(les_output(&rep, cli.format))
}

fn sweep_shape(cli: &Cli) -> Result<Shape, Error> {
    Shape::parse(cli.shape.as_deref().unwrap_or("symplectic"), cli.n)
}

fn symbol_check(cli: &Cli) -> Result<Outcome, Error> {
    let shape = sweep_shape(cli)?;
    let sw = symbol_sweep(shape, cli.samples as usize, cli.seed, exec(cli))?;
    let text = match cli.format {
        Format::Json => pretty(&sw),
        f => {
            let mut s = format!(
                "{shape}, seed {}: {}/{} exact, kernel half exact past its first position {}/{}\n",
                sw.seed, sw.exact_full, sw.samples, sw.exact_half, sw.samples
            );
            if !sw.failures.is_empty() {
                let rows: Vec<Vec<String>> = sw
                    .failures
                    .iter()
                    .map(|x| vec![format!("{:?}", x.xi), format!("{:?}", x.full), format!("{:?}", x.half)])
                    .collect();
                s += &dims_table(&["xi", "full", "half"], &rows, f);
            }
            s
        }
    };
    Ok(Outcome { text, ok: sw.passed() })
}

/// The classes a sweep up to `max_h` should find.
fn expected_classes(shape: Shape, max_h: usize) -> Vec<StrandClass> {
    let (position, h) = match shape {
        Shape::Symplectic { .. } => (1, 2),
        Shape::G2 => (2, 3),
    };
    let mut v = vec![StrandClass { h: 0, position: 0, dim: 1 }];
    if h <= max_h {
        v.push(StrandClass { h, position, dim: 1 });
    }
    v
}

fn local_exactness_cmd(cli: &Cli) -> Result<Outcome, Error> {
    let shape = sweep_shape(cli)?;
    let max_h = cli.max_homogeneity.unwrap_or(4);
    let l: LocalExactness = local_exactness(shape, max_h, exec(cli))?;
    let ok = l.classes == expected_classes(shape, max_h) && l.de_rham_defects.is_empty();
    let text = match cli.format {
        Format::Json => pretty(&json!({ "sweep": l, "matches_expected": ok })),
        f => {
            let rows: Vec<Vec<String>> =
                l.classes.iter().map(|c| vec![c.h.to_string(), c.position.to_string(), c.dim.to_string()]).collect();
            let mut s = format!("{shape}, strands h ≤ {max_h}, largest space {}\n\n", l.largest_space);
            s += &dims_table(&["h", "position", "dim"], &rows, f);
            s += &format!("\nmatches expected: {ok}\n");
            s
        }
    };
    Ok(Outcome { text, ok })
}

fn report_cmd(cli: &Cli) -> Result<Outcome, Error> {
    let r = report(&ReportConfig { seed: cli.seed, samples: cli.samples as usize, exec: exec(cli) })?;
    Ok(Outcome { text: r.markdown, ok: r.all_match })
}

fn emit(cli: &Cli) -> Result<Outcome, Error> {
    match source(cli)? {
        Source::Lie(input) => Ok(Outcome::ok(model_file(&input).to_json() + "\n")),
        _ => Err(Error::BadParameter("only Lie-algebra builtins have a model file".into())),
    }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    match cli.command {
        Command::Validate => validate(cli),
        Command::Cohomology => cohomology_cmd(cli),
        Command::Build => build(cli),
        Command::Hj => hj(cli),
        Command::Les => les(cli),
        Command::SymbolCheck => symbol_check(cli),
        Command::LocalExactness => local_exactness_cmd(cli),
        Command::Report => report_cmd(cli),
        Command::Emit => emit(cli),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &outcome.text),
                None => std::io::stdout().write_all(outcome.text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("{}", json!({ "error": "io", "message": e.to_string() }));
                return ExitCode::from(2);
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let body: Value = match &e {
                Error::Validation(f) => json!({ "error": f.code.as_str(), "message": f.message, "offending": f.offending }),
                other => json!({ "error": other.code(), "message": other.to_string() }),
            };
            eprintln!("{body}");
            ExitCode::from(if e.is_validation() { 1 } else { 2 })
        }
    }
}
