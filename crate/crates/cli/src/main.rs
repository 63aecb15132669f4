use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use itertools::Itertools;
use serde_json::{json, Value};

use rbident_core::freeterm::{parse, parse_definitions, var_name, Interpretation, MacroTable};
use rbident_core::idspace::{consequence_span, decompose, enumerate_basis, identity_space, CoordinateSelector, Symmetry};
use rbident_core::models::{parse_model_spec, Model, MODEL_SELECTORS};
use rbident_core::qexact::{format_combination, format_rat};
use rbident_core::repro::{run_report, ReproOptions, REPORTS};
use rbident_core::verify::{check_words, SamplingPlan};
use rbident_core::QFreePoly;

#[derive(Parser)]
#[command(name = "rbident", version, about = "Exact checks of polynomial identities in Rota-Baxter derived algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Words {
    Plain,
    Lie,
    Jordan,
}

impl From<Words> for Interpretation {
    fn from(w: Words) -> Self {
        match w {
            Words::Plain => Interpretation::Plain,
            Words::Lie => Interpretation::LieWords,
            Words::Jordan => Interpretation::JordanWords,
        }
    }
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Builtin identity name.
    #[arg(long)]
    identity: Option<String>,
    /// DSL file of definitions; the last one is the target.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Inline DSL expression.
    #[arg(long)]
    expr: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check an identity in a model.
    Check {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        model: String,
        /// Check on all monomial tuples with exponents up to this bound.
        #[arg(long, conflicts_with = "samples")]
        grid: Option<u32>,
        /// Check on this many pseudorandom assignments.
        #[arg(long)]
        samples: Option<usize>,
        /// Meaning of the formal product of the identity.
        #[arg(long, value_enum, default_value_t = Words::Plain)]
        words: Words,
    },
    /// Compute the identity space of a model in one degree.
    Solve {
        #[arg(long)]
        degree: usize,
        /// none, comm, anticomm or rcomReduced.
        #[arg(long, default_value = "none")]
        symmetry: String,
        #[arg(long)]
        model: String,
        /// Use only this 1-based coordinate of each value.
        #[arg(long)]
        component: Option<u32>,
    },
    /// Express an identity through the consequences of generators.
    Decompose {
        #[command(flatten)]
        source: Source,
        /// Builtin generator names, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        generators: Vec<String>,
        #[arg(long, default_value = "none")]
        symmetry: String,
        /// Decompose modulo the identity space of this model.
        #[arg(long)]
        modulo: Option<String>,
    },
    /// Run a named reproduction report, or `all`.
    Repro {
        name: String,
        /// Include the degree-5 identity-space search of the double product.
        #[arg(long)]
        degree5: bool,
    },
    /// List model spec selectors and their parameters.
    Models,
}

struct Outcome {
    text: String,
    json: Value,
    ok: bool,
}

type Failure = String;

fn load(source: &Source, interp: Interpretation) -> Result<QFreePoly, Failure> {
    let mut table = MacroTable::builtins();
    let expr = if let Some(name) = &source.identity {
        table.instance(name).ok_or_else(|| format!("unknown identity '{name}'"))?
    } else if let Some(path) = &source.file {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let names = parse_definitions(&text, &mut table).map_err(|e| format!("{}: {e}", path.display()))?;
        let last = names.last().ok_or_else(|| format!("{}: no definitions", path.display()))?;
        table.instance(last).expect("just defined")
    } else {
        let text = source.expr.as_deref().expect("clap enforces one source");
        return parse(text, &table).map_err(|e| e.to_string())?.expand(interp).map_err(|e| e.to_string());
    };
    expr.expand(&table, interp).map_err(|e| e.to_string())
}

fn model(spec: &str) -> Result<Model, Failure> {
    parse_model_spec(spec).map_err(|e| format!("model '{spec}': {e}"))
}

fn symmetry(s: &str) -> Result<Symmetry, Failure> {
    s.parse().map_err(|e: rbident_core::idspace::IdSpaceError| e.to_string())
}

fn check(cli: &Cli, source: &Source, spec: &str, grid: Option<u32>, samples: Option<usize>, words: Words) -> Result<Outcome, Failure> {
    let interp = words.into();
    let p = load(source, interp)?;
    let m = model(spec)?;
    let plan = match (grid, samples) {
        (Some(b), _) => match m.carrier() {
            rbident_core::models::Carrier::Basis(_) => SamplingPlan::BasisTuples,
            _ => SamplingPlan::grid(b),
        },
        (None, Some(n)) => SamplingPlan::random(n, cli.seed),
        (None, None) => SamplingPlan::default_for(m.carrier(), cli.seed),
    };
    let v = check_words(&p, interp, &m, &plan).map_err(|e| e.to_string())?;
    let mut json = v.to_json();
    json["model"] = Value::String(m.spec_string());
    Ok(Outcome { text: format!("{v}\n"), json, ok: v.holds_flag() })
}

fn solve(degree: usize, sym: &str, spec: &str, component: Option<u32>, seed: u64) -> Result<Outcome, Failure> {
    let sym = symmetry(sym)?;
    let basis = enumerate_basis(degree, sym).map_err(|e| e.to_string())?;
    let m = model(spec)?;
    let selector = component.map_or(CoordinateSelector::All, CoordinateSelector::Component);
    let space = identity_space(&basis, &m, &[], selector, seed).map_err(|e| e.to_string())?;
    let k = &space.kernel;
    let names: Vec<String> = k.free.iter().map(|c| format!("l{}", c + 1)).collect();
    let relations: Vec<String> = (0..basis.len())
        .filter(|c| !k.free.contains(c))
        .map(|c| {
            let coeffs: Vec<_> = k.vectors.iter().map(|v| v[c].clone()).collect();
            format!("l{} = {}", c + 1, format_combination(&coeffs, &names))
        })
        .collect();
    let identities: Vec<String> = k.vectors.iter().map(|v| basis.to_poly(v).to_string()).collect();
    let mut text = format!(
        "degree {degree}, {sym}, {m}: {} monomials, {} samples, rank {}, kernel dimension {}\n",
        basis.len(),
        space.samples,
        k.rank,
        k.dim()
    );
    for (i, mono) in basis.render().iter().enumerate() {
        text.push_str(&format!("  l{} = {mono}\n", i + 1));
    }
    if !names.is_empty() {
        text.push_str(&format!("free: {}\n", names.join(", ")));
    }
    for r in &relations {
        text.push_str(&format!("  {r}\n"));
    }
    for p in &identities {
        text.push_str(&format!("identity: {p}\n"));
    }
    let json = json!({
        "degree": degree,
        "symmetry": sym.to_string(),
        "model": m.spec_string(),
        "basis": basis.render(),
        "samples": space.samples,
        "rank": k.rank,
        "kernel_dim": k.dim(),
        "free": names,
        "relations": relations,
        "identities": identities,
    });
    Ok(Outcome { text, json, ok: true })
}

fn generator_span(name: &str, target: usize, sym: Symmetry) -> Result<Vec<(String, QFreePoly)>, Failure> {
    let f = rbident_core::freeterm::builtin(name, sym.interpretation()).map_err(|e| e.to_string())?;
    let f = rbident_core::freeterm::lift(&f, sym.interpretation());
    let d = f.degree().unwrap_or(0);
    if d == target {
        Ok((1..=target as u32)
            .permutations(target)
            .map(|sigma| {
                let label = format!("{name}({})", sigma.iter().map(|&i| var_name(i)).join(","));
                (label, sym.reduce(&f.permute(&sigma).expect("permutation of the arity")))
            })
            .collect())
    } else {
        let span = consequence_span(&f, target, sym).map_err(|e| e.to_string())?;
        Ok(span.into_iter().enumerate().map(|(i, p)| (format!("{name}[{}]", i + 1), p)).collect())
    }
}

fn decompose_cmd(source: &Source, generators: &[String], sym: &str, modulo: Option<&str>, seed: u64) -> Result<Outcome, Failure> {
    let sym = symmetry(sym)?;
    let interp = sym.interpretation();
    let target = rbident_core::freeterm::lift(&load(source, interp)?, interp);
    let degree = target.degree().ok_or("the target is zero")?;
    let basis = enumerate_basis(degree, sym).map_err(|e| e.to_string())?;
    let mut labelled = Vec::new();
    for g in generators {
        labelled.extend(generator_span(g, degree, sym)?);
    }
    let (labels, span): (Vec<String>, Vec<QFreePoly>) = labelled.into_iter().unzip();
    let kernel = match modulo {
        Some(spec) => {
            let m = model(spec)?;
            Some(identity_space(&basis, &m, &[], CoordinateSelector::All, seed).map_err(|e| e.to_string())?.kernel)
        }
        None => None,
    };
    let target = sym.reduce(&target);
    let d = decompose(&target, &span, kernel.as_ref(), &basis).map_err(|e| e.to_string())?;
    Ok(match d {
        None => Outcome {
            text: "not in span\n".to_string(),
            json: json!({ "status": "not_in_span" }),
            ok: false,
        },
        Some(d) => {
            let terms: Vec<(String, String)> = d
                .coefficients
                .iter()
                .zip(&labels)
                .filter(|(c, _)| !num_traits::Zero::is_zero(*c))
                .map(|(c, l)| (format_rat(c), l.clone()))
                .collect();
            let combo = format_combination(&d.coefficients, &labels);
            let mut text = format!("target = {combo}\n");
            if d.uses_kernel() {
                text.push_str(&format!("  + identity of the model: {}\n", d.residual));
            }
            Outcome {
                text,
                json: json!({
                    "status": "decomposed",
                    "terms": terms.iter().map(|(c, l)| json!({ "coefficient": c, "generator": l })).collect::<Vec<_>>(),
                    "residual": d.residual.to_string(),
                }),
                ok: true,
            }
        }
    })
}

fn repro(name: &str, degree5: bool, seed: u64) -> Result<Outcome, Failure> {
    let opts = ReproOptions { seed, zinbiel_degree5: degree5 };
    let names: Vec<&str> = if name == "all" { REPORTS.iter().map(|(n, _)| *n).collect() } else { vec![name] };
    let (mut text, mut items, mut ok) = (String::new(), Vec::new(), true);
    for n in names {
        let r = run_report(n, &opts).map_err(|e| e.to_string())?;
        text.push_str(&r.to_text());
        ok &= r.passed();
        match r.to_json() {
            Value::Array(a) => items.extend(a),
            other => items.push(other),
        }
    }
    Ok(Outcome { text, json: Value::Array(items), ok })
}

fn models() -> Outcome {
    let text = MODEL_SELECTORS.iter().map(|(s, d)| format!("{s}\n    {d}\n")).collect();
    let json = Value::Array(MODEL_SELECTORS.iter().map(|(s, d)| json!({ "spec": s, "description": d })).collect());
    Outcome { text, json, ok: true }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Check { source, model, grid, samples, words } => check(cli, source, model, *grid, *samples, *words),
        Command::Solve { degree, symmetry, model, component } => solve(*degree, symmetry, model, *component, cli.seed),
        Command::Decompose { source, generators, symmetry, modulo } => decompose_cmd(source, generators, symmetry, modulo.as_deref(), cli.seed),
        Command::Repro { name, degree5 } => repro(name, *degree5, cli.seed),
        Command::Models => Ok(models()),
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("RBIDENT_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let body = match cli.format {
        Format::Text => outcome.text,
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&outcome.json).expect("json serializes")),
    };
    match &cli.output {
        Some(path) => {
            if let Err(e) = fs::write(path, body) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{body}"),
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
