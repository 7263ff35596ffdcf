use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use fefferman_core::conformal::ConformalData;
use fefferman_core::exact::RatFunc;
use fefferman_core::tensor::TensorField;
use fefferman_core::verify::{self, kostant_suite, random_special, verify_all, Candidate, RandomSpec, THREADS_ENV};
use fefferman_lab::render::{component_block, components};
use fefferman_lab::{read_structure, RunDocument, Structure};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "fefferman-lab", version, about = "Exact checks for Patterson-Walker metrics of projective structures")]
#[command(after_help = format!("The {THREADS_ENV} environment variable caps the number of worker threads."))]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Patterson-Walker metric and Euler field of a structure file.
    PwExtend(FileArgs),
    /// Print projective and conformal Schouten, Weyl and Cotton tensors.
    Curvature(FileArgs),
    /// Run the characterization, reduced-scale, prolongation and curvature suites.
    Verify(VerifyArgs),
    /// Run the Lie-algebra suite on the matrix model for a given n.
    Kostant(KostantArgs),
    /// Render a report document written by `verify --out` or `kostant --out`.
    Report(ReportArgs),
}

#[derive(Args)]
struct FileArgs {
    file: PathBuf,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct Output {
    /// Write the JSON report document to this path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the JSON report document instead of the table.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Structure file; omit to verify a random special structure.
    file: Option<PathBuf>,
    /// Dimension of a random structure.
    #[arg(long)]
    n: Option<usize>,
    /// Seed of a random structure, or the seed recorded for a file.
    #[arg(long)]
    seed: Option<u64>,
    /// Degree bound of random Christoffel symbols.
    #[arg(long)]
    max_degree: Option<u32>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct KostantArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ReportArgs {
    path: PathBuf,
    #[command(flatten)]
    output: Output,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(false)` when some check failed.
fn run(command: Command) -> Result<bool> {
    match command {
        Command::PwExtend(a) => pw_extend(&a).map(|_| true),
        Command::Curvature(a) => curvature(&a).map(|_| true),
        Command::Verify(a) => verify_command(&a),
        Command::Kostant(a) => {
            let report = kostant_suite(a.n, a.seed)?;
            emit(&RunDocument::new("kostant", format!("n = {}", a.n), vec![], vec![report]), &a.output)
        }
        Command::Report(a) => {
            let text = std::fs::read_to_string(&a.path).with_context(|| format!("reading {}", a.path.display()))?;
            let doc = RunDocument::from_json(&text).with_context(|| a.path.display().to_string())?;
            emit(&doc, &a.output)
        }
    }
}

fn load(path: &Path) -> Result<Structure> {
    let s = read_structure(path)?;
    for note in &s.notes {
        eprintln!("{note}");
    }
    Ok(s)
}

fn emit(doc: &RunDocument, out: &Output) -> Result<bool> {
    if let Some(path) = &out.out {
        std::fs::write(path, doc.to_json()).with_context(|| format!("writing {}", path.display()))?;
    }
    if out.json {
        print!("{}", doc.to_json());
    } else {
        print!("{}", doc.to_table());
    }
    Ok(doc.all_pass())
}

fn verify_command(a: &VerifyArgs) -> Result<bool> {
    let (candidate, subject, notes) = match &a.file {
        Some(path) => {
            if a.max_degree.is_some() {
                bail!("--max-degree applies to random structures only");
            }
            let mut s = load(path)?;
            if let Some(n) = a.n.filter(|&n| n != s.n) {
                bail!("--n {n} contradicts n = {} in {}", s.n, path.display());
            }
            if a.seed.is_some() {
                s.seed = a.seed;
            }
            (s.candidate()?, path.display().to_string(), s.notes.clone())
        }
        None => {
            let Some(n) = a.n else { bail!("give a structure file or --n for a random structure") };
            let mut spec = RandomSpec::new(n, a.seed.unwrap_or(0));
            if let Some(d) = a.max_degree {
                spec.max_degree = d;
            }
            let p = random_special(spec)?;
            let c = Candidate::from_projective(spec.descriptor(), p)?.with_seed(spec.seed);
            (c, spec.descriptor(), vec![])
        }
    };
    let reports = verify_all(&candidate)?;
    emit(&RunDocument::new("verify", subject, notes, reports), &a.output)
}

#[derive(Serialize)]
struct ComponentDoc {
    format_version: u32,
    command: &'static str,
    subject: String,
    sections: Vec<Section>,
}

#[derive(Serialize)]
struct Section {
    title: String,
    components: Vec<(String, String)>,
}

fn print_sections(command: &'static str, subject: String, sections: Vec<Section>, json: bool) {
    if json {
        let doc = ComponentDoc { format_version: verify::FORMAT_VERSION, command, subject, sections };
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    } else {
        println!("{command} {subject}");
        for s in sections {
            print!("\n{}", component_block(&s.title, &s.components));
        }
    }
}

fn pw_extend(a: &FileArgs) -> Result<()> {
    let s = load(&a.file)?;
    let c = s.candidate()?;
    let chart = s.chart_names();
    let w = c.walker();
    let g = w.metric().g();
    let d = w.dim();
    let upper = TensorField::from_fn(d, d, g.valence().to_vec(), |i| {
        if i[0] <= i[1] {
            g.get(i).clone()
        } else {
            RatFunc::zero(d)
        }
    });
    let k: Vec<(String, String)> = w
        .euler_field()
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (format!("k[{}]", chart[i]), v.format_with(&chart)))
        .collect();
    let sections = vec![
        Section { title: "metric (upper triangle, symmetric)".into(), components: components("g", &upper, &chart, &chart) },
        Section { title: "Euler field".into(), components: k },
    ];
    print_sections("pw-extend", a.file.display().to_string(), sections, a.json);
    Ok(())
}

fn curvature(a: &FileArgs) -> Result<()> {
    let s = load(&a.file)?;
    let c = s.candidate()?;
    let chart = s.chart_names();
    let mut sections = Vec::new();
    let section = |title: &str, symbol: &str, t: &TensorField, index: &[String], vars: &[String]| Section {
        title: title.into(),
        components: components(symbol, t, index, vars),
    };
    if s.perturbation.is_none() {
        let p = &s.projective;
        sections.push(section("projective Schouten P_ab", "P", &p.schouten()?, &s.base, &s.base));
        sections.push(section("projective Weyl W_ab^c_d", "W", &p.weyl()?, &s.base, &s.base));
        sections.push(section("projective Cotton Y_cab", "Y", &p.cotton()?, &s.base, &s.base));
    }
    let metric = match c.scale() {
        Some(omega) => c.walker().metric().rescale(omega)?,
        None => c.walker().metric().clone(),
    };
    let data = ConformalData::new(metric);
    sections.push(section("conformal Schouten P_ab", "P", data.schouten(), &chart, &chart));
    sections.push(section("conformal Weyl W_abcd", "W", data.weyl_lowered(), &chart, &chart));
    sections.push(section("conformal Cotton Y_cab", "Y", data.cotton(), &chart, &chart));
    print_sections("curvature", a.file.display().to_string(), sections, a.json);
    Ok(())
}
