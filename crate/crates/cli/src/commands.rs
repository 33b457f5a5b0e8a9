use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use persdgm::diagram::{type_a_diagram, type_b_diagram, DiagramGrid};
use persdgm::exact::{format_rational, parse_rational};
use persdgm::homology::{
    component_module, parse_filtration, persistent_module, Coefficients, FilteredComplex,
};
use persdgm::metrics::erosion_distance_full;
use persdgm::module::ConstructibleModule;
use persdgm::stability::{Experiment, Functor, TrialOutcome};
use serde::Serialize;

use crate::codec::{to_json, DiagramJson, ModuleJson};
use crate::error::{CliError, Result};
use crate::render::{diagram_svg, diagram_tsv};
use crate::{
    CategoryArg, ConvertArgs, DiagramArgs, ErosionArgs, Format, Kind, ModuleArgs, OutputArgs,
    StabilityArgs,
};

enum Input {
    Filtration(FilteredComplex),
    Module(ConstructibleModule),
    Diagram(DiagramGrid),
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// JSON files holding `cells` are diagrams, other JSON files are modules,
/// everything else is a filtration.
fn load(path: &Path) -> Result<Input> {
    let text = read(path)?;
    if !text.trim_start().starts_with('{') {
        return Ok(Input::Filtration(parse_filtration(&text)?));
    }
    let json_err = |source| CliError::Json {
        path: path.to_path_buf(),
        source,
    };
    let value: serde_json::Value = serde_json::from_str(&text).map_err(json_err)?;
    if value.get("cells").is_some() {
        let d: DiagramJson = serde_json::from_value(value).map_err(json_err)?;
        Ok(Input::Diagram(d.to_diagram()?))
    } else {
        let m: ModuleJson = serde_json::from_value(value).map_err(json_err)?;
        Ok(Input::Module(m.to_module()?))
    }
}

/// How a filtration becomes a module.
fn functor(args: &ModuleArgs) -> Result<Functor> {
    let coeffs = args
        .coeff
        .as_deref()
        .map(str::parse::<Coefficients>)
        .transpose()?;
    let homology = |coeffs: Coefficients| Functor::Homology {
        degree: args.degree,
        coeffs,
    };
    let mismatch = |c: &Coefficients| {
        CliError::Usage(format!(
            "--coeff {c} gives a {} module, not {}",
            c.category().name(),
            args.category.map_or("", CategoryArg::name)
        ))
    };
    match (args.category, coeffs) {
        (Some(CategoryArg::Finset), _) => Ok(Functor::Components),
        (Some(CategoryArg::Repn), _) => Err(CliError::Usage(
            "filtrations do not give repn modules; pass a module JSON file".into(),
        )),
        (None, c) => Ok(homology(c.unwrap_or(Coefficients::Integers))),
        (Some(CategoryArg::Vect), None) => Ok(homology(Coefficients::Field(
            persdgm::exact::Field::Rationals,
        ))),
        (Some(CategoryArg::Ab), None) => Ok(homology(Coefficients::Integers)),
        (Some(CategoryArg::Finab), None) => {
            Err(CliError::Usage("finab needs --coeff Zm:<m>".into()))
        }
        (Some(cat), Some(c)) => {
            if c.category().name() == cat.name() {
                Ok(homology(c))
            } else {
                Err(mismatch(&c))
            }
        }
    }
}

fn module_of(complex: &FilteredComplex, functor: &Functor) -> Result<ConstructibleModule> {
    Ok(match functor {
        Functor::Homology { degree, coeffs } => persistent_module(complex, *degree, coeffs)?,
        Functor::Components => component_module(complex)?,
    })
}

fn load_module(args: &ModuleArgs) -> Result<ConstructibleModule> {
    match load(&args.input)? {
        Input::Filtration(k) => module_of(&k, &functor(args)?),
        Input::Module(m) => {
            if let Some(c) = args.category {
                if c.name() != m.category().name() {
                    return Err(CliError::Usage(format!(
                        "--category {} given for a {} module",
                        c.name(),
                        m.category().name()
                    )));
                }
            }
            Ok(m)
        }
        Input::Diagram(_) => Err(CliError::Usage(format!(
            "{} holds a diagram, expected a filtration or a module",
            args.input.display()
        ))),
    }
}

fn emit(output: &OutputArgs, text: &str) -> Result<()> {
    match &output.out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

fn render_diagram(y: &DiagramGrid, format: Format, title: &str) -> String {
    match format {
        Format::Json => to_json(&DiagramJson::from_diagram(y)),
        Format::Tsv => diagram_tsv(y),
        Format::Svg => diagram_svg(y, title),
    }
}

pub fn diagram(args: &DiagramArgs) -> Result<()> {
    let m = load_module(&args.module)?;
    let (y, kind) = match args.kind {
        Kind::A => (type_a_diagram(&m)?, "A"),
        Kind::B => (type_b_diagram(&m)?, "B"),
    };
    let title = format!("type {kind} diagram in {}", y.tag());
    emit(
        &args.output,
        &render_diagram(&y, args.output.format.unwrap_or(Format::Json), &title),
    )
}

fn load_diagram(path: &Path) -> Result<DiagramGrid> {
    match load(path)? {
        Input::Diagram(y) => Ok(y),
        _ => Err(CliError::Usage(format!(
            "{} is not a diagram file",
            path.display()
        ))),
    }
}

fn distance_text(d: &Option<persdgm::exact::Rational>) -> String {
    d.as_ref()
        .map_or_else(|| "inf".to_string(), format_rational)
}

#[derive(Serialize)]
struct CandidateJson {
    epsilon: String,
    midpoint: bool,
    forward: bool,
    backward: bool,
}

#[derive(Serialize)]
struct ErosionJson {
    distance: String,
    candidates: Vec<CandidateJson>,
}

pub fn erosion(args: &ErosionArgs) -> Result<()> {
    let [a, b] = args.input.as_slice() else {
        return Err(CliError::Usage(format!(
            "erosion takes exactly two --input files, got {}",
            args.input.len()
        )));
    };
    let (y1, y2) = (load_diagram(a)?, load_diagram(b)?);
    let report = erosion_distance_full(&y1, &y2)?;
    for m in &report.flagged {
        eprintln!(
            "warning: midpoint {} succeeds where the breakpoint below fails",
            format_rational(m)
        );
    }
    let text = match args.output.format.unwrap_or(Format::Tsv) {
        Format::Tsv => {
            let mut s = format!("distance\t{}\n", distance_text(&report.distance));
            s.push_str("epsilon\tmidpoint\tforward\tbackward\n");
            for row in &report.table {
                let _ = writeln!(
                    s,
                    "{}\t{}\t{}\t{}",
                    format_rational(&row.epsilon),
                    row.midpoint,
                    row.forward,
                    row.backward
                );
            }
            s
        }
        Format::Json => to_json(&ErosionJson {
            distance: distance_text(&report.distance),
            candidates: report
                .table
                .iter()
                .map(|r| CandidateJson {
                    epsilon: format_rational(&r.epsilon),
                    midpoint: r.midpoint,
                    forward: r.forward,
                    backward: r.backward,
                })
                .collect(),
        }),
        Format::Svg => return Err(CliError::Usage("erosion reports are tsv or json".into())),
    };
    emit(&args.output, &text)
}

fn verdict(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "pass",
        Some(false) => "FAIL",
        None => "skipped",
    }
}

#[derive(Serialize)]
struct TrialJson {
    trial: usize,
    seed: u64,
    interleaving: Option<String>,
    distance: Option<String>,
    continuity: Option<bool>,
    semicontinuity: Option<bool>,
    passed: bool,
}

#[derive(Serialize)]
struct StabilityJson {
    epsilon: String,
    rho: String,
    trials: Vec<TrialJson>,
}

fn stability_tsv(outcomes: &[TrialOutcome]) -> String {
    let mut s = String::from("trial\tseed\tinterleaving\tdistance\tcontinuity\tsemicontinuity\n");
    for o in outcomes {
        let interleaving = match &o.interleaving_failure {
            None => "pass".to_string(),
            Some(why) => format!("FAIL: {why}"),
        };
        let distance = o
            .distance
            .as_ref()
            .map_or_else(|| "-".to_string(), distance_text);
        let _ = writeln!(
            s,
            "{}\t{}\t{interleaving}\t{distance}\t{}\t{}",
            o.index,
            o.seed,
            verdict(o.continuity),
            verdict(o.semicontinuity)
        );
    }
    s
}

pub fn stability(args: &StabilityArgs) -> Result<()> {
    let epsilon = parse_rational(&args.epsilon)
        .ok_or_else(|| CliError::Usage(format!("bad --epsilon `{}`", args.epsilon)))?;
    let complex = match load(&args.module.input)? {
        Input::Filtration(k) => k,
        _ => return Err(CliError::Usage("stability needs a filtration file".into())),
    };
    let functor = functor(&args.module)?;
    let experiment = Experiment::new(complex, functor)?;
    let rho = experiment.rho();
    let outcomes = experiment.run(&epsilon, args.trials, args.seed)?;
    let failed = outcomes.iter().filter(|o| !o.passed()).count();
    let text = match args.output.format.unwrap_or(Format::Tsv) {
        Format::Tsv => stability_tsv(&outcomes),
        Format::Json => to_json(&StabilityJson {
            epsilon: format_rational(&epsilon),
            rho: distance_text(&rho),
            trials: outcomes
                .iter()
                .map(|o| TrialJson {
                    trial: o.index,
                    seed: o.seed,
                    interleaving: o.interleaving_failure.clone(),
                    distance: o.distance.as_ref().map(distance_text),
                    continuity: o.continuity,
                    semicontinuity: o.semicontinuity,
                    passed: o.passed(),
                })
                .collect(),
        }),
        Format::Svg => return Err(CliError::Usage("stability reports are tsv or json".into())),
    };
    emit(&args.output, &text)?;
    eprintln!(
        "{}/{} trials passed at ε = {} (ρ = {})",
        outcomes.len() - failed,
        outcomes.len(),
        format_rational(&epsilon),
        distance_text(&rho)
    );
    if failed > 0 {
        return Err(CliError::Violation(failed));
    }
    Ok(())
}

pub fn convert(args: &ConvertArgs) -> Result<()> {
    let format = args.output.format.unwrap_or(Format::Json);
    let text = match load(&args.module.input)? {
        Input::Diagram(y) => render_diagram(&y, format, &format!("diagram in {}", y.tag())),
        other => {
            if format != Format::Json {
                return Err(CliError::Usage("modules convert to json only".into()));
            }
            let m = match other {
                Input::Filtration(k) => module_of(&k, &functor(&args.module)?)?,
                Input::Module(m) => m,
                Input::Diagram(_) => unreachable!(),
            };
            to_json(&ModuleJson::from_module(&m))
        }
    };
    emit(&args.output, &text)
}
