use std::fmt::Write as _;
use std::io::BufRead;

use angulator::json::{ModelRef, PairListJson};
use angulator::{
    check_mutation_closure, check_mutation_inverse, check_pair_equivalence,
    check_subfactor_bijection, classify_self_pair, emit_quiver, enumerate_diagonals,
    enumerate_weak_cotorsion_pairs, fixture, is_rigid, is_weak_cotorsion, nc, CheckReport,
    CoreSubsets, DiagonalSet, Direction, Error, HomModel, ModelParams, MutationContext, ObjectSet,
    QuiverKind, Strategy, SubfactorModel,
};
use serde_json::json;

use crate::args::{Check, Command, Common, DirectionArg, Format, KindArg, ModelArgs, StrategyArg};

/// Why a command did not exit 0.
#[derive(Debug)]
pub enum Failure {
    Error(Error),
    Usage(String),
    CheckFailed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Error(Error::Capacity(_)) => 3,
            Failure::Error(_) | Failure::Usage(_) => 1,
            Failure::CheckFailed(_) => 2,
        }
    }
}

type Outcome<T = ()> = std::result::Result<T, Failure>;

enum Selector {
    Params(ModelParams),
    Fixture(String),
    File(String),
}

impl ModelArgs {
    fn selector(&self) -> Outcome<Selector> {
        let given = [
            self.n.is_some() || self.d.is_some(),
            self.fixture.is_some(),
            self.model_file.is_some(),
        ];
        if given.iter().filter(|&&g| g).count() != 1 {
            return Err(Failure::Usage(
                "exactly one model selector is required: --n/--d, --fixture or --model-file".into(),
            ));
        }
        Ok(match (self.n, self.d, &self.fixture, &self.model_file) {
            (Some(n), Some(d), _, _) => Selector::Params(ModelParams::new(n, d)?),
            (Some(_), None, _, _) | (None, Some(_), _, _) => {
                return Err(Failure::Usage("--n and --d must be given together".into()))
            }
            (_, _, Some(name), _) => Selector::Fixture(name.clone()),
            (_, _, _, Some(path)) => Selector::File(path.display().to_string()),
            _ => unreachable!("selector count checked above"),
        })
    }
}

impl Selector {
    fn model_ref(&self) -> ModelRef {
        match self {
            Selector::Params(p) => ModelRef::Params { n: p.n(), d: p.d() },
            Selector::Fixture(name) => ModelRef::Fixture {
                fixture: name.clone(),
            },
            Selector::File(path) => ModelRef::File { file: path.clone() },
        }
    }

    fn load(&self) -> Outcome<HomModel> {
        Ok(match self {
            Selector::Params(p) => HomModel::type_a(*p)?,
            Selector::Fixture(name) => fixture(name)?,
            Selector::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?;
                HomModel::from_json(&text)?
            }
        })
    }
}

fn load(common: &Common) -> Outcome<(Selector, HomModel)> {
    let selector = common.model.selector()?;
    let model = selector.load()?;
    Ok((selector, model))
}

fn json_line(out: &mut String, value: &impl serde::Serialize) -> Outcome {
    let text = serde_json::to_string(value).map_err(Error::from)?;
    out.push_str(&text);
    out.push('\n');
    Ok(())
}

/// The set arguments: the literal flag value, or one line per set from stdin.
fn set_inputs(text: &str) -> Outcome<Vec<String>> {
    if text != "-" {
        return Ok(vec![text.to_string()]);
    }
    std::io::stdin()
        .lock()
        .lines()
        .map(|l| l.map_err(|e| Failure::Usage(format!("cannot read stdin: {e}"))))
        .collect()
}

fn optional_set(model: &HomModel, text: Option<&str>) -> Outcome<ObjectSet> {
    Ok(match text {
        Some(t) => model.parse_set(t)?,
        None => ObjectSet::EMPTY,
    })
}

fn braces(model: &HomModel, set: ObjectSet) -> String {
    format!("{{{}}}", model.format_set(set))
}

/// Runs one command and returns everything it writes to stdout.
pub fn run(command: Command) -> Outcome<String> {
    let mut out = String::new();
    match command {
        Command::Objects(common) => objects(&common, &mut out)?,
        Command::Nc { common, set } => {
            let (_, model) = load(&common)?;
            for line in set_inputs(&set.set)? {
                let s = model.parse_set(&line)?;
                let image = nc(s, &model);
                match common.format {
                    Format::Text => writeln!(out, "{}", model.format_set(image)).unwrap(),
                    Format::Json => json_line(
                        &mut out,
                        &json!({"set": model.set_labels(s), "nc": model.set_labels(image)}),
                    )?,
                }
            }
        }
        Command::Pairs { common, strategy } => {
            let (selector, model) = load(&common)?;
            let strategy = match strategy {
                StrategyArg::BruteForce => Strategy::BruteForce,
                StrategyArg::NextClosure => Strategy::NextClosure,
            };
            let pairs = enumerate_weak_cotorsion_pairs(&model, strategy)?;
            let doc = PairListJson::new(selector.model_ref(), &model, &pairs);
            match common.format {
                Format::Text => {
                    for (p, row) in pairs.iter().zip(&doc.ordered_pairs) {
                        writeln!(
                            out,
                            "{}\t{}\tcore={}\t{:?}",
                            braces(&model, p.x),
                            braces(&model, p.y),
                            braces(&model, p.core),
                            row.class
                        )
                        .unwrap();
                    }
                }
                Format::Json => json_line(&mut out, &doc)?,
            }
        }
        Command::Classify { common, set } => {
            let (_, model) = load(&common)?;
            for line in set_inputs(&set.set)? {
                let s = model.parse_set(&line)?;
                let class = classify_self_pair(s, &model);
                match common.format {
                    Format::Text => writeln!(out, "{class:?}").unwrap(),
                    Format::Json => json_line(
                        &mut out,
                        &json!({
                            "set": model.set_labels(s),
                            "rigid": is_rigid(s, &model),
                            "self_pair": is_weak_cotorsion(s, s, &model),
                            "class": class,
                        }),
                    )?,
                }
            }
        }
        Command::Mutate {
            common,
            direction,
            dset,
            set,
        } => {
            let (_, model) = load(&common)?;
            let direction = match direction {
                DirectionArg::Fwd => Direction::Forward,
                DirectionArg::Bwd => Direction::Backward,
            };
            let d = optional_set(&model, dset.as_deref())?;
            let ctx = MutationContext::new(&model, d)?;
            for line in set_inputs(&set.set)? {
                let s = model.parse_set(&line)?;
                let image = ctx.mutate_set(s, direction)?;
                match common.format {
                    Format::Text => writeln!(out, "{}", model.format_set(image)).unwrap(),
                    Format::Json => json_line(
                        &mut out,
                        &json!({
                            "set": model.set_labels(s),
                            "D": model.set_labels(d),
                            "direction": direction.to_string(),
                            "image": model.set_labels(image),
                        }),
                    )?,
                }
            }
        }
        Command::Subfactor { common, dset } => {
            let (_, model) = load(&common)?;
            let d = model.parse_set(&dset)?;
            let sub = SubfactorModel::from_parent(model, d)?;
            let doc = sub.to_json();
            match common.format {
                Format::Text => {
                    for (i, cell) in doc.cells.iter().enumerate() {
                        let vertices: Vec<String> = cell.iter().map(u32::to_string).collect();
                        writeln!(out, "cell {i}: {}", vertices.join(" ")).unwrap();
                    }
                    for o in &doc.objects {
                        writeln!(out, "{} -> cell {} {}", o.parent, o.cell, o.local).unwrap();
                    }
                }
                Format::Json => json_line(&mut out, &doc)?,
            }
        }
        Command::Check(check) => self::check(check, &mut out)?,
        Command::Quiver { common, kind } => {
            if common.format == Format::Json {
                return Err(Failure::Usage(
                    "quiver emits DOT text only; drop --format json".into(),
                ));
            }
            let (_, model) = load(&common)?;
            let kind = match kind {
                KindArg::Hom => QuiverKind::Hom,
                KindArg::Ext => QuiverKind::Ext,
            };
            out.push_str(&emit_quiver(&model, kind));
        }
    }
    Ok(out)
}

fn objects(common: &Common, out: &mut String) -> Outcome {
    let selector = common.model.selector()?;
    let labels: Vec<String> = match &selector {
        Selector::Params(p) => enumerate_diagonals(p)
            .iter()
            .map(ToString::to_string)
            .collect(),
        _ => selector.load()?.labels().to_vec(),
    };
    match common.format {
        Format::Text => labels.iter().for_each(|l| writeln!(out, "{l}").unwrap()),
        Format::Json => json_line(
            out,
            &json!({"model": selector.model_ref(), "objects": labels}),
        )?,
    }
    Ok(())
}

fn check(check: Check, out: &mut String) -> Outcome {
    let (report, format) = match check {
        Check::PairEquivalence(common) => {
            let (_, model) = load(&common)?;
            (check_pair_equivalence(&model)?, common.format)
        }
        Check::SubfactorBijection { common, dset } => {
            let (selector, _) = load(&common)?;
            let Selector::Params(params) = selector else {
                return Err(Error::Unsupported(
                    "subfactor checks need a type-A polygon model".into(),
                )
                .into());
            };
            let d = DiagonalSet::parse(&dset, &params)?;
            (check_subfactor_bijection(params, &d)?, common.format)
        }
        Check::MutationClosure { common, dset } => {
            let (_, model) = load(&common)?;
            let subsets = match dset {
                Some(text) => CoreSubsets::Fixed(model.parse_set(&text)?),
                None => CoreSubsets::All,
            };
            (check_mutation_closure(&model, subsets)?, common.format)
        }
        Check::MutationInverse { common, dset } => {
            let (_, model) = load(&common)?;
            let ctx = MutationContext::new(&model, model.parse_set(&dset)?)?;
            (check_mutation_inverse(&ctx)?, common.format)
        }
    };
    match format {
        Format::Text => write_report_text(&report, out),
        Format::Json => json_line(out, &report)?,
    }
    if report.passed {
        Ok(())
    } else {
        Err(Failure::CheckFailed(std::mem::take(out)))
    }
}

fn write_report_text(report: &CheckReport, out: &mut String) {
    let verdict = if report.passed { "passed" } else { "FAILED" };
    writeln!(
        out,
        "theorem {}: {verdict} ({} instances checked)",
        report.theorem, report.instances_checked
    )
    .unwrap();
    if let Some(c) = &report.counterexample {
        writeln!(out, "counterexample: {c}").unwrap();
    }
}
