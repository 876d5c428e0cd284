use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use mvalg::composed::{
    compose_definitional, compose_explicit, compose_explicit_with_stats, ibl_check,
    ComponentFamily, Enumeration,
};
use mvalg::graded::LinMap;
use mvalg::mvcat::{
    algebra_from_json, diamond, exp_map, log_map, map_from_json, map_to_json, map_witness,
    mv_morphism_check, tilde_morphism_check, ConvMap, Flavor, MVAlgebra, Overrides,
};
use mvalg::qme::{higher_derived_bracket, pushforward, qme_check, MasterCandidate};
use mvalg::report::Check;
use mvalg::scalars::{Mode, ScalarError};
use mvalg::Error;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "mvalg",
    version,
    about = "Checks and computations on MV-algebras given as JSON presentations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Truncation overrides, e.g. `D=4,H=3`; never below the input files' values.
    #[arg(long, global = true)]
    trunc: Option<String>,
    /// Ground-ring mode override: k, hbar, hbar-aux or laurent-aux.
    #[arg(long, global = true)]
    mode: Option<String>,
    /// Use the slow reference implementations and cross-check against the fast ones.
    #[arg(long, global = true)]
    oracle: bool,
    /// Write the JSON report here instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check every MV-algebra axiom.
    Validate { algebra: PathBuf },
    /// Check that a map is an MV-morphism (or, with --tilde, a chain map with φ(1) ≡ 1).
    CheckMorphism {
        source: PathBuf,
        target: PathBuf,
        map: PathBuf,
        #[arg(long)]
        tilde: bool,
    },
    /// Compose `outer ◇ inner` for inner: source → middle and outer: middle → target.
    Compose {
        source: PathBuf,
        middle: PathBuf,
        target: PathBuf,
        inner: PathBuf,
        outer: PathBuf,
    },
    /// Convolution exponential of a Lin⁰ map.
    Exp {
        source: PathBuf,
        target: PathBuf,
        map: PathBuf,
    },
    /// Convolution logarithm of a map with φ(1) ≡ 1.
    Log {
        source: PathBuf,
        target: PathBuf,
        map: PathBuf,
    },
    /// Check the quantum master equation for a candidate.
    QmeCheck {
        algebra: PathBuf,
        candidate: PathBuf,
    },
    /// Push a solution forward along an MV-morphism.
    Pushforward {
        source: PathBuf,
        target: PathBuf,
        map: PathBuf,
        candidate: PathBuf,
    },
    /// L∞ brackets of a symmetric algebra, or derived brackets of the given elements.
    Brackets {
        algebra: PathBuf,
        /// JSON array of elements to feed to the derived bracket.
        #[arg(long)]
        args: Option<PathBuf>,
    },
    /// Check the divisibility pattern of a component family.
    IblCheck {
        source: PathBuf,
        target: PathBuf,
        family: PathBuf,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::CheckMorphism { .. } => "check-morphism",
            Command::Compose { .. } => "compose",
            Command::Exp { .. } => "exp",
            Command::Log { .. } => "log",
            Command::QmeCheck { .. } => "qme-check",
            Command::Pushforward { .. } => "pushforward",
            Command::Brackets { .. } => "brackets",
            Command::IblCheck { .. } => "ibl-check",
        }
    }
}

/// Failures that stop a command: mathematical ones exit 1, input ones exit 2.
#[derive(Debug)]
enum Failure {
    Library(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl Failure {
    fn is_mathematical(&self) -> bool {
        matches!(
            self,
            Failure::Library(
                Error::AxiomViolation(_)
                    | Error::NotConilpotent { .. }
                    | Error::NotLin0
                    | Error::NotASolution
                    | Error::NotAMorphism
                    | Error::NotPrimitive
                    | Error::NotBialgebra(_)
                    | Error::NotCommutative(_)
                    | Error::NotDegreeZero
                    | Error::Scalar(ScalarError::NotInMaximalIdeal)
            )
        )
    }

    fn kind(&self) -> String {
        match self {
            Failure::Io(_) => "Io".into(),
            Failure::Library(Error::Scalar(e)) => variant_name(&format!("{e:?}")),
            Failure::Library(e) => variant_name(&format!("{e:?}")),
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Io(m) => m.clone(),
            Failure::Library(e) => e.to_string(),
        }
    }

    fn suggestion(&self) -> Option<String> {
        match self {
            Failure::Library(Error::TruncationOverflow { length, .. }) => {
                Some(format!("rerun with --trunc D={length}"))
            }
            Failure::Library(Error::Scalar(ScalarError::PoleOverflow { exponent, .. })) => {
                Some(format!("rerun with --trunc P={}", -exponent))
            }
            Failure::Library(Error::ConvergenceGuardExceeded { .. }) => {
                Some("inputs must lie in the maximal ideal; check the unit components".into())
            }
            _ => None,
        }
    }
}

fn variant_name(debug: &str) -> String {
    debug
        .split(|c: char| !c.is_alphanumeric())
        .next()
        .unwrap_or(debug)
        .to_string()
}

struct Outcome {
    checks: Vec<Check>,
    result: Option<Value>,
}

type Run = Result<Outcome, Failure>;

struct Loader {
    overrides: Overrides,
}

impl Loader {
    fn json(&self, path: &Path) -> Result<Value, Failure> {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| Failure::Library(Error::Schema(format!("{}: {e}", path.display()))))
    }

    fn algebra(&self, path: &Path) -> Result<Arc<MVAlgebra>, Failure> {
        Ok(Arc::new(algebra_from_json(
            &self.json(path)?,
            &self.overrides,
        )?))
    }

    fn map(
        &self,
        source: &Arc<MVAlgebra>,
        target: &Arc<MVAlgebra>,
        path: &Path,
    ) -> Result<ConvMap, Failure> {
        Ok(map_from_json(source, target, &self.json(path)?)?)
    }

    fn candidate(&self, a: &MVAlgebra, path: &Path) -> Result<MasterCandidate, Failure> {
        Ok(MasterCandidate::from_json(a, &self.json(path)?)?)
    }
}

fn lin0_check(f: &ConvMap) -> Check {
    if f.is_lin0() {
        Check::pass("lin0")
    } else {
        Check::fail(
            "lin0",
            json!({ "in": f.source().atom_json(0), "out": f.target().element_json(f.image(0)) }),
        )
    }
}

fn is_symmetric(a: &MVAlgebra) -> bool {
    matches!(a.flavor(), Flavor::Symmetric(_))
}

/// Families for symmetric algebras, plain image lists otherwise.
fn map_output(f: &ConvMap) -> Result<Value, Failure> {
    if is_symmetric(f.source()) && is_symmetric(f.target()) {
        Ok(ComponentFamily::components(f)?.to_json())
    } else {
        Ok(map_to_json(f))
    }
}

fn linmap_json(a: &MVAlgebra, map: &LinMap) -> Value {
    Value::Array(
        (0..a.dim())
            .filter(|&x| !map.image(x).is_zero())
            .map(|x| json!({ "in": a.atom_json(x), "out": a.element_json(map.image(x)) }))
            .collect(),
    )
}

fn stop(checks: Vec<Check>) -> Run {
    Ok(Outcome {
        checks,
        result: None,
    })
}

fn run(cli: &Cli, load: &Loader) -> Run {
    match &cli.command {
        Command::Validate { algebra } => {
            let a = load.algebra(algebra)?;
            stop(a.validate_mv().checks)
        }
        Command::CheckMorphism {
            source,
            target,
            map,
            tilde,
        } => {
            let (s, t) = (load.algebra(source)?, load.algebra(target)?);
            let f = load.map(&s, &t, map)?;
            if *tilde {
                return stop(vec![tilde_morphism_check(&f)?]);
            }
            let lin0 = lin0_check(&f);
            if !lin0.pass {
                return stop(vec![lin0]);
            }
            stop(vec![lin0, mv_morphism_check(&f)?])
        }
        Command::Compose {
            source,
            middle,
            target,
            inner,
            outer,
        } => {
            let (a, b, c) = (
                load.algebra(source)?,
                load.algebra(middle)?,
                load.algebra(target)?,
            );
            let (g, f) = (load.map(&a, &b, inner)?, load.map(&b, &c, outer)?);
            let checks = vec![lin0_check(&g), lin0_check(&f)];
            if checks.iter().any(|c| !c.pass) {
                return stop(checks);
            }
            if [&a, &b, &c].into_iter().all(|x| is_symmetric(x))
                && f.degree() == Some(0)
                && g.degree() == Some(0)
            {
                let (ff, gf) = (
                    ComponentFamily::components(&f)?,
                    ComponentFamily::components(&g)?,
                );
                if cli.oracle {
                    let reference = compose_definitional(&ff, &gf)?;
                    let (fast, _) = compose_explicit_with_stats(&ff, &gf, Enumeration::Naive)?;
                    let check = Check::from_witness(
                        "compose_matches_reference",
                        map_witness(&fast.assemble()?, &reference.assemble()?),
                    );
                    return Ok(Outcome {
                        checks: vec![check],
                        result: Some(reference.to_json()),
                    });
                }
                let composite = compose_explicit(&ff, &gf)?;
                return Ok(Outcome {
                    checks: vec![],
                    result: Some(composite.to_json()),
                });
            }
            Ok(Outcome {
                checks: vec![],
                result: Some(map_output(&diamond(&f, &g)?)?),
            })
        }
        Command::Exp {
            source,
            target,
            map,
        } => {
            let (s, t) = (load.algebra(source)?, load.algebra(target)?);
            let f = load.map(&s, &t, map)?;
            let lin0 = lin0_check(&f);
            if !lin0.pass {
                return stop(vec![lin0]);
            }
            Ok(Outcome {
                checks: vec![],
                result: Some(map_output(&exp_map(&f)?)?),
            })
        }
        Command::Log {
            source,
            target,
            map,
        } => {
            let (s, t) = (load.algebra(source)?, load.algebra(target)?);
            let phi = load.map(&s, &t, map)?;
            let mut shifted = phi.map().clone();
            let mut unit_part = phi.image(0).clone();
            unit_part.add_term(0, &mvalg::scalars::Scalar::one(s.ring()).neg());
            shifted.set_image(0, unit_part);
            let check = lin0_check(&ConvMap::new(s.clone(), t.clone(), shifted)?);
            if !check.pass {
                let witness = json!({ "in": s.atom_json(0), "out": t.element_json(phi.image(0)), "reason": "value at the unit is not 1 modulo the maximal ideal" });
                return stop(vec![Check::fail("unit_congruent_to_one", witness)]);
            }
            Ok(Outcome {
                checks: vec![],
                result: Some(map_output(&log_map(&phi)?)?),
            })
        }
        Command::QmeCheck { algebra, candidate } => {
            let a = load.algebra(algebra)?;
            let s = load.candidate(&a, candidate)?;
            stop(vec![qme_check(&a, &s)?])
        }
        Command::Pushforward {
            source,
            target,
            map,
            candidate,
        } => {
            let (s, t) = (load.algebra(source)?, load.algebra(target)?);
            let f = load.map(&s, &t, map)?;
            let sol = load.candidate(&s, candidate)?;
            let mut checks = vec![lin0_check(&f)];
            if checks[0].pass {
                checks.push(mv_morphism_check(&f)?);
                checks.push(qme_check(&s, &sol)?);
            }
            if checks.iter().any(|c| !c.pass) {
                return stop(checks);
            }
            let pushed = pushforward(&f, &sol)?;
            Ok(Outcome {
                checks,
                result: Some(pushed.to_json(&t)),
            })
        }
        Command::Brackets { algebra, args } => {
            let a = load.algebra(algebra)?;
            if let Some(path) = args {
                let v = load.json(path)?;
                let elements = v
                    .as_array()
                    .ok_or_else(|| {
                        Error::Schema("bracket arguments must be an array of elements".into())
                    })?
                    .iter()
                    .map(|e| a.element_from_json(e))
                    .collect::<mvalg::Result<Vec<_>>>()?;
                let value = higher_derived_bracket(&a, &elements)?;
                return Ok(Outcome {
                    checks: vec![],
                    result: Some(
                        json!({ "arity": elements.len(), "value": a.element_json(&value) }),
                    ),
                });
            }
            if !is_symmetric(&a) {
                return Err(Error::NotSymmetricFlavor.into());
            }
            let delta = a.delta_op();
            let square = delta.compose(delta)?;
            let nonzero = (0..a.dim()).find(|&x| !square.image(x).is_zero());
            let square_check = Check::from_witness(
                "Delta_square_zero",
                nonzero.map(|x| json!({ "in": a.atom_json(x), "Delta_Delta": a.element_json(square.image(x)) })),
            );
            let coder = mvalg::composed::coderivation_check(&a, delta)?;
            let checks = vec![square_check, coder];
            if checks.iter().any(|c| !c.pass) {
                return stop(checks);
            }
            let brackets = mvalg::composed::l_infty_brackets(&a)?;
            let result = Value::Array(
                brackets
                    .iter()
                    .map(|(n, l)| json!({ "arity": n, "map": linmap_json(&a, l) }))
                    .collect(),
            );
            Ok(Outcome {
                checks,
                result: Some(result),
            })
        }
        Command::IblCheck {
            source,
            target,
            family,
        } => {
            let (s, t) = (load.algebra(source)?, load.algebra(target)?);
            let v = load.json(family)?;
            let fam = if v.is_array() {
                ComponentFamily::from_json(s, t, &v)?
            } else {
                ComponentFamily::components(&map_from_json(&s, &t, &v)?)?
            };
            stop(vec![ibl_check(&fam)])
        }
    }
}

fn overrides(cli: &Cli) -> Result<Overrides, Failure> {
    let mut out = match &cli.trunc {
        Some(text) => Overrides::parse_trunc(text)?,
        None => Overrides::default(),
    };
    if let Some(name) = &cli.mode {
        let mode = Mode::parse(name).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "unknown mode `{name}`; use k, hbar, hbar-aux or laurent-aux"
            ))
        })?;
        out.mode = Some(mode);
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = cli.command.name();
    let outcome = overrides(&cli).and_then(|o| run(&cli, &Loader { overrides: o }));
    let (report, code, summary) = match outcome {
        Ok(Outcome { checks, result }) => {
            let pass = checks.iter().all(|c| c.pass);
            let mut report = json!({ "command": command, "pass": pass, "checks": checks.iter().map(Check::to_json).collect::<Vec<_>>() });
            if let Some(r) = result {
                report["result"] = r;
            }
            let summary = match checks.iter().find(|c| !c.pass) {
                Some(c) => format!("{command}: FAIL at `{}`", c.name),
                None => format!("{command}: ok ({} checks passed)", checks.len()),
            };
            (report, if pass { 0 } else { 1 }, summary)
        }
        Err(failure) => {
            let kind = failure.kind();
            let mut error = json!({ "kind": kind, "message": failure.message() });
            if let Some(s) = failure.suggestion() {
                error["suggestion"] = json!(s);
            }
            let mut report = json!({ "command": command, "pass": false, "error": error.clone() });
            if failure.is_mathematical() {
                report["checks"] = json!([{ "check": kind, "pass": false, "witness": error }]);
                (
                    report,
                    1,
                    format!("{command}: FAIL ({})", failure.message()),
                )
            } else {
                let hint = failure
                    .suggestion()
                    .map(|s| format!("; {s}"))
                    .unwrap_or_default();
                (
                    report,
                    2,
                    format!("{command}: input error: {}{hint}", failure.message()),
                )
            }
        }
    };
    let text = serde_json::to_string_pretty(&report).expect("reports serialize") + "\n";
    match &cli.output {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("{command}: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    eprintln!("{summary}");
    ExitCode::from(code)
}
