use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use gradering::corpus::examples::{canonical_example_id, DEFAULT_MODULUS, DEFAULT_TRUNCATION};
use gradering::corpus::report::{
    CenterReport, ClassificationReport, DemoReport, StatementReport, ValidationReport,
};
use gradering::corpus::{
    build_paper_example, emit_report, emit_spec, parse_params, run_expectations, Family, Fixture,
    Report,
};
use gradering::lab::{
    check_annihilator_lemma, check_nonzero_associate, check_restriction_nonzero, search_problem, sweep,
    verify_single_map_criterion, verify_two_map_criterion, Criterion, Problem, Sign, StatementOutcome,
};
use gradering::maps::classify_map;
use gradering::{primeness_report, whole_ring, AdditiveMap, Budget, Error, IdealHandle};

mod render;

const PASS: u8 = 0;
const FAIL: u8 = 1;
const INPUT_ERROR: u8 = 2;
const BUDGET_EXCEEDED: u8 = 3;

#[derive(Parser)]
#[command(name = "gradering", version, about = "Graded rings given by structure constants")]
struct Cli {
    /// Print the machine-readable report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// A `.ring.json` document, or the id of a built-in example.
    file: String,
}

#[derive(Subcommand)]
enum Command {
    /// Check associativity and that the grading is multiplicative.
    Validate(Input),
    /// Place one declared map in the derivation hierarchy.
    Classify {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        map: String,
    },
    /// Decide gr-primeness.
    Grprime(Input),
    /// Decide primeness (and gr-primeness).
    Prime(Input),
    /// A basis of the center.
    Center(Input),
    /// Check one commutativity criterion, proposition or lemma on a document.
    Verify {
        #[command(flatten)]
        input: Input,
        /// single-map, two-map, nonzero-associate, restriction, annihilator-lemma
        #[arg(long)]
        theorem: Criterion,
        /// A map and its associated derivation as `F:d`; repeat for two maps.
        #[arg(long = "map")]
        maps: Vec<String>,
        #[arg(long)]
        ideal: Option<String>,
        #[arg(long, default_value = "minus")]
        sign: Sign,
    },
    /// Exhaustive criterion check over an instance family.
    Sweep {
        #[arg(long)]
        family: Family,
        /// Bounds such as `n=1..2;p=2,3`.
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long)]
        theorem: Criterion,
        /// Worker threads; the report does not depend on it.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Bounded evidence for an open problem.
    Search {
        /// pr1.i, pr1.ii, pr1.iii, pr2
        #[arg(long)]
        problem: Problem,
        /// Bounds such as `family=group-algebra;order=1..4;p=3,5`.
        #[arg(long, default_value = "")]
        bounds: String,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Build a built-in example and run its declared expectations.
    Demo {
        #[arg(long)]
        example: String,
        #[arg(long, default_value_t = DEFAULT_MODULUS)]
        modulus: u32,
        #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
        truncation: usize,
        /// Also write the example document here.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

struct Outcome {
    report: Report,
    pass: bool,
}

impl Outcome {
    fn new(report: Report, pass: bool) -> Outcome {
        Outcome { report, pass }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = Budget::from_env().and_then(|budget| run(cli.command, &budget));
    match outcome {
        Ok(out) => {
            if cli.json {
                print!("{}", emit_report(&out.report));
            } else {
                print!("{}", render::text(&out.report));
            }
            ExitCode::from(if out.pass { PASS } else { FAIL })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::BudgetExceeded { .. } => BUDGET_EXCEEDED,
                _ => INPUT_ERROR,
            })
        }
    }
}

/// Reads `file` from disk, falling back to a built-in example of that name
/// (with or without the `.ring.json` extension).
fn load(file: &str) -> gradering::Result<Fixture> {
    match std::fs::read_to_string(file) {
        Ok(text) => Fixture::parse(&text),
        Err(io) => {
            let id = file.strip_suffix(".ring.json").unwrap_or(file);
            if canonical_example_id(id).is_some() {
                let ex = build_paper_example(id, DEFAULT_MODULUS, DEFAULT_TRUNCATION)?;
                Fixture::from_document(ex.to_document())
            } else {
                Err(Error::Malformed {
                    path: file.to_string(),
                    reason: format!("not a readable file or a known example ({io})"),
                })
            }
        }
    }
}

fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> gradering::Result<T> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err(Error::Malformed {
            path: "--jobs".into(),
            reason: "needs at least one worker".into(),
        }),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Internal(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

fn run(command: Command, budget: &Budget) -> gradering::Result<Outcome> {
    match command {
        Command::Validate(Input { file }) => {
            let fx = load(&file)?;
            let report = ValidationReport {
                ring: fx.ring_verdict(),
                grading: fx.grading_verdict(),
            };
            let pass = report.ring.is_pass() && report.grading.is_pass();
            Ok(Outcome::new(Report::Validation(report), pass))
        }
        Command::Classify { input, map } => {
            let fx = load(&input.file)?;
            let grading = fx.certified()?;
            let c = classify_map(fx.map(&map)?, &fx.ring, &grading, budget)?;
            Ok(Outcome::new(
                Report::Classification(ClassificationReport::new(&map, &c)),
                true,
            ))
        }
        Command::Grprime(Input { file }) => {
            let fx = load(&file)?;
            let grading = fx.certified()?;
            let (gr_prime, gr_witness) = gradering::is_gr_prime(&fx.ring, &grading, budget)?;
            let report = gradering::PrimenessReport {
                gr_prime,
                prime: None,
                gr_witness,
                prime_witness: None,
            };
            Ok(Outcome::new(Report::Primeness(report), gr_prime))
        }
        Command::Prime(Input { file }) => {
            let fx = load(&file)?;
            let grading = fx.certified()?;
            let report = primeness_report(&fx.ring, &grading, budget)?;
            let pass = report.prime == Some(true);
            Ok(Outcome::new(Report::Primeness(report), pass))
        }
        Command::Center(Input { file }) => {
            let fx = load(&file)?;
            let basis: Vec<Vec<u32>> = fx.ring.center()?.into_iter().map(|z| z.into_coords()).collect();
            let report = CenterReport {
                dimension: basis.len(),
                basis,
            };
            Ok(Outcome::new(Report::Center(report), true))
        }
        Command::Verify {
            input,
            theorem,
            maps,
            ideal,
            sign,
        } => verify(&load(&input.file)?, theorem, &maps, ideal.as_deref(), sign, budget),
        Command::Sweep {
            family,
            params,
            theorem,
            jobs,
        } => {
            let params = parse_params(&params)?;
            let report = with_jobs(jobs, || sweep(family, &params, theorem, budget))??;
            let pass = report.is_clean();
            Ok(Outcome::new(Report::Sweep(report), pass))
        }
        Command::Search { problem, bounds, jobs } => {
            let bounds = parse_params(&bounds)?;
            let report = with_jobs(jobs, || search_problem(problem, &bounds, budget))??;
            let pass = report.survivors.is_empty();
            Ok(Outcome::new(Report::Evidence(report), pass))
        }
        Command::Demo {
            example,
            modulus,
            truncation,
            emit,
        } => {
            let ex = build_paper_example(&example, modulus, truncation)?;
            let document = ex.to_document();
            if let Some(path) = emit {
                std::fs::write(&path, emit_spec(&document)).map_err(|e| Error::Malformed {
                    path: path.display().to_string(),
                    reason: e.to_string(),
                })?;
            }
            let checks = run_expectations(&Fixture::from_document(document)?, budget)?;
            let failed = checks.iter().filter(|c| !c.pass).count();
            let report = DemoReport {
                example: ex.id.to_string(),
                modulus,
                truncation,
                passed: checks.len() - failed,
                failed,
                checks,
            };
            Ok(Outcome::new(Report::Demo(report), failed == 0))
        }
    }
}

/// `F:d` names a map and its associated derivation; a bare `F` pairs it
/// with itself.
fn pair<'a>(fx: &'a Fixture, spec: &str) -> gradering::Result<(&'a AdditiveMap, &'a AdditiveMap)> {
    let (f, d) = spec.split_once(':').unwrap_or((spec, spec));
    Ok((fx.map(f)?, fx.map(d)?))
}

/// Explicit `--map` values, else the document's declared pairs that hold.
fn chosen_pairs<'a>(
    fx: &'a Fixture,
    maps: &[String],
    wanted: usize,
) -> gradering::Result<Vec<(&'a AdditiveMap, &'a AdditiveMap)>> {
    let mut out = maps.iter().map(|m| pair(fx, m)).collect::<gradering::Result<Vec<_>>>()?;
    if out.is_empty() {
        for p in fx.document.expectations.pairs.iter().filter(|p| p.holds) {
            out.push((fx.map(&p.map)?, fx.map(&p.derivation)?));
        }
        out.truncate(wanted);
        if let Some(&first) = out.first() {
            out.resize(wanted, first);
        }
    }
    if out.len() != wanted {
        return Err(Error::Malformed {
            path: "--map".into(),
            reason: format!("this criterion takes {wanted} map pair(s), got {}", out.len()),
        });
    }
    Ok(out)
}

/// `--ideal`, else the first declared ideal, else the whole ring.
fn chosen_ideal(fx: &Fixture, name: Option<&str>) -> gradering::Result<IdealHandle> {
    match name {
        Some(n) => fx.ideal(n).cloned(),
        None => match fx.ideals.values().next() {
            Some(i) => Ok(i.clone()),
            None => whole_ring(&fx.ring),
        },
    }
}

fn verify(
    fx: &Fixture,
    theorem: Criterion,
    maps: &[String],
    ideal: Option<&str>,
    sign: Sign,
    budget: &Budget,
) -> gradering::Result<Outcome> {
    let grading = fx.certified()?;
    let ring = &fx.ring;
    let statement = |outcome: StatementOutcome| {
        let pass = !outcome.is_violation();
        Outcome::new(
            Report::Statement(StatementReport {
                criterion: theorem,
                outcome,
            }),
            pass,
        )
    };
    match theorem {
        Criterion::SingleMap => {
            let p = chosen_pairs(fx, maps, 1)?;
            let ideal = chosen_ideal(fx, ideal)?;
            let v = verify_single_map_criterion(ring, &grading, &ideal, p[0].0, p[0].1, sign, budget)?;
            let pass = v.implication_holds;
            Ok(Outcome::new(Report::Theorem(v), pass))
        }
        Criterion::TwoMap => {
            let p = chosen_pairs(fx, maps, 2)?;
            let ideal = chosen_ideal(fx, ideal)?;
            let v = verify_two_map_criterion(ring, &grading, &ideal, p[0], p[1], sign, budget)?;
            let pass = v.implication_holds;
            Ok(Outcome::new(Report::Theorem(v), pass))
        }
        Criterion::NonzeroAssociate => {
            let p = chosen_pairs(fx, maps, 1)?;
            Ok(statement(check_nonzero_associate(ring, &grading, p[0].0, p[0].1, budget)?))
        }
        Criterion::Restriction => {
            let p = chosen_pairs(fx, maps, 1)?;
            let ideal = chosen_ideal(fx, ideal)?;
            Ok(statement(check_restriction_nonzero(ring, &grading, &ideal, p[0].1, budget)?))
        }
        Criterion::AnnihilatorLemma => {
            let report = check_annihilator_lemma(ring, &grading, budget)?;
            let pass = report.holds();
            Ok(Outcome::new(Report::Lemma(report), pass))
        }
    }
}
