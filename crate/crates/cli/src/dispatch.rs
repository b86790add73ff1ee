//! Command execution. Exit codes: 0 when every check passed or the solve
//! reached a fixed point, 1 on a violation or non-convergence, 2 on usage,
//! parse or I/O errors.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use cstar_core::gallery::{self, list_entries, run_all, run_entry};
use cstar_core::{
    certify_ciric1, certify_ciric2, certify_common, certify_eq1, certify_kannan, check_metric_axioms,
    check_orbital_continuity, common_solve, composed_common_solve, picard_solve, GaugeForm, IterationTrace, MapChoice,
    SolveOptions, Tolerance, Verdict,
};

use crate::args::{CertifyArgs, Command, CommonArgs, Form, GalleryArgs, Output, RunArgs, Target, Tuning};
use crate::error::CliError;
use crate::report::{self, num, Row};
use crate::scenario::{parse_scenario, Built, DEFAULT_MAX_ITER};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Rendered report plus a one-line human summary.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub body: String,
    pub summary: String,
    pub passed: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> u8 {
        if self.passed {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }
}

/// A loaded scenario with the overrides applied.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub label: String,
    pub built: Built,
    pub max_iter: usize,
}

pub fn load(target: &Target, tuning: &Tuning) -> Result<Loaded, CliError> {
    let (label, mut built, mut max_iter) = match (&target.scenario, &target.gallery) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).map_err(|source| CliError::Read {
                path: path.clone(),
                source,
            })?;
            let file = parse_scenario(&text).map_err(|diagnostics| CliError::Scenario {
                path: path.clone(),
                diagnostics,
            })?;
            (file.name.clone(), file.build()?, file.run.max_iter)
        }
        (None, Some(id)) => {
            let e = gallery::entry(id)?;
            let built = Built {
                scenario: e.scenario,
                eq1_gauge: e.eq1_gauge,
                kannan_gauge: None,
                starts: e.starts,
            };
            (e.id.to_string(), built, DEFAULT_MAX_ITER)
        }
        (None, None) => return Err(CliError::Usage("give --scenario or --gallery".into())),
    };
    let scn = &mut built.scenario;
    if let Some(n) = tuning.max_power {
        if n == 0 {
            return Err(CliError::Usage("--max-power must be at least 1".into()));
        }
        scn.max_power = n;
    }
    if let Some(n) = tuning.max_iter {
        if n == 0 {
            return Err(CliError::Usage("--max-iter must be at least 1".into()));
        }
        max_iter = n;
    }
    if let Some(tol) = tuning.tol {
        scn.space.algebra.tol = Tolerance::uniform(tol)?;
    }
    if let Some(h) = tuning.sample_step {
        scn.space.domain = scn.space.domain.clone().with_step(h)?;
    }
    if let Some(starts) = &tuning.starts {
        built.starts = starts.clone();
    }
    let space = &built.scenario.space;
    if let Some(&x) = built.starts.iter().find(|&&x| !space.contains(x)) {
        return Err(CliError::Usage(format!("start {x} lies outside the domain")));
    }
    Ok(Loaded { label, built, max_iter })
}

fn first_start(l: &Loaded) -> Result<f64, CliError> {
    l.built
        .starts
        .first()
        .copied()
        .ok_or_else(|| CliError::Usage("no starting point in the domain".into()))
}

fn rows_outcome(label: &str, rows: Vec<Row>, output: &Output) -> Result<Outcome, CliError> {
    let passed = rows.iter().all(Row::passed);
    let parts: Vec<String> = rows
        .iter()
        .map(|r| match &r.outcome {
            Ok(c) => format!(
                "{}: {} (worst margin {})",
                r.check,
                if c.passed { "pass" } else { "fail" },
                num(c.worst_margin)
            ),
            Err(e) => format!("{}: error: {e}", r.check),
        })
        .collect();
    Ok(Outcome {
        body: report::certificates(&rows, output.format)?,
        summary: format!("{label}: {}", parts.join("; ")),
        passed,
    })
}

fn trace_outcome(label: &str, x0: f64, tr: &IterationTrace, output: &Output) -> Result<Outcome, CliError> {
    let at = match tr.limit {
        Some(u) => format!(", limit {}", num(u)),
        None => String::new(),
    };
    Ok(Outcome {
        body: report::trace(tr, output.format)?,
        summary: format!(
            "{label}: verdict {} from x0 = {}{at} after {} steps",
            tr.verdict.as_str(),
            num(x0),
            tr.steps()
        ),
        passed: tr.verdict == Verdict::ConvergedFixedPoint,
    })
}

fn certify(args: &CertifyArgs) -> Result<Outcome, CliError> {
    let l = load(&args.run.target, &args.run.tuning)?;
    let scn = &l.built.scenario;
    let pairs = scn.default_pairs();
    let form = args.form.unwrap_or(match scn.form {
        GaugeForm::Type1 => Form::Type1,
        GaugeForm::Type2 => Form::Type2,
    });
    let row = match form {
        Form::Eq1 => {
            let a = l
                .built
                .eq1_gauge
                .as_ref()
                .ok_or_else(|| CliError::Usage("no `gauges.a` given for --form eq1".into()))?;
            Row::new("eq1", certify_eq1(scn, a, &pairs))
        }
        Form::Type1 => {
            if scn.form == GaugeForm::Type2 {
                return Err(CliError::Usage(
                    "the gauges are declared type2; use --form type2".into(),
                ));
            }
            Row::new("ciric type1", certify_ciric1(scn, &pairs))
        }
        Form::Type2 => {
            let outcome = match scn.form {
                GaugeForm::Type1 => certify_ciric2(&scn.abelian_type2(), &pairs),
                GaugeForm::Type2 => certify_ciric2(scn, &pairs),
            };
            Row::new("ciric type2", outcome)
        }
        Form::Kannan => {
            let a = l
                .built
                .kannan_gauge
                .as_ref()
                .ok_or_else(|| CliError::Usage("no `gauges.kannan` given for --form kannan".into()))?;
            let outcome = certify_kannan(&scn.space, &scn.t, a, &pairs).map(|k| {
                let mut c = k.certificate;
                if let Some(b) = k.gauge_b {
                    c.note = Some(format!("B = {}", serde_json::to_string(&b).unwrap_or_default()));
                }
                c
            });
            Row::new("kannan", outcome)
        }
        Form::Common => {
            scn.s()?;
            let name = match scn.form {
                GaugeForm::Type1 => "common type1",
                GaugeForm::Type2 => "common type2",
            };
            Row::new(name, certify_common(scn, &pairs, scn.form))
        }
    };
    rows_outcome(&l.label, vec![row], &args.run.output)
}

fn solve(args: &RunArgs) -> Result<Outcome, CliError> {
    let l = load(&args.target, &args.tuning)?;
    let x0 = first_start(&l)?;
    let opts = SolveOptions::default().with_max_iter(l.max_iter);
    let tr = picard_solve(&l.built.scenario, x0, &opts)?;
    trace_outcome(&l.label, x0, &tr, &args.output)
}

fn common(args: &CommonArgs) -> Result<Outcome, CliError> {
    let l = load(&args.run.target, &args.run.tuning)?;
    let scn = &l.built.scenario;
    scn.s()?;
    let x0 = first_start(&l)?;
    let opts = SolveOptions::default().with_max_iter(l.max_iter);
    let tr = if args.composed {
        composed_common_solve(scn, x0, &opts)?
    } else {
        common_solve(scn, x0, &opts)?
    };
    trace_outcome(&l.label, x0, &tr, &args.run.output)
}

fn orbital(args: &RunArgs) -> Result<Outcome, CliError> {
    let l = load(&args.target, &args.tuning)?;
    let scn = &l.built.scenario;
    first_start(&l)?;
    let mut which = vec![MapChoice::T];
    if scn.s.is_some() {
        which.push(MapChoice::S);
    }
    let rows = which
        .into_iter()
        .map(|m| {
            Row::new(
                format!("orbital continuity of {m:?}"),
                check_orbital_continuity(scn, m, &l.built.starts, l.max_iter),
            )
        })
        .collect();
    rows_outcome(&l.label, rows, &args.output)
}

fn axioms(args: &RunArgs) -> Result<Outcome, CliError> {
    let l = load(&args.target, &args.tuning)?;
    let space = &l.built.scenario.space;
    let row = Row::new("metric axioms", check_metric_axioms(space, &space.domain.sample()));
    rows_outcome(&l.label, vec![row], &args.output)
}

fn gallery_cmd(args: &GalleryArgs) -> Result<Outcome, CliError> {
    let format = args.output.format;
    if args.list {
        let entries = list_entries();
        return Ok(Outcome {
            body: report::listing(&entries, format)?,
            summary: format!("{} entries", entries.len()),
            passed: true,
        });
    }
    let reports = match &args.id {
        Some(id) => vec![run_entry(id)?],
        None => run_all(),
    };
    let green = reports.iter().filter(|r| r.all_passed()).count();
    let red: Vec<String> = reports
        .iter()
        .flat_map(|r| {
            r.checks
                .iter()
                .filter(|c| !c.passed)
                .map(move |c| format!("{} / {}", r.id, c.name))
        })
        .collect();
    let mut summary = format!("{green}/{} entries green", reports.len());
    if !red.is_empty() {
        summary.push_str(&format!("; failing: {}", red.join(", ")));
    }
    Ok(Outcome {
        body: report::gallery(&reports, format)?,
        summary,
        passed: green == reports.len(),
    })
}

pub fn execute(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Certify(a) => certify(a),
        Command::Solve(a) => solve(a),
        Command::CommonSolve(a) => common(a),
        Command::Orbital(a) => orbital(a),
        Command::Gallery(a) => gallery_cmd(a),
        Command::Axioms(a) => axioms(a),
    }
}

fn output_of(command: &Command) -> &Output {
    match command {
        Command::Certify(a) => &a.run.output,
        Command::Solve(a) | Command::Orbital(a) | Command::Axioms(a) => &a.output,
        Command::CommonSolve(a) => &a.run.output,
        Command::Gallery(a) => &a.output,
    }
}

fn emit(body: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, body).map_err(|source| CliError::Write {
            path: path.to_path_buf(),
            source,
        }),
        None => io::stdout()
            .lock()
            .write_all(body.as_bytes())
            .map_err(|source| CliError::Write {
                path: "<stdout>".into(),
                source,
            }),
    }
}

/// Runs a command, writes its report and returns the exit code.
pub fn run(command: &Command) -> u8 {
    let result = execute(command).and_then(|o| {
        emit(&o.body, output_of(command).out.as_deref())?;
        Ok(o)
    });
    match result {
        Ok(o) => {
            eprintln!("{}", o.summary);
            o.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
