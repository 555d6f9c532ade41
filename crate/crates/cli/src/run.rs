//! Job execution.

use isoelastic_core::constitutive::representation_solve;
use isoelastic_core::kinematics::{decompose, invariants, DeformationGradient, StretchState};
use isoelastic_core::verification::{
    decomposability_check_with, domain_check, hyperelasticity_check_with, inequality_suite_with,
    integrability_check_law, mean_stress_check, CheckConfig, CheckReport, Outcome as Verdict,
    DEFAULT_SEED,
};

use crate::job::{CheckKind, CheckSpec, Job};
use crate::output::{
    mat_row_major, sym_row_major, CheckRecord, Evaluation, Invariants, Outcome, Record,
};

/// Process exit status of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    /// Every check passed (or only hit a boundary case).
    Ok = 0,
    CheckFailed = 1,
    InputError = 2,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub records: Vec<Record>,
    pub checks: Vec<CheckRecord>,
    pub status: Status,
}

/// Which parts of a job to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Records for every input, then checks.
    Full,
    /// Checks only.
    ChecksOnly,
}

fn evaluate(job: &Job, f: &DeformationGradient) -> Result<Evaluation, String> {
    let s = decompose(f).map_err(|e| e.to_string())?;
    let inv = invariants(&s);
    let stress = job.law.evaluate(&s, job.theta).map_err(|e| e.to_string())?;
    let coefficients = representation_solve(&stress.sigma, &s.l).map_err(|e| e.to_string())?;
    let e = Evaluation {
        v: sym_row_major(&s.v),
        r: mat_row_major(s.r.matrix()),
        l: sym_row_major(&s.l),
        invariants: Invariants {
            i1: inv.i1,
            i2: inv.i2,
            i3: inv.i3,
            j: inv.j,
            k: inv.k,
            l: inv.l,
            y: inv.y,
            z: inv.z,
        },
        sigma: sym_row_major(&stress.sigma),
        tau: sym_row_major(&stress.kirchhoff),
        mean_stress: stress.mean_stress,
        deviatoric: sym_row_major(&stress.deviatoric),
        coefficients,
    };
    let finite = [e.sigma, e.tau, e.deviatoric]
        .iter()
        .flatten()
        .all(|x| x.is_finite())
        && e.mean_stress.is_finite()
        && e.coefficients.iter().all(|x| x.is_finite());
    if finite {
        Ok(e)
    } else {
        Err("stress is not finite".to_owned())
    }
}

fn default_trials(kind: CheckKind) -> usize {
    match kind {
        CheckKind::Hyperelasticity => 20,
        _ => 50,
    }
}

fn config(job: &Job, c: &CheckSpec, seed_override: Option<u64>) -> CheckConfig {
    let base = CheckConfig::default();
    CheckConfig {
        trials: c.trials.unwrap_or_else(|| default_trials(c.name)),
        seed: seed_override
            .or(c.seed)
            .or(job.seed)
            .unwrap_or(DEFAULT_SEED),
        fd_step: c.fd_step.unwrap_or(base.fd_step),
        segments: c.segments.unwrap_or(base.segments),
        tolerance: c.tolerance,
        theta: job.theta,
    }
}

fn run_check(
    job: &Job,
    states: &[StretchState],
    c: &CheckSpec,
    seed_override: Option<u64>,
) -> Vec<CheckReport> {
    let cfg = config(job, c, seed_override);
    let law = &job.law;
    match c.name {
        CheckKind::Hyperelasticity => vec![hyperelasticity_check_with(law, &cfg)],
        CheckKind::Integrability => vec![integrability_check_law(law, &cfg)],
        CheckKind::Inequalities => inequality_suite_with(law, &cfg),
        CheckKind::Domain => {
            let mut r = domain_check(states);
            if let Some(t) = c.tolerance {
                r = CheckReport::from_residual(r.name, r.residual, t).with_witness(r.witness);
            }
            vec![r]
        }
        CheckKind::Decomposability | CheckKind::MeanStress => {
            // Validation guarantees an energy.
            let m = law
                .energy_model()
                .expect("energy checks are validated on load");
            if c.name == CheckKind::Decomposability {
                vec![decomposability_check_with(m, &cfg)]
            } else {
                vec![mean_stress_check(m, &cfg)]
            }
        }
    }
}

/// Runs a validated job. `seed_override` replaces every seed in the job.
pub fn run(job: &Job, mode: Mode, seed_override: Option<u64>) -> RunOutput {
    let mut records = Vec::new();
    if mode == Mode::Full {
        for (index, f) in job.inputs.iter().enumerate() {
            let result = match evaluate(job, f) {
                Ok(e) => Outcome::Ok(Box::new(e)),
                Err(error) => Outcome::Err { error },
            };
            records.push(Record {
                index,
                f: mat_row_major(f.mat()),
                result,
            });
        }
    }

    let states: Vec<StretchState> = job
        .inputs
        .iter()
        .filter_map(|f| decompose(f).ok())
        .collect();
    let mut failed = false;
    let mut checks = Vec::new();
    for c in &job.checks {
        for report in run_check(job, &states, c, seed_override) {
            failed |= report.outcome == Verdict::Fail;
            checks.push(CheckRecord::from(&report));
        }
    }
    RunOutput {
        records,
        checks,
        status: if failed {
            Status::CheckFailed
        } else {
            Status::Ok
        },
    }
}
