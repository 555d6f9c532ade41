//! Acceptance criteria, one line per criterion.
//!
//! Runs without the libtest harness so the verdict lines are always printed.

use std::process::ExitCode;
use std::time::Instant;

use isoelastic_core::constitutive::{
    builtins, rebase_energy, representation_solve, shield_transform, stress_from_energy,
    stress_from_energy_jkl, stress_from_energy_jyz, stress_hencky, EnergyModel, StressLaw,
};
use isoelastic_core::kinematics::{
    decompose, invariants, rebase, DeformationGradient, StretchState,
};
use isoelastic_core::tensor3::{exp_sym, log_spd, Mat3, SymTensor};
use isoelastic_core::verification::{
    decomposability_check, hyperelasticity_check_with, integrability_check_law, principal_stresses,
    sampling, tension_extension_slopes, work_integral, CheckConfig, StrainPath,
};
use rand::Rng;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Verdict {
    Verdict { pass, detail }
}

/// Max componentwise difference relative to the Frobenius norm of `want`.
fn rel(got: &SymTensor, want: &SymTensor) -> f64 {
    (*got - *want).max_abs() / want.frobenius_norm().max(1e-14)
}

fn rng(stream: u64) -> rand_chacha::ChaCha8Rng {
    sampling::trial_rng(20_240_601, stream)
}

fn random_state<R: Rng>(rng: &mut R) -> StretchState {
    StretchState::from_stretch(&sampling::spd(rng, 0.3, 3.0)).unwrap()
}

fn hooke_dichotomy() -> Verdict {
    let t0 = Instant::now();
    let cfg = CheckConfig::default();
    let good = StressLaw::hooke(2.0, 1.0).unwrap();
    let bad = StressLaw::hooke(1.0, 1.0).unwrap();
    let (gi, gh) = (
        integrability_check_law(&good, &cfg),
        hyperelasticity_check_with(&good, &cfg),
    );
    let (bi, bh) = (
        integrability_check_law(&bad, &cfg),
        hyperelasticity_check_with(&bad, &cfg),
    );
    let secs = t0.elapsed().as_secs_f64();
    let pass = gi.passed()
        && gi.residual < 1e-5
        && gh.passed()
        && gh.residual < 1e-4
        && !bi.passed()
        && bi.residual > 1e-2
        && !bh.passed()
        && bh.residual > 1e-2
        && secs < 5.0;
    verdict(
        pass,
        format!(
            "λ=2μ: integrability {:.2e}, loop {:.2e}; λ=μ: integrability {:.2e}, loop {:.2e}; {secs:.2}s",
            gi.residual, gh.residual, bi.residual, bh.residual
        ),
    )
}

fn hencky_pairing() -> Verdict {
    let (lambda, mu) = (1.7, 0.9);
    let jkl = builtins::hencky_quadratic(lambda, mu);
    let jyz = builtins::hencky_quadratic_jyz(lambda, mu);
    let mut r = rng(2);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let s = random_state(&mut r);
        let law = stress_hencky(lambda, mu, &s).sigma;
        let a = stress_from_energy_jkl(&jkl, &s, 0.0).unwrap().sigma;
        let b = stress_from_energy_jyz(&jyz, &s, 0.0).unwrap().sigma;
        worst = worst.max(rel(&a, &law)).max(rel(&b, &law));
    }
    verdict(
        worst < 1e-10,
        format!("max relative difference {worst:.2e} over 100 states"),
    )
}

fn work_energy() -> Verdict {
    let mut r = rng(3);
    let mut open: f64 = 0.0;
    let mut closed: f64 = 0.0;
    for m in [
        builtins::hencky_quadratic(1.2, 0.8),
        builtins::richter_intro(0.8),
    ] {
        let law = StressLaw::FromEnergy(m.clone());
        for _ in 0..20 {
            let a = sampling::symmetric_in_ball(&mut r, 0.8);
            let b = sampling::symmetric_in_ball(&mut r, 0.8);
            let w = work_integral(&law, &StrainPath::new(a, b, 400).unwrap(), 0.0).unwrap();
            let dw = m.energy_at_state(&StretchState::from_log(&b), 0.0).unwrap()
                - m.energy_at_state(&StretchState::from_log(&a), 0.0).unwrap();
            open = open.max((w - dw).abs());
        }
        let cfg = CheckConfig {
            tolerance: Some(1e-7),
            ..CheckConfig::default()
        };
        closed = closed.max(hyperelasticity_check_with(&law, &cfg).residual);
    }
    verdict(
        open < 1e-7 && closed < 1e-7,
        format!("open-path error {open:.2e}, normalized loop work {closed:.2e}"),
    )
}

fn decomposability() -> Verdict {
    let decomposable = [
        builtins::hencky_quadratic(1.0, 0.5),
        builtins::hencky_quadratic_jyz(1.0, 0.5),
        builtins::pressure_only(2.0),
    ];
    let mut worst: f64 = 0.0;
    let mut all = true;
    for m in &decomposable {
        let r = decomposability_check(m, 50);
        all &= r.passed();
        worst = worst.max(r.residual);
    }
    let coupled = decomposability_check(&builtins::coupled_witness(1.0), 50);
    let pass = all && worst < 1e-6 && !coupled.passed() && (coupled.residual - 1.0).abs() < 0.1;
    verdict(
        pass,
        format!(
            "decomposable max residual {worst:.2e}; W = j·y residual {:.6}",
            coupled.residual
        ),
    )
}

fn invariant_algebra() -> Verdict {
    let mut r = rng(5);
    let mut identity_err: f64 = 0.0;
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for _ in 0..100_000 {
        let l = sampling::symmetric_in_ball(&mut r, 1.5);
        let s = StretchState::from_log(&l);
        let inv = invariants(&s);
        // Oracle: traces of explicit matrix powers.
        let m = l.to_mat();
        let m2 = m * m;
        let (j, k, ll) = (m.trace(), m2.trace(), (m2 * m).trace());
        let d = l.deviator().to_mat();
        let (y, z) = ((d * d).trace(), (d * d * d).trace());
        identity_err = identity_err
            .max((y - (k - j * j / 3.0)).abs())
            .max((z - (ll - j * k + 2.0 / 9.0 * j * j * j)).abs())
            .max((inv.y - y).abs())
            .max((inv.z - z).abs());
        if let Some(q) = inv.shape_ratio() {
            lo = lo.min(q);
            hi = hi.max(q);
        }
    }
    let mut family: f64 = 0.0;
    for a in [1e-3, 0.1, 0.5, 1.0, 2.0, -0.7] {
        let s = StretchState::from_log(&SymTensor::diag([2.0 * a, -a, -a]));
        family = family.max((invariants(&s).shape_ratio().unwrap() - 1.0 / 6.0).abs());
    }
    let pass = identity_err < 1e-12 && lo >= 0.0 && hi <= 1.0 / 6.0 + 1e-10 && family < 1e-12;
    verdict(
        pass,
        format!("identity error {identity_err:.2e}; ratio in [{lo:.3e}, {hi:.12}]; (2a,−a,−a) error {family:.2e}"),
    )
}

fn intro_example() -> Verdict {
    let mu = 0.75;
    let law = StressLaw::FromEnergy(builtins::richter_intro(mu));
    let mut trace_err: f64 = 0.0;
    for alpha in [0.5, 1.0, 2.0] {
        let s = StretchState::from_stretch(&SymTensor::scaled_identity(alpha)).unwrap();
        let tr = law.evaluate(&s, 0.0).unwrap().sigma.trace();
        trace_err = trace_err.max((tr - 24.0 * mu * (alpha - 1.0)).abs());
    }
    let mut r = rng(6);
    let (mut be_err, mut te_err): (f64, f64) = (0.0, 0.0);
    for _ in 0..50 {
        let lam = sampling::distinct_in(&mut r, 0.3, 3.0, 0.02);
        let s = principal_stresses(&law, lam, 0.0).unwrap();
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let want = 2.0 * mu * (lam[i] - lam[j]).powi(2);
            let got = (s[i] - s[j]) * (lam[i] - lam[j]);
            be_err = be_err.max((got - want).abs() / want);
        }
        for t in tension_extension_slopes(&law, lam, 0.0, 1e-6).unwrap() {
            te_err = te_err.max((t - 4.0 * mu).abs() / (4.0 * mu));
        }
    }
    verdict(
        trace_err < 1e-10 && be_err < 1e-5 && te_err < 1e-5,
        format!("tr σ error {trace_err:.2e}; BE relative {be_err:.2e}; TE relative {te_err:.2e}"),
    )
}

fn assemble(f: [f64; 3], l: &SymTensor) -> SymTensor {
    SymTensor::scaled_identity(f[0]) + *l * f[1] + l.square() * f[2]
}

fn representation() -> Verdict {
    let mut r = rng(7);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let f: [f64; 3] = std::array::from_fn(|_| r.gen_range(-2.0..2.0));
        let ev = sampling::distinct_in(&mut r, -1.0, 1.0, 0.1);
        let l = SymTensor::from_spectrum(ev, sampling::rotation(&mut r).matrix());
        let got = representation_solve(&assemble(f, &l), &l).unwrap();
        for i in 0..3 {
            worst = worst.max((got[i] - f[i]).abs());
        }
    }
    let mut exact = true;
    let mut rotated: f64 = 0.0;
    for ev in [[0.4, 0.4, -0.2], [0.3, -0.5, -0.5], [0.25, 0.25, 0.25]] {
        let f = [1.5, -0.5, 2.0];
        let l = SymTensor::diag(ev);
        let sigma = assemble(f, &l);
        let red = representation_solve(&sigma, &l).unwrap();
        exact &= assemble(red, &l) == sigma && red[2] == 0.0;
        let q = sampling::rotation(&mut r);
        let lq = l.rotate(q.matrix());
        let sq = assemble(f, &lq);
        rotated = rotated.max(rel(
            &assemble(representation_solve(&sq, &lq).unwrap(), &lq),
            &sq,
        ));
    }
    verdict(
        worst < 1e-8 && exact && rotated < 1e-12,
        format!(
            "coefficient error {worst:.2e}; degenerate diagonal exact: {exact}; rotated degenerate {rotated:.2e}"
        ),
    )
}

fn energy_models() -> Vec<EnergyModel> {
    vec![
        builtins::hencky_quadratic(1.2, 0.8),
        builtins::hencky_quadratic_jyz(1.2, 0.8),
        builtins::richter_intro(0.8),
        builtins::shield_dual(0.8),
        builtins::pressure_only(2.0),
        builtins::coupled_witness(1.0),
    ]
}

fn reference_shift() -> Verdict {
    let mut r = rng(8);
    let states: Vec<StretchState> = (0..50).map(|_| random_state(&mut r)).collect();
    let mut worst: f64 = 0.0;
    let mut verdicts_kept = true;
    for m in energy_models() {
        let base = decomposability_check(&m, 20).passed();
        for j1 in [-0.3, 0.3] {
            let shifted = rebase_energy(&m, j1);
            for s in &states {
                let a = stress_from_energy(&m, s, 0.0).unwrap().sigma;
                let b = stress_from_energy(&shifted, &rebase(s, j1), 0.0)
                    .unwrap()
                    .sigma;
                worst = worst.max(rel(&b, &a));
            }
            verdicts_kept &= decomposability_check(&shifted, 20).passed() == base;
        }
    }
    verdict(
        worst < 1e-9 && verdicts_kept,
        format!("max relative stress difference {worst:.2e}; decomposability verdicts unchanged: {verdicts_kept}"),
    )
}

fn shield() -> Verdict {
    let mu = 0.6;
    let dual = shield_transform(&builtins::shield_dual(mu));
    let intro = builtins::richter_intro(mu);
    let mut r = rng(9);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let s = random_state(&mut r);
        let a = dual.energy_at_state(&s, 0.0).unwrap();
        let b = intro.energy_at_state(&s, 0.0).unwrap();
        worst = worst.max((a - b).abs() / b.abs().max(1.0));
    }
    verdict(
        worst < 1e-10,
        format!("max energy difference {worst:.2e} over 100 states"),
    )
}

fn kinematic_kernel() -> Verdict {
    let mut r = rng(10);
    let (mut polar, mut round, mut jerr): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for _ in 0..10_000 {
        // Singular values log-uniform in [1, 100] after scaling: condition ≤ 100.
        let sv: [f64; 3] = std::array::from_fn(|_| 10f64.powf(r.gen_range(0.0..2.0)));
        let scale = r.gen_range(0.05..1.0);
        let u = *sampling::rotation(&mut r).matrix();
        let w = *sampling::rotation(&mut r).matrix();
        let f = u * Mat3::from_diagonal(sv.map(|x| x * scale)) * w.transpose();
        let s = decompose(&DeformationGradient::new(f).unwrap()).unwrap();
        let back = s.v.to_mat() * *s.r.matrix();
        polar = polar.max((back - f).frobenius_norm() / f.frobenius_norm());
        let v = exp_sym(&log_spd(&s.v).unwrap());
        round = round.max((v - s.v).frobenius_norm() / s.v.frobenius_norm());
        jerr = jerr.max((s.l.trace() - f.det().ln()).abs());
    }
    verdict(
        polar < 1e-10 && round < 1e-10 && jerr < 1e-10,
        format!("polar {polar:.2e}; log/exp {round:.2e}; j {jerr:.2e}"),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 10] = [
        ("Hooke integrability dichotomy", hooke_dichotomy),
        ("Hencky law / energy pairing", hencky_pairing),
        ("work-energy identity", work_energy),
        ("decomposability", decomposability),
        ("deviatoric invariant algebra", invariant_algebra),
        ("worked energy example", intro_example),
        ("representation round-trip", representation),
        ("reference-shift invariance", reference_shift),
        ("Shield transform", shield),
        ("kinematic kernel", kinematic_kernel),
    ];
    let t0 = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let v = run();
        let tag = if v.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {tag}: {name}: {}", i + 1, v.detail);
        failed += usize::from(!v.pass);
    }
    println!(
        "acceptance: {}/10 passed in {:.1}s",
        10 - failed,
        t0.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
