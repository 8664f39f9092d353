//! Acceptance checks, one PASS/FAIL line each.
//!
//! A criterion listed in `EXPECTED_RED` is known to be unattainable as
//! stated; it still runs unchanged and prints FAIL. The process fails on any
//! other FAIL, and also if an expected-red criterion starts passing.

use std::f64::consts::PI;
use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use h2vqd::curve::model_for;
use h2vqd::table::default_table;
use h2vqd_core::measurement::derive_seed;
use h2vqd_core::oracle::{spectral_spread, subspace_levels};
use h2vqd_core::optimizer::minimize_multistart;
use h2vqd_core::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const EXPECTED_RED: &[(u8, &str)] = &[(
    5,
    "beta = 3.0 Ha does not exceed the R = 0.30 spectral spread (3.2505 Ha), \
     so the deflated minimum there is E0 + 3.0 rather than E1",
)];

const FORMULATIONS: [Formulation; 2] = [Formulation::TwoQubit, Formulation::OneQubit];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn rows() -> Vec<CoefficientRow> {
    default_table().table.rows().to_vec()
}

fn random_state(rng: &mut StdRng, n: usize) -> StateVector {
    loop {
        let amps: Vec<C64> = (0..1 << n)
            .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        if amps.iter().map(|a| a.norm_sqr()).sum::<f64>() > 1e-3 {
            return StateVector::normalized(amps).unwrap();
        }
    }
}

fn pauli_action_on_block_a() -> Outcome {
    let one = C64::new(1.0, 0.0);
    // (string, input, output index, sign)
    let table = [
        ("II", "01", 1, 1.0),
        ("II", "10", 2, 1.0),
        ("ZI", "01", 1, 1.0),
        ("ZI", "10", 2, -1.0),
        ("IZ", "01", 1, -1.0),
        ("IZ", "10", 2, 1.0),
        ("ZZ", "01", 1, -1.0),
        ("ZZ", "10", 2, -1.0),
        ("XX", "01", 2, 1.0),
        ("XX", "10", 1, 1.0),
    ];
    let mut matched = 0;
    for (label, input, out, sign) in table {
        let p: PauliString = label.parse().unwrap();
        let got = matrix_of(&p).mul_vec(basis_state(input).unwrap().amplitudes());
        let want: Vec<C64> = (0..4).map(|i| if i == out { one * sign } else { C64::new(0.0, 0.0) }).collect();
        matched += usize::from(got == want);
    }
    outcome(matched == 10, format!("{matched}/10 signed entries exact"))
}

fn ansatz_identities() -> Outcome {
    let mut rng = StdRng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let t: f64 = rng.gen_range(-2.0 * PI..2.0 * PI);
        let (c, s) = (t.cos(), t.sin());
        let cases = [
            (AnsatzFamily::TwoQubitXyOn01, [0.0, c, s, 0.0]),
            (AnsatzFamily::TwoQubitXyOn00, [c, 0.0, 0.0, -s]),
        ];
        for (family, want) in cases {
            let state = prepare(&AnsatzSpec::new(family, t));
            for (a, w) in state.amplitudes().iter().zip(want) {
                worst = worst.max((a - C64::new(w, 0.0)).norm());
            }
        }
    }
    outcome(worst < 1e-12, format!("1000 angles, max amplitude error {worst:.1e}"))
}

fn block_reduction_equivalence() -> Outcome {
    let mut worst = 0.0f64;
    for row in rows() {
        let mut union = exact_spectrum(&matrix_of_sum(&hamiltonian_1q_a(&row))).unwrap();
        union.extend(exact_spectrum(&matrix_of_sum(&hamiltonian_1q_b(&row))).unwrap());
        union.sort_by(f64::total_cmp);
        let full = exact_spectrum(&matrix_of_sum(&hamiltonian_2q(&row))).unwrap();
        for (u, f) in union.iter().zip(&full) {
            worst = worst.max((u - f).abs());
        }
    }
    outcome(worst <= 1e-10, format!("16 rows, max eigenvalue deviation {worst:.1e}"))
}

struct GroundSweep {
    /// (energy, subspace ground) for every row × formulation × block.
    results: Vec<(f64, f64)>,
    seconds: f64,
}

fn ground_sweep() -> GroundSweep {
    let cfg = SolverConfig::default();
    let start = Instant::now();
    let mut results = Vec::new();
    for row in rows() {
        for formulation in FORMULATIONS {
            for block in Block::BOTH {
                let h = formulation.hamiltonian(&row, block);
                let family = formulation.family(block);
                let s = solve_ground(&h, family, &cfg).unwrap();
                results.push((s.energy, subspace_levels(&h, family).unwrap()[0]));
            }
        }
    }
    GroundSweep {
        results,
        seconds: start.elapsed().as_secs_f64(),
    }
}

fn vqe_accuracy(sweep: &GroundSweep) -> Outcome {
    let ok = sweep.results.iter().filter(|(e, g)| (e - g).abs() < 1e-6).count();
    let worst = sweep.results.iter().map(|(e, g)| (e - g).abs()).fold(0.0, f64::max);
    outcome(
        ok == sweep.results.len() && sweep.seconds < 10.0,
        format!(
            "{ok}/{} within 1e-6 Ha (max {worst:.1e}), sweep {:.3} s",
            sweep.results.len(),
            sweep.seconds
        ),
    )
}

fn vqd_accuracy() -> Outcome {
    let cfg = SolverConfig::default();
    let mut total = 0;
    let mut ok = 0;
    let mut notes = Vec::new();
    for row in rows() {
        for formulation in FORMULATIONS {
            for block in Block::BOTH {
                total += 1;
                let h = formulation.hamiltonian(&row, block);
                let family = formulation.family(block);
                let spread = spectral_spread(&h).unwrap();
                let target = subspace_levels(&h, family).unwrap()[1];
                let ground = solve_ground(&h, family, &cfg).unwrap();
                let at = |beta: f64| solve_excited(&h, family, &ground, beta, &cfg).map(|s| s.energy);
                match (at(1.5 * spread), at(3.0), at(10.0)) {
                    (Ok(lo), Ok(e3), Ok(hi)) => {
                        let accurate = (e3 - target).abs() < 1e-6;
                        let stable = (lo - e3).abs() < 1e-6 && (hi - e3).abs() < 1e-6;
                        if accurate && stable {
                            ok += 1;
                        } else {
                            notes.push(format!("R={:.2} {formulation} {block}: E1 {e3:.6} vs {target:.6}", row.r));
                        }
                    }
                    (_, Err(e), _) => {
                        let spread = match e {
                            Error::BetaTooSmall { spread, .. } => format!("{spread:.4}"),
                            other => other.to_string(),
                        };
                        // What the deflated objective reaches without the guard.
                        let deflation = vec![DeflationTerm::new(3.0, ground.state.clone()).unwrap()];
                        let obj = vqe_objective(&h, family, deflation).unwrap();
                        let best = minimize_multistart(|t| obj.evaluate(t), &cfg.optimizer, &cfg.starts).unwrap();
                        notes.push(format!(
                            "R={:.2} {formulation} {block}: beta=3.0 rejected, spread {spread}; \
                             unguarded minimum {:.6} at energy {:.6}, E1 = {target:.6}",
                            row.r,
                            best.best_value,
                            obj.energy(best.best_point)
                        ));
                    }
                    (lo, _, hi) => notes.push(format!(
                        "R={:.2} {formulation} {block}: beta sweep error {:?} {:?}",
                        row.r,
                        lo.err(),
                        hi.err()
                    )),
                }
            }
        }
    }
    let mut detail = format!("{ok}/{total} match E1 within 1e-6 at beta=3.0 and agree across beta");
    for n in notes {
        detail.push_str("\n       ");
        detail.push_str(&n);
    }
    outcome(ok == total, detail)
}

fn variational_bound(sweep: &GroundSweep) -> Outcome {
    let below = sweep.results.iter().filter(|(e, g)| *e < g - 1e-9).count();
    let margin = sweep.results.iter().map(|(e, g)| e - g).fold(f64::INFINITY, f64::min);
    outcome(
        below == 0,
        format!("{below}/{} below oracle ground, min E - E0 = {margin:.1e}", sweep.results.len()),
    )
}

fn measurement_soundness() -> Outcome {
    let mut worst_recipe = 0.0f64;
    for label in ["ZI", "IZ", "ZZ", "XX", "Z", "X"] {
        worst_recipe = worst_recipe.max(recipe_for(&label.parse().unwrap()).unwrap().soundness_residual());
    }
    let table = rows();
    let mut rng = StdRng::seed_from_u64(7);
    let mut worst_energy = 0.0f64;
    for i in 0..1000 {
        let row = &table[i % table.len()];
        let (model, h, n) = match i % 3 {
            0 => (HamiltonianModel::TwoQubit, hamiltonian_2q(row), 2),
            1 => (HamiltonianModel::OneQubitA, hamiltonian_1q_a(row), 1),
            _ => (HamiltonianModel::OneQubitB, hamiltonian_1q_b(row), 1),
        };
        let state = random_state(&mut rng, n);
        let measured = energy_from_measurements(row, &state, model, Readout::Exact).unwrap().energy;
        worst_energy = worst_energy.max((measured - expectation(&h, &state).unwrap()).abs());
    }
    outcome(
        worst_recipe <= 1e-12 && worst_energy <= 1e-12,
        format!("recipe residual {worst_recipe:.1e}, 1000 states max energy deviation {worst_energy:.1e}"),
    )
}

fn shot_statistics() -> Outcome {
    let row = *default_table().table.row_at(0.70).unwrap();
    let h = hamiltonian_2q(&row);
    let state = solve_ground(&h, AnsatzFamily::TwoQubitXyOn01, &SolverConfig::default())
        .unwrap()
        .state;
    let exact = expectation(&h, &state).unwrap();
    let model = model_for(Formulation::TwoQubit, Block::A);
    let estimate = |shots: usize, seed: u64| {
        energy_from_measurements(&row, &state, model, Readout::Shots { shots, seed }).unwrap()
    };

    let covered = (0..200u64)
        .filter(|&s| {
            let e = estimate(4096, derive_seed(2024, s));
            (e.energy - exact).abs() <= 2.0 * e.error
        })
        .count();
    let scaled: Vec<f64> = [100usize, 1_000, 10_000, 100_000]
        .into_iter()
        .map(|n| {
            let mse = (0..200u64)
                .map(|s| (estimate(n, derive_seed(n as u64, s)).energy - exact).powi(2))
                .sum::<f64>()
                / 200.0;
            mse.sqrt() * (n as f64).sqrt()
        })
        .collect();
    let ratio = scaled.iter().cloned().fold(0.0, f64::max) / scaled.iter().cloned().fold(f64::INFINITY, f64::min);
    outcome(
        covered >= 180 && ratio <= 2.0,
        format!(
            "2-sigma coverage {covered}/200, RMS*sqrt(shots) = [{}], spread ratio {ratio:.2}",
            scaled.iter().map(|x| format!("{x:.4}")).collect::<Vec<_>>().join(", ")
        ),
    )
}

fn optimizer_oracle() -> Outcome {
    let mut rng = StdRng::seed_from_u64(9);
    let cfg = NelderMeadConfig::default();
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let (ci, cz, cx): (f64, f64, f64) =
            (rng.gen_range(-2.0..2.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let r = minimize(|t| ci + cz * (2.0 * t).cos() + cx * (2.0 * t).sin(), &cfg).unwrap();
        worst = worst.max((r.best_value - (ci - cz.hypot(cx))).abs());
    }
    outcome(worst <= 1e-8, format!("100 landscapes, max deviation {worst:.1e}"))
}

fn h2vqd(dir: &Path, args: &[&str]) -> Option<i32> {
    Command::new(env!("CARGO_BIN_EXE_h2vqd"))
        .args(args)
        .current_dir(dir)
        .env("SOURCE_DATE_EPOCH", "1700000000")
        .output()
        .unwrap()
        .status
        .code()
}

fn reproducibility() -> Outcome {
    let runs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    let mut identical = true;
    for args in [
        vec!["curve", "--out", "c.csv"],
        vec!["curve", "--mode", "shots", "--shots", "4096", "--seed", "17", "--out", "c.csv"],
        vec!["curve", "--formulation", "one-qubit", "--mode", "shots", "--seed", "3", "--out", "c.csv"],
    ] {
        let outputs: Vec<_> = runs
            .iter()
            .map(|d| {
                h2vqd(d.path(), &args);
                (fs::read(d.path().join("c.csv")).unwrap(), fs::read(d.path().join("c.manifest.json")).unwrap())
            })
            .collect();
        identical &= outputs[0] == outputs[1];
    }

    let dir = tempfile::tempdir().unwrap();
    let exit = h2vqd(dir.path(), &["curve", "--out", "default.csv"]);
    let csv = fs::read_to_string(dir.path().join("default.csv")).unwrap();
    let errors: Vec<f64> = csv
        .lines()
        .skip(2)
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    let worst = errors.iter().cloned().fold(0.0, f64::max);
    outcome(
        identical && exit == Some(0) && errors.len() == 64 && worst < 1e-6,
        format!(
            "re-runs byte-identical: {identical}; default sweep exit {exit:?}, {} rows, max abs_error {worst:.1e}",
            errors.len()
        ),
    )
}

fn main() {
    let sweep = ground_sweep();
    let checks: Vec<(u8, &str, Outcome)> = vec![
        (1, "Pauli action table on |01>, |10>", pauli_action_on_block_a()),
        (2, "ansatz identities", ansatz_identities()),
        (3, "block/reduction spectrum equivalence", block_reduction_equivalence()),
        (4, "VQE accuracy and runtime", vqe_accuracy(&sweep)),
        (5, "VQD accuracy and beta stability", vqd_accuracy()),
        (6, "variational bound", variational_bound(&sweep)),
        (7, "measurement-mapping soundness", measurement_soundness()),
        (8, "shot statistics", shot_statistics()),
        (9, "optimizer sinusoid oracle", optimizer_oracle()),
        (10, "reproducibility", reproducibility()),
    ];

    let mut unexpected = 0;
    for (id, title, o) in &checks {
        let red = EXPECTED_RED.iter().find(|(r, _)| r == id);
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("[{status}] {id:>2} {title}: {}", o.detail);
        match (o.pass, red) {
            (false, Some((_, why))) => println!("        expected red: {why}"),
            (true, Some(_)) => {
                println!("        listed as expected red but passed");
                unexpected += 1;
            }
            (false, None) => unexpected += 1,
            (true, None) => {}
        }
    }
    let passed = checks.iter().filter(|(_, _, o)| o.pass).count();
    println!("acceptance: {passed}/{} criteria pass, {unexpected} unexpected", checks.len());
    if unexpected > 0 {
        std::process::exit(1);
    }
}
