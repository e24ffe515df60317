//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Trial counts, seed and tolerances are fixed here.

use std::process::ExitCode;
use std::thread;
use std::time::Instant;

use lossy_cvc::harness::suite::{
    check_class_solver, check_clique_contraction, check_end_to_end, check_identification, check_kernel_size,
    check_large_branch, check_recognition, check_savage, check_small_branch, ModeKind, SolverClass,
};
use lossy_cvc::harness::PropertyReport;

const SEED: u64 = 20_240_601;

const CLASS_TRIALS: usize = 300;
const SAVAGE_TRIALS: usize = 300;
const IDENTIFY_TRIALS: usize = 200;
const SMALL_BRANCH_TRIALS: usize = 200;
const LARGE_BRANCH_TRIALS: usize = 100;
const CONTRACTION_TRIALS: usize = 100;
const END_TO_END_TRIALS: usize = 200;
const KERNEL_SIZE_TRIALS: usize = 200;
const RECOGNITION_TRIALS: usize = 500;

/// Every criterion allows zero violations.
const TOLERANCE: usize = 0;

type Job = (u32, Box<dyn FnOnce() -> Vec<PropertyReport> + Send>);

fn jobs() -> Vec<Job> {
    vec![
        (
            1,
            Box::new(|| {
                [SolverClass::Split, SolverClass::Chordal, SolverClass::Cograph, SolverClass::Treewidth]
                    .into_iter()
                    .enumerate()
                    .map(|(i, c)| check_class_solver(c, CLASS_TRIALS, SEED + 10 + i as u64))
                    .collect()
            }),
        ),
        (2, Box::new(|| vec![check_savage(SAVAGE_TRIALS, SEED + 20)])),
        (3, Box::new(|| vec![check_identification(IDENTIFY_TRIALS, SEED + 30)])),
        (4, Box::new(|| vec![check_small_branch(SMALL_BRANCH_TRIALS, SEED + 40)])),
        (5, Box::new(|| vec![check_large_branch(LARGE_BRANCH_TRIALS, SEED + 50)])),
        (6, Box::new(|| vec![check_clique_contraction(CONTRACTION_TRIALS, SEED + 60)])),
        (
            7,
            Box::new(|| {
                ModeKind::ALL
                    .into_iter()
                    .enumerate()
                    .map(|(i, k)| check_end_to_end(k, END_TO_END_TRIALS, SEED + 70 + i as u64))
                    .collect()
            }),
        ),
        (8, Box::new(|| vec![check_kernel_size(KERNEL_SIZE_TRIALS, SEED + 80)])),
        (9, Box::new(|| vec![check_recognition(RECOGNITION_TRIALS, SEED + 90)])),
    ]
}

fn main() -> ExitCode {
    let start = Instant::now();
    let results: Vec<(u32, Vec<PropertyReport>)> = thread::scope(|s| {
        let handles: Vec<_> = jobs().into_iter().map(|(id, job)| (id, s.spawn(job))).collect();
        handles.into_iter().map(|(id, h)| (id, h.join().expect("criterion panicked"))).collect()
    });

    let mut all_pass = true;
    for (id, rows) in &results {
        let failures: usize = rows.iter().map(|r| r.failures).sum();
        let trials: usize = rows.iter().map(|r| r.trials).sum();
        let pass = rows.iter().all(|r| r.asserted) && failures <= TOLERANCE;
        all_pass &= pass;
        println!(
            "criterion {id}: {} ({trials} trials, {failures} failures, tolerance {TOLERANCE})",
            if pass { "PASS" } else { "FAIL" }
        );
        for r in rows {
            let f = |x: Option<f64>| x.map_or("-".to_string(), |v| format!("{v:.4}"));
            println!("    {}: {} trials, {} failures, max ratio {}, bound {}", r.name, r.trials, r.failures, f(r.max_ratio), f(r.bound));
            for note in &r.notes {
                println!("    [{}] {note}", r.name);
            }
        }
    }
    println!("acceptance finished in {:.1}s", start.elapsed().as_secs_f64());
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
