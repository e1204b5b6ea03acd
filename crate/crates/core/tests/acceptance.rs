//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use rayon::prelude::*;

use quiver_harmonics::character::{hesselink_exponent, rational_weight, stable_agreement_sweep, QuiverConfig};
use quiver_harmonics::combinatorics::{enumerate_partitions, partitions_of, Partition, WeightVector};
use quiver_harmonics::crystal::enumerate_sst;
use quiver_harmonics::lr::{lr_coefficient_classical, lr_coefficient_crystal, ClrQuery};
use quiver_harmonics::qseries::{euler_factor, partition_series, QSeries};
use quiver_harmonics::stable::{
    enumerate_distinguished, enumerate_ktypes, separation_sides, stable_multiplicity,
    stable_multiplicity_definition, KType, NodePair,
};

const SWEEP_DEGREE: usize = 6;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, checked: usize, what: &str) -> Outcome {
    if failures.is_empty() {
        Outcome { pass: true, detail: format!("{checked} {what}") }
    } else {
        let shown: Vec<_> = failures.iter().take(5).cloned().collect();
        Outcome {
            pass: false,
            detail: format!("{} of {checked} {what} failed; first: {}", failures.len(), shown.join("; ")),
        }
    }
}

fn sweep() -> Vec<KType> {
    (1..=3).flat_map(|k| enumerate_ktypes(k, 4)).collect()
}

fn theorem_vs_definition(nus: &[KType]) -> Outcome {
    let failures: Vec<String> = nus
        .par_iter()
        .filter_map(|nu| {
            let a = stable_multiplicity(nu, SWEEP_DEGREE);
            let b = stable_multiplicity_definition(nu, SWEEP_DEGREE);
            (a != b).then(|| format!("{nu}: {a} vs {b}"))
        })
        .collect();
    outcome(failures, nus.len(), "K-types")
}

fn unstable_agreement() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for dims in [vec![1, 1], vec![2, 2], vec![1, 1, 1]] {
        let cfg = QuiverConfig::new(dims.clone()).unwrap();
        match stable_agreement_sweep(&cfg, cfg.n(), None) {
            Ok(report) => {
                checked += report.checked;
                failures.extend(report.mismatches.iter().map(|m| {
                    format!("dims {dims:?} {}: oracle {} vs stable {}", m.ktype, m.oracle, m.stable)
                }));
            }
            Err(e) => failures.push(format!("dims {dims:?}: {e}")),
        }
    }
    outcome(failures, checked, "realizable K-types")
}

fn kostant_recovery() -> Outcome {
    let adjoint = KType::new(vec![NodePair::new(Partition::column(1), Partition::column(1))]).unwrap();
    let mut failures = Vec::new();
    let mut checked = 0;
    for d in 0..=5usize {
        let stable = stable_multiplicity(&adjoint, d);
        let expected = QSeries::from_coeffs((0..=d).map(|j| i64::from(j > 0)), d);
        if stable != expected {
            failures.push(format!("D={d}: {stable} vs {expected}"));
        }
        for n in (d + 1).max(2)..=d + 2 {
            let w = rational_weight(&Partition::column(1), &Partition::column(1), n).unwrap();
            let h = hesselink_exponent(&w, d);
            checked += 1;
            if h != stable {
                failures.push(format!("D={d} n={n}: hesselink {h} vs stable {stable}"));
            }
        }
    }
    outcome(failures, checked, "(D, n) pairs")
}

fn lr_cross_validation() -> Outcome {
    let mut triples = Vec::new();
    for lambda in enumerate_partitions(6) {
        for a in 0..=lambda.size() {
            for alpha in partitions_of(a) {
                for nu in partitions_of(lambda.size() - a) {
                    triples.push(ClrQuery::new(lambda.clone(), alpha.clone(), nu));
                }
            }
        }
    }
    let failures: Vec<String> = triples
        .par_iter()
        .filter_map(|q| {
            let c = lr_coefficient_crystal(q);
            let l = lr_coefficient_classical(q);
            (c != l).then(|| format!("c^{}_{{{},{}}}: {c} vs {l}", q.lambda, q.alpha, q.nu))
        })
        .collect();
    outcome(failures, triples.len(), "triples")
}

fn separation(nus: &[KType]) -> Outcome {
    let failures: Vec<String> = nus
        .par_iter()
        .filter_map(|nu| {
            let (lhs, rhs) = separation_sides(nu, SWEEP_DEGREE);
            (lhs != rhs).then(|| format!("{nu}: {lhs} vs {rhs}"))
        })
        .collect();
    outcome(failures, nus.len(), "K-types")
}

fn euler_identity() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for k in 1..=4 {
        for d in 0..=16 {
            checked += 1;
            let prod = &euler_factor(k, d) * &partition_series(k, d);
            if prod != QSeries::one(d) {
                failures.push(format!("k={k} D={d}: {prod}"));
            }
        }
    }
    outcome(failures, checked, "(k, D) pairs")
}

fn vanishing(nus: &[KType]) -> Outcome {
    let unbalanced: Vec<&KType> = nus.iter().filter(|nu| nu.plus_size() != nu.minus_size()).collect();
    let failures: Vec<String> = unbalanced
        .par_iter()
        .filter_map(|nu| {
            let s = stable_multiplicity(nu, SWEEP_DEGREE);
            (!s.is_zero()).then(|| format!("{nu}: {s}"))
        })
        .collect();
    outcome(failures, unbalanced.len(), "unbalanced K-types")
}

fn entry_bound(nus: &[KType]) -> Outcome {
    let results: Vec<(usize, Vec<String>)> = nus
        .par_iter()
        .map(|nu| {
            let found = enumerate_distinguished(nu, SWEEP_DEGREE);
            let bad = found
                .iter()
                .filter(|(t, p)| p.degree < t.max_entry())
                .map(|(t, p)| format!("{t}: max entry {} degree {}", t.max_entry(), p.degree))
                .collect();
            (found.len(), bad)
        })
        .collect();
    let checked = results.iter().map(|(n, _)| n).sum();
    outcome(results.into_iter().flat_map(|(_, b)| b).collect(), checked, "distinguished tuples")
}

fn crystal_axioms() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    let shift = |i: usize| &WeightVector::epsilon(i + 1) - &WeightVector::epsilon(i);
    for shape in enumerate_partitions(5) {
        for t in enumerate_sst(&shape, 5) {
            for i in 1..=5 {
                checked += 1;
                let mut check = |ok: bool, what: &str| {
                    if !ok {
                        failures.push(format!("{t:?} i={i}: {what}"));
                    }
                };
                let wt = t.weight();
                if let Some(u) = t.lower(i) {
                    check(u.raise(i).as_ref() == Some(&t), "raise(lower(T)) != T");
                    check(u.weight() == &wt + &shift(i), "lower weight shift");
                }
                if let Some(u) = t.raise(i) {
                    check(u.lower(i).as_ref() == Some(&t), "lower(raise(T)) != T");
                    check(&u.weight() + &shift(i) == wt, "raise weight shift");
                }
                let (phi, eps) = t.string_lengths(i);
                check((phi, eps) == (t.phi_string(i), t.epsilon_string(i)), "string lengths");
                check(phi as i64 - eps as i64 == wt.get(i) - wt.get(i + 1), "phi - eps != <wt, alpha_i>");
            }
        }
    }
    outcome(failures, checked, "(tableau, i) pairs")
}

fn main() -> ExitCode {
    let nus = sweep();
    type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("theorem equals definition (<= 4 boxes, k <= 3, degree 6)", Box::new(|| theorem_vs_definition(&nus))),
        ("finite harmonics agree with stable series up to degree n", Box::new(unstable_agreement)),
        ("k = 1 adjoint recovers Kostant and Hesselink", Box::new(kostant_recovery)),
        ("crystal and classical LR agree for |lambda| <= 6", Box::new(lr_cross_validation)),
        ("separation of the invariant factor", Box::new(|| separation(&nus))),
        ("Euler factor times partition series is 1", Box::new(euler_identity)),
        ("unbalanced K-types vanish", Box::new(|| vanishing(&nus))),
        ("entry bound: degree >= max entry", Box::new(|| entry_bound(&nus))),
        ("crystal axioms (<= 5 boxes, entries <= 5)", Box::new(crystal_axioms)),
    ];
    let mut all = true;
    for (idx, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        all &= o.pass;
        println!(
            "criterion {}: {} ... {} ({}, {:.2?})",
            idx + 1,
            name,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
