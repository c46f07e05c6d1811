//! One pass/fail line per acceptance criterion, each with its time budget.

use std::io::Write;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use psmod_core::chevalley::ChevalleyGroup;
use psmod_core::coxeter::{SimpleSubset, WeylGroup};
use psmod_core::linalg::{CoeffField, PrimeField, Rationals};
use psmod_core::modules::checks::{
    alternating_induction_check, chain_check, coefficient_sum_check, dimension_partition_check, expected_e_j_dim,
    parabolic_kernel_check, steinberg_check, torus_averaging_check,
};
use psmod_core::modules::{CosetSpace, PrincipalSeries};
use psmod_core::report::{Check, VerificationReport};
use psmod_core::rootsys::CartanType;
use psmod_core::suites::{Job, SuiteConfig};

const A1: CartanType = CartanType::A(1);
const A2: CartanType = CartanType::A(2);
const A3: CartanType = CartanType::A(3);
const B2: CartanType = CartanType::B2;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

/// All named checks of the given jobs, plus any failing check of those names.
fn job_checks(jobs: &[Job], names: &[&str]) -> Vec<Check> {
    let cfg = SuiteConfig { seed: 1, ..Default::default() };
    jobs.iter().flat_map(|j| j.run(&cfg).checks).filter(|c| names.contains(&c.name.as_str())).collect()
}

fn all_pass(checks: &[Check], min: usize) -> Outcome {
    let failed: Vec<String> = checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| format!("{} {:?}: {} vs {}", c.name, c.params, c.computed, c.expected))
        .collect();
    outcome(
        failed.is_empty() && checks.len() >= min,
        if failed.is_empty() { format!("{} checks", checks.len()) } else { failed.join("; ") },
    )
}

fn report_pass(r: &VerificationReport) -> Outcome {
    all_pass(&r.checks, 1)
}

fn space(t: CartanType, q: u32) -> Arc<CosetSpace> {
    Arc::new(CosetSpace::new(ChevalleyGroup::new(t, q).unwrap()).unwrap())
}

fn series<F: CoeffField>(t: CartanType, q: u32, k: F) -> PrincipalSeries<F> {
    PrincipalSeries::new(space(t, q), k, false).unwrap()
}

fn merge(parts: Vec<Outcome>) -> Outcome {
    let pass = parts.iter().all(|o| o.pass);
    let detail =
        parts.iter().filter(|o| !pass && !o.pass || pass).map(|o| o.detail.clone()).collect::<Vec<_>>().join(" | ");
    outcome(pass, detail)
}

fn c1() -> Outcome {
    let jobs: Vec<Job> = [A2, A3, CartanType::A(4), CartanType::A(5), B2, CartanType::G2]
        .into_iter()
        .map(|t| Job::Coxeter { t })
        .collect();
    let checks = job_checks(&jobs, &["rank2_y_set", "type_a_chain_y_set"]);
    // three rank 2 lists and the chain for n = 2..5
    all_pass(&checks, 7)
}

fn c2() -> Outcome {
    let jobs: Vec<Job> = (3..=5).map(|n| Job::Coxeter { t: CartanType::A(n) }).collect();
    let checks = job_checks(&jobs, &["maximal_parabolic_y_set", "maximal_parabolic_longest", "maximal_parabolic_gap"]);
    // interior i' for n = 3, 4, 5: 1 + 2 + 3 positions, three checks each
    all_pass(&checks, 18)
}

fn c3() -> Outcome {
    let jobs: Vec<Job> = (2..=6).map(|n| Job::Coxeter { t: CartanType::A(n) }).collect();
    let checks = job_checks(&jobs, &["cycle_power_reduced", "cycle_power_images", "cycle_element_images"]);
    let images = checks.iter().filter(|c| c.name == "cycle_power_images").count();
    let mut o = all_pass(&checks, 1);
    o.pass &= images >= 9;
    o.detail = format!("{}, {images} image comparisons", o.detail);
    o
}

fn c4() -> Outcome {
    let mut parts = Vec::new();
    for (t, dim) in [(A2, 6), (A3, 24), (B2, 8)] {
        let order = WeylGroup::of_type(t).unwrap().order();
        parts.push(outcome(order == dim, format!("{t}: |W| = {order}")));
    }
    let checks = job_checks(
        &[Job::Kl { t: A2 }, Job::Kl { t: A3 }, Job::Kl { t: B2 }],
        &[
            "x_times_c_basis",
            "c_of_x_basis",
            "mixed_basis",
            "c_equals_eta",
            "change_of_basis_unitriangular",
            "change_of_basis_inverse",
        ],
    );
    // 4 + 8 + 4 subsets, six checks each
    parts.push(all_pass(&checks, 96));
    merge(parts)
}

fn c5() -> Outcome {
    let mut jobs: Vec<Job> =
        [(A2, 2), (A2, 3), (A2, 4), (B2, 2), (B2, 3)].into_iter().map(|(t, q)| Job::Chevalley { t, q }).collect();
    let mut parts = vec![all_pass(
        &job_checks(&jobs, &["commutator_formula", "weyl_conjugation", "simple_conjugation_identity"]),
        15,
    )];
    jobs = vec![Job::Chevalley { t: A1, q: 3 }];
    let sl2 = job_checks(&jobs, &["bruhat_round_trip", "group_order"]);
    let every = sl2.iter().any(|c| {
        c.params.get("mode").map(String::as_str) == Some("exhaustive")
            && c.params.get("elements").map(String::as_str) == Some("24")
    });
    let mut o = all_pass(&sl2, 2);
    o.pass &= every;
    o.detail = format!("SL2(F3) exhaustive over 24 elements: {every}");
    parts.push(o);
    let sl3 = job_checks(&[Job::Chevalley { t: A2, q: 3 }], &["bruhat_round_trip"]);
    let random = sl3.iter().any(|c| {
        c.params.get("mode").map(String::as_str) == Some("random")
            && c.params.get("elements").map(String::as_str) == Some("10000")
    });
    let mut o = all_pass(&sl3, 1);
    o.pass &= random;
    o.detail = format!("SL3(F3) random 10^4: {random}");
    parts.push(o);
    merge(parts)
}

fn c6() -> Outcome {
    let mut parts = Vec::new();
    let groups = [(A1, 2), (A1, 3), (A1, 4), (A1, 5), (A1, 7), (A2, 2), (A2, 3), (A3, 2), (B2, 2)];
    for (t, q) in groups {
        let ps = series(t, q, Rationals);
        let lattice = ps.lattice();
        let r = dimension_partition_check(&ps, &lattice);
        let group = ps.space().group().clone();
        let total: usize = SimpleSubset::all_subsets(t.rank()).map(|j| expected_e_j_dim(&group, j)).sum();
        let mut o = report_pass(&r);
        o.pass &= total == ps.dim();
        match (t, q) {
            (A3, 2) => o.pass &= ps.dim() == 315,
            (B2, 2) => o.pass &= ps.dim() == 45,
            _ => {}
        }
        o.detail = format!("{}: dim {}", group.name(), ps.dim());
        parts.push(o);
    }
    merge(parts)
}

fn c7() -> Outcome {
    let ps = series(A2, 2, Rationals);
    let lattice = ps.lattice();
    let c = chain_check(&ps, &lattice, Some(&[8, 14, 20, 21]));
    outcome(c.pass, c.computed)
}

fn kernels<F: CoeffField>(t: CartanType, q: u32, k: F) -> Outcome {
    let ps = series(t, q, k);
    let lattice = ps.lattice();
    let checks: Vec<Check> =
        SimpleSubset::all_subsets(t.rank()).map(|i| parabolic_kernel_check(&ps, &lattice, i).unwrap()).collect();
    let mut o = all_pass(&checks, 1);
    o.detail = format!("{} over {}", ps.space().group().name(), ps.field().name());
    o
}

fn c8() -> Outcome {
    let mut parts = Vec::new();
    for (t, q, p) in [(A1, 2, 2), (A1, 3, 3), (A2, 2, 2), (B2, 2, 2)] {
        parts.push(kernels(t, q, Rationals));
        for l in [3u64, 5, 7].into_iter().filter(|&l| l != p) {
            parts.push(kernels(t, q, PrimeField::new(l).unwrap()));
        }
    }
    let n = parts.len();
    let mut o = merge(parts);
    if o.pass {
        o.detail = format!("{n} (group, field) pairs, every I");
    }
    o
}

fn c9() -> Outcome {
    let mut parts = Vec::new();
    for (t, q, want) in [(A2, 2, 8), (B2, 2, 16), (A3, 2, 64)] {
        let ps = series(t, q, Rationals);
        let st = ps.mtr_j(SimpleSubset::all(t.rank()));
        let r = alternating_induction_check(&ps, &st).unwrap();
        let sum = &r.checks[0];
        let mut o = report_pass(&r);
        o.pass &= sum.computed.ends_with(&format!("= {want}"));
        if t == A2 {
            o.pass &= sum.computed == "+21 -7 -7 +1 = 8";
        }
        o.detail = format!("{}: {}", ps.space().group().name(), sum.computed);
        parts.push(o);
    }
    merge(parts)
}

fn c10() -> Outcome {
    let mut parts = Vec::new();
    for (t, q) in [(A1, 2), (A1, 3), (A1, 4), (A1, 5), (A2, 2), (B2, 2)] {
        let r = steinberg_check(&space(t, q), 1);
        let mut o = report_pass(&r);
        o.detail = format!("{}: dim {}", r.params["group"], r.checks[0].computed);
        parts.push(o);
    }
    merge(parts)
}

fn c11() -> Outcome {
    let mut checks = Vec::new();
    // (q, b) = (2, 1), (3, 1) for SL_2 and (2, 1) for SL_3: groups over F_{q^{2b}}
    for (t, big) in [(A1, 4), (A1, 9), (A2, 4)] {
        let ps = series(t, big, Rationals);
        let w0 = ps.space().weyl_coset_of(&ps.space().group().weyl().longest(SimpleSubset::all(t.rank())));
        for root in 0..t.rank() {
            for (eta, label) in [(ps.basis_vector(0), "e_B"), (ps.basis_vector(w0), "e_w0B")] {
                checks.push(torus_averaging_check(&ps, root, &eta, label).unwrap());
            }
        }
    }
    all_pass(&checks, 8)
}

fn c12() -> Outcome {
    let mut checks = Vec::new();
    for (t, q, subsets) in [
        (A1, 2, vec![SimpleSubset::all(1)]),
        (A1, 3, vec![SimpleSubset::all(1)]),
        (A2, 2, vec![SimpleSubset::single(0), SimpleSubset::single(1), SimpleSubset::all(2)]),
    ] {
        let ps = series(t, q, Rationals);
        let lattice = ps.lattice();
        for i in subsets {
            checks.push(coefficient_sum_check(&ps, &lattice, i).unwrap());
        }
    }
    all_pass(&checks, 5)
}

fn c13() -> Outcome {
    let checks: Vec<Check> = job_checks(&[Job::Chevalley { t: A2, q: 2 }], &["regularization"])
        .into_iter()
        .filter(|c| ["1", "1-2", "1-2-1"].contains(&c.params["w"].as_str()))
        .collect();
    let mut o = all_pass(&checks, 3);
    o.detail = checks.iter().map(|c| format!("w = {}: {}", c.params["w"], c.computed)).collect::<Vec<_>>().join(", ");
    o
}

fn c14() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for (k, threads) in [(0, "1"), (1, "4")] {
        let out = dir.path().join(format!("run{k}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_psmod"))
            .args(["verify", "all", "--seed", "7", "--quiet", "--threads", threads, "--out"])
            .arg(&out)
            .env_remove("SOURCE_DATE_EPOCH")
            .output()
            .unwrap();
        if !status.status.success() {
            return outcome(
                false,
                format!("exit {:?}: {}", status.status.code(), String::from_utf8_lossy(&status.stderr)),
            );
        }
        outputs.push(std::fs::read(&out).unwrap());
    }
    outcome(
        outputs[0] == outputs[1],
        format!("{} bytes each, identical: {}", outputs[0].len(), outputs[0] == outputs[1]),
    )
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 14] = [
        ("Y-set ground truth", Duration::from_secs(1), c1),
        ("maximal parabolic Y-sets and lengths", Duration::from_secs(10), c2),
        ("powers of the cycle element are reduced", Duration::from_secs(10), c3),
        ("group-algebra bases and change of basis", Duration::from_secs(30), c4),
        ("commutators, conjugation, Bruhat round trip", Duration::from_secs(120), c5),
        ("dimension partition of K[G/B]", Duration::from_secs(300), c6),
        ("rank 2 chain 8 < 14 < 20 < 21", Duration::from_secs(60), c7),
        ("parabolic kernels over Q and F_l", Duration::from_secs(300), c8),
        ("alternating index sums", Duration::from_secs(60), c9),
        ("Steinberg dimension and irreducibility", Duration::from_secs(120), c10),
        ("torus averaging identity", Duration::from_secs(60), c11),
        ("coefficient sums vanish", Duration::from_secs(120), c12),
        ("regularization", Duration::from_secs(30), c13),
        ("deterministic reports", Duration::from_secs(600), c14),
    ];
    let mut stdout = std::io::stdout();
    let mut failed = Vec::new();
    for (k, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let elapsed = start.elapsed();
        let pass = o.pass && elapsed <= *budget;
        if !pass {
            failed.push(k + 1);
        }
        writeln!(
            stdout,
            "[{}] {:>2}. {name} ({:.2?} of {:?}): {}",
            if pass { "PASS" } else { "FAIL" },
            k + 1,
            elapsed,
            budget,
            o.detail
        )
        .unwrap();
    }
    if !failed.is_empty() {
        writeln!(stdout, "failed criteria: {failed:?}").unwrap();
        std::process::exit(1);
    }
    writeln!(stdout, "all {} criteria passed", criteria.len()).unwrap();
}
