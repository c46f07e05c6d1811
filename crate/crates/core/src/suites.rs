//! Verification suites: parameter grids expanded into independent jobs, each producing one
//! [`VerificationReport`].

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::chevalley::{prime_power, ChevalleyError, ChevalleyGroup, GroupElement};
use crate::coxeter::{type_a_word_permutation, SimpleSubset, WeylElement, WeylGroup};
use crate::kl::{poly_string, KLTable};
use crate::linalg::{PrimeField, Rationals};
use crate::modules::checks::{
    action_identities_check, alternating_induction_check, chain_check, coefficient_sum_check, composition_report,
    coset_count_check, derive_seed, dimension_partition_check, generated_submodule_check, parabolic_kernel_check,
    spanning_set_check, steinberg_check, torus_averaging_check,
};
use crate::modules::norton::EigenSearch;
use crate::modules::{CosetSpace, ModuleError, PrincipalSeries, DEFAULT_INDEX_BOUND};
use crate::report::{Check, VerificationReport};
use crate::rootsys::{CartanType, SignedIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Coxeter,
    Kl,
    Chevalley,
    Modules,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Coxeter, Suite::Kl, Suite::Chevalley, Suite::Modules];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Coxeter => "coxeter",
            Suite::Kl => "kl",
            Suite::Chevalley => "chevalley",
            Suite::Modules => "modules",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }

    /// Types run when none are requested.
    pub fn default_types(self) -> Vec<CartanType> {
        match self {
            Suite::Coxeter => {
                let mut v: Vec<CartanType> = (1..=MAX_COXETER_RANK).map(CartanType::A).collect();
                v.extend([CartanType::B2, CartanType::G2]);
                v
            }
            Suite::Kl => vec![CartanType::A(1), CartanType::A(2), CartanType::A(3), CartanType::B2, CartanType::G2],
            Suite::Chevalley | Suite::Modules => {
                vec![CartanType::A(1), CartanType::A(2), CartanType::A(3), CartanType::B2]
            }
        }
    }

    /// Field sizes run for `t` when none are requested.
    pub fn default_qs(self, t: CartanType) -> Vec<u32> {
        match (self, t) {
            (Suite::Chevalley, CartanType::A(1)) => vec![2, 3, 4, 5, 7],
            (Suite::Chevalley, CartanType::A(2)) => vec![2, 3, 4],
            (Suite::Chevalley, CartanType::A(3)) => vec![2],
            (Suite::Chevalley, CartanType::B2) => vec![2, 3],
            (Suite::Modules, CartanType::A(1)) => vec![2, 3, 4, 5, 7, 9],
            (Suite::Modules, CartanType::A(2)) => vec![2, 3, 4],
            (Suite::Modules, CartanType::A(3)) => vec![2],
            (Suite::Modules, CartanType::B2) => vec![2],
            _ => Vec::new(),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Largest type `A` rank of the combinatorial suite.
pub const MAX_COXETER_RANK: usize = 6;
/// Largest Weyl group enumerated in full by the combinatorial suite.
pub const COXETER_ENUMERATION_BOUND: usize = 1152;
/// Largest type `A` rank of the Kazhdan-Lusztig suite.
pub const MAX_KL_RANK: usize = 4;
/// Largest Weyl group on which the group-algebra basis statements are checked.
pub const BASIS_CHECK_BOUND: usize = 48;
/// Largest `|U(F_q)|` for the matrix-group suite.
pub const UNIPOTENT_BOUND: u64 = 4096;
/// Random elements used for the Bruhat round trip when the group is not enumerated.
pub const BRUHAT_SAMPLES: usize = 10_000;
/// Groups with at most this many matrices of their size are enumerated outright.
pub const MATRIX_ENUMERATION_BOUND: u64 = 1 << 16;
/// Largest `|G/B|` on which `K G eta_J` is compared against the span of all `u n_w eta_J`.
pub const SPAN_COMPARISON_BOUND: usize = 100;
/// Largest `|G/B|` given a composition report.
pub const COMPOSITION_BOUND: usize = 50;
/// Largest Steinberg dimension tested for irreducibility.
pub const STEINBERG_BOUND: usize = 27;
/// Coefficient primes added by default for the smallest groups.
pub const DEFAULT_MODULAR_PRIMES: [u64; 3] = [3, 5, 7];

/// Parameters of a run. Empty lists select the suite defaults.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteConfig {
    pub types: Vec<CartanType>,
    pub qs: Vec<u32>,
    /// Coefficient characteristics, `0` for `Q`.
    pub chars: Vec<u64>,
    pub allow_defining_char: bool,
    pub verification_mode: bool,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlanError {
    UnsupportedType { suite: Suite, t: CartanType },
    NotPrimePower(u32),
    NotPrime(u64),
    TooLarge { suite: Suite, t: CartanType, q: u32, reason: String },
    DefiningCharacteristic { ell: u64, q: u32 },
    NoFieldSizes { suite: Suite, t: CartanType },
}

impl fmt::Display for PlanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlanError::UnsupportedType { suite, t } => write!(f, "suite {suite} does not support type {t}"),
            PlanError::NotPrimePower(q) => write!(f, "q = {q} is not a prime power"),
            PlanError::NotPrime(l) => write!(f, "coefficient characteristic {l} is neither 0 nor a prime"),
            PlanError::TooLarge { suite, t, q, reason } => {
                write!(f, "suite {suite}: {t} over F{q} is beyond the supported size ({reason})")
            }
            PlanError::DefiningCharacteristic { ell, q } => write!(
                f,
                "coefficient characteristic {ell} divides q = {q}; pass --allow-defining-char to run it anyway"
            ),
            PlanError::NoFieldSizes { suite, t } => {
                write!(f, "suite {suite}: no default field sizes for {t}; pass --q")
            }
        }
    }
}

/// One independent unit of work.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Job {
    Coxeter {
        t: CartanType,
    },
    Kl {
        t: CartanType,
    },
    Chevalley {
        t: CartanType,
        q: u32,
    },
    /// `ell = 0` means coefficients in `Q`.
    Modules {
        t: CartanType,
        q: u32,
        ell: u64,
    },
}

impl Job {
    pub fn suite(&self) -> Suite {
        match self {
            Job::Coxeter { .. } => Suite::Coxeter,
            Job::Kl { .. } => Suite::Kl,
            Job::Chevalley { .. } => Suite::Chevalley,
            Job::Modules { .. } => Suite::Modules,
        }
    }

    pub fn label(&self) -> String {
        match self {
            Job::Coxeter { t } | Job::Kl { t } => format!("{}/{t}", self.suite()),
            Job::Chevalley { t, q } => format!("chevalley/{t}/q{q}"),
            Job::Modules { t, q, ell } => format!("modules/{t}/q{q}/char{ell}"),
        }
    }

    pub fn run(&self, cfg: &SuiteConfig) -> VerificationReport {
        let mut report = match *self {
            Job::Coxeter { t } => coxeter_job(t),
            Job::Kl { t } => kl_job(t),
            Job::Chevalley { t, q } => chevalley_job(t, q, cfg),
            Job::Modules { t, q, ell } => modules_job(t, q, ell, cfg),
        };
        report.params.insert(String::from("job"), self.label());
        report
    }
}

fn check_q(q: u32) -> Result<(u32, u32), PlanError> {
    prime_power(q).ok_or(PlanError::NotPrimePower(q))
}

fn group_bounds(suite: Suite, t: CartanType, q: u32) -> Result<(), PlanError> {
    check_q(q)?;
    let too_large = |reason: String| PlanError::TooLarge { suite, t, q, reason };
    if !matches!(t, CartanType::A(1..=3) | CartanType::B2) {
        return Err(PlanError::UnsupportedType { suite, t });
    }
    let weyl = WeylGroup::of_type(t).map_err(|_| PlanError::UnsupportedType { suite, t })?;
    let npos = weyl.system().num_positive() as u32;
    match suite {
        Suite::Chevalley => {
            let u = (q as u64).checked_pow(npos).unwrap_or(u64::MAX);
            if u > UNIPOTENT_BOUND || q > 16 {
                return Err(too_large(format!("|U| = {q}^{npos} must be at most {UNIPOTENT_BOUND} and q at most 16")));
            }
        }
        _ => {
            let index: u64 = weyl
                .poincare_polynomial()
                .map_err(|_| PlanError::UnsupportedType { suite, t })?
                .iter()
                .enumerate()
                .map(|(d, c)| c * (q as u64).pow(d as u32))
                .sum();
            if index > DEFAULT_INDEX_BOUND as u64 {
                return Err(too_large(format!("|G/B| = {index} exceeds {DEFAULT_INDEX_BOUND}")));
            }
        }
    }
    Ok(())
}

/// Expand a configuration into jobs, validating every parameter first.
pub fn plan(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<Job>, PlanError> {
    let types = if cfg.types.is_empty() { suite.default_types() } else { cfg.types.clone() };
    let mut jobs = Vec::new();
    for &t in &types {
        match suite {
            Suite::Coxeter => {
                let ok = match t {
                    CartanType::A(n) => (1..=MAX_COXETER_RANK).contains(&n),
                    CartanType::B2 | CartanType::G2 => true,
                };
                if !ok {
                    return Err(PlanError::UnsupportedType { suite, t });
                }
                jobs.push(Job::Coxeter { t });
            }
            Suite::Kl => {
                let ok = match t {
                    CartanType::A(n) => (1..=MAX_KL_RANK).contains(&n),
                    CartanType::B2 | CartanType::G2 => true,
                };
                if !ok {
                    return Err(PlanError::UnsupportedType { suite, t });
                }
                jobs.push(Job::Kl { t });
            }
            Suite::Chevalley | Suite::Modules => {
                if !matches!(t, CartanType::A(1..=3) | CartanType::B2) {
                    return Err(PlanError::UnsupportedType { suite, t });
                }
                let qs = if cfg.qs.is_empty() { suite.default_qs(t) } else { cfg.qs.clone() };
                if qs.is_empty() {
                    return Err(PlanError::NoFieldSizes { suite, t });
                }
                for &q in &qs {
                    group_bounds(suite, t, q)?;
                    if suite == Suite::Chevalley {
                        jobs.push(Job::Chevalley { t, q });
                        continue;
                    }
                    let (p, _) = check_q(q)?;
                    let chars: Vec<u64> = if cfg.chars.is_empty() {
                        let mut c = vec![0];
                        if modular_default(t, q) {
                            c.extend(DEFAULT_MODULAR_PRIMES.iter().filter(|&&l| l != p as u64));
                        }
                        c
                    } else {
                        cfg.chars.clone()
                    };
                    for &ell in &chars {
                        if ell != 0 && !crate::gf::is_prime(ell) {
                            return Err(PlanError::NotPrime(ell));
                        }
                        if ell == p as u64 && !cfg.allow_defining_char {
                            return Err(PlanError::DefiningCharacteristic { ell, q });
                        }
                        jobs.push(Job::Modules { t, q, ell });
                    }
                }
            }
        }
    }
    Ok(jobs)
}

fn modular_default(t: CartanType, q: u32) -> bool {
    matches!((t, q), (CartanType::A(1), 2 | 3) | (CartanType::A(2), 2) | (CartanType::B2, 2))
}

fn words(v: &[WeylElement]) -> String {
    let w: Vec<String> = v.iter().map(|x| x.word_string()).collect();
    format!("{{{}}}", w.join(", "))
}

fn element_set(weyl: &WeylGroup, ws: &[Vec<usize>]) -> BTreeSet<WeylElement> {
    ws.iter().map(|w| weyl.element(w).expect("valid word")).collect()
}

/// Product of `1 + t + .. + t^{d-1}` over the degrees.
fn degree_poincare(weyl: &WeylGroup) -> Vec<u64> {
    weyl.degrees().iter().fold(vec![1u64], |acc, &d| {
        let mut out = vec![0u64; acc.len() + d - 1];
        for (i, &a) in acc.iter().enumerate() {
            for k in 0..d {
                out[i + k] += a;
            }
        }
        out
    })
}

/// `w_c = (s_n .. s_{m+2})(s_1 .. s_m) s_{m+1}` as a 0-based word.
pub fn cycle_element_word(n: usize, m: usize) -> Vec<usize> {
    let mut w: Vec<usize> = (m + 1..n).rev().collect();
    w.extend(0..m);
    w.push(m);
    w
}

/// Images `w_c(e_i)` on letters `1..=n+1`, written down case by case.
fn cycle_element_images(n: usize, m: usize) -> Vec<usize> {
    (1..=n + 1)
        .map(|i| {
            if i <= m {
                i + 1
            } else if i == m + 1 {
                n + 1
            } else if i == m + 2 {
                1
            } else {
                i - 1
            }
        })
        .collect()
}

/// Images of `w_c^{m+1}(e_i)` when `2m + 1 <= n`, written down case by case.
fn cycle_power_images(n: usize, m: usize) -> Vec<usize> {
    (1..=n + 1)
        .map(|i| {
            if i <= m + 1 {
                n + 2 - i
            } else if i <= 2 * m + 2 {
                2 * m + 3 - i
            } else {
                i - (m + 1)
            }
        })
        .collect()
}

fn coxeter_job(t: CartanType) -> VerificationReport {
    let weyl = WeylGroup::of_type(t).expect("validated type");
    let rank = weyl.rank();
    let mut report = VerificationReport::new("coxeter").param("type", t);
    let enumerable = weyl.order() <= COXETER_ENUMERATION_BOUND;
    if enumerable {
        let p = weyl.poincare_polynomial().expect("enumerable");
        report.push(
            Check::new("poincare_polynomial", "sum over W of t^l(w) = prod over degrees of (1 + .. + t^{d-1})")
                .param("type", t)
                .compare(format!("{p:?}"), format!("{:?}", degree_poincare(&weyl))),
        );
        // W is the disjoint union over J of Y_J w_J, with l(y w_J) = l(y) + l(w_J)
        let mut acc = vec![0u64; p.len()];
        let mut lengths_add = true;
        for j in SimpleSubset::all_subsets(rank) {
            let wj = weyl.longest(j);
            for y in weyl.y_set(j).expect("enumerable") {
                let yw = y.mul(&wj);
                lengths_add &= yw.length() == y.length() + wj.length() && yw.descents() == j;
                acc[yw.length()] += 1;
            }
        }
        report.push(
            Check::new("descent_partition", "W is the disjoint union over J of Y_J w_J, with R(y w_J) = J")
                .param("type", t)
                .outcome(lengths_add && acc == p, format!("{acc:?}, lengths add: {lengths_add}"), format!("{p:?}")),
        );
    }
    let s = SimpleSubset::single(0);
    let expected: Option<Vec<Vec<usize>>> = match t {
        CartanType::A(2) => Some(vec![vec![], vec![1]]),
        CartanType::B2 => Some(vec![vec![], vec![1], vec![0, 1]]),
        CartanType::G2 => Some(vec![vec![], vec![1], vec![0, 1], vec![1, 0, 1], vec![0, 1, 0, 1]]),
        _ => None,
    };
    if let Some(e) = expected {
        let got = weyl.y_set(s).expect("rank 2");
        report.push(
            Check::new("rank2_y_set", "Y_{s} for the first simple reflection s in rank 2")
                .param("type", t)
                .compare(words(&got), words(&element_set(&weyl, &e).into_iter().collect::<Vec<_>>())),
        );
    }
    if let CartanType::A(n) = t {
        if (2..=5).contains(&n) {
            // {e, s_2, s_3 s_2, .., s_n .. s_2}
            let chain: Vec<Vec<usize>> = (0..n).map(|k| (1..=k).rev().collect()).collect();
            let got: BTreeSet<WeylElement> = weyl.y_set(s).expect("enumerable").into_iter().collect();
            let want = element_set(&weyl, &chain);
            report.push(
                Check::new("type_a_chain_y_set", "Y_{s_1} = {e, s_2, s_3 s_2, .., s_n .. s_2} in type A_n")
                    .param("type", t)
                    .outcome(
                        got == want,
                        words(&got.into_iter().collect::<Vec<_>>()),
                        words(&want.into_iter().collect::<Vec<_>>()),
                    ),
            );
            for i_prime in 2..n {
                let m = i_prime - 1;
                let l = n - i_prime;
                let listed: BTreeSet<WeylElement> =
                    weyl.maximal_parabolic_y_set(i_prime).expect("interior").into_iter().collect();
                let direct: BTreeSet<WeylElement> =
                    weyl.y_set(SimpleSubset::single(i_prime - 1)).expect("enumerable").into_iter().collect();
                report.push(
                    Check::new("maximal_parabolic_y_set", "the block-word list equals Y_{s_i'} for interior i'")
                        .param("type", t)
                        .param("i'", i_prime)
                        .outcome(
                            listed == direct,
                            format!("{} elements", listed.len()),
                            format!("{} elements", direct.len()),
                        ),
                );
                let longest = listed.iter().map(|w| w.length()).max().unwrap_or(0);
                report.push(
                    Check::new("maximal_parabolic_longest", "the longest element of Y_{s_i'} has length ml + m + l")
                        .param("type", t)
                        .param("i'", i_prime)
                        .compare(longest, m * l + m + l),
                );
                let j = SimpleSubset::single(i_prime - 1).complement(n);
                let gap = weyl.longest(SimpleSubset::all(n)).length() - weyl.longest(j).length();
                report.push(
                    Check::new("maximal_parabolic_gap", "l(w_0) - l(w_J) = ml + m + l + 1 for J = S minus {s_i'}")
                        .param("type", t)
                        .param("i'", i_prime)
                        .compare(gap, m * l + m + l + 1),
                );
            }
        }
        if n >= 2 {
            cycle_element_checks(&weyl, n, &mut report);
        }
    }
    report
}

fn cycle_element_checks(weyl: &WeylGroup, n: usize, report: &mut VerificationReport) {
    let t = CartanType::A(n);
    for m in 0..n {
        let l = n - 1 - m;
        let wc = cycle_element_word(n, m);
        report.push(
            Check::new("cycle_element_images", "w_c(e_i) = e_{i+1}, e_{n+1}, e_1, e_{i-1} by range of i")
                .param("type", t)
                .param("m", m)
                .compare(format!("{:?}", type_a_word_permutation(n, &wc)), format!("{:?}", cycle_element_images(n, m))),
        );
        for k in 0..=m.min(l) {
            let word: Vec<usize> = wc.iter().copied().cycle().take(wc.len() * (k + 1)).collect();
            let reduced = weyl.is_reduced(&word).expect("valid word");
            let inversions = weyl.element(&word).expect("valid word").length();
            report.push(
                Check::new("cycle_power_reduced", "w_c^{k+1} is reduced for k <= min(m, l), of length n(k+1)")
                    .param("type", t)
                    .param("m", m)
                    .param("k", k)
                    .outcome(
                        reduced && inversions == n * (k + 1),
                        format!("reduced: {reduced}, inversions {inversions}"),
                        format!("reduced: true, inversions {}", n * (k + 1)),
                    ),
            );
            if k == m && m <= l {
                let perm = type_a_word_permutation(n, &word);
                let expected = cycle_power_images(n, m);
                // count inversions of the listed images directly
                let mut count = 0;
                for i in 0..=n {
                    for j in i + 1..=n {
                        if expected[i] > expected[j] {
                            count += 1;
                        }
                    }
                }
                report.push(
                    Check::new(
                        "cycle_power_images",
                        "w_c^{m+1} sends e_i to e_{n+2-i}, e_{2m+3-i}, e_{i-m-1} by range of i",
                    )
                    .param("type", t)
                    .param("m", m)
                    .outcome(
                        perm == expected && count == n * (m + 1),
                        format!("{perm:?}, {count} inversions from the listed images"),
                        format!("{expected:?}, {} inversions", n * (m + 1)),
                    ),
                );
            }
        }
    }
}

fn kl_job(t: CartanType) -> VerificationReport {
    let weyl = WeylGroup::of_type(t).expect("validated type");
    let mut report = VerificationReport::new("kl").param("type", t);
    let table = match KLTable::new(&weyl) {
        Ok(table) => table,
        Err(e) => {
            report
                .push(Check::new("kl_table", "the table is computable").param("type", t).outcome(false, e, "a table"));
            return report;
        }
    };
    let el = table.elements();
    let n = el.len();
    let w0 = el.index_of(&weyl.longest(SimpleSubset::all(weyl.rank())));
    let (mut const_ok, mut degree_ok, mut inverse_ok, mut top_ok) = (true, true, true, true);
    for w in 0..n {
        for y in 0..n {
            let p = table.p(y, w);
            if !el.bruhat_leq(y, w) {
                const_ok &= p.iter().all(|&c| c == 0);
                continue;
            }
            const_ok &= p.first() == Some(&1);
            if y != w {
                let gap = el.length(w) - el.length(y);
                degree_ok &= 2 * (p.len() - 1) < gap;
            }
            inverse_ok &= table.p(el.inverse(y), el.inverse(w)) == p;
            if w == w0 {
                top_ok &= p == [1];
            }
        }
    }
    report.push(
        Check::new("kl_constant_term", "P_{y,w}(0) = 1 for y <= w and P_{y,w} = 0 otherwise")
            .param("type", t)
            .outcome(const_ok, const_ok, true),
    );
    report.push(
        Check::new("kl_degree_bound", "deg P_{y,w} <= (l(w) - l(y) - 1)/2 for y < w")
            .param("type", t)
            .outcome(degree_ok, degree_ok, true),
    );
    report.push(
        Check::new("kl_inverse_symmetry", "P_{y,w} = P_{y^-1,w^-1}")
            .param("type", t)
            .outcome(inverse_ok, inverse_ok, true),
    );
    report.push(Check::new("kl_longest", "P_{y,w_0} = 1 for every y").param("type", t).outcome(top_ok, top_ok, true));
    if t == CartanType::A(3) {
        // the smallest singular Schubert variety in type A
        let y = weyl.element(&[1]).expect("valid");
        let w = weyl.element(&[1, 0, 2, 1]).expect("valid");
        report.push(
            Check::new("kl_singular_value", "P_{s_2, s_2 s_1 s_3 s_2} = 1 + q in type A_3")
                .param("type", t)
                .compare(poly_string(table.poly(&y, &w)), poly_string(&[1, 1])),
        );
    }
    if n <= BASIS_CHECK_BOUND {
        for j in SimpleSubset::all_subsets(weyl.rank()) {
            report.extend(table.basis_change_check(j, j));
        }
    }
    report
}

fn build_group(t: CartanType, q: u32, cfg: &SuiteConfig) -> Result<Arc<ChevalleyGroup>, ChevalleyError> {
    if cfg.verification_mode {
        ChevalleyGroup::with_verification(t, q)
    } else {
        ChevalleyGroup::new(t, q)
    }
}

fn neg(group: &ChevalleyGroup, c: u32) -> u32 {
    group.field().raw_sub(0, c)
}

fn chevalley_job(t: CartanType, q: u32, cfg: &SuiteConfig) -> VerificationReport {
    let mut report = VerificationReport::new("chevalley").param("type", t).param("q", q);
    let group = match build_group(t, q, cfg) {
        Ok(g) => g,
        Err(e) => {
            report.push(Check::new("construction", "the group is constructible").outcome(false, e, "a group"));
            return report;
        }
    };
    let name = group.name();
    let sys = group.system().clone();
    let npos = sys.num_positive();
    let f = group.field().clone();
    let qq = f.order();
    let base = |n: &str, a: &str| Check::new(n, a).param("group", &name);
    let signed: Vec<SignedIndex> = (1..=npos as SignedIndex).flat_map(|r| [r, -r]).collect();

    // root subgroups are one-parameter subgroups inside G
    let mut hom_ok = true;
    for &r in &signed {
        for a in 0..qq {
            hom_ok &= group.contains(&group.eps_index(r, a));
            for b in 0..qq {
                hom_ok &= group.eps_index(r, a).mul(&group.eps_index(r, b)) == group.eps_index(r, f.raw_add(a, b));
            }
        }
    }
    report.push(
        base("root_subgroups", "eps_g(a) eps_g(b) = eps_g(a + b) and eps_g(a) lies in G").outcome(hom_ok, hom_ok, true),
    );

    // torus rescaling
    let torus = group.torus_elements();
    let mut torus_ok = torus.len() == (qq as usize - 1).pow(sys.rank() as u32);
    for tt in &torus {
        let ti = tt.inverse().expect("invertible");
        for &r in &signed {
            let ch = group.character(r, tt);
            for c in 0..qq {
                torus_ok &= tt.mul(&group.eps_index(r, c)).mul(&ti) == group.eps_index(r, f.raw_mul(ch, c));
            }
        }
    }
    report.push(base("torus_action", "t eps_g(c) t^-1 = eps_g(g(t) c) for every t in T").outcome(
        torus_ok,
        format!("{} torus elements", torus.len()),
        "all identities hold",
    ));

    // Weyl representatives
    let mut conj_ok = true;
    let mut reps_ok = true;
    for w in group.weyl_elements() {
        let n = group.weyl_rep(&w);
        let ni = n.inverse().expect("invertible");
        reps_ok &= group.contains(&n);
        for &r in &signed {
            let image = w.apply_index(r);
            for c in 0..qq {
                let h = n.mul(&group.eps_index(r, c)).mul(&ni);
                conj_ok &= h == group.eps_index(image, c) || h == group.eps_index(image, neg(&group, c));
            }
        }
    }
    for i in 0..sys.rank() {
        let ns = group.simple_weyl_rep(i);
        reps_ok &= ns.mul(&ns).is_diagonal();
    }
    report.push(base("weyl_representatives", "n_w lies in G and n_s^2 lies in T").outcome(reps_ok, reps_ok, true));
    report.push(
        base("weyl_conjugation", "n_w eps_g(c) n_w^-1 = eps_{w(g)}(+-c) for every w, root g and c")
            .outcome(conj_ok, conj_ok, true),
    );

    // commutator formula
    let mut failures = Vec::new();
    let mut pairs = 0;
    for a in 0..npos {
        for b in 0..npos {
            if a == b {
                continue;
            }
            pairs += 1;
            match group.commutator_constants(a, b) {
                Ok(Some(_)) => {}
                Ok(None) => failures.push(format!("({},{})", a + 1, b + 1)),
                Err(e) => failures.push(format!("({},{}): {e}", a + 1, b + 1)),
            }
        }
    }
    report.push(
        base(
            "commutator_formula",
            "[eps_a(x), eps_b(y)] = prod over ia + jb of eps_{ia+jb}(c_ij x^i y^j) for all x, y",
        )
        .outcome(
            failures.is_empty(),
            if failures.is_empty() { format!("{pairs} ordered pairs, all x, y") } else { failures.join(" ") },
            format!("{pairs} ordered pairs, all x, y"),
        ),
    );

    // U = U'_w U_w = U_w U'_w with unique coordinates, and U_w a subgroup of order q^l(w)
    let all_u = group.unipotent_elements();
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, &format!("{name}/factor")));
    let exhaustive = all_u.len() * group.weyl_elements().len() <= 20_000;
    let mut factor_ok = true;
    let mut subgroup_ok = true;
    for w in group.weyl_elements() {
        let (order, k) = match group.uw_ordering(&w) {
            Ok(o) => o,
            Err(_) => {
                factor_ok = false;
                continue;
            }
        };
        let uw = group.root_products(&order[..k]);
        let distinct: BTreeSet<&GroupElement> = uw.iter().collect();
        subgroup_ok &= distinct.len() == (qq as usize).pow(w.length() as u32);
        for _ in 0..50 {
            let a = &uw[(rng.next_u64() % uw.len() as u64) as usize];
            let b = &uw[(rng.next_u64() % uw.len() as u64) as usize];
            subgroup_ok &= group.in_uw(&a.mul(b), &w).unwrap_or(false);
        }
        let mut swapped = order[k..].to_vec();
        swapped.extend_from_slice(&order[..k]);
        let picks: Vec<&GroupElement> = if exhaustive {
            all_u.iter().collect()
        } else {
            (0..200).map(|_| &all_u[(rng.next_u64() % all_u.len() as u64) as usize]).collect()
        };
        for u in picks {
            for ord in [&order, &swapped] {
                match group.factor_unipotent(u, ord) {
                    Ok(rc) => factor_ok &= group.unipotent_from_coordinates(&rc) == *u,
                    Err(_) => factor_ok = false,
                }
            }
        }
    }
    report.push(base("uw_subgroup", "U_w = prod over N(w) of U_b is a subgroup of order q^l(w)").outcome(
        subgroup_ok,
        subgroup_ok,
        true,
    ));
    report.push(
        base("uw_factorization", "U = U'_w U_w = U_w U'_w with unique root coordinates")
            .param("exhaustive", exhaustive)
            .outcome(factor_ok, factor_ok, true),
    );

    // n_a u n_a^-1 = x n_a t y for u in U_a minus 1
    let mut ident_ok = true;
    let mut ident_count = 0;
    for i in 0..sys.rank() {
        let na = group.simple_weyl_rep(i);
        let nai = na.inverse().expect("invertible");
        for c in 1..qq {
            let u = group.eps_index((i + 1) as SignedIndex, c);
            ident_count += 1;
            match group.conj_identity(&u, i) {
                Ok((x, tt, y)) => {
                    ident_ok &= na.mul(&u).mul(&nai) == x.mul(&na).mul(&tt).mul(&y) && tt.is_diagonal();
                }
                Err(_) => ident_ok = false,
            }
        }
    }
    report.push(
        base("simple_conjugation_identity", "n_a u n_a^-1 = x n_a t y with x, y in U_a minus 1 and t in T").outcome(
            ident_ok,
            format!("{ident_count} elements"),
            "all decompose",
        ),
    );

    bruhat_checks(&group, cfg, &mut report);

    if sys.rank() <= 2 && qq <= 3 {
        regularize_checks(&group, &mut report);
    }
    report
}

fn bruhat_round_trip(group: &ChevalleyGroup, g: &GroupElement) -> bool {
    match group.bruhat(g) {
        Ok(form) => {
            let slice = group.slice_roots(group.weyl_index(&form.w));
            let u_ok = group
                .factor_unipotent(&form.u, &group.canonical_ordering())
                .map(|rc| (0..rc.coords.len()).all(|j| rc.get(j) == 0 || slice.contains(&j)))
                .unwrap_or(false);
            u_ok && form.t.is_diagonal() && form.u_prime.is_unipotent_upper() && group.recompose(&form) == *g
        }
        Err(_) => false,
    }
}

fn bruhat_checks(group: &ChevalleyGroup, cfg: &SuiteConfig, report: &mut VerificationReport) {
    let name = group.name();
    let f = group.field();
    let n = group.dim();
    let total = (f.order() as u64).checked_pow((n * n) as u32).unwrap_or(u64::MAX);
    if total <= MATRIX_ENUMERATION_BOUND {
        let mut count: u128 = 0;
        let mut ok = true;
        let mut data = vec![0u32; n * n];
        for _ in 0..total {
            let g = GroupElement::from_raw(f, n, data.clone()).expect("entries in range");
            if group.contains(&g) {
                count += 1;
                ok &= bruhat_round_trip(group, &g);
            }
            for x in data.iter_mut() {
                *x += 1;
                if *x < f.order() {
                    break;
                }
                *x = 0;
            }
        }
        report.push(
            Check::new("group_order", "|G| = q^N prod (q^d - 1) over the degrees d")
                .param("group", &name)
                .compare(count, group.order()),
        );
        report.push(
            Check::new("bruhat_round_trip", "g = u n_w t u' with u in the slice of w, for every g in G")
                .param("group", &name)
                .param("elements", count)
                .param("mode", "exhaustive")
                .outcome(ok, ok, true),
        );
    }
    {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, &format!("{name}/bruhat")));
        let mut ok = true;
        for _ in 0..BRUHAT_SAMPLES {
            ok &= bruhat_round_trip(group, &group.random_element(&mut rng));
        }
        report.push(
            Check::new("bruhat_round_trip", "g = u n_w t u' with u in the slice of w, for random g in G")
                .param("group", &name)
                .param("elements", BRUHAT_SAMPLES)
                .param("mode", "random")
                .outcome(ok, ok, true),
        );
    }
    // (w, u) depends only on gB
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, &format!("{name}/coset")));
    let borel: Vec<GroupElement> = group.generators().into_iter().filter(|g| g.is_upper_triangular()).collect();
    let mut ok = true;
    for _ in 0..200 {
        let g = group.random_element(&mut rng);
        let b = (0..4).fold(group.identity(), |acc, _| acc.mul(&borel[(rng.next_u64() % borel.len() as u64) as usize]));
        ok &= group.coset_key(&g).ok() == group.coset_key(&g.mul(&b)).ok();
    }
    report.push(
        Check::new("coset_key_constant", "the Bruhat data (w, u) of g depends only on gB")
            .param("group", &name)
            .outcome(ok, ok, true),
    );
}

fn regularize_checks(group: &ChevalleyGroup, report: &mut VerificationReport) {
    let name = group.name();
    let q = group.q() as u64;
    let (m, n) = (1, 2);
    for w in group.weyl_elements().into_iter().filter(|w| !w.is_identity()) {
        let (order, k) = group.uw_ordering(&w).expect("valid element");
        let delta = SimpleSubset::from_indices(&group.system().delta_w(w.word()).expect("valid word"));
        let mut ok = true;
        let mut count = 0;
        for u in group.root_products(&order[..k]) {
            count += 1;
            match group.regularize(&u, &w, m, n) {
                Ok((big, y)) => {
                    let bf = big.field().clone();
                    let coords_ok = big
                        .factor_unipotent(&y, &order)
                        .map(|rc| {
                            rc.coords[..k].iter().all(|&c| bf.raw_pow(c, q) != c)
                                && rc.coords[k..].iter().all(|&c| c == 0)
                        })
                        .unwrap_or(false);
                    let yu = y.mul(&u.embed(&bf).expect("subfield"));
                    ok &= coords_ok
                        && big.in_uw(&yu, &w).unwrap_or(false)
                        && big.simple_support(&yu).map(|d| d == delta).unwrap_or(false);
                }
                Err(_) => ok = false,
            }
        }
        report.push(
            Check::new(
                "regularization",
                "y in U_w(F_{q^n}) with coordinates outside F_{q^m} makes y u Delta_w-regular",
            )
            .param("group", &name)
            .param("w", w.word_string())
            .param("m", m)
            .param("n", n)
            .outcome(ok, format!("{count} elements of U_w"), "all regularized"),
        );
    }
}

fn modules_job(t: CartanType, q: u32, ell: u64, cfg: &SuiteConfig) -> VerificationReport {
    let mut report = VerificationReport::new("modules").param("type", t).param("q", q).param("char", ell);
    let result = build_group(t, q, cfg).map_err(ModuleError::from).and_then(|g| {
        let space = Arc::new(CosetSpace::new(g)?);
        if ell == 0 {
            module_checks(&space, Rationals, cfg, &mut report)
        } else {
            let k = PrimeField::new(ell).ok_or(ModuleError::Mismatch)?;
            module_checks(&space, k, cfg, &mut report)
        }
    });
    if let Err(e) = result {
        report.push(Check::new("module_construction", "the module is constructible").outcome(false, e, "a module"));
    }
    report
}

fn module_checks<F: EigenSearch>(
    space: &Arc<CosetSpace>,
    k: F,
    cfg: &SuiteConfig,
    report: &mut VerificationReport,
) -> Result<(), ModuleError> {
    let group = space.group().clone();
    let rank = group.system().rank();
    let rational = k.characteristic() == 0;
    let ps = PrincipalSeries::new(space.clone(), k, cfg.allow_defining_char)?;
    report.push(coset_count_check(space));
    let lattice = ps.lattice();
    report.extend(dimension_partition_check(&ps, &lattice));
    for j in SimpleSubset::all_subsets(rank) {
        report.push(spanning_set_check(&ps, &lattice, j));
        if space.len() <= SPAN_COMPARISON_BOUND {
            report.push(generated_submodule_check(&ps, j));
        }
    }
    if rank == 2 {
        let expected: Option<&[usize]> = if rational && group.cartan_type() == CartanType::A(2) && group.q() == 2 {
            Some(&[8, 14, 20, 21])
        } else {
            None
        };
        report.push(chain_check(&ps, &lattice, expected));
    }
    for i in SimpleSubset::all_subsets(rank) {
        report.push(parabolic_kernel_check(&ps, &lattice, i)?);
    }
    report.extend(alternating_induction_check(&ps, lattice.get(SimpleSubset::all(rank)))?);
    report.extend(action_identities_check(&ps)?);
    if !rational {
        return Ok(());
    }
    let st_dim = (group.q() as usize).pow(group.system().num_positive() as u32);
    if st_dim <= STEINBERG_BOUND {
        report.extend(steinberg_check(space, cfg.seed));
    }
    if group.field().degree().is_multiple_of(2) {
        let w0 = space.weyl_coset_of(&group.weyl().longest(SimpleSubset::all(rank)));
        for root in 0..rank {
            for (eta, label) in [(ps.basis_vector(0), "e_B"), (ps.basis_vector(w0), "e_w0B")] {
                report.push(torus_averaging_check(&ps, root, &eta, label)?);
            }
        }
    }
    if matches!(group.cartan_type(), CartanType::A(_)) {
        for i in SimpleSubset::all_subsets(rank).filter(|i| !i.is_empty()) {
            report.push(coefficient_sum_check(&ps, &lattice, i)?);
        }
    }
    if space.len() <= COMPOSITION_BOUND {
        report.extend(composition_report(&ps, cfg.seed));
    }
    Ok(())
}
