//! Named invariant suites with one `PASS|FAIL <suite>.<check> <detail>` line per check.
//!
//! Horizons, tolerances and frozen onsets below are the values the suites
//! are held to.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::arith::{
    dirichlet_convolve, dirichlet_inverse_neumann, dirichlet_inverse_partition_formula,
    dirichlet_inverse_printed_neumann, dirichlet_inverse_recursive, summatory_sequence, ArithmeticSequence,
    FunctionName, PARTITION_FORMULA_BOUND,
};
use crate::encoding::{decode_with, encode_with, experiment_table_with};
use crate::error::{Error, Result};
use crate::golden::{printed_rows, table_function, GoldenTable, TABLE_IDS};
use crate::par::{self, Execution};
use crate::series::{
    asymptotic_estimate, kernel_coefficients, kernel_set, leading_constant, odd_parts_counts, p_pentagonal_recurrence,
    series_reciprocal, FormulaVariant, KernelKind,
};
use crate::sign::{
    alternation_onset, constant_sign_onset, difference_relation_diagnostic, hypothesis_check, sign_change_count, sgn,
};

/// Prefix length for the Neumann-vs-recursion comparison.
pub const NEUMANN_AGREEMENT_N: usize = 200;
/// Prefix length for `f * f^{-1} = ε`.
pub const EPSILON_IDENTITY_N: usize = 2000;
/// Kernel identities are checked through this order.
pub const KERNEL_ORDER: usize = 2000;
/// Distinct-parts vs odd-parts check order.
pub const EULER_PARTS_ORDER: usize = 500;
/// Growth ordering `|p*| <= |q*| <= q <= p` is checked on this range.
pub const GROWTH_ORDER_RANGE: (usize, usize) = (50, 2000);
/// Encoding roundtrip prefix length.
pub const ROUNDTRIP_N: usize = 512;
/// Number of random sequences in the roundtrip check.
pub const ROUNDTRIP_RANDOM_SEQUENCES: usize = 100;
/// Horizon for the eventual alternation / constancy checks.
pub const SIGN_HORIZON: usize = 2000;
/// Largest acceptable onset for the eventual-sign checks.
pub const ONSET_BOUND: usize = 50;
/// Number of random sequences for the sign-change counter properties.
pub const SIGN_CHANGE_RANDOM_SEQUENCES: usize = 200;
/// Index and bound for the difference-relation diagnostic on `c2[phi^{-1}]`.
pub const DIFFERENCE_CHECK: (usize, f64) = (1500, 0.2);
/// `|p(n)/estimate - 1|` bound and its `n`.
pub const P_RATIO_CHECK: (usize, f64) = (1000, 0.1);
/// `|q*(n)/estimate - 1|` bound and its `n`.
pub const QSTAR_RATIO_CHECK: (usize, f64) = (2000, 0.1);
/// `n` at which the `q(n)` constant is fitted.
pub const Q_CONSTANT_N: usize = 1000;

/// Frozen onsets `(function, alternation onset of c2[f^-1], constant-sign onset of c1[f^-1])`
/// at horizon [`SIGN_HORIZON`].
pub const GOLDEN_ONSETS: [(FunctionName, usize, usize); 4] = [
    (FunctionName::Phi, 3, 3),
    (FunctionName::DivisorCount, 1979, 90),
    (FunctionName::OmegaPlusOne, 1979, 1081),
    (FunctionName::PartitionSeq, 3, 2),
];

/// Indices `1 <= n <= KERNEL_ORDER` with `q*(n) = 0`.
pub const QSTAR_ZERO_SET: [usize; 1] = [2];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    All,
    Inverse,
    Kernels,
    Encodings,
    Signs,
    Asymptotics,
}

impl Suite {
    pub const NAMED: [Suite; 5] = [Suite::Inverse, Suite::Kernels, Suite::Encodings, Suite::Signs, Suite::Asymptotics];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Inverse => "inverse",
            Suite::Kernels => "kernels",
            Suite::Encodings => "encodings",
            Suite::Signs => "signs",
            Suite::Asymptotics => "asymptotics",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        std::iter::once(Suite::All)
            .chain(Suite::NAMED)
            .find(|suite| suite.as_str() == s)
            .ok_or_else(|| Error::Name(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub suite: Suite,
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(suite: Suite, check: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CheckResult {
            suite,
            check: check.into(),
            passed,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {}.{} {}", self.suite, self.check, self.detail)
    }
}

type Job = Box<dyn Fn() -> Vec<CheckResult> + Send + Sync>;

/// Runs every check of `suite`; independent checks fan out under `exec`.
pub fn run_suite(suite: Suite, exec: Execution) -> Vec<CheckResult> {
    let suites: Vec<Suite> = match suite {
        Suite::All => Suite::NAMED.to_vec(),
        one => vec![one],
    };
    let jobs: Vec<Job> = suites.into_iter().flat_map(jobs_for).collect();
    par::map_slice(exec, &jobs, |job| job()).into_iter().flatten().collect()
}

fn jobs_for(suite: Suite) -> Vec<Job> {
    match suite {
        Suite::All => unreachable!("expanded by run_suite"),
        Suite::Inverse => {
            let mut jobs: Vec<Job> = Vec::new();
            for name in FunctionName::ALL {
                jobs.push(Box::new(move || vec![neumann_agreement(name), epsilon_identity(name)]));
            }
            jobs.push(Box::new(partition_formula_records));
            jobs.push(Box::new(|| vec![printed_neumann_record()]));
            jobs
        }
        Suite::Kernels => vec![
            Box::new(|| vec![pentagonal_vs_product()]),
            Box::new(|| vec![reciprocal_pair(KernelKind::Q), reciprocal_pair(KernelKind::PStar)]),
            Box::new(|| vec![double_reciprocal()]),
            Box::new(|| vec![euler_distinct_odd()]),
            Box::new(|| vec![qstar_sign_pattern(), growth_ordering()]),
        ],
        Suite::Encodings => {
            let mut jobs: Vec<Job> = vec![
                Box::new(|| vec![roundtrip_registry()]),
                Box::new(|| vec![roundtrip_random()]),
                Box::new(|| vec![linearity()]),
            ];
            for id in TABLE_IDS {
                jobs.push(Box::new(move || vec![golden_table(id)]));
            }
            jobs
        }
        Suite::Signs => {
            let mut jobs: Vec<Job> = Vec::new();
            for (name, alt, con) in GOLDEN_ONSETS {
                jobs.push(Box::new(move || sign_onsets(name, alt, con)));
            }
            jobs.push(Box::new(|| vec![double_factorial_alternation()]));
            jobs.push(Box::new(|| vec![mertens_sign_changes(), sign_change_properties()]));
            jobs.push(Box::new(|| vec![difference_relation()]));
            jobs.push(Box::new(|| vec![hypotheses()]));
            jobs
        }
        Suite::Asymptotics => vec![Box::new(|| {
            vec![p_ratio(), qstar_estimate_sign(), qstar_ratio(), q_constant()]
        })],
    }
}

fn failed(suite: Suite, check: impl Into<String>, err: Error) -> CheckResult {
    CheckResult::new(suite, check, false, format!("error: {err}"))
}

fn neumann_agreement(name: FunctionName) -> CheckResult {
    let check = format!("neumann_agreement[{name}]");
    let run = || -> Result<CheckResult> {
        let f = name.sequence(NEUMANN_AGREEMENT_N)?;
        let rec = dirichlet_inverse_recursive(&f)?;
        let neu = dirichlet_inverse_neumann(&f)?;
        let first = (1..=f.len()).find(|&n| rec.at(n) != neu.at(n));
        Ok(CheckResult::new(
            Suite::Inverse,
            check.clone(),
            first.is_none(),
            match first {
                None => format!("N={NEUMANN_AGREEMENT_N} identical"),
                Some(n) => format!("N={NEUMANN_AGREEMENT_N} first difference at n={n}"),
            },
        ))
    };
    run().unwrap_or_else(|e| failed(Suite::Inverse, check.clone(), e))
}

fn epsilon_identity(name: FunctionName) -> CheckResult {
    let check = format!("epsilon_identity[{name}]");
    let run = || -> Result<CheckResult> {
        let f = name.sequence(EPSILON_IDENTITY_N)?;
        let inv = dirichlet_inverse_recursive(&f)?;
        let ok = dirichlet_convolve(&f, &inv)?.is_epsilon();
        Ok(CheckResult::new(Suite::Inverse, check.clone(), ok, format!("N={EPSILON_IDENTITY_N}")))
    };
    run().unwrap_or_else(|e| failed(Suite::Inverse, check.clone(), e))
}

/// The partition expansion is recorded, not required to match.
fn partition_formula_records() -> Vec<CheckResult> {
    [
        FunctionName::Phi,
        FunctionName::DivisorCount,
        FunctionName::OmegaPlusOne,
        FunctionName::PartitionSeq,
        FunctionName::Epsilon,
    ]
    .into_iter()
    .map(|name| {
        let check = format!("partition_formula[{name}]");
        let run = || -> Result<CheckResult> {
            let f = name.sequence(PARTITION_FORMULA_BOUND)?;
            let mut matched = Vec::new();
            for n in 2..=PARTITION_FORMULA_BOUND {
                if dirichlet_inverse_partition_formula(&f, n)?.matches {
                    matched.push(n);
                }
            }
            let total = PARTITION_FORMULA_BOUND - 1;
            Ok(CheckResult::new(
                Suite::Inverse,
                check.clone(),
                true,
                format!(
                    "recorded n=2..{PARTITION_FORMULA_BOUND}: {} of {total} match the recursive inverse{}",
                    matched.len(),
                    if matched.is_empty() || matched.len() == total {
                        String::new()
                    } else {
                        format!(" (matching n: {:?})", matched)
                    }
                ),
            ))
        };
        run().unwrap_or_else(|e| failed(Suite::Inverse, check.clone(), e))
    })
    .collect()
}

fn printed_neumann_record() -> CheckResult {
    let check = "printed_neumann[phi]";
    let run = || -> Result<CheckResult> {
        let f = FunctionName::Phi.sequence(NEUMANN_AGREEMENT_N)?;
        let printed = dirichlet_inverse_printed_neumann(&f)?;
        let rec = dirichlet_inverse_recursive(&f)?;
        let differing = (1..=f.len()).filter(|&n| printed.at(n) != rec.at(n)).count();
        Ok(CheckResult::new(
            Suite::Inverse,
            check,
            true,
            format!(
                "recorded: as-typeset m-fold identity differs from f^-1 at {differing} of {} terms (value at n=1: {})",
                f.len(),
                printed.at(1)
            ),
        ))
    };
    run().unwrap_or_else(|e| failed(Suite::Inverse, check, e))
}

fn pentagonal_vs_product() -> CheckResult {
    let ok = p_pentagonal_recurrence(KERNEL_ORDER).coeffs() == kernel_coefficients(KernelKind::P, KERNEL_ORDER).coeffs();
    CheckResult::new(Suite::Kernels, "pentagonal_vs_product", ok, format!("n<={KERNEL_ORDER}"))
}

fn reciprocal_pair(direct: KernelKind) -> CheckResult {
    let base = kernel_coefficients(direct, KERNEL_ORDER);
    let expected = kernel_coefficients(direct.reciprocal(), KERNEL_ORDER);
    let ok = series_reciprocal(&base).is_ok_and(|r| r.coeffs() == expected.coeffs());
    CheckResult::new(
        Suite::Kernels,
        format!("reciprocal[{}={}^-1]", direct.reciprocal(), direct),
        ok,
        format!("n<={KERNEL_ORDER}"),
    )
}

fn double_reciprocal() -> CheckResult {
    let set = kernel_set(KERNEL_ORDER);
    let ok = KernelKind::ALL.into_iter().all(|kind| {
        let a = set.get(kind).truncated(KERNEL_ORDER);
        series_reciprocal(&a)
            .and_then(|r| series_reciprocal(&r))
            .is_ok_and(|rr| rr.coeffs() == a.coeffs())
    });
    CheckResult::new(Suite::Kernels, "double_reciprocal", ok, format!("all kernels, n<={KERNEL_ORDER}"))
}

fn euler_distinct_odd() -> CheckResult {
    let ok = odd_parts_counts(EULER_PARTS_ORDER).coeffs() == kernel_coefficients(KernelKind::Q, EULER_PARTS_ORDER).coeffs();
    CheckResult::new(Suite::Kernels, "distinct_equals_odd_parts", ok, format!("n<={EULER_PARTS_ORDER}"))
}

fn qstar_sign_pattern() -> CheckResult {
    let set = kernel_set(KERNEL_ORDER);
    let qstar = set.get(KernelKind::QStar);
    let zeros: Vec<usize> = (1..=KERNEL_ORDER).filter(|&n| qstar.coeffs()[n].is_zero()).collect();
    let wrong_sign: Vec<usize> = (1..=KERNEL_ORDER)
        .filter(|&n| {
            let v = &qstar.coeffs()[n];
            !v.is_zero() && (sgn(v) == 1) != (n % 2 == 0)
        })
        .collect();
    let ok = zeros == QSTAR_ZERO_SET && wrong_sign.is_empty();
    CheckResult::new(
        Suite::Kernels,
        "qstar_sign_pattern",
        ok,
        format!("n<={KERNEL_ORDER} zeros={zeros:?} sign_violations={}", wrong_sign.len()),
    )
}

fn growth_ordering() -> CheckResult {
    let set = kernel_set(GROWTH_ORDER_RANGE.1);
    let (lo, hi) = GROWTH_ORDER_RANGE;
    let c = |kind: KernelKind, n: usize| set.get(kind).coeffs()[n].abs();
    let first_bad = (lo..=hi).find(|&n| {
        !(c(KernelKind::PStar, n) <= c(KernelKind::QStar, n)
            && c(KernelKind::QStar, n) <= c(KernelKind::Q, n)
            && c(KernelKind::Q, n) <= c(KernelKind::P, n))
    });
    CheckResult::new(
        Suite::Kernels,
        "growth_ordering",
        first_bad.is_none(),
        match first_bad {
            None => format!("|p*|<=|q*|<=q<=p on [{lo},{hi}]"),
            Some(n) => format!("ordering fails at n={n}"),
        },
    )
}

fn roundtrip_registry() -> CheckResult {
    let kernels = kernel_set(ROUNDTRIP_N);
    let failures: Vec<String> = FunctionName::ALL
        .into_iter()
        .flat_map(|name| KernelKind::ALL.into_iter().map(move |kind| (name, kind)))
        .filter(|&(name, kind)| {
            let f = name.sequence(ROUNDTRIP_N).expect("registry");
            let c = encode_with(&f, kind, &kernels, Execution::default());
            decode_with(&c, &kernels, Execution::default()).values() != f.values() || c.values().at(1) != f.at(1)
        })
        .map(|(name, kind)| format!("{name}/{kind}"))
        .collect();
    CheckResult::new(
        Suite::Encodings,
        "roundtrip_registry",
        failures.is_empty(),
        format!("N={ROUNDTRIP_N} functions={} kernels=4 failures={failures:?}", FunctionName::ALL.len()),
    )
}

/// Deterministic random integer sequences for the property checks.
pub fn random_sequences(count: usize, len: usize, bound: i64, seed: u64) -> Vec<ArithmeticSequence> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            ArithmeticSequence::new((0..len).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect())
                .expect("len >= 1")
        })
        .collect()
}

fn roundtrip_random() -> CheckResult {
    let kernels = kernel_set(ROUNDTRIP_N);
    let sequences = random_sequences(ROUNDTRIP_RANDOM_SEQUENCES, ROUNDTRIP_N, 1_000_000, 0x5eed);
    let bad = sequences
        .iter()
        .filter(|f| {
            KernelKind::ALL.into_iter().any(|kind| {
                let c = encode_with(f, kind, &kernels, Execution::Sequential);
                decode_with(&c, &kernels, Execution::Sequential).values() != f.values()
            })
        })
        .count();
    CheckResult::new(
        Suite::Encodings,
        "roundtrip_random",
        bad == 0,
        format!("{ROUNDTRIP_RANDOM_SEQUENCES} sequences N={ROUNDTRIP_N} failures={bad}"),
    )
}

fn linearity() -> CheckResult {
    let n = 256;
    let kernels = kernel_set(n);
    let seqs = random_sequences(6, n, 100, 0x11ea);
    let mut ok = true;
    for pair in seqs.chunks(2) {
        for (alpha, beta) in [(2i64, -3i64), (-1, 5)] {
            let (a, b) = (BigInt::from(alpha), BigInt::from(beta));
            let combo = pair[0].linear_combination(&a, &pair[1], &b).expect("equal lengths");
            for kind in KernelKind::ALL {
                let lhs = encode_with(&combo, kind, &kernels, Execution::Sequential).into_values();
                let rhs = encode_with(&pair[0], kind, &kernels, Execution::Sequential)
                    .into_values()
                    .linear_combination(&a, &encode_with(&pair[1], kind, &kernels, Execution::Sequential).into_values(), &b)
                    .expect("equal lengths");
                ok &= lhs.values() == rhs.values();
            }
        }
    }
    CheckResult::new(Suite::Encodings, "linearity", ok, format!("N={n}"))
}

fn golden_table(id: u8) -> CheckResult {
    let check = format!("golden_table[{id}]");
    let run = || -> Result<CheckResult> {
        let golden = GoldenTable::embedded(id)?;
        let table = experiment_table_with(table_function(id)?, printed_rows(id), Execution::Sequential)?;
        let cmp = table.compare(&golden);
        let blocking: Vec<String> = cmp
            .blocking_mismatches()
            .map(|c| format!("{}@{}", c.column.header(), c.n))
            .collect();
        let c3 = cmp.known_discrepancies().count();
        Ok(CheckResult::new(
            Suite::Encodings,
            check.clone(),
            blocking.is_empty(),
            format!(
                "rows={} matched={} mismatches={blocking:?} c3_discrepancies={c3} (known, informational)",
                golden.rows.len(),
                cmp.matched()
            ),
        ))
    };
    run().unwrap_or_else(|e| failed(Suite::Encodings, check.clone(), e))
}

/// Onsets of alternation of `c2[f^-1]` and constant sign of `c1[f^-1]` at the horizon.
pub fn sign_onsets_for(name: FunctionName, horizon: usize) -> Result<(Option<usize>, Option<usize>)> {
    let f = name.sequence(horizon)?;
    let finv = dirichlet_inverse_recursive(&f)?;
    let kernels = kernel_set(horizon);
    let c2 = encode_with(&finv, KernelKind::QStar, &kernels, Execution::default());
    let c1 = encode_with(&finv, KernelKind::Q, &kernels, Execution::default());
    Ok((alternation_onset(c2.values())?.onset, constant_sign_onset(c1.values()).onset))
}

fn sign_onsets(name: FunctionName, golden_alt: usize, golden_con: usize) -> Vec<CheckResult> {
    match sign_onsets_for(name, SIGN_HORIZON) {
        Err(e) => vec![failed(Suite::Signs, format!("sign_onsets[{name}]"), e)],
        Ok((alt, con)) => {
            let show = |o: Option<usize>| o.map_or("none".to_string(), |v| v.to_string());
            let golden_ok = alt == Some(golden_alt) && con == Some(golden_con);
            let bound_ok = alt.is_some_and(|o| o <= ONSET_BOUND) && con.is_some_and(|o| o <= ONSET_BOUND);
            vec![
                CheckResult::new(
                    Suite::Signs,
                    format!("golden_onsets[{name}]"),
                    golden_ok,
                    format!(
                        "horizon={SIGN_HORIZON} c2_alternation_onset={} c1_constant_onset={} frozen=({golden_alt},{golden_con})",
                        show(alt),
                        show(con)
                    ),
                ),
                CheckResult::new(
                    Suite::Signs,
                    format!("onset_bound[{name}]"),
                    bound_ok,
                    format!(
                        "horizon={SIGN_HORIZON} c2_alternation_onset={} c1_constant_onset={} bound={ONSET_BOUND}",
                        show(alt),
                        show(con)
                    ),
                ),
            ]
        }
    }
}

fn double_factorial_alternation() -> CheckResult {
    let check = "alternation_fails[double_factorial_odd]";
    match sign_onsets_for(FunctionName::DoubleFactorialOdd, SIGN_HORIZON) {
        Ok((alt, _)) => CheckResult::new(
            Suite::Signs,
            check,
            alt.is_none_or(|o| o > ONSET_BOUND),
            format!(
                "horizon={SIGN_HORIZON} c2_alternation_onset={}",
                alt.map_or("none".to_string(), |o| o.to_string())
            ),
        ),
        Err(e) => failed(Suite::Signs, check, e),
    }
}

fn mertens_sign_changes() -> CheckResult {
    let mertens = summatory_sequence(&FunctionName::Mobius.sequence(10).expect("registry"));
    let v = sign_change_count(&mertens, 10).unwrap_or(usize::MAX);
    CheckResult::new(Suite::Signs, "mertens_sign_changes", v == 1, format!("V(M,10)={v}"))
}

fn sign_change_properties() -> CheckResult {
    let mut rng = StdRng::seed_from_u64(0x51);
    let mut ok = true;
    for _ in 0..SIGN_CHANGE_RANDOM_SEQUENCES {
        let len = rng.gen_range(1..=120);
        let values: Vec<i64> = (0..len).map(|_| rng.gen_range(-3..=3)).collect();
        let s = ArithmeticSequence::from_i64s(&values).expect("len >= 1");
        let neg = s.negated();
        let mut last = 0;
        for y in 1..=len {
            let v = sign_change_count(&s, y).expect("in range");
            ok &= v >= last && v == sign_change_count(&neg, y).expect("in range");
            last = v;
        }
    }
    CheckResult::new(
        Suite::Signs,
        "sign_change_properties",
        ok,
        format!("{SIGN_CHANGE_RANDOM_SEQUENCES} random sequences: monotone in Y, negation invariant"),
    )
}

fn difference_relation() -> CheckResult {
    let (at, bound) = DIFFERENCE_CHECK;
    let check = "difference_relation[phi]";
    let run = || -> Result<CheckResult> {
        let f = FunctionName::Phi.sequence(at + 1)?;
        let finv = dirichlet_inverse_recursive(&f)?;
        let c2 = encode_with(&finv, KernelKind::QStar, &kernel_set(at + 1), Execution::default());
        let points = difference_relation_diagnostic(&c2)?;
        let r = points[at - 1].ratio();
        Ok(CheckResult::new(
            Suite::Signs,
            check,
            r.is_some_and(|r| r.abs() < bound),
            format!("r({at})={} bound={bound}", r.map_or("gap".into(), |r| format!("{r:.6}"))),
        ))
    };
    run().unwrap_or_else(|e| failed(Suite::Signs, check, e))
}

fn hypotheses() -> CheckResult {
    let n = SIGN_HORIZON;
    let set = kernel_set(n);
    let qstar = set.get(KernelKind::QStar);
    let verdict = |name: FunctionName| hypothesis_check(&name.sequence(n).expect("registry"), qstar);
    let run = || -> Result<CheckResult> {
        let phi = verdict(FunctionName::Phi)?;
        let qs = verdict(FunctionName::QStarSeq)?;
        let dfo = verdict(FunctionName::DoubleFactorialOdd)?;
        let ok = phi.positivity_ok
            && phi.growth_ok
            && !qs.positivity_ok
            && qs.first_violation == Some(1)
            && !dfo.growth_ok;
        Ok(CheckResult::new(
            Suite::Signs,
            "hypotheses",
            ok,
            format!(
                "N={n} phi(positive={}, growth={}, C={:.4}) qstar_seq(positive={}, first_violation={:?}) double_factorial_odd(growth={})",
                phi.positivity_ok, phi.growth_ok, phi.fitted_c, qs.positivity_ok, qs.first_violation, dfo.growth_ok
            ),
        ))
    };
    run().unwrap_or_else(|e| failed(Suite::Signs, "hypotheses", e))
}

fn p_ratio() -> CheckResult {
    let (n, tol) = P_RATIO_CHECK;
    match asymptotic_estimate(KernelKind::P, n, FormulaVariant::StandardLiterature) {
        Ok(r) => CheckResult::new(
            Suite::Asymptotics,
            "p_ratio",
            (r.ratio - 1.0).abs() <= tol,
            format!("n={n} ratio={:.6} tol={tol}", r.ratio),
        ),
        Err(e) => failed(Suite::Asymptotics, "p_ratio", e),
    }
}

fn qstar_estimate_sign() -> CheckResult {
    let bad: Vec<usize> = (2..=200)
        .filter(|&n| {
            asymptotic_estimate(KernelKind::QStar, n, FormulaVariant::AsPrinted)
                .map_or(true, |r| r.estimate.signum() != if n % 2 == 0 { 1.0 } else { -1.0 })
        })
        .collect();
    CheckResult::new(
        Suite::Asymptotics,
        "qstar_estimate_sign",
        bad.is_empty(),
        format!("n=2..200 sign(estimate)=(-1)^n violations={bad:?}"),
    )
}

fn qstar_ratio() -> CheckResult {
    let (n, tol) = QSTAR_RATIO_CHECK;
    match asymptotic_estimate(KernelKind::QStar, n, FormulaVariant::AsPrinted) {
        Ok(r) => CheckResult::new(
            Suite::Asymptotics,
            "qstar_ratio",
            (r.ratio - 1.0).abs() <= tol,
            format!("n={n} ratio={:.6} tol={tol}", r.ratio),
        ),
        Err(e) => failed(Suite::Asymptotics, "qstar_ratio", e),
    }
}

fn q_constant() -> CheckResult {
    let n = Q_CONSTANT_N;
    let run = || -> Result<CheckResult> {
        let printed = asymptotic_estimate(KernelKind::Q, n, FormulaVariant::AsPrinted)?;
        let standard = asymptotic_estimate(KernelKind::Q, n, FormulaVariant::StandardLiterature)?;
        let fitted = standard.fitted_constant;
        let c_std = leading_constant(KernelKind::Q, FormulaVariant::StandardLiterature)?;
        let c_printed = leading_constant(KernelKind::Q, FormulaVariant::AsPrinted)?;
        Ok(CheckResult::new(
            Suite::Asymptotics,
            "q_constant",
            (fitted - c_std).abs() < (fitted - c_printed).abs(),
            format!(
                "n={n} fitted={fitted:.6} standard={c_std:.6} (ratio {:.6}) as-printed={c_printed:.6} (ratio {:.6})",
                standard.ratio, printed.ratio
            ),
        ))
    };
    run().unwrap_or_else(|e| failed(Suite::Asymptotics, "q_constant", e))
}
