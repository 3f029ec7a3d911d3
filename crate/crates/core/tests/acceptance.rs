//! Acceptance run: one PASS/FAIL line per criterion, each at its full bound.
//!
//! A criterion may list known false sub-claims. They print FAIL with their
//! witness; the run still succeeds as long as the witness reproduces
//! exactly. Any other failure, or a known failure that stops reproducing,
//! exits nonzero.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use paperfold::automata::verify_exhaustive;
use paperfold::contfrac::{
    alpha_value, cf_from_rational, cf_theorem_check, cf_theorem_check_with, fold_step,
    predicted_cf, set_parity, ContinuedFraction, Parity,
};
use paperfold::foldcore::{FoldCode, Sign};
use paperfold::runs::{digits, find_squares, run_word, FactorInventory, FactorWindow};
use paperfold::theorems::{self as th, CheckReport};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::{corrupt_on, machines, regular_machines, Target, ALL_KINDS, SAMPLE_WIDTH};

/// A sub-claim known to be false, and the exact witness it must produce.
struct KnownFalse {
    name: &'static str,
    witness: &'static str,
    why: &'static str,
}

const KNOWN_FALSE: &[KnownFalse] = &[KnownFalse {
    name: "right_special_at_most_four",
    witness: "f=++++++++++++++ n=5 count=5",
    why: "p(5)=23, p(6)=28: 13212,12312,22321,23221,32123 are all right-special",
}];

struct Outcome {
    reports: Vec<CheckReport>,
}

impl Outcome {
    fn unexpected(&self) -> Vec<&CheckReport> {
        self.reports
            .iter()
            .filter(|r| !r.passed() && !is_known(r))
            .collect()
    }
}

fn is_known(r: &CheckReport) -> bool {
    KNOWN_FALSE
        .iter()
        .any(|k| k.name == r.name && r.witness.as_deref() == Some(k.witness))
}

fn golden(args: &[&str], file: &str) -> CheckReport {
    let path = format!("{}/tests/golden/{file}", env!("CARGO_MANIFEST_DIR"));
    let expected = std::fs::read_to_string(&path).expect("golden file");
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("paperfold").chain(args.iter().copied());
    let code = paperfold::cli::run(argv, &mut out, &mut err);
    let got = String::from_utf8(out).expect("utf-8 output");
    let witness = if code != 0 {
        Some(format!("exit={code} stderr={}", String::from_utf8_lossy(&err)))
    } else {
        got.lines()
            .zip(expected.lines())
            .position(|(a, b)| a != b)
            .map(|i| format!("line {}: got {:?}", i + 1, got.lines().nth(i).unwrap()))
            .or_else(|| (got != expected).then(|| "length differs".to_string()))
    };
    CheckReport::from_witness(format!("golden_{file}"), args.join(" "), witness)
}

fn c1() -> Vec<CheckReport> {
    vec![
        golden(&["gen", "--regular", "--length", "5", "--terms", "16"], "table1_regular_terms.tsv"),
        golden(&["gen", "--code", "++++"], "table2_word.tsv"),
        golden(&["runs", "--code", "++++"], "table2_runs.tsv"),
    ]
}

fn c2() -> Vec<CheckReport> {
    vec![th::prop1(12), th::prop4(12)]
}

fn c3() -> Vec<CheckReport> {
    vec![th::thm3(12, None)]
}

fn c4() -> Vec<CheckReport> {
    vec![th::overlap_free(10)]
}

fn c5() -> Vec<CheckReport> {
    let mut union = FactorInventory::new(0);
    for t in 1..=10 {
        for f in FoldCode::all_of_length(t) {
            union.merge(find_squares(&run_word(&f).unwrap()));
        }
    }
    let found = union.sorted_strings();
    let expected: BTreeSet<String> = th::EXPECTED_SQUARES.iter().map(|s| s.to_string()).collect();
    let witness = (found.iter().cloned().collect::<BTreeSet<_>>() != expected)
        .then(|| format!("union={}", found.join(",")));
    vec![
        th::square_orders(10),
        th::squares_of_order_one(10),
        th::squares_of_order_three(10),
        CheckReport::from_witness("square_union", "t<=10", witness),
        th::squares_present(7),
    ]
}

fn c6() -> Vec<CheckReport> {
    vec![th::palindromes(9, 7)]
}

fn c7() -> Vec<CheckReport> {
    let window = FactorWindow::new(&FoldCode::regular(14), 7).unwrap();
    let p6 = window.complexity(6);
    let r6: Vec<String> = window.right_special(6).iter().map(|w| digits(w)).collect();
    vec![
        th::complexity(6, 30, 14),
        CheckReport::from_witness(
            "p6_is_28",
            "t=14",
            (p6 != 28).then(|| format!("p(6)={p6}")),
        ),
        th::right_special_four(6, 30, 14),
        th::right_special_at_most_four(6, 30, 14),
        CheckReport::pass("right_special_of_length_6", format!("t=14 {}", r6.join(","))),
        th::right_special_at_most_four(5, 5, 14),
    ]
}

fn c8() -> Vec<CheckReport> {
    let m = machines();
    let mut out = th::automata_suite(m, 10);
    out.extend(th::sp_suite(&m.sp, 10));
    out.push(th::ep_from_sp(m, 10));
    out
}

fn c9() -> Vec<CheckReport> {
    th::regular_suite(regular_machines(), 100_000)
}

fn random_positive(rng: &mut StdRng, max_bits: usize) -> BigInt {
    let bits = rng.gen_range(2..=max_bits);
    let words: Vec<u32> = (0..bits.div_ceil(32)).map(|_| rng.gen()).collect();
    let mut x = BigUint::from_slice(&words);
    x %= BigUint::one() << bits;
    BigInt::from(x) + 2
}

fn fold_identities(count: usize) -> CheckReport {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for i in 0..count {
        let q = random_positive(&mut rng, 512);
        let mut p = random_positive(&mut rng, 512) % &q;
        while !p.gcd(&q).is_one() || p < BigInt::one() {
            p = random_positive(&mut rng, 512) % &q;
        }
        let r = BigRational::new(p, q.clone());
        let eps = if rng.gen() { Sign::Plus } else { Sign::Minus };
        let cf = set_parity(&cf_from_rational(&r), Parity::Odd).unwrap();
        let folded = fold_step(&cf, eps).unwrap().value();
        let expected = &r + BigRational::new(BigInt::from(eps.to_i8()), &q * &q);
        if folded != expected {
            return CheckReport::fail("fold_identity", format!("{count} random"), format!("case={i} r={r}"));
        }
    }
    CheckReport::pass("fold_identity", format!("{count} random, q<2^512"))
}

fn c10() -> Vec<CheckReport> {
    let eps: Vec<Sign> = [1, -1, -1, 1].iter().map(|&s| Sign::from_i8(s).unwrap()).collect();
    let example = ContinuedFraction::from_i64(&[0, 1, 4, 4, 2, 6, 4, 2, 4, 4, 6, 4, 2, 4, 6, 2, 4, 5]).unwrap();
    let alpha = alpha_value(&eps).unwrap();
    let worked = alpha == BigRational::new(3472818177u64.into(), BigInt::one() << 32)
        && cf_from_rational(&alpha) == example
        && predicted_cf(&eps).unwrap() == example;
    vec![
        cf_theorem_check(12),
        CheckReport::from_witness(
            "cf_worked_example",
            "n=5",
            (!worked).then(|| format!("alpha={alpha} cf={}", cf_from_rational(&alpha))),
        ),
        fold_identities(500),
    ]
}

fn automaton_mutations(per_kind: usize) -> Vec<CheckReport> {
    let mut rng = StdRng::seed_from_u64(0xc0ffee);
    ALL_KINDS
        .iter()
        .map(|&kind| {
            let target = Target::new(kind);
            let name = format!("mutation_{kind:?}").to_lowercase();
            let bound = format!("{per_kind} corruptions, depth={SAMPLE_WIDTH}");
            if let Some(cex) = verify_exhaustive(&target.automaton, target.oracle.as_ref(), SAMPLE_WIDTH).unwrap() {
                return CheckReport::fail(name, bound, format!("original fails: {cex:?}"));
            }
            let mut done = 0;
            while done < per_kind {
                let word = target.sample(&mut rng);
                let Some((mutant, q, a, r)) = corrupt_on(&target.automaton, &word, target.label(&word), &mut rng) else {
                    continue;
                };
                done += 1;
                let found = verify_exhaustive(&mutant, target.oracle.as_ref(), SAMPLE_WIDTH).unwrap();
                if found.is_none() {
                    return CheckReport::fail(name, bound, format!("undetected: delta({q},{a}) -> {r}"));
                }
            }
            CheckReport::pass(name, bound)
        })
        .collect()
}

fn cf_mutations() -> CheckReport {
    let mut rng = StdRng::seed_from_u64(7);
    for n in 2..=8usize {
        let victim: Vec<Sign> = (1..n)
            .map(|_| if rng.gen() { Sign::Plus } else { Sign::Minus })
            .collect();
        let len = predicted_cf(&victim).unwrap().terms().len();
        let slot = rng.gen_range(1..len);
        let report = cf_theorem_check_with(n, &|eps| {
            let mut terms = predicted_cf(eps)?.terms().to_vec();
            if eps == victim.as_slice() {
                terms[slot] += 1;
            }
            ContinuedFraction::new(terms)
        });
        let tag: Vec<String> = victim.iter().map(|s| s.as_char().to_string()).collect();
        let expected = format!("eps={} ", tag.join(","));
        if !report.witness.as_deref().is_some_and(|w| w.starts_with(&expected)) {
            return CheckReport::fail("mutation_cf", "n<=8", format!("term {slot} of {expected}: {report}"));
        }
    }
    CheckReport::pass("mutation_cf", "n<=8, one term each")
}

fn c11() -> Vec<CheckReport> {
    let mut out = automaton_mutations(20);
    out.push(cf_mutations());
    out
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Vec<CheckReport>);
    let criteria: [Criterion; 11] = [
        ("CLI tables match the golden files", c1),
        ("run count and run lengths, t<=12", c2),
        ("end positions from the associated code, t<=12", c3),
        ("run-length words are overlap-free, t<=10", c4),
        ("squares are 22, 123123, 321321, t<=10", c5),
        ("palindromes, t=9, length<=7", c6),
        ("complexity 4n+4 and right-special factors", c7),
        ("inferred automata: counts and oracle agreement", c8),
        ("regular sequence and tt", c9),
        ("continued fraction of alpha", c10),
        ("corruptions are always detected", c11),
    ];
    let mut ok = true;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let clock = Instant::now();
        let outcome = Outcome { reports: run() };
        let secs = clock.elapsed().as_secs_f64();
        let failed: Vec<&CheckReport> = outcome.reports.iter().filter(|r| !r.passed()).collect();
        let verdict = if failed.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {verdict} {title} ({} checks, {secs:.1}s)", i + 1, outcome.reports.len());
        for r in &failed {
            match KNOWN_FALSE.iter().find(|k| k.name == r.name && r.witness.as_deref() == Some(k.witness)) {
                Some(k) => println!("    known false: {r} ({})", k.why),
                None => println!("    {r}"),
            }
        }
        ok &= outcome.unexpected().is_empty();
    }
    for k in KNOWN_FALSE {
        println!("note: {} is expected to fail with {}", k.name, k.witness);
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
