use std::collections::BTreeSet;

use crate::automata::{Automaton, Relation};
use crate::foldcore::FoldCode;
use crate::runs::{
    digits, find_overlaps, find_palindromes, find_squares, max_right_extensions, min_code_len,
    predicted_end_positions, run_word, runs_of, FactorInventory, FactorWindow,
};

use super::CheckReport;

pub const EXPECTED_SQUARES: [&str; 3] = ["22", "123123", "321321"];
pub const EXPECTED_PALINDROMES: [&str; 8] = ["1", "2", "3", "22", "212", "232", "12321", "32123"];

fn codes(lo: usize, hi: usize) -> impl Iterator<Item = FoldCode> {
    (lo..=hi).flat_map(FoldCode::all_of_length)
}

fn rw(code: &FoldCode) -> Vec<u8> {
    run_word(code).expect("nonempty code")
}

/// Run count is `2^{t−1}`.
pub fn prop1(max_len: usize) -> CheckReport {
    let witness = codes(1, max_len).find_map(|f| {
        let count = runs_of(&f).expect("nonempty code").len();
        (count as u64 != 1 << (f.effective_len() - 1)).then(|| format!("f={f} runs={count}"))
    });
    CheckReport::from_witness("prop1_run_count", format!("t<={max_len}"), witness)
}

/// Every run has length 1, 2 or 3.
pub fn prop4(max_len: usize) -> CheckReport {
    let witness = codes(1, max_len).find_map(|f| {
        let r = rw(&f);
        r.iter()
            .position(|l| !(1..=3).contains(l))
            .map(|i| format!("f={f} n={} R={}", i + 1, r[i]))
    });
    CheckReport::from_witness("prop4_run_lengths", format!("t<={max_len}"), witness)
}

/// `E_f[n] = 2n − ε_n` below the last run, with `ε` read from the
/// associated code; also checked through `ep` when given.
pub fn thm3(max_len: usize, ep: Option<&Automaton>) -> CheckReport {
    let relation = ep.map(Relation::new);
    let witness = codes(2, max_len).find_map(|f| {
        let runs = runs_of(&f).expect("nonempty code");
        let predicted = predicted_end_positions(&f).expect("t >= 2");
        predicted.iter().enumerate().find_map(|(i, &e)| {
            let n = i as u64 + 1;
            if runs.ends()[i] != e {
                return Some(format!("f={f} n={n} E={} predicted={e}", runs.ends()[i]));
            }
            let rel = relation.as_ref()?;
            let got = rel.values_exact(Some(&f), &[n], f.effective_len() + 1);
            (got != [e]).then(|| format!("f={f} n={n} ep={got:?} predicted={e}"))
        })
    });
    let bound = format!("t<={max_len}{}", if ep.is_some() { " +ep" } else { "" });
    CheckReport::from_witness("thm3_end_positions", bound, witness)
}

pub fn overlap_free(max_len: usize) -> CheckReport {
    let witness = codes(1, max_len).find_map(|f| {
        find_overlaps(&rw(&f))
            .first()
            .map(|(i, n)| format!("f={f} i={i} period={n}"))
    });
    CheckReport::from_witness("overlap_free", format!("t<={max_len}"), witness)
}

fn square_union(max_len: usize) -> Vec<(FoldCode, FactorInventory)> {
    codes(1, max_len).map(|f| {
        let sq = find_squares(&rw(&f));
        (f, sq)
    })
    .collect()
}

fn first_square(
    all: &[(FoldCode, FactorInventory)],
    bad: impl Fn(&[u8]) -> bool,
) -> Option<String> {
    all.iter().find_map(|(f, inv)| {
        inv.factors
            .iter()
            .find(|w| bad(w))
            .map(|w| format!("f={f} square={}", digits(w)))
    })
}

/// Every square `zz` has `|z|` equal to 1 or 3.
pub fn square_orders(max_len: usize) -> CheckReport {
    let all = square_union(max_len);
    let w = first_square(&all, |w| !matches!(w.len(), 2 | 6));
    CheckReport::from_witness("squares_order_one_or_three", format!("t<={max_len}"), w)
}

pub fn squares_of_order_one(max_len: usize) -> CheckReport {
    let all = square_union(max_len);
    let w = first_square(&all, |w| w.len() == 2 && w != [2, 2]);
    CheckReport::from_witness("squares_order_one_is_22", format!("t<={max_len}"), w)
}

pub fn squares_of_order_three(max_len: usize) -> CheckReport {
    let all = square_union(max_len);
    let w = first_square(&all, |w| {
        w.len() == 6 && w != [1, 2, 3, 1, 2, 3] && w != [3, 2, 1, 3, 2, 1]
    });
    CheckReport::from_witness("squares_order_three", format!("t<={max_len}"), w)
}

/// All three squares occur for every code with `7 <= t <= max_len`.
pub fn squares_present(max_len: usize) -> CheckReport {
    let hi = max_len.max(7);
    let witness = codes(7, hi).find_map(|f| {
        let sq = find_squares(&rw(&f));
        let missing: Vec<&str> = EXPECTED_SQUARES
            .iter()
            .copied()
            .filter(|s| !sq.contains(&crate::runs::parse_digits(s).unwrap()))
            .collect();
        (!missing.is_empty()).then(|| format!("f={f} missing={}", missing.join(",")))
    });
    CheckReport::from_witness("squares_present", format!("7<=t<={hi}"), witness)
}

/// Union of palindromic factors of length `<= max_factor` over all codes
/// of length exactly `t`.
pub fn palindromes(t: usize, max_factor: usize) -> CheckReport {
    let mut union = FactorInventory::new(0);
    for f in FoldCode::all_of_length(t) {
        union.merge(find_palindromes(&rw(&f), max_factor));
    }
    let found = union.sorted_strings();
    let expected: Vec<String> = EXPECTED_PALINDROMES
        .iter()
        .map(|s| s.to_string())
        .filter(|s| s.len() <= max_factor)
        .collect();
    let witness = (found != expected).then(|| format!("found={}", found.join(",")));
    CheckReport::from_witness(
        "palindromes",
        format!("t={t} len<={max_factor}"),
        witness,
    )
}

/// Codes of length `code_len` that differ inside the window needed for
/// factors of length `n_max + 1`; the rest have identical windows.
fn window_codes(code_len: usize, n_max: usize) -> impl Iterator<Item = FoldCode> {
    let distinct = min_code_len(n_max + 1).min(code_len);
    FoldCode::all_of_length(distinct).map(move |prefix| {
        let mut signs = prefix.signs().to_vec();
        signs.resize(code_len, crate::foldcore::Sign::Plus);
        FoldCode::new(signs)
    })
}

/// `p(n) = 4n + 4` and `p(n+1) = p(n) + 4` on `n_lo..=n_hi`, for every code
/// of length `code_len`.
pub fn complexity(n_lo: usize, n_hi: usize, code_len: usize) -> CheckReport {
    let bound = format!("{n_lo}<=n<={n_hi} t={code_len}");
    let witness = window_codes(code_len, n_hi).find_map(|f| {
        let window = match FactorWindow::new(&f, n_hi) {
            Ok(w) => w,
            Err(e) => return Some(format!("f={f} error={e}")),
        };
        let mut prev: Option<usize> = None;
        for n in n_lo..=n_hi {
            let p = window.complexity(n);
            if p != 4 * n + 4 || prev.is_some_and(|q| p != q + 4) {
                return Some(format!("f={f} n={n} p={p}"));
            }
            prev = Some(p);
        }
        None
    });
    CheckReport::from_witness("complexity_4n_plus_4", bound, witness)
}

/// Exactly four right-special factors of each length in `n_lo..=n_hi`.
pub fn right_special_four(n_lo: usize, n_hi: usize, code_len: usize) -> CheckReport {
    right_special(
        "right_special_exactly_four",
        n_lo,
        n_hi,
        code_len,
        |c| c == 4,
    )
}

/// At most four right-special factors of each length in `n_lo..=n_hi`.
pub fn right_special_at_most_four(n_lo: usize, n_hi: usize, code_len: usize) -> CheckReport {
    right_special(
        "right_special_at_most_four",
        n_lo,
        n_hi,
        code_len,
        |c| c <= 4,
    )
}

fn right_special(
    name: &str,
    n_lo: usize,
    n_hi: usize,
    code_len: usize,
    ok: impl Fn(usize) -> bool,
) -> CheckReport {
    let witness = window_codes(code_len, n_hi).find_map(|f| {
        let window = match FactorWindow::new(&f, n_hi + 1) {
            Ok(w) => w,
            Err(e) => return Some(format!("f={f} error={e}")),
        };
        (n_lo..=n_hi).find_map(|n| {
            let c = window.right_special_count(n);
            (!ok(c)).then(|| format!("f={f} n={n} count={c}"))
        })
    });
    CheckReport::from_witness(name, format!("{n_lo}<=n<={n_hi} t={code_len}"), witness)
}

/// No factor of length `>= 2` has three right extensions. A length-`n`
/// factor with three extensions has a length-2 suffix with three, so
/// length 2 suffices.
pub fn no_triple_extension(max_len: usize) -> CheckReport {
    let witness = codes(1, max_len).find_map(|f| {
        let w = rw(&f);
        (max_right_extensions(&w, 2) > 2).then(|| {
            let factors: BTreeSet<String> = w
                .windows(3)
                .map(|x| digits(&x[..2]))
                .collect();
            format!("f={f} factors={}", factors.into_iter().collect::<Vec<_>>().join(","))
        })
    });
    CheckReport::from_witness("no_triple_extension", format!("t<={max_len}"), witness)
}

/// The run-structure checks at code-length bound `max_len`; the factor
/// window checks use their fixed bounds.
pub fn runs_suite(max_len: usize, ep: Option<&Automaton>) -> Vec<CheckReport> {
    vec![
        prop1(max_len),
        prop4(max_len),
        thm3(max_len, ep),
        overlap_free(max_len),
        square_orders(max_len),
        squares_of_order_one(max_len),
        squares_of_order_three(max_len),
        squares_present(max_len),
        palindromes(9, 7),
        no_triple_extension(max_len),
        complexity(6, 30, 14),
        right_special_four(6, 30, 14),
        right_special_at_most_four(6, 30, 14),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bounds_pass() {
        for r in [
            prop1(8),
            prop4(8),
            thm3(8, None),
            overlap_free(8),
            square_orders(8),
            squares_of_order_one(8),
            squares_of_order_three(8),
            squares_present(7),
            no_triple_extension(8),
        ] {
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn palindromes_found() {
        assert!(palindromes(9, 7).passed());
        // too few instructions to expose every palindrome
        let r = palindromes(4, 7);
        assert!(!r.passed());
        assert_eq!(r.witness.as_deref(), Some("found=1,2,3,22,212,232,12321"));
    }

    #[test]
    fn complexity_small_range() {
        assert!(complexity(6, 8, 12).passed());
        assert!(right_special_four(6, 8, 12).passed());
        assert!(right_special_at_most_four(6, 8, 12).passed());
        // p(5) = 23 and p(6) = 28, so five factors of length 5 are right-special
        assert!(!complexity(5, 6, 12).passed());
        let r = right_special_at_most_four(5, 5, 12);
        assert_eq!(r.witness.as_deref(), Some("f=++++++++++++ n=5 count=5"));
    }
}
