//! Maximal runs of paperfolding words and factors of their run-length words.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::foldcore::{paperfolding_term, paperfolding_word, FoldCode, Sign};

/// Parallel run lengths `R`, start positions `S` and end positions `E`.
///
/// Indexing through the accessors is 1-based; index 0 is the virtual run
/// with `S[0] = E[0] = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunDecomposition {
    lengths: Vec<u64>,
    starts: Vec<u64>,
    ends: Vec<u64>,
}

impl RunDecomposition {
    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    pub fn lengths(&self) -> &[u64] {
        &self.lengths
    }

    pub fn starts(&self) -> &[u64] {
        &self.starts
    }

    pub fn ends(&self) -> &[u64] {
        &self.ends
    }

    /// `S[n]`, with `S[0] = 0`.
    pub fn start(&self, n: usize) -> Option<u64> {
        if n == 0 {
            Some(0)
        } else {
            self.starts.get(n - 1).copied()
        }
    }

    /// `E[n]`, with `E[0] = 0`.
    pub fn end(&self, n: usize) -> Option<u64> {
        if n == 0 {
            Some(0)
        } else {
            self.ends.get(n - 1).copied()
        }
    }

    pub fn length(&self, n: usize) -> Option<u64> {
        n.checked_sub(1).and_then(|i| self.lengths.get(i)).copied()
    }

    /// Run lengths as a word over `{1, 2, 3, ...}`.
    pub fn run_word(&self) -> Vec<u8> {
        self.lengths.iter().map(|&l| l.min(255) as u8).collect()
    }

    /// TSV table with header `n R S E`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("n\tR\tS\tE\n");
        for i in 0..self.len() {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                i + 1,
                self.lengths[i],
                self.starts[i],
                self.ends[i]
            ));
        }
        out
    }
}

/// Splits a nonempty word into maximal runs.
pub fn run_decompose(word: &[Sign]) -> Result<RunDecomposition> {
    if word.is_empty() {
        return Err(Error::Rejected("cannot decompose the empty word".into()));
    }
    let mut starts = vec![1u64];
    let mut ends = Vec::new();
    for i in 1..word.len() {
        if word[i] != word[i - 1] {
            ends.push(i as u64);
            starts.push(i as u64 + 1);
        }
    }
    ends.push(word.len() as u64);
    let lengths = starts.iter().zip(&ends).map(|(s, e)| e - s + 1).collect();
    Ok(RunDecomposition {
        lengths,
        starts,
        ends,
    })
}

/// Run decomposition of `P_f`.
pub fn runs_of(code: &FoldCode) -> Result<RunDecomposition> {
    run_decompose(paperfolding_word(code)?.terms())
}

/// Run-length word `R_f`.
pub fn run_word(code: &FoldCode) -> Result<Vec<u8>> {
    Ok(runs_of(code)?.run_word())
}

/// Number of runs of `P_f`, `2^{t-1}` (zero for the empty code).
pub fn run_count(code: &FoldCode) -> u64 {
    match code.effective_len() {
        0 => 0,
        t => 1 << (t - 1),
    }
}

/// `S_f[n]` for `1 <= n <= 2^{t-1}`, in `O(t)` without materializing `P_f`.
///
/// Unfolding `P_{ga} = P_g · a · (-P_g)^R` keeps the runs of `P_g`, mirrors
/// them on the right, and lets `a` join whichever neighbour it equals.
pub fn run_start(code: &FoldCode, n: u64) -> Option<u64> {
    let signs = code.signs();
    let t = signs.len();
    if t == 0 || n == 0 || n > 1u64 << (t - 1) {
        return None;
    }
    // S_f[n] = offset + sign * S_g[idx], folded down to the single-run code.
    let mut offset: i128 = 0;
    let mut sign: i128 = 1;
    let mut idx = n;
    for s in (1..t).rev() {
        let m = (1u64 << s) - 1;
        let r = 1u64 << (s - 1);
        if idx <= r {
            continue;
        }
        let k = idx - r;
        if k == 1 {
            let last = if s == 1 { signs[0] } else { -signs[0] };
            let value = if signs[s] == last { m + 2 } else { m + 1 };
            return Some((offset + sign * value as i128) as u64);
        }
        offset += sign * (2 * m as i128 + 3);
        sign = -sign;
        idx = r + 2 - k;
    }
    debug_assert_eq!(idx, 1);
    Some((offset + sign) as u64)
}

/// `E_f[n]` for `1 <= n <= 2^{t-1}`.
pub fn run_end(code: &FoldCode, n: u64) -> Option<u64> {
    let t = code.effective_len();
    if t == 0 || n == 0 || n > 1u64 << (t - 1) {
        return None;
    }
    if n == 1u64 << (t - 1) {
        Some((1u64 << t) - 1)
    } else {
        run_start(code, n + 1).map(|s| s - 1)
    }
}

/// `R_f[n]` for `1 <= n <= 2^{t-1}`.
pub fn run_length(code: &FoldCode, n: u64) -> Option<u64> {
    Some(run_end(code, n)? - run_start(code, n)? + 1)
}

/// The associated code `g` of `f`, of effective length `t - 1`.
///
/// `11x -> 1(-x)`, `1(-1)x -> (-1)(-x)`, `(-1)1x -> (-1)x`, `(-1)(-1)x -> 1x`.
pub fn assoc_code(code: &FoldCode) -> Result<FoldCode> {
    let s = code.signs();
    if s.len() < 2 {
        return Err(Error::CodeTooShort {
            required: 2,
            actual: s.len(),
        });
    }
    let rest = &s[2..];
    let (head, negate_rest) = match (s[0], s[1]) {
        (Sign::Plus, Sign::Plus) => (Sign::Plus, true),
        (Sign::Plus, Sign::Minus) => (Sign::Minus, true),
        (Sign::Minus, Sign::Plus) => (Sign::Minus, false),
        (Sign::Minus, Sign::Minus) => (Sign::Plus, false),
    };
    let mut g = Vec::with_capacity(s.len() - 1);
    g.push(head);
    g.extend(rest.iter().map(|&x| if negate_rest { -x } else { x }));
    Ok(FoldCode::new(g))
}

/// `2n - ε_n` for `1 <= n < 2^{t-1}`, where `ε_n = 1` iff `P_g[n] = -1`.
pub fn predicted_end_positions(code: &FoldCode) -> Result<Vec<u64>> {
    let g = assoc_code(code)?;
    let count = run_count(code);
    (1..count)
        .map(|n| {
            let eps = match paperfolding_term(&g, n)? {
                Sign::Plus => 0,
                Sign::Minus => 1,
            };
            Ok(2 * n - eps)
        })
        .collect()
}

/// A set of distinct factors of a run-length word.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FactorInventory {
    /// Longest factor length considered.
    pub factor_length: usize,
    pub factors: BTreeSet<Vec<u8>>,
}

impl FactorInventory {
    pub fn new(factor_length: usize) -> Self {
        FactorInventory {
            factor_length,
            factors: BTreeSet::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn contains(&self, w: &[u8]) -> bool {
        self.factors.contains(w)
    }

    pub fn merge(&mut self, other: FactorInventory) {
        self.factor_length = self.factor_length.max(other.factor_length);
        self.factors.extend(other.factors);
    }

    /// Factors as digit strings, ordered by length then lexicographically.
    pub fn sorted_strings(&self) -> Vec<String> {
        let mut v: Vec<String> = self.factors.iter().map(|w| digits(w)).collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        v
    }
}

impl fmt::Display for FactorInventory {
    /// One factor per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.sorted_strings() {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Renders a run-length word as digits, e.g. `21223212`.
pub fn digits(w: &[u8]) -> String {
    w.iter().map(|d| char::from(b'0' + d)).collect()
}

/// Parses a digit string into a word.
pub fn parse_digits(s: &str) -> Result<Vec<u8>> {
    s.chars()
        .map(|c| {
            c.to_digit(10)
                .map(|d| d as u8)
                .ok_or_else(|| Error::Rejected(format!("not a digit word: {s:?}")))
        })
        .collect()
}

/// Every overlap `axaxa` in `w`, as 1-indexed `(start, period)` with
/// `w[i+k] = w[i+n+k]` for `0 <= k <= n`.
pub fn find_overlaps(w: &[u8]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for n in 1..=w.len() / 2 {
        // agreeing stretch of w[j] = w[j+n] ending at j
        let mut stretch = 0usize;
        for j in 0..w.len() - n {
            if w[j] == w[j + n] {
                stretch += 1;
                if stretch > n {
                    out.push((j + 1 - n, n));
                }
            } else {
                stretch = 0;
            }
        }
    }
    out.sort_unstable();
    out
}

/// Occurrences of squares `zz` as 1-indexed `(start, order)` with `order = |z|`.
pub fn square_witnesses(w: &[u8]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for n in 1..=w.len() / 2 {
        let mut stretch = 0usize;
        for j in 0..w.len() - n {
            if w[j] == w[j + n] {
                stretch += 1;
                if stretch >= n {
                    out.push((j + 2 - n, n));
                }
            } else {
                stretch = 0;
            }
        }
    }
    out.sort_unstable();
    out
}

/// Distinct squares of `w`, each reported once.
pub fn find_squares(w: &[u8]) -> FactorInventory {
    let mut inv = FactorInventory::new(0);
    for (i, n) in square_witnesses(w) {
        inv.factor_length = inv.factor_length.max(2 * n);
        inv.factors.insert(w[i - 1..i - 1 + 2 * n].to_vec());
    }
    inv
}

/// Distinct palindromic factors of length `1..=max_len`.
pub fn find_palindromes(w: &[u8], max_len: usize) -> FactorInventory {
    let mut inv = FactorInventory::new(max_len);
    for len in 1..=max_len.min(w.len()) {
        for win in w.windows(len) {
            if win.iter().eq(win.iter().rev()) {
                inv.factors.insert(win.to_vec());
            }
        }
    }
    inv
}

/// Length of the paperfolding prefix guaranteed to contain every factor of
/// length `len`.
pub const APPEARANCE_FACTOR: u64 = 13;

/// Paperfolding span needed to witness a run-length factor of length `n`:
/// at most three symbols per run plus one boundary symbol on each side.
pub fn paperfolding_span(n: usize) -> u64 {
    3 * n as u64 + 2
}

/// Smallest code length whose paperfolding word exposes every run-length
/// factor of length `n`.
pub fn min_code_len(n: usize) -> usize {
    let needed = APPEARANCE_FACTOR * paperfolding_span(n) + 1;
    let bits = 64 - (needed - 1).leading_zeros() as usize;
    bits + 1
}

/// Run-length word of `P_f` materialized once for every factor length up
/// to `n_max`; [`FactorWindow::word`] cuts it to the window for a given
/// length.
#[derive(Debug, Clone)]
pub struct FactorWindow {
    n_max: usize,
    lengths: Vec<u8>,
    ends: Vec<u64>,
}

impl FactorWindow {
    pub fn new(code: &FoldCode, n_max: usize) -> Result<Self> {
        let required = min_code_len(n_max);
        if code.effective_len() < required {
            return Err(Error::CodeTooShort {
                required,
                actual: code.effective_len(),
            });
        }
        let prefix = FoldCode::new(code.signs()[..required].to_vec());
        let runs = runs_of(&prefix)?;
        Ok(FactorWindow {
            n_max,
            lengths: runs.lengths().iter().map(|&l| l as u8).collect(),
            ends: runs.ends().to_vec(),
        })
    }

    /// Runs whose end lies inside the appearance window for length `n`.
    pub fn word(&self, n: usize) -> &[u8] {
        assert!(n <= self.n_max, "window built for lengths up to {}", self.n_max);
        let window = APPEARANCE_FACTOR * paperfolding_span(n);
        let usable = self.ends.partition_point(|&e| e < window);
        &self.lengths[..usable]
    }

    pub fn complexity(&self, n: usize) -> usize {
        let w = self.word(n);
        match packed_factors(w, n) {
            Some(mut keys) => {
                keys.sort_unstable();
                keys.dedup();
                keys.len()
            }
            None => distinct_factors(w, n).len(),
        }
    }

    /// Number of right-special factors of length `n`.
    pub fn right_special_count(&self, n: usize) -> usize {
        let w = self.word(n + 1);
        let Some(keys) = packed_factors(w, n + 1) else {
            return self.right_special(n).len();
        };
        // key = factor followed by one letter in the low two bits
        let mut pairs: Vec<(u64, u64)> = keys.iter().map(|&k| (k >> 2, k & 3)).collect();
        pairs.sort_unstable();
        pairs.dedup();
        let mut count = 0;
        let mut i = 0;
        while i < pairs.len() {
            let j = i + pairs[i..].partition_point(|p| p.0 == pairs[i].0);
            if j - i >= 2 {
                count += 1;
            }
            i = j;
        }
        count
    }

    /// Right-special factors of length `n`, read in the window for `n + 1`.
    pub fn right_special(&self, n: usize) -> BTreeSet<Vec<u8>> {
        let w = self.word(n + 1);
        let mut ext: HashMap<&[u8], u8> = HashMap::new();
        for win in w.windows(n + 1) {
            *ext.entry(&win[..n]).or_default() |= 1 << win[n].min(7);
        }
        ext.into_iter()
            .filter(|(_, mask)| mask.count_ones() >= 2)
            .map(|(f, _)| f.to_vec())
            .collect()
    }
}

/// Runs of `P_f` whose end lies inside the appearance window for factors
/// of length `n`. Only the first [`min_code_len`] instructions are
/// materialized.
pub fn windowed_run_word(code: &FoldCode, n: usize) -> Result<Vec<u8>> {
    Ok(FactorWindow::new(code, n)?.word(n).to_vec())
}

/// Length-`n` factors of a word over `{1, 2, 3}` packed two bits per
/// letter, first letter most significant; `None` when they do not fit.
fn packed_factors(w: &[u8], n: usize) -> Option<Vec<u64>> {
    if n == 0 || n > 32 {
        return None;
    }
    let mask = if n == 32 { u64::MAX } else { (1u64 << (2 * n)) - 1 };
    let mut key = 0u64;
    let mut out = Vec::with_capacity(w.len().saturating_sub(n - 1));
    for (i, &c) in w.iter().enumerate() {
        key = ((key << 2) | u64::from(c & 3)) & mask;
        if i + 1 >= n {
            out.push(key);
        }
    }
    Some(out)
}

fn distinct_factors(w: &[u8], n: usize) -> HashSet<&[u8]> {
    if n == 0 {
        return std::iter::once(&w[..0]).collect();
    }
    w.windows(n).collect()
}

/// Number of distinct length-`n` factors of `R_f`, read inside the
/// appearance window.
pub fn subword_complexity(code: &FoldCode, n: usize) -> Result<usize> {
    Ok(FactorWindow::new(code, n)?.complexity(n))
}

/// Length-`n` factors of `R_f` followed by at least two distinct letters,
/// read inside the appearance window for length `n + 1`.
pub fn right_special_factors(code: &FoldCode, n: usize) -> Result<BTreeSet<Vec<u8>>> {
    Ok(FactorWindow::new(code, n + 1)?.right_special(n))
}

pub fn right_special_count(code: &FoldCode, n: usize) -> Result<usize> {
    Ok(FactorWindow::new(code, n + 1)?.right_special_count(n))
}

/// Largest number of distinct right extensions of any length-`n` factor of `w`.
pub fn max_right_extensions(w: &[u8], n: usize) -> usize {
    let mut ext: HashMap<&[u8], u8> = HashMap::new();
    for win in w.windows(n + 1) {
        *ext.entry(&win[..n]).or_default() |= 1 << win[n].min(7);
    }
    ext.values()
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foldcore::FoldCode;

    fn f(s: &str) -> FoldCode {
        s.parse().unwrap()
    }

    #[test]
    fn packed_counts_match_slices() {
        let w = FactorWindow::new(&FoldCode::regular(14), 33).unwrap();
        for n in 1..=31 {
            assert_eq!(w.complexity(n), distinct_factors(w.word(n), n).len(), "n = {n}");
            assert_eq!(w.right_special_count(n), w.right_special(n).len(), "n = {n}");
        }
    }

    #[test]
    fn table_two_runs() {
        let r = runs_of(&f("++++")).unwrap();
        assert_eq!(r.lengths(), &[2, 1, 2, 2, 3, 2, 1, 2]);
        assert_eq!(r.starts(), &[1, 3, 4, 6, 8, 11, 13, 14]);
        assert_eq!(r.ends(), &[2, 3, 5, 7, 10, 12, 13, 15]);
        assert_eq!(r.start(0), Some(0));
        assert_eq!(r.end(0), Some(0));
    }

    #[test]
    fn single_symbol_and_empty() {
        let r = run_decompose(&[Sign::Plus]).unwrap();
        assert_eq!(r.lengths(), &[1]);
        assert_eq!(r.starts(), &[1]);
        assert_eq!(r.ends(), &[1]);
        assert!(run_decompose(&[]).is_err());
    }

    #[test]
    fn tsv_header() {
        let tsv = runs_of(&f("++")).unwrap().to_tsv();
        assert_eq!(tsv, "n\tR\tS\tE\n1\t2\t1\t2\n2\t1\t3\t3\n");
    }

    #[test]
    fn locator_matches_decomposition() {
        for t in 1..=11 {
            for code in FoldCode::all_of_length(t) {
                let r = runs_of(&code).unwrap();
                for n in 1..=r.len() {
                    assert_eq!(run_start(&code, n as u64), r.start(n), "{code} {n}");
                    assert_eq!(run_end(&code, n as u64), r.end(n), "{code} {n}");
                    assert_eq!(run_length(&code, n as u64), r.length(n));
                }
                assert_eq!(run_start(&code, r.len() as u64 + 1), None);
                assert_eq!(run_start(&code, 0), None);
            }
        }
    }

    #[test]
    fn associated_codes() {
        assert_eq!(assoc_code(&f("++++")).unwrap(), f("+--"));
        assert_eq!(assoc_code(&f("--")).unwrap(), f("+"));
        assert_eq!(assoc_code(&f("+-+")).unwrap(), f("--"));
        assert_eq!(assoc_code(&f("-++")).unwrap(), f("-+"));
        assert!(matches!(
            assoc_code(&f("+")),
            Err(Error::CodeTooShort { required: 2, .. })
        ));
    }

    #[test]
    fn predicted_ends_small() {
        assert_eq!(
            predicted_end_positions(&f("++++")).unwrap(),
            vec![2, 3, 5, 7, 10, 12, 13]
        );
        assert_eq!(predicted_end_positions(&f("++")).unwrap(), vec![2]);
    }

    #[test]
    fn overlaps() {
        assert!(find_overlaps(&[1, 2, 1, 2, 1]).contains(&(1, 2)));
        assert!(find_overlaps(&[2, 2, 2]).contains(&(1, 1)));
        assert!(find_overlaps(&[2, 1, 2, 2, 3, 2, 1, 2]).is_empty());
        assert!(find_overlaps(&[]).is_empty());
    }

    #[test]
    fn squares() {
        let inv = find_squares(&[2, 1, 2, 2, 3, 2, 1, 2]);
        assert_eq!(inv.sorted_strings(), vec!["22"]);
        assert_eq!(square_witnesses(&[2, 1, 2, 2, 3, 2, 1, 2]), vec![(3, 1)]);
        let inv = find_squares(&[1, 2, 3, 1, 2, 3]);
        assert_eq!(inv.sorted_strings(), vec!["123123"]);
    }

    #[test]
    fn palindromes() {
        let inv = find_palindromes(&[2, 1, 2, 2, 3, 2, 1, 2], 8);
        assert_eq!(inv.sorted_strings(), vec!["1", "2", "3", "22", "212", "232"]);
        assert_eq!(find_palindromes(&[2], 1).sorted_strings(), vec!["2"]);
    }

    #[test]
    fn complexity_window() {
        assert_eq!(min_code_len(6), 10);
        assert_eq!(min_code_len(30), 12);
        let code = FoldCode::regular(12);
        assert_eq!(subword_complexity(&code, 6).unwrap(), 28);
        assert_eq!(subword_complexity(&code, 7).unwrap(), 32);
        assert_eq!(right_special_count(&code, 6).unwrap(), 4);
        assert!(matches!(
            subword_complexity(&FoldCode::regular(8), 6),
            Err(Error::CodeTooShort { required: 10, actual: 8 })
        ));
    }

    #[test]
    fn letters_of_short_word() {
        let w = run_word(&f("++++")).unwrap();
        assert_eq!(distinct_factors(&w, 1).len(), 3);
        assert_eq!(max_right_extensions(&w, 1), 3);
    }
}
