//! Semantic oracles: exact labelings of multi-track inputs computed from the
//! run structure of paperfolding words.

use super::alphabet::{Letter, TrackAlphabet};
use super::dfa::Mode;
use crate::error::{Error, Result};
use crate::foldcore::{is_valid_code, FoldCode};
use crate::runs::{run_count, run_end, run_length, run_start};

/// An exact labeling of decoded inputs.
///
/// Inputs whose instruction track is not a valid code are never passed to
/// [`Oracle::label`]; they are labeled 0.
pub trait Oracle {
    fn alphabet(&self) -> TrackAlphabet;

    fn mode(&self) -> Mode;

    /// Label of `(code, nums)`; `code` is `None` iff the alphabet has no
    /// instruction track.
    fn label(&self, code: Option<&FoldCode>, nums: &[u64]) -> u32;

    /// True when the oracle is an acceptor whose last numeric track is a
    /// function (possibly partial) of the other tracks.
    fn is_functional(&self) -> bool {
        false
    }

    /// For functional oracles: every value of the last track accepted
    /// together with `code` and `args` (all numeric tracks but the last).
    fn image(&self, _code: Option<&FoldCode>, _args: &[u64]) -> Vec<u64> {
        Vec::new()
    }
}

/// Label of a product word under `oracle`.
pub fn label_word(oracle: &dyn Oracle, word: &[Letter]) -> u32 {
    let alphabet = oracle.alphabet();
    let decoded = alphabet.decode(word);
    match &decoded.code {
        Some(raw) => match FoldCode::from_symbols(raw) {
            Ok(code) => oracle.label(Some(&code), &decoded.nums),
            Err(_) => 0,
        },
        None => oracle.label(None, &decoded.nums),
    }
}

fn code_of(code: Option<&FoldCode>) -> &FoldCode {
    code.expect("oracle over an instruction track called without a code")
}

/// `x = 2^t - 1` for a valid code of effective length `t`.
pub fn lnk_accepts(code: &[i8], x: u64) -> bool {
    if !is_valid_code(code) {
        return false;
    }
    let t = code.iter().filter(|&&s| s != 0).count();
    t < 64 && x == (1u64 << t) - 1
}

/// `x = S_f[n]`, with `S_f[0] = 0`.
pub fn oracle_sp(code: &FoldCode, n: u64, x: u64) -> bool {
    if n == 0 {
        return x == 0;
    }
    run_start(code, n) == Some(x)
}

/// `x = E_f[n]`, with `E_f[0] = 0` for nonempty codes.
pub fn oracle_ep(code: &FoldCode, n: u64, x: u64) -> bool {
    if n == 0 {
        return x == 0 && code.effective_len() >= 1;
    }
    run_end(code, n) == Some(x)
}

/// `R_f[n]` for `1 <= n <= 2^{t-1}`.
pub fn oracle_rl(code: &FoldCode, n: u64) -> Result<u32> {
    run_length(code, n)
        .map(|l| l as u32)
        .ok_or(Error::IndexOutOfRange {
            index: n,
            lo: 1,
            hi: run_count(code),
        })
}

/// Accepts `(f, x)` iff `x = 2^t - 1`.
#[derive(Debug, Clone, Copy, Default)]
pub struct LnkOracle;

impl Oracle for LnkOracle {
    fn alphabet(&self) -> TrackAlphabet {
        TrackAlphabet::with_code(1)
    }

    fn mode(&self) -> Mode {
        Mode::Accept
    }

    fn label(&self, code: Option<&FoldCode>, nums: &[u64]) -> u32 {
        u32::from(lnk_accepts(&code_of(code).raw(), nums[0]))
    }

    fn is_functional(&self) -> bool {
        true
    }

    fn image(&self, code: Option<&FoldCode>, _args: &[u64]) -> Vec<u64> {
        let t = code_of(code).effective_len();
        vec![(1u64 << t) - 1]
    }
}

/// Accepts `(f, n, x)` iff `x = S_f[n]`.
#[derive(Debug, Clone, Copy, Default)]
pub struct StartOracle;

impl Oracle for StartOracle {
    fn alphabet(&self) -> TrackAlphabet {
        TrackAlphabet::with_code(2)
    }

    fn mode(&self) -> Mode {
        Mode::Accept
    }

    fn label(&self, code: Option<&FoldCode>, nums: &[u64]) -> u32 {
        u32::from(oracle_sp(code_of(code), nums[0], nums[1]))
    }

    fn is_functional(&self) -> bool {
        true
    }

    fn image(&self, code: Option<&FoldCode>, args: &[u64]) -> Vec<u64> {
        let code = code_of(code);
        match args[0] {
            0 => vec![0],
            n => run_start(code, n).into_iter().collect(),
        }
    }
}

/// Accepts `(f, n, x)` iff `x = E_f[n]`.
#[derive(Debug, Clone, Copy, Default)]
pub struct EndOracle;

impl Oracle for EndOracle {
    fn alphabet(&self) -> TrackAlphabet {
        TrackAlphabet::with_code(2)
    }

    fn mode(&self) -> Mode {
        Mode::Accept
    }

    fn label(&self, code: Option<&FoldCode>, nums: &[u64]) -> u32 {
        u32::from(oracle_ep(code_of(code), nums[0], nums[1]))
    }

    fn is_functional(&self) -> bool {
        true
    }

    fn image(&self, code: Option<&FoldCode>, args: &[u64]) -> Vec<u64> {
        let code = code_of(code);
        match args[0] {
            0 if code.effective_len() >= 1 => vec![0],
            0 => Vec::new(),
            n => run_end(code, n).into_iter().collect(),
        }
    }
}

/// Outputs `R_f[n]` on `(f, n)`, and 0 where the run does not exist.
#[derive(Debug, Clone, Copy, Default)]
pub struct RunLengthOracle;

impl Oracle for RunLengthOracle {
    fn alphabet(&self) -> TrackAlphabet {
        TrackAlphabet::with_code(1)
    }

    fn mode(&self) -> Mode {
        Mode::Output
    }

    fn label(&self, code: Option<&FoldCode>, nums: &[u64]) -> u32 {
        oracle_rl(code_of(code), nums[0]).unwrap_or(0)
    }
}

/// Accepts `(f, n)` iff `R_f[n] = value`.
#[derive(Debug, Clone, Copy)]
pub struct RunLengthIs(pub u32);

impl Oracle for RunLengthIs {
    fn alphabet(&self) -> TrackAlphabet {
        TrackAlphabet::with_code(1)
    }

    fn mode(&self) -> Mode {
        Mode::Accept
    }

    fn label(&self, code: Option<&FoldCode>, nums: &[u64]) -> u32 {
        u32::from(oracle_rl(code_of(code), nums[0]) == Ok(self.0))
    }
}

/// Graph of a partial function on naturals, from a finite table: accepts
/// `(n, x)` iff `table[n] = Some(x)`.
#[derive(Debug, Clone)]
pub struct GraphOracle {
    table: Vec<Option<u64>>,
}

impl GraphOracle {
    pub fn new(table: Vec<Option<u64>>) -> Self {
        GraphOracle { table }
    }

    /// Largest `n` covered by the table, plus one.
    pub fn domain_bound(&self) -> u64 {
        self.table.len() as u64
    }

    pub fn value(&self, n: u64) -> Option<u64> {
        *self
            .table
            .get(n as usize)
            .unwrap_or_else(|| panic!("graph oracle queried at {n}, beyond its table"))
    }
}

impl Oracle for GraphOracle {
    fn alphabet(&self) -> TrackAlphabet {
        TrackAlphabet::numeric(2)
    }

    fn mode(&self) -> Mode {
        Mode::Accept
    }

    fn label(&self, _code: Option<&FoldCode>, nums: &[u64]) -> u32 {
        u32::from(self.value(nums[0]) == Some(nums[1]))
    }

    fn is_functional(&self) -> bool {
        true
    }

    fn image(&self, _code: Option<&FoldCode>, args: &[u64]) -> Vec<u64> {
        self.value(args[0]).into_iter().collect()
    }
}

/// A sequence on naturals read as a DFAO over one binary track.
#[derive(Debug, Clone)]
pub struct SequenceOracle {
    table: Vec<u32>,
}

impl SequenceOracle {
    pub fn new(table: Vec<u32>) -> Self {
        SequenceOracle { table }
    }
}

impl Oracle for SequenceOracle {
    fn alphabet(&self) -> TrackAlphabet {
        TrackAlphabet::numeric(1)
    }

    fn mode(&self) -> Mode {
        Mode::Output
    }

    fn label(&self, _code: Option<&FoldCode>, nums: &[u64]) -> u32 {
        *self
            .table
            .get(nums[0] as usize)
            .unwrap_or_else(|| panic!("sequence oracle queried at {}, beyond its table", nums[0]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> FoldCode {
        s.parse().unwrap()
    }

    #[test]
    fn lnk() {
        assert!(lnk_accepts(&[-1, 1, 1], 7));
        assert!(lnk_accepts(&[-1, 1, 1, 0, 0], 7));
        assert!(!lnk_accepts(&[-1, 0, 1], 3));
        assert!(!lnk_accepts(&[1], 2));
        assert!(lnk_accepts(&[], 0));
    }

    #[test]
    fn starts() {
        assert!(oracle_sp(&f("++++"), 5, 8));
        assert!(oracle_sp(&f("++++"), 0, 0));
        for x in 0..40 {
            assert!(!oracle_sp(&f("++++"), 9, x));
        }
        assert!(oracle_sp(&FoldCode::empty(), 0, 0));
    }

    #[test]
    fn ends_and_lengths() {
        assert!(oracle_ep(&f("++++"), 5, 10));
        assert!(oracle_ep(&f("++"), 2, 3));
        assert!(oracle_ep(&f("++"), 0, 0));
        assert!(!oracle_ep(&FoldCode::empty(), 0, 0));
        assert_eq!(oracle_rl(&f("++++"), 5), Ok(3));
        assert_eq!(oracle_rl(&f("++++"), 1), Ok(2));
        assert!(matches!(
            oracle_rl(&f("++++"), 9),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(oracle_rl(&f("++++"), 0).is_err());
    }

    #[test]
    fn invalid_words_are_labeled_zero() {
        let a = StartOracle.alphabet();
        let word = vec![
            a.letter(&[1, 0, 1]).unwrap(),
            a.letter(&[0, 0, 0]).unwrap(),
            a.letter(&[1, 0, 0]).unwrap(),
        ];
        assert_eq!(label_word(&StartOracle, &word), 0);
        let ok = a.encode(Some(&f("++")), &[1, 1], 2).unwrap();
        assert_eq!(label_word(&StartOracle, &ok), 1);
    }
}
