//! Paperfolding words built from unfolding instructions.
//!
//! A code `f = f_0 f_1 ... f_{t-1}` over `{-1, +1}` determines the word
//! `P_f` of length `2^t - 1` through the unfolding rule
//! `P_{fa} = P_f · a · (-P_f reversed)`. Codes may carry trailing zeros as
//! padding; a zero followed by a nonzero symbol is not a code.
//!
//! Positions in [`PaperfoldingWord`] are 1-indexed throughout the crate.

use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Longest code whose word may be materialized (`2^30 - 1` terms).
pub const MAX_MATERIALIZED_LEN: usize = 30;

/// One letter of the `±1` alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn from_i8(v: i8) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }

    /// Compact literal character, `+` or `-`.
    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_i8())
    }
}

/// True iff no nonzero symbol follows a zero.
pub fn is_valid_code(symbols: &[i8]) -> bool {
    let mut seen_zero = false;
    for &s in symbols {
        match s {
            0 => seen_zero = true,
            1 | -1 if !seen_zero => {}
            _ => return false,
        }
    }
    true
}

/// A sequence of unfolding instructions, possibly zero-padded at the tail.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FoldCode {
    signs: Vec<Sign>,
    padding: usize,
}

impl FoldCode {
    pub fn new(signs: Vec<Sign>) -> Self {
        FoldCode { signs, padding: 0 }
    }

    /// The empty code.
    pub fn empty() -> Self {
        FoldCode::default()
    }

    /// The regular code `1^t`.
    pub fn regular(t: usize) -> Self {
        FoldCode::new(vec![Sign::Plus; t])
    }

    /// Builds a code from raw `{-1, 0, 1}` symbols.
    pub fn from_symbols(symbols: &[i8]) -> Result<Self> {
        if !is_valid_code(symbols) {
            return Err(Error::InvalidCode(format!("{symbols:?}")));
        }
        let signs: Vec<Sign> = symbols.iter().filter_map(|&s| Sign::from_i8(s)).collect();
        let padding = symbols.len() - signs.len();
        Ok(FoldCode { signs, padding })
    }

    /// The `index`-th code of effective length `t` in a fixed enumeration:
    /// bit `k` of `index` set means `f_k = -1`.
    pub fn from_index(t: usize, index: u64) -> Self {
        let signs = (0..t)
            .map(|k| {
                if (index >> k) & 1 == 1 {
                    Sign::Minus
                } else {
                    Sign::Plus
                }
            })
            .collect();
        FoldCode::new(signs)
    }

    /// All `2^t` codes of effective length `t`, in [`FoldCode::from_index`] order.
    pub fn all_of_length(t: usize) -> impl Iterator<Item = FoldCode> {
        assert!(t < 64);
        (0..1u64 << t).map(move |i| FoldCode::from_index(t, i))
    }

    pub fn with_padding(mut self, zeros: usize) -> Self {
        self.padding = zeros;
        self
    }

    /// Number of nonzero instructions, `t`.
    pub fn effective_len(&self) -> usize {
        self.signs.len()
    }

    /// Length including padding zeros.
    pub fn padded_len(&self) -> usize {
        self.signs.len() + self.padding
    }

    pub fn padding(&self) -> usize {
        self.padding
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    /// `f_k`, or `None` past the effective length.
    pub fn get(&self, k: usize) -> Option<Sign> {
        self.signs.get(k).copied()
    }

    /// Symbols as `{-1, 0, 1}` integers, padding included.
    pub fn raw(&self) -> Vec<i8> {
        let mut out: Vec<i8> = self.signs.iter().map(|s| s.to_i8()).collect();
        out.resize(self.padded_len(), 0);
        out
    }

    /// Appends one instruction; padding is dropped.
    pub fn push(&mut self, a: Sign) {
        self.padding = 0;
        self.signs.push(a);
    }

    /// The same code without padding.
    pub fn unpadded(&self) -> FoldCode {
        FoldCode::new(self.signs.clone())
    }

    /// Code with every instruction negated.
    pub fn negated(&self) -> FoldCode {
        FoldCode {
            signs: self.signs.iter().map(|&s| -s).collect(),
            padding: self.padding,
        }
    }
}

impl FromStr for FoldCode {
    type Err = Error;

    /// Parses the compact literal syntax over `{+, -, 0}`, e.g. `++-+0`.
    fn from_str(s: &str) -> Result<Self> {
        let symbols = s
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                '0' => Ok(0),
                other => Err(Error::InvalidCode(format!(
                    "unexpected character {other:?} in code literal {s:?}"
                ))),
            })
            .collect::<Result<Vec<i8>>>()?;
        FoldCode::from_symbols(&symbols)
    }
}

impl fmt::Display for FoldCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.signs {
            write!(f, "{}", s.as_char())?;
        }
        for _ in 0..self.padding {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A finite paperfolding word `P_f`, 1-indexed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PaperfoldingWord {
    terms: Vec<Sign>,
}

impl PaperfoldingWord {
    pub fn empty() -> Self {
        PaperfoldingWord::default()
    }

    pub fn from_terms(terms: Vec<Sign>) -> Self {
        PaperfoldingWord { terms }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `P[n]` for `1 <= n <= len`.
    pub fn get(&self, n: usize) -> Option<Sign> {
        n.checked_sub(1).and_then(|i| self.terms.get(i)).copied()
    }

    pub fn terms(&self) -> &[Sign] {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = Sign> + '_ {
        self.terms.iter().copied()
    }

    pub fn to_i8(&self) -> Vec<i8> {
        self.terms.iter().map(|s| s.to_i8()).collect()
    }

    pub fn is_prefix_of(&self, other: &PaperfoldingWord) -> bool {
        other.terms.starts_with(&self.terms)
    }
}

impl fmt::Display for PaperfoldingWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for s in &self.terms {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// `P · a · (-P reversed)`.
pub fn unfold_once(word: &PaperfoldingWord, a: Sign) -> PaperfoldingWord {
    let mut terms = Vec::with_capacity(2 * word.len() + 1);
    terms.extend_from_slice(&word.terms);
    terms.push(a);
    terms.extend(word.terms.iter().rev().map(|&s| -s));
    PaperfoldingWord { terms }
}

/// Materializes `P_f` by repeated unfolding.
pub fn paperfolding_word(code: &FoldCode) -> Result<PaperfoldingWord> {
    if code.effective_len() > MAX_MATERIALIZED_LEN {
        return Err(Error::Rejected(format!(
            "code of effective length {} exceeds the materialization cap of {}",
            code.effective_len(),
            MAX_MATERIALIZED_LEN
        )));
    }
    Ok(code
        .signs()
        .iter()
        .fold(PaperfoldingWord::empty(), |w, &a| unfold_once(&w, a)))
}

/// `P_f[n]` without building the word.
///
/// With `n = m·2^k`, `m` odd, the term is `f_k` when `m ≡ 1 (mod 4)` and
/// `-f_k` when `m ≡ 3 (mod 4)`.
pub fn paperfolding_term(code: &FoldCode, n: u64) -> Result<Sign> {
    let t = code.effective_len();
    let hi = if t >= 64 { u64::MAX } else { (1u64 << t) - 1 };
    if n == 0 || n > hi {
        return Err(Error::IndexOutOfRange { index: n, lo: 1, hi });
    }
    Ok(term_unchecked(code.signs(), n))
}

#[inline]
pub(crate) fn term_unchecked(signs: &[Sign], n: u64) -> Sign {
    let k = n.trailing_zeros();
    let m = n >> k;
    let fk = signs[k as usize];
    if m & 3 == 1 {
        fk
    } else {
        -fk
    }
}
