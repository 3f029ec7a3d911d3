//! Bounded comparison of automata against semantic oracles, and solving
//! synchronized relations for their last track.

use super::alphabet::{Letter, TrackAlphabet};
use super::dfa::{Automaton, Counterexample, Mode};
use super::oracle::Oracle;
use crate::error::{Error, Result};
use crate::foldcore::FoldCode;

/// Compares `automaton` with `oracle` on every word of length `<= depth`
/// whose instruction track (if any) is a valid, possibly padded, code.
///
/// Functional oracles are checked without enumerating the last track: for
/// each assignment of the other tracks the automaton must accept every
/// value in the oracle's image and nothing else, which is decided by
/// counting accepting paths.
pub fn verify_exhaustive(
    automaton: &Automaton,
    oracle: &dyn Oracle,
    depth: usize,
) -> Result<Option<Counterexample>> {
    let alphabet = oracle.alphabet();
    if automaton.alphabet() != &alphabet {
        return Err(Error::AlphabetMismatch(format!(
            "automaton over {} vs oracle over {}",
            automaton.alphabet(),
            alphabet
        )));
    }
    if automaton.mode() != oracle.mode() {
        return Err(Error::Rejected(
            "automaton and oracle disagree on acceptor/output mode".into(),
        ));
    }
    let functional = oracle.is_functional();
    let free = alphabet.numeric_arity() - usize::from(functional);
    let mut walker = Walker {
        automaton,
        oracle,
        alphabet: &alphabet,
        depth,
        free,
        relation: functional.then(|| Relation::new(automaton)),
        code: Vec::new(),
        bits: Vec::new(),
        vals: vec![0; free],
    };
    let root = if functional {
        let mut counts = vec![0u64; automaton.num_states()];
        counts[0] = 1;
        Frontier::Counts(counts)
    } else {
        Frontier::State(0)
    };
    Ok(walker.visit(root))
}

enum Frontier {
    State(u32),
    Counts(Vec<u64>),
}

struct Walker<'a> {
    automaton: &'a Automaton,
    oracle: &'a dyn Oracle,
    alphabet: &'a TrackAlphabet,
    depth: usize,
    free: usize,
    relation: Option<Relation<'a>>,
    /// instruction symbols along the current path
    code: Vec<i8>,
    /// free numeric bits along the current path, one entry per position
    bits: Vec<u64>,
    vals: Vec<u64>,
}

impl Walker<'_> {
    fn letter(&self, c: i8, bits: u64, last: Option<u8>) -> Letter {
        let mut comps = Vec::with_capacity(self.alphabet.arity());
        if self.alphabet.has_code() {
            comps.push(c);
        }
        comps.extend((0..self.free).map(|j| ((bits >> j) & 1) as i8));
        if let Some(b) = last {
            comps.push(b as i8);
        }
        self.alphabet.letter(&comps).expect("components in range")
    }

    fn word(&self, last: Option<u64>) -> Vec<Letter> {
        (0..self.code.len().max(self.bits.len()))
            .map(|i| {
                let c = self.code.get(i).copied().unwrap_or(0);
                self.letter(c, self.bits[i], last.map(|y| ((y >> i) & 1) as u8))
            })
            .collect()
    }

    fn fold_code(&self) -> Option<FoldCode> {
        self.alphabet
            .has_code()
            .then(|| FoldCode::from_symbols(&self.code).expect("paths keep codes valid"))
    }

    fn check(&self, frontier: &Frontier) -> Option<Counterexample> {
        let level = self.bits.len();
        let code = self.fold_code();
        match frontier {
            Frontier::State(q) => {
                let expected = self.oracle.label(code.as_ref(), &self.vals);
                let actual = self.automaton.output(*q);
                (expected != actual).then(|| Counterexample {
                    word: self.word(None),
                    expected,
                    actual,
                })
            }
            Frontier::Counts(counts) => {
                let mut expected = self.oracle.image(code.as_ref(), &self.vals);
                expected.retain(|&y| level >= 64 || y >> level == 0);
                expected.sort_unstable();
                expected.dedup();
                for &y in &expected {
                    let word = self.word(Some(y));
                    if !self.automaton.accepts(&word) {
                        return Some(Counterexample {
                            word,
                            expected: 1,
                            actual: 0,
                        });
                    }
                }
                let accepted: u64 = counts
                    .iter()
                    .enumerate()
                    .filter(|&(q, _)| self.automaton.output(q as u32) != 0)
                    .map(|(_, &c)| c)
                    .sum();
                if accepted as usize == expected.len() {
                    return None;
                }
                let relation = self.relation.as_ref().expect("functional walk");
                let spurious = relation
                    .values_exact(code.as_ref(), &self.vals, level)
                    .into_iter()
                    .find(|y| expected.binary_search(y).is_err())
                    .expect("count mismatch implies a spurious value");
                Some(Counterexample {
                    word: self.word(Some(spurious)),
                    expected: 0,
                    actual: 1,
                })
            }
        }
    }

    fn visit(&mut self, frontier: Frontier) -> Option<Counterexample> {
        if let Some(cex) = self.check(&frontier) {
            return Some(cex);
        }
        let level = self.bits.len();
        if level == self.depth {
            return None;
        }
        let code_choices: &[i8] = if !self.alphabet.has_code() || self.code.last() == Some(&0) {
            &[0]
        } else {
            &[-1, 0, 1]
        };
        for &c in code_choices {
            for bits in 0..1u64 << self.free {
                let next = match &frontier {
                    Frontier::State(q) => {
                        Frontier::State(self.automaton.step(*q, self.letter(c, bits, None)))
                    }
                    Frontier::Counts(counts) => {
                        let l0 = self.letter(c, bits, Some(0));
                        let l1 = self.letter(c, bits, Some(1));
                        let mut next = vec![0u64; counts.len()];
                        for (q, &n) in counts.iter().enumerate() {
                            if n > 0 {
                                next[self.automaton.step(q as u32, l0) as usize] += n;
                                next[self.automaton.step(q as u32, l1) as usize] += n;
                            }
                        }
                        Frontier::Counts(next)
                    }
                };
                if self.alphabet.has_code() {
                    self.code.push(c);
                }
                self.bits.push(bits);
                for j in 0..self.free {
                    self.vals[j] |= ((bits >> j) & 1) << level;
                }
                let found = self.visit(next);
                for j in 0..self.free {
                    self.vals[j] &= !(1u64 << level);
                }
                self.bits.pop();
                if self.alphabet.has_code() {
                    self.code.pop();
                }
                if found.is_some() {
                    return found;
                }
            }
        }
        None
    }
}

/// Reads an acceptor as a relation whose last numeric track is solved for.
#[derive(Debug, Clone)]
pub struct Relation<'a> {
    automaton: &'a Automaton,
    live: Vec<bool>,
}

impl<'a> Relation<'a> {
    pub fn new(automaton: &'a Automaton) -> Self {
        Relation {
            automaton,
            live: automaton.live_states(),
        }
    }

    pub fn automaton(&self) -> &Automaton {
        self.automaton
    }

    /// Accepted values `y` of the last track with `(code, args, y)` encoded
    /// in exactly `width` positions.
    pub fn values_exact(&self, code: Option<&FoldCode>, args: &[u64], width: usize) -> Vec<u64> {
        let alphabet = self.automaton.alphabet();
        let raw = code.map(|c| c.raw());
        if let Some(raw) = &raw {
            if raw.iter().rposition(|&s| s != 0).map_or(0, |p| p + 1) > width {
                return Vec::new();
            }
        }
        if args.iter().any(|&x| width < 64 && x >> width != 0) {
            return Vec::new();
        }
        let off = usize::from(alphabet.has_code());
        let arity = alphabet.arity();
        let letters: Vec<[Letter; 2]> = (0..width)
            .map(|i| {
                let mut comps = vec![0i8; arity];
                if let Some(raw) = &raw {
                    comps[0] = raw.get(i).copied().unwrap_or(0);
                }
                for (j, &x) in args.iter().enumerate() {
                    comps[off + j] = ((x >> i) & 1) as i8;
                }
                [0i8, 1].map(|b| {
                    comps[arity - 1] = b;
                    alphabet.letter(&comps).expect("components in range")
                })
            })
            .collect();
        let mut out = Vec::new();
        self.solve(&letters, 0, 0, 0, &mut out);
        out.sort_unstable();
        out
    }

    fn solve(&self, letters: &[[Letter; 2]], i: usize, q: u32, y: u64, out: &mut Vec<u64>) {
        if !self.live[q as usize] {
            return;
        }
        if i == letters.len() {
            if self.automaton.output(q) != 0 {
                out.push(y);
            }
            return;
        }
        for b in 0..2u64 {
            let r = self.automaton.step(q, letters[i][b as usize]);
            self.solve(letters, i + 1, r, y | (b << i), out);
        }
    }

    /// Accepted values of the last track, using the smallest width that
    /// holds `code` and `args` plus `slack` extra positions.
    pub fn values(&self, code: Option<&FoldCode>, args: &[u64], slack: usize) -> Vec<u64> {
        let mut width = code.map_or(0, |c| c.effective_len());
        for &x in args {
            width = width.max(64 - x.leading_zeros() as usize);
        }
        self.values_exact(code, args, width + slack)
    }

    /// The unique accepted value, if exactly one exists within `slack`.
    pub fn value(&self, code: Option<&FoldCode>, args: &[u64], slack: usize) -> Option<u64> {
        match self.values(code, args, slack).as_slice() {
            [y] => Some(*y),
            _ => None,
        }
    }

    /// Tests `(code, args, y)` at the smallest sufficient width.
    pub fn holds(&self, code: Option<&FoldCode>, args: &[u64], y: u64) -> bool {
        let alphabet = self.automaton.alphabet();
        let mut nums = args.to_vec();
        nums.push(y);
        let mut width = code.map_or(0, |c| c.effective_len());
        for &x in &nums {
            width = width.max(64 - x.leading_zeros() as usize);
        }
        match alphabet.encode(code, &nums, width) {
            Ok(word) => self.automaton.accepts(&word),
            Err(_) => false,
        }
    }
}

/// Output of a DFAO on `(code, nums)` at the smallest sufficient width.
pub fn eval_inputs(automaton: &Automaton, code: Option<&FoldCode>, nums: &[u64]) -> u32 {
    debug_assert_eq!(automaton.mode(), Mode::Output);
    let mut width = code.map_or(0, |c| c.effective_len());
    for &x in nums {
        width = width.max(64 - x.leading_zeros() as usize);
    }
    automaton
        .alphabet()
        .encode(code, nums, width)
        .map(|w| automaton.eval(&w))
        .unwrap_or(0)
}
