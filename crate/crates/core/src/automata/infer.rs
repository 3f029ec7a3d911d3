//! Residual-based inference of automata from semantic oracles.
//!
//! Two input prefixes belong to the same state when the oracle labels every
//! extension of them by at most `test_depth` letters identically. States are
//! discovered breadth-first from the empty prefix, each new prefix being
//! classified by its residual signature; the resulting hypothesis is
//! minimized and then checked against the oracle on every word up to
//! `sample_depth`.

use std::collections::HashMap;

use super::alphabet::{Letter, TrackAlphabet};
use super::dfa::{Automaton, Counterexample};
use super::oracle::Oracle;
use super::verify::verify_exhaustive;
use crate::error::{Error, Result};
use crate::foldcore::FoldCode;

/// Nonzero-labeled extensions of a prefix, sorted.
type Signature = Vec<(Vec<Letter>, u32)>;

/// Infers the minimal automaton agreeing with `oracle`.
pub fn infer_automaton(oracle: &dyn Oracle, sample_depth: usize, test_depth: usize) -> Result<Automaton> {
    if sample_depth == 0 || test_depth == 0 {
        return Err(Error::Rejected(
            "sample and test depths must both be at least 1".into(),
        ));
    }
    let alphabet = oracle.alphabet();
    let k = alphabet.size();
    let probe = Probe {
        oracle,
        alphabet: &alphabet,
    };

    let mut reps: Vec<Vec<Letter>> = vec![Vec::new()];
    let mut classes: HashMap<Signature, u32> = HashMap::new();
    let root = probe.signature(&[], test_depth);
    let mut outputs = vec![probe.label(&[])];
    classes.insert(root, 0);
    let mut delta: Vec<u32> = Vec::new();

    let mut q = 0;
    while q < reps.len() {
        for a in 0..k as Letter {
            let mut word = reps[q].clone();
            word.push(a);
            let sig = probe.signature(&word, test_depth);
            let id = match classes.get(&sig) {
                Some(&id) => id,
                None => {
                    if word.len() > sample_depth {
                        return Err(Error::Inference(format!(
                            "a new residual class appears at depth {} > sample depth {} (prefix {})",
                            word.len(),
                            sample_depth,
                            render(&alphabet, &word)
                        )));
                    }
                    let id = reps.len() as u32;
                    outputs.push(probe.label(&word));
                    reps.push(word);
                    classes.insert(sig, id);
                    id
                }
            };
            delta.push(id);
        }
        q += 1;
    }

    let hypothesis = Automaton::new(alphabet.clone(), oracle.mode(), outputs, delta)?;
    if let Some(cex) = verify_exhaustive(&hypothesis, oracle, sample_depth)? {
        let state = hypothesis.run(&cex.word);
        return Err(inconsistency(&alphabet, &cex, &reps[state as usize]));
    }
    Ok(hypothesis.minimize())
}

fn inconsistency(alphabet: &TrackAlphabet, cex: &Counterexample, rep: &[Letter]) -> Error {
    Error::Inference(format!(
        "word {} (label {}) was merged with representative {} (label {})",
        render(alphabet, &cex.word),
        cex.expected,
        render(alphabet, rep),
        cex.actual
    ))
}

/// A product word as `[s1;s2 s1;s2 ...]`.
pub fn render(alphabet: &TrackAlphabet, word: &[Letter]) -> String {
    let parts: Vec<String> = word.iter().map(|&l| alphabet.letter_string(l)).collect();
    format!("[{}]", parts.join(" "))
}

struct Probe<'a> {
    oracle: &'a dyn Oracle,
    alphabet: &'a TrackAlphabet,
}

impl Probe<'_> {
    fn label(&self, word: &[Letter]) -> u32 {
        super::oracle::label_word(self.oracle, word)
    }

    /// Labels of all extensions of `prefix` by up to `depth` letters,
    /// listing only the nonzero ones. Extensions with an invalid
    /// instruction track are labeled 0 and never enumerated.
    fn signature(&self, prefix: &[Letter], depth: usize) -> Signature {
        let decoded = self.alphabet.decode(prefix);
        if !self.alphabet.well_formed(prefix) {
            return Vec::new();
        }
        let has_code = self.alphabet.has_code();
        let raw = decoded.code.clone().unwrap_or_default();
        let closed = raw.contains(&0);
        let functional = self.oracle.is_functional();
        let numeric = self.alphabet.numeric_arity();
        let free = numeric - usize::from(functional);
        let level = prefix.len();

        let mut sig = Signature::new();
        for j in 0..=depth {
            let total = level + j;
            if total >= 64 {
                break;
            }
            for tail in code_tails(has_code, closed, j) {
                let code = has_code.then(|| {
                    let mut full = raw.clone();
                    full.extend(&tail);
                    FoldCode::from_symbols(&full).expect("tails keep codes valid")
                });
                for ext in 0..1u64 << (free * j) {
                    let mut nums = decoded.nums.clone();
                    for (t, num) in nums.iter_mut().enumerate().take(free) {
                        let bits = (ext >> (t * j)) & ((1u64 << j) - 1);
                        *num |= bits << level;
                    }
                    if functional {
                        let prefix_last = decoded.nums[numeric - 1];
                        for y in self.oracle.image(code.as_ref(), &nums[..free]) {
                            if y >> total != 0 || y & ((1u64 << level) - 1) != prefix_last {
                                continue;
                            }
                            nums[numeric - 1] = y;
                            sig.push((self.extension(&tail, &nums, level, j), 1));
                        }
                    } else {
                        let label = self.oracle.label(code.as_ref(), &nums);
                        if label != 0 {
                            sig.push((self.extension(&tail, &nums, level, j), label));
                        }
                    }
                }
            }
        }
        sig.sort_unstable();
        sig
    }

    fn extension(&self, tail: &[i8], nums: &[u64], level: usize, len: usize) -> Vec<Letter> {
        let has_code = self.alphabet.has_code();
        let mut comps = vec![0i8; self.alphabet.arity()];
        (0..len)
            .map(|i| {
                let off = if has_code {
                    comps[0] = tail[i];
                    1
                } else {
                    0
                };
                for (t, &x) in nums.iter().enumerate() {
                    comps[off + t] = ((x >> (level + i)) & 1) as i8;
                }
                self.alphabet.letter(&comps).expect("components in range")
            })
            .collect()
    }
}

/// Instruction-track continuations of length `len` that keep the code
/// valid: some signs followed by zeros, or only zeros once padding began.
fn code_tails(has_code: bool, closed: bool, len: usize) -> Vec<Vec<i8>> {
    if !has_code {
        return vec![Vec::new()];
    }
    if closed {
        return vec![vec![0; len]];
    }
    let mut out = Vec::new();
    for signs in 0..=len {
        for pattern in 0..1u64 << signs {
            let mut tail: Vec<i8> = (0..signs)
                .map(|i| if (pattern >> i) & 1 == 1 { -1 } else { 1 })
                .collect();
            tail.resize(len, 0);
            out.push(tail);
        }
    }
    out
}
