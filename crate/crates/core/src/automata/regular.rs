//! Specialization to the regular paperfolding sequence `1^ω`, and the
//! automaton for the complement enumeration `t(n)`.

use std::collections::HashMap;

use super::alphabet::{Letter, TrackAlphabet};
use super::dfa::{Automaton, Mode};
use super::infer::infer_automaton;
use super::oracle::{GraphOracle, SequenceOracle};
use crate::error::{Error, Result};
use crate::foldcore::FoldCode;
use crate::runs::{run_end, run_length, run_start};

/// Acceptor for `lnk`: `(f, x)` with `f` a valid code of effective length
/// `t` and `x = 2^t - 1`.
pub fn lnk_automaton() -> Automaton {
    let alphabet = TrackAlphabet::with_code(1);
    let k = alphabet.size();
    // 0: reading instructions, 1: reading padding, 2: dead
    let mut delta = vec![2u32; 3 * k];
    for l in 0..k as Letter {
        match alphabet.components(l).as_slice() {
            [-1, 1] | [1, 1] => delta[l as usize] = 0,
            [0, 0] => {
                delta[l as usize] = 1;
                delta[k + l as usize] = 1;
            }
            _ => {}
        }
    }
    Automaton::new(alphabet, Mode::Accept, vec![1, 1, 0], delta).expect("well-formed table")
}

/// Guard on `(f, n)`: `f = 1^t 0*` and `1 <= n <= 2^{t-1} - 1`.
///
/// States: 0 start, 1..=4 reading ones with (last n bit, n nonzero seen),
/// 5/6 reading padding with n zero/nonzero, 7 dead.
#[derive(Clone, Copy)]
struct RegularGuard;

impl RegularGuard {
    const START: u8 = 0;
    const DEAD: u8 = 7;

    fn ones(last: u8, nonzero: bool) -> u8 {
        1 + last + 2 * u8::from(nonzero)
    }

    fn step(self, g: u8, c: i8, bit: u8) -> u8 {
        match (g, c) {
            (Self::DEAD, _) | (_, -1) => Self::DEAD,
            (Self::START, 1) => Self::ones(bit, bit == 1),
            (Self::START, _) => Self::DEAD,
            (1..=4, 1) => Self::ones(bit, g >= 3 || bit == 1),
            (1..=4, _) => {
                let last = (g - 1) % 2;
                if last == 0 && bit == 0 {
                    if g >= 3 {
                        6
                    } else {
                        5
                    }
                } else {
                    Self::DEAD
                }
            }
            (5 | 6, 0) if bit == 0 => g,
            _ => Self::DEAD,
        }
    }

    fn accepting(self, g: u8) -> bool {
        g == Self::ones(0, true) || g == 6
    }
}

/// Specializes an automaton over `(f, n, ...)` to the regular code.
///
/// The result reads the numeric tracks only. On inputs with `n >= 1` it
/// behaves as the original on `f = 1^t` for any `t` with `n < 2^{t-1}`
/// (existential projection of the instruction track, with trailing zeros
/// allowed on the numeric tracks). Acceptors additionally accept the all-zero
/// input; DFAOs output 0 at `n = 0`. The result is minimized.
pub fn specialize_regular(automaton: &Automaton) -> Result<Automaton> {
    let source = automaton.alphabet();
    if !source.has_code() || source.numeric_arity() == 0 {
        return Err(Error::Rejected(
            "specialization needs an instruction track followed by an index track".into(),
        ));
    }
    let target = TrackAlphabet::numeric(source.numeric_arity());
    let guard = RegularGuard;
    let n_states = automaton.num_states();

    // letter over the source alphabet for (c, numeric components)
    let lift = |c: i8, letter: Letter| -> Letter {
        let mut comps = vec![c];
        comps.extend(target.components(letter));
        source.letter(&comps).expect("components in range")
    };

    // NFA state = (automaton state, guard state)
    let encode = |q: u32, g: u8| q as usize * 8 + g as usize;
    let total = n_states * 8;
    let zero = target.zero();

    let successors = |q: u32, g: u8, letter: Letter| -> Vec<(u32, u8)> {
        let bit = target.components(letter)[0] as u8;
        [1i8, 0]
            .iter()
            .filter_map(|&c| {
                let g2 = guard.step(g, c, bit);
                (g2 != RegularGuard::DEAD).then(|| (automaton.step(q, lift(c, letter)), g2))
            })
            .collect()
    };

    // output reachable through zero padding, per NFA state
    let mut padded = vec![0u32; total];
    for q in 0..n_states as u32 {
        for g in 0..8u8 {
            if guard.accepting(g) {
                padded[encode(q, g)] = automaton.output(q);
            }
        }
    }
    loop {
        let mut changed = false;
        for q in 0..n_states as u32 {
            for g in 0..8u8 {
                if padded[encode(q, g)] != 0 {
                    continue;
                }
                let best = successors(q, g, zero)
                    .into_iter()
                    .map(|(q2, g2)| padded[encode(q2, g2)])
                    .find(|&v| v != 0);
                if let Some(v) = best {
                    padded[encode(q, g)] = v;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }

    // subset construction; the flag records that every letter read was zero
    type Subset = (Vec<usize>, bool);
    let k = target.size();
    let start: Subset = (vec![encode(0, RegularGuard::START)], true);
    let mut ids: HashMap<Subset, u32> = HashMap::new();
    ids.insert(start.clone(), 0);
    let mut subsets = vec![start];
    let mut delta = Vec::new();
    let mut i = 0;
    while i < subsets.len() {
        for letter in 0..k as Letter {
            let (members, all_zero) = &subsets[i];
            let mut next: Vec<usize> = members
                .iter()
                .flat_map(|&s| successors((s / 8) as u32, (s % 8) as u8, letter))
                .map(|(q, g)| encode(q, g))
                .collect();
            next.sort_unstable();
            next.dedup();
            let key = (next, *all_zero && letter == zero);
            let fresh = subsets.len() as u32;
            let id = match ids.get(&key) {
                Some(&id) => id,
                None => {
                    ids.insert(key.clone(), fresh);
                    subsets.push(key);
                    fresh
                }
            };
            delta.push(id);
        }
        i += 1;
    }
    let mode = automaton.mode();
    let outputs = subsets
        .iter()
        .map(|(members, all_zero)| {
            let value = members.iter().map(|&s| padded[s]).find(|&v| v != 0).unwrap_or(0);
            match mode {
                Mode::Accept => u32::from(value != 0 || *all_zero),
                Mode::Output => value,
            }
        })
        .collect();
    Ok(Automaton::new(target, mode, outputs, delta)?.minimize())
}

/// Instructions needed so that index `n` lies before the final run.
fn regular_len_for(n: u64) -> usize {
    (66 - n.max(1).leading_zeros() as usize).max(2)
}

/// `g(n)`: run lengths of the regular sequence, with `g(0) = 0`.
pub fn regular_run_length(n: u64) -> u32 {
    if n == 0 {
        return 0;
    }
    run_length(&FoldCode::regular(regular_len_for(n)), n).expect("n is in range") as u32
}

/// Start of the `n`th run of the regular sequence, with `0` at `n = 0`.
pub fn regular_run_start(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    run_start(&FoldCode::regular(regular_len_for(n)), n).expect("n is in range")
}

/// `h(n)`: end of the `n`th run of the regular sequence, with `h(0) = 0`.
pub fn regular_run_end(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    run_end(&FoldCode::regular(regular_len_for(n)), n).expect("n is in range")
}

/// `t(1), ..., t(count)`: the positive integers outside
/// `H = {h(n) + 1 : n >= 0}`, in increasing order. Index 0 is unused.
pub fn complement_enumeration(count: usize) -> Vec<u64> {
    let mut out = vec![0u64];
    let mut n = 0u64;
    let mut next_h = regular_run_end(0) + 1;
    let mut x = 1u64;
    while out.len() <= count {
        while next_h < x {
            n += 1;
            next_h = regular_run_end(n) + 1;
        }
        if next_h != x {
            out.push(x);
        }
        x += 1;
    }
    out
}

/// Oracle for the graph of `n -> S(n)` on the regular sequence, `n < bound`.
pub fn regular_starts_oracle(bound: u64) -> GraphOracle {
    GraphOracle::new((0..bound).map(|n| Some(regular_run_start(n))).collect())
}

/// Oracle for the graph of `h`, `n < bound`.
pub fn regular_ends_oracle(bound: u64) -> GraphOracle {
    GraphOracle::new((0..bound).map(|n| Some(regular_run_end(n))).collect())
}

/// Oracle for `g` as a DFAO, `n < bound`.
pub fn regular_run_length_oracle(bound: u64) -> SequenceOracle {
    SequenceOracle::new((0..bound).map(regular_run_length).collect())
}

/// Oracle for the graph of `t`, defined for `1 <= n <= limit`.
pub fn tt_oracle(limit: usize) -> GraphOracle {
    let t = complement_enumeration(limit);
    let mut table: Vec<Option<u64>> = t.into_iter().map(Some).collect();
    table[0] = None;
    GraphOracle::new(table)
}

/// Infers the synchronized automaton for `t(n)` from its first `limit`
/// values, with the default depths (10, 6).
pub fn build_tt(limit: usize) -> Result<Automaton> {
    build_tt_with(limit, 10, 6)
}

pub fn build_tt_with(limit: usize, sample_depth: usize, test_depth: usize) -> Result<Automaton> {
    let needed = 1usize << (sample_depth + test_depth);
    if limit < needed {
        return Err(Error::Rejected(format!(
            "limit {limit} is below the {needed} values the depths ({sample_depth}, {test_depth}) query"
        )));
    }
    infer_automaton(&tt_oracle(limit), sample_depth, test_depth)
}
