#![allow(dead_code)]

use std::sync::OnceLock;

use paperfold::automata::oracle::{label_word, EndOracle, RunLengthOracle, StartOracle};
use paperfold::automata::regular::{
    complement_enumeration, regular_ends_oracle, regular_run_end, regular_run_length_oracle,
    regular_run_start, regular_starts_oracle, tt_oracle,
};
use paperfold::automata::{Automaton, Letter, Oracle, TrackAlphabet};
use paperfold::foldcore::FoldCode;
use paperfold::runs::{run_end, run_start};
use paperfold::theorems::{Machines, RegularMachines};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn machines() -> &'static Machines {
    static M: OnceLock<Machines> = OnceLock::new();
    M.get_or_init(|| Machines::infer().expect("inference succeeds"))
}

pub fn regular_machines() -> &'static RegularMachines {
    static R: OnceLock<RegularMachines> = OnceLock::new();
    R.get_or_init(|| RegularMachines::derive(machines()).expect("specialization succeeds"))
}

/// Width of inputs drawn by [`Target::sample`].
pub const SAMPLE_WIDTH: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Sp,
    Ep,
    Rl,
    SpReg,
    EpReg,
    Rlr,
    Tt,
}

pub const ALL_KINDS: [Kind; 7] = [
    Kind::Sp,
    Kind::Ep,
    Kind::Rl,
    Kind::SpReg,
    Kind::EpReg,
    Kind::Rlr,
    Kind::Tt,
];

/// A verified automaton with its oracle and a sampler of in-domain words.
pub struct Target {
    pub kind: Kind,
    pub automaton: Automaton,
    pub oracle: Box<dyn Oracle>,
}

impl Target {
    pub fn new(kind: Kind) -> Self {
        let m = machines();
        let table = 1u64 << (SAMPLE_WIDTH + 1);
        let (automaton, oracle): (Automaton, Box<dyn Oracle>) = match kind {
            Kind::Sp => (m.sp.clone(), Box::new(StartOracle)),
            Kind::Ep => (m.ep.clone(), Box::new(EndOracle)),
            Kind::Rl => (m.rl.clone(), Box::new(RunLengthOracle)),
            Kind::SpReg => (regular_machines().sp_reg.clone(), Box::new(regular_starts_oracle(table))),
            Kind::EpReg => (regular_machines().ep_reg.clone(), Box::new(regular_ends_oracle(table))),
            Kind::Rlr => (
                regular_machines().rlr.clone(),
                Box::new(regular_run_length_oracle(table)),
            ),
            Kind::Tt => (regular_machines().tt.clone(), Box::new(tt_oracle(table as usize))),
        };
        Target {
            kind,
            automaton,
            oracle,
        }
    }

    /// A random word of length [`SAMPLE_WIDTH`] on which the oracle is
    /// nonzero.
    pub fn sample(&self, rng: &mut impl Rng) -> Vec<Letter> {
        let alphabet = self.automaton.alphabet().clone();
        let w = SAMPLE_WIDTH;
        match self.kind {
            Kind::Sp | Kind::Ep | Kind::Rl => {
                let t = rng.gen_range(1..w);
                let code = FoldCode::from_index(t, rng.gen_range(0..1u64 << t));
                let n = rng.gen_range(1..=1u64 << (t - 1));
                let nums = match self.kind {
                    Kind::Sp => vec![n, run_start(&code, n).unwrap()],
                    Kind::Ep => vec![n, run_end(&code, n).unwrap()],
                    _ => vec![n],
                };
                encode(&alphabet, Some(&code), &nums, w)
            }
            _ => {
                let n = rng.gen_range(1..1u64 << (w - 2));
                let nums = match self.kind {
                    Kind::SpReg => vec![n, regular_run_start(n)],
                    Kind::EpReg => vec![n, regular_run_end(n)],
                    Kind::Rlr => vec![n],
                    _ => vec![n, complement_enumeration(n as usize)[n as usize]],
                };
                encode(&alphabet, None, &nums, w)
            }
        }
    }

    pub fn label(&self, word: &[Letter]) -> u32 {
        label_word(self.oracle.as_ref(), word)
    }
}

fn encode(alphabet: &TrackAlphabet, code: Option<&FoldCode>, nums: &[u64], width: usize) -> Vec<Letter> {
    alphabet.encode(code, nums, width).expect("sample fits the width")
}

/// Redirects the transition taken at a random position of `word` so that
/// the automaton's verdict on `word` changes; `None` if no redirection at
/// that position does.
pub fn corrupt_on(a: &Automaton, word: &[Letter], expected: u32, rng: &mut impl Rng) -> Option<(Automaton, u32, Letter, u32)> {
    let i = rng.gen_range(0..word.len());
    let q = a.run(&word[..i]);
    let letter = word[i];
    let current = a.step(q, letter);
    let mut targets: Vec<u32> = (0..a.num_states() as u32).filter(|&r| r != current).collect();
    targets.shuffle(rng);
    targets.into_iter().find_map(|r| {
        let mut m = a.clone();
        m.set_transition(q, letter, r);
        (m.eval(word) != expected).then_some((m, q, letter, r))
    })
}
