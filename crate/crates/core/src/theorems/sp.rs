use crate::automata::{Automaton, Relation};
use crate::foldcore::{paperfolding_word, FoldCode, PaperfoldingWord};

use super::CheckReport;

const NAMES: [&str; 8] = [
    "sp_functional",
    "sp_zero",
    "sp_first_run",
    "sp_last_run_exists",
    "sp_nothing_past_last",
    "sp_last_run_constant",
    "sp_increasing",
    "sp_boundaries",
];

/// Values accepted by `sp` for one code, indexed by `n < 2^t`, at width
/// `t + 1`.
struct Table {
    code: FoldCode,
    word: PaperfoldingWord,
    values: Vec<Vec<u64>>,
}

impl Table {
    fn t(&self) -> usize {
        self.code.effective_len()
    }

    fn last(&self) -> u64 {
        1 << (self.t() - 1)
    }

    fn sole(&self, n: u64) -> Option<u64> {
        match self.values[n as usize].as_slice() {
            [x] => Some(*x),
            _ => None,
        }
    }

    fn sym(&self, i: u64) -> Option<i8> {
        self.word.get(i as usize).map(|s| s.to_i8())
    }

    fn witness(&self, n: u64) -> String {
        format!("f={} n={} x={:?}", self.code, n, self.values[n as usize])
    }

    /// The eight conditions that together pin `sp` down to `S_f`.
    fn check(&self, k: usize) -> Option<String> {
        let t = self.t();
        match k {
            0 => (0..self.values.len() as u64)
                .find(|&n| self.values[n as usize].len() > 1)
                .map(|n| self.witness(n)),
            1 => (!self.values[0].contains(&0)).then(|| self.witness(0)),
            _ if t == 0 => None,
            2 => (!self.values[1].contains(&1)).then(|| self.witness(1)),
            3 => self.values[self.last() as usize].is_empty().then(|| self.witness(self.last())),
            4 => (self.last() + 1..self.values.len() as u64)
                .find(|&n| !self.values[n as usize].is_empty())
                .map(|n| self.witness(n)),
            5 => {
                let z = (1u64 << t) - 1;
                let n = self.last();
                let x = self.sole(n)?;
                let bad = x == 0 || x > z || (x..=z).any(|i| self.sym(i) != self.sym(x));
                bad.then(|| self.witness(n))
            }
            6 => (1..=self.last())
                .find(|&n| match (self.sole(n - 1), self.sole(n)) {
                    (Some(x), Some(y)) => x >= y,
                    _ => false,
                })
                .map(|n| self.witness(n)),
            7 => {
                let z = (1u64 << t) - 1;
                (2..=self.last())
                    .find(|&n| match (self.sole(n - 1), self.sole(n)) {
                        (Some(y), Some(x)) if x <= z && y <= x => {
                            (y..x).any(|i| self.sym(i) == self.sym(x))
                        }
                        _ => false,
                    })
                    .map(|n| self.witness(n))
            }
            _ => unreachable!("eight conditions"),
        }
    }
}

/// The eight correctness conditions for an `sp` automaton, for every valid
/// code with `t <= max_len` and every `n < 2^t`.
pub fn sp_suite(sp: &Automaton, max_len: usize) -> Vec<CheckReport> {
    let relation = Relation::new(sp);
    let mut witnesses: [Option<String>; 8] = Default::default();
    'sweep: for t in 0..=max_len {
        for code in FoldCode::all_of_length(t) {
            let word = paperfolding_word(&code).expect("bounded code length");
            let values = (0..1u64 << t)
                .map(|n| relation.values_exact(Some(&code), &[n], t + 1))
                .collect();
            let table = Table { code, word, values };
            for (k, slot) in witnesses.iter_mut().enumerate() {
                if slot.is_none() {
                    *slot = table.check(k);
                }
            }
            if witnesses.iter().all(Option::is_some) {
                break 'sweep;
            }
        }
    }
    let bound = format!("t<={max_len}");
    NAMES
        .iter()
        .zip(witnesses)
        .map(|(name, w)| CheckReport::from_witness(*name, bound.clone(), w))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::infer_automaton;
    use crate::automata::oracle::StartOracle;

    #[test]
    fn inferred_sp_passes_and_mutant_fails() {
        let sp = infer_automaton(&StartOracle, 8, 5).unwrap();
        let reports = sp_suite(&sp, 6);
        assert_eq!(reports.len(), 8);
        assert!(reports.iter().all(|r| r.passed()), "{reports:?}");

        let mut mutant = sp.clone();
        let dead = (0..mutant.num_states() as u32)
            .find(|&q| !mutant.live_states()[q as usize])
            .unwrap();
        mutant.set_output(dead, 1);
        let reports = sp_suite(&mutant, 6);
        assert!(!reports[0].passed());
        assert!(reports[0].witness.as_ref().unwrap().starts_with("f="));
    }
}
