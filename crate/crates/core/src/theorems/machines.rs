use crate::automata::oracle::{EndOracle, RunLengthOracle, StartOracle};
use crate::automata::regular::{build_tt, specialize_regular};
use crate::automata::{infer_automaton, verify_exhaustive, Automaton, Oracle, Relation};
use crate::error::Result;
use crate::foldcore::FoldCode;

use super::CheckReport;

/// Minimal state counts, a reachable dead state included.
pub const SP_STATES: usize = 17;
pub const EP_STATES: usize = 13;
pub const RL_STATES: usize = 31;

const SAMPLE_DEPTH: usize = 10;
const TEST_DEPTH: usize = 6;
const TT_LIMIT: usize = 1 << 17;

/// The automata inferred for all codes at once.
#[derive(Debug, Clone)]
pub struct Machines {
    pub sp: Automaton,
    pub ep: Automaton,
    pub rl: Automaton,
}

impl Machines {
    pub fn infer() -> Result<Self> {
        Ok(Machines {
            sp: infer_automaton(&StartOracle, SAMPLE_DEPTH, TEST_DEPTH)?,
            ep: infer_automaton(&EndOracle, SAMPLE_DEPTH, TEST_DEPTH)?,
            rl: infer_automaton(&RunLengthOracle, SAMPLE_DEPTH, TEST_DEPTH)?,
        })
    }
}

/// Specializations to the regular code, and `tt`.
#[derive(Debug, Clone)]
pub struct RegularMachines {
    pub sp_reg: Automaton,
    pub ep_reg: Automaton,
    pub rlr: Automaton,
    pub tt: Automaton,
}

impl RegularMachines {
    pub fn derive(m: &Machines) -> Result<Self> {
        Ok(RegularMachines {
            sp_reg: specialize_regular(&m.sp)?,
            ep_reg: specialize_regular(&m.ep)?,
            rlr: specialize_regular(&m.rl)?,
            tt: build_tt(TT_LIMIT)?,
        })
    }
}

fn state_count(name: &str, a: &Automaton, expected: usize) -> CheckReport {
    let witness = (a.num_states() != expected).then(|| {
        format!(
            "states={} live={} dead_state={} expected={expected}",
            a.num_states(),
            a.num_live_states(),
            a.has_dead_state()
        )
    });
    CheckReport::from_witness(name, "minimized", witness)
}

fn oracle_check(name: &str, a: &Automaton, oracle: &dyn Oracle, depth: usize) -> CheckReport {
    let bound = format!("depth={depth}");
    match verify_exhaustive(a, oracle, depth) {
        Ok(None) => CheckReport::pass(name, bound),
        Ok(Some(cex)) => CheckReport::fail(
            name,
            bound,
            format!(
                "word={} expected={} actual={}",
                crate::automata::render(a.alphabet(), &cex.word),
                cex.expected,
                cex.actual
            ),
        ),
        Err(e) => CheckReport::fail(name, bound, e.to_string()),
    }
}

/// State counts, and agreement with the semantic oracles on every valid
/// input of length at most `depth`.
pub fn automata_suite(m: &Machines, depth: usize) -> Vec<CheckReport> {
    vec![
        state_count("sp_states", &m.sp, SP_STATES),
        state_count("ep_states", &m.ep, EP_STATES),
        state_count("rl_states", &m.rl, RL_STATES),
        oracle_check("sp_oracle", &m.sp, &StartOracle, depth),
        oracle_check("ep_oracle", &m.ep, &EndOracle, depth),
        oracle_check("rl_oracle", &m.rl, &RunLengthOracle, depth),
    ]
}

/// `E[n] = S[n+1] − 1` below the last run and `E[2^{t−1}] = 2^t − 1`,
/// read off the two automata for every code with `1 <= t <= max_len`.
pub fn ep_from_sp(m: &Machines, max_len: usize) -> CheckReport {
    let sp = Relation::new(&m.sp);
    let ep = Relation::new(&m.ep);
    let witness = (1..=max_len).find_map(|t| {
        let last = 1u64 << (t - 1);
        FoldCode::all_of_length(t).find_map(|f| {
            let width = t + 1;
            (0..=last).find_map(|n| {
                let end = ep.values_exact(Some(&f), &[n], width);
                let expected = if n == last {
                    vec![(1u64 << t) - 1]
                } else {
                    sp.values_exact(Some(&f), &[n + 1], width)
                        .into_iter()
                        .map(|s| s - 1)
                        .collect()
                };
                (end != expected).then(|| format!("f={f} n={n} ep={end:?} expected={expected:?}"))
            })
        })
    });
    CheckReport::from_witness("ep_from_sp", format!("t<={max_len}"), witness)
}
