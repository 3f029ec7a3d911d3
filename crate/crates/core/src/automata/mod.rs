//! Multi-track deterministic automata: representation, inference from
//! semantic oracles, minimization, verification and serialization.

mod alphabet;
mod dfa;
mod infer;
mod io;
pub mod oracle;
pub mod regular;
mod verify;

pub use alphabet::{encode_inputs, Decoded, Letter, Track, TrackAlphabet};
pub use dfa::{combine, equivalent, Automaton, Counterexample, Mode};
pub use infer::{infer_automaton, render};
pub use io::{automaton_from_str, automaton_to_string, read_automaton, to_dot, write_automaton};
pub use oracle::{lnk_accepts, oracle_ep, oracle_rl, oracle_sp, Oracle};
pub use verify::{eval_inputs, verify_exhaustive, Relation};
