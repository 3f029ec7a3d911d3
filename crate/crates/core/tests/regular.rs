mod common;

use paperfold::automata::regular::{
    regular_ends_oracle, regular_run_length_oracle, regular_starts_oracle, specialize_regular, tt_oracle,
};
use paperfold::automata::{equivalent, infer_automaton, verify_exhaustive};

use common::{machines, regular_machines};

const DEPTH: usize = 12;
const BOUND: u64 = 1 << (DEPTH + 2);

#[test]
fn specializations_are_small_and_correct() {
    let r = regular_machines();
    let counts = [r.sp_reg.num_states(), r.ep_reg.num_states(), r.rlr.num_states(), r.tt.num_states()];
    assert_eq!(counts, [12, 10, 12, 8]);
    assert!(verify_exhaustive(&r.sp_reg, &regular_starts_oracle(BOUND), DEPTH).unwrap().is_none());
    assert!(verify_exhaustive(&r.ep_reg, &regular_ends_oracle(BOUND), DEPTH).unwrap().is_none());
    assert!(verify_exhaustive(&r.rlr, &regular_run_length_oracle(BOUND), DEPTH).unwrap().is_none());
    assert!(verify_exhaustive(&r.tt, &tt_oracle(BOUND as usize), DEPTH).unwrap().is_none());
}

#[test]
fn specialization_matches_direct_inference() {
    let direct = infer_automaton(&regular_run_length_oracle(1 << 16), 10, 6).unwrap();
    let specialized = specialize_regular(&machines().rl).unwrap();
    assert_eq!(direct.num_states(), specialized.num_states());
    assert!(equivalent(&direct, &specialized, 14).unwrap().is_none());
}
