//! Learn the run-start, run-end and run-length automata from their
//! definitions, minimize them, and check them exhaustively.
//!
//! Takes a few seconds in release mode.

use paperfold::automata::oracle::{EndOracle, RunLengthOracle, StartOracle};
use paperfold::automata::{automaton_to_string, infer_automaton, verify_exhaustive, Oracle};

fn main() -> paperfold::Result<()> {
    let oracles: [(&str, &dyn Oracle); 3] = [
        ("sp", &StartOracle),
        ("ep", &EndOracle),
        ("rl", &RunLengthOracle),
    ];
    println!("relation\tstates\tlive\tverified_depth");
    for (name, oracle) in oracles {
        let a = infer_automaton(oracle, 10, 6)?;
        let verdict = match verify_exhaustive(&a, oracle, 10)? {
            None => "10".to_string(),
            Some(cex) => format!("counterexample {cex:?}"),
        };
        println!("{name}\t{}\t{}\t{verdict}", a.num_states(), a.num_live_states());
        if name == "ep" {
            let text = automaton_to_string(&a);
            println!("{}", text.lines().take(4).collect::<Vec<_>>().join("\n"));
        }
    }
    Ok(())
}
