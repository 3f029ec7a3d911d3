//! Restrict the general automata to the regular code `1^t` and query the
//! resulting one-track machines.

use paperfold::automata::oracle::{EndOracle, RunLengthOracle, StartOracle};
use paperfold::automata::regular::{build_tt, specialize_regular};
use paperfold::automata::{eval_inputs, infer_automaton, Relation};

fn main() -> paperfold::Result<()> {
    let sp = specialize_regular(&infer_automaton(&StartOracle, 10, 6)?)?;
    let ep = specialize_regular(&infer_automaton(&EndOracle, 10, 6)?)?;
    let rl = specialize_regular(&infer_automaton(&RunLengthOracle, 10, 6)?)?;
    let tt = build_tt(1 << 17)?;
    println!("states: sp_reg={} ep_reg={} RLR={} tt={}", sp.num_states(), ep.num_states(), rl.num_states(), tt.num_states());

    let (s, h, t) = (Relation::new(&sp), Relation::new(&ep), Relation::new(&tt));
    println!("n\tS(n)\th(n)\tg(n)\tt(n)");
    for n in 1..=16u64 {
        let row = [s.value(None, &[n], 2), h.value(None, &[n], 2), Some(u64::from(eval_inputs(&rl, None, &[n]))), t.value(None, &[n], 2)];
        let cells: Vec<String> = row.iter().map(|v| v.map_or("-".into(), |x| x.to_string())).collect();
        println!("{n}\t{}", cells.join("\t"));
    }
    // the automata answer for indices far beyond any materialized word
    let n = 1_000_000_007u64;
    println!("g({n}) = {}, n mod 8 = {}", eval_inputs(&rl, None, &[n]), n % 8);
    Ok(())
}
