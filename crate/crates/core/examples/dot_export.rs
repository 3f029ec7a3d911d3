//! Render an automaton as Graphviz DOT and read the text format back.
//!
//! ```bash
//! cargo run --example dot_export | dot -Tsvg > lnk.svg
//! ```

use paperfold::automata::regular::lnk_automaton;
use paperfold::automata::{automaton_from_str, automaton_to_string, to_dot};

fn main() -> paperfold::Result<()> {
    let lnk = lnk_automaton();
    let text = automaton_to_string(&lnk);
    assert_eq!(automaton_from_str(&text)?, lnk);
    print!("{}", to_dot(&lnk));
    Ok(())
}
