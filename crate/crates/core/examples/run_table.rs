//! Runs of a paperfolding word: starts, ends and lengths, and end positions
//! predicted from the associated code.

use paperfold::foldcore::FoldCode;
use paperfold::runs::{assoc_code, digits, predicted_end_positions, run_start, runs_of};

fn main() -> paperfold::Result<()> {
    let f = FoldCode::from_symbols(&[1, 1, -1, 1, -1])?;
    let runs = runs_of(&f)?;
    print!("{}", runs.to_tsv());
    println!("run-length word: {}", digits(&runs.run_word()));

    let g = assoc_code(&f)?;
    println!("associated code of {f}: {g}");
    let predicted = predicted_end_positions(&f)?;
    let observed = &runs.ends()[..predicted.len()];
    println!("predicted ends: {predicted:?}");
    println!("agree with the table: {}", predicted == observed);

    // run starts are located without building the word
    let big = FoldCode::regular(40);
    println!("S[2^38 + 5] for f = 1^40: {:?}", run_start(&big, (1 << 38) + 5));
    Ok(())
}
