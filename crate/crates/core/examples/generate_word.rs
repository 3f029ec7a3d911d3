//! Unfold a strip of paper and read off the creases.
//!
//! ```bash
//! cargo run --example generate_word
//! ```

use paperfold::foldcore::{paperfolding_term, paperfolding_word, FoldCode, Sign};

fn render(signs: &[Sign]) -> String {
    signs.iter().map(|s| s.as_char()).collect()
}

fn main() -> paperfold::Result<()> {
    let regular = FoldCode::regular(5);
    let word = paperfolding_word(&regular)?;
    println!("f = {regular}: {} terms", word.len());
    println!("  {}", render(word.terms()));

    // each instruction doubles the word and appends a crease
    let mut code = FoldCode::empty();
    for s in [Sign::Plus, Sign::Minus, Sign::Minus, Sign::Plus] {
        code.push(s);
        println!("{code:>6} -> {}", render(paperfolding_word(&code)?.terms()));
    }

    // a single term needs only the 2-adic valuation of the index
    let long = FoldCode::from_symbols(&[1, -1, 1, 1, -1, -1, 1, -1, 1, 1, 1, -1, 1, -1, -1, 1, 1, -1, 1, -1])?;
    for n in [1u64, 2, 12, 1 << 19, 999_999] {
        println!("P_f[{n}] = {}", paperfolding_term(&long, n)?.as_char());
    }
    Ok(())
}
