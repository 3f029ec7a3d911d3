//! Squares, overlaps and palindromes in run-length words.

use paperfold::foldcore::FoldCode;
use paperfold::runs::{find_overlaps, find_palindromes, find_squares, run_word, FactorInventory};

fn main() -> paperfold::Result<()> {
    let mut squares = FactorInventory::new(0);
    let mut palindromes = FactorInventory::new(0);
    let mut overlaps = 0;
    for f in FoldCode::all_of_length(9) {
        let w = run_word(&f)?;
        squares.merge(find_squares(&w));
        palindromes.merge(find_palindromes(&w, 7));
        overlaps += find_overlaps(&w).len();
    }
    println!("codes of length 9: {} codes", 1 << 9);
    println!("squares:     {}", squares.sorted_strings().join(" "));
    println!("palindromes: {}", palindromes.sorted_strings().join(" "));
    println!("overlaps:    {overlaps}");
    Ok(())
}
