//! Factor complexity and right-special factors of the regular run-length
//! word, read from a finite window that contains every factor.

use paperfold::foldcore::FoldCode;
use paperfold::runs::{digits, FactorWindow};

fn main() -> paperfold::Result<()> {
    let window = FactorWindow::new(&FoldCode::regular(14), 13)?;
    println!("n\tp(n)\tright_special");
    for n in 1..=12 {
        let special: Vec<String> = window.right_special(n).iter().map(|w| digits(w)).collect();
        println!("{n}\t{}\t{}", window.complexity(n), special.join(","));
    }
    Ok(())
}
