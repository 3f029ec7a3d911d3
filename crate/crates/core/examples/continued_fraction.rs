//! The dyadic number built from a sign vector, its continued fraction, and
//! the same expansion reached by repeated folding.

use paperfold::contfrac::{
    alpha_by_folding, alpha_value, cf_from_rational, fold_step, predicted_cf, set_parity,
    ContinuedFraction, Parity,
};
use paperfold::foldcore::Sign;

fn main() -> paperfold::Result<()> {
    let eps = [Sign::Plus, Sign::Minus, Sign::Minus, Sign::Plus];
    let alpha = alpha_value(&eps)?;
    println!("alpha = {alpha}");
    println!("expansion  {}", cf_from_rational(&alpha));
    println!("predicted  {}", predicted_cf(&eps)?);

    // folding p/q adds ±1/q²
    let mut cf = ContinuedFraction::from_i64(&[0, 2])?;
    for e in std::iter::once(Sign::Plus).chain(eps) {
        cf = fold_step(&set_parity(&cf, Parity::Odd)?, e)?;
        println!("fold {} -> {} = {}", e.as_char(), cf.canonical(), cf.value());
    }
    assert_eq!(alpha_by_folding(&eps)?.value(), alpha);
    Ok(())
}
