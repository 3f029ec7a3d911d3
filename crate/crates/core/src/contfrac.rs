//! Exact continued fractions, the folding identity, and the correspondence
//! between run lengths of `P_{1 ε₂ … ε_n}` and the expansion of
//! `α(ε₂, …, ε_n) = 1/2 + 1/4 + Σ ε_i 2^{-2^i}`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::foldcore::{FoldCode, Sign};
use crate::runs::runs_of;
use crate::theorems::CheckReport;

/// Largest `n` for which [`alpha_value`] materializes the denominator
/// `2^(2^n)`.
pub const MAX_ALPHA_N: usize = 16;

/// `[a₀; a₁, …, a_t]` with `a_i >= 1` for `i >= 1`.
///
/// The final quotient may be 1; [`ContinuedFraction::canonical`] removes
/// that ambiguity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    terms: Vec<BigInt>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl ContinuedFraction {
    pub fn new(terms: Vec<BigInt>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Rejected("a continued fraction needs a₀".into()));
        }
        if let Some(i) = terms.iter().skip(1).position(|a| !a.is_positive()) {
            return Err(Error::Rejected(format!(
                "partial quotient a_{} = {} is not positive",
                i + 1,
                terms[i + 1]
            )));
        }
        Ok(ContinuedFraction { terms })
    }

    pub fn from_i64(terms: &[i64]) -> Result<Self> {
        Self::new(terms.iter().map(|&a| BigInt::from(a)).collect())
    }

    pub fn terms(&self) -> &[BigInt] {
        &self.terms
    }

    /// Number of quotients after `a₀`.
    pub fn frac_len(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn is_canonical(&self) -> bool {
        self.frac_len() == 0 || !self.terms.last().unwrap().is_one()
    }

    /// Equal-valued expansion with final quotient at least 2.
    pub fn canonical(&self) -> ContinuedFraction {
        let mut terms = self.terms.clone();
        if terms.len() >= 2 && terms.last().unwrap().is_one() {
            terms.pop();
            *terms.last_mut().unwrap() += 1;
        }
        ContinuedFraction { terms }
    }

    pub fn value(&self) -> BigRational {
        cf_to_rational(self)
    }

    /// Terms as machine integers, when they all fit.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.terms.iter().map(|a| i64::try_from(a).ok()).collect()
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

/// Canonical expansion by the Euclidean algorithm (floor quotients).
pub fn cf_from_rational(r: &BigRational) -> ContinuedFraction {
    let mut p = r.numer().clone();
    let mut q = r.denom().clone();
    let mut terms = Vec::new();
    while !q.is_zero() {
        let (a, rem) = p.div_mod_floor(&q);
        terms.push(a);
        p = q;
        q = rem;
    }
    ContinuedFraction { terms }
}

/// Value via the convergent recurrence.
pub fn cf_to_rational(cf: &ContinuedFraction) -> BigRational {
    let (p, q) = convergent(&cf.terms);
    BigRational::new(p, q)
}

fn convergent(terms: &[BigInt]) -> (BigInt, BigInt) {
    let (mut p0, mut p1) = (BigInt::zero(), BigInt::one());
    let (mut q0, mut q1) = (BigInt::one(), BigInt::zero());
    for a in terms {
        let p2 = a * &p1 + &p0;
        let q2 = a * &q1 + &q0;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
    }
    (p1, q1)
}

/// Equal-valued expansion whose fractional length has the given parity,
/// using `[…, a_t] = […, a_t − 1, 1]` or its inverse.
pub fn set_parity(cf: &ContinuedFraction, parity: Parity) -> Result<ContinuedFraction> {
    let t = cf.frac_len();
    if t == 0 {
        return Err(Error::Rejected(format!(
            "{cf} has no fractional part, so its length parity cannot change"
        )));
    }
    let current = if t % 2 == 1 { Parity::Odd } else { Parity::Even };
    if current == parity {
        return Ok(cf.clone());
    }
    let mut terms = cf.terms.clone();
    let last = terms.last_mut().unwrap();
    if last.is_one() {
        terms.pop();
        *terms.last_mut().unwrap() += 1;
    } else {
        *last -= 1;
        terms.push(BigInt::one());
    }
    Ok(ContinuedFraction { terms })
}

/// `p/q + ε/q²` for `p/q = [a₀; a₁, …, a_t]` with `t` odd:
/// `[a₀; a₁, …, a_{t−1}, a_t − ε, a_t + ε, a_{t−1}, …, a₁]`, with a zero
/// quotient contracted by `[…, a, 0, b, …] = […, a + b, …]`.
pub fn fold_step(cf: &ContinuedFraction, eps: Sign) -> Result<ContinuedFraction> {
    let t = cf.frac_len();
    if t.is_multiple_of(2) {
        return Err(Error::Rejected(format!(
            "folding needs an odd number of quotients after a₀, {cf} has {t}"
        )));
    }
    let e = BigInt::from(eps.to_i8());
    let a = &cf.terms;
    let mut terms: Vec<BigInt> = a[..t].to_vec();
    terms.push(&a[t] - &e);
    terms.push(&a[t] + &e);
    terms.extend(a[1..t].iter().rev().cloned());
    Ok(ContinuedFraction {
        terms: contract_zeros(terms),
    })
}

fn contract_zeros(terms: Vec<BigInt>) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = Vec::with_capacity(terms.len());
    let mut iter = terms.into_iter();
    if let Some(a0) = iter.next() {
        out.push(a0);
    }
    while let Some(a) = iter.next() {
        if a.is_zero() {
            if let Some(b) = iter.next() {
                *out.last_mut().unwrap() += b;
                continue;
            }
        }
        out.push(a);
    }
    out
}

/// `α(ε₂, …, ε_n)` as an exact dyadic rational with denominator `2^(2^n)`.
pub fn alpha_value(eps: &[Sign]) -> Result<BigRational> {
    let n = eps.len() + 1;
    if eps.is_empty() {
        return Err(Error::Rejected("α needs at least ε₂".into()));
    }
    if n > MAX_ALPHA_N {
        return Err(Error::Rejected(format!(
            "α is materialized only for n <= {MAX_ALPHA_N}, got n = {n}"
        )));
    }
    let d = 1usize << n;
    let mut numer = (BigInt::one() << (d - 1)) + (BigInt::one() << (d - 2));
    for (k, &e) in eps.iter().enumerate() {
        let term = BigInt::one() << (d - (1usize << (k + 2)));
        if e.is_plus() {
            numer += term;
        } else {
            numer -= term;
        }
    }
    Ok(BigRational::new(numer, BigInt::one() << d))
}

/// The code `(1, ε₂, …, ε_n)`.
pub fn sign_code(eps: &[Sign]) -> FoldCode {
    let mut signs = vec![Sign::Plus];
    signs.extend_from_slice(eps);
    FoldCode::new(signs)
}

/// `[0, 1, 2R₁, …, 2R_m + 1]` where `R` is the run-length word of
/// `P_{1 ε₂ … ε_n}`.
pub fn predicted_cf(eps: &[Sign]) -> Result<ContinuedFraction> {
    let runs = runs_of(&sign_code(eps))?;
    let mut terms = vec![BigInt::zero(), BigInt::one()];
    terms.extend(runs.lengths().iter().map(|&r| BigInt::from(2 * r)));
    *terms.last_mut().unwrap() += 1;
    ContinuedFraction::new(terms)
}

/// `α(ε₂, …, ε_n)` reached by folding `[0, 2] = 1/2` with signs
/// `+1, ε₂, …, ε_n`.
pub fn alpha_by_folding(eps: &[Sign]) -> Result<ContinuedFraction> {
    let mut cf = ContinuedFraction::from_i64(&[0, 2])?;
    for &e in std::iter::once(&Sign::Plus).chain(eps) {
        cf = fold_step(&set_parity(&cf, Parity::Odd)?, e)?;
    }
    Ok(cf)
}

/// Sign vectors `(ε₂, …, ε_n)` of a fixed `n`, in index order.
pub fn sign_vectors(n: usize) -> impl Iterator<Item = Vec<Sign>> {
    FoldCode::all_of_length(n.saturating_sub(1)).map(|c| c.signs().to_vec())
}

fn render_eps(eps: &[Sign]) -> String {
    eps.iter().map(|s| s.as_char().to_string()).collect::<Vec<_>>().join(",")
}

/// Compares the expansion of `α` with [`predicted_cf`] for every sign vector
/// with `2 <= n <= n_max`.
pub fn cf_theorem_check(n_max: usize) -> CheckReport {
    cf_theorem_check_with(n_max, &|eps| predicted_cf(eps))
}

/// [`cf_theorem_check`] against an arbitrary predictor.
pub fn cf_theorem_check_with(
    n_max: usize,
    predict: &dyn Fn(&[Sign]) -> Result<ContinuedFraction>,
) -> CheckReport {
    let name = "cf_runs";
    let bound = format!("n<={n_max}");
    if !(2..=MAX_ALPHA_N).contains(&n_max) {
        return CheckReport::fail(name, bound, format!("n_max must lie in 2..={MAX_ALPHA_N}"));
    }
    for n in 2..=n_max {
        for eps in sign_vectors(n) {
            let witness = match (alpha_value(&eps), predict(&eps)) {
                (Ok(alpha), Ok(predicted)) => {
                    let actual = cf_from_rational(&alpha);
                    (actual != predicted.canonical()).then(|| {
                        format!(
                            "eps={} actual={} predicted={}",
                            render_eps(&eps),
                            actual,
                            predicted
                        )
                    })
                }
                (Err(e), _) | (_, Err(e)) => Some(format!("eps={} error={e}", render_eps(&eps))),
            };
            if let Some(w) = witness {
                return CheckReport::fail(name, bound, w);
            }
        }
    }
    CheckReport::pass(name, bound)
}

/// Checks that folding `predicted_cf(ε)` by `ε_{n+1}` gives
/// `predicted_cf(ε · ε_{n+1})` for every sign vector with `2 <= n < n_max`.
pub fn cf_induction_check(n_max: usize) -> CheckReport {
    let name = "cf_fold_induction";
    let bound = format!("n<{n_max}");
    for n in 2..n_max.min(MAX_ALPHA_N) {
        for eps in sign_vectors(n) {
            for next in [Sign::Plus, Sign::Minus] {
                let mut longer = eps.clone();
                longer.push(next);
                let folded = predicted_cf(&eps)
                    .and_then(|cf| set_parity(&cf, Parity::Odd))
                    .and_then(|cf| fold_step(&cf, next))
                    .map(|cf| cf.canonical());
                let expected = predicted_cf(&longer);
                match (folded, expected) {
                    (Ok(a), Ok(b)) if a == b => {}
                    (a, b) => {
                        return CheckReport::fail(
                            name,
                            bound,
                            format!("eps={} folded={a:?} predicted={b:?}", render_eps(&longer)),
                        )
                    }
                }
            }
        }
    }
    CheckReport::pass(name, bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn cf(terms: &[i64]) -> ContinuedFraction {
        ContinuedFraction::from_i64(terms).unwrap()
    }

    fn ratio(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    fn signs(s: &[i8]) -> Vec<Sign> {
        s.iter().map(|&x| Sign::from_i8(x).unwrap()).collect()
    }

    #[test]
    fn worked_example() {
        let alpha = alpha_value(&signs(&[1, -1, -1, 1])).unwrap();
        assert_eq!(alpha, BigRational::new(3472818177u64.into(), BigInt::one() << 32));
        let expected = cf(&[0, 1, 4, 4, 2, 6, 4, 2, 4, 4, 6, 4, 2, 4, 6, 2, 4, 5]);
        assert_eq!(cf_from_rational(&alpha), expected);
        assert_eq!(predicted_cf(&signs(&[1, -1, -1, 1])).unwrap(), expected);
    }

    #[test]
    fn small_expansions() {
        assert_eq!(cf_from_rational(&ratio(3, 4)), cf(&[0, 1, 3]));
        assert_eq!(cf_from_rational(&ratio(13, 16)), cf(&[0, 1, 4, 3]));
        assert_eq!(cf_from_rational(&ratio(-7, 3)), cf(&[-3, 1, 2]));
        assert_eq!(cf_from_rational(&ratio(5, 1)), cf(&[5]));
        assert_eq!(predicted_cf(&signs(&[1])).unwrap(), cf(&[0, 1, 4, 3]));
        assert_eq!(predicted_cf(&signs(&[-1])).unwrap(), cf(&[0, 1, 2, 5]));
        assert_eq!(alpha_value(&signs(&[1])).unwrap(), ratio(13, 16));
        assert_eq!(alpha_value(&signs(&[-1])).unwrap(), ratio(11, 16));
    }

    #[test]
    fn parity() {
        assert_eq!(set_parity(&cf(&[0, 2]), Parity::Odd).unwrap(), cf(&[0, 2]));
        assert_eq!(set_parity(&cf(&[0, 1, 3]), Parity::Odd).unwrap(), cf(&[0, 1, 2, 1]));
        assert_eq!(set_parity(&cf(&[0, 1, 2, 1]), Parity::Even).unwrap(), cf(&[0, 1, 3]));
        assert!(set_parity(&cf(&[4]), Parity::Odd).is_err());
    }

    #[test]
    fn folding() {
        assert_eq!(fold_step(&cf(&[0, 2]), Sign::Plus).unwrap(), cf(&[0, 1, 3]));
        let odd = set_parity(&cf(&[0, 1, 3]), Parity::Odd).unwrap();
        assert_eq!(fold_step(&odd, Sign::Plus).unwrap().value(), ratio(13, 16));
        // a_t = 1 with ε = +1 contracts the zero quotient
        assert_eq!(fold_step(&cf(&[0, 1]), Sign::Plus).unwrap(), cf(&[2]));
        assert!(fold_step(&cf(&[0, 1, 3]), Sign::Plus).is_err());
    }

    #[test]
    fn folding_reaches_alpha() {
        for n in 2..=8 {
            for eps in sign_vectors(n) {
                let folded = alpha_by_folding(&eps).unwrap();
                assert_eq!(folded.value(), alpha_value(&eps).unwrap());
            }
        }
    }

    #[test]
    fn alpha_bounds() {
        assert!(alpha_value(&[]).is_err());
        assert!(alpha_value(&[Sign::Plus; MAX_ALPHA_N]).is_err());
        let top = alpha_value(&[Sign::Minus; MAX_ALPHA_N - 1]).unwrap();
        assert_eq!(top.denom(), &(BigInt::one() << 65536));
    }

    #[test]
    fn checks() {
        assert!(cf_theorem_check(6).passed());
        assert!(cf_induction_check(7).passed());
        let report = cf_theorem_check_with(5, &|eps| {
            let mut terms = predicted_cf(eps)?.terms().to_vec();
            if eps.len() == 3 {
                terms[4] += 2;
            }
            ContinuedFraction::new(terms)
        });
        assert!(!report.passed());
        assert!(report.witness.unwrap().contains("eps="));
    }

    #[test]
    fn random_round_trips() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for _ in 0..300 {
            let limbs = rng.gen_range(1..=8);
            let p: Vec<u32> = (0..limbs).map(|_| rng.gen()).collect();
            let q: Vec<u32> = (0..limbs).map(|_| rng.gen()).collect();
            let mut p = BigInt::from(num_bigint::BigUint::from_slice(&p));
            let q = BigInt::from(num_bigint::BigUint::from_slice(&q)) + 1;
            if rng.gen() {
                p = -p;
            }
            let r = BigRational::new(p, q);
            let c = cf_from_rational(&r);
            assert!(c.is_canonical());
            assert_eq!(c.value(), r);
        }
    }
}
