//! Bounded, named checks over all codes within a bound, each run through
//! the semantic definitions and, where an automaton exists, through the
//! inferred automaton as well.

mod machines;
mod regular;
mod sp;
mod words;

use std::fmt;
use std::str::FromStr;

use serde_json::json;

use crate::contfrac::{cf_induction_check, cf_theorem_check, MAX_ALPHA_N};
use crate::error::{Error, Result};

pub use machines::{automata_suite, ep_from_sp, Machines, RegularMachines, SP_STATES, EP_STATES, RL_STATES};
pub use regular::{
    g_is_one_mod_eight, h_doubles, regular_automata_agree, regular_suite, sum_part_a,
    sum_part_b, sum_part_c, tt_suite,
};
pub use sp::sp_suite;
pub use words::{
    complexity, no_triple_extension, overlap_free, palindromes, prop1, prop4,
    right_special_at_most_four, right_special_four, runs_suite, square_orders,
    squares_of_order_one, squares_of_order_three, squares_present, thm3, EXPECTED_PALINDROMES,
    EXPECTED_SQUARES,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

/// Outcome of one named check. A failing report always carries a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub bound: String,
    pub verdict: Verdict,
    pub witness: Option<String>,
}

impl CheckReport {
    pub fn pass(name: impl Into<String>, bound: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            bound: bound.into(),
            verdict: Verdict::Pass,
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, bound: impl Into<String>, witness: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            bound: bound.into(),
            verdict: Verdict::Fail,
            witness: Some(witness.into()),
        }
    }

    /// Pass iff `witness` is `None`.
    pub fn from_witness(name: impl Into<String>, bound: impl Into<String>, witness: Option<String>) -> Self {
        match witness {
            None => Self::pass(name, bound),
            Some(w) => Self::fail(name, bound, w),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_tsv(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}",
            self.name,
            self.bound,
            if self.passed() { "PASS" } else { "FAIL" },
            self.witness.as_deref().unwrap_or("-")
        )
    }

    pub fn to_json(&self) -> String {
        json!({
            "name": self.name,
            "bound": self.bound,
            "verdict": if self.passed() { "pass" } else { "fail" },
            "witness": self.witness,
        })
        .to_string()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_tsv())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Sp,
    Runs,
    Regular,
    Cf,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Suite::All),
            "sp" => Ok(Suite::Sp),
            "runs" => Ok(Suite::Runs),
            "regular" => Ok(Suite::Regular),
            "cf" => Ok(Suite::Cf),
            other => Err(Error::Rejected(format!("unknown suite {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Largest effective code length swept (also the largest `n` of the
    /// continued-fraction sweep).
    pub max_code_len: usize,
    /// Largest index for the regular-sequence checks.
    pub max_index: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_code_len: 10,
            max_index: 100_000,
        }
    }
}

/// Runs a suite; reports come back in a fixed order.
pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let l = config.max_code_len;
    if l < 2 {
        return Err(Error::Rejected("max code length must be at least 2".into()));
    }
    if config.max_index < 16 {
        return Err(Error::Rejected("max index must be at least 16".into()));
    }
    let needs_machines = matches!(suite, Suite::All | Suite::Sp | Suite::Regular);
    let machines = needs_machines.then(Machines::infer).transpose()?;
    let mut out = Vec::new();
    if let (Suite::All | Suite::Sp, Some(m)) = (suite, &machines) {
        out.extend(automata_suite(m, l));
        out.extend(sp_suite(&m.sp, l));
        out.push(ep_from_sp(m, l));
    }
    if matches!(suite, Suite::All | Suite::Runs) {
        out.extend(runs_suite(l, machines.as_ref().map(|m| &m.ep)));
    }
    if let (Suite::All | Suite::Regular, Some(m)) = (suite, &machines) {
        let regular = RegularMachines::derive(m)?;
        out.extend(regular_suite(&regular, config.max_index));
    }
    if matches!(suite, Suite::All | Suite::Cf) {
        let n = l.min(MAX_ALPHA_N);
        out.push(cf_theorem_check(n));
        out.push(cf_induction_check(n));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_formats() {
        let ok = CheckReport::pass("prop1", "t<=4");
        assert_eq!(ok.to_tsv(), "prop1\tt<=4\tPASS\t-");
        let bad = CheckReport::fail("prop4", "t<=4", "f=++ n=1");
        assert_eq!(bad.to_tsv(), "prop4\tt<=4\tFAIL\tf=++ n=1");
        let v: serde_json::Value = serde_json::from_str(&bad.to_json()).unwrap();
        assert_eq!(v["verdict"], "fail");
        assert_eq!(v["witness"], "f=++ n=1");
        assert!(CheckReport::from_witness("x", "b", None).passed());
    }

    #[test]
    fn suite_names() {
        assert_eq!("regular".parse::<Suite>().unwrap(), Suite::Regular);
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn bounds_validated() {
        let config = SuiteConfig {
            max_code_len: 1,
            ..SuiteConfig::default()
        };
        assert!(run_suite(Suite::Cf, &config).is_err());
    }
}
