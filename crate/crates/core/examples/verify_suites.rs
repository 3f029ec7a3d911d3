//! Run named check suites and print one report per line.

use paperfold::theorems::{run_suite, Suite, SuiteConfig};

fn main() -> paperfold::Result<()> {
    let config = SuiteConfig {
        max_code_len: 8,
        max_index: 10_000,
    };
    for suite in [Suite::Runs, Suite::Cf] {
        for report in run_suite(suite, &config)? {
            println!("{report}");
        }
    }
    Ok(())
}
