//! Run every property suite with a fixed seed.

use bhlab::cli::suite_line;
use bhlab::suites::{run_suite, Suite, SuiteConfig};

fn main() {
    let cfg = SuiteConfig { seed: 1, cases: 300, ..Default::default() };
    for s in Suite::ALL.into_iter().filter(|s| *s != Suite::Quasiiso) {
        print!("{}", suite_line(&run_suite(s, None, &cfg)));
    }
}
