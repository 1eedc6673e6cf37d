//! Runs the cross-module oracle suites for a seed given on the command line.

use gamma_omega::selftest::selftest;

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    let report = selftest(seed);
    print!("{report}");
    if !report.all_passed() {
        std::process::exit(1);
    }
}
