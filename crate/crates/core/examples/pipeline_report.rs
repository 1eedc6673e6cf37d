//! The full report: dihedral tower, both E2 pages, homology of Z x| C_2,
//! rational cokernels, and the chain of cited results, each step marked
//! CHECKED or ASSUMED.

use gamma_omega::whitehead::pipeline_report;

fn main() {
    let report = pipeline_report();
    if std::env::args().any(|a| a == "--json") {
        println!("{}", report.to_json());
    } else {
        print!("{report}");
    }
}
