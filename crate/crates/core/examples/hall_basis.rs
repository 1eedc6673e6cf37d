//! Basic commutators of the free group and the Witt ranks of the lower
//! central quotients.

use gamma_omega::selftest::necklace_count;
use gamma_omega::words::hall_basis;

fn main() {
    let basis = hall_basis(2, 5);
    for (k, layer) in basis.iter().enumerate() {
        let names: Vec<String> = layer.iter().map(|c| c.to_string()).collect();
        println!("weight {}: {}", k + 1, names.join("  "));
    }
    println!();
    for r in 1..=4usize {
        let counts: Vec<usize> = hall_basis(r, 8).iter().map(Vec::len).collect();
        let witt: Vec<u64> = (1..=8).map(|n| necklace_count(r as u64, n)).collect();
        println!("rank {r}: {counts:?}  witt {witt:?}");
    }
}
