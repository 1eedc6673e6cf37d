//! Whether chosen generators normally generate each level of a tower.

use gamma_omega::nilpotent::{build_tower, normal_generation_check, FpPresentation};

fn main() {
    let cases = [
        ("free rank 2, {a, b}", FpPresentation::free(2), vec![0, 1]),
        ("free rank 2, {a}", FpPresentation::free(2), vec![0]),
        ("dihedral, {a, b}", FpPresentation::infinite_dihedral(), vec![0, 1]),
        ("dihedral, {b}", FpPresentation::infinite_dihedral(), vec![1]),
    ];
    for (name, p, xs) in cases {
        let tower = build_tower(&p, 4).unwrap();
        let checks = normal_generation_check(&tower, &xs).unwrap();
        let flags: Vec<bool> = checks.iter().map(|c| c.normally_generated).collect();
        println!("{name:<22} {flags:?}");
    }
}
