//! The tower of nilpotent quotients of the infinite dihedral group and
//! elements of its truncated inverse limit.

use gamma_omega::nilpotent::{build_tower, FpPresentation};

fn main() {
    let p = FpPresentation::infinite_dihedral();
    let tower = build_tower(&p, 10).unwrap();
    for c in 1..=tower.depth() {
        let level = &tower.levels[c - 1];
        let b = &level.generator_images[1];
        println!(
            "G/gamma_{:<3} order {:>5}   order of b {:>4}",
            c + 1,
            level.group.order().unwrap(),
            level.group.element_order(b).unwrap()
        );
    }
    let w = p.parse_word("[b^-1,a]").unwrap();
    let e = tower.element_from_word(&w);
    println!("\n[b^-1, a] = b^2 has components {:?}", &e.components[..4]);
    println!("coherent: {}", tower.incoherent_level(&e).is_none());
}
