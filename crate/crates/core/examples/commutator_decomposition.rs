//! Writes an element of the commutator subgroup as a product of
//! commutators with chosen normal generators, level by level.

use gamma_omega::nilpotent::{build_tower, lemma22_decompose, FpPresentation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let p = FpPresentation::infinite_dihedral();
    let tower = build_tower(&p, 8).unwrap();
    let a = tower.element_from_word(&p.parse_word("b^6").unwrap());
    let d = lemma22_decompose(&tower, &a, &[0, 1]).unwrap();
    println!("b^6 at the top level: {:?}", a.components.last().unwrap());
    for (g, x) in d.factors.iter().zip(&d.generators) {
        println!("  [g, {}] with g = {:?}", p.generators()[*x], g.components.last().unwrap());
    }
    println!("verified at every level: {}", d.verify(&tower, &a));

    let free = build_tower(&FpPresentation::free(2), 6).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let ok = (0..20)
        .filter(|_| {
            let a = free.random_commutator_element(&mut rng, 3);
            lemma22_decompose(&free, &a, &[0, 1]).is_ok_and(|d| d.verify(&free, &a))
        })
        .count();
    println!("free group of rank 2, depth 6: {ok}/20 random elements decomposed");
}
