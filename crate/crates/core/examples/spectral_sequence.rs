//! E2 page of a split extension A x| C_m and assembly of the homology when
//! the page forces it.

use gamma_omega::abelian::{AbMap, FgAbelianGroup};
use gamma_omega::homology::{assemble_homology, lhs_e2_split, Assembly};

fn main() {
    let z = FgAbelianGroup::free(1);
    let page = lhs_e2_split(&z, &AbMap::scalar(&z, -1), 2, 7, 1).unwrap();
    println!("Z x| C_2, E2 page:\n{page}");
    match assemble_homology(&page, 7) {
        Assembly::Determined { homology } => {
            for (i, h) in homology.iter().enumerate() {
                println!("H_{i} = {h}");
            }
        }
        Assembly::Ambiguous(r) => println!("not forced: {:?}", r.unresolved),
    }

    // torsion kernel: rows above 2 are not computed, assembly reports it
    let a = FgAbelianGroup::cyclic(4);
    let page = lhs_e2_split(&a, &AbMap::scalar(&a, -1), 2, 3, 3).unwrap();
    println!("\nZ/4 x| C_2, E2 page:\n{page}");
    if let Assembly::Ambiguous(r) = assemble_homology(&page, 3) {
        for u in &r.unresolved {
            println!("degree {}: {}", u.degree, u.reason);
        }
    }
}
