//! Finitely generated abelian groups: presentations, maps, kernels,
//! cokernels and homology of a short complex.

use gamma_omega::abelian::{homology_at, map_kernel_cokernel, AbMap, FgAbelianGroup, IntMatrix};

fn main() {
    // Z^3 modulo the columns of a relation matrix
    let rel = IntMatrix::from_rows(&[vec![2, 0, 0], vec![0, 4, 6], vec![0, 0, 0]]);
    println!("Z^3 / <relations> = {}", FgAbelianGroup::from_relations(&rel));

    let parsed: FgAbelianGroup = "Z/2 + Z/3 + Z^2".parse().unwrap();
    println!("Z/2 + Z/3 + Z^2 in canonical form: {parsed}");

    // Z -> Z/2 + Z, 1 -> (1, 2)
    let f = AbMap::new(
        FgAbelianGroup::free(1),
        "Z/2 + Z".parse().unwrap(),
        IntMatrix::from_rows(&[vec![1], vec![2]]),
    )
    .unwrap();
    let kc = map_kernel_cokernel(&f);
    println!("f: {} -> {}: kernel {}, image {}, cokernel {}", f.domain(), f.codomain(), kc.kernel, f.image(), kc.cokernel);

    // Z --2--> Z --0--> Z: homology in the middle is Z/2
    let z = FgAbelianGroup::free(1);
    let two = AbMap::scalar(&z, 2);
    let zero = AbMap::zero(&z, &z);
    println!("homology of Z -2-> Z -0-> Z at the middle: {}", homology_at(&two, &zero).unwrap());
}
