//! Tensor square, exterior powers, symmetric square and Whitehead's
//! quadratic functor, on groups and on maps.

use gamma_omega::abelian::{AbMap, FgAbelianGroup};
use gamma_omega::functors::{functor_apply, functor_map, rational_dim, FunctorName, RationalSpace};

fn main() {
    let groups = ["Z/2", "Z/4", "Z/2 + Z/2", "Z/2 + Z/4", "Z/3 + Z", "Z^3"];
    let functors = [
        FunctorName::TensorSquare,
        FunctorName::Exterior(2),
        FunctorName::Sym2,
        FunctorName::Gamma2,
    ];
    println!("{:<12}{:>24}{:>8}{:>20}{:>20}", "A", "tensor2", "ext:2", "sym2", "gamma2");
    for text in groups {
        let a: FgAbelianGroup = text.parse().unwrap();
        print!("{text:<12}");
        for (i, f) in functors.into_iter().enumerate() {
            let w = [24, 8, 20, 20][i];
            print!("{:>w$}", functor_apply(f, &a).to_string());
        }
        println!();
    }

    // multiplication by 3 on Z/4 induces multiplication by 9 on gamma2(Z/4) = Z/8
    let a: FgAbelianGroup = "Z/4".parse().unwrap();
    let g = functor_map(FunctorName::Gamma2, &AbMap::scalar(&a, 3));
    println!("\ngamma2(3 on Z/4): {g:?}");

    for n in 2..=3u64 {
        let ext2 = rational_dim(FunctorName::Exterior(2), RationalSpace::new(n));
        println!(
            "n = {n}: dim ext^2 Q^n = {ext2}, dim ext^4 Q^n = {}, dim gamma2(ext^2 Q^n) = {}",
            rational_dim(FunctorName::Exterior(4), RationalSpace::new(n)),
            rational_dim(FunctorName::Gamma2, RationalSpace::new(ext2)),
        );
    }
}
