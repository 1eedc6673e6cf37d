//! Homology of a finite cyclic group with coefficients in a module, from
//! the periodic resolution.

use gamma_omega::abelian::{AbMap, FgAbelianGroup, IntMatrix};
use gamma_omega::homology::{cyclic_homology, CyclicModule};

fn show(name: &str, module: &CyclicModule) {
    let h: Vec<String> = cyclic_homology(module, 6).iter().map(ToString::to_string).collect();
    println!("{name:<28} {}", h.join(", "));
}

fn main() {
    let z = FgAbelianGroup::free(1);
    show("C_2 on Z, trivial", &CyclicModule::trivial(2, &z));
    show("C_2 on Z, sign", &CyclicModule::sign(2).unwrap());
    show("C_5 on Z/11, t = 3", &CyclicModule::new(5, AbMap::scalar(&FgAbelianGroup::cyclic(11), 3)).unwrap());
    let swap = AbMap::new(FgAbelianGroup::free(2), FgAbelianGroup::free(2), IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]])).unwrap();
    show("C_2 on Z^2, swap", &CyclicModule::new(2, swap).unwrap());
    let rot = AbMap::new(FgAbelianGroup::free(2), FgAbelianGroup::free(2), IntMatrix::from_rows(&[vec![0, -1], vec![1, 0]])).unwrap();
    show("C_4 on Z^2, quarter turn", &CyclicModule::new(4, rot).unwrap());
}
