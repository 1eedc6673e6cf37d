//! Nilpotent quotients of finitely presented groups as consistent
//! polycyclic presentations.

use gamma_omega::nilpotent::{nilpotent_quotient, FpPresentation};

fn main() {
    let dihedral = FpPresentation::parse("ab", &["a^2", "a^-1*b*a*b"]).unwrap();
    let q = nilpotent_quotient(&dihedral, 3).unwrap();
    println!("<a, b | a^2, a^-1 b a b> / gamma_4:");
    println!("{}", q.group);
    println!("order {:?}\n", q.group.order());

    let heisenberg = FpPresentation::parse("xy", &["[[x,y],x]", "[[x,y],y]"]).unwrap();
    let q = nilpotent_quotient(&heisenberg, 4).unwrap();
    println!("Heisenberg group, class 4 quotient: layers {:?}, Hirsch length {}", q.group.layer_sizes(), q.group.hirsch_length());

    let free = nilpotent_quotient(&FpPresentation::free(3), 4).unwrap();
    println!("free group of rank 3, class 4: layers {:?}", free.group.layer_sizes());
}
