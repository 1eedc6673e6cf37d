//! Smith normal form of an integer matrix with its unimodular transforms.

use gamma_omega::abelian::{invariant_factors, parse_matrix, smith_normal_form};

fn main() {
    let m = parse_matrix("[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]").expect("valid matrix");
    let s = smith_normal_form(&m);
    println!("M =\n{m}\n");
    println!("U =\n{}\n", s.u);
    println!("V =\n{}\n", s.v);
    println!("D = U M V =\n{}\n", s.d);
    assert_eq!(&(&s.u * &m) * &s.v, s.d);
    let inv: Vec<String> = invariant_factors(&m).iter().map(ToString::to_string).collect();
    println!("invariant factors: {}", inv.join(", "));
}
