//! The quadratic functor from its defining presentation (one generator per
//! element) against the structural formula, on every abelian group of
//! order at most 16.

use gamma_omega::functors::{functor_apply, gamma2_oracle, FunctorName};
use gamma_omega::selftest::abelian_groups_up_to;

fn main() {
    for a in abelian_groups_up_to(16) {
        let oracle = gamma2_oracle(&a, 16).expect("small group");
        let formula = functor_apply(FunctorName::Gamma2, &a);
        let mark = if oracle == formula { "ok" } else { "MISMATCH" };
        println!("{:<24} gamma2 = {:<34} {mark}", a.to_string(), formula.to_string());
    }
}
