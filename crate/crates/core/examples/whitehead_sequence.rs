//! Cokernel of the Whitehead map and the resulting short exact sequence
//! for pi_3, integrally and rationally.

use gamma_omega::abelian::{AbMap, FgAbelianGroup, IntMatrix};
use gamma_omega::whitehead::{pi3_sequence, Term, WhiteheadInput, WhiteheadMap};

fn main() {
    for n in 2..=4u64 {
        let h2 = n * (n - 1) / 2;
        let r = pi3_sequence(&WhiteheadInput::rational_zero(h2, 0, 0)).unwrap();
        println!("H_2 = Q^{h2}, H_4 = 0: {}  infinitely generated: {}", r.statement, r.infinitely_generated);
    }

    let z = FgAbelianGroup::free(1);
    let input = WhiteheadInput {
        h2: Term::Integral(z.clone()),
        h3: Term::Integral(FgAbelianGroup::trivial()),
        h4: Term::Integral(z.clone()),
        w: WhiteheadMap::Integral(AbMap::new(z.clone(), z, IntMatrix::from_rows(&[vec![2]])).unwrap()),
    };
    let r = pi3_sequence(&input).unwrap();
    println!("w = 2 on Z: {}  infinitely generated: {}", r.statement, r.infinitely_generated);
}
