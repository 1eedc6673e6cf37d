//! First nonvanishing Milnor invariant length of a few links.

use gamma_omega::milnor::{braid_closure, vanish_up_to, BraidWord};

fn main() {
    for text in ["2: s1 s1", "3: s1 s2^-1 s1 s2^-1 s1 s2^-1", "3:", "3: s1^2 s2^2"] {
        let b: BraidWord = text.parse().unwrap();
        let link = braid_closure(&b);
        print!("{text:<34}");
        for l in vanish_up_to(&link, 4).unwrap() {
            match &l.witness {
                None => print!(" len {}: 0", l.length),
                Some(w) => print!(" len {}: {}", l.length, w),
            }
        }
        println!();
    }
}
