//! Magnus expansion of free group words and lower central depth.

use gamma_omega::words::{lcs_weight, magnus_expand, parse_word};

fn main() {
    for text in ["a", "a^-1", "[a,b]", "[[a,b],b]", "[a,b]^2*[b,a]", "[[a,b],[a,c]]"] {
        let w = parse_word(text, 3).unwrap();
        println!("{text:<16} weight {:<10} M = {}", lcs_weight(&w, 6).to_string(), magnus_expand(&w, 4));
    }
    let u = parse_word("a^2*b^-1", 2).unwrap();
    let v = parse_word("b*a*b", 2).unwrap();
    let d = 4;
    let lhs = magnus_expand(&u.product(&v), d);
    let rhs = magnus_expand(&u, d).mul(&magnus_expand(&v, d));
    println!("\nM(uv) == M(u) M(v) at degree {d}: {}", lhs == rhs);
}
