//! Milnor invariants of braid closures from the Magnus expansion of the
//! longitudes.

use gamma_omega::milnor::{braid_closure, mu_bar, BraidWord};

fn main() {
    let links = [
        ("Hopf link", "2: s1 s1", vec![vec![1, 2]]),
        ("(2,4) torus link", "2: s1^4", vec![vec![1, 2]]),
        ("Borromean rings", "3: s1 s2^-1 s1 s2^-1 s1 s2^-1", vec![vec![1, 2], vec![1, 3], vec![1, 2, 3], vec![2, 1, 3]]),
    ];
    for (name, text, indices) in links {
        let b: BraidWord = text.parse().unwrap();
        let link = braid_closure(&b);
        println!("{name} ({b}): {} components", link.num_components());
        for (c, l) in link.longitudes.iter().enumerate() {
            println!("  longitude {}: {}", c + 1, link.group.format_word(l));
        }
        for i in indices {
            println!("  {}", mu_bar(&link, &i).unwrap());
        }
    }
}
