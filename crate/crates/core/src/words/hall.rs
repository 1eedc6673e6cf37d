//! Basic commutators in the sense of P. Hall.
//!
//! Order: the generators `x₀ < x₁ < …` come first; then weight by weight,
//! and within one weight `[u, v] < [u', v']` iff `(pos u, pos v)` precedes
//! `(pos u', pos v')` lexicographically, where `pos` is the position in this
//! same order. A commutator `[u, v]` of basic commutators is basic when
//! `u > v` and, if `u = [u₁, u₂]`, also `u₂ ≤ v`.

use std::fmt;

use serde::{Serialize, Serializer};

use super::word::letter_name;
use super::Word;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum BasicCommutator {
    Generator(usize),
    Commutator(Box<BasicCommutator>, Box<BasicCommutator>),
}

impl BasicCommutator {
    pub fn weight(&self) -> usize {
        match self {
            BasicCommutator::Generator(_) => 1,
            BasicCommutator::Commutator(u, v) => u.weight() + v.weight(),
        }
    }

    /// The commutator as a word, `[u, v] = u⁻¹ v⁻¹ u v`.
    pub fn to_word(&self, alphabet_size: usize) -> Word {
        match self {
            BasicCommutator::Generator(i) => Word::generator(alphabet_size, *i),
            BasicCommutator::Commutator(u, v) => Word::commutator(&u.to_word(alphabet_size), &v.to_word(alphabet_size)),
        }
    }
}

impl fmt::Display for BasicCommutator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasicCommutator::Generator(i) => write!(f, "{}", letter_name(*i)),
            BasicCommutator::Commutator(u, v) => write!(f, "[{u},{v}]"),
        }
    }
}

impl Serialize for BasicCommutator {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Copy)]
enum Node {
    Gen(usize),
    Pair(usize, usize),
}

fn build(nodes: &[Node], i: usize) -> BasicCommutator {
    match nodes[i] {
        Node::Gen(g) => BasicCommutator::Generator(g),
        Node::Pair(u, v) => BasicCommutator::Commutator(Box::new(build(nodes, u)), Box::new(build(nodes, v))),
    }
}

/// Basic commutators of weight `1..=max_class` on `rank` generators, grouped
/// by weight (entry `k − 1` holds weight `k`).
pub fn hall_basis(rank: usize, max_class: usize) -> Vec<Vec<BasicCommutator>> {
    let mut nodes: Vec<Node> = (0..rank).map(Node::Gen).collect();
    // positions of each weight's nodes, as a contiguous range
    let mut ranges: Vec<std::ops::Range<usize>> = std::iter::once(0..rank).collect();
    for k in 2..=max_class {
        let mut fresh: Vec<(usize, usize)> = Vec::new();
        for wv in 1..=k / 2 {
            let wu = k - wv;
            for u in ranges[wu - 1].clone() {
                for v in ranges[wv - 1].clone() {
                    if u <= v {
                        continue;
                    }
                    if let Node::Pair(_, u2) = nodes[u] {
                        if u2 > v {
                            continue;
                        }
                    }
                    fresh.push((u, v));
                }
            }
        }
        fresh.sort_unstable();
        let start = nodes.len();
        nodes.extend(fresh.into_iter().map(|(u, v)| Node::Pair(u, v)));
        ranges.push(start..nodes.len());
    }
    ranges
        .into_iter()
        .take(max_class)
        .map(|r| r.map(|i| build(&nodes, i)).collect())
        .collect()
}
