use gamma_omega::words::{hall_basis, lcs_weight, magnus_expand, parse_word, LcsWeight, MagnusSeries, Word};
use num_bigint::BigInt;
use proptest::prelude::*;

fn word(alphabet: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..alphabet, prop_oneof![-2i64..=-1, 1i64..=2]), 0..=max_len)
        .prop_map(move |letters| Word::from_letters(alphabet, letters).reduce())
}

fn pair() -> impl Strategy<Value = (Word, Word, usize)> {
    (1usize..=3).prop_flat_map(|n| (word(n, 12), word(n, 12), 1usize..=5))
}

/// Truncated product computed coefficient by coefficient from the
/// definitions `x -> 1 + X`, `x^-1 -> 1 - X + X^2 - ...`, on dense vectors
/// indexed by monomials. Independent of the sparse implementation.
fn dense_expand(w: &Word, n: usize, d: usize) -> Vec<(Vec<usize>, BigInt)> {
    fn monomials(n: usize, d: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        let mut layer = vec![vec![]];
        for _ in 0..d {
            let mut next = Vec::new();
            for m in &layer {
                for i in 0..n {
                    let mut m2: Vec<usize> = m.clone();
                    m2.push(i);
                    next.push(m2);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
    let ms = monomials(n, d);
    let pos = |m: &[usize]| ms.iter().position(|x| x == m).unwrap();
    let mut acc: Vec<BigInt> = vec![BigInt::from(0); ms.len()];
    acc[0] = BigInt::from(1);
    for &(g, e) in w.letters() {
        for _ in 0..e.unsigned_abs() {
            // factor: 1 + X_g or sum_k (-X_g)^k
            let factor = |k: usize| -> BigInt {
                if e > 0 {
                    BigInt::from(if k <= 1 { 1 } else { 0 })
                } else {
                    BigInt::from(if k.is_multiple_of(2) { 1 } else { -1 })
                }
            };
            let mut next = vec![BigInt::from(0); ms.len()];
            for (idx, m) in ms.iter().enumerate() {
                if acc[idx] == BigInt::from(0) {
                    continue;
                }
                for k in 0..=(d - m.len()) {
                    let mut m2 = m.clone();
                    m2.extend(std::iter::repeat_n(g, k));
                    next[pos(&m2)] += &acc[idx] * factor(k);
                }
            }
            acc = next;
        }
    }
    ms.into_iter().zip(acc).filter(|(_, c)| *c != BigInt::from(0)).collect()
}

#[test]
fn commutator_expansions() {
    let xy = parse_word("[a,b]", 2).unwrap();
    let s = magnus_expand(&xy, 2);
    assert_eq!(s.coefficient(&[0, 1]), BigInt::from(1));
    assert_eq!(s.coefficient(&[1, 0]), BigInt::from(-1));
    assert_eq!(lcs_weight(&parse_word("a", 2).unwrap(), 4), LcsWeight::Exactly(1));
    assert_eq!(lcs_weight(&xy, 4), LcsWeight::Exactly(2));
    assert_eq!(lcs_weight(&parse_word("[[a,b],b]", 2).unwrap(), 4), LcsWeight::Exactly(3));
    assert_eq!(lcs_weight(&parse_word("[[a,b],[a,b]]", 2).unwrap(), 4), LcsWeight::Infinite);
    assert_eq!(lcs_weight(&parse_word("[[a,b],[a,b^2]]", 2).unwrap(), 3), LcsWeight::AtLeast(4));
}

#[test]
fn basic_commutators_have_their_weight() {
    for (k, layer) in hall_basis(3, 5).iter().enumerate() {
        for c in layer {
            assert_eq!(c.weight(), k + 1);
            assert_eq!(lcs_weight(&c.to_word(3), 6), LcsWeight::Exactly(k + 1), "{c:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn expansion_is_multiplicative((u, v, d) in pair()) {
        let lhs = magnus_expand(&u.product(&v), d);
        let rhs = magnus_expand(&u, d).mul(&magnus_expand(&v, d));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_expands_to_inverse((u, _v, d) in pair()) {
        let n = u.alphabet_size();
        let one = MagnusSeries::one(n, d);
        prop_assert_eq!(magnus_expand(&u, d).mul(&magnus_expand(&u.inverse(), d)), one);
    }

    #[test]
    fn matches_dense_oracle(u in word(2, 6), d in 1usize..=4) {
        let sparse = magnus_expand(&u, d);
        let mut terms: Vec<(Vec<usize>, BigInt)> = sparse.terms().map(|(m, c)| (m, c.clone())).collect();
        terms.sort();
        let mut dense = dense_expand(&u, 2, d);
        dense.sort();
        prop_assert_eq!(terms, dense);
    }

    #[test]
    fn commutator_grading((u, v, _d) in pair()) {
        let cap = 8;
        if let (LcsWeight::Exactly(a), LcsWeight::Exactly(b)) = (lcs_weight(&u, cap), lcs_weight(&v, cap)) {
            match lcs_weight(&Word::commutator(&u, &v), cap) {
                LcsWeight::Exactly(c) => prop_assert!(c >= a + b),
                LcsWeight::AtLeast(c) => prop_assert!(c > cap),
                LcsWeight::Infinite => {}
            }
        }
    }

    #[test]
    fn parse_display_round_trip(u in word(3, 8)) {
        let text = u.to_string();
        let back = Word::parse(&text, 3).unwrap();
        prop_assert_eq!(back, u);
    }
}
