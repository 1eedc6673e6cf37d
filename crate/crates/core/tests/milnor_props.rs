use gamma_omega::milnor::{braid_closure, mu_bar, mu_table, vanish_up_to, BraidWord, LinkData};
use num_bigint::BigInt;
use proptest::prelude::*;

fn braid(max_strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2..=max_strands).prop_flat_map(move |n| {
        let letter = (1..n as i32, any::<bool>()).prop_map(|(g, pos)| if pos { g } else { -g });
        prop::collection::vec(letter, 0..=max_len).prop_map(move |w| BraidWord::new(n, w).unwrap())
    })
}

/// Sorted `(value, modulus)` pairs of all indices of length `k`.
fn spectrum(link: &LinkData, k: usize) -> Vec<(BigInt, BigInt)> {
    let mut v: Vec<(BigInt, BigInt)> = mu_table(link, k).unwrap().into_values().map(|m| (m.value, m.modulus)).collect();
    v.sort();
    v
}

fn borromean() -> LinkData {
    braid_closure(&"3: s1 s2^-1 s1 s2^-1 s1 s2^-1".parse().unwrap())
}

#[test]
fn standard_links() {
    let hopf = braid_closure(&BraidWord::new(2, vec![1, 1]).unwrap());
    let m = mu_bar(&hopf, &[1, 2]).unwrap();
    assert_eq!(m.value.magnitude(), &1u32.into());
    assert_eq!(m.modulus, BigInt::from(0));
    let unlink = braid_closure(&BraidWord::new(2, vec![]).unwrap());
    assert!(unlink.longitudes.iter().all(|l| l.is_identity()));
    assert!(mu_bar(&unlink, &[1, 2]).unwrap().vanishes());

    let b = borromean();
    assert_eq!(b.num_components(), 3);
    assert!(b.linking_numbers().iter().flatten().all(|&x| x == 0));
    let v = vanish_up_to(&b, 3).unwrap();
    assert!(v[0].vanishes);
    assert!(!v[1].vanishes);
    assert_eq!(v[1].witness.as_ref().unwrap().index, vec![1, 2, 3]);
    let m = mu_bar(&b, &[1, 2, 3]).unwrap();
    assert_eq!(m.value.magnitude(), &1u32.into());
    assert_eq!(m.modulus, BigInt::from(0));
    // cyclic symmetry at the first nonvanishing length
    assert_eq!(mu_bar(&b, &[2, 3, 1]).unwrap().value, m.value);
    assert_eq!(mu_bar(&b, &[3, 1, 2]).unwrap().value, m.value);

    let unlink3 = braid_closure(&BraidWord::new(3, vec![]).unwrap());
    assert!(vanish_up_to(&unlink3, 6).unwrap().iter().all(|l| l.vanishes));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn linking_numbers_match_crossings(b in braid(4, 10)) {
        let link = braid_closure(&b);
        let geometric = b.components();
        let oracle = b.crossing_linking_matrix();
        let c = link.num_components();
        prop_assert_eq!(c, geometric.len());
        for i in 0..c {
            let gi = geometric.iter().position(|g| g.contains(&link.components[i][0])).unwrap();
            prop_assert_eq!(link.framing_corrections[i], oracle[gi][gi]);
            for j in 0..c {
                if i == j {
                    continue;
                }
                let gj = geometric.iter().position(|g| g.contains(&link.components[j][0])).unwrap();
                let mu = mu_bar(&link, &[i + 1, j + 1]).unwrap();
                prop_assert_eq!(mu.value, BigInt::from(oracle[gi][gj]));
            }
        }
    }

    #[test]
    fn invariant_under_conjugation(b in braid(3, 8), g in 1i32..=2, pos in any::<bool>()) {
        prop_assume!(g < b.strands() as i32);
        let g = if pos { g } else { -g };
        let before = braid_closure(&b);
        let after = braid_closure(&b.conjugate_by(g).unwrap());
        for k in 2..=3 {
            prop_assert_eq!(spectrum(&before, k), spectrum(&after, k), "length {}", k);
        }
    }

    #[test]
    fn invariant_under_stabilization(b in braid(3, 8), pos in any::<bool>()) {
        let before = braid_closure(&b);
        let after = braid_closure(&b.stabilize(pos).unwrap());
        prop_assert_eq!(before.num_components(), after.num_components());
        for k in 2..=3 {
            prop_assert_eq!(spectrum(&before, k), spectrum(&after, k), "length {}", k);
        }
    }

    #[test]
    fn relabeling_permutes_indices(b in braid(3, 8), seed in any::<u64>()) {
        let link = braid_closure(&b);
        let c = link.num_components();
        let mut perm: Vec<usize> = (0..c).collect();
        perm.rotate_left(seed as usize % c);
        let relabeled = link.relabel(&perm);
        let table = mu_table(&link, 3).unwrap();
        for (index, mu) in &table {
            let moved: Vec<usize> = index.iter().map(|&i| perm[i - 1] + 1).collect();
            let other = mu_bar(&relabeled, &moved).unwrap();
            prop_assert_eq!(&other.value, &mu.value);
            prop_assert_eq!(&other.modulus, &mu.modulus);
        }
    }
}
