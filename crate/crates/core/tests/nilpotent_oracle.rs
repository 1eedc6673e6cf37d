//! Nilpotent quotients of presentations of small finite groups, checked
//! against the lower central series of permutation representations
//! computed by brute force.

use std::collections::{BTreeSet, VecDeque};

use gamma_omega::nilpotent::{
    build_tower, lemma22_decompose, nilpotent_quotient, normal_generation_check, FpPresentation, NilpotentError,
};
use gamma_omega::selftest::necklace_count;
use gamma_omega::words::{hall_basis, Word};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Perm = Vec<usize>;

fn mul(p: &Perm, q: &Perm) -> Perm {
    // apply p, then q
    p.iter().map(|&i| q[i]).collect()
}

fn inv(p: &Perm) -> Perm {
    let mut out = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        out[j] = i;
    }
    out
}

fn identity(n: usize) -> Perm {
    (0..n).collect()
}

fn closure(n: usize, gens: &[Perm]) -> BTreeSet<Perm> {
    let mut seen = BTreeSet::from([identity(n)]);
    let mut queue = VecDeque::from([identity(n)]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = mul(&g, s);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    seen
}

/// Orders of `G/γ_{c+1}` for `c = 1..=depth`.
fn lcs_quotient_orders(n: usize, gens: &[Perm], depth: usize) -> Vec<usize> {
    let g = closure(n, gens);
    let mut gamma = g.clone();
    let mut out = Vec::new();
    for _ in 0..depth {
        let mut comms = BTreeSet::new();
        for x in &g {
            for y in &gamma {
                comms.insert(mul(&mul(&inv(x), &inv(y)), &mul(x, y)));
            }
        }
        gamma = closure(n, &comms.into_iter().collect::<Vec<_>>());
        out.push(g.len() / gamma.len());
    }
    out
}

fn eval(w: &Word, gens: &[Perm]) -> Perm {
    let n = gens[0].len();
    let mut acc = identity(n);
    for &(g, e) in w.letters() {
        let p = if e > 0 { gens[g].clone() } else { inv(&gens[g]) };
        for _ in 0..e.unsigned_abs() {
            acc = mul(&acc, &p);
        }
    }
    acc
}

fn cycles(n: usize, cs: &[&[usize]]) -> Perm {
    let mut p = identity(n);
    for c in cs {
        for k in 0..c.len() {
            p[c[k]] = c[(k + 1) % c.len()];
        }
    }
    p
}

struct Case {
    name: &'static str,
    gens: &'static str,
    relators: &'static [&'static str],
    points: usize,
    perms: Vec<Perm>,
    order: usize,
}

fn cases() -> Vec<Case> {
    // Heisenberg group mod 3 acting on (u, v) in (Z/3)², point 3u + v
    let heis_x: Perm = (0..9).map(|p| ((p / 3 + 1) % 3) * 3 + p % 3).collect();
    let heis_y: Perm = (0..9).map(|p| (p / 3) * 3 + (p % 3 + p / 3) % 3).collect();
    vec![
        Case {
            name: "D16",
            gens: "ab",
            relators: &["a^2", "b^8", "abab"],
            points: 8,
            perms: vec![cycles(8, &[&[1, 7], &[2, 6], &[3, 5]]), cycles(8, &[&[0, 1, 2, 3, 4, 5, 6, 7]])],
            order: 16,
        },
        Case {
            name: "Q8",
            gens: "ab",
            relators: &["a^4", "a^2*b^-2", "b^-1*a*b*a"],
            points: 8,
            perms: vec![cycles(8, &[&[0, 1, 2, 3], &[4, 5, 6, 7]]), cycles(8, &[&[0, 4, 2, 6], &[1, 7, 3, 5]])],
            order: 8,
        },
        Case {
            name: "S3",
            gens: "ab",
            relators: &["a^2", "b^3", "(ab)^2"],
            points: 3,
            perms: vec![cycles(3, &[&[0, 1]]), cycles(3, &[&[0, 1, 2]])],
            order: 6,
        },
        Case {
            name: "S4",
            gens: "ab",
            relators: &["a^2", "b^3", "(ab)^4"],
            points: 4,
            perms: vec![cycles(4, &[&[0, 1]]), cycles(4, &[&[1, 2, 3]])],
            order: 24,
        },
        Case {
            name: "Heisenberg mod 3",
            gens: "xy",
            relators: &["x^3", "y^3", "[x,y]^3", "[[x,y],x]", "[[x,y],y]"],
            points: 9,
            perms: vec![heis_x, heis_y],
            order: 27,
        },
    ]
}

#[test]
fn quotient_orders_match_permutation_groups() {
    for case in cases() {
        let p = FpPresentation::parse(case.gens, case.relators).unwrap();
        assert_eq!(closure(case.points, &case.perms).len(), case.order, "{}", case.name);
        for r in p.relators() {
            assert_eq!(eval(r, &case.perms), identity(case.points), "{}: relator {r}", case.name);
        }
        let depth = 5;
        let expected = lcs_quotient_orders(case.points, &case.perms, depth);
        let tower = build_tower(&p, depth).unwrap();
        let got: Vec<usize> = tower.orders().iter().map(|o| usize::try_from(o.clone().unwrap()).unwrap()).collect();
        assert_eq!(got, expected, "{}", case.name);
    }
}

#[test]
fn free_group_layers_are_witt_ranks() {
    for (rank, class) in [(2, 7), (3, 5), (4, 3)] {
        let q = nilpotent_quotient(&FpPresentation::free(rank), class).unwrap();
        let sizes = q.group.layer_sizes();
        let expected: Vec<usize> = (1..=class).map(|k| necklace_count(rank as u64, k as u64) as usize).collect();
        assert_eq!(sizes, expected, "rank {rank}");
        let hall: Vec<usize> = hall_basis(rank, class).iter().map(Vec::len).collect();
        assert_eq!(sizes, hall);
        assert!(q.group.is_consistent());
    }
}

#[test]
fn dihedral_tower_orders_and_coherence() {
    let p = FpPresentation::infinite_dihedral();
    let tower = build_tower(&p, 10).unwrap();
    for c in 1..=10 {
        assert_eq!(tower.level(c).order(), Some(BigInt::from(2).pow(c as u32 + 1)));
        assert!(tower.level(c).is_consistent());
        if c < 10 {
            assert_eq!(tower.level(c + 1).truncate(c).presentation(), tower.level(c).presentation());
        }
    }
}

#[test]
fn normal_generation_examples() {
    let free = build_tower(&FpPresentation::free(2), 4).unwrap();
    assert!(normal_generation_check(&free, &[0, 1]).unwrap().iter().all(|c| c.normally_generated));
    let one = normal_generation_check(&free, &[0]).unwrap();
    assert!(!one[0].normally_generated);
    let d = build_tower(&FpPresentation::infinite_dihedral(), 6).unwrap();
    assert!(normal_generation_check(&d, &[0, 1]).unwrap().iter().all(|c| c.normally_generated));
    assert!(matches!(normal_generation_check(&d, &[2]), Err(NilpotentError::UnknownGenerator(2))));
    let a = d.random_commutator_element(&mut ChaCha8Rng::seed_from_u64(3), 3);
    assert!(matches!(lemma22_decompose(&d, &a, &[]), Err(NilpotentError::EmptyGeneratorSet)));
}

fn word_strategy(alphabet: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..alphabet, prop_oneof![-3i64..=-1, 1i64..=3]), 0..=16)
        .prop_map(move |l| Word::from_letters(alphabet, l).reduce())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn elements_from_words_are_coherent(w in word_strategy(2), v in word_strategy(2)) {
        let tower = build_tower(&FpPresentation::infinite_dihedral(), 8).unwrap();
        let a = tower.element_from_word(&w);
        prop_assert_eq!(tower.incoherent_level(&a), None);
        // evaluation is a homomorphism at every level
        let b = tower.element_from_word(&v);
        let ab = tower.element_from_word(&w.product(&v));
        for k in 0..tower.depth() {
            let g = &tower.levels[k].group;
            prop_assert_eq!(&g.mul(&a.components[k], &b.components[k]), &ab.components[k]);
        }
    }

    #[test]
    fn decomposition_reconstructs(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (p, depth) in [(FpPresentation::infinite_dihedral(), 8), (FpPresentation::free(2), 6)] {
            let tower = build_tower(&p, depth).unwrap();
            let a = tower.random_commutator_element(&mut rng, 3);
            let d = lemma22_decompose(&tower, &a, &[0, 1]).unwrap();
            prop_assert!(d.verify(&tower, &a));
            prop_assert!(d.factors.iter().all(|f| tower.incoherent_level(f).is_none()));
        }
    }

    #[test]
    fn commutator_words_decompose(w in word_strategy(2), v in word_strategy(2)) {
        // [w, v] lies in the commutator subgroup, so it must decompose
        let tower = build_tower(&FpPresentation::free(2), 5).unwrap();
        let a = tower.element_from_word(&Word::commutator(&w, &v));
        let d = lemma22_decompose(&tower, &a, &[0, 1]).unwrap();
        prop_assert!(d.verify(&tower, &a));
    }
}
