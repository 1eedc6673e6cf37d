//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the lines are always printed; exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use gamma_omega::abelian::{AbMap, FgAbelianGroup};
use gamma_omega::functors::{functor_apply, gamma2_oracle, FunctorName};
use gamma_omega::homology::{assemble_homology, lhs_e2_split};
use gamma_omega::milnor::{braid_closure, mu_bar, vanish_up_to, BraidWord};
use gamma_omega::nilpotent::{build_tower, lemma22_decompose, FpPresentation, PcGroup};
use gamma_omega::selftest::{abelian_groups_up_to, necklace_count, random_braid, random_word};
use gamma_omega::whitehead::{coker_w, pipeline_report, Term, WhiteheadInput};
use gamma_omega::words::{hall_basis, magnus_expand};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn z() -> FgAbelianGroup {
    FgAbelianGroup::free(1)
}

fn z2() -> FgAbelianGroup {
    FgAbelianGroup::cyclic(2)
}

fn e2_table() -> Outcome {
    let page = lhs_e2_split(&z(), &AbMap::scalar(&z(), -1), 2, 6, 1).unwrap();
    let mut wrong = Vec::new();
    for q in 0..=1 {
        for p in 0..=6 {
            let expected = match (p, q) {
                (0, 0) => z(),
                (p, 0) if p % 2 == 1 => z2(),
                (p, 1) if p % 2 == 0 => z2(),
                _ => FgAbelianGroup::trivial(),
            };
            if page.cell(p, q).and_then(|c| c.group.as_ref()) != Some(&expected) {
                wrong.push(format!("({p},{q})"));
            }
        }
    }
    outcome(wrong.is_empty(), if wrong.is_empty() { "14 cells match".into() } else { format!("wrong cells {wrong:?}") })
}

fn homology_table() -> Outcome {
    let page = lhs_e2_split(&z(), &AbMap::scalar(&z(), -1), 2, 7, 1).unwrap();
    let Some(h) = assemble_homology(&page, 7).determined().map(<[_]>::to_vec) else {
        return outcome(false, "assembly not forced");
    };
    let expected: Vec<FgAbelianGroup> = (0..=7)
        .map(|i| match i {
            0 => z(),
            i if i % 2 == 1 => z2().direct_sum(&z2()),
            _ => FgAbelianGroup::trivial(),
        })
        .collect();
    let text: Vec<String> = h.iter().map(ToString::to_string).collect();
    outcome(h == expected, format!("H_0..H_7 = {}", text.join(", ")))
}

/// All elements of a finite pc group as normal forms.
fn elements(g: &PcGroup) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &r in g.relative_orders() {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..r).map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    out
}

fn dihedral_check(g: &PcGroup, a: &[i64], b: &[i64], c: usize) -> Result<(), String> {
    let n = 1usize << (c + 1);
    if g.order() != Some(BigInt::from(n)) {
        return Err(format!("order {:?}", g.order()));
    }
    let all = elements(g);
    // derived subgroup: normal closure of [a, b], as the group is 2-generated
    let closure = |gens: &[Vec<i64>]| {
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::from([g.identity()]);
        let mut frontier = vec![g.identity()];
        while let Some(x) = frontier.pop() {
            for y in gens {
                let p = g.mul(&x, y);
                if seen.insert(p.clone()) {
                    frontier.push(p);
                }
            }
        }
        seen
    };
    let mut gens = vec![g.commutator(a, b)];
    let mut derived = closure(&gens);
    loop {
        let conj: Vec<Vec<i64>> = gens
            .iter()
            .flat_map(|s| [a, b].map(|x| g.mul(&g.mul(&g.inverse(x), s), x)))
            .filter(|c| !derived.contains(c))
            .collect();
        if conj.is_empty() {
            break;
        }
        gens.extend(conj);
        derived = closure(&gens);
    }
    if n / derived.len() != 4 {
        return Err(format!("abelianization of order {}", n / derived.len()));
    }
    if !all.iter().all(|x| derived.contains(&g.mul(x, x))) {
        return Err("abelianization is not elementary abelian".into());
    }
    if g.element_order(b) != Some(BigInt::from(n / 2)) {
        return Err(format!("b has order {:?}", g.element_order(b)));
    }
    if !g.is_identity(&g.mul(a, a)) || g.mul(&g.mul(a, b), a) != g.inverse(b) {
        return Err("a does not invert b".into());
    }
    Ok(())
}

fn dihedral_tower() -> Outcome {
    let p = FpPresentation::infinite_dihedral();
    let tower = match build_tower(&p, 10) {
        Ok(t) => t,
        Err(e) => return outcome(false, e.to_string()),
    };
    for c in 1..=10 {
        let q = &tower.levels[c - 1];
        if let Err(e) = dihedral_check(&q.group, &q.generator_images[0], &q.generator_images[1], c) {
            return outcome(false, format!("level {c}: {e}"));
        }
    }
    outcome(true, "levels 1..10 of order 2^(c+1), abelianization (Z/2)^2, <b> cyclic of index 2")
}

fn rational_cokernel() -> Outcome {
    let dims: Vec<Term> = [2u64, 3]
        .iter()
        .map(|&n| coker_w(&WhiteheadInput::rational_zero(n * (n - 1) / 2, 0, 0)).unwrap())
        .collect();
    let report = pipeline_report();
    let ok = dims == [Term::Rational(gamma_omega::functors::RationalSpace::new(1)), Term::Rational(gamma_omega::functors::RationalSpace::new(6))]
        && report.infinitely_generated_flag
        && report.failed_checks() == 0;
    outcome(ok, format!("coker dims n=2: {}, n=3: {}; flag {}", dims[0], dims[1], report.infinitely_generated_flag))
}

fn gamma2_oracle_equivalence() -> Outcome {
    let groups = abelian_groups_up_to(16);
    let bad: Vec<String> = groups
        .iter()
        .filter(|a| gamma2_oracle(a, 16).ok() != Some(functor_apply(FunctorName::Gamma2, a)))
        .map(ToString::to_string)
        .collect();
    outcome(bad.is_empty(), format!("{} isomorphism types of order <= 16, mismatches {bad:?}", groups.len()))
}

fn witt_hall() -> Outcome {
    let mut bad = Vec::new();
    for r in 1..=4usize {
        for (k, layer) in hall_basis(r, 8).iter().enumerate() {
            if layer.len() as u64 != necklace_count(r as u64, k as u64 + 1) {
                bad.push((r, k + 1));
            }
        }
    }
    let rank2: Vec<usize> = hall_basis(2, 8).iter().map(Vec::len).collect();
    outcome(bad.is_empty(), format!("rank 2 counts {rank2:?}, mismatches {bad:?}"))
}

fn decomposition() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let mut passed = 0;
    let mut total = 0;
    for (p, depth) in [(FpPresentation::infinite_dihedral(), 10), (FpPresentation::free(2), 8)] {
        let tower = build_tower(&p, depth).unwrap();
        for _ in 0..50 {
            let a = tower.random_commutator_element(&mut rng, 3);
            total += 1;
            if lemma22_decompose(&tower, &a, &[0, 1]).is_ok_and(|d| d.verify(&tower, &a)) {
                passed += 1;
            }
        }
    }
    outcome(passed == total, format!("{passed}/{total} reconstructions verified at every level"))
}

fn milnor_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut linking_ok = 0;
    for _ in 0..20 {
        let b = random_braid(&mut rng, 8);
        let link = braid_closure(&b);
        let oracle = b.crossing_linking_matrix();
        let comps = b.components();
        let pos = |c: usize| comps.iter().position(|g| g.contains(&link.components[c][0])).unwrap();
        let c = link.num_components();
        let ok = (0..c).all(|i| {
            (0..c).filter(|&j| j != i).all(|j| mu_bar(&link, &[i + 1, j + 1]).unwrap().value == BigInt::from(oracle[pos(i)][pos(j)]))
        });
        linking_ok += usize::from(ok);
    }
    let hopf = braid_closure(&BraidWord::new(2, vec![1, 1]).unwrap());
    let hopf_mu = mu_bar(&hopf, &[1, 2]).unwrap().value;
    let borromean = braid_closure(&BraidWord::new(3, vec![1, -2, 1, -2, 1, -2]).unwrap());
    let b2 = vanish_up_to(&borromean, 2).unwrap()[0].vanishes;
    let b3 = mu_bar(&borromean, &[1, 2, 3]).unwrap();
    let unlink = braid_closure(&BraidWord::new(3, vec![]).unwrap());
    let u6 = vanish_up_to(&unlink, 6).unwrap().iter().all(|l| l.vanishes);
    let one = BigInt::from(1);
    let ok = linking_ok == 20 && hopf_mu.magnitude() == one.magnitude() && b2 && b3.value.magnitude() == one.magnitude() && b3.modulus == BigInt::from(0) && u6;
    outcome(
        ok,
        format!("linking {linking_ok}/20, |mu(12)| Hopf = {}, Borromean length 2 vanish {b2}, |mu(123)| = {}, unlink vanishes to 6 {u6}", hopf_mu.magnitude(), b3.value.magnitude()),
    )
}

fn magnus_homomorphism() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut passed = 0;
    for _ in 0..200 {
        let n = rng.gen_range(1..=3);
        let d = rng.gen_range(1..=5);
        let u = random_word(&mut rng, n, 6);
        let v = random_word(&mut rng, n, 6);
        passed += usize::from(magnus_expand(&u.product(&v), d) == magnus_expand(&u, d).mul(&magnus_expand(&v, d)));
    }
    outcome(passed == 200, format!("{passed}/200 pairs"))
}

fn determinism() -> Outcome {
    let runs: Vec<String> = (0..3).map(|_| pipeline_report().to_string()).collect();
    let json: Vec<String> = (0..3).map(|_| pipeline_report().to_json()).collect();
    let in_pool = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| (pipeline_report().to_string(), pipeline_report().to_json()))
    };
    let one = in_pool(1);
    let four = in_pool(4);
    let ok = runs.iter().all(|r| *r == runs[0]) && json.iter().all(|j| *j == json[0]) && one == four && one.0 == runs[0] && one.1 == json[0];
    outcome(ok, format!("3 runs and 1 vs 4 threads, {} bytes of text", runs[0].len()))
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1  E2 table of Z x| C_2", Duration::from_secs(1), e2_table),
        ("2  homology of Z x| C_2", Duration::from_secs(1), homology_table),
        ("3  dihedral tower", Duration::from_secs(5), dihedral_tower),
        ("4  rational cokernel and flag", Duration::from_secs(1), rational_cokernel),
        ("5  gamma2 oracle", Duration::from_secs(10), gamma2_oracle_equivalence),
        ("6  Witt / Hall counts", Duration::from_secs(5), witt_hall),
        ("7  commutator decomposition", Duration::from_secs(60), decomposition),
        ("8  Milnor suite", Duration::from_secs(30), milnor_suite),
        ("9  Magnus homomorphism", Duration::from_secs(10), magnus_homomorphism),
        ("10 determinism", Duration::from_secs(30), determinism),
    ];
    let mut failures = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let out = run();
        let took = start.elapsed();
        let ok = out.ok && took <= limit;
        failures += usize::from(!ok);
        let mark = if ok { "PASS" } else { "FAIL" };
        println!("{mark} {name:<32} {:>9.3}s (limit {}s)  {}", took.as_secs_f64(), limit.as_secs(), out.detail);
    }
    if failures == 0 {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} criteria failed");
        ExitCode::FAILURE
    }
}
