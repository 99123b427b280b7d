//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Everything is exact arithmetic; all comparisons are equalities
//! with zero tolerance.

use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gr_core::grm::{gr_measure, gr_measure_oracle};
use gr_core::kronecker::{self, closed_form_measure, FamilyKind, KroneckerFamily, Lambda};
use gr_core::linalg::MatrixFp;
use gr_core::measures::{chain_limit, sup_finite, ChainDirection, Measure};
use gr_core::quiver::{Algebra, Quiver, Representation};
use gr_core::subcat::{a2_algebra, check_all_laws, enumerate_ind, intersect_with_witness};
use gr_core::submod::all_submodules;
use gr_core::Caps;

fn report(criterion: &str, ok: bool, details: String) {
    println!("criterion {criterion}: {}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {criterion} failed: {details}");
}

#[test]
fn criterion_1_kronecker_ground_truth() {
    let start = Instant::now();
    let caps = Caps::default();
    let mut failures = Vec::new();
    for p in [2u64, 3] {
        let report = kronecker::verify(3, p, caps).unwrap();
        if !report.pass() {
            failures.push(format!("p = {p}: {:?}", report.mismatches));
        }
        for check in &report.checks {
            if !check.matches {
                failures.push(format!("p = {p}, {}", check.label));
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed.as_secs() >= 300 {
        failures.push(format!("runtime {elapsed:?} exceeds five minutes"));
    }
    report(
        "1 (Kronecker ground truth, p in {2,3}, n <= 3, all lambda)",
        failures.is_empty(),
        failures.join("; "),
    );
}

#[test]
fn criterion_2_order_chain() {
    let caps = Caps::default();
    let mu = |fam: KroneckerFamily| gr_measure(&kronecker::build(&fam, 2).unwrap(), caps).unwrap().measure;
    // mu(Q_1) = mu(P_1) < mu(P_2) < mu(P_3) < mu(R_1) < mu(R_2) < mu(R_3)
    //         < mu(Q_3) < mu(Q_2), with every R_n value lambda-independent
    let chain: Vec<Measure> = vec![
        mu(KroneckerFamily::preinjective(1)),
        mu(KroneckerFamily::preprojective(1)),
        mu(KroneckerFamily::preprojective(2)),
        mu(KroneckerFamily::preprojective(3)),
        mu(KroneckerFamily::regular(1, Lambda::Finite(0))),
        mu(KroneckerFamily::regular(2, Lambda::Finite(0))),
        mu(KroneckerFamily::regular(3, Lambda::Finite(0))),
        mu(KroneckerFamily::preinjective(3)),
        mu(KroneckerFamily::preinjective(2)),
    ];
    let mut ok = chain[0] == chain[1];
    for w in chain[1..].windows(2) {
        ok &= w[0] < w[1];
    }
    report(
        "2 (order chain for n <= 3 matches the displayed chain exactly)",
        ok,
        format!("computed chain: {chain:?}"),
    );
}

#[test]
fn criterion_3_limit_measures() {
    let odds = Measure::new(vec![], Some((1, 2))).unwrap();
    let prufer = Measure::new(vec![1], Some((2, 2))).unwrap();
    let sup_p = chain_limit(
        |n| closed_form_measure(FamilyKind::Preprojective, n as usize),
        ChainDirection::Sup,
        64,
    )
    .unwrap();
    let sup_r = chain_limit(
        |n| closed_form_measure(FamilyKind::Regular, n as usize),
        ChainDirection::Sup,
        64,
    )
    .unwrap();
    let inf_q = chain_limit(
        |n| closed_form_measure(FamilyKind::Preinjective, n as usize + 1),
        ChainDirection::Inf,
        64,
    )
    .unwrap();
    let both = kronecker::limit_measures(64).unwrap();
    let ok = sup_p == odds
        && sup_r == prufer
        && inf_q == prufer
        && both.adic == odds
        && both.generic == odds
        && both.prufer == prufer;
    report(
        "3 (chain limits reproduce {1,3,5,...} and {1,2,4,6,...} exactly)",
        ok,
        format!("sup P = {sup_p}, sup R = {sup_r}, inf Q = {inf_q}"),
    );
}

// ---- corpus for criteria 4 and 5 ------------------------------------------

fn a3_with_relation() -> Arc<Algebra> {
    let quiver = Quiver::new(
        vec!["1".into(), "2".into(), "3".into()],
        vec![
            ("a".into(), "1".into(), "2".into()),
            ("b".into(), "2".into(), "3".into()),
        ],
    )
    .unwrap();
    Algebra::new(quiver, vec![vec![(1, vec!["a".into(), "b".into()])]], 2).unwrap()
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> MatrixFp {
    let entries: Vec<u64> = (0..rows * cols).map(|_| rng.gen_range(0..2)).collect();
    MatrixFp::new(rows, cols, entries, 2).unwrap()
}

fn random_kronecker_rep(rng: &mut ChaCha8Rng, alg: &Arc<Algebra>) -> Option<Representation> {
    let d1 = rng.gen_range(0..=3usize);
    let d2 = rng.gen_range(0..=3usize);
    if d1 + d2 == 0 || d1 + d2 > 6 {
        return None;
    }
    let a = random_matrix(rng, d2, d1);
    let b = random_matrix(rng, d2, d1);
    Representation::new(Arc::clone(alg), vec![d1, d2], vec![a, b]).ok()
}

fn random_a3_rep(rng: &mut ChaCha8Rng, alg: &Arc<Algebra>) -> Option<Representation> {
    let d1 = rng.gen_range(0..=2usize);
    let d2 = rng.gen_range(0..=2usize);
    let d3 = rng.gen_range(0..=2usize);
    if d1 + d2 + d3 == 0 || d1 + d2 + d3 > 6 {
        return None;
    }
    let a = random_matrix(rng, d2, d1);
    // sample b with b . a = 0 exactly: each row of b lies in the left
    // kernel of a
    let left = a.left_kernel_basis();
    let mut b = MatrixFp::zeros(d3, d2, 2);
    for i in 0..d3 {
        let mut row = vec![0u8; d2];
        for basis_row in left.basis_rows() {
            if rng.gen_bool(0.5) {
                for (j, &e) in basis_row.iter().enumerate() {
                    row[j] ^= e;
                }
            }
        }
        for (j, &e) in row.iter().enumerate() {
            b.set(i, j, e);
        }
    }
    Representation::new(Arc::clone(alg), vec![d1, d2, d3], vec![a, b]).ok()
}

/// Deterministic corpus: random matrices over F_2, length <= 6,
/// deduplicated by exact data. At least 200 members.
fn corpus() -> Vec<Representation> {
    let mut rng = ChaCha8Rng::seed_from_u64(20250811);
    let kron = kronecker::kronecker_algebra(2).unwrap();
    let a3 = a3_with_relation();
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    while out.len() < 150 {
        if let Some(x) = random_kronecker_rep(&mut rng, &kron) {
            if seen.insert(("kron", x.canonical_bytes())) {
                out.push(x);
            }
        }
    }
    while out.len() < 220 {
        if let Some(x) = random_a3_rep(&mut rng, &a3) {
            if seen.insert(("a3", x.canonical_bytes())) {
                out.push(x);
            }
        }
    }
    out
}

#[test]
fn criterion_4_oracle_equivalence() {
    let caps = Caps::default();
    let corpus = corpus();
    assert!(corpus.len() >= 200);
    let mut mismatches = Vec::new();
    for (i, x) in corpus.iter().enumerate() {
        let dp = gr_measure(x, caps).unwrap();
        let oracle = gr_measure_oracle(x, caps).unwrap();
        if dp.measure != oracle {
            mismatches.push(format!("corpus[{i}]: dp {} vs oracle {oracle}", dp.measure));
        }
        if !dp.validate(caps).unwrap() {
            mismatches.push(format!("corpus[{i}]: witness does not replay"));
        }
    }
    report(
        &format!("4 (oracle equivalence on {} representations)", corpus.len()),
        mismatches.is_empty(),
        mismatches.join("; "),
    );
}

#[test]
fn criterion_5_gr_laws_on_corpus() {
    let caps = Caps::default();
    let corpus = corpus();
    let mut violations = Vec::new();
    // submodule monotonicity on every member
    for (i, x) in corpus.iter().enumerate() {
        let mx = gr_measure(x, caps).unwrap().measure;
        for s in all_submodules(x, caps).unwrap().elements() {
            let ms = gr_measure(&s.as_representation(), caps).unwrap().measure;
            if ms > mx {
                violations.push(format!("monotonicity fails inside corpus[{i}]"));
            }
        }
    }
    // direct-sum law: every member paired with a small partner, plus random
    // pairs, capped at combined length 8 to keep the lattices desk-sized
    let mut rng = ChaCha8Rng::seed_from_u64(991);
    let mut pairs: Vec<(&Representation, &Representation)> = Vec::new();
    for (i, x) in corpus.iter().enumerate() {
        // every member gets a same-algebra partner of length <= 2, keeping
        // the combined length at 8 so the lattices stay desk-sized
        let partner = corpus
            .iter()
            .cycle()
            .skip(i)
            .take(corpus.len())
            .find(|y| y.length() <= 2 && x.same_algebra(y))
            .expect("corpus contains small members of each algebra");
        pairs.push((x, partner));
    }
    let mut extra = 0;
    while extra < 60 {
        let x = &corpus[rng.gen_range(0..corpus.len())];
        let y = &corpus[rng.gen_range(0..corpus.len())];
        if x.same_algebra(y) && x.length() + y.length() <= 8 {
            pairs.push((x, y));
            extra += 1;
        }
    }
    for (x, y) in &pairs {
        let sum = x.direct_sum(y).unwrap();
        let lhs = gr_measure(&sum, caps).unwrap().measure;
        let rhs = sup_finite(vec![
            gr_measure(x, caps).unwrap().measure,
            gr_measure(y, caps).unwrap().measure,
        ]);
        if lhs != rhs {
            violations.push(format!(
                "direct-sum law fails: mu(sum) = {lhs}, mu(x) v mu(y) = {rhs}"
            ));
        }
    }
    report(
        &format!(
            "5 (direct-sum law on {} pairs and monotonicity on {} members)",
            pairs.len(),
            corpus.len()
        ),
        violations.is_empty(),
        violations.join("; "),
    );
}

#[test]
fn criterion_6_finite_model_laws() {
    let caps = Caps::default();
    let mut failures = Vec::new();
    let universes = vec![
        ("A_2, max_len 2", enumerate_ind(&a2_algebra(2).unwrap(), 2, caps).unwrap()),
        ("A_2, max_len 3", enumerate_ind(&a2_algebra(2).unwrap(), 3, caps).unwrap()),
        (
            "Kronecker, max_len 2",
            enumerate_ind(&kronecker::kronecker_algebra(2).unwrap(), 2, caps).unwrap(),
        ),
        (
            "Kronecker, max_len 3",
            enumerate_ind(&kronecker::kronecker_algebra(2).unwrap(), 3, caps).unwrap(),
        ),
    ];
    for (name, universe) in &universes {
        let report = check_all_laws(universe, caps.enum_cap).unwrap();
        if !report.pass() {
            failures.push(format!("{name}: {report:?}"));
        }
    }
    report(
        "6 (Galois, quotient, filtration, intersection, reconstruction laws)",
        failures.is_empty(),
        failures.join("; "),
    );
}

#[test]
fn criterion_7_compactness_witness() {
    let caps = Caps::default();
    let universe =
        enumerate_ind(&kronecker::kronecker_algebra(2).unwrap(), 3, caps).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4242);
    let mut failures = Vec::new();
    for trial in 0..120 {
        let family_size = rng.gen_range(1..=6usize);
        let family: Vec<_> = (0..family_size)
            .map(|_| {
                let seed_count = rng.gen_range(0..=3usize);
                let seeds: Vec<usize> =
                    (0..seed_count).map(|_| rng.gen_range(0..universe.len())).collect();
                universe.sub_closure(&seeds).unwrap()
            })
            .collect();
        let (intersection, witness) = intersect_with_witness(&family).unwrap();
        // recompute both the full intersection and the witness intersection
        let mut full = universe.full_down_set();
        for c in &family {
            full = full.intersect(c).unwrap();
        }
        let mut by_witness = universe.full_down_set();
        for &i in &witness {
            by_witness = by_witness.intersect(&family[i]).unwrap();
        }
        if intersection != full || by_witness != full {
            failures.push(format!("trial {trial}: witness does not reproduce the intersection"));
        }
        if witness.is_empty() || witness.len() > family.len() {
            failures.push(format!("trial {trial}: witness size {} is invalid", witness.len()));
        }
    }
    report(
        "7 (compactness witness on 120 random down-set families)",
        failures.is_empty(),
        failures.join("; "),
    );
}

#[test]
fn criterion_8_lex_order_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(7331);
    let random_measure = |rng: &mut ChaCha8Rng| -> Measure {
        let size = rng.gen_range(0..8usize);
        let mut elements = std::collections::BTreeSet::new();
        while elements.len() < size {
            elements.insert(rng.gen_range(1..40u64));
        }
        let tail = if rng.gen_bool(0.4) {
            Some((rng.gen_range(41..60u64), rng.gen_range(1..5u64)))
        } else {
            None
        };
        Measure::new(elements.into_iter().collect(), tail).unwrap()
    };
    let mut cases = 0usize;
    let mut failures = Vec::new();
    for i in 0..12_000 {
        let a = random_measure(&mut rng);
        let b = random_measure(&mut rng);
        let c = random_measure(&mut rng);
        cases += 1;
        // total order: antisymmetry, totality, transitivity
        match a.cmp(&b) {
            std::cmp::Ordering::Equal => {
                if a != b {
                    failures.push(format!("case {i}: EQ but not identical"));
                }
            }
            ord => {
                if b.cmp(&a) != ord.reverse() {
                    failures.push(format!("case {i}: comparison not antisymmetric"));
                }
            }
        }
        if a <= b && b <= c && !(a <= c) {
            failures.push(format!("case {i}: transitivity fails"));
        }
        // containment law
        if a.is_subset_of(&b) && a > b {
            failures.push(format!("case {i}: containment law fails"));
        }
        // append law on the finite parts
        let fa = Measure::finite(a.prefix().to_vec()).unwrap();
        let fb = Measure::finite(b.prefix().to_vec()).unwrap();
        let m = 100 + (i % 20) as u64;
        if fa.cmp(&fb) != fa.appended(m).unwrap().cmp(&fb.appended(m).unwrap()) {
            failures.push(format!("case {i}: append law fails"));
        }
        if failures.len() > 5 {
            break;
        }
    }
    report(
        &format!("8 (lex-order axioms over {cases} random cases)"),
        failures.is_empty(),
        failures.join("; "),
    );
}
