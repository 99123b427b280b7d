//! The Gabriel-Roiter measure: the lex-supremum, over chains of
//! indecomposable submodules, of the sets of their lengths.
//!
//! The engine computes it by a dynamic program over the inclusion DAG of
//! indecomposable submodules. Writing best(S) for the maximal measure of a
//! chain ending at S, one has best(S) = {length(S)} appended to the maximum
//! of best(T) over indecomposable T strictly below S; the append law of the
//! lexicographic order makes the local choice globally optimal. A brute
//! force that walks every chain explicitly is kept alongside as the oracle.

use crate::error::Result;
use crate::measures::{sup_finite, Measure};
use crate::quiver::Representation;
use crate::submod::{indecomposable_submodules, Submodule};
use crate::Caps;

/// A measure together with a chain of submodules achieving it. The chain is
/// strictly increasing, every member is indecomposable, and the set of
/// member lengths equals the measure.
#[derive(Debug, Clone)]
pub struct GrResult {
    pub measure: Measure,
    pub witness: Vec<Submodule>,
}

impl GrResult {
    /// Replays the witness: checks strict inclusion, indecomposability of
    /// every member, and that the length set reproduces the measure.
    pub fn validate(&self, caps: Caps) -> Result<bool> {
        for w in self.witness.windows(2) {
            if !(w[1].contains(&w[0]) && w[0].length() < w[1].length()) {
                return Ok(false);
            }
        }
        for s in &self.witness {
            if !crate::quiver::is_indecomposable(&s.as_representation(), caps)? {
                return Ok(false);
            }
        }
        let lengths: Vec<u64> = self.witness.iter().map(|s| s.length() as u64).collect();
        Ok(Measure::finite(lengths)? == self.measure)
    }
}

// Chains with equal measure are ordered by the canonical encodings of their
// members, making the reported witness deterministic.
fn chain_key<'a>(chain: &'a [usize], encodings: &'a [Vec<u8>]) -> impl Iterator<Item = &'a [u8]> + 'a {
    chain.iter().map(move |&i| encodings[i].as_slice())
}

fn better_chain(a: &[usize], b: &[usize], encodings: &[Vec<u8>]) -> bool {
    chain_key(a, encodings).lt(chain_key(b, encodings))
}

/// Gabriel-Roiter measure with witness chain. The measure of the zero
/// representation is the empty set, witnessed by the empty chain.
pub fn gr_measure(x: &Representation, caps: Caps) -> Result<GrResult> {
    if x.is_zero() {
        return Ok(GrResult { measure: Measure::empty(), witness: Vec::new() });
    }
    let indecs = indecomposable_submodules(x, caps)?;
    let encodings: Vec<Vec<u8>> = indecs.iter().map(Submodule::canonical_bytes).collect();
    // indecs come sorted by length, so strict inclusion only looks backwards
    let mut best: Vec<(Measure, Vec<usize>)> = Vec::with_capacity(indecs.len());
    for i in 0..indecs.len() {
        let len_i = indecs[i].length() as u64;
        let mut top = (Measure::finite(vec![len_i])?, vec![i]);
        for j in 0..i {
            if indecs[j].length() < indecs[i].length() && indecs[i].contains(&indecs[j]) {
                let cand_measure = best[j].0.appended(len_i)?;
                let mut cand_chain = best[j].1.clone();
                cand_chain.push(i);
                if cand_measure > top.0
                    || (cand_measure == top.0 && better_chain(&cand_chain, &top.1, &encodings))
                {
                    top = (cand_measure, cand_chain);
                }
            }
        }
        best.push(top);
    }
    let (measure, chain) = best
        .into_iter()
        .reduce(|acc, cur| {
            if cur.0 > acc.0 || (cur.0 == acc.0 && better_chain(&cur.1, &acc.1, &encodings)) {
                cur
            } else {
                acc
            }
        })
        .expect("nonzero representation has a simple submodule");
    let witness = chain.into_iter().map(|i| indecs[i].clone()).collect();
    Ok(GrResult { measure, witness })
}

/// Independent brute force: walks every strictly increasing chain of
/// indecomposable submodules explicitly and takes the lex-max of the length
/// sets. Intended for small instances only.
pub fn gr_measure_oracle(x: &Representation, caps: Caps) -> Result<Measure> {
    if x.is_zero() {
        return Ok(Measure::empty());
    }
    let indecs = indecomposable_submodules(x, caps)?;
    let n = indecs.len();
    let above: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| indecs[i].length() < indecs[j].length() && indecs[j].contains(&indecs[i]))
                .collect()
        })
        .collect();
    fn walk(
        last: usize,
        lengths: &mut Vec<u64>,
        above: &[Vec<usize>],
        indecs: &[Submodule],
        best: &mut Measure,
    ) -> Result<()> {
        let m = Measure::finite(lengths.clone())?;
        if m > *best {
            *best = m;
        }
        for &next in &above[last] {
            lengths.push(indecs[next].length() as u64);
            walk(next, lengths, above, indecs, best)?;
            lengths.pop();
        }
        Ok(())
    }
    let mut best = Measure::empty();
    for start in 0..n {
        let mut lengths = vec![indecs[start].length() as u64];
        walk(start, &mut lengths, &above, &indecs, &mut best)?;
    }
    Ok(best)
}

/// mu of a class: the supremum of the member measures.
pub fn mu_sup(class: &[Representation], caps: Caps) -> Result<Measure> {
    let mut measures = Vec::with_capacity(class.len());
    for x in class {
        measures.push(gr_measure(x, caps)?.measure);
    }
    Ok(sup_finite(measures))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kronecker::{self, FamilyKind, KroneckerFamily, Lambda};
    use crate::quiver::is_indecomposable;
    use crate::submod::{all_submodules, embeds_in_power};
    use std::sync::Arc;

    fn fin(xs: &[u64]) -> Measure {
        Measure::finite(xs.to_vec()).unwrap()
    }

    fn build(fam: KroneckerFamily) -> Representation {
        kronecker::build(&fam, 2).unwrap()
    }

    #[test]
    fn measure_of_p2_is_1_3() {
        let caps = Caps::default();
        let res = gr_measure(&build(KroneckerFamily::preprojective(2)), caps).unwrap();
        assert_eq!(res.measure, fin(&[1, 3]));
        assert!(res.validate(caps).unwrap());
    }

    #[test]
    fn measure_of_q2_is_1_2_3() {
        let caps = Caps::default();
        let res = gr_measure(&build(KroneckerFamily::preinjective(2)), caps).unwrap();
        assert_eq!(res.measure, fin(&[1, 2, 3]));
        assert!(res.validate(caps).unwrap());
    }

    #[test]
    fn measure_of_simples_and_zero() {
        let caps = Caps::default();
        let alg = kronecker::kronecker_algebra(2).unwrap();
        for v in 0..2 {
            let s = Representation::simple(Arc::clone(&alg), v);
            assert_eq!(gr_measure(&s, caps).unwrap().measure, fin(&[1]));
        }
        let zero = Representation::zero(alg);
        let res = gr_measure(&zero, caps).unwrap();
        assert!(res.measure.is_empty());
        assert!(res.witness.is_empty());
    }

    #[test]
    fn oracle_examples() {
        let caps = Caps::default();
        assert_eq!(
            gr_measure_oracle(&build(KroneckerFamily::regular(1, Lambda::Finite(0))), caps)
                .unwrap(),
            fin(&[1, 2])
        );
        let alg = kronecker::kronecker_algebra(2).unwrap();
        let s2 = Representation::simple(Arc::clone(&alg), 1);
        assert_eq!(gr_measure_oracle(&s2, caps).unwrap(), fin(&[1]));
        let sq = s2.direct_sum(&s2).unwrap();
        assert_eq!(gr_measure_oracle(&sq, caps).unwrap(), fin(&[1]));
    }

    #[test]
    fn dp_agrees_with_oracle_on_kronecker_families() {
        let caps = Caps::default();
        for n in 1..=3usize {
            for fam in [
                KroneckerFamily::preprojective(n),
                KroneckerFamily::preinjective(n),
                KroneckerFamily::regular(n, Lambda::Finite(0)),
                KroneckerFamily::regular(n, Lambda::Infinity),
            ] {
                let x = build(fam);
                assert_eq!(
                    gr_measure(&x, caps).unwrap().measure,
                    gr_measure_oracle(&x, caps).unwrap(),
                    "family {}",
                    fam.label()
                );
            }
        }
    }

    #[test]
    fn closed_forms_match_for_small_families() {
        let caps = Caps::default();
        for n in 1..=3usize {
            assert_eq!(
                gr_measure(&build(KroneckerFamily::preprojective(n)), caps).unwrap().measure,
                kronecker::closed_form_measure(FamilyKind::Preprojective, n)
            );
        }
    }

    #[test]
    fn membership_bounds() {
        let caps = Caps::default();
        for fam in [
            KroneckerFamily::preprojective(2),
            KroneckerFamily::preinjective(2),
            KroneckerFamily::regular(2, Lambda::Finite(1)),
        ] {
            let x = build(fam);
            let m = gr_measure(&x, caps).unwrap().measure;
            let elements = m.elements().unwrap().to_vec();
            assert!(elements.iter().all(|&e| e >= 1 && e <= x.length() as u64));
            assert!(m.contains(1));
            assert_eq!(
                m.contains(x.length() as u64),
                is_indecomposable(&x, caps).unwrap()
            );
        }
        // a decomposable: S_2 + S_2 has measure {1} not containing 2
        let alg = kronecker::kronecker_algebra(2).unwrap();
        let s2 = Representation::simple(Arc::clone(&alg), 1);
        let sq = s2.direct_sum(&s2).unwrap();
        let m = gr_measure(&sq, caps).unwrap().measure;
        assert!(!m.contains(sq.length() as u64));
    }

    #[test]
    fn monotone_under_submodules() {
        let caps = Caps::default();
        let x = build(KroneckerFamily::preprojective(3));
        let mx = gr_measure(&x, caps).unwrap().measure;
        for s in all_submodules(&x, caps).unwrap().elements() {
            let ms = gr_measure(&s.as_representation(), caps).unwrap().measure;
            assert!(ms <= mx);
        }
    }

    #[test]
    fn direct_sum_law_on_small_pairs() {
        let caps = Caps::default();
        let parts = [
            build(KroneckerFamily::preprojective(2)),
            build(KroneckerFamily::regular(1, Lambda::Finite(0))),
            build(KroneckerFamily::preinjective(2)),
        ];
        for x in &parts {
            for y in &parts {
                let sum = x.direct_sum(y).unwrap();
                let lhs = gr_measure(&sum, caps).unwrap().measure;
                let rhs = sup_finite(vec![
                    gr_measure(x, caps).unwrap().measure,
                    gr_measure(y, caps).unwrap().measure,
                ]);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn extended_monotonicity_via_embeddings() {
        let caps = Caps::default();
        let corpus = [
            build(KroneckerFamily::preprojective(2)),
            build(KroneckerFamily::regular(1, Lambda::Finite(0))),
            build(KroneckerFamily::preinjective(2)),
        ];
        for x in &corpus {
            for y in &corpus {
                if embeds_in_power(x, y, None).unwrap().embeds {
                    assert!(
                        gr_measure(x, caps).unwrap().measure
                            <= gr_measure(y, caps).unwrap().measure
                    );
                }
            }
        }
    }

    #[test]
    fn mu_sup_examples() {
        let caps = Caps::default();
        let ps: Vec<Representation> =
            (1..=3).map(|n| build(KroneckerFamily::preprojective(n))).collect();
        assert_eq!(mu_sup(&ps, caps).unwrap(), fin(&[1, 3, 5]));
        assert!(mu_sup(&[], caps).unwrap().is_empty());
        let rs: Vec<Representation> = [Lambda::Finite(0), Lambda::Finite(1), Lambda::Infinity]
            .into_iter()
            .map(|l| build(KroneckerFamily::regular(1, l)))
            .collect();
        assert_eq!(mu_sup(&rs, caps).unwrap(), fin(&[1, 2]));
    }

    #[test]
    fn witness_is_deterministic() {
        let caps = Caps::default();
        let x = build(KroneckerFamily::preprojective(3));
        let a = gr_measure(&x, caps).unwrap();
        let b = gr_measure(&x, caps).unwrap();
        let key = |r: &GrResult| {
            r.witness.iter().map(Submodule::canonical_bytes).collect::<Vec<_>>()
        };
        assert_eq!(key(&a), key(&b));
    }
}
