//! Finite desk model of the submodule-closed subcategory lattice and its
//! interplay with measures: a universe of indecomposables up to a length
//! bound, the embeds-in-a-power preorder, down-sets as submodule-closed
//! subcategories, and the order-theoretic laws as executable checks.
//!
//! In a representation-finite truncation every indecomposable is finitely
//! presented, every singleton is open, and every subset of the universe is
//! closed; "Ziegler closed set" therefore means "subset" here, while the
//! submodule-closed ones are exactly the down-sets of the preorder. Finite
//! type cannot be witnessed inside a truncated universe, so the compactness
//! statement is exercised as witness extraction on finite lattices.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grm::gr_measure;
use crate::linalg::{count_vectors, enumerate_vectors, MatrixFp};
use crate::measures::{sup_finite, Measure};
use crate::quiver::{is_indecomposable, is_isomorphic, Algebra, Representation};
use crate::submod::embeds_in_power;
use crate::Caps;

/// All indecomposables of length at most the bound, pairwise non-isomorphic,
/// with the embeds-in-a-power preorder and the Gabriel-Roiter measures
/// precomputed. Members are sorted by (length, dimension vector, matrix
/// data of the first representative found).
#[derive(Debug, Clone)]
pub struct IndUniverse {
    algebra: Arc<Algebra>,
    max_length: usize,
    members: Vec<Representation>,
    preorder: Vec<Vec<bool>>,
    measures: Vec<Measure>,
}

/// A downward-closed subset of a universe: the finite model of a
/// submodule-closed subcategory.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DownSet {
    mask: Vec<bool>,
}

impl DownSet {
    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn contains(&self, i: usize) -> bool {
        self.mask[i]
    }

    pub fn indices(&self) -> Vec<usize> {
        self.mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
    }

    pub fn size(&self) -> usize {
        self.mask.iter().filter(|&&b| b).count()
    }

    pub fn is_subset_of(&self, other: &DownSet) -> bool {
        self.mask.iter().zip(&other.mask).all(|(&a, &b)| !a || b)
    }

    /// Intersection; always downward closed again.
    pub fn intersect(&self, other: &DownSet) -> Result<DownSet> {
        if self.mask.len() != other.mask.len() {
            return Err(Error::UniverseMismatch);
        }
        Ok(DownSet {
            mask: self.mask.iter().zip(&other.mask).map(|(&a, &b)| a && b).collect(),
        })
    }

    /// Union; downward closed again, the join of down-sets.
    pub fn union(&self, other: &DownSet) -> Result<DownSet> {
        if self.mask.len() != other.mask.len() {
            return Err(Error::UniverseMismatch);
        }
        Ok(DownSet {
            mask: self.mask.iter().zip(&other.mask).map(|(&a, &b)| a || b).collect(),
        })
    }
}

// All compositions of `total` into `parts` non-negative summands, in
// lexicographic order.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            let mut v = Vec::with_capacity(parts);
            v.push(first);
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

/// Enumerates the universe: scan dimension vectors in graded lexicographic
/// order, scan all matrix tuples per vector, keep the valid indecomposable
/// ones, deduplicate up to isomorphism.
pub fn enumerate_ind(algebra: &Arc<Algebra>, max_length: usize, caps: Caps) -> Result<IndUniverse> {
    let quiver = algebra.quiver();
    let p = algebra.modulus();
    let mut members: Vec<Representation> = Vec::new();
    for total in 1..=max_length {
        for dims in compositions(total, quiver.vertex_count()) {
            let entry_count: usize = quiver
                .arrows()
                .iter()
                .map(|a| dims[a.tgt] * dims[a.src])
                .sum();
            count_vectors(entry_count, p, caps.enum_cap, "matrix tuple scan")?;
            for entries in enumerate_vectors(entry_count, p, caps.enum_cap)? {
                let mut offset = 0usize;
                let maps: Vec<MatrixFp> = quiver
                    .arrows()
                    .iter()
                    .map(|a| {
                        let count = dims[a.tgt] * dims[a.src];
                        let m = MatrixFp::from_reduced(
                            dims[a.tgt],
                            dims[a.src],
                            entries[offset..offset + count].to_vec(),
                            p,
                        );
                        offset += count;
                        m
                    })
                    .collect();
                let Ok(x) = Representation::new(Arc::clone(algebra), dims.clone(), maps) else {
                    continue; // relation violated
                };
                if !is_indecomposable(&x, caps)? {
                    continue;
                }
                let mut duplicate = false;
                for m in members.iter().filter(|m| m.dims() == x.dims()) {
                    if is_isomorphic(m, &x, caps)? {
                        duplicate = true;
                        break;
                    }
                }
                if !duplicate {
                    members.push(x);
                }
            }
        }
    }
    members.sort_by_key(|m| (m.length(), m.dims().to_vec(), m.canonical_bytes()));
    let mut preorder = vec![vec![false; members.len()]; members.len()];
    for (i, x) in members.iter().enumerate() {
        for (j, y) in members.iter().enumerate() {
            preorder[i][j] = embeds_in_power(x, y, None)?.embeds;
        }
    }
    let measures = members
        .iter()
        .map(|m| Ok(gr_measure(m, caps)?.measure))
        .collect::<Result<Vec<_>>>()?;
    Ok(IndUniverse { algebra: Arc::clone(algebra), max_length, members, preorder, measures })
}

impl IndUniverse {
    /// Assembles a universe from explicit parts. The preorder table and the
    /// measures are taken as given, which is what the corrupted-table
    /// negative controls need.
    pub fn from_parts(
        algebra: Arc<Algebra>,
        max_length: usize,
        members: Vec<Representation>,
        preorder: Vec<Vec<bool>>,
        measures: Vec<Measure>,
    ) -> Self {
        IndUniverse { algebra, max_length, members, preorder, measures }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn max_length(&self) -> usize {
        self.max_length
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Representation] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &Representation {
        &self.members[i]
    }

    pub fn measure(&self, i: usize) -> &Measure {
        &self.measures[i]
    }

    pub fn measures(&self) -> &[Measure] {
        &self.measures
    }

    /// The preorder table: does member i embed into a power of member j?
    pub fn preceq(&self, i: usize, j: usize) -> bool {
        self.preorder[i][j]
    }

    pub fn preorder(&self) -> &[Vec<bool>] {
        &self.preorder
    }

    pub fn empty_down_set(&self) -> DownSet {
        DownSet { mask: vec![false; self.len()] }
    }

    pub fn full_down_set(&self) -> DownSet {
        DownSet { mask: vec![true; self.len()] }
    }

    pub fn is_down_closed(&self, mask: &[bool]) -> bool {
        (0..self.len()).all(|j| {
            !mask[j] || (0..self.len()).all(|i| !self.preorder[i][j] || mask[i])
        })
    }

    /// Wraps an explicit member set, verifying downward closure.
    pub fn down_set_from(&self, indices: &[usize]) -> Result<DownSet> {
        let mut mask = vec![false; self.len()];
        for &i in indices {
            if i >= self.len() {
                return Err(Error::BadMemberIndex { index: i, len: self.len() });
            }
            mask[i] = true;
        }
        if !self.is_down_closed(&mask) {
            return Err(Error::Parse {
                context: "down-set".to_string(),
                message: "member set is not downward closed under the preorder".to_string(),
            });
        }
        Ok(DownSet { mask })
    }

    /// The finite model of sub C: downward closure of the seeds under the
    /// embeds-in-a-power preorder.
    pub fn sub_closure(&self, seeds: &[usize]) -> Result<DownSet> {
        let mut mask = vec![false; self.len()];
        for &s in seeds {
            if s >= self.len() {
                return Err(Error::BadMemberIndex { index: s, len: self.len() });
            }
            for (m, below) in mask.iter_mut().zip(self.preorder.iter().map(|row| row[s])) {
                *m |= below;
            }
            mask[s] = true;
        }
        Ok(DownSet { mask })
    }

    fn closure_of_mask(&self, mask: &[bool]) -> DownSet {
        let seeds: Vec<usize> =
            mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect();
        self.sub_closure(&seeds).expect("indices are in range")
    }

    /// Zg C = { X | sub X inside C }, for a submodule-closed C.
    pub fn zg_set(&self, c: &DownSet) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| (0..self.len()).all(|i| !self.preorder[i][x] || c.contains(i)))
            .collect()
    }

    /// mu of the subcategory modeled by a down-set: sup of member measures.
    pub fn mu_of(&self, c: &DownSet) -> Measure {
        sup_finite(c.indices().into_iter().map(|i| self.measures[i].clone()))
    }

    /// All down-sets of the universe; guarded by the enumeration cap since
    /// there are up to 2^n candidates.
    pub fn all_down_sets(&self, cap: u64) -> Result<Vec<DownSet>> {
        count_vectors(self.len(), 2, cap, "down-set enumeration")?;
        let mut out = Vec::new();
        for mask in enumerate_vectors(self.len(), 2, cap)? {
            let mask: Vec<bool> = mask.into_iter().map(|b| b == 1).collect();
            if self.is_down_closed(&mask) {
                out.push(DownSet { mask });
            }
        }
        Ok(out)
    }

    /// All subsets of the universe. In the finite model every subset is
    /// Ziegler closed, so this is the model of Cl(Ind A).
    pub fn all_subsets(&self, cap: u64) -> Result<Vec<Vec<bool>>> {
        count_vectors(self.len(), 2, cap, "subset enumeration")?;
        Ok(enumerate_vectors(self.len(), 2, cap)?
            .map(|mask| mask.into_iter().map(|b| b == 1).collect())
            .collect())
    }

    /// The GR filtration at I: members with measure at most I. In the finite
    /// model Zg I and sub I coincide as sets; downward closure of the result
    /// is verified rather than assumed.
    pub fn gr_filtration(&self, bound: &Measure) -> Result<Filtration> {
        let mask: Vec<bool> = self.measures.iter().map(|m| m <= bound).collect();
        if !self.is_down_closed(&mask) {
            return Err(Error::CrossCheckFailed(
                "filtration level is not downward closed".to_string(),
            ));
        }
        let sub = DownSet { mask };
        Ok(Filtration { zg: sub.indices(), sub })
    }
}

/// One level of the GR filtration.
#[derive(Debug, Clone)]
pub struct Filtration {
    pub zg: Vec<usize>,
    pub sub: DownSet,
}

/// Intersection of a family of down-sets plus a finite witness subfamily
/// whose intersection already equals it, extracted greedily by smallest
/// remaining size. The witness is validated by recomputation before return.
pub fn intersect_with_witness(family: &[DownSet]) -> Result<(DownSet, Vec<usize>)> {
    let Some(first) = family.first() else {
        return Err(Error::Parse {
            context: "intersect".to_string(),
            message: "family must be nonempty".to_string(),
        });
    };
    let mut full = first.clone();
    for c in &family[1..] {
        full = full.intersect(c)?;
    }
    let top = DownSet { mask: vec![true; first.mask.len()] };
    let mut current = top;
    let mut witness: Vec<usize> = Vec::new();
    while current != full {
        let mut best: Option<(usize, DownSet)> = None;
        for (i, c) in family.iter().enumerate() {
            if witness.contains(&i) {
                continue;
            }
            let next = current.intersect(c)?;
            if best.as_ref().is_none_or(|(_, b)| next.size() < b.size()) {
                best = Some((i, next));
            }
        }
        let (i, next) = best.expect("intersection is reachable");
        witness.push(i);
        current = next;
    }
    if witness.is_empty() {
        // the full intersection is the top element; any single member witnesses it
        witness.push(0);
    }
    let mut recheck = family[witness[0]].clone();
    for &i in &witness[1..] {
        recheck = recheck.intersect(&family[i])?;
    }
    if recheck != full {
        return Err(Error::CrossCheckFailed("witness recomputation mismatch".to_string()));
    }
    Ok((full, witness))
}

/// A finite poset given by an explicit order table.
#[derive(Debug, Clone)]
pub struct FinitePoset {
    leq: Vec<Vec<bool>>,
}

impl FinitePoset {
    pub fn new(leq: Vec<Vec<bool>>) -> Self {
        for row in &leq {
            assert_eq!(row.len(), leq.len(), "order table must be square");
        }
        FinitePoset { leq }
    }

    /// Poset of subsets (or down-sets) ordered by inclusion.
    pub fn by_inclusion<T: AsRef<[bool]>>(elements: &[T]) -> Self {
        let leq = elements
            .iter()
            .map(|a| {
                elements
                    .iter()
                    .map(|b| {
                        a.as_ref().iter().zip(b.as_ref()).all(|(&x, &y)| !x || y)
                    })
                    .collect()
            })
            .collect();
        FinitePoset { leq }
    }

    /// Poset of measures with the lexicographic order.
    pub fn by_measure_order(elements: &[Measure]) -> Self {
        let leq = elements
            .iter()
            .map(|a| elements.iter().map(|b| a <= b).collect())
            .collect();
        FinitePoset { leq }
    }

    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }
}

/// Outcome of an adjointness check; `first_failure` is the offending pair
/// (x in S, y in T) when the equivalence breaks.
#[derive(Debug, Clone)]
pub struct GaloisReport {
    pub pairs_checked: usize,
    pub first_failure: Option<(usize, usize)>,
}

impl GaloisReport {
    pub fn holds(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Verifies f(x) <= y iff x <= g(y) for all pairs, with f: S -> T and
/// g: T -> S given as index tables.
pub fn check_galois(s: &FinitePoset, t: &FinitePoset, f: &[usize], g: &[usize]) -> GaloisReport {
    assert_eq!(f.len(), s.len());
    assert_eq!(g.len(), t.len());
    let mut pairs_checked = 0;
    for x in 0..s.len() {
        for y in 0..t.len() {
            pairs_checked += 1;
            if t.leq(f[x], y) != s.leq(x, g[y]) {
                return GaloisReport { pairs_checked, first_failure: Some((x, y)) };
            }
        }
    }
    GaloisReport { pairs_checked, first_failure: None }
}

/// The (sub, Zg) adjunction on the finite model: subsets of the universe on
/// one side, down-sets on the other, downward closure against Zg.
pub fn galois_sub_zg(universe: &IndUniverse, cap: u64) -> Result<GaloisReport> {
    let subsets = universe.all_subsets(cap)?;
    let down_sets = universe.all_down_sets(cap)?;
    let down_index: BTreeMap<Vec<bool>, usize> =
        down_sets.iter().enumerate().map(|(i, d)| (d.mask.clone(), i)).collect();
    let subset_index: BTreeMap<Vec<bool>, usize> =
        subsets.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    let f: Vec<usize> = subsets
        .iter()
        .map(|s| down_index[&universe.closure_of_mask(s).mask])
        .collect();
    let g: Vec<usize> = down_sets
        .iter()
        .map(|d| {
            let mut mask = vec![false; universe.len()];
            for i in universe.zg_set(d) {
                mask[i] = true;
            }
            subset_index[&mask]
        })
        .collect();
    let s_poset = FinitePoset::by_inclusion(&subsets);
    let t_poset = FinitePoset::by_inclusion(
        &down_sets.iter().map(|d| d.mask.clone()).collect::<Vec<_>>(),
    );
    Ok(check_galois(&s_poset, &t_poset, &f, &g))
}

/// Probe measures for laws quantified over all of 2^N: every achieved value
/// (the bottom plus the member measures) together with synthetic values that
/// are provably not achieved, to exercise the strict side of the laws.
pub fn standard_probe_measures(universe: &IndUniverse) -> Vec<Measure> {
    let mut probes: Vec<Measure> = vec![Measure::empty()];
    probes.extend(universe.measures().iter().cloned());
    let above = universe.max_length as u64 + 1;
    for m in universe.measures() {
        if m.is_finite() {
            if let Ok(ext) = m.appended(above) {
                probes.push(ext);
            }
        }
    }
    for tail in [(1, 1), (1, 2), (2, 2)] {
        if let Ok(m) = Measure::new(vec![], Some(tail)) {
            probes.push(m);
        }
    }
    probes.sort();
    probes.dedup();
    probes
}

/// The (mu, sub) adjunction: down-sets against a probe set of measures,
/// mu of a down-set against the filtration level.
pub fn galois_mu_sub(universe: &IndUniverse, cap: u64) -> Result<GaloisReport> {
    let down_sets = universe.all_down_sets(cap)?;
    let probes = standard_probe_measures(universe);
    let f: Vec<usize> = down_sets
        .iter()
        .map(|d| {
            let mu = universe.mu_of(d);
            probes.iter().position(|p| *p == mu).expect("achieved measures are probes")
        })
        .collect();
    let mut g = Vec::with_capacity(probes.len());
    for p in &probes {
        let filt = universe.gr_filtration(p)?;
        g.push(
            down_sets
                .iter()
                .position(|d| *d == filt.sub)
                .expect("filtration levels are down-sets"),
        );
    }
    let s_poset = FinitePoset::by_inclusion(
        &down_sets.iter().map(|d| d.mask.clone()).collect::<Vec<_>>(),
    );
    let t_poset = FinitePoset::by_measure_order(&probes);
    Ok(check_galois(&s_poset, &t_poset, &f, &g))
}

/// Quotient-map identities: sub(Zg C) = C for every down-set C, and
/// mu(sub I) = I for every achieved measure I.
#[derive(Debug, Clone)]
pub struct QuotientReport {
    pub down_sets_checked: usize,
    pub measures_checked: usize,
    pub failures: Vec<String>,
}

impl QuotientReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn check_quotient_maps(universe: &IndUniverse, cap: u64) -> Result<QuotientReport> {
    let mut failures = Vec::new();
    let down_sets = universe.all_down_sets(cap)?;
    for d in &down_sets {
        let zg = universe.zg_set(d);
        let back = universe.sub_closure(&zg)?;
        if back != *d {
            failures.push(format!("sub(Zg C) != C for C = {:?}", d.indices()));
        }
    }
    let mut achieved: Vec<Measure> = vec![Measure::empty()];
    achieved.extend(universe.measures().iter().cloned());
    achieved.sort();
    achieved.dedup();
    for i in &achieved {
        // a preorder inconsistent with the measures surfaces here: the
        // filtration level fails its downward-closure cross-check
        match universe.gr_filtration(i) {
            Ok(filt) => {
                let mu = universe.mu_of(&filt.sub);
                if mu != *i {
                    failures.push(format!("mu(sub I) = {mu} != I = {i}"));
                }
            }
            Err(Error::CrossCheckFailed(msg)) => {
                failures.push(format!("filtration at I = {i}: {msg}"));
            }
            Err(other) => return Err(other),
        }
    }
    Ok(QuotientReport {
        down_sets_checked: down_sets.len(),
        measures_checked: achieved.len(),
        failures,
    })
}

/// Equivalence "C downward closed iff C = Zg(sub C)" for an arbitrary member
/// set, reporting both sides.
#[derive(Debug, Clone)]
pub struct ClosureReport {
    pub downward_closed: bool,
    pub zg_sub_fixed_point: bool,
}

impl ClosureReport {
    pub fn equivalent(&self) -> bool {
        self.downward_closed == self.zg_sub_fixed_point
    }
}

pub fn closure_equivalences(universe: &IndUniverse, members: &[usize]) -> Result<ClosureReport> {
    let mut mask = vec![false; universe.len()];
    for &i in members {
        if i >= universe.len() {
            return Err(Error::BadMemberIndex { index: i, len: universe.len() });
        }
        mask[i] = true;
    }
    let downward_closed = universe.is_down_closed(&mask);
    let closure = universe.closure_of_mask(&mask);
    let zg = universe.zg_set(&closure);
    let mut zg_mask = vec![false; universe.len()];
    for i in zg {
        zg_mask[i] = true;
    }
    Ok(ClosureReport { downward_closed, zg_sub_fixed_point: zg_mask == mask })
}

/// Aggregated law check over a finite universe: both adjunctions, the
/// quotient identities, the closure equivalence for every subset, the
/// filtration laws over the probe measures, the intersection law, the sup
/// reconstruction, the universal-map laws, and minimal-element extraction.
#[derive(Debug, Clone)]
pub struct LawsReport {
    pub galois_sub_zg: GaloisReport,
    pub galois_mu_sub: GaloisReport,
    pub quotient: QuotientReport,
    pub closure_subsets_checked: usize,
    pub closure_failures: Vec<String>,
    pub filtration_pairs_checked: usize,
    pub filtration_failures: Vec<String>,
    pub intersection_pairs_checked: usize,
    pub intersection_failures: Vec<String>,
    pub reconstruction_failures: Vec<String>,
    pub universal_failures: Vec<String>,
    pub minimal_element_failures: Vec<String>,
}

impl LawsReport {
    pub fn pass(&self) -> bool {
        self.galois_sub_zg.holds()
            && self.galois_mu_sub.holds()
            && self.quotient.pass()
            && self.closure_failures.is_empty()
            && self.filtration_failures.is_empty()
            && self.intersection_failures.is_empty()
            && self.reconstruction_failures.is_empty()
            && self.universal_failures.is_empty()
            && self.minimal_element_failures.is_empty()
    }
}

pub fn check_all_laws(universe: &IndUniverse, cap: u64) -> Result<LawsReport> {
    let galois_sub_zg = galois_sub_zg(universe, cap)?;
    let galois_mu_sub = galois_mu_sub(universe, cap)?;
    let quotient = check_quotient_maps(universe, cap)?;

    // closure equivalence over every subset of the universe
    let mut closure_failures = Vec::new();
    let subsets = universe.all_subsets(cap)?;
    for mask in &subsets {
        let members: Vec<usize> =
            mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect();
        let report = closure_equivalences(universe, &members)?;
        if !report.equivalent() {
            closure_failures.push(format!("equivalence fails for {members:?}"));
        }
    }

    // filtration: monotone in I, meets taken pointwise, mu(V_I) <= I with
    // equality exactly at achieved values
    let probes = standard_probe_measures(universe);
    let mut achieved: Vec<Measure> = vec![Measure::empty()];
    achieved.extend(universe.measures().iter().cloned());
    let mut filtration_failures = Vec::new();
    let mut filtration_pairs_checked = 0;
    let levels: Vec<Filtration> =
        probes.iter().map(|i| universe.gr_filtration(i)).collect::<Result<_>>()?;
    for (ii, i) in probes.iter().enumerate() {
        for (jj, j) in probes.iter().enumerate() {
            filtration_pairs_checked += 1;
            if i <= j && !levels[ii].sub.is_subset_of(&levels[jj].sub) {
                filtration_failures.push(format!("V_I not inside V_J for I={i} J={j}"));
            }
            // total order: inf of {I, J} is the minimum
            let inf = if i <= j { i } else { j };
            let meet = levels[ii].sub.intersect(&levels[jj].sub)?;
            if universe.gr_filtration(inf)?.sub != meet {
                filtration_failures.push(format!("V_inf != meet for I={i} J={j}"));
            }
        }
        let mu = universe.mu_of(&levels[ii].sub);
        if mu > *i {
            filtration_failures.push(format!("mu(V_I) > I at I={i}"));
        }
        let is_achieved = achieved.contains(i);
        if (mu == *i) != is_achieved {
            filtration_failures.push(format!(
                "mu(V_I) = I should hold iff I is achieved; I={i}, mu={mu}"
            ));
        }
    }

    // Zg commutes with intersections of down-sets
    let down_sets = universe.all_down_sets(cap)?;
    let mut intersection_failures = Vec::new();
    let mut intersection_pairs_checked = 0;
    let zg_of: Vec<Vec<usize>> = down_sets.iter().map(|d| universe.zg_set(d)).collect();
    for (ai, a) in down_sets.iter().enumerate() {
        for (bi, b) in down_sets.iter().enumerate() {
            intersection_pairs_checked += 1;
            let lhs = universe.zg_set(&a.intersect(b)?);
            let rhs: Vec<usize> = zg_of[ai]
                .iter()
                .filter(|i| zg_of[bi].contains(i))
                .copied()
                .collect();
            if lhs != rhs {
                intersection_failures.push(format!(
                    "Zg of intersection differs for {:?} and {:?}",
                    a.indices(),
                    b.indices()
                ));
            }
        }
    }

    // mu(X) reconstructed as sup over Zg(sub X)
    let mut reconstruction_failures = Vec::new();
    for x in 0..universe.len() {
        let sub_x = universe.sub_closure(&[x])?;
        let zg = universe.zg_set(&sub_x);
        let sup = sup_finite(zg.iter().map(|&i| universe.measure(i).clone()));
        if sup != *universe.measure(x) {
            reconstruction_failures.push(format!("member {x}: sup over Zg(sub X) != mu(X)"));
        }
    }

    // universal-map laws for sub: order preservation along the preorder and
    // the join law with join = union (already downward closed)
    let mut universal_failures = Vec::new();
    for i in 0..universe.len() {
        for j in 0..universe.len() {
            if universe.preceq(i, j)
                && !universe.sub_closure(&[i])?.is_subset_of(&universe.sub_closure(&[j])?)
            {
                universal_failures.push(format!("sub({i}) not inside sub({j})"));
            }
            let joined = universe.sub_closure(&[i, j])?;
            let unioned = universe.sub_closure(&[i])?.union(&universe.sub_closure(&[j])?)?;
            if joined != unioned {
                universal_failures.push(format!("sub({i},{j}) is not the join"));
            }
        }
    }

    // the set of all down-sets is intersection closed; any monotone "type"
    // predicate cuts out a subfamily that is empty or has a minimal element
    let mut minimal_element_failures = Vec::new();
    type Predicate = (String, Box<dyn Fn(&DownSet) -> bool>);
    let monotone_predicates: Vec<Predicate> = {
        let mut preds: Vec<Predicate> = Vec::new();
        for k in 0..universe.len() {
            preds.push((format!("contains member {k}"), Box::new(move |d: &DownSet| d.contains(k))));
        }
        for t in 0..=universe.len() {
            preds.push((format!("size at least {t}"), Box::new(move |d: &DownSet| d.size() >= t)));
        }
        preds
    };
    for (name, pred) in &monotone_predicates {
        let filtered: Vec<&DownSet> = down_sets.iter().filter(|d| pred(d)).collect();
        if filtered.is_empty() {
            continue;
        }
        let has_minimal = filtered
            .iter()
            .any(|d| filtered.iter().all(|e| !(e.is_subset_of(d) && **e != **d)));
        if !has_minimal {
            minimal_element_failures.push(format!("no minimal element under `{name}`"));
        }
    }

    Ok(LawsReport {
        galois_sub_zg,
        galois_mu_sub,
        quotient,
        closure_subsets_checked: subsets.len(),
        closure_failures,
        filtration_pairs_checked,
        filtration_failures,
        intersection_pairs_checked,
        intersection_failures,
        reconstruction_failures,
        universal_failures,
        minimal_element_failures,
    })
}

/// The A_2 quiver 1 -> 2, handy for the smallest nontrivial model.
pub fn a2_algebra(p: u64) -> Result<Arc<Algebra>> {
    let quiver = crate::quiver::Quiver::new(
        vec!["1".to_string(), "2".to_string()],
        vec![("a".to_string(), "1".to_string(), "2".to_string())],
    )?;
    Algebra::path_algebra(quiver, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kronecker;

    fn a2_universe() -> IndUniverse {
        enumerate_ind(&a2_algebra(2).unwrap(), 2, Caps::default()).unwrap()
    }

    fn kron_universe(max_len: usize) -> IndUniverse {
        enumerate_ind(&kronecker::kronecker_algebra(2).unwrap(), max_len, Caps::default())
            .unwrap()
    }

    // members sorted by (length, dims, data): index of the unique member
    // with the given dimension vector and, optionally, given arrow data
    fn find(u: &IndUniverse, dims: &[usize], maps: Option<Vec<Vec<u8>>>) -> usize {
        (0..u.len())
            .find(|&i| {
                u.member(i).dims() == dims
                    && maps.as_ref().is_none_or(|m| {
                        u.member(i)
                            .maps()
                            .iter()
                            .zip(m)
                            .all(|(a, b)| a.entries() == b.as_slice())
                    })
            })
            .expect("member present")
    }

    #[test]
    fn a2_universe_has_three_members() {
        let u = a2_universe();
        assert_eq!(u.len(), 3);
        let dims: Vec<Vec<usize>> =
            u.members().iter().map(|m| m.dims().to_vec()).collect();
        assert_eq!(dims, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        // the length-2 member is the projective cover of S_1 with map 1
        assert_eq!(u.member(2).map(0).entries(), &[1]);
    }

    #[test]
    fn kronecker_universe_members() {
        let u2 = kron_universe(2);
        assert_eq!(u2.len(), 5); // S_2, S_1, and the three points of P^1(F_2)
        let u3 = kron_universe(3);
        assert_eq!(u3.len(), 7); // plus P_2 and Q_2
        let lengths: Vec<usize> = u3.members().iter().map(|m| m.length()).collect();
        assert_eq!(lengths, vec![1, 1, 2, 2, 2, 3, 3]);
    }

    #[test]
    fn universe_of_length_one_is_the_simples() {
        let u = enumerate_ind(&kronecker::kronecker_algebra(2).unwrap(), 1, Caps::default())
            .unwrap();
        assert_eq!(u.len(), 2);
        assert!(u.members().iter().all(|m| m.length() == 1));
    }

    #[test]
    fn preorder_is_reflexive_and_transitive() {
        let u = kron_universe(3);
        for i in 0..u.len() {
            assert!(u.preceq(i, i));
            for j in 0..u.len() {
                for k in 0..u.len() {
                    if u.preceq(i, j) && u.preceq(j, k) {
                        assert!(u.preceq(i, k));
                    }
                }
            }
        }
    }

    #[test]
    fn sub_closure_examples() {
        let u = kron_universe(3);
        let s1 = find(&u, &[1, 0], None);
        let s2 = find(&u, &[0, 1], None);
        let p2 = find(&u, &[1, 2], None);
        let r10 = find(&u, &[1, 1], Some(vec![vec![1], vec![0]]));
        let c = u.sub_closure(&[p2]).unwrap();
        assert_eq!(c.indices(), vec![s2, p2]);
        assert_eq!(u.sub_closure(&[s1]).unwrap().indices(), vec![s1]);
        let c = u.sub_closure(&[r10]).unwrap();
        assert_eq!(c.indices(), vec![s2, r10]);
    }

    #[test]
    fn zg_set_examples() {
        let u = kron_universe(3);
        let p2 = find(&u, &[1, 2], None);
        let c = u.sub_closure(&[p2]).unwrap();
        assert_eq!(u.zg_set(&c), c.indices());
        let full = u.full_down_set();
        assert_eq!(u.zg_set(&full).len(), u.len());
        let empty = u.empty_down_set();
        assert!(u.zg_set(&empty).is_empty());
    }

    #[test]
    fn intersect_with_witness_examples() {
        let u = kron_universe(3);
        let p2 = find(&u, &[1, 2], None);
        let s1 = find(&u, &[1, 0], None);
        let r10 = find(&u, &[1, 1], Some(vec![vec![1], vec![0]]));
        let r11 = find(&u, &[1, 1], Some(vec![vec![1], vec![1]]));
        let c = u.sub_closure(&[p2]).unwrap();
        // a family of one
        let (i, w) = intersect_with_witness(std::slice::from_ref(&c)).unwrap();
        assert_eq!(i, c);
        assert_eq!(w, vec![0]);
        // redundant members are dropped
        let (i, w) =
            intersect_with_witness(&[c.clone(), u.full_down_set(), c.clone()]).unwrap();
        assert_eq!(i, c);
        assert_eq!(w, vec![0]);
        // a family whose intersection needs two members
        let family = vec![
            u.sub_closure(&[p2, r10]).unwrap(),
            u.sub_closure(&[p2, r11]).unwrap(),
            u.sub_closure(&[p2, s1]).unwrap(),
        ];
        let (i, w) = intersect_with_witness(&family).unwrap();
        assert_eq!(i, c);
        assert_eq!(w.len(), 2);
    }

    #[test]
    fn filtration_examples() {
        let u = kron_universe(3);
        let s1 = find(&u, &[1, 0], None);
        let s2 = find(&u, &[0, 1], None);
        let q2 = find(&u, &[2, 1], None);
        let one = Measure::finite(vec![1]).unwrap();
        let filt = u.gr_filtration(&one).unwrap();
        assert_eq!(filt.zg.len(), 2);
        assert!(filt.zg.contains(&s1) && filt.zg.contains(&s2));
        let twelve = Measure::finite(vec![1, 2]).unwrap();
        let filt = u.gr_filtration(&twelve).unwrap();
        assert_eq!(filt.zg.len(), u.len() - 1);
        assert!(!filt.zg.contains(&q2));
        let filt = u.gr_filtration(&Measure::empty()).unwrap();
        assert!(filt.zg.is_empty());
    }

    #[test]
    fn galois_checks_pass() {
        for u in [a2_universe(), kron_universe(3)] {
            assert!(galois_sub_zg(&u, 1 << 20).unwrap().holds());
            assert!(galois_mu_sub(&u, 1 << 20).unwrap().holds());
        }
    }

    #[test]
    fn galois_identity_pair_passes_and_corruption_fails() {
        let poset = FinitePoset::new(vec![
            vec![true, true, false],
            vec![false, true, false],
            vec![false, false, true],
        ]);
        let id: Vec<usize> = (0..3).collect();
        assert!(check_galois(&poset, &poset, &id, &id).holds());
        // flip one bit of the order table
        let mut corrupt = vec![
            vec![true, true, false],
            vec![false, true, false],
            vec![false, false, true],
        ];
        corrupt[0][1] = false;
        let broken = FinitePoset::new(corrupt);
        let report = check_galois(&poset, &broken, &id, &id);
        assert!(!report.holds());
        assert_eq!(report.first_failure, Some((0, 1)));
    }

    #[test]
    fn quotient_maps_pass_and_corruption_fails() {
        let a2 = a2_universe();
        let report = check_quotient_maps(&a2, 1 << 20).unwrap();
        assert!(report.pass());
        assert_eq!(report.down_sets_checked, 6);
        assert_eq!(report.measures_checked, 3); // {}, {1}, {1,2}
        let kr = kron_universe(3);
        assert!(check_quotient_maps(&kr, 1 << 20).unwrap().pass());
        // corrupt the preorder by inserting the projective below S_2; its
        // measure {1,2} exceeds {1}, so the filtration at {1} is no longer
        // downward closed and the check reports it
        let mut preorder = a2.preorder().to_vec();
        preorder[2][0] = true;
        let broken = IndUniverse::from_parts(
            Arc::clone(a2.algebra()),
            a2.max_length(),
            a2.members().to_vec(),
            preorder,
            a2.measures().to_vec(),
        );
        assert!(!check_quotient_maps(&broken, 1 << 20).unwrap().pass());
    }

    #[test]
    fn closure_equivalence_examples() {
        let u = kron_universe(3);
        let s2 = find(&u, &[0, 1], None);
        let p2 = find(&u, &[1, 2], None);
        let r = closure_equivalences(&u, &[s2, p2]).unwrap();
        assert!(r.downward_closed && r.zg_sub_fixed_point && r.equivalent());
        let r = closure_equivalences(&u, &[p2]).unwrap();
        assert!(!r.downward_closed && !r.zg_sub_fixed_point && r.equivalent());
        let r = closure_equivalences(&u, &[]).unwrap();
        assert!(r.downward_closed && r.zg_sub_fixed_point);
    }

    #[test]
    fn all_laws_pass_on_both_models() {
        for u in [a2_universe(), kron_universe(2), kron_universe(3)] {
            let report = check_all_laws(&u, 1 << 20).unwrap();
            assert!(report.pass(), "failures in laws report: {report:?}");
        }
    }
}
