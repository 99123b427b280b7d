//! Submodule lattices of a representation and the embeds-in-a-power
//! preorder that underlies submodule-closed subcategories.
//!
//! Enumeration works by join-closure of cyclic submodules, which gives the
//! exact lattice with an exponentially smaller frontier than scanning all
//! subspace tuples; the tuple scan is kept as a debug oracle.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{count_vectors, enumerate_subspaces, enumerate_vectors, Subspace};
use crate::quiver::{hom_basis, restrict_to_subspaces, Representation};
use crate::Caps;

/// An arrow-invariant tuple of subspaces of a parent representation, one per
/// vertex, each in canonical echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Submodule {
    parent: Representation,
    spaces: Vec<Subspace>,
}

impl Submodule {
    /// Validates ambient dimensions and arrow-invariance.
    pub fn new(parent: Representation, spaces: Vec<Subspace>) -> Result<Self> {
        assert_eq!(spaces.len(), parent.dims().len());
        for (v, s) in spaces.iter().enumerate() {
            if s.ambient() != parent.dims()[v] {
                return Err(Error::BadVectorLength {
                    expected: parent.dims()[v],
                    got: s.ambient(),
                });
            }
        }
        for (aidx, arrow) in parent.algebra().quiver().arrows().iter().enumerate() {
            for row in spaces[arrow.src].basis_rows() {
                let image = parent.map(aidx).mul_vec(row);
                if !spaces[arrow.tgt].contains(&image) {
                    return Err(Error::NotArrowInvariant(arrow.name.clone()));
                }
            }
        }
        Ok(Submodule { parent, spaces })
    }

    pub fn zero(parent: Representation) -> Self {
        let p = parent.modulus();
        let spaces = parent.dims().iter().map(|&d| Subspace::zero(d, p)).collect();
        Submodule { parent, spaces }
    }

    pub fn full(parent: Representation) -> Self {
        let p = parent.modulus();
        let spaces = parent.dims().iter().map(|&d| Subspace::full(d, p)).collect();
        Submodule { parent, spaces }
    }

    pub fn parent(&self) -> &Representation {
        &self.parent
    }

    pub fn spaces(&self) -> &[Subspace] {
        &self.spaces
    }

    pub fn space(&self, vertex: usize) -> &Subspace {
        &self.spaces[vertex]
    }

    /// Composition length of the carrier.
    pub fn length(&self) -> usize {
        self.spaces.iter().map(Subspace::dim).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.length() == 0
    }

    pub fn is_full(&self) -> bool {
        self.spaces.iter().all(Subspace::is_full)
    }

    pub fn contains(&self, other: &Submodule) -> bool {
        self.spaces
            .iter()
            .zip(&other.spaces)
            .all(|(a, b)| a.contains_subspace(b))
    }

    /// Sum of submodules, again a submodule.
    pub fn sum(&self, other: &Submodule) -> Result<Submodule> {
        if self.parent != other.parent {
            return Err(Error::ParentMismatch);
        }
        let spaces = self.spaces.iter().zip(&other.spaces).map(|(a, b)| a.sum(b)).collect();
        Ok(Submodule { parent: self.parent.clone(), spaces })
    }

    /// Intersection of submodules.
    pub fn intersect(&self, other: &Submodule) -> Result<Submodule> {
        if self.parent != other.parent {
            return Err(Error::ParentMismatch);
        }
        let spaces =
            self.spaces.iter().zip(&other.spaces).map(|(a, b)| a.intersect(b)).collect();
        Ok(Submodule { parent: self.parent.clone(), spaces })
    }

    /// The carrier as a representation in the echelon bases.
    pub fn as_representation(&self) -> Representation {
        restrict_to_subspaces(&self.parent, &self.spaces)
            .expect("a validated submodule is arrow invariant")
    }

    /// Per-vertex echelon bases concatenated in vertex order; equal
    /// submodules have identical encodings.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        for s in &self.spaces {
            out.push(s.dim() as u8);
            out.extend_from_slice(s.basis().entries());
        }
        out
    }
}

/// Smallest submodule containing the vector `v` at the given vertex: close
/// under all arrow maps and take spans.
pub fn cyclic_closure(x: &Representation, vertex: usize, v: &[u8]) -> Result<Submodule> {
    if v.len() != x.dims()[vertex] {
        return Err(Error::BadVectorLength { expected: x.dims()[vertex], got: v.len() });
    }
    span_closure(x, &[(vertex, v.to_vec())])
}

/// Smallest submodule containing all seed vectors.
pub fn span_closure(x: &Representation, seeds: &[(usize, Vec<u8>)]) -> Result<Submodule> {
    let p = x.modulus();
    let mut spaces: Vec<Subspace> =
        x.dims().iter().map(|&d| Subspace::zero(d, p)).collect();
    let mut work: Vec<(usize, Vec<u8>)> = Vec::new();
    for (vertex, v) in seeds {
        if v.len() != x.dims()[*vertex] {
            return Err(Error::BadVectorLength { expected: x.dims()[*vertex], got: v.len() });
        }
        if !spaces[*vertex].contains(v) {
            let mut rows: Vec<Vec<u8>> =
                spaces[*vertex].basis_rows().map(<[u8]>::to_vec).collect();
            rows.push(v.clone());
            spaces[*vertex] = Subspace::span(x.dims()[*vertex], p, rows);
            work.push((*vertex, v.clone()));
        }
    }
    while let Some((vertex, v)) = work.pop() {
        for (aidx, arrow) in x.algebra().quiver().arrows().iter().enumerate() {
            if arrow.src != vertex {
                continue;
            }
            let image = x.map(aidx).mul_vec(&v);
            if !spaces[arrow.tgt].contains(&image) {
                let mut rows: Vec<Vec<u8>> =
                    spaces[arrow.tgt].basis_rows().map(<[u8]>::to_vec).collect();
                rows.push(image.clone());
                spaces[arrow.tgt] = Subspace::span(x.dims()[arrow.tgt], p, rows);
                work.push((arrow.tgt, image));
            }
        }
    }
    Ok(Submodule { parent: x.clone(), spaces })
}

/// The full submodule lattice: elements in a deterministic order (by length,
/// then canonical encoding) plus the inclusion relation. Index 0 is the zero
/// submodule and the last index is the whole representation.
#[derive(Debug, Clone)]
pub struct SubmoduleLattice {
    elements: Vec<Submodule>,
    leq: Vec<Vec<bool>>,
}

impl SubmoduleLattice {
    pub fn elements(&self) -> &[Submodule] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    /// All (i, j) pairs with element i strictly below element j.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in 0..self.len() {
                if i != j && self.leq[i][j] {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Every submodule of `x`, exactly once, as the join-closure of the cyclic
/// submodules. The precondition p^length <= enum_cap bounds the vector
/// enumerations below.
pub fn all_submodules(x: &Representation, caps: Caps) -> Result<SubmoduleLattice> {
    count_vectors(x.length(), x.modulus(), caps.enum_cap, "submodule enumeration")?;
    let mut found: BTreeMap<Vec<u8>, Submodule> = BTreeMap::new();
    let zero = Submodule::zero(x.clone());
    found.insert(zero.canonical_bytes(), zero);
    let mut frontier: Vec<Submodule> = Vec::new();
    for vertex in 0..x.dims().len() {
        for v in enumerate_vectors(x.dims()[vertex], x.modulus(), caps.enum_cap)? {
            if v.iter().all(|&e| e == 0) {
                continue;
            }
            let cyc = cyclic_closure(x, vertex, &v)?;
            if let std::collections::btree_map::Entry::Vacant(e) =
                found.entry(cyc.canonical_bytes())
            {
                e.insert(cyc.clone());
                frontier.push(cyc);
            }
        }
    }
    let cyclics = frontier.clone();
    while let Some(s) = frontier.pop() {
        for c in &cyclics {
            let joined = s.sum(c)?;
            if let std::collections::btree_map::Entry::Vacant(e) =
                found.entry(joined.canonical_bytes())
            {
                e.insert(joined.clone());
                frontier.push(joined);
            }
        }
    }
    let mut elements: Vec<Submodule> = found.into_values().collect();
    elements.sort_by_key(|s| (s.length(), s.canonical_bytes()));
    let leq = (0..elements.len())
        .map(|i| (0..elements.len()).map(|j| elements[j].contains(&elements[i])).collect())
        .collect();
    Ok(SubmoduleLattice { elements, leq })
}

/// Exhaustive scan over all per-vertex subspace tuples, filtering for arrow
/// invariance. Exact but exponentially slower; retained as the oracle the
/// join-closure enumeration is tested against.
pub fn all_submodules_bruteforce(x: &Representation, caps: Caps) -> Result<Vec<Submodule>> {
    let p = x.modulus();
    let mut tuple_count: u128 = 1;
    let per_vertex: Vec<Vec<Subspace>> = x
        .dims()
        .iter()
        .map(|&d| {
            let subs = enumerate_subspaces(d, p);
            tuple_count = tuple_count.saturating_mul(subs.len() as u128);
            subs
        })
        .collect();
    if tuple_count > caps.enum_cap as u128 {
        return Err(Error::CapExceeded {
            what: "subspace tuple scan".to_string(),
            needed: tuple_count,
            cap: caps.enum_cap,
        });
    }
    let mut out = Vec::new();
    let mut indices = vec![0usize; per_vertex.len()];
    loop {
        let spaces: Vec<Subspace> =
            indices.iter().enumerate().map(|(v, &i)| per_vertex[v][i].clone()).collect();
        if let Ok(s) = Submodule::new(x.clone(), spaces) {
            out.push(s);
        }
        let mut v = per_vertex.len();
        loop {
            if v == 0 {
                let mut sorted = out;
                sorted.sort_by_key(|s: &Submodule| (s.length(), s.canonical_bytes()));
                return Ok(sorted);
            }
            v -= 1;
            indices[v] += 1;
            if indices[v] < per_vertex[v].len() {
                break;
            }
            indices[v] = 0;
        }
    }
}

/// The nonzero submodules whose carrier representation is indecomposable.
pub fn indecomposable_submodules(x: &Representation, caps: Caps) -> Result<Vec<Submodule>> {
    let lattice = all_submodules(x, caps)?;
    let mut out = Vec::new();
    for s in lattice.elements() {
        if s.is_zero() {
            continue;
        }
        if crate::quiver::is_indecomposable(&s.as_representation(), caps)? {
            out.push(s.clone());
        }
    }
    Ok(out)
}

/// Result of an embeds-in-a-power query; the bound that was used is recorded
/// for reproducibility, and `copies` is a sufficient number of copies when
/// the embedding exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub embeds: bool,
    pub n_max: usize,
    pub copies: Option<usize>,
}

/// Does a monomorphism X -> Y^n exist for some n <= n_max?
///
/// A map X -> Y^n is a tuple of elements of Hom(X, Y), and it is injective
/// exactly when the per-vertex kernels of its components intersect to zero.
/// The intersection over all of Hom(X, Y) equals the intersection over a
/// basis, so the query reduces to exact linear algebra; a greedy pass then
/// extracts a small witness tuple, which needs at most length(X) components
/// since every useful component strictly shrinks the kernel. The default
/// n_max = length(X) therefore decides embeddability exactly.
pub fn embeds_in_power(
    x: &Representation,
    y: &Representation,
    n_max: Option<usize>,
) -> Result<Embedding> {
    if !x.same_algebra(y) {
        return Err(Error::AlgebraMismatch);
    }
    let n_max = n_max.unwrap_or_else(|| x.length().max(1));
    let p = x.modulus();
    if x.is_zero() {
        return Ok(Embedding { embeds: true, n_max, copies: Some(0) });
    }
    let basis = hom_basis(x, y)?;
    let mut kernels: Vec<Subspace> =
        x.dims().iter().map(|&d| Subspace::full(d, p)).collect();
    let total = |ks: &[Subspace]| ks.iter().map(Subspace::dim).sum::<usize>();
    let mut copies = 0usize;
    while total(&kernels) > 0 && copies < n_max {
        // pick the basis map shrinking the joint kernel the most
        let mut best: Option<(usize, Vec<Subspace>, usize)> = None;
        for (i, f) in basis.iter().enumerate() {
            let next: Vec<Subspace> = kernels
                .iter()
                .enumerate()
                .map(|(v, k)| k.intersect(&f.component(v).kernel_basis()))
                .collect();
            let t = total(&next);
            if best.as_ref().is_none_or(|(_, _, bt)| t < *bt) {
                best = Some((i, next, t));
            }
        }
        match best {
            Some((_, next, t)) if t < total(&kernels) => {
                kernels = next;
                copies += 1;
            }
            _ => break, // kernel cannot shrink further: contained in every component kernel
        }
    }
    let embeds = total(&kernels) == 0;
    Ok(Embedding { embeds, n_max, copies: embeds.then_some(copies) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kronecker::{self, KroneckerFamily, Lambda};
    use std::sync::Arc;

    fn p2() -> Representation {
        kronecker::build(&KroneckerFamily::preprojective(2), 2).unwrap()
    }

    fn r1(lambda: Lambda) -> Representation {
        kronecker::build(&KroneckerFamily::regular(1, lambda), 2).unwrap()
    }

    #[test]
    fn cyclic_closure_examples() {
        let x = p2();
        let zero = cyclic_closure(&x, 0, &[0]).unwrap();
        assert!(zero.is_zero());
        // the generator at the one-dimensional vertex generates all of P_2
        let all = cyclic_closure(&x, 0, &[1]).unwrap();
        assert!(all.is_full());
        // the source generator of R_1(0) reaches the target
        let r = r1(Lambda::Finite(0));
        let s = cyclic_closure(&r, 0, &[1]).unwrap();
        assert!(s.is_full());
    }

    #[test]
    fn lattice_of_a_simple() {
        let alg = kronecker::kronecker_algebra(2).unwrap();
        let s = crate::quiver::Representation::simple(Arc::clone(&alg), 1);
        let lat = all_submodules(&s, Caps::default()).unwrap();
        assert_eq!(lat.len(), 2);
        assert!(lat.elements()[0].is_zero());
        assert!(lat.elements()[1].is_full());
    }

    #[test]
    fn lattice_of_r1_has_three_elements() {
        let lat = all_submodules(&r1(Lambda::Finite(0)), Caps::default()).unwrap();
        assert_eq!(lat.len(), 3);
        let lengths: Vec<usize> = lat.elements().iter().map(Submodule::length).collect();
        assert_eq!(lengths, vec![0, 1, 2]);
    }

    #[test]
    fn lattice_of_p2_has_six_elements() {
        let lat = all_submodules(&p2(), Caps::default()).unwrap();
        assert_eq!(lat.len(), 6);
        let lengths: Vec<usize> = lat.elements().iter().map(Submodule::length).collect();
        assert_eq!(lengths, vec![0, 1, 1, 1, 2, 3]);
    }

    #[test]
    fn join_closure_matches_bruteforce() {
        let caps = Caps::default();
        for x in [
            p2(),
            r1(Lambda::Finite(0)),
            r1(Lambda::Infinity),
            kronecker::build(&KroneckerFamily::preinjective(2), 2).unwrap(),
            kronecker::build(&KroneckerFamily::regular(2, Lambda::Finite(1)), 2).unwrap(),
        ] {
            let fast: Vec<Vec<u8>> = all_submodules(&x, caps)
                .unwrap()
                .elements()
                .iter()
                .map(Submodule::canonical_bytes)
                .collect();
            let slow: Vec<Vec<u8>> = all_submodules_bruteforce(&x, caps)
                .unwrap()
                .iter()
                .map(Submodule::canonical_bytes)
                .collect();
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn lattice_laws_hold() {
        let caps = Caps::default();
        let x = p2();
        let lat = all_submodules(&x, caps).unwrap();
        for a in lat.elements() {
            assert!(a.parent() == &x);
            let rep = a.as_representation();
            assert!(rep.length() <= x.length());
            for b in lat.elements() {
                let sum = a.sum(b).unwrap();
                let meet = a.intersect(b).unwrap();
                assert!(lat
                    .elements()
                    .iter()
                    .any(|s| s.canonical_bytes() == sum.canonical_bytes()));
                assert!(lat
                    .elements()
                    .iter()
                    .any(|s| s.canonical_bytes() == meet.canonical_bytes()));
            }
        }
        assert!(lat.elements()[0].is_zero());
        assert!(lat.elements()[lat.len() - 1].is_full());
    }

    #[test]
    fn indecomposable_submodules_of_p2() {
        let caps = Caps::default();
        let subs = indecomposable_submodules(&p2(), caps).unwrap();
        // three lines at the sink plus P_2 itself; the full plane is S_2 + S_2
        assert_eq!(subs.len(), 4);
        let lengths: Vec<usize> = subs.iter().map(Submodule::length).collect();
        assert_eq!(lengths, vec![1, 1, 1, 3]);
        let alg = kronecker::kronecker_algebra(2).unwrap();
        let simple = crate::quiver::Representation::simple(Arc::clone(&alg), 0);
        let subs = indecomposable_submodules(&simple, caps).unwrap();
        assert_eq!(subs.len(), 1);
        let s2 = crate::quiver::Representation::simple(Arc::clone(&alg), 1);
        let sq = s2.direct_sum(&s2).unwrap();
        let subs = indecomposable_submodules(&sq, caps).unwrap();
        assert_eq!(subs.len(), 3);
        for s in subs {
            assert_eq!(s.length(), 1);
        }
    }

    #[test]
    fn embeds_in_power_examples() {
        let alg = kronecker::kronecker_algebra(2).unwrap();
        let s1 = crate::quiver::Representation::simple(Arc::clone(&alg), 0);
        let s2 = crate::quiver::Representation::simple(Arc::clone(&alg), 1);
        let x = p2();
        assert!(embeds_in_power(&s2, &x, None).unwrap().embeds);
        assert!(!embeds_in_power(&s1, &s2, None).unwrap().embeds);
        assert!(!embeds_in_power(&r1(Lambda::Finite(0)), &r1(Lambda::Finite(1)), None)
            .unwrap()
            .embeds);
        // S_1 does not embed into any power of P_2
        assert!(!embeds_in_power(&s1, &x, None).unwrap().embeds);
    }

    // Independent oracle: X embeds into Y^n for some n <= length(X) iff
    // some actual submodule of Y^n is isomorphic to X.
    fn embeds_oracle(x: &Representation, y: &Representation, caps: Caps) -> bool {
        if x.is_zero() {
            return true;
        }
        let mut power = y.clone();
        for n in 1..=x.length() {
            if n > 1 {
                power = power.direct_sum(y).unwrap();
            }
            if power.length() < x.length() {
                continue;
            }
            for s in all_submodules(&power, caps).unwrap().elements() {
                if s.length() == x.length()
                    && crate::quiver::is_isomorphic(&s.as_representation(), x, caps).unwrap()
                {
                    return true;
                }
            }
        }
        false
    }

    #[test]
    fn embeds_in_power_matches_submodule_oracle() {
        let caps = Caps::default();
        let alg = kronecker::kronecker_algebra(2).unwrap();
        let s1 = crate::quiver::Representation::simple(Arc::clone(&alg), 0);
        let s2 = crate::quiver::Representation::simple(Arc::clone(&alg), 1);
        let members = vec![
            s1,
            s2,
            r1(Lambda::Finite(0)),
            r1(Lambda::Finite(1)),
            r1(Lambda::Infinity),
        ];
        for x in &members {
            for y in &members {
                assert_eq!(
                    embeds_in_power(x, y, None).unwrap().embeds,
                    embeds_oracle(x, y, caps),
                    "disagreement for dims {:?} into {:?}",
                    x.dims(),
                    y.dims()
                );
            }
        }
        // spot checks on length-3 members, including the non-obvious
        // embedding of the preprojective P_2 into a power of Q_2
        let p2 = p2();
        let q2 = kronecker::build(&KroneckerFamily::preinjective(2), 2).unwrap();
        for (x, y) in [(&p2, &q2), (&q2, &p2), (&members[0], &q2), (&members[2], &q2)] {
            assert_eq!(
                embeds_in_power(x, y, None).unwrap().embeds,
                embeds_oracle(x, y, caps)
            );
        }
        assert!(embeds_in_power(&p2, &q2, None).unwrap().embeds);
        assert!(!embeds_in_power(&q2, &p2, None).unwrap().embeds);
    }

    #[test]
    fn embeds_in_power_is_a_preorder_and_respects_inclusion() {
        let caps = Caps::default();
        let alg = kronecker::kronecker_algebra(2).unwrap();
        let mut corpus = vec![
            crate::quiver::Representation::simple(Arc::clone(&alg), 0),
            crate::quiver::Representation::simple(Arc::clone(&alg), 1),
            p2(),
            r1(Lambda::Finite(0)),
            r1(Lambda::Finite(1)),
            kronecker::build(&KroneckerFamily::preinjective(2), 2).unwrap(),
        ];
        let q2_plus_s2 = corpus[5].direct_sum(&corpus[1]).unwrap();
        corpus.push(q2_plus_s2);
        let rel: Vec<Vec<bool>> = corpus
            .iter()
            .map(|x| {
                corpus
                    .iter()
                    .map(|y| embeds_in_power(x, y, None).unwrap().embeds)
                    .collect()
            })
            .collect();
        for i in 0..corpus.len() {
            assert!(rel[i][i], "reflexive at {i}");
            for j in 0..corpus.len() {
                for k in 0..corpus.len() {
                    if rel[i][j] && rel[j][k] {
                        assert!(rel[i][k], "transitivity fails at {i},{j},{k}");
                    }
                }
            }
        }
        // actual submodules embed into their parent's powers
        for x in &corpus {
            for s in all_submodules(x, caps).unwrap().elements() {
                assert!(embeds_in_power(&s.as_representation(), x, None).unwrap().embeds);
            }
        }
    }
}
