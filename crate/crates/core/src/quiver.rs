//! Algebras presented as quivers with admissible relations over F_p, and
//! finite-length modules as representations.
//!
//! The representation of a quiver assigns F_p^d to each vertex and a matrix
//! to each arrow; relations are linear combinations of parallel paths of
//! length at least two that must evaluate to zero. Simples are
//! one-dimensional at a vertex, so composition length equals total dimension.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{enumerate_vectors, validate_modulus, MatrixFp, Subspace};
use crate::Caps;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Arrows are given as (name, source vertex name, target vertex name).
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Self> {
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        let mut built = Vec::with_capacity(arrows.len());
        for (name, src, tgt) in arrows {
            if built.iter().any(|a: &Arrow| a.name == name) {
                return Err(Error::DuplicateArrow(name));
            }
            let src = Self::index_of(&vertices, &src)?;
            let tgt = Self::index_of(&vertices, &tgt)?;
            built.push(Arrow { name, src, tgt });
        }
        Ok(Quiver { vertices, arrows: built })
    }

    fn index_of(vertices: &[String], name: &str) -> Result<usize> {
        vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        Self::index_of(&self.vertices, name)
    }

    pub fn arrow_index(&self, name: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }
}

/// One term of a relation: a coefficient and a path of arrow indices,
/// traversed left to right (the path [a, b] acts as X(b) . X(a)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationTerm {
    pub coeff: u8,
    pub path: Vec<usize>,
}

/// A linear combination of parallel paths of length >= 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<RelationTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    quiver: Quiver,
    relations: Vec<Relation>,
    p: u8,
}

impl Algebra {
    /// Relations are given per term as (coefficient, path of arrow names).
    pub fn new(
        quiver: Quiver,
        relations: Vec<Vec<(u64, Vec<String>)>>,
        p: u64,
    ) -> Result<Arc<Self>> {
        let p = validate_modulus(p)?;
        let mut built = Vec::with_capacity(relations.len());
        for relation in relations {
            let mut terms = Vec::with_capacity(relation.len());
            for (term_idx, (coeff, path)) in relation.into_iter().enumerate() {
                if coeff >= p as u64 {
                    return Err(Error::EntryOutOfRange { entry: coeff, modulus: p as u64 });
                }
                if path.len() < 2 {
                    return Err(Error::RelationTooShort(path.len()));
                }
                let path: Vec<usize> = path
                    .iter()
                    .map(|name| quiver.arrow_index(name))
                    .collect::<Result<_>>()?;
                for w in path.windows(2) {
                    if quiver.arrows[w[0]].tgt != quiver.arrows[w[1]].src {
                        return Err(Error::RelationNotComposable {
                            term: term_idx,
                            step: 1 + path.windows(2).position(|x| x == w).unwrap(),
                        });
                    }
                }
                terms.push(RelationTerm { coeff: coeff as u8, path });
            }
            // all terms parallel
            if let Some(first) = terms.first() {
                let src = quiver.arrows[first.path[0]].src;
                let tgt = quiver.arrows[*first.path.last().unwrap()].tgt;
                for (i, t) in terms.iter().enumerate().skip(1) {
                    let s = quiver.arrows[t.path[0]].src;
                    let g = quiver.arrows[*t.path.last().unwrap()].tgt;
                    if (s, g) != (src, tgt) {
                        return Err(Error::RelationNotParallel(i));
                    }
                }
            }
            built.push(Relation { terms });
        }
        Ok(Arc::new(Algebra { quiver, relations: built, p }))
    }

    pub fn path_algebra(quiver: Quiver, p: u64) -> Result<Arc<Self>> {
        Algebra::new(quiver, Vec::new(), p)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn modulus(&self) -> u8 {
        self.p
    }
}

/// A finite-length module: a dimension per vertex and a matrix per arrow of
/// shape dims(target) x dims(source). Construction validates shapes and the
/// vanishing of every relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    algebra: Arc<Algebra>,
    dims: Vec<usize>,
    maps: Vec<MatrixFp>,
}

/// Checks shape consistency and relation vanishing, reporting the first
/// violated constraint.
pub fn validate(algebra: &Algebra, dims: &[usize], maps: &[MatrixFp]) -> Result<()> {
    let quiver = algebra.quiver();
    if dims.len() != quiver.vertex_count() || maps.len() != quiver.arrow_count() {
        return Err(Error::Parse {
            context: "representation".to_string(),
            message: format!(
                "expected {} vertex dimensions and {} arrow maps, got {} and {}",
                quiver.vertex_count(),
                quiver.arrow_count(),
                dims.len(),
                maps.len()
            ),
        });
    }
    for (idx, arrow) in quiver.arrows().iter().enumerate() {
        let m = &maps[idx];
        let (rows, cols) = (dims[arrow.tgt], dims[arrow.src]);
        if m.rows() != rows || m.cols() != cols {
            return Err(Error::ShapeViolation {
                arrow: arrow.name.clone(),
                rows,
                cols,
                got_rows: m.rows(),
                got_cols: m.cols(),
            });
        }
        if m.modulus() != algebra.modulus() {
            return Err(Error::UnsupportedModulus(m.modulus() as u64));
        }
    }
    for (ridx, relation) in algebra.relations().iter().enumerate() {
        if !relation_evaluates_to_zero(algebra, relation, dims, maps) {
            return Err(Error::RelationViolation(ridx));
        }
    }
    Ok(())
}

fn relation_evaluates_to_zero(
    algebra: &Algebra,
    relation: &Relation,
    dims: &[usize],
    maps: &[MatrixFp],
) -> bool {
    let Some(first) = relation.terms.first() else { return true };
    let quiver = algebra.quiver();
    let src = quiver.arrows()[first.path[0]].src;
    let tgt = quiver.arrows()[*first.path.last().unwrap()].tgt;
    let mut acc = MatrixFp::zeros(dims[tgt], dims[src], algebra.modulus());
    for term in &relation.terms {
        let mut prod = maps[term.path[0]].clone();
        for &a in &term.path[1..] {
            prod = maps[a].mul(&prod);
        }
        acc = acc.add(&prod.scale(term.coeff));
    }
    acc.is_zero()
}

impl Representation {
    pub fn new(algebra: Arc<Algebra>, dims: Vec<usize>, maps: Vec<MatrixFp>) -> Result<Self> {
        validate(&algebra, &dims, &maps)?;
        Ok(Representation { algebra, dims, maps })
    }

    pub fn zero(algebra: Arc<Algebra>) -> Self {
        let nv = algebra.quiver().vertex_count();
        let maps = algebra
            .quiver()
            .arrows()
            .iter()
            .map(|_| MatrixFp::zeros(0, 0, algebra.modulus()))
            .collect();
        Representation { algebra, dims: vec![0; nv], maps }
    }

    /// The simple module concentrated at one vertex.
    pub fn simple(algebra: Arc<Algebra>, vertex: usize) -> Self {
        let nv = algebra.quiver().vertex_count();
        assert!(vertex < nv, "vertex index out of range");
        let mut dims = vec![0; nv];
        dims[vertex] = 1;
        let maps = algebra
            .quiver()
            .arrows()
            .iter()
            .map(|a| MatrixFp::zeros(dims[a.tgt], dims[a.src], algebra.modulus()))
            .collect();
        Representation { algebra, dims, maps }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn modulus(&self) -> u8 {
        self.algebra.modulus()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn map(&self, arrow: usize) -> &MatrixFp {
        &self.maps[arrow]
    }

    pub fn maps(&self) -> &[MatrixFp] {
        &self.maps
    }

    /// Composition length: the total dimension.
    pub fn length(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.length() == 0
    }

    pub fn same_algebra(&self, other: &Representation) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        if !self.same_algebra(other) {
            return Err(Error::AlgebraMismatch);
        }
        let dims: Vec<usize> =
            self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self
            .algebra
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(idx, arrow)| {
                let a = &self.maps[idx];
                let b = &other.maps[idx];
                let mut m = MatrixFp::zeros(dims[arrow.tgt], dims[arrow.src], self.modulus());
                for i in 0..a.rows() {
                    for j in 0..a.cols() {
                        m.set(i, j, a.get(i, j));
                    }
                }
                for i in 0..b.rows() {
                    for j in 0..b.cols() {
                        m.set(a.rows() + i, a.cols() + j, b.get(i, j));
                    }
                }
                m
            })
            .collect();
        Ok(Representation { algebra: Arc::clone(&self.algebra), dims, maps })
    }

    /// Deterministic encoding used for ordering and deduplication.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = vec![self.modulus()];
        out.extend(self.dims.iter().map(|&d| d as u8));
        for m in &self.maps {
            out.extend_from_slice(m.entries());
        }
        out
    }
}

/// A homomorphism between representations: one matrix per vertex, of shape
/// dims_Y(v) x dims_X(v), commuting with every arrow map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomMap {
    components: Vec<MatrixFp>,
}

impl HomMap {
    pub fn components(&self) -> &[MatrixFp] {
        &self.components
    }

    pub fn component(&self, vertex: usize) -> &MatrixFp {
        &self.components[vertex]
    }

    pub fn identity(x: &Representation) -> HomMap {
        HomMap {
            components: x.dims.iter().map(|&d| MatrixFp::identity(d, x.modulus())).collect(),
        }
    }

    pub fn zero(x: &Representation, y: &Representation) -> HomMap {
        HomMap {
            components: x
                .dims
                .iter()
                .zip(&y.dims)
                .map(|(&dx, &dy)| MatrixFp::zeros(dy, dx, x.modulus()))
                .collect(),
        }
    }

    pub fn linear_combination(basis: &[HomMap], coeffs: &[u8]) -> HomMap {
        assert_eq!(basis.len(), coeffs.len());
        assert!(!basis.is_empty());
        let mut acc: Vec<MatrixFp> = basis[0]
            .components
            .iter()
            .map(|m| MatrixFp::zeros(m.rows(), m.cols(), m.modulus()))
            .collect();
        for (b, &c) in basis.iter().zip(coeffs) {
            if c == 0 {
                continue;
            }
            for (a, m) in acc.iter_mut().zip(&b.components) {
                *a = a.add(&m.scale(c));
            }
        }
        HomMap { components: acc }
    }

    /// Composition g . f for f: X -> Y (self = g: Y -> Z).
    pub fn compose(&self, f: &HomMap) -> HomMap {
        HomMap {
            components: self
                .components
                .iter()
                .zip(&f.components)
                .map(|(g, f)| g.mul(f))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(MatrixFp::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.components.iter().all(MatrixFp::is_identity)
    }

    pub fn is_injective(&self) -> bool {
        self.components.iter().all(|m| m.rank() == m.cols())
    }

    pub fn is_invertible(&self) -> bool {
        self.components.iter().all(MatrixFp::is_invertible)
    }

    pub fn total_rank(&self) -> usize {
        self.components.iter().map(MatrixFp::rank).sum()
    }
}

/// Basis of Hom(X, Y): the solution space of f_t(a) X(a) = Y(a) f_s(a) over
/// all arrows a, one unknown per entry of the vertex components.
pub fn hom_basis(x: &Representation, y: &Representation) -> Result<Vec<HomMap>> {
    if !x.same_algebra(y) {
        return Err(Error::AlgebraMismatch);
    }
    let algebra = x.algebra();
    let p = x.modulus();
    let nv = algebra.quiver().vertex_count();
    let mut offsets = Vec::with_capacity(nv);
    let mut total = 0usize;
    for v in 0..nv {
        offsets.push(total);
        total += y.dims[v] * x.dims[v];
    }
    // one constraint row per arrow and per entry of the commuting square
    let mut rows: Vec<u8> = Vec::new();
    let mut n_rows = 0usize;
    for (aidx, arrow) in algebra.quiver().arrows().iter().enumerate() {
        let (s, t) = (arrow.src, arrow.tgt);
        let xa = &x.maps[aidx];
        let ya = &y.maps[aidx];
        for i in 0..y.dims[t] {
            for j in 0..x.dims[s] {
                let mut row = vec![0u8; total];
                for k in 0..x.dims[t] {
                    let idx = offsets[t] + i * x.dims[t] + k;
                    row[idx] = (row[idx] + xa.get(k, j)) % p;
                }
                for m in 0..y.dims[s] {
                    let idx = offsets[s] + m * x.dims[s] + j;
                    let neg = if ya.get(i, m) == 0 { 0 } else { p - ya.get(i, m) };
                    row[idx] = (row[idx] + neg) % p;
                }
                rows.extend_from_slice(&row);
                n_rows += 1;
            }
        }
    }
    let constraints = MatrixFp::from_reduced(n_rows, total, rows, p);
    let kernel = constraints.kernel_basis();
    let basis = kernel
        .basis_rows()
        .map(|sol| {
            let components = (0..nv)
                .map(|v| {
                    let entries =
                        sol[offsets[v]..offsets[v] + y.dims[v] * x.dims[v]].to_vec();
                    MatrixFp::from_reduced(y.dims[v], x.dims[v], entries, p)
                })
                .collect();
            HomMap { components }
        })
        .collect();
    Ok(basis)
}

/// Restricts a representation to an arrow-invariant tuple of subspaces,
/// expressing each arrow map in the echelon bases of the subspaces.
pub fn restrict_to_subspaces(x: &Representation, spaces: &[Subspace]) -> Result<Representation> {
    assert_eq!(spaces.len(), x.dims.len());
    let algebra = x.algebra();
    let p = x.modulus();
    let dims: Vec<usize> = spaces.iter().map(Subspace::dim).collect();
    let mut maps = Vec::with_capacity(x.maps.len());
    for (aidx, arrow) in algebra.quiver().arrows().iter().enumerate() {
        let (s, t) = (arrow.src, arrow.tgt);
        let mut m = MatrixFp::zeros(dims[t], dims[s], p);
        for (j, basis_vec) in spaces[s].basis_rows().enumerate() {
            let image = x.maps[aidx].mul_vec(basis_vec);
            let coords = spaces[t]
                .coords(&image)
                .ok_or_else(|| Error::NotArrowInvariant(arrow.name.clone()))?;
            for (i, &c) in coords.iter().enumerate() {
                m.set(i, j, c);
            }
        }
        maps.push(m);
    }
    Representation::new(Arc::clone(algebra), dims, maps)
}

// Iterates an endomorphism by squaring until the total rank stabilizes; at
// the fixpoint X = ker + im is a direct decomposition (Fitting).
fn fitting_split(
    x: &Representation,
    f: &HomMap,
) -> Result<Option<(Representation, Representation)>> {
    let total = x.length();
    let mut g = f.clone();
    let mut rank = g.total_rank();
    loop {
        let g2 = g.compose(&g);
        let rank2 = g2.total_rank();
        if rank2 == rank {
            break;
        }
        g = g2;
        rank = rank2;
    }
    if rank == 0 || rank == total {
        return Ok(None);
    }
    let image: Vec<Subspace> = g.components.iter().map(Subspace::column_space).collect();
    let kernel: Vec<Subspace> = g.components.iter().map(MatrixFp::kernel_basis).collect();
    let im_rep = restrict_to_subspaces(x, &image)?;
    let ker_rep = restrict_to_subspaces(x, &kernel)?;
    Ok(Some((im_rep, ker_rep)))
}

/// Finds a nontrivial direct decomposition X = A + B, or None when X is
/// indecomposable. Strategy: Fitting pre-pass over the basis endomorphisms,
/// then exhaustive idempotent search over the endomorphism space, then a
/// hard CapExceeded error; never a probabilistic answer.
pub fn find_splitting(
    x: &Representation,
    caps: Caps,
) -> Result<Option<(Representation, Representation)>> {
    if x.is_zero() {
        return Err(Error::ZeroRepresentation);
    }
    let basis = hom_basis(x, x)?;
    for f in &basis {
        if let Some(split) = fitting_split(x, f)? {
            return Ok(Some(split));
        }
    }
    let dim = basis.len();
    for coeffs in enumerate_vectors(dim, x.modulus(), caps.hom_cap)
        .map_err(|e| cap_context(e, "endomorphism idempotent search"))?
    {
        if coeffs.iter().all(|&c| c == 0) {
            continue;
        }
        let f = HomMap::linear_combination(&basis, &coeffs);
        if f.is_identity() {
            continue;
        }
        if f.compose(&f) == f {
            let image: Vec<Subspace> =
                f.components.iter().map(Subspace::column_space).collect();
            let kernel: Vec<Subspace> =
                f.components.iter().map(MatrixFp::kernel_basis).collect();
            return Ok(Some((
                restrict_to_subspaces(x, &image)?,
                restrict_to_subspaces(x, &kernel)?,
            )));
        }
    }
    Ok(None)
}

fn cap_context(e: Error, what: &str) -> Error {
    match e {
        Error::CapExceeded { needed, cap, .. } => {
            Error::CapExceeded { what: what.to_string(), needed, cap }
        }
        other => other,
    }
}

/// True iff the endomorphism algebra of a nonzero representation contains no
/// idempotent besides zero and the identity.
pub fn is_indecomposable(x: &Representation, caps: Caps) -> Result<bool> {
    Ok(find_splitting(x, caps)?.is_none())
}

/// Full decomposition into indecomposable summands by repeated splitting.
/// The zero representation decomposes into no summands.
pub fn decompose(x: &Representation, caps: Caps) -> Result<Vec<Representation>> {
    if x.is_zero() {
        return Ok(Vec::new());
    }
    match find_splitting(x, caps)? {
        None => Ok(vec![x.clone()]),
        Some((a, b)) => {
            let mut out = decompose(&a, caps)?;
            out.extend(decompose(&b, caps)?);
            Ok(out)
        }
    }
}

/// True iff equal dimension vectors and some element of the hom space is
/// invertible at every vertex; the search enumerates the hom space.
pub fn is_isomorphic(x: &Representation, y: &Representation, caps: Caps) -> Result<bool> {
    if !x.same_algebra(y) {
        return Err(Error::AlgebraMismatch);
    }
    if x.dims != y.dims {
        return Ok(false);
    }
    if x.is_zero() {
        return Ok(true);
    }
    let basis = hom_basis(x, y)?;
    if basis.is_empty() {
        return Ok(false);
    }
    for coeffs in enumerate_vectors(basis.len(), x.modulus(), caps.hom_cap)
        .map_err(|e| cap_context(e, "isomorphism search"))?
    {
        if coeffs.iter().all(|&c| c == 0) {
            continue;
        }
        let f = HomMap::linear_combination(&basis, &coeffs);
        if f.is_invertible() {
            return Ok(true);
        }
    }
    Ok(false)
}
