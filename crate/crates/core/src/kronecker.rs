//! The Kronecker algebra (two parallel arrows) and its indecomposables:
//! preprojectives P_n, regulars R_n(lambda), preinjectives Q_n, together
//! with closed-form Gabriel-Roiter measures and the limit measures of the
//! infinite-dimensional modules, which exist here only as chain limits.
//!
//! Orientation is fixed as two arrows from vertex "1" to vertex "2", so P_1
//! is the simple at the sink and Q_1 the simple at the source.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grm;
use crate::linalg::MatrixFp;
use crate::measures::{chain_limit, ChainDirection, Measure};
use crate::quiver::{Algebra, Quiver, Representation};
use crate::Caps;

/// A point of the projective line over F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Lambda {
    Finite(u8),
    Infinity,
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lambda::Finite(l) => write!(f, "{l}"),
            Lambda::Infinity => write!(f, "inf"),
        }
    }
}

/// All points of P^1(F_p): the finite residues plus infinity.
pub fn projective_line(p: u8) -> Vec<Lambda> {
    let mut out: Vec<Lambda> = (0..p).map(Lambda::Finite).collect();
    out.push(Lambda::Infinity);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Preprojective,
    Regular,
    Preinjective,
}

impl FamilyKind {
    pub fn letter(&self) -> char {
        match self {
            FamilyKind::Preprojective => 'P',
            FamilyKind::Regular => 'R',
            FamilyKind::Preinjective => 'Q',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KroneckerFamily {
    pub kind: FamilyKind,
    pub n: usize,
    pub lambda: Option<Lambda>,
}

impl KroneckerFamily {
    pub fn preprojective(n: usize) -> Self {
        KroneckerFamily { kind: FamilyKind::Preprojective, n, lambda: None }
    }

    pub fn regular(n: usize, lambda: Lambda) -> Self {
        KroneckerFamily { kind: FamilyKind::Regular, n, lambda: Some(lambda) }
    }

    pub fn preinjective(n: usize) -> Self {
        KroneckerFamily { kind: FamilyKind::Preinjective, n, lambda: None }
    }

    pub fn label(&self) -> String {
        match self.lambda {
            Some(l) => format!("{}_{}({})", self.kind.letter(), self.n, l),
            None => format!("{}_{}", self.kind.letter(), self.n),
        }
    }
}

/// The path algebra of two parallel arrows a, b : 1 -> 2 over F_p.
pub fn kronecker_algebra(p: u64) -> Result<Arc<Algebra>> {
    let quiver = Quiver::new(
        vec!["1".to_string(), "2".to_string()],
        vec![
            ("a".to_string(), "1".to_string(), "2".to_string()),
            ("b".to_string(), "1".to_string(), "2".to_string()),
        ],
    )?;
    Algebra::path_algebra(quiver, p)
}

// Jordan block with eigenvalue lambda on the diagonal and ones on the
// superdiagonal.
fn jordan_block(n: usize, lambda: u8, p: u8) -> MatrixFp {
    let mut m = MatrixFp::zeros(n, n, p);
    for i in 0..n {
        m.set(i, i, lambda);
        if i + 1 < n {
            m.set(i, i + 1, 1);
        }
    }
    m
}

/// Builds the family member as a representation:
/// P_n has dims (n-1, n) with the two shift embeddings, R_n(lambda) has
/// dims (n, n) with one map the identity and the other a Jordan block
/// (lambda = infinity swaps the roles), Q_n has dims (n, n-1) with the two
/// coordinate projections.
pub fn build(fam: &KroneckerFamily, p: u64) -> Result<Representation> {
    assert!(fam.n >= 1, "family index must be at least 1");
    let algebra = kronecker_algebra(p)?;
    let p8 = algebra.modulus();
    let n = fam.n;
    let (dims, a, b) = match fam.kind {
        FamilyKind::Preprojective => {
            let mut a = MatrixFp::zeros(n, n - 1, p8);
            let mut b = MatrixFp::zeros(n, n - 1, p8);
            for j in 0..n - 1 {
                a.set(j, j, 1);
                b.set(j + 1, j, 1);
            }
            (vec![n - 1, n], a, b)
        }
        FamilyKind::Regular => {
            let lambda = fam.lambda.expect("regular family carries a point of P^1");
            let (a, b) = match lambda {
                Lambda::Finite(l) => {
                    if l >= p8 {
                        return Err(Error::EntryOutOfRange { entry: l as u64, modulus: p });
                    }
                    (MatrixFp::identity(n, p8), jordan_block(n, l, p8))
                }
                Lambda::Infinity => (jordan_block(n, 0, p8), MatrixFp::identity(n, p8)),
            };
            (vec![n, n], a, b)
        }
        FamilyKind::Preinjective => {
            let mut a = MatrixFp::zeros(n - 1, n, p8);
            let mut b = MatrixFp::zeros(n - 1, n, p8);
            for i in 0..n - 1 {
                a.set(i, i, 1);
                b.set(i, i + 1, 1);
            }
            (vec![n, n - 1], a, b)
        }
    };
    Representation::new(algebra, dims, vec![a, b])
}

/// The classical closed forms:
/// mu(P_n) = {1,3,...,2n-1}, mu(R_n) = {1,2,4,...,2n},
/// mu(Q_n) = {1,2,4,...,2n-2,2n-1}.
pub fn closed_form_measure(kind: FamilyKind, n: usize) -> Measure {
    assert!(n >= 1);
    let elements: BTreeSet<u64> = match kind {
        FamilyKind::Preprojective => (1..=n as u64).map(|k| 2 * k - 1).collect(),
        FamilyKind::Regular => {
            std::iter::once(1).chain((1..=n as u64).map(|k| 2 * k)).collect()
        }
        FamilyKind::Preinjective => std::iter::once(1)
            .chain((1..n as u64).map(|k| 2 * k))
            .chain(std::iter::once(2 * n as u64 - 1))
            .collect(),
    };
    Measure::finite(elements.into_iter().collect()).expect("closed forms are canonical")
}

/// Measures of the modules that are not finitely presented. Each value is
/// computed twice, as a symbolic closed form and as a chain limit over the
/// closed-form finite families; disagreement is a hard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitMeasures {
    pub prufer: Measure,
    pub adic: Measure,
    pub generic: Measure,
}

pub fn limit_measures(probe_bound: usize) -> Result<LimitMeasures> {
    let adic_closed = Measure::new(vec![], Some((1, 2)))?;
    let prufer_closed = Measure::new(vec![1], Some((2, 2)))?;
    let adic_limit = chain_limit(
        |n| closed_form_measure(FamilyKind::Preprojective, n as usize),
        ChainDirection::Sup,
        probe_bound,
    )?;
    let prufer_sup = chain_limit(
        |n| closed_form_measure(FamilyKind::Regular, n as usize),
        ChainDirection::Sup,
        probe_bound,
    )?;
    // the preinjective chain decreases from Q_2 on; mu(Q_1) = {1} lies
    // below the limit and would break monotonicity
    let prufer_inf = chain_limit(
        |n| closed_form_measure(FamilyKind::Preinjective, n as usize + 1),
        ChainDirection::Inf,
        probe_bound,
    )?;
    if adic_limit != adic_closed {
        return Err(Error::CrossCheckFailed(format!(
            "adic limit: chain gave {adic_limit}, closed form {adic_closed}"
        )));
    }
    if prufer_sup != prufer_closed || prufer_inf != prufer_closed {
        return Err(Error::CrossCheckFailed(format!(
            "prufer limit: chains gave {prufer_sup} and {prufer_inf}, closed form {prufer_closed}"
        )));
    }
    Ok(LimitMeasures {
        prufer: prufer_closed,
        adic: adic_closed.clone(),
        generic: adic_closed,
    })
}

#[derive(Debug, Clone)]
pub struct FamilyCheck {
    pub label: String,
    pub computed: Measure,
    pub expected: Measure,
    pub matches: bool,
}

/// Report of the ground-truth verification: computed measures versus closed
/// forms, lambda-independence of the regulars, and the displayed order chain
/// Q_1 = P_1 < P_2 < ... < R_1 < ... < Q_3 < Q_2 on the finite slice.
#[derive(Debug, Clone)]
pub struct KroneckerReport {
    pub max_n: usize,
    pub p: u8,
    pub checks: Vec<FamilyCheck>,
    pub lambda_independent: bool,
    pub chain_ok: bool,
    pub chain: Vec<(String, Measure)>,
    pub mismatches: Vec<String>,
}

impl KroneckerReport {
    pub fn pass(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn verify(max_n: usize, p: u64, caps: Caps) -> Result<KroneckerReport> {
    assert!(max_n >= 1);
    let p8 = crate::linalg::validate_modulus(p)?;
    let mut checks = Vec::new();
    let mut mismatches = Vec::new();
    let computed = |fam: &KroneckerFamily| -> Result<Measure> {
        let rep = build(fam, p)?;
        Ok(grm::gr_measure(&rep, caps)?.measure)
    };
    let mut regulars_by_n: Vec<Vec<Measure>> = vec![Vec::new(); max_n + 1];
    let mut measures: Vec<(String, Measure)> = Vec::new();
    for n in 1..=max_n {
        for kind in [FamilyKind::Preprojective, FamilyKind::Preinjective] {
            let fam = match kind {
                FamilyKind::Preprojective => KroneckerFamily::preprojective(n),
                _ => KroneckerFamily::preinjective(n),
            };
            let got = computed(&fam)?;
            let expected = closed_form_measure(kind, n);
            let matches = got == expected;
            if !matches {
                mismatches.push(format!("{}: computed {got}, expected {expected}", fam.label()));
            }
            measures.push((fam.label(), got.clone()));
            checks.push(FamilyCheck { label: fam.label(), computed: got, expected, matches });
        }
        for lambda in projective_line(p8) {
            let fam = KroneckerFamily::regular(n, lambda);
            let got = computed(&fam)?;
            let expected = closed_form_measure(FamilyKind::Regular, n);
            let matches = got == expected;
            if !matches {
                mismatches.push(format!("{}: computed {got}, expected {expected}", fam.label()));
            }
            regulars_by_n[n].push(got.clone());
            checks.push(FamilyCheck { label: fam.label(), computed: got, expected, matches });
        }
    }
    let lambda_independent = (1..=max_n).all(|n| {
        regulars_by_n[n].windows(2).all(|w| w[0] == w[1])
    });
    if !lambda_independent {
        mismatches.push("regular measures depend on lambda".to_string());
    }
    // the displayed chain on this slice:
    // Q_1 = P_1 < P_2 < ... < P_N < R_1 < ... < R_N < Q_N < ... < Q_2
    let lookup = |label: &str, measures: &[(String, Measure)]| -> Measure {
        measures.iter().find(|(l, _)| l == label).expect("computed above").1.clone()
    };
    let mut chain: Vec<(String, Measure)> = Vec::new();
    chain.push(("Q_1".to_string(), lookup("Q_1", &measures)));
    for n in 1..=max_n {
        chain.push((format!("P_{n}"), lookup(&format!("P_{n}"), &measures)));
    }
    for n in 1..=max_n {
        chain.push((format!("R_{n}"), regulars_by_n[n][0].clone()));
    }
    for n in (2..=max_n).rev() {
        chain.push((format!("Q_{n}"), lookup(&format!("Q_{n}"), &measures)));
    }
    let mut chain_ok = chain[0].1 == chain[1].1;
    for w in chain[1..].windows(2) {
        chain_ok &= w[0].1 < w[1].1;
    }
    if !chain_ok {
        mismatches.push("computed measures violate the displayed order chain".to_string());
    }
    Ok(KroneckerReport { max_n, p: p8, checks, lambda_independent, chain_ok, chain, mismatches })
}
