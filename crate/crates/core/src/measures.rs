//! The complete totally ordered set 2^N under the lexicographic order
//! `I <= J iff inf(J \ I) <= inf(I \ J)` (inf of the empty set counting as
//! +infinity), restricted to the subsets that actually occur as measure
//! values: finite
//! sets, and sets with a finite prefix followed by a single arithmetic tail.
//! Equivalently, reading memberships as a binary string (most significant
//! digit first), I <= J iff the string of I is lexicographically below the
//! string of J. The empty set is the bottom element; no top element is
//! materialized.
//!
//! Values are kept canonical at all times: arithmetic suffixes of the prefix
//! are absorbed into the tail, so equal subsets of N have identical
//! representations and structural equality decides set equality.

use std::cmp::Ordering;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Infinite arithmetic continuation: start, start+step, start+2*step, ...
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Tail {
    pub start: u64,
    pub step: u64,
}

/// An element of 2^N in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Measure {
    prefix: Vec<u64>,
    tail: Option<Tail>,
}

impl Measure {
    /// The bottom element: the empty subset, the measure of the zero module.
    pub fn empty() -> Self {
        Measure { prefix: Vec::new(), tail: None }
    }

    /// Canonicalizes a described subset of N.
    ///
    /// Rejects non-positive entries, a non-increasing prefix, a zero step,
    /// and a tail that does not start above the prefix. The returned value
    /// is the unique representation with the smallest possible tail start.
    pub fn new(prefix: Vec<u64>, tail: Option<(u64, u64)>) -> Result<Self> {
        if prefix.contains(&0) {
            return Err(Error::NonPositiveEntry);
        }
        for i in 1..prefix.len() {
            if prefix[i] <= prefix[i - 1] {
                return Err(Error::PrefixNotIncreasing(i));
            }
        }
        let tail = match tail {
            None => None,
            Some((start, step)) => {
                if start == 0 {
                    return Err(Error::NonPositiveEntry);
                }
                if step < 1 {
                    return Err(Error::ZeroStep);
                }
                if let Some(&max) = prefix.last() {
                    if start <= max {
                        return Err(Error::TailBelowPrefix { start, prefix_max: max });
                    }
                }
                Some(Tail { start, step })
            }
        };
        let mut m = Measure { prefix, tail };
        m.absorb();
        Ok(m)
    }

    /// Convenience constructor for a finite set given in increasing order.
    pub fn finite(elements: Vec<u64>) -> Result<Self> {
        Measure::new(elements, None)
    }

    // Pulls prefix entries that continue the tail's progression into the tail.
    fn absorb(&mut self) {
        if let Some(tail) = &mut self.tail {
            while let Some(&last) = self.prefix.last() {
                if tail.start > tail.step && tail.start - tail.step == last {
                    tail.start = last;
                    self.prefix.pop();
                } else {
                    break;
                }
            }
        }
    }

    pub fn prefix(&self) -> &[u64] {
        &self.prefix
    }

    pub fn tail(&self) -> Option<Tail> {
        self.tail
    }

    pub fn is_empty(&self) -> bool {
        self.prefix.is_empty() && self.tail.is_none()
    }

    pub fn is_finite(&self) -> bool {
        self.tail.is_none()
    }

    /// Membership test for the denoted subset of N.
    pub fn contains(&self, n: u64) -> bool {
        if self.prefix.binary_search(&n).is_ok() {
            return true;
        }
        match self.tail {
            Some(Tail { start, step }) => n >= start && (n - start).is_multiple_of(step),
            None => false,
        }
    }

    /// Largest element of a finite measure.
    pub fn max_element(&self) -> Option<u64> {
        match self.tail {
            Some(_) => None,
            None => self.prefix.last().copied(),
        }
    }

    /// Extends a finite measure by one element above its maximum. This is the
    /// step the chain dynamic program takes when a chain grows by one module.
    pub fn appended(&self, m: u64) -> Result<Self> {
        if self.tail.is_some() {
            return Err(Error::Parse {
                context: "measure append".to_string(),
                message: "cannot append an element to an infinite measure".to_string(),
            });
        }
        let mut prefix = self.prefix.clone();
        prefix.push(m);
        Measure::new(prefix, None)
    }

    /// Elements of a finite measure, in increasing order.
    pub fn elements(&self) -> Option<&[u64]> {
        if self.is_finite() { Some(&self.prefix) } else { None }
    }

    // Both sets are determined by their memberships up to this bound: beyond
    // max(prefix maxima, tail starts), each side is periodic with its step,
    // so one extra lcm of the steps certifies equality.
    fn scan_bound(&self, other: &Measure) -> u64 {
        let hi = |m: &Measure| {
            m.prefix
                .last()
                .copied()
                .unwrap_or(0)
                .max(m.tail.map(|t| t.start).unwrap_or(0))
        };
        let period = |m: &Measure| m.tail.map(|t| t.step).unwrap_or(1);
        hi(self).max(hi(other)) + lcm(period(self), period(other))
    }

    /// Decidable subset test.
    pub fn is_subset_of(&self, other: &Measure) -> bool {
        let bound = self.scan_bound(other);
        (1..=bound).all(|n| !self.contains(n) || other.contains(n))
    }
}

impl Ord for Measure {
    /// I <= J iff inf(J \ I) <= inf(I \ J). The first element of the
    /// symmetric difference decides; no difference up to the scan bound
    /// certifies equality.
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        let bound = self.scan_bound(other);
        for n in 1..=bound {
            match (self.contains(n), other.contains(n)) {
                (true, false) => return Ordering::Greater,
                (false, true) => return Ordering::Less,
                _ => {}
            }
        }
        // canonical forms are unique, so no difference means equality
        debug_assert_eq!(self, other);
        Ordering::Equal
    }
}

impl PartialOrd for Measure {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.prefix.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        if let Some(Tail { start, step }) = self.tail {
            if !self.prefix.is_empty() {
                write!(f, ",")?;
            }
            write!(f, "{start},{},{},...", start + step, start + 2 * step)?;
        }
        write!(f, "}}")
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Lex-maximum of a finite family. The empty family returns the bottom
/// element, the empty measure.
pub fn sup_finite<I>(family: I) -> Measure
where
    I: IntoIterator<Item = Measure>,
{
    family.into_iter().fold(Measure::empty(), |acc, m| if m > acc { m } else { acc })
}

/// Lex-minimum of a finite family; errors on the empty family since no top
/// element is represented.
pub fn inf_finite<I>(family: I) -> Result<Measure>
where
    I: IntoIterator<Item = Measure>,
{
    let mut iter = family.into_iter();
    let first = iter.next().ok_or(Error::EmptyInfimum)?;
    Ok(iter.fold(first, |acc, m| if m < acc { m } else { acc }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainDirection {
    Sup,
    Inf,
}

/// Stabilization window: a membership digit counts as settled once it is
/// unchanged over this many consecutive generations.
pub const DEFAULT_STABLE_WINDOW: usize = 4;

/// Limit of a monotone chain of measures, built digit by digit.
///
/// For a chain that is monotone in the lexicographic order, every length-k
/// membership prefix eventually stabilizes. Digits up to `probe_bound` are
/// declared stable once unchanged over the window; an arithmetic tail is then
/// detected in the stabilized digits. This is a heuristic: the certificate is
/// agreement with closed forms, checked elsewhere. Chains that become
/// constant are returned exactly. Monotonicity of the generator is verified
/// and violations are reported as errors, as is failure to find a tail.
pub fn chain_limit<F>(generator: F, direction: ChainDirection, probe_bound: usize) -> Result<Measure>
where
    F: FnMut(u64) -> Measure,
{
    chain_limit_with(generator, direction, probe_bound, DEFAULT_STABLE_WINDOW)
}

pub fn chain_limit_with<F>(
    mut generator: F,
    direction: ChainDirection,
    probe_bound: usize,
    window: usize,
) -> Result<Measure>
where
    F: FnMut(u64) -> Measure,
{
    assert!(probe_bound >= 1 && window >= 2);
    let max_generations = (probe_bound + window) as u64;
    let mut recent: Vec<(Measure, Vec<bool>)> = Vec::new();
    let mut stable_len = 0usize;
    for g in 1..=max_generations {
        let m = generator(g);
        if let Some((prev, _)) = recent.last() {
            let ok = match direction {
                ChainDirection::Sup => m >= *prev,
                ChainDirection::Inf => m <= *prev,
            };
            if !ok {
                return Err(Error::ChainNotMonotone(g));
            }
        }
        let bits: Vec<bool> = (1..=probe_bound as u64).map(|n| m.contains(n)).collect();
        recent.push((m, bits));
        if recent.len() > window {
            recent.remove(0);
        }
        if recent.len() == window {
            // constant over the window: the chain has converged exactly
            if recent.iter().all(|(m, _)| *m == recent[0].0) {
                return Ok(recent[0].0.clone());
            }
            let first = &recent[0].1;
            stable_len = (0..probe_bound)
                .take_while(|&k| recent.iter().all(|(_, b)| b[k] == first[k]))
                .count();
            if stable_len == probe_bound {
                break;
            }
        }
    }
    if stable_len == 0 {
        return Err(Error::ChainLimitFailed(format!(
            "no digit stabilized over a window of {window} generations"
        )));
    }
    let stable_bits = &recent.last().expect("at least one generation").1[..stable_len];
    let elements: Vec<u64> =
        stable_bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i as u64 + 1).collect();
    detect_tail(&elements, stable_len as u64)
}

// Finds the longest arithmetic suffix (at least three members, reaching past
// the stabilized horizon) and returns prefix + tail in canonical form.
fn detect_tail(elements: &[u64], horizon: u64) -> Result<Measure> {
    let m = elements.len();
    for i in 0..m {
        let suffix = &elements[i..];
        if suffix.len() < 3 {
            break;
        }
        let step = suffix[1] - suffix[0];
        if step == 0 {
            continue;
        }
        let arithmetic = suffix.windows(2).all(|w| w[1] - w[0] == step);
        if arithmetic && suffix[suffix.len() - 1] + step > horizon {
            return Measure::new(elements[..i].to_vec(), Some((suffix[0], step)));
        }
    }
    Err(Error::ChainLimitFailed(format!(
        "no arithmetic tail detected within {horizon} stabilized digits"
    )))
}

// Serializes as {"prefix":[...],"tail":{"start":s,"step":d}} with a null
// tail for finite measures; deserialization re-canonicalizes and validates.

#[derive(Serialize, Deserialize)]
struct MeasureRepr {
    prefix: Vec<u64>,
    tail: Option<TailRepr>,
}

#[derive(Serialize, Deserialize)]
struct TailRepr {
    start: u64,
    step: u64,
}

impl Serialize for Measure {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MeasureRepr {
            prefix: self.prefix.clone(),
            tail: self.tail.map(|t| TailRepr { start: t.start, step: t.step }),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Measure {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = MeasureRepr::deserialize(deserializer)?;
        Measure::new(repr.prefix, repr.tail.map(|t| (t.start, t.step)))
            .map_err(|e| D::Error::custom(e.to_string()))
    }
}
