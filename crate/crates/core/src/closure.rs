//! The two closure operators on subsets of a net.
//!
//! Causal closure saturates a set under four rules: an event whose preset
//! lies inside comes in, an event whose postset lies inside comes in, an
//! event inside pulls in its whole neighbourhood, and comparable members
//! pull in the interval between them. Biorthogonal closure applies the
//! incomparability polarity twice. On K-dense nets the two operators agree
//! on every subset; [`closures_coincide`] sweeps that claim.

use thiserror::Error;

use crate::net::Net;
use crate::order::Poset;
use crate::set::ElementSet;

/// Which computation produced a closed set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    CausalClosure,
    Biortho,
    Given,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosedSet {
    pub members: ElementSet,
    pub provenance: Provenance,
}

/// First broken causal-closure rule for a set, with a witness.
/// Rules are numbered in the order they are checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CausalClosureViolation {
    /// Rule 1: the event's preset is inside but the event is not.
    PresetForcesEvent { event: usize },
    /// Rule 2: the event's postset is inside but the event is not.
    PostsetForcesEvent { event: usize },
    /// Rule 3: the event is inside but part of its neighbourhood is not.
    EventNeighbourhood { event: usize, missing: ElementSet },
    /// Rule 4: two comparable members whose interval escapes the set.
    Interval {
        lower: usize,
        upper: usize,
        missing: ElementSet,
    },
}

impl CausalClosureViolation {
    pub fn rule(&self) -> u8 {
        match self {
            CausalClosureViolation::PresetForcesEvent { .. } => 1,
            CausalClosureViolation::PostsetForcesEvent { .. } => 2,
            CausalClosureViolation::EventNeighbourhood { .. } => 3,
            CausalClosureViolation::Interval { .. } => 4,
        }
    }
}

#[derive(Debug, Error)]
pub enum ClosureError {
    #[error("net has {elements} elements; subset sweep is bounded at {bound}")]
    BoundExceeded { elements: usize, bound: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoincidenceCounterexample {
    pub subset: ElementSet,
    pub causal: ElementSet,
    pub biortho: ElementSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoincidenceReport {
    pub subsets_checked: u64,
    pub counterexample: Option<CoincidenceCounterexample>,
}

impl CoincidenceReport {
    pub fn coincide(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Elements co with every member of the set. The empty set maps to the
/// whole universe.
pub fn ortho(poset: &Poset, set: ElementSet) -> ElementSet {
    set.iter()
        .fold(poset.universe(), |acc, x| acc & poset.co_mask(x))
}

/// Double application of the polarity; always a closed superset.
pub fn biortho(poset: &Poset, set: ElementSet) -> ClosedSet {
    ClosedSet {
        members: ortho(poset, ortho(poset, set)),
        provenance: Provenance::Biortho,
    }
}

pub fn is_closed(poset: &Poset, set: ElementSet) -> bool {
    biortho(poset, set).members == set
}

/// Least fixpoint of the four causal-closure rules above the given set.
pub fn causal_closure(net: &Net, poset: &Poset, set: ElementSet) -> ClosedSet {
    debug_assert_eq!(net.len(), poset.len(), "net and poset must correspond");
    let events = net.events();
    let mut current = set;
    loop {
        let mut next = current;
        for e in events.iter() {
            let pre = net.preset_at(e);
            let post = net.postset_at(e);
            if next.contains(e) {
                next = next | pre | post;
            } else if pre.is_subset(&next) || post.is_subset(&next) {
                next.insert(e);
                next = next | pre | post;
            }
        }
        for x in next.iter() {
            for y in (next & poset.up_set(x)).iter() {
                next = next | poset.interval_at(x, y);
            }
        }
        if next == current {
            return ClosedSet {
                members: current,
                provenance: Provenance::CausalClosure,
            };
        }
        current = next;
    }
}

/// Check the four rules directly, reporting the first violation in rule
/// order and canonical element order.
pub fn causal_closure_violation(
    net: &Net,
    poset: &Poset,
    set: ElementSet,
) -> Option<CausalClosureViolation> {
    let events = net.events();
    for e in events.iter() {
        if net.preset_at(e).is_subset(&set) && !set.contains(e) {
            return Some(CausalClosureViolation::PresetForcesEvent { event: e });
        }
    }
    for e in events.iter() {
        if net.postset_at(e).is_subset(&set) && !set.contains(e) {
            return Some(CausalClosureViolation::PostsetForcesEvent { event: e });
        }
    }
    for e in (events & set).iter() {
        let hood = net.preset_at(e) | net.postset_at(e);
        if !hood.is_subset(&set) {
            return Some(CausalClosureViolation::EventNeighbourhood {
                event: e,
                missing: hood - set,
            });
        }
    }
    for x in set.iter() {
        for y in (set & poset.up_set(x)).iter() {
            let between = poset.interval_at(x, y);
            if !between.is_subset(&set) {
                return Some(CausalClosureViolation::Interval {
                    lower: x,
                    upper: y,
                    missing: between - set,
                });
            }
        }
    }
    None
}

pub fn is_causally_closed(net: &Net, poset: &Poset, set: ElementSet) -> bool {
    causal_closure_violation(net, poset, set).is_none()
}

/// Members with a flow arc leaving the set. For causally closed sets the
/// border consists of conditions only.
pub fn border(net: &Net, set: ElementSet) -> ElementSet {
    set.iter()
        .filter(|&x| !((net.preset_at(x) | net.postset_at(x)).is_subset(&set)))
        .collect()
}

/// Sweep every subset of the universe, in ascending bitmask order, and
/// compare the two closures. Stops at the first disagreement.
pub fn closures_coincide(
    net: &Net,
    poset: &Poset,
    bound: usize,
) -> Result<CoincidenceReport, ClosureError> {
    let n = net.len();
    if n > bound {
        return Err(ClosureError::BoundExceeded { elements: n, bound });
    }
    let mut checked = 0u64;
    for subset in net.universe().subsets() {
        checked += 1;
        let causal = causal_closure(net, poset, subset).members;
        let bi = biortho(poset, subset).members;
        if causal != bi {
            return Ok(CoincidenceReport {
                subsets_checked: checked,
                counterexample: Some(CoincidenceCounterexample {
                    subset,
                    causal,
                    biortho: bi,
                }),
            });
        }
    }
    Ok(CoincidenceReport {
        subsets_checked: checked,
        counterexample: None,
    })
}
