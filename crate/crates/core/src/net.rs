//! Net model: parsing, axiom validation, and element-local structure.
//!
//! A net is a triple (B, E, F) of conditions, events, and a flow relation
//! whose arcs always connect a condition with an event. [`NetDescription`]
//! is the raw document as read from JSON; [`Net`] is the validated form
//! with elements numbered canonically (conditions before events, each group
//! sorted by name) and preset/postset masks precomputed.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::set::ElementSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ElementKind {
    Condition,
    Event,
}

impl fmt::Display for ElementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementKind::Condition => write!(f, "condition"),
            ElementKind::Event => write!(f, "event"),
        }
    }
}

/// Which side of an element's flow arcs is being talked about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlowSide {
    Incoming,
    Outgoing,
}

impl fmt::Display for FlowSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlowSide::Incoming => write!(f, "incoming"),
            FlowSide::Outgoing => write!(f, "outgoing"),
        }
    }
}

/// Raw net document: `{"conditions": [..], "events": [..], "arcs": [[src, tgt], ..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetDescription {
    pub conditions: Vec<String>,
    pub events: Vec<String>,
    pub arcs: Vec<(String, String)>,
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("empty document")]
    Empty,
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid element name {name:?}")]
    InvalidName { name: String },
    #[error("duplicate {kind} name {name:?}")]
    DuplicateName { kind: ElementKind, name: String },
}

/// Axiom violations, reported in a fixed order: name collision, unknown
/// arc endpoint, isolated element, same-kind arc, condition branching,
/// cycle. Within one axiom, elements are scanned in canonical order and
/// arcs in document order.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("net has {count} elements; at most {max} are supported")]
    TooLarge { count: usize, max: usize },
    #[error("{name:?} is declared both as a condition and as an event")]
    NameCollision { name: String },
    #[error("arc endpoint {name:?} is not a declared element")]
    UnknownEndpoint { name: String },
    #[error("element {name:?} has no arcs")]
    IsolatedElement { name: String },
    #[error("arc ({src:?}, {dst:?}) connects two {kind}s")]
    SameKindArc {
        src: String,
        dst: String,
        kind: ElementKind,
    },
    #[error("condition {name:?} has {count} {side} arcs")]
    BranchingCondition {
        name: String,
        side: FlowSide,
        count: usize,
    },
    #[error("flow relation has a cycle through {name:?}")]
    Cycle { name: String },
}

impl ValidationError {
    /// Stable machine-readable code for reports.
    pub fn code(&self) -> &'static str {
        match self {
            ValidationError::TooLarge { .. } => "net-too-large",
            ValidationError::NameCollision { .. } => "name-collision",
            ValidationError::UnknownEndpoint { .. } => "unknown-arc-endpoint",
            ValidationError::IsolatedElement { .. } => "isolated-element",
            ValidationError::SameKindArc { .. } => "same-kind-arc",
            ValidationError::BranchingCondition { .. } => "condition-branching",
            ValidationError::Cycle { .. } => "acyclicity",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown element {0:?}")]
pub struct UnknownElement(pub String);

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl NetDescription {
    /// Read a description from JSON. Checks names are well-formed tokens
    /// and unique within their list, nothing more; axioms are the business
    /// of [`NetDescription::validate`].
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        if text.trim().is_empty() {
            return Err(ParseError::Empty);
        }
        let desc: NetDescription =
            serde_json::from_str(text).map_err(|e| ParseError::Syntax {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            })?;
        for (kind, names) in [
            (ElementKind::Condition, &desc.conditions),
            (ElementKind::Event, &desc.events),
        ] {
            let mut seen = HashSet::new();
            for name in names {
                if !valid_name(name) {
                    return Err(ParseError::InvalidName { name: name.clone() });
                }
                if !seen.insert(name.as_str()) {
                    return Err(ParseError::DuplicateName {
                        kind,
                        name: name.clone(),
                    });
                }
            }
        }
        for (src, dst) in &desc.arcs {
            for name in [src, dst] {
                if !valid_name(name) {
                    return Err(ParseError::InvalidName { name: name.clone() });
                }
            }
        }
        Ok(desc)
    }

    /// Check the causal-net axioms and build the indexed [`Net`].
    ///
    /// The axioms, in the order they are checked: conditions and events are
    /// disjoint; every arc endpoint is declared; every element lies on some
    /// arc; arcs connect a condition with an event; conditions have at most
    /// one incoming and one outgoing arc; the flow relation is acyclic.
    /// Arcs are read as a set, so duplicates collapse.
    pub fn validate(&self) -> Result<Net, ValidationError> {
        let count = self.conditions.len() + self.events.len();
        if count > ElementSet::CAPACITY {
            return Err(ValidationError::TooLarge {
                count,
                max: ElementSet::CAPACITY,
            });
        }

        let condition_names: HashSet<&str> =
            self.conditions.iter().map(|s| s.as_str()).collect();
        let mut collisions: Vec<&str> = self
            .events
            .iter()
            .map(|s| s.as_str())
            .filter(|name| condition_names.contains(name))
            .collect();
        collisions.sort_unstable();
        if let Some(name) = collisions.first() {
            return Err(ValidationError::NameCollision {
                name: name.to_string(),
            });
        }

        // Canonical numbering: conditions sorted by name, then events.
        let mut elements: Vec<Element> = Vec::with_capacity(count);
        let mut sorted_conditions = self.conditions.clone();
        sorted_conditions.sort_unstable();
        let mut sorted_events = self.events.clone();
        sorted_events.sort_unstable();
        for name in sorted_conditions {
            elements.push(Element {
                name,
                kind: ElementKind::Condition,
            });
        }
        for name in sorted_events {
            elements.push(Element {
                name,
                kind: ElementKind::Event,
            });
        }
        let index: HashMap<String, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.name.clone(), i))
            .collect();

        for (src, dst) in &self.arcs {
            for name in [src, dst] {
                if !index.contains_key(name) {
                    return Err(ValidationError::UnknownEndpoint { name: name.clone() });
                }
            }
        }

        let arc_set: BTreeSet<(usize, usize)> = self
            .arcs
            .iter()
            .map(|(src, dst)| (index[src], index[dst]))
            .collect();

        let mut on_arc = ElementSet::EMPTY;
        for &(src, dst) in &arc_set {
            on_arc.insert(src);
            on_arc.insert(dst);
        }
        for (i, element) in elements.iter().enumerate() {
            if !on_arc.contains(i) {
                return Err(ValidationError::IsolatedElement {
                    name: element.name.clone(),
                });
            }
        }

        for &(src, dst) in &arc_set {
            if elements[src].kind == elements[dst].kind {
                return Err(ValidationError::SameKindArc {
                    src: elements[src].name.clone(),
                    dst: elements[dst].name.clone(),
                    kind: elements[src].kind,
                });
            }
        }

        let mut pre = vec![ElementSet::EMPTY; count];
        let mut post = vec![ElementSet::EMPTY; count];
        for &(src, dst) in &arc_set {
            post[src].insert(dst);
            pre[dst].insert(src);
        }

        for (i, element) in elements.iter().enumerate() {
            if element.kind != ElementKind::Condition {
                continue;
            }
            if pre[i].len() > 1 {
                return Err(ValidationError::BranchingCondition {
                    name: element.name.clone(),
                    side: FlowSide::Incoming,
                    count: pre[i].len(),
                });
            }
            if post[i].len() > 1 {
                return Err(ValidationError::BranchingCondition {
                    name: element.name.clone(),
                    side: FlowSide::Outgoing,
                    count: post[i].len(),
                });
            }
        }

        // Kahn's algorithm; any leftover element sits on a cycle.
        let mut in_degree: Vec<usize> = pre.iter().map(|s| s.len()).collect();
        let mut ready: BTreeSet<usize> = in_degree
            .iter()
            .enumerate()
            .filter(|(_, &d)| d == 0)
            .map(|(i, _)| i)
            .collect();
        let mut placed = 0usize;
        while let Some(&i) = ready.iter().next() {
            ready.remove(&i);
            placed += 1;
            for j in post[i].iter() {
                in_degree[j] -= 1;
                if in_degree[j] == 0 {
                    ready.insert(j);
                }
            }
        }
        if placed < count {
            let name = in_degree
                .iter()
                .enumerate()
                .find(|(_, &d)| d > 0)
                .map(|(i, _)| elements[i].name.clone())
                .expect("some element remains on the cycle");
            return Err(ValidationError::Cycle { name });
        }

        let n_conditions = self.conditions.len();
        Ok(Net {
            elements,
            index,
            pre,
            post,
            arcs: arc_set.into_iter().collect(),
            n_conditions,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    pub name: String,
    pub kind: ElementKind,
}

/// A validated causal net with canonical element numbering.
#[derive(Debug, Clone)]
pub struct Net {
    elements: Vec<Element>,
    index: HashMap<String, usize>,
    pre: Vec<ElementSet>,
    post: Vec<ElementSet>,
    arcs: Vec<(usize, usize)>,
    n_conditions: usize,
}

impl Net {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn condition_count(&self) -> usize {
        self.n_conditions
    }

    pub fn event_count(&self) -> usize {
        self.elements.len() - self.n_conditions
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    /// Deduplicated arcs as index pairs, sorted.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn universe(&self) -> ElementSet {
        ElementSet::full(self.elements.len())
    }

    /// Mask of all conditions. With canonical numbering this is a prefix.
    pub fn conditions(&self) -> ElementSet {
        ElementSet::full(self.n_conditions)
    }

    pub fn events(&self) -> ElementSet {
        self.conditions().complement_in(self.universe())
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elements[i].name
    }

    pub fn kind(&self, i: usize) -> ElementKind {
        self.elements[i].kind
    }

    /// Sorted member names of a set.
    pub fn names(&self, set: ElementSet) -> Vec<&str> {
        set.iter().map(|i| self.name(i)).collect()
    }

    pub fn set_from_names<'a, I>(&self, names: I) -> Result<ElementSet, UnknownElement>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut set = ElementSet::EMPTY;
        for name in names {
            let i = self
                .index_of(name)
                .ok_or_else(|| UnknownElement(name.to_string()))?;
            set.insert(i);
        }
        Ok(set)
    }

    /// Elements with an arc into the named element.
    pub fn preset(&self, name: &str) -> Result<ElementSet, UnknownElement> {
        self.index_of(name)
            .map(|i| self.pre[i])
            .ok_or_else(|| UnknownElement(name.to_string()))
    }

    /// Elements with an arc out of the named element.
    pub fn postset(&self, name: &str) -> Result<ElementSet, UnknownElement> {
        self.index_of(name)
            .map(|i| self.post[i])
            .ok_or_else(|| UnknownElement(name.to_string()))
    }

    pub fn preset_at(&self, i: usize) -> ElementSet {
        self.pre[i]
    }

    pub fn postset_at(&self, i: usize) -> ElementSet {
        self.post[i]
    }

    /// True when no two distinct elements share both preset and postset.
    /// Diagnostic only; validity does not require it.
    pub fn is_simple(&self) -> bool {
        let mut seen: HashSet<(ElementSet, ElementSet)> = HashSet::new();
        for i in 0..self.elements.len() {
            if !seen.insert((self.pre[i], self.post[i])) {
                return false;
            }
        }
        true
    }
}
