//! Order-theoretic view of a net: the induced poset, its cuts and lines.
//!
//! The poset is the reflexive-transitive closure of the flow relation over
//! all elements. Two elements are `li` when comparable (or equal) and `co`
//! when incomparable and distinct; every pair falls on exactly one side.
//! Cuts are maximal co-cliques, lines are maximal li-cliques, and K-density
//! asks that every cut meet every line.
//!
//! # Enumeration
//!
//! Cuts and lines are enumerated with pivoting Bron-Kerbosch over bitmask
//! adjacency and returned sorted in canonical set order, so output never
//! depends on recursion order.

use std::collections::HashMap;

use thiserror::Error;

use crate::net::{Element, ElementKind, Net, UnknownElement};
use crate::set::ElementSet;

#[derive(Debug, Error)]
pub enum OrderError {
    #[error("unknown element {0:?}")]
    Unknown(String),
    #[error("duplicate element {0:?}")]
    Duplicate(String),
    #[error("relation is cyclic: {a:?} and {b:?} are mutually reachable")]
    CyclicRelation { a: String, b: String },
    #[error("poset has {count} elements; at most {max} are supported")]
    TooLarge { count: usize, max: usize },
    #[error("{set:?} is not a coset")]
    NotACoset { set: ElementSet },
}

/// A maximal set of pairwise `co` elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cut(ElementSet);

impl Cut {
    pub fn members(&self) -> ElementSet {
        self.0
    }
}

/// A maximal set of pairwise `li` elements (a maximal chain).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Line(ElementSet);

impl Line {
    pub fn members(&self) -> ElementSet {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KDensityReport {
    pub k_dense: bool,
    /// First disjoint cut/line pair in canonical order, when not K-dense.
    pub witness: Option<(Cut, Line)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FinitenessReport {
    pub degree_finite: bool,
    pub interval_finite: bool,
    /// Largest cover in- or out-degree of any element.
    pub max_degree: usize,
    /// Largest interval cardinality over comparable pairs.
    pub max_interval: usize,
}

/// Finite poset over canonically numbered elements.
#[derive(Debug, Clone)]
pub struct Poset {
    elements: Vec<Element>,
    index: HashMap<String, usize>,
    /// up[x] = every y with x below-or-equal y; contains x.
    up: Vec<ElementSet>,
    /// down[x] = every y below-or-equal x; contains x.
    down: Vec<ElementSet>,
    /// co[x] = elements incomparable with x; never contains x.
    co: Vec<ElementSet>,
    universe: ElementSet,
    conditions: ElementSet,
}

impl Poset {
    /// Reflexive-transitive closure of a validated net's flow relation.
    pub fn from_net(net: &Net) -> Poset {
        let n = net.len();
        let mut up = vec![ElementSet::EMPTY; n];
        // The flow relation is acyclic, so a reverse pass over a topological
        // order folds successor reachability in one sweep.
        let order = topological_order(n, |i| net.postset_at(i));
        for &i in order.iter().rev() {
            let mut reach = ElementSet::singleton(i);
            for j in net.postset_at(i).iter() {
                reach = reach | up[j];
            }
            up[i] = reach;
        }
        Self::assemble(net.elements().to_vec(), up)
    }

    /// Build a poset directly from a relation, for inputs that do not come
    /// from any net (synthetic test orders, counterexample hunting). The
    /// given pairs are read as `a` below-or-equal `b` and closed
    /// reflexively and transitively; a cycle is an error.
    pub fn synthetic(
        elements: &[(&str, ElementKind)],
        below: &[(&str, &str)],
    ) -> Result<Poset, OrderError> {
        if elements.len() > ElementSet::CAPACITY {
            return Err(OrderError::TooLarge {
                count: elements.len(),
                max: ElementSet::CAPACITY,
            });
        }
        let mut named: Vec<Element> = elements
            .iter()
            .map(|(name, kind)| Element {
                name: name.to_string(),
                kind: *kind,
            })
            .collect();
        named.sort_by(|a, b| (a.kind, &a.name).cmp(&(b.kind, &b.name)));
        let index: HashMap<&str, usize> = named
            .iter()
            .enumerate()
            .map(|(i, e)| (e.name.as_str(), i))
            .collect();
        if index.len() < named.len() {
            let dup = named
                .windows(2)
                .find(|w| w[0].name == w[1].name)
                .map(|w| w[0].name.clone())
                .expect("duplicate exists");
            return Err(OrderError::Duplicate(dup));
        }

        let n = named.len();
        let mut up = vec![ElementSet::EMPTY; n];
        for (i, row) in up.iter_mut().enumerate() {
            row.insert(i);
        }
        for (a, b) in below {
            let i = *index
                .get(a)
                .ok_or_else(|| OrderError::Unknown(a.to_string()))?;
            let j = *index
                .get(b)
                .ok_or_else(|| OrderError::Unknown(b.to_string()))?;
            up[i].insert(j);
        }
        // Warshall over bitmask rows.
        for k in 0..n {
            for i in 0..n {
                if up[i].contains(k) {
                    up[i] = up[i] | up[k];
                }
            }
        }
        for i in 0..n {
            for j in up[i].iter() {
                if j != i && up[j].contains(i) {
                    return Err(OrderError::CyclicRelation {
                        a: named[i].name.clone(),
                        b: named[j].name.clone(),
                    });
                }
            }
        }
        Ok(Self::assemble(named, up))
    }

    fn assemble(elements: Vec<Element>, up: Vec<ElementSet>) -> Poset {
        let n = elements.len();
        let universe = ElementSet::full(n);
        let mut down = vec![ElementSet::EMPTY; n];
        for (i, ups) in up.iter().enumerate() {
            for j in ups.iter() {
                down[j].insert(i);
            }
        }
        let co: Vec<ElementSet> = (0..n)
            .map(|i| (up[i] | down[i]).complement_in(universe))
            .collect();
        let conditions = elements
            .iter()
            .enumerate()
            .filter(|(_, e)| e.kind == ElementKind::Condition)
            .map(|(i, _)| i)
            .collect();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.name.clone(), i))
            .collect();
        Poset {
            elements,
            index,
            up,
            down,
            co,
            universe,
            conditions,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn universe(&self) -> ElementSet {
        self.universe
    }

    pub fn conditions(&self) -> ElementSet {
        self.conditions
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elements[i].name
    }

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

    fn resolve(&self, name: &str) -> Result<usize, UnknownElement> {
        self.index_of(name)
            .ok_or_else(|| UnknownElement(name.to_string()))
    }

    pub fn leq(&self, x: &str, y: &str) -> Result<bool, UnknownElement> {
        Ok(self.leq_at(self.resolve(x)?, self.resolve(y)?))
    }

    pub fn leq_at(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    /// Comparable or equal.
    pub fn li_at(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y) || self.down[x].contains(y)
    }

    /// Incomparable and distinct.
    pub fn co_at(&self, x: usize, y: usize) -> bool {
        self.co[x].contains(y)
    }

    pub fn li(&self, x: &str, y: &str) -> Result<bool, UnknownElement> {
        Ok(self.li_at(self.resolve(x)?, self.resolve(y)?))
    }

    pub fn co(&self, x: &str, y: &str) -> Result<bool, UnknownElement> {
        Ok(self.co_at(self.resolve(x)?, self.resolve(y)?))
    }

    /// Mask of elements incomparable with x.
    pub fn co_mask(&self, x: usize) -> ElementSet {
        self.co[x]
    }

    pub fn up_set(&self, x: usize) -> ElementSet {
        self.up[x]
    }

    pub fn down_set(&self, x: usize) -> ElementSet {
        self.down[x]
    }

    /// [x, y] = everything between x and y; empty unless x is below y.
    pub fn interval(&self, x: &str, y: &str) -> Result<ElementSet, UnknownElement> {
        Ok(self.interval_at(self.resolve(x)?, self.resolve(y)?))
    }

    pub fn interval_at(&self, x: usize, y: usize) -> ElementSet {
        self.up[x] & self.down[y]
    }

    /// A set is convex when it contains every interval between its members.
    pub fn is_convex(&self, set: ElementSet) -> bool {
        for x in set.iter() {
            for y in (set & self.up[x]).iter() {
                if !self.interval_at(x, y).is_subset(&set) {
                    return false;
                }
            }
        }
        true
    }

    /// Degree and interval bounds. Finite posets are trivially finite on
    /// both axes; the maxima are the useful part. Degree counts cover
    /// neighbours, which for nets coincide with flow arcs.
    pub fn finiteness_report(&self) -> FinitenessReport {
        let n = self.len();
        let mut cover_out = vec![0usize; n];
        let mut cover_in = vec![0usize; n];
        let mut max_interval = 0usize;
        for (x, ups) in self.up.iter().enumerate() {
            for y in ups.iter() {
                if y == x {
                    continue;
                }
                let between = self.interval_at(x, y);
                max_interval = max_interval.max(between.len());
                if between.len() == 2 {
                    cover_out[x] += 1;
                    cover_in[y] += 1;
                }
            }
        }
        let max_degree = (0..n)
            .map(|i| cover_out[i].max(cover_in[i]))
            .max()
            .unwrap_or(0);
        FinitenessReport {
            degree_finite: true,
            interval_finite: true,
            max_degree,
            max_interval,
        }
    }

    /// Pairwise co (an antichain).
    pub fn is_coset(&self, set: ElementSet) -> bool {
        set.iter()
            .all(|x| (set - ElementSet::singleton(x)).is_subset(&self.co[x]))
    }

    /// An antichain made of conditions only.
    pub fn is_b_coset(&self, set: ElementSet) -> bool {
        set.is_subset(&self.conditions) && self.is_coset(set)
    }

    pub fn is_b_cut(&self, cut: &Cut) -> bool {
        cut.members().is_subset(&self.conditions)
    }

    /// Pairwise li (a chain).
    pub fn is_chain(&self, set: ElementSet) -> bool {
        set.iter().all(|x| {
            (set - ElementSet::singleton(x)).is_subset(&(self.up[x] | self.down[x]))
        })
    }

    /// Elements co with everything in the set. For a coset these are
    /// exactly the candidates that extend it; a coset is a cut when there
    /// are none.
    fn co_extension(&self, set: ElementSet) -> ElementSet {
        set.iter().fold(self.universe, |acc, x| acc & self.co[x])
    }

    fn li_extension(&self, set: ElementSet) -> ElementSet {
        set.iter()
            .fold(self.universe, |acc, x| acc & (self.up[x] | self.down[x]))
            - set
    }

    /// Validate a user-supplied cut.
    pub fn as_cut(&self, set: ElementSet) -> Option<Cut> {
        if !set.is_empty() && self.is_coset(set) && self.co_extension(set).is_empty() {
            Some(Cut(set))
        } else {
            None
        }
    }

    /// Validate a user-supplied line.
    pub fn as_line(&self, set: ElementSet) -> Option<Line> {
        if !set.is_empty() && self.is_chain(set) && self.li_extension(set).is_empty() {
            Some(Line(set))
        } else {
            None
        }
    }

    /// Grow a coset to a cut by repeatedly adding the least compatible
    /// element. Starting from the empty set this yields the first cut in
    /// canonical order.
    pub fn extend_to_cut(&self, set: ElementSet) -> Result<Cut, OrderError> {
        if !self.is_coset(set) {
            return Err(OrderError::NotACoset { set });
        }
        let mut cut = set;
        let mut candidates = self.co_extension(set);
        while let Some(x) = candidates.first() {
            cut.insert(x);
            candidates = candidates & self.co[x];
        }
        Ok(Cut(cut))
    }

    /// All cuts, in canonical order.
    pub fn cuts(&self) -> Vec<Cut> {
        self.cuts_within(self.universe)
    }

    /// Cuts of the sub-poset induced on `within`.
    pub fn cuts_within(&self, within: ElementSet) -> Vec<Cut> {
        self.max_cliques(within, |x| self.co[x])
            .into_iter()
            .map(Cut)
            .collect()
    }

    /// All lines, in canonical order.
    pub fn lines(&self) -> Vec<Line> {
        self.lines_within(self.universe)
    }

    /// Lines of the sub-poset induced on `within`.
    pub fn lines_within(&self, within: ElementSet) -> Vec<Line> {
        self.max_cliques(within, |x| (self.up[x] | self.down[x]) - ElementSet::singleton(x))
            .into_iter()
            .map(Line)
            .collect()
    }

    fn max_cliques<F>(&self, within: ElementSet, adjacency: F) -> Vec<ElementSet>
    where
        F: Fn(usize) -> ElementSet,
    {
        if within.is_empty() {
            return Vec::new();
        }
        let adj: Vec<ElementSet> = (0..self.len())
            .map(|x| {
                if within.contains(x) {
                    adjacency(x) & within
                } else {
                    ElementSet::EMPTY
                }
            })
            .collect();
        let mut out = Vec::new();
        bron_kerbosch(&adj, ElementSet::EMPTY, within, ElementSet::EMPTY, &mut out);
        out.sort_unstable();
        out
    }

    /// Every cut must meet every line; the meeting point is necessarily
    /// unique because the intersection of a chain and an antichain holds at
    /// most one element.
    pub fn k_density(&self) -> KDensityReport {
        let cuts = self.cuts();
        let lines = self.lines();
        for cut in &cuts {
            for line in &lines {
                let common = cut.members() & line.members();
                if common.is_empty() {
                    return KDensityReport {
                        k_dense: false,
                        witness: Some((*cut, *line)),
                    };
                }
                debug_assert_eq!(common.len(), 1);
            }
        }
        KDensityReport {
            k_dense: true,
            witness: None,
        }
    }
}

fn topological_order<F>(n: usize, succ: F) -> Vec<usize>
where
    F: Fn(usize) -> ElementSet,
{
    let mut in_degree = vec![0usize; n];
    for i in 0..n {
        for j in succ(i).iter() {
            in_degree[j] += 1;
        }
    }
    let mut stack: Vec<usize> = (0..n).filter(|&i| in_degree[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(i) = stack.pop() {
        order.push(i);
        for j in succ(i).iter() {
            in_degree[j] -= 1;
            if in_degree[j] == 0 {
                stack.push(j);
            }
        }
    }
    debug_assert_eq!(order.len(), n, "relation must be acyclic");
    order
}

/// Classic pivoting Bron-Kerbosch. `p` holds candidates, `x` holds already
/// covered vertices; a branch with both empty reports `r` as maximal.
fn bron_kerbosch(
    adj: &[ElementSet],
    r: ElementSet,
    p: ElementSet,
    x: ElementSet,
    out: &mut Vec<ElementSet>,
) {
    if p.is_empty() && x.is_empty() {
        out.push(r);
        return;
    }
    // Pivot on the candidate-or-covered vertex with the most candidate
    // neighbours; only non-neighbours of the pivot need branching.
    let pivot = (p | x)
        .iter()
        .max_by_key(|&u| (adj[u] & p).len())
        .expect("p or x nonempty");
    let mut p = p;
    let mut x = x;
    for v in (p - adj[pivot]).iter() {
        bron_kerbosch(
            adj,
            r | ElementSet::singleton(v),
            p & adj[v],
            x & adj[v],
            out,
        );
        p.remove(v);
        x.insert(v);
    }
}
