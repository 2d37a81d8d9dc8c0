//! The ortholattice of closed subsets of a net.
//!
//! Members are the biorthogonally closed sets, ordered by inclusion, with
//! intersection as meet, closed union as join, and the polarity as
//! orthocomplement. Construction closes every coset (subset of a cut) and
//! then saturates under orthocomplement and pairwise intersection; on
//! K-dense nets the coset closures alone already hit every closed set,
//! which [`Lattice::verify_by_sweep`] can confirm against the full subset
//! sweep.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::closure::{biortho, ortho};
use crate::net::Net;
use crate::order::{Cut, Poset};
use crate::set::ElementSet;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("net has {elements} elements; lattice construction is bounded at {bound}")]
    BoundExceeded { elements: usize, bound: usize },
    #[error("{set:?} is not a lattice member")]
    NotAMember { set: ElementSet },
    #[error("{set:?} is not a line of the poset")]
    NotALine { set: ElementSet },
    #[error("{set:?} is not a B-cut of the poset")]
    NotABCut { set: ElementSet },
    #[error("{a:?} and {b:?} are not orthogonal")]
    NotOrthogonal { a: ElementSet, b: ElementSet },
    #[error("parts join to {join:?} instead of the top element")]
    JoinNotTop { join: ElementSet },
    #[error("carrier is not distributive on {a:?}, {b:?}, {c:?}")]
    NotDistributive {
        a: ElementSet,
        b: ElementSet,
        c: ElementSet,
    },
}

/// First broken ortholattice law, with the offending members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrthoLawViolation {
    Involution { a: ElementSet },
    ComplementMeet { a: ElementSet },
    ComplementJoin { a: ElementSet },
    Antitone { a: ElementSet, b: ElementSet },
    DeMorganJoin { a: ElementSet, b: ElementSet },
    DeMorganMeet { a: ElementSet, b: ElementSet },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthomodularViolation {
    pub lower: ElementSet,
    pub upper: ElementSet,
    /// What lower v (upper ^ lower') actually came to.
    pub rebuilt: ElementSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityViolation {
    pub x: ElementSet,
    pub y: ElementSet,
    pub z: ElementSet,
}

/// Truth assignment induced by a line: a member is true when the line
/// crosses it. `values` is indexed like the lattice's element list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoValuedState {
    pub line: ElementSet,
    pub values: Vec<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StateCheck {
    pub families_checked: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StateViolation {
    TopNotTrue,
    BottomNotFalse,
    /// An orthogonal family whose join disagrees with the summed values.
    Additivity {
        family: Vec<ElementSet>,
        sum: usize,
        join: ElementSet,
        join_true: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct XorCheck {
    pub pairs_checked: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XorViolation {
    pub line: ElementSet,
    pub member: ElementSet,
    pub meets_member: bool,
    pub meets_ortho: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BCutGenerationViolation {
    pub member: ElementSet,
    pub b_cut: ElementSet,
    pub closure: ElementSet,
}

/// Outcome of regenerating every member from each of its B-cuts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BCutGenerationReport {
    pub pairs_checked: u64,
    /// Nonempty members with no B-cut; vacuously fine, but reported.
    pub skipped: Vec<ElementSet>,
    pub violations: Vec<BCutGenerationViolation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepCheck {
    pub subsets_checked: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepViolation {
    pub set: ElementSet,
    pub closed: bool,
    pub member: bool,
}

/// Atoms of a Boolean subalgebra and every join of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanBlock {
    pub atoms: Vec<ElementSet>,
    pub carrier: Vec<ElementSet>,
}

/// Finite ortholattice of closed sets, members in canonical order.
#[derive(Debug, Clone)]
pub struct Lattice {
    elements: Vec<ElementSet>,
    position: HashMap<ElementSet, usize>,
    ortho: Vec<usize>,
    bottom: usize,
    top: usize,
    universe: ElementSet,
}

impl Lattice {
    /// Build the lattice of a net. `bound` caps the element count; the
    /// same cap is what makes the optional full sweep affordable.
    pub fn build(net: &Net, poset: &Poset, bound: usize) -> Result<Lattice, LatticeError> {
        let n = net.len();
        if n > bound {
            return Err(LatticeError::BoundExceeded { elements: n, bound });
        }
        let universe = net.universe();
        let mut family: BTreeSet<ElementSet> = BTreeSet::new();
        family.insert(ElementSet::EMPTY);
        family.insert(universe);
        for cut in poset.cuts() {
            for coset in cut.members().subsets() {
                family.insert(biortho(poset, coset).members);
            }
        }
        // Saturate under orthocomplement and pairwise intersection so the
        // lattice operations never leave the member list, K-dense or not.
        loop {
            let members: Vec<ElementSet> = family.iter().copied().collect();
            let mut grew = false;
            for (i, &a) in members.iter().enumerate() {
                grew |= family.insert(ortho(poset, a));
                for &b in &members[i + 1..] {
                    grew |= family.insert(a & b);
                }
            }
            if !grew {
                break;
            }
        }

        let elements: Vec<ElementSet> = family.into_iter().collect();
        let position: HashMap<ElementSet, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, &s)| (s, i))
            .collect();
        let ortho_map: Vec<usize> = elements
            .iter()
            .map(|&a| position[&ortho(poset, a)])
            .collect();
        Ok(Lattice {
            bottom: position[&ElementSet::EMPTY],
            top: position[&universe],
            elements,
            position,
            ortho: ortho_map,
            universe,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> &[ElementSet] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> ElementSet {
        self.elements[i]
    }

    pub fn index_of(&self, set: ElementSet) -> Option<usize> {
        self.position.get(&set).copied()
    }

    fn require(&self, set: ElementSet) -> Result<usize, LatticeError> {
        self.index_of(set)
            .ok_or(LatticeError::NotAMember { set })
    }

    pub fn bottom_index(&self) -> usize {
        self.bottom
    }

    pub fn top_index(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> ElementSet {
        self.elements[self.bottom]
    }

    pub fn top(&self) -> ElementSet {
        self.elements[self.top]
    }

    pub fn leq_at(&self, i: usize, j: usize) -> bool {
        self.elements[i].is_subset(&self.elements[j])
    }

    pub fn meet_at(&self, i: usize, j: usize) -> usize {
        let meet = self.elements[i] & self.elements[j];
        *self
            .position
            .get(&meet)
            .expect("members are closed under intersection")
    }

    pub fn join_at(&self, i: usize, j: usize) -> usize {
        // (A u B)'' is the orthocomplement of A' n B'.
        let primes = self.elements[self.ortho[i]] & self.elements[self.ortho[j]];
        let k = *self
            .position
            .get(&primes)
            .expect("members are closed under intersection");
        self.ortho[k]
    }

    pub fn ortho_at(&self, i: usize) -> usize {
        self.ortho[i]
    }

    pub fn meet(&self, a: ElementSet, b: ElementSet) -> Result<ElementSet, LatticeError> {
        Ok(self.elements[self.meet_at(self.require(a)?, self.require(b)?)])
    }

    pub fn join(&self, a: ElementSet, b: ElementSet) -> Result<ElementSet, LatticeError> {
        Ok(self.elements[self.join_at(self.require(a)?, self.require(b)?)])
    }

    pub fn orthocomplement(&self, a: ElementSet) -> Result<ElementSet, LatticeError> {
        Ok(self.elements[self.ortho_at(self.require(a)?)])
    }

    pub fn orthogonal_at(&self, i: usize, j: usize) -> bool {
        self.leq_at(i, self.ortho[j])
    }

    pub fn are_orthogonal(&self, a: ElementSet, b: ElementSet) -> Result<bool, LatticeError> {
        Ok(self.orthogonal_at(self.require(a)?, self.require(b)?))
    }

    /// Every ortholattice law, checked pointwise in canonical order:
    /// involution, complement laws, antitonicity, De Morgan.
    pub fn check_ortholattice(&self) -> Result<(), OrthoLawViolation> {
        let n = self.len();
        for i in 0..n {
            let a = self.elements[i];
            if self.ortho[self.ortho[i]] != i {
                return Err(OrthoLawViolation::Involution { a });
            }
            if self.meet_at(i, self.ortho[i]) != self.bottom {
                return Err(OrthoLawViolation::ComplementMeet { a });
            }
            if self.join_at(i, self.ortho[i]) != self.top {
                return Err(OrthoLawViolation::ComplementJoin { a });
            }
        }
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (self.elements[i], self.elements[j]);
                if self.leq_at(i, j) && !self.leq_at(self.ortho[j], self.ortho[i]) {
                    return Err(OrthoLawViolation::Antitone { a, b });
                }
                if self.ortho[self.join_at(i, j)]
                    != self.meet_at(self.ortho[i], self.ortho[j])
                {
                    return Err(OrthoLawViolation::DeMorganJoin { a, b });
                }
                if self.ortho[self.meet_at(i, j)]
                    != self.join_at(self.ortho[i], self.ortho[j])
                {
                    return Err(OrthoLawViolation::DeMorganMeet { a, b });
                }
            }
        }
        Ok(())
    }

    /// For every comparable pair a <= b, b must equal a v (b ^ a').
    pub fn check_orthomodular(&self) -> Result<(), OrthomodularViolation> {
        let n = self.len();
        for i in 0..n {
            for j in 0..n {
                if !self.leq_at(i, j) {
                    continue;
                }
                let rebuilt = self.join_at(i, self.meet_at(j, self.ortho[i]));
                if rebuilt != j {
                    return Err(OrthomodularViolation {
                        lower: self.elements[i],
                        upper: self.elements[j],
                        rebuilt: self.elements[rebuilt],
                    });
                }
            }
        }
        Ok(())
    }

    fn sub_elements(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.leq_at(j, i)).collect()
    }

    /// Search for a decomposition a = x1 v z, b = y1 v z with x1, z, y1
    /// mutually orthogonal. Returns the first witness in index order.
    pub fn compatibility_witness_at(&self, a: usize, b: usize) -> Option<(usize, usize, usize)> {
        let m = self.meet_at(a, b);
        let xs = self.sub_elements(a);
        let zs = self.sub_elements(m);
        let ys = self.sub_elements(b);
        for &x1 in &xs {
            for &z in &zs {
                if !self.orthogonal_at(x1, z) || self.join_at(x1, z) != a {
                    continue;
                }
                for &y1 in &ys {
                    if self.orthogonal_at(y1, z)
                        && self.orthogonal_at(x1, y1)
                        && self.join_at(y1, z) == b
                    {
                        return Some((x1, z, y1));
                    }
                }
            }
        }
        None
    }

    pub fn are_compatible_at(&self, a: usize, b: usize) -> bool {
        self.compatibility_witness_at(a, b).is_some()
    }

    pub fn compatibility_witness(
        &self,
        a: ElementSet,
        b: ElementSet,
    ) -> Result<Option<(ElementSet, ElementSet, ElementSet)>, LatticeError> {
        let witness = self
            .compatibility_witness_at(self.require(a)?, self.require(b)?)
            .map(|(x1, z, y1)| (self.elements[x1], self.elements[z], self.elements[y1]));
        Ok(witness)
    }

    /// Algebraic characterization of compatibility in an orthomodular
    /// lattice: a = (a ^ b) v (a ^ b'). Cross-check for the witness search.
    pub fn compatible_by_decomposition_at(&self, a: usize, b: usize) -> bool {
        self.join_at(self.meet_at(a, b), self.meet_at(a, self.ortho[b])) == a
    }

    /// Every pairwise compatible triple {x, y, z} must leave x compatible
    /// with y v z, in all three roles.
    pub fn check_regular(&self) -> Result<(), RegularityViolation> {
        let n = self.len();
        let half: Vec<Vec<bool>> = (0..n)
            .map(|i| (i..n).map(|j| self.are_compatible_at(i, j)).collect())
            .collect();
        let compat = |i: usize, j: usize| half[i.min(j)][i.max(j) - i.min(j)];
        for i in 0..n {
            for j in (i + 1)..n {
                if !compat(i, j) {
                    continue;
                }
                for k in (j + 1)..n {
                    if !compat(i, k) || !compat(j, k) {
                        continue;
                    }
                    for (x, y, z) in [(i, j, k), (j, i, k), (k, i, j)] {
                        if !compat(x, self.join_at(y, z)) {
                            return Err(RegularityViolation {
                                x: self.elements[x],
                                y: self.elements[y],
                                z: self.elements[z],
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The state a line induces: true exactly on the members it crosses.
    pub fn line_state(&self, poset: &Poset, line: ElementSet) -> Result<TwoValuedState, LatticeError> {
        if poset.as_line(line).is_none() {
            return Err(LatticeError::NotALine { set: line });
        }
        Ok(TwoValuedState {
            line,
            values: self.elements.iter().map(|a| a.intersects(&line)).collect(),
        })
    }

    /// Family-size cap used when the lattice is too big for the exhaustive
    /// orthogonal-family sweep.
    pub fn default_family_bound(&self) -> Option<usize> {
        if self.len() <= 64 {
            None
        } else {
            Some(4)
        }
    }

    /// Check the two-valued-state laws: top true, bottom false, and
    /// additivity over orthogonal families. `family_bound` of None sweeps
    /// every family; Some(k) sweeps families up to size k plus the greedy
    /// maximal family through each member.
    pub fn verify_state(
        &self,
        state: &TwoValuedState,
        family_bound: Option<usize>,
    ) -> Result<StateCheck, StateViolation> {
        assert_eq!(state.values.len(), self.len(), "state and lattice must align");
        if !state.values[self.top] {
            return Err(StateViolation::TopNotTrue);
        }
        if state.values[self.bottom] {
            return Err(StateViolation::BottomNotFalse);
        }
        let n = self.len();
        let mut families_checked = 0u64;
        let mut check = |family: &[usize]| -> Result<(), StateViolation> {
            families_checked += 1;
            let sum = family.iter().filter(|&&i| state.values[i]).count();
            let join = family
                .iter()
                .fold(self.bottom, |acc, &i| self.join_at(acc, i));
            if (state.values[join] as usize) != sum {
                return Err(StateViolation::Additivity {
                    family: family.iter().map(|&i| self.elements[i]).collect(),
                    sum,
                    join: self.elements[join],
                    join_true: state.values[join],
                });
            }
            Ok(())
        };

        // Depth-first over index-ascending orthogonal families of size >= 2.
        let mut stack: Vec<usize> = Vec::new();
        let mut result = Ok(());
        self.family_walk(0, &mut stack, family_bound, &mut |family| {
            if family.len() >= 2 {
                check(family)
            } else {
                Ok(())
            }
        }, &mut result);
        result?;

        if family_bound.is_some() {
            // Greedy maximal family through each member.
            for start in 0..n {
                let mut family = vec![start];
                for next in (start + 1)..n {
                    if family.iter().all(|&i| self.orthogonal_at(i, next)) {
                        family.push(next);
                    }
                }
                if family.len() >= 2 {
                    check(&family)?;
                }
            }
        }
        Ok(StateCheck { families_checked })
    }

    fn family_walk(
        &self,
        from: usize,
        stack: &mut Vec<usize>,
        bound: Option<usize>,
        visit: &mut impl FnMut(&[usize]) -> Result<(), StateViolation>,
        result: &mut Result<(), StateViolation>,
    ) {
        if result.is_err() {
            return;
        }
        if let Err(v) = visit(stack) {
            *result = Err(v);
            return;
        }
        if bound.is_some_and(|k| stack.len() >= k) {
            return;
        }
        for next in from..self.len() {
            if stack.iter().all(|&i| self.orthogonal_at(i, next)) {
                stack.push(next);
                self.family_walk(next + 1, stack, bound, visit, result);
                stack.pop();
                if result.is_err() {
                    return;
                }
            }
        }
    }

    /// Every line must cross exactly one of each member and its
    /// orthocomplement.
    pub fn check_line_crossing_xor(&self, poset: &Poset) -> Result<XorCheck, XorViolation> {
        let mut pairs = 0u64;
        for line in poset.lines() {
            let members = line.members();
            for (i, a) in self.elements.iter().enumerate() {
                pairs += 1;
                let meets_member = a.intersects(&members);
                let meets_ortho = self.elements[self.ortho[i]].intersects(&members);
                if meets_member == meets_ortho {
                    return Err(XorViolation {
                        line: members,
                        member: *a,
                        meets_member,
                        meets_ortho,
                    });
                }
            }
        }
        Ok(XorCheck { pairs_checked: pairs })
    }

    /// Each nonempty member should be regenerated by closing any of its
    /// B-cuts (cuts of the induced sub-poset made of conditions only).
    pub fn check_bcut_generates(&self, poset: &Poset) -> BCutGenerationReport {
        let mut report = BCutGenerationReport {
            pairs_checked: 0,
            skipped: Vec::new(),
            violations: Vec::new(),
        };
        for &member in &self.elements {
            if member.is_empty() {
                continue;
            }
            let b_cuts: Vec<ElementSet> = poset
                .cuts_within(member)
                .into_iter()
                .map(|c| c.members())
                .filter(|c| c.is_subset(&poset.conditions()))
                .collect();
            if b_cuts.is_empty() {
                report.skipped.push(member);
                continue;
            }
            for b_cut in b_cuts {
                report.pairs_checked += 1;
                let closure = biortho(poset, b_cut).members;
                if closure != member {
                    report.violations.push(BCutGenerationViolation {
                        member,
                        b_cut,
                        closure,
                    });
                }
            }
        }
        report
    }

    /// Boolean subalgebra generated by a B-cut: one atom per condition.
    pub fn boolean_from_bcut(&self, poset: &Poset, cut: &Cut) -> Result<BooleanBlock, LatticeError> {
        if !poset.is_b_cut(cut) {
            return Err(LatticeError::NotABCut { set: cut.members() });
        }
        let mut atoms: BTreeSet<usize> = BTreeSet::new();
        for b in cut.members().iter() {
            let atom = biortho(poset, ElementSet::singleton(b)).members;
            atoms.insert(self.require(atom)?);
        }
        self.block_from_atoms(atoms.into_iter().collect())
    }

    /// Boolean subalgebra from an arbitrary orthogonal partition of top.
    pub fn boolean_from_partition(&self, parts: &[ElementSet]) -> Result<BooleanBlock, LatticeError> {
        let mut atoms = Vec::with_capacity(parts.len());
        for &part in parts {
            atoms.push(self.require(part)?);
        }
        self.block_from_atoms(atoms)
    }

    fn block_from_atoms(&self, atoms: Vec<usize>) -> Result<BooleanBlock, LatticeError> {
        for (k, &i) in atoms.iter().enumerate() {
            for &j in &atoms[k + 1..] {
                if !self.orthogonal_at(i, j) {
                    return Err(LatticeError::NotOrthogonal {
                        a: self.elements[i],
                        b: self.elements[j],
                    });
                }
            }
        }
        let join_all = atoms
            .iter()
            .fold(self.bottom, |acc, &i| self.join_at(acc, i));
        if join_all != self.top {
            return Err(LatticeError::JoinNotTop {
                join: self.elements[join_all],
            });
        }

        let mut carrier: BTreeSet<usize> = BTreeSet::new();
        for pick in 0u64..(1u64 << atoms.len()) {
            let join = atoms
                .iter()
                .enumerate()
                .filter(|(k, _)| pick & (1 << k) != 0)
                .fold(self.bottom, |acc, (_, &i)| self.join_at(acc, i));
            carrier.insert(join);
        }
        let carrier: Vec<usize> = carrier.into_iter().collect();
        for &a in &carrier {
            for &b in &carrier {
                for &c in &carrier {
                    let left = self.meet_at(a, self.join_at(b, c));
                    let right = self.join_at(self.meet_at(a, b), self.meet_at(a, c));
                    if left != right {
                        return Err(LatticeError::NotDistributive {
                            a: self.elements[a],
                            b: self.elements[b],
                            c: self.elements[c],
                        });
                    }
                    let left = self.join_at(a, self.meet_at(b, c));
                    let right = self.meet_at(self.join_at(a, b), self.join_at(a, c));
                    if left != right {
                        return Err(LatticeError::NotDistributive {
                            a: self.elements[a],
                            b: self.elements[b],
                            c: self.elements[c],
                        });
                    }
                }
            }
        }
        Ok(BooleanBlock {
            atoms: atoms.iter().map(|&i| self.elements[i]).collect(),
            carrier: carrier.iter().map(|&i| self.elements[i]).collect(),
        })
    }

    /// Cover pairs (lower index, upper index) of the inclusion order.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut covers = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || !self.leq_at(i, j) {
                    continue;
                }
                let between = (0..n).any(|k| {
                    k != i && k != j && self.leq_at(i, k) && self.leq_at(k, j)
                });
                if !between {
                    covers.push((i, j));
                }
            }
        }
        covers.sort_unstable();
        covers
    }

    /// Compare the member list against the brute-force subset sweep: a set
    /// is a member exactly when it equals its own biorthogonal.
    pub fn verify_by_sweep(&self, poset: &Poset) -> Result<SweepCheck, SweepViolation> {
        let mut checked = 0u64;
        for subset in self.universe.subsets() {
            checked += 1;
            let closed = biortho(poset, subset).members == subset;
            let member = self.position.contains_key(&subset);
            if closed != member {
                return Err(SweepViolation {
                    set: subset,
                    closed,
                    member,
                });
            }
        }
        Ok(SweepCheck {
            subsets_checked: checked,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::NetDescription;

    const EXAMPLE: &str = r#"{
        "conditions": ["p", "q", "r", "s"],
        "events": ["e"],
        "arcs": [["p", "e"], ["q", "e"], ["e", "r"], ["e", "s"]]
    }"#;

    const CHAIN: &str = r#"{
        "conditions": ["b0", "b1"], "events": ["e"],
        "arcs": [["b0", "e"], ["e", "b1"]]
    }"#;

    fn setup(text: &str) -> (crate::net::Net, Poset, Lattice) {
        let net = NetDescription::parse(text).unwrap().validate().unwrap();
        let poset = Poset::from_net(&net);
        let lattice = Lattice::build(&net, &poset, 16).unwrap();
        (net, poset, lattice)
    }

    fn of(net: &crate::net::Net, names: &[&str]) -> ElementSet {
        net.set_from_names(names.iter().copied()).unwrap()
    }

    #[test]
    fn example_lattice_members() {
        let (net, _, lat) = setup(EXAMPLE);
        assert_eq!(lat.len(), 6);
        let mut expect = vec![
            ElementSet::EMPTY,
            of(&net, &["p"]),
            of(&net, &["q"]),
            of(&net, &["r"]),
            of(&net, &["s"]),
            net.universe(),
        ];
        expect.sort_unstable();
        assert_eq!(lat.elements(), expect.as_slice());
        assert_eq!(lat.bottom(), ElementSet::EMPTY);
        assert_eq!(lat.top(), net.universe());
    }

    #[test]
    fn chain_lattice_is_two_element() {
        let (net, _, lat) = setup(CHAIN);
        assert_eq!(lat.len(), 2);
        assert_eq!(lat.bottom(), ElementSet::EMPTY);
        assert_eq!(lat.top(), net.universe());
        assert_eq!(lat.hasse(), vec![(lat.bottom_index(), lat.top_index())]);
    }

    #[test]
    fn bound_is_enforced() {
        let net = NetDescription::parse(EXAMPLE).unwrap().validate().unwrap();
        let poset = Poset::from_net(&net);
        assert!(matches!(
            Lattice::build(&net, &poset, 4),
            Err(LatticeError::BoundExceeded { elements: 5, bound: 4 })
        ));
    }

    #[test]
    fn meet_join_ortho_examples() {
        let (net, _, lat) = setup(EXAMPLE);
        let p = of(&net, &["p"]);
        let q = of(&net, &["q"]);
        let r = of(&net, &["r"]);
        assert_eq!(lat.orthocomplement(p).unwrap(), q);
        assert_eq!(lat.join(p, r).unwrap(), net.universe());
        assert_eq!(lat.meet(p, q).unwrap(), ElementSet::EMPTY);
        assert_eq!(lat.meet(net.universe(), p).unwrap(), p);
        assert!(lat.meet(of(&net, &["e"]), p).is_err());
    }

    #[test]
    fn ortholattice_and_orthomodular_laws_hold() {
        for text in [EXAMPLE, CHAIN] {
            let (_, _, lat) = setup(text);
            assert_eq!(lat.check_ortholattice(), Ok(()));
            assert_eq!(lat.check_orthomodular(), Ok(()));
            assert_eq!(lat.check_regular(), Ok(()));
        }
    }

    #[test]
    fn hasse_of_example() {
        let (_, _, lat) = setup(EXAMPLE);
        let covers = lat.hasse();
        assert_eq!(covers.len(), 8);
        let b = lat.bottom_index();
        let t = lat.top_index();
        // Four atoms, each covering bottom and covered by top.
        assert_eq!(covers.iter().filter(|&&(i, _)| i == b).count(), 4);
        assert_eq!(covers.iter().filter(|&&(_, j)| j == t).count(), 4);
    }

    #[test]
    fn orthogonality_examples() {
        let (net, _, lat) = setup(EXAMPLE);
        assert!(lat.are_orthogonal(of(&net, &["p"]), of(&net, &["q"])).unwrap());
        assert!(!lat.are_orthogonal(of(&net, &["p"]), of(&net, &["r"])).unwrap());
        assert!(lat.are_orthogonal(ElementSet::EMPTY, ElementSet::EMPTY).unwrap());
    }

    #[test]
    fn compatibility_examples() {
        let (net, _, lat) = setup(EXAMPLE);
        let p = of(&net, &["p"]);
        let q = of(&net, &["q"]);
        let r = of(&net, &["r"]);
        let witness = lat.compatibility_witness(p, q).unwrap().unwrap();
        assert_eq!(witness, (p, ElementSet::EMPTY, q));
        assert!(lat.compatibility_witness(p, r).unwrap().is_none());
        // Comparable members are always compatible.
        assert!(lat.compatibility_witness(p, net.universe()).unwrap().is_some());
    }

    #[test]
    fn compatibility_matches_decomposition_on_example() {
        let (_, _, lat) = setup(EXAMPLE);
        for i in 0..lat.len() {
            for j in 0..lat.len() {
                assert_eq!(
                    lat.are_compatible_at(i, j),
                    lat.compatible_by_decomposition_at(i, j),
                    "disagreement at ({i}, {j})"
                );
            }
        }
    }

    #[test]
    fn line_state_example() {
        let (net, poset, lat) = setup(EXAMPLE);
        let line = of(&net, &["q", "e", "s"]);
        let state = lat.line_state(&poset, line).unwrap();
        let truths: Vec<(ElementSet, bool)> = lat
            .elements()
            .iter()
            .copied()
            .zip(state.values.iter().copied())
            .collect();
        for (member, value) in truths {
            assert_eq!(value, member.intersects(&line));
        }
        assert!(state.values[lat.top_index()]);
        assert!(!state.values[lat.bottom_index()]);

        assert!(matches!(
            lat.line_state(&poset, of(&net, &["p", "q"])),
            Err(LatticeError::NotALine { .. })
        ));
        assert!(matches!(
            lat.line_state(&poset, of(&net, &["p", "e"])),
            Err(LatticeError::NotALine { .. })
        ));
    }

    #[test]
    fn verify_state_on_every_line() {
        let (_, poset, lat) = setup(EXAMPLE);
        for line in poset.lines() {
            let state = lat.line_state(&poset, line.members()).unwrap();
            let check = lat.verify_state(&state, None).unwrap();
            assert_eq!(check.families_checked, 9);
        }
    }

    #[test]
    fn verify_state_rejects_corrupted_assignments() {
        let (_, poset, lat) = setup(EXAMPLE);
        let line = poset.lines()[0].members();
        let mut state = lat.line_state(&poset, line).unwrap();
        state.values[lat.top_index()] = false;
        assert_eq!(lat.verify_state(&state, None), Err(StateViolation::TopNotTrue));

        let mut state = lat.line_state(&poset, line).unwrap();
        // Flip one atom the line crosses; some orthogonal pair now sums
        // to zero under a join the state calls true.
        let crossed = (0..lat.len())
            .find(|&i| state.values[i] && i != lat.top_index())
            .unwrap();
        state.values[crossed] = false;
        assert!(matches!(
            lat.verify_state(&state, None),
            Err(StateViolation::Additivity { .. })
        ));
    }

    #[test]
    fn bounded_state_check_still_runs() {
        let (_, poset, lat) = setup(EXAMPLE);
        let state = lat.line_state(&poset, poset.lines()[0].members()).unwrap();
        assert!(lat.verify_state(&state, Some(2)).is_ok());
        assert!(lat.default_family_bound().is_none());
    }

    #[test]
    fn xor_check_example() {
        let (_, poset, lat) = setup(EXAMPLE);
        let check = lat.check_line_crossing_xor(&poset).unwrap();
        assert_eq!(check.pairs_checked, 24);
    }

    #[test]
    fn bcut_generation_example() {
        let (_, poset, lat) = setup(EXAMPLE);
        let report = lat.check_bcut_generates(&poset);
        assert!(report.violations.is_empty());
        assert!(report.skipped.is_empty());
        // Four singletons with one B-cut each, top with two.
        assert_eq!(report.pairs_checked, 6);
    }

    #[test]
    fn boolean_block_from_bcut() {
        let (net, poset, lat) = setup(EXAMPLE);
        let cut = poset.as_cut(of(&net, &["p", "q"])).unwrap();
        let block = lat.boolean_from_bcut(&poset, &cut).unwrap();
        assert_eq!(block.atoms, vec![of(&net, &["p"]), of(&net, &["q"])]);
        assert_eq!(block.carrier.len(), 4);
        assert!(block.carrier.contains(&ElementSet::EMPTY));
        assert!(block.carrier.contains(&net.universe()));

        let event_cut = poset.as_cut(of(&net, &["e"])).unwrap();
        assert!(matches!(
            lat.boolean_from_bcut(&poset, &event_cut),
            Err(LatticeError::NotABCut { .. })
        ));
    }

    #[test]
    fn degenerate_block_on_chain() {
        let (net, poset, lat) = setup(CHAIN);
        let cut = poset.as_cut(of(&net, &["b0"])).unwrap();
        let block = lat.boolean_from_bcut(&poset, &cut).unwrap();
        // The single condition closes to the whole universe.
        assert_eq!(block.atoms, vec![net.universe()]);
        assert_eq!(block.carrier, vec![ElementSet::EMPTY, net.universe()]);
    }

    #[test]
    fn boolean_block_from_partition() {
        let (net, _, lat) = setup(EXAMPLE);
        let block = lat
            .boolean_from_partition(&[of(&net, &["p"]), of(&net, &["q"])])
            .unwrap();
        assert_eq!(block.carrier.len(), 4);

        assert!(matches!(
            lat.boolean_from_partition(&[of(&net, &["p"]), of(&net, &["r"])]),
            Err(LatticeError::NotOrthogonal { .. })
        ));
        assert!(matches!(
            lat.boolean_from_partition(&[of(&net, &["p"])]),
            Err(LatticeError::JoinNotTop { .. })
        ));
        assert!(matches!(
            lat.boolean_from_partition(&[of(&net, &["e"])]),
            Err(LatticeError::NotAMember { .. })
        ));
    }

    #[test]
    fn sweep_matches_members() {
        for text in [EXAMPLE, CHAIN] {
            let (_, poset, lat) = setup(text);
            let check = lat.verify_by_sweep(&poset).unwrap();
            assert_eq!(check.subsets_checked, 1 << poset.len());
        }
    }
}
