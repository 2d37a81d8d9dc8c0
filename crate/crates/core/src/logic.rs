//! Propositional formulas evaluated inside the lattice of closed sets.
//!
//! Connectives map to lattice operations: negation to orthocomplement,
//! conjunction to meet, disjunction to join, and implication f -> g to
//! f' v g. A line plays the role of a possible history: a formula is
//! satisfied when its value is crossed by the line. The law sweep measures
//! how far that satisfaction relation is from truth-functional.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::lattice::{Lattice, LatticeError};
use crate::order::Poset;
use crate::set::ElementSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormulaParseError {
    #[error("empty formula")]
    Empty,
    #[error("unexpected character {ch:?} at byte {at}")]
    UnexpectedChar { ch: char, at: usize },
    #[error("unexpected {found} at byte {at}, expected {expected}")]
    UnexpectedToken {
        found: String,
        at: usize,
        expected: &'static str,
    },
    #[error("formula ended early, expected {expected}")]
    UnexpectedEnd { expected: &'static str },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LogicError {
    #[error("atom {name:?} has no binding")]
    UnboundAtom { name: String },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Token {
    Ident(usize, usize),
    Not(usize),
    And(usize),
    Or(usize),
    Implies(usize),
    Open(usize),
    Close(usize),
}

impl Token {
    fn describe(self, text: &str) -> (String, usize) {
        match self {
            Token::Ident(a, b) => (format!("atom {:?}", &text[a..b]), a),
            Token::Not(a) => ("\"!\"".into(), a),
            Token::And(a) => ("\"&\"".into(), a),
            Token::Or(a) => ("\"|\"".into(), a),
            Token::Implies(a) => ("\"->\"".into(), a),
            Token::Open(a) => ("\"(\"".into(), a),
            Token::Close(a) => ("\")\"".into(), a),
        }
    }
}

fn lex(text: &str) -> Result<Vec<Token>, FormulaParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'!' => {
                tokens.push(Token::Not(i));
                i += 1;
            }
            b'&' => {
                tokens.push(Token::And(i));
                i += 1;
            }
            b'|' => {
                tokens.push(Token::Or(i));
                i += 1;
            }
            b'(' => {
                tokens.push(Token::Open(i));
                i += 1;
            }
            b')' => {
                tokens.push(Token::Close(i));
                i += 1;
            }
            b'-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    tokens.push(Token::Implies(i));
                    i += 2;
                } else {
                    return Err(FormulaParseError::UnexpectedChar { ch: '-', at: i });
                }
            }
            b'A'..=b'Z' | b'a'..=b'z' | b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                tokens.push(Token::Ident(start, i));
            }
            _ => {
                let ch = text[i..].chars().next().unwrap();
                return Err(FormulaParseError::UnexpectedChar { ch, at: i });
            }
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    text: &'a str,
    tokens: Vec<Token>,
    at: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<Token> {
        self.tokens.get(self.at).copied()
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.peek();
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, token: Token, expected: &'static str) -> FormulaParseError {
        let (found, at) = token.describe(self.text);
        FormulaParseError::UnexpectedToken { found, at, expected }
    }

    // implication is right associative and binds loosest
    fn implies(&mut self) -> Result<Formula, FormulaParseError> {
        let lhs = self.or()?;
        if let Some(Token::Implies(_)) = self.peek() {
            self.bump();
            let rhs = self.implies()?;
            return Ok(Formula::Implies(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, FormulaParseError> {
        let mut lhs = self.and()?;
        while let Some(Token::Or(_)) = self.peek() {
            self.bump();
            let rhs = self.and()?;
            lhs = Formula::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, FormulaParseError> {
        let mut lhs = self.unary()?;
        while let Some(Token::And(_)) = self.peek() {
            self.bump();
            let rhs = self.unary()?;
            lhs = Formula::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, FormulaParseError> {
        match self.bump() {
            Some(Token::Not(_)) => Ok(Formula::Not(Box::new(self.unary()?))),
            Some(Token::Ident(a, b)) => Ok(Formula::Atom(self.text[a..b].to_string())),
            Some(Token::Open(_)) => {
                let inner = self.implies()?;
                match self.bump() {
                    Some(Token::Close(_)) => Ok(inner),
                    Some(t) => Err(self.unexpected(t, "\")\"")),
                    None => Err(FormulaParseError::UnexpectedEnd { expected: "\")\"" }),
                }
            }
            Some(t) => Err(self.unexpected(t, "an atom, \"!\", or \"(\"")),
            None => Err(FormulaParseError::UnexpectedEnd {
                expected: "an atom, \"!\", or \"(\"",
            }),
        }
    }
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(name.to_string())
    }

    /// Parse `!` / `&` / `|` / `->` with the usual precedence; `->` is
    /// right associative.
    pub fn parse(text: &str) -> Result<Formula, FormulaParseError> {
        let tokens = lex(text)?;
        if tokens.is_empty() {
            return Err(FormulaParseError::Empty);
        }
        let mut parser = Parser { text, tokens, at: 0 };
        let formula = parser.implies()?;
        match parser.bump() {
            None => Ok(formula),
            Some(t) => Err(parser.unexpected(t, "end of formula")),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Atom(_) => 5,
            Formula::Not(_) => 4,
            Formula::And(..) => 3,
            Formula::Or(..) => 2,
            Formula::Implies(..) => 1,
        }
    }

    fn write(&self, out: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let prec = self.precedence();
        if prec < min {
            write!(out, "(")?;
        }
        match self {
            Formula::Atom(name) => write!(out, "{name}")?,
            Formula::Not(inner) => {
                write!(out, "!")?;
                inner.write(out, prec)?;
            }
            Formula::And(l, r) => {
                l.write(out, prec)?;
                write!(out, " & ")?;
                r.write(out, prec + 1)?;
            }
            Formula::Or(l, r) => {
                l.write(out, prec)?;
                write!(out, " | ")?;
                r.write(out, prec + 1)?;
            }
            Formula::Implies(l, r) => {
                l.write(out, prec + 1)?;
                write!(out, " -> ")?;
                r.write(out, prec)?;
            }
        }
        if prec < min {
            write!(out, ")")?;
        }
        Ok(())
    }

    pub fn atoms(&self) -> Vec<&str> {
        fn walk<'f>(f: &'f Formula, into: &mut Vec<&'f str>) {
            match f {
                Formula::Atom(name) => {
                    if !into.contains(&name.as_str()) {
                        into.push(name);
                    }
                }
                Formula::Not(inner) => walk(inner, into),
                Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                    walk(l, into);
                    walk(r, into);
                }
            }
        }
        let mut names = Vec::new();
        walk(self, &mut names);
        names
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(out, 0)
    }
}

/// Map a formula to its lattice value under an atom binding.
pub fn interpret(
    formula: &Formula,
    binding: &BTreeMap<String, ElementSet>,
    lattice: &Lattice,
) -> Result<ElementSet, LogicError> {
    let i = interpret_at(formula, binding, lattice)?;
    Ok(lattice.element(i))
}

fn interpret_at(
    formula: &Formula,
    binding: &BTreeMap<String, ElementSet>,
    lattice: &Lattice,
) -> Result<usize, LogicError> {
    match formula {
        Formula::Atom(name) => {
            let set = binding
                .get(name)
                .copied()
                .ok_or_else(|| LogicError::UnboundAtom { name: name.clone() })?;
            Ok(lattice
                .index_of(set)
                .ok_or(LatticeError::NotAMember { set })?)
        }
        Formula::Not(inner) => Ok(lattice.ortho_at(interpret_at(inner, binding, lattice)?)),
        Formula::And(l, r) => Ok(lattice.meet_at(
            interpret_at(l, binding, lattice)?,
            interpret_at(r, binding, lattice)?,
        )),
        Formula::Or(l, r) => Ok(lattice.join_at(
            interpret_at(l, binding, lattice)?,
            interpret_at(r, binding, lattice)?,
        )),
        Formula::Implies(l, r) => {
            let l = interpret_at(l, binding, lattice)?;
            let r = interpret_at(r, binding, lattice)?;
            Ok(lattice.join_at(lattice.ortho_at(l), r))
        }
    }
}

/// An atom binding together with the line acting as the history.
#[derive(Debug, Clone)]
pub struct Interpretation {
    binding: BTreeMap<String, ElementSet>,
    line: ElementSet,
}

impl Interpretation {
    pub fn new(
        lattice: &Lattice,
        poset: &Poset,
        binding: BTreeMap<String, ElementSet>,
        line: ElementSet,
    ) -> Result<Interpretation, LogicError> {
        if poset.as_line(line).is_none() {
            return Err(LatticeError::NotALine { set: line }.into());
        }
        for &set in binding.values() {
            if lattice.index_of(set).is_none() {
                return Err(LatticeError::NotAMember { set }.into());
            }
        }
        Ok(Interpretation { binding, line })
    }

    pub fn binding(&self) -> &BTreeMap<String, ElementSet> {
        &self.binding
    }

    pub fn line(&self) -> ElementSet {
        self.line
    }

    pub fn value(&self, lattice: &Lattice, formula: &Formula) -> Result<ElementSet, LogicError> {
        interpret(formula, &self.binding, lattice)
    }

    /// True when the line crosses the formula's value.
    pub fn satisfies(&self, lattice: &Lattice, formula: &Formula) -> Result<bool, LogicError> {
        Ok(self.value(lattice, formula)?.intersects(&self.line))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

impl fmt::Display for Direction {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::Forward => write!(out, "forward"),
            Direction::Backward => write!(out, "backward"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct LawCounterexample {
    pub clause: u8,
    pub direction: Direction,
    pub f: Formula,
    pub g: Option<Formula>,
    pub binding: Vec<(String, ElementSet)>,
    pub line: ElementSet,
    pub value_f: ElementSet,
    pub value_g: Option<ElementSet>,
}

#[derive(Debug, Clone, Default)]
pub struct DirectionStats {
    pub checked: u64,
    pub failures: u64,
    pub counterexamples: Vec<LawCounterexample>,
}

#[derive(Debug, Clone)]
pub struct ClauseReport {
    pub clause: u8,
    pub forward: DirectionStats,
    pub backward: DirectionStats,
}

/// Outcome of sweeping the four truth-functionality clauses over formula
/// pairs, atom bindings, and lines.
#[derive(Debug, Clone)]
pub struct LawReport {
    pub clauses: Vec<ClauseReport>,
}

impl LawReport {
    pub fn clause(&self, clause: u8) -> &ClauseReport {
        &self.clauses[clause as usize - 1]
    }
}

/// Shape of the law sweep: which atoms appear and how deep the operand
/// formulas nest.
#[derive(Debug, Clone)]
pub struct LawSweepConfig {
    pub atoms: Vec<String>,
    pub max_depth: usize,
}

impl Default for LawSweepConfig {
    fn default() -> Self {
        LawSweepConfig {
            atoms: vec!["f".to_string(), "g".to_string()],
            max_depth: 1,
        }
    }
}

/// All formulas over the given atoms nesting at most `depth` connectives.
pub fn enumerate_formulas(atoms: &[String], depth: usize) -> Vec<Formula> {
    let mut formulas: Vec<Formula> = atoms
        .iter()
        .map(|a| Formula::Atom(a.clone()))
        .collect();
    for _ in 0..depth {
        let prev = formulas.clone();
        for a in &prev {
            let candidate = Formula::Not(Box::new(a.clone()));
            if !formulas.contains(&candidate) {
                formulas.push(candidate);
            }
        }
        for a in &prev {
            for b in &prev {
                for candidate in [
                    Formula::And(Box::new(a.clone()), Box::new(b.clone())),
                    Formula::Or(Box::new(a.clone()), Box::new(b.clone())),
                    Formula::Implies(Box::new(a.clone()), Box::new(b.clone())),
                ] {
                    if !formulas.contains(&candidate) {
                        formulas.push(candidate);
                    }
                }
            }
        }
    }
    formulas
}

/// Sweep the four clauses tying satisfaction of a compound formula to its
/// parts, in both directions, across every operand pair, binding, and line.
///
/// Clause 1: f & g is satisfied iff f and g both are. Clause 2: !f is
/// satisfied iff f is not. Clause 3: f | g is satisfied iff the values of
/// f and g are compatible and one of them is satisfied. Clause 4: f -> g
/// is satisfied iff the value of f lies below the value of g.
pub fn check_satisfaction_laws(
    lattice: &Lattice,
    poset: &Poset,
    config: &LawSweepConfig,
) -> LawReport {
    let formulas = enumerate_formulas(&config.atoms, config.max_depth);
    let lines: Vec<ElementSet> = poset.lines().iter().map(|l| l.members()).collect();
    let n = lattice.len();
    let atom_count = config.atoms.len();

    let half: Vec<Vec<bool>> = (0..n)
        .map(|i| (i..n).map(|j| lattice.are_compatible_at(i, j)).collect())
        .collect();
    let compat = |i: usize, j: usize| half[i.min(j)][i.max(j) - i.min(j)];

    let mut clauses: Vec<ClauseReport> = (1..=4)
        .map(|clause| ClauseReport {
            clause,
            forward: DirectionStats::default(),
            backward: DirectionStats::default(),
        })
        .collect();

    // Odometer over one lattice element per atom.
    let mut choice = vec![0usize; atom_count];
    loop {
        let binding: BTreeMap<String, ElementSet> = config
            .atoms
            .iter()
            .zip(&choice)
            .map(|(name, &i)| (name.clone(), lattice.element(i)))
            .collect();
        let binding_list: Vec<(String, ElementSet)> = config
            .atoms
            .iter()
            .zip(&choice)
            .map(|(name, &i)| (name.clone(), lattice.element(i)))
            .collect();
        let values: Vec<usize> = formulas
            .iter()
            .map(|f| interpret_at(f, &binding, lattice).expect("bound atoms over members"))
            .collect();

        for &line in &lines {
            let crossed: Vec<bool> = (0..n)
                .map(|i| lattice.element(i).intersects(&line))
                .collect();
            let record = |clause: usize,
                              direction: Direction,
                              holds: bool,
                              fi: usize,
                              gi: Option<usize>,
                              stats_clauses: &mut Vec<ClauseReport>| {
                let stats = match direction {
                    Direction::Forward => &mut stats_clauses[clause - 1].forward,
                    Direction::Backward => &mut stats_clauses[clause - 1].backward,
                };
                stats.checked += 1;
                if !holds {
                    stats.failures += 1;
                    stats.counterexamples.push(LawCounterexample {
                        clause: clause as u8,
                        direction,
                        f: formulas[fi].clone(),
                        g: gi.map(|g| formulas[g].clone()),
                        binding: binding_list.clone(),
                        line,
                        value_f: lattice.element(values[fi]),
                        value_g: gi.map(|g| lattice.element(values[g])),
                    });
                }
            };

            for (fi, &vf) in values.iter().enumerate() {
                let sat_f = crossed[vf];
                // clause 2
                let sat_not = crossed[lattice.ortho_at(vf)];
                record(2, Direction::Forward, !sat_not || !sat_f, fi, None, &mut clauses);
                record(2, Direction::Backward, sat_f || sat_not, fi, None, &mut clauses);

                for (gi, &vg) in values.iter().enumerate() {
                    let sat_g = crossed[vg];
                    // clause 1
                    let sat_and = crossed[lattice.meet_at(vf, vg)];
                    record(
                        1,
                        Direction::Forward,
                        !sat_and || (sat_f && sat_g),
                        fi,
                        Some(gi),
                        &mut clauses,
                    );
                    record(
                        1,
                        Direction::Backward,
                        !(sat_f && sat_g) || sat_and,
                        fi,
                        Some(gi),
                        &mut clauses,
                    );
                    // clause 3
                    let sat_or = crossed[lattice.join_at(vf, vg)];
                    let side = compat(vf, vg) && (sat_f || sat_g);
                    record(3, Direction::Forward, !sat_or || side, fi, Some(gi), &mut clauses);
                    record(3, Direction::Backward, !side || sat_or, fi, Some(gi), &mut clauses);
                    // clause 4
                    let sat_imp = crossed[lattice.join_at(lattice.ortho_at(vf), vg)];
                    let below = lattice.leq_at(vf, vg);
                    record(4, Direction::Forward, !sat_imp || below, fi, Some(gi), &mut clauses);
                    record(4, Direction::Backward, !below || sat_imp, fi, Some(gi), &mut clauses);
                }
            }
        }

        // advance the odometer
        let mut pos = 0;
        loop {
            if pos == atom_count {
                return LawReport { clauses };
            }
            choice[pos] += 1;
            if choice[pos] < n {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::NetDescription;
    use proptest::prelude::*;

    const EXAMPLE: &str = r#"{
        "conditions": ["p", "q", "r", "s"],
        "events": ["e"],
        "arcs": [["p", "e"], ["q", "e"], ["e", "r"], ["e", "s"]]
    }"#;

    fn setup() -> (crate::net::Net, Poset, Lattice) {
        let net = NetDescription::parse(EXAMPLE).unwrap().validate().unwrap();
        let poset = Poset::from_net(&net);
        let lattice = Lattice::build(&net, &poset, 16).unwrap();
        (net, poset, lattice)
    }

    fn of(net: &crate::net::Net, names: &[&str]) -> ElementSet {
        net.set_from_names(names.iter().copied()).unwrap()
    }

    #[test]
    fn parse_precedence_and_associativity() {
        let f = Formula::parse("!a & b | c -> d -> e").unwrap();
        assert_eq!(f.to_string(), "!a & b | c -> d -> e");
        assert_eq!(
            f,
            Formula::Implies(
                Box::new(Formula::Or(
                    Box::new(Formula::And(
                        Box::new(Formula::Not(Box::new(Formula::atom("a")))),
                        Box::new(Formula::atom("b")),
                    )),
                    Box::new(Formula::atom("c")),
                )),
                Box::new(Formula::Implies(
                    Box::new(Formula::atom("d")),
                    Box::new(Formula::atom("e")),
                )),
            )
        );
    }

    #[test]
    fn parse_parens_override() {
        let f = Formula::parse("a & (b | c)").unwrap();
        assert_eq!(f.to_string(), "a & (b | c)");
        let g = Formula::parse("(a -> b) -> c").unwrap();
        assert_eq!(g.to_string(), "(a -> b) -> c");
        assert_eq!(Formula::parse("((a))").unwrap(), Formula::atom("a"));
    }

    #[test]
    fn display_drops_redundant_parens() {
        let f = Formula::parse("(a & b) & c").unwrap();
        assert_eq!(f.to_string(), "a & b & c");
        let g = Formula::parse("a -> (b -> c)").unwrap();
        assert_eq!(g.to_string(), "a -> b -> c");
        let h = Formula::parse("!(!a)").unwrap();
        assert_eq!(h.to_string(), "!!a");
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert_eq!(Formula::parse("").unwrap_err(), FormulaParseError::Empty);
        assert_eq!(Formula::parse("   ").unwrap_err(), FormulaParseError::Empty);
        assert_eq!(
            Formula::parse("a @ b").unwrap_err(),
            FormulaParseError::UnexpectedChar { ch: '@', at: 2 }
        );
        assert_eq!(
            Formula::parse("a - b").unwrap_err(),
            FormulaParseError::UnexpectedChar { ch: '-', at: 2 }
        );
        assert!(matches!(
            Formula::parse("a &").unwrap_err(),
            FormulaParseError::UnexpectedEnd { .. }
        ));
        assert!(matches!(
            Formula::parse("(a | b").unwrap_err(),
            FormulaParseError::UnexpectedEnd { .. }
        ));
        assert!(matches!(
            Formula::parse("a b").unwrap_err(),
            FormulaParseError::UnexpectedToken { at: 2, .. }
        ));
        assert!(matches!(
            Formula::parse("& a").unwrap_err(),
            FormulaParseError::UnexpectedToken { at: 0, .. }
        ));
    }

    #[test]
    fn atom_collection_preserves_first_appearance() {
        let f = Formula::parse("g & f | g").unwrap();
        assert_eq!(f.atoms(), vec!["g", "f"]);
    }

    #[test]
    fn interpret_uses_lattice_operations() {
        let (net, _, lat) = setup();
        let mut binding = BTreeMap::new();
        binding.insert("f".to_string(), of(&net, &["p"]));
        binding.insert("g".to_string(), of(&net, &["r"]));

        let or = Formula::parse("f | g").unwrap();
        assert_eq!(interpret(&or, &binding, &lat).unwrap(), net.universe());
        let and = Formula::parse("f & g").unwrap();
        assert_eq!(interpret(&and, &binding, &lat).unwrap(), ElementSet::EMPTY);
        let neg = Formula::parse("!f").unwrap();
        assert_eq!(interpret(&neg, &binding, &lat).unwrap(), of(&net, &["q"]));
        let imp = Formula::parse("f -> g").unwrap();
        assert_eq!(interpret(&imp, &binding, &lat).unwrap(), net.universe());

        let unbound = Formula::parse("h").unwrap();
        assert_eq!(
            interpret(&unbound, &binding, &lat).unwrap_err(),
            LogicError::UnboundAtom { name: "h".to_string() }
        );
        let mut bad = BTreeMap::new();
        bad.insert("f".to_string(), of(&net, &["e"]));
        assert!(matches!(
            interpret(&Formula::atom("f"), &bad, &lat).unwrap_err(),
            LogicError::Lattice(LatticeError::NotAMember { .. })
        ));
    }

    #[test]
    fn satisfaction_depends_on_the_line() {
        let (net, poset, lat) = setup();
        let mut binding = BTreeMap::new();
        binding.insert("f".to_string(), of(&net, &["p"]));
        binding.insert("g".to_string(), of(&net, &["r"]));

        let them = Interpretation::new(&lat, &poset, binding.clone(), of(&net, &["q", "e", "s"]))
            .unwrap();
        let or = Formula::parse("f | g").unwrap();
        // the join is the top element, so the line crosses it while
        // missing both operands
        assert!(them.satisfies(&lat, &or).unwrap());
        assert!(!them.satisfies(&lat, &Formula::atom("f")).unwrap());
        assert!(!them.satisfies(&lat, &Formula::atom("g")).unwrap());

        let other = Interpretation::new(&lat, &poset, binding, of(&net, &["p", "e", "r"])).unwrap();
        assert!(other.satisfies(&lat, &Formula::atom("f")).unwrap());
        assert!(other.satisfies(&lat, &or).unwrap());
    }

    #[test]
    fn interpretation_rejects_bad_inputs() {
        let (net, poset, lat) = setup();
        assert!(matches!(
            Interpretation::new(&lat, &poset, BTreeMap::new(), of(&net, &["p", "q"])),
            Err(LogicError::Lattice(LatticeError::NotALine { .. }))
        ));
        let mut binding = BTreeMap::new();
        binding.insert("f".to_string(), of(&net, &["p", "r"]));
        assert!(matches!(
            Interpretation::new(&lat, &poset, binding, of(&net, &["p", "e", "r"])),
            Err(LogicError::Lattice(LatticeError::NotAMember { .. }))
        ));
    }

    #[test]
    fn formula_enumeration_counts() {
        let atoms = vec!["f".to_string(), "g".to_string()];
        assert_eq!(enumerate_formulas(&atoms, 0).len(), 2);
        assert_eq!(enumerate_formulas(&atoms, 1).len(), 16);
    }

    #[test]
    fn law_sweep_catalog_on_the_example() {
        let (net, poset, lat) = setup();
        let report = check_satisfaction_laws(&lat, &poset, &LawSweepConfig::default());

        let pair_checks = 16u64 * 16 * 36 * 4;
        let single_checks = 16u64 * 36 * 4;
        for clause in [1u8, 3, 4] {
            assert_eq!(report.clause(clause).forward.checked, pair_checks);
            assert_eq!(report.clause(clause).backward.checked, pair_checks);
        }
        assert_eq!(report.clause(2).forward.checked, single_checks);

        // conjunction distributes one way only
        assert_eq!(report.clause(1).forward.failures, 0);
        assert!(report.clause(1).backward.failures > 0);
        // negation is exact
        assert_eq!(report.clause(2).forward.failures, 0);
        assert_eq!(report.clause(2).backward.failures, 0);
        // disjunction needs compatibility, which the sweep finds violated
        assert!(report.clause(3).forward.failures > 0);
        assert_eq!(report.clause(3).backward.failures, 0);
        // implication overshoots inclusion
        assert!(report.clause(4).forward.failures > 0);
        assert_eq!(report.clause(4).backward.failures, 0);

        // the canonical disjunction counterexample must be among them
        let p = of(&net, &["p"]);
        let r = of(&net, &["r"]);
        let line = of(&net, &["q", "e", "s"]);
        let found = report
            .clause(3)
            .forward
            .counterexamples
            .iter()
            .any(|ce| {
                ce.f == Formula::atom("f")
                    && ce.g == Some(Formula::atom("g"))
                    && ce.value_f == p
                    && ce.value_g == Some(r)
                    && ce.line == line
            });
        assert!(found, "expected the atom pair (p, r) on line q e s");
    }

    #[test]
    fn law_sweep_is_classical_on_a_chain() {
        let text = r#"{
            "conditions": ["b0", "b1"], "events": ["e"],
            "arcs": [["b0", "e"], ["e", "b1"]]
        }"#;
        let net = NetDescription::parse(text).unwrap().validate().unwrap();
        let poset = Poset::from_net(&net);
        let lat = Lattice::build(&net, &poset, 16).unwrap();
        let report = check_satisfaction_laws(&lat, &poset, &LawSweepConfig::default());
        for clause in &report.clauses {
            assert_eq!(clause.forward.failures, 0, "clause {}", clause.clause);
            assert_eq!(clause.backward.failures, 0, "clause {}", clause.clause);
        }
    }

    fn formula_strategy() -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![
            Just(Formula::atom("f")),
            Just(Formula::atom("g")),
            Just(Formula::atom("h_3")),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|f| Formula::Not(Box::new(f))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Formula::And(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Formula::Or(Box::new(a), Box::new(b))),
                (inner.clone(), inner)
                    .prop_map(|(a, b)| Formula::Implies(Box::new(a), Box::new(b))),
            ]
        })
    }

    proptest! {
        #[test]
        fn printing_then_parsing_is_identity(f in formula_strategy()) {
            let printed = f.to_string();
            let reparsed = Formula::parse(&printed).unwrap();
            prop_assert_eq!(reparsed, f);
        }
    }
}
