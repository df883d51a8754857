//! Program syntax: formulas, weighted rules, programs and interpretations.
//!
//! A program is a finite *multiset* of weighted rules `w : R`, where `w` is
//! either a real soft weight or the reserved symbol `alpha` (a hard rule) and
//! `R` is a propositional formula over atoms, `top`, `bot`, negation
//! (`~` / `not`), conjunction (`&`, or `,` inside rule bodies), disjunction
//! (`|`) and implication (`->`, with `H <- B` as rule sugar). Duplicate rules
//! are meaningful and are preserved in source order.

mod parse;
mod render;

pub use parse::{parse_formula, parse_program, ParseError};
pub use render::{render_formula, render_program};

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

/// Words that the grammar claims for itself; none of them can be an atom.
pub const RESERVED_WORDS: [&str; 4] = ["alpha", "bot", "not", "top"];

/// A set of atom names. Programs carry one as their vocabulary, and the
/// enumeration-based checks take one as the domain to quantify over.
pub type Signature = BTreeSet<String>;

/// Source-legal atom names match `[a-z][A-Za-z0-9_]*` and are not reserved.
///
/// Formulas built in memory may use names outside this set (the primed
/// atoms produced by [`crate::semantics::delta_transform`] end in `'`
/// precisely so they can never collide with a parsed atom).
pub fn is_valid_atom(name: &str) -> bool {
    let mut chars = name.chars();
    let Some(first) = chars.next() else {
        return false;
    };
    first.is_ascii_lowercase()
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !RESERVED_WORDS.contains(&name)
}

/// A propositional formula. `Implies(f, Bot)` plays the role of a constraint;
/// there is no dedicated equivalence connective (build one with
/// [`Formula::iff`]).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(String),
    Top,
    Bot,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Self {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    /// `(l -> r) & (r -> l)`.
    pub fn iff(l: Formula, r: Formula) -> Self {
        Formula::and(
            Formula::implies(l.clone(), r.clone()),
            Formula::implies(r, l),
        )
    }

    /// Left-folded conjunction of a sequence; `top` for the empty sequence.
    pub fn conjoin(fs: impl IntoIterator<Item = Formula>) -> Formula {
        let mut it = fs.into_iter();
        match it.next() {
            None => Formula::Top,
            Some(first) => it.fold(first, Formula::and),
        }
    }

    /// Collect every atom occurring in the formula into `out`.
    pub fn atoms_into(&self, out: &mut Signature) {
        match self {
            Formula::Atom(name) => {
                out.insert(name.clone());
            }
            Formula::Top | Formula::Bot => {}
            Formula::Not(g) => g.atoms_into(out),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.atoms_into(out);
                r.atoms_into(out);
            }
        }
    }

    pub fn atoms(&self) -> Signature {
        let mut out = Signature::new();
        self.atoms_into(&mut out);
        out
    }
}

/// Rule weight: a finite real, or `alpha` for hard rules.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Weight {
    Soft(f64),
    Hard,
}

/// One weighted rule. `line` is provenance (1-based source line, 0 for rules
/// built in memory) and deliberately does not take part in equality.
#[derive(Clone, Debug)]
pub struct WeightedRule {
    pub weight: Weight,
    pub formula: Formula,
    pub line: u32,
}

impl WeightedRule {
    pub fn new(weight: Weight, formula: Formula) -> Self {
        WeightedRule {
            weight,
            formula,
            line: 0,
        }
    }

    pub fn soft(weight: f64, formula: Formula) -> Self {
        Self::new(Weight::Soft(weight), formula)
    }

    pub fn hard(formula: Formula) -> Self {
        Self::new(Weight::Hard, formula)
    }
}

impl PartialEq for WeightedRule {
    fn eq(&self, other: &Self) -> bool {
        self.weight == other.weight && self.formula == other.formula
    }
}

/// A finite multiset of weighted rules, in source order, together with a
/// signature that covers at least every atom occurring in a rule.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Program {
    rules: Vec<WeightedRule>,
    signature: Signature,
}

impl Program {
    /// Program whose signature is exactly the atoms of its rules.
    pub fn new(rules: Vec<WeightedRule>) -> Self {
        let mut p = Program {
            rules: Vec::new(),
            signature: Signature::new(),
        };
        for rule in rules {
            p.push(rule);
        }
        p
    }

    /// Like [`Program::new`] but with extra vocabulary. The rule atoms are
    /// always included, so the signature invariant cannot be broken.
    pub fn with_signature(rules: Vec<WeightedRule>, signature: Signature) -> Self {
        let mut p = Self::new(rules);
        p.signature.extend(signature);
        p
    }

    pub fn empty() -> Self {
        Program::default()
    }

    pub fn push(&mut self, rule: WeightedRule) {
        rule.formula.atoms_into(&mut self.signature);
        self.rules.push(rule);
    }

    pub fn rules(&self) -> &[WeightedRule] {
        &self.rules
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    /// Atoms actually occurring in rules (a subset of the signature).
    pub fn atoms(&self) -> Signature {
        let mut out = Signature::new();
        for rule in &self.rules {
            rule.formula.atoms_into(&mut out);
        }
        out
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.rules.iter().map(|r| &r.formula)
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Multiset union: both rule lists in order, signatures merged.
    pub fn union(&self, other: &Program) -> Program {
        let mut rules = self.rules.clone();
        rules.extend(other.rules.iter().cloned());
        let mut signature = self.signature.clone();
        signature.extend(other.signature.iter().cloned());
        Program::with_signature(rules, signature)
    }
}

/// A classical interpretation: the set of atoms taken to be true.
///
/// `Ord` compares the sorted atom sequences lexicographically, which is
/// exactly the enumeration order used by every deterministic scan in this
/// crate (so `{} < {a} < {a, b} < {b}`).
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interpretation(BTreeSet<String>);

impl Interpretation {
    pub fn empty() -> Self {
        Interpretation::default()
    }

    pub fn from_atoms<S: Into<String>>(atoms: impl IntoIterator<Item = S>) -> Self {
        Interpretation(atoms.into_iter().map(Into::into).collect())
    }

    pub fn contains(&self, atom: &str) -> bool {
        self.0.contains(atom)
    }

    pub fn insert(&mut self, atom: impl Into<String>) {
        self.0.insert(atom.into());
    }

    pub fn is_subset(&self, other: &Interpretation) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_proper_subset(&self, other: &Interpretation) -> bool {
        self.0.len() < other.0.len() && self.is_subset(other)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &String> {
        self.0.iter()
    }

    pub fn atoms(&self) -> &BTreeSet<String> {
        &self.0
    }
}

impl FromIterator<String> for Interpretation {
    fn from_iter<I: IntoIterator<Item = String>>(iter: I) -> Self {
        Interpretation(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn atom_validity() {
        assert!(is_valid_atom("a"));
        assert!(is_valid_atom("p_1"));
        assert!(is_valid_atom("aBc9"));
        assert!(!is_valid_atom(""));
        assert!(!is_valid_atom("A"));
        assert!(!is_valid_atom("_p"));
        assert!(!is_valid_atom("p'"));
        assert!(!is_valid_atom("1p"));
        for w in RESERVED_WORDS {
            assert!(!is_valid_atom(w), "{w} must be reserved");
        }
    }

    #[test]
    fn conjoin_empty_is_top() {
        assert_eq!(Formula::conjoin(vec![]), Formula::Top);
        let a = Formula::atom("a");
        assert_eq!(Formula::conjoin(vec![a.clone()]), a);
    }

    #[test]
    fn conjoin_folds_left() {
        let (a, b, c) = (Formula::atom("a"), Formula::atom("b"), Formula::atom("c"));
        assert_eq!(
            Formula::conjoin(vec![a.clone(), b.clone(), c.clone()]),
            Formula::and(Formula::and(a, b), c)
        );
    }

    #[test]
    fn rule_equality_ignores_provenance() {
        let mut r = WeightedRule::soft(1.0, Formula::atom("a"));
        let mut s = r.clone();
        r.line = 3;
        s.line = 7;
        assert_eq!(r, s);
        assert_ne!(r, WeightedRule::soft(2.0, Formula::atom("a")));
        assert_ne!(r, WeightedRule::hard(Formula::atom("a")));
    }

    #[test]
    fn program_signature_tracks_rule_atoms() {
        let mut p = Program::new(vec![WeightedRule::soft(
            1.0,
            Formula::implies(Formula::atom("a"), Formula::atom("b")),
        )]);
        assert_eq!(p.signature().len(), 2);
        p.push(WeightedRule::hard(Formula::atom("c")));
        assert!(p.signature().contains("c"));
        assert_eq!(p.atoms(), p.signature().clone());
    }

    #[test]
    fn union_keeps_duplicates_and_order() {
        let r = WeightedRule::soft(1.0, Formula::atom("a"));
        let p = Program::new(vec![r.clone()]);
        let q = Program::new(vec![r.clone(), WeightedRule::hard(Formula::atom("b"))]);
        let u = p.union(&q);
        assert_eq!(u.len(), 3);
        assert_eq!(u.rules()[0], r);
        assert_eq!(u.rules()[1], r);
    }

    #[test]
    fn interpretation_order_is_lexicographic_on_sorted_atoms() {
        let empty = Interpretation::empty();
        let a = Interpretation::from_atoms(["a"]);
        let ab = Interpretation::from_atoms(["a", "b"]);
        let b = Interpretation::from_atoms(["b"]);
        assert!(empty < a);
        assert!(a < ab);
        assert!(ab < b);
    }

    #[test]
    fn proper_subset() {
        let a = Interpretation::from_atoms(["a"]);
        let ab = Interpretation::from_atoms(["a", "b"]);
        assert!(a.is_proper_subset(&ab));
        assert!(!ab.is_proper_subset(&a));
        assert!(!a.is_proper_subset(&a));
        assert!(a.is_subset(&a));
    }
}
