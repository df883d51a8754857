//! Classical and stable-model semantics.
//!
//! Everything here is enumeration-based and exact. Deterministic order
//! matters throughout: interpretations are visited in lexicographic order of
//! their sorted atom lists, with `{}` first (so over `{a, b}`: `{}`, `{a}`,
//! `{a, b}`, `{b}`), and "first countermodel" always means first in that
//! order. Classical checks enumerate `2^n` interpretations and refuse
//! signatures above [`CLASSICAL_ATOM_CAP`]; here-and-there checks enumerate
//! `3^n` pairs and refuse signatures above [`HT_ATOM_CAP`].

mod ht;
mod transform;

pub use ht::{ht_countermodel, ht_satisfies, ht_valid, HtInterpretation};
pub(crate) use ht::{ht_eval, HtMaskPairs};
pub use transform::{choice_program, delta_transform, PrimingMap};

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::syntax::{Formula, Interpretation, Program, Signature};

/// Largest signature the `2^n` classical scans accept.
pub const CLASSICAL_ATOM_CAP: usize = 24;
/// Largest signature the `3^n` here-and-there scans accept.
pub const HT_ATOM_CAP: usize = 15;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumerationKind {
    Classical,
    HereAndThere,
}

/// A check was asked to enumerate more interpretations than the caps allow.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CapExceeded {
    pub kind: EnumerationKind,
    pub atoms: usize,
    pub cap: usize,
}

impl fmt::Display for CapExceeded {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (what, growth) = match self.kind {
            EnumerationKind::Classical => ("classical", "2^n"),
            EnumerationKind::HereAndThere => ("here-and-there", "3^n"),
        };
        write!(
            out,
            "signature too large: {} atoms, but the {what} ({growth}) enumeration cap is {}",
            self.atoms, self.cap
        )
    }
}

/// Fail unless `sig` is small enough for a `2^n` scan.
pub fn ensure_classical_cap(sig: &Signature) -> Result<(), CapExceeded> {
    if sig.len() > CLASSICAL_ATOM_CAP {
        return Err(CapExceeded {
            kind: EnumerationKind::Classical,
            atoms: sig.len(),
            cap: CLASSICAL_ATOM_CAP,
        });
    }
    Ok(())
}

/// Fail unless `sig` is small enough for a `3^n` scan.
pub fn ensure_ht_cap(sig: &Signature) -> Result<(), CapExceeded> {
    if sig.len() > HT_ATOM_CAP {
        return Err(CapExceeded {
            kind: EnumerationKind::HereAndThere,
            atoms: sig.len(),
            cap: HT_ATOM_CAP,
        });
    }
    Ok(())
}

/// Subset bit masks over `n` positions in subset-lexicographic order:
/// the empty mask, then every mask containing position 0 (recursively in the
/// same order), then every mask starting at position 1, and so on. This is
/// exactly [`Interpretation`]'s `Ord` once bits are mapped to sorted atoms.
pub(crate) struct SubsetMasks {
    n: u32,
    stack: Vec<u32>,
    mask: u64,
    started: bool,
    done: bool,
}

impl SubsetMasks {
    pub(crate) fn new(n: usize) -> Self {
        assert!(n < 64, "subset enumeration is limited to 63 atoms");
        SubsetMasks {
            n: n as u32,
            stack: Vec::new(),
            mask: 0,
            started: false,
            done: false,
        }
    }
}

impl Iterator for SubsetMasks {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(0);
        }
        let begin = self.stack.last().map_or(0, |&i| i + 1);
        if begin < self.n {
            self.stack.push(begin);
            self.mask |= 1 << begin;
            return Some(self.mask);
        }
        loop {
            let Some(top) = self.stack.pop() else {
                self.done = true;
                return None;
            };
            self.mask &= !(1 << top);
            if top + 1 < self.n {
                self.stack.push(top + 1);
                self.mask |= 1 << (top + 1);
                return Some(self.mask);
            }
        }
    }
}

/// [`SubsetMasks`] in exact reverse: subset-lexicographic order from the
/// last subset down to the empty mask.
pub(crate) struct SubsetMasksDesc {
    n: u32,
    stack: Vec<u32>,
    mask: u64,
    primed: bool,
    done: bool,
}

impl SubsetMasksDesc {
    pub(crate) fn new(n: usize) -> Self {
        assert!(n < 64, "subset enumeration is limited to 63 atoms");
        SubsetMasksDesc {
            n: n as u32,
            stack: Vec::new(),
            mask: 0,
            primed: false,
            done: false,
        }
    }

    fn push(&mut self, i: u32) {
        self.stack.push(i);
        self.mask |= 1 << i;
    }

    fn pop(&mut self) -> Option<u32> {
        let top = self.stack.pop()?;
        self.mask &= !(1 << top);
        Some(top)
    }
}

impl Iterator for SubsetMasksDesc {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.done {
            return None;
        }
        if !self.primed {
            self.primed = true;
            if self.n == 0 {
                self.done = true;
                return Some(0);
            }
            self.push(self.n - 1);
            return Some(self.mask);
        }
        // The node on top of the stack was just emitted. Its next-smaller
        // sibling's subtree comes next (descending-first, so dive straight
        // to that subtree's last leaf); with no sibling left, the parent is
        // emitted on the way out.
        let top = *self.stack.last().expect("emitted nodes are on the stack");
        let floor = self.stack[..self.stack.len() - 1]
            .last()
            .map_or(0, |&i| i + 1);
        if top > floor {
            self.pop();
            self.push(top - 1);
            if top - 1 < self.n - 1 {
                self.push(self.n - 1);
            }
            return Some(self.mask);
        }
        self.pop();
        if self.stack.is_empty() {
            self.done = true;
            return Some(0);
        }
        Some(self.mask)
    }
}

/// Sorted atom vector with mask positions; the working representation for
/// the `2^n` scans.
pub(crate) struct AtomIndex {
    names: Vec<String>,
}

impl AtomIndex {
    pub(crate) fn new(sig: &Signature) -> Self {
        AtomIndex {
            names: sig.iter().cloned().collect(),
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.names.len()
    }

    fn bit(&self, name: &str) -> u32 {
        self.names
            .binary_search_by(|probe| probe.as_str().cmp(name))
            .expect("atom outside the enumeration signature") as u32
    }

    pub(crate) fn interpretation(&self, mask: u64) -> Interpretation {
        self.names
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, name)| name.clone())
            .collect()
    }

    pub(crate) fn eval(&self, f: &Formula, mask: u64) -> bool {
        match f {
            Formula::Atom(p) => mask >> self.bit(p) & 1 == 1,
            Formula::Top => true,
            Formula::Bot => false,
            Formula::Not(g) => !self.eval(g, mask),
            Formula::And(l, r) => self.eval(l, mask) && self.eval(r, mask),
            Formula::Or(l, r) => self.eval(l, mask) || self.eval(r, mask),
            Formula::Implies(l, r) => !self.eval(l, mask) || self.eval(r, mask),
        }
    }
}

/// All interpretations over `sig`, in enumeration order.
pub fn interpretations(sig: &Signature) -> impl Iterator<Item = Interpretation> {
    let index = AtomIndex::new(sig);
    SubsetMasks::new(index.len()).map(move |mask| index.interpretation(mask))
}

/// Classical satisfaction `x ⊨ f`.
pub fn satisfies(x: &Interpretation, f: &Formula) -> bool {
    match f {
        Formula::Atom(p) => x.contains(p),
        Formula::Top => true,
        Formula::Bot => false,
        Formula::Not(g) => !satisfies(x, g),
        Formula::And(l, r) => satisfies(x, l) && satisfies(x, r),
        Formula::Or(l, r) => satisfies(x, l) || satisfies(x, r),
        Formula::Implies(l, r) => !satisfies(x, l) || satisfies(x, r),
    }
}

/// The rules of `p` whose formulas `x` satisfies, in order, with `p`'s
/// signature carried over.
pub fn satisfied_rules(p: &Program, x: &Interpretation) -> Program {
    let rules = p
        .rules()
        .iter()
        .filter(|r| satisfies(x, &r.formula))
        .cloned()
        .collect();
    Program::with_signature(rules, p.signature().clone())
}

/// The reduct of `f` relative to `x`: every maximal subformula that `x` does
/// not satisfy becomes `bot`. A satisfied negation reduces to `not bot`,
/// since its operand is by definition unsatisfied.
pub fn reduct(f: &Formula, x: &Interpretation) -> Formula {
    if !satisfies(x, f) {
        return Formula::Bot;
    }
    match f {
        Formula::Atom(_) | Formula::Top => f.clone(),
        Formula::Bot => Formula::Bot,
        Formula::Not(_) => Formula::not(Formula::Bot),
        Formula::And(l, r) => Formula::and(reduct(l, x), reduct(r, x)),
        Formula::Or(l, r) => Formula::or(reduct(l, x), reduct(r, x)),
        Formula::Implies(l, r) => Formula::implies(reduct(l, x), reduct(r, x)),
    }
}

fn is_stable_inner(x: &Interpretation, formulas: &[&Formula]) -> bool {
    if !formulas.iter().all(|f| satisfies(x, f)) {
        return false;
    }
    let reducts: Vec<Formula> = formulas.iter().map(|f| reduct(f, x)).collect();
    let atoms: Vec<&String> = x.iter().collect();
    let full: u64 = if atoms.is_empty() {
        0
    } else {
        (1 << atoms.len()) - 1
    };
    for mask in SubsetMasks::new(atoms.len()) {
        if mask == full {
            continue; // x itself is not a *proper* subset
        }
        let y: Interpretation = atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, name)| (*name).clone())
            .collect();
        if reducts.iter().all(|r| satisfies(&y, r)) {
            return false;
        }
    }
    true
}

/// Is `x` a stable model of the plain theory `formulas`? True iff `x`
/// satisfies every formula and no proper subset of `x` satisfies every
/// reduct relative to `x`.
pub fn is_stable_model(x: &Interpretation, formulas: &[Formula]) -> bool {
    let refs: Vec<&Formula> = formulas.iter().collect();
    is_stable_inner(x, &refs)
}

/// The soft stable models of `p` over `sig`, in enumeration order: every
/// `X ⊆ sig` that is a stable model of the rules it satisfies. `{}` always
/// qualifies (it satisfies no-rule-or-tautological reducts vacuously), so
/// the result is never empty.
///
/// `sig` must cover `p`'s atoms.
pub fn soft_stable_models(p: &Program, sig: &Signature) -> Vec<Interpretation> {
    assert!(
        p.atoms().is_subset(sig),
        "signature must cover the program's atoms"
    );
    interpretations(sig)
        .filter(|x| {
            let fs: Vec<&Formula> = p.formulas().filter(|f| satisfies(x, f)).collect();
            is_stable_inner(x, &fs)
        })
        .collect()
}

/// First interpretation (enumeration order, over the union of both formulas'
/// atoms) on which `f` and `g` disagree; `None` when classically equivalent.
/// Classical equivalence is invariant under signature extension, so checking
/// over the occurring atoms is enough.
pub fn distinguishing_interpretation(
    f: &Formula,
    g: &Formula,
) -> Result<Option<Interpretation>, CapExceeded> {
    let mut sig = f.atoms();
    g.atoms_into(&mut sig);
    ensure_classical_cap(&sig)?;
    let index = AtomIndex::new(&sig);
    for mask in SubsetMasks::new(index.len()) {
        if index.eval(f, mask) != index.eval(g, mask) {
            return Ok(Some(index.interpretation(mask)));
        }
    }
    Ok(None)
}

/// Classical equivalence of `f` and `g`.
pub fn classically_equivalent(f: &Formula, g: &Formula) -> Result<bool, CapExceeded> {
    Ok(distinguishing_interpretation(f, g)?.is_none())
}

/// First interpretation satisfying every assumption but not `f`, over the
/// union of all occurring atoms; `None` when the entailment holds.
pub fn entailment_countermodel(
    assumptions: &[Formula],
    f: &Formula,
) -> Result<Option<Interpretation>, CapExceeded> {
    let mut sig = f.atoms();
    for a in assumptions {
        a.atoms_into(&mut sig);
    }
    ensure_classical_cap(&sig)?;
    let index = AtomIndex::new(&sig);
    for mask in SubsetMasks::new(index.len()) {
        if assumptions.iter().all(|a| index.eval(a, mask)) && !index.eval(f, mask) {
            return Ok(Some(index.interpretation(mask)));
        }
    }
    Ok(None)
}

/// Does every model of `assumptions` satisfy `f`?
pub fn entails(assumptions: &[Formula], f: &Formula) -> Result<bool, CapExceeded> {
    Ok(entailment_countermodel(assumptions, f)?.is_none())
}
