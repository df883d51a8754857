//! Syntactic transforms behind the reformulated equivalence checks: choice
//! counterparts of a program's rules, atom priming, and the translation that
//! reduces stable-model equivalence to classical entailment over a doubled
//! vocabulary.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::syntax::{Formula, Program, Signature};

/// The choice counterparts `R ∨ ¬R` of every rule formula of `p`,
/// deduplicated. Weights play no role here: the choice construction asks
/// which rules an interpretation *may* adopt, not how much they count.
pub fn choice_program(p: &Program) -> BTreeSet<Formula> {
    p.formulas()
        .map(|r| Formula::or(r.clone(), Formula::not(r.clone())))
        .collect()
}

/// A bijection from atoms to fresh primed copies (`p` ↦ `p'`).
///
/// Primed names live outside the parseable atom syntax on purpose: they can
/// never collide with user atoms, and anything that leaks one unrenamed is
/// immediately visible.
#[derive(Clone, Debug)]
pub struct PrimingMap {
    map: BTreeMap<String, String>,
}

impl PrimingMap {
    pub fn for_signature(sig: &Signature) -> Self {
        let map = sig
            .iter()
            .map(|p| {
                let mut primed = p.clone();
                primed.push('\'');
                (p.clone(), primed)
            })
            .collect();
        PrimingMap { map }
    }

    /// The primed copy of `name`. Panics for atoms outside the map's
    /// signature; every caller builds the map from the atoms it quantifies
    /// over, so a miss is a bug.
    pub fn primed(&self, name: &str) -> &str {
        self.map
            .get(name)
            .unwrap_or_else(|| panic!("atom `{name}` missing from priming map"))
    }

    /// Replace every atom of `f` by its primed copy.
    pub fn prime(&self, f: &Formula) -> Formula {
        match f {
            Formula::Atom(p) => Formula::atom(self.primed(p)),
            Formula::Top => Formula::Top,
            Formula::Bot => Formula::Bot,
            Formula::Not(g) => Formula::not(self.prime(g)),
            Formula::And(l, r) => Formula::and(self.prime(l), self.prime(r)),
            Formula::Or(l, r) => Formula::or(self.prime(l), self.prime(r)),
            Formula::Implies(l, r) => Formula::implies(self.prime(l), self.prime(r)),
        }
    }

    /// The axioms `p' → p`, one per atom, in atom order.
    pub fn support_axioms(&self) -> Vec<Formula> {
        self.map
            .iter()
            .map(|(orig, primed)| Formula::implies(Formula::atom(primed), Formula::atom(orig)))
            .collect()
    }

    /// Original and primed atoms together.
    pub fn doubled_signature(&self) -> Signature {
        self.map
            .iter()
            .flat_map(|(orig, primed)| [orig.clone(), primed.clone()])
            .collect()
    }

    /// The `(original, primed)` pairs, in atom order.
    pub fn pairs(&self) -> impl Iterator<Item = (&str, &str)> {
        self.map.iter().map(|(o, p)| (o.as_str(), p.as_str()))
    }
}

/// The entailment translation of `f` over `pm`'s doubled vocabulary:
/// atoms are primed, negated subformulas stay untouched, conjunction and
/// disjunction distribute, and an implication carries both its translated
/// and its original form.
pub fn delta_transform(f: &Formula, pm: &PrimingMap) -> Formula {
    match f {
        Formula::Atom(p) => Formula::atom(pm.primed(p)),
        Formula::Top => Formula::Top,
        Formula::Bot => Formula::Bot,
        Formula::Not(_) => f.clone(),
        Formula::And(l, r) => Formula::and(delta_transform(l, pm), delta_transform(r, pm)),
        Formula::Or(l, r) => Formula::or(delta_transform(l, pm), delta_transform(r, pm)),
        Formula::Implies(l, r) => Formula::and(
            Formula::implies(delta_transform(l, pm), delta_transform(r, pm)),
            f.clone(),
        ),
    }
}
