//! The logic of here-and-there.
//!
//! An HT interpretation is a pair `(H, T)` with `H ⊆ T`. Negation looks only
//! at `T` (classically); an implication must hold at the pair *and*
//! classically at `T`. Two formulas provable equivalent in this logic are
//! interchangeable under the stable-model semantics, which is what the
//! strong-equivalence conditions exploit.

use alloc::vec::Vec;
use core::fmt;

use super::{ensure_ht_cap, satisfies, AtomIndex, CapExceeded, SubsetMasks};
use crate::syntax::{Formula, Interpretation, Signature};

/// A pair `(H, T)` with `H ⊆ T` ("here" and "there").
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct HtInterpretation {
    here: Interpretation,
    there: Interpretation,
}

impl HtInterpretation {
    /// Panics unless `here ⊆ there`.
    pub fn new(here: Interpretation, there: Interpretation) -> Self {
        assert!(here.is_subset(&there), "here must be a subset of there");
        HtInterpretation { here, there }
    }

    /// The total pair `(t, t)`.
    pub fn total(t: Interpretation) -> Self {
        HtInterpretation {
            here: t.clone(),
            there: t,
        }
    }

    pub fn here(&self) -> &Interpretation {
        &self.here
    }

    pub fn there(&self) -> &Interpretation {
        &self.there
    }

    pub fn is_total(&self) -> bool {
        self.here == self.there
    }
}

impl fmt::Display for HtInterpretation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "({}, {})", self.here, self.there)
    }
}

/// HT satisfaction `(H, T) ⊨ f`.
pub fn ht_satisfies(ht: &HtInterpretation, f: &Formula) -> bool {
    match f {
        Formula::Atom(p) => ht.here.contains(p),
        Formula::Top => true,
        Formula::Bot => false,
        Formula::Not(g) => !satisfies(&ht.there, g),
        Formula::And(l, r) => ht_satisfies(ht, l) && ht_satisfies(ht, r),
        Formula::Or(l, r) => ht_satisfies(ht, l) || ht_satisfies(ht, r),
        Formula::Implies(l, r) => {
            (!ht_satisfies(ht, l) || ht_satisfies(ht, r))
                && (!satisfies(&ht.there, l) || satisfies(&ht.there, r))
        }
    }
}

/// Mask-level twin of [`ht_satisfies`], for the `3^n` scans.
pub(crate) fn ht_eval(f: &Formula, index: &AtomIndex, h: u64, t: u64) -> bool {
    match f {
        Formula::Atom(p) => h >> index.bit(p) & 1 == 1,
        Formula::Top => true,
        Formula::Bot => false,
        Formula::Not(g) => !index.eval(g, t),
        Formula::And(l, r) => ht_eval(l, index, h, t) && ht_eval(r, index, h, t),
        Formula::Or(l, r) => ht_eval(l, index, h, t) || ht_eval(r, index, h, t),
        Formula::Implies(l, r) => {
            (!ht_eval(l, index, h, t) || ht_eval(r, index, h, t))
                && (!index.eval(l, t) || index.eval(r, t))
        }
    }
}

/// All `(h, t)` mask pairs with `h ⊆ t` over `n` atoms: `t` in enumeration
/// order, and within each `t` the submasks `h` in enumeration order over
/// `t`'s positions (which coincides with the global order restricted to
/// subsets of `t`).
pub(crate) struct HtMaskPairs {
    outer: SubsetMasks,
    positions: Vec<u32>,
    inner: Option<SubsetMasks>,
    t: u64,
}

impl HtMaskPairs {
    pub(crate) fn new(n: usize) -> Self {
        HtMaskPairs {
            outer: SubsetMasks::new(n),
            positions: Vec::new(),
            inner: None,
            t: 0,
        }
    }
}

impl Iterator for HtMaskPairs {
    type Item = (u64, u64);

    fn next(&mut self) -> Option<(u64, u64)> {
        loop {
            if let Some(inner) = &mut self.inner {
                if let Some(sub) = inner.next() {
                    let mut h = 0u64;
                    for (j, &pos) in self.positions.iter().enumerate() {
                        if sub >> j & 1 == 1 {
                            h |= 1 << pos;
                        }
                    }
                    return Some((h, self.t));
                }
            }
            self.t = self.outer.next()?;
            self.positions = (0..64).filter(|i| self.t >> i & 1 == 1).collect();
            self.inner = Some(SubsetMasks::new(self.positions.len()));
        }
    }
}

/// First HT pair over `sig` falsifying `f`, or `None` if `f` is HT-valid.
/// Pairs are scanned with `T` in enumeration order and, within each `T`,
/// `H ⊆ T` in enumeration order.
pub fn ht_countermodel(
    f: &Formula,
    sig: &Signature,
) -> Result<Option<HtInterpretation>, CapExceeded> {
    ensure_ht_cap(sig)?;
    let index = AtomIndex::new(sig);
    for (h, t) in HtMaskPairs::new(index.len()) {
        if !ht_eval(f, &index, h, t) {
            return Ok(Some(HtInterpretation::new(
                index.interpretation(h),
                index.interpretation(t),
            )));
        }
    }
    Ok(None)
}

/// Is `f` satisfied by every HT pair over `sig`? HT validity is invariant
/// under signature extension, so callers normally pass the occurring atoms.
pub fn ht_valid(f: &Formula, sig: &Signature) -> Result<bool, CapExceeded> {
    Ok(ht_countermodel(f, sig)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::interpretations;
    use crate::syntax::parse_formula;
    use alloc::string::{String, ToString};

    fn f(src: &str) -> Formula {
        parse_formula(src).unwrap()
    }

    fn interp(atoms: &[&str]) -> Interpretation {
        Interpretation::from_atoms(atoms.iter().copied())
    }

    #[test]
    #[should_panic(expected = "subset")]
    fn pair_requires_inclusion() {
        HtInterpretation::new(interp(&["a"]), interp(&["b"]));
    }

    #[test]
    fn total_pairs_collapse_to_classical_satisfaction() {
        let sig: Signature = ["a", "b"].map(String::from).into_iter().collect();
        for src in [
            "a -> b",
            "not a | b",
            "a & ~b",
            "not not a",
            "a | b -> a & b",
        ] {
            let formula = f(src);
            for t in interpretations(&sig) {
                let pair = HtInterpretation::total(t.clone());
                assert_eq!(
                    ht_satisfies(&pair, &formula),
                    satisfies(&t, &formula),
                    "total-pair mismatch for {src} at {t}"
                );
            }
        }
    }

    #[test]
    fn satisfaction_persists_to_there() {
        let sig: Signature = ["a", "b"].map(String::from).into_iter().collect();
        for src in [
            "a -> b",
            "not a | b",
            "a | not a",
            "not not a -> a",
            "a & b | ~a",
        ] {
            let formula = f(src);
            for t in interpretations(&sig) {
                for h in interpretations(t.atoms()) {
                    let pair = HtInterpretation::new(h, t.clone());
                    if ht_satisfies(&pair, &formula) {
                        assert!(
                            satisfies(&t, &formula),
                            "persistence failed for {src} at {pair}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn excluded_middle_is_not_valid_here() {
        let sig: Signature = ["a"].map(String::from).into_iter().collect();
        assert!(!ht_valid(&f("a | not a"), &sig).unwrap());
        let cm = ht_countermodel(&f("a | not a"), &sig).unwrap().unwrap();
        assert_eq!(cm.here(), &Interpretation::empty());
        assert_eq!(cm.there(), &interp(&["a"]));
        assert!(!cm.is_total());
    }

    #[test]
    fn double_negation_elimination_is_not_valid_here() {
        let sig: Signature = ["a"].map(String::from).into_iter().collect();
        assert!(!ht_valid(&f("not not a -> a"), &sig).unwrap());
        let cm = ht_countermodel(&f("not not a -> a"), &sig)
            .unwrap()
            .unwrap();
        assert_eq!(cm, HtInterpretation::new(interp(&[]), interp(&["a"])));
    }

    #[test]
    fn some_valid_formulas() {
        let ab: Signature = ["a", "b"].map(String::from).into_iter().collect();
        for src in [
            "a -> a",
            "top",
            "not a | not not a",
            "a & b -> b & a",
            "bot -> a",
        ] {
            assert!(ht_valid(&f(src), &ab).unwrap(), "{src} should be valid");
        }
        // de Morgan holds here (negation evaluates classically at T)
        assert!(ht_valid(&Formula::iff(f("not (a & b)"), f("~a | ~b")), &ab).unwrap());
        // the two ways of writing a choice over `a` coincide
        assert!(ht_valid(&Formula::iff(f("a | not a"), f("not not a -> a")), &ab).unwrap());
    }

    #[test]
    fn valid_over_empty_signature_means_classically_true() {
        let sig = Signature::new();
        assert!(ht_valid(&f("top"), &sig).unwrap());
        assert!(!ht_valid(&f("bot"), &sig).unwrap());
    }

    #[test]
    fn pair_display() {
        let pair = HtInterpretation::new(interp(&["a"]), interp(&["a", "b"]));
        assert_eq!(pair.to_string(), "({a}, {a, b})");
    }

    #[test]
    fn cap_is_enforced() {
        let big: Signature = (0..16).map(|i| alloc::format!("p{i}")).collect();
        assert!(ht_valid(&f("a"), &big).is_err());
    }
}
