//! Strong-equivalence checking.
//!
//! Two programs are strongly equivalent when every common extension leaves
//! their probability distributions identical. [`check_se`] decides this
//! exactly: the total weights of the satisfied-rule sets must stand in one
//! uniform ratio `c` across all interpretations, and the reducts of those
//! sets must be classically equivalent everywhere. The same structural core
//! can be phrased several more ways — over choice counterparts, in the logic
//! of here-and-there, or as classical entailment over a doubled vocabulary —
//! and [`check_condition`] implements each phrasing independently so they
//! can cross-validate one another. [`falsify`] attacks from the opposite
//! side, randomly searching for an extension that splits the distributions.
//!
//! Counterexample scans run from the largest interpretation downward: the
//! informative failures live at the top of the subset lattice (where the
//! most rules fire), and the small interpretations mostly disagree in
//! degenerate ways. The weight pass instead anchors its candidate ratio at
//! the empty interpretation and reports the first offender going up.

mod falsify;

pub use falsify::{falsify, falsify_with_pool, FalsifierReport, Violation};

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::semantics::{
    choice_program, distinguishing_interpretation, ensure_classical_cap, ensure_ht_cap,
    entailment_countermodel, ht_countermodel, ht_eval, reduct, satisfies, AtomIndex, CapExceeded,
    HtInterpretation, HtMaskPairs, PrimingMap, SubsetMasks, SubsetMasksDesc,
};
use crate::syntax::{Formula, Interpretation, Program, Signature};
use crate::weights::{total_weight, WExpr};

/// Absolute tolerance on soft weight exponents and probabilities.
pub(crate) const TOLERANCE: f64 = 1e-9;

/// Outcome of [`check_se`].
#[derive(Clone, Debug, PartialEq)]
pub enum SEVerdict {
    /// One ratio `TW(f_X) = c · TW(g_X)` holds for every `X`, and the
    /// reducts match everywhere.
    Equivalent { witness: WExpr },
    /// Both programs are empty; equivalent with `c = e^0`, but there were no
    /// ratios to compare.
    Vacuous,
    /// The weight ratio at `x2` differs from the one fixed at `x1`.
    WeightMismatch {
        x1: Interpretation,
        ratio1: WExpr,
        x2: Interpretation,
        ratio2: WExpr,
    },
    /// At `x`, the reducts of the two satisfied-rule sets are not
    /// classically equivalent; `distinguishing` satisfies exactly one.
    ReductMismatch {
        x: Interpretation,
        distinguishing: Interpretation,
    },
}

impl SEVerdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, SEVerdict::Equivalent { .. } | SEVerdict::Vacuous)
    }
}

impl fmt::Display for SEVerdict {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SEVerdict::Equivalent { witness } => write!(out, "equivalent, c = {witness}"),
            SEVerdict::Vacuous => out.write_str("equivalent (both programs are empty), c = e^{0}"),
            SEVerdict::WeightMismatch {
                x1,
                ratio1,
                x2,
                ratio2,
            } => write!(
                out,
                "not equivalent: weight ratio is {ratio1} at {x1} but {ratio2} at {x2}"
            ),
            SEVerdict::ReductMismatch { x, distinguishing } => write!(
                out,
                "not equivalent: reducts differ at {x} (distinguished by {distinguishing})"
            ),
        }
    }
}

fn joint_signature(f: &Program, g: &Program) -> Signature {
    let mut sig = f.atoms();
    sig.extend(g.atoms());
    sig
}

/// Conjunction of the reducts of the rules of `p` that `x` satisfies.
fn reduct_conjunction(p: &Program, x: &Interpretation) -> Formula {
    Formula::conjoin(
        p.formulas()
            .filter(|f| satisfies(x, f))
            .map(|f| reduct(f, x)),
    )
}

/// Decide strong equivalence of `f` and `g` exactly.
///
/// Interpretations range over the joint signature; satisfaction and reducts
/// only see occurring atoms and classical equivalence is
/// signature-invariant, so a wider signature could not change the verdict.
pub fn check_se(f: &Program, g: &Program) -> Result<SEVerdict, CapExceeded> {
    let sig = joint_signature(f, g);
    ensure_classical_cap(&sig)?;
    if f.is_empty() && g.is_empty() {
        return Ok(SEVerdict::Vacuous);
    }
    let index = AtomIndex::new(&sig);
    let mut base: Option<(Interpretation, WExpr)> = None;
    for mask in SubsetMasks::new(index.len()) {
        let x = index.interpretation(mask);
        let ratio = total_weight(&crate::semantics::satisfied_rules(f, &x))
            / total_weight(&crate::semantics::satisfied_rules(g, &x));
        match &base {
            None => base = Some((x, ratio)),
            Some((x1, c)) => {
                if !c.approx_eq(ratio, TOLERANCE) {
                    return Ok(SEVerdict::WeightMismatch {
                        x1: x1.clone(),
                        ratio1: *c,
                        x2: x,
                        ratio2: ratio,
                    });
                }
            }
        }
    }
    for mask in SubsetMasksDesc::new(index.len()) {
        let x = index.interpretation(mask);
        let cf = reduct_conjunction(f, &x);
        let cg = reduct_conjunction(g, &x);
        if let Some(y) = distinguishing_interpretation(&cf, &cg)? {
            return Ok(SEVerdict::ReductMismatch {
                x,
                distinguishing: y,
            });
        }
    }
    let (_, witness) = base.expect("the empty interpretation is always enumerated");
    Ok(SEVerdict::Equivalent { witness })
}

/// The six independent phrasings of "same soft stable models under every
/// extension", used to cross-validate one another.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConditionId {
    B,
    C,
    D,
    E,
    F,
    G,
}

impl ConditionId {
    pub const ALL: [ConditionId; 6] = [
        ConditionId::B,
        ConditionId::C,
        ConditionId::D,
        ConditionId::E,
        ConditionId::F,
        ConditionId::G,
    ];

    /// One-line account of what the condition tests.
    pub fn describe(self) -> &'static str {
        match self {
            ConditionId::B => {
                "reducts of the satisfied rules are classically equivalent at every interpretation"
            }
            ConditionId::C => {
                "reducts of the choice counterparts are classically equivalent at every interpretation"
            }
            ConditionId::D => "the programs have the same soft here-and-there models",
            ConditionId::E => {
                "the choice conjunctions are equivalent in the logic of here-and-there"
            }
            ConditionId::F => {
                "under the support axioms, the doubled-vocabulary translations of the reducts are equivalent at every interpretation"
            }
            ConditionId::G => {
                "under the support axioms, the doubled-vocabulary translations of the choice conjunctions are equivalent"
            }
        }
    }

    /// `D` rests on a definition of "soft HT model" that the source material
    /// leaves open; it is validated empirically against the others.
    pub fn is_hypothesis(self) -> bool {
        matches!(self, ConditionId::D)
    }
}

impl fmt::Display for ConditionId {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self {
            ConditionId::B => "b",
            ConditionId::C => "c",
            ConditionId::D => "d",
            ConditionId::E => "e",
            ConditionId::F => "f",
            ConditionId::G => "g",
        };
        out.write_str(letter)
    }
}

/// Error for [`ConditionId::from_str`] on anything but `b`–`g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnknownCondition;

impl fmt::Display for UnknownCondition {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        out.write_str("unknown condition: expected one of b, c, d, e, f, g")
    }
}

impl FromStr for ConditionId {
    type Err = UnknownCondition;

    fn from_str(s: &str) -> Result<Self, UnknownCondition> {
        match s {
            "b" | "B" => Ok(ConditionId::B),
            "c" | "C" => Ok(ConditionId::C),
            "d" | "D" => Ok(ConditionId::D),
            "e" | "E" => Ok(ConditionId::E),
            "f" | "F" => Ok(ConditionId::F),
            "g" | "G" => Ok(ConditionId::G),
            _ => Err(UnknownCondition),
        }
    }
}

/// Where a condition failed.
#[derive(Clone, Debug, PartialEq)]
pub enum ConditionWitness {
    /// The interpretation at which a per-interpretation condition breaks
    /// (B, C, F).
    Interpretation(Interpretation),
    /// An HT pair in one program's soft HT models but not the other's (D),
    /// or a countermodel of the HT equivalence (E).
    HtPair(HtInterpretation),
    /// A classical countermodel over the doubled vocabulary (G).
    Valuation(Interpretation),
}

impl fmt::Display for ConditionWitness {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConditionWitness::Interpretation(x) => write!(out, "{x}"),
            ConditionWitness::HtPair(p) => write!(out, "{p}"),
            ConditionWitness::Valuation(v) => write!(out, "{v}"),
        }
    }
}

/// Result of checking a single condition.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionReport {
    pub id: ConditionId,
    pub holds: bool,
    pub witness: Option<ConditionWitness>,
}

/// Does `x` HT-satisfy every formula of the rules of `p` that `t` satisfies
/// classically? (`t` is the mask of `x`'s "there" component.)
fn soft_ht_model(p: &Program, index: &AtomIndex, h: u64, t: u64) -> bool {
    p.formulas()
        .filter(|f| index.eval(f, t))
        .all(|f| ht_eval(f, index, h, t))
}

/// Check one condition, with a witness when it fails.
pub fn check_condition(
    cond: ConditionId,
    f: &Program,
    g: &Program,
) -> Result<ConditionReport, CapExceeded> {
    let sig = joint_signature(f, g);
    let witness = match cond {
        ConditionId::B => {
            ensure_classical_cap(&sig)?;
            scan_descending(&sig, |x| {
                let cf = reduct_conjunction(f, x);
                let cg = reduct_conjunction(g, x);
                distinguishing_interpretation(&cf, &cg).map(|d| d.is_some())
            })?
            .map(ConditionWitness::Interpretation)
        }
        ConditionId::C => {
            ensure_classical_cap(&sig)?;
            let chf: Vec<Formula> = choice_program(f).into_iter().collect();
            let chg: Vec<Formula> = choice_program(g).into_iter().collect();
            scan_descending(&sig, |x| {
                let cf = Formula::conjoin(chf.iter().map(|c| reduct(c, x)));
                let cg = Formula::conjoin(chg.iter().map(|c| reduct(c, x)));
                distinguishing_interpretation(&cf, &cg).map(|d| d.is_some())
            })?
            .map(ConditionWitness::Interpretation)
        }
        ConditionId::D => {
            ensure_ht_cap(&sig)?;
            let index = AtomIndex::new(&sig);
            let mut hit = None;
            for (h, t) in HtMaskPairs::new(index.len()) {
                if soft_ht_model(f, &index, h, t) != soft_ht_model(g, &index, h, t) {
                    hit = Some(ConditionWitness::HtPair(HtInterpretation::new(
                        index.interpretation(h),
                        index.interpretation(t),
                    )));
                    break;
                }
            }
            hit
        }
        ConditionId::E => {
            let cf = Formula::conjoin(choice_program(f));
            let cg = Formula::conjoin(choice_program(g));
            ht_countermodel(&Formula::iff(cf, cg), &sig)?.map(ConditionWitness::HtPair)
        }
        ConditionId::F => {
            // Δ is applied to the reducts, not the satisfied rules
            // themselves: the satisfied sets of two strongly equivalent
            // programs need not even be classically equivalent (F̄_{b} of
            // the running example entails ¬a while Ḡ_{b} does not).
            let pm = PrimingMap::for_signature(&sig);
            ensure_classical_cap(&pm.doubled_signature())?;
            let support = pm.support_axioms();
            scan_descending(&sig, |x| {
                let df = crate::semantics::delta_transform(&reduct_conjunction(f, x), &pm);
                let dg = crate::semantics::delta_transform(&reduct_conjunction(g, x), &pm);
                entailment_countermodel(&support, &Formula::iff(df, dg)).map(|c| c.is_some())
            })?
            .map(ConditionWitness::Interpretation)
        }
        ConditionId::G => {
            let pm = PrimingMap::for_signature(&sig);
            ensure_classical_cap(&pm.doubled_signature())?;
            let support = pm.support_axioms();
            let df = crate::semantics::delta_transform(&Formula::conjoin(choice_program(f)), &pm);
            let dg = crate::semantics::delta_transform(&Formula::conjoin(choice_program(g)), &pm);
            entailment_countermodel(&support, &Formula::iff(df, dg))?
                .map(ConditionWitness::Valuation)
        }
    };
    Ok(ConditionReport {
        id: cond,
        holds: witness.is_none(),
        witness,
    })
}

/// Run `fails` on each interpretation over `sig`, largest first; the first
/// interpretation where it answers true is returned.
fn scan_descending<E>(
    sig: &Signature,
    mut fails: impl FnMut(&Interpretation) -> Result<bool, E>,
) -> Result<Option<Interpretation>, E> {
    let index = AtomIndex::new(sig);
    for mask in SubsetMasksDesc::new(index.len()) {
        let x = index.interpretation(mask);
        if fails(&x)? {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// All six condition reports, in `B`–`G` order.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionMatrix {
    pub reports: Vec<ConditionReport>,
}

impl ConditionMatrix {
    pub fn get(&self, id: ConditionId) -> &ConditionReport {
        self.reports
            .iter()
            .find(|r| r.id == id)
            .expect("matrix holds every condition")
    }

    /// Do all six conditions give the same boolean? They must; a split
    /// means an implementation bug (or a failure of the D hypothesis).
    pub fn all_agree(&self) -> bool {
        self.reports.windows(2).all(|w| w[0].holds == w[1].holds)
    }

    /// The shared verdict when the conditions agree.
    pub fn verdict(&self) -> Option<bool> {
        self.all_agree().then(|| self.reports[0].holds)
    }
}

/// Evaluate every condition independently.
pub fn check_all_conditions(f: &Program, g: &Program) -> Result<ConditionMatrix, CapExceeded> {
    let reports = ConditionId::ALL
        .iter()
        .map(|&id| check_condition(id, f, g))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ConditionMatrix { reports })
}

/// Do `f ∪ h` and `g ∪ h` have the same soft stable models for every
/// extension `h`? This ignores the weights' magnitudes (only which rules
/// exist matters), so it is strictly weaker than [`check_se`].
pub fn soft_stable_equivalent(f: &Program, g: &Program) -> Result<bool, CapExceeded> {
    Ok(check_condition(ConditionId::B, f, g)?.holds)
}
