//! Core library for LP^MLN: propositional programs whose rules carry real
//! ("soft") weights or the infinite weight `alpha`, their soft stable models
//! and limit probabilities, and an exact decision procedure for strong
//! equivalence — the guarantee that two programs stay interchangeable under
//! every common extension.
//!
//! Everything in here is exact and enumeration-based, aimed at programs over
//! a few dozen atoms at most: parsing and printing ([`syntax`]), classical /
//! stable / here-and-there satisfaction ([`semantics`]), the symbolic weight
//! algebra `e^{c1+c2·α}` and distributions ([`weights`]), and the
//! equivalence checks with their randomized counterpart ([`equivalence`]).
//!
//! The crate is `no_std` (with `alloc`); I/O, files, and the command-line
//! front end live in the companion `lpmln-cli` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod equivalence;
pub mod semantics;
pub mod syntax;
pub mod weights;

pub use equivalence::{
    check_all_conditions, check_condition, check_se, falsify, falsify_with_pool,
    soft_stable_equivalent, ConditionId, ConditionMatrix, ConditionReport, ConditionWitness,
    FalsifierReport, SEVerdict, UnknownCondition, Violation,
};
pub use semantics::{
    choice_program, classically_equivalent, delta_transform, distinguishing_interpretation,
    ensure_classical_cap, ensure_ht_cap, entailment_countermodel, entails, ht_countermodel,
    ht_satisfies, ht_valid, interpretations, is_stable_model, reduct, satisfied_rules, satisfies,
    soft_stable_models, CapExceeded, EnumerationKind, HtInterpretation, PrimingMap,
    CLASSICAL_ATOM_CAP, HT_ATOM_CAP,
};
pub use syntax::{
    parse_formula, parse_program, render_formula, render_program, Formula, Interpretation,
    ParseError, Program, Signature, Weight, WeightedRule,
};
pub use weights::{
    probability_distribution, total_weight, weight_of, Distribution, NoSoftStableModels, WExpr,
    WeightResult,
};
