//! Randomized refutation of strong equivalence: sample extension programs
//! and compare the two extended distributions pointwise. A single witness
//! extension suffices to refute; exhausting the trial budget proves nothing
//! but is good corroboration alongside the exact check.

use alloc::vec::Vec;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::TOLERANCE;
use crate::semantics::{ensure_classical_cap, AtomIndex, CapExceeded, SubsetMasksDesc};
use crate::syntax::{Formula, Interpretation, Program, Signature, Weight, WeightedRule};
use crate::weights::probability_distribution;

/// A distinguishing extension found by the search.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    /// The extension program that splits the distributions.
    pub extension: Program,
    /// Interpretation at which they differ.
    pub at: Interpretation,
    pub p_left: f64,
    pub p_right: f64,
}

/// Outcome of [`falsify`]: deterministic given `(trials, seed)` and the
/// pool.
#[derive(Clone, Debug, PartialEq)]
pub struct FalsifierReport {
    pub seed: u64,
    pub trials_used: u32,
    pub violation: Option<Violation>,
}

impl FalsifierReport {
    pub fn found(&self) -> bool {
        self.violation.is_some()
    }
}

fn random_formula(rng: &mut ChaCha8Rng, atoms: &[&str], depth: u32) -> Formula {
    let leaf = |rng: &mut ChaCha8Rng| match rng.gen_range(0..atoms.len() + 2) {
        0 => Formula::Top,
        1 => Formula::Bot,
        i => Formula::atom(atoms[i - 2]),
    };
    if depth == 0 {
        return leaf(rng);
    }
    match rng.gen_range(0..6) {
        0 => Formula::not(random_formula(rng, atoms, depth - 1)),
        1 => Formula::and(
            random_formula(rng, atoms, depth - 1),
            random_formula(rng, atoms, depth - 1),
        ),
        2 => Formula::or(
            random_formula(rng, atoms, depth - 1),
            random_formula(rng, atoms, depth - 1),
        ),
        3 => Formula::implies(
            random_formula(rng, atoms, depth - 1),
            random_formula(rng, atoms, depth - 1),
        ),
        _ => leaf(rng),
    }
}

/// 0–3 rules of depth ≤ 2 over `atoms`; weights from `{-1, 0, 1, 2, alpha}`
/// (so `alpha` comes up a fifth of the time).
fn random_extension(rng: &mut ChaCha8Rng, atoms: &[&str]) -> Program {
    let n_rules = rng.gen_range(0..=3);
    let rules = (0..n_rules)
        .map(|_| {
            let weight = match rng.gen_range(0..5) {
                0 => Weight::Soft(-1.0),
                1 => Weight::Soft(0.0),
                2 => Weight::Soft(1.0),
                3 => Weight::Soft(2.0),
                _ => Weight::Hard,
            };
            WeightedRule::new(weight, random_formula(rng, atoms, 2))
        })
        .collect();
    Program::new(rules)
}

/// Search for an extension under which the two distributions differ
/// pointwise by more than the tolerance, taking candidate extensions from
/// `pool` first and then randomly. Interpretations are compared largest
/// first. Should one side's distribution be undefined, any point where the
/// other side carries mass is a violation; both undefined compares equal.
pub fn falsify_with_pool(
    f: &Program,
    g: &Program,
    trials: u32,
    seed: u64,
    pool: &[Program],
) -> Result<FalsifierReport, CapExceeded> {
    let mut base_sig = f.atoms();
    base_sig.extend(g.atoms());
    let base_atoms: Vec<&str> = base_sig.iter().map(|s| s.as_str()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 1..=trials {
        let h = match pool.get(trial as usize - 1) {
            Some(fixed) => fixed.clone(),
            None => random_extension(&mut rng, &base_atoms),
        };
        let mut sig = base_sig.clone();
        sig.extend(h.atoms());
        ensure_classical_cap(&sig)?;
        let left = probability_distribution(&f.union(&h), &sig);
        let right = probability_distribution(&g.union(&h), &sig);
        let violation = match (&left, &right) {
            (Err(_), Err(_)) => None,
            (Ok(l), Ok(r)) => first_difference(&sig, |x| l.probability(x), |x| r.probability(x)),
            (Ok(l), Err(_)) => first_difference(&sig, |x| l.probability(x), |_| 0.0),
            (Err(_), Ok(r)) => first_difference(&sig, |_| 0.0, |x| r.probability(x)),
        };
        if let Some((at, p_left, p_right)) = violation {
            return Ok(FalsifierReport {
                seed,
                trials_used: trial,
                violation: Some(Violation {
                    extension: h,
                    at,
                    p_left,
                    p_right,
                }),
            });
        }
    }
    Ok(FalsifierReport {
        seed,
        trials_used: trials,
        violation: None,
    })
}

/// [`falsify_with_pool`] with purely random extensions.
pub fn falsify(
    f: &Program,
    g: &Program,
    trials: u32,
    seed: u64,
) -> Result<FalsifierReport, CapExceeded> {
    falsify_with_pool(f, g, trials, seed, &[])
}

fn first_difference(
    sig: &Signature,
    left: impl Fn(&Interpretation) -> f64,
    right: impl Fn(&Interpretation) -> f64,
) -> Option<(Interpretation, f64, f64)> {
    let index = AtomIndex::new(sig);
    for mask in SubsetMasksDesc::new(index.len()) {
        let x = index.interpretation(mask);
        let (l, r) = (left(&x), right(&x));
        if libm::fabs(l - r) > TOLERANCE {
            return Some((x, l, r));
        }
    }
    None
}
