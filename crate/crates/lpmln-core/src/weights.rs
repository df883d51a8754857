//! Weights as symbolic expressions `e^{c1 + c2·α}` and the probabilities
//! they induce in the α → ∞ limit.
//!
//! Products of rule weights only ever add exponents, so a weight is fully
//! described by its soft part `c1` (a real sum) and its hard part `c2` (a
//! count of `alpha` rules). The limit is likewise taken symbolically: only
//! interpretations with the maximal hard count keep nonzero probability, and
//! among those the soft parts are normalized with a max-exponent shift.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Div, Mul};

use crate::semantics::{is_stable_model, satisfied_rules, soft_stable_models};
use crate::syntax::{Interpretation, Program, Signature, Weight};

/// A symbolic weight `e^{soft + hard·α}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WExpr {
    pub soft: f64,
    pub hard: i64,
}

impl WExpr {
    /// The multiplicative identity `e^0`.
    pub const ONE: WExpr = WExpr { soft: 0.0, hard: 0 };

    pub fn new(soft: f64, hard: i64) -> Self {
        WExpr { soft, hard }
    }

    /// Equal hard parts exactly, soft parts within `tol`.
    pub fn approx_eq(self, other: WExpr, tol: f64) -> bool {
        self.hard == other.hard && libm::fabs(self.soft - other.soft) <= tol
    }
}

impl From<Weight> for WExpr {
    fn from(w: Weight) -> Self {
        match w {
            Weight::Soft(c) => WExpr { soft: c, hard: 0 },
            Weight::Hard => WExpr { soft: 0.0, hard: 1 },
        }
    }
}

impl Mul for WExpr {
    type Output = WExpr;

    fn mul(self, rhs: WExpr) -> WExpr {
        WExpr {
            soft: self.soft + rhs.soft,
            hard: self.hard + rhs.hard,
        }
    }
}

impl Div for WExpr {
    type Output = WExpr;

    fn div(self, rhs: WExpr) -> WExpr {
        WExpr {
            soft: self.soft - rhs.soft,
            hard: self.hard - rhs.hard,
        }
    }
}

impl fmt::Display for WExpr {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.hard {
            0 => write!(out, "e^{{{}}}", self.soft),
            1 => write!(out, "e^{{{}+alpha}}", self.soft),
            -1 => write!(out, "e^{{{}-alpha}}", self.soft),
            h => write!(out, "e^{{{}{h:+}alpha}}", self.soft),
        }
    }
}

/// `W(X)`: zero when `X` is not a soft stable model, otherwise the total
/// weight of the rules it satisfies.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum WeightResult {
    Zero,
    Positive(WExpr),
}

impl fmt::Display for WeightResult {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightResult::Zero => out.write_str("0"),
            WeightResult::Positive(w) => w.fmt(out),
        }
    }
}

/// The product of all rule weights of `p`: `c1` sums the soft weights, `c2`
/// counts the hard rules.
pub fn total_weight(p: &Program) -> WExpr {
    p.rules()
        .iter()
        .fold(WExpr::ONE, |acc, r| acc * WExpr::from(r.weight))
}

/// The weight of `x` under `p`: `Positive(TW of the satisfied rules)` when
/// `x` is a stable model of those rules, `Zero` otherwise. The signature
/// fixes the space `x` is drawn from (`x ⊆ sig` is required) but does not
/// influence the value.
pub fn weight_of(p: &Program, x: &Interpretation, sig: &Signature) -> WeightResult {
    assert!(
        x.iter().all(|a| sig.contains(a)),
        "interpretation must be drawn from the signature"
    );
    let sat = satisfied_rules(p, x);
    let formulas: Vec<_> = sat.formulas().cloned().collect();
    if is_stable_model(x, &formulas) {
        WeightResult::Positive(total_weight(&sat))
    } else {
        WeightResult::Zero
    }
}

/// A probability for every soft stable model, in enumeration order.
/// Interpretations dominated in the hard count carry an explicit `0.0`;
/// anything absent from the map has probability zero by definition.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution {
    probs: BTreeMap<Interpretation, f64>,
}

impl Distribution {
    pub fn probability(&self, x: &Interpretation) -> f64 {
        self.probs.get(x).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Interpretation, f64)> {
        self.probs.iter().map(|(x, &p)| (x, p))
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

/// The distribution has no support. Unreachable through
/// [`probability_distribution`] — the empty interpretation is a stable model
/// of the (vacuously satisfied) rules it picks, so the model list is never
/// empty — but kept so callers can handle the contract uniformly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NoSoftStableModels;

impl fmt::Display for NoSoftStableModels {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        out.write_str("the program has no soft stable models")
    }
}

/// The α → ∞ limit probabilities of `p` over `sig`.
///
/// Let `m` be the maximal hard count among soft stable models. Models below
/// `m` get exactly `0.0`; the rest are softmax-normalized on their soft
/// parts (shifted by the maximum before exponentiation, so large weights
/// cannot overflow).
pub fn probability_distribution(
    p: &Program,
    sig: &Signature,
) -> Result<Distribution, NoSoftStableModels> {
    let models = soft_stable_models(p, sig);
    if models.is_empty() {
        return Err(NoSoftStableModels);
    }
    let weights: Vec<WExpr> = models
        .iter()
        .map(|x| total_weight(&satisfied_rules(p, x)))
        .collect();
    let max_hard = weights.iter().map(|w| w.hard).max().expect("nonempty");
    let max_soft = weights
        .iter()
        .filter(|w| w.hard == max_hard)
        .map(|w| w.soft)
        .fold(f64::NEG_INFINITY, f64::max);
    let scaled: Vec<f64> = weights
        .iter()
        .map(|w| {
            if w.hard == max_hard {
                libm::exp(w.soft - max_soft)
            } else {
                0.0
            }
        })
        .collect();
    let z: f64 = scaled.iter().sum();
    let probs = models
        .into_iter()
        .zip(scaled)
        .map(|(x, s)| (x, s / z))
        .collect();
    Ok(Distribution { probs })
}
