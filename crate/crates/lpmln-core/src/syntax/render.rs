//! Canonical text for formulas, rules and programs.
//!
//! Rendering is the inverse of parsing on structure: `parse(render(p))`
//! yields a program structurally equal to `p`, and rendering is idempotent.
//! Top-level implications print in `head <- body` form with the left spine
//! of the body's conjunction flattened to commas; everything below that uses
//! the ordinary connectives with the fewest parentheses the precedence table
//! allows.

use alloc::string::{String, ToString};
use core::fmt;

use super::{Formula, Interpretation, Program, Weight, WeightedRule};

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Implies(..) => 1,
        Formula::Or(..) => 2,
        Formula::And(..) => 3,
        Formula::Not(..) => 4,
        Formula::Atom(_) | Formula::Top | Formula::Bot => 5,
    }
}

/// Write `f`, parenthesizing when its precedence drops below `min`.
fn fmt_formula(f: &Formula, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    let parens = precedence(f) < min;
    if parens {
        out.write_str("(")?;
    }
    match f {
        Formula::Atom(name) => out.write_str(name)?,
        Formula::Top => out.write_str("top")?,
        Formula::Bot => out.write_str("bot")?,
        Formula::Not(g) => {
            out.write_str("not ")?;
            fmt_formula(g, 4, out)?;
        }
        Formula::And(l, r) => {
            fmt_formula(l, 3, out)?;
            out.write_str(" & ")?;
            fmt_formula(r, 4, out)?; // left-associative: right child needs parens
        }
        Formula::Or(l, r) => {
            fmt_formula(l, 2, out)?;
            out.write_str(" | ")?;
            fmt_formula(r, 3, out)?;
        }
        Formula::Implies(l, r) => {
            fmt_formula(l, 2, out)?;
            out.write_str(" -> ")?;
            fmt_formula(r, 1, out)?; // right-associative
        }
    }
    if parens {
        out.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for Formula {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_formula(self, 1, out)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Soft(w) => write!(out, "{w}"),
            Weight::Hard => out.write_str("alpha"),
        }
    }
}

impl fmt::Display for WeightedRule {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{}: ", self.weight)?;
        match &self.formula {
            Formula::Implies(body, head) => {
                fmt_formula(head, 1, out)?;
                out.write_str(" <- ")?;
                // Flatten the left spine of the antecedent's conjunction;
                // a right-nested `&` stays a single comma element, which
                // re-parses to the identical tree.
                let mut spine = alloc::vec::Vec::new();
                let mut cur: &Formula = body;
                while let Formula::And(l, r) = cur {
                    spine.push(r.as_ref());
                    cur = l;
                }
                spine.push(cur);
                for (i, part) in spine.iter().rev().enumerate() {
                    if i > 0 {
                        out.write_str(", ")?;
                    }
                    fmt_formula(part, 1, out)?;
                }
                Ok(())
            }
            other => fmt_formula(other, 1, out),
        }
    }
}

impl fmt::Display for Program {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        for rule in self.rules() {
            writeln!(out, "{rule}.")?;
        }
        Ok(())
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        out.write_str("{")?;
        for (i, atom) in self.iter().enumerate() {
            if i > 0 {
                out.write_str(", ")?;
            }
            out.write_str(atom)?;
        }
        out.write_str("}")
    }
}

/// Canonical text of a program: one `weight: rule.` line per rule.
pub fn render_program(p: &Program) -> String {
    p.to_string()
}

/// Canonical text of a bare formula.
pub fn render_formula(f: &Formula) -> String {
    f.to_string()
}
