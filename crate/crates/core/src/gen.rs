//! Named parameter-sequence generators.
//!
//! Coefficient and term-family parameters are produced from a small set of
//! named generators so problem data can be written in config files and
//! extended past any stored truncation. Values that fall below the smallest
//! positive normal float are clamped to zero; the affected modes decouple
//! into plain quadratics and are reported by the consumers of the sequence.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A named generator for a real sequence indexed from n = 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "gen", rename_all = "kebab-case")]
pub enum SequenceGen {
    /// 1/n!
    InvFactorial,
    /// 1/(n+1)!
    InvFactorialShift1,
    /// 1/n^2
    InvSquare,
    /// 1 + 1/n
    OnePlusInv,
    /// Constant value.
    Const { value: f64 },
    /// Explicit finite list; entries past the list are zero.
    Explicit { values: Vec<f64> },
}

impl SequenceGen {
    /// Value at index n >= 1, with the subnormal clamp applied.
    pub fn eval(&self, n: usize) -> f64 {
        debug_assert!(n >= 1);
        let raw = match self {
            SequenceGen::InvFactorial => inv_factorial(n),
            SequenceGen::InvFactorialShift1 => inv_factorial(n + 1),
            SequenceGen::InvSquare => 1.0 / (n as f64 * n as f64),
            SequenceGen::OnePlusInv => 1.0 + 1.0 / n as f64,
            SequenceGen::Const { value } => *value,
            SequenceGen::Explicit { values } => values.get(n - 1).copied().unwrap_or(0.0),
        };
        clamp_subnormal(raw)
    }

    /// First `n` values (indices 1..=n).
    pub fn materialize(&self, n: usize) -> Vec<f64> {
        match self {
            // Running product avoids recomputing factorials per index.
            SequenceGen::InvFactorial | SequenceGen::InvFactorialShift1 => {
                let shift = if matches!(self, SequenceGen::InvFactorialShift1) { 1 } else { 0 };
                let mut out = Vec::with_capacity(n);
                let mut inv = 1.0f64;
                for k in 1..=shift {
                    inv /= k as f64;
                }
                for idx in 1..=n {
                    inv /= (idx + shift) as f64;
                    out.push(clamp_subnormal(inv));
                }
                out
            }
            _ => (1..=n).map(|i| self.eval(i)).collect(),
        }
    }

    /// Validate that all materialized values are finite.
    pub fn validate(&self, n: usize) -> Result<()> {
        for (i, v) in self.materialize(n).iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite { index: i + 1, value: *v });
            }
        }
        Ok(())
    }
}

/// 1/n! with the subnormal clamp; exact running product, never overflows.
fn inv_factorial(n: usize) -> f64 {
    let mut inv = 1.0f64;
    for k in 1..=n {
        inv /= k as f64;
        if inv < f64::MIN_POSITIVE {
            return 0.0;
        }
    }
    inv
}

/// Clamp magnitudes below the smallest positive normal float to zero.
pub fn clamp_subnormal(x: f64) -> f64 {
    if x != 0.0 && x.abs() < f64::MIN_POSITIVE {
        0.0
    } else {
        x
    }
}

/// Indices (1-based) whose generated value was clamped to zero.
pub fn clamped_indices(gen: &SequenceGen, n: usize) -> Vec<usize> {
    let values = gen.materialize(n);
    (1..=n)
        .filter(|&i| {
            values[i - 1] == 0.0
                && match gen {
                    SequenceGen::InvFactorial | SequenceGen::InvFactorialShift1 => true,
                    SequenceGen::Explicit { values: v } => {
                        v.get(i - 1).map(|raw| *raw != 0.0).unwrap_or(false)
                    }
                    _ => false,
                }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_values() {
        let g = SequenceGen::InvFactorial;
        assert_eq!(g.eval(1), 1.0);
        assert_eq!(g.eval(4), 1.0 / 24.0);
        let s = SequenceGen::InvFactorialShift1;
        assert_eq!(s.eval(1), 0.5);
        assert_eq!(s.eval(3), 1.0 / 24.0);
    }

    #[test]
    fn factorial_underflow_clamps_to_zero() {
        let g = SequenceGen::InvFactorial;
        // 170! ~ 7.3e306 is representable, 1/171! is subnormal.
        assert!(g.eval(170) > 0.0);
        assert_eq!(g.eval(171), 0.0);
        let vals = g.materialize(200);
        assert_eq!(vals[170], 0.0);
        assert!(vals[169] > 0.0);
        let clamped = clamped_indices(&g, 200);
        assert_eq!(clamped.first(), Some(&171));
        assert_eq!(clamped.len(), 30);
    }

    #[test]
    fn materialize_matches_eval() {
        for g in [
            SequenceGen::InvFactorial,
            SequenceGen::InvFactorialShift1,
            SequenceGen::InvSquare,
            SequenceGen::OnePlusInv,
            SequenceGen::Const { value: 2.5 },
        ] {
            let vals = g.materialize(40);
            for n in 1..=40 {
                assert_eq!(vals[n - 1], g.eval(n), "{g:?} at n={n}");
            }
        }
    }

    #[test]
    fn explicit_is_zero_past_list() {
        let g = SequenceGen::Explicit { values: vec![3.0, 2.0] };
        assert_eq!(g.eval(2), 2.0);
        assert_eq!(g.eval(3), 0.0);
    }

    #[test]
    fn json_names_are_kebab_case() {
        let g: SequenceGen = serde_json::from_str(r#"{"gen":"inv-factorial"}"#).unwrap();
        assert_eq!(g, SequenceGen::InvFactorial);
        let g: SequenceGen =
            serde_json::from_str(r#"{"gen":"const","value":1.5}"#).unwrap();
        assert_eq!(g, SequenceGen::Const { value: 1.5 });
        let g: SequenceGen =
            serde_json::from_str(r#"{"gen":"explicit","values":[1.0,0.5]}"#).unwrap();
        assert_eq!(g.eval(2), 0.5);
    }
}
