//! Points of the rapidly decreasing sequence space, tempered gradients,
//! and the seminorms that measure them.
//!
//! A point of the space is held as a finite prefix `x_1..x_N` together with
//! optional decay certificates `(k, C_k)` asserting `|x_n| n^k <= C_k` on the
//! stored range. Seminorm values computed over the prefix are exact for
//! finitely supported points and lower bounds otherwise; every report that
//! consumes them carries the truncation length.
//!
//! Dual seminorms are evaluated against compact envelope boxes
//! `{h : |h_n| <= c_n}` with a rapidly decreasing generator `c_n`. Over such
//! a box the supremum of a linear form is attained at `h_n = c_n sign(g_n)`,
//! so the dual seminorm is the exact weighted absolute sum.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sum::CompensatedSum;

/// A decay certificate: `|x_n| n^k <= c` for every stored n.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayClaim {
    pub k: u32,
    #[serde(rename = "C")]
    pub c: f64,
}

/// Finite prefix of a point of the sequence space, indexed from n = 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncatedSequence {
    entries: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    claims: Vec<DecayClaim>,
}

impl TruncatedSequence {
    /// Build from entries, rejecting non-finite values.
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        for (i, v) in entries.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite { index: i + 1, value: *v });
            }
        }
        Ok(Self { entries, claims: Vec::new() })
    }

    /// Build with decay claims; every claim is checked against every entry.
    pub fn with_claims(entries: Vec<f64>, claims: Vec<DecayClaim>) -> Result<Self> {
        let seq = Self::new(entries)?;
        for claim in &claims {
            for (i, v) in seq.entries.iter().enumerate() {
                let n = i + 1;
                let observed = v.abs() * (n as f64).powi(claim.k as i32);
                if observed > claim.c {
                    return Err(Error::ClaimViolated { k: claim.k, c: claim.c, n, observed });
                }
            }
        }
        Ok(Self { claims, ..seq })
    }

    /// All-zero sequence of length `n`.
    pub fn zeros(n: usize) -> Self {
        Self { entries: vec![0.0; n], claims: Vec::new() }
    }

    /// Unit vector `e_n` (1-based) inside a length-`len` prefix.
    pub fn unit(n: usize, len: usize) -> Self {
        let mut entries = vec![0.0; len];
        if n >= 1 && n <= len {
            entries[n - 1] = 1.0;
        }
        Self { entries, claims: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn claims(&self) -> &[DecayClaim] {
        &self.claims
    }

    /// Entry `x_n` (1-based); zero past the stored prefix.
    pub fn value_at(&self, n: usize) -> f64 {
        if n >= 1 {
            self.entries.get(n - 1).copied().unwrap_or(0.0)
        } else {
            0.0
        }
    }

    /// Componentwise difference, zero-padded to the longer prefix.
    pub fn sub(&self, other: &Self) -> Self {
        let len = self.len().max(other.len());
        let entries = (1..=len).map(|n| self.value_at(n) - other.value_at(n)).collect();
        Self { entries, claims: Vec::new() }
    }

    /// Componentwise sum, zero-padded to the longer prefix.
    pub fn add(&self, other: &Self) -> Self {
        let len = self.len().max(other.len());
        let entries = (1..=len).map(|n| self.value_at(n) + other.value_at(n)).collect();
        Self { entries, claims: Vec::new() }
    }

    /// Scale by a constant.
    pub fn scale(&self, factor: f64) -> Self {
        Self {
            entries: self.entries.iter().map(|v| v * factor).collect(),
            claims: Vec::new(),
        }
    }
}

/// Finite prefix of a tempered (at most polynomially growing) sequence,
/// the natural home of functional gradients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TemperedGradient {
    entries: Vec<f64>,
}

impl TemperedGradient {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        for (i, v) in entries.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite { index: i + 1, value: *v });
            }
        }
        Ok(Self { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn value_at(&self, n: usize) -> f64 {
        if n >= 1 {
            self.entries.get(n - 1).copied().unwrap_or(0.0)
        } else {
            0.0
        }
    }

    /// Componentwise sum, zero-padded to the longer prefix.
    pub fn add(&self, other: &Self) -> Self {
        let len = self.len().max(other.len());
        let entries = (1..=len).map(|n| self.value_at(n) + other.value_at(n)).collect();
        Self { entries }
    }
}

/// Compact envelope box `{h : |h_n| <= c_n}` with generator
/// `c_n = amplitude * exp(-rate * n)`.
///
/// Polynomial generators are not admissible here: `n^{-k}` is not rapidly
/// decreasing, so the box it generates is not compact in the space. The
/// degenerate `amplitude = 0` envelope is allowed for tail bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompactEnvelope {
    amplitude: f64,
    rate: f64,
}

impl CompactEnvelope {
    /// Exponential envelope; requires `amplitude >= 0` and `rate > 0`.
    pub fn exp(amplitude: f64, rate: f64) -> Result<Self> {
        if !(amplitude.is_finite() && rate.is_finite() && amplitude >= 0.0 && rate > 0.0) {
            return Err(Error::InvalidEnvelope { amplitude, rate });
        }
        let env = Self { amplitude, rate };
        // Numerical sanity of sup c_n n^k on the representable range.
        for k in 0..=8 {
            let probe = env.value_at(10_000) * 1e4f64.powi(k);
            if !probe.is_finite() {
                return Err(Error::InvalidEnvelope { amplitude, rate });
            }
        }
        Ok(env)
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    /// Generator value `c_n` (1-based).
    pub fn value_at(&self, n: usize) -> f64 {
        self.amplitude * (-self.rate * n as f64).exp()
    }
}

impl Default for CompactEnvelope {
    /// The conventional reporting envelope `c_n = e^{-n}`.
    fn default() -> Self {
        Self { amplitude: 1.0, rate: 1.0 }
    }
}

/// Seminorm `sup_n |x_n| n^k` over the stored prefix.
///
/// Exact for finitely supported points, otherwise a lower bound for the
/// full-space value.
pub fn seminorm_s(x: &TruncatedSequence, k: u32) -> Result<f64> {
    if x.is_empty() {
        return Err(Error::EmptySequence);
    }
    let mut best = 0.0f64;
    for (i, v) in x.entries().iter().enumerate() {
        let w = v.abs() * ((i + 1) as f64).powi(k as i32);
        if w > best {
            best = w;
        }
    }
    Ok(best)
}

/// Dual seminorm of a gradient over an envelope box: `sum |g_n| c_n`.
///
/// Compensated summation in ascending n.
pub fn dual_seminorm_t(g: &TemperedGradient, envelope: &CompactEnvelope) -> f64 {
    let mut acc = CompensatedSum::new();
    for (i, v) in g.entries().iter().enumerate() {
        acc.add(v.abs() * envelope.value_at(i + 1));
    }
    acc.value()
}

/// One row of a decay-fit table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayRow {
    pub k: u32,
    /// `max_n |x_n| n^k` over the stored range.
    pub c_k: f64,
    /// 1-based index attaining the maximum (first attainment).
    pub argmax_n: usize,
    /// Set when the weighted values keep growing toward the end of the
    /// range, a sign the point is not rapidly decreasing at this order.
    pub growth_flagged: bool,
}

/// Empirical decay certificates for k = 0..=k_max.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct DecayTable {
    pub rows: Vec<DecayRow>,
}

impl DecayTable {
    pub fn row(&self, k: u32) -> Option<&DecayRow> {
        self.rows.iter().find(|r| r.k == k)
    }

    /// True when no row with k <= k_max carries a growth flag.
    pub fn clean_up_to(&self, k_max: u32) -> bool {
        self.rows.iter().filter(|r| r.k <= k_max).all(|r| !r.growth_flagged)
    }

    /// Certificates usable as decay claims (the range maxima are valid
    /// bounds on the stored range by construction).
    pub fn claims(&self) -> Vec<DecayClaim> {
        self.rows.iter().map(|r| DecayClaim { k: r.k, c: r.c_k }).collect()
    }
}

/// Fit decay certificates `C_k = max_n |x_n| n^k` for each k <= k_max.
///
/// Growth at order k is flagged when the maximum of `|x_n| n^k` over the
/// last quarter of the range strictly exceeds the maximum over the rest;
/// ranges shorter than 8 entries are never flagged.
pub fn decay_fit(x: &TruncatedSequence, k_max: u32) -> DecayTable {
    let n = x.len();
    let mut rows = Vec::with_capacity(k_max as usize + 1);
    for k in 0..=k_max {
        let weighted: Vec<f64> = x
            .entries()
            .iter()
            .enumerate()
            .map(|(i, v)| v.abs() * ((i + 1) as f64).powi(k as i32))
            .collect();
        let (mut c_k, mut argmax) = (0.0f64, 0usize);
        for (i, &w) in weighted.iter().enumerate() {
            if w > c_k {
                c_k = w;
                argmax = i + 1;
            }
        }
        if argmax == 0 && n > 0 {
            argmax = 1;
        }
        let growth_flagged = if n >= 8 {
            let split = n - n / 4;
            let head = weighted[..split].iter().cloned().fold(0.0f64, f64::max);
            let tail = weighted[split..].iter().cloned().fold(0.0f64, f64::max);
            tail > head
        } else {
            false
        };
        rows.push(DecayRow { k, c_k, argmax_n: argmax, growth_flagged });
    }
    DecayTable { rows }
}

/// Tail-representative decay constant: `max |x_n| n^k` over the last
/// quarter of the stored range (the whole range when shorter than 8).
///
/// Unlike a decay claim this is not a certificate for early indices; it is
/// the constant that extrapolates the observed tail decay when estimating
/// truncated remainders.
pub fn tail_decay_constant(x: &TruncatedSequence, k: u32) -> f64 {
    let n = x.len();
    let start = if n >= 8 { n - n / 4 } else { 0 };
    x.entries()[start..]
        .iter()
        .enumerate()
        .map(|(i, v)| v.abs() * ((start + i + 1) as f64).powi(k as i32))
        .fold(0.0f64, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn seq(entries: Vec<f64>) -> TruncatedSequence {
        TruncatedSequence::new(entries).unwrap()
    }

    #[test]
    fn seminorm_inverse_sequence_is_one() {
        // n * (1/n) = 1 for every n.
        let x = seq((1..=64).map(|n| 1.0 / n as f64).collect());
        assert_eq!(seminorm_s(&x, 1).unwrap(), 1.0);
    }

    #[test]
    fn seminorm_unit_vector() {
        let x = TruncatedSequence::unit(1, 8);
        assert_eq!(seminorm_s(&x, 5).unwrap(), 1.0);
    }

    #[test]
    fn seminorm_geometric_k3_attained_at_4() {
        // Oracle: enumerate n^3 2^-n over n <= 64; the max is 4.0 at n = 4.
        let mut oracle_best = (0.0f64, 0usize);
        for n in 1..=64u32 {
            let w = (n as f64).powi(3) * 2.0f64.powi(-(n as i32));
            if w > oracle_best.0 {
                oracle_best = (w, n as usize);
            }
        }
        assert_eq!(oracle_best, (4.0, 4));
        let x = seq((1..=64).map(|n: i32| 2.0f64.powi(-n)).collect());
        assert_eq!(seminorm_s(&x, 3).unwrap(), 4.0);
    }

    #[test]
    fn seminorm_rejects_empty() {
        let x = TruncatedSequence::new(Vec::new()).unwrap();
        assert!(matches!(seminorm_s(&x, 0), Err(Error::EmptySequence)));
    }

    #[test]
    fn non_finite_entries_rejected() {
        assert!(TruncatedSequence::new(vec![1.0, f64::NAN]).is_err());
        assert!(TemperedGradient::new(vec![f64::INFINITY]).is_err());
    }

    #[test]
    fn claims_are_validated() {
        let ok = TruncatedSequence::with_claims(
            vec![1.0, 0.25],
            vec![DecayClaim { k: 1, c: 1.0 }],
        );
        assert!(ok.is_ok());
        let bad = TruncatedSequence::with_claims(
            vec![1.0, 0.6],
            vec![DecayClaim { k: 1, c: 1.0 }],
        );
        assert!(matches!(bad, Err(Error::ClaimViolated { n: 2, .. })));
    }

    #[test]
    fn dual_seminorm_single_term() {
        let g = TemperedGradient::new(vec![1.0]).unwrap();
        let env = CompactEnvelope::default();
        assert_abs_diff_eq!(
            dual_seminorm_t(&g, &env),
            0.36787944117144232,
            epsilon = 1e-16
        );
    }

    #[test]
    fn dual_seminorm_zero_gradient() {
        let g = TemperedGradient::new(vec![0.0; 16]).unwrap();
        assert_eq!(dual_seminorm_t(&g, &CompactEnvelope::default()), 0.0);
    }

    #[test]
    fn dual_seminorm_geometric_envelope() {
        // Oracle: partial geometric sum 1 - 2^-64 (indistinguishable from 1).
        let oracle = 1.0 - 2.0f64.powi(-64);
        let g = TemperedGradient::new(vec![1.0; 64]).unwrap();
        let env = CompactEnvelope::exp(1.0, std::f64::consts::LN_2).unwrap();
        assert_abs_diff_eq!(dual_seminorm_t(&g, &env), oracle, epsilon = 1e-13);
    }

    #[test]
    fn decay_fit_factorial_no_growth() {
        // Oracle: enumerate n^4/n! over n <= 20; max 13.5 at n = 3.
        let x = seq(crate::gen::SequenceGen::InvFactorial.materialize(20));
        let table = decay_fit(&x, 4);
        assert!(table.clean_up_to(4));
        let row = table.row(4).unwrap();
        assert_abs_diff_eq!(row.c_k, 13.5, epsilon = 1e-12);
        assert_eq!(row.argmax_n, 3);
    }

    #[test]
    fn decay_fit_flags_constant_sequence() {
        let x = seq(vec![1.0; 64]);
        let table = decay_fit(&x, 1);
        assert!(!table.row(0).unwrap().growth_flagged);
        assert!(table.row(1).unwrap().growth_flagged);
    }

    #[test]
    fn decay_fit_zero_sequence() {
        let x = seq(vec![0.0; 32]);
        let table = decay_fit(&x, 3);
        for row in &table.rows {
            assert_eq!(row.c_k, 0.0);
            assert!(!row.growth_flagged);
        }
    }

    #[test]
    fn envelope_validation() {
        assert!(CompactEnvelope::exp(1.0, 0.0).is_err());
        assert!(CompactEnvelope::exp(-1.0, 1.0).is_err());
        assert!(CompactEnvelope::exp(0.0, 1.0).is_ok());
    }

    #[test]
    fn tail_constant_uses_last_quarter() {
        // Factorial decay: the global max of |x_n| n^2 sits early, the
        // tail constant reflects the end of the range instead.
        let x = seq(crate::gen::SequenceGen::InvFactorial.materialize(64));
        let global = seminorm_s(&x, 2).unwrap();
        let tail = tail_decay_constant(&x, 2);
        assert!(tail < global * 1e-40);
    }
}
