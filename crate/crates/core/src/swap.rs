//! Closed-form entanglement swapping.
//!
//! Take `A = Σ_j a_j |j⊕σ_1, …, j⊕σ_n⟩` and a two-qudit partner
//! `B = Σ_k b_k |k⊕τ_1, k⊕τ_2⟩`. Bell-measuring qudit `s` of `A` (first Bell slot) together
//! with the first qudit of `B` (second Bell slot) and obtaining `(u, v)` leaves
//!
//! ```text
//!   Σ_j a_j · b_{j⊕σ_s⊕v⊖τ_1} · ζ^{-ju} |…, j⊕σ_s⊕v⊕τ_2⊖τ_1, …⟩
//! ```
//!
//! up to normalization and a global phase, with the surviving qudit of `B` standing in slot
//! `s`. The unnormalized norm is `(1/d) Σ_j |a_j|² |b_{j⊕σ_s⊕v⊖τ_1}|²`, which is the Born
//! probability of the outcome. Every swapping scheme for maximally entangled, GHZ, GHZ-class
//! and cat-like states, and repeater chains, is a specialization of this rule.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::bell::BellOutcome;
use crate::error::{Error, Result};
use crate::families::{make_max_entangled, QuditStateFamily};
use crate::modular::{Dimension, ModInt, RootTable};

/// One Bell measurement between slot `slot` (1-based) of the current state and the first qudit
/// of `pair`.
#[derive(Debug, Clone, PartialEq)]
pub struct SwapStep {
    pub slot: usize,
    pub pair: QuditStateFamily,
    pub outcome: BellOutcome,
}

impl SwapStep {
    pub fn new(slot: usize, pair: QuditStateFamily, outcome: BellOutcome) -> Self {
        SwapStep {
            slot,
            pair,
            outcome,
        }
    }

    fn validate(&self, family: &QuditStateFamily) -> Result<()> {
        let dim = family.dim();
        dim.check(self.pair.dim())?;
        dim.check(self.outcome.dim())?;
        if self.pair.n() != 2 {
            return Err(Error::InvalidArity { n: self.pair.n() });
        }
        if self.slot == 0 || self.slot > family.n() {
            return Err(Error::InvalidSlot {
                slot: self.slot,
                n: family.n(),
            });
        }
        Ok(())
    }
}

/// Unnormalized post-measurement coefficients, new shift vector and Born probability.
fn swap_unnormalized(
    family: &QuditStateFamily,
    step: &SwapStep,
) -> Result<(Vec<Complex64>, Vec<ModInt>, f64)> {
    step.validate(family)?;
    let dim = family.dim();
    let d = dim.get();
    let roots = RootTable::new(dim);
    let sigma = family.shifts()[step.slot - 1];
    let tau = step.pair.shifts();
    let (u, v) = (step.outcome.u, step.outcome.v);
    // partner index k(j) = j ⊕ (σ_s ⊕ v ⊖ τ_1)
    let offset = (sigma + v - tau[0]).value();
    let a = family.amplitudes();
    let b = step.pair.amplitudes();
    let mut amps = Vec::with_capacity(d);
    let mut weight = 0.0;
    for j in 0..d {
        let bk = b[(j + offset) % d];
        weight += a[j].norm_sqr() * bk.norm_sqr();
        amps.push(a[j] * bk * roots.pow(-((j * u.value()) as i64)));
    }
    let mut shifts = family.shifts().to_vec();
    shifts[step.slot - 1] = sigma + v + tau[1] - tau[0];
    Ok((amps, shifts, weight / d as f64))
}

/// Predicted post-measurement family, renormalized and with its global phase canonicalized.
pub fn predict_swap(family: &QuditStateFamily, step: &SwapStep) -> Result<QuditStateFamily> {
    let (amps, shifts, _) = swap_unnormalized(family, step)?;
    Ok(QuditStateFamily::from_unnormalized(family.dim(), amps, shifts)?.canonicalized())
}

/// Born probability of `step.outcome`, from the closed form.
pub fn swap_probability(family: &QuditStateFamily, step: &SwapStep) -> Result<f64> {
    swap_unnormalized(family, step).map(|(_, _, p)| p)
}

/// Left fold of [`predict_swap`] over `steps`.
pub fn predict_multi_swap(family: &QuditStateFamily, steps: &[SwapStep]) -> Result<QuditStateFamily> {
    steps
        .iter()
        .try_fold(family.clone(), |acc, step| predict_swap(&acc, step))
}

/// Joint Born probability of a sequence of swaps.
pub fn multi_swap_probability(family: &QuditStateFamily, steps: &[SwapStep]) -> Result<f64> {
    let mut current = family.clone();
    let mut p = 1.0;
    for step in steps {
        p *= swap_probability(&current, step)?;
        current = predict_swap(&current, step)?;
    }
    Ok(p)
}

/// Swapping every slot of the `n`-qudit maximally entangled state, slot `k` with
/// `|Ψ(partners[k])⟩` (a zero label is the maximally entangled pair), measured as
/// `outcomes[k]`:
///
/// ```text
///   Σ_j ζ^{j Σ_k (u_k − u′_k)} |j⊕v_1⊕v′_1, …, j⊕v_n⊕v′_n⟩
/// ```
pub fn predict_swap_every_slot(
    d: Dimension,
    partners: &[BellOutcome],
    outcomes: &[BellOutcome],
) -> Result<QuditStateFamily> {
    if partners.is_empty() {
        return Err(Error::InvalidArity { n: 0 });
    }
    if partners.len() != outcomes.len() {
        return Err(Error::LengthMismatch {
            expected: partners.len(),
            actual: outcomes.len(),
        });
    }
    let mut phase = d.zero();
    let mut shifts = Vec::with_capacity(partners.len());
    for (p, o) in partners.iter().zip(outcomes) {
        d.check(p.dim())?;
        d.check(o.dim())?;
        phase = phase + p.u - o.u;
        shifts.push(p.v + o.v);
    }
    let roots = RootTable::new(d);
    let amps = (0..d.get())
        .map(|j| roots.pow((j * phase.value()) as i64))
        .collect();
    Ok(QuditStateFamily::from_unnormalized(d, amps, shifts)?.canonicalized())
}

/// End-to-end state of a repeater chain of `outcomes.len() + 1` maximally entangled pairs
/// with Bell measurements on every intermediate node:
/// `Σ_j ζ^{-j Σu′_k} |j, j⊕Σv′_k⟩`.
pub fn predict_chain(d: Dimension, outcomes: &[BellOutcome]) -> Result<QuditStateFamily> {
    if outcomes.is_empty() {
        return Err(Error::InvalidConfig("chain needs at least one Bell measurement"));
    }
    let mut u_sum = d.zero();
    let mut v_sum = d.zero();
    for o in outcomes {
        d.check(o.dim())?;
        u_sum = u_sum + o.u;
        v_sum = v_sum + o.v;
    }
    let roots = RootTable::new(d);
    let amps = (0..d.get())
        .map(|j| roots.pow(-((j * u_sum.value()) as i64)))
        .collect();
    Ok(QuditStateFamily::from_unnormalized(d, amps, alloc::vec![d.zero(), v_sum])?.canonicalized())
}

/// The chain as swap steps: the running end-to-end pair keeps its far qudit in slot 2, which
/// is swapped with the next maximally entangled pair.
pub fn chain_steps(d: Dimension, outcomes: &[BellOutcome]) -> Result<Vec<SwapStep>> {
    let pair = make_max_entangled(d, 2)?;
    Ok(outcomes
        .iter()
        .map(|&o| SwapStep::new(2, pair.clone(), o))
        .collect())
}
