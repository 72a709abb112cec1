//! Dense pure states of labelled qudit registers.
//!
//! Amplitudes are stored row-major in base-`d` digit order: the first label is the most
//! significant digit. Measured qudits are removed from the register, so the labels of a
//! post-measurement state are the unmeasured subset in their original order.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;
use rand::Rng;

use crate::error::{Error, Result};
use crate::modular::{Dimension, ModInt};
use crate::rng::sample_index;

/// Identifier of one qudit in a register.
pub type Label = u32;

/// Tolerance on `Σ|amp|² = 1` for stored states.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Hard ceiling on register size (amplitude count). User-facing guards are stricter.
pub const MAX_AMPLITUDES: usize = 1 << 25;

/// Branches whose Born probability is at or below this are treated as impossible.
pub const ZERO_PROBABILITY: f64 = 1e-24;

#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    dim: Dimension,
    labels: Vec<Label>,
    amps: Vec<Complex64>,
}

impl PureState {
    /// Builds a state, rescaling `amps` to unit norm.
    pub fn new(dim: Dimension, labels: Vec<Label>, amps: Vec<Complex64>) -> Result<Self> {
        check_labels(&labels)?;
        let expected = register_len(dim, labels.len())?;
        if amps.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                actual: amps.len(),
            });
        }
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let mut state = PureState { dim, labels, amps };
        let norm_sqr = state.norm_sqr();
        if norm_sqr == 0.0 {
            return Err(Error::ZeroNorm);
        }
        if !norm_sqr.is_finite() {
            return Err(Error::NonFinite);
        }
        state.scale(1.0 / Float::sqrt(norm_sqr));
        Ok(state)
    }

    /// Computational basis state `|digits⟩`.
    pub fn basis(dim: Dimension, labels: Vec<Label>, digits: &[usize]) -> Result<Self> {
        if digits.len() != labels.len() {
            return Err(Error::LengthMismatch {
                expected: labels.len(),
                actual: digits.len(),
            });
        }
        check_labels(&labels)?;
        let len = register_len(dim, labels.len())?;
        let mut index = 0;
        for &digit in digits {
            if digit >= dim.get() {
                return Err(Error::OutOfRange {
                    value: digit,
                    d: dim.get(),
                });
            }
            index = index * dim.get() + digit;
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); len];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(PureState { dim, labels, amps })
    }

    /// Internal constructor for vectors that are already unit-norm and well-formed.
    pub(crate) fn from_parts(dim: Dimension, labels: Vec<Label>, amps: Vec<Complex64>) -> Self {
        debug_assert_eq!(Some(amps.len()), dim.pow(labels.len()));
        PureState { dim, labels, amps }
    }

    #[inline]
    pub fn dim(&self) -> Dimension {
        self.dim
    }

    #[inline]
    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    #[inline]
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    #[inline]
    pub fn num_qudits(&self) -> usize {
        self.labels.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Amplitude of the basis state with the given digits (one per label, in label order).
    pub fn amplitude(&self, digits: &[usize]) -> Option<Complex64> {
        if digits.len() != self.labels.len() {
            return None;
        }
        let mut index = 0;
        for &digit in digits {
            if digit >= self.dim.get() {
                return None;
            }
            index = index * self.dim.get() + digit;
        }
        Some(self.amps[index])
    }

    pub fn position(&self, label: Label) -> Result<usize> {
        self.labels
            .iter()
            .position(|&l| l == label)
            .ok_or(Error::UnknownLabel(label))
    }

    /// Index stride of the digit at register position `pos`.
    #[inline]
    pub(crate) fn stride(&self, pos: usize) -> usize {
        let mut s = 1;
        for _ in pos + 1..self.labels.len() {
            s *= self.dim.get();
        }
        s
    }

    fn scale(&mut self, factor: f64) {
        for a in &mut self.amps {
            *a *= factor;
        }
    }

    /// Multiplies by a scalar; the result is renormalized, so only the phase of `factor` matters.
    pub fn with_global_phase(&self, phase: Complex64) -> Result<PureState> {
        PureState::new(
            self.dim,
            self.labels.clone(),
            self.amps.iter().map(|a| a * phase).collect(),
        )
    }

    /// `self ⊗ other`, labels concatenated.
    pub fn tensor(&self, other: &PureState) -> Result<PureState> {
        self.dim.check(other.dim)?;
        if let Some(&dup) = other.labels.iter().find(|l| self.labels.contains(l)) {
            return Err(Error::DuplicateLabel(dup));
        }
        let mut labels = self.labels.clone();
        labels.extend_from_slice(&other.labels);
        register_len(self.dim, labels.len())?;
        let mut amps = Vec::with_capacity(self.amps.len() * other.amps.len());
        for a in &self.amps {
            amps.extend(other.amps.iter().map(|b| a * b));
        }
        Ok(PureState::from_parts(self.dim, labels, amps))
    }

    /// `⟨self|other⟩`. Both registers must carry the same labels in the same order.
    pub fn inner_product(&self, other: &PureState) -> Result<Complex64> {
        self.dim.check(other.dim)?;
        if self.labels != other.labels {
            return Err(Error::RegisterMismatch);
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|⟨self|other⟩|`, clamped to `[0, 1]`.
    pub fn fidelity_up_to_phase(&self, other: &PureState) -> Result<f64> {
        Ok(self.inner_product(other)?.norm().min(1.0))
    }

    /// Same state with its qudits permuted into `order` (a permutation of the current labels).
    pub fn reorder(&self, order: &[Label]) -> Result<PureState> {
        if order.len() != self.labels.len() {
            return Err(Error::RegisterMismatch);
        }
        check_labels(order)?;
        let src_pos = order
            .iter()
            .map(|&l| self.position(l))
            .collect::<Result<Vec<_>>>()?;
        if src_pos.iter().enumerate().all(|(i, &p)| i == p) {
            return Ok(self.clone());
        }
        let src_strides: Vec<usize> = src_pos.iter().map(|&p| self.stride(p)).collect();
        let d = self.dim.get();
        let n = order.len();
        let mut amps = Vec::with_capacity(self.amps.len());
        let mut digits = vec![0usize; n];
        let mut src = 0usize;
        for _ in 0..self.amps.len() {
            amps.push(self.amps[src]);
            // odometer over the destination digits, least significant last
            for k in (0..n).rev() {
                digits[k] += 1;
                src += src_strides[k];
                if digits[k] < d {
                    break;
                }
                digits[k] = 0;
                src -= d * src_strides[k];
            }
        }
        Ok(PureState::from_parts(self.dim, order.to_vec(), amps))
    }

    /// Renames qudits positionally without touching amplitudes.
    pub fn relabel(&self, labels: Vec<Label>) -> Result<PureState> {
        if labels.len() != self.labels.len() {
            return Err(Error::RegisterMismatch);
        }
        check_labels(&labels)?;
        Ok(PureState::from_parts(self.dim, labels, self.amps.clone()))
    }

    /// Born probabilities of each computational outcome of one qudit.
    pub fn computational_distribution(&self, qudit: Label) -> Result<Vec<f64>> {
        let pos = self.position(qudit)?;
        let stride = self.stride(pos);
        let d = self.dim.get();
        let mut probs = vec![0.0; d];
        for (i, a) in self.amps.iter().enumerate() {
            probs[(i / stride) % d] += a.norm_sqr();
        }
        Ok(probs)
    }

    /// Projects `qudit` onto `|outcome⟩`, returning the Born probability and the renormalized
    /// state of the remaining qudits.
    pub fn project_computational(&self, qudit: Label, outcome: ModInt) -> Result<(f64, PureState)> {
        self.dim.check(outcome.dim())?;
        let pos = self.position(qudit)?;
        let stride = self.stride(pos);
        let block = stride * self.dim.get();
        let offset = outcome.value() * stride;
        let mut amps = Vec::with_capacity(self.amps.len() / self.dim.get());
        for hi in (0..self.amps.len()).step_by(block) {
            amps.extend_from_slice(&self.amps[hi + offset..hi + offset + stride]);
        }
        let probability: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if probability <= ZERO_PROBABILITY {
            return Err(Error::ZeroProbability { probability });
        }
        let mut labels = self.labels.clone();
        labels.remove(pos);
        let mut post = PureState::from_parts(self.dim, labels, amps);
        post.scale(1.0 / Float::sqrt(probability));
        Ok((probability, post))
    }

    /// Samples a computational-basis measurement of `qudit`.
    pub fn measure_computational<R: Rng + ?Sized>(
        &self,
        qudit: Label,
        rng: &mut R,
    ) -> Result<(ModInt, PureState)> {
        let probs = self.computational_distribution(qudit)?;
        let outcome = ModInt::new(sample_index(rng, &probs), self.dim)?;
        let (_, post) = self.project_computational(qudit, outcome)?;
        Ok((outcome, post))
    }

    /// Base indices (removed digits set to zero) of the register obtained by deleting the
    /// qudits at `removed` positions, in row-major order of what remains.
    pub(crate) fn rest_offsets(&self, removed: &[usize]) -> Vec<usize> {
        let d = self.dim.get();
        let mut offsets = vec![0usize];
        for pos in 0..self.labels.len() {
            if removed.contains(&pos) {
                continue;
            }
            let stride = self.stride(pos);
            offsets = offsets
                .iter()
                .flat_map(|&b| (0..d).map(move |digit| b + digit * stride))
                .collect();
        }
        offsets
    }
}

/// `a ⊗ b`.
pub fn tensor(a: &PureState, b: &PureState) -> Result<PureState> {
    a.tensor(b)
}

/// `⟨a|b⟩`.
pub fn inner_product(a: &PureState, b: &PureState) -> Result<Complex64> {
    a.inner_product(b)
}

/// `|⟨a|b⟩|`: 1 exactly when the states agree up to a global phase.
pub fn fidelity_up_to_phase(a: &PureState, b: &PureState) -> Result<f64> {
    a.fidelity_up_to_phase(b)
}

pub fn project_computational(
    state: &PureState,
    qudit: Label,
    outcome: ModInt,
) -> Result<(f64, PureState)> {
    state.project_computational(qudit, outcome)
}

fn check_labels(labels: &[Label]) -> Result<()> {
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(Error::DuplicateLabel(*l));
        }
    }
    Ok(())
}

fn register_len(dim: Dimension, n: usize) -> Result<usize> {
    match dim.pow(n) {
        Some(len) if len <= MAX_AMPLITUDES => Ok(len),
        other => Err(Error::RegisterTooLarge {
            amplitudes: other.unwrap_or(usize::MAX),
            max: MAX_AMPLITUDES,
        }),
    }
}
