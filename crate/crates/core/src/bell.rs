//! Generalized Bell basis `|Ψ(u,v)⟩ = (1/√d) Σ_j ζ^{ju} |j, j⊕v⟩` and projective Bell
//! measurement on any two qudits of a register.
//!
//! For `bell_project(state, a, b, ..)` qudit `a` occupies the unshifted slot `|j⟩` and `b` the
//! shifted slot `|j⊕v⟩`. Passing `(b, a)` instead measures in the mirrored convention.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use num_traits::Float;
use rand::Rng;

use crate::error::{Error, Result};
use crate::modular::{Dimension, ModInt, RootTable};
use crate::rng::{sample_index, RandomSeed};
use crate::state::{Label, PureState, ZERO_PROBABILITY};

/// Label `(u, v)` of a generalized Bell state; also the outcome of a Bell measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BellOutcome {
    pub u: ModInt,
    pub v: ModInt,
}

impl BellOutcome {
    pub fn new(u: ModInt, v: ModInt) -> Result<Self> {
        u.dim().check(v.dim())?;
        Ok(BellOutcome { u, v })
    }

    pub fn from_values(dim: Dimension, u: usize, v: usize) -> Result<Self> {
        Ok(BellOutcome {
            u: ModInt::new(u, dim)?,
            v: ModInt::new(v, dim)?,
        })
    }

    pub fn zero(dim: Dimension) -> Self {
        BellOutcome {
            u: dim.zero(),
            v: dim.zero(),
        }
    }

    pub fn dim(self) -> Dimension {
        self.u.dim()
    }

    /// Position in lexicographic `(u, v)` order.
    pub fn index(self) -> usize {
        self.u.value() * self.dim().get() + self.v.value()
    }

    pub fn from_index(dim: Dimension, index: usize) -> Result<Self> {
        let d = dim.get();
        if index >= d * d {
            return Err(Error::OutOfRange {
                value: index,
                d: d * d,
            });
        }
        BellOutcome::from_values(dim, index / d, index % d)
    }

    /// All `d²` outcomes in lexicographic order.
    pub fn all(dim: Dimension) -> impl Iterator<Item = BellOutcome> + Clone {
        dim.residues()
            .flat_map(move |u| dim.residues().map(move |v| BellOutcome { u, v }))
    }
}

impl fmt::Display for BellOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u, self.v)
    }
}

/// `|Ψ(u,v)⟩` on the register `[1, 2]`.
pub fn bell_state(d: Dimension, u: ModInt, v: ModInt) -> Result<PureState> {
    d.check(u.dim())?;
    bell_state_on(BellOutcome::new(u, v)?, [1, 2])
}

/// `|Ψ(u,v)⟩` on an explicit pair of labels.
pub fn bell_state_on(outcome: BellOutcome, labels: [Label; 2]) -> Result<PureState> {
    let dim = outcome.dim();
    let d = dim.get();
    let roots = RootTable::new(dim);
    let norm = 1.0 / Float::sqrt(d as f64);
    let mut amps = vec![Complex64::new(0.0, 0.0); d * d];
    for j in 0..d {
        let shifted = (j + outcome.v.value()) % d;
        amps[j * d + shifted] = roots.pow((j * outcome.u.value()) as i64) * norm;
    }
    PureState::new(dim, labels.to_vec(), amps)
}

/// Index geometry of a Bell measurement on qudits `(a, b)` of a register.
struct PairLayout {
    dim: Dimension,
    stride_a: usize,
    stride_b: usize,
    rest: Vec<usize>,
    rest_labels: Vec<Label>,
}

impl PairLayout {
    fn new(state: &PureState, a: Label, b: Label) -> Result<Self> {
        if a == b {
            return Err(Error::DuplicateLabel(a));
        }
        let pa = state.position(a)?;
        let pb = state.position(b)?;
        let rest_labels = state
            .labels()
            .iter()
            .copied()
            .filter(|&l| l != a && l != b)
            .collect();
        Ok(PairLayout {
            dim: state.dim(),
            stride_a: state.stride(pa),
            stride_b: state.stride(pb),
            rest: state.rest_offsets(&[pa, pb]),
            rest_labels,
        })
    }

    #[inline]
    fn index(&self, base: usize, x: usize, y: usize) -> usize {
        base + x * self.stride_a + y * self.stride_b
    }
}

/// Unnormalized `(⟨Ψ(u,v)|_{ab} ⊗ I)|state⟩` and its squared norm.
fn project_unnormalized(
    state: &PureState,
    layout: &PairLayout,
    outcome: BellOutcome,
) -> (Vec<Complex64>, f64) {
    let d = layout.dim.get();
    let roots = RootTable::new(layout.dim);
    let norm = 1.0 / Float::sqrt(d as f64);
    let u = outcome.u.value() as i64;
    let v = outcome.v.value();
    let amps = state.amplitudes();
    let mut out = Vec::with_capacity(layout.rest.len());
    let mut norm_sqr = 0.0;
    for &base in &layout.rest {
        let mut acc = Complex64::new(0.0, 0.0);
        for m in 0..d {
            let idx = layout.index(base, m, (m + v) % d);
            acc += roots.pow(-(m as i64) * u) * amps[idx];
        }
        acc *= norm;
        norm_sqr += acc.norm_sqr();
        out.push(acc);
    }
    (out, norm_sqr)
}

/// Projects qudits `(a, b)` onto `|Ψ(outcome)⟩`. Returns the Born probability and the
/// renormalized state of the remaining qudits.
pub fn bell_project(
    state: &PureState,
    a: Label,
    b: Label,
    outcome: BellOutcome,
) -> Result<(f64, PureState)> {
    state.dim().check(outcome.dim())?;
    let layout = PairLayout::new(state, a, b)?;
    let (mut amps, probability) = project_unnormalized(state, &layout, outcome);
    if probability <= ZERO_PROBABILITY {
        return Err(Error::ZeroProbability { probability });
    }
    let scale = 1.0 / Float::sqrt(probability);
    for x in &mut amps {
        *x *= scale;
    }
    Ok((
        probability,
        PureState::from_parts(state.dim(), layout.rest_labels, amps),
    ))
}

/// Born probabilities of all `d²` Bell outcomes on `(a, b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BellDistribution {
    dim: Dimension,
    probs: Vec<f64>,
}

impl BellDistribution {
    pub fn get(&self, outcome: BellOutcome) -> f64 {
        self.probs[outcome.index()]
    }

    /// Probabilities in lexicographic `(u, v)` order.
    pub fn as_slice(&self) -> &[f64] {
        &self.probs
    }

    pub fn iter(&self) -> impl Iterator<Item = (BellOutcome, f64)> + '_ {
        BellOutcome::all(self.dim).zip(self.probs.iter().copied())
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }
}

pub fn bell_outcome_distribution(state: &PureState, a: Label, b: Label) -> Result<BellDistribution> {
    let layout = PairLayout::new(state, a, b)?;
    let dim = layout.dim;
    let d = dim.get();
    let roots = RootTable::new(dim);
    let amps = state.amplitudes();
    let mut probs = vec![0.0; d * d];
    let mut column = vec![Complex64::new(0.0, 0.0); d];
    for v in 0..d {
        for &base in &layout.rest {
            for (m, slot) in column.iter_mut().enumerate() {
                *slot = amps[layout.index(base, m, (m + v) % d)];
            }
            for u in 0..d {
                let acc: Complex64 = column
                    .iter()
                    .enumerate()
                    .map(|(m, w)| roots.pow(-((m * u) as i64)) * w)
                    .sum();
                probs[u * d + v] += acc.norm_sqr();
            }
        }
    }
    for p in &mut probs {
        *p /= d as f64;
    }
    Ok(BellDistribution { dim, probs })
}

/// Samples a Bell measurement on `(a, b)` with a generator seeded from `seed`.
pub fn bell_measure(
    state: &PureState,
    a: Label,
    b: Label,
    seed: RandomSeed,
) -> Result<(BellOutcome, PureState)> {
    bell_measure_with(state, a, b, &mut seed.rng())
}

/// Samples a Bell measurement on `(a, b)`: `v` from its marginal, then `u` given `v`.
/// Both stages are linear in the register size, unlike the full distribution.
pub fn bell_measure_with<R: Rng + ?Sized>(
    state: &PureState,
    a: Label,
    b: Label,
    rng: &mut R,
) -> Result<(BellOutcome, PureState)> {
    let layout = PairLayout::new(state, a, b)?;
    let dim = layout.dim;
    let d = dim.get();
    let amps = state.amplitudes();

    // p(v) = Σ_u p(u,v) = Σ_{rest, m} |ψ(m, m⊕v, rest)|² by Parseval.
    let mut marginal = vec![0.0; d];
    for &base in &layout.rest {
        for x in 0..d {
            for y in 0..d {
                marginal[(y + d - x) % d] += amps[layout.index(base, x, y)].norm_sqr();
            }
        }
    }
    let v = sample_index(rng, &marginal);

    let roots = RootTable::new(dim);
    let mut conditional = vec![0.0; d];
    let mut column = vec![Complex64::new(0.0, 0.0); d];
    for &base in &layout.rest {
        for (m, slot) in column.iter_mut().enumerate() {
            *slot = amps[layout.index(base, m, (m + v) % d)];
        }
        for (u, p) in conditional.iter_mut().enumerate() {
            let acc: Complex64 = column
                .iter()
                .enumerate()
                .map(|(m, w)| roots.pow(-((m * u) as i64)) * w)
                .sum();
            *p += acc.norm_sqr();
        }
    }
    let u = sample_index(rng, &conditional);

    let outcome = BellOutcome::from_values(dim, u, v)?;
    let (_, post) = bell_project(state, a, b, outcome)?;
    Ok((outcome, post))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::root_of_unity;

    fn dim(d: usize) -> Dimension {
        Dimension::new(d).unwrap()
    }

    fn outcome(d: usize, u: usize, v: usize) -> BellOutcome {
        BellOutcome::from_values(dim(d), u, v).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn psi_max(d: usize, labels: [Label; 2]) -> PureState {
        bell_state_on(BellOutcome::zero(dim(d)), labels).unwrap()
    }

    fn close(a: &PureState, b: &PureState) -> bool {
        (a.fidelity_up_to_phase(b).unwrap() - 1.0).abs() < 1e-12
    }

    #[test]
    fn bell_state_examples() {
        let h = core::f64::consts::FRAC_1_SQRT_2;
        let s = bell_state(dim(2), ModInt::new(0, dim(2)).unwrap(), dim(2).zero()).unwrap();
        assert_eq!(s.amplitudes(), &[c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(h, 0.0)]);

        let o = outcome(2, 1, 1);
        let s = bell_state_on(o, [1, 2]).unwrap();
        let amps = s.amplitudes();
        assert!((amps[1] - c(h, 0.0)).norm() < 1e-15);
        assert!((amps[2] - c(-h, 0.0)).norm() < 1e-15);

        let o = outcome(3, 1, 1);
        let s = bell_state_on(o, [1, 2]).unwrap();
        let z = root_of_unity(dim(3), 1);
        let r = 1.0 / 3f64.sqrt();
        assert!((s.amplitude(&[0, 1]).unwrap() - c(r, 0.0)).norm() < 1e-15);
        assert!((s.amplitude(&[1, 2]).unwrap() - z * r).norm() < 1e-15);
        assert!((s.amplitude(&[2, 0]).unwrap() - z * z * r).norm() < 1e-15);
    }

    #[test]
    fn orthonormal_basis_small() {
        for d in 2..=4 {
            for o1 in BellOutcome::all(dim(d)) {
                let s1 = bell_state_on(o1, [1, 2]).unwrap();
                for o2 in BellOutcome::all(dim(d)) {
                    let s2 = bell_state_on(o2, [1, 2]).unwrap();
                    let ip = s1.inner_product(&s2).unwrap();
                    let expected = if o1 == o2 { 1.0 } else { 0.0 };
                    assert!((ip - c(expected, 0.0)).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn swap_of_two_max_pairs() {
        let input = psi_max(2, [1, 2]).tensor(&psi_max(2, [3, 4])).unwrap();
        let (p, post) = bell_project(&input, 2, 3, outcome(2, 0, 0)).unwrap();
        assert!((p - 0.25).abs() < 1e-12);
        assert_eq!(post.labels(), &[1, 4]);
        assert!(close(&post, &psi_max(2, [1, 4])));

        let (p, post) = bell_project(&input, 2, 3, outcome(2, 1, 1)).unwrap();
        assert!((p - 0.25).abs() < 1e-12);
        let singlet = bell_state_on(outcome(2, 1, 1), [1, 4]).unwrap();
        assert!(close(&post, &singlet));
    }

    #[test]
    fn vanishing_branch() {
        let zero = PureState::basis(dim(2), vec![1, 2, 3, 4], &[0, 0, 0, 0]).unwrap();
        assert!(matches!(
            bell_project(&zero, 2, 3, outcome(2, 0, 1)),
            Err(Error::ZeroProbability { .. })
        ));
    }

    #[test]
    fn label_errors() {
        let s = psi_max(2, [1, 2]);
        assert_eq!(
            bell_project(&s, 1, 1, outcome(2, 0, 0)),
            Err(Error::DuplicateLabel(1))
        );
        assert_eq!(
            bell_outcome_distribution(&s, 1, 7),
            Err(Error::UnknownLabel(7))
        );
        assert!(bell_project(&s, 1, 2, outcome(3, 0, 0)).is_err());
    }

    #[test]
    fn distribution_of_max_pairs_is_uniform() {
        let input = psi_max(3, [1, 2]).tensor(&psi_max(3, [3, 4])).unwrap();
        let dist = bell_outcome_distribution(&input, 2, 3).unwrap();
        for (_, p) in dist.iter() {
            assert!((p - 1.0 / 9.0).abs() < 1e-12);
        }
    }

    #[test]
    fn distribution_of_basis_state() {
        let s = PureState::basis(dim(2), vec![1, 2], &[0, 0]).unwrap();
        let dist = bell_outcome_distribution(&s, 1, 2).unwrap();
        assert!((dist.get(outcome(2, 0, 0)) - 0.5).abs() < 1e-12);
        assert!((dist.get(outcome(2, 1, 0)) - 0.5).abs() < 1e-12);
        assert!(dist.get(outcome(2, 0, 1)).abs() < 1e-12);
        assert!(dist.get(outcome(2, 1, 1)).abs() < 1e-12);
        assert!((dist.total() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn distribution_agrees_with_projection() {
        let amps: Vec<Complex64> = (0..27)
            .map(|i| c((i as f64 * 0.37).sin(), (i as f64 * 1.3).cos()))
            .collect();
        let s = PureState::new(dim(3), vec![5, 6, 7], amps).unwrap();
        let dist = bell_outcome_distribution(&s, 7, 5).unwrap();
        for o in BellOutcome::all(dim(3)) {
            let p = bell_project(&s, 7, 5, o).map(|(p, _)| p).unwrap_or(0.0);
            assert!((p - dist.get(o)).abs() < 1e-12);
        }
        assert!((dist.total() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn measure_is_deterministic() {
        let input = psi_max(3, [1, 2]).tensor(&psi_max(3, [3, 4])).unwrap();
        let a = bell_measure(&input, 2, 3, RandomSeed(42)).unwrap();
        let b = bell_measure(&input, 2, 3, RandomSeed(42)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn measure_respects_support() {
        let zero = PureState::basis(dim(2), vec![1, 2, 3, 4], &[0, 0, 0, 0]).unwrap();
        for seed in 0..200 {
            let (o, _) = bell_measure(&zero, 2, 3, RandomSeed(seed)).unwrap();
            assert_eq!(o.v.value(), 0);
        }
    }

    #[test]
    fn outcome_index_round_trip() {
        for o in BellOutcome::all(dim(5)) {
            assert_eq!(BellOutcome::from_index(dim(5), o.index()).unwrap(), o);
        }
        assert!(BellOutcome::from_index(dim(5), 25).is_err());
    }
}
