//! Brute-force oracle for every closed form in [`crate::swap`], plus the case model used by
//! sweeps.
//!
//! The oracle never looks at the swap rule: it expands the family and its partner into one
//! dense register, applies [`bell_project`] and reads off the Born probability and the
//! post-measurement state.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::time::Duration;

use crate::bell::{bell_project, BellOutcome};
use crate::error::{Error, Result};
use crate::families::{make_max_entangled, FamilyKind, FamilySpec, QuditStateFamily};
use crate::modular::Dimension;
use crate::rng::{random_residue, RandomSeed};
use crate::state::{Label, PureState};
use crate::swap::{
    chain_steps, multi_swap_probability, predict_chain, predict_multi_swap, predict_swap,
    swap_probability, SwapStep,
};

/// Pass thresholds: `fidelity ≥ 1 − fidelity` and `|p_oracle − p_expected| ≤ probability`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Tolerances {
    pub fidelity: f64,
    pub probability: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            fidelity: 1e-10,
            probability: 1e-10,
        }
    }
}

/// Bell-measures position `slot` (1-based) of `state` with the first qudit of `pair`. The
/// pair's surviving qudit gets a fresh label and is moved into position `slot`.
pub fn oracle_swap_state(
    state: &PureState,
    slot: usize,
    pair: &QuditStateFamily,
    outcome: BellOutcome,
) -> Result<(f64, PureState)> {
    if slot == 0 || slot > state.num_qudits() {
        return Err(Error::InvalidSlot {
            slot,
            n: state.num_qudits(),
        });
    }
    if pair.n() != 2 {
        return Err(Error::InvalidArity { n: pair.n() });
    }
    let fresh = state.labels().iter().copied().max().unwrap_or(0) + 1;
    let measured = state.labels()[slot - 1];
    let joint = state.tensor(&pair.to_state(&[fresh, fresh + 1])?)?;
    let (p, post) = bell_project(&joint, measured, fresh, outcome)?;
    let mut order: Vec<Label> = state.labels().to_vec();
    order[slot - 1] = fresh + 1;
    Ok((p, post.reorder(&order)?))
}

/// Oracle for one swap on a family expanded over labels `1..=n`.
pub fn oracle_swap(family: &QuditStateFamily, step: &SwapStep) -> Result<(f64, PureState)> {
    family.dim().check(step.pair.dim())?;
    let labels: Vec<Label> = (1..=family.n() as Label).collect();
    oracle_swap_state(&family.to_state(&labels)?, step.slot, &step.pair, step.outcome)
}

/// Sequential oracle: each step is applied to the dense result of the previous one. Returns
/// the joint probability.
pub fn oracle_multi_swap(family: &QuditStateFamily, steps: &[SwapStep]) -> Result<(f64, PureState)> {
    let labels: Vec<Label> = (1..=family.n() as Label).collect();
    let mut state = family.to_state(&labels)?;
    let mut p = 1.0;
    for step in steps {
        let (q, next) = oracle_swap_state(&state, step.slot, &step.pair, step.outcome)?;
        p *= q;
        state = next;
    }
    Ok((p, state))
}

/// Oracle for a chain of `outcomes.len() + 1` maximally entangled pairs on qudits
/// `(1,2), (3,4), …, (2n−1, 2n)`. The full register is built up front and the Bell
/// measurements on `(2k, 2k+1)` are applied in order; what remains is qudits `(1, 2n)`.
pub fn oracle_chain(d: Dimension, outcomes: &[BellOutcome]) -> Result<(f64, PureState)> {
    if outcomes.is_empty() {
        return Err(Error::InvalidConfig("chain needs at least one Bell measurement"));
    }
    let pair = make_max_entangled(d, 2)?;
    let pairs = outcomes.len() as Label + 1;
    let mut state = pair.to_state(&[1, 2])?;
    for k in 1..pairs {
        state = state.tensor(&pair.to_state(&[2 * k + 1, 2 * k + 2])?)?;
    }
    let mut p = 1.0;
    for (k, &outcome) in outcomes.iter().enumerate() {
        let k = k as Label + 1;
        let (q, next) = bell_project(&state, 2 * k, 2 * k + 1, outcome)?;
        p *= q;
        state = next;
    }
    Ok((p, state))
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case", tag = "status", content = "reason"))]
pub enum CaseStatus {
    Pass,
    Fail,
    /// Zero-probability branch; neither pass nor fail.
    Skipped(String),
    /// The case could not be built; counts as a failure.
    Invalid(String),
}

/// Oracle-versus-closed-form comparison numbers for one case.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseCheck {
    pub probability_oracle: f64,
    pub probability_expected: f64,
    pub fidelity: f64,
    pub status: CaseStatus,
}

impl CaseCheck {
    fn judge(probability_oracle: f64, probability_expected: f64, fidelity: f64, tol: &Tolerances) -> Self {
        let pass = fidelity >= 1.0 - tol.fidelity
            && (probability_oracle - probability_expected).abs() <= tol.probability;
        CaseCheck {
            probability_oracle,
            probability_expected,
            fidelity,
            status: if pass { CaseStatus::Pass } else { CaseStatus::Fail },
        }
    }

    fn skipped(reason: &str) -> Self {
        CaseCheck {
            probability_oracle: 0.0,
            probability_expected: 0.0,
            fidelity: 0.0,
            status: CaseStatus::Skipped(reason.to_string()),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CaseStatus::Pass
    }
}

fn zero_branch<T>(r: &Result<T>) -> bool {
    matches!(r, Err(Error::ZeroProbability { .. }))
}

/// Compares the closed form for `predicted` against the oracle run on `measured`. Passing the
/// same step twice is [`verify_swap_case`]; differing steps are useful as negative controls.
pub fn compare_swap(
    family: &QuditStateFamily,
    predicted: &SwapStep,
    measured: &SwapStep,
    tol: &Tolerances,
) -> Result<CaseCheck> {
    let oracle = oracle_swap(family, measured);
    let closed = predict_swap(family, predicted);
    compare(oracle, closed, || swap_probability(family, predicted), tol)
}

fn compare(
    oracle: Result<(f64, PureState)>,
    closed: Result<QuditStateFamily>,
    expected_probability: impl FnOnce() -> Result<f64>,
    tol: &Tolerances,
) -> Result<CaseCheck> {
    match (oracle, closed) {
        (o, c) if zero_branch(&o) && zero_branch(&c) => {
            Ok(CaseCheck::skipped("zero-probability outcome"))
        }
        (Err(Error::ZeroProbability { probability }), Ok(_)) => Ok(CaseCheck::judge(
            probability,
            expected_probability()?,
            0.0,
            tol,
        )),
        (Ok((p, _)), Err(Error::ZeroProbability { probability })) => {
            Ok(CaseCheck::judge(p, probability, 0.0, tol))
        }
        (Ok((p, post)), Ok(family)) => {
            let predicted = family.to_state(post.labels())?;
            let fidelity = predicted.fidelity_up_to_phase(&post)?;
            Ok(CaseCheck::judge(p, expected_probability()?, fidelity, tol))
        }
        (Err(e), _) | (_, Err(e)) => Err(e),
    }
}

/// Closed form against oracle for one swap.
pub fn verify_swap_case(family: &QuditStateFamily, step: &SwapStep, tol: &Tolerances) -> Result<CaseCheck> {
    compare_swap(family, step, step, tol)
}

/// Folded closed form against the sequential oracle.
pub fn verify_multi_swap(
    family: &QuditStateFamily,
    steps: &[SwapStep],
    tol: &Tolerances,
) -> Result<CaseCheck> {
    compare(
        oracle_multi_swap(family, steps),
        predict_multi_swap(family, steps),
        || multi_swap_probability(family, steps),
        tol,
    )
}

/// Three-way chain comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainCheck {
    pub probability_oracle: f64,
    /// `d^{-2(n-1)}` for `n` pairs.
    pub probability_expected: f64,
    pub fidelity_chain_oracle: f64,
    pub fidelity_multi_oracle: f64,
    pub fidelity_chain_multi: f64,
    pub pass: bool,
}

pub fn verify_chain(d: Dimension, outcomes: &[BellOutcome], tol: &Tolerances) -> Result<ChainCheck> {
    let chain = predict_chain(d, outcomes)?;
    let folded = predict_multi_swap(&make_max_entangled(d, 2)?, &chain_steps(d, outcomes)?)?;
    let (p, post) = oracle_chain(d, outcomes)?;
    let chain_state = chain.to_state(post.labels())?;
    let folded_state = folded.to_state(post.labels())?;
    let fidelity_chain_oracle = chain_state.fidelity_up_to_phase(&post)?;
    let fidelity_multi_oracle = folded_state.fidelity_up_to_phase(&post)?;
    let fidelity_chain_multi = chain_state.fidelity_up_to_phase(&folded_state)?;
    let probability_expected = num_traits::Float::powi(d.get() as f64, -2 * outcomes.len() as i32);
    let pass = [fidelity_chain_oracle, fidelity_multi_oracle, fidelity_chain_multi]
        .iter()
        .all(|&f| f >= 1.0 - tol.fidelity)
        && (p - probability_expected).abs() <= tol.probability;
    Ok(ChainCheck {
        probability_oracle: p,
        probability_expected,
        fidelity_chain_oracle,
        fidelity_multi_oracle,
        fidelity_chain_multi,
        pass,
    })
}

/// Partner used in a swap case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case", tag = "kind"))]
pub enum PairSpec {
    Max,
    Bell { u: usize, v: usize },
}

impl PairSpec {
    pub fn build(self, d: Dimension) -> Result<QuditStateFamily> {
        match self {
            PairSpec::Max => make_max_entangled(d, 2),
            PairSpec::Bell { u, v } => FamilySpec::Bell { u, v }.build(d, 2),
        }
    }

    pub fn name(self) -> String {
        match self {
            PairSpec::Max => "max".to_string(),
            PairSpec::Bell { u, v } => alloc::format!("bell({u},{v})"),
        }
    }
}

/// Which partners a sweep pairs with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum PairKind {
    Max,
    /// Every `|Ψ(u,v)⟩` in exhaustive mode, a random one when sampling.
    Bell,
}

/// Everything needed to rebuild one single-swap case.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CaseDescriptor {
    pub family: FamilySpec,
    pub d: usize,
    pub n: usize,
    pub slot: usize,
    pub pair: PairSpec,
    pub outcome: (usize, usize),
}

impl CaseDescriptor {
    pub fn build(&self) -> Result<(QuditStateFamily, SwapStep)> {
        let d = Dimension::new(self.d)?;
        let family = self.family.build(d, self.n)?;
        let outcome = BellOutcome::from_values(d, self.outcome.0, self.outcome.1)?;
        Ok((family, SwapStep::new(self.slot, self.pair.build(d)?, outcome)))
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CaseReport {
    pub descriptor: CaseDescriptor,
    pub probability_oracle: f64,
    pub probability_expected: f64,
    pub fidelity: f64,
    #[cfg_attr(feature = "serde", serde(flatten))]
    pub status: CaseStatus,
    pub pass: bool,
    /// Filled in by timed runners; zero otherwise.
    pub elapsed: Duration,
}

/// Builds and checks one case. Construction errors are reported as failures carrying the error
/// text, so a sweep never aborts half way.
pub fn run_case(descriptor: &CaseDescriptor, tol: &Tolerances) -> CaseReport {
    let check = descriptor
        .build()
        .and_then(|(family, step)| verify_swap_case(&family, &step, tol));
    let check = check.unwrap_or_else(|e| CaseCheck {
        probability_oracle: f64::NAN,
        probability_expected: f64::NAN,
        fidelity: 0.0,
        status: CaseStatus::Invalid(e.to_string()),
    });
    CaseReport {
        descriptor: descriptor.clone(),
        probability_oracle: check.probability_oracle,
        probability_expected: check.probability_expected,
        fidelity: check.fidelity,
        pass: check.passed(),
        status: check.status,
        elapsed: Duration::ZERO,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum SweepMode {
    Exhaustive,
    Sampled,
}

/// Sweep matrix. Every combination of dimension × family kind × n in `n_min..=n_max` forms a
/// group; a group enumerates every slot, partner and outcome.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SweepConfig {
    pub dimensions: Vec<usize>,
    pub families: Vec<FamilyKind>,
    pub n_min: usize,
    pub n_max: usize,
    pub pairs: Vec<PairKind>,
    pub mode: SweepMode,
    /// Cases drawn per (dimension, family) when sampling.
    pub samples: usize,
    pub seed: u64,
    pub tolerances: Tolerances,
    /// Exhaustive requests above this many cases fall back to sampling.
    pub max_exhaustive_cases: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            dimensions: Vec::new(),
            families: Vec::new(),
            n_min: 2,
            n_max: 3,
            pairs: alloc::vec![PairKind::Max, PairKind::Bell],
            mode: SweepMode::Exhaustive,
            samples: 200,
            seed: 0,
            tolerances: Tolerances::default(),
            max_exhaustive_cases: 100_000,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        for &d in &self.dimensions {
            Dimension::new(d)?;
        }
        if self.n_min == 0 || self.n_min > self.n_max {
            return Err(Error::InvalidConfig("need 1 <= n_min <= n_max"));
        }
        if !(self.tolerances.fidelity >= 0.0 && self.tolerances.probability >= 0.0) {
            return Err(Error::InvalidConfig("tolerances must be non-negative"));
        }
        Ok(())
    }

    fn groups(&self) -> Vec<(Dimension, FamilyKind, Vec<usize>)> {
        let mut groups = Vec::new();
        for &d in &self.dimensions {
            let dim = Dimension::new(d).expect("validated");
            for &kind in &self.families {
                let ns: Vec<usize> = (self.n_min..=self.n_max).filter(|&n| kind.supports(n)).collect();
                if !ns.is_empty() {
                    groups.push((dim, kind, ns));
                }
            }
        }
        groups
    }

    fn partners(&self, dim: Dimension) -> Vec<PairSpec> {
        let mut out = Vec::new();
        for kind in &self.pairs {
            match kind {
                PairKind::Max => out.push(PairSpec::Max),
                PairKind::Bell => {
                    for o in BellOutcome::all(dim) {
                        out.push(PairSpec::Bell {
                            u: o.u.value(),
                            v: o.v.value(),
                        });
                    }
                }
            }
        }
        out
    }

    /// Number of cases an exhaustive enumeration would produce.
    pub fn exhaustive_count(&self) -> usize {
        self.groups()
            .iter()
            .map(|(dim, _, ns)| {
                let d = dim.get();
                ns.iter().sum::<usize>() * self.partners(*dim).len() * d * d
            })
            .sum()
    }

    /// Whether [`SweepConfig::cases`] enumerates (true) or samples (false).
    pub fn enumerates(&self) -> bool {
        self.mode == SweepMode::Exhaustive && self.exhaustive_count() <= self.max_exhaustive_cases
    }

    /// Deterministic case list. Random family parameters come from per-case seeds derived
    /// from `seed` by case index.
    pub fn cases(&self) -> Result<Vec<CaseDescriptor>> {
        self.validate()?;
        let master = RandomSeed(self.seed);
        let mut cases = Vec::new();
        if self.enumerates() {
            for (dim, kind, ns) in self.groups() {
                let partners = self.partners(dim);
                for &n in &ns {
                    for slot in 1..=n {
                        for &pair in &partners {
                            for o in BellOutcome::all(dim) {
                                let mut rng = master.derive(cases.len() as u64).rng();
                                cases.push(CaseDescriptor {
                                    family: FamilySpec::random(kind, dim, n, &mut rng),
                                    d: dim.get(),
                                    n,
                                    slot,
                                    pair,
                                    outcome: (o.u.value(), o.v.value()),
                                });
                            }
                        }
                    }
                }
            }
        } else {
            use rand::Rng;
            for (g, (dim, kind, ns)) in self.groups().into_iter().enumerate() {
                let partners = self.partners(dim);
                if partners.is_empty() {
                    continue;
                }
                let group_seed = master.derive(g as u64);
                for t in 0..self.samples {
                    let mut rng = group_seed.derive(t as u64).rng();
                    let n = ns[rng.gen_range(0..ns.len())];
                    let slot = rng.gen_range(1..=n);
                    let pair = partners[rng.gen_range(0..partners.len())];
                    let outcome = (random_residue(&mut rng, dim).value(), random_residue(&mut rng, dim).value());
                    cases.push(CaseDescriptor {
                        family: FamilySpec::random(kind, dim, n, &mut rng),
                        d: dim.get(),
                        n,
                        slot,
                        pair,
                        outcome,
                    });
                }
            }
        }
        Ok(cases)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_bell, make_ghz_class};
    use crate::modular::ModInt;
    use num_complex::Complex64;

    fn dim(d: usize) -> Dimension {
        Dimension::new(d).unwrap()
    }

    fn o(d: usize, u: usize, v: usize) -> BellOutcome {
        BellOutcome::from_values(dim(d), u, v).unwrap()
    }

    #[test]
    fn oracle_two_max_pairs() {
        let a = make_max_entangled(dim(2), 2).unwrap();
        let step = SwapStep::new(2, a.clone(), o(2, 0, 0));
        let (p, post) = oracle_swap(&a, &step).unwrap();
        assert!((p - 0.25).abs() < 1e-12);
        assert_eq!(post.labels(), &[1, 4]);
        let expected = a.to_state(&[1, 4]).unwrap();
        assert!((post.fidelity_up_to_phase(&expected).unwrap() - 1.0).abs() < 1e-12);

        let a5 = make_max_entangled(dim(5), 2).unwrap();
        for out in BellOutcome::all(dim(5)) {
            let (p, _) = oracle_swap(&a5, &SwapStep::new(2, a5.clone(), out)).unwrap();
            assert!((p - 0.04).abs() < 1e-12);
        }
    }

    #[test]
    fn oracle_product_partner_has_zero_branches() {
        let d = dim(2);
        let product = make_ghz_class(
            d,
            2,
            d.zero(),
            &[d.zero()],
            &[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        )
        .unwrap();
        let zeros = BellOutcome::all(d)
            .filter(|&out| {
                matches!(
                    oracle_swap(&product, &SwapStep::new(2, product.clone(), out)),
                    Err(Error::ZeroProbability { .. })
                )
            })
            .count();
        assert_eq!(zeros, 2);
    }

    #[test]
    fn verify_max_cases_pass() {
        let tol = Tolerances::default();
        for d in 2..=4 {
            let a = make_max_entangled(dim(d), 2).unwrap();
            for out in BellOutcome::all(dim(d)) {
                let check = verify_swap_case(&a, &SwapStep::new(2, a.clone(), out), &tol).unwrap();
                assert!(check.passed(), "{check:?}");
            }
        }
    }

    #[test]
    fn mismatched_outcome_fails() {
        let a = make_max_entangled(dim(2), 2).unwrap();
        let predicted = SwapStep::new(2, a.clone(), o(2, 0, 0));
        let measured = SwapStep::new(2, a.clone(), o(2, 0, 1));
        let check = compare_swap(&a, &predicted, &measured, &Tolerances::default()).unwrap();
        assert!(check.fidelity.abs() < 1e-12);
        assert_eq!(check.status, CaseStatus::Fail);
    }

    #[test]
    fn zero_branch_is_skipped() {
        let d = dim(2);
        let product = make_ghz_class(
            d,
            2,
            d.zero(),
            &[d.zero()],
            &[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        )
        .unwrap();
        let step = SwapStep::new(2, product.clone(), o(2, 0, 1));
        let check = verify_swap_case(&product, &step, &Tolerances::default()).unwrap();
        assert!(matches!(check.status, CaseStatus::Skipped(_)));
    }

    #[test]
    fn relabelled_oracle_agrees() {
        let d = dim(3);
        let a = make_bell(d, ModInt::new(1, d).unwrap(), ModInt::new(2, d).unwrap()).unwrap();
        let pair = make_max_entangled(d, 2).unwrap();
        let (p1, s1) = oracle_swap(&a, &SwapStep::new(1, pair.clone(), o(3, 2, 1))).unwrap();
        let shuffled = a.to_state(&[9, 4]).unwrap();
        let (p2, s2) = oracle_swap_state(&shuffled, 1, &pair, o(3, 2, 1)).unwrap();
        assert!((p1 - p2).abs() < 1e-15);
        let s2 = s2.relabel(s1.labels().to_vec()).unwrap();
        assert!((s1.fidelity_up_to_phase(&s2).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn chain_two_pairs() {
        let (p, post) = oracle_chain(dim(2), &[o(2, 0, 0)]).unwrap();
        assert!((p - 0.25).abs() < 1e-12);
        assert_eq!(post.labels(), &[1, 4]);
        let check = verify_chain(dim(3), &[o(3, 1, 1), o(3, 1, 1), o(3, 1, 2)], &Tolerances::default()).unwrap();
        assert!(check.pass, "{check:?}");
    }

    #[test]
    fn sweep_case_generation() {
        let empty = SweepConfig::default();
        assert!(empty.cases().unwrap().is_empty());

        let cfg = SweepConfig {
            dimensions: alloc::vec![2],
            families: alloc::vec![FamilyKind::Max, FamilyKind::Bell],
            n_min: 2,
            n_max: 3,
            ..SweepConfig::default()
        };
        // max: (2 + 3) slots, bell: 2 slots (n = 2 only); 5 partners, 4 outcomes each
        assert_eq!(cfg.exhaustive_count(), (5 + 2) * 5 * 4);
        let cases = cfg.cases().unwrap();
        assert_eq!(cases.len(), cfg.exhaustive_count());
        assert_eq!(cases, cfg.cases().unwrap());

        let sampled = SweepConfig {
            mode: SweepMode::Sampled,
            samples: 17,
            ..cfg.clone()
        };
        assert_eq!(sampled.cases().unwrap().len(), 34);

        let capped = SweepConfig {
            max_exhaustive_cases: 10,
            samples: 3,
            ..cfg
        };
        assert!(!capped.enumerates());
        assert_eq!(capped.cases().unwrap().len(), 6);
    }

    #[test]
    fn invalid_config() {
        let cfg = SweepConfig {
            dimensions: alloc::vec![1],
            ..SweepConfig::default()
        };
        assert!(cfg.cases().is_err());
        let cfg = SweepConfig {
            n_min: 3,
            n_max: 2,
            ..SweepConfig::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn run_case_reports_invalid_descriptor() {
        let bad = CaseDescriptor {
            family: FamilySpec::Max,
            d: 2,
            n: 2,
            slot: 3,
            pair: PairSpec::Max,
            outcome: (0, 0),
        };
        let report = run_case(&bad, &Tolerances::default());
        assert!(!report.pass);
        assert!(matches!(report.status, CaseStatus::Invalid(ref r) if r.contains("slot 3")));
    }
}
