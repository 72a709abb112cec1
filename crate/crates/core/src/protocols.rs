//! Swapping-based multi-party summation and secret sharing, simulated on dense states.
//!
//! Both protocols run through the generic Bell and computational measurements of
//! [`crate::bell`] and [`crate::state`]; the closed forms in [`crate::swap`] are not used.
//! Measured qudits are dropped as soon as they are measured, so the live register holds the
//! coordinator's qudits plus one two-qudit pair at most.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::bell::{bell_measure_with, BellOutcome};
use crate::error::{Error, Result};
use crate::families::make_max_entangled;
use crate::modular::{Dimension, ModInt};
use crate::rng::{random_residue, RandomSeed, SimRng};
use crate::state::{Label, PureState, MAX_AMPLITUDES};

/// Largest register enumerated when searching for consistent secret vectors.
const MAX_ENUMERATION: usize = 1 << 20;

/// What a summation party keeps to itself.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct PartyRecord {
    pub secret: ModInt,
    /// The party's Bell state `|Ψ(u_k, v_k)⟩`; `v_k` carries the secret.
    pub preparation: BellOutcome,
    pub outcome: BellOutcome,
}

/// Everything the third party sees.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct TpView {
    /// `Σ_k v′_k mod d`, announced jointly by the parties.
    pub announced_sum: ModInt,
    /// Computational results: `i` first, then `i ⊕ v_k ⊕ v′_k` per party.
    pub results: Vec<ModInt>,
}

impl TpView {
    /// `Σ_k r_k ⊖ Σ v′_k ⊖ n·i`.
    pub fn sum(&self) -> ModInt {
        let (i, rest) = self.results.split_first().expect("view has TP's own result");
        let total = rest.iter().fold(i.dim().zero(), |acc, &r| acc + r);
        total - self.announced_sum - i.scale(rest.len())
    }

    /// Every secret vector that could have produced this view for some choice of the parties'
    /// Bell outcomes. Bell outcomes in this protocol are uniform, so each is reachable.
    pub fn consistent_secret_vectors(&self) -> Result<Vec<Vec<ModInt>>> {
        let (i, rest) = self
            .results
            .split_first()
            .ok_or(Error::InvalidArity { n: 0 })?;
        let dim = i.dim();
        let n = rest.len();
        let count = dim
            .pow(n)
            .filter(|&c| c <= MAX_ENUMERATION)
            .ok_or(Error::InvalidConfig("too many secret vectors to enumerate"))?;
        let mut out = Vec::new();
        for index in 0..count {
            let mut digits = index;
            let mut secrets = Vec::with_capacity(n);
            for _ in 0..n {
                secrets.push(ModInt::new(digits % dim.get(), dim)?);
                digits /= dim.get();
            }
            // each party's outcome is forced to v′_k = r_k ⊖ i ⊖ x_k
            let implied = rest
                .iter()
                .zip(&secrets)
                .fold(dim.zero(), |acc, (&r, &x)| acc + (r - *i - x));
            if implied == self.announced_sum {
                out.push(secrets);
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SummationTranscript {
    pub d: Dimension,
    pub n: usize,
    pub parties: Vec<PartyRecord>,
    pub tp_view: TpView,
    pub tp_sum: ModInt,
    pub expected_sum: ModInt,
    pub seed: RandomSeed,
}

impl SummationTranscript {
    pub fn secrets(&self) -> Vec<ModInt> {
        self.parties.iter().map(|p| p.secret).collect()
    }

    pub fn succeeded(&self) -> bool {
        self.tp_sum == self.expected_sum
    }

    /// Whether TP's results have the marked form `i, i⊕v_k⊕v′_k`.
    pub fn results_well_formed(&self) -> bool {
        let i = self.tp_view.results[0];
        self.parties
            .iter()
            .zip(&self.tp_view.results[1..])
            .all(|(p, &r)| r == i + p.preparation.v + p.outcome.v)
    }
}

fn check_register(d: Dimension, qudits: usize) -> Result<()> {
    match d.pow(qudits) {
        Some(len) if len <= MAX_AMPLITUDES => Ok(()),
        other => Err(Error::RegisterTooLarge {
            amplitudes: other.unwrap_or(usize::MAX),
            max: MAX_AMPLITUDES,
        }),
    }
}

/// Swaps each of the coordinator's qudits `1..=n` with a fresh two-qudit state, Bell-measuring
/// the coordinator's qudit with the state's first qudit. The surviving second qudit is measured
/// in the computational basis straight away: nothing else acts on it, so measuring it early
/// gives the same joint statistics and keeps the register small. Returns the Bell outcomes,
/// the computational results, and the register left holding qudit 0.
fn swap_out(
    mut state: PureState,
    pairs: impl Iterator<Item = Result<PureState>>,
    rng: &mut SimRng,
) -> Result<(Vec<BellOutcome>, Vec<ModInt>, PureState)> {
    let mut outcomes = Vec::new();
    let mut results = Vec::new();
    for (k, pair) in pairs.enumerate() {
        let pair = pair?;
        let (first, second) = (pair.labels()[0], pair.labels()[1]);
        let joint = state.tensor(&pair)?;
        let (outcome, post) = bell_measure_with(&joint, k as Label + 1, first, rng)?;
        let (r, post) = post.measure_computational(second, rng)?;
        outcomes.push(outcome);
        results.push(r);
        state = post;
    }
    Ok((outcomes, results, state))
}

/// Secure summation of `secrets` mod `d` via a semi-honest third party.
///
/// TP prepares the `(n+1)`-qudit maximally entangled state and hands qudit `k` to party `k`.
/// Party `k` prepares `|Ψ(u_k, x_k)⟩` with random `u_k`, sends the second qudit to TP and
/// Bell-measures TP's qudit with its own first qudit. The parties announce `Σ v′_k`; TP
/// measures its `n+1` qudits and computes `Σ r_k ⊖ Σ v′_k ⊖ n·i`.
pub fn run_summation(d: Dimension, secrets: &[ModInt], seed: RandomSeed) -> Result<SummationTranscript> {
    let n = secrets.len();
    if n == 0 {
        return Err(Error::InvalidArity { n });
    }
    for x in secrets {
        d.check(x.dim())?;
    }
    check_register(d, n + 3)?;
    let mut rng = seed.rng();

    let tp_labels: Vec<Label> = (0..=n as Label).collect();
    let tp_state = make_max_entangled(d, n + 1)?.to_state(&tp_labels)?;
    let preparations: Vec<BellOutcome> = secrets
        .iter()
        .map(|&x| BellOutcome {
            u: random_residue(&mut rng, d),
            v: x,
        })
        .collect();
    let next = n as Label + 1;
    let pairs = preparations.iter().enumerate().map(|(k, &prep)| {
        let first = next + 2 * k as Label;
        crate::bell::bell_state_on(prep, [first, first + 1])
    });
    let (outcomes, coded, state) = swap_out(tp_state, pairs, &mut rng)?;
    let (i, _) = state.measure_computational(0, &mut rng)?;

    let announced_sum = outcomes.iter().fold(d.zero(), |acc, o| acc + o.v);
    let mut results = alloc::vec![i];
    results.extend(coded);
    let tp_view = TpView {
        announced_sum,
        results,
    };
    let parties = secrets
        .iter()
        .zip(preparations)
        .zip(outcomes)
        .map(|((&secret, preparation), outcome)| PartyRecord {
            secret,
            preparation,
            outcome,
        })
        .collect();
    Ok(SummationTranscript {
        d,
        n,
        parties,
        tp_sum: tp_view.sum(),
        tp_view,
        expected_sum: secrets.iter().fold(d.zero(), |acc, &x| acc + x),
        seed,
    })
}

/// `Π_k (d − v_k)(d − v_k − v′_k) / d²`, evaluated literally. Any negative factor makes the
/// result 0.
pub fn success_probability(d: Dimension, v: &[ModInt], v_prime: &[ModInt]) -> Result<f64> {
    if v.len() != v_prime.len() {
        return Err(Error::LengthMismatch {
            expected: v.len(),
            actual: v_prime.len(),
        });
    }
    let dd = d.get() as i128;
    let mut numerator: Option<i128> = Some(1);
    let mut denominator: Option<i128> = Some(1);
    let mut approx = 1.0f64;
    for (a, b) in v.iter().zip(v_prime) {
        d.check(a.dim())?;
        d.check(b.dim())?;
        let first = dd - a.value() as i128;
        let second = dd - a.value() as i128 - b.value() as i128;
        if second <= 0 {
            return Ok(0.0);
        }
        numerator = numerator.and_then(|x| x.checked_mul(first * second));
        denominator = denominator.and_then(|x| x.checked_mul(dd * dd));
        approx *= (first * second) as f64 / (dd * dd) as f64;
    }
    Ok(match (numerator, denominator) {
        // single rounding when the exact rational fits
        (Some(num), Some(den)) if num < (1 << 53) && den < (1 << 53) => num as f64 / den as f64,
        _ => approx,
    })
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SecretSharingTranscript {
    pub d: Dimension,
    pub n: usize,
    /// Alice's result on her own qudit.
    pub alice_base: ModInt,
    /// Alice's results on the qudits the Bobs sent: `i ⊕ v′_k`.
    pub alice_results: Vec<ModInt>,
    pub bob_outcomes: Vec<BellOutcome>,
    /// `v′_k` per Bob.
    pub shares: Vec<ModInt>,
    pub alice_secret: ModInt,
    pub reconstructed: ModInt,
    pub seed: RandomSeed,
}

impl SecretSharingTranscript {
    pub fn succeeded(&self) -> bool {
        self.alice_secret == self.reconstructed
    }
}

/// Alice shares a random secret with `n` Bobs.
///
/// Alice prepares the `(n+1)`-qudit maximally entangled state and sends qudit `k` to Bob `k`.
/// Each Bob prepares a maximally entangled pair, sends its second qudit to Alice and
/// Bell-measures Alice's qudit with its first. Alice measures everything she holds, getting
/// `i, i⊕v′_1, …, i⊕v′_n`, and takes `Σ_k (i⊕v′_k) ⊖ n·i` as the secret; the Bobs recover it
/// as `Σ_k v′_k`.
pub fn run_secret_sharing(d: Dimension, n: usize, seed: RandomSeed) -> Result<SecretSharingTranscript> {
    if n == 0 {
        return Err(Error::InvalidArity { n });
    }
    check_register(d, n + 3)?;
    let mut rng = seed.rng();
    let alice_labels: Vec<Label> = (0..=n as Label).collect();
    let alice = make_max_entangled(d, n + 1)?.to_state(&alice_labels)?;
    let pair = make_max_entangled(d, 2)?;
    let next = n as Label + 1;
    let pairs = (0..n).map(|k| {
        let first = next + 2 * k as Label;
        pair.to_state(&[first, first + 1])
    });
    let (bob_outcomes, results, state) = swap_out(alice, pairs, &mut rng)?;
    let (alice_base, _) = state.measure_computational(0, &mut rng)?;
    let alice_secret = results.iter().fold(d.zero(), |acc, &r| acc + r) - alice_base.scale(n);
    let shares: Vec<ModInt> = bob_outcomes.iter().map(|o| o.v).collect();
    let reconstructed = shares.iter().fold(d.zero(), |acc, &s| acc + s);
    Ok(SecretSharingTranscript {
        d,
        n,
        alice_base,
        alice_results: results,
        bob_outcomes,
        shares,
        alice_secret,
        reconstructed,
        seed,
    })
}

/// Secrets compatible with a partial set of shares (`None` = share unknown), over every
/// completion of the unknown ones.
pub fn consistent_secrets(d: Dimension, shares: &[Option<ModInt>]) -> Result<BTreeSet<usize>> {
    let known = shares
        .iter()
        .flatten()
        .try_fold(d.zero(), |acc, &s| acc.checked_add(s))?;
    let missing = shares.iter().filter(|s| s.is_none()).count();
    let count = d
        .pow(missing)
        .filter(|&c| c <= MAX_ENUMERATION)
        .ok_or(Error::InvalidConfig("too many completions to enumerate"))?;
    let mut out = BTreeSet::new();
    for index in 0..count {
        let mut digits = index;
        let mut total = known;
        for _ in 0..missing {
            total = total + ModInt::new(digits % d.get(), d)?;
            digits /= d.get();
        }
        out.insert(total.value());
    }
    Ok(out)
}
