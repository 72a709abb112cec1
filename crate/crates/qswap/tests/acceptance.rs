//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each, and exits non-zero
//! if any criterion fails. Expected states are written out by hand here rather than taken from
//! the swap engine.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;

use qswap::run_sweep;
use qswap_core::bell::{bell_state_on, BellOutcome};
use qswap_core::families::{make_bell, make_max_entangled, FamilyKind, FamilySpec};
use qswap_core::protocols::{consistent_secrets, run_secret_sharing, run_summation, success_probability};
use qswap_core::swap::{predict_multi_swap, predict_swap, predict_swap_every_slot, SwapStep};
use qswap_core::verify::{
    oracle_multi_swap, oracle_swap, verify_chain, PairKind, SweepConfig, SweepMode, Tolerances,
};
use qswap_core::{root_of_unity, Amplitude, Dimension, ModInt, PureState, RandomSeed};

const FIDELITY_TOL: f64 = 1e-10;
const PROBABILITY_TOL: f64 = 1e-10;

struct Verdict {
    pass: bool,
    detail: String,
}

impl Verdict {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Verdict {
            pass,
            detail: detail.into(),
        }
    }
}

/// Worst-case tracker for a batch of swap comparisons.
#[derive(Default)]
struct Tally {
    cases: usize,
    min_fidelity: f64,
    max_probability_error: f64,
    first_problem: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            min_fidelity: 1.0,
            ..Tally::default()
        }
    }

    fn record(&mut self, fidelity: f64, probability_error: f64, label: impl FnOnce() -> String) {
        self.cases += 1;
        self.min_fidelity = self.min_fidelity.min(fidelity);
        self.max_probability_error = self.max_probability_error.max(probability_error);
        let ok = fidelity >= 1.0 - FIDELITY_TOL && probability_error <= PROBABILITY_TOL;
        if !ok && self.first_problem.is_none() {
            self.first_problem = Some(label());
        }
    }

    fn fail(&mut self, label: String) {
        self.cases += 1;
        self.first_problem.get_or_insert(label);
    }

    fn ok(&self) -> bool {
        self.first_problem.is_none()
    }

    fn summary(&self) -> String {
        let mut s = format!(
            "{} cases, min fidelity {:.15}, max |Δp| {:.2e}",
            self.cases, self.min_fidelity, self.max_probability_error
        );
        if let Some(p) = &self.first_problem {
            s.push_str(&format!(", first problem: {p}"));
        }
        s
    }
}

fn dim(d: usize) -> Dimension {
    Dimension::new(d).unwrap()
}

fn zeta(d: Dimension, k: i64) -> Amplitude {
    root_of_unity(d, k)
}

/// `(1/√d) Σ_j phase(j) |j, j⊕shift⟩` on `labels`, written out directly.
fn two_qudit_state(d: Dimension, labels: [u32; 2], shift: usize, phase: impl Fn(usize) -> Amplitude) -> PureState {
    let n = d.get();
    let mut amps = vec![Amplitude::new(0.0, 0.0); n * n];
    for j in 0..n {
        amps[j * n + (j + shift) % n] = phase(j) / (n as f64).sqrt();
    }
    PureState::new(d, labels.to_vec(), amps).unwrap()
}

// 1. Generalized Bell basis is orthonormal.
fn bell_orthonormality() -> Verdict {
    let mut worst: f64 = 0.0;
    let mut pairs = 0;
    for d in 2..=7 {
        let states: Vec<PureState> = BellOutcome::all(dim(d))
            .map(|o| bell_state_on(o, [1, 2]).unwrap())
            .collect();
        for (a, sa) in states.iter().enumerate() {
            for (b, sb) in states.iter().enumerate() {
                let delta = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((sa.inner_product(sb).unwrap() - Amplitude::new(delta, 0.0)).norm());
                pairs += 1;
            }
        }
    }
    Verdict::new(worst <= 1e-12, format!("d=2..7, {pairs} pairs, max deviation {worst:.2e}"))
}

/// One bipartite swap of `max(d,2)` (qudits 1,2) with `partner` (qudits 3,4), slot 2, checked
/// against the hand-written `(1/√d) Σ_j ζ^{j(u−u′)} |j, j⊕v⊕v′⟩` and against the engine.
fn bipartite_case(tally: &mut Tally, d: Dimension, partner: BellOutcome, outcome: BellOutcome) {
    let max = make_max_entangled(d, 2).unwrap();
    let pair = make_bell(d, partner.u, partner.v).unwrap();
    let step = SwapStep::new(2, pair, outcome);
    let label = || format!("d={} partner {:?} outcome {:?}", d.get(), partner, outcome);
    let Ok((p, post)) = oracle_swap(&max, &step) else {
        tally.fail(label());
        return;
    };
    let k = partner.u.value() as i64 - outcome.u.value() as i64;
    let expected = two_qudit_state(d, [1, 4], partner.v.value() + outcome.v.value(), |j| zeta(d, j as i64 * k));
    let predicted = predict_swap(&max, &step).unwrap().to_state(post.labels()).unwrap();
    let fidelity = post
        .fidelity_up_to_phase(&expected)
        .unwrap()
        .min(predicted.fidelity_up_to_phase(&expected).unwrap());
    let q = 1.0 / (d.get() * d.get()) as f64;
    tally.record(fidelity, (p - q).abs(), label);
}

// 2. Two maximally entangled pairs.
fn two_max_pairs() -> Verdict {
    let mut tally = Tally::new();
    for d in 2..=5 {
        let d = dim(d);
        for outcome in BellOutcome::all(d) {
            bipartite_case(&mut tally, d, BellOutcome::zero(d), outcome);
        }
    }
    Verdict::new(tally.ok(), format!("d=2..5 exhaustive: {}", tally.summary()))
}

// 3. Maximally entangled pair with a Bell state.
fn max_with_bell() -> Verdict {
    let mut tally = Tally::new();
    for d in [2, 3] {
        let d = dim(d);
        for partner in BellOutcome::all(d) {
            for outcome in BellOutcome::all(d) {
                bipartite_case(&mut tally, d, partner, outcome);
            }
        }
    }
    let exhaustive = tally.cases;
    let d = dim(5);
    let mut rng = RandomSeed(3).rng();
    for _ in 0..250 {
        let index = |rng: &mut qswap_core::rng::SimRng| BellOutcome::from_index(d, rng.gen_range(0..25)).unwrap();
        let (partner, outcome) = (index(&mut rng), index(&mut rng));
        bipartite_case(&mut tally, d, partner, outcome);
    }
    Verdict::new(
        tally.ok(),
        format!("{exhaustive} exhaustive at d=2,3 + 250 sampled at d=5: {}", tally.summary()),
    )
}

fn check_sweep(tally: &mut Tally, config: &SweepConfig) -> usize {
    let report = run_sweep(config).unwrap();
    let mut per_family: BTreeMap<FamilyKind, usize> = BTreeMap::new();
    for case in &report.cases {
        let desc = &case.descriptor;
        let q = 1.0 / (desc.d * desc.d) as f64;
        *per_family.entry(desc.family.kind()).or_default() += 1;
        if !case.pass {
            tally.fail(format!("{desc:?}: {:?}", case.status));
            continue;
        }
        tally.record(case.fidelity, (case.probability_oracle - q).abs(), || format!("{desc:?}"));
    }
    per_family.values().copied().min().unwrap_or(0)
}

// 4. Multi-qudit families swapped at any slot.
fn family_swaps() -> Verdict {
    let families = vec![FamilyKind::Max, FamilyKind::Ghz, FamilyKind::GhzClass, FamilyKind::CatLike];
    let tolerances = Tolerances {
        fidelity: FIDELITY_TOL,
        probability: PROBABILITY_TOL,
    };
    let small = SweepConfig {
        dimensions: vec![2, 3],
        families: families.clone(),
        n_min: 2,
        n_max: 4,
        pairs: vec![PairKind::Max, PairKind::Bell],
        mode: SweepMode::Exhaustive,
        seed: 4,
        tolerances,
        ..SweepConfig::default()
    };
    let mut tally = Tally::new();
    let enumerated = small.enumerates();
    check_sweep(&mut tally, &small);
    let exhaustive = tally.cases;
    let sampled = SweepConfig {
        dimensions: vec![5],
        n_min: 3,
        n_max: 3,
        mode: SweepMode::Sampled,
        samples: 120,
        seed: 5,
        ..small
    };
    let fewest = check_sweep(&mut tally, &sampled);
    Verdict::new(
        tally.ok() && enumerated && fewest >= 100,
        format!(
            "{exhaustive} exhaustive at d=2,3 n=2..4 + ≥{fewest} per family at d=5 n=3: {}",
            tally.summary()
        ),
    )
}

fn multi_swap_case(tally: &mut Tally, d: Dimension, partners: &[BellOutcome], outcomes: &[BellOutcome]) {
    let n = partners.len();
    let family = make_max_entangled(d, n).unwrap();
    let steps: Vec<SwapStep> = (0..n)
        .map(|k| SwapStep::new(k + 1, make_bell(d, partners[k].u, partners[k].v).unwrap(), outcomes[k]))
        .collect();
    let label = || format!("d={} partners {partners:?} outcomes {outcomes:?}", d.get());
    let Ok((p, post)) = oracle_multi_swap(&family, &steps) else {
        tally.fail(label());
        return;
    };
    let closed = predict_swap_every_slot(d, partners, outcomes).unwrap().to_state(post.labels()).unwrap();
    let folded = predict_multi_swap(&family, &steps).unwrap().to_state(post.labels()).unwrap();
    let fidelity = closed
        .fidelity_up_to_phase(&post)
        .unwrap()
        .min(folded.fidelity_up_to_phase(&post).unwrap());
    let q = (d.get() as f64).powi(-2 * n as i32);
    tally.record(fidelity, (p - q).abs(), label);
}

/// Every `(partner, outcome)` tuple over `n` slots, partners Bell states (which include max).
fn for_each_tuple(d: Dimension, n: usize, f: &mut impl FnMut(&[BellOutcome], &[BellOutcome])) {
    let per_slot = d.get().pow(4);
    for mut index in 0..per_slot.pow(n as u32) {
        let mut partners = Vec::with_capacity(n);
        let mut outcomes = Vec::with_capacity(n);
        for _ in 0..n {
            let digit = index % per_slot;
            index /= per_slot;
            let dd = d.get() * d.get();
            partners.push(BellOutcome::from_index(d, digit / dd).unwrap());
            outcomes.push(BellOutcome::from_index(d, digit % dd).unwrap());
        }
        f(&partners, &outcomes);
    }
}

// 5. Swapping every qudit of a maximally entangled state.
fn every_slot_swaps() -> Verdict {
    let mut tally = Tally::new();
    let d2 = dim(2);
    for n in [2, 3] {
        for_each_tuple(d2, n, &mut |p, o| multi_swap_case(&mut tally, d2, p, o));
    }
    let exhaustive = tally.cases;
    let d3 = dim(3);
    let mut rng = RandomSeed(6).rng();
    for _ in 0..150 {
        let mut draw = || BellOutcome::from_index(d3, rng.gen_range(0..9)).unwrap();
        let partners = [draw(), draw(), draw()];
        let outcomes = [draw(), draw(), draw()];
        multi_swap_case(&mut tally, d3, &partners, &outcomes);
    }
    Verdict::new(
        tally.ok(),
        format!("{exhaustive} exhaustive at d=2 n=2,3 + 150 sampled at d=3 n=3: {}", tally.summary()),
    )
}

fn chain_case(tally: &mut Tally, d: Dimension, outcomes: &[BellOutcome]) {
    let label = || format!("d={} outcomes {outcomes:?}", d.get());
    match verify_chain(d, outcomes, &Tolerances::default()) {
        Ok(c) => {
            let fidelity = c
                .fidelity_chain_oracle
                .min(c.fidelity_multi_oracle)
                .min(c.fidelity_chain_multi);
            let q = (d.get() as f64).powi(-2 * outcomes.len() as i32);
            tally.record(fidelity, (c.probability_oracle - q).abs(), label);
        }
        Err(_) => tally.fail(label()),
    }
}

// 6. Swapping chains.
fn chains() -> Verdict {
    let mut tally = Tally::new();
    let d2 = dim(2);
    for pairs in 2..=5 {
        let m = pairs - 1;
        for mut index in 0..4usize.pow(m as u32) {
            let outcomes: Vec<BellOutcome> = (0..m)
                .map(|_| {
                    let o = BellOutcome::from_index(d2, index % 4).unwrap();
                    index /= 4;
                    o
                })
                .collect();
            chain_case(&mut tally, d2, &outcomes);
        }
    }
    let exhaustive = tally.cases;
    let d3 = dim(3);
    let mut rng = RandomSeed(7).rng();
    for _ in 0..220 {
        let pairs = rng.gen_range(2..=5);
        let outcomes: Vec<BellOutcome> = (1..pairs)
            .map(|_| BellOutcome::from_index(d3, rng.gen_range(0..9)).unwrap())
            .collect();
        chain_case(&mut tally, d3, &outcomes);
    }
    Verdict::new(
        tally.ok(),
        format!("{exhaustive} exhaustive at d=2 + 220 sampled at d=3, 2..5 pairs: {}", tally.summary()),
    )
}

// 7. Multi-party summation.
fn summation() -> Verdict {
    let mut runs = 0;
    let mut wrong = Vec::new();
    let mut rng = RandomSeed(8).rng();
    for d in [3, 5, 7] {
        for n in [2, 3, 4] {
            for _ in 0..56 {
                let secrets: Vec<usize> = (0..n).map(|_| rng.gen_range(0..d)).collect();
                let residues: Vec<ModInt> = secrets.iter().map(|&x| ModInt::new(x, dim(d)).unwrap()).collect();
                let t = run_summation(dim(d), &residues, RandomSeed(rng.gen())).unwrap();
                let want = secrets.iter().sum::<usize>() % d;
                if t.tp_sum.value() != want || !t.results_well_formed() {
                    wrong.push(format!("d={d} x={secrets:?}"));
                }
                runs += 1;
            }
        }
    }
    let mut detail = format!("{runs} runs over d=3,5,7 n=2,3,4, {} wrong sums", wrong.len());
    if let Some(first) = wrong.first() {
        detail.push_str(&format!(", first {first:?}"));
    }
    Verdict::new(runs >= 500 && wrong.is_empty(), detail)
}

// 8. Success-probability evaluator.
fn success_formula() -> Verdict {
    let d5 = dim(5);
    let m = |v: &[usize]| v.iter().map(|&x| ModInt::new(x, d5).unwrap()).collect::<Vec<_>>();
    let hand = success_probability(d5, &m(&[1, 2]), &m(&[0, 1])).unwrap();
    let zeros = success_probability(d5, &m(&[0, 0, 0]), &m(&[0, 0, 0])).unwrap();
    let vanishing = success_probability(d5, &m(&[4]), &m(&[1])).unwrap();
    let pass = hand == 96.0 / 625.0 && zeros == 1.0 && vanishing == 0.0;
    Verdict::new(
        pass,
        format!("(1,2)/(0,1) at d=5 → {hand} (96/625 = {}), all zero → {zeros}, vanishing → {vanishing}", 96.0 / 625.0),
    )
}

// 9. Secret sharing.
fn secret_sharing() -> Verdict {
    let mut runs = 0;
    let mut wrong = Vec::new();
    // For d=2, n=3: known (n−1)-subsets of shares → alice secrets seen across runs.
    let mut seen: BTreeMap<(usize, Vec<usize>), BTreeSet<usize>> = BTreeMap::new();
    for d in [2, 3, 5] {
        for n in [1, 2, 3] {
            for s in 0..23 {
                let seed = RandomSeed(1000 * d as u64 + 100 * n as u64 + s);
                let t = run_secret_sharing(dim(d), n, seed).unwrap();
                let pooled = t.shares.iter().map(|s| s.value()).sum::<usize>() % d;
                let single_ok = n != 1 || t.alice_secret == t.bob_outcomes[0].v;
                if t.reconstructed != t.alice_secret || pooled != t.alice_secret.value() || !single_ok {
                    wrong.push(format!("d={d} n={n} seed={}", seed.0));
                }
                if d == 2 && n == 3 {
                    for missing in 0..n {
                        let known: Vec<usize> = (0..n).filter(|&k| k != missing).map(|k| t.shares[k].value()).collect();
                        seen.entry((missing, known)).or_default().insert(t.alice_secret.value());
                    }
                }
                runs += 1;
            }
        }
    }

    // Exhaustive: every share vector, every withheld share.
    let d2 = dim(2);
    let mut min_consistent = usize::MAX;
    for bits in 0..8usize {
        let shares: Vec<usize> = (0..3).map(|k| (bits >> k) & 1).collect();
        for missing in 0..3 {
            let partial: Vec<Option<ModInt>> = (0..3)
                .map(|k| (k != missing).then(|| ModInt::new(shares[k], d2).unwrap()))
                .collect();
            let by_core = consistent_secrets(d2, &partial).unwrap();
            let by_hand: BTreeSet<usize> = (0..2)
                .map(|x| {
                    let mut full = shares.clone();
                    full[missing] = x;
                    full.iter().sum::<usize>() % 2
                })
                .collect();
            if by_core != by_hand {
                wrong.push(format!("consistent secrets differ for {shares:?} without {missing}"));
            }
            min_consistent = min_consistent.min(by_core.len());
        }
    }
    let ambiguous_in_runs = seen.values().filter(|s| s.len() >= 2).count();
    Verdict::new(
        runs >= 200 && wrong.is_empty() && min_consistent >= 2 && ambiguous_in_runs > 0,
        format!(
            "{runs} runs over d=2,3,5 n=1,2,3, {} mismatches; d=2 n=3 partial shares leave ≥{min_consistent} secrets \
             ({ambiguous_in_runs}/{} observed share subsets saw both secrets)",
            wrong.len(),
            seen.len()
        ),
    )
}

// 10. Oracle swap on a 10-qudit register at d=3.
fn big_oracle_swap() -> Verdict {
    let d = dim(3);
    let mut rng = RandomSeed(10).rng();
    let family = FamilySpec::random(FamilyKind::GhzClass, d, 8, &mut rng).build(d, 8).unwrap();
    let outcome = BellOutcome::from_values(d, 1, 2).unwrap();
    let step = SwapStep::new(5, make_max_entangled(d, 2).unwrap(), outcome);
    let start = Instant::now();
    let result = oracle_swap(&family, &step);
    let elapsed = start.elapsed();
    let Ok((p, post)) = result else {
        return Verdict::new(false, "oracle swap failed");
    };
    let predicted = predict_swap(&family, &step).unwrap().to_state(post.labels()).unwrap();
    let fidelity = predicted.fidelity_up_to_phase(&post).unwrap();
    let ok = elapsed < Duration::from_secs(2) && fidelity >= 1.0 - FIDELITY_TOL && (p - 1.0 / 9.0).abs() <= PROBABILITY_TOL;
    Verdict::new(
        ok,
        format!(
            "{} amplitudes swapped in {:.3} s (limit 2 s), fidelity {fidelity:.15}",
            3usize.pow(10),
            elapsed.as_secs_f64()
        ),
    )
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Verdict, Option<Duration>);
    let criteria: [Criterion; 10] = [
        ("Bell basis orthonormality", bell_orthonormality, Some(Duration::from_secs(5))),
        ("swap of two maximally entangled pairs", two_max_pairs, Some(Duration::from_secs(10))),
        ("swap of a maximally entangled pair with a Bell state", max_with_bell, None),
        ("multi-qudit family swaps", family_swaps, Some(Duration::from_secs(120))),
        ("swapping every qudit", every_slot_swaps, None),
        ("swapping chains", chains, None),
        ("multi-party summation", summation, Some(Duration::from_secs(60))),
        ("success-probability formula", success_formula, None),
        ("secret sharing", secret_sharing, None),
        ("10-qudit oracle swap", big_oracle_swap, None),
    ];
    let suite = Instant::now();
    let mut failed = 0;
    for (index, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = run();
        let elapsed = start.elapsed();
        let in_time = limit.is_none_or(|l| elapsed < l);
        let pass = verdict.pass && in_time;
        failed += usize::from(!pass);
        let limit_note = limit.map_or(String::new(), |l| format!(", limit {} s", l.as_secs()));
        println!(
            "[{}] {:>2}. {name}: {} ({:.2} s{limit_note})",
            if pass { "PASS" } else { "FAIL" },
            index + 1,
            verdict.detail,
            elapsed.as_secs_f64(),
        );
    }
    let total = suite.elapsed();
    let in_budget = total < Duration::from_secs(300);
    println!(
        "[{}] suite: {} of {} criteria passed in {:.2} s (limit 300 s)",
        if failed == 0 && in_budget { "PASS" } else { "FAIL" },
        criteria.len() - failed,
        criteria.len(),
        total.as_secs_f64()
    );
    if failed == 0 && in_budget {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
