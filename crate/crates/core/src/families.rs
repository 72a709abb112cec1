//! Entangled-state families in the unified form `Σ_j c_j |j⊕s_1, …, j⊕s_n⟩`.
//!
//! | family                | `c_j`              | shifts              |
//! |-----------------------|--------------------|---------------------|
//! | maximally entangled   | `1/√d`             | all 0               |
//! | Bell `Ψ(u,v)`         | `ζ^{ju}/√d`        | `(0, v)`            |
//! | GHZ                   | `e^{iδ_j}/√d`      | all 0               |
//! | GHZ-class             | `ζ^{jμ₁} α_j`      | `(0, μ₂, …, μ_n)`   |
//! | cat-like              | `ω_j/√d`, `|ω_j|=1`| all 0               |
//!
//! Constructors anchor the first shift at 0. Swapping may move it (see [`crate::swap`]).

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;
use num_traits::Float;
use rand::Rng;

use crate::error::{Error, Result};
use crate::modular::{Dimension, ModInt, RootTable};
use crate::rng::random_residue;
use crate::state::{Label, PureState, NORM_TOLERANCE};

/// Amplitudes with modulus at or below this count as zero when picking a canonical phase.
const PHASE_ANCHOR_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct QuditStateFamily {
    dim: Dimension,
    amps: Vec<Complex64>,
    shifts: Vec<ModInt>,
}

impl QuditStateFamily {
    /// Validated constructor: `amps` has `d` entries with `Σ|c_j|² = 1` (within 1e-10) and
    /// `shifts` has `n ≥ 1` entries.
    pub fn new(dim: Dimension, amps: Vec<Complex64>, shifts: Vec<ModInt>) -> Result<Self> {
        check_shape(dim, &amps, &shifts)?;
        let norm_sqr: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(QuditStateFamily { dim, amps, shifts })
    }

    /// Rescales `amps` to unit norm. Fails with [`Error::ZeroProbability`] when all vanish.
    pub(crate) fn from_unnormalized(
        dim: Dimension,
        mut amps: Vec<Complex64>,
        shifts: Vec<ModInt>,
    ) -> Result<Self> {
        check_shape(dim, &amps, &shifts)?;
        let norm_sqr: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if norm_sqr <= crate::state::ZERO_PROBABILITY {
            return Err(Error::ZeroProbability {
                probability: norm_sqr,
            });
        }
        let scale = 1.0 / Float::sqrt(norm_sqr);
        for a in &mut amps {
            *a *= scale;
        }
        Ok(QuditStateFamily { dim, amps, shifts })
    }

    #[inline]
    pub fn dim(&self) -> Dimension {
        self.dim
    }

    /// Number of qudits.
    #[inline]
    pub fn n(&self) -> usize {
        self.shifts.len()
    }

    /// Coefficients `c_0 … c_{d-1}`.
    #[inline]
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    #[inline]
    pub fn shifts(&self) -> &[ModInt] {
        &self.shifts
    }

    /// Removes the global phase: the first non-negligible coefficient becomes real positive.
    pub fn canonicalized(mut self) -> Self {
        if let Some(k) = self.amps.iter().position(|a| a.norm() > PHASE_ANCHOR_EPS) {
            let anchor = self.amps[k];
            let rot = anchor.conj() / anchor.norm();
            for a in &mut self.amps {
                *a *= rot;
            }
            self.amps[k] = Complex64::new(anchor.norm(), 0.0);
        }
        self
    }

    /// Same dimension and shifts, coefficients equal within `tol` (no phase freedom).
    pub fn approx_eq(&self, other: &QuditStateFamily, tol: f64) -> bool {
        self.dim == other.dim
            && self.shifts == other.shifts
            && self
                .amps
                .iter()
                .zip(&other.amps)
                .all(|(a, b)| (a - b).norm() <= tol)
    }

    /// Dense expansion on the given labels (one per qudit, in slot order).
    pub fn to_state(&self, labels: &[Label]) -> Result<PureState> {
        if labels.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                actual: labels.len(),
            });
        }
        let d = self.dim.get();
        let len = self.dim.pow(self.n()).ok_or(Error::RegisterTooLarge {
            amplitudes: usize::MAX,
            max: crate::state::MAX_AMPLITUDES,
        })?;
        if len > crate::state::MAX_AMPLITUDES {
            return Err(Error::RegisterTooLarge {
                amplitudes: len,
                max: crate::state::MAX_AMPLITUDES,
            });
        }
        let mut amps = alloc::vec![Complex64::new(0.0, 0.0); len];
        for (j, c) in self.amps.iter().enumerate() {
            let index = self
                .shifts
                .iter()
                .fold(0, |acc, s| acc * d + (j + s.value()) % d);
            amps[index] = *c;
        }
        PureState::new(self.dim, labels.to_vec(), amps)
    }
}

fn check_shape(dim: Dimension, amps: &[Complex64], shifts: &[ModInt]) -> Result<()> {
    if shifts.is_empty() {
        return Err(Error::InvalidArity { n: 0 });
    }
    if amps.len() != dim.get() {
        return Err(Error::LengthMismatch {
            expected: dim.get(),
            actual: amps.len(),
        });
    }
    if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    for s in shifts {
        dim.check(s.dim())?;
    }
    Ok(())
}

/// Dense expansion of `family` on `labels`.
pub fn family_to_state(family: &QuditStateFamily, labels: &[Label]) -> Result<PureState> {
    family.to_state(labels)
}

fn uniform(dim: Dimension) -> Complex64 {
    Complex64::new(1.0 / Float::sqrt(dim.get() as f64), 0.0)
}

fn zero_shifts(dim: Dimension, n: usize) -> Result<Vec<ModInt>> {
    if n == 0 {
        return Err(Error::InvalidArity { n });
    }
    Ok(alloc::vec![dim.zero(); n])
}

/// `(1/√d) Σ_j |j, …, j⟩` on `n` qudits.
pub fn make_max_entangled(d: Dimension, n: usize) -> Result<QuditStateFamily> {
    let shifts = zero_shifts(d, n)?;
    QuditStateFamily::new(d, alloc::vec![uniform(d); d.get()], shifts)
}

/// `|Ψ(u,v)⟩` as a two-qudit family.
pub fn make_bell(d: Dimension, u: ModInt, v: ModInt) -> Result<QuditStateFamily> {
    d.check(u.dim())?;
    d.check(v.dim())?;
    let roots = RootTable::new(d);
    let amps = (0..d.get())
        .map(|j| roots.pow((j * u.value()) as i64) * uniform(d))
        .collect();
    QuditStateFamily::new(d, amps, alloc::vec![d.zero(), v])
}

/// `(1/√d) Σ_j e^{iδ_j} |j, …, j⟩`.
pub fn make_ghz(d: Dimension, n: usize, deltas: &[f64]) -> Result<QuditStateFamily> {
    if deltas.len() != d.get() {
        return Err(Error::LengthMismatch {
            expected: d.get(),
            actual: deltas.len(),
        });
    }
    if deltas.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    let shifts = zero_shifts(d, n)?;
    let amps = deltas
        .iter()
        .map(|&delta| Complex64::from_polar(1.0, delta) * uniform(d))
        .collect();
    QuditStateFamily::new(d, amps, shifts)
}

/// `Σ_j ζ^{jμ₁} α_j |j, j⊕μ₂, …, j⊕μ_n⟩`. The `alphas` carry the whole normalization.
pub fn make_ghz_class(
    d: Dimension,
    n: usize,
    mu1: ModInt,
    mus: &[ModInt],
    alphas: &[Complex64],
) -> Result<QuditStateFamily> {
    if n == 0 {
        return Err(Error::InvalidArity { n });
    }
    if mus.len() != n - 1 {
        return Err(Error::LengthMismatch {
            expected: n - 1,
            actual: mus.len(),
        });
    }
    if alphas.len() != d.get() {
        return Err(Error::LengthMismatch {
            expected: d.get(),
            actual: alphas.len(),
        });
    }
    d.check(mu1.dim())?;
    let norm_sqr: f64 = alphas.iter().map(|a| a.norm_sqr()).sum();
    if (norm_sqr - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::NotNormalized { norm_sqr });
    }
    let roots = RootTable::new(d);
    let amps = alphas
        .iter()
        .enumerate()
        .map(|(j, a)| roots.pow((j * mu1.value()) as i64) * a)
        .collect();
    let mut shifts = Vec::with_capacity(n);
    shifts.push(d.zero());
    shifts.extend_from_slice(mus);
    QuditStateFamily::new(d, amps, shifts)
}

/// `(1/√d) Σ_j ω_j |j, …, j⟩` with unit-modulus `ω_j`.
pub fn make_cat_like(d: Dimension, n: usize, omegas: &[Complex64]) -> Result<QuditStateFamily> {
    if omegas.len() != d.get() {
        return Err(Error::LengthMismatch {
            expected: d.get(),
            actual: omegas.len(),
        });
    }
    for (index, w) in omegas.iter().enumerate() {
        let modulus = w.norm();
        if !modulus.is_finite() || (modulus - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NonUnitCoefficient { index, modulus });
        }
    }
    let shifts = zero_shifts(d, n)?;
    let amps = omegas.iter().map(|w| w * uniform(d)).collect();
    QuditStateFamily::new(d, amps, shifts)
}

/// The family kinds, without parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum FamilyKind {
    Max,
    Bell,
    Ghz,
    GhzClass,
    CatLike,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 5] = [
        FamilyKind::Max,
        FamilyKind::Bell,
        FamilyKind::Ghz,
        FamilyKind::GhzClass,
        FamilyKind::CatLike,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Max => "max",
            FamilyKind::Bell => "bell",
            FamilyKind::Ghz => "ghz",
            FamilyKind::GhzClass => "ghz_class",
            FamilyKind::CatLike => "cat_like",
        }
    }

    /// Bell states only exist on two qudits.
    pub fn supports(self, n: usize) -> bool {
        match self {
            FamilyKind::Bell => n == 2,
            _ => n >= 1,
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| !matches!(c, '_' | '-'))
            .flat_map(char::to_lowercase)
            .collect();
        match key.as_str() {
            "max" | "maxentangled" => Ok(FamilyKind::Max),
            "bell" => Ok(FamilyKind::Bell),
            "ghz" => Ok(FamilyKind::Ghz),
            "ghzclass" => Ok(FamilyKind::GhzClass),
            "catlike" | "cat" => Ok(FamilyKind::CatLike),
            _ => Err(Error::InvalidConfig("unknown family kind")),
        }
    }
}

/// A family kind together with its parameters; `build(d, n)` produces the family.
/// Complex parameters are `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum FamilySpec {
    Max,
    Bell {
        u: usize,
        v: usize,
    },
    Ghz {
        deltas: Vec<f64>,
    },
    GhzClass {
        mu1: usize,
        mus: Vec<usize>,
        alphas: Vec<[f64; 2]>,
    },
    CatLike {
        omegas: Vec<[f64; 2]>,
    },
}

impl FamilySpec {
    pub fn kind(&self) -> FamilyKind {
        match self {
            FamilySpec::Max => FamilyKind::Max,
            FamilySpec::Bell { .. } => FamilyKind::Bell,
            FamilySpec::Ghz { .. } => FamilyKind::Ghz,
            FamilySpec::GhzClass { .. } => FamilyKind::GhzClass,
            FamilySpec::CatLike { .. } => FamilyKind::CatLike,
        }
    }

    pub fn build(&self, d: Dimension, n: usize) -> Result<QuditStateFamily> {
        let complex = |v: &[[f64; 2]]| -> Vec<Complex64> {
            v.iter().map(|&[re, im]| Complex64::new(re, im)).collect()
        };
        match self {
            FamilySpec::Max => make_max_entangled(d, n),
            FamilySpec::Bell { u, v } => {
                if n != 2 {
                    return Err(Error::InvalidArity { n });
                }
                make_bell(d, ModInt::new(*u, d)?, ModInt::new(*v, d)?)
            }
            FamilySpec::Ghz { deltas } => make_ghz(d, n, deltas),
            FamilySpec::GhzClass { mu1, mus, alphas } => {
                let mus = mus
                    .iter()
                    .map(|&m| ModInt::new(m, d))
                    .collect::<Result<Vec<_>>>()?;
                make_ghz_class(d, n, ModInt::new(*mu1, d)?, &mus, &complex(alphas))
            }
            FamilySpec::CatLike { omegas } => make_cat_like(d, n, &complex(omegas)),
        }
    }

    /// Random parameters for `kind` on `n` qudits of dimension `d`: phases uniform on
    /// `[0, 2π)`, shifts uniform on `Z_d`, GHZ-class `α` uniform in the unit square then
    /// normalized.
    pub fn random<R: Rng + ?Sized>(kind: FamilyKind, d: Dimension, n: usize, rng: &mut R) -> Self {
        let phase = |rng: &mut R| rng.gen_range(0.0..2.0 * PI);
        match kind {
            FamilyKind::Max => FamilySpec::Max,
            FamilyKind::Bell => FamilySpec::Bell {
                u: random_residue(rng, d).value(),
                v: random_residue(rng, d).value(),
            },
            FamilyKind::Ghz => FamilySpec::Ghz {
                deltas: (0..d.get()).map(|_| phase(rng)).collect(),
            },
            FamilyKind::GhzClass => {
                let mu1 = random_residue(rng, d).value();
                let mus = (1..n.max(1))
                    .map(|_| random_residue(rng, d).value())
                    .collect();
                let mut alphas: Vec<[f64; 2]> = (0..d.get())
                    .map(|_| [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)])
                    .collect();
                let norm = Float::sqrt(
                    alphas
                        .iter()
                        .map(|[re, im]| re * re + im * im)
                        .sum::<f64>(),
                );
                if norm < 1e-6 {
                    alphas = alloc::vec![[0.0, 0.0]; d.get()];
                    alphas[0] = [1.0, 0.0];
                } else {
                    for a in &mut alphas {
                        a[0] /= norm;
                        a[1] /= norm;
                    }
                }
                FamilySpec::GhzClass { mu1, mus, alphas }
            }
            FamilyKind::CatLike => FamilySpec::CatLike {
                omegas: (0..d.get())
                    .map(|_| {
                        let w = Complex64::from_polar(1.0, phase(rng));
                        [w.re, w.im]
                    })
                    .collect(),
            },
        }
    }
}
