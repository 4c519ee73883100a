//! Weak-dephasing, strong-dephasing and large-area approximations.

use crate::error::{Error, Result};
use crate::real::{cos_pi, Real};
use crate::specfun::{digamma, ln_gamma, EULER_GAMMA};

use super::DimensionlessParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    WeakDephasing,
    StrongDephasing,
    LargeArea,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::WeakDephasing => "weak_dephasing",
            Regime::StrongDephasing => "strong_dephasing",
            Regime::LargeArea => "large_area",
        }
    }
}

/// An approximate final inversion with the small parameter of its expansion.
///
/// Out-of-regime inputs still produce a value; `validity_hint` tells the
/// caller how far the expansion is being pushed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticEstimate<T> {
    pub value: T,
    pub regime: Regime,
    pub validity_hint: T,
}

/// First order in γ: -{1 - 2[c + 2 ln 2 + ψ(1/2+α)]γ} cos π(α-γ).
pub fn w_weak_dephasing<T: Real>(p: DimensionlessParams<T>) -> AsymptoticEstimate<T> {
    let (alpha, gamma) = (p.alpha(), p.gamma());
    let psi = digamma(T::lit(0.5) + alpha).expect("argument >= 1/2");
    let bracket = T::lit(EULER_GAMMA) + T::lit(2.0) * T::LN_2() + psi;
    let amplitude = T::one() - T::lit(2.0) * bracket * gamma;
    AsymptoticEstimate {
        value: -amplitude * cos_pi(alpha - gamma),
        regime: Regime::WeakDephasing,
        validity_hint: gamma,
    }
}

/// Inversion near the n-th extremum α = n + γ, to first order in γ:
/// (-1)^{n+1} [1 - 4γ Σ_{k=1}^{n} 1/(2k-1)].
pub fn w_weak_extremum<T: Real>(n: u32, gamma: T) -> Result<T> {
    if n == 0 {
        return Err(Error::domain("w_weak_extremum", "n must be >= 1"));
    }
    let harmonic_odd = (1..=n).fold(T::zero(), |acc, k| acc + T::lit(1.0 / (2.0 * k as f64 - 1.0)));
    let sign = if n % 2 == 1 { T::one() } else { -T::one() };
    Ok(sign * (T::one() - T::lit(4.0) * gamma * harmonic_odd))
}

/// Gaussian decay for γ ≫ α, 1: -exp(-α²/γ).
pub fn w_strong_dephasing<T: Real>(p: DimensionlessParams<T>) -> AsymptoticEstimate<T> {
    let (alpha, gamma) = (p.alpha(), p.gamma());
    let value = if alpha == T::zero() {
        -T::one()
    } else {
        -(-(alpha * alpha) / gamma).exp()
    };
    AsymptoticEstimate {
        value,
        regime: Regime::StrongDephasing,
        validity_hint: gamma.recip(),
    }
}

/// Algebraic damping for α ≫ γ, 1: -(1/π) Γ²(1/2+γ) α^{-2γ} cos π(α-γ).
pub fn w_large_area<T: Real>(p: DimensionlessParams<T>) -> AsymptoticEstimate<T> {
    let (alpha, gamma) = (p.alpha(), p.gamma());
    let ln_g = ln_gamma(T::lit(0.5) + gamma).expect("argument >= 1/2");
    let envelope = if gamma == T::zero() {
        T::one()
    } else {
        (ln_g + ln_g - T::PI().ln() - (gamma + gamma) * alpha.ln()).exp()
    };
    AsymptoticEstimate {
        value: -envelope * cos_pi(alpha - gamma),
        regime: Regime::LargeArea,
        validity_hint: (alpha * alpha).recip(),
    }
}

/// Pulse area beyond which the large-area envelope stays below ε:
/// A_ε = π [π ε / Γ²(1/2+γ)]^{-1/(2γ)}, in radians.
pub fn area_epsilon<T: Real>(epsilon: T, gamma: T) -> Result<T> {
    if !(epsilon > T::zero() && epsilon < T::one()) {
        return Err(Error::domain(
            "area_epsilon",
            format!("epsilon = {} must lie in (0, 1)", epsilon),
        ));
    }
    if !(gamma > T::zero()) || !gamma.is_finite() {
        return Err(Error::domain(
            "area_epsilon",
            format!(
                "gamma = {} must be > 0; without dephasing the amplitude never decays",
                gamma
            ),
        ));
    }
    let ln_g = ln_gamma(T::lit(0.5) + gamma)?;
    let ln_base = T::PI().ln() + epsilon.ln() - (ln_g + ln_g);
    Ok(T::PI() * (-ln_base / (gamma + gamma)).exp())
}
