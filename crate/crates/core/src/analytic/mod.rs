//! Closed-form results for resonant sech-pulse excitation with dephasing.
//!
//! Everything here depends only on the two dimensionless numbers
//! α = Ω₀T (pulse area over π) and γ = ΓT/2.

mod asymptotic;
mod special;
mod time_dependent;

pub use asymptotic::{
    area_epsilon, w_large_area, w_strong_dephasing, w_weak_dephasing, w_weak_extremum, AsymptoticEstimate, Regime,
};
pub use special::{equal_superposition_area, gamma_epsilon, w_half_integer_pulse, w_integer_pulse};
pub use time_dependent::{bloch_state_at, trajectory, v_of_t, w_of_t, z_of_t};

use crate::error::{Error, Result};
use crate::real::{cos_pi, dist_to_nonpositive_integer, sin_pi, Real};
use crate::specfun::{ln_gamma, ln_gamma_signed};

/// Distance to a pole of Γ(1/2 - γ + α) below which the cosine form is refused.
pub const COS_FORM_POLE_GUARD: f64 = 1e-9;

/// The pair (α, γ) with α = Ω₀T and γ = ΓT/2, both nonnegative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessParams<T> {
    alpha: T,
    gamma: T,
}

impl<T: Real> DimensionlessParams<T> {
    pub fn new(alpha: T, gamma: T) -> Result<Self> {
        if !(alpha >= T::zero()) || !alpha.is_finite() {
            return Err(Error::domain(
                "params",
                format!("alpha = {} must be finite and >= 0", alpha),
            ));
        }
        if !(gamma >= T::zero()) || !gamma.is_finite() {
            return Err(Error::domain(
                "params",
                format!("gamma = {} must be finite and >= 0", gamma),
            ));
        }
        Ok(Self { alpha, gamma })
    }

    /// Builds the pair from α and the product ΓT (γ = ΓT/2).
    pub fn from_gamma_t(alpha: T, gamma_t: T) -> Result<Self> {
        Self::new(alpha, gamma_t * T::lit(0.5))
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn gamma(&self) -> T {
        self.gamma
    }

    /// ΓT = 2γ.
    pub fn gamma_t(&self) -> T {
        self.gamma + self.gamma
    }

    /// Pulse area A = πα.
    pub fn area(&self) -> T {
        T::PI() * self.alpha
    }

    /// Hypergeometric lower parameter ν = 1/2 + γ.
    pub fn nu(&self) -> T {
        T::lit(0.5) + self.gamma
    }
}

/// Bloch vector (u, v, w): coherences u = 2 Re ρ₁₂, v = 2 Im ρ₁₂ and inversion w = ρ₂₂ - ρ₁₁.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BlochState<T> {
    pub u: T,
    pub v: T,
    pub w: T,
}

impl<T: Real> BlochState<T> {
    pub fn new(u: T, v: T, w: T) -> Self {
        Self { u, v, w }
    }

    /// Ground state (0, 0, -1).
    pub fn ground() -> Self {
        Self::new(T::zero(), T::zero(), -T::one())
    }

    pub fn norm_sq(&self) -> T {
        self.u * self.u + self.v * self.v + self.w * self.w
    }

    pub fn coherence_sq(&self) -> T {
        self.u * self.u + self.v * self.v
    }

    pub fn to_array(self) -> [T; 3] {
        [self.u, self.v, self.w]
    }

    pub fn from_array(a: [T; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }
}

/// Final inversion without dephasing: -cos(πα).
pub fn w_coherent<T: Real>(alpha: T) -> T {
    -cos_pi(alpha)
}

/// Exact final inversion -Γ²(ν) / [Γ(ν+α) Γ(ν-α)], ν = 1/2 + γ.
///
/// Evaluated in log space; Γ(ν-α) at a pole yields exactly 0.
pub fn w_infinity<T: Real>(p: DimensionlessParams<T>) -> T {
    let nu = p.nu();
    let ln_nu = ln_gamma_signed(nu).expect("nu >= 1/2").0;
    let ln_plus = ln_gamma_signed(nu + p.alpha).expect("nu + alpha >= 1/2").0;
    match ln_gamma_signed(nu - p.alpha) {
        None => T::zero(),
        Some((ln_minus, sign)) => {
            let w = -sign * (ln_nu + ln_nu - ln_plus - ln_minus).exp();
            w.max(-T::one()).min(T::one())
        }
    }
}

/// Reflection-formula form
/// -Γ²(ν) Γ(1/2 - γ + α) / (π Γ(ν + α)) · cos π(α - γ).
///
/// Refuses arguments within [`COS_FORM_POLE_GUARD`] of a pole of Γ(1/2 - γ + α).
pub fn w_infinity_cos_form<T: Real>(p: DimensionlessParams<T>) -> Result<T> {
    let nu = p.nu();
    let shifted = T::lit(0.5) - p.gamma + p.alpha;
    if dist_to_nonpositive_integer(shifted) < T::lit(COS_FORM_POLE_GUARD) {
        return Err(Error::PoleProximity {
            op: "w_infinity_cos_form",
            arg: shifted.as_f64(),
            threshold: COS_FORM_POLE_GUARD,
        });
    }
    let (ln_shifted, sign) = ln_gamma_signed(shifted).expect("pole excluded above");
    let ln_nu = ln_gamma(nu)?;
    let ln_plus = ln_gamma(nu + p.alpha)?;
    // cos π(α - γ) = sin π(1/2 - γ + α); sharing the argument keeps the
    // pole/zero pair consistent near the excluded neighbourhoods
    let phase = sin_pi(shifted);
    let magnitude = (ln_nu + ln_nu + ln_shifted - ln_plus).exp() / T::PI();
    Ok(-sign * magnitude * phase)
}
