//! Integer and half-integer pulse areas, and related closed forms.

use crate::error::{Error, Result};
use crate::real::Real;
use crate::specfun::ln_gamma;

fn check_gamma<T: Real>(op: &'static str, gamma: T) -> Result<()> {
    if !(gamma >= T::zero()) || !gamma.is_finite() {
        return Err(Error::domain(op, format!("gamma = {} must be finite and >= 0", gamma)));
    }
    Ok(())
}

/// Final inversion for an nπ pulse: -Π_{k=0}^{n-1} (2γ-1-2k)/(2γ+1+2k).
pub fn w_integer_pulse<T: Real>(n: u32, gamma: T) -> Result<T> {
    check_gamma("w_integer_pulse", gamma)?;
    if n == 0 {
        return Err(Error::domain("w_integer_pulse", "n must be >= 1"));
    }
    let two_gamma = gamma + gamma;
    let prod = (0..n).fold(T::one(), |acc, k| {
        let two_k = T::lit(2.0 * k as f64);
        acc * (two_gamma - T::one() - two_k) / (two_gamma + T::one() + two_k)
    });
    Ok(-prod)
}

/// Final inversion for an (n + 1/2)π pulse:
/// -[γ Γ²(1/2+γ) / Γ²(1+γ)] Π_{k=1}^{n} (γ-k)/(γ+k).
pub fn w_half_integer_pulse<T: Real>(n: u32, gamma: T) -> Result<T> {
    check_gamma("w_half_integer_pulse", gamma)?;
    if gamma == T::zero() {
        return Ok(T::zero());
    }
    let ratio = (ln_gamma(T::lit(0.5) + gamma)? - ln_gamma(T::one() + gamma)?).exp();
    let prefactor = gamma * ratio * ratio;
    let prod = (1..=n).fold(T::one(), |acc, k| {
        let k = T::lit(k as f64);
        acc * (gamma - k) / (gamma + k)
    });
    Ok(-prefactor * prod)
}

/// The γ at which a π pulse leaves inversion `w_target`: (1-w)/(2(1+w)).
pub fn gamma_epsilon<T: Real>(w_target: T) -> Result<T> {
    if !(w_target > -T::one() && w_target <= T::one()) {
        return Err(Error::domain(
            "gamma_epsilon",
            format!("w_target = {} must lie in (-1, 1]", w_target),
        ));
    }
    Ok(T::lit(0.5) * (T::one() - w_target) / (T::one() + w_target))
}

/// Pulse area (2n + 1 + ΓT)π/2 at which the final inversion vanishes.
pub fn equal_superposition_area<T: Real>(n: u32, gamma_t: T) -> T {
    (T::lit(2.0 * n as f64 + 1.0) + gamma_t) * T::FRAC_PI_2()
}
