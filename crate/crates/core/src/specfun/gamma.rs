//! Gamma-function family on the real line.
//!
//! `ln_gamma` uses Taylor series of ln Γ(1+ε) around 1 and 2, downward
//! recurrence for moderate arguments and the Stirling series for x ≥ 15.
//! Negative arguments go through the reflection formula.

use crate::error::{Error, Result};
use crate::real::{sin_pi, Real};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_1;

/// (-1)^k ζ(k) / k for k = 2, 3, ...; Taylor coefficients of ln Γ(1+ε) beyond the linear term.
const LN_GAMMA_TAYLOR: [f64; 59] = [
    0.82246703342411321824,
    -0.40068563438653142847,
    0.27058080842778454788,
    -0.20738555102867398527,
    0.16955717699740818995,
    -0.14404989676884611812,
    0.12550966952474304242,
    -0.11133426586956469049,
    0.10009945751278180853,
    -0.090954017145829042233,
    0.083353840546109004025,
    -0.076932516411352191473,
    0.071432946295361336059,
    -0.066668705882420468033,
    0.062500955141213040742,
    -0.058823978658684582339,
    0.055555767627403611102,
    -0.052631679379616660734,
    0.05000004769810169364,
    -0.047619070330142227991,
    0.045454556293204669442,
    -0.043478266053040259361,
    0.041666669150341210469,
    -0.040000001192140140586,
    0.038461539034675185706,
    -0.037037037312989325549,
    0.035714285847333358028,
    -0.034482758684919300811,
    0.033333333364377581081,
    -0.032258064531150416339,
    0.03125000000727597448,
    -0.030303030306558045507,
    0.029411764707594344732,
    -0.028571428572260110013,
    0.02777777777818199783,
    -0.02702702702722367459,
    0.02631578947377994683,
    -0.025641025641072281786,
    0.02500000000002273737,
    -0.02439024390245011579,
    0.023809523809529223183,
    -0.023255813953491015973,
    0.022727272727274019169,
    -0.022222222222222853816,
    0.021739130434782917627,
    -0.021276595744681002243,
    0.020833333333333407348,
    -0.020408163265306158701,
    0.020000000000000017764,
    -0.019607843137254910668,
    0.019230769230769235039,
    -0.018867924528301888887,
    0.018518518518518519547,
    -0.018181818181818182323,
    0.017857142857142857391,
    -0.017543859649122807139,
    0.017241379310344827646,
    -0.016949152542372881385,
    0.016666666666666666681,
];

/// Bernoulli numbers B_2, B_4, ..., B_20.
const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

const STIRLING_MIN: f64 = 15.0;
const DIGAMMA_ASYMPTOTIC_MIN: f64 = 10.0;

/// ln Γ(1+ε) for |ε| ≤ 1/2.
fn ln_gamma_1p_series<T: Real>(eps: T) -> T {
    let mut sum = -T::lit(EULER_GAMMA) * eps;
    let mut power = eps;
    for &c in LN_GAMMA_TAYLOR.iter() {
        power = power * eps;
        let term = T::lit(c) * power;
        sum = sum + term;
        if term.abs() <= T::epsilon() * T::lit(1e-3) * sum.abs() {
            break;
        }
    }
    sum
}

fn ln_gamma_stirling<T: Real>(x: T) -> T {
    let half = T::lit(0.5);
    let half_ln_2pi = T::lit(0.918_938_533_204_672_741_780_329_736_4);
    let inv = x.recip();
    let inv2 = inv * inv;
    let mut corr = T::zero();
    let mut p = inv;
    for (k, &b) in BERNOULLI_EVEN.iter().enumerate() {
        let two_k = T::from_count(2 * (k + 1));
        let term = T::lit(b) / (two_k * (two_k - T::one())) * p;
        corr = corr + term;
        if term.abs() <= T::epsilon() * T::lit(1e-3) {
            break;
        }
        p = p * inv2;
    }
    (x - half) * x.ln() - x + half_ln_2pi + corr
}

fn ln_gamma_positive<T: Real>(x: T) -> T {
    let half = T::lit(0.5);
    let three_halves = T::lit(1.5);
    let five_halves = T::lit(2.5);
    if x < half {
        // Γ(x) = Γ(x+1)/x
        return ln_gamma_positive(x + T::one()) - x.ln();
    }
    if x <= three_halves {
        return ln_gamma_1p_series(x - T::one());
    }
    if x <= five_halves {
        let eps = x - T::lit(2.0);
        return eps.ln_1p() + ln_gamma_1p_series(eps);
    }
    if x < T::lit(STIRLING_MIN) {
        // shift down into (1.5, 2.5]; every factor is > 1 so nothing cancels
        let mut y = x;
        let mut prod = T::one();
        while y > five_halves {
            y = y - T::one();
            prod = prod * y;
        }
        let eps = y - T::lit(2.0);
        return prod.ln() + eps.ln_1p() + ln_gamma_1p_series(eps);
    }
    ln_gamma_stirling(x)
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::domain("ln_gamma", format!("x = {} must be finite and > 0", x)));
    }
    Ok(ln_gamma_positive(x))
}

/// True when `x` is exactly 0, -1, -2, ...
pub fn is_nonpositive_integer<T: Real>(x: T) -> bool {
    x <= T::zero() && x == x.round()
}

/// `(ln|Γ(x)|, sign Γ(x))` for any finite x that is not a pole.
///
/// Returns `None` at the poles x = 0, -1, -2, ...
pub fn ln_gamma_signed<T: Real>(x: T) -> Option<(T, T)> {
    if !x.is_finite() || is_nonpositive_integer(x) {
        return None;
    }
    if x > T::zero() {
        return Some((ln_gamma_positive(x), T::one()));
    }
    // Γ(x) = π / (sin(πx) Γ(1-x))
    let s = sin_pi(x);
    let ln_abs = T::PI().ln() - s.abs().ln() - ln_gamma_positive(T::one() - x);
    Some((ln_abs, s.signum()))
}

/// Γ(x) on the real line; signed infinity at the poles.
pub fn gamma<T: Real>(x: T) -> T {
    match ln_gamma_signed(x) {
        Some((l, s)) => s * l.exp(),
        None => {
            // sign of the approach from the right
            let n = (-x).to_i64().unwrap_or(0);
            if n % 2 == 0 {
                T::infinity()
            } else {
                T::neg_infinity()
            }
        }
    }
}

/// 1/Γ(x); an entire function, exactly zero at 0, -1, -2, ...
pub fn recip_gamma<T: Real>(x: T) -> T {
    match ln_gamma_signed(x) {
        Some((l, s)) => s * (-l).exp(),
        None if x.is_finite() => T::zero(),
        None => T::nan(),
    }
}

/// Digamma ψ(x) for x > 0.
pub fn digamma<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::domain("digamma", format!("x = {} must be finite and > 0", x)));
    }
    let mut y = x;
    let mut shift = T::zero();
    while y < T::lit(DIGAMMA_ASYMPTOTIC_MIN) {
        shift = shift + y.recip();
        y = y + T::one();
    }
    let inv = y.recip();
    let inv2 = inv * inv;
    let mut series = T::zero();
    let mut p = inv2;
    for (k, &b) in BERNOULLI_EVEN.iter().enumerate() {
        let term = T::lit(b) / T::from_count(2 * (k + 1)) * p;
        series = series + term;
        if term.abs() <= T::epsilon() * T::lit(1e-3) {
            break;
        }
        p = p * inv2;
    }
    Ok(y.ln() - T::lit(0.5) * inv - series - shift)
}

/// Rising factorial (x)_k = x (x+1) ... (x+k-1), as a running product.
pub fn pochhammer<T: Real>(x: T, k: usize) -> T {
    (0..k).fold(T::one(), |acc, j| acc * (x + T::from_count(j)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        if b == 0.0 {
            a.abs()
        } else {
            ((a - b) / b).abs()
        }
    }

    #[test]
    fn ln_gamma_fixed_points() {
        assert_eq!(ln_gamma(1.0f64).unwrap(), 0.0);
        assert_eq!(ln_gamma(2.0f64).unwrap(), 0.0);
        let half = ln_gamma(0.5f64).unwrap();
        assert!(rel(half, 0.5 * PI.ln()) < 1e-15, "{half}");
    }

    #[test]
    fn ln_gamma_recurrence_ladder() {
        // Γ(10.5) = Γ(0.5) * Π_{k=0}^{9} (k + 0.5)
        let ladder: f64 = (0..10).map(|k| (k as f64 + 0.5).ln()).sum::<f64>() + 0.5 * PI.ln();
        let got = ln_gamma(10.5f64).unwrap();
        assert!(rel(got, ladder) < 1e-14, "{got} vs {ladder}");
    }

    #[test]
    fn ln_gamma_matches_factorials() {
        let mut fact = 1.0f64;
        for n in 1..30u32 {
            // ln Γ(n+1) = ln n!
            fact *= n as f64;
            let got = ln_gamma(n as f64 + 1.0).unwrap();
            assert!(rel(got, fact.ln()) < 1e-14, "n={n}: {got} vs {}", fact.ln());
        }
    }

    #[test]
    fn ln_gamma_rejects_nonpositive() {
        assert!(matches!(ln_gamma(0.0f64), Err(Error::Domain { .. })));
        assert!(matches!(ln_gamma(-1.5f64), Err(Error::Domain { .. })));
        assert!(ln_gamma(f64::NAN).is_err());
    }

    #[test]
    fn recip_gamma_poles_are_zero() {
        assert_eq!(recip_gamma(1.0f64), 1.0);
        for n in 0..20 {
            assert_eq!(recip_gamma(-(n as f64)), 0.0);
        }
        // 1/Γ(-0.5) = -1/(2√π)
        let v = recip_gamma(-0.5f64);
        assert!(rel(v, -1.0 / (2.0 * PI.sqrt())) < 1e-14, "{v}");
    }

    #[test]
    fn gamma_signs_on_negative_axis() {
        assert!(gamma(-0.5f64) < 0.0);
        assert!(gamma(-1.5f64) > 0.0);
        assert!(gamma(-2.5f64) < 0.0);
        // Γ(-1.5) = 4√π/3
        assert!(rel(gamma(-1.5f64), 4.0 * PI.sqrt() / 3.0) < 1e-14);
        assert!(gamma(0.0f64).is_infinite());
    }

    #[test]
    fn digamma_known_values() {
        let c = EULER_GAMMA;
        assert!((digamma(1.0f64).unwrap() + c).abs() < 1e-14);
        let psi_half = -(c + 2.0 * 2f64.ln());
        assert!((digamma(0.5f64).unwrap() - psi_half).abs() < 1e-14);
        // ψ(3.5) = ψ(1/2) + 2(1 + 1/3 + 1/5)
        let expected = psi_half + 2.0 * (1.0 + 1.0 / 3.0 + 1.0 / 5.0);
        assert!((digamma(3.5f64).unwrap() - expected).abs() < 1e-13);
        assert!(digamma(0.0f64).is_err());
    }

    #[test]
    fn pochhammer_running_product() {
        assert_eq!(pochhammer(3.0f64, 0), 1.0);
        assert_eq!(pochhammer(3.0f64, 3), 60.0);
        assert_eq!(pochhammer(-2.0f64, 3), 0.0);
        assert_eq!(pochhammer(-2.0f64, 2), 2.0);
    }

    #[test]
    fn single_precision_instantiation() {
        let v = ln_gamma(4.0f32).unwrap();
        assert!((v - 6f32.ln()).abs() < 1e-6);
        assert!((digamma(1.0f32).unwrap() + EULER_GAMMA as f32).abs() < 1e-6);
    }
}
