//! Gauss hypergeometric function F(λ, μ; ν; z) on 0 ≤ z ≤ 1.

use super::gamma::ln_gamma_signed;
use crate::error::{Error, Result};
use crate::real::{dist_to_nonpositive_integer, Real};

/// Largest number of terms the direct series may use.
pub const MAX_SERIES_TERMS: usize = 1_000_000;

/// Above this z the direct series is replaced by the z → 1-z transformation.
const DIRECT_SERIES_MAX_Z: f64 = 0.75;

/// ν - λ - μ closer than this to an integer makes the transformation degenerate.
const DEGENERATE_EXPONENT: f64 = 1e-6;

/// ν closer than this to 0, -1, -2, ... is rejected.
const NU_POLE_GUARD: f64 = 1e-12;

/// Step of the symmetric ν-perturbation used when the transformation is degenerate.
const NU_SHIFT: f64 = 1e-3;

/// Parameters (λ, μ; ν) of F(λ, μ; ν; z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyp2F1Params<T> {
    pub lambda: T,
    pub mu: T,
    pub nu: T,
}

impl<T: Real> Hyp2F1Params<T> {
    pub fn new(lambda: T, mu: T, nu: T) -> Self {
        Self { lambda, mu, nu }
    }

    /// The family F(α, -α; 1/2 + γ; z) governing the sech-pulse inversion.
    pub fn sech_family(alpha: T, gamma: T) -> Self {
        Self::new(alpha, -alpha, T::lit(0.5) + gamma)
    }

    /// ν - λ - μ; the exponent controlling behaviour at z = 1.
    pub fn excess(&self) -> T {
        self.nu - self.lambda - self.mu
    }

    fn with_nu(self, nu: T) -> Self {
        Self { nu, ..self }
    }
}

/// Π Γ(num) / Π Γ(den); zero when a denominator argument sits on a pole.
fn gamma_ratio<T: Real>(num: &[T], den: &[T]) -> T {
    let mut ln = T::zero();
    let mut sign = T::one();
    for &x in num {
        match ln_gamma_signed(x) {
            Some((l, s)) => {
                ln = ln + l;
                sign = sign * s;
            }
            None => return T::infinity(),
        }
    }
    for &x in den {
        match ln_gamma_signed(x) {
            Some((l, s)) => {
                ln = ln - l;
                sign = sign * s;
            }
            None => return T::zero(),
        }
    }
    sign * ln.exp()
}

/// Plain power series, stopped once terms drop below machine precision.
fn direct_series<T: Real>(a: T, b: T, c: T, z: T, max_terms: usize) -> Result<T> {
    let k_min = a.abs().max(b.abs()).max(c.abs()).ceil().to_usize().unwrap_or(0) + 1;
    let tol = T::epsilon() * T::lit(0.5);
    let mut term = T::one();
    let mut sum = T::one();
    if z == T::zero() {
        return Ok(sum);
    }
    for k in 0..max_terms {
        let kf = T::from_count(k);
        term = term * (a + kf) * (b + kf) / ((c + kf) * (kf + T::one())) * z;
        sum = sum + term;
        if term == T::zero() {
            return Ok(sum);
        }
        if k + 1 >= k_min && term.abs() < tol * sum.abs().max(T::one()) {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        op: "hyp2f1",
        terms: max_terms,
    })
}

/// Linear transformation z → 1-z; requires ν - λ - μ away from the integers.
fn transformed<T: Real>(p: Hyp2F1Params<T>, one_minus_z: T) -> Result<T> {
    let (a, b, c) = (p.lambda, p.mu, p.nu);
    let d = p.excess();
    let a1 = gamma_ratio(&[c, d], &[c - a, c - b]);
    let a2 = gamma_ratio(&[c, -d], &[a, b]);
    let mut out = T::zero();
    if a1 != T::zero() {
        out = out + a1 * direct_series(a, b, T::one() - d, one_minus_z, MAX_SERIES_TERMS)?;
    }
    if a2 != T::zero() && one_minus_z != T::zero() {
        let f2 = direct_series(c - a, c - b, d + T::one(), one_minus_z, MAX_SERIES_TERMS)?;
        out = out + a2 * one_minus_z.powf(d) * f2;
    }
    Ok(out)
}

/// Degenerate-exponent limit: Richardson-extrapolated average over ν ± h.
fn symmetric_limit<T: Real>(p: Hyp2F1Params<T>, one_minus_z: T) -> Result<T> {
    let avg = |h: T| -> Result<T> {
        let up = transformed(p.with_nu(p.nu + h), one_minus_z)?;
        let down = transformed(p.with_nu(p.nu - h), one_minus_z)?;
        Ok((up + down) * T::lit(0.5))
    };
    let h = T::lit(NU_SHIFT);
    let coarse = avg(h)?;
    let fine = avg(h * T::lit(0.5))?;
    Ok((T::lit(4.0) * fine - coarse) / T::lit(3.0))
}

fn check_nu<T: Real>(p: &Hyp2F1Params<T>, op: &'static str) -> Result<()> {
    if !p.nu.is_finite() || dist_to_nonpositive_integer(p.nu) < T::lit(NU_POLE_GUARD) {
        return Err(Error::domain(
            op,
            format!("nu = {} at or near a nonpositive integer", p.nu),
        ));
    }
    Ok(())
}

/// Gauss summation F(λ, μ; ν; 1) = Γ(ν)Γ(ν-λ-μ) / (Γ(ν-λ)Γ(ν-μ)).
///
/// Denominator gammas at poles contribute an exact zero.
pub fn hyp2f1_at_unity<T: Real>(p: Hyp2F1Params<T>) -> Result<T> {
    check_nu(&p, "hyp2f1_at_unity")?;
    let d = p.excess();
    if !(d > T::zero()) {
        return Err(Error::domain(
            "hyp2f1_at_unity",
            format!("nu - lambda - mu = {} must be > 0", d),
        ));
    }
    Ok(gamma_ratio(&[p.nu, d], &[p.nu - p.lambda, p.nu - p.mu]))
}

/// F(λ, μ; ν; z) for 0 ≤ z ≤ 1.
pub fn hyp2f1<T: Real>(p: Hyp2F1Params<T>, z: T) -> Result<T> {
    hyp2f1_split(p, z, T::one() - z)
}

/// As [`hyp2f1`], with 1-z supplied separately so it keeps full precision
/// when z is within rounding of 1.
pub fn hyp2f1_split<T: Real>(p: Hyp2F1Params<T>, z: T, one_minus_z: T) -> Result<T> {
    if !(z >= T::zero() && z <= T::one()) || !(one_minus_z >= T::zero()) {
        return Err(Error::domain("hyp2f1", format!("z = {} outside [0, 1]", z)));
    }
    check_nu(&p, "hyp2f1")?;
    if z == T::zero() {
        return Ok(T::one());
    }
    if one_minus_z == T::zero() {
        return hyp2f1_at_unity(p);
    }
    if z <= T::lit(DIRECT_SERIES_MAX_Z) {
        return direct_series(p.lambda, p.mu, p.nu, z, MAX_SERIES_TERMS);
    }
    let d = p.excess();
    if (d - d.round()).abs() > T::lit(DEGENERATE_EXPONENT) {
        return transformed(p, one_minus_z);
    }
    match direct_series(p.lambda, p.mu, p.nu, z, MAX_SERIES_TERMS) {
        Err(Error::NonConvergence { .. }) => symmetric_limit(p, one_minus_z),
        other => other,
    }
}
