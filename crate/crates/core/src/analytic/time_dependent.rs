//! Time-dependent hypergeometric solution w(t) = -F(α, -α; 1/2+γ; z(t)).

use crate::bloch_ode::{Sample, Trajectory};
use crate::error::{Error, Result};
use crate::real::{sin_pi, Real};
use crate::specfun::{hyp2f1_split, Hyp2F1Params};

use super::{BlochState, DimensionlessParams};

/// z = (tanh(t/T) + 1)/2 together with 1 - z, both to full relative precision.
pub fn z_of_t<T: Real>(t_over_t: T) -> (T, T) {
    let two = T::lit(2.0);
    if t_over_t >= T::zero() {
        let e = (-two * t_over_t).exp();
        (T::one() / (T::one() + e), e / (T::one() + e))
    } else {
        let e = (two * t_over_t).exp();
        (e / (T::one() + e), T::one() / (T::one() + e))
    }
}

fn check_time<T: Real>(op: &'static str, t_over_t: T) -> Result<()> {
    if t_over_t.is_nan() {
        return Err(Error::domain(op, "t/T is NaN"));
    }
    Ok(())
}

/// Inversion w(t) at time t (in units of the pulse width).
pub fn w_of_t<T: Real>(p: DimensionlessParams<T>, t_over_t: T) -> Result<T> {
    check_time("w_of_t", t_over_t)?;
    let (z, omz) = z_of_t(t_over_t);
    let f = hyp2f1_split(Hyp2F1Params::sech_family(p.alpha(), p.gamma()), z, omz)?;
    Ok(-f)
}

/// Coherence v(t) = √(z(1-z)) (α/ν) F(1+α, 1-α; ν+1; z), the sign fixed by dw/dt = Ω v.
pub fn v_of_t<T: Real>(p: DimensionlessParams<T>, t_over_t: T) -> Result<T> {
    check_time("v_of_t", t_over_t)?;
    let alpha = p.alpha();
    if alpha == T::zero() {
        return Ok(T::zero());
    }
    let (z, omz) = z_of_t(t_over_t);
    if z == T::zero() {
        return Ok(T::zero());
    }
    if omz == T::zero() {
        // without dephasing the Rabi circle ends at angle πα; otherwise coherences decay
        return Ok(if p.gamma() == T::zero() {
            sin_pi(alpha)
        } else {
            T::zero()
        });
    }
    let nu = p.nu();
    let shifted = Hyp2F1Params::new(T::one() + alpha, T::one() - alpha, nu + T::one());
    let f = hyp2f1_split(shifted, z, omz)?;
    Ok((z * omz).sqrt() * (alpha / nu) * f)
}

/// Full Bloch vector from the hypergeometric solution; u vanishes on resonance.
pub fn bloch_state_at<T: Real>(p: DimensionlessParams<T>, t_over_t: T) -> Result<BlochState<T>> {
    Ok(BlochState::new(T::zero(), v_of_t(p, t_over_t)?, w_of_t(p, t_over_t)?))
}

/// `samples` evenly spaced hypergeometric states on [-L, L] (times in units of T).
pub fn trajectory<T: Real>(p: DimensionlessParams<T>, window_halfwidth: T, samples: usize) -> Result<Trajectory<T>> {
    if samples < 2 || !(window_halfwidth > T::zero()) {
        return Err(Error::InvalidConfig(
            "trajectory needs >= 2 samples and a positive window".into(),
        ));
    }
    let span = window_halfwidth + window_halfwidth;
    let last = T::from_count(samples - 1);
    let points = (0..samples)
        .map(|i| {
            let t = -window_halfwidth + span * T::from_count(i) / last;
            bloch_state_at(p, t).map(|state| Sample { t, state })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Trajectory::from_samples(points))
}
