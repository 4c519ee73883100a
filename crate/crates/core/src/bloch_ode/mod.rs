//! Numerical integration of the Bloch equation with dephasing.
//!
//! This is the independent check on the closed forms in [`crate::analytic`]:
//! it integrates
//!
//! ```text
//! du/dt = -Γu - Δv
//! dv/dt =  Δu - Γv - Ωw
//! dw/dt =  Ωv
//! ```
//!
//! for any pulse envelope, with the resonant sech pulse as the built-in model.

mod dopri;

use crate::analytic::{BlochState, DimensionlessParams};
use crate::error::{Error, Result};
use crate::real::Real;

use dopri::Vec3;

/// Rabi frequency, detuning and dephasing rate at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseCoefficients<T> {
    pub omega: T,
    pub delta: T,
    pub gamma: T,
}

/// A time-dependent drive: Ω(t), Δ(t), Γ(t), plus the time unit that sets the window.
pub trait PulseShape<T: Real>: Sync {
    fn coefficients(&self, t: T) -> PulseCoefficients<T>;

    /// Characteristic width; the integration window is ±L times this.
    fn width(&self) -> T;
}

/// Resonant Ω₀ sech(t/T) pulse with constant dephasing rate Γ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SechPulseModel<T> {
    omega0: T,
    width: T,
    dephasing: T,
}

impl<T: Real> SechPulseModel<T> {
    pub fn new(omega0: T, width: T, dephasing: T) -> Result<Self> {
        if !(omega0 >= T::zero()) || !omega0.is_finite() {
            return Err(Error::InvalidConfig(format!("omega0 = {} must be >= 0", omega0)));
        }
        if !(width > T::zero()) || !width.is_finite() {
            return Err(Error::InvalidConfig(format!("pulse width = {} must be > 0", width)));
        }
        if !(dephasing >= T::zero()) || !dephasing.is_finite() {
            return Err(Error::InvalidConfig(format!("dephasing = {} must be >= 0", dephasing)));
        }
        Ok(Self {
            omega0,
            width,
            dephasing,
        })
    }

    /// Unit-width pulse realizing the given (α, γ).
    pub fn from_dimensionless(p: DimensionlessParams<T>) -> Self {
        Self {
            omega0: p.alpha(),
            width: T::one(),
            dephasing: p.gamma_t(),
        }
    }

    pub fn omega0(&self) -> T {
        self.omega0
    }

    pub fn dephasing(&self) -> T {
        self.dephasing
    }

    /// Pulse area π Ω₀ T.
    pub fn area(&self) -> T {
        T::PI() * self.omega0 * self.width
    }

    pub fn rabi(&self, t: T) -> T {
        self.omega0 / (t / self.width).cosh()
    }

    pub fn dimensionless(&self) -> DimensionlessParams<T> {
        DimensionlessParams::new(self.omega0 * self.width, self.dephasing * self.width * T::lit(0.5))
            .expect("validated on construction")
    }
}

impl<T: Real> PulseShape<T> for SechPulseModel<T> {
    fn coefficients(&self, t: T) -> PulseCoefficients<T> {
        PulseCoefficients {
            omega: self.rabi(t),
            delta: T::zero(),
            gamma: self.dephasing,
        }
    }

    fn width(&self) -> T {
        self.width
    }
}

/// Arbitrary drive given by a closure `t -> (Ω, Δ, Γ)`.
pub struct FnPulse<T, F> {
    f: F,
    width: T,
}

impl<T: Real, F> FnPulse<T, F>
where
    F: Fn(T) -> PulseCoefficients<T> + Sync,
{
    pub fn new(width: T, f: F) -> Self {
        Self { f, width }
    }
}

impl<T: Real, F> PulseShape<T> for FnPulse<T, F>
where
    F: Fn(T) -> PulseCoefficients<T> + Sync,
{
    fn coefficients(&self, t: T) -> PulseCoefficients<T> {
        (self.f)(t)
    }

    fn width(&self) -> T {
        self.width
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig<T> {
    pub rel_tol: T,
    pub abs_tol: T,
    /// Half-width L of the window [-L·T, L·T].
    pub window_halfwidth: T,
    pub max_steps: usize,
    /// Number of evenly spaced output samples, both endpoints included.
    pub sample_count: usize,
}

impl<T: Real> Default for IntegratorConfig<T> {
    fn default() -> Self {
        Self {
            rel_tol: T::lit(1e-10),
            abs_tol: T::lit(1e-12),
            window_halfwidth: T::lit(25.0),
            max_steps: 10_000_000,
            sample_count: 201,
        }
    }
}

impl<T: Real> IntegratorConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > T::zero()) || !(self.abs_tol > T::zero()) {
            return Err(Error::InvalidConfig("tolerances must be > 0".into()));
        }
        if !(self.window_halfwidth > T::zero()) || !self.window_halfwidth.is_finite() {
            return Err(Error::InvalidConfig("window half-width must be > 0".into()));
        }
        if self.sample_count < 2 {
            return Err(Error::InvalidConfig("sample_count must be >= 2".into()));
        }
        if self.max_steps == 0 {
            return Err(Error::InvalidConfig("max_steps must be >= 1".into()));
        }
        Ok(())
    }

    pub fn with_window(mut self, l: T) -> Self {
        self.window_halfwidth = l;
        self
    }

    pub fn with_rel_tol(mut self, rel_tol: T) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_samples(mut self, n: usize) -> Self {
        self.sample_count = n;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample<T> {
    pub t: T,
    pub state: BlochState<T>,
}

/// Time-ordered Bloch-vector samples.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T> {
    samples: Vec<Sample<T>>,
}

impl<T: Real> Trajectory<T> {
    /// Wraps samples that are already in strictly increasing time order.
    pub fn from_samples(samples: Vec<Sample<T>>) -> Self {
        debug_assert!(samples.windows(2).all(|w| w[0].t < w[1].t));
        Self { samples }
    }

    pub fn samples(&self) -> &[Sample<T>] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Sample<T>> {
        self.samples.iter()
    }

    pub fn first(&self) -> Option<&Sample<T>> {
        self.samples.first()
    }

    pub fn last(&self) -> Option<&Sample<T>> {
        self.samples.last()
    }

    /// Largest |u² + v² + w² - 1| over the samples.
    pub fn max_norm_defect(&self) -> T {
        self.iter()
            .map(|s| (s.state.norm_sq() - T::one()).abs())
            .fold(T::zero(), T::max)
    }

    pub fn max_abs_u(&self) -> T {
        self.iter().map(|s| s.state.u.abs()).fold(T::zero(), T::max)
    }
}

/// Right-hand side of the Bloch equation: (-Γu - Δv, Δu - Γv - Ωw, Ωv).
pub fn bloch_rhs<T: Real, S: PulseShape<T> + ?Sized>(state: BlochState<T>, t: T, shape: &S) -> BlochState<T> {
    let c = shape.coefficients(t);
    rhs_from(&state.to_array(), &c).into()
}

fn rhs_from<T: Real>(y: &Vec3<T>, c: &PulseCoefficients<T>) -> Vec3<T> {
    [
        -c.gamma * y[0] - c.delta * y[1],
        c.delta * y[0] - c.gamma * y[1] - c.omega * y[2],
        c.omega * y[1],
    ]
}

impl<T: Real> From<Vec3<T>> for BlochState<T> {
    fn from(a: Vec3<T>) -> Self {
        BlochState::from_array(a)
    }
}

const SAFETY: f64 = 0.9;
const MAX_GROWTH: f64 = 5.0;
const MIN_SHRINK: f64 = 0.2;

/// Integrates from the ground state over [-L·T, L·T].
pub fn integrate<T: Real, S: PulseShape<T> + ?Sized>(shape: &S, cfg: &IntegratorConfig<T>) -> Result<Trajectory<T>> {
    let l = cfg.window_halfwidth * shape.width();
    integrate_from(shape, cfg, BlochState::ground(), -l, l)
}

/// Integrates from `initial` at `t_start` to `t_end`, sampling `cfg.sample_count` points.
///
/// Steps are clipped to land exactly on every sample time, so samples carry
/// full integration accuracy.
pub fn integrate_from<T: Real, S: PulseShape<T> + ?Sized>(
    shape: &S,
    cfg: &IntegratorConfig<T>,
    initial: BlochState<T>,
    t_start: T,
    t_end: T,
) -> Result<Trajectory<T>> {
    cfg.validate()?;
    if !(t_end > t_start) {
        return Err(Error::InvalidConfig("t_end must exceed t_start".into()));
    }
    let rhs = |t: T, y: &Vec3<T>| rhs_from(y, &shape.coefficients(t));

    let n = cfg.sample_count;
    let span = t_end - t_start;
    let last = T::from_count(n - 1);
    let sample_time = |i: usize| {
        if i == n - 1 {
            t_end
        } else {
            t_start + span * T::from_count(i) / last
        }
    };

    let mut samples = Vec::with_capacity(n);
    let mut t = t_start;
    let mut y = initial.to_array();
    let mut k1 = rhs(t, &y);
    samples.push(Sample { t, state: initial });

    let mut h = (shape.width() * T::lit(1e-2)).min(span);
    let mut steps = 0usize;
    let expo = T::lit(dopri::ORDER_EXPONENT);

    for i in 1..n {
        let target = sample_time(i);
        while t < target {
            let remaining = target - t;
            let landing = h >= remaining * T::lit(0.999_999);
            let h_try = if landing { remaining } else { h };

            let floor = T::lit(16.0) * T::epsilon() * t.abs().max(shape.width());
            if h_try < floor && !landing {
                return Err(Error::StepUnderflow { t: t.as_f64() });
            }
            if steps >= cfg.max_steps {
                let s = BlochState::from_array(y);
                return Err(Error::StepLimit {
                    max_steps: cfg.max_steps,
                    t: t.as_f64(),
                    u: s.u.as_f64(),
                    v: s.v.as_f64(),
                    w: s.w.as_f64(),
                });
            }
            steps += 1;

            let out = dopri::step(&rhs, t, &y, k1, h_try, cfg.rel_tol, cfg.abs_tol);
            let err = out.err_norm;
            if !err.is_finite() {
                h = h_try * T::lit(MIN_SHRINK);
                continue;
            }
            let factor = if err == T::zero() {
                T::lit(MAX_GROWTH)
            } else {
                (T::lit(SAFETY) * err.powf(-expo))
                    .min(T::lit(MAX_GROWTH))
                    .max(T::lit(MIN_SHRINK))
            };
            if err <= T::one() {
                t = if landing { target } else { t + h_try };
                y = out.y_new;
                k1 = out.k_new;
                // a clipped landing step says nothing about the natural step size
                h = if landing { h.max(h_try * factor) } else { h_try * factor };
            } else {
                h = h_try * factor.min(T::one());
            }
        }
        samples.push(Sample {
            t,
            state: BlochState::from_array(y),
        });
    }
    Ok(Trajectory::from_samples(samples))
}

/// Inversion w at the right edge of the window, t = +L·T.
///
/// The sech tail beyond the window carries area ≈ 2α e^{-L}, so the
/// truncation bias is bounded by about 2πα e^{-L}. Only the endpoint is
/// sampled; `cfg.sample_count` is ignored here.
pub fn final_inversion<T: Real, S: PulseShape<T> + ?Sized>(shape: &S, cfg: &IntegratorConfig<T>) -> Result<T> {
    let cfg = IntegratorConfig {
        sample_count: 2,
        ..*cfg
    };
    let tr = integrate(shape, &cfg)?;
    Ok(tr.last().expect("at least two samples").state.w)
}
