//! Parameter sweeps, node and extremum location, and envelope fits.

pub mod figures;
mod roots;

pub use roots::brent;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::analytic::{w_infinity, DimensionlessParams};
use crate::bloch_ode::{final_inversion, IntegratorConfig, SechPulseModel};
use crate::error::{Error, Result};
use crate::real::Real;

/// Absolute α tolerance handed to the root finder.
pub const ROOT_XTOL: f64 = 1e-12;

/// Central-difference step (in α) for locating extrema.
pub const EXTREMUM_FD_STEP: f64 = 1e-6;

/// Fewest extrema accepted by [`amplitude_envelope_fit`].
pub const MIN_FIT_POINTS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepVariable {
    /// γ = ΓT/2
    GammaDimensionless,
    /// ΓT
    GammaT,
    Alpha,
    /// A/π, numerically identical to α
    AreaOverPi,
}

impl SweepVariable {
    pub fn name(self) -> &'static str {
        match self {
            SweepVariable::GammaDimensionless => "gamma",
            SweepVariable::GammaT => "GammaT",
            SweepVariable::Alpha => "alpha",
            SweepVariable::AreaOverPi => "area_over_pi",
        }
    }

    fn sweeps_dephasing(self) -> bool {
        matches!(self, SweepVariable::GammaDimensionless | SweepVariable::GammaT)
    }
}

/// The parameter held constant during a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FixedParam<T> {
    Alpha(T),
    Gamma(T),
    GammaT(T),
}

impl<T: Real> FixedParam<T> {
    fn describe(&self) -> String {
        match self {
            FixedParam::Alpha(a) => format!("alpha={:e}", a.as_f64()),
            FixedParam::Gamma(g) => format!("gamma={:e}", g.as_f64()),
            FixedParam::GammaT(g) => format!("GammaT={:e}", g.as_f64()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Engine {
    Analytic,
    Ode,
    Both,
}

impl Engine {
    fn analytic(self) -> bool {
        matches!(self, Engine::Analytic | Engine::Both)
    }

    fn ode(self) -> bool {
        matches!(self, Engine::Ode | Engine::Both)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec<T> {
    pub variable: SweepVariable,
    pub start: T,
    pub stop: T,
    pub points: usize,
    pub fixed: FixedParam<T>,
    pub engine: Engine,
    pub integrator: IntegratorConfig<T>,
}

impl<T: Real> SweepSpec<T> {
    pub fn analytic(variable: SweepVariable, start: T, stop: T, points: usize, fixed: FixedParam<T>) -> Self {
        Self {
            variable,
            start,
            stop,
            points,
            fixed,
            engine: Engine::Analytic,
            integrator: IntegratorConfig::default(),
        }
    }

    pub fn with_engine(mut self, engine: Engine) -> Self {
        self.engine = engine;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.start < self.stop) || !self.start.is_finite() || !self.stop.is_finite() {
            return Err(Error::InvalidConfig("sweep needs finite start < stop".into()));
        }
        if self.points < 2 {
            return Err(Error::InvalidConfig("sweep needs at least 2 points".into()));
        }
        let fixed_ok = match self.fixed {
            FixedParam::Alpha(_) => self.variable.sweeps_dephasing(),
            FixedParam::Gamma(_) | FixedParam::GammaT(_) => !self.variable.sweeps_dephasing(),
        };
        if !fixed_ok {
            return Err(Error::InvalidConfig(format!(
                "fixed parameter {} does not complement swept variable {}",
                self.fixed.describe(),
                self.variable.name()
            )));
        }
        if self.engine.ode() {
            self.integrator.validate()?;
        }
        Ok(())
    }

    /// Grid value i of `points`, endpoints exact.
    pub fn grid_point(&self, i: usize) -> T {
        if i + 1 == self.points {
            return self.stop;
        }
        self.start + (self.stop - self.start) * T::from_count(i) / T::from_count(self.points - 1)
    }

    fn params_at(&self, x: T) -> Result<DimensionlessParams<T>> {
        let half = T::lit(0.5);
        match (self.variable, self.fixed) {
            (SweepVariable::GammaDimensionless, FixedParam::Alpha(a)) => DimensionlessParams::new(a, x),
            (SweepVariable::GammaT, FixedParam::Alpha(a)) => DimensionlessParams::new(a, x * half),
            (_, FixedParam::Gamma(g)) => DimensionlessParams::new(x, g),
            (_, FixedParam::GammaT(g)) => DimensionlessParams::new(x, g * half),
            _ => Err(Error::InvalidConfig("inconsistent sweep specification".into())),
        }
    }

    /// Stable hex digest of everything that determines the rows.
    pub fn fingerprint(&self) -> String {
        let c = &self.integrator;
        let canonical = format!(
            "v1;var={};start={:e};stop={:e};points={};{};engine={:?};rtol={:e};atol={:e};L={:e};max_steps={}",
            self.variable.name(),
            self.start.as_f64(),
            self.stop.as_f64(),
            self.points,
            self.fixed.describe(),
            self.engine,
            c.rel_tol.as_f64(),
            c.abs_tol.as_f64(),
            c.window_halfwidth.as_f64(),
            c.max_steps,
        );
        let digest = Sha256::digest(canonical.as_bytes());
        digest.iter().take(8).map(|b| format!("{:02x}", b)).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow<T> {
    pub x: T,
    pub w_analytic: Option<T>,
    pub w_ode: Option<T>,
    pub abs_diff: Option<T>,
    /// Set when an engine failed at this grid point.
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult<T> {
    pub spec: SweepSpec<T>,
    pub fingerprint: String,
    pub rows: Vec<SweepRow<T>>,
}

fn evaluate_row<T: Real>(spec: &SweepSpec<T>, x: T) -> SweepRow<T> {
    let mut row = SweepRow {
        x,
        w_analytic: None,
        w_ode: None,
        abs_diff: None,
        error: None,
    };
    let p = match spec.params_at(x) {
        Ok(p) => p,
        Err(e) => {
            row.error = Some(e.to_string());
            return row;
        }
    };
    if spec.engine.analytic() {
        row.w_analytic = Some(w_infinity(p));
    }
    if spec.engine.ode() {
        match final_inversion(&SechPulseModel::from_dimensionless(p), &spec.integrator) {
            Ok(w) => row.w_ode = Some(w),
            Err(e) => row.error = Some(e.to_string()),
        }
    }
    if let (Some(a), Some(o)) = (row.w_analytic, row.w_ode) {
        row.abs_diff = Some((a - o).abs());
    }
    row
}

/// Evaluates every grid point (in parallel) and returns rows in grid order.
pub fn run_sweep<T: Real>(spec: &SweepSpec<T>) -> Result<SweepResult<T>> {
    spec.validate()?;
    let rows = (0..spec.points)
        .into_par_iter()
        .map(|i| evaluate_row(spec, spec.grid_point(i)))
        .collect();
    Ok(SweepResult {
        spec: spec.clone(),
        fingerprint: spec.fingerprint(),
        rows,
    })
}

/// A located node or extremum in α.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootResult<T> {
    pub alpha_root: T,
    /// w at a node; dw/dα at an extremum.
    pub residual: T,
    pub bracket: (T, T),
}

fn check_gamma<T: Real>(op: &'static str, gamma: T) -> Result<()> {
    if !(gamma >= T::zero()) || !gamma.is_finite() {
        return Err(Error::domain(op, format!("gamma = {} must be finite and >= 0", gamma)));
    }
    Ok(())
}

/// Node of an arbitrary inversion model `w(α)` on (n+γ, n+1+γ).
pub fn find_node_with<T: Real, F: Fn(T) -> T>(w: F, n: u32, gamma: T) -> Result<RootResult<T>> {
    check_gamma("find_node", gamma)?;
    let lo = T::lit(n as f64) + gamma;
    let hi = lo + T::one();
    let (alpha_root, residual) = brent(&w, lo, hi, T::lit(ROOT_XTOL))?;
    Ok(RootResult {
        alpha_root,
        residual,
        bracket: (lo, hi),
    })
}

/// The n-th zero of w(∞) in α, expected at n + 1/2 + γ.
pub fn find_node<T: Real>(n: u32, gamma: T) -> Result<RootResult<T>> {
    find_node_with(|a| w_infinity(params_unchecked(a, gamma)), n, gamma)
}

/// Stationary point of an arbitrary inversion model on (n-1/2+γ, n+1/2+γ).
pub fn find_extremum_with<T: Real, F: Fn(T) -> T>(w: F, n: u32, gamma: T) -> Result<RootResult<T>> {
    check_gamma("find_extremum", gamma)?;
    if n == 0 {
        return Err(Error::domain("find_extremum", "n must be >= 1"));
    }
    let h = T::lit(EXTREMUM_FD_STEP);
    let slope = |a: T| (w(a + h) - w(a - h)) / (h + h);
    let lo = T::lit(n as f64 - 0.5) + gamma;
    let hi = lo + T::one();
    let (alpha_root, residual) = brent(slope, lo, hi, T::lit(ROOT_XTOL))?;
    Ok(RootResult {
        alpha_root,
        residual,
        bracket: (lo, hi),
    })
}

/// The n-th extremum of w(∞) in α, near n + γ for small γ.
pub fn find_extremum<T: Real>(n: u32, gamma: T) -> Result<RootResult<T>> {
    find_extremum_with(|a| w_infinity(params_unchecked(a, gamma)), n, gamma)
}

fn params_unchecked<T: Real>(alpha: T, gamma: T) -> DimensionlessParams<T> {
    // the finite-difference stencil may step a hair below α = 0
    DimensionlessParams::new(alpha.max(T::zero()), gamma).expect("gamma checked by caller")
}

/// Least-squares slope of ln|w(extremum)| against ln α over extrema n_lo..=n_hi.
///
/// The large-area envelope predicts -2γ.
pub fn amplitude_envelope_fit<T: Real>(gamma: T, n_range: (u32, u32)) -> Result<T> {
    amplitude_envelope_fit_with(|a| w_infinity(params_unchecked(a, gamma)), gamma, n_range)
}

/// [`amplitude_envelope_fit`] for an arbitrary inversion model `w(α)` at fixed γ.
pub fn amplitude_envelope_fit_with<T: Real, F: Fn(T) -> T>(w: F, gamma: T, n_range: (u32, u32)) -> Result<T> {
    if !(gamma > T::zero()) || !gamma.is_finite() {
        return Err(Error::domain("amplitude_envelope_fit", "gamma must be > 0"));
    }
    let (n_lo, n_hi) = n_range;
    let floor = T::lit(10.0) * gamma.max(T::one());
    if T::lit(n_lo as f64) < floor {
        return Err(Error::domain(
            "amplitude_envelope_fit",
            format!("lower extremum index {} below large-area bound {}", n_lo, floor),
        ));
    }
    let count = if n_hi >= n_lo { (n_hi - n_lo + 1) as usize } else { 0 };
    if count < MIN_FIT_POINTS {
        return Err(Error::InsufficientPoints {
            found: count,
            required: MIN_FIT_POINTS,
        });
    }
    let points = (n_lo..=n_hi)
        .map(|n| {
            let ext = find_extremum_with(&w, n, gamma)?;
            Ok((ext.alpha_root.ln(), w(ext.alpha_root).abs().ln()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(least_squares_slope(&points))
}

fn least_squares_slope<T: Real>(points: &[(T, T)]) -> T {
    let n = T::from_count(points.len());
    let mean_x = points.iter().fold(T::zero(), |s, p| s + p.0) / n;
    let mean_y = points.iter().fold(T::zero(), |s, p| s + p.1) / n;
    let (sxy, sxx) = points.iter().fold((T::zero(), T::zero()), |(sxy, sxx), &(x, y)| {
        let dx = x - mean_x;
        (sxy + dx * (y - mean_y), sxx + dx * dx)
    });
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_examples() {
        let r = find_node(0, 0.0f64).unwrap();
        assert!((r.alpha_root - 0.5).abs() < 1e-9);
        let r = find_node(0, 0.5f64).unwrap();
        assert!((r.alpha_root - 1.0).abs() < 1e-9);
        let r = find_node(2, 0.2f64).unwrap();
        assert!((r.alpha_root - 2.7).abs() < 1e-9);
        assert!(r.residual.abs() <= 1e-10);
        assert_eq!(r.bracket, (2.2, 3.2));
    }

    #[test]
    fn extremum_coherent() {
        let r = find_extremum(1, 0.0f64).unwrap();
        assert!((r.alpha_root - 1.0).abs() < 1e-8, "{}", r.alpha_root);
        assert!(r.residual.abs() < 1e-6);
        assert!(find_extremum(0, 0.1f64).is_err());
    }

    #[test]
    fn least_squares_exact_line() {
        let pts: Vec<(f64, f64)> = (0..5).map(|i| (i as f64, 3.0 - 0.5 * i as f64)).collect();
        assert!((least_squares_slope(&pts) + 0.5).abs() < 1e-15);
    }

    #[test]
    fn envelope_fit_guards() {
        assert!(amplitude_envelope_fit(0.0f64, (20, 60)).is_err());
        assert!(matches!(
            amplitude_envelope_fit(0.5f64, (5, 60)),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            amplitude_envelope_fit(0.5f64, (20, 22)),
            Err(Error::InsufficientPoints { found: 3, .. })
        ));
    }

    #[test]
    fn spec_validation() {
        let good = SweepSpec::analytic(SweepVariable::Alpha, 0.0f64, 8.0, 11, FixedParam::GammaT(1.0));
        assert!(good.validate().is_ok());
        let mismatched = SweepSpec::analytic(SweepVariable::Alpha, 0.0f64, 8.0, 11, FixedParam::Alpha(1.0));
        assert!(mismatched.validate().is_err());
        let reversed = SweepSpec::analytic(SweepVariable::GammaT, 3.0f64, 0.0, 11, FixedParam::Alpha(1.0));
        assert!(reversed.validate().is_err());
        let single = SweepSpec::analytic(SweepVariable::GammaT, 0.0f64, 1.0, 1, FixedParam::Alpha(1.0));
        assert!(single.validate().is_err());
    }

    #[test]
    fn fingerprint_tracks_inputs() {
        let a = SweepSpec::analytic(SweepVariable::Alpha, 0.0f64, 8.0, 11, FixedParam::GammaT(1.0));
        let mut b = a.clone();
        assert_eq!(a.fingerprint(), b.fingerprint());
        b.points = 12;
        assert_ne!(a.fingerprint(), b.fingerprint());
        assert_eq!(a.fingerprint().len(), 16);
    }

    #[test]
    fn negative_grid_point_is_row_error() {
        let spec = SweepSpec::analytic(SweepVariable::Alpha, -1.0f64, 1.0, 3, FixedParam::Gamma(0.1));
        let res = run_sweep(&spec).unwrap();
        assert!(res.rows[0].error.is_some() && res.rows[0].w_analytic.is_none());
        assert!(res.rows[1].error.is_none() && res.rows[1].w_analytic == Some(-1.0));
    }
}
