//! The two standard datasets: w(∞) against ΓT for several areas, and
//! against area for several dephasing rates.

use super::{run_sweep, FixedParam, SweepSpec, SweepVariable};
use crate::error::{Error, Result};

/// α values of the curves in the dephasing-rate figure.
pub const FIG1_ALPHAS: [f64; 6] = [0.5, 1.0, 1.5, 2.0, 2.5, 3.0];
/// ΓT values of the curves in the pulse-area figure.
pub const FIG2_GAMMA_TS: [f64; 6] = [0.01, 0.1, 0.2, 0.5, 1.0, 2.0];

pub const FIG1_RANGE: (f64, f64) = (0.0, 6.0);
pub const FIG2_RANGE: (f64, f64) = (0.0, 8.0);
pub const FIG1_POINTS: usize = 301;
pub const FIG2_POINTS: usize = 801;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Figure {
    Fig1,
    Fig2,
}

impl Figure {
    pub fn name(self) -> &'static str {
        match self {
            Figure::Fig1 => "fig1",
            Figure::Fig2 => "fig2",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "fig1" => Some(Figure::Fig1),
            "fig2" => Some(Figure::Fig2),
            _ => None,
        }
    }

    pub fn default_points(self) -> usize {
        match self {
            Figure::Fig1 => FIG1_POINTS,
            Figure::Fig2 => FIG2_POINTS,
        }
    }

    pub fn min_points(self) -> usize {
        match self {
            Figure::Fig1 => 300,
            Figure::Fig2 => 600,
        }
    }
}

/// A table with one abscissa column and one column per curve.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureData {
    pub figure: Figure,
    pub x_name: &'static str,
    /// Curve labels, e.g. `w_alpha_1` or `w_GammaT_0.5`.
    pub curve_names: Vec<String>,
    /// The parameter value of each curve.
    pub curve_params: Vec<f64>,
    pub x: Vec<f64>,
    /// `columns[c][i]` is curve c at `x[i]`.
    pub columns: Vec<Vec<f64>>,
}

impl FigureData {
    pub fn curve(&self, param: f64) -> Option<&[f64]> {
        self.curve_params
            .iter()
            .position(|&p| p == param)
            .map(|c| self.columns[c].as_slice())
    }
}

pub fn figure_data(figure: Figure, points: usize) -> Result<FigureData> {
    if points < figure.min_points() {
        return Err(Error::InvalidConfig(format!(
            "{} needs at least {} points, got {}",
            figure.name(),
            figure.min_points(),
            points
        )));
    }
    let (variable, range, params, x_name, label): (_, _, &[f64], _, _) = match figure {
        Figure::Fig1 => (SweepVariable::GammaT, FIG1_RANGE, &FIG1_ALPHAS, "GammaT", "alpha"),
        Figure::Fig2 => (
            SweepVariable::AreaOverPi,
            FIG2_RANGE,
            &FIG2_GAMMA_TS,
            "area_over_pi",
            "GammaT",
        ),
    };
    let mut x = Vec::new();
    let mut columns = Vec::with_capacity(params.len());
    for &q in params {
        let fixed = match figure {
            Figure::Fig1 => FixedParam::Alpha(q),
            Figure::Fig2 => FixedParam::GammaT(q),
        };
        let res = run_sweep(&SweepSpec::analytic(variable, range.0, range.1, points, fixed))?;
        if x.is_empty() {
            x = res.rows.iter().map(|r| r.x).collect();
        }
        let col = res
            .rows
            .iter()
            .map(|r| {
                r.w_analytic
                    .ok_or_else(|| Error::domain("figure_data", r.error.clone().unwrap_or_default()))
            })
            .collect::<Result<Vec<_>>>()?;
        columns.push(col);
    }
    Ok(FigureData {
        figure,
        x_name,
        curve_names: params.iter().map(|q| format!("w_{}_{}", label, q)).collect(),
        curve_params: params.to_vec(),
        x,
        columns,
    })
}

/// Interior local extrema of a sampled curve: (x, value, is_max).
pub fn sampled_extrema(x: &[f64], y: &[f64]) -> Vec<(f64, f64, bool)> {
    let mut out = Vec::new();
    for i in 1..y.len().saturating_sub(1) {
        let (a, b, c) = (y[i - 1], y[i], y[i + 1]);
        if b > a && b >= c {
            out.push((x[i], b, true));
        } else if b < a && b <= c {
            out.push((x[i], b, false));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_and_grid() {
        let d = figure_data(Figure::Fig2, FIG2_POINTS).unwrap();
        assert_eq!(d.columns.len(), 6);
        assert!(d.columns.iter().all(|c| c.len() == FIG2_POINTS));
        assert_eq!(d.x[0], 0.0);
        assert_eq!(*d.x.last().unwrap(), 8.0);
        assert_eq!(d.curve_names[4], "w_GammaT_1");
    }

    #[test]
    fn too_few_points() {
        assert!(figure_data(Figure::Fig1, 299).is_err());
    }

    #[test]
    fn extrema_of_sampled_cosine() {
        let x: Vec<f64> = (0..=400).map(|i| i as f64 * 0.01).collect();
        let y: Vec<f64> = x.iter().map(|&a| -(std::f64::consts::PI * a).cos()).collect();
        let e = sampled_extrema(&x, &y);
        assert_eq!(e.len(), 3);
        assert!(e[0].2 && (e[0].0 - 1.0).abs() < 1e-9);
        assert!(!e[1].2 && (e[1].0 - 2.0).abs() < 1e-9);
    }
}
