//! Dormand–Prince 5(4) embedded pair with FSAL.

use crate::real::Real;

pub(super) type Vec3<T> = [T; 3];

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];

const A2: [f64; 1] = [1.0 / 5.0];
const A3: [f64; 2] = [3.0 / 40.0, 9.0 / 40.0];
const A4: [f64; 3] = [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0];
const A5: [f64; 4] = [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0];
const A6: [f64; 5] = [
    9017.0 / 3168.0,
    -355.0 / 33.0,
    46732.0 / 5247.0,
    49.0 / 176.0,
    -5103.0 / 18656.0,
];
/// Fifth-order weights (also the last stage row).
const B: [f64; 6] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
];
/// Fifth minus fourth-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

pub(super) const ORDER_EXPONENT: f64 = 1.0 / 5.0;

pub(super) struct StepOutcome<T> {
    pub y_new: Vec3<T>,
    pub k_new: Vec3<T>,
    /// RMS of the error estimate scaled by the mixed tolerance.
    pub err_norm: T,
}

fn combine<T: Real>(y: &Vec3<T>, h: T, ks: &[Vec3<T>], coeffs: &[f64]) -> Vec3<T> {
    let mut out = *y;
    for (k, &c) in ks.iter().zip(coeffs) {
        if c == 0.0 {
            continue;
        }
        let hc = h * T::lit(c);
        for i in 0..3 {
            out[i] = out[i] + hc * k[i];
        }
    }
    out
}

/// One trial step from (t, y) with first-stage slope `k1`.
pub(super) fn step<T: Real, F>(rhs: &F, t: T, y: &Vec3<T>, k1: Vec3<T>, h: T, rel_tol: T, abs_tol: T) -> StepOutcome<T>
where
    F: Fn(T, &Vec3<T>) -> Vec3<T>,
{
    let at = |i: usize| t + h * T::lit(C[i]);
    let k2 = rhs(at(1), &combine(y, h, &[k1], &A2));
    let k3 = rhs(at(2), &combine(y, h, &[k1, k2], &A3));
    let k4 = rhs(at(3), &combine(y, h, &[k1, k2, k3], &A4));
    let k5 = rhs(at(4), &combine(y, h, &[k1, k2, k3, k4], &A5));
    let k6 = rhs(at(5), &combine(y, h, &[k1, k2, k3, k4, k5], &A6));
    let y_new = combine(y, h, &[k1, k2, k3, k4, k5, k6], &B);
    let k7 = rhs(t + h, &y_new);

    let ks = [k1, k2, k3, k4, k5, k6, k7];
    let mut acc = T::zero();
    for i in 0..3 {
        let mut e = T::zero();
        for (k, &c) in ks.iter().zip(E.iter()) {
            e = e + T::lit(c) * k[i];
        }
        e = e * h;
        let scale = abs_tol + rel_tol * y[i].abs().max(y_new[i].abs());
        let r = e / scale;
        acc = acc + r * r;
    }
    StepOutcome {
        y_new,
        k_new: k7,
        err_norm: (acc / T::lit(3.0)).sqrt(),
    }
}
