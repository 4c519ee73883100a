//! Bracketing root finder (Brent's method).

use crate::error::{Error, Result};
use crate::real::Real;

const MAX_ITER: usize = 200;

/// Root of `f` on `[lo, hi]`; `f(lo)` and `f(hi)` must differ in sign.
///
/// Returns `(root, f(root))`. Converges when the bracket is narrower than
/// `xtol` (plus a few ulps of the root) or `f` hits zero exactly.
pub fn brent<T: Real, F: Fn(T) -> T>(f: F, lo: T, hi: T, xtol: T) -> Result<(T, T)> {
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == T::zero() {
        return Ok((a, fa));
    }
    if fb == T::zero() {
        return Ok((b, fb));
    }
    if !(fa.signum() != fb.signum()) || fa.is_nan() || fb.is_nan() {
        return Err(Error::Bracket {
            lo: lo.as_f64(),
            hi: hi.as_f64(),
            f_lo: fa.as_f64(),
            f_hi: fb.as_f64(),
        });
    }
    let two = T::lit(2.0);
    let half = T::lit(0.5);
    let (mut c, mut fc) = (b, fb);
    let (mut d, mut e) = (b - a, b - a);

    for _ in 0..MAX_ITER {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = two * T::epsilon() * b.abs() + half * xtol;
        let m = half * (c - b);
        if m.abs() <= tol || fb == T::zero() {
            return Ok((b, fb));
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            // inverse quadratic interpolation, or secant when a == c
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = two * m * s;
                q = T::one() - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (two * m * qa * (qa - r) - (b - a) * (r - T::one()));
                q = (qa - T::one()) * (r - T::one()) * (s - T::one());
            }
            if p > T::zero() {
                q = -q;
            } else {
                p = -p;
            }
            let min1 = T::lit(3.0) * m * q - (tol * q).abs();
            let min2 = (e * q).abs();
            if two * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = d;
            }
        } else {
            d = m;
            e = d;
        }
        a = b;
        fa = fb;
        b = if d.abs() > tol { b + d } else { b + tol * m.signum() };
        fb = f(b);
    }
    Err(Error::NonConvergence {
        op: "brent",
        terms: MAX_ITER,
    })
}
