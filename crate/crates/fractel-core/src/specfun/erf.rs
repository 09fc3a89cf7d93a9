//! Error function to ~1e-14 absolute accuracy on the whole real line.

use crate::dd::Dd;
use std::f64::consts::PI;

/// erf(x). Total on finite reals; odd; |erf| < 1.
pub fn erf(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let ax = x.abs();
    let v = if ax < 3.0 {
        erf_series(ax)
    } else {
        1.0 - erfc_cf(ax)
    };
    if x < 0.0 {
        -v
    } else {
        v
    }
}

/// erfc(x) = 1 - erf(x), accurate in the far tail.
pub fn erfc(x: f64) -> f64 {
    if x < 3.0 {
        1.0 - erf(x)
    } else {
        erfc_cf(x)
    }
}

/// Maclaurin series in double-double; the alternating terms reach ~e^{x²}
/// before decaying, which f64 alone cannot absorb near x = 3.
fn erf_series(x: f64) -> f64 {
    let x2 = Dd::from_f64(x).mul(Dd::from_f64(x));
    let mut term = Dd::from_f64(x);
    let mut sum = term; // k = 0 contribution x/1
    for k in 1..200 {
        let kf = k as f64;
        term = term.mul(x2).div_f64(kf).neg();
        let contrib = term.div_f64(2.0 * kf + 1.0);
        sum = sum.add(contrib);
        if contrib.abs_hi() < 1e-20 * sum.abs_hi() {
            break;
        }
    }
    sum.hi * 2.0 / PI.sqrt()
}

/// Continued fraction for erfc, modified Lentz; fast for x ≥ 3.
fn erfc_cf(x: f64) -> f64 {
    let tiny = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for n in 1..2000 {
        let a = 0.5 * n as f64;
        d = x + a * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = x + a / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-x * x).exp() / (PI.sqrt() * f)
}
