//! Minimal double-double (~31 significant digits) arithmetic.
//!
//! The alternating series for E_{α,β}, J_ν and erf cancel far beyond what a
//! single f64 mantissa absorbs; summing in double-double keeps the certified
//! regions of those series useful. Only the operations the series need are
//! implemented.

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// Requires |a| >= |b|.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    /// ln 2 to double-double precision.
    pub const LN2: Dd = Dd {
        hi: 0.693_147_180_559_945_3,
        lo: 2.319_046_813_846_299_6e-17,
    };
    /// ln(2π)/2 to double-double precision.
    pub const HALF_LN_TWO_PI: Dd = Dd {
        hi: 0.918_938_533_204_672_8,
        lo: -3.878_294_158_067_241_4e-17,
    };

    #[inline]
    pub fn from_f64(a: f64) -> Dd {
        Dd { hi: a, lo: 0.0 }
    }

    #[inline]
    pub fn add(self, o: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, o.hi);
        let (t1, t2) = two_sum(self.lo, o.lo);
        let s2 = s2 + t1;
        let (s1, s2) = quick_two_sum(s1, s2);
        let s2 = s2 + t2;
        let (hi, lo) = quick_two_sum(s1, s2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn add_f64(self, o: f64) -> Dd {
        self.add(Dd::from_f64(o))
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    #[inline]
    pub fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    #[inline]
    pub fn sub_f64(self, o: f64) -> Dd {
        self.add_f64(-o)
    }

    #[inline]
    pub fn mul(self, o: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, o.hi);
        let p2 = p2 + self.hi * o.lo + self.lo * o.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, o: f64) -> Dd {
        let (p1, p2) = two_prod(self.hi, o);
        let p2 = p2 + self.lo * o;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self.sub(o.mul_f64(q1));
        let q2 = r.hi / o.hi;
        let r = r.sub(o.mul_f64(q2));
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add_f64(q3)
    }

    #[inline]
    pub fn div_f64(self, o: f64) -> Dd {
        self.div(Dd::from_f64(o))
    }

    #[inline]
    pub fn abs_hi(self) -> f64 {
        self.hi.abs()
    }

    /// Exact scaling by 2^k.
    fn scale2(self, k: i32) -> Dd {
        let f = (2.0f64).powi(k);
        Dd {
            hi: self.hi * f,
            lo: self.lo * f,
        }
    }

    pub fn exp(self) -> Dd {
        if self.hi < -745.0 {
            return Dd::ZERO;
        }
        if self.hi > 709.0 {
            return Dd::from_f64(f64::INFINITY);
        }
        let k = (self.hi / Dd::LN2.hi).round();
        let r = self.sub(Dd::LN2.mul_f64(k));
        let mut term = r;
        let mut sum = Dd::ONE.add(r);
        for n in 2..=30 {
            term = term.mul(r).div_f64(n as f64);
            sum = sum.add(term);
            if term.abs_hi() < 1e-35 * sum.abs_hi() {
                break;
            }
        }
        sum.scale2(k as i32)
    }

    /// Natural log for hi > 0, by one Newton refinement of the f64 value.
    pub fn ln(self) -> Dd {
        debug_assert!(self.hi > 0.0);
        let mut y = Dd::from_f64(self.hi.ln());
        for _ in 0..2 {
            // y <- y + x e^{-y} - 1
            y = y.add(self.mul(y.neg().exp())).sub_f64(1.0);
        }
        y
    }
}

/// Stirling coefficients B_{2n} / (2n (2n-1)) for the lnΓ asymptotic
/// series, kept as exact integer ratios; dividing them in double-double
/// keeps the series accurate past the f64 rounding of the quotients.
const STIRLING: [(f64, f64); 12] = [
    (1.0, 12.0),
    (-1.0, 360.0),
    (1.0, 1260.0),
    (-1.0, 1680.0),
    (1.0, 1188.0),
    (-691.0, 360_360.0),
    (1.0, 156.0),
    (-3617.0, 122_400.0),
    (43_867.0, 244_188.0),
    (-174_611.0, 125_400.0),
    (77_683.0, 5_796.0),
    (-236_364_091.0, 1_506_960.0),
];

/// lnΓ(x) for x > 0 in double-double, by upward recurrence to x ≥ 30 and
/// the Bernoulli-series Stirling expansion there.
pub fn dd_lgamma(x: Dd) -> Dd {
    debug_assert!(x.hi > 0.0);
    let shift = if x.hi < 30.0 {
        (30.0 - x.hi).ceil() as usize
    } else {
        0
    };
    let y = x.add_f64(shift as f64);
    let ln_y = y.ln();
    // (y - 1/2) ln y - y + ln(2π)/2
    let mut acc = y.sub_f64(0.5).mul(ln_y).sub(y).add(Dd::HALF_LN_TWO_PI);
    let inv_y2 = Dd::ONE.div(y.mul(y));
    let mut p = Dd::ONE.div(y);
    for (num, den) in STIRLING {
        acc = acc.add(p.mul_f64(num).div_f64(den));
        p = p.mul(inv_y2);
    }
    // remove the recurrence factors: lnΓ(x) = lnΓ(x+n) - Σ ln(x+i)
    for i in 0..shift {
        acc = acc.sub(x.add_f64(i as f64).ln());
    }
    acc
}

/// Γ(x) for x > 0 in double-double (via exp of lnΓ).
pub fn dd_gamma(x: Dd) -> Dd {
    dd_lgamma(x).exp()
}

/// Complex double-double, only what the Mittag-Leffler series needs.
#[derive(Clone, Copy, Debug, Default)]
pub struct CDd {
    pub re: Dd,
    pub im: Dd,
}

impl CDd {
    pub fn from_f64(re: f64, im: f64) -> CDd {
        CDd {
            re: Dd::from_f64(re),
            im: Dd::from_f64(im),
        }
    }

    #[inline]
    pub fn add(self, o: CDd) -> CDd {
        CDd {
            re: self.re.add(o.re),
            im: self.im.add(o.im),
        }
    }

    #[inline]
    pub fn mul(self, o: CDd) -> CDd {
        CDd {
            re: self.re.mul(o.re).sub(self.im.mul(o.im)),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    #[inline]
    pub fn div_dd(self, o: Dd) -> CDd {
        CDd {
            re: self.re.div(o),
            im: self.im.div(o),
        }
    }

    #[inline]
    pub fn abs_hi(self) -> f64 {
        self.re.hi.hypot(self.im.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_mul_keep_extra_digits() {
        // (1 + 1e-20) - 1 survives in double-double, vanishes in f64
        let x = Dd::ONE.add_f64(1e-20);
        let d = x.sub(Dd::ONE);
        assert!((d.hi - 1e-20).abs() < 1e-33);

        let third = Dd::ONE.div_f64(3.0);
        let one = third.mul_f64(3.0);
        assert!((one.sub(Dd::ONE)).abs_hi() < 1e-31);
    }

    #[test]
    fn exp_ln_roundtrip() {
        for &x in &[1e-3, 0.5, 1.0, 3.25, 10.0, 100.0] {
            let l = Dd::from_f64(x).ln();
            let back = l.exp();
            assert!(
                (back.sub(Dd::from_f64(x))).abs_hi() <= 1e-29 * x,
                "roundtrip failed at {x}"
            );
        }
    }

    #[test]
    fn lgamma_matches_known_values() {
        // Γ(1)=Γ(2)=1, Γ(5)=24, Γ(1/2)=√π
        assert!(dd_lgamma(Dd::ONE).abs_hi() < 1e-27);
        assert!(dd_lgamma(Dd::from_f64(2.0)).abs_hi() < 1e-27);
        assert!((dd_gamma(Dd::from_f64(5.0)).hi - 24.0).abs() < 1e-25);
        let g_half = dd_gamma(Dd::from_f64(0.5)).hi;
        assert!((g_half - std::f64::consts::PI.sqrt()).abs() < 1e-15);
    }
}

