//! Log-domain special functions used by the received-signal densities and
//! the error-probability bounds.
//!
//! The densities multiply modified Bessel values of astronomically large
//! magnitude by equally small exponentials, so everything here is evaluated
//! on a natural-log scale and only exponentiated at the very end.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::ops::{Div, Mul};
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Sign of a [`LogValue`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    fn product(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }
}

/// A real number stored as `sign * exp(ln_abs)`.
///
/// The magnitude is only meaningful when the sign is not [`Sign::Zero`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogValue {
    ln_abs: f64,
    sign: Sign,
}

impl LogValue {
    pub const ZERO: LogValue = LogValue {
        ln_abs: f64::NEG_INFINITY,
        sign: Sign::Zero,
    };

    pub const ONE: LogValue = LogValue {
        ln_abs: 0.0,
        sign: Sign::Positive,
    };

    /// Positive value `exp(ln_abs)`. A log-magnitude of `-inf` yields zero.
    pub fn from_ln(ln_abs: f64) -> Self {
        if ln_abs == f64::NEG_INFINITY {
            Self::ZERO
        } else {
            LogValue {
                ln_abs,
                sign: Sign::Positive,
            }
        }
    }

    pub fn from_value(value: f64) -> Self {
        if value == 0.0 {
            Self::ZERO
        } else {
            LogValue {
                ln_abs: value.abs().ln(),
                sign: if value > 0.0 { Sign::Positive } else { Sign::Negative },
            }
        }
    }

    /// Natural log of the magnitude; `-inf` for zero.
    pub fn ln_abs(&self) -> f64 {
        match self.sign {
            Sign::Zero => f64::NEG_INFINITY,
            _ => self.ln_abs,
        }
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn is_zero(&self) -> bool {
        self.sign == Sign::Zero
    }

    /// Linear value. Over- and underflow follow IEEE semantics.
    pub fn value(&self) -> f64 {
        match self.sign {
            Sign::Zero => 0.0,
            Sign::Positive => self.ln_abs.exp(),
            Sign::Negative => -self.ln_abs.exp(),
        }
    }

    /// `self^p` for a positive value.
    pub fn powf(self, p: f64) -> Self {
        match self.sign {
            Sign::Zero if p > 0.0 => Self::ZERO,
            Sign::Zero => Self::ONE,
            _ => LogValue {
                ln_abs: self.ln_abs * p,
                sign: Sign::Positive,
            },
        }
    }
}

impl Mul for LogValue {
    type Output = LogValue;

    fn mul(self, rhs: LogValue) -> LogValue {
        let sign = self.sign.product(rhs.sign);
        if sign == Sign::Zero {
            return LogValue::ZERO;
        }
        LogValue {
            ln_abs: self.ln_abs + rhs.ln_abs,
            sign,
        }
    }
}

impl Div for LogValue {
    type Output = LogValue;

    fn div(self, rhs: LogValue) -> LogValue {
        let inverse = match rhs.sign {
            Sign::Zero => LogValue {
                ln_abs: f64::INFINITY,
                sign: Sign::Positive,
            },
            s => LogValue {
                ln_abs: -rhs.ln_abs,
                sign: s,
            },
        };
        self * inverse
    }
}

impl fmt::Display for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Zero => write!(f, "0"),
            Sign::Positive => write!(f, "exp({})", self.ln_abs),
            Sign::Negative => write!(f, "-exp({})", self.ln_abs),
        }
    }
}

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Stirling series is used from this argument upward.
const STIRLING_MIN_X: f64 = 15.0;

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::domain("log_gamma", format!("x = {x} must be finite and > 0")));
    }
    if x >= STIRLING_MIN_X {
        return Ok(stirling(x));
    }
    // Shift upward: Γ(x) = Γ(x + m) / (x (x+1) ... (x+m-1)).
    let mut shifted = x;
    let mut product = 1.0;
    while shifted < STIRLING_MIN_X {
        product *= shifted;
        shifted += 1.0;
    }
    Ok(stirling(shifted) - product.ln())
}

fn stirling(x: f64) -> f64 {
    // Bernoulli-number coefficients B_{2k} / (2k (2k-1)).
    const COEFFS: [f64; 7] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360_360.0,
        1.0 / 156.0,
    ];
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut correction = 0.0;
    for c in COEFFS.iter().rev() {
        correction = correction * inv2 + c;
    }
    (x - 0.5) * x.ln() - x + HALF_LN_2PI + correction * inv
}

/// Below this argument `I_nu` is summed from its power series.
const SERIES_MAX_X: f64 = 30.0;
/// Orders at or above this use the uniform (Debye) expansion directly; lower
/// orders recur downward from it.
const DEBYE_MIN_ORDER: f64 = 50.0;
const DEBYE_TERMS: usize = 12;

/// `ln I_order(x)`, the modified Bessel function of the first kind.
pub fn log_bessel_i(order: f64, x: f64) -> Result<LogValue> {
    if !(order.is_finite() && order >= 0.0) {
        return Err(Error::domain(
            "log_bessel_i",
            format!("order = {order} must be finite and >= 0"),
        ));
    }
    if !(x.is_finite() && x >= 0.0) {
        return Err(Error::domain(
            "log_bessel_i",
            format!("x = {x} must be finite and >= 0"),
        ));
    }
    if x == 0.0 {
        return Ok(if order == 0.0 { LogValue::ONE } else { LogValue::ZERO });
    }
    let ln = if x <= SERIES_MAX_X {
        ln_bessel_series(order, x)?
    } else if order >= DEBYE_MIN_ORDER {
        ln_bessel_debye(order, x)
    } else {
        ln_bessel_recurred(order, x)
    };
    Ok(LogValue::from_ln(ln))
}

fn ln_bessel_series(order: f64, x: f64) -> Result<f64> {
    let quarter_x2 = 0.25 * x * x;
    let mut sum = 1.0;
    let mut term = 1.0;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= quarter_x2 / (k * (order + k));
        sum += term;
        // past the peak term and negligible
        if term < sum * 1e-17 && k * (order + k) > quarter_x2 {
            break;
        }
    }
    Ok(order * (0.5 * x).ln() - log_gamma(order + 1.0)? + sum.ln())
}

fn ln_bessel_debye(order: f64, x: f64) -> f64 {
    let z = x / order;
    let w = z.hypot(1.0);
    let t = 1.0 / w;
    let eta = w + (z / (1.0 + w)).ln();

    let polys = debye_polynomials();
    let inv_order = 1.0 / order;
    let mut sum = 0.0;
    let mut scale = 1.0;
    for poly in polys {
        sum += scale * eval_poly(poly, t);
        scale *= inv_order;
    }
    order * eta - 0.5 * (2.0 * PI * order).ln() - 0.5 * w.ln() + sum.ln()
}

fn ln_bessel_recurred(order: f64, x: f64) -> f64 {
    let steps = (DEBYE_MIN_ORDER - order).ceil().max(1.0) as u32;
    let top = order + f64::from(steps);
    let ln_top = ln_bessel_debye(top, x);
    // I_{top+1} / I_top, then I_{j-1} = (2j/x) I_j + I_{j+1} normalized by I_top.
    let mut upper = (ln_bessel_debye(top + 1.0, x) - ln_top).exp();
    let mut current = 1.0;
    for j in (1..=steps).rev() {
        let nu = order + f64::from(j);
        let lower = (2.0 * nu / x) * current + upper;
        upper = current;
        current = lower;
    }
    ln_top + current.ln()
}

fn eval_poly(coeffs: &[f64], t: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
}

/// Polynomials `u_k(t)` of the uniform asymptotic expansion, built from
/// `u_{k+1} = t²(1-t²)/2 · u_k' + 1/8 ∫₀ᵗ (1-5s²) u_k(s) ds`.
fn debye_polynomials() -> &'static [Vec<f64>] {
    static POLYS: OnceLock<Vec<Vec<f64>>> = OnceLock::new();
    POLYS.get_or_init(|| {
        let mut polys = vec![vec![1.0]];
        for _ in 1..DEBYE_TERMS {
            let prev = polys.last().unwrap();
            let mut next = vec![0.0; prev.len() + 3];
            for (i, &c) in prev.iter().enumerate().skip(1) {
                let d = c * i as f64;
                // derivative term d * t^(i-1) times (t² - t⁴) / 2
                next[i + 1] += 0.5 * d;
                next[i + 3] -= 0.5 * d;
            }
            for (i, &c) in prev.iter().enumerate() {
                next[i + 1] += 0.125 * c / (i + 1) as f64;
                next[i + 3] -= 0.625 * c / (i + 3) as f64;
            }
            while next.last() == Some(&0.0) {
                next.pop();
            }
            polys.push(next);
        }
        polys
    })
}

/// Switch from the series to the continued fraction for the upper tail.
const Q_CF_THRESHOLD: f64 = 2.5;

/// Standard normal tail probability `Q(x) = P(N(0,1) > x)`.
pub fn q_func(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x < 0.0 {
        return 1.0 - q_nonnegative(-x);
    }
    q_nonnegative(x)
}

/// `ln Q(x)`, finite far beyond the point where `Q(x)` underflows.
pub fn ln_q(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x < 0.0 {
        return (-q_nonnegative(-x)).ln_1p();
    }
    if x == f64::INFINITY {
        return f64::NEG_INFINITY;
    }
    if x <= Q_CF_THRESHOLD {
        q_series(x).ln()
    } else {
        ln_q_continued_fraction(x)
    }
}

fn q_nonnegative(x: f64) -> f64 {
    if x == f64::INFINITY {
        0.0
    } else if x <= Q_CF_THRESHOLD {
        q_series(x)
    } else {
        ln_q_continued_fraction(x).exp()
    }
}

/// `Q(x) = (1 - erf(x/√2)) / 2` with the positive-term series
/// `erf(y) = 2/√π e^{-y²} Σ (2y²)^k y / (2k+1)!!`.
fn q_series(x: f64) -> f64 {
    let y = x * FRAC_1_SQRT_2;
    let two_y2 = 2.0 * y * y;
    let mut term = y;
    let mut sum = y;
    let mut k = 0.0;
    while term > sum * 1e-17 {
        k += 1.0;
        term *= two_y2 / (2.0 * k + 1.0);
        sum += term;
    }
    let erf = 2.0 / PI.sqrt() * (-y * y).exp() * sum;
    0.5 - 0.5 * erf
}

/// Mills-ratio continued fraction `Q(x) = φ(x) / (x + 1/(x + 2/(x + 3/(x + …))))`,
/// evaluated with the modified Lentz method.
fn ln_q_continued_fraction(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for j in 1..10_000 {
        let a = f64::from(j);
        d = x + a * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = x + a / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    -0.5 * x * x - HALF_LN_2PI - f.ln()
}
