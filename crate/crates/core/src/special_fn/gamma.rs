//! Gamma function kernel: Lanczos (g = 7, n = 9) with reflection.

use std::f64::consts::PI;

const G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// sin(pi x), exactly zero at integers.
pub fn sinpi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    // reduce to [-1, 1)
    let mut y = x % 2.0;
    if y >= 1.0 {
        y -= 2.0;
    } else if y < -1.0 {
        y += 2.0;
    }
    if y == 0.0 || y == -1.0 {
        return 0.0;
    }
    // fold into [-1/2, 1/2]
    if y > 0.5 {
        y = 1.0 - y;
    } else if y < -0.5 {
        y = -1.0 - y;
    }
    (PI * y).sin()
}

/// True when `x` is zero or a negative integer (a pole of Gamma).
pub fn is_gamma_pole(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

fn lanczos_sum(z: f64) -> f64 {
    // z is the shifted argument x - 1
    let mut a = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (z + i as f64);
    }
    a
}

/// Gamma(x) for real x. Returns NaN at poles and +inf past the overflow point.
pub fn gamma(x: f64) -> f64 {
    if x.is_nan() || is_gamma_pole(x) {
        return f64::NAN;
    }
    if x < 0.5 {
        return PI / (sinpi(x) * gamma(1.0 - x));
    }
    if x > 171.7 {
        return f64::INFINITY;
    }
    if x == x.floor() && x <= 23.0 {
        // exact factorial
        let mut p = 1.0;
        let mut k = 2.0;
        while k < x {
            p *= k;
            k += 1.0;
        }
        return p;
    }
    if x >= 20.0 {
        // split the power so x^(x-1/2) does not overflow on its own
        let half = x.powf(0.5 * (x - 0.5));
        return (2.0 * PI).sqrt() * half * ((-x).exp() * half) * stirling_correction(x).exp();
    }
    let z = x - 1.0;
    let t = z + G + 0.5;
    t.powf(z + 0.5) * (-t).exp() * (2.0 * PI).sqrt() * lanczos_sum(z)
}

/// ln Γ(x) - [(x - 1/2) ln x - x + ln √(2π)], asymptotic in 1/x.
fn stirling_correction(x: f64) -> f64 {
    const B: [f64; 8] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360_360.0,
        1.0 / 156.0,
        -3617.0 / 122_400.0,
    ];
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut acc = 0.0;
    for b in B.iter().rev() {
        acc = acc * inv2 + b;
    }
    acc * inv
}

/// ln|Gamma(x)|. Returns +inf at poles.
pub fn ln_gamma(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if is_gamma_pole(x) {
        return f64::INFINITY;
    }
    if x < 0.5 {
        return (PI / sinpi(x).abs()).ln() - ln_gamma(1.0 - x);
    }
    if x == 1.0 || x == 2.0 {
        return 0.0;
    }
    if x < 10.0 {
        return gamma(x).ln();
    }
    if x >= 20.0 {
        return (x - 0.5) * x.ln() - x + LN_SQRT_2PI + stirling_correction(x);
    }
    let z = x - 1.0;
    let t = z + G + 0.5;
    LN_SQRT_2PI + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln()
}

/// 1/Gamma(x), zero at the poles.
pub fn rgamma(x: f64) -> f64 {
    if is_gamma_pole(x) {
        return 0.0;
    }
    if x > 171.0 {
        return (-ln_gamma(x)).exp();
    }
    if x < -170.0 {
        let (ln, sign) = ln_rgamma(x).expect("not a pole");
        return sign * ln.exp();
    }
    1.0 / gamma(x)
}

/// ln|1/Gamma(x)| together with the sign of 1/Gamma(x); `None` at the poles.
pub fn ln_rgamma(x: f64) -> Option<(f64, f64)> {
    if is_gamma_pole(x) {
        return None;
    }
    if x >= 0.5 {
        return Some((-ln_gamma(x), 1.0));
    }
    // 1/Gamma(x) = Gamma(1 - x) sin(pi x) / pi
    let s = sinpi(x);
    Some((ln_gamma(1.0 - x) + (s.abs() / PI).ln(), s.signum()))
}
