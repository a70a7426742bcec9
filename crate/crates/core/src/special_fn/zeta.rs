use super::Complex;
use crate::{Error, Result};

/// Smallest real part accepted by [`zeta_complex`].
pub const ZETA_MIN_RE: f64 = 0.6;
/// Widest imaginary part accepted by [`zeta_complex`].
pub const ZETA_MAX_IM: f64 = 1e5;

// B_2k as exact rationals, k = 1..=20.
const BERNOULLI_2K: [(f64, f64); 20] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
    (-236364091.0, 2730.0),
    (8553103.0, 6.0),
    (-23749461029.0, 870.0),
    (8615841276005.0, 14322.0),
    (-7709321041217.0, 510.0),
    (2577687858367.0, 6.0),
    (-26315271553053477373.0, 1919190.0),
    (2929993913841559.0, 6.0),
    (-261082718496449122051.0, 13530.0),
];

/// Max number of Euler-Maclaurin correction terms available.
pub const MAX_CORRECTION_TERMS: usize = BERNOULLI_2K.len();

/// `B_2k / (2k)!` for k = 1..=20.
fn bernoulli_over_factorial() -> [f64; 20] {
    let mut out = [0.0; 20];
    let mut factorial = 1.0f64;
    for (k, &(num, den)) in BERNOULLI_2K.iter().enumerate() {
        let two_k = 2.0 * (k as f64 + 1.0);
        factorial *= (two_k - 1.0) * two_k;
        out[k] = num / den / factorial;
    }
    out
}

#[derive(Default)]
struct KahanSum {
    sum: Complex,
    carry: Complex,
}

impl KahanSum {
    fn add(&mut self, x: Complex) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }
}

/// `n^(-s)` for a positive integer `n`.
fn int_pow_neg(n: u64, s: Complex) -> Complex {
    let ln_n = (n as f64).ln();
    let modulus = (-s.re * ln_n).exp();
    let (sin, cos) = (s.im * ln_n).sin_cos();
    Complex::new(modulus * cos, -modulus * sin)
}

/// Euler-Maclaurin summation of zeta with an explicit direct-sum length
/// `n_terms` and up to `corrections` Bernoulli correction terms.
///
/// Corrections stop early once they fall below `1e-18` relative to the
/// running value. No domain checks: callers own the parameter choice.
pub fn zeta_euler_maclaurin(s: Complex, n_terms: u64, corrections: usize) -> Complex {
    let n_terms = n_terms.max(1);
    let corrections = corrections.min(MAX_CORRECTION_TERMS);

    let mut head = KahanSum::default();
    for n in (1..n_terms).rev() {
        head.add(int_pow_neg(n, s));
    }
    let n = n_terms as f64;
    let n_pow = int_pow_neg(n_terms, s);
    let mut total = head.sum + n_pow * 0.5 + n_pow * n / (s - 1.0);

    let coeffs = bernoulli_over_factorial();
    // rising = s (s+1) ... (s+2k-2),  power = N^(-s-2k+1)
    let mut rising = s;
    let mut power = n_pow / n;
    let inv_n2 = 1.0 / (n * n);
    for (k, &coef) in coeffs.iter().take(corrections).enumerate() {
        let term = rising * power * coef;
        total += term;
        if term.norm() < 1e-18 * total.norm().max(1.0) {
            break;
        }
        let kf = k as f64;
        rising *= (s + (2.0 * kf + 1.0)) * (s + (2.0 * kf + 2.0));
        power *= inv_n2;
    }
    total
}

/// Riemann zeta for `Re s >= 0.6`, `s != 1`, `|Im s| <= 1e5`.
pub fn zeta_complex(s: Complex) -> Result<Complex> {
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::domain("zeta_complex", format!("non-finite argument {s}")));
    }
    if s.re == 1.0 && s.im == 0.0 {
        return Err(Error::Pole {
            op: "zeta_complex",
            at: s.to_string(),
        });
    }
    if s.re < ZETA_MIN_RE || s.im.abs() > ZETA_MAX_IM {
        return Err(Error::domain(
            "zeta_complex",
            format!("{s} outside Re s >= {ZETA_MIN_RE}, |Im s| <= {ZETA_MAX_IM}"),
        ));
    }
    // |s + 2k| / (2 pi N) stays below ~1/3 for every correction used.
    let n_terms = 20 + s.norm().ceil() as u64;
    Ok(zeta_euler_maclaurin(s, n_terms, MAX_CORRECTION_TERMS))
}
