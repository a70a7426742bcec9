use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::{Error, Result};

/// Default evaluation budget for [`integrate_adaptive`].
pub const DEFAULT_MAX_EVALUATIONS: usize = 21 * 4000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    /// Absolute error estimate, never negative.
    pub error_estimate: f64,
    pub evaluations: usize,
}

// 21-point Gauss-Kronrod rule. Gauss nodes are the odd entries of XGK.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_600_525_478_188,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// One GK21 panel with the QUADPACK error heuristic.
fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Segment {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = fc * WGK[10];
    let mut abs_k = kronrod.abs();
    let mut gauss = 0.0;
    let mut fv = [(0.0, 0.0); 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let (f1, f2) = (f(center - dx), f(center + dx));
        fv[j] = (f1, f2);
        kronrod += WGK[j] * (f1 + f2);
        abs_k += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        asc += WGK[j] * ((fv[j].0 - mean).abs() + (fv[j].1 - mean).abs());
    }
    let value = kronrod * half;
    let abs_k = abs_k * half.abs();
    let asc = asc * half.abs();
    let mut error = ((kronrod - gauss) * half).abs();
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    // Rounding floor: the panel sum itself carries this much noise.
    error = error.max(50.0 * f64::EPSILON * abs_k);
    Segment {
        lo,
        hi,
        value,
        error,
    }
}

/// Globally adaptive GK21 over consecutive intervals of `points`.
///
/// `points` must be finite and nondecreasing; integrands with kinks or jumps
/// should list them here so no panel straddles one.
pub fn integrate_piecewise<F: Fn(f64) -> f64>(
    f: F,
    points: &[f64],
    tol: f64,
    max_evaluations: usize,
) -> Result<QuadratureResult> {
    if !(tol > 0.0) {
        return Err(Error::domain("integrate_adaptive", "tol must be positive"));
    }
    if points.len() < 2 || points.iter().any(|p| !p.is_finite()) {
        return Err(Error::domain(
            "integrate_adaptive",
            "need at least two finite breakpoints",
        ));
    }
    if points.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::domain("integrate_adaptive", "breakpoints must be sorted"));
    }

    let mut heap = BinaryHeap::new();
    let mut evaluations = 0;
    for w in points.windows(2) {
        if w[0] < w[1] {
            heap.push(gauss_kronrod(&f, w[0], w[1]));
            evaluations += 21;
        }
    }
    let totals = |heap: &BinaryHeap<Segment>| {
        heap.iter()
            .fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error))
    };

    loop {
        let (value, error) = totals(&heap);
        if !value.is_finite() {
            return Err(Error::Accuracy {
                quantity: "integrate_adaptive".into(),
                tol,
                estimate: value,
                error: f64::INFINITY,
            });
        }
        if error <= tol {
            return Ok(QuadratureResult {
                value,
                error_estimate: error,
                evaluations,
            });
        }
        let worst = match heap.peek() {
            Some(s) => *s,
            None => {
                return Ok(QuadratureResult {
                    value: 0.0,
                    error_estimate: 0.0,
                    evaluations,
                })
            }
        };
        let mid = 0.5 * (worst.lo + worst.hi);
        if evaluations + 42 > max_evaluations || mid <= worst.lo || mid >= worst.hi {
            return Err(Error::Accuracy {
                quantity: "integrate_adaptive".into(),
                tol,
                estimate: value,
                error,
            });
        }
        heap.pop();
        heap.push(gauss_kronrod(&f, worst.lo, mid));
        heap.push(gauss_kronrod(&f, mid, worst.hi));
        evaluations += 42;
    }
}

/// Integrate `f` over `[a, b]` to absolute tolerance `tol`.
///
/// `b` may be `f64::INFINITY`; the half-line is mapped onto `[0, 1)` with
/// `x = a + t / (1 - t)`. Interior breakpoints go through
/// [`integrate_piecewise`] instead.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<QuadratureResult> {
    if !a.is_finite() || b.is_nan() || b == f64::NEG_INFINITY || b < a {
        return Err(Error::domain(
            "integrate_adaptive",
            format!("bad interval [{a}, {b}]"),
        ));
    }
    if b == f64::INFINITY {
        let mapped = |t: f64| {
            let s = 1.0 - t;
            f(a + t / s) / (s * s)
        };
        integrate_piecewise(mapped, &[0.0, 1.0], tol, DEFAULT_MAX_EVALUATIONS)
    } else {
        integrate_piecewise(f, &[a, b], tol, DEFAULT_MAX_EVALUATIONS)
    }
}
