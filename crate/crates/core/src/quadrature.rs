//! Adaptive 1D quadrature.
//!
//! Globally adaptive 21-point Gauss–Kronrod on finite intervals, a mapped
//! variant for `[a, ∞)`, and a tail integrator for slowly decaying
//! oscillatory integrands that sums half-period pieces and accelerates the
//! partial sums with Wynn's epsilon algorithm.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

// Kronrod abscissae, descending; the odd entries (index 1, 3, ...) are the
// 10-point Gauss nodes.
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
    0.123_491_976_262_065_851_077_958_109_831_074,
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

/// Integral value with its estimated absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

impl std::ops::Add for Estimate {
    type Output = Estimate;
    fn add(self, rhs: Estimate) -> Estimate {
        Estimate {
            value: self.value + rhs.value,
            error: self.error + rhs.error,
        }
    }
}

/// Tolerances and budget for the adaptive integrators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integrator {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for Integrator {
    fn default() -> Self {
        Integrator {
            abs_tol: 1e-13,
            rel_tol: 1e-12,
            max_subdivisions: 2000,
        }
    }
}

/// One Gauss–Kronrod panel on `[a, b]`.
pub fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Estimate {
    gk21_panel(f, a, b).0
}

/// Panel estimate together with its round-off floor `50 ε ∫|f|`.
fn gk21_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (Estimate, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[10];
    let mut gauss = 0.0;
    let mut abs_sum = kronrod.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let h = half.abs();
    let value = kronrod * half;
    let abs_sum = abs_sum * h;
    let asc = asc * h;
    let mut error = ((kronrod - gauss) * half).abs();
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * abs_sum;
    if abs_sum > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(floor);
    }
    (Estimate { value, error }, floor)
}

struct Panel {
    a: f64,
    b: f64,
    est: Estimate,
    floor: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.est.error == other.est.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.est.error.total_cmp(&other.est.error)
    }
}

impl Integrator {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Self {
        Integrator {
            abs_tol,
            rel_tol,
            ..Default::default()
        }
    }

    fn tolerance(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }

    /// Integrates `f` over `[a, b]`, bisecting the worst panel until the
    /// summed error estimate meets the tolerance.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> Result<Estimate> {
        if a == b {
            return Ok(Estimate { value: 0.0, error: 0.0 });
        }
        let (first, first_floor) = gk21_panel(&f, a, b);
        let mut total = first;
        let mut floor = first_floor;
        let mut heap = BinaryHeap::new();
        heap.push(Panel {
            a,
            b,
            est: first,
            floor: first_floor,
        });
        let mut subdivisions = 1;
        // stop once the error is down to the accumulated round-off floor
        while total.error > self.tolerance(total.value).max(2.0 * floor) {
            if !(total.value.is_finite() && total.error.is_finite()) || subdivisions >= self.max_subdivisions {
                return Err(Error::QuadratureNonConvergence {
                    estimate: total.error,
                    tolerance: self.tolerance(total.value),
                });
            }
            let worst = heap.pop().expect("heap holds at least one panel");
            let mid = 0.5 * (worst.a + worst.b);
            let (left, lf) = gk21_panel(&f, worst.a, mid);
            let (right, rf) = gk21_panel(&f, mid, worst.b);
            total.value += left.value + right.value - worst.est.value;
            total.error += left.error + right.error - worst.est.error;
            floor += lf + rf - worst.floor;
            heap.push(Panel {
                a: worst.a,
                b: mid,
                est: left,
                floor: lf,
            });
            heap.push(Panel {
                a: mid,
                b: worst.b,
                est: right,
                floor: rf,
            });
            subdivisions += 1;
            // re-sum occasionally to keep the running totals honest
            if subdivisions % 64 == 0 {
                total = heap.iter().fold(Estimate { value: 0.0, error: 0.0 }, |acc, p| acc + p.est);
                floor = heap.iter().map(|p| p.floor).sum();
            }
        }
        Ok(heap.iter().fold(Estimate { value: 0.0, error: 0.0 }, |acc, p| acc + p.est))
    }

    /// Integrates over `[a, b]` with interior breakpoints where the integrand
    /// is not smooth.
    pub fn integrate_with_breaks<F: Fn(f64) -> f64>(&self, f: F, points: &[f64]) -> Result<Estimate> {
        let mut total = Estimate { value: 0.0, error: 0.0 };
        for w in points.windows(2) {
            total = total + self.integrate(&f, w[0], w[1])?;
        }
        Ok(total)
    }

    /// Integrates over `[a, ∞)` through the map `x = a + t / (1 - t)`.
    pub fn integrate_to_infinity<F: Fn(f64) -> f64>(&self, f: F, a: f64) -> Result<Estimate> {
        let g = |t: f64| {
            if t >= 1.0 {
                return 0.0;
            }
            let s = 1.0 - t;
            let x = a + t / s;
            let v = f(x) / (s * s);
            if v.is_finite() {
                v
            } else {
                0.0
            }
        };
        self.integrate(g, 0.0, 1.0)
    }

    /// Integrates an oscillatory integrand over `[start, ∞)`.
    ///
    /// The range is cut into pieces of length `half_period`; their partial
    /// sums form an asymptotically alternating series that is extrapolated
    /// with the epsilon algorithm.
    pub fn integrate_oscillatory_tail<F: Fn(f64) -> f64>(
        &self,
        f: F,
        start: f64,
        half_period: f64,
        max_pieces: usize,
    ) -> Result<Estimate> {
        let mut partial = 0.0;
        let mut piece_error = 0.0;
        let mut sums = Vec::with_capacity(max_pieces);
        let mut previous: Option<f64> = None;
        let mut stable_hits = 0;
        for k in 0..max_pieces {
            let a = start + k as f64 * half_period;
            let piece = self.integrate(&f, a, a + half_period)?;
            partial += piece.value;
            piece_error += piece.error;
            sums.push(partial);
            if sums.len() < 5 {
                continue;
            }
            let extrapolated = wynn_epsilon(&sums);
            if let Some(prev) = previous {
                let change = (extrapolated - prev).abs();
                if change <= self.tolerance(extrapolated) {
                    stable_hits += 1;
                    if stable_hits >= 2 {
                        return Ok(Estimate {
                            value: extrapolated,
                            error: change + piece_error,
                        });
                    }
                } else {
                    stable_hits = 0;
                }
            }
            previous = Some(extrapolated);
        }
        let last = previous.unwrap_or(partial);
        Err(Error::QuadratureNonConvergence {
            estimate: (last - partial).abs(),
            tolerance: self.tolerance(last),
        })
    }
}

/// Wynn's epsilon algorithm applied to a sequence of partial sums; returns
/// the highest even-order estimate in the table.
pub fn wynn_epsilon(sums: &[f64]) -> f64 {
    let n = sums.len();
    if n == 0 {
        return 0.0;
    }
    // eps_{-1} = 0, eps_0 = sums
    let mut prev: Vec<f64> = vec![0.0; n + 1];
    let mut curr: Vec<f64> = sums.to_vec();
    let mut best = *sums.last().unwrap();
    let mut order = 0;
    while curr.len() > 1 {
        let mut next = Vec::with_capacity(curr.len() - 1);
        for i in 0..curr.len() - 1 {
            let diff = curr[i + 1] - curr[i];
            if diff == 0.0 {
                // converged column; stop here
                return curr[i + 1];
            }
            next.push(prev[i + 1] + 1.0 / diff);
        }
        order += 1;
        if order % 2 == 0 {
            if let Some(&v) = next.last() {
                if v.is_finite() {
                    best = v;
                }
            }
        }
        prev = curr;
        curr = next;
    }
    best
}
