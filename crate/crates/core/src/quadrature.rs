//! Globally adaptive 21-point Gauss–Kronrod quadrature for vector-valued
//! integrands.
//!
//! All components share the same abscissae, so one evaluation of an
//! expensive kernel feeds every entry. The interval with the largest error
//! estimate is bisected until the summed error falls under the target.

#![allow(clippy::needless_range_loop)]

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

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
    0.123_491_976_262_065_851_077_208_814_576_040,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub relative: f64,
    pub absolute: f64,
    pub max_evaluations: usize,
}

impl Tolerance {
    pub fn relative(relative: f64) -> Self {
        Self {
            relative,
            absolute: 0.0,
            max_evaluations: 2_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<const N: usize> {
    pub value: [f64; N],
    pub error: f64,
    pub evaluations: usize,
}

struct Panel<const N: usize> {
    a: f64,
    b: f64,
    value: [f64; N],
    error: f64,
}

impl<const N: usize> PartialEq for Panel<N> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl<const N: usize> Eq for Panel<N> {}

impl<const N: usize> PartialOrd for Panel<N> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<const N: usize> Ord for Panel<N> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<const N: usize, F>(f: &F, a: f64, b: f64) -> Panel<N>
where
    F: Fn(f64) -> [f64; N],
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut kronrod = [0.0; N];
    let mut gauss = [0.0; N];

    let fc = f(center);
    for k in 0..N {
        kronrod[k] = WGK[10] * fc[k];
    }
    for (j, &x) in XGK[..10].iter().enumerate() {
        let dx = half * x;
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        for k in 0..N {
            let s = f1[k] + f2[k];
            kronrod[k] += WGK[j] * s;
            if j % 2 == 1 {
                gauss[k] += WG[j / 2] * s;
            }
        }
    }

    let mut error: f64 = 0.0;
    let mut value = [0.0; N];
    for k in 0..N {
        value[k] = kronrod[k] * half;
        error = error.max(((kronrod[k] - gauss[k]) * half).abs());
    }
    Panel { a, b, value, error }
}

/// Integrates `f` over the consecutive intervals defined by `breakpoints`
/// (at least two, increasing).
///
/// The error estimate is the largest component-wise |Kronrod − Gauss|
/// difference summed over panels; it is compared against
/// `max(absolute, relative · max_k |I_k|)`.
pub fn integrate<const N: usize, F>(
    f: F,
    breakpoints: &[f64],
    tol: Tolerance,
) -> Result<Estimate<N>>
where
    F: Fn(f64) -> [f64; N],
{
    assert!(breakpoints.len() >= 2, "need at least one interval");
    let mut heap = BinaryHeap::new();
    let mut evaluations = 0usize;
    let mut value = [0.0; N];
    let mut error = 0.0;
    for w in breakpoints.windows(2) {
        debug_assert!(w[1] > w[0]);
        let p = gauss_kronrod(&f, w[0], w[1]);
        for k in 0..N {
            value[k] += p.value[k];
        }
        error += p.error;
        heap.push(p);
        evaluations += 21;
    }

    loop {
        let scale = value.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let target = tol.absolute.max(tol.relative * scale);
        if error <= target {
            // Re-sum to shed drift from the running totals.
            let mut total = [0.0; N];
            let mut total_err = 0.0;
            for p in heap.iter() {
                for k in 0..N {
                    total[k] += p.value[k];
                }
                total_err += p.error;
            }
            return Ok(Estimate {
                value: total,
                error: total_err,
                evaluations,
            });
        }
        if evaluations + 42 > tol.max_evaluations {
            return Err(Error::QuadratureNotConverged {
                evaluations,
                error,
                target,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            // interval no longer splittable in floating point
            return Err(Error::QuadratureNotConverged {
                evaluations,
                error,
                target,
            });
        }
        let left = gauss_kronrod(&f, worst.a, mid);
        let right = gauss_kronrod(&f, mid, worst.b);
        for k in 0..N {
            value[k] += left.value[k] + right.value[k] - worst.value[k];
        }
        error = (error + left.error + right.error - worst.error).max(0.0);
        heap.push(left);
        heap.push(right);
        evaluations += 42;
    }
}
