//! Reference implementations shared by the integration tests. They are
//! written straight from the defining formulas, without the stabilising
//! tricks of the library, and are only trusted to the accuracy noted.
#![allow(dead_code, clippy::excessive_precision)]

use std::f64::consts::PI;

/// Radii computed to 40 digits with an arbitrary-precision root finder on
/// `u'_β(r) = 0` (or on `p_n` at `β = 1`), rounded to `f64`.
pub mod frozen {
    pub const R_TRIANGLE_HALF: f64 = 0.284_718_354_803_034_574_689_750_421_757_765_5;
    pub const R_SQUARE_HALF: f64 = 0.546_936_375_126_088_512_867_056_117_633_273_8;
    /// `β = 1`, `n = 3..=10`.
    pub const R_UNIT_BETA: [f64; 8] = [
        0.392_646_781_702_640_811_764_879_594_884_341_3,
        0.643_594_252_905_582_624_735_443_437_418_209_8,
        0.767_627_065_759_437_855_400_784_023_952_713_2,
        0.837_017_524_744_534_713_003_896_153_525_968_4,
        0.879_542_067_413_789_691_596_957_590_930_440_8,
        0.907_418_126_624_570_141_637_585_946_935_134_5,
        0.926_655_639_014_000_447_480_962_143_403_583_4,
        0.940_478_986_999_013_070_089_358_893_865_831_6,
    ];
    /// Triangle radii at β = 0.01, 0.05, 0.1, 0.3.
    pub const R_TRIANGLE_SMALL_BETA: [f64; 4] = [
        0.009_852_216_720_502_656_093_817_751_693_884,
        0.046_511_557_691_921_064_939_236_065_333_753,
        0.086_954_805_333_573_503_456_111_049_859_875,
        0.206_731_423_568_173_906_571_347_250_542_004,
    ];
    /// Triangle radii at β = 2, 5, 20.
    pub const R_TRIANGLE_LARGE_BETA: [f64; 3] = [
        0.469_052_149_989_962_615_853_125_213_191_389,
        0.498_963_330_737_589_590_742_204_258_286_139,
        0.499_999_999_928_300_700_089_674_051_349_044,
    ];
    /// `U_{1/2}(1/2, π/4)` for the square.
    pub const U_SQUARE_HALF: f64 = 4.144_020_355_529_761_160_946_424_753_782_839;
    /// `(0.5/64.5)^{1/62}`.
    pub const R_LOWER_64_HALF: f64 = 0.924_609_242_708_317_274_593_427_797_012_992_5;
    /// Small-β ceiling at `(3, 0.01)` and `(3, 0.05)`.
    pub const SMALL_BETA_CEILING_3_001: f64 = 0.121_656_476_131_294_244_830_505_272_026_149;
    pub const SMALL_BETA_CEILING_3_005: f64 = 0.647_621_631_331_929_115_718_427_661_528_373;
    /// `B(3/2, 1/2) ₂F₁(3/2, 3/2; 2; 1/4)`.
    pub const MEANVALUE_HALF_HALF: f64 = 2.166_927_394_453_121_315_268_186_918_843_823;
}

pub fn naive_potential(n: usize, beta: f64, r: f64, theta: f64) -> f64 {
    (1..=n)
        .map(|j| {
            let phi = 2.0 * PI * j as f64 / n as f64 - theta;
            (1.0 + r * r - 2.0 * r * phi.cos()).powf(-beta)
        })
        .sum()
}

pub fn naive_bisector_slope(n: usize, beta: f64, r: f64) -> f64 {
    -2.0 * beta
        * (1..=n)
            .map(|j| {
                let c = (PI * (2 * j - 1) as f64 / n as f64).cos();
                (r - c) * (1.0 + r * r - 2.0 * r * c).powf(-beta - 1.0)
            })
            .sum::<f64>()
}

/// Plain bisection; `f(lo)` and `f(hi)` must differ in sign.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let neg_lo = f(lo) < 0.0;
    assert_ne!(neg_lo, f(hi) < 0.0, "bisection oracle needs a sign change");
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (f(mid) < 0.0) == neg_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, &c| acc * x + c)
}

/// Ridders extrapolation of central differences.
pub fn ridders<F: Fn(f64) -> f64>(f: F, x: f64, h0: f64) -> f64 {
    const N: usize = 12;
    const C: f64 = 1.4;
    let mut t = [[0.0; N]; N];
    let mut h = h0;
    t[0][0] = (f(x + h) - f(x - h)) / (2.0 * h);
    let mut best = t[0][0];
    let mut err = f64::MAX;
    for i in 1..N {
        h /= C;
        t[0][i] = (f(x + h) - f(x - h)) / (2.0 * h);
        let mut fac = C * C;
        for j in 1..=i {
            t[j][i] = (t[j - 1][i] * fac - t[j - 1][i - 1]) / (fac - 1.0);
            fac *= C * C;
            let e = (t[j][i] - t[j - 1][i]).abs().max((t[j][i] - t[j - 1][i - 1]).abs());
            if e <= err {
                err = e;
                best = t[j][i];
            }
        }
        if (t[i][i] - t[i - 1][i - 1]).abs() >= 2.0 * err {
            break;
        }
    }
    best
}

/// `B(β + k, 1 − β)` from `B(β, 1 − β) = π/sin πβ` and the step
/// `B(x + 1, y) = B(x, y)·x/(x + y)`.
pub fn weight_moment(beta: f64, k: usize) -> f64 {
    let mut m = PI / (PI * beta).sin();
    for i in 0..k {
        m *= (beta + i as f64) / (1.0 + i as f64);
    }
    m
}

/// Prints the one-line verdict for an acceptance criterion.
pub fn report(id: u32, name: &str, ok: bool, detail: &str) {
    println!("{} criterion {id:02} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
}
