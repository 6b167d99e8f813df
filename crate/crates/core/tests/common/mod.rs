//! Reference computations shared by the oracle and acceptance targets.
#![allow(dead_code)]

use chanrad::model::{ChannelShape, CrystalChannel, LevelStructure};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Physicists' Hₙ(ξ) for n = 0..=n_max in exact rational arithmetic.
pub fn exact_hermite(n_max: usize, xi: &BigRational) -> Vec<BigRational> {
    let two = BigRational::from_integer(BigInt::from(2));
    let mut out = vec![BigRational::from_integer(BigInt::from(1)), &two * xi];
    for n in 1..n_max {
        let nn = BigRational::from_integer(BigInt::from(2 * n));
        let next = &two * xi * &out[n] - nn * &out[n - 1];
        out.push(next);
    }
    out.truncate(n_max + 1);
    out
}

/// ln|x| for an arbitrarily large integer, from its leading 64 bits.
fn ln_abs_int(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.abs().to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top: BigInt = x.abs() >> shift;
    top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// ψₙ(ξ) = Hₙ(ξ)e^(−ξ²/2)/√(2ⁿ n! √π), assembled in the log domain.
pub fn oracle_psi(h: &BigRational, n: usize, xi: f64) -> f64 {
    if h.is_zero() {
        return 0.0;
    }
    let ln_h = ln_abs_int(h.numer()) - ln_abs_int(h.denom());
    let ln_fact: f64 = (1..=n).map(|k| (k as f64).ln()).sum();
    let ln_norm = 0.5 * (n as f64 * std::f64::consts::LN_2 + ln_fact + 0.5 * std::f64::consts::PI.ln());
    let sign = if h.is_negative() { -1.0 } else { 1.0 };
    sign * (ln_h - 0.5 * xi * xi - ln_norm).exp()
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// V₀ = 15 eV at 100 MeV leaves nine levels, n = 0..=8.
pub fn small_well() -> LevelStructure {
    let channel = CrystalChannel::new("small", 15.0, 1.26, ChannelShape::Parabolic).unwrap();
    let ls = LevelStructure::new(&channel, 1e8).unwrap();
    assert_eq!(ls.n_max, 8);
    ls
}

/// 𝒢₁ and 𝒢₂ written out term by term from the Poisson amplitudes.
pub fn unrolled(n0: f64, aligned: bool) -> (f64, f64) {
    let e = (-0.5 * n0).exp();
    let a = n0.sqrt();
    let c0 = e;
    let c1 = e * a;
    let c2 = e * a * a / 2f64.sqrt();
    let c3 = e * a * a * a / 6f64.sqrt();
    let c4 = e * a * a * a * a / 24f64.sqrt();
    let c5 = e * a * a * a * a * a / 120f64.sqrt();
    let c6 = e * a * a * a * a * a * a / 720f64.sqrt();
    let c7 = e * a * a * a * a * a * a * a / 5040f64.sqrt();
    let c8 = e * a * a * a * a * a * a * a * a / 40320f64.sqrt();
    let norm = (c0 * c0 + c1 * c1 + c2 * c2 + c3 * c3 + c4 * c4 + c5 * c5 + c6 * c6 + c7 * c7 + c8 * c8).sqrt();
    let [_, c1, c2, c3, c4, c5, c6, c7, c8] = [c0, c1, c2, c3, c4, c5, c6, c7, c8].map(|c| c / norm);

    // j = 1: mₙ = √(n/2)
    let m = |n: f64| (n / 2.0).sqrt();
    let (re1, im1) = if aligned {
        (
            c1 * m(1.0)
                + c2 * m(2.0)
                + c3 * m(3.0)
                + c4 * m(4.0)
                + c5 * m(5.0)
                + c6 * m(6.0)
                + c7 * m(7.0)
                + c8 * m(8.0),
            0.0,
        )
    } else {
        // iⁿ: 1, i, −1, −i, 1, …
        (
            -c2 * m(2.0) + c4 * m(4.0) - c6 * m(6.0) + c8 * m(8.0),
            c1 * m(1.0) - c3 * m(3.0) + c5 * m(5.0) - c7 * m(7.0),
        )
    };
    let inc1 = c1 * c1 * 0.5
        + c2 * c2 * 1.0
        + c3 * c3 * 1.5
        + c4 * c4 * 2.0
        + c5 * c5 * 2.5
        + c6 * c6 * 3.0
        + c7 * c7 * 3.5
        + c8 * c8 * 4.0;
    let g1 = (re1 * re1 + im1 * im1) / inc1;

    // j = 2: mₙ = √(n(n−1))/2
    let q = |n: f64| (n * (n - 1.0)).sqrt() / 2.0;
    let (re2, im2) = if aligned {
        (
            c2 * q(2.0) + c3 * q(3.0) + c4 * q(4.0) + c5 * q(5.0) + c6 * q(6.0) + c7 * q(7.0) + c8 * q(8.0),
            0.0,
        )
    } else {
        (
            -c2 * q(2.0) + c4 * q(4.0) - c6 * q(6.0) + c8 * q(8.0),
            -c3 * q(3.0) + c5 * q(5.0) - c7 * q(7.0),
        )
    };
    let inc2 =
        c2 * c2 * 0.5 + c3 * c3 * 1.5 + c4 * c4 * 3.0 + c5 * c5 * 5.0 + c6 * c6 * 7.5 + c7 * c7 * 10.5 + c8 * c8 * 14.0;
    let g2 = (re2 * re2 + im2 * im2) / inc2;
    (g1, g2)
}
