//! Normalized Hermite functions and log-factorials.

use std::f64::consts::{LN_10, PI};

const RESCALE_EXP: i32 = 150;

/// ψₙ(ξ) = (2ⁿ n! √π)^(−1/2) Hₙ(ξ) e^(−ξ²/2), the normalized oscillator
/// eigenfunction.
pub fn hermite_function(n: usize, xi: f64) -> f64 {
    let mut out = 0.0;
    hermite_recurrence(n, xi, |k, v| {
        if k == n {
            out = v;
        }
    });
    out
}

/// ψ₀(ξ) … ψₙ(ξ) in one sweep.
pub fn hermite_functions(n: usize, xi: f64) -> Vec<f64> {
    let mut out = vec![0.0; n + 1];
    hermite_recurrence(n, xi, |k, v| out[k] = v);
    out
}

/// Runs ψₖ = ξ√(2/k)ψₖ₋₁ − √((k−1)/k)ψₖ₋₂ on values carried with a separate
/// log scale, so neither the Gaussian factor nor the polynomial growth can
/// under- or overflow the intermediate terms.
fn hermite_recurrence(n: usize, xi: f64, mut sink: impl FnMut(usize, f64)) {
    let big = 10f64.powi(RESCALE_EXP);
    let small = 10f64.powi(-RESCALE_EXP);
    let mut log_scale = -0.5 * xi * xi;
    let mut prev = 0.0;
    let mut cur = PI.powf(-0.25);
    sink(0, rescaled(cur, log_scale));
    for k in 1..=n {
        let kf = k as f64;
        let next = xi * (2.0 / kf).sqrt() * cur - ((kf - 1.0) / kf).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > big {
            cur *= small;
            prev *= small;
            log_scale += RESCALE_EXP as f64 * LN_10;
        }
        sink(k, rescaled(cur, log_scale));
    }
}

fn rescaled(v: f64, log_scale: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else if log_scale > -600.0 && log_scale < 600.0 {
        v * log_scale.exp()
    } else {
        v.signum() * (v.abs().ln() + log_scale).exp()
    }
}

/// ln(k!) for k = 0..=n.
pub fn ln_factorials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    out.push(0.0);
    for k in 1..=n {
        acc += (k as f64).ln();
        out.push(acc);
    }
    out
}
