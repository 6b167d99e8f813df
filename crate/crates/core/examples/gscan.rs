// 𝒢₁ against entrance angle, with the n₀ and √n₀ estimates and the
// small-angle exponents.

use chanrad::model::{CrystalChannel, LevelStructure};
use chanrad::scans::{scaling_report, theta_scan, AngleGrid, ScanOptions};
use chanrad::Angle;

fn main() {
    let channel = CrystalChannel::diamond_110();
    let ls = LevelStructure::new(&channel, 10e9).unwrap();
    let grid = AngleGrid {
        start: Angle::Radians(0.0),
        stop: Angle::Lindhard(0.85),
        count: 120,
    };
    let scan = theta_scan(&channel, 10e9, &grid.resolve(ls.theta_l), 1, ScanOptions::default()).unwrap();
    for p in scan.points.iter().step_by(12) {
        println!(
            "θ/θ_L = {:.3}  G = {:7.3}  n₀ = {:8.3}  5.013√n₀ = {:7.3}",
            p.theta_over_l, p.g, p.g_n0_estimate, p.g_sqrt_estimate
        );
    }
    if let Some(s) = scan.small_angle_slope {
        println!("slope of ln G over the first decade: {s:.3}");
    }
    let r = scaling_report(&scan).unwrap();
    println!(
        "exponents over θ ≤ 0.3 θ_L ({} points): G {:.2} (claimed {}), coherent {:.2} (claimed {}), incoherent {:.2} (claimed {})",
        r.points_used,
        r.g_exponent,
        r.claimed_g_exponent,
        r.coherent_exponent,
        r.claimed_coherent_exponent,
        r.incoherent_exponent,
        r.claimed_incoherent_exponent,
    );
}
