// ⟨𝒢₁⟩ over a Gaussian beam divergence.

use chanrad::model::CrystalChannel;
use chanrad::scans::{beam_average, Estimator};

fn main() {
    let channel = CrystalChannel::diamond_110();
    for energy in [4e9, 6e9, 10e9, 14e9] {
        let n0 = beam_average(&channel, energy, 10e-6, Estimator::N0, 64).unwrap();
        let eq7 = beam_average(&channel, energy, 10e-6, Estimator::Eq7, 64).unwrap();
        println!(
            "{:4.0} GeV  σ = 10 µrad  ⟨max(1, n₀)⟩ = {:.3}  ⟨G⟩ = {:.3}  (Δ on doubling {:.1e})",
            energy / 1e9,
            n0.value,
            eq7.value,
            eq7.relative_change
        );
    }
}
