// Level populations at the crystal entrance, Poisson against the exact
// projection of the plane wave.

use chanrad::model::{CrystalChannel, LevelStructure};
use chanrad::{entry_amplitudes, mean_occupancy, PopulationModel};

fn main() {
    let ls = LevelStructure::new(&CrystalChannel::diamond_110(), 10e9).unwrap();
    for theta in [0.0, 15e-6, 31e-6, 0.5 * ls.theta_l] {
        println!("θ = {:.1} µrad, n₀ = {:.2}", theta * 1e6, ls.mean_level(theta));
        for model in [PopulationModel::Glauber, PopulationModel::Hermite] {
            let es = entry_amplitudes(&ls, theta, model).unwrap();
            let p = es.populations();
            let (peak, _) = p
                .iter()
                .enumerate()
                .fold((0, 0.0), |best, (n, &v)| if v > best.1 { (n, v) } else { best });
            println!(
                "  {:8} mean {:6.2}  peak n = {:3}  P₀ = {:.3e}",
                format!("{model:?}"),
                mean_occupancy(&es),
                peak,
                p[0]
            );
        }
    }
}
