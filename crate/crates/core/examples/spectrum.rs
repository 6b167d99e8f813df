// Coherent and incoherent line shapes of the first two harmonics.

use chanrad::model::{CrystalChannel, LevelStructure};
use chanrad::radiation::harmonic_ratio_table;
use chanrad::{entry_amplitudes, spectrum, AngularWeight, EmissionModel, PopulationModel};

fn main() {
    let ls = LevelStructure::new(&CrystalChannel::diamond_110(), 10e9).unwrap();
    let es = entry_amplitudes(&ls, 31e-6, PopulationModel::Glauber).unwrap();

    for j in [1, 2] {
        let coh = spectrum(&ls, &es, j, EmissionModel::Coherent, AngularWeight::DipolePlanar, 16).unwrap();
        let inc = spectrum(&ls, &es, j, EmissionModel::Incoherent, AngularWeight::DipolePlanar, 16).unwrap();
        println!("j = {j}, cutoff {:.1} MeV", coh.omega_cutoff / 1e6);
        for (c, i) in coh.points.iter().zip(&inc.points).step_by(3) {
            println!(
                "  ω = {:7.2} MeV  coherent {:.4e}  incoherent {:.4e}",
                c.omega / 1e6,
                c.intensity,
                i.intensity
            );
        }
    }
    for (j, r) in harmonic_ratio_table(&ls, &es, 4).unwrap() {
        println!("G{j}/G1 = {r:.4}");
    }
}
