// Level structure and 𝒢₁ for the diamond (110) channel at the four
// reference energies, with the dipole peak against measured peaks.

use chanrad::model::CrystalChannel;
use chanrad::scans::energy_table;
use chanrad::Angle;

fn main() {
    let channel = CrystalChannel::diamond_110();
    let energies = [4e9, 6e9, 10e9, 14e9];
    let measured = [23e6, 42e6, 90e6, 120e6];
    let table = energy_table(&channel, &energies, Angle::Radians(31e-6), Some(&measured)).unwrap();

    println!("  E/GeV   Ω/eV  n_max  θ_L/µrad     G1  2γ²Ω/MeV  ratio");
    for r in &table.rows {
        println!(
            "{:7.1} {:6.3} {:6} {:9.1} {:6.2} {:9.1} {:6.2}",
            r.energy / 1e9,
            r.omega,
            r.n_max,
            r.theta_l * 1e6,
            r.g1,
            r.omega1_dipole / 1e6,
            r.dipole_over_exp.unwrap(),
        );
    }
}
