// Equidistant positron ladder against the cosh⁻² ladder an electron sees.

use chanrad::model::CrystalChannel;
use chanrad::scans::electron_compare;

fn main() {
    let channel = CrystalChannel::diamond_110();
    for energy in [4e9, 10e9] {
        let c = electron_compare(&channel, energy, None).unwrap();
        println!("{:.0} GeV", energy / 1e9);
        println!(
            "  positron: {} levels, spacing {:.4} eV, deviation {:.1e}",
            c.positron_levels, c.positron_spacing, c.positron_deviation
        );
        println!(
            "  electron: {} levels, spacing {:.4} → {:.4} eV, deviation {:.2}",
            c.electron_levels, c.electron_spacing_first, c.electron_spacing_last, c.electron_deviation
        );
    }
}
