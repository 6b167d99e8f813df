// Normalized oscillator eigenfunctions at orders where Hₙ(ξ) alone would
// overflow a double.

use chanrad::special::{hermite_function, hermite_functions};

fn main() {
    for (n, xi) in [(0, 0.0), (10, 1.5), (200, 12.0), (1000, 39.9)] {
        println!("ψ_{n}({xi}) = {:.12e}", hermite_function(n, xi));
    }
    // one sweep gives every order up to n
    let sweep = hermite_functions(8, 0.5);
    for (n, v) in sweep.iter().enumerate() {
        println!("ψ_{n}(0.5) = {v:+.9}");
    }
}
