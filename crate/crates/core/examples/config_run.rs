// Drives a run from a TOML config the way the command line does, and
// prints the CSV product.

use chanrad::app::run;
use chanrad::config::parse_config;
use chanrad::output::emit;

const CONFIG: &str = r#"
command = "gscan"
energy = "6GeV,14GeV"
grid = "0:0.6L:6"
model = "glauber"
precision = 6
"#;

fn main() {
    let cfg = parse_config(["chanrad", "gscan"], Some(CONFIG)).unwrap();
    let series = run(&cfg).unwrap();
    print!("{}", String::from_utf8(emit(&series, &cfg)).unwrap());
}
