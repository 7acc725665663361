// Adiabatic validity report at a few bias points.

use squid_optomech::circuit::validate_adiabatic;
use squid_optomech::{config, FluxBias};

pub fn run_example() -> squid_optomech::Result<String> {
    let cfg = config::fig4();
    let mut out = String::new();
    for b in [0.3, 0.4, 0.49] {
        let report = validate_adiabatic(&cfg, FluxBias::new(b)?);
        out.push_str(&format!("bias {b}: {}\n", if report.all_passed() { "ok" } else { "violated" }));
        for c in &report.checks {
            out.push_str(&format!("  {c}\n"));
        }
    }
    Ok(out)
}

fn main() -> squid_optomech::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
