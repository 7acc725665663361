// g0/omega_B over a (omega_B/omega_A, bias) grid. Rows failing the
// adiabatic checks are dropped and counted.

use squid_optomech::config;
use squid_optomech::sweep::{self, GridRange, Metadata, SweepConfig, SweepQuantity};

pub fn run_example() -> squid_optomech::Result<String> {
    let cfg = config::fig4();
    let sc = SweepConfig::new(SweepQuantity::G0OverOmegaB, GridRange::new(0.1, 0.4, 4)?)
        .with_ratio(GridRange::new(0.05, 0.2, 4)?);
    let table = sweep::sweep_g0_contour(&cfg, &sc)?;
    for w in &table.warnings {
        eprintln!("warning: {w}");
    }
    Ok(table.to_csv_string(&Metadata::new(Some(&cfg), "example g0_contour")))
}

fn main() -> squid_optomech::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
