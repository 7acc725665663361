// Flux factor F across the bias range for the bundled device.

use squid_optomech::config;
use squid_optomech::sweep::{self, GridRange, Metadata, SweepConfig, SweepQuantity};

pub fn run_example() -> squid_optomech::Result<String> {
    let cfg = config::fig4();
    let sc = SweepConfig::new(SweepQuantity::FluxFactor, GridRange::new(0.0, 0.45, 10)?);
    let table = sweep::sweep_flux_factor(&cfg, &sc)?;
    Ok(table.to_csv_string(&Metadata::new(Some(&cfg), "example flux_factor_sweep")))
}

fn main() -> squid_optomech::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
