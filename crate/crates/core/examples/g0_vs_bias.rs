// Single-photon coupling against bias for both loop designs, and their
// bias-independent ratio.

use squid_optomech::config;
use squid_optomech::coupling::{self, GeometryKind};
use squid_optomech::sweep::{self, GridRange, Metadata, SweepConfig, SweepQuantity};

pub fn run_example() -> squid_optomech::Result<String> {
    let cfg = config::fig4();
    let inductive = cfg.coupling.geometry_as(GeometryKind::Inductive)?;
    let ratio = coupling::coupling_ratio(&cfg.line, &inductive)?;

    let sc = SweepConfig::new(SweepQuantity::G0OverOmegaA, GridRange::new(0.0, 0.45, 10)?);
    let table = sweep::sweep_g0(&cfg, &sc)?;
    let mut out = format!("# galvanic/inductive = {ratio:.4}\n");
    out.push_str(&table.to_csv_string(&Metadata::new(Some(&cfg), "example g0_vs_bias")));
    Ok(out)
}

fn main() -> squid_optomech::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
