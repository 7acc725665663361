// Low-lying spectrum of a three-site ring read from a device file.

use squid_optomech::config::DeviceConfig;
use squid_optomech::spectrum::{self, HamiltonianSource, SpectrumForm, SpectrumRequest};
use squid_optomech::sweep::Metadata;

const ARRAY_JSON: &str = include_str!("../fixtures/array_both.json");

pub fn run_example() -> squid_optomech::Result<String> {
    let cfg = DeviceConfig::from_json_str(ARRAY_JSON)?;
    let spec = cfg.array.clone().expect("fixture has an array section");
    let req = SpectrumRequest {
        form: SpectrumForm::Array,
        source: HamiltonianSource::Array(spec),
        k: 8,
        compare_polaron: false,
        dimension_cap: squid_optomech::diag::DEFAULT_DIMENSION_CAP,
    };
    let table = spectrum::spectrum_command(&req)?;
    Ok(table.to_csv_string(&Metadata::new(Some(&cfg), "example array_spectrum")))
}

fn main() -> squid_optomech::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
