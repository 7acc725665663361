// Exact diagonalization of the radiation-pressure Hamiltonian next to the
// closed-form polaron energies.

use squid_optomech::hamiltonian::TwoModeParams;
use squid_optomech::spectrum::{self, SpectrumForm, SpectrumRequest};
use squid_optomech::sweep::Metadata;

pub fn run_example() -> squid_optomech::Result<String> {
    let params = TwoModeParams::new(5.0, 1.0, 0.1, (4, 60));
    let req = SpectrumRequest::two_mode(SpectrumForm::Optomech, params, 12).with_polaron_comparison();
    let table = spectrum::spectrum_command(&req)?;
    Ok(table.to_csv_string(&Metadata::new(None, "example polaron_spectrum")))
}

fn main() -> squid_optomech::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
