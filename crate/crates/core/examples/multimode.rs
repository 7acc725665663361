// Two modes of each resonator coupled through the SQUID. Frequencies in
// units of the fundamental of B.

use squid_optomech::config;
use squid_optomech::diag;
use squid_optomech::hamiltonian::MultimodeSpec;

pub fn run_example() -> squid_optomech::Result<String> {
    let cfg = config::fig4();
    let geom = cfg.coupling.geometry()?;
    let spec = MultimodeSpec::from_device(&cfg, &geom, cfg.bias, 2, 2)?;
    let spec = spec.rescaled(spec.freqs_b[0]);
    let h = spec.build(&[3, 2, 6, 6])?;
    let e = diag::eigenvalues(&h, 6)?;
    let mut out = format!("A modes {:?}\nB modes {:?}\nG {:?}\n", spec.freqs_a, spec.freqs_b, spec.geometric);
    for (i, v) in e.iter().enumerate() {
        out.push_str(&format!("E{i} = {v:.9}\n"));
    }
    Ok(out)
}

fn main() -> squid_optomech::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
