// Displacing the driven cavity by its steady-state amplitude: the rotating
// Hamiltonian becomes the linearized one plus the cubic term.

use num_complex::Complex64;
use squid_optomech::fock::{self, FockOperator};
use squid_optomech::hamiltonian::{self, TwoModeParams};

pub fn run_example() -> squid_optomech::Result<String> {
    let (na, nb, pad) = (6, 6, 40);
    let alpha = Complex64::new(1.0, 0.5);
    let base = TwoModeParams::new(5.0, 1.0, 0.1, (pad, nb));
    let detuning = base.omega_a - 4.0;
    // drive chosen so that the steady state is exactly alpha
    let padded = base.with_drive(-(alpha * detuning).conj(), 4.0);
    assert!((hamiltonian::steady_state_alpha(&padded)? - alpha).norm() < 1e-14);

    let d = fock::tensor(&[fock::displacement(alpha, pad)?, fock::identity(nb)?])?;
    let rotated = d.adjoint().mul(&hamiltonian::build_rotating(&padded)?)?.mul(&d)?;
    let rotated = rotated.project(&[na, nb])?;

    let small = TwoModeParams { dims: (na, nb), ..padded };
    let lin = hamiltonian::build_linearized(&small, alpha)?;
    let a = fock::tensor(&[fock::number(na)?, fock::identity(nb)?])?;
    let x = fock::tensor(&[fock::identity(na)?, fock::annihilation(nb)?.add(&fock::creation(nb)?)?])?;
    let cubic = a.mul(&x)?.scale(Complex64::new(-small.g0, 0.0));
    let rest: FockOperator = rotated.sub(&lin)?.sub(&cubic)?;

    let shift = rest.get(0, 0);
    let off = rest.sub(&fock::identity_on(&[na, nb])?.scale(shift))?.max_abs();
    Ok(format!(
        "alpha = {alpha}\nscalar offset = {:.6}\nlargest remaining entry = {off:.3e}\n",
        shift.re
    ))
}

fn main() -> squid_optomech::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
