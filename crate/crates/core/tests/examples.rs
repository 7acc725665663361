#[allow(dead_code)]
mod flux_factor_sweep {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/flux_factor_sweep.rs"));
}

#[allow(dead_code)]
mod g0_vs_bias {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/g0_vs_bias.rs"));
}

#[allow(dead_code)]
mod g0_contour {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/g0_contour.rs"));
}

#[allow(dead_code)]
mod polaron_spectrum {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/polaron_spectrum.rs"));
}

#[allow(dead_code)]
mod displacement_linearization {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/displacement_linearization.rs"));
}

#[allow(dead_code)]
mod array_spectrum {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/array_spectrum.rs"));
}

#[allow(dead_code)]
mod validate_device {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/validate_device.rs"));
}

#[allow(dead_code)]
mod multimode {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/multimode.rs"));
}

#[test]
fn sweep_examples_run() {
    let ff = flux_factor_sweep::run_example().unwrap();
    assert!(ff.contains("bias_phi0,F\n0,0\n"));
    let g0 = g0_vs_bias::run_example().unwrap();
    assert!(g0.starts_with("# galvanic/inductive = 3.2966"));
    let contour = g0_contour::run_example().unwrap();
    assert!(contour.contains("omegaB_over_omegaA,bias_phi0,g0_over_omegaB"));
}

#[test]
fn spectrum_examples_run() {
    let polaron = polaron_spectrum::run_example().unwrap();
    let footer = polaron.lines().last().unwrap();
    let dev: f64 = footer.trim_start_matches("# max_abs_deviation=").parse().unwrap();
    assert!(dev < 1e-6);
    assert!(array_spectrum::run_example().unwrap().lines().count() > 8);
    assert!(multimode::run_example().unwrap().contains("E5 ="));
}

#[test]
fn displacement_example_runs() {
    let out = displacement_linearization::run_example().unwrap();
    let last: f64 = out.lines().last().unwrap().rsplit(' ').next().unwrap().parse().unwrap();
    assert!(last < 1e-10);
}

#[test]
fn validate_example_runs() {
    let out = validate_device::run_example().unwrap();
    assert!(out.contains("bias 0.3: ok"));
    assert!(out.contains("bias 0.49: violated"));
}
