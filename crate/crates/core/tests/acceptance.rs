//! Acceptance suite. Every criterion prints one `PASS`/`FAIL` line.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use num_complex::Complex64;

use squid_optomech::arrays::{self, ArrayTopology, CouplingClass, UnitCellParams};
use squid_optomech::circuit;
use squid_optomech::config;
use squid_optomech::coupling::{self, CouplingGeometry};
use squid_optomech::diag;
use squid_optomech::fock::{self, FockOperator};
use squid_optomech::hamiltonian::{self, TwoModeParams};
use squid_optomech::sweep::{self, GridRange, SweepConfig, SweepQuantity};
use squid_optomech::{FluxBias, LineParams};

fn verdict(id: u32, name: &str, ok: bool, detail: String) {
    println!("[{}] criterion {id} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {id} {name} failed: {detail}");
}

fn within(elapsed: Duration, limit: f64) -> bool {
    elapsed.as_secs_f64() < limit
}

fn column(table: &sweep::Table, name: &str) -> Vec<Option<f64>> {
    table.column(name).unwrap_or_else(|| panic!("column {name}"))
}

#[test]
fn criterion_1_galvanic_over_inductive_ratio() {
    let t0 = Instant::now();
    let line = LineParams::new(4.57e-7, 1.46e-10).unwrap();
    let loop_geom = CouplingGeometry::Inductive {
        delta: 6e-3,
        x0: 3e-2,
        d1: 5e-6,
        d2: 10e-6,
    };
    let ratio = coupling::coupling_ratio(&line, &loop_geom).unwrap();

    let cfg = config::fig4();
    let sc = SweepConfig::new(SweepQuantity::G0OverOmegaA, GridRange::new(0.0, 0.45, 46).unwrap());
    let table = sweep::sweep_g0(&cfg, &sc).unwrap();
    let galv = column(&table, "g0_over_omegaA_galvanic");
    let ind = column(&table, "g0_over_omegaA_inductive");
    let mut worst = 0.0f64;
    let mut compared = 0;
    for (g, i) in galv.iter().zip(&ind) {
        let (g, i) = (g.expect("finite"), i.expect("finite"));
        if g == 0.0 && i == 0.0 {
            continue;
        }
        worst = worst.max(((g / i) - ratio).abs() / ratio);
        compared += 1;
    }
    let elapsed = t0.elapsed();
    let ok = (ratio - 3.3).abs() <= 0.05 && worst <= 1e-10 && compared >= 40 && within(elapsed, 1.0);
    verdict(
        1,
        "galvanic/inductive ratio",
        ok,
        format!("ratio={ratio:.5} (3.3 +- 0.05), worst column deviation={worst:.2e} over {compared} rows, {elapsed:.2?}"),
    );
}

#[test]
fn criterion_2_flux_factor_limits() {
    let t0 = Instant::now();
    let cfg = config::fig4();
    let sc = SweepConfig::new(SweepQuantity::FluxFactor, GridRange::new(0.0, 0.45, 451).unwrap());
    let table = sweep::sweep_flux_factor(&cfg, &sc).unwrap();
    let bias: Vec<f64> = column(&table, "bias_phi0").into_iter().map(Option::unwrap).collect();
    let f: Vec<f64> = column(&table, "F").into_iter().map(Option::unwrap).collect();
    let zero_exact = bias[0] == 0.0 && f[0] == 0.0;
    let increasing = f.windows(2).all(|w| w[1] > w[0]);
    let first_above_one = bias.iter().zip(&f).find(|(_, &v)| v > 1.0).map(|(&b, _)| b);
    let elapsed = t0.elapsed();
    let ok = zero_exact && increasing && first_above_one.is_some_and(|b| b < 0.45) && within(elapsed, 1.0);
    verdict(
        2,
        "flux-factor limits",
        ok,
        format!(
            "F(0)={}, strictly increasing={increasing}, F>1 from bias {first_above_one:?}, F(0.45)={:.4}, {elapsed:.2?}",
            f[0],
            f[f.len() - 1]
        ),
    );
}

/// g0/omega_A for the galvanic loop written out in one expression.
fn g0_over_omega_a_oracle(bias: f64) -> f64 {
    let phi0 = 2.067833848e-15;
    let hbar = 1.054571817e-34;
    let (l0, c0, ej, da, db, delta, x0): (f64, f64, f64, f64, f64, f64, f64) = (4.57e-7, 1.46e-10, 4.11e-22, 3e-3, 6e-2, 6e-3, 3e-2);
    let z0 = (l0 / c0).sqrt();
    let dd0 = (phi0 * phi0 / (4.0 * PI * PI)) / (l0 * 2.0 * ej * (PI * bias).cos());
    PI * dd0 / (da + dd0) * (PI * bias).tan() * PI * (delta / db) / phi0 * (z0 * hbar / PI).sqrt() * (PI * x0 / db).sin()
}

#[test]
fn criterion_3_fig4_reproduction() {
    let t0 = Instant::now();
    let cfg = config::fig4();
    let sc = SweepConfig::new(SweepQuantity::G0OverOmegaA, GridRange::new(0.0, 0.4, 41).unwrap());
    let table = sweep::sweep_g0(&cfg, &sc).unwrap();
    let bias = column(&table, "bias_phi0");
    let galv = column(&table, "g0_over_omegaA_galvanic");
    let ind = column(&table, "g0_over_omegaA_inductive");
    let last = galv.len() - 1;
    assert_eq!(bias[last], Some(0.4));
    let value = galv[last].unwrap();
    let oracle = g0_over_omega_a_oracle(0.4);
    let zero_row = galv[0] == Some(0.0) && ind[0] == Some(0.0);
    let worst_oracle = bias
        .iter()
        .zip(&galv)
        .skip(1)
        .map(|(b, g)| (g.unwrap() - g0_over_omega_a_oracle(b.unwrap())).abs() / g0_over_omega_a_oracle(b.unwrap()))
        .fold(0.0, f64::max);
    let elapsed = t0.elapsed();
    let ok = ((oracle - 1.5e-2) / 1.5e-2).abs() <= 0.1
        && ((value - 1.5e-2) / 1.5e-2).abs() <= 0.1
        && worst_oracle < 1e-12
        && zero_row
        && within(elapsed, 1.0);
    verdict(
        3,
        "g0/omega_A at bias 0.4",
        ok,
        format!(
            "sweep={value:.5e}, oracle={oracle:.5e} (1.5e-2 +- 10%), worst relative sweep/oracle gap={worst_oracle:.1e}, {elapsed:.2?}"
        ),
    );
}

#[test]
fn criterion_4_contour_trends() {
    let cfg = config::fig4();
    let t0 = Instant::now();
    let sc = SweepConfig::new(SweepQuantity::G0OverOmegaB, GridRange::new(0.01, 0.4, 50).unwrap())
        .with_ratio(GridRange::new(0.02, 0.2, 50).unwrap());
    let table = sweep::sweep_g0_contour(&cfg, &sc).unwrap();
    let elapsed = t0.elapsed();

    let cells: Vec<(f64, f64, f64)> = table
        .rows
        .iter()
        .map(|r| (r[0].unwrap(), r[1].unwrap(), r[2].expect("valid rows are finite")))
        .collect();
    let lookup = |r: f64, b: f64| cells.iter().find(|c| c.0 == r && c.1 == b).map(|c| c.2);
    let ratios = GridRange::new(0.02, 0.2, 50).unwrap().points();
    let biases = GridRange::new(0.01, 0.4, 50).unwrap().points();

    let mut bias_pairs = 0;
    let mut bias_monotone = true;
    for &r in &ratios {
        let row: Vec<f64> = biases.iter().filter_map(|&b| lookup(r, b)).collect();
        bias_pairs += row.len().saturating_sub(1);
        bias_monotone &= row.windows(2).all(|w| w[1] > w[0]);
    }
    let mut ratio_pairs = 0;
    let mut ratio_monotone = true;
    for &b in &biases {
        // ratios ascending, so values must fall
        let col: Vec<f64> = ratios.iter().filter_map(|&r| lookup(r, b)).collect();
        ratio_pairs += col.len().saturating_sub(1);
        ratio_monotone &= col.windows(2).all(|w| w[1] < w[0]);
    }

    let single = SweepConfig::new(SweepQuantity::G0OverOmegaB, GridRange::new(0.3, 0.4, 2).unwrap())
        .with_ratio(GridRange::new(0.1, 0.2, 2).unwrap());
    let at = sweep::sweep_g0_contour(&cfg, &single).unwrap();
    let strong = at
        .rows
        .iter()
        .find(|r| r[0] == Some(0.1) && r[1] == Some(0.4))
        .and_then(|r| r[2])
        .unwrap_or(f64::NAN);

    let ok = bias_monotone
        && ratio_monotone
        && bias_pairs > 1000
        && ratio_pairs > 1000
        && strong >= 0.1
        && within(elapsed, 5.0);
    verdict(
        4,
        "contour trends",
        ok,
        format!(
            "{} rows kept ({} omitted), monotone in bias={bias_monotone} ({bias_pairs} pairs), in falling ratio={ratio_monotone} ({ratio_pairs} pairs), g0/omega_B(0.1, 0.4)={strong:.4}, 50x50 in {elapsed:.2?}",
            table.rows.len(),
            table.omitted.len()
        ),
    );
}

/// Nearest eigenvalue in an ascending list.
fn nearest(sorted: &[f64], x: f64) -> f64 {
    let i = sorted.partition_point(|&e| e < x);
    [i.checked_sub(1), Some(i)]
        .into_iter()
        .flatten()
        .filter_map(|j| sorted.get(j))
        .copied()
        .min_by(|a, b| (a - x).abs().total_cmp(&(b - x).abs()))
        .unwrap()
}

#[test]
fn criterion_5_polaron_spectrum() {
    let t0 = Instant::now();
    let (wa, wb, g) = (5.0, 1.0, 0.1);
    let spectrum = |dim_b: usize| {
        let h = hamiltonian::build_optomech(&TwoModeParams::new(wa, wb, g, (4, dim_b))).unwrap();
        let n = h.dim();
        diag::eigenvalues(&h, n).unwrap()
    };
    let e80 = spectrum(80);
    let e160 = spectrum(160);
    let mut worst = 0.0f64;
    let mut drift = 0.0f64;
    for na in 0..=3 {
        for nb in 0..=5 {
            let exact = wa * na as f64 + wb * nb as f64 - g * g * (na * na) as f64 / wb;
            let (a, b) = (nearest(&e80, exact), nearest(&e160, exact));
            worst = worst.max((a - exact).abs());
            drift = drift.max((a - b).abs());
        }
    }
    let elapsed = t0.elapsed();
    let ok = worst < 1e-6 && drift < 1e-9 && within(elapsed, 10.0);
    verdict(
        5,
        "polaron spectrum",
        ok,
        format!("max |E - E_polaron|={worst:.2e} (tol 1e-6), dim_b 80->160 drift={drift:.2e} (tol 1e-9), {elapsed:.2?}"),
    );
}

/// exp(M) by scaling and squaring of a Taylor series.
fn expm(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let norm = m.iter().map(|z| z.norm()).sum::<f64>();
    let squarings = norm.max(1.0).log2().ceil() as u32 + 2;
    let a = m.scale(0.5f64.powi(squarings as i32));
    let n = m.nrows();
    let mut term = DMatrix::<Complex64>::identity(n, n);
    let mut sum = term.clone();
    for k in 1..30 {
        term = &term * &a / Complex64::new(k as f64, 0.0);
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

#[test]
fn criterion_6_displacement_linearization() {
    let t0 = Instant::now();
    let (na, nb, pad) = (6, 6, 48);
    let base = TwoModeParams::new(5.0, 1.0, 0.1, (pad, nb));
    let drive_freq = 4.0;
    let mut worst = 0.0f64;
    let mut expm_gap = 0.0f64;
    let mut alpha_gap = 0.0f64;
    for alpha in [Complex64::new(0.5, 0.0), Complex64::new(1.0, 0.5)] {
        let detuning = base.omega_a - drive_freq;
        let driven = base.with_drive(-(alpha * detuning).conj(), drive_freq);
        alpha_gap = alpha_gap.max((hamiltonian::steady_state_alpha(&driven).unwrap() - alpha).norm());

        let d_mode = fock::displacement(alpha, pad).unwrap();
        let gen = fock::creation(pad).unwrap().scale(alpha).sub(&fock::annihilation(pad).unwrap().scale(alpha.conj())).unwrap();
        expm_gap = expm_gap.max((d_mode.matrix() - expm(gen.matrix())).iter().map(|z| z.norm()).fold(0.0, f64::max));

        let d = fock::tensor(&[d_mode, fock::identity(nb).unwrap()]).unwrap();
        let h_rot = hamiltonian::build_rotating(&driven).unwrap();
        let conj = d.adjoint().mul(&h_rot).unwrap().mul(&d).unwrap().project(&[na, nb]).unwrap();

        let small = TwoModeParams { dims: (na, nb), ..driven };
        let lin = hamiltonian::build_linearized(&small, alpha).unwrap();
        let num_a = fock::tensor(&[fock::number(na).unwrap(), fock::identity(nb).unwrap()]).unwrap();
        let x_b = fock::tensor(&[
            fock::identity(na).unwrap(),
            fock::annihilation(nb).unwrap().add(&fock::creation(nb).unwrap()).unwrap(),
        ])
        .unwrap();
        let cubic = num_a.mul(&x_b).unwrap().scale(Complex64::new(-small.g0, 0.0));
        let rest: FockOperator = conj.sub(&lin).unwrap().sub(&cubic).unwrap();
        let scalar = rest.get(0, 0);
        let off = rest
            .sub(&fock::identity_on(&[na, nb]).unwrap().scale(scalar))
            .unwrap()
            .max_abs();
        worst = worst.max(off);
    }
    let elapsed = t0.elapsed();
    let ok = worst <= 1e-10 && expm_gap < 1e-10 && alpha_gap < 1e-14 && within(elapsed, 5.0);
    verdict(
        6,
        "displacement linearization",
        ok,
        format!(
            "max entry of D'HD - H_lin - cubic - c*1 on (6,6)={worst:.2e} (tol 1e-10), D vs series exp={expm_gap:.1e}, {elapsed:.2?}"
        ),
    );
}

#[test]
fn criterion_7_linearization_slope() {
    let t0 = Instant::now();
    let cfg = config::fig4();
    let (line, squid) = (&cfg.line, &cfg.squid);
    let phi0 = 2.067833848e-15;
    let eps = 1e-6;
    let mut worst = 0.0f64;
    for b in [0.1, 0.2, 0.3, 0.4] {
        let lin = circuit::linearize_delta_d(line, squid, FluxBias::new(b).unwrap()).unwrap();
        let up = circuit::delta_d(line, squid, b + eps).unwrap();
        let down = circuit::delta_d(line, squid, b - eps).unwrap();
        let fd = (up - down) / (2.0 * eps * phi0);
        worst = worst.max(((lin.slope - fd) / fd).abs());
    }
    let elapsed = t0.elapsed();
    let ok = worst < 1e-4 && within(elapsed, 1.0);
    verdict(
        7,
        "linearization slope",
        ok,
        format!("max relative gap to central differences={worst:.2e} (tol 1e-4), {elapsed:.2?}"),
    );
}

#[test]
fn criterion_8_array_block_sum() {
    let t0 = Instant::now();
    let dims = (3, 3);
    let cells = [
        UnitCellParams {
            eps_a: 0.02,
            ..UnitCellParams::undriven(5.0, 1.0, 0.1)
        },
        UnitCellParams {
            eps_b: 0.03,
            ..UnitCellParams::undriven(4.3, 0.8, 0.07)
        },
    ];
    let topo = ArrayTopology::new(2, [(0, 1, CouplingClass::Both)], 0.0, 0.0).unwrap();
    let h = arrays::build_array(&cells, &topo, &[dims]).unwrap();
    let full = diag::eigenvalues(&h, h.dim()).unwrap();
    let unit = |c: &UnitCellParams| {
        let u = arrays::build_unit(c, dims).unwrap();
        diag::eigenvalues(&u, u.dim()).unwrap()
    };
    let (e0, e1) = (unit(&cells[0]), unit(&cells[1]));
    let mut sums: Vec<f64> = e0.iter().flat_map(|a| e1.iter().map(move |b| a + b)).collect();
    sums.sort_by(f64::total_cmp);
    let block_gap = full.iter().zip(&sums).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);

    let j = 0.3;
    let free = UnitCellParams::undriven(5.0, 1.0, 0.0);
    let hop = ArrayTopology::new(2, [(0, 1, CouplingClass::J)], j, 0.0).unwrap();
    let hj = arrays::build_array(&[free, free], &hop, &[dims]).unwrap();
    let mode_dims = hj.dims().to_vec();
    let sector: Vec<usize> = (0..hj.dim())
        .filter(|&i| {
            let occ = fock::occupations(&mode_dims, i);
            occ[0] + occ[2] == 1 && occ[1] + occ[3] == 0
        })
        .collect();
    let split = diag::hermitian_spectrum(&hj.restrict(&sector));
    let split_gap = (split[0] - (5.0 - j)).abs().max((split[1] - (5.0 + j)).abs());

    let elapsed = t0.elapsed();
    let ok = full.len() == sums.len() && block_gap < 1e-8 && split.len() == 2 && split_gap < 1e-12 && within(elapsed, 10.0);
    verdict(
        8,
        "array block sum",
        ok,
        format!(
            "J=K=0 spectrum vs pairwise sums: max gap={block_gap:.2e} (tol 1e-8) over {} levels; a-sector {split:?} vs 5 -+ {j}, {elapsed:.2?}",
            full.len()
        ),
    );
}

#[test]
fn criterion_9_truncation_identity() {
    let t0 = Instant::now();
    let mut mismatches = Vec::new();
    let mut worst = 0.0f64;
    for d in [2usize, 5, 16] {
        let a = fock::annihilation(d).unwrap();
        let comm = fock::commutator(&a, &a.adjoint()).unwrap();
        for i in 0..d {
            for k in 0..d {
                let expected = match (i == k, i == d - 1) {
                    (true, true) => -((d - 1) as f64),
                    (true, false) => 1.0,
                    _ => 0.0,
                };
                let got = comm.get(i, k);
                if got != Complex64::new(expected, 0.0) {
                    worst = worst.max((got - expected).norm());
                    mismatches.push(format!("d={d} ({i},{k})={}", got.re));
                }
            }
        }
    }
    let elapsed = t0.elapsed();
    let ok = mismatches.is_empty() && within(elapsed, 1.0);
    verdict(
        9,
        "truncation identity (exact)",
        ok,
        format!(
            "{} entries differ from the exact pattern, largest deviation {worst:.2e}{}, {elapsed:.2?}",
            mismatches.len(),
            mismatches.first().map(|m| format!(", e.g. {m}")).unwrap_or_default()
        ),
    );
}
