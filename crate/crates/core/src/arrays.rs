//! Lattices of optomechanical-like unit cells with linear hopping between
//! neighbouring cavities (J) and neighbouring "mechanical" modes (K).
//!
//! Mode ordering is `a_0, b_0, a_1, b_1, ...`. Natural units, ℏ = 1.

use std::collections::BTreeSet;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::diag::DEFAULT_DIMENSION_CAP;
use crate::error::{Error, Result};
use crate::fock::{local_product, lowering_matrix, number_matrix, total_dim, FockOperator};
use crate::hamiltonian::TwoModeParams;

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// One unit: H_i = ω_A a†a + ω_B b†b − g a†a (b + b†) + ε_A (a + a†) + ε_B (b + b†).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitCellParams {
    pub omega_a: f64,
    pub omega_b: f64,
    pub g: f64,
    #[serde(default)]
    pub eps_a: f64,
    #[serde(default)]
    pub eps_b: f64,
}

impl UnitCellParams {
    pub fn undriven(omega_a: f64, omega_b: f64, g: f64) -> Self {
        Self {
            omega_a,
            omega_b,
            g,
            eps_a: 0.0,
            eps_b: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega_b > 0.0) {
            return Err(Error::Validation("omega_b > 0".into()));
        }
        Ok(())
    }

    pub fn two_mode(&self, dims: (usize, usize)) -> TwoModeParams {
        TwoModeParams::new(self.omega_a, self.omega_b, self.g, dims)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CouplingClass {
    J,
    K,
    Both,
}

impl CouplingClass {
    pub fn has_j(self) -> bool {
        matches!(self, CouplingClass::J | CouplingClass::Both)
    }

    pub fn has_k(self) -> bool {
        matches!(self, CouplingClass::K | CouplingClass::Both)
    }
}

/// Undirected edge, stored with `low < high`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub low: usize,
    pub high: usize,
    pub class: CouplingClass,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArrayTopology {
    n_sites: usize,
    edges: Vec<Edge>,
    /// Cavity hopping J.
    pub hop_a: f64,
    /// Mechanical-mode hopping K.
    pub hop_b: f64,
}

impl ArrayTopology {
    /// Validates and normalizes `(site, site, class)` triples.
    pub fn new(
        n_sites: usize,
        edges: impl IntoIterator<Item = (usize, usize, CouplingClass)>,
        hop_a: f64,
        hop_b: f64,
    ) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (i, j, class) in edges {
            if i >= n_sites || j >= n_sites {
                return Err(Error::TopologyMismatch(format!(
                    "edge ({i}, {j}) outside {n_sites} sites"
                )));
            }
            if i == j {
                return Err(Error::TopologyMismatch(format!("self-loop at site {i}")));
            }
            let (low, high) = (i.min(j), i.max(j));
            if !seen.insert((low, high)) {
                return Err(Error::TopologyMismatch(format!("duplicate edge ({low}, {high})")));
            }
            out.push(Edge { low, high, class });
        }
        out.sort();
        Ok(Self {
            n_sites,
            edges: out,
            hop_a,
            hop_b,
        })
    }

    pub fn with_hopping(mut self, hop_a: f64, hop_b: f64) -> Self {
        self.hop_a = hop_a;
        self.hop_b = hop_b;
        self
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }
}

/// Which resonators of neighbouring cells are linked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Layout {
    /// Only the B ("mechanical") modes: J = 0, K > 0.
    #[serde(alias = "mech")]
    MechCoupled,
    /// Only the A ("optical") modes: K = 0, J > 0.
    #[serde(alias = "opt")]
    OptCoupled,
    #[serde(alias = "both")]
    BothCoupled,
}

impl Layout {
    pub fn class(self) -> CouplingClass {
        match self {
            Layout::MechCoupled => CouplingClass::K,
            Layout::OptCoupled => CouplingClass::J,
            Layout::BothCoupled => CouplingClass::Both,
        }
    }
}

impl std::str::FromStr for Layout {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mech" | "mechcoupled" => Ok(Layout::MechCoupled),
            "opt" | "optcoupled" => Ok(Layout::OptCoupled),
            "both" | "bothcoupled" => Ok(Layout::BothCoupled),
            other => Err(Error::Validation(format!(
                "unknown layout {other:?} (expected mech, opt or both)"
            ))),
        }
    }
}

/// Nearest-neighbour edges `(i, i+1)`; with `chain = false` the ends are
/// joined into a ring when there are at least three sites. Hopping
/// strengths start at zero, see [`ArrayTopology::with_hopping`].
pub fn topology_from_layout(layout: Layout, n_sites: usize, chain: bool) -> ArrayTopology {
    let class = layout.class();
    let mut edges: Vec<(usize, usize, CouplingClass)> =
        (1..n_sites).map(|i| (i - 1, i, class)).collect();
    if !chain && n_sites >= 3 {
        edges.push((0, n_sites - 1, class));
    }
    ArrayTopology::new(n_sites, edges, 0.0, 0.0).expect("generated edges are valid")
}

pub fn build_unit(p: &UnitCellParams, dims: (usize, usize)) -> Result<FockOperator> {
    p.validate()?;
    build_array(
        std::slice::from_ref(p),
        &ArrayTopology::new(1, [], 0.0, 0.0)?,
        &[dims],
    )
}

/// H = Σ H_i + J Σ⟨ij⟩ (a_i†a_j + h.c.) + K Σ⟨ij⟩ (b_i†b_j + h.c.).
///
/// `dims` gives `(dim_a, dim_b)` per cell; a single entry is reused for
/// every cell.
pub fn build_array(
    cells: &[UnitCellParams],
    topo: &ArrayTopology,
    dims: &[(usize, usize)],
) -> Result<FockOperator> {
    build_array_with_cap(cells, topo, dims, DEFAULT_DIMENSION_CAP)
}

pub fn build_array_with_cap(
    cells: &[UnitCellParams],
    topo: &ArrayTopology,
    dims: &[(usize, usize)],
    cap: usize,
) -> Result<FockOperator> {
    let n = topo.n_sites();
    if cells.len() != n {
        return Err(Error::TopologyMismatch(format!(
            "{} cells for {n} sites",
            cells.len()
        )));
    }
    let per_cell: Vec<(usize, usize)> = match dims.len() {
        1 => vec![dims[0]; n],
        m if m == n => dims.to_vec(),
        m => {
            return Err(Error::TopologyMismatch(format!(
                "{m} dimension pairs for {n} sites"
            )))
        }
    };
    let mode_dims: Vec<usize> = per_cell.iter().flat_map(|&(a, b)| [a, b]).collect();
    if let Some(&d) = mode_dims.iter().find(|&&d| d < 2) {
        return Err(Error::DimensionMismatch(format!("mode truncation must be >= 2, got {d}")));
    }
    // multiply with overflow guard before allocating anything
    let total = mode_dims
        .iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d))
        .unwrap_or(usize::MAX);
    if total > cap {
        return Err(Error::DimensionTooLarge { dim: total, cap });
    }
    for cell in cells {
        cell.validate()?;
    }

    let mut h = FockOperator::zeros(&mode_dims)?;
    let lowering: Vec<_> = mode_dims.iter().map(|&d| lowering_matrix(d)).collect();
    let numbers: Vec<_> = mode_dims.iter().map(|&d| number_matrix(d)).collect();
    let quadrature: Vec<_> = lowering.iter().map(|l| l + l.adjoint()).collect();

    for (i, cell) in cells.iter().enumerate() {
        let (ma, mb) = (2 * i, 2 * i + 1);
        h.add_assign_scaled(&local_product(&mode_dims, &[(ma, &numbers[ma])]), re(cell.omega_a));
        h.add_assign_scaled(&local_product(&mode_dims, &[(mb, &numbers[mb])]), re(cell.omega_b));
        if cell.g != 0.0 {
            let term = local_product(&mode_dims, &[(ma, &numbers[ma]), (mb, &quadrature[mb])]);
            h.add_assign_scaled(&term, re(-cell.g));
        }
        if cell.eps_a != 0.0 {
            h.add_assign_scaled(&local_product(&mode_dims, &[(ma, &quadrature[ma])]), re(cell.eps_a));
        }
        if cell.eps_b != 0.0 {
            h.add_assign_scaled(&local_product(&mode_dims, &[(mb, &quadrature[mb])]), re(cell.eps_b));
        }
    }

    for edge in topo.edges() {
        let mut hop = |offset: usize, strength: f64| {
            if strength == 0.0 {
                return;
            }
            let (mi, mj) = (2 * edge.low + offset, 2 * edge.high + offset);
            let raise_i = lowering[mi].adjoint();
            let term = local_product(&mode_dims, &[(mi, &raise_i), (mj, &lowering[mj])]);
            let conj = term.adjoint();
            h.add_assign_scaled(&term, re(strength));
            h.add_assign_scaled(&conj, re(strength));
        };
        if edge.class.has_j() {
            hop(0, topo.hop_a);
        }
        if edge.class.has_k() {
            hop(1, topo.hop_b);
        }
    }
    debug_assert_eq!(h.dim(), total_dim(&mode_dims));
    Ok(h)
}

/// Array section of the device config.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArraySpec {
    pub layout: Layout,
    pub sites: usize,
    /// Join the chain ends into a ring.
    #[serde(default)]
    pub ring: bool,
    #[serde(rename = "J", default)]
    pub hop_a: f64,
    #[serde(rename = "K", default)]
    pub hop_b: f64,
    /// One entry per site, or a single entry shared by all sites.
    pub cells: Vec<UnitCellParams>,
    #[serde(default = "default_cell_dims")]
    pub dims: (usize, usize),
}

fn default_cell_dims() -> (usize, usize) {
    (3, 3)
}

impl ArraySpec {
    pub fn topology(&self) -> ArrayTopology {
        topology_from_layout(self.layout, self.sites, !self.ring).with_hopping(self.hop_a, self.hop_b)
    }

    pub fn site_cells(&self) -> Result<Vec<UnitCellParams>> {
        match self.cells.len() {
            1 => Ok(vec![self.cells[0]; self.sites]),
            n if n == self.sites => Ok(self.cells.clone()),
            n => Err(Error::TopologyMismatch(format!("{n} cells for {} sites", self.sites))),
        }
    }

    pub fn build(&self) -> Result<FockOperator> {
        build_array(&self.site_cells()?, &self.topology(), &[self.dims])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diag::eigenvalues;
    use crate::fock::commutator;
    use crate::hamiltonian::build_optomech;

    #[test]
    fn layouts_map_to_classes() {
        let t = topology_from_layout(Layout::MechCoupled, 3, true);
        let edges: Vec<_> = t.edges().iter().map(|e| (e.low, e.high, e.class)).collect();
        assert_eq!(edges, vec![(0, 1, CouplingClass::K), (1, 2, CouplingClass::K)]);
        let t = topology_from_layout(Layout::OptCoupled, 2, true);
        assert_eq!(t.edges(), &[Edge { low: 0, high: 1, class: CouplingClass::J }]);
        assert!(topology_from_layout(Layout::BothCoupled, 1, true).edges().is_empty());
        let ring = topology_from_layout(Layout::BothCoupled, 4, false);
        assert_eq!(ring.edges().len(), 4);
        assert!(ring.edges().iter().all(|e| e.low < e.high));
    }

    #[test]
    fn topology_validation() {
        assert!(matches!(
            ArrayTopology::new(2, [(0, 2, CouplingClass::J)], 1.0, 0.0),
            Err(Error::TopologyMismatch(_))
        ));
        assert!(ArrayTopology::new(2, [(1, 1, CouplingClass::J)], 1.0, 0.0).is_err());
        assert!(ArrayTopology::new(2, [(0, 1, CouplingClass::J), (1, 0, CouplingClass::K)], 1.0, 0.0).is_err());
        let t = ArrayTopology::new(3, [(2, 0, CouplingClass::K)], 0.0, 1.0).unwrap();
        assert_eq!(t.edges()[0], Edge { low: 0, high: 2, class: CouplingClass::K });
    }

    #[test]
    fn unit_reduces_to_optomech() {
        let cell = UnitCellParams::undriven(5.0, 1.0, 0.2);
        let unit = build_unit(&cell, (3, 4)).unwrap();
        assert_eq!(unit, build_optomech(&cell.two_mode((3, 4))).unwrap());
        let driven = UnitCellParams { eps_b: 0.3, ..cell };
        let diff = build_unit(&driven, (3, 4)).unwrap().sub(&unit).unwrap();
        for i in 0..diff.dim() {
            for j in 0..diff.dim() {
                if diff.get(i, j).norm() != 0.0 {
                    let (oi, oj) = (diff.occupations(i), diff.occupations(j));
                    assert_eq!(oi[0], oj[0]);
                    assert_eq!((oi[1] as i64 - oj[1] as i64).abs(), 1);
                }
            }
        }
        let free = build_unit(&UnitCellParams::undriven(2.0, 1.0, 0.0), (2, 3)).unwrap();
        assert_eq!(eigenvalues(&free, 6).unwrap(), vec![0.0, 1.0, 2.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn hopping_acts_on_the_right_modes() {
        let cells = vec![UnitCellParams::undriven(5.0, 1.0, 0.0); 2];
        let dims = [(2, 2)];
        let topo_j = topology_from_layout(Layout::OptCoupled, 2, true).with_hopping(0.3, 0.7);
        let base = build_array(&cells, &topology_from_layout(Layout::OptCoupled, 2, true), &dims).unwrap();
        let diff = build_array(&cells, &topo_j, &dims).unwrap().sub(&base).unwrap();
        for i in 0..diff.dim() {
            for j in 0..diff.dim() {
                if diff.get(i, j).norm() != 0.0 {
                    let (oi, oj) = (diff.occupations(i), diff.occupations(j));
                    // b occupations untouched by J edges
                    assert_eq!((oi[1], oi[3]), (oj[1], oj[3]));
                    assert!((diff.get(i, j).re - 0.3).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn array_errors() {
        let cells = vec![UnitCellParams::undriven(5.0, 1.0, 0.1); 2];
        let topo = topology_from_layout(Layout::BothCoupled, 3, true);
        assert!(matches!(build_array(&cells, &topo, &[(3, 3)]), Err(Error::TopologyMismatch(_))));
        let cells4 = vec![UnitCellParams::undriven(5.0, 1.0, 0.1); 4];
        let topo4 = topology_from_layout(Layout::BothCoupled, 4, true);
        assert!(matches!(
            build_array(&cells4, &topo4, &[(3, 3)]),
            Err(Error::DimensionTooLarge { dim: 6561, cap: 4096 })
        ));
        assert!(build_array(&cells4, &topo4, &[(3, 3), (3, 3)]).is_err());
    }

    #[test]
    fn undriven_uncoupled_array_conserves_excitations() {
        let cells = vec![UnitCellParams::undriven(4.0, 1.0, 0.0); 3];
        let topo = topology_from_layout(Layout::BothCoupled, 3, false).with_hopping(0.2, 0.1);
        let h = build_array(&cells, &topo, &[(2, 3)]).unwrap();
        assert!(h.is_hermitian());
        let dims = h.dims().to_vec();
        let mut total = FockOperator::zeros(&dims).unwrap();
        for (k, &d) in dims.iter().enumerate() {
            total = total.add(&crate::fock::number(d).unwrap().embed(k, &dims).unwrap()).unwrap();
        }
        assert!(commutator(&h, &total).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn spec_from_json() {
        let spec: ArraySpec = serde_json::from_str(
            r#"{"layout": "both", "sites": 2, "J": 0.1, "K": 0.05,
                "cells": [{"omega_a": 5.0, "omega_b": 1.0, "g": 0.1}]}"#,
        )
        .unwrap();
        assert_eq!(spec.dims, (3, 3));
        assert_eq!(spec.site_cells().unwrap().len(), 2);
        assert_eq!(spec.build().unwrap().dim(), 81);
    }
}
