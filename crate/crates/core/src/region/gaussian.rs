//! Degraded Gaussian two-way wiretap channel: `Y1 = X1 + X2 + N1`,
//! `Y2 = X1 + X2 + N2`, `Z = X1 + X2 + Ne` with `Ne > max(N1, N2)`.

use serde::{Deserialize, Serialize};

use super::bounds::Pentagon;
use super::{convex_closure, RatePoint, RateRegion, RegionKind};
use crate::channel::GaussianTwc;
use crate::error::{Error, Result};
use crate::info::Bits;

/// Fractions of each user's power spent on the cooperative-jamming part.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerSplit {
    pub alpha: f64,
    pub beta: f64,
}

impl PowerSplit {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        for (name, v) in [("alpha", alpha), ("beta", beta)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Argument(format!("{name} = {v} outside [0,1]")));
            }
        }
        Ok(Self { alpha, beta })
    }
}

fn half_log(x: f64) -> Bits {
    0.5 * x.log2()
}

fn require_degraded(g: &GaussianTwc) -> Result<()> {
    let g = GaussianTwc::new(g.p1, g.p2, g.n1, g.n2, g.ne)?;
    if !g.is_degraded() {
        return Err(Error::Precondition(format!(
            "Gaussian channel is not degraded: Ne = {} must exceed N1 = {} and N2 = {}",
            g.ne, g.n1, g.n2
        )));
    }
    Ok(())
}

/// Corner of the individual-secrecy capacity rectangle.
pub fn gaussian_capacity_corner(g: &GaussianTwc) -> Result<RatePoint> {
    require_degraded(g)?;
    let total = g.p1 + g.p2 + g.ne;
    Ok(RatePoint::new(
        half_log((g.p1 + g.n2) * (g.p2 + g.ne) / (g.n2 * total)),
        half_log((g.p2 + g.n1) * (g.p1 + g.ne) / (g.n1 * total)),
    ))
}

pub fn gaussian_capacity_individual(g: &GaussianTwc) -> Result<RateRegion> {
    Ok(RateRegion::rectangle(RegionKind::Capacity, gaussian_capacity_corner(g)?))
}

/// Inner rectangle for a given power split.
pub fn gaussian_inner_rect(g: &GaussianTwc, s: PowerSplit) -> Result<RatePoint> {
    require_degraded(g)?;
    let s = PowerSplit::new(s.alpha, s.beta)?;
    let total = g.p1 + g.p2 + g.ne;
    let (ap1, bp2) = (s.alpha * g.p1, s.beta * g.p2);
    Ok(RatePoint::new(
        half_log((g.p1 + g.n2) * (ap1 + g.p2 + g.ne) / ((ap1 + g.n2) * total)),
        half_log((g.p2 + g.n1) * (g.p1 + bp2 + g.ne) / ((bp2 + g.n1) * total)),
    ))
}

/// Outer rectangle for a given power split.
pub fn gaussian_outer_rect(g: &GaussianTwc, s: PowerSplit) -> Result<RatePoint> {
    require_degraded(g)?;
    let s = PowerSplit::new(s.alpha, s.beta)?;
    let total = g.p1 + g.p2 + g.ne;
    let (ap1, bp2) = (s.alpha * g.p1, s.beta * g.p2);
    Ok(RatePoint::new(
        half_log((ap1 + g.n2) * (bp2 + g.ne) / (g.n2 * total)),
        half_log((bp2 + g.n1) * (ap1 + g.ne) / (g.n1 * total)),
    ))
}

/// Joint-secrecy sum rate `1/2 log((P1+N2)(P2+N1) Ne / (N2 N1 (P1+P2+Ne)))`.
pub fn gaussian_joint_sumrate(g: &GaussianTwc) -> Result<Bits> {
    let g = GaussianTwc::new(g.p1, g.p2, g.n1, g.n2, g.ne)?;
    Ok(half_log((g.p1 + g.n2) * (g.p2 + g.n1) * g.ne / (g.n2 * g.n1 * (g.p1 + g.p2 + g.ne))))
}

/// Sum of the capacity corner coordinates.
pub fn gaussian_individual_sumrate(g: &GaussianTwc) -> Result<Bits> {
    gaussian_capacity_corner(g).map(|c| c.sum())
}

/// Joint minus individual sum rate, `1/2 log(Ne (P1+P2+Ne) / ((P1+Ne)(P2+Ne)))`.
/// Negative for every valid parameter set.
pub fn gaussian_sumrate_gap(g: &GaussianTwc) -> Result<Bits> {
    let g = GaussianTwc::new(g.p1, g.p2, g.n1, g.n2, g.ne)?;
    Ok(half_log(g.ne * (g.p1 + g.p2 + g.ne) / ((g.p1 + g.ne) * (g.p2 + g.ne))))
}

/// Joint-secrecy pentagon: caps `1/2 log(1 + P1/N2)`, `1/2 log(1 + P2/N1)` and the joint sum rate.
pub fn gaussian_joint_region(g: &GaussianTwc) -> Result<RateRegion> {
    let g = GaussianTwc::new(g.p1, g.p2, g.n1, g.n2, g.ne)?;
    let pent = Pentagon {
        cap1: half_log(1.0 + g.p1 / g.n2),
        cap2: half_log(1.0 + g.p2 / g.n1),
        sum: gaussian_joint_sumrate(&g)?,
    };
    convex_closure(&pent.corners(), RegionKind::InnerJoint)
}

fn split_grid(resolution: usize) -> Result<Vec<PowerSplit>> {
    if resolution < 2 {
        return Err(Error::Argument(format!("resolution must be at least 2, got {resolution}")));
    }
    let step = 1.0 / (resolution - 1) as f64;
    Ok((0..resolution)
        .flat_map(|i| (0..resolution).map(move |j| PowerSplit { alpha: i as f64 * step, beta: j as f64 * step }))
        .collect())
}

/// Union of inner rectangles over an `alpha x beta` grid, convexified.
pub fn gaussian_inner_region(g: &GaussianTwc, resolution: usize) -> Result<RateRegion> {
    let pts = split_grid(resolution)?.into_iter().map(|s| gaussian_inner_rect(g, s)).collect::<Result<Vec<_>>>()?;
    convex_closure(&pts, RegionKind::InnerIndividual)
}

/// Union of outer rectangles over an `alpha x beta` grid, convexified.
pub fn gaussian_outer_region(g: &GaussianTwc, resolution: usize) -> Result<RateRegion> {
    let pts = split_grid(resolution)?.into_iter().map(|s| gaussian_outer_rect(g, s)).collect::<Result<Vec<_>>>()?;
    convex_closure(&pts, RegionKind::OuterIndividual)
}
