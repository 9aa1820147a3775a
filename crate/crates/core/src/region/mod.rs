//! Secrecy rate regions.
//!
//! A [`RateRegion`] is stored as its Pareto frontier: the vertices of the
//! upper-right boundary of a convex, downward-closed subset of the
//! non-negative quadrant. Every rate pair produced by a bound evaluator
//! stands for the whole rectangle `[0, r1s] x [0, r2s]`, so the region of a
//! set of points is the downward closure of their convex hull.

mod bounds;
mod closed_form;
mod export;
mod gaussian;
mod search;

pub use bounds::{
    inner_rect_individual, inner_rect_individual_raw, inner_rect_symmetric_output, input_joint,
    joint_pentagon_symmetric, outer_rect_theorem3, outer_rect_theorem3_from_joint, outer_rect_time_shared,
    product_inputs_joint, reliability_rect, BoundPair, Pentagon, PrefixedInputs, Theorem3Auxiliaries,
    TimeSharedInputs,
};
pub use closed_form::{closed_form_binary, mod2_regions, Mod2Regions};
pub use export::{format_sig, region_to_json, regions_to_csv};
pub use gaussian::{
    gaussian_capacity_corner, gaussian_capacity_individual, gaussian_individual_sumrate, gaussian_inner_rect,
    gaussian_inner_region, gaussian_joint_region, gaussian_joint_sumrate, gaussian_outer_rect,
    gaussian_outer_region, gaussian_sumrate_gap, PowerSplit,
};
pub use search::{
    inner_region_individual, inner_region_joint_symmetric, outer_region_individual, reliability_region, OuterClass,
    PrefixMode, SearchConfig,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A secrecy-rate pair in bits per channel use. Both coordinates are
/// clamped to be non-negative on construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatePoint {
    pub r1s: f64,
    pub r2s: f64,
}

impl RatePoint {
    pub fn new(r1s: f64, r2s: f64) -> Self {
        Self { r1s: r1s.max(0.0), r2s: r2s.max(0.0) }
    }

    pub fn origin() -> Self {
        Self { r1s: 0.0, r2s: 0.0 }
    }

    pub fn sum(&self) -> f64 {
        self.r1s + self.r2s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RegionKind {
    InnerIndividual,
    InnerJoint,
    OuterIndividual,
    Capacity,
    Reliability,
}

impl RegionKind {
    /// `(secrecy notion, bound)` labels used in exported files.
    pub fn labels(&self) -> (&'static str, &'static str) {
        match self {
            Self::InnerIndividual => ("individual", "inner"),
            Self::InnerJoint => ("joint", "inner"),
            Self::OuterIndividual => ("individual", "outer"),
            Self::Capacity => ("individual", "capacity"),
            Self::Reliability => ("none", "reliability"),
        }
    }
}

/// Which input distribution produced a frontier vertex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Generator {
    pub descriptor: String,
    pub point: RatePoint,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateRegion {
    pub kind: RegionKind,
    /// Strictly increasing `r1s`, strictly decreasing `r2s`, concave.
    pub frontier: Vec<RatePoint>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<Generator>,
}

impl RateRegion {
    /// Axis-aligned rectangle `[0, r1s] x [0, r2s]`.
    pub fn rectangle(kind: RegionKind, corner: RatePoint) -> Self {
        Self { kind, frontier: closure_frontier(&[(corner.r1s, corner.r2s)]), generators: Vec::new() }
    }

    pub fn max_r1s(&self) -> f64 {
        self.frontier.last().map_or(0.0, |p| p.r1s)
    }

    pub fn max_r2s(&self) -> f64 {
        self.frontier.first().map_or(0.0, |p| p.r2s)
    }

    pub fn max_sum(&self) -> f64 {
        self.frontier.iter().map(RatePoint::sum).fold(0.0, f64::max)
    }

    /// Largest `r2s` in the region at the given `r1s`, or `None` past the region's extent.
    pub fn max_r2s_at(&self, r1s: f64) -> Option<f64> {
        let first = self.frontier.first()?;
        let last = self.frontier.last()?;
        if r1s < 0.0 || r1s > last.r1s {
            return None;
        }
        if r1s <= first.r1s {
            return Some(first.r2s);
        }
        for w in self.frontier.windows(2) {
            let (a, b) = (w[0], w[1]);
            if r1s <= b.r1s {
                let t = (r1s - a.r1s) / (b.r1s - a.r1s);
                return Some(a.r2s + t * (b.r2s - a.r2s));
            }
        }
        Some(last.r2s)
    }

    /// Boundary polyline from `(0, max r2s)` through the frontier to `(max r1s, 0)`.
    pub fn boundary(&self) -> Vec<(f64, f64)> {
        let mut pts = Vec::with_capacity(self.frontier.len() + 2);
        let push = |pts: &mut Vec<(f64, f64)>, p: (f64, f64)| {
            if pts.last() != Some(&p) {
                pts.push(p);
            }
        };
        push(&mut pts, (0.0, self.max_r2s()));
        for p in &self.frontier {
            push(&mut pts, (p.r1s, p.r2s));
        }
        push(&mut pts, (self.max_r1s(), 0.0));
        pts
    }
}

/// Convex closure of the union of the rectangles spanned by `points`.
pub fn convex_closure(points: &[RatePoint], kind: RegionKind) -> Result<RateRegion> {
    if points.is_empty() {
        return Err(Error::Argument("convex_closure needs at least one point".into()));
    }
    let raw: Vec<(f64, f64)> = points.iter().map(|p| (p.r1s, p.r2s)).collect();
    Ok(RateRegion { kind, frontier: closure_frontier(&raw), generators: Vec::new() })
}

/// Like [`convex_closure`], but for raw bound values that may be negative.
///
/// The hull is taken before intersecting with the quadrant, so a point with a
/// negative coordinate still counts through mixtures with other points
/// (time sharing) but never on its own.
pub fn convex_closure_raw(points: &[BoundPair], kind: RegionKind) -> Result<RateRegion> {
    if points.is_empty() {
        return Err(Error::Argument("convex_closure needs at least one point".into()));
    }
    let raw: Vec<(f64, f64)> = points.iter().map(|p| (p.r1s, p.r2s)).collect();
    Ok(RateRegion { kind, frontier: closure_frontier(&raw), generators: Vec::new() })
}

fn cross(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Frontier of `downward closure(conv(points))` intersected with the quadrant.
pub(crate) fn closure_frontier(points: &[(f64, f64)]) -> Vec<RatePoint> {
    let mut pts: Vec<(f64, f64)> = points.iter().copied().filter(|p| p.0.is_finite() && p.1.is_finite()).collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    pts.dedup();
    // upper hull, left to right
    let mut hull: Vec<(f64, f64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) >= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    // a vertical run at the left end leaves its lower points first; drop them
    let peak = hull
        .iter()
        .enumerate()
        .fold(0, |best, (i, p)| if p.1 >= hull[best].1 { i } else { best });
    let chain = &hull[peak.min(hull.len().saturating_sub(1))..];
    if chain.is_empty() {
        return vec![RatePoint::origin()];
    }

    // clip the monotone chain to x >= 0, y >= 0
    let mut out: Vec<(f64, f64)> = Vec::new();
    let inside = |p: (f64, f64)| p.0 >= 0.0 && p.1 >= 0.0;
    if chain.len() == 1 {
        if inside(chain[0]) {
            out.push(chain[0]);
        }
    } else {
        for w in chain.windows(2) {
            let (a, b) = (w[0], w[1]);
            // parametric clip of segment a->b against x>=0 and y>=0
            let (mut t0, mut t1) = (0.0f64, 1.0f64);
            let mut empty = false;
            for (pa, pb) in [(a.0, b.0), (a.1, b.1)] {
                let d = pb - pa;
                if d == 0.0 {
                    if pa < 0.0 {
                        empty = true;
                    }
                } else {
                    let t = -pa / d;
                    if d > 0.0 {
                        t0 = t0.max(t);
                    } else {
                        t1 = t1.min(t);
                    }
                }
            }
            if empty || t0 > t1 {
                continue;
            }
            let at = |t: f64| {
                if t == 0.0 {
                    a
                } else if t == 1.0 {
                    b
                } else {
                    ((a.0 + t * (b.0 - a.0)).max(0.0), (a.1 + t * (b.1 - a.1)).max(0.0))
                }
            };
            for p in [at(t0), at(t1)] {
                if out.last() != Some(&p) {
                    out.push(p);
                }
            }
        }
    }
    if out.is_empty() {
        return vec![RatePoint::origin()];
    }
    // a clipped segment can touch the quadrant in a single point on an axis
    out.dedup_by(|b, a| a.0 >= b.0 || a.1 <= b.1);
    out.into_iter().map(|(x, y)| RatePoint { r1s: x, r2s: y }).collect()
}

/// Is `pt` inside the region?
pub fn region_contains(rg: &RateRegion, pt: RatePoint) -> bool {
    region_contains_within(rg, pt, 0.0)
}

/// Is `pt - (tol, tol)` inside the region?
pub fn region_contains_within(rg: &RateRegion, pt: RatePoint, tol: f64) -> bool {
    let shifted = RatePoint::new(pt.r1s - tol, pt.r2s - tol);
    match rg.max_r2s_at(shifted.r1s) {
        Some(cap) => shifted.r2s <= cap,
        None => false,
    }
}

/// `a` is a subset of `b` up to `tol` (checked on the frontier vertices of `a`).
pub fn region_subset(a: &RateRegion, b: &RateRegion, tol: f64) -> bool {
    a.frontier.iter().all(|&p| region_contains_within(b, p, tol))
}

/// Area of the region under its frontier in the non-negative quadrant.
pub fn region_area(rg: &RateRegion) -> f64 {
    let Some(first) = rg.frontier.first() else { return 0.0 };
    let mut area = first.r1s * first.r2s;
    for w in rg.frontier.windows(2) {
        area += (w[1].r1s - w[0].r1s) * (w[0].r2s + w[1].r2s) / 2.0;
    }
    area
}

fn point_segment_distance(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 { 0.0 } else { (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0) };
    let (qx, qy) = (a.0 + t * dx, a.1 + t * dy);
    ((p.0 - qx).powi(2) + (p.1 - qy).powi(2)).sqrt()
}

fn polyline_distance(p: (f64, f64), line: &[(f64, f64)]) -> f64 {
    if line.len() == 1 {
        return point_segment_distance(p, line[0], line[0]);
    }
    line.windows(2).map(|w| point_segment_distance(p, w[0], w[1])).fold(f64::INFINITY, f64::min)
}

fn directed_hausdorff(from: &[(f64, f64)], to: &[(f64, f64)]) -> f64 {
    const SUBDIV: usize = 64;
    let mut worst = 0.0f64;
    let mut probe = |p: (f64, f64)| worst = worst.max(polyline_distance(p, to));
    if from.len() == 1 {
        probe(from[0]);
    }
    for w in from.windows(2) {
        for k in 0..=SUBDIV {
            let t = k as f64 / SUBDIV as f64;
            probe((w[0].0 + t * (w[1].0 - w[0].0), w[0].1 + t * (w[1].1 - w[0].1)));
        }
    }
    worst
}

/// Hausdorff distance between the two boundary polylines (axes segments
/// included), evaluated on a dense sampling of each segment.
pub fn hausdorff_distance(a: &RateRegion, b: &RateRegion) -> f64 {
    let (pa, pb) = (a.boundary(), b.boundary());
    directed_hausdorff(&pa, &pb).max(directed_hausdorff(&pb, &pa))
}
