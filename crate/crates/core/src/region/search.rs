//! Region sweeps: evaluate a bound over a grid of input distributions and take
//! the convex closure of the results.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bounds::{
    inner_rect_individual_raw, joint_pentagon_symmetric, outer_pair, product_inputs_joint, reliability_rect,
    BoundPair, PrefixedInputs,
};
use super::{closure_frontier, Generator, RatePoint, RateRegion, RegionKind};
use crate::channel::{check_stochastic_degradedness, DiscreteTwc, StrongOutput, DEFAULT_DEGRADEDNESS_TOL};
use crate::error::{Error, Result};
use crate::info::{ConditionalKernel, Pmf};
use crate::numeric::{simplex_grid, simplex_grid_len};

/// How the auxiliaries `U1`, `U2` are searched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrefixMode {
    /// `U1 = X1`, `U2 = X2`.
    Identity,
    /// `|Ui| = |Xi| + 1` with `p(ui)` and every row of `p(xi|ui)` on a grid of
    /// `kernel_resolution` points per axis, in addition to the identity sweep.
    Full { kernel_resolution: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Grid points per probability axis (`1 / (resolution - 1)` spacing).
    pub resolution: usize,
    pub prefix: PrefixMode,
    /// Polish the best grid point in 16 weight directions by local search.
    pub refine: bool,
    /// Upper limit on bound evaluations; larger sweeps fail with a capacity error.
    pub max_evaluations: u128,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { resolution: 101, prefix: PrefixMode::Identity, refine: false, max_evaluations: 20_000_000 }
    }
}

impl SearchConfig {
    pub fn with_resolution(resolution: usize) -> Self {
        Self { resolution, ..Self::default() }
    }
}

/// Channel classes for which the outer bound is proved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OuterClass {
    SameOutput,
    EavesdropperDegraded,
}

type Params = Vec<Vec<f64>>;

/// Cartesian product of simplex grids, last factor varying fastest.
struct Space {
    names: Vec<String>,
    grids: Vec<Vec<Vec<f64>>>,
    step: f64,
}

impl Space {
    fn new(factors: Vec<(String, usize)>, resolution: usize) -> Self {
        let (names, grids) = factors.into_iter().map(|(n, cells)| (n, simplex_grid(cells, resolution))).unzip();
        Self { names, grids, step: 1.0 / (resolution - 1) as f64 }
    }

    fn count(factors: &[usize], resolution: usize) -> u128 {
        factors.iter().map(|&c| simplex_grid_len(c, resolution)).product()
    }

    fn len(&self) -> usize {
        self.grids.iter().map(Vec::len).product()
    }

    fn at(&self, mut i: usize) -> Params {
        let mut out: Params = Vec::with_capacity(self.grids.len());
        for g in self.grids.iter().rev() {
            out.push(g[i % g.len()].clone());
            i /= g.len();
        }
        out.reverse();
        out
    }

    fn describe(&self, p: &Params) -> String {
        self.names
            .iter()
            .zip(p)
            .map(|(n, v)| {
                let vals: Vec<String> = v.iter().map(|x| format!("{x:.6}")).collect();
                format!("{n}=[{}]", vals.join(","))
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

enum ParamRef {
    Grid(usize),
    Explicit(Params),
}

struct Candidate {
    space: usize,
    params: ParamRef,
    points: Vec<BoundPair>,
}

fn check_resolution(r: usize, what: &str) -> Result<()> {
    if r < 2 {
        return Err(Error::Argument(format!("{what} must be at least 2, got {r}")));
    }
    Ok(())
}

fn check_budget(required: u128, cfg: &SearchConfig) -> Result<()> {
    if required > cfg.max_evaluations {
        return Err(Error::Capacity {
            what: "region sweep evaluations".into(),
            required,
            limit: cfg.max_evaluations,
        });
    }
    Ok(())
}

fn pmf1(v: &[f64]) -> Pmf {
    Pmf::from_parts(vec![v.len()], v.to_vec())
}

fn score(points: &[BoundPair], lambda: f64, clamp: bool) -> f64 {
    points
        .iter()
        .map(|p| {
            let (a, b) = if clamp { (p.r1s.max(0.0), p.r2s.max(0.0)) } else { (p.r1s, p.r2s) };
            lambda * a + (1.0 - lambda) * b
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Pairwise mass transfers within each simplex, halving the step when stuck.
fn coordinate_ascent<F>(start: Params, step0: f64, lambda: f64, clamp: bool, eval: &F) -> Option<(Params, Vec<BoundPair>)>
where
    F: Fn(&Params) -> Result<Vec<BoundPair>>,
{
    let mut cur = start;
    let mut cur_pts = eval(&cur).ok()?;
    let mut cur_score = score(&cur_pts, lambda, clamp);
    let mut step = step0;
    let mut rounds = 0;
    while step > 1e-6 && rounds < 400 {
        rounds += 1;
        let mut improved = false;
        for s in 0..cur.len() {
            let cells = cur[s].len();
            for i in 0..cells {
                for j in 0..cells {
                    if i == j || cur[s][i] <= 0.0 {
                        continue;
                    }
                    let d = step.min(cur[s][i]);
                    let mut next = cur.clone();
                    next[s][i] -= d;
                    next[s][j] += d;
                    if let Ok(pts) = eval(&next) {
                        let sc = score(&pts, lambda, clamp);
                        if sc > cur_score + 1e-14 {
                            cur = next;
                            cur_pts = pts;
                            cur_score = sc;
                            improved = true;
                        }
                    }
                }
            }
        }
        if !improved {
            step /= 2.0;
        }
    }
    Some((cur, cur_pts))
}

const REFINE_DIRECTIONS: usize = 15;

fn run_sweep<F>(kind: RegionKind, spaces: &[Space], clamp: bool, cfg: &SearchConfig, eval: F) -> Result<RateRegion>
where
    F: Fn(usize, &Params) -> Result<Vec<BoundPair>> + Sync,
{
    let mut cands: Vec<Candidate> = Vec::new();
    for (s, space) in spaces.iter().enumerate() {
        let batch: Vec<Candidate> = (0..space.len())
            .into_par_iter()
            .map(|i| eval(s, &space.at(i)).map(|points| Candidate { space: s, params: ParamRef::Grid(i), points }))
            .collect::<Result<_>>()?;
        cands.extend(batch);
    }

    if cfg.refine && !cands.is_empty() {
        let extra: Vec<Candidate> = (0..=REFINE_DIRECTIONS)
            .into_par_iter()
            .filter_map(|k| {
                let lambda = k as f64 / REFINE_DIRECTIONS as f64;
                let best = cands
                    .iter()
                    .max_by(|a, b| score(&a.points, lambda, clamp).total_cmp(&score(&b.points, lambda, clamp)))?;
                let space = &spaces[best.space];
                let start = match &best.params {
                    ParamRef::Grid(i) => space.at(*i),
                    ParamRef::Explicit(p) => p.clone(),
                };
                let (params, points) =
                    coordinate_ascent(start, space.step, lambda, clamp, &|p: &Params| eval(best.space, p))?;
                Some(Candidate { space: best.space, params: ParamRef::Explicit(params), points })
            })
            .collect();
        cands.extend(extra);
    }

    let view = |p: &BoundPair| if clamp { (p.r1s.max(0.0), p.r2s.max(0.0)) } else { (p.r1s, p.r2s) };
    let raw: Vec<(f64, f64)> = cands.iter().flat_map(|c| c.points.iter().map(view)).collect();
    let frontier = closure_frontier(&raw);
    let generators = frontier
        .iter()
        .filter_map(|v| {
            let c = cands.iter().find(|c| c.points.iter().any(|p| view(p) == (v.r1s, v.r2s)))?;
            let space = &spaces[c.space];
            let descriptor = match &c.params {
                ParamRef::Grid(i) => space.describe(&space.at(*i)),
                ParamRef::Explicit(p) => space.describe(p),
            };
            Some(Generator { descriptor, point: *v })
        })
        .collect();
    Ok(RateRegion { kind, frontier, generators })
}

fn identity_space(ch: &DiscreteTwc, resolution: usize) -> Space {
    Space::new(vec![("p_x1".into(), ch.size_x1()), ("p_x2".into(), ch.size_x2())], resolution)
}

fn identity_count(ch: &DiscreteTwc, resolution: usize) -> u128 {
    Space::count(&[ch.size_x1(), ch.size_x2()], resolution)
}

/// Individual-secrecy inner region: union of inner rectangles over the
/// configured auxiliary search, convexified.
pub fn inner_region_individual(ch: &DiscreteTwc, cfg: &SearchConfig) -> Result<RateRegion> {
    check_resolution(cfg.resolution, "resolution")?;
    let (nx1, nx2) = (ch.size_x1(), ch.size_x2());
    let mut spaces = vec![identity_space(ch, cfg.resolution)];
    let mut required = identity_count(ch, cfg.resolution);
    if let PrefixMode::Full { kernel_resolution: r } = cfg.prefix {
        check_resolution(r, "kernel resolution")?;
        let mut shape = vec![nx1 + 1];
        shape.extend(std::iter::repeat_n(nx1, nx1 + 1));
        shape.push(nx2 + 1);
        shape.extend(std::iter::repeat_n(nx2, nx2 + 1));
        required += Space::count(&shape, r);
        check_budget(required, cfg)?;
        let mut factors = vec![("p_u1".to_string(), nx1 + 1)];
        factors.extend((0..=nx1).map(|u| (format!("p_x1|u1={u}"), nx1)));
        factors.push(("p_u2".to_string(), nx2 + 1));
        factors.extend((0..=nx2).map(|u| (format!("p_x2|u2={u}"), nx2)));
        spaces.push(Space::new(factors, r));
    }
    check_budget(required, cfg)?;
    run_sweep(RegionKind::InnerIndividual, &spaces, true, cfg, |s, p| {
        let inputs = if s == 0 {
            PrefixedInputs::identity(pmf1(&p[0]), pmf1(&p[1]))
        } else {
            let k1 = ConditionalKernel::from_rows(nx1 + 1, p[1..nx1 + 2].to_vec())?;
            let o = nx1 + 2;
            let k2 = ConditionalKernel::from_rows(nx2 + 1, p[o + 1..o + nx2 + 2].to_vec())?;
            PrefixedInputs::new(pmf1(&p[0]), pmf1(&p[o]), k1, k2)?
        };
        Ok(vec![inner_rect_individual_raw(ch, &inputs)?])
    })
}

/// Joint-secrecy inner region of a same-output channel: union of pentagons
/// over independent inputs, convexified.
pub fn inner_region_joint_symmetric(ch: &DiscreteTwc, cfg: &SearchConfig) -> Result<RateRegion> {
    check_resolution(cfg.resolution, "resolution")?;
    if !ch.is_same_output() {
        return Err(Error::Precondition("channel is not same-output (Y1 = Y2 = Z)".into()));
    }
    check_budget(identity_count(ch, cfg.resolution), cfg)?;
    let spaces = [identity_space(ch, cfg.resolution)];
    run_sweep(RegionKind::InnerJoint, &spaces, true, cfg, |_, p| {
        let pent = joint_pentagon_symmetric(ch, &pmf1(&p[0]), &pmf1(&p[1]))?;
        Ok(pent.corners().into_iter().map(|c| BoundPair { r1s: c.r1s, r2s: c.r2s }).collect())
    })
}

/// Reliability region with independent inputs (no secrecy constraint).
pub fn reliability_region(ch: &DiscreteTwc, cfg: &SearchConfig) -> Result<RateRegion> {
    check_resolution(cfg.resolution, "resolution")?;
    check_budget(identity_count(ch, cfg.resolution), cfg)?;
    let spaces = [identity_space(ch, cfg.resolution)];
    run_sweep(RegionKind::Reliability, &spaces, true, cfg, |_, p| {
        let r: RatePoint = reliability_rect(ch, &pmf1(&p[0]), &pmf1(&p[1]))?;
        Ok(vec![BoundPair { r1s: r.r1s, r2s: r.r2s }])
    })
}

fn check_outer_class(ch: &DiscreteTwc, class: OuterClass) -> Result<()> {
    match class {
        OuterClass::SameOutput if !ch.is_same_output() => {
            Err(Error::Precondition("channel is not same-output (Y1 = Y2 = Z)".into()))
        }
        OuterClass::SameOutput => Ok(()),
        OuterClass::EavesdropperDegraded => {
            for (strong, name) in [(StrongOutput::Y1, "Y1"), (StrongOutput::Y2, "Y2")] {
                let v = check_stochastic_degradedness(ch, strong, DEFAULT_DEGRADEDNESS_TOL)?;
                if !v.feasible {
                    return Err(Error::Precondition(format!(
                        "Z is not a degraded version of {name} (best residual {:.3e})",
                        v.residual
                    )));
                }
            }
            Ok(())
        }
    }
}

/// Individual-secrecy outer region for same-output or eavesdropper-degraded
/// channels. Sweeps correlated input pmfs and the product grid, then takes
/// the convex hull of the raw values before clipping to the quadrant
/// (time sharing).
pub fn outer_region_individual(ch: &DiscreteTwc, class: OuterClass, cfg: &SearchConfig) -> Result<RateRegion> {
    check_resolution(cfg.resolution, "resolution")?;
    check_outer_class(ch, class)?;
    let (nx1, nx2) = (ch.size_x1(), ch.size_x2());
    let required = Space::count(&[nx1 * nx2], cfg.resolution) + identity_count(ch, cfg.resolution);
    check_budget(required, cfg)?;
    let spaces = [
        Space::new(vec![("p_x1x2".into(), nx1 * nx2)], cfg.resolution),
        identity_space(ch, cfg.resolution),
    ];
    run_sweep(RegionKind::OuterIndividual, &spaces, false, cfg, |s, p| {
        let joint = if s == 0 {
            Pmf::from_parts(vec![nx1, nx2], p[0].clone())
        } else {
            product_inputs_joint(&pmf1(&p[0]), &pmf1(&p[1]))
        };
        Ok(vec![outer_pair(ch, &joint)?])
    })
}
