//! Single-distribution evaluators: each returns one rate pair (or a pentagon)
//! for a fixed choice of input and auxiliary distributions.

use serde::{Deserialize, Serialize};

use super::RatePoint;
use crate::channel::DiscreteTwc;
use crate::error::{Error, Result};
use crate::info::{
    axis, conditional_mutual_information as cmi, joint_from_components, mutual_information as mi, ConditionalKernel,
    Pmf, NORMALIZATION_TOL,
};

/// Unclamped bound values; either coordinate may be negative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundPair {
    pub r1s: f64,
    pub r2s: f64,
}

impl BoundPair {
    pub fn clamped(self) -> RatePoint {
        RatePoint::new(self.r1s, self.r2s)
    }
}

/// Independent auxiliaries `U1`, `U2` and prefix kernels `p(x1|u1)`, `p(x2|u2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PrefixedInputs {
    pub p_u1: Pmf,
    pub p_u2: Pmf,
    pub k_x1: ConditionalKernel,
    pub k_x2: ConditionalKernel,
}

impl PrefixedInputs {
    /// Checks kernel shapes and the cardinality bounds `|Ui| <= |Xi| + 1`.
    pub fn new(p_u1: Pmf, p_u2: Pmf, k_x1: ConditionalKernel, k_x2: ConditionalKernel) -> Result<Self> {
        for (name, p, k) in [("U1", &p_u1, &k_x1), ("U2", &p_u2, &k_x2)] {
            let nu = p.mass().len();
            if k.from_size() != nu {
                return Err(Error::Argument(format!(
                    "prefix kernel for {name} has {} rows, |{name}| = {nu}",
                    k.from_size()
                )));
            }
            if nu > k.to_size() + 1 {
                return Err(Error::Argument(format!(
                    "|{name}| = {nu} exceeds the cardinality bound {}",
                    k.to_size() + 1
                )));
            }
        }
        Ok(Self { p_u1, p_u2, k_x1, k_x2 })
    }

    /// `U1 = X1`, `U2 = X2`.
    pub fn identity(p_x1: Pmf, p_x2: Pmf) -> Self {
        let k_x1 = ConditionalKernel::identity(p_x1.mass().len());
        let k_x2 = ConditionalKernel::identity(p_x2.mass().len());
        Self { p_u1: p_x1, p_u2: p_x2, k_x1, k_x2 }
    }

    pub fn joint(&self, ch: &DiscreteTwc) -> Result<Pmf> {
        joint_from_components(&self.p_u1, &self.p_u2, &self.k_x1, &self.k_x2, ch)
    }
}

/// Raw individual-secrecy inner bound for one choice of auxiliaries:
///
/// ```text
/// R1s <= I(U1;Y2|X2) - I(U1;Z) - [I(U2;Z|U1) - I(U2;Y1|X1)]+
/// R2s <= I(U2;Y1|X1) - I(U2;Z) - [I(U1;Z|U2) - I(U1;Y2|X2)]+
/// ```
pub fn inner_rect_individual_raw(ch: &DiscreteTwc, inputs: &PrefixedInputs) -> Result<BoundPair> {
    let j = inputs.joint(ch)?;
    let (u1, u2, x1, x2, y1, y2, z) = (axis::U1, axis::U2, axis::X1, axis::X2, axis::Y1, axis::Y2, axis::Z);
    let own1 = cmi(&j, &[u1], &[y2], &[x2])?;
    let own2 = cmi(&j, &[u2], &[y1], &[x1])?;
    let leak1 = mi(&j, &[u1], &[z])?;
    let leak2 = mi(&j, &[u2], &[z])?;
    let cross1 = cmi(&j, &[u2], &[z], &[u1])?;
    let cross2 = cmi(&j, &[u1], &[z], &[u2])?;
    Ok(BoundPair {
        r1s: own1 - leak1 - (cross1 - own2).max(0.0),
        r2s: own2 - leak2 - (cross2 - own1).max(0.0),
    })
}

/// Individual-secrecy inner rectangle, clamped to the quadrant.
pub fn inner_rect_individual(ch: &DiscreteTwc, inputs: &PrefixedInputs) -> Result<RatePoint> {
    inner_rect_individual_raw(ch, inputs).map(BoundPair::clamped)
}

fn require_same_output(ch: &DiscreteTwc) -> Result<()> {
    if ch.is_same_output() {
        Ok(())
    } else {
        Err(Error::Precondition("channel is not same-output (Y1 = Y2 = Z)".into()))
    }
}

fn input_pmfs(ch: &DiscreteTwc, p_x1: &Pmf, p_x2: &Pmf) -> Result<()> {
    if p_x1.mass().len() != ch.size_x1() || p_x2.mass().len() != ch.size_x2() {
        return Err(Error::Argument(format!(
            "input pmfs have sizes {}, {} but the channel takes {}, {}",
            p_x1.mass().len(),
            p_x2.mass().len(),
            ch.size_x1(),
            ch.size_x2()
        )));
    }
    Ok(())
}

/// Same-output channels with `U1 = X1`, `U2 = X2`:
/// `(I(X1;Y2|X2) - I(X1;Z), I(X2;Y1|X1) - I(X2;Z))`, clamped.
pub fn inner_rect_symmetric_output(ch: &DiscreteTwc, p_x1: &Pmf, p_x2: &Pmf) -> Result<RatePoint> {
    require_same_output(ch)?;
    input_pmfs(ch, p_x1, p_x2)?;
    let j = PrefixedInputs::identity(p_x1.clone(), p_x2.clone()).joint(ch)?;
    let (x1, x2, y1, y2, z) = (axis::X1, axis::X2, axis::Y1, axis::Y2, axis::Z);
    Ok(RatePoint::new(
        cmi(&j, &[x1], &[y2], &[x2])? - mi(&j, &[x1], &[z])?,
        cmi(&j, &[x2], &[y1], &[x1])? - mi(&j, &[x2], &[z])?,
    ))
}

/// Per-user caps and a sum-rate cap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pentagon {
    pub cap1: f64,
    pub cap2: f64,
    pub sum: f64,
}

impl Pentagon {
    /// The two non-trivial corners of `{r1 <= cap1, r2 <= cap2, r1 + r2 <= sum}` in the quadrant.
    pub fn corners(&self) -> Vec<RatePoint> {
        let (a, b, s) = (self.cap1.max(0.0), self.cap2.max(0.0), self.sum);
        if s <= 0.0 {
            return vec![RatePoint::origin()];
        }
        vec![
            RatePoint::new(a.min(s), (s - a).min(b)),
            RatePoint::new((s - b).min(a), b.min(s)),
        ]
    }
}

/// Joint-secrecy pentagon for a same-output channel with independent inputs:
/// caps `I(X1;Y2|X2)`, `I(X2;Y1|X1)` and sum cap
/// `I(X1;Y2|X2) + I(X2;Y1|X1) - I(X1,X2;Z)`.
pub fn joint_pentagon_symmetric(ch: &DiscreteTwc, p_x1: &Pmf, p_x2: &Pmf) -> Result<Pentagon> {
    require_same_output(ch)?;
    input_pmfs(ch, p_x1, p_x2)?;
    let j = PrefixedInputs::identity(p_x1.clone(), p_x2.clone()).joint(ch)?;
    let (x1, x2, y1, y2, z) = (axis::X1, axis::X2, axis::Y1, axis::Y2, axis::Z);
    let cap1 = cmi(&j, &[x1], &[y2], &[x2])?;
    let cap2 = cmi(&j, &[x2], &[y1], &[x1])?;
    let leak = mi(&j, &[x1, x2], &[z])?;
    Ok(Pentagon { cap1, cap2, sum: cap1 + cap2 - leak })
}

/// Reliability (no secrecy) rectangle `(I(X1;Y2|X2), I(X2;Y1|X1))`.
pub fn reliability_rect(ch: &DiscreteTwc, p_x1: &Pmf, p_x2: &Pmf) -> Result<RatePoint> {
    input_pmfs(ch, p_x1, p_x2)?;
    let j = PrefixedInputs::identity(p_x1.clone(), p_x2.clone()).joint(ch)?;
    let (x1, x2, y1, y2) = (axis::X1, axis::X2, axis::Y1, axis::Y2);
    Ok(RatePoint::new(cmi(&j, &[x1], &[y2], &[x2])?, cmi(&j, &[x2], &[y1], &[x1])?))
}

/// `p(x1) p(x2)` as a two-axis pmf.
pub fn product_inputs_joint(p_x1: &Pmf, p_x2: &Pmf) -> Pmf {
    let mass = p_x1.mass().iter().flat_map(|&a| p_x2.mass().iter().map(move |&b| a * b)).collect();
    Pmf::from_parts(vec![p_x1.mass().len(), p_x2.mass().len()], mass)
}

/// Joint over `(X1, X2, Y1, Y2, Z)` for an input pmf over `(X1, X2)`.
pub fn input_joint(ch: &DiscreteTwc, p_x1x2: &Pmf) -> Result<Pmf> {
    let (nx1, nx2) = (ch.size_x1(), ch.size_x2());
    if p_x1x2.dims() != [nx1, nx2] {
        return Err(Error::Argument(format!(
            "input pmf has dims {:?}, channel takes [{nx1}, {nx2}]",
            p_x1x2.dims()
        )));
    }
    let mut mass = Vec::with_capacity(nx1 * nx2 * ch.output_len());
    for x1 in 0..nx1 {
        for x2 in 0..nx2 {
            let w = p_x1x2.mass()[x1 * nx2 + x2];
            mass.extend(ch.row(x1, x2).iter().map(|&t| w * t));
        }
    }
    Ok(Pmf::from_parts(vec![nx1, nx2, ch.size_y1(), ch.size_y2(), ch.size_z()], mass))
}

/// Time-sharing variable `Q` with conditional input pmfs `p(x1, x2 | q)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSharedInputs {
    p_q: Vec<f64>,
    inputs: Vec<Pmf>,
}

impl TimeSharedInputs {
    pub fn new(p_q: Pmf, inputs: Vec<Pmf>) -> Result<Self> {
        if p_q.mass().len() != inputs.len() {
            return Err(Error::Argument(format!(
                "{} time-sharing weights for {} input pmfs",
                p_q.mass().len(),
                inputs.len()
            )));
        }
        if inputs.iter().any(|p| p.rank() != 2) {
            return Err(Error::Argument("input pmfs must be over (X1, X2)".into()));
        }
        Ok(Self { p_q: p_q.mass().to_vec(), inputs })
    }

    pub fn single(p_x1x2: Pmf) -> Result<Self> {
        Self::new(Pmf::point(vec![1], &[0])?, vec![p_x1x2])
    }

    pub fn weights(&self) -> &[f64] {
        &self.p_q
    }

    pub fn inputs(&self) -> &[Pmf] {
        &self.inputs
    }
}

/// Raw outer-bound pair for one (possibly correlated) input pmf:
/// `(I(X1;Y2|X2) - I(X1;Z), I(X2;Y1|X1) - I(X2;Z))`.
pub(crate) fn outer_pair(ch: &DiscreteTwc, p_x1x2: &Pmf) -> Result<BoundPair> {
    let j = input_joint(ch, p_x1x2)?;
    let (x1, x2, y1, y2, z) = (0, 1, 2, 3, 4);
    Ok(BoundPair {
        r1s: cmi(&j, &[x1], &[y2], &[x2])? - mi(&j, &[x1], &[z])?,
        r2s: cmi(&j, &[x2], &[y1], &[x1])? - mi(&j, &[x2], &[z])?,
    })
}

/// Outer rectangle for same-output or eavesdropper-degraded channels,
/// averaged over the time-sharing variable and then clamped.
pub fn outer_rect_time_shared(ch: &DiscreteTwc, ts: &TimeSharedInputs) -> Result<RatePoint> {
    let mut acc = BoundPair { r1s: 0.0, r2s: 0.0 };
    for (&w, p) in ts.p_q.iter().zip(&ts.inputs) {
        if w == 0.0 {
            continue;
        }
        let b = outer_pair(ch, p)?;
        acc.r1s += w * b.r1s;
        acc.r2s += w * b.r2s;
    }
    Ok(acc.clamped())
}

/// Auxiliaries for the general outer bound: `U`, `V1`, `V2` with
/// `p(u) p(v1|u) p(v2|u) p(x1,x2|u,v1,v2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Theorem3Auxiliaries {
    pub p_u: Pmf,
    pub k_v1: ConditionalKernel,
    pub k_v2: ConditionalKernel,
    /// Rows indexed by `(u, v1, v2)`, columns by `(x1, x2)`.
    pub k_x: ConditionalKernel,
}

impl Theorem3Auxiliaries {
    /// Constant `U`, `V1 = X1`, `V2 = X2` with independent inputs.
    pub fn trivial(p_x1: &Pmf, p_x2: &Pmf) -> Result<Self> {
        let (n1, n2) = (p_x1.mass().len(), p_x2.mass().len());
        let mut table = vec![0.0; n1 * n2 * n1 * n2];
        for v1 in 0..n1 {
            for v2 in 0..n2 {
                let row = v1 * n2 + v2;
                table[row * n1 * n2 + row] = 1.0;
            }
        }
        Ok(Self {
            p_u: Pmf::point(vec![1], &[0])?,
            k_v1: ConditionalKernel::constant(1, p_x1.mass())?,
            k_v2: ConditionalKernel::constant(1, p_x2.mass())?,
            k_x: ConditionalKernel::new(vec![1, n1, n2], vec![n1, n2], table)?,
        })
    }

    /// Joint over `(U, V1, V2, X1, X2)`.
    pub fn input_joint(&self) -> Result<Pmf> {
        let nu = self.p_u.mass().len();
        let (nv1, nv2) = (self.k_v1.to_size(), self.k_v2.to_size());
        if self.k_v1.from_size() != nu || self.k_v2.from_size() != nu || self.k_x.from_size() != nu * nv1 * nv2 {
            return Err(Error::Argument("auxiliary kernel shapes do not chain".into()));
        }
        let to = self.k_x.to_dims();
        if to.len() != 2 {
            return Err(Error::Argument(format!("input kernel must produce (X1, X2), got dims {to:?}")));
        }
        let mut mass = Vec::with_capacity(nu * nv1 * nv2 * self.k_x.to_size());
        for u in 0..nu {
            for v1 in 0..nv1 {
                for v2 in 0..nv2 {
                    let w = self.p_u.mass()[u] * self.k_v1.prob(u, v1) * self.k_v2.prob(u, v2);
                    mass.extend(self.k_x.row((u * nv1 + v1) * nv2 + v2).iter().map(|&t| w * t));
                }
            }
        }
        Ok(Pmf::from_parts(vec![nu, nv1, nv2, to[0], to[1]], mass))
    }
}

/// General outer rectangle:
/// `R1s <= I(V1;X2,Y2|U) - I(V1;Z|U)`, `R2s <= I(V2;X1,Y1|U) - I(V2;Z|U)`.
pub fn outer_rect_theorem3(ch: &DiscreteTwc, aux: &Theorem3Auxiliaries) -> Result<RatePoint> {
    theorem3_eval(ch, &aux.input_joint()?)
}

/// As [`outer_rect_theorem3`], from an explicit joint over `(U, V1, V2, X1, X2)`.
/// Fails with a precondition error unless `V1` and `V2` are conditionally
/// independent given `U` (to within the normalization tolerance).
pub fn outer_rect_theorem3_from_joint(ch: &DiscreteTwc, joint: &Pmf) -> Result<RatePoint> {
    if joint.rank() != 5 {
        return Err(Error::Argument(format!("expected a joint over (U,V1,V2,X1,X2), got rank {}", joint.rank())));
    }
    let uvv = joint.marginal(&[0, 1, 2])?;
    let uv1 = joint.marginal(&[0, 1])?;
    let uv2 = joint.marginal(&[0, 2])?;
    let u = joint.marginal(&[0])?;
    let [nu, nv1, nv2] = [uvv.dims()[0], uvv.dims()[1], uvv.dims()[2]];
    for a in 0..nu {
        let pu = u.mass()[a];
        for b in 0..nv1 {
            for c in 0..nv2 {
                let lhs = uvv.mass()[(a * nv1 + b) * nv2 + c];
                let rhs = if pu > 0.0 { uv1.mass()[a * nv1 + b] * uv2.mass()[a * nv2 + c] / pu } else { 0.0 };
                if (lhs - rhs).abs() > NORMALIZATION_TOL {
                    return Err(Error::Precondition(format!(
                        "V1 and V2 are not independent given U (cell ({a},{b},{c}): {lhs} vs {rhs})"
                    )));
                }
            }
        }
    }
    theorem3_eval(ch, joint)
}

fn theorem3_eval(ch: &DiscreteTwc, input: &Pmf) -> Result<RatePoint> {
    let d = input.dims();
    if d[3] != ch.size_x1() || d[4] != ch.size_x2() {
        return Err(Error::Argument(format!(
            "inputs have sizes {}, {} but the channel takes {}, {}",
            d[3],
            d[4],
            ch.size_x1(),
            ch.size_x2()
        )));
    }
    let nx = d[3] * d[4];
    let out = ch.output_len();
    let mut mass = Vec::with_capacity(input.mass().len() * out);
    for (i, &w) in input.mass().iter().enumerate() {
        let x = i % nx;
        mass.extend(ch.row(x / d[4], x % d[4]).iter().map(|&t| w * t));
    }
    let mut dims = d.to_vec();
    dims.extend([ch.size_y1(), ch.size_y2(), ch.size_z()]);
    let j = Pmf::from_parts(dims, mass);
    let (u, v1, v2, x1, x2, y1, y2, z) = (0, 1, 2, 3, 4, 5, 6, 7);
    Ok(RatePoint::new(
        cmi(&j, &[v1], &[x2, y2], &[u])? - cmi(&j, &[v1], &[z], &[u])?,
        cmi(&j, &[v2], &[x1, y1], &[u])? - cmi(&j, &[v2], &[z], &[u])?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{build_library_channel, LibraryKind};

    fn half() -> Pmf {
        Pmf::uniform(vec![2]).unwrap()
    }

    #[test]
    fn xor_uniform_inner_is_one_one() {
        let ch = build_library_channel(LibraryKind::Xor, None).unwrap();
        let r = inner_rect_individual(&ch, &PrefixedInputs::identity(half(), half())).unwrap();
        assert!((r.r1s - 1.0).abs() < 1e-12 && (r.r2s - 1.0).abs() < 1e-12);
        let s = inner_rect_symmetric_output(&ch, &half(), &half()).unwrap();
        assert_eq!(r, s);
    }

    #[test]
    fn xor_joint_pentagon() {
        let ch = build_library_channel(LibraryKind::Xor, None).unwrap();
        let p = joint_pentagon_symmetric(&ch, &half(), &half()).unwrap();
        assert!((p.cap1 - 1.0).abs() < 1e-12 && (p.cap2 - 1.0).abs() < 1e-12 && (p.sum - 1.0).abs() < 1e-12);
        let c = p.corners();
        assert!((c[0].r1s - 1.0).abs() < 1e-12 && c[0].r2s.abs() < 1e-12);
        assert!(c[1].r1s.abs() < 1e-12 && (c[1].r2s - 1.0).abs() < 1e-12);
    }

    #[test]
    fn constant_inputs_give_origin() {
        let ch = build_library_channel(LibraryKind::Bmc, None).unwrap();
        let x1 = Pmf::point(vec![2], &[1]).unwrap();
        let r = inner_rect_individual(&ch, &PrefixedInputs::identity(x1.clone(), half())).unwrap();
        assert_eq!(r.r1s, 0.0);
        let p = Pmf::new(vec![2, 2], vec![0.0, 0.0, 0.0, 1.0]).unwrap();
        let o = outer_rect_time_shared(&ch, &TimeSharedInputs::single(p).unwrap()).unwrap();
        assert_eq!(o, RatePoint::origin());
    }

    #[test]
    fn theorem3_trivial_auxiliaries_on_xor() {
        let ch = build_library_channel(LibraryKind::Xor, None).unwrap();
        let aux = Theorem3Auxiliaries::trivial(&half(), &half()).unwrap();
        let r = outer_rect_theorem3(&ch, &aux).unwrap();
        assert!((r.r1s - 1.0).abs() < 1e-12 && (r.r2s - 1.0).abs() < 1e-12);
        let r2 = outer_rect_theorem3_from_joint(&ch, &aux.input_joint().unwrap()).unwrap();
        assert_eq!(r, r2);
    }

    #[test]
    fn theorem3_rejects_dependent_auxiliaries() {
        let ch = build_library_channel(LibraryKind::Xor, None).unwrap();
        // U constant, V1 = V2 uniform, X = (V1, V2)
        let mut mass = vec![0.0; 16];
        mass[0] = 0.5; // v1=0, v2=0, x=(0,0)
        mass[(3) * 4 + 3] = 0.5; // v1=1, v2=1, x=(1,1)
        let j = Pmf::new(vec![1, 2, 2, 2, 2], mass).unwrap();
        assert!(matches!(outer_rect_theorem3_from_joint(&ch, &j), Err(Error::Precondition(_))));
    }

    #[test]
    fn symmetric_output_required() {
        let ch = build_library_channel(
            LibraryKind::Mod2,
            Some(crate::channel::Mod2Params::new(0.1, 0.1, 0.2).unwrap()),
        )
        .unwrap();
        assert!(matches!(inner_rect_symmetric_output(&ch, &half(), &half()), Err(Error::Precondition(_))));
        assert!(matches!(joint_pentagon_symmetric(&ch, &half(), &half()), Err(Error::Precondition(_))));
    }

    #[test]
    fn cardinality_bound_enforced() {
        let u = Pmf::uniform(vec![4]).unwrap();
        let k = ConditionalKernel::constant(4, &[0.5, 0.5]).unwrap();
        let k2 = ConditionalKernel::identity(2);
        assert!(PrefixedInputs::new(u, half(), k, k2).is_err());
    }
}
