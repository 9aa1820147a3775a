use serde::{Deserialize, Serialize};

use super::{convex_closure, RatePoint, RateRegion, RegionKind};
use crate::channel::{LibraryKind, Mod2Params};
use crate::error::{Error, Result};
use crate::info::h2;

/// Closed-form secrecy pair for the same-output binary channels with
/// `X1 ~ Bern(p1)`, `X2 ~ Bern(p2)` and identity prefixes.
///
/// - BMC: `p2 h(p1) + p1 h(p2) - h(p1 p2)` for both users
/// - XOR: `h(p1) + h(p2) - h(p1 * p2)` for both users
/// - ADDER: `(p1 * p2) h(p1 (1-p2) / (p1 * p2))`, and `p2 (1-p1)` in the numerator for user 2
pub fn closed_form_binary(kind: LibraryKind, p1: f64, p2: f64) -> Result<RatePoint> {
    for (name, v) in [("p1", p1), ("p2", p2)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::Argument(format!("{name} = {v} outside [0,1]")));
        }
    }
    let conv = p1 * (1.0 - p2) + (1.0 - p1) * p2;
    match kind {
        LibraryKind::Bmc => {
            let r = p2 * h2(p1) + p1 * h2(p2) - h2(p1 * p2);
            Ok(RatePoint::new(r, r))
        }
        LibraryKind::Xor => {
            let r = h2(p1) + h2(p2) - h2(conv);
            Ok(RatePoint::new(r, r))
        }
        LibraryKind::Adder => {
            let term = |num: f64| if conv > 0.0 { conv * h2(num / conv) } else { 0.0 };
            Ok(RatePoint::new(term(p1 * (1.0 - p2)), term(p2 * (1.0 - p1))))
        }
        LibraryKind::Mod2 => Err(Error::Argument("mod2 has no single-pair closed form; use mod2_regions".into())),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mod2Regions {
    pub reliability: RateRegion,
    pub individual: RateRegion,
    pub joint: RateRegion,
}

/// Closed-form regions of the modulo-2 channel.
///
/// Reliability and individual secrecy share the rectangle
/// `(1 - h(eps2), 1 - h(eps1))`; joint secrecy adds the sum cap
/// `1 + h(epsz) - h(eps1) - h(eps2)`.
pub fn mod2_regions(p: Mod2Params) -> Result<Mod2Regions> {
    let p = Mod2Params::new(p.eps1, p.eps2, p.epsz)?;
    let corner = RatePoint::new(1.0 - h2(p.eps2), 1.0 - h2(p.eps1));
    let sum = 1.0 + h2(p.epsz) - h2(p.eps1) - h2(p.eps2);
    let joint = if sum <= 0.0 {
        convex_closure(&[RatePoint::origin()], RegionKind::InnerJoint)?
    } else {
        let (a, b) = (corner.r1s, corner.r2s);
        convex_closure(
            &[RatePoint::new(a.min(sum), (sum - a).min(b)), RatePoint::new((sum - b).min(a), b.min(sum))],
            RegionKind::InnerJoint,
        )?
    };
    Ok(Mod2Regions {
        reliability: RateRegion::rectangle(RegionKind::Reliability, corner),
        individual: RateRegion::rectangle(RegionKind::InnerIndividual, corner),
        joint,
    })
}
