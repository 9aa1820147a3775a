//! Two-way wiretap channel models.
//!
//! [`DiscreteTwc`] holds a transition tensor `p(y1, y2, z | x1, x2)`;
//! [`GaussianTwc`] holds the powers and noise variances of the additive
//! Gaussian model `Y1 = X1 + X2 + N1`, `Y2 = X1 + X2 + N2`, `Z = X1 + X2 + Ne`.

mod degraded;
mod io;

pub use degraded::{check_stochastic_degradedness, DegradednessVerdict, StrongOutput, DEFAULT_DEGRADEDNESS_TOL};
pub use io::{load_channel, parse_channel, save_channel, to_json, ChannelModel};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::info::NORMALIZATION_TOL;

/// Discrete memoryless two-way wiretap channel.
///
/// The tensor is stored row-major as `[x1][x2][y1][y2][z]`; each `(x1, x2)`
/// row is a distribution over `(y1, y2, z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteTwc {
    sizes: [usize; 5],
    transition: Vec<f64>,
}

/// A problem found by [`validate_channel`].
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    RowSum { x1: usize, x2: usize, sum: f64 },
    Negative { x1: usize, x2: usize, y1: usize, y2: usize, z: usize, value: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::RowSum { x1, x2, sum } => write!(f, "row (x1={x1}, x2={x2}) sums to {sum}"),
            Violation::Negative { x1, x2, y1, y2, z, value } => {
                write!(f, "p({y1},{y2},{z}|{x1},{x2}) = {value} is negative")
            }
        }
    }
}

impl DiscreteTwc {
    /// `sizes` is `[|X1|, |X2|, |Y1|, |Y2|, |Z|]`.
    pub fn new(sizes: [usize; 5], transition: Vec<f64>) -> Result<Self> {
        let ch = Self::new_unchecked(sizes, transition)?;
        if let Err(v) = validate_channel(&ch) {
            let list: Vec<String> = v.iter().map(ToString::to_string).collect();
            return Err(Error::Validation(list.join("; ")));
        }
        Ok(ch)
    }

    /// Checks only the shape; use [`validate_channel`] for the stochastic checks.
    pub fn new_unchecked(sizes: [usize; 5], transition: Vec<f64>) -> Result<Self> {
        if sizes.contains(&0) {
            return Err(Error::Validation(format!("alphabet sizes must be >= 1, got {sizes:?}")));
        }
        let len: usize = sizes.iter().product();
        if transition.len() != len {
            return Err(Error::Validation(format!(
                "transition tensor needs {len} entries for sizes {sizes:?}, got {}",
                transition.len()
            )));
        }
        Ok(Self { sizes, transition })
    }

    /// Build from a function giving `p(y1, y2, z | x1, x2)`.
    pub fn from_fn(sizes: [usize; 5], f: impl Fn(usize, usize, usize, usize, usize) -> f64) -> Result<Self> {
        let [a, b, c, d, e] = sizes;
        let mut t = Vec::with_capacity(sizes.iter().product());
        for x1 in 0..a {
            for x2 in 0..b {
                for y1 in 0..c {
                    for y2 in 0..d {
                        for z in 0..e {
                            t.push(f(x1, x2, y1, y2, z));
                        }
                    }
                }
            }
        }
        Self::new(sizes, t)
    }

    pub fn sizes(&self) -> [usize; 5] {
        self.sizes
    }
    pub fn size_x1(&self) -> usize {
        self.sizes[0]
    }
    pub fn size_x2(&self) -> usize {
        self.sizes[1]
    }
    pub fn size_y1(&self) -> usize {
        self.sizes[2]
    }
    pub fn size_y2(&self) -> usize {
        self.sizes[3]
    }
    pub fn size_z(&self) -> usize {
        self.sizes[4]
    }

    /// Number of `(y1, y2, z)` outcomes.
    pub fn output_len(&self) -> usize {
        self.sizes[2] * self.sizes[3] * self.sizes[4]
    }

    pub fn transition(&self) -> &[f64] {
        &self.transition
    }

    /// Distribution over `(y1, y2, z)` for the input pair.
    pub fn row(&self, x1: usize, x2: usize) -> &[f64] {
        let w = self.output_len();
        let r = x1 * self.sizes[1] + x2;
        &self.transition[r * w..(r + 1) * w]
    }

    pub fn prob(&self, x1: usize, x2: usize, y1: usize, y2: usize, z: usize) -> f64 {
        let [_, _, _, ny2, nz] = self.sizes;
        self.row(x1, x2)[(y1 * ny2 + y2) * nz + z]
    }

    /// `p(y1 | x1, x2)` as rows indexed by `x1 * |X2| + x2`.
    pub fn y1_kernel(&self) -> Vec<Vec<f64>> {
        self.output_marginal(0)
    }

    pub fn y2_kernel(&self) -> Vec<Vec<f64>> {
        self.output_marginal(1)
    }

    /// `p(z | x1, x2)` as rows indexed by `x1 * |X2| + x2`.
    pub fn z_kernel(&self) -> Vec<Vec<f64>> {
        self.output_marginal(2)
    }

    fn output_marginal(&self, which: usize) -> Vec<Vec<f64>> {
        let [nx1, nx2, ny1, ny2, nz] = self.sizes;
        let size = [ny1, ny2, nz][which];
        let mut rows = Vec::with_capacity(nx1 * nx2);
        for x1 in 0..nx1 {
            for x2 in 0..nx2 {
                let mut m = vec![0.0; size];
                for y1 in 0..ny1 {
                    for y2 in 0..ny2 {
                        for z in 0..nz {
                            m[[y1, y2, z][which]] += self.prob(x1, x2, y1, y2, z);
                        }
                    }
                }
                rows.push(m);
            }
        }
        rows
    }

    /// True when all mass sits on `y1 = y2 = z` (the legitimate users and the
    /// eavesdropper see the same output).
    pub fn is_same_output(&self) -> bool {
        let [nx1, nx2, ny1, ny2, nz] = self.sizes;
        if ny1 != ny2 || ny1 != nz {
            return false;
        }
        for x1 in 0..nx1 {
            for x2 in 0..nx2 {
                for y1 in 0..ny1 {
                    for y2 in 0..ny2 {
                        for z in 0..nz {
                            if !(y1 == y2 && y2 == z) && self.prob(x1, x2, y1, y2, z) > 1e-12 {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// True when the eavesdropper's conditional law ignores the inputs.
    pub fn z_ignores_inputs(&self) -> bool {
        let rows = self.z_kernel();
        rows.iter().all(|r| r == &rows[0])
    }
}

/// List every row-normalization and negativity problem of the tensor.
pub fn validate_channel(ch: &DiscreteTwc) -> std::result::Result<(), Vec<Violation>> {
    let [nx1, nx2, ny1, ny2, nz] = ch.sizes;
    let mut out = Vec::new();
    for x1 in 0..nx1 {
        for x2 in 0..nx2 {
            let row = ch.row(x1, x2);
            for (k, &v) in row.iter().enumerate() {
                if v.is_nan() || v < 0.0 {
                    let z = k % nz;
                    let y2 = (k / nz) % ny2;
                    let y1 = k / (nz * ny2);
                    debug_assert!(y1 < ny1);
                    out.push(Violation::Negative { x1, x2, y1, y2, z, value: v });
                }
            }
            let sum: f64 = row.iter().sum();
            if sum.is_nan() || (sum - 1.0).abs() > NORMALIZATION_TOL {
                out.push(Violation::RowSum { x1, x2, sum });
            }
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// Crossover probabilities of the additive binary noises on `Y1`, `Y2` and `Z`
/// in the modulo-2 channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mod2Params {
    pub eps1: f64,
    pub eps2: f64,
    pub epsz: f64,
}

impl Mod2Params {
    pub fn new(eps1: f64, eps2: f64, epsz: f64) -> Result<Self> {
        for (name, v) in [("eps1", eps1), ("eps2", eps2), ("epsz", epsz)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Argument(format!("{name} = {v} outside [0,1]")));
            }
        }
        Ok(Self { eps1, eps2, epsz })
    }
}

/// The binary-input channels used as worked examples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LibraryKind {
    /// Binary multiplying channel, `Y1 = Y2 = Z = X1 * X2`.
    Bmc,
    /// `Y1 = Y2 = Z = X1 xor X2`.
    Xor,
    /// `Y1 = Y2 = Z = X1 + X2` over `{0, 1, 2}`.
    Adder,
    /// `X1 xor X2` observed through three independent binary noises.
    Mod2,
}

impl FromStr for LibraryKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bmc" => Ok(Self::Bmc),
            "xor" => Ok(Self::Xor),
            "adder" => Ok(Self::Adder),
            "mod2" => Ok(Self::Mod2),
            other => Err(Error::Argument(format!("unknown library channel `{other}`"))),
        }
    }
}

impl fmt::Display for LibraryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Bmc => "bmc",
            Self::Xor => "xor",
            Self::Adder => "adder",
            Self::Mod2 => "mod2",
        };
        f.write_str(s)
    }
}

/// Build one of the library channels. `Mod2` needs `params`; the others ignore them.
pub fn build_library_channel(kind: LibraryKind, params: Option<Mod2Params>) -> Result<DiscreteTwc> {
    let deterministic = |out: usize, f: fn(usize, usize) -> usize| {
        DiscreteTwc::from_fn([2, 2, out, out, out], move |x1, x2, y1, y2, z| {
            let v = f(x1, x2);
            if y1 == v && y2 == v && z == v {
                1.0
            } else {
                0.0
            }
        })
    };
    match kind {
        LibraryKind::Bmc => deterministic(2, |a, b| a & b),
        LibraryKind::Xor => deterministic(2, |a, b| a ^ b),
        LibraryKind::Adder => deterministic(3, |a, b| a + b),
        LibraryKind::Mod2 => {
            let p = params.ok_or_else(|| Error::Argument("the mod2 channel needs noise parameters".into()))?;
            let p = Mod2Params::new(p.eps1, p.eps2, p.epsz)?;
            let flip = |eps: f64, clean: usize, seen: usize| if clean == seen { 1.0 - eps } else { eps };
            DiscreteTwc::from_fn([2, 2, 2, 2, 2], move |x1, x2, y1, y2, z| {
                let s = x1 ^ x2;
                flip(p.eps1, s, y1) * flip(p.eps2, s, y2) * flip(p.epsz, s, z)
            })
        }
    }
}

/// Degraded Gaussian two-way wiretap channel parameters (all in power units).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianTwc {
    #[serde(rename = "P1")]
    pub p1: f64,
    #[serde(rename = "P2")]
    pub p2: f64,
    #[serde(rename = "N1")]
    pub n1: f64,
    #[serde(rename = "N2")]
    pub n2: f64,
    #[serde(rename = "Ne")]
    pub ne: f64,
}

impl GaussianTwc {
    pub fn new(p1: f64, p2: f64, n1: f64, n2: f64, ne: f64) -> Result<Self> {
        for (name, v) in [("P1", p1), ("P2", p2), ("N1", n1), ("N2", n2), ("Ne", ne)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Validation(format!("{name} must be positive and finite, got {v}")));
            }
        }
        Ok(Self { p1, p2, n1, n2, ne })
    }

    /// The example used throughout: `P1 = P2 = 300`, `N1 = N2 = 2`, `Ne = 3`.
    pub fn reference() -> Self {
        Self { p1: 300.0, p2: 300.0, n1: 2.0, n2: 2.0, ne: 3.0 }
    }

    /// `Ne > N1` and `Ne > N2`: the eavesdropper output is a stochastically
    /// degraded version of both legitimate outputs.
    pub fn is_degraded(&self) -> bool {
        self.ne > self.n1 && self.ne > self.n2
    }
}
