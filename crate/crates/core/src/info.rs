//! Finite-alphabet probability and information measures.
//!
//! All logarithms are base 2, so every quantity is in bits. The convention
//! `0 log 0 = 0` is used throughout.
//!
//! A [`Pmf`] is a dense joint distribution over a product of small alphabets.
//! Information measures take *axis sets*: slices of axis indices naming which
//! coordinates of the joint play the role of each random variable.
//!
//! ```
//! use twsec::info::{Pmf, mutual_information};
//!
//! // X uniform, Y = X
//! let joint = Pmf::new(vec![2, 2], vec![0.5, 0.0, 0.0, 0.5]).unwrap();
//! let mi = mutual_information(&joint, &[0], &[1]).unwrap();
//! assert!((mi - 1.0).abs() < 1e-12);
//! ```

use crate::channel::DiscreteTwc;
use crate::error::{Error, Result};

/// Information quantity in bits.
pub type Bits = f64;

/// Tolerance on the total mass of a distribution (and of every kernel row).
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// Mutual informations in `[-MI_GUARD, 0)` are rounded up to zero.
pub const MI_GUARD: f64 = 1e-9;

/// Axis positions of the joint built by [`joint_from_components`].
pub mod axis {
    pub const U1: usize = 0;
    pub const U2: usize = 1;
    pub const X1: usize = 2;
    pub const X2: usize = 3;
    pub const Y1: usize = 4;
    pub const Y2: usize = 5;
    pub const Z: usize = 6;
}

/// Dense joint probability mass function over `dims[0] x dims[1] x ...`,
/// stored row-major (last axis fastest).
#[derive(Debug, Clone, PartialEq)]
pub struct Pmf {
    dims: Vec<usize>,
    mass: Vec<f64>,
}

impl Pmf {
    pub fn new(dims: Vec<usize>, mass: Vec<f64>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::Validation(format!("invalid pmf dims {dims:?}")));
        }
        let len: usize = dims.iter().product();
        if mass.len() != len {
            return Err(Error::Validation(format!(
                "pmf with dims {dims:?} needs {len} entries, got {}",
                mass.len()
            )));
        }
        check_distribution(&mass, "pmf")?;
        Ok(Self { dims, mass })
    }

    /// Construct from trusted mass (already validated by the caller).
    pub(crate) fn from_parts(dims: Vec<usize>, mass: Vec<f64>) -> Self {
        debug_assert_eq!(dims.iter().product::<usize>(), mass.len());
        Self { dims, mass }
    }

    pub fn uniform(dims: Vec<usize>) -> Result<Self> {
        let len: usize = dims.iter().product();
        Self::new(dims, vec![1.0 / len as f64; len])
    }

    /// Point mass at the multi-index `at`.
    pub fn point(dims: Vec<usize>, at: &[usize]) -> Result<Self> {
        let len: usize = dims.iter().product();
        let mut mass = vec![0.0; len];
        let tmp = Self::from_parts(dims, vec![0.0; len]);
        let i = tmp.flat_index(at)?;
        mass[i] = 1.0;
        Self::new(tmp.dims, mass)
    }

    /// Bernoulli(p) over `{0, 1}`.
    pub fn bernoulli(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Argument(format!("probability {p} outside [0,1]")));
        }
        Self::new(vec![2], vec![1.0 - p, p])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    pub fn rank(&self) -> usize {
        self.dims.len()
    }

    pub fn flat_index(&self, at: &[usize]) -> Result<usize> {
        if at.len() != self.dims.len() {
            return Err(Error::Argument(format!(
                "index {at:?} has wrong rank for dims {:?}",
                self.dims
            )));
        }
        let mut flat = 0;
        for (&i, &d) in at.iter().zip(&self.dims) {
            if i >= d {
                return Err(Error::Argument(format!("index {at:?} out of range for dims {:?}", self.dims)));
            }
            flat = flat * d + i;
        }
        Ok(flat)
    }

    pub fn get(&self, at: &[usize]) -> Result<f64> {
        Ok(self.mass[self.flat_index(at)?])
    }

    /// Marginal distribution over `axes`, in the order given.
    pub fn marginal(&self, axes: &[usize]) -> Result<Pmf> {
        self.check_axes(axes)?;
        let mut seen = vec![false; self.rank()];
        for &a in axes {
            if seen[a] {
                return Err(Error::Argument(format!("axis {a} repeated in {axes:?}")));
            }
            seen[a] = true;
        }
        Ok(self.marginal_unchecked(axes))
    }

    fn marginal_unchecked(&self, axes: &[usize]) -> Pmf {
        if axes.is_empty() {
            return Pmf::from_parts(vec![1], vec![self.mass.iter().sum()]);
        }
        let out_dims: Vec<usize> = axes.iter().map(|&a| self.dims[a]).collect();
        let out_len: usize = out_dims.iter().product();
        // stride of each source axis inside the output
        let mut out_stride = vec![0usize; self.rank()];
        let mut s = 1;
        for (k, &a) in axes.iter().enumerate().rev() {
            out_stride[a] = s;
            s *= out_dims[k];
        }
        let mut out = vec![0.0; out_len];
        let mut idx = vec![0usize; self.rank()];
        let mut o = 0usize;
        for &m in &self.mass {
            out[o] += m;
            // odometer increment, keeping the output offset in sync
            for ax in (0..self.rank()).rev() {
                idx[ax] += 1;
                o += out_stride[ax];
                if idx[ax] < self.dims[ax] {
                    break;
                }
                o -= out_stride[ax] * self.dims[ax];
                idx[ax] = 0;
            }
        }
        Pmf::from_parts(out_dims, out)
    }

    /// Joint entropy of the coordinates in `axes`.
    pub fn entropy_of(&self, axes: &[usize]) -> Result<Bits> {
        Ok(entropy_of_mass(self.marginal(axes)?.mass()))
    }

    fn check_axes(&self, axes: &[usize]) -> Result<()> {
        if let Some(&a) = axes.iter().find(|&&a| a >= self.rank()) {
            return Err(Error::Argument(format!(
                "axis {a} out of range for a rank-{} pmf",
                self.rank()
            )));
        }
        Ok(())
    }
}

/// Stochastic kernel `p(to | from)`, one row per conditioning multi-index.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalKernel {
    from_dims: Vec<usize>,
    to_dims: Vec<usize>,
    table: Vec<f64>,
}

impl ConditionalKernel {
    /// `table` holds the rows back to back, `product(from_dims)` rows of
    /// `product(to_dims)` entries each.
    pub fn new(from_dims: Vec<usize>, to_dims: Vec<usize>, table: Vec<f64>) -> Result<Self> {
        if from_dims.is_empty() || to_dims.is_empty() || from_dims.iter().chain(&to_dims).any(|&d| d == 0) {
            return Err(Error::Validation(format!(
                "invalid kernel dims {from_dims:?} -> {to_dims:?}"
            )));
        }
        let rows: usize = from_dims.iter().product();
        let width: usize = to_dims.iter().product();
        if table.len() != rows * width {
            return Err(Error::Validation(format!(
                "kernel {from_dims:?} -> {to_dims:?} needs {} entries, got {}",
                rows * width,
                table.len()
            )));
        }
        for (r, row) in table.chunks(width).enumerate() {
            check_distribution(row, &format!("kernel row {r}"))?;
        }
        Ok(Self { from_dims, to_dims, table })
    }

    pub fn from_rows(from_size: usize, rows: Vec<Vec<f64>>) -> Result<Self> {
        let width = rows.first().map(Vec::len).unwrap_or(0);
        if rows.len() != from_size || rows.iter().any(|r| r.len() != width) {
            return Err(Error::Validation("ragged or miscounted kernel rows".into()));
        }
        Self::new(vec![from_size], vec![width], rows.concat())
    }

    pub fn identity(size: usize) -> Self {
        let mut table = vec![0.0; size * size];
        for i in 0..size {
            table[i * size + i] = 1.0;
        }
        Self { from_dims: vec![size], to_dims: vec![size], table }
    }

    /// Every row equal to `row`.
    pub fn constant(from_size: usize, row: &[f64]) -> Result<Self> {
        Self::new(vec![from_size], vec![row.len()], row.repeat(from_size))
    }

    /// Binary symmetric kernel with crossover `flip`.
    pub fn binary_symmetric(flip: f64) -> Result<Self> {
        Self::from_rows(2, vec![vec![1.0 - flip, flip], vec![flip, 1.0 - flip]])
    }

    pub fn from_dims(&self) -> &[usize] {
        &self.from_dims
    }

    pub fn to_dims(&self) -> &[usize] {
        &self.to_dims
    }

    pub fn from_size(&self) -> usize {
        self.from_dims.iter().product()
    }

    pub fn to_size(&self) -> usize {
        self.to_dims.iter().product()
    }

    pub fn row(&self, from: usize) -> &[f64] {
        let w = self.to_size();
        &self.table[from * w..(from + 1) * w]
    }

    pub fn prob(&self, from: usize, to: usize) -> f64 {
        self.table[from * self.to_size() + to]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.table.chunks(self.to_size())
    }
}

fn check_distribution(mass: &[f64], what: &str) -> Result<()> {
    if let Some((i, &m)) = mass.iter().enumerate().find(|(_, &m)| !m.is_finite() || m < 0.0) {
        return Err(Error::Validation(format!("{what}: entry {i} is {m}")));
    }
    let total: f64 = mass.iter().sum();
    if (total - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::Validation(format!("{what}: mass sums to {total}")));
    }
    Ok(())
}

fn entropy_of_mass(mass: &[f64]) -> Bits {
    let h: f64 = mass
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum();
    h.max(0.0)
}

/// Shannon entropy of the whole joint.
pub fn entropy(p: &Pmf) -> Bits {
    entropy_of_mass(p.mass())
}

/// Shannon entropy of a raw probability vector, validating it first.
pub fn entropy_of(mass: &[f64]) -> Result<Bits> {
    check_distribution(mass, "distribution")?;
    Ok(entropy_of_mass(mass))
}

fn check_disjoint(rank: usize, sets: &[&[usize]]) -> Result<()> {
    let mut owner = vec![usize::MAX; rank];
    for (k, set) in sets.iter().enumerate() {
        for &a in set.iter() {
            if a >= rank {
                return Err(Error::Argument(format!("axis {a} out of range for a rank-{rank} pmf")));
            }
            if owner[a] != usize::MAX {
                return Err(Error::Argument(format!("axis {a} appears in more than one axis set")));
            }
            owner[a] = k;
        }
    }
    Ok(())
}

fn clamp_information(value: f64) -> Result<Bits> {
    if value >= 0.0 {
        Ok(value)
    } else if value >= -MI_GUARD {
        Ok(0.0)
    } else {
        Err(Error::Numerical(format!("negative information {value}")))
    }
}

fn union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = a.iter().chain(b).copied().collect();
    v.sort_unstable();
    v
}

/// `I(A;B) = H(A) + H(B) - H(A,B)`.
pub fn mutual_information(joint: &Pmf, a: &[usize], b: &[usize]) -> Result<Bits> {
    check_disjoint(joint.rank(), &[a, b])?;
    let ha = entropy_of_mass(joint.marginal_unchecked(&sorted(a)).mass());
    let hb = entropy_of_mass(joint.marginal_unchecked(&sorted(b)).mass());
    let hab = entropy_of_mass(joint.marginal_unchecked(&union(a, b)).mass());
    clamp_information(ha + hb - hab)
}

/// `I(A;B|C) = H(A,C) + H(B,C) - H(A,B,C) - H(C)`.
pub fn conditional_mutual_information(joint: &Pmf, a: &[usize], b: &[usize], c: &[usize]) -> Result<Bits> {
    check_disjoint(joint.rank(), &[a, b, c])?;
    let ac = union(a, c);
    let bc = union(b, c);
    let abc = union(&ac, b);
    let h = |axes: &[usize]| entropy_of_mass(joint.marginal_unchecked(axes).mass());
    clamp_information(h(&ac) + h(&bc) - h(&abc) - h(&sorted(c)))
}

fn sorted(a: &[usize]) -> Vec<usize> {
    let mut v = a.to_vec();
    v.sort_unstable();
    v
}

/// Binary entropy `h(a) = -a log a - (1-a) log(1-a)`, with `h(0) = h(1) = 0`.
pub fn binary_entropy(a: f64) -> Result<Bits> {
    if !(0.0..=1.0).contains(&a) {
        return Err(Error::Argument(format!("binary_entropy: {a} outside [0,1]")));
    }
    Ok(h2(a))
}

/// Unchecked binary entropy for callers that already hold a probability.
pub(crate) fn h2(a: f64) -> f64 {
    if a <= 0.0 || a >= 1.0 {
        0.0
    } else {
        -a * a.log2() - (1.0 - a) * (1.0 - a).log2()
    }
}

/// Binary convolution `a * b = a(1-b) + (1-a)b`: the crossover of two
/// cascaded binary symmetric channels.
pub fn binary_convolve(a: f64, b: f64) -> Result<f64> {
    for v in [a, b] {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::Argument(format!("binary_convolve: {v} outside [0,1]")));
        }
    }
    Ok(a * (1.0 - b) + (1.0 - a) * b)
}

/// Full joint over `(U1, U2, X1, X2, Y1, Y2, Z)` (see [`axis`]) equal to
/// `p(u1) p(u2) p(x1|u1) p(x2|u2) p(y1,y2,z|x1,x2)`.
pub fn joint_from_components(
    p_u1: &Pmf,
    p_u2: &Pmf,
    k_x1: &ConditionalKernel,
    k_x2: &ConditionalKernel,
    ch: &DiscreteTwc,
) -> Result<Pmf> {
    let (nu1, nu2) = (p_u1.mass().len(), p_u2.mass().len());
    if k_x1.from_size() != nu1 || k_x2.from_size() != nu2 {
        return Err(Error::Argument(format!(
            "prefix kernels expect |U1|={}, |U2|={} but inputs have {nu1}, {nu2}",
            k_x1.from_size(),
            k_x2.from_size()
        )));
    }
    if k_x1.to_size() != ch.size_x1() || k_x2.to_size() != ch.size_x2() {
        return Err(Error::Argument(format!(
            "prefix kernels produce |X1|={}, |X2|={} but the channel takes {}, {}",
            k_x1.to_size(),
            k_x2.to_size(),
            ch.size_x1(),
            ch.size_x2()
        )));
    }
    let (nx1, nx2) = (ch.size_x1(), ch.size_x2());
    let out = ch.output_len();
    let mut mass = Vec::with_capacity(nu1 * nu2 * nx1 * nx2 * out);
    for u1 in 0..nu1 {
        for u2 in 0..nu2 {
            let pu = p_u1.mass()[u1] * p_u2.mass()[u2];
            for x1 in 0..nx1 {
                for x2 in 0..nx2 {
                    let w = pu * k_x1.prob(u1, x1) * k_x2.prob(u2, x2);
                    mass.extend(ch.row(x1, x2).iter().map(|&t| w * t));
                }
            }
        }
    }
    let dims = vec![nu1, nu2, nx1, nx2, ch.size_y1(), ch.size_y2(), ch.size_z()];
    let total: f64 = mass.iter().sum();
    if (total - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::Numerical(format!("joint mass sums to {total}")));
    }
    Ok(Pmf::from_parts(dims, mass))
}
