//! Finite-blocklength random-binning wiretap codes.
//!
//! Each user `i` holds a codebook of `2^{n R_is} x 2^{n R_ir}` sequences over
//! its auxiliary alphabet, drawn i.i.d. from `p(u_i)`. To send secret index
//! `w_is` the encoder picks a uniform randomization index `w_ir`, looks up
//! `u_i^n(w_is, w_ir)` and passes it letter by letter through the prefix
//! kernel `p(x_i|u_i)`. Each decoder sees its own channel input as side
//! information.
//!
//! Indices are zero-based. The codeword of `(ws, wr)` sits at row
//! `ws * 2^{n R_ir} + wr`, so "smallest `(ws, wr)`" means smallest row.
//!
//! [`exact_evaluation`] computes leakage and error probability by full
//! enumeration; [`simulate_trials`] estimates them by Monte Carlo.

mod exact;
mod montecarlo;

pub use exact::{evaluate_ensemble, exact_cost, exact_evaluation, EvalMethod};
pub use montecarlo::simulate_trials;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::channel::DiscreteTwc;
use crate::error::{Error, Result};
use crate::info::{axis, conditional_mutual_information as cmi, mutual_information as mi};
use crate::region::PrefixedInputs;

/// Default limit on enumeration terms and codebook entries.
pub const DEFAULT_BUDGET: u128 = 1 << 26;

/// Slack when converting `n * R` to an integer bit count.
const QUANT_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum User {
    One,
    Two,
}

impl User {
    fn other(self) -> Self {
        match self {
            Self::One => Self::Two,
            Self::Two => Self::One,
        }
    }

    fn index(self) -> usize {
        match self {
            Self::One => 0,
            Self::Two => 1,
        }
    }
}

/// Secret and randomization rates of both users, bits per channel use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateQuad {
    pub r1s: f64,
    pub r1r: f64,
    pub r2s: f64,
    pub r2r: f64,
}

/// Partition of one user's codebook into `2^{n first}` sub-codebooks of
/// `2^{n second}` codewords each.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateSplit {
    pub first: f64,
    pub second: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodeRates {
    pub n: usize,
    /// Rates as requested, before quantization.
    pub requested: RateQuad,
    /// `floor(n R)` for `R1s, R1r, R2s, R2r`.
    pub bits: [u32; 4],
    /// `(R11, R12)`, present when `R1 >= I(U1;Z|U2)`.
    pub split1: Option<RateSplit>,
    /// `(R21, R22)`, present when `R2 >= I(U2;Z|U1)`.
    pub split2: Option<RateSplit>,
}

impl CodeRates {
    /// Quantize each rate down to a multiple of `1/n`.
    pub fn quantized(n: usize, requested: RateQuad) -> Result<Self> {
        if n == 0 {
            return Err(Error::Argument("blocklength must be at least 1".into()));
        }
        let mut bits = [0u32; 4];
        let vals = [requested.r1s, requested.r1r, requested.r2s, requested.r2r];
        for (b, (name, r)) in bits.iter_mut().zip(["R1s", "R1r", "R2s", "R2r"].into_iter().zip(vals)) {
            if !(r.is_finite() && r >= 0.0) {
                return Err(Error::Argument(format!("{name} = {r} must be a non-negative number")));
            }
            let k = (n as f64 * r + QUANT_SLACK).floor();
            if k > 62.0 {
                return Err(Error::Capacity { what: format!("{name} message count (2^{k})"), required: 1 << 62, limit: 1 << 62 });
            }
            *b = k as u32;
        }
        Ok(Self { n, requested, bits, split1: None, split2: None })
    }

    pub fn quantized_rates(&self) -> RateQuad {
        let q = |k: u32| k as f64 / self.n as f64;
        RateQuad { r1s: q(self.bits[0]), r1r: q(self.bits[1]), r2s: q(self.bits[2]), r2r: q(self.bits[3]) }
    }

    fn secret_bits(&self, u: User) -> u32 {
        self.bits[2 * u.index()]
    }

    fn rand_bits(&self, u: User) -> u32 {
        self.bits[2 * u.index() + 1]
    }
}

/// `(R1r, R2r) = (I(U1;Z) + [I(U2;Z|U1) - R2]+, I(U2;Z) + [I(U1;Z|U2) - R1]+)`.
pub fn derive_randomization_rates(ch: &DiscreteTwc, prefixes: &PrefixedInputs, r1: f64, r2: f64) -> Result<(f64, f64)> {
    let t = LeakTerms::new(ch, prefixes)?;
    Ok((t.u1_z + (t.u2_z_given_u1 - r2).max(0.0), t.u2_z + (t.u1_z_given_u2 - r1).max(0.0)))
}

/// Rates with randomization filled in for the given secret rates.
///
/// The other user's total rate is taken at its smallest admissible value
/// `R_js + I(U_j;Z)`, which can only raise the derived randomization rate.
pub fn rates_for_secrecy(ch: &DiscreteTwc, prefixes: &PrefixedInputs, n: usize, r1s: f64, r2s: f64) -> Result<CodeRates> {
    let t = LeakTerms::new(ch, prefixes)?;
    let (r1r, r2r) = derive_randomization_rates(ch, prefixes, r1s + t.u1_z, r2s + t.u2_z)?;
    CodeRates::quantized(n, RateQuad { r1s, r1r, r2s, r2r })
}

struct LeakTerms {
    u1_z: f64,
    u2_z: f64,
    u1_z_given_u2: f64,
    u2_z_given_u1: f64,
}

impl LeakTerms {
    fn new(ch: &DiscreteTwc, prefixes: &PrefixedInputs) -> Result<Self> {
        let j = prefixes.joint(ch)?;
        let (u1, u2, z) = (axis::U1, axis::U2, axis::Z);
        Ok(Self {
            u1_z: mi(&j, &[u1], &[z])?,
            u2_z: mi(&j, &[u2], &[z])?,
            u1_z_given_u2: cmi(&j, &[u1], &[z], &[u2])?,
            u2_z_given_u1: cmi(&j, &[u2], &[z], &[u1])?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CodebookKind {
    /// Entries drawn i.i.d. from `p(u)`.
    Random,
    /// Row `w` is the `w`-th sequence in lexicographic order; needs
    /// `2^{n R_i} = |U_i|^n`.
    FullSpace,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decoder {
    MaxLikelihood,
    /// Robust typicality of `(u^n, own x^n, y^n)` with parameter `eps`.
    JointTypicality { eps: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Codebook {
    pub n: usize,
    pub alphabet: usize,
    pub secret_bits: u32,
    pub rand_bits: u32,
    pub seed: u64,
    /// Row-major `(ws * M_r + wr) * n + i`.
    table: Vec<u16>,
}

impl Codebook {
    pub fn secret_count(&self) -> usize {
        1 << self.secret_bits
    }

    pub fn rand_count(&self) -> usize {
        1 << self.rand_bits
    }

    pub fn len(&self) -> usize {
        self.secret_count() * self.rand_count()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Codeword of row `w = ws * M_r + wr`.
    pub fn row(&self, w: usize) -> &[u16] {
        &self.table[w * self.n..(w + 1) * self.n]
    }

    pub fn codeword(&self, ws: usize, wr: usize) -> Result<&[u16]> {
        if ws >= self.secret_count() || wr >= self.rand_count() {
            return Err(Error::Argument(format!(
                "index ({ws}, {wr}) outside {} x {}",
                self.secret_count(),
                self.rand_count()
            )));
        }
        Ok(self.row(ws * self.rand_count() + wr))
    }

    fn random(n: usize, p_u: &[f64], secret_bits: u32, rand_bits: u32, seed: u64, stream: u64) -> Result<Self> {
        let rows = 1usize << (secret_bits + rand_bits);
        let dist = WeightedIndex::new(p_u).map_err(|e| Error::Argument(format!("bad codeword pmf: {e}")))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        let table = (0..rows * n).map(|_| dist.sample(&mut rng) as u16).collect();
        Ok(Self { n, alphabet: p_u.len(), secret_bits, rand_bits, seed, table })
    }

    fn full_space(n: usize, alphabet: usize, secret_bits: u32, rand_bits: u32, seed: u64) -> Result<Self> {
        let rows = 1usize << (secret_bits + rand_bits);
        if (alphabet as u128).checked_pow(n as u32) != Some(rows as u128) {
            return Err(Error::Argument(format!(
                "a full-space codebook needs |U|^n = {alphabet}^{n} rows, rates give {rows}"
            )));
        }
        let mut table = vec![0u16; rows * n];
        for w in 0..rows {
            seq_digits(w, alphabet, &mut table[w * n..(w + 1) * n]);
        }
        Ok(Self { n, alphabet, secret_bits, rand_bits, seed, table })
    }
}

/// Write `idx` in base `base`, most significant letter first.
pub(crate) fn seq_digits(mut idx: usize, base: usize, out: &mut [impl From<u16> + Copy]) {
    for slot in out.iter_mut().rev() {
        *slot = ((idx % base) as u16).into();
        idx /= base;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BuildOptions {
    pub decoder: Decoder,
    pub codebook: CodebookKind,
    /// Limit on codebook entries here and on enumeration terms in [`exact_evaluation`].
    pub budget: u128,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self { decoder: Decoder::MaxLikelihood, codebook: CodebookKind::Random, budget: DEFAULT_BUDGET }
    }
}

/// Composite per-letter laws used by encoders, decoders and the leakage computation.
#[derive(Debug, Clone)]
pub(crate) struct LetterModel {
    /// `[x1][u2][y1]`: `p(y1 | x1, u2)`.
    pub lik1: Vec<Vec<Vec<f64>>>,
    /// `[x2][u1][y2]`: `p(y2 | x2, u1)`.
    pub lik2: Vec<Vec<Vec<f64>>>,
    /// `[u1][u2][z]`: `p(z | u1, u2)`.
    pub pz: Vec<Vec<Vec<f64>>>,
    /// Single-letter `p(u_other, own x, y)` for typicality, indexed by decoding user.
    pub typical: [Vec<f64>; 2],
}

impl LetterModel {
    fn new(ch: &DiscreteTwc, pre: &PrefixedInputs) -> Self {
        let [nx1, nx2, ny1, ny2, nz] = ch.sizes();
        let (nu1, nu2) = (pre.p_u1.mass().len(), pre.p_u2.mass().len());
        let (ky1, ky2, kz) = (ch.y1_kernel(), ch.y2_kernel(), ch.z_kernel());
        let lik1 = (0..nx1)
            .map(|x1| {
                (0..nu2)
                    .map(|u2| {
                        (0..ny1)
                            .map(|y| (0..nx2).map(|x2| pre.k_x2.prob(u2, x2) * ky1[x1 * nx2 + x2][y]).sum())
                            .collect()
                    })
                    .collect()
            })
            .collect::<Vec<Vec<Vec<f64>>>>();
        let lik2 = (0..nx2)
            .map(|x2| {
                (0..nu1)
                    .map(|u1| {
                        (0..ny2)
                            .map(|y| (0..nx1).map(|x1| pre.k_x1.prob(u1, x1) * ky2[x1 * nx2 + x2][y]).sum())
                            .collect()
                    })
                    .collect()
            })
            .collect::<Vec<Vec<Vec<f64>>>>();
        let pz = (0..nu1)
            .map(|u1| {
                (0..nu2)
                    .map(|u2| {
                        (0..nz)
                            .map(|z| {
                                let mut s = 0.0;
                                for x1 in 0..nx1 {
                                    for x2 in 0..nx2 {
                                        s += pre.k_x1.prob(u1, x1) * pre.k_x2.prob(u2, x2) * kz[x1 * nx2 + x2][z];
                                    }
                                }
                                s
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let px = |pu: &[f64], k: &crate::info::ConditionalKernel, nx: usize| -> Vec<f64> {
            (0..nx).map(|x| pu.iter().enumerate().map(|(u, &p)| p * k.prob(u, x)).sum()).collect()
        };
        let px1 = px(pre.p_u1.mass(), &pre.k_x1, nx1);
        let px2 = px(pre.p_u2.mass(), &pre.k_x2, nx2);
        // user 1 decodes from (u2, x1, y1); user 2 from (u1, x2, y2)
        let mut t1 = Vec::with_capacity(nu2 * nx1 * ny1);
        for (u2, &pu) in pre.p_u2.mass().iter().enumerate() {
            for (x1, &px) in px1.iter().enumerate() {
                t1.extend(lik1[x1][u2].iter().map(|&l| pu * px * l));
            }
        }
        let mut t2 = Vec::with_capacity(nu1 * nx2 * ny2);
        for (u1, &pu) in pre.p_u1.mass().iter().enumerate() {
            for (x2, &px) in px2.iter().enumerate() {
                t2.extend(lik2[x2][u1].iter().map(|&l| pu * px * l));
            }
        }
        Self { lik1, lik2, pz, typical: [t1, t2] }
    }

    /// `p(y | own x, u_other)` for the decoding user.
    fn lik(&self, decoder: User) -> &Vec<Vec<Vec<f64>>> {
        match decoder {
            User::One => &self.lik1,
            User::Two => &self.lik2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct WiretapCodeSystem {
    pub channel: DiscreteTwc,
    pub prefixes: PrefixedInputs,
    pub rates: CodeRates,
    pub codebooks: [Codebook; 2],
    pub decoder: Decoder,
    pub seed: u64,
    pub budget: u128,
    model: LetterModel,
}

const CODEBOOK_STREAM: u64 = 1 << 63;

pub fn build_system(ch: &DiscreteTwc, prefixes: &PrefixedInputs, rates: CodeRates, seed: u64) -> Result<WiretapCodeSystem> {
    build_system_with(ch, prefixes, rates, seed, &BuildOptions::default())
}

/// Draw both codebooks and record the rate splits.
///
/// Fails with a capacity error when the codebooks would hold more than
/// `opts.budget` letters.
pub fn build_system_with(
    ch: &DiscreteTwc,
    prefixes: &PrefixedInputs,
    mut rates: CodeRates,
    seed: u64,
    opts: &BuildOptions,
) -> Result<WiretapCodeSystem> {
    if prefixes.k_x1.to_size() != ch.size_x1() || prefixes.k_x2.to_size() != ch.size_x2() {
        return Err(Error::Argument("prefix kernels do not match the channel input alphabets".into()));
    }
    let prefixes = PrefixedInputs::new(
        prefixes.p_u1.clone(),
        prefixes.p_u2.clone(),
        prefixes.k_x1.clone(),
        prefixes.k_x2.clone(),
    )?;
    if let Decoder::JointTypicality { eps } = opts.decoder {
        if !(eps.is_finite() && eps > 0.0) {
            return Err(Error::Argument(format!("typicality eps must be positive, got {eps}")));
        }
    }
    let n = rates.n;
    let total_bits = rates.bits.iter().map(|&b| b as u128).sum::<u128>();
    let entries = ((1u128 << rates.bits[0].min(100)) << rates.bits[1].min(100)) * n as u128
        + ((1u128 << rates.bits[2].min(100)) << rates.bits[3].min(100)) * n as u128;
    if total_bits > 120 || entries > opts.budget {
        return Err(Error::Capacity { what: "codebook entries".into(), required: entries, limit: opts.budget });
    }

    let t = LeakTerms::new(ch, &prefixes)?;
    let q = rates.quantized_rates();
    let split = |total: f64, cross: f64| {
        (total >= cross).then(|| {
            let second = (n as f64 * cross + QUANT_SLACK).floor() / n as f64;
            RateSplit { first: total - second, second }
        })
    };
    rates.split1 = split(q.r1s + q.r1r, t.u1_z_given_u2);
    rates.split2 = split(q.r2s + q.r2r, t.u2_z_given_u1);

    let make = |u: User, p_u: &[f64]| match opts.codebook {
        CodebookKind::Random => Codebook::random(
            n,
            p_u,
            rates.secret_bits(u),
            rates.rand_bits(u),
            seed,
            CODEBOOK_STREAM | u.index() as u64,
        ),
        CodebookKind::FullSpace => Codebook::full_space(n, p_u.len(), rates.secret_bits(u), rates.rand_bits(u), seed),
    };
    let codebooks = [make(User::One, prefixes.p_u1.mass())?, make(User::Two, prefixes.p_u2.mass())?];
    let model = LetterModel::new(ch, &prefixes);
    Ok(WiretapCodeSystem {
        channel: ch.clone(),
        prefixes,
        rates,
        codebooks,
        decoder: opts.decoder,
        seed,
        budget: opts.budget,
        model,
    })
}

impl WiretapCodeSystem {
    pub fn n(&self) -> usize {
        self.rates.n
    }

    pub fn codebook(&self, u: User) -> &Codebook {
        &self.codebooks[u.index()]
    }

    fn prefix(&self, u: User) -> &crate::info::ConditionalKernel {
        match u {
            User::One => &self.prefixes.k_x1,
            User::Two => &self.prefixes.k_x2,
        }
    }
}

/// Channel input for secret index `ws`, with a uniform randomization index.
pub fn encode<R: Rng + ?Sized>(system: &WiretapCodeSystem, user: User, ws: usize, rng: &mut R) -> Result<Vec<usize>> {
    let cb = system.codebook(user);
    let wr = if cb.rand_count() == 1 { 0 } else { rng.random_range(0..cb.rand_count()) };
    encode_with(system, user, ws, wr, rng)
}

/// Channel input for a given `(ws, wr)`.
pub fn encode_with<R: Rng + ?Sized>(
    system: &WiretapCodeSystem,
    user: User,
    ws: usize,
    wr: usize,
    rng: &mut R,
) -> Result<Vec<usize>> {
    let u = system.codebook(user).codeword(ws, wr)?;
    let k = system.prefix(user);
    u.iter()
        .map(|&a| {
            let row = k.row(a as usize);
            if let Some(x) = row.iter().position(|&p| p == 1.0) {
                return Ok(x);
            }
            WeightedIndex::new(row)
                .map(|d| d.sample(rng))
                .map_err(|e| Error::Numerical(format!("prefix row {a}: {e}")))
        })
        .collect()
}

fn check_sequence(seq: &[usize], n: usize, size: usize, what: &str) -> Result<()> {
    if seq.len() != n {
        return Err(Error::Argument(format!("{what} has length {}, expected {n}", seq.len())));
    }
    if let Some(&bad) = seq.iter().find(|&&s| s >= size) {
        return Err(Error::Argument(format!("{what} contains symbol {bad} outside alphabet of size {size}")));
    }
    Ok(())
}

/// Decode the other user's secret index from `(y^n, own x^n)`.
///
/// Returns `None` when the typicality decoder finds no unique candidate.
pub fn decode(system: &WiretapCodeSystem, user: User, y: &[usize], own_x: &[usize]) -> Result<Option<usize>> {
    let n = system.n();
    let (ny, nx) = match user {
        User::One => (system.channel.size_y1(), system.channel.size_x1()),
        User::Two => (system.channel.size_y2(), system.channel.size_x2()),
    };
    check_sequence(y, n, ny, "y^n")?;
    check_sequence(own_x, n, nx, "own x^n")?;
    let likelihoods = codeword_likelihoods(system, user, y, own_x);
    Ok(decide(system, user, &likelihoods, y, own_x))
}

/// `p(y^n | own x^n, u^n(w))` for every row `w` of the other user's codebook.
pub(crate) fn codeword_likelihoods(system: &WiretapCodeSystem, user: User, y: &[usize], own_x: &[usize]) -> Vec<f64> {
    let cb = system.codebook(user.other());
    let lik = system.model.lik(user);
    (0..cb.len())
        .map(|w| {
            cb.row(w)
                .iter()
                .zip(y.iter().zip(own_x))
                .fold(1.0, |acc, (&u, (&yy, &xx))| acc * lik[xx][u as usize][yy])
        })
        .collect()
}

/// Decision from precomputed codeword likelihoods.
pub(crate) fn decide(system: &WiretapCodeSystem, user: User, likelihoods: &[f64], y: &[usize], own_x: &[usize]) -> Option<usize> {
    let cb = system.codebook(user.other());
    let mr = cb.rand_count();
    match system.decoder {
        Decoder::MaxLikelihood => {
            let mut best = 0;
            for (w, &l) in likelihoods.iter().enumerate() {
                if l > likelihoods[best] {
                    best = w;
                }
            }
            Some(best / mr)
        }
        Decoder::JointTypicality { eps } => {
            let p = &system.model.typical[user.index()];
            let (nx, ny) = match user {
                User::One => (system.channel.size_x1(), system.channel.size_y1()),
                User::Two => (system.channel.size_x2(), system.channel.size_y2()),
            };
            let n = system.n() as f64;
            let mut found: Option<usize> = None;
            let mut counts = vec![0usize; p.len()];
            for w in 0..cb.len() {
                counts.iter_mut().for_each(|c| *c = 0);
                for ((&u, &yy), &xx) in cb.row(w).iter().zip(y).zip(own_x) {
                    counts[(u as usize * nx + xx) * ny + yy] += 1;
                }
                let typical = counts.iter().zip(p).all(|(&c, &q)| (c as f64 / n - q).abs() <= eps * q);
                if typical {
                    match found {
                        None => found = Some(w / mr),
                        Some(s) if s == w / mr => {}
                        Some(_) => return None,
                    }
                }
            }
            found
        }
    }
}

/// Evaluation summary in the exported JSON layout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeakageReport {
    pub n: usize,
    pub rates: RateQuad,
    pub quantized_rates: RateQuad,
    pub decoder: Decoder,
    pub seed: u64,
    /// `I(W1s; Z^n) / n`.
    pub leak1: f64,
    /// `I(W2s; Z^n) / n`.
    pub leak2: f64,
    /// Error probability of user 1 decoding `W2s`.
    pub pe1: f64,
    /// Error probability of user 2 decoding `W1s`.
    pub pe2: f64,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub trials: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub codebooks: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exact,
    MonteCarlo,
}

impl LeakageReport {
    fn new(system: &WiretapCodeSystem, method: Method, leak: [f64; 2], pe: [f64; 2], trials: Option<u64>) -> Self {
        Self {
            n: system.n(),
            rates: system.rates.requested,
            quantized_rates: system.rates.quantized_rates(),
            decoder: system.decoder,
            seed: system.seed,
            leak1: leak[0],
            leak2: leak[1],
            pe1: pe[0],
            pe2: pe[1],
            method,
            trials,
            codebooks: None,
        }
    }
}
