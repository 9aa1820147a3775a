//! Exact leakage and error probability by enumeration.
//!
//! Conditional laws are accumulated with exact summation and normalized by
//! powers of two, and leakage is evaluated in the ratio form
//! `sum p(z|w) log(p(z|w) / p(z))`. Whenever `Z^n` is exactly independent of a
//! message the ratios are exactly one and the reported leakage is exactly zero.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    build_system_with, codeword_likelihoods, decide, seq_digits, simulate_trials, BuildOptions, CodeRates,
    LeakageReport, Method, User, WiretapCodeSystem,
};
use crate::channel::DiscreteTwc;
use crate::error::{Error, Result};
use crate::numeric::ExactSum;
use crate::region::PrefixedInputs;

fn pow(base: usize, n: usize) -> u128 {
    (base as u128).saturating_pow(n as u32)
}

/// Number of enumeration terms [`exact_evaluation`] needs.
pub fn exact_cost(system: &WiretapCodeSystem) -> u128 {
    let n = system.n();
    let ch = &system.channel;
    let m1 = system.codebooks[0].len() as u128;
    let m2 = system.codebooks[1].len() as u128;
    let leak = m1.saturating_mul(m2).saturating_mul(pow(ch.size_z(), n));
    let dec1 = pow(ch.size_x1(), n).saturating_mul(pow(ch.size_y1(), n)).saturating_mul(m2);
    let dec2 = pow(ch.size_x2(), n).saturating_mul(pow(ch.size_y2(), n)).saturating_mul(m1);
    leak.max(dec1).max(dec2)
}

/// Exact `I(W1s;Z^n)/n`, `I(W2s;Z^n)/n` and decoding error probabilities of
/// one realized code, averaged over uniform messages and randomization.
pub fn exact_evaluation(system: &WiretapCodeSystem) -> Result<LeakageReport> {
    let required = exact_cost(system);
    if required > system.budget {
        return Err(Error::Capacity { what: "exact enumeration terms".into(), required, limit: system.budget });
    }
    let leak = exact_leakage(system);
    let pe1 = exact_error(system, User::One);
    let pe2 = exact_error(system, User::Two);
    Ok(LeakageReport::new(system, Method::Exact, leak, [pe1, pe2], None))
}

fn mi_term(cond: &[f64], pz: f64, weight: f64) -> f64 {
    cond.iter().filter(|&&p| p > 0.0).map(|&p| weight * p * (p / pz).log2()).sum()
}

fn exact_leakage(system: &WiretapCodeSystem) -> [f64; 2] {
    let n = system.n();
    let nz = system.channel.size_z();
    let [cb1, cb2] = &system.codebooks;
    let (m1s, m1r, m2s, m2r) = (cb1.secret_count(), cb1.rand_count(), cb2.secret_count(), cb2.rand_count());
    let pz = &system.model.pz;
    let z_count = pow(nz, n) as usize;

    let per_z: Vec<(f64, f64)> = (0..z_count)
        .into_par_iter()
        .map(|zi| {
            let mut z = vec![0usize; n];
            seq_digits(zi, nz, &mut z);
            let mut acc1 = vec![ExactSum::new(); m1s];
            let mut acc2 = vec![ExactSum::new(); m2s];
            for w1 in 0..cb1.len() {
                let u1 = cb1.row(w1);
                for w2 in 0..cb2.len() {
                    let u2 = cb2.row(w2);
                    let mut p = 1.0;
                    for i in 0..n {
                        p *= pz[u1[i] as usize][u2[i] as usize][z[i]];
                    }
                    acc1[w1 / m1r].add(p);
                    acc2[w2 / m2r].add(p);
                }
            }
            // p(z | ws) = (sum over the other indices) / (count of those indices), a power of two
            let c1: Vec<f64> = acc1.iter().map(|a| a.value() / (m1r * cb2.len()) as f64).collect();
            let c2: Vec<f64> = acc2.iter().map(|a| a.value() / (m2r * cb1.len()) as f64).collect();
            let p_z = c1.iter().copied().collect::<ExactSum>().value() / m1s as f64;
            if p_z <= 0.0 {
                return (0.0, 0.0);
            }
            (mi_term(&c1, p_z, 1.0 / m1s as f64), mi_term(&c2, p_z, 1.0 / m2s as f64))
        })
        .collect();
    let l1: f64 = per_z.iter().map(|t| t.0).sum();
    let l2: f64 = per_z.iter().map(|t| t.1).sum();
    [l1.max(0.0) / n as f64, l2.max(0.0) / n as f64]
}

/// Error probability of `user` decoding the other user's secret index.
fn exact_error(system: &WiretapCodeSystem, user: User) -> f64 {
    let n = system.n();
    let ch = &system.channel;
    let (nx, ny, own_cb, other_cb, kx) = match user {
        User::One => (ch.size_x1(), ch.size_y1(), &system.codebooks[0], &system.codebooks[1], &system.prefixes.k_x1),
        User::Two => (ch.size_x2(), ch.size_y2(), &system.codebooks[1], &system.codebooks[0], &system.prefixes.k_x2),
    };
    let mr = other_cb.rand_count();
    let m_other = other_cb.len() as f64;
    let x_count = pow(nx, n) as usize;
    let y_count = pow(ny, n) as usize;

    let per_x: Vec<f64> = (0..x_count)
        .into_par_iter()
        .map(|xi| {
            let mut x = vec![0usize; n];
            seq_digits(xi, nx, &mut x);
            let q: f64 = (0..own_cb.len())
                .map(|w| own_cb.row(w).iter().zip(&x).fold(1.0, |acc, (&u, &xx)| acc * kx.prob(u as usize, xx)))
                .collect::<ExactSum>()
                .value()
                / own_cb.len() as f64;
            if q == 0.0 {
                return 0.0;
            }
            let mut y = vec![0usize; n];
            let mut correct = ExactSum::new();
            for yi in 0..y_count {
                seq_digits(yi, ny, &mut y);
                let lik = codeword_likelihoods(system, user, &y, &x);
                if let Some(s) = decide(system, user, &lik, &y, &x) {
                    for &l in &lik[s * mr..(s + 1) * mr] {
                        correct.add(l);
                    }
                }
            }
            q * correct.value() / m_other
        })
        .collect();
    let p_correct = per_x.into_iter().collect::<ExactSum>().value();
    (1.0 - p_correct).clamp(0.0, 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvalMethod {
    Exact,
    MonteCarlo { trials: u64 },
}

/// Average of per-codebook reports over `k` codebooks drawn with seeds
/// `seed, seed + 1, ..., seed + k - 1`. Monte Carlo trials use the codebook's seed.
pub fn evaluate_ensemble(
    ch: &DiscreteTwc,
    prefixes: &PrefixedInputs,
    rates: &CodeRates,
    seed: u64,
    k: usize,
    opts: &BuildOptions,
    method: EvalMethod,
) -> Result<LeakageReport> {
    if k == 0 {
        return Err(Error::Argument("need at least one codebook".into()));
    }
    let mut reports = Vec::with_capacity(k);
    for j in 0..k {
        let sys = build_system_with(ch, prefixes, rates.clone(), seed.wrapping_add(j as u64), opts)?;
        reports.push(match method {
            EvalMethod::Exact => exact_evaluation(&sys)?,
            EvalMethod::MonteCarlo { trials } => simulate_trials(&sys, trials, sys.seed)?,
        });
    }
    let mean = |f: fn(&LeakageReport) -> f64| reports.iter().map(f).sum::<f64>() / k as f64;
    let mut out = reports[0].clone();
    out.seed = seed;
    out.leak1 = mean(|r| r.leak1);
    out.leak2 = mean(|r| r.leak2);
    out.pe1 = mean(|r| r.pe1);
    out.pe2 = mean(|r| r.pe2);
    out.codebooks = Some(k);
    Ok(out)
}
