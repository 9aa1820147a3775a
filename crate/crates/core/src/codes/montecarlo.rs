use std::collections::BTreeMap;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{decode, encode, LeakageReport, Method, User, WiretapCodeSystem};
use crate::error::{Error, Result};

#[derive(Default)]
struct Tally {
    err: [u64; 2],
    joint: [BTreeMap<(usize, Vec<u16>), u64>; 2],
    z: BTreeMap<Vec<u16>, u64>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        for i in 0..2 {
            self.err[i] += other.err[i];
            for (k, v) in other.joint[i].clone() {
                *self.joint[i].entry(k).or_insert(0) += v;
            }
        }
        for (k, v) in other.z {
            *self.z.entry(k).or_insert(0) += v;
        }
        self
    }
}

/// Plug-in `I(W; Z^n)` from counts. Biased upwards for small samples.
fn plug_in_mi(joint: &BTreeMap<(usize, Vec<u16>), u64>, z: &BTreeMap<Vec<u16>, u64>, total: u64) -> f64 {
    let mut w_counts: BTreeMap<usize, u64> = BTreeMap::new();
    for ((w, _), &c) in joint {
        *w_counts.entry(*w).or_insert(0) += c;
    }
    let t = total as f64;
    let mi: f64 = joint
        .iter()
        .map(|((w, zs), &c)| {
            let c = c as f64;
            c / t * (c * t / (w_counts[w] as f64 * z[zs] as f64)).log2()
        })
        .sum();
    mi.max(0.0)
}

/// Monte Carlo estimate of error probabilities and leakage.
///
/// Trial `t` draws all of its randomness from ChaCha8 seeded with `seed` on
/// stream `t`, and tallies are integer counts merged in key order, so the
/// report depends only on `(system, trials, seed)`.
pub fn simulate_trials(system: &WiretapCodeSystem, trials: u64, seed: u64) -> Result<LeakageReport> {
    if trials == 0 {
        return Err(Error::Argument("need at least one trial".into()));
    }
    let ch = &system.channel;
    let [_, nx2, _, ny2, nz] = ch.sizes();
    let rows: Vec<WeightedIndex<f64>> = (0..ch.size_x1() * nx2)
        .map(|r| WeightedIndex::new(ch.row(r / nx2, r % nx2)))
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Numerical(format!("channel row: {e}")))?;
    let n = system.n();
    let (m1s, m2s) = (system.codebooks[0].secret_count(), system.codebooks[1].secret_count());

    let tally = (0..trials)
        .into_par_iter()
        .try_fold(Tally::default, |mut acc, t| -> Result<Tally> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t);
            let w1 = rng.random_range(0..m1s);
            let w2 = rng.random_range(0..m2s);
            let x1 = encode(system, User::One, w1, &mut rng)?;
            let x2 = encode(system, User::Two, w2, &mut rng)?;
            let (mut y1, mut y2, mut z) = (vec![0; n], vec![0; n], vec![0u16; n]);
            for i in 0..n {
                let o = rows[x1[i] * nx2 + x2[i]].sample(&mut rng);
                y1[i] = o / (ny2 * nz);
                y2[i] = (o / nz) % ny2;
                z[i] = (o % nz) as u16;
            }
            if decode(system, User::One, &y1, &x1)? != Some(w2) {
                acc.err[0] += 1;
            }
            if decode(system, User::Two, &y2, &x2)? != Some(w1) {
                acc.err[1] += 1;
            }
            *acc.joint[0].entry((w1, z.clone())).or_insert(0) += 1;
            *acc.joint[1].entry((w2, z.clone())).or_insert(0) += 1;
            *acc.z.entry(z).or_insert(0) += 1;
            Ok(acc)
        })
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?;

    let leak = [
        plug_in_mi(&tally.joint[0], &tally.z, trials) / n as f64,
        plug_in_mi(&tally.joint[1], &tally.z, trials) / n as f64,
    ];
    let pe = [tally.err[0] as f64 / trials as f64, tally.err[1] as f64 / trials as f64];
    Ok(LeakageReport::new(system, Method::MonteCarlo, leak, pe, Some(trials)))
}
