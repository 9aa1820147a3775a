use microlp::{ComparisonOp, OptimizationDirection, Problem};

use super::DiscreteTwc;
use crate::error::{Error, Result};
use crate::info::ConditionalKernel;

pub const DEFAULT_DEGRADEDNESS_TOL: f64 = 1e-7;

/// Which legitimate output the eavesdropper's output should factor through.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrongOutput {
    Y1,
    Y2,
}

#[derive(Debug, Clone)]
pub struct DegradednessVerdict {
    pub feasible: bool,
    /// A kernel `p(z | y)` reproducing `p(z | x1, x2)`, present when feasible.
    pub witness: Option<ConditionalKernel>,
    /// Max absolute mismatch `|sum_y p(y|x1,x2) p(z|y) - p(z|x1,x2)|` of the best kernel found.
    pub residual: f64,
}

/// Decide whether `p(z|x1,x2) = sum_y p(y|x1,x2) k(z|y)` for some stochastic `k`.
///
/// Solved as the LP `min t` over kernel entries subject to row-stochasticity
/// and `|sum_y p(y|x) k(z|y) - p(z|x)| <= t`. The residual is recomputed on the
/// cleaned witness, so `feasible` never rests on solver slack alone.
pub fn check_stochastic_degradedness(
    ch: &DiscreteTwc,
    strong: StrongOutput,
    tol: f64,
) -> Result<DegradednessVerdict> {
    let strong_rows = match strong {
        StrongOutput::Y1 => ch.y1_kernel(),
        StrongOutput::Y2 => ch.y2_kernel(),
    };
    let z_rows = ch.z_kernel();
    let ny = strong_rows[0].len();
    let nz = ch.size_z();

    let mut lp = Problem::new(OptimizationDirection::Minimize);
    let t = lp.add_var(1.0, (0.0, f64::INFINITY));
    let k: Vec<Vec<_>> = (0..ny)
        .map(|_| (0..nz).map(|_| lp.add_var(0.0, (0.0, 1.0))).collect())
        .collect();
    for row in &k {
        let terms: Vec<_> = row.iter().map(|&v| (v, 1.0)).collect();
        lp.add_constraint(terms.as_slice(), ComparisonOp::Eq, 1.0);
    }
    for (py, pz) in strong_rows.iter().zip(&z_rows) {
        for z in 0..nz {
            let mut terms: Vec<_> = (0..ny).filter(|&y| py[y] != 0.0).map(|y| (k[y][z], py[y])).collect();
            terms.push((t, -1.0));
            lp.add_constraint(terms.as_slice(), ComparisonOp::Le, pz[z]);
            terms.last_mut().unwrap().1 = 1.0;
            lp.add_constraint(terms.as_slice(), ComparisonOp::Ge, pz[z]);
        }
    }
    let solution = lp
        .solve()
        .map_err(|e| Error::Numerical(format!("degradedness LP failed: {e}")))?
        .into_solution()
        .map_err(|_| Error::Numerical("degradedness LP was interrupted".into()))?;

    let mut table = Vec::with_capacity(ny * nz);
    for row in &k {
        let mut vals: Vec<f64> = row.iter().map(|&v| solution.var_value(v).max(0.0)).collect();
        let s: f64 = vals.iter().sum();
        if s > 0.0 {
            vals.iter_mut().for_each(|v| *v /= s);
        } else {
            vals = vec![1.0 / nz as f64; nz];
        }
        table.extend(vals);
    }
    let residual = strong_rows
        .iter()
        .zip(&z_rows)
        .flat_map(|(py, pz)| {
            let table = &table;
            (0..nz).map(move |z| {
                let mixed: f64 = (0..ny).map(|y| py[y] * table[y * nz + z]).sum();
                (mixed - pz[z]).abs()
            })
        })
        .fold(0.0, f64::max);
    let feasible = residual <= tol;
    let witness = if feasible {
        Some(ConditionalKernel::new(vec![ny], vec![nz], table)?)
    } else {
        None
    };
    Ok(DegradednessVerdict { feasible, witness, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{build_library_channel, LibraryKind, Mod2Params};

    fn mod2(a: f64, b: f64, c: f64) -> DiscreteTwc {
        build_library_channel(LibraryKind::Mod2, Some(Mod2Params::new(a, b, c).unwrap())).unwrap()
    }

    #[test]
    fn z_through_known_flip_is_feasible() {
        // Z = Y1 passed through a BSC(0.15), Y2 = Y1
        let ch = DiscreteTwc::from_fn([2, 2, 2, 2, 2], |x1, x2, y1, y2, z| {
            let s = x1 ^ x2;
            let py = if y1 == s { 0.9 } else { 0.1 };
            let pz = if z == y1 { 0.85 } else { 0.15 };
            if y2 == y1 {
                py * pz
            } else {
                0.0
            }
        })
        .unwrap();
        let v = check_stochastic_degradedness(&ch, StrongOutput::Y1, DEFAULT_DEGRADEDNESS_TOL).unwrap();
        assert!(v.feasible, "residual {}", v.residual);
        let w = v.witness.unwrap();
        assert!((w.prob(0, 1) - 0.15).abs() < 1e-6);
        assert!((w.prob(1, 0) - 0.15).abs() < 1e-6);
    }

    #[test]
    fn equal_noise_is_feasible() {
        let ch = mod2(0.2, 0.3, 0.2);
        let v = check_stochastic_degradedness(&ch, StrongOutput::Y1, DEFAULT_DEGRADEDNESS_TOL).unwrap();
        assert!(v.feasible);
        let w = v.witness.unwrap();
        assert!((w.prob(0, 0) - 1.0).abs() < 1e-6 && (w.prob(1, 1) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn less_noisy_eavesdropper_is_infeasible() {
        let ch = mod2(0.3, 0.3, 0.1);
        for s in [StrongOutput::Y1, StrongOutput::Y2] {
            let v = check_stochastic_degradedness(&ch, s, DEFAULT_DEGRADEDNESS_TOL).unwrap();
            assert!(!v.feasible);
            assert!(v.witness.is_none());
            assert!(v.residual > 1e-3);
        }
    }

    #[test]
    fn noisier_eavesdropper_is_feasible_both_ways() {
        let ch = mod2(0.1, 0.1, 0.3);
        for s in [StrongOutput::Y1, StrongOutput::Y2] {
            let v = check_stochastic_degradedness(&ch, s, DEFAULT_DEGRADEDNESS_TOL).unwrap();
            assert!(v.feasible, "residual {}", v.residual);
            // 0.1 * d = 0.3  =>  d = 0.25
            assert!((v.witness.unwrap().prob(0, 1) - 0.25).abs() < 1e-6);
        }
    }

    #[test]
    fn same_output_channel_identity_witness() {
        let ch = build_library_channel(LibraryKind::Bmc, None).unwrap();
        let v = check_stochastic_degradedness(&ch, StrongOutput::Y1, DEFAULT_DEGRADEDNESS_TOL).unwrap();
        assert!(v.feasible);
        let w = v.witness.unwrap();
        assert_eq!(w.prob(0, 0), 1.0);
        assert_eq!(w.prob(1, 1), 1.0);
    }
}
