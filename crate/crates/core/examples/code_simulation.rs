//! Finite-blocklength wiretap codes on the modulo-2 channel: exact leakage and
//! error probabilities, and a Monte Carlo cross-check.

use twsec::channel::{build_library_channel, LibraryKind, Mod2Params};
use twsec::codes::{
    build_system, evaluate_ensemble, exact_evaluation, rates_for_secrecy, simulate_trials, BuildOptions,
    EvalMethod,
};
use twsec::error::Result;
use twsec::info::Pmf;
use twsec::region::PrefixedInputs;

fn main() -> Result<()> {
    let ch = build_library_channel(LibraryKind::Mod2, Some(Mod2Params::new(0.05, 0.05, 0.3)?))?;
    let half = Pmf::uniform(vec![2])?;
    let inputs = PrefixedInputs::identity(half.clone(), half);

    println!("{:>3} {:>6} {:>6} {:>10} {:>10} {:>8} {:>8}", "n", "R1s", "R2s", "leak1", "leak2", "pe1", "pe2");
    for n in [4, 6, 8] {
        let rates = rates_for_secrecy(&ch, &inputs, n, 0.3, 0.3)?;
        let rep = evaluate_ensemble(&ch, &inputs, &rates, 7, 8, &BuildOptions::default(), EvalMethod::Exact)?;
        let q = rep.quantized_rates;
        println!(
            "{n:>3} {:>6.3} {:>6.3} {:>10.3e} {:>10.3e} {:>8.4} {:>8.4}",
            q.r1s, q.r2s, rep.leak1, rep.leak2, rep.pe1, rep.pe2
        );
    }

    let rates = rates_for_secrecy(&ch, &inputs, 4, 0.3, 0.3)?;
    let sys = build_system(&ch, &inputs, rates, 11)?;
    let exact = exact_evaluation(&sys)?;
    let mc = simulate_trials(&sys, 20_000, 1)?;
    println!("one codebook, n = 4: exact pe1 {:.4} pe2 {:.4}", exact.pe1, exact.pe2);
    println!("             Monte Carlo pe1 {:.4} pe2 {:.4}", mc.pe1, mc.pe2);
    Ok(())
}
