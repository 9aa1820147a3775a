//! The general outer bound with auxiliaries `U`, `V1`, `V2`, compared with
//! its specialisation to a degraded eavesdropper.

use twsec::channel::{build_library_channel, LibraryKind, Mod2Params};
use twsec::error::Result;
use twsec::info::Pmf;
use twsec::region::{
    inner_rect_individual, outer_rect_theorem3, outer_rect_time_shared, product_inputs_joint, PrefixedInputs,
    Theorem3Auxiliaries, TimeSharedInputs,
};

fn main() -> Result<()> {
    let ch = build_library_channel(LibraryKind::Mod2, Some(Mod2Params::new(0.1, 0.1, 0.2)?))?;
    for p in [0.1, 0.3, 0.5] {
        let (p1, p2) = (Pmf::bernoulli(p)?, Pmf::bernoulli(0.5)?);
        let inner = inner_rect_individual(&ch, &PrefixedInputs::identity(p1.clone(), p2.clone()))?;
        let general = outer_rect_theorem3(&ch, &Theorem3Auxiliaries::trivial(&p1, &p2)?)?;
        let degraded = outer_rect_time_shared(&ch, &TimeSharedInputs::single(product_inputs_joint(&p1, &p2))?)?;
        println!(
            "P(X1=1)={p}: inner ({:.4}, {:.4})  general outer ({:.4}, {:.4})  degraded outer ({:.4}, {:.4})",
            inner.r1s, inner.r2s, general.r1s, general.r2s, degraded.r1s, degraded.r2s
        );
    }
    Ok(())
}
