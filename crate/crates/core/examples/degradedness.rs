//! Stochastic degradedness test: is the eavesdropper's output a noisy copy of
//! a legitimate output?

use twsec::channel::{
    build_library_channel, check_stochastic_degradedness, DiscreteTwc, LibraryKind, Mod2Params, StrongOutput,
    DEFAULT_DEGRADEDNESS_TOL,
};
use twsec::error::Result;

fn report(name: &str, ch: &DiscreteTwc) -> Result<()> {
    for strong in [StrongOutput::Y1, StrongOutput::Y2] {
        let v = check_stochastic_degradedness(ch, strong, DEFAULT_DEGRADEDNESS_TOL)?;
        println!("{name:<22} {strong:?}: feasible {} residual {:.2e}", v.feasible, v.residual);
        if let Some(w) = v.witness {
            for row in w.rows() {
                println!("{:>26}{row:.4?}", "");
            }
        }
    }
    Ok(())
}

fn main() -> Result<()> {
    report("mod2(0.1, 0.1, 0.2)", &build_library_channel(LibraryKind::Mod2, Some(Mod2Params::new(0.1, 0.1, 0.2)?))?)?;
    // eavesdropper less noisy than the receivers: not degraded
    report("mod2(0.2, 0.2, 0.05)", &build_library_channel(LibraryKind::Mod2, Some(Mod2Params::new(0.2, 0.2, 0.05)?))?)?;
    // Z sees X1 directly while Y1 only sees X1 xor X2
    let leaky = DiscreteTwc::from_fn([2, 2, 2, 2, 2], |x1, x2, y1, y2, z| {
        let s = x1 ^ x2;
        f64::from(y1 == s && y2 == s && z == x1)
    })?;
    report("z = x1", &leaky)?;
    Ok(())
}
