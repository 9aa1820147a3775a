//! Modulo-2 channel with independent binary noise on each output.

use twsec::channel::{build_library_channel, LibraryKind, Mod2Params};
use twsec::error::Result;
use twsec::info::binary_entropy;
use twsec::region::{mod2_regions, outer_region_individual, region_subset, OuterClass, SearchConfig};

fn main() -> Result<()> {
    let p = Mod2Params::new(0.1, 0.1, 0.2)?;
    let m = mod2_regions(p)?;
    println!("reliability corner ({:.6}, {:.6})", m.reliability.max_r1s(), m.reliability.max_r2s());
    println!("individual  corner ({:.6}, {:.6})", m.individual.max_r1s(), m.individual.max_r2s());
    println!("joint sum cap {:.10}", m.joint.max_sum());
    let cap = 1.0 + binary_entropy(0.2)? - 2.0 * binary_entropy(0.1)?;
    println!("1 + h(0.2) - 2 h(0.1) = {cap:.10}");
    println!("individual secrecy costs nothing here: {}", m.individual == m.reliability || region_subset(&m.reliability, &m.individual, 0.0));

    let ch = build_library_channel(LibraryKind::Mod2, Some(p))?;
    let outer = outer_region_individual(&ch, OuterClass::EavesdropperDegraded, &SearchConfig::with_resolution(51))?;
    println!("outer bound corner ({:.6}, {:.6})", outer.max_r1s(), outer.max_r2s());
    println!("inner within outer: {}", region_subset(&m.individual, &outer, 1e-6));
    Ok(())
}
