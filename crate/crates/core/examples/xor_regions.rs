//! The noiseless XOR channel: every node sees `X1 xor X2`.
//!
//! Inner and outer bounds meet at the unit square for individual secrecy,
//! while joint secrecy halves the region.

use twsec::channel::{build_library_channel, LibraryKind};
use twsec::error::Result;
use twsec::region::{
    hausdorff_distance, inner_region_individual, inner_region_joint_symmetric, outer_region_individual,
    region_area, regions_to_csv, OuterClass, SearchConfig,
};

fn main() -> Result<()> {
    let ch = build_library_channel(LibraryKind::Xor, None)?;
    let cfg = SearchConfig::with_resolution(101);
    let inner = inner_region_individual(&ch, &cfg)?;
    let outer = outer_region_individual(&ch, OuterClass::SameOutput, &cfg)?;
    let joint = inner_region_joint_symmetric(&ch, &cfg)?;

    println!("inner corner ({}, {})", inner.max_r1s(), inner.max_r2s());
    println!("outer corner ({}, {})", outer.max_r1s(), outer.max_r2s());
    println!("Hausdorff(inner, outer) = {:.2e}", hausdorff_distance(&inner, &outer));
    println!("joint/individual area = {:.6}", region_area(&joint) / region_area(&inner));
    if let Some(g) = inner.generators.first() {
        println!("corner achieved by {}", g.descriptor);
    }
    print!("{}", regions_to_csv(&[&inner, &joint]));
    Ok(())
}
