//! Secrecy capacity of the Gaussian two-way wiretap channel, and the price of
//! asking for joint instead of individual secrecy.

use twsec::channel::GaussianTwc;
use twsec::error::Result;
use twsec::region::{
    gaussian_capacity_corner, gaussian_individual_sumrate, gaussian_joint_region, gaussian_joint_sumrate,
    gaussian_sumrate_gap, region_area, gaussian_capacity_individual,
};

fn main() -> Result<()> {
    let g = GaussianTwc::reference();
    let corner = gaussian_capacity_corner(&g)?;
    println!("individual secrecy capacity corner: ({:.4}, {:.4})", corner.r1s, corner.r2s);
    println!("individual sum rate {:.4}", gaussian_individual_sumrate(&g)?);
    println!("joint sum rate      {:.4}", gaussian_joint_sumrate(&g)?);
    println!("gap (joint - individual) {:.4}", gaussian_sumrate_gap(&g)?);

    let joint = gaussian_joint_region(&g)?;
    let indiv = gaussian_capacity_individual(&g)?;
    println!("joint pentagon vertices:");
    for p in &joint.frontier {
        println!("  ({:.4}, {:.4})", p.r1s, p.r2s);
    }
    if let Some(r2) = joint.max_r2s_at(corner.r1s) {
        println!("with R1s at its maximum, joint secrecy leaves R2s = {r2:.4}");
    }
    println!("area ratio joint/individual {:.4}", region_area(&joint) / region_area(&indiv));

    // the gap persists when the eavesdropper gets noisier
    for ne in [3.0, 6.0, 12.0, 48.0] {
        let g = GaussianTwc::new(300.0, 300.0, 2.0, 2.0, ne)?;
        println!("Ne = {ne:>4}: gap {:.4}", gaussian_sumrate_gap(&g)?);
    }
    Ok(())
}
