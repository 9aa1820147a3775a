//! Closed-form inner rectangles of the binary same-output channels, checked
//! against direct evaluation of the mutual-information bound.

use twsec::channel::{build_library_channel, LibraryKind};
use twsec::error::Result;
use twsec::info::Pmf;
use twsec::region::{closed_form_binary, inner_rect_symmetric_output};

fn main() -> Result<()> {
    for kind in [LibraryKind::Bmc, LibraryKind::Xor, LibraryKind::Adder] {
        let ch = build_library_channel(kind, None)?;
        let mut worst: f64 = 0.0;
        for i in 0..=10 {
            for j in 0..=10 {
                let (p1, p2) = (i as f64 / 10.0, j as f64 / 10.0);
                let cf = closed_form_binary(kind, p1, p2)?;
                let ev = inner_rect_symmetric_output(&ch, &Pmf::bernoulli(p1)?, &Pmf::bernoulli(p2)?)?;
                worst = worst.max((cf.r1s - ev.r1s).abs()).max((cf.r2s - ev.r2s).abs());
            }
        }
        let mid = closed_form_binary(kind, 0.5, 0.5)?;
        println!("{kind}: corner at uniform inputs ({:.4}, {:.4}), max deviation {worst:.1e}", mid.r1s, mid.r2s);
    }
    Ok(())
}
