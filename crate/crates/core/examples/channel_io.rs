//! Channel specs on disk: write a custom channel, read it back, and reject a
//! malformed one with a field-level message.

use twsec::channel::{load_channel, parse_channel, save_channel, to_json, ChannelModel, DiscreteTwc, GaussianTwc};
use twsec::error::Result;

fn main() -> Result<()> {
    // binary adder seen through a binary symmetric channel by the eavesdropper
    let ch = DiscreteTwc::from_fn([2, 2, 3, 3, 3], |x1, x2, y1, y2, z| {
        let s = x1 + x2;
        let zp = if z == s { 0.9 } else { 0.05 };
        f64::from(y1 == s && y2 == s) * zp
    })?;
    let dir = std::env::temp_dir();
    let path = dir.join("twsec_channel_io_example.json");
    save_channel(&ChannelModel::Discrete(ch.clone()), &path)?;
    match load_channel(&path)? {
        ChannelModel::Discrete(back) => println!("round trip exact: {}", back == ch),
        ChannelModel::Gaussian(_) => unreachable!(),
    }

    let g = ChannelModel::Gaussian(GaussianTwc::reference());
    println!("{}", serde_json::to_string(&to_json(&g)).expect("json"));

    let bad = r#"{"type": "discrete", "alphabets": {"x1": 2, "x2": 1, "y1": 1, "y2": 1, "z": 1},
                 "transition": [[[[[1]]]], [[[1]]]]}"#;
    if let Err(e) = parse_channel(bad) {
        println!("rejected: {e}");
    }
    std::fs::remove_file(path)?;
    Ok(())
}
