use serde_json::{json, Value};

use super::RateRegion;

/// `x` rounded to 12 significant digits, printed without trailing zeros.
pub fn format_sig(x: f64) -> String {
    let rounded: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    format!("{rounded}")
}

/// CSV with header `kind,bound,r1s,r2s`, one row per frontier vertex.
pub fn regions_to_csv(regions: &[&RateRegion]) -> String {
    let mut out = String::from("kind,bound,r1s,r2s\n");
    for rg in regions {
        let (kind, bound) = rg.kind.labels();
        for p in &rg.frontier {
            out.push_str(&format!("{kind},{bound},{},{}\n", format_sig(p.r1s), format_sig(p.r2s)));
        }
    }
    out
}

/// JSON object with the region's frontier, summary figures and generators.
pub fn region_to_json(rg: &RateRegion) -> Value {
    let (kind, bound) = rg.kind.labels();
    json!({
        "kind": kind,
        "bound": bound,
        "frontier": rg.frontier,
        "max_r1s": rg.max_r1s(),
        "max_r2s": rg.max_r2s(),
        "max_sum": rg.max_sum(),
        "area": super::region_area(rg),
        "generators": rg.generators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::region::{RatePoint, RegionKind};

    #[test]
    fn sig_digits() {
        assert_eq!(format_sig(0.0), "0");
        assert_eq!(format_sig(1.0), "1");
        assert_eq!(format_sig(3.122_800_000_000_4), "3.1228");
        assert_eq!(format_sig(0.1 + 0.2), "0.3");
    }

    #[test]
    fn csv_layout() {
        let r = RateRegion::rectangle(RegionKind::Capacity, RatePoint::new(0.5, 0.25));
        assert_eq!(regions_to_csv(&[&r]), "kind,bound,r1s,r2s\nindividual,capacity,0.5,0.25\n");
        let j = region_to_json(&r);
        assert_eq!(j["area"], 0.125);
        assert_eq!(j["frontier"][0]["r2s"], 0.25);
    }
}
