//! JSON channel spec files.
//!
//! ```json
//! {"type":"discrete","alphabets":{"x1":2,"x2":2,"y1":2,"y2":2,"z":2},
//!  "transition":[[[[[1,0],[0,0]],[[0,0],[0,0]]], ...]]}
//! {"type":"gaussian","P1":300,"P2":300,"N1":2,"N2":2,"Ne":3}
//! ```
//!
//! `transition` is nested `[x1][x2][y1][y2][z]`. Numbers are written in the
//! shortest form that reads back to the same `f64`, so a save/load cycle is
//! bit-exact.

use std::fs;
use std::path::Path;

use serde_json::{json, Map, Value};

use super::{DiscreteTwc, GaussianTwc};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum ChannelModel {
    Discrete(DiscreteTwc),
    Gaussian(GaussianTwc),
}

impl From<DiscreteTwc> for ChannelModel {
    fn from(c: DiscreteTwc) -> Self {
        Self::Discrete(c)
    }
}

impl From<GaussianTwc> for ChannelModel {
    fn from(g: GaussianTwc) -> Self {
        Self::Gaussian(g)
    }
}

fn parse_err(field: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse { field: field.into(), message: message.into() }
}

pub fn load_channel(path: impl AsRef<Path>) -> Result<ChannelModel> {
    let text = fs::read_to_string(path)?;
    parse_channel(&text)
}

pub fn save_channel(ch: &ChannelModel, path: impl AsRef<Path>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(&to_json(ch)).expect("channel json");
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

pub fn to_json(ch: &ChannelModel) -> Value {
    match ch {
        ChannelModel::Gaussian(g) => json!({
            "type": "gaussian", "P1": g.p1, "P2": g.p2, "N1": g.n1, "N2": g.n2, "Ne": g.ne,
        }),
        ChannelModel::Discrete(d) => {
            let [nx1, nx2, ny1, ny2, nz] = d.sizes();
            let transition: Vec<Value> = (0..nx1)
                .map(|x1| {
                    Value::Array(
                        (0..nx2)
                            .map(|x2| {
                                json!((0..ny1)
                                    .map(|y1| {
                                        (0..ny2)
                                            .map(|y2| (0..nz).map(|z| d.prob(x1, x2, y1, y2, z)).collect::<Vec<_>>())
                                            .collect::<Vec<_>>()
                                    })
                                    .collect::<Vec<_>>())
                            })
                            .collect(),
                    )
                })
                .collect();
            json!({
                "type": "discrete",
                "alphabets": {"x1": nx1, "x2": nx2, "y1": ny1, "y2": ny2, "z": nz},
                "transition": transition,
            })
        }
    }
}

/// Parse a channel spec document. Shape problems are parse errors naming the
/// field; a well-formed but non-stochastic tensor is a validation error.
pub fn parse_channel(text: &str) -> Result<ChannelModel> {
    let v: Value = serde_json::from_str(text).map_err(|e| parse_err("<document>", e.to_string()))?;
    let obj = v.as_object().ok_or_else(|| parse_err("<document>", "expected a JSON object"))?;
    let kind = obj
        .get("type")
        .ok_or_else(|| parse_err("type", "missing"))?
        .as_str()
        .ok_or_else(|| parse_err("type", "expected a string"))?;
    match kind {
        "gaussian" => {
            let num = |k: &str| -> Result<f64> {
                obj.get(k)
                    .ok_or_else(|| parse_err(k, "missing"))?
                    .as_f64()
                    .ok_or_else(|| parse_err(k, "expected a number"))
            };
            let g = GaussianTwc::new(num("P1")?, num("P2")?, num("N1")?, num("N2")?, num("Ne")?)?;
            Ok(ChannelModel::Gaussian(g))
        }
        "discrete" => parse_discrete(obj).map(ChannelModel::Discrete),
        other => Err(parse_err("type", format!("unknown channel type `{other}`"))),
    }
}

fn parse_discrete(obj: &Map<String, Value>) -> Result<DiscreteTwc> {
    let alph = obj
        .get("alphabets")
        .ok_or_else(|| parse_err("alphabets", "missing"))?
        .as_object()
        .ok_or_else(|| parse_err("alphabets", "expected an object"))?;
    let mut sizes = [0usize; 5];
    for (slot, key) in sizes.iter_mut().zip(["x1", "x2", "y1", "y2", "z"]) {
        let field = format!("alphabets.{key}");
        let n = alph
            .get(key)
            .ok_or_else(|| parse_err(&field, "missing"))?
            .as_u64()
            .ok_or_else(|| parse_err(&field, "expected a positive integer"))?;
        if n == 0 {
            return Err(parse_err(&field, "alphabet size must be >= 1"));
        }
        *slot = n as usize;
    }
    let t = obj.get("transition").ok_or_else(|| parse_err("transition", "missing"))?;
    let mut flat = Vec::with_capacity(sizes.iter().product());
    flatten(t, &sizes, 0, "transition".to_string(), &mut flat)?;
    DiscreteTwc::new(sizes, flat)
}

fn flatten(v: &Value, sizes: &[usize; 5], depth: usize, path: String, out: &mut Vec<f64>) -> Result<()> {
    if depth == sizes.len() {
        let x = v.as_f64().ok_or_else(|| parse_err(&path, "expected a number"))?;
        out.push(x);
        return Ok(());
    }
    let arr = v.as_array().ok_or_else(|| parse_err(&path, "expected an array"))?;
    if arr.len() != sizes[depth] {
        return Err(parse_err(&path, format!("expected {} entries, found {}", sizes[depth], arr.len())));
    }
    for (i, item) in arr.iter().enumerate() {
        flatten(item, sizes, depth + 1, format!("{path}[{i}]"), out)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{build_library_channel, LibraryKind, Mod2Params};

    #[test]
    fn round_trip_is_bit_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ch.json");
        for ch in [
            build_library_channel(LibraryKind::Xor, None).unwrap(),
            build_library_channel(LibraryKind::Mod2, Some(Mod2Params::new(0.1, 0.2 / 3.0, 0.3).unwrap())).unwrap(),
        ] {
            let model = ChannelModel::Discrete(ch.clone());
            save_channel(&model, &path).unwrap();
            match load_channel(&path).unwrap() {
                ChannelModel::Discrete(back) => {
                    assert_eq!(back.sizes(), ch.sizes());
                    for (a, b) in back.transition().iter().zip(ch.transition()) {
                        assert_eq!(a.to_bits(), b.to_bits());
                    }
                }
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn missing_transition_names_field() {
        let doc = r#"{"type":"discrete","alphabets":{"x1":2,"x2":2,"y1":2,"y2":2,"z":2}}"#;
        match parse_channel(doc) {
            Err(Error::Parse { field, .. }) => assert_eq!(field, "transition"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn ragged_transition_names_path() {
        let doc = r#"{"type":"discrete","alphabets":{"x1":1,"x2":1,"y1":1,"y2":1,"z":2},
                      "transition":[[[[1.0]]]]}"#;
        match parse_channel(doc) {
            Err(Error::Parse { field, .. }) => assert_eq!(field, "transition[0][0][0][0]"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_stochastic_tensor_is_validation_error() {
        let doc = r#"{"type":"discrete","alphabets":{"x1":1,"x2":1,"y1":1,"y2":1,"z":2},
                      "transition":[[[[[0.5,0.4]]]]]}"#;
        assert!(matches!(parse_channel(doc), Err(Error::Validation(_))));
    }

    #[test]
    fn gaussian_loads_even_when_not_degraded() {
        let doc = r#"{"type":"gaussian","P1":10,"P2":10,"N1":5,"N2":1,"Ne":3}"#;
        match parse_channel(doc).unwrap() {
            ChannelModel::Gaussian(g) => assert!(!g.is_degraded()),
            other => panic!("unexpected {other:?}"),
        }
        let bad = r#"{"type":"gaussian","P1":10,"P2":10,"N1":5,"N2":1}"#;
        assert!(matches!(parse_channel(bad), Err(Error::Parse { field, .. }) if field == "Ne"));
    }
}
