//! Browser bindings for the demo page in `www/`: sampling a maximal-entropy
//! measure, growth tables and exceptional classification.
//!
//! The `*_impl` functions hold the logic and are tested natively; the
//! exported wrappers only convert errors.

use ratsemi_core::algebra::classify_exceptional;
use ratsemi_core::measure::{brolin_sample, SampleConfig};
use ratsemi_core::semigroup::{enumerate_growth, growth_classify, EnumPolicy, GrowthThresholds};
use ratsemi_core::{parse_map, Poly};
use wasm_bindgen::prelude::*;

const MAX_SAMPLES: usize = 200_000;
const MAX_DEPTH: usize = 14;

fn poly(text: &str) -> Result<Poly, String> {
    let m = parse_map(text).map_err(|e| e.to_string())?;
    m.as_poly().map_err(|_| "expected a polynomial".to_string())
}

/// Interleaved `re, im` of backward-orbit samples.
pub fn brolin_points_impl(map: &str, samples: usize, seed: u32) -> Result<Vec<f64>, String> {
    let p = poly(map)?;
    let cfg = SampleConfig { samples: samples.min(MAX_SAMPLES), seed: seed as u64, ..SampleConfig::default() };
    let cloud = brolin_sample(&p, &cfg).map_err(|e| e.to_string())?;
    Ok(cloud.points.iter().flat_map(|z| [z.re, z.im]).collect())
}

/// `{"counts": [...], "truncated_at": n|null, "relations": n, "class": ..., "slope": ...}`.
pub fn growth_json_impl(gens: &str, depth: usize) -> Result<String, String> {
    let maps = gens
        .split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_map(s).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    let en = enumerate_growth(&maps, depth.clamp(1, MAX_DEPTH), &EnumPolicy::default()).map_err(|e| e.to_string())?;
    let fit = growth_classify(&en.table, &GrowthThresholds::default()).ok();
    let v = serde_json::json!({
        "counts": en.table.counts,
        "truncated_at": en.table.truncated_at,
        "relations": en.relations_total,
        "first_relation": en.first_relation().map(|r| format!("{} = {}", r.left, r.right)),
        "class": fit.map(|f| format!("{:?}", f.class)),
        "slope": fit.map(|f| f.slope),
    });
    Ok(v.to_string())
}

pub fn classify_impl(map: &str) -> Result<String, String> {
    let p = poly(map)?;
    let c = classify_exceptional(&p).map_err(|e| e.to_string())?;
    Ok(format!("{c:?}"))
}

#[wasm_bindgen]
pub fn brolin_points(map: &str, samples: usize, seed: u32) -> Result<Vec<f64>, JsValue> {
    brolin_points_impl(map, samples, seed).map_err(|e| JsValue::from_str(&e))
}

/// Generators separated by `;`.
#[wasm_bindgen]
pub fn growth_json(gens: &str, depth: usize) -> Result<String, JsValue> {
    growth_json_impl(gens, depth).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn classify(map: &str) -> Result<String, JsValue> {
    classify_impl(map).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_are_interleaved() {
        let v = brolin_points_impl("z^2", 50, 1).unwrap();
        assert_eq!(v.len(), 100);
        for pair in v.chunks(2) {
            assert!((pair[0].hypot(pair[1]) - 1.0).abs() < 1e-9);
        }
        assert!(brolin_points_impl("(z+1)/(z-1)", 10, 1).is_err());
    }

    #[test]
    fn growth_summary() {
        let s: serde_json::Value = serde_json::from_str(&growth_json_impl("2*z; 2*z+1", 8).unwrap()).unwrap();
        assert_eq!(s["counts"][7], 256);
        assert_eq!(s["relations"], 0);
        assert_eq!(s["class"], "ExponentialEvidence");
        let s: serde_json::Value = serde_json::from_str(&growth_json_impl("z^2;z^3", 6).unwrap()).unwrap();
        assert_eq!(s["counts"][5], 7);
        assert!(s["first_relation"].is_string());
    }

    #[test]
    fn classification_labels() {
        assert_eq!(classify_impl("z^2-2").unwrap(), "ChebyshevConjugate(1)");
        assert_eq!(classify_impl("z^2+2*z").unwrap(), "PowerConjugate");
        assert_eq!(classify_impl("z^2-1").unwrap(), "NonExceptional");
    }
}
