//! Browser bindings for the parity demo in `www/`.
//!
//! Each exported function has a plain-Rust twin returning `Result<_, String>`
//! so the logic is testable without a JavaScript host.

use jparity::hauptmodul::{Catalog, CatalogEntryJson, HauptmodulId};
use jparity::parity::{check_claim as check, make_claim, Family};
use jparity::Ring;
use wasm_bindgen::prelude::*;

/// Largest precision the page may request; keeps a click responsive.
pub const MAX_PRECISION: i64 = 200_000;
/// Integer expansions grow quadratically in cost; cap them separately.
pub const MAX_INT_PRECISION: i64 = 400;

thread_local! {
    static CATALOG: Catalog = Catalog::default();
}

fn parse_id(id: &str) -> Result<HauptmodulId, String> {
    id.parse().map_err(|e: jparity::Error| e.to_string())
}

fn bounded(precision: i64, max: i64) -> Result<i64, String> {
    if !(1..=max).contains(&precision) {
        return Err(format!("precision must be between 1 and {max}"));
    }
    Ok(precision)
}

/// Parity bits of `id` from `q^-1` through `q^precision`; exponents below
/// the valuation read as 0.
pub fn parity_bits_of(id: &str, precision: i64) -> Result<Vec<u8>, String> {
    let id = parse_id(id)?;
    let precision = bounded(precision, MAX_PRECISION)?;
    CATALOG.with(|c| {
        let s = c
            .parity_series(id, precision)
            .map_err(|e| e.to_string())?
            .truncate(precision);
        Ok((-1..=precision)
            .map(|n| u8::from(s.parity(n).unwrap_or(false)))
            .collect())
    })
}

/// Integer coefficients as the CLI's JSON entry.
pub fn coefficients_of(id: &str, precision: i64) -> Result<String, String> {
    let id = parse_id(id)?;
    let precision = bounded(precision, MAX_INT_PRECISION)?;
    CATALOG.with(|c| {
        let s = c
            .series(id, Ring::Int, precision)
            .map_err(|e| e.to_string())?;
        serde_json::to_string(&CatalogEntryJson::new(id, precision, &s)).map_err(|e| e.to_string())
    })
}

/// Witness report for one claim instance, as JSON.
pub fn claim_report(family: &str, t: i64) -> Result<String, String> {
    let family: Family = family.parse().map_err(|e: jparity::Error| e.to_string())?;
    let claim = make_claim(family, t).map_err(|e| e.to_string())?;
    if claim.hi > MAX_PRECISION {
        return Err(format!(
            "interval reaches q^{}, beyond the demo limit q^{MAX_PRECISION}",
            claim.hi
        ));
    }
    CATALOG.with(|c| {
        let report = check(&claim, c).map_err(|e| e.to_string())?;
        let mut json = serde_json::to_value(&report).map_err(|e| e.to_string())?;
        json["series"] = family.series().to_string().into();
        json["hypothesis"] = family.hypothesis_formula().into();
        Ok(json.to_string())
    })
}

/// Every claim family name, as a JSON array.
pub fn family_list() -> String {
    let names: Vec<String> = Family::all().into_iter().map(|f| f.name()).collect();
    serde_json::to_string(&names).expect("strings serialize")
}

// Exports take `i32` so JavaScript passes plain numbers rather than BigInt.
#[wasm_bindgen]
pub fn parity_bits(id: &str, precision: i32) -> Result<Vec<u8>, JsValue> {
    parity_bits_of(id, precision.into()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn coefficients(id: &str, precision: i32) -> Result<String, JsValue> {
    coefficients_of(id, precision.into()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn check_claim(family: &str, t: i32) -> Result<String, JsValue> {
    claim_report(family, t.into()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn families() -> String {
    family_list()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bits_start_at_q_minus_one() {
        let bits = parity_bits_of("j", 7).unwrap();
        assert_eq!(bits, [1, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(parity_bits_of("g_3+", 2).unwrap(), [0, 0, 1, 0]);
        assert!(parity_bits_of("j", 0).is_err());
        assert!(parity_bits_of("k", 10).is_err());
    }

    #[test]
    fn coefficients_match_the_cli_shape() {
        let json = coefficients_of("j", 1).unwrap();
        assert_eq!(
            json,
            r#"{"id":"j","precision":1,"val":-1,"coeffs":["1","744","196884"]}"#
        );
        assert!(coefficients_of("j", MAX_INT_PRECISION + 1).is_err());
    }

    #[test]
    fn claim_reports_carry_the_verdict() {
        let v: serde_json::Value = serde_json::from_str(&claim_report("T31A", 2).unwrap()).unwrap();
        assert_eq!(v["interval"], serde_json::json!([23, 35]));
        assert_eq!(v["series"], "f_3+");
        let v: serde_json::Value = serde_json::from_str(&claim_report("T42B", 1).unwrap()).unwrap();
        assert_eq!(v["verdict"], "FAIL");
        assert!(claim_report("T41B", 60).is_err());
    }

    #[test]
    fn family_list_is_complete() {
        let names: Vec<String> = serde_json::from_str(&family_list()).unwrap();
        assert_eq!(names.len(), 26);
        assert!(names.contains(&"TABLE5_EVEN(13)".to_string()));
    }
}
