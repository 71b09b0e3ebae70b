//! The named modular functions and a shared cache of their expansions.
//!
//! For `N` in {2, 3, 4, 5, 7, 13}, with `k = 24/(N-1)`:
//!
//! ```text
//! f_N^+ = (η(z)/η(Nz))^k          = q^-1 + ...
//! g_N^+ = (η(Nz)/η(z))^k          = q + ...
//! j_N   = f_N^+ + k
//! j_N^+ = j_N + N^{k/2} g_N^+
//! j     = E_4^3 / Δ,   Δ = η(z)^24
//! ```

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::eta::{eisenstein_e4, EtaQuotient};
use crate::series::{Coefficient, LaurentSeries, Ring};

/// One of the six levels with an eta-quotient hauptmodul.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Level(u32);

impl Level {
    pub const ALL: [u32; 6] = [2, 3, 4, 5, 7, 13];

    pub fn new(n: u32) -> Result<Self> {
        if Self::ALL.contains(&n) {
            Ok(Level(n))
        } else {
            Err(Error::UnsupportedLevel(n))
        }
    }

    pub fn all() -> impl Iterator<Item = Level> {
        Self::ALL.into_iter().map(Level)
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// `24 / (N - 1)`: the eta exponent and the additive constant of `j_N`.
    pub fn eta_exponent(self) -> i64 {
        24 / (i64::from(self.0) - 1)
    }

    /// `N^{12/(N-1)}`, the weight on `g_N^+` in `j_N^+`.
    pub fn fricke_weight(self) -> BigInt {
        BigInt::from(self.0).pow(12 / (self.0 - 1))
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HauptmodulId {
    /// Klein's `j`.
    J,
    /// `j_N` for `Γ_0(N)`.
    JN(Level),
    /// `j_N^+` for the Fricke group `Γ_0^+(N)`.
    JNPlus(Level),
    /// `(η(z)/η(Nz))^{24/(N-1)}`.
    FPlus(Level),
    /// `(η(Nz)/η(z))^{24/(N-1)}`.
    GPlus(Level),
    /// `1/Δ`, the common reduction of `j`, `j_2^+`, `j_4^+` mod 2.
    InverseDelta,
}

impl HauptmodulId {
    pub fn level(&self) -> Option<Level> {
        match *self {
            HauptmodulId::JN(n)
            | HauptmodulId::JNPlus(n)
            | HauptmodulId::FPlus(n)
            | HauptmodulId::GPlus(n) => Some(n),
            HauptmodulId::J | HauptmodulId::InverseDelta => None,
        }
    }

    /// Family name without the level, as used in JSON output.
    pub fn kind(&self) -> &'static str {
        match self {
            HauptmodulId::J => "j",
            HauptmodulId::JN(_) => "j_N",
            HauptmodulId::JNPlus(_) => "j_N+",
            HauptmodulId::FPlus(_) => "f_N+",
            HauptmodulId::GPlus(_) => "g_N+",
            HauptmodulId::InverseDelta => "inv_delta",
        }
    }

    /// Valuation of the expansion.
    pub fn valuation(&self) -> i64 {
        match self {
            HauptmodulId::GPlus(_) => 1,
            _ => -1,
        }
    }

    /// Every series the catalog knows about.
    pub fn all() -> Vec<HauptmodulId> {
        let mut ids = vec![HauptmodulId::J, HauptmodulId::InverseDelta];
        for n in Level::all() {
            ids.extend([
                HauptmodulId::JN(n),
                HauptmodulId::JNPlus(n),
                HauptmodulId::FPlus(n),
                HauptmodulId::GPlus(n),
            ]);
        }
        ids
    }
}

impl fmt::Display for HauptmodulId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HauptmodulId::J => f.write_str("j"),
            HauptmodulId::JN(n) => write!(f, "j_{n}"),
            HauptmodulId::JNPlus(n) => write!(f, "j_{n}+"),
            HauptmodulId::FPlus(n) => write!(f, "f_{n}+"),
            HauptmodulId::GPlus(n) => write!(f, "g_{n}+"),
            HauptmodulId::InverseDelta => f.write_str("inv_delta"),
        }
    }
}

impl FromStr for HauptmodulId {
    type Err = Error;

    /// Accepts `j`, `inv_delta`, and `j_N`, `j_N+`, `f_N+`, `g_N+` with or
    /// without the underscore (`j3+`, `f_7+`, ...).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Malformed(format!("unknown series id {s:?}"));
        let lower = s.trim().to_ascii_lowercase();
        match lower.as_str() {
            "j" => return Ok(HauptmodulId::J),
            "inv_delta" | "invdelta" | "1/delta" => return Ok(HauptmodulId::InverseDelta),
            _ => {}
        }
        let (head, rest) = lower.split_at(1);
        let rest = rest.strip_prefix('_').unwrap_or(rest);
        let (digits, plus) = match rest.strip_suffix('+') {
            Some(d) => (d, true),
            None => (rest, false),
        };
        let level = Level::new(digits.parse().map_err(|_| bad())?)?;
        match (head, plus) {
            ("j", false) => Ok(HauptmodulId::JN(level)),
            ("j", true) => Ok(HauptmodulId::JNPlus(level)),
            ("f", _) => Ok(HauptmodulId::FPlus(level)),
            ("g", _) => Ok(HauptmodulId::GPlus(level)),
            _ => Err(bad()),
        }
    }
}

fn f_plus_quotient(n: Level) -> EtaQuotient {
    let k = n.eta_exponent();
    EtaQuotient::new(&[(1, k), (u64::from(n.get()), -k)]).expect("valid factors")
}

fn g_plus_quotient(n: Level) -> EtaQuotient {
    let k = n.eta_exponent();
    EtaQuotient::new(&[(1, -k), (u64::from(n.get()), k)]).expect("valid factors")
}

fn delta(precision: i64, ring: Ring, oracle: bool) -> Result<LaurentSeries> {
    EtaQuotient::new(&[(1, 24)])
        .expect("valid factors")
        .expand(precision, ring, oracle)
}

/// Expansion of `id` certified through exactly `q^precision`.
///
/// `oracle` routes every eta factor through the naive product.
pub fn expand(id: HauptmodulId, precision: i64, ring: Ring, oracle: bool) -> Result<LaurentSeries> {
    let series = match id {
        HauptmodulId::J => {
            // 1/Δ has valuation -1 and loses two terms of precision
            let inv_delta = delta(precision + 2, ring, oracle)?.inverse()?;
            let e4 = eisenstein_e4(precision + 1, ring);
            e4.pow(3)?.mul(&inv_delta)?
        }
        HauptmodulId::InverseDelta => delta(precision + 2, ring, oracle)?.inverse()?,
        HauptmodulId::FPlus(n) => f_plus_quotient(n).expand(precision, ring, oracle)?,
        HauptmodulId::GPlus(n) => g_plus_quotient(n).expand(precision, ring, oracle)?,
        HauptmodulId::JN(n) => expand(HauptmodulId::FPlus(n), precision, ring, oracle)?
            .add_constant(&BigInt::from(n.eta_exponent()))?,
        HauptmodulId::JNPlus(n) => {
            let jn = expand(HauptmodulId::JN(n), precision, ring, oracle)?;
            let g = expand(HauptmodulId::GPlus(n), precision, ring, oracle)?;
            jn.add(&g.scale(&n.fricke_weight()))?
        }
    };
    debug_assert!(series.valid_to() >= precision);
    Ok(series.truncate(precision))
}

/// Default cap on integer expansions; integer coefficients of `j` near
/// `q^20000` already run to hundreds of digits.
pub const DEFAULT_INT_LIMIT: i64 = 20_000;

/// Concurrent-read cache of expansions keyed by `(id, ring)`.
///
/// A lookup is served by any cached entry certified at least as far as
/// requested. Entries are immutable once published.
#[derive(Debug)]
pub struct Catalog {
    oracle: bool,
    int_limit: i64,
    entries: RwLock<HashMap<(HauptmodulId, Ring), Arc<LaurentSeries>>>,
}

impl Default for Catalog {
    fn default() -> Self {
        Catalog::new(false)
    }
}

impl Catalog {
    pub fn new(oracle: bool) -> Self {
        Catalog {
            oracle,
            int_limit: DEFAULT_INT_LIMIT,
            entries: RwLock::new(HashMap::new()),
        }
    }

    pub fn with_int_limit(mut self, limit: i64) -> Self {
        self.int_limit = limit;
        self
    }

    pub fn oracle(&self) -> bool {
        self.oracle
    }

    fn cached(&self, id: HauptmodulId, ring: Ring, precision: i64) -> Option<Arc<LaurentSeries>> {
        let entries = self.entries.read().expect("catalog lock");
        entries
            .get(&(id, ring))
            .filter(|s| s.valid_to() >= precision)
            .cloned()
    }

    /// Series for `id` over `ring`, certified through at least `precision`.
    pub fn series(
        &self,
        id: HauptmodulId,
        ring: Ring,
        precision: i64,
    ) -> Result<Arc<LaurentSeries>> {
        if let Some(s) = self.cached(id, ring, precision) {
            return Ok(s);
        }
        if ring == Ring::Int && precision > self.int_limit {
            return Err(Error::IntPrecisionLimit {
                requested: precision,
                limit: self.int_limit,
            });
        }
        let fresh = Arc::new(expand(id, precision.max(1), ring, self.oracle)?);
        let mut entries = self.entries.write().expect("catalog lock");
        let slot = entries.entry((id, ring)).or_insert_with(|| fresh.clone());
        if slot.valid_to() < fresh.valid_to() {
            *slot = fresh.clone();
        }
        Ok(slot.clone())
    }

    /// GF(2) expansion; the path used for all parity work.
    pub fn parity_series(&self, id: HauptmodulId, precision: i64) -> Result<Arc<LaurentSeries>> {
        self.series(id, Ring::Gf2, precision)
    }

    /// Parity of the coefficient of `q^n` in `id`, from a GF(2) expansion
    /// certified through `precision`.
    pub fn coeff_parity(&self, id: HauptmodulId, n: i64, precision: i64) -> Result<bool> {
        if n > precision {
            return Err(Error::QueryBeyondPrecision {
                n,
                valid_to: precision,
            });
        }
        self.parity_series(id, precision)?.parity(n)
    }

    /// Replace the cached series for `(id, series.ring())`.
    ///
    /// Meant for fault injection: later lookups see `series` as long as it
    /// covers the requested precision.
    pub fn insert(&self, id: HauptmodulId, series: LaurentSeries) {
        self.entries
            .write()
            .expect("catalog lock")
            .insert((id, series.ring()), Arc::new(series));
    }

    /// A new catalog sharing every cached expansion. Later inserts into
    /// either catalog do not affect the other.
    pub fn snapshot(&self) -> Catalog {
        let entries = self.entries.read().expect("catalog lock").clone();
        Catalog {
            oracle: self.oracle,
            int_limit: self.int_limit,
            entries: RwLock::new(entries),
        }
    }

    /// Cached `(id, ring, valid_to)` triples, sorted.
    pub fn cached_entries(&self) -> Vec<(HauptmodulId, Ring, i64)> {
        let entries = self.entries.read().expect("catalog lock");
        let mut out: Vec<_> = entries
            .iter()
            .map(|(&(id, ring), s)| (id, ring, s.valid_to()))
            .collect();
        out.sort_by_key(|&(id, ring, _)| (id, ring as u8));
        out
    }

    /// Full entry with both the integer and the GF(2) expansion.
    pub fn entry(&self, id: HauptmodulId, precision: i64) -> Result<CatalogEntry> {
        let series_int = self.series(id, Ring::Int, precision)?.truncate(precision);
        let series_gf2 = self.series(id, Ring::Gf2, precision)?.truncate(precision);
        Ok(CatalogEntry {
            id,
            precision,
            series_int,
            series_gf2,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub id: HauptmodulId,
    pub precision: i64,
    pub series_int: LaurentSeries,
    pub series_gf2: LaurentSeries,
}

/// CLI-facing form: `{id, N?, precision, val, coeffs | parity_bits}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CatalogEntryJson {
    pub id: String,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub level: Option<u32>,
    pub precision: i64,
    pub val: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parity_bits: Option<Vec<u8>>,
}

impl CatalogEntryJson {
    /// Serialize `series` (certified through `precision`) for `id`.
    pub fn new(id: HauptmodulId, precision: i64, series: &LaurentSeries) -> Self {
        let series = series.truncate(precision);
        let mut json = CatalogEntryJson {
            id: id.kind().to_string(),
            level: id.level().map(Level::get),
            precision,
            val: series.val(),
            coeffs: None,
            parity_bits: None,
        };
        match series.ring() {
            Ring::Int => {
                json.coeffs = Some(
                    series
                        .terms()
                        .map(|(_, c)| match c {
                            Coefficient::Int(v) => v.to_string(),
                            Coefficient::Gf2(b) => u8::from(b).to_string(),
                        })
                        .collect(),
                )
            }
            Ring::Gf2 => {
                json.parity_bits = Some(series.terms().map(|(_, c)| u8::from(c.is_odd())).collect())
            }
        }
        json
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn level(n: u32) -> Level {
        Level::new(n).unwrap()
    }

    #[test]
    fn levels_are_restricted() {
        assert_eq!(Level::new(6), Err(Error::UnsupportedLevel(6)));
        for n in Level::all() {
            assert_eq!(24 % (n.get() - 1), 0);
            assert_eq!(12 % (n.get() - 1), 0);
        }
        assert_eq!(level(3).fricke_weight(), BigInt::from(729));
        assert_eq!(level(13).eta_exponent(), 2);
    }

    #[test]
    fn id_parsing_round_trips() {
        for id in HauptmodulId::all() {
            assert_eq!(id.to_string().parse::<HauptmodulId>().unwrap(), id);
        }
        assert_eq!(
            "j3+".parse::<HauptmodulId>().unwrap(),
            HauptmodulId::JNPlus(level(3))
        );
        assert_eq!(
            "F_7+".parse::<HauptmodulId>().unwrap(),
            HauptmodulId::FPlus(level(7))
        );
        assert_eq!(
            "j_6".parse::<HauptmodulId>(),
            Err(Error::UnsupportedLevel(6))
        );
        assert!("x".parse::<HauptmodulId>().is_err());
    }

    #[test]
    fn j_leading_coefficients() {
        let j = expand(HauptmodulId::J, 2, Ring::Int, false).unwrap();
        assert_eq!((j.val(), j.valid_to()), (-1, 2));
        assert_eq!(j.coeff_int(-1).unwrap(), BigInt::from(1));
        assert_eq!(j.coeff_int(0).unwrap(), BigInt::from(744));
        assert_eq!(j.coeff_int(1).unwrap(), BigInt::from(196884));
    }

    #[test]
    fn j3_plus_constant_term_vanishes() {
        let j3 = expand(HauptmodulId::JNPlus(level(3)), 0, Ring::Int, false).unwrap();
        assert_eq!(j3.coeff_int(-1).unwrap(), BigInt::from(1));
        assert!(j3.coeff_int(0).unwrap().is_zero());
    }

    #[test]
    fn g7_plus_leading_term() {
        let g = expand(HauptmodulId::GPlus(level(7)), 1, Ring::Int, false).unwrap();
        assert_eq!(g.val(), 1);
        assert_eq!(g.coeff_int(1).unwrap(), BigInt::from(1));
        assert_eq!(g.coeff_int(0).unwrap(), BigInt::zero());
    }

    #[test]
    fn valuations_and_gf2_paths_match() {
        for id in HauptmodulId::all() {
            let int = expand(id, 150, Ring::Int, false).unwrap();
            let gf2 = expand(id, 150, Ring::Gf2, false).unwrap();
            assert_eq!(int.valid_to(), 150, "{id}");
            assert!(
                int.coeff(id.valuation()).unwrap().is_odd(),
                "{id} leading coefficient"
            );
            assert!(
                (int.val()..id.valuation()).all(|n| int.coeff(n).unwrap().is_zero()),
                "{id} valuation"
            );
            assert_eq!(int.reduce_mod2(), gf2, "{id}");
        }
    }

    #[test]
    fn catalog_serves_larger_cached_entries() {
        let cat = Catalog::default();
        let big = cat.series(HauptmodulId::J, Ring::Gf2, 500).unwrap();
        let small = cat.series(HauptmodulId::J, Ring::Gf2, 100).unwrap();
        assert!(Arc::ptr_eq(&big, &small));
        assert_eq!(cat.coeff_parity(HauptmodulId::J, 2, 100), Ok(false));
        assert_eq!(cat.coeff_parity(HauptmodulId::J, -1, 10), Ok(true));
        assert_eq!(
            cat.coeff_parity(HauptmodulId::J, 7, 100),
            cat.coeff_parity(HauptmodulId::JNPlus(level(2)), 7, 100)
        );
        assert!(cat.coeff_parity(HauptmodulId::J, 11, 10).is_err());
    }

    #[test]
    fn int_limit_is_enforced() {
        let cat = Catalog::new(false).with_int_limit(50);
        assert_eq!(
            cat.series(HauptmodulId::J, Ring::Int, 60).unwrap_err(),
            Error::IntPrecisionLimit {
                requested: 60,
                limit: 50
            }
        );
        let entry = cat.entry(HauptmodulId::FPlus(level(3)), 40).unwrap();
        assert_eq!(entry.series_int.reduce_mod2(), entry.series_gf2);
    }

    #[test]
    fn entry_json_shape() {
        let j = expand(HauptmodulId::J, 2, Ring::Int, false).unwrap();
        let json = serde_json::to_string(&CatalogEntryJson::new(HauptmodulId::J, 1, &j)).unwrap();
        assert_eq!(
            json,
            r#"{"id":"j","precision":1,"val":-1,"coeffs":["1","744","196884"]}"#
        );
        let g = expand(HauptmodulId::JNPlus(level(3)), 3, Ring::Gf2, false).unwrap();
        let json = serde_json::to_string(&CatalogEntryJson::new(
            HauptmodulId::JNPlus(level(3)),
            3,
            &g,
        ))
        .unwrap();
        assert!(
            json.starts_with(r#"{"id":"j_N+","N":3,"precision":3,"val":-1,"parity_bits":[1,"#),
            "{json}"
        );
    }
}
