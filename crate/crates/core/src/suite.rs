//! The full verification sweep: exact anchors, mod-2 identities between
//! catalog series, parity supports, the shifted-sum lemmas, the interval
//! theorems and the level table.
//!
//! Suites 2 to 6 read only GF(2) series from the catalog they are given, so
//! a corrupted cached bit inside the checked range surfaces as a failing
//! check.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Result;
use crate::hauptmodul::{Catalog, HauptmodulId, Level};
use crate::parity::{required_precision, verify_family, verify_lemma, Family, Lemma};
use crate::series::{LaurentSeries, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    /// Parameter bound for the theorem and table sweeps.
    pub t_max: i64,
    /// Parameter bound for the corollary sweeps.
    pub corollary_t_max: i64,
    /// Coefficient bound for identities, supports and lemmas.
    pub n_max: i64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            t_max: 50,
            corollary_t_max: 70,
            n_max: 50_000,
        }
    }
}

impl SuiteConfig {
    /// Same bounds with the corollary sweep tied to `t_max`, as the CLI's
    /// `--t-max` flag does when it is given explicitly.
    pub fn with_t_max(t_max: i64) -> Self {
        SuiteConfig {
            t_max,
            corollary_t_max: t_max,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

impl Check {
    fn new(name: impl Into<String>, ok: bool, detail: Option<Value>) -> Self {
        Check {
            name: name.into(),
            ok,
            detail,
        }
    }

    /// A check that passes iff `mismatch` is `None`; the mismatch index is
    /// kept as detail.
    fn no_mismatch(name: impl Into<String>, mismatch: Option<i64>) -> Self {
        Check::new(
            name,
            mismatch.is_none(),
            mismatch.map(|n| json!({ "first_mismatch": n })),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteOutcome {
    pub suite: u8,
    pub name: &'static str,
    pub ok: bool,
    pub checks: Vec<Check>,
}

impl SuiteOutcome {
    fn new(suite: u8, name: &'static str, checks: Vec<Check>) -> Self {
        SuiteOutcome {
            suite,
            name,
            ok: checks.iter().all(|c| c.ok),
            checks,
        }
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.ok)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyAllReport {
    pub config: SuiteConfig,
    pub ok: bool,
    pub suites: Vec<SuiteOutcome>,
}

fn level(n: u32) -> Level {
    Level::new(n).expect("supported level")
}

/// Series and precisions the parity suites read, largest first.
pub fn precision_plan(config: &SuiteConfig) -> Vec<(HauptmodulId, i64)> {
    let mut plan: Vec<(HauptmodulId, i64)> = HauptmodulId::all()
        .into_iter()
        .map(|id| (id, config.n_max + 1))
        .collect();
    let mut need = |id: HauptmodulId, p: i64| {
        if let Some(slot) = plan.iter_mut().find(|(i, _)| *i == id) {
            slot.1 = slot.1.max(p);
        }
    };
    for lemma in Lemma::ALL {
        need(lemma.series(), lemma.max_index(config.n_max));
    }
    for family in Family::THEOREMS.into_iter().chain(Family::table5()) {
        need(family.series(), required_precision(family, config.t_max));
    }
    for family in Family::corollaries() {
        need(
            family.series(),
            required_precision(family, config.corollary_t_max),
        );
    }
    plan.sort_by_key(|&(id, p)| (std::cmp::Reverse(p), id));
    plan
}

/// Expand every series in the plan up front, in parallel, so no series is
/// expanded twice at growing precision.
pub fn warm_catalog(config: &SuiteConfig, catalog: &Catalog) -> Result<()> {
    precision_plan(config)
        .par_iter()
        .try_for_each(|&(id, p)| catalog.parity_series(id, p).map(drop))
}

/// First `n` in `lo..=hi` where the parities of `a` and `b` differ.
fn first_mismatch(a: &LaurentSeries, b: &LaurentSeries, lo: i64, hi: i64) -> Result<Option<i64>> {
    for n in lo..=hi {
        if a.parity(n)? != b.parity(n)? {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// First `n` in `lo..=hi` with `excluded(n)` and an odd coefficient.
fn first_odd_outside(
    s: &LaurentSeries,
    lo: i64,
    hi: i64,
    excluded: impl Fn(i64) -> bool,
) -> Result<Option<i64>> {
    for n in (lo..=hi).filter(|&n| excluded(n)) {
        if s.parity(n)? {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

pub fn suite_anchors(catalog: &Catalog) -> Result<SuiteOutcome> {
    let j = catalog.series(HauptmodulId::J, Ring::Int, 1)?;
    let got = [j.coeff_int(-1)?, j.coeff_int(0)?, j.coeff_int(1)?];
    let want = [BigInt::from(1), BigInt::from(744), BigInt::from(196_884)];
    let detail = json!(got.iter().map(ToString::to_string).collect::<Vec<_>>());
    Ok(SuiteOutcome::new(
        1,
        "exact anchors",
        vec![Check::new(
            "j = 1/q + 744 + 196884q",
            got == want,
            Some(detail),
        )],
    ))
}

pub fn suite_mod2_identities(config: &SuiteConfig, catalog: &Catalog) -> Result<SuiteOutcome> {
    let n_max = config.n_max;
    let get = |id| catalog.parity_series(id, n_max).map(|s| s.truncate(n_max));
    let mut checks = Vec::new();

    let inv_delta = get(HauptmodulId::InverseDelta)?;
    for id in [
        HauptmodulId::J,
        HauptmodulId::JNPlus(level(2)),
        HauptmodulId::JNPlus(level(4)),
        HauptmodulId::JN(level(2)),
        HauptmodulId::JN(level(4)),
    ] {
        let s = get(id)?;
        checks.push(Check::no_mismatch(
            format!("{id} = inv_delta mod 2"),
            first_mismatch(&s, &inv_delta, -1, n_max)?,
        ));
    }

    for n in Level::all() {
        let f = get(HauptmodulId::FPlus(n))?;
        let g = get(HauptmodulId::GPlus(n))?;
        let jn = get(HauptmodulId::JN(n))?;
        let jn_plus = get(HauptmodulId::JNPlus(n))?;

        let product = f.mul(&g)?;
        let one = LaurentSeries::one(Ring::Gf2, product.valid_to());
        checks.push(Check::no_mismatch(
            format!("f_{n}+ * g_{n}+ = 1 mod 2"),
            first_mismatch(&product, &one, -1, product.valid_to())?,
        ));

        let k = n.eta_exponent();
        let rhs = f.add_constant(&BigInt::from(k))?;
        checks.push(Check::no_mismatch(
            format!("j_{n} = f_{n}+ + {k} mod 2"),
            first_mismatch(&jn, &rhs, -1, n_max)?,
        ));

        let w = n.fricke_weight();
        let rhs = jn.add(&g.scale(&w))?;
        checks.push(Check::no_mismatch(
            format!("j_{n}+ = j_{n} + {w}*g_{n}+ mod 2"),
            first_mismatch(&jn_plus, &rhs, -1, n_max)?,
        ));
    }
    Ok(SuiteOutcome::new(2, "mod-2 identities", checks))
}

pub fn suite_support(config: &SuiteConfig, catalog: &Catalog) -> Result<SuiteOutcome> {
    let n_max = config.n_max;
    let get = |id| catalog.parity_series(id, n_max);
    let mut checks = Vec::new();

    for id in Family::corollary_series() {
        let s = get(id)?;
        let hit = first_odd_outside(&s, -1, n_max, |n| n.rem_euclid(8) != 7)?;
        checks.push(Check::no_mismatch(
            format!("{id}: odd only on 7 mod 8"),
            hit,
        ));
    }

    for n in [level(3), level(7)] {
        let c = get(HauptmodulId::JNPlus(n))?;
        let a = get(HauptmodulId::FPlus(n))?;
        let b = get(HauptmodulId::GPlus(n))?;

        let hit = first_odd_outside(&c, -1, n_max, |m| m.rem_euclid(2) == 0)?;
        checks.push(Check::no_mismatch(
            format!("j_{n}+: even on 0, 2 mod 4"),
            hit,
        ));
        let hit = first_odd_outside(&a, -1, n_max, |m| m.rem_euclid(4) != 3)?;
        checks.push(Check::no_mismatch(
            format!("f_{n}+: odd only on 3 mod 4"),
            hit,
        ));
        let hit = first_odd_outside(&b, -1, n_max, |m| m.rem_euclid(4) != 1)?;
        checks.push(Check::no_mismatch(
            format!("g_{n}+: odd only on 1 mod 4"),
            hit,
        ));

        let mut split = None;
        for m in -1..=n_max {
            let source = match m.rem_euclid(4) {
                3 => &a,
                1 => &b,
                _ => continue,
            };
            if c.parity(m)? != source.parity(m)? {
                split = Some(m);
                break;
            }
        }
        checks.push(Check::no_mismatch(
            format!("j_{n}+: f_{n}+ on 3 mod 4, g_{n}+ on 1 mod 4"),
            split,
        ));
    }
    Ok(SuiteOutcome::new(3, "parity supports", checks))
}

pub fn suite_lemmas(config: &SuiteConfig, catalog: &Catalog) -> Result<SuiteOutcome> {
    let checks = Lemma::ALL
        .par_iter()
        .map(|&lemma| {
            let report = verify_lemma(lemma, config.n_max, catalog)?;
            let detail = serde_json::to_value(&report).expect("serializable report");
            Ok(Check::new(
                format!("{} shifted sum", lemma.name()),
                report.holds(),
                Some(detail),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteOutcome::new(4, "shifted-sum lemmas", checks))
}

fn sweep(families: &[(Family, i64)], catalog: &Catalog) -> Result<Vec<Check>> {
    families
        .iter()
        .map(|&(family, t_max)| {
            let summary = verify_family(family, t_max, catalog)?;
            let detail = serde_json::to_value(&summary).expect("serializable summary");
            Ok(Check::new(family.name(), summary.ok(), Some(detail)))
        })
        .collect()
}

pub fn suite_theorems(config: &SuiteConfig, catalog: &Catalog) -> Result<SuiteOutcome> {
    let mut families: Vec<(Family, i64)> = Family::corollaries()
        .into_iter()
        .map(|f| (f, config.corollary_t_max))
        .collect();
    families.extend(Family::THEOREMS.map(|f| (f, config.t_max)));
    Ok(SuiteOutcome::new(
        5,
        "interval theorems",
        sweep(&families, catalog)?,
    ))
}

pub fn suite_table5(config: &SuiteConfig, catalog: &Catalog) -> Result<SuiteOutcome> {
    let families: Vec<(Family, i64)> = Family::table5()
        .into_iter()
        .map(|f| (f, config.t_max))
        .collect();
    Ok(SuiteOutcome::new(
        6,
        "level table",
        sweep(&families, catalog)?,
    ))
}

/// Suites 2 to 6, the ones driven purely by cached GF(2) series.
pub fn parity_suites(config: &SuiteConfig, catalog: &Catalog) -> Result<Vec<SuiteOutcome>> {
    warm_catalog(config, catalog)?;
    Ok(vec![
        suite_mod2_identities(config, catalog)?,
        suite_support(config, catalog)?,
        suite_lemmas(config, catalog)?,
        suite_theorems(config, catalog)?,
        suite_table5(config, catalog)?,
    ])
}

/// `(suite, check name)` of every failing check.
pub fn failing_checks(suites: &[SuiteOutcome]) -> Vec<(u8, String)> {
    suites
        .iter()
        .flat_map(|s| s.failed_checks().map(move |c| (s.suite, c.name.clone())))
        .collect()
}

pub fn verify_all(config: &SuiteConfig, catalog: &Catalog) -> Result<VerifyAllReport> {
    let mut suites = vec![suite_anchors(catalog)?];
    suites.extend(parity_suites(config, catalog)?);
    Ok(VerifyAllReport {
        config: *config,
        ok: suites.iter().all(|s| s.ok),
        suites,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteConfig {
        SuiteConfig {
            t_max: 8,
            corollary_t_max: 8,
            n_max: 2000,
        }
    }

    #[test]
    fn small_sweep_fails_only_on_t42b_at_t1() {
        let report = verify_all(&small(), &Catalog::default()).unwrap();
        assert_eq!(report.suites.len(), 6);
        for suite in &report.suites {
            let failed: Vec<_> = suite.failed_checks().map(|c| c.name.as_str()).collect();
            if suite.suite == 5 {
                assert_eq!(failed, ["T42B"]);
            } else {
                assert!(
                    failed.is_empty(),
                    "suite {} failed: {failed:?}",
                    suite.suite
                );
            }
        }
        let t42b = report.suites[4].failed_checks().next().unwrap();
        let detail = t42b.detail.as_ref().unwrap();
        assert_eq!(detail["failures"][0]["t"], 1);
        assert_eq!(detail["failures"][0]["interval"], json!([13, 21]));
        assert!(!report.ok);
    }

    #[test]
    fn plan_covers_every_series() {
        let plan = precision_plan(&SuiteConfig::default());
        assert_eq!(plan.len(), HauptmodulId::all().len());
        let p = |id| plan.iter().find(|(i, _)| *i == id).unwrap().1;
        assert_eq!(p(HauptmodulId::FPlus(level(7))), 418_599);
        assert_eq!(p(HauptmodulId::J), 78_960);
        assert_eq!(p(HauptmodulId::GPlus(level(3))), 50_001);
    }

    #[test]
    fn flipped_bit_fails_identities() {
        let config = small();
        let catalog = Catalog::default();
        warm_catalog(&config, &catalog).unwrap();
        let id = HauptmodulId::GPlus(level(4));
        let faulty = catalog.snapshot();
        let flipped = catalog
            .parity_series(id, 1)
            .unwrap()
            .with_flipped_parity(777)
            .unwrap();
        faulty.insert(id, flipped);
        let clean = failing_checks(&parity_suites(&config, &catalog).unwrap());
        let dirty = failing_checks(&parity_suites(&config, &faulty).unwrap());
        assert!(dirty.iter().any(|c| !clean.contains(c)), "{dirty:?}");
        assert!(dirty.contains(&(2, "f_4+ * g_4+ = 1 mod 2".to_string())));
    }
}
