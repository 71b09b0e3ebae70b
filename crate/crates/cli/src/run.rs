//! Report builders for each subcommand: the JSON payload plus CSV rows.

use std::time::Instant;

use jparity::eta::EtaQuotient;
use jparity::gf2::Gf2Bits;
use jparity::hauptmodul::{expand as expand_series, CatalogEntryJson, HauptmodulId, Level};
use jparity::parity::{DensityStats, Family, FamilySummary, LemmaReport, Parity};
use jparity::suite::VerifyAllReport;
use jparity::{Coefficient, LaurentSeries, Result, Ring};
use serde_json::{json, Value};

use crate::output::Report;

fn row<const N: usize>(cells: [&dyn ToString; N]) -> Vec<String> {
    cells.iter().map(|c| c.to_string()).collect()
}

fn header(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn join(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(";")
}

fn coefficient_text(c: &Coefficient) -> String {
    match c {
        Coefficient::Int(v) => v.to_string(),
        Coefficient::Gf2(b) => u8::from(*b).to_string(),
    }
}

pub fn expand(id: HauptmodulId, precision: i64, series: &LaurentSeries) -> Report {
    let series = series.truncate(precision);
    let json =
        serde_json::to_value(CatalogEntryJson::new(id, precision, &series)).expect("serializable");
    let mut rows = vec![header(&["n", "coeff"])];
    rows.extend(
        series
            .terms()
            .map(|(n, c)| row([&n, &coefficient_text(&c)])),
    );
    Report::new(json, rows)
}

pub fn coeff(id: HauptmodulId, n: i64, c: &Coefficient) -> Report {
    let text = coefficient_text(c);
    let value = match c {
        Coefficient::Int(_) => Value::String(text.clone()),
        Coefficient::Gf2(b) => json!(u8::from(*b)),
    };
    Report::new(
        json!({ "id": id.to_string(), "n": n, "coeff": value }),
        vec![header(&["id", "n", "coeff"]), row([&id, &n, &text])],
    )
}

pub fn lemma_rows(report: &LemmaReport) -> Vec<Vec<String>> {
    vec![
        header(&["lemma", "n_min", "n_max", "checked", "counterexamples"]),
        row([
            &report.lemma,
            &report.n_min,
            &report.n_max,
            &report.checked,
            &join(&report.counterexamples),
        ]),
    ]
}

const SUMMARY_HEADER: [&str; 6] = ["family", "t_max", "pass", "skipped", "failed", "skipped_t"];

fn summary_row(s: &FamilySummary) -> Vec<String> {
    row([
        &s.family,
        &s.t_max,
        &s.pass,
        &s.skipped,
        &s.failed,
        &join(&s.skipped_t),
    ])
}

pub fn summary_rows(summaries: &[&FamilySummary]) -> Vec<Vec<String>> {
    let mut rows = vec![header(&SUMMARY_HEADER)];
    rows.extend(summaries.iter().map(|s| summary_row(s)));
    rows
}

pub fn suite_rows(report: &VerifyAllReport) -> Vec<Vec<String>> {
    let mut rows = vec![header(&["suite", "name", "check", "ok"])];
    for suite in &report.suites {
        for check in &suite.checks {
            rows.push(row([&suite.suite, &suite.name, &check.name, &check.ok]));
        }
    }
    rows
}

pub fn search(
    id: HauptmodulId,
    (modulus, residue): (i64, i64),
    parity: Parity,
    lo: i64,
    hi: i64,
    witnesses: &[i64],
) -> Report {
    let json = json!({
        "id": id.to_string(),
        "modulus": modulus,
        "residue": residue,
        "parity": parity,
        "interval": [lo, hi],
        "witnesses": witnesses,
    });
    let mut rows = vec![header(&["n"])];
    rows.extend(witnesses.iter().map(|n| row([n])));
    Report::new(json, rows)
}

fn progression_text(family: Family) -> String {
    let (m, r) = family.progression();
    format!("n = {r} mod {m}")
}

pub fn table5(t_max: i64, rows: &[(Family, FamilySummary)]) -> Report {
    let mut json_rows = Vec::new();
    let mut csv = vec![header(&[
        "N",
        "parity",
        "progression",
        "interval",
        "hypothesis",
        "t_max",
        "pass",
        "skipped",
        "failed",
        "skipped_t",
    ])];
    for pair in rows.chunks(2) {
        let level = pair[0]
            .0
            .series()
            .level()
            .map(Level::get)
            .unwrap_or_default();
        let mut entry = json!({ "N": level, "progression": progression_text(pair[0].0) });
        for (family, summary) in pair {
            let parity = family.expected();
            entry[parity.to_string()] = json!({
                "family": family.name(),
                "interval": family.interval_formula(),
                "hypothesis": family.hypothesis_formula(),
                "summary": summary,
            });
            csv.push(row([
                &level,
                &parity,
                &progression_text(*family),
                &family.interval_formula(),
                &family.hypothesis_formula().unwrap_or_default(),
                &summary.t_max,
                &summary.pass,
                &summary.skipped,
                &summary.failed,
                &join(&summary.skipped_t),
            ]));
        }
        json_rows.push(entry);
    }
    Report::new(json!({ "t_max": t_max, "rows": json_rows }), csv)
}

pub fn density(
    id: HauptmodulId,
    (modulus, residue): (i64, i64),
    n_max: i64,
    stats: &DensityStats,
) -> Report {
    let json = json!({
        "id": id.to_string(),
        "modulus": modulus,
        "residue": residue,
        "n_max": n_max,
        "odd_count": stats.odd_count,
        "total": stats.total,
        "ratio": stats.ratio,
    });
    let rows = vec![
        header(&[
            "id",
            "modulus",
            "residue",
            "n_max",
            "odd_count",
            "total",
            "ratio",
        ]),
        row([
            &id,
            &modulus,
            &residue,
            &n_max,
            &stats.odd_count,
            &stats.total,
            &stats.ratio,
        ]),
    ];
    Report::new(json, rows)
}

pub fn bench(precision: i64, oracle: bool) -> Result<Report> {
    let mut timings: Vec<(&str, i64, f64)> = Vec::new();
    let mut time = |name: &'static str, p: i64, f: &mut dyn FnMut() -> Result<()>| -> Result<()> {
        let start = Instant::now();
        f()?;
        timings.push((name, p, start.elapsed().as_secs_f64() * 1e3));
        Ok(())
    };

    let level = |n| Level::new(n).expect("supported level");
    time("expand j over GF2", precision, &mut || {
        expand_series(HauptmodulId::J, precision, Ring::Gf2, oracle).map(drop)
    })?;
    time("expand f_7+ over GF2", precision, &mut || {
        expand_series(HauptmodulId::FPlus(level(7)), precision, Ring::Gf2, oracle).map(drop)
    })?;
    let int_p = precision.min(2000);
    time("expand j over INT", int_p, &mut || {
        expand_series(HauptmodulId::J, int_p, Ring::Int, oracle).map(drop)
    })?;
    time("expand delta over INT", int_p, &mut || {
        EtaQuotient::new(&[(1, 24)])?
            .expand(int_p, Ring::Int, oracle)
            .map(drop)
    })?;

    // Dense pseudo-random operands; the xorshift state makes runs repeatable.
    let mut state = 0x9e37_79b9_7f4a_7c15u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state & 1 == 1
    };
    let len = usize::try_from(precision + 1).expect("positive precision");
    let a = LaurentSeries::from_bits(0, Gf2Bits::from_bools((0..len).map(|_| next())));
    let b = LaurentSeries::from_bits(0, Gf2Bits::from_bools((0..len).map(|_| next())));
    time("dense GF2 product", precision, &mut || a.mul(&b).map(drop))?;

    let json = json!({
        "timings": timings
            .iter()
            .map(|(name, p, ms)| json!({ "operation": name, "precision": p, "millis": ms }))
            .collect::<Vec<_>>(),
    });
    let mut rows = vec![header(&["operation", "precision", "millis"])];
    rows.extend(
        timings
            .iter()
            .map(|(name, p, ms)| row([name, p, &format!("{ms:.3}")])),
    );
    Ok(Report::new(json, rows))
}
