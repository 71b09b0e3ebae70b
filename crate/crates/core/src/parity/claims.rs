//! Interval/witness claims: "for this `t`, the interval `[lo, hi]` contains
//! an `n ≡ r (mod m)` whose coefficient has the stated parity", possibly
//! conditional on a quadratic-form hypothesis.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hauptmodul::{Catalog, HauptmodulId, Level};
use crate::parity::forms::{FormShape, Hypothesis, QuadraticForm};
use crate::parity::lemma::ShiftSequence;
use crate::series::LaurentSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn matches(self, bit: bool) -> bool {
        bit == (self == Parity::Odd)
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        })
    }
}

impl FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "odd" | "1" => Ok(Parity::Odd),
            "even" | "0" => Ok(Parity::Even),
            _ => Err(Error::Malformed(format!(
                "parity must be odd or even, got {s:?}"
            ))),
        }
    }
}

/// A family of claims indexed by `t ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Odd `c(n)`-type coefficient of `j`, `j_2^+` or `j_4^+` on 7 mod 8.
    Cor21Odd(HauptmodulId),
    /// Even counterpart of [`Family::Cor21Odd`].
    Cor21Even(HauptmodulId),
    T31A,
    T31B,
    T32A,
    T32B,
    T41A,
    T41B,
    T42A,
    T42B,
    /// Odd half of the `c_N` table row for level `N`.
    Table5Odd(Level),
    /// Even half of the `c_N` table row for level `N`.
    Table5Even(Level),
}

fn level(n: u32) -> Level {
    Level::new(n).expect("supported level")
}

type IntervalRule = (fn(i64) -> (i64, i64), &'static str);

impl Family {
    pub const THEOREMS: [Family; 8] = [
        Family::T31A,
        Family::T31B,
        Family::T32A,
        Family::T32B,
        Family::T41A,
        Family::T41B,
        Family::T42A,
        Family::T42B,
    ];

    pub fn corollary_series() -> [HauptmodulId; 3] {
        [
            HauptmodulId::J,
            HauptmodulId::JNPlus(level(2)),
            HauptmodulId::JNPlus(level(4)),
        ]
    }

    pub fn corollaries() -> Vec<Family> {
        Self::corollary_series()
            .into_iter()
            .flat_map(|id| [Family::Cor21Odd(id), Family::Cor21Even(id)])
            .collect()
    }

    pub fn table5() -> Vec<Family> {
        Level::all()
            .flat_map(|n| [Family::Table5Odd(n), Family::Table5Even(n)])
            .collect()
    }

    pub fn all() -> Vec<Family> {
        let mut out = Self::corollaries();
        out.extend(Self::THEOREMS);
        out.extend(Self::table5());
        out
    }

    /// Series whose coefficients the claim is about.
    pub fn series(self) -> HauptmodulId {
        match self {
            Family::Cor21Odd(id) | Family::Cor21Even(id) => id,
            Family::T31A | Family::T31B => HauptmodulId::FPlus(level(3)),
            Family::T32A | Family::T32B => HauptmodulId::GPlus(level(3)),
            Family::T41A | Family::T41B => HauptmodulId::FPlus(level(7)),
            Family::T42A | Family::T42B => HauptmodulId::GPlus(level(7)),
            Family::Table5Odd(n) | Family::Table5Even(n) => HauptmodulId::JN(n),
        }
    }

    pub fn expected(self) -> Parity {
        match self {
            Family::Cor21Odd(_)
            | Family::T31A
            | Family::T32A
            | Family::T41A
            | Family::T42A
            | Family::Table5Odd(_) => Parity::Odd,
            _ => Parity::Even,
        }
    }

    /// `(modulus, residue)` of the progression.
    pub fn progression(self) -> (i64, i64) {
        match self {
            Family::Cor21Odd(_) | Family::Cor21Even(_) => (8, 7),
            Family::T31A | Family::T31B | Family::T41A | Family::T41B => (4, 3),
            Family::T32A | Family::T32B | Family::T42A | Family::T42B => (4, 1),
            Family::Table5Odd(n) | Family::Table5Even(n) => match n.get() {
                2 | 4 => (8, 7),
                3 | 7 => (4, 3),
                _ => (2, 1),
            },
        }
    }

    /// Interval endpoints as functions of `t`, and their symbolic form.
    fn interval_rule(self) -> IntervalRule {
        use Family::*;
        let odd_oblong: IntervalRule = (|t| (t, 4 * t * (t + 1) - 1), "[t,4t(t+1)-1]");
        let even_oblong: IntervalRule = (
            |t| (16 * t - 1, (4 * t + 1).pow(2) - 1),
            "[16t-1,(4t+1)^2-1]",
        );
        match self {
            Cor21Odd(_) => odd_oblong,
            Cor21Even(_) => even_oblong,
            T31A => (|t| (12 * t - 1, 6 * t * (t + 1) - 1), "[12t-1,6t(t+1)-1]"),
            T31B => (
                |t| (24 * t - 1, 12 * t * (2 * t + 1) - 1),
                "[24t-1,12t(2t+1)-1]",
            ),
            T32A => (|t| (4 * t + 1, 2 * t * (t + 1) + 1), "[4t+1,2t(t+1)+1]"),
            T32B => (
                |t| (8 * t + 1, 4 * t * (2 * t + 1) + 1),
                "[8t+1,4t(2t+1)+1]",
            ),
            T41A => (
                |t| (56 * t - 29, 14 * t * (3 * t - 1) - 1),
                "[56t-29,14t(3t-1)-1]",
            ),
            T41B => (
                |t| (112 * t - 29, 28 * t * (6 * t - 1) - 1),
                "[112t-29,28t(6t-1)-1]",
            ),
            T42A => (
                |t| (8 * t - 3, 2 * t * (3 * t - 1) + 1),
                "[8t-3,2t(3t-1)+1]",
            ),
            T42B => (
                |t| (16 * t - 3, 4 * t * (6 * t - 1) + 1),
                "[16t-3,4t(6t-1)+1]",
            ),
            Table5Odd(n) => match n.get() {
                2 | 4 => odd_oblong,
                3 => T31A.interval_rule(),
                5 => (|t| (10 * t - 1, 5 * t * (t + 1) - 1), "[10t-1,5t(t+1)-1]"),
                7 => T41A.interval_rule(),
                _ => (
                    |t| (52 * t - 27, 13 * t * (3 * t - 1) - 1),
                    "[52t-27,13t(3t-1)-1]",
                ),
            },
            Table5Even(n) => match n.get() {
                2 | 4 => even_oblong,
                3 => T31B.interval_rule(),
                5 => (
                    |t| (20 * t - 1, 10 * t * (2 * t + 1) - 1),
                    "[20t-1,10t(2t+1)-1]",
                ),
                7 => T41B.interval_rule(),
                _ => (
                    |t| (104 * t - 27, 26 * t * (6 * t - 1) - 1),
                    "[104t-27,26t(6t-1)-1]",
                ),
            },
        }
    }

    pub fn interval(self, t: i64) -> (i64, i64) {
        (self.interval_rule().0)(t)
    }

    pub fn interval_formula(self) -> &'static str {
        self.interval_rule().1
    }

    /// The hypothesis value as a function of `t`, its symbolic form, and the
    /// excluded forms; `None` for unconditional families.
    #[allow(clippy::type_complexity)]
    fn hypothesis_rule(self) -> Option<(fn(i64) -> i64, &'static str, Vec<QuadraticForm>)> {
        use Family::*;
        let oblong = vec![QuadraticForm::OBLONG];
        let three_oblong = vec![QuadraticForm::new(FormShape::Oblong, 3)];
        let pent = vec![QuadraticForm::PENT_MINUS, QuadraticForm::PENT_PLUS];
        let seven_pent = vec![
            QuadraticForm::new(FormShape::PentMinus, 7),
            QuadraticForm::new(FormShape::PentPlus, 7),
        ];
        Some(match self {
            Cor21Odd(_) | Cor21Even(_) => return None,
            T31A => (|t| 3 * t * (t + 1), "3t(t+1)", oblong),
            T31B => (|t| 6 * t * (2 * t + 1), "6t(2t+1)", oblong),
            T32A => (|t| t * (t + 1), "t(t+1)", three_oblong),
            T32B => (|t| 2 * t * (2 * t + 1), "2t(2t+1)", three_oblong),
            T41A => (|t| 7 * t * (3 * t - 1), "7t(3t-1)", pent),
            T41B => (|t| 14 * t * (6 * t - 1), "14t(6t-1)", pent),
            T42A => (|t| t * (3 * t - 1), "t(3t-1)", seven_pent),
            T42B => (|t| 2 * t * (3 * t - 1), "2t(3t-1)", seven_pent),
            Table5Odd(n) => match n.get() {
                2 | 4 => return None,
                3 => return T31A.hypothesis_rule(),
                5 => (|t| 5 * t * (t + 1), "5t(t+1)", oblong),
                7 => return T41A.hypothesis_rule(),
                _ => (|t| 13 * t * (3 * t - 1), "13t(3t-1)", pent),
            },
            Table5Even(n) => match n.get() {
                2 | 4 => return None,
                3 => return T31B.hypothesis_rule(),
                5 => (|t| 10 * t * (2 * t + 1), "10t(2t+1)", oblong),
                7 => return T41B.hypothesis_rule(),
                _ => (|t| 26 * t * (6 * t - 1), "26t(6t-1)", pent),
            },
        })
    }

    pub fn hypothesis(self, t: i64) -> Option<Hypothesis> {
        self.hypothesis_rule()
            .map(|(value, expression, forms)| Hypothesis {
                expression,
                value: value(t) as u64,
                forms,
            })
    }

    /// Symbolic hypothesis, e.g. `3t(t+1) != l(l+1)`; `None` if unconditional.
    pub fn hypothesis_formula(self) -> Option<String> {
        self.hypothesis(1).map(|h| h.describe())
    }

    /// Positions used by the parity argument for the odd-witness theorems:
    /// `target - s(k)` for `0 ≤ k ≤ t-1` over the lemma's shift sequences.
    pub fn proof_points(self, t: i64) -> Option<Vec<i64>> {
        let (target, shifts): (i64, &[ShiftSequence]) = match self {
            Family::T31A => (6 * t * (t + 1), &[ShiftSequence::S6]),
            Family::T32A => (2 * t * (t + 1), &[ShiftSequence::S2]),
            Family::T41A => (
                14 * t * (3 * t - 1),
                &[ShiftSequence::P14Minus, ShiftSequence::P14Plus],
            ),
            Family::T42A => (
                2 * t * (3 * t - 1) + 1,
                &[ShiftSequence::P2Minus, ShiftSequence::P2Plus],
            ),
            _ => return None,
        };
        let mut points: Vec<i64> = shifts
            .iter()
            .flat_map(|s| (s.first_k()..t).map(move |k| target - s.at(k)))
            .collect();
        points.sort_unstable();
        points.dedup();
        Some(points)
    }

    pub fn name(self) -> String {
        match self {
            Family::Cor21Odd(id) => format!("COR21_ODD({id})"),
            Family::Cor21Even(id) => format!("COR21_EVEN({id})"),
            Family::Table5Odd(n) => format!("TABLE5_ODD({n})"),
            Family::Table5Even(n) => format!("TABLE5_EVEN({n})"),
            other => format!("{other:?}"),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    /// `T31A`..`T42B`, `COR21_ODD(j_2+)`, `TABLE5_EVEN(13)` (case-insensitive).
    fn from_str(s: &str) -> Result<Self> {
        let unsupported = || Error::UnsupportedFamily(s.to_string());
        let upper = s.trim().to_ascii_uppercase();
        if let Some(f) = Family::THEOREMS.into_iter().find(|f| f.name() == upper) {
            return Ok(f);
        }
        let (head, arg) = upper
            .strip_suffix(')')
            .and_then(|x| x.split_once('('))
            .ok_or_else(unsupported)?;
        match head {
            "COR21_ODD" | "COR21_EVEN" => {
                let id: HauptmodulId = arg.parse().map_err(|_| unsupported())?;
                if !Family::corollary_series().contains(&id) {
                    return Err(unsupported());
                }
                Ok(if head == "COR21_ODD" {
                    Family::Cor21Odd(id)
                } else {
                    Family::Cor21Even(id)
                })
            }
            "TABLE5_ODD" | "TABLE5_EVEN" => {
                let n = Level::new(arg.parse().map_err(|_| unsupported())?)?;
                Ok(if head == "TABLE5_ODD" {
                    Family::Table5Odd(n)
                } else {
                    Family::Table5Even(n)
                })
            }
            _ => Err(unsupported()),
        }
    }
}

/// One instance `(family, t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalClaim {
    pub family: Family,
    pub t: i64,
    pub lo: i64,
    pub hi: i64,
    pub modulus: i64,
    pub residue: i64,
    pub expected: Parity,
    pub hypothesis: Option<Hypothesis>,
}

impl IntervalClaim {
    pub fn hypothesis_holds(&self) -> bool {
        self.hypothesis.as_ref().is_none_or(Hypothesis::holds)
    }

    /// Members of the progression inside the interval.
    pub fn candidates(&self) -> impl Iterator<Item = i64> {
        progression_members(self.modulus, self.residue, self.lo, self.hi)
    }
}

pub fn progression_members(
    modulus: i64,
    residue: i64,
    lo: i64,
    hi: i64,
) -> impl Iterator<Item = i64> {
    let first = lo + (residue - lo).rem_euclid(modulus);
    (first..=hi).step_by(modulus as usize)
}

pub fn make_claim(family: Family, t: i64) -> Result<IntervalClaim> {
    if t < 1 {
        return Err(Error::Malformed(format!("t must be positive, got {t}")));
    }
    let (lo, hi) = family.interval(t);
    let (modulus, residue) = family.progression();
    Ok(IntervalClaim {
        family,
        t,
        lo,
        hi,
        modulus,
        residue,
        expected: family.expected(),
        hypothesis: family.hypothesis(t),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    HypothesisSkipped,
    Fail,
}

/// Outcome of checking one claim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub family: Family,
    pub t: i64,
    pub interval: [i64; 2],
    pub modulus: i64,
    pub residue: i64,
    pub expected: Parity,
    pub hypothesis_holds: bool,
    pub witnesses: Vec<i64>,
    pub verdict: Verdict,
    /// For the odd-witness theorems: whether one of the positions singled out
    /// by the parity argument is itself a witness. Informational only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub proof_point_witness: Option<bool>,
}

/// Witnesses for a claim, read from `series`.
pub fn check_claim_on(claim: &IntervalClaim, series: &LaurentSeries) -> Result<WitnessReport> {
    let witnesses = claim
        .candidates()
        .map(|n| series.parity(n).map(|bit| (n, claim.expected.matches(bit))))
        .filter(|r| !matches!(r, Ok((_, false))))
        .map(|r| r.map(|(n, _)| n))
        .collect::<Result<Vec<i64>>>()?;
    let hypothesis_holds = claim.hypothesis_holds();
    let verdict = match (hypothesis_holds, witnesses.is_empty()) {
        (false, _) => Verdict::HypothesisSkipped,
        (true, false) => Verdict::Pass,
        (true, true) => Verdict::Fail,
    };
    let proof_point_witness = claim
        .family
        .proof_points(claim.t)
        .map(|points| points.iter().any(|p| witnesses.binary_search(p).is_ok()));
    Ok(WitnessReport {
        family: claim.family,
        t: claim.t,
        interval: [claim.lo, claim.hi],
        modulus: claim.modulus,
        residue: claim.residue,
        expected: claim.expected,
        hypothesis_holds,
        witnesses,
        verdict,
        proof_point_witness,
    })
}

/// Check a claim against the catalog's GF(2) expansion of the family's series.
pub fn check_claim(claim: &IntervalClaim, catalog: &Catalog) -> Result<WitnessReport> {
    let series = catalog.parity_series(claim.family.series(), claim.hi)?;
    check_claim_on(claim, &series)
}

/// Precision needed to check `family` for every `t ≤ t_max`.
pub fn required_precision(family: Family, t_max: i64) -> i64 {
    (1..=t_max.max(1))
        .map(|t| family.interval(t).1)
        .max()
        .unwrap_or(1)
}

/// Aggregate over `t = 1..=t_max`: `{family, t_max, pass, skipped, failed, skipped_t}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilySummary {
    pub family: Family,
    pub t_max: i64,
    pub pass: u64,
    pub skipped: u64,
    pub failed: u64,
    pub skipped_t: Vec<i64>,
    /// Full reports of failing claims, serialized only when present.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<WitnessReport>,
}

impl FamilySummary {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

/// Check every `t` in `1..=t_max`. Claims are evaluated in parallel and
/// reduced in `t` order.
pub fn verify_family(family: Family, t_max: i64, catalog: &Catalog) -> Result<FamilySummary> {
    let precision = required_precision(family, t_max);
    let series = catalog.parity_series(family.series(), precision)?;
    let reports = (1..=t_max)
        .into_par_iter()
        .map(|t| check_claim_on(&make_claim(family, t)?, &series))
        .collect::<Result<Vec<_>>>()?;
    let mut summary = FamilySummary {
        family,
        t_max,
        pass: 0,
        skipped: 0,
        failed: 0,
        skipped_t: Vec::new(),
        failures: Vec::new(),
    };
    for r in reports {
        match r.verdict {
            Verdict::Pass => summary.pass += 1,
            Verdict::HypothesisSkipped => {
                summary.skipped += 1;
                summary.skipped_t.push(r.t);
            }
            Verdict::Fail => {
                summary.failed += 1;
                summary.failures.push(r);
            }
        }
    }
    Ok(summary)
}

/// Every `n` in `[lo, hi]` with `n ≡ residue (mod modulus)` whose coefficient
/// in `id` has the given parity.
pub fn search(
    id: HauptmodulId,
    (modulus, residue): (i64, i64),
    parity: Parity,
    lo: i64,
    hi: i64,
    catalog: &Catalog,
) -> Result<Vec<i64>> {
    let series = catalog.parity_series(id, hi.max(id.valuation()))?;
    let mut out = Vec::new();
    for n in progression_members(modulus, residue, lo, hi) {
        if parity.matches(series.parity(n)?) {
            out.push(n);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensityStats {
    pub odd_count: u64,
    pub total: u64,
    pub ratio: f64,
}

/// Odd coefficients among progression members `n` with `1 ≤ n ≤ n_max`.
pub fn density_stats(
    id: HauptmodulId,
    (modulus, residue): (i64, i64),
    n_max: i64,
    catalog: &Catalog,
) -> Result<DensityStats> {
    if n_max < 1 {
        return Ok(DensityStats {
            odd_count: 0,
            total: 0,
            ratio: 0.0,
        });
    }
    let series = catalog.parity_series(id, n_max)?;
    let (mut odd_count, mut total) = (0u64, 0u64);
    for n in progression_members(modulus, residue, 1, n_max) {
        total += 1;
        odd_count += u64::from(series.parity(n)?);
    }
    let ratio = if total == 0 {
        0.0
    } else {
        odd_count as f64 / total as f64
    };
    Ok(DensityStats {
        odd_count,
        total,
        ratio,
    })
}
