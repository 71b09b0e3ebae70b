//! Shifted-sum parity identities for `f_3^+`, `g_3^+`, `f_7^+`, `g_7^+`.
//!
//! Each identity has the shape
//!
//! ```text
//! Σ_s  c(n - s)  ≡  [n ∈ S]   (mod 2)
//! ```
//!
//! where `s` runs over one or two quadratic shift sequences and `S` is a
//! quadratic set. They come from multiplying the series by a sparse theta-type
//! sum mod 2, so terms below the valuation of `c` vanish and every sum is
//! finite.

use serde::Serialize;

use crate::error::Result;
use crate::hauptmodul::{Catalog, HauptmodulId, Level};
use crate::parity::forms::{FormShape, QuadraticForm};
use crate::series::LaurentSeries;

/// Index shifts `s(k)`; the shifted-sum reads `c(n - s(k))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ShiftSequence {
    /// `6k(k+1) + 1`, k ≥ 0
    S6,
    /// `2k(k+1) - 1`, k ≥ 0
    S2,
    /// `14k(3k-1) + 1`, k ≥ 0
    P14Minus,
    /// `14k(3k+1) + 1`, k ≥ 1
    P14Plus,
    /// `2k(3k-1)`, k ≥ 0
    P2Minus,
    /// `2k(3k+1)`, k ≥ 1
    P2Plus,
}

impl ShiftSequence {
    pub fn at(self, k: i64) -> i64 {
        match self {
            ShiftSequence::S6 => 6 * k * (k + 1) + 1,
            ShiftSequence::S2 => 2 * k * (k + 1) - 1,
            ShiftSequence::P14Minus => 14 * k * (3 * k - 1) + 1,
            ShiftSequence::P14Plus => 14 * k * (3 * k + 1) + 1,
            ShiftSequence::P2Minus => 2 * k * (3 * k - 1),
            ShiftSequence::P2Plus => 2 * k * (3 * k + 1),
        }
    }

    /// First index. The `+` halves of the two-sided pentagonal sums start at
    /// 1 because `k = 0` is already counted by the `-` half.
    pub fn first_k(self) -> i64 {
        match self {
            ShiftSequence::P14Plus | ShiftSequence::P2Plus => 1,
            _ => 0,
        }
    }

    /// Shifts `s(k)` with `s(k) <= bound`, in increasing order.
    pub fn up_to(self, bound: i64) -> impl Iterator<Item = i64> {
        (self.first_k()..)
            .map(move |k| self.at(k))
            .take_while(move |&s| s <= bound)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Lemma {
    /// `Σ_{k≥0} a_3^+(n - 6k(k+1) - 1) ≡ [n = 2l(l+1)]`, every n.
    A3,
    /// `Σ_{k≥0} b_3^+(n - 2k(k+1) + 1) ≡ [n = 6l(l+1)]`, n ≥ 1.
    B3,
    /// `Σ_{m∈Z} a_7^+(n - 14m(3m-1) - 1) ≡ [n = 2l(3l∓1)]`, every n.
    A7,
    /// `Σ_{m∈Z} b_7^+(n - 2m(3m-1)) ≡ [n = 14l(3l∓1) + 1]`, n ≥ 1.
    B7,
}

impl Lemma {
    pub const ALL: [Lemma; 4] = [Lemma::A3, Lemma::B3, Lemma::A7, Lemma::B7];

    pub fn name(self) -> &'static str {
        match self {
            Lemma::A3 => "a3+",
            Lemma::B3 => "b3+",
            Lemma::A7 => "a7+",
            Lemma::B7 => "b7+",
        }
    }

    pub fn parse(s: &str) -> Option<Lemma> {
        let key = s.trim().to_ascii_lowercase().replace(['_', '+'], "");
        Lemma::ALL
            .into_iter()
            .find(|l| l.name().replace('+', "") == key)
    }

    pub fn series(self) -> HauptmodulId {
        let level = |n| Level::new(n).expect("supported level");
        match self {
            Lemma::A3 => HauptmodulId::FPlus(level(3)),
            Lemma::B3 => HauptmodulId::GPlus(level(3)),
            Lemma::A7 => HauptmodulId::FPlus(level(7)),
            Lemma::B7 => HauptmodulId::GPlus(level(7)),
        }
    }

    pub fn shifts(self) -> &'static [ShiftSequence] {
        match self {
            Lemma::A3 => &[ShiftSequence::S6],
            Lemma::B3 => &[ShiftSequence::S2],
            Lemma::A7 => &[ShiftSequence::P14Minus, ShiftSequence::P14Plus],
            Lemma::B7 => &[ShiftSequence::P2Minus, ShiftSequence::P2Plus],
        }
    }

    /// Smallest `n` covered by the identity as stated.
    pub fn first_n(self) -> i64 {
        match self {
            Lemma::A3 | Lemma::A7 => 0,
            Lemma::B3 | Lemma::B7 => 1,
        }
    }

    /// Largest coefficient index read when evaluating at `n`.
    pub fn max_index(self, n: i64) -> i64 {
        self.shifts()
            .iter()
            .map(|s| n - s.at(s.first_k()))
            .max()
            .unwrap_or(n)
    }

    /// Right-hand side: whether `n` lies in the quadratic set (with `l = 0`
    /// allowed).
    pub fn rhs(self, n: i64) -> bool {
        let (forms, offset): (&[QuadraticForm], i64) = match self {
            Lemma::A3 => (&[QuadraticForm::TWO_OBLONG], 0),
            Lemma::B3 => (&[QuadraticForm::SIX_OBLONG], 0),
            Lemma::A7 => (
                &[
                    QuadraticForm::new(FormShape::PentMinus, 2),
                    QuadraticForm::new(FormShape::PentPlus, 2),
                ],
                0,
            ),
            Lemma::B7 => (
                &[
                    QuadraticForm::new(FormShape::PentMinus, 14),
                    QuadraticForm::new(FormShape::PentPlus, 14),
                ],
                1,
            ),
        };
        let m = n - offset;
        m >= 0 && forms.iter().any(|f| f.solve(m as u64).is_some())
    }
}

/// Parity of the shifted sum at `n`, read from `series` (the lemma's
/// function, over either ring).
pub fn lemma_lhs_on(lemma: Lemma, series: &LaurentSeries, n: i64) -> Result<bool> {
    let floor = series.val();
    let mut acc = false;
    for seq in lemma.shifts() {
        for s in seq.up_to(n - floor) {
            acc ^= series.parity(n - s)?;
        }
    }
    Ok(acc)
}

/// Shifted-sum parity at `n` using the catalog's GF(2) expansion through
/// `precision`.
pub fn lemma_lhs(lemma: Lemma, n: i64, precision: i64, catalog: &Catalog) -> Result<bool> {
    let series = catalog.parity_series(lemma.series(), precision)?;
    lemma_lhs_on(lemma, &series.truncate(precision), n)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub lemma: &'static str,
    pub n_min: i64,
    pub n_max: i64,
    pub checked: u64,
    pub counterexamples: Vec<i64>,
}

impl LemmaReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Check the identity for every `n` in its stated range up to `n_max`
/// against an explicit series.
pub fn verify_lemma_on(lemma: Lemma, series: &LaurentSeries, n_max: i64) -> Result<LemmaReport> {
    let n_min = lemma.first_n();
    let mut counterexamples = Vec::new();
    for n in n_min..=n_max {
        if lemma_lhs_on(lemma, series, n)? != lemma.rhs(n) {
            counterexamples.push(n);
        }
    }
    Ok(LemmaReport {
        lemma: lemma.name(),
        n_min,
        n_max,
        checked: (n_max - n_min + 1).max(0) as u64,
        counterexamples,
    })
}

/// Check the identity up to `n_max` against the catalog's GF(2) expansion.
pub fn verify_lemma(lemma: Lemma, n_max: i64, catalog: &Catalog) -> Result<LemmaReport> {
    let precision = lemma.max_index(n_max).max(1);
    let series = catalog.parity_series(lemma.series(), precision)?;
    verify_lemma_on(lemma, &series, n_max)
}
