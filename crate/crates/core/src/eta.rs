//! Dedekind eta quotients and the weight-4 Eisenstein series.
//!
//! `η(z) = q^{1/24} ∏_{n≥1} (1 - q^n)`. An eta quotient `∏_d η(dz)^{r_d}`
//! expands as `q^e ∏_d (q^d; q^d)_∞^{r_d}` with `e = Σ d·r_d / 24`.
//!
//! The fast path builds `(q; q)_∞` from Euler's pentagonal sum and
//! `(q; q)_∞^3` from Jacobi's triangular sum, both sparse. The term-by-term
//! product is kept as an independent oracle and can be forced for any
//! expansion.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::gf2::Gf2Bits;
use crate::series::{LaurentSeries, Ring};

/// How a single `(q^d; q^d)_∞^r` factor is expanded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExpansionMethod {
    /// Multiply out `(1 - q^{dn})` for every `n` in range.
    NaiveProduct,
    /// Euler's pentagonal number theorem.
    Pentagonal,
    /// Jacobi's identity for the cube; only for exponents divisible by 3.
    JacobiCube,
}

impl ExpansionMethod {
    /// Fast method for exponent `r`, or the naive product when `oracle` is set.
    pub fn for_exponent(r: i64, oracle: bool) -> Self {
        if oracle {
            ExpansionMethod::NaiveProduct
        } else if r % 3 == 0 {
            ExpansionMethod::JacobiCube
        } else {
            ExpansionMethod::Pentagonal
        }
    }
}

/// Build a val-0 series from sparse `(exponent, value)` terms, certified through `precision`.
fn sparse_series(
    ring: Ring,
    precision: i64,
    terms: impl Iterator<Item = (i64, i64)>,
) -> LaurentSeries {
    let len = (precision + 1) as usize;
    match ring {
        Ring::Int => {
            let mut v = vec![BigInt::zero(); len];
            for (e, c) in terms {
                v[e as usize] += c;
            }
            LaurentSeries::from_ints(0, v)
        }
        Ring::Gf2 => {
            let mut b = Gf2Bits::zeros(len);
            for (e, c) in terms {
                if c % 2 != 0 {
                    b.flip(e as usize);
                }
            }
            LaurentSeries::from_bits(0, b)
        }
    }
}

/// Generalized pentagonal exponents `k(3k∓1)/2` with sign `(-1)^k`, up to `precision`.
fn pentagonal_terms(precision: i64) -> impl Iterator<Item = (i64, i64)> {
    (0i64..)
        .map(|k| (k, k * (3 * k - 1) / 2))
        .take_while(move |&(_, e)| e <= precision)
        .flat_map(move |(k, e)| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let plus = k * (3 * k + 1) / 2;
            let second = (k > 0 && plus <= precision).then_some((plus, sign));
            std::iter::once((e, sign)).chain(second)
        })
}

type Memo = RwLock<HashMap<(Ring, i64), Arc<LaurentSeries>>>;

fn pentagonal_memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// `∏_{n≥1} (1 - q^n)` through `q^precision`, via the pentagonal sum.
///
/// Results are memoized per `(ring, precision)`; concurrent fills of the same
/// key compute identical values, so whichever insert wins is fine.
pub fn pentagonal_expand(precision: i64, ring: Ring) -> LaurentSeries {
    assert!(precision >= 0, "precision must be nonnegative");
    if let Some(s) = pentagonal_memo()
        .read()
        .expect("memo lock")
        .get(&(ring, precision))
    {
        return (**s).clone();
    }
    let s = sparse_series(ring, precision, pentagonal_terms(precision));
    pentagonal_memo()
        .write()
        .expect("memo lock")
        .entry((ring, precision))
        .or_insert_with(|| Arc::new(s.clone()));
    s
}

/// `∏_{n≥1} (1 - q^n)^3` through `q^precision`, via
/// `Σ_{k≥0} (-1)^k (2k+1) q^{k(k+1)/2}`.
pub fn jacobi_cube_expand(precision: i64, ring: Ring) -> LaurentSeries {
    assert!(precision >= 0, "precision must be nonnegative");
    let terms = (0i64..)
        .map(|k| {
            (
                k * (k + 1) / 2,
                if k % 2 == 0 { 2 * k + 1 } else { -(2 * k + 1) },
            )
        })
        .take_while(move |&(e, _)| e <= precision);
    sparse_series(ring, precision, terms)
}

/// `∏_{n≥1} (1 - q^{dn})^e` through `q^precision`, multiplying the finite
/// product out one factor at a time and then raising it to `e`.
///
/// This is the reference oracle for every fast expansion.
pub fn euler_product_expand(d: u64, e: i64, precision: i64, ring: Ring) -> Result<LaurentSeries> {
    assert!(d >= 1, "scale must be positive");
    assert!(precision >= 0, "precision must be nonnegative");
    let len = (precision + 1) as usize;
    let d = d as usize;
    let base = match ring {
        Ring::Int => {
            let mut c = vec![BigInt::zero(); len];
            c[0] = BigInt::from(1);
            for step in (1..).map(|n| n * d).take_while(|&s| s < len) {
                for k in (step..len).rev() {
                    let (lo, hi) = c.split_at_mut(k);
                    hi[0] -= &lo[k - step];
                }
            }
            LaurentSeries::from_ints(0, c)
        }
        Ring::Gf2 => {
            let mut b = Gf2Bits::zeros(len);
            b.set(0, true);
            for step in (1..).map(|n| n * d).take_while(|&s| s < len) {
                let prev = b.clone();
                b.xor_shifted(&prev, step);
            }
            LaurentSeries::from_bits(0, b)
        }
    };
    base.pow(e)
}

/// `(q^d; q^d)_∞^r` through `q^precision` using `method`.
pub fn eta_factor_expand(
    d: u64,
    r: i64,
    precision: i64,
    ring: Ring,
    method: ExpansionMethod,
) -> Result<LaurentSeries> {
    let p = precision.max(0);
    let base_precision = p / d as i64;
    let out = match method {
        ExpansionMethod::NaiveProduct => euler_product_expand(d, r, p, ring)?,
        ExpansionMethod::Pentagonal => {
            raise(&pentagonal_expand(base_precision, ring).dilate(d)?, r)?
        }
        ExpansionMethod::JacobiCube => {
            if r % 3 != 0 {
                return Err(Error::InvalidEtaQuotient(format!(
                    "exponent {r} is not a multiple of 3"
                )));
            }
            raise(&jacobi_cube_expand(base_precision, ring).dilate(d)?, r / 3)?
        }
    };
    Ok(out.truncate(precision))
}

/// Negative powers invert after raising, so a sparse base stays sparse
/// through the powering.
fn raise(base: &LaurentSeries, r: i64) -> Result<LaurentSeries> {
    let pos = base.pow(r.abs())?;
    if r < 0 {
        pos.inverse()
    } else {
        Ok(pos)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EtaFactor {
    pub scale: u64,
    pub exponent: i64,
}

/// `∏ η(d z)^{r_d}` as its list of `(d, r_d)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EtaQuotient {
    factors: Vec<EtaFactor>,
}

impl EtaQuotient {
    pub fn new(factors: &[(u64, i64)]) -> Result<Self> {
        let mut seen = Vec::new();
        for &(d, r) in factors {
            if d == 0 {
                return Err(Error::InvalidEtaQuotient("scale must be at least 1".into()));
            }
            if r == 0 {
                return Err(Error::InvalidEtaQuotient(format!(
                    "zero exponent on η({d}z)"
                )));
            }
            if seen.contains(&d) {
                return Err(Error::InvalidEtaQuotient(format!("scale {d} repeated")));
            }
            seen.push(d);
        }
        Ok(EtaQuotient {
            factors: factors
                .iter()
                .map(|&(scale, exponent)| EtaFactor { scale, exponent })
                .collect(),
        })
    }

    pub fn factors(&self) -> &[EtaFactor] {
        &self.factors
    }

    /// The integer `e` in the leading `q^e`, i.e. `Σ d·r / 24`.
    pub fn prefactor(&self) -> Result<i64> {
        let weighted_sum = self
            .factors
            .iter()
            .try_fold(0i64, |acc, f| {
                i64::try_from(f.scale)
                    .ok()
                    .and_then(|d| d.checked_mul(f.exponent))
                    .and_then(|x| acc.checked_add(x))
            })
            .ok_or(Error::ExponentOverflow)?;
        if weighted_sum % 24 != 0 {
            return Err(Error::FractionalPrefactor { weighted_sum });
        }
        Ok(weighted_sum / 24)
    }

    /// Expansion certified through exactly `q^precision`, with valuation equal
    /// to the prefactor. `oracle` forces the naive product for every factor.
    pub fn expand(&self, precision: i64, ring: Ring, oracle: bool) -> Result<LaurentSeries> {
        let e = self.prefactor()?;
        let body_precision = precision.checked_sub(e).ok_or(Error::ExponentOverflow)?;
        let mut acc = LaurentSeries::one(ring, body_precision);
        for f in &self.factors {
            let method = ExpansionMethod::for_exponent(f.exponent, oracle);
            let factor = eta_factor_expand(f.scale, f.exponent, body_precision, ring, method)?;
            acc = acc.mul(&factor)?;
        }
        acc.shift(e)
    }
}

/// `σ_3(n)` for `0 ≤ n ≤ limit` by a divisor sieve (`σ_3(0)` is left as 0).
pub fn sigma3_table(limit: usize) -> Vec<u128> {
    let mut sigma = vec![0u128; limit + 1];
    for d in 1..=limit {
        let cube = (d as u128).pow(3);
        for m in (d..=limit).step_by(d) {
            sigma[m] += cube;
        }
    }
    sigma
}

/// `E_4 = 1 + 240 Σ σ_3(n) q^n` through `q^precision`.
pub fn eisenstein_e4(precision: i64, ring: Ring) -> LaurentSeries {
    assert!(precision >= 0, "precision must be nonnegative");
    let len = (precision + 1) as usize;
    match ring {
        Ring::Int => {
            let sigma = sigma3_table(len - 1);
            let coeffs = sigma.iter().enumerate().map(|(n, &s)| {
                if n == 0 {
                    BigInt::from(1)
                } else {
                    BigInt::from(s) * 240
                }
            });
            LaurentSeries::from_ints(0, coeffs)
        }
        // 240 is even, so only the constant term survives
        Ring::Gf2 => LaurentSeries::one(Ring::Gf2, precision),
    }
}
