//! Truncated Laurent series in `q` with explicit precision.
//!
//! A [`LaurentSeries`] stores the coefficients at exponents
//! `val..=valid_to`. Exponents below `val` are exactly zero; exponents above
//! `valid_to` are unknown, and querying them is an error. Every operation
//! derives the precision of its output from the precision of its inputs, so
//! a coefficient that can be read back is always a correct one.
//!
//! Two coefficient rings are supported: arbitrary-precision integers and
//! GF(2). GF(2) coefficients are stored as packed bits.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::Gf2Bits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    #[serde(rename = "INT")]
    Int,
    #[serde(rename = "GF2")]
    Gf2,
}

impl std::fmt::Display for Ring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Ring::Int => "INT",
            Ring::Gf2 => "GF2",
        })
    }
}

/// A single ring element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coefficient {
    Int(BigInt),
    Gf2(bool),
}

impl Coefficient {
    pub fn is_odd(&self) -> bool {
        match self {
            Coefficient::Int(c) => c.is_odd(),
            Coefficient::Gf2(b) => *b,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Int(c) => c.is_zero(),
            Coefficient::Gf2(b) => !*b,
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
enum Coeffs {
    Int(Vec<BigInt>),
    Gf2(Gf2Bits),
}

impl Coeffs {
    fn len(&self) -> usize {
        match self {
            Coeffs::Int(v) => v.len(),
            Coeffs::Gf2(b) => b.len(),
        }
    }

    fn ring(&self) -> Ring {
        match self {
            Coeffs::Int(_) => Ring::Int,
            Coeffs::Gf2(_) => Ring::Gf2,
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    val: i64,
    valid_to: i64,
    coeffs: Coeffs,
}

impl std::fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LaurentSeries<{}>(", self.ring())?;
        let shown = self.len().min(12);
        for i in 0..shown {
            let e = self.val + i as i64;
            match &self.coeffs {
                Coeffs::Int(v) => write!(f, "{}q^{} + ", v[i], e)?,
                Coeffs::Gf2(b) => write!(f, "{}q^{} + ", u8::from(b.get(i)), e)?,
            }
        }
        write!(f, "O(q^{}))", self.valid_to + 1)
    }
}

fn add_exp(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::ExponentOverflow)
}

fn mul_exp(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::ExponentOverflow)
}

fn window_len(val: i64, valid_to: i64) -> usize {
    usize::try_from(valid_to - val + 1).unwrap_or(0)
}

impl LaurentSeries {
    /// Integer series with `coeffs[i]` at exponent `val + i`; certified
    /// through the last supplied coefficient.
    pub fn from_ints<T: Into<BigInt>>(val: i64, coeffs: impl IntoIterator<Item = T>) -> Self {
        let coeffs: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        let valid_to = val + coeffs.len() as i64 - 1;
        LaurentSeries {
            val,
            valid_to,
            coeffs: Coeffs::Int(coeffs),
        }
    }

    /// GF(2) series with bit `i` at exponent `val + i`.
    pub fn from_bits(val: i64, bits: Gf2Bits) -> Self {
        let valid_to = val + bits.len() as i64 - 1;
        LaurentSeries {
            val,
            valid_to,
            coeffs: Coeffs::Gf2(bits),
        }
    }

    /// The zero series, certified on `val..=valid_to`.
    pub fn zero(ring: Ring, val: i64, valid_to: i64) -> Self {
        let valid_to = valid_to.max(val - 1);
        let len = window_len(val, valid_to);
        let coeffs = match ring {
            Ring::Int => Coeffs::Int(vec![BigInt::zero(); len]),
            Ring::Gf2 => Coeffs::Gf2(Gf2Bits::zeros(len)),
        };
        LaurentSeries {
            val,
            valid_to,
            coeffs,
        }
    }

    /// `c * q^0`, certified through `valid_to`.
    pub fn constant(ring: Ring, c: &BigInt, valid_to: i64) -> Self {
        let mut s = LaurentSeries::zero(ring, 0, valid_to);
        if valid_to >= 0 {
            match &mut s.coeffs {
                Coeffs::Int(v) => v[0] = c.clone(),
                Coeffs::Gf2(b) => b.set(0, c.is_odd()),
            }
        }
        s
    }

    pub fn one(ring: Ring, valid_to: i64) -> Self {
        LaurentSeries::constant(ring, &BigInt::one(), valid_to)
    }

    /// `q^exponent`, certified through `valid_to`.
    pub fn monomial(ring: Ring, exponent: i64, valid_to: i64) -> Self {
        LaurentSeries::one(ring, valid_to - exponent)
            .shift(exponent)
            .expect("monomial exponent in range")
    }

    pub fn ring(&self) -> Ring {
        self.coeffs.ring()
    }

    pub fn val(&self) -> i64 {
        self.val
    }

    pub fn valid_to(&self) -> i64 {
        self.valid_to
    }

    /// Number of stored coefficients, `valid_to - val + 1`.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.len() == 0
    }

    pub fn ints(&self) -> Option<&[BigInt]> {
        match &self.coeffs {
            Coeffs::Int(v) => Some(v),
            Coeffs::Gf2(_) => None,
        }
    }

    pub fn bits(&self) -> Option<&Gf2Bits> {
        match &self.coeffs {
            Coeffs::Gf2(b) => Some(b),
            Coeffs::Int(_) => None,
        }
    }

    fn check_query(&self, n: i64) -> Result<Option<usize>> {
        if n > self.valid_to {
            return Err(Error::QueryBeyondPrecision {
                n,
                valid_to: self.valid_to,
            });
        }
        Ok((n >= self.val).then(|| (n - self.val) as usize))
    }

    /// Coefficient of `q^n`. Exponents below the valuation read as zero.
    pub fn coeff(&self, n: i64) -> Result<Coefficient> {
        let idx = self.check_query(n)?;
        Ok(match (&self.coeffs, idx) {
            (Coeffs::Int(v), Some(i)) => Coefficient::Int(v[i].clone()),
            (Coeffs::Int(_), None) => Coefficient::Int(BigInt::zero()),
            (Coeffs::Gf2(b), Some(i)) => Coefficient::Gf2(b.get(i)),
            (Coeffs::Gf2(_), None) => Coefficient::Gf2(false),
        })
    }

    /// Integer coefficient of `q^n`; fails on a GF(2) series.
    pub fn coeff_int(&self, n: i64) -> Result<BigInt> {
        match self.coeff(n)? {
            Coefficient::Int(c) => Ok(c),
            Coefficient::Gf2(_) => Err(Error::RingMismatch {
                left: Ring::Gf2,
                right: Ring::Int,
            }),
        }
    }

    /// Parity of the coefficient of `q^n`, for either ring.
    #[inline]
    pub fn parity(&self, n: i64) -> Result<bool> {
        let idx = self.check_query(n)?;
        Ok(match (&self.coeffs, idx) {
            (_, None) => false,
            (Coeffs::Int(v), Some(i)) => v[i].is_odd(),
            (Coeffs::Gf2(b), Some(i)) => b.get(i),
        })
    }

    /// Iterator over `(exponent, coefficient)` in the certified window.
    pub fn terms(&self) -> impl Iterator<Item = (i64, Coefficient)> + '_ {
        (0..self.len()).map(move |i| {
            let c = match &self.coeffs {
                Coeffs::Int(v) => Coefficient::Int(v[i].clone()),
                Coeffs::Gf2(b) => Coefficient::Gf2(b.get(i)),
            };
            (self.val + i as i64, c)
        })
    }

    fn same_ring(&self, other: &LaurentSeries) -> Result<()> {
        if self.ring() != other.ring() {
            return Err(Error::RingMismatch {
                left: self.ring(),
                right: other.ring(),
            });
        }
        Ok(())
    }

    /// Lower the precision to `valid_to` (no-op if already lower).
    pub fn truncate(&self, valid_to: i64) -> LaurentSeries {
        let valid_to = valid_to.min(self.valid_to).max(self.val - 1);
        let len = window_len(self.val, valid_to);
        let coeffs = match &self.coeffs {
            Coeffs::Int(v) => Coeffs::Int(v[..len].to_vec()),
            Coeffs::Gf2(b) => Coeffs::Gf2(b.resized(len)),
        };
        LaurentSeries {
            val: self.val,
            valid_to,
            coeffs,
        }
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Result<LaurentSeries> {
        Ok(LaurentSeries {
            val: add_exp(self.val, k)?,
            valid_to: add_exp(self.valid_to, k)?,
            coeffs: self.coeffs.clone(),
        })
    }

    /// Re-express the series with valuation `val` (which must not exceed
    /// the current one), padding with exact zeros.
    fn lowered_to(&self, val: i64, valid_to: i64) -> Coeffs {
        let len = window_len(val, valid_to);
        let offset = (self.val - val) as usize;
        match &self.coeffs {
            Coeffs::Int(v) => {
                let mut out = vec![BigInt::zero(); len];
                for (dst, src) in out.iter_mut().skip(offset).zip(v) {
                    *dst = src.clone();
                }
                Coeffs::Int(out)
            }
            Coeffs::Gf2(b) => {
                let mut out = Gf2Bits::zeros(len);
                out.xor_shifted(b, offset);
                Coeffs::Gf2(out)
            }
        }
    }

    pub fn add(&self, other: &LaurentSeries) -> Result<LaurentSeries> {
        self.same_ring(other)?;
        let valid_to = self.valid_to.min(other.valid_to);
        let val = self.val.min(other.val).min(valid_to + 1);
        let mut coeffs = self.lowered_to(val, valid_to);
        let rhs = other.lowered_to(val, valid_to);
        match (&mut coeffs, &rhs) {
            (Coeffs::Int(a), Coeffs::Int(b)) => {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
            }
            (Coeffs::Gf2(a), Coeffs::Gf2(b)) => a.xor_assign(b),
            _ => unreachable!("rings checked above"),
        }
        Ok(LaurentSeries {
            val,
            valid_to,
            coeffs,
        })
    }

    pub fn neg(&self) -> LaurentSeries {
        let coeffs = match &self.coeffs {
            Coeffs::Int(v) => Coeffs::Int(v.iter().map(|c| -c).collect()),
            Coeffs::Gf2(b) => Coeffs::Gf2(b.clone()),
        };
        LaurentSeries { coeffs, ..*self }
    }

    pub fn sub(&self, other: &LaurentSeries) -> Result<LaurentSeries> {
        self.add(&other.neg())
    }

    /// Multiply every coefficient by the integer `c` (reduced mod 2 over GF(2)).
    pub fn scale(&self, c: &BigInt) -> LaurentSeries {
        let coeffs = match &self.coeffs {
            Coeffs::Int(v) => Coeffs::Int(v.iter().map(|x| x * c).collect()),
            Coeffs::Gf2(b) if c.is_odd() => Coeffs::Gf2(b.clone()),
            Coeffs::Gf2(b) => Coeffs::Gf2(Gf2Bits::zeros(b.len())),
        };
        LaurentSeries { coeffs, ..*self }
    }

    /// Add the constant `c` (at `q^0`), keeping the precision.
    pub fn add_constant(&self, c: &BigInt) -> Result<LaurentSeries> {
        self.add(&LaurentSeries::constant(self.ring(), c, self.valid_to))
    }

    /// Truncated product.
    ///
    /// `val = a.val + b.val` and `valid_to = min(a.valid_to + b.val,
    /// b.valid_to + a.val)`, so the result holds `min(len(a), len(b))`
    /// coefficients.
    pub fn mul(&self, other: &LaurentSeries) -> Result<LaurentSeries> {
        self.same_ring(other)?;
        let val = add_exp(self.val, other.val)?;
        let valid_to = add_exp(self.valid_to, other.val)?.min(add_exp(other.valid_to, self.val)?);
        let len = window_len(val, valid_to);
        let coeffs = match (&self.coeffs, &other.coeffs) {
            (Coeffs::Int(a), Coeffs::Int(b)) => Coeffs::Int(mul_int(a, b, len)),
            (Coeffs::Gf2(a), Coeffs::Gf2(b)) => Coeffs::Gf2(a.mul_truncated(b, len)),
            _ => unreachable!("rings checked above"),
        };
        Ok(LaurentSeries {
            val,
            valid_to,
            coeffs,
        })
    }

    /// Same precision rule as `self.mul(self)`; over GF(2) this is the
    /// Frobenius substitution `q -> q^2`.
    pub fn square(&self) -> Result<LaurentSeries> {
        match &self.coeffs {
            Coeffs::Int(_) => self.mul(self),
            Coeffs::Gf2(b) => {
                let val = mul_exp(self.val, 2)?;
                let valid_to = add_exp(self.valid_to, self.val)?;
                let bits = b.dilated(2, b.len());
                Ok(LaurentSeries {
                    val,
                    valid_to,
                    coeffs: Coeffs::Gf2(bits),
                })
            }
        }
    }

    /// Multiplicative inverse. The coefficient at `q^val` must be a unit.
    ///
    /// The result has valuation `-val`, and `valid_to - 2 * val` as its
    /// precision, which keeps the number of certified coefficients.
    pub fn inverse(&self) -> Result<LaurentSeries> {
        let val = self.val.checked_neg().ok_or(Error::ExponentOverflow)?;
        let valid_to = add_exp(self.valid_to, mul_exp(self.val, -2)?)?;
        let len = self.len();
        let non_unit = Error::NonUnitLeadingCoefficient { exponent: self.val };
        let coeffs = match &self.coeffs {
            Coeffs::Int(a) => {
                let lead = a.first().ok_or(non_unit.clone())?;
                if !lead.abs().is_one() {
                    return Err(non_unit);
                }
                Coeffs::Int(inverse_int(a, len))
            }
            Coeffs::Gf2(a) => {
                if a.is_empty() || !a.get(0) {
                    return Err(non_unit);
                }
                Coeffs::Gf2(inverse_gf2(a, len))
            }
        };
        Ok(LaurentSeries {
            val,
            valid_to,
            coeffs,
        })
    }

    /// `self^k` by binary exponentiation; negative `k` inverts first.
    pub fn pow(&self, k: i64) -> Result<LaurentSeries> {
        if k == 0 {
            return Ok(LaurentSeries::one(self.ring(), self.valid_to - self.val));
        }
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc: Option<LaurentSeries> = None;
        let mut power = base;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => power.clone(),
                    Some(a) => a.mul(&power)?,
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            power = power.square()?;
        }
        Ok(acc.expect("k != 0"))
    }

    /// Substitute `q -> q^m`.
    pub fn dilate(&self, m: u64) -> Result<LaurentSeries> {
        assert!(m >= 1, "dilation factor must be positive");
        let mi = i64::try_from(m).map_err(|_| Error::ExponentOverflow)?;
        let val = mul_exp(self.val, mi)?;
        let valid_to = add_exp(mul_exp(self.valid_to, mi)?, mi - 1)?;
        let len = window_len(val, valid_to);
        let step = m as usize;
        let coeffs = match &self.coeffs {
            Coeffs::Int(v) => {
                let mut out = vec![BigInt::zero(); len];
                for (i, c) in v.iter().enumerate() {
                    out[i * step] = c.clone();
                }
                Coeffs::Int(out)
            }
            Coeffs::Gf2(b) => Coeffs::Gf2(b.dilated(step, len)),
        };
        Ok(LaurentSeries {
            val,
            valid_to,
            coeffs,
        })
    }

    /// Coefficient-wise reduction to GF(2). Idempotent on GF(2) input.
    pub fn reduce_mod2(&self) -> LaurentSeries {
        let coeffs = match &self.coeffs {
            Coeffs::Int(v) => Coeffs::Gf2(Gf2Bits::from_bools(v.iter().map(|c| c.is_odd()))),
            Coeffs::Gf2(b) => Coeffs::Gf2(b.clone()),
        };
        LaurentSeries { coeffs, ..*self }
    }

    /// Copy with the parity of the coefficient at `q^n` flipped.
    ///
    /// Used for fault-injection checks of the verification harness.
    pub fn with_flipped_parity(&self, n: i64) -> Result<LaurentSeries> {
        let idx = self.check_query(n)?.ok_or(Error::QueryBeyondPrecision {
            n,
            valid_to: self.valid_to,
        })?;
        let mut out = self.clone();
        match &mut out.coeffs {
            Coeffs::Int(v) => v[idx] += 1,
            Coeffs::Gf2(b) => b.flip(idx),
        }
        Ok(out)
    }

    /// True if both series agree on every exponent that both certify.
    pub fn agrees_with(&self, other: &LaurentSeries) -> bool {
        if self.ring() != other.ring() {
            return false;
        }
        let hi = self.valid_to.min(other.valid_to);
        let lo = self.val.min(other.val).min(hi + 1);
        self.truncate(hi).lowered_to(lo, hi) == other.truncate(hi).lowered_to(lo, hi)
    }

    pub fn to_json(&self) -> SeriesJson {
        let coeffs = match &self.coeffs {
            Coeffs::Int(v) => v
                .iter()
                .map(|c| serde_json::Value::String(c.to_string()))
                .collect(),
            Coeffs::Gf2(b) => (0..b.len())
                .map(|i| serde_json::Value::from(u8::from(b.get(i))))
                .collect(),
        };
        SeriesJson {
            ring: self.ring(),
            val: self.val,
            valid_to: self.valid_to,
            coeffs,
        }
    }

    pub fn from_json(json: &SeriesJson) -> Result<LaurentSeries> {
        if window_len(json.val, json.valid_to) != json.coeffs.len() || json.valid_to < json.val - 1
        {
            return Err(Error::Malformed(format!(
                "{} coefficients for window {}..={}",
                json.coeffs.len(),
                json.val,
                json.valid_to
            )));
        }
        let coeffs = match json.ring {
            Ring::Int => Coeffs::Int(
                json.coeffs
                    .iter()
                    .map(|c| {
                        c.as_str()
                            .and_then(|s| s.parse::<BigInt>().ok())
                            .ok_or_else(|| Error::Malformed(format!("bad INT coefficient {c}")))
                    })
                    .collect::<Result<_>>()?,
            ),
            Ring::Gf2 => Coeffs::Gf2(Gf2Bits::from_bools(
                json.coeffs
                    .iter()
                    .map(|c| match c.as_u64() {
                        Some(0) => Ok(false),
                        Some(1) => Ok(true),
                        _ => Err(Error::Malformed(format!("bad GF2 coefficient {c}"))),
                    })
                    .collect::<Result<Vec<_>>>()?,
            )),
        };
        Ok(LaurentSeries {
            val: json.val,
            valid_to: json.valid_to,
            coeffs,
        })
    }
}

/// Wire form: `{ring, val, valid_to, coeffs}` with INT coefficients as
/// decimal strings and GF2 coefficients as 0/1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub ring: Ring,
    pub val: i64,
    pub valid_to: i64,
    pub coeffs: Vec<serde_json::Value>,
}

fn nonzero_positions(v: &[BigInt]) -> Vec<usize> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, _)| i)
        .collect()
}

/// `acc += c * x`, with a shortcut for the `c = ±1` case that dominates eta products.
#[inline]
fn mul_add(acc: &mut BigInt, c: &BigInt, x: &BigInt) {
    if c.is_one() {
        *acc += x;
    } else if (-c).is_one() {
        *acc -= x;
    } else {
        *acc += c * x;
    }
}

fn mul_int(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let a = &a[..len.min(a.len())];
    let b = &b[..len.min(b.len())];
    let nz_a = nonzero_positions(a);
    let nz_b = nonzero_positions(b);
    let (sparse, sparse_idx, dense) = if nz_a.len() <= nz_b.len() {
        (a, nz_a, b)
    } else {
        (b, nz_b, a)
    };
    let mut out = vec![BigInt::zero(); len];
    for i in sparse_idx {
        let c = &sparse[i];
        for (j, x) in dense.iter().enumerate().take(len - i) {
            if !x.is_zero() {
                mul_add(&mut out[i + j], c, x);
            }
        }
    }
    out
}

/// Power-series inverse of `a` (with `a[0] = ±1`) to `len` terms.
fn inverse_int(a: &[BigInt], len: usize) -> Vec<BigInt> {
    let lead = a[0].clone();
    let nz: Vec<usize> = nonzero_positions(a)
        .into_iter()
        .filter(|&i| i > 0)
        .collect();
    let mut out: Vec<BigInt> = Vec::with_capacity(len);
    if len == 0 {
        return out;
    }
    out.push(lead.clone());
    for n in 1..len {
        let mut acc = BigInt::zero();
        for &k in nz.iter().take_while(|&&k| k <= n) {
            mul_add(&mut acc, &a[k], &out[n - k]);
        }
        // b_n = -lead * acc since lead^{-1} = lead
        out.push(if lead.is_one() { -acc } else { acc });
    }
    out
}

/// Newton iteration over GF(2): `r <- a * r^2`, where squaring is the
/// substitution `q -> q^2`. Doubles the number of correct terms per step.
fn inverse_gf2(a: &Gf2Bits, len: usize) -> Gf2Bits {
    let mut r = Gf2Bits::from_bools([true]).resized(len.min(1));
    let mut have = r.len();
    while have < len {
        let next = (have * 2).min(len);
        let r2 = r.dilated(2, next);
        r = a.mul_truncated(&r2, next);
        have = next;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(val: i64, c: &[i64]) -> LaurentSeries {
        LaurentSeries::from_ints(val, c.iter().copied())
    }

    fn ints_of(s: &LaurentSeries) -> Vec<i64> {
        s.ints()
            .unwrap()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn coeff_below_val_is_zero_and_beyond_precision_errors() {
        let s = int(-1, &[1, 5, 7]);
        assert_eq!(s.coeff_int(-5).unwrap(), BigInt::zero());
        assert_eq!(s.coeff_int(0).unwrap(), BigInt::from(5));
        assert_eq!(
            s.coeff(2),
            Err(Error::QueryBeyondPrecision { n: 2, valid_to: 1 })
        );
        let one = LaurentSeries::one(Ring::Int, 10);
        assert_eq!(one.coeff_int(0).unwrap(), BigInt::one());
    }

    #[test]
    fn add_takes_min_val_and_min_precision() {
        let a = int(-1, &[1, 2, 3, 4]);
        let b = int(1, &[10, 20]);
        let c = a.add(&b).unwrap();
        assert_eq!((c.val(), c.valid_to()), (-1, 2));
        assert_eq!(ints_of(&c), vec![1, 2, 13, 24]);
        let z = LaurentSeries::zero(Ring::Int, 0, 10);
        assert_eq!(a.add(&z).unwrap(), a);
    }

    #[test]
    fn gf2_self_sum_vanishes() {
        let a = int(-1, &[1, 3, 4, 7, 9]).reduce_mod2();
        let s = a.add(&a).unwrap();
        assert_eq!(s.bits().unwrap().count_ones(), 0);
        assert_eq!(s.valid_to(), a.valid_to());
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let a = int(0, &[1, 2]);
        let b = a.reduce_mod2();
        assert_eq!(
            a.add(&b),
            Err(Error::RingMismatch {
                left: Ring::Int,
                right: Ring::Gf2
            })
        );
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn mul_precision_rule() {
        let inv_q = LaurentSeries::monomial(Ring::Int, -1, 10);
        let p = inv_q.mul(&inv_q).unwrap();
        assert_eq!((p.val(), p.valid_to()), (-2, 9));
        assert_eq!(p.coeff_int(-2).unwrap(), BigInt::one());
        assert!((-1..=9).all(|n| p.coeff_int(n).unwrap().is_zero()));

        let a = int(0, &[3, 1, 4, 1, 5]);
        let one = LaurentSeries::one(Ring::Int, 10);
        assert_eq!(a.mul(&one).unwrap(), a);
    }

    #[test]
    fn inverse_examples() {
        let one = LaurentSeries::one(Ring::Int, 6);
        assert_eq!(one.inverse().unwrap(), one);
        let a = int(0, &[1, -1, 0, 0, 0]);
        assert_eq!(ints_of(&a.inverse().unwrap()), vec![1, 1, 1, 1, 1]);
        let g = a.reduce_mod2().inverse().unwrap();
        assert_eq!(g.bits().unwrap().count_ones(), 5);

        let shifted = int(2, &[-1, 3, 1]);
        let inv = shifted.inverse().unwrap();
        assert_eq!((inv.val(), inv.valid_to()), (-2, 0));
        let prod = shifted.mul(&inv).unwrap();
        assert_eq!(ints_of(&prod), vec![1, 0, 0]);
    }

    #[test]
    fn inverse_rejects_non_units() {
        assert_eq!(
            int(-1, &[2, 1]).inverse(),
            Err(Error::NonUnitLeadingCoefficient { exponent: -1 })
        );
        assert!(int(0, &[0, 1]).reduce_mod2().inverse().is_err());
        assert!(LaurentSeries::zero(Ring::Int, 0, -1).inverse().is_err());
    }

    #[test]
    fn pow_examples() {
        let a = int(0, &[1, -1, 0, 0]);
        assert_eq!(a.pow(1).unwrap(), a);
        assert_eq!(ints_of(&a.pow(2).unwrap()), vec![1, -2, 1, 0]);
        let z = int(-1, &[1, 2, 3]).pow(0).unwrap();
        assert_eq!((z.val(), z.valid_to()), (0, 2));
        assert_eq!(ints_of(&z), vec![1, 0, 0]);
        let inv2 = a.pow(-2).unwrap();
        assert_eq!(ints_of(&inv2), vec![1, 2, 3, 4]);
        // q^-1 (1 + q)^3 precision: valid_to + (k - 1) * val
        let b = int(-1, &[1, 1, 0, 0, 0]).pow(3).unwrap();
        assert_eq!((b.val(), b.valid_to()), (-3, 1));
        assert_eq!(ints_of(&b), vec![1, 3, 3, 1, 0]);
    }

    #[test]
    fn gf2_pow_uses_frobenius_and_agrees_with_int() {
        let a = int(-1, &[1, 3, -2, 5, 7, 0, 1, 1, 4, 9, 11, 2, 1]);
        for k in [2, 3, 4, 6, 8, 12, 24, -4, -3] {
            let want = a.pow(k).unwrap().reduce_mod2();
            let got = a.reduce_mod2().pow(k).unwrap();
            assert_eq!(got, want, "k = {k}");
        }
    }

    #[test]
    fn dilate_examples() {
        let a = int(0, &[1, -1, 0]);
        assert_eq!(a.dilate(1).unwrap(), a);
        let d = a.dilate(3).unwrap();
        assert_eq!((d.val(), d.valid_to()), (0, 8));
        assert_eq!(ints_of(&d), vec![1, 0, 0, -1, 0, 0, 0, 0, 0]);
        let m = int(-1, &[1, 1]).dilate(2).unwrap();
        assert_eq!((m.val(), m.valid_to()), (-2, 1));
    }

    #[test]
    fn reduce_mod2_examples() {
        let s = int(0, &[1, -24, 196884]).reduce_mod2();
        assert_eq!(s.ring(), Ring::Gf2);
        assert_eq!(s.bits().unwrap().ones().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn json_wire_format() {
        let s = int(-1, &[1, 744, 196884]);
        let json = serde_json::to_string(&s.to_json()).unwrap();
        assert_eq!(
            json,
            r#"{"ring":"INT","val":-1,"valid_to":1,"coeffs":["1","744","196884"]}"#
        );
        let g = s.reduce_mod2();
        let gj = serde_json::to_string(&g.to_json()).unwrap();
        assert_eq!(
            gj,
            r#"{"ring":"GF2","val":-1,"valid_to":1,"coeffs":[1,0,0]}"#
        );
        let back: SeriesJson = serde_json::from_str(&gj).unwrap();
        assert_eq!(LaurentSeries::from_json(&back).unwrap(), g);
        let bad = SeriesJson {
            ring: Ring::Gf2,
            val: 0,
            valid_to: 3,
            coeffs: vec![1.into()],
        };
        assert!(LaurentSeries::from_json(&bad).is_err());
    }

    #[test]
    fn flipped_parity() {
        let s = int(-1, &[1, 744, 196884]).reduce_mod2();
        let f = s.with_flipped_parity(0).unwrap();
        assert!(f.parity(0).unwrap());
        assert!(!f.agrees_with(&s));
        assert!(s.with_flipped_parity(-3).is_err());
    }
}
