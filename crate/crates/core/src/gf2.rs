//! Packed bit vectors used as coefficient storage for series over GF(2).
//!
//! Bit `i` lives in word `i / 64` at position `i % 64`. Bits at positions
//! `>= len` are always kept clear so that word-level comparisons and
//! popcounts are exact.

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Gf2Bits {
    words: Vec<u64>,
    len: usize,
}

impl std::fmt::Debug for Gf2Bits {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Gf2Bits[{}; ", self.len)?;
        for i in 0..self.len.min(128) {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        if self.len > 128 {
            f.write_str("...")?;
        }
        f.write_str("]")
    }
}

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

impl Gf2Bits {
    pub fn zeros(len: usize) -> Self {
        Gf2Bits {
            words: vec![0; words_for(len)],
            len,
        }
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut out = Gf2Bits::zeros(0);
        for b in bits {
            out.push(b);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if bit {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn push(&mut self, bit: bool) {
        if self.len.is_multiple_of(WORD) {
            self.words.push(0);
        }
        self.len += 1;
        self.set(self.len - 1, bit);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Positions of the set bits, in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let tz = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + tz)
            })
        })
    }

    /// Keep only the first `len` bits (or pad with zeros up to `len`).
    pub fn resized(&self, len: usize) -> Self {
        let mut words = self.words.clone();
        words.resize(words_for(len), 0);
        let mut out = Gf2Bits { words, len };
        out.clear_tail();
        out
    }

    /// Bits `[start, start + len)`, reading zeros past the end.
    pub fn slice(&self, start: usize, len: usize) -> Self {
        let mut out = Gf2Bits::zeros(len);
        if start >= self.len {
            return out;
        }
        let word_shift = start / WORD;
        let bit_shift = start % WORD;
        for (i, w) in out.words.iter_mut().enumerate() {
            let lo = self.words.get(i + word_shift).copied().unwrap_or(0);
            let hi = self.words.get(i + word_shift + 1).copied().unwrap_or(0);
            *w = if bit_shift == 0 {
                lo
            } else {
                (lo >> bit_shift) | (hi << (WORD - bit_shift))
            };
        }
        // source tail bits are already clear, so anything past the end reads 0
        out.clear_tail();
        out
    }

    pub fn xor_assign(&mut self, other: &Gf2Bits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
        self.clear_tail();
    }

    /// `self ^= other << shift`, dropping bits that land at or beyond `self.len()`.
    pub fn xor_shifted(&mut self, other: &Gf2Bits, shift: usize) {
        if shift >= self.len {
            return;
        }
        let word_shift = shift / WORD;
        let bit_shift = (shift % WORD) as u32;
        let dst = &mut self.words[word_shift..];
        let n = dst
            .len()
            .min(other.words.len() + usize::from(bit_shift != 0));
        if bit_shift == 0 {
            for (d, s) in dst.iter_mut().zip(&other.words) {
                *d ^= s;
            }
        } else {
            let src = &other.words;
            let mut carry = 0u64;
            for (i, d) in dst[..n].iter_mut().enumerate() {
                let s = src.get(i).copied().unwrap_or(0);
                *d ^= (s << bit_shift) | carry;
                carry = s >> (WORD as u32 - bit_shift);
            }
        }
        self.clear_tail();
    }

    /// Substitute `x -> x^m`: bit `i` moves to `m * i`; result has length `len`.
    pub fn dilated(&self, m: usize, len: usize) -> Self {
        let mut out = Gf2Bits::zeros(len);
        for i in self.ones() {
            let j = i * m;
            if j >= len {
                break;
            }
            out.set(j, true);
        }
        out
    }

    /// Truncated carry-less product, keeping the first `len` bits.
    ///
    /// Iterates over the set bits of the sparser operand and accumulates
    /// shifted copies of the other one.
    pub fn mul_truncated(&self, other: &Gf2Bits, len: usize) -> Self {
        let a = self.resized(len.min(self.len));
        let b = other.resized(len.min(other.len));
        let (sparse, dense) = if a.count_ones() <= b.count_ones() {
            (&a, &b)
        } else {
            (&b, &a)
        };
        let mut out = Gf2Bits::zeros(len);
        for i in sparse.ones() {
            out.xor_shifted(dense, i);
        }
        out
    }

    fn clear_tail(&mut self) {
        let r = self.len % WORD;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
        self.words.truncate(words_for(self.len));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_mul(a: &[bool], b: &[bool], len: usize) -> Vec<bool> {
        let mut out = vec![false; len];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                if x && y && i + j < len {
                    out[i + j] ^= true;
                }
            }
        }
        out
    }

    #[test]
    fn push_get_and_tail() {
        let bits = Gf2Bits::from_bools((0..130).map(|i| i % 3 == 0));
        assert_eq!(bits.len(), 130);
        assert!(bits.get(129));
        assert!(!bits.get(128));
        assert_eq!(bits.count_ones(), 44);
        let r = bits.resized(65);
        assert_eq!(r.count_ones(), 22);
        assert_eq!(r.words().len(), 2);
    }

    #[test]
    fn slice_reads_zero_past_end() {
        let bits = Gf2Bits::from_bools((0..100).map(|_| true));
        let s = bits.slice(70, 64);
        assert_eq!(s.count_ones(), 30);
        assert!(s.get(29));
        assert!(!s.get(30));
        assert_eq!(bits.slice(200, 5).count_ones(), 0);
    }

    #[test]
    fn mul_matches_naive_across_word_boundaries() {
        let a: Vec<bool> = (0..150).map(|i| (i * 7 + 3) % 5 < 2).collect();
        let b: Vec<bool> = (0..97).map(|i| (i * i) % 11 < 4).collect();
        let pa = Gf2Bits::from_bools(a.iter().copied());
        let pb = Gf2Bits::from_bools(b.iter().copied());
        for len in [1, 63, 64, 65, 97, 200, 246] {
            let got = pa.mul_truncated(&pb, len);
            let want = Gf2Bits::from_bools(naive_mul(&a, &b, len));
            assert_eq!(got, want, "len {len}");
        }
    }

    #[test]
    fn dilation_spreads_bits() {
        let bits = Gf2Bits::from_bools([true, true, false, true]);
        let d = bits.dilated(3, 12);
        assert_eq!(d.ones().collect::<Vec<_>>(), vec![0, 3, 9]);
    }
}
