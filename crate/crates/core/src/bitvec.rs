//! Fixed-width-word bit vectors.
//!
//! Bit `j` lives in word `j / W::BITS` at position `j % W::BITS`, lowest
//! index in the least significant bit. Bits at positions `>= nbits` are
//! always zero.

use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, Not};

/// A machine word usable as bit-vector storage.
pub trait Word:
    Copy
    + Eq
    + Default
    + fmt::Debug
    + fmt::Binary
    + BitAnd<Output = Self>
    + BitAndAssign
    + BitOr<Output = Self>
    + BitOrAssign
    + Not<Output = Self>
    + Send
    + Sync
    + 'static
{
    const BITS: usize;
    const ZERO: Self;
    const ONES: Self;

    fn count_ones(self) -> u32;
    fn trailing_zeros(self) -> u32;

    /// Word with only bit `j` set. `j < BITS`.
    fn bit(j: usize) -> Self;

    /// Word with the lowest `n` bits set. `n <= BITS`.
    fn low_mask(n: usize) -> Self;
}

macro_rules! impl_word {
    ($t:ty) => {
        impl Word for $t {
            const BITS: usize = <$t>::BITS as usize;
            const ZERO: Self = 0;
            const ONES: Self = <$t>::MAX;

            #[inline]
            fn count_ones(self) -> u32 {
                <$t>::count_ones(self)
            }

            #[inline]
            fn trailing_zeros(self) -> u32 {
                <$t>::trailing_zeros(self)
            }

            #[inline]
            fn bit(j: usize) -> Self {
                debug_assert!(j < <Self as Word>::BITS);
                1 << j
            }

            #[inline]
            fn low_mask(n: usize) -> Self {
                if n >= <Self as Word>::BITS {
                    <$t>::MAX
                } else {
                    (1 << n) - 1
                }
            }
        }
    };
}

impl_word!(u32);
impl_word!(u64);

/// Number of `W` words needed to hold `nbits` bits.
#[inline]
pub fn words_for<W: Word>(nbits: usize) -> usize {
    nbits.div_ceil(W::BITS)
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct BitVec<W: Word = u64> {
    words: Vec<W>,
    nbits: usize,
}

impl<W: Word> BitVec<W> {
    pub fn zeros(nbits: usize) -> Self {
        Self {
            words: vec![W::ZERO; words_for::<W>(nbits)],
            nbits,
        }
    }

    pub fn ones(nbits: usize) -> Self {
        let mut v = Self {
            words: vec![W::ONES; words_for::<W>(nbits)],
            nbits,
        };
        v.clear_padding();
        v
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(nbits: usize, indices: I) -> Self {
        let mut v = Self::zeros(nbits);
        for i in indices {
            v.set(i);
        }
        v
    }

    /// Parses a string of `0`/`1`, first character is bit 0.
    pub fn from_bit_str(s: &str) -> Self {
        let bits: Vec<bool> = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => false,
                '1' => true,
                other => panic!("invalid bit character {other:?}"),
            })
            .collect();
        Self::from_indices(bits.len(), bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i))
    }

    #[inline]
    pub fn nbits(&self) -> usize {
        self.nbits
    }

    #[inline]
    pub fn words(&self) -> &[W] {
        &self.words
    }

    #[inline]
    pub fn word(&self, w: usize) -> W {
        self.words[w]
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.nbits, "bit {i} out of range {}", self.nbits);
        self.words[i / W::BITS] & W::bit(i % W::BITS) != W::ZERO
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        assert!(i < self.nbits, "bit {i} out of range {}", self.nbits);
        self.words[i / W::BITS] |= W::bit(i % W::BITS);
    }

    /// Mask of the valid (non-padding) bits of word `w`.
    #[inline]
    pub fn valid_mask(&self, w: usize) -> W {
        valid_mask::<W>(self.nbits, w)
    }

    pub fn popcount(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == W::ZERO)
    }

    /// `self = a AND b`, returning the popcount of the result.
    ///
    /// Panics if the three vectors differ in length.
    pub fn and_into(&mut self, a: &Self, b: &Self) -> usize {
        assert!(
            a.nbits == b.nbits && self.nbits == a.nbits,
            "and_into length mismatch: dst={} a={} b={}",
            self.nbits,
            a.nbits,
            b.nbits
        );
        let mut count = 0usize;
        for ((d, &x), &y) in self.words.iter_mut().zip(&a.words).zip(&b.words) {
            let r = x & y;
            *d = r;
            count += r.count_ones() as usize;
        }
        count
    }

    /// `popcount(self AND other)` without materializing the result.
    pub fn and_count(&self, other: &Self) -> usize {
        assert_eq!(self.nbits, other.nbits, "and_count length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(&x, &y)| (x & y).count_ones() as usize)
            .sum()
    }

    /// Appends one zero bit. Storage grows by whole words with a doubling
    /// reserve, so existing word indices never move.
    pub fn push_zero(&mut self) {
        if self.nbits.is_multiple_of(W::BITS) {
            if self.words.len() == self.words.capacity() {
                self.words.reserve(self.words.len().max(1));
            }
            self.words.push(W::ZERO);
        }
        self.nbits += 1;
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == W::ZERO {
                    return None;
                }
                let tz = rest.trailing_zeros() as usize;
                rest &= !W::bit(tz);
                Some(wi * W::BITS + tz)
            })
        })
    }

    fn clear_padding(&mut self) {
        if let Some(last) = self.words.last_mut() {
            let used = self.nbits - (self.nbits - 1) / W::BITS * W::BITS;
            *last &= W::low_mask(used);
        }
    }
}

/// Mask of the valid bits of word `w` in a vector of `nbits` bits.
#[inline]
pub fn valid_mask<W: Word>(nbits: usize, w: usize) -> W {
    let start = w * W::BITS;
    if nbits <= start {
        W::ZERO
    } else {
        W::low_mask(nbits - start)
    }
}

impl<W: Word> fmt::Debug for BitVec<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec[{}](", self.nbits)?;
        for i in 0..self.nbits {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        f.write_str(")")
    }
}
