//! Words over the alphabet `{1, …, n}` and their base-`n` ranks.
//!
//! A word `u_1 u_2 … u_t` is encoded as the integer whose base-`n` digits
//! (most significant first) are `u_1 - 1, …, u_t - 1`. Rank order therefore
//! coincides with lexicographic word order.

use std::fmt;

use crate::error::{invalid, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexWord {
    letters: Vec<u32>,
}

impl VertexWord {
    /// Builds a word, checking every letter against the alphabet size `n`.
    pub fn new(letters: Vec<u32>, n: u32) -> Result<Self> {
        if letters.is_empty() {
            return Err(invalid("a word needs at least one letter"));
        }
        if let Some(&bad) = letters.iter().find(|&&l| l == 0 || l > n) {
            return Err(invalid(format!("letter {bad} outside 1..={n}")));
        }
        Ok(Self { letters })
    }

    /// The constant word `c c … c` of length `t`.
    pub fn constant(c: u32, t: usize) -> Self {
        Self {
            letters: vec![c; t],
        }
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] == w[1])
    }

    /// Concatenated digits for `n <= 9`, comma separated otherwise.
    pub fn label(&self, n: u32) -> String {
        if n <= 9 {
            self.letters.iter().map(|l| l.to_string()).collect()
        } else {
            self.letters
                .iter()
                .map(|l| l.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }

    pub fn rank(&self, n: u32) -> Result<usize> {
        word_rank(self, n)
    }
}

impl fmt::Display for VertexWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let max = self.letters.iter().copied().max().unwrap_or(0);
        f.write_str(&self.label(max))
    }
}

/// `n^t`, or `None` on overflow.
pub fn checked_order(n: u32, t: u32) -> Option<u128> {
    (n as u128).checked_pow(t)
}

pub fn word_rank(w: &VertexWord, n: u32) -> Result<usize> {
    if n < 1 {
        return Err(invalid("alphabet size must be positive"));
    }
    let mut rank: u128 = 0;
    for &l in &w.letters {
        if l == 0 || l > n {
            return Err(invalid(format!("letter {l} outside 1..={n}")));
        }
        rank = rank
            .checked_mul(n as u128)
            .and_then(|r| r.checked_add((l - 1) as u128))
            .ok_or_else(|| invalid("word rank overflows"))?;
    }
    usize::try_from(rank).map_err(|_| invalid("word rank overflows usize"))
}

pub fn rank_word(rank: usize, n: u32, t: usize) -> Result<VertexWord> {
    if n < 1 || t < 1 {
        return Err(invalid("need n >= 1 and t >= 1"));
    }
    let order = checked_order(n, t as u32).ok_or_else(|| invalid("n^t overflows"))?;
    if rank as u128 >= order {
        return Err(invalid(format!("rank {rank} outside 0..{order}")));
    }
    let mut letters = vec![0u32; t];
    let mut r = rank as u128;
    for slot in letters.iter_mut().rev() {
        *slot = (r % n as u128) as u32 + 1;
        r /= n as u128;
    }
    Ok(VertexWord { letters })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(letters: &[u32], n: u32) -> VertexWord {
        VertexWord::new(letters.to_vec(), n).unwrap()
    }

    #[test]
    fn extreme_ranks() {
        assert_eq!(word_rank(&w(&[1, 1, 1], 3), 3).unwrap(), 0);
        assert_eq!(word_rank(&w(&[3, 3], 3), 3).unwrap(), 8);
    }

    #[test]
    fn rank_five_in_binary_cube() {
        // 5 = 0b101 -> digits (1,0,1) -> letters (2,1,2)
        assert_eq!(rank_word(5, 2, 3).unwrap().letters(), &[2, 1, 2]);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(VertexWord::new(vec![0, 1], 3).is_err());
        assert!(VertexWord::new(vec![4], 3).is_err());
        assert!(rank_word(9, 3, 2).is_err());
        assert!(word_rank(&w(&[3, 3], 3), 2).is_err());
    }

    #[test]
    fn labels() {
        assert_eq!(w(&[1, 2, 3], 3).label(3), "123");
        assert_eq!(w(&[10, 2], 12).label(12), "10,2");
    }

    proptest! {
        #[test]
        fn codec_roundtrip(n in 1u32..7, t in 1usize..6, seed in any::<u64>()) {
            let order = (n as usize).pow(t as u32);
            let r = (seed % order as u64) as usize;
            let word = rank_word(r, n, t).unwrap();
            prop_assert_eq!(word_rank(&word, n).unwrap(), r);
        }

        #[test]
        fn rank_order_is_lexicographic(n in 2u32..6, t in 1usize..5, a in any::<u64>(), b in any::<u64>()) {
            let order = (n as u64).pow(t as u32);
            let (ra, rb) = ((a % order) as usize, (b % order) as usize);
            let (wa, wb) = (rank_word(ra, n, t).unwrap(), rank_word(rb, n, t).unwrap());
            prop_assert_eq!(ra.cmp(&rb), wa.cmp(&wb));
        }
    }
}
