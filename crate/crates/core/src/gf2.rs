//! Row reduction over GF(2) with combination tracking.
//!
//! Rows are symplectic keys (`x | z << 64`). Every stored pivot row remembers
//! which input rows were XORed together to produce it, so a vector found to lie
//! in the span comes back with its decomposition.

/// An incrementally built, reduced set of GF(2) rows.
#[derive(Debug, Clone, Default)]
pub struct Gf2Basis {
    // (pivot bit, row, combination of input rows)
    rows: Vec<(u32, u128, u128)>,
}

impl Gf2Basis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current pivots.
    ///
    /// Returns the remainder and the combination of input rows that was
    /// XORed in along the way.
    pub fn reduce(&self, mut v: u128) -> (u128, u128) {
        let mut combo = 0u128;
        for &(pivot, row, c) in &self.rows {
            if (v >> pivot) & 1 == 1 {
                v ^= row;
                combo ^= c;
            }
        }
        (v, combo)
    }

    /// Inserts `v` tagged with `tag` (a set of input-row indices).
    ///
    /// Returns `Err(combination)` when `v` is dependent: `v` equals the XOR of
    /// the input rows in `combination`.
    pub fn insert(&mut self, v: u128, tag: u128) -> Result<(), u128> {
        let (rem, combo) = self.reduce(v);
        if rem == 0 {
            return Err(combo);
        }
        let pivot = 127 - rem.leading_zeros();
        let combo = combo ^ tag;
        // Keep rows fully reduced so `reduce` needs a single pass.
        for (_, row, c) in self.rows.iter_mut() {
            if (*row >> pivot) & 1 == 1 {
                *row ^= rem;
                *c ^= combo;
            }
        }
        self.rows.push((pivot, rem, combo));
        Ok(())
    }

    /// Combination of input rows summing to `v`, if `v` is in the span.
    pub fn decompose(&self, v: u128) -> Option<u128> {
        let (rem, combo) = self.reduce(v);
        (rem == 0).then_some(combo)
    }
}

/// Rank of a set of rows.
pub fn rank(rows: &[u128]) -> usize {
    let mut b = Gf2Basis::new();
    for (i, &r) in rows.iter().enumerate() {
        let _ = b.insert(r, 1u128 << (i % 128));
    }
    b.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decomposition_round_trips() {
        let rows = [0b1100u128, 0b0110, 0b0011];
        let mut b = Gf2Basis::new();
        for (i, &r) in rows.iter().enumerate() {
            b.insert(r, 1 << i).unwrap();
        }
        let target = rows[0] ^ rows[2];
        assert_eq!(b.decompose(target), Some(0b101));
        assert_eq!(b.decompose(0b1000), None);
        assert_eq!(b.insert(rows[0] ^ rows[1], 1 << 3), Err(0b011));
    }

    #[test]
    fn rank_of_dependent_rows() {
        assert_eq!(rank(&[1, 2, 3]), 2);
        assert_eq!(rank(&[0]), 0);
        assert_eq!(rank(&[1 << 100, 1 << 3]), 2);
    }
}
