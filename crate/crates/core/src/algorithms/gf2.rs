//! Linear algebra over GF(2) on bit-vectors packed into `u64`.
//!
//! Bit `i` of a word is coordinate `i`; bit-strings are written most
//! significant bit first, so `"101"` is `0b101`.

use crate::{Error, Result};

/// Parity of `a · b`.
pub fn dot(a: u64, b: u64) -> bool {
    (a & b).count_ones() % 2 == 1
}

pub fn format_bits(value: u64, width: usize) -> String {
    (0..width)
        .rev()
        .map(|i| if value >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Parses a big-endian bit-string of at most 64 characters.
pub fn parse_bits(s: &str) -> Option<u64> {
    if s.is_empty() || s.len() > 64 {
        return None;
    }
    s.chars().try_fold(0u64, |acc, ch| match ch {
        '0' => Some(acc << 1),
        '1' => Some(acc << 1 | 1),
        _ => None,
    })
}

/// Homogeneous system `row · v = 0` for every collected row.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Gf2System {
    width: usize,
    rows: Vec<u64>,
}

/// A nonzero nullspace vector; `unique` when the nullspace has dimension 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gf2Solution {
    pub vector: u64,
    pub unique: bool,
}

impl Gf2System {
    pub fn new(width: usize) -> Result<Self> {
        if width == 0 || width > 64 {
            return Err(Error::InvalidWidth(width));
        }
        Ok(Self {
            width,
            rows: Vec::new(),
        })
    }

    pub fn with_rows(width: usize, rows: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut system = Self::new(width)?;
        for row in rows {
            system.push(row)?;
        }
        Ok(system)
    }

    pub fn push(&mut self, row: u64) -> Result<()> {
        if self.width < 64 && row >> self.width != 0 {
            return Err(Error::InvalidWidth(self.width));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        reduce(&self.rows).len()
    }

    pub fn is_satisfied_by(&self, v: u64) -> bool {
        self.rows.iter().all(|&r| !dot(r, v))
    }
}

/// Reduced row echelon form: each row's highest set bit is its pivot and no
/// other row has that bit set.
fn reduce(rows: &[u64]) -> Vec<u64> {
    let mut basis: Vec<u64> = Vec::new();
    for &row in rows {
        let mut r = row;
        for &b in &basis {
            let pivot = 63 - b.leading_zeros();
            if r >> pivot & 1 == 1 {
                r ^= b;
            }
        }
        if r == 0 {
            continue;
        }
        let pivot = 63 - r.leading_zeros();
        for b in &mut basis {
            if *b >> pivot & 1 == 1 {
                *b ^= r;
            }
        }
        basis.push(r);
    }
    basis
}

/// Gaussian elimination for a nonzero `v` with `row · v = 0` for all rows.
///
/// The lowest free coordinate is set to 1. The solution is flagged as not
/// unique when the rank is below `width - 1`.
pub fn gf2_solve(system: &Gf2System) -> Result<Gf2Solution> {
    let basis = reduce(&system.rows);
    let pivots: u64 = basis.iter().map(|b| 1u64 << (63 - b.leading_zeros())).fold(0, |a, b| a | b);
    let free = (0..system.width).find(|&i| pivots >> i & 1 == 0).ok_or(Error::FullRank)?;
    let mut v = 1u64 << free;
    for &b in &basis {
        if b >> free & 1 == 1 {
            v |= 1u64 << (63 - b.leading_zeros());
        }
    }
    debug_assert!(system.is_satisfied_by(v));
    Ok(Gf2Solution {
        vector: v,
        unique: basis.len() + 1 == system.width,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// All nonzero vectors orthogonal to every row, by enumeration.
    fn brute_nullspace(system: &Gf2System) -> Vec<u64> {
        (1..1u64 << system.width()).filter(|&v| system.is_satisfied_by(v)).collect()
    }

    #[test]
    fn zero_row_is_ambiguous() {
        let s = Gf2System::with_rows(2, [0b00]).unwrap();
        let sol = gf2_solve(&s).unwrap();
        assert!(!sol.unique);
        assert!([0b01, 0b10, 0b11].contains(&sol.vector));
    }

    #[test]
    fn two_rows_width_three() {
        let s = Gf2System::with_rows(3, [0b110, 0b011]).unwrap();
        assert_eq!(brute_nullspace(&s), vec![0b111]);
        assert_eq!(gf2_solve(&s).unwrap(), Gf2Solution { vector: 0b111, unique: true });
    }

    #[test]
    fn single_row_width_two() {
        let s = Gf2System::with_rows(2, [0b10]).unwrap();
        assert_eq!(brute_nullspace(&s), vec![0b01]);
        assert_eq!(gf2_solve(&s).unwrap().vector, 0b01);
    }

    #[test]
    fn full_rank_has_no_solution() {
        let s = Gf2System::with_rows(2, [0b10, 0b11]).unwrap();
        assert_eq!(gf2_solve(&s), Err(Error::FullRank));
    }

    #[test]
    fn empty_system_of_width_one() {
        let s = Gf2System::new(1).unwrap();
        assert_eq!(gf2_solve(&s).unwrap(), Gf2Solution { vector: 1, unique: true });
    }

    #[test]
    fn rank_counts_independent_rows() {
        let s = Gf2System::with_rows(4, [0b1100, 0b0110, 0b1010, 0]).unwrap();
        assert_eq!(s.rank(), 2);
    }

    #[test]
    fn bit_strings() {
        assert_eq!(parse_bits("101"), Some(5));
        assert_eq!(format_bits(5, 4), "0101");
        assert_eq!(parse_bits("10a"), None);
        assert_eq!(parse_bits(""), None);
        assert!(Gf2System::with_rows(2, [0b100]).is_err());
    }

    #[test]
    fn solver_matches_enumeration() {
        // every subset of rows over width 4, built from a fixed row pool
        let pool = [0b0011u64, 0b0101, 0b1001, 0b1110, 0b0110];
        for mask in 0u32..1 << pool.len() {
            let rows = (0..pool.len()).filter(|i| mask >> i & 1 == 1).map(|i| pool[i]);
            let s = Gf2System::with_rows(4, rows).unwrap();
            let nullspace = brute_nullspace(&s);
            match gf2_solve(&s) {
                Ok(sol) => {
                    assert!(nullspace.contains(&sol.vector));
                    assert_eq!(sol.unique, nullspace.len() == 1);
                }
                Err(Error::FullRank) => assert!(nullspace.is_empty()),
                Err(e) => panic!("{e}"),
            }
        }
    }
}
