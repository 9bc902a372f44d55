use crate::coalition::{full_mask, Coalition};
use crate::error::{Error, Result};

use super::{check_feature_count, GameKind, GameOracle, SimpleGame};

/// Largest feature count for which a full truth table is materialized.
pub const TABLE_LIMIT: usize = 24;

/// Explicit truth table: bit `S` holds `v(S)`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruthTable {
    n: usize,
    words: Vec<u64>,
}

impl std::fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TruthTable")
            .field("n", &self.n)
            .field("winning", &self.count_winning())
            .finish()
    }
}

impl TruthTable {
    fn zeroed(n: usize) -> Result<Self> {
        check_feature_count(n)?;
        if n > TABLE_LIMIT {
            return Err(Error::Capacity { n, limit: TABLE_LIMIT });
        }
        let entries = 1usize << n;
        Ok(TruthTable {
            n,
            words: vec![0; entries.div_ceil(64)],
        })
    }

    /// Builds a table from one bool per coalition mask, without validation.
    pub fn from_bits(n: usize, bits: &[bool]) -> Result<Self> {
        let mut t = Self::zeroed(n)?;
        if bits.len() != 1usize << n {
            return Err(Error::InvalidGame(format!(
                "truth table over {n} features needs {} entries, got {}",
                1usize << n,
                bits.len()
            )));
        }
        for (s, &b) in bits.iter().enumerate() {
            if b {
                t.words[s / 64] |= 1 << (s % 64);
            }
        }
        Ok(t)
    }

    /// Evaluates `game` on every coalition.
    pub fn tabulate<G: SimpleGame + ?Sized>(game: &G) -> Result<Self> {
        let n = game.n();
        let mut t = Self::zeroed(n)?;
        let entries = 1u64 << n;
        let fill = |(w, word): (usize, &mut u64)| {
            let base = (w as u64) * 64;
            let end = (base + 64).min(entries);
            let mut acc = 0u64;
            for s in base..end {
                if game.eval(Coalition::from_mask(s)) {
                    acc |= 1 << (s - base);
                }
            }
            *word = acc;
        };
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            t.words.par_iter_mut().enumerate().for_each(fill);
        }
        #[cfg(not(feature = "parallel"))]
        t.words.iter_mut().enumerate().for_each(fill);
        Ok(t)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, s: Coalition) -> bool {
        let m = s.mask() as usize;
        (self.words[m / 64] >> (m % 64)) & 1 == 1
    }

    pub fn count_winning(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    /// Checks `v(empty) = 0` and monotonicity over all covering pairs
    /// `S`, `S + {i}`. The error names a violating pair with 1-based members.
    pub fn validate(&self) -> Result<()> {
        if self.get(Coalition::EMPTY) {
            return Err(Error::InvalidGame("the empty coalition must be losing".into()));
        }
        let full = full_mask(self.n);
        for s in 0..=full {
            let s = Coalition::from_mask(s);
            if !self.get(s) {
                continue;
            }
            for i in Coalition::from_mask(full).difference(s) {
                let t = s.with(i);
                if !self.get(t) {
                    return Err(Error::InvalidGame(format!(
                        "not monotone: v({s}) = 1 but v({t}) = 0 although {s} is a subset of {t}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Hex rendering: the table as the integer `sum_S v(S) 2^S`, most
    /// significant digit first, `max(1, 2^n / 4)` digits.
    pub fn to_hex(&self) -> String {
        let entries = 1usize << self.n;
        let digits = (entries / 4).max(1);
        let mut out = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let mut nibble = 0u8;
            for b in 0..4 {
                let s = d * 4 + b;
                if s < entries && self.get(Coalition::from_mask(s as u64)) {
                    nibble |= 1 << b;
                }
            }
            out.push(char::from_digit(u32::from(nibble), 16).unwrap());
        }
        out
    }

    /// Parses [`TruthTable::to_hex`] output. Leading zeros may be omitted.
    pub fn from_hex(n: usize, hex: &str) -> Result<Self> {
        let mut t = Self::zeroed(n)?;
        let hex = hex.trim();
        let hex = hex.strip_prefix("0x").unwrap_or(hex);
        let entries = 1usize << n;
        for (pos, ch) in hex.chars().rev().enumerate() {
            let nibble = ch
                .to_digit(16)
                .ok_or_else(|| Error::Parse(format!("invalid hex digit {ch:?} in truth table")))?;
            for b in 0..4 {
                if (nibble >> b) & 1 == 1 {
                    let s = pos * 4 + b;
                    if s >= entries {
                        return Err(Error::InvalidGame(format!(
                            "truth table sets bit {s}, beyond the {entries} coalitions of {n} features"
                        )));
                    }
                    t.words[s / 64] |= 1 << (s % 64);
                }
            }
        }
        Ok(t)
    }
}

impl SimpleGame for TruthTable {
    fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn eval(&self, s: Coalition) -> bool {
        self.get(s)
    }

    fn kind(&self) -> GameKind {
        GameKind::TruthTable
    }
}

/// Validated truth-table game; `table[S]` is `v(S)` for coalition mask `S`.
pub fn make_truth_table(n: usize, table: &[bool]) -> Result<GameOracle> {
    let t = TruthTable::from_bits(n, table)?;
    t.validate()?;
    Ok(GameOracle::new(t))
}
