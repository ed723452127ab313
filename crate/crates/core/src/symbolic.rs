//! Orbit-to-symbol coding and the sub-shift structure behind it.
//!
//! A symbol records which partition cell an orbit point visits. The cell
//! dynamics force a countdown: a point in cell `s ≥ 1` moves to cell
//! `s - 1`, while cell 0 maps onto the whole interval, so after a 0 any
//! cell can follow. Admissibility of a string is exactly that successor
//! rule, expressed by a transition matrix whose row 0 is all ones and whose
//! other rows carry a single subdiagonal one (plus a self-loop in the last
//! state when the alphabet is truncated to `{0, ..., N}`, because the last
//! state then stands for "cell N or deeper").

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::maps::IntervalMap;

/// A finite string over the countable alphabet of cell indices.
///
/// Symbols are 32-bit: an orbit would need about 4·10⁹ laminar cells to
/// overflow, far beyond any resolvable orbit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SymbolString(Vec<u32>);

impl SymbolString {
    pub fn new(symbols: Vec<u32>) -> Self {
        Self(symbols)
    }

    pub fn symbols(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Draws a random admissible string of exactly `len` symbols: runs start
    /// from a random cell `≤ symbol_cap` and count down, and the final run
    /// may be cut mid-countdown by the length budget.
    pub fn random_admissible(rng: &mut impl Rng, len: usize, symbol_cap: u32) -> Self {
        let mut symbols = Vec::with_capacity(len);
        while symbols.len() < len {
            let start = rng.gen_range(0..=symbol_cap);
            for s in (0..=start).rev() {
                if symbols.len() == len {
                    break;
                }
                symbols.push(s);
            }
        }
        Self(symbols)
    }
}

impl From<Vec<u32>> for SymbolString {
    fn from(symbols: Vec<u32>) -> Self {
        Self(symbols)
    }
}

impl fmt::Display for SymbolString {
    /// One ASCII line of space-separated decimal symbols.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for SymbolString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split_whitespace()
            .map(|tok| {
                tok.parse::<u32>()
                    .map_err(|e| Error::Domain(format!("bad symbol {tok:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }
}

/// Dense 0/1 structure matrix of a sub-shift on the alphabet `{0, ..., N}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionMatrix {
    rows: Vec<Vec<u8>>,
}

impl TransitionMatrix {
    /// The countdown sub-shift matrix on `N + 1` symbols: row 0 all ones,
    /// `m_{i,i-1} = 1` for `1 ≤ i ≤ N`, and `m_{N,N} = 1`.
    pub fn countdown(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::Domain(format!("alphabet bound N = {n} must be at least 1")));
        }
        let size = n + 1;
        let mut rows = vec![vec![0u8; size]; size];
        rows[0] = vec![1; size];
        for i in 1..size {
            rows[i][i - 1] = 1;
        }
        rows[n][n] = 1;
        Ok(Self { rows })
    }

    /// A general square 0/1 matrix (test fixtures and experiments).
    pub fn from_rows(rows: Vec<Vec<u8>>) -> Result<Self> {
        let size = rows.len();
        if size == 0 || rows.iter().any(|r| r.len() != size) {
            return Err(Error::Domain("transition matrix must be square and nonempty".into()));
        }
        if rows.iter().flatten().any(|&e| e > 1) {
            return Err(Error::Domain("transition matrix entries must be 0 or 1".into()));
        }
        Ok(Self { rows })
    }

    /// Alphabet size `N + 1`.
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Largest symbol `N`.
    pub fn max_symbol(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn entry(&self, i: usize, j: usize) -> bool {
        self.rows[i][j] == 1
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.rows[i]
    }

    pub fn row_sums(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.iter().map(|&e| e as usize).sum()).collect()
    }

    /// CSV of 0/1 entries, one row per line.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

/// Codes the first `n` cells visited by the orbit of `x0`.
///
/// If the orbit lands exactly on the fixed point the error carries the
/// symbols accumulated before truncation.
pub fn encode_orbit(map: &IntervalMap, x0: f64, n: usize) -> Result<SymbolString> {
    if !(x0 > 0.0 && x0 <= 1.0) {
        return Err(Error::Domain(format!("orbit seed {x0} outside (0, 1]")));
    }
    if n == 0 {
        return Err(Error::Domain("orbit length must be at least 1".into()));
    }
    let mut symbols = Vec::with_capacity(n);
    let mut x = x0;
    for _ in 0..n {
        match map.cell_index(x) {
            Ok(cell) => {
                let sym = u32::try_from(cell).map_err(|_| {
                    Error::Numeric(format!("cell index {cell} exceeds 32-bit symbol range"))
                })?;
                symbols.push(sym);
            }
            Err(Error::FixedPointCell) => {
                return Err(Error::OrbitHitZero { partial: SymbolString(symbols) })
            }
            Err(e) => return Err(e),
        }
        x = map.apply(x)?;
    }
    Ok(SymbolString(symbols))
}

/// Whether consecutive symbol pairs are allowed: against the countable
/// matrix when `alphabet_bound` is `None`, against the `N`-truncated matrix
/// when it is `Some(N)` (symbols above `N` make the string inadmissible).
pub fn is_admissible(s: &SymbolString, alphabet_bound: Option<usize>) -> bool {
    match alphabet_bound {
        None => s
            .symbols()
            .windows(2)
            .all(|w| w[0] == 0 || w[1] == w[0] - 1),
        Some(n) => {
            let n = n as u64;
            if s.symbols().iter().any(|&sym| sym as u64 > n) {
                return false;
            }
            s.symbols().windows(2).all(|w| {
                let (a, b) = (w[0] as u64, w[1] as u64);
                a == 0 || b == a - 1 || (a == n && b == n)
            })
        }
    }
}

/// Clamps every symbol to `min(symbol, N)`, the coding of the partition
/// whose last cell pools every cell at depth `N` or beyond.
pub fn truncate_alphabet(s: &SymbolString, n: usize) -> SymbolString {
    let cap = n.min(u32::MAX as usize) as u32;
    SymbolString(s.symbols().iter().map(|&sym| sym.min(cap)).collect())
}
