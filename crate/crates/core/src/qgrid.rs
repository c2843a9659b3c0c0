//! The quasi-prime multiplication grid.
//!
//! Both axes carry the ascending integers `v >= 5` with `v = 6t +- 1`:
//! `5, 7, 11, 13, 17, 19, 23, 25, 29, 31, ...`. Every cell is a product of two
//! axis values, and the cells are exactly the composite numbers coprime to 6.
//! The grid is never materialized except for bounded display regions.

use std::fmt::{self, Write as _};
use std::ops::RangeInclusive;

use serde::{Serialize, Serializer};

use crate::error::{capped_mul, check_input, check_resource, Error, Result, MAX_INPUT};
use crate::numerics::{digital_root, DigitalRoot};

/// Largest index whose axis value still fits under `MAX_INPUT`.
///
/// `MAX_INPUT = 2^63 - 1` is itself `1 mod 6`, so it is the axis value at this index.
pub const MAX_AXIS_INDEX: u64 = (MAX_INPUT - 1) / 3;

/// Largest number of cells a [`Region`] may hold.
pub const REGION_CELL_CAP: u64 = 10_000;

/// 1-based position along a grid axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AxisIndex(u64);

impl AxisIndex {
    pub fn new(k: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("axis indices start at 1".into()));
        }
        if k > MAX_AXIS_INDEX {
            return Err(Error::Overflow(format!("axis index {k}")));
        }
        Ok(AxisIndex(k))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn value(self) -> u64 {
        axis_value(self)
    }
}

impl Serialize for AxisIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u64(self.0)
    }
}

impl fmt::Display for AxisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `a(2t-1) = 6t - 1`, `a(2t) = 6t + 1`.
pub fn axis_value(k: AxisIndex) -> u64 {
    let k = k.0;
    let t = k.div_ceil(2);
    if k % 2 == 1 {
        6 * t - 1
    } else {
        6 * t + 1
    }
}

/// Inverse of [`axis_value`]; `None` when `v` is not on the axis.
pub fn axis_index(v: u64) -> Option<AxisIndex> {
    if !(5..=MAX_INPUT).contains(&v) {
        return None;
    }
    match v % 6 {
        5 => Some(AxisIndex((v + 1) / 6 * 2 - 1)),
        1 => Some(AxisIndex((v - 1) / 6 * 2)),
        _ => None,
    }
}

/// Product of the axis values at `i` and `j`.
pub fn grid_value(i: AxisIndex, j: AxisIndex) -> Result<u64> {
    capped_mul(axis_value(i), axis_value(j))
}

/// A grid cell, stored on or above the diagonal (`i <= j`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GridCoordinate {
    pub i: AxisIndex,
    pub j: AxisIndex,
    pub value: u64,
}

impl GridCoordinate {
    /// Builds the cell for `(i, j)`, mirrored across the diagonal if needed.
    pub fn new(i: AxisIndex, j: AxisIndex) -> Result<Self> {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        Ok(GridCoordinate {
            i,
            j,
            value: grid_value(i, j)?,
        })
    }

    /// Axis values `(a_i, a_j)`; their product is `value`.
    pub fn factors(&self) -> (u64, u64) {
        (axis_value(self.i), axis_value(self.j))
    }

    pub fn is_diagonal(&self) -> bool {
        self.i == self.j
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum QuasiPrimeTag {
    PrimeSquare,
    QuasiPrime,
}

fn on_prime_moduli(n: u64) -> bool {
    n >= 5 && matches!(n % 6, 1 | 5)
}

/// Iterator over axis values `5, 7, 11, 13, ...` starting at `from`.
pub(crate) fn axis_values_from(from: u64) -> impl Iterator<Item = u64> {
    let start = axis_index(from)
        .map(axis_value)
        .unwrap_or_else(|| next_axis_value(from));
    let step = if start % 6 == 5 { 2 } else { 4 };
    std::iter::successors(Some((start, step)), |&(v, s)| {
        v.checked_add(s).map(|nv| (nv, 6 - s))
    })
    .map(|(v, _)| v)
}

/// Smallest axis value `>= v`.
pub(crate) fn next_axis_value(v: u64) -> u64 {
    let mut x = v.max(5);
    while !on_prime_moduli(x) {
        x += 1;
    }
    x
}

/// Largest axis value `<= v`, if any.
pub(crate) fn prev_axis_value(v: u64) -> Option<u64> {
    let mut x = v;
    while x >= 5 {
        if on_prime_moduli(x) {
            return Some(x);
        }
        x -= 1;
    }
    None
}

/// Locates `n` in the grid by scanning axis divisors up to `sqrt(n)`.
///
/// Returns `None` exactly when `n` is prime; otherwise the cell whose row
/// value is the smallest axis divisor of `n`.
pub fn contains(n: u64) -> Result<Option<GridCoordinate>> {
    check_input(n)?;
    if !on_prime_moduli(n) {
        return Err(Error::NotOnPrimeModuli(n));
    }
    for a in axis_values_from(5) {
        if a > n / a {
            return Ok(None);
        }
        if n.is_multiple_of(a) {
            return coordinate_for(a, n / a).map(Some);
        }
    }
    Ok(None)
}

pub(crate) fn coordinate_for(a: u64, b: u64) -> Result<GridCoordinate> {
    match (axis_index(a), axis_index(b)) {
        (Some(i), Some(j)) => GridCoordinate::new(i, j),
        _ => Err(Error::Internal(format!("{a} x {b} is not a grid cell"))),
    }
}

/// `PrimeSquare` for diagonal cells over a prime axis value.
pub fn quasiprime_tag(c: &GridCoordinate) -> Result<QuasiPrimeTag> {
    if c.is_diagonal() && contains(axis_value(c.i))?.is_none() {
        Ok(QuasiPrimeTag::PrimeSquare)
    } else {
        Ok(QuasiPrimeTag::QuasiPrime)
    }
}

/// Digital roots along the diagonal, `D(a_k^2)` for `k = 1..=count`.
pub fn diagonal_dr(count: u64) -> Result<Vec<DigitalRoot>> {
    if count == 0 {
        return Err(Error::Domain("diagonal count must be at least 1".into()));
    }
    (1..=count)
        .map(|k| {
            let i = AxisIndex::new(k)?;
            // D(a^2) = D(D(a)^2); avoids overflow for large k.
            let d = u64::from(digital_root(axis_value(i))?.value());
            digital_root(d * d)
        })
        .collect()
}

/// A rectangular block of grid values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    rows: RangeInclusive<u64>,
    cols: RangeInclusive<u64>,
    cells: Vec<Vec<u64>>,
}

impl Region {
    pub fn rows(&self) -> &RangeInclusive<u64> {
        &self.rows
    }

    pub fn cols(&self) -> &RangeInclusive<u64> {
        &self.cols
    }

    /// Row-major cell values.
    pub fn cells(&self) -> &[Vec<u64>] {
        &self.cells
    }

    /// `T[i][j]` using absolute axis indices.
    pub fn get(&self, i: u64, j: u64) -> Option<u64> {
        let r = i.checked_sub(*self.rows.start())? as usize;
        let c = j.checked_sub(*self.cols.start())? as usize;
        self.cells.get(r)?.get(c).copied()
    }

    /// Aligned text table with the axis values as headers.
    pub fn to_text(&self) -> String {
        let header: Vec<u64> = self
            .cols
            .clone()
            .map(|k| axis_value(AxisIndex(k)))
            .collect();
        let row_heads: Vec<u64> = self
            .rows
            .clone()
            .map(|k| axis_value(AxisIndex(k)))
            .collect();
        let width = self
            .cells
            .iter()
            .flatten()
            .chain(&header)
            .chain(&row_heads)
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);

        let mut out = String::new();
        let _ = write!(out, "{:>width$} |", "");
        for h in &header {
            let _ = write!(out, " {h:>width$}");
        }
        out.push('\n');
        let _ = writeln!(
            out,
            "{}",
            "-".repeat(width + 2 + header.len() * (width + 1))
        );
        for (head, row) in row_heads.iter().zip(&self.cells) {
            let _ = write!(out, "{head:>width$} |");
            for v in row {
                let _ = write!(out, " {v:>width$}");
            }
            out.push('\n');
        }
        out
    }
}

impl Serialize for Region {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.cells.serialize(s)
    }
}

pub fn region(rows: RangeInclusive<u64>, cols: RangeInclusive<u64>) -> Result<Region> {
    for r in [&rows, &cols] {
        if *r.start() == 0 || r.start() > r.end() {
            return Err(Error::Domain(format!(
                "region bounds must satisfy 1 <= lo <= hi, got {}..{}",
                r.start(),
                r.end()
            )));
        }
    }
    let extent = (rows.end() - rows.start() + 1).saturating_mul(cols.end() - cols.start() + 1);
    check_resource("region cells", extent, REGION_CELL_CAP)?;

    let cells = rows
        .clone()
        .map(|i| {
            let i = AxisIndex::new(i)?;
            cols.clone()
                .map(|j| grid_value(i, AxisIndex::new(j)?))
                .collect::<Result<Vec<u64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Region { rows, cols, cells })
}
