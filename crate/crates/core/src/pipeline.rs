//! Staged primality testing and grid factorization.
//!
//! A number first runs through a cheap prefilter, in this order:
//!
//! 1. odd,
//! 2. last decimal digit in `{1, 3, 7, 9}`,
//! 3. digital root not in `{3, 6, 9}`,
//! 4. spoke on the 24-wheel is a prime modulus.
//!
//! Survivors are then located in the quasi-prime grid. A survivor that is
//! absent from the grid is prime; otherwise its cell is the witness.
//!
//! Stage 4 never rejects anything that passed stage 1 and 3 (an odd number
//! not divisible by 3 is coprime to 24's prime factors). It is kept so the
//! per-stage counters show that.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{check_input, Error, Result};
use crate::numerics::{digital_root, DigitalRoot};
use crate::qgrid::{self, axis_values_from, next_axis_value, prev_axis_value, GridCoordinate};

// Prime spokes of the 24-wheel, indexed by n mod 24.
const PRIME_SPOKE_24: [bool; 24] = {
    let mut t = [false; 24];
    let mut r = 0;
    while r < 24 {
        t[r] = r % 6 == 1 || r % 6 == 5;
        r += 1;
    }
    t
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FilterStage {
    NotOdd,
    LastDigit,
    #[serde(rename = "digital_root_369")]
    DigitalRoot369,
    NotPrimeModulus,
}

impl FilterStage {
    pub const ALL: [FilterStage; 4] = [
        FilterStage::NotOdd,
        FilterStage::LastDigit,
        FilterStage::DigitalRoot369,
        FilterStage::NotPrimeModulus,
    ];

    fn index(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FilterVerdict {
    Pass,
    Rejected(FilterStage),
}

/// First failing stage for `n >= 1`, or `None` if all pass.
fn first_rejection(n: u64) -> Option<FilterStage> {
    if n.is_multiple_of(2) {
        return Some(FilterStage::NotOdd);
    }
    if !matches!(n % 10, 1 | 3 | 7 | 9) {
        return Some(FilterStage::LastDigit);
    }
    if digital_root(n).map_or(true, DigitalRoot::is_369) {
        return Some(FilterStage::DigitalRoot369);
    }
    if !PRIME_SPOKE_24[(n % 24) as usize] {
        return Some(FilterStage::NotPrimeModulus);
    }
    None
}

pub fn prefilter(n: u64) -> Result<FilterVerdict> {
    if n < 2 {
        return Err(Error::Invalid { n, min: 2 });
    }
    check_input(n)?;
    Ok(match first_rejection(n) {
        None => FilterVerdict::Pass,
        Some(stage) => FilterVerdict::Rejected(stage),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub enum SearchStrategy {
    /// Smallest axis divisor first.
    #[default]
    #[serde(rename = "asc")]
    AscendingScan,
    /// Start at the axis values bracketing `sqrt(n)` and move outward.
    #[serde(rename = "balanced")]
    BalancedFirst,
}

impl SearchStrategy {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchStrategy::AscendingScan => "asc",
            SearchStrategy::BalancedFirst => "balanced",
        }
    }
}

impl fmt::Display for SearchStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SearchStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "asc" | "ascending" => Ok(SearchStrategy::AscendingScan),
            "balanced" => Ok(SearchStrategy::BalancedFirst),
            other => Err(Error::Domain(format!(
                "unknown strategy {other:?} (expected asc or balanced)"
            ))),
        }
    }
}

/// Where a verdict was decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    NotOdd,
    LastDigit,
    #[serde(rename = "digital_root_369")]
    DigitalRoot369,
    NotPrimeModulus,
    GridSearch,
    SpecialSmall,
    InputRange,
}

impl From<FilterStage> for Stage {
    fn from(s: FilterStage) -> Self {
        match s {
            FilterStage::NotOdd => Stage::NotOdd,
            FilterStage::LastDigit => Stage::LastDigit,
            FilterStage::DigitalRoot369 => Stage::DigitalRoot369,
            FilterStage::NotPrimeModulus => Stage::NotPrimeModulus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimalityKind {
    Prime,
    PrimeSpecialSmall,
    Composite,
    Invalid,
}

impl PrimalityKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PrimalityKind::Prime => "prime",
            PrimalityKind::PrimeSpecialSmall => "prime_special_small",
            PrimalityKind::Composite => "composite",
            PrimalityKind::Invalid => "invalid",
        }
    }

    pub fn is_prime(self) -> bool {
        matches!(
            self,
            PrimalityKind::Prime | PrimalityKind::PrimeSpecialSmall
        )
    }
}

/// Evidence for a composite verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Witness {
    /// Grid cell whose value is `n`.
    Grid(GridCoordinate),
    /// A divisor found by a filter stage (2, 3 or 5) and its cofactor.
    SmallFactor { divisor: u64, cofactor: u64 },
}

impl Witness {
    /// The two factors the witness multiplies out to.
    pub fn pair(&self) -> (u64, u64) {
        match *self {
            Witness::Grid(c) => c.factors(),
            Witness::SmallFactor { divisor, cofactor } => (divisor, cofactor),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimalityVerdict {
    pub n: u64,
    pub kind: PrimalityKind,
    pub witness: Option<Witness>,
    pub stage: Stage,
    pub strategy: SearchStrategy,
}

impl Serialize for PrimalityVerdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PrimalityVerdict", 5)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("verdict", &self.kind)?;
        st.serialize_field("witness", &self.witness.map(|w| w.pair()))?;
        st.serialize_field("stage", &self.stage)?;
        st.serialize_field("strategy", &self.strategy)?;
        st.end()
    }
}

pub fn is_prime(n: u64, strategy: SearchStrategy) -> Result<PrimalityVerdict> {
    let verdict = |kind, witness, stage| PrimalityVerdict {
        n,
        kind,
        witness,
        stage,
        strategy,
    };
    if n < 2 {
        return Ok(verdict(PrimalityKind::Invalid, None, Stage::InputRange));
    }
    check_input(n)?;
    if n == 2 || n == 3 {
        return Ok(verdict(
            PrimalityKind::PrimeSpecialSmall,
            None,
            Stage::SpecialSmall,
        ));
    }

    // 5 is the one prime the last-digit stage rejects; it goes to the grid.
    if let Some(stage) = first_rejection(n).filter(|_| n != 5) {
        let divisor = match stage {
            FilterStage::NotOdd => 2,
            FilterStage::LastDigit => 5,
            FilterStage::DigitalRoot369 => 3,
            FilterStage::NotPrimeModulus if n.is_multiple_of(2) => 2,
            FilterStage::NotPrimeModulus => 3,
        };
        if !n.is_multiple_of(divisor) {
            return Err(Error::Internal(format!(
                "stage {stage:?} rejected {n} but {divisor} does not divide it"
            )));
        }
        // Multiples of 5 coprime to 6 still sit on the grid, in row 5.
        let witness = if divisor == 5 && !n.is_multiple_of(3) {
            Witness::Grid(qgrid::coordinate_for(5, n / 5)?)
        } else {
            Witness::SmallFactor {
                divisor,
                cofactor: n / divisor,
            }
        };
        return Ok(verdict(
            PrimalityKind::Composite,
            Some(witness),
            stage.into(),
        ));
    }

    let filter = CandidateFilter::for_target(n)?;
    Ok(match grid_search(n, strategy, &filter) {
        Some((a, b)) => verdict(
            PrimalityKind::Composite,
            Some(Witness::Grid(qgrid::coordinate_for(a, b)?)),
            Stage::GridSearch,
        ),
        None => verdict(PrimalityKind::Prime, None, Stage::GridSearch),
    })
}

/// Unordered pairs of final digits `(x, y)`, `x <= y`, whose product ends in `d`.
pub fn last_digit_pairs(d: u8) -> Result<Vec<(u8, u8)>> {
    const DIGITS: [u8; 4] = [1, 3, 7, 9];
    if !DIGITS.contains(&d) {
        return Err(Error::Domain(format!(
            "last digit must be one of 1, 3, 7, 9, got {d}"
        )));
    }
    let mut pairs = Vec::new();
    for (i, &x) in DIGITS.iter().enumerate() {
        for &y in &DIGITS[i..] {
            if (x * y) % 10 == d {
                pairs.push((x, y));
            }
        }
    }
    Ok(pairs)
}

/// Unordered pairs of digital roots, both coprime to 3, whose product has root `r`.
pub fn dr_pairs(r: DigitalRoot) -> Result<Vec<(DigitalRoot, DigitalRoot)>> {
    const ROOTS: [u8; 6] = [1, 2, 4, 5, 7, 8];
    if r.is_369() {
        return Err(Error::Domain(format!(
            "no product of factors coprime to 3 has digital root {r}"
        )));
    }
    let mut pairs = Vec::new();
    for (i, &x) in ROOTS.iter().enumerate() {
        for &y in &ROOTS[i..] {
            if digital_root(u64::from(x * y))? == r {
                pairs.push((DigitalRoot::from_value(x)?, DigitalRoot::from_value(y)?));
            }
        }
    }
    Ok(pairs)
}

/// Ordered factor pair `a <= b` with both entries on the grid axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FactorPair {
    pub a: u64,
    pub b: u64,
}

/// Which row values may divide `n`, derived from `n`'s last digit and digital root.
struct CandidateFilter {
    last_digit: [bool; 10],
    root: [bool; 10],
}

impl CandidateFilter {
    fn for_target(n: u64) -> Result<Self> {
        let mut f = CandidateFilter {
            last_digit: [false; 10],
            root: [false; 10],
        };
        match last_digit_pairs((n % 10) as u8) {
            Ok(pairs) => {
                for (x, y) in pairs {
                    f.last_digit[x as usize] = true;
                    f.last_digit[y as usize] = true;
                }
            }
            // n ends in 5: any odd final digit can pair with a 5.
            Err(_) => {
                f.last_digit = [
                    false, true, false, true, false, true, false, true, false, true,
                ]
            }
        }
        for (x, y) in dr_pairs(digital_root(n)?)? {
            f.root[x.value() as usize] = true;
            f.root[y.value() as usize] = true;
        }
        Ok(f)
    }

    fn admits(&self, a: u64) -> bool {
        self.last_digit[(a % 10) as usize] && self.root[(1 + (a - 1) % 9) as usize]
    }
}

/// Finds a factor pair of `n` (coprime to 6) on the grid, or `None` if `n` is prime.
fn grid_search(n: u64, strategy: SearchStrategy, filter: &CandidateFilter) -> Option<(u64, u64)> {
    match strategy {
        SearchStrategy::AscendingScan => axis_values_from(5)
            .take_while(|&a| a <= n / a)
            .filter(|&a| filter.admits(a))
            .find(|&a| n.is_multiple_of(a))
            .map(|a| (a, n / a)),
        SearchStrategy::BalancedFirst => balanced_search(n, filter),
    }
}

// Rows descend from the largest axis value <= sqrt(n) while columns ascend
// from the smallest one >= sqrt(n), one step each per round. Every factor
// pair has its row value <= sqrt(n), so the search ends when rows run out;
// the first row hit is the closest pair to the diagonal.
fn balanced_search(n: u64, filter: &CandidateFilter) -> Option<(u64, u64)> {
    let root = n.isqrt();
    let mut row = prev_axis_value(root);
    let mut col = Some(next_axis_value(root));

    while let Some(a) = row {
        if filter.admits(a) && n.is_multiple_of(a) {
            return Some((a, n / a));
        }
        row = axis_step_down(a);
        if let Some(b) = col {
            if n.is_multiple_of(b) && filter.admits(n / b) {
                // Rows between n / b and the current row could still be closer.
                let a = n / b;
                let mut r = row;
                while let Some(x) = r.filter(|&x| x > a) {
                    if filter.admits(x) && n.is_multiple_of(x) {
                        return Some((x, n / x));
                    }
                    r = axis_step_down(x);
                }
                return Some((a, b));
            }
            col = axis_step_up(b);
        }
    }
    None
}

fn axis_step_down(v: u64) -> Option<u64> {
    let next = if v % 6 == 1 { v - 2 } else { v.checked_sub(4)? };
    (next >= 5).then_some(next)
}

fn axis_step_up(v: u64) -> Option<u64> {
    v.checked_add(if v % 6 == 5 { 2 } else { 4 })
}

pub fn factor_on_grid(n: u64, strategy: SearchStrategy) -> Result<FactorPair> {
    if n < 2 {
        return Err(Error::Invalid { n, min: 2 });
    }
    check_input(n)?;
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return Err(Error::NotQuasiPrime(n));
    }
    if n < 25 {
        return Err(Error::NoFactors(n));
    }
    let filter = CandidateFilter::for_target(n)?;
    match grid_search(n, strategy, &filter) {
        Some((a, b)) => Ok(FactorPair { a, b }),
        None => Err(Error::NoFactors(n)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub n: u64,
    /// All prime factors in ascending order, with multiplicity.
    pub primes: Vec<u64>,
    /// The 2s and 3s stripped before the grid search; they lie outside the quasi-prime domain.
    pub outside_quasi_prime_domain: Vec<u64>,
}

/// Complete prime factorization: strips 2s and 3s, then repeatedly splits
/// the quasi-prime remainder on the grid.
pub fn full_factorize(n: u64) -> Result<Factorization> {
    if n < 2 {
        return Err(Error::Invalid { n, min: 2 });
    }
    check_input(n)?;
    let mut rest = n;
    let mut small = Vec::new();
    for p in [2, 3] {
        while rest.is_multiple_of(p) {
            small.push(p);
            rest /= p;
        }
    }
    let mut primes = small.clone();
    while rest > 1 {
        if rest < 25 {
            primes.push(rest);
            break;
        }
        match factor_on_grid(rest, SearchStrategy::AscendingScan) {
            // Ascending scan yields the smallest divisor, which is prime.
            Ok(pair) => {
                primes.push(pair.a);
                rest = pair.b;
            }
            Err(Error::NoFactors(_)) => {
                primes.push(rest);
                break;
            }
            Err(e) => return Err(e),
        }
    }
    primes.sort_unstable();
    Ok(Factorization {
        n,
        primes,
        outside_quasi_prime_domain: small,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityReport {
    pub limit: u64,
    pub survivors: u64,
    /// `survivors / limit`.
    pub fraction: f64,
    pub per_stage_rejections: BTreeMap<FilterStage, u64>,
}

/// Share of `1..=limit` that passes every prefilter stage.
pub fn survivor_density(limit: u64) -> Result<DensityReport> {
    if limit < 100 {
        return Err(Error::Invalid { n: limit, min: 100 });
    }
    check_input(limit)?;
    let counts = (1..=limit)
        .into_par_iter()
        .fold(
            || [0u64; 5],
            |mut acc, n| {
                acc[first_rejection(n).map_or(4, FilterStage::index)] += 1;
                acc
            },
        )
        .reduce(
            || [0u64; 5],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(DensityReport {
        limit,
        survivors: counts[4],
        fraction: counts[4] as f64 / limit as f64,
        per_stage_rejections: FilterStage::ALL
            .iter()
            .map(|&s| (s, counts[s.index()]))
            .collect(),
    })
}
