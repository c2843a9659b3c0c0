//! Classical ground truth: an odd-only Sieve of Eratosthenes and trial
//! division. Nothing here touches the grid or the prefilter, so the
//! pipeline can be checked against it.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{check_resource, Error, Result};
use crate::pipeline::{self, PrimalityKind, PrimalityVerdict, SearchStrategy};

/// Largest sieve limit (about 6 MB of bits).
pub const SIEVE_CAP: u64 = 100_000_000;
/// Largest range accepted by [`verify_range`].
pub const VERIFY_CAP: u64 = 10_000_000;

/// Primality of every `n <= limit`, one bit per odd number.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: u64,
    // bit i set <=> 2i + 1 is not prime
    composite: Vec<u64>,
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Membership query. Values above the limit are answered `false`.
    pub fn is_prime(&self, n: u64) -> bool {
        if n > self.limit || n < 2 {
            return false;
        }
        if n.is_multiple_of(2) {
            return n == 2;
        }
        !get_bit(&self.composite, (n / 2) as usize)
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        std::iter::once(2)
            .chain((3..=self.limit).step_by(2))
            .filter(move |&n| self.is_prime(n))
    }

    pub fn count(&self) -> u64 {
        self.primes().count() as u64
    }
}

fn get_bit(bits: &[u64], i: usize) -> bool {
    bits[i / 64] & (1 << (i % 64)) != 0
}

fn set_bit(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

pub fn sieve(limit: u64) -> Result<PrimeTable> {
    if limit < 2 {
        return Err(Error::Invalid { n: limit, min: 2 });
    }
    check_resource("sieve limit", limit, SIEVE_CAP)?;

    let slots = (limit / 2 + 1) as usize;
    let mut composite = vec![0u64; slots.div_ceil(64)];
    set_bit(&mut composite, 0);

    let mut p = 3u64;
    while p * p <= limit {
        if !get_bit(&composite, (p / 2) as usize) {
            let mut m = p * p;
            while m <= limit {
                set_bit(&mut composite, (m / 2) as usize);
                m += 2 * p;
            }
        }
        p += 2;
    }
    Ok(PrimeTable { limit, composite })
}

/// Prime factors of `n` in ascending order, with multiplicity.
pub fn trial_factor(n: u64) -> Result<Vec<u64>> {
    if n < 2 {
        return Err(Error::Invalid { n, min: 2 });
    }
    let mut rest = n;
    let mut factors = Vec::new();
    while rest.is_multiple_of(2) {
        factors.push(2);
        rest /= 2;
    }
    let mut d = 3u64;
    while d <= rest / d {
        while rest.is_multiple_of(d) {
            factors.push(d);
            rest /= d;
        }
        d += 2;
    }
    if rest > 1 {
        factors.push(rest);
    }
    Ok(factors)
}

/// Naive primality by trial division up to `sqrt(n)`; the benchmark baseline.
pub fn trial_is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d <= n / d {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub n: u64,
    /// `"primality"` or `"factorization"`.
    pub check: &'static str,
    pub pipeline: String,
    pub oracle: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MismatchReport {
    pub limit: u64,
    pub strategy: SearchStrategy,
    pub primality_checked: u64,
    pub factorizations_checked: u64,
    pub mismatches: Vec<Mismatch>,
}

impl MismatchReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub limit: u64,
    pub strategy: SearchStrategy,
    /// Compare `full_factorize` with `trial_factor` on every `factor_stride`-th
    /// value; 0 disables the factorization pass.
    pub factor_stride: u64,
}

impl VerifyOptions {
    pub fn new(limit: u64, strategy: SearchStrategy) -> Self {
        VerifyOptions {
            limit,
            strategy,
            factor_stride: 97,
        }
    }
}

/// Checks the staged pipeline against the sieve on `[2, limit]`.
pub fn verify_range(limit: u64, strategy: SearchStrategy) -> Result<MismatchReport> {
    verify(VerifyOptions::new(limit, strategy))
}

pub fn verify(opts: VerifyOptions) -> Result<MismatchReport> {
    let strategy = opts.strategy;
    let mut report = verify_with(opts, |n| pipeline::is_prime(n, strategy))?;

    if opts.factor_stride > 0 {
        let checked: Vec<u64> = (2..=opts.limit)
            .step_by(opts.factor_stride as usize)
            .collect();
        let mut bad: Vec<Mismatch> = checked
            .par_iter()
            .filter_map(|&n| {
                let expected = trial_factor(n).ok()?;
                let got = pipeline::full_factorize(n).map(|f| f.primes);
                match got {
                    Ok(ref primes) if *primes == expected => None,
                    other => Some(Mismatch {
                        n,
                        check: "factorization",
                        pipeline: format!("{other:?}"),
                        oracle: format!("{expected:?}"),
                    }),
                }
            })
            .collect();
        report.factorizations_checked = checked.len() as u64;
        report.mismatches.append(&mut bad);
        report.mismatches.sort_by_key(|m| (m.n, m.check));
    }
    Ok(report)
}

/// Runs an arbitrary classifier over `[2, limit]` against the sieve.
///
/// The result does not depend on how rayon partitions the range.
pub fn verify_with<F>(opts: VerifyOptions, classify: F) -> Result<MismatchReport>
where
    F: Fn(u64) -> Result<PrimalityVerdict> + Sync,
{
    check_resource("verify limit", opts.limit, VERIFY_CAP)?;
    let table = sieve(opts.limit.max(2))?;
    let mismatches: Vec<Mismatch> = (2..=opts.limit)
        .into_par_iter()
        .filter_map(|n| {
            let expected = table.is_prime(n);
            let verdict = classify(n);
            let got = match &verdict {
                Ok(v) => match v.kind {
                    PrimalityKind::Prime | PrimalityKind::PrimeSpecialSmall => Some(true),
                    PrimalityKind::Composite => Some(false),
                    PrimalityKind::Invalid => None,
                },
                Err(_) => None,
            };
            (got != Some(expected)).then(|| Mismatch {
                n,
                check: "primality",
                pipeline: match verdict {
                    Ok(v) => v.kind.as_str().to_string(),
                    Err(e) => format!("error: {e}"),
                },
                oracle: if expected { "prime" } else { "composite" }.to_string(),
            })
        })
        .collect();
    Ok(MismatchReport {
        limit: opts.limit,
        strategy: opts.strategy,
        primality_checked: opts.limit.saturating_sub(1),
        factorizations_checked: 0,
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_small() {
        let t = sieve(30).unwrap();
        let primes: Vec<u64> = t.primes().collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(!t.is_prime(1));
        assert!(!t.is_prime(0));
        assert!(!t.is_prime(31), "above limit");
    }

    #[test]
    fn sieve_100_has_25_primes() {
        let t = sieve(100).unwrap();
        assert_eq!(t.count(), 25);
        let by_trial = (2..=100).filter(|&n| trial_is_prime(n)).count();
        assert_eq!(by_trial, 25);
    }

    #[test]
    fn sieve_limits() {
        assert!(matches!(sieve(1), Err(Error::Invalid { .. })));
        assert!(matches!(sieve(SIEVE_CAP + 1), Err(Error::Resource { .. })));
        let t = sieve(2).unwrap();
        assert_eq!(t.primes().collect::<Vec<_>>(), vec![2]);
        let t = sieve(3).unwrap();
        assert_eq!(t.primes().collect::<Vec<_>>(), vec![2, 3]);
    }

    #[test]
    fn prime_counts() {
        // pi(10^k) for k = 1..6
        let t = sieve(1_000_000).unwrap();
        let mut counts = Vec::new();
        let mut bound = 10;
        let mut c = 0;
        for n in 2..=1_000_000 {
            if t.is_prime(n) {
                c += 1;
            }
            if n == bound {
                counts.push(c);
                bound *= 10;
            }
        }
        assert_eq!(counts, vec![4, 25, 168, 1229, 9592, 78498]);
    }

    #[test]
    fn trial_factor_examples() {
        assert_eq!(trial_factor(91).unwrap(), vec![7, 13]);
        assert_eq!(trial_factor(97).unwrap(), vec![97]);
        assert_eq!(trial_factor(1008).unwrap(), vec![2, 2, 2, 2, 3, 3, 7]);
        assert_eq!(trial_factor(2).unwrap(), vec![2]);
        assert!(matches!(trial_factor(1), Err(Error::Invalid { .. })));
        assert_eq!(
            trial_factor(crate::MAX_INPUT).unwrap(),
            vec![7, 7, 73, 127, 337, 92737, 649657]
        );
    }

    #[test]
    fn sieve_agrees_with_trial_division() {
        let t = sieve(100_000).unwrap();
        for n in 2..=100_000 {
            assert_eq!(t.is_prime(n), trial_is_prime(n), "n = {n}");
            let f = trial_factor(n).unwrap();
            assert_eq!(f.iter().product::<u64>(), n);
            assert!(f.iter().all(|&p| t.is_prime(p)));
            assert_eq!(f.len() == 1, t.is_prime(n));
        }
    }
}
