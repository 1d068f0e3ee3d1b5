//! Prime tables, factorization over a table, and the on-disk prime cache.
//!
//! Primes are 1-indexed throughout: `p_1 = 2`, `p_2 = 3`, ... The exponent
//! vector of `n` over the basis `{log p_k}` is exposed as a [`Factorization`].
//!
//! Small limits use a plain odd-only sieve of Eratosthenes. Above
//! [`SEGMENT_THRESHOLD`] the sieve runs over fixed-size segments so that only
//! the base primes up to `sqrt(limit)` and one segment live in memory next to
//! the output list.
//!
//! ## Cache format
//!
//! A flat little-endian file: a 16-byte header followed by the primes as
//! `u64` values in increasing order.
//!
//! | offset | size | content                      |
//! |--------|------|------------------------------|
//! | 0      | 4    | magic `ZXPT`                 |
//! | 4      | 4    | format version (`u32`, = 1)  |
//! | 8      | 8    | sieve limit (`u64`)          |
//! | 16     | 8·n  | primes (`u64` each)          |

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

/// Limits above this are sieved segment by segment.
pub const SEGMENT_THRESHOLD: u64 = 10_000_000;

/// Odd integers per sieve segment.
const SEGMENT_ODDS: usize = 1 << 18;

/// Default memory budget for a sieve run, in bytes.
pub const DEFAULT_MEMORY_BUDGET: u64 = 1 << 30;

pub const CACHE_MAGIC: [u8; 4] = *b"ZXPT";
pub const CACHE_VERSION: u32 = 1;
pub const CACHE_HEADER_LEN: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrimeSource {
    Sieved,
    LoadedFromCache,
}

/// All primes up to `limit`, in increasing order. Immutable once built.
#[derive(Clone, Debug)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
    source: PrimeSource,
}

/// One factor `p_k^α` of a factorization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PrimePower {
    /// 1-based prime index `k`.
    pub index: usize,
    pub prime: u64,
    pub exponent: u32,
}

/// Canonical factorization of `n`, ordered by prime index. Empty iff `n = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub n: u64,
    pub factors: Vec<PrimePower>,
}

impl Factorization {
    pub fn recompose(&self) -> u64 {
        self.factors
            .iter()
            .map(|f| f.prime.pow(f.exponent))
            .product()
    }

    /// Ω(n): number of prime factors counted with multiplicity.
    pub fn big_omega(&self) -> u32 {
        self.factors.iter().map(|f| f.exponent).sum()
    }
}

/// Upper estimate of the bytes a sieve run up to `limit` needs.
pub fn sieve_memory_estimate(limit: u64) -> u64 {
    let count = if limit < 17 {
        8.0
    } else {
        let l = limit as f64;
        1.25506 * l / l.ln()
    };
    let working = if limit <= SEGMENT_THRESHOLD {
        limit / 2 + 1
    } else {
        (SEGMENT_ODDS as u64) + (limit as f64).sqrt() as u64 * 8
    };
    (count * 8.0) as u64 + working
}

/// Sieve all primes up to `limit` within the default memory budget.
pub fn sieve(limit: u64) -> Result<PrimeTable> {
    PrimeTable::sieve_with_budget(limit, DEFAULT_MEMORY_BUDGET)
}

/// The `k`-th prime (1-indexed).
pub fn nth_prime(k: usize, table: &PrimeTable) -> Result<u64> {
    table.nth(k)
}

pub fn factorize(n: u64, table: &PrimeTable) -> Result<Factorization> {
    table.factorize(n)
}

impl PrimeTable {
    pub fn sieve(limit: u64) -> Result<Self> {
        sieve(limit)
    }

    pub fn sieve_with_budget(limit: u64, budget_bytes: u64) -> Result<Self> {
        if limit < 2 {
            return Err(Error::Domain(format!(
                "sieve limit must be >= 2, got {limit}"
            )));
        }
        let needed = sieve_memory_estimate(limit);
        if needed > budget_bytes {
            return Err(Error::ResourceExhausted {
                limit,
                needed_bytes: needed,
                budget_bytes,
            });
        }
        let primes = if limit <= SEGMENT_THRESHOLD {
            simple_sieve(limit)
        } else {
            segmented_sieve(limit)
        };
        Ok(PrimeTable {
            limit,
            primes,
            source: PrimeSource::Sieved,
        })
    }

    /// Build a table from an explicit list. The list must be exactly the
    /// primes up to `limit`; only cheap structural checks are made.
    fn from_parts(limit: u64, primes: Vec<u64>, source: PrimeSource) -> Result<Self> {
        if limit < 2 || primes.first() != Some(&2) {
            return Err(Error::Domain("prime list must start at 2".into()));
        }
        if primes.windows(2).any(|w| w[0] >= w[1]) || *primes.last().unwrap() > limit {
            return Err(Error::Domain(
                "prime list not strictly increasing within limit".into(),
            ));
        }
        Ok(PrimeTable {
            limit,
            primes,
            source,
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn source(&self) -> PrimeSource {
        self.source
    }

    /// `p_k`, 1-indexed.
    pub fn nth(&self, k: usize) -> Result<u64> {
        if k == 0 || k > self.primes.len() {
            return Err(Error::OutOfRange {
                index: k,
                available: self.primes.len(),
            });
        }
        Ok(self.primes[k - 1])
    }

    /// 1-based index of `p` if it is a listed prime.
    pub fn index_of(&self, p: u64) -> Option<usize> {
        self.primes.binary_search(&p).ok().map(|i| i + 1)
    }

    /// π(x) restricted to the table; exact for `x <= limit`.
    pub fn count_up_to(&self, x: u64) -> usize {
        self.primes.partition_point(|&p| p <= x)
    }

    /// A lower bound for `p_{m+1}`: the prime itself when listed, otherwise
    /// `limit + 1` (every prime past the table exceeds the limit).
    pub fn next_prime_lower_bound(&self, m: usize) -> u64 {
        self.primes.get(m).copied().unwrap_or(self.limit + 1)
    }

    /// The sub-table of primes up to `limit`.
    pub fn truncated(&self, limit: u64) -> PrimeTable {
        let limit = limit.clamp(2, self.limit);
        let n = self.count_up_to(limit);
        PrimeTable {
            limit,
            primes: self.primes[..n].to_vec(),
            source: self.source,
        }
    }

    /// Trial division by the listed primes.
    pub fn factorize(&self, n: u64) -> Result<Factorization> {
        if n == 0 {
            return Err(Error::Domain("cannot factorize 0".into()));
        }
        let mut rest = n;
        let mut factors = Vec::new();
        for (i, &p) in self.primes.iter().enumerate() {
            if p.saturating_mul(p) > rest {
                break;
            }
            if rest.is_multiple_of(p) {
                let mut exponent = 0;
                while rest.is_multiple_of(p) {
                    rest /= p;
                    exponent += 1;
                }
                factors.push(PrimePower {
                    index: i + 1,
                    prime: p,
                    exponent,
                });
            }
        }
        if rest > 1 {
            // What is left is prime, or a product of primes past the table.
            match self.index_of(rest) {
                Some(index) => factors.push(PrimePower {
                    index,
                    prime: rest,
                    exponent: 1,
                }),
                None => {
                    return Err(Error::IncompleteTable {
                        n,
                        limit: self.limit,
                        cofactor: rest,
                    })
                }
            }
        }
        Ok(Factorization { n, factors })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let io = |source| Error::Io {
            path: path.to_path_buf(),
            source,
        };
        let file = File::create(path).map_err(io)?;
        let mut out = BufWriter::new(file);
        out.write_all(&CACHE_MAGIC).map_err(io)?;
        out.write_all(&CACHE_VERSION.to_le_bytes()).map_err(io)?;
        out.write_all(&self.limit.to_le_bytes()).map_err(io)?;
        for p in &self.primes {
            out.write_all(&p.to_le_bytes()).map_err(io)?;
        }
        out.flush().map_err(io)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let io = |source| Error::Io {
            path: path.to_path_buf(),
            source,
        };
        let bad = |reason: &str| Error::CacheFormat {
            path: path.to_path_buf(),
            reason: reason.to_string(),
        };
        let mut bytes = Vec::new();
        File::open(path)
            .and_then(|mut f| f.read_to_end(&mut bytes))
            .map_err(io)?;
        if bytes.len() < CACHE_HEADER_LEN {
            return Err(bad("truncated header"));
        }
        if bytes[0..4] != CACHE_MAGIC {
            return Err(bad("bad magic"));
        }
        let version = u32::from_le_bytes(bytes[4..8].try_into().unwrap());
        if version != CACHE_VERSION {
            return Err(bad(&format!("unsupported version {version}")));
        }
        let limit = u64::from_le_bytes(bytes[8..16].try_into().unwrap());
        let body = &bytes[CACHE_HEADER_LEN..];
        if body.len() % 8 != 0 {
            return Err(bad("body is not a whole number of u64 values"));
        }
        let primes: Vec<u64> = body
            .chunks_exact(8)
            .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        PrimeTable::from_parts(limit, primes, PrimeSource::LoadedFromCache)
            .map_err(|e| bad(&e.to_string()))
    }

    /// Load `path` when it covers `limit`, otherwise sieve and rewrite it.
    pub fn load_or_sieve(path: &Path, limit: u64, budget_bytes: u64) -> Result<Self> {
        if path.exists() {
            if let Ok(table) = PrimeTable::load(path) {
                if table.limit >= limit {
                    return Ok(table.truncated(limit));
                }
            }
        }
        let table = PrimeTable::sieve_with_budget(limit, budget_bytes)?;
        table.save(path)?;
        Ok(table)
    }
}

/// Odd-only sieve of Eratosthenes; bit `i` stands for `2i + 1`.
fn simple_sieve(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    let half = n / 2 + 1;
    let mut composite = vec![false; half];
    composite[0] = true; // 1
    let mut i = 1;
    while (2 * i + 1) * (2 * i + 1) <= n {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = p * p / 2;
            while j < half {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    let mut primes = Vec::with_capacity(prime_count_hint(limit));
    primes.push(2);
    primes.extend(
        composite
            .iter()
            .enumerate()
            .filter(|&(i, &c)| !c && 2 * i < n)
            .map(|(i, _)| 2 * i as u64 + 1),
    );
    primes
}

fn segmented_sieve(limit: u64) -> Vec<u64> {
    let root = (limit as f64).sqrt() as u64 + 1;
    let base: Vec<u64> = simple_sieve(root).into_iter().skip(1).collect();
    let mut primes = Vec::with_capacity(prime_count_hint(limit));
    primes.push(2);

    let mut segment = vec![false; SEGMENT_ODDS];
    // Segment covers odd numbers low, low + 2, ..., low + 2 * (SEGMENT_ODDS - 1).
    let mut low = 3u64;
    while low <= limit {
        let high = (low + 2 * SEGMENT_ODDS as u64 - 2).min(limit | 1);
        let len = ((high - low) / 2 + 1) as usize;
        segment[..len].fill(false);
        for &p in &base {
            let sq = p * p;
            if sq > high {
                break;
            }
            let mut start = if sq >= low {
                sq
            } else {
                let r = low.div_ceil(p) * p;
                if r % 2 == 0 {
                    r + p
                } else {
                    r
                }
            };
            while start <= high {
                segment[((start - low) / 2) as usize] = true;
                start += 2 * p;
            }
        }
        primes.extend(
            segment[..len]
                .iter()
                .enumerate()
                .filter(|&(_, &c)| !c)
                .map(|(i, _)| low + 2 * i as u64)
                .filter(|&v| v <= limit),
        );
        low = high + 2;
    }
    primes
}

fn prime_count_hint(limit: u64) -> usize {
    if limit < 17 {
        8
    } else {
        let l = limit as f64;
        (1.25506 * l / l.ln()) as usize + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_count(n: u64) -> usize {
        (2..=n)
            .filter(|&m| (2..).take_while(|d| d * d <= m).all(|d| m % d != 0))
            .count()
    }

    #[test]
    fn small_sieves() {
        assert_eq!(sieve(10).unwrap().primes(), &[2, 3, 5, 7]);
        assert_eq!(sieve(2).unwrap().primes(), &[2]);
        assert_eq!(sieve(3).unwrap().primes(), &[2, 3]);
        assert!(matches!(sieve(1), Err(Error::Domain(_))));
    }

    #[test]
    fn count_below_one_million() {
        assert_eq!(sieve(1_000_000).unwrap().len(), 78_498);
    }

    #[test]
    fn segmented_matches_simple() {
        for limit in [3u64, 10, 1_000, 524_287, 524_288, 1_048_581, 2_000_003] {
            assert_eq!(segmented_sieve(limit), simple_sieve(limit), "limit {limit}");
        }
    }

    #[test]
    fn completeness_against_trial_division() {
        for n in [2u64, 97, 1_000, 10_000] {
            assert_eq!(sieve(n).unwrap().len(), trial_division_count(n));
        }
    }

    #[test]
    fn nth_prime_is_one_indexed() {
        let t = sieve(200).unwrap();
        assert_eq!(nth_prime(1, &t).unwrap(), 2);
        assert_eq!(nth_prime(4, &t).unwrap(), 7);
        assert_eq!(nth_prime(25, &t).unwrap(), 97);
        assert!(matches!(t.nth(0), Err(Error::OutOfRange { .. })));
        assert!(matches!(t.nth(47), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn factorize_examples() {
        let t = sieve(100).unwrap();
        assert!(factorize(1, &t).unwrap().factors.is_empty());
        let f = factorize(12, &t).unwrap();
        let pairs: Vec<_> = f.factors.iter().map(|p| (p.index, p.exponent)).collect();
        assert_eq!(pairs, vec![(1, 2), (2, 1)]);
        let f = factorize(360, &t).unwrap();
        let pairs: Vec<_> = f.factors.iter().map(|p| (p.index, p.exponent)).collect();
        assert_eq!(pairs, vec![(1, 3), (2, 2), (3, 1)]);
        // 101 * 103 is beyond a table of primes up to 100.
        assert!(matches!(
            factorize(101 * 103, &t),
            Err(Error::IncompleteTable {
                cofactor: 10_403,
                ..
            })
        ));
        // A cofactor that is a listed prime is accepted.
        assert_eq!(factorize(2 * 97, &t).unwrap().factors.len(), 2);
    }

    #[test]
    fn factorization_round_trip() {
        let t = sieve(100_000).unwrap();
        for n in 1..=100_000u64 {
            assert_eq!(t.factorize(n).unwrap().recompose(), n);
        }
    }

    #[test]
    fn memory_budget_is_enforced() {
        assert!(matches!(
            PrimeTable::sieve_with_budget(1_000_000_000, 1 << 20),
            Err(Error::ResourceExhausted { .. })
        ));
    }

    #[test]
    fn next_prime_lower_bound_past_table() {
        let t = sieve(10).unwrap();
        assert_eq!(t.next_prime_lower_bound(2), 5);
        assert_eq!(t.next_prime_lower_bound(4), 11);
    }
}
