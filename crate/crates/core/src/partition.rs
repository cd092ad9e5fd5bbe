//! Exact arbitrary-precision counting and small-scale enumeration of
//! restricted integer partitions.
//!
//! Supported restrictions, alone or combined:
//! - at most N parts (`max_parts`),
//! - every part value used at most M times (`max_multiplicity`),
//! - parts drawn from s-th powers m^s (`power`).
//!
//! Two independent exact paths exist for the unrestricted count: the dense DP
//! over part values ([`count_unrestricted`]) and the pentagonal-number
//! recurrence ([`count_unrestricted_pentagonal`]). Enumeration provides the
//! ground-truth oracle for everything else at small n.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest n accepted by [`enumerate_partitions`] unless a caller raises it.
/// p(40) = 37338 partitions is still cheap to list; growth beyond is steep.
pub const DEFAULT_ENUMERATION_CAP: u64 = 40;

/// A counting query: target n plus optional restrictions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartitionConstraint {
    /// Total being partitioned (energy quanta; ħω = 1).
    pub n: u64,
    /// At most this many parts, `None` for unbounded.
    pub max_parts: Option<u64>,
    /// Each part value used at most this many times, `None` for unbounded.
    pub max_multiplicity: Option<u64>,
    /// Parts are m^power for m ≥ 1; `1` is the ordinary case.
    pub power: u32,
}

impl PartitionConstraint {
    pub fn new(n: u64) -> Self {
        PartitionConstraint {
            n,
            max_parts: None,
            max_multiplicity: None,
            power: 1,
        }
    }

    pub fn max_parts(mut self, n_parts: u64) -> Self {
        assert!(n_parts >= 1, "max_parts must be at least 1");
        self.max_parts = Some(n_parts);
        self
    }

    pub fn max_multiplicity(mut self, m: u64) -> Self {
        assert!(m >= 1, "max_multiplicity must be at least 1");
        self.max_multiplicity = Some(m);
        self
    }

    pub fn power(mut self, s: u32) -> Self {
        assert!(s >= 1, "power must be at least 1");
        self.power = s;
        self
    }
}

/// An exact count together with its natural logarithm.
#[derive(Debug, Clone, PartialEq)]
pub struct CountResult {
    pub exact: BigUint,
    /// ln(exact); −∞ when the count is zero. Computed by big-integer log
    /// extraction, so it stays accurate far beyond the f64 overflow range.
    pub log_value: f64,
}

impl CountResult {
    pub fn from_exact(exact: BigUint) -> Self {
        let log_value = ln_biguint(&exact);
        CountResult { exact, log_value }
    }
}

/// ln of a big integer via its top 53 bits; relative error ~1e-16.
fn ln_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 53 {
        return x.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 53;
    let head = (x >> shift).to_f64().expect("53-bit head fits in f64");
    head.ln() + shift as f64 * std::f64::consts::LN_2
}

/// p(n): partitions of n with no restriction. p(0) = 1.
pub fn count_unrestricted(n: u64) -> CountResult {
    count(&PartitionConstraint::new(n))
}

/// Partitions of n into at most `n_parts` parts.
pub fn count_max_parts(n: u64, n_parts: u64) -> CountResult {
    count(&PartitionConstraint::new(n).max_parts(n_parts))
}

/// Partitions of n in which no part value occurs more than `m` times.
pub fn count_max_multiplicity(n: u64, m: u64) -> CountResult {
    count(&PartitionConstraint::new(n).max_multiplicity(m))
}

/// Partitions of n into parts of the form m^power, honoring the optional
/// restrictions; power = 1 reduces to the plain counts.
pub fn count_power(
    n: u64,
    power: u32,
    max_parts: Option<u64>,
    max_multiplicity: Option<u64>,
) -> CountResult {
    let mut c = PartitionConstraint::new(n).power(power);
    if let Some(np) = max_parts {
        c = c.max_parts(np);
    }
    if let Some(m) = max_multiplicity {
        c = c.max_multiplicity(m);
    }
    count(&c)
}

/// Exact count for an arbitrary constraint.
pub fn count(constraint: &PartitionConstraint) -> CountResult {
    let table = cached_table(constraint.n, constraint);
    CountResult::from_exact(table[constraint.n as usize].clone())
}

/// p(n) by the pentagonal-number recurrence; an exact path independent of the
/// dense DP.
pub fn count_unrestricted_pentagonal(n: u64) -> CountResult {
    let nu = n as usize;
    let mut table: Vec<BigInt> = vec![BigInt::zero(); nu + 1];
    table[0] = BigInt::one();
    for i in 1..=nu {
        let mut acc = BigInt::zero();
        let mut k: i64 = 1;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > i {
                break;
            }
            let negate = k % 2 == 0;
            let mut term = table[i - g1].clone();
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= i {
                term += &table[i - g2];
            }
            if negate {
                acc -= term;
            } else {
                acc += term;
            }
            k += 1;
        }
        table[i] = acc;
    }
    debug_assert!(!table[nu].is_negative());
    CountResult::from_exact(table[nu].to_biguint().expect("p(n) is non-negative"))
}

/// Every partition satisfying the constraint, each as a descending list of
/// parts, largest-first order. Uses [`DEFAULT_ENUMERATION_CAP`].
pub fn enumerate_partitions(constraint: &PartitionConstraint) -> Result<Vec<Vec<u64>>> {
    enumerate_partitions_capped(constraint, DEFAULT_ENUMERATION_CAP)
}

/// Enumeration with an explicit cap on n.
pub fn enumerate_partitions_capped(
    constraint: &PartitionConstraint,
    cap: u64,
) -> Result<Vec<Vec<u64>>> {
    if constraint.n > cap {
        return Err(Error::EnumerationCap {
            n: constraint.n,
            cap,
        });
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    let max_base = integer_root(constraint.n, constraint.power);
    descend(
        constraint.n,
        max_base,
        constraint.max_parts,
        constraint.max_multiplicity,
        constraint.power,
        &mut current,
        &mut out,
    );
    Ok(out)
}

/// Recursive descent: place `t` copies of the largest remaining base, then
/// recurse on strictly smaller bases.
fn descend(
    remaining: u64,
    max_base: u64,
    parts_left: Option<u64>,
    max_mult: Option<u64>,
    power: u32,
    current: &mut Vec<u64>,
    out: &mut Vec<Vec<u64>>,
) {
    if remaining == 0 {
        out.push(current.clone());
        return;
    }
    if max_base == 0 || parts_left == Some(0) {
        return;
    }
    let mut base = integer_root(remaining, power).min(max_base);
    while base >= 1 {
        let value = pow_u64(base, power);
        let mut t_max = remaining / value;
        if let Some(m) = max_mult {
            t_max = t_max.min(m);
        }
        if let Some(p) = parts_left {
            t_max = t_max.min(p);
        }
        let mut t = t_max;
        while t >= 1 {
            for _ in 0..t {
                current.push(value);
            }
            descend(
                remaining - t * value,
                base - 1,
                parts_left.map(|p| p - t),
                max_mult,
                power,
                current,
                out,
            );
            for _ in 0..t {
                current.pop();
            }
            t -= 1;
        }
        base -= 1;
    }
}

fn pow_u64(base: u64, exp: u32) -> u64 {
    base.checked_pow(exp).expect("part value overflows u64")
}

/// Largest m with m^power <= n.
fn integer_root(n: u64, power: u32) -> u64 {
    if power == 1 || n <= 1 {
        return n;
    }
    let mut r = (n as f64).powf(1.0 / power as f64).round() as u64;
    while r > 0 && pow_u64(r, power) > n {
        r -= 1;
    }
    while pow_u64(r + 1, power) <= n {
        r += 1;
    }
    r
}

// ---------------------------------------------------------------------------
// DP engine and table cache
// ---------------------------------------------------------------------------

/// Restriction signature for the table cache (tables are indexed by n).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct TableKey {
    power: u32,
    max_parts: Option<u64>,
    max_multiplicity: Option<u64>,
}

struct CacheSlot {
    last_used: u64,
    table: Arc<Vec<BigUint>>,
}

struct TableCache {
    stamp: u64,
    slots: HashMap<TableKey, CacheSlot>,
}

/// CLI sweeps reuse tables heavily; bound the cache so long sessions cannot
/// hold an unbounded number of large tables.
const MAX_CACHED_TABLES: usize = 16;

fn cache() -> &'static Mutex<TableCache> {
    static CACHE: OnceLock<Mutex<TableCache>> = OnceLock::new();
    CACHE.get_or_init(|| {
        Mutex::new(TableCache {
            stamp: 0,
            slots: HashMap::new(),
        })
    })
}

/// Counts for 0..=n_max under the constraint's restrictions, cached per
/// restriction signature. A cached table computed for a larger n_max serves
/// smaller queries directly.
fn cached_table(n_max: u64, constraint: &PartitionConstraint) -> Arc<Vec<BigUint>> {
    let key = TableKey {
        power: constraint.power,
        max_parts: constraint.max_parts,
        max_multiplicity: constraint.max_multiplicity,
    };
    let mut guard = cache().lock().expect("partition cache poisoned");
    guard.stamp += 1;
    let stamp = guard.stamp;
    if let Some(slot) = guard.slots.get_mut(&key) {
        if slot.table.len() > n_max as usize {
            slot.last_used = stamp;
            return Arc::clone(&slot.table);
        }
    }
    drop(guard);

    let table = Arc::new(compute_table(n_max, constraint));

    let mut guard = cache().lock().expect("partition cache poisoned");
    if guard.slots.len() >= MAX_CACHED_TABLES && !guard.slots.contains_key(&key) {
        if let Some(oldest) = guard
            .slots
            .iter()
            .min_by_key(|(_, slot)| slot.last_used)
            .map(|(k, _)| k.clone())
        {
            guard.slots.remove(&oldest);
        }
    }
    let stamp = guard.stamp;
    guard.slots.insert(
        key,
        CacheSlot {
            last_used: stamp,
            table: Arc::clone(&table),
        },
    );
    table
}

fn compute_table(n_max: u64, constraint: &PartitionConstraint) -> Vec<BigUint> {
    let n = n_max as usize;
    match (constraint.max_parts, constraint.max_multiplicity) {
        (Some(np), None) if constraint.power == 1 => bounded_parts_table(n, np),
        (None, mult) => value_dp_1d(n, constraint.power, mult),
        (Some(np), mult) => value_dp_2d(n, constraint.power, np, mult),
    }
}

/// Partitions of j into at most `n_parts` parts, via the conjugate recurrence
/// p(j, k) = p(j, k−1) + p(j−k, k): processing part-count budget k is the same
/// update as allowing part value k on the conjugate side.
fn bounded_parts_table(n: usize, n_parts: u64) -> Vec<BigUint> {
    let mut dp = vec![BigUint::zero(); n + 1];
    dp[0] = BigUint::one();
    let cap = n_parts.min(n as u64).max(1) as usize;
    for k in 1..=cap {
        for j in k..=n {
            let add = dp[j - k].clone();
            dp[j] += add;
        }
    }
    dp
}

/// One-dimensional DP over part values, with an optional multiplicity window.
///
/// With a bound M the update uses the telescoped form of multiplying by
/// (1 − x^{(M+1)v})/(1 − x^v):
///   new[j] = old[j] + new[j−v] − old[j−(M+1)v].
fn value_dp_1d(n: usize, power: u32, max_mult: Option<u64>) -> Vec<BigUint> {
    let mut dp = vec![BigUint::zero(); n + 1];
    dp[0] = BigUint::one();
    for value in part_values(n, power) {
        match max_mult {
            None => {
                for j in value..=n {
                    let add = dp[j - value].clone();
                    dp[j] += add;
                }
            }
            Some(m) => {
                let m = m as usize;
                let old = dp.clone();
                for j in value..=n {
                    let add = dp[j - value].clone();
                    dp[j] += add;
                    if let Some(k) = j.checked_sub((m + 1) * value) {
                        dp[j] -= &old[k];
                    }
                }
            }
        }
    }
    dp
}

/// Two-dimensional DP tracking the exact number of parts; handles the
/// combined restrictions and s-th-power values. Row c holds counts using
/// exactly c parts; the returned table is the sum over c ≤ max_parts.
fn value_dp_2d(n: usize, power: u32, n_parts: u64, max_mult: Option<u64>) -> Vec<BigUint> {
    let cap = n_parts.min(n as u64).max(1) as usize;
    let mut dp: Vec<Vec<BigUint>> = vec![vec![BigUint::zero(); n + 1]; cap + 1];
    dp[0][0] = BigUint::one();
    for value in part_values(n, power) {
        match max_mult {
            None => {
                // new[c][j] = old[c][j] + new[c−1][j−v], done in place.
                for c in 1..=cap {
                    for j in value..=n {
                        let add = dp[c - 1][j - value].clone();
                        dp[c][j] += add;
                    }
                }
            }
            Some(m) => {
                let m = m as usize;
                let old = dp.clone();
                for c in 1..=cap {
                    for j in value..=n {
                        let add = dp[c - 1][j - value].clone();
                        dp[c][j] += add;
                        if c > m {
                            if let Some(k) = j.checked_sub((m + 1) * value) {
                                dp[c][j] -= &old[c - (m + 1)][k];
                            }
                        }
                    }
                }
            }
        }
    }
    let mut out = vec![BigUint::zero(); n + 1];
    for row in &dp {
        for (j, v) in row.iter().enumerate() {
            out[j] += v;
        }
    }
    out
}

fn part_values(n: usize, power: u32) -> Vec<usize> {
    let mut values = Vec::new();
    let mut m: u64 = 1;
    loop {
        let v = pow_u64(m, power);
        if v > n as u64 {
            break;
        }
        values.push(v as usize);
        m += 1;
    }
    values
}
