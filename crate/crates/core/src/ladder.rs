//! Ladders of a pair `(xi, eta)` with `xi * eta = m`.
//!
//! A connection links the triplet `(p_{n-1}/q_{n-1}, xi_n, b_n)` of `xi` with
//! the triplet `(P_{k-1}/Q_{k-1}, eta_k, B_k)` of `eta` whenever the product of
//! the two convergents is exactly `m`. Indices `n` and `k` start at 1.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebraic::reduce_pair;
use crate::cf::Expansion;
use crate::error::{CfError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    pub n: usize,
    pub k: usize,
    /// `p_{n-1} / Q_{k-1}`
    pub r: BigInt,
    /// `P_{k-1} / q_{n-1}`
    pub s: BigInt,
    /// `r xi_n - s eta_k`, computed as `(P_{k-2} - r q_{n-2}) / q_{n-1}`
    pub t: BigInt,
    /// `r b_n - s B_k`
    pub value: BigInt,
    /// `-2r + 2`
    pub lower: BigInt,
    /// `2s - 2`
    pub upper: BigInt,
}

#[derive(Clone, Debug)]
pub struct Ladder {
    m: BigInt,
    exp_xi: Expansion,
    exp_eta: Expansion,
    connections: Vec<Connection>,
}

impl Ladder {
    /// Assembles a ladder without searching or validating connections. Used to
    /// audit externally supplied connection lists with [`verify_ladder`].
    pub fn from_parts(
        m: BigInt,
        exp_xi: Expansion,
        exp_eta: Expansion,
        connections: Vec<Connection>,
    ) -> Self {
        Ladder {
            m,
            exp_xi,
            exp_eta,
            connections,
        }
    }

    pub fn m(&self) -> &BigInt {
        &self.m
    }

    pub fn exp_xi(&self) -> &Expansion {
        &self.exp_xi
    }

    pub fn exp_eta(&self) -> &Expansion {
        &self.exp_eta
    }

    pub fn connections(&self) -> &[Connection] {
        &self.connections
    }

    /// Largest `n` considered: every `n` needs `b_n`.
    pub fn max_n(&self) -> usize {
        self.exp_xi.last_index()
    }

    pub fn max_k(&self) -> usize {
        self.exp_eta.last_index()
    }

    /// The connection at `index` (0-based position in n-order).
    pub fn connection_details(&self, index: usize) -> Result<&Connection> {
        self.connections
            .get(index)
            .ok_or_else(|| CfError::IndexOutOfRange {
                index: index as i64,
                min: 0,
                max: self.connections.len() as i64 - 1,
            })
    }
}

fn materialize(xi: &Expansion, eta: &Expansion, m: &BigInt, n: usize, k: usize) -> Connection {
    let (n_i, k_i) = (n as i64, k as i64);
    let (p1, q1, q2) = (xi.p(n_i - 1), xi.q(n_i - 1), xi.q(n_i - 2));
    let (big_p1, big_q1, big_p2) = (eta.p(k_i - 1), eta.q(k_i - 1), eta.p(k_i - 2));
    let r = p1 / big_q1;
    let s = big_p1 / q1;
    let t = (big_p2 - &r * q2).div_floor(q1);
    let value = &r * xi.quotient(n) - &s * eta.quotient(k);
    let two = BigInt::from(2);
    let lower = -(&two * &r) + &two;
    let upper = &two * &s - &two;
    debug_assert_eq!(&r * &s, *m);
    Connection {
        n,
        k,
        r,
        s,
        t,
        value,
        lower,
        upper,
    }
}

/// Finds every connection between the convergents of `exp_xi` and `exp_eta`.
///
/// Each convergent `p_{n-1}/q_{n-1}` of xi is probed against a table of the
/// reduced convergents of eta keyed by `(P, Q)`, so the search is exact and
/// linear in the number of terms.
pub fn build_ladder(exp_xi: Expansion, exp_eta: Expansion, m: &BigInt) -> Result<Ladder> {
    if *m < BigInt::one() {
        return Err(CfError::domain(format!("m = {m} must be at least 1")));
    }
    let expected_eta = exp_xi.number().reciprocal_scale(m)?;
    if !expected_eta.same_value(exp_eta.number()) {
        return Err(CfError::domain(format!(
            "{} times {} is not {m}",
            exp_xi.number(),
            exp_eta.number()
        )));
    }
    let table: HashMap<(BigInt, BigInt), usize> = {
        let mut table = HashMap::with_capacity(exp_eta.len());
        for k in 1..=exp_eta.last_index() {
            let k_i = k as i64;
            table
                .entry((exp_eta.p(k_i - 1).clone(), exp_eta.q(k_i - 1).clone()))
                .or_insert(k);
        }
        table
    };
    let mut connections = Vec::new();
    for n in 1..=exp_xi.last_index() {
        let n_i = n as i64;
        let p1 = exp_xi.p(n_i - 1);
        if p1.is_zero() {
            continue;
        }
        let key = reduce_pair(&(m * exp_xi.q(n_i - 1)), p1);
        if let Some(&k) = table.get(&key) {
            connections.push(materialize(&exp_xi, &exp_eta, m, n, k));
        }
    }
    Ok(Ladder {
        m: m.clone(),
        exp_xi,
        exp_eta,
        connections,
    })
}

/// Checks on a single connection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionVerdict {
    pub index: usize,
    pub n: usize,
    pub k: usize,
    /// `p_{n-1} P_{k-1} = m q_{n-1} Q_{k-1}`
    pub cross_product: bool,
    /// `r`, `s` divide exactly and `r s = m`
    pub factors: bool,
    /// stored `value`, `lower`, `upper` agree with `r`, `s`, `b_n`, `B_k`
    pub consistency: bool,
    /// `lower <= value <= upper`
    pub bounds: bool,
    /// `n` and `k` have opposite parity
    pub parity: bool,
    /// both closed forms of `t` divide exactly and agree with the stored `t`
    pub t_integral: bool,
    /// `-r + 1 <= t <= s - 1`
    pub t_bounds: bool,
    /// `t` lies in an interval enclosure of `r xi_n - s eta_k`
    pub complete_quotients: bool,
    /// for prime `m`: `{r, s} = {1, m}` and the larger quotient dominates by `m`
    pub prime_split: Option<bool>,
}

impl ConnectionVerdict {
    pub fn passed(&self) -> bool {
        self.cross_product
            && self.factors
            && self.consistency
            && self.bounds
            && self.parity
            && self.t_integral
            && self.t_bounds
            && self.complete_quotients
            && self.prime_split.unwrap_or(true)
    }
}

/// A maximal block of connections consecutive in both `n` and `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Run {
    /// position of the first connection
    pub start: usize,
    pub len: usize,
    /// `(r, s)` swaps between neighbours
    pub interchange: bool,
    /// interior connections have `value = 0` and `t = 0`
    pub middle_zero: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverageStatus {
    Connected,
    /// the partner convergent would lie past the last computed one of eta
    BeyondHorizon,
    Missing,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageEntry {
    pub n: usize,
    pub b_n: BigInt,
    pub status: CoverageStatus,
}

#[derive(Clone, Debug)]
pub struct LadderReport {
    pub connections: Vec<ConnectionVerdict>,
    /// n-order and k-order of connections agree
    pub non_crossing: bool,
    pub runs: Vec<Run>,
    /// large-quotient coverage; `None` unless `eta < m`
    pub coverage: Option<Vec<CoverageEntry>>,
    pub m_prime: bool,
    pub passed: bool,
}

impl LadderReport {
    pub fn failed_connections(&self) -> impl Iterator<Item = &ConnectionVerdict> {
        self.connections.iter().filter(|v| !v.passed())
    }

    pub fn failed_runs(&self) -> impl Iterator<Item = &Run> {
        self.runs.iter().filter(|r| !(r.interchange && r.middle_zero))
    }

    pub fn missing_coverage(&self) -> impl Iterator<Item = &CoverageEntry> {
        self.coverage
            .iter()
            .flatten()
            .filter(|c| c.status == CoverageStatus::Missing)
    }

    pub fn violation_count(&self) -> usize {
        self.failed_connections().count()
            + self.failed_runs().count()
            + self.missing_coverage().count()
            + usize::from(!self.non_crossing)
    }
}

pub(crate) fn is_prime(m: &BigInt) -> bool {
    if *m < BigInt::from(2) {
        return false;
    }
    let mut d = BigInt::from(2);
    while &d * &d <= *m {
        if (m % &d).is_zero() {
            return false;
        }
        d += 1u32;
    }
    true
}

fn diagnostic_width() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << 32u32)
}

fn verify_connection(
    ladder: &Ladder,
    index: usize,
    c: &Connection,
    m_prime: bool,
    width: &BigRational,
) -> ConnectionVerdict {
    let (xi, eta, m) = (&ladder.exp_xi, &ladder.exp_eta, &ladder.m);
    let in_range = c.n >= 1 && c.n <= xi.last_index() && c.k >= 1 && c.k <= eta.last_index();
    if !in_range {
        return ConnectionVerdict {
            index,
            n: c.n,
            k: c.k,
            cross_product: false,
            factors: false,
            consistency: false,
            bounds: false,
            parity: false,
            t_integral: false,
            t_bounds: false,
            complete_quotients: false,
            prime_split: m_prime.then_some(false),
        };
    }
    let (n_i, k_i) = (c.n as i64, c.k as i64);
    let (p1, q1, p2, q2) = (xi.p(n_i - 1), xi.q(n_i - 1), xi.p(n_i - 2), xi.q(n_i - 2));
    let (bp1, bq1, bp2, bq2) = (eta.p(k_i - 1), eta.q(k_i - 1), eta.p(k_i - 2), eta.q(k_i - 2));
    let (b_n, big_b_k) = (xi.quotient(c.n), eta.quotient(c.k));
    let two = BigInt::from(2);

    let cross_product = p1 * bp1 == m * q1 * bq1;
    let factors = c.r.is_positive()
        && c.s.is_positive()
        && &c.r * bq1 == *p1
        && &c.s * q1 == *bp1
        && &c.r * &c.s == *m;
    let consistency = c.value == &c.r * b_n - &c.s * big_b_k
        && c.lower == -(&two * &c.r) + &two
        && c.upper == &two * &c.s - &two;
    let bounds = c.lower <= c.value && c.value <= c.upper;
    let parity = (c.n + c.k) % 2 == 1;
    let t_integral = &c.t * q1 == bp2 - &c.r * q2 && &c.t * p1 == m * bq2 - &c.r * p2;
    let t_bounds = -&c.r + 1u32 <= c.t && c.t <= &c.s - 1u32;

    let complete_quotients = match (xi.complete_quotient(c.n), eta.complete_quotient(c.k)) {
        (Some(x), Some(y)) => {
            let (xl, xh) = x.enclosure(width);
            let (yl, yh) = y.enclosure(width);
            let r = BigRational::from_integer(c.r.clone());
            let s = BigRational::from_integer(c.s.clone());
            let t = BigRational::from_integer(c.t.clone());
            let lo = &r * xl - &s * yh;
            let hi = &r * xh - &s * yl;
            lo <= t && t <= hi
        }
        _ => false,
    };

    let prime_split = m_prime.then(|| {
        let one = BigInt::one();
        if c.r == one && c.s == *m {
            *b_n >= m * big_b_k
        } else if c.r == *m && c.s == one {
            *big_b_k >= m * b_n
        } else {
            false
        }
    });

    ConnectionVerdict {
        index,
        n: c.n,
        k: c.k,
        cross_product,
        factors,
        consistency,
        bounds,
        parity,
        t_integral,
        t_bounds,
        complete_quotients,
        prime_split,
    }
}

fn runs_of(connections: &[Connection]) -> Vec<Run> {
    let mut runs = Vec::new();
    let mut start = 0;
    while start < connections.len() {
        let mut end = start + 1;
        while end < connections.len()
            && connections[end].n == connections[end - 1].n + 1
            && connections[end].k == connections[end - 1].k + 1
        {
            end += 1;
        }
        let block = &connections[start..end];
        let interchange = block
            .windows(2)
            .all(|w| w[1].r == w[0].s && w[1].s == w[0].r);
        let middle_zero = block.len() < 3
            || block[1..block.len() - 1]
                .iter()
                .all(|c| c.value.is_zero() && c.t.is_zero());
        runs.push(Run {
            start,
            len: block.len(),
            interchange,
            middle_zero,
        });
        start = end;
    }
    runs
}

fn coverage_of(ladder: &Ladder) -> Option<Vec<CoverageEntry>> {
    let (xi, eta, m) = (&ladder.exp_xi, &ladder.exp_eta, &ladder.m);
    let m_q = BigRational::from_integer(m.clone());
    if eta.number().compare(&m_q) != Ordering::Less {
        return None;
    }
    let threshold: BigInt = m * 2u32 + 1u32;
    let horizon = eta.q(eta.last_index() as i64 - 1);
    let connected: std::collections::HashSet<usize> =
        ladder.connections.iter().map(|c| c.n).collect();
    let mut entries = Vec::new();
    for n in 1..=xi.last_index() {
        let b_n = xi.quotient(n);
        let p1 = xi.p(n as i64 - 1);
        if *b_n < threshold || p1.is_zero() {
            continue;
        }
        let status = if connected.contains(&n) {
            CoverageStatus::Connected
        } else {
            let (_, partner_q) = reduce_pair(&(m * xi.q(n as i64 - 1)), p1);
            if partner_q > *horizon {
                CoverageStatus::BeyondHorizon
            } else {
                CoverageStatus::Missing
            }
        };
        entries.push(CoverageEntry {
            n,
            b_n: b_n.clone(),
            status,
        });
    }
    Some(entries)
}

/// Evaluates every structural statement about the ladder and collects the
/// verdicts. Failures are reported, never raised.
pub fn verify_ladder(ladder: &Ladder) -> LadderReport {
    let m_prime = is_prime(&ladder.m);
    let width = diagnostic_width();
    let connections: Vec<ConnectionVerdict> = ladder
        .connections
        .iter()
        .enumerate()
        .map(|(i, c)| verify_connection(ladder, i, c, m_prime, &width))
        .collect();
    let non_crossing = ladder
        .connections
        .windows(2)
        .all(|w| w[0].n < w[1].n && w[0].k < w[1].k);
    let runs = runs_of(&ladder.connections);
    let coverage = coverage_of(ladder);
    let mut report = LadderReport {
        connections,
        non_crossing,
        runs,
        coverage,
        m_prime,
        passed: false,
    };
    report.passed = report.violation_count() == 0;
    report
}

/// Outcome of the product identity check at one convergent of xi.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualVerdict {
    pub n: usize,
    /// `sign(m q - eta p) = -sign(p - q xi)`, both nonzero
    pub sign_consistent: bool,
    /// enclosures of `(m q/p - eta) p^2` and `-(p/q) eta (p/q - xi) q^2` overlap
    pub magnitude_consistent: bool,
}

fn interval_mul(
    a: (&BigRational, &BigRational),
    b: (&BigRational, &BigRational),
) -> (BigRational, BigRational) {
    let products = [a.0 * b.0, a.0 * b.1, a.1 * b.0, a.1 * b.1];
    let lo = products.iter().min().cloned().unwrap();
    let hi = products.iter().max().cloned().unwrap();
    (lo, hi)
}

/// Checks the identity `m q/p - eta = -(q/p) eta (p/q - xi)` at the convergent
/// `p/q = p_{n-1}/q_{n-1}`: the sign relation exactly, the scaled magnitudes
/// through interval enclosures of width `2^-64`.
pub fn lemma22_residual(ladder: &Ladder, n: usize) -> Result<ResidualVerdict> {
    let (xi, eta, m) = (&ladder.exp_xi, &ladder.exp_eta, &ladder.m);
    let max = xi.last_index() + 1;
    if n < 1 || n > max {
        return Err(CfError::IndexOutOfRange {
            index: n as i64,
            min: 1,
            max: max as i64,
        });
    }
    let (p, q) = (xi.p(n as i64 - 1), xi.q(n as i64 - 1));
    if p.is_zero() {
        return Err(CfError::domain(format!("convergent p_{} is zero", n - 1)));
    }
    let x = xi.number();
    let y = eta.number();
    let eta_side = y.sign_of_linear(&(m * q), &-p.clone());
    let xi_side = x.sign_of_linear(p, &-q.clone());
    let sign_consistent = xi_side != Ordering::Equal && eta_side == xi_side.reverse();

    let width = BigRational::new(BigInt::one(), BigInt::one() << 64u32);
    let (xl, xh) = x.enclosure(&width);
    let (yl, yh) = y.enclosure(&width);
    let pq = BigRational::from_integer(p.clone());
    let qq = BigRational::from_integer(q.clone());
    let mq = BigRational::from_integer(m * q);
    // (m q/p - eta) p^2 = m q p - eta p^2
    let p_sq = &pq * &pq;
    let lhs = (&mq * &pq - &yh * &p_sq, &mq * &pq - &yl * &p_sq);
    // -(p/q) eta (p/q - xi) q^2 = -eta p (p - q xi)
    let diff = (&pq - &qq * &xh, &pq - &qq * &xl);
    let eta_p = (&yl * &pq, &yh * &pq);
    let (prod_lo, prod_hi) = interval_mul((&eta_p.0, &eta_p.1), (&diff.0, &diff.1));
    let rhs = (-prod_hi, -prod_lo);
    let magnitude_consistent = lhs.0 <= rhs.1 && rhs.0 <= lhs.1;
    Ok(ResidualVerdict {
        n,
        sign_consistent,
        magnitude_consistent,
    })
}

/// `(i, n_i - k_i)` for the i-th connection, 1-based.
pub fn figure3_series(ladder: &Ladder) -> Vec<(usize, i64)> {
    ladder
        .connections
        .iter()
        .enumerate()
        .map(|(i, c)| (i + 1, c.n as i64 - c.k as i64))
        .collect()
}

/// Lossy helper for plotting and summaries.
pub fn quotient_f64(b: &BigInt) -> f64 {
    b.to_f64().unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::AlgebraicNumber;
    use crate::cf::expand;

    fn cbrt(m: i64) -> AlgebraicNumber {
        AlgebraicNumber::nth_root(&BigInt::from(m), 3).unwrap()
    }

    fn golden() -> AlgebraicNumber {
        AlgebraicNumber::root(
            vec![1.into(), (-1).into(), (-1).into()],
            BigRational::from_integer(1.into()),
            BigRational::from_integer(2.into()),
        )
        .unwrap()
    }

    fn ladder_of(x: &AlgebraicNumber, m: i64, terms: usize) -> Ladder {
        let m = BigInt::from(m);
        let y = x.reciprocal_scale(&m).unwrap();
        build_ladder(expand(x, terms).unwrap(), expand(&y, terms).unwrap(), &m).unwrap()
    }

    fn tuple(c: &Connection) -> (usize, usize, i64, i64, i64, i64) {
        (
            c.n,
            c.k,
            c.r.to_i64().unwrap(),
            c.s.to_i64().unwrap(),
            c.t.to_i64().unwrap(),
            c.value.to_i64().unwrap(),
        )
    }

    #[test]
    fn cbrt2_prefix_connections() {
        // 9 quotients give n, k in 1..=8
        let l = ladder_of(&cbrt(2), 2, 9);
        let got: Vec<_> = l.connections().iter().map(tuple).collect();
        assert!(got.contains(&(2, 3, 2, 1, 0, 0)));
        assert!(got.contains(&(3, 4, 1, 2, 0, 1)));
        assert!(got.contains(&(5, 6, 2, 1, -1, -1)));
        assert_eq!(&figure3_series(&l)[..3], &[(1, -1), (2, -1), (3, -1)]);
        assert!(verify_ladder(&l).passed);
    }

    #[test]
    fn golden_shift_ladder() {
        // n, k in 1..=11 and k = n + 1
        let l = ladder_of(&golden(), 1, 12);
        assert_eq!(l.connections().len(), 10);
        for (i, c) in l.connections().iter().enumerate() {
            assert_eq!(tuple(c), (i + 1, i + 2, 1, 1, 0, 0));
        }
        let report = verify_ladder(&l);
        assert!(report.passed);
        assert_eq!(report.runs.len(), 1);
        assert!(!report.m_prime);
    }

    #[test]
    fn rejects_mismatched_pair() {
        let x = expand(&cbrt(2), 5).unwrap();
        let y = expand(&cbrt(3), 5).unwrap();
        assert!(build_ladder(x.clone(), y, &BigInt::from(2)).is_err());
        let z = expand(&cbrt(4), 5).unwrap();
        assert!(build_ladder(x, z, &BigInt::zero()).is_err());
    }

    #[test]
    fn corrupted_value_is_flagged() {
        let l = ladder_of(&cbrt(2), 2, 40);
        let mut conns = l.connections().to_vec();
        conns[2].value += 1;
        let bad = Ladder::from_parts(l.m().clone(), l.exp_xi().clone(), l.exp_eta().clone(), conns);
        let report = verify_ladder(&bad);
        let failed: Vec<_> = report.failed_connections().map(|v| v.index).collect();
        assert_eq!(failed, vec![2]);
        assert!(!report.connections[2].consistency);
        assert!(!report.passed);
    }

    #[test]
    fn connection_details_bounds() {
        let l = ladder_of(&cbrt(2), 2, 9);
        // (1, 2): 1/1 * 2/1 = 2
        assert_eq!(l.connection_details(0).unwrap().n, 1);
        assert_eq!(l.connection_details(0).unwrap().k, 2);
        assert!(l.connection_details(99).is_err());
    }

    #[test]
    fn residual_examples() {
        let l = ladder_of(&cbrt(2), 2, 10);
        // n = 2 uses p_1/q_1 = 4/3, n = 1 uses p_0/q_0 = 1/1
        for n in [1, 2, 5] {
            let v = lemma22_residual(&l, n).unwrap();
            assert!(v.sign_consistent && v.magnitude_consistent, "{v:?}");
        }
        let sqrt2 = AlgebraicNumber::nth_root(&BigInt::from(2), 2).unwrap();
        let s = ladder_of(&sqrt2, 2, 6);
        // p_1/q_1 = 3/2
        assert_eq!((s.exp_xi().p(1), s.exp_xi().q(1)), (&BigInt::from(3), &BigInt::from(2)));
        assert!(lemma22_residual(&s, 2).unwrap().sign_consistent);
        assert!(lemma22_residual(&l, 0).is_err());
        assert!(lemma22_residual(&l, 50).is_err());
    }

    #[test]
    fn residual_rejects_zero_numerator() {
        let x = golden().reciprocal_scale(&BigInt::one()).unwrap();
        let l = ladder_of(&x, 1, 6);
        assert!(matches!(lemma22_residual(&l, 1), Err(CfError::Domain(_))));
    }

    #[test]
    fn primes() {
        let primes: Vec<i64> = (0..30).filter(|&m| is_prime(&BigInt::from(m))).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
