//! Regular continued-fraction expansion with exact convergent tables.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebraic::AlgebraicNumber;
use crate::error::{CfError, Result};

/// Partial quotients `b_0..b_N` of a positive number together with the
/// convergent table `(p_n, q_n)` for `n = -1..N` and the complete quotients
/// `xi_1..xi_N`.
#[derive(Clone, Debug)]
pub struct Expansion {
    number: AlgebraicNumber,
    quotients: Vec<BigInt>,
    // convergents[i] holds (p, q) for index n = i - 1
    convergents: Vec<(BigInt, BigInt)>,
    complete_quotients: Vec<AlgebraicNumber>,
    terminated: bool,
}

impl Expansion {
    pub fn number(&self) -> &AlgebraicNumber {
        &self.number
    }

    pub fn quotients(&self) -> &[BigInt] {
        &self.quotients
    }

    /// `b_n`.
    pub fn quotient(&self, n: usize) -> &BigInt {
        &self.quotients[n]
    }

    pub fn len(&self) -> usize {
        self.quotients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quotients.is_empty()
    }

    /// Largest valid quotient index `N`.
    pub fn last_index(&self) -> usize {
        self.quotients.len() - 1
    }

    pub fn terminated(&self) -> bool {
        self.terminated
    }

    /// The reduced convergent `(p_n, q_n)` for `-1 <= n <= N`.
    pub fn convergent(&self, n: i64) -> Result<(&BigInt, &BigInt)> {
        let max = self.last_index() as i64;
        if n < -1 || n > max {
            return Err(CfError::IndexOutOfRange {
                index: n,
                min: -1,
                max,
            });
        }
        let (p, q) = &self.convergents[(n + 1) as usize];
        Ok((p, q))
    }

    /// `p_n` for `n >= -1`; panics when out of range.
    pub fn p(&self, n: i64) -> &BigInt {
        &self.convergents[(n + 1) as usize].0
    }

    /// `q_n` for `n >= -1`; panics when out of range.
    pub fn q(&self, n: i64) -> &BigInt {
        &self.convergents[(n + 1) as usize].1
    }

    /// The complete quotient `xi_n` for `0 <= n <= N`; `xi_0` is the number.
    pub fn complete_quotient(&self, n: usize) -> Option<&AlgebraicNumber> {
        match n {
            0 => Some(&self.number),
            _ => self.complete_quotients.get(n - 1),
        }
    }
}

/// Expands a positive number into at most `max_terms` partial quotients.
///
/// Irrational inputs always produce exactly `max_terms` quotients. Rationals
/// stop at the end of the Euclidean algorithm; the last quotient is then at
/// least 2 whenever there is more than one.
pub fn expand(x: &AlgebraicNumber, max_terms: usize) -> Result<Expansion> {
    if max_terms == 0 {
        return Err(CfError::domain("max_terms must be at least 1"));
    }
    if x.compare(&BigRational::zero()) != Ordering::Greater {
        return Err(CfError::domain(format!("{x} is not positive")));
    }
    let mut quotients = Vec::with_capacity(max_terms);
    let mut complete = Vec::with_capacity(max_terms.saturating_sub(1));
    let terminated = match x {
        AlgebraicNumber::Rational(r) => {
            let (mut num, mut den) = (r.numer().clone(), r.denom().clone());
            loop {
                let (b, rem) = num.div_mod_floor(&den);
                quotients.push(b);
                if rem.is_zero() {
                    break true;
                }
                if quotients.len() == max_terms {
                    break false;
                }
                num = den;
                den = rem;
                complete.push(AlgebraicNumber::Rational(BigRational::new(
                    num.clone(),
                    den.clone(),
                )));
            }
        }
        AlgebraicNumber::Root(_) => {
            let mut current = x.clone();
            for step in 0..max_terms {
                let (b, narrowed) = current.floor_refined();
                if step + 1 < max_terms {
                    current = narrowed.moebius_step(&b)?;
                }
                if step > 0 {
                    complete.push(narrowed);
                }
                quotients.push(b);
            }
            false
        }
    };
    let convergents = convergent_table(&quotients);
    Ok(Expansion {
        number: x.clone(),
        quotients,
        convergents,
        complete_quotients: complete,
        terminated,
    })
}

fn convergent_table(quotients: &[BigInt]) -> Vec<(BigInt, BigInt)> {
    let mut table = Vec::with_capacity(quotients.len() + 1);
    table.push((BigInt::one(), BigInt::zero()));
    let (mut p2, mut q2) = (BigInt::zero(), BigInt::one()); // p_{-2}, q_{-2}
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    for b in quotients {
        let p = b * &p1 + &p2;
        let q = b * &q1 + &q2;
        table.push((p.clone(), q.clone()));
        p2 = std::mem::replace(&mut p1, p);
        q2 = std::mem::replace(&mut q1, q);
    }
    table
}

/// Outcome of a single identity check at index `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub n: usize,
    pub ok: bool,
}

/// Results of the classical convergent identities over an expansion.
#[derive(Clone, Debug, Default)]
pub struct IdentityReport {
    /// `p_n q_{n-1} - p_{n-1} q_n = (-1)^(n-1)` for every n.
    pub determinant: Vec<Check>,
    /// Even convergents below the number, odd ones above.
    pub alternation: Vec<Check>,
    /// `1/(b_{n+1} + 2) < |delta_n| < 1/b_{n+1}` with
    /// `delta_n = (p_n/q_n - x) q_n^2`.
    pub delta_bounds: Vec<Check>,
    /// `|1 - x/(p_n/q_n)| < |1 - x/(p_{n-1}/q_{n-1})|`.
    pub relative_error: Vec<Check>,
    /// Complete quotients exceed 1.
    pub complete_quotients: Vec<Check>,
    pub passed: bool,
}

impl IdentityReport {
    pub fn failures(&self) -> impl Iterator<Item = (&'static str, usize)> + '_ {
        let groups: [(&'static str, &Vec<Check>); 5] = [
            ("determinant", &self.determinant),
            ("alternation", &self.alternation),
            ("delta_bounds", &self.delta_bounds),
            ("relative_error", &self.relative_error),
            ("complete_quotients", &self.complete_quotients),
        ];
        groups
            .into_iter()
            .flat_map(|(name, checks)| checks.iter().filter(|c| !c.ok).map(move |c| (name, c.n)))
    }
}

fn sign_int(o: Ordering) -> BigInt {
    match o {
        Ordering::Less => -BigInt::one(),
        Ordering::Equal => BigInt::zero(),
        Ordering::Greater => BigInt::one(),
    }
}

/// Runs every classical identity against the expansion, deciding each
/// inequality exactly.
pub fn verify_identities(exp: &Expansion) -> IdentityReport {
    let x = exp.number();
    let last = exp.last_index();
    let rational = x.is_rational();
    let mut report = IdentityReport::default();

    for n in 0..=last {
        let n_i = n as i64;
        let lhs = exp.p(n_i) * exp.q(n_i - 1) - exp.p(n_i - 1) * exp.q(n_i);
        let expected = if n % 2 == 1 { BigInt::one() } else { -BigInt::one() };
        report.determinant.push(Check { n, ok: lhs == expected });
    }

    // sign of p_n - q_n x, i.e. the side of the convergent relative to x
    let sides: Vec<Ordering> = (0..=last)
        .map(|n| {
            let n = n as i64;
            x.sign_of_linear(exp.p(n), &-exp.q(n).clone())
        })
        .collect();

    let side_limit = if rational { last } else { last + 1 };
    for (n, side) in sides.iter().enumerate().take(side_limit) {
        let want = if n % 2 == 0 { Ordering::Less } else { Ordering::Greater };
        report.alternation.push(Check { n, ok: *side == want });
    }

    // at the terminal step of a rational the next complete quotient is an
    // integer and the upper bound becomes an equality for n = N - 1
    let delta_limit = if rational { last.saturating_sub(1) } else { last };
    for (n, side) in sides.iter().enumerate().take(delta_limit) {
        let n_i = n as i64;
        let b = exp.quotient(n + 1);
        let s = sign_int(*side);
        let (p, q) = (exp.p(n_i), exp.q(n_i));
        let pq = &s * p * q;
        let qq = -(&s * q * q);
        // |delta| < 1/b  <=>  b*s*(p q - q^2 x) - 1 < 0
        let upper = x.sign_of_linear(&(b * &pq - 1u32), &(b * &qq)) == Ordering::Less;
        let b2: BigInt = b + 2u32;
        let lower = x.sign_of_linear(&(&b2 * &pq - 1u32), &(&b2 * &qq)) == Ordering::Greater;
        report.delta_bounds.push(Check { n, ok: upper && lower && *side != Ordering::Equal });
    }

    for n in 1..=last {
        let n_i = n as i64;
        let (p1, q1) = (exp.p(n_i - 1), exp.q(n_i - 1));
        let (p, q) = (exp.p(n_i), exp.q(n_i));
        if !p1.is_positive() {
            continue;
        }
        let sa = sign_int(sides[n]);
        let sb = sign_int(sides[n - 1]);
        // p_{n-1} |p_n - q_n x| < p_n |p_{n-1} - q_{n-1} x|
        let c0 = p1 * p * (&sa - &sb);
        let c1 = &sb * p * q1 - &sa * p1 * q;
        let ok = x.sign_of_linear(&c0, &c1) == Ordering::Less;
        report.relative_error.push(Check { n, ok });
    }

    let one = BigRational::one();
    for n in 1..=last {
        if let Some(xi) = exp.complete_quotient(n) {
            report.complete_quotients.push(Check {
                n,
                ok: xi.compare(&one) == Ordering::Greater,
            });
        }
    }

    let passed = report.failures().next().is_none();
    report.passed = passed;
    report
}
