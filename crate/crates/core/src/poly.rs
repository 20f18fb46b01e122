//! Dense integer polynomials, stored highest degree first.
//!
//! The free functions in this module work on raw coefficient slices and are
//! used for intermediate values (remainders, Sturm chains) that need not satisfy
//! the invariants of [`IntPolynomial`].

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{CfError, Result};

/// A primitive, square-free integer polynomial of degree at least one with a
/// positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Normalizes `coeffs` (highest degree first) to a primitive polynomial
    /// with positive leading coefficient and checks square-freeness.
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        let coeffs = primitive_part(&trim(coeffs));
        if coeffs.len() < 2 {
            return Err(CfError::domain("polynomial must be nonconstant"));
        }
        if !is_square_free(&coeffs) {
            return Err(CfError::domain("polynomial is not square-free"));
        }
        Ok(IntPolynomial { coeffs })
    }

    /// Builds `x^degree - radicand`.
    pub fn pure_power(degree: usize, radicand: &BigInt) -> Result<Self> {
        if degree == 0 {
            return Err(CfError::domain("degree must be positive"));
        }
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[0] = BigInt::one();
        coeffs[degree] = -radicand.clone();
        IntPolynomial::new(coeffs)
    }

    /// Trusted constructor for coefficient vectors already known to satisfy
    /// the invariants (images of valid polynomials under unimodular maps).
    pub(crate) fn from_normalized(coeffs: Vec<BigInt>) -> Self {
        debug_assert!(coeffs.len() >= 2 && coeffs[0].is_positive());
        IntPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &BigInt {
        &self.coeffs[0]
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        eval_int(&self.coeffs, x)
    }

    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        sign_at(&self.coeffs, x)
    }

    pub fn sign_at_int(&self, x: &BigInt) -> Ordering {
        self.eval_int(x).sign_ordering()
    }

    /// Number of distinct real roots in the open interval `(lo, hi)`; neither
    /// endpoint may be a root.
    pub fn count_roots(&self, lo: &BigRational, hi: &BigRational) -> usize {
        let chain = sturm_chain(&self.coeffs);
        let a = sign_variations(&chain, lo);
        let b = sign_variations(&chain, hi);
        a.saturating_sub(b)
    }

    /// Strict integer upper bound on the absolute value of every complex root.
    pub fn root_bound(&self) -> BigInt {
        root_bound(&self.coeffs)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let power = d - i;
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = abs.is_one() && power > 0;
            if !unit {
                write!(f, "{abs}")?;
            }
            match power {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{power}")?,
            }
        }
        Ok(())
    }
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

/// Drops leading zeros; the zero polynomial is the empty vector.
pub(crate) fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let lead = v.iter().take_while(|c| c.is_zero()).count();
    v.drain(..lead);
    v
}

pub(crate) fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Divides out the content and makes the leading coefficient positive.
pub(crate) fn primitive_part(v: &[BigInt]) -> Vec<BigInt> {
    if v.is_empty() {
        return Vec::new();
    }
    let mut g = content(v);
    if v[0].is_negative() {
        g = -g;
    }
    v.iter().map(|c| c / &g).collect()
}

pub(crate) fn derivative(v: &[BigInt]) -> Vec<BigInt> {
    let d = v.len().saturating_sub(1);
    v.iter()
        .take(d)
        .enumerate()
        .map(|(i, c)| c * BigInt::from(d - i))
        .collect()
}

pub(crate) fn eval_int(v: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in v {
        acc = acc * x + c;
    }
    acc
}

/// Sign of `P(num/den)` computed via the homogenized form with `den > 0`.
pub(crate) fn sign_at(v: &[BigInt], x: &BigRational) -> Ordering {
    let (num, den) = (x.numer(), x.denom());
    if den.is_one() {
        return eval_int(v, num).sign_ordering();
    }
    let mut acc = BigInt::zero();
    let mut den_pow = BigInt::one();
    for (i, c) in v.iter().enumerate() {
        if i == 0 {
            acc = c.clone();
        } else {
            den_pow *= den;
            acc = acc * num + c * &den_pow;
        }
    }
    acc.sign_ordering()
}

/// Coefficients of `P(x + shift)`.
pub(crate) fn taylor_shift(v: &[BigInt], shift: &BigInt) -> Vec<BigInt> {
    let mut c = v.to_vec();
    if shift.is_zero() {
        return c;
    }
    let d = c.len().saturating_sub(1);
    for i in 0..d {
        for j in 1..=(d - i) {
            let add = shift * &c[j - 1];
            c[j] += add;
        }
    }
    c
}

/// Coefficients of `x^d P(scale / x)`.
pub(crate) fn reversed_scaled(v: &[BigInt], scale: &BigInt) -> Vec<BigInt> {
    // sum a_i x^i  ->  sum a_i scale^i x^(d - i); a_i sits at v[d - i].
    let d = v.len() - 1;
    let mut pow = BigInt::one();
    let mut out = Vec::with_capacity(d + 1);
    for i in 0..=d {
        out.push(&v[d - i] * &pow);
        pow *= scale;
    }
    out
}

/// Pseudo-remainder of `a` by `b` with multiplier `|lc(b)|^(deg a - deg b + 1)`,
/// so the sign of the remainder matches the true remainder's sign.
pub(crate) fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (_, r) = pseudo_divmod(a, b);
    r
}

/// Pseudo-division with positive multiplier: `|lc(b)|^k * a = q * b + r`.
pub(crate) fn pseudo_divmod(a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = a.to_vec();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lb = b[0].clone();
    let lb_abs = lb.abs();
    let sign = if lb.is_negative() { -BigInt::one() } else { BigInt::one() };
    let qlen = r.len() - b.len() + 1;
    let mut q = vec![BigInt::zero(); qlen];
    for i in 0..qlen {
        let lead = r[i].clone();
        for c in q.iter_mut() {
            *c *= &lb_abs;
        }
        for c in r.iter_mut() {
            *c *= &lb_abs;
        }
        if lead.is_zero() {
            continue;
        }
        // subtract (lead * sign) * x^(..) * b
        let factor = &lead * &sign;
        q[i] += &factor;
        for (j, bc) in b.iter().enumerate() {
            let sub = &factor * bc;
            r[i + j] -= sub;
        }
    }
    let rem = trim(r.split_off(qlen));
    (q, rem)
}

/// Primitive gcd with positive leading coefficient.
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut x = primitive_part(&trim(a.to_vec()));
    let mut y = primitive_part(&trim(b.to_vec()));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = primitive_part(&pseudo_rem(&x, &y));
        x = y;
        y = r;
    }
    x
}

/// Exact quotient `a / b` up to a positive constant, returned primitive.
pub(crate) fn exact_quotient(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (q, r) = pseudo_divmod(a, b);
    debug_assert!(r.is_empty(), "exact_quotient with nonzero remainder");
    primitive_part(&trim(q))
}

pub(crate) fn is_square_free(v: &[BigInt]) -> bool {
    gcd(v, &derivative(v)).len() <= 1
}

/// Sturm chain `P, P', -rem(P, P'), ...` with positive pseudo-remainder
/// multipliers, each member made primitive.
pub(crate) fn sturm_chain(v: &[BigInt]) -> Vec<Vec<BigInt>> {
    let mut chain = vec![v.to_vec(), derivative(v)];
    loop {
        let n = chain.len();
        if chain[n - 1].is_empty() {
            chain.pop();
            break;
        }
        let r = pseudo_rem(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        let mut g = content(&r);
        g = -g;
        chain.push(r.iter().map(|c| c / &g).collect());
    }
    chain
}

pub(crate) fn sign_variations(chain: &[Vec<BigInt>], x: &BigRational) -> usize {
    let mut prev = Ordering::Equal;
    let mut count = 0;
    for p in chain {
        let s = sign_at(p, x);
        if s == Ordering::Equal {
            continue;
        }
        if prev != Ordering::Equal && s != prev {
            count += 1;
        }
        prev = s;
    }
    count
}

pub(crate) fn root_bound(v: &[BigInt]) -> BigInt {
    let lead = v[0].abs();
    let max = v[1..].iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero);
    let (q, r) = max.div_rem(&lead);
    let ceil = if r.is_zero() { q } else { q + 1 };
    ceil + 1
}

/// Isolating intervals `(lo, hi)` with non-root rational endpoints for every
/// real root of a square-free polynomial.
pub(crate) fn isolate_real_roots(v: &[BigInt]) -> Vec<(BigRational, BigRational)> {
    let chain = sturm_chain(v);
    let bound = BigRational::from_integer(root_bound(v));
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        let count = sign_variations(&chain, &lo) - sign_variations(&chain, &hi);
        match count {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = non_root_split(v, &lo, &hi);
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// A point strictly inside `(lo, hi)` that is not a root of `v`.
fn non_root_split(v: &[BigInt], lo: &BigRational, hi: &BigRational) -> BigRational {
    let mut k = 2u32;
    loop {
        let mid = lo + (hi - lo) / BigRational::from_integer(BigInt::from(k));
        if sign_at(v, &mid) != Ordering::Equal {
            return mid;
        }
        k += 1;
    }
}

/// The fraction with the smallest denominator in the closed interval `[lo, hi]`.
pub(crate) fn simplest_between(lo: &BigRational, hi: &BigRational) -> BigRational {
    debug_assert!(lo <= hi);
    let zero = BigRational::zero();
    if *lo <= zero && zero <= *hi {
        return zero;
    }
    if *hi < zero {
        return -simplest_between(&-hi, &-lo);
    }
    let fl = lo.floor();
    if fl == *lo {
        return fl;
    }
    let next = &fl + BigRational::one();
    if next <= *hi {
        return next;
    }
    let inner = simplest_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

/// Returns the rational root inside the isolating interval `(lo, hi)` if the
/// unique root there is rational.
pub(crate) fn rational_root_in(
    v: &[BigInt],
    lo: &BigRational,
    hi: &BigRational,
) -> Option<BigRational> {
    // A rational root a/b in lowest terms has b | lc, so two distinct candidates
    // are at least 1/lc^2 apart.
    let lc = v[0].abs();
    let limit = BigRational::new(BigInt::one(), &lc * &lc);
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    let lo_sign = sign_at(v, &lo);
    let two = BigRational::from_integer(BigInt::from(2));
    while &hi - &lo >= limit {
        let mid = (&lo + &hi) / &two;
        let s = sign_at(v, &mid);
        if s == Ordering::Equal {
            return Some(mid);
        }
        if s == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let candidate = simplest_between(&lo, &hi);
    (sign_at(v, &candidate) == Ordering::Equal).then_some(candidate)
}

/// Divides out every rational linear factor of a square-free polynomial.
/// Returns the remaining primitive factor (possibly constant) and the roots.
pub(crate) fn strip_rational_roots(v: &[BigInt]) -> (Vec<BigInt>, Vec<BigRational>) {
    let mut rest = primitive_part(v);
    let mut roots = Vec::new();
    for (lo, hi) in isolate_real_roots(v) {
        if let Some(root) = rational_root_in(v, &lo, &hi) {
            let linear = vec![root.denom().clone(), -root.numer().clone()];
            rest = exact_quotient(&rest, &linear);
            roots.push(root);
        }
    }
    (rest, roots)
}
