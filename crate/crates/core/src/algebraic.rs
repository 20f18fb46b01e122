//! Exact real algebraic numbers: a reduced rational, or the unique root of an
//! integer polynomial inside a rational isolating interval.
//!
//! Root values carry a polynomial with no rational roots, so they are always
//! irrational. That makes [`AlgebraicNumber::floor`] total and guarantees that
//! a bisection midpoint is never a root.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{CfError, Result};
use crate::poly::{self, IntPolynomial};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RationalInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Result<Self> {
        if lo >= hi {
            return Err(CfError::domain(format!("empty interval ({lo}, {hi})")));
        }
        Ok(RationalInterval { lo, hi })
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains_interval(&self, other: &RationalInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

/// An irrational root of `poly` isolated by `interval`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RealRoot {
    poly: IntPolynomial,
    interval: RationalInterval,
}

impl RealRoot {
    pub fn poly(&self) -> &IntPolynomial {
        &self.poly
    }

    pub fn interval(&self) -> &RationalInterval {
        &self.interval
    }

    fn lo_sign(&self) -> Ordering {
        self.poly.sign_at(&self.interval.lo)
    }

    /// Bisects until the interval width is at most `width`.
    fn bisect_to(&self, width: &BigRational) -> RealRoot {
        let two = BigRational::from_integer(BigInt::from(2));
        let lo_sign = self.lo_sign();
        let (mut lo, mut hi) = (self.interval.lo.clone(), self.interval.hi.clone());
        while &hi - &lo > *width {
            let mid = (&lo + &hi) / &two;
            if self.poly.sign_at(&mid) == lo_sign {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        RealRoot {
            poly: self.poly.clone(),
            interval: RationalInterval { lo, hi },
        }
    }

    /// Floor of the root and the interval narrowed to lie within
    /// `[floor, floor + 1]`. Searches integer points only: a galloping probe
    /// upward from `floor(lo)` followed by integer bisection.
    fn floor_bracket(&self) -> (BigInt, RealRoot) {
        let lo = &self.interval.lo;
        let hi = &self.interval.hi;
        let lo_sign = self.lo_sign();
        let mut below = lo.floor().to_integer();
        if *hi <= BigRational::from_integer(&below + 1u32) {
            return (below, self.clone());
        }
        let hi_ceil = hi.ceil().to_integer();
        // Integers strictly inside (lo, hi) are never roots; the root exceeds j
        // exactly when P(j) has the sign of P(lo).
        let mut above = hi_ceil.clone();
        let mut step = BigInt::one();
        loop {
            let probe = &below + &step;
            if probe >= hi_ceil {
                break;
            }
            if self.poly.sign_at_int(&probe) == lo_sign {
                below = probe;
                step <<= 1;
            } else {
                above = probe;
                break;
            }
        }
        while &above - &below > BigInt::one() {
            let mid: BigInt = (&below + &above) >> 1;
            if self.poly.sign_at_int(&mid) == lo_sign {
                below = mid;
            } else {
                above = mid;
            }
        }
        let floor_q = BigRational::from_integer(below.clone());
        let next_q = BigRational::from_integer(&below + 1u32);
        let interval = RationalInterval {
            lo: if *lo > floor_q { lo.clone() } else { floor_q },
            hi: if *hi < next_q { hi.clone() } else { next_q },
        };
        (
            below,
            RealRoot {
                poly: self.poly.clone(),
                interval,
            },
        )
    }

    fn compare(&self, r: &BigRational) -> Ordering {
        if *r <= self.interval.lo {
            return Ordering::Greater;
        }
        if *r >= self.interval.hi {
            return Ordering::Less;
        }
        let s = self.poly.sign_at(r);
        if s == Ordering::Equal {
            // unreachable for valid roots: rational roots are stripped
            return Ordering::Equal;
        }
        if s == self.lo_sign() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraicNumber {
    Rational(BigRational),
    Root(RealRoot),
}

impl AlgebraicNumber {
    /// The reduced rational `num / den`.
    pub fn rational(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(CfError::domain("zero denominator"));
        }
        Ok(AlgebraicNumber::Rational(BigRational::new(num.into(), den)))
    }

    pub fn integer(value: impl Into<BigInt>) -> Self {
        AlgebraicNumber::Rational(BigRational::from_integer(value.into()))
    }

    /// The unique root of `coeffs` (highest degree first) in `(lo, hi)`.
    ///
    /// The polynomial is normalized to be primitive with a positive leading
    /// coefficient and must be square-free. A rational root in the interval
    /// yields the `Rational` variant; otherwise all rational linear factors are
    /// divided out and the `Root` variant is returned.
    pub fn root(coeffs: Vec<BigInt>, lo: BigRational, hi: BigRational) -> Result<Self> {
        let interval = RationalInterval::new(lo, hi)?;
        let poly = IntPolynomial::new(coeffs)?;
        if poly.sign_at(&interval.lo) == Ordering::Equal
            || poly.sign_at(&interval.hi) == Ordering::Equal
        {
            return Err(CfError::domain(format!(
                "interval endpoint of {interval} is a root of {poly}"
            )));
        }
        let count = poly.count_roots(&interval.lo, &interval.hi);
        if count != 1 {
            return Err(CfError::domain(format!(
                "{poly} has {count} roots in {interval}, expected exactly one"
            )));
        }
        if let Some(r) = poly::rational_root_in(poly.coeffs(), &interval.lo, &interval.hi) {
            return Ok(AlgebraicNumber::Rational(r));
        }
        let (rest, _) = poly::strip_rational_roots(poly.coeffs());
        Ok(AlgebraicNumber::Root(RealRoot {
            poly: IntPolynomial::from_normalized(rest),
            interval,
        }))
    }

    /// The positive real `degree`-th root of `radicand`, isolated in
    /// `(floor, floor + 1)`; perfect powers come back as integers.
    pub fn nth_root(radicand: &BigInt, degree: u32) -> Result<Self> {
        if degree == 0 {
            return Err(CfError::domain("root degree must be positive"));
        }
        if radicand.is_negative() {
            return Err(CfError::domain(format!("negative radicand {radicand}")));
        }
        let base = radicand.nth_root(degree);
        if num_traits::pow(base.clone(), degree as usize) == *radicand {
            return Ok(AlgebraicNumber::integer(base));
        }
        let poly = IntPolynomial::pure_power(degree as usize, radicand)?;
        let lo = BigRational::from_integer(base.clone());
        let hi = BigRational::from_integer(base + 1u32);
        Ok(AlgebraicNumber::Root(RealRoot {
            poly,
            interval: RationalInterval { lo, hi },
        }))
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, AlgebraicNumber::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            AlgebraicNumber::Rational(r) => Some(r),
            AlgebraicNumber::Root(_) => None,
        }
    }

    pub fn as_root(&self) -> Option<&RealRoot> {
        match self {
            AlgebraicNumber::Rational(_) => None,
            AlgebraicNumber::Root(root) => Some(root),
        }
    }

    /// Narrows the isolating interval by bisection until its width is at most
    /// `width`. Rationals are returned unchanged.
    pub fn refine(&self, width: &BigRational) -> Result<Self> {
        if !width.is_positive() {
            return Err(CfError::domain("refinement width must be positive"));
        }
        Ok(match self {
            AlgebraicNumber::Rational(_) => self.clone(),
            AlgebraicNumber::Root(root) => AlgebraicNumber::Root(root.bisect_to(width)),
        })
    }

    /// Exact floor, rounding toward negative infinity.
    pub fn floor(&self) -> BigInt {
        self.floor_refined().0
    }

    /// The floor together with the same number, its interval narrowed to the
    /// unit cell `[floor, floor + 1]`.
    pub fn floor_refined(&self) -> (BigInt, AlgebraicNumber) {
        match self {
            AlgebraicNumber::Rational(r) => (r.floor().to_integer(), self.clone()),
            AlgebraicNumber::Root(root) => {
                let (b, narrowed) = root.floor_bracket();
                (b, AlgebraicNumber::Root(narrowed))
            }
        }
    }

    /// Exact sign of `self - r`.
    pub fn compare(&self, r: &BigRational) -> Ordering {
        match self {
            AlgebraicNumber::Rational(v) => v.cmp(r),
            AlgebraicNumber::Root(root) => root.compare(r),
        }
    }

    pub fn compare_int(&self, r: &BigInt) -> Ordering {
        self.compare(&BigRational::from_integer(r.clone()))
    }

    /// Exact sign of `c0 + c1 * self`.
    pub fn sign_of_linear(&self, c0: &BigInt, c1: &BigInt) -> Ordering {
        if c1.is_zero() {
            return c0.cmp(&BigInt::zero());
        }
        let pivot = BigRational::new(-c0.clone(), c1.clone());
        let s = self.compare(&pivot);
        if c1.is_positive() {
            s
        } else {
            s.reverse()
        }
    }

    /// `1 / (self - b)` where `b` is the floor of `self`.
    ///
    /// The new polynomial is `±y^d P(b + 1/y)`; the new interval is the image of
    /// the old one clipped to `(b, b + 1)`.
    pub fn moebius_step(&self, b: &BigInt) -> Result<Self> {
        let root = match self {
            AlgebraicNumber::Rational(_) => {
                return Err(CfError::domain(
                    "moebius_step on a rational; use the Euclidean branch",
                ))
            }
            AlgebraicNumber::Root(root) => root,
        };
        let b_q = BigRational::from_integer(b.clone());
        let b1_q = BigRational::from_integer(b + 1u32);
        let lo = std::cmp::max(root.interval.lo.clone(), b_q.clone());
        let hi = std::cmp::min(root.interval.hi.clone(), b1_q);
        if lo >= hi || root.poly.sign_at(&lo) == root.poly.sign_at(&hi) {
            return Err(CfError::domain(format!("{b} is not the floor of {self}")));
        }
        let mut coeffs = poly::reversed_scaled(
            &poly::taylor_shift(root.poly.coeffs(), b),
            &BigInt::one(),
        );
        if coeffs[0].is_negative() {
            for c in coeffs.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        let poly = IntPolynomial::from_normalized(coeffs);
        let new_lo = (&hi - &b_q).recip();
        let new_hi = if lo > b_q {
            (&lo - &b_q).recip()
        } else {
            BigRational::from_integer(poly.root_bound())
        };
        Ok(AlgebraicNumber::Root(RealRoot {
            poly,
            interval: RationalInterval {
                lo: new_lo,
                hi: new_hi,
            },
        }))
    }

    /// `m / self` for a positive number and `m >= 1`.
    pub fn reciprocal_scale(&self, m: &BigInt) -> Result<Self> {
        if *m < BigInt::one() {
            return Err(CfError::domain(format!("scale {m} must be at least 1")));
        }
        match self {
            AlgebraicNumber::Rational(r) => {
                if !r.is_positive() {
                    return Err(CfError::domain(format!("{r} is not positive")));
                }
                Ok(AlgebraicNumber::Rational(
                    BigRational::from_integer(m.clone()) / r,
                ))
            }
            AlgebraicNumber::Root(root) => {
                let zero = BigRational::zero();
                if root.compare(&zero) != Ordering::Greater {
                    return Err(CfError::domain(format!("{self} is not positive")));
                }
                // 0 is not a root, so clipping at 0 keeps the interval isolating
                let lo = std::cmp::max(root.interval.lo.clone(), zero);
                let hi = &root.interval.hi;
                let coeffs = poly::primitive_part(&poly::reversed_scaled(root.poly.coeffs(), m));
                let poly = IntPolynomial::from_normalized(coeffs);
                let m_q = BigRational::from_integer(m.clone());
                let new_lo = &m_q / hi;
                let new_hi = if lo.is_positive() {
                    &m_q / &lo
                } else {
                    BigRational::from_integer(poly.root_bound())
                };
                Ok(AlgebraicNumber::Root(RealRoot {
                    poly,
                    interval: RationalInterval {
                        lo: new_lo,
                        hi: new_hi,
                    },
                }))
            }
        }
    }

    /// Whether both values denote the same real number.
    pub fn same_value(&self, other: &AlgebraicNumber) -> bool {
        match (self, other) {
            (AlgebraicNumber::Rational(a), AlgebraicNumber::Rational(b)) => a == b,
            (AlgebraicNumber::Root(a), AlgebraicNumber::Root(b)) => {
                let g = poly::gcd(a.poly.coeffs(), b.poly.coeffs());
                if g.len() < 2 {
                    return false;
                }
                let lo = std::cmp::max(&a.interval.lo, &b.interval.lo);
                let hi = std::cmp::min(&a.interval.hi, &b.interval.hi);
                if lo >= hi {
                    return false;
                }
                // endpoints are endpoints of a or b, hence not roots of g
                let chain = poly::sturm_chain(&g);
                poly::sign_variations(&chain, lo) > poly::sign_variations(&chain, hi)
            }
            _ => false,
        }
    }

    /// A closed rational interval of width at most `width` containing the value.
    pub fn enclosure(&self, width: &BigRational) -> (BigRational, BigRational) {
        match self {
            AlgebraicNumber::Rational(r) => (r.clone(), r.clone()),
            AlgebraicNumber::Root(root) => {
                let narrowed = root.bisect_to(width);
                (narrowed.interval.lo, narrowed.interval.hi)
            }
        }
    }

    /// Sturm-sequence root count of the isolating interval; 1 for every valid
    /// `Root` and for rationals.
    pub fn isolation_count(&self) -> usize {
        match self {
            AlgebraicNumber::Rational(_) => 1,
            AlgebraicNumber::Root(root) => root.poly.count_roots(&root.interval.lo, &root.interval.hi),
        }
    }

    /// Lossy conversion for display and statistics.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let r = match self {
            AlgebraicNumber::Rational(r) => r.clone(),
            AlgebraicNumber::Root(root) => {
                let w = BigRational::new(BigInt::one(), BigInt::one() << 60u32);
                let n = root.bisect_to(&w);
                (n.interval.lo + n.interval.hi) / BigRational::from_integer(BigInt::from(2))
            }
        };
        r.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<BigRational> for AlgebraicNumber {
    fn from(r: BigRational) -> Self {
        AlgebraicNumber::Rational(r)
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraicNumber::Rational(r) => write!(f, "{r}"),
            AlgebraicNumber::Root(root) => {
                write!(f, "root of {} in {}", root.poly, root.interval)
            }
        }
    }
}

/// Exact `gcd`-reduced fraction `num / den` with positive denominator as a pair.
pub(crate) fn reduce_pair(num: &BigInt, den: &BigInt) -> (BigInt, BigInt) {
    let g = num.gcd(den);
    let (mut n, mut d) = (num / &g, den / &g);
    if d.is_negative() {
        n = -n;
        d = -d;
    }
    (n, d)
}
