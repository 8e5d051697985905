//! Exact rational arithmetic with a negative-infinity sentinel, and
//! best-rational-approximation with bounded denominator.
//!
//! Every value is kept in lowest terms with a positive denominator, and all
//! arithmetic is checked: an overflow aborts instead of wrapping. `i128`
//! components give enough headroom for the scaled flow capacities used by
//! the rest of the crate (numerators up to `2 * n^3 * scale` for
//! `n <= 1e5`).

use crate::{Error, Result};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

fn checked(v: Option<i128>) -> i128 {
    v.expect("rational arithmetic overflow (i128 exceeded)")
}

/// An exact fraction in lowest terms with a positive denominator.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i128,
    den: i128,
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    /// Builds `num/den` reduced to lowest terms. Panics if `den == 0`.
    pub fn new(num: i128, den: i128) -> Rational {
        assert!(den != 0, "rational with zero denominator");
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd(num, den);
        Rational {
            num: sign * (num / g),
            den: (den / g).abs(),
        }
    }

    pub fn from_integer(n: i128) -> Rational {
        Rational { num: n, den: 1 }
    }

    pub fn numerator(&self) -> i128 {
        self.num
    }

    pub fn denominator(&self) -> i128 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_negative(&self) -> bool {
        self.num < 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    /// Largest integer `<= self`.
    pub fn floor(&self) -> i128 {
        self.num.div_euclid(self.den)
    }

    /// Smallest integer `>= self`.
    pub fn ceil(&self) -> i128 {
        checked(self.num.checked_neg()).div_euclid(self.den).wrapping_neg()
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Rational {
        assert!(self.num != 0, "reciprocal of zero");
        Rational::new(self.den, self.num)
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        let num = checked(
            checked(self.num.checked_mul(rhs.den)).checked_add(checked(rhs.num.checked_mul(self.den))),
        );
        Rational::new(num, checked(self.den.checked_mul(rhs.den)))
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        self + (-rhs)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        // Cross-reduce before multiplying to keep intermediates small.
        let g1 = gcd(self.num, rhs.den).max(1);
        let g2 = gcd(rhs.num, self.den).max(1);
        let num = checked((self.num / g1).checked_mul(rhs.num / g2));
        let den = checked((self.den / g2).checked_mul(rhs.den / g1));
        Rational::new(num, den)
    }
}

impl Div for Rational {
    type Output = Rational;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Rational) -> Rational {
        self * rhs.recip()
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational {
            num: checked(self.num.checked_neg()),
            den: self.den,
        }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Rational) -> Ordering {
        let lhs = checked(self.num.checked_mul(other.den));
        let rhs = checked(other.num.checked_mul(self.den));
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Rational) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `"p/q"` or a bare integer `"p"`.
    fn from_str(s: &str) -> Result<Rational> {
        let s = s.trim();
        let bad = |_| Error::ContractViolation(format!("cannot parse rational from {s:?}"));
        match s.split_once('/') {
            Some((p, q)) => {
                let num: i128 = p.trim().parse().map_err(bad)?;
                let den: i128 = q.trim().parse().map_err(bad)?;
                if den <= 0 {
                    return Err(Error::ContractViolation(format!(
                        "denominator must be positive in {s:?}"
                    )));
                }
                Ok(Rational::new(num, den))
            }
            None => {
                let num: i128 = s.parse().map_err(bad)?;
                Ok(Rational::from_integer(num))
            }
        }
    }
}

/// A maximum-average-degree value: `-inf` for the empty graph, otherwise an
/// exact rational. Negative infinity compares strictly below every rational.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub enum MadValue {
    NegInfinity,
    Finite(Rational),
}

impl MadValue {
    pub fn finite(r: Rational) -> MadValue {
        MadValue::Finite(r)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            MadValue::NegInfinity => None,
            MadValue::Finite(r) => Some(*r),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, MadValue::Finite(_))
    }

    /// `self - k`, with `-inf` absorbing the subtraction.
    pub fn minus_integer(&self, k: i128) -> MadValue {
        match self {
            MadValue::NegInfinity => MadValue::NegInfinity,
            MadValue::Finite(r) => MadValue::Finite(*r - Rational::from_integer(k)),
        }
    }

    /// Floor of the value; `None` for `-inf`.
    pub fn floor(&self) -> Option<i128> {
        self.as_rational().map(|r| r.floor())
    }
}

impl Ord for MadValue {
    fn cmp(&self, other: &MadValue) -> Ordering {
        match (self, other) {
            (MadValue::NegInfinity, MadValue::NegInfinity) => Ordering::Equal,
            (MadValue::NegInfinity, MadValue::Finite(_)) => Ordering::Less,
            (MadValue::Finite(_), MadValue::NegInfinity) => Ordering::Greater,
            (MadValue::Finite(a), MadValue::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for MadValue {
    fn partial_cmp(&self, other: &MadValue) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MadValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MadValue::NegInfinity => write!(f, "-inf"),
            MadValue::Finite(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Debug for MadValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for MadValue {
    type Err = Error;
    fn from_str(s: &str) -> Result<MadValue> {
        if s.trim() == "-inf" {
            Ok(MadValue::NegInfinity)
        } else {
            Ok(MadValue::Finite(s.parse()?))
        }
    }
}

/// Smallest-denominator rational in the interval from `lo` to `hi`, with
/// each endpoint included or excluded per the `*_open` flags. `hi == None`
/// means unbounded above. Returns `None` for an empty interval. Among
/// integer ties the smallest value wins.
///
/// This is the classic continued-fraction descent of the Stern-Brocot
/// tree: take the smallest integer in the interval if there is one,
/// otherwise recurse on the reciprocal of the fractional parts (which
/// swaps and flips the bounds).
fn simplest_in_interval(
    lo: Rational,
    lo_open: bool,
    hi: Option<Rational>,
    hi_open: bool,
) -> Option<Rational> {
    if let Some(h) = hi {
        match lo.cmp(&h) {
            Ordering::Greater => return None,
            Ordering::Equal => {
                return if lo_open || hi_open { None } else { Some(lo) };
            }
            Ordering::Less => {}
        }
    }

    let candidate = if lo_open { lo.floor() + 1 } else { lo.ceil() };
    let candidate_ok = match hi {
        None => true,
        Some(h) => {
            let c = Rational::from_integer(candidate);
            c < h || (c == h && !hi_open)
        }
    };
    if candidate_ok {
        return Some(Rational::from_integer(candidate));
    }

    // No integer inside, so the interval lies strictly between k and k+1.
    let h = hi.expect("bounded interval in fractional branch");
    let k = Rational::from_integer(lo.floor());
    let lo_frac = lo - k;
    let hi_frac = h - k;
    let inner = simplest_in_interval(
        hi_frac.recip(),
        hi_open,
        if lo_frac.is_zero() { None } else { Some(lo_frac.recip()) },
        lo_open,
    )?;
    Some(k + inner.recip())
}

/// Returns the unique rational with denominator `<= max_den` in the
/// half-open interval `(lo, hi]`, found by Stern-Brocot descent.
///
/// The caller guarantees at most one such rational exists (e.g. by keeping
/// `hi - lo < 1/max_den^2`); the error reports a contract violation when
/// the interval holds none or more than one.
pub fn snap_to_bounded_denominator(lo: Rational, hi: Rational, max_den: i128) -> Result<Rational> {
    if max_den < 1 {
        return Err(Error::ContractViolation(format!(
            "max denominator must be >= 1, got {max_den}"
        )));
    }
    if lo >= hi {
        return Err(Error::ContractViolation(format!(
            "empty snap interval ({lo}, {hi}]"
        )));
    }
    let found = simplest_in_interval(lo, true, Some(hi), false)
        .expect("nonempty interval contains a rational");
    if found.denominator() > max_den {
        return Err(Error::ContractViolation(format!(
            "no rational with denominator <= {max_den} in ({lo}, {hi}]; simplest is {found}"
        )));
    }
    // The minimal-denominator rational of any subinterval not containing
    // `found` would be a second candidate; check both sides.
    let left = simplest_in_interval(lo, true, Some(found), true);
    if let Some(l) = left {
        if l.denominator() <= max_den {
            return Err(Error::ContractViolation(format!(
                "two candidates with denominator <= {max_den} in ({lo}, {hi}]: {l} and {found}"
            )));
        }
    }
    if found < hi {
        let right = simplest_in_interval(found, true, Some(hi), false);
        if let Some(r) = right {
            if r.denominator() <= max_den {
                return Err(Error::ContractViolation(format!(
                    "two candidates with denominator <= {max_den} in ({lo}, {hi}]: {found} and {r}"
                )));
            }
        }
    }
    Ok(found)
}
