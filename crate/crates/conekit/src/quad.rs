//! Exact arithmetic with numbers of the form `(p + q*sqrt(d)) / m`.
//!
//! Deformation intervals have an irrational upper endpoint, and every
//! decision against it must be exact. A [`QuadraticRoot`] stores the four
//! rational components of `(p + q*sqrt(d)) / m` and compares itself to
//! rationals by sign analysis and squaring — no floating point is involved
//! anywhere, including in the initial bounds (integer square roots take that
//! role).

use std::cmp::Ordering;
use std::fmt;


use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ratio::{format_rational, Rational};

/// The exact value `(p + q*sqrt(d)) / m` with `d >= 0` and `m > 0`.
///
/// Construction normalizes the sign of `m` (flipping `p` and `q` if needed)
/// and collapses `q = 0` and `d = 0` into one another, so equal field values
/// mean equal representations. Two descriptors with different fields can
/// still denote the same number (e.g. when `d` is a perfect square); use
/// [`QuadraticRoot::to_rational`] or comparisons to decide value questions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticRoot {
    p: Rational,
    q: Rational,
    d: Rational,
    m: Rational,
}

impl QuadraticRoot {
    /// Builds `(p + q*sqrt(d)) / m`, requiring `d >= 0` and `m != 0`.
    pub fn new(p: Rational, q: Rational, d: Rational, m: Rational) -> Result<Self> {
        if m.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if d.is_negative() {
            return Err(Error::NegativeRadicand {
                radicand: format_rational(&d),
            });
        }
        let (p, q, m) = if m.is_negative() {
            (-p, -q, -m)
        } else {
            (p, q, m)
        };
        let (q, d) = if q.is_zero() || d.is_zero() {
            (Rational::zero(), Rational::zero())
        } else {
            (q, d)
        };
        Ok(QuadraticRoot { p, q, d, m })
    }

    /// The exact rational `r`, wrapped as a descriptor.
    pub fn from_rational(r: Rational) -> Self {
        QuadraticRoot {
            p: r,
            q: Rational::zero(),
            d: Rational::zero(),
            m: Rational::one(),
        }
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    /// The radicand.
    pub fn d(&self) -> &Rational {
        &self.d
    }

    pub fn m(&self) -> &Rational {
        &self.m
    }

    /// If `sqrt(d)` is rational, the exact rational value of the whole
    /// expression; `None` otherwise.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.q.is_zero() {
            return Some(&self.p / &self.m);
        }
        // sqrt(dn/dd) = sqrt(dn*dd) / dd, rational iff dn*dd is a perfect
        // square (dn/dd is already in lowest terms).
        let t = self.d.numer() * self.d.denom();
        let s = t.sqrt();
        if &s * &s != t {
            return None;
        }
        let root = Rational::new(s, self.d.denom().clone());
        Some((&self.p + &self.q * root) / &self.m)
    }

    /// Exact comparison of the descriptor's value with a rational.
    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        // Compare q*sqrt(d) against s = r*m - p; both sides' signs decide
        // first, then squaring decides the rest. d > 0 strictly whenever
        // q != 0 (construction collapses the degenerate cases).
        let s = r * &self.m - &self.p;
        if self.q.is_zero() {
            return Rational::zero().cmp(&s);
        }
        let lhs_sq = &self.q * &self.q * &self.d;
        let rhs_sq = &s * &s;
        if self.q.is_positive() {
            if !s.is_positive() {
                return Ordering::Greater;
            }
            lhs_sq.cmp(&rhs_sq)
        } else {
            if !s.is_negative() {
                return Ordering::Less;
            }
            // Both sides negative: the larger square is the smaller number.
            rhs_sq.cmp(&lhs_sq)
        }
    }

    /// True when the descriptor's value is strictly greater than `r`.
    pub fn is_greater_than(&self, r: &Rational) -> bool {
        self.cmp_rational(r) == Ordering::Greater
    }

    /// True when the descriptor's value is strictly less than `r`.
    pub fn is_less_than(&self, r: &Rational) -> bool {
        self.cmp_rational(r) == Ordering::Less
    }

    /// Rational bounds `lo <= value <= hi` with `hi - lo <= width`; the
    /// bounds are strict whenever the value is irrational (and collapse to
    /// the exact value otherwise). Obtained from an integer-square-root
    /// bracket refined by exact bisection.
    pub fn bracket(&self, width: &Rational) -> (Rational, Rational) {
        assert!(width.is_positive(), "bracket width must be positive");
        if let Some(v) = self.to_rational() {
            return (v.clone(), v);
        }
        let t = self.d.numer() * self.d.denom();
        let s = t.sqrt(); // floor, and t is not a perfect square here
        let lo_root = Rational::new(s.clone(), self.d.denom().clone());
        let hi_root = Rational::new(s + 1, self.d.denom().clone());
        let (mut lo, mut hi) = if self.q.is_positive() {
            (
                (&self.p + &self.q * lo_root) / &self.m,
                (&self.p + &self.q * hi_root) / &self.m,
            )
        } else {
            (
                (&self.p + &self.q * hi_root) / &self.m,
                (&self.p + &self.q * lo_root) / &self.m,
            )
        };
        while &hi - &lo > *width {
            let mid = (&lo + &hi) / crate::ratio::rat(2);
            match self.cmp_rational(&mid) {
                Ordering::Greater => lo = mid,
                Ordering::Less => hi = mid,
                Ordering::Equal => unreachable!("irrational value equals a rational"),
            }
        }
        debug_assert!(self.is_greater_than(&lo) && self.is_less_than(&hi));
        (lo, hi)
    }
}

impl fmt::Display for QuadraticRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let core = if self.q.is_zero() {
            format_rational(&self.p)
        } else {
            let root = format!("sqrt({})", format_rational(&self.d));
            let scaled = if self.q.is_one() {
                root
            } else if (-&self.q).is_one() {
                format!("-{root}")
            } else {
                format!("{}*{}", format_rational(&self.q), root)
            };
            if self.p.is_zero() {
                scaled
            } else if let Some(rest) = scaled.strip_prefix('-') {
                format!("{} - {}", format_rational(&self.p), rest)
            } else {
                format!("{} + {}", format_rational(&self.p), scaled)
            }
        };
        if self.m.is_one() {
            write!(f, "{core}")
        } else {
            write!(f, "({core})/{}", format_rational(&self.m))
        }
    }
}
