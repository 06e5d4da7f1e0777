use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Rational;

/// Half-open interval `[lo, hi)` with exact rational endpoints, `lo < hi`.
/// `(numerator, denominator)`.
pub type Fraction = (i64, i64);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalInterval {
    lo: Rational,
    hi: Rational,
}

impl RationalInterval {
    /// Returns `None` when the interval would be empty.
    pub fn new(lo: Rational, hi: Rational) -> Option<Self> {
        (lo < hi).then_some(Self { lo, hi })
    }

    /// `[lo, hi)` from small integer fractions; panics if empty.
    pub fn from_fractions(lo: Fraction, hi: Fraction) -> Self {
        let lo = Rational::new(BigInt::from(lo.0), BigInt::from(lo.1));
        let hi = Rational::new(BigInt::from(hi.0), BigInt::from(hi.1));
        Self::new(lo, hi).expect("empty interval")
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn measure(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x < &self.hi
    }

    pub fn translate(&self, t: &Rational) -> Self {
        Self {
            lo: &self.lo + t,
            hi: &self.hi + t,
        }
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        Self::new(lo, hi)
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.lo, self.hi)
    }
}

/// Finite disjoint union of half-open rational intervals.
///
/// Pieces are sorted and strictly separated (`hi_i < lo_{i+1}`), so two
/// unions describe the same set iff they compare equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntervalUnion {
    pieces: Vec<RationalInterval>,
}

impl IntervalUnion {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn interval(lo: Rational, hi: Rational) -> Self {
        Self::from_intervals(RationalInterval::new(lo, hi))
    }

    /// Sorts and merges overlapping or touching intervals.
    pub fn from_intervals<I: IntoIterator<Item = RationalInterval>>(items: I) -> Self {
        let mut items: Vec<_> = items.into_iter().collect();
        items.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| a.hi.cmp(&b.hi)));
        let mut pieces: Vec<RationalInterval> = Vec::with_capacity(items.len());
        for iv in items {
            match pieces.last_mut() {
                Some(last) if iv.lo <= last.hi => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                    }
                }
                _ => pieces.push(iv),
            }
        }
        Self { pieces }
    }

    pub fn pieces(&self) -> &[RationalInterval] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Lebesgue measure, exact.
    pub fn measure(&self) -> Rational {
        self.pieces
            .iter()
            .fold(Rational::zero(), |acc, p| acc + p.measure())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        // last piece with lo <= x
        let idx = self.pieces.partition_point(|p| &p.lo <= x);
        idx > 0 && self.pieces[idx - 1].contains(x)
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::from_intervals(self.pieces.iter().chain(&other.pieces).cloned())
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let (a, b) = (&self.pieces, &other.pieces);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            if let Some(iv) = a[i].intersect(&b[j]) {
                out.push(iv);
            }
            match a[i].hi.cmp(&b[j].hi) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        // pieces of the result are already sorted and separated
        Self::from_intervals(out)
    }

    /// Set difference `self \ other`.
    pub fn difference(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        let mut j = 0;
        for piece in &self.pieces {
            let mut cursor = piece.lo.clone();
            while j < other.pieces.len() && other.pieces[j].hi <= cursor {
                j += 1;
            }
            let mut k = j;
            while k < other.pieces.len() && other.pieces[k].lo < piece.hi {
                let cut = &other.pieces[k];
                if cut.lo > cursor {
                    out.extend(RationalInterval::new(cursor.clone(), cut.lo.clone()));
                }
                if cut.hi > cursor {
                    cursor = cut.hi.clone();
                }
                k += 1;
            }
            if cursor < piece.hi {
                out.extend(RationalInterval::new(cursor, piece.hi.clone()));
            }
        }
        Self::from_intervals(out)
    }

    pub fn translate(&self, t: &Rational) -> Self {
        Self {
            pieces: self.pieces.iter().map(|p| p.translate(t)).collect(),
        }
    }

    /// Restriction to `[lo, hi)`.
    pub fn clip(&self, lo: &Rational, hi: &Rational) -> Self {
        self.intersection(&Self::interval(lo.clone(), hi.clone()))
    }

    /// Reduces the set modulo `period`, returning a subset of `[0, period)`.
    pub fn fold(&self, period: &Rational) -> Self {
        assert!(period.is_positive(), "fold period must be positive");
        let mut out = Vec::new();
        for p in &self.pieces {
            if &p.measure() >= period {
                return Self::interval(Rational::zero(), period.clone());
            }
            let shift = -(&p.lo / period).floor() * period;
            let lo = &p.lo + &shift;
            let hi = &p.hi + &shift;
            if &hi <= period {
                out.extend(RationalInterval::new(lo, hi));
            } else {
                out.extend(RationalInterval::new(lo, period.clone()));
                out.extend(RationalInterval::new(Rational::zero(), hi - period));
            }
        }
        Self::from_intervals(out)
    }

    pub fn breakpoints(&self) -> impl Iterator<Item = &Rational> {
        self.pieces.iter().flat_map(|p| [&p.lo, &p.hi])
    }

    /// Least common multiple of all breakpoint denominators (1 when empty).
    pub fn denominator_lcm(&self) -> BigInt {
        self.breakpoints()
            .fold(BigInt::one(), |acc, b| acc.lcm(b.denom()))
    }
}

impl fmt::Display for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.is_empty() {
            return f.write_str("{}");
        }
        for (i, p) in self.pieces.iter().enumerate() {
            if i > 0 {
                f.write_str(" u ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn iv(a: (i64, i64), b: (i64, i64)) -> RationalInterval {
        RationalInterval::from_fractions(a, b)
    }

    #[test]
    fn touching_pieces_merge() {
        let u = IntervalUnion::from_intervals([iv((1, 1), (2, 1)), iv((0, 1), (1, 1))]);
        assert_eq!(u.pieces(), &[iv((0, 1), (2, 1))]);
    }

    #[test]
    fn half_open_membership() {
        let u = IntervalUnion::from_intervals([iv((0, 1), (1, 2))]);
        assert!(u.contains(&q(0, 1)));
        assert!(!u.contains(&q(1, 2)));
        assert!(!u.contains(&q(-1, 100)));
    }

    #[test]
    fn fold_wraps_across_period() {
        let u = IntervalUnion::from_intervals([iv((3, 2), (5, 2))]);
        let f = u.fold(&q(2, 1));
        assert_eq!(
            f,
            IntervalUnion::from_intervals([iv((0, 1), (1, 2)), iv((3, 2), (2, 1))])
        );
        let neg = IntervalUnion::from_intervals([iv((-1, 2), (1, 2))]);
        assert_eq!(
            neg.fold(&q(1, 1)),
            IntervalUnion::interval(q(0, 1), q(1, 1))
        );
    }

    #[test]
    fn difference_removes_middle() {
        let a = IntervalUnion::interval(q(0, 1), q(1, 1));
        let b = IntervalUnion::from_intervals([iv((1, 4), (1, 2)), iv((3, 4), (2, 1))]);
        assert_eq!(
            a.difference(&b),
            IntervalUnion::from_intervals([iv((0, 1), (1, 4)), iv((1, 2), (3, 4))])
        );
    }

    fn arb_union() -> impl Strategy<Value = IntervalUnion> {
        prop::collection::vec((-12i64..12, 1i64..8, 1i64..6), 0..5).prop_map(|v| {
            IntervalUnion::from_intervals(
                v.into_iter()
                    .map(|(a, len, d)| RationalInterval::new(q(a, d), q(a + len, d)).unwrap()),
            )
        })
    }

    proptest! {
        #[test]
        fn set_ops_agree_pointwise(a in arb_union(), b in arb_union(), num in -30i64..30, den in 1i64..7) {
            let x = q(num, den);
            prop_assert_eq!(a.union(&b).contains(&x), a.contains(&x) || b.contains(&x));
            prop_assert_eq!(a.intersection(&b).contains(&x), a.contains(&x) && b.contains(&x));
            prop_assert_eq!(a.difference(&b).contains(&x), a.contains(&x) && !b.contains(&x));
        }

        #[test]
        fn measure_is_additive(a in arb_union(), b in arb_union()) {
            let lhs = a.union(&b).measure() + a.intersection(&b).measure();
            prop_assert_eq!(lhs, a.measure() + b.measure());
        }

        #[test]
        fn fold_membership(a in arb_union(), n in 1i64..5, num in 0i64..60, den in 1i64..7) {
            let period = q(n, 1);
            let x = q(num % (n * den), den);
            let folded = a.fold(&period);
            let direct = (-40..=40).any(|k| a.contains(&(&x + q(k * n, 1))));
            prop_assert_eq!(folded.contains(&x), direct);
        }
    }
}
