//! The scalar field Q(sqrt3).
//!
//! Every coordinate, matrix entry and lattice parameter in this crate is a
//! `Surd`: an exact element `a + b*sqrt(3)` with rational `a`, `b`. Sign,
//! comparison and floor are decided from rational arithmetic alone; floats
//! appear only in `to_f64` (mesh export and shadow checks).
//!
//! Text form: `p/q` or `p/q+r/s*s3` (e.g. `1/2+1/2*s3`), emitted and parsed
//! bit-exactly.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use crate::rat::{rat_int, ParseRatError, Rat};

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Surd {
    /// Rational part.
    pub rat: Rat,
    /// Coefficient of sqrt(3).
    pub s3: Rat,
}

pub const fn surd_int(n: i128) -> Surd {
    Surd {
        rat: rat_int(n),
        s3: Rat::ZERO,
    }
}

/// `n/d`, the rational surd.
pub fn sq(n: i128, d: i128) -> Surd {
    Surd {
        rat: Rat::new(n, d),
        s3: Rat::ZERO,
    }
}

/// `(n/d) * sqrt(3)`.
pub fn sq3(n: i128, d: i128) -> Surd {
    Surd {
        rat: Rat::ZERO,
        s3: Rat::new(n, d),
    }
}

impl Surd {
    pub const ZERO: Surd = surd_int(0);
    pub const ONE: Surd = surd_int(1);

    pub fn new(rat: Rat, s3: Rat) -> Surd {
        Surd { rat, s3 }
    }

    pub fn from_rat(rat: Rat) -> Surd {
        Surd { rat, s3: Rat::ZERO }
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.s3.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.s3.is_zero()
    }

    pub fn as_rat(&self) -> Option<Rat> {
        self.is_rational().then_some(self.rat)
    }

    pub fn is_integer(&self) -> bool {
        self.s3.is_zero() && self.rat.is_integer()
    }

    pub fn as_integer(&self) -> Option<i128> {
        self.s3.is_zero().then(|| self.rat.as_integer()).flatten()
    }

    /// Exact sign of the real number `a + b*sqrt(3)`, from rational
    /// comparisons only: when `a` and `b` disagree in sign the decision is
    /// the comparison of `a^2` with `3 b^2`.
    pub fn signum(&self) -> i32 {
        let (sa, sb) = (self.rat.signum(), self.s3.signum());
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // Opposite signs: |a| vs |b|*sqrt(3), squared.
        let a2 = self.rat * self.rat;
        let b23 = self.s3 * self.s3 * rat_int(3);
        match a2.cmp(&b23) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn abs(&self) -> Surd {
        if self.signum() < 0 {
            -*self
        } else {
            *self
        }
    }

    /// Conjugate `a - b*sqrt(3)`.
    pub fn conj(&self) -> Surd {
        Surd {
            rat: self.rat,
            s3: -self.s3,
        }
    }

    /// Field norm `a^2 - 3 b^2`.
    pub fn norm(&self) -> Rat {
        self.rat * self.rat - rat_int(3) * self.s3 * self.s3
    }

    pub fn recip(&self) -> Surd {
        let n = self.norm();
        assert!(!n.is_zero(), "division by zero surd");
        let c = self.conj();
        Surd {
            rat: c.rat / n,
            s3: c.s3 / n,
        }
    }

    /// Largest integer `<= self`, decided exactly. A float estimate seeds
    /// the candidate; the verification is exact sign arithmetic.
    pub fn floor(&self) -> i128 {
        if self.s3.is_zero() {
            return self.rat.floor();
        }
        let mut n = self.to_f64().floor() as i128;
        // self - n >= 0 ?
        while (*self - surd_int(n)).signum() < 0 {
            n -= 1;
        }
        while (*self - surd_int(n + 1)).signum() >= 0 {
            n += 1;
        }
        n
    }

    pub fn fract(&self) -> Surd {
        *self - surd_int(self.floor())
    }

    pub fn to_f64(&self) -> f64 {
        self.rat.to_f64() + self.s3.to_f64() * 3f64.sqrt()
    }
}

impl Add for Surd {
    type Output = Surd;
    fn add(self, o: Surd) -> Surd {
        Surd {
            rat: self.rat + o.rat,
            s3: self.s3 + o.s3,
        }
    }
}

impl Sub for Surd {
    type Output = Surd;
    fn sub(self, o: Surd) -> Surd {
        Surd {
            rat: self.rat - o.rat,
            s3: self.s3 - o.s3,
        }
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, o: Surd) -> Surd {
        // (a + b s)(c + d s) = ac + 3bd + (ad + bc) s, s = sqrt(3)
        Surd {
            rat: self.rat * o.rat + rat_int(3) * self.s3 * o.s3,
            s3: self.rat * o.s3 + self.s3 * o.rat,
        }
    }
}

impl Div for Surd {
    type Output = Surd;
    fn div(self, o: Surd) -> Surd {
        self * o.recip()
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd {
            rat: -self.rat,
            s3: -self.s3,
        }
    }
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, o: &Surd) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Surd {
    fn cmp(&self, o: &Surd) -> Ordering {
        match (*self - *o).signum() {
            x if x < 0 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

impl From<Rat> for Surd {
    fn from(r: Rat) -> Surd {
        Surd::from_rat(r)
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.s3.is_zero() {
            write!(f, "{}", self.rat)
        } else if self.s3.signum() < 0 {
            write!(f, "{}-{}*s3", self.rat, self.s3.abs())
        } else {
            write!(f, "{}+{}*s3", self.rat, self.s3)
        }
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
#[error("invalid surd literal `{0}`")]
pub struct ParseSurdError(pub String);

impl From<ParseRatError> for ParseSurdError {
    fn from(e: ParseRatError) -> Self {
        ParseSurdError(e.0)
    }
}

impl FromStr for Surd {
    type Err = ParseSurdError;
    fn from_str(s: &str) -> Result<Surd, ParseSurdError> {
        let bad = || ParseSurdError(s.to_string());
        match s.strip_suffix("*s3") {
            None => Ok(Surd::from_rat(s.parse::<Rat>().map_err(|_| bad())?)),
            Some(head) => {
                // Split the sqrt3 coefficient off at the last +/- that is not
                // a leading sign of the rational part.
                let mut split_at = None;
                for (i, c) in head.char_indices().skip(1) {
                    if (c == '+' || c == '-') && !head[..i].ends_with('/') {
                        split_at = Some(i);
                    }
                }
                let idx = split_at.ok_or_else(bad)?;
                let rat = head[..idx].parse::<Rat>().map_err(|_| bad())?;
                let sign = if head[idx..].starts_with('-') { -1 } else { 1 };
                let coeff = head[idx + 1..].parse::<Rat>().map_err(|_| bad())?;
                if coeff.signum() < 0 {
                    return Err(bad());
                }
                Ok(Surd::new(rat, Rat::new(sign, 1) * coeff))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // (1 + 1*s3)(1 - 1*s3) = 1 - 3 = -2
    #[test]
    fn difference_of_squares() {
        let x = Surd::new(Rat::ONE, Rat::ONE);
        assert_eq!(x * x.conj(), surd_int(-2));
    }

    // |(1/2, sqrt3/2)|^2 = 1/4 + 3/4 = 1: the unit vector of the
    // triangular-lattice basis.
    #[test]
    fn triangular_basis_vector_is_unit() {
        let c = sq(1, 2);
        let s = sq3(1, 2);
        assert_eq!(c * c + s * s, Surd::ONE);
    }

    #[test]
    fn self_division() {
        let x = sq3(1, 3);
        assert_eq!(x / x, Surd::ONE);
    }

    #[test]
    #[should_panic(expected = "division by zero")]
    fn division_by_zero_panics() {
        let _ = Surd::ONE / Surd::ZERO;
    }

    // 2 - sqrt3 > 0 because 4 > 3; its negation is negative.
    #[test]
    fn sign_from_squares() {
        let x = surd_int(2) - sq3(1, 1);
        assert_eq!(x.signum(), 1);
        assert_eq!((-x).signum(), -1);
        assert_eq!(Surd::ZERO.signum(), 0);
        // sqrt3 - 3/2 > 0 but 2*sqrt3 - 7/2 < 0 (12 < 49/4)
        assert_eq!((sq3(1, 1) - sq(3, 2)).signum(), 1);
        assert_eq!((sq3(2, 1) - sq(7, 2)).signum(), -1);
    }

    #[test]
    fn floor_exact() {
        assert_eq!(sq3(1, 1).floor(), 1); // sqrt3 ~ 1.732
        assert_eq!((-sq3(1, 1)).floor(), -2);
        assert_eq!(sq3(1, 3).floor(), 0); // 0.577
        assert_eq!((surd_int(2) - sq3(1, 1)).floor(), 0);
        assert_eq!(sq(7, 2).floor(), 3);
        assert_eq!(surd_int(5).floor(), 5);
        // 2*sqrt3 = 3.46..
        assert_eq!(sq3(2, 1).floor(), 3);
    }

    #[test]
    fn display_matches_interface_form() {
        assert_eq!(Surd::new(Rat::new(1, 2), Rat::new(1, 2)).to_string(), "1/2+1/2*s3");
        assert_eq!(sq(1, 2).to_string(), "1/2");
        assert_eq!(sq3(-1, 2).to_string(), "0-1/2*s3");
        assert_eq!(surd_int(3).to_string(), "3");
    }

    #[test]
    fn parse_examples() {
        assert_eq!("1/2+1/2*s3".parse::<Surd>().unwrap(), Surd::new(Rat::new(1, 2), Rat::new(1, 2)));
        assert_eq!("-2".parse::<Surd>().unwrap(), surd_int(-2));
        assert_eq!("0-1/2*s3".parse::<Surd>().unwrap(), sq3(-1, 2));
        assert_eq!("-1/2+3*s3".parse::<Surd>().unwrap(), Surd::new(Rat::new(-1, 2), rat_int(3)));
        assert!("s3".parse::<Surd>().is_err());
        assert!("1+-2*s3".parse::<Surd>().is_err());
    }

    fn arb_surd() -> impl Strategy<Value = Surd> {
        (-50i128..50, 1i128..12, -50i128..50, 1i128..12)
            .prop_map(|(a, b, c, d)| Surd::new(Rat::new(a, b), Rat::new(c, d)))
    }

    proptest! {
        // Round-trip through the text form is bit-exact.
        #[test]
        fn parse_round_trip(x in arb_surd()) {
            let s = x.to_string();
            prop_assert_eq!(s.parse::<Surd>().unwrap(), x);
        }

        // Floating shadow: sanity only, never a decision path.
        #[test]
        fn float_shadow(x in arb_surd(), y in arb_surd()) {
            for (exact, approx) in [
                (x + y, x.to_f64() + y.to_f64()),
                (x - y, x.to_f64() - y.to_f64()),
                (x * y, x.to_f64() * y.to_f64()),
            ] {
                let e = exact.to_f64();
                prop_assert!((e - approx).abs() <= 1e-9 * (1.0 + e.abs().max(approx.abs())));
            }
        }

        // signum(x*x) >= 0 and signum is odd.
        #[test]
        fn sign_laws(x in arb_surd()) {
            prop_assert!((x * x).signum() >= 0);
            prop_assert_eq!(x.signum(), -(-x).signum());
        }

        #[test]
        fn floor_bounds(x in arb_surd()) {
            let n = x.floor();
            prop_assert!((x - surd_int(n)).signum() >= 0);
            prop_assert!((x - surd_int(n + 1)).signum() < 0);
        }
    }
}
