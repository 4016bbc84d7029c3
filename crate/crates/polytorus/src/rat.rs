//! Exact rational numbers.
//!
//! Backed by `i128` with checked arithmetic: any overflow aborts loudly
//! instead of wrapping, so every comparison that completes is exact. The
//! magnitudes in this crate (table moduli, desk-scale parameter grids,
//! small change-of-basis matrices) stay dozens of orders of magnitude
//! below the `i128` range.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;



fn chk(v: Option<i128>) -> i128 {
    v.expect("exact rational arithmetic overflowed i128")
}

/// A rational number in lowest terms with positive denominator.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rat {
    num: i128,
    den: i128,
}

pub const fn rat_int(n: i128) -> Rat {
    Rat { num: n, den: 1 }
}

impl Rat {
    pub const ZERO: Rat = rat_int(0);
    pub const ONE: Rat = rat_int(1);

    pub fn new(num: i128, den: i128) -> Rat {
        assert!(den != 0, "rational with zero denominator");
        let sign = den.signum();
        let g = num.gcd(&den);
        Rat {
            num: sign * num / g,
            den: sign * den / g,
        }
    }

    pub fn num(&self) -> i128 {
        self.num
    }

    pub fn den(&self) -> i128 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn as_integer(&self) -> Option<i128> {
        self.is_integer().then_some(self.num)
    }

    pub fn signum(&self) -> i32 {
        self.num.signum() as i32
    }

    pub fn abs(&self) -> Rat {
        Rat {
            num: self.num.abs(),
            den: self.den,
        }
    }

    pub fn recip(&self) -> Rat {
        assert!(self.num != 0, "division by zero rational");
        Rat::new(self.den, self.num)
    }

    pub fn floor(&self) -> i128 {
        num_integer::Integer::div_floor(&self.num, &self.den)
    }

    /// Fractional part in `[0, 1)`.
    pub fn fract(&self) -> Rat {
        *self - rat_int(self.floor())
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Add for Rat {
    type Output = Rat;
    fn add(self, o: Rat) -> Rat {
        let g = self.den.gcd(&o.den);
        let lhs = chk(self.num.checked_mul(o.den / g));
        let rhs = chk(o.num.checked_mul(self.den / g));
        Rat::new(chk(lhs.checked_add(rhs)), chk((self.den / g).checked_mul(o.den)))
    }
}

impl Sub for Rat {
    type Output = Rat;
    fn sub(self, o: Rat) -> Rat {
        self + (-o)
    }
}

impl Mul for Rat {
    type Output = Rat;
    fn mul(self, o: Rat) -> Rat {
        // Cross-reduce before multiplying to keep intermediates small.
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        Rat {
            num: chk((self.num / g1).checked_mul(o.num / g2)),
            den: chk((self.den / g2).checked_mul(o.den / g1)),
        }
    }
}

impl Div for Rat {
    type Output = Rat;
    fn div(self, o: Rat) -> Rat {
        self * o.recip()
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat {
            num: -self.num,
            den: self.den,
        }
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, o: &Rat) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Rat {
    fn cmp(&self, o: &Rat) -> Ordering {
        chk(self.num.checked_mul(o.den)).cmp(&chk(o.num.checked_mul(self.den)))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
#[error("invalid rational literal `{0}`")]
pub struct ParseRatError(pub String);

impl FromStr for Rat {
    type Err = ParseRatError;
    fn from_str(s: &str) -> Result<Rat, ParseRatError> {
        let bad = || ParseRatError(s.to_string());
        match s.split_once('/') {
            None => s.parse::<i128>().map(rat_int).map_err(|_| bad()),
            Some((n, d)) => {
                let num = n.parse::<i128>().map_err(|_| bad())?;
                let den = d.parse::<i128>().map_err(|_| bad())?;
                if den <= 0 {
                    return Err(bad());
                }
                Ok(Rat::new(num, den))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_lowest_terms() {
        assert_eq!(Rat::new(2, 4), Rat::new(1, 2));
        assert_eq!(Rat::new(3, -6), Rat::new(-1, 2));
        assert_eq!(Rat::new(0, -5), Rat::ZERO);
    }

    #[test]
    fn arithmetic() {
        let half = Rat::new(1, 2);
        let third = Rat::new(1, 3);
        assert_eq!(half + third, Rat::new(5, 6));
        assert_eq!(half - third, Rat::new(1, 6));
        assert_eq!(half * third, Rat::new(1, 6));
        assert_eq!(half / third, Rat::new(3, 2));
        assert_eq!(-half, Rat::new(-1, 2));
    }

    #[test]
    fn ordering_is_numeric() {
        assert!(Rat::new(2, 3) < Rat::new(3, 4));
        assert!(Rat::new(-1, 2) < Rat::ZERO);
    }

    #[test]
    fn floor_and_fract() {
        assert_eq!(Rat::new(7, 2).floor(), 3);
        assert_eq!(Rat::new(-1, 2).floor(), -1);
        assert_eq!(Rat::new(-1, 2).fract(), Rat::new(1, 2));
        assert_eq!(rat_int(4).fract(), Rat::ZERO);
    }

    #[test]
    fn parse_display_round_trip() {
        for s in ["0", "-3", "1/2", "-7/3", "22/7"] {
            let r: Rat = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert!("1/0".parse::<Rat>().is_err());
        assert!("x".parse::<Rat>().is_err());
        // Non-canonical input still parses, display is canonical.
        assert_eq!("2/4".parse::<Rat>().unwrap().to_string(), "1/2");
    }
}
