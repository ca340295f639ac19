//! Rational functions in `s`: reduced fractions of polynomials with monic denominator.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rational::Rational;
use super::AlgError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Builds `num / den` in lowest terms. Panics if `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g = Poly::gcd(&num, &den);
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lead = den.leading();
        if !lead.is_one() {
            let inv = lead.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    pub fn constant(c: Rational) -> Self {
        RatFunc { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn s() -> Self {
        RatFunc::from(Poly::s())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// Constant value, if the function does not depend on `s`.
    pub fn as_constant(&self) -> Option<Rational> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    /// Value at `s`, or `None` at a pole.
    pub fn eval(&self, s: &Rational) -> Option<Rational> {
        let d = self.den.eval(s);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(s) / d)
        }
    }

    pub fn eval_f64(&self, s: f64) -> f64 {
        self.num.eval_f64(s) / self.den.eval_f64(s)
    }

    pub fn derivative(&self) -> RatFunc {
        let top = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFunc::new(top, &self.den * &self.den)
    }

    pub fn recip(&self) -> Option<RatFunc> {
        (!self.is_zero()).then(|| RatFunc::new(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Substitutes `s -> s + shift`.
    pub fn shift(&self, shift: &Rational) -> RatFunc {
        let arg = Poly::new(vec![shift.clone(), Rational::one()]);
        RatFunc::new(compose(&self.num, &arg), compose(&self.den, &arg))
    }

    /// Accepts a polynomial `"c0 + c1*s"` or a quotient `"(num)/(den)"`.
    pub fn parse(text: &str) -> Result<RatFunc, AlgError> {
        let t = text.trim();
        if let Some(rest) = t.strip_prefix('(') {
            let close = rest
                .find(')')
                .ok_or_else(|| AlgError::Parse(format!("unbalanced parentheses in {text:?}")))?;
            let num = Poly::parse(&rest[..close])?;
            let tail = rest[close + 1..].trim();
            if tail.is_empty() {
                return Ok(RatFunc::from(num));
            }
            let den_text = tail
                .strip_prefix('/')
                .map(str::trim)
                .and_then(|d| d.strip_prefix('('))
                .and_then(|d| d.strip_suffix(')'))
                .ok_or_else(|| AlgError::Parse(format!("expected \"(num)/(den)\" in {text:?}")))?;
            let den = Poly::parse(den_text)?;
            if den.is_zero() {
                return Err(AlgError::Parse(format!("zero denominator in {text:?}")));
            }
            return Ok(RatFunc::new(num, den));
        }
        Poly::parse(t).map(RatFunc::from)
    }
}

fn compose(p: &Poly, arg: &Poly) -> Poly {
    p.coeffs()
        .iter()
        .rev()
        .fold(Poly::zero(), |acc, c| &(&acc * arg) + &Poly::constant(c.clone()))
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }
}

impl From<Rational> for RatFunc {
    fn from(c: Rational) -> Self {
        RatFunc::constant(c)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den.clone());
        }
        RatFunc::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::new(&self.num - &o.num, self.den.clone());
        }
        RatFunc::new(
            &(&self.num * &o.den) - &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, o: &RatFunc) -> RatFunc {
        assert!(!o.is_zero(), "division by the zero rational function");
        RatFunc::new(&self.num * &o.den, &self.den * &o.num)
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, o: RatFunc) -> RatFunc {
        &self + &o
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, o: RatFunc) -> RatFunc {
        &self * &o
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::constant(Rational::one())
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -self.num, den: self.den }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, rat};

    #[test]
    fn normal_form() {
        // (s^2 - 1) / (2s - 2) = (s + 1)/2
        let f = RatFunc::new(Poly::from_ints(&[-1, 0, 1]), Poly::from_ints(&[-2, 2]));
        assert!(f.is_polynomial());
        assert_eq!(f.num().coeffs(), &[rat(1, 2), rat(1, 2)]);
        assert_eq!(RatFunc::new(Poly::zero(), Poly::s()), RatFunc::zero());
    }

    #[test]
    fn arithmetic_round_trip() {
        let a = RatFunc::parse("(1 + s)/(s^2 + 1)").unwrap();
        let b = RatFunc::parse("2 - s").unwrap();
        let c = &(&a / &b) * &b;
        assert_eq!(c, a);
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!(a.eval(&int(1)), Some(int(1)));
        let pole = RatFunc::parse("(1)/(s - 1/2)").unwrap();
        assert_eq!(pole.eval(&rat(1, 2)), None);
    }

    #[test]
    fn derivative_and_shift() {
        let f = RatFunc::parse("(1)/(s)").unwrap();
        assert_eq!(f.derivative(), RatFunc::parse("(-1)/(s^2)").unwrap());
        let g = RatFunc::parse("s^2").unwrap().shift(&int(1));
        assert_eq!(g, RatFunc::parse("1 + 2*s + s^2").unwrap());
    }

    #[test]
    fn parse_errors() {
        assert!(RatFunc::parse("(1)/(0)").is_err());
        assert!(RatFunc::parse("(1 + s").is_err());
        assert!(RatFunc::parse("(1) * (s)").is_err());
    }
}
