//! Univariate polynomials in `s` over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, parse_rational, Rational};
use super::AlgError;

/// Dense polynomial, coefficients in ascending degree. No trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `s`.
    pub fn s() -> Self {
        Poly::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Poly::new(coeffs)
    }

    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, s: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * s + c)
    }

    pub fn eval_f64(&self, s: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * s + super::rational::to_f64(c))
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let lead = self.leading();
        Poly::new(self.coeffs.iter().map(|c| c / &lead).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Poly::zero(), Poly::zero());
        };
        if nd < dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let r = x.div_rem(&y).1;
            x = y;
            y = r.monic();
        }
        x.monic()
    }

    pub fn pow(&self, k: usize) -> Poly {
        (0..k).fold(Poly::one(), |acc, _| &acc * self)
    }

    /// Square-free part (monic).
    pub fn square_free(&self) -> Poly {
        if self.is_constant() {
            return self.monic();
        }
        let g = Poly::gcd(self, &self.derivative());
        self.div_rem(&g).0.monic()
    }

    fn sturm_chain(&self) -> Vec<Poly> {
        let p0 = self.square_free();
        let mut chain = vec![p0.clone(), p0.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].div_rem(&chain[n - 1]).1;
            if r.is_zero() {
                break;
            }
            chain.push(-r);
        }
        chain
    }

    fn sign_changes(chain: &[Poly], x: &Rational) -> usize {
        let mut changes = 0;
        let mut last = 0i8;
        for p in chain {
            let v = p.eval(x);
            let sg = if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            };
            if sg != 0 {
                if last != 0 && sg != last {
                    changes += 1;
                }
                last = sg;
            }
        }
        changes
    }

    /// Number of distinct real roots in the closed interval `[a, b]` (Sturm's theorem).
    pub fn count_roots_in(&self, a: &Rational, b: &Rational) -> usize {
        if self.is_zero() {
            panic!("root count of the zero polynomial");
        }
        if self.is_constant() || a > b {
            return 0;
        }
        let chain = self.sturm_chain();
        let inner = Self::sign_changes(&chain, a) - Self::sign_changes(&chain, b);
        inner + usize::from(self.eval(a).is_zero())
    }

    /// Disjoint intervals `[lo, hi]` inside `[a, b]`, each holding exactly one real root.
    pub fn isolate_roots(&self, a: &Rational, b: &Rational) -> Vec<(Rational, Rational)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let sf = self.square_free();
        let mut stack = vec![(a.clone(), b.clone())];
        let two = Rational::from_integer(2.into());
        while let Some((lo, hi)) = stack.pop() {
            let c = sf.count_roots_in(&lo, &hi);
            if c == 0 {
                continue;
            }
            if c == 1 {
                out.push((lo, hi));
                continue;
            }
            let mid = (&lo + &hi) / &two;
            if sf.eval(&mid).is_zero() {
                out.push((mid.clone(), mid.clone()));
                // shrink around the exact root so siblings stay disjoint
                let eps = (&hi - &lo) / Rational::from_integer(1024.into());
                stack.push((lo, &mid - &eps));
                stack.push((&mid + &eps, hi));
            } else {
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
        out.sort_by(|x, y| x.0.cmp(&y.0));
        out
    }

    /// Parses `"c0 + c1*s + c2*s^2"`-style text. Coefficients may be `p/q` or decimals.
    pub fn parse(text: &str) -> Result<Poly, AlgError> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(AlgError::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' && bytes[i - 1] != b'/' {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        let mut acc = Poly::zero();
        for term in terms {
            acc = &acc + &parse_term(term, text)?;
        }
        Ok(acc)
    }
}

fn parse_term(term: &str, whole: &str) -> Result<Poly, AlgError> {
    let bad = || AlgError::Parse(format!("bad term {term:?} in {whole:?}"));
    let (neg, body) = match term.as_bytes().first() {
        Some(b'+') => (false, &term[1..]),
        Some(b'-') => (true, &term[1..]),
        _ => (false, term),
    };
    if body.is_empty() {
        return Err(bad());
    }
    let (coef, degree) = match body.find('s') {
        None => (parse_rational(body).map_err(|_| bad())?, 0),
        Some(pos) => {
            let coef_text = body[..pos].trim_end_matches('*');
            let coef = if coef_text.is_empty() {
                Rational::one()
            } else {
                parse_rational(coef_text).map_err(|_| bad())?
            };
            let rest = &body[pos + 1..];
            let degree = if rest.is_empty() {
                1
            } else if let Some(exp) = rest.strip_prefix('^') {
                exp.parse::<usize>().map_err(|_| bad())?
            } else {
                return Err(bad());
            };
            (coef, degree)
        }
    };
    let coef = if neg { -coef } else { coef };
    Ok(Poly::monomial(coef, degree))
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = format_rational(&c.abs());
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !c.abs().is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "s")?;
                    } else {
                        write!(f, "s^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, rat};

    #[test]
    fn parse_and_display() {
        let p = Poly::parse("1/2 - 3*s + s^3").unwrap();
        assert_eq!(p.coeffs(), &[rat(1, 2), int(-3), int(0), int(1)]);
        assert_eq!(p.to_string(), "1/2 - 3*s + s^3");
        assert_eq!(Poly::parse("s").unwrap(), Poly::s());
        assert_eq!(Poly::parse("-s^2").unwrap(), Poly::from_ints(&[0, 0, -1]));
        assert_eq!(Poly::parse("2 s").unwrap(), Poly::from_ints(&[0, 2]));
        assert_eq!(Poly::parse("-3/2*s + 0").unwrap().coeffs(), &[int(0), rat(-3, 2)]);
        assert!(Poly::parse("s^").is_err());
        assert!(Poly::parse("x").is_err());
        assert_eq!(Poly::parse("0").unwrap(), Poly::zero());
    }

    #[test]
    fn division_and_gcd() {
        // s^3 - 1 = (s - 1)(s^2 + s + 1)
        let a = Poly::from_ints(&[-1, 0, 0, 1]);
        let b = Poly::from_ints(&[-1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, Poly::from_ints(&[1, 1, 1]));
        assert!(r.is_zero());
        let g = Poly::gcd(&Poly::from_ints(&[-1, 0, 1]), &Poly::from_ints(&[2, -2]));
        assert_eq!(g, Poly::from_ints(&[-1, 1]));
    }

    #[test]
    fn sturm_counts() {
        // (s - 1)(s - 2)(s + 3)
        let p = &(&Poly::from_ints(&[-1, 1]) * &Poly::from_ints(&[-2, 1])) * &Poly::from_ints(&[3, 1]);
        assert_eq!(p.count_roots_in(&int(0), &int(3)), 2);
        assert_eq!(p.count_roots_in(&int(1), &int(1)), 1);
        assert_eq!(p.count_roots_in(&int(-4), &int(3)), 3);
        assert_eq!(p.count_roots_in(&rat(11, 10), &rat(19, 10)), 0);
        // s^2 + 1 has no real roots
        assert_eq!(Poly::from_ints(&[1, 0, 1]).count_roots_in(&int(-10), &int(10)), 0);
        // repeated root counted once
        assert_eq!(Poly::from_ints(&[1, -2, 1]).count_roots_in(&int(0), &int(2)), 1);
        let iso = p.isolate_roots(&int(-4), &int(4));
        assert_eq!(iso.len(), 3);
        for (lo, hi) in &iso {
            assert_eq!(p.count_roots_in(lo, hi), 1);
        }
    }
}
