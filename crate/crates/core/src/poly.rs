//! Laurent polynomials in one variable with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    var: char,
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero(var: char) -> Self {
        LaurentPoly {
            var,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(var: char, coeff: i64, exp: i64) -> Self {
        let mut p = Self::zero(var);
        p.add_term(coeff, exp);
        p
    }

    pub fn one(var: char) -> Self {
        Self::monomial(var, 1, 0)
    }

    pub fn var(&self) -> char {
        self.var
    }

    pub fn add_term(&mut self, coeff: i64, exp: i64) {
        let c = self.terms.entry(exp).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(self.var), |acc, _| &acc * self)
    }

    /// Substitutes `var^step ↦ sign · new_var^new_exp`.
    ///
    /// Every exponent must be divisible by `step`; returns `None` otherwise.
    pub fn substitute(&self, step: i64, sign: i64, new_var: char, new_exp: i64) -> Option<Self> {
        let mut out = Self::zero(new_var);
        for (e, c) in self.terms() {
            if e % step != 0 {
                return None;
            }
            let k = e / step;
            let s = if k.rem_euclid(2) == 1 { sign } else { 1 };
            out.add_term(s * c, k * new_exp);
        }
        Some(out)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let (sign, abs) = if *c < 0 { ("-", -c) } else { ("+", *c) };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (*e, abs) {
                (0, a) => write!(f, "{a}")?,
                (1, 1) => write!(f, "{}", self.var)?,
                (1, a) => write!(f, "{a}{}", self.var)?,
                (e, 1) => write!(f, "{}^{e}", self.var)?,
                (e, a) => write!(f, "{a}{}^{e}", self.var)?,
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(c, e);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.var);
        for (e, c) in self.terms() {
            out.add_term(-c, e);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.var);
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(c1 * c2, e1 + e2);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let a = LaurentPoly::monomial('A', 1, 1);
        let inv = LaurentPoly::monomial('A', 1, -1);
        let s = &a + &inv;
        assert_eq!(s.to_string(), "A + A^-1");
        let sq = &s * &s;
        assert_eq!(sq.to_string(), "A^2 + 2 + A^-2");
        assert!((&sq - &sq).is_zero());
        assert_eq!(LaurentPoly::monomial('q', -3, 2).to_string(), "-3q^2");
        assert_eq!(s.pow(0), LaurentPoly::one('A'));
    }

    #[test]
    fn substitution() {
        // A^-2 ↦ -q applied to -A^-2 - A^-10
        let mut p = LaurentPoly::monomial('A', -1, -2);
        p.add_term(-1, -10);
        let q = p.substitute(-2, -1, 'q', 1).unwrap();
        assert_eq!(q.to_string(), "q^5 + q");
        assert!(LaurentPoly::monomial('A', 1, 1).substitute(2, -1, 'q', 1).is_none());
    }
}
