use std::fmt;
use std::ops::Mul;

use serde::{Serialize, Serializer};

/// Integer polynomial in one variable; `coeffs[i]` multiplies `x^i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CharPolynomial {
    coeffs: Vec<i64>,
}

impl CharPolynomial {
    pub fn from_coeffs(mut coeffs: Vec<i64>) -> Self {
        while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0);
        }
        CharPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        Self::from_coeffs(vec![0])
    }

    pub fn one() -> Self {
        Self::from_coeffs(vec![1])
    }

    pub fn monomial(degree: usize) -> Self {
        let mut c = vec![0; degree + 1];
        c[degree] = 1;
        Self::from_coeffs(c)
    }

    /// `(x - roots[0]) (x - roots[1]) ...`
    pub fn from_roots(roots: &[i64]) -> Self {
        roots.iter().fold(Self::one(), |acc, &a| {
            &acc * &Self::from_coeffs(vec![-a, 1])
        })
    }

    /// `x^a (x - 1)^b`, expanded.
    pub fn power_form(a: usize, b: usize) -> Self {
        let mut roots = vec![0; a];
        roots.extend(std::iter::repeat_n(1, b));
        Self::from_roots(&roots)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> i64 {
        self.coeffs.get(power).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs == [0]
    }

    pub fn eval(&self, x: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * x + c)
    }
}

impl Mul for &CharPolynomial {
    type Output = CharPolynomial;

    fn mul(self, rhs: &CharPolynomial) -> CharPolynomial {
        let mut out = vec![0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        CharPolynomial::from_coeffs(out)
    }
}

impl fmt::Display for CharPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (power, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let abs = c.unsigned_abs();
            if abs != 1 || power == 0 {
                write!(f, "{abs}")?;
            }
            match power {
                0 => {}
                1 => f.write_str("x")?,
                p => write!(f, "x^{p}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CharPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CharPolynomial({self})")
    }
}

impl Serialize for CharPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        assert_eq!(CharPolynomial::power_form(2, 2).to_string(), "x^4 - 2x^3 + x^2");
        assert_eq!(CharPolynomial::power_form(0, 1).to_string(), "x - 1");
        assert_eq!(CharPolynomial::from_coeffs(vec![-3, 0, -1]).to_string(), "-x^2 - 3");
        assert_eq!(CharPolynomial::zero().to_string(), "0");
        assert_eq!(CharPolynomial::one().to_string(), "1");
    }

    #[test]
    fn expansion() {
        assert_eq!(CharPolynomial::power_form(2, 2).coeffs(), &[0, 0, 1, -2, 1]);
        assert_eq!(CharPolynomial::power_form(1, 2).coeffs(), &[0, 1, -2, 1]);
        assert_eq!(CharPolynomial::power_form(0, 3).coeffs(), &[-1, 3, -3, 1]);
        assert_eq!(CharPolynomial::from_roots(&[2, 3]).coeffs(), &[6, -5, 1]);
        assert_eq!(CharPolynomial::power_form(0, 4).eval(1), 0);
        assert_eq!(CharPolynomial::from_coeffs(vec![1, 0, 0]).degree(), 0);
    }
}
