use std::fmt;

/// An integer Laurent polynomial, the additive normal form for elements of
/// the polynomial part of the `laurent_semidirect` group.
///
/// Terms are kept sorted by exponent with no zero coefficients, so structural
/// equality is equality of group elements.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LaurentPoly {
    terms: Vec<(i64, i64)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(0, c)
    }

    /// `coeff * t^exp`, dropping zero coefficients.
    pub fn monomial(exp: i64, coeff: i64) -> Self {
        if coeff == 0 {
            Self::zero()
        } else {
            LaurentPoly {
                terms: vec![(exp, coeff)],
            }
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut acc = Self::zero();
        for (exp, coeff) in terms {
            acc = acc.add(&Self::monomial(exp, coeff));
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms sorted by ascending exponent.
    pub fn terms(&self) -> &[(i64, i64)] {
        &self.terms
    }

    /// The term with the highest exponent, if any.
    pub fn leading_term(&self) -> Option<(i64, i64)> {
        self.terms.last().copied()
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ea, ca) = self.terms[i];
            let (eb, cb) = other.terms[j];
            match ea.cmp(&eb) {
                std::cmp::Ordering::Less => {
                    out.push((ea, ca));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((eb, cb));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    if ca + cb != 0 {
                        out.push((ea, ca + cb));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        LaurentPoly { terms: out }
    }

    pub fn negate(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|&(e, c)| (e, -c)).collect(),
        }
    }

    /// Multiplication by `t^k`, the conjugation action of the cyclic part.
    pub fn shift(&self, k: i64) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|&(e, c)| (e + k, c)).collect(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (exp, coeff)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, "+")?;
            }
            write!(f, "{coeff}*t^{exp}")?;
        }
        Ok(())
    }
}
