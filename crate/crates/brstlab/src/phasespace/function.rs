//! Monomial-supported functions on the concrete phase spaces.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::{Payload, Scalar};

/// Which phase space a function lives on. The space fixes the meaning of
/// the exponent vector of each monomial.
#[derive(Copy, Clone, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum Space {
    /// One point; functions are constants, the exponent vector is empty.
    Point,
    /// Cotangent bundle of the two-torus. Exponents `[k, l, m, n]` encode
    /// `z^k w^l p^m J^n` with `k, l` arbitrary integers and `m, n >= 0`.
    Torus,
    /// Cotangent bundle of `R^d`. Exponents `[a_1..a_d, b_1..b_d]` encode
    /// `x^a p^b`, all entries nonnegative.
    Flat { d: usize },
}

impl Space {
    pub fn mono_len(&self) -> usize {
        match self {
            Space::Point => 0,
            Space::Torus => 4,
            Space::Flat { d } => 2 * d,
        }
    }

    /// Positions that must stay nonnegative (polynomial directions).
    fn poly_positions(&self) -> std::ops::Range<usize> {
        match self {
            Space::Point => 0..0,
            Space::Torus => 2..4,
            Space::Flat { d } => 0..2 * d,
        }
    }

    pub fn valid_mono(&self, m: &Mono) -> bool {
        m.len() == self.mono_len() && self.poly_positions().all(|i| m[i] >= 0)
    }

    fn var_name(&self, pos: usize) -> String {
        match self {
            Space::Point => unreachable!("point space has no variables"),
            Space::Torus => ["z", "w", "p", "J"][pos].to_string(),
            Space::Flat { d } => {
                if pos < *d {
                    format!("x{}", pos + 1)
                } else {
                    format!("p{}", pos - d + 1)
                }
            }
        }
    }
}

/// Exponent vector of one monomial.
pub type Mono = Vec<i64>;

/// A finitely supported exact-coefficient function: a map from exponent
/// vectors to Gaussian-rational coefficients. No zero coefficients are
/// stored, so equality of maps is equality of functions.
#[derive(Clone, PartialEq, Debug)]
pub struct PhaseFunction {
    space: Space,
    terms: BTreeMap<Mono, Scalar>,
}

impl PhaseFunction {
    pub fn zero(space: Space) -> Self {
        PhaseFunction {
            space,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(space: Space) -> Self {
        PhaseFunction::constant(space, Scalar::one())
    }

    pub fn constant(space: Space, c: Scalar) -> Self {
        PhaseFunction::monomial(space, vec![0; space.mono_len()], c)
    }

    /// The coordinate function at the given position.
    pub fn coordinate(space: Space, pos: usize) -> Self {
        let mut m = vec![0; space.mono_len()];
        m[pos] = 1;
        PhaseFunction::monomial(space, m, Scalar::one())
    }

    pub fn monomial(space: Space, mono: Mono, coeff: Scalar) -> Self {
        assert!(
            space.valid_mono(&mono),
            "invalid monomial {mono:?} for {space:?}"
        );
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mono, coeff);
        }
        PhaseFunction { space, terms }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, mono: Mono, coeff: &Scalar) {
        debug_assert!(self.space.valid_mono(&mono));
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(c) => {
                *c += coeff;
                if c.is_zero() {
                    self.terms.remove(&mono);
                }
            }
            None => {
                self.terms.insert(mono, coeff.clone());
            }
        }
    }

    /// Largest exponent appearing at the given position (0 when empty).
    pub fn max_degree(&self, pos: usize) -> i64 {
        self.terms.keys().map(|m| m[pos]).max().unwrap_or(0)
    }

    /// Partial derivative along a polynomial direction.
    pub fn deriv_poly(&self, pos: usize) -> PhaseFunction {
        let mut out = PhaseFunction::zero(self.space);
        for (m, c) in &self.terms {
            let e = m[pos];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2[pos] = e - 1;
            out.add_term(m2, &c.scale_rat(&crate::scalars::Rat::from_integer(e.into())));
        }
        out
    }

    /// Angular derivative along a Fourier direction: on a monomial with
    /// exponent `k` at `pos`, multiplication by `i*k`.
    pub fn deriv_angle(&self, pos: usize) -> PhaseFunction {
        let mut out = PhaseFunction::zero(self.space);
        for (m, c) in &self.terms {
            let k = m[pos];
            if k == 0 {
                continue;
            }
            let ik = Scalar::i().scale_rat(&crate::scalars::Rat::from_integer(k.into()));
            out.add_term(m.clone(), &(c * &ik));
        }
        out
    }
}

impl Payload for PhaseFunction {
    fn zero_like(&self) -> Self {
        PhaseFunction::zero(self.space)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.space, other.space, "space mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    fn neg(&self) -> Self {
        PhaseFunction {
            space: self.space,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.space, other.space, "space mismatch");
        let mut out = PhaseFunction::zero(self.space);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m: Mono = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(m, &(c1 * c2));
            }
        }
        out
    }

    fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return PhaseFunction::zero(self.space);
        }
        PhaseFunction {
            space: self.space,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    /// A function is invertible in its monomial class exactly when it is a
    /// single monomial whose negated exponent vector is still admissible
    /// (Fourier exponents may flip sign; polynomial ones must be zero).
    fn try_inv(&self) -> Result<Self> {
        if self.terms.len() != 1 {
            return Err(Error::Inversion(
                "only single monomials are invertible in this function class".into(),
            ));
        }
        let (m, c) = self.terms.iter().next().unwrap();
        let inv_mono: Mono = m.iter().map(|e| -e).collect();
        if !self.space.valid_mono(&inv_mono) {
            return Err(Error::Inversion(format!(
                "monomial {m:?} has no inverse in its function class"
            )));
        }
        Ok(PhaseFunction::monomial(self.space, inv_mono, c.inv()?))
    }
}

impl fmt::Display for PhaseFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, e)| **e != 0)
                .map(|(pos, e)| {
                    let name = self.space.var_name(pos);
                    if *e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "({c})*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pointwise_product_adds_exponents() {
        let z = PhaseFunction::coordinate(Space::Torus, 0);
        let p = PhaseFunction::coordinate(Space::Torus, 2);
        let zp = z.mul(&p);
        assert_eq!(zp.coeff(&vec![1, 0, 1, 0]), Scalar::one());
    }

    #[test]
    fn fourier_monomials_invert() {
        let z = PhaseFunction::coordinate(Space::Torus, 0);
        let zi = z.try_inv().unwrap();
        assert_eq!(z.mul(&zi), PhaseFunction::one(Space::Torus));
        let p = PhaseFunction::coordinate(Space::Torus, 2);
        assert!(p.try_inv().is_err());
        assert!(z.add(&p).try_inv().is_err());
    }

    #[test]
    fn derivatives() {
        // d/dphi z^2 = 2i z^2, d/dp p^3 = 3 p^2
        let mut f = PhaseFunction::zero(Space::Torus);
        f.add_term(vec![2, 0, 0, 0], &Scalar::one());
        let df = f.deriv_angle(0);
        assert_eq!(
            df.coeff(&vec![2, 0, 0, 0]),
            Scalar::i().scale_rat(&crate::scalars::Rat::from_integer(2.into()))
        );
        let mut g = PhaseFunction::zero(Space::Torus);
        g.add_term(vec![0, 0, 3, 0], &Scalar::one());
        assert_eq!(g.deriv_poly(2).coeff(&vec![0, 0, 2, 0]), Scalar::from_int(3));
    }

    #[test]
    fn display_is_sorted_and_stable() {
        let mut f = PhaseFunction::zero(Space::Torus);
        f.add_term(vec![1, 0, 0, 0], &Scalar::one());
        f.add_term(vec![-1, 2, 1, 0], &Scalar::from_int(3));
        assert_eq!(f.to_string(), "(3)*z^-1*w^2*p + z");
    }
}
