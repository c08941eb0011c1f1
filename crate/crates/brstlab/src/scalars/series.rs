//! Truncated formal power series in the deformation parameter.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::Scalar;

/// Payload a series can be taken over: the field scalars themselves, or a
/// function-algebra element. The payload product is the *commutative*
/// (pointwise/undeformed) one; deformed products are built a level up by
/// bilinear extension with explicit parameter weights.
pub trait Payload: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, s: &Scalar) -> Self;
    /// Multiplicative inverse in the payload algebra, if one exists.
    fn try_inv(&self) -> Result<Self>;
}

impl Payload for Scalar {
    fn zero_like(&self) -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, s: &Scalar) -> Self {
        self * s
    }
    fn try_inv(&self) -> Result<Self> {
        self.inv()
    }
}

/// A formal power series truncated at a fixed order: `coeffs[r]` is the
/// coefficient of the r-th power of the parameter, `0 <= r <= order`.
/// All arithmetic truncates identically at that order.
#[derive(Clone, PartialEq, Debug)]
pub struct Series<T: Payload> {
    order: usize,
    coeffs: Vec<T>,
}

impl<T: Payload> Series<T> {
    /// Build from explicit coefficients; the vector length fixes the order.
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the constant term");
        Series {
            order: coeffs.len() - 1,
            coeffs,
        }
    }

    /// A series that is the given payload in degree zero.
    pub fn constant(order: usize, value: T) -> Self {
        let z = value.zero_like();
        let mut coeffs = vec![z; order + 1];
        coeffs[0] = value;
        Series { order, coeffs }
    }

    /// A single payload sitting at parameter degree `k` (zero if `k > order`).
    pub fn monomial(order: usize, k: usize, value: T) -> Self {
        let z = value.zero_like();
        let mut coeffs = vec![z; order + 1];
        if k <= order {
            coeffs[k] = value;
        }
        Series { order, coeffs }
    }

    pub fn zero(order: usize, zero: T) -> Self {
        Series {
            order,
            coeffs: vec![zero; order + 1],
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, r: usize) -> &T {
        &self.coeffs[r]
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn zero_payload(&self) -> T {
        self.coeffs[0].zero_like()
    }

    pub fn map<U: Payload>(&self, f: impl Fn(&T) -> U) -> Series<U> {
        Series {
            order: self.order,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &Series<T>) -> Series<T> {
        assert_eq!(self.order, other.order, "series order mismatch in add");
        Series {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Series<T>) -> Series<T> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Series<T> {
        self.map(|c| c.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Series<T> {
        self.map(|c| c.scale(s))
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Series<T>) -> Result<Series<T>> {
        if self.order != other.order {
            return Err(Error::config(format!(
                "series order mismatch: {} vs {}",
                self.order, other.order
            )));
        }
        let zero = self.zero_payload();
        let mut coeffs = vec![zero; self.order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > self.order {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Ok(Series {
            order: self.order,
            coeffs,
        })
    }

    /// Multiplicative inverse at the same truncation order. Requires an
    /// invertible constant term; the higher coefficients are produced by the
    /// usual recursion `b_k = -a_0^{-1} * sum_{j=1..k} a_j b_{k-j}`.
    pub fn invert(&self) -> Result<Series<T>> {
        let a0_inv = self.coeffs[0].try_inv().map_err(|e| {
            Error::Inversion(format!("leading series coefficient not invertible: {e}"))
        })?;
        let mut inv: Vec<T> = Vec::with_capacity(self.order + 1);
        inv.push(a0_inv.clone());
        for k in 1..=self.order {
            let mut acc = self.zero_payload();
            for j in 1..=k {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                acc = acc.add(&self.coeffs[j].mul(&inv[k - j]));
            }
            inv.push(a0_inv.mul(&acc).neg());
        }
        Ok(Series {
            order: self.order,
            coeffs: inv,
        })
    }

    /// Division by the formal parameter. Defined only when the constant term
    /// vanishes; the representable order drops by one and the caller is
    /// responsible for the lost top order.
    pub fn lambda_divide(&self) -> Result<Series<T>> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Division(
                "nonzero constant term in division by the deformation parameter".into(),
            ));
        }
        if self.order == 0 {
            return Err(Error::Division(
                "cannot divide a zero-order series by the deformation parameter".into(),
            ));
        }
        Ok(Series {
            order: self.order - 1,
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    /// Multiply by the k-th power of the parameter (shift up, truncate).
    pub fn lambda_shift(&self, k: usize) -> Series<T> {
        let zero = self.zero_payload();
        let mut coeffs = vec![zero; self.order + 1];
        for (r, c) in self.coeffs.iter().enumerate() {
            if r + k > self.order {
                break;
            }
            coeffs[r + k] = c.clone();
        }
        Series {
            order: self.order,
            coeffs,
        }
    }

    /// Zero-pad to a higher order. Exact when the value is known as a
    /// polynomial in the parameter, which is how internal pipelines use it.
    pub fn raised(&self, by: usize) -> Series<T> {
        let zero = self.zero_payload();
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(self.order + by + 1, zero);
        Series {
            order: self.order + by,
            coeffs,
        }
    }

    /// Drop coefficients above `order`.
    pub fn truncated(&self, order: usize) -> Series<T> {
        assert!(order <= self.order, "cannot truncate upwards");
        Series {
            order,
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }
}

impl Series<Scalar> {
    pub fn scalar_zero(order: usize) -> Self {
        Series::zero(order, Scalar::zero())
    }

    pub fn scalar_one(order: usize) -> Self {
        Series::constant(order, Scalar::one())
    }

    /// The parameter itself, as a series.
    pub fn lambda(order: usize) -> Self {
        Series::monomial(order, 1, Scalar::one())
    }
}

impl<T: Payload + fmt::Display> fmt::Display for Series<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (r, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match r {
                0 => write!(f, "{c}")?,
                1 => write!(f, "L*({c})")?,
                _ => write!(f, "L^{r}*({c})")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[i64]) -> Series<Scalar> {
        Series::from_coeffs(v.iter().map(|&n| Scalar::from_int(n)).collect())
    }

    #[test]
    fn telescoping_product() {
        // (1 + L)(1 - L) at order 2 is 1 - L^2
        let a = s(&[1, 1, 0]);
        let b = s(&[1, -1, 0]);
        assert_eq!(a.mul(&b).unwrap(), s(&[1, 0, -1]));
    }

    #[test]
    fn one_is_neutral() {
        let a = s(&[3, -2, 5, 7]);
        assert_eq!(Series::scalar_one(3).mul(&a).unwrap(), a);
    }

    #[test]
    fn truncation_kills_top_product() {
        // L * L at order 1 is 0
        let l = Series::lambda(1);
        assert!(l.mul(&l).unwrap().is_zero());
    }

    #[test]
    fn order_mismatch_is_config_error() {
        let a = s(&[1, 1]);
        let b = s(&[1, 1, 1]);
        assert!(matches!(a.mul(&b), Err(Error::Config(_))));
    }

    #[test]
    fn geometric_inverse() {
        // invert(1 - L) at order 3 = 1 + L + L^2 + L^3
        let a = s(&[1, -1, 0, 0]);
        assert_eq!(a.invert().unwrap(), s(&[1, 1, 1, 1]));
    }

    #[test]
    fn invert_one_and_constants() {
        assert_eq!(
            Series::scalar_one(4).invert().unwrap(),
            Series::scalar_one(4)
        );
        let two = Series::constant(2, Scalar::from_int(2));
        assert_eq!(
            two.invert().unwrap(),
            Series::constant(2, Scalar::from_ratio(1, 2))
        );
    }

    #[test]
    fn non_invertible_leading_coefficient() {
        let a = s(&[0, 1]);
        assert!(matches!(a.invert(), Err(Error::Inversion(_))));
    }

    #[test]
    fn lambda_divide_shifts() {
        // L + L^2 -> 1 + L
        let a = s(&[0, 1, 1]);
        assert_eq!(a.lambda_divide().unwrap(), s(&[1, 1]));
        // 0 -> 0
        assert!(Series::scalar_zero(3).lambda_divide().unwrap().is_zero());
        // 1 + L -> error
        assert!(matches!(
            s(&[1, 1]).lambda_divide(),
            Err(Error::Division(_))
        ));
    }
}
