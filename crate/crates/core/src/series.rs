//! Exact truncated power-series arithmetic in `q`.
//!
//! A [`Series`] holds coefficients of `q^0 .. q^N` for an explicit truncation
//! order `N`. All arithmetic is exact; binary operations require equal orders
//! rather than silently truncating to the minimum. The coefficient type is
//! generic over [`Coeff`]; the crate root exposes the arbitrary-precision
//! alias [`crate::TruncSeries`] used everywhere congruences are checked.

use std::fmt;

use num_traits::Signed;
use thiserror::Error;

/// Coefficient scalar for [`Series`]: any exact signed ring element
/// (`BigInt`, `i64`, ...). Multiplication must not round.
pub trait Coeff: Signed + Clone + PartialEq + fmt::Debug + fmt::Display {}
impl<T> Coeff for T where T: Signed + Clone + PartialEq + fmt::Debug + fmt::Display {}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SeriesError {
    /// `invert` needs a unit constant term (`+1` or `-1`).
    #[error("constant term is not a unit (+1/-1)")]
    InvalidUnit,
    /// Exact division failed; carries the first offending index.
    #[error("coefficient of q^{0} is not divisible")]
    NotDivisible(usize),
}

/// Truncated formal power series: `coeffs[i]` is the coefficient of `q^i`,
/// `coeffs.len() == order + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series<C: Coeff> {
    order: usize,
    coeffs: Vec<C>,
}

impl<C: Coeff> Series<C> {
    pub fn zero(order: usize) -> Self {
        Series {
            order,
            coeffs: vec![C::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = C::one();
        s
    }

    /// `c * q^exp`, truncated at `order` (zero if `exp > order`).
    pub fn monomial(c: C, exp: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if exp <= order {
            s.coeffs[exp] = c;
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a series has at least the q^0 coefficient");
        Series {
            order: coeffs.len() - 1,
            coeffs,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, i: usize) -> &C {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn nonzero_indices(&self) -> Vec<usize> {
        (0..=self.order)
            .filter(|&i| !self.coeffs[i].is_zero())
            .collect()
    }

    /// Euler product `(q^m; q^m)_inf` truncated at `order`, built sparsely
    /// from the generalized pentagonal exponents `m*j(3j±1)/2`.
    pub fn pochhammer(m: usize, order: usize) -> Self {
        assert!(m >= 1, "pochhammer: m must be positive");
        let mut s = Self::zero(order);
        s.coeffs[0] = C::one();
        // j = 1, 2, ... gives exponents j(3j-1)/2 and j(3j+1)/2, sign (-1)^j.
        let mut j: usize = 1;
        loop {
            let g1 = m * (j * (3 * j - 1) / 2);
            if g1 > order {
                break;
            }
            let sign = if j % 2 == 1 { -C::one() } else { C::one() };
            s.coeffs[g1] = sign.clone();
            let g2 = m * (j * (3 * j + 1) / 2);
            if g2 <= order {
                s.coeffs[g2] = sign;
            }
            j += 1;
        }
        s
    }

    /// `(q^a; q^b)_inf = prod_{j>=0} (1 - q^{a+jb})` truncated at `order`,
    /// by iterated multiplication of the finitely many relevant factors.
    pub fn pochhammer_general(a: usize, b: usize, order: usize) -> Self {
        assert!(a >= 1 && b >= 1, "pochhammer_general: a, b must be positive");
        let mut s = Self::one(order);
        let mut e = a;
        while e <= order {
            // multiply in place by (1 - q^e)
            for i in (e..=order).rev() {
                let t = s.coeffs[i - e].clone();
                s.coeffs[i] = s.coeffs[i].clone() - t;
            }
            e += b;
        }
        s
    }

    /// Cauchy product truncated at the common order. Iterates the sparser
    /// operand on the outside, so pentagonal-type factors cost
    /// `O(N * nnz)` rather than `O(N^2)`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order, "mul: order mismatch");
        let (sparse, dense) = if self.nonzero_indices().len() <= other.nonzero_indices().len() {
            (self, other)
        } else {
            (other, self)
        };
        let n = self.order;
        let mut out = Self::zero(n);
        for i in sparse.nonzero_indices() {
            let a = &sparse.coeffs[i];
            for j in 0..=(n - i) {
                let b = &dense.coeffs[j];
                if b.is_zero() {
                    continue;
                }
                out.coeffs[i + j] = out.coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        out
    }

    /// `self^e` by repeated squaring.
    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(self.order);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Multiplicative inverse to the truncation order, by the forward
    /// recurrence `b_n = -a_0^{-1} sum_{j>=1} a_j b_{n-j}`. Exact over the
    /// integers because the constant term is a unit. The sum runs over the
    /// nonzero `a_j` only, so inverting a pentagonal series costs
    /// `O(N sqrt(N))` coefficient operations.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let a0 = &self.coeffs[0];
        if !(a0.clone() == C::one() || a0.clone() == -C::one()) {
            return Err(SeriesError::InvalidUnit);
        }
        let n = self.order;
        let nz: Vec<usize> = self.nonzero_indices().into_iter().filter(|&j| j > 0).collect();
        let mut b = Self::zero(n);
        b.coeffs[0] = a0.clone(); // a0^{-1} == a0 for a unit
        for i in 1..=n {
            let mut acc = C::zero();
            for &j in &nz {
                if j > i {
                    break;
                }
                acc = acc + self.coeffs[j].clone() * b.coeffs[i - j].clone();
            }
            b.coeffs[i] = -(a0.clone() * acc);
        }
        Ok(b)
    }

    /// `alpha * self + beta * other`, coefficientwise.
    pub fn add_scaled(&self, other: &Self, alpha: &C, beta: &C) -> Self {
        assert_eq!(self.order, other.order, "add_scaled: order mismatch");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| alpha.clone() * a.clone() + beta.clone() * b.clone())
            .collect();
        Series {
            order: self.order,
            coeffs,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(other, &C::one(), &C::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(other, &C::one(), &-C::one())
    }

    pub fn scale(&self, alpha: &C) -> Self {
        let coeffs = self.coeffs.iter().map(|a| alpha.clone() * a.clone()).collect();
        Series {
            order: self.order,
            coeffs,
        }
    }

    /// Exact coefficientwise division by 2; every coefficient must be even.
    pub fn halve(&self) -> Result<Self, SeriesError> {
        let two = C::one() + C::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            if !(c.clone() % two.clone()).is_zero() {
                return Err(SeriesError::NotDivisible(i));
            }
            coeffs.push(c.clone() / two.clone());
        }
        Ok(Series {
            order: self.order,
            coeffs,
        })
    }

    /// Extract the arithmetic progression `mn + r`: returns `T` with
    /// `T[n] = self[mn + r]`, truncated at `floor((N - r) / m)`.
    pub fn dissect(&self, m: usize, r: usize) -> Self {
        assert!(m >= 1 && r < m, "dissect: residue must satisfy 0 <= r < m");
        assert!(r <= self.order, "dissect: residue exceeds order");
        let t_order = (self.order - r) / m;
        let coeffs = (0..=t_order).map(|n| self.coeffs[m * n + r].clone()).collect();
        Series {
            order: t_order,
            coeffs,
        }
    }

    /// `A(q^t)` at the same outer order: coefficient of `q^{tj}` is `A[j]`.
    pub fn substitute_power(&self, t: usize) -> Self {
        assert!(t >= 1, "substitute_power: t must be positive");
        let mut s = Self::zero(self.order);
        for j in 0..=self.order {
            let e = j * t;
            if e > self.order {
                break;
            }
            s.coeffs[e] = self.coeffs[j].clone();
        }
        s
    }

    /// Multiply by `q^r` at the same order; top coefficients fall off.
    pub fn shift_up(&self, r: usize) -> Self {
        let mut s = Self::zero(self.order);
        for i in 0..=self.order {
            if i + r > self.order {
                break;
            }
            s.coeffs[i + r] = self.coeffs[i].clone();
        }
        s
    }

    /// Reduce every coefficient into the least non-negative residue `[0, M)`.
    pub fn reduce_mod(&self, modulus: &C) -> Self {
        assert!(
            !(modulus.clone() - (C::one() + C::one())).is_negative(),
            "reduce_mod: modulus must be >= 2"
        );
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| ((c.clone() % modulus.clone()) + modulus.clone()) % modulus.clone())
            .collect();
        Series {
            order: self.order,
            coeffs,
        }
    }

    /// Same coefficients, truncated down to `order <= self.order`.
    pub fn truncated(&self, order: usize) -> Self {
        assert!(order <= self.order, "truncated: can only lower the order");
        Series {
            order,
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }
}

impl<C: Coeff + From<i64>> Series<C> {
    /// Convenience constructor from machine-word coefficients.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| C::from(c)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type S = Series<BigInt>;

    #[test]
    fn pochhammer_pentagonal() {
        // (q;q)_inf = 1 - q - q^2 + q^5 + q^7 - ...
        assert_eq!(S::pochhammer(1, 7), S::from_ints(&[1, -1, -1, 0, 0, 1, 0, 1]));
        assert_eq!(S::pochhammer(2, 5), S::from_ints(&[1, 0, -1, 0, -1, 0]));
        assert_eq!(S::pochhammer(1, 0), S::from_ints(&[1]));
    }

    #[test]
    fn pochhammer_general_examples() {
        let s = S::pochhammer_general(1, 5, 6);
        assert_eq!(s.coeff(0), &BigInt::from(1));
        assert_eq!(s.coeff(1), &BigInt::from(-1));
        assert_eq!(s.coeff(6), &BigInt::from(-1));
        // (q^4; q^5) to order 8: only the factor (1 - q^4) contributes.
        let s = S::pochhammer_general(4, 5, 8);
        assert_eq!(s.coeff(4), &BigInt::from(-1));
        assert_eq!(s.coeff(8), &BigInt::from(0));
        // definitional coincidence with pochhammer
        for m in 1..=4 {
            assert_eq!(S::pochhammer(m, 40), S::pochhammer_general(m, m, 40));
        }
    }

    #[test]
    fn mul_examples() {
        let f1 = S::pochhammer(1, 5);
        assert_eq!(f1.mul(&f1), S::from_ints(&[1, -2, -1, 2, 1, 2]));
        assert_eq!(f1.mul(&S::one(5)), f1);
        let a = S::from_ints(&[1, 1, 0]);
        let b = S::from_ints(&[1, -1, 0]);
        assert_eq!(a.mul(&b), S::from_ints(&[1, 0, -1]));
    }

    #[test]
    fn invert_partition_numbers() {
        let p = S::pochhammer(1, 8).invert().unwrap();
        assert_eq!(p, S::from_ints(&[1, 1, 2, 3, 5, 7, 11, 15, 22]));
        assert_eq!(S::one(4).invert().unwrap(), S::one(4));
    }

    #[test]
    fn invert_distinct_part_pairs() {
        // f2^2 / f1^2 = ((-q;q)_inf)^2 counts pairs of distinct-part partitions.
        let n = 4;
        let f1 = S::pochhammer(1, n);
        let f2 = S::pochhammer(2, n);
        let s = f1.pow(2).invert().unwrap().mul(&f2.pow(2));
        assert_eq!(s, S::from_ints(&[1, 2, 3, 6, 9]));
    }

    #[test]
    fn invert_rejects_non_unit() {
        let s = S::from_ints(&[2, 1]);
        assert_eq!(s.invert(), Err(SeriesError::InvalidUnit));
    }

    #[test]
    fn add_scaled_and_halve() {
        let a = S::from_ints(&[1, 2, 3]);
        assert!(a.add_scaled(&a, &BigInt::from(1), &BigInt::from(-1)).is_zero());
        let b = S::from_ints(&[1, -2, -1]);
        assert_eq!(
            a.add(&b),
            S::from_ints(&[2, 0, 2])
        );
        assert_eq!(a.sub(&b), S::from_ints(&[0, 4, 4]));
        assert_eq!(
            S::from_ints(&[2, 4]).halve().unwrap(),
            S::from_ints(&[1, 2])
        );
        assert_eq!(
            S::from_ints(&[1, 1]).halve(),
            Err(SeriesError::NotDivisible(0))
        );
    }

    #[test]
    fn dissect_pentagonal_residues() {
        // generalized pentagonal numbers are 0, 1, 2 (mod 5)
        let f1 = S::pochhammer(1, 50);
        assert!(f1.dissect(5, 3).is_zero());
        assert!(f1.dissect(5, 4).is_zero());
        assert_eq!(f1.dissect(1, 0), f1);
    }

    #[test]
    fn substitute_power_examples() {
        let s = S::from_ints(&[1, 1, 0, 0, 0]);
        assert_eq!(s.substitute_power(2), S::from_ints(&[1, 0, 1, 0, 0]));
        assert_eq!(s.substitute_power(1), s);
        let f1 = S::pochhammer(1, 30);
        assert_eq!(
            f1.truncated(15).substitute_power(2).coeffs()[..16],
            S::pochhammer(2, 30).coeffs()[..16]
        );
    }

    #[test]
    fn reduce_mod_representatives() {
        let s = S::from_ints(&[1, -2, -1]);
        assert_eq!(s.reduce_mod(&BigInt::from(4)), S::from_ints(&[1, 2, 3]));
        assert!(S::zero(5).reduce_mod(&BigInt::from(7)).is_zero());
    }

    #[test]
    fn shift_up_drops_overflow() {
        let s = S::from_ints(&[1, 2, 3]);
        assert_eq!(s.shift_up(1), S::from_ints(&[0, 1, 2]));
        assert_eq!(s.shift_up(4), S::zero(2));
    }
}
