//! Eta-quotient modularity machinery: weights, the mod-24 conditions,
//! Nebentypus characters via Kronecker symbols, and Ligozat cusp orders.
//!
//! Holomorphy is checked per cusp denominator `d | N`, not per
//! representative `c/d`: the Ligozat order formula depends on the cusp
//! only through `d`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::mex;
use crate::report::Verdict;
use crate::{Rational, TruncSeries};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EtaError {
    #[error("invalid eta quotient: {0}")]
    InvalidQuotient(String),
    #[error("character requires integral weight")]
    NotIntegralWeight,
    #[error("{d} does not divide {n}")]
    InvalidDivisor { d: u64, n: u64 },
    #[error("k must be >= 1 (the k = 0 quotient fails the mod-24 condition)")]
    InvalidK,
}

/// The Kronecker symbol `(a|n)`, extending the Jacobi and Legendre symbols
/// with the standard conventions at 2, -1, and 0.
pub fn kronecker(a: i64, n: i64) -> i32 {
    kronecker_big(&BigInt::from(a), n)
}

pub fn kronecker_big(a: &BigInt, n: i64) -> i32 {
    if n == 0 {
        return if a.abs() == BigInt::from(1) { 1 } else { 0 };
    }
    let mut result = 1i32;
    let mut n = n;
    if n < 0 {
        n = -n;
        if a.is_negative() {
            result = -result;
        }
    }
    while n % 2 == 0 {
        n /= 2;
        match (a % 8i64).to_i64().map(|r| (r + 8) % 8).unwrap() {
            1 | 7 => {}
            3 | 5 => result = -result,
            _ => return 0, // a even
        }
    }
    // Jacobi symbol for odd positive n
    let a = ((a % n) + n) % n;
    let mut a = a.to_i64().unwrap();
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut d: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    d.sort_unstable();
    d
}

/// `prod_{delta | N} eta(delta z)^{r_delta}`. Only nonzero exponents are
/// stored; absent divisors mean exponent 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaQuotient {
    level: u64,
    exponents: BTreeMap<u64, i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LigozatConditions {
    /// `sum delta * r_delta`
    pub sum_a: i64,
    /// `sum (N/delta) * r_delta`
    pub sum_b: i64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Holomorphy {
    pub ok: bool,
    pub weight: Rational,
    pub level: u64,
    pub character: String,
    pub failing_cusp: Option<u64>,
}

impl EtaQuotient {
    pub fn new(level: u64, exponents: &[(u64, i64)]) -> Result<Self, EtaError> {
        let mut map = BTreeMap::new();
        for &(d, r) in exponents {
            if d == 0 || level % d != 0 {
                return Err(EtaError::InvalidQuotient(format!(
                    "{d} does not divide the level {level}"
                )));
            }
            if r != 0 {
                *map.entry(d).or_insert(0) += r;
            }
        }
        map.retain(|_, r| *r != 0);
        if map.is_empty() {
            return Err(EtaError::InvalidQuotient(
                "at least one exponent must be nonzero".to_string(),
            ));
        }
        Ok(EtaQuotient {
            level,
            exponents: map,
        })
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn exponent(&self, delta: u64) -> i64 {
        self.exponents.get(&delta).copied().unwrap_or(0)
    }

    /// `(1/2) sum r_delta`, always computed from the exponents.
    pub fn weight(&self) -> Rational {
        Rational::new(self.exponents.values().sum::<i64>(), 2)
    }

    pub fn ligozat_conditions(&self) -> LigozatConditions {
        let sum_a: i64 = self.exponents.iter().map(|(&d, &r)| d as i64 * r).sum();
        let sum_b: i64 = self
            .exponents
            .iter()
            .map(|(&d, &r)| (self.level / d) as i64 * r)
            .sum();
        let w = self.weight();
        let ok = sum_a % 24 == 0
            && sum_b % 24 == 0
            && w.is_integer()
            && w > Rational::new(0, 1);
        LigozatConditions { sum_a, sum_b, ok }
    }

    /// Nebentypus character `chi(d) = ((-1)^l s | d)` with
    /// `s = prod delta^{r_delta}` kept as an exact integer. Negative
    /// exponents are folded to positive ones: `(x^{-1}|d) = (x|d)` for
    /// `d` coprime to `x`.
    pub fn character(&self, d: i64) -> Result<i32, EtaError> {
        let w = self.weight();
        if !w.is_integer() {
            return Err(EtaError::NotIntegralWeight);
        }
        let mut s = BigInt::from(1);
        for (&delta, &r) in &self.exponents {
            s *= BigInt::from(delta).pow(r.unsigned_abs() as u32);
        }
        if w.to_integer() % 2 != 0 {
            s = -s;
        }
        Ok(kronecker_big(&s, d))
    }

    /// Squarefree kernel of `(-1)^l s`; `1` means the trivial character.
    fn character_kernel(&self) -> Result<i64, EtaError> {
        let w = self.weight();
        if !w.is_integer() {
            return Err(EtaError::NotIntegralWeight);
        }
        let mut parity: BTreeMap<u64, u32> = BTreeMap::new();
        for (&delta, &r) in &self.exponents {
            let mut d = delta;
            let mut p = 2;
            while p * p <= d {
                while d % p == 0 {
                    *parity.entry(p).or_insert(0) += r.unsigned_abs() as u32 & 1;
                    d /= p;
                }
                p += 1;
            }
            if d > 1 {
                *parity.entry(d).or_insert(0) += r.unsigned_abs() as u32 & 1;
            }
        }
        let mut kernel: i64 = if w.to_integer() % 2 != 0 { -1 } else { 1 };
        for (p, e) in parity {
            if e % 2 == 1 {
                kernel *= p as i64;
            }
        }
        Ok(kernel)
    }

    /// Ligozat's order of vanishing at any cusp `c/d`:
    /// `(N/24) sum gcd(d,delta)^2 r_delta / (gcd(d,N/d) d delta)`.
    pub fn cusp_order(&self, d: u64) -> Result<Rational, EtaError> {
        if d == 0 || self.level % d != 0 {
            return Err(EtaError::InvalidDivisor { d, n: self.level });
        }
        let n = self.level as i64;
        let d = d as i64;
        let mut sum = Rational::new(0, 1);
        for (&delta, &r) in &self.exponents {
            let delta = delta as i64;
            let g = d.gcd(&delta);
            sum += Rational::new(g * g * r, d.gcd(&(n / d)) * d * delta);
        }
        Ok(sum * Rational::new(n, 24))
    }

    /// `ok` iff the mod-24/weight conditions hold and the order of
    /// vanishing is nonnegative at every cusp denominator.
    pub fn is_holomorphic_modular_form(&self) -> Holomorphy {
        let lig = self.ligozat_conditions();
        let weight = self.weight();
        let character = match self.character_kernel() {
            Err(_) => "undefined (non-integral weight)".to_string(),
            Ok(1) => "trivial".to_string(),
            Ok(k) => format!("kronecker({k}|.)"),
        };
        let mut failing_cusp = None;
        for d in divisors(self.level) {
            let ord = self.cusp_order(d).unwrap();
            if ord < Rational::new(0, 1) {
                failing_cusp = Some(d);
                break;
            }
        }
        Holomorphy {
            ok: lig.ok && failing_cusp.is_none(),
            weight,
            level: self.level,
            character,
            failing_cusp,
        }
    }
}

/// `A_k(z) = eta^{2^{k+1}-2}(12z) / eta^{2^k-2}(24z)` at level 288.
pub fn build_a_k(k: u32) -> Result<EtaQuotient, EtaError> {
    if k < 1 {
        return Err(EtaError::InvalidK);
    }
    let e = (1i64 << (k + 1)) - 2;
    let f = (1i64 << k) - 2;
    EtaQuotient::new(288, &[(12, e), (24, -f)])
}

/// `B*(z) = eta^2(12z)` at level 144.
pub fn build_b_star() -> EtaQuotient {
    EtaQuotient::new(144, &[(12, 2)]).unwrap()
}

/// `S = gcd(d,12)^2 (2^{k+1} - 2) + gcd(d,24)^2 (1 - 2^{k-1})`, the sign
/// quantity of the holomorphy reduction for `A_k`; defined for `d | 288`.
pub fn s_value(k: u32, d: u64) -> Result<i64, EtaError> {
    if k < 1 {
        return Err(EtaError::InvalidK);
    }
    if d == 0 || 288 % d != 0 {
        return Err(EtaError::InvalidDivisor { d, n: 288 });
    }
    let d = d as i64;
    let g12 = d.gcd(&12);
    let g24 = d.gcd(&24);
    Ok(g12 * g12 * ((1 << (k + 1)) - 2) + g24 * g24 * (1 - (1 << (k - 1))))
}

/// Verify `A_k(z) == A*(z) (mod 2^{k+1})` as q-series to the given order,
/// together with the auxiliary congruence
/// `eta^{2^{k+1}}(12z) / eta^{2^k}(24z) == 1 (mod 2^{k+1})`.
///
/// Both sides are expanded in the compressed variable `u = q^12`; the
/// eta prefactors `q^{delta/24}` combine to the single integral shift
/// `q^1` (integral by the mod-24 conditions), applied at the end.
pub fn congruence_witness(k: u32, order: usize) -> Result<Verdict, EtaError> {
    if k < 1 {
        return Err(EtaError::InvalidK);
    }
    let modulus = BigInt::from(1i64 << (k + 1));
    let inner = order.saturating_sub(1) / 12;
    let e = (1u32 << (k + 1)) - 2;
    let f = (1u32 << k) - 2;

    // A* = sum alpha(n) q^{12n+1}, alpha from f_2^2/f_1^2
    let alpha = mex::sigma_mex_series(inner);
    let mut star = vec![BigInt::zero(); order + 1];
    for n in 0..=inner {
        star[12 * n + 1] = alpha.coeff(n).clone();
    }
    let a_star = TruncSeries::from_coeffs(star);

    // A_k in u = q^12: (u;u)^{2^{k+1}-2} (u^2;u^2)^{-(2^k-2)}
    let u1 = TruncSeries::pochhammer(1, inner);
    let u2 = TruncSeries::pochhammer(2, inner);
    let compressed = u1
        .pow(e)
        .mul(&u2.pow(f).invert().expect("unit constant term"));
    let mut a_k = vec![BigInt::zero(); order + 1];
    for n in 0..=inner {
        a_k[12 * n + 1] = compressed.coeff(n).clone();
    }
    let a_k = TruncSeries::from_coeffs(a_k);

    let diff = a_k.sub(&a_star).reduce_mod(&modulus);
    if let Some(n) = (0..=order).find(|&i| !diff.coeff(i).is_zero()) {
        return Ok(Verdict::Fail {
            n,
            value: diff.coeff(n).to_string(),
        });
    }

    // auxiliary: eta^{2^{k+1}}(12z)/eta^{2^k}(24z) == 1, no prefactor
    let aux = u1
        .pow(1 << (k + 1))
        .mul(&u2.pow(1 << k).invert().expect("unit constant term"));
    let aux_diff = aux
        .sub(&TruncSeries::one(inner))
        .reduce_mod(&modulus);
    if let Some(n) = (0..=inner).find(|&i| !aux_diff.coeff(i).is_zero()) {
        return Ok(Verdict::Fail {
            n: 12 * n,
            value: aux_diff.coeff(n).to_string(),
        });
    }

    Ok(Verdict::Pass {
        checked: order + 1 + inner + 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(-1, 3), -1);
        assert_eq!(kronecker(-1, 5), 1);
        assert_eq!(kronecker(-144, 7), -1);
        assert_eq!(kronecker(2, 7), 1);
        assert_eq!(kronecker(2, 3), -1);
        assert_eq!(kronecker(6, 3), 0);
    }

    fn legendre(a: i64, p: i64) -> i32 {
        // Euler's criterion by brute force
        let a = ((a % p) + p) % p;
        if a == 0 {
            return 0;
        }
        (1..p).find(|x| (x * x) % p == a).map_or(-1, |_| 1)
    }

    #[test]
    fn kronecker_matches_legendre_at_odd_primes() {
        for &p in &[3i64, 5, 7, 11, 13, 17, 19] {
            for a in 1..=50 {
                assert_eq!(kronecker(a, p), legendre(a, p), "({a}|{p})");
            }
        }
    }

    #[test]
    fn kronecker_multiplicative() {
        for a in 1..=40i64 {
            for b in 1..=40i64 {
                for n in 1..=40i64 {
                    assert_eq!(kronecker(a * b, n), kronecker(a, n) * kronecker(b, n));
                }
            }
        }
        for a in 1..=40i64 {
            for n in 1..=20i64 {
                for m in 1..=20i64 {
                    assert_eq!(kronecker(a, n * m), kronecker(a, n) * kronecker(a, m));
                }
            }
        }
    }

    #[test]
    fn weight_examples() {
        assert_eq!(build_b_star().weight(), Rational::new(1, 1));
        for k in 1..=6 {
            assert_eq!(
                build_a_k(k).unwrap().weight(),
                Rational::new(1 << (k - 1), 1)
            );
        }
        let eta = EtaQuotient::new(1, &[(1, 1)]).unwrap();
        assert_eq!(eta.weight(), Rational::new(1, 2));
    }

    #[test]
    fn ligozat_examples() {
        let b = build_b_star().ligozat_conditions();
        assert_eq!((b.sum_a, b.sum_b, b.ok), (24, 24, true));
        for k in 1..=6 {
            let l = build_a_k(k).unwrap().ligozat_conditions();
            assert_eq!(l.sum_a, 24);
            assert_eq!(l.sum_b, 36 * (1 << k) - 24);
            assert!(l.ok);
        }
    }

    #[test]
    fn character_examples() {
        let b = build_b_star();
        for d in [1i64, 5, 13, 25, 29] {
            assert_eq!(b.character(d).unwrap(), 1, "d = {d}");
        }
        assert_eq!(b.character(7).unwrap(), -1);
        for k in 2..=6 {
            let a = build_a_k(k).unwrap();
            for d in [1i64, 5, 7, 11, 13, 25] {
                assert_eq!(a.character(d).unwrap(), 1);
            }
            assert_eq!(a.is_holomorphic_modular_form().character, "trivial");
        }
        // A_1 = eta^2(12z) carries the same character as B*
        let a1 = build_a_k(1).unwrap();
        assert_eq!(a1.character(7).unwrap(), -1);
    }

    #[test]
    fn cusp_order_examples() {
        let b = build_b_star();
        assert_eq!(b.cusp_order(1).unwrap(), Rational::new(1, 1));
        assert_eq!(b.cusp_order(144).unwrap(), Rational::new(1, 1));
        for k in 1..=6 {
            let a = build_a_k(k).unwrap();
            assert_eq!(a.cusp_order(8).unwrap(), Rational::new(1, 1));
        }
    }

    #[test]
    fn s_table_rows() {
        for k in 1..=6u32 {
            let c = 3 * (1i64 << (k - 1)) - 1;
            let expected: &[(&[u64], i64)] = &[
                (&[1], c),
                (&[2], 4 * c),
                (&[4], 16 * c),
                (&[8, 16, 32], 32),
                (&[3, 9], 9 * c),
                (&[6, 18], 36 * c),
                (&[12, 36], 144 * c),
                (&[24, 48, 72, 96, 144, 288], 288),
            ];
            for (ds, s) in expected {
                for &d in *ds {
                    assert_eq!(s_value(k, d).unwrap(), *s, "k={k}, d={d}");
                }
            }
        }
        assert!(s_value(1, 5).is_err());
        assert!(s_value(0, 1).is_err());
    }

    #[test]
    fn holomorphy_verdicts() {
        let b = build_b_star().is_holomorphic_modular_form();
        assert!(b.ok);
        assert_eq!(b.weight, Rational::new(1, 1));
        assert_eq!(b.level, 144);
        for k in 1..=6 {
            assert!(build_a_k(k).unwrap().is_holomorphic_modular_form().ok);
        }
        let bad = EtaQuotient::new(1, &[(1, -1)]).unwrap().is_holomorphic_modular_form();
        assert!(!bad.ok);
        assert_eq!(bad.failing_cusp, Some(1));
    }

    #[test]
    fn build_examples() {
        let a1 = build_a_k(1).unwrap();
        assert_eq!((a1.level(), a1.exponent(12), a1.exponent(24)), (288, 2, 0));
        let a3 = build_a_k(3).unwrap();
        assert_eq!((a3.exponent(12), a3.exponent(24)), (14, -6));
        assert!(build_a_k(0).is_err());
        let b = build_b_star();
        assert_eq!((b.level(), b.exponent(12)), (144, 2));
    }

    #[test]
    fn congruence_witness_small() {
        assert!(congruence_witness(1, 300).unwrap().is_pass());
        assert!(congruence_witness(2, 300).unwrap().is_pass());
    }

    #[test]
    fn cusp_order_level_embedding() {
        // the width-normalized order (ord * gcd(d^2, N) / N) is intrinsic
        for delta in divisors(24) {
            for &n in &[24u64, 48, 144, 288] {
                let e = EtaQuotient::new(n, &[(delta, 1)]).unwrap();
                let base = EtaQuotient::new(24, &[(delta, 1)]).unwrap();
                for d in divisors(24) {
                    let gd = (d * d).gcd(&n);
                    let norm = e.cusp_order(d).unwrap() * Rational::new(gd as i64, n as i64);
                    let gd0 = (d * d).gcd(&24);
                    let norm0 =
                        base.cusp_order(d).unwrap() * Rational::new(gd0 as i64, 24);
                    assert_eq!(norm, norm0, "delta={delta}, N={n}, d={d}");
                }
            }
        }
    }
}
