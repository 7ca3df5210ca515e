//! Generating functions for the mex sums and machine verification of the
//! congruence claims: the fixed congruences, the three infinite families,
//! the Cooper-Hirschhorn-Lewis coefficient relation for `f_1^2`, and exact
//! density scans for lacunarity experiments.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::report::Verdict;
use crate::series::SeriesError;
use crate::theta;
use crate::{Rational, TruncSeries};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MexError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error("prime {0} is not congruent to 5, 7, or 11 mod 12")]
    InvalidPrime(u64),
}

/// Which coefficient sequence a claim talks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    /// `sigma_o mex(n)`, the odd-mex sum.
    SigmaOdd,
    /// `sigma_e mex(n)`, the even-mex sum.
    SigmaEven,
    /// `sigma mex(n)`, the total.
    Sigma,
    /// `a(n)`, the coefficients of `f_1^2`.
    F1Sq,
}

impl SeriesKind {
    pub fn name(&self) -> &'static str {
        match self {
            SeriesKind::SigmaOdd => "G_o",
            SeriesKind::SigmaEven => "G_e",
            SeriesKind::Sigma => "sigma",
            SeriesKind::F1Sq => "f1sq",
        }
    }
}

/// `f_2^2 / f_1^2`, the sigma-mex generating function, computed through the
/// sparse route `f_2 * (f_1^2/f_2)^{-1}`: the inner series is the
/// alternating theta sum, so inversion costs `O(N sqrt N)` instead of the
/// dense `O(N^2)`. The theta identity feeding this is itself verified by
/// the dual-construction checks in [`crate::theta`] and by the brute-force
/// oracle below order 45.
pub fn sigma_mex_series(order: usize) -> TruncSeries {
    let phi_neg = theta::phi_neg_sum(order); // f_1^2 / f_2
    let inv = phi_neg.invert().expect("theta sum has unit constant term");
    inv.mul(&TruncSeries::pochhammer(2, order))
}

/// `f_1^2 = sum a(n) q^n` by sparse self-convolution of the pentagonal series.
pub fn f1sq_series(order: usize) -> TruncSeries {
    TruncSeries::pochhammer(1, order).pow(2)
}

/// The generating functions `G_o` and `G_e` of the odd-/even-mex sums:
/// `G_o = (f_2^2/f_1^2 + f_1^2)/2`, `G_e = (f_2^2/f_1^2 - f_1^2)/2`.
/// A `NotDivisible` error here would falsify the integrality of the
/// half-sum formulas.
pub fn g_series(order: usize) -> Result<(TruncSeries, TruncSeries), MexError> {
    let x = sigma_mex_series(order);
    let f1sq = f1sq_series(order);
    let g_o = x.add(&f1sq).halve()?;
    let g_e = x.sub(&f1sq).halve()?;
    Ok((g_o, g_e))
}

/// The claim "`c(mn + r) == 0 (mod M)` for all n >= 0" about a named
/// coefficient sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceTarget {
    pub modulus: usize,
    pub residue: usize,
    pub divisor: u64,
    pub label: String,
}

impl CongruenceTarget {
    pub fn new(modulus: usize, residue: usize, divisor: u64, label: impl Into<String>) -> Self {
        assert!(residue < modulus, "residue must satisfy 0 <= r < m");
        assert!(divisor >= 2);
        CongruenceTarget {
            modulus,
            residue,
            divisor,
            label: label.into(),
        }
    }
}

/// Check every coefficient at indices `== r (mod m)` for divisibility by
/// `M`. Failure reports the progression index `n` of the first offender.
pub fn check_congruence(series: &TruncSeries, target: &CongruenceTarget) -> Verdict {
    assert!(series.order() >= target.residue, "series too short for target");
    let m_big = BigInt::from(target.divisor);
    let mut checked = 0;
    let mut n = 0usize;
    loop {
        let idx = target.modulus * n + target.residue;
        if idx > series.order() {
            break;
        }
        let c = series.coeff(idx);
        if !(c % &m_big).is_zero() {
            return Verdict::Fail {
                n,
                value: c.to_string(),
            };
        }
        checked += 1;
        n += 1;
    }
    Verdict::Pass { checked }
}

/// Which clause of the three infinite congruence families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyPart {
    One,
    Two,
    Three,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyParams {
    pub p: u64,
    pub part: FamilyPart,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FamilyParams {
    /// Which series the clause constrains.
    pub fn series(&self) -> SeriesKind {
        match self.part {
            FamilyPart::One | FamilyPart::Two => SeriesKind::SigmaEven,
            FamilyPart::Three => SeriesKind::SigmaOdd,
        }
    }

    pub fn validate(&self) -> Result<(), MexError> {
        if !is_prime(self.p) {
            return Err(MexError::InvalidFamily(format!("{} is not prime", self.p)));
        }
        match self.part {
            FamilyPart::One => {
                if !matches!(self.p % 12, 5 | 7 | 11) {
                    return Err(MexError::InvalidFamily(format!(
                        "part 1 needs p == 5, 7, 11 (mod 12); p = {} is {} (mod 12)",
                        self.p,
                        self.p % 12
                    )));
                }
            }
            FamilyPart::Two | FamilyPart::Three => {
                if !matches!(self.p % 24, 5 | 7 | 11) {
                    return Err(MexError::InvalidFamily(format!(
                        "parts 2-3 need p == 5, 7, 11 (mod 24); p = {} is {} (mod 24)",
                        self.p,
                        self.p % 24
                    )));
                }
            }
        }
        Ok(())
    }

    /// Admissible `k` residues for this clause, `1 <= k < p`.
    pub fn admissible_k(&self) -> Vec<u64> {
        let p = self.p;
        let keep = |k: u64| match self.part {
            FamilyPart::One => k % 2 == 1,
            FamilyPart::Two => {
                if p % 24 == 11 {
                    k % 4 == 1
                } else {
                    k % 4 == 3
                }
            }
            FamilyPart::Three => {
                if p % 24 == 7 {
                    k % 4 == 2
                } else {
                    k % 4 == 0
                }
            }
        };
        (1..p).filter(|&k| keep(k)).collect()
    }

    /// One congruence target per admissible `k`.
    pub fn targets(&self) -> Result<Vec<CongruenceTarget>, MexError> {
        self.validate()?;
        let p = self.p as usize;
        let offset = (p * p - 1) / 12;
        let (mult, divisor) = match self.part {
            FamilyPart::One => (2 * p * p, 4),
            FamilyPart::Two => (4 * p * p, 8),
            FamilyPart::Three => (4 * p * p, 4),
        };
        Ok(self
            .admissible_k()
            .iter()
            .map(|&k| {
                let r = (k as usize) * p + offset;
                let label = format!(
                    "{}({}n+{}) == 0 (mod {})",
                    self.series().name(),
                    mult,
                    r,
                    divisor
                );
                CongruenceTarget::new(mult, r, divisor, label)
            })
            .collect())
    }
}

/// Cooper-Hirschhorn-Lewis relation for `a(n)`, the coefficients of
/// `f_1^2`: `a(pn + (p^2-1)/12) = eps * a(n/p)` with `a` of a non-integer
/// taken as 0, plus the vanishing consequence on `p^2 n + pk + (p^2-1)/12`.
pub fn cooper_check(p: u64, order: usize) -> Result<Verdict, MexError> {
    if !is_prime(p) || !matches!(p % 12, 5 | 7 | 11) {
        return Err(MexError::InvalidPrime(p));
    }
    let eps: i64 = if p % 12 == 5 { -1 } else { 1 };
    let a = f1sq_series(order);
    let p = p as usize;
    let offset = (p * p - 1) / 12;
    let mut checked = 0;

    let mut n = 0usize;
    loop {
        let idx = p * n + offset;
        if idx > order {
            break;
        }
        let expected = if n % p == 0 {
            a.coeff(n / p) * BigInt::from(eps)
        } else {
            BigInt::zero()
        };
        if a.coeff(idx) != &expected {
            return Ok(Verdict::Fail {
                n: idx,
                value: a.coeff(idx).to_string(),
            });
        }
        checked += 1;
        n += 1;
    }
    // vanishing consequence
    for k in 1..p {
        let mut n = 0usize;
        loop {
            let idx = p * p * n + p * k + offset;
            if idx > order {
                break;
            }
            if !a.coeff(idx).is_zero() {
                return Ok(Verdict::Fail {
                    n: idx,
                    value: a.coeff(idx).to_string(),
                });
            }
            checked += 1;
            n += 1;
        }
    }
    Ok(Verdict::Pass { checked })
}

/// Exact zero-residue density `delta_0(series, M; X)` at each checkpoint:
/// the proportion of indices `1 <= n <= X` whose coefficient is divisible
/// by `M`. Index 0 is excluded; densities are proportions of positive
/// indices.
pub fn density_scan(
    series: &TruncSeries,
    divisor: u64,
    checkpoints: &[usize],
) -> Vec<(usize, Rational)> {
    let mut points: Vec<usize> = checkpoints.to_vec();
    points.sort_unstable();
    let m_big = BigInt::from(divisor);
    let mut out = Vec::with_capacity(points.len());
    let mut count: i64 = 0;
    let mut n = 1usize;
    for &x in &points {
        assert!(x <= series.order(), "checkpoint beyond series order");
        while n <= x {
            if (series.coeff(n) % &m_big).is_zero() {
                count += 1;
            }
            n += 1;
        }
        out.push((x, Rational::new(count, x as i64)));
    }
    out
}

/// The fixed congruence claims: the three Baruah et al. congruences, the
/// two Du-Tang congruences, and the two mod-4 congruences on `10n+6`,
/// `10n+8`.
pub fn fixed_congruence_targets() -> Vec<(SeriesKind, CongruenceTarget)> {
    use SeriesKind::*;
    vec![
        (SigmaOdd, CongruenceTarget::new(2, 1, 4, "sigma_o mex(2n+1) == 0 (mod 4)")),
        (SigmaOdd, CongruenceTarget::new(4, 1, 8, "sigma_o mex(4n+1) == 0 (mod 8)")),
        (SigmaEven, CongruenceTarget::new(4, 0, 4, "sigma_e mex(4n) == 0 (mod 4)")),
        (SigmaOdd, CongruenceTarget::new(8, 1, 16, "sigma_o mex(8n+1) == 0 (mod 16)")),
        (SigmaEven, CongruenceTarget::new(8, 0, 8, "sigma_e mex(8n) == 0 (mod 8)")),
        (SigmaEven, CongruenceTarget::new(10, 6, 4, "sigma_e mex(10n+6) == 0 (mod 4)")),
        (SigmaEven, CongruenceTarget::new(10, 8, 4, "sigma_e mex(10n+8) == 0 (mod 4)")),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::sigma_mex_split;

    #[test]
    fn g_series_matches_oracle_small() {
        let (g_o, g_e) = g_series(8).unwrap();
        assert_eq!(g_o.coeffs()[..5], TruncSeries::from_ints(&[1, 0, 1, 4, 5]).coeffs()[..]);
        assert_eq!(g_e.coeffs()[..5], TruncSeries::from_ints(&[0, 2, 2, 2, 4]).coeffs()[..]);
        assert_eq!(g_e.coeff(5), &BigInt::from(6));
        for n in 0..=8u32 {
            let (o, e) = sigma_mex_split(n).unwrap();
            assert_eq!(g_o.coeff(n as usize), &BigInt::from(o));
            assert_eq!(g_e.coeff(n as usize), &BigInt::from(e));
        }
    }

    #[test]
    fn sigma_route_consistency() {
        // f_2^2/f_1^2 agrees with the dense route f_2^2 * (f_1^2)^{-1}
        let n = 200;
        let x = sigma_mex_series(n);
        let dense = TruncSeries::pochhammer(2, n)
            .pow(2)
            .mul(&f1sq_series(n).invert().unwrap());
        assert_eq!(x, dense);
        // and G_o - G_e = f_1^2, G_o + G_e = f_2^2/f_1^2
        let (g_o, g_e) = g_series(n).unwrap();
        assert_eq!(g_o.sub(&g_e), f1sq_series(n));
        assert_eq!(g_o.add(&g_e), x);
    }

    #[test]
    fn f1sq_hand_values() {
        let a = f1sq_series(7);
        assert_eq!(a, TruncSeries::from_ints(&[1, -2, -1, 2, 1, 2, -2, 0]));
    }

    #[test]
    fn check_congruence_examples() {
        let (g_o, g_e) = g_series(500).unwrap();
        let t = CongruenceTarget::new(2, 1, 4, "eq 1.3");
        assert!(check_congruence(&g_o, &t).is_pass());
        let t = CongruenceTarget::new(10, 6, 4, "thm 1.1a");
        assert!(check_congruence(&g_e, &t).is_pass());
        // deliberate negative control: sigma_e mex(1) = 2 is not 0 mod 4
        let t = CongruenceTarget::new(4, 1, 4, "control");
        assert_eq!(
            check_congruence(&g_e, &t),
            Verdict::Fail {
                n: 0,
                value: "2".to_string()
            }
        );
    }

    #[test]
    fn family_targets_examples() {
        let f = FamilyParams { p: 5, part: FamilyPart::One };
        let ts = f.targets().unwrap();
        assert_eq!(
            ts.iter().map(|t| (t.modulus, t.residue, t.divisor)).collect::<Vec<_>>(),
            vec![(50, 7, 4), (50, 17, 4)]
        );
        assert_eq!(f.series(), SeriesKind::SigmaEven);

        let f = FamilyParams { p: 5, part: FamilyPart::Two };
        let ts = f.targets().unwrap();
        assert_eq!(
            ts.iter().map(|t| (t.modulus, t.residue, t.divisor)).collect::<Vec<_>>(),
            vec![(100, 17, 8)]
        );

        let f = FamilyParams { p: 7, part: FamilyPart::Three };
        let ts = f.targets().unwrap();
        assert_eq!(
            ts.iter().map(|t| (t.modulus, t.residue, t.divisor)).collect::<Vec<_>>(),
            vec![(196, 18, 4), (196, 46, 4)]
        );
        assert_eq!(f.series(), SeriesKind::SigmaOdd);
    }

    #[test]
    fn family_rejects_bad_params() {
        assert!(FamilyParams { p: 13, part: FamilyPart::One }.validate().is_err());
        assert!(FamilyParams { p: 9, part: FamilyPart::One }.validate().is_err());
        // 29 == 5 (mod 24) is fine for parts 2-3; 31 == 7 (mod 12) but 7 (mod 24)? 31 % 24 = 7, ok.
        assert!(FamilyParams { p: 29, part: FamilyPart::Two }.validate().is_ok());
        // 17 == 5 (mod 12) but 17 (mod 24): invalid for parts 2-3
        assert!(FamilyParams { p: 17, part: FamilyPart::Two }.validate().is_err());
        assert!(FamilyParams { p: 17, part: FamilyPart::One }.validate().is_ok());
    }

    #[test]
    fn cooper_examples() {
        let a = f1sq_series(20);
        // a(2) = -1 = -a(0), and a(7) = 0 since 7 = 5*1+2 with 5 not dividing 1
        assert_eq!(a.coeff(2), &BigInt::from(-1));
        assert_eq!(a.coeff(7), &BigInt::from(0));
        assert_eq!(a.coeff(4), &BigInt::from(1)); // a(7n+4) family: a(4) = a(0)
        assert!(cooper_check(5, 400).unwrap().is_pass());
        assert!(cooper_check(7, 400).unwrap().is_pass());
        assert!(cooper_check(11, 400).unwrap().is_pass());
        assert!(cooper_check(13, 400).is_err());
    }

    #[test]
    fn density_examples() {
        let (g_o, _) = g_series(50).unwrap();
        // sigma_o mex(1..10) mod 4 = 0,1,0,1,0,2,0,2,0,3: five of ten vanish
        let d = density_scan(&g_o, 4, &[10]);
        assert_eq!(d, vec![(10, Rational::new(1, 2))]);
        let zero = TruncSeries::zero(100);
        assert_eq!(density_scan(&zero, 8, &[100]), vec![(100, Rational::new(1, 1))]);
    }
}
