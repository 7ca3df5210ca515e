//! High-precision asymptotics: Tauberian main terms, Euler numbers,
//! Hermite polynomials, the alternating-theta expansion, and ratio tables
//! comparing exact coefficients against their predicted growth.

pub use astro_float::BigFloat;

use astro_float::{Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::mex::{self, MexError};

pub const DEFAULT_PRECISION: usize = 256;

/// Hard cap on the number of terms in the alternating theta sum.
const THETA_TERM_CAP: usize = 10_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AsymError {
    #[error("lambda must be positive")]
    NonPositiveLambda,
    #[error("Euler numbers are indexed by even integers, got {0}")]
    OddEulerIndex(u64),
    #[error("series: {0}")]
    Series(#[from] MexError),
    #[error("checkpoint list is empty")]
    NoCheckpoints,
}

/// Arithmetic context: working precision in bits plus the constants cache.
/// Per-instance, never global.
pub struct RealCtx {
    p: usize,
    cc: Consts,
}

const RM: RoundingMode = RoundingMode::ToEven;

impl RealCtx {
    /// Precision below 64 bits is refused; the default is 256.
    pub fn new(p: usize) -> Self {
        assert!(p >= 64, "precision must be at least 64 bits");
        RealCtx {
            p,
            cc: Consts::new().expect("constants cache"),
        }
    }

    pub fn precision(&self) -> usize {
        self.p
    }

    pub fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.p, RM)
    }

    pub fn from_i64(&self, v: i64) -> BigFloat {
        BigFloat::from_i64(v, self.p)
    }

    /// Exact-leading-bits conversion: the top `p` bits of the integer become
    /// the mantissa and the bit length becomes the binary exponent, so huge
    /// coefficients enter ratio computations with full working precision.
    pub fn from_bigint(&self, v: &BigInt) -> BigFloat {
        if v.is_zero() {
            return BigFloat::new(self.p);
        }
        let mag = v.magnitude();
        let bits = mag.bits();
        let shift = bits.saturating_sub(self.p as u64);
        let top: BigInt = BigInt::from(mag >> shift);
        let words = top.to_u64_digits().1;
        let sign = if v.is_negative() {
            astro_float::Sign::Neg
        } else {
            astro_float::Sign::Pos
        };
        // from_words scales by 2^(e - 64 * len): e places the words' top
        // word boundary, then the dropped low bits shift the value back up
        BigFloat::from_words(&words, sign, (shift + 64 * words.len() as u64) as i32)
    }

    pub fn from_rational(&self, v: &BigRational) -> BigFloat {
        self.from_bigint(v.numer())
            .div(&self.from_bigint(v.denom()), self.p, RM)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.p, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.p, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.p, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.p, RM)
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.p, RM)
    }

    pub fn exp(&mut self, a: &BigFloat) -> BigFloat {
        a.exp(self.p, RM, &mut self.cc)
    }

    pub fn ln(&mut self, a: &BigFloat) -> BigFloat {
        a.ln(self.p, RM, &mut self.cc)
    }

    pub fn powi(&self, a: &BigFloat, n: usize) -> BigFloat {
        a.powi(n, self.p, RM)
    }

    /// `a^x` for real `x` (via `exp(x ln a)` internally).
    pub fn pow(&mut self, a: &BigFloat, x: &BigFloat) -> BigFloat {
        a.pow(x, self.p, RM, &mut self.cc)
    }

    pub fn lt(&self, a: &BigFloat, b: &BigFloat) -> bool {
        a.cmp(b).map(|c| c < 0).unwrap_or(false)
    }

    /// Decimal string with the given number of significant digits.
    pub fn format_decimal(&mut self, x: &BigFloat, sig: usize) -> String {
        let s = x.format(Radix::Dec, RM, &mut self.cc).unwrap_or_default();
        let (mantissa, exp) = match s.split_once('e') {
            Some((m, e)) => (m, Some(e)),
            None => (s.as_str(), None),
        };
        let mut out = String::new();
        let mut digits = 0;
        for ch in mantissa.chars() {
            if ch.is_ascii_digit() {
                if digits >= sig {
                    continue;
                }
                digits += 1;
            }
            out.push(ch);
        }
        if let Some(e) = exp {
            out.push('e');
            out.push_str(e);
        }
        out
    }
}

/// Growth constants `(mu, nu, lambda)` of a statement
/// `C(e^{-y}) ~ mu y^nu e^{lambda/y}` as `y -> 0+`.
#[derive(Clone)]
pub struct AsymptoticSpec {
    pub mu: BigFloat,
    pub nu: BigFloat,
    pub lambda: BigFloat,
    pub description: String,
}

impl AsymptoticSpec {
    /// `(1/4, 0, pi^2/6)`: the growth of each of the two half series.
    pub fn sigma_mex_half(ctx: &mut RealCtx) -> Self {
        let pi = ctx.pi();
        let lambda = ctx.div(&ctx.mul(&pi, &pi), &ctx.from_i64(6));
        AsymptoticSpec {
            mu: ctx.div(&ctx.from_i64(1), &ctx.from_i64(4)),
            nu: ctx.from_i64(0),
            lambda,
            description: "half series".to_string(),
        }
    }

    /// `(1/2, 0, pi^2/6)`: the growth of the full mex-sum series.
    pub fn sigma_mex_full(ctx: &mut RealCtx) -> Self {
        let mut s = Self::sigma_mex_half(ctx);
        s.mu = ctx.add(&s.mu, &s.mu);
        s.description = "full series".to_string();
        s
    }
}

/// `(mu / 2 sqrt(pi)) lambda^{(2 nu + 1)/4} n^{-(2 nu + 3)/4} e^{2 sqrt(lambda n)}`,
/// the coefficient main term induced by the growth constants.
pub fn ingham_main_term(
    ctx: &mut RealCtx,
    spec: &AsymptoticSpec,
    n: u64,
) -> Result<BigFloat, AsymError> {
    if !spec.lambda.is_positive() {
        return Err(AsymError::NonPositiveLambda);
    }
    let nf = ctx.from_i64(n as i64);
    let one = ctx.from_i64(1);
    let four = ctx.from_i64(4);
    let two_nu = ctx.add(&spec.nu, &spec.nu);
    let e1 = ctx.div(&ctx.add(&two_nu, &one), &four);
    let e2 = ctx.div(&ctx.add(&two_nu, &ctx.from_i64(3)), &four).neg();
    let pi = ctx.pi();
    let front = ctx.div(&spec.mu, &ctx.add(&ctx.sqrt(&pi), &ctx.sqrt(&pi)));
    let lam_pow = ctx.pow(&spec.lambda.clone(), &e1);
    let n_pow = ctx.pow(&nf, &e2);
    let growth = ctx.sqrt(&ctx.mul(&spec.lambda, &nf));
    let growth = ctx.exp(&ctx.add(&growth, &growth));
    Ok(ctx.mul(&ctx.mul(&ctx.mul(&front, &lam_pow), &n_pow), &growth))
}

/// The `2m`-th Euler number, from `sum_j C(2m, 2j) E_{2j} = 0` with `E_0 = 1`.
pub fn euler_number(index: u64) -> Result<BigInt, AsymError> {
    if index % 2 != 0 {
        return Err(AsymError::OddEulerIndex(index));
    }
    let m = (index / 2) as usize;
    let mut e = vec![BigInt::one()];
    for i in 1..=m {
        let mut acc = BigInt::zero();
        for (j, ej) in e.iter().enumerate() {
            acc += binomial(BigInt::from(2 * i), BigInt::from(2 * j)) * ej;
        }
        e.push(-acc);
    }
    Ok(e.swap_remove(m))
}

/// Physicists' Hermite polynomial `H_n(x)`.
pub fn hermite(ctx: &RealCtx, n: usize, x: &BigFloat) -> BigFloat {
    let two_x = ctx.add(x, x);
    let mut h0 = ctx.from_i64(1);
    if n == 0 {
        return h0;
    }
    let mut h1 = two_x.clone();
    for k in 1..n {
        let next = ctx.sub(
            &ctx.mul(&two_x, &h1),
            &ctx.mul(&ctx.from_i64(2 * k as i64), &h0),
        );
        h0 = h1;
        h1 = next;
    }
    h1
}

pub struct ThetaExpansion {
    pub lhs: BigFloat,
    pub rhs: BigFloat,
}

/// `sum_n (-1)^n e^{-(a n^2 + b n) y}` against its small-`y` expansion
/// `e^{(2b-a)y/4} sum_n [E_{2n} a^n / (2n)! 2^{2n+1}] y^n H_{2n}((b-a) sqrt(y) / 2 sqrt(a))`.
/// (The prefactor exponent sign is fixed by numerics: with `(2b-a)/4` the
/// truncation error decays like `y^terms`; the opposite sign leaves an
/// `O(y)` residual that no number of terms removes.)
///
/// The lhs is summed until the term magnitude drops below `2^{-p}`
/// (capped at ten million terms); the rhs is truncated at `terms` terms.
pub fn berndt_kim(
    ctx: &mut RealCtx,
    a: BigRational,
    b: BigRational,
    y: &BigFloat,
    terms: usize,
) -> ThetaExpansion {
    assert!(a.is_positive() && y.is_positive() && terms >= 1);
    let af = ctx.from_rational(&a);
    let bf = ctx.from_rational(&b);

    let mut lhs = BigFloat::new(ctx.p);
    let threshold = -(ctx.p as i64);
    for n in 0..THETA_TERM_CAP {
        let nf = ctx.from_i64(n as i64);
        let quad = ctx.add(&ctx.mul(&ctx.mul(&af, &nf), &nf), &ctx.mul(&bf, &nf));
        let term = ctx.exp(&ctx.mul(&quad, y).neg());
        lhs = if n % 2 == 0 {
            ctx.add(&lhs, &term)
        } else {
            ctx.sub(&lhs, &term)
        };
        if term.exponent().map(|e| (e as i64) < threshold).unwrap_or(true) {
            break;
        }
    }

    // argument (b - a) / (2 sqrt(a)) * sqrt(y)
    let arg = ctx.mul(
        &ctx.div(&ctx.sub(&bf, &af), &ctx.add(&ctx.sqrt(&af), &ctx.sqrt(&af))),
        &ctx.sqrt(y),
    );
    let mut rhs = BigFloat::new(ctx.p);
    let mut y_pow = ctx.from_i64(1);
    let mut fact = BigInt::one(); // (2n)!
    let mut a_pow = BigRational::one();
    for n in 0..terms {
        if n > 0 {
            fact *= BigInt::from(2 * n * (2 * n - 1));
            a_pow *= &a;
            y_pow = ctx.mul(&y_pow, y);
        }
        let coeff = &a_pow * BigRational::new(euler_number(2 * n as u64).unwrap(), &fact * BigInt::from(2u64) << (2 * n));
        let term = ctx.mul(
            &ctx.mul(&ctx.from_rational(&coeff), &y_pow),
            &hermite(ctx, 2 * n, &arg),
        );
        rhs = ctx.add(&rhs, &term);
    }
    let prefactor = {
        let num = ctx.sub(&ctx.add(&bf, &bf), &af);
        ctx.exp(&ctx.div(&ctx.mul(&num, y), &ctx.from_i64(4)))
    };
    let rhs = ctx.mul(&prefactor, &rhs);
    ThetaExpansion { lhs, rhs }
}

/// `-sum_{j>=1} log(1 - e^{-j y})`, summed to convergence at the working
/// precision (bounded by `cap` factors).
pub fn log_euler_inv(ctx: &mut RealCtx, y: &BigFloat, cap: usize) -> BigFloat {
    let one = ctx.from_i64(1);
    let mut sum = BigFloat::new(ctx.p);
    let threshold = -(ctx.p as i64);
    for j in 1..=cap {
        let e = ctx.exp(&ctx.mul(&ctx.from_i64(j as i64), y).neg());
        if e.exponent().map(|x| (x as i64) < threshold).unwrap_or(true) {
            break;
        }
        let term = ctx.ln(&ctx.sub(&one, &e));
        sum = ctx.sub(&sum, &term);
    }
    sum
}

/// `log(1/(e^{-y}; e^{-y})_inf) - pi^2/(6y) - (1/2) log(y / 2 pi)`;
/// tends to 0 as `y -> 0+` (the exact remainder is `-y/24` plus
/// exponentially small corrections).
pub fn eta_asym_deviation(ctx: &mut RealCtx, y: &BigFloat, n_terms: usize) -> BigFloat {
    let pi = ctx.pi();
    let log_inv = log_euler_inv(ctx, y, n_terms);
    let main = ctx.div(
        &ctx.mul(&pi, &pi),
        &ctx.mul(&ctx.from_i64(6), y),
    );
    let log_term = ctx.ln(&ctx.div(y, &ctx.add(&pi, &pi)));
    let half_log = ctx.div(&log_term, &ctx.from_i64(2));
    ctx.sub(&ctx.sub(&log_inv, &main), &half_log)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesWhich {
    SigmaOdd,
    SigmaEven,
    Sigma,
}

pub struct RatioRow {
    pub n: usize,
    /// exact coefficient, full decimal expansion
    pub coefficient: String,
    pub main_term: BigFloat,
    pub ratio: BigFloat,
    /// odd/even coefficient ratio, reported for [`SeriesWhich::Sigma`]
    pub odd_over_even: Option<BigFloat>,
}

/// Exact coefficients at the checkpoints against the induced main term.
pub fn ratio_report(
    ctx: &mut RealCtx,
    which: SeriesWhich,
    checkpoints: &[usize],
) -> Result<Vec<RatioRow>, AsymError> {
    let order = *checkpoints.iter().max().ok_or(AsymError::NoCheckpoints)?;
    let (g_o, g_e) = mex::g_series(order)?;
    let spec = match which {
        SeriesWhich::Sigma => AsymptoticSpec::sigma_mex_full(ctx),
        _ => AsymptoticSpec::sigma_mex_half(ctx),
    };
    let mut rows = Vec::with_capacity(checkpoints.len());
    for &n in checkpoints {
        let coeff = match which {
            SeriesWhich::SigmaOdd => g_o.coeff(n).clone(),
            SeriesWhich::SigmaEven => g_e.coeff(n).clone(),
            SeriesWhich::Sigma => g_o.coeff(n) + g_e.coeff(n),
        };
        let main = ingham_main_term(ctx, &spec, n as u64)?;
        let cf = ctx.from_bigint(&coeff);
        let odd_over_even = match which {
            SeriesWhich::Sigma => Some(ctx.div(
                &ctx.from_bigint(g_o.coeff(n)),
                &ctx.from_bigint(g_e.coeff(n)),
            )),
            _ => None,
        };
        rows.push(RatioRow {
            n,
            coefficient: coeff.to_string(),
            ratio: ctx.div(&cf, &main),
            main_term: main,
            odd_over_even,
        });
    }
    Ok(rows)
}
