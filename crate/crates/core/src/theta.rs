//! Ramanujan theta functions, Lambert series, the binomial congruence
//! lemma, 5-dissections, and the identity verification suite.
//!
//! Theta series are constructed two ways, as sparse theta sums and as
//! eta-quotients, and the two must agree; a mismatch falsifies the Jacobi
//! triple product instantiation and is reported as an error rather than a
//! wrong answer.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::report::Verdict;
use crate::series::SeriesError;
use crate::TruncSeries;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ThetaError {
    #[error("identity violation in {identity} at q^{index}")]
    IdentityViolation { identity: String, index: usize },
}

fn sc(s: &TruncSeries, c: i64) -> TruncSeries {
    s.scale(&BigInt::from(c))
}

/// `phi(q) = sum_{n in Z} q^{n^2}` as a sparse sum.
pub fn phi_sum(order: usize) -> TruncSeries {
    let mut s = TruncSeries::one(order);
    let mut n = 1usize;
    while n * n <= order {
        s = s.add(&TruncSeries::monomial(BigInt::from(2), n * n, order));
        n += 1;
    }
    s
}

/// `psi(q) = sum_{n >= 0} q^{n(n+1)/2}` as a sparse sum.
pub fn psi_sum(order: usize) -> TruncSeries {
    let mut s = TruncSeries::zero(order);
    let mut n = 0usize;
    loop {
        let e = n * (n + 1) / 2;
        if e > order {
            break;
        }
        s = s.add(&TruncSeries::monomial(BigInt::from(1), e, order));
        n += 1;
    }
    s
}

/// `phi(-q) = sum_{n in Z} (-1)^n q^{n^2}` as a sparse sum.
pub fn phi_neg_sum(order: usize) -> TruncSeries {
    let mut s = TruncSeries::one(order);
    let mut n = 1usize;
    while n * n <= order {
        let c = if n % 2 == 1 { -2 } else { 2 };
        s = s.add(&TruncSeries::monomial(BigInt::from(c), n * n, order));
        n += 1;
    }
    s
}

fn phi_eta(order: usize) -> Result<TruncSeries, SeriesError> {
    // f_2^5 / (f_1^2 f_4^2)
    let f1 = TruncSeries::pochhammer(1, order);
    let f2 = TruncSeries::pochhammer(2, order);
    let f4 = TruncSeries::pochhammer(4, order);
    Ok(f2.pow(5).mul(&f1.pow(2).mul(&f4.pow(2)).invert()?))
}

fn psi_eta(order: usize) -> Result<TruncSeries, SeriesError> {
    // f_2^2 / f_1
    let f1 = TruncSeries::pochhammer(1, order);
    let f2 = TruncSeries::pochhammer(2, order);
    Ok(f2.pow(2).mul(&f1.invert()?))
}

fn phi_neg_eta(order: usize) -> Result<TruncSeries, SeriesError> {
    // f_1^2 / f_2
    let f1 = TruncSeries::pochhammer(1, order);
    let f2 = TruncSeries::pochhammer(2, order);
    Ok(f1.pow(2).mul(&f2.invert()?))
}

fn dual_checked(
    identity: &str,
    sum: TruncSeries,
    eta: Result<TruncSeries, SeriesError>,
) -> Result<TruncSeries, ThetaError> {
    let eta = eta.map_err(|_| ThetaError::IdentityViolation {
        identity: identity.to_string(),
        index: 0,
    })?;
    if let Some(index) = first_difference(&sum, &eta) {
        return Err(ThetaError::IdentityViolation {
            identity: identity.to_string(),
            index,
        });
    }
    Ok(sum)
}

fn first_difference(a: &TruncSeries, b: &TruncSeries) -> Option<usize> {
    (0..=a.order()).find(|&i| a.coeff(i) != b.coeff(i))
}

/// `phi(q)`, computed as both the theta sum and `f_2^5/(f_1^2 f_4^2)`;
/// the agreed value is returned.
pub fn phi_series(order: usize) -> Result<TruncSeries, ThetaError> {
    dual_checked("phi dual construction", phi_sum(order), phi_eta(order))
}

pub fn psi_series(order: usize) -> Result<TruncSeries, ThetaError> {
    dual_checked("psi dual construction", psi_sum(order), psi_eta(order))
}

pub fn phi_neg_series(order: usize) -> Result<TruncSeries, ThetaError> {
    dual_checked(
        "phi(-q) dual construction",
        phi_neg_sum(order),
        phi_neg_eta(order),
    )
}

/// `sum_{n >= 1, pred(n)} q^n / (1 + q^{2n})`, each term expanded as the
/// alternating geometric series `sum_k (-1)^k q^{n(2k+1)}`.
fn lambert_inv2(order: usize, pred: impl Fn(usize) -> bool) -> TruncSeries {
    let mut coeffs: Vec<BigInt> = vec![BigInt::zero(); order + 1];
    for n in 1..=order {
        if !pred(n) {
            continue;
        }
        let mut k = 0usize;
        loop {
            let e = n * (2 * k + 1);
            if e > order {
                break;
            }
            if k % 2 == 0 {
                coeffs[e] += 1;
            } else {
                coeffs[e] -= 1;
            }
            k += 1;
        }
    }
    TruncSeries::from_coeffs(coeffs)
}

/// `sum_{n >= 1} (-1)^{n+1} q^n / (1 + q^{2n})`.
fn lambert_alt(order: usize) -> TruncSeries {
    let mut coeffs: Vec<BigInt> = vec![BigInt::zero(); order + 1];
    for n in 1..=order {
        let outer: i64 = if n % 2 == 1 { 1 } else { -1 };
        let mut k = 0usize;
        loop {
            let e = n * (2 * k + 1);
            if e > order {
                break;
            }
            let inner: i64 = if k % 2 == 0 { 1 } else { -1 };
            coeffs[e] += outer * inner;
            k += 1;
        }
    }
    TruncSeries::from_coeffs(coeffs)
}

fn legendre5(n: usize) -> i64 {
    match n % 5 {
        1 | 4 => 1,
        2 | 3 => -1,
        _ => 0,
    }
}

/// `sum_{n >= 1} (n/5) q^n / (1 - q^n)^2 = sum_n (n/5) sum_{k>=1} k q^{nk}`.
fn legendre5_lambert(order: usize) -> TruncSeries {
    let mut coeffs: Vec<BigInt> = vec![BigInt::zero(); order + 1];
    for n in 1..=order {
        let chi = legendre5(n);
        if chi == 0 {
            continue;
        }
        let mut k = 1usize;
        while n * k <= order {
            coeffs[n * k] += chi * k as i64;
            k += 1;
        }
    }
    TruncSeries::from_coeffs(coeffs)
}

/// `phi^2(q) = 1 + 4 sum q^n/(1+q^{2n})`: expands the Lambert series and
/// asserts equality with the theta product before returning it.
pub fn lambert_phi2(order: usize) -> Result<TruncSeries, ThetaError> {
    let lhs = TruncSeries::one(order).add(&sc(&lambert_inv2(order, |_| true), 4));
    let phi = phi_series(order)?;
    let rhs = phi.mul(&phi);
    if let Some(index) = first_difference(&lhs, &rhs) {
        return Err(ThetaError::IdentityViolation {
            identity: "phi^2 Lambert expansion".to_string(),
            index,
        });
    }
    Ok(lhs)
}

/// The Legendre-twisted Lambert series `sum (n/5) q^n/(1-q^n)^2`, asserted
/// equal to `q f_5^5 / f_1` exactly, together with the mod-2 congruence of
/// the restricted sum `sum_{5 \nmid n} q^n/(1+q^{2n})`.
pub fn lambert_legendre5(order: usize) -> Result<TruncSeries, ThetaError> {
    let lhs = legendre5_lambert(order);
    let f1 = TruncSeries::pochhammer(1, order);
    let f5 = TruncSeries::pochhammer(5, order);
    let rhs = f5
        .pow(5)
        .mul(&f1.invert().expect("f_1 has unit constant term"))
        .shift_up(1);
    if let Some(index) = first_difference(&lhs, &rhs) {
        return Err(ThetaError::IdentityViolation {
            identity: "Legendre-5 Lambert identity".to_string(),
            index,
        });
    }
    let restricted = lambert_inv2(order, |n| n % 5 != 0);
    let two = BigInt::from(2);
    let diff = restricted.sub(&rhs).reduce_mod(&two);
    if !diff.is_zero() {
        let index = (0..=order).find(|&i| !diff.coeff(i).is_zero()).unwrap();
        return Err(ThetaError::IdentityViolation {
            identity: "mod-2 restricted Lambert congruence".to_string(),
            index,
        });
    }
    Ok(lhs)
}

/// `f_m^{2^k} == f_{2m}^{2^{k-1}} (mod 2^k)`, coefficientwise.
pub fn binomial_lemma_check(m: usize, k: u32, order: usize) -> Verdict {
    assert!(m >= 1 && k >= 1);
    let lhs = TruncSeries::pochhammer(m, order).pow(1 << k);
    let rhs = TruncSeries::pochhammer(2 * m, order).pow(1 << (k - 1));
    compare_mod(&lhs, &rhs, &BigInt::from(1i64 << k))
}

fn compare_exact(lhs: &TruncSeries, rhs: &TruncSeries) -> Verdict {
    match first_difference(lhs, rhs) {
        None => Verdict::Pass {
            checked: lhs.order() + 1,
        },
        Some(n) => Verdict::Fail {
            n,
            value: (lhs.coeff(n) - rhs.coeff(n)).to_string(),
        },
    }
}

fn compare_mod(lhs: &TruncSeries, rhs: &TruncSeries, modulus: &BigInt) -> Verdict {
    let diff = lhs.sub(rhs).reduce_mod(modulus);
    match (0..=diff.order()).find(|&i| !diff.coeff(i).is_zero()) {
        None => Verdict::Pass {
            checked: lhs.order() + 1,
        },
        Some(n) => Verdict::Fail {
            n,
            value: diff.coeff(n).to_string(),
        },
    }
}

/// The Rogers-Ramanujan quotient
/// `R(q) = (q;q^5)(q^4;q^5) / ((q^2;q^5)(q^3;q^5))`.
pub fn r_quotient(order: usize) -> TruncSeries {
    let num = TruncSeries::pochhammer_general(1, 5, order)
        .mul(&TruncSeries::pochhammer_general(4, 5, order));
    let den = TruncSeries::pochhammer_general(2, 5, order)
        .mul(&TruncSeries::pochhammer_general(3, 5, order));
    num.mul(&den.invert().expect("denominator has unit constant term"))
}

/// Named input series of the identity suite; the mutation test perturbs
/// these one coefficient at a time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputId {
    F1,
    F2,
    F4,
    F5,
    F25,
    PhiSum,
    PsiSum,
    PhiNegSum,
    RQuotient,
    LambertPhi2,
    LambertLegendre5,
    LambertMod2,
    LambertAlt,
    Lambert5n,
    SigmaEvenEven,
}

pub const SUITE_INPUTS: [InputId; 15] = [
    InputId::F1,
    InputId::F2,
    InputId::F4,
    InputId::F5,
    InputId::F25,
    InputId::PhiSum,
    InputId::PsiSum,
    InputId::PhiNegSum,
    InputId::RQuotient,
    InputId::LambertPhi2,
    InputId::LambertLegendre5,
    InputId::LambertMod2,
    InputId::LambertAlt,
    InputId::Lambert5n,
    InputId::SigmaEvenEven,
];

/// Perturb one coefficient of one suite input by `+1`.
#[derive(Debug, Clone, Copy)]
pub struct Mutation {
    pub input: InputId,
    pub index: usize,
}

struct Inputs {
    f1: TruncSeries,
    f2: TruncSeries,
    f4: TruncSeries,
    f5: TruncSeries,
    f25: TruncSeries,
    phi: TruncSeries,
    psi: TruncSeries,
    phi_neg: TruncSeries,
    r_q: TruncSeries,
    lam_phi2: TruncSeries,
    lam_leg5: TruncSeries,
    lam_mod2: TruncSeries,
    lam_alt: TruncSeries,
    lam_5n: TruncSeries,
    sigma_even_even: TruncSeries,
}

fn build_inputs(order: usize, mutation: Option<&Mutation>) -> Inputs {
    let mut inputs = Inputs {
        f1: TruncSeries::pochhammer(1, order),
        f2: TruncSeries::pochhammer(2, order),
        f4: TruncSeries::pochhammer(4, order),
        f5: TruncSeries::pochhammer(5, order),
        f25: TruncSeries::pochhammer(25, order),
        phi: phi_sum(order),
        psi: psi_sum(order),
        phi_neg: phi_neg_sum(order),
        r_q: r_quotient(order),
        lam_phi2: lambert_inv2(order, |_| true),
        lam_leg5: legendre5_lambert(order),
        lam_mod2: lambert_inv2(order, |n| n % 5 != 0),
        lam_alt: lambert_alt(order),
        lam_5n: lambert_inv2(order, |n| n % 5 == 0),
        sigma_even_even: crate::mex::g_series(2 * order)
            .expect("half-sum integrality")
            .1
            .dissect(2, 0),
    };
    if let Some(m) = mutation {
        let target = match m.input {
            InputId::F1 => &mut inputs.f1,
            InputId::F2 => &mut inputs.f2,
            InputId::F4 => &mut inputs.f4,
            InputId::F5 => &mut inputs.f5,
            InputId::F25 => &mut inputs.f25,
            InputId::PhiSum => &mut inputs.phi,
            InputId::PsiSum => &mut inputs.psi,
            InputId::PhiNegSum => &mut inputs.phi_neg,
            InputId::RQuotient => &mut inputs.r_q,
            InputId::LambertPhi2 => &mut inputs.lam_phi2,
            InputId::LambertLegendre5 => &mut inputs.lam_leg5,
            InputId::LambertMod2 => &mut inputs.lam_mod2,
            InputId::LambertAlt => &mut inputs.lam_alt,
            InputId::Lambert5n => &mut inputs.lam_5n,
            InputId::SigmaEvenEven => &mut inputs.sigma_even_even,
        };
        assert!(m.index <= order, "mutation index beyond order");
        *target = target.add(&TruncSeries::monomial(BigInt::from(1), m.index, order));
    }
    inputs
}

#[derive(Debug, Clone)]
pub struct IdentityOutcome {
    pub id: String,
    pub verdict: Verdict,
}

fn outcome(
    id: &str,
    modulus: Option<i64>,
    sides: Result<(TruncSeries, TruncSeries), SeriesError>,
) -> IdentityOutcome {
    let verdict = match sides {
        Err(e) => Verdict::Fail {
            n: 0,
            value: format!("construction failed: {e}"),
        },
        Ok((lhs, rhs)) => match modulus {
            None => compare_exact(&lhs, &rhs),
            Some(m) => compare_mod(&lhs, &rhs, &BigInt::from(m)),
        },
    };
    IdentityOutcome {
        id: id.to_string(),
        verdict,
    }
}

/// Run the full identity suite: exact identities at `exact_order`,
/// congruence identities at `cong_order`.
pub fn verify_identity_suite(exact_order: usize, cong_order: usize) -> Vec<IdentityOutcome> {
    run_suite(exact_order, cong_order, None)
}

/// Run the suite at a single order with one input perturbed; used by the
/// falsifiability (mutation) test.
pub fn verify_identity_suite_mutated(order: usize, mutation: &Mutation) -> Vec<IdentityOutcome> {
    run_suite(order, order, Some(mutation))
}

fn run_suite(
    exact_order: usize,
    cong_order: usize,
    mutation: Option<&Mutation>,
) -> Vec<IdentityOutcome> {
    let ex = build_inputs(exact_order, mutation);
    let co = if cong_order == exact_order {
        None
    } else {
        Some(build_inputs(cong_order, mutation))
    };
    let co = co.as_ref().unwrap_or(&ex);

    let mut out = Vec::new();

    // dual constructions of the three theta series
    out.push(outcome("phi-dual", None, (|| {
        let rhs = ex.f2.pow(5).mul(&ex.f1.pow(2).mul(&ex.f4.pow(2)).invert()?);
        Ok((ex.phi.clone(), rhs))
    })()));
    out.push(outcome("psi-dual", None, (|| {
        Ok((ex.psi.clone(), ex.f2.pow(2).mul(&ex.f1.invert()?)))
    })()));
    out.push(outcome("phineg-dual", None, (|| {
        Ok((ex.phi_neg.clone(), ex.f1.pow(2).mul(&ex.f2.invert()?)))
    })()));

    // (3.4) in division-free form: phi(q) phi(-q) = phi^2(-q^2)
    out.push(outcome("3.4", None, Ok((
        ex.phi.mul(&ex.phi_neg),
        ex.phi_neg.substitute_power(2).pow(2),
    ))));
    // (3.5)-(3.8)
    let phi4 = ex.phi.substitute_power(4);
    let q_psi8 = ex.psi.substitute_power(8).shift_up(1);
    out.push(outcome("3.5", None, Ok((ex.phi.add(&ex.phi_neg), sc(&phi4, 2)))));
    out.push(outcome("3.6", None, Ok((ex.phi.sub(&ex.phi_neg), sc(&q_psi8, 4)))));
    out.push(outcome("3.7", None, Ok((ex.phi.clone(), phi4.add(&sc(&q_psi8, 2))))));
    out.push(outcome("3.8", None, Ok((ex.phi_neg.clone(), phi4.sub(&sc(&q_psi8, 2))))));

    // (3.9): phi^2 = 1 + 4 sum q^n/(1+q^{2n})
    out.push(outcome("3.9", None, Ok((
        TruncSeries::one(exact_order).add(&sc(&ex.lam_phi2, 4)),
        ex.phi.mul(&ex.phi),
    ))));

    // (3.10) exact and (3.11) mod 2, both against q f_5^5/f_1
    out.push(outcome("3.10", None, (|| {
        let rhs = ex.f5.pow(5).mul(&ex.f1.invert()?).shift_up(1);
        Ok((ex.lam_leg5.clone(), rhs))
    })()));
    out.push(outcome("3.11", Some(2), (|| {
        let rhs = co.f5.pow(5).mul(&co.f1.invert()?).shift_up(1);
        Ok((co.lam_mod2.clone(), rhs))
    })()));

    // Lemma 2.6: the 5-dissections of f_1 and 1/f_1
    out.push(outcome("2.1", None, (|| {
        let r5 = ex.r_q.substitute_power(5);
        let r5_inv = r5.invert()?;
        let rhs = ex.f25.mul(
            &r5_inv
                .sub(&TruncSeries::monomial(BigInt::from(1), 1, exact_order))
                .sub(&r5.shift_up(2)),
        );
        Ok((ex.f1.clone(), rhs))
    })()));
    out.push(outcome("2.2", None, (|| {
        let r5 = ex.r_q.substitute_power(5);
        let r5_inv = r5.invert()?;
        let terms: [(TruncSeries, usize, i64); 9] = [
            (r5_inv.pow(4), 0, 1),
            (r5_inv.pow(3), 1, 1),
            (r5_inv.pow(2), 2, 2),
            (r5_inv.clone(), 3, 3),
            (TruncSeries::one(exact_order), 4, 5),
            (r5.clone(), 5, -3),
            (r5.pow(2), 6, 2),
            (r5.pow(3), 7, -1),
            (r5.pow(4), 8, 1),
        ];
        let mut combo = TruncSeries::zero(exact_order);
        for (s, e, c) in terms {
            combo = combo.add(&sc(&s.shift_up(e), c));
        }
        let rhs = ex.f25.pow(5).mul(&ex.f5.pow(6).invert()?).mul(&combo);
        Ok((ex.f1.invert()?, rhs))
    })()));

    // (3.14): the even-part extraction, exact
    out.push(outcome("3.14", None, (|| {
        let rhs = ex
            .f1
            .mul(&ex.phi.substitute_power(2))
            .mul(&ex.phi_neg.pow(2).invert()?)
            .mul(&sc(&ex.lam_alt, 2));
        Ok((ex.sigma_even_even.clone(), rhs))
    })()));

    // (3.15) mod 4, and the final dissection claims of Theorem 1.1
    let rhs_315 = (|| -> Result<TruncSeries, SeriesError> {
        let q_f55_over_f1 = co.f5.pow(5).mul(&co.f1.invert()?).shift_up(1);
        Ok(sc(&co.f1.mul(&co.lam_5n.add(&q_f55_over_f1)), 2))
    })();
    out.push(outcome("3.15", Some(4), rhs_315.clone().map(|rhs| (co.sigma_even_even.clone(), rhs))));
    for (id, r) in [("thm1.1-residue3", 3usize), ("thm1.1-residue4", 4usize)] {
        out.push(outcome(id, Some(4), rhs_315.clone().map(|rhs| {
            let d = rhs.dissect(5, r);
            let zero = TruncSeries::zero(d.order());
            (d, zero)
        })));
    }

    out
}
