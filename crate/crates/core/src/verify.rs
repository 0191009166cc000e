//! Executable property suite for the structural identities of the reduced
//! series: symmetry under t ↦ 1/(qt), reduction to the Alexander polynomial
//! at q = 1, degree and top-monomial bounds, and component forgetting.
//!
//! Checks return reports instead of aborting so a driver can run the whole
//! table and print every witness.

use num_bigint::BigInt;
use num_traits::One;
use std::ops::{Mul, Sub};

use crate::poly::{BinomialFactor, LaurentPoly, Monomial, VarId};
use crate::resolution::CurveInvariants;

/// Outcome of one structural check. A failing report always carries a
/// nonzero witness (the residual polynomial or offending monomial).
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub name: &'static str,
    pub pass: bool,
    pub witness: Option<LaurentPoly>,
}

impl CheckReport {
    fn pass(name: &'static str) -> Self {
        CheckReport {
            name,
            pass: true,
            witness: None,
        }
    }

    fn fail(name: &'static str, witness: LaurentPoly) -> Self {
        debug_assert!(!witness.is_zero());
        CheckReport {
            name,
            pass: false,
            witness: Some(witness),
        }
    }
}

/// P̄(1/(qt₁),…,1/(qt_r)) = q^{-δ} ∏ t_α^{-l_α} · P̄(t), as an exact Laurent
/// identity.
pub fn check_symmetry(p: &LaurentPoly, inv: &CurveInvariants) -> CheckReport {
    let mut rules = std::collections::BTreeMap::new();
    for alpha in 0..inv.l_alpha.len() {
        rules.insert(
            VarId::T(alpha as u16),
            (BigInt::one(), Monomial::t(alpha, -1).mul(&Monomial::q(-1))),
        );
    }
    let lhs = p.substitute_monomial(&rules);
    let mut shift = Monomial::q(-inv.delta);
    for (alpha, &l) in inv.l_alpha.iter().enumerate() {
        shift = shift.mul(&Monomial::t(alpha, -l));
    }
    let rhs = p.mul_monomial(&shift, &BigInt::one());
    let residual = lhs.sub(&rhs);
    if residual.is_zero() {
        CheckReport::pass("symmetry")
    } else {
        CheckReport::fail("symmetry", residual)
    }
}

/// Specialise at q = 1. For one branch the result is the Alexander polynomial
/// itself; for several branches it must factor as Δ · ∏(1 - t_i) and the
/// quotient Δ is returned.
pub fn check_alexander(p: &LaurentPoly, r: usize) -> (Option<LaurentPoly>, CheckReport) {
    let at_q1 = p.evaluate_ones(&[VarId::Q]);
    if r == 1 {
        return (Some(at_q1), CheckReport::pass("alexander"));
    }
    let mut delta = at_q1;
    for alpha in 0..r {
        match delta.exact_div_binomial(&BinomialFactor::plain(VarId::T(alpha as u16))) {
            Ok(quotient) => delta = quotient,
            Err(crate::poly::DivisionError::NotDivisible { remainder }) => {
                return (None, CheckReport::fail("alexander", *remainder));
            }
        }
    }
    (Some(delta), CheckReport::pass("alexander"))
}

/// Forgetting one component: the full series at (dropped variable = 1) must
/// equal (1 - q) times the sub-curve's series. Remaining t-indices above the
/// dropped one shift down to compare against the sub-curve's numbering.
pub fn check_forget(p_full: &LaurentPoly, p_sub: &LaurentPoly, dropped: usize) -> CheckReport {
    let specialised = p_full
        .evaluate_ones(&[VarId::T(dropped as u16)])
        .rename_vars(|v| match v {
            VarId::T(i) if (i as usize) > dropped => VarId::T(i - 1),
            other => other,
        });
    let rhs = (LaurentPoly::one() - LaurentPoly::q()).mul(p_sub);
    let residual = specialised.sub(&rhs);
    if residual.is_zero() {
        CheckReport::pass("forget")
    } else {
        CheckReport::fail("forget", residual)
    }
}

/// One-branch form of the forgetting identity: P̄ at t = 1 equals 1.
pub fn check_forget_unit(p: &LaurentPoly) -> CheckReport {
    let residual = p.evaluate_ones(&[VarId::T(0)]).sub(&LaurentPoly::one());
    if residual.is_zero() {
        CheckReport::pass("forget")
    } else {
        CheckReport::fail("forget", residual)
    }
}

/// Degree bounds: degree in t_α equals l_α, the top monomial q^δ ∏ t_α^{l_α}
/// has coefficient 1 (and carries the only term with maximal t-exponents),
/// and the constant term is 1.
pub fn check_degree(p: &LaurentPoly, inv: &CurveInvariants) -> CheckReport {
    let r = inv.l_alpha.len();
    for alpha in 0..r {
        if p.degree_in(VarId::T(alpha as u16)).unwrap_or(0) != inv.l_alpha[alpha] {
            return CheckReport::fail("degree", p.clone());
        }
    }
    let mut top = Monomial::q(inv.delta);
    for (alpha, &l) in inv.l_alpha.iter().enumerate() {
        top = top.mul(&Monomial::t(alpha, l));
    }
    if !p.coeff(&top).is_one() {
        return CheckReport::fail("degree", LaurentPoly::monomial(top));
    }
    for (m, _) in p.iter() {
        let maximal = (0..r).all(|alpha| m.exponent(VarId::T(alpha as u16)) == inv.l_alpha[alpha]);
        if maximal && *m != top {
            return CheckReport::fail("degree", LaurentPoly::monomial(m.clone()));
        }
    }
    if !p.constant_term().is_one() {
        return CheckReport::fail("degree", LaurentPoly::constant(1));
    }
    CheckReport::pass("degree")
}
