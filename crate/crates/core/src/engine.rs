//! Computation of the reduced motivic Poincaré series.
//!
//! Three independent routes are implemented:
//!
//! - [`assemble`]: the cancellation-free sum over proper-everywhere arrow
//!   subsets, with generating functions H_P expanded exactly where they are
//!   polynomials and as weighted-truncated series where arrow-free divisors
//!   force genuine denominators;
//! - [`assemble_single_arrow`]: the fully exact pipeline available when every
//!   divisor carries exactly one arrow (no truncation anywhere);
//! - [`oracle_series`]: a brute-force truncated expansion of the signed
//!   A_K generating functions over all 2^r arrow subsets, used as the oracle
//!   in cross-path tests.
//!
//! Irreducible branches get a fourth route, [`semigroup_series`], straight
//! from the value semigroup.

use std::collections::BTreeMap;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rayon::prelude::*;
use thiserror::Error;

use crate::poly::{BinomialFactor, DivisionError, LaurentPoly, Monomial, RationalSeries, VarId};
use crate::resolution::{CurveInvariants, ResolutionData};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("divisibility guarantee failed for divisor {divisor}: {source}")]
    NotDivisible {
        divisor: usize,
        #[source]
        source: DivisionError,
    },
    #[error("truncation bound violated: raising the bound changed retained terms")]
    TruncationUnstable,
    #[error("assembled series has a half-integer power of q at {0}")]
    NonIntegralExponent(String),
    #[error("assembled series has a negative exponent at {0}")]
    NegativeExponentInResult(String),
    #[error("per-variable degree bound violated at {0}")]
    DegreeBoundExceeded(String),
    #[error("every divisor must carry exactly one arrow for this route")]
    PreconditionViolated,
    #[error("semigroup generators must be positive with gcd 1")]
    BadGenerators,
}

/// A subset of arrows that meets every arrow set K_0 ∩ E_i properly
/// (strictly, wherever the divisor carries arrows at all).
#[derive(Clone, Debug)]
pub struct ProperSet {
    /// Membership per arrow index.
    pub members: Vec<bool>,
    /// p_i = |P ∩ E_i| per divisor.
    pub per_divisor: Vec<usize>,
}

impl ProperSet {
    pub fn new(data: &ResolutionData, members: Vec<bool>) -> Option<Self> {
        assert_eq!(members.len(), data.r());
        let mut per_divisor = vec![0usize; data.s()];
        for (alpha, &m) in members.iter().enumerate() {
            if m {
                per_divisor[data.arrow_divisor[alpha]] += 1;
            }
        }
        for i in 0..data.s() {
            if data.k[i] >= 1 && per_divisor[i] >= data.k[i] {
                return None;
            }
        }
        Some(ProperSet {
            members,
            per_divisor,
        })
    }

    pub fn size(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    /// t_P: the product of the t-variables of the member arrows.
    pub fn t_monomial(&self) -> Monomial {
        let mut m = Monomial::one();
        for (alpha, &b) in self.members.iter().enumerate() {
            if b {
                m.set(VarId::T(alpha as u16), 1);
            }
        }
        m
    }

    fn contains_divisor(&self, i: usize) -> bool {
        self.per_divisor[i] >= 1
    }
}

/// Enumerate all proper-everywhere subsets: independently per divisor, any
/// proper subset of its arrows (∏_i (2^{k_i} - 1) in total).
pub fn proper_sets(data: &ResolutionData) -> Vec<ProperSet> {
    let mut sets = vec![vec![false; data.r()]];
    for i in 0..data.s() {
        let arrows = &data.arrows_on[i];
        if arrows.is_empty() {
            continue;
        }
        let full = (1usize << arrows.len()) - 1;
        let mut next = Vec::with_capacity(sets.len() * full);
        for base in &sets {
            for mask in 0..full {
                let mut v = base.clone();
                for (bit, &arrow) in arrows.iter().enumerate() {
                    if mask & (1 << bit) != 0 {
                        v[arrow] = true;
                    }
                }
                next.push(v);
            }
        }
        sets = next;
    }
    sets.into_iter()
        .map(|members| {
            ProperSet::new(data, members).expect("enumeration is proper by construction")
        })
        .collect()
}

fn edge_factor(a: usize, b: usize, mu_a: i64, mu_b: i64) -> LaurentPoly {
    // 1 - q^{1-µ_a} u_a - q^{1-µ_b} u_b + q^{1-µ_a-µ_b} u_a u_b
    let mut p = LaurentPoly::one();
    p.add_term(
        Monomial::u(a, 1).mul(&Monomial::q(1 - mu_a)),
        BigInt::from(-1),
    );
    p.add_term(
        Monomial::u(b, 1).mul(&Monomial::q(1 - mu_b)),
        BigInt::from(-1),
    );
    p.add_term(
        Monomial::u(a, 1)
            .mul(&Monomial::u(b, 1))
            .mul(&Monomial::q(1 - mu_a - mu_b)),
        BigInt::one(),
    );
    p
}

/// The signed generating function A_K(u) of an arrow subset, as a numerator
/// over binomial denominator factors:
/// (-1)^{|K|} ∏_i (1-u_i q)^{|K̄∩E_i|-1} (1-u_i)^{|K∩E_i|-1} ∏_σ (edge factor).
pub fn a_series(data: &ResolutionData, subset: &[bool]) -> RationalSeries {
    assert_eq!(subset.len(), data.r());
    let size = subset.iter().filter(|&&b| b).count();
    let mut in_k = vec![0usize; data.s()];
    for (alpha, &b) in subset.iter().enumerate() {
        if b {
            in_k[data.arrow_divisor[alpha]] += 1;
        }
    }
    let sign = if size % 2 == 0 { 1 } else { -1 };
    let mut rs = RationalSeries::from_poly(LaurentPoly::constant(sign));
    for i in 0..data.s() {
        let kappa = in_k[i] as i64;
        let kbar = data.k[i] as i64 - kappa;
        rs.apply_power(BinomialFactor::with_q(VarId::U(i as u16)), kbar - 1);
        rs.apply_power(BinomialFactor::plain(VarId::U(i as u16)), kappa - 1);
    }
    for &(a, b) in &data.graph.edges {
        rs.mul_poly(&edge_factor(a, b, 0, 0));
    }
    rs
}

/// Numerator sum H̃_P over subsets E of the arrow-bearing divisors missed by
/// P, with the arrow-free factors (1 - q u_i)^{-1} collected as denominators.
pub fn h_tilde(data: &ResolutionData, p: &ProperSet) -> RationalSeries {
    let s = data.s();
    let e_candidates: Vec<usize> = (0..s)
        .filter(|&i| data.k[i] >= 1 && !p.contains_divisor(i))
        .collect();

    let mut numerator = LaurentPoly::zero();
    for mask in 0..(1usize << e_candidates.len()) {
        let mut in_e = vec![false; s];
        for (bit, &div) in e_candidates.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                in_e[div] = true;
            }
        }
        let arrows_in_e: usize = (0..s).filter(|&i| in_e[i]).map(|i| data.k[i]).sum();
        let delta_e = data
            .graph
            .edges
            .iter()
            .filter(|&&(a, b)| in_e[a] && in_e[b])
            .count() as i64;

        let mut prefactor = Monomial::q(delta_e);
        for i in 0..s {
            let e: i64 = (0..s).filter(|&j| in_e[j]).map(|j| -data.a(i, j)).sum();
            if e != 0 {
                prefactor = prefactor.mul(&Monomial::u(i, e));
            }
        }
        let sign = if arrows_in_e % 2 == 0 { 1 } else { -1 };
        let mut term = LaurentPoly::term(prefactor, sign);
        for i in 0..s {
            if in_e[i] {
                // (q - u_i)^{k_i - 1}
                let base = LaurentPoly::q() - LaurentPoly::u(i);
                term = term.mul(&base.pow((data.k[i] - 1) as u32));
            } else if data.k[i] >= 1 && !p.contains_divisor(i) {
                term = term.mul(
                    &BinomialFactor::with_q(VarId::U(i as u16))
                        .as_poly()
                        .pow((data.k[i] - 1) as u32),
                );
            }
        }
        for &(a, b) in &data.graph.edges {
            term = term.mul(&edge_factor(a, b, in_e[a] as i64, in_e[b] as i64));
        }
        numerator = numerator.add(&term);
    }

    let denominators = (0..s)
        .filter(|&i| data.k[i] == 0)
        .map(|i| BinomialFactor::with_q(VarId::U(i as u16)))
        .collect();
    RationalSeries {
        numerator,
        denominators,
    }
}

/// H_P = ∏_{i∈P} (1-qu_i)^{k_i-p_i-1} (1-u_i)^{p_i-1} · H̃_P / ∏_{i∈E(P)} (1-u_i).
///
/// Divisions by (1-u_i) are performed exactly on the numerator wherever the
/// divisibility guarantee applies (arrow-bearing divisors); for arrow-free
/// divisors the factor falls back to the denominator multiset when the
/// numerator is not divisible.
pub fn h_p(data: &ResolutionData, p: &ProperSet) -> Result<RationalSeries, EngineError> {
    let mut rs = h_tilde(data, p);
    for i in 0..data.s() {
        if p.contains_divisor(i) {
            let k_i = data.k[i] as i64;
            let p_i = p.per_divisor[i] as i64;
            rs.apply_power(BinomialFactor::with_q(VarId::U(i as u16)), k_i - p_i - 1);
            rs.apply_power(BinomialFactor::plain(VarId::U(i as u16)), p_i - 1);
        }
    }
    for i in 0..data.s() {
        if !p.contains_divisor(i) {
            let factor = BinomialFactor::plain(VarId::U(i as u16));
            match rs.numerator.exact_div_binomial(&factor) {
                Ok(quotient) => rs.numerator = quotient,
                Err(_) if data.k[i] == 0 => rs.denominators.push(factor),
                Err(source) => return Err(EngineError::NotDivisible { divisor: i, source }),
            }
        }
    }
    Ok(rs)
}

/// Weight of u_j: the exact contribution of n_j to the total t-degree of
/// t^{Mn}, namely Σ_α m_{i(α) j}. All weights are ≥ 1 because M is positive.
fn t_degree_weights(data: &ResolutionData) -> BTreeMap<VarId, i64> {
    let mut w = BTreeMap::new();
    for j in 0..data.s() {
        let wj: i64 = data.arrow_divisor.iter().map(|&d| data.m[d][j]).sum();
        w.insert(VarId::U(j as u16), wj);
    }
    w
}

/// Map one expanded u-term to its contribution: the u-exponents form the
/// summation index n, which turns into t^{Mn} q^{F̄(n) - Σ n_i}.
fn contribution(
    data: &ResolutionData,
    m: &Monomial,
    coeff: &BigInt,
    extra_t: Option<&Monomial>,
    extra_q_doubled: i64,
    negate: bool,
) -> (Monomial, BigInt) {
    let s = data.s();
    let mut n = vec![0i64; s];
    for (v, e) in m.iter() {
        match v {
            VarId::U(j) => n[j as usize] = e,
            VarId::Q => {}
            VarId::T(_) => unreachable!("series over u and q only"),
        }
    }
    let mut mono = Monomial::one();
    for (alpha, te) in data.t_exponent(&n).into_iter().enumerate() {
        mono.set(VarId::T(alpha as u16), te);
    }
    if let Some(extra) = extra_t {
        mono = mono.mul(extra);
    }
    let n_sum: i64 = n.iter().sum();
    let q_doubled = m.q_exp_doubled() + data.quadratic_form(&n) - 2 * n_sum + extra_q_doubled;
    mono.set(VarId::Q, q_doubled);
    let c = if negate {
        -coeff.clone()
    } else {
        coeff.clone()
    };
    (mono, c)
}

fn assemble_at(
    data: &ResolutionData,
    bound: i64,
    weights: &BTreeMap<VarId, i64>,
) -> Result<LaurentPoly, EngineError> {
    let sets = proper_sets(data);
    let partials: Result<Vec<LaurentPoly>, EngineError> = sets
        .par_iter()
        .map(|p| {
            let rs = h_p(data, p)?;
            let size = p.size() as i64;
            let expanded = rs.expand(weights, bound - size);
            let t_p = p.t_monomial();
            let mut partial = LaurentPoly::zero();
            for (m, c) in expanded.iter() {
                let (mono, coeff) = contribution(data, m, c, Some(&t_p), 2 * size, size % 2 == 1);
                partial.add_term(mono, coeff);
            }
            Ok(partial)
        })
        .collect();
    let mut total = LaurentPoly::zero();
    for partial in partials? {
        total = total.add(&partial);
    }
    Ok(total)
}

fn check_polynomial(p: &LaurentPoly, l_alpha: &[i64]) -> Result<(), EngineError> {
    for (m, _) in p.iter() {
        let d = m.q_exp_doubled();
        if d % 2 != 0 {
            return Err(EngineError::NonIntegralExponent(m_desc(m)));
        }
        if d < 0 {
            return Err(EngineError::NegativeExponentInResult(m_desc(m)));
        }
        for (v, e) in m.iter() {
            if let VarId::T(alpha) = v {
                if e < 0 {
                    return Err(EngineError::NegativeExponentInResult(m_desc(m)));
                }
                if e > l_alpha[alpha as usize] {
                    return Err(EngineError::DegreeBoundExceeded(m_desc(m)));
                }
            }
        }
    }
    Ok(())
}

fn m_desc(m: &Monomial) -> String {
    LaurentPoly::monomial(m.clone()).to_string()
}

/// The reduced motivic Poincaré series of the curve, as an exact polynomial
/// in the t-variables and q. The truncation bound Σ l_α is re-checked at
/// bound+1: any change there indicates a violated degree bound.
pub fn assemble(data: &ResolutionData, inv: &CurveInvariants) -> Result<LaurentPoly, EngineError> {
    let weights = t_degree_weights(data);
    let bound: i64 = inv.l_alpha.iter().sum();
    let result = assemble_at(data, bound, &weights)?;
    let recheck = assemble_at(data, bound + 1, &weights)?;
    if result != recheck {
        return Err(EngineError::TruncationUnstable);
    }
    check_polynomial(&result, &inv.l_alpha)?;
    Ok(result)
}

/// Fully exact route for graphs where every divisor carries exactly one
/// arrow: an alternating sum of monomial substitutions into the edge-factor
/// product, one exact division per divisor, then direct assembly. No series
/// truncation is involved anywhere.
pub fn assemble_single_arrow(data: &ResolutionData) -> Result<LaurentPoly, EngineError> {
    let s = data.s();
    if data.k.iter().any(|&k| k != 1) {
        return Err(EngineError::PreconditionViolated);
    }

    let mut a_poly = LaurentPoly::one();
    for &(i, j) in &data.graph.edges {
        a_poly = a_poly.mul(&edge_factor(i, j, 0, 0));
    }

    let mut h_tilde = LaurentPoly::zero();
    for mask in 0..(1usize << s) {
        let in_s: Vec<bool> = (0..s).map(|i| mask & (1 << i) != 0).collect();
        let size = in_s.iter().filter(|&&b| b).count();
        let delta = data
            .graph
            .edges
            .iter()
            .filter(|&&(a, b)| in_s[a] && in_s[b])
            .count() as i64;
        let mut prefactor = Monomial::q(delta);
        for i in 0..s {
            let e: i64 = (0..s).filter(|&j| in_s[j]).map(|j| -data.a(i, j)).sum();
            if e != 0 {
                prefactor = prefactor.mul(&Monomial::u(i, e));
            }
        }
        let mut rules = BTreeMap::new();
        for i in 0..s {
            if in_s[i] {
                rules.insert(
                    VarId::U(i as u16),
                    (BigInt::one(), Monomial::u(i, 1).mul(&Monomial::q(-1))),
                );
            }
        }
        let substituted = a_poly.substitute_monomial(&rules);
        let sign = if size % 2 == 0 { 1 } else { -1 };
        h_tilde = h_tilde.add(&substituted.mul_monomial(&prefactor, &BigInt::from(sign)));
    }

    let mut h = h_tilde;
    for i in 0..s {
        h = h
            .exact_div_binomial(&BinomialFactor::plain(VarId::U(i as u16)))
            .map_err(|source| EngineError::NotDivisible { divisor: i, source })?;
    }

    let mut out = LaurentPoly::zero();
    for (m, c) in h.iter() {
        let (mono, coeff) = contribution(data, m, c, None, 0, false);
        out.add_term(mono, coeff);
    }
    let inv = data
        .milnor_numbers()
        .map_err(|_| EngineError::PreconditionViolated)?;
    check_polynomial(&out, &inv.l_alpha)?;
    Ok(out)
}

/// Brute-force oracle: expand every A_K as a truncated series and sum
/// t^{Mn} q^{F̄(n)-Σn_i} t_K q^{|K|} c_K(n) over all 2^r subsets, keeping
/// total t-degree ≤ t_bound. Entries of M are ≥ 1 and the A_K supports sit in
/// n ≥ 0, so the weighted filter captures every contribution exactly.
pub fn oracle_series(data: &ResolutionData, t_bound: i64) -> LaurentPoly {
    let weights = t_degree_weights(data);
    let r = data.r();
    let mut total = LaurentPoly::zero();
    for mask in 0..(1usize << r) {
        let subset: Vec<bool> = (0..r).map(|alpha| mask & (1 << alpha) != 0).collect();
        let size = subset.iter().filter(|&&b| b).count() as i64;
        if size > t_bound {
            continue;
        }
        let rs = a_series(data, &subset);
        let expanded = rs.expand(&weights, t_bound - size);
        let mut t_k = Monomial::one();
        for (alpha, &b) in subset.iter().enumerate() {
            if b {
                t_k.set(VarId::T(alpha as u16), 1);
            }
        }
        for (m, c) in expanded.iter() {
            let (mono, coeff) = contribution(data, m, c, Some(&t_k), 2 * size, false);
            total.add_term(mono, coeff);
        }
    }
    total
}

/// Duality of the A-series under u_i → 1/(q u_i):
/// A_K(1/(qu)) = q^{1-|K|} ∏_i u_i^{χ(E_i^∘)} A_K̄(u), checked symbolically by
/// cross-multiplying the two rational functions.
pub fn a_series_duality(data: &ResolutionData, subset: &[bool]) -> bool {
    let size = subset.iter().filter(|&&b| b).count() as i64;
    let complement: Vec<bool> = subset.iter().map(|&b| !b).collect();
    let ak = a_series(data, subset);
    let abar = a_series(data, &complement);

    let mut rules = BTreeMap::new();
    for i in 0..data.s() {
        rules.insert(
            VarId::U(i as u16),
            (BigInt::one(), Monomial::u(i, -1).mul(&Monomial::q(-1))),
        );
    }
    let mut lhs_num = ak.numerator.substitute_monomial(&rules);
    let mut lhs_dens: Vec<BinomialFactor> = Vec::new();
    for f in &ak.denominators {
        // (1 - q u) ↦ -u^{-1}(1 - u): unit inverse -u
        // (1 - u)  ↦ -q^{-1}u^{-1}(1 - q u): unit inverse -q u
        let unit_inv = if f.with_q {
            Monomial::var(f.var, 1)
        } else {
            Monomial::var(f.var, 1).mul(&Monomial::q(1))
        };
        lhs_num = lhs_num.mul_monomial(&unit_inv, &BigInt::from(-1));
        lhs_dens.push(if f.with_q {
            BinomialFactor::plain(f.var)
        } else {
            BinomialFactor::with_q(f.var)
        });
    }

    let mut shift = Monomial::q(1 - size);
    for i in 0..data.s() {
        let e = data.chi_circ[i];
        if e != 0 {
            shift = shift.mul(&Monomial::u(i, e));
        }
    }
    let rhs_num = abar.numerator.mul_monomial(&shift, &BigInt::one());

    let cross = |num: &LaurentPoly, dens: &[BinomialFactor]| {
        dens.iter()
            .fold(num.clone(), |acc, f| acc.mul(&f.as_poly()))
    };
    cross(&lhs_num, &abar.denominators) == cross(&rhs_num, &lhs_dens)
}

/// Generators of the value semigroup of an irreducible branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupSpec {
    pub generators: Vec<u64>,
}

impl SemigroupSpec {
    pub fn new(generators: Vec<u64>) -> Self {
        SemigroupSpec { generators }
    }
}

/// Output of the semigroup route: the exact reduced series, a truncated head
/// of the unreduced series, and the conductor.
#[derive(Clone, Debug)]
pub struct SemigroupSeries {
    pub pbar: LaurentPoly,
    pub pg_head: LaurentPoly,
    pub conductor: i64,
    /// Number of gaps (= δ of the branch).
    pub delta: i64,
}

/// P_g(t) = Σ_k q^k t^{σ_k} over the semigroup elements 0 = σ_0 < σ_1 < …;
/// the reduced series (1 - qt) P_g collapses to the exact polynomial
/// (1 - qt) Σ_{σ_k < c} q^k t^{σ_k} + q^g t^c with c the conductor.
pub fn semigroup_series(
    spec: &SemigroupSpec,
    series_degree: i64,
) -> Result<SemigroupSeries, EngineError> {
    if spec.generators.is_empty() || spec.generators.contains(&0) {
        return Err(EngineError::BadGenerators);
    }
    let gcd = spec.generators.iter().fold(0u64, |acc, &g| acc.gcd(&g));
    if gcd != 1 {
        return Err(EngineError::BadGenerators);
    }
    let min = *spec.generators.iter().min().unwrap() as usize;
    let max = *spec.generators.iter().max().unwrap() as usize;
    let bound = (min * max + 2).max(series_degree as usize + 2);
    let mut member = vec![false; bound];
    member[0] = true;
    for &g in &spec.generators {
        for i in g as usize..bound {
            if member[i - g as usize] {
                member[i] = true;
            }
        }
    }
    let frobenius = (0..bound).rev().find(|&i| !member[i]);
    let conductor = frobenius.map_or(0, |f| f + 1) as i64;
    let delta = (0..conductor as usize).filter(|&i| !member[i]).count() as i64;

    let one_minus_qt = LaurentPoly::one() - LaurentPoly::q().mul(&LaurentPoly::t(0));
    let mut head_below = LaurentPoly::zero();
    let mut index = 0i64;
    for sigma in 0..conductor as usize {
        if member[sigma] {
            head_below.add_term(
                Monomial::t(0, sigma as i64).mul(&Monomial::q(index)),
                BigInt::one(),
            );
            index += 1;
        }
    }
    let g = index; // position of the conductor in the element sequence
    let pbar = one_minus_qt.mul(&head_below)
        + LaurentPoly::term(Monomial::t(0, conductor).mul(&Monomial::q(g)), 1);

    let mut pg_head = LaurentPoly::zero();
    let mut index = 0i64;
    for sigma in 0..=series_degree.max(0) as usize {
        if sigma < bound && member[sigma] {
            pg_head.add_term(
                Monomial::t(0, sigma as i64).mul(&Monomial::q(index)),
                BigInt::one(),
            );
            index += 1;
        }
    }

    Ok(SemigroupSeries {
        pbar,
        pg_head,
        conductor,
        delta,
    })
}

/// Closed form of the reduced series for the A_{2n-1} singularity
/// (two smooth branches with contact order n):
/// [1 + (q+q²)t₁t₂ + … + (q^{n-1}+q^n)(t₁t₂)^{n-1} + q^n (t₁t₂)^n]
/// - (t₁+t₂)[q + q²t₁t₂ + … + q^n (t₁t₂)^{n-1}].
pub fn a2n1_closed_form(n: u32) -> LaurentPoly {
    assert!(n >= 1);
    let n = n as i64;
    let tt = |j: i64| Monomial::t(0, j).mul(&Monomial::t(1, j));
    let mut bracket = LaurentPoly::one();
    for j in 1..n {
        bracket.add_term(tt(j).mul(&Monomial::q(j)), BigInt::one());
        bracket.add_term(tt(j).mul(&Monomial::q(j + 1)), BigInt::one());
    }
    bracket.add_term(tt(n).mul(&Monomial::q(n)), BigInt::one());

    let mut inner = LaurentPoly::zero();
    for j in 0..n {
        inner.add_term(tt(j).mul(&Monomial::q(j + 1)), BigInt::one());
    }
    let t_sum = LaurentPoly::t(0) + LaurentPoly::t(1);
    bracket - t_sum.mul(&inner)
}
