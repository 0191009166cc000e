//! Sparse multivariate Laurent polynomials with exact integer coefficients.
//!
//! Three kinds of variables appear: `t` variables indexed by curve component,
//! `u` variables indexed by exceptional divisor, and a single deformation
//! variable `q`. Exponents of `q` are stored *doubled* (the stored integer is
//! twice the power of `q`) so that half-integer powers arising from the
//! quadratic form never leave integer arithmetic; assembled results are
//! checked downstream to have even doubled exponents.
//!
//! [`RationalSeries`] pairs a Laurent polynomial numerator with a multiset of
//! binomial denominator factors of the shapes `1 - u` and `1 - q*u`, the only
//! denominators the closed forms produce, and expands to a truncated series
//! under a weighted degree bound.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// A formal variable. The derived order (all `T` by index, then all `U` by
/// index, then `Q`) is the canonical variable order used everywhere.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum VarId {
    /// t-variable of a curve component (branch).
    T(u16),
    /// u-variable of an exceptional divisor.
    U(u16),
    /// The deformation parameter q. Exponents are stored doubled.
    Q,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DivisionError {
    #[error("not divisible, remainder {remainder}")]
    NotDivisible { remainder: Box<LaurentPoly> },
}

/// Exponent vector of a single term. Zero exponents are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    exps: BTreeMap<VarId, i64>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    /// Single-variable monomial; for `VarId::Q` the exponent is the doubled value.
    pub fn var(v: VarId, exp: i64) -> Self {
        let mut m = Monomial::default();
        m.set(v, exp);
        m
    }

    pub fn t(index: usize, exp: i64) -> Self {
        Monomial::var(VarId::T(index as u16), exp)
    }

    pub fn u(index: usize, exp: i64) -> Self {
        Monomial::var(VarId::U(index as u16), exp)
    }

    /// q raised to an integer power.
    pub fn q(power: i64) -> Self {
        Monomial::var(VarId::Q, 2 * power)
    }

    /// q raised to `doubled/2`.
    pub fn q_doubled(doubled: i64) -> Self {
        Monomial::var(VarId::Q, doubled)
    }

    pub fn set(&mut self, v: VarId, exp: i64) {
        if exp == 0 {
            self.exps.remove(&v);
        } else {
            self.exps.insert(v, exp);
        }
    }

    pub fn with(mut self, v: VarId, exp: i64) -> Self {
        self.set(v, exp);
        self
    }

    pub fn exponent(&self, v: VarId) -> i64 {
        self.exps.get(&v).copied().unwrap_or(0)
    }

    /// Doubled exponent of q.
    pub fn q_exp_doubled(&self) -> i64 {
        self.exponent(VarId::Q)
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarId, i64)> + '_ {
        self.exps.iter().map(|(v, e)| (*v, *e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        for (v, e) in other.iter() {
            let ne = out.exponent(v) + e;
            out.set(v, ne);
        }
        out
    }

    pub fn pow(&self, e: i64) -> Monomial {
        let mut out = Monomial::default();
        for (v, ex) in self.iter() {
            out.set(v, ex * e);
        }
        out
    }

    /// Monomial with the given variables removed (set to 1).
    pub fn without(&self, vars: &[VarId]) -> Monomial {
        let mut out = self.clone();
        for v in vars {
            out.exps.remove(v);
        }
        out
    }

    /// Total degree in the t and u variables (q excluded).
    pub fn grade(&self) -> i64 {
        self.iter()
            .filter(|(v, _)| *v != VarId::Q)
            .map(|(_, e)| e)
            .sum()
    }

    /// Weighted degree: sum of weight(v) * exponent(v) over weighted variables.
    pub fn weighted_degree(&self, weights: &BTreeMap<VarId, i64>) -> i64 {
        self.iter()
            .map(|(v, e)| weights.get(&v).copied().unwrap_or(0) * e)
            .sum()
    }
}

// Canonical term order: graded (t+u total degree) ascending; ties broken over
// the variable sequence T0,T1,…,U0,…,Q — larger exponent on an earlier t/u
// variable sorts earlier, q-exponents ascending.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.grade().cmp(&other.grade()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let vars: BTreeSet<VarId> = self.exps.keys().chain(other.exps.keys()).copied().collect();
        for v in vars {
            let (ea, eb) = (self.exponent(v), other.exponent(v));
            if ea != eb {
                return if v == VarId::Q {
                    ea.cmp(&eb)
                } else {
                    eb.cmp(&ea)
                };
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Variable name table for rendering. Missing entries fall back to
/// `t1, t2, …` / `u1, u2, …`.
#[derive(Clone, Debug, Default)]
pub struct VarNames {
    pub t: Vec<String>,
    pub u: Vec<String>,
}

impl VarNames {
    pub fn t_names(names: Vec<String>) -> Self {
        VarNames {
            t: names,
            u: Vec::new(),
        }
    }

    /// Single-branch curve with homological grading variable: `t` and `u`.
    pub fn knot() -> Self {
        VarNames {
            t: vec!["t".into()],
            u: vec!["u".into()],
        }
    }

    pub fn name(&self, v: VarId) -> String {
        match v {
            VarId::T(i) => self
                .t
                .get(i as usize)
                .cloned()
                .unwrap_or_else(|| format!("t{}", i + 1)),
            VarId::U(i) => self
                .u
                .get(i as usize)
                .cloned()
                .unwrap_or_else(|| format!("u{}", i + 1)),
            VarId::Q => "q".into(),
        }
    }
}

/// Sparse Laurent polynomial over the integers. Immutable in spirit: all
/// operations return new values, so sharing across threads is free.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        LaurentPoly::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: impl Into<BigInt>) -> Self {
        let mut p = LaurentPoly::default();
        p.add_term(m, c.into());
        p
    }

    pub fn monomial(m: Monomial) -> Self {
        LaurentPoly::term(m, 1)
    }

    pub fn t(index: usize) -> Self {
        LaurentPoly::monomial(Monomial::t(index, 1))
    }

    pub fn u(index: usize) -> Self {
        LaurentPoly::monomial(Monomial::u(index, 1))
    }

    pub fn q() -> Self {
        LaurentPoly::monomial(Monomial::q(1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&Monomial::one())
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn add_impl(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        let mut out = a.clone();
        for (m, c) in b.iter() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    fn sub_impl(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        let mut out = a.clone();
        for (m, c) in b.iter() {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn negate(&self) -> LaurentPoly {
        let mut out = LaurentPoly::default();
        for (m, c) in self.iter() {
            out.terms.insert(m.clone(), -c.clone());
        }
        out
    }

    fn mul_impl(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::default();
        for (ma, ca) in a.iter() {
            for (mb, cb) in b.iter() {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigInt) -> LaurentPoly {
        let mut out = LaurentPoly::default();
        for (ma, ca) in self.iter() {
            out.add_term(ma.mul(m), ca * c);
        }
        out
    }

    pub fn scale(&self, c: impl Into<BigInt>) -> LaurentPoly {
        self.mul_monomial(&Monomial::one(), &c.into())
    }

    pub fn pow(&self, e: u32) -> LaurentPoly {
        let mut out = LaurentPoly::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Ring-homomorphic substitution: each listed variable is replaced by
    /// coefficient * monomial. Coefficients other than ±1 require nonnegative
    /// exponents on the substituted variable.
    pub fn substitute_monomial(&self, rules: &BTreeMap<VarId, (BigInt, Monomial)>) -> LaurentPoly {
        let mut out = LaurentPoly::default();
        for (m, c) in self.iter() {
            let mut coeff = c.clone();
            let mut mono = Monomial::one();
            for (v, e) in m.iter() {
                match rules.get(&v) {
                    None => mono.set(v, mono.exponent(v) + e),
                    Some((rc, rm)) => {
                        mono = mono.mul(&rm.pow(e));
                        if rc.is_one() {
                            // unchanged
                        } else if (-rc.clone()).is_one() {
                            if e.rem_euclid(2) == 1 {
                                coeff = -coeff;
                            }
                        } else if e >= 0 {
                            coeff *= rc.pow(e as u32);
                        } else {
                            panic!("substitution coefficient must be ±1 for negative exponents");
                        }
                    }
                }
            }
            out.add_term(mono, coeff);
        }
        out
    }

    /// Convenience for a single-variable substitution.
    pub fn substitute_var(&self, v: VarId, coeff: impl Into<BigInt>, m: Monomial) -> LaurentPoly {
        let mut rules = BTreeMap::new();
        rules.insert(v, (coeff.into(), m));
        self.substitute_monomial(&rules)
    }

    /// Set each listed variable to 1 and collect.
    pub fn evaluate_ones(&self, vars: &[VarId]) -> LaurentPoly {
        let mut out = LaurentPoly::default();
        for (m, c) in self.iter() {
            out.add_term(m.without(vars), c.clone());
        }
        out
    }

    /// Rename variables; the map must be injective on the variables present.
    pub fn rename_vars(&self, f: impl Fn(VarId) -> VarId) -> LaurentPoly {
        let mut out = LaurentPoly::default();
        for (m, c) in self.iter() {
            let mut nm = Monomial::one();
            for (v, e) in m.iter() {
                let nv = f(v);
                assert_eq!(nm.exponent(nv), 0, "rename_vars collision");
                nm.set(nv, e);
            }
            out.add_term(nm, c.clone());
        }
        out
    }

    /// Largest exponent of `v` over all terms, `None` for the zero polynomial.
    pub fn degree_in(&self, v: VarId) -> Option<i64> {
        self.iter().map(|(m, _)| m.exponent(v)).max()
    }

    pub fn min_degree_in(&self, v: VarId) -> Option<i64> {
        self.iter().map(|(m, _)| m.exponent(v)).min()
    }

    pub fn vars_used(&self) -> BTreeSet<VarId> {
        self.iter()
            .flat_map(|(m, _)| m.iter().map(|(v, _)| v))
            .collect()
    }

    /// Keep only the terms whose monomial satisfies the predicate.
    pub fn filtered(&self, keep: impl Fn(&Monomial) -> bool) -> LaurentPoly {
        let mut out = LaurentPoly::default();
        for (m, c) in self.iter() {
            if keep(m) {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// Exact division by a binomial factor `1 - x` with `x` the factor's
    /// monomial. Fails with the remainder when the division is not exact.
    pub fn exact_div_binomial(
        &self,
        factor: &BinomialFactor,
    ) -> Result<LaurentPoly, DivisionError> {
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let v = factor.var;
        let x = factor.monomial();
        let step = x.exponent(v);
        debug_assert!(step > 0);
        let rest = x.without(&[v]);

        // Bucket the dividend by the exponent of the main variable.
        let mut buckets: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (m, c) in self.iter() {
            let k = m.exponent(v);
            buckets
                .entry(k)
                .or_default()
                .add_term(m.without(&[v]), c.clone());
        }
        let lo = *buckets.keys().next().unwrap();
        let hi = *buckets.keys().last().unwrap();

        // p = Q·(1 - x)  ⟺  p_k = Q_k - rest·Q_{k-step}, so Q_k ascends.
        let mut quot_buckets: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        let mut quotient = LaurentPoly::zero();
        for k in lo..=hi {
            let pk = buckets.get(&k).cloned().unwrap_or_default();
            let prev = quot_buckets.get(&(k - step)).cloned().unwrap_or_default();
            let qk = pk.add(&prev.mul_monomial(&rest, &BigInt::one()));
            if !qk.is_zero() {
                for (m, c) in qk.iter() {
                    quotient.add_term(m.clone().with(v, k), c.clone());
                }
                quot_buckets.insert(k, qk);
            }
        }

        let check = factor.as_poly().mul(&quotient);
        if check == *self {
            Ok(quotient)
        } else {
            Err(DivisionError::NotDivisible {
                remainder: Box::new(self.sub(&check)),
            })
        }
    }

    pub fn render(&self, names: &VarNames) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.iter().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&render_term(m, &c.abs(), names));
        }
        out
    }
}

fn render_term(m: &Monomial, abs_coeff: &BigInt, names: &VarNames) -> String {
    let mut parts: Vec<String> = Vec::new();
    if !abs_coeff.is_one() || m.is_one() {
        parts.push(abs_coeff.to_string());
    }
    let d = m.q_exp_doubled();
    if d != 0 {
        if d % 2 == 0 {
            let e = d / 2;
            parts.push(if e == 1 {
                "q".into()
            } else {
                format!("q^{}", e)
            });
        } else {
            parts.push(format!("q^({}/2)", d));
        }
    }
    let mut tu: Vec<(VarId, i64)> = m.iter().filter(|(v, _)| *v != VarId::Q).collect();
    tu.sort_by_key(|(v, _)| *v);
    for (v, e) in tu {
        let name = names.name(v);
        parts.push(if e == 1 {
            name
        } else {
            format!("{}^{}", name, e)
        });
    }
    parts.join("*")
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&VarNames::default()))
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl $trait for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                LaurentPoly::$inner(self, rhs)
            }
        }
        impl $trait for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                LaurentPoly::$inner(&self, &rhs)
            }
        }
        impl $trait<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                LaurentPoly::$inner(&self, rhs)
            }
        }
        impl $trait<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                LaurentPoly::$inner(self, &rhs)
            }
        }
    };
}

impl_binop!(Add, add, add_impl);
impl_binop!(Sub, sub, sub_impl);
impl_binop!(Mul, mul, mul_impl);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.negate()
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.negate()
    }
}

/// A denominator factor: `1 - v` or `1 - q*v`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BinomialFactor {
    pub var: VarId,
    pub with_q: bool,
}

impl BinomialFactor {
    pub fn plain(var: VarId) -> Self {
        BinomialFactor { var, with_q: false }
    }

    pub fn with_q(var: VarId) -> Self {
        assert!(var != VarId::Q, "factor 1 - q*q is not an allowed shape");
        BinomialFactor { var, with_q: true }
    }

    /// The monomial `x` of the factor `1 - x`.
    pub fn monomial(&self) -> Monomial {
        let step = if self.var == VarId::Q { 2 } else { 1 };
        let mut m = Monomial::var(self.var, step);
        if self.with_q {
            m = m.mul(&Monomial::q(1));
        }
        m
    }

    pub fn as_poly(&self) -> LaurentPoly {
        LaurentPoly::one().sub(&LaurentPoly::monomial(self.monomial()))
    }
}

/// Laurent polynomial numerator over a multiset of binomial denominators.
#[derive(Clone, Debug)]
pub struct RationalSeries {
    pub numerator: LaurentPoly,
    pub denominators: Vec<BinomialFactor>,
}

impl RationalSeries {
    pub fn from_poly(numerator: LaurentPoly) -> Self {
        RationalSeries {
            numerator,
            denominators: Vec::new(),
        }
    }

    pub fn mul_poly(&mut self, p: &LaurentPoly) {
        self.numerator = std::mem::take(&mut self.numerator).mul(p);
    }

    /// Multiply by `factor^exp`; negative exponents extend the denominator multiset.
    pub fn apply_power(&mut self, factor: BinomialFactor, exp: i64) {
        if exp >= 0 {
            self.numerator =
                std::mem::take(&mut self.numerator).mul(&factor.as_poly().pow(exp as u32));
        } else {
            for _ in 0..(-exp) {
                self.denominators.push(factor);
            }
        }
    }

    /// Expand every denominator factor as a geometric series and return all
    /// terms of weighted degree ≤ `bound`. Every denominator variable must
    /// carry a positive weight; raising the bound never changes terms already
    /// below it.
    pub fn expand(&self, weights: &BTreeMap<VarId, i64>, bound: i64) -> LaurentPoly {
        let mut acc = self
            .numerator
            .filtered(|m| m.weighted_degree(weights) <= bound);
        for f in &self.denominators {
            let x = f.monomial();
            let xw = x.weighted_degree(weights);
            assert!(xw > 0, "denominator variable must have positive weight");
            let mut next = LaurentPoly::zero();
            for (m, c) in acc.iter() {
                let mut cur = m.clone();
                let mut w = cur.weighted_degree(weights);
                while w <= bound {
                    next.add_term(cur.clone(), c.clone());
                    cur = cur.mul(&x);
                    w += xw;
                }
            }
            acc = next;
        }
        acc
    }
}

/// Exact binomial coefficient `C(k, j)` for arbitrary integer `k` and `j ≥ 0`.
pub fn binomial(k: i64, j: u64) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..j {
        num *= BigInt::from(k) - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// The alternating binomial polynomial `P_{k,n}(q) = Σ_{j=0}^{n} (-1)^j q^j C(k,j)`
/// (`k` may be negative).
pub fn binom_alt_poly(k: i64, n: u32) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for j in 0..=n {
        let mut c = binomial(k, j as u64);
        if j % 2 == 1 {
            c = -c;
        }
        out.add_term(Monomial::q(j as i64), c);
    }
    out
}

/// Generating-function identity for the alternating binomial polynomials:
/// `Σ_{n≤N} t^n q^{-n} P_{k-1,n}(q)` equals the t-truncation of
/// `(1-t)^{k-1} / (1 - q^{-1} t)`. Holds for every k ≥ 1; exposed so the
/// acceptance suite can run it symbolically.
pub fn binom_alt_series_identity(k: u32, n_max: u32) -> bool {
    assert!(k >= 1);
    let t = VarId::T(0);
    let mut lhs = LaurentPoly::zero();
    for n in 0..=n_max {
        let term = binom_alt_poly(k as i64 - 1, n).mul_monomial(
            &Monomial::t(0, n as i64).mul(&Monomial::q(-(n as i64))),
            &BigInt::one(),
        );
        lhs = lhs.add(&term);
    }
    let one_minus_t = LaurentPoly::one().sub(&LaurentPoly::t(0));
    let mut geo = LaurentPoly::zero();
    for j in 0..=n_max {
        geo.add_term(
            Monomial::t(0, j as i64).mul(&Monomial::q(-(j as i64))),
            BigInt::one(),
        );
    }
    let rhs = one_minus_t
        .pow(k - 1)
        .mul(&geo)
        .filtered(|m| m.exponent(t) <= n_max as i64);
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qt(i: usize) -> LaurentPoly {
        LaurentPoly::q() * LaurentPoly::t(i)
    }

    #[test]
    fn add_cancellation_and_identity() {
        let one = LaurentPoly::one();
        let p = &one - &qt(0); // 1 - q*t1
        assert_eq!(p + qt(0), one);
        let p = &one - &qt(0);
        assert_eq!(LaurentPoly::zero() + &p, p);
        // (1-u1) + (u1 - u1^2) = 1 - u1^2
        let u = LaurentPoly::u(0);
        let lhs = (LaurentPoly::one() - &u) + (&u - &u * &u);
        assert_eq!(lhs, LaurentPoly::one() - &u * &u);
    }

    #[test]
    fn mul_examples() {
        let u = LaurentPoly::u(0);
        let lhs = (LaurentPoly::one() - &u) * (LaurentPoly::one() + &u);
        assert_eq!(lhs, LaurentPoly::one() - u.pow(2));

        // (1 - q t)(1 + q t^2 + q^2 t^3 + q^3 t^4) truncated at t-degree 4
        let qt2 = LaurentPoly::term(Monomial::t(0, 2).mul(&Monomial::q(1)), 1);
        let qt3 = LaurentPoly::term(Monomial::t(0, 3).mul(&Monomial::q(2)), 1);
        let qt4 = LaurentPoly::term(Monomial::t(0, 4).mul(&Monomial::q(3)), 1);
        let series_head = LaurentPoly::one() + qt2.clone() + qt3 + qt4;
        let product = (LaurentPoly::one() - qt(0)) * series_head;
        let truncated = product.filtered(|m| m.exponent(VarId::T(0)) <= 4);
        assert_eq!(truncated, LaurentPoly::one() - qt(0) + qt2);

        // t^{-1} * t = 1
        let tinv = LaurentPoly::monomial(Monomial::t(0, -1));
        assert_eq!(tinv * LaurentPoly::t(0), LaurentPoly::one());
    }

    #[test]
    fn pow_examples() {
        let u = LaurentPoly::u(0);
        let p = LaurentPoly::one() - &u;
        assert_eq!(p.pow(2), LaurentPoly::one() - u.scale(2) + &u * &u);
        assert_eq!(p.pow(0), LaurentPoly::one());
        let qu = LaurentPoly::q() - &u;
        assert_eq!(qu.pow(1), qu);
    }

    #[test]
    fn exact_division() {
        let u = VarId::U(0);
        let f = BinomialFactor::plain(u);
        let num = LaurentPoly::one() - LaurentPoly::monomial(Monomial::u(0, 2));
        assert_eq!(
            num.exact_div_binomial(&f).unwrap(),
            LaurentPoly::one() + LaurentPoly::u(0)
        );
        assert_eq!(
            f.as_poly().exact_div_binomial(&f).unwrap(),
            LaurentPoly::one()
        );
        let bad = LaurentPoly::one() + LaurentPoly::u(0);
        assert!(bad.exact_div_binomial(&f).is_err());
    }

    #[test]
    fn substitution_examples() {
        // u1*q with u1 -> u1*q^{-1} gives u1
        let p = LaurentPoly::monomial(Monomial::u(0, 1).mul(&Monomial::q(1)));
        let out = p.substitute_var(VarId::U(0), 1, Monomial::u(0, 1).mul(&Monomial::q(-1)));
        assert_eq!(out, LaurentPoly::u(0));

        // 1 - q*t with t -> q^{-1} t^{-1} gives 1 - t^{-1}
        let p = LaurentPoly::one() - qt(0);
        let out = p.substitute_var(VarId::T(0), 1, Monomial::t(0, -1).mul(&Monomial::q(-1)));
        assert_eq!(
            out,
            LaurentPoly::one() - LaurentPoly::monomial(Monomial::t(0, -1))
        );

        // u1*u2 with u1 -> q*u1 gives q*u1*u2
        let p = LaurentPoly::u(0).mul(&LaurentPoly::u(1));
        let out = p.substitute_var(VarId::U(0), 1, Monomial::u(0, 1).mul(&Monomial::q(1)));
        assert_eq!(out, &p * &LaurentPoly::q());
    }

    #[test]
    fn evaluate_ones_examples() {
        let p = LaurentPoly::one() - qt(0) + qt(1);
        assert_eq!(p.evaluate_ones(&[]), p);
        let collapsed = p.evaluate_ones(&[VarId::T(0), VarId::T(1)]);
        assert_eq!(collapsed, LaurentPoly::one());
        let at_q1 = p.evaluate_ones(&[VarId::Q]);
        assert_eq!(
            at_q1,
            LaurentPoly::one() - LaurentPoly::t(0) + LaurentPoly::t(1)
        );
    }

    #[test]
    fn expansion_examples() {
        let mut w = BTreeMap::new();
        w.insert(VarId::U(0), 1);
        w.insert(VarId::U(1), 1);

        let geo = RationalSeries {
            numerator: LaurentPoly::one(),
            denominators: vec![BinomialFactor::plain(VarId::U(0))],
        };
        let got = geo.expand(&w, 3);
        let want = (0..=3).fold(LaurentPoly::zero(), |acc, k| {
            acc + LaurentPoly::monomial(Monomial::u(0, k))
        });
        assert_eq!(got, want);

        let quotient = RationalSeries {
            numerator: LaurentPoly::one() - LaurentPoly::monomial(Monomial::u(0, 2)),
            denominators: vec![BinomialFactor::plain(VarId::U(0))],
        };
        assert_eq!(
            quotient.expand(&w, 5),
            LaurentPoly::one() + LaurentPoly::u(0)
        );

        let two_denoms = RationalSeries {
            numerator: LaurentPoly::one(),
            denominators: vec![
                BinomialFactor::plain(VarId::U(0)),
                BinomialFactor::with_q(VarId::U(0)),
            ],
        };
        let got = two_denoms.expand(&w, 1);
        let want =
            LaurentPoly::one() + LaurentPoly::u(0) + LaurentPoly::q().mul(&LaurentPoly::u(0));
        assert_eq!(got, want);
    }

    #[test]
    fn binom_alt_examples() {
        assert_eq!(binom_alt_poly(1, 1), LaurentPoly::one() - LaurentPoly::q());
        assert_eq!(binom_alt_poly(0, 5), LaurentPoly::one());
        for k in 1..=4 {
            assert!(
                binom_alt_series_identity(k, 8),
                "identity failed for k={}",
                k
            );
        }
    }

    #[test]
    fn render_format() {
        let p = LaurentPoly::one() - qt(0) - qt(1) + qt(0).mul(&LaurentPoly::t(1));
        assert_eq!(p.to_string(), "1 - q*t1 - q*t2 + q*t1*t2");
        let m = Monomial::t(0, 3)
            .mul(&Monomial::q(-2))
            .mul(&Monomial::u(1, 1));
        assert_eq!(LaurentPoly::term(m, -2).to_string(), "-2*q^-2*t1^3*u2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(
            LaurentPoly::term(Monomial::q_doubled(3), 1).to_string(),
            "q^(3/2)"
        );
    }

    fn arb_var() -> impl Strategy<Value = VarId> {
        prop_oneof![
            (0u16..2).prop_map(VarId::T),
            (0u16..2).prop_map(VarId::U),
            Just(VarId::Q),
        ]
    }

    fn arb_monomial() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec((arb_var(), -3i64..=3), 0..3).prop_map(|pairs| {
            let mut m = Monomial::one();
            for (v, e) in pairs {
                let e = if v == VarId::Q { 2 * e } else { e };
                m.set(v, m.exponent(v) + e);
            }
            m
        })
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((arb_monomial(), -5i64..=5), 0..5).prop_map(|terms| {
            let mut p = LaurentPoly::zero();
            for (m, c) in terms {
                p.add_term(m, BigInt::from(c));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!((&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!((&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
        }

        #[test]
        fn substitution_is_ring_hom(a in arb_poly(), b in arb_poly()) {
            let mut rules = BTreeMap::new();
            rules.insert(VarId::U(0), (BigInt::from(-1), Monomial::u(1, 1).mul(&Monomial::q(-1))));
            rules.insert(VarId::T(0), (BigInt::from(1), Monomial::t(0, -1)));
            prop_assert_eq!(
                (&a * &b).substitute_monomial(&rules),
                a.substitute_monomial(&rules) * b.substitute_monomial(&rules)
            );
            prop_assert_eq!(
                (&a + &b).substitute_monomial(&rules),
                a.substitute_monomial(&rules) + b.substitute_monomial(&rules)
            );
        }

        #[test]
        fn division_roundtrip(a in arb_poly(), with_q in any::<bool>()) {
            let f = if with_q { BinomialFactor::with_q(VarId::U(0)) } else { BinomialFactor::plain(VarId::U(0)) };
            let product = &a * &f.as_poly();
            let back = product.exact_div_binomial(&f).unwrap();
            prop_assert_eq!(back, a);
        }

        #[test]
        fn division_failure_matches_root_test(a in arb_poly()) {
            // p divisible by (1-u) iff p at u=1 vanishes
            let f = BinomialFactor::plain(VarId::U(0));
            let at_root = a.evaluate_ones(&[VarId::U(0)]);
            match a.exact_div_binomial(&f) {
                Ok(_) => prop_assert!(at_root.is_zero()),
                Err(_) => prop_assert!(!at_root.is_zero()),
            }
        }

        #[test]
        fn expansion_stability(num in arb_poly(), bound in 0i64..6) {
            let rs = RationalSeries {
                numerator: num,
                denominators: vec![
                    BinomialFactor::plain(VarId::U(0)),
                    BinomialFactor::with_q(VarId::U(1)),
                ],
            };
            let mut w = BTreeMap::new();
            w.insert(VarId::U(0), 1);
            w.insert(VarId::U(1), 2);
            let small = rs.expand(&w, bound);
            let large = rs.expand(&w, bound + 2);
            prop_assert_eq!(small, large.filtered(|m| m.weighted_degree(&w) <= bound));
        }
    }
}
