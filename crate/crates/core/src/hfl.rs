//! Bridge from the reduced series of an irreducible curve to the Poincaré
//! polynomial of its Heegaard-Floer knot homology.
//!
//! Two independent derivations are provided and asserted equal by the test
//! suite: the staircase recursion on the symmetrized Alexander polynomial
//! ([`delta_sequence`]), and the sign-to-grading transform applied directly
//! to the reduced series ([`hfl_from_pbar`]). Both produce polynomials in the
//! Alexander variable `t` (= T(0)) and the Maslov variable `u` (= U(0)).
//!
//! The A_{2n-1} two-component closed form carries half-integer Alexander
//! gradings; [`HalfTPoly`] stores those with doubled t-exponents, mirroring
//! the doubled-q device.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::poly::{LaurentPoly, Monomial, VarId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HflError {
    #[error("Alexander polynomial does not have staircase shape: {0}")]
    BadShape(String),
    #[error("series coefficient is not ±1 at {0}")]
    BadCoefficient(String),
}

/// Polynomial in the Alexander variable t = T(0) and the Maslov variable
/// u = U(0); for the knot tables produced here every coefficient is 1.
pub type BiGradedPoly = LaurentPoly;

/// The knot homology of an algebraic knot: one ℤ summand per entry, at
/// Alexander grading `alexander` and Maslov grading `maslov`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HFLTable {
    /// Entries for i = -k..k in increasing Alexander grading; mirror-symmetric
    /// (n_{-j} = -n_j) with the top entry at Maslov grading 0.
    pub entries: Vec<(i64, i64)>,
}

impl HFLTable {
    /// HFL(t, u) = Σ u^{δ_i} t^{n_i}.
    pub fn to_poly(&self) -> BiGradedPoly {
        let mut p = LaurentPoly::zero();
        for &(n, d) in &self.entries {
            p.add_term(Monomial::t(0, n).mul(&Monomial::u(0, d)), BigInt::one());
        }
        p
    }

    /// Euler characteristic Σ (-1)^{δ_i} t^{n_i}; equals the symmetrized
    /// Alexander polynomial.
    pub fn euler_poly(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for &(n, d) in &self.entries {
            let sign = if d.rem_euclid(2) == 0 { 1 } else { -1 };
            p.add_term(Monomial::t(0, n), BigInt::from(sign));
        }
        p
    }
}

/// Symmetrize a one-variable Alexander polynomial: t^{-deg/2} Δ(t).
pub fn symmetrize(delta: &LaurentPoly) -> Result<LaurentPoly, HflError> {
    if delta.is_zero() {
        return Err(HflError::BadShape("zero polynomial".into()));
    }
    let hi = delta.degree_in(VarId::T(0)).unwrap();
    let lo = delta.min_degree_in(VarId::T(0)).unwrap();
    if (hi + lo) % 2 != 0 {
        return Err(HflError::BadShape(format!(
            "degree span {lo}..{hi} has odd sum"
        )));
    }
    let shift = -(hi + lo) / 2;
    Ok(delta.mul_monomial(&Monomial::t(0, shift), &BigInt::one()))
}

/// Staircase recursion: read 0 < n₁ < … < n_k off the symmetrized Alexander
/// polynomial (-1)^k + Σ (-1)^{k-i}(t^{n_i} + t^{-n_i}) and descend from
/// δ_k = 0 by δ_i = δ_{i+1} - 2(n_{i+1} - n_i) + 1 when k-i is odd and
/// δ_i = δ_{i+1} - 1 when it is even.
pub fn delta_sequence(delta: &LaurentPoly) -> Result<HFLTable, HflError> {
    let sym = symmetrize(delta)?;
    let t = VarId::T(0);
    for (m, c) in sym.iter() {
        if m.without(&[t]) != Monomial::one() {
            return Err(HflError::BadShape(format!("unexpected variable in {m:?}")));
        }
        if !c.abs().is_one() {
            return Err(HflError::BadShape(format!("coefficient {c} is not ±1")));
        }
    }
    let positive: Vec<i64> = sym
        .iter()
        .map(|(m, _)| m.exponent(t))
        .filter(|&e| e > 0)
        .collect();
    let k = positive.len();
    // Exponents must be exactly {0, ±n_1, …, ±n_k} with the alternating signs.
    let mut expected = LaurentPoly::zero();
    expected.add_term(
        Monomial::one(),
        BigInt::from(if k % 2 == 0 { 1 } else { -1 }),
    );
    for (idx, &n) in positive.iter().enumerate() {
        let i = idx + 1;
        let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
        expected.add_term(Monomial::t(0, n), BigInt::from(sign));
        expected.add_term(Monomial::t(0, -n), BigInt::from(sign));
    }
    if expected != sym {
        return Err(HflError::BadShape(format!(
            "sign pattern mismatch: got {sym}, want {expected}"
        )));
    }

    let n_at = |i: i64| -> i64 {
        if i == 0 {
            0
        } else if i > 0 {
            positive[(i - 1) as usize]
        } else {
            -positive[(-i - 1) as usize]
        }
    };
    let k = k as i64;
    let mut maslov = std::collections::BTreeMap::new();
    maslov.insert(k, 0i64);
    for i in (-k..k).rev() {
        let next = maslov[&(i + 1)];
        let d = if (k - i) % 2 == 1 {
            next - 2 * (n_at(i + 1) - n_at(i)) + 1
        } else {
            next - 1
        };
        maslov.insert(i, d);
    }
    Ok(HFLTable {
        entries: (-k..=k).map(|i| (n_at(i), maslov[&i])).collect(),
    })
}

/// Sign-to-grading transform on the reduced series of an irreducible curve:
/// +t^α q^β ↦ t^α u^{-2β} and -t^α q^β ↦ t^α u^{1-2β}.
pub fn maslov_transform(p: &LaurentPoly) -> Result<BiGradedPoly, HflError> {
    let mut out = LaurentPoly::zero();
    for (m, c) in p.iter() {
        if !c.abs().is_one() {
            return Err(HflError::BadCoefficient(format!("{c} at {m:?}")));
        }
        let d = m.q_exp_doubled();
        if d % 2 != 0 {
            return Err(HflError::BadCoefficient(format!(
                "half-integer q power in {m:?}"
            )));
        }
        let u_exp = if c.is_negative() { 1 - d } else { -d };
        let mono = Monomial::t(0, m.exponent(VarId::T(0))).mul(&Monomial::u(0, u_exp));
        out.add_term(mono, BigInt::one());
    }
    Ok(out)
}

/// HFL(t, u) = t^{deg Δ / 2} · (transform of P̄)(t^{-1}, u), with deg Δ read
/// off the q = 1 specialisation.
pub fn hfl_from_pbar(p: &LaurentPoly) -> Result<BiGradedPoly, HflError> {
    let transformed = maslov_transform(p)?;
    let deg = p
        .evaluate_ones(&[VarId::Q])
        .degree_in(VarId::T(0))
        .unwrap_or(0);
    if deg % 2 != 0 {
        return Err(HflError::BadShape(format!("Alexander degree {deg} is odd")));
    }
    let reversed = transformed.substitute_var(VarId::T(0), 1, Monomial::t(0, -1));
    Ok(reversed.mul_monomial(&Monomial::t(0, deg / 2), &BigInt::one()))
}

/// Two-variable polynomial whose T-exponents are stored doubled, so
/// half-integer Alexander gradings stay in integer arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfTPoly(pub LaurentPoly);

impl std::fmt::Display for HalfTPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        // Same shape as the default renderer, with halved t-exponents.
        if self.0.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, (m, c)) in self.0.iter().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut parts: Vec<String> = Vec::new();
            let abs = c.abs();
            if !abs.is_one() || m.is_one() {
                parts.push(abs.to_string());
            }
            let mut vars: Vec<(VarId, i64)> = m.iter().collect();
            vars.sort_by_key(|(v, _)| *v);
            for (v, e) in vars {
                match v {
                    VarId::T(idx) => {
                        let name = format!("t{}", idx + 1);
                        if e % 2 == 0 {
                            let h = e / 2;
                            parts.push(if h == 1 { name } else { format!("{name}^{h}") });
                        } else {
                            parts.push(format!("{name}^({e}/2)"));
                        }
                    }
                    VarId::U(_) => {
                        parts.push(if e == 1 { "u".into() } else { format!("u^{e}") });
                    }
                    VarId::Q => parts.push(format!("q^{e}")),
                }
            }
            out.push_str(&parts.join("*"));
        }
        write!(f, "{out}")
    }
}

/// Closed-form HFL Poincaré polynomial of the A_{2n-1} two-component link,
/// assembled from the staircase blocks
/// Y⁰ = 1, Y¹_{(-1)} = u^{-1}(t₁+t₂) + u^{-2} and
/// B_{(d)} = u^d + (t₁+t₂)u^{d+1} + u^{d+2} t₁t₂, each shifted by
/// (t₁t₂)^{n/2-i}. Display-only: no general link transform exists.
pub fn hfl_a2n1_closed(n: u32) -> HalfTPoly {
    assert!(n >= 1);
    let n = n as i64;
    // doubled t-exponents: (t1 t2)^{n/2 - i} stores n - 2i on each variable
    let tt = |d1: i64, d2: i64| Monomial::t(0, d1).mul(&Monomial::t(1, d2));
    let mut p = LaurentPoly::zero();
    p.add_term(tt(n, n), BigInt::one());
    p.add_term(tt(n, n - 2).mul(&Monomial::u(0, -1)), BigInt::one());
    p.add_term(tt(n - 2, n).mul(&Monomial::u(0, -1)), BigInt::one());
    p.add_term(tt(n - 2, n - 2).mul(&Monomial::u(0, -2)), BigInt::one());
    for i in 2..=n {
        let base = n - 2 * i;
        p.add_term(tt(base, base).mul(&Monomial::u(0, -2 * i)), BigInt::one());
        p.add_term(
            tt(base + 2, base).mul(&Monomial::u(0, -2 * i + 1)),
            BigInt::one(),
        );
        p.add_term(
            tt(base, base + 2).mul(&Monomial::u(0, -2 * i + 1)),
            BigInt::one(),
        );
        p.add_term(
            tt(base + 2, base + 2).mul(&Monomial::u(0, -2 * i + 2)),
            BigInt::one(),
        );
    }
    HalfTPoly(p)
}

/// The integral shift (t₁t₂)^{n/2} · HFL_{A_{2n-1}}(t₁^{-1}, t₂^{-1}, u),
/// which clears the half-integer gradings.
pub fn a2n1_shifted(n: u32) -> LaurentPoly {
    let half = hfl_a2n1_closed(n).0;
    let n = n as i64;
    let mut out = LaurentPoly::zero();
    for (m, c) in half.iter() {
        let d1 = n - m.exponent(VarId::T(0));
        let d2 = n - m.exponent(VarId::T(1));
        assert!(d1 % 2 == 0 && d2 % 2 == 0);
        let mono = Monomial::t(0, d1 / 2)
            .mul(&Monomial::t(1, d2 / 2))
            .mul(&Monomial::u(0, m.exponent(VarId::U(0))));
        out.add_term(mono, c.clone());
    }
    out
}
