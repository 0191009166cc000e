//! Acceptance suite: every criterion is an exact identity, one test per
//! criterion, each printing its pass line (visible with `--nocapture`).

use num_bigint::BigInt;
use num_traits::One;

use motivic::corpus;
use motivic::engine::{self, SemigroupSpec};
use motivic::hfl;
use motivic::poly::{binom_alt_series_identity, LaurentPoly, Monomial, VarId};
use motivic::resolution::{validate, CurveInvariants, ResolutionData, ResolutionGraph};
use motivic::verify;

fn prepared(graph: &ResolutionGraph) -> (ResolutionData, CurveInvariants) {
    let data = validate(graph).expect("bundled graph validates");
    let inv = data.milnor_numbers().expect("invariants");
    (data, inv)
}

fn pbar(graph: &ResolutionGraph) -> LaurentPoly {
    let (data, inv) = prepared(graph);
    engine::assemble(&data, &inv).expect("assembly")
}

/// Build a polynomial from (coeff, q-power, t-exponents) triples.
fn poly(terms: &[(i64, i64, &[i64])]) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for &(c, q, t) in terms {
        let mut m = Monomial::q(q);
        for (alpha, &e) in t.iter().enumerate() {
            m.set(VarId::T(alpha as u16), e);
        }
        p.add_term(m, BigInt::from(c));
    }
    p
}

fn t(i: usize) -> LaurentPoly {
    LaurentPoly::t(i)
}

fn q() -> LaurentPoly {
    LaurentPoly::q()
}

fn one() -> LaurentPoly {
    LaurentPoly::one()
}

fn one_minus_qt(i: usize) -> LaurentPoly {
    one() - q() * t(i)
}

fn one_minus_t(i: usize) -> LaurentPoly {
    one() - t(i)
}

fn golden_one_divisor_2() -> LaurentPoly {
    poly(&[
        (1, 0, &[0, 0]),
        (-1, 1, &[1, 0]),
        (-1, 1, &[0, 1]),
        (1, 1, &[1, 1]),
    ])
}

fn golden_one_divisor_3() -> LaurentPoly {
    // compact form: (1-qt1)(1-qt2)(1-qt3) - q³t1t2t3(1-t1)(1-t2)(1-t3) + q(1-q)²t1t2t3
    let products = one_minus_qt(0) * one_minus_qt(1) * one_minus_qt(2);
    let e3 = t(0) * t(1) * t(2);
    let tail = LaurentPoly::monomial(Monomial::q(3))
        * &e3
        * (one_minus_t(0) * one_minus_t(1) * one_minus_t(2));
    let middle = q() * (one() - q()).pow(2) * &e3;
    let compact = products - tail + middle;

    // long display: 1 - q e₁ + q² e₂ + q(1-2q-q²) e₃ + q³ e₃ e₁ - q³ e₃ e₂ + q³ e₃²
    let e1 = t(0) + t(1) + t(2);
    let e2 = t(0) * t(1) + t(0) * t(2) + t(1) * t(2);
    let q3 = LaurentPoly::monomial(Monomial::q(3));
    let long = one() - q() * &e1
        + LaurentPoly::monomial(Monomial::q(2)) * &e2
        + q() * (one() - q().scale(2) - LaurentPoly::monomial(Monomial::q(2))) * &e3
        + &q3 * &e3 * &e1
        - &q3 * &e3 * &e2
        + q3 * &e3 * &e3;
    assert_eq!(compact, long, "the two printed forms agree");
    compact
}

fn golden_two_divisors() -> LaurentPoly {
    // compact: (1-qt0)(1-qt1)(1-qt2) - q⁴t0t1²t2²(1-t0)(1-t1)(1-t2)
    //          + (1-q) q t0t1t2 (1 - qt1 - qt2 + qt1t2)
    let products = one_minus_qt(0) * one_minus_qt(1) * one_minus_qt(2);
    let top = LaurentPoly::term(
        Monomial::q(4)
            .mul(&Monomial::t(0, 1))
            .mul(&Monomial::t(1, 2))
            .mul(&Monomial::t(2, 2)),
        1,
    );
    let tail = top * (one_minus_t(0) * one_minus_t(1) * one_minus_t(2));
    let inner = one() - q() * t(1) - q() * t(2) + q() * t(1) * t(2);
    let middle = (one() - q()) * q() * t(0) * t(1) * t(2) * inner;
    let compact = products - tail + middle;

    let literal = poly(&[
        (1, 0, &[0, 0, 0]),
        (-1, 1, &[1, 0, 0]),
        (-1, 1, &[0, 1, 0]),
        (1, 2, &[1, 1, 0]),
        (-1, 1, &[0, 0, 1]),
        (1, 2, &[1, 0, 1]),
        (1, 2, &[0, 1, 1]),
        (1, 1, &[1, 1, 1]),
        (-1, 2, &[1, 1, 1]),
        (-1, 3, &[1, 1, 1]),
        (-1, 2, &[1, 2, 1]),
        (1, 3, &[1, 2, 1]),
        (-1, 2, &[1, 1, 2]),
        (1, 3, &[1, 1, 2]),
        (1, 2, &[1, 2, 2]),
        (-1, 3, &[1, 2, 2]),
        (-1, 4, &[1, 2, 2]),
        (1, 4, &[2, 2, 2]),
        (1, 4, &[1, 3, 2]),
        (-1, 4, &[2, 3, 2]),
        (1, 4, &[1, 2, 3]),
        (-1, 4, &[2, 2, 3]),
        (-1, 4, &[1, 3, 3]),
        (1, 4, &[2, 3, 3]),
    ]);
    assert_eq!(compact, literal, "compact and printed term list agree");
    assert_eq!(compact.num_terms(), 24);
    compact
}

fn golden_three_divisors() -> LaurentPoly {
    // compact: (1-qt1)(1-qt2)(1-qt3) - q⁷t1²t2³t3⁶(1-t1)(1-t2)(1-t3)
    //          - q(q-1)t1t2t3²(1-qt2)(1-qt3) - q⁴(q-1)t1²t2²t3⁴(1-t2)(1-t3)
    //          - q²(q-1)t1t2²t3³(1-qt1) + q³(q-1)t1t2²t3⁴(1-t1)
    let q_minus_1 = q() - one();
    let mono = |qe: i64, e: &[i64]| {
        let mut m = Monomial::q(qe);
        for (alpha, &exp) in e.iter().enumerate() {
            m.set(VarId::T(alpha as u16), exp);
        }
        LaurentPoly::monomial(m)
    };
    let compact = one_minus_qt(0) * one_minus_qt(1) * one_minus_qt(2)
        - mono(7, &[2, 3, 6]) * (one_minus_t(0) * one_minus_t(1) * one_minus_t(2))
        - mono(1, &[1, 1, 2]) * &q_minus_1 * (one_minus_qt(1) * one_minus_qt(2))
        - mono(4, &[2, 2, 4]) * &q_minus_1 * (one_minus_t(1) * one_minus_t(2))
        - mono(2, &[1, 2, 3]) * &q_minus_1 * one_minus_qt(0)
        + mono(3, &[1, 2, 4]) * &q_minus_1 * one_minus_t(0);

    let literal = poly(&[
        (1, 0, &[0, 0, 0]),
        (-1, 1, &[0, 0, 1]),
        (1, 7, &[2, 3, 7]),
        (1, 5, &[2, 2, 5]),
        (1, 3, &[1, 1, 3]),
        (1, 4, &[1, 2, 4]),
        (-1, 7, &[2, 4, 7]),
        (1, 2, &[0, 1, 1]),
        (-1, 2, &[1, 1, 3]),
        (1, 2, &[1, 1, 0]),
        (-1, 3, &[1, 2, 4]),
        (-1, 4, &[2, 2, 5]),
        (-1, 2, &[1, 2, 2]),
        (-1, 5, &[2, 3, 5]),
        (-1, 7, &[3, 3, 7]),
        (-1, 7, &[3, 4, 6]),
        (1, 4, &[2, 3, 5]),
        (1, 3, &[2, 2, 4]),
        (1, 4, &[2, 2, 3]),
        (-1, 3, &[2, 2, 3]),
        (1, 5, &[2, 3, 4]),
        (1, 7, &[2, 4, 6]),
        (1, 3, &[1, 2, 2]),
        (-1, 7, &[2, 3, 6]),
        (-1, 5, &[2, 2, 4]),
        (-1, 4, &[1, 2, 3]),
        (-1, 3, &[1, 1, 1]),
        (1, 2, &[1, 2, 3]),
        (-1, 1, &[0, 1, 0]),
        (1, 2, &[1, 0, 1]),
        (-1, 2, &[1, 1, 2]),
        (1, 7, &[3, 4, 7]),
        (1, 1, &[1, 1, 2]),
        (-1, 1, &[1, 0, 0]),
        (-1, 4, &[2, 3, 4]),
        (1, 7, &[3, 3, 6]),
    ]);
    assert_eq!(compact, literal, "compact and printed term list agree");
    compact
}

fn golden_trefoil_pbar() -> LaurentPoly {
    poly(&[(1, 0, &[0]), (-1, 1, &[1]), (1, 1, &[2])])
}

fn golden_torus_3_5_pbar() -> LaurentPoly {
    poly(&[
        (1, 0, &[0]),
        (-1, 1, &[1]),
        (1, 1, &[3]),
        (-1, 2, &[4]),
        (1, 2, &[5]),
        (-1, 4, &[7]),
        (1, 4, &[8]),
    ])
}

#[test]
fn criterion_1_exact_goldens() {
    assert_eq!(pbar(&corpus::one_divisor(2)), golden_one_divisor_2());
    assert_eq!(pbar(&corpus::one_divisor(3)), golden_one_divisor_3());
    assert_eq!(pbar(&corpus::two_divisors()), golden_two_divisors());
    assert_eq!(pbar(&corpus::three_divisors()), golden_three_divisors());
    println!("criterion 1: PASS exact golden polynomials (one divisor k=2,3; two divisors; three divisors)");
}

#[test]
fn criterion_2_nonsingular() {
    assert_eq!(pbar(&corpus::nonsingular()), LaurentPoly::one());
    println!("criterion 2: PASS nonsingular curve gives 1");
}

#[test]
fn criterion_3_semigroup_path() {
    let series = engine::semigroup_series(&SemigroupSpec::new(vec![2, 3]), 10).unwrap();
    let mut head = LaurentPoly::one();
    for j in 2..=10i64 {
        head.add_term(Monomial::t(0, j).mul(&Monomial::q(j - 1)), BigInt::one());
    }
    assert_eq!(series.pg_head, head);
    assert_eq!(series.pg_head.num_terms(), 10);
    assert_eq!(series.pbar, golden_trefoil_pbar());

    let series = engine::semigroup_series(&SemigroupSpec::new(vec![3, 5]), 10).unwrap();
    assert_eq!(series.pbar, golden_torus_3_5_pbar());
    println!("criterion 3: PASS semigroup route (⟨2,3⟩ head to 10 terms, ⟨3,5⟩ reduced series)");
}

#[test]
fn criterion_4_cross_path_equality() {
    // exact single-arrow route wherever it applies
    let two_chain = ResolutionGraph::new(&[-2, -1], &[(0, 1)], &[(0, "t1"), (1, "t2")]);
    for graph in [corpus::nonsingular(), corpus::three_divisors(), two_chain] {
        let (data, inv) = prepared(&graph);
        assert_eq!(
            engine::assemble(&data, &inv).unwrap(),
            engine::assemble_single_arrow(&data).unwrap()
        );
    }
    // brute-force series oracle on every bundled graph, arrow-free divisors included
    for (name, graph) in corpus::all_graphs() {
        let (data, inv) = prepared(&graph);
        let bound: i64 = inv.l_alpha.iter().sum();
        assert_eq!(
            engine::assemble(&data, &inv).unwrap(),
            engine::oracle_series(&data, bound),
            "oracle mismatch on {name}"
        );
    }
    println!("criterion 4: PASS cross-path equality (single-arrow route and series oracle)");
}

#[test]
fn criterion_5_resolution_vs_semigroup() {
    let from_graph = pbar(&corpus::cusp());
    let from_semigroup = engine::semigroup_series(&SemigroupSpec::new(vec![2, 3]), 0)
        .unwrap()
        .pbar;
    assert_eq!(from_graph, from_semigroup);

    let from_graph = pbar(&corpus::torus_3_5());
    let from_semigroup = engine::semigroup_series(&SemigroupSpec::new(vec![3, 5]), 0)
        .unwrap()
        .pbar;
    assert_eq!(from_graph, from_semigroup);

    let from_graph = pbar(&corpus::torus_2_5());
    let from_semigroup = engine::semigroup_series(&SemigroupSpec::new(vec![2, 5]), 0)
        .unwrap()
        .pbar;
    assert_eq!(from_graph, from_semigroup);
    println!(
        "criterion 5: PASS resolution graphs reproduce the semigroup series (cusp, (3,5), (2,5))"
    );
}

#[test]
fn criterion_6_a2n1_family() {
    for n in 1..=5 {
        let closed = engine::a2n1_closed_form(n);
        let chain = pbar(&corpus::a2n1_chain(n as usize));
        assert_eq!(closed, chain, "closed form vs chain graph at n = {n}");
    }
    // n = 2 also equals the three-branch curve at t0 = 1, divided by (1 - q)
    let specialised = pbar(&corpus::two_divisors())
        .evaluate_ones(&[VarId::T(0)])
        .rename_vars(|v| match v {
            VarId::T(i) => VarId::T(i - 1),
            other => other,
        });
    let factor = motivic::poly::BinomialFactor::plain(VarId::Q);
    let quotient = specialised.exact_div_binomial(&factor).unwrap();
    assert_eq!(quotient, engine::a2n1_closed_form(2));
    println!("criterion 6: PASS A_(2n-1) closed forms (n = 1..5, plus the t0 = 1 specialisation)");
}

#[test]
fn criterion_7_property_suite() {
    for (name, graph) in corpus::all_graphs() {
        let (data, inv) = prepared(&graph);
        let p = engine::assemble(&data, &inv).unwrap();
        assert!(verify::check_symmetry(&p, &inv).pass, "symmetry on {name}");
        assert!(verify::check_degree(&p, &inv).pass, "degree on {name}");
        let (delta, report) = verify::check_alexander(&p, data.r());
        assert!(report.pass, "alexander on {name}");
        let delta = delta.unwrap();
        if data.r() == 1 {
            assert!(verify::check_forget_unit(&p).pass, "unit forget on {name}");
            for (_, c) in p.iter() {
                assert!(
                    c.magnitude() <= BigInt::one().magnitude(),
                    "±1 coefficients on {name}"
                );
            }
        }
        match name {
            "two_divisors" => {
                assert_eq!(delta, poly(&[(1, 0, &[0, 0, 0]), (-1, 0, &[1, 2, 2])]));
            }
            "three_divisors" => {
                assert_eq!(delta, poly(&[(1, 0, &[0, 0, 0]), (-1, 0, &[2, 3, 6])]));
                let at_q1 = p.evaluate_ones(&[VarId::Q]);
                let want = (one()
                    - LaurentPoly::monomial(
                        Monomial::t(0, 2)
                            .mul(&Monomial::t(1, 3))
                            .mul(&Monomial::t(2, 6)),
                    ))
                    * one_minus_t(0)
                    * one_minus_t(1)
                    * one_minus_t(2);
                assert_eq!(at_q1, want);
            }
            "cusp" => {
                assert_eq!(delta, poly(&[(1, 0, &[0]), (-1, 0, &[1]), (1, 0, &[2])]));
            }
            _ => {}
        }
    }

    // forgetting identities of the three-branch curve
    let full = pbar(&corpus::two_divisors());
    let a1 = pbar(&corpus::a1());
    assert!(verify::check_forget(&full, &a1, 2).pass, "drop t2 vs A1");
    let a3 = pbar(&corpus::a3_chain());
    assert!(verify::check_forget(&full, &a3, 0).pass, "drop t0 vs A3");
    // the t2 = 1 specialisation literally
    let specialised = full.evaluate_ones(&[VarId::T(2)]);
    let want = (one() - q()) * (one() - q() * t(0) - q() * t(1) + q() * t(0) * t(1));
    assert_eq!(specialised, want);
    println!("criterion 7: PASS property suite (symmetry, Alexander, degree, forgetting, ±1 coefficients)");
}

#[test]
fn criterion_8_hfl() {
    let series = engine::semigroup_series(&SemigroupSpec::new(vec![3, 5]), 0).unwrap();
    let delta = series.pbar.evaluate_ones(&[VarId::Q]);
    let table = hfl::delta_sequence(&delta).unwrap();
    assert_eq!(
        table.entries,
        vec![
            (-4, -8),
            (-3, -7),
            (-1, -4),
            (0, -3),
            (1, -2),
            (3, -1),
            (4, 0)
        ]
    );
    // the intermediate transform: 1 + u⁻¹t + u⁻²t³ + u⁻³t⁴ + u⁻⁴t⁵ + u⁻⁷t⁷ + u⁻⁸t⁸
    let transformed = hfl::maslov_transform(&series.pbar).unwrap();
    let mut want = LaurentPoly::one();
    for (te, ue) in [(1, -1), (3, -2), (4, -3), (5, -4), (7, -7), (8, -8)] {
        want.add_term(Monomial::t(0, te).mul(&Monomial::u(0, ue)), BigInt::one());
    }
    assert_eq!(transformed, want);

    let via_staircase = table.to_poly();
    let via_transform = hfl::hfl_from_pbar(&series.pbar).unwrap();
    assert_eq!(via_staircase, via_transform, "the two derivations agree");
    // u = -1 recovers the symmetrized Alexander polynomial
    let at_minus_one = via_transform.substitute_var(VarId::U(0), -1, Monomial::one());
    assert_eq!(at_minus_one, hfl::symmetrize(&delta).unwrap());

    // path equality across the bundled irreducible examples
    for gens in [
        vec![2u64, 3],
        vec![3, 5],
        vec![2, 5],
        vec![2, 7],
        vec![2, 9],
    ] {
        let series = engine::semigroup_series(&SemigroupSpec::new(gens.clone()), 0).unwrap();
        let delta = series.pbar.evaluate_ones(&[VarId::Q]);
        let table = hfl::delta_sequence(&delta).unwrap();
        assert_eq!(
            table.to_poly(),
            hfl::hfl_from_pbar(&series.pbar).unwrap(),
            "paths disagree for {gens:?}"
        );
        assert_eq!(table.euler_poly(), hfl::symmetrize(&delta).unwrap());
    }

    // closed-form A3 link polynomial: t1t2 + u⁻¹(t1+t2) + 2u⁻² + u⁻³(t1⁻¹+t2⁻¹) + u⁻⁴t1⁻¹t2⁻¹
    let got = hfl::hfl_a2n1_closed(2).0;
    let tt = |a: i64, b: i64, u: i64| {
        Monomial::t(0, a)
            .mul(&Monomial::t(1, b))
            .mul(&Monomial::u(0, u))
    };
    let mut want = LaurentPoly::zero();
    want.add_term(tt(2, 2, 0), BigInt::one());
    want.add_term(tt(2, 0, -1), BigInt::one());
    want.add_term(tt(0, 2, -1), BigInt::one());
    want.add_term(tt(0, 0, -2), BigInt::from(2));
    want.add_term(tt(0, -2, -3), BigInt::one());
    want.add_term(tt(-2, 0, -3), BigInt::one());
    want.add_term(tt(-2, -2, -4), BigInt::one());
    assert_eq!(got, want);

    // shifted two-line form: [1 + 2u⁻²t1t2 + … + u⁻²ⁿ(t1t2)ⁿ] + (t1+t2)[u⁻¹ + … + u⁻²ⁿ⁺¹(t1t2)ⁿ⁻¹]
    for n in 1..=4u32 {
        let shifted = hfl::a2n1_shifted(n);
        let mut want = LaurentPoly::one();
        let n = n as i64;
        for i in 1..n {
            want.add_term(
                Monomial::t(0, i)
                    .mul(&Monomial::t(1, i))
                    .mul(&Monomial::u(0, -2 * i)),
                BigInt::from(2),
            );
        }
        want.add_term(
            Monomial::t(0, n)
                .mul(&Monomial::t(1, n))
                .mul(&Monomial::u(0, -2 * n)),
            BigInt::one(),
        );
        for i in 1..=n {
            for (a, b) in [(1, 0), (0, 1)] {
                want.add_term(
                    Monomial::t(0, i - 1 + a)
                        .mul(&Monomial::t(1, i - 1 + b))
                        .mul(&Monomial::u(0, -2 * i + 1)),
                    BigInt::one(),
                );
            }
        }
        assert_eq!(shifted, want, "shifted closed form at n = {n}");
    }
    println!(
        "criterion 8: PASS HFL bridge (staircase = transform, (3,5) table, u = -1, closed forms)"
    );
}

#[test]
fn criterion_9_symbolic_identities() {
    for k in 1..=4 {
        assert!(
            binom_alt_series_identity(k, 8),
            "series identity at k = {k}"
        );
    }
    for (name, graph) in corpus::all_graphs() {
        if graph.s() > 3 {
            continue;
        }
        let data = validate(&graph).unwrap();
        let r = data.r();
        for mask in 0..(1usize << r) {
            let subset: Vec<bool> = (0..r).map(|a| mask & (1 << a) != 0).collect();
            assert!(
                engine::a_series_duality(&data, &subset),
                "duality failed on {name} for {subset:?}"
            );
        }
    }
    println!(
        "criterion 9: PASS symbolic identities (alternating-binomial series, A-series duality)"
    );
}
