//! Bundled example inputs: the resolution graphs and semigroups exercised by
//! the test suite and exposed through the CLI `examples` command.

use crate::engine::SemigroupSpec;
use crate::resolution::ResolutionGraph;

/// Smooth curve: one (-1) divisor carrying the single branch.
pub fn nonsingular() -> ResolutionGraph {
    ResolutionGraph::new(&[-1], &[], &[(0, "t")])
}

/// Union of k pairwise transversal lines: one (-1) divisor with k arrows.
pub fn one_divisor(k: usize) -> ResolutionGraph {
    let arrows: Vec<(usize, String)> = (0..k).map(|i| (0, format!("t{}", i + 1))).collect();
    let arrow_refs: Vec<(usize, &str)> = arrows.iter().map(|(d, n)| (*d, n.as_str())).collect();
    ResolutionGraph::new(&[-1], &[], &arrow_refs)
}

/// Two transversal lines (A₁), labelled t0/t1 to match the three-branch curve
/// it sits inside.
pub fn a1() -> ResolutionGraph {
    ResolutionGraph::new(&[-1], &[], &[(0, "t0"), (0, "t1")])
}

/// x(y-x²)(y+x²) = 0: a line through two mutually tangent parabolas. The
/// first divisor carries the line, the second the two parabola branches.
pub fn two_divisors() -> ResolutionGraph {
    ResolutionGraph::new(&[-2, -1], &[(0, 1)], &[(0, "t0"), (1, "t1"), (1, "t2")])
}

/// xy(x²-y³) = 0: coordinate axes through a cusp; one arrow per divisor.
pub fn three_divisors() -> ResolutionGraph {
    ResolutionGraph::new(
        &[-3, -2, -1],
        &[(0, 2), (1, 2)],
        &[(0, "t1"), (1, "t2"), (2, "t3")],
    )
}

/// The cusp x² = y³ alone: same divisor tree as [`three_divisors`] but with a
/// single arrow; the two arrow-free divisors exercise the series fallback.
pub fn cusp() -> ResolutionGraph {
    ResolutionGraph::new(&[-3, -2, -1], &[(0, 2), (1, 2)], &[(2, "t")])
}

/// A_{2n-1} (y² = x^{2n}): a chain of n divisors with both branches on the
/// last one.
pub fn a2n1_chain(n: usize) -> ResolutionGraph {
    assert!(n >= 1);
    let mut selfint = vec![-2i64; n - 1];
    selfint.push(-1);
    let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    ResolutionGraph::new(&selfint, &edges, &[(n - 1, "t1"), (n - 1, "t2")])
}

/// A₃ = y² = x⁴: the n = 2 chain.
pub fn a3_chain() -> ResolutionGraph {
    a2n1_chain(2)
}

/// Minimal embedded resolution of the (3,5) torus knot x³ = y⁵
/// (multiplicities 3, 5, 9, 15 along the four divisors).
pub fn torus_3_5() -> ResolutionGraph {
    ResolutionGraph::new(&[-3, -3, -2, -1], &[(0, 2), (2, 3), (3, 1)], &[(3, "t")])
}

/// Minimal embedded resolution of the (2,5) torus knot x² = y⁵
/// (multiplicities 2, 4, 5, 10).
pub fn torus_2_5() -> ResolutionGraph {
    ResolutionGraph::new(&[-2, -3, -2, -1], &[(0, 1), (1, 3), (3, 2)], &[(3, "t")])
}

pub fn torus_3_5_semigroup() -> SemigroupSpec {
    SemigroupSpec::new(vec![3, 5])
}

/// Every bundled graph with its file-stem name.
pub fn all_graphs() -> Vec<(&'static str, ResolutionGraph)> {
    vec![
        ("nonsingular", nonsingular()),
        ("one_divisor_2", one_divisor(2)),
        ("one_divisor_3", one_divisor(3)),
        ("a1", a1()),
        ("two_divisors", two_divisors()),
        ("three_divisors", three_divisors()),
        ("cusp", cusp()),
        ("a3_chain", a3_chain()),
        ("torus_3_5", torus_3_5()),
        ("torus_2_5", torus_2_5()),
    ]
}
