//! Embedded resolution graphs of plane curve singularities and the numerical
//! data derived from them.
//!
//! The input is the dual tree of an embedded resolution: one vertex per
//! exceptional divisor with its self-intersection, edges for intersecting
//! divisors, and one arrow per branch of the strict transform. Validation
//! inverts the intersection matrix exactly over the rationals and rejects
//! graphs whose multiplicity matrix M = -A⁻¹ is not a positive integer matrix.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A branch of the strict transform, attached to one divisor. The name, when
/// present, becomes the t-variable label in rendered output.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Arrow {
    pub divisor: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Divisor {
    pub self_intersection: i64,
}

/// Dual graph of an embedded resolution. Serialises to the stable JSON schema
/// `{"divisors": [{"self_intersection": -2}, …], "edges": [[0,1], …],
/// "arrows": [{"divisor": 0, "name": "t1"}, …]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ResolutionGraph {
    pub divisors: Vec<Divisor>,
    pub edges: Vec<(usize, usize)>,
    pub arrows: Vec<Arrow>,
}

impl ResolutionGraph {
    pub fn new(
        self_intersections: &[i64],
        edges: &[(usize, usize)],
        arrows: &[(usize, &str)],
    ) -> Self {
        ResolutionGraph {
            divisors: self_intersections
                .iter()
                .map(|&s| Divisor {
                    self_intersection: s,
                })
                .collect(),
            edges: edges.to_vec(),
            arrows: arrows
                .iter()
                .map(|&(d, n)| Arrow {
                    divisor: d,
                    name: if n.is_empty() { None } else { Some(n.into()) },
                })
                .collect(),
        }
    }

    /// Number of exceptional divisors.
    pub fn s(&self) -> usize {
        self.divisors.len()
    }

    /// Number of branches.
    pub fn r(&self) -> usize {
        self.arrows.len()
    }

    /// t-variable labels in arrow order, defaulting to t1..tr.
    pub fn arrow_names(&self) -> Vec<String> {
        self.arrows
            .iter()
            .enumerate()
            .map(|(i, a)| a.name.clone().unwrap_or_else(|| format!("t{}", i + 1)))
            .collect()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph has no divisors")]
    EmptyGraph,
    #[error("graph has no arrows (the curve must have at least one branch)")]
    NoArrows,
    #[error("self-intersection {value} of divisor {divisor} must be ≤ -1")]
    BadSelfIntersection { divisor: usize, value: i64 },
    #[error("edge ({0}, {1}) is invalid")]
    BadEdge(usize, usize),
    #[error("arrow {arrow} points at divisor {divisor} out of range")]
    ArrowOutOfRange { arrow: usize, divisor: usize },
    #[error("edges do not form a tree on the divisors")]
    NotATree,
    #[error("intersection matrix is not unimodular: M = -A^-1 {0}")]
    NonUnimodular(String),
    #[error("multiplicity matrix has a non-positive entry m[{0}][{1}] = {2}")]
    NonPositiveM(usize, usize, i64),
    #[error("µ + r - 1 = {0} is odd: the graph is not the resolution of a plane curve")]
    ParityError(i64),
}

/// Validated resolution graph together with every derived quantity the
/// series formulas consume.
#[derive(Clone, Debug)]
pub struct ResolutionData {
    pub graph: ResolutionGraph,
    /// Multiplicity matrix M = -A⁻¹ (positive integers).
    pub m: Vec<Vec<i64>>,
    /// χ(E_i^•) = 2 - tree degree of divisor i.
    pub chi_bullet: Vec<i64>,
    /// χ(E_i^∘) = χ(E_i^•) - k_i.
    pub chi_circ: Vec<i64>,
    /// Arrow count k_i per divisor.
    pub k: Vec<usize>,
    /// Arrow indices attached to each divisor.
    pub arrows_on: Vec<Vec<usize>>,
    /// Divisor i(α) carrying branch α.
    pub arrow_divisor: Vec<usize>,
    /// Σ_j m_ij χ(E_j^•) + 1, the linear coefficients of the quadratic form.
    linear: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveInvariants {
    /// Milnor number of the whole curve.
    pub mu: i64,
    /// Milnor numbers of the branches.
    pub mu_alpha: Vec<i64>,
    /// l_α = µ_α + Σ_{β≠α} (C_α ∘ C_β); the t_α-degree of the series.
    pub l_alpha: Vec<i64>,
    /// δ = (µ + r - 1)/2; the q-degree of the series.
    pub delta: i64,
    /// Pairwise intersection numbers C_α ∘ C_β (diagonal zero).
    pub pairwise: Vec<Vec<i64>>,
}

/// Validate a graph and derive matrices and Euler characteristics.
pub fn validate(graph: &ResolutionGraph) -> Result<ResolutionData, GraphError> {
    let s = graph.s();
    if s == 0 {
        return Err(GraphError::EmptyGraph);
    }
    if graph.arrows.is_empty() {
        return Err(GraphError::NoArrows);
    }
    for (i, d) in graph.divisors.iter().enumerate() {
        if d.self_intersection > -1 {
            return Err(GraphError::BadSelfIntersection {
                divisor: i,
                value: d.self_intersection,
            });
        }
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut adj = vec![Vec::new(); s];
    for &(a, b) in &graph.edges {
        if a >= s || b >= s || a == b {
            return Err(GraphError::BadEdge(a, b));
        }
        if !seen.insert((a.min(b), a.max(b))) {
            return Err(GraphError::BadEdge(a, b));
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    if graph.edges.len() + 1 != s || !connected(&adj) {
        return Err(GraphError::NotATree);
    }
    for (idx, arrow) in graph.arrows.iter().enumerate() {
        if arrow.divisor >= s {
            return Err(GraphError::ArrowOutOfRange {
                arrow: idx,
                divisor: arrow.divisor,
            });
        }
    }

    // -A as an exact rational matrix, inverted by Gauss-Jordan.
    let mut neg_a = vec![vec![BigRational::zero(); s]; s];
    for i in 0..s {
        neg_a[i][i] = BigRational::from(BigInt::from(-graph.divisors[i].self_intersection));
    }
    for &(a, b) in &graph.edges {
        neg_a[a][b] = -BigRational::one();
        neg_a[b][a] = -BigRational::one();
    }
    let inv =
        invert(neg_a).ok_or_else(|| GraphError::NonUnimodular("matrix is singular".into()))?;
    let mut m = vec![vec![0i64; s]; s];
    for i in 0..s {
        for j in 0..s {
            let entry = &inv[i][j];
            if !entry.is_integer() {
                return Err(GraphError::NonUnimodular(format!(
                    "has non-integer entry {} at ({}, {})",
                    entry, i, j
                )));
            }
            let v = entry.to_integer().to_i64().expect("matrix entry overflow");
            if v <= 0 {
                return Err(GraphError::NonPositiveM(i, j, v));
            }
            m[i][j] = v;
        }
    }

    let chi_bullet: Vec<i64> = (0..s).map(|i| 2 - adj[i].len() as i64).collect();
    let mut k = vec![0usize; s];
    let mut arrows_on = vec![Vec::new(); s];
    for (idx, arrow) in graph.arrows.iter().enumerate() {
        k[arrow.divisor] += 1;
        arrows_on[arrow.divisor].push(idx);
    }
    let chi_circ: Vec<i64> = (0..s).map(|i| chi_bullet[i] - k[i] as i64).collect();
    debug_assert_eq!(
        chi_circ.iter().sum::<i64>(),
        2 - graph.r() as i64,
        "Euler characteristic bookkeeping"
    );

    let linear: Vec<i64> = (0..s)
        .map(|i| (0..s).map(|j| m[i][j] * chi_bullet[j]).sum::<i64>() + 1)
        .collect();

    Ok(ResolutionData {
        graph: graph.clone(),
        m,
        chi_bullet,
        chi_circ,
        k,
        arrows_on,
        arrow_divisor: graph.arrows.iter().map(|a| a.divisor).collect(),
        linear,
    })
}

fn connected(adj: &[Vec<usize>]) -> bool {
    let mut visited = vec![false; adj.len()];
    let mut stack = vec![0usize];
    visited[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !visited[w] {
                visited[w] = true;
                stack.push(w);
            }
        }
    }
    visited.iter().all(|&v| v)
}

fn invert(mut a: Vec<Vec<BigRational>>) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= p.clone();
            inv[col][j] /= p.clone();
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for j in 0..n {
                    let av = a[col][j].clone();
                    let iv = inv[col][j].clone();
                    a[r][j] -= factor.clone() * av;
                    inv[r][j] -= factor.clone() * iv;
                }
            }
        }
    }
    Some(inv)
}

impl ResolutionData {
    pub fn s(&self) -> usize {
        self.graph.s()
    }

    pub fn r(&self) -> usize {
        self.graph.r()
    }

    pub fn self_intersection(&self, i: usize) -> i64 {
        self.graph.divisors[i].self_intersection
    }

    /// Intersection matrix entry a_ij (edges are 1, the rest 0 off-diagonal).
    pub fn a(&self, i: usize, j: usize) -> i64 {
        if i == j {
            self.self_intersection(i)
        } else if self
            .graph
            .edges
            .iter()
            .any(|&(x, y)| (x, y) == (i, j) || (x, y) == (j, i))
        {
            1
        } else {
            0
        }
    }

    /// Doubled quadratic form 2·F̄(n) = Σ m_ij n_i n_j + Σ_i n_i (Σ_j m_ij χ(E_j^•) + 1).
    pub fn quadratic_form(&self, n: &[i64]) -> i64 {
        let s = self.s();
        assert_eq!(n.len(), s);
        let mut total = 0i64;
        for i in 0..s {
            for j in 0..s {
                total += self.m[i][j] * n[i] * n[j];
            }
            total += n[i] * self.linear[i];
        }
        total
    }

    /// t-exponent vector of t^{Mn}: branch α gets (Mn)_{i(α)}.
    pub fn t_exponent(&self, n: &[i64]) -> Vec<i64> {
        let s = self.s();
        assert_eq!(n.len(), s);
        self.arrow_divisor
            .iter()
            .map(|&d| (0..s).map(|j| self.m[d][j] * n[j]).sum())
            .collect()
    }

    /// Milnor numbers, intersection multiplicities, t-degrees and δ.
    ///
    /// Uses A'Campo's formula 1 - µ = Σ_i χ(E_i^∘) Σ_j m_ij k_j for the whole
    /// curve and 1 - µ_α = Σ_j m_{i(α)j} χ(E_j^•) - m_{i(α)i(α)} per branch;
    /// pairwise intersections are C_α ∘ C_β = m_{i(α) i(β)}.
    pub fn milnor_numbers(&self) -> Result<CurveInvariants, GraphError> {
        let s = self.s();
        let r = self.r();
        let weighted: Vec<i64> = (0..s)
            .map(|i| (0..s).map(|j| self.m[i][j] * self.k[j] as i64).sum())
            .collect();
        let mu = 1 - (0..s).map(|i| self.chi_circ[i] * weighted[i]).sum::<i64>();
        if (mu + r as i64 - 1) % 2 != 0 {
            return Err(GraphError::ParityError(mu + r as i64 - 1));
        }
        let delta = (mu + r as i64 - 1) / 2;

        let mu_alpha: Vec<i64> = (0..r)
            .map(|alpha| {
                let d = self.arrow_divisor[alpha];
                1 - ((0..s)
                    .map(|j| self.m[d][j] * self.chi_bullet[j])
                    .sum::<i64>()
                    - self.m[d][d])
            })
            .collect();
        let mut pairwise = vec![vec![0i64; r]; r];
        for alpha in 0..r {
            for beta in 0..r {
                if alpha != beta {
                    pairwise[alpha][beta] =
                        self.m[self.arrow_divisor[alpha]][self.arrow_divisor[beta]];
                }
            }
        }
        let l_alpha: Vec<i64> = (0..r)
            .map(|alpha| mu_alpha[alpha] + pairwise[alpha].iter().sum::<i64>())
            .collect();
        debug_assert_eq!(l_alpha.iter().sum::<i64>(), 2 * delta, "Σ l_α = 2δ");

        Ok(CurveInvariants {
            mu,
            mu_alpha,
            l_alpha,
            delta,
            pairwise,
        })
    }
}
