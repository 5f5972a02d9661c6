//! Star-shaped graphs and the graph equation
//! `n - 1 - t = sum_l 1 / (1 + t + ... + t^(k_l))`.
//!
//! Classification is exact: the sign of `F(1) = n - 2 - sum_l 1/(k_l + 1)`
//! separates Dynkin (negative), extended Dynkin (zero, with `t = 1`) and
//! hyperbolic graphs (positive, with two roots `t1 < 1 < t2`). Roots are
//! refined by bisection and returned as enclosures with exact rational
//! endpoints; the sign of the cleared polynomial is checked exactly at both
//! endpoints.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::algebra::rational::{self, from_f64, int, rat, to_f64};
use crate::algebra::{RatPoly, Rational};
use crate::error::{Error, Result};
use crate::scalar::{geometric_sum, Scalar};

/// A star with `n` branches; branch `l` has `k_l` vertexes besides the root.
/// Branch lengths are kept in non-increasing order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StarGraph {
    branches: Vec<usize>,
}

impl StarGraph {
    pub fn new(branches: impl Into<Vec<usize>>) -> Result<Self> {
        let mut branches = branches.into();
        if branches.is_empty() {
            return Err(Error::InvalidGraph("a star needs at least one branch".into()));
        }
        if branches.contains(&0) {
            return Err(Error::InvalidGraph("branch lengths must be positive".into()));
        }
        branches.sort_unstable_by(|a, b| b.cmp(a));
        Ok(StarGraph { branches })
    }

    pub fn branch_lengths(&self) -> &[usize] {
        &self.branches
    }

    pub fn branch_count(&self) -> usize {
        self.branches.len()
    }

    pub fn max_branch(&self) -> usize {
        self.branches[0]
    }

    /// Number of vertexes, root included.
    pub fn vertex_count(&self) -> usize {
        self.branches.iter().sum::<usize>() + 1
    }

    /// Whether `other` embeds into `self` as a star subgraph sharing the root.
    pub fn contains(&self, other: &StarGraph) -> bool {
        other.branch_count() <= self.branch_count()
            && other.branches.iter().zip(&self.branches).all(|(a, b)| a <= b)
    }

    pub fn kind(&self) -> GraphKind {
        let f1 = equation_at_one(self);
        if f1.is_negative() {
            GraphKind::Dynkin
        } else if f1.is_zero() {
            GraphKind::ExtendedDynkin
        } else {
            GraphKind::Hyperbolic
        }
    }
}

impl fmt::Display for StarGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.branches.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for StarGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StarGraph{self}")
    }
}

impl FromStr for StarGraph {
    type Err = Error;

    /// Parses a comma-separated list such as `1,2,6`, optionally wrapped
    /// in parentheses as printed by `Display`.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let inner = trimmed
            .strip_prefix('(')
            .and_then(|rest| rest.strip_suffix(')'))
            .unwrap_or(trimmed);
        let branches = inner
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidGraph(format!("{part:?} is not a positive integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        StarGraph::new(branches)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphKind {
    Dynkin,
    ExtendedDynkin,
    Hyperbolic,
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphKind::Dynkin => "Dynkin",
            GraphKind::ExtendedDynkin => "ExtendedDynkin",
            GraphKind::Hyperbolic => "Hyperbolic",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DynkinName {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
}

impl fmt::Display for DynkinName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinName::A(d) => write!(f, "A{d}"),
            DynkinName::D(d) => write!(f, "D{d}"),
            DynkinName::E6 => write!(f, "E6"),
            DynkinName::E7 => write!(f, "E7"),
            DynkinName::E8 => write!(f, "E8"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtendedDynkinName {
    D4,
    E6,
    E7,
    E8,
}

impl ExtendedDynkinName {
    pub const ALL: [ExtendedDynkinName; 4] = [
        ExtendedDynkinName::D4,
        ExtendedDynkinName::E6,
        ExtendedDynkinName::E7,
        ExtendedDynkinName::E8,
    ];

    pub fn graph(self) -> StarGraph {
        let branches: &[usize] = match self {
            ExtendedDynkinName::D4 => &[1, 1, 1, 1],
            ExtendedDynkinName::E6 => &[2, 2, 2],
            ExtendedDynkinName::E7 => &[3, 3, 1],
            ExtendedDynkinName::E8 => &[5, 2, 1],
        };
        StarGraph::new(branches.to_vec()).expect("valid branch list")
    }
}

impl fmt::Display for ExtendedDynkinName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExtendedDynkinName::D4 => "~D4",
            ExtendedDynkinName::E6 => "~E6",
            ExtendedDynkinName::E7 => "~E7",
            ExtendedDynkinName::E8 => "~E8",
        })
    }
}

/// An interval `[lo, hi]` with rational endpoints known to contain a root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: Rational,
    pub hi: Rational,
}

impl Enclosure {
    pub fn point(x: Rational) -> Self {
        Enclosure { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn midpoint_f64(&self) -> f64 {
        to_f64(&self.midpoint())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphClass {
    Dynkin(DynkinName),
    /// The unique solution is exactly `t = 1`.
    ExtendedDynkin(ExtendedDynkinName),
    /// Isolating intervals: `t1` in (0, 1), `t2` in (1, n).
    Hyperbolic { t1: Enclosure, t2: Enclosure },
}

impl GraphClass {
    pub fn kind(&self) -> GraphKind {
        match self {
            GraphClass::Dynkin(_) => GraphKind::Dynkin,
            GraphClass::ExtendedDynkin(_) => GraphKind::ExtendedDynkin,
            GraphClass::Hyperbolic { .. } => GraphKind::Hyperbolic,
        }
    }

    pub fn name(&self) -> Option<String> {
        match self {
            GraphClass::Dynkin(n) => Some(n.to_string()),
            GraphClass::ExtendedDynkin(n) => Some(n.to_string()),
            GraphClass::Hyperbolic { .. } => None,
        }
    }
}

/// Which positive solution of a hyperbolic graph's equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootChoice {
    /// The solution in (0, 1).
    T1,
    /// The solution in (1, n - 1).
    T2,
}

impl fmt::Display for RootChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RootChoice::T1 => "t1",
            RootChoice::T2 => "t2",
        })
    }
}

/// `F(1) = n - 2 - sum_l 1/(k_l + 1)`.
pub fn equation_at_one(g: &StarGraph) -> Rational {
    let sum: Rational = g.branches.iter().map(|&k| rat(1, k as i64 + 1)).sum();
    int(g.branch_count() as i64 - 2) - sum
}

pub fn classify(g: &StarGraph) -> GraphClass {
    match g.kind() {
        GraphKind::Dynkin => GraphClass::Dynkin(dynkin_name(g)),
        GraphKind::ExtendedDynkin => GraphClass::ExtendedDynkin(extended_name(g)),
        GraphKind::Hyperbolic => GraphClass::Hyperbolic {
            t1: Enclosure {
                lo: Rational::zero(),
                hi: Rational::one(),
            },
            t2: Enclosure {
                lo: Rational::one(),
                hi: int(g.branch_count() as i64),
            },
        },
    }
}

fn dynkin_name(g: &StarGraph) -> DynkinName {
    match g.branches.as_slice() {
        [_] | [_, _] => DynkinName::A(g.vertex_count()),
        [k, 1, 1] => DynkinName::D(k + 3),
        [2, 2, 1] => DynkinName::E6,
        [3, 2, 1] => DynkinName::E7,
        [4, 2, 1] => DynkinName::E8,
        other => unreachable!("no Dynkin star graph with branches {other:?}"),
    }
}

fn extended_name(g: &StarGraph) -> ExtendedDynkinName {
    match g.branches.as_slice() {
        [1, 1, 1, 1] => ExtendedDynkinName::D4,
        [2, 2, 2] => ExtendedDynkinName::E6,
        [3, 3, 1] => ExtendedDynkinName::E7,
        [5, 2, 1] => ExtendedDynkinName::E8,
        other => unreachable!("no extended Dynkin star graph with branches {other:?}"),
    }
}

/// The graph equation with denominators cleared:
/// `P(t) = (n-1-t) prod_l S_l(t) - sum_l prod_{m != l} S_m(t)`,
/// where `S_l(t) = 1 + t + ... + t^(k_l)`.
pub fn graph_equation_poly(g: &StarGraph) -> RatPoly {
    let sums: Vec<RatPoly> = g
        .branches
        .iter()
        .map(|&k| RatPoly::geometric_sum(k as i64))
        .collect();
    let full = sums.iter().fold(RatPoly::one(), |acc, s| &acc * s);
    let lead = RatPoly::from_ints(&[g.branch_count() as i64 - 1, -1]);
    let mut p = &lead * &full;
    for skip in 0..sums.len() {
        let partial = sums
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != skip)
            .fold(RatPoly::one(), |acc, (_, s)| &acc * s);
        p = &p - &partial;
    }
    p
}

/// `F(t) = n - 1 - t - sum_l 1 / S_l(t)` in any scalar ring.
pub fn graph_function<S: Scalar>(g: &StarGraph, t: &S) -> Result<S> {
    let mut acc = t.int_like(g.branch_count() as i64 - 1) - t.clone();
    for &k in &g.branches {
        acc = acc - geometric_sum(t, k as i64).try_inv()?;
    }
    Ok(acc)
}

fn graph_function_f64(g: &StarGraph, t: f64) -> f64 {
    let mut acc = g.branch_count() as f64 - 1.0 - t;
    for &k in &g.branches {
        acc -= 1.0 / geometric_sum(&t, k as i64);
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveRoots {
    pub t1: Enclosure,
    pub t2: Enclosure,
}

impl PositiveRoots {
    pub fn get(&self, which: RootChoice) -> &Enclosure {
        match which {
            RootChoice::T1 => &self.t1,
            RootChoice::T2 => &self.t2,
        }
    }
}

fn require_kind(g: &StarGraph, expected: &[GraphKind], label: &str) -> Result<GraphKind> {
    let kind = g.kind();
    if expected.contains(&kind) {
        Ok(kind)
    } else {
        Err(Error::WrongGraphClass {
            graph: g.to_string(),
            class: kind.to_string(),
            expected: label.to_string(),
        })
    }
}

/// Both positive roots of a hyperbolic graph, each enclosed in an interval
/// of width at most `precision`.
pub fn solve_positive_roots(g: &StarGraph, precision: &Rational) -> Result<PositiveRoots> {
    require_kind(g, &[GraphKind::Hyperbolic], "hyperbolic")?;
    if !precision.is_positive() {
        return Err(Error::Degenerate("precision must be positive"));
    }
    let poly = graph_equation_poly(g);
    let GraphClass::Hyperbolic { t1, t2 } = classify(g) else {
        unreachable!()
    };
    Ok(PositiveRoots {
        t1: refine_root(g, &poly, t1, precision)?,
        t2: refine_root(g, &poly, t2, precision)?,
    })
}

/// Float bisection to get close, exact sign checks of `P` at the endpoints
/// (widening if rounding misled the float stage), then exact bisection down
/// to `precision`. `P` and `F` share signs on `t > 0`.
fn refine_root(g: &StarGraph, poly: &RatPoly, bracket: Enclosure, precision: &Rational) -> Result<Enclosure> {
    let s_lo = poly.sign_at(&bracket.lo);
    let s_hi = poly.sign_at(&bracket.hi);
    if s_lo * s_hi >= 0 {
        return Err(Error::Inconsistent(format!(
            "no sign change of the graph equation of {g} on [{}, {}]",
            bracket.lo, bracket.hi
        )));
    }

    let (mut a, mut b) = (to_f64(&bracket.lo), to_f64(&bracket.hi));
    let target = to_f64(precision).max(0.0);
    for _ in 0..256 {
        if b - a <= target {
            break;
        }
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let v = graph_function_f64(g, m);
        if v == 0.0 {
            a = m;
            b = m;
            break;
        }
        if (v > 0.0) == (s_lo > 0) {
            a = m;
        } else {
            b = m;
        }
    }

    let clamp = |x: f64| -> Rational {
        let r = from_f64(x).unwrap_or_else(|| bracket.lo.clone());
        r.max(bracket.lo.clone()).min(bracket.hi.clone())
    };
    let mut widen = (b - a).max(f64::EPSILON * b.abs().max(1.0));
    let (mut lo, mut hi);
    loop {
        lo = clamp(a);
        hi = clamp(b);
        let (sa, sb) = (poly.sign_at(&lo), poly.sign_at(&hi));
        if sa == 0 {
            return Ok(Enclosure::point(lo));
        }
        if sb == 0 {
            return Ok(Enclosure::point(hi));
        }
        if sa == s_lo && sb == s_hi {
            break;
        }
        a -= widen;
        b += widen;
        widen *= 2.0;
    }

    let half = rat(1, 2);
    while &(&hi - &lo) > precision {
        let mid = (&lo + &hi) * &half;
        match poly.sign_at(&mid) {
            0 => return Ok(Enclosure::point(mid)),
            s if s == s_lo => lo = mid,
            _ => hi = mid,
        }
    }
    Ok(Enclosure { lo, hi })
}

/// Whether `x I - A` is positive definite, by leaf-to-root elimination:
/// on a tree the pivots are `d = x - sum_children 1/d_child` with no fill.
fn shifted_is_positive_definite(g: &StarGraph, x: f64) -> bool {
    let mut root = x;
    for &k in &g.branches {
        let mut d = x;
        if d <= 0.0 {
            return false;
        }
        for _ in 1..k {
            d = x - 1.0 / d;
            if d <= 0.0 {
                return false;
            }
        }
        root -= 1.0 / d;
    }
    root > 0.0
}

/// Largest adjacency eigenvalue of the star graph, within `precision`.
pub fn spectral_radius(g: &StarGraph, precision: f64) -> f64 {
    let mut lo = 0.0;
    let mut hi = g.branch_count().max(2) as f64 + 1.0;
    let precision = precision.max(f64::EPSILON * hi);
    while hi - lo > precision {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if shifted_is_positive_definite(g, mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

#[derive(Clone, Debug, PartialEq)]
pub struct HypothesisCheck {
    /// The solution used: `t2` for hyperbolic graphs, exactly 1 otherwise.
    pub t: Enclosure,
    pub spectral_radius: f64,
    /// `|t + 1/t + 2 - r^2|`.
    pub residual: f64,
}

/// Compares `t + 1/t + 2` with the squared spectral radius.
pub fn hypothesis_residual(g: &StarGraph, precision: &Rational) -> Result<HypothesisCheck> {
    let kind = require_kind(
        g,
        &[GraphKind::ExtendedDynkin, GraphKind::Hyperbolic],
        "extended Dynkin or hyperbolic",
    )?;
    let t = match kind {
        GraphKind::ExtendedDynkin => Enclosure::point(Rational::one()),
        _ => solve_positive_roots(g, precision)?.t2,
    };
    let r = spectral_radius(g, rational::to_f64(precision));
    let tf = t.midpoint_f64();
    let residual = (tf + 1.0 / tf + 2.0 - r * r).abs();
    Ok(HypothesisCheck {
        t,
        spectral_radius: r,
        residual,
    })
}

/// All star graphs with `3..=max_branches` branches of length at most
/// `max_k`, in lexicographic order of their non-increasing branch lists.
pub fn star_graphs(max_branches: usize, max_k: usize) -> Vec<StarGraph> {
    fn extend(prefix: &mut Vec<usize>, remaining: usize, cap: usize, out: &mut Vec<StarGraph>) {
        if remaining == 0 {
            out.push(StarGraph { branches: prefix.clone() });
            return;
        }
        for k in 1..=cap {
            prefix.push(k);
            extend(prefix, remaining - 1, k, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for n in 3..=max_branches {
        extend(&mut Vec::with_capacity(n), n, max_k, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(b: &[usize]) -> StarGraph {
        StarGraph::new(b.to_vec()).unwrap()
    }

    #[test]
    fn canonical_order_and_parsing() {
        let a = g(&[1, 2, 6]);
        assert_eq!(a.branch_lengths(), &[6, 2, 1]);
        assert_eq!("6, 1,2".parse::<StarGraph>().unwrap(), a);
        assert_eq!(a.to_string(), "(6,2,1)");
        assert!("1,0".parse::<StarGraph>().is_err());
        assert!("1,x".parse::<StarGraph>().is_err());
        assert!("".parse::<StarGraph>().is_err());
        assert!(StarGraph::new(vec![]).is_err());
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify(&g(&[1, 1, 1])), GraphClass::Dynkin(DynkinName::D(4)));
        assert_eq!(
            classify(&g(&[5, 2, 1])),
            GraphClass::ExtendedDynkin(ExtendedDynkinName::E8)
        );
        assert_eq!(g(&[1, 1, 1, 1, 1]).kind(), GraphKind::Hyperbolic);
        assert_eq!(classify(&g(&[1, 2, 4])), GraphClass::Dynkin(DynkinName::E8));
        assert_eq!(classify(&g(&[7])), GraphClass::Dynkin(DynkinName::A(8)));
        assert_eq!(classify(&g(&[3, 4])), GraphClass::Dynkin(DynkinName::A(8)));
    }

    #[test]
    fn cleared_polynomial_examples() {
        let p5 = graph_equation_poly(&g(&[1, 1, 1, 1, 1]));
        let expected = &RatPoly::from_ints(&[1, 1]).pow(4) * &RatPoly::from_ints(&[-1, 3, -1]);
        assert_eq!(p5, expected);

        let p4 = graph_equation_poly(&g(&[1, 1, 1, 2]));
        let expected = -(&RatPoly::from_ints(&[1, 1]).pow(2) * &RatPoly::from_ints(&[1, -1, -1, -1, 1]));
        assert_eq!(p4, expected);

        assert!(graph_equation_poly(&g(&[1, 1, 1, 1])).eval(&int(1)).is_zero());
    }

    #[test]
    fn golden_roots() {
        let roots = solve_positive_roots(&g(&[1, 1, 1, 1, 1]), &rat(1, 1_000_000_000_000)).unwrap();
        let phi2 = (3.0 + 5f64.sqrt()) / 2.0;
        let t2 = roots.t2.midpoint_f64();
        let t1 = roots.t1.midpoint_f64();
        assert!((t2 - phi2).abs() < 1e-11);
        assert!((t1 - 1.0 / phi2).abs() < 1e-11);
        assert!((t1 * t2 - 1.0).abs() < 2e-12);
        assert!(roots.t2.width() <= rat(1, 1_000_000_000_000));
    }

    #[test]
    fn roots_require_hyperbolic() {
        let err = solve_positive_roots(&g(&[1, 1, 1, 1]), &rat(1, 1000)).unwrap_err();
        assert!(matches!(err, Error::WrongGraphClass { .. }));
    }

    #[test]
    fn tight_precision_goes_exact() {
        let prec = rat(1, 10).pow(30);
        let roots = solve_positive_roots(&g(&[2, 2, 3]), &prec).unwrap();
        let p = graph_equation_poly(&g(&[2, 2, 3]));
        assert!(roots.t2.width() <= prec);
        assert!(p.sign_at(&roots.t2.lo) * p.sign_at(&roots.t2.hi) <= 0);
    }

    #[test]
    fn spectral_radius_examples() {
        assert!((spectral_radius(&g(&[1, 1, 1, 1]), 1e-13) - 2.0).abs() < 1e-12);
        assert!((spectral_radius(&g(&[1, 1, 1, 1, 1]), 1e-13) - 5f64.sqrt()).abs() < 1e-12);
        assert!((spectral_radius(&g(&[2, 2, 2]), 1e-13) - 2.0).abs() < 1e-12);
        // A_3 path on 3 vertexes: sqrt(2)
        assert!((spectral_radius(&g(&[1, 1]), 1e-13) - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn hypothesis_examples() {
        let prec = rat(1, 10).pow(13);
        assert!(hypothesis_residual(&g(&[1, 1, 1, 1]), &prec).unwrap().residual < 1e-11);
        assert!(hypothesis_residual(&g(&[1, 1, 1, 1, 1]), &prec).unwrap().residual < 1e-11);
        assert!(hypothesis_residual(&g(&[1, 2, 6]), &prec).unwrap().residual < 1e-10);
        assert!(hypothesis_residual(&g(&[1, 1, 1]), &prec).is_err());
    }

    #[test]
    fn containment() {
        assert!(g(&[1, 1, 1, 2]).contains(&g(&[1, 1, 1, 1])));
        assert!(g(&[1, 2, 6]).contains(&g(&[5, 2, 1])));
        assert!(!g(&[2, 2, 3]).contains(&g(&[1, 1, 1, 1])));
    }
}
