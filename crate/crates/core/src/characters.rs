//! Characters on star graphs, the special character built from a solution
//! of the graph equation, and the reflection functors `S` and `T` acting on
//! characters.

use crate::error::{Error, Result};
use crate::graph::{graph_function, StarGraph};
use crate::scalar::{geometric_sum, Scalar};

/// Values `alpha_1, ..., alpha_{k_l}` on each branch (listed from the free
/// end towards the root) and `lambda` at the root. `alpha_0` is implicitly
/// zero on every branch.
#[derive(Clone, Debug, PartialEq)]
pub struct Character<S> {
    graph: StarGraph,
    alphas: Vec<Vec<S>>,
    lambda: S,
}

impl<S: Scalar> Character<S> {
    pub fn new(graph: StarGraph, alphas: Vec<Vec<S>>, lambda: S) -> Result<Self> {
        let shape_ok = alphas.len() == graph.branch_count()
            && alphas
                .iter()
                .zip(graph.branch_lengths())
                .all(|(a, &k)| a.len() == k);
        if !shape_ok {
            return Err(Error::ShapeMismatch(graph.to_string()));
        }
        Ok(Character { graph, alphas, lambda })
    }

    /// The character that is `value` everywhere on the branches and
    /// `lambda` at the root.
    pub fn constant(graph: &StarGraph, value: &S, lambda: S) -> Self {
        let alphas = graph
            .branch_lengths()
            .iter()
            .map(|&k| vec![value.clone(); k])
            .collect();
        Character {
            graph: graph.clone(),
            alphas,
            lambda,
        }
    }

    pub fn graph(&self) -> &StarGraph {
        &self.graph
    }

    pub fn alphas(&self) -> &[Vec<S>] {
        &self.alphas
    }

    pub fn branch(&self, l: usize) -> &[S] {
        &self.alphas[l]
    }

    pub fn lambda(&self) -> &S {
        &self.lambda
    }

    /// Highest value `alpha_{k_l}` of branch `l`, the one next to the root.
    pub fn top(&self, l: usize) -> &S {
        self.alphas[l].last().expect("branches are nonempty")
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map_components(|x| x.clone() * c.clone())
    }

    fn map_components(&self, f: impl Fn(&S) -> S) -> Self {
        Character {
            graph: self.graph.clone(),
            alphas: self.alphas.iter().map(|b| b.iter().map(&f).collect()).collect(),
            lambda: f(&self.lambda),
        }
    }

    pub fn map<T>(&self, f: impl Fn(&S) -> T) -> Character<T> {
        Character {
            graph: self.graph.clone(),
            alphas: self.alphas.iter().map(|b| b.iter().map(&f).collect()).collect(),
            lambda: f(&self.lambda),
        }
    }

    /// Branch values followed by the root value.
    pub fn components(&self) -> impl Iterator<Item = &S> {
        self.alphas.iter().flatten().chain(std::iter::once(&self.lambda))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.graph == other.graph
            && self
                .components()
                .zip(other.components())
                .all(|(a, b)| (a.clone() - b.clone()).is_zero_within(tol))
    }

    /// Largest componentwise difference; infinite when a nonzero exact
    /// difference has no real magnitude attached.
    pub fn max_deviation(&self, other: &Self) -> f64 {
        self.components()
            .zip(other.components())
            .map(|(a, b)| {
                let d = a.clone() - b.clone();
                if d.is_zero_within(0.0) {
                    0.0
                } else {
                    d.magnitude().unwrap_or(f64::INFINITY)
                }
            })
            .fold(0.0, f64::max)
    }
}

impl<S: Scalar> std::ops::Sub for &Character<S> {
    type Output = Character<S>;
    fn sub(self, rhs: &Character<S>) -> Character<S> {
        Character {
            graph: self.graph.clone(),
            alphas: self
                .alphas
                .iter()
                .zip(&rhs.alphas)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect())
                .collect(),
            lambda: self.lambda.clone() - rhs.lambda.clone(),
        }
    }
}

pub(crate) fn check_solution<S: Scalar>(g: &StarGraph, t: &S, tol: f64) -> Result<()> {
    let residual = graph_function(g, t)?;
    if residual.is_zero_within(tol) {
        Ok(())
    } else {
        Err(Error::NotASolution {
            residual: format!("{residual:?}"),
        })
    }
}

/// `alpha_j = (1 + ... + t^(j-1)) / (1 + ... + t^(k_l))`, `lambda = 1`.
///
/// `t` must solve the graph equation: exactly for exact scalars, within
/// `tol` for floats.
pub fn special_character<S: Scalar>(g: &StarGraph, t: &S, tol: f64) -> Result<Character<S>> {
    check_solution(g, t, tol)?;
    let mut alphas = Vec::with_capacity(g.branch_count());
    for &k in g.branch_lengths() {
        let denom = geometric_sum(t, k as i64).try_inv()?;
        alphas.push(
            (1..=k)
                .map(|j| geometric_sum(t, j as i64 - 1) * denom.clone())
                .collect(),
        );
    }
    Character::new(g.clone(), alphas, t.one_like())
}

/// `S`: `alpha'_j = alpha_k - alpha_{k-j}` on each branch and
/// `lambda' = sum_l alpha_{k_l} - lambda`.
pub fn reflect_s<S: Scalar>(chi: &Character<S>) -> Character<S> {
    let zero = chi.lambda.zero_like();
    let alphas: Vec<Vec<S>> = chi
        .alphas
        .iter()
        .map(|branch| {
            let k = branch.len();
            let top = branch[k - 1].clone();
            (1..=k)
                .map(|j| {
                    let lower = if j == k { zero.clone() } else { branch[k - j - 1].clone() };
                    top.clone() - lower
                })
                .collect()
        })
        .collect();
    let lambda = (0..chi.alphas.len()).fold(zero.clone(), |acc, l| acc + chi.top(l).clone()) - chi.lambda.clone();
    Character {
        graph: chi.graph.clone(),
        alphas,
        lambda,
    }
}

/// `T`: `alpha''_j = lambda - alpha_{k+1-j}`, root value unchanged.
pub fn reflect_t<S: Scalar>(chi: &Character<S>) -> Character<S> {
    let alphas = chi
        .alphas
        .iter()
        .map(|branch| branch.iter().rev().map(|a| chi.lambda.clone() - a.clone()).collect())
        .collect();
    Character {
        graph: chi.graph.clone(),
        alphas,
        lambda: chi.lambda.clone(),
    }
}

/// `T(S(chi_G)) - chi_G / t` for the special character at `t`.
pub fn ts_eigen_defect<S: Scalar>(g: &StarGraph, t: &S, tol: f64) -> Result<Character<S>> {
    let chi = special_character(g, t, tol)?;
    let ts = reflect_t(&reflect_s(&chi));
    Ok(&ts - &chi.scale(&t.try_inv()?))
}

/// Checks `(TS) chi_G = t^(-1) chi_G`.
pub fn verify_ts_eigen<S: Scalar>(g: &StarGraph, t: &S, tol: f64) -> Result<bool> {
    let defect = ts_eigen_defect(g, t, tol)?;
    let ok = defect.components().all(|c| c.is_zero_within(tol));
    Ok(ok)
}

/// The quadratic form
/// `sum alpha^2 + lambda^2 - sum_l sum_j alpha_j alpha_{j+1} - lambda sum_l alpha_{k_l}`.
pub fn gamma_form<S: Scalar>(chi: &Character<S>) -> S {
    let lambda = chi.lambda.clone();
    let mut acc = lambda.clone() * lambda.clone();
    for (l, branch) in chi.alphas.iter().enumerate() {
        for a in branch {
            acc = acc + a.clone() * a.clone();
        }
        for pair in branch.windows(2) {
            acc = acc - pair[0].clone() * pair[1].clone();
        }
        acc = acc - lambda.clone() * chi.top(l).clone();
    }
    acc
}

/// `sum_l alpha_{k_l} - (1 + 1/t)` for the special character.
pub fn sum_highest_defect<S: Scalar>(g: &StarGraph, t: &S, tol: f64) -> Result<S> {
    if t.is_zero_within(0.0) {
        return Err(Error::Degenerate("t = 0"));
    }
    let chi = special_character(g, t, tol)?;
    let total = (0..g.branch_count()).fold(t.zero_like(), |acc, l| acc + chi.top(l).clone());
    Ok(total - (t.one_like() + t.try_inv()?))
}

/// Checks `sum_l alpha_{k_l} = 1 + 1/t` for the special character.
pub fn identity_sum_highest<S: Scalar>(g: &StarGraph, t: &S, tol: f64) -> Result<bool> {
    Ok(sum_highest_defect(g, t, tol)?.is_zero_within(tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat, NumberField, RatPoly, Rational};

    fn g(b: &[usize]) -> StarGraph {
        StarGraph::new(b.to_vec()).unwrap()
    }

    fn rationals(rows: &[&[i64]], denom: i64) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&n| rat(n, denom)).collect())
            .collect()
    }

    #[test]
    fn d4_special_character() {
        let chi = special_character(&g(&[1, 1, 1, 1]), &int(1), 0.0).unwrap();
        let expected = Character::new(g(&[1, 1, 1, 1]), rationals(&[&[1], &[1], &[1], &[1]], 2), int(1)).unwrap();
        assert_eq!(chi, expected);
    }

    #[test]
    fn e8_special_character() {
        let chi = special_character(&g(&[5, 2, 1]), &int(1), 0.0).unwrap();
        let expected =
            Character::new(g(&[5, 2, 1]), rationals(&[&[1, 2, 3, 4, 5], &[2, 4], &[3]], 6), int(1)).unwrap();
        assert_eq!(chi, expected);
    }

    #[test]
    fn golden_special_character_in_field() {
        let k = NumberField::new(&RatPoly::from_ints(&[1, -3, 1])).unwrap();
        let t = k.generator();
        let chi = special_character(&g(&[1, 1, 1, 1, 1]), &t, 0.0).unwrap();
        let expected = k.element(&RatPoly::new(vec![rat(4, 5), rat(-1, 5)]));
        assert!(chi.alphas().iter().all(|b| b[0] == expected));
    }

    #[test]
    fn non_solution_rejected() {
        let err = special_character(&g(&[1, 1, 1, 1]), &int(2), 0.0).unwrap_err();
        assert!(matches!(err, Error::NotASolution { .. }));
        assert!(special_character(&g(&[1, 1, 1]), &1.0f64, 1e-9).is_err());
    }

    #[test]
    fn d4_fixed_by_both_reflections() {
        let chi = special_character(&g(&[1, 1, 1, 1]), &int(1), 0.0).unwrap();
        assert_eq!(reflect_s(&chi), chi);
        assert_eq!(reflect_t(&chi), chi);
        assert!(verify_ts_eigen(&g(&[1, 1, 1, 1]), &int(1), 0.0).unwrap());
    }

    #[test]
    fn reflections_of_trivial_characters() {
        let graph = g(&[2, 1]);
        let zero = Character::constant(&graph, &int(0), int(0));
        assert_eq!(reflect_s(&zero), zero);
        let lam = int(3);
        let tz = reflect_t(&Character::constant(&g(&[1, 1, 1]), &int(0), lam.clone()));
        assert_eq!(tz, Character::constant(&g(&[1, 1, 1]), &lam, lam.clone()));
    }

    #[test]
    fn gamma_examples() {
        let d4 = special_character(&g(&[1, 1, 1, 1]), &int(1), 0.0).unwrap();
        assert_eq!(gamma_form(&d4), int(0));
        let e8 = special_character(&g(&[5, 2, 1]), &int(1), 0.0).unwrap();
        assert_eq!(gamma_form(&e8), int(0));
        let lone = Character::constant(&g(&[3, 2]), &int(0), int(1));
        assert_eq!(gamma_form(&lone), int(1));
    }

    #[test]
    fn sum_of_highest_values() {
        assert!(identity_sum_highest(&g(&[1, 1, 1, 1]), &int(1), 0.0).unwrap());
        let k = NumberField::new(&RatPoly::from_ints(&[1, -3, 1])).unwrap();
        assert!(identity_sum_highest(&g(&[1, 1, 1, 1, 1]), &k.generator(), 0.0).unwrap());
        let t2 = (3.0 + 5f64.sqrt()) / 2.0;
        assert!(identity_sum_highest(&g(&[1, 1, 1, 1, 1]), &t2, 1e-12).unwrap());
        assert!((5.0 / (1.0 + t2) - 1.381966011250105).abs() < 1e-12);
        assert!(matches!(
            sum_highest_defect(&g(&[1, 1, 1, 1]), &int(0), 0.0),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn shape_checked() {
        assert!(Character::new(g(&[2, 1]), vec![vec![int(1)], vec![int(1)]], int(1)).is_err());
    }
}
