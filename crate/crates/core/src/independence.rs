//! Exact certificates that 1 is not a rational combination of the
//! components of the special character, computed in the number field
//! generated by the solution of the graph equation.

use num_traits::One;

use crate::algebra::matrix::unit_first;
use crate::algebra::{factor_over_rationals, in_rational_span, is_irreducible, rat, NumberField, RatPoly, Rational};
use crate::characters::special_character;
use crate::error::{Error, Result};
use crate::graph::{graph_equation_poly, solve_positive_roots, Enclosure, GraphKind, RootChoice, StarGraph};

/// The five hyperbolic star graphs all of whose proper star subgraphs are
/// Dynkin or extended Dynkin.
pub fn minimal_hyperbolic_graphs() -> Vec<StarGraph> {
    [&[1, 1, 1, 1, 1][..], &[2, 1, 1, 1], &[3, 2, 2], &[4, 3, 1], &[6, 2, 1]]
        .iter()
        .map(|b| StarGraph::new(b.to_vec()).expect("valid branch list"))
        .collect()
}

/// The root enclosure starts at width `1 / ISOLATION_START` and is squared
/// each round until exactly one factor changes sign across it.
const ISOLATION_START: i64 = 1_000_000;
const ISOLATION_ROUNDS: usize = 8;

/// The monic irreducible factor of the cleared graph equation that
/// vanishes at the requested positive solution.
pub fn minimal_polynomial_of_t(g: &StarGraph, which: RootChoice) -> Result<RatPoly> {
    if g.kind() != GraphKind::Hyperbolic {
        return Err(Error::WrongGraphClass {
            graph: g.to_string(),
            class: g.kind().to_string(),
            expected: "hyperbolic".into(),
        });
    }
    let factors: Vec<RatPoly> = factor_over_rationals(&graph_equation_poly(g))?
        .into_iter()
        .map(|(f, _)| f)
        .collect();
    let mut width = rat(1, ISOLATION_START);
    for _ in 0..ISOLATION_ROUNDS {
        let enclosure = solve_positive_roots(g, &width)?.get(which).clone();
        let candidates: Vec<&RatPoly> = factors.iter().filter(|f| vanishes_on(f, &enclosure)).collect();
        if let [only] = candidates[..] {
            return Ok(only.clone());
        }
        width = &width * &width;
    }
    Err(Error::Inconsistent(format!(
        "could not attribute the {which} root of {g} to a single factor"
    )))
}

fn vanishes_on(f: &RatPoly, e: &Enclosure) -> bool {
    let (a, b) = (f.sign_at(&e.lo), f.sign_at(&e.hi));
    if e.lo == e.hi {
        a == 0
    } else {
        a * b < 0
    }
}

/// The field generated by the solution and its minimal polynomial: the
/// rationals (modulus `t - 1`) for extended Dynkin graphs.
pub fn solution_field(g: &StarGraph, which: RootChoice) -> Result<NumberField> {
    let modulus = match g.kind() {
        GraphKind::ExtendedDynkin => RatPoly::new(vec![-Rational::one(), Rational::one()]),
        GraphKind::Hyperbolic => minimal_polynomial_of_t(g, which)?,
        GraphKind::Dynkin => {
            return Err(Error::WrongGraphClass {
                graph: g.to_string(),
                class: g.kind().to_string(),
                expected: "extended Dynkin or hyperbolic".into(),
            })
        }
    };
    NumberField::new(&modulus)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub graph: StarGraph,
    pub kind: GraphKind,
    pub p_gamma: RatPoly,
    pub irreducible: bool,
    pub one_in_span: bool,
    pub basis_dimension: usize,
    /// Branch components of the special character in the power basis
    /// `1, t, ..., t^(m-1)`, branches in order, each from the free end.
    pub component_vectors: Vec<Vec<Rational>>,
    /// Coefficients expressing 1 through the components, when it is in
    /// their span.
    pub span_witness: Option<Vec<Rational>>,
}

impl Certificate {
    /// An irreducible minimal polynomial together with 1 lying outside the
    /// component span, for a hyperbolic graph.
    pub fn certifies_infinite_dimensional(&self) -> bool {
        self.kind == GraphKind::Hyperbolic && self.irreducible && !self.one_in_span
    }
}

/// Builds the special character exactly in its field and tests whether 1
/// is a rational combination of its branch components. The root value is
/// left out.
pub fn one_in_rational_span_of_components(g: &StarGraph) -> Result<Certificate> {
    let field = solution_field(g, RootChoice::T2)?;
    let p_gamma = field.modulus().clone();
    let irreducible = is_irreducible(&p_gamma)?;
    let chi = special_character(g, &field.generator(), 0.0)?;
    let component_vectors: Vec<Vec<Rational>> = chi.alphas().iter().flatten().map(|a| a.coefficients()).collect();
    let m = field.degree();
    let span_witness = in_rational_span(&unit_first(m), &component_vectors)?;
    Ok(Certificate {
        graph: g.clone(),
        kind: g.kind(),
        p_gamma,
        irreducible,
        one_in_span: span_witness.is_some(),
        basis_dimension: m,
        component_vectors,
        span_witness,
    })
}

/// Same computation; the result certifies the graph when
/// [`Certificate::certifies_infinite_dimensional`] holds.
pub fn certify_infinite_dimensional(g: &StarGraph) -> Result<Certificate> {
    one_in_rational_span_of_components(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn g(b: &[usize]) -> StarGraph {
        StarGraph::new(b.to_vec()).unwrap()
    }

    #[test]
    fn golden_polynomial() {
        let p = minimal_polynomial_of_t(&g(&[1, 1, 1, 1, 1]), RootChoice::T2).unwrap();
        assert_eq!(p, RatPoly::from_ints(&[1, -3, 1]));
    }

    #[test]
    fn golden_certificate() {
        let c = certify_infinite_dimensional(&g(&[1, 1, 1, 1, 1])).unwrap();
        assert!(c.irreducible);
        assert!(!c.one_in_span);
        assert_eq!(c.basis_dimension, 2);
        assert!(c.component_vectors.iter().all(|v| *v == vec![rat(4, 5), rat(-1, 5)]));
        assert!(c.certifies_infinite_dimensional());
    }

    #[test]
    fn d4_refuses() {
        let c = one_in_rational_span_of_components(&g(&[1, 1, 1, 1])).unwrap();
        assert!(c.one_in_span);
        assert_eq!(c.basis_dimension, 1);
        assert!(!c.certifies_infinite_dimensional());
        let witness = c.span_witness.unwrap();
        let total = witness.iter().zip(&c.component_vectors).fold(int(0), |acc, (w, v)| acc + w * &v[0]);
        assert_eq!(total, int(1));
    }

    #[test]
    fn dynkin_rejected() {
        assert!(matches!(
            one_in_rational_span_of_components(&g(&[4, 2, 1])),
            Err(Error::WrongGraphClass { .. })
        ));
    }
}
