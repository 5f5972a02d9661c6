//! Locally scalar coordinates of characters, vertex reflections and the
//! dynamics of the alternating Coxeter transformations on the odd and even
//! parts of the special locally scalar character.
//!
//! Branch positions run from 1 at the free end to `k_l` next to the root.
//! The root is odd; parity alternates along each branch.

use std::cmp::Ordering;
use std::fmt;

use crate::characters::{check_solution, Character};
use crate::error::{Error, Result};
use crate::graph::StarGraph;
use crate::scalar::{geometric_sum, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct LsCharacter<S> {
    graph: StarGraph,
    xs: Vec<Vec<S>>,
    root: S,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Root,
    /// `position` is 1-based: 1 is the free end, `k_l` touches the root.
    Branch { branch: usize, position: usize },
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Root => f.write_str("root"),
            Vertex::Branch { branch, position } => write!(f, "branch {branch}, position {position}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn flip(self) -> Self {
        match self {
            Parity::Odd => Parity::Even,
            Parity::Even => Parity::Odd,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        })
    }
}

/// Parity of a branch position: odd iff its distance `k - i + 1` to the
/// root is even.
pub fn position_parity(k: usize, position: usize) -> Parity {
    if (k + 1 - position).is_multiple_of(2) {
        Parity::Odd
    } else {
        Parity::Even
    }
}

pub fn vertex_parity(g: &StarGraph, v: Vertex) -> Result<Parity> {
    match v {
        Vertex::Root => Ok(Parity::Odd),
        Vertex::Branch { branch, position } => {
            let k = branch_length(g, v, branch, position)?;
            Ok(position_parity(k, position))
        }
    }
}

fn branch_length(g: &StarGraph, v: Vertex, branch: usize, position: usize) -> Result<usize> {
    match g.branch_lengths().get(branch) {
        Some(&k) if (1..=k).contains(&position) => Ok(k),
        _ => Err(Error::InvalidVertex(v.to_string())),
    }
}

/// All vertices: branches in order, each from the free end, then the root.
pub fn vertices(g: &StarGraph) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = g
        .branch_lengths()
        .iter()
        .enumerate()
        .flat_map(|(branch, &k)| (1..=k).map(move |position| Vertex::Branch { branch, position }))
        .collect();
    out.push(Vertex::Root);
    out
}

impl<S: Scalar> LsCharacter<S> {
    pub fn new(graph: StarGraph, xs: Vec<Vec<S>>, root: S) -> Result<Self> {
        let shape_ok = xs.len() == graph.branch_count()
            && xs.iter().zip(graph.branch_lengths()).all(|(x, &k)| x.len() == k);
        if !shape_ok {
            return Err(Error::ShapeMismatch(graph.to_string()));
        }
        Ok(LsCharacter { graph, xs, root })
    }

    pub fn graph(&self) -> &StarGraph {
        &self.graph
    }

    pub fn xs(&self) -> &[Vec<S>] {
        &self.xs
    }

    pub fn root(&self) -> &S {
        &self.root
    }

    pub fn get(&self, v: Vertex) -> Result<&S> {
        match v {
            Vertex::Root => Ok(&self.root),
            Vertex::Branch { branch, position } => {
                branch_length(&self.graph, v, branch, position)?;
                Ok(&self.xs[branch][position - 1])
            }
        }
    }

    fn slot(&mut self, v: Vertex) -> &mut S {
        match v {
            Vertex::Root => &mut self.root,
            Vertex::Branch { branch, position } => &mut self.xs[branch][position - 1],
        }
    }

    /// Sum of the values at the neighbours of `v`.
    pub fn neighbour_sum(&self, v: Vertex) -> Result<S> {
        match v {
            Vertex::Root => Ok(self
                .xs
                .iter()
                .fold(self.root.zero_like(), |acc, b| acc + b.last().expect("nonempty").clone())),
            Vertex::Branch { branch, position } => {
                let k = branch_length(&self.graph, v, branch, position)?;
                let b = &self.xs[branch];
                let below = if position >= 2 { b[position - 2].clone() } else { self.root.zero_like() };
                let above = if position < k { b[position].clone() } else { self.root.clone() };
                Ok(below + above)
            }
        }
    }

    pub fn components(&self) -> impl Iterator<Item = &S> {
        self.xs.iter().flatten().chain(std::iter::once(&self.root))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.graph == other.graph
            && self
                .components()
                .zip(other.components())
                .all(|(a, b)| (a.clone() - b.clone()).is_zero_within(tol))
    }

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

    /// `a * self + b * other`.
    pub fn combine(&self, a: &S, other: &Self, b: &S) -> Self {
        LsCharacter {
            graph: self.graph.clone(),
            xs: self
                .xs
                .iter()
                .zip(&other.xs)
                .map(|(p, q)| {
                    p.iter()
                        .zip(q)
                        .map(|(x, y)| a.clone() * x.clone() + b.clone() * y.clone())
                        .collect()
                })
                .collect(),
            root: a.clone() * self.root.clone() + b.clone() * other.root.clone(),
        }
    }
}

/// Locally scalar coordinates of a character. On a branch of length `k`,
/// position `k - m` receives `alpha_{k-j} - alpha_j` for `m = 2j` and
/// `alpha_{k-j} - alpha_{j+1}` for `m = 2j + 1`; the root keeps `lambda`.
pub fn chi_to_u<S: Scalar>(chi: &Character<S>) -> LsCharacter<S> {
    let zero = chi.lambda().zero_like();
    let xs = chi
        .alphas()
        .iter()
        .map(|alpha| {
            let k = alpha.len();
            let a = |i: usize| if i == 0 { zero.clone() } else { alpha[i - 1].clone() };
            let mut x = vec![zero.clone(); k];
            for m in 0..k {
                let j = m / 2;
                let sub = if m % 2 == 0 { a(j) } else { a(j + 1) };
                x[k - m - 1] = a(k - j) - sub;
            }
            x
        })
        .collect();
    LsCharacter {
        graph: chi.graph().clone(),
        xs,
        root: chi.lambda().clone(),
    }
}

/// Inverse of [`chi_to_u`]: recovers `alpha_k, alpha_1, alpha_{k-1},
/// alpha_2, ...` alternately from the top and bottom of each branch.
pub fn u_to_chi<S: Scalar>(u: &LsCharacter<S>) -> Character<S> {
    let zero = u.root.zero_like();
    let alphas = u
        .xs
        .iter()
        .map(|x| {
            let k = x.len();
            // alpha indexed 0..=k with alpha[0] = 0
            let mut alpha = vec![zero.clone(); k + 1];
            for m in 0..k {
                let j = m / 2;
                if m % 2 == 0 {
                    alpha[k - j] = x[k - 2 * j - 1].clone() + alpha[j].clone();
                } else {
                    alpha[j + 1] = alpha[k - j].clone() - x[k - 2 * j - 2].clone();
                }
            }
            alpha.split_off(1)
        })
        .collect();
    Character::new(u.graph.clone(), alphas, u.root.clone()).expect("shape preserved")
}

/// The special locally scalar character at a solution `t`:
/// `x_{k-2j} = t^j S_{k-2j-1} / S_k`, `x_{k-2j+1} = t^j S_{k-2j} / S_k`,
/// root 1, where `S_m = 1 + t + ... + t^m`.
pub fn special_ls_character<S: Scalar>(g: &StarGraph, t: &S, tol: f64) -> Result<LsCharacter<S>> {
    check_solution(g, t, tol)?;
    special_ls_formula(g, t)
}

fn special_ls_formula<S: Scalar>(g: &StarGraph, t: &S) -> Result<LsCharacter<S>> {
    let mut xs = Vec::with_capacity(g.branch_count());
    for &k in g.branch_lengths() {
        let denom = geometric_sum(t, k as i64).try_inv()?;
        let k = k as i64;
        let x = (1..=k)
            .map(|i| {
                // i = k - 2j or i = k - 2j + 1
                let j = (k - i + 1) / 2;
                t.pow(j as u32) * geometric_sum(t, i - 1) * denom.clone()
            })
            .collect();
        xs.push(x);
    }
    LsCharacter::new(g.clone(), xs, t.one_like())
}

/// Splits `u` into its odd part and its even part, each zero-filled on the
/// vertices of the other parity.
pub fn decompose<S: Scalar>(u: &LsCharacter<S>) -> (LsCharacter<S>, LsCharacter<S>) {
    let zero = u.root.zero_like();
    let part = |keep: Parity| {
        let xs = u
            .xs
            .iter()
            .map(|x| {
                let k = x.len();
                x.iter()
                    .enumerate()
                    .map(|(i, v)| if position_parity(k, i + 1) == keep { v.clone() } else { zero.clone() })
                    .collect()
            })
            .collect();
        let root = if keep == Parity::Odd { u.root.clone() } else { zero.clone() };
        LsCharacter {
            graph: u.graph.clone(),
            xs,
            root,
        }
    };
    (part(Parity::Odd), part(Parity::Even))
}

/// Reflection at `v`: the value there becomes the neighbour sum minus
/// itself.
pub fn sigma_reflect<S: Scalar>(u: &LsCharacter<S>, v: Vertex) -> Result<LsCharacter<S>> {
    let new_value = u.neighbour_sum(v)? - u.get(v)?.clone();
    let mut out = u.clone();
    *out.slot(v) = new_value;
    Ok(out)
}

fn coxeter<S: Scalar>(u: &LsCharacter<S>, parity: Parity) -> LsCharacter<S> {
    // same-parity vertices are never adjacent, so reading every neighbour
    // sum from `u` equals applying the reflections one after another
    let mut out = u.clone();
    for v in vertices(&u.graph) {
        if vertex_parity(&u.graph, v).expect("listed vertex") == parity {
            *out.slot(v) = u.neighbour_sum(v).expect("listed vertex") - u.get(v).expect("listed vertex").clone();
        }
    }
    out
}

/// Reflections at all odd vertices.
pub fn coxeter_odd<S: Scalar>(u: &LsCharacter<S>) -> LsCharacter<S> {
    coxeter(u, Parity::Odd)
}

/// Reflections at all even vertices.
pub fn coxeter_even<S: Scalar>(u: &LsCharacter<S>) -> LsCharacter<S> {
    coxeter(u, Parity::Even)
}

pub fn coxeter_step<S: Scalar>(u: &LsCharacter<S>, step: Parity) -> LsCharacter<S> {
    coxeter(u, step)
}

/// The combination `odd * u_odd + even * u_even` of the two parts of the
/// special locally scalar character.
#[derive(Clone, Debug, PartialEq)]
pub struct ParityPair<S> {
    pub odd: S,
    pub even: S,
}

impl<S: Scalar> ParityPair<S> {
    pub fn new(odd: S, even: S) -> Self {
        ParityPair { odd, even }
    }

    /// The locally scalar character this pair stands for at solution `t`.
    pub fn assemble(&self, g: &StarGraph, t: &S, tol: f64) -> Result<LsCharacter<S>> {
        let (odd, even) = decompose(&special_ls_character(g, t, tol)?);
        Ok(odd.combine(&self.odd, &even, &self.even))
    }

    /// Largest coefficient difference, infinite for exact values without a
    /// real magnitude.
    pub fn distance(&self, other: &Self) -> f64 {
        [self.odd.clone() - other.odd.clone(), self.even.clone() - other.even.clone()]
            .iter()
            .map(|d| if d.is_zero_within(0.0) { 0.0 } else { d.magnitude().unwrap_or(f64::INFINITY) })
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.odd.clone() - other.odd.clone()).is_zero_within(tol)
            && (self.even.clone() - other.even.clone()).is_zero_within(tol)
    }
}

/// Applies the Coxeter transformations in `word`, first letter first, to
/// the coefficients of `pair`. Odd steps need `t` invertible.
pub fn parity_evolution<S: Scalar>(pair: &ParityPair<S>, word: &[Parity], t: &S) -> Result<ParityPair<S>> {
    let one = t.one_like();
    let odd_gain = one.clone() + t.try_inv()?;
    let even_gain = one + t.clone();
    let mut cur = pair.clone();
    for step in word {
        cur = match step {
            Parity::Even => ParityPair::new(cur.odd.clone(), even_gain.clone() * cur.odd - cur.even),
            Parity::Odd => ParityPair::new(odd_gain.clone() * cur.even.clone() - cur.odd, cur.even),
        };
    }
    Ok(cur)
}

/// The four alternating iterates, by starting part and by whether the
/// number of steps is even (`2j`) or odd (`2j + 1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IterateKind {
    /// `2j` steps from the odd part, even step first.
    FromOddEvenLength,
    /// `2j + 1` steps from the odd part, even step first.
    FromOddOddLength,
    /// `2j` steps from the even part, odd step first.
    FromEvenEvenLength,
    /// `2j + 1` steps from the even part, odd step first.
    FromEvenOddLength,
}

impl IterateKind {
    pub const ALL: [IterateKind; 4] = [
        IterateKind::FromOddEvenLength,
        IterateKind::FromOddOddLength,
        IterateKind::FromEvenEvenLength,
        IterateKind::FromEvenOddLength,
    ];

    pub fn start_part(self) -> Parity {
        match self {
            IterateKind::FromOddEvenLength | IterateKind::FromOddOddLength => Parity::Odd,
            IterateKind::FromEvenEvenLength | IterateKind::FromEvenOddLength => Parity::Even,
        }
    }

    pub fn start<S: Scalar>(self, like: &S) -> ParityPair<S> {
        match self.start_part() {
            Parity::Odd => ParityPair::new(like.one_like(), like.zero_like()),
            Parity::Even => ParityPair::new(like.zero_like(), like.one_like()),
        }
    }

    pub fn steps(self, j: usize) -> usize {
        match self {
            IterateKind::FromOddEvenLength | IterateKind::FromEvenEvenLength => 2 * j,
            IterateKind::FromOddOddLength | IterateKind::FromEvenOddLength => 2 * j + 1,
        }
    }

    /// Steps in application order. From the odd part the even reflection
    /// comes first (the odd one only negates it), and vice versa.
    pub fn word(self, j: usize) -> Vec<Parity> {
        let first = self.start_part().flip();
        (0..self.steps(j))
            .map(|s| if s % 2 == 0 { first } else { first.flip() })
            .collect()
    }

    /// The kind reached after `steps` alternating steps from `start`.
    pub fn after(start: Parity, steps: usize) -> (IterateKind, usize) {
        let kind = match (start, steps % 2) {
            (Parity::Odd, 0) => IterateKind::FromOddEvenLength,
            (Parity::Odd, _) => IterateKind::FromOddOddLength,
            (Parity::Even, 0) => IterateKind::FromEvenEvenLength,
            (Parity::Even, _) => IterateKind::FromEvenOddLength,
        };
        (kind, steps / 2)
    }
}

impl fmt::Display for IterateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IterateKind::FromOddEvenLength => "from-odd-even-length",
            IterateKind::FromOddOddLength => "from-odd-odd-length",
            IterateKind::FromEvenEvenLength => "from-even-even-length",
            IterateKind::FromEvenOddLength => "from-even-odd-length",
        })
    }
}

/// `(1 - t^m) / (1 - t)`, replaced by its limit `m` at `t = 1`.
fn quotient<S: Scalar>(t: &S, m: u32) -> Result<S> {
    if t.is_one_exactly() {
        return Ok(t.int_like(m as i64));
    }
    let one = t.one_like();
    (one.clone() - t.pow(m)).try_div(&(one - t.clone()))
}

/// Closed-form coefficients of the iterate of `kind` with parameter `j`.
pub fn closed_form_iterate<S: Scalar>(kind: IterateKind, j: usize, t: &S) -> Result<ParityPair<S>> {
    let j32 = j as u32;
    let tj_inv = t.pow(j32).try_inv()?;
    let (odd, even) = match kind {
        IterateKind::FromOddEvenLength => (quotient(t, 2 * j32 + 1)?, t.clone() * quotient(t, 2 * j32)?),
        IterateKind::FromOddOddLength => (quotient(t, 2 * j32 + 1)?, quotient(t, 2 * j32 + 2)?),
        IterateKind::FromEvenEvenLength => (quotient(t, 2 * j32)?, quotient(t, 2 * j32 + 1)?),
        IterateKind::FromEvenOddLength => {
            let t_inv = t.try_inv()?;
            (
                quotient(t, 2 * j32 + 2)? * t_inv,
                quotient(t, 2 * j32 + 1)?,
            )
        }
    };
    Ok(ParityPair::new(odd * tj_inv.clone(), even * tj_inv))
}

/// Direct iteration of the coefficient recurrence for `kind` and `j`.
pub fn iterate<S: Scalar>(kind: IterateKind, j: usize, t: &S) -> Result<ParityPair<S>> {
    parity_evolution(&kind.start(t), &kind.word(j), t)
}

/// `1 + (t - t^n) / (1 - t^(n+1))`, equal to `2n / (n + 1)` at `t = 1`.
pub fn rho<S: Scalar>(n: u32, t: &S) -> Result<S> {
    if t.is_zero_within(0.0) {
        return Err(Error::Degenerate("t = 0"));
    }
    if t.is_one_exactly() {
        return t.int_like(2 * n as i64).try_div(&t.int_like(n as i64 + 1));
    }
    let one = t.one_like();
    Ok(one.clone() + (t.clone() - t.pow(n)).try_div(&(one - t.pow(n + 1)))?)
}

/// Rescales so that the odd coefficient is 1.
pub fn normalize<S: Scalar>(pair: &ParityPair<S>) -> Result<ParityPair<S>> {
    if pair.odd.is_zero_within(0.0) {
        return Err(Error::Degenerate("odd coefficient is zero"));
    }
    Ok(ParityPair::new(pair.odd.one_like(), pair.even.try_div(&pair.odd)?))
}

/// Limit of the normalized iterates of `kind` as `j` grows: `(1, 1)` is
/// the special character at `t`, `(1, t)` the one at `1/t`.
pub fn limit_target<S: Scalar>(kind: IterateKind, t: &S) -> Result<ParityPair<S>> {
    let above_one = match t.cmp_one() {
        Some(Ordering::Greater) => true,
        Some(Ordering::Less) => false,
        Some(Ordering::Equal) => return Err(Error::Degenerate("t = 1 has no limit dichotomy")),
        None => return Err(Error::Degenerate("t is not comparable with 1")),
    };
    let towards_t = matches!(kind, IterateKind::FromOddOddLength | IterateKind::FromEvenEvenLength);
    let even = if towards_t == above_one { t.clone() } else { t.one_like() };
    Ok(ParityPair::new(t.one_like(), even))
}

/// `u_odd + (1 - t^p) / (1 - t^(p-1)) u_even`.
pub fn w_character<S: Scalar>(g: &StarGraph, t: &S, p: u32, tol: f64) -> Result<LsCharacter<S>> {
    w_pair(t, p)?.assemble(g, t, tol)
}

pub fn w_pair<S: Scalar>(t: &S, p: u32) -> Result<ParityPair<S>> {
    if p == 0 {
        return Err(Error::Degenerate("p must be at least 1"));
    }
    let one = t.one_like();
    let denom = one.clone() - t.pow(p - 1);
    if denom.is_zero_within(0.0) {
        return Err(Error::Degenerate("1 - t^(p-1) vanishes"));
    }
    let coeff = (one.clone() - t.pow(p)).try_div(&denom)?;
    Ok(ParityPair::new(one, coeff))
}

/// The character whose locally scalar coordinates are `w_p`.
pub fn chi_p<S: Scalar>(g: &StarGraph, t: &S, p: u32, tol: f64) -> Result<Character<S>> {
    Ok(u_to_chi(&w_character(g, t, p, tol)?))
}
