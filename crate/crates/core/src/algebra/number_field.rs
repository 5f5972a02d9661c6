//! Arithmetic in `Q[t]/(m(t))` for a monic squarefree modulus `m`.
//!
//! The modulus need not be irreducible. In that case the quotient is a
//! product of fields and some nonzero elements are zero divisors;
//! [`NumberFieldElem::inverse`] reports the shared factor so that a caller
//! can replace the modulus by the factor that carries the root it cares
//! about.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::Zero;

use super::poly::RatPoly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// A quotient ring `Q[t]/(m)`; cheap to clone.
#[derive(Clone, PartialEq, Eq)]
pub struct NumberField {
    modulus: Arc<RatPoly>,
}

impl NumberField {
    /// The modulus is made monic. Fails for constants and for moduli with a
    /// repeated factor.
    pub fn new(modulus: &RatPoly) -> Result<Self> {
        match modulus.degree() {
            None => return Err(Error::ZeroPolynomial),
            Some(0) => return Err(Error::ConstantPolynomial),
            _ => {}
        }
        if !modulus.is_squarefree() {
            return Err(Error::NotSquarefree(modulus.to_string()));
        }
        Ok(NumberField {
            modulus: Arc::new(modulus.monic()),
        })
    }

    pub fn modulus(&self) -> &RatPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().expect("nonconstant modulus")
    }

    /// The class of `t`.
    pub fn generator(&self) -> NumberFieldElem {
        self.element(&RatPoly::x())
    }

    pub fn element(&self, p: &RatPoly) -> NumberFieldElem {
        NumberFieldElem {
            modulus: self.modulus.clone(),
            rep: p.rem(&self.modulus).expect("modulus is nonzero"),
        }
    }

    pub fn from_rational(&self, c: Rational) -> NumberFieldElem {
        self.element(&RatPoly::constant(c))
    }

    pub fn zero(&self) -> NumberFieldElem {
        self.element(&RatPoly::zero())
    }

    pub fn one(&self) -> NumberFieldElem {
        self.element(&RatPoly::one())
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[t]/({})", self.modulus)
    }
}

/// Element of `Q[t]/(m)`, held as its reduced representative.
#[derive(Clone)]
pub struct NumberFieldElem {
    modulus: Arc<RatPoly>,
    rep: RatPoly,
}

impl NumberFieldElem {
    pub fn modulus(&self) -> &RatPoly {
        &self.modulus
    }

    pub fn field(&self) -> NumberField {
        NumberField {
            modulus: self.modulus.clone(),
        }
    }

    /// The reduced representative, of degree below `deg m`.
    pub fn representative(&self) -> &RatPoly {
        &self.rep
    }

    /// Coordinates in the power basis `1, t, ..., t^(deg m - 1)`.
    pub fn coefficients(&self) -> Vec<Rational> {
        let d = self.modulus.degree().expect("nonconstant modulus");
        (0..d).map(|i| self.rep.coeff(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rep == RatPoly::one()
    }

    /// The rational value if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.rep.degree() {
            None => Some(Rational::zero()),
            Some(0) => Some(self.rep.coeff(0)),
            _ => None,
        }
    }

    fn same_field(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.modulus, &other.modulus) || self.modulus == other.modulus,
            "number field elements with different moduli: {} vs {}",
            self.modulus,
            other.modulus
        );
    }

    fn with_rep(&self, rep: RatPoly) -> Self {
        NumberFieldElem {
            modulus: self.modulus.clone(),
            rep,
        }
    }

    /// Multiplicative inverse via extended Euclid. If the representative
    /// shares a factor with the modulus, the error carries that factor.
    pub fn inverse(&self) -> Result<Self> {
        if self.rep.is_zero() {
            return Err(Error::NotInvertible { common_factor: None });
        }
        let (g, s, _) = self.rep.xgcd(&self.modulus)?;
        if g.degree() != Some(0) {
            return Err(Error::NotInvertible {
                common_factor: Some(g),
            });
        }
        Ok(self.with_rep(s.rem(&self.modulus)?))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.with_rep(RatPoly::one().rem(&self.modulus).expect("nonzero"));
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl PartialEq for NumberFieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.rep == other.rep
    }
}

impl Eq for NumberFieldElem {}

impl fmt::Debug for NumberFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.rep)
    }
}

impl fmt::Display for NumberFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

impl Add for &NumberFieldElem {
    type Output = NumberFieldElem;
    fn add(self, rhs: &NumberFieldElem) -> NumberFieldElem {
        self.same_field(rhs);
        self.with_rep(&self.rep + &rhs.rep)
    }
}

impl Sub for &NumberFieldElem {
    type Output = NumberFieldElem;
    fn sub(self, rhs: &NumberFieldElem) -> NumberFieldElem {
        self.same_field(rhs);
        self.with_rep(&self.rep - &rhs.rep)
    }
}

impl Mul for &NumberFieldElem {
    type Output = NumberFieldElem;
    fn mul(self, rhs: &NumberFieldElem) -> NumberFieldElem {
        self.same_field(rhs);
        let prod = &self.rep * &rhs.rep;
        self.with_rep(prod.rem(&self.modulus).expect("modulus is nonzero"))
    }
}

impl Neg for &NumberFieldElem {
    type Output = NumberFieldElem;
    fn neg(self) -> NumberFieldElem {
        self.with_rep(-&self.rep)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for NumberFieldElem {
            type Output = NumberFieldElem;
            fn $m(self, rhs: NumberFieldElem) -> NumberFieldElem {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for NumberFieldElem {
    type Output = NumberFieldElem;
    fn neg(self) -> NumberFieldElem {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};
    use proptest::prelude::*;

    fn golden() -> NumberField {
        NumberField::new(&RatPoly::from_ints(&[1, -3, 1])).unwrap()
    }

    #[test]
    fn invert_one_plus_t() {
        let k = golden();
        let x = &k.one() + &k.generator();
        let inv = x.inverse().unwrap();
        // (4 - t)/5
        assert_eq!(inv, k.element(&RatPoly::new(vec![rat(4, 5), rat(-1, 5)])));
        assert!((&x * &inv).is_one());
    }

    #[test]
    fn invert_generator() {
        let k = golden();
        let inv = k.generator().inverse().unwrap();
        assert_eq!(inv, k.element(&RatPoly::from_ints(&[3, -1])));
        assert_eq!(k.one().inverse().unwrap(), k.one());
    }

    #[test]
    fn zero_divisor_reports_factor() {
        // t^2 - 1 = (t - 1)(t + 1) is squarefree but reducible
        let k = NumberField::new(&RatPoly::from_ints(&[-1, 0, 1])).unwrap();
        let x = &k.generator() - &k.one();
        match x.inverse() {
            Err(Error::NotInvertible { common_factor: Some(g) }) => {
                assert_eq!(g, RatPoly::from_ints(&[-1, 1]))
            }
            other => panic!("expected zero divisor, got {other:?}"),
        }
        assert_eq!(k.zero().inverse(), Err(Error::NotInvertible { common_factor: None }));
    }

    #[test]
    fn modulus_validation() {
        assert!(NumberField::new(&RatPoly::from_ints(&[1, -2, 1])).is_err());
        assert!(NumberField::new(&RatPoly::from_ints(&[2])).is_err());
        let k = NumberField::new(&RatPoly::from_ints(&[2, 0, 2])).unwrap();
        assert!(k.modulus().is_monic());
    }

    #[test]
    fn coefficients_padded() {
        let k = golden();
        assert_eq!(k.from_rational(int(2)).coefficients(), vec![int(2), int(0)]);
        // t^2 = 3t - 1
        assert_eq!(k.generator().pow(2).coefficients(), vec![int(-1), int(3)]);
    }

    fn quartic() -> NumberField {
        NumberField::new(&RatPoly::from_ints(&[1, -1, -1, -1, 1])).unwrap()
    }

    fn elem() -> impl Strategy<Value = Vec<(i64, i64)>> {
        proptest::collection::vec((-6i64..=6, 1i64..=5), 4)
    }

    fn build(k: &NumberField, cs: Vec<(i64, i64)>) -> NumberFieldElem {
        k.element(&RatPoly::new(cs.into_iter().map(|(n, d)| rat(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn field_laws(a in elem(), b in elem(), c in elem()) {
            let k = quartic();
            let (a, b, c) = (build(&k, a), build(&k, b), build(&k, c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &k.one(), a.clone());
            if !a.is_zero() {
                prop_assert!((&a * &a.inverse().unwrap()).is_one());
            }
        }
    }
}
