//! Polynomials with coefficients in a number field.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::{FieldElement, NumberField};
use crate::poly::Poly;
use crate::{Error, Result};

/// `a_0 X^n + ... + a_n` over `K`, leading coefficient first.
#[derive(Clone)]
pub struct KPoly {
    field: Arc<NumberField>,
    coeffs: Vec<FieldElement>,
}

impl KPoly {
    pub fn new(field: &Arc<NumberField>, coeffs: Vec<FieldElement>) -> Result<Self> {
        if coeffs.iter().any(|c| !c.field().same_as(field)) {
            return Err(Error::FieldMismatch);
        }
        let first = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(coeffs.len());
        Ok(KPoly { field: Arc::clone(field), coeffs: coeffs[first..].to_vec() })
    }

    /// A rational polynomial viewed over `K`.
    pub fn from_rational(field: &Arc<NumberField>, f: &Poly) -> Self {
        KPoly {
            field: Arc::clone(field),
            coeffs: f
                .coeffs()
                .iter()
                .map(|c| FieldElement::from_rational(field, c.clone()))
                .collect(),
        }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// `Some(f)` when every coefficient is rational.
    pub fn to_rational(&self) -> Option<Poly> {
        self.coeffs
            .iter()
            .map(FieldElement::as_rational)
            .collect::<Option<Vec<_>>>()
            .map(Poly::new)
    }

    pub fn eval(&self, x: &FieldElement) -> Result<FieldElement> {
        self.coeffs
            .iter()
            .try_fold(FieldElement::zero(&self.field), |acc, c| acc.mul(x)?.add(c))
    }
}

impl PartialEq for KPoly {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_as(&other.field) && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for KPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KPoly{:?}", self.coeffs)
    }
}

impl Serialize for KPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn evaluation_over_gaussian_field() {
        let k = make_field(&Poly::from_ints(&[1, 0, 1]), None).unwrap();
        let f = KPoly::from_rational(&k, &Poly::from_ints(&[1, 0, 1]));
        let i = FieldElement::theta(&k);
        assert!(f.eval(&i).unwrap().is_zero());
        assert_eq!(f.to_rational(), Some(Poly::from_ints(&[1, 0, 1])));
        let g = KPoly::new(&k, vec![FieldElement::zero(&k), i.clone(), FieldElement::one(&k)]).unwrap();
        assert_eq!(g.degree(), 1);
        assert_eq!(g.to_rational(), None);
    }
}
