//! A minimal interface over the graded commutative rings that characteristic
//! classes live in, so bundle operations can run over polynomial quotients
//! and over the Schubert ring alike.

use std::fmt::Debug;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::Result;
use crate::polyring::{Coefficient, Field, GradedPolynomial, QuotientRing, VarSet};

pub trait GradedAlgebra {
    type Elem: Clone + PartialEq + Debug;

    /// Parts above this degree are discarded by every product.
    fn top_degree(&self) -> u32;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_integer(&self, n: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn homogeneous_part(&self, a: &Self::Elem, d: u32) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn scale(&self, a: &Self::Elem, n: &BigInt) -> Self::Elem {
        self.mul(&self.from_integer(n), a)
    }

    fn pow(&self, a: &Self::Elem, e: u32) -> Self::Elem {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items
            .into_iter()
            .fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// Plain polynomial ring with products truncated above a fixed degree.
/// Elements are raw polynomials; nothing is reduced.
#[derive(Debug, Clone)]
pub struct TruncatedPolyRing<C> {
    vars: Arc<VarSet>,
    truncation: u32,
    _coeff: std::marker::PhantomData<C>,
}

impl<C: Coefficient> TruncatedPolyRing<C> {
    pub fn new(vars: &Arc<VarSet>, truncation: u32) -> Self {
        Self {
            vars: vars.clone(),
            truncation,
            _coeff: std::marker::PhantomData,
        }
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn var(&self, name: &str) -> Result<GradedPolynomial<C>> {
        GradedPolynomial::var(&self.vars, name)
    }
}

impl<C: Coefficient> GradedAlgebra for TruncatedPolyRing<C> {
    type Elem = GradedPolynomial<C>;

    fn top_degree(&self) -> u32 {
        self.truncation
    }
    fn zero(&self) -> Self::Elem {
        GradedPolynomial::zero(&self.vars)
    }
    fn one(&self) -> Self::Elem {
        GradedPolynomial::one(&self.vars)
    }
    fn from_integer(&self, n: &BigInt) -> Self::Elem {
        GradedPolynomial::constant(&self.vars, C::from_bigint(n))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.try_add(b).expect("operands over the same ring")
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.neg()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.mul_truncated(b, self.truncation)
            .expect("operands over the same ring")
    }
    fn homogeneous_part(&self, a: &Self::Elem, d: u32) -> Self::Elem {
        a.homogeneous_part(d)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
}

impl<C: Field> GradedAlgebra for QuotientRing<C> {
    type Elem = GradedPolynomial<C>;

    fn top_degree(&self) -> u32 {
        self.truncation()
    }
    fn zero(&self) -> Self::Elem {
        QuotientRing::zero(self)
    }
    fn one(&self) -> Self::Elem {
        QuotientRing::one(self)
    }
    fn from_integer(&self, n: &BigInt) -> Self::Elem {
        GradedPolynomial::constant(self.vars(), C::from_bigint(n))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.try_add(b).expect("operands over the same ring")
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.neg()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        QuotientRing::mul(self, a, b).expect("operands over the same ring")
    }
    fn homogeneous_part(&self, a: &Self::Elem, d: u32) -> Self::Elem {
        a.homogeneous_part(d)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.normal_form(a).map(|p| p.is_zero()).unwrap_or(false)
    }
}
