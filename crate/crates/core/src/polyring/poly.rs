use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use super::coeff::Coefficient;
use super::monomial::{Monomial, VarSet};
use crate::error::{Error, Result};

/// Sparse polynomial over graded variables.
///
/// The coefficient of `t^k` in a total Chern class is the homogeneous
/// degree-`k` part; no separate series variable is stored.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedPolynomial<C> {
    vars: Arc<VarSet>,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coefficient> GradedPolynomial<C> {
    pub fn zero(vars: &Arc<VarSet>) -> Self {
        Self {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &Arc<VarSet>) -> Self {
        Self::constant(vars, C::one())
    }

    pub fn constant(vars: &Arc<VarSet>, c: C) -> Self {
        Self::monomial(vars, Monomial::one(vars.len()), c)
    }

    pub fn from_int(vars: &Arc<VarSet>, n: i64) -> Self {
        Self::constant(vars, C::from_i64(n))
    }

    pub fn monomial(vars: &Arc<VarSet>, m: Monomial, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self {
            vars: vars.clone(),
            terms,
        }
    }

    /// The variable `name` as a polynomial.
    pub fn var(vars: &Arc<VarSet>, name: &str) -> Result<Self> {
        Ok(Self::monomial(vars, vars.var_power(name, 1)?, C::one()))
    }

    /// Build from `(exponents, coefficient)` pairs; repeated monomials add up.
    pub fn from_terms<I>(vars: &Arc<VarSet>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, C)>,
    {
        let degrees = vars.degrees();
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            p.add_term(Monomial::from_exponents(e, &degrees), c);
        }
        p
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, C)> {
        self.terms.into_iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Constant term.
    pub fn constant_term(&self) -> C {
        self.coefficient(&Monomial::one(self.vars.len()))
    }

    /// Largest degree with a nonzero term, `None` for the zero polynomial.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub(crate) fn check_same_ring(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "variables {:?} vs {:?}",
                names(&self.vars),
                names(&other.vars)
            )))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &C) -> Self {
        let mut out = Self::zero(&self.vars);
        if k.is_zero() {
            return out;
        }
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone() * k.clone());
        }
        out
    }

    /// Product with every part of degree above `truncation` discarded.
    pub fn mul_truncated(&self, other: &Self, truncation: u32) -> Result<Self> {
        self.check_same_ring(other)?;
        Ok(self.mul_unchecked(other, Some(truncation)))
    }

    /// Full product, no truncation.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        Ok(self.mul_unchecked(other, None))
    }

    fn mul_unchecked(&self, other: &Self, truncation: Option<u32>) -> Self {
        let mut out = Self::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some(t) = truncation {
                    if ma.degree() + mb.degree() > t {
                        continue;
                    }
                }
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn pow_truncated(&self, exp: u32, truncation: u32) -> Self {
        let mut acc = Self::one(&self.vars).truncate(truncation);
        let mut base = self.truncate(truncation);
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base, Some(truncation));
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base, Some(truncation));
            }
        }
        acc
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..exp {
            acc = acc.mul_unchecked(self, None);
        }
        acc
    }

    /// Drop all parts of degree above `d`.
    pub fn truncate(&self, d: u32) -> Self {
        Self {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Homogeneous part of degree `d` (the coefficient of `t^d`).
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Graded inverse up to degree `truncation`. The degree-`k` part of the
    /// inverse is determined from the lower parts:
    /// `v_k = -u_0^{-1} Σ_{i=1..k} u_i v_{k-i}`.
    pub fn inverse_graded(&self, truncation: u32) -> Result<Self> {
        let u0 = self.constant_term();
        let inv0 = u0
            .unit_inverse()
            .ok_or_else(|| Error::NonUnit(u0.to_string()))?;
        let parts: Vec<Self> = (0..=truncation).map(|d| self.homogeneous_part(d)).collect();
        let mut inv: Vec<Self> = Vec::with_capacity(parts.len());
        inv.push(Self::constant(&self.vars, inv0.clone()));
        for k in 1..=truncation as usize {
            let mut acc = Self::zero(&self.vars);
            for i in 1..=k {
                if parts[i].is_zero() || inv[k - i].is_zero() {
                    continue;
                }
                let prod = parts[i].mul_unchecked(&inv[k - i], None);
                for (m, c) in prod.terms {
                    acc.add_term(m, c);
                }
            }
            inv.push(acc.scale(&(-inv0.clone())));
        }
        let mut out = Self::zero(&self.vars);
        for part in inv {
            for (m, c) in part.terms {
                out.add_term(m, c);
            }
        }
        Ok(out)
    }

    /// Substitute a polynomial for each variable. `images[i]` replaces
    /// variable `i`; the result lives over the images' variable set.
    pub fn substitute(
        &self,
        target: &Arc<VarSet>,
        images: &[GradedPolynomial<C>],
        truncation: Option<u32>,
    ) -> Result<Self> {
        if images.len() != self.vars.len() {
            return Err(Error::RingMismatch(format!(
                "substitution needs {} images, got {}",
                self.vars.len(),
                images.len()
            )));
        }
        for img in images {
            if img.vars != *target {
                return Err(Error::RingMismatch("substitution image over a different ring".into()));
            }
        }
        let mut cache: Vec<Vec<GradedPolynomial<C>>> = images
            .iter()
            .map(|p| vec![GradedPolynomial::one(target), p.clone()])
            .collect();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut term = Self::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = cache[i]
                        .last()
                        .unwrap()
                        .mul_unchecked(&images[i], truncation);
                    cache[i].push(next);
                }
                term = term.mul_unchecked(&cache[i][e as usize], truncation);
            }
            for (mm, cc) in term.terms {
                out.add_term(mm, cc);
            }
        }
        Ok(out)
    }

    /// Apply a ring map on coefficients (e.g. reduction ℤ → 𝔽₂).
    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> GradedPolynomial<D> {
        let mut out = GradedPolynomial::<D>::zero(&self.vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Re-express over another variable set that contains all of this
    /// polynomial's variables (by name).
    pub fn embed(&self, target: &Arc<VarSet>) -> Result<Self> {
        let map: Vec<usize> = self
            .vars
            .vars()
            .iter()
            .map(|v| {
                target
                    .index_of(&v.name)
                    .ok_or_else(|| Error::UnknownVariable(v.name.clone()))
            })
            .collect::<Result<_>>()?;
        for (i, v) in self.vars.vars().iter().enumerate() {
            if target.vars()[map[i]].degree != v.degree {
                return Err(Error::RingMismatch(format!("degree of `{}` differs", v.name)));
            }
        }
        let degrees = target.degrees();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &x) in m.exponents().iter().enumerate() {
                e[map[i]] = x;
            }
            out.add_term(Monomial::from_exponents(e, &degrees), c.clone());
        }
        Ok(out)
    }
}

impl GradedPolynomial<BigInt> {
    pub fn from_bigint_terms(vars: &Arc<VarSet>, terms: &[(Vec<u32>, i64)]) -> Self {
        Self::from_terms(vars, terms.iter().map(|(e, c)| (e.clone(), BigInt::from(*c))))
    }
}

fn names(v: &VarSet) -> Vec<&str> {
    v.vars().iter().map(|x| x.name.as_str()).collect()
}

/// Canonical text form: terms in decreasing monomial order joined by
/// ` + ` / ` - `, each written `coeff*var^e*...` with unit coefficients
/// omitted; the zero polynomial prints as `0`.
impl<C: Coefficient> fmt::Display for GradedPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", m.display(&self.vars))?;
            } else {
                write!(f, "{abs}*{}", m.display(&self.vars))?;
            }
        }
        Ok(())
    }
}

impl<C: Coefficient> fmt::Debug for GradedPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedPolynomial({self})")
    }
}
