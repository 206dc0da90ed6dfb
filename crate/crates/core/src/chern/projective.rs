//! Projective bundles `ℙ(E) → B` of lines in a rank-`r` bundle `E`, with
//! `h = c_1(O(1))`. The cohomology is free over the base on `1, h, …, h^{r−1}`
//! subject to `h^r + c_1(E) h^{r−1} + … + c_r(E) = 0`, and the pushforward
//! sends `h^{r−1+j}` to the Segre class `s_j(E)` with `c(E)·s(E) = 1`.

use std::sync::Arc;

use num_bigint::BigInt;

use super::bundle::{segre, BundleClass};
use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::polyring::{Field, GradedPolynomial, GradedVariable, QuotientRing, VarSet};

/// `ℙ(E)` over an arbitrary base algebra. Elements are coefficient vectors
/// `[a_0, …, a_{r−1}]` standing for `Σ a_i h^i`.
#[derive(Debug, Clone)]
pub struct ProjectiveBundle<A: GradedAlgebra> {
    base: A,
    bundle: BundleClass<A::Elem>,
    segre: Vec<A::Elem>,
}

impl<A: GradedAlgebra> ProjectiveBundle<A> {
    pub fn new(base: A, bundle: BundleClass<A::Elem>) -> Result<Self> {
        if bundle.rank() == 0 {
            return Err(Error::Inconsistent("projective bundle of a rank-0 bundle".into()));
        }
        let segre = segre(&base, &bundle);
        Ok(Self { base, bundle, segre })
    }

    pub fn base(&self) -> &A {
        &self.base
    }

    pub fn bundle(&self) -> &BundleClass<A::Elem> {
        &self.bundle
    }

    pub fn rank(&self) -> usize {
        self.bundle.rank() as usize
    }

    pub fn fiber_dimension(&self) -> u32 {
        self.bundle.rank() - 1
    }

    pub fn segre_classes(&self) -> &[A::Elem] {
        &self.segre
    }

    fn c(&self, i: usize) -> A::Elem {
        self.bundle.chern(i).cloned().unwrap_or_else(|| self.base.zero())
    }

    /// Reduce `Σ coeffs[k] h^k` (any length) to the basis `1, …, h^{r−1}`.
    pub fn reduce(&self, coeffs: &[A::Elem]) -> Vec<A::Elem> {
        let r = self.rank();
        let mut v: Vec<A::Elem> = coeffs.to_vec();
        while v.len() < r {
            v.push(self.base.zero());
        }
        for k in (r..v.len()).rev() {
            let a = v[k].clone();
            if self.base.is_zero(&a) {
                continue;
            }
            // h^k = −Σ_{i=1..r} c_i h^{k−i}
            for i in 1..=r {
                let t = self.base.mul(&a, &self.c(i));
                v[k - i] = self.base.sub(&v[k - i], &t);
            }
        }
        v.truncate(r);
        v
    }

    pub fn h_power(&self, k: usize) -> Vec<A::Elem> {
        let mut v = vec![self.base.zero(); k + 1];
        v[k] = self.base.one();
        self.reduce(&v)
    }

    /// Element `a · h^k`.
    pub fn base_times_h(&self, a: &A::Elem, k: usize) -> Vec<A::Elem> {
        let mut v = vec![self.base.zero(); k + 1];
        v[k] = a.clone();
        self.reduce(&v)
    }

    /// Pushforward to the base: `a h^k ↦ a · s_{k−r+1}(E)`.
    pub fn pushforward(&self, coeffs: &[A::Elem]) -> A::Elem {
        let r = self.rank();
        let mut acc = self.base.zero();
        for (k, a) in coeffs.iter().enumerate() {
            if k + 1 < r {
                continue;
            }
            let j = k + 1 - r;
            if let Some(s) = self.segre.get(j) {
                acc = self.base.add(&acc, &self.base.mul(a, s));
            }
        }
        acc
    }
}

impl<A: GradedAlgebra> GradedAlgebra for ProjectiveBundle<A> {
    type Elem = Vec<A::Elem>;

    fn top_degree(&self) -> u32 {
        self.base.top_degree() + self.fiber_dimension()
    }
    fn zero(&self) -> Self::Elem {
        vec![self.base.zero(); self.rank()]
    }
    fn one(&self) -> Self::Elem {
        self.h_power(0)
    }
    fn from_integer(&self, n: &BigInt) -> Self::Elem {
        let mut v = GradedAlgebra::zero(self);
        v[0] = self.base.from_integer(n);
        v
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut prod = vec![self.base.zero(); a.len() + b.len()];
        for (i, x) in a.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = self.base.add(&prod[i + j], &self.base.mul(x, y));
            }
        }
        self.reduce(&prod)
    }
    fn homogeneous_part(&self, a: &Self::Elem, d: u32) -> Self::Elem {
        a.iter()
            .enumerate()
            .map(|(i, x)| {
                if i as u32 > d {
                    self.base.zero()
                } else {
                    self.base.homogeneous_part(x, d - i as u32)
                }
            })
            .collect()
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|x| self.base.is_zero(x))
    }
}

/// `ℙ(E)` over a polynomial quotient base, realized as one quotient ring in
/// the base variables plus `h`.
#[derive(Debug, Clone)]
pub struct ProjectiveBundleRing<C: Field> {
    base: QuotientRing<C>,
    ring: QuotientRing<C>,
    bundle: BundleClass<GradedPolynomial<C>>,
    segre: Vec<GradedPolynomial<C>>,
    h: usize,
    relation: GradedPolynomial<C>,
}

impl<C: Field> ProjectiveBundleRing<C> {
    pub fn base(&self) -> &QuotientRing<C> {
        &self.base
    }

    pub fn ring(&self) -> &QuotientRing<C> {
        &self.ring
    }

    pub fn bundle(&self) -> &BundleClass<GradedPolynomial<C>> {
        &self.bundle
    }

    pub fn rank(&self) -> usize {
        self.bundle.rank() as usize
    }

    /// `h^r + Σ c_i(E) h^{r−i}` in the total ring.
    pub fn relation(&self) -> &GradedPolynomial<C> {
        &self.relation
    }

    pub fn h(&self) -> GradedPolynomial<C> {
        let vars = self.ring.vars();
        GradedPolynomial::monomial(vars, vars.var_power(&vars.vars()[self.h].name, 1).unwrap(), C::one())
    }

    /// Base class viewed in the total ring.
    pub fn pullback(&self, a: &GradedPolynomial<C>) -> Result<GradedPolynomial<C>> {
        a.embed(self.ring.vars())
    }

    /// Pushforward to the base, `m·h^k ↦ m·s_{k−r+1}(E)`, normalized there.
    pub fn pushforward(&self, p: &GradedPolynomial<C>) -> Result<GradedPolynomial<C>> {
        p.check_same_ring(&self.ring.zero())?;
        let r = self.rank();
        let base_vars = self.base.vars();
        let base_deg = base_vars.degrees();
        let mut acc = self.base.zero();
        for (m, c) in p.terms() {
            let k = m.exponent(self.h) as usize;
            if k + 1 < r {
                continue;
            }
            let j = k + 1 - r;
            let Some(s) = self.segre.get(j) else { continue };
            let exps: Vec<u32> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != self.h)
                .map(|(_, &e)| e)
                .collect();
            let bm = crate::polyring::Monomial::from_exponents(exps, &base_deg);
            if bm.degree() + j as u32 > self.base.truncation() {
                continue;
            }
            let term = GradedPolynomial::monomial(base_vars, bm, c.clone());
            acc = acc.try_add(&self.base.mul(&term, s)?)?;
        }
        Ok(acc)
    }
}

/// Cohomology ring of `ℙ(E)` over a quotient base, adjoining a degree-1
/// variable `h_name` with relation `h^r + Σ_{i=1..r} c_i(E) h^{r−i}`.
/// `truncation` defaults to `dim B + r − 1`.
pub fn projective_bundle_ring<C: Field>(
    base: &QuotientRing<C>,
    bundle: &BundleClass<GradedPolynomial<C>>,
    h_name: &str,
    truncation: Option<u32>,
) -> Result<ProjectiveBundleRing<C>> {
    let r = bundle.rank() as usize;
    if r == 0 {
        return Err(Error::Inconsistent("projective bundle of a rank-0 bundle".into()));
    }
    if base.vars().index_of(h_name).is_some() {
        return Err(Error::InvalidVariables(format!("`{h_name}` already names a base variable")));
    }
    let mut vars = base.vars().vars().to_vec();
    vars.push(GradedVariable::new(h_name, 1));
    let vars: Arc<VarSet> = VarSet::new(vars)?;
    let h = vars.len() - 1;

    let mut relation = GradedPolynomial::monomial(&vars, vars.var_power(h_name, r as u32)?, C::one());
    for i in 1..=r {
        let Some(ci) = bundle.chern(i) else { break };
        let ci = base.normal_form(ci)?.embed(&vars)?;
        let hp = GradedPolynomial::monomial(&vars, vars.var_power(h_name, (r - i) as u32)?, C::one());
        relation = relation.try_add(&ci.try_mul(&hp)?)?;
    }
    let mut relations: Vec<GradedPolynomial<C>> = base
        .relations()
        .iter()
        .map(|p| p.embed(&vars))
        .collect::<Result<_>>()?;
    relations.push(relation.clone());

    let truncation = truncation.unwrap_or(base.top_degree() + r as u32 - 1);
    let ring = QuotientRing::with_fibers(&vars, relations, truncation, &[h_name])?;
    let segre = segre(base, bundle)
        .into_iter()
        .map(|s| base.normal_form(&s))
        .collect::<Result<_>>()?;
    Ok(ProjectiveBundleRing {
        base: base.clone(),
        ring,
        bundle: bundle.clone(),
        segre,
        h,
        relation,
    })
}
