use std::cmp::Reverse;
use std::collections::HashMap;
use std::sync::Arc;

use super::coeff::Field;
use super::echelon::Echelon;
use super::monomial::{Monomial, VarSet};
use super::poly::GradedPolynomial;
use crate::error::{Error, Result};

/// Truncation used when none is given: complex dimension of ℙ(S⊕⁵) over Gr(3,5).
pub const DEFAULT_TRUNCATION: u32 = 20;

#[derive(Debug, Clone)]
struct DegreeSlice<C: Field> {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// Positions into `monomials`, increasing in monomial order.
    basis: Vec<usize>,
    /// For each monomial, its coordinates on `basis` as `(basis position, coeff)`.
    reduction: Vec<Vec<(usize, C)>>,
    ideal_rank: usize,
}

/// Graded polynomial ring modulo homogeneous relations, with every degree
/// up to `truncation` precomputed.
///
/// Each degree-`d` slice of the ideal is spanned by the relations times all
/// monomials of complementary degree and row-reduced over the field. A
/// monomial basis of the quotient is then picked greedily: monomials with
/// the smallest exponents in the fiber variables first, then monomials
/// involving more distinct variables, then larger in graded-lex order.
#[derive(Debug, Clone)]
pub struct QuotientRing<C: Field> {
    vars: Arc<VarSet>,
    relations: Vec<GradedPolynomial<C>>,
    truncation: u32,
    fiber_vars: Vec<usize>,
    slices: Vec<DegreeSlice<C>>,
}

impl<C: Field> QuotientRing<C> {
    pub fn new(
        vars: &Arc<VarSet>,
        relations: Vec<GradedPolynomial<C>>,
        truncation: u32,
    ) -> Result<Self> {
        Self::with_fibers(vars, relations, truncation, &[])
    }

    /// `fibers` name the variables whose low powers are preferred in the
    /// basis, e.g. the hyperplane class of a projective bundle, so that the
    /// basis reads `(base basis)·h^i`.
    pub fn with_fibers(
        vars: &Arc<VarSet>,
        relations: Vec<GradedPolynomial<C>>,
        truncation: u32,
        fibers: &[&str],
    ) -> Result<Self> {
        let fiber_vars = fibers
            .iter()
            .map(|f| vars.index_of(f).ok_or_else(|| Error::UnknownVariable(f.to_string())))
            .collect::<Result<Vec<_>>>()?;
        let mut rels = Vec::new();
        for r in relations {
            r.check_same_ring(&GradedPolynomial::zero(vars))?;
            if !r.is_homogeneous() {
                return Err(Error::NotHomogeneous(r.to_string()));
            }
            if !r.is_zero() {
                rels.push(r);
            }
        }
        let slices = (0..=truncation)
            .map(|d| build_slice(vars, &rels, d, &fiber_vars))
            .collect();
        Ok(Self {
            vars: vars.clone(),
            relations: rels,
            truncation,
            fiber_vars,
            slices,
        })
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn relations(&self) -> &[GradedPolynomial<C>] {
        &self.relations
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn fiber_variables(&self) -> Vec<&str> {
        self.fiber_vars
            .iter()
            .map(|&i| self.vars.vars()[i].name.as_str())
            .collect()
    }

    fn slice(&self, d: u32) -> Result<&DegreeSlice<C>> {
        self.slices.get(d as usize).ok_or(Error::DegreeOutOfRange {
            degree: d,
            max: self.truncation,
        })
    }

    pub fn zero(&self) -> GradedPolynomial<C> {
        GradedPolynomial::zero(&self.vars)
    }

    pub fn one(&self) -> GradedPolynomial<C> {
        self.normal_form(&GradedPolynomial::one(&self.vars))
            .expect("degree 0 is always in range")
    }

    pub fn var(&self, name: &str) -> Result<GradedPolynomial<C>> {
        self.normal_form(&GradedPolynomial::var(&self.vars, name)?)
    }

    /// Unique representative supported on the chosen basis monomials.
    pub fn normal_form(&self, p: &GradedPolynomial<C>) -> Result<GradedPolynomial<C>> {
        p.check_same_ring(&self.zero())?;
        if let Some(d) = p.max_degree() {
            if d > self.truncation {
                return Err(Error::DegreeOutOfRange {
                    degree: d,
                    max: self.truncation,
                });
            }
        }
        let mut out = self.zero();
        for (m, c) in p.terms() {
            let slice = &self.slices[m.degree() as usize];
            let idx = slice.index[m];
            for (b, k) in &slice.reduction[idx] {
                out.add_term(slice.monomials[slice.basis[*b]].clone(), c.clone() * k.clone());
            }
        }
        Ok(out)
    }

    /// Normal form after discarding everything above the truncation degree.
    pub fn reduce(&self, p: &GradedPolynomial<C>) -> Result<GradedPolynomial<C>> {
        self.normal_form(&p.truncate(self.truncation))
    }

    pub fn mul(&self, a: &GradedPolynomial<C>, b: &GradedPolynomial<C>) -> Result<GradedPolynomial<C>> {
        let prod = a.mul_truncated(b, self.truncation)?;
        self.normal_form(&prod)
    }

    pub fn pow(&self, a: &GradedPolynomial<C>, e: u32) -> Result<GradedPolynomial<C>> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    pub fn is_zero(&self, p: &GradedPolynomial<C>) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    pub fn equal(&self, a: &GradedPolynomial<C>, b: &GradedPolynomial<C>) -> Result<bool> {
        Ok(self.normal_form(a)? == self.normal_form(b)?)
    }

    /// Basis monomials of the degree-`d` quotient slice, increasing in
    /// monomial order.
    pub fn basis_of_degree(&self, d: u32) -> Result<Vec<Monomial>> {
        let s = self.slice(d)?;
        Ok(s.basis.iter().map(|&i| s.monomials[i].clone()).collect())
    }

    pub fn dimension(&self, d: u32) -> Result<usize> {
        Ok(self.slice(d)?.basis.len())
    }

    /// Quotient dimensions in degrees `0..=truncation`.
    pub fn dimensions(&self) -> Vec<usize> {
        self.slices.iter().map(|s| s.basis.len()).collect()
    }

    /// Number of monomials and rank of the ideal slice in degree `d`.
    pub fn slice_counts(&self, d: u32) -> Result<(usize, usize)> {
        let s = self.slice(d)?;
        Ok((s.monomials.len(), s.ideal_rank))
    }

    /// Coordinates of the degree-`d` part of `p` on the degree-`d` basis.
    pub fn coordinates(&self, p: &GradedPolynomial<C>, d: u32) -> Result<Vec<C>> {
        let basis = self.basis_of_degree(d)?;
        let nf = self.normal_form(&p.homogeneous_part(d))?;
        Ok(basis.iter().map(|m| nf.coefficient(m)).collect())
    }

    /// Largest degree with a nonzero quotient slice.
    pub fn top_degree(&self) -> u32 {
        self.slices
            .iter()
            .rposition(|s| !s.basis.is_empty())
            .unwrap_or(0) as u32
    }
}

fn preference_key(m: &Monomial, fibers: &[usize]) -> (Vec<u32>, Reverse<usize>, Reverse<Monomial>) {
    (
        fibers.iter().map(|&i| m.exponent(i)).collect(),
        Reverse(m.support_size()),
        Reverse(m.clone()),
    )
}

fn build_slice<C: Field>(
    vars: &Arc<VarSet>,
    relations: &[GradedPolynomial<C>],
    d: u32,
    fibers: &[usize],
) -> DegreeSlice<C> {
    let monomials = vars.monomials_of_degree(d);
    let index: HashMap<Monomial, usize> = monomials
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let n = monomials.len();

    let mut ideal_rows = Vec::new();
    for r in relations {
        let rd = r.max_degree().unwrap_or(0);
        if rd > d {
            continue;
        }
        for m in vars.monomials_of_degree(d - rd) {
            let mut row = vec![C::zero(); n];
            for (rm, c) in r.terms() {
                let idx = index[&rm.mul(&m)];
                row[idx] = row[idx].clone() + c.clone();
            }
            ideal_rows.push(row);
        }
    }

    // Greedy basis selection modulo the ideal slice.
    let mut ech = Echelon::new(n);
    for row in &ideal_rows {
        ech.insert(row.clone());
    }
    let ideal_rank = ech.rank();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| preference_key(&monomials[i], fibers));
    let mut basis = Vec::new();
    for &i in &order {
        if ech.rank() == n {
            break;
        }
        let mut e = vec![C::zero(); n];
        e[i] = C::one();
        if ech.insert(e) {
            basis.push(i);
        }
    }
    basis.sort_unstable();

    // Pivots on the non-basis monomials give each of them a rewrite rule
    // `m = -Σ row[b]·b` modulo the ideal.
    let big = n + 1;
    let priority: Vec<usize> = (0..n)
        .map(|i| if basis.binary_search(&i).is_ok() { big + i } else { i })
        .collect();
    let mut nf = Echelon::with_priority(priority);
    for row in ideal_rows {
        nf.insert(row);
    }
    let basis_pos: HashMap<usize, usize> = basis.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    let reduction = (0..n)
        .map(|i| {
            if let Some(&p) = basis_pos.get(&i) {
                return vec![(p, C::one())];
            }
            let row = nf
                .row_for_pivot(i)
                .expect("non-basis monomial must be a pivot of the ideal slice");
            basis
                .iter()
                .enumerate()
                .filter(|(_, &b)| !row[b].is_zero())
                .map(|(p, &b)| (p, -row[b].clone()))
                .collect()
        })
        .collect();

    DegreeSlice {
        monomials,
        index,
        basis,
        reduction,
        ideal_rank,
    }
}
