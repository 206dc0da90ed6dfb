//! Presentations `H*(Gr(k,ℂⁿ)) = R[c_1,…,c_k]/(s_{n−k+1},…,s_n)` with `c_i`
//! the Chern classes of the tautological subbundle and `s = c^{-1}` those
//! of the quotient bundle.

use std::sync::Arc;

use super::bundle::BundleClass;
use crate::algebra::TruncatedPolyRing;
use crate::error::{Error, Result};
use crate::polyring::{Coefficient, Field, Gf2, GradedPolynomial, QuotientRing, VarSet};

/// Variables `c1..ck` with `deg c_i = i`.
pub fn chern_vars(k: usize) -> Arc<VarSet> {
    let names: Vec<String> = (1..=k).map(|i| format!("c{i}")).collect();
    let pairs: Vec<(&str, u32)> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i as u32 + 1)).collect();
    VarSet::from_pairs(&pairs).expect("distinct names")
}

/// `1 + c_1 + … + c_k` over the given variables (which must contain `c1..ck`).
pub fn universal_total<C: Coefficient>(vars: &Arc<VarSet>, k: usize) -> Result<GradedPolynomial<C>> {
    let mut total = GradedPolynomial::one(vars);
    for i in 1..=k {
        total = total.try_add(&GradedPolynomial::var(vars, &format!("c{i}"))?)?;
    }
    Ok(total)
}

/// Raw Segre polynomials `s_0, …, s_max` of `1 + c_1 + … + c_k`.
pub fn segre_polynomials<C: Coefficient>(k: usize, max: u32) -> Result<Vec<GradedPolynomial<C>>> {
    let vars = chern_vars(k);
    let inv = universal_total::<C>(&vars, k)?.inverse_graded(max)?;
    Ok((0..=max).map(|d| inv.homogeneous_part(d)).collect())
}

/// `H*(Gr(k,ℂⁿ))` over a field, all of `c1..ck` kept as generators.
pub fn grassmannian_presentation<C: Field>(k: usize, n: usize, truncation: Option<u32>) -> Result<QuotientRing<C>> {
    if k > n {
        return Err(Error::Inconsistent(format!("Gr({k},{n}) needs k <= n")));
    }
    let vars = chern_vars(k);
    let s = segre_polynomials::<C>(k, n as u32)?;
    let relations = s[(n - k + 1)..=n].to_vec();
    let dim = (k * (n - k)) as u32;
    QuotientRing::new(&vars, relations, truncation.unwrap_or(dim))
}

/// Express `var` through a relation in which it occurs linearly with a unit
/// coefficient and no other term contains it: returns `var − rel/coeff`.
pub fn solve_linear<C: Coefficient>(rel: &GradedPolynomial<C>, var: &str) -> Result<GradedPolynomial<C>> {
    let vars = rel.vars().clone();
    let x = vars.var_power(var, 1)?;
    let idx = vars.index_of(var).expect("checked above");
    let coeff = rel.coefficient(&x);
    let inv = coeff
        .unit_inverse()
        .ok_or_else(|| Error::NonUnit(format!("coefficient of {var} is {coeff}")))?;
    if rel.terms().any(|(m, _)| m != &x && m.exponent(idx) > 0) {
        return Err(Error::Inconsistent(format!("{var} does not occur linearly in {rel}")));
    }
    let xp = GradedPolynomial::monomial(&vars, x, C::one());
    xp.try_sub(&rel.scale(&inv))
}

/// `H*(Gr(3,ℂ⁵), 𝔽₂)` in both presentations: with generators `c1, c2, c3`,
/// and after eliminating `c3` through `s_3 = c_1^3 + c_3`, which leaves
/// `𝔽₂[c1,c2]/(c_1^4 + c_1^2c_2 + c_2^2, c_1c_2^2)`.
#[derive(Debug, Clone)]
pub struct Gr35Mod2 {
    full: QuotientRing<Gf2>,
    ring: QuotientRing<Gf2>,
    c3_image: GradedPolynomial<Gf2>,
}

impl Gr35Mod2 {
    pub fn new() -> Result<Self> {
        let full = grassmannian_presentation::<Gf2>(3, 5, None)?;
        let rels = full.relations().to_vec();
        // s3, s4, s5 in that order
        let c3_full = solve_linear(&rels[0], "c3")?;
        let small = chern_vars(2);
        let c3_image = project(&c3_full, &small)?;
        let subst = |p: &GradedPolynomial<Gf2>| -> Result<GradedPolynomial<Gf2>> {
            let images = vec![
                GradedPolynomial::var(&small, "c1")?,
                GradedPolynomial::var(&small, "c2")?,
                c3_image.clone(),
            ];
            p.substitute(&small, &images, None)
        };
        let relations = rels[1..]
            .iter()
            .map(subst)
            .collect::<Result<Vec<_>>>()?;
        let ring = QuotientRing::new(&small, relations, 6)?;
        Ok(Self { full, ring, c3_image })
    }

    /// Quotient over `c1, c2, c3`.
    pub fn full(&self) -> &QuotientRing<Gf2> {
        &self.full
    }

    /// Quotient over `c1, c2` with `c3` eliminated.
    pub fn ring(&self) -> &QuotientRing<Gf2> {
        &self.ring
    }

    /// The value of `c3` in the reduced presentation (`c1^3`).
    pub fn c3_image(&self) -> &GradedPolynomial<Gf2> {
        &self.c3_image
    }

    /// Map a polynomial in `c1, c2, c3` (optionally with more variables
    /// such as `h`, matched by name) into the eliminated presentation.
    pub fn eliminate_c3(&self, p: &GradedPolynomial<Gf2>, target: &Arc<VarSet>) -> Result<GradedPolynomial<Gf2>> {
        let c3 = self.c3_image.embed(target)?;
        let images = p
            .vars()
            .vars()
            .iter()
            .map(|v| {
                if v.name == "c3" {
                    Ok(c3.clone())
                } else {
                    GradedPolynomial::var(target, &v.name)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        p.substitute(target, &images, None)
    }

    /// Tautological subbundle `S` over the reduced presentation:
    /// `c(S) = 1 + c_1 + c_2 + c_1^3`.
    pub fn tautological(&self) -> Result<BundleClass<GradedPolynomial<Gf2>>> {
        let v = self.ring.vars();
        let parts = vec![
            GradedPolynomial::one(v),
            GradedPolynomial::var(v, "c1")?,
            GradedPolynomial::var(v, "c2")?,
            self.ring.normal_form(&self.c3_image)?,
        ];
        BundleClass::from_parts(&self.ring, "S", 3, parts)
    }
}

/// Drop variables absent from `target` (they must not occur in `p`).
fn project<C: Coefficient>(p: &GradedPolynomial<C>, target: &Arc<VarSet>) -> Result<GradedPolynomial<C>> {
    let mut out = GradedPolynomial::zero(target);
    let degrees = target.degrees();
    for (m, c) in p.terms() {
        let mut e = vec![0; target.len()];
        for (i, v) in p.vars().vars().iter().enumerate() {
            let x = m.exponent(i);
            if x == 0 {
                continue;
            }
            let j = target
                .index_of(&v.name)
                .ok_or_else(|| Error::UnknownVariable(v.name.clone()))?;
            e[j] = x;
        }
        out.add_term(crate::polyring::Monomial::from_exponents(e, &degrees), c.clone());
    }
    Ok(out)
}

/// Tautological bundle `S` with `c(S) = 1 + c_1 + … + c_k` over a plain
/// truncated polynomial ring (raw, nothing reduced).
pub fn raw_tautological<C: Coefficient>(ring: &TruncatedPolyRing<C>, k: usize) -> Result<BundleClass<GradedPolynomial<C>>> {
    let v = ring.vars();
    let mut parts = vec![GradedPolynomial::one(v)];
    for i in 1..=k {
        parts.push(GradedPolynomial::var(v, &format!("c{i}"))?);
    }
    BundleClass::from_parts(ring, "S", k as u32, parts)
}
