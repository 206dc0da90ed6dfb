//! Independent checks through integral Schubert calculus: reductions in the
//! 𝔽₂ presentations are compared with the Schubert ring reduced mod 2, and
//! the degree of the rank-3 locus is recomputed by Pieri products.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::algebra::GradedAlgebra;
use crate::chern::{direct_sum_power, BundleClass, ProjectiveBundle};
use crate::error::{Error, Result};
use crate::polyring::{Gf2, GradedPolynomial, Monomial, QuotientRing};
use crate::schubert::{Partition, SchubertElement, SchubertRing};

/// `c_i ↦ c_i(S) = (−1)^i σ_{1^i}` for every `c_i` among the variables;
/// `h` is left to the caller.
pub struct SchubertImages {
    gr: SchubertRing,
    chern: Vec<SchubertElement>,
}

impl SchubertImages {
    pub fn new(gr: SchubertRing) -> Self {
        let chern = gr.tautological_total();
        Self { gr, chern }
    }

    pub fn ring(&self) -> &SchubertRing {
        &self.gr
    }

    fn var_image(&self, name: &str) -> Result<SchubertElement> {
        let i: usize = name
            .strip_prefix('c')
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(self.chern.get(i).cloned().unwrap_or_else(|| self.gr.zero()))
    }

    /// Image of a monomial in the `c_i` only (`skip` names a variable whose
    /// exponent is ignored, e.g. `h`).
    pub fn base_monomial(&self, p: &GradedPolynomial<Gf2>, m: &Monomial, skip: Option<usize>) -> Result<SchubertElement> {
        let mut acc = self.gr.one();
        for (i, v) in p.vars().vars().iter().enumerate() {
            if Some(i) == skip {
                continue;
            }
            let e = m.exponent(i);
            if e > 0 {
                let x = self.var_image(&v.name)?;
                acc = self.gr.multiply(&acc, &GradedAlgebra::pow(&self.gr, &x, e))?;
            }
        }
        Ok(acc)
    }

    /// Image of a polynomial with 𝔽₂ coefficients read as 0/1 integers.
    pub fn polynomial(&self, p: &GradedPolynomial<Gf2>) -> Result<SchubertElement> {
        let mut acc = self.gr.zero();
        for (m, _) in p.terms() {
            acc = acc.add(&self.base_monomial(p, m, None)?);
        }
        Ok(acc)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub monomials_checked: usize,
    pub mismatches: Vec<String>,
    /// Images of the quotient basis are linearly independent mod 2.
    pub basis_independent: bool,
}

impl CrossCheck {
    pub fn agree(&self) -> bool {
        self.mismatches.is_empty() && self.basis_independent
    }
}

fn rank_mod2<K: Ord + Clone>(rows: &[BTreeMap<K, Gf2>]) -> usize {
    let cols: Vec<K> = rows
        .iter()
        .flat_map(|r| r.keys().cloned())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut ech = crate::polyring::Echelon::new(cols.len());
    for r in rows {
        let v = cols.iter().map(|c| r.get(c).copied().unwrap_or(Gf2::ZERO)).collect();
        ech.insert(v);
    }
    ech.rank()
}

/// Every monomial of degree `≤ top` reduces, in `q`, to a normal form with
/// the same Schubert image mod 2 as the monomial itself.
pub fn cross_check_grassmannian(q: &QuotientRing<Gf2>, images: &SchubertImages, top: u32) -> Result<CrossCheck> {
    let vars = q.vars().clone();
    let mut checked = 0;
    let mut mismatches = Vec::new();
    let mut basis_independent = true;
    for d in 0..=top {
        for m in vars.monomials_of_degree(d) {
            let p = GradedPolynomial::monomial(&vars, m.clone(), Gf2::ONE);
            let nf = q.normal_form(&p)?;
            if !images.polynomial(&p)?.eq_mod2(&images.polynomial(&nf)?) {
                mismatches.push(m.display(&vars).to_string());
            }
            checked += 1;
        }
        let basis: Vec<_> = q
            .basis_of_degree(d)?
            .into_iter()
            .map(|m| images.polynomial(&GradedPolynomial::monomial(&vars, m, Gf2::ONE)).map(|e| e.mod2()))
            .collect::<Result<_>>()?;
        if rank_mod2(&basis) != basis.len() {
            basis_independent = false;
        }
    }
    Ok(CrossCheck {
        monomials_checked: checked,
        mismatches,
        basis_independent,
    })
}

/// The same comparison on the projective bundle `ℙ(S^{⊕5})`: a monomial
/// `m·h^k` maps to `m·h^k` in the integral Schubert tower, reduced there by
/// `h^15 = −Σ c_j(S^{⊕5}) h^{15−j}`.
pub struct SchubertTower {
    images: SchubertImages,
    tower: ProjectiveBundle<SchubertRing>,
    h_powers: Vec<Vec<SchubertElement>>,
}

impl SchubertTower {
    pub fn new(copies: u32) -> Result<Self> {
        let gr = SchubertRing::new(3, 5)?;
        let s = BundleClass::from_parts(&gr, "S", 3, gr.tautological_total())?;
        let sum = direct_sum_power(&gr, &s, copies);
        let tower = ProjectiveBundle::new(gr, sum)?;
        let top = tower.top_degree() as usize;
        let h_powers = (0..=top).map(|k| tower.h_power(k)).collect();
        Ok(Self {
            images: SchubertImages::new(gr),
            tower,
            h_powers,
        })
    }

    pub fn tower(&self) -> &ProjectiveBundle<SchubertRing> {
        &self.tower
    }

    pub fn images(&self) -> &SchubertImages {
        &self.images
    }

    /// Image of a polynomial in `c1, c2, (c3,) h`.
    pub fn polynomial(&self, p: &GradedPolynomial<Gf2>, h: usize) -> Result<Vec<SchubertElement>> {
        let gr = self.images.ring();
        let mut acc = GradedAlgebra::zero(&self.tower);
        for (m, _) in p.terms() {
            let k = m.exponent(h) as usize;
            let Some(hk) = self.h_powers.get(k) else {
                return Err(Error::DegreeOutOfRange {
                    degree: k as u32,
                    max: self.tower.top_degree(),
                });
            };
            let b = self.images.base_monomial(p, m, Some(h))?;
            if b.is_zero() {
                continue;
            }
            let term: Vec<SchubertElement> = hk.iter().map(|x| gr.multiply(&b, x)).collect::<Result<_>>()?;
            acc = self.tower.add(&acc, &term);
        }
        Ok(acc)
    }

    pub fn eq_mod2(a: &[SchubertElement], b: &[SchubertElement]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.eq_mod2(y))
    }

    /// Compare reductions of the given monomials (degree `≤ q.truncation()`).
    pub fn cross_check(&self, q: &QuotientRing<Gf2>, h: usize, monomials: &[Monomial]) -> Result<CrossCheck> {
        let vars = q.vars().clone();
        let mut mismatches = Vec::new();
        for m in monomials {
            let p = GradedPolynomial::monomial(&vars, m.clone(), Gf2::ONE);
            let nf = q.normal_form(&p)?;
            if !Self::eq_mod2(&self.polynomial(&p, h)?, &self.polynomial(&nf, h)?) {
                mismatches.push(m.display(&vars).to_string());
            }
        }
        let mut basis_independent = true;
        for d in 0..=q.truncation() {
            let rows: Vec<BTreeMap<(usize, Partition), Gf2>> = q
                .basis_of_degree(d)?
                .into_iter()
                .map(|m| {
                    let img = self.polynomial(&GradedPolynomial::monomial(&vars, m, Gf2::ONE), h)?;
                    let mut row = BTreeMap::new();
                    for (i, e) in img.iter().enumerate() {
                        for (lam, c) in e.mod2() {
                            row.insert((i, lam), c);
                        }
                    }
                    Ok(row)
                })
                .collect::<Result<_>>()?;
            if rank_mod2(&rows) != rows.len() {
                basis_independent = false;
            }
        }
        Ok(CrossCheck {
            monomials_checked: monomials.len(),
            mismatches,
            basis_independent,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PieriTerm {
    /// `σ_1^a σ_2^b` written as a partition list, e.g. `s[2]^3`.
    pub term: String,
    #[serde(serialize_with = "crate::serde_int::serialize")]
    pub coefficient: BigInt,
    #[serde(serialize_with = "crate::serde_int::serialize")]
    pub integral: BigInt,
}

/// `∫ [(1 + σ_1 + σ_2)^5]_6` over `Gr(3,5)` expanded by the multinomial
/// theorem, each product of special classes integrated by Pieri's rule.
pub fn pieri_degree_oracle() -> Result<(Vec<PieriTerm>, BigInt)> {
    let gr = SchubertRing::new(3, 5)?;
    let fact = |n: u32| -> BigInt { (1..=n).map(BigInt::from).product() };
    let mut terms = Vec::new();
    let mut total = BigInt::zero();
    for k in (0..=3u32).rev() {
        let j = 6 - 2 * k;
        if j + k > 5 {
            continue;
        }
        let i = 5 - j - k;
        let coefficient = fact(5) / (fact(i) * fact(j) * fact(k));
        let mut cls = gr.one();
        for _ in 0..j {
            cls = gr.pieri_multiply(&cls, 1);
        }
        for _ in 0..k {
            cls = gr.pieri_multiply(&cls, 2);
        }
        let integral = gr.integrate(&cls);
        total += &coefficient * &integral;
        let mut name = Vec::new();
        if j > 0 {
            name.push(if j == 1 { "s[1]".to_string() } else { format!("s[1]^{j}") });
        }
        if k > 0 {
            name.push(if k == 1 { "s[2]".to_string() } else { format!("s[2]^{k}") });
        }
        terms.push(PieriTerm {
            term: name.join("*"),
            coefficient,
            integral,
        });
    }
    Ok((terms, total))
}
