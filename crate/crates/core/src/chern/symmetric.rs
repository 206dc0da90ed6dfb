//! Splitting-principle formulas. A product over Chern roots is expanded in
//! root variables and rewritten in elementary symmetric polynomials by
//! repeatedly cancelling the lexicographically leading term.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polyring::{GradedPolynomial, Monomial, VarSet};

type ZPoly = GradedPolynomial<BigInt>;

/// Root variables `x1..xr, y1..ys`, all of degree 1.
pub fn root_vars(r: usize, s: usize) -> Arc<VarSet> {
    let names: Vec<(String, u32)> = (1..=r)
        .map(|i| (format!("x{i}"), 1))
        .chain((1..=s).map(|j| (format!("y{j}"), 1)))
        .collect();
    let pairs: Vec<(&str, u32)> = names.iter().map(|(n, d)| (n.as_str(), *d)).collect();
    VarSet::from_pairs(&pairs).expect("distinct root names")
}

/// Elementary-symmetric variables `e1..er` (degree i) and `f1..fs` (degree j).
pub fn elementary_vars(r: usize, s: usize) -> Arc<VarSet> {
    let names: Vec<(String, u32)> = (1..=r)
        .map(|i| (format!("e{i}"), i as u32))
        .chain((1..=s).map(|j| (format!("f{j}"), j as u32)))
        .collect();
    let pairs: Vec<(&str, u32)> = names.iter().map(|(n, d)| (n.as_str(), *d)).collect();
    VarSet::from_pairs(&pairs).expect("distinct names")
}

/// `e_i` of the variables in `range` of the root ring.
fn elementary(roots: &Arc<VarSet>, range: std::ops::Range<usize>, i: usize) -> ZPoly {
    let idx: Vec<usize> = range.collect();
    let mut out = ZPoly::zero(roots);
    let degrees = roots.degrees();
    for subset in subsets(&idx, i) {
        let mut e = vec![0u32; roots.len()];
        for v in subset {
            e[v] = 1;
        }
        out.add_term(Monomial::from_exponents(e, &degrees), BigInt::one());
    }
    out
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if items.len() < k {
        return vec![];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        for mut rest in subsets(&items[i + 1..], k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Polynomial in `e_i(x), f_j(y)` equal to `p`, which must be symmetric in
/// the `x` roots and, separately, in the `y` roots.
pub fn to_elementary(p: &ZPoly, r: usize, s: usize) -> Result<ZPoly> {
    let roots = p.vars().clone();
    if roots.len() != r + s {
        return Err(Error::RingMismatch(format!(
            "expected {} root variables, got {}",
            r + s,
            roots.len()
        )));
    }
    let evars = elementary_vars(r, s);
    let e_x: Vec<ZPoly> = (0..=r).map(|i| elementary(&roots, 0..r, i)).collect();
    let f_y: Vec<ZPoly> = (0..=s).map(|j| elementary(&roots, r..r + s, j)).collect();

    let mut rest = p.clone();
    let mut out = ZPoly::zero(&evars);
    let edeg = evars.degrees();
    while let Some((lead, c)) = lex_leading(&rest) {
        let a = &lead.exponents()[..r];
        let b = &lead.exponents()[r..];
        if a.windows(2).any(|w| w[0] < w[1]) || b.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invariant(format!(
                "polynomial is not symmetric: leading exponents {:?}",
                lead.exponents()
            )));
        }
        let mut target = vec![0u32; r + s];
        let mut expansion = ZPoly::one(&roots);
        for i in 0..r {
            let k = a[i] - a.get(i + 1).copied().unwrap_or(0);
            target[i] = k;
            if k > 0 {
                expansion = expansion.try_mul(&e_x[i + 1].pow(k))?;
            }
        }
        for j in 0..s {
            let k = b[j] - b.get(j + 1).copied().unwrap_or(0);
            target[r + j] = k;
            if k > 0 {
                expansion = expansion.try_mul(&f_y[j + 1].pow(k))?;
            }
        }
        rest = rest.try_sub(&expansion.scale(&c))?;
        out.add_term(Monomial::from_exponents(target, &edeg), c);
    }
    Ok(out)
}

/// Re-expand a polynomial in `e, f` into root variables.
pub fn expand_in_roots(q: &ZPoly, r: usize, s: usize) -> Result<ZPoly> {
    let roots = root_vars(r, s);
    let images: Vec<ZPoly> = (1..=r)
        .map(|i| elementary(&roots, 0..r, i))
        .chain((1..=s).map(|j| elementary(&roots, r..r + s, j)))
        .collect();
    q.substitute(&roots, &images, None)
}

fn lex_leading(p: &ZPoly) -> Option<(Monomial, BigInt)> {
    p.terms()
        .max_by(|(a, _), (b, _)| lex_cmp(a, b))
        .map(|(m, c)| (m.clone(), c.clone()))
}

fn lex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.exponents().cmp(b.exponents())
}

/// `c(E ⊗ F)` for ranks `r`, `s` as a polynomial in `e_i = c_i(E)` and
/// `f_j = c_j(F)`, up to degree `max_degree`.
pub fn tensor_formula(r: usize, s: usize, max_degree: u32) -> Result<ZPoly> {
    let evars = elementary_vars(r, s);
    if r == 0 || s == 0 {
        return Ok(ZPoly::one(&evars));
    }
    let roots = root_vars(r, s);
    let mut prod = ZPoly::one(&roots);
    for i in 0..r {
        for j in 0..s {
            let mut factor = ZPoly::one(&roots);
            factor.add_term(roots.var_power(&format!("x{}", i + 1), 1)?, BigInt::one());
            factor.add_term(roots.var_power(&format!("y{}", j + 1), 1)?, BigInt::one());
            prod = prod.mul_truncated(&factor, max_degree)?;
        }
    }
    to_elementary(&prod, r, s)
}

/// `c(E ⊗ L)` for a line bundle `L` with `ℓ = c_1(L)`:
/// `Σ_k Σ_{j≤k} C(r−j, k−j) e_j ℓ^{k−j}`, which is what the root product
/// `Π_i (1 + x_i + ℓ) = Σ_j e_j (1 + ℓ)^{r−j}` gives degree by degree.
pub fn line_twist_formula(r: usize, max_degree: u32) -> ZPoly {
    let evars = elementary_vars(r, 1);
    let degrees = evars.degrees();
    let mut out = ZPoly::zero(&evars);
    for j in 0..=r {
        for m in 0..=(r - j) {
            if j as u32 + m as u32 > max_degree {
                continue;
            }
            let mut e = vec![0u32; r + 1];
            if j > 0 {
                e[j - 1] = 1;
            }
            e[r] = m as u32;
            let c = binomial(r - j, m);
            if !c.is_zero() {
                out.add_term(Monomial::from_exponents(e, &degrees), c);
            }
        }
    }
    out
}

pub(crate) fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_sum_rewrites_through_newton() {
        // x1^2 + x2^2 = e1^2 - 2 e2
        let roots = root_vars(2, 0);
        let p = ZPoly::from_bigint_terms(&roots, &[(vec![2, 0], 1), (vec![0, 2], 1)]);
        let q = to_elementary(&p, 2, 0).unwrap();
        assert_eq!(q.to_string(), "-2*e2 + e1^2");
        assert_eq!(expand_in_roots(&q, 2, 0).unwrap(), p);
    }

    #[test]
    fn asymmetric_input_is_rejected() {
        let roots = root_vars(2, 0);
        let p = ZPoly::from_bigint_terms(&roots, &[(vec![0, 1], 1)]);
        assert!(to_elementary(&p, 2, 0).is_err());
    }

    #[test]
    fn line_twist_agrees_with_general_formula() {
        for r in 1..=3 {
            let general = tensor_formula(r, 1, 6).unwrap();
            assert_eq!(general, line_twist_formula(r, 6), "rank {r}");
        }
    }

    #[test]
    fn tensor_of_lines() {
        let f = tensor_formula(1, 1, 3).unwrap();
        assert_eq!(f.to_string(), "f1 + e1 + 1");
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(15, 4), BigInt::from(1365));
        assert_eq!(binomial(3, 5), BigInt::zero());
    }
}
