//! Matrices with polynomial entries, for identities that must hold for all
//! parameter values rather than on samples.

use std::sync::Arc;

use crate::error::Result;
use crate::polyring::{Coefficient, GradedPolynomial, VarSet};

pub type PolyMatrix<C> = Vec<Vec<GradedPolynomial<C>>>;

pub fn identity<C: Coefficient>(vars: &Arc<VarSet>, n: usize) -> PolyMatrix<C> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { GradedPolynomial::one(vars) } else { GradedPolynomial::zero(vars) })
                .collect()
        })
        .collect()
}

pub fn mul<C: Coefficient>(a: &PolyMatrix<C>, b: &PolyMatrix<C>) -> Result<PolyMatrix<C>> {
    let n = a.len();
    let mut out = Vec::with_capacity(n);
    for row in a {
        let mut r = Vec::with_capacity(n);
        for j in 0..b.first().map_or(0, |x| x.len()) {
            let mut acc = GradedPolynomial::zero(row[0].vars());
            for (k, x) in row.iter().enumerate() {
                acc = acc.try_add(&x.try_mul(&b[k][j])?)?;
            }
            r.push(acc);
        }
        out.push(r);
    }
    Ok(out)
}

pub fn scale<C: Coefficient>(a: &PolyMatrix<C>, p: &GradedPolynomial<C>) -> Result<PolyMatrix<C>> {
    a.iter()
        .map(|row| row.iter().map(|x| x.try_mul(p)).collect())
        .collect()
}

/// Delete row and column `k`.
pub fn minor<C: Coefficient>(a: &PolyMatrix<C>, k: usize) -> PolyMatrix<C> {
    a.iter()
        .enumerate()
        .filter(|(i, _)| *i != k)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect()
}

/// Determinant by cofactor expansion along the first row.
pub fn determinant<C: Coefficient>(a: &PolyMatrix<C>, vars: &Arc<VarSet>) -> Result<GradedPolynomial<C>> {
    let n = a.len();
    if n == 0 {
        return Ok(GradedPolynomial::one(vars));
    }
    if n == 1 {
        return Ok(a[0][0].clone());
    }
    let mut acc = GradedPolynomial::zero(vars);
    for j in 0..n {
        if a[0][j].is_zero() {
            continue;
        }
        let sub: PolyMatrix<C> = a[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = a[0][j].try_mul(&determinant(&sub, vars)?)?;
        acc = if j % 2 == 0 { acc.try_add(&term)? } else { acc.try_sub(&term)? };
    }
    Ok(acc)
}

/// Substitute values (or polynomials) for every variable in every entry.
pub fn substitute<C: Coefficient>(
    a: &PolyMatrix<C>,
    target: &Arc<VarSet>,
    images: &[GradedPolynomial<C>],
) -> Result<PolyMatrix<C>> {
    a.iter()
        .map(|row| row.iter().map(|x| x.substitute(target, images, None)).collect())
        .collect()
}

/// Reduce modulo `x^2 − r` where `r` does not involve `x`, by rewriting
/// `x^e = x^{e mod 2} r^{⌊e/2⌋}`.
pub fn reduce_square<C: Coefficient>(
    p: &GradedPolynomial<C>,
    x: &str,
    r: &GradedPolynomial<C>,
) -> Result<GradedPolynomial<C>> {
    let vars = p.vars().clone();
    let idx = vars
        .index_of(x)
        .ok_or_else(|| crate::error::Error::UnknownVariable(x.to_string()))?;
    let degrees = vars.degrees();
    let mut out = GradedPolynomial::zero(&vars);
    for (m, c) in p.terms() {
        let e = m.exponent(idx);
        let mut exps = m.exponents().to_vec();
        exps[idx] = e % 2;
        let rest = GradedPolynomial::monomial(&vars, crate::polyring::Monomial::from_exponents(exps, &degrees), c.clone());
        out = out.try_add(&rest.try_mul(&r.pow(e / 2))?)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn determinant_of_generic_two_by_two() {
        let v = VarSet::from_pairs(&[("a", 1), ("b", 1), ("c", 1), ("d", 1)]).unwrap();
        let x = |n: &str| GradedPolynomial::<BigInt>::var(&v, n).unwrap();
        let m = vec![vec![x("a"), x("b")], vec![x("c"), x("d")]];
        let expected = x("a").try_mul(&x("d")).unwrap().try_sub(&x("b").try_mul(&x("c")).unwrap()).unwrap();
        assert_eq!(determinant(&m, &v).unwrap(), expected);
        let i = identity::<BigInt>(&v, 2);
        assert_eq!(mul(&m, &i).unwrap(), m);
        assert_eq!(minor(&m, 0), vec![vec![x("d")]]);
    }

    #[test]
    fn square_reduction() {
        let v = VarSet::from_pairs(&[("x", 1), ("y", 1)]).unwrap();
        let p = GradedPolynomial::from_bigint_terms(&v, &[(vec![3, 0], 1), (vec![2, 1], 1)]);
        let r = GradedPolynomial::from_bigint_terms(&v, &[(vec![0, 2], 1)]);
        let expected = GradedPolynomial::from_bigint_terms(&v, &[(vec![1, 2], 1), (vec![0, 3], 1)]);
        assert_eq!(reduce_square(&p, "x", &r).unwrap(), expected);
    }
}
