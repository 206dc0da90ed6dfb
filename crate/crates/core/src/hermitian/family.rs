//! A 7-parameter linear family of 5×5 Hermitian matrices, real in `α` and
//! complex in `z, u, w`, whose nonzero members all have rank at least 4.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::gaussian::GaussianRational;
use super::matrix::{HermitianMatrix, Inertia, Matrix};
use super::sampling::{random_nonzero_tuple, trial_rng};
use super::symbolic::{self, PolyMatrix};
use crate::error::{Error, Result};
use crate::polyring::{GradedPolynomial, VarSet};

type G = GaussianRational;
type P = GradedPolynomial<G>;

/// Names of the real parameters, in the order used by samples.
pub const PARAMETERS: [&str; 7] = ["alpha", "zr", "zi", "ur", "ui", "wr", "wi"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyMatrix {
    #[serde(serialize_with = "real_as_gaussian")]
    pub alpha: BigRational,
    pub z: G,
    pub u: G,
    pub w: G,
}

fn real_as_gaussian<S: serde::Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    G::real(x.clone()).serialize(s)
}

/// Entries as functions of `α, z, u, w` and their conjugates.
fn layout<T: Clone>(alpha: T, z: T, u: T, w: T, zb: T, ub: T, wb: T, zero: T, neg: impl Fn(&T) -> T) -> Vec<Vec<T>> {
    vec![
        vec![alpha.clone(), z.clone(), u.clone(), w.clone(), zero.clone()],
        vec![zb.clone(), alpha.clone(), wb.clone(), neg(&ub), zero.clone()],
        vec![ub, w, neg(&alpha), z.clone(), zero.clone()],
        vec![wb, neg(&u), zb.clone(), neg(&alpha), z],
        vec![zero.clone(), zero.clone(), zero.clone(), zb, zero],
    ]
}

impl FamilyMatrix {
    pub fn new(alpha: BigRational, z: G, u: G, w: G) -> Self {
        Self { alpha, z, u, w }
    }

    /// From the seven real parameters `α, Re z, Im z, Re u, Im u, Re w, Im w`.
    pub fn from_parameters(p: &[BigRational]) -> Result<Self> {
        if p.len() != 7 {
            return Err(Error::Inconsistent(format!("expected 7 parameters, got {}", p.len())));
        }
        let c = |i: usize| G::new(p[i].clone(), p[i + 1].clone());
        Ok(Self::new(p[0].clone(), c(1), c(3), c(5)))
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.is_zero() && self.z.is_zero() && self.u.is_zero() && self.w.is_zero()
    }

    pub fn matrix(&self) -> HermitianMatrix {
        let rows = layout(
            G::real(self.alpha.clone()),
            self.z.clone(),
            self.u.clone(),
            self.w.clone(),
            self.z.conj(),
            self.u.conj(),
            self.w.conj(),
            G::zero(),
            |x| -x.clone(),
        );
        HermitianMatrix::new(Matrix::new(rows).expect("square")).expect("Hermitian by construction")
    }

    /// `A_k`: row and column `k` (1-based) deleted.
    pub fn minor(&self, k: usize) -> Result<Matrix> {
        if !(1..=5).contains(&k) {
            return Err(Error::IndexOutOfRange { index: k, max: 5 });
        }
        Ok(self.matrix().matrix().minor(k - 1))
    }
}

/// The family with entries in `ℚ(i)[α, z_r, z_i, u_r, u_i, w_r, w_i]`.
pub struct SymbolicFamily {
    vars: Arc<VarSet>,
    matrix: PolyMatrix<G>,
}

impl SymbolicFamily {
    pub fn new() -> Self {
        let pairs: Vec<(&str, u32)> = PARAMETERS.iter().map(|n| (*n, 1)).collect();
        let vars = VarSet::from_pairs(&pairs).expect("distinct names");
        let x = |n: &str| P::var(&vars, n).expect("declared");
        let i = P::constant(&vars, G::i());
        let complex = |re: &str, im: &str| x(re).try_add(&x(im).try_mul(&i).unwrap()).unwrap();
        let conj = |re: &str, im: &str| x(re).try_sub(&x(im).try_mul(&i).unwrap()).unwrap();
        let matrix = layout(
            x("alpha"),
            complex("zr", "zi"),
            complex("ur", "ui"),
            complex("wr", "wi"),
            conj("zr", "zi"),
            conj("ur", "ui"),
            conj("wr", "wi"),
            P::zero(&vars),
            |p| p.neg(),
        );
        Self { vars, matrix }
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn matrix(&self) -> &PolyMatrix<G> {
        &self.matrix
    }

    pub fn var(&self, name: &str) -> P {
        P::var(&self.vars, name).expect("family parameter")
    }

    /// `|z|^2 = z_r^2 + z_i^2`, and likewise for `u`, `w`.
    pub fn norm(&self, c: char) -> P {
        let re = self.var(&format!("{c}r"));
        let im = self.var(&format!("{c}i"));
        re.pow(2).try_add(&im.pow(2)).unwrap()
    }

    pub fn minor(&self, k: usize) -> PolyMatrix<G> {
        symbolic::minor(&self.matrix, k - 1)
    }

    pub fn determinant_of_minor(&self, k: usize) -> Result<P> {
        symbolic::determinant(&self.minor(k), &self.vars)
    }

    /// `A_5^2 − (α^2 + |u|^2 + |w|^2) I` at `z = 0`, which should vanish.
    pub fn a5_square_defect(&self) -> Result<PolyMatrix<G>> {
        let mut images: Vec<P> = PARAMETERS.iter().map(|n| self.var(n)).collect();
        images[1] = P::zero(&self.vars);
        images[2] = P::zero(&self.vars);
        let a5 = symbolic::substitute(&self.minor(5), &self.vars, &images)?;
        let sq = symbolic::mul(&a5, &a5)?;
        let s = self.var("alpha").pow(2).try_add(&self.norm('u'))?.try_add(&self.norm('w'))?;
        let rhs = symbolic::scale(&symbolic::identity(&self.vars, 4), &s)?;
        Ok(sq
            .iter()
            .zip(&rhs)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.try_sub(y).unwrap()).collect())
            .collect())
    }

    /// `det A_1 − |z|^2 (|z|^2 + |w|^2)` reduced modulo `α^2 − |z|^2`.
    pub fn det_a1_defect(&self) -> Result<P> {
        let n = self.norm('z');
        let d = symbolic::reduce_square(&self.determinant_of_minor(1)?, "alpha", &n)?;
        d.try_sub(&n.try_mul(&n.try_add(&self.norm('w'))?)?)
    }
}

impl Default for SymbolicFamily {
    fn default() -> Self {
        Self::new()
    }
}

/// `det = unit · N^a · M^b` with `N = |z|^2`, `M = α^2 − |z|^2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub unit: String,
    pub n_power: u32,
    pub m_power: u32,
}

fn factor_det_a3(sym: &SymbolicFamily, d: &P) -> Result<Option<Factorization>> {
    let Some(deg) = d.max_degree() else {
        return Ok(None);
    };
    let n = sym.norm('z');
    let m = sym.var("alpha").pow(2).try_sub(&n)?;
    let (lead, lc) = d.terms().next_back().expect("nonzero");
    for a in 0..=deg / 2 {
        let b = deg / 2 - a;
        if 2 * (a + b) != deg {
            continue;
        }
        let cand = n.pow(a).try_mul(&m.pow(b))?;
        let c = cand.coefficient(lead);
        if c.is_zero() {
            continue;
        }
        let unit = lc.clone() / c;
        if cand.scale(&unit) == *d {
            return Ok(Some(Factorization {
                unit: unit.to_string(),
                n_power: a,
                m_power: b,
            }));
        }
    }
    Ok(None)
}

fn evaluate(p: &P, values: &[BigRational]) -> G {
    p.terms().fold(G::zero(), |acc, (m, c)| {
        let v = m
            .exponents()
            .iter()
            .zip(values)
            .fold(BigRational::one(), |t, (&e, x)| t * num_traits::pow(x.clone(), e as usize));
        acc + c * &G::real(v)
    })
}

/// Nonvanishing of `d` at every point of the integer grid `{-2..2}` (in the
/// parameters that occur in `d`) that lies off `{z = 0} ∪ {α^2 = |z|^2}`.
fn grid_nonvanishing_off_locus(d: &P) -> bool {
    let used: Vec<usize> = (0..7).filter(|&i| d.terms().any(|(m, _)| m.exponent(i) > 0)).collect();
    let pts: Vec<i64> = (-2..=2).collect();
    let total = pts.len().pow(used.len() as u32);
    (0..total).into_par_iter().all(|mut code| {
        let mut v = vec![BigRational::zero(); 7];
        for &i in &used {
            v[i] = BigRational::from_integer(pts[code % pts.len()].into());
            code /= pts.len();
        }
        let nz = &v[1] * &v[1] + &v[2] * &v[2];
        if nz.is_zero() || &v[0] * &v[0] == nz {
            return true;
        }
        !evaluate(d, &v).is_zero()
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyVerification {
    pub trials: usize,
    pub seed: u64,
    /// Number of samples of each rank.
    pub rank_counts: BTreeMap<usize, usize>,
    pub min_rank: usize,
    pub generic_rank_five: bool,
    /// Parameters of a sample with rank below 4, if any.
    pub counterexample: Option<Vec<String>>,
    pub rank_at_alpha_one: usize,
    pub inertia_at_alpha_one: Inertia,
    pub a5_square_identity: bool,
    pub det_a1_identity: bool,
    pub det_a3: String,
    pub det_a3_factorization: Option<Factorization>,
    pub det_a3_locus_ok: bool,
    pub passed: bool,
}

/// Randomized rank check on `trials` nonzero parameter tuples plus the three
/// symbolic identities behind "rank ≥ 4 away from the origin".
pub fn verify_family(trials: usize, seed: u64) -> Result<FamilyVerification> {
    if trials == 0 {
        return Err(Error::Inconsistent("at least one trial is required".into()));
    }
    let samples: Vec<(usize, Vec<BigRational>)> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let p = random_nonzero_tuple(&mut trial_rng(seed, t), 7);
            let m = FamilyMatrix::from_parameters(&p).expect("7 parameters").matrix();
            let rank = if m.matrix().is_invertible() { 5 } else { m.rank() };
            (rank, p)
        })
        .collect();
    let mut rank_counts = BTreeMap::new();
    for (r, _) in &samples {
        *rank_counts.entry(*r).or_insert(0) += 1;
    }
    let min_rank = samples.iter().map(|(r, _)| *r).min().unwrap_or(0);
    let counterexample = samples
        .iter()
        .find(|(r, _)| *r < 4)
        .map(|(_, p)| p.iter().map(|x| x.to_string()).collect());

    let unit = FamilyMatrix::new(BigRational::one(), G::zero(), G::zero(), G::zero()).matrix();
    let rank_at_alpha_one = unit.rank();
    let inertia_at_alpha_one = unit.inertia()?;

    let sym = SymbolicFamily::new();
    let a5_square_identity = sym.a5_square_defect()?.iter().flatten().all(|p| p.is_zero());
    let det_a1_identity = sym.det_a1_defect()?.is_zero();
    let d3 = sym.determinant_of_minor(3)?;
    let det_a3_factorization = factor_det_a3(&sym, &d3)?;
    let det_a3_locus_ok = if det_a3_factorization.is_some() {
        true
    } else {
        !d3.is_zero() && grid_nonvanishing_off_locus(&d3)
    };

    let passed = min_rank >= 4
        && a5_square_identity
        && det_a1_identity
        && det_a3_locus_ok
        && rank_at_alpha_one == 4;
    Ok(FamilyVerification {
        trials,
        seed,
        generic_rank_five: rank_counts.contains_key(&5),
        rank_counts,
        min_rank,
        counterexample,
        rank_at_alpha_one,
        inertia_at_alpha_one,
        a5_square_identity,
        det_a1_identity,
        det_a3: d3.to_string(),
        det_a3_factorization,
        det_a3_locus_ok,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn alpha_only_member() {
        let a = FamilyMatrix::new(r(1), G::zero(), G::zero(), G::zero()).matrix();
        assert_eq!(a.rank(), 4);
        assert_eq!(a.inertia().unwrap(), Inertia { positive: 2, negative: 2, zero: 1 });
        assert_eq!(a.inertia().unwrap().m(), 2);
    }

    #[test]
    fn zero_member_has_rank_zero() {
        let f = FamilyMatrix::new(r(0), G::zero(), G::zero(), G::zero());
        assert!(f.is_zero());
        assert_eq!(f.matrix().rank(), 0);
    }

    #[test]
    fn a3_determinant_closed_form() {
        // det A_3 = −|z|^2 (α^2 − |z|^2)
        let sym = SymbolicFamily::new();
        let d = sym.determinant_of_minor(3).unwrap();
        let n = sym.norm('z');
        let m = sym.var("alpha").pow(2).try_sub(&n).unwrap();
        assert_eq!(d, n.try_mul(&m).unwrap().neg());
        let f = factor_det_a3(&sym, &d).unwrap().unwrap();
        assert_eq!((f.unit.as_str(), f.n_power, f.m_power), ("-1", 1, 1));
    }

    #[test]
    fn symbolic_and_numeric_determinants_agree() {
        let sym = SymbolicFamily::new();
        let p: Vec<BigRational> = [3, -1, 2, 1, -2, 1, 1].iter().map(|&x| r(x)).collect();
        let f = FamilyMatrix::from_parameters(&p).unwrap();
        for k in 1..=5 {
            let d = sym.determinant_of_minor(k).unwrap();
            assert_eq!(evaluate(&d, &p), f.minor(k).unwrap().determinant(), "A_{k}");
        }
        assert!(f.minor(6).is_err());
    }

    #[test]
    fn symbolic_identities_hold() {
        let sym = SymbolicFamily::new();
        assert!(sym.a5_square_defect().unwrap().iter().flatten().all(|p| p.is_zero()));
        assert!(sym.det_a1_defect().unwrap().is_zero());
    }

    #[test]
    fn grid_fallback_agrees_on_a3() {
        let sym = SymbolicFamily::new();
        assert!(grid_nonvanishing_off_locus(&sym.determinant_of_minor(3).unwrap()));
        // a polynomial vanishing at a grid point off the locus
        assert!(!grid_nonvanishing_off_locus(&sym.var("zr").try_sub(&sym.var("zi")).unwrap()));
    }

    #[test]
    fn randomized_verification() {
        let v = verify_family(500, 11).unwrap();
        assert!(v.passed, "{v:?}");
        assert!(v.generic_rank_five);
        assert!(v.rank_counts.keys().all(|r| *r == 4 || *r == 5));
        assert_eq!(v.rank_counts.values().sum::<usize>(), 500);
        assert!(v.counterexample.is_none());
    }

    #[test]
    fn boundary_members_keep_rank_four() {
        // |α| = |z|, u = w = 0
        let f = FamilyMatrix::new(r(1), G::from_ints(0, 1), G::zero(), G::zero());
        assert!(f.matrix().rank() >= 4);
        // z = 0
        let f = FamilyMatrix::new(r(0), G::zero(), G::from_ints(1, 1), G::zero());
        assert!(f.matrix().rank() >= 4);
    }
}
