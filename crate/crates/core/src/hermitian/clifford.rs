use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::gaussian::GaussianRational;
use super::matrix::{HermitianMatrix, Matrix};
use super::sampling::{random_nonzero_tuple, trial_rng};
use super::symbolic;
use crate::error::{Error, Result};
use crate::polyring::{GradedPolynomial, VarSet};

type G = GaussianRational;

/// `q = 2^c (2b + 1)`, returned as `(b, c)`.
pub fn two_adic(q: u64) -> Result<(u64, u32)> {
    if q == 0 {
        return Err(Error::Inconsistent("q must be positive".into()));
    }
    let c = q.trailing_zeros();
    Ok(((q >> c) / 2, c))
}

/// `2c + 1` pairwise anticommuting Hermitian involutions of size `q`.
#[derive(Debug, Clone, Serialize)]
pub struct CliffordFamily {
    q: usize,
    b: u64,
    c: u32,
    matrices: Vec<HermitianMatrix>,
}

fn pauli() -> [Matrix; 3] {
    let g = G::from_ints;
    [
        Matrix::new(vec![vec![g(0, 0), g(1, 0)], vec![g(1, 0), g(0, 0)]]).unwrap(),
        Matrix::new(vec![vec![g(0, 0), g(0, -1)], vec![g(0, 1), g(0, 0)]]).unwrap(),
        Matrix::new(vec![vec![g(1, 0), g(0, 0)], vec![g(0, 0), g(-1, 0)]]).unwrap(),
    ]
}

fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (n, m) = (a.size(), b.size());
    Matrix::from_fn(n * m, |i, j| a.get(i / m, j / m) * b.get(i % m, j % m))
}

fn block_diagonal(a: &Matrix, copies: usize) -> Matrix {
    kron(&Matrix::identity(copies), a)
}

pub fn clifford_family(q: usize) -> Result<CliffordFamily> {
    let (b, c) = two_adic(q as u64)?;
    let [s1, s2, s3] = pauli();
    let mut level = vec![Matrix::identity(1)];
    for _ in 0..c {
        let id = Matrix::identity(level[0].size());
        let mut next: Vec<Matrix> = level.iter().map(|a| kron(&s1, a)).collect();
        next.push(kron(&s2, &id));
        next.push(kron(&s3, &id));
        level = next;
    }
    let matrices = level
        .iter()
        .map(|a| HermitianMatrix::new(block_diagonal(a, 2 * b as usize + 1)))
        .collect::<Result<Vec<_>>>()?;
    Ok(CliffordFamily { q, b, c, matrices })
}

impl CliffordFamily {
    /// An arbitrary list of `q × q` Hermitian matrices, e.g. to test the
    /// verifier on a family that is not Clifford.
    pub fn from_matrices(q: usize, matrices: Vec<HermitianMatrix>) -> Result<Self> {
        if matrices.iter().any(|m| m.size() != q) {
            return Err(Error::Inconsistent(format!("all matrices must be {q}x{q}")));
        }
        let (b, c) = two_adic(q as u64)?;
        Ok(Self { q, b, c, matrices })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn c(&self) -> u32 {
        self.c
    }

    pub fn matrices(&self) -> &[HermitianMatrix] {
        &self.matrices
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn push(&mut self, m: HermitianMatrix) -> Result<()> {
        if m.size() != self.q {
            return Err(Error::Inconsistent(format!("matrix must be {0}x{0}", self.q)));
        }
        self.matrices.push(m);
        Ok(())
    }

    /// `Σ a_i A_i`.
    pub fn combination(&self, coeffs: &[BigRational]) -> Result<HermitianMatrix> {
        HermitianMatrix::combination(&self.matrices, coeffs)
    }

    /// Whether `(Σ a_i A_i)^2 = (Σ a_i^2) I` for these coefficients.
    pub fn square_identity_at(&self, coeffs: &[BigRational]) -> Result<bool> {
        let m = self.combination(coeffs)?.into_matrix();
        let norm: BigRational = coeffs.iter().map(|a| a * a).sum();
        Ok(m.mul(&m) == Matrix::scalar(self.q, G::real(norm)))
    }

    /// `(Σ a_i A_i)^2 = (Σ a_i^2) I` with the `a_i` as indeterminates.
    pub fn square_identity_symbolic(&self) -> Result<bool> {
        let k = self.matrices.len();
        let names: Vec<String> = (1..=k).map(|i| format!("a{i}")).collect();
        let pairs: Vec<(&str, u32)> = names.iter().map(|n| (n.as_str(), 1)).collect();
        let vars = VarSet::from_pairs(&pairs)?;
        let avars = names
            .iter()
            .map(|n| GradedPolynomial::<G>::var(&vars, n))
            .collect::<Result<Vec<_>>>()?;
        let q = self.q;
        let mut sum: symbolic::PolyMatrix<G> = vec![vec![GradedPolynomial::zero(&vars); q]; q];
        for (a, m) in avars.iter().zip(&self.matrices) {
            for (i, row) in sum.iter_mut().enumerate() {
                for (j, x) in row.iter_mut().enumerate() {
                    if !m.get(i, j).is_zero() {
                        *x = x.try_add(&a.scale(m.get(i, j)))?;
                    }
                }
            }
        }
        let norm = avars
            .iter()
            .try_fold(GradedPolynomial::zero(&vars), |acc, a| acc.try_add(&a.try_mul(a)?))?;
        let lhs = symbolic::mul(&sum, &sum)?;
        let rhs = symbolic::scale(&symbolic::identity(&vars, q), &norm)?;
        Ok(lhs == rhs)
    }
}

/// Coefficients for which the family fails, and how.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub coefficients: Vec<String>,
    pub singular: bool,
    pub square_identity: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpanVerification {
    pub q: usize,
    pub family_size: usize,
    pub trials: usize,
    pub seed: u64,
    pub symbolic_identity: bool,
    pub sampled_failures: usize,
    pub witness: Option<Witness>,
    pub passed: bool,
}

/// Failure at `a`. Sampled trials (`full == false`) test invertibility only;
/// the square identity is then covered by the symbolic check.
fn witness_at(f: &CliffordFamily, a: &[BigRational], full: bool) -> Result<Option<Witness>> {
    let singular = !f.combination(a)?.matrix().is_invertible();
    if !singular && !full {
        return Ok(None);
    }
    let identity = f.square_identity_at(a)?;
    if !singular && identity {
        return Ok(None);
    }
    Ok(Some(Witness {
        coefficients: a.iter().map(|x| x.to_string()).collect(),
        singular,
        square_identity: identity,
    }))
}

/// Smallest failing tuple with entries in `{0, 1, -1}`, preferring ones
/// where the combination is singular.
fn search_witness(f: &CliffordFamily) -> Result<Option<Witness>> {
    let k = f.len();
    let digits = [BigRational::zero(), BigRational::one(), -BigRational::one()];
    let total = 3usize.checked_pow(k as u32).unwrap_or(usize::MAX).min(1 << 16);
    let mut fallback = None;
    for code in 1..total {
        let mut c = code;
        let a: Vec<BigRational> = (0..k)
            .map(|_| {
                let d = digits[c % 3].clone();
                c /= 3;
                d
            })
            .collect();
        if let Some(w) = witness_at(f, &a, true)? {
            if w.singular {
                return Ok(Some(w));
            }
            fallback.get_or_insert(w);
        }
    }
    Ok(fallback)
}

/// Every nonzero real combination is invertible: checks the square identity
/// symbolically and on `trials` random rational combinations.
pub fn verify_invertible_span(f: &CliffordFamily, trials: usize, seed: u64) -> Result<SpanVerification> {
    if trials == 0 {
        return Err(Error::Inconsistent("at least one trial is required".into()));
    }
    let symbolic_identity = f.square_identity_symbolic()?;
    let outcomes = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let a = random_nonzero_tuple(&mut trial_rng(seed, t), f.len());
            witness_at(f, &a, false)
        })
        .collect::<Result<Vec<_>>>()?;
    let sampled_failures = outcomes.iter().filter(|w| w.is_some()).count();
    let mut witness = outcomes.into_iter().flatten().next();
    if !symbolic_identity {
        if let Some(w) = search_witness(f)? {
            witness = Some(w);
        }
    }
    Ok(SpanVerification {
        q: f.q,
        family_size: f.len(),
        trials,
        seed,
        symbolic_identity,
        sampled_failures,
        passed: symbolic_identity && sampled_failures == 0,
        witness,
    })
}
