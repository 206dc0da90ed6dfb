use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::gaussian::GaussianRational;
use crate::error::{Error, Result};

type G = GaussianRational;

/// Square matrix over the Gaussian rationals, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    entries: Vec<G>,
}

impl Matrix {
    pub fn new(rows: Vec<Vec<G>>) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::Inconsistent(format!("row of length {} in a {n}x{n} matrix", r.len())));
        }
        Ok(Self {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> G) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Self { n, entries }
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_fn(n, |_, _| G::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, G::one())
    }

    pub fn scalar(n: usize, c: G) -> Self {
        Self::from_fn(n, |i, j| if i == j { c.clone() } else { G::zero() })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &G {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<G>> {
        self.entries.chunks(self.n.max(1)).map(|r| r.to_vec()).take(self.n).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Self::from_fn(self.n, |i, j| self.get(i, j).clone() + other.get(i, j).clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Self::from_fn(self.n, |i, j| self.get(i, j).clone() - other.get(i, j).clone())
    }

    pub fn scale(&self, c: &G) -> Self {
        Self::from_fn(self.n, |i, j| self.get(i, j) * c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        Self::from_fn(n, |i, j| {
            (0..n).fold(G::zero(), |acc, k| acc + self.get(i, k) * other.get(k, j))
        })
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> G {
        (0..self.n).fold(G::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    /// Delete row and column `k`.
    pub fn minor(&self, k: usize) -> Self {
        let keep: Vec<usize> = (0..self.n).filter(|&i| i != k).collect();
        Self::from_fn(keep.len(), |i, j| self.get(keep[i], keep[j]).clone())
    }

    /// First position `(row, col)` where Hermitian symmetry fails.
    pub fn hermitian_violation(&self) -> Option<(usize, usize)> {
        for i in 0..self.n {
            for j in i..self.n {
                if *self.get(i, j) != self.get(j, i).conj() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Rows scaled by the least common multiple of their denominators, so
    /// every entry is a Gaussian integer.
    fn integral_rows(&self) -> Vec<Vec<G>> {
        self.rows()
            .into_iter()
            .map(|row| {
                let l = row.iter().fold(num_bigint::BigInt::one(), |l, x| {
                    l.lcm(x.re().denom()).lcm(x.im().denom())
                });
                let l = G::real(BigRational::from_integer(l));
                row.iter().map(|x| x * &l).collect()
            })
            .collect()
    }

    /// `det ≠ 0`. A nonzero determinant modulo a prime `p ≡ 1 (mod 4)`,
    /// computed through the ring map `ℤ[i] → 𝔽_p`, already proves it; the
    /// exact rank is used only when every such residue vanishes.
    pub fn is_invertible(&self) -> bool {
        let rows = self.integral_rows();
        for &p in &MODULAR_PRIMES {
            if let Some(d) = det_mod_p(&rows, p) {
                if d != 0 {
                    return true;
                }
            }
        }
        self.rank() == self.n
    }

    /// Exact rank by fraction-free (Bareiss) elimination with full pivoting.
    pub fn rank(&self) -> usize {
        let mut a = self.integral_rows();
        let n = self.n;
        let mut prev = G::one();
        let mut rank = 0;
        for k in 0..n {
            let Some((pi, pj)) = (k..n)
                .flat_map(|i| (k..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_zero())
            else {
                break;
            };
            a.swap(k, pi);
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                    a[i][j] = v / prev.clone();
                }
                a[i][k] = G::zero();
            }
            prev = a[k][k].clone();
            rank += 1;
        }
        rank
    }

    /// Determinant by Bareiss elimination.
    pub fn determinant(&self) -> G {
        let n = self.n;
        if n == 0 {
            return G::one();
        }
        let mut a = self.rows();
        let mut prev = G::one();
        let mut sign = G::one();
        for k in 0..n - 1 {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return G::zero();
            };
            if p != k {
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                    a[i][j] = v / prev.clone();
                }
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    /// Coefficients `p_0, …, p_n` of `det(x·I − A) = Σ p_k x^k`
    /// (Faddeev–LeVerrier).
    pub fn characteristic_polynomial(&self) -> Vec<G> {
        let n = self.n;
        let mut coeffs = vec![G::zero(); n + 1];
        coeffs[n] = G::one();
        let mut m = Self::zeros(n);
        for k in 1..=n {
            let shifted = self.mul(&m).add(&Self::scalar(n, coeffs[n + 1 - k].clone()));
            let t = self.mul(&shifted).trace();
            coeffs[n - k] = -t / G::from_ints(k as i64, 0);
            m = shifted;
        }
        coeffs
    }
}

/// Primes `≡ 1 (mod 4)`, so `-1` has a square root modulo each.
const MODULAR_PRIMES: [u64; 2] = [1_000_000_009, 998_244_353];

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn sqrt_minus_one(p: u64) -> u64 {
    (2..)
        .map(|g| pow_mod(g, (p - 1) / 4, p))
        .find(|&x| mul_mod(x, x, p) == p - 1)
        .expect("p = 1 mod 4")
}

fn int_mod_p(x: &num_bigint::BigInt, p: u64) -> u64 {
    use num_traits::ToPrimitive;
    x.mod_floor(&p.into()).to_u64().expect("reduced below p")
}

/// Image of a Gaussian integer in `𝔽_p` under `i ↦ j`.
fn gaussian_mod_p(x: &G, p: u64, j: u64) -> u64 {
    let re = int_mod_p(x.re().numer(), p);
    let im = int_mod_p(x.im().numer(), p);
    (re + mul_mod(im, j, p)) % p
}

/// Determinant of a Gaussian-integer matrix modulo `p`.
fn det_mod_p(rows: &[Vec<G>], p: u64) -> Option<u64> {
    if rows.iter().flatten().any(|x| !x.re().is_integer() || !x.im().is_integer()) {
        return None;
    }
    let j = sqrt_minus_one(p);
    let mut a: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|x| gaussian_mod_p(x, p, j)).collect()).collect();
    let n = a.len();
    let mut det = 1u64;
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| a[i][k] != 0) else {
            return Some(0);
        };
        if piv != k {
            a.swap(k, piv);
            det = (p - det) % p;
        }
        det = mul_mod(det, a[k][k], p);
        let inv = pow_mod(a[k][k], p - 2, p);
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot = &top[k];
        for row in rest {
            let f = mul_mod(row[k], inv, p);
            if f == 0 {
                continue;
            }
            for (x, &y) in row[k..].iter_mut().zip(&pivot[k..]) {
                *x = (*x + p - mul_mod(f, y, p)) % p;
            }
        }
    }
    Some(det)
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

/// Signature `(positive, negative)` and nullity of a Hermitian matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn size(&self) -> usize {
        self.positive + self.negative + self.zero
    }

    pub fn rank(&self) -> usize {
        self.positive + self.negative
    }

    /// `min(r, s)`.
    pub fn m(&self) -> usize {
        self.positive.min(self.negative)
    }
}

/// Matrix equal to its conjugate transpose (so with a real diagonal).
#[derive(Clone, PartialEq, Eq)]
pub struct HermitianMatrix(Matrix);

impl HermitianMatrix {
    pub fn new(m: Matrix) -> Result<Self> {
        if let Some((row, col)) = m.hermitian_violation() {
            return Err(Error::NotHermitian { row, col });
        }
        Ok(Self(m))
    }

    pub fn from_rows(rows: Vec<Vec<G>>) -> Result<Self> {
        Self::new(Matrix::new(rows)?)
    }

    pub fn diagonal(values: &[i64]) -> Self {
        let n = values.len();
        Self(Matrix::from_fn(n, |i, j| {
            if i == j {
                G::from_ints(values[i], 0)
            } else {
                G::zero()
            }
        }))
    }

    pub fn identity(n: usize) -> Self {
        Self(Matrix::identity(n))
    }

    pub fn size(&self) -> usize {
        self.0.size()
    }

    pub fn get(&self, i: usize, j: usize) -> &G {
        self.0.get(i, j)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    /// Real linear combination `Σ a_k M_k`.
    pub fn combination(items: &[HermitianMatrix], coeffs: &[BigRational]) -> Result<Self> {
        let n = items.first().map(|m| m.size()).unwrap_or(0);
        if items.len() != coeffs.len() || items.iter().any(|m| m.size() != n) {
            return Err(Error::Inconsistent("mismatched linear combination".into()));
        }
        let mut acc = Matrix::zeros(n);
        for (m, a) in items.iter().zip(coeffs) {
            if a.is_zero() {
                continue;
            }
            let a = G::real(a.clone());
            for (x, y) in acc.entries.iter_mut().zip(&m.0.entries) {
                if !y.is_zero() {
                    *x = x.clone() + y * &a;
                }
            }
        }
        Ok(Self(acc))
    }

    /// `P* A P`.
    pub fn congruence(&self, p: &Matrix) -> Result<Self> {
        if p.size() != self.size() {
            return Err(Error::Inconsistent("congruence by a matrix of the wrong size".into()));
        }
        Self::new(p.conj_transpose().mul(&self.0).mul(p))
    }

    pub fn rank(&self) -> usize {
        self.0.rank()
    }

    /// Characteristic polynomial with rational coefficients.
    pub fn characteristic_polynomial(&self) -> Result<Vec<BigRational>> {
        self.0
            .characteristic_polynomial()
            .into_iter()
            .enumerate()
            .map(|(k, c)| {
                if c.is_real() {
                    Ok(c.re().clone())
                } else {
                    Err(Error::Invariant(format!("non-real coefficient {c} of x^{k}")))
                }
            })
            .collect()
    }

    /// Inertia from the characteristic polynomial: the multiplicity of the
    /// root 0 gives the nullity, and since all roots are real the sign
    /// variations of the remaining coefficients count the positive roots.
    pub fn inertia(&self) -> Result<Inertia> {
        let p = self.characteristic_polynomial()?;
        let n = self.size();
        let zero = p.iter().take_while(|c| c.is_zero()).count();
        let mut variations = 0;
        let mut last: Option<bool> = None;
        for c in &p[zero..] {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if last.is_some_and(|l| l != neg) {
                variations += 1;
            }
            last = Some(neg);
        }
        Ok(Inertia {
            positive: variations,
            negative: n - zero - variations,
            zero,
        })
    }
}

impl fmt::Debug for HermitianMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for HermitianMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for HermitianMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let rows = Vec::<Vec<G>>::deserialize(d)?;
        Self::from_rows(rows).map_err(D::Error::custom)
    }
}

pub fn rank_exact(a: &HermitianMatrix) -> usize {
    a.rank()
}

pub fn inertia(a: &HermitianMatrix) -> Result<Inertia> {
    a.inertia()
}

pub fn m_value(a: &HermitianMatrix) -> Result<usize> {
    Ok(a.inertia()?.m())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(a: i64, b: i64) -> G {
        G::from_ints(a, b)
    }

    #[test]
    fn rank_and_inertia_of_diagonals() {
        assert_eq!(HermitianMatrix::diagonal(&[0, 0, 0]).rank(), 0);
        let d = HermitianMatrix::diagonal(&[1, 1, -1]);
        assert_eq!(d.inertia().unwrap(), Inertia { positive: 2, negative: 1, zero: 0 });
        assert_eq!(m_value(&HermitianMatrix::diagonal(&[1, -1, 0])).unwrap(), 1);
        assert_eq!(m_value(&HermitianMatrix::diagonal(&[3, 1, 2])).unwrap(), 0);
    }

    #[test]
    fn non_hermitian_rejected() {
        let rows = vec![vec![g(1, 0), g(0, 1)], vec![g(0, 1), g(1, 0)]];
        assert!(matches!(HermitianMatrix::from_rows(rows), Err(Error::NotHermitian { row: 0, col: 1 })));
        let rows = vec![vec![g(1, 1)]];
        assert!(matches!(HermitianMatrix::from_rows(rows), Err(Error::NotHermitian { row: 0, col: 0 })));
        assert!(Matrix::new(vec![vec![g(1, 0)], vec![]]).is_err());
    }

    #[test]
    fn determinant_and_characteristic_polynomial() {
        let m = Matrix::new(vec![vec![g(2, 0), g(1, 1)], vec![g(1, -1), g(3, 0)]]).unwrap();
        assert_eq!(m.determinant(), g(4, 0));
        assert_eq!(m.characteristic_polynomial(), vec![g(4, 0), g(-5, 0), g(1, 0)]);
        let h = HermitianMatrix::new(m).unwrap();
        assert_eq!(h.inertia().unwrap(), Inertia { positive: 2, negative: 0, zero: 0 });
    }

    #[test]
    fn rank_with_rational_entries() {
        let half = G::from_fractions(1, 2, 0, 1);
        let m = Matrix::new(vec![
            vec![half.clone(), g(1, 0), g(0, 0)],
            vec![g(1, 0), g(2, 0), g(0, 0)],
            vec![g(0, 0), g(0, 0), g(0, 0)],
        ])
        .unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(m.determinant(), g(0, 0));
    }

    #[test]
    fn singular_modulo_the_primes_falls_back_to_rank() {
        // det = 1_000_000_009 * 998_244_353, zero modulo both primes.
        let m = Matrix::new(vec![vec![g(1_000_000_009, 0), g(0, 0)], vec![g(0, 0), g(998_244_353, 0)]]).unwrap();
        assert!(m.is_invertible());
        let s = Matrix::new(vec![vec![g(1, 1), g(2, 2)], vec![g(3, -1), g(6, -2)]]).unwrap();
        assert!(!s.is_invertible());
    }

    #[test]
    fn json_shape() {
        let d = HermitianMatrix::diagonal(&[1, -1]);
        let s = serde_json::to_string(&d).unwrap();
        assert!(s.starts_with(r#"[[{"re_num":1,"re_den":1,"im_num":0,"im_den":1}"#));
        let back: HermitianMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
    }

    fn small() -> impl Strategy<Value = (i64, i64)> {
        (-3i64..=3, -3i64..=3)
    }

    fn hermitian(n: usize) -> impl Strategy<Value = HermitianMatrix> {
        prop::collection::vec(small(), n * n).prop_map(move |v| {
            let m = Matrix::from_fn(n, |i, j| {
                let (a, b) = v[i * n + j];
                let (c, d) = v[j * n + i];
                match i.cmp(&j) {
                    std::cmp::Ordering::Equal => g(a, 0),
                    std::cmp::Ordering::Less => g(a, b),
                    std::cmp::Ordering::Greater => g(c, -d),
                }
            });
            HermitianMatrix::new(m).unwrap()
        })
    }

    fn square(n: usize) -> impl Strategy<Value = Matrix> {
        prop::collection::vec(small(), n * n)
            .prop_map(move |v| Matrix::from_fn(n, |i, j| g(v[i * n + j].0, v[i * n + j].1)))
    }

    proptest! {
        #[test]
        fn rank_equals_signature_sum(a in hermitian(4)) {
            let i = a.inertia().unwrap();
            prop_assert_eq!(i.size(), 4);
            prop_assert_eq!(i.rank(), a.rank());
        }

        #[test]
        fn congruence_preserves_inertia(a in hermitian(4), p in square(4)) {
            prop_assume!(!p.determinant().is_zero());
            let b = a.congruence(&p).unwrap();
            prop_assert_eq!(b.rank(), a.rank());
            prop_assert_eq!(b.inertia().unwrap(), a.inertia().unwrap());
        }

        #[test]
        fn rank_matches_nonzero_determinant(p in square(4)) {
            prop_assert_eq!(p.rank() == 4, !p.determinant().is_zero());
        }

        #[test]
        fn modular_certificate_agrees_with_rank(p in square(4)) {
            prop_assert_eq!(p.is_invertible(), p.rank() == 4);
        }
    }
}
