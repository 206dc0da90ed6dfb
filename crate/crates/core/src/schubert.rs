//! Integral cohomology of Grassmannians in the Schubert basis.
//!
//! Classes `σ_λ` are indexed by partitions fitting in the `k × (n−k)` box.
//! Products go through Giambelli (Jacobi–Trudi in the special classes
//! `σ_m`) followed by iterated Pieri. The complement of `λ` is
//! `λ^∨_i = (n−k) − λ_{k+1−i}`, so that `∫ σ_λ σ_{λ^∨} = 1`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::polyring::{mod2, Gf2};

/// Weakly decreasing parts with trailing zeros removed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Inconsistent(format!("{parts:?} is not weakly decreasing")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// `(m)`, a single row.
    pub fn row(m: u32) -> Self {
        if m == 0 {
            Self::empty()
        } else {
            Partition(vec![m])
        }
    }

    /// `(1^m)`, a single column.
    pub fn column(m: u32) -> Self {
        Partition(vec![1; m as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn fits(&self, rows: usize, cols: u32) -> bool {
        self.0.len() <= rows && self.part(0) <= cols
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0);
        Partition((1..=cols).map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32).collect())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// The Grassmannian `Gr(k, ℂⁿ)` as a context for Schubert classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SchubertRing {
    k: usize,
    n: usize,
}

#[derive(Clone, PartialEq, Eq)]
pub struct SchubertElement {
    ring: SchubertRing,
    terms: BTreeMap<Partition, BigInt>,
}

impl SchubertRing {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if k > n {
            return Err(Error::Inconsistent(format!("Gr({k},{n}) needs k <= n")));
        }
        Ok(Self { k, n })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Width of the box, `n − k`.
    pub fn cols(&self) -> u32 {
        (self.n - self.k) as u32
    }

    pub fn dimension(&self) -> u32 {
        self.k as u32 * self.cols()
    }

    pub fn full_box(&self) -> Partition {
        Partition(vec![self.cols(); self.k]).normalized()
    }

    /// All partitions in the box, ordered by size then lexicographically.
    pub fn partitions(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        box_partitions(self.k, self.cols(), &mut cur, &mut out);
        out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| a.cmp(b)));
        out
    }

    pub fn partitions_of_size(&self, d: u32) -> Vec<Partition> {
        self.partitions().into_iter().filter(|p| p.size() == d).collect()
    }

    /// Ranks of `H^{2d}` for `d = 0..=k(n−k)`.
    pub fn betti_numbers(&self) -> Vec<usize> {
        let mut b = vec![0; self.dimension() as usize + 1];
        for p in self.partitions() {
            b[p.size() as usize] += 1;
        }
        b
    }

    /// Box complement `λ^∨`.
    pub fn dual(&self, lambda: &Partition) -> Result<Partition> {
        self.check(lambda)?;
        let c = self.cols();
        Partition::new((0..self.k).map(|i| c - lambda.part(self.k - 1 - i)).collect())
    }

    fn check(&self, lambda: &Partition) -> Result<()> {
        if lambda.fits(self.k, self.cols()) {
            Ok(())
        } else {
            Err(Error::Inconsistent(format!(
                "{lambda} does not fit in the {}x{} box",
                self.k,
                self.cols()
            )))
        }
    }

    pub fn zero(&self) -> SchubertElement {
        SchubertElement {
            ring: *self,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> SchubertElement {
        self.class(Partition::empty()).expect("empty partition fits")
    }

    pub fn integer(&self, n: BigInt) -> SchubertElement {
        let mut e = self.zero();
        e.add_term(Partition::empty(), n);
        e
    }

    /// `σ_λ`.
    pub fn class(&self, lambda: Partition) -> Result<SchubertElement> {
        self.check(&lambda)?;
        let mut e = self.zero();
        e.add_term(lambda, BigInt::one());
        Ok(e)
    }

    /// `σ_λ`, or zero when `λ` falls outside the box.
    pub fn class_or_zero(&self, lambda: Partition) -> SchubertElement {
        self.class(lambda).unwrap_or_else(|_| self.zero())
    }

    /// Special class `σ_m`.
    pub fn special(&self, m: u32) -> SchubertElement {
        self.class_or_zero(Partition::row(m))
    }

    /// Multiply by `σ_p`: add a horizontal `p`-strip to every partition in
    /// every possible way that stays inside the box.
    pub fn pieri_multiply(&self, a: &SchubertElement, p: u32) -> SchubertElement {
        let mut out = self.zero();
        for (lambda, c) in &a.terms {
            let mut cur = Vec::with_capacity(self.k);
            self.horizontal_strips(lambda, 0, p, &mut cur, &mut |mu| {
                out.add_term(mu, c.clone());
            });
        }
        out
    }

    fn horizontal_strips(
        &self,
        lambda: &Partition,
        row: usize,
        remaining: u32,
        cur: &mut Vec<u32>,
        emit: &mut impl FnMut(Partition),
    ) {
        if row == self.k {
            if remaining == 0 {
                emit(Partition(cur.clone()).normalized());
            }
            return;
        }
        let lo = lambda.part(row);
        let hi = if row == 0 { self.cols() } else { lambda.part(row - 1) };
        for m in lo..=hi.max(lo) {
            let add = m - lo;
            if add > remaining || m > hi {
                break;
            }
            cur.push(m);
            self.horizontal_strips(lambda, row + 1, remaining - add, cur, emit);
            cur.pop();
        }
    }

    /// Cup product.
    pub fn multiply(&self, a: &SchubertElement, b: &SchubertElement) -> Result<SchubertElement> {
        if a.ring != *self || b.ring != *self {
            return Err(Error::RingMismatch(format!(
                "Schubert classes of Gr({},{}) and Gr({},{})",
                a.ring.k, a.ring.n, b.ring.k, b.ring.n
            )));
        }
        let mut out = self.zero();
        for (mu, c) in &b.terms {
            let prod = self.times_class(a, mu);
            out = out.add(&prod.scale(c));
        }
        Ok(out)
    }

    /// `a · σ_μ` with `σ_μ = det(σ_{μ_i + j − i})` expanded over permutations.
    fn times_class(&self, a: &SchubertElement, mu: &Partition) -> SchubertElement {
        let l = mu.len();
        if l == 0 {
            return a.clone();
        }
        let mut out = self.zero();
        for (perm, sign) in permutations(l) {
            let mut rows = Vec::with_capacity(l);
            let mut vanishes = false;
            for (i, &j) in perm.iter().enumerate() {
                let idx = mu.part(i) as i64 + j as i64 - i as i64;
                if idx < 0 || idx > self.cols() as i64 {
                    vanishes = true;
                    break;
                }
                rows.push(idx as u32);
            }
            if vanishes {
                continue;
            }
            let mut term = a.clone();
            for r in rows {
                if r > 0 {
                    term = self.pieri_multiply(&term, r);
                }
                if term.is_zero() {
                    break;
                }
            }
            out = if sign { out.add(&term) } else { out.sub(&term) };
        }
        out
    }

    /// Degree of the top-dimensional part: the coefficient of the full box.
    pub fn integrate(&self, a: &SchubertElement) -> BigInt {
        a.coefficient(&self.full_box())
    }

    /// `c_i(S) = (−1)^i σ_{1^i}` for the tautological subbundle.
    pub fn chern_of_tautological(&self, i: usize) -> Result<SchubertElement> {
        if i > self.k {
            return Err(Error::IndexOutOfRange { index: i, max: self.k });
        }
        let cls = self.class_or_zero(Partition::column(i as u32));
        Ok(if i % 2 == 1 { cls.neg() } else { cls })
    }

    /// `c_i(Q) = σ_i` for the universal quotient bundle.
    pub fn chern_of_quotient(&self, i: usize) -> Result<SchubertElement> {
        let max = self.n - self.k;
        if i > max {
            return Err(Error::IndexOutOfRange { index: i, max });
        }
        Ok(self.special(i as u32))
    }

    /// Total Chern class parts `[c_0(S), …, c_k(S)]`.
    pub fn tautological_total(&self) -> Vec<SchubertElement> {
        (0..=self.k)
            .map(|i| self.chern_of_tautological(i).expect("in range"))
            .collect()
    }

    pub fn quotient_total(&self) -> Vec<SchubertElement> {
        (0..=self.n - self.k)
            .map(|i| self.chern_of_quotient(i).expect("in range"))
            .collect()
    }
}

fn box_partitions(rows: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    out.push(Partition(cur.clone()));
    if cur.len() == rows {
        return;
    }
    let bound = cur.last().copied().unwrap_or(max);
    for p in 1..=bound {
        cur.push(p);
        box_partitions(rows, max, cur, out);
        cur.pop();
    }
}

/// All permutations of `0..l` with their signs (`true` for even).
fn permutations(l: usize) -> Vec<(Vec<usize>, bool)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut perms = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; l], &mut perms);
    perms
        .into_iter()
        .map(|p| {
            let inversions = (0..l)
                .flat_map(|i| (i + 1..l).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            (p, inversions % 2 == 0)
        })
        .collect()
}

impl Partition {
    fn normalized(mut self) -> Self {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }
}

impl SchubertElement {
    pub fn ring(&self) -> SchubertRing {
        self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, lambda: &Partition) -> BigInt {
        self.terms.get(lambda).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, lambda: Partition, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(lambda).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_term(l.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            ring: self.ring,
            terms: self.terms.iter().map(|(l, c)| (l.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = self.ring.zero();
        for (l, c) in &self.terms {
            out.add_term(l.clone(), c * k);
        }
        out
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .filter(|(l, _)| l.size() == d)
                .map(|(l, c)| (l.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficients reduced modulo two; zero terms dropped.
    pub fn mod2(&self) -> BTreeMap<Partition, Gf2> {
        self.terms
            .iter()
            .filter(|(_, c)| mod2(c) == Gf2::ONE)
            .map(|(l, _)| (l.clone(), Gf2::ONE))
            .collect()
    }

    /// Equality after reducing coefficients modulo two.
    pub fn eq_mod2(&self, other: &Self) -> bool {
        self.mod2() == other.mod2()
    }
}

impl fmt::Display for SchubertElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| b.size().cmp(&a.size()).then_with(|| b.cmp(a)));
        for (i, (lambda, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if lambda.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{lambda}")?;
            } else {
                write!(f, "{abs}*{lambda}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SchubertElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SchubertElement({self})")
    }
}

impl GradedAlgebra for SchubertRing {
    type Elem = SchubertElement;

    fn top_degree(&self) -> u32 {
        self.dimension()
    }
    fn zero(&self) -> SchubertElement {
        SchubertRing::zero(self)
    }
    fn one(&self) -> SchubertElement {
        SchubertRing::one(self)
    }
    fn from_integer(&self, n: &BigInt) -> SchubertElement {
        self.integer(n.clone())
    }
    fn add(&self, a: &SchubertElement, b: &SchubertElement) -> SchubertElement {
        a.add(b)
    }
    fn neg(&self, a: &SchubertElement) -> SchubertElement {
        a.neg()
    }
    fn mul(&self, a: &SchubertElement, b: &SchubertElement) -> SchubertElement {
        self.multiply(a, b).expect("classes of the same Grassmannian")
    }
    fn homogeneous_part(&self, a: &SchubertElement, d: u32) -> SchubertElement {
        a.homogeneous_part(d)
    }
    fn is_zero(&self, a: &SchubertElement) -> bool {
        a.is_zero()
    }
    fn scale(&self, a: &SchubertElement, n: &BigInt) -> SchubertElement {
        a.scale(n)
    }
}
