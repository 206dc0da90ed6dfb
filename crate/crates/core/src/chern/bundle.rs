use num_bigint::BigInt;

use super::symmetric::{line_twist_formula, tensor_formula};
use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};

/// Formal vector bundle: a rank and the homogeneous parts `c_0 = 1, c_1, …`
/// of its total Chern class, up to the algebra's top degree.
///
/// Parts above the rank may be nonzero as raw polynomials (they vanish in
/// the true cohomology ring).
#[derive(Debug, Clone, PartialEq)]
pub struct BundleClass<E> {
    name: String,
    rank: u32,
    parts: Vec<E>,
}

impl<E: Clone + PartialEq + std::fmt::Debug> BundleClass<E> {
    /// `parts[i]` must be homogeneous of degree `i`; missing parts are zero,
    /// parts beyond the algebra's top degree are dropped.
    pub fn from_parts<A>(alg: &A, name: impl Into<String>, rank: u32, parts: Vec<E>) -> Result<Self>
    where
        A: GradedAlgebra<Elem = E>,
    {
        let top = alg.top_degree() as usize;
        let mut parts = parts;
        parts.truncate(top + 1);
        while parts.len() < top + 1 {
            parts.push(alg.zero());
        }
        if parts[0] != alg.one() {
            return Err(Error::NonUnit(format!("{:?}", parts[0])));
        }
        for (i, p) in parts.iter().enumerate() {
            if alg.homogeneous_part(p, i as u32) != *p {
                return Err(Error::NotHomogeneous(format!("c_{i} = {p:?}")));
            }
        }
        Ok(Self {
            name: name.into(),
            rank,
            parts,
        })
    }

    /// Split a total class into its homogeneous parts.
    pub fn from_total<A>(alg: &A, name: impl Into<String>, rank: u32, total: &E) -> Result<Self>
    where
        A: GradedAlgebra<Elem = E>,
    {
        let parts = (0..=alg.top_degree())
            .map(|d| alg.homogeneous_part(total, d))
            .collect();
        Self::from_parts(alg, name, rank, parts)
    }

    pub fn trivial<A>(alg: &A, rank: u32) -> Self
    where
        A: GradedAlgebra<Elem = E>,
    {
        Self::from_parts(alg, format!("O^{rank}"), rank, vec![alg.one()])
            .expect("unit total class")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// `c_i`; zero above the stored range.
    pub fn chern(&self, i: usize) -> Option<&E> {
        self.parts.get(i)
    }

    pub fn parts(&self) -> &[E] {
        &self.parts
    }

    pub fn total<A>(&self, alg: &A) -> E
    where
        A: GradedAlgebra<Elem = E>,
    {
        alg.sum(&self.parts)
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

fn part<A: GradedAlgebra>(alg: &A, b: &BundleClass<A::Elem>, i: usize) -> A::Elem {
    b.parts.get(i).cloned().unwrap_or_else(|| alg.zero())
}

/// `c(E ⊕ F) = c(E)·c(F)`.
pub fn whitney_sum<A: GradedAlgebra>(
    alg: &A,
    e: &BundleClass<A::Elem>,
    f: &BundleClass<A::Elem>,
) -> BundleClass<A::Elem> {
    let top = alg.top_degree() as usize;
    let parts = (0..=top)
        .map(|k| {
            let terms: Vec<A::Elem> = (0..=k)
                .map(|i| alg.mul(&part(alg, e, i), &part(alg, f, k - i)))
                .collect();
            alg.homogeneous_part(&alg.sum(&terms), k as u32)
        })
        .collect();
    BundleClass {
        name: format!("{}+{}", e.name, f.name),
        rank: e.rank + f.rank,
        parts,
    }
}

/// `E^{⊕m}`.
pub fn direct_sum_power<A: GradedAlgebra>(alg: &A, e: &BundleClass<A::Elem>, m: u32) -> BundleClass<A::Elem> {
    let mut acc = BundleClass::trivial(alg, 0);
    for _ in 0..m {
        acc = whitney_sum(alg, &acc, e);
    }
    acc.name = format!("{}^{m}", e.name);
    acc
}

/// `c_i(E^∨) = (−1)^i c_i(E)`.
pub fn dual<A: GradedAlgebra>(alg: &A, e: &BundleClass<A::Elem>) -> BundleClass<A::Elem> {
    let parts = e
        .parts
        .iter()
        .enumerate()
        .map(|(i, p)| if i % 2 == 1 { alg.neg(p) } else { p.clone() })
        .collect();
    BundleClass {
        name: format!("{}*", e.name),
        rank: e.rank,
        parts,
    }
}

/// `c(E ⊗ F)` via the splitting principle.
pub fn tensor<A: GradedAlgebra>(
    alg: &A,
    e: &BundleClass<A::Elem>,
    f: &BundleClass<A::Elem>,
) -> Result<BundleClass<A::Elem>> {
    let top = alg.top_degree();
    let (r, s) = (e.rank as usize, f.rank as usize);
    // a line factor keeps the root ring small: c(E⊗L) has a closed form
    let formula = if s == 1 {
        line_twist_formula(r, top)
    } else if r == 1 {
        let swapped = tensor(alg, f, e)?;
        return Ok(BundleClass {
            name: format!("{}(x){}", e.name, f.name),
            ..swapped
        });
    } else {
        tensor_formula(r, s, top)?
    };
    let mut images = Vec::with_capacity(r + s);
    images.extend((1..=r).map(|i| part(alg, e, i)));
    images.extend((1..=s).map(|j| part(alg, f, j)));
    let total = evaluate(alg, &formula, &images);
    let mut out = BundleClass::from_total(alg, format!("{}(x){}", e.name, f.name), (r * s) as u32, &total)?;
    out.rank = (r * s) as u32;
    Ok(out)
}

/// Evaluate an integer polynomial at algebra elements.
pub fn evaluate<A: GradedAlgebra>(
    alg: &A,
    p: &crate::polyring::GradedPolynomial<BigInt>,
    images: &[A::Elem],
) -> A::Elem {
    let mut powers: Vec<Vec<A::Elem>> = images.iter().map(|x| vec![alg.one(), x.clone()]).collect();
    let mut acc = alg.zero();
    for (m, c) in p.terms() {
        let mut term = alg.from_integer(c);
        for (i, &k) in m.exponents().iter().enumerate() {
            if k == 0 {
                continue;
            }
            while powers[i].len() <= k as usize {
                let next = alg.mul(powers[i].last().unwrap(), &images[i]);
                powers[i].push(next);
            }
            term = alg.mul(&term, &powers[i][k as usize]);
        }
        acc = alg.add(&acc, &term);
    }
    acc
}

/// Segre parts `s_0 = 1, s_1, …` with `c(E)·s(E) = 1`:
/// `s_k = −Σ_{i=1..k} c_i s_{k−i}`.
pub fn segre<A: GradedAlgebra>(alg: &A, e: &BundleClass<A::Elem>) -> Vec<A::Elem> {
    let top = alg.top_degree() as usize;
    let mut s: Vec<A::Elem> = vec![alg.one()];
    for k in 1..=top {
        let terms: Vec<A::Elem> = (1..=k).map(|i| alg.mul(&part(alg, e, i), &s[k - i])).collect();
        let sum = alg.homogeneous_part(&alg.sum(&terms), k as u32);
        s.push(alg.neg(&sum));
    }
    s
}

/// The bundle whose total Chern class is `s(E)` (rank given by the caller),
/// e.g. the universal quotient bundle from the tautological subbundle.
pub fn complement<A: GradedAlgebra>(
    alg: &A,
    e: &BundleClass<A::Elem>,
    name: impl Into<String>,
    rank: u32,
) -> Result<BundleClass<A::Elem>> {
    let mut parts = segre(alg, e);
    parts.truncate(rank as usize + 1);
    BundleClass::from_parts(alg, name, rank, parts)
}

/// Line bundle with first Chern class `l`.
pub fn line_bundle<A: GradedAlgebra>(alg: &A, name: impl Into<String>, l: A::Elem) -> Result<BundleClass<A::Elem>> {
    BundleClass::from_parts(alg, name, 1, vec![alg.one(), l])
}
