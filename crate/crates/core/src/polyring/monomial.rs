use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A polynomial variable carrying its complex cohomological degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedVariable {
    pub name: String,
    pub degree: u32,
}

impl GradedVariable {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Self {
            name: name.into(),
            degree,
        }
    }
}

/// Ordered list of variables. The order is significant: later variables
/// are more significant in the monomial order (`c1 < c2 < … < h`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarSet {
    vars: Vec<GradedVariable>,
}

impl VarSet {
    pub fn new(vars: Vec<GradedVariable>) -> Result<Arc<Self>> {
        for (i, v) in vars.iter().enumerate() {
            if v.degree == 0 {
                return Err(Error::InvalidVariables(format!(
                    "variable `{}` has degree 0",
                    v.name
                )));
            }
            if v.name.is_empty() {
                return Err(Error::InvalidVariables("empty variable name".into()));
            }
            if vars[..i].iter().any(|w| w.name == v.name) {
                return Err(Error::InvalidVariables(format!(
                    "duplicate variable `{}`",
                    v.name
                )));
            }
        }
        Ok(Arc::new(Self { vars }))
    }

    /// Convenience constructor from `(name, degree)` pairs.
    pub fn from_pairs(pairs: &[(&str, u32)]) -> Result<Arc<Self>> {
        Self::new(
            pairs
                .iter()
                .map(|&(n, d)| GradedVariable::new(n, d))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[GradedVariable] {
        &self.vars
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.vars.iter().map(|v| v.degree).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    /// Monomial `var^exp`.
    pub fn var_power(&self, name: &str, exp: u32) -> Result<Monomial> {
        let idx = self
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        let mut exps = vec![0; self.len()];
        exps[idx] = exp;
        Ok(Monomial::from_exponents(exps, &self.degrees()))
    }

    /// All monomials of weighted degree exactly `d`, in increasing monomial order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let degrees = self.degrees();
        let mut out = Vec::new();
        let mut exps = vec![0u32; degrees.len()];
        fill(&degrees, degrees.len(), d, &mut exps, &mut out);
        out.sort();
        out
    }
}

fn fill(degrees: &[u32], upto: usize, remaining: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if upto == 0 {
        if remaining == 0 {
            out.push(Monomial::from_exponents(exps.clone(), degrees));
        }
        return;
    }
    let i = upto - 1;
    let w = degrees[i];
    for e in 0..=remaining / w {
        exps[i] = e;
        fill(degrees, i, remaining - e * w, exps, out);
    }
    exps[i] = 0;
}

/// Exponent vector together with its cached weighted degree.
///
/// Ordered graded-lexicographically: first by weighted degree, then by the
/// exponent of the last variable, then the one before it, and so on.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[u32]>,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Self {
            exps: vec![0; nvars].into_boxed_slice(),
            degree: 0,
        }
    }

    pub fn from_exponents(exps: Vec<u32>, degrees: &[u32]) -> Self {
        debug_assert_eq!(exps.len(), degrees.len());
        let degree = exps.iter().zip(degrees).map(|(e, w)| e * w).sum();
        Self {
            exps: exps.into_boxed_slice(),
            degree,
        }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.exps[var]
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Number of variables that actually occur.
    pub fn support_size(&self) -> usize {
        self.exps.iter().filter(|&&e| e > 0).count()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps: Box<[u32]> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a + b)
            .collect();
        Monomial {
            exps,
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    pub fn display<'a>(&'a self, vars: &'a VarSet) -> MonomialDisplay<'a> {
        MonomialDisplay { mono: self, vars }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.exps.iter().rev().cmp(other.exps.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

pub struct MonomialDisplay<'a> {
    mono: &'a Monomial,
    vars: &'a VarSet,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, &e) in self.vars.vars().iter().zip(self.mono.exps.iter()) {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v.name)?;
            } else {
                write!(f, "{}^{}", v.name, e)?;
            }
        }
        Ok(())
    }
}
