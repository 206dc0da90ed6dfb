//! The rings available to `eval`.

use std::collections::BTreeMap;

use cupkernel_core::chern::{direct_sum_power, grassmannian_presentation, projective_bundle_ring, Gr35Mod2};
use cupkernel_core::pipeline::Section3;
use cupkernel_core::polyring::{Field, Gf2, GradedPolynomial, QuotientRing};
use cupkernel_core::schubert::{Partition, SchubertElement, SchubertRing};
use cupkernel_core::{BundleClass, Error};
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::expr::{self, Eval, ParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RingName {
    Gr35,
    Ps5,
    Schubert,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CoeffName {
    Z2,
    Z,
}

#[derive(Debug)]
pub enum EvalError {
    Parse(ParseError),
    Ring(Error),
}

impl From<ParseError> for EvalError {
    fn from(e: ParseError) -> Self {
        EvalError::Parse(e)
    }
}

impl From<Error> for EvalError {
    fn from(e: Error) -> Self {
        EvalError::Ring(e)
    }
}

/// A polynomial quotient ring plus names that stand for fixed classes
/// (`c3 = c1^3` once `c3` has been eliminated).
struct PolyEval<C: Field> {
    ring: QuotientRing<C>,
    aliases: BTreeMap<String, GradedPolynomial<C>>,
}

impl<C: Field> Eval for PolyEval<C> {
    type Value = GradedPolynomial<C>;
    type Error = EvalError;

    fn int(&self, n: &BigInt) -> Self::Value {
        GradedPolynomial::constant(self.ring.vars(), C::from_bigint(n))
    }

    fn var(&self, name: &str, at: usize) -> Result<Self::Value, EvalError> {
        if let Some(p) = self.aliases.get(name) {
            return Ok(p.clone());
        }
        GradedPolynomial::var(self.ring.vars(), name).map_err(|_| {
            let names: Vec<_> = self.ring.vars().vars().iter().map(|v| v.name.as_str()).collect();
            EvalError::Parse(ParseError {
                position: at,
                message: format!("unknown variable `{name}` (expected one of {})", names.join(", ")),
            })
        })
    }

    fn schubert(&self, _: &[u32], at: usize) -> Result<Self::Value, EvalError> {
        Err(EvalError::Parse(ParseError {
            position: at,
            message: "Schubert classes need --ring schubert".into(),
        }))
    }

    fn add(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, EvalError> {
        Ok(a.try_add(b)?)
    }

    fn neg(&self, a: &Self::Value) -> Result<Self::Value, EvalError> {
        Ok(a.neg())
    }

    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, EvalError> {
        Ok(self.ring.mul(a, b)?)
    }

    fn pow(&self, a: &Self::Value, e: u32) -> Result<Self::Value, EvalError> {
        Ok(self.ring.pow(a, e)?)
    }
}

struct SchubertEval {
    gr: SchubertRing,
    chern: Vec<SchubertElement>,
}

impl Eval for SchubertEval {
    type Value = SchubertElement;
    type Error = EvalError;

    fn int(&self, n: &BigInt) -> Self::Value {
        self.gr.integer(n.clone())
    }

    fn var(&self, name: &str, at: usize) -> Result<Self::Value, EvalError> {
        let idx = name.strip_prefix('c').and_then(|s| s.parse::<usize>().ok());
        match idx {
            Some(i) if (1..=self.gr.k()).contains(&i) => Ok(self.chern[i].clone()),
            _ => Err(EvalError::Parse(ParseError {
                position: at,
                message: format!("unknown variable `{name}` (expected c1, c2, c3 or s[...])"),
            })),
        }
    }

    fn schubert(&self, parts: &[u32], at: usize) -> Result<Self::Value, EvalError> {
        let p = Partition::new(parts.to_vec()).map_err(|e| {
            EvalError::Parse(ParseError {
                position: at,
                message: e.to_string(),
            })
        })?;
        Ok(self.gr.class_or_zero(p))
    }

    fn add(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, EvalError> {
        Ok(a.add(b))
    }

    fn neg(&self, a: &Self::Value) -> Result<Self::Value, EvalError> {
        Ok(a.neg())
    }

    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, EvalError> {
        Ok(self.gr.multiply(a, b)?)
    }
}

fn with_c3_alias(ring: QuotientRing<Gf2>, gr: &Gr35Mod2) -> Result<PolyEval<Gf2>, EvalError> {
    let c3 = gr.c3_image().embed(ring.vars())?;
    Ok(PolyEval {
        ring,
        aliases: BTreeMap::from([("c3".to_string(), c3)]),
    })
}

fn rational_gr35() -> Result<QuotientRing<BigRational>, Error> {
    grassmannian_presentation::<BigRational>(3, 5, None)
}

fn rational_ps5() -> Result<QuotientRing<BigRational>, Error> {
    let base = rational_gr35()?;
    let mut parts = vec![base.one()];
    for i in 1..=3 {
        parts.push(base.var(&format!("c{i}"))?);
    }
    let s = BundleClass::from_parts(&base, "S", 3, parts)?;
    let s5 = direct_sum_power(&base, &s, 5);
    Ok(projective_bundle_ring(&base, &s5, "h", None)?.ring().clone())
}

fn run<E: Eval<Error = EvalError>>(ev: &E, src: &str, allow_minus: bool) -> Result<E::Value, EvalError> {
    let e = expr::parse(src, allow_minus)?;
    ev.eval(&e)
}

fn finish<C: Field>(ev: &PolyEval<C>, p: GradedPolynomial<C>) -> Result<String, EvalError> {
    Ok(ev.ring.normal_form(&p)?.to_string())
}

fn mod2_string(e: &SchubertElement) -> String {
    let m = e.mod2();
    if m.is_empty() {
        return "0".into();
    }
    let mut parts: Vec<&Partition> = m.keys().collect();
    parts.sort_by(|a, b| b.size().cmp(&a.size()).then_with(|| b.cmp(a)));
    parts
        .iter()
        .map(|p| if p.is_empty() { "1".to_string() } else { p.to_string() })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Parse `src`, evaluate it in the chosen ring and return the canonical
/// normal form.
pub fn evaluate(ring: RingName, coeff: CoeffName, src: &str) -> Result<String, EvalError> {
    let z = coeff == CoeffName::Z;
    match (ring, coeff) {
        (RingName::Gr35, CoeffName::Z2) => {
            let gr = Gr35Mod2::new()?;
            let ev = with_c3_alias(gr.ring().clone(), &gr)?;
            let p = run(&ev, src, z)?;
            finish(&ev, p)
        }
        (RingName::Ps5, CoeffName::Z2) => {
            let ctx = Section3::new()?;
            let ev = with_c3_alias(ctx.ring().clone(), ctx.grassmannian())?;
            let p = run(&ev, src, z)?;
            finish(&ev, p)
        }
        (RingName::Gr35, CoeffName::Z) | (RingName::Ps5, CoeffName::Z) => {
            let ring = if ring == RingName::Gr35 { rational_gr35()? } else { rational_ps5()? };
            let ev = PolyEval {
                ring,
                aliases: BTreeMap::new(),
            };
            let p = run(&ev, src, z)?;
            finish(&ev, p)
        }
        (RingName::Schubert, _) => {
            let gr = SchubertRing::new(3, 5)?;
            let ev = SchubertEval {
                chern: gr.tautological_total(),
                gr,
            };
            let v = run(&ev, src, z)?;
            Ok(if z { v.to_string() } else { mod2_string(&v) })
        }
    }
}
