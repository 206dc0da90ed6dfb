//! Bounds on `d_{q,m}`, the largest dimension of a real space of `q×q`
//! Hermitian matrices whose nonzero members all have rank `≥ m`, and the
//! resulting bounds on the kernel of the cup product
//! `φ: ∧²H¹(X,ℂ) → H²(X,ℂ)` for a compact Kähler `n`-fold `X` with
//! `q = h^{1,0}` and no Albanese fibration, with the surface consequences.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hermitian::two_adic;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    TrivialZero,
    AdamsFormula,
    Section3Parity,
    ExplicitFamily,
    Unknown,
}

/// Whether a number rests on a computation of this run or on a cited fact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Evidence {
    Verified,
    Cited,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lower,
    Upper,
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Source {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
    pub side: Side,
    pub evidence: Evidence,
    pub claim: String,
}

impl Source {
    fn new(provenance: Provenance, side: Side, evidence: Evidence, claim: impl Into<String>) -> Self {
        Self::fact(side, evidence, claim).with(provenance)
    }

    fn fact(side: Side, evidence: Evidence, claim: impl Into<String>) -> Self {
        Self {
            provenance: None,
            side,
            evidence,
            claim: claim.into(),
        }
    }

    fn with(mut self, p: Provenance) -> Self {
        self.provenance = Some(p);
        self
    }
}

/// Verifications that passed earlier in the same run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunEvidence {
    pub section3_parity: bool,
    pub explicit_family: bool,
    /// Sizes `q` for which a Clifford family was certified.
    pub clifford: BTreeSet<usize>,
}

impl RunEvidence {
    pub fn none() -> Self {
        Self::default()
    }

    fn of(flag: bool) -> Evidence {
        if flag {
            Evidence::Verified
        } else {
            Evidence::Cited
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DEntry {
    pub q: u64,
    pub m: u64,
    pub lower: Option<u64>,
    pub upper: Option<u64>,
    pub provenance: Provenance,
    pub sources: Vec<Source>,
}

impl DEntry {
    pub fn exact(&self) -> Option<u64> {
        match (self.lower, self.upper) {
            (Some(l), Some(u)) if l == u => Some(l),
            _ => None,
        }
    }
}

fn positive(name: &str, v: u64) -> Result<()> {
    if v == 0 {
        return Err(Error::Inconsistent(format!("{name} must be at least 1")));
    }
    Ok(())
}

/// `d_{q,m}` where known.
pub fn d_bound(q: u64, m: u64, run: &RunEvidence) -> Result<DEntry> {
    positive("q", q)?;
    positive("m", m)?;
    let entry = |lower, upper, provenance, sources| DEntry {
        q,
        m,
        lower,
        upper,
        provenance,
        sources,
    };
    if q < m {
        return Ok(entry(
            Some(0),
            Some(0),
            Provenance::TrivialZero,
            vec![Source::new(
                Provenance::TrivialZero,
                Side::Both,
                Evidence::Verified,
                format!("a {q}x{q} matrix has rank at most {q} < {m}"),
            )],
        ));
    }
    if q == m {
        let (_, c) = two_adic(q)?;
        let v = 2 * u64::from(c) + 1;
        let sources = vec![
            Source::new(
                Provenance::AdamsFormula,
                Side::Lower,
                RunEvidence::of(usize::try_from(q).is_ok_and(|q| run.clifford.contains(&q))),
                format!("{v} anticommuting Hermitian involutions of size {q}"),
            ),
            Source::new(
                Provenance::AdamsFormula,
                Side::Upper,
                Evidence::Cited,
                "vector fields on spheres: d_{q,q} = 2c+1 for q = 2^c(2b+1)",
            ),
        ];
        return Ok(entry(Some(v), Some(v), Provenance::AdamsFormula, sources));
    }
    if (q, m) == (5, 4) {
        let sources = vec![
            Source::new(
                Provenance::ExplicitFamily,
                Side::Lower,
                RunEvidence::of(run.explicit_family),
                "a 7-parameter family of 5x5 Hermitian matrices of rank >= 4 off the origin",
            ),
            Source::new(
                Provenance::Section3Parity,
                Side::Upper,
                RunEvidence::of(run.section3_parity),
                "odd Euler characteristic of a generic P^8 section of the rank <= 3 locus",
            ),
        ];
        return Ok(entry(Some(7), Some(8), Provenance::Section3Parity, sources));
    }
    Ok(entry(None, None, Provenance::Unknown, Vec::new()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Case {
    Injective,
    QEquals2n,
    Q5n2,
    OutOfTable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelBoundReport {
    pub n: u64,
    pub q: u64,
    pub b: Option<u64>,
    pub c: Option<u32>,
    /// Bound on `dim ker φ^{1,1}`.
    pub kappa_bound: Option<u64>,
    /// Bound on `dim ker φ^{2,0}`.
    pub ker20_bound: Option<u64>,
    pub total_bound: Option<u64>,
    pub im_phi_lower: Option<u64>,
    pub b2_lower: Option<u64>,
    pub applicable_case: Case,
    pub sources: Vec<Source>,
    pub note: Option<String>,
}

/// `dim ∧²ℂ^{2q} = q(2q − 1)`.
pub fn wedge2_dimension(q: u64) -> u64 {
    q * (2 * q).saturating_sub(1)
}

pub fn kernel_bound(n: u64, q: u64, run: &RunEvidence) -> Result<KernelBoundReport> {
    positive("n", n)?;
    let (b, c) = match two_adic(q) {
        Ok((b, c)) => (Some(b), Some(c)),
        Err(_) => (None, None),
    };
    let wedge = wedge2_dimension(q);
    let mut report = KernelBoundReport {
        n,
        q,
        b,
        c,
        kappa_bound: None,
        ker20_bound: None,
        total_bound: None,
        im_phi_lower: None,
        b2_lower: None,
        applicable_case: Case::OutOfTable,
        sources: Vec::new(),
        note: None,
    };
    let mut fill = |case, kappa: u64, ker20: u64, total: u64, sources: Vec<Source>| {
        report.applicable_case = case;
        report.kappa_bound = Some(kappa);
        report.ker20_bound = Some(ker20);
        report.total_bound = Some(total);
        report.im_phi_lower = Some(wedge - total);
        report.b2_lower = Some(wedge - total);
        report.sources = sources;
    };
    if q < 2 * n {
        fill(
            Case::Injective,
            0,
            0,
            0,
            vec![Source::new(
                Provenance::TrivialZero,
                Side::Upper,
                Evidence::Verified,
                format!("d_{{{q},{}}} = 0 since {q} < {}", 2 * n, 2 * n),
            )],
        );
    } else if q == 2 * n {
        let d = d_bound(q, q, run)?;
        let kappa = d.upper.expect("d_{q,q} is known");
        fill(Case::QEquals2n, kappa, 1, kappa + 2, d.sources);
    } else if (n, q) == (2, 5) {
        let d = d_bound(5, 4, run)?;
        let kappa = d.upper.expect("d_{5,4} is bounded");
        // dim Im φ^{2,0} >= 2q − 3 inside ∧²ℂ^5
        let ker20 = q * (q - 1) / 2 - (2 * q - 3);
        let mut sources = d.sources;
        sources.push(Source::fact(
            Side::Upper,
            Evidence::Cited,
            "dim Im phi^{2,0} >= 2q - 3 for irregular surfaces without Albanese fibration",
        ));
        fill(Case::Q5n2, kappa, ker20, kappa + 2 * ker20, sources);
    } else {
        let d = d_bound(q, 2 * n, run)?;
        report.kappa_bound = d.upper;
        report.sources = d.sources;
        report.note = Some(match d.upper {
            Some(u) => format!("kappa <= d_{{{q},{}}} = {u}; no bound on ker phi^{{2,0}} known", 2 * n),
            None => "no bound known".to_string(),
        });
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pi1Report {
    pub n: u64,
    pub q: u64,
    pub wedge2_dimension: u64,
    pub total_bound: Option<u64>,
    pub im_phi_lower: Option<u64>,
    /// `ρ − γ ≥ dim Im φ − 2q`.
    pub rho_minus_gamma_lower: Option<i64>,
    pub b2_lower: Option<u64>,
    /// Surfaces only: `c₂ = 2 − 4q + b₂`.
    pub c2_lower: Option<i64>,
    /// `4q − 7`, the general-position value, for comparison.
    pub general_position_bound: i64,
    /// Value printed in the source where it differs from the formula.
    pub stated_rho_minus_gamma: Option<i64>,
    pub discrepancy: bool,
}

pub fn pi1_bound(n: u64, q: u64, run: &RunEvidence) -> Result<Pi1Report> {
    let k = kernel_bound(n, q, run)?;
    let q_i = q as i64;
    let rho = k.im_phi_lower.map(|im| im as i64 - 2 * q_i);
    let c2 = if n == 2 {
        k.b2_lower.map(|b2| 2 - 4 * q_i + b2 as i64)
    } else {
        None
    };
    let stated = ((n, q) == (2, 5)).then_some(31);
    Ok(Pi1Report {
        n,
        q,
        wedge2_dimension: wedge2_dimension(q),
        total_bound: k.total_bound,
        im_phi_lower: k.im_phi_lower,
        rho_minus_gamma_lower: rho,
        b2_lower: k.b2_lower,
        c2_lower: c2,
        general_position_bound: 4 * q_i - 7,
        discrepancy: stated.is_some_and(|s| Some(s) != rho),
        stated_rho_minus_gamma: stated,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceReport {
    pub q: u64,
    pub p_g: u64,
    pub chi_hol: i64,
    /// `K² + c₂ = 12 χ_hol`.
    pub noether_sum: i64,
    pub c2_lower: i64,
    pub k2_window: [i64; 2],
    pub miyaoka_bound: i64,
    pub rho_minus_gamma_lower: Option<i64>,
    pub sources: Vec<Source>,
}

/// `K²` window from Noether's formula: `[k2_prior_lower, 12χ − c2_lower]`.
pub fn noether_window(q: u64, p_g: u64, k2_prior_lower: i64, c2_lower: i64) -> Result<SurfaceReport> {
    let chi = p_g as i64 - q as i64 + 1;
    let noether_sum = 12 * chi;
    let hi = noether_sum - c2_lower;
    if k2_prior_lower > hi {
        return Err(Error::Inconsistent(format!(
            "empty K^2 window: lower {k2_prior_lower} > 12*chi - c2_lower = {hi}"
        )));
    }
    let rho = pi1_bound(2, q, &RunEvidence::none())?.rho_minus_gamma_lower;
    let mut sources = vec![Source::fact(
        Side::Upper,
        Evidence::Verified,
        format!("K^2 + c2 = 12 chi_hol = {noether_sum}"),
    )];
    if k2_prior_lower > 0 {
        sources.push(Source::fact(
            Side::Lower,
            Evidence::Cited,
            format!("K^2 >= {k2_prior_lower} supplied as a prior"),
        ));
    }
    Ok(SurfaceReport {
        q,
        p_g,
        chi_hol: chi,
        noether_sum,
        c2_lower,
        k2_window: [k2_prior_lower, hi],
        miyaoka_bound: 9 * chi,
        rho_minus_gamma_lower: rho,
        sources,
    })
}
