//! Numerics of weighted blowups: discrepancies, non-canonicity thresholds,
//! the multiplicity decomposition with non-negative residual, contraction
//! weight enumeration, the cyclic-quotient multiplicity relation, and the
//! exclusion inequality.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::localmult::{
    local_multiplicity, wps_empty_certificate, EmptinessCertificate, MultOutcome,
};
use crate::poly::{Polynomial, Q, WeightVector};

fn q_u64(n: u64) -> Q {
    Q::from(BigInt::from(n))
}

/// The numeric data of a weighted blowup of a complete-intersection germ,
/// possibly of a cyclic quotient: blowup weights `(w_1,…,w_{d+c})`, the
/// weighted orders of the `c` local equations, and the quotient index `r`
/// (`r = 1` means no quotient).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupDatum {
    ambient_weights: WeightVector,
    lci_orders: Vec<u64>,
    quotient_index: u64,
    dim: usize,
}

impl BlowupDatum {
    /// Validates and builds a datum. The germ dimension is
    /// `len(weights) − len(orders)` and must be at least 2; the weights
    /// must be positive with gcd 1; orders and `r` must be positive.
    pub fn new(ambient_weights: Vec<u64>, lci_orders: Vec<u64>, quotient_index: u64) -> Result<Self> {
        let ambient_weights = WeightVector::blowup(ambient_weights)?;
        if lci_orders.iter().any(|&o| o == 0) {
            return Err(Error::invalid("equation orders must be positive"));
        }
        if quotient_index == 0 {
            return Err(Error::invalid("quotient index must be positive"));
        }
        if ambient_weights.len() <= lci_orders.len() + 1 {
            return Err(Error::invalid(
                "need at least 2 more weights than equation orders",
            ));
        }
        let dim = ambient_weights.len() - lci_orders.len();
        Ok(BlowupDatum {
            ambient_weights,
            lci_orders,
            quotient_index,
            dim,
        })
    }

    pub fn ambient_weights(&self) -> &WeightVector {
        &self.ambient_weights
    }

    pub fn lci_orders(&self) -> &[u64] {
        &self.lci_orders
    }

    pub fn quotient_index(&self) -> u64 {
        self.quotient_index
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// Discrepancy of the exceptional divisor of the weighted blowup:
/// `(Σ w_i − Σ 𝒘(f_j))/r − 1`.
///
/// A non-positive value is returned as-is (the formula is meaningful even
/// when the extraction is not terminal); callers may warn on it.
pub fn lci_discrepancy(datum: &BlowupDatum) -> Q {
    let sum_w: u64 = datum.ambient_weights.as_slice().iter().sum();
    let sum_o: u64 = datum.lci_orders.iter().sum();
    (q_u64(sum_w) - q_u64(sum_o)) / q_u64(datum.quotient_index) - Q::one()
}

/// The non-canonicity threshold
/// `r · Π𝒘(f_j) · a_E² / Π(the c+2 largest blowup weights)`:
/// the strict lower bound for `mult_P(D_1·D_2)/n²` forced by a
/// non-canonical weighted blowup of this shape.
///
/// Weights are sorted ascending internally, so callers may pass them in any
/// display order.
pub fn lci_threshold(datum: &BlowupDatum) -> Result<Q> {
    if datum.dim < 2 {
        return Err(Error::invalid("threshold needs germ dimension ≥ 2"));
    }
    let a_e = lci_discrepancy(datum);
    let mut sorted: Vec<u64> = datum.ambient_weights.as_slice().to_vec();
    sorted.sort_unstable();
    let c = datum.lci_orders.len();
    // The c+2 largest weights.
    let denom: Q = sorted[sorted.len() - (c + 2)..]
        .iter()
        .fold(Q::one(), |acc, &w| acc * q_u64(w));
    let numer: Q = datum
        .lci_orders
        .iter()
        .fold(q_u64(datum.quotient_index), |acc, &o| acc * q_u64(o));
    Ok(numer * a_e.clone() * a_e / denom)
}

/// Admissible weights of a divisorial contraction to a `cA_k` point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ContractionWeights {
    /// Weights `(r_1, r_2, a, 1)` with `r_1 + r_2 = (k+1)·a` and `a`
    /// coprime to both `r_1` and `r_2`.
    NonExceptional { k: u64, r1: u64, r2: u64, a: u64 },
    /// The exceptional `cA_1` contraction with weights `(1,5,3,2)`.
    ExceptionalCA1,
    /// The exceptional `cA_2` contraction with weights `(4,3,2,1)`.
    ExceptionalCA2,
}

impl ContractionWeights {
    /// Validates and builds the non-exceptional case.
    pub fn non_exceptional(k: u64, r1: u64, r2: u64, a: u64) -> Result<Self> {
        if k < 1 || r1 < 1 || r2 < 1 || a < 1 {
            return Err(Error::invalid("all contraction parameters must be ≥ 1"));
        }
        if r1 + r2 != (k + 1) * a {
            return Err(Error::invalid(format!(
                "need r1 + r2 = (k+1)·a, got {r1} + {r2} ≠ {}·{a}",
                k + 1
            )));
        }
        if crate::poly::gcd(a, r1) != 1 || crate::poly::gcd(a, r2) != 1 {
            return Err(Error::invalid("a must be coprime to r1 and r2"));
        }
        Ok(ContractionWeights::NonExceptional { k, r1, r2, a })
    }

    /// The blowup weights of the contraction, in display order.
    pub fn weights(&self) -> Vec<u64> {
        match self {
            ContractionWeights::NonExceptional { r1, r2, a, .. } => vec![*r1, *r2, *a, 1],
            ContractionWeights::ExceptionalCA1 => vec![1, 5, 3, 2],
            ContractionWeights::ExceptionalCA2 => vec![4, 3, 2, 1],
        }
    }

    /// The weighted order of the single local equation.
    pub fn equation_order(&self) -> u64 {
        match self {
            ContractionWeights::NonExceptional { k, a, .. } => (k + 1) * a,
            ContractionWeights::ExceptionalCA1 | ContractionWeights::ExceptionalCA2 => 6,
        }
    }

    /// The corresponding hypersurface-germ blowup datum (weights, one
    /// equation order, no quotient).
    pub fn datum(&self) -> BlowupDatum {
        BlowupDatum::new(self.weights(), vec![self.equation_order()], 1)
            .expect("contraction weights always form a valid datum")
    }
}

/// Non-canonicity threshold for a `cA_k` contraction:
/// `(r_1+r_2)²/((k+1)·r_1·r_2)` in the non-exceptional case, `16/5` and
/// `9/4` for the two exceptional contractions.
pub fn cak_threshold(cw: &ContractionWeights) -> Q {
    match cw {
        ContractionWeights::NonExceptional { k, r1, r2, .. } => {
            let s = q_u64(r1 + r2);
            s.clone() * s / (q_u64(k + 1) * q_u64(*r1) * q_u64(*r2))
        }
        ContractionWeights::ExceptionalCA1 => Q::new(BigInt::from(16), BigInt::from(5)),
        ContractionWeights::ExceptionalCA2 => Q::new(BigInt::from(9), BigInt::from(4)),
    }
}

/// The weight-independent floor threshold `4/(k+1)` valid at every `cA_k`
/// point.
pub fn cak_floor_threshold(k: u64) -> Q {
    Q::new(BigInt::from(4), BigInt::from(k + 1))
}

/// Enumerates all admissible contraction weights for a `cA_k` point with
/// `1 ≤ a ≤ a_max`, ordered by `a` then `r_1 ≤ r_2`; the exceptional
/// contraction is appended when `k` is 1 or 2.
pub fn enumerate_cak_contractions(k: u64, a_max: u64) -> Vec<ContractionWeights> {
    let mut out = Vec::new();
    for a in 1..=a_max {
        let total = (k + 1) * a;
        for r1 in 1..=total / 2 {
            let r2 = total - r1;
            if crate::poly::gcd(a, r1) == 1 && crate::poly::gcd(a, r2) == 1 {
                out.push(ContractionWeights::NonExceptional { k, r1, r2, a });
            }
        }
    }
    if k == 1 {
        out.push(ContractionWeights::ExceptionalCA1);
    }
    if k == 2 {
        out.push(ContractionWeights::ExceptionalCA2);
    }
    out
}

/// The multiplicity decomposition at a point: the certified local
/// multiplicity splits as a product-of-orders lower term plus a
/// non-negative residual, with the residual vanishing exactly when the
/// least-weight parts have no common zero on `ℙ(𝒘)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FultonReport {
    pub multiplicity: Q,
    /// `Π 𝒘(f_i) / Π w_i`.
    pub lower_term: Q,
    /// `multiplicity − lower_term`, always ≥ 0.
    pub residual: Q,
    /// Emptiness verdict for the least-weight parts on `ℙ(𝒘)`.
    pub emptiness: EmptinessCertificate,
    /// The weighted orders `𝒘(f_i)`.
    pub orders: Vec<u64>,
    /// Truncation level of the multiplicity certificate.
    pub certified_level: u64,
}

impl FultonReport {
    /// Checks the decomposition's internal consistency: exact additivity,
    /// non-negative residual, and (when the emptiness certificate is
    /// decisive) residual = 0 ⟺ empty.
    pub fn verify(&self) -> Result<()> {
        if self.multiplicity != self.lower_term.clone() + self.residual.clone() {
            return Err(Error::Data("decomposition does not add up".into()));
        }
        if self.residual.is_negative() {
            return Err(Error::Data("negative residual".into()));
        }
        match &self.emptiness {
            EmptinessCertificate::Empty { .. } if !self.residual.is_zero() => Err(Error::Data(
                "emptiness certificate with nonzero residual".into(),
            )),
            EmptinessCertificate::NonemptyWitness { .. } if self.residual.is_zero() => Err(
                Error::Data("nonemptiness witness with zero residual".into()),
            ),
            _ => Ok(()),
        }
    }
}

/// Outcome of [`fulton_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FultonOutcome {
    Report(FultonReport),
    /// The multiplicity engine did not certify below the cap.
    Inconclusive { cap: u64 },
}

/// Computes the multiplicity decomposition for `d` local equations in `d`
/// variables with respect to blowup weights `w` (gcd 1 required).
///
/// Every equation must vanish at the origin (positive weighted order);
/// otherwise its divisor does not pass through the blown-up point.
pub fn fulton_check(system: &[Polynomial], w: &WeightVector, cap: u64) -> Result<FultonOutcome> {
    let g = w
        .as_slice()
        .iter()
        .fold(0u64, |acc, &x| crate::poly::gcd(acc, x));
    if g != 1 {
        return Err(Error::invalid("blowup weights must have gcd 1"));
    }
    let mut orders = Vec::with_capacity(system.len());
    for f in system {
        match f.weighted_order(w)? {
            None => return Err(Error::ZeroPolynomial),
            Some(0) => {
                return Err(Error::invalid(
                    "every equation must vanish at the origin (weighted order ≥ 1)",
                ))
            }
            Some(o) => orders.push(o),
        }
    }
    let result = match local_multiplicity(system, cap)? {
        MultOutcome::Certified(r) => r,
        MultOutcome::UnitIdeal => unreachable!("all equations vanish at the origin"),
        MultOutcome::Inconclusive { cap } => return Ok(FultonOutcome::Inconclusive { cap }),
    };
    let lower_term = orders.iter().fold(Q::one(), |acc, &o| acc * q_u64(o)) / w.product();
    let multiplicity = q_u64(result.value);
    let residual = multiplicity.clone() - lower_term.clone();
    let least_parts: Vec<Polynomial> = system
        .iter()
        .map(|f| f.least_weight_part(w))
        .collect::<Result<_>>()?;
    let emptiness = wps_empty_certificate(&least_parts, w, cap)?;
    let report = FultonReport {
        multiplicity,
        lower_term,
        residual,
        emptiness,
        orders,
        certified_level: result.certified_level,
    };
    report.verify()?;
    Ok(FultonOutcome::Report(report))
}

/// Report of the cyclic-quotient multiplicity relation: the invariant
/// system downstairs has multiplicity `m̂/r` and valuations `v̂_i/r`, and
/// the decomposition carries an extra factor `r^{d−1}` in the lower term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientReport {
    /// Multiplicity of the system upstairs (before the quotient).
    pub upstairs_multiplicity: u64,
    /// Upstairs weighted orders `v̂_i = 𝒘(f_i)`.
    pub upstairs_valuations: Vec<u64>,
    /// `m̂ / r`.
    pub downstairs_multiplicity: Q,
    /// `v̂_i / r`.
    pub downstairs_valuations: Vec<Q>,
    /// `Π(v̂_i/r) · r^{d−1} / Π w_i`.
    pub lower_term: Q,
    /// `downstairs_multiplicity − lower_term`, always ≥ 0.
    pub residual: Q,
}

/// Outcome of [`quotient_mult_relation`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuotientOutcome {
    Report(QuotientReport),
    Inconclusive { cap: u64 },
}

/// True when every monomial of `f` has the same value of `Σ w_i·e_i mod r`
/// (semi-invariance for the diagonal `μ_r`-action with weights `w_i mod r`).
pub fn is_semi_invariant(f: &Polynomial, r: u64, w: &WeightVector) -> Result<bool> {
    if f.nvars() != w.len() {
        return Err(Error::DimensionMismatch {
            expected: w.len(),
            got: f.nvars(),
        });
    }
    let mut residues = f.terms().map(|(m, _)| m.weight(w) % r);
    match residues.next() {
        None => Ok(true),
        Some(first) => Ok(residues.all(|x| x == first)),
    }
}

/// Computes the downstairs multiplicity decomposition of a `μ_r`-semi-
/// invariant system on the quotient germ `(ℂ^d, 0)/μ_r`, with the action's
/// residues given by `w mod r`.
pub fn quotient_mult_relation(
    system: &[Polynomial],
    r: u64,
    w: &WeightVector,
    cap: u64,
) -> Result<QuotientOutcome> {
    if r == 0 {
        return Err(Error::invalid("quotient index must be positive"));
    }
    for f in system {
        if !is_semi_invariant(f, r, w)? {
            return Err(Error::invalid(format!(
                "polynomial {f} is not semi-invariant for the μ_{r}-action"
            )));
        }
    }
    let result = match local_multiplicity(system, cap)? {
        MultOutcome::Certified(res) => res,
        MultOutcome::UnitIdeal => {
            return Err(Error::invalid("system does not vanish at the origin"))
        }
        MultOutcome::Inconclusive { cap } => return Ok(QuotientOutcome::Inconclusive { cap }),
    };
    let d = system.len() as u64;
    let mut upstairs_valuations = Vec::with_capacity(system.len());
    for f in system {
        match f.weighted_order(w)? {
            Some(o) if o > 0 => upstairs_valuations.push(o),
            _ => {
                return Err(Error::invalid(
                    "every equation must vanish at the origin (weighted order ≥ 1)",
                ))
            }
        }
    }
    let rq = q_u64(r);
    let downstairs_multiplicity = q_u64(result.value) / rq.clone();
    let downstairs_valuations: Vec<Q> = upstairs_valuations
        .iter()
        .map(|&v| q_u64(v) / rq.clone())
        .collect();
    let mut lower_term = downstairs_valuations
        .iter()
        .fold(Q::one(), |acc, v| acc * v.clone());
    for _ in 1..d {
        lower_term *= rq.clone();
    }
    lower_term /= w.product();
    let residual = downstairs_multiplicity.clone() - lower_term.clone();
    Ok(QuotientOutcome::Report(QuotientReport {
        upstairs_multiplicity: result.value,
        upstairs_valuations,
        downstairs_multiplicity,
        downstairs_valuations,
        lower_term,
        residual,
    }))
}

/// The maximal-center exclusion test: the candidate is excluded exactly
/// when `l · deg ≤ threshold` (the available anticanonical degree does not
/// exceed the strict lower bound forced by non-canonicity).
pub fn exclusion_inequality(l: u64, deg_a3: &Q, threshold: &Q) -> bool {
    q_u64(l) * deg_a3.clone() <= *threshold
}
