//! Certified local intersection multiplicities at the origin, and an
//! emptiness certificate for quasihomogeneous systems on a weighted
//! projective space.
//!
//! The multiplicity engine computes `dim 𝕜[[x_1,…,x_d]]/(f_1,…,f_d)` by
//! exact Gaussian elimination on truncations: for rising truncation level
//! `N` it spans all products `x^α·f_i` inside `𝕜[x]/𝔪^{N+1}` and stops as
//! soon as every monomial of total degree exactly `N` is a pivot — then
//! `𝔪^N ⊆ I + 𝔪^{N+1}`, so `𝔪^N ⊆ I` in the local ring by Nakayama, and
//! the non-pivot monomials of degree `< N` form a basis of the quotient.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, Q, WeightVector};

/// A certified multiplicity: the quotient dimension, the truncation level at
/// which the stopping certificate fired, and a monomial basis of the
/// quotient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityResult {
    /// `dim 𝕜[[x]]/(f_1,…,f_d)`.
    pub value: u64,
    /// Truncation level `N` at which the certificate fired.
    pub certified_level: u64,
    /// The non-pivot (standard) monomials, ascending graded lex; a basis of
    /// the quotient. Its length equals `value`.
    pub standard_monomials: Vec<Monomial>,
}

/// Outcome of a multiplicity computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MultOutcome {
    /// The certificate fired; the multiplicity is exact.
    Certified(MultiplicityResult),
    /// Some generator has a nonzero constant term: the ideal is the unit
    /// ideal and the multiplicity is 0 (the origin is not on the locus).
    UnitIdeal,
    /// The truncation cap was reached without a certificate. This never
    /// claims the multiplicity is infinite — only that it was not certified.
    Inconclusive {
        /// The cap that was exhausted.
        cap: u64,
    },
}

impl MultOutcome {
    /// The certified value, if any (`UnitIdeal` counts as 0).
    pub fn value(&self) -> Option<u64> {
        match self {
            MultOutcome::Certified(r) => Some(r.value),
            MultOutcome::UnitIdeal => Some(0),
            MultOutcome::Inconclusive { .. } => None,
        }
    }
}

/// Verdict of the weighted-projective-space emptiness check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmptinessCertificate {
    /// Every monomial in a window of weighted degrees ending at `level` lies
    /// in the ideal, so the system has no common zero on `ℙ(𝒘)`.
    Empty { level: u64 },
    /// A verified common zero other than the origin.
    NonemptyWitness { point: Vec<Q> },
    /// Neither a certificate nor a witness was found below the cap.
    Inconclusive { cap: u64 },
}

/// Sparse exact row reduction keyed by leading (graded-lex largest)
/// monomial. Rows are stored fully reduced at the front: each inserted row
/// is eliminated against existing pivots until its leading monomial is new.
#[derive(Debug, Default)]
struct RowReducer {
    rows: BTreeMap<Monomial, BTreeMap<Monomial, Q>>,
}

impl RowReducer {
    fn new() -> Self {
        RowReducer::default()
    }

    /// Reduces `row` against the current pivots and installs it if nonzero.
    fn insert(&mut self, mut row: BTreeMap<Monomial, Q>) {
        loop {
            let lead = match row.iter().next_back() {
                None => return,
                Some((m, _)) => m.clone(),
            };
            match self.rows.get(&lead) {
                None => {
                    // Normalize the leading coefficient to 1.
                    let lc = row.get(&lead).unwrap().clone();
                    for c in row.values_mut() {
                        *c /= lc.clone();
                    }
                    self.rows.insert(lead, row);
                    return;
                }
                Some(pivot_row) => {
                    let factor = row.get(&lead).unwrap().clone();
                    let pivot_row = pivot_row.clone();
                    for (m, c) in pivot_row {
                        let entry = row.entry(m.clone()).or_insert_with(Q::zero);
                        *entry -= factor.clone() * c;
                        if entry.is_zero() {
                            row.remove(&m);
                        }
                    }
                }
            }
        }
    }

    fn is_pivot(&self, m: &Monomial) -> bool {
        self.rows.contains_key(m)
    }

    /// Whether the single monomial `m` lies in the row span. Being a pivot
    /// is necessary but not sufficient: a pivot row may carry lower-order
    /// tail terms, so membership requires the full reduction to reach zero.
    fn contains_monomial(&self, m: &Monomial) -> bool {
        let mut row: BTreeMap<Monomial, Q> = BTreeMap::new();
        row.insert(m.clone(), Q::from(num_bigint::BigInt::from(1)));
        loop {
            let lead = match row.iter().next_back() {
                None => return true,
                Some((m, _)) => m.clone(),
            };
            let Some(pivot_row) = self.rows.get(&lead) else {
                return false;
            };
            let factor = row.get(&lead).unwrap().clone();
            let pivot_row = pivot_row.clone();
            for (m, c) in pivot_row {
                let entry = row.entry(m.clone()).or_insert_with(Q::zero);
                *entry -= factor.clone() * c;
                if entry.is_zero() {
                    row.remove(&m);
                }
            }
        }
    }

    fn num_pivots(&self) -> usize {
        self.rows.len()
    }
}

fn poly_to_row(f: &Polynomial) -> BTreeMap<Monomial, Q> {
    f.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

/// All monomials of total degree ≤ `n` in `d` variables, ascending graded
/// lex.
fn monomials_up_to(d: usize, n: u64) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; d];
    gen_upto(d, n, 0, &mut current, &mut out);
    out.sort();
    out
}

fn gen_upto(d: usize, budget: u64, i: usize, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if i == d {
        out.push(Monomial(current.clone()));
        return;
    }
    for e in 0..=budget {
        current[i] = e as u32;
        gen_upto(d, budget - e, i + 1, current, out);
    }
    current[i] = 0;
}

/// All monomials of exact `w`-degree `m` in `w.len()` variables, ascending
/// graded lex.
fn monomials_of_weight(w: &WeightVector, m: u64) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; w.len()];
    gen_weighted(w.as_slice(), m, 0, &mut current, &mut out);
    out.sort();
    out
}

fn gen_weighted(ws: &[u64], remaining: u64, i: usize, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if i == ws.len() {
        if remaining == 0 {
            out.push(Monomial(current.clone()));
        }
        return;
    }
    let wi = ws[i];
    let mut e = 0u64;
    loop {
        let used = e * wi;
        if used > remaining {
            break;
        }
        current[i] = e as u32;
        gen_weighted(ws, remaining - used, i + 1, current, out);
        e += 1;
    }
    current[i] = 0;
}

fn validate_system(system: &[Polynomial]) -> Result<usize> {
    let d = match system.first() {
        None => return Err(Error::invalid("empty system")),
        Some(f) => f.nvars(),
    };
    if system.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: system.len(),
        });
    }
    for f in system {
        if f.nvars() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: f.nvars(),
            });
        }
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
    }
    Ok(d)
}

/// Spans the truncations of `x^α·f_i` inside `𝕜[x]/𝔪^{n+1}` and reports
/// the non-pivot monomials of degree `< n` together with whether every
/// monomial of degree exactly `n` lies in the span (the stopping
/// certificate). Span membership — not mere pivot-ness — is required: a
/// pivot row can carry lower-degree tail terms, and certifying from pivots
/// alone would wrongly conclude `𝔪^n ⊆ I + 𝔪^{n+1}`.
fn eliminate_at(system: &[Polynomial], min_degs: &[u64], d: usize, n: u64) -> (Vec<Monomial>, bool) {
    let mut reducer = RowReducer::new();
    let all_monomials = monomials_up_to(d, n);
    for (f, &min_deg) in system.iter().zip(min_degs) {
        for alpha in &all_monomials {
            if alpha.total_degree() + min_deg > n {
                continue;
            }
            let g = f.mul_monomial(alpha).truncate_total_degree(n);
            if !g.is_zero() {
                reducer.insert(poly_to_row(&g));
            }
        }
    }
    let boundary_covered = all_monomials
        .iter()
        .filter(|m| m.total_degree() == n)
        .all(|m| reducer.contains_monomial(m));
    let standard: Vec<Monomial> = all_monomials
        .into_iter()
        .filter(|m| m.total_degree() < n && !reducer.is_pivot(m))
        .collect();
    (standard, boundary_covered)
}

/// Minimal total degree of each generator: products whose every term
/// exceeds the truncation level reduce to zero and can be skipped.
fn min_degrees(system: &[Polynomial]) -> Vec<u64> {
    system
        .iter()
        .map(|f| {
            f.terms()
                .map(|(m, _)| m.total_degree())
                .min()
                .expect("nonzero")
        })
        .collect()
}

/// Computes the local intersection multiplicity of `d` polynomials in `d`
/// variables at the origin, certified by the Nakayama stopping rule, with
/// truncation levels up to `cap`.
pub fn local_multiplicity(system: &[Polynomial], cap: u64) -> Result<MultOutcome> {
    let d = validate_system(system)?;
    if cap < 1 {
        return Err(Error::invalid("cap must be ≥ 1"));
    }
    if system.iter().any(|f| !f.constant_term().is_zero()) {
        return Ok(MultOutcome::UnitIdeal);
    }
    let min_degs = min_degrees(system);
    for n in 1..=cap {
        let (standard, boundary_covered) = eliminate_at(system, &min_degs, d, n);
        if boundary_covered {
            return Ok(MultOutcome::Certified(MultiplicityResult {
                value: standard.len() as u64,
                certified_level: n,
                standard_monomials: standard,
            }));
        }
    }
    Ok(MultOutcome::Inconclusive { cap })
}

/// For each truncation level `N = 1,…,cap`, the count of non-pivot
/// monomials of total degree `< N`. The sequence is non-decreasing and
/// becomes constant once the stopping certificate fires.
pub fn truncation_profile(system: &[Polynomial], cap: u64) -> Result<Vec<u64>> {
    let d = validate_system(system)?;
    if cap < 1 {
        return Err(Error::invalid("cap must be ≥ 1"));
    }
    if system.iter().any(|f| !f.constant_term().is_zero()) {
        return Err(Error::invalid("unit ideal has no truncation profile"));
    }
    let min_degs = min_degrees(system);
    Ok((1..=cap)
        .map(|n| eliminate_at(system, &min_degs, d, n).0.len() as u64)
        .collect())
}

/// `Some(true)` when the origin is certified to be an isolated point of the
/// common zero locus (the multiplicity certificate fired, or the locus does
/// not pass through the origin at all); `None` when the cap was hit. Never
/// claims non-isolatedness.
pub fn is_origin_isolated(system: &[Polynomial], cap: u64) -> Result<Option<bool>> {
    Ok(match local_multiplicity(system, cap)? {
        MultOutcome::Certified(_) | MultOutcome::UnitIdeal => Some(true),
        MultOutcome::Inconclusive { .. } => None,
    })
}

/// Deterministic witness-probe candidates: coordinate points, the all-ones
/// point, then the full small-integer grid with entries in {−2,−1,1,2}.
fn witness_candidates(d: usize) -> Vec<Vec<Q>> {
    use crate::poly::int;
    let mut out = Vec::new();
    for i in 0..d {
        let mut p = vec![int(0); d];
        p[i] = int(1);
        out.push(p);
    }
    out.push(vec![int(1); d]);
    // Grid {−2,−1,1,2}^d, lexicographic in the listed value order.
    let values = [1i64, -1, 2, -2];
    let mut idx = vec![0usize; d];
    loop {
        let p: Vec<Q> = idx.iter().map(|&j| int(values[j])).collect();
        out.push(p);
        let mut k = d;
        while k > 0 {
            idx[k - 1] += 1;
            if idx[k - 1] < values.len() {
                break;
            }
            idx[k - 1] = 0;
            k -= 1;
        }
        if k == 0 {
            break;
        }
    }
    out
}

/// Certifies that a system of `𝒘`-quasihomogeneous polynomials has no
/// common zero on the weighted projective space `ℙ(𝒘)`.
///
/// Soundness: the certificate at level `N` checks a whole window of
/// weighted degrees `M ∈ [N − max(𝒘) + 1, N]`. When every monomial of each
/// such degree lies in the degree-`M` graded piece of the ideal, induction
/// on the degree (multiply by one variable, dropping the degree by at most
/// `max(𝒘)` back into the window) shows every monomial of degree ≥
/// `N − max(𝒘) + 1` is in the ideal, so the vanishing locus away from the
/// origin of the affine cone is empty.
///
/// Before the search, a fixed set of small candidate points is probed; a
/// verified common zero other than the origin yields a witness. Absence of
/// a witness is never treated as emptiness.
pub fn wps_empty_certificate(
    system: &[Polynomial],
    w: &WeightVector,
    cap: u64,
) -> Result<EmptinessCertificate> {
    if system.is_empty() {
        return Err(Error::invalid("empty system"));
    }
    let d = w.len();
    for f in system {
        if f.nvars() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: f.nvars(),
            });
        }
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !f.is_quasihomogeneous(w)? {
            return Err(Error::invalid(format!(
                "polynomial {f} is not quasihomogeneous for the given weights"
            )));
        }
    }

    for candidate in witness_candidates(d) {
        if candidate.iter().all(|c| c.is_zero()) {
            continue;
        }
        let all_vanish = system
            .iter()
            .map(|f| f.evaluate(&candidate))
            .collect::<Result<Vec<_>>>()?
            .iter()
            .all(|v| v.is_zero());
        if all_vanish {
            return Ok(EmptinessCertificate::NonemptyWitness { point: candidate });
        }
    }

    let orders: Vec<u64> = system
        .iter()
        .map(|f| f.weighted_order(w).map(|o| o.expect("nonzero")))
        .collect::<Result<Vec<_>>>()?;
    let max_w = w.max_weight();

    // deg_ok(M): every monomial of w-degree M lies in the span of the
    // degree-M products m·f_i. Memoized across window positions.
    let mut memo: BTreeMap<u64, bool> = BTreeMap::new();
    let deg_ok = |m: u64, memo: &mut BTreeMap<u64, bool>| -> bool {
        if let Some(&v) = memo.get(&m) {
            return v;
        }
        let targets = monomials_of_weight(w, m);
        let ok = if targets.is_empty() {
            true
        } else {
            let mut reducer = RowReducer::new();
            for (f, &o) in system.iter().zip(&orders) {
                if o > m {
                    continue;
                }
                for mult in monomials_of_weight(w, m - o) {
                    reducer.insert(poly_to_row(&f.mul_monomial(&mult)));
                }
            }
            reducer.num_pivots() == targets.len()
        };
        memo.insert(m, ok);
        ok
    };

    for n in max_w..=cap {
        let lo = n - max_w + 1;
        if (lo..=n).all(|m| deg_ok(m, &mut memo)) {
            return Ok(EmptinessCertificate::Empty { level: n });
        }
    }
    Ok(EmptinessCertificate::Inconclusive { cap })
}
