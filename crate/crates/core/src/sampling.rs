//! Seeded random generators for the randomized verification suites:
//! polynomials, certified local systems, admissible weight vectors, and
//! semi-invariant systems for cyclic group actions. All generators are
//! deterministic for a fixed seed.

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::blowup::is_semi_invariant;
use crate::localmult::{local_multiplicity, MultOutcome, MultiplicityResult};
use crate::poly::{Monomial, Polynomial, Q, WeightVector};

/// The deterministic RNG used by every randomized suite.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generator limits shared by the randomized suites: total degree ≤ 6,
/// at most 6 terms, coefficients in [−9, 9].
pub const MAX_DEGREE: u32 = 6;
pub const MAX_TERMS: usize = 6;
pub const COEFF_BOUND: i64 = 9;

fn random_monomial(rng: &mut ChaCha8Rng, nvars: usize, min_degree: u32) -> Monomial {
    loop {
        let mut exps = vec![0u32; nvars];
        let mut budget = MAX_DEGREE;
        for e in exps.iter_mut() {
            *e = rng.gen_range(0..=budget);
            budget -= *e;
        }
        let m = Monomial(exps);
        if m.total_degree() >= min_degree as u64 {
            return m;
        }
    }
}

fn random_coeff(rng: &mut ChaCha8Rng) -> Q {
    loop {
        let c = rng.gen_range(-COEFF_BOUND..=COEFF_BOUND);
        if c != 0 {
            return Q::from(BigInt::from(c));
        }
    }
}

/// A random nonzero polynomial; with `vanish_at_origin`, every term has
/// total degree ≥ 1.
pub fn random_polynomial(rng: &mut ChaCha8Rng, nvars: usize, vanish_at_origin: bool) -> Polynomial {
    let min_degree = if vanish_at_origin { 1 } else { 0 };
    loop {
        let nterms = rng.gen_range(1..=MAX_TERMS);
        let terms: Vec<(Q, Monomial)> = (0..nterms)
            .map(|_| (random_coeff(rng), random_monomial(rng, nvars, min_degree)))
            .collect();
        let p = Polynomial::from_terms(nvars, terms).expect("consistent nvars");
        if !p.is_zero() {
            return p;
        }
    }
}

/// A random weight vector with entries in `1..=max_entry` and gcd 1.
pub fn random_weight_vector(rng: &mut ChaCha8Rng, nvars: usize, max_entry: u64) -> WeightVector {
    loop {
        let ws: Vec<u64> = (0..nvars).map(|_| rng.gen_range(1..=max_entry)).collect();
        if let Ok(w) = WeightVector::blowup(ws) {
            return w;
        }
    }
}

/// Samples square systems vanishing at the origin until the multiplicity
/// engine certifies one, within `max_retries` resamples; returns the
/// system with its certificate.
pub fn certified_system(
    rng: &mut ChaCha8Rng,
    nvars: usize,
    cap: u64,
    max_retries: usize,
) -> Option<(Vec<Polynomial>, MultiplicityResult)> {
    for _ in 0..max_retries {
        let system: Vec<Polynomial> = (0..nvars)
            .map(|_| random_polynomial(rng, nvars, true))
            .collect();
        if let Ok(MultOutcome::Certified(res)) = local_multiplicity(&system, cap) {
            return Some((system, res));
        }
    }
    None
}

/// One semi-invariant polynomial for the diagonal `μ_r`-action with
/// residues `w_i mod r`: every kept monomial shares the same residue of
/// `Σ w_i·e_i mod r`, and every term vanishes at the origin.
pub fn random_semi_invariant(rng: &mut ChaCha8Rng, r: u64, w: &WeightVector) -> Polynomial {
    let nvars = w.len();
    loop {
        let lead = random_monomial(rng, nvars, 1);
        let residue = lead.weight(w) % r;
        let nterms = rng.gen_range(1..=MAX_TERMS);
        let mut terms = vec![(random_coeff(rng), lead.clone())];
        let mut attempts = 0;
        while terms.len() < nterms && attempts < 200 {
            attempts += 1;
            let m = random_monomial(rng, nvars, 1);
            if m.weight(w) % r == residue {
                terms.push((random_coeff(rng), m));
            }
        }
        let p = Polynomial::from_terms(nvars, terms).expect("consistent nvars");
        if !p.is_zero() {
            debug_assert!(is_semi_invariant(&p, r, w).unwrap());
            return p;
        }
    }
}

/// Samples semi-invariant square systems until the multiplicity engine
/// certifies one.
pub fn certified_semi_invariant_system(
    rng: &mut ChaCha8Rng,
    r: u64,
    w: &WeightVector,
    cap: u64,
    max_retries: usize,
) -> Option<(Vec<Polynomial>, MultiplicityResult)> {
    let nvars = w.len();
    for _ in 0..max_retries {
        let system: Vec<Polynomial> = (0..nvars)
            .map(|_| random_semi_invariant(rng, r, w))
            .collect();
        if let Ok(MultOutcome::Certified(res)) = local_multiplicity(&system, cap) {
            return Some((system, res));
        }
    }
    None
}
