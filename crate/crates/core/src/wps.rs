//! Weighted projective space combinatorics: well-formedness, singular
//! strata, isolating sets with their degree bounds, and the point-Jacobian
//! rank helper for quasismoothness checks.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{lcm, Monomial, Polynomial, Q, WeightVector};

/// A weighted projective space `ℙ(a_0,…,a_N)` with named coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbientWPS {
    weights: WeightVector,
    names: Vec<String>,
}

impl AmbientWPS {
    /// Builds the space with default coordinate names `x0,…,xN`.
    pub fn new(weights: Vec<u64>) -> Result<Self> {
        let names = (0..weights.len()).map(|i| format!("x{i}")).collect();
        Self::with_names(weights, names)
    }

    /// Builds the space with explicit coordinate names.
    pub fn with_names(weights: Vec<u64>, names: Vec<String>) -> Result<Self> {
        let weights = WeightVector::ambient(weights)?;
        if names.len() != weights.len() {
            return Err(Error::DimensionMismatch {
                expected: weights.len(),
                got: names.len(),
            });
        }
        Ok(AmbientWPS { weights, names })
    }

    pub fn weights(&self) -> &[u64] {
        self.weights.as_slice()
    }

    pub fn weight_vector(&self) -> &WeightVector {
        &self.weights
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Number of coordinates, `N + 1`.
    pub fn num_coords(&self) -> usize {
        self.weights.len()
    }
}

/// True when every `N`-subset of the `N+1` weights has gcd 1.
pub fn is_well_formed(p: &AmbientWPS) -> bool {
    let ws = p.weights();
    (0..ws.len()).all(|omit| {
        ws.iter()
            .enumerate()
            .filter(|&(i, _)| i != omit)
            .fold(0u64, |acc, (_, &w)| crate::poly::gcd(acc, w))
            == 1
    })
}

/// Index subsets `S` (ascending, each of size ≥ 1) whose weights have a
/// common divisor > 1; the closure of the corresponding coordinate stratum
/// is singular along these loci. Bookkeeping only — no scheme structure.
pub fn singular_strata(p: &AmbientWPS) -> Vec<Vec<usize>> {
    let ws = p.weights();
    let n = ws.len();
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let subset: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let g = subset
            .iter()
            .fold(0u64, |acc, &i| crate::poly::gcd(acc, ws[i]));
        if g > 1 {
            out.push(subset);
        }
    }
    out
}

/// Polynomials isolating a point of a weighted projective space, with their
/// weighted degrees and the max-degree bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsolatingSet {
    pub polynomials: Vec<Polynomial>,
    pub degrees: Vec<u64>,
    pub bound: u64,
}

/// Which pairs of coordinates feed an isolating-degree bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsolatingVariant {
    /// All unordered pairs `{i, j}` with both indices outside `excluded`.
    Pairs { excluded: Vec<usize> },
    /// Pairs `{r, j}` with `r` ranging over `anchors` (indices where the
    /// point has a nonzero coordinate) and `j` outside `excluded ∪ {r}`.
    Anchored {
        anchors: Vec<usize>,
        excluded: Vec<usize>,
    },
}

fn check_indices(p: &AmbientWPS, idxs: &[usize]) -> Result<()> {
    for &i in idxs {
        if i >= p.num_coords() {
            return Err(Error::invalid(format!(
                "coordinate index {i} out of range for {} coordinates",
                p.num_coords()
            )));
        }
    }
    Ok(())
}

/// The max-lcm isolating degree bound for the selected pair family.
pub fn isolating_degree_bound(p: &AmbientWPS, variant: &IsolatingVariant) -> Result<u64> {
    let ws = p.weights();
    let n = ws.len();
    let pairs: Vec<(usize, usize)> = match variant {
        IsolatingVariant::Pairs { excluded } => {
            check_indices(p, excluded)?;
            let idxs: Vec<usize> = (0..n).filter(|i| !excluded.contains(i)).collect();
            idxs.iter()
                .enumerate()
                .flat_map(|(a, &i)| idxs[a + 1..].iter().map(move |&j| (i, j)))
                .collect()
        }
        IsolatingVariant::Anchored { anchors, excluded } => {
            check_indices(p, anchors)?;
            check_indices(p, excluded)?;
            anchors
                .iter()
                .flat_map(|&r| {
                    (0..n)
                        .filter(move |&j| j != r && !excluded.contains(&j))
                        .map(move |j| (r, j))
                })
                .collect()
        }
    };
    pairs
        .iter()
        .map(|&(i, j)| lcm(ws[i], ws[j]))
        .max()
        .ok_or_else(|| Error::invalid("no coordinate pairs selected"))
}

fn q_pow(base: &Q, e: u64) -> Q {
    let mut out = Q::one();
    for _ in 0..e {
        out *= base.clone();
    }
    out
}

/// The pair polynomial
/// `g_ij = α_j^{b/a_j}·x_i^{b/a_i} − α_i^{b/a_i}·x_j^{b/a_j}` with
/// `b = lcm(a_i, a_j)`; `None` when identically zero (both coordinates
/// vanish). The sign is normalized so the graded-lex leading coefficient is
/// positive.
fn pair_polynomial(point: &[Q], ws: &[u64], i: usize, j: usize) -> Option<(Polynomial, u64)> {
    let n = ws.len();
    let b = lcm(ws[i], ws[j]);
    let ci = q_pow(&point[i], b / ws[i]);
    let cj = q_pow(&point[j], b / ws[j]);
    if ci.is_zero() && cj.is_zero() {
        return None;
    }
    let mut mi = Monomial::one(n);
    mi.0[i] = (b / ws[i]) as u32;
    let mut mj = Monomial::one(n);
    mj.0[j] = (b / ws[j]) as u32;
    let mut g = Polynomial::from_terms(n, [(cj, mi), (-ci, mj)]).expect("same nvars");
    let lead = g.leading_monomial().expect("nonzero").clone();
    if g.coeff(&lead).is_negative() {
        g = g.neg();
    }
    Some((g, b))
}

/// Builds an isolating set for a point of `ℙ(a_0,…,a_N)` from the pair
/// polynomials `g_ij`, dropping identically-zero ones.
///
/// `restrict_to` limits the coordinate indices considered; `anchor`, when
/// given, must index a nonzero coordinate of the point and restricts the
/// pairs to `{anchor, j}`.
pub fn isolating_set(
    point: &[Q],
    p: &AmbientWPS,
    restrict_to: Option<&[usize]>,
    anchor: Option<usize>,
) -> Result<IsolatingSet> {
    let n = p.num_coords();
    if point.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: point.len(),
        });
    }
    if point.iter().all(|c| c.is_zero()) {
        return Err(Error::invalid("point must not be the all-zero tuple"));
    }
    let idxs: Vec<usize> = match restrict_to {
        None => (0..n).collect(),
        Some(r) => {
            check_indices(p, r)?;
            let mut v = r.to_vec();
            v.sort_unstable();
            v.dedup();
            v
        }
    };
    let pairs: Vec<(usize, usize)> = match anchor {
        None => idxs
            .iter()
            .enumerate()
            .flat_map(|(a, &i)| idxs[a + 1..].iter().map(move |&j| (i, j)))
            .collect(),
        Some(r) => {
            check_indices(p, &[r])?;
            if point[r].is_zero() {
                return Err(Error::invalid(
                    "anchor must index a nonzero coordinate of the point",
                ));
            }
            idxs.iter().filter(|&&j| j != r).map(|&j| (r, j)).collect()
        }
    };
    let ws = p.weights();
    let mut polynomials = Vec::new();
    let mut degrees = Vec::new();
    for (i, j) in pairs {
        if let Some((g, b)) = pair_polynomial(point, ws, i, j) {
            polynomials.push(g);
            degrees.push(b);
        }
    }
    let bound = degrees
        .iter()
        .copied()
        .max()
        .ok_or_else(|| Error::invalid("no nonzero pair polynomials"))?;
    Ok(IsolatingSet {
        polynomials,
        degrees,
        bound,
    })
}

/// Exact rank of the Jacobian matrix of `polys` evaluated at `point`.
pub fn jacobian_rank_at(polys: &[Polynomial], point: &[Q]) -> Result<usize> {
    let mut rows: Vec<Vec<Q>> = Vec::with_capacity(polys.len());
    for f in polys {
        let mut row = Vec::with_capacity(point.len());
        for i in 0..f.nvars() {
            row.push(f.partial_derivative(i)?.evaluate(point)?);
        }
        rows.push(row);
    }
    Ok(rank(rows))
}

/// Exact Gaussian-elimination rank of a dense rational matrix.
fn rank(mut rows: Vec<Vec<Q>>) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(pivot) = (r..nrows).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let pv = rows[r][col].clone();
        for i in (r + 1)..nrows {
            if rows[i][col].is_zero() {
                continue;
            }
            let factor = rows[i][col].clone() / pv.clone();
            for c in col..ncols {
                let sub = factor.clone() * rows[r][c].clone();
                rows[i][c] -= sub;
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, parse_system, VarTable};

    fn wps(ws: &[u64]) -> AmbientWPS {
        AmbientWPS::new(ws.to_vec()).unwrap()
    }

    #[test]
    fn well_formedness() {
        assert!(is_well_formed(&wps(&[1, 1, 2])));
        assert!(!is_well_formed(&wps(&[1, 2, 2])));
        assert!(is_well_formed(&wps(&[1, 2, 3, 4, 5])));
    }

    #[test]
    fn well_formedness_is_permutation_invariant() {
        assert_eq!(
            is_well_formed(&wps(&[2, 2, 1])),
            is_well_formed(&wps(&[1, 2, 2]))
        );
    }

    #[test]
    fn singular_strata_bookkeeping() {
        let strata = singular_strata(&wps(&[1, 2, 2]));
        assert!(strata.contains(&vec![1]));
        assert!(strata.contains(&vec![2]));
        assert!(strata.contains(&vec![1, 2]));
        assert!(!strata.iter().any(|s| s.contains(&0)));
    }

    #[test]
    fn isolating_set_coordinate_point() {
        // (1:0:0) in ℙ(1,2,3): {y, z}, bound 3.
        let set = isolating_set(&[int(1), int(0), int(0)], &wps(&[1, 2, 3]), None, None).unwrap();
        let mut vars = VarTable::with_names(&["x0", "x1", "x2"]);
        let expect = parse_system("x1, x2", &mut vars).unwrap();
        assert_eq!(set.polynomials, expect);
        assert_eq!(set.degrees, vec![2, 3]);
        assert_eq!(set.bound, 3);
    }

    #[test]
    fn isolating_set_weight_one_point() {
        // P_x in ℙ(1,1,1,1,3): coordinate forms, bound 3.
        let pt = [int(1), int(0), int(0), int(0), int(0)];
        let set = isolating_set(&pt, &wps(&[1, 1, 1, 1, 3]), None, None).unwrap();
        assert_eq!(set.bound, 3);
        for (g, _) in set.polynomials.iter().zip(&set.degrees) {
            assert_eq!(g.evaluate(&pt).unwrap(), int(0));
        }
    }

    #[test]
    fn isolating_set_binomial() {
        // (1:1) in ℙ(2,3): {x^3 − y^2}, bound 6.
        let set = isolating_set(&[int(1), int(1)], &wps(&[2, 3]), None, None).unwrap();
        let mut vars = VarTable::with_names(&["x0", "x1"]);
        let expect = parse_system("x0^3 - x1^2", &mut vars).unwrap();
        assert_eq!(set.polynomials, expect);
        assert_eq!(set.bound, 6);
    }

    #[test]
    fn isolating_set_rejects_zero_point() {
        assert!(isolating_set(&[int(0), int(0)], &wps(&[1, 2]), None, None).is_err());
    }

    #[test]
    fn isolating_set_members_vanish_at_point() {
        let pt = [int(2), int(-1), int(3)];
        let set = isolating_set(&pt, &wps(&[1, 2, 3]), None, None).unwrap();
        for g in &set.polynomials {
            assert_eq!(g.evaluate(&pt).unwrap(), int(0));
        }
        assert_eq!(
            set.bound,
            *set.degrees.iter().max().unwrap()
        );
    }

    #[test]
    fn degree_bounds() {
        // ℙ(1,1,2,2,5), all pairs among indices {0..3}: bound 2.
        let b = isolating_degree_bound(
            &wps(&[1, 1, 2, 2, 5]),
            &IsolatingVariant::Pairs { excluded: vec![4] },
        )
        .unwrap();
        assert_eq!(b, 2);

        // ℙ(1,6,8,9,10,15), anchors {1,2}, j ∉ {3,5}: bound 40.
        let b = isolating_degree_bound(
            &wps(&[1, 6, 8, 9, 10, 15]),
            &IsolatingVariant::Anchored {
                anchors: vec![1, 2],
                excluded: vec![3, 5],
            },
        )
        .unwrap();
        assert_eq!(b, 40);

        // ℙ(1,1,1): all weights 1, bound 1.
        let b = isolating_degree_bound(
            &wps(&[1, 1, 1]),
            &IsolatingVariant::Pairs { excluded: vec![] },
        )
        .unwrap();
        assert_eq!(b, 1);
    }

    #[test]
    fn degree_bound_monotone_under_exclusion() {
        let p = wps(&[1, 2, 3, 4, 5]);
        let all = isolating_degree_bound(&p, &IsolatingVariant::Pairs { excluded: vec![] }).unwrap();
        for m in 0..5 {
            let restricted =
                isolating_degree_bound(&p, &IsolatingVariant::Pairs { excluded: vec![m] }).unwrap();
            assert!(restricted <= all);
        }
    }

    #[test]
    fn jacobian_ranks() {
        let mut vars = VarTable::new();
        let ps = parse_system("x^2 + y^2, x*y", &mut vars).unwrap();
        assert_eq!(jacobian_rank_at(&ps, &[int(0), int(0)]).unwrap(), 0);

        let mut vars = VarTable::with_names(&["x", "y"]);
        let ps = parse_system("x", &mut vars).unwrap();
        assert_eq!(jacobian_rank_at(&ps, &[int(1), int(0)]).unwrap(), 1);

        // Codim-2 family equations (w·t + v², w² + z³) at P_v in (z,t,v,w).
        let mut vars = VarTable::with_names(&["z", "t", "v", "w"]);
        let ps = parse_system("w*t + v^2, w^2 + z^3", &mut vars).unwrap();
        assert_eq!(
            jacobian_rank_at(&ps, &[int(0), int(0), int(1), int(0)]).unwrap(),
            1
        );
    }
}
