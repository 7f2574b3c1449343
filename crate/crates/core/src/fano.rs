//! Embedded dataset of index-1 Fano 3-fold weighted complete intersections
//! (hypersurfaces and codimension-2), with full recomputation of the
//! anticanonical degree, the isolating-degree bound `l_ic`, and the
//! exclusion exponent `k_cA` from first principles.

use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::blowup::{cak_floor_threshold, exclusion_inequality};
use crate::error::{Error, Result};
use crate::poly::Q;
use crate::wps::{isolating_degree_bound, AmbientWPS, IsolatingVariant};

/// Case marker of a family: which isolating-degree rule applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseMarker {
    /// Smooth-point argument only; no `l_ic` is stored.
    Star,
    /// Hypersurface: all pairs among the first four coordinates.
    Club,
    /// Hypersurface: pairs anchored at coordinate 1.
    Heart,
    /// Hypersurface: anchored rule plus a special degree check.
    Spade,
    /// Codimension 2: all pairs among `{0,…,4} \ {m}`.
    ClubM(u8),
    /// Codimension 2: pairs `{r, j}` with `r ∈ {1,2}`, `j ∈ {0,…,4} \ {m}`.
    HeartM(u8),
}

impl CaseMarker {
    fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "star" => CaseMarker::Star,
            "club" => CaseMarker::Club,
            "heart" => CaseMarker::Heart,
            "spade" => CaseMarker::Spade,
            "club3" => CaseMarker::ClubM(3),
            "club4" => CaseMarker::ClubM(4),
            "heart3" => CaseMarker::HeartM(3),
            "heart4" => CaseMarker::HeartM(4),
            other => return Err(Error::Data(format!("unknown case marker {other:?}"))),
        })
    }

    pub fn label(&self) -> String {
        match self {
            CaseMarker::Star => "star".into(),
            CaseMarker::Club => "club".into(),
            CaseMarker::Heart => "heart".into(),
            CaseMarker::Spade => "spade".into(),
            CaseMarker::ClubM(m) => format!("club{m}"),
            CaseMarker::HeartM(m) => format!("heart{m}"),
        }
    }
}

/// One row of the family tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyRecord {
    /// 1 for hypersurfaces, 2 for codimension-2 intersections; equals the
    /// codimension.
    pub table: u8,
    pub family_no: u32,
    /// 1 or 2 equation degrees.
    pub degrees: Vec<u64>,
    /// 5 or 6 ambient weights, ascending (one exception in table 2 starts
    /// at 2).
    pub weights: Vec<u64>,
    pub marker: CaseMarker,
    pub stored_minus_k3: Q,
    /// Absent exactly for star rows.
    pub stored_lic: Option<u64>,
    pub stored_kca: u64,
    /// Verbatim stored equation-shape text, when the table records one.
    pub equation_shape: Option<String>,
}

impl FamilyRecord {
    pub fn codim(&self) -> usize {
        self.degrees.len()
    }
}

/// `−K³ = Π degrees / Π weights` for an index-1 weighted complete
/// intersection.
pub fn anticanonical_degree(rec: &FamilyRecord) -> Q {
    let num = rec
        .degrees
        .iter()
        .fold(Q::one(), |acc, &d| acc * Q::from(BigInt::from(d)));
    let den = rec
        .weights
        .iter()
        .fold(Q::one(), |acc, &w| acc * Q::from(BigInt::from(w)));
    num / den
}

/// Recomputes the isolating-degree bound `l_ic` from the case marker and
/// the ambient weights; `None` for star rows.
pub fn compute_lic(rec: &FamilyRecord) -> Result<Option<u64>> {
    let p = AmbientWPS::new(rec.weights.clone())?;
    let variant = match rec.marker {
        CaseMarker::Star => return Ok(None),
        CaseMarker::Club => IsolatingVariant::Pairs { excluded: vec![4] },
        CaseMarker::Heart | CaseMarker::Spade => {
            // Anchored at coordinate 1 over j ∈ {2, 3}, extended by j = 4
            // exactly when a_4 does not divide the degree.
            let d = rec.degrees[0];
            let a4 = rec.weights[4];
            let mut excluded = vec![0];
            if d % a4 == 0 {
                excluded.push(4);
            }
            IsolatingVariant::Anchored {
                anchors: vec![1],
                excluded,
            }
        }
        CaseMarker::ClubM(m) => IsolatingVariant::Pairs {
            excluded: vec![m as usize, 5],
        },
        CaseMarker::HeartM(m) => IsolatingVariant::Anchored {
            anchors: vec![1, 2],
            excluded: vec![m as usize, 5],
        },
    };
    Ok(Some(isolating_degree_bound(&p, &variant)?))
}

/// Recomputes `k_cA`: 1 for star rows, otherwise
/// `⌊4/(l_ic·(−K³)) − 1⌋` in exact rational arithmetic.
pub fn compute_kca(rec: &FamilyRecord) -> Result<u64> {
    let lic = match compute_lic(rec)? {
        None => return Ok(1),
        Some(l) => l,
    };
    let deg = anticanonical_degree(rec);
    let value = Q::from(BigInt::from(4)) / (Q::from(BigInt::from(lic)) * deg) - Q::one();
    if !value.is_positive() {
        return Err(Error::Data(format!(
            "non-positive exclusion exponent for family {} (table {})",
            rec.family_no, rec.table
        )));
    }
    let floored = value.floor().to_integer();
    floored
        .to_u64()
        .ok_or_else(|| Error::Data("exclusion exponent out of range".into()))
}

/// The additional degree check used for spade rows:
/// `a_2·a_3·(−K³) ≤ 2` exactly.
pub fn spade_special_check(rec: &FamilyRecord) -> Result<bool> {
    if rec.marker != CaseMarker::Spade {
        return Err(Error::invalid("spade check called on a non-spade row"));
    }
    let lhs = Q::from(BigInt::from(rec.weights[2]))
        * Q::from(BigInt::from(rec.weights[3]))
        * anticanonical_degree(rec);
    Ok(lhs <= Q::from(BigInt::from(2)))
}

/// Per-row verification result: recomputed triple plus any mismatches
/// against the stored values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowReport {
    pub table: u8,
    pub family_no: u32,
    pub recomputed_k3: Q,
    pub recomputed_lic: Option<u64>,
    pub recomputed_kca: u64,
    /// Human-readable mismatch descriptions; empty means the row passes.
    pub mismatches: Vec<String>,
}

impl RowReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn verify_row(rec: &FamilyRecord) -> Result<RowReport> {
    let mut mismatches = Vec::new();
    let k3 = anticanonical_degree(rec);
    if k3 != rec.stored_minus_k3 {
        mismatches.push(format!(
            "-K^3: recomputed {k3}, stored {}",
            rec.stored_minus_k3
        ));
    }
    let lic = compute_lic(rec)?;
    if lic != rec.stored_lic {
        mismatches.push(format!(
            "l_ic: recomputed {lic:?}, stored {:?}",
            rec.stored_lic
        ));
    }
    let kca = compute_kca(rec)?;
    if kca != rec.stored_kca {
        mismatches.push(format!("k_cA: recomputed {kca}, stored {}", rec.stored_kca));
    }
    // Cross-check against the exclusion inequality: k_cA is exactly the
    // largest k for which the inequality closes.
    if let Some(l) = lic {
        if !exclusion_inequality(l, &k3, &cak_floor_threshold(kca)) {
            mismatches.push("exclusion inequality fails at k = k_cA".into());
        }
        if exclusion_inequality(l, &k3, &cak_floor_threshold(kca + 1)) {
            mismatches.push("exclusion inequality still closes at k = k_cA + 1".into());
        }
    }
    if rec.marker == CaseMarker::Spade && !spade_special_check(rec)? {
        mismatches.push("spade degree check a_2·a_3·(−K³) ≤ 2 fails".into());
    }
    Ok(RowReport {
        table: rec.table,
        family_no: rec.family_no,
        recomputed_k3: k3,
        recomputed_lic: lic,
        recomputed_kca: kca,
        mismatches,
    })
}

/// Verifies every record sequentially.
pub fn verify_all_seq(records: &[FamilyRecord]) -> Result<Vec<RowReport>> {
    records.iter().map(verify_row).collect()
}

/// Verifies every record, fanning rows out across threads when the
/// `parallel` feature is enabled. Report order matches input order.
#[cfg(feature = "parallel")]
pub fn verify_all(records: &[FamilyRecord]) -> Result<Vec<RowReport>> {
    records.par_iter().map(verify_row).collect()
}

/// Verifies every record (sequential fallback).
#[cfg(not(feature = "parallel"))]
pub fn verify_all(records: &[FamilyRecord]) -> Result<Vec<RowReport>> {
    verify_all_seq(records)
}

// ---------------------------------------------------------------------------
// Dataset
// ---------------------------------------------------------------------------

const DATASET_TEXT: &str = include_str!("../data/families.txt");

fn parse_u64_list(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<u64>()
                .map_err(|e| Error::Data(format!("bad integer {x:?}: {e}")))
        })
        .collect()
}

fn parse_rational(s: &str) -> Result<Q> {
    match s.split_once('/') {
        None => BigInt::from_str(s.trim())
            .map(Q::from)
            .map_err(|e| Error::Data(format!("bad rational {s:?}: {e}"))),
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim())
                .map_err(|e| Error::Data(format!("bad rational {s:?}: {e}")))?;
            let d = BigInt::from_str(d.trim())
                .map_err(|e| Error::Data(format!("bad rational {s:?}: {e}")))?;
            Ok(Q::new(n, d))
        }
    }
}

/// Parses a dataset in the pipe-separated line format of
/// `data/families.txt`.
pub fn parse_dataset(text: &str) -> Result<Vec<FamilyRecord>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('|').map(str::trim).collect();
        if fields.len() != 9 {
            return Err(Error::Data(format!(
                "line {}: expected 9 fields, got {}",
                lineno + 1,
                fields.len()
            )));
        }
        let table: u8 = fields[0]
            .parse()
            .map_err(|e| Error::Data(format!("line {}: bad table: {e}", lineno + 1)))?;
        let family_no: u32 = fields[1]
            .parse()
            .map_err(|e| Error::Data(format!("line {}: bad family number: {e}", lineno + 1)))?;
        let degrees = parse_u64_list(fields[2])?;
        let weights = parse_u64_list(fields[3])?;
        let marker = CaseMarker::parse(fields[4])?;
        let stored_minus_k3 = parse_rational(fields[5])?;
        let stored_lic = match fields[6] {
            "-" => None,
            s => Some(
                s.parse::<u64>()
                    .map_err(|e| Error::Data(format!("line {}: bad l_ic: {e}", lineno + 1)))?,
            ),
        };
        let stored_kca: u64 = fields[7]
            .parse()
            .map_err(|e| Error::Data(format!("line {}: bad k_cA: {e}", lineno + 1)))?;
        let equation_shape = match fields[8] {
            "-" => None,
            s => Some(s.to_string()),
        };
        if degrees.len() != table as usize {
            return Err(Error::Data(format!(
                "line {}: table {} row must have {} degrees",
                lineno + 1,
                table,
                table
            )));
        }
        if weights.len() != 4 + table as usize {
            return Err(Error::Data(format!(
                "line {}: wrong number of weights",
                lineno + 1
            )));
        }
        if (marker == CaseMarker::Star) != stored_lic.is_none() {
            return Err(Error::Data(format!(
                "line {}: l_ic must be present exactly for non-star rows",
                lineno + 1
            )));
        }
        out.push(FamilyRecord {
            table,
            family_no,
            degrees,
            weights,
            marker,
            stored_minus_k3,
            stored_lic,
            stored_kca,
            equation_shape,
        });
    }
    Ok(out)
}

/// The embedded dataset, parsed once.
pub fn builtin_dataset() -> &'static [FamilyRecord] {
    static DATASET: OnceLock<Vec<FamilyRecord>> = OnceLock::new();
    DATASET.get_or_init(|| parse_dataset(DATASET_TEXT).expect("embedded dataset is well-formed"))
}

/// Looks up a record by table and family number.
pub fn find_family(records: &[FamilyRecord], table: u8, family_no: u32) -> Option<&FamilyRecord> {
    records
        .iter()
        .find(|r| r.table == table && r.family_no == family_no)
}
