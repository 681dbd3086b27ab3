//! Dimension vectors, King stability parameters, the exhaustive
//! strict-semistability search for the endomorphism-algebra moduli data, and
//! the degree-0 Hom matrix that carries the raw arrow counts of the quiver
//! presentation.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cohom::{DimValue, ExtOptions};
use crate::par::{map_indexed, Exec};
use crate::tiltcert::{ext_summands, Collection};

/// A dimension vector over the quiver vertices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimVector(pub Vec<u64>);

/// An integral stability parameter; paired with a dimension vector it must
/// satisfy `theta . d = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StabilityParam(pub Vec<i64>);

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Display for StabilityParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum QuiverError {
    #[error("the vertex-0 summand must have rank 1, got {0}")]
    FirstRankNotOne(u64),
    #[error("ranks must be positive")]
    ZeroRank,
    #[error("theta . d = {0}, expected 0")]
    PairingNonzero(i64),
    #[error("dimension vector and stability parameter have different lengths")]
    LengthMismatch,
}

/// `theta . d` as an exact integer.
pub fn pairing(theta: &StabilityParam, d: &DimVector) -> Result<i64, QuiverError> {
    if theta.0.len() != d.0.len() {
        return Err(QuiverError::LengthMismatch);
    }
    Ok(theta
        .0
        .iter()
        .zip(d.0.iter())
        .map(|(&t, &x)| t * x as i64)
        .sum())
}

/// Builds the dimension vector and stability parameter attached to an
/// ordered list of summand ranks whose first entry is the structure sheaf:
/// `d = ranks`, `theta_0 = -sum_{i>=1} ranks_i`, `theta_i = 1` otherwise.
/// `theta . d = 0` holds by construction and is asserted.
pub fn karmazyn_data(ranks: &[u64]) -> Result<(DimVector, StabilityParam), QuiverError> {
    match ranks.first() {
        Some(&1) => {}
        Some(&r) => return Err(QuiverError::FirstRankNotOne(r)),
        None => return Err(QuiverError::FirstRankNotOne(0)),
    }
    if ranks.iter().any(|&r| r == 0) {
        return Err(QuiverError::ZeroRank);
    }
    let d = DimVector(ranks.to_vec());
    let tail: i64 = ranks[1..].iter().map(|&r| r as i64).sum();
    let mut theta = vec![1i64; ranks.len()];
    theta[0] = -tail;
    let theta = StabilityParam(theta);
    assert_eq!(pairing(&theta, &d)?, 0);
    Ok((d, theta))
}

/// Number of proper nonzero subvectors `0 <= d' <= d`.
pub fn candidate_count(d: &DimVector) -> u64 {
    d.0.iter().map(|&x| x + 1).product::<u64>() - 2
}

fn subvector_at(d: &DimVector, mut index: u64) -> DimVector {
    let mut out = Vec::with_capacity(d.0.len());
    for &x in &d.0 {
        out.push(index % (x + 1));
        index /= x + 1;
    }
    DimVector(out)
}

/// Exhaustive search for a strictly semistable witness: a proper nonzero
/// subvector `d'` with `theta . d' = 0`. Returns the lexicographically first
/// witness, or `None` when stability is strict everywhere.
pub fn strict_semistable_exists(
    d: &DimVector,
    theta: &StabilityParam,
) -> Result<Option<DimVector>, QuiverError> {
    strict_semistable_exists_exec(d, theta, Exec::default())
}

/// As [`strict_semistable_exists`], with an explicit execution strategy.
pub fn strict_semistable_exists_exec(
    d: &DimVector,
    theta: &StabilityParam,
    exec: Exec,
) -> Result<Option<DimVector>, QuiverError> {
    let t = pairing(theta, d)?;
    if t != 0 {
        return Err(QuiverError::PairingNonzero(t));
    }
    let total: u64 = d.0.iter().map(|&x| x + 1).product();
    // Candidate blocks enumerate the odometer index space; the merge takes
    // the lexicographically least witness, so the result is deterministic.
    let block = 4096u64;
    let blocks: Vec<(u64, u64)> = (0..total)
        .step_by(block as usize)
        .map(|lo| (lo, (lo + block).min(total)))
        .collect();
    let witnesses = map_indexed(exec, blocks, |(lo, hi)| {
        let mut best: Option<DimVector> = None;
        for idx in lo..hi {
            let cand = subvector_at(d, idx);
            if cand.0.iter().all(|&x| x == 0) || cand == *d {
                continue;
            }
            if pairing(theta, &cand).expect("lengths match") == 0 {
                match &best {
                    Some(b) if *b <= cand => {}
                    _ => best = Some(cand),
                }
            }
        }
        best
    });
    Ok(witnesses.into_iter().flatten().min())
}

/// Degree-0 Hom data of a collection: entry `(i, j)` lists, level by level,
/// the dimension of the degree-0 part of `Ext(E_i, E_j)` up to a common
/// cutoff. Exact for descriptor pullbacks, honest hulls for filtered pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomMatrix {
    pub collection: String,
    pub summands: Vec<String>,
    /// `entries[i][j][k]` is the level-`k` degree-0 value of `Ext(E_i, E_j)`.
    pub entries: Vec<Vec<Vec<DimValue>>>,
    pub cutoff: u64,
}

/// Computes the degree-0 Hom matrix of a collection at a uniform cutoff.
pub fn hom_matrix(c: &Collection, opts: &ExtOptions) -> Result<HomMatrix, crate::cohom::CohomError> {
    let n = c.summands.len();
    let compute = |cut: Option<u64>| -> Result<Vec<Vec<crate::cohom::ExtEntry>>, crate::cohom::CohomError> {
        let cells: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        let eo = ExtOptions { schur: opts.schur, cutoff: cut };
        let results = map_indexed(Exec::default(), cells, |(i, j)| {
            ext_summands(c.space, &c.summands[i], &c.summands[j], &eo).map(|e| (i, j, e))
        });
        let mut table: Vec<Vec<Option<crate::cohom::ExtEntry>>> = vec![vec![None; n]; n];
        for res in results {
            let (i, j, e) = res?;
            table[i][j] = Some(e);
        }
        Ok(table
            .into_iter()
            .map(|row| row.into_iter().map(|e| e.expect("filled")).collect())
            .collect())
    };
    // Two passes: the first discovers the stabilization levels so every
    // entry is reported to the same cutoff.
    let first = compute(opts.cutoff)?;
    let cutoff = first
        .iter()
        .flat_map(|row| row.iter().map(|e| e.cutoff))
        .max()
        .unwrap_or(0);
    let table = compute(Some(cutoff))?;
    Ok(HomMatrix {
        collection: c.name.clone(),
        summands: c.summands.iter().map(|s| s.name.clone()).collect(),
        entries: table
            .into_iter()
            .map(|row| row.into_iter().map(|e| e.h0_levels).collect())
            .collect(),
        cutoff,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohom::TotalSpace;
    use crate::tiltcert::{o_plus, r_plus};

    #[test]
    fn hom_matrix_levels() {
        let c = Collection::new(
            "probe",
            TotalSpace::YPlus,
            vec![o_plus(1), o_plus(0), r_plus(0)],
        );
        let m = hom_matrix(&c, &ExtOptions::default()).unwrap();
        // Diagonal entries contain the identity at level 0.
        for i in 0..3 {
            assert!(m.entries[i][i][0].contains(1), "diagonal {i}");
            assert_eq!(m.entries[i][i][0], DimValue::Exact(1));
        }
        // (O(1), O) starts with the sections of O(-1): none at level 0.
        assert_eq!(m.entries[0][1][0], DimValue::Exact(0));
        // (O, O) carries the full symmetric-power stream of sections.
        let direct = crate::cohom::push_coh_total(
            TotalSpace::YPlus,
            &crate::repring::BundleSum::from_descriptor(crate::repring::BundleDescriptor::G {
                k: 0,
                twist: 0,
            }),
            Some(m.cutoff),
        )
        .unwrap();
        for (k, level) in direct.h0_stream.iter().enumerate() {
            let dim: u64 = level.iter().map(|(l, mult)| l.dim() * mult).sum();
            assert_eq!(m.entries[1][1][k], DimValue::Exact(dim), "level {k}");
        }
    }

    #[test]
    fn karmazyn_examples() {
        let (d, theta) = karmazyn_data(&[1, 1, 1, 2, 2, 4]).unwrap();
        assert_eq!(d, DimVector(vec![1, 1, 1, 2, 2, 4]));
        assert_eq!(theta, StabilityParam(vec![-10, 1, 1, 1, 1, 1]));
        let (d, theta) = karmazyn_data(&[1, 1]).unwrap();
        assert_eq!(d, DimVector(vec![1, 1]));
        assert_eq!(theta, StabilityParam(vec![-1, 1]));
        assert_eq!(
            karmazyn_data(&[2, 1]),
            Err(QuiverError::FirstRankNotOne(2))
        );
    }

    #[test]
    fn candidate_counts() {
        assert_eq!(candidate_count(&DimVector(vec![1, 1, 1, 2, 2, 4])), 358);
        assert_eq!(candidate_count(&DimVector(vec![1, 1])), 2);
    }

    #[test]
    fn strict_semistable_examples() {
        let (d, theta) = karmazyn_data(&[1, 1, 1, 2, 2, 4]).unwrap();
        assert_eq!(strict_semistable_exists(&d, &theta).unwrap(), None);

        let d = DimVector(vec![2, 2]);
        let theta = StabilityParam(vec![1, -1]);
        assert_eq!(
            strict_semistable_exists(&d, &theta).unwrap(),
            Some(DimVector(vec![1, 1]))
        );

        let d = DimVector(vec![1, 1]);
        let theta = StabilityParam(vec![1, -1]);
        assert_eq!(strict_semistable_exists(&d, &theta).unwrap(), None);

        let theta = StabilityParam(vec![1, 1]);
        assert!(matches!(
            strict_semistable_exists(&d, &theta),
            Err(QuiverError::PairingNonzero(2))
        ));
    }

    #[test]
    fn enumeration_order_does_not_matter() {
        // Determinism oracle: a reversed enumeration returns the same verdict.
        let (d, theta) = karmazyn_data(&[1, 1, 1, 2, 2, 4]).unwrap();
        let total: u64 = d.0.iter().map(|&x| x + 1).product();
        let mut reversed_witness = None;
        for idx in (0..total).rev() {
            let cand = subvector_at(&d, idx);
            if cand.0.iter().all(|&x| x == 0) || cand == d {
                continue;
            }
            if pairing(&theta, &cand).unwrap() == 0 {
                reversed_witness = Some(cand);
            }
        }
        assert_eq!(reversed_witness, strict_semistable_exists(&d, &theta).unwrap());
        assert_eq!(
            strict_semistable_exists_exec(&d, &theta, Exec::Sequential).unwrap(),
            strict_semistable_exists_exec(&d, &theta, Exec::Parallel).unwrap()
        );
    }
}
