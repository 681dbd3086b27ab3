//! Ext tables between pulled-back and filtered objects on the total spaces.
//!
//! `Ext^i(A, B)` is the cohomology of `A^v (x) B`. For descriptor pullbacks
//! this is a single exact stream computation. When either side is filtered,
//! the tensor product is filtered by the pairwise products of the graded
//! pieces, and the bounds fold of [`super::bounds`] applies. The chain is
//! chosen canonically from the unordered pair of factor sequences, so that
//! `Ext(A, B)` and `Ext(B^v, A^v)` — the same tensor sheaf — produce
//! identical bounds and duality symmetry holds by construction.

use serde::{Deserialize, Serialize};

use super::bounds::fold_pieces;
use super::stream::DEFAULT_H0_CUTOFF;
use super::{
    CohomError, DimValue, FilteredSheaf, GradedDims, IrrepMultiset, SheafSpace, StreamCoh,
    TotalSpace,
};
use crate::repring::BundleSum;

/// Options for Ext computations.
#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize)]
pub struct ExtOptions {
    pub schur: bool,
    pub cutoff: Option<u64>,
}

/// One Ext entry: bounds in degrees 1..=6 plus the degree-0 stream levels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtEntry {
    pub higher: GradedDims,
    pub hull: std::collections::BTreeMap<u8, IrrepMultiset>,
    pub h0_levels: Vec<DimValue>,
    pub k0: u64,
    pub cutoff: u64,
    /// True when every reported value is exact (descriptor-sum inputs).
    pub exact: bool,
}

impl ExtEntry {
    /// All of `Ext^i` for `i >= from` pinned to exactly zero.
    pub fn vanishes_from(&self, from: u8) -> bool {
        (from..=6).all(|d| self.higher.at(d) == DimValue::Exact(0))
    }

    /// All of `Ext^i` for `i >= from` consistent with zero.
    pub fn admits_zero_from(&self, from: u8) -> bool {
        (from..=6).all(|d| self.higher.at(d).contains(0))
    }
}

fn entry_from_stream(s: &StreamCoh, cutoff: Option<u64>) -> ExtEntry {
    let cutoff = s.k0().max(cutoff.unwrap_or(DEFAULT_H0_CUTOFF));
    let mut higher = GradedDims::default();
    let mut hull = std::collections::BTreeMap::new();
    for d in 1..=6u8 {
        higher.set(d, DimValue::Exact(s.dim_higher(d)));
        if let Some(ms) = s.higher().at(d) {
            hull.insert(d, ms.clone());
        }
    }
    let h0_levels = (0..=cutoff)
        .map(|k| DimValue::Exact(s.h0_level_dim(k)))
        .collect();
    ExtEntry { higher, hull, h0_levels, k0: s.k0(), cutoff, exact: true }
}

/// Canonical graded pieces of `X (x) Y` for two filtrations on one base:
/// the outer factor sequence is the smaller of the two under `(len, data)`,
/// which makes the chain a function of the unordered pair.
fn tensor_pieces(xs: &[BundleSum], ys: &[BundleSum]) -> Result<Vec<BundleSum>, CohomError> {
    let key = |v: &[BundleSum]| (v.len(), v.to_vec());
    let (outer, inner) = if key(xs) <= key(ys) { (xs, ys) } else { (ys, xs) };
    let mut pieces = Vec::with_capacity(outer.len() * inner.len());
    for x in outer {
        for y in inner {
            pieces.push(x.tensor(y)?);
        }
    }
    Ok(pieces)
}

/// `Ext^*(A, B)` between two objects presented over the same total space.
pub fn ext_pair(
    space: TotalSpace,
    a: &FilteredSheaf,
    b: &FilteredSheaf,
    opts: &ExtOptions,
) -> Result<ExtEntry, CohomError> {
    for s in [a, b] {
        s.validate()?;
        if s.space != SheafSpace::Total(space) {
            return Err(CohomError::BaseMismatch { expected: space.base(), got: s.space.base() });
        }
    }
    let dual_a = a.dualized();
    if dual_a.factors.len() == 1 && b.factors.len() == 1 {
        let product = dual_a.factors[0].tensor(&b.factors[0])?;
        let stream = StreamCoh::compute(space, &product)?;
        return Ok(entry_from_stream(&stream, opts.cutoff));
    }
    let pieces = tensor_pieces(&dual_a.factors, &b.factors)?;
    let (acc, streams) = fold_pieces(space, &pieces, opts.schur)?;
    let k0 = streams.iter().map(StreamCoh::k0).max().unwrap_or(0);
    let cutoff = k0.max(opts.cutoff.unwrap_or(DEFAULT_H0_CUTOFF));
    let mut higher = GradedDims::default();
    let mut hull = std::collections::BTreeMap::new();
    let mut exact = true;
    for d in 1..=6u8 {
        let v = acc.value(d);
        exact &= v.is_exact();
        higher.set(d, v);
        if !acc.hull[d as usize].is_empty() {
            hull.insert(d, acc.hull[d as usize].clone());
        }
    }
    let mut h0_levels = Vec::with_capacity(cutoff as usize + 1);
    for k in 0..=cutoff {
        let hi: u64 = streams.iter().map(|s| s.h0_level_dim(k)).sum();
        let lo = hi.saturating_sub(acc.h0_drop_cap);
        let v = DimValue::new(lo, hi);
        exact &= v.is_exact();
        h0_levels.push(v);
    }
    Ok(ExtEntry { higher, hull, h0_levels, k0, cutoff, exact })
}

/// Full Ext matrix of an ordered list of descriptor-sum pullbacks; every
/// entry is exact.
pub fn ext_table(
    space: TotalSpace,
    collection: &[BundleSum],
    opts: &ExtOptions,
) -> Result<Vec<Vec<ExtEntry>>, CohomError> {
    let sheaves: Vec<FilteredSheaf> = collection
        .iter()
        .map(|s| FilteredSheaf::single(SheafSpace::Total(space), s.clone()))
        .collect();
    let n = sheaves.len();
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let entries = crate::par::map_indexed(crate::par::Exec::default(), cells, |(i, j)| {
        ext_pair(space, &sheaves[i], &sheaves[j], opts).map(|e| (i, j, e))
    });
    let mut table: Vec<Vec<Option<ExtEntry>>> = vec![vec![None; n]; n];
    for res in entries {
        let (i, j, e) = res?;
        table[i][j] = Some(e);
    }
    Ok(table
        .into_iter()
        .map(|row| row.into_iter().map(|e| e.expect("filled")).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repring::BundleDescriptor;

    fn gsum(k: u32, twist: i64) -> BundleSum {
        BundleSum::from_descriptor(BundleDescriptor::G { k, twist })
    }
    fn single(space: TotalSpace, s: BundleSum) -> FilteredSheaf {
        FilteredSheaf::single(SheafSpace::Total(space), s)
    }

    // The tautological rank-2 pullback and its twists on the plus side.
    fn r_twist(a: i64) -> BundleSum {
        gsum(1, a - 1)
    }
    fn o_twist(a: i64) -> BundleSum {
        gsum(0, a)
    }

    #[test]
    fn ext_one_between_taut_twists() {
        // Ext^1(R, R(-2)) is one-dimensional, all higher Ext vanish.
        let opts = ExtOptions::default();
        let e = ext_pair(
            TotalSpace::YPlus,
            &single(TotalSpace::YPlus, r_twist(0)),
            &single(TotalSpace::YPlus, r_twist(-2)),
            &opts,
        )
        .unwrap();
        assert!(e.exact);
        assert_eq!(e.higher.at(1), DimValue::Exact(1));
        for d in 2..=6 {
            assert_eq!(e.higher.at(d), DimValue::Exact(0));
        }
        let ms = e.hull.get(&1).unwrap();
        assert_eq!(ms.len(), 1);
        let (label, mult) = ms.iter().next().unwrap();
        assert_eq!((label.weight().a, label.weight().b, *mult), (0, 0, 1));
    }

    #[test]
    fn ext_vanishing_windows() {
        let opts = ExtOptions::default();
        // Ext^{>=1}(R, O(a)) = 0 for a >= -3.
        for a in -3..=4 {
            let e = ext_pair(
                TotalSpace::YPlus,
                &single(TotalSpace::YPlus, r_twist(0)),
                &single(TotalSpace::YPlus, o_twist(a)),
                &opts,
            )
            .unwrap();
            assert!(e.vanishes_from(1), "a={a}");
        }
        // Ext^{>=1}(R, R(a)) = 0 for a >= -1.
        for a in -1..=6 {
            let e = ext_pair(
                TotalSpace::YPlus,
                &single(TotalSpace::YPlus, r_twist(0)),
                &single(TotalSpace::YPlus, r_twist(a)),
                &opts,
            )
            .unwrap();
            assert!(e.vanishes_from(1), "a={a}");
        }
    }

    #[test]
    fn self_ext_of_structure_sheaf() {
        let opts = ExtOptions::default();
        for space in [TotalSpace::YPlus, TotalSpace::YMinus, TotalSpace::YTot] {
            let o = BundleSum::from_descriptor(space.sym_term(0));
            let e = ext_pair(space, &single(space, o.clone()), &single(space, o), &opts).unwrap();
            assert!(e.vanishes_from(1), "{space}");
            assert!(e.h0_levels[0] == DimValue::Exact(1), "{space}");
            assert!(e.h0_levels.iter().any(|v| v.hi() > 0));
        }
    }

    #[test]
    fn duality_transpose_on_exact_tables() {
        // Entry (i,j) equals entry (dual j, dual i) degreewise.
        let opts = ExtOptions::default();
        let coll = vec![r_twist(-1), o_twist(-1), r_twist(0), o_twist(0), r_twist(1), o_twist(1)];
        let table = ext_table(TotalSpace::YPlus, &coll, &opts).unwrap();
        let dual_coll: Vec<BundleSum> = coll.iter().map(|s| s.dualized()).collect();
        let dual_table = ext_table(TotalSpace::YPlus, &dual_coll, &opts).unwrap();
        for i in 0..coll.len() {
            for j in 0..coll.len() {
                assert_eq!(table[i][j].higher, dual_table[j][i].higher, "({i},{j})");
            }
        }
    }

    #[test]
    fn filtered_self_ext_bounds() {
        // The rank-4 extension [R(-1), R(1)]: its four descriptor-pair Ext
        // entries are exact, degree >= 2 self-Ext is pinched to zero, and
        // degree 1 is the one-dimensional hull.
        let opts = ExtOptions::default();
        let sigma = FilteredSheaf::new(
            SheafSpace::Total(TotalSpace::YPlus),
            vec![r_twist(-1), r_twist(1)],
            vec![true],
        )
        .unwrap();
        for (x, y) in [(-1, -1), (-1, 1), (1, -1), (1, 1)] {
            let e = ext_pair(
                TotalSpace::YPlus,
                &single(TotalSpace::YPlus, r_twist(x)),
                &single(TotalSpace::YPlus, r_twist(y)),
                &opts,
            )
            .unwrap();
            assert!(e.exact, "({x},{y})");
        }
        let e = ext_pair(TotalSpace::YPlus, &sigma, &sigma, &opts).unwrap();
        for d in 2..=6 {
            assert_eq!(e.higher.at(d), DimValue::Exact(0), "degree {d}");
        }
        assert_eq!(e.higher.at(1), DimValue::Interval(0, 1));

        // Dual-pair symmetry for the filtered object as well.
        let e_dual = ext_pair(TotalSpace::YPlus, &sigma.dualized(), &sigma.dualized(), &opts).unwrap();
        assert_eq!(e.higher, e_dual.higher);
    }
}
