//! Pushforward cohomology on the total spaces.
//!
//! For a descriptor sum `E` on the base, the cohomology over the total space
//! splits as a sum over the symmetric powers of the bundle defining it:
//!
//! ```text
//! Y+ over G: H^i( E (x) Sym^k R^v (k)   )   summed over k >= 0
//! Y- over Q: H^i( E (x) Sym^k C^v (2k)  )
//! Y  over F: H^i( E (x) O(kH + kh)      )
//! ```
//!
//! In every case the Clebsch-Gordan summands form finitely many *families*
//! whose weight at level `k` is `(c + k, d + k)`: both coordinates grow with
//! slope one, so each family is dominant (degree-0 only) past an explicit
//! threshold, and higher cohomology is a finite exact total. Degree zero is
//! an infinite stream reported level by level, with the symbolic family data
//! retained so that per-irreducible queries stay exact beyond any cutoff.

use serde::{Deserialize, Serialize};

use super::{multiset_dim, CohomError, CohResult, IrrepMultiset, TotalSpace};
use crate::repring::{BundleDescriptor, BundleSum, IrrepLabel};
use crate::rootdata::{bbw_normalize, BbwNormalForm, Weight};

/// One Clebsch-Gordan family: at level `k >= k_lo` it contributes the
/// irreducible of weight `(c + k, d + k)` with the given multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct H0Family {
    pub c: i64,
    pub d: i64,
    pub k_lo: u64,
    pub mult: u64,
}

impl H0Family {
    pub fn weight_at(&self, k: u64) -> Weight {
        Weight::new(self.c + k as i64, self.d + k as i64)
    }

    /// First level at which the family weight is dominant.
    pub fn k_dominant(&self) -> u64 {
        let need = (-self.c).max(-self.d).max(0) as u64;
        need.max(self.k_lo)
    }

    /// Multiplicity this family contributes to the total degree-0 stream at
    /// the given dominant weight.
    fn h0_mult_of(&self, w: Weight) -> u64 {
        debug_assert!(w.is_dominant());
        let k = w.a - self.c;
        if k >= 0 && w.b - self.d == k && k as u64 >= self.k_lo {
            self.mult
        } else {
            0
        }
    }
}

/// Exact cohomology of a descriptor sum pulled back to a total space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StreamCoh {
    space: TotalSpace,
    /// Exact totals in degrees >= 1, summed over the whole stream.
    higher: CohResult,
    families: Vec<H0Family>,
    /// Past this level every family is dominant, so only degree 0 survives.
    k0: u64,
}

fn families_of(space: TotalSpace, e: &BundleSum) -> Result<Vec<H0Family>, CohomError> {
    let base = space.base();
    if e.space() != base {
        return Err(CohomError::BaseMismatch { expected: base, got: e.space() });
    }
    let mut families = Vec::new();
    for (descr, mult) in e.terms() {
        match (space, descr) {
            (TotalSpace::YPlus, BundleDescriptor::G { k: m, twist: t }) => {
                for j in 0..=m as i64 {
                    families.push(H0Family {
                        c: t + j,
                        d: m as i64 - 2 * j,
                        k_lo: j as u64,
                        mult,
                    });
                }
            }
            (TotalSpace::YMinus, BundleDescriptor::Q { k: m, twist: t }) => {
                for j in 0..=m as i64 {
                    families.push(H0Family {
                        c: m as i64 - 2 * j,
                        d: t + 3 * j - m as i64,
                        k_lo: j as u64,
                        mult,
                    });
                }
            }
            (TotalSpace::YTot, BundleDescriptor::F { a, b }) => {
                families.push(H0Family { c: a, d: b, k_lo: 0, mult });
            }
            _ => unreachable!("space consistency checked above"),
        }
    }
    Ok(families)
}

impl StreamCoh {
    pub fn compute(space: TotalSpace, e: &BundleSum) -> Result<Self, CohomError> {
        let families = families_of(space, e)?;
        let k0 = families.iter().map(H0Family::k_dominant).max().unwrap_or(0);
        let mut higher = CohResult::acyclic();
        for fam in &families {
            for k in fam.k_lo..fam.k_dominant() {
                match bbw_normalize(fam.weight_at(k)) {
                    BbwNormalForm::Singular => {}
                    BbwNormalForm::Regular { length, dominant } => {
                        debug_assert!(length >= 1, "non-dominant regular weight has length >= 1");
                        higher.insert(length, IrrepLabel::new(dominant).expect("dominant"), fam.mult);
                    }
                }
            }
        }
        let out = StreamCoh { space, higher, families, k0 };
        debug_assert!(out.verify_stabilization_window(10));
        Ok(out)
    }

    pub fn space(&self) -> TotalSpace {
        self.space
    }

    pub fn higher(&self) -> &CohResult {
        &self.higher
    }

    pub fn k0(&self) -> u64 {
        self.k0
    }

    pub fn families(&self) -> &[H0Family] {
        &self.families
    }

    /// Exact dimension in a degree >= 1.
    pub fn dim_higher(&self, degree: u8) -> u64 {
        self.higher.dim(degree)
    }

    /// The degree-0 multiset contributed at level `k`.
    pub fn h0_level(&self, k: u64) -> IrrepMultiset {
        let mut out = IrrepMultiset::new();
        for fam in &self.families {
            if k >= fam.k_dominant() {
                let label = IrrepLabel::new(fam.weight_at(k)).expect("dominant by threshold");
                *out.entry(label).or_insert(0) += fam.mult;
            }
        }
        out
    }

    pub fn h0_level_dim(&self, k: u64) -> u64 {
        multiset_dim(&self.h0_level(k))
    }

    /// Whether the degree-0 stream is nonzero at all (true for any nonzero
    /// object: every family is eventually dominant).
    pub fn h0_nonzero(&self) -> bool {
        !self.families.is_empty()
    }

    /// Exact total multiplicity of one irreducible across the whole
    /// degree-0 stream; finite because family weights are strictly
    /// increasing in the level.
    pub fn h0_mult(&self, label: IrrepLabel) -> u64 {
        self.families
            .iter()
            .map(|fam| fam.h0_mult_of(label.weight()))
            .sum()
    }

    /// Per-level Euler characteristic, exact.
    pub fn euler_level(&self, k: u64) -> i64 {
        let mut chi = 0i64;
        for fam in &self.families {
            if k < fam.k_lo {
                continue;
            }
            match bbw_normalize(fam.weight_at(k)) {
                BbwNormalForm::Singular => {}
                BbwNormalForm::Regular { length, dominant } => {
                    let dim = (IrrepLabel::new(dominant).expect("dominant").dim() * fam.mult) as i64;
                    chi += if length % 2 == 0 { dim } else { -dim };
                }
            }
        }
        chi
    }

    /// Confirms that every family is dominant on `k0 < k <= k0 + window`
    /// by direct normalization, independently of the threshold formula.
    pub fn verify_stabilization_window(&self, window: u64) -> bool {
        for fam in &self.families {
            for k in (self.k0 + 1)..=(self.k0 + window) {
                if k < fam.k_lo {
                    continue;
                }
                match bbw_normalize(fam.weight_at(k)) {
                    BbwNormalForm::Regular { length: 0, .. } => {}
                    _ => return false,
                }
            }
        }
        true
    }
}

/// Reporting view of a pushforward computation: exact higher cohomology plus
/// the degree-0 stream up to a cutoff.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TotalCohResult {
    pub space: TotalSpace,
    pub higher: CohResult,
    pub h0_stream: Vec<IrrepMultiset>,
    pub stabilization_k0: u64,
    pub cutoff: u64,
}

/// Default number of degree-0 levels reported.
pub const DEFAULT_H0_CUTOFF: u64 = 12;

/// Pushforward cohomology of a descriptor sum on a total space. The higher
/// part is exact and finite; degree 0 is reported for levels
/// `k <= max(k0, cutoff)` (default cutoff 12).
pub fn push_coh_total(
    space: TotalSpace,
    e: &BundleSum,
    cutoff: Option<u64>,
) -> Result<TotalCohResult, CohomError> {
    let stream = StreamCoh::compute(space, e)?;
    let cutoff = stream.k0.max(cutoff.unwrap_or(DEFAULT_H0_CUTOFF));
    let h0_stream = (0..=cutoff).map(|k| stream.h0_level(k)).collect();
    Ok(TotalCohResult {
        space,
        higher: stream.higher.clone(),
        h0_stream,
        stabilization_k0: stream.k0,
        cutoff,
    })
}
