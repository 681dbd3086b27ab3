//! Bundle descriptors and representation-ring arithmetic.
//!
//! An irreducible equivariant bundle on one of the three proper spaces is
//! written as a symmetric power of the tautological rank-two bundle dual
//! (`R^v` on the Grassmannian `G`, the Cayley dual `C^v` on the quadric `Q`)
//! with a line-bundle twist, or as a line bundle `O_F(aH + bh)` on the flag
//! variety. The weight dictionary is
//!
//! ```text
//! G: Sym^k R^v (t)   <->  t*pi1 + k*pi2
//! Q: Sym^k C^v (t)   <->  k*pi1 + (t-k)*pi2
//! F: O(aH + bh)      <->  a*pi1 + b*pi2
//! ```
//!
//! Tensor products on `G` and `Q` follow the rank-2 Clebsch-Gordan rule with
//! a determinant twist (`det R^v = O_G(1)`, `det C^v = O_Q(1)`); on `F` line
//! bundles multiply by adding twists.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rootdata::Weight;

/// One of the three proper homogeneous spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Space {
    G,
    Q,
    F,
}

impl Space {
    pub fn dimension(self) -> u8 {
        match self {
            Space::G | Space::Q => 5,
            Space::F => 6,
        }
    }

    /// The canonical line bundle, as a descriptor.
    pub fn canonical(self) -> BundleDescriptor {
        match self {
            Space::G => BundleDescriptor::G { k: 0, twist: -3 },
            Space::Q => BundleDescriptor::Q { k: 0, twist: -5 },
            Space::F => BundleDescriptor::F { a: -2, b: -2 },
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::G => write!(f, "G"),
            Space::Q => write!(f, "Q"),
            Space::F => write!(f, "F"),
        }
    }
}

/// An irreducible equivariant bundle on `G`, `Q` or `F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "space")]
pub enum BundleDescriptor {
    G { k: u32, twist: i64 },
    Q { k: u32, twist: i64 },
    F { a: i64, b: i64 },
}

impl BundleDescriptor {
    pub fn space(self) -> Space {
        match self {
            BundleDescriptor::G { .. } => Space::G,
            BundleDescriptor::Q { .. } => Space::Q,
            BundleDescriptor::F { .. } => Space::F,
        }
    }

    /// The weight of the bundle under the dictionary above.
    pub fn weight(self) -> Weight {
        match self {
            BundleDescriptor::G { k, twist } => Weight::new(twist, k as i64),
            BundleDescriptor::Q { k, twist } => Weight::new(k as i64, twist - k as i64),
            BundleDescriptor::F { a, b } => Weight::new(a, b),
        }
    }

    /// Inverse dictionary; `None` when no equivariant bundle with that weight
    /// exists on the space (negative symmetric power).
    pub fn from_weight(space: Space, w: Weight) -> Option<Self> {
        match space {
            Space::G => (w.b >= 0).then(|| BundleDescriptor::G { k: w.b as u32, twist: w.a }),
            Space::Q => (w.a >= 0).then(|| BundleDescriptor::Q {
                k: w.a as u32,
                twist: w.a + w.b,
            }),
            Space::F => Some(BundleDescriptor::F { a: w.a, b: w.b }),
        }
    }

    pub fn rank(self) -> u64 {
        match self {
            BundleDescriptor::G { k, .. } | BundleDescriptor::Q { k, .. } => k as u64 + 1,
            BundleDescriptor::F { .. } => 1,
        }
    }

    /// Twists by the `t`-th power of the ample generator (`O(t)` on `G`/`Q`,
    /// `O(tH + th)`... not meaningful on `F`; use [`Self::twist_f`] there).
    pub fn twist_line(self, t: i64) -> Self {
        match self {
            BundleDescriptor::G { k, twist } => BundleDescriptor::G { k, twist: twist + t },
            BundleDescriptor::Q { k, twist } => BundleDescriptor::Q { k, twist: twist + t },
            BundleDescriptor::F { .. } => panic!("line twist on F needs a pair; use twist_f"),
        }
    }

    /// Twists an `F`-line bundle by `O_F(aH + bh)`.
    pub fn twist_f(self, a: i64, b: i64) -> Self {
        match self {
            BundleDescriptor::F { a: x, b: y } => BundleDescriptor::F { a: x + a, b: y + b },
            _ => panic!("twist_f only applies on F"),
        }
    }
}

impl fmt::Display for BundleDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BundleDescriptor::G { k: 0, twist } | BundleDescriptor::Q { k: 0, twist } => {
                write!(f, "O({twist})")
            }
            BundleDescriptor::G { k: 1, twist } => write!(f, "R^v({twist})"),
            BundleDescriptor::G { k, twist } => write!(f, "Sym^{k}R^v({twist})"),
            BundleDescriptor::Q { k: 1, twist } => write!(f, "C^v({twist})"),
            BundleDescriptor::Q { k, twist } => write!(f, "Sym^{k}C^v({twist})"),
            BundleDescriptor::F { a, b } => write!(f, "O({a},{b})"),
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RepringError {
    #[error("tensor factors live on different spaces: {0} vs {1}")]
    MixedSpaces(Space, Space),
    #[error("weight {0} is not dominant")]
    NonDominant(Weight),
}

/// A formal nonnegative combination of descriptors on a single space.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BundleSum {
    space: Space,
    terms: BTreeMap<BundleDescriptor, u64>,
}

impl BundleSum {
    pub fn zero(space: Space) -> Self {
        BundleSum { space, terms: BTreeMap::new() }
    }

    pub fn from_descriptor(d: BundleDescriptor) -> Self {
        let mut s = BundleSum::zero(d.space());
        s.add(d, 1);
        s
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn add(&mut self, d: BundleDescriptor, mult: u64) {
        assert_eq!(d.space(), self.space, "descriptor space mismatch");
        if mult > 0 {
            *self.terms.entry(d).or_insert(0) += mult;
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (BundleDescriptor, u64)> + '_ {
        self.terms.iter().map(|(d, m)| (*d, *m))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn rank(&self) -> u64 {
        self.terms().map(|(d, m)| d.rank() * m).sum()
    }

    pub fn multiplicity_of(&self, d: &BundleDescriptor) -> u64 {
        self.terms.get(d).copied().unwrap_or(0)
    }

    pub fn dualized(&self) -> Self {
        let mut out = BundleSum::zero(self.space);
        for (d, m) in self.terms() {
            out.add(dualize(d), m);
        }
        out
    }

    pub fn twisted_line(&self, t: i64) -> Self {
        let mut out = BundleSum::zero(self.space);
        for (d, m) in self.terms() {
            out.add(d.twist_line(t), m);
        }
        out
    }

    pub fn twisted_f(&self, a: i64, b: i64) -> Self {
        let mut out = BundleSum::zero(self.space);
        for (d, m) in self.terms() {
            out.add(d.twist_f(a, b), m);
        }
        out
    }

    pub fn plus(&self, other: &Self) -> Self {
        assert_eq!(self.space, other.space);
        let mut out = self.clone();
        for (d, m) in other.terms() {
            out.add(d, m);
        }
        out
    }

    pub fn tensor(&self, other: &Self) -> Result<Self, RepringError> {
        if self.space != other.space {
            return Err(RepringError::MixedSpaces(self.space, other.space));
        }
        let mut out = BundleSum::zero(self.space);
        for (x, mx) in self.terms() {
            for (y, my) in other.terms() {
                for (d, m) in tensor_decompose(x, y)?.terms() {
                    out.add(d, m * mx * my);
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for BundleSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, m) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m == 1 {
                write!(f, "{d}")?;
            } else {
                write!(f, "{m}*{d}")?;
            }
        }
        Ok(())
    }
}

/// Rank-2 Clebsch-Gordan with determinant twist:
/// `Sym^m W(s) (x) Sym^n W(t) = (+)_{j=0..min(m,n)} Sym^{m+n-2j} W(s+t+j)`.
pub fn tensor_decompose(
    x: BundleDescriptor,
    y: BundleDescriptor,
) -> Result<BundleSum, RepringError> {
    if x.space() != y.space() {
        return Err(RepringError::MixedSpaces(x.space(), y.space()));
    }
    let mut out = BundleSum::zero(x.space());
    match (x, y) {
        (BundleDescriptor::G { k: m, twist: s }, BundleDescriptor::G { k: n, twist: t }) => {
            for j in 0..=m.min(n) {
                out.add(
                    BundleDescriptor::G { k: m + n - 2 * j, twist: s + t + j as i64 },
                    1,
                );
            }
        }
        (BundleDescriptor::Q { k: m, twist: s }, BundleDescriptor::Q { k: n, twist: t }) => {
            for j in 0..=m.min(n) {
                out.add(
                    BundleDescriptor::Q { k: m + n - 2 * j, twist: s + t + j as i64 },
                    1,
                );
            }
        }
        (BundleDescriptor::F { a, b }, BundleDescriptor::F { a: c, b: d }) => {
            out.add(BundleDescriptor::F { a: a + c, b: b + d }, 1);
        }
        _ => unreachable!("space equality checked above"),
    }
    Ok(out)
}

/// The dual bundle. On both `G` and `Q` the rule is `(k, t) -> (k, -t-k)`
/// (from `R^v = R(1)` resp. `C = C^v(-1)`); on `F`, `(a, b) -> (-a, -b)`.
/// It is an involution, and `x (x) dualize(x)` contains the trivial summand
/// exactly once.
pub fn dualize(x: BundleDescriptor) -> BundleDescriptor {
    match x {
        BundleDescriptor::G { k, twist } => BundleDescriptor::G { k, twist: -twist - k as i64 },
        BundleDescriptor::Q { k, twist } => BundleDescriptor::Q { k, twist: -twist - k as i64 },
        BundleDescriptor::F { a, b } => BundleDescriptor::F { a: -a, b: -b },
    }
}

/// A dominant weight labelling an irreducible representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IrrepLabel(Weight);

impl IrrepLabel {
    pub fn new(w: Weight) -> Result<Self, RepringError> {
        if w.is_dominant() {
            Ok(IrrepLabel(w))
        } else {
            Err(RepringError::NonDominant(w))
        }
    }

    pub fn weight(self) -> Weight {
        self.0
    }

    pub fn dim(self) -> u64 {
        dim_irrep(self.0).expect("label is dominant by construction")
    }
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Dimension of the irreducible representation with the given dominant
/// highest weight, by the Weyl product over the six positive roots. The
/// rational product always clears to an integer; this is asserted.
pub fn dim_irrep(hw: Weight) -> Result<u64, RepringError> {
    if !hw.is_dominant() {
        return Err(RepringError::NonDominant(hw));
    }
    let num: i128 = hw
        .plus_rho()
        .root_pairings()
        .iter()
        .map(|&p| p as i128)
        .product();
    // Product over rho itself: 1*1*2*3*4*5 = 120.
    let den: i128 = crate::rootdata::RHO
        .root_pairings()
        .iter()
        .map(|&p| p as i128)
        .product();
    assert_eq!(num % den, 0, "Weyl dimension product must clear to an integer");
    let dim = num / den;
    assert!(dim > 0);
    Ok(dim as u64)
}

/// Graded dimension of the bidegree-`(a,b)` piece of the section ring of the
/// flag variety: `dim V_(a,b)` for dominant `(a,b)`, zero otherwise.
pub fn cox_dimension(a: i64, b: i64) -> u64 {
    let w = Weight::new(a, b);
    if w.is_dominant() {
        dim_irrep(w).expect("dominant")
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::Weight;

    fn g(k: u32, twist: i64) -> BundleDescriptor {
        BundleDescriptor::G { k, twist }
    }
    fn q(k: u32, twist: i64) -> BundleDescriptor {
        BundleDescriptor::Q { k, twist }
    }
    fn f(a: i64, b: i64) -> BundleDescriptor {
        BundleDescriptor::F { a, b }
    }

    #[test]
    fn weight_dictionary() {
        assert_eq!(g(3, -2).weight(), Weight::new(-2, 3));
        assert_eq!(q(2, 0).weight(), Weight::new(2, -2));
        assert_eq!(f(2, -2).weight(), Weight::new(2, -2));
        for k in 0..5u32 {
            for t in -4..=4 {
                for sp in [Space::G, Space::Q] {
                    let d = match sp {
                        Space::G => g(k, t),
                        Space::Q => q(k, t),
                        Space::F => unreachable!(),
                    };
                    assert_eq!(BundleDescriptor::from_weight(sp, d.weight()), Some(d));
                }
            }
        }
        assert_eq!(BundleDescriptor::from_weight(Space::G, Weight::new(0, -1)), None);
        assert_eq!(BundleDescriptor::from_weight(Space::Q, Weight::new(-1, 0)), None);
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dim_irrep(Weight::new(0, 0)).unwrap(), 1);
        assert_eq!(dim_irrep(Weight::new(0, 1)).unwrap(), 7);
        assert_eq!(dim_irrep(Weight::new(1, 0)).unwrap(), 14);
        assert_eq!(dim_irrep(Weight::new(1, 1)).unwrap(), 64);
        assert_eq!(dim_irrep(Weight::new(0, 2)).unwrap(), 27);
        assert_eq!(dim_irrep(Weight::new(2, 0)).unwrap(), 77);
        assert!(dim_irrep(Weight::new(-1, 0)).is_err());
    }

    #[test]
    fn tensor_examples() {
        // R^v (x) R(a) on G: R = R^v(-1).
        for a in -3..=3 {
            let got = tensor_decompose(g(1, 0), g(1, a - 1)).unwrap();
            let mut want = BundleSum::zero(Space::G);
            want.add(g(2, a - 1), 1);
            want.add(g(0, a), 1);
            assert_eq!(got, want);
        }
        // Sym^k R^v(k) (x) Sym^2 R^v(a-1), k >= 2.
        for k in 2..=6u32 {
            for a in -2..=2 {
                let got = tensor_decompose(g(k, k as i64), g(2, a - 1)).unwrap();
                let mut want = BundleSum::zero(Space::G);
                want.add(g(k + 2, k as i64 + a - 1), 1);
                want.add(g(k, k as i64 + a), 1);
                want.add(g(k - 2, k as i64 + a + 1), 1);
                assert_eq!(got, want);
            }
        }
        // Unit of the tensor product on Q.
        let got = tensor_decompose(q(0, 0), q(3, 2)).unwrap();
        assert_eq!(got, BundleSum::from_descriptor(q(3, 2)));
        assert!(tensor_decompose(g(1, 0), q(1, 0)).is_err());
    }

    #[test]
    fn dualize_examples_and_involution() {
        assert_eq!(dualize(g(1, 0)), g(1, -1)); // R^v dual is R = R^v(-1)
        assert_eq!(dualize(f(0, 0)), f(0, 0));
        // Pinned by the unit-summand oracle below rather than by fiat:
        assert_eq!(dualize(q(1, 1)), q(1, -2));
        for k in 0..5u32 {
            for t in -5..=5 {
                for d in [g(k, t), q(k, t)] {
                    assert_eq!(dualize(dualize(d)), d);
                }
            }
        }
        for a in -4..=4 {
            for b in -4..=4 {
                assert_eq!(dualize(dualize(f(a, b))), f(a, b));
            }
        }
    }

    #[test]
    fn unit_summand_oracle() {
        // x (x) dualize(x) contains the trivial descriptor exactly once.
        for k in 0..6u32 {
            for t in -5..=5 {
                for (d, unit) in [(g(k, t), g(0, 0)), (q(k, t), q(0, 0))] {
                    let prod = tensor_decompose(d, dualize(d)).unwrap();
                    assert_eq!(prod.multiplicity_of(&unit), 1, "{d:?}");
                }
            }
        }
    }

    #[test]
    fn rank_multiplicativity() {
        for m in 0..6u32 {
            for n in 0..6u32 {
                for (x, y) in [(g(m, 2), g(n, -3)), (q(m, 0), q(n, 5))] {
                    let prod = tensor_decompose(x, y).unwrap();
                    assert_eq!(prod.rank(), x.rank() * y.rank(), "{x:?} {y:?}");
                }
            }
        }
    }

    #[test]
    fn tensor_commutes_as_multiset() {
        for m in 0..5u32 {
            for n in 0..5u32 {
                for s in -3..=3 {
                    let (x, y) = (g(m, s), g(n, -s + 1));
                    assert_eq!(
                        tensor_decompose(x, y).unwrap(),
                        tensor_decompose(y, x).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn cox_dimension_examples() {
        assert_eq!(cox_dimension(0, 1), 7);
        assert_eq!(cox_dimension(-1, 0), 0);
        assert_eq!(cox_dimension(1, 0), 14);
    }

    #[test]
    fn descriptor_json_shapes() {
        let d = g(2, -1);
        assert_eq!(
            serde_json::to_string(&d).unwrap(),
            r#"{"space":"G","k":2,"twist":-1}"#
        );
        let d = f(1, -2);
        assert_eq!(serde_json::to_string(&d).unwrap(), r#"{"space":"F","a":1,"b":-2}"#);
        let back: BundleDescriptor =
            serde_json::from_str(r#"{"space":"Q","k":0,"twist":4}"#).unwrap();
        assert_eq!(back, q(0, 4));
    }

    #[test]
    fn canonical_bundles() {
        assert_eq!(Space::G.canonical(), g(0, -3));
        assert_eq!(Space::Q.canonical(), q(0, -5));
        assert_eq!(Space::F.canonical(), f(-2, -2));
    }
}
