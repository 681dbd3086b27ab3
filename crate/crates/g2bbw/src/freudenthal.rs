//! Character-theoretic oracle: weight multiplicities by the Freudenthal
//! recursion and full tensor-product decomposition by the Racah-style
//! alternating sum over one factor's weight system.
//!
//! This module exists to cross-check [`crate::repring::dim_irrep`] and the
//! Clebsch-Gordan grid from an independent direction; the main computation
//! path never calls into it.
//!
//! The positive roots, written in weight coordinates, are the orbit data of
//! the coordinate lattice itself: long `(1,0), (-1,3), (2,-3)` and short
//! `(0,1), (1,-1), (-1,2)`, with simple roots `(2,-3)` (long) and `(-1,2)`
//! (short). These are genuine lattice vectors; weight strings step by them.

use std::collections::BTreeMap;

use crate::rootdata::{weyl_group, Weight};

/// Positive roots as weight-lattice vectors.
pub const POSITIVE_ROOTS: [Weight; 6] = [
    Weight::new(2, -3),
    Weight::new(-1, 2),
    Weight::new(1, -1),
    Weight::new(0, 1),
    Weight::new(-1, 3),
    Weight::new(1, 0),
];

/// Simple roots within [`POSITIVE_ROOTS`].
pub const SIMPLE_ROOTS: [Weight; 2] = [Weight::new(2, -3), Weight::new(-1, 2)];

/// Coefficients of `v` over the simple roots (unimodular basis of the lattice).
fn simple_coords(v: Weight) -> (i64, i64) {
    // (p,q) = c1*(2,-3) + c2*(-1,2)  =>  c1 = 2p + q, c2 = 3p + 2q.
    (2 * v.a + v.b, 3 * v.a + 2 * v.b)
}

/// The dominant representative of the linear Weyl orbit of `v`.
pub fn dominantize(v: Weight) -> Weight {
    for el in weyl_group() {
        let image = el.apply(v);
        if image.is_dominant() {
            return image;
        }
    }
    unreachable!("every orbit meets the dominant chamber")
}

/// Size of the linear Weyl orbit of a weight.
pub fn orbit_size(v: Weight) -> u64 {
    let mut images: Vec<Weight> = weyl_group().iter().map(|el| el.apply(v)).collect();
    images.sort_unstable();
    images.dedup();
    images.len() as u64
}

/// Multiplicities of the dominant weights of the irreducible representation
/// with highest weight `hw`, by the Freudenthal recursion in the exact
/// integral form `(|hw+rho|^2 - |mu+rho|^2) m_mu = 2 sum_a sum_j m_{mu+ja} <mu+ja, a>`.
pub fn dominant_weight_multiplicities(hw: Weight) -> BTreeMap<Weight, u64> {
    assert!(hw.is_dominant(), "highest weight must be dominant");
    let norm = hw.form(hw);
    // Candidate dominant weights: |mu|^2 <= |hw|^2 and hw - mu a nonnegative
    // combination of the simple roots.
    let bound_a = (0..).take_while(|&x| 6 * x * x <= norm).last().unwrap_or(0);
    let bound_b = (0..).take_while(|&x| 2 * x * x <= norm).last().unwrap_or(0);
    let mut candidates: Vec<Weight> = Vec::new();
    for a in 0..=bound_a {
        for b in 0..=bound_b {
            let mu = Weight::new(a, b);
            let (c1, c2) = simple_coords(Weight::new(hw.a - a, hw.b - b));
            if c1 >= 0 && c2 >= 0 && mu.form(mu) <= norm {
                candidates.push(mu);
            }
        }
    }
    // Process by increasing height of hw - mu so the recursion only looks up
    // weights already computed.
    candidates.sort_by_key(|mu| {
        let (c1, c2) = simple_coords(Weight::new(hw.a - mu.a, hw.b - mu.b));
        (c1 + c2, mu.a, mu.b)
    });

    let mut mult: BTreeMap<Weight, u64> = BTreeMap::new();
    let shifted_norm = hw.plus_rho().form(hw.plus_rho());
    for mu in candidates {
        if mu == hw {
            mult.insert(hw, 1);
            continue;
        }
        let denom = shifted_norm - mu.plus_rho().form(mu.plus_rho());
        debug_assert!(denom > 0);
        let mut numer: i64 = 0;
        for alpha in POSITIVE_ROOTS {
            for j in 1.. {
                let nu = Weight::new(mu.a + j * alpha.a, mu.b + j * alpha.b);
                let m = mult.get(&dominantize(nu)).copied().unwrap_or(0);
                if m == 0 {
                    // Weight strings are unbroken, so the first miss ends the string.
                    break;
                }
                numer += 2 * (m as i64) * nu.form(alpha);
            }
        }
        assert_eq!(numer % denom, 0, "Freudenthal numerator must divide exactly");
        let m = numer / denom;
        assert!(m >= 0);
        if m > 0 {
            mult.insert(mu, m as u64);
        }
    }
    mult
}

/// Dimension as the multiplicity-weighted count of the full weight system.
pub fn dim(hw: Weight) -> u64 {
    dominant_weight_multiplicities(hw)
        .iter()
        .map(|(mu, m)| m * orbit_size(*mu))
        .sum()
}

/// The full weight multiset (all Weyl translates, with multiplicity).
pub fn weight_multiset(hw: Weight) -> BTreeMap<Weight, u64> {
    let mut out = BTreeMap::new();
    for (mu, m) in dominant_weight_multiplicities(hw) {
        let mut images: Vec<Weight> = weyl_group().iter().map(|el| el.apply(mu)).collect();
        images.sort_unstable();
        images.dedup();
        for im in images {
            *out.entry(im).or_insert(0) += m;
        }
    }
    out
}

/// Full tensor-product decomposition `V_lam (x) V_mu = (+)_nu c_nu V_nu`
/// by the alternating dominance push of `lam + sigma` over the weights
/// `sigma` of `V_mu`.
pub fn tensor_product(lam: Weight, mu: Weight) -> BTreeMap<Weight, u64> {
    assert!(lam.is_dominant() && mu.is_dominant());
    let mut out: BTreeMap<Weight, i64> = BTreeMap::new();
    for (sigma, m) in weight_multiset(mu) {
        let shifted = Weight::new(lam.a + sigma.a, lam.b + sigma.b).plus_rho();
        if shifted.root_pairings().contains(&0) {
            continue;
        }
        let mut hit = None;
        for el in weyl_group() {
            let image = el.apply(shifted);
            if image.is_strictly_dominant() {
                hit = Some((el.length(), image.minus_rho()));
                break;
            }
        }
        let (len, nu) = hit.expect("regular vector has a strictly dominant translate");
        let sign = if len % 2 == 0 { 1 } else { -1 };
        *out.entry(nu).or_insert(0) += sign * m as i64;
    }
    out.into_iter()
        .filter(|&(_, c)| c != 0)
        .map(|(nu, c)| {
            assert!(c > 0, "tensor multiplicities must be nonnegative");
            (nu, c as u64)
        })
        .collect()
}
