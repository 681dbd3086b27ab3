//! The G2 root system, weight lattice and Weyl group, in exact arithmetic.
//!
//! Weights are written in the fundamental-weight basis `(pi1, pi2)` fixed by
//! the ambient realization `pi1 = (0,-1,1)`, `pi2 = (-1/3,-1/3,2/3)` inside
//! the sum-zero plane of `R^3`. In these coordinates the simple reflections
//! act on a weight `(a, b)` linearly by
//!
//! ```text
//! s1: (a, b) -> (-a, 3a + b)        s2: (a, b) -> (a + b, -b)
//! ```
//!
//! and the rho-shifted dot-action is `w . v = w(v + rho) - rho` with
//! `rho = (1, 1)`. A weight is dominant iff both coordinates are nonnegative,
//! and `v + rho` is singular (lies on a root line) iff one of the six
//! positive-root pairings `a, b, a+b, 2a+b, 3a+b, 3a+2b` vanishes.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

/// An integral weight `a*pi1 + b*pi2`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Weight {
    pub a: i64,
    pub b: i64,
}

/// `rho = pi1 + pi2`, the half-sum shift of the dot-action.
pub const RHO: Weight = Weight { a: 1, b: 1 };

impl Weight {
    pub const fn new(a: i64, b: i64) -> Self {
        Weight { a, b }
    }

    pub fn is_dominant(self) -> bool {
        self.a >= 0 && self.b >= 0
    }

    /// Strictly dominant: pairs strictly positively with both simple roots.
    pub fn is_strictly_dominant(self) -> bool {
        self.a >= 1 && self.b >= 1
    }

    pub fn plus_rho(self) -> Self {
        Weight::new(self.a + 1, self.b + 1)
    }

    pub fn minus_rho(self) -> Self {
        Weight::new(self.a - 1, self.b - 1)
    }

    pub fn add(self, other: Self) -> Self {
        Weight::new(self.a + other.a, self.b + other.b)
    }

    pub fn neg(self) -> Self {
        Weight::new(-self.a, -self.b)
    }

    /// Pairings of this weight against the six positive roots, listed by the
    /// simple-root coefficients `(1,0), (0,1), (1,1), (2,1), (3,1), (3,2)`.
    pub fn root_pairings(self) -> [i64; 6] {
        let (a, b) = (self.a, self.b);
        [a, b, a + b, 2 * a + b, 3 * a + b, 3 * a + 2 * b]
    }

    /// Exact ambient coordinates `a*pi1 + b*pi2` in the sum-zero plane.
    pub fn ambient(self) -> [Rational64; 3] {
        let a = Rational64::from_integer(self.a);
        let b = Rational64::from_integer(self.b);
        let third = Rational64::new(1, 3);
        [
            -b * third,
            -a - b * third,
            a + b * Rational64::new(2, 3),
        ]
    }

    /// Recovers a weight from exact ambient coordinates; `None` when the
    /// vector is not in the sum-zero plane or has non-integral coefficients.
    pub fn from_ambient(v: [Rational64; 3]) -> Option<Self> {
        if v[0] + v[1] + v[2] != Rational64::from_integer(0) {
            return None;
        }
        let a = v[0] - v[1];
        let b = v[2] + v[1] - Rational64::from_integer(2) * v[0];
        if a.is_integer() && b.is_integer() {
            Some(Weight::new(a.to_integer(), b.to_integer()))
        } else {
            None
        }
    }

    /// A W-invariant integral quadratic form (3x the ambient dot product).
    pub fn form(self, other: Self) -> i64 {
        6 * self.a * other.a + 3 * (self.a * other.b + self.b * other.a) + 2 * self.b * other.b
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.a, self.b)
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

#[derive(Debug, thiserror::Error)]
#[error("malformed weight {0:?}: expected \"a,b\" with signed integers")]
pub struct ParseWeightError(String);

impl FromStr for Weight {
    type Err = ParseWeightError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s.split_once(',').ok_or_else(|| ParseWeightError(s.into()))?;
        let a = a.trim().parse().map_err(|_| ParseWeightError(s.into()))?;
        let b = b.trim().parse().map_err(|_| ParseWeightError(s.into()))?;
        Ok(Weight::new(a, b))
    }
}

impl From<Weight> for String {
    fn from(w: Weight) -> String {
        w.to_string()
    }
}

impl TryFrom<String> for Weight {
    type Error = ParseWeightError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// One of the twelve roots, stored in exact ambient coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Root {
    pub ambient: [i64; 3],
    pub positive: bool,
}

/// The full G2 root system: twelve ambient vectors, six of them positive
/// (nonnegative combinations of `alpha1 = (1,-1,0)`, `alpha2 = (-2,1,1)`).
pub fn all_roots() -> &'static [Root; 12] {
    static ROOTS: OnceLock<[Root; 12]> = OnceLock::new();
    ROOTS.get_or_init(|| {
        let vectors: [[i64; 3]; 12] = [
            [0, 1, -1],
            [0, -1, 1],
            [1, 0, -1],
            [-1, 0, 1],
            [1, -1, 0],
            [-1, 1, 0],
            [2, -1, -1],
            [-2, 1, 1],
            [-1, 2, -1],
            [1, -2, 1],
            [-1, -1, 2],
            [1, 1, -2],
        ];
        vectors.map(|ambient| Root {
            ambient,
            positive: is_positive_root(ambient),
        })
    })
}

/// Decides positivity by solving `v = c1*alpha1 + c2*alpha2` exactly.
fn is_positive_root(v: [i64; 3]) -> bool {
    // alpha1 = (1,-1,0), alpha2 = (-2,1,1): c2 = v_z, c1 = v_x + 2*v_z.
    let c2 = v[2];
    let c1 = v[0] + 2 * v[2];
    c1 >= 0 && c2 >= 0 && c1 * 1 - c2 * 2 == v[0] && -c1 + c2 == v[1]
}

/// A simple reflection, the two generators of the Weyl group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Simple {
    S1,
    S2,
}

impl Simple {
    /// Affine dot-action of the reflection on a weight.
    pub fn dot(self, w: Weight) -> Weight {
        match self {
            Simple::S1 => Weight::new(-w.a - 2, 3 * w.a + w.b + 3),
            Simple::S2 => Weight::new(w.a + w.b + 1, -w.b - 2),
        }
    }

    /// Linear action on weight coordinates, as a 2x2 integer matrix.
    pub fn matrix(self) -> [[i64; 2]; 2] {
        match self {
            Simple::S1 => [[-1, 0], [3, 1]],
            Simple::S2 => [[1, 1], [0, -1]],
        }
    }
}

fn mat_mul(m: [[i64; 2]; 2], n: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let mut out = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = m[i][0] * n[0][j] + m[i][1] * n[1][j];
        }
    }
    out
}

fn mat_apply(m: [[i64; 2]; 2], w: Weight) -> Weight {
    Weight::new(m[0][0] * w.a + m[0][1] * w.b, m[1][0] * w.a + m[1][1] * w.b)
}

/// A Weyl-group element: the lexicographically least reduced word over
/// `{s1, s2}` together with the matrix of its linear action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub word: Vec<Simple>,
    pub matrix: [[i64; 2]; 2],
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }

    /// Linear action on weight coordinates.
    pub fn apply(&self, w: Weight) -> Weight {
        mat_apply(self.matrix, w)
    }

    /// Dot-action `w . v = w(v + rho) - rho`.
    pub fn dot(&self, w: Weight) -> Weight {
        self.apply(w.plus_rho()).minus_rho()
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<&str> = self
            .word
            .iter()
            .map(|s| match s {
                Simple::S1 => "s1",
                Simple::S2 => "s2",
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Debug, thiserror::Error)]
#[error("malformed Weyl word {0:?}: expected \"e\" or tokens s1/s2")]
pub struct ParseWordError(String);

/// Parses a word like `"s1 s2 s1"` (or `"e"` for the identity).
pub fn parse_word(s: &str) -> Result<Vec<Simple>, ParseWordError> {
    let s = s.trim();
    if s == "e" || s.is_empty() {
        return Ok(Vec::new());
    }
    s.split_whitespace()
        .map(|tok| match tok {
            "s1" => Ok(Simple::S1),
            "s2" => Ok(Simple::S2),
            _ => Err(ParseWordError(s.into())),
        })
        .collect()
}

/// All twelve Weyl elements, sorted by length then word.
pub fn weyl_group() -> &'static Vec<WeylElement> {
    static GROUP: OnceLock<Vec<WeylElement>> = OnceLock::new();
    GROUP.get_or_init(|| {
        let mut elements: Vec<WeylElement> = vec![WeylElement {
            word: Vec::new(),
            matrix: [[1, 0], [0, 1]],
        }];
        // Breadth-first closure; keep the lexicographically least word per matrix.
        let mut frontier = elements.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for el in &frontier {
                for s in [Simple::S1, Simple::S2] {
                    let matrix = mat_mul(s.matrix(), el.matrix);
                    let mut word = vec![s];
                    word.extend_from_slice(&el.word);
                    if let Some(existing) = elements.iter_mut().find(|e| e.matrix == matrix) {
                        if word.len() == existing.word.len() && word < existing.word {
                            existing.word = word;
                        }
                        continue;
                    }
                    let candidate = WeylElement { word, matrix };
                    next.push(candidate.clone());
                    elements.push(candidate);
                }
            }
            frontier = next;
        }
        elements.sort_by(|x, y| (x.length(), &x.word).cmp(&(y.length(), &y.word)));
        assert_eq!(elements.len(), 12, "G2 Weyl group must have 12 elements");
        elements
    })
}

/// Applies a word of simple reflections to a weight via the dot-action,
/// right-to-left (the rightmost letter acts first).
pub fn dot_apply(word: &[Simple], w: Weight) -> Weight {
    word.iter().rev().fold(w, |acc, s| s.dot(acc))
}

/// Outcome of normalizing a weight for Borel-Bott-Weil.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BbwNormalForm {
    /// `w + rho` lies on a root line; every cohomology group vanishes.
    Singular,
    /// The unique Weyl element of the given length takes `w + rho` to a
    /// strictly dominant vector; `dominant` is the dot-action image of `w`.
    Regular { length: u8, dominant: Weight },
}

/// Normalizes a weight: either singular, or the unique `(length, dominant)`
/// pair with `dominant = w . weight` dominant. Searches all twelve elements;
/// at `|W| = 12` the exhaustive scan doubles as its own correctness oracle.
pub fn bbw_normalize(w: Weight) -> BbwNormalForm {
    let shifted = w.plus_rho();
    if shifted.root_pairings().contains(&0) {
        return BbwNormalForm::Singular;
    }
    let mut found: Option<(u8, Weight)> = None;
    for el in weyl_group() {
        let image = el.apply(shifted);
        if image.is_strictly_dominant() {
            assert!(
                found.is_none(),
                "two Weyl elements normalize {w:?}: regular orbits meet the dominant chamber once"
            );
            found = Some((el.length() as u8, image.minus_rho()));
        }
    }
    match found {
        Some((length, dominant)) => BbwNormalForm::Regular { length, dominant },
        None => unreachable!("regular weight {w:?} has a strictly dominant Weyl translate"),
    }
}

/// Whether the ambient vector of `v` lies on the line spanned by some root.
/// Equivalent to a vanishing positive-root pairing; the equivalence is pinned
/// by a unit test.
pub fn on_root_line(v: Weight) -> bool {
    // 3x ambient coordinates of v are integral: (-b, -3a-b, 3a+2b).
    let x = [-v.b, -3 * v.a - v.b, 3 * v.a + 2 * v.b];
    all_roots().iter().any(|r| {
        let c = r.ambient;
        x[0] * c[1] - x[1] * c[0] == 0 && x[1] * c[2] - x[2] * c[1] == 0
    })
}
