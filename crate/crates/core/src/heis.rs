//! Exact arithmetic in the discrete Heisenberg group.
//!
//! An element `(a, b, c)` stands for the integer matrix
//!
//! ```text
//! [1 a c]
//! [0 1 b]
//! [0 0 1]
//! ```
//!
//! so the group law is `(a, b, c)(a', b', c') = (a + a', b + b', c + c' + a b')`.
//! Every operation is checked and reports [`HeisError::Overflow`] instead of
//! wrapping.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeisError {
    #[error("integer overflow")]
    Overflow,
    #[error("no primitive root of identity")]
    IdentityHasNoRoot,
    #[error("generator not primitive")]
    NotPrimitive,
    #[error("not conjugate")]
    NotConjugate,
    #[error("normalizer of a central subgroup is the whole group")]
    CentralNormalizer,
    #[error("primitive generator not a direct factor")]
    NotDirectFactor,
    #[error("empty generator sequence")]
    EmptyGenerators,
    #[error("element outside the normalizer: {0}")]
    OutsideNormalizer(HeisElement),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("census needs a non-central cyclic subgroup")]
    CensusNeedsNonCentralCyclic,
    #[error("bound {0} outside the supported range")]
    InvalidBound(i64),
    #[error("cannot parse element from {0:?}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, HeisError>;

pub(crate) fn add(x: i64, y: i64) -> Result<i64> {
    x.checked_add(y).ok_or(HeisError::Overflow)
}

pub(crate) fn sub(x: i64, y: i64) -> Result<i64> {
    x.checked_sub(y).ok_or(HeisError::Overflow)
}

pub(crate) fn mul_i(x: i64, y: i64) -> Result<i64> {
    x.checked_mul(y).ok_or(HeisError::Overflow)
}

pub(crate) fn neg(x: i64) -> Result<i64> {
    x.checked_neg().ok_or(HeisError::Overflow)
}

/// `n (n - 1) / 2`, valid for negative `n` as well.
pub(crate) fn choose2(n: i64) -> Result<i64> {
    // n(n-1) is always even, so the division is exact.
    Ok(mul_i(n, sub(n, 1)?)? / 2)
}

/// An element of the Heisenberg group, stored by its three free matrix entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct HeisElement {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl HeisElement {
    pub const IDENTITY: HeisElement = HeisElement { a: 0, b: 0, c: 0 };

    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        HeisElement { a, b, c }
    }

    /// Generator of the center, `(0, 0, 1)`.
    pub const fn center_generator() -> Self {
        HeisElement { a: 0, b: 0, c: 1 }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    pub fn is_central(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn mul(&self, other: &HeisElement) -> Result<HeisElement> {
        Ok(HeisElement {
            a: add(self.a, other.a)?,
            b: add(self.b, other.b)?,
            c: add(add(self.c, other.c)?, mul_i(self.a, other.b)?)?,
        })
    }

    pub fn inv(&self) -> Result<HeisElement> {
        Ok(HeisElement { a: neg(self.a)?, b: neg(self.b)?, c: sub(mul_i(self.a, self.b)?, self.c)? })
    }

    /// Closed form `g^n = (n a, n b, n c + C(n, 2) a b)` for every integer `n`.
    pub fn pow(&self, n: i64) -> Result<HeisElement> {
        let ab = mul_i(self.a, self.b)?;
        Ok(HeisElement {
            a: mul_i(n, self.a)?,
            b: mul_i(n, self.b)?,
            c: add(mul_i(n, self.c)?, mul_i(choose2(n)?, ab)?)?,
        })
    }

    /// `g h g^-1 h^-1`, which is always central: `(0, 0, a b' - a' b)`.
    pub fn commutator(&self, other: &HeisElement) -> Result<HeisElement> {
        Ok(HeisElement { a: 0, b: 0, c: sub(mul_i(self.a, other.b)?, mul_i(other.a, self.b)?)? })
    }

    /// `self * g * self^-1 = (a, b, c + x b - y a)` where `self = (x, y, z)`.
    pub fn conjugate(&self, g: &HeisElement) -> Result<HeisElement> {
        let shift = sub(mul_i(self.a, g.b)?, mul_i(self.b, g.a)?)?;
        Ok(HeisElement { a: g.a, b: g.b, c: add(g.c, shift)? })
    }

    /// The matrix this element encodes.
    pub fn to_matrix(&self) -> [[i64; 3]; 3] {
        [[1, self.a, self.c], [0, 1, self.b], [0, 0, 1]]
    }

    /// Reads back an upper unitriangular matrix; `None` if the shape is wrong.
    pub fn from_matrix(m: &[[i64; 3]; 3]) -> Option<HeisElement> {
        let unitriangular =
            m[0][0] == 1 && m[1][1] == 1 && m[2][2] == 1 && m[1][0] == 0 && m[2][0] == 0 && m[2][1] == 0;
        unitriangular.then(|| HeisElement { a: m[0][1], b: m[1][2], c: m[0][2] })
    }
}

pub fn mul(g: &HeisElement, h: &HeisElement) -> Result<HeisElement> {
    g.mul(h)
}

pub fn inv(g: &HeisElement) -> Result<HeisElement> {
    g.inv()
}

pub fn pow(g: &HeisElement, n: i64) -> Result<HeisElement> {
    g.pow(n)
}

pub fn commutator(g: &HeisElement, h: &HeisElement) -> Result<HeisElement> {
    g.commutator(h)
}

pub fn conjugate(gamma: &HeisElement, g: &HeisElement) -> Result<HeisElement> {
    gamma.conjugate(g)
}

pub fn is_central(g: &HeisElement) -> bool {
    g.is_central()
}

/// All elements with `|a|, |b|, |c| <= bound`, in lexicographic order.
pub fn ball(bound: i64) -> impl Iterator<Item = HeisElement> {
    let r = -bound..=bound;
    r.clone().flat_map(move |a| {
        let r = -bound..=bound;
        r.clone().flat_map(move |b| (-bound..=bound).map(move |c| HeisElement { a, b, c }))
    })
}

impl fmt::Display for HeisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.a, self.b, self.c)
    }
}

impl FromStr for HeisElement {
    type Err = HeisError;

    /// Parses the text triple `"a b c"` (any whitespace between fields).
    fn from_str(s: &str) -> Result<Self> {
        let fields: Vec<&str> = s.split_whitespace().collect();
        let [a, b, c] = fields.as_slice() else {
            return Err(HeisError::Parse(s.to_string()));
        };
        let parse = |t: &str| t.parse::<i64>().map_err(|_| HeisError::Parse(s.to_string()));
        Ok(HeisElement { a: parse(a)?, b: parse(b)?, c: parse(c)? })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: i64, b: i64, c: i64) -> HeisElement {
        HeisElement::new(a, b, c)
    }

    fn matmul(x: &[[i64; 3]; 3], y: &[[i64; 3]; 3]) -> [[i64; 3]; 3] {
        let mut out = [[0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = (0..3).map(|k| x[i][k] * y[k][j]).sum();
            }
        }
        out
    }

    #[test]
    fn mul_examples() {
        assert_eq!(e(1, 2, 3).mul(&e(4, 5, 6)).unwrap(), e(5, 7, 14));
        assert_eq!(e(0, 0, 0).mul(&e(7, -3, 2)).unwrap(), e(7, -3, 2));
        assert_eq!(e(1, 0, 0).mul(&e(0, 1, 0)).unwrap(), e(1, 1, 1));
        let m = matmul(&e(1, 2, 3).to_matrix(), &e(4, 5, 6).to_matrix());
        assert_eq!(HeisElement::from_matrix(&m), Some(e(5, 7, 14)));
    }

    #[test]
    fn inv_examples() {
        assert_eq!(e(1, 2, 3).inv().unwrap(), e(-1, -2, -1));
        assert_eq!(e(0, 0, 0).inv().unwrap(), e(0, 0, 0));
        assert_eq!(e(0, 0, 5).inv().unwrap(), e(0, 0, -5));
        assert!(e(1, 2, 3).mul(&e(-1, -2, -1)).unwrap().is_identity());
    }

    #[test]
    fn pow_examples() {
        assert_eq!(e(1, 1, 0).pow(3).unwrap(), e(3, 3, 3));
        assert_eq!(e(4, -2, 9).pow(0).unwrap(), e(0, 0, 0));
        assert_eq!(e(1, 0, 0).pow(-2).unwrap(), e(-2, 0, 0));
        let g = e(1, 1, 0);
        assert_eq!(g.mul(&g).unwrap().mul(&g).unwrap(), e(3, 3, 3));
    }

    #[test]
    fn commutator_examples() {
        assert_eq!(e(1, 0, 0).commutator(&e(0, 1, 0)).unwrap(), e(0, 0, 1));
        assert_eq!(e(2, 3, 5).commutator(&e(2, 3, 9)).unwrap(), e(0, 0, 0));
        assert_eq!(e(0, 0, 4).commutator(&e(5, 5, 5)).unwrap(), e(0, 0, 0));
        // direct expansion
        let (g, h) = (e(1, 0, 0), e(0, 1, 0));
        let direct = g.mul(&h).unwrap().mul(&g.inv().unwrap()).unwrap().mul(&h.inv().unwrap()).unwrap();
        assert_eq!(direct, e(0, 0, 1));
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(e(0, 1, 0).conjugate(&e(1, 0, 0)).unwrap(), e(1, 0, -1));
        assert_eq!(e(0, 0, 9).conjugate(&e(3, 4, 5)).unwrap(), e(3, 4, 5));
        assert_eq!(e(7, 0, 0).conjugate(&e(0, 1, 0)).unwrap(), e(0, 1, 7));
    }

    #[test]
    fn is_central_examples() {
        assert!(is_central(&e(0, 0, 7)));
        assert!(is_central(&e(0, 0, 0)));
        assert!(!is_central(&e(0, 1, 0)));
        assert!(!e(0, 1, 0).commutator(&e(1, 0, 0)).unwrap().is_identity());
    }

    #[test]
    fn overflow_is_reported() {
        let big = e(i64::MAX, 1, 0);
        assert_eq!(big.mul(&e(1, 0, 0)), Err(HeisError::Overflow));
        assert_eq!(e(i64::MIN, 0, 0).inv(), Err(HeisError::Overflow));
        assert_eq!(e(1 << 40, 1 << 40, 0).pow(2), Err(HeisError::Overflow));
        assert_eq!(e(0, 0, 1).pow(i64::MIN), Err(HeisError::Overflow));
    }

    #[test]
    fn associativity_on_ball() {
        let elems: Vec<_> = ball(3).collect();
        for g in elems.iter().step_by(7) {
            for h in elems.iter().step_by(3) {
                let gh = g.mul(h).unwrap();
                for k in &elems {
                    assert_eq!(gh.mul(k).unwrap(), g.mul(&h.mul(k).unwrap()).unwrap());
                }
            }
        }
    }

    #[test]
    fn central_iff_commutes_with_ball() {
        let elems: Vec<_> = ball(3).collect();
        for g in &elems {
            let commutes = elems.iter().all(|h| g.commutator(h).unwrap().is_identity());
            assert_eq!(g.is_central(), commutes, "{g}");
        }
    }

    #[test]
    fn text_and_json_forms() {
        let g = e(-4, 0, 12);
        assert_eq!(g.to_string(), "-4 0 12");
        assert_eq!("-4  0 12".parse::<HeisElement>().unwrap(), g);
        assert!("1 2".parse::<HeisElement>().is_err());
        assert!("1 x 2".parse::<HeisElement>().is_err());
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"a":-4,"b":0,"c":12}"#);
        assert_eq!(serde_json::from_str::<HeisElement>(r#"{"a":-4,"b":0,"c":12}"#).unwrap(), g);
    }

    #[test]
    fn ball_size() {
        assert_eq!(ball(3).count(), 343);
        assert_eq!(ball(0).collect::<Vec<_>>(), vec![HeisElement::IDENTITY]);
    }

    proptest::proptest! {
        #[test]
        fn conjugate_matches_products(
            x in -50i64..50, y in -50i64..50, z in -50i64..50,
            a in -50i64..50, b in -50i64..50, c in -50i64..50,
        ) {
            let gamma = e(x, y, z);
            let g = e(a, b, c);
            let direct = gamma.mul(&g).unwrap().mul(&gamma.inv().unwrap()).unwrap();
            proptest::prop_assert_eq!(gamma.conjugate(&g).unwrap(), direct);
        }

        #[test]
        fn text_roundtrip(a in proptest::num::i64::ANY, b in proptest::num::i64::ANY, c in proptest::num::i64::ANY) {
            let g = e(a, b, c);
            proptest::prop_assert_eq!(g.to_string().parse::<HeisElement>().unwrap(), g);
        }
    }
}
