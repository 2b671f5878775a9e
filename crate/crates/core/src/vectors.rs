//! Real state vectors with exact entries.
//!
//! Every vector handled here is real, so the global-phase group collapses to
//! `{+1, -1}` and phase equivalence is decided by sign normalization.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};

use crate::algebraic::{RadExt, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QVector {
    entries: Vec<RadExt>,
}

impl QVector {
    pub fn new(entries: Vec<RadExt>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Shape("a vector needs at least one entry".into()));
        }
        Ok(Self { entries })
    }

    pub fn zero(dim: usize) -> Self {
        assert!(dim > 0, "dimension must be positive");
        Self {
            entries: vec![RadExt::zero(); dim],
        }
    }

    /// The computational basis vector `|index>` of the given dimension.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index {index} out of range for dimension {dim}");
        let mut v = Self::zero(dim);
        v.entries[index] = RadExt::one();
        v
    }

    pub fn from_rationals<I: IntoIterator<Item = Rational>>(entries: I) -> Result<Self> {
        Self::new(entries.into_iter().map(RadExt::from_rational).collect())
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[RadExt] {
        &self.entries
    }

    pub fn entry(&self, index: usize) -> &RadExt {
        &self.entries[index]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RadExt::is_zero)
    }

    pub fn scaled(&self, factor: &RadExt) -> Self {
        Self {
            entries: self.entries.iter().map(|x| x * factor).collect(),
        }
    }

    /// `sum_k coefficient_k * vector_k`; all vectors must share a dimension.
    pub fn linear_combination(terms: &[(RadExt, &QVector)]) -> Result<Self> {
        let (_, first) = terms
            .first()
            .ok_or_else(|| Error::Shape("empty linear combination".into()))?;
        let dim = first.dim();
        let mut out = Self::zero(dim);
        for (coefficient, v) in terms {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: v.dim(),
                });
            }
            if coefficient.is_zero() {
                continue;
            }
            for (acc, x) in out.entries.iter_mut().zip(&v.entries) {
                if !x.is_zero() {
                    *acc += &(coefficient * x);
                }
            }
        }
        Ok(out)
    }

    pub fn inner_product(&self, other: &QVector) -> Result<RadExt> {
        inner_product(self, other)
    }

    pub fn norm_squared(&self) -> RadExt {
        sparse_dot(self, self)
    }

    pub fn is_unit(&self) -> bool {
        self.norm_squared() == RadExt::one()
    }

    pub fn tensor(&self, other: &QVector) -> QVector {
        tensor(self, other)
    }

    pub fn canonicalize(&self) -> Result<CanonicalVector> {
        canonicalize(self)
    }
}

impl std::ops::Neg for &QVector {
    type Output = QVector;
    fn neg(self) -> QVector {
        QVector {
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }
}

/// Renders as a sum of kets, using bit strings when the dimension is a
/// power of two (`|01>`), plain indices otherwise.
impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dim = self.dim();
        let bits = if dim.is_power_of_two() && dim > 1 {
            Some(dim.trailing_zeros() as usize)
        } else {
            None
        };
        let mut first = true;
        for (i, x) in self.entries.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let label = match bits {
                Some(width) => format!("{i:0width$b}"),
                None => i.to_string(),
            };
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if *x == RadExt::one() {
                write!(f, "|{label}>")?;
            } else {
                write!(f, "[{x}]|{label}>")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn sparse_dot(u: &QVector, v: &QVector) -> RadExt {
    let mut acc = RadExt::zero();
    for (x, y) in u.entries.iter().zip(&v.entries) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        acc += &(x * y);
    }
    acc
}

/// The real inner product `sum_i u_i v_i`.
pub fn inner_product(u: &QVector, v: &QVector) -> Result<RadExt> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch {
            left: u.dim(),
            right: v.dim(),
        });
    }
    Ok(sparse_dot(u, v))
}

/// Kronecker product: entry `p * v.dim() + q` is `u_p * v_q`.
pub fn tensor(u: &QVector, v: &QVector) -> QVector {
    let mut entries = Vec::with_capacity(u.dim() * v.dim());
    for x in &u.entries {
        if x.is_zero() {
            entries.extend(std::iter::repeat_with(RadExt::zero).take(v.dim()));
        } else if *x == RadExt::one() {
            entries.extend(v.entries.iter().cloned());
        } else {
            entries.extend(v.entries.iter().map(|y| x * y));
        }
    }
    QVector { entries }
}

/// Sign-normalized representative of a real vector's phase class: the
/// first nonzero coordinate is positive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct CanonicalVector(QVector);

impl CanonicalVector {
    pub fn vector(&self) -> &QVector {
        &self.0
    }

    pub fn into_vector(self) -> QVector {
        self.0
    }
}

impl fmt::Display for CanonicalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn canonicalize(v: &QVector) -> Result<CanonicalVector> {
    let lead = v
        .entries
        .iter()
        .find(|x| !x.is_zero())
        .ok_or(Error::ZeroVector)?;
    if lead.signum() > 0 {
        Ok(CanonicalVector(v.clone()))
    } else {
        Ok(CanonicalVector(-v))
    }
}

/// Whether `u = ±v`, decided by comparing canonical representatives.
pub fn phase_equal(u: &QVector, v: &QVector) -> Result<bool> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch {
            left: u.dim(),
            right: v.dim(),
        });
    }
    Ok(canonicalize(u)? == canonicalize(v)?)
}

/// Independent phase test for unit vectors: `<u,v>^2 = 1`, the equality
/// case of Cauchy-Schwarz.
pub fn phase_equal_by_overlap(u: &QVector, v: &QVector) -> Result<bool> {
    let overlap = inner_product(u, v)?;
    if overlap.is_zero() {
        return Ok(false);
    }
    Ok(&overlap * &overlap == RadExt::one())
}

#[derive(Serialize)]
struct VectorRepr<'a> {
    dim: usize,
    entries: &'a [RadExt],
}

#[derive(Deserialize)]
struct OwnedVectorRepr {
    dim: usize,
    entries: Vec<RadExt>,
}

impl Serialize for QVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        VectorRepr {
            dim: self.dim(),
            entries: &self.entries,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = OwnedVectorRepr::deserialize(deserializer)?;
        if repr.dim != repr.entries.len() {
            return Err(D::Error::custom(format!(
                "dim {} does not match {} entries",
                repr.dim,
                repr.entries.len()
            )));
        }
        QVector::new(repr.entries).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::{rat, rat_int};
    use proptest::prelude::*;

    fn ket(bits: &str) -> QVector {
        QVector::basis(1 << bits.len(), usize::from_str_radix(bits, 2).unwrap())
    }

    fn inv_sqrt(n: i64) -> RadExt {
        RadExt::inv_sqrt_rational(&rat_int(n)).unwrap()
    }

    #[test]
    fn inner_product_examples() {
        assert_eq!(inner_product(&ket("00"), &ket("00")).unwrap(), RadExt::one());
        assert!(inner_product(&ket("00"), &ket("01")).unwrap().is_zero());
        // first row of A_2: (|00>+2|01>)/sqrt5 and (-2|00>+|01>)/sqrt5
        let s = inv_sqrt(5);
        let a = QVector::linear_combination(&[(s.clone(), &ket("00")), (&s * &RadExt::from_integer(2), &ket("01"))]).unwrap();
        let b = QVector::linear_combination(&[(&s * &RadExt::from_integer(-2), &ket("00")), (s.clone(), &ket("01"))]).unwrap();
        assert!(inner_product(&a, &b).unwrap().is_zero());
        assert!(a.is_unit() && b.is_unit());
        assert_eq!(
            inner_product(&ket("0"), &ket("00")),
            Err(Error::DimensionMismatch { left: 2, right: 4 })
        );
    }

    #[test]
    fn tensor_examples() {
        assert_eq!(tensor(&ket("0"), &ket("1")), ket("01"));
        let plus = QVector::linear_combination(&[(inv_sqrt(2), &ket("0")), (inv_sqrt(2), &ket("1"))]).unwrap();
        let expected = QVector::linear_combination(&[(inv_sqrt(2), &ket("10")), (inv_sqrt(2), &ket("11"))]).unwrap();
        assert_eq!(tensor(&ket("1"), &plus), expected);
        let v = QVector::from_rationals([rat(3, 5), rat(4, 5)]).unwrap();
        assert_eq!(
            tensor(&v, &ket("0")),
            QVector::from_rationals([rat(3, 5), rat_int(0), rat(4, 5), rat_int(0)]).unwrap()
        );
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(canonicalize(&-&ket("11")).unwrap().vector(), &ket("11"));
        assert_eq!(canonicalize(&ket("00")).unwrap().vector(), &ket("00"));
        let s = inv_sqrt(2);
        let v = QVector::linear_combination(&[(-&s, &ket("10")), (s.clone(), &ket("11"))]).unwrap();
        let w = QVector::linear_combination(&[(s.clone(), &ket("10")), (-&s, &ket("11"))]).unwrap();
        assert_eq!(canonicalize(&v).unwrap().vector(), &w);
        assert_eq!(canonicalize(&QVector::zero(4)), Err(Error::ZeroVector));
    }

    #[test]
    fn phase_equal_examples() {
        assert!(phase_equal(&ket("00"), &-&ket("00")).unwrap());
        assert!(!phase_equal(&ket("00"), &ket("01")).unwrap());
        assert!(phase_equal_by_overlap(&ket("00"), &-&ket("00")).unwrap());
        assert!(!phase_equal_by_overlap(&ket("00"), &ket("01")).unwrap());
        assert!(phase_equal(&ket("0"), &ket("00")).is_err());
    }

    #[test]
    fn display_uses_kets() {
        let v = QVector::from_rationals([rat(3, 5), rat_int(0), rat(-4, 5), rat_int(0)]).unwrap();
        assert_eq!(v.to_string(), "[3/5]|00> + [-4/5]|10>");
    }

    #[test]
    fn json_shape() {
        let v = QVector::from_rationals([rat(3, 5), rat(4, 5)]).unwrap();
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(text, r#"{"dim":2,"entries":[[[3,5,1]],[[4,5,1]]]}"#);
        assert_eq!(serde_json::from_str::<QVector>(&text).unwrap(), v);
        assert!(serde_json::from_str::<QVector>(r#"{"dim":3,"entries":[[],[]]}"#).is_err());
        assert!(serde_json::from_str::<QVector>(r#"{"dim":0,"entries":[]}"#).is_err());
    }

    /// Unit vectors `(cos, sin)` from Pythagorean-style rational
    /// rotations mixed with `1/sqrt(1+a^2)` normalizers.
    fn unit_2d() -> impl Strategy<Value = QVector> {
        (-6i64..=6, 1i64..=4, prop::bool::ANY).prop_map(|(n, d, flip)| {
            let a = rat(n, d);
            let s = RadExt::inv_sqrt_rational(&(rat_int(1) + &a * &a)).unwrap();
            let v = QVector::new(vec![s.clone(), &s * &RadExt::from_rational(a)]).unwrap();
            if flip { -&v } else { v }
        })
    }

    proptest! {
        #[test]
        fn canonicalize_is_idempotent_projection(v in unit_2d()) {
            let c = canonicalize(&v).unwrap();
            prop_assert_eq!(canonicalize(c.vector()).unwrap(), c.clone());
            prop_assert_eq!(canonicalize(&-&v).unwrap(), c);
        }

        #[test]
        fn tensor_preserves_unit_norm(u in unit_2d(), v in unit_2d()) {
            let w = tensor(&u, &v);
            prop_assert!(w.is_unit());
            prop_assert_eq!(w.dim(), 4);
        }

        #[test]
        fn tensor_is_bilinear_in_scaling(u in unit_2d(), v in unit_2d(), k in -5i64..=5) {
            let k = RadExt::from_integer(k);
            prop_assert_eq!(tensor(&u.scaled(&k), &v), tensor(&u, &v).scaled(&k));
            prop_assert_eq!(tensor(&u, &v.scaled(&k)), tensor(&u, &v).scaled(&k));
        }

        #[test]
        fn phase_tests_agree(u in unit_2d(), v in unit_2d()) {
            prop_assert_eq!(phase_equal(&u, &v).unwrap(), phase_equal_by_overlap(&u, &v).unwrap());
        }
    }
}
