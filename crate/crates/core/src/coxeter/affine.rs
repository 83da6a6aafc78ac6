use std::fmt;

use serde::{Deserialize, Serialize};

/// An affine transformation `x -> Lx + t` of `Z^dim` with exact integer entries.
///
/// Equality and hashing are component-wise on `(L, t)`, which is what the
/// Cayley-graph enumeration uses as its deduplication key.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineMap {
    dim: usize,
    /// Row-major linear part followed by the translation part.
    entries: Vec<i64>,
}

impl AffineMap {
    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![0; dim * dim + dim];
        for i in 0..dim {
            entries[i * dim + i] = 1;
        }
        AffineMap { dim, entries }
    }

    /// Panics if the shapes do not match `dim`.
    pub fn from_parts(linear: &[Vec<i64>], translation: &[i64]) -> Self {
        let dim = translation.len();
        assert_eq!(linear.len(), dim, "linear part must be square of size dim");
        let mut entries = Vec::with_capacity(dim * dim + dim);
        for row in linear {
            assert_eq!(row.len(), dim, "linear part must be square of size dim");
            entries.extend_from_slice(row);
        }
        entries.extend_from_slice(translation);
        AffineMap { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn linear(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.dim + col]
    }

    pub fn translation(&self) -> &[i64] {
        &self.entries[self.dim * self.dim..]
    }

    /// The map with the same linear part and zero translation.
    pub fn linear_part(&self) -> AffineMap {
        let mut out = self.clone();
        let n = self.dim * self.dim;
        out.entries[n..].iter_mut().for_each(|x| *x = 0);
        out
    }

    pub fn is_identity(&self) -> bool {
        *self == AffineMap::identity(self.dim)
    }

    pub fn is_translation(&self) -> bool {
        self.linear_part().is_identity()
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        debug_assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut entries = vec![0i64; d * d + d];
        for i in 0..d {
            for k in 0..d {
                let a = self.entries[i * d + k];
                if a == 0 {
                    continue;
                }
                for j in 0..d {
                    entries[i * d + j] += a * other.entries[k * d + j];
                }
                entries[d * d + i] += a * other.entries[d * d + k];
            }
            entries[d * d + i] += self.entries[d * d + i];
        }
        AffineMap { dim: d, entries }
    }

    pub fn pow(&self, n: u32) -> AffineMap {
        (0..n).fold(AffineMap::identity(self.dim), |acc, _| acc.compose(self))
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        let d = self.dim;
        (0..d).map(|i| (0..d).map(|j| self.linear(i, j) * x[j]).sum::<i64>() + self.entries[d * d + i]).collect()
    }
}

impl fmt::Debug for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.dim;
        let rows: Vec<&[i64]> = (0..d).map(|i| &self.entries[i * d..(i + 1) * d]).collect();
        write!(f, "AffineMap {{ linear: {:?}, translation: {:?} }}", rows, self.translation())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn map_strategy(d: usize) -> impl Strategy<Value = AffineMap> {
        proptest::collection::vec(-3i64..=3, d * d + d).prop_map(move |v| {
            let linear: Vec<Vec<i64>> = (0..d).map(|i| v[i * d..(i + 1) * d].to_vec()).collect();
            AffineMap::from_parts(&linear, &v[d * d..])
        })
    }

    proptest! {
        #[test]
        fn composition_matches_pointwise_application(
            a in map_strategy(3), b in map_strategy(3), x in proptest::collection::vec(-5i64..=5, 3)
        ) {
            prop_assert_eq!(a.compose(&b).apply(&x), a.apply(&b.apply(&x)));
        }

        #[test]
        fn composition_is_associative(a in map_strategy(2), b in map_strategy(2), c in map_strategy(2)) {
            prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        }
    }

    #[test]
    fn identity_is_neutral() {
        let m = AffineMap::from_parts(&[vec![1, 2], vec![0, -1]], &[3, 4]);
        assert_eq!(m.compose(&AffineMap::identity(2)), m);
        assert_eq!(AffineMap::identity(2).compose(&m), m);
        assert!(AffineMap::from_parts(&[vec![1, 0], vec![0, 1]], &[5, 0]).is_translation());
    }
}
