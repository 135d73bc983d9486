//! Structure constants `f_ijk` defining a generalized cross product
//! `(A × B)_k = Σ_ij f_ijk A_i B_j`.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::ncalg::{parse_scalar, Scalar};

/// Levi-Civita symbol on `{1,2,3}`: the sign of the permutation `ijk`, zero on
/// any repeated index (or any index outside the range).
pub fn epsilon(i: usize, j: usize, k: usize) -> i64 {
    if !(1..=3).contains(&i) || !(1..=3).contains(&j) || !(1..=3).contains(&k) {
        return 0;
    }
    if i == j || j == k || i == k {
        return 0;
    }
    // Even permutations of 123 are its cyclic rotations.
    match (i, j, k) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1,
        _ => -1,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    dim: usize,
    entries: Vec<Scalar>,
}

#[derive(Deserialize)]
struct TensorDoc {
    dimension: usize,
    #[serde(default)]
    entries: Vec<(usize, usize, usize, String)>,
}

impl StructureConstants {
    /// The zero tensor in dimension `d` (an abelian Lie algebra).
    pub fn zero(d: usize) -> Self {
        StructureConstants { dim: d, entries: vec![Scalar::zero(); d * d * d] }
    }

    /// The epsilon tensor, structure constants of so(3).
    pub fn so3() -> Self {
        let mut t = StructureConstants::zero(3);
        for i in 1..=3 {
            for j in 1..=3 {
                for k in 1..=3 {
                    t.set(i, j, k, Scalar::from_int(epsilon(i, j, k)));
                }
            }
        }
        t
    }

    /// Build from sparse entries (1-based indices); rejects tensors that are
    /// not invariant under cyclic permutation of their indices.
    pub fn from_entries<I>(d: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, usize, Scalar)>,
    {
        if d == 0 {
            return Err(Error::InvalidParameter("dimension must be at least 1".into()));
        }
        let mut t = StructureConstants::zero(d);
        for (i, j, k, v) in entries {
            for idx in [i, j, k] {
                if idx == 0 || idx > d {
                    return Err(Error::IndexOutOfRange { index: idx, dimension: d });
                }
            }
            t.set(i, j, k, v);
        }
        t.check_cyclic()?;
        Ok(t)
    }

    /// Parse `{"dimension": d, "entries": [[i, j, k, "scalar"], ...]}`.
    /// Omitted entries are zero.
    pub fn from_json(src: &str) -> Result<Self> {
        let doc: TensorDoc =
            serde_json::from_str(src).map_err(|e| Error::InvalidParameter(format!("structure constants: {e}")))?;
        let mut entries = Vec::with_capacity(doc.entries.len());
        for (i, j, k, lit) in doc.entries {
            entries.push((i, j, k, parse_scalar(&lit)?));
        }
        StructureConstants::from_entries(doc.dimension, entries)
    }

    /// Resolve a built-in name (`so3`) or parse a JSON document.
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "so3" => Some(StructureConstants::so3()),
            _ => None,
        }
    }

    fn offset(&self, i: usize, j: usize, k: usize) -> usize {
        ((i - 1) * self.dim + (j - 1)) * self.dim + (k - 1)
    }

    fn set(&mut self, i: usize, j: usize, k: usize, v: Scalar) {
        let o = self.offset(i, j, k);
        self.entries[o] = v;
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `f_ijk` with 1-based indices.
    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.entries[self.offset(i, j, k)]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    fn check_cyclic(&self) -> Result<()> {
        let d = self.dim;
        for i in 1..=d {
            for j in 1..=d {
                for k in 1..=d {
                    if self.get(i, j, k) != self.get(k, i, j) {
                        return Err(Error::NonCyclicTensor { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    /// `f_ijk = −f_jik` for all indices.
    pub fn is_antisymmetric(&self) -> bool {
        let d = self.dim;
        (1..=d).all(|i| (1..=d).all(|j| (1..=d).all(|k| *self.get(i, j, k) == -self.get(j, i, k))))
    }

    /// The Jacobi identity for the bracket `[e_i, e_j] = Σ_k f_ijk e_k`:
    /// `Σ_k (f_jlk f_ikr − f_ijk f_klr − f_ilk f_jkr) = 0` for all `i, j, l, r`.
    pub fn satisfies_jacobi(&self) -> bool {
        let d = self.dim;
        for i in 1..=d {
            for j in 1..=d {
                for l in 1..=d {
                    for r in 1..=d {
                        let mut s = Scalar::zero();
                        for k in 1..=d {
                            s = &s + &(self.get(j, l, k) * self.get(i, k, r));
                            s = &s - &(self.get(i, j, k) * self.get(k, l, r));
                            s = &s - &(self.get(i, l, k) * self.get(j, k, r));
                        }
                        if !s.is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        StructureConstants { dim: self.dim, entries: self.entries.iter().map(|v| v * c).collect() }
    }

    /// Block-diagonal direct sum of two Lie algebras.
    pub fn direct_sum(&self, other: &StructureConstants) -> Self {
        let (a, b) = (self.dim, other.dim);
        let mut t = StructureConstants::zero(a + b);
        for i in 1..=a {
            for j in 1..=a {
                for k in 1..=a {
                    t.set(i, j, k, self.get(i, j, k).clone());
                }
            }
        }
        for i in 1..=b {
            for j in 1..=b {
                for k in 1..=b {
                    t.set(a + i, a + j, a + k, other.get(i, j, k).clone());
                }
            }
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epsilon_values() {
        assert_eq!(epsilon(1, 2, 3), 1);
        assert_eq!(epsilon(3, 1, 2), 1);
        assert_eq!(epsilon(2, 1, 3), -1);
        assert_eq!(epsilon(1, 1, 3), 0);
        assert_eq!(epsilon(0, 1, 2), 0);
    }

    #[test]
    fn so3_is_cyclic_antisymmetric_and_jacobi() {
        let f = StructureConstants::so3();
        assert!(f.check_cyclic().is_ok());
        assert!(f.is_antisymmetric());
        assert!(f.satisfies_jacobi());
    }

    #[test]
    fn non_cyclic_rejected() {
        let res = StructureConstants::from_entries(3, [(1, 2, 3, Scalar::one())]);
        assert!(matches!(res, Err(Error::NonCyclicTensor { .. })));
    }

    #[test]
    fn json_round() {
        let doc = r#"{"dimension": 3, "entries": [
            [1,2,3,"2"],[2,3,1,"2"],[3,1,2,"2"],
            [2,1,3,"-2"],[1,3,2,"-2"],[3,2,1,"-2"]]}"#;
        let f = StructureConstants::from_json(doc).unwrap();
        assert_eq!(f, StructureConstants::so3().scaled(&Scalar::from_int(2)));
        assert!(f.satisfies_jacobi());
        let bad = r#"{"dimension": 2, "entries": [[1,2,1,"1"]]}"#;
        assert!(matches!(StructureConstants::from_json(bad), Err(Error::NonCyclicTensor { .. })));
        assert!(StructureConstants::from_json("{").is_err());
        let out_of_range = r#"{"dimension": 2, "entries": [[1,2,3,"1"]]}"#;
        assert!(matches!(StructureConstants::from_json(out_of_range), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn direct_sum_keeps_jacobi() {
        let f = StructureConstants::so3().direct_sum(&StructureConstants::so3().scaled(&Scalar::from_int(3)));
        assert_eq!(f.dim(), 6);
        assert!(f.check_cyclic().is_ok());
        assert!(f.satisfies_jacobi());
    }
}
