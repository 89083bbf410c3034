//! The `permgroup/v1` group file format: JSON text with a point degree and a
//! list of 0-based generator image arrays.
//!
//! Writers emit generators in the order given; readers reject image arrays
//! that are not bijections.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{Group, Permutation};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PermGroupFile {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

impl PermGroupFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::MalformedFile(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain arrays always serialize")
    }

    /// Validates every image array and closes the generators into a group.
    pub fn build(&self, cap: usize) -> Result<Group> {
        let gens = self
            .generators
            .iter()
            .map(|images| {
                if images.len() != self.degree {
                    return Err(Error::DegreeMismatch {
                        expected: self.degree,
                        got: images.len(),
                    });
                }
                Permutation::from_usize(images)
            })
            .collect::<Result<Vec<_>>>()?;
        Group::from_generators(self.degree, &gens, cap)
    }

    /// Snapshot of a group as a generator file: the underlying permutations
    /// of a generating set when present, otherwise the regular
    /// representation.
    pub fn from_group(g: &Group) -> Self {
        let (degree, gens) = g.serializable_generators();
        Self {
            degree,
            generators: gens
                .iter()
                .map(|p| p.images().iter().map(|&x| x as usize).collect())
                .collect(),
        }
    }
}

pub fn read_group(text: &str, cap: usize) -> Result<Group> {
    PermGroupFile::from_json(text)?.build(cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::DEFAULT_CAP;

    #[test]
    fn round_trip_preserves_structure() {
        let text = r#"{"degree":3,"generators":[[1,0,2],[0,2,1]]}"#;
        let g = read_group(text, DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 6);
        let file = PermGroupFile::from_group(&g);
        let h = file.build(DEFAULT_CAP).unwrap();
        assert_eq!(h.order(), 6);
        assert_eq!(h.order_statistics(), g.order_statistics());
    }

    #[test]
    fn non_bijective_generators_are_rejected() {
        let text = r#"{"degree":3,"generators":[[0,0,1]]}"#;
        assert!(read_group(text, DEFAULT_CAP).is_err());
    }

    #[test]
    fn degree_mismatch_is_rejected() {
        let text = r#"{"degree":3,"generators":[[1,0]]}"#;
        assert!(matches!(
            read_group(text, DEFAULT_CAP),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn malformed_json_is_rejected() {
        assert!(matches!(
            PermGroupFile::from_json("{not json"),
            Err(Error::MalformedFile(_))
        ));
    }

    #[test]
    fn empty_generator_list_builds_trivial_group() {
        let g = read_group(r#"{"degree":5,"generators":[]}"#, DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn writer_emits_generators_in_order() {
        let file = PermGroupFile {
            degree: 3,
            generators: vec![vec![1, 0, 2], vec![0, 2, 1]],
        };
        let text = file.to_json();
        let back = PermGroupFile::from_json(&text).unwrap();
        assert_eq!(back.generators, file.generators);
    }
}
