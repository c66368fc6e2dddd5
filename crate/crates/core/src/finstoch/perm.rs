use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};

/// A permutation of the positions `0..K`, in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Zero-based one-line notation.
    pub fn new(images: Vec<usize>) -> Result<Permutation> {
        let k = images.len();
        let mut seen = vec![false; k];
        for &i in &images {
            if i >= k || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
        }
        Ok(Permutation { images })
    }

    /// One-based one-line notation, as in `[2, 1, 3]`.
    pub fn from_one_line(images: &[usize]) -> Result<Permutation> {
        if images.contains(&0) {
            return Err(Error::InvalidPermutation(format!("{images:?}")));
        }
        Permutation::new(images.iter().map(|i| i - 1).collect())
    }

    pub fn identity(k: usize) -> Permutation {
        Permutation {
            images: (0..k).collect(),
        }
    }

    pub fn transposition(k: usize, a: usize, b: usize) -> Permutation {
        let mut images: Vec<usize> = (0..k).collect();
        images.swap(a, b);
        Permutation { images }
    }

    /// The cycle `i ↦ i+1 mod k`.
    pub fn rotation(k: usize) -> Permutation {
        Permutation {
            images: (0..k).map(|i| (i + 1) % k).collect(),
        }
    }

    /// All of `S_K`, in lexicographic order of one-line notation.
    pub fn all(k: usize) -> Vec<Permutation> {
        (0..k)
            .permutations(k)
            .map(|images| Permutation { images })
            .collect()
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Where position `i` is sent.
    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.size(), other.size());
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.size()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    /// Rearranges a tuple: output position `i` holds input position `σ(i)`.
    pub fn act<T: Clone>(&self, input: &[T]) -> Vec<T> {
        self.images.iter().map(|&j| input[j].clone()).collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.images.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "[{}]", s.join(" "))
    }
}
