//! Permutations on `0..degree`, the input encoding for groups.

use crate::group::GroupError;

/// A bijection on the points `0..degree`, stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Validates that `images` is a bijection on `0..images.len()`.
    pub fn new(images: Vec<usize>) -> Result<Self, GroupError> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &img in &images {
            if img >= degree || seen[img] {
                return Err(GroupError::InvalidPermutation(format!(
                    "image array {images:?} is not a bijection on 0..{degree}"
                )));
            }
            seen[img] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds the permutation from disjoint cycles, e.g. `(0 1 2 3)(5 6)`.
    /// Points not mentioned are fixed.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self, GroupError> {
        let mut images: Vec<usize> = (0..degree).collect();
        for cycle in cycles {
            for w in 0..cycle.len() {
                let from = cycle[w];
                let to = cycle[(w + 1) % cycle.len()];
                if from >= degree || to >= degree {
                    return Err(GroupError::InvalidPermutation(format!(
                        "cycle point out of range for degree {degree}"
                    )));
                }
                images[from] = to;
            }
        }
        Permutation::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i == img)
    }

    /// `self` followed by `other`: the result maps `i` to `other(self(i))`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img] = i;
        }
        Permutation { images }
    }

    /// Multiplicative order, via the lcm of cycle lengths.
    pub fn order(&self) -> usize {
        let mut seen = vec![false; self.images.len()];
        let mut order = 1usize;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0usize;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.images[p];
                len += 1;
            }
            order = lcm(order, len);
        }
        order
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl std::fmt::Debug for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![0, 0, 2]).is_err());
        assert!(Permutation::new(vec![0, 3]).is_err());
        assert!(Permutation::new(vec![1, 0]).is_ok());
    }

    #[test]
    fn cycles_compose_and_invert() {
        let four = Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        assert_eq!(four.order(), 4);
        assert_eq!(four.then(&four).images(), &[2, 3, 0, 1]);
        assert!(four.then(&four.inverse()).is_identity());

        let swap = Permutation::from_cycles(4, &[&[1, 3]]).unwrap();
        assert_eq!(swap.order(), 2);
        // (0 1 2 3) then (1 3): 0 -> 1 -> 3.
        assert_eq!(four.then(&swap).image(0), 3);
    }

    #[test]
    fn order_is_cycle_lcm() {
        let p = Permutation::from_cycles(5, &[&[0, 1], &[2, 3, 4]]).unwrap();
        assert_eq!(p.order(), 6);
    }
}
