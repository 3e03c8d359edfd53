//! Permutations of `{0..n}`.

use alloc::vec::Vec;

use thiserror::Error;

use crate::table::Element;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("images do not form a bijection on 0..{0}")]
pub struct NotABijection(pub usize);

/// A bijection on `0..n`, stored as its image list.
///
/// Composition follows function order: `a.then(&b)` applies `a` first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<Element>,
}

impl Permutation {
    pub fn new(images: Vec<Element>) -> Result<Self, NotABijection> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(NotABijection(n));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<Element>) -> Self {
        debug_assert!(Self::new(images.clone()).is_ok());
        Permutation { images }
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).map(|i| i as Element).collect() }
    }

    pub fn transposition(n: usize, a: Element, b: Element) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(a as usize, b as usize);
        p
    }

    #[inline]
    pub fn apply(&self, x: Element) -> Element {
        self.images[x as usize]
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = alloc::vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as Element;
        }
        Permutation { images: inv }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Permutation) -> Self {
        Permutation { images: self.images.iter().map(|&v| next.apply(v)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n as Element).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(Permutation::from_images_unchecked)
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
        assert!(Permutation::new(vec![1, 0]).is_ok());
    }

    proptest! {
        #[test]
        fn inverse_cancels(p in perm(9)) {
            prop_assert!(p.then(&p.inverse()).is_identity());
            prop_assert!(p.inverse().then(&p).is_identity());
        }

        #[test]
        fn composition_is_function_order(p in perm(7), q in perm(7), x in 0u8..7) {
            prop_assert_eq!(p.then(&q).apply(x), q.apply(p.apply(x)));
        }
    }
}
