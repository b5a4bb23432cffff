//! One-vertex augmentation: every way of attaching a new vertex to a graph,
//! up to isomorphism.

use std::collections::BTreeMap;

use crate::canon::{canonical_form, CanonicalCode};
use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

/// One representative per isomorphism class of connected graphs on `n + 1`
/// vertices whose first `n` vertices induce `g`. The new vertex is `n` and
/// gets every nonempty neighborhood. Sorted by canonical code.
pub fn augmentations(g: &Graph) -> Result<Vec<Graph>> {
    Ok(augmentations_with_codes(g)?.into_values().collect())
}

/// Same as [`augmentations`], keyed by canonical code.
pub fn augmentations_with_codes(g: &Graph) -> Result<BTreeMap<CanonicalCode, Graph>> {
    let n = g.order();
    if n >= MAX_VERTICES {
        return Err(Error::Capacity(format!(
            "cannot augment a graph with {n} vertices"
        )));
    }
    if n == 0 {
        return Err(Error::Precondition(
            "augmentation needs at least one vertex".into(),
        ));
    }
    let mut out = BTreeMap::new();
    for nbhd in 1..=g.vertex_mask() {
        let child = g.with_vertex(nbhd)?;
        out.entry(canonical_form(&child)).or_insert(child);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;
    use crate::graph::named::*;

    #[test]
    fn small_augmentations() {
        let k1 = Graph::empty(1).unwrap();
        let a = augmentations(&k1).unwrap();
        assert_eq!(a.len(), 1);
        assert!(are_isomorphic(&a[0], &complete(2)));

        let a = augmentations(&complete(2)).unwrap();
        assert_eq!(a.len(), 2);
        assert!(a.iter().any(|g| are_isomorphic(g, &path(3))));
        assert!(a.iter().any(|g| are_isomorphic(g, &complete(3))));

        let a = augmentations(&path(3)).unwrap();
        let expected = [path(4), star(3), paw(), cycle(4), diamond()];
        assert_eq!(a.len(), 5);
        for e in &expected {
            assert!(a.iter().any(|g| are_isomorphic(g, e)), "{e:?}");
        }
        for g in &a {
            assert_eq!(g.induced(0b111), path(3));
            assert!(g.is_connected());
        }
    }

    #[test]
    fn capacity_and_empty_errors() {
        assert!(augmentations(&Graph::empty(0).unwrap()).is_err());
        assert!(matches!(augmentations(&path(62)), Err(Error::Capacity(_))));
    }
}
