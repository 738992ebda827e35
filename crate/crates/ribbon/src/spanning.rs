//! Enumeration of spanning trees (of the underlying abstract graph), spanning
//! quasi-trees (edge subsets whose spanning ribbon subgraph has exactly one
//! boundary component), and forests.
//!
//! Quasi-tree enumeration is a plain subset sweep over the boundary tracer;
//! no delta-matroid shortcuts. Streams are returned in canonical subset order
//! (by size, then lexicographically).

use std::cmp::Ordering;

use crate::dsu::Dsu;
use crate::error::Result;
use crate::presentation::{ArrowPresentation, EdgeLabel, EdgeSet};
use crate::topology::{boundary_component_count, require_connected};
use crate::twist::{self, delete_raw};

/// Canonical subset order: by size, then lexicographically.
pub fn canonical_subset_order(a: &EdgeSet, b: &EdgeSet) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// All subsets of `edges` in canonical subset order.
pub fn all_subsets(edges: &EdgeSet) -> Vec<EdgeSet> {
    let list: Vec<EdgeLabel> = edges.iter().cloned().collect();
    let mut out: Vec<EdgeSet> = (0u64..(1 << list.len()))
        .map(|mask| {
            list.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, e)| e.clone())
                .collect()
        })
        .collect();
    out.sort_by(canonical_subset_order);
    out
}

/// The spanning ribbon subgraph on `subset`: all circles kept, every edge
/// outside `subset` removed.
pub fn spanning_subgraph(p: &ArrowPresentation, subset: &EdgeSet) -> Result<ArrowPresentation> {
    let complement: EdgeSet = p.edges().difference(subset).cloned().collect();
    // delete validates that subset edges exist via the caller's subset
    for e in subset {
        if !p.contains_edge(e) {
            return Err(crate::error::RibbonError::UnknownEdge(
                e.as_str().to_string(),
            ));
        }
    }
    twist::delete(p, &complement)
}

pub(crate) fn spanning_subgraph_raw(p: &ArrowPresentation, subset: &EdgeSet) -> ArrowPresentation {
    let complement: EdgeSet = p.edges().difference(subset).cloned().collect();
    delete_raw(p, &complement)
}

/// True iff `subset` is acyclic and has exactly |circles| - 1 edges, i.e. a
/// spanning tree of the (connected) underlying graph.
pub(crate) fn is_spanning_tree(p: &ArrowPresentation, subset: &EdgeSet) -> bool {
    subset.len() + 1 == p.circle_count() && is_acyclic(p, subset)
}

fn is_acyclic(p: &ArrowPresentation, subset: &EdgeSet) -> bool {
    let mut dsu = Dsu::new(p.circle_count());
    for e in subset {
        let pos = p.occurrence_positions(e);
        if !dsu.union(pos[0].0, pos[1].0) {
            return false;
        }
    }
    true
}

/// Every subset of size |circles| - 1 whose underlying abstract edge set is
/// acyclic (hence a spanning tree of the connected input), each exactly once.
pub fn spanning_trees(p: &ArrowPresentation) -> Result<Vec<EdgeSet>> {
    require_connected(p)?;
    let want = p.circle_count() - 1;
    Ok(all_subsets(&p.edges())
        .into_iter()
        .filter(|s| s.len() == want && is_acyclic(p, s))
        .collect())
}

/// Every subset whose spanning ribbon subgraph has exactly one boundary
/// component, each exactly once.
pub fn spanning_quasi_trees(p: &ArrowPresentation) -> Result<Vec<EdgeSet>> {
    require_connected(p)?;
    Ok(all_subsets(&p.edges())
        .into_iter()
        .filter(|s| boundary_component_count(&spanning_subgraph_raw(p, s)) == 1)
        .collect())
}

/// All acyclic subsets of the underlying abstract graph.
pub fn forests(p: &ArrowPresentation) -> Vec<EdgeSet> {
    all_subsets(&p.edges())
        .into_iter()
        .filter(|s| is_acyclic(p, s))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::RibbonError;
    use crate::presentation::{bouquet, presentation};
    use crate::twist::partial_dual_raw;

    fn set(names: &[&str]) -> EdgeSet {
        names.iter().map(|n| EdgeLabel::new(n).unwrap()).collect()
    }

    #[test]
    fn subgraph_examples() {
        let p = bouquet(&[("e1", '+'), ("e2", '+'), ("e1", '+'), ("e2", '+')]);
        assert!(spanning_subgraph(&p, &p.edges()).unwrap().equals(&p));
        let empty = spanning_subgraph(&p, &EdgeSet::new()).unwrap();
        assert_eq!(empty.circle_count(), 1);
        assert!(empty.circles()[0].word.is_empty());
        let one = spanning_subgraph(&p, &set(&["e1"])).unwrap();
        assert!(one.equals(&bouquet(&[("e1", '+'), ("e1", '+')])));
    }

    #[test]
    fn spanning_tree_examples() {
        let loop_b = bouquet(&[("e1", '+'), ("e1", '+')]);
        assert_eq!(spanning_trees(&loop_b).unwrap(), vec![EdgeSet::new()]);

        let edge = presentation(&[("a", &[("e1", '+')]), ("b", &[("e1", '-')])]);
        assert_eq!(spanning_trees(&edge).unwrap(), vec![set(&["e1"])]);

        let parallel = presentation(&[
            ("a", &[("e1", '+'), ("e2", '+')]),
            ("b", &[("e1", '-'), ("e2", '-')]),
        ]);
        assert_eq!(
            spanning_trees(&parallel).unwrap(),
            vec![set(&["e1"]), set(&["e2"])]
        );

        let split = presentation(&[
            ("a", &[("e1", '+'), ("e1", '+')]),
            ("b", &[("e2", '+'), ("e2", '+')]),
        ]);
        assert!(matches!(
            spanning_trees(&split),
            Err(RibbonError::Disconnected(2))
        ));
    }

    #[test]
    fn quasi_tree_examples() {
        let loop_b = bouquet(&[("e1", '+'), ("e1", '+')]);
        assert_eq!(spanning_quasi_trees(&loop_b).unwrap(), vec![EdgeSet::new()]);

        let twisted = bouquet(&[("e1", '+'), ("e1", '-')]);
        assert_eq!(
            spanning_quasi_trees(&twisted).unwrap(),
            vec![EdgeSet::new(), set(&["e1"])]
        );

        let torus = bouquet(&[("e1", '+'), ("e2", '+'), ("e1", '+'), ("e2", '+')]);
        assert_eq!(
            spanning_quasi_trees(&torus).unwrap(),
            vec![EdgeSet::new(), set(&["e1", "e2"])]
        );
    }

    #[test]
    fn forest_examples() {
        let loop_b = bouquet(&[("e1", '+'), ("e1", '+')]);
        assert_eq!(forests(&loop_b), vec![EdgeSet::new()]);

        let edge = presentation(&[("a", &[("e1", '+')]), ("b", &[("e1", '-')])]);
        assert_eq!(forests(&edge), vec![EdgeSet::new(), set(&["e1"])]);

        let triangle = presentation(&[
            ("a", &[("e1", '+'), ("e3", '-')]),
            ("b", &[("e2", '+'), ("e1", '-')]),
            ("c", &[("e3", '+'), ("e2", '-')]),
        ]);
        assert_eq!(forests(&triangle).len(), 7);
    }

    #[test]
    fn trees_are_quasi_trees() {
        let samples = [
            presentation(&[
                ("a", &[("e1", '+'), ("e2", '+')]),
                ("b", &[("e1", '-'), ("e2", '-')]),
            ]),
            bouquet(&[("e1", '+'), ("e2", '+'), ("e1", '+'), ("e2", '+')]),
            presentation(&[
                ("a", &[("e1", '+'), ("e3", '-')]),
                ("b", &[("e2", '+'), ("e1", '-')]),
                ("c", &[("e3", '+'), ("e2", '-')]),
            ]),
        ];
        for p in samples {
            let trees = spanning_trees(&p).unwrap();
            let qts = spanning_quasi_trees(&p).unwrap();
            for t in &trees {
                assert!(qts.contains(t), "tree {t:?} missing from quasi-trees");
            }
        }
    }

    #[test]
    fn dual_circle_count_matches_subgraph_boundaries() {
        let p = bouquet(&[
            ("e1", '+'),
            ("e2", '-'),
            ("e1", '+'),
            ("e3", '+'),
            ("e3", '+'),
            ("e2", '+'),
        ]);
        for a in all_subsets(&p.edges()) {
            let dual = partial_dual_raw(&p, &a);
            let sub = spanning_subgraph_raw(&p, &a);
            assert_eq!(dual.circle_count(), boundary_component_count(&sub));
        }
    }
}
