//! Checkerboard-colourable partial Petrials of an Eulerian presentation:
//! contraction of a spanning tree to a marked bouquet, the parity index t,
//! the base set, adjoint sets, and the enumerator of all subsets A for which
//! the partial Petrial on A is checkerboard colourable.
//!
//! Contracting a spanning tree T leaves a bouquet; instead of deleting the
//! tree arrows we keep them as markers recording where the tree edges stood.
//! Markers are transparent: consecutive live arrows are separated by exactly
//! one vertex arc even if markers sit between them.
//!
//! For a live edge, t is 0 exactly when the vertex arcs incident with the
//! head of its first arrow and with the tail of its second arrow get equal
//! colours under the alternating 2-colouring of the bouquet's vertex arcs,
//! i.e. when an odd number of vertex arcs (both endpoint arcs included)
//! separates them. The bouquet has evenly many vertex arcs, so the parity is
//! the same measured either way around.

use std::collections::BTreeMap;

use crate::error::{Result, RibbonError};
use crate::presentation::{ArrowOccurrence, ArrowPresentation, EdgeLabel, EdgeSet, Sign};
use crate::spanning::{all_subsets, canonical_subset_order, spanning_trees};
use crate::topology::{is_eulerian, require_connected};
use crate::twist::splice_words;

/// An occurrence of the marked bouquet: a live arrow of the contraction, or
/// a marker standing where a tree edge's arrow ended up.
#[derive(Debug, Clone)]
pub struct MarkedOccurrence {
    pub edge: EdgeLabel,
    pub sign: Sign,
    pub marker: bool,
}

/// The contraction of a spanning tree, with the tree arrows retained as
/// position markers.
#[derive(Debug, Clone)]
pub struct MarkedBouquet {
    word: Vec<MarkedOccurrence>,
    tree: EdgeSet,
}

impl MarkedBouquet {
    pub fn word(&self) -> &[MarkedOccurrence] {
        &self.word
    }

    pub fn tree(&self) -> &EdgeSet {
        &self.tree
    }

    pub fn live_edges(&self) -> EdgeSet {
        self.word
            .iter()
            .filter(|o| !o.marker)
            .map(|o| o.edge.clone())
            .collect()
    }

    /// The live subword; equals the cyclic word of the plain contraction.
    pub fn live_word(&self) -> Vec<ArrowOccurrence> {
        self.word
            .iter()
            .filter(|o| !o.marker)
            .map(|o| ArrowOccurrence::new(o.edge.clone(), o.sign))
            .collect()
    }
}

fn check_spanning_tree(p: &ArrowPresentation, tree: &EdgeSet) -> Result<()> {
    for e in tree {
        if !p.contains_edge(e) {
            return Err(RibbonError::UnknownEdge(e.as_str().to_string()));
        }
    }
    if !crate::spanning::is_spanning_tree(p, tree) {
        let names: Vec<&str> = tree.iter().map(|e| e.as_str()).collect();
        return Err(RibbonError::NotASpanningTree(format!(
            "{{{}}}",
            names.join(",")
        )));
    }
    Ok(())
}

/// Dualizes the spanning tree (yielding a bouquet) and flags the tree's
/// arrows as markers instead of deleting them.
pub fn contract_to_marked_bouquet(p: &ArrowPresentation, tree: &EdgeSet) -> Result<MarkedBouquet> {
    require_connected(p)?;
    check_spanning_tree(p, tree)?;
    let mut words = splice_words(p, tree);
    assert_eq!(words.len(), 1, "spanning-tree dual must be a bouquet");
    let word = words
        .remove(0)
        .into_iter()
        .map(|o| MarkedOccurrence {
            marker: tree.contains(&o.edge),
            edge: o.edge,
            sign: o.sign,
        })
        .collect();
    Ok(MarkedBouquet {
        word,
        tree: tree.clone(),
    })
}

/// Index of the vertex arc touching the given end of a live arrow, counting
/// arcs between consecutive live arrows only (markers transparent). Arc i
/// precedes live arrow i.
fn live_arc_indices(mb: &MarkedBouquet, e: &EdgeLabel) -> Result<(usize, usize, usize)> {
    if mb.tree.contains(e) {
        return Err(RibbonError::NotALiveEdge(e.as_str().to_string()));
    }
    let live: Vec<&MarkedOccurrence> = mb.word.iter().filter(|o| !o.marker).collect();
    let positions: Vec<usize> = live
        .iter()
        .enumerate()
        .filter(|(_, o)| &o.edge == e)
        .map(|(i, _)| i)
        .collect();
    if positions.len() != 2 {
        return Err(RibbonError::UnknownEdge(e.as_str().to_string()));
    }
    let count = live.len();
    // head of an arrow sits after it in traversal order for `+`, before it
    // for `-`; the tail is the opposite end
    let head_arc = |i: usize| match live[i].sign {
        Sign::Plus => (i + 1) % count,
        Sign::Minus => i,
    };
    let tail_arc = |i: usize| match live[i].sign {
        Sign::Plus => i,
        Sign::Minus => (i + 1) % count,
    };
    Ok((head_arc(positions[0]), tail_arc(positions[1]), count))
}

/// The index t of a live edge: 0 if the head of its first arrow and the tail
/// of its second arrow are separated by an odd number of vertex arcs
/// (endpoint arcs included), 1 otherwise.
pub fn t_index(mb: &MarkedBouquet, e: &EdgeLabel) -> Result<u8> {
    let (head_arc, tail_arc, count) = live_arc_indices(mb, e)?;
    debug_assert!(count % 2 == 0, "a bouquet has evenly many vertex arcs");
    Ok(if head_arc % 2 == tail_arc % 2 { 0 } else { 1 })
}

/// The live edges with t = 1.
pub fn base_set(mb: &MarkedBouquet) -> EdgeSet {
    mb.live_edges()
        .into_iter()
        .filter(|e| t_index(mb, e) == Ok(1))
        .collect()
}

/// Which of the two marker intervals of a tree edge to read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalSide {
    /// The interval following the edge's first marker in stored order.
    AfterFirst,
    /// The interval following its second marker.
    AfterSecond,
}

/// A tree edge together with the non-tree edges that have exactly one arrow
/// inside its marker interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjointSet {
    pub tree_edge: EdgeLabel,
    pub members: EdgeSet,
}

/// Adjoint set on the default side (after the first marker).
pub fn adjoint_set(mb: &MarkedBouquet, e: &EdgeLabel) -> Result<AdjointSet> {
    adjoint_set_on_side(mb, e, IntervalSide::AfterFirst)
}

/// Adjoint set with an explicit side choice; the enumerated Petrial family
/// is the same for either side.
pub fn adjoint_set_on_side(
    mb: &MarkedBouquet,
    e: &EdgeLabel,
    side: IntervalSide,
) -> Result<AdjointSet> {
    if !mb.tree.contains(e) {
        return Err(RibbonError::NotATreeEdge(e.as_str().to_string()));
    }
    let markers: Vec<usize> = mb
        .word
        .iter()
        .enumerate()
        .filter(|(_, o)| &o.edge == e)
        .map(|(i, _)| i)
        .collect();
    debug_assert_eq!(markers.len(), 2);
    let (from, to) = match side {
        IntervalSide::AfterFirst => (markers[0], markers[1]),
        IntervalSide::AfterSecond => (markers[1], markers[0]),
    };
    let total = mb.word.len();
    let mut counts: BTreeMap<EdgeLabel, usize> = BTreeMap::new();
    let mut i = (from + 1) % total;
    while i != to {
        let occ = &mb.word[i];
        if !occ.marker {
            *counts.entry(occ.edge.clone()).or_insert(0) += 1;
        }
        i = (i + 1) % total;
    }
    let mut members: EdgeSet = counts
        .into_iter()
        .filter(|&(_, c)| c == 1)
        .map(|(f, _)| f)
        .collect();
    members.insert(e.clone());
    Ok(AdjointSet {
        tree_edge: e.clone(),
        members,
    })
}

/// Everything the enumerator derives from one spanning tree.
#[derive(Debug, Clone)]
pub struct CcPetrialReport {
    pub tree: EdgeSet,
    pub base_set: EdgeSet,
    pub adjoints: Vec<AdjointSet>,
    /// One row per subset S of the tree: (S, base Δ the adjoint sets of S).
    pub rows: Vec<(EdgeSet, EdgeSet)>,
}

fn sym_diff(a: &EdgeSet, b: &EdgeSet) -> EdgeSet {
    a.symmetric_difference(b).cloned().collect()
}

/// One row per subset S of the tree: (S, base Δ the adjoint sets of S's
/// edges). Pure set arithmetic over the given base and adjoint data.
pub fn symmetric_difference_family(
    base: &EdgeSet,
    adjoints: &[AdjointSet],
    tree: &EdgeSet,
) -> Vec<(EdgeSet, EdgeSet)> {
    all_subsets(tree)
        .into_iter()
        .map(|s| {
            let mut a = base.clone();
            for adj in adjoints {
                if s.contains(&adj.tree_edge) {
                    a = sym_diff(&a, &adj.members);
                }
            }
            (s, a)
        })
        .collect()
}

/// Full report for a chosen (or default, canonically first) spanning tree.
pub fn enumerate_cc_petrials_report(
    p: &ArrowPresentation,
    tree: Option<&EdgeSet>,
    side: IntervalSide,
) -> Result<CcPetrialReport> {
    require_connected(p)?;
    if !is_eulerian(p) {
        return Err(RibbonError::NotEulerian);
    }
    let tree = match tree {
        Some(t) => t.clone(),
        None => spanning_trees(p)?
            .into_iter()
            .next()
            .expect("a connected presentation has a spanning tree"),
    };
    let mb = contract_to_marked_bouquet(p, &tree)?;
    let base = base_set(&mb);
    let adjoints: Vec<AdjointSet> = tree
        .iter()
        .map(|e| adjoint_set_on_side(&mb, e, side))
        .collect::<Result<_>>()?;
    let rows = symmetric_difference_family(&base, &adjoints, &tree);
    debug_assert_eq!(
        rows.iter()
            .map(|(_, a)| a.clone())
            .collect::<std::collections::BTreeSet<_>>()
            .len(),
        rows.len(),
        "the emitted subsets are pairwise distinct"
    );
    Ok(CcPetrialReport {
        tree,
        base_set: base,
        adjoints,
        rows,
    })
}

/// All subsets A such that the partial Petrial on A is checkerboard
/// colourable, in canonical subset order. There are exactly 2^(vertices - 1)
/// of them, one per subset of the spanning tree, and the family does not
/// depend on the tree choice.
pub fn enumerate_cc_petrials(p: &ArrowPresentation) -> Result<Vec<EdgeSet>> {
    let report = enumerate_cc_petrials_report(p, None, IntervalSide::AfterFirst)?;
    let mut subsets: Vec<EdgeSet> = report.rows.into_iter().map(|(_, a)| a).collect();
    subsets.sort_by(canonical_subset_order);
    Ok(subsets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{bouquet, presentation};
    use crate::topology::checkerboard_colouring;
    use crate::twist::{contract, partial_petrial_raw};

    fn e(name: &str) -> EdgeLabel {
        EdgeLabel::new(name).unwrap()
    }

    fn set(names: &[&str]) -> EdgeSet {
        names.iter().map(|n| e(n)).collect()
    }

    fn four_parallel() -> ArrowPresentation {
        presentation(&[
            ("a", &[("e1", '+'), ("e2", '+'), ("e3", '+'), ("e4", '+')]),
            ("b", &[("e4", '+'), ("e3", '+'), ("e2", '+'), ("e1", '+')]),
        ])
    }

    #[test]
    fn bouquet_contracts_to_itself() {
        let p = bouquet(&[("e1", '+'), ("e2", '+'), ("e1", '+'), ("e2", '+')]);
        let mb = contract_to_marked_bouquet(&p, &EdgeSet::new()).unwrap();
        assert!(mb.word().iter().all(|o| !o.marker));
        let live: Vec<ArrowOccurrence> = mb.live_word();
        assert_eq!(live, p.circles()[0].word);
    }

    #[test]
    fn tree_contraction_marks_two_arrows() {
        let p = four_parallel();
        let tree = set(&["e1"]);
        let mb = contract_to_marked_bouquet(&p, &tree).unwrap();
        assert_eq!(mb.word().iter().filter(|o| o.marker).count(), 2);
        assert!(mb
            .word()
            .iter()
            .filter(|o| o.marker)
            .all(|o| o.edge == e("e1")));
        // the live subword is the cyclic word of the plain contraction
        let contracted = contract(&p, &tree).unwrap();
        let live = ArrowPresentation::new_unchecked(vec![crate::presentation::Circle::new(
            "v0",
            mb.live_word(),
        )]);
        assert!(live.equals(&contracted));
    }

    #[test]
    fn non_trees_are_rejected() {
        let p = four_parallel();
        assert!(matches!(
            contract_to_marked_bouquet(&p, &set(&["e1", "e2"])),
            Err(RibbonError::NotASpanningTree(_))
        ));
        let loop_b = bouquet(&[("e1", '+'), ("e1", '+')]);
        assert!(matches!(
            contract_to_marked_bouquet(&loop_b, &set(&["e1"])),
            Err(RibbonError::NotASpanningTree(_))
        ));
    }

    #[test]
    fn t_index_values() {
        // interlaced double loop: both edges have t = 1
        let torus = bouquet(&[("e1", '+'), ("e2", '+'), ("e1", '+'), ("e2", '+')]);
        let mb = contract_to_marked_bouquet(&torus, &EdgeSet::new()).unwrap();
        assert_eq!(t_index(&mb, &e("e1")).unwrap(), 1);
        assert_eq!(t_index(&mb, &e("e2")).unwrap(), 1);

        // untwisted loop: the head of the first arrow and the tail of the
        // second share one vertex arc, so t = 0
        let loop_b = bouquet(&[("e1", '+'), ("e1", '+')]);
        let mb = contract_to_marked_bouquet(&loop_b, &EdgeSet::new()).unwrap();
        assert_eq!(t_index(&mb, &e("e1")).unwrap(), 0);

        // twisted loop: t = 1
        let twisted = bouquet(&[("e1", '+'), ("e1", '-')]);
        let mb = contract_to_marked_bouquet(&twisted, &EdgeSet::new()).unwrap();
        assert_eq!(t_index(&mb, &e("e1")).unwrap(), 1);

        assert!(matches!(
            t_index(&mb, &e("zz")),
            Err(RibbonError::UnknownEdge(_))
        ));
    }

    #[test]
    fn t_index_ignores_role_assignment() {
        // swapping which occurrence is first never changes t: measure from
        // the other side by reversing the presentations below
        let samples = [
            bouquet(&[("e1", '+'), ("e2", '+'), ("e1", '+'), ("e2", '+')]),
            bouquet(&[
                ("e1", '+'),
                ("e2", '-'),
                ("e1", '+'),
                ("e3", '+'),
                ("e3", '+'),
                ("e2", '+'),
            ]),
        ];
        for p in samples {
            let mb = contract_to_marked_bouquet(&p, &EdgeSet::new()).unwrap();
            let reversed = p.reflect_circle(0);
            let mbr = contract_to_marked_bouquet(&reversed, &EdgeSet::new()).unwrap();
            for edge in p.edges() {
                assert_eq!(t_index(&mb, &edge).unwrap(), t_index(&mbr, &edge).unwrap());
            }
        }
    }

    #[test]
    fn base_sets() {
        let torus = bouquet(&[("e1", '+'), ("e2", '+'), ("e1", '+'), ("e2", '+')]);
        let mb = contract_to_marked_bouquet(&torus, &EdgeSet::new()).unwrap();
        assert_eq!(base_set(&mb), set(&["e1", "e2"]));

        let loop_b = bouquet(&[("e1", '+'), ("e1", '+')]);
        let mb = contract_to_marked_bouquet(&loop_b, &EdgeSet::new()).unwrap();
        assert_eq!(base_set(&mb), EdgeSet::new());

        // no live edges at all
        let path = presentation(&[("a", &[("e1", '+')]), ("b", &[("e1", '+')])]);
        let mb = contract_to_marked_bouquet(&path, &set(&["e1"])).unwrap();
        assert_eq!(base_set(&mb), EdgeSet::new());
    }

    #[test]
    fn adjoint_set_examples() {
        // adjacent markers: empty interval
        let p = presentation(&[
            ("a", &[("e1", '+'), ("e2", '+'), ("e2", '+')]),
            ("b", &[("e1", '+')]),
        ]);
        let mb = contract_to_marked_bouquet(&p, &set(&["e1"])).unwrap();
        let adj = adjoint_set(&mb, &e("e1")).unwrap();
        assert_eq!(adj.members, set(&["e1"]));
        assert!(matches!(
            adjoint_set(&mb, &e("e2")),
            Err(RibbonError::NotATreeEdge(_))
        ));

        // interval holding both arrows of e3 and one of e2: e3 drops out
        let p = presentation(&[
            ("a", &[("e1", '+'), ("e2", '+'), ("e3", '+'), ("e3", '+')]),
            ("b", &[("e1", '+'), ("e2", '+')]),
        ]);
        let mb = contract_to_marked_bouquet(&p, &set(&["e1"])).unwrap();
        let far_side = adjoint_set_on_side(&mb, &e("e1"), IntervalSide::AfterSecond).unwrap();
        assert_eq!(far_side.members, set(&["e1", "e2"]));
        let near_side = adjoint_set(&mb, &e("e1")).unwrap();
        assert_eq!(near_side.members, set(&["e1", "e2"]));
    }

    #[test]
    fn enumerate_examples() {
        let twisted = bouquet(&[("e1", '+'), ("e1", '-')]);
        assert_eq!(enumerate_cc_petrials(&twisted).unwrap(), vec![set(&["e1"])]);

        let loop_b = bouquet(&[("e1", '+'), ("e1", '+')]);
        assert_eq!(
            enumerate_cc_petrials(&loop_b).unwrap(),
            vec![EdgeSet::new()]
        );

        let torus = bouquet(&[("e1", '+'), ("e2", '+'), ("e1", '+'), ("e2", '+')]);
        assert_eq!(
            enumerate_cc_petrials(&torus).unwrap(),
            vec![set(&["e1", "e2"])]
        );

        let path = presentation(&[("a", &[("e1", '+')]), ("b", &[("e1", '+')])]);
        assert!(matches!(
            enumerate_cc_petrials(&path),
            Err(RibbonError::NotEulerian)
        ));
    }

    #[test]
    fn family_size_and_oracle_agreement() {
        let samples = [
            four_parallel(),
            bouquet(&[("e1", '+'), ("e2", '+'), ("e1", '+'), ("e2", '+')]),
            presentation(&[
                ("a", &[("e1", '+'), ("e2", '+')]),
                ("b", &[("e1", '-'), ("e2", '-')]),
            ]),
        ];
        for p in samples {
            let found = enumerate_cc_petrials(&p).unwrap();
            assert_eq!(found.len(), 1 << (p.circle_count() - 1));
            let direct: Vec<EdgeSet> = all_subsets(&p.edges())
                .into_iter()
                .filter(|a| checkerboard_colouring(&partial_petrial_raw(&p, a)).is_some())
                .collect();
            assert_eq!(found, direct, "on {p}");
        }
    }

    #[test]
    fn tree_and_side_independence() {
        let p = four_parallel();
        let baseline: Vec<EdgeSet> = enumerate_cc_petrials(&p).unwrap();
        for tree in spanning_trees(&p).unwrap() {
            for side in [IntervalSide::AfterFirst, IntervalSide::AfterSecond] {
                let report = enumerate_cc_petrials_report(&p, Some(&tree), side).unwrap();
                let mut subsets: Vec<EdgeSet> = report.rows.into_iter().map(|(_, a)| a).collect();
                subsets.sort_by(canonical_subset_order);
                assert_eq!(subsets, baseline, "tree {tree:?}, side {side:?}");
            }
        }
    }

    #[test]
    fn adjoint_matches_oracle_on_four_parallel() {
        // the adjoint set of the tree edge equals base Δ A*, where A* is the
        // unique colourable Petrial subset meeting the tree exactly in it
        let p = four_parallel();
        let tree = set(&["e1"]);
        let mb = contract_to_marked_bouquet(&p, &tree).unwrap();
        let base = base_set(&mb);
        let adj = adjoint_set(&mb, &e("e1")).unwrap();
        let hits: Vec<EdgeSet> = all_subsets(&p.edges())
            .into_iter()
            .filter(|a| {
                checkerboard_colouring(&partial_petrial_raw(&p, a)).is_some()
                    && a.intersection(&tree).cloned().collect::<EdgeSet>() == tree
            })
            .collect();
        assert_eq!(hits.len(), 1);
        assert_eq!(adj.members, sym_diff(&base, &hits[0]));
    }
}
