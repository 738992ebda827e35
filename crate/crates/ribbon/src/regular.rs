//! Regular partial duals: cyclic words of bouquets, shorter marking arrow
//! sequences, laminar sequence sets, d-lengths, the degree-sequence formula
//! and the enumerator of all subsets A for which the partial dual on A is
//! k-regular.
//!
//! An edge's two arrows split the cyclic word of a bouquet into two arcs,
//! each starting at one occurrence and ending just before the partner; the
//! shorter one (either, on a tie) is the edge's shorter marking arrow
//! sequence. A sequence set requires every corresponding edge to be an
//! orientable loop and the arcs to be pairwise nested or disjoint. Dualizing
//! the corresponding edges then splits the bouquet vertex along the arcs, and
//! the degree sequence of the result is the arcs' d-lengths plus one residual
//! vertex taking whatever is left.

use std::collections::BTreeMap;

use crate::error::{Result, RibbonError};
use crate::presentation::{ArrowOccurrence, ArrowPresentation, EdgeLabel, EdgeSet};
use crate::spanning::{canonical_subset_order, spanning_quasi_trees};
use crate::topology::require_connected;
use crate::twist::partial_dual_raw;

/// The marking arrows of a bouquet along its single circle, in stored
/// traversal order. Arc positions index into this word.
#[derive(Debug, Clone)]
pub struct CyclicWord {
    occs: Vec<ArrowOccurrence>,
}

impl CyclicWord {
    pub fn occurrences(&self) -> &[ArrowOccurrence] {
        &self.occs
    }

    pub fn len(&self) -> usize {
        self.occs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.occs.is_empty()
    }

    /// Sorted edge labels of the word.
    pub fn edges(&self) -> EdgeSet {
        self.occs.iter().map(|o| o.edge.clone()).collect()
    }

    fn positions_of(&self, e: &EdgeLabel) -> Vec<usize> {
        self.occs
            .iter()
            .enumerate()
            .filter(|(_, o)| &o.edge == e)
            .map(|(i, _)| i)
            .collect()
    }

    fn is_orientable_loop(&self, e: &EdgeLabel) -> bool {
        let pos = self.positions_of(e);
        pos.len() == 2 && self.occs[pos[0]].sign == self.occs[pos[1]].sign
    }
}

/// The word of a one-circle presentation, in its stored rotation.
pub fn cyclic_word(b: &ArrowPresentation) -> Result<CyclicWord> {
    if b.circle_count() != 1 {
        return Err(RibbonError::NotABouquet(b.circle_count()));
    }
    Ok(CyclicWord {
        occs: b.circles()[0].word.clone(),
    })
}

/// A contiguous cyclic arc of a bouquet word, starting at one occurrence of
/// its edge and ending just before the partner occurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShorterSequence {
    pub edge: EdgeLabel,
    pub start: usize,
    pub len: usize,
    /// Set when the two arcs of the edge have equal length, so either is a
    /// valid shorter sequence.
    pub tie: bool,
}

impl ShorterSequence {
    pub fn contains(&self, pos: usize, ring: usize) -> bool {
        (pos + ring - self.start) % ring < self.len
    }

    /// Positions of the arc on the ring, in arc order.
    pub fn positions(&self, ring: usize) -> Vec<usize> {
        (0..self.len).map(|i| (self.start + i) % ring).collect()
    }

    /// True iff this arc is a subset of `other` as cyclic position sets.
    pub fn subset_of(&self, other: &ShorterSequence, ring: usize) -> bool {
        (self.start + ring - other.start) % ring + self.len <= other.len
    }

    pub fn disjoint_from(&self, other: &ShorterSequence, ring: usize) -> bool {
        !self.contains(other.start, ring) && !other.contains(self.start, ring)
    }

    pub fn letters(&self, w: &CyclicWord) -> Vec<EdgeLabel> {
        self.positions(w.len())
            .into_iter()
            .map(|p| w.occurrences()[p].edge.clone())
            .collect()
    }
}

fn laminar(a: &ShorterSequence, b: &ShorterSequence, ring: usize) -> bool {
    a.subset_of(b, ring) || b.subset_of(a, ring) || a.disjoint_from(b, ring)
}

/// The shorter arc between the two occurrences of `e`, or both arcs when
/// their lengths tie.
pub fn shorter_sequences(w: &CyclicWord, e: &EdgeLabel) -> Result<Vec<ShorterSequence>> {
    let pos = w.positions_of(e);
    if pos.len() != 2 {
        return Err(RibbonError::UnknownEdge(e.as_str().to_string()));
    }
    let ring = w.len();
    let len_first = (pos[1] + ring - pos[0]) % ring;
    let len_second = ring - len_first;
    let arc = |start: usize, len: usize, tie: bool| ShorterSequence {
        edge: e.clone(),
        start,
        len,
        tie,
    };
    Ok(if len_first < len_second {
        vec![arc(pos[0], len_first, false)]
    } else if len_second < len_first {
        vec![arc(pos[1], len_second, false)]
    } else {
        vec![arc(pos[0], len_first, true), arc(pos[1], len_second, true)]
    })
}

/// A shorter-sequence set with resolved tie choices. The empty set is valid.
#[derive(Debug, Clone)]
pub struct SmsSet {
    pub arcs: Vec<ShorterSequence>,
    /// Length of the underlying cyclic word (twice the bouquet's edge count).
    pub word_len: usize,
}

impl SmsSet {
    pub fn new(arcs: Vec<ShorterSequence>, word_len: usize) -> Self {
        SmsSet { arcs, word_len }
    }
}

/// True iff every arc is a genuine shorter sequence of distinct edges of the
/// bouquet, every corresponding edge is an orientable loop, and the arcs are
/// pairwise nested or disjoint.
pub fn is_sms_set(b: &ArrowPresentation, arcs: &[ShorterSequence]) -> Result<bool> {
    let w = cyclic_word(b)?;
    let ring = w.len();
    let mut seen = EdgeSet::new();
    for arc in arcs {
        if !seen.insert(arc.edge.clone()) {
            return Ok(false);
        }
        if !w.is_orientable_loop(&arc.edge) {
            return Ok(false);
        }
        let legal = shorter_sequences(&w, &arc.edge)?;
        if !legal
            .iter()
            .any(|s| s.start == arc.start && s.len == arc.len)
        {
            return Ok(false);
        }
    }
    for (i, a) in arcs.iter().enumerate() {
        for b in &arcs[i + 1..] {
            if !laminar(a, b, ring) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Number of positions of arc `index` not covered by another arc of the set
/// nested strictly inside it. Arcs containing arc `index` do not subtract.
pub fn d_length(s: &SmsSet, index: usize) -> Result<usize> {
    if index >= s.arcs.len() {
        return Err(RibbonError::IndexOutOfRange {
            index,
            len: s.arcs.len(),
        });
    }
    Ok(d_length_unchecked(&s.arcs, index, s.word_len))
}

fn d_length_unchecked(arcs: &[ShorterSequence], index: usize, ring: usize) -> usize {
    let target = &arcs[index];
    let children: Vec<&ShorterSequence> = arcs
        .iter()
        .enumerate()
        .filter(|&(i, a)| i != index && a.subset_of(target, ring) && a.len < target.len)
        .map(|(_, a)| a)
        .collect();
    target
        .positions(ring)
        .into_iter()
        .filter(|&p| !children.iter().any(|c| c.contains(p, ring)))
        .count()
}

/// The degree sequence of the partial dual on the set's corresponding edges:
/// every arc contributes its d-length, and one residual vertex takes the
/// rest. Returned sorted ascending.
pub fn predicted_degree_sequence(b: &ArrowPresentation, s: &SmsSet) -> Result<Vec<usize>> {
    if !is_sms_set(b, &s.arcs)? {
        return Err(RibbonError::InvalidSmsSet(
            "arcs are not a shorter-sequence set of the bouquet".to_string(),
        ));
    }
    let total = cyclic_word(b)?.len();
    let mut degrees = Vec::with_capacity(s.arcs.len() + 1);
    let mut sum = 0;
    for i in 0..s.arcs.len() {
        let d = d_length_unchecked(&s.arcs, i, s.word_len);
        sum += d;
        degrees.push(d);
    }
    degrees.push(total - sum);
    degrees.sort_unstable();
    Ok(degrees)
}

/// How one emitted subset was found: the spanning quasi-tree and the sequence
/// set on its dual bouquet.
#[derive(Debug, Clone)]
pub struct RegularWitness {
    pub quasi_tree: EdgeSet,
    pub arcs: Vec<ShorterSequence>,
    /// Stored word of the dual bouquet, for display of the arcs.
    pub bouquet_word: Vec<ArrowOccurrence>,
}

/// All subsets A such that the partial dual on A is k-regular, with the
/// quasi-tree / sequence-set witnesses that produced each one.
///
/// For each spanning quasi-tree Q the dual on E(Q) is a bouquet; every
/// sequence set of size 2m/k - 1 with all d-lengths equal to k yields
/// A = E(Q) symmetric-difference the corresponding edges. Both branches of a
/// tie are explored and results are deduplicated per subset. Non-divisor k
/// (and k > 2m) yield the empty map rather than an error.
pub fn enumerate_regular_partial_duals_witnessed(
    p: &ArrowPresentation,
    k: usize,
) -> Result<BTreeMap<EdgeSet, Vec<RegularWitness>>> {
    require_connected(p)?;
    let mut out: BTreeMap<EdgeSet, Vec<RegularWitness>> = BTreeMap::new();
    let total = 2 * p.edge_count();
    if k == 0 || total == 0 && k > 0 {
        // an edgeless presentation has one vertex of degree 0; no positive k
        return Ok(out);
    }
    if total % k != 0 || k > total {
        return Ok(out);
    }
    let n = total / k - 1;
    for qt in spanning_quasi_trees(p)? {
        let dual = partial_dual_raw(p, &qt);
        debug_assert_eq!(dual.circle_count(), 1, "quasi-tree dual must be a bouquet");
        let w = cyclic_word(&dual)?;
        for arcs in search_sms_sets(&w, k, n) {
            let picked: EdgeSet = arcs.iter().map(|a| a.edge.clone()).collect();
            let a: EdgeSet = qt.symmetric_difference(&picked).cloned().collect();
            out.entry(a).or_default().push(RegularWitness {
                quasi_tree: qt.clone(),
                arcs,
                bouquet_word: w.occurrences().to_vec(),
            });
        }
    }
    Ok(out)
}

/// The subsets alone, in canonical subset order.
pub fn enumerate_regular_partial_duals(p: &ArrowPresentation, k: usize) -> Result<Vec<EdgeSet>> {
    let mut keys: Vec<EdgeSet> = enumerate_regular_partial_duals_witnessed(p, k)?
        .into_keys()
        .collect();
    keys.sort_by(canonical_subset_order);
    Ok(keys)
}

/// Backtracking search for all sequence sets of exactly `n` distinct edges
/// with every d-length equal to `k`. Candidates are the shorter arcs of
/// orientable loops; branches prune on laminarity and on any chosen arc's
/// d-length falling below `k` (it can only shrink as nested arcs are added).
fn search_sms_sets(w: &CyclicWord, k: usize, n: usize) -> Vec<Vec<ShorterSequence>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let ring = w.len();
    let mut candidates: Vec<ShorterSequence> = Vec::new();
    for e in w.edges() {
        if !w.is_orientable_loop(&e) {
            continue;
        }
        for arc in shorter_sequences(w, &e).expect("edge from the word") {
            if arc.len >= k {
                candidates.push(arc);
            }
        }
    }
    candidates.sort_by(|a, b| a.edge.cmp(&b.edge).then(a.start.cmp(&b.start)));

    let mut results = Vec::new();
    let mut chosen: Vec<ShorterSequence> = Vec::new();
    search(&candidates, 0, n, k, ring, &mut chosen, &mut results);
    results
}

fn search(
    candidates: &[ShorterSequence],
    from: usize,
    n: usize,
    k: usize,
    ring: usize,
    chosen: &mut Vec<ShorterSequence>,
    results: &mut Vec<Vec<ShorterSequence>>,
) {
    if chosen.len() == n {
        if (0..chosen.len()).all(|i| d_length_unchecked(chosen, i, ring) == k) {
            results.push(chosen.clone());
        }
        return;
    }
    if from >= candidates.len() {
        return;
    }
    // distinct edges still reachable from here
    let mut remaining = EdgeSet::new();
    for c in &candidates[from..] {
        remaining.insert(c.edge.clone());
    }
    if chosen.len() + remaining.len() < n {
        return;
    }

    let cand = &candidates[from];
    let usable = !chosen.iter().any(|c| c.edge == cand.edge)
        && chosen.iter().all(|c| laminar(c, cand, ring));
    if usable {
        chosen.push(cand.clone());
        let feasible = (0..chosen.len()).all(|i| d_length_unchecked(chosen, i, ring) >= k);
        if feasible {
            search(candidates, from + 1, n, k, ring, chosen, results);
        }
        chosen.pop();
    }
    search(candidates, from + 1, n, k, ring, chosen, results);
}
