//! The twisted-duality group action on presentations: partial Petrials,
//! partial duals, deletion, contraction, and application of arbitrary words
//! in the per-subset generators.
//!
//! The partial dual of an edge cuts out its two arrow arcs and splices in two
//! new arrows, one from the head of the first occurrence to the tail of the
//! second and one the other way around. The splice is computed on an
//! endpoint-successor representation: each arrow contributes a tail and a
//! head endpoint, vertex arcs keep their pairings, and circles are recovered
//! by walking the rewired 2-regular graph. This handles same-circle and
//! cross-circle edges, merges and splits, uniformly.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Result, RibbonError};
use crate::presentation::{ArrowOccurrence, ArrowPresentation, Circle, EdgeLabel, EdgeSet, Sign};
use crate::topology::{head, tail, OccTable};

/// Generator of the twisted-duality group, acting per edge subset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    /// Partial dual.
    Delta,
    /// Partial Petrial.
    Tau,
}

/// One step of a twist word: a generator applied to an edge subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistStep {
    pub generator: Generator,
    pub edges: EdgeSet,
}

/// A word over per-subset generators, applied left to right.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TwistWord {
    pub steps: Vec<TwistStep>,
}

impl TwistWord {
    pub fn new(steps: Vec<TwistStep>) -> Self {
        TwistWord { steps }
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, step) in self.steps.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            let g = match step.generator {
                Generator::Delta => 'd',
                Generator::Tau => 't',
            };
            let edges: Vec<&str> = step.edges.iter().map(|e| e.as_str()).collect();
            write!(f, "{}{{{}}}", g, edges.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for TwistWord {
    type Err = RibbonError;

    /// Grammar: `t{e1,e2};d{e3};t{e1}` — `t`/`d` groups separated by `;`,
    /// applied left to right.
    fn from_str(s: &str) -> Result<TwistWord> {
        let mut steps = Vec::new();
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Ok(TwistWord::default());
        }
        for part in trimmed.split(';') {
            let part = part.trim();
            let bad = |msg: String| RibbonError::Syntax {
                line: 1,
                col: 1,
                msg,
            };
            let generator = match part.chars().next() {
                Some('t') => Generator::Tau,
                Some('d') => Generator::Delta,
                _ => {
                    return Err(bad(format!(
                        "word step {part:?} must start with `t` or `d`"
                    )))
                }
            };
            let body = part[1..].trim();
            let inner = body
                .strip_prefix('{')
                .and_then(|b| b.strip_suffix('}'))
                .ok_or_else(|| bad(format!("word step {part:?} must use braces, e.g. t{{e1}}")))?;
            let mut edges = EdgeSet::new();
            for name in inner.split(',') {
                let name = name.trim();
                if name.is_empty() {
                    continue;
                }
                edges.insert(EdgeLabel::new(name)?);
            }
            steps.push(TwistStep { generator, edges });
        }
        Ok(TwistWord { steps })
    }
}

/// Whether an edge is a loop and, if so, whether its two occurrences have
/// equal signs under the stored traversal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoopClass {
    NotALoop,
    OrientableLoop,
    NonOrientableLoop,
}

fn check_subset(p: &ArrowPresentation, subset: &EdgeSet) -> Result<()> {
    for e in subset {
        if !p.contains_edge(e) {
            return Err(RibbonError::UnknownEdge(e.as_str().to_string()));
        }
    }
    Ok(())
}

/// Raw partial Petrial: reverses the second occurrence (in stored traversal
/// order) of each edge in `subset`. The two possible choices per edge differ
/// by a simultaneous double reversal, which canonical equality absorbs.
pub(crate) fn partial_petrial_raw(p: &ArrowPresentation, subset: &EdgeSet) -> ArrowPresentation {
    let mut circles: Vec<Circle> = p.circles().to_vec();
    for e in subset {
        let positions = p.occurrence_positions(e);
        let (ci, wi) = positions[1];
        let occ = &mut circles[ci].word[wi];
        occ.sign = occ.sign.flipped();
    }
    ArrowPresentation::new_unchecked(circles)
}

/// Raw partial dual: splices every edge of `subset` simultaneously and
/// rebuilds the circle decomposition by traversal. Circle ids are
/// regenerated as `v0`, `v1`, ... in discovery order.
pub(crate) fn partial_dual_raw(p: &ArrowPresentation, subset: &EdgeSet) -> ArrowPresentation {
    let words = splice_words(p, subset);
    let circles = words
        .into_iter()
        .enumerate()
        .map(|(i, word)| Circle::new(&format!("v{i}"), word))
        .collect();
    ArrowPresentation::new_unchecked(circles)
}

/// The circle words of the partial dual, spliced circles first (in discovery
/// order over endpoints), then the untouched empty circles.
pub(crate) fn splice_words(p: &ArrowPresentation, subset: &EdgeSet) -> Vec<Vec<ArrowOccurrence>> {
    let table = OccTable::build(p);
    let in_subset: Vec<bool> = table.edges.iter().map(|e| subset.contains(e)).collect();

    // One directed arc per arrow of the result: kept arrows run tail -> head
    // as stored; a dualized edge's arcs run head(first) -> tail(second) and
    // head(second) -> tail(first).
    struct Arc {
        from: usize,
        to: usize,
        edge: usize,
    }
    let mut arcs = Vec::new();
    let mut arc_at = vec![usize::MAX; table.occs.len() * 2];
    for (e, &(a, b)) in table.pairs.iter().enumerate() {
        if in_subset[e] {
            for (u, v) in [(head(a), tail(b)), (head(b), tail(a))] {
                arc_at[u] = arcs.len();
                arc_at[v] = arcs.len();
                arcs.push(Arc {
                    from: u,
                    to: v,
                    edge: e,
                });
            }
        } else {
            for o in [a, b] {
                arc_at[tail(o)] = arcs.len();
                arc_at[head(o)] = arcs.len();
                arcs.push(Arc {
                    from: tail(o),
                    to: head(o),
                    edge: e,
                });
            }
        }
    }

    let mut words = Vec::new();
    let mut visited = vec![false; table.occs.len() * 2];
    for start in 0..visited.len() {
        if visited[start] {
            continue;
        }
        let mut word = Vec::new();
        let mut x = start;
        loop {
            visited[x] = true;
            let arc = &arcs[arc_at[x]];
            // traversing an arc from its tail reads `+`, from its head `-`
            let (sign, out) = if x == arc.from {
                (Sign::Plus, arc.to)
            } else {
                (Sign::Minus, arc.from)
            };
            word.push(ArrowOccurrence::new(table.edges[arc.edge].clone(), sign));
            visited[out] = true;
            x = table.varc_partner[out];
            if x == start {
                break;
            }
        }
        words.push(word);
    }
    for _ in &table.empty_circles {
        words.push(Vec::new());
    }
    words
}

pub(crate) fn delete_raw(p: &ArrowPresentation, subset: &EdgeSet) -> ArrowPresentation {
    let circles = p
        .circles()
        .iter()
        .map(|c| {
            Circle::new(
                &c.id,
                c.word
                    .iter()
                    .filter(|o| !subset.contains(&o.edge))
                    .cloned()
                    .collect(),
            )
        })
        .collect();
    ArrowPresentation::new_unchecked(circles)
}

/// Partial Petrial: gives a half-twist to each edge of `subset` by reversing
/// exactly one of its arrows. Involutive up to canonical equality.
pub fn partial_petrial(p: &ArrowPresentation, subset: &EdgeSet) -> Result<ArrowPresentation> {
    check_subset(p, subset)?;
    Ok(partial_petrial_raw(p, subset).canonical_form())
}

/// Partial dual with respect to `subset`. Involutive up to canonical
/// equality.
pub fn partial_dual(p: &ArrowPresentation, subset: &EdgeSet) -> Result<ArrowPresentation> {
    check_subset(p, subset)?;
    Ok(partial_dual_raw(p, subset).canonical_form())
}

/// Removes all occurrences of the edges in `subset`; circles (possibly now
/// empty) are retained.
pub fn delete(p: &ArrowPresentation, subset: &EdgeSet) -> Result<ArrowPresentation> {
    check_subset(p, subset)?;
    Ok(delete_raw(p, subset).canonical_form())
}

/// Contraction: dualize `subset`, then remove it.
pub fn contract(p: &ArrowPresentation, subset: &EdgeSet) -> Result<ArrowPresentation> {
    check_subset(p, subset)?;
    let dual = partial_dual_raw(p, subset);
    Ok(delete_raw(&dual, subset).canonical_form())
}

/// Applies a twist word left to right.
pub fn apply_word(p: &ArrowPresentation, word: &TwistWord) -> Result<ArrowPresentation> {
    let mut q = p.canonical_form();
    for step in &word.steps {
        q = match step.generator {
            Generator::Delta => partial_dual(&q, &step.edges)?,
            Generator::Tau => partial_petrial(&q, &step.edges)?,
        };
    }
    Ok(q)
}

/// Classifies an edge of the presentation.
pub fn loop_class(p: &ArrowPresentation, e: &EdgeLabel) -> Result<LoopClass> {
    let positions = p.occurrence_positions(e);
    if positions.len() != 2 {
        return Err(RibbonError::UnknownEdge(e.as_str().to_string()));
    }
    let (c0, w0) = positions[0];
    let (c1, w1) = positions[1];
    if c0 != c1 {
        return Ok(LoopClass::NotALoop);
    }
    let s0 = p.circles()[c0].word[w0].sign;
    let s1 = p.circles()[c1].word[w1].sign;
    Ok(if s0 == s1 {
        LoopClass::OrientableLoop
    } else {
        LoopClass::NonOrientableLoop
    })
}

/// The six coset operations of the twisted-duality group, applied per edge:
/// identity, dual, Petrial, Petrial-then-dual, dual-then-Petrial, and
/// Petrial-dual-Petrial. `parts` must partition the edge set. Computed one
/// edge at a time; equals the single word
/// `t(A3 u A4 u A6); d(A2 u A4 u A5 u A6); t(A5 u A6)`.
pub fn six_partition_form(
    p: &ArrowPresentation,
    parts: &[EdgeSet; 6],
) -> Result<ArrowPresentation> {
    let edges = p.edges();
    let mut union = EdgeSet::new();
    let mut total = 0;
    for part in parts {
        total += part.len();
        union.extend(part.iter().cloned());
    }
    if union != edges || total != edges.len() {
        return Err(RibbonError::NotAPartition(format!(
            "expected the {} edges exactly once",
            edges.len()
        )));
    }
    const COSETS: [&[Generator]; 6] = [
        &[],
        &[Generator::Delta],
        &[Generator::Tau],
        &[Generator::Tau, Generator::Delta],
        &[Generator::Delta, Generator::Tau],
        &[Generator::Tau, Generator::Delta, Generator::Tau],
    ];
    let mut q = p.canonical_form();
    for (part, gens) in parts.iter().zip(COSETS) {
        for e in part {
            let single: EdgeSet = BTreeSet::from([e.clone()]);
            for g in gens {
                q = match g {
                    Generator::Delta => partial_dual(&q, &single)?,
                    Generator::Tau => partial_petrial(&q, &single)?,
                };
            }
        }
    }
    Ok(q)
}

/// The word `t(A3 u A4 u A6); d(A2 u A4 u A5 u A6); t(A5 u A6)` equivalent to
/// the six-partition form.
pub fn six_partition_translation(parts: &[EdgeSet; 6]) -> TwistWord {
    let union = |idxs: &[usize]| -> EdgeSet {
        let mut s = EdgeSet::new();
        for &i in idxs {
            s.extend(parts[i].iter().cloned());
        }
        s
    };
    TwistWord::new(vec![
        TwistStep {
            generator: Generator::Tau,
            edges: union(&[2, 3, 5]),
        },
        TwistStep {
            generator: Generator::Delta,
            edges: union(&[1, 3, 4, 5]),
        },
        TwistStep {
            generator: Generator::Tau,
            edges: union(&[4, 5]),
        },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{bouquet, presentation};
    use crate::topology;

    fn e(name: &str) -> EdgeLabel {
        EdgeLabel::new(name).unwrap()
    }

    fn set(names: &[&str]) -> EdgeSet {
        names.iter().map(|n| e(n)).collect()
    }

    fn untwisted_loop() -> ArrowPresentation {
        bouquet(&[("e1", '+'), ("e1", '+')])
    }

    #[test]
    fn petrial_twists_the_loop() {
        let p = untwisted_loop();
        let q = partial_petrial(&p, &set(&["e1"])).unwrap();
        assert!(q.equals(&bouquet(&[("e1", '+'), ("e1", '-')])));
        assert!(partial_petrial(&p, &EdgeSet::new()).unwrap().equals(&p));
        let back = partial_petrial(&q, &set(&["e1"])).unwrap();
        assert!(back.equals(&p));
    }

    #[test]
    fn petrial_flip_choice_is_immaterial() {
        // flipping the first arrow instead of the second lands in the same
        // canonical class
        let p = bouquet(&[
            ("e1", '+'),
            ("e2", '+'),
            ("e1", '+'),
            ("e2", '+'),
            ("e3", '+'),
            ("e3", '+'),
        ]);
        let second = partial_petrial(&p, &set(&["e1"])).unwrap();
        let mut circles = p.circles().to_vec();
        circles[0].word[0].sign = circles[0].word[0].sign.flipped();
        let first = ArrowPresentation::new(circles).unwrap();
        assert!(second.equals(&first));
    }

    #[test]
    fn petrial_preserves_degrees() {
        let p = presentation(&[
            ("a", &[("e1", '+'), ("e2", '-'), ("e3", '+')]),
            ("b", &[("e2", '+'), ("e1", '-'), ("e3", '-')]),
        ]);
        let q = partial_petrial(&p, &set(&["e1", "e3"])).unwrap();
        assert_eq!(topology::degrees(&p), topology::degrees(&q));
    }

    #[test]
    fn dual_of_loop_is_an_edge() {
        let p = untwisted_loop();
        let q = partial_dual(&p, &set(&["e1"])).unwrap();
        let expected = presentation(&[("a", &[("e1", '+')]), ("b", &[("e1", '+')])]);
        assert!(q.equals(&expected));
        assert!(partial_dual(&p, &EdgeSet::new()).unwrap().equals(&p));
        let back = partial_dual(&q, &set(&["e1"])).unwrap();
        assert!(back.equals(&p));
    }

    #[test]
    fn dual_involution_on_samples() {
        let samples = [
            bouquet(&[("e1", '+'), ("e2", '+'), ("e1", '+'), ("e2", '+')]),
            bouquet(&[
                ("e1", '+'),
                ("e2", '-'),
                ("e1", '+'),
                ("e3", '+'),
                ("e3", '-'),
                ("e2", '+'),
            ]),
            presentation(&[
                ("a", &[("e1", '+'), ("e2", '-')]),
                ("b", &[("e2", '+'), ("e1", '-')]),
            ]),
        ];
        for p in samples {
            for a in subsets(&p.edges()) {
                let q = partial_dual(&p, &a).unwrap();
                let back = partial_dual(&q, &a).unwrap();
                assert!(back.equals(&p), "delta^2 != id on {a:?}");
            }
        }
    }

    #[test]
    fn unknown_edge_is_rejected() {
        let p = untwisted_loop();
        assert_eq!(
            partial_dual(&p, &set(&["zz"])).unwrap_err(),
            RibbonError::UnknownEdge("zz".to_string())
        );
        assert!(partial_petrial(&p, &set(&["zz"])).is_err());
        assert!(delete(&p, &set(&["zz"])).is_err());
    }

    #[test]
    fn delete_examples() {
        let p = bouquet(&[("e1", '+'), ("e2", '+'), ("e1", '+'), ("e2", '+')]);
        let q = delete(&p, &set(&["e2"])).unwrap();
        assert!(q.equals(&untwisted_loop()));
        assert!(delete(&p, &EdgeSet::new()).unwrap().equals(&p));
        let emptied = delete(&untwisted_loop(), &set(&["e1"])).unwrap();
        assert_eq!(emptied.circle_count(), 1);
        assert!(emptied.circles()[0].word.is_empty());
    }

    #[test]
    fn contract_examples() {
        let path = presentation(&[("a", &[("e1", '+')]), ("b", &[("e1", '+')])]);
        let q = contract(&path, &set(&["e1"])).unwrap();
        assert_eq!(q.circle_count(), 1);
        assert!(q.circles()[0].word.is_empty());

        assert!(contract(&path, &EdgeSet::new()).unwrap().equals(&path));

        let q = contract(&untwisted_loop(), &set(&["e1"])).unwrap();
        assert_eq!(q.circle_count(), 2);
        assert!(q.circles().iter().all(|c| c.word.is_empty()));
    }

    #[test]
    fn word_application() {
        let p = untwisted_loop();
        assert!(apply_word(&p, &TwistWord::default()).unwrap().equals(&p));

        let tdt: TwistWord = "t{e1};d{e1};t{e1}".parse().unwrap();
        let dtd: TwistWord = "d{e1};t{e1};d{e1}".parse().unwrap();
        let lhs = apply_word(&p, &tdt).unwrap();
        let rhs = apply_word(&p, &dtd).unwrap();
        assert!(lhs.equals(&rhs), "(delta tau)^3 relation fails on the loop");
    }

    #[test]
    fn word_parsing_round_trip() {
        let w: TwistWord = "t{e1,e2};d{e3};t{e1}".parse().unwrap();
        assert_eq!(w.steps.len(), 3);
        assert_eq!(w.to_string(), "t{e1,e2};d{e3};t{e1}");
        assert!("x{e1}".parse::<TwistWord>().is_err());
        assert!("t e1".parse::<TwistWord>().is_err());
    }

    #[test]
    fn disjoint_subsets_commute() {
        let p = bouquet(&[
            ("e1", '+'),
            ("e2", '-'),
            ("e1", '+'),
            ("e3", '+'),
            ("e3", '+'),
            ("e2", '+'),
        ]);
        let a = set(&["e1"]);
        let b = set(&["e2", "e3"]);
        for (ga, gb) in [
            (Generator::Delta, Generator::Tau),
            (Generator::Tau, Generator::Delta),
            (Generator::Delta, Generator::Delta),
        ] {
            let w1 = TwistWord::new(vec![
                TwistStep {
                    generator: ga,
                    edges: a.clone(),
                },
                TwistStep {
                    generator: gb,
                    edges: b.clone(),
                },
            ]);
            let w2 = TwistWord::new(vec![
                TwistStep {
                    generator: gb,
                    edges: b.clone(),
                },
                TwistStep {
                    generator: ga,
                    edges: a.clone(),
                },
            ]);
            assert!(apply_word(&p, &w1)
                .unwrap()
                .equals(&apply_word(&p, &w2).unwrap()));
        }
    }

    #[test]
    fn loop_classification() {
        assert_eq!(
            loop_class(&untwisted_loop(), &e("e1")).unwrap(),
            LoopClass::OrientableLoop
        );
        assert_eq!(
            loop_class(&bouquet(&[("e1", '+'), ("e1", '-')]), &e("e1")).unwrap(),
            LoopClass::NonOrientableLoop
        );
        let two = presentation(&[("a", &[("e1", '+')]), ("b", &[("e1", '-')])]);
        assert_eq!(loop_class(&two, &e("e1")).unwrap(), LoopClass::NotALoop);
    }

    #[test]
    fn petrial_flips_loop_orientability() {
        // calibration of the sign convention
        let p = untwisted_loop();
        assert!(topology::is_orientable(&p));
        let q = partial_petrial(&p, &set(&["e1"])).unwrap();
        assert!(!topology::is_orientable(&q));
    }

    #[test]
    fn dual_preserves_orientability_and_counts_boundaries() {
        let p = bouquet(&[("e1", '+'), ("e2", '+'), ("e1", '+'), ("e2", '+')]);
        for a in subsets(&p.edges()) {
            let q = partial_dual(&p, &a).unwrap();
            assert_eq!(topology::is_orientable(&p), topology::is_orientable(&q));
            let sub = delete_raw(&p, &p.edges().difference(&a).cloned().collect());
            assert_eq!(
                q.circle_count(),
                topology::boundary_component_count(&sub),
                "circle count of the dual vs boundary components of the spanning subgraph"
            );
        }
    }

    #[test]
    fn edge_set_is_preserved() {
        let p = bouquet(&[("e1", '+'), ("e2", '-'), ("e1", '+'), ("e2", '+')]);
        let w: TwistWord = "t{e1};d{e1,e2};t{e2}".parse().unwrap();
        assert_eq!(apply_word(&p, &w).unwrap().edges(), p.edges());
    }

    #[test]
    fn six_partition_cosets() {
        let p = bouquet(&[("e1", '+'), ("e2", '+'), ("e1", '+'), ("e2", '+')]);
        let empty = EdgeSet::new();
        let all = p.edges();

        let id_parts = [
            all.clone(),
            empty.clone(),
            empty.clone(),
            empty.clone(),
            empty.clone(),
            empty.clone(),
        ];
        assert!(six_partition_form(&p, &id_parts).unwrap().equals(&p));

        let dual_parts = [
            empty.clone(),
            all.clone(),
            empty.clone(),
            empty.clone(),
            empty.clone(),
            empty.clone(),
        ];
        let expected = partial_dual(&p, &all).unwrap();
        assert!(six_partition_form(&p, &dual_parts)
            .unwrap()
            .equals(&expected));

        let bad = [
            all.clone(),
            all.clone(),
            empty.clone(),
            empty.clone(),
            empty.clone(),
            empty,
        ];
        assert!(matches!(
            six_partition_form(&p, &bad),
            Err(RibbonError::NotAPartition(_))
        ));
    }

    #[test]
    fn six_partition_matches_translation() {
        let p = bouquet(&[("e1", '+'), ("e2", '-'), ("e1", '+'), ("e2", '+')]);
        let parts = [
            set(&["e1"]),
            EdgeSet::new(),
            EdgeSet::new(),
            set(&["e2"]),
            EdgeSet::new(),
            EdgeSet::new(),
        ];
        let direct = six_partition_form(&p, &parts).unwrap();
        let translated = apply_word(&p, &six_partition_translation(&parts)).unwrap();
        assert!(direct.equals(&translated));
    }

    pub(crate) fn subsets(edges: &EdgeSet) -> Vec<EdgeSet> {
        let list: Vec<EdgeLabel> = edges.iter().cloned().collect();
        let mut out = Vec::new();
        for mask in 0u32..(1 << list.len()) {
            out.push(
                list.iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, e)| e.clone())
                    .collect(),
            );
        }
        out
    }
}
