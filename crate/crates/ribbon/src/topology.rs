//! Surface invariants of a presentation: degrees, boundary decomposition,
//! orientability, Euler genus, Eulerian-ness, checkerboard colourability and
//! connectivity.
//!
//! The boundary of the ribbon surface decomposes into closed walks that
//! alternate vertex arcs (pieces of circles between consecutive arrows) and
//! edge sides (the free sides of each edge disc, running from the head of one
//! arrow of the edge to the tail of the other). Tracing works on the
//! 2-regular graph whose nodes are arrow endpoints: every endpoint carries
//! exactly one vertex arc and exactly one edge side.

use std::collections::BTreeMap;

use crate::dsu::{Dsu, ParityDsu};
use crate::error::{Result, RibbonError};
use crate::presentation::{ArrowPresentation, EdgeLabel, Sign};

/// Flattened occurrence table with endpoint bookkeeping, shared by boundary
/// tracing and the partial-dual splice.
pub(crate) struct OccTable {
    /// (circle index, word position, sign) per occurrence.
    pub occs: Vec<(usize, usize, Sign)>,
    /// Sorted edge labels; `pairs` is indexed in parallel.
    pub edges: Vec<EdgeLabel>,
    /// Per edge: the two occurrence indices in stored traversal order.
    pub pairs: Vec<(usize, usize)>,
    /// Vertex-arc partner of each endpoint (ids: 2*occ = tail, 2*occ+1 = head),
    /// together with the gap position it represents on its circle.
    pub varc_partner: Vec<usize>,
    pub varc_gap: Vec<(usize, usize)>,
    /// Circle indices with empty words.
    pub empty_circles: Vec<usize>,
}

pub(crate) fn tail(occ: usize) -> usize {
    2 * occ
}

pub(crate) fn head(occ: usize) -> usize {
    2 * occ + 1
}

impl OccTable {
    pub fn build(p: &ArrowPresentation) -> OccTable {
        let edges: Vec<EdgeLabel> = p.edges().into_iter().collect();
        let index: BTreeMap<&EdgeLabel, usize> =
            edges.iter().enumerate().map(|(i, e)| (e, i)).collect();

        let mut occs = Vec::new();
        let mut edge_of: Vec<usize> = Vec::new();
        let mut by_circle: Vec<Vec<usize>> = Vec::new();
        let mut empty_circles = Vec::new();
        for (ci, c) in p.circles().iter().enumerate() {
            let mut list = Vec::new();
            if c.word.is_empty() {
                empty_circles.push(ci);
            }
            for (wi, occ) in c.word.iter().enumerate() {
                list.push(occs.len());
                occs.push((ci, wi, occ.sign));
                edge_of.push(index[&occ.edge]);
            }
            by_circle.push(list);
        }

        let mut pairs = vec![(usize::MAX, usize::MAX); edges.len()];
        for (oi, &e) in edge_of.iter().enumerate() {
            if pairs[e].0 == usize::MAX {
                pairs[e].0 = oi;
            } else {
                pairs[e].1 = oi;
            }
        }

        // Entry endpoint of an occurrence in traversal order is its tail for
        // `+`, head for `-`; the exit is the opposite end. The vertex arc in
        // the gap after word position i joins exit(i) to entry(i+1).
        let mut varc_partner = vec![usize::MAX; occs.len() * 2];
        let mut varc_gap = vec![(usize::MAX, usize::MAX); occs.len() * 2];
        for (ci, list) in by_circle.iter().enumerate() {
            let len = list.len();
            for (i, &oi) in list.iter().enumerate() {
                let next = list[(i + 1) % len];
                let exit = match occs[oi].2 {
                    Sign::Plus => head(oi),
                    Sign::Minus => tail(oi),
                };
                let entry = match occs[next].2 {
                    Sign::Plus => tail(next),
                    Sign::Minus => head(next),
                };
                varc_partner[exit] = entry;
                varc_partner[entry] = exit;
                varc_gap[exit] = (ci, i);
                varc_gap[entry] = (ci, i);
            }
        }

        OccTable {
            occs,
            edges,
            pairs,
            varc_partner,
            varc_gap,
            empty_circles,
        }
    }

    /// Edge-side partner of each endpoint: head(first) <-> tail(second) and
    /// head(second) <-> tail(first), plus the side kind each endpoint sits on.
    fn edge_side_partner(&self) -> (Vec<usize>, Vec<(usize, EdgeSideKind)>) {
        let mut partner = vec![usize::MAX; self.occs.len() * 2];
        let mut side = vec![(usize::MAX, EdgeSideKind::FirstToSecond); self.occs.len() * 2];
        for (e, &(a, b)) in self.pairs.iter().enumerate() {
            partner[head(a)] = tail(b);
            partner[tail(b)] = head(a);
            side[head(a)] = (e, EdgeSideKind::FirstToSecond);
            side[tail(b)] = (e, EdgeSideKind::FirstToSecond);

            partner[head(b)] = tail(a);
            partner[tail(a)] = head(b);
            side[head(b)] = (e, EdgeSideKind::SecondToFirst);
            side[tail(a)] = (e, EdgeSideKind::SecondToFirst);
        }
        (partner, side)
    }
}

/// Which free side of an edge disc a boundary walk uses. The first/second
/// occurrence of an edge is fixed by stored traversal order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum EdgeSideKind {
    /// Runs from the head of the first occurrence to the tail of the second.
    FirstToSecond,
    /// Runs from the head of the second occurrence to the tail of the first.
    SecondToFirst,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Segment {
    VertexArc { circle: String, position: usize },
    EdgeSide { edge: EdgeLabel, side: EdgeSideKind },
}

#[derive(Debug, Clone)]
pub struct BoundaryWalk {
    pub segments: Vec<Segment>,
}

#[derive(Debug, Clone)]
pub struct BoundaryDecomposition {
    pub walks: Vec<BoundaryWalk>,
    /// For each edge, the walk indices holding its two sides, in
    /// (FirstToSecond, SecondToFirst) order.
    pub side_walks: BTreeMap<EdgeLabel, (usize, usize)>,
}

impl BoundaryDecomposition {
    pub fn component_count(&self) -> usize {
        self.walks.len()
    }
}

/// One entry per circle, sorted ascending; a loop contributes 2 to its circle.
pub fn degrees(p: &ArrowPresentation) -> Vec<usize> {
    let mut d: Vec<usize> = p.circles().iter().map(|c| c.word.len()).collect();
    d.sort_unstable();
    d
}

/// Traces the closed boundary walks of the surface.
pub fn boundary_decomposition(p: &ArrowPresentation) -> BoundaryDecomposition {
    let table = OccTable::build(p);
    let (es_partner, es_side) = table.edge_side_partner();

    let mut walks = Vec::new();
    let mut side_walks: BTreeMap<EdgeLabel, (usize, usize)> = BTreeMap::new();
    let mut visited = vec![false; table.occs.len() * 2];
    for start in 0..visited.len() {
        if visited[start] {
            continue;
        }
        let walk_idx = walks.len();
        let mut segments = Vec::new();
        let mut x = start;
        loop {
            visited[x] = true;
            // vertex arc out of x
            let (ci, gap) = table.varc_gap[x];
            segments.push(Segment::VertexArc {
                circle: p.circles()[ci].id.clone(),
                position: gap,
            });
            let y = table.varc_partner[x];
            visited[y] = true;
            // edge side out of y
            let (e, kind) = es_side[y];
            segments.push(Segment::EdgeSide {
                edge: table.edges[e].clone(),
                side: kind,
            });
            let entry = side_walks
                .entry(table.edges[e].clone())
                .or_insert((usize::MAX, usize::MAX));
            match kind {
                EdgeSideKind::FirstToSecond => entry.0 = walk_idx,
                EdgeSideKind::SecondToFirst => entry.1 = walk_idx,
            }
            x = es_partner[y];
            if x == start {
                break;
            }
        }
        walks.push(BoundaryWalk { segments });
    }
    // an arrowless circle is a boundary circle of its own
    for &ci in &table.empty_circles {
        walks.push(BoundaryWalk {
            segments: vec![Segment::VertexArc {
                circle: p.circles()[ci].id.clone(),
                position: 0,
            }],
        });
    }
    BoundaryDecomposition { walks, side_walks }
}

/// Boundary component count without building segment labels.
pub fn boundary_component_count(p: &ArrowPresentation) -> usize {
    let table = OccTable::build(p);
    let (es_partner, _) = table.edge_side_partner();
    let mut visited = vec![false; table.occs.len() * 2];
    let mut count = table.empty_circles.len();
    for start in 0..visited.len() {
        if visited[start] {
            continue;
        }
        count += 1;
        let mut x = start;
        loop {
            visited[x] = true;
            let y = table.varc_partner[x];
            visited[y] = true;
            x = es_partner[y];
            if x == start {
                break;
            }
        }
    }
    count
}

/// True iff some per-circle re-orientation makes every edge untwisted (equal
/// signs on its two occurrences). A loop with unequal signs is an odd
/// self-constraint, so any such loop makes the graph non-orientable.
pub fn is_orientable(p: &ArrowPresentation) -> bool {
    let table = OccTable::build(p);
    let mut dsu = ParityDsu::new(p.circle_count());
    for &(a, b) in &table.pairs {
        let (ca, sa) = (table.occs[a].0, table.occs[a].2);
        let (cb, sb) = (table.occs[b].0, table.occs[b].2);
        if !dsu.union(ca, cb, sa != sb) {
            return false;
        }
    }
    true
}

/// 2·(components) − vertices + edges − boundary components. Zero for the
/// sphere, 1 for the projective plane, 2 for the torus and Klein bottle.
pub fn euler_genus(p: &ArrowPresentation) -> usize {
    let c = connected_components(p) as isize;
    let v = p.circle_count() as isize;
    let e = p.edge_count() as isize;
    let f = boundary_component_count(p) as isize;
    let genus = 2 * c - v + e - f;
    debug_assert!(genus >= 0, "negative Euler genus");
    genus as usize
}

/// True iff every circle has even degree. Disconnected input is allowed.
pub fn is_eulerian(p: &ArrowPresentation) -> bool {
    p.circles().iter().all(|c| c.word.len() % 2 == 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Colour {
    Black,
    White,
}

impl Colour {
    fn other(self) -> Colour {
        match self {
            Colour::Black => Colour::White,
            Colour::White => Colour::Black,
        }
    }
}

/// A proper 2-colouring of the boundary components: the two sides of every
/// edge lie in components of different colour.
#[derive(Debug, Clone)]
pub struct CheckerboardColouring {
    /// One colour per boundary walk, indexed as in [`boundary_decomposition`].
    pub colours: Vec<Colour>,
}

/// Returns a checkerboard colouring if one exists. The constraint graph has
/// one inequality per edge, between the components holding its two sides; a
/// colouring exists iff that graph is bipartite and no edge has both sides in
/// one component. Components are processed in trace order and the first of
/// each constraint part is coloured black, so unconstrained components
/// (isolated vertices) default to black.
pub fn checkerboard_colouring(p: &ArrowPresentation) -> Option<CheckerboardColouring> {
    let bd = boundary_decomposition(p);
    let n = bd.walks.len();
    let mut adjacent: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(w0, w1) in bd.side_walks.values() {
        if w0 == w1 {
            return None;
        }
        adjacent[w0].push(w1);
        adjacent[w1].push(w0);
    }
    let mut colours: Vec<Option<Colour>> = vec![None; n];
    for start in 0..n {
        if colours[start].is_some() {
            continue;
        }
        colours[start] = Some(Colour::Black);
        let mut queue = vec![start];
        while let Some(x) = queue.pop() {
            let cx = colours[x].unwrap();
            for &y in &adjacent[x] {
                match colours[y] {
                    None => {
                        colours[y] = Some(cx.other());
                        queue.push(y);
                    }
                    Some(cy) => {
                        if cy == cx {
                            return None;
                        }
                    }
                }
            }
        }
    }
    Some(CheckerboardColouring {
        colours: colours.into_iter().map(|c| c.unwrap()).collect(),
    })
}

/// Component count of the underlying abstract graph.
pub fn connected_components(p: &ArrowPresentation) -> usize {
    let table = OccTable::build(p);
    let mut dsu = Dsu::new(p.circle_count());
    for &(a, b) in &table.pairs {
        dsu.union(table.occs[a].0, table.occs[b].0);
    }
    dsu.component_count()
}

/// Errors unless the presentation is connected.
pub fn require_connected(p: &ArrowPresentation) -> Result<()> {
    let c = connected_components(p);
    if c > 1 {
        return Err(RibbonError::Disconnected(c));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{bouquet, presentation};

    fn untwisted_loop() -> ArrowPresentation {
        bouquet(&[("e1", '+'), ("e1", '+')])
    }

    fn twisted_loop() -> ArrowPresentation {
        bouquet(&[("e1", '+'), ("e1", '-')])
    }

    fn interlaced_double_loop() -> ArrowPresentation {
        bouquet(&[("e1", '+'), ("e2", '+'), ("e1", '+'), ("e2", '+')])
    }

    #[test]
    fn degree_multisets() {
        assert_eq!(degrees(&untwisted_loop()), vec![2]);
        let two = presentation(&[("a", &[("e1", '+')]), ("b", &[("e1", '-')])]);
        assert_eq!(degrees(&two), vec![1, 1]);
        let g1 = bouquet(&[
            ("e1", '+'),
            ("e2", '+'),
            ("e4", '+'),
            ("e3", '+'),
            ("e2", '+'),
            ("e1", '+'),
            ("e3", '+'),
            ("e4", '+'),
            ("e5", '+'),
            ("e5", '+'),
        ]);
        assert_eq!(degrees(&g1), vec![10]);
        let sum: usize = degrees(&g1).iter().sum();
        assert_eq!(sum, 2 * g1.edge_count());
    }

    // Boundary counts hand-traced on the endpoint graph: the annulus loop
    // splits into two walks, the Möbius loop closes into one, and the torus
    // bouquet closes into one.
    #[test]
    fn boundary_counts() {
        assert_eq!(boundary_component_count(&untwisted_loop()), 2);
        assert_eq!(boundary_component_count(&twisted_loop()), 1);
        assert_eq!(boundary_component_count(&interlaced_double_loop()), 1);
    }

    #[test]
    fn boundary_partition_of_segments() {
        for p in [
            untwisted_loop(),
            twisted_loop(),
            interlaced_double_loop(),
            presentation(&[("a", &[("e1", '+')]), ("b", &[("e1", '-')]), ("c", &[])]),
        ] {
            let bd = boundary_decomposition(&p);
            let mut varcs = 0;
            let mut sides = 0;
            for w in &bd.walks {
                for s in &w.segments {
                    match s {
                        Segment::VertexArc { .. } => varcs += 1,
                        Segment::EdgeSide { .. } => sides += 1,
                    }
                }
            }
            let arrows: usize = p.circles().iter().map(|c| c.word.len()).sum();
            let empties = p.circles().iter().filter(|c| c.word.is_empty()).count();
            assert_eq!(varcs, arrows + empties);
            assert_eq!(sides, 2 * p.edge_count());
            assert_eq!(bd.component_count(), boundary_component_count(&p));
        }
    }

    #[test]
    fn empty_circle_is_its_own_walk() {
        let p = presentation(&[("a", &[])]);
        let bd = boundary_decomposition(&p);
        assert_eq!(bd.walks.len(), 1);
        assert_eq!(bd.walks[0].segments.len(), 1);
    }

    #[test]
    fn orientability() {
        assert!(is_orientable(&untwisted_loop()));
        assert!(!is_orientable(&twisted_loop()));
        let two = presentation(&[("a", &[("e1", '+')]), ("b", &[("e1", '+')])]);
        assert!(is_orientable(&two));
        // flipping one circle repairs a crossed non-loop edge
        let crossed = presentation(&[("a", &[("e1", '+')]), ("b", &[("e1", '-')])]);
        assert!(is_orientable(&crossed));
    }

    #[test]
    fn euler_genus_spot_values() {
        assert_eq!(euler_genus(&untwisted_loop()), 0);
        assert_eq!(euler_genus(&twisted_loop()), 1);
        assert_eq!(euler_genus(&interlaced_double_loop()), 2);
    }

    #[test]
    fn eulerian() {
        assert!(is_eulerian(&untwisted_loop()));
        let two = presentation(&[("a", &[("e1", '+')]), ("b", &[("e1", '-')])]);
        assert!(!is_eulerian(&two));
        let g1 = bouquet(&[("e1", '+'), ("e2", '+'), ("e1", '+'), ("e2", '+')]);
        assert!(is_eulerian(&g1));
    }

    #[test]
    fn checkerboard_examples() {
        let c = checkerboard_colouring(&untwisted_loop()).expect("annulus is colourable");
        assert_eq!(c.colours.len(), 2);
        assert_ne!(c.colours[0], c.colours[1]);

        assert!(checkerboard_colouring(&twisted_loop()).is_none());
        assert!(checkerboard_colouring(&interlaced_double_loop()).is_none());

        let full_petrial = bouquet(&[("e1", '+'), ("e2", '+'), ("e1", '-'), ("e2", '-')]);
        let bd = boundary_decomposition(&full_petrial);
        assert_eq!(bd.component_count(), 2);
        for (w0, w1) in bd.side_walks.values() {
            assert_ne!(w0, w1, "each edge has one side in each component");
        }
        assert!(checkerboard_colouring(&full_petrial).is_some());
    }

    #[test]
    fn colourable_implies_eulerian() {
        let samples = [
            untwisted_loop(),
            twisted_loop(),
            interlaced_double_loop(),
            presentation(&[("a", &[("e1", '+')]), ("b", &[("e1", '-')])]),
            bouquet(&[("e1", '+'), ("e2", '+'), ("e1", '-'), ("e2", '-')]),
        ];
        for p in samples {
            if checkerboard_colouring(&p).is_some() {
                assert!(is_eulerian(&p));
            }
        }
    }

    #[test]
    fn component_counts() {
        assert_eq!(connected_components(&untwisted_loop()), 1);
        let two = presentation(&[
            ("a", &[("e1", '+'), ("e1", '+')]),
            ("b", &[("e2", '+'), ("e2", '+')]),
        ]);
        assert_eq!(connected_components(&two), 2);
        let joined = presentation(&[("a", &[("e1", '+')]), ("b", &[("e1", '-')])]);
        assert_eq!(connected_components(&joined), 1);
    }
}
