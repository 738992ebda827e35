//! Arrow presentations: circles carrying directed, edge-labelled marking
//! arrows, with exactly two arrows per edge label.
//!
//! A presentation is stored as a set of circles, each circle a linear word of
//! arrow occurrences read in an arbitrary traversal direction; all cyclic
//! logic lives in [`ArrowPresentation::canonical_form`] and the traversal
//! helpers. An occurrence's sign records whether the arrow agrees (`+`) or
//! disagrees (`-`) with the stored traversal order of its circle.
//!
//! Two presentations describe the same ribbon graph exactly when they are
//! related by re-reading circles (rotation, or reversal with all signs on the
//! circle flipped), reordering circles, or reversing both arrows of an edge
//! simultaneously (re-orienting that edge's disc). `canonical_form` picks the
//! lexicographically least representative under those moves, and equality of
//! presentations means equality of canonical forms with circle ids ignored.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::dsu::Dsu;
use crate::error::{Result, RibbonError};

/// Direction of an arrow relative to its circle's stored traversal order.
/// `Plus` sorts before `Minus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// Name of an edge; a nonempty token over `[A-Za-z0-9_]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeLabel(String);

impl EdgeLabel {
    pub fn new(name: &str) -> Result<EdgeLabel> {
        if !is_token(name) {
            return Err(RibbonError::Syntax {
                line: 0,
                col: 0,
                msg: format!("invalid edge label {name:?}"),
            });
        }
        Ok(EdgeLabel(name.to_string()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn is_token(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// One marking arrow on a circle: the edge it belongs to and its direction
/// relative to the circle's stored traversal. Ordering is by edge name, then
/// sign with `+` before `-`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowOccurrence {
    pub edge: EdgeLabel,
    pub sign: Sign,
}

impl ArrowOccurrence {
    pub fn new(edge: EdgeLabel, sign: Sign) -> Self {
        ArrowOccurrence { edge, sign }
    }
}

impl fmt::Display for ArrowOccurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.edge, self.sign.symbol())
    }
}

/// A vertex circle: an id and a word of arrow occurrences with cyclic
/// semantics. An empty word is legal and denotes an isolated vertex.
#[derive(Debug, Clone)]
pub struct Circle {
    pub id: String,
    pub word: Vec<ArrowOccurrence>,
}

impl Circle {
    pub fn new(id: &str, word: Vec<ArrowOccurrence>) -> Self {
        Circle {
            id: id.to_string(),
            word,
        }
    }
}

/// Sorted edge subset; the working currency of all enumerators.
pub type EdgeSet = BTreeSet<EdgeLabel>;

/// The circle words of a canonical form, ids dropped. This is the dedup and
/// equality key for presentations.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(pub Vec<Vec<ArrowOccurrence>>);

/// An arrow presentation of a ribbon graph.
#[derive(Debug, Clone)]
pub struct ArrowPresentation {
    circles: Vec<Circle>,
}

impl ArrowPresentation {
    /// Builds a presentation, checking id uniqueness and that every label
    /// occurs exactly twice.
    pub fn new(circles: Vec<Circle>) -> Result<ArrowPresentation> {
        let p = ArrowPresentation { circles };
        let report = p.validate();
        if let Some(v) = report.violations.into_iter().next() {
            return Err(v);
        }
        Ok(p)
    }

    /// Builds a presentation without validity checks; used to construct
    /// deliberately broken inputs for `validate`.
    pub fn new_unchecked(circles: Vec<Circle>) -> ArrowPresentation {
        ArrowPresentation { circles }
    }

    pub fn circles(&self) -> &[Circle] {
        &self.circles
    }

    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }

    /// Sorted list of edge labels.
    pub fn edges(&self) -> EdgeSet {
        let mut set = EdgeSet::new();
        for c in &self.circles {
            for occ in &c.word {
                set.insert(occ.edge.clone());
            }
        }
        set
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    pub fn contains_edge(&self, e: &EdgeLabel) -> bool {
        self.circles
            .iter()
            .any(|c| c.word.iter().any(|o| &o.edge == e))
    }

    /// Occurrence positions of an edge in stored traversal order, as
    /// (circle index, word index) pairs. A valid presentation yields
    /// exactly two.
    pub fn occurrence_positions(&self, e: &EdgeLabel) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (ci, c) in self.circles.iter().enumerate() {
            for (wi, occ) in c.word.iter().enumerate() {
                if &occ.edge == e {
                    out.push((ci, wi));
                }
            }
        }
        out
    }

    /// Checks arities and circle ids; warns about disconnectedness. The
    /// enumerators of later modules require connected input, but every
    /// predicate here is well defined per component.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let mut ids = BTreeSet::new();
        for c in &self.circles {
            if !ids.insert(c.id.clone()) {
                violations.push(RibbonError::DuplicateCircleId(c.id.clone()));
            }
        }
        let mut counts: BTreeMap<&EdgeLabel, usize> = BTreeMap::new();
        for c in &self.circles {
            for occ in &c.word {
                *counts.entry(&occ.edge).or_insert(0) += 1;
            }
        }
        for (label, count) in counts {
            if count != 2 {
                violations.push(RibbonError::Arity {
                    label: label.as_str().to_string(),
                    count,
                });
            }
        }
        let mut warnings = Vec::new();
        if !self.circles.is_empty() {
            let comps = self.abstract_component_count();
            if comps > 1 {
                warnings.push(ValidationWarning::Disconnected { components: comps });
            }
        }
        ValidationReport {
            violations,
            warnings,
        }
    }

    /// Component count of the underlying abstract graph (circles as nodes,
    /// edges joining the circles that hold their occurrences).
    pub(crate) fn abstract_component_count(&self) -> usize {
        let mut dsu = Dsu::new(self.circles.len());
        let mut seen: HashMap<&EdgeLabel, usize> = HashMap::new();
        for (ci, c) in self.circles.iter().enumerate() {
            for occ in &c.word {
                match seen.get(&occ.edge) {
                    Some(&other) => {
                        dsu.union(ci, other);
                    }
                    None => {
                        seen.insert(&occ.edge, ci);
                    }
                }
            }
        }
        dsu.component_count()
    }

    // ----- canonical form ---------------------------------------------------

    /// The lexicographically least representative over: independent rotation
    /// of each circle word, independent reversal of each circle word with all
    /// signs on that circle flipped, reordering of circles, and simultaneous
    /// reversal of both arrows of an edge. Idempotent; two presentations of
    /// the same ribbon graph map to the same output.
    ///
    /// The per-edge reversals are searched exhaustively, so this is meant for
    /// small edge counts (the enumerators stay well under twenty).
    pub fn canonical_form(&self) -> ArrowPresentation {
        let edges: Vec<EdgeLabel> = self.edges().into_iter().collect();
        let m = edges.len();
        let edge_index: HashMap<&EdgeLabel, usize> =
            edges.iter().enumerate().map(|(i, e)| (e, i)).collect();

        // Per circle: the word with edge indices, the local edge indices it
        // touches, and a cache of minimized words keyed by the local part of
        // the flip pattern.
        struct Ctx {
            id: String,
            base: Vec<(usize, Sign)>,
            local: Vec<usize>,
            cache: HashMap<u64, Vec<(usize, Sign)>>,
        }
        let mut ctxs: Vec<Ctx> = self
            .circles
            .iter()
            .map(|c| {
                let base: Vec<(usize, Sign)> = c
                    .word
                    .iter()
                    .map(|o| (edge_index[&o.edge], o.sign))
                    .collect();
                let mut local: Vec<usize> = base.iter().map(|&(e, _)| e).collect();
                local.sort_unstable();
                local.dedup();
                Ctx {
                    id: c.id.clone(),
                    base,
                    local,
                    cache: HashMap::new(),
                }
            })
            .collect();

        // candidate = per-circle minimized words paired with their ids
        type Candidate = Vec<(Vec<(usize, Sign)>, String)>;
        assert!(m < 63, "canonical_form supports at most 62 edges");
        let mut best: Option<Candidate> = None;
        for pattern in 0u64..(1u64 << m) {
            let mut candidate: Candidate = Vec::new();
            for ctx in ctxs.iter_mut() {
                let mut key = 0u64;
                for (bit, &e) in ctx.local.iter().enumerate() {
                    if pattern >> e & 1 == 1 {
                        key |= 1 << bit;
                    }
                }
                let word = ctx
                    .cache
                    .entry(key)
                    .or_insert_with(|| {
                        let flipped: Vec<(usize, Sign)> = ctx
                            .base
                            .iter()
                            .map(|&(e, s)| {
                                if pattern >> e & 1 == 1 {
                                    (e, s.flipped())
                                } else {
                                    (e, s)
                                }
                            })
                            .collect();
                        least_cyclic(&flipped)
                    })
                    .clone();
                candidate.push((word, ctx.id.clone()));
            }
            candidate.sort();
            let better = match &best {
                None => true,
                Some(b) => {
                    let cw: Vec<&Vec<(usize, Sign)>> = candidate.iter().map(|(w, _)| w).collect();
                    let bw: Vec<&Vec<(usize, Sign)>> = b.iter().map(|(w, _)| w).collect();
                    cw < bw
                }
            };
            if better {
                best = Some(candidate);
            }
        }

        let circles = best
            .unwrap_or_default()
            .into_iter()
            .map(|(word, id)| Circle {
                id,
                word: word
                    .into_iter()
                    .map(|(e, s)| ArrowOccurrence::new(edges[e].clone(), s))
                    .collect(),
            })
            .collect();
        ArrowPresentation { circles }
    }

    /// Sorted canonical circle words with ids dropped; the equality and
    /// dedup key.
    pub fn canonical_key(&self) -> CanonicalKey {
        CanonicalKey(
            self.canonical_form()
                .circles
                .into_iter()
                .map(|c| c.word)
                .collect(),
        )
    }

    /// Canonical equality: same canonical circle words, ids ignored.
    pub fn equals(&self, other: &ArrowPresentation) -> bool {
        self.canonical_key() == other.canonical_key()
    }

    // ----- representative moves (used by the property suites) --------------

    /// Rotates the stored word of circle `idx` left by `by` positions.
    pub fn rotate_circle(&self, idx: usize, by: usize) -> ArrowPresentation {
        let mut p = self.clone();
        let w = &mut p.circles[idx].word;
        if !w.is_empty() {
            let by = by % w.len();
            w.rotate_left(by);
        }
        p
    }

    /// Reverses the stored word of circle `idx`, flipping every sign on it
    /// (re-reading the circle in the opposite direction).
    pub fn reflect_circle(&self, idx: usize) -> ArrowPresentation {
        let mut p = self.clone();
        let w = &mut p.circles[idx].word;
        w.reverse();
        for occ in w.iter_mut() {
            occ.sign = occ.sign.flipped();
        }
        p
    }

    pub fn swap_circles(&self, i: usize, j: usize) -> ArrowPresentation {
        let mut p = self.clone();
        p.circles.swap(i, j);
        p
    }

    /// Reverses both arrows of `e` simultaneously (re-orients the edge disc).
    pub fn reverse_edge_arrows(&self, e: &EdgeLabel) -> ArrowPresentation {
        let mut p = self.clone();
        for c in &mut p.circles {
            for occ in &mut c.word {
                if &occ.edge == e {
                    occ.sign = occ.sign.flipped();
                }
            }
        }
        p
    }

    // ----- text format ------------------------------------------------------

    /// Parses the text format. Comment lines start with `#`; each vertex line
    /// is `vertex <id>: <occ> <occ> ...` with `<occ>` = `<edge>+` or
    /// `<edge>-`. The stored word order follows the input.
    pub fn parse(text: &str) -> Result<ArrowPresentation> {
        let mut circles = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let rest = trimmed.strip_prefix("vertex").ok_or(RibbonError::Syntax {
                line,
                col: 1,
                msg: "expected `vertex <id>: ...`".to_string(),
            })?;
            let rest = rest.trim_start();
            let colon = rest.find(':').ok_or(RibbonError::Syntax {
                line,
                col: trimmed.len(),
                msg: "missing `:` after vertex id".to_string(),
            })?;
            let id = rest[..colon].trim();
            if !is_token(id) {
                return Err(RibbonError::Syntax {
                    line,
                    col: raw.find(id).map(|i| i + 1).unwrap_or(1),
                    msg: format!("invalid vertex id {id:?}"),
                });
            }
            let mut word = Vec::new();
            for tok in rest[colon + 1..].split_whitespace() {
                let col = raw.find(tok).map(|i| i + 1).unwrap_or(1);
                let (label, sign) = match tok.chars().last() {
                    Some('+') => (&tok[..tok.len() - 1], Sign::Plus),
                    Some('-') => (&tok[..tok.len() - 1], Sign::Minus),
                    _ => {
                        return Err(RibbonError::Syntax {
                            line,
                            col,
                            msg: format!("occurrence {tok:?} must end in `+` or `-`"),
                        })
                    }
                };
                if !is_token(label) {
                    return Err(RibbonError::Syntax {
                        line,
                        col,
                        msg: format!("invalid edge label {label:?}"),
                    });
                }
                word.push(ArrowOccurrence::new(EdgeLabel(label.to_string()), sign));
            }
            circles.push(Circle::new(id, word));
        }
        ArrowPresentation::new(circles)
    }

    /// Serializes to the text format, emitting the canonical form.
    pub fn to_text(&self) -> String {
        let canon = self.canonical_form();
        let mut out = String::new();
        for c in &canon.circles {
            out.push_str("vertex ");
            out.push_str(&c.id);
            out.push(':');
            for occ in &c.word {
                out.push(' ');
                out.push_str(&occ.to_string());
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for ArrowPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Lexicographically least word over all rotations of `w` and all rotations
/// of `w` reversed with signs flipped.
fn least_cyclic(w: &[(usize, Sign)]) -> Vec<(usize, Sign)> {
    if w.is_empty() {
        return Vec::new();
    }
    let mut reflected: Vec<(usize, Sign)> =
        w.iter().rev().map(|&(e, s)| (e, s.flipped())).collect();
    let mut best: Option<Vec<(usize, Sign)>> = None;
    for base in [w, reflected.as_mut_slice()] {
        for r in 0..base.len() {
            let mut cand = Vec::with_capacity(base.len());
            cand.extend_from_slice(&base[r..]);
            cand.extend_from_slice(&base[..r]);
            if best.as_ref().map_or(true, |b| &cand < b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap()
}

/// Non-fatal structural findings about a presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationWarning {
    Disconnected { components: usize },
}

impl fmt::Display for ValidationWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationWarning::Disconnected { components } => {
                write!(f, "{components} connected components")
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub violations: Vec<RibbonError>,
    pub warnings: Vec<ValidationWarning>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Convenience constructor for a one-circle presentation from `(label, sign)`
/// pairs; signs given as `'+'` / `'-'`.
pub fn bouquet(word: &[(&str, char)]) -> ArrowPresentation {
    presentation(&[("v0", word)])
}

/// Convenience constructor for multi-circle presentations.
pub fn presentation(circles: &[(&str, &[(&str, char)])]) -> ArrowPresentation {
    let circles = circles
        .iter()
        .map(|(id, word)| {
            Circle::new(
                id,
                word.iter()
                    .map(|&(label, sign)| {
                        ArrowOccurrence::new(
                            EdgeLabel::new(label).expect("bad label in test constructor"),
                            match sign {
                                '+' => Sign::Plus,
                                '-' => Sign::Minus,
                                other => panic!("bad sign {other:?}"),
                            },
                        )
                    })
                    .collect(),
            )
        })
        .collect();
    ArrowPresentation::new(circles).expect("invalid presentation in constructor")
}
