//! Brute-force ground truth: direct predicate sweeps over subset lattices
//! and twist-word spaces, plus the shared test corpus. Every enumerator-level
//! test checks an enumerator against one of these sweeps.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::OnceLock;

use crate::error::{Result, RibbonError};
use crate::presentation::{
    ArrowOccurrence, ArrowPresentation, CanonicalKey, Circle, EdgeLabel, EdgeSet, Sign,
};
use crate::spanning::all_subsets;
use crate::topology::{checkerboard_colouring, degrees};
use crate::twist::{partial_dual_raw, partial_petrial_raw};

/// Default cap on the edge count of the triple-word sweep.
pub const DEFAULT_RCC_CAP: usize = 5;

/// All subsets A with every degree of the partial dual on A equal to k.
pub fn brute_regular_duals(p: &ArrowPresentation, k: usize) -> BTreeSet<EdgeSet> {
    all_subsets(&p.edges())
        .into_iter()
        .filter(|a| degrees(&partial_dual_raw(p, a)).iter().all(|&d| d == k))
        .collect()
}

/// All subsets A whose partial Petrial is checkerboard colourable.
pub fn brute_cc_petrials(p: &ArrowPresentation) -> BTreeSet<EdgeSet> {
    all_subsets(&p.edges())
        .into_iter()
        .filter(|a| checkerboard_colouring(&partial_petrial_raw(p, a)).is_some())
        .collect()
}

/// Canonical forms of every k-regular checkerboard-colourable result of a
/// Petrial-dual-Petrial triple, over all subset triples. Errors when the
/// edge count exceeds `cap` (the sweep is 8^m words).
pub fn brute_rcc_twisted(
    p: &ArrowPresentation,
    k: usize,
    cap: usize,
) -> Result<BTreeMap<CanonicalKey, ArrowPresentation>> {
    let m = p.edge_count();
    if m > cap {
        return Err(RibbonError::CapExceeded { edges: m, cap });
    }
    let mut out = BTreeMap::new();
    let mut key_cache: HashMap<Vec<Vec<ArrowOccurrence>>, CanonicalKey> = HashMap::new();
    let subsets = all_subsets(&p.edges());
    for b1 in &subsets {
        let q1 = partial_petrial_raw(p, b1);
        for b2 in &subsets {
            let q2 = partial_dual_raw(&q1, b2);
            for b3 in &subsets {
                let q3 = partial_petrial_raw(&q2, b3);
                if !degrees(&q3).iter().all(|&d| d == k) {
                    continue;
                }
                if checkerboard_colouring(&q3).is_none() {
                    continue;
                }
                let raw: Vec<Vec<ArrowOccurrence>> =
                    q3.circles().iter().map(|c| c.word.clone()).collect();
                let key = key_cache
                    .entry(raw)
                    .or_insert_with(|| q3.canonical_key())
                    .clone();
                out.entry(key).or_insert_with(|| q3.canonical_form());
            }
        }
    }
    Ok(out)
}

/// SplitMix64: a small deterministic generator for seeded corpora and
/// property tests; stable output across platforms and releases.
pub struct SplitMix64(u64);

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish value in 0..n (n > 0).
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        self.next_u64() % n
    }

    pub fn flip(&mut self) -> bool {
        self.next_u64() & 1 == 1
    }

    fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub presentation: ArrowPresentation,
}

/// The shared test corpus: every one-circle presentation with at most four
/// edges over both signs (deduplicated up to relabelling), the two worked
/// bouquet words read with positive arrows, a few hand-built multi-vertex
/// graphs, and seeded random connected presentations with five to ten edges.
/// All entries are connected.
#[derive(Debug, Clone)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
}

impl Corpus {
    pub fn standard() -> &'static Corpus {
        static CORPUS: OnceLock<Corpus> = OnceLock::new();
        CORPUS.get_or_init(build_standard)
    }

    pub fn with_max_edges(&self, m: usize) -> impl Iterator<Item = &CorpusEntry> {
        self.entries
            .iter()
            .filter(move |e| e.presentation.edge_count() <= m)
    }

    pub fn eulerian_with_max_edges(&self, m: usize) -> impl Iterator<Item = &CorpusEntry> {
        self.with_max_edges(m)
            .filter(|e| crate::topology::is_eulerian(&e.presentation))
    }
}

fn label(i: usize) -> EdgeLabel {
    EdgeLabel::new(&format!("e{i}")).unwrap()
}

/// All perfect matchings of 0..2m as pair lists, first elements increasing.
fn matchings(m: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(
        free: &mut Vec<usize>,
        acc: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if free.is_empty() {
            out.push(acc.clone());
            return;
        }
        let a = free.remove(0);
        for idx in 0..free.len() {
            let b = free.remove(idx);
            acc.push((a, b));
            go(free, acc, out);
            acc.pop();
            free.insert(idx, b);
        }
        free.insert(0, a);
    }
    let mut out = Vec::new();
    go(&mut (0..2 * m).collect(), &mut Vec::new(), &mut out);
    out
}

/// Structural dedup key: the canonical form with edges renamed by first
/// occurrence, so relabelled copies of one bouquet collapse.
fn structural_key(p: &ArrowPresentation) -> Vec<Vec<(usize, Sign)>> {
    let canon = p.canonical_form();
    let mut rank: HashMap<String, usize> = HashMap::new();
    let mut out = Vec::new();
    for c in canon.circles() {
        let mut word = Vec::new();
        for occ in &c.word {
            let next = rank.len();
            let r = *rank.entry(occ.edge.as_str().to_string()).or_insert(next);
            word.push((r, occ.sign));
        }
        out.push(word);
    }
    out
}

fn all_bouquets_up_to(max_edges: usize) -> Vec<ArrowPresentation> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for m in 0..=max_edges {
        for matching in matchings(m) {
            // edges named by first occurrence
            let mut word: Vec<usize> = vec![0; 2 * m];
            for (e, &(a, b)) in matching.iter().enumerate() {
                word[a] = e + 1;
                word[b] = e + 1;
            }
            for signs in 0u32..(1 << (2 * m)) {
                let occs: Vec<ArrowOccurrence> = word
                    .iter()
                    .enumerate()
                    .map(|(i, &e)| {
                        ArrowOccurrence::new(
                            label(e),
                            if signs >> i & 1 == 1 {
                                Sign::Minus
                            } else {
                                Sign::Plus
                            },
                        )
                    })
                    .collect();
                let p = ArrowPresentation::new(vec![Circle::new("v0", occs)]).unwrap();
                if seen.insert(structural_key(&p)) {
                    out.push(p);
                }
            }
        }
    }
    out
}

fn from_words(words: &[&[(usize, char)]]) -> ArrowPresentation {
    let circles = words
        .iter()
        .enumerate()
        .map(|(i, word)| {
            Circle::new(
                &format!("v{i}"),
                word.iter()
                    .map(|&(e, s)| {
                        ArrowOccurrence::new(
                            label(e),
                            if s == '+' { Sign::Plus } else { Sign::Minus },
                        )
                    })
                    .collect(),
            )
        })
        .collect();
    ArrowPresentation::new(circles).unwrap()
}

/// Random connected presentation with m edges on up to `max_circles`
/// circles; retries deterministically until connected.
fn random_connected(rng: &mut SplitMix64, m: usize, max_circles: usize) -> ArrowPresentation {
    loop {
        let v = 1 + rng.below(max_circles as u64) as usize;
        let mut slots: Vec<usize> = (1..=m).flat_map(|e| [e, e]).collect();
        rng.shuffle(&mut slots);
        let mut words: Vec<Vec<ArrowOccurrence>> = vec![Vec::new(); v];
        for e in slots {
            let c = rng.below(v as u64) as usize;
            let sign = if rng.flip() { Sign::Minus } else { Sign::Plus };
            words[c].push(ArrowOccurrence::new(label(e), sign));
        }
        if words.iter().any(|w| w.is_empty()) {
            continue;
        }
        let circles = words
            .into_iter()
            .enumerate()
            .map(|(i, w)| Circle::new(&format!("v{i}"), w))
            .collect();
        let p = ArrowPresentation::new(circles).unwrap();
        if crate::topology::connected_components(&p) == 1 {
            return p;
        }
    }
}

/// Random connected Eulerian presentation: a random closed walk through all
/// vertices provides the even-degree incidences, then each circle gets a
/// random cyclic order and random signs.
fn random_eulerian(rng: &mut SplitMix64, m: usize, max_circles: usize) -> ArrowPresentation {
    loop {
        let v = 1 + rng.below(max_circles as u64) as usize;
        if m < v {
            continue;
        }
        let mut stops = vec![0usize];
        for _ in 1..m {
            stops.push(rng.below(v as u64) as usize);
        }
        let mut present = vec![false; v];
        for &s in &stops {
            present[s] = true;
        }
        if present.iter().any(|&x| !x) {
            continue;
        }
        let mut words: Vec<Vec<ArrowOccurrence>> = vec![Vec::new(); v];
        for e in 1..=m {
            let from = stops[e - 1];
            let to = stops[e % m];
            for c in [from, to] {
                let sign = if rng.flip() { Sign::Minus } else { Sign::Plus };
                words[c].push(ArrowOccurrence::new(label(e), sign));
            }
        }
        for w in &mut words {
            let mut indices: Vec<usize> = (0..w.len()).collect();
            rng.shuffle(&mut indices);
            let reordered: Vec<ArrowOccurrence> =
                indices.into_iter().map(|i| w[i].clone()).collect();
            *w = reordered;
        }
        let circles = words
            .into_iter()
            .enumerate()
            .map(|(i, w)| Circle::new(&format!("v{i}"), w))
            .collect();
        let p = ArrowPresentation::new(circles).unwrap();
        debug_assert!(crate::topology::is_eulerian(&p));
        if crate::topology::connected_components(&p) == 1 {
            return p;
        }
    }
}

fn build_standard() -> Corpus {
    let mut entries = Vec::new();
    for (i, p) in all_bouquets_up_to(4).into_iter().enumerate() {
        entries.push(CorpusEntry {
            name: format!("bouquet_{:04}_m{}", i, p.edge_count()),
            presentation: p,
        });
    }

    // the two worked bouquet words, all arrows read positively
    let g1: Vec<(usize, char)> = [1, 2, 4, 3, 2, 1, 3, 4, 5, 5]
        .iter()
        .map(|&e| (e, '+'))
        .collect();
    entries.push(CorpusEntry {
        name: "worked_w1".to_string(),
        presentation: from_words(&[&g1]),
    });
    let g2: Vec<(usize, char)> = [1, 7, 8, 10, 1, 10, 3, 4, 6, 9, 8, 4, 7, 9, 3, 2, 5, 6, 5, 2]
        .iter()
        .map(|&e| (e, '+'))
        .collect();
    entries.push(CorpusEntry {
        name: "worked_w2".to_string(),
        presentation: from_words(&[&g2]),
    });

    let named: Vec<(&str, ArrowPresentation)> = vec![
        ("path2", from_words(&[&[(1, '+')], &[(1, '+')]])),
        (
            "parallel2",
            from_words(&[&[(1, '+'), (2, '+')], &[(1, '+'), (2, '+')]]),
        ),
        (
            "parallel3",
            from_words(&[
                &[(1, '+'), (2, '+'), (3, '+')],
                &[(3, '+'), (2, '+'), (1, '+')],
            ]),
        ),
        (
            "four_parallel",
            from_words(&[
                &[(1, '+'), (2, '+'), (3, '+'), (4, '+')],
                &[(4, '+'), (3, '+'), (2, '+'), (1, '+')],
            ]),
        ),
        (
            "cycle3",
            from_words(&[
                &[(1, '+'), (3, '-')],
                &[(2, '+'), (1, '-')],
                &[(3, '+'), (2, '-')],
            ]),
        ),
        (
            "cycle4_twisted",
            from_words(&[
                &[(1, '+'), (4, '-')],
                &[(2, '+'), (1, '+')],
                &[(3, '-'), (2, '-')],
                &[(4, '+'), (3, '+')],
            ]),
        ),
        (
            "pendant_triangle",
            from_words(&[
                &[(1, '+'), (3, '-'), (4, '+')],
                &[(2, '+'), (1, '-')],
                &[(3, '+'), (2, '-')],
                &[(4, '+')],
            ]),
        ),
        (
            "figure8_with_leg",
            from_words(&[
                &[(1, '+'), (1, '+'), (2, '+'), (3, '-'), (3, '+')],
                &[(2, '+')],
            ]),
        ),
    ];
    for (name, p) in named {
        entries.push(CorpusEntry {
            name: name.to_string(),
            presentation: p,
        });
    }

    let mut rng = SplitMix64::new(0x5eed_c0de);
    for m in 5..=10 {
        entries.push(CorpusEntry {
            name: format!("rand_m{m}"),
            presentation: random_connected(&mut rng, m, 4),
        });
        entries.push(CorpusEntry {
            name: format!("rand_eul_m{m}"),
            presentation: random_eulerian(&mut rng, m, 4),
        });
    }

    Corpus { entries }
}
