//! Enumeration of all k-regular checkerboard-colourable twisted duals of a
//! presentation through the three-stage decomposition: a partial Petrial,
//! then a k-regularizing partial dual, then a colourability-restoring partial
//! Petrial. Results are grouped by canonical form with the witnessing
//! subset triples kept per class.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::petrial::enumerate_cc_petrials;
use crate::presentation::{ArrowPresentation, CanonicalKey, EdgeSet};
use crate::regular::enumerate_regular_partial_duals;
use crate::spanning::{all_subsets, spanning_trees};
use crate::topology::{checkerboard_colouring, degrees, is_eulerian, require_connected};
use crate::twist::{partial_dual, partial_petrial};

/// One route to a twisted dual: apply the Petrial on `petrial_first`, the
/// dual on `dual`, then the Petrial on `petrial_second`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RccWitness {
    pub petrial_first: EdgeSet,
    pub dual: EdgeSet,
    pub petrial_second: EdgeSet,
}

/// A canonical twisted dual together with every witnessing triple found.
#[derive(Debug, Clone)]
pub struct RccClass {
    pub result: ArrowPresentation,
    pub witnesses: Vec<RccWitness>,
}

/// All k-regular checkerboard-colourable twisted duals of `p`, keyed by
/// canonical form. Odd k yields nothing: a checkerboard-colourable graph is
/// Eulerian, so its degrees are even.
///
/// The first Petrial subset ranges over the whole lattice; the dual subsets
/// are exactly the k-regularizing ones of the twisted presentation, and the
/// final Petrial subsets exactly the colourability-restoring ones of the
/// (then Eulerian) dual.
pub fn enumerate_rcc_twisted_duals(
    p: &ArrowPresentation,
    k: usize,
) -> Result<BTreeMap<CanonicalKey, RccClass>> {
    require_connected(p)?;
    let mut out: BTreeMap<CanonicalKey, RccClass> = BTreeMap::new();
    if k == 0 || k % 2 == 1 {
        return Ok(out);
    }
    for a1 in all_subsets(&p.edges()) {
        let p1 = partial_petrial(p, &a1)?;
        for a2 in enumerate_regular_partial_duals(&p1, k)? {
            let p2 = partial_dual(&p1, &a2)?;
            debug_assert!(degrees(&p2).iter().all(|&d| d == k));
            for a3 in enumerate_cc_petrials(&p2)? {
                let result = partial_petrial(&p2, &a3)?;
                debug_assert!(checkerboard_colouring(&result).is_some());
                let key = result.canonical_key();
                out.entry(key)
                    .or_insert_with(|| RccClass {
                        result: result.clone(),
                        witnesses: Vec::new(),
                    })
                    .witnesses
                    .push(RccWitness {
                        petrial_first: a1.clone(),
                        dual: a2.clone(),
                        petrial_second: a3.clone(),
                    });
            }
        }
    }
    Ok(out)
}

/// Produces a checkerboard-colourable twisted dual of any connected
/// presentation, with its witness. Eulerian input needs no dual step; other
/// input is first dualized on a spanning tree, which leaves a bouquet and
/// hence an Eulerian graph.
pub fn has_cc_twisted_dual(p: &ArrowPresentation) -> Result<(bool, RccWitness, ArrowPresentation)> {
    require_connected(p)?;
    let a2 = if is_eulerian(p) {
        EdgeSet::new()
    } else {
        spanning_trees(p)?
            .into_iter()
            .next()
            .expect("a connected presentation has a spanning tree")
    };
    let p2 = partial_dual(p, &a2)?;
    let a3 = enumerate_cc_petrials(&p2)?
        .into_iter()
        .next()
        .expect("an Eulerian presentation has a colourable partial Petrial");
    let result = partial_petrial(&p2, &a3)?;
    let witness = RccWitness {
        petrial_first: EdgeSet::new(),
        dual: a2,
        petrial_second: a3,
    };
    Ok((true, witness, result))
}
