//! Exhaustive generation of all topologies on `n` labeled points, and
//! corpus-wide cross-validation of the classical and lifting-based
//! separation-axiom checkers.
//!
//! Spaces are produced by backtracking over the off-diagonal cells of the
//! specialization matrix in row-major order, pruning transitivity violations
//! as soon as the last cell of a triple is decided, so each
//! reflexive-transitive relation appears exactly once and in a fixed order.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::dsl::render_space;
use crate::finspace::{CanonicalForm, FinSpace, TopologyError};
use crate::separation::{
    is_hereditarily_normal, is_normal, HereditaryMethod, NormalMethod,
};

/// Enumeration is meant for exhaustive corpora; past this the counts are
/// astronomically large.
pub const MAX_ENUM_POINTS: usize = 6;

/// Streaming iterator over every topology on `n` labeled points, optionally
/// skipping spaces homeomorphic to an earlier one.
pub struct SpaceIter {
    n: usize,
    names: Vec<String>,
    /// Off-diagonal cells `(i, j)` in row-major order.
    cells: Vec<(usize, usize)>,
    /// Relation matrix; diagonal fixed true.
    rel: Vec<Vec<bool>>,
    /// Next value to try at each depth: 0 = false, 1 = true, 2 = exhausted.
    next_try: Vec<u8>,
    depth: usize,
    started: bool,
    done: bool,
    seen: Option<BTreeSet<CanonicalForm>>,
}

/// Every topology on `n` labeled points (as its specialization preorder),
/// exactly once each, in a deterministic order. With `dedupe`, only the
/// first representative of each homeomorphism class is yielded.
pub fn all_spaces(n: usize, dedupe: bool) -> Result<SpaceIter, TopologyError> {
    if n > MAX_ENUM_POINTS {
        return Err(TopologyError::SizeOutOfRange { got: n, limit: MAX_ENUM_POINTS });
    }
    let names: Vec<String> = (0..n).map(crate::finspace::default_point_name).collect();
    let cells: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j)
        .collect();
    let mut rel = vec![vec![false; n]; n];
    for (i, row) in rel.iter_mut().enumerate() {
        row[i] = true;
    }
    Ok(SpaceIter {
        n,
        names,
        cells,
        rel,
        next_try: vec![0; n * n], // more than enough depth slots
        depth: 0,
        started: false,
        done: false,
        seen: dedupe.then(BTreeSet::new),
    })
}

impl SpaceIter {
    /// Whether setting the cell at `depth` keeps every fully-decided triple
    /// transitive. Cells earlier in row-major order (and the diagonal) count
    /// as decided.
    fn transitive_so_far(&self, depth: usize) -> bool {
        let decided = |i: usize, j: usize| -> Option<bool> {
            if i == j {
                return Some(true);
            }
            let pos = self
                .cells
                .iter()
                .position(|&c| c == (i, j))
                .expect("off-diagonal cell");
            (pos <= depth).then(|| self.rel[i][j])
        };
        let (i, j) = self.cells[depth];
        for m in 0..self.n {
            // (i -> j -> m), (m -> i -> j), (i -> m -> j) are the triples in
            // which the fresh cell participates.
            let triples = [((i, j), (j, m), (i, m)), ((m, i), (i, j), (m, j)), ((i, m), (m, j), (i, j))];
            for ((a1, a2), (b1, b2), (c1, c2)) in triples {
                if let (Some(ab), Some(bc), Some(ac)) =
                    (decided(a1, a2), decided(b1, b2), decided(c1, c2))
                {
                    if ab && bc && !ac {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn current_space(&self) -> FinSpace {
        let rows: Vec<u64> = (0..self.n)
            .map(|i| {
                let mut row = 0u64;
                for j in 0..self.n {
                    if self.rel[i][j] {
                        row |= 1 << j;
                    }
                }
                row
            })
            .collect();
        FinSpace::from_closed_rows(self.names.clone(), rows)
    }
}

impl Iterator for SpaceIter {
    type Item = FinSpace;

    fn next(&mut self) -> Option<FinSpace> {
        if self.done {
            return None;
        }
        let total = self.cells.len();
        if !self.started {
            self.started = true;
            if total == 0 {
                // n = 0 or 1: the single (discrete) space.
                self.done = true;
                return Some(self.current_space());
            }
        }
        // Emission leaves depth at total-1 with next_try pointing at the
        // next untried value, so the loop resumes the search directly.
        loop {
            if self.depth == total {
                let space = self.current_space();
                self.depth -= 1;
                if let Some(seen) = &mut self.seen {
                    if !seen.insert(space.canonical_form()) {
                        continue;
                    }
                }
                return Some(space);
            }
            let (i, j) = self.cells[self.depth];
            let v = self.next_try[self.depth];
            if v >= 2 {
                // Exhausted both values here; pop.
                if self.depth == 0 {
                    self.done = true;
                    return None;
                }
                self.next_try[self.depth] = 0;
                self.depth -= 1;
                continue;
            }
            self.next_try[self.depth] = v + 1;
            self.rel[i][j] = v == 1;
            if self.transitive_so_far(self.depth) {
                self.depth += 1;
            }
        }
    }
}

/// Axioms the corpus harness can sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Axiom {
    Normal,
    HereditarilyNormal,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::Normal => "normal",
            Axiom::HereditarilyNormal => "hereditarilyNormal",
        }
    }
}

/// One space on which two methods for the same axiom disagreed.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Mismatch {
    /// The space in the text format, for reproduction.
    pub space: String,
    pub axiom: String,
    pub verdicts: BTreeMap<String, bool>,
}

/// Aggregate result of a corpus sweep.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CorpusReport {
    pub n: usize,
    pub total_labeled: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total_unlabeled: Option<usize>,
    /// axiom name -> method name -> count of spaces where the method said
    /// the axiom holds.
    pub per_axiom: BTreeMap<String, BTreeMap<String, usize>>,
    pub mismatches: Vec<Mismatch>,
}

/// Runs every method of every requested axiom over all topologies on `n`
/// labeled points (representatives only, with `dedupe`), tallying verdicts
/// and recording any disagreement between methods of the same axiom.
pub fn cross_validate(
    n: usize,
    axioms: &[Axiom],
    dedupe: bool,
) -> Result<CorpusReport, TopologyError> {
    if n > 5 {
        return Err(TopologyError::SizeOutOfRange { got: n, limit: 5 });
    }
    let total_labeled = all_spaces(n, false)?.count();
    let swept: Vec<FinSpace> = all_spaces(n, dedupe)?.collect();
    let total_unlabeled = dedupe.then_some(swept.len());

    struct PerSpace {
        space_text: String,
        verdicts: Vec<(Axiom, Vec<(&'static str, bool)>)>,
    }

    let results: Vec<PerSpace> = swept
        .par_iter()
        .map(|x| {
            let verdicts = axioms
                .iter()
                .map(|&axiom| {
                    let per_method: Vec<(&'static str, bool)> = match axiom {
                        Axiom::Normal => NormalMethod::ALL
                            .iter()
                            .map(|&m| (m.name(), is_normal(x, m)))
                            .collect(),
                        Axiom::HereditarilyNormal => HereditaryMethod::ALL
                            .iter()
                            .map(|&m| (m.name(), is_hereditarily_normal(x, m)))
                            .collect(),
                    };
                    (axiom, per_method)
                })
                .collect();
            PerSpace { space_text: render_space(x), verdicts }
        })
        .collect();

    let mut per_axiom: BTreeMap<String, BTreeMap<String, usize>> = BTreeMap::new();
    let mut mismatches = Vec::new();
    for r in &results {
        for (axiom, per_method) in &r.verdicts {
            let tally = per_axiom.entry(axiom.name().to_string()).or_default();
            for &(method, verdict) in per_method {
                let slot = tally.entry(method.to_string()).or_insert(0);
                if verdict {
                    *slot += 1;
                }
            }
            let disagree = per_method.windows(2).any(|w| w[0].1 != w[1].1);
            if disagree {
                mismatches.push(Mismatch {
                    space: r.space_text.clone(),
                    axiom: axiom.name().to_string(),
                    verdicts: per_method
                        .iter()
                        .map(|&(m, v)| (m.to_string(), v))
                        .collect(),
                });
            }
        }
    }
    // Tally entries must exist even when the count is zero.
    for axiom in axioms {
        let tally = per_axiom.entry(axiom.name().to_string()).or_default();
        let methods: Vec<&'static str> = match axiom {
            Axiom::Normal => NormalMethod::ALL.iter().map(|m| m.name()).collect(),
            Axiom::HereditarilyNormal => {
                HereditaryMethod::ALL.iter().map(|m| m.name()).collect()
            }
        };
        for m in methods {
            tally.entry(m.to_string()).or_insert(0);
        }
    }

    Ok(CorpusReport {
        n,
        total_labeled,
        total_unlabeled,
        per_axiom,
        mismatches,
    })
}
