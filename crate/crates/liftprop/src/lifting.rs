//! The lifting property for maps of finite spaces.
//!
//! `f : A -> X` has the left lifting property against `g : B -> Y` when every
//! commuting square `psi : A -> B`, `phi : X -> Y` with `phi ∘ f = g ∘ psi`
//! admits a diagonal `lambda : X -> B` satisfying `lambda ∘ f = psi` and
//! `g ∘ lambda = phi`. Squares are enumerated outer-map-first; diagonals are
//! found by a small constraint search (fiber domains, arc consistency, then
//! backtracking), so the reported diagonal is the lexicographically least
//! one in the codomain's point order.

use std::time::Duration;

use crate::finspace::{is_monotone, CMap, FinSpace, TopologyError};

/// Iterator over all monotone maps `A -> B`, each produced exactly once.
///
/// Assignments are generated odometer-style over the points of `A` taken in
/// a linear extension (generic points first), with candidate images tried in
/// ascending codomain point order; prefixes that already violate
/// monotonicity are pruned. Consequently maps appear in lexicographic order
/// of their value tuple along the linear extension.
pub struct MonotoneMaps<'a> {
    dom: &'a FinSpace,
    cod: &'a FinSpace,
    order: Vec<usize>,
    /// Current partial/full assignment, indexed by domain point (not order
    /// position); `usize::MAX` marks unassigned.
    assign: Vec<usize>,
    /// Next candidate value to try at each order position.
    next_try: Vec<usize>,
    depth: usize,
    done: bool,
}

impl<'a> MonotoneMaps<'a> {
    pub fn new(dom: &'a FinSpace, cod: &'a FinSpace) -> MonotoneMaps<'a> {
        let n = dom.len();
        let done = cod.is_empty() && n > 0;
        MonotoneMaps {
            dom,
            cod,
            order: dom.linear_extension(),
            assign: vec![usize::MAX; n],
            next_try: vec![0; n.max(1)],
            depth: 0,
            done,
        }
    }

    /// Monotonicity of `assign[p] = v` against already-assigned points.
    fn consistent(&self, p: usize, v: usize) -> bool {
        for q in 0..self.dom.len() {
            let w = self.assign[q];
            if w == usize::MAX || q == p {
                continue;
            }
            if self.dom.specializes(p, q) && !self.cod.specializes(v, w) {
                return false;
            }
            if self.dom.specializes(q, p) && !self.cod.specializes(w, v) {
                return false;
            }
        }
        true
    }
}

impl Iterator for MonotoneMaps<'_> {
    type Item = CMap;

    fn next(&mut self) -> Option<CMap> {
        if self.done {
            return None;
        }
        let n = self.dom.len();
        if n == 0 {
            self.done = true;
            return Some(CMap::from_empty(self.cod));
        }
        loop {
            if self.depth == n {
                // Emit the completed assignment, then backtrack into the
                // last position to search for the next one.
                let map = CMap::new(self.dom.clone(), self.cod.clone(), self.assign.clone())
                    .expect("search yields monotone assignments");
                self.depth -= 1;
                self.assign[self.order[self.depth]] = usize::MAX;
                return Some(map);
            }
            let p = self.order[self.depth];
            let mut v = self.next_try[self.depth];
            while v < self.cod.len() && !self.consistent(p, v) {
                v += 1;
            }
            if v < self.cod.len() {
                self.assign[p] = v;
                self.next_try[self.depth] = v + 1;
                self.depth += 1;
                if self.depth < n {
                    self.next_try[self.depth] = 0;
                }
            } else {
                // Exhausted this position; pop.
                if self.depth == 0 {
                    self.done = true;
                    return None;
                }
                self.depth -= 1;
                self.assign[self.order[self.depth]] = usize::MAX;
            }
        }
    }
}

/// All monotone maps `dom -> cod` in the iterator's deterministic order.
pub fn enumerate_monotone(dom: &FinSpace, cod: &FinSpace) -> Vec<CMap> {
    MonotoneMaps::new(dom, cod).collect()
}

/// Search effort counters for a lifting-property decision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LiftStats {
    /// Commuting squares whose diagonal search ran.
    pub squares_examined: u64,
    /// Nodes visited across all diagonal backtracking searches.
    pub candidates_tested: u64,
}

/// Outcome of deciding `f ⧄ g`.
#[derive(Clone, Debug)]
pub struct LiftReport {
    pub holds: bool,
    /// For a failure: the first commuting square `(psi, phi)` with no
    /// diagonal, in enumeration order.
    pub witness: Option<(CMap, CMap)>,
    /// For a success on a nonempty square set: the diagonal found for the
    /// first square, as a sample.
    pub sample_lift: Option<CMap>,
    pub stats: LiftStats,
    pub elapsed: Duration,
}

/// Finds the lexicographically least diagonal for one commuting square, or
/// `None` if no diagonal exists. Errors on malformed input (mismatched
/// spaces or a non-commuting square).
pub fn find_lift(
    f: &CMap,
    g: &CMap,
    psi: &CMap,
    phi: &CMap,
) -> Result<Option<CMap>, TopologyError> {
    let mut stats = LiftStats::default();
    find_lift_counted(f, g, psi, phi, &mut stats)
}

fn check_square(f: &CMap, g: &CMap, psi: &CMap, phi: &CMap) -> Result<(), TopologyError> {
    if psi.dom() != f.dom() || psi.cod() != g.dom() {
        return Err(TopologyError::SpaceMismatch(
            "top map must go from the domain of the left map to the domain of the right map"
                .to_string(),
        ));
    }
    if phi.dom() != f.cod() || phi.cod() != g.cod() {
        return Err(TopologyError::SpaceMismatch(
            "bottom map must go from the codomain of the left map to the codomain of the right map"
                .to_string(),
        ));
    }
    for a in 0..f.dom().len() {
        if phi.apply(f.apply(a)) != g.apply(psi.apply(a)) {
            return Err(TopologyError::SquareDoesNotCommute(
                f.dom().name(a).to_string(),
            ));
        }
    }
    Ok(())
}

fn find_lift_counted(
    f: &CMap,
    g: &CMap,
    psi: &CMap,
    phi: &CMap,
    stats: &mut LiftStats,
) -> Result<Option<CMap>, TopologyError> {
    check_square(f, g, psi, phi)?;
    let x = f.cod(); // middle-left space, the diagonal's domain
    let b = g.dom(); // middle-right space, the diagonal's codomain
    let n = x.len();

    // Constraint domains: lambda(p) must land in g's fiber over phi(p), and
    // p = f(a) forces lambda(p) = psi(a). (Any conflict there would mean the
    // square does not commute, which is already ruled out.)
    let mut domains: Vec<Vec<usize>> = (0..n)
        .map(|p| {
            (0..b.len())
                .filter(|&q| g.apply(q) == phi.apply(p))
                .collect()
        })
        .collect();
    for a in 0..f.dom().len() {
        let p = f.apply(a);
        let forced = psi.apply(a);
        domains[p].retain(|&q| q == forced);
    }
    if domains.iter().any(Vec::is_empty) {
        return Ok(None);
    }

    // Arc consistency over the monotonicity constraints: for every
    // specialization p -> p' in X, each candidate for one end needs a
    // compatible candidate at the other.
    let arcs: Vec<(usize, usize)> = (0..n)
        .flat_map(|p| (0..n).map(move |q| (p, q)))
        .filter(|&(p, q)| p != q && x.specializes(p, q))
        .collect();
    let mut queue: Vec<(usize, usize)> = arcs.clone();
    while let Some((p, q)) = queue.pop() {
        // Keep values of p that have a support in q (p specializes to q, so
        // lambda(p) must specialize to some surviving lambda(q)).
        let before = domains[p].len();
        let q_domain = domains[q].clone();
        domains[p].retain(|&v| q_domain.iter().any(|&w| b.specializes(v, w)));
        let shrunk_p = domains[p].len() < before;
        let before_q = domains[q].len();
        let p_domain = domains[p].clone();
        domains[q].retain(|&w| p_domain.iter().any(|&v| b.specializes(v, w)));
        let shrunk_q = domains[q].len() < before_q;
        if domains[p].is_empty() || domains[q].is_empty() {
            return Ok(None);
        }
        if shrunk_p || shrunk_q {
            for &(r, s) in &arcs {
                let touches = r == p || s == p || r == q || s == q;
                if touches && !queue.contains(&(r, s)) {
                    queue.push((r, s));
                }
            }
        }
    }

    // Backtracking in point-index order gives the lexicographically least
    // diagonal because domains are kept ascending.
    let mut assign: Vec<usize> = vec![usize::MAX; n];
    fn backtrack(
        p: usize,
        n: usize,
        domains: &[Vec<usize>],
        x: &FinSpace,
        b: &FinSpace,
        assign: &mut Vec<usize>,
        stats: &mut LiftStats,
    ) -> bool {
        if p == n {
            return true;
        }
        'values: for &v in &domains[p] {
            stats.candidates_tested += 1;
            for (q, &w) in assign.iter().enumerate().take(p) {
                if x.specializes(p, q) && !b.specializes(v, w) {
                    continue 'values;
                }
                if x.specializes(q, p) && !b.specializes(w, v) {
                    continue 'values;
                }
            }
            assign[p] = v;
            if backtrack(p + 1, n, domains, x, b, assign, stats) {
                return true;
            }
            assign[p] = usize::MAX;
        }
        false
    }
    if backtrack(0, n, &domains, x, b, &mut assign, stats) {
        debug_assert!(is_monotone(x, b, &assign));
        Ok(Some(CMap::new(x.clone(), b.clone(), assign)?))
    } else {
        Ok(None)
    }
}

/// Decides whether `f` has the left lifting property against `g` by
/// enumerating every commuting square and searching each for a diagonal.
///
/// Squares are enumerated with the bottom map `phi` outermost (monotone maps
/// `f.cod -> g.cod` in enumeration order) and the top map `psi` innermost,
/// keeping only pairs that commute. The first square with no diagonal is
/// returned as the failure witness.
pub fn decide_lift(f: &CMap, g: &CMap) -> Result<LiftReport, TopologyError> {
    let started = std::time::Instant::now();
    let mut stats = LiftStats::default();
    let mut sample_lift = None;

    for phi in MonotoneMaps::new(f.cod(), g.cod()) {
        for psi in MonotoneMaps::new(f.dom(), g.dom()) {
            let commutes =
                (0..f.dom().len()).all(|a| phi.apply(f.apply(a)) == g.apply(psi.apply(a)));
            if !commutes {
                continue;
            }
            stats.squares_examined += 1;
            match find_lift_counted(f, g, &psi, &phi, &mut stats)? {
                Some(lift) => {
                    if sample_lift.is_none() {
                        sample_lift = Some(lift);
                    }
                }
                None => {
                    return Ok(LiftReport {
                        holds: false,
                        witness: Some((psi, phi)),
                        sample_lift: None,
                        stats,
                        elapsed: started.elapsed(),
                    });
                }
            }
        }
    }
    Ok(LiftReport {
        holds: true,
        witness: None,
        sample_lift,
        stats,
        elapsed: started.elapsed(),
    })
}
