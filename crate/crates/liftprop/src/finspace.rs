//! Finite topological spaces as specialization preorders.
//!
//! A finite topology is determined by its specialization preorder: `spec(x, y)`
//! holds when `y` lies in the closure of `{x}`, drawn as an edge `x -> y`, so
//! arrowheads point at the more closed point. Open sets are exactly the
//! subsets closed under generization (taking `spec`-predecessors); closed sets
//! are those closed under specialization.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

/// Hard cap on space size; point sets are stored as 64-bit masks.
pub const MAX_POINTS: usize = 64;

/// Errors shared by the space, map, lifting and separation operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TopologyError {
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("duplicate point `{0}`")]
    DuplicatePoint(String),
    #[error("point index {index} out of range for a space with {size} points")]
    PointOutOfRange { index: usize, size: usize },
    #[error("spaces are limited to {MAX_POINTS} points, got {0}")]
    TooManyPoints(usize),
    #[error("assignment covers {got} points but the domain has {expected}")]
    AssignmentLength { expected: usize, got: usize },
    #[error("map is not monotone: {from} -> {to} in the domain, but {from_image} -> {to_image} fails in the codomain")]
    NotMonotone {
        from: String,
        to: String,
        from_image: String,
        to_image: String,
    },
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),
    #[error("square does not commute at domain point `{0}`")]
    SquareDoesNotCommute(String),
    #[error("set `{which}` is not closed")]
    NotClosed { which: String },
    #[error("sets are not disjoint")]
    NotDisjoint,
    #[error("point count {got} out of range (limit {limit})")]
    SizeOutOfRange { got: usize, limit: usize },
}

/// A subset of the points of some [`FinSpace`], as a bitmask over point
/// indices. Sets carry no reference to their space; operations that take a
/// set validate it against the space they run on.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PointSet(u64);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub fn from_mask(mask: u64) -> PointSet {
        PointSet(mask)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> PointSet {
        let mut mask = 0u64;
        for i in indices {
            assert!(i < MAX_POINTS, "point index {i} exceeds the {MAX_POINTS}-point limit");
            mask |= 1 << i;
        }
        PointSet(mask)
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn singleton(i: usize) -> PointSet {
        PointSet::from_indices([i])
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_POINTS && self.0 & (1 << i) != 0
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < MAX_POINTS);
        self.0 |= 1 << i;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: PointSet) -> PointSet {
        PointSet(self.0 | other.0)
    }

    pub fn intersection(self, other: PointSet) -> PointSet {
        PointSet(self.0 & other.0)
    }

    pub fn difference(self, other: PointSet) -> PointSet {
        PointSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: PointSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: PointSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Member indices in ascending order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (0..MAX_POINTS).filter(move |i| mask & (1 << i) != 0)
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.indices()).finish()
    }
}

/// Whether a subset is open and/or closed in its space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub open: bool,
    pub closed: bool,
}

/// A relabeling-invariant encoding of a space: the minimum, over all point
/// permutations, of the row-major adjacency bit string of `spec`. Two spaces
/// are homeomorphic iff their canonical forms are equal. Factorial cost;
/// meant for small spaces.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    n: usize,
    bits: Vec<u8>,
}

/// A finite topological space, stored as its specialization preorder.
///
/// `rows[i]` is the closure of point `i` (everything `i` specializes to) and
/// `cols[i]` is its minimal open neighborhood (everything specializing to
/// `i`); both are kept reflexively and transitively closed at all times.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FinSpace {
    points: Vec<String>,
    rows: Vec<u64>,
    cols: Vec<u64>,
}

impl FinSpace {
    /// Builds a space from point names and specialization edges `(x, y)`,
    /// meaning `y ∈ cl{x}`. The relation is closed reflexively and
    /// transitively; duplicate edges are fine.
    pub fn new<S: Into<String>>(
        points: Vec<S>,
        edges: &[(&str, &str)],
    ) -> Result<FinSpace, TopologyError> {
        let points: Vec<String> = points.into_iter().map(Into::into).collect();
        let mut index = BTreeMap::new();
        for (i, p) in points.iter().enumerate() {
            if index.insert(p.clone(), i).is_some() {
                return Err(TopologyError::DuplicatePoint(p.clone()));
            }
        }
        let mut idx_edges = Vec::with_capacity(edges.len());
        for (x, y) in edges {
            let xi = *index
                .get(*x)
                .ok_or_else(|| TopologyError::UnknownPoint((*x).to_string()))?;
            let yi = *index
                .get(*y)
                .ok_or_else(|| TopologyError::UnknownPoint((*y).to_string()))?;
            idx_edges.push((xi, yi));
        }
        FinSpace::from_indexed_edges(points, &idx_edges)
    }

    /// Same as [`FinSpace::new`] but with edges given as point indices.
    pub fn from_indexed_edges(
        points: Vec<String>,
        edges: &[(usize, usize)],
    ) -> Result<FinSpace, TopologyError> {
        let n = points.len();
        if n > MAX_POINTS {
            return Err(TopologyError::TooManyPoints(n));
        }
        {
            let mut seen = BTreeMap::new();
            for (i, p) in points.iter().enumerate() {
                if seen.insert(p.as_str(), i).is_some() {
                    return Err(TopologyError::DuplicatePoint(p.clone()));
                }
            }
        }
        let mut rows = vec![0u64; n];
        for (i, row) in rows.iter_mut().enumerate() {
            *row |= 1 << i;
        }
        for &(x, y) in edges {
            for (i, sz) in [(x, n), (y, n)] {
                if i >= sz {
                    return Err(TopologyError::PointOutOfRange { index: i, size: sz });
                }
            }
            rows[x] |= 1 << y;
        }
        // Transitive closure (Floyd-Warshall on bit rows).
        for k in 0..n {
            for i in 0..n {
                if rows[i] & (1 << k) != 0 {
                    rows[i] |= rows[k];
                }
            }
        }
        Ok(FinSpace::from_closed_rows(points, rows))
    }

    /// Builds a space from an already reflexive and transitively closed
    /// relation given as row masks.
    pub(crate) fn from_closed_rows(points: Vec<String>, rows: Vec<u64>) -> FinSpace {
        let n = points.len();
        let mut cols = vec![0u64; n];
        for (i, &row) in rows.iter().enumerate() {
            debug_assert!(row & (1 << i) != 0, "relation must be reflexive");
            for (j, col) in cols.iter_mut().enumerate() {
                if row & (1 << j) != 0 {
                    *col |= 1 << i;
                }
            }
        }
        FinSpace { points, rows, cols }
    }

    pub fn empty() -> FinSpace {
        FinSpace {
            points: Vec::new(),
            rows: Vec::new(),
            cols: Vec::new(),
        }
    }

    /// Discrete space on `n` points named `a`, `b`, ... (`p10`, `p11`, ...
    /// past the alphabet).
    pub fn discrete(n: usize) -> FinSpace {
        let points = (0..n).map(default_point_name).collect();
        let rows = (0..n).map(|i| 1u64 << i).collect();
        FinSpace::from_closed_rows(points, rows)
    }

    /// Sierpiński space `{o -> c}`: `o` open, `c` closed.
    pub fn sierpinski() -> FinSpace {
        FinSpace::new(vec!["o", "c"], &[("o", "c")]).expect("valid space")
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn name(&self, i: usize) -> &str {
        &self.points[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.points.iter().position(|p| p == name)
    }

    /// `spec(x, y)`: `y` lies in the closure of `{x}`.
    pub fn specializes(&self, x: usize, y: usize) -> bool {
        self.rows[x] & (1 << y) != 0
    }

    /// `x` and `y` are topologically indistinguishable.
    pub fn indistinguishable(&self, x: usize, y: usize) -> bool {
        self.specializes(x, y) && self.specializes(y, x)
    }

    pub fn full_set(&self) -> PointSet {
        if self.points.is_empty() {
            PointSet::EMPTY
        } else {
            PointSet::from_mask(u64::MAX >> (64 - self.points.len()))
        }
    }

    pub fn set_of_names(&self, names: &[&str]) -> Result<PointSet, TopologyError> {
        let mut set = PointSet::EMPTY;
        for name in names {
            let i = self
                .index_of(name)
                .ok_or_else(|| TopologyError::UnknownPoint((*name).to_string()))?;
            set.insert(i);
        }
        Ok(set)
    }

    pub fn names_of(&self, set: PointSet) -> Vec<&str> {
        set.indices().map(|i| self.name(i)).collect()
    }

    pub fn format_set(&self, set: PointSet) -> String {
        format!("{{{}}}", self.names_of(set).join(", "))
    }

    fn check_set(&self, s: PointSet) -> Result<(), TopologyError> {
        if s.is_subset(self.full_set()) {
            Ok(())
        } else {
            let index = s.indices().find(|&i| i >= self.len()).unwrap_or(self.len());
            Err(TopologyError::PointOutOfRange {
                index,
                size: self.len(),
            })
        }
    }

    pub(crate) fn closure_mask(&self, mask: u64) -> u64 {
        let mut out = 0u64;
        let mut rest = mask;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out |= self.rows[i];
        }
        out
    }

    pub(crate) fn min_open_mask(&self, mask: u64) -> u64 {
        let mut out = 0u64;
        let mut rest = mask;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out |= self.cols[i];
        }
        out
    }

    pub(crate) fn is_open_mask(&self, mask: u64) -> bool {
        self.min_open_mask(mask) == mask
    }

    pub(crate) fn is_closed_mask(&self, mask: u64) -> bool {
        self.closure_mask(mask) == mask
    }

    /// Smallest closed superset of `s`: everything some member specializes to.
    pub fn closure(&self, s: PointSet) -> Result<PointSet, TopologyError> {
        self.check_set(s)?;
        Ok(PointSet::from_mask(self.closure_mask(s.mask())))
    }

    /// Smallest open superset of `s`: the intersection of all opens
    /// containing it, which exists because finite spaces are Alexandrov.
    pub fn min_open(&self, s: PointSet) -> Result<PointSet, TopologyError> {
        self.check_set(s)?;
        Ok(PointSet::from_mask(self.min_open_mask(s.mask())))
    }

    pub fn classify(&self, s: PointSet) -> Result<Classification, TopologyError> {
        self.check_set(s)?;
        Ok(Classification {
            open: self.is_open_mask(s.mask()),
            closed: self.is_closed_mask(s.mask()),
        })
    }

    /// Connected components of the comparability graph, ordered by least
    /// member index. Each block is clopen.
    pub fn components(&self) -> Vec<PointSet> {
        let n = self.len();
        let mut seen = 0u64;
        let mut blocks = Vec::new();
        for start in 0..n {
            if seen & (1 << start) != 0 {
                continue;
            }
            // Grow by alternating closures and minimal opens to a fixpoint.
            let mut block = 1u64 << start;
            loop {
                let grown = self.closure_mask(block) | self.min_open_mask(block);
                if grown == block {
                    break;
                }
                block = grown;
            }
            seen |= block;
            blocks.push(PointSet::from_mask(block));
        }
        blocks
    }

    /// The subspace on `s`; for Alexandrov spaces this is the space of the
    /// restricted preorder. Point names and relative order are preserved.
    pub fn subspace(&self, s: PointSet) -> Result<FinSpace, TopologyError> {
        self.check_set(s)?;
        let kept: Vec<usize> = s.indices().collect();
        let points = kept.iter().map(|&i| self.points[i].clone()).collect();
        let rows = kept
            .iter()
            .map(|&i| {
                let mut row = 0u64;
                for (new_j, &j) in kept.iter().enumerate() {
                    if self.specializes(i, j) {
                        row |= 1 << new_j;
                    }
                }
                row
            })
            .collect();
        Ok(FinSpace::from_closed_rows(points, rows))
    }

    /// Every open set, in ascending mask order. Exponential; callers keep
    /// spaces small.
    pub fn open_family(&self) -> Vec<PointSet> {
        assert!(
            self.len() <= 20,
            "open_family is exponential; refusing a {}-point space",
            self.len()
        );
        let full = self.full_set().mask();
        (0..=full)
            .filter(|&m| self.is_open_mask(m))
            .map(PointSet::from_mask)
            .collect()
    }

    /// Point indices in a linear extension of the specialization preorder:
    /// generic points come first. Sorting by minimal-open size works because
    /// a strict specialization strictly enlarges the minimal open.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (self.cols[i].count_ones(), i));
        order
    }

    /// See [`CanonicalForm`].
    pub fn canonical_form(&self) -> CanonicalForm {
        let n = self.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best: Option<Vec<u8>> = None;
        permute(&mut perm, 0, &mut |p| {
            let mut bits = Vec::with_capacity(n * n);
            for &i in p {
                for &j in p {
                    bits.push(u8::from(self.specializes(i, j)));
                }
            }
            match &best {
                Some(b) if *b <= bits => {}
                _ => best = Some(bits),
            }
        });
        CanonicalForm {
            n,
            bits: best.unwrap_or_default(),
        }
    }
}

fn permute(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
    if items.is_empty() {
        visit(items);
    }
}

pub(crate) fn default_point_name(i: usize) -> String {
    const ALPHABET: &[u8] = b"abcdefghijklmnopqrstuvwxyz";
    if i < ALPHABET.len() {
        (ALPHABET[i] as char).to_string()
    } else {
        format!("p{i}")
    }
}

/// Monotonicity of a candidate assignment: `spec_dom(x, y)` must imply
/// `spec_cod(f(x), f(y))`. On finite spaces this is continuity.
pub fn is_monotone(dom: &FinSpace, cod: &FinSpace, assign: &[usize]) -> bool {
    debug_assert_eq!(assign.len(), dom.len());
    for x in 0..dom.len() {
        for y in 0..dom.len() {
            if dom.specializes(x, y) && !cod.specializes(assign[x], assign[y]) {
                return false;
            }
        }
    }
    true
}

/// Continuity checked by the open-set definition: the preimage of every open
/// of the codomain is open in the domain. Kept as an independent oracle for
/// [`is_monotone`].
pub fn is_continuous_by_preimages(dom: &FinSpace, cod: &FinSpace, assign: &[usize]) -> bool {
    debug_assert_eq!(assign.len(), dom.len());
    for open in cod.open_family() {
        let mut preimage = 0u64;
        for (x, &fx) in assign.iter().enumerate() {
            if open.contains(fx) {
                preimage |= 1 << x;
            }
        }
        if !dom.is_open_mask(preimage) {
            return false;
        }
    }
    true
}

/// A continuous (monotone) map between finite spaces. Monotonicity is
/// enforced at construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CMap {
    dom: FinSpace,
    cod: FinSpace,
    assign: Vec<usize>,
}

impl CMap {
    pub fn new(dom: FinSpace, cod: FinSpace, assign: Vec<usize>) -> Result<CMap, TopologyError> {
        if assign.len() != dom.len() {
            return Err(TopologyError::AssignmentLength {
                expected: dom.len(),
                got: assign.len(),
            });
        }
        for &v in &assign {
            if v >= cod.len() {
                return Err(TopologyError::PointOutOfRange {
                    index: v,
                    size: cod.len(),
                });
            }
        }
        for x in 0..dom.len() {
            for y in 0..dom.len() {
                if dom.specializes(x, y) && !cod.specializes(assign[x], assign[y]) {
                    return Err(TopologyError::NotMonotone {
                        from: dom.name(x).to_string(),
                        to: dom.name(y).to_string(),
                        from_image: cod.name(assign[x]).to_string(),
                        to_image: cod.name(assign[y]).to_string(),
                    });
                }
            }
        }
        Ok(CMap { dom, cod, assign })
    }

    /// Builds a map from `(domain point, codomain point)` name pairs; every
    /// domain point must appear exactly once.
    pub fn by_names(
        dom: FinSpace,
        cod: FinSpace,
        pairs: &[(&str, &str)],
    ) -> Result<CMap, TopologyError> {
        let mut assign = vec![usize::MAX; dom.len()];
        for (x, y) in pairs {
            let xi = dom
                .index_of(x)
                .ok_or_else(|| TopologyError::UnknownPoint((*x).to_string()))?;
            let yi = cod
                .index_of(y)
                .ok_or_else(|| TopologyError::UnknownPoint((*y).to_string()))?;
            assign[xi] = yi;
        }
        if let Some(missing) = assign.iter().position(|&v| v == usize::MAX) {
            return Err(TopologyError::UnknownPoint(dom.name(missing).to_string()));
        }
        CMap::new(dom, cod, assign)
    }

    pub fn identity(space: &FinSpace) -> CMap {
        CMap {
            dom: space.clone(),
            cod: space.clone(),
            assign: (0..space.len()).collect(),
        }
    }

    /// The unique map from the empty space.
    pub fn from_empty(cod: &FinSpace) -> CMap {
        CMap {
            dom: FinSpace::empty(),
            cod: cod.clone(),
            assign: Vec::new(),
        }
    }

    pub fn dom(&self) -> &FinSpace {
        &self.dom
    }

    pub fn cod(&self) -> &FinSpace {
        &self.cod
    }

    pub fn assign(&self) -> &[usize] {
        &self.assign
    }

    pub fn apply(&self, x: usize) -> usize {
        self.assign[x]
    }

    /// `g ∘ self`, requiring `self.cod == g.dom`.
    pub fn then(&self, g: &CMap) -> Result<CMap, TopologyError> {
        if self.cod != g.dom {
            return Err(TopologyError::SpaceMismatch(
                "composition requires the codomain of the first map to equal the domain of the second".to_string(),
            ));
        }
        Ok(CMap {
            dom: self.dom.clone(),
            cod: g.cod.clone(),
            assign: self.assign.iter().map(|&x| g.assign[x]).collect(),
        })
    }

    pub fn preimage(&self, target: PointSet) -> PointSet {
        PointSet::from_indices(
            (0..self.dom.len()).filter(|&x| target.contains(self.assign[x])),
        )
    }
}
