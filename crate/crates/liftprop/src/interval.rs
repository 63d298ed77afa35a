//! The unit interval with doubled endpoints, in two variants.
//!
//! The space has the points of `[0,1]` plus two extra points `0'` and `1'`.
//! In the `Corrected` variant `0` specializes to `0'` and `1` to `1'` and
//! nothing else is related; in the `Indistinguishable` variant the primes
//! are topologically indistinguishable from their partner endpoints. All
//! coordinates are dyadic rationals with exact arithmetic, and openness is
//! decided on an explicit finite algebra of rational-endpoint interval sets,
//! so every verdict here is computed rather than assumed.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::finspace::{is_monotone, FinSpace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntervalError {
    #[error("dyadic value {num}/2^{exp} lies outside [0,1]")]
    OutOfRange { num: u64, exp: u32 },
    #[error("dyadic exponent {0} exceeds the supported precision")]
    ExponentTooLarge(u32),
    #[error("interval parts must be sorted and pairwise disjoint (violation near {0})")]
    Overlapping(Dyadic),
    #[error("interval part has its upper endpoint below its lower endpoint")]
    EmptyPart,
    #[error("a single-point part must be closed on both sides")]
    HalfOpenPoint,
}

/// Exponents stay tiny in practice (chain depth is capped); this bound keeps
/// all comparison arithmetic comfortably inside `u128`.
const MAX_EXP: u32 = 60;

/// A dyadic rational `num / 2^exp` in `[0,1]`, kept in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: u64,
    exp: u32,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { num: 0, exp: 0 };
    pub const ONE: Dyadic = Dyadic { num: 1, exp: 0 };

    pub fn new(mut num: u64, mut exp: u32) -> Result<Dyadic, IntervalError> {
        while num != 0 && num.is_multiple_of(2) && exp > 0 {
            num /= 2;
            exp -= 1;
        }
        if num == 0 {
            exp = 0;
        }
        if exp > MAX_EXP {
            return Err(IntervalError::ExponentTooLarge(exp));
        }
        if num > 1u64 << exp {
            return Err(IntervalError::OutOfRange { num, exp });
        }
        Ok(Dyadic { num, exp })
    }

    pub fn numerator(self) -> u64 {
        self.num
    }

    pub fn exponent(self) -> u32 {
        self.exp
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    pub fn is_one(self) -> bool {
        self == Dyadic::ONE
    }

    /// Exact midpoint `(self + other) / 2`.
    pub fn midpoint(self, other: Dyadic) -> Result<Dyadic, IntervalError> {
        let e = self.exp.max(other.exp);
        let a = self.num << (e - self.exp);
        let b = other.num << (e - other.exp);
        Dyadic::new(a + b, e + 1)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Dyadic) -> Ordering {
        let e = self.exp.max(other.exp);
        let a = (self.num as u128) << (e - self.exp);
        let b = (other.num as u128) << (e - other.exp);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Dyadic) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, 1u64 << self.exp)
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A point of the doubled-endpoint interval.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum IntervalPoint {
    Prime0,
    Prime1,
    Real(Dyadic),
}

impl IntervalPoint {
    /// Position on the line, with each prime sitting just "behind" its
    /// partner endpoint for ordering purposes.
    fn sort_key(self) -> (Dyadic, u8) {
        match self {
            IntervalPoint::Real(q) => (q, 0),
            IntervalPoint::Prime0 => (Dyadic::ZERO, 1),
            IntervalPoint::Prime1 => (Dyadic::ONE, 1),
        }
    }
}

impl Ord for IntervalPoint {
    fn cmp(&self, other: &IntervalPoint) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for IntervalPoint {
    fn partial_cmp(&self, other: &IntervalPoint) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IntervalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntervalPoint::Prime0 => write!(f, "0'"),
            IntervalPoint::Prime1 => write!(f, "1'"),
            IntervalPoint::Real(q) => write!(f, "{q}"),
        }
    }
}

/// Which gluing of the doubled endpoints is in force.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// `0 ⤳ 0'` and `1 ⤳ 1'` only.
    Corrected,
    /// The primes are indistinguishable from their partner endpoints.
    Indistinguishable,
}

/// `q ∈ cl{p}` in the chosen variant. Distinct reals are never related.
pub fn specializes(p: IntervalPoint, q: IntervalPoint, v: Variant) -> bool {
    use IntervalPoint::{Prime0, Prime1, Real};
    if p == q {
        return true;
    }
    match (p, q) {
        (Real(r), Prime0) => r.is_zero(),
        (Real(r), Prime1) => r.is_one(),
        (Prime0, Real(r)) => v == Variant::Indistinguishable && r.is_zero(),
        (Prime1, Real(r)) => v == Variant::Indistinguishable && r.is_one(),
        _ => false,
    }
}

/// One maximal run of real points: `lo..hi` with per-endpoint closedness.
/// A single closed point is represented as `lo == hi`, both ends closed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Part {
    pub lo: Dyadic,
    pub lo_closed: bool,
    pub hi: Dyadic,
    pub hi_closed: bool,
}

impl Part {
    pub fn new(lo: Dyadic, lo_closed: bool, hi: Dyadic, hi_closed: bool) -> Result<Part, IntervalError> {
        if hi < lo {
            return Err(IntervalError::EmptyPart);
        }
        if lo == hi && !(lo_closed && hi_closed) {
            return Err(IntervalError::HalfOpenPoint);
        }
        Ok(Part { lo, lo_closed, hi, hi_closed })
    }

    fn contains(&self, q: Dyadic) -> bool {
        (self.lo < q || (self.lo == q && self.lo_closed))
            && (q < self.hi || (q == self.hi && self.hi_closed))
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' },
        )
    }
}

/// A subset of the doubled-endpoint interval: a finite union of
/// rational-endpoint subintervals of `[0,1]`, plus flags for the two primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalSet {
    parts: Vec<Part>,
    pub has_prime0: bool,
    pub has_prime1: bool,
}

impl IntervalSet {
    /// Validates ordering and disjointness; adjacent parts that share an
    /// endpoint with exactly one closed side are coalesced (their union is a
    /// single interval), while a shared endpoint closed on both sides is an
    /// overlap error.
    pub fn new(
        parts: Vec<Part>,
        has_prime0: bool,
        has_prime1: bool,
    ) -> Result<IntervalSet, IntervalError> {
        let mut out: Vec<Part> = Vec::with_capacity(parts.len());
        for part in parts {
            match out.last_mut() {
                None => out.push(part),
                Some(prev) => {
                    if part.lo < prev.hi || prev.lo > part.lo {
                        return Err(IntervalError::Overlapping(part.lo));
                    }
                    if part.lo == prev.hi {
                        match (prev.hi_closed, part.lo_closed) {
                            (true, true) => return Err(IntervalError::Overlapping(part.lo)),
                            (false, false) => out.push(part),
                            _ => {
                                prev.hi = part.hi;
                                prev.hi_closed = part.hi_closed;
                            }
                        }
                    } else {
                        out.push(part);
                    }
                }
            }
        }
        Ok(IntervalSet { parts: out, has_prime0, has_prime1 })
    }

    pub fn empty() -> IntervalSet {
        IntervalSet { parts: Vec::new(), has_prime0: false, has_prime1: false }
    }

    /// The whole space: `[0,1]` and both primes.
    pub fn full() -> IntervalSet {
        IntervalSet {
            parts: vec![Part { lo: Dyadic::ZERO, lo_closed: true, hi: Dyadic::ONE, hi_closed: true }],
            has_prime0: true,
            has_prime1: true,
        }
    }

    /// `[0,1]` with no primes.
    pub fn unit_interval() -> IntervalSet {
        IntervalSet { has_prime0: false, has_prime1: false, ..IntervalSet::full() }
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn contains_real(&self, q: Dyadic) -> bool {
        self.parts.iter().any(|p| p.contains(q))
    }

    pub fn contains(&self, p: IntervalPoint) -> bool {
        match p {
            IntervalPoint::Prime0 => self.has_prime0,
            IntervalPoint::Prime1 => self.has_prime1,
            IntervalPoint::Real(q) => self.contains_real(q),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty() && !self.has_prime0 && !self.has_prime1
    }

    /// Pointwise boolean combination, rebuilt by a boundary sweep: between
    /// consecutive endpoint values membership is constant, so checking every
    /// endpoint and every gap midpoint determines the result exactly.
    fn combine(&self, other: &IntervalSet, f: impl Fn(bool, bool) -> bool) -> IntervalSet {
        let mut bounds: BTreeSet<Dyadic> = BTreeSet::new();
        bounds.insert(Dyadic::ZERO);
        bounds.insert(Dyadic::ONE);
        for set in [self, other] {
            for p in &set.parts {
                bounds.insert(p.lo);
                bounds.insert(p.hi);
            }
        }
        let bs: Vec<Dyadic> = bounds.into_iter().collect();

        // Atoms in line order: point b0, gap (b0,b1), point b1, ...
        enum Atom {
            Point(Dyadic),
            Gap(Dyadic, Dyadic),
        }
        let mut atoms: Vec<(Atom, bool)> = Vec::with_capacity(bs.len() * 2);
        for (i, &b) in bs.iter().enumerate() {
            atoms.push((Atom::Point(b), f(self.contains_real(b), other.contains_real(b))));
            if let Some(&b2) = bs.get(i + 1) {
                let mid = b.midpoint(b2).expect("midpoint of in-range dyadics");
                atoms.push((Atom::Gap(b, b2), f(self.contains_real(mid), other.contains_real(mid))));
            }
        }

        let mut parts: Vec<Part> = Vec::new();
        let mut current: Option<Part> = None;
        for (atom, included) in atoms {
            if !included {
                if let Some(part) = current.take() {
                    parts.push(part);
                }
                continue;
            }
            match (&mut current, atom) {
                (None, Atom::Point(b)) => {
                    current = Some(Part { lo: b, lo_closed: true, hi: b, hi_closed: true });
                }
                (None, Atom::Gap(l, h)) => {
                    current = Some(Part { lo: l, lo_closed: false, hi: h, hi_closed: false });
                }
                (Some(part), Atom::Point(b)) => {
                    part.hi = b;
                    part.hi_closed = true;
                }
                (Some(part), Atom::Gap(_, h)) => {
                    part.hi = h;
                    part.hi_closed = false;
                }
            }
        }
        if let Some(part) = current.take() {
            parts.push(part);
        }
        IntervalSet {
            parts,
            has_prime0: f(self.has_prime0, other.has_prime0),
            has_prime1: f(self.has_prime1, other.has_prime1),
        }
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &IntervalSet) -> IntervalSet {
        self.combine(other, |a, b| a && b)
    }

    pub fn complement(&self) -> IntervalSet {
        IntervalSet::full().combine(self, |a, b| a && !b)
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut pieces: Vec<String> = self.parts.iter().map(Part::to_string).collect();
        if self.has_prime0 {
            pieces.push("{0'}".to_string());
        }
        if self.has_prime1 {
            pieces.push("{1'}".to_string());
        }
        if pieces.is_empty() {
            write!(f, "∅")
        } else {
            write!(f, "{}", pieces.join(" ∪ "))
        }
    }
}

/// Whether `s` is open in the doubled-endpoint interval under variant `v`:
/// the real part must be open in `[0,1]` (closed endpoints only at 0 or 1),
/// a prime in `s` drags its partner endpoint in, and in the
/// `Indistinguishable` variant an endpoint in `s` drags its prime in.
pub fn is_open_set(s: &IntervalSet, v: Variant) -> bool {
    for part in &s.parts {
        if part.lo_closed && !part.lo.is_zero() {
            return false;
        }
        if part.hi_closed && !part.hi.is_one() {
            return false;
        }
        if part.lo == part.hi {
            // A single point is closed on both sides, so it would need to
            // be both 0 and 1.
            return false;
        }
    }
    if s.has_prime0 && !s.contains_real(Dyadic::ZERO) {
        return false;
    }
    if s.has_prime1 && !s.contains_real(Dyadic::ONE) {
        return false;
    }
    if v == Variant::Indistinguishable {
        if s.contains_real(Dyadic::ZERO) && !s.has_prime0 {
            return false;
        }
        if s.contains_real(Dyadic::ONE) && !s.has_prime1 {
            return false;
        }
    }
    true
}

/// Continuity evidence for one canonical map: each probe is a named open
/// set paired with whether the map's preimage of it came out open.
#[derive(Clone, Debug)]
pub struct MapCheck {
    pub continuous: bool,
    pub probes: Vec<(String, bool)>,
}

fn map_check(probes: Vec<(String, bool)>) -> MapCheck {
    MapCheck { continuous: probes.iter().all(|&(_, ok)| ok), probes }
}

/// Continuity verdicts for the canonical maps out of the doubled-endpoint
/// interval: `pi` onto the three-point V-space, `iota` onto `[0,1]`, and —
/// in the `Indistinguishable` variant only — the footnote reading `pi_tilde`
/// that sends the endpoints with their primes.
#[derive(Clone, Debug)]
pub struct CanonicalMaps {
    pub pi: MapCheck,
    pub pi_tilde: Option<MapCheck>,
    pub iota: MapCheck,
}

fn part(lo: Dyadic, lo_closed: bool, hi: Dyadic, hi_closed: bool) -> Part {
    Part::new(lo, lo_closed, hi, hi_closed).expect("valid part")
}

fn set(parts: Vec<Part>, p0: bool, p1: bool) -> IntervalSet {
    IntervalSet::new(parts, p0, p1).expect("valid set")
}

/// Computes the continuity verdicts by checking preimages with
/// [`is_open_set`]. For `pi` and `pi_tilde` the probes are the three
/// nontrivial opens of the V-space; for `iota` they are subbasic opens of
/// `[0,1]` with eighth-step endpoints.
pub fn canonical_maps(v: Variant) -> CanonicalMaps {
    let unit = IntervalSet::unit_interval();
    let interior = |lo_closed: bool, hi_closed: bool| {
        set(vec![part(Dyadic::ZERO, lo_closed, Dyadic::ONE, hi_closed)], false, false)
    };

    // pi: Prime0 -> 0', Prime1 -> 1', every real -> m.
    // Preimages of {m}, {0', m}, {m, 1'}:
    let pi = map_check(vec![
        ("{m}".to_string(), is_open_set(&unit, v)),
        (
            "{0', m}".to_string(),
            is_open_set(&set(vec![part(Dyadic::ZERO, true, Dyadic::ONE, true)], true, false), v),
        ),
        (
            "{m, 1'}".to_string(),
            is_open_set(&set(vec![part(Dyadic::ZERO, true, Dyadic::ONE, true)], false, true), v),
        ),
    ]);

    // pi_tilde: reals strictly inside -> m; 0 and 0' -> 0'; 1 and 1' -> 1'.
    let pi_tilde = (v == Variant::Indistinguishable).then(|| {
        map_check(vec![
            ("{m}".to_string(), is_open_set(&interior(false, false), v)),
            (
                "{0', m}".to_string(),
                is_open_set(&set(vec![interior(true, false).parts[0]], true, false), v),
            ),
            (
                "{m, 1'}".to_string(),
                is_open_set(&set(vec![interior(false, true).parts[0]], false, true), v),
            ),
        ])
    });

    // iota: primes land on their endpoints, reals stay put. Preimage of an
    // open U of [0,1] is U plus the prime of each endpoint in U.
    let mut probes = Vec::new();
    let eighth = |k: u64| Dyadic::new(k, 3).expect("in range");
    for k in 1..=8 {
        let pre = set(vec![part(Dyadic::ZERO, true, eighth(k), k == 8)], true, k == 8);
        let close = if k == 8 { ']' } else { ')' };
        probes.push((format!("[0, {}{close}", eighth(k)), is_open_set(&pre, v)));
    }
    for k in 0..8 {
        let pre = set(vec![part(eighth(k), k == 0, Dyadic::ONE, true)], k == 0, true);
        let open = if k == 0 { '[' } else { '(' };
        probes.push((format!("{open}{}, 1]", eighth(k)), is_open_set(&pre, v)));
    }
    for a in 0..8 {
        for b in (a + 1)..=8 {
            if a == 0 && b == 8 {
                continue; // covered by the one-sided probes
            }
            let pre = set(
                vec![part(eighth(a), a == 0, eighth(b), b == 8)],
                a == 0,
                b == 8,
            );
            probes.push((format!("({}, {})", eighth(a), eighth(b)), is_open_set(&pre, v)));
        }
    }
    let iota = map_check(probes);

    CanonicalMaps { pi, pi_tilde, iota }
}

/// Verdict of [`fiber_comparison`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberVerdict {
    /// The projection's closed-point fiber is a strict subset of the
    /// corresponding endpoint fiber of `iota`.
    Strict,
    /// The two fibers coincide.
    Equal,
}

/// The fibers being compared on one side, as explicit point lists.
#[derive(Clone, Debug)]
pub struct FiberComparison {
    pub proj_fiber0: Vec<IntervalPoint>,
    pub iota_fiber0: Vec<IntervalPoint>,
    pub proj_fiber1: Vec<IntervalPoint>,
    pub iota_fiber1: Vec<IntervalPoint>,
    pub verdict: FiberVerdict,
}

/// Where `pi` sends a point: the primes to their V-space corners, every
/// real to the open middle.
pub fn apply_pi(p: IntervalPoint) -> &'static str {
    match p {
        IntervalPoint::Prime0 => "0'",
        IntervalPoint::Prime1 => "1'",
        IntervalPoint::Real(_) => "m",
    }
}

/// Where the footnote map `pi_tilde` sends a point: only the open interval
/// goes to the middle; each endpoint travels with its prime.
pub fn apply_pi_tilde(p: IntervalPoint) -> &'static str {
    match p {
        IntervalPoint::Prime0 => "0'",
        IntervalPoint::Prime1 => "1'",
        IntervalPoint::Real(q) if q.is_zero() => "0'",
        IntervalPoint::Real(q) if q.is_one() => "1'",
        IntervalPoint::Real(_) => "m",
    }
}

/// Where `iota` sends a point: primes onto their endpoints, reals fixed.
pub fn apply_iota(p: IntervalPoint) -> IntervalPoint {
    match p {
        IntervalPoint::Prime0 => IntervalPoint::Real(Dyadic::ZERO),
        IntervalPoint::Prime1 => IntervalPoint::Real(Dyadic::ONE),
        real => real,
    }
}

/// Compares the fibers of the variant's continuous projection over the two
/// closed points of the V-space with `iota`'s fibers over the endpoints.
///
/// Fibers are computed by applying the map definitions over a probe set
/// containing both primes, both endpoints, and interior samples; this covers
/// the true fibers because every point strictly inside `(0,1)` maps to the
/// open middle under both projections and to itself under `iota`.
pub fn fiber_comparison(v: Variant) -> FiberComparison {
    use IntervalPoint::{Prime0, Prime1, Real};
    let probes: Vec<IntervalPoint> = vec![
        Real(Dyadic::ZERO),
        Prime0,
        Real(Dyadic::new(1, 2).expect("in range")),
        Real(Dyadic::new(1, 1).expect("in range")),
        Real(Dyadic::new(3, 2).expect("in range")),
        Real(Dyadic::ONE),
        Prime1,
    ];
    // The projection used is pi where it is continuous (Corrected) and the
    // footnote map otherwise, matching canonical_maps' verdicts.
    let proj: fn(IntervalPoint) -> &'static str = match v {
        Variant::Corrected => apply_pi,
        Variant::Indistinguishable => apply_pi_tilde,
    };
    let fiber_over = |target: &str| -> Vec<IntervalPoint> {
        probes.iter().copied().filter(|&p| proj(p) == target).collect()
    };
    let iota_fiber = |target: Dyadic| -> Vec<IntervalPoint> {
        probes
            .iter()
            .copied()
            .filter(|&p| apply_iota(p) == IntervalPoint::Real(target))
            .collect()
    };
    let proj_fiber0 = fiber_over("0'");
    let proj_fiber1 = fiber_over("1'");
    let iota_fiber0 = iota_fiber(Dyadic::ZERO);
    let iota_fiber1 = iota_fiber(Dyadic::ONE);

    let side = |proj: &[IntervalPoint], iota: &[IntervalPoint]| -> FiberVerdict {
        let proj: BTreeSet<_> = proj.iter().copied().collect();
        let iota: BTreeSet<_> = iota.iter().copied().collect();
        assert!(proj.is_subset(&iota), "projection fibers sit inside iota fibers");
        if proj == iota {
            FiberVerdict::Equal
        } else {
            FiberVerdict::Strict
        }
    };
    let v0 = side(&proj_fiber0, &iota_fiber0);
    let v1 = side(&proj_fiber1, &iota_fiber1);
    assert_eq!(v0, v1, "the two endpoint fibers must agree");
    FiberComparison { proj_fiber0, iota_fiber0, proj_fiber1, iota_fiber1, verdict: v0 }
}

/// A readable, identifier-safe name for a point of a trace space.
pub fn point_name(p: IntervalPoint) -> String {
    match p {
        IntervalPoint::Prime0 => "0'".to_string(),
        IntervalPoint::Prime1 => "1'".to_string(),
        IntervalPoint::Real(q) => {
            if q.exponent() == 0 {
                format!("r{}", q.numerator())
            } else {
                format!("r{}_{}", q.numerator(), 1u64 << q.exponent())
            }
        }
    }
}

/// The finite space induced on a finite point set by the variant's
/// specialization relation; this is also the subspace topology, because
/// distinct reals are separated by disjoint intervals and a prime sticks
/// only to its partner endpoint. Input points are deduplicated and sorted.
pub fn trace_space(points: &[IntervalPoint], v: Variant) -> FinSpace {
    let points: Vec<IntervalPoint> = points.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let names: Vec<String> = points.iter().map(|&p| point_name(p)).collect();
    let rows: Vec<u64> = points
        .iter()
        .map(|&p| {
            let mut row = 0u64;
            for (j, &q) in points.iter().enumerate() {
                if specializes(p, q, v) {
                    row |= 1 << j;
                }
            }
            row
        })
        .collect();
    FinSpace::from_closed_rows(names, rows)
}

/// Whether assigning interval point `assign[i]` to each point `i` of `x`
/// gives a continuous map into the doubled-endpoint interval, checked by
/// corestricting to the trace space of the image.
pub fn map_continuous_to_interval(x: &FinSpace, assign: &[IntervalPoint], v: Variant) -> bool {
    assert_eq!(assign.len(), x.len(), "assignment must be total");
    let image: Vec<IntervalPoint> = assign.to_vec();
    let trace = trace_space(&image, v);
    let indices: Vec<usize> = assign
        .iter()
        .map(|&p| {
            trace
                .index_of(&point_name(p))
                .expect("image point is in the trace space")
        })
        .collect();
    is_monotone(x, &trace, &indices)
}
