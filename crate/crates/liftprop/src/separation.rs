//! Normality and hereditary normality of finite spaces, decided classically
//! and by lifting properties against a fixed catalog of test maps.
//!
//! In a finite space the minimal open neighborhood of a closed set is the
//! smallest open set containing it, so two disjoint closed sets are
//! separable by opens iff their minimal opens are disjoint. The lifting
//! route instead asks whether the unique map from the empty space into `X`
//! lifts against a fixed projection (`pi_fin` for normality, `pi_her` for
//! hereditary normality); the test suite enforces that both routes agree on
//! exhaustive corpora.

use std::sync::OnceLock;

use crate::finspace::{CMap, FinSpace, PointSet, TopologyError};
use crate::lifting::decide_lift;

/// How to decide [`is_normal`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormalMethod {
    /// Every pair of disjoint closed sets has disjoint minimal opens.
    Brute,
    /// Point-level criterion: disjoint point closures force disjoint
    /// minimal point opens.
    Pairwise,
    /// No connected component contains two points with disjoint closures.
    Component,
    /// The empty map into the space lifts against `pi_fin`.
    Lifting,
}

impl NormalMethod {
    pub const ALL: [NormalMethod; 4] = [
        NormalMethod::Brute,
        NormalMethod::Pairwise,
        NormalMethod::Component,
        NormalMethod::Lifting,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NormalMethod::Brute => "brute",
            NormalMethod::Pairwise => "pairwise",
            NormalMethod::Component => "component",
            NormalMethod::Lifting => "lifting",
        }
    }
}

/// How to decide [`is_hereditarily_normal`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HereditaryMethod {
    /// Every open subspace is normal (the definition).
    OpenSubspaces,
    /// Every subspace is normal (classically equivalent; kept as a check).
    AllSubspaces,
    /// The empty map into the space lifts against `pi_her`.
    Lifting,
}

impl HereditaryMethod {
    pub const ALL: [HereditaryMethod; 3] = [
        HereditaryMethod::OpenSubspaces,
        HereditaryMethod::AllSubspaces,
        HereditaryMethod::Lifting,
    ];

    pub fn name(self) -> &'static str {
        match self {
            HereditaryMethod::OpenSubspaces => "openSubspaces",
            HereditaryMethod::AllSubspaces => "allSubspaces",
            HereditaryMethod::Lifting => "lifting",
        }
    }
}

/// A pair of disjoint closed sets of some space: the input to a separation
/// problem, and the witness format for normality failures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeparationInstance {
    pub s: PointSet,
    pub t: PointSet,
}

impl SeparationInstance {
    pub fn new(x: &FinSpace, s: PointSet, t: PointSet) -> Result<SeparationInstance, TopologyError> {
        for (set, which) in [(s, "s"), (t, "t")] {
            if !x.classify(set)?.closed {
                return Err(TopologyError::NotClosed { which: which.to_string() });
            }
        }
        if !s.is_disjoint(t) {
            return Err(TopologyError::NotDisjoint);
        }
        Ok(SeparationInstance { s, t })
    }
}

/// The fixed test spaces and maps the lifting characterizations use.
///
/// `tau` is the five-point chain shadowing the unit interval and
/// `tau_dagger` its order dual; `f` collapses tau's three middle points into
/// tau_dagger's middle. `b3` is the three-point V-space; `pi_fin : t5 -> b3`
/// is the normality test map. `t6` and `b4` extend `t5` and the four-point
/// diamond base with one extra closed point `Oc` under everything closed,
/// and `pi_her : t6 -> b4` is the hereditary-normality test map.
#[derive(Debug)]
pub struct TestCatalog {
    pub tau: FinSpace,
    pub tau_dagger: FinSpace,
    pub f: CMap,
    pub b3: FinSpace,
    pub t5: FinSpace,
    pub pi_fin: CMap,
    pub t6: FinSpace,
    pub b4: FinSpace,
    pub pi_her: CMap,
}

fn build_catalog() -> TestCatalog {
    let tau = FinSpace::new(
        vec!["L", "0", "M", "1", "R"],
        &[("L", "0"), ("M", "0"), ("M", "1"), ("R", "1")],
    )
    .expect("valid space");
    let tau_dagger = FinSpace::new(
        vec!["L'", "0'", "M'", "1'", "R'"],
        &[("0'", "L'"), ("0'", "M'"), ("1'", "M'"), ("1'", "R'")],
    )
    .expect("valid space");
    let f = CMap::by_names(
        tau.clone(),
        tau_dagger.clone(),
        &[("L", "0'"), ("0", "M'"), ("M", "M'"), ("1", "M'"), ("R", "1'")],
    )
    .expect("monotone");

    let b3 = FinSpace::new(vec!["0'", "m", "1'"], &[("m", "0'"), ("m", "1'")])
        .expect("valid space");
    let t5 = FinSpace::new(
        vec!["u", "u'", "r", "v'", "v"],
        &[("u'", "u"), ("u'", "r"), ("v'", "r"), ("v'", "v")],
    )
    .expect("valid space");
    let pi_fin = CMap::by_names(
        t5.clone(),
        b3.clone(),
        &[("u", "0'"), ("u'", "m"), ("r", "m"), ("v'", "m"), ("v", "1'")],
    )
    .expect("monotone");

    let t6 = FinSpace::new(
        vec!["u", "u'", "r", "v'", "v", "Oc"],
        &[
            ("u'", "u"),
            ("u'", "r"),
            ("v'", "r"),
            ("v'", "v"),
            ("u", "Oc"),
            ("r", "Oc"),
            ("v", "Oc"),
        ],
    )
    .expect("valid space");
    let b4 = FinSpace::new(
        vec!["u", "w", "v", "Oc"],
        &[("w", "u"), ("w", "v"), ("u", "Oc"), ("v", "Oc")],
    )
    .expect("valid space");
    let pi_her = CMap::by_names(
        t6.clone(),
        b4.clone(),
        &[
            ("u", "u"),
            ("u'", "w"),
            ("r", "w"),
            ("v'", "w"),
            ("v", "v"),
            ("Oc", "Oc"),
        ],
    )
    .expect("monotone");

    TestCatalog {
        tau,
        tau_dagger,
        f,
        b3,
        t5,
        pi_fin,
        t6,
        b4,
        pi_her,
    }
}

/// The fixed catalog; built once.
pub fn catalog() -> &'static TestCatalog {
    static CATALOG: OnceLock<TestCatalog> = OnceLock::new();
    CATALOG.get_or_init(build_catalog)
}

/// Visits every pair `(s, t)` of disjoint nonempty closed masks of `x`
/// until the visitor returns `false`. Enumeration is `s` ascending, and for
/// each `s` the submasks `t` of its complement descending (the standard
/// submask walk); cost is bounded by 3^n pairs.
fn for_each_disjoint_closed_pair(x: &FinSpace, mut visit: impl FnMut(u64, u64) -> bool) {
    assert!(
        x.len() <= 20,
        "closed-pair enumeration is exponential; refusing a {}-point space",
        x.len()
    );
    let full = x.full_set().mask();
    for s in 1..=full {
        if !x.is_closed_mask(s) {
            continue;
        }
        let complement = full & !s;
        let mut t = complement;
        while t != 0 {
            if x.is_closed_mask(t) && !visit(s, t) {
                return;
            }
            t = (t - 1) & complement;
        }
    }
}

fn is_normal_brute(x: &FinSpace) -> bool {
    let mut ok = true;
    for_each_disjoint_closed_pair(x, |s, t| {
        // Minimal opens are the smallest opens around each side, so open
        // separation exists iff they are disjoint.
        if x.min_open_mask(s) & x.min_open_mask(t) != 0 {
            ok = false;
            return false;
        }
        true
    });
    ok
}

fn is_normal_pairwise(x: &FinSpace) -> bool {
    let n = x.len();
    for p in 0..n {
        for q in (p + 1)..n {
            let disjoint_closures = x.closure_mask(1 << p) & x.closure_mask(1 << q) == 0;
            if disjoint_closures && x.min_open_mask(1 << p) & x.min_open_mask(1 << q) != 0 {
                return false;
            }
        }
    }
    true
}

fn is_normal_component(x: &FinSpace) -> bool {
    for block in x.components() {
        let members: Vec<usize> = block.indices().collect();
        for (i, &p) in members.iter().enumerate() {
            for &q in &members[i + 1..] {
                if x.closure_mask(1 << p) & x.closure_mask(1 << q) == 0 {
                    return false;
                }
            }
        }
    }
    true
}

fn is_normal_lifting(x: &FinSpace) -> bool {
    let f = CMap::from_empty(x);
    decide_lift(&f, &catalog().pi_fin)
        .expect("well-formed problem")
        .holds
}

/// Whether every pair of disjoint closed sets of `x` has disjoint open
/// neighborhoods, decided by the chosen route.
pub fn is_normal(x: &FinSpace, method: NormalMethod) -> bool {
    match method {
        NormalMethod::Brute => is_normal_brute(x),
        NormalMethod::Pairwise => is_normal_pairwise(x),
        NormalMethod::Component => is_normal_component(x),
        NormalMethod::Lifting => is_normal_lifting(x),
    }
}

/// Whether every open subspace of `x` is normal, decided by the chosen
/// route.
pub fn is_hereditarily_normal(x: &FinSpace, method: HereditaryMethod) -> bool {
    match method {
        HereditaryMethod::OpenSubspaces => x.open_family().into_iter().all(|o| {
            is_normal_brute(&x.subspace(o).expect("own subset"))
        }),
        HereditaryMethod::AllSubspaces => {
            assert!(
                x.len() <= 20,
                "subspace sweep is exponential; refusing a {}-point space",
                x.len()
            );
            let full = x.full_set().mask();
            (0..=full).all(|m| {
                is_normal_brute(&x.subspace(PointSet::from_mask(m)).expect("own subset"))
            })
        }
        HereditaryMethod::Lifting => {
            let f = CMap::from_empty(x);
            decide_lift(&f, &catalog().pi_her)
                .expect("well-formed problem")
                .holds
        }
    }
}

/// A smallest inseparable pair of disjoint nonempty closed sets, or `None`
/// when the space is normal. Pairs are compared by total size, then
/// lexicographically by the point indices of `s`, then of `t`.
pub fn separation_witness(x: &FinSpace) -> Option<SeparationInstance> {
    type Key = (usize, Vec<usize>, Vec<usize>);
    let mut best: Option<(Key, u64, u64)> = None;
    for_each_disjoint_closed_pair(x, |s, t| {
        if x.min_open_mask(s) & x.min_open_mask(t) != 0 {
            let key: Key = (
                (s.count_ones() + t.count_ones()) as usize,
                PointSet::from_mask(s).indices().collect(),
                PointSet::from_mask(t).indices().collect(),
            );
            match &best {
                Some((b, _, _)) if *b <= key => {}
                _ => best = Some((key, s, t)),
            }
        }
        true
    });
    best.map(|(_, s, t)| SeparationInstance {
        s: PointSet::from_mask(s),
        t: PointSet::from_mask(t),
    })
}

/// The map `X -> b3` classifying a separation instance: `s` to the closed
/// point `0'`, `t` to the closed point `1'`, the rest to the open middle.
/// Always continuous because `s` and `t` are closed.
pub fn chi_for(x: &FinSpace, inst: &SeparationInstance) -> Result<CMap, TopologyError> {
    let inst = SeparationInstance::new(x, inst.s, inst.t)?; // revalidate
    let b3 = &catalog().b3;
    let zero = b3.index_of("0'").expect("catalog point");
    let mid = b3.index_of("m").expect("catalog point");
    let one = b3.index_of("1'").expect("catalog point");
    let assign = (0..x.len())
        .map(|p| {
            if inst.s.contains(p) {
                zero
            } else if inst.t.contains(p) {
                one
            } else {
                mid
            }
        })
        .collect();
    CMap::new(x.clone(), b3.clone(), assign)
}

/// Inverse of [`chi_for`]: the fibers of the two closed points of `b3`.
pub fn instance_from_chi(chi: &CMap) -> Result<SeparationInstance, TopologyError> {
    let b3 = &catalog().b3;
    if chi.cod() != b3 {
        return Err(TopologyError::SpaceMismatch(
            "classifying maps must land in the catalog V-space".to_string(),
        ));
    }
    let s = chi.preimage(PointSet::singleton(b3.index_of("0'").expect("catalog point")));
    let t = chi.preimage(PointSet::singleton(b3.index_of("1'").expect("catalog point")));
    SeparationInstance::new(chi.dom(), s, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{parse_space, render_space};
    use crate::finspace::is_monotone;
    use crate::lifting::enumerate_monotone;

    fn fence() -> FinSpace {
        parse_space("{x -> a, x -> b, y -> b, y -> c}").unwrap()
    }

    /// The fence under one extra point in the closure of everything: normal
    /// (all nonempty closed sets meet at the top) but not hereditarily so.
    fn fence_with_top() -> FinSpace {
        parse_space("{x -> a, x -> b, y -> b, y -> c, x -> w, y -> w, a -> w, b -> w, c -> w}")
            .unwrap()
    }

    #[test]
    fn catalog_shapes() {
        let cat = catalog();
        assert_eq!(cat.tau.len(), 5);
        assert_eq!(render_space(&cat.tau), "{L -> 0 <- M -> 1 <- R}");
        assert_eq!(render_space(&cat.b3), "{0' <- m -> 1'}");
        assert_eq!(render_space(&cat.t5), "{u <- u' -> r <- v' -> v}");

        // pi_her merges exactly the three open points.
        let w = cat.b4.index_of("w").unwrap();
        for p in ["u'", "r", "v'"] {
            assert_eq!(cat.pi_her.apply(cat.t6.index_of(p).unwrap()), w);
        }
        for p in ["u", "v", "Oc"] {
            let image = cat.pi_her.apply(cat.t6.index_of(p).unwrap());
            assert_eq!(cat.b4.name(image), p);
        }

        // Hoisted base: w reaches the extra closed point by transitivity.
        let oc = cat.b4.index_of("Oc").unwrap();
        assert!(cat.b4.specializes(w, oc));

        // All catalog maps are monotone by construction; double-check the
        // two projections against the standalone checker.
        for map in [&cat.f, &cat.pi_fin, &cat.pi_her] {
            assert!(is_monotone(map.dom(), map.cod(), map.assign()));
        }
    }

    #[test]
    fn normality_of_small_examples() {
        let cat = catalog();
        for method in NormalMethod::ALL {
            assert!(is_normal(&FinSpace::sierpinski(), method), "{method:?}");
            assert!(!is_normal(&cat.b3, method), "{method:?}");
            assert!(!is_normal(&cat.tau, method), "{method:?}");
            assert!(is_normal(&FinSpace::discrete(3), method), "{method:?}");
            assert!(is_normal(&FinSpace::empty(), method), "{method:?}");
            assert!(!is_normal(&fence(), method), "{method:?}");
            assert!(is_normal(&fence_with_top(), method), "{method:?}");
        }
    }

    #[test]
    fn hereditary_normality_of_small_examples() {
        let cat = catalog();
        for method in HereditaryMethod::ALL {
            assert!(is_hereditarily_normal(&FinSpace::discrete(4), method), "{method:?}");
            assert!(!is_hereditarily_normal(&cat.b3, method), "{method:?}");
            assert!(is_hereditarily_normal(&FinSpace::sierpinski(), method), "{method:?}");
            // Normal but not hereditarily normal: removing the top point
            // exposes the fence.
            assert!(!is_hereditarily_normal(&fence_with_top(), method), "{method:?}");
        }
    }

    #[test]
    fn witness_examples() {
        let cat = catalog();
        let w = separation_witness(&cat.b3).unwrap();
        assert_eq!(cat.b3.format_set(w.s), "{0'}");
        assert_eq!(cat.b3.format_set(w.t), "{1'}");

        assert!(separation_witness(&FinSpace::discrete(4)).is_none());
        assert!(separation_witness(&FinSpace::empty()).is_none());

        // Smallest inseparable pair of the fence: the singletons a, b whose
        // minimal opens share x.
        let f = fence();
        let w = separation_witness(&f).unwrap();
        assert_eq!(f.format_set(w.s), "{a}");
        assert_eq!(f.format_set(w.t), "{b}");

        let tau = &cat.tau;
        let w = separation_witness(tau).unwrap();
        assert_eq!(tau.format_set(w.s), "{0}");
        assert_eq!(tau.format_set(w.t), "{1}");
    }

    #[test]
    fn witness_present_iff_not_normal() {
        for text in [
            "{a -> b -> c}",
            "{0' <- m -> 1'}",
            "{x -> a, x -> b, y -> b, y -> c}",
            "{a, b, c}",
            "{a = b}",
        ] {
            let x = parse_space(text).unwrap();
            assert_eq!(separation_witness(&x).is_none(), is_normal(&x, NormalMethod::Brute));
        }
    }

    #[test]
    fn witness_instances_validate() {
        let f = fence();
        let w = separation_witness(&f).unwrap();
        assert!(SeparationInstance::new(&f, w.s, w.t).is_ok());

        // Non-closed and overlapping inputs are rejected.
        let x_only = f.set_of_names(&["x"]).unwrap();
        let a_only = f.set_of_names(&["a"]).unwrap();
        assert!(matches!(
            SeparationInstance::new(&f, x_only, a_only),
            Err(TopologyError::NotClosed { .. })
        ));
        assert!(matches!(
            SeparationInstance::new(&f, a_only, a_only),
            Err(TopologyError::NotDisjoint)
        ));
    }

    #[test]
    fn chi_bijection_on_examples() {
        for text in ["{a -> b -> c}", "{x -> a, x -> b, y -> b, y -> c}", "{a, b}"] {
            let x = parse_space(text).unwrap();
            // Every instance -> chi -> instance round-trips.
            for_each_disjoint_closed_pair(&x, |s, t| {
                let inst = SeparationInstance {
                    s: PointSet::from_mask(s),
                    t: PointSet::from_mask(t),
                };
                let chi = chi_for(&x, &inst).unwrap();
                assert_eq!(instance_from_chi(&chi).unwrap(), inst);
                true
            });
            // Every chi -> instance -> chi round-trips, and the counts
            // agree (instances with possibly-empty sides included).
            let chis = enumerate_monotone(&x, &catalog().b3);
            let mut instances = 0usize;
            let full = x.full_set().mask();
            for s in 0..=full {
                if !x.is_closed_mask(s) {
                    continue;
                }
                for t in 0..=full {
                    if t & s == 0 && x.is_closed_mask(t) {
                        instances += 1;
                    }
                }
            }
            assert_eq!(chis.len(), instances, "on {text}");
            for chi in chis {
                let inst = instance_from_chi(&chi).unwrap();
                let back = chi_for(&x, &inst).unwrap();
                assert_eq!(back.assign(), chi.assign());
            }
        }
    }

    #[test]
    fn lifting_route_matches_brute_on_catalog_spaces() {
        let cat = catalog();
        for x in [&cat.tau, &cat.tau_dagger, &cat.b3, &cat.t5, &cat.t6, &cat.b4] {
            assert_eq!(
                is_normal(x, NormalMethod::Brute),
                is_normal(x, NormalMethod::Lifting),
            );
            assert_eq!(
                is_hereditarily_normal(x, HereditaryMethod::OpenSubspaces),
                is_hereditarily_normal(x, HereditaryMethod::Lifting),
            );
        }
    }
}
