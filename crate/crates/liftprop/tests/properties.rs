//! Randomized properties: the text format round-trips arbitrary spaces, the
//! interval-set algebra agrees with pointwise membership, and dyadic order
//! matches exact rational arithmetic.

use proptest::prelude::*;

use liftprop::dsl::{parse_space, render_space};
use liftprop::interval::{is_open_set, Dyadic, IntervalPoint, IntervalSet, Part, Variant};
use liftprop::FinSpace;

/// A space on up to 5 points from an arbitrary edge set; the constructor
/// closes it into a preorder, so any edge list is valid input.
fn arb_space() -> impl Strategy<Value = FinSpace> {
    (1usize..=5)
        .prop_flat_map(|n| {
            let edges = proptest::collection::vec((0..n, 0..n), 0..=(n * n));
            (Just(n), edges)
        })
        .prop_map(|(n, edges)| {
            let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
            let named: Vec<(String, String)> = edges
                .into_iter()
                .map(|(i, j)| (names[i].clone(), names[j].clone()))
                .collect();
            let refs: Vec<(&str, &str)> =
                named.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
            FinSpace::new(names.clone(), &refs).expect("any relation closes into a preorder")
        })
}

/// Dyadics with small exponents are exactly representable in `f64`.
fn arb_dyadic() -> impl Strategy<Value = Dyadic> {
    (0u32..=10).prop_flat_map(|exp| {
        (0u64..=(1 << exp)).prop_map(move |num| Dyadic::new(num, exp).expect("in range"))
    })
}

/// An interval set assembled from a few primitive open/closed pieces by the
/// algebra itself, so validity holds by construction.
fn arb_interval_set() -> impl Strategy<Value = IntervalSet> {
    let primitive = (arb_dyadic(), arb_dyadic(), any::<bool>(), any::<bool>(), 0u8..4).prop_map(
        |(a, b, lc, hc, primes)| {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let (lo_closed, hi_closed) = if lo == hi { (true, true) } else { (lc, hc) };
            let part = Part::new(lo, lo_closed, hi, hi_closed).expect("ordered endpoints");
            IntervalSet::new(vec![part], primes & 1 != 0, primes & 2 != 0)
                .expect("single parts are valid")
        },
    );
    proptest::collection::vec((primitive, 0u8..3), 1..=4).prop_map(|pieces| {
        let mut acc = IntervalSet::empty();
        for (piece, op) in pieces {
            acc = match op {
                0 => acc.union(&piece),
                1 => acc.intersection(&piece),
                _ => acc.union(&piece.complement()),
            };
        }
        acc
    })
}

/// Membership probes: a grid of sixteenths plus both primes covers every
/// boundary the generators above can produce (exponents are re-probed via
/// the sets' own part endpoints).
fn probes(sets: &[&IntervalSet]) -> Vec<IntervalPoint> {
    let mut out = vec![IntervalPoint::Prime0, IntervalPoint::Prime1];
    for k in 0..=16u64 {
        out.push(IntervalPoint::Real(Dyadic::new(k, 4).expect("in range")));
    }
    for s in sets {
        for p in s.parts() {
            for q in [p.lo, p.hi] {
                out.push(IntervalPoint::Real(q));
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rendered_spaces_reparse_isomorphically(x in arb_space()) {
        let rendered = render_space(&x);
        let back = parse_space(&rendered)
            .unwrap_or_else(|e| panic!("{rendered} does not re-parse: {e}"));
        prop_assert_eq!(back.canonical_form(), x.canonical_form(), "text {}", rendered);
        // Name-preserving agreement of the order relation.
        for p in 0..x.len() {
            let bp = back.index_of(x.name(p)).expect("same names");
            for q in 0..x.len() {
                let bq = back.index_of(x.name(q)).expect("same names");
                prop_assert_eq!(x.specializes(p, q), back.specializes(bp, bq));
            }
        }
    }

    #[test]
    fn interval_algebra_matches_membership(a in arb_interval_set(), b in arb_interval_set()) {
        let union = a.union(&b);
        let inter = a.intersection(&b);
        let comp = a.complement();
        for p in probes(&[&a, &b, &union, &inter, &comp]) {
            prop_assert_eq!(union.contains(p), a.contains(p) || b.contains(p), "union at {}", p);
            prop_assert_eq!(inter.contains(p), a.contains(p) && b.contains(p), "inter at {}", p);
            prop_assert_eq!(comp.contains(p), !a.contains(p), "complement at {}", p);
        }
        // Closure laws.
        prop_assert_eq!(comp.complement(), a.clone(), "double complement");
        prop_assert_eq!(a.union(&comp), IntervalSet::full(), "excluded middle");
        prop_assert!(a.intersection(&comp).is_empty(), "non-contradiction");
    }

    #[test]
    fn open_sets_are_closed_under_union_and_intersection(
        a in arb_interval_set(),
        b in arb_interval_set(),
        v in prop_oneof![Just(Variant::Corrected), Just(Variant::Indistinguishable)],
    ) {
        if is_open_set(&a, v) && is_open_set(&b, v) {
            prop_assert!(is_open_set(&a.union(&b), v), "union of opens");
            prop_assert!(is_open_set(&a.intersection(&b), v), "intersection of opens");
        }
    }

    #[test]
    fn dyadic_order_matches_exact_value(a in arb_dyadic(), b in arb_dyadic()) {
        let av = a.numerator() as f64 / (1u64 << a.exponent()) as f64;
        let bv = b.numerator() as f64 / (1u64 << b.exponent()) as f64;
        prop_assert_eq!(a.cmp(&b), av.partial_cmp(&bv).unwrap());
        if a < b {
            let mid = a.midpoint(b).expect("in range");
            prop_assert!(a < mid && mid < b, "midpoint strictly between");
        }
    }
}
