use dpgit::catalog::{verify_all, FIXTURES};
use dpgit::enumer::{hj_expansion, is_t_singularity, markov_solutions};
use dpgit::germ::SingularityType;
use dpgit::gitstab::{torus_stability, StabilityClass, TorusPoint};
use dpgit::input::parse;
use dpgit::moduli::quintic_invariants;
use dpgit::par::Exec;
use dpgit::polyalg::{ratio, BinaryForm, FieldElement, Mono, MultiPoly, Ring, WeightSystem, WeightedDegree};
use num_integer::Integer;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn poly3(terms: &[(i64, [u32; 3])]) -> MultiPoly {
    let ring = Ring::new(&["x", "y", "z"]);
    MultiPoly::from_terms(&ring, terms.iter().map(|(c, e)| (Mono(e.to_vec()), FieldElement::from_i64(*c))))
}

fn terms() -> impl Strategy<Value = Vec<(i64, [u32; 3])>> {
    prop::collection::vec((-5i64..=5, [0u32..4, 0u32..4, 0u32..4]), 1..5)
}

fn pairs(s: &[Vec<i64>], v: &[i64]) -> bool {
    s.iter().all(|w| w.iter().zip(v).map(|(a, b)| a * b).sum::<i64>() > 0)
}

fn window_search(s: &[Vec<i64>], b: i64) -> bool {
    let r = s[0].len();
    let mut v = vec![-b; r];
    loop {
        if pairs(s, &v) {
            return true;
        }
        let Some(i) = (0..r).rev().find(|&i| v[i] < b) else {
            return false;
        };
        v[i] += 1;
        for x in v.iter_mut().skip(i + 1) {
            *x = -b;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_degree_adds(a in terms(), b in terms()) {
        let (p, q) = (poly3(&a), poly3(&b));
        prop_assume!(!p.is_zero() && !q.is_zero());
        let w = WeightSystem(vec![1, 2, 3]);
        let hom = |f: &MultiPoly| match f.weighted_degree(&w).unwrap() {
            WeightedDegree::Homogeneous(d) => Some(d),
            _ => None,
        };
        if let (Some(d), Some(e)) = (hom(&p), hom(&q)) {
            prop_assert_eq!(hom(&(&p * &q)), Some(d + e));
        }
        prop_assert_eq!((&p * &q).total_degree(), Some(p.total_degree().unwrap() + q.total_degree().unwrap()));
    }

    #[test]
    fn gcd_divides_both(a in terms(), b in terms(), c in terms()) {
        let (p, q, r) = (poly3(&a), poly3(&b), poly3(&c));
        prop_assume!(!p.is_zero() && !q.is_zero() && !r.is_zero());
        let (pr, qr) = (&p * &r, &q * &r);
        let g = pr.gcd(&qr);
        prop_assert!(pr.div_exact(&g).is_some());
        prop_assert!(qr.div_exact(&g).is_some());
        prop_assert!(g.div_exact(&r).is_some());
    }

    #[test]
    fn substitution_is_a_ring_map(a in terms(), b in terms(), imgs in prop::collection::vec(terms(), 3)) {
        let (p, q) = (poly3(&a), poly3(&b));
        let images: Vec<MultiPoly> = imgs.iter().map(|t| poly3(t)).collect();
        let s = |f: &MultiPoly| f.substitute(&images).unwrap();
        prop_assert_eq!(s(&(&p * &q)), &s(&p) * &s(&q));
        prop_assert_eq!(s(&(&p + &q)), &s(&p) + &s(&q));
    }

    #[test]
    fn degeneration_is_idempotent(a in terms(), lam in [-3i64..=3, -3i64..=3, -3i64..=3]) {
        let p = poly3(&a);
        prop_assume!(!p.is_zero());
        let w = WeightSystem(lam.to_vec());
        let (l, m) = p.degeneration_limit(&w).unwrap();
        let (ll, mm) = l.degeneration_limit(&w).unwrap();
        prop_assert_eq!(&l, &ll);
        prop_assert_eq!(m, mm);
        for (e, _) in p.terms() {
            prop_assert!(e.dot(&lam) >= m);
        }
    }

    #[test]
    fn resultant_of_split_polynomials(r in prop::collection::vec(-4i64..=4, 1..4), s in prop::collection::vec(-4i64..=4, 1..4)) {
        let ring = Ring::new(&["x", "y"]);
        let x = MultiPoly::var(&ring, 0);
        let lin = |c: i64| &x - &MultiPoly::constant(&ring, FieldElement::from_i64(c));
        let f = r.iter().fold(MultiPoly::one(&ring), |acc, &c| &acc * &lin(c));
        let g = s.iter().fold(MultiPoly::one(&ring), |acc, &c| &acc * &lin(c));
        let expected: i64 = r.iter().flat_map(|a| s.iter().map(move |b| a - b)).product();
        prop_assert_eq!(f.resultant(&g, 0).unwrap(), MultiPoly::constant(&ring, FieldElement::from_i64(expected)));
    }

    #[test]
    fn hj_expansion_reconstructs_the_fraction(n in 2u64..400, a in 1u64..400) {
        let a = a % n;
        prop_assume!(a > 0 && a.gcd(&n) == 1);
        let h = hj_expansion(n, a).unwrap();
        prop_assert!(h.expansion.iter().all(|&b| b >= 2));
        // n/a' = b1 - 1/(b2 - ...), evaluated from the tail
        let (mut p, mut q) = (1i128, 0i128);
        for &b in h.expansion.iter().rev() {
            (p, q) = (b as i128 * p - q, p);
        }
        prop_assert_eq!((p as u64, q as u64), (n, h.a));
        prop_assert!((a * h.a) % n == 1 || h.a == a);
    }

    #[test]
    fn t_decomposition_reproduces_the_weight(n in 2u64..500, a in 1u64..500) {
        let a = a % n;
        prop_assume!(a > 0 && a.gcd(&n) == 1);
        if let Some(t) = is_t_singularity(n, a).unwrap() {
            prop_assert_eq!(t.index(), n);
            if !t.is_du_val() {
                let w = t.weight();
                prop_assert!(w == a || (w * a) % n == 1);
                prop_assert_eq!(t.a.gcd(&t.n), 1);
            } else {
                prop_assert_eq!(a, n - 1);
            }
        }
    }

    #[test]
    fn singularity_names_round_trip(k in 1u32..30, n in 2u64..200, a in 1u64..200) {
        for t in [SingularityType::A(k), SingularityType::D(k + 3)] {
            prop_assert_eq!(SingularityType::parse(&t.to_string()), Some(t));
        }
        if let Some(t) = SingularityType::cyclic(n, a % n) {
            prop_assert_eq!(SingularityType::parse(&t.to_string()), Some(t));
        }
    }

    #[test]
    fn torus_verdicts_are_certified(s in prop::collection::vec(prop::collection::vec(-3i64..=3, 2), 1..7)) {
        let p = TorusPoint::new(vec![FieldElement::one(); s.len()], s.clone()).unwrap();
        let v = torus_stability(&p).unwrap();
        let found = window_search(&s, 6);
        if found {
            prop_assert_eq!(v.class, StabilityClass::Unstable);
        }
        if v.class == StabilityClass::Unstable {
            prop_assert!(v.certificate.unwrap().verify());
        } else {
            prop_assert!(v.certificate.is_none());
        }
    }

    #[test]
    fn quintic_invariants_are_sl2_invariant(c in prop::collection::vec(-6i64..=6, 6), m in [-4i64..=4, -4i64..=4, 1i64..=4]) {
        let q = BinaryForm::from_i64(&c);
        let Some(before) = quintic_invariants(&q).unwrap() else { return Ok(()); };
        // [[a, b], [c, d]] with a = m2, d = (1 + b c) / a
        let (a, b, cc) = (m[2], m[0], m[1]);
        let d = FieldElement::Rat(ratio(1 + b * cc, a));
        let mat = [FieldElement::from_i64(a), FieldElement::from_i64(b), FieldElement::from_i64(cc), d];
        let after = quintic_invariants(&q.transform([&mat[0], &mat[1], &mat[2], &mat[3]])).unwrap();
        prop_assert_eq!(after, Some(before));
    }
}

#[test]
fn torus_engine_on_wider_weights() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let r = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=6);
        let s: Vec<Vec<i64>> = (0..m).map(|_| (0..r).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let v = torus_stability(&TorusPoint::new(vec![FieldElement::one(); m], s.clone()).unwrap()).unwrap();
        let window = if r == 3 { 24 } else { 60 };
        assert_eq!(v.class == StabilityClass::Unstable, window_search(&s, window), "{s:?}");
    }
}

#[test]
fn markov_set_is_closed_and_exact() {
    let sols = markov_solutions(5000);
    for &(a, b, c) in &sols {
        assert_eq!(a * a + b * b + 2 * c * c, 4 * a * b * c);
        for t in [(4 * b * c - a, b, c), (a, 4 * a * c - b, c), (a, b, 2 * a * b - c)] {
            if t.0.max(t.1).max(t.2) <= 5000 {
                assert!(sols.contains(&t), "{t:?} missing");
            }
        }
    }
    assert!(sols.contains(&(1, 1, 1)));
}

#[test]
fn fixtures_round_trip_through_text() {
    for f in FIXTURES {
        let d = f.document();
        let again = parse(&d.to_string()).unwrap_or_else(|e| panic!("{}: {e}\n{d}", f.name));
        assert_eq!(d, again, "{}", f.name);
        assert_eq!(d.to_string(), again.to_string());
    }
}

#[test]
fn serial_and_parallel_catalogs_agree() {
    assert_eq!(verify_all(Exec::Serial), verify_all(Exec::Parallel));
}
