use kantorovich::gen::{self, SizeBudget};
use kantorovich::json::{
    functional_from_json, functional_to_json, map_from_json, map_to_json, measure_from_json, measure_to_json,
    nested_from_json, nested_to_json, space_from_json, space_to_json,
};
use kantorovich::laws;
use kantorovich::metric::{associator, left_unitor, sum_functional};
use kantorovich::monad::{monad_law_check, nested_distance, MonadSample};
use kantorovich::rational::{self, int, Rational};
use kantorovich::structure::delta2;
use kantorovich::transport::distance;
use kantorovich::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const BUDGET: SizeBudget = SizeBudget {
    min_points: 2,
    max_points: 5,
    max_denominator: 24,
    nested_components: 3,
};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn w1(p: &Measure, q: &Measure) -> Rational {
    distance(p, q).unwrap()
}

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 64,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn generated_spaces_are_metrics(seed: u64) {
        let x = gen::space(&mut rng(seed), &BUDGET, "x");
        let n = x.len();
        for i in 0..n {
            prop_assert_eq!(x.d(i, i), &int(0));
            for j in 0..n {
                prop_assert_eq!(x.d(i, j), x.d(j, i));
                if i != j {
                    prop_assert!(x.d(i, j) > &int(0));
                }
                for k in 0..n {
                    prop_assert!(x.d(i, k) <= &(x.d(i, j) + x.d(j, k)));
                }
            }
        }
    }

    #[test]
    fn tensor_distance_is_the_sum(seed: u64) {
        let mut r = rng(seed);
        let x = gen::space(&mut r, &BUDGET, "x");
        let y = gen::space(&mut r, &BUDGET, "y");
        let xy = tensor(&x, &y);
        let m = y.len();
        for a in 0..xy.len() {
            for b in 0..xy.len() {
                prop_assert_eq!(xy.d(a, b), &(x.d(a / m, b / m) + y.d(a % m, b % m)));
            }
        }
    }

    #[test]
    fn structural_maps_are_isometries(seed: u64) {
        let mut r = rng(seed);
        let small = BUDGET.capped(3);
        let x = gen::space(&mut r, &small, "x");
        let y = gen::space(&mut r, &small, "y");
        let z = gen::space(&mut r, &small, "z");
        let b = braiding(&x, &y);
        let back = compose(&b, &braiding(&y, &x)).unwrap();
        let id = identity(&tensor(&x, &y));
        prop_assert_eq!(back.table(), id.table());
        for f in [b, associator(&x, &y, &z), left_unitor(&x)] {
            let (dom, cod) = (f.domain(), f.codomain());
            for i in 0..dom.len() {
                for j in 0..dom.len() {
                    prop_assert_eq!(cod.d(f.apply(i), f.apply(j)), dom.d(i, j));
                }
            }
        }
    }

    #[test]
    fn short_maps_compose_and_tensor(seed: u64) {
        let mut r = rng(seed);
        let x = gen::space(&mut r, &BUDGET, "x");
        let y = gen::space(&mut r, &BUDGET, "y");
        let z = gen::space(&mut r, &BUDGET, "z");
        let f = gen::short_map(&mut r, &x, &y);
        let g = gen::short_map(&mut r, &y, &z);
        prop_assert!(compose(&f, &g).is_ok());
        let fg = tensor_map(&f, &g);
        prop_assert!(ShortMap::new(fg.domain().clone(), fg.codomain().clone(), fg.table().to_vec()).is_ok());
    }

    #[test]
    fn sum_of_short_functionals_is_short(seed: u64) {
        let mut r = rng(seed);
        let x = gen::space(&mut r, &BUDGET, "x");
        let y = gen::space(&mut r, &BUDGET, "y");
        let f = gen::functional(&mut r, &x, BUDGET.max_denominator);
        let g = gen::functional(&mut r, &y, BUDGET.max_denominator);
        let s = sum_functional(&f, &g).unwrap();
        prop_assert!(ShortFunctional::new(s.domain().clone(), s.values().to_vec()).is_ok());
    }

    #[test]
    fn pushforward_is_functorial(seed: u64) {
        let mut r = rng(seed);
        let x = gen::space(&mut r, &BUDGET, "x");
        let y = gen::space(&mut r, &BUDGET, "y");
        let z = gen::space(&mut r, &BUDGET, "z");
        let p = gen::measure(&mut r, &x, BUDGET.max_denominator);
        let f = gen::short_map(&mut r, &x, &y);
        let g = gen::short_map(&mut r, &y, &z);
        let lhs = pushforward(&compose(&f, &g).unwrap(), &p).unwrap();
        let rhs = pushforward(&g, &pushforward(&f, &p).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(pushforward(&identity(&x), &p).unwrap(), p);
    }

    #[test]
    fn integration_is_linear_and_monotone(seed: u64) {
        let mut r = rng(seed);
        let x = gen::space(&mut r, &BUDGET, "x");
        let p = gen::measure(&mut r, &x, BUDGET.max_denominator);
        let q = gen::measure(&mut r, &x, BUDGET.max_denominator);
        let f = gen::functional(&mut r, &x, BUDGET.max_denominator);
        let t = rational::ratio(r_gen(&mut r, 0, 8), 8);
        let mix: Vec<Rational> = p.weights().iter().zip(q.weights()).map(|(a, b)| &t * a + (int(1) - &t) * b).collect();
        let mix = Measure::new(x.clone(), mix).unwrap();
        let lhs = integrate(&f, &mix).unwrap();
        let rhs = &t * integrate(&f, &p).unwrap() + (int(1) - &t) * integrate(&f, &q).unwrap();
        prop_assert_eq!(lhs, rhs);

        let lowest = f.values().iter().min().unwrap().clone();
        let shifted: Vec<Rational> = f.values().iter().map(|v| v - &lowest).collect();
        let g = ShortFunctional::new(x.clone(), shifted).unwrap();
        prop_assert!(integrate(&g, &p).unwrap() >= int(0));
    }

    #[test]
    fn equal_tables_give_equal_integrals(seed: u64) {
        let mut r = rng(seed);
        let x = gen::space(&mut r, &BUDGET, "x");
        let p = gen::measure(&mut r, &x, BUDGET.max_denominator);
        let f = gen::functional(&mut r, &x, BUDGET.max_denominator);
        let g = ShortFunctional::new(x.clone(), f.values().to_vec()).unwrap();
        prop_assert_eq!(integrate(&f, &p).unwrap(), integrate(&g, &p).unwrap());
    }

    #[test]
    fn partial_integral_is_short(seed: u64) {
        let mut r = rng(seed);
        let x = gen::space(&mut r, &BUDGET.capped(4), "x");
        let y = gen::space(&mut r, &BUDGET.capped(4), "y");
        let p = gen::measure(&mut r, &x, BUDGET.max_denominator);
        let f = gen::functional(&mut r, &tensor(&x, &y), BUDGET.max_denominator);
        let h = partial_integral(&f, &p).unwrap();
        prop_assert!(ShortFunctional::new(h.domain().clone(), h.values().to_vec()).is_ok());
        prop_assert_eq!(h.domain(), &y);
    }

    #[test]
    fn duality_holds_on_every_solve(seed: u64) {
        let mut r = rng(seed);
        let x = gen::space(&mut r, &BUDGET, "x");
        let p = gen::measure(&mut r, &x, BUDGET.max_denominator);
        let q = gen::measure(&mut r, &x, BUDGET.max_denominator);
        let t = wasserstein(&p, &q).unwrap();
        t.plan.verify().unwrap();
        prop_assert_eq!(t.plan.cost(), &t.value);
        prop_assert_eq!(t.witness.value(&p, &q).unwrap(), t.value.clone());
        let w = t.witness.potential();
        prop_assert!(ShortFunctional::new(w.domain().clone(), w.values().to_vec()).is_ok());
        // Any short functional is a lower bound.
        let f = gen::functional(&mut r, &x, BUDGET.max_denominator);
        prop_assert!(integrate(&f, &p).unwrap() - integrate(&f, &q).unwrap() <= t.value);
    }

    #[test]
    fn w1_is_a_metric(seed: u64) {
        let mut r = rng(seed);
        let x = gen::space(&mut r, &BUDGET, "x");
        let p = gen::measure(&mut r, &x, BUDGET.max_denominator);
        let q = gen::measure(&mut r, &x, BUDGET.max_denominator);
        let s = gen::measure(&mut r, &x, BUDGET.max_denominator);
        prop_assert_eq!(w1(&p, &q), w1(&q, &p));
        prop_assert_eq!(w1(&p, &p), int(0));
        prop_assert_eq!(w1(&p, &q) == int(0), p == q);
        prop_assert!(w1(&p, &s) <= w1(&p, &q) + w1(&q, &s));
    }

    #[test]
    fn dirac_embedding_is_isometric(seed: u64) {
        let mut r = rng(seed);
        let x = gen::space(&mut r, &BUDGET, "x");
        for i in 0..x.len() {
            for j in 0..x.len() {
                prop_assert_eq!(&w1(&dirac(&x, i).unwrap(), &dirac(&x, j).unwrap()), x.d(i, j));
            }
        }
    }

    #[test]
    fn pushforward_contracts(seed: u64) {
        let mut r = rng(seed);
        let x = gen::space(&mut r, &BUDGET, "x");
        let y = gen::space(&mut r, &BUDGET, "y");
        let f = gen::short_map(&mut r, &x, &y);
        let p = gen::measure(&mut r, &x, BUDGET.max_denominator);
        let q = gen::measure(&mut r, &x, BUDGET.max_denominator);
        prop_assert!(w1(&pushforward(&f, &p).unwrap(), &pushforward(&f, &q).unwrap()) <= w1(&p, &q));
    }

    #[test]
    fn simplex_matches_oracle(seed: u64) {
        let mut r = rng(seed);
        let x = gen::space(&mut r, &BUDGET.capped(6), "x");
        let p = gen::measure_on_support(&mut r, &x, BUDGET.max_denominator, 4);
        let q = gen::measure_on_support(&mut r, &x, BUDGET.max_denominator, 4);
        prop_assert_eq!(wasserstein_oracle(&p, &q).unwrap(), w1(&p, &q));
    }

    #[test]
    fn expectation_is_short_and_natural(seed: u64) {
        let mut r = rng(seed);
        let x = gen::space(&mut r, &BUDGET.capped(4), "x");
        let y = gen::space(&mut r, &BUDGET.capped(4), "y");
        let mu = gen::nested(&mut r, &x, &BUDGET);
        let nu = gen::nested(&mut r, &x, &BUDGET);
        prop_assert!(w1(&expectation(&mu), &expectation(&nu)) <= nested_distance(&mu, &nu).unwrap());
        let f = gen::short_map(&mut r, &x, &y);
        prop_assert_eq!(expectation(&mu.map(&f).unwrap()), pushforward(&f, &expectation(&mu)).unwrap());
    }

    #[test]
    fn monad_laws(seed: u64) {
        let mut r = rng(seed);
        let x = gen::space(&mut r, &BUDGET.capped(4), "x");
        let sample = MonadSample {
            measures: (0..3).map(|_| gen::measure(&mut r, &x, BUDGET.max_denominator)).collect(),
            doubly_nested: (0..2).map(|_| gen::doubly_nested(&mut r, &x, &BUDGET)).collect(),
        };
        let report = monad_law_check(&x, &sample).unwrap();
        prop_assert!(report.passed(), "{:?}", report.failures);
    }

    #[test]
    fn marginals_recover_product_factors(seed: u64) {
        let mut r = rng(seed);
        let x = gen::space(&mut r, &BUDGET, "x");
        let y = gen::space(&mut r, &BUDGET, "y");
        let p = gen::measure(&mut r, &x, BUDGET.max_denominator);
        let q = gen::measure(&mut r, &y, BUDGET.max_denominator);
        let pq = product(&p, &q);
        prop_assert!(is_independent(&pq).unwrap());
        prop_assert_eq!(marginals(&pq).unwrap(), (p, q));
    }

    #[test]
    fn product_is_isometric_and_marginals_short(seed: u64) {
        let mut r = rng(seed);
        let small = BUDGET.capped(4);
        let x = gen::space(&mut r, &small, "x");
        let y = gen::space(&mut r, &small, "y");
        let [p, p2] = [0, 1].map(|_| gen::measure(&mut r, &x, BUDGET.max_denominator));
        let [q, q2] = [0, 1].map(|_| gen::measure(&mut r, &y, BUDGET.max_denominator));
        prop_assert_eq!(w1(&product(&p, &q), &product(&p2, &q2)), w1(&p, &p2) + w1(&q, &q2));

        let xy = tensor(&x, &y);
        let s = gen::measure(&mut r, &xy, BUDGET.max_denominator);
        let t = gen::measure(&mut r, &xy, BUDGET.max_denominator);
        let (sx, sy) = marginals(&s).unwrap();
        let (tx, ty) = marginals(&t).unwrap();
        prop_assert!(w1(&sx, &tx) + w1(&sy, &ty) <= w1(&s, &t));
    }

    #[test]
    fn product_and_marginals_are_natural(seed: u64) {
        let mut r = rng(seed);
        let x = gen::space(&mut r, &BUDGET.capped(4), "x");
        let y = gen::space(&mut r, &BUDGET.capped(4), "y");
        let x2 = gen::space(&mut r, &BUDGET.capped(4), "u");
        let y2 = gen::space(&mut r, &BUDGET.capped(4), "v");
        let f = gen::short_map(&mut r, &x, &x2);
        let g = gen::short_map(&mut r, &y, &y2);
        let p = gen::measure(&mut r, &x, BUDGET.max_denominator);
        let q = gen::measure(&mut r, &y, BUDGET.max_denominator);
        let fg = tensor_map(&f, &g);
        prop_assert_eq!(
            pushforward(&fg, &product(&p, &q)).unwrap(),
            product(&pushforward(&f, &p).unwrap(), &pushforward(&g, &q).unwrap())
        );
        let s = gen::measure(&mut r, &tensor(&x, &y), BUDGET.max_denominator);
        let (sx, sy) = marginals(&s).unwrap();
        prop_assert_eq!(
            marginals(&pushforward(&fg, &s).unwrap()).unwrap(),
            (pushforward(&f, &sx).unwrap(), pushforward(&g, &sy).unwrap())
        );
    }

    #[test]
    fn product_commutes_with_braiding(seed: u64) {
        let mut r = rng(seed);
        let x = gen::space(&mut r, &BUDGET, "x");
        let y = gen::space(&mut r, &BUDGET, "y");
        let p = gen::measure(&mut r, &x, BUDGET.max_denominator);
        let q = gen::measure(&mut r, &y, BUDGET.max_denominator);
        prop_assert_eq!(pushforward(&braiding(&x, &y), &product(&p, &q)).unwrap(), product(&q, &p));
        let s = gen::measure(&mut r, &tensor(&x, &y), BUDGET.max_denominator);
        let (sx, sy) = marginals(&s).unwrap();
        prop_assert_eq!(marginals(&pushforward(&braiding(&x, &y), &s).unwrap()).unwrap(), (sy, sx));
    }

    #[test]
    fn delta2_splits_expectations(seed: u64) {
        let mut r = rng(seed);
        let small = BUDGET.capped(3);
        let x = gen::space(&mut r, &small, "x");
        let y = gen::space(&mut r, &small, "y");
        let mu = gen::nested(&mut r, &tensor(&x, &y), &small);
        let (a, b) = delta2(&mu).unwrap();
        prop_assert_eq!(marginals(&expectation(&mu)).unwrap(), (expectation(&a), expectation(&b)));
    }

    #[test]
    fn convolution_is_associative_with_unit(seed: u64) {
        let mut r = rng(seed);
        let m = gen::monoid(&mut r, &BUDGET);
        let c = m.carrier();
        let [p, q, s] = [0, 1, 2].map(|_| gen::measure(&mut r, c, BUDGET.max_denominator));
        let e = dirac(c, m.unit()).unwrap();
        prop_assert_eq!(convolve(&e, &p, &m).unwrap(), p.clone());
        prop_assert_eq!(convolve(&p, &e, &m).unwrap(), p.clone());
        let left = convolve(&convolve(&p, &q, &m).unwrap(), &s, &m).unwrap();
        let right = convolve(&p, &convolve(&q, &s, &m).unwrap(), &m).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn json_round_trips(seed: u64) {
        let mut r = rng(seed);
        let x = gen::space(&mut r, &BUDGET, "x");
        let y = gen::space(&mut r, &BUDGET, "y");
        let xy = tensor(&x, &y);
        let back = space_from_json(space_to_json(&xy)).unwrap();
        prop_assert_eq!(&back, &xy);
        prop_assert_eq!(back.factors().map(|(a, b)| (a.clone(), b.clone())), Some((x.clone(), y.clone())));
        let p = gen::measure(&mut r, &xy, BUDGET.max_denominator);
        prop_assert_eq!(measure_from_json(measure_to_json(&p)).unwrap(), p);
        let f = gen::short_map(&mut r, &x, &y);
        let f2 = map_from_json(map_to_json(&f)).unwrap();
        prop_assert_eq!(f2.table(), f.table());
        let h = gen::functional(&mut r, &x, BUDGET.max_denominator);
        let h2 = functional_from_json(functional_to_json(&h)).unwrap();
        prop_assert_eq!(h2.values(), h.values());
        let mu = gen::nested(&mut r, &x, &BUDGET);
        let mu2 = nested_from_json(nested_to_json(&mu)).unwrap();
        prop_assert_eq!(mu2.inner(), mu.inner());
        prop_assert_eq!(mu2.weights(), mu.weights());
    }
}

fn r_gen(r: &mut ChaCha8Rng, lo: i64, hi: i64) -> i64 {
    use rand::Rng;
    r.gen_range(lo..=hi)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 4, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn law_reports_are_deterministic(seed: u64) {
        let ids = ["delta_nabla_id", "kantorovich_duality", "convolution_monoid"];
        let a = laws::run_laws(seed, 4, &SizeBudget::default(), &ids).unwrap();
        let b = laws::run_laws(seed, 4, &SizeBudget::default(), &ids).unwrap();
        prop_assert!(a.all_passed);
        prop_assert_eq!(serde_json::to_string(&a.to_json()).unwrap(), serde_json::to_string(&b.to_json()).unwrap());
    }

    #[test]
    fn generated_instances_replay(seed: u64) {
        for id in ["monad_associativity", "bimonoidality_square", "oracle_equivalence"] {
            let instance = laws::instance(id, seed, 1, &SizeBudget::default()).unwrap();
            let verdict = laws::check_law(id, instance).unwrap();
            prop_assert!(verdict.holds, "{id}: {:?}", verdict.failure);
        }
    }
}
