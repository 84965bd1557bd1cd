use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thermocalc::corpus;
use thermocalc::{
    canonicalize, compare, parse_game, BigEngine, Dyadic64, Engine64, Extended, GameOrdering,
};

fn d(s: &str) -> Dyadic64 {
    s.parse().unwrap()
}

#[test]
fn switch_from_text() {
    let e = Engine64::new();
    let g = parse_game("{2|0}").unwrap();
    assert_eq!(e.temperature(&g).unwrap(), Extended::Finite(d("1")));
    assert_eq!(e.mean_value(&g).unwrap(), d("1"));
    let s = e.stops(&g);
    assert_eq!((s.left, s.right), (d("2"), d("0")));
    assert_eq!(e.cooled(&g, &d("1/2")).unwrap().to_string(), "{3/2|1/2}");
}

#[test]
fn three_stage_game() {
    // the right option {2|-1} keeps its left wall at 2 - t up to 3/2, so
    // the right scaffold is flat at 2 and meets 3 - t at t = 1
    let e = Engine64::new();
    let g = parse_game("{3|{2|-1}}").unwrap();
    let tg = e.thermograph(&g).unwrap();
    assert_eq!(tg.temp, Extended::Finite(d("1")));
    assert_eq!(tg.mast_value, d("2"));
}

#[test]
fn canonical_forms_print_and_parse_back_identically() {
    let mut games = corpus::small_suite();
    games.extend(corpus::deep_sample(150, 3));
    for g in games {
        let c = canonicalize(&g);
        assert_eq!(parse_game(&c.to_string()).unwrap(), c, "{c}");
        assert_eq!(parse_game(&g.to_string()).unwrap(), g, "{g}");
    }
}

#[test]
fn wide_engine_agrees_with_narrow_one() {
    let narrow = Engine64::new();
    let wide = BigEngine::new();
    for g in corpus::random_games(150, 5, 9) {
        let a = serde_json::to_string(&*narrow.thermograph(&g).unwrap()).unwrap();
        let b = serde_json::to_string(&*wide.thermograph(&g).unwrap()).unwrap();
        assert_eq!(a, b, "{g}");
        assert_eq!(
            narrow.integer_decision(&g).unwrap().map(i128::from),
            wide.integer_decision(&g).unwrap().map(|n| i128::try_from(n).unwrap())
        );
    }
}

#[test]
fn sums_of_switches_cool_like_their_parts() {
    let e = Engine64::new();
    let g = parse_game("{2|0} + {1|-1} + {3|{2|-1}}").unwrap();
    for t in ["0", "1/2", "1", "5/4", "2"] {
        let whole = e.cooled(&g, &d(t)).unwrap();
        let parts = ["{2|0}", "{1|-1}", "{3|{2|-1}}"]
            .iter()
            .map(|s| e.cooled(&parse_game(s).unwrap(), &d(t)).unwrap())
            .reduce(|a, b| a.add(&b))
            .unwrap();
        assert_eq!(compare(&whole, &parts), GameOrdering::Equal, "t = {t}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_games_round_trip_through_text(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = corpus::random_game(&mut rng, 6);
        prop_assert_eq!(parse_game(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn thermograph_json_round_trips(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = corpus::random_game(&mut rng, 5);
        let tg = Engine64::new().thermograph(&g).unwrap();
        let text = serde_json::to_string(&*tg).unwrap();
        let back: thermocalc::Thermograph64 = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, (*tg).clone());
    }

    #[test]
    fn temperature_of_a_sum_is_bounded(a in any::<u64>(), b in any::<u64>()) {
        let e = Engine64::new();
        let g = corpus::random_game(&mut ChaCha8Rng::seed_from_u64(a), 4);
        let h = corpus::random_game(&mut ChaCha8Rng::seed_from_u64(b), 4);
        let bound = e.temperature(&g).unwrap().max(e.temperature(&h).unwrap());
        prop_assert!(e.temperature(&g.add(&h)).unwrap() <= bound);
    }
}
