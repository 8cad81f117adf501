use levelcut::family::{random_family, RandomShape};
use levelcut::io::{parse_document, read_body, read_number, write_sampled, Document};
use levelcut::metrics::d_infty_sampled;
use levelcut::FuzzyBody2D;
use proptest::prelude::*;

proptest! {
    #[test]
    fn sampled_json_round_trip(seed in any::<u64>(), levels in 2usize..30) {
        let shape = RandomShape { levels, ..RandomShape::default() };
        let u = random_family::<f64>(seed, 1, &shape).unwrap().remove(0);
        let text = write_sampled(&u);
        let back = read_number::<f64>(&text).unwrap();
        let back = back.as_sampled().unwrap();
        prop_assert_eq!(d_infty_sampled(&u, back), 0.0);
        prop_assert_eq!(back, &u);
        prop_assert_eq!(write_sampled(back), text);
    }

    #[test]
    fn body_json_round_trip(seed in any::<u64>()) {
        let u = random_family::<f64>(seed, 1, &RandomShape::default()).unwrap().remove(0);
        let body = FuzzyBody2D::lift(&u, 36).unwrap();
        let text = serde_json::to_string(&Document::from(&body)).unwrap();
        let back = read_body::<f64>(&text).unwrap();
        prop_assert_eq!(back.bodies(), body.bodies());
        prop_assert_eq!(parse_document::<f64>(&text).unwrap(), Document::from(&body));
    }
}
