use crossbi::catalog::{random_bundle, RandomSpec};
use crossbi::conditions::{check_line, registry};
use crossbi::instance::Instance;
use crossbi::Field;
use proptest::prelude::*;

fn spec() -> impl Strategy<Value = RandomSpec> {
    (1usize..=3, 1usize..=3, 1usize..=3, prop_oneof![Just(2u32), Just(3), Just(5)], any::<u64>())
        .prop_map(|(a, h, b, p, seed)| RandomSpec::new([a, h, b], Field::Prime(p), seed, &[]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_bundles_round_trip(s in spec()) {
        let b = random_bundle(&s).unwrap();
        let text = Instance::from_bundle(&b).write();
        let back = Instance::parse(&text).unwrap().to_bundle().unwrap();
        prop_assert_eq!(back, b);
    }

    #[test]
    fn swapping_sides_keeps_the_verdict(s in spec(), k in 0usize..40) {
        let b = random_bundle(&s).unwrap();
        let reg = registry();
        let ids = reg.ids();
        let id = ids[k % ids.len()];
        let line = reg.source_line(id).unwrap();
        let (name, body) = line.split_once(':').unwrap();
        let parts: Vec<&str> = body.split("==").collect();
        prop_assume!(parts.len() == 2);
        let there = check_line(line, &b).unwrap().passed();
        let back = check_line(&format!("{name}: {} == {}", parts[1].trim(), parts[0].trim()), &b);
        // Lines with trailing annotations do not swap cleanly.
        prop_assume!(back.is_ok());
        let back = back.unwrap().passed();
        prop_assert_eq!(there, back, "{}", id);
    }
}
