mod common;

use std::collections::BTreeMap;

use common::poly;
use logpoisson::poly::Poly;
use logpoisson::problem::{parse_spec, ProblemSpec};
use proptest::prelude::*;

fn spec() -> impl Strategy<Value = ProblemSpec> {
    let names = prop::sample::subsequence(vec!["a", "b", "c", "u", "v2", "w_1"], 3).prop_shuffle();
    (
        names,
        prop::collection::vec(poly(3, 2, 3), 3),
        prop::collection::vec((0usize..3, 1u32..=3), 0..=3),
        0u32..=9,
        prop::option::of(0u32..=5),
    )
        .prop_map(|(names, values, gens, max_degree, buffer)| {
            let bracket: BTreeMap<(usize, usize), Poly> = [(0, 1), (0, 2), (1, 2)].into_iter().zip(values).collect();
            let mut seen = Vec::new();
            let log_generators = gens
                .into_iter()
                .filter(|(j, _)| {
                    let fresh = !seen.contains(j);
                    seen.push(*j);
                    fresh
                })
                .map(|(j, m)| {
                    let mut e = vec![0; 3];
                    e[j] = m;
                    Poly::term(logpoisson::poly::Monomial::new(e), logpoisson::poly::integer(2))
                })
                .collect();
            ProblemSpec {
                variables: names.into_iter().map(String::from).collect(),
                bracket,
                log_generators,
                max_degree,
                buffer,
            }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn serialize_then_parse_is_identity(s in spec()) {
        let text = s.to_json().to_string();
        let back = parse_spec(&text).unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(back.to_json().to_string(), text);
    }
}
