use super::registry::construction;
use super::*;
use crate::catalog::{self, random_bundle, RandomSpec};
use crate::scalar::Field;
use crate::structures::Algebra;
use crate::tensor::render_vector;

fn mul(alg: &Algebra, l: &str, r: &str) -> String {
    let s = &alg.space;
    let i = s.index_of(l).unwrap();
    let j = s.index_of(r).unwrap();
    render_vector(std::slice::from_ref(s), &alg.mult.column(&[i, j]))
}

fn apply(m: &crate::tensor::LinMap, label: &str) -> String {
    let s = &m.domain()[0];
    render_vector(m.codomain(), &m.column(&[s.index_of(label).unwrap()]))
}

fn bundles(n: u64, enforce: &[&str]) -> Vec<crate::bundle::StructureBundle> {
    (0..n)
        .map(|seed| {
            let dims = [1 + (seed % 3) as usize, 1 + (seed / 3 % 3) as usize, 1 + (seed / 9 % 2) as usize];
            random_bundle(&RandomSpec::new(dims, Field::Prime(2), seed, enforce)).unwrap()
        })
        .collect()
}

#[test]
fn lifted_products_match_their_own_formulas() {
    for (i, b) in bundles(20, &[]).iter().enumerate() {
        for (prefix, kinds) in [
            ("left", &lifts::LEFT_KINDS[..]),
            ("right", &lifts::RIGHT_KINDS[..]),
            ("two_sided", &lifts::TWO_SIDED_KINDS[..]),
        ] {
            for k in kinds {
                let name = format!("{prefix}_{k}");
                let lifted_name = if prefix == "two_sided" { registry::two_sided_lifted_name(k) } else { name.clone() };
                let lifted = construction(&lifted_name).unwrap().build_unchecked(b).unwrap();
                let direct = construction(&format!("{name}_direct")).unwrap().build_unchecked(b).unwrap();
                assert_eq!(lifted.algebra().unwrap().mult, direct.algebra().unwrap().mult, "{name} on bundle {i}");
            }
        }
    }
}

#[test]
fn worked_example_products() {
    let e = catalog::kc2_kc4(Field::Rational).unwrap();
    let left = construction("left_crossed_direct").unwrap().build_unchecked(&e.bundle).unwrap();
    assert_eq!(mul(left.algebra().unwrap(), "1|a", "x|1"), "x^3|a");
    let two = construction("two_sided_crossed").unwrap().build(&e.bundle).unwrap();
    assert_eq!(two.carrier.dim(), 32);
    let alg = two.algebra().unwrap();
    assert_eq!(mul(alg, "1|a|1", "1|a|1"), "x|1|x");
    assert_eq!(mul(alg, "1|a|1", "x|1|1"), "x^3|a|1");
    assert_eq!(mul(alg, "1|1|1", "x^2|a|x"), "x^2|a|x");
}

#[test]
fn candidate_antipode_fixes_the_middle_generator() {
    let e = catalog::kc2_kc4(Field::Rational).unwrap();
    let s = construction("two_sided_bialgebra").unwrap().build(&e.bundle).unwrap();
    assert_eq!(apply(s.antipode().unwrap(), "1|a|1"), "1|a|1");
    assert_eq!(apply(s.antipode().unwrap(), "x|1|1"), "x^3|1|1");
}

#[test]
fn missing_tau_is_named() {
    let mut e = catalog::kc2_kc4(Field::Rational).unwrap();
    e.bundle.maps.remove("tau");
    let err = construction("two_sided_crossed").unwrap().build(&e.bundle).unwrap_err();
    assert!(err.to_string().contains("tau"), "{err}");
}

#[test]
fn two_sided_with_trivial_right_factor_is_the_left_product() {
    for seed in 0..20u64 {
        let dims = [1 + (seed % 3) as usize, 1 + (seed / 3 % 3) as usize, 1];
        let b = random_bundle(&RandomSpec::new(dims, Field::Prime(2), seed, &["LB1", "RB1", "tau_trivial"])).unwrap();
        let two = construction("two_sided_crossed").unwrap().build_unchecked(&b).unwrap();
        let left = construction("left_brzezinski").unwrap().build_unchecked(&b).unwrap();
        assert_eq!(
            two.algebra().unwrap().mult.entries(),
            left.algebra().unwrap().mult.entries(),
            "seed {seed}"
        );
    }
}

#[test]
fn smash_product_is_the_untwisted_crossed_product() {
    for (i, b) in bundles(20, &["sigma_trivial", "tau_trivial"]).iter().enumerate() {
        let smash = construction("smash_product2").unwrap().build_unchecked(b).unwrap();
        let crossed = construction("two_sided_crossed").unwrap().build_unchecked(&lifts::two_sided_specialize(b, "crossed").unwrap()).unwrap();
        assert_eq!(smash.algebra().unwrap().mult, crossed.algebra().unwrap().mult, "bundle {i}");
    }
}

#[test]
fn trivial_data_gives_the_tensor_product_bialgebra() {
    let e = catalog::trivial_entry([2, 2, 2], Field::Rational).unwrap();
    let s = construction("double_biproduct").unwrap().build(&e.bundle).unwrap();
    for o in registry::oracles() {
        for r in o.run(&s).unwrap() {
            assert!(r.passed(), "{} {}", o.name(), r.id);
        }
    }
}

#[test]
fn construction_names_are_unique() {
    let mut names: Vec<&str> = registry::constructions().iter().map(|c| c.name()).collect();
    let n = names.len();
    names.sort();
    names.dedup();
    assert_eq!(names.len(), n);
}
