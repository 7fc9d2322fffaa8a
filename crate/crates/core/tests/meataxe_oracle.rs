mod common;

use modlie::meataxe::{chop, composition_factors, ChopResult};

#[test]
fn composition_factor_dims_match_brute_force() {
    let modules = common::f2_modules();
    assert!(modules.len() > 40, "collection unexpectedly small: {}", modules.len());
    for (name, m) in &modules {
        let oracle = common::oracle_factor_dims(m);
        for seed in [1, 2, 99] {
            let mut got: Vec<usize> = composition_factors(m, seed).unwrap().iter().map(|f| f.module.dim()).collect();
            got.sort_unstable();
            assert_eq!(got, oracle, "{name} seed {seed}");
        }
    }
}

#[test]
fn chop_agrees_with_brute_force_irreducibility() {
    for (name, m) in common::f2_modules() {
        let irreducible = common::oracle_factor_dims(&m).len() == 1;
        match chop(&m, 5).unwrap() {
            ChopResult::Irreducible(_) => assert!(irreducible, "{name}: reported irreducible"),
            ChopResult::ProperSubmodule(s) => {
                assert!(!irreducible, "{name}: split an irreducible module");
                assert!(m.is_invariant(&s) && s.dim() > 0 && s.dim() < m.dim());
            }
        }
    }
}
