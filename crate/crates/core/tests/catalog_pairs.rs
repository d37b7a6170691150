use lieform_core::lie::catalog;
use lieform_core::obstruction::{ConditionId, Options, PairContext, Reason};
use lieform_core::sullivan::PairModel;

#[test]
fn models_agree_with_relative_complexes() {
    for p in catalog::pairs().unwrap() {
        let pm = PairModel::build(&p.g, &p.h).unwrap();
        let cap = pm.default_cap();
        assert_eq!(pm.cohomology_dims(cap).unwrap(), pm.relative_dims(cap).unwrap(), "{}", p.name);
        assert!(pm.chevalley_is_quasi_isomorphism(cap).unwrap(), "{}", p.name);
        assert!(pm.chern_weil_kernel_is_ideal(cap).unwrap(), "{}", p.name);
    }
}

#[test]
fn battery_is_consistent_and_witnesses_verify() {
    for p in catalog::pairs().unwrap() {
        let ctx = PairContext::new(&p).unwrap();
        let a = ctx.analyze(&Options::default()).unwrap();
        let bools = a.conditions.booleans();
        assert_eq!(bools.len(), 5);
        assert!(bools.iter().all(|(_, b)| *b == a.conditions.vii.holds), "{}", p.name);
        assert_eq!(a.verdict.obstructed, !a.conditions.vii.holds);
        if a.verdict.rank_lhs < a.verdict.rank_rhs {
            assert_eq!(a.verdict.reason, Reason::RankCriterion);
        }
        let checks = ctx.verify_witnesses(&a.conditions).unwrap();
        let expected = if a.verdict.obstructed { 5 } else { 0 };
        assert_eq!(checks.len(), expected, "{}", p.name);
        assert!(checks.iter().all(|(_, ok)| *ok), "{}: {checks:?}", p.name);
    }
}

#[test]
fn restricting_the_battery_keeps_vii() {
    let p = catalog::pairs().unwrap().into_iter().find(|p| p.name == "sl3/so11").unwrap();
    let opts = Options {
        conditions: [ConditionId::I].into_iter().collect(),
        cap: None,
    };
    let a = PairContext::new(&p).unwrap().analyze(&opts).unwrap();
    let ids: Vec<ConditionId> = a.conditions.booleans().into_iter().map(|(c, _)| c).collect();
    assert_eq!(ids, [ConditionId::I, ConditionId::Vii]);
    assert_eq!(a.verdict.reason, Reason::NonInjectiveI);
}

#[test]
fn algebra_without_involution_is_rejected() {
    let g = lieform_core::lie::LieAlgebra::abelian("a", 2, "x");
    let p = catalog::Pair::new("a/0", "custom", g, &[]).unwrap();
    let err = PairContext::new(&p).err().unwrap();
    assert_eq!(err.exit_code(), 3);
}
