use avw_core::catalog::{act, module_defect, Label, ModuleSpec, ModuleVector, WeightModule};
use avw_core::scalar::{frac, int, Scalar};
use avw_core::Generator;

fn grid() -> Vec<ModuleSpec> {
    let mut specs = vec![
        ModuleSpec::IntAB { a: frac(1, 2), b: frac(1, 3) },
        ModuleSpec::IntAB { a: int(0), b: int(0) },
        ModuleSpec::IntAB { a: int(0), b: int(1) },
        ModuleSpec::IntA { a: int(3) },
        ModuleSpec::IntB { a: int(0) },
        ModuleSpec::HVirABC { a: int(0), b: int(0), c: int(5) },
        ModuleSpec::T2Mod { a: int(0), b: int(0), c: int(1) },
    ];
    for lambda in 0..=2 {
        for (a, b) in [(int(0), int(0)), (frac(1, 2), frac(1, 3))] {
            specs.push(ModuleSpec::loop_module(lambda, a, b));
        }
    }
    specs
}

fn labels(module: &dyn WeightModule, lo: i64, hi: i64) -> Vec<Label> {
    (lo..=hi).flat_map(|t| module.basis_at(t)).collect()
}

#[test]
fn module_axiom_holds_exhaustively() {
    for spec in grid() {
        let module = spec.module();
        let gens = module.algebra().generators(-4, 4);
        for label in labels(module.as_ref(), -4, 4) {
            let v = ModuleVector::basis(label);
            for x in &gens {
                for y in &gens {
                    let d = module_defect(&spec, x, y, &v).unwrap();
                    assert!(d.is_zero(), "{spec}: defect({x},{y},{label}) = {d}");
                }
            }
        }
    }
}

#[test]
fn generators_shift_weights() {
    for spec in grid() {
        let module = spec.module();
        for label in labels(module.as_ref(), -3, 3) {
            let (d0, _) = module.weight(&label);
            for g in module.algebra().generators(-3, 3) {
                for (img, _) in act(&spec, &g, &ModuleVector::basis(label)).unwrap().iter() {
                    assert_eq!(img.t, label.t + g.degree(), "{spec}: {g} on {label}");
                    assert_eq!(module.weight(img).0, &d0 + int(g.degree()));
                }
            }
        }
    }
}

#[test]
fn loop_weight_spaces_have_dimension_lambda_plus_one() {
    for lambda in 0..=4u32 {
        let spec = ModuleSpec::loop_module(lambda, frac(1, 2), frac(1, 3));
        let module = spec.module();
        for t in -4..=4 {
            assert_eq!(module.basis_at(t).len(), lambda as usize + 1);
            let mut h0: Vec<Scalar> = module.basis_at(t).iter().map(|l| module.weight(l).1).collect();
            h0.sort();
            let expected: Vec<Scalar> = (0..=lambda as i64).map(|k| int(2 * k - lambda as i64)).collect();
            assert_eq!(h0, expected);
        }
    }
}

/// `v_i ↦ v_{i+1}` identifies the `(a + 1, b)` series with the `(a, b)` series.
#[test]
fn shifting_a_by_one_relabels_the_basis() {
    for (a, b) in [(frac(1, 2), frac(1, 3)), (int(0), int(0)), (frac(-2, 7), int(4))] {
        let shifted = ModuleSpec::IntAB { a: &a + int(1), b: b.clone() };
        let base = ModuleSpec::IntAB { a, b };
        for i in -4..=4 {
            for m in -4..=4 {
                let g = Generator::d(m);
                let lhs = act(&shifted, &g, &ModuleVector::basis(Label::v(i))).unwrap();
                let rhs = act(&base, &g, &ModuleVector::basis(Label::v(i + 1))).unwrap();
                assert_eq!(lhs.map_keys(|l| Label::v(l.t + 1)), rhs);
            }
        }
    }
}

#[test]
fn generators_outside_the_algebra_are_rejected() {
    let spec = ModuleSpec::IntAB { a: int(0), b: int(0) };
    assert!(act(&spec, &Generator::e(1), &ModuleVector::basis(Label::v(0))).is_err());
    let t2 = ModuleSpec::T2Mod { a: int(0), b: int(0), c: int(1) };
    assert!(act(&t2, &Generator::f(0), &ModuleVector::basis(Label::v(0))).is_err());
}
