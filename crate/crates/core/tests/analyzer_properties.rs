use std::collections::BTreeSet;

use avw_core::analyzer::{from_catalog, from_verma, Direction, WitnessVerdict};
use avw_core::catalog::{is_simple, ModuleSpec};
use avw_core::linalg::Matrix;
use avw_core::scalar::{frac, int, Scalar};
use avw_core::verma::{build_verma, HighestWeightData, VermaConfig};

fn catalog_instances() -> Vec<ModuleSpec> {
    let mut specs = vec![
        ModuleSpec::IntAB { a: frac(1, 2), b: frac(1, 3) },
        ModuleSpec::IntAB { a: int(0), b: int(0) },
        ModuleSpec::IntAB { a: int(0), b: int(1) },
        ModuleSpec::IntA { a: int(3) },
        ModuleSpec::IntB { a: int(0) },
        ModuleSpec::IntB { a: frac(1, 2) },
        ModuleSpec::HVirABC { a: int(0), b: int(0), c: int(5) },
        ModuleSpec::HVirABC { a: int(0), b: int(0), c: int(0) },
        ModuleSpec::T2Mod { a: int(0), b: int(0), c: int(1) },
    ];
    for lambda in 0..=2 {
        for (a, b) in [(int(0), int(0)), (frac(1, 2), frac(1, 3)), (int(1), int(1))] {
            specs.push(ModuleSpec::loop_module(lambda, a, b));
        }
    }
    specs
}

#[test]
fn simple_loop_modules_satisfy_the_injectivity_contract() {
    for lambda in 0..=2 {
        for (a, b) in [(frac(1, 2), frac(1, 3)), (frac(1, 4), int(0)), (int(0), frac(2, 3))] {
            let spec = ModuleSpec::loop_module(lambda, a, b);
            if !is_simple(&spec).simple {
                continue;
            }
            let w = from_catalog(&spec, (-4, 4));
            for i in [1, 2] {
                for k in -4..=(4 - i - 1) {
                    let r = w.eq41_injectivity(k, i).unwrap();
                    assert_eq!(r.kernel_dim, 0, "{spec} k={k} i={i}");
                    assert_eq!(r.kernel_dim, r.dim_vk - r.stacked.rank());
                }
            }
        }
    }
}

#[test]
fn catalog_data_is_bracket_consistent() {
    for spec in catalog_instances() {
        assert!(from_catalog(&spec, (-3, 3)).bracket_consistency(3).is_empty(), "{spec}");
    }
}

#[test]
fn support_lies_in_one_coset() {
    for spec in catalog_instances() {
        let w = from_catalog(&spec, (-4, 4));
        let d0: BTreeSet<Scalar> = w.support().into_iter().map(|(d, _)| d).collect();
        let first = d0.iter().next().unwrap().clone();
        assert!(d0.iter().all(|d| (d - &first).is_integer()), "{spec}");
    }
}

/// Every instance either matches the catalog or exhibits reducibility evidence.
#[test]
fn trichotomy() {
    for spec in catalog_instances() {
        let w = from_catalog(&spec, (-3, 3));
        let matched = w.catalog_match().unwrap().spec.is_some();
        let report = w.submodule_witness();
        let extremal = !w.find_extremal_vectors(Direction::Highest).unwrap().is_empty()
            || !w.find_extremal_vectors(Direction::Lowest).unwrap().is_empty();
        let evidence = report.verdict != WitnessVerdict::NoWitness || extremal;
        assert!(matched || evidence, "{spec}: NoMatch and no witness");
        if is_simple(&spec).simple {
            assert!(matched, "{spec} is simple but unmatched");
            assert_eq!(report.verdict, WitnessVerdict::NoWitness, "{spec}");
        }
    }
}

#[test]
fn scrambled_data_round_trips() {
    for lambda in 0..=2 {
        for (a, b) in [(int(0), int(0)), (frac(1, 2), frac(1, 3))] {
            let spec = ModuleSpec::loop_module(lambda, a, b);
            let data = from_catalog(&spec, (-3, 3)).scramble(u64::from(lambda) + 17);
            assert!(data.bracket_consistency(2).is_empty());
            assert_eq!(data.catalog_match().unwrap().spec, Some(spec));
        }
    }
}

fn same_span(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> bool {
    if a.is_empty() || b.is_empty() {
        return a.is_empty() && b.is_empty();
    }
    let ra = Matrix::from_rows(a.to_vec()).rank();
    let rb = Matrix::from_rows(b.to_vec()).rank();
    let both = Matrix::from_rows(a.iter().chain(b).cloned().collect()).rank();
    ra == rb && rb == both
}

#[test]
fn verma_extremal_vectors_are_the_singular_vectors() {
    for mu in [int(2), frac(1, 3), int(0)] {
        let m = build_verma(HighestWeightData::new(frac(1, 2), mu.clone(), frac(1, 3)), &VermaConfig::new(4)).unwrap();
        let w = from_verma(&m);
        let extremal = w.find_extremal_vectors(Direction::Highest).unwrap();
        let singular = m.find_singular_vectors(2).unwrap();
        for n in 0..=2 {
            let k = -n;
            let from_window: Vec<Vec<Scalar>> =
                extremal.iter().filter(|v| v.offset == k).map(|v| v.coefficients.clone()).collect();
            // embed slice coordinates into the concatenated basis of offset k
            let names = &w.slice(k).unwrap().names;
            let from_lab: Vec<Vec<Scalar>> = singular
                .iter()
                .filter(|v| v.depth == n)
                .map(|v| {
                    let mut full = vec![int(0); names.len()];
                    for (mono, c) in v.vector.iter() {
                        let j = names.iter().position(|x| *x == mono.to_string()).unwrap();
                        full[j] = c.clone();
                    }
                    full
                })
                .collect();
            assert!(same_span(&from_window, &from_lab), "mu={mu} depth {n}");
        }
    }
}

#[test]
fn verma_top_offset_is_the_degenerate_direction() {
    let m = build_verma(HighestWeightData::new(frac(1, 2), int(2), frac(1, 3)), &VermaConfig::new(3)).unwrap();
    let w = from_verma(&m);
    for i in [1, 2] {
        let r = w.eq41_injectivity(0, i).unwrap();
        assert_eq!(r.kernel_dim, r.dim_vk);
    }
}

#[test]
fn witnesses_on_the_intermediate_series() {
    for spec in [
        ModuleSpec::IntAB { a: int(0), b: int(0) },
        ModuleSpec::IntB { a: int(0) },
        ModuleSpec::IntB { a: frac(1, 2) },
        ModuleSpec::IntB { a: int(-3) },
    ] {
        let r = from_catalog(&spec, (-3, 3)).submodule_witness();
        let found: Vec<&str> = r.witnesses.iter().map(|w| w.vector.as_str()).collect();
        assert_eq!(found, ["1·v0"], "{spec}");
    }
    let r = from_catalog(&ModuleSpec::IntA { a: int(3) }, (-3, 3)).submodule_witness();
    assert_eq!(r.verdict, WitnessVerdict::BoundaryInconclusive);
}
