//! Loop modules `M(λ) ⊗ ℂ[t, t⁻¹]` over the full algebra:
//! `d_m(u ⊗ tⁱ) = (a + bm + i) u ⊗ t^{m+i}` and `x_m(u ⊗ tⁱ) = (x·u) ⊗ t^{m+i}`.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::sl2::Sl2Irrep;
use super::text::{require, SpecParseError};
use super::{
    intermediate_simplicity, intermediate_structure, Label, ModuleFamily, ModuleSpec, ModuleVector,
    Simplicity, Structure, WeightModule,
};
use crate::algebra::{AlgebraSpec, Family, Generator};
use crate::scalar::{int, is_integer, Scalar};

pub struct LoopModule {
    lambda: u32,
    a: Scalar,
    b: Scalar,
}

impl WeightModule for LoopModule {
    fn name(&self) -> String {
        ModuleSpec::LoopMod { lambda: self.lambda, a: self.a.clone(), b: self.b.clone() }.to_string()
    }

    fn algebra(&self) -> AlgebraSpec {
        AlgebraSpec::L
    }

    fn fiber_dim(&self) -> usize {
        self.lambda as usize + 1
    }

    fn act_basis(&self, g: &Generator, label: &Label) -> ModuleVector {
        let m = g.degree();
        match g.family() {
            Family::C => ModuleVector::zero(),
            Family::D => {
                let coeff = &self.a + &self.b * int(m) + int(label.t);
                ModuleVector::term(Label::u(label.k, label.t + m), coeff)
            }
            x => match Sl2Irrep::act(self.lambda, x, label.k) {
                Some((c, k)) => ModuleVector::term(Label::u(k, label.t + m), c),
                None => ModuleVector::zero(),
            },
        }
    }

    fn simplicity(&self) -> Simplicity {
        if self.lambda > 0 {
            return Simplicity::yes(format!("M({}) is a nontrivial sl2-module", self.lambda));
        }
        intermediate_simplicity(&self.a, &self.b)
            .unwrap_or_else(|| Simplicity::no("M(0) trivial, a ∈ ℤ and b ∈ {0, 1}"))
    }

    fn structure(&self) -> Structure {
        if self.simplicity().simple {
            return Structure::Simple;
        }
        debug_assert!(is_integer(&self.a) && self.lambda.is_zero());
        intermediate_structure(&self.a, &self.b, |t| Label::u(0, t).to_string())
    }
}

pub struct LoopFamily;

impl ModuleFamily for LoopFamily {
    fn kind(&self) -> &'static str {
        "loop"
    }

    fn parameters(&self) -> &'static [&'static str] {
        &["lambda", "a", "b"]
    }

    fn from_params(&self, params: &BTreeMap<String, Scalar>) -> Result<ModuleSpec, SpecParseError> {
        let lambda = require(params, "lambda")?;
        let lambda = if is_integer(&lambda) { u32::try_from(lambda.to_integer()).ok() } else { None }
            .ok_or_else(|| SpecParseError::BadHighestWeight(lambda.to_string()))?;
        Ok(ModuleSpec::LoopMod { lambda, a: require(params, "a")?, b: require(params, "b")? })
    }

    fn instantiate(&self, spec: &ModuleSpec) -> Box<dyn WeightModule> {
        match spec {
            ModuleSpec::LoopMod { lambda, a, b } => {
                Box::new(LoopModule { lambda: *lambda, a: a.clone(), b: b.clone() })
            }
            other => panic!("family loop cannot instantiate {other}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{act, is_simple, module_defect};
    use crate::scalar::frac;

    fn u(k: u32, t: i64) -> ModuleVector {
        ModuleVector::basis(Label::u(k, t))
    }

    #[test]
    fn action_examples() {
        let l = ModuleSpec::loop_module(1, frac(1, 2), frac(1, 3));
        assert_eq!(act(&l, &Generator::e(2), &u(1, 0)).unwrap(), u(0, 2));
        let z = ModuleSpec::loop_module(1, int(0), int(0));
        assert!(act(&z, &Generator::d(3), &u(0, 0)).unwrap().is_zero());
        assert_eq!(act(&l, &Generator::h(-1), &u(1, 2)).unwrap(), u(1, 1).scaled(&int(-1)));
        assert_eq!(act(&l, &Generator::f(0), &u(0, 2)).unwrap(), u(1, 2));
        assert!(act(&l, &Generator::f(0), &u(1, 2)).unwrap().is_zero());
    }

    #[test]
    fn central_term_cancels() {
        let l = ModuleSpec::loop_module(2, frac(1, 4), frac(1, 5));
        for k in 0..=2 {
            for t in -2..=2 {
                let defect = module_defect(&l, &Generator::e(1), &Generator::f(-1), &u(k, t)).unwrap();
                assert!(defect.is_zero(), "k={k} t={t}: {defect}");
            }
        }
    }

    #[test]
    fn simplicity_remark() {
        assert!(!is_simple(&ModuleSpec::loop_module(0, int(0), int(0))).simple);
        assert!(!is_simple(&ModuleSpec::loop_module(0, int(3), int(1))).simple);
        assert!(is_simple(&ModuleSpec::loop_module(1, int(0), int(0))).simple);
        assert!(is_simple(&ModuleSpec::loop_module(0, frac(1, 2), frac(1, 3))).simple);
        assert!(is_simple(&ModuleSpec::loop_module(0, int(0), frac(1, 3))).simple);
    }
}
