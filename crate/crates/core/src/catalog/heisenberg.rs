//! Intermediate-series modules `𝓐_{a,b,c}` over 𝓓 (`h_n` playing `Y_n`) and over 𝓣₂.
//!
//! Both share `d_m v_i = (a + i + bm) v_{m+i}` and `h_n v_i = c v_{n+i}`; over 𝓣₂
//! the `e_n` act as 0. [`NonTrivialEAction`] replaces that with `e_n v_i = v_{n+i}`
//! and is not a module: it witnesses that `e` must act trivially.

use std::collections::BTreeMap;

use super::text::{require, SpecParseError};
use super::{
    intermediate_simplicity, intermediate_structure, Label, ModuleFamily, ModuleSpec, ModuleVector,
    Simplicity, Structure, WeightModule,
};
use crate::algebra::{AlgebraSpec, Family, Generator};
use crate::scalar::{fmt_scalar, int, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EAction {
    Zero,
    Shift,
}

struct ThreeParameter {
    algebra: AlgebraSpec,
    e_action: EAction,
    a: Scalar,
    b: Scalar,
    c: Scalar,
}

impl ThreeParameter {
    fn spec(&self) -> Option<ModuleSpec> {
        let (a, b, c) = (self.a.clone(), self.b.clone(), self.c.clone());
        match (self.algebra, self.e_action) {
            (AlgebraSpec::D, _) => Some(ModuleSpec::HVirABC { a, b, c }),
            (AlgebraSpec::T2, EAction::Zero) => Some(ModuleSpec::T2Mod { a, b, c }),
            _ => None,
        }
    }
}

impl WeightModule for ThreeParameter {
    fn name(&self) -> String {
        match self.spec() {
            Some(spec) => spec.to_string(),
            None => format!(
                "T2-with-e-shift:a={},b={},c={}",
                fmt_scalar(&self.a),
                fmt_scalar(&self.b),
                fmt_scalar(&self.c)
            ),
        }
    }

    fn algebra(&self) -> AlgebraSpec {
        self.algebra
    }

    fn fiber_dim(&self) -> usize {
        1
    }

    fn label_name(&self, label: &Label) -> String {
        format!("v{}", label.t)
    }

    fn act_basis(&self, g: &Generator, label: &Label) -> ModuleVector {
        let (m, i) = (g.degree(), label.t);
        let target = Label::v(i + m);
        match g.family() {
            Family::D => ModuleVector::term(target, &self.a + int(i) + &self.b * int(m)),
            Family::H => ModuleVector::term(target, self.c.clone()),
            Family::E if self.e_action == EAction::Shift => ModuleVector::basis(target),
            _ => ModuleVector::zero(),
        }
    }

    fn simplicity(&self) -> Simplicity {
        if self.e_action == EAction::Shift {
            return Simplicity::no("not a module: e must act trivially");
        }
        if let Some(s) = intermediate_simplicity(&self.a, &self.b) {
            return s;
        }
        if self.c != int(0) {
            return Simplicity::yes(format!("c = {} ≠ 0", fmt_scalar(&self.c)));
        }
        Simplicity::no("a ∈ ℤ, b ∈ {0, 1} and c = 0")
    }

    fn structure(&self) -> Structure {
        if self.simplicity().simple || self.e_action == EAction::Shift {
            return Structure::Simple;
        }
        intermediate_structure(&self.a, &self.b, |t| format!("v{t}"))
    }
}

/// The 𝓣₂ action with `e_n v_i = v_{n+i}`, violating the module axiom whenever `c ≠ 0`.
pub struct NonTrivialEAction;

impl NonTrivialEAction {
    pub fn new(a: Scalar, b: Scalar, c: Scalar) -> Box<dyn WeightModule> {
        Box::new(ThreeParameter { algebra: AlgebraSpec::T2, e_action: EAction::Shift, a, b, c })
    }
}

pub struct HeisenbergFamily;
pub struct T2Family;

fn abc(params: &BTreeMap<String, Scalar>) -> Result<(Scalar, Scalar, Scalar), SpecParseError> {
    Ok((require(params, "a")?, require(params, "b")?, require(params, "c")?))
}

impl ModuleFamily for HeisenbergFamily {
    fn kind(&self) -> &'static str {
        "H"
    }

    fn parameters(&self) -> &'static [&'static str] {
        &["a", "b", "c"]
    }

    fn from_params(&self, params: &BTreeMap<String, Scalar>) -> Result<ModuleSpec, SpecParseError> {
        let (a, b, c) = abc(params)?;
        Ok(ModuleSpec::HVirABC { a, b, c })
    }

    fn instantiate(&self, spec: &ModuleSpec) -> Box<dyn WeightModule> {
        match spec {
            ModuleSpec::HVirABC { a, b, c } => Box::new(ThreeParameter {
                algebra: AlgebraSpec::D,
                e_action: EAction::Zero,
                a: a.clone(),
                b: b.clone(),
                c: c.clone(),
            }),
            other => panic!("family H cannot instantiate {other}"),
        }
    }
}

impl ModuleFamily for T2Family {
    fn kind(&self) -> &'static str {
        "T2"
    }

    fn parameters(&self) -> &'static [&'static str] {
        &["a", "b", "c"]
    }

    fn from_params(&self, params: &BTreeMap<String, Scalar>) -> Result<ModuleSpec, SpecParseError> {
        let (a, b, c) = abc(params)?;
        Ok(ModuleSpec::T2Mod { a, b, c })
    }

    fn instantiate(&self, spec: &ModuleSpec) -> Box<dyn WeightModule> {
        match spec {
            ModuleSpec::T2Mod { a, b, c } => Box::new(ThreeParameter {
                algebra: AlgebraSpec::T2,
                e_action: EAction::Zero,
                a: a.clone(),
                b: b.clone(),
                c: c.clone(),
            }),
            other => panic!("family T2 cannot instantiate {other}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{act, is_simple, module_defect_on, structure_report};
    use crate::scalar::frac;

    fn v(t: i64) -> ModuleVector {
        ModuleVector::basis(Label::v(t))
    }

    #[test]
    fn e_acts_trivially() {
        let t2 = ModuleSpec::T2Mod { a: frac(1, 2), b: frac(1, 3), c: int(5) };
        assert!(act(&t2, &Generator::e(3), &v(2)).unwrap().is_zero());
        assert_eq!(act(&t2, &Generator::h(3), &v(2)).unwrap(), v(5).scaled(&int(5)));
    }

    #[test]
    fn shifted_e_breaks_the_axiom() {
        let bad = NonTrivialEAction::new(int(0), int(0), int(1));
        let defect = module_defect_on(bad.as_ref(), &Generator::h(1), &Generator::e(1), &v(0)).unwrap();
        assert_eq!(defect, v(2).scaled(&int(2)));
    }

    #[test]
    fn simplicity_with_c() {
        assert!(is_simple(&ModuleSpec::HVirABC { a: int(0), b: int(0), c: int(5) }).simple);
        assert!(!is_simple(&ModuleSpec::HVirABC { a: int(0), b: int(0), c: int(0) }).simple);
        assert!(!is_simple(&ModuleSpec::T2Mod { a: int(1), b: int(1), c: int(0) }).simple);
        assert_eq!(
            structure_report(&ModuleSpec::HVirABC { a: int(0), b: int(0), c: int(0) }),
            Structure::TrivialSubmodule { line: "v0".into(), quotient: "A'_{0,0}".into() }
        );
    }
}
