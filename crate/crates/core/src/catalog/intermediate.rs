//! Virasoro modules of the intermediate series: `𝓐_{a,b}`, `𝓐(a)`, `𝓑(a)`.

use std::collections::BTreeMap;

use super::text::{require, SpecParseError};
use super::{
    intermediate_simplicity, intermediate_structure, Label, ModuleFamily, ModuleSpec, ModuleVector,
    Simplicity, Structure, WeightModule,
};
use crate::algebra::{AlgebraSpec, Family, Generator};
use crate::scalar::{fmt_scalar, int, Scalar};

fn v_name(t: i64) -> String {
    format!("v{t}")
}

/// Shared shape of the three rank-one Virasoro series: `d_m v_i = coeff(m, i) v_{m+i}`.
trait RankOneVirasoro {
    fn d_coeff(&self, m: i64, i: i64) -> Scalar;

    fn act_rank_one(&self, g: &Generator, label: &Label) -> ModuleVector {
        match g.family() {
            Family::D => {
                let m = g.degree();
                ModuleVector::term(Label::v(label.t + m), self.d_coeff(m, label.t))
            }
            _ => ModuleVector::zero(),
        }
    }
}

pub struct IntAB {
    a: Scalar,
    b: Scalar,
}

impl RankOneVirasoro for IntAB {
    fn d_coeff(&self, m: i64, i: i64) -> Scalar {
        &self.a + int(i) + &self.b * int(m)
    }
}

impl WeightModule for IntAB {
    fn name(&self) -> String {
        ModuleSpec::IntAB { a: self.a.clone(), b: self.b.clone() }.to_string()
    }

    fn algebra(&self) -> AlgebraSpec {
        AlgebraSpec::Vir
    }

    fn fiber_dim(&self) -> usize {
        1
    }

    fn label_name(&self, label: &Label) -> String {
        v_name(label.t)
    }

    fn act_basis(&self, g: &Generator, label: &Label) -> ModuleVector {
        self.act_rank_one(g, label)
    }

    fn simplicity(&self) -> Simplicity {
        intermediate_simplicity(&self.a, &self.b)
            .unwrap_or_else(|| Simplicity::no("a ∈ ℤ and b ∈ {0, 1}"))
    }

    fn structure(&self) -> Structure {
        if self.simplicity().simple {
            Structure::Simple
        } else {
            intermediate_structure(&self.a, &self.b, v_name)
        }
    }
}

pub struct IntA {
    a: Scalar,
}

impl RankOneVirasoro for IntA {
    fn d_coeff(&self, m: i64, i: i64) -> Scalar {
        if i != 0 {
            int(i + m)
        } else {
            int(m) * (int(m) + &self.a)
        }
    }
}

impl WeightModule for IntA {
    fn name(&self) -> String {
        format!("A2:a={}", fmt_scalar(&self.a))
    }

    fn algebra(&self) -> AlgebraSpec {
        AlgebraSpec::Vir
    }

    fn fiber_dim(&self) -> usize {
        1
    }

    fn label_name(&self, label: &Label) -> String {
        v_name(label.t)
    }

    fn act_basis(&self, g: &Generator, label: &Label) -> ModuleVector {
        self.act_rank_one(g, label)
    }

    fn simplicity(&self) -> Simplicity {
        Simplicity::no("ℂv0 is a quotient of A(a)")
    }

    fn structure(&self) -> Structure {
        Structure::TrivialQuotient { line: v_name(0), submodule: "A'_{0,0}".into() }
    }
}

pub struct IntB {
    a: Scalar,
}

impl RankOneVirasoro for IntB {
    fn d_coeff(&self, m: i64, i: i64) -> Scalar {
        if i != -m {
            int(i)
        } else {
            -int(m) * (int(m) + &self.a)
        }
    }
}

impl WeightModule for IntB {
    fn name(&self) -> String {
        format!("B:a={}", fmt_scalar(&self.a))
    }

    fn algebra(&self) -> AlgebraSpec {
        AlgebraSpec::Vir
    }

    fn fiber_dim(&self) -> usize {
        1
    }

    fn label_name(&self, label: &Label) -> String {
        v_name(label.t)
    }

    fn act_basis(&self, g: &Generator, label: &Label) -> ModuleVector {
        self.act_rank_one(g, label)
    }

    fn simplicity(&self) -> Simplicity {
        Simplicity::no("ℂv0 is a submodule of B(a)")
    }

    fn structure(&self) -> Structure {
        Structure::TrivialSubmodule { line: v_name(0), quotient: "A'_{0,0}".into() }
    }
}

pub struct IntABFamily;
pub struct IntAFamily;
pub struct IntBFamily;

impl ModuleFamily for IntABFamily {
    fn kind(&self) -> &'static str {
        "A"
    }

    fn parameters(&self) -> &'static [&'static str] {
        &["a", "b"]
    }

    fn from_params(&self, params: &BTreeMap<String, Scalar>) -> Result<ModuleSpec, SpecParseError> {
        Ok(ModuleSpec::IntAB { a: require(params, "a")?, b: require(params, "b")? })
    }

    fn instantiate(&self, spec: &ModuleSpec) -> Box<dyn WeightModule> {
        match spec {
            ModuleSpec::IntAB { a, b } => Box::new(IntAB { a: a.clone(), b: b.clone() }),
            other => panic!("family A cannot instantiate {other}"),
        }
    }
}

impl ModuleFamily for IntAFamily {
    fn kind(&self) -> &'static str {
        "A2"
    }

    fn parameters(&self) -> &'static [&'static str] {
        &["a"]
    }

    fn from_params(&self, params: &BTreeMap<String, Scalar>) -> Result<ModuleSpec, SpecParseError> {
        Ok(ModuleSpec::IntA { a: require(params, "a")? })
    }

    fn instantiate(&self, spec: &ModuleSpec) -> Box<dyn WeightModule> {
        match spec {
            ModuleSpec::IntA { a } => Box::new(IntA { a: a.clone() }),
            other => panic!("family A2 cannot instantiate {other}"),
        }
    }
}

impl ModuleFamily for IntBFamily {
    fn kind(&self) -> &'static str {
        "B"
    }

    fn parameters(&self) -> &'static [&'static str] {
        &["a"]
    }

    fn from_params(&self, params: &BTreeMap<String, Scalar>) -> Result<ModuleSpec, SpecParseError> {
        Ok(ModuleSpec::IntB { a: require(params, "a")? })
    }

    fn instantiate(&self, spec: &ModuleSpec) -> Box<dyn WeightModule> {
        match spec {
            ModuleSpec::IntB { a } => Box::new(IntB { a: a.clone() }),
            other => panic!("family B cannot instantiate {other}"),
        }
    }
}
