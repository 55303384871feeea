//! Explicitly presented weight modules and their generator actions.
//!
//! Every family is a [`ModuleFamily`] registered under the kind name used by
//! the text form of [`ModuleSpec`] (`A`, `A2`, `B`, `H`, `T2`, `loop`). A
//! family turns a parameter map into a spec, and a spec into a
//! [`WeightModule`] trait object that evaluates actions on basis labels.
//! `C` acts as 0 on every catalog module.

mod heisenberg;
mod intermediate;
mod loop_module;
mod sl2;
mod text;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{bracket_basis, AlgebraSpec, Generator};
use crate::scalar::{fmt_scalar, is_integer, reduce_mod_one, Combination, Scalar};

pub use heisenberg::{HeisenbergFamily, NonTrivialEAction, T2Family};
pub use intermediate::{IntAFamily, IntABFamily, IntBFamily};
pub use loop_module::LoopFamily;
pub use sl2::{sl2_irrep, Sl2Irrep};
pub use text::{parse_spec, SpecParseError};

/// Basis label: `v_t` for rank-one series (`k = 0`), `u_k ⊗ t^t` for loop modules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Label {
    pub k: u32,
    pub t: i64,
}

impl Label {
    pub fn v(t: i64) -> Self {
        Self { k: 0, t }
    }

    pub fn u(k: u32, t: i64) -> Self {
        Self { k, t }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u{}⊗t^{}", self.k, self.t)
    }
}

pub type ModuleVector = Combination<Label>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ModuleSpec {
    /// `d_m v_i = (a + i + b m) v_{m+i}`
    IntAB { a: Scalar, b: Scalar },
    /// `d_m v_i = (i + m) v_{m+i}` for `i ≠ 0`, `d_m v_0 = m(m + a) v_m`
    IntA { a: Scalar },
    /// `d_m v_i = i v_{m+i}` for `i ≠ -m`, `d_m v_{-m} = -m(m + a) v_0`
    IntB { a: Scalar },
    /// `𝓐_{a,b}` over 𝓓 with `h_n v_i = c v_{n+i}`
    HVirABC { a: Scalar, b: Scalar, c: Scalar },
    /// `𝓐_{a,b,c}` over 𝓣₂ with `e_n` acting as 0
    T2Mod { a: Scalar, b: Scalar, c: Scalar },
    /// `M(λ) ⊗ ℂ[t, t⁻¹]`
    LoopMod { lambda: u32, a: Scalar, b: Scalar },
}

impl ModuleSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            ModuleSpec::IntAB { .. } => "A",
            ModuleSpec::IntA { .. } => "A2",
            ModuleSpec::IntB { .. } => "B",
            ModuleSpec::HVirABC { .. } => "H",
            ModuleSpec::T2Mod { .. } => "T2",
            ModuleSpec::LoopMod { .. } => "loop",
        }
    }

    /// Named parameters in canonical order.
    pub fn params(&self) -> Vec<(&'static str, Scalar)> {
        match self {
            ModuleSpec::IntAB { a, b } => vec![("a", a.clone()), ("b", b.clone())],
            ModuleSpec::IntA { a } | ModuleSpec::IntB { a } => vec![("a", a.clone())],
            ModuleSpec::HVirABC { a, b, c } | ModuleSpec::T2Mod { a, b, c } => {
                vec![("a", a.clone()), ("b", b.clone()), ("c", c.clone())]
            }
            ModuleSpec::LoopMod { lambda, a, b } => vec![
                ("lambda", Scalar::from_integer((*lambda).into())),
                ("a", a.clone()),
                ("b", b.clone()),
            ],
        }
    }

    pub fn module(&self) -> Box<dyn WeightModule> {
        registry()
            .family(self.kind())
            .expect("every spec kind is registered")
            .instantiate(self)
    }

    pub fn loop_module(lambda: u32, a: Scalar, b: Scalar) -> Self {
        ModuleSpec::LoopMod { lambda, a, b }
    }
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> =
            self.params().iter().map(|(k, v)| format!("{k}={}", fmt_scalar(v))).collect();
        write!(f, "{}:{}", self.kind(), params.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("generator {generator} is not in the acting algebra {algebra} of {module}")]
    GeneratorOutsideAlgebra { generator: Generator, algebra: AlgebraSpec, module: String },
    #[error("label {label} is not a basis vector of {module}")]
    InvalidLabel { label: Label, module: String },
    #[error("highest weight must be a nonnegative integer, got {0}")]
    NegativeHighestWeight(i64),
}

/// Outcome of the simplicity criteria, with the criterion that decided it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Simplicity {
    pub simple: bool,
    pub reason: String,
}

impl Simplicity {
    fn yes(reason: impl Into<String>) -> Self {
        Self { simple: true, reason: reason.into() }
    }
    fn no(reason: impl Into<String>) -> Self {
        Self { simple: false, reason: reason.into() }
    }
}

/// Distinguished submodule/quotient of a catalog module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Structure {
    Simple,
    /// The trivial line is a submodule; the quotient is the simple subquotient.
    TrivialSubmodule { line: String, quotient: String },
    /// The trivial line is a quotient; the complementary span is a submodule.
    TrivialQuotient { line: String, submodule: String },
}

/// One explicitly presented weight module.
pub trait WeightModule: Send + Sync {
    fn name(&self) -> String;

    fn algebra(&self) -> AlgebraSpec;

    /// Number of basis vectors in each `d₀`-weight space.
    fn fiber_dim(&self) -> usize;

    /// Action of a generator on a basis label; `g` must lie in [`Self::algebra`]
    /// and `label` must satisfy [`Self::has_label`].
    fn act_basis(&self, g: &Generator, label: &Label) -> ModuleVector;

    fn simplicity(&self) -> Simplicity;

    fn structure(&self) -> Structure;

    fn label_name(&self, label: &Label) -> String {
        label.to_string()
    }

    fn has_label(&self, label: &Label) -> bool {
        (label.k as usize) < self.fiber_dim()
    }

    /// Basis of the weight space at integer offset `t`.
    fn basis_at(&self, t: i64) -> Vec<Label> {
        (0..self.fiber_dim() as u32).map(|k| Label::u(k, t)).collect()
    }

    /// `(d₀, h₀)` eigenvalues of a basis label.
    fn weight(&self, label: &Label) -> (Scalar, Scalar) {
        let d0 = self.act_basis(&Generator::d(0), label).coeff(label);
        let h0 = if self.algebra().contains(&Generator::h(0)) {
            self.act_basis(&Generator::h(0), label).coeff(label)
        } else {
            Scalar::zero()
        };
        (d0, h0)
    }
}

/// A named family of weight modules, constructible from text parameters.
pub trait ModuleFamily: Send + Sync {
    fn kind(&self) -> &'static str;

    fn parameters(&self) -> &'static [&'static str];

    fn from_params(&self, params: &BTreeMap<String, Scalar>) -> Result<ModuleSpec, SpecParseError>;

    fn instantiate(&self, spec: &ModuleSpec) -> Box<dyn WeightModule>;
}

pub struct ModuleRegistry {
    families: HashMap<&'static str, Box<dyn ModuleFamily>>,
}

impl ModuleRegistry {
    pub fn new() -> Self {
        Self { families: HashMap::new() }
    }

    pub fn register(&mut self, family: Box<dyn ModuleFamily>) {
        self.families.insert(family.kind(), family);
    }

    pub fn family(&self, kind: &str) -> Option<&dyn ModuleFamily> {
        self.families.get(kind).map(|b| b.as_ref())
    }

    pub fn kinds(&self) -> Vec<&'static str> {
        let mut kinds: Vec<_> = self.families.keys().copied().collect();
        kinds.sort_unstable();
        kinds
    }
}

impl Default for ModuleRegistry {
    fn default() -> Self {
        let mut reg = Self::new();
        reg.register(Box::new(IntABFamily));
        reg.register(Box::new(IntAFamily));
        reg.register(Box::new(IntBFamily));
        reg.register(Box::new(HeisenbergFamily));
        reg.register(Box::new(T2Family));
        reg.register(Box::new(LoopFamily));
        reg
    }
}

pub fn registry() -> &'static ModuleRegistry {
    static REGISTRY: OnceLock<ModuleRegistry> = OnceLock::new();
    REGISTRY.get_or_init(ModuleRegistry::default)
}

/// Action of `g` on a vector, checked against the module's acting algebra.
pub fn act_on(
    module: &dyn WeightModule,
    g: &Generator,
    v: &ModuleVector,
) -> Result<ModuleVector, CatalogError> {
    if !module.algebra().contains(g) {
        return Err(CatalogError::GeneratorOutsideAlgebra {
            generator: *g,
            algebra: module.algebra(),
            module: module.name(),
        });
    }
    let mut out = ModuleVector::zero();
    for (label, c) in v.iter() {
        if !module.has_label(label) {
            return Err(CatalogError::InvalidLabel { label: *label, module: module.name() });
        }
        out.add_scaled(&module.act_basis(g, label), c);
    }
    Ok(out)
}

pub fn act(spec: &ModuleSpec, g: &Generator, v: &ModuleVector) -> Result<ModuleVector, CatalogError> {
    act_on(spec.module().as_ref(), g, v)
}

/// `ρ([x,y])v − ρ(x)ρ(y)v + ρ(y)ρ(x)v`; zero iff the module axiom holds on `(x, y, v)`.
pub fn module_defect_on(
    module: &dyn WeightModule,
    x: &Generator,
    y: &Generator,
    v: &ModuleVector,
) -> Result<ModuleVector, CatalogError> {
    let mut out = ModuleVector::zero();
    for (g, c) in bracket_basis(x, y).iter() {
        out.add_scaled(&act_on(module, g, v)?, c);
    }
    let xy = act_on(module, x, &act_on(module, y, v)?)?;
    let yx = act_on(module, y, &act_on(module, x, v)?)?;
    Ok(out - xy + yx)
}

pub fn module_defect(
    spec: &ModuleSpec,
    x: &Generator,
    y: &Generator,
    v: &ModuleVector,
) -> Result<ModuleVector, CatalogError> {
    module_defect_on(spec.module().as_ref(), x, y, v)
}

pub fn is_simple(spec: &ModuleSpec) -> Simplicity {
    spec.module().simplicity()
}

pub fn structure_report(spec: &ModuleSpec) -> Structure {
    spec.module().structure()
}

/// Simplicity of `𝓐_{a,b}`-type data after reducing `a` modulo 1.
pub(crate) fn intermediate_simplicity(a: &Scalar, b: &Scalar) -> Option<Simplicity> {
    let a_red = reduce_mod_one(a);
    if !a_red.is_zero() {
        return Some(Simplicity::yes(format!("a ∉ ℤ (a ≡ {} mod 1)", fmt_scalar(&a_red))));
    }
    if !b.is_zero() && !b.is_one() {
        return Some(Simplicity::yes(format!("b = {} ∉ {{0, 1}}", fmt_scalar(b))));
    }
    None
}

/// Structure of a reducible `𝓐_{a,b}`-type module (`a ∈ ℤ`, `b ∈ {0,1}`):
/// the line of `d₀`-weight zero sits at label `t = -a`.
pub(crate) fn intermediate_structure(a: &Scalar, b: &Scalar, line_name: impl Fn(i64) -> String) -> Structure {
    debug_assert!(is_integer(a));
    let t = -a.to_integer();
    let t: i64 = t.try_into().expect("integer parameter fits in i64");
    let line = line_name(t);
    if b.is_zero() {
        Structure::TrivialSubmodule { line, quotient: "A'_{0,0}".into() }
    } else {
        Structure::TrivialQuotient { line, submodule: "A'_{0,0}".into() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    #[test]
    fn registry_has_all_kinds() {
        assert_eq!(registry().kinds(), vec!["A", "A2", "B", "H", "T2", "loop"]);
        for kind in registry().kinds() {
            let fam = registry().family(kind).unwrap();
            assert_eq!(fam.kind(), kind);
        }
    }

    #[test]
    fn spec_display_is_canonical() {
        let s = ModuleSpec::IntAB { a: frac(1, 2), b: frac(1, 3) };
        assert_eq!(s.to_string(), "A:a=1/2,b=1/3");
        let l = ModuleSpec::loop_module(2, int(0), int(0));
        assert_eq!(l.to_string(), "loop:lambda=2,a=0,b=0");
    }

    #[test]
    fn outside_algebra_is_an_error() {
        let s = ModuleSpec::IntAB { a: frac(1, 2), b: frac(1, 3) };
        let err = act(&s, &Generator::e(1), &ModuleVector::basis(Label::v(0))).unwrap_err();
        assert!(matches!(err, CatalogError::GeneratorOutsideAlgebra { .. }));
        let h = ModuleSpec::HVirABC { a: int(0), b: int(0), c: int(1) };
        assert!(act(&h, &Generator::f(0), &ModuleVector::basis(Label::v(0))).is_err());
        assert!(act(&h, &Generator::h(2), &ModuleVector::basis(Label::v(0))).is_ok());
    }

    #[test]
    fn invalid_label_is_an_error() {
        let s = ModuleSpec::loop_module(1, int(0), int(0));
        let err = act(&s, &Generator::d(1), &ModuleVector::basis(Label::u(2, 0))).unwrap_err();
        assert!(matches!(err, CatalogError::InvalidLabel { .. }));
    }
}
