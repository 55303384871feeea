//! Structure constants of the affine-Virasoro algebra of type A₁ and its named
//! subalgebras.
//!
//! The basis is `{e_i, f_i, h_i, d_i, C}` with
//!
//! ```text
//! [e_i, f_j] = h_{i+j} + i δ_{i+j,0} C
//! [h_i, e_j] = 2 e_{i+j}          [h_i, f_j] = -2 f_{i+j}
//! [d_i, d_j] = (j - i) d_{i+j} + (j³ - j)/12 δ_{i+j,0} C
//! [d_i, x_j] = j x_{i+j}  (x ∈ {e, f, h})
//! [h_i, h_j] = 2 i δ_{i+j,0} C    [e_i, e_j] = [f_i, f_j] = 0
//! ```
//!
//! and `C` central. The invariant form normalization `(h, h) = 2`, `(e, f) = 1`
//! is folded into the central terms.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{frac, int, Combination};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    E,
    F,
    H,
    D,
    C,
}

impl Family {
    pub const LOOP: [Family; 3] = [Family::E, Family::F, Family::H];
    pub const GRADED: [Family; 4] = [Family::E, Family::F, Family::H, Family::D];

    fn symbol(self) -> char {
        match self {
            Family::E => 'e',
            Family::F => 'f',
            Family::H => 'h',
            Family::D => 'd',
            Family::C => 'C',
        }
    }
}

/// One basis symbol of the algebra. `C` always carries degree 0.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Generator {
    family: Family,
    degree: i64,
}

impl Generator {
    pub const CENTRAL: Generator = Generator { family: Family::C, degree: 0 };

    pub const fn new(family: Family, degree: i64) -> Self {
        let degree = if matches!(family, Family::C) { 0 } else { degree };
        Self { family, degree }
    }

    pub const fn e(i: i64) -> Self {
        Self::new(Family::E, i)
    }
    pub const fn f(i: i64) -> Self {
        Self::new(Family::F, i)
    }
    pub const fn h(i: i64) -> Self {
        Self::new(Family::H, i)
    }
    pub const fn d(i: i64) -> Self {
        Self::new(Family::D, i)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Grading degree; brackets add degrees.
    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// Change of the `h₀`-eigenvalue, in units of 2, when this generator acts.
    pub fn h0_shift(&self) -> i64 {
        match self.family {
            Family::E => 1,
            Family::F => -1,
            _ => 0,
        }
    }

    pub fn to_element(self) -> LieElement {
        LieElement::basis(self)
    }
}

pub fn degree(g: &Generator) -> i64 {
    g.degree()
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::C => write!(f, "C"),
            fam => write!(f, "{}{}", fam.symbol(), self.degree),
        }
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse generator `{0}` (expected e.g. `d2`, `f-1`, `C`)")]
pub struct GeneratorParseError(pub String);

impl FromStr for Generator {
    type Err = GeneratorParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "C" || s == "c" {
            return Ok(Generator::CENTRAL);
        }
        let err = || GeneratorParseError(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next().ok_or_else(err)? {
            'e' | 'E' => Family::E,
            'f' | 'F' => Family::F,
            'h' | 'H' | 'y' | 'Y' => Family::H,
            'd' | 'D' => Family::D,
            _ => return Err(err()),
        };
        let rest = chars.as_str().trim_start_matches('_');
        let degree = rest.parse::<i64>().map_err(|_| err())?;
        Ok(Generator::new(family, degree))
    }
}

/// Generators whose joint kernel detects highest-weight vectors: `𝓛₊` is generated
/// by `𝓛₁` and `d₂`, and `e₀` completes `𝓛⁺`.
pub const RAISING_KILL_SET: [Generator; 6] =
    [Generator::e(0), Generator::d(1), Generator::e(1), Generator::f(1), Generator::h(1), Generator::d(2)];

/// Mirror image of [`RAISING_KILL_SET`] for lowest-weight vectors.
pub const LOWERING_KILL_SET: [Generator; 6] = [
    Generator::f(0),
    Generator::d(-1),
    Generator::e(-1),
    Generator::f(-1),
    Generator::h(-1),
    Generator::d(-2),
];

/// A finite rational linear combination of basis generators.
pub type LieElement = Combination<Generator>;

/// Bracket of two basis generators.
pub fn bracket_basis(x: &Generator, y: &Generator) -> LieElement {
    use Family::*;
    let (i, j) = (x.degree, y.degree);
    let delta = i + j == 0;
    let mut out = LieElement::zero();
    match (x.family, y.family) {
        (C, _) | (_, C) => {}
        (E, E) | (F, F) => {}
        (E, F) => {
            out.add_term(Generator::h(i + j), int(1));
            if delta {
                out.add_term(Generator::CENTRAL, int(i));
            }
        }
        (F, E) => return -bracket_basis(y, x),
        (H, E) => out.add_term(Generator::e(i + j), int(2)),
        (H, F) => out.add_term(Generator::f(i + j), int(-2)),
        (E, H) | (F, H) => return -bracket_basis(y, x),
        (H, H) => {
            if delta {
                out.add_term(Generator::CENTRAL, int(2 * i));
            }
        }
        (D, D) => {
            out.add_term(Generator::d(i + j), int(j - i));
            if delta {
                out.add_term(Generator::CENTRAL, frac(j * j * j - j, 12));
            }
        }
        (D, fam) => out.add_term(Generator::new(fam, i + j), int(j)),
        (_, D) => return -bracket_basis(y, x),
    }
    out
}

/// Bilinear extension of the defining relations.
pub fn bracket(x: &LieElement, y: &LieElement) -> LieElement {
    let mut out = LieElement::zero();
    for (gx, cx) in x.iter() {
        for (gy, cy) in y.iter() {
            out.add_scaled(&bracket_basis(gx, gy), &(cx * cy));
        }
    }
    out
}

/// `[x,[y,z]] + [y,[z,x]] + [z,[x,y]]`.
pub fn jacobi_defect(x: &Generator, y: &Generator, z: &Generator) -> LieElement {
    let (x, y, z) = (x.to_element(), y.to_element(), z.to_element());
    bracket(&x, &bracket(&y, &z)) + bracket(&y, &bracket(&z, &x)) + bracket(&z, &bracket(&x, &y))
}

/// Named subalgebras, each a set of generators closed under the bracket.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlgebraSpec {
    /// `{d_n, C}`
    Vir,
    /// Differential operators of order ≤ 1: `{d_n, h_n, C}`, with `h_n` playing `Y_n`.
    D,
    /// `{d_n, e_n, h_n, C}`
    T2,
    /// Everything.
    L,
    /// `{e_n, f_n, h_n, d_0, C}`
    Sl2Loop,
    /// `{e_0, f_0, h_0}`
    Sl2,
}

impl AlgebraSpec {
    pub const ALL: [AlgebraSpec; 6] = [
        AlgebraSpec::Vir,
        AlgebraSpec::D,
        AlgebraSpec::T2,
        AlgebraSpec::L,
        AlgebraSpec::Sl2Loop,
        AlgebraSpec::Sl2,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            AlgebraSpec::Vir => "Vir",
            AlgebraSpec::D => "D",
            AlgebraSpec::T2 => "T2",
            AlgebraSpec::L => "L",
            AlgebraSpec::Sl2Loop => "Sl2Loop",
            AlgebraSpec::Sl2 => "Sl2",
        }
    }

    pub fn contains(&self, g: &Generator) -> bool {
        use Family::*;
        let fam = g.family();
        match self {
            AlgebraSpec::Vir => matches!(fam, D | C),
            AlgebraSpec::D => matches!(fam, D | H | C),
            AlgebraSpec::T2 => matches!(fam, D | H | E | C),
            AlgebraSpec::L => true,
            AlgebraSpec::Sl2Loop => fam != D || g.degree() == 0,
            AlgebraSpec::Sl2 => fam != D && fam != C && g.degree() == 0,
        }
    }

    /// All generators of this subalgebra with degree in `lo..=hi` (plus `C` when 0 is in range).
    pub fn generators(&self, lo: i64, hi: i64) -> Vec<Generator> {
        let mut out = Vec::new();
        for n in lo..=hi {
            for fam in Family::GRADED {
                let g = Generator::new(fam, n);
                if self.contains(&g) {
                    out.push(g);
                }
            }
        }
        if lo <= 0 && 0 <= hi && self.contains(&Generator::CENTRAL) {
            out.push(Generator::CENTRAL);
        }
        out.sort();
        out
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown algebra `{0}` (expected one of Vir, D, T2, L, Sl2Loop, Sl2)")]
pub struct AlgebraParseError(pub String);

impl FromStr for AlgebraSpec {
    type Err = AlgebraParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AlgebraSpec::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| AlgebraParseError(s.to_string()))
    }
}

pub fn in_subalgebra(x: &LieElement, spec: AlgebraSpec) -> bool {
    x.keys().all(|g| spec.contains(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn el(terms: &[(Generator, Scalar)]) -> LieElement {
        LieElement::from_terms(terms.iter().cloned())
    }

    #[test]
    fn bracket_examples() {
        let (d, e, f, h) = (Generator::d, Generator::e, Generator::f, Generator::h);
        assert_eq!(bracket_basis(&d(1), &d(-1)), el(&[(d(0), int(-2))]));
        assert_eq!(
            bracket_basis(&d(2), &d(-2)),
            el(&[(d(0), int(-4)), (Generator::CENTRAL, frac(-1, 2))])
        );
        assert_eq!(bracket_basis(&e(0), &f(0)), el(&[(h(0), int(1))]));
        assert_eq!(bracket_basis(&h(1), &h(-1)), el(&[(Generator::CENTRAL, int(2))]));
        assert!(bracket_basis(&Generator::CENTRAL, &e(5)).is_zero());
        assert_eq!(
            bracket_basis(&e(1), &f(-1)),
            el(&[(h(0), int(1)), (Generator::CENTRAL, int(1))])
        );
        assert_eq!(bracket_basis(&f(2), &h(3)), el(&[(f(5), int(2))]));
        assert_eq!(bracket_basis(&e(2), &d(1)), el(&[(e(3), int(-2))]));
    }

    #[test]
    fn degrees() {
        assert_eq!(degree(&Generator::e(5)), 5);
        assert_eq!(degree(&Generator::CENTRAL), 0);
        assert_eq!(degree(&Generator::d(-3)), -3);
        assert_eq!(Generator::new(Family::C, 7), Generator::CENTRAL);
    }

    #[test]
    fn jacobi_examples() {
        use Generator as G;
        assert!(jacobi_defect(&G::d(1), &G::d(2), &G::d(3)).is_zero());
        assert!(jacobi_defect(&G::e(1), &G::f(-1), &G::h(2)).is_zero());
        assert!(jacobi_defect(&G::d(0), &G::e(3), &G::f(-3)).is_zero());
        assert!(jacobi_defect(&G::d(2), &G::d(-1), &G::d(-1)).is_zero());
    }

    #[test]
    fn subalgebra_membership() {
        let x = el(&[(Generator::h(3), int(1)), (Generator::d(-1), int(2))]);
        assert!(in_subalgebra(&x, AlgebraSpec::T2));
        assert!(!in_subalgebra(&Generator::f(2).to_element(), AlgebraSpec::T2));
        let y = el(&[(Generator::e(1), int(1)), (Generator::f(1), int(1))]);
        assert!(in_subalgebra(&y, AlgebraSpec::Sl2Loop));
        assert!(!in_subalgebra(&Generator::d(1).to_element(), AlgebraSpec::Sl2Loop));
        assert!(in_subalgebra(&Generator::d(0).to_element(), AlgebraSpec::Sl2Loop));
        assert!(!in_subalgebra(&Generator::e(1).to_element(), AlgebraSpec::Sl2));
    }

    #[test]
    fn parse_generators() {
        assert_eq!("d2".parse::<Generator>().unwrap(), Generator::d(2));
        assert_eq!("f-1".parse::<Generator>().unwrap(), Generator::f(-1));
        assert_eq!("h_3".parse::<Generator>().unwrap(), Generator::h(3));
        assert_eq!("C".parse::<Generator>().unwrap(), Generator::CENTRAL);
        assert!("q1".parse::<Generator>().is_err());
        assert_eq!(Generator::e(-2).to_string(), "e-2");
    }
}
