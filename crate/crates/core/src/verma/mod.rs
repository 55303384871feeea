//! Truncated highest-weight (Verma-type) modules.
//!
//! The module induced from a character of `𝔥 + 𝓛⁺` has the PBW basis
//! `{m · v}` over monomials in `𝓛₋ + ℂf₀`. A monomial sits in the bigraded slice
//! `(depth, charge)`, with weight `(λ_d − depth, μ − 2·charge)`. Since `f₀`
//! keeps depth fixed, truncation bounds both depth (`N`) and charge (`S`).

mod pbw;

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Family, Generator, RAISING_KILL_SET};
use crate::linalg::Matrix;
use crate::scalar::{int, Scalar};

pub use pbw::{is_lowering, lowering_key, pbw_straighten, Exponents, PbwMonomial, PbwVector, Straightener};

/// Default basis-count cap; `AVW_MAX_BASIS` overrides it.
pub const DEFAULT_MAX_BASIS: usize = 500_000;
pub const DEFAULT_MAX_TOTAL_EXPONENT: usize = 24;

/// Eigenvalues of `d₀`, `h₀` and `C` on the highest-weight vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HighestWeightData {
    pub lambda_d: Scalar,
    pub mu: Scalar,
    pub c: Scalar,
}

impl HighestWeightData {
    pub fn new(lambda_d: Scalar, mu: Scalar, c: Scalar) -> Self {
        Self { lambda_d, mu, c }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VermaError {
    #[error("slice (depth {depth}, charge {charge}) lies outside the truncation")]
    OutOfWindow { depth: i64, charge: i64 },
    #[error("{what} = {value} exceeds the configured cap {cap}")]
    ResourceBound { what: &'static str, value: usize, cap: usize },
    #[error("{0} is not a basis monomial of this truncation")]
    NotInBasis(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VermaConfig {
    /// Depth bound `N`.
    pub depth: i64,
    /// Charge bound `S`.
    pub charge: i64,
    pub max_total_exponent: usize,
    pub max_basis: usize,
}

impl VermaConfig {
    /// Depth `N` with the default charge bound `S = N + 4`.
    pub fn new(depth: i64) -> Self {
        Self {
            depth,
            charge: depth + 4,
            max_total_exponent: DEFAULT_MAX_TOTAL_EXPONENT,
            max_basis: max_basis_from_env(),
        }
    }

    pub fn with_charge(mut self, charge: i64) -> Self {
        self.charge = charge;
        self
    }
}

fn max_basis_from_env() -> usize {
    std::env::var("AVW_MAX_BASIS")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_BASIS)
}

/// A nonzero vector killed by the raising kill-set, with its slice coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularVector {
    pub depth: i64,
    pub charge: i64,
    /// Coefficients over [`TruncatedModule::slice`]`(depth, charge)`.
    pub coefficients: Vec<Scalar>,
    pub vector: PbwVector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimRow {
    pub depth: i64,
    pub charge: i64,
    pub dim: usize,
}

pub struct TruncatedModule {
    hw: HighestWeightData,
    depth: i64,
    charge: i64,
    slices: BTreeMap<(i64, i64), Vec<PbwMonomial>>,
    index: HashMap<PbwMonomial, usize>,
    straightener: Mutex<Straightener>,
}

/// Lowering generators of negative degree `≥ -max_depth`, in canonical factor order.
fn negative_generators(max_depth: i64) -> Vec<Generator> {
    let mut gens: Vec<Generator> = (1..=max_depth)
        .flat_map(|k| Family::GRADED.into_iter().map(move |fam| Generator::new(fam, -k)))
        .collect();
    gens.sort_by_key(|g| lowering_key(g).expect("negative degree is lowering"));
    gens
}

/// All multisets of negative-degree factors with total depth exactly `depth`.
fn negative_parts(depth: i64) -> Vec<Vec<Generator>> {
    fn rec(gens: &[Generator], from: usize, remaining: i64, acc: &mut Vec<Generator>, out: &mut Vec<Vec<Generator>>) {
        if remaining == 0 {
            out.push(acc.clone());
            return;
        }
        for i in from..gens.len() {
            let cost = -gens[i].degree();
            if cost > remaining {
                continue;
            }
            acc.push(gens[i]);
            rec(gens, i, remaining - cost, acc, out);
            acc.pop();
        }
    }
    let gens = negative_generators(depth);
    let mut out = Vec::new();
    rec(&gens, 0, depth, &mut Vec::new(), &mut out);
    out
}

pub fn build_verma(hw: HighestWeightData, config: &VermaConfig) -> Result<TruncatedModule, VermaError> {
    let (n_max, s_max) = (config.depth.max(-1), config.charge);
    let mut slices: BTreeMap<(i64, i64), Vec<PbwMonomial>> = BTreeMap::new();
    let mut total = 0usize;
    for n in 0..=n_max {
        for part in negative_parts(n) {
            let base = PbwMonomial::from_factors(part.clone());
            let base_charge = base.charge();
            for s in base_charge.max(-n)..=s_max {
                let a0 = (s - base_charge) as usize;
                let size = part.len() + a0;
                if size > config.max_total_exponent {
                    return Err(VermaError::ResourceBound {
                        what: "monomial total exponent",
                        value: size,
                        cap: config.max_total_exponent,
                    });
                }
                let mut factors = part.clone();
                factors.extend(std::iter::repeat(Generator::f(0)).take(a0));
                slices.entry((n, s)).or_default().push(PbwMonomial::from_factors(factors));
                total += 1;
                if total > config.max_basis {
                    return Err(VermaError::ResourceBound {
                        what: "basis size",
                        value: total,
                        cap: config.max_basis,
                    });
                }
            }
        }
    }
    let mut index = HashMap::new();
    for basis in slices.values_mut() {
        basis.sort();
        for (i, m) in basis.iter().enumerate() {
            index.insert(m.clone(), i);
        }
    }
    Ok(TruncatedModule {
        straightener: Mutex::new(Straightener::new(hw.clone())),
        hw,
        depth: n_max,
        charge: s_max,
        slices,
        index,
    })
}

impl TruncatedModule {
    pub fn highest_weight(&self) -> &HighestWeightData {
        &self.hw
    }

    pub fn depth_bound(&self) -> i64 {
        self.depth
    }

    pub fn charge_bound(&self) -> i64 {
        self.charge
    }

    pub fn basis_len(&self) -> usize {
        self.index.len()
    }

    fn check_window(&self, n: i64, s: i64) -> Result<(), VermaError> {
        if n < 0 || n > self.depth || s > self.charge {
            Err(VermaError::OutOfWindow { depth: n, charge: s })
        } else {
            Ok(())
        }
    }

    /// Basis of the `(depth, charge)` slice; empty outside the truncation.
    pub fn slice(&self, n: i64, s: i64) -> &[PbwMonomial] {
        self.slices.get(&(n, s)).map_or(&[], Vec::as_slice)
    }

    pub fn weight_space_dim(&self, n: i64, s: i64) -> Result<usize, VermaError> {
        self.check_window(n, s)?;
        Ok(self.slice(n, s).len())
    }

    /// Charges present at depth `n`: `-n ..= S`.
    pub fn charges_at(&self, n: i64) -> std::ops::RangeInclusive<i64> {
        -n..=self.charge
    }

    pub fn dims_table(&self) -> Vec<DimRow> {
        (0..=self.depth)
            .flat_map(|n| self.charges_at(n).map(move |s| (n, s)))
            .map(|(n, s)| DimRow { depth: n, charge: s, dim: self.slice(n, s).len() })
            .collect()
    }

    /// `(d₀, h₀)` eigenvalues of `m · v`.
    pub fn weight_of(&self, m: &PbwMonomial) -> (Scalar, Scalar) {
        (&self.hw.lambda_d - int(m.depth()), &self.hw.mu - int(2 * m.charge()))
    }

    /// Target slice of `g` acting on the `(n, s)` slice.
    pub fn target_slice(g: &Generator, n: i64, s: i64) -> (i64, i64) {
        (n - g.degree(), s - g.h0_shift())
    }

    fn straighten_basis(&self, g: &Generator, m: &PbwMonomial) -> PbwVector {
        let mut st = self.straightener.lock().expect("straightener lock poisoned");
        st.apply(g, m)
    }

    pub fn verma_act(&self, g: &Generator, v: &PbwVector) -> Result<PbwVector, VermaError> {
        let mut out = PbwVector::zero();
        for (m, c) in v.iter() {
            if !self.index.contains_key(m) {
                return Err(VermaError::NotInBasis(m.to_string()));
            }
            let (n, s) = Self::target_slice(g, m.depth(), m.charge());
            if n > self.depth || s > self.charge {
                return Err(VermaError::OutOfWindow { depth: n, charge: s });
            }
            out.add_scaled(&self.straighten_basis(g, m), c);
        }
        Ok(out)
    }

    /// Matrix of `g` from slice `(n, s)` to its target slice (columns: source basis).
    pub fn action_matrix(&self, g: &Generator, n: i64, s: i64) -> Result<Matrix, VermaError> {
        self.check_window(n, s)?;
        let (tn, ts) = Self::target_slice(g, n, s);
        if tn > self.depth || ts > self.charge {
            return Err(VermaError::OutOfWindow { depth: tn, charge: ts });
        }
        let source = self.slice(n, s);
        let target = self.slice(tn, ts);
        let mut m = Matrix::zeros(target.len(), source.len());
        for (j, mono) in source.iter().enumerate() {
            for (img, c) in self.straighten_basis(g, mono).iter() {
                let i = self.index[img];
                debug_assert_eq!(&target[i], img);
                m[(i, j)] = c.clone();
            }
        }
        Ok(m)
    }

    pub fn vector_from_coefficients(&self, n: i64, s: i64, coeffs: &[Scalar]) -> PbwVector {
        self.slice(n, s).iter().cloned().zip(coeffs.iter().cloned()).collect()
    }

    /// Joint kernels of the raising kill-set on every slice of depth `≤ max_depth`
    /// whose images stay inside the truncation.
    pub fn find_singular_vectors(&self, max_depth: i64) -> Result<Vec<SingularVector>, VermaError> {
        if max_depth > self.depth - 2 {
            return Err(VermaError::OutOfWindow { depth: max_depth + 2, charge: 0 });
        }
        let mut out = Vec::new();
        for n in 0..=max_depth {
            for s in -n..self.charge {
                let dim = self.slice(n, s).len();
                if dim == 0 {
                    continue;
                }
                let blocks = RAISING_KILL_SET
                    .iter()
                    .map(|g| self.action_matrix(g, n, s))
                    .collect::<Result<Vec<_>, _>>()?;
                let refs: Vec<&Matrix> = blocks.iter().collect();
                for coefficients in Matrix::vstack(&refs, dim).kernel() {
                    let vector = self.vector_from_coefficients(n, s, &coefficients);
                    out.push(SingularVector { depth: n, charge: s, coefficients, vector });
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::frac;

    fn generic() -> HighestWeightData {
        HighestWeightData::new(frac(1, 2), frac(1, 3), int(0))
    }

    fn mono(factors: &[Generator]) -> PbwMonomial {
        PbwMonomial::from_factors(factors.to_vec())
    }

    #[test]
    fn low_slices() {
        let m = build_verma(generic(), &VermaConfig::new(3)).unwrap();
        assert_eq!(m.charge_bound(), 7);
        for s in 0..=7 {
            assert_eq!(m.weight_space_dim(0, s).unwrap(), 1);
        }
        assert_eq!(m.weight_space_dim(0, -1).unwrap(), 0);
        assert_eq!(
            m.slice(1, 0),
            &[mono(&[Generator::d(-1)]), mono(&[Generator::h(-1)]), mono(&[Generator::e(-1), Generator::f(0)])]
        );
        assert_eq!(m.weight_space_dim(1, 1).unwrap(), 4);
        assert_eq!(m.weight_space_dim(2, 0).unwrap(), 10);
        assert!(matches!(m.weight_space_dim(4, 0), Err(VermaError::OutOfWindow { .. })));
        assert!(matches!(m.weight_space_dim(0, 8), Err(VermaError::OutOfWindow { .. })));
    }

    #[test]
    fn act_examples() {
        let hw = HighestWeightData::new(frac(1, 2), int(7), frac(3, 4));
        let m = build_verma(hw.clone(), &VermaConfig::new(3)).unwrap();
        let f0v = PbwVector::basis(mono(&[Generator::f(0)]));
        let v = PbwVector::basis(PbwMonomial::one());
        assert_eq!(m.verma_act(&Generator::e(0), &f0v).unwrap(), v.scaled(&hw.mu));
        let fm1 = PbwVector::basis(mono(&[Generator::f(-1)]));
        assert_eq!(m.verma_act(&Generator::d(0), &fm1).unwrap(), fm1.scaled(&(&hw.lambda_d - int(1))));
        let f0sq = PbwVector::basis(mono(&[Generator::f(0), Generator::f(0)]));
        assert_eq!(m.verma_act(&Generator::h(0), &f0sq).unwrap(), f0sq.scaled(&(&hw.mu - int(4))));
    }

    #[test]
    fn leaving_the_window_is_an_error() {
        let m = build_verma(generic(), &VermaConfig::new(2)).unwrap();
        let top = PbwVector::basis(mono(&[Generator::d(-2)]));
        assert!(matches!(m.verma_act(&Generator::d(-1), &top), Err(VermaError::OutOfWindow { .. })));
        let full = PbwVector::basis(mono(&[Generator::f(0); 6]));
        assert!(matches!(m.verma_act(&Generator::f(0), &full), Err(VermaError::OutOfWindow { .. })));
        assert!(m.verma_act(&Generator::d(1), &PbwVector::basis(PbwMonomial::one())).unwrap().is_zero());
    }

    #[test]
    fn caps() {
        let mut cfg = VermaConfig::new(2);
        cfg.max_basis = 10;
        assert!(matches!(build_verma(generic(), &cfg), Err(VermaError::ResourceBound { .. })));
        let cfg = VermaConfig::new(1).with_charge(30);
        assert!(matches!(build_verma(generic(), &cfg), Err(VermaError::ResourceBound { .. })));
    }

    #[test]
    fn singular_examples() {
        let m = build_verma(HighestWeightData::new(frac(1, 2), int(2), frac(1, 7)), &VermaConfig::new(4)).unwrap();
        let sv = m.find_singular_vectors(2).unwrap();
        let depth0: Vec<_> = sv.iter().filter(|s| s.depth == 0).collect();
        assert_eq!(depth0.len(), 2);
        assert_eq!((depth0[0].depth, depth0[0].charge), (0, 0));
        assert_eq!((depth0[1].depth, depth0[1].charge), (0, 3));
        assert_eq!(depth0[1].vector, PbwVector::basis(mono(&[Generator::f(0); 3])));

        let g = build_verma(generic(), &VermaConfig::new(4)).unwrap();
        let sv = g.find_singular_vectors(2).unwrap();
        assert_eq!(sv.len(), 1);
        assert_eq!(sv[0].vector, PbwVector::basis(PbwMonomial::one()));
        assert!(g.find_singular_vectors(3).is_err());
    }
}
