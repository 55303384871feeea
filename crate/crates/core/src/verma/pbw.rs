//! PBW monomials over the negative cone `𝓛₋ + ℂf₀` and straightening of words
//! applied to a highest-weight vector.
//!
//! Factor order inside a monomial: degree ascending, then `d < h < f < e`, so
//! `f₀` powers sit rightmost, next to the highest-weight vector.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use super::HighestWeightData;
use crate::algebra::{bracket_basis, Family, Generator};
use crate::scalar::{Combination, Scalar};

/// Sort key of a lowering generator, `None` for raising and Cartan elements.
pub fn lowering_key(g: &Generator) -> Option<(i64, u8)> {
    let rank = match g.family() {
        Family::D => 0,
        Family::H => 1,
        Family::F => 2,
        Family::E => 3,
        Family::C => return None,
    };
    match g.degree() {
        d if d < 0 => Some((d, rank)),
        0 if g.family() == Family::F => Some((0, rank)),
        _ => None,
    }
}

pub fn is_lowering(g: &Generator) -> bool {
    lowering_key(g).is_some()
}

/// An ordered product of lowering generators applied to the highest-weight vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PbwMonomial {
    factors: Vec<Generator>,
}

impl Ord for PbwMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let keys = |m: &Self| m.factors.iter().map(lowering_key).collect::<Vec<_>>();
        keys(self).cmp(&keys(other))
    }
}

impl PartialOrd for PbwMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Exponents of a monomial: `f₀^{a₀}` and, per `k ≥ 1`, `(α, β, γ, δ)` for `e₋ₖ, f₋ₖ, h₋ₖ, d₋ₖ`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Exponents {
    pub f0: u32,
    pub by_depth: std::collections::BTreeMap<i64, [u32; 4]>,
}

impl PbwMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    /// Sorts the factors into canonical order. Panics on non-lowering factors.
    pub fn from_factors(mut factors: Vec<Generator>) -> Self {
        assert!(factors.iter().all(is_lowering), "PBW factors must be lowering generators");
        factors.sort_by_key(|g| lowering_key(g).unwrap());
        Self { factors }
    }

    pub fn factors(&self) -> &[Generator] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// `Σ k (α_k + β_k + γ_k + δ_k)`.
    pub fn depth(&self) -> i64 {
        self.factors.iter().map(|g| -g.degree()).sum()
    }

    /// `a₀ + Σ (β_k − α_k)`: each unit lowers the `h₀`-eigenvalue by 2.
    pub fn charge(&self) -> i64 {
        -self.factors.iter().map(Generator::h0_shift).sum::<i64>()
    }

    pub fn total_exponent(&self) -> usize {
        self.factors.len()
    }

    pub fn exponents(&self) -> Exponents {
        let mut out = Exponents::default();
        for g in &self.factors {
            if g.degree() == 0 {
                out.f0 += 1;
                continue;
            }
            let slot = match g.family() {
                Family::E => 0,
                Family::F => 1,
                Family::H => 2,
                _ => 3,
            };
            out.by_depth.entry(-g.degree()).or_insert([0; 4])[slot] += 1;
        }
        out
    }

    fn prepend(&self, g: Generator) -> Self {
        let mut factors = Vec::with_capacity(self.factors.len() + 1);
        factors.push(g);
        factors.extend_from_slice(&self.factors);
        Self { factors }
    }

    fn split_first(&self) -> Option<(Generator, PbwMonomial)> {
        let (first, rest) = self.factors.split_first()?;
        Some((*first, PbwMonomial { factors: rest.to_vec() }))
    }
}

impl fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "v");
        }
        let mut i = 0;
        while i < self.factors.len() {
            let g = self.factors[i];
            let run = self.factors[i..].iter().take_while(|&&x| x == g).count();
            if run == 1 {
                write!(f, "{g}·")?;
            } else {
                write!(f, "{g}^{run}·")?;
            }
            i += run;
        }
        write!(f, "v")
    }
}

impl fmt::Debug for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub type PbwVector = Combination<PbwMonomial>;

/// Rewrites products of generators into canonical PBW form, memoizing
/// `g · m` for basis monomials `m`.
pub struct Straightener {
    hw: HighestWeightData,
    memo: HashMap<(Generator, PbwMonomial), PbwVector>,
}

impl Straightener {
    pub fn new(hw: HighestWeightData) -> Self {
        Self { hw, memo: HashMap::new() }
    }

    pub fn highest_weight(&self) -> &HighestWeightData {
        &self.hw
    }

    pub fn cache_len(&self) -> usize {
        self.memo.len()
    }

    /// `g · (m · v)` as a combination of canonical monomials.
    pub fn apply(&mut self, g: &Generator, m: &PbwMonomial) -> PbwVector {
        let key = lowering_key(g);
        let Some((first, rest)) = m.split_first() else {
            return match key {
                Some(_) => PbwVector::basis(PbwMonomial { factors: vec![*g] }),
                None => self.on_highest_weight_vector(g),
            };
        };
        if let Some(k) = key {
            if k <= lowering_key(&first).expect("canonical factors are lowering") {
                return PbwVector::basis(m.prepend(*g));
            }
        }
        if let Some(hit) = self.memo.get(&(*g, m.clone())) {
            return hit.clone();
        }
        // g·x·rest = x·(g·rest) + [g, x]·rest
        let mut out = PbwVector::zero();
        for (mono, c) in self.apply(g, &rest).iter() {
            let moved = self.apply(&first, mono);
            out.add_scaled(&moved, c);
        }
        for (gen, c) in bracket_basis(g, &first).iter() {
            let corr = self.apply(gen, &rest);
            out.add_scaled(&corr, c);
        }
        self.memo.insert((*g, m.clone()), out.clone());
        out
    }

    pub fn apply_vector(&mut self, g: &Generator, v: &PbwVector) -> PbwVector {
        let mut out = PbwVector::zero();
        for (m, c) in v.iter() {
            let image = self.apply(g, m);
            out.add_scaled(&image, c);
        }
        out
    }

    /// Applies `word[0] · word[1] ⋯ word[n−1]` to the highest-weight vector.
    pub fn straighten(&mut self, word: &[Generator]) -> PbwVector {
        word.iter()
            .rev()
            .fold(PbwVector::basis(PbwMonomial::one()), |acc, g| self.apply_vector(g, &acc))
    }

    fn on_highest_weight_vector(&self, g: &Generator) -> PbwVector {
        let one = PbwMonomial::one();
        let eigen = match (g.family(), g.degree()) {
            (Family::C, _) => self.hw.c.clone(),
            (Family::H, 0) => self.hw.mu.clone(),
            (Family::D, 0) => self.hw.lambda_d.clone(),
            _ => Scalar::zero(),
        };
        PbwVector::term(one, eigen)
    }
}

/// Straightens a word applied to the highest-weight vector of weight `hw`.
pub fn pbw_straighten(hw: &HighestWeightData, word: &[Generator]) -> PbwVector {
    Straightener::new(hw.clone()).straighten(word)
}
