//! Identification of windowed data with a catalog module.
//!
//! Parameters are read off first (`λ` from the `h₀` spectrum, `a` from the
//! `d₀` labels, `b` from the scalar `d₋₁d₁`), then each candidate is verified
//! by solving for per-slice intertwiners `P_k` with `M(g) P_k = P_{k+m} R(g)`.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{from_catalog, AnalyzerError, WindowedModule};
use crate::algebra::{AlgebraSpec, Generator};
use crate::catalog::ModuleSpec;
use crate::linalg::Matrix;
use crate::scalar::{fmt_scalar, frac, int, rational_sqrt, Scalar};

/// Outcome of [`WindowedModule::catalog_match`]; `spec` is `None` for NoMatch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchReport {
    pub spec: Option<ModuleSpec>,
    pub evidence: Vec<String>,
}

impl Serialize for MatchReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Json<'a> {
            spec: String,
            evidence: &'a [String],
        }
        let spec = self.spec.as_ref().map_or_else(|| "NoMatch".to_string(), ToString::to_string);
        Json { spec, evidence: &self.evidence }.serialize(s)
    }
}

impl MatchReport {
    fn no_match(mut evidence: Vec<String>, why: impl Into<String>) -> Self {
        evidence.push(why.into());
        Self { spec: None, evidence }
    }
}

/// Generators of degree at most this many steps generate the system solved first.
const LOCAL_DEGREE: i64 = 2;

impl WindowedModule {
    pub fn catalog_match(&self) -> Result<MatchReport, AnalyzerError> {
        if self.width() < 3 {
            return Err(AnalyzerError::WindowTooNarrow(format!("width {} < 3", self.width())));
        }
        let mut ev = Vec::new();
        let dims: Vec<usize> = self.slices.iter().map(|s| s.dim()).collect();
        let n = dims[0];
        if n == 0 || dims.iter().any(|&d| d != n) {
            return Ok(MatchReport::no_match(ev, format!("weight-space dimensions not uniform: {dims:?}")));
        }
        if self.ops.values().any(|op| !op.is_full()) {
            return Ok(MatchReport::no_match(ev, "some operators are only partially defined"));
        }
        let lambda = n as u32 - 1;
        let family = match self.algebra {
            AlgebraSpec::L | AlgebraSpec::Vir => "loop",
            AlgebraSpec::D => "H",
            AlgebraSpec::T2 => "T2",
            other => return Ok(MatchReport::no_match(ev, format!("no catalog family over {other}"))),
        };
        if family != "loop" && n != 1 {
            return Ok(MatchReport::no_match(ev, format!("{family} modules have one-dimensional weight spaces, found {n}")));
        }
        ev.push(format!("uniform weight-space dimension {n}, so λ = {lambda}"));

        let first = &self.slices[0];
        let mut h_spectrum: Vec<Scalar> = first.weights.iter().map(|(_, h)| h.clone()).collect();
        h_spectrum.sort();
        let c = h_spectrum[0].clone();
        if family == "loop" {
            let expected: Vec<Scalar> = (0..=lambda as i64).map(|j| int(lambda as i64 - 2 * j)).rev().collect();
            if h_spectrum != expected {
                return Ok(MatchReport::no_match(ev, "h₀ spectrum is not {λ − 2j}"));
            }
        }
        let a = &first.weights[0].0 - int(self.lo);
        let coset_ok = self
            .slices
            .iter()
            .all(|s| s.weights.iter().all(|(d, _)| *d == &a + int(s.offset)));
        if !coset_ok {
            return Ok(MatchReport::no_match(ev, "d₀ eigenvalues are not a + k on offset k"));
        }
        ev.push(format!("d₀ eigenvalues a + k with a = {}", fmt_scalar(&a)));

        let mut candidates = vec![int(0), int(1)];
        let k = self.lo;
        let up = self.op_or_zero(&Generator::d(1), k).expect("width ≥ 3").matrix;
        let down = self.op_or_zero(&Generator::d(-1), k + 1).expect("width ≥ 3").matrix;
        let product = down.mul(&up);
        let s = product[(0, 0)].clone();
        if product != Matrix::scalar(n, &s) {
            return Ok(MatchReport::no_match(ev, format!("d₋₁d₁ on offset {k} is not scalar")));
        }
        // (x + b)(x + 1 − b) = s with x = a + k
        let x = &a + int(k);
        let disc = int(1) - int(4) * (&s - &x * &x - &x);
        if let Some(root) = rational_sqrt(&disc) {
            candidates.push((int(1) + &root) * frac(1, 2));
            candidates.push((int(1) - &root) * frac(1, 2));
        }
        candidates.sort();
        candidates.dedup();
        ev.push(format!(
            "b candidates {}",
            candidates.iter().map(fmt_scalar).collect::<Vec<_>>().join(", ")
        ));

        for b in candidates {
            let spec = match family {
                "loop" => ModuleSpec::loop_module(lambda, a.clone(), b.clone()),
                "H" => ModuleSpec::HVirABC { a: a.clone(), b: b.clone(), c: c.clone() },
                _ => ModuleSpec::T2Mod { a: a.clone(), b: b.clone(), c: c.clone() },
            };
            let reference = from_catalog(&spec, self.window());
            if let Some(rank) = self.intertwiner_to(&reference) {
                ev.push(format!("{spec}: per-slice intertwiner found (solution space dimension {rank})"));
                return Ok(MatchReport { spec: Some(spec), evidence: ev });
            }
            ev.push(format!("{spec}: no invertible intertwiner"));
        }
        Ok(MatchReport::no_match(ev, "no candidate reproduces the data"))
    }

    /// Searches for invertible `P_k` with `self(g) P_k = P_{k+m} reference(g)` for every
    /// in-window operator. Returns the dimension of the solution space on success.
    fn intertwiner_to(&self, reference: &WindowedModule) -> Option<usize> {
        if reference.window() != self.window() || self.slices.iter().zip(&reference.slices).any(|(x, y)| x.dim() != y.dim()) {
            return None;
        }
        let local = self.intertwining_solutions(reference, LOCAL_DEGREE);
        if self.pick_invertible(reference, &local).is_some() {
            return Some(local.len());
        }
        let full = self.intertwining_solutions(reference, self.width());
        self.pick_invertible(reference, &full).map(|_| full.len())
    }

    fn generator_union(&self, reference: &WindowedModule, max_degree: i64) -> Vec<(Generator, i64)> {
        let mut keys: Vec<(Generator, i64)> = self
            .ops
            .keys()
            .chain(reference.ops.keys())
            .filter(|(g, _)| g.degree().abs() <= max_degree)
            .copied()
            .collect();
        keys.sort();
        keys.dedup();
        keys
    }

    /// Unknown index of entry `(r, c)` of `P_k`.
    fn unknown(&self, k: i64, r: usize, c: usize) -> usize {
        let before: usize = self.slices[..(k - self.lo) as usize].iter().map(|s| s.dim() * s.dim()).sum();
        before + r * self.dim(k) + c
    }

    fn intertwining_solutions(&self, reference: &WindowedModule, max_degree: i64) -> Vec<Vec<Scalar>> {
        let unknowns: usize = self.slices.iter().map(|s| s.dim() * s.dim()).sum();
        let mut rows = Vec::new();
        for (g, k) in self.generator_union(reference, max_degree) {
            let t = k + g.degree();
            let m = self.op_or_zero(&g, k).expect("in window").matrix;
            let r = reference.op_or_zero(&g, k).expect("in window").matrix;
            let (ds, dt) = (self.dim(k), self.dim(t));
            for i in 0..dt {
                for j in 0..ds {
                    // (M P_k)[i, j] − (P_t R)[i, j]
                    let mut row = vec![Scalar::zero(); unknowns];
                    for l in 0..ds {
                        if !m[(i, l)].is_zero() {
                            row[self.unknown(k, l, j)] += &m[(i, l)];
                        }
                    }
                    for l in 0..dt {
                        if !r[(l, j)].is_zero() {
                            row[self.unknown(t, i, l)] -= &r[(l, j)];
                        }
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        if rows.is_empty() {
            return (0..unknowns)
                .map(|u| (0..unknowns).map(|v| if u == v { Scalar::one() } else { Scalar::zero() }).collect())
                .collect();
        }
        Matrix::from_rows(rows).kernel()
    }

    fn blocks_of(&self, x: &[Scalar]) -> Vec<Matrix> {
        self.slices
            .iter()
            .map(|s| {
                let d = s.dim();
                Matrix::from_rows(
                    (0..d).map(|r| (0..d).map(|c| x[self.unknown(s.offset, r, c)].clone()).collect()).collect(),
                )
            })
            .collect()
    }

    /// Tries deterministic combinations of the solution basis, then seeded random ones.
    fn pick_invertible(&self, reference: &WindowedModule, basis: &[Vec<Scalar>]) -> Option<Vec<Matrix>> {
        if basis.is_empty() {
            return None;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let tries = (1..=8i64)
            .map(|t| basis.iter().enumerate().map(|(j, _)| int(t.pow(j as u32 % 6))).collect::<Vec<_>>())
            .chain((0..16).map(|_| basis.iter().map(|_| int(rng.gen_range(-9..=9))).collect()));
        for coeffs in tries {
            let mut x = vec![Scalar::zero(); basis[0].len()];
            for (c, v) in coeffs.iter().zip(basis) {
                for (xi, vi) in x.iter_mut().zip(v) {
                    *xi += c * vi;
                }
            }
            let blocks = self.blocks_of(&x);
            if blocks.iter().all(Matrix::is_invertible) && self.intertwines(reference, &blocks) {
                return Some(blocks);
            }
        }
        None
    }

    fn intertwines(&self, reference: &WindowedModule, p: &[Matrix]) -> bool {
        self.generator_union(reference, self.width()).into_iter().all(|(g, k)| {
            let t = k + g.degree();
            let m = self.op_or_zero(&g, k).expect("in window").matrix;
            let r = reference.op_or_zero(&g, k).expect("in window").matrix;
            m.mul(&p[(k - self.lo) as usize]) == p[(t - self.lo) as usize].mul(&r)
        })
    }

    /// Applies a seeded random invertible integer change of basis on every slice.
    pub fn scramble(&self, seed: u64) -> WindowedModule {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q: Vec<Matrix> = self
            .slices
            .iter()
            .map(|s| loop {
                let d = s.dim();
                let m = Matrix::from_rows(
                    (0..d).map(|_| (0..d).map(|_| int(rng.gen_range(-3..=3))).collect()).collect(),
                );
                if d == 0 || m.is_invertible() {
                    break if d == 0 { Matrix::zeros(0, 0) } else { m };
                }
            })
            .collect();
        let mut out = self.change_basis(&q);
        out.name = format!("{} (scrambled, seed {seed})", self.name);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verma::{build_verma, HighestWeightData, VermaConfig};

    #[test]
    fn scrambled_loop_module_round_trips() {
        let spec = ModuleSpec::loop_module(1, frac(1, 2), frac(1, 3));
        let data = from_catalog(&spec, (-3, 3)).scramble(7);
        assert_eq!(data.catalog_match().unwrap().spec, Some(spec));
    }

    #[test]
    fn intermediate_series_is_trivial_fiber_case() {
        let data = from_catalog(&ModuleSpec::IntAB { a: frac(1, 2), b: frac(1, 3) }, (-3, 3));
        assert_eq!(
            data.catalog_match().unwrap().spec,
            Some(ModuleSpec::loop_module(0, frac(1, 2), frac(1, 3)))
        );
    }

    #[test]
    fn heisenberg_data_matches() {
        let spec = ModuleSpec::HVirABC { a: int(0), b: int(0), c: int(5) };
        let data = from_catalog(&spec, (-2, 2)).scramble(3);
        assert_eq!(data.catalog_match().unwrap().spec, Some(spec));
    }

    #[test]
    fn verma_window_does_not_match() {
        let m = build_verma(HighestWeightData::new(frac(1, 2), int(2), frac(1, 3)), &VermaConfig::new(2)).unwrap();
        let r = super::super::from_verma(&m).catalog_match().unwrap();
        assert_eq!(r.spec, None);
    }

    #[test]
    fn narrow_window() {
        let data = from_catalog(&ModuleSpec::loop_module(0, int(0), int(0)), (0, 1));
        assert!(matches!(data.catalog_match(), Err(AnalyzerError::WindowTooNarrow(_))));
    }
}
