use num_traits::Zero;
use serde::Serialize;

use super::{AnalyzerError, OpMatrix, WindowedModule};
use crate::algebra::{Family, Generator, LOWERING_KILL_SET, RAISING_KILL_SET};
use crate::linalg::Matrix;
use crate::scalar::{fmt_scalar, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Highest,
    Lowest,
}

impl Direction {
    pub fn kill_set(self) -> &'static [Generator] {
        match self {
            Direction::Highest => &RAISING_KILL_SET,
            Direction::Lowest => &LOWERING_KILL_SET,
        }
    }
}

impl std::str::FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "highest" => Ok(Direction::Highest),
            "lowest" => Ok(Direction::Lowest),
            other => Err(format!("unknown direction `{other}` (expected highest or lowest)")),
        }
    }
}

/// A vector of one weight slice, in coordinates of that slice's basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalVector {
    pub offset: i64,
    pub coefficients: Vec<Scalar>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WitnessVerdict {
    #[serde(rename = "witness")]
    Witness,
    #[serde(rename = "boundary-inconclusive")]
    BoundaryInconclusive,
    #[serde(rename = "no finitely-supported witness in window")]
    NoWitness,
}

impl std::fmt::Display for WitnessVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            WitnessVerdict::Witness => "witness",
            WitnessVerdict::BoundaryInconclusive => "boundary-inconclusive",
            WitnessVerdict::NoWitness => "no finitely-supported witness in window",
        })
    }
}

/// A weight vector spanning a one-dimensional submodule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub offset: i64,
    pub vector: String,
    #[serde(skip)]
    pub coefficients: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    pub verdict: WitnessVerdict,
    pub witnesses: Vec<Witness>,
    /// Interior offsets whose weight space is not reached from the rest of the window.
    pub unreached: Vec<i64>,
}

impl WindowedModule {
    /// Renders slice coordinates as a combination of basis names.
    pub fn describe(&self, offset: i64, coefficients: &[Scalar]) -> String {
        let Some(slice) = self.slice(offset) else { return "0".into() };
        let terms: Vec<String> = coefficients
            .iter()
            .zip(&slice.names)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, n)| format!("{}·{n}", fmt_scalar(c)))
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// Joint kernel of the kill set at every interior offset. Kill-set
    /// generators outside the acting algebra are skipped, and only columns on
    /// which every kill-set operator is defined take part.
    pub fn find_extremal_vectors(&self, direction: Direction) -> Result<Vec<ExtremalVector>, AnalyzerError> {
        let kill: Vec<Generator> =
            direction.kill_set().iter().copied().filter(|g| self.algebra.contains(g)).collect();
        let interior: Vec<i64> = self
            .offsets()
            .filter(|&k| direction.kill_set().iter().all(|g| self.contains(k + g.degree())))
            .collect();
        if interior.is_empty() {
            return Err(AnalyzerError::WindowTooNarrow(format!(
                "no offset of [{}, {}] keeps all kill-set images in the window",
                self.lo, self.hi
            )));
        }
        let mut out = Vec::new();
        for k in interior {
            let ops: Vec<OpMatrix> = kill.iter().map(|g| self.op_or_zero(g, k).expect("interior offset")).collect();
            let refs: Vec<&Matrix> = ops.iter().map(|op| &op.matrix).collect();
            let mut found = Vec::new();
            for group in self.weight_groups(k) {
                let keep: Vec<usize> = group.into_iter().filter(|&j| ops.iter().all(|op| op.is_defined(j))).collect();
                found.extend(joint_kernel(&refs, &keep, self.dim(k)));
            }
            found.sort_by_key(|v: &Vec<Scalar>| v.iter().position(|x| !x.is_zero()));
            out.extend(found.into_iter().map(|coefficients| ExtremalVector { offset: k, coefficients }));
        }
        Ok(out)
    }

    /// One-dimensional submodules spanned by weight vectors at offsets `k` with
    /// `k ± 2` in the window.
    pub fn submodule_witness(&self) -> WitnessReport {
        let interior: Vec<i64> = self.offsets().filter(|&k| self.contains(k - 2) && self.contains(k + 2)).collect();
        let mut witnesses = Vec::new();
        let mut unreached = Vec::new();
        for &k in &interior {
            witnesses.extend(self.witnesses_at(k));
            if !self.reached(k) {
                unreached.push(k);
            }
        }
        let verdict = if !witnesses.is_empty() {
            WitnessVerdict::Witness
        } else if !unreached.is_empty() {
            WitnessVerdict::BoundaryInconclusive
        } else {
            WitnessVerdict::NoWitness
        };
        WitnessReport { verdict, witnesses, unreached }
    }

    fn witnesses_at(&self, k: i64) -> Vec<Witness> {
        let dim = self.dim(k);
        let slice = self.slice(k).expect("interior offset");
        // every operator leaving the weight space must kill the vector
        let movers: Vec<&OpMatrix> = self
            .ops
            .iter()
            .filter(|((g, src), _)| *src == k && (g.degree() != 0 || matches!(g.family(), Family::E | Family::F)))
            .map(|(_, op)| op)
            .collect();
        let keep: Vec<usize> = (0..dim).filter(|&j| movers.iter().all(|op| op.is_defined(j))).collect();
        let mut labels = slice.weights.clone();
        labels.sort();
        labels.dedup();
        let mut out = Vec::new();
        for (lambda, mu) in labels {
            let mut blocks: Vec<Matrix> = movers.iter().map(|op| op.matrix.clone()).collect();
            for (g, eigen) in [(Generator::d(0), &lambda), (Generator::h(0), &mu)] {
                if let Some(op) = self.op(&g, k) {
                    blocks.push(op.matrix.sub(&Matrix::scalar(dim, eigen)));
                }
            }
            let refs: Vec<&Matrix> = blocks.iter().collect();
            let h0 = self.op(&Generator::h(0), k).filter(|op| op.matrix.is_diagonal());
            let keep: Vec<usize> =
                keep.iter().copied().filter(|&j| h0.map_or(true, |op| op.matrix[(j, j)] == mu)).collect();
            for v in joint_kernel(&refs, &keep, dim) {
                if self.degree_zero_stable(k, &v) {
                    out.push(Witness { offset: k, vector: self.describe(k, &v), coefficients: v });
                }
            }
        }
        out
    }

    fn degree_zero_stable(&self, k: i64, v: &[Scalar]) -> bool {
        self.ops.iter().filter(|((g, src), _)| *src == k && g.degree() == 0).all(|(_, op)| {
            op.apply(v).map_or(false, |w| Matrix::from_rows(vec![v.to_vec(), w]).rank() <= 1)
        })
    }

    /// Basis indices of `V_k` grouped by `h₀` eigenvalue when `h₀` is diagonal there,
    /// otherwise a single group.
    fn weight_groups(&self, k: i64) -> Vec<Vec<usize>> {
        let dim = self.dim(k);
        match self.op(&Generator::h(0), k) {
            Some(op) if op.matrix.is_diagonal() => {
                let mut groups: std::collections::BTreeMap<Scalar, Vec<usize>> = Default::default();
                for j in 0..dim {
                    groups.entry(op.matrix[(j, j)].clone()).or_default().push(j);
                }
                groups.into_values().collect()
            }
            _ => vec![(0..dim).collect()],
        }
    }

    /// Whether images from the other offsets span `V_k`.
    fn reached(&self, k: i64) -> bool {
        let dim = self.dim(k);
        let mut columns = Vec::new();
        for ((g, src), op) in &self.ops {
            if *src == k || src + g.degree() != k {
                continue;
            }
            for j in 0..op.matrix.cols() {
                if op.is_defined(j) {
                    columns.push(op.matrix.column(j));
                }
            }
        }
        if columns.is_empty() {
            return dim == 0;
        }
        Matrix::from_rows(columns).rank() == dim
    }
}

/// Kernel of the stacked `blocks` restricted to columns `keep`, embedded back into `dim` coordinates.
fn joint_kernel(blocks: &[&Matrix], keep: &[usize], dim: usize) -> Vec<Vec<Scalar>> {
    if keep.is_empty() {
        return Vec::new();
    }
    let rows: Vec<Vec<Scalar>> = blocks
        .iter()
        .flat_map(|m| (0..m.rows()).map(move |r| keep.iter().map(|&c| m[(r, c)].clone()).collect::<Vec<_>>()))
        .filter(|row| row.iter().any(|x| !x.is_zero()))
        .collect();
    let stacked = if rows.is_empty() { Matrix::zeros(0, keep.len()) } else { Matrix::from_rows(rows) };
    stacked
        .kernel()
        .into_iter()
        .map(|v| {
            let mut full = vec![Scalar::zero(); dim];
            for (&j, x) in keep.iter().zip(v) {
                full[j] = x;
            }
            full
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analyzer::{from_catalog, from_verma};
    use crate::catalog::ModuleSpec;
    use crate::scalar::{frac, int};
    use crate::verma::{build_verma, HighestWeightData, VermaConfig};

    #[test]
    fn extremal_examples() {
        let w = from_catalog(&ModuleSpec::loop_module(1, frac(1, 2), frac(1, 3)), (-3, 3));
        assert!(w.find_extremal_vectors(Direction::Highest).unwrap().is_empty());

        let w = from_catalog(&ModuleSpec::loop_module(0, int(0), int(0)), (-3, 3));
        let found = w.find_extremal_vectors(Direction::Highest).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(w.describe(found[0].offset, &found[0].coefficients), "1·u0⊗t^0");

        let narrow = from_catalog(&ModuleSpec::loop_module(0, int(0), int(0)), (0, 1));
        assert!(matches!(narrow.find_extremal_vectors(Direction::Lowest), Err(AnalyzerError::WindowTooNarrow(_))));
    }

    #[test]
    fn verma_extremal_vectors_match_singular_vectors() {
        let m = build_verma(HighestWeightData::new(frac(1, 2), int(2), frac(1, 3)), &VermaConfig::new(3)).unwrap();
        let w = from_verma(&m);
        let found = w.find_extremal_vectors(Direction::Highest).unwrap();
        let at_top: Vec<String> =
            found.iter().filter(|v| v.offset == 0).map(|v| w.describe(0, &v.coefficients)).collect();
        assert_eq!(at_top, ["1·v", "1·f0^3·v"]);
    }

    #[test]
    fn witness_examples() {
        let r = from_catalog(&ModuleSpec::IntAB { a: int(0), b: int(0) }, (-3, 3)).submodule_witness();
        assert_eq!(r.verdict, WitnessVerdict::Witness);
        assert_eq!(r.witnesses.iter().map(|w| w.vector.as_str()).collect::<Vec<_>>(), ["1·v0"]);

        let r = from_catalog(&ModuleSpec::IntAB { a: frac(1, 2), b: frac(1, 3) }, (-3, 3)).submodule_witness();
        assert_eq!(r.verdict, WitnessVerdict::NoWitness);

        let r = from_catalog(&ModuleSpec::loop_module(0, int(0), int(0)), (-3, 3)).submodule_witness();
        assert_eq!(r.witnesses.iter().map(|w| w.vector.as_str()).collect::<Vec<_>>(), ["1·u0⊗t^0"]);

        let r = from_catalog(&ModuleSpec::IntAB { a: int(0), b: int(1) }, (-3, 3)).submodule_witness();
        assert_eq!(r.verdict, WitnessVerdict::BoundaryInconclusive);
    }
}
