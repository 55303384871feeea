use serde::Serialize;

use super::{AnalyzerError, WindowedModule};
use crate::algebra::Generator;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// The stacked map `d_i ⊕ d_{i+1} ⊕ e_i ⊕ f_i ⊕ h_i : V_k → V_{k+i} ⊕ V_{k+i+1}` and its kernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InjectivityReport {
    pub k: i64,
    pub i: i64,
    pub dim_vk: usize,
    pub stacked: Matrix,
    pub kernel_dim: usize,
    pub kernel_basis: Vec<Vec<Scalar>>,
}

impl InjectivityReport {
    pub fn is_injective(&self) -> bool {
        self.kernel_dim == 0
    }
}

#[derive(Serialize)]
struct Json {
    k: i64,
    i: i64,
    #[serde(rename = "dimV_k")]
    dim_vk: usize,
    kernel_dim: usize,
    kernel_basis: Vec<Vec<String>>,
}

impl Serialize for InjectivityReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Json {
            k: self.k,
            i: self.i,
            dim_vk: self.dim_vk,
            kernel_dim: self.kernel_dim,
            kernel_basis: self
                .kernel_basis
                .iter()
                .map(|v| v.iter().map(crate::scalar::fmt_scalar).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl WindowedModule {
    /// Assembles the five restrictions from `V_k` and computes the exact kernel.
    /// Generators outside the acting algebra contribute zero blocks.
    pub fn eq41_injectivity(&self, k: i64, i: i64) -> Result<InjectivityReport, AnalyzerError> {
        if i == 0 {
            return Err(AnalyzerError::ZeroShift);
        }
        for offset in [k, k + i, k + i + 1] {
            if !self.contains(offset) {
                return Err(AnalyzerError::OutOfWindow(offset));
            }
        }
        let gens = [Generator::d(i), Generator::d(i + 1), Generator::e(i), Generator::f(i), Generator::h(i)];
        let mut blocks = Vec::with_capacity(gens.len());
        for g in &gens {
            let op = self.op_or_zero(g, k).expect("targets checked above");
            if !op.is_full() {
                return Err(AnalyzerError::PartialOperator { generator: *g, offset: k });
            }
            blocks.push(op.matrix);
        }
        let dim_vk = self.dim(k);
        let refs: Vec<&Matrix> = blocks.iter().collect();
        let stacked = Matrix::vstack(&refs, dim_vk);
        let kernel_basis = stacked.kernel();
        Ok(InjectivityReport { k, i, dim_vk, kernel_dim: kernel_basis.len(), kernel_basis, stacked })
    }
}

#[cfg(test)]
mod tests {
    use crate::analyzer::{from_catalog, from_verma, AnalyzerError};
    use crate::catalog::ModuleSpec;
    use crate::scalar::{frac, int};
    use crate::verma::{build_verma, HighestWeightData, VermaConfig};

    #[test]
    fn examples() {
        let w = from_catalog(&ModuleSpec::loop_module(1, frac(1, 2), frac(1, 3)), (-3, 3));
        let r = w.eq41_injectivity(0, 1).unwrap();
        assert_eq!((r.dim_vk, r.kernel_dim), (2, 0));
        assert_eq!(r.stacked.rows(), 10);

        let ab = from_catalog(&ModuleSpec::IntAB { a: frac(1, 2), b: frac(1, 3) }, (-3, 3));
        let r = ab.eq41_injectivity(0, 1).unwrap();
        assert!(r.is_injective());
        assert_eq!(r.stacked[(0, 0)], frac(5, 6));

        let m = build_verma(HighestWeightData::new(frac(1, 2), int(2), frac(1, 3)), &VermaConfig::new(3)).unwrap();
        let top = from_verma(&m).eq41_injectivity(0, 1).unwrap();
        assert_eq!(top.kernel_dim, top.dim_vk);
    }

    #[test]
    fn errors() {
        let w = from_catalog(&ModuleSpec::loop_module(0, int(0), int(0)), (-2, 2));
        assert_eq!(w.eq41_injectivity(0, 0), Err(AnalyzerError::ZeroShift));
        assert_eq!(w.eq41_injectivity(1, 1), Err(AnalyzerError::OutOfWindow(3)));
        assert_eq!(w.eq41_injectivity(5, -1), Err(AnalyzerError::OutOfWindow(5)));
    }
}
