//! Window-based analysis of modules presented by explicit action matrices.
//!
//! A [`WindowedModule`] keeps the weight spaces at integer offsets `lo..=hi`
//! and, for every generator of the acting algebra, the matrix from each offset
//! to the shifted offset whenever both lie in the window. An operator is only
//! asserted where its image exists: matrices may carry a column mask marking
//! basis vectors whose image leaves a truncation.

mod extremal;
mod injectivity;
mod matching;

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{bracket_basis, AlgebraSpec, Generator};
use crate::catalog::ModuleSpec;
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::verma::TruncatedModule;

pub use extremal::{Direction, ExtremalVector, Witness, WitnessReport, WitnessVerdict};
pub use injectivity::InjectivityReport;
pub use matching::MatchReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalyzerError {
    #[error("offset {0} lies outside the window")]
    OutOfWindow(i64),
    #[error("the shift i must be nonzero")]
    ZeroShift,
    #[error("window too narrow: {0}")]
    WindowTooNarrow(String),
    #[error("operator {generator} at offset {offset} is not defined on the whole weight space")]
    PartialOperator { generator: Generator, offset: i64 },
}

/// Basis data of one weight space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slice {
    pub offset: i64,
    pub names: Vec<String>,
    /// `(d₀, h₀)` eigenvalue label of each basis vector.
    pub weights: Vec<(Scalar, Scalar)>,
}

impl Slice {
    pub fn dim(&self) -> usize {
        self.names.len()
    }
}

/// Matrix of one generator from one offset, with an optional "defined" column mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpMatrix {
    pub matrix: Matrix,
    pub defined: Option<Vec<bool>>,
}

impl OpMatrix {
    pub fn full(matrix: Matrix) -> Self {
        Self { matrix, defined: None }
    }

    pub fn is_full(&self) -> bool {
        self.defined.as_ref().map_or(true, |d| d.iter().all(|&x| x))
    }

    pub fn is_defined(&self, col: usize) -> bool {
        self.defined.as_ref().map_or(true, |d| d[col])
    }

    /// Image of a vector, or `None` when it touches an undefined column.
    pub fn apply(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if v.iter().enumerate().any(|(j, x)| !x.is_zero() && !self.is_defined(j)) {
            return None;
        }
        Some(self.matrix.apply(v))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowedModule {
    name: String,
    algebra: AlgebraSpec,
    lo: i64,
    hi: i64,
    slices: Vec<Slice>,
    ops: BTreeMap<(Generator, i64), OpMatrix>,
}

/// A failure of `ρ([x,y]) = ρ(x)ρ(y) − ρ(y)ρ(x)` on one basis vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyDefect {
    pub x: Generator,
    pub y: Generator,
    pub offset: i64,
    pub column: usize,
}

impl WindowedModule {
    /// Assembles a windowed module from raw data. Slices must cover `lo..=hi` in order.
    pub fn new(
        name: impl Into<String>,
        algebra: AlgebraSpec,
        (lo, hi): (i64, i64),
        slices: Vec<Slice>,
        ops: BTreeMap<(Generator, i64), OpMatrix>,
    ) -> Self {
        assert_eq!(slices.len() as i64, (hi - lo + 1).max(0), "one slice per offset");
        assert!(slices.iter().zip(lo..).all(|(s, k)| s.offset == k), "slices out of order");
        for ((g, k), op) in &ops {
            let src = &slices[(k - lo) as usize];
            let dst = &slices[(k + g.degree() - lo) as usize];
            assert_eq!(op.matrix.cols(), src.dim(), "{g} at {k}: column count");
            assert_eq!(op.matrix.rows(), dst.dim(), "{g} at {k}: row count");
        }
        Self { name: name.into(), algebra, lo, hi, slices, ops }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra(&self) -> AlgebraSpec {
        self.algebra
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn width(&self) -> i64 {
        (self.hi - self.lo + 1).max(0)
    }

    pub fn contains(&self, k: i64) -> bool {
        self.lo <= k && k <= self.hi
    }

    pub fn offsets(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }

    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    pub fn slice(&self, k: i64) -> Option<&Slice> {
        self.contains(k).then(|| &self.slices[(k - self.lo) as usize])
    }

    pub fn dim(&self, k: i64) -> usize {
        self.slice(k).map_or(0, Slice::dim)
    }

    pub fn op(&self, g: &Generator, k: i64) -> Option<&OpMatrix> {
        self.ops.get(&(*g, k))
    }

    pub fn ops(&self) -> impl Iterator<Item = (&(Generator, i64), &OpMatrix)> {
        self.ops.iter()
    }

    /// Matrix of `g` at offset `k`, zero when `g` is outside the acting algebra.
    pub(crate) fn op_or_zero(&self, g: &Generator, k: i64) -> Option<OpMatrix> {
        if !self.contains(k) || !self.contains(k + g.degree()) {
            return None;
        }
        Some(match self.op(g, k) {
            Some(op) => op.clone(),
            None => OpMatrix::full(Matrix::zeros(self.dim(k + g.degree()), self.dim(k))),
        })
    }

    /// The set of `(d₀, h₀)` weight labels of nonzero weight vectors in the window.
    pub fn support(&self) -> BTreeSet<(Scalar, Scalar)> {
        self.slices.iter().flat_map(|s| s.weights.iter().cloned()).collect()
    }

    /// Checks `ρ([x,y]) = ρ(x)ρ(y) − ρ(y)ρ(x)` on every basis vector where all
    /// compositions are in-window and defined, for generators with `|degree| ≤ max_degree`.
    pub fn bracket_consistency(&self, max_degree: i64) -> Vec<ConsistencyDefect> {
        let gens: Vec<Generator> = self
            .algebra
            .generators(-max_degree, max_degree)
            .into_iter()
            .filter(|g| self.ops.keys().any(|(h, _)| h == g))
            .collect();
        let mut defects = Vec::new();
        for x in &gens {
            for y in &gens {
                let bracket = bracket_basis(x, y);
                for k in self.offsets() {
                    let target = k + x.degree() + y.degree();
                    let (Some(ya), Some(xb)) = (self.op(y, k), self.op(x, k + y.degree())) else {
                        continue;
                    };
                    let (Some(xa), Some(yb)) = (self.op(x, k), self.op(y, k + x.degree())) else {
                        continue;
                    };
                    if !self.contains(target) {
                        continue;
                    }
                    let br_ops: Option<Vec<(&OpMatrix, &Scalar)>> =
                        bracket.iter().map(|(g, c)| self.op(g, k).map(|op| (op, c))).collect();
                    let Some(br_ops) = br_ops else { continue };
                    let dim_t = self.dim(target);
                    let mut lhs = Matrix::zeros(dim_t, self.dim(k));
                    let mut valid = vec![true; self.dim(k)];
                    for (op, c) in &br_ops {
                        lhs = lhs.add(&op.matrix.scaled(c));
                        valid.iter_mut().enumerate().for_each(|(j, v)| *v &= op.is_defined(j));
                    }
                    let rhs = xb.matrix.mul(&ya.matrix).sub(&yb.matrix.mul(&xa.matrix));
                    let xy_ok = composable(ya, xb);
                    let yx_ok = composable(xa, yb);
                    for col in 0..self.dim(k) {
                        if !(valid[col] && xy_ok[col] && yx_ok[col]) {
                            continue;
                        }
                        if (0..dim_t).any(|r| lhs[(r, col)] != rhs[(r, col)]) {
                            defects.push(ConsistencyDefect { x: *x, y: *y, offset: k, column: col });
                        }
                    }
                }
            }
        }
        defects
    }

    /// Applies a per-offset change of basis: new coordinates are `Q_k · old`.
    pub fn change_basis(&self, q: &[Matrix]) -> WindowedModule {
        assert_eq!(q.len(), self.slices.len());
        let inverses: Vec<Matrix> = q.iter().map(|m| m.inverse().expect("invertible change of basis")).collect();
        let ops = self
            .ops
            .iter()
            .map(|((g, k), op)| {
                assert!(op.is_full(), "cannot change basis under a partial operator");
                let src = (k - self.lo) as usize;
                let dst = (k + g.degree() - self.lo) as usize;
                let m = q[dst].mul(&op.matrix).mul(&inverses[src]);
                ((*g, *k), OpMatrix::full(m))
            })
            .collect();
        let slices = self
            .slices
            .iter()
            .map(|s| Slice {
                offset: s.offset,
                names: (0..s.dim()).map(|j| format!("w{}_{j}", s.offset)).collect(),
                weights: s.weights.clone(),
            })
            .collect();
        WindowedModule {
            name: format!("{} (rebased)", self.name),
            algebra: self.algebra,
            lo: self.lo,
            hi: self.hi,
            slices,
            ops,
        }
    }
}

/// Columns on which `second ∘ first` is defined.
fn composable(first: &OpMatrix, second: &OpMatrix) -> Vec<bool> {
    (0..first.matrix.cols())
        .map(|j| {
            first.is_defined(j)
                && (0..first.matrix.rows()).all(|r| first.matrix[(r, j)].is_zero() || second.is_defined(r))
        })
        .collect()
}

/// Materializes a catalog module on the offsets `lo..=hi`.
///
/// Virasoro-series modules are presented as modules over the full algebra
/// with `e, f, h` acting as 0; 𝓓- and 𝓣₂-modules keep their own algebra.
pub fn from_catalog(spec: &ModuleSpec, (lo, hi): (i64, i64)) -> WindowedModule {
    let module = spec.module();
    let acting = module.algebra();
    let algebra = if acting == AlgebraSpec::Vir { AlgebraSpec::L } else { acting };
    let slices: Vec<Slice> = (lo..=hi)
        .map(|k| {
            let basis = module.basis_at(k);
            Slice {
                offset: k,
                names: basis.iter().map(|l| module.label_name(l)).collect(),
                weights: basis.iter().map(|l| module.weight(l)).collect(),
            }
        })
        .collect();
    let mut ops = BTreeMap::new();
    if lo <= hi {
        for g in algebra.generators(lo - hi, hi - lo) {
            for k in lo..=hi {
                let t = k + g.degree();
                if t < lo || t > hi {
                    continue;
                }
                let src = module.basis_at(k);
                let dst = module.basis_at(t);
                let mut m = Matrix::zeros(dst.len(), src.len());
                if acting.contains(&g) {
                    for (j, label) in src.iter().enumerate() {
                        for (img, c) in module.act_basis(&g, label).iter() {
                            let i = dst.iter().position(|l| l == img).expect("image stays in weight space");
                            m[(i, j)] = c.clone();
                        }
                    }
                }
                ops.insert((g, k), OpMatrix::full(m));
            }
        }
    }
    WindowedModule::new(module.name(), algebra, (lo, hi), slices, ops)
}

/// Exports a truncated highest-weight module: offset `-n` holds depth `n`
/// (all charges), and offsets 1 to 3 are empty so that raising images of the
/// top are in-window. Columns whose image exceeds the charge bound are masked.
pub fn from_verma(module: &TruncatedModule) -> WindowedModule {
    let (n_max, s_max) = (module.depth_bound(), module.charge_bound());
    let (lo, hi) = (-n_max, 3);
    // concatenated basis per offset: (charge, index within slice)
    let layout = |k: i64| -> Vec<(i64, usize)> {
        if k > 0 {
            return Vec::new();
        }
        let n = -k;
        module
            .charges_at(n)
            .flat_map(|s| (0..module.slice(n, s).len()).map(move |j| (s, j)))
            .collect()
    };
    let slices: Vec<Slice> = (lo..=hi)
        .map(|k| {
            let entries = layout(k);
            let n = -k;
            Slice {
                offset: k,
                names: entries.iter().map(|&(s, j)| module.slice(n, s)[j].to_string()).collect(),
                weights: entries.iter().map(|&(s, j)| module.weight_of(&module.slice(n, s)[j])).collect(),
            }
        })
        .collect();
    let mut ops = BTreeMap::new();
    for g in AlgebraSpec::L.generators(lo - hi, hi - lo) {
        for k in lo..=hi {
            let t = k + g.degree();
            if t < lo || t > hi {
                continue;
            }
            let (src, dst) = (layout(k), layout(t));
            let mut m = Matrix::zeros(dst.len(), src.len());
            let mut defined = vec![true; src.len()];
            let mut col = 0;
            let n = -k;
            for s in module.charges_at(n).filter(|_| k <= 0) {
                let width = module.slice(n, s).len();
                if width == 0 {
                    continue;
                }
                let (tn, ts) = TruncatedModule::target_slice(&g, n, s);
                if tn >= 0 && ts > s_max {
                    defined[col..col + width].iter_mut().for_each(|d| *d = false);
                } else if tn >= 0 && ts >= -tn {
                    let block = module.action_matrix(&g, n, s).expect("target inside truncation");
                    let row0 = dst.iter().position(|&(ds, _)| ds == ts).expect("target slice in layout");
                    for r in 0..block.rows() {
                        for c in 0..block.cols() {
                            if !block[(r, c)].is_zero() {
                                m[(row0 + r, col + c)] = block[(r, c)].clone();
                            }
                        }
                    }
                }
                col += width;
            }
            let defined = if defined.iter().all(|&d| d) { None } else { Some(defined) };
            ops.insert((g, k), OpMatrix { matrix: m, defined });
        }
    }
    let hw = module.highest_weight();
    let name = format!("verma(lamd={},mu={},c={};N={},S={})", hw.lambda_d, hw.mu, hw.c, n_max, s_max);
    WindowedModule::new(name, AlgebraSpec::L, (lo, hi), slices, ops)
}
