//! Polynomial maps from `ℕ₀^N` into an upper unitriangular group, with
//! left/right difference operators and exact symbolic degree computation.
//!
//! A map is stored as a unitriangular matrix of polynomials over `ℚ` in a
//! canonical block layout `[t(N), s1(N), ..., sk(N)]`: `t` is the active
//! argument block and each `si` is a symbolic shift block introduced by one
//! application of a difference operator. Working with symbolic shifts makes
//! every identity test quantify over all shift values at once: over `ℚ`, a
//! polynomial vanishing on all of `ℕ₀^M` is the zero polynomial.
//!
//! The degree is defined recursively: the identity map has degree `-inf`,
//! a map without occurrences of the active variables has degree `0` if it
//! is not the identity, and otherwise
//! `deg f = 1 + max(deg L(f), deg R(f))`, where `L(f) = f(t+s) f(t)^{-1}`
//! and `R(f) = f(t)^{-1} f(t+s)` with a fresh symbolic shift block `s`.
//! The lc-degree tracks the same recursion in the quotients that keep only
//! the first `i` diagonals.

use std::collections::HashMap;
use std::fmt;

use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::mpoly::{check_permutation, Layout, MPoly};
use crate::scalar::{RingTag, Scalar};
use crate::unitri::UniTri;

/// Which one-sided difference operator to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiffSide {
    Left,
    Right,
}

/// A polynomial map into the unitriangular group of size `n`, in `N`
/// active variables plus any number of symbolic shift blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMap {
    n: usize,
    active_len: usize,
    shift_count: usize,
    layout: Layout,
    matrix: UniTri<MPoly>,
}

fn canonical_layout(active_len: usize, shift_count: usize) -> Layout {
    let mut blocks: Vec<(String, usize)> = vec![("t".to_string(), active_len)];
    for i in 1..=shift_count {
        blocks.push((format!("s{i}"), active_len));
    }
    Layout::new(blocks).expect("canonical names are distinct")
}

impl PolyMap {
    /// The identity map `t -> I` in `n`-by-`n` matrices with `N = active_len`.
    pub fn identity(n: usize, active_len: usize) -> Result<PolyMap> {
        if active_len == 0 {
            return Err(Error::InvalidArgument("active block must be nonempty".into()));
        }
        let layout = canonical_layout(active_len, 0);
        let zero = MPoly::zero(RingTag::Rational, layout.clone());
        Ok(PolyMap { n, active_len, shift_count: 0, layout, matrix: UniTri::identity(n, zero) })
    }

    /// Build a plain map (no shift blocks) from `((row, col), entry)` pairs;
    /// entries must be rational polynomials in the layout `[t(N)]`.
    /// Unmentioned positions are zero.
    pub fn from_entries<I>(n: usize, active_len: usize, entries: I) -> Result<PolyMap>
    where
        I: IntoIterator<Item = ((usize, usize), MPoly)>,
    {
        let mut map = PolyMap::identity(n, active_len)?;
        for ((i, j), p) in entries {
            if !(1 <= i && i < j && j <= n) {
                return Err(Error::InvalidArgument(format!(
                    "({i},{j}) is not above the diagonal of a {n}-by-{n} matrix"
                )));
            }
            if p.ring() != RingTag::Rational {
                return Err(Error::RationalRequired(format!("entry ({i},{j})")));
            }
            if p.layout() != &map.layout {
                return Err(Error::LayoutMismatch(
                    format!("{:?}", map.layout),
                    format!("{:?}", p.layout()),
                ));
            }
            *map.matrix.get_mut(i, j) = p;
        }
        Ok(map)
    }

    /// Wrap an existing matrix of polynomials. All entries must share a
    /// canonical layout `[t(N), s1(N), ..., sk(N)]` over `ℚ`; `n >= 2`.
    pub fn from_matrix(matrix: UniTri<MPoly>) -> Result<PolyMap> {
        let n = matrix.n();
        let Some(((_, _), first)) = matrix.indexed_entries().next() else {
            return Err(Error::InvalidArgument(
                "cannot infer a layout from an empty matrix; use PolyMap::identity".into(),
            ));
        };
        let layout = first.layout().clone();
        let blocks = layout.blocks();
        let (ref t_name, active_len) = blocks[0];
        if t_name != "t" {
            return Err(Error::LayoutMismatch("[t(N), s1(N), ...]".into(), format!("{layout:?}")));
        }
        for (i, (name, len)) in blocks.iter().enumerate().skip(1) {
            if name != &format!("s{i}") || *len != active_len {
                return Err(Error::LayoutMismatch(
                    "[t(N), s1(N), ...]".into(),
                    format!("{layout:?}"),
                ));
            }
        }
        for ((i, j), p) in matrix.indexed_entries() {
            if p.ring() != RingTag::Rational {
                return Err(Error::RationalRequired(format!("entry ({i},{j})")));
            }
            if p.layout() != &layout {
                return Err(Error::LayoutMismatch(
                    format!("{:?}", layout),
                    format!("entry ({i},{j}): {:?}", p.layout()),
                ));
            }
        }
        Ok(PolyMap { n, active_len, shift_count: blocks.len() - 1, layout, matrix })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of active variables `N`.
    pub fn active_len(&self) -> usize {
        self.active_len
    }

    /// Number of symbolic shift blocks accumulated by differencing.
    pub fn shift_count(&self) -> usize {
        self.shift_count
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn matrix(&self) -> &UniTri<MPoly> {
        &self.matrix
    }

    /// Entry at `(i, j)`, `1 <= i < j <= n`.
    pub fn entry(&self, i: usize, j: usize) -> &MPoly {
        self.matrix.get(i, j)
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    /// True when no entry mentions an active variable (the map may still
    /// depend on shift blocks).
    pub fn is_t_constant(&self) -> bool {
        self.matrix
            .indexed_entries()
            .all(|(_, p)| p.degree_in_block("t") <= Degree::Fin(0))
    }

    /// True when no entry mentions any variable at all.
    pub fn is_constant(&self) -> bool {
        self.matrix.indexed_entries().all(|(_, p)| p.is_constant())
    }

    /// Lower-central-series level of the image: the largest `k` such that
    /// all diagonals below `k` vanish identically; `n` for the identity map.
    pub fn lc_height(&self) -> usize {
        self.matrix.lcs_membership()
    }

    /// One-sided difference with a fresh symbolic shift block:
    /// left is `t -> f(t+s) f(t)^{-1}`, right is `t -> f(t)^{-1} f(t+s)`.
    pub fn diff(&self, side: DiffSide) -> PolyMap {
        self.diff_truncated(side, self.n.saturating_sub(1))
    }

    pub fn diff_left(&self) -> PolyMap {
        self.diff(DiffSide::Left)
    }

    pub fn diff_right(&self) -> PolyMap {
        self.diff(DiffSide::Right)
    }

    /// Difference computed in the quotient keeping diagonals `1..=level`.
    fn diff_truncated(&self, side: DiffSide, level: usize) -> PolyMap {
        let fresh = format!("s{}", self.shift_count + 1);
        let layout = self
            .layout
            .with_appended(&fresh, self.active_len)
            .expect("fresh shift name is unused");
        let shifted = self.matrix.map(|p| p.shift(&fresh).expect("fresh shift name is unused"));
        let base = self.matrix.map(|p| p.embed(&layout).expect("superset layout"));
        let product = match side {
            DiffSide::Left => shifted.mul(&base.inv()),
            DiffSide::Right => base.inv().mul(&shifted),
        }
        .expect("layouts agree by construction");
        PolyMap {
            n: self.n,
            active_len: self.active_len,
            shift_count: self.shift_count + 1,
            layout,
            matrix: product.truncate(level),
        }
    }

    /// Exact symbolic degree of the map.
    pub fn degree(&self) -> Result<Degree> {
        self.degree_at_level(self.n.saturating_sub(1))
    }

    /// Exact symbolic degree in the quotient keeping diagonals `1..=level`.
    pub fn degree_at_level(&self, level: usize) -> Result<Degree> {
        let start = PolyMap { matrix: self.matrix.truncate(level), ..self.clone() };
        // A certified recursion cap: the chain-sum bound with every entry
        // degree clamped up to zero dominates the true degree, so needing
        // more differences than that is an internal error.
        let cap = start.clamped_chain_bound() + 1;
        let mut memo: HashMap<UniTri<MPoly>, Degree> = HashMap::new();
        start.degree_rec(level, cap, &mut memo).map_err(|e| match e {
            Error::DegreeCapExceeded(_) => Error::DegreeCapExceeded(cap),
            other => other,
        })
    }

    fn degree_rec(
        &self,
        level: usize,
        depth_left: usize,
        memo: &mut HashMap<UniTri<MPoly>, Degree>,
    ) -> Result<Degree> {
        if self.matrix.is_identity() {
            return Ok(Degree::NegInf);
        }
        if self.is_t_constant() {
            return Ok(Degree::Fin(0));
        }
        if let Some(d) = memo.get(&self.matrix) {
            return Ok(*d);
        }
        if depth_left == 0 {
            return Err(Error::DegreeCapExceeded(depth_left));
        }
        let left = self.diff_truncated(DiffSide::Left, level).degree_rec(level, depth_left - 1, memo)?;
        let right =
            self.diff_truncated(DiffSide::Right, level).degree_rec(level, depth_left - 1, memo)?;
        let degree = match left.max(right) {
            // Both differences vanish only for maps without active
            // variables, which were handled above.
            Degree::NegInf => {
                return Err(Error::Internal(
                    "both differences of a nonconstant map vanished".into(),
                ))
            }
            Degree::Fin(d) => Degree::Fin(d + 1),
        };
        memo.insert(self.matrix.clone(), degree);
        Ok(degree)
    }

    /// Longest chain sum over entry degrees in the active variables, with
    /// every degree clamped up to zero. This always dominates the exact
    /// degree and is used only to certify recursion depth.
    fn clamped_chain_bound(&self) -> usize {
        if self.n <= 1 {
            return 0;
        }
        let mut lp = vec![0u64; self.n + 1];
        for j in 2..=self.n {
            lp[j] = (1..j)
                .map(|i| {
                    let w = match self.matrix.get(i, j).degree_in_block("t") {
                        Degree::NegInf => 0,
                        Degree::Fin(d) => d,
                    };
                    lp[i] + w
                })
                .max()
                .unwrap_or(0);
        }
        lp[self.n] as usize
    }

    /// Per-entry total degrees, with `d(i, i) = 0` and `-inf` for zero
    /// entries.
    fn entry_degree(&self, i: usize, j: usize) -> Degree {
        if i == j {
            Degree::Fin(0)
        } else {
            self.matrix.get(i, j).total_degree()
        }
    }

    /// Lower and upper bounds for the degree read off the entry degrees:
    /// the lower bound is the largest first-diagonal degree, the upper
    /// bound the largest chain sum `d(k1,k2) + ... + d(k_{n-1}, k_n)` over
    /// `1 = k1 <= ... <= kn = n`, with `-inf` absorbing.
    pub fn degree_bounds(&self) -> (Degree, Degree) {
        if self.n <= 1 {
            return (Degree::NegInf, Degree::NegInf);
        }
        let lower = (1..self.n)
            .map(|k| self.entry_degree(k, k + 1))
            .max()
            .unwrap_or(Degree::NegInf);
        let mut lp = vec![Degree::NegInf; self.n + 1];
        lp[1] = Degree::Fin(0);
        for j in 2..=self.n {
            lp[j] = (1..j)
                .map(|i| lp[i] + self.entry_degree(i, j))
                .max()
                .unwrap_or(Degree::NegInf);
        }
        (lower, lp[self.n])
    }

    /// Componentwise brackets for the lc-degree. The first component is
    /// exact: the largest first-diagonal entry degree. For `i >= 2` the
    /// upper bound is the largest chain sum over windows `a <= ... <= a+i`
    /// and the lower bound is the exact first component.
    pub fn lc_degree_bounds(&self) -> Vec<(Degree, Degree)> {
        if self.n <= 1 {
            return Vec::new();
        }
        let n = self.n;
        // lp[a][b]: largest chain sum from a to b, strict steps weighted by
        // entry degree, computed over increasing spans.
        let mut lp = vec![vec![Degree::NegInf; n + 1]; n + 1];
        for a in 1..=n {
            lp[a][a] = Degree::Fin(0);
        }
        for span in 1..n {
            for a in 1..=(n - span) {
                let b = a + span;
                lp[a][b] = (a..b)
                    .map(|m| self.entry_degree(a, m) + lp[m][b])
                    .max()
                    .unwrap_or(Degree::NegInf)
                    .max(self.entry_degree(a, b));
            }
        }
        let d1 = (1..n).map(|k| self.entry_degree(k, k + 1)).max().unwrap_or(Degree::NegInf);
        let mut out = Vec::with_capacity(n - 1);
        out.push((d1, d1));
        for i in 2..n {
            let upper = (1..=(n - i)).map(|a| lp[a][a + i]).max().unwrap_or(Degree::NegInf);
            out.push((d1, upper));
        }
        out
    }

    /// Exact lc-degree: component `i` is the degree in the quotient that
    /// keeps diagonals `1..=i`.
    pub fn lc_degree(&self) -> Result<LcDegree> {
        let mut components = Vec::with_capacity(self.n.saturating_sub(1));
        for level in 1..self.n {
            components.push(self.degree_at_level(level)?);
        }
        LcDegree::new(components)
    }

    fn check_same_shape(&self, other: &PolyMap) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        if self.layout != other.layout {
            return Err(Error::LayoutMismatch(
                format!("{:?}", self.layout),
                format!("{:?}", other.layout),
            ));
        }
        Ok(())
    }

    /// Pointwise product `t -> f(t) g(t)`.
    pub fn product(&self, other: &PolyMap) -> Result<PolyMap> {
        self.check_same_shape(other)?;
        Ok(PolyMap { matrix: self.matrix.mul(&other.matrix)?, ..self.clone() })
    }

    /// Pointwise inverse `t -> f(t)^{-1}`.
    pub fn inverse(&self) -> PolyMap {
        PolyMap { matrix: self.matrix.inv(), ..self.clone() }
    }

    /// Pointwise commutator `t -> [f(t), g(t)]`.
    pub fn commutator(&self, other: &PolyMap) -> Result<PolyMap> {
        self.check_same_shape(other)?;
        Ok(PolyMap { matrix: self.matrix.commutator(&other.matrix)?, ..self.clone() })
    }

    /// Conjugate by a constant map: `t -> g f(t) g^{-1}`.
    pub fn conjugate(&self, g: &PolyMap) -> Result<PolyMap> {
        if self.n != g.n {
            return Err(Error::DimensionMismatch(self.n, g.n));
        }
        if !g.is_constant() {
            return Err(Error::ConstantRequired);
        }
        let lifted =
            g.matrix.map(|p| MPoly::constant(p.constant_term(), self.layout.clone()));
        let matrix = lifted.mul(&self.matrix)?.mul(&lifted.inv())?;
        Ok(PolyMap { matrix, ..self.clone() })
    }

    /// The k-fold ordered product `(t1, ..., tk) -> f(t1) ... f(tk)` in
    /// `k * N` fresh variables; requires a plain map and `k >= 1`.
    pub fn ordered_product(&self, k: usize) -> Result<PolyMap> {
        if k == 0 {
            return Err(Error::InvalidArgument("ordered product needs k >= 1".into()));
        }
        if self.shift_count != 0 {
            return Err(Error::InvalidArgument(
                "ordered product is defined for plain maps without shift blocks".into(),
            ));
        }
        let big = Layout::single("t", k * self.active_len);
        let factor = |i: usize| {
            let var_map: Vec<usize> =
                (0..self.active_len).map(|v| i * self.active_len + v).collect();
            self.matrix.map(|p| {
                p.remap_vars(big.clone(), &var_map).expect("disjoint variable ranges")
            })
        };
        let mut matrix = factor(0);
        for i in 1..k {
            matrix = matrix.mul(&factor(i))?;
        }
        Ok(PolyMap {
            n: self.n,
            active_len: k * self.active_len,
            shift_count: 0,
            layout: big,
            matrix,
        })
    }

    /// Permute the active variables: entrywise
    /// `q(t_1,..,t_N) = p(t_{sigma(1)},..,t_{sigma(N)})`.
    pub fn permute(&self, sigma: &[usize]) -> Result<PolyMap> {
        check_permutation(sigma, self.active_len)?;
        let matrix = self.matrix.map(|p| p.permute(sigma).expect("validated permutation"));
        Ok(PolyMap { matrix, ..self.clone() })
    }

    /// Evaluate every entry at a full point (one scalar per variable,
    /// including shift blocks if present).
    pub fn evaluate(&self, point: &[Scalar]) -> Result<UniTri<Scalar>> {
        let mut entries = Vec::new();
        for (_, p) in self.matrix.indexed_entries() {
            entries.push(p.eval(point)?);
        }
        UniTri::from_entries(self.n, entries)
    }
}

impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.matrix)
    }
}

/// The lc-degree vector `(d_1, ..., d_{n-1})`: component `i` is the degree
/// modulo the `(i+1)`-st term of the lower central series. Always
/// nondecreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LcDegree(Vec<Degree>);

impl LcDegree {
    pub fn new(components: Vec<Degree>) -> Result<LcDegree> {
        if components.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::NotNondecreasing);
        }
        Ok(LcDegree(components))
    }

    pub fn components(&self) -> &[Degree] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Componentwise comparison; lengths must agree.
    pub fn componentwise_le(&self, other: &LcDegree) -> Result<bool> {
        if self.0.len() != other.0.len() {
            return Err(Error::DimensionMismatch(self.0.len(), other.0.len()));
        }
        Ok(self.0.iter().zip(&other.0).all(|(a, b)| a <= b))
    }

    /// True when `d_i + d_j <= d_{i+j}` for all applicable `i, j` (the
    /// vector is nondecreasing by construction).
    pub fn is_superadditive(&self) -> bool {
        let m = self.0.len();
        for i in 0..m {
            for j in 0..m {
                // 1-based indices (i+1) + (j+1) land at 0-based i + j + 1.
                if i + j + 1 < m && self.0[i] + self.0[j] > self.0[i + j + 1] {
                    return false;
                }
            }
        }
        true
    }

    /// The smallest superadditive vector dominating this one:
    /// `e_1 = d_1`, `e_i = max(d_i, e_{i-1}, max_{1<=j<i} e_j + e_{i-j})`.
    pub fn superadditive_closure(&self) -> LcDegree {
        let d = &self.0;
        let mut e: Vec<Degree> = Vec::with_capacity(d.len());
        for i in 0..d.len() {
            let mut v = d[i];
            if i > 0 {
                v = v.max(e[i - 1]);
            }
            for a in 0..i {
                // 1-based split (a+1) + (i-a), so the partner index is
                // 0-based i - a - 1.
                v = v.max(e[a] + e[i - a - 1]);
            }
            e.push(v);
        }
        LcDegree(e)
    }
}

impl fmt::Display for LcDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}
