//! One-variable polynomial sequences in a unitriangular group: exact and
//! modular evaluation, certified minimal periods modulo `m`, interpolation
//! from samples, value multiplicity, and a concrete non-polynomial sequence
//! in the polycyclic group `ℤ² ⋊ ℤ`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::interp::lagrange_fit;
use crate::polymap::{DiffSide, PolyMap};
use crate::scalar::Scalar;
use crate::unitri::{GroupElem, UniTri};

fn require_sequence(f: &PolyMap) -> Result<()> {
    if f.active_len() != 1 || f.shift_count() != 0 {
        return Err(Error::NotASequence);
    }
    Ok(())
}

/// Evaluate a one-variable map at `t`, exactly over `ℚ` or reduced modulo
/// `m`. Modular reduction requires every entry value to be an integer.
pub fn seq_eval(f: &PolyMap, t: u64, modulus: Option<u64>) -> Result<UniTri<Scalar>> {
    require_sequence(f)?;
    let point = [Scalar::Rat(BigRational::from(BigInt::from(t)))];
    let exact = f.evaluate(&point)?;
    match modulus {
        None => Ok(exact),
        Some(m) => reduce_matrix(&exact, m, t),
    }
}

fn reduce_matrix(matrix: &UniTri<Scalar>, m: u64, t: u64) -> Result<UniTri<Scalar>> {
    let mut entries = Vec::with_capacity(matrix.n() * matrix.n().saturating_sub(1) / 2);
    for (_, v) in matrix.indexed_entries() {
        let r = v
            .as_rational()
            .ok_or_else(|| Error::RationalRequired("sequence value".into()))?;
        if !r.is_integer() {
            return Err(Error::NonIntegralValue { t, value: v.to_string() });
        }
        entries.push(Scalar::modular_from_bigint(&r.to_integer(), m)?);
    }
    UniTri::from_entries(matrix.n(), entries)
}

fn residues_at(f: &PolyMap, t: u64, m: u64) -> Result<Vec<u64>> {
    seq_eval(f, t, Some(m))?
        .indexed_entries()
        .map(|(_, s)| match s {
            Scalar::Mod { value, .. } => Ok(*value),
            Scalar::Rat(_) => Err(Error::Internal("modular reduction returned a rational".into())),
        })
        .collect()
}

fn saturating_pow(base: u64, exp: u128) -> u128 {
    let mut out: u128 = 1;
    let mut i: u128 = 0;
    // Saturates within 128 steps for base >= 2.
    while i < exp {
        out = match out.checked_mul(base as u128) {
            Some(v) => v,
            None => return u128::MAX,
        };
        i += 1;
    }
    out
}

/// A certified minimal period of a one-variable map reduced modulo `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodReport {
    pub modulus: u64,
    /// Smallest period of the reduced sequence.
    pub period: u64,
    /// Largest entry degree `d`. A candidate period needs checking only on
    /// `{0, .., d}`: the difference of two degree-d integer-valued
    /// polynomials that agree modulo m on d+1 consecutive integers has all
    /// forward differences at 0 divisible by m, so its Newton expansion
    /// vanishes modulo m everywhere.
    pub degree_bound: u64,
    /// Size of the determining set, `degree_bound + 1`.
    pub determining_points: u64,
    /// Pigeonhole cap on the search: distinct windows of `d + 1`
    /// consecutive value tuples number at most `m^(nnz * (d + 1))`.
    pub cap: u128,
    /// Randomized spot checks performed after certification.
    pub spot_checks: u32,
}

/// Find the minimal period of `t -> f(t) mod m` and certify it on the
/// determining set, then re-verify at seeded random points `t <= 10000`.
pub fn seq_period(f: &PolyMap, m: u64, seed: u64) -> Result<PeriodReport> {
    require_sequence(f)?;
    if m < 2 {
        return Err(Error::InvalidModulus(m));
    }
    let degree_bound: u64 = f
        .matrix()
        .indexed_entries()
        .map(|(_, p)| match p.total_degree() {
            Degree::NegInf => 0,
            Degree::Fin(k) => k,
        })
        .max()
        .unwrap_or(0);
    let nnz = f.matrix().indexed_entries().filter(|(_, p)| !p.is_zero()).count();
    let cap = saturating_pow(m, (nnz as u128) * (degree_bound as u128 + 1));
    let window = degree_bound + 1;

    let mut residues: Vec<Vec<u64>> = Vec::new();
    for t in 0..window {
        residues.push(residues_at(f, t, m)?);
    }
    let mut period: u64 = 1;
    loop {
        if u128::from(period) > cap {
            return Err(Error::PeriodCapExceeded(cap));
        }
        while (residues.len() as u64) < window + period {
            let t = residues.len() as u64;
            residues.push(residues_at(f, t, m)?);
        }
        if (0..window).all(|t| residues[t as usize] == residues[(t + period) as usize]) {
            break;
        }
        period += 1;
    }

    const SPOT_CHECKS: u32 = 100;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SPOT_CHECKS {
        let t = rng.gen_range(0..=10_000u64);
        if residues_at(f, t, m)? != residues_at(f, t + period, m)? {
            return Err(Error::Internal(format!(
                "certified period {period} failed a spot check at t = {t}"
            )));
        }
    }

    Ok(PeriodReport {
        modulus: m,
        period,
        degree_bound,
        determining_points: window,
        cap,
        spot_checks: SPOT_CHECKS,
    })
}

/// Recover a one-variable map from exact samples `(t, f(t))`: entrywise
/// Lagrange interpolation with the given degree bound. Samples beyond the
/// first `degree_bound + 1` are verified against the fit.
pub fn seq_fit(samples: &[(i64, UniTri<Scalar>)], degree_bound: usize) -> Result<PolyMap> {
    let Some((_, first)) = samples.first() else {
        return Err(Error::NotEnoughSamples { needed: degree_bound + 1, got: 0 });
    };
    let n = first.n();
    for (_, mat) in samples {
        if mat.n() != n {
            return Err(Error::DimensionMismatch(n, mat.n()));
        }
    }
    let mut entries = Vec::new();
    for i in 1..n {
        for j in (i + 1)..=n {
            let points: Vec<(i64, Scalar)> =
                samples.iter().map(|(t, mat)| (*t, mat.get(i, j).clone())).collect();
            entries.push(((i, j), lagrange_fit(&points, degree_bound)?));
        }
    }
    PolyMap::from_entries(n, 1, entries)
}

/// How often a single matrix value recurs along a sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityReport {
    pub horizon: u64,
    /// Largest number of times any one value occurs for `t in 0..=horizon`.
    pub max_multiplicity: usize,
    /// The times realizing it, for the value whose first occurrence is
    /// earliest among maximizers.
    pub witness_times: Vec<u64>,
    /// Smallest degree among nonconstant entries. Any value determines each
    /// entry, and a nonconstant polynomial of degree `e` takes a value at
    /// most `e` times, so the multiplicity over all of `ℕ₀` is at most
    /// this.
    pub entry_degree_bound: u64,
}

/// Count value multiplicities of a nonconstant one-variable map over
/// `t in 0..=horizon`.
pub fn seq_value_multiplicity(f: &PolyMap, horizon: u64) -> Result<MultiplicityReport> {
    require_sequence(f)?;
    let entry_degree_bound = f
        .matrix()
        .indexed_entries()
        .filter_map(|(_, p)| match p.total_degree() {
            Degree::Fin(k) if k >= 1 => Some(k),
            _ => None,
        })
        .min()
        .ok_or(Error::NonConstantRequired)?;
    let mut seen: HashMap<UniTri<Scalar>, Vec<u64>> = HashMap::new();
    for t in 0..=horizon {
        seen.entry(seq_eval(f, t, None)?).or_default().push(t);
    }
    let mut best: Option<Vec<u64>> = None;
    for (_, times) in seen {
        let better = match &best {
            None => true,
            Some(b) => times.len() > b.len() || (times.len() == b.len() && times[0] < b[0]),
        };
        if better {
            best = Some(times);
        }
    }
    let witness_times = best.unwrap_or_default();
    Ok(MultiplicityReport {
        horizon,
        max_multiplicity: witness_times.len(),
        witness_times,
        entry_degree_bound,
    })
}

/// An element of `ℤ² ⋊ ℤ` where the generator of the `ℤ` factor acts on
/// `ℤ²` by `A = [[1, 1], [1, 0]]`: `(v, k)(w, l) = (v + A^k w, k + l)`.
/// This group is polycyclic but not nilpotent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SemidirectElem {
    pub v: (i128, i128),
    pub k: i64,
}

const A: [[i128; 2]; 2] = [[1, 1], [1, 0]];
const A_INV: [[i128; 2]; 2] = [[0, 1], [1, -1]];

fn mat_mul(a: [[i128; 2]; 2], b: [[i128; 2]; 2]) -> [[i128; 2]; 2] {
    let mut c = [[0i128; 2]; 2];
    for (i, row) in c.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

fn mat_pow(k: i64) -> [[i128; 2]; 2] {
    let (mut base, mut e) = if k >= 0 { (A, k as u64) } else { (A_INV, k.unsigned_abs()) };
    let mut acc = [[1i128, 0], [0, 1]];
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul(acc, base);
        }
        base = mat_mul(base, base);
        e >>= 1;
    }
    acc
}

fn mat_apply(m: [[i128; 2]; 2], v: (i128, i128)) -> (i128, i128) {
    (m[0][0] * v.0 + m[0][1] * v.1, m[1][0] * v.0 + m[1][1] * v.1)
}

impl SemidirectElem {
    pub fn new(v: (i128, i128), k: i64) -> SemidirectElem {
        SemidirectElem { v, k }
    }

    pub fn identity() -> SemidirectElem {
        SemidirectElem { v: (0, 0), k: 0 }
    }

    /// The translation generator `x = ((1, 0), 0)`.
    pub fn x() -> SemidirectElem {
        SemidirectElem { v: (1, 0), k: 0 }
    }

    /// The acting generator `z = ((0, 0), 1)`.
    pub fn z() -> SemidirectElem {
        SemidirectElem { v: (0, 0), k: 1 }
    }
}

impl GroupElem for SemidirectElem {
    fn group_mul(&self, other: &SemidirectElem) -> SemidirectElem {
        let aw = mat_apply(mat_pow(self.k), other.v);
        SemidirectElem { v: (self.v.0 + aw.0, self.v.1 + aw.1), k: self.k + other.k }
    }

    fn group_inv(&self) -> SemidirectElem {
        let w = mat_apply(mat_pow(-self.k), self.v);
        SemidirectElem { v: (-w.0, -w.1), k: -self.k }
    }

    fn is_identity(&self) -> bool {
        self.v == (0, 0) && self.k == 0
    }
}

/// The conjugation sequence `n -> z^n x z^{-n}`, computed by the group
/// law. Its value is `((F_{n+1}, F_n), 0)` in Fibonacci numbers.
pub fn fib_map(n: u64) -> SemidirectElem {
    let z = SemidirectElem::z();
    let mut zn = SemidirectElem::identity();
    for _ in 0..n {
        zn = zn.group_mul(&z);
    }
    zn.group_mul(&SemidirectElem::x()).group_mul(&zn.group_inv())
}

/// Apply an iterated difference word to a sequence in any group, with a
/// fixed shift per letter; the first letter acts innermost. A left step
/// maps `g` to `t -> g(t + s) g(t)^{-1}`, a right step to
/// `t -> g(t)^{-1} g(t + s)`.
pub fn apply_difference_word<G, F>(f: &F, word: &[(DiffSide, u64)], t: u64) -> G
where
    G: GroupElem,
    F: Fn(u64) -> G,
{
    match word.split_last() {
        None => f(t),
        Some(((side, s), inner)) => {
            let plus = apply_difference_word(f, inner, t + s);
            let base = apply_difference_word(f, inner, t);
            match side {
                DiffSide::Left => plus.group_mul(&base.group_inv()),
                DiffSide::Right => base.group_inv().group_mul(&plus),
            }
        }
    }
}

/// Outcome of probing every depth-`depth` difference word against the
/// Fibonacci conjugation sequence.
#[derive(Clone, Debug)]
pub struct FibWitness {
    pub depth: usize,
    /// True when every word failed to vanish at some probed `t`. A
    /// polynomial map of degree below `depth` is annihilated by every
    /// depth-`depth` word, so this certifies the degree is not below
    /// `depth`.
    pub all_words_nonvanishing: bool,
    pub words_checked: usize,
    /// For each word (in binary order, left steps on set bits), the first
    /// `t in {0, .., 5}` with a non-identity value.
    pub first_witness: Vec<Option<u64>>,
}

/// Evaluate all `2^depth` shift-1 difference words on the Fibonacci
/// conjugation sequence at `t in {0, .., 5}`.
pub fn fib_nonpoly_witness(depth: usize) -> Result<FibWitness> {
    if depth == 0 || depth > 10 {
        return Err(Error::InvalidArgument("witness depth must be between 1 and 10".into()));
    }
    let max_t = 5 + depth as u64;
    let values: Vec<SemidirectElem> = (0..=max_t).map(fib_map).collect();
    let f = |t: u64| values[t as usize];
    let mut first_witness = Vec::with_capacity(1 << depth);
    let mut all_nonvanishing = true;
    for mask in 0u32..(1u32 << depth) {
        let word: Vec<(DiffSide, u64)> = (0..depth)
            .map(|i| {
                let side = if mask >> i & 1 == 1 { DiffSide::Left } else { DiffSide::Right };
                (side, 1)
            })
            .collect();
        let hit = (0..=5u64).find(|&t| !apply_difference_word(&f, &word, t).is_identity());
        if hit.is_none() {
            all_nonvanishing = false;
        }
        first_witness.push(hit);
    }
    Ok(FibWitness {
        depth,
        all_words_nonvanishing: all_nonvanishing,
        words_checked: 1 << depth,
        first_witness,
    })
}
