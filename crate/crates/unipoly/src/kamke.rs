//! Polynomial parameterization of power-sum regions: given bracketing
//! constants `0 < k_nu < K_nu` for a finite set of exponents `nu >= 2` and
//! a minimum dimension `B`, produce polynomials `l_1, l_nu` in `n`
//! nonnegative variables such that every value satisfies
//! `k_nu * l_1^nu < l_nu < K_nu * l_1^nu`.
//!
//! The construction shifts each variable to `y_k = x_k + (k_1 + eps) / n`,
//! takes `l_1` as the sum of the `y_k` and mixes the power sum with the
//! `nu`-th power of `l_1`:
//! `l_nu = C_nu * sum(y_k^nu) + D_nu * l_1^nu + eps`. The power-mean
//! inequality `sum(y^nu) >= n^(1-nu) * l_1^nu` gives the lower bracket;
//! `sum(y^nu) < l_1^nu` (strict since every `y_k` is positive) gives the
//! upper one. `n` is taken large enough that `D_nu >= 0`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::mpoly::{Layout, MPoly};
use crate::scalar::{RingTag, Scalar};

fn rat_int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn rat_pow(r: &BigRational, e: u32) -> BigRational {
    let mut out = BigRational::one();
    for _ in 0..e {
        out *= r;
    }
    out
}

/// Bracketing data for the region: a dimension floor `b >= 1`, a positive
/// lower bound `k1` for the shifted variables, and per-exponent brackets
/// `nu -> (k_nu, K_nu)` with `0 < k_nu < K_nu` and `nu >= 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KamkeSpec {
    b: u64,
    k1: BigRational,
    bounds: Vec<(u32, BigRational, BigRational)>,
}

impl KamkeSpec {
    pub fn new(
        b: u64,
        k1: BigRational,
        bounds: Vec<(u32, BigRational, BigRational)>,
    ) -> Result<KamkeSpec> {
        if b == 0 {
            return Err(Error::InvalidArgument("dimension floor must be at least 1".into()));
        }
        if !k1.is_positive() {
            return Err(Error::InvalidArgument("k1 must be positive".into()));
        }
        let mut seen = Vec::new();
        for (nu, lo, hi) in &bounds {
            if *nu < 2 {
                return Err(Error::InvalidArgument(format!("exponent {nu} must be at least 2")));
            }
            if seen.contains(nu) {
                return Err(Error::InvalidArgument(format!("duplicate exponent {nu}")));
            }
            seen.push(*nu);
            if !lo.is_positive() || lo >= hi {
                return Err(Error::InvalidArgument(format!(
                    "exponent {nu} needs 0 < lower < upper"
                )));
            }
        }
        let mut bounds = bounds;
        bounds.sort_by_key(|(nu, _, _)| *nu);
        Ok(KamkeSpec { b, k1, bounds })
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn k1(&self) -> &BigRational {
        &self.k1
    }

    /// Brackets sorted by exponent.
    pub fn bounds(&self) -> &[(u32, BigRational, BigRational)] {
        &self.bounds
    }
}

/// Smallest integer `r >= 1` with `r^e >= target`, by doubling and
/// bisection.
fn integer_root_ceil(target: &BigRational, e: u32) -> u64 {
    let power_ge = |r: u64| -> bool {
        let p = BigInt::from(r).pow(e);
        BigRational::from_integer(p) >= *target
    };
    let mut hi: u64 = 1;
    while !power_ge(hi) {
        hi *= 2;
    }
    let mut lo: u64 = hi / 2;
    // Invariant: lo fails (or is 0), hi satisfies.
    while lo + 1 < hi {
        let mid = lo + (hi - lo) / 2;
        if power_ge(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// The computed parameterization: the dimension `n`, the mixing
/// coefficients, the margin `eps`, and the polynomials `l_1, l_nu` in the
/// layout `[x(n)]`.
#[derive(Clone, Debug)]
pub struct KamkeParam {
    spec: KamkeSpec,
    n: u64,
    coeffs: Vec<(u32, BigRational, BigRational)>,
    epsilon: BigRational,
    q: Vec<MPoly>,
}

impl KamkeParam {
    pub fn spec(&self) -> &KamkeSpec {
        &self.spec
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Per-exponent `(nu, C_nu, D_nu)`, sorted by exponent.
    pub fn coeffs(&self) -> &[(u32, BigRational, BigRational)] {
        &self.coeffs
    }

    pub fn epsilon(&self) -> &BigRational {
        &self.epsilon
    }

    /// The component polynomials: `q[0] = l_1`, then one `l_nu` per
    /// exponent in increasing order.
    pub fn q(&self) -> &[MPoly] {
        &self.q
    }
}

/// Build the parameterization for a spec.
pub fn kamke_solve(spec: &KamkeSpec) -> Result<KamkeParam> {
    // n = max(b, 1 + ceil(max_nu (K_nu / k_nu)^(1 / (nu - 1)))).
    let mut n = spec.b;
    for (nu, lo, hi) in &spec.bounds {
        let target = hi / lo;
        let root = integer_root_ceil(&target, nu - 1);
        n = n.max(1 + root);
    }

    // eps = min(1, min_nu (K_nu - k_nu) * k1^nu) / 2.
    let mut margin = BigRational::one();
    for (nu, lo, hi) in &spec.bounds {
        let candidate = (hi - lo) * rat_pow(&spec.k1, *nu);
        if candidate < margin {
            margin = candidate;
        }
    }
    let epsilon = margin / rat_int(2);

    let n_usize = usize::try_from(n).map_err(|_| Error::Overflow("dimension"))?;
    let layout = Layout::single("x", n_usize);
    let ring = RingTag::Rational;
    let rat_c = |r: &BigRational| Scalar::Rat(r.clone());

    // y_k = x_k + (k1 + eps) / n.
    let base = (&spec.k1 + &epsilon) / rat_int(n as i64);
    let y: Vec<MPoly> = (0..n_usize)
        .map(|k| {
            MPoly::var(layout.clone(), ring, k)
                .expect("index below arity")
                .add(&MPoly::constant(rat_c(&base), layout.clone()))
                .expect("same layout")
        })
        .collect();
    let mut l1 = MPoly::zero(ring, layout.clone());
    for yk in &y {
        l1 = l1.add(yk)?;
    }

    let mut coeffs = Vec::with_capacity(spec.bounds.len());
    let mut q = vec![l1.clone()];
    for (nu, lo, hi) in &spec.bounds {
        // C = (K - k) / (1 - n^(1 - nu)), D = K - C = k - C * n^(1 - nu).
        let n_pow = BigRational::new(BigInt::one(), BigInt::from(n).pow(nu - 1));
        let c = (hi - lo) / (BigRational::one() - &n_pow);
        let d = hi - &c;
        if !c.is_positive() || d.is_negative() {
            return Err(Error::Internal(format!(
                "mixing coefficients for exponent {nu} fell outside their range"
            )));
        }
        debug_assert_eq!(d, lo - &c * &n_pow);

        let mut power_sum = MPoly::zero(ring, layout.clone());
        for yk in &y {
            power_sum = power_sum.add(&yk.pow(*nu)?)?;
        }
        let l_nu = power_sum
            .scale(&rat_c(&c))?
            .add(&l1.pow(*nu)?.scale(&rat_c(&d))?)?
            .add(&MPoly::constant(rat_c(&epsilon), layout.clone()))?;
        coeffs.push((*nu, c, d));
        q.push(l_nu);
    }

    Ok(KamkeParam { spec: spec.clone(), n, coeffs, epsilon, q })
}

/// Evaluate the parameterization at a point with nonnegative rational
/// coordinates.
pub fn kamke_eval(param: &KamkeParam, point: &[BigRational]) -> Result<Vec<BigRational>> {
    if point.len() != param.n as usize {
        return Err(Error::ArityMismatch { expected: param.n as usize, got: point.len() });
    }
    if point.iter().any(|x| x.is_negative()) {
        return Err(Error::InvalidArgument("coordinates must be nonnegative".into()));
    }
    let scalars: Vec<Scalar> = point.iter().map(|x| Scalar::Rat(x.clone())).collect();
    param
        .q
        .iter()
        .map(|poly| match poly.eval(&scalars)? {
            Scalar::Rat(r) => Ok(r),
            Scalar::Mod { .. } => Err(Error::Internal("rational evaluation produced a residue".into())),
        })
        .collect()
}

/// Check membership in the target domain at a point with nonnegative
/// rational coordinates: `l_1 > k_1` and the strict brackets
/// `k_nu * l_1^nu < l_nu < K_nu * l_1^nu`.
pub fn kamke_membership(param: &KamkeParam, point: &[BigRational]) -> Result<bool> {
    let values = kamke_eval(param, point)?;
    let l1 = &values[0];
    if l1 <= &param.spec.k1 {
        return Ok(false);
    }
    for (idx, (nu, lo, hi)) in param.spec.bounds.iter().enumerate() {
        let l_nu = &values[idx + 1];
        let power = rat_pow(l1, *nu);
        if !(lo * &power < *l_nu && *l_nu < hi * &power) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact Jacobian of the parameterization at a point, one row per
/// component polynomial, computed from formal partial derivatives.
pub fn jacobian_at(param: &KamkeParam, point: &[BigRational]) -> Result<Vec<Vec<BigRational>>> {
    if point.len() != param.n as usize {
        return Err(Error::ArityMismatch { expected: param.n as usize, got: point.len() });
    }
    let scalars: Vec<Scalar> = point.iter().map(|x| Scalar::Rat(x.clone())).collect();
    let mut rows = Vec::with_capacity(param.q.len());
    for poly in &param.q {
        let mut row = Vec::with_capacity(param.n as usize);
        for idx in 0..param.n as usize {
            match poly.derivative(idx)?.eval(&scalars)? {
                Scalar::Rat(r) => row.push(r),
                Scalar::Mod { .. } => {
                    return Err(Error::Internal("rational derivative produced a residue".into()))
                }
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Rank of the Jacobian at a point.
pub fn jacobian_rank(param: &KamkeParam, point: &[BigRational]) -> Result<usize> {
    Ok(bareiss_rank(integerize(jacobian_at(param, point)?)))
}

/// Clear denominators row by row; row scaling preserves rank.
fn integerize(rows: Vec<Vec<BigRational>>) -> Vec<Vec<BigInt>> {
    rows.into_iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
            row.into_iter().map(|r| r.numer() * (&lcm / r.denom())).collect()
        })
        .collect()
}

/// Rank by fraction-free elimination: each update is a two-by-two minor
/// divided exactly by the previous pivot.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        for r in (row + 1)..rows {
            for c in (col + 1)..cols {
                let num = &m[row][col] * &m[r][c] - &m[r][col] * &m[row][c];
                debug_assert!((&num % &prev).is_zero());
                m[r][c] = num / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[row][col].clone();
        row += 1;
        rank += 1;
    }
    rank
}

/// Membership verdicts for seeded random points in `[0, 10]^n`.
#[derive(Clone, Debug)]
pub struct KamkeSampleReport {
    pub count: u32,
    pub all_inside: bool,
    /// Points that failed the brackets, if any.
    pub failures: Vec<Vec<BigRational>>,
}

pub fn sample_report(param: &KamkeParam, count: u32, seed: u64) -> Result<KamkeSampleReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..count {
        let point: Vec<BigRational> = (0..param.n)
            .map(|_| {
                let den = rng.gen_range(1..=10u64);
                let num = rng.gen_range(0..=10 * den);
                BigRational::new(BigInt::from(num), BigInt::from(den))
            })
            .collect();
        if !kamke_membership(param, &point)? {
            failures.push(point);
        }
    }
    Ok(KamkeSampleReport { count, all_inside: failures.is_empty(), failures })
}
