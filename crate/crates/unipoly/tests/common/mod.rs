//! Shared helpers for the integration suites: seeded generators, fixtures,
//! and independent oracles (dense Gaussian elimination, brute-force chain
//! enumeration, numeric difference words).

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use unipoly::{Degree, DiffSide, GroupElem, Layout, MPoly, PolyMap, RingTag, Scalar, UniTri};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rat(n: i64, d: i64) -> Scalar {
    Scalar::rational(n, d).unwrap()
}

pub fn brat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A random rational with small numerator and denominator; may be zero.
pub fn rand_rat(rng: &mut ChaCha8Rng) -> Scalar {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

pub fn rand_nonzero_rat(rng: &mut ChaCha8Rng) -> Scalar {
    loop {
        let s = rand_rat(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

/// A random positive rational, for shifts and sample points.
pub fn rand_positive_rat(rng: &mut ChaCha8Rng) -> Scalar {
    rat(rng.gen_range(1..=9), rng.gen_range(1..=4))
}

/// All exponent vectors of the given arity with total degree at most `d`.
pub fn monomials_up_to(arity: usize, d: u32) -> Vec<Vec<u32>> {
    if arity == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for head in 0..=d {
        for mut tail in monomials_up_to(arity - 1, d - head) {
            let mut exps = vec![head];
            exps.append(&mut tail);
            out.push(exps);
        }
    }
    out
}

/// A random polynomial of total degree at most `max_deg`; when `nonzero`
/// is set the result always has at least one term.
pub fn rand_poly(
    rng: &mut ChaCha8Rng,
    layout: &Layout,
    max_deg: u32,
    nonzero: bool,
) -> MPoly {
    let mut terms = Vec::new();
    for exps in monomials_up_to(layout.arity(), max_deg) {
        if rng.gen_bool(0.4) {
            terms.push((exps, rand_nonzero_rat(rng)));
        }
    }
    if terms.is_empty() && nonzero {
        let mut exps = vec![0; layout.arity()];
        if layout.arity() > 0 {
            exps[0] = rng.gen_range(0..=max_deg);
        }
        terms.push((exps, rand_nonzero_rat(rng)));
    }
    MPoly::from_terms(RingTag::Rational, layout.clone(), terms).unwrap()
}

/// A random polynomial with integer coefficients (values on ℕ₀ are
/// integers), total degree at most `max_deg`.
pub fn rand_int_poly(
    rng: &mut ChaCha8Rng,
    layout: &Layout,
    max_deg: u32,
    nonzero: bool,
) -> MPoly {
    let mut terms = Vec::new();
    for exps in monomials_up_to(layout.arity(), max_deg) {
        if rng.gen_bool(0.5) {
            let c = rng.gen_range(-9..=9i64);
            if c != 0 {
                terms.push((exps, rat(c, 1)));
            }
        }
    }
    if terms.is_empty() && nonzero {
        let mut exps = vec![0; layout.arity()];
        if layout.arity() > 0 {
            exps[0] = rng.gen_range(0..=max_deg);
        }
        terms.push((exps, rat(rng.gen_range(1..=9), 1)));
    }
    MPoly::from_terms(RingTag::Rational, layout.clone(), terms).unwrap()
}

/// A random unitriangular matrix over ℚ; entries may be zero.
pub fn rand_unitri(rng: &mut ChaCha8Rng, n: usize) -> UniTri<Scalar> {
    UniTri::from_fn(n, |_, _| rand_rat(rng))
}

/// A random one-variable map in size `n` with entry degrees at most
/// `max_deg`; `nonzero` forces every entry to be a nonzero polynomial.
pub fn rand_polymap(rng: &mut ChaCha8Rng, n: usize, max_deg: u32, nonzero: bool) -> PolyMap {
    rand_polymap_nvars(rng, n, 1, max_deg, nonzero)
}

pub fn rand_polymap_nvars(
    rng: &mut ChaCha8Rng,
    n: usize,
    nvars: usize,
    max_deg: u32,
    nonzero: bool,
) -> PolyMap {
    let layout = Layout::single("t", nvars);
    let mut entries = Vec::new();
    for i in 1..n {
        for j in (i + 1)..=n {
            entries.push(((i, j), rand_poly(rng, &layout, max_deg, nonzero)));
        }
    }
    PolyMap::from_entries(n, nvars, entries).unwrap()
}

/// A random one-variable map with integer coefficients.
pub fn rand_int_polymap(
    rng: &mut ChaCha8Rng,
    n: usize,
    max_deg: u32,
    nonzero: bool,
) -> PolyMap {
    let layout = Layout::single("t", 1);
    let mut entries = Vec::new();
    for i in 1..n {
        for j in (i + 1)..=n {
            entries.push(((i, j), rand_int_poly(rng, &layout, max_deg, nonzero)));
        }
    }
    PolyMap::from_entries(n, 1, entries).unwrap()
}

pub fn t_poly(coeffs: &[(i64, i64)]) -> MPoly {
    MPoly::from_terms(
        RingTag::Rational,
        Layout::single("t", 1),
        coeffs.iter().enumerate().map(|(i, &(n, d))| (vec![i as u32], rat(n, d))),
    )
    .unwrap()
}

/// f(t) = I + t E12 + t E23 in size 3.
pub fn heisenberg() -> PolyMap {
    PolyMap::from_entries(
        3,
        1,
        vec![((1, 2), t_poly(&[(0, 1), (1, 1)])), ((2, 3), t_poly(&[(0, 1), (1, 1)]))],
    )
    .unwrap()
}

/// f(t) = I + t E12 + t E23 + t²/2 E13, a one-parameter subgroup of 𝒰₃.
pub fn trunc_exp() -> PolyMap {
    PolyMap::from_entries(
        3,
        1,
        vec![
            ((1, 2), t_poly(&[(0, 1), (1, 1)])),
            ((2, 3), t_poly(&[(0, 1), (1, 1)])),
            ((1, 3), t_poly(&[(0, 1), (0, 1), (1, 2)])),
        ],
    )
    .unwrap()
}

pub fn fib(n: usize) -> i128 {
    let (mut a, mut b) = (0i128, 1i128);
    for _ in 0..n {
        let c = a + b;
        a = b;
        b = c;
    }
    a
}

/// Independent inverse oracle: dense Gaussian elimination over ℚ on the
/// full augmented matrix, ignoring the unitriangular structure.
pub fn gauss_inverse(m: &UniTri<Scalar>) -> UniTri<Scalar> {
    let n = m.n();
    let to_q = |s: &Scalar| s.as_rational().expect("rational entries").clone();
    // aug = [M | I] as dense rows.
    let mut aug: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row = vec![BigRational::zero(); 2 * n];
            row[i] = BigRational::one();
            row[n + i] = BigRational::one();
            for j in (i + 2)..=n {
                row[j - 1] = to_q(m.get(i + 1, j));
            }
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !aug[r][col].is_zero())
            .expect("unitriangular matrices are invertible");
        aug.swap(col, pivot);
        let p = aug[col][col].clone();
        for c in 0..2 * n {
            aug[col][c] = &aug[col][c] / &p;
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                for c in 0..2 * n {
                    let delta = &factor * &aug[col][c];
                    aug[r][c] = &aug[r][c] - delta;
                }
            }
        }
    }
    // The inverse of a unitriangular matrix is unitriangular; make the
    // oracle fail loudly if elimination says otherwise.
    for r in 0..n {
        for c in 0..n {
            if r == c {
                assert!(aug[r][n + c].is_one(), "inverse diagonal is not 1");
            } else if r > c {
                assert!(aug[r][n + c].is_zero(), "inverse has a lower entry");
            }
        }
    }
    UniTri::from_fn(n, |i, j| Scalar::Rat(aug[i - 1][n + j - 1].clone()))
}

/// Rank oracle: straightforward Gaussian elimination over ℚ.
pub fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let nrows = rows.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(row, p);
        let pivot = rows[row][col].clone();
        for r in (row + 1)..nrows {
            if !rows[r][col].is_zero() {
                let factor = &rows[r][col] / &pivot;
                for c in col..ncols {
                    let delta = &factor * &rows[row][c];
                    rows[r][c] = &rows[r][c] - delta;
                }
            }
        }
        row += 1;
        rank += 1;
    }
    rank
}

/// Brute-force chain-sum oracle: enumerate every nondecreasing chain
/// `1 = k₁ ≤ ... ≤ kₙ = n` and take the largest sum of entry degrees,
/// with zero for repeated indices and `-inf` absorbing.
pub fn chain_upper_oracle(f: &PolyMap) -> Degree {
    let n = f.n();
    if n <= 1 {
        return Degree::NegInf;
    }
    let d = |i: usize, j: usize| -> Degree {
        if i == j {
            Degree::Fin(0)
        } else {
            f.entry(i, j).total_degree()
        }
    };
    // chains have exactly n entries.
    fn go(
        chain: &mut Vec<usize>,
        n: usize,
        d: &dyn Fn(usize, usize) -> Degree,
        best: &mut Degree,
    ) {
        if chain.len() == n {
            if *chain.last().unwrap() == n {
                let mut sum = Degree::Fin(0);
                for w in chain.windows(2) {
                    sum = sum + d(w[0], w[1]);
                }
                if sum > *best {
                    *best = sum;
                }
            }
            return;
        }
        let lo = *chain.last().unwrap();
        for next in lo..=n {
            chain.push(next);
            go(chain, n, d, best);
            chain.pop();
        }
    }
    let mut best = Degree::NegInf;
    go(&mut vec![1], n, &d, &mut best);
    best
}

/// Evaluate a difference word numerically at rational points: each letter
/// carries its own shift vector; the first letter acts innermost.
pub fn apply_word_numeric(
    f: &PolyMap,
    word: &[(DiffSide, Vec<Scalar>)],
    t: &[Scalar],
) -> UniTri<Scalar> {
    match word.split_last() {
        None => f.evaluate(t).expect("arity matches"),
        Some(((side, s), inner)) => {
            let shifted: Vec<Scalar> =
                t.iter().zip(s).map(|(a, b)| a.checked_add(b).expect("rationals")).collect();
            let plus = apply_word_numeric(f, inner, &shifted);
            let base = apply_word_numeric(f, inner, t);
            match side {
                DiffSide::Left => plus.group_mul(&base.group_inv()),
                DiffSide::Right => base.group_inv().group_mul(&plus),
            }
        }
    }
}

/// All words over {Left, Right} of the given length.
pub fn all_words(len: usize) -> Vec<Vec<DiffSide>> {
    (0u32..(1 << len))
        .map(|mask| {
            (0..len)
                .map(|i| if mask >> i & 1 == 1 { DiffSide::Left } else { DiffSide::Right })
                .collect()
        })
        .collect()
}

fn random_point(rng: &mut ChaCha8Rng, nvars: usize) -> Vec<Scalar> {
    (0..nvars).map(|_| rand_positive_rat(rng)).collect()
}

fn with_shifts(
    rng: &mut ChaCha8Rng,
    word: &[DiffSide],
    nvars: usize,
) -> Vec<(DiffSide, Vec<Scalar>)> {
    word.iter().map(|&side| (side, random_point(rng, nvars))).collect()
}

/// Numeric consistency check for a claimed degree, independent of the
/// symbolic recursion: every word one longer than the degree must vanish
/// at random rational shifts and points, and some word of exactly the
/// degree's length must not.
pub fn numeric_degree_consistent(
    f: &PolyMap,
    claimed: Degree,
    rng: &mut ChaCha8Rng,
) -> bool {
    let nvars = f.active_len();
    match claimed {
        Degree::NegInf => {
            (0..3).all(|_| f.evaluate(&random_point(rng, nvars)).unwrap().is_identity())
        }
        Degree::Fin(d) => {
            let d = d as usize;
            // Annihilation one step past the claimed degree.
            for word in all_words(d + 1) {
                for _ in 0..2 {
                    let w = with_shifts(rng, &word, nvars);
                    let t = random_point(rng, nvars);
                    if !apply_word_numeric(f, &w, &t).is_identity() {
                        return false;
                    }
                }
            }
            // Survival at the claimed degree: some word of length d has a
            // nonvanishing value (several draws, since a numeric zero can
            // be unlucky).
            if d == 0 {
                return !f.evaluate(&random_point(rng, nvars)).unwrap().is_identity();
            }
            for _ in 0..5 {
                for word in all_words(d) {
                    let w = with_shifts(rng, &word, nvars);
                    let t = random_point(rng, nvars);
                    if !apply_word_numeric(f, &w, &t).is_identity() {
                        return true;
                    }
                }
            }
            false
        }
    }
}
