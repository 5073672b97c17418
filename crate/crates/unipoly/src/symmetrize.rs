//! Iterated symmetrization of polynomial maps and the permutation cocycle
//! measuring the failure of symmetry.
//!
//! The symmetric group acts on a map in `N` variables by permuting the
//! arguments: `sigma(f)(t_1, .., t_N) = f(t_{sigma(1)}, .., t_{sigma(N)})`.
//! One symmetrization round multiplies all `N!` images in lexicographic
//! order of `sigma`; in a group of nilpotency class `c` the result becomes
//! fully symmetric after `c` rounds because each round pushes the failure
//! of symmetry one level down the lower central series. The failure itself
//! is the cocycle `alpha_sigma = f^{-1} sigma(f)`, which satisfies
//! `alpha_{sigma tau} = alpha_sigma * sigma(alpha_tau)`.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::polymap::PolyMap;

/// All permutations of `{0, .., n-1}` in lexicographic order.
pub fn permutations_lex(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    (0..n).permutations(n).collect()
}

/// Composition acting on variable indices: `(sigma tau)(i) = sigma(tau(i))`,
/// matching `f.permute(tau).permute(sigma) = f.permute(compose(sigma, tau))`.
pub fn compose(sigma: &[usize], tau: &[usize]) -> Vec<usize> {
    tau.iter().map(|&i| sigma[i]).collect()
}

/// True when the map is invariant under every permutation of its active
/// variables (adjacent transpositions suffice).
pub fn is_symmetric(f: &PolyMap) -> Result<bool> {
    let arity = f.active_len();
    for k in 0..arity.saturating_sub(1) {
        let mut sigma: Vec<usize> = (0..arity).collect();
        sigma.swap(k, k + 1);
        if &f.permute(&sigma)? != f {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One symmetrization round: the product of `sigma(f)` over all
/// permutations in lexicographic order. Requires a plain map.
pub fn symmetrize_round(f: &PolyMap) -> Result<PolyMap> {
    if f.shift_count() != 0 {
        return Err(Error::InvalidArgument(
            "symmetrization is defined for plain maps without shift blocks".into(),
        ));
    }
    let mut acc = PolyMap::identity(f.n(), f.active_len())?;
    for sigma in permutations_lex(f.active_len()) {
        acc = acc.product(&f.permute(&sigma)?)?;
    }
    Ok(acc)
}

/// The result of iterated symmetrization: each intermediate round, the
/// final symmetric map, and how many permuted copies of the input were
/// multiplied in total.
#[derive(Clone, Debug)]
pub struct Symmetrization {
    /// Map after each round; length `n - 1`.
    pub rounds: Vec<PolyMap>,
    /// The final, fully symmetric map.
    pub result: PolyMap,
    /// Number of permuted copies of the input in the final product:
    /// `(N!)^(n-1)`.
    pub factor_count: u128,
}

/// Run `n - 1` symmetrization rounds (enough for any map into a group of
/// size `n`, whose nilpotency class is `n - 1`) and certify the result is
/// symmetric.
pub fn symmetrize(f: &PolyMap) -> Result<Symmetrization> {
    if f.shift_count() != 0 {
        return Err(Error::InvalidArgument(
            "symmetrization is defined for plain maps without shift blocks".into(),
        ));
    }
    let steps = f.n().saturating_sub(1);
    let mut rounds = Vec::with_capacity(steps);
    let mut cur = f.clone();
    for _ in 0..steps {
        cur = symmetrize_round(&cur)?;
        rounds.push(cur.clone());
    }
    if !is_symmetric(&cur)? {
        return Err(Error::Internal(
            "iterated symmetrization did not produce a symmetric map".into(),
        ));
    }
    let factor_count = checked_factor_count(f.active_len(), steps)?;
    Ok(Symmetrization { rounds, result: cur, factor_count })
}

fn checked_factor_count(arity: usize, rounds: usize) -> Result<u128> {
    let mut fact: u128 = 1;
    for i in 2..=(arity as u128) {
        fact = fact.checked_mul(i).ok_or(Error::Overflow("symmetrization factor count"))?;
    }
    let mut out: u128 = 1;
    for _ in 0..rounds {
        out = out.checked_mul(fact).ok_or(Error::Overflow("symmetrization factor count"))?;
    }
    Ok(out)
}

/// The permutation cocycle of a map at a given diagonal level: for every
/// permutation `sigma`, the correction `alpha_sigma = f^{-1} sigma(f)`.
#[derive(Clone, Debug)]
pub struct Cocycle {
    level: usize,
    entries: Vec<(Vec<usize>, PolyMap)>,
}

impl Cocycle {
    pub fn level(&self) -> usize {
        self.level
    }

    /// Pairs `(sigma, alpha_sigma)` in lexicographic order of `sigma`.
    pub fn entries(&self) -> &[(Vec<usize>, PolyMap)] {
        &self.entries
    }

    pub fn get(&self, sigma: &[usize]) -> Option<&PolyMap> {
        self.entries.iter().find(|(s, _)| s == sigma).map(|(_, a)| a)
    }

    /// Check `alpha_{sigma tau} = alpha_sigma * sigma(alpha_tau)` for every
    /// pair of permutations.
    pub fn verify_identity(&self) -> Result<bool> {
        for (sigma, a_sigma) in &self.entries {
            for (tau, a_tau) in &self.entries {
                let st = compose(sigma, tau);
                let lhs = self
                    .get(&st)
                    .ok_or_else(|| Error::Internal("cocycle misses a permutation".into()))?;
                let rhs = a_sigma.product(&a_tau.permute(sigma)?)?;
                if lhs != &rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Extract the cocycle of a map that is symmetric modulo the central
/// series below `level`: every `alpha_sigma` must vanish on diagonals
/// `1..=level`, i.e. sit in lower-central level `level + 1` or deeper.
pub fn extract_cocycle(f: &PolyMap, level: usize) -> Result<Cocycle> {
    if f.shift_count() != 0 {
        return Err(Error::InvalidArgument(
            "cocycle extraction is defined for plain maps without shift blocks".into(),
        ));
    }
    if level == 0 || level >= f.n() {
        return Err(Error::DiagonalOutOfRange { k: level, n: f.n() });
    }
    let inv = f.inverse();
    let mut entries = Vec::new();
    for sigma in permutations_lex(f.active_len()) {
        let alpha = inv.product(&f.permute(&sigma)?)?;
        if alpha.lc_height() <= level {
            return Err(Error::NotSymmetricModulo(level));
        }
        entries.push((sigma, alpha));
    }
    Ok(Cocycle { level, entries })
}
