//! Sparse multivariate polynomials with named variable blocks.
//!
//! Variables are grouped into an ordered list of named blocks. The first
//! block is the "active" block: shifting substitutes `t_i -> t_i + s_i`
//! there and appends the fresh shift block at the end of the layout, and
//! permutations act on the active block only. Terms are kept in canonical
//! graded-lexicographic order with no explicitly stored zero coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;

use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::scalar::{RingTag, Scalar};

/// An ordered list of named variable blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Layout {
    blocks: Vec<(String, usize)>,
}

impl Layout {
    /// Build a layout from `(name, length)` pairs; names must be unique and
    /// lengths positive.
    pub fn new<S: Into<String>>(blocks: Vec<(S, usize)>) -> Result<Layout> {
        let blocks: Vec<(String, usize)> = blocks.into_iter().map(|(n, l)| (n.into(), l)).collect();
        for (i, (name, len)) in blocks.iter().enumerate() {
            if *len == 0 {
                return Err(Error::InvalidArgument(format!("block {name} has length 0")));
            }
            if blocks[..i].iter().any(|(other, _)| other == name) {
                return Err(Error::DuplicateBlock(name.clone()));
            }
        }
        Ok(Layout { blocks })
    }

    /// Single-block layout.
    pub fn single(name: &str, len: usize) -> Layout {
        Layout::new(vec![(name, len)]).expect("one block is always valid")
    }

    pub fn arity(&self) -> usize {
        self.blocks.iter().map(|(_, l)| l).sum()
    }

    pub fn blocks(&self) -> &[(String, usize)] {
        &self.blocks
    }

    /// Name and length of the active (first) block.
    pub fn active_block(&self) -> (&str, usize) {
        let (name, len) = &self.blocks[0];
        (name, *len)
    }

    /// Starting global index of the named block.
    pub fn offset_of(&self, name: &str) -> Option<usize> {
        let mut off = 0;
        for (block, len) in &self.blocks {
            if block == name {
                return Some(off);
            }
            off += len;
        }
        None
    }

    pub fn len_of(&self, name: &str) -> Option<usize> {
        self.blocks.iter().find(|(b, _)| b == name).map(|(_, l)| *l)
    }

    /// This layout with one more block appended at the end.
    pub fn with_appended(&self, name: &str, len: usize) -> Result<Layout> {
        let mut blocks = self.blocks.clone();
        blocks.push((name.to_string(), len));
        Layout::new(blocks)
    }

    fn describe(&self) -> String {
        let parts: Vec<String> = self.blocks.iter().map(|(n, l)| format!("{n}({l})")).collect();
        format!("[{}]", parts.join(", "))
    }
}

/// Exponent vector ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    fn degree_on(&self, range: std::ops::Range<usize>) -> u64 {
        self.0[range].iter().map(|&e| e as u64).sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse multivariate polynomial over a fixed scalar ring and layout.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MPoly {
    ring: RingTag,
    layout: Layout,
    terms: BTreeMap<Monomial, Scalar>,
}

impl MPoly {
    pub fn zero(ring: RingTag, layout: Layout) -> MPoly {
        MPoly { ring, layout, terms: BTreeMap::new() }
    }

    pub fn constant(c: Scalar, layout: Layout) -> MPoly {
        let ring = c.ring();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(vec![0; layout.arity()]), c);
        }
        MPoly { ring, layout, terms }
    }

    /// The monic monomial `x_idx` (global variable index) over `ring`.
    pub fn var(layout: Layout, ring: RingTag, idx: usize) -> Result<MPoly> {
        if idx >= layout.arity() {
            return Err(Error::InvalidArgument(format!(
                "variable index {idx} out of range for arity {}",
                layout.arity()
            )));
        }
        let mut exps = vec![0u32; layout.arity()];
        exps[idx] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(exps), Scalar::one(ring));
        Ok(MPoly { ring, layout, terms })
    }

    /// Build a polynomial from raw `(exponents, coefficient)` pairs.
    /// Duplicate monomials are summed; zero coefficients are dropped.
    pub fn from_terms<I>(ring: RingTag, layout: Layout, terms: I) -> Result<MPoly>
    where
        I: IntoIterator<Item = (Vec<u32>, Scalar)>,
    {
        let arity = layout.arity();
        let mut poly = MPoly::zero(ring, layout);
        for (exps, coeff) in terms {
            if exps.len() != arity {
                return Err(Error::ArityMismatch { expected: arity, got: exps.len() });
            }
            if coeff.ring() != ring {
                return Err(Error::RingMismatch(ring.to_string(), coeff.ring().to_string()));
            }
            poly.add_term(Monomial(exps), coeff)?;
        }
        Ok(poly)
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let sum = old.checked_add(&c)?;
                if !sum.is_zero() {
                    self.terms.insert(m, sum);
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> RingTag {
        self.ring
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    /// Terms in graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when no variable occurs at all.
    pub fn is_constant(&self) -> bool {
        self.total_degree() <= Degree::Fin(0)
    }

    /// The coefficient of the empty monomial.
    pub fn constant_term(&self) -> Scalar {
        let key = Monomial(vec![0; self.layout.arity()]);
        self.terms.get(&key).cloned().unwrap_or_else(|| Scalar::zero(self.ring))
    }

    /// Total degree; `-inf` for the zero polynomial.
    pub fn total_degree(&self) -> Degree {
        match self.terms.keys().next_back() {
            None => Degree::NegInf,
            Some(m) => Degree::Fin(m.total_degree()),
        }
    }

    /// Degree counting only the variables of the named block.
    pub fn degree_in_block(&self, name: &str) -> Degree {
        let Some(off) = self.layout.offset_of(name) else {
            return Degree::NegInf;
        };
        let len = self.layout.len_of(name).unwrap();
        let mut best = Degree::NegInf;
        for m in self.terms.keys() {
            best = best.max(Degree::Fin(m.degree_on(off..off + len)));
        }
        best
    }

    fn check_compatible(&self, other: &MPoly) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        if self.layout != other.layout {
            return Err(Error::LayoutMismatch(self.layout.describe(), other.layout.describe()));
        }
        Ok(())
    }

    pub fn add(&self, other: &MPoly) -> Result<MPoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> MPoly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect();
        MPoly { ring: self.ring, layout: self.layout.clone(), terms }
    }

    pub fn sub(&self, other: &MPoly) -> Result<MPoly> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MPoly) -> Result<MPoly> {
        self.check_compatible(other)?;
        let mut out = MPoly::zero(self.ring, self.layout.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let exps: Vec<u32> = ma
                    .0
                    .iter()
                    .zip(&mb.0)
                    .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
                    .collect();
                out.add_term(Monomial(exps), ca.checked_mul(cb)?)?;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Result<MPoly> {
        if c.ring() != self.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), c.ring().to_string()));
        }
        if c.is_zero() {
            return Ok(MPoly::zero(self.ring, self.layout.clone()));
        }
        let mut terms = BTreeMap::new();
        for (m, a) in &self.terms {
            let prod = a.checked_mul(c)?;
            if !prod.is_zero() {
                terms.insert(m.clone(), prod);
            }
        }
        Ok(MPoly { ring: self.ring, layout: self.layout.clone(), terms })
    }

    pub fn pow(&self, e: u32) -> Result<MPoly> {
        let mut acc = MPoly::constant(Scalar::one(self.ring), self.layout.clone());
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Substitute `t_i -> t_i + s_i` on the active block, where `s` is a
    /// fresh block named `fresh` appended at the end of the layout.
    pub fn shift(&self, fresh: &str) -> Result<MPoly> {
        let (_, n) = self.layout.active_block();
        let new_layout = self.layout.with_appended(fresh, n)?;
        let old_arity = self.layout.arity();
        let mut out = MPoly::zero(self.ring, new_layout);
        for (m, c) in &self.terms {
            // Expand the product of (t_i + s_i)^{e_i} over the active block.
            let exps: Vec<u32> = m.0[..n].to_vec();
            let mut choice = vec![0u32; n];
            loop {
                let mut coeff = c.clone();
                for i in 0..n {
                    let b = binomial(BigInt::from(exps[i]), BigInt::from(choice[i]));
                    coeff = coeff.checked_mul(&int_to_ring(&b, self.ring))?;
                }
                let mut new_exps = vec![0u32; old_arity + n];
                new_exps[..n].copy_from_slice(&choice);
                new_exps[n..old_arity].copy_from_slice(&m.0[n..]);
                for i in 0..n {
                    new_exps[old_arity + i] = exps[i] - choice[i];
                }
                out.add_term(Monomial(new_exps), coeff)?;
                // Odometer over 0 <= choice <= exps.
                let mut i = 0;
                loop {
                    if i == n {
                        break;
                    }
                    if choice[i] < exps[i] {
                        choice[i] += 1;
                        break;
                    }
                    choice[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
        }
        Ok(out)
    }

    /// Apply a permutation `sigma` of `{0..N}` to the active block:
    /// the result is `p` with variable `t_i` carrying the exponent that
    /// `t_{sigma(i)}` carried before, i.e. `q(t_1,..,t_N) =
    /// p(t_{sigma(1)},..,t_{sigma(N)})`.
    pub fn permute(&self, sigma: &[usize]) -> Result<MPoly> {
        let (_, n) = self.layout.active_block();
        check_permutation(sigma, n)?;
        let mut out = MPoly::zero(self.ring, self.layout.clone());
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            for i in 0..n {
                exps[sigma[i]] = m.0[i];
            }
            out.add_term(Monomial(exps), c.clone())?;
        }
        Ok(out)
    }

    /// Evaluate at a full point, one scalar per variable.
    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        let arity = self.layout.arity();
        if point.len() != arity {
            return Err(Error::ArityMismatch { expected: arity, got: point.len() });
        }
        for p in point {
            if p.ring() != self.ring {
                return Err(Error::RingMismatch(self.ring.to_string(), p.ring().to_string()));
            }
        }
        let mut acc = Scalar::zero(self.ring);
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.checked_mul(&point[i].pow(e as u64))?;
                }
            }
            acc = acc.checked_add(&term)?;
        }
        Ok(acc)
    }

    /// Reinterpret over a larger layout: every block of `self` must appear
    /// in `target` (same name, same length); exponents move with the block.
    pub fn embed(&self, target: &Layout) -> Result<MPoly> {
        let mut var_map = Vec::with_capacity(self.layout.arity());
        for (name, len) in self.layout.blocks() {
            let off = target.offset_of(name).ok_or_else(|| {
                Error::LayoutMismatch(self.layout.describe(), target.describe())
            })?;
            if target.len_of(name) != Some(*len) {
                return Err(Error::LayoutMismatch(self.layout.describe(), target.describe()));
            }
            for i in 0..*len {
                var_map.push(off + i);
            }
        }
        self.remap_vars(target.clone(), &var_map)
    }

    /// Move each source variable `i` to `var_map[i]` in `target`.
    /// The map must be injective.
    pub fn remap_vars(&self, target: Layout, var_map: &[usize]) -> Result<MPoly> {
        if var_map.len() != self.layout.arity() {
            return Err(Error::ArityMismatch { expected: self.layout.arity(), got: var_map.len() });
        }
        let target_arity = target.arity();
        let mut seen = vec![false; target_arity];
        for &v in var_map {
            if v >= target_arity || seen[v] {
                return Err(Error::InvalidArgument("variable map is not injective".into()));
            }
            seen[v] = true;
        }
        let mut out = MPoly::zero(self.ring, target);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target_arity];
            for (i, &e) in m.0.iter().enumerate() {
                exps[var_map[i]] = e;
            }
            out.add_term(Monomial(exps), c.clone())?;
        }
        Ok(out)
    }

    /// Exchange the exponents of two equal-length blocks.
    pub fn swap_blocks(&self, a: &str, b: &str) -> Result<MPoly> {
        let (off_a, len_a) = match (self.layout.offset_of(a), self.layout.len_of(a)) {
            (Some(o), Some(l)) => (o, l),
            _ => return Err(Error::InvalidArgument(format!("no block named {a}"))),
        };
        let (off_b, len_b) = match (self.layout.offset_of(b), self.layout.len_of(b)) {
            (Some(o), Some(l)) => (o, l),
            _ => return Err(Error::InvalidArgument(format!("no block named {b}"))),
        };
        if len_a != len_b {
            return Err(Error::InvalidArgument(format!(
                "blocks {a} and {b} have different lengths"
            )));
        }
        let arity = self.layout.arity();
        let mut var_map: Vec<usize> = (0..arity).collect();
        for i in 0..len_a {
            var_map[off_a + i] = off_b + i;
            var_map[off_b + i] = off_a + i;
        }
        self.remap_vars(self.layout.clone(), &var_map)
    }

    /// Formal partial derivative with respect to global variable `idx`.
    pub fn derivative(&self, idx: usize) -> Result<MPoly> {
        if idx >= self.layout.arity() {
            return Err(Error::InvalidArgument(format!("variable index {idx} out of range")));
        }
        let mut out = MPoly::zero(self.ring, self.layout.clone());
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[idx] = e - 1;
            let factor = int_to_ring(&BigInt::from(e), self.ring);
            out.add_term(Monomial(exps), c.checked_mul(&factor)?)?;
        }
        Ok(out)
    }
}

fn int_to_ring(v: &BigInt, ring: RingTag) -> Scalar {
    match ring {
        RingTag::Rational => Scalar::Rat(BigRational::from_integer(v.clone())),
        RingTag::Mod(m) => Scalar::modular_from_bigint(v, m).expect("modulus validated"),
    }
}

pub(crate) fn check_permutation(sigma: &[usize], n: usize) -> Result<()> {
    if sigma.len() != n {
        return Err(Error::ArityMismatch { expected: n, got: sigma.len() });
    }
    let mut seen = vec![false; n];
    for &s in sigma {
        if s >= n || seen[s] {
            return Err(Error::NotABijection(n));
        }
        seen[s] = true;
    }
    Ok(())
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names: Vec<String> = self
            .layout
            .blocks()
            .iter()
            .flat_map(|(name, len)| {
                (0..*len).map(move |i| if *len == 1 { name.clone() } else { format!("{name}{}", i + 1) })
            })
            .collect();
        let mut first = true;
        // Highest-order terms first reads more naturally.
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{e}", names[i]) })
                .collect();
            if vars.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{c}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::rational(n, d).unwrap()
    }

    fn t1() -> Layout {
        Layout::single("t", 1)
    }

    fn t2() -> Layout {
        Layout::single("t", 2)
    }

    /// Univariate helper: coefficients by ascending power of t.
    fn upoly(coeffs: &[(i64, i64)]) -> MPoly {
        MPoly::from_terms(
            RingTag::Rational,
            t1(),
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &(n, d))| (vec![i as u32], q(n, d))),
        )
        .unwrap()
    }

    #[test]
    fn add_cancels_and_drops_zero_terms() {
        let p = upoly(&[(1, 1), (2, 1)]); // 1 + 2t
        let r = upoly(&[(-1, 1), (-2, 1)]);
        assert!(p.add(&r).unwrap().is_zero());
        assert_eq!(p.add(&p).unwrap(), upoly(&[(2, 1), (4, 1)]));
    }

    #[test]
    fn mul_difference_of_squares() {
        let a = upoly(&[(1, 1), (1, 1)]); // 1 + t
        let b = upoly(&[(-1, 1), (1, 1)]); // -1 + t
        assert_eq!(a.mul(&b).unwrap(), upoly(&[(-1, 1), (0, 1), (1, 1)]));
    }

    #[test]
    fn mul_multivariate_cross_terms() {
        // (t1 + t2)^2 = t1^2 + 2 t1 t2 + t2^2
        let p = MPoly::from_terms(
            RingTag::Rational,
            t2(),
            vec![(vec![1, 0], q(1, 1)), (vec![0, 1], q(1, 1))],
        )
        .unwrap();
        let sq = p.mul(&p).unwrap();
        let expected = MPoly::from_terms(
            RingTag::Rational,
            t2(),
            vec![(vec![2, 0], q(1, 1)), (vec![1, 1], q(2, 1)), (vec![0, 2], q(1, 1))],
        )
        .unwrap();
        assert_eq!(sq, expected);
    }

    #[test]
    fn layout_or_ring_mismatch_is_rejected() {
        let a = upoly(&[(1, 1)]);
        let b = MPoly::constant(q(1, 1), t2());
        assert!(matches!(a.add(&b), Err(Error::LayoutMismatch(_, _))));
        let m = MPoly::constant(Scalar::modular(1, 5).unwrap(), t1());
        assert!(matches!(a.mul(&m), Err(Error::RingMismatch(_, _))));
    }

    #[test]
    fn shift_expands_binomially() {
        // t^2 -> (t+s)^2 = t^2 + 2ts + s^2
        let p = upoly(&[(0, 1), (0, 1), (1, 1)]);
        let shifted = p.shift("s").unwrap();
        let layout = Layout::new(vec![("t", 1), ("s", 1)]).unwrap();
        let expected = MPoly::from_terms(
            RingTag::Rational,
            layout,
            vec![(vec![2, 0], q(1, 1)), (vec![1, 1], q(2, 1)), (vec![0, 2], q(1, 1))],
        )
        .unwrap();
        assert_eq!(shifted, expected);
    }

    #[test]
    fn shift_of_constant_is_constant() {
        let p = MPoly::constant(q(5, 3), t1());
        let shifted = p.shift("s").unwrap();
        assert!(shifted.is_constant());
        assert_eq!(shifted.constant_term(), q(5, 3));
        assert_eq!(shifted.layout().arity(), 2);
    }

    #[test]
    fn shift_two_variable_product() {
        // t1 t2 -> (t1+s1)(t2+s2) = t1 t2 + t1 s2 + s1 t2 + s1 s2
        let p = MPoly::from_terms(RingTag::Rational, t2(), vec![(vec![1, 1], q(1, 1))]).unwrap();
        let shifted = p.shift("s").unwrap();
        let layout = Layout::new(vec![("t", 2), ("s", 2)]).unwrap();
        let expected = MPoly::from_terms(
            RingTag::Rational,
            layout,
            vec![
                (vec![1, 1, 0, 0], q(1, 1)),
                (vec![1, 0, 0, 1], q(1, 1)),
                (vec![0, 1, 1, 0], q(1, 1)),
                (vec![0, 0, 1, 1], q(1, 1)),
            ],
        )
        .unwrap();
        assert_eq!(shifted, expected);
    }

    #[test]
    fn setting_shift_to_zero_recovers_the_original() {
        let p = upoly(&[(3, 2), (0, 1), (5, 1), (1, 3)]);
        let shifted = p.shift("s").unwrap();
        // Evaluate s = 0 by dropping all terms with positive s-exponent.
        let recovered = MPoly::from_terms(
            RingTag::Rational,
            t1(),
            shifted
                .terms()
                .filter(|(m, _)| m.0[1] == 0)
                .map(|(m, c)| (vec![m.0[0]], c.clone())),
        )
        .unwrap();
        assert_eq!(recovered, p);
    }

    #[test]
    fn permute_moves_exponents_with_the_action() {
        // p = t1^2 t2, swap -> t1 t2^2
        let p = MPoly::from_terms(RingTag::Rational, t2(), vec![(vec![2, 1], q(1, 1))]).unwrap();
        let swapped = p.permute(&[1, 0]).unwrap();
        let expected =
            MPoly::from_terms(RingTag::Rational, t2(), vec![(vec![1, 2], q(1, 1))]).unwrap();
        assert_eq!(swapped, expected);
        assert_eq!(swapped.permute(&[1, 0]).unwrap(), p);
    }

    #[test]
    fn permute_identity_and_invalid_sigma() {
        let p = MPoly::from_terms(RingTag::Rational, t2(), vec![(vec![2, 1], q(1, 1))]).unwrap();
        assert_eq!(p.permute(&[0, 1]).unwrap(), p);
        assert!(matches!(p.permute(&[0, 0]), Err(Error::NotABijection(2))));
        assert!(matches!(p.permute(&[0]), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn permute_three_cycle_composes() {
        let layout = Layout::single("t", 3);
        let p = MPoly::from_terms(
            RingTag::Rational,
            layout,
            vec![(vec![3, 1, 0], q(1, 1))],
        )
        .unwrap();
        // sigma = (0 1 2): q(t) = p(t_sigma(1), t_sigma(2), t_sigma(3)).
        let sigma = [1, 2, 0];
        let once = p.permute(&sigma).unwrap();
        let thrice = once.permute(&sigma).unwrap().permute(&sigma).unwrap();
        assert_eq!(thrice, p);
        assert_ne!(once, p);
    }

    #[test]
    fn eval_exact_rational_points() {
        let p = upoly(&[(1, 2), (0, 1), (1, 1)]); // 1/2 + t^2
        assert_eq!(p.eval(&[q(1, 2)]).unwrap(), q(3, 4));
        assert_eq!(p.eval(&[q(0, 1)]).unwrap(), q(1, 2));
        let two_vars = MPoly::from_terms(
            RingTag::Rational,
            t2(),
            vec![(vec![1, 1], q(1, 1)), (vec![0, 0], q(-1, 1))],
        )
        .unwrap();
        assert_eq!(two_vars.eval(&[q(2, 1), q(3, 1)]).unwrap(), q(5, 1));
    }

    #[test]
    fn eval_checks_arity_and_ring() {
        let p = upoly(&[(1, 1)]);
        assert!(matches!(p.eval(&[]), Err(Error::ArityMismatch { .. })));
        assert!(matches!(
            p.eval(&[Scalar::modular(1, 5).unwrap()]),
            Err(Error::RingMismatch(_, _))
        ));
    }

    #[test]
    fn degrees_track_blocks() {
        let layout = Layout::new(vec![("t", 1), ("s", 1)]).unwrap();
        let p = MPoly::from_terms(
            RingTag::Rational,
            layout,
            vec![(vec![2, 1], q(1, 1)), (vec![0, 3], q(1, 1))],
        )
        .unwrap();
        assert_eq!(p.total_degree(), Degree::Fin(3));
        assert_eq!(p.degree_in_block("t"), Degree::Fin(2));
        assert_eq!(p.degree_in_block("s"), Degree::Fin(3));
        let zero = MPoly::zero(RingTag::Rational, t1());
        assert_eq!(zero.total_degree(), Degree::NegInf);
        assert_eq!(zero.degree_in_block("t"), Degree::NegInf);
    }

    #[test]
    fn embed_into_superlayout_preserves_values() {
        let p = upoly(&[(0, 1), (2, 1)]); // 2t
        let target = Layout::new(vec![("t", 1), ("s1", 1), ("s2", 1)]).unwrap();
        let e = p.embed(&target).unwrap();
        assert_eq!(e.layout(), &target);
        assert_eq!(e.eval(&[q(3, 1), q(9, 1), q(7, 1)]).unwrap(), q(6, 1));
        // Missing block in the target is an error.
        let bad = Layout::new(vec![("u", 1)]).unwrap();
        assert!(p.embed(&bad).is_err());
    }

    #[test]
    fn swap_blocks_exchanges_roles() {
        let layout = Layout::new(vec![("t", 1), ("s", 1)]).unwrap();
        let p = MPoly::from_terms(
            RingTag::Rational,
            layout,
            vec![(vec![2, 0], q(1, 1)), (vec![0, 1], q(3, 1))],
        )
        .unwrap();
        let swapped = p.swap_blocks("t", "s").unwrap();
        // t^2 + 3s -> s^2 + 3t
        assert_eq!(swapped.eval(&[q(1, 1), q(2, 1)]).unwrap(), q(7, 1));
        assert_eq!(swapped.swap_blocks("s", "t").unwrap(), p);
    }

    #[test]
    fn derivative_of_monomials() {
        let p = upoly(&[(0, 1), (0, 1), (3, 1)]); // 3t^2
        assert_eq!(p.derivative(0).unwrap(), upoly(&[(0, 1), (6, 1)]));
        assert!(MPoly::constant(q(4, 1), t1()).derivative(0).unwrap().is_zero());
    }

    #[test]
    fn display_is_readable() {
        let p = upoly(&[(1, 2), (0, 1), (1, 1)]);
        assert_eq!(p.to_string(), "t^2 + 1/2");
    }
}
