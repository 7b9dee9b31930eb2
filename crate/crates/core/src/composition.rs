//! Integer compositions: descent sets, the refinement order, the three
//! involutions and the statistics used to index every basis in the crate.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An ordered sequence of positive integers.
///
/// Equality and ordering are structural on the parts list. Matrix-valued
/// output never relies on this ordering; it uses [`Composition::phi_index`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidComposition(format!("{parts:?} has a zero part")));
        }
        Ok(Composition(parts))
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    /// The single-part composition `(n)`; empty when `n == 0`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Composition(vec![n])
        }
    }

    /// `(1^n)`.
    pub fn column(n: usize) -> Self {
        Composition(vec![1; n])
    }

    /// The hook `(1^a, b)`.
    pub fn hook(a: usize, b: usize) -> Self {
        let mut parts = vec![1; a];
        if b > 0 {
            parts.push(b);
        }
        Composition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Partial sums `α₁, α₁+α₂, …` excluding the total.
    pub fn descent_set(&self) -> BTreeSet<usize> {
        self.descents().collect()
    }

    fn descents(&self) -> impl Iterator<Item = usize> + '_ {
        let k = self.0.len().saturating_sub(1);
        self.0[..k].iter().scan(0, |acc, &p| {
            *acc += p;
            Some(*acc)
        })
    }

    /// Descent set as a bit mask: bit `i-1` is set iff `i` is a descent.
    pub fn descent_mask(&self) -> u64 {
        self.descents().fold(0u64, |m, d| m | (1u64 << (d - 1)))
    }

    /// Inverse of [`descent_set`](Self::descent_set) for compositions of `n`.
    pub fn from_descent_set(descents: &BTreeSet<usize>, n: usize) -> Result<Self> {
        if n == 0 {
            return if descents.is_empty() {
                Ok(Self::empty())
            } else {
                Err(Error::InvalidComposition("descents given for n = 0".into()))
            };
        }
        let mut parts = Vec::with_capacity(descents.len() + 1);
        let mut prev = 0;
        for &d in descents {
            if d == 0 || d >= n {
                return Err(Error::InvalidComposition(format!("descent {d} outside 1..{n}")));
            }
            parts.push(d - prev);
            prev = d;
        }
        parts.push(n - prev);
        Ok(Composition(parts))
    }

    pub(crate) fn from_mask(mask: u64, n: usize) -> Self {
        if n == 0 {
            return Self::empty();
        }
        let mut parts = Vec::new();
        let mut prev = 0;
        for i in 1..n {
            if mask & (1u64 << (i - 1)) != 0 {
                parts.push(i - prev);
                prev = i;
            }
        }
        parts.push(n - prev);
        Composition(parts)
    }

    /// Concatenation `α·β`.
    pub fn concat(&self, other: &Composition) -> Composition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Composition(parts)
    }

    /// Attach `α|β`: the last part of `α` is merged with the first of `β`.
    pub fn attach(&self, other: &Composition) -> Result<Composition> {
        if self.is_empty() || other.is_empty() {
            return Err(Error::EmptyAttach);
        }
        let mut parts = self.0.clone();
        *parts.last_mut().unwrap() += other.0[0];
        parts.extend_from_slice(&other.0[1..]);
        Ok(Composition(parts))
    }

    /// `self ≤ other` in the refinement order (`self` is finer).
    pub fn refines(&self, other: &Composition) -> Result<bool> {
        check_same_size(self, other)?;
        let (a, b) = (self.descent_mask(), other.descent_mask());
        Ok(b & !a == 0)
    }

    /// `ᾱ`: parts in reverse order.
    pub fn reverse(&self) -> Composition {
        Composition(self.0.iter().rev().copied().collect())
    }

    /// `α^c`: the composition whose descent set is the complement of `D(α)`.
    pub fn complement(&self) -> Composition {
        let n = self.size();
        if n == 0 {
            return Self::empty();
        }
        let full = (1u64 << (n - 1)) - 1;
        Self::from_mask(full & !self.descent_mask(), n)
    }

    /// `α′ = reverse(complement(α))`.
    pub fn conjugate(&self) -> Composition {
        self.complement().reverse()
    }

    /// `n(α)`: the sum of the descents.
    pub fn n_stat(&self) -> usize {
        self.descents().sum()
    }

    /// `Σ_{i∈D(α)} 2^{i−1}`; ranks compositions of `n` in `0..2^{n−1}`.
    pub fn phi_index(&self) -> u64 {
        self.descent_mask()
    }

    /// The ribbon skew shape `outer/inner` of a nonempty composition.
    pub fn to_ribbon_skew(&self) -> Result<SkewRibbon> {
        if self.is_empty() {
            return Err(Error::InvalidComposition("the empty composition has no ribbon".into()));
        }
        let l = self.len() as isize;
        let mut sums = vec![0isize];
        for &p in &self.0 {
            sums.push(sums.last().unwrap() + p as isize);
        }
        // Row j (1-based, bottom row first) ends at partial sum S_{ℓ−j+1}.
        let outer = (1..=l).map(|j| (sums[(l - j + 1) as usize] - l + j) as usize).collect::<Vec<_>>();
        let inner = (1..l).map(|j| (sums[(l - j) as usize] - l + j) as usize).filter(|&x| x > 0).collect::<Vec<_>>();
        Ok(SkewRibbon { outer, inner })
    }
}

/// Sum of the common descents of `α` and `β`.
pub fn c_stat(alpha: &Composition, beta: &Composition) -> Result<usize> {
    check_same_size(alpha, beta)?;
    Ok(common_descent_sum(alpha, beta))
}

/// `c(α, β)` without the size check.
pub(crate) fn common_descent_sum(alpha: &Composition, beta: &Composition) -> usize {
    mask_sum(alpha.descent_mask() & beta.descent_mask())
}

/// Sum of the positions `i` whose bit `i−1` is set.
pub(crate) fn mask_sum(mut mask: u64) -> usize {
    let mut s = 0;
    while mask != 0 {
        let b = mask.trailing_zeros() as usize;
        s += b + 1;
        mask &= mask - 1;
    }
    s
}

fn check_same_size(a: &Composition, b: &Composition) -> Result<()> {
    if a.size() != b.size() {
        return Err(Error::SizeMismatch { left: a.size(), right: b.size() });
    }
    Ok(())
}

/// All compositions of `n`, sorted by `phi_index` ascending.
pub fn all_compositions(n: usize) -> Vec<Composition> {
    if n == 0 {
        return vec![Composition::empty()];
    }
    (0..1u64 << (n - 1)).map(|m| Composition::from_mask(m, n)).collect()
}

/// All compositions `β ≥ α` (coarsenings), in phi order.
pub fn coarsenings(alpha: &Composition) -> Vec<Composition> {
    let n = alpha.size();
    let mask = alpha.descent_mask();
    submasks(mask).map(|m| Composition::from_mask(m, n)).collect()
}

/// All compositions `β ≤ α` (refinements), in phi order.
pub fn refinements(alpha: &Composition) -> Vec<Composition> {
    let n = alpha.size();
    if n == 0 {
        return vec![Composition::empty()];
    }
    let mask = alpha.descent_mask();
    let free = ((1u64 << (n - 1)) - 1) & !mask;
    submasks(free).map(|m| Composition::from_mask(m | mask, n)).collect()
}

/// Submasks of `mask` in increasing numeric order.
fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask { None } else { Some(((cur | !mask).wrapping_add(1)) & mask) };
        Some(cur)
    })
}

/// A skew shape `outer/inner` with no 2×2 block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewRibbon {
    pub outer: Vec<usize>,
    pub inner: Vec<usize>,
}

impl SkewRibbon {
    pub fn cell_count(&self) -> usize {
        self.outer.iter().sum::<usize>() - self.inner.iter().sum::<usize>()
    }

    /// Containment and the no-2×2 condition.
    pub fn is_valid_ribbon(&self) -> bool {
        let inner_at = |i: usize| self.inner.get(i).copied().unwrap_or(0);
        if self.inner.len() > self.outer.len() || (0..self.outer.len()).any(|i| inner_at(i) > self.outer[i]) {
            return false;
        }
        // cells (row i, col j) and (row i+1, col j) both present with the
        // neighbouring column j+1 in both rows would form a 2×2 block
        (0..self.outer.len().saturating_sub(1)).all(|i| {
            let lo = inner_at(i).max(inner_at(i + 1));
            let hi = self.outer[i].min(self.outer[i + 1]);
            hi <= lo + 1
        })
    }
}

impl fmt::Display for SkewRibbon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", Composition(self.outer.clone()), Composition(self.inner.clone()))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `(2,4,3,1)`, `2,4,3,1`, `()` and the shorthand `1^3,2`.
impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad composition `{s}`"));
        let body = s.trim();
        let body = match (body.strip_prefix('('), body.ends_with(')')) {
            (Some(rest), true) => &rest[..rest.len() - 1],
            (None, false) => body,
            _ => return Err(bad()),
        };
        let body = body.trim();
        if body.is_empty() {
            return Ok(Composition::empty());
        }
        let mut parts = Vec::new();
        for tok in body.split(',') {
            let tok = tok.trim();
            let (part, reps) = match tok.split_once('^') {
                Some((p, r)) => (p.trim(), r.trim().parse::<usize>().map_err(|_| bad())?),
                None => (tok, 1),
            };
            let part = part.parse::<usize>().map_err(|_| bad())?;
            if part == 0 {
                return Err(bad());
            }
            parts.extend(std::iter::repeat_n(part, reps));
        }
        Ok(Composition(parts))
    }
}

#[macro_export]
/// `comp![2, 1]` builds the composition `(2,1)`.
macro_rules! comp {
    () => { $crate::Composition::empty() };
    ($($p:expr),+ $(,)?) => { $crate::Composition::new(vec![$($p),+]).expect("positive parts") };
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    #[test]
    fn descent_examples() {
        assert_eq!(comp![2, 4, 3, 1].descent_set(), set(&[2, 6, 9]));
        assert_eq!(comp![5].descent_set(), set(&[]));
        assert_eq!(comp![1, 1, 1].descent_set(), set(&[1, 2]));
        assert_eq!(Composition::empty().descent_set(), set(&[]));
    }

    #[test]
    fn concat_and_attach() {
        assert_eq!(comp![2, 1].concat(&comp![1, 2]), comp![2, 1, 1, 2]);
        assert_eq!(comp![2, 1].attach(&comp![1, 2]).unwrap(), comp![2, 2, 2]);
        assert_eq!(comp![].concat(&comp![3]), comp![3]);
        assert!(matches!(comp![].attach(&comp![3]), Err(Error::EmptyAttach)));
        assert!(comp![3].attach(&comp![]).is_err());
    }

    #[test]
    fn refinement_examples() {
        assert!(comp![1, 1, 1].refines(&comp![3]).unwrap());
        assert!(!comp![1, 2].refines(&comp![2, 1]).unwrap());
        assert!(comp![2, 1].refines(&comp![2, 1]).unwrap());
        assert!(matches!(comp![1].refines(&comp![2]), Err(Error::SizeMismatch { .. })));
    }

    #[test]
    fn involution_examples() {
        let a = comp![2, 4, 3, 1];
        assert_eq!(a.reverse(), comp![1, 3, 4, 2]);
        assert_eq!(a.complement(), comp![1, 2, 1, 1, 2, 1, 2]);
        assert_eq!(a.conjugate(), comp![2, 1, 2, 1, 1, 2, 1]);
    }

    #[test]
    fn statistics() {
        assert_eq!(comp![1, 1, 1].n_stat(), 3);
        assert_eq!(comp![6].n_stat(), 0);
        assert_eq!(comp![2, 4, 3, 1].n_stat(), 17);
        assert_eq!(c_stat(&comp![1, 2], &comp![2, 1]).unwrap(), 0);
        assert_eq!(c_stat(&comp![1, 1, 1], &comp![1, 1, 1]).unwrap(), 3);
        assert_eq!(c_stat(&comp![2, 1, 1], &comp![4]).unwrap(), 0);
        assert!(c_stat(&comp![1], &comp![1, 1]).is_err());
    }

    #[test]
    fn phi_order() {
        assert_eq!(all_compositions(3), vec![comp![3], comp![1, 2], comp![2, 1], comp![1, 1, 1]]);
        assert_eq!(comp![1, 2, 1].phi_index(), 5);
        assert_eq!(comp![7].phi_index(), 0);
        assert_eq!(all_compositions(0), vec![comp![]]);
        for n in 1..=8 {
            let all = all_compositions(n);
            assert_eq!(all.len(), 1 << (n - 1));
            for (i, a) in all.iter().enumerate() {
                assert_eq!(a.phi_index(), i as u64);
                assert_eq!(a.size(), n);
            }
        }
    }

    #[test]
    fn ribbon_skew() {
        let r = comp![2, 4, 3, 1].to_ribbon_skew().unwrap();
        assert_eq!(r.outer, vec![7, 7, 5, 2]);
        assert_eq!(r.inner, vec![6, 4, 1]);
        let r = comp![5].to_ribbon_skew().unwrap();
        assert_eq!((r.outer, r.inner), (vec![5], vec![]));
        let r = comp![1, 1].to_ribbon_skew().unwrap();
        assert_eq!((r.outer, r.inner), (vec![1, 1], vec![]));
        assert!(comp![].to_ribbon_skew().is_err());
        for n in 1..=8 {
            for a in all_compositions(n) {
                let r = a.to_ribbon_skew().unwrap();
                assert_eq!(r.cell_count(), n);
                assert!(r.is_valid_ribbon(), "{a} -> {r}");
            }
        }
    }

    #[test]
    fn exhaustive_involution_laws() {
        for n in 0..=8 {
            for a in all_compositions(n) {
                assert_eq!(a.reverse().reverse(), a);
                assert_eq!(a.complement().complement(), a);
                assert_eq!(a.conjugate().conjugate(), a);
                assert_eq!(a.conjugate(), a.reverse().complement());
                assert_eq!(a.conjugate(), a.complement().reverse());
                if n > 0 {
                    assert_eq!(a.len() + a.complement().len(), n + 1);
                    assert_eq!(a.descent_set().len(), a.len() - 1);
                }
                assert_eq!(a.n_stat() + a.complement().n_stat(), n * n.saturating_sub(1) / 2);
                assert_eq!(Composition::from_descent_set(&a.descent_set(), n).unwrap(), a);
            }
        }
    }

    #[test]
    fn phi_order_extends_refinement() {
        for n in 1..=8 {
            let all = all_compositions(n);
            for a in &all {
                for b in &all {
                    let ab = a.refines(b).unwrap();
                    // refinement is antisymmetric
                    if ab && b.refines(a).unwrap() {
                        assert_eq!(a, b);
                    }
                    // α ≤ β forces φ(α) ≥ φ(β): the total order refines the partial order
                    if ab {
                        assert!(a.phi_index() >= b.phi_index());
                    }
                }
            }
        }
    }

    #[test]
    fn coarsening_and_refinement_lists() {
        let a = comp![1, 2, 1];
        let up = coarsenings(&a);
        assert_eq!(up, vec![comp![4], comp![1, 3], comp![3, 1], comp![1, 2, 1]]);
        assert!(up.iter().all(|b| a.refines(b).unwrap()));
        let down = refinements(&comp![2, 1]);
        assert_eq!(down, vec![comp![2, 1], comp![1, 1, 1]]);
    }

    #[test]
    fn parsing() {
        assert_eq!("(2,4,3,1)".parse::<Composition>().unwrap(), comp![2, 4, 3, 1]);
        assert_eq!("()".parse::<Composition>().unwrap(), comp![]);
        assert_eq!("1^3,2".parse::<Composition>().unwrap(), comp![1, 1, 1, 2]);
        assert_eq!("(1^2, 3)".parse::<Composition>().unwrap(), comp![1, 1, 3]);
        assert!("(1,0)".parse::<Composition>().is_err());
        assert!("(1,2".parse::<Composition>().is_err());
        assert!("x".parse::<Composition>().is_err());
        assert_eq!(comp![2, 4, 3, 1].to_string(), "(2,4,3,1)");
        assert_eq!(comp![].to_string(), "()");
    }
}
