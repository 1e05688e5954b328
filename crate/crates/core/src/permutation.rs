//! Permutations of `[1..n]`, the vertex type of the split-star network.
//!
//! A [`Permutation`] is stored in one-line notation: position `j` (1-based)
//! holds the symbol `p(j)`. Composition follows the function convention
//! "apply the right operand first": `a.compose(&b)` maps `j` to `a(b(j))`.
//! Under that convention `sigma.compose(&u)` replaces every symbol `s` of
//! `u` by `sigma(s)`, which is the symbol relabeling used for the graph
//! automorphisms.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest supported dimension. `16!` still fits in a `u64` rank.
pub const MAX_DIM: usize = 16;

/// Smallest dimension for which the split-star network is defined.
pub const MIN_DIM: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("dimension {0} outside [{MIN_DIM}, {MAX_DIM}]")]
    BadDimension(usize),
    #[error("expected {expected} symbols, found {found}")]
    BadLength { expected: usize, found: usize },
    #[error("bad token {0:?}")]
    BadToken(String),
    #[error("not a bijection on [1..{0}]")]
    NotABijection(usize),
    #[error("rank {rank} out of range for dimension {n}")]
    OutOfRange { rank: u64, n: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

/// A single symbol of `[1..n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(pub u8);

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A permutation of `[1..n]` in one-line notation.
///
/// Ordering is lexicographic for permutations of equal dimension, which is
/// also the order of [`Permutation::rank`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    n: u8,
    s: [u8; MAX_DIM],
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn check_dim(n: usize) -> Result<(), PermError> {
    if (MIN_DIM..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(PermError::BadDimension(n))
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&n), "dimension {n} unsupported");
        let mut s = [0u8; MAX_DIM];
        for (j, slot) in s.iter_mut().take(n).enumerate() {
            *slot = j as u8 + 1;
        }
        Permutation { n: n as u8, s }
    }

    /// `n (n-1) ... 2 1`.
    pub fn reversal(n: usize) -> Self {
        let mut p = Self::identity(n);
        p.s[..n].reverse();
        p
    }

    /// Builds a permutation from its one-line symbols, checking bijectivity.
    pub fn from_symbols(symbols: &[u8]) -> Result<Self, PermError> {
        let n = symbols.len();
        check_dim(n)?;
        let mut seen = 0u32;
        for &x in symbols {
            if x == 0 || x as usize > n || seen & (1 << x) != 0 {
                return Err(PermError::NotABijection(n));
            }
            seen |= 1 << x;
        }
        let mut s = [0u8; MAX_DIM];
        s[..n].copy_from_slice(symbols);
        Ok(Permutation { n: n as u8, s })
    }

    /// Internal constructor for symbol arrays already known to be valid.
    /// Dimensions below [`MIN_DIM`] are allowed for intermediate use.
    pub(crate) fn from_raw(symbols: &[u8]) -> Self {
        debug_assert!(!symbols.is_empty() && symbols.len() <= MAX_DIM);
        let mut s = [0u8; MAX_DIM];
        s[..symbols.len()].copy_from_slice(symbols);
        Permutation {
            n: symbols.len() as u8,
            s,
        }
    }

    /// Parses the textual form: `n` digits for `n <= 9`, comma-separated
    /// integers otherwise.
    pub fn parse(text: &str, n: usize) -> Result<Self, PermError> {
        check_dim(n)?;
        let text = text.trim();
        let tokens: Vec<u8> = if n <= 9 {
            text.chars()
                .map(|c| {
                    c.to_digit(10)
                        .filter(|&d| d > 0)
                        .map(|d| d as u8)
                        .ok_or_else(|| PermError::BadToken(c.to_string()))
                })
                .collect::<Result<_, _>>()?
        } else {
            text.split(',')
                .map(|t| t.trim().parse::<u8>().map_err(|_| PermError::BadToken(t.to_string())))
                .collect::<Result<_, _>>()?
        };
        if tokens.len() != n {
            return Err(PermError::BadLength {
                expected: n,
                found: tokens.len(),
            });
        }
        Self::from_symbols(&tokens)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn symbols(&self) -> &[u8] {
        &self.s[..self.n as usize]
    }

    /// Symbol at 1-based position `pos`.
    #[inline]
    pub fn at(&self, pos: usize) -> u8 {
        self.s[pos - 1]
    }

    #[inline]
    pub fn last(&self) -> u8 {
        self.s[self.n as usize - 1]
    }

    #[inline]
    pub(crate) fn raw_mut(&mut self) -> &mut [u8] {
        &mut self.s[..self.n as usize]
    }

    /// Lexicographic (Lehmer) rank in `[0, n! - 1]`.
    pub fn rank(&self) -> u64 {
        let n = self.n();
        let mut used = 0u32;
        let mut r = 0u64;
        for j in 0..n {
            let x = self.s[j];
            let smaller_unused = (x as u32 - 1) - (used & ((1u32 << x) - 1)).count_ones();
            r = r * (n - j) as u64 + smaller_unused as u64;
            used |= 1 << x;
        }
        r
    }

    pub fn unrank(rank: u64, n: usize) -> Result<Self, PermError> {
        check_dim(n)?;
        if rank >= factorial(n) {
            return Err(PermError::OutOfRange { rank, n });
        }
        Ok(Self::unrank_raw(rank, n))
    }

    pub(crate) fn unrank_raw(mut rank: u64, n: usize) -> Self {
        let mut digits = [0u8; MAX_DIM];
        for j in (0..n).rev() {
            let base = (n - j) as u64;
            digits[j] = (rank % base) as u8;
            rank /= base;
        }
        let mut avail: Vec<u8> = (1..=n as u8).collect();
        let mut s = [0u8; MAX_DIM];
        for j in 0..n {
            s[j] = avail.remove(digits[j] as usize);
        }
        Permutation { n: n as u8, s }
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Result<Self, PermError> {
        if self.n != other.n {
            return Err(PermError::DimensionMismatch(self.n(), other.n()));
        }
        Ok(self.compose_unchecked(other))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Self {
        let mut out = *other;
        for x in out.raw_mut() {
            *x = self.s[*x as usize - 1];
        }
        out
    }

    pub fn inverse(&self) -> Self {
        let mut out = *self;
        for (j, &x) in self.symbols().iter().enumerate() {
            out.s[x as usize - 1] = j as u8 + 1;
        }
        out
    }

    /// All permutations of dimension `n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        (0..factorial(n)).map(move |r| Self::unrank_raw(r, n))
    }

    /// The textual form accepted by [`Permutation::parse`].
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for &x in self.symbols() {
                write!(f, "{x}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.symbols().iter().map(|x| x.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{self}>")
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    /// Parses with the dimension inferred from the text: the number of
    /// comma-separated tokens if a comma is present, the digit count
    /// otherwise.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let n = if s.contains(',') {
            s.split(',').count()
        } else {
            s.chars().count()
        };
        Permutation::parse(s, n)
    }
}

impl serde::Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(Permutation::parse("1234", 4).unwrap().symbols(), &[1, 2, 3, 4]);
        assert_eq!(Permutation::parse("4321", 4).unwrap().symbols(), &[4, 3, 2, 1]);
        assert_eq!(Permutation::parse("1224", 4), Err(PermError::NotABijection(4)));
        assert!(matches!(Permutation::parse("123", 4), Err(PermError::BadLength { .. })));
        assert!(matches!(Permutation::parse("12a4", 4), Err(PermError::BadToken(_))));
        assert!(matches!(Permutation::parse("1203", 4), Err(PermError::BadToken(_))));
    }

    #[test]
    fn wide_dimensions_use_commas() {
        let q = Permutation::parse("10,9,8,7,6,5,4,3,2,1", 10).unwrap();
        assert_eq!(q, Permutation::reversal(10));
        assert_eq!(q.to_string(), "10,9,8,7,6,5,4,3,2,1");
        assert_eq!(Permutation::parse(&q.to_string(), 10).unwrap(), q);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(p("1234").rank(), 0);
        assert_eq!(p("4321").rank(), 23);
        assert_eq!(p("1243").rank(), 1);
        assert_eq!(Permutation::unrank(0, 4).unwrap(), p("1234"));
        assert_eq!(Permutation::unrank(23, 4).unwrap(), p("4321"));
        assert_eq!(
            Permutation::unrank(24, 4),
            Err(PermError::OutOfRange { rank: 24, n: 4 })
        );
    }

    /// Independent enumeration: generate all permutations of [4] by
    /// recursive choice in increasing order and compare to rank.
    #[test]
    fn rank_matches_recursive_enumeration() {
        fn gen(prefix: &mut Vec<u8>, left: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
            if left.is_empty() {
                out.push(prefix.clone());
                return;
            }
            for k in 0..left.len() {
                let x = left.remove(k);
                prefix.push(x);
                gen(prefix, left, out);
                prefix.pop();
                left.insert(k, x);
            }
        }
        for n in 3..=5 {
            let mut out = Vec::new();
            gen(&mut Vec::new(), &mut (1..=n as u8).collect(), &mut out);
            for (r, sym) in out.iter().enumerate() {
                let q = Permutation::from_symbols(sym).unwrap();
                assert_eq!(q.rank(), r as u64);
                assert_eq!(Permutation::unrank(r as u64, n).unwrap(), q);
            }
        }
    }

    #[test]
    fn compose_and_inverse_examples() {
        let id = Permutation::identity(4);
        let t = p("2134");
        let q = p("3142");
        assert_eq!(id.compose(&q).unwrap(), q);
        assert_eq!(t.inverse(), t);
        assert_eq!(t.compose(&t).unwrap(), id);
        assert_eq!(q.compose(&q.inverse()).unwrap(), id);
        assert_eq!(
            q.compose(&Permutation::identity(5)),
            Err(PermError::DimensionMismatch(4, 5))
        );
    }

    /// Left composition by a transposition of symbols swaps those symbols
    /// wherever they occur, i.e. it is symbol relabeling.
    #[test]
    fn composition_convention_is_symbol_relabeling() {
        let swap13 = p("3214");
        let u = p("1234");
        assert_eq!(swap13.compose(&u).unwrap(), p("3214"));
        let w = p("4132");
        assert_eq!(swap13.compose(&w).unwrap(), p("4312"));
    }

    #[test]
    fn rejects_bad_dimensions() {
        assert_eq!(Permutation::parse("12", 2), Err(PermError::BadDimension(2)));
        assert!(Permutation::from_symbols(&[1, 2]).is_err());
    }
}
