//! Two-disjoint-cycle covers of `S_n^2` with prescribed lengths.
//!
//! [`dcc_construct`] relabels `u` to a canonical vertex, recurses on the
//! subnetwork structure down to the embedded `n = 4` covers and relabels the
//! result back, so the output is equivariant under symbol relabeling.

pub mod base;
mod cases;
pub mod sweep;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hamilton::Cycle;
use crate::permutation::{factorial, Permutation};

pub use base::{base_lookup, BaseSource};
pub use sweep::{pancyclicity_sweep, SweepPolicy, SweepReport};

/// Largest dimension accepted by [`dcc_construct`].
pub const MAX_DCC_DIM: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DccError {
    #[error("length {ell} outside [3, {max}]")]
    BadLength { ell: usize, max: usize },
    #[error("u and v must differ")]
    SameVertex,
    #[error("dimension {0} outside [4, {MAX_DCC_DIM}]")]
    BadDimension(usize),
    #[error("vertex {0} does not have dimension {1}")]
    DimensionMismatch(Permutation, usize),
    #[error("base covers exist for n = 4 only, got {0}")]
    NotBaseDimension(usize),
    #[error("base covers are stored for u = 1234, got {0}")]
    NotCanonical(Permutation),
    #[error("construction failed in {0}")]
    ConstructionFailed(String),
    #[error("embedded base data: {0}")]
    BaseData(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DccRequest {
    pub n: usize,
    pub u: Permutation,
    pub v: Permutation,
    pub ell: usize,
}

impl DccRequest {
    pub fn new(n: usize, u: Permutation, v: Permutation, ell: usize) -> Result<Self, DccError> {
        let req = DccRequest { n, u, v, ell };
        req.check()?;
        Ok(req)
    }

    pub fn check(&self) -> Result<(), DccError> {
        if !(4..=MAX_DCC_DIM).contains(&self.n) {
            return Err(DccError::BadDimension(self.n));
        }
        for x in [self.u, self.v] {
            if x.n() != self.n {
                return Err(DccError::DimensionMismatch(x, self.n));
            }
        }
        if self.u == self.v {
            return Err(DccError::SameVertex);
        }
        let max = max_len(self.n);
        if self.ell < 3 || self.ell > max {
            return Err(DccError::BadLength { ell: self.ell, max });
        }
        Ok(())
    }
}

pub(crate) fn max_len(n: usize) -> usize {
    factorial(n) as usize / 2
}

/// Which cycle of a cover holds a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CycleSlot {
    C1,
    C2,
}

/// Two vertex-disjoint cycles covering `S_n^2`. Constructions put `u` in
/// `c1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DccCover {
    pub c1: Cycle,
    pub c2: Cycle,
    pub u_cycle: CycleSlot,
    pub v_cycle: CycleSlot,
}

impl DccCover {
    pub(crate) fn from_pair(c1: Vec<Permutation>, c2: Vec<Permutation>) -> Self {
        DccCover {
            c1: Cycle::from_vec(c1),
            c2: Cycle::from_vec(c2),
            u_cycle: CycleSlot::C1,
            v_cycle: CycleSlot::C2,
        }
    }

    pub fn relabeled(&self, sigma: &Permutation) -> DccCover {
        DccCover {
            c1: self.c1.relabeled(sigma),
            c2: self.c2.relabeled(sigma),
            u_cycle: self.u_cycle,
            v_cycle: self.v_cycle,
        }
    }
}

/// A length band of the induction step: `sub` 1 is the main band
/// `[3 + (s-1)·B, s·B - 3]`, `sub` 2 through 6 are `s·B - 2` through
/// `s·B + 2`, with `B = (n_plus_1 - 1)!`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Band {
    pub sub: u8,
    pub s: usize,
}

/// One step of a construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    /// Induction step at dimension `dim`: `top` is 1 when `v` shares the
    /// canonical `u`'s subnetwork and 2 otherwise.
    Step { dim: usize, top: u8, sub: u8, s: usize },
    /// Embedded `n = 4` cover.
    Base { source: BaseSource, ell: usize },
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseTag::Step { dim, top, sub, s } => write!(f, "n={dim} case {top}.{sub} s={s}"),
            CaseTag::Base { source, ell } => write!(f, "n=4 base {source} ell={ell}"),
        }
    }
}

/// The band of `ell` at dimension `n_plus_1 >= 5`.
pub fn case_select(n_plus_1: usize, ell: usize) -> Result<Band, DccError> {
    if !(5..=MAX_DCC_DIM + 2).contains(&n_plus_1) {
        return Err(DccError::BadDimension(n_plus_1));
    }
    let max = max_len(n_plus_1);
    if ell < 3 || ell > max {
        return Err(DccError::BadLength { ell, max });
    }
    let b = factorial(n_plus_1 - 1) as usize;
    // bands for s start at (s-1)·B + 3 and end at s·B + 2
    let s = (ell - 3) / b + 1;
    let r = ell as isize - (s * b) as isize;
    let sub = match r {
        -2 => 2,
        -1 => 3,
        0 => 4,
        1 => 5,
        2 => 6,
        _ => 1,
    };
    debug_assert!(s <= n_plus_1.div_ceil(2));
    Ok(Band { sub, s })
}

/// Constructs a cover with `|c1| = ell`, `u ∈ c1`, `v ∈ c2`, plus the trace
/// of cases taken. `c1` starts at `u` and `c2` at `v`.
pub fn dcc_construct(req: &DccRequest) -> Result<(DccCover, Vec<CaseTag>), DccError> {
    req.check()?;
    let mut trace = Vec::new();
    let (mut c1, mut c2) = cases::construct(req.u, req.v, req.ell, &mut trace)?;
    for (c, x) in [(&mut c1, req.u), (&mut c2, req.v)] {
        if let Some(k) = c.iter().position(|y| *y == x) {
            c.rotate_left(k);
        }
    }
    Ok((DccCover::from_pair(c1, c2), trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::validate_dcc;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn band_examples() {
        assert_eq!(case_select(5, 3).unwrap(), Band { sub: 1, s: 1 });
        assert_eq!(case_select(5, 24).unwrap(), Band { sub: 4, s: 1 });
        assert_eq!(case_select(5, 50).unwrap(), Band { sub: 6, s: 2 });
        assert_eq!(case_select(5, 27).unwrap(), Band { sub: 1, s: 2 });
        assert_eq!(case_select(5, 26).unwrap(), Band { sub: 6, s: 1 });
        assert!(case_select(5, 61).is_err());
        assert!(case_select(5, 2).is_err());
    }

    #[test]
    fn band_partition_small() {
        for n1 in 5..=7 {
            let b = factorial(n1 - 1) as usize;
            for ell in 3..=max_len(n1) {
                let band = case_select(n1, ell).unwrap();
                let s = band.s;
                let hit: Vec<u8> = (1..=6u8)
                    .filter(|&sub| match sub {
                        1 => 3 + (s - 1) * b <= ell && ell + 3 <= s * b,
                        k => ell + 4 == s * b + k as usize,
                    })
                    .collect();
                assert_eq!(hit, vec![band.sub], "ell {ell}");
                assert!(s >= 1 && s <= n1.div_ceil(2));
            }
        }
    }

    #[test]
    fn request_errors() {
        assert_eq!(
            DccRequest::new(4, p("1234"), p("2134"), 13),
            Err(DccError::BadLength { ell: 13, max: 12 })
        );
        assert_eq!(DccRequest::new(4, p("1234"), p("1234"), 3), Err(DccError::SameVertex));
    }

    #[test]
    fn construct_examples() {
        let req = DccRequest::new(4, p("1234"), p("2134"), 3).unwrap();
        let (cover, _) = dcc_construct(&req).unwrap();
        assert_eq!(cover.c1.vertices(), &[p("1234"), p("3124"), p("2314")]);
        assert!(validate_dcc(4, &cover, &req.u, &req.v, 3).ok);

        let req = DccRequest::new(5, p("12345"), p("54321"), 37).unwrap();
        let (cover, trace) = dcc_construct(&req).unwrap();
        assert_eq!((cover.c1.len(), cover.c2.len()), (37, 83));
        assert!(validate_dcc(5, &cover, &req.u, &req.v, 37).ok);
        assert!(matches!(trace[0], CaseTag::Step { dim: 5, .. }));
    }
}
