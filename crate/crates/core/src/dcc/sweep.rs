//! Runs [`dcc_construct`](super::dcc_construct) over many instances with
//! `u` fixed to the identity.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::permutation::{factorial, Permutation};
use crate::verify::validate_dcc;

use super::{dcc_construct, max_len, DccRequest};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepPolicy {
    Full,
    Sample { count: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepFailure {
    pub v: Permutation,
    pub ell: usize,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepReport {
    pub n: usize,
    pub instances: usize,
    pub passes: usize,
    pub failures: Vec<SweepFailure>,
    pub wall: Duration,
}

impl SweepReport {
    pub fn all_pass(&self) -> bool {
        self.failures.is_empty() && self.passes == self.instances
    }
}

/// The `(v, ell)` pairs a policy visits, in a fixed order.
pub fn instances(n: usize, policy: SweepPolicy) -> Vec<(Permutation, usize)> {
    let max = max_len(n);
    match policy {
        SweepPolicy::Full => Permutation::all(n)
            .skip(1)
            .flat_map(|v| (3..=max).map(move |ell| (v, ell)))
            .collect(),
        SweepPolicy::Sample { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let total = factorial(n);
            let mut out = Vec::with_capacity(count);
            while out.len() < count {
                let v = Permutation::unrank(rng.gen_range(1..total), n).expect("rank in range");
                let ell = rng.gen_range(3..=max);
                out.push((v, ell));
            }
            out.shuffle(&mut rng);
            out
        }
    }
}

fn run_one(n: usize, v: Permutation, ell: usize) -> Result<(), String> {
    let u = Permutation::identity(n);
    let req = DccRequest::new(n, u, v, ell).map_err(|e| e.to_string())?;
    let (cover, _) = dcc_construct(&req).map_err(|e| e.to_string())?;
    let report = validate_dcc(n, &cover, &u, &v, ell);
    if report.ok {
        Ok(())
    } else {
        Err(report.to_string())
    }
}

/// Constructs and validates every instance of the policy. Failures are
/// collected, never raised.
pub fn pancyclicity_sweep(n: usize, policy: SweepPolicy) -> SweepReport {
    let start = Instant::now();
    let work = instances(n, policy);
    let mut failures: Vec<SweepFailure> = work
        .par_iter()
        .filter_map(|&(v, ell)| run_one(n, v, ell).err().map(|reason| SweepFailure { v, ell, reason }))
        .collect();
    failures.sort_by_key(|f| (f.v, f.ell));
    SweepReport {
        n,
        instances: work.len(),
        passes: work.len() - failures.len(),
        failures,
        wall: start.elapsed(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instance_counts() {
        assert_eq!(instances(4, SweepPolicy::Full).len(), 230);
        assert_eq!(instances(5, SweepPolicy::Full).len(), 6902);
        let a = instances(7, SweepPolicy::Sample { count: 50, seed: 1 });
        assert_eq!(a, instances(7, SweepPolicy::Sample { count: 50, seed: 1 }));
        assert_eq!(a.len(), 50);
    }
}
