use alloc::vec::Vec;

use num_traits::Float;

use crate::error::{Error, Result};

/// Information per incident photon measured from the spread of estimates.
#[derive(Debug, Clone, PartialEq)]
pub struct FisherEstimate {
    /// Mean over groups of `1 / (N̄₀ Var_g(â))`.
    pub info_per_photon: f64,
    /// Standard error of that mean across groups.
    pub std_error: f64,
    /// One value per group.
    pub group_values: Vec<f64>,
    /// Windows that yielded no estimate.
    pub discarded: usize,
    /// Surviving estimates left over after the last full group.
    pub unused: usize,
}

impl FisherEstimate {
    pub fn n_groups(&self) -> usize {
        self.group_values.len()
    }

    pub fn relative_std_error(&self) -> f64 {
        self.std_error / self.info_per_photon
    }
}

fn mean_and_var(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let ss = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>();
    (mean, ss / (n - 1.0))
}

/// Splits the surviving estimates, in window order, into consecutive groups
/// of `group_size`, computes `F_g = 1 / (n0 Var_g)` per group with the
/// unbiased sample variance, and averages. A trailing partial group is
/// ignored. At least two full groups are required.
pub fn group_fisher_estimate(
    estimates: &[Option<f64>],
    group_size: usize,
    n0: f64,
) -> Result<FisherEstimate> {
    crate::error::ensure(group_size >= 2, "group_size", group_size as f64, ">= 2")?;
    crate::error::ensure(n0.is_finite() && n0 > 0.0, "n0", n0, "> 0")?;
    let surviving: Vec<f64> = estimates.iter().flatten().copied().collect();
    let discarded = estimates.len() - surviving.len();
    let n_groups = surviving.len() / group_size;
    if n_groups < 2 {
        return Err(Error::InsufficientEstimates {
            surviving: surviving.len(),
            required: 2 * group_size,
        });
    }
    let mut group_values = Vec::with_capacity(n_groups);
    for (g, chunk) in surviving.chunks_exact(group_size).enumerate() {
        let (_, var) = mean_and_var(chunk);
        if !(var > 0.0) {
            return Err(Error::ZeroVariance { group: g });
        }
        group_values.push(1.0 / (n0 * var));
    }
    let (info, var) = mean_and_var(&group_values);
    Ok(FisherEstimate {
        info_per_photon: info,
        std_error: Float::sqrt(var / n_groups as f64),
        group_values,
        discarded,
        unused: surviving.len() % group_size,
    })
}
