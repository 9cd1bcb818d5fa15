//! Local models of `S^m Y` at a point of multiplicity type `π`.
//!
//! Near a cycle `Σ a_i y_i` with distinct `y_i`, `S^m Y` looks like the
//! product of the germs `X_{a_i} = <S^{a_i} A^n, 0>`. A stratum `W_{π′}` through
//! that point pulls back to a union of products of germ strata, one product
//! per refinement class of `π` by `π′`. Germs are symbolic here: a model is
//! just `(n, factor list)`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::poset::order_ge;
use crate::refinement::enumerate_refinements;
use crate::strata::{check_n, check_partition_of};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GermModel {
    n: u32,
    factors: Vec<u32>,
}

impl GermModel {
    pub fn n(&self) -> u32 {
        self.n
    }

    /// `a_1 ≥ … ≥ a_k`; factor `a` is `<S^a A^n, 0>`.
    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn dimension(&self) -> u64 {
        self.n as u64 * self.factors.iter().map(|&a| a as u64).sum::<u64>()
    }

    pub fn smooth_factor_count(&self) -> usize {
        self.factors.iter().filter(|&&a| a == 1).count()
    }

    /// True when some factor has `a ≥ 2`, i.e. the point is singular.
    pub fn has_singular_factor(&self) -> bool {
        self.factors.iter().any(|&a| a >= 2)
    }
}

impl fmt::Display for GermModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self
            .factors
            .iter()
            .map(|&a| {
                if a == 1 {
                    format!("<A^{},0>", self.n)
                } else {
                    format!("X_{a}")
                }
            })
            .collect();
        f.write_str(&s.join(" x "))
    }
}

pub fn local_model(m: u32, n: u32, pi: &Partition) -> Result<GermModel> {
    check_n(n)?;
    check_partition_of(m, pi)?;
    Ok(GermModel {
        n,
        factors: pi.parts().to_vec(),
    })
}

/// Germ stratum `W^g_{block, ambient}` inside `X_{ambient}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GermFactor {
    pub ambient: u32,
    pub block: Partition,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GermStratumProduct {
    factors: Vec<GermFactor>,
    #[serde(rename = "dim")]
    dimension: u64,
}

impl GermStratumProduct {
    pub fn factors(&self) -> &[GermFactor] {
        &self.factors
    }

    /// `n · Σ |block_i|`.
    pub fn dimension(&self) -> u64 {
        self.dimension
    }
}

impl fmt::Display for GermStratumProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self
            .factors
            .iter()
            .map(|g| format!("W^g_{{{},{}}}", g.block, g.ambient))
            .collect();
        write!(f, "{}", s.join(" x "))
    }
}

/// Preimage of `<W_{target}, p>` under the local isomorphism at a point `p`
/// of type `point`; requires `point ≥ target`.
pub fn preimage_decomposition(
    m: u32,
    n: u32,
    point: &Partition,
    target: &Partition,
) -> Result<Vec<GermStratumProduct>> {
    check_n(n)?;
    check_partition_of(m, point)?;
    check_partition_of(m, target)?;
    if !order_ge(point, target)? {
        return Err(Error::NotCoarser {
            point: point.to_string(),
            target: target.to_string(),
        });
    }
    let classes = enumerate_refinements(target, point)?;
    Ok(classes
        .into_iter()
        .map(|rc| {
            let factors: Vec<GermFactor> = rc
                .coarse()
                .parts()
                .iter()
                .zip(rc.blocks())
                .map(|(&ambient, block)| GermFactor {
                    ambient,
                    block: block.clone(),
                })
                .collect();
            let parts: u64 = factors.iter().map(|g| g.block.len() as u64).sum();
            GermStratumProduct {
                factors,
                dimension: n as u64 * parts,
            }
        })
        .collect())
}

/// `W^g_{π,m}` is singular exactly when `π` has more than one part.
pub fn is_germ_singular(pi: &Partition) -> bool {
    pi.len() > 1
}
