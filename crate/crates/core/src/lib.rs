//! Combinatorial engine for the stratification of symmetric powers `S^m Y`
//! of a smooth `n`-dimensional variety `Y`.
//!
//! Everything is computed from the pair `(m, n)`: the refinement order on
//! partitions of `m`, the strata `W_{π,m}` and the iterated singular loci,
//! local germ models, and the discrepancy / Gorenstein / class group
//! invariants. The [`oracle`] module holds independent brute-force versions
//! used to cross-check the closed forms, and [`verify`] runs those checks.

pub mod error;
pub mod exec;
pub mod germs;
pub mod invariants;
pub mod oracle;
pub mod partitions;
pub mod poset;
pub mod refinement;
pub mod strata;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Exec;
pub use germs::{
    is_germ_singular, local_model, preimage_decomposition, GermFactor, GermModel, GermStratumProduct,
};
pub use invariants::{
    age, class_group_report, discrepancy, invariant_report, is_gorenstein, singularity_class,
    ClassGroupReport, CycleType, DivisorClass, FormalGroup, InvariantReport, Rational,
    SingularityClass, Summand,
};
pub use partitions::{
    enumerate_partitions, parse_partition, partition_count, to_multiplicity_form, MultiplicityForm,
    Partition,
};
pub use poset::{
    build_poset, build_poset_with, level_set, minimal_common_coarsenings, order_ge, order_gt,
    PosetStructure,
};
pub use refinement::{enumerate_refinements, induced_block_partition, refines, RefinementClass};
pub use strata::{
    enumerate_divisor_strata, iterated_singular_locus, recover_parameters, singular_locus_of_stratum,
    smooth_stratum_decomposition, stratum, tangent_space_dim, ClosedStratifiedSet, DivisorStratum,
    Natural, Stratum,
};
