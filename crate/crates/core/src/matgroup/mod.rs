//! Matrix groups over truncated polynomial rings and abstract finite groups.
//!
//! Groups are enumerated into integer-indexed arenas ([`FiniteGroup`]) or
//! given by multiplication tables ([`TableGroup`]); everything downstream
//! works with element indices through [`IndexedGroup`].

mod group;
mod kernel;
mod matrix;
mod subgroup;
mod table;

pub use group::{bfs_closure, FiniteGroup, GroupDomain, GroupOps, IndexedGroup, MatrixDomain, MatrixOps, PermDomain};
pub use kernel::{
    check_kernel_orders, embed_subgroup, gamma0_pow, ko_group, reduction_kernel, subgroup_k, subgroup_k_generators, KernelOrderReport, KernelParam,
};
pub use matrix::{elementary, permutation_matrix, MatElement};
pub use subgroup::{
    cosets, element_order, intersection, intersection_all, is_normal, normal_closure, quotient, subgroup_generated,
    verify_group_axioms, CosetPartition, Subgroup,
};
pub use table::{TableGroup, TABLE_CAP};
pub(crate) use kernel::greedy_generators;

/// Order of a matrix, found by repeated multiplication up to `limit`.
pub fn matrix_order(m: &MatElement, limit: u64) -> Option<u64> {
    let mut x = m.clone();
    for k in 1..=limit {
        if x.is_identity() {
            return Some(k);
        }
        x = x.mul(m).ok()?;
    }
    None
}
