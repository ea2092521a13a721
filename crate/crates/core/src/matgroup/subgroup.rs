use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::group::IndexedGroup;
use super::table::{TableGroup, TABLE_CAP};
use crate::{Error, Result};

/// A subgroup of an indexed group: sorted member indices plus a membership mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<u32>,
    mask: Vec<bool>,
}

impl Subgroup {
    /// The whole group.
    pub fn full<G: IndexedGroup>(g: &G) -> Self {
        let members: Vec<u32> = (0..g.order() as u32).collect();
        Subgroup { members, mask: vec![true; g.order()] }
    }

    pub fn trivial<G: IndexedGroup>(g: &G) -> Self {
        Self::from_members_unchecked(g.order(), vec![g.identity()])
    }

    pub(crate) fn from_members_unchecked(group_order: usize, mut members: Vec<u32>) -> Self {
        members.sort_unstable();
        members.dedup();
        let mut mask = vec![false; group_order];
        for &m in &members {
            mask[m as usize] = true;
        }
        Subgroup { members, mask }
    }

    /// Accepts `elems` only if they form a subgroup of `g`.
    pub fn from_elements<G: IndexedGroup>(g: &G, elems: &[u32]) -> Result<Self> {
        if let Some(&bad) = elems.iter().find(|&&x| x as usize >= g.order()) {
            return Err(Error::structural(format!("element {bad} is not in the group")));
        }
        let candidate = Self::from_members_unchecked(g.order(), elems.to_vec());
        if !candidate.contains(g.identity()) {
            return Err(Error::structural("element set does not contain the identity"));
        }
        // Grow a generated subgroup greedily; it must end up equal to the set.
        let mut gens = Vec::new();
        let mut current = Self::trivial(g);
        for &x in &candidate.members {
            if current.contains(x) {
                continue;
            }
            gens.push(x);
            current = subgroup_generated_capped(g, &gens, candidate.order())
                .map_err(|_| Error::structural("element set is not closed under multiplication"))?;
            if current.members.iter().any(|&m| !candidate.contains(m)) {
                return Err(Error::structural("element set is not closed under multiplication"));
            }
        }
        if current.order() != candidate.order() {
            return Err(Error::structural("element set is not closed under multiplication"));
        }
        Ok(candidate)
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.mask.get(x as usize).copied().unwrap_or(false)
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    /// Membership mask indexed by group element.
    pub fn mask(&self) -> &[bool] {
        &self.mask
    }
}

/// The subgroup generated by `gens`.
pub fn subgroup_generated<G: IndexedGroup>(g: &G, gens: &[u32]) -> Subgroup {
    subgroup_generated_capped(g, gens, g.order()).expect("a subgroup is never larger than the group")
}

fn subgroup_generated_capped<G: IndexedGroup>(g: &G, gens: &[u32], cap: usize) -> Result<Subgroup> {
    let mut mask = vec![false; g.order()];
    let id = g.identity();
    mask[id as usize] = true;
    let mut members = vec![id];
    let mut i = 0;
    while i < members.len() {
        let x = members[i];
        for &s in gens {
            let y = g.try_mul(x, s).ok_or_else(|| Error::structural("product left the group"))?;
            if !mask[y as usize] {
                mask[y as usize] = true;
                members.push(y);
                if members.len() > cap {
                    return Err(Error::resource("closing a subgroup", cap as u64, members.len() as u64));
                }
            }
        }
        i += 1;
    }
    members.sort_unstable();
    Ok(Subgroup { members, mask })
}

/// Left cosets `gK` of a subgroup.
///
/// Cosets are numbered by their smallest element; `reps[c]` is that element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetPartition {
    pub class_of: Vec<u32>,
    pub reps: Vec<u32>,
    pub subgroup_order: usize,
}

impl CosetPartition {
    pub fn count(&self) -> usize {
        self.reps.len()
    }

    /// Members of coset `c`, in ascending order.
    pub fn members(&self, c: u32) -> Vec<u32> {
        (0..self.class_of.len() as u32).filter(|&x| self.class_of[x as usize] == c).collect()
    }
}

/// Partition of `g` into left cosets of `k`.
pub fn cosets<G: IndexedGroup>(g: &G, k: &Subgroup) -> Result<CosetPartition> {
    if k.mask.len() != g.order() {
        return Err(Error::structural("subgroup belongs to a different group"));
    }
    let mut class_of = vec![u32::MAX; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() as u32 {
        if class_of[x as usize] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(x);
        for &m in &k.members {
            let y = g.mul(x, m);
            if class_of[y as usize] != u32::MAX {
                return Err(Error::structural("element set is not a subgroup: cosets overlap"));
            }
            class_of[y as usize] = c;
        }
    }
    Ok(CosetPartition { class_of, reps, subgroup_order: k.order() })
}

pub fn intersection(a: &Subgroup, b: &Subgroup) -> Subgroup {
    let members: Vec<u32> = a.members.iter().copied().filter(|&x| b.contains(x)).collect();
    Subgroup::from_members_unchecked(a.mask.len(), members)
}

/// Intersection of several subgroups (the whole group for an empty list).
pub fn intersection_all<G: IndexedGroup>(g: &G, subs: &[&Subgroup]) -> Subgroup {
    let mut acc = Subgroup::full(g);
    for s in subs {
        acc = intersection(&acc, s);
    }
    acc
}

/// Smallest normal subgroup containing `elems`.
pub fn normal_closure<G: IndexedGroup>(g: &G, elems: &[u32]) -> Subgroup {
    let mut gens: Vec<u32> = elems.iter().copied().filter(|&x| x != g.identity()).collect();
    gens.sort_unstable();
    gens.dedup();
    let mut h = subgroup_generated(g, &gens);
    let conj: Vec<(u32, u32)> = g.generators().iter().map(|&s| (s, g.inv(s))).collect();
    loop {
        let mut grew = false;
        let mut i = 0;
        while i < gens.len() {
            let x = gens[i];
            for &(s, si) in &conj {
                let c = g.mul(g.mul(s, x), si);
                if !h.contains(c) {
                    gens.push(c);
                    h = subgroup_generated(g, &gens);
                    grew = true;
                }
            }
            i += 1;
        }
        if !grew {
            return h;
        }
    }
}

/// True if `n` is normalized by every generator of `g`.
pub fn is_normal<G: IndexedGroup>(g: &G, n: &Subgroup) -> bool {
    g.generators().iter().all(|&s| {
        let si = g.inv(s);
        n.members.iter().all(|&x| n.contains(g.mul(g.mul(s, x), si)))
    })
}

/// The quotient group `g / n` as a table, with the projection `g -> g/n`.
///
/// Quotient elements are the cosets ordered by smallest member, except that
/// the identity coset is moved to 0.
pub fn quotient<G: IndexedGroup>(g: &G, n: &Subgroup) -> Result<(TableGroup, Vec<u32>)> {
    if !is_normal(g, n) {
        return Err(Error::structural("subgroup is not normal"));
    }
    let part = cosets(g, n)?;
    let m = part.count();
    if m > TABLE_CAP {
        return Err(Error::resource("building a quotient table", TABLE_CAP as u64, m as u64));
    }
    // Put the identity coset at 0, keep the relative order of the rest.
    let id_class = part.class_of[g.identity() as usize];
    let renum = |c: u32| -> u32 {
        if c == id_class {
            0
        } else if c < id_class {
            c + 1
        } else {
            c
        }
    };
    let proj: Vec<u32> = part.class_of.iter().map(|&c| renum(c)).collect();
    let mut reps = vec![0u32; m];
    for (c, &r) in part.reps.iter().enumerate() {
        reps[renum(c as u32) as usize] = r;
    }
    let mut table = vec![0u32; m * m];
    for a in 0..m {
        for b in 0..m {
            table[a * m + b] = proj[g.mul(reps[a], reps[b]) as usize];
        }
    }
    let mut gens: Vec<u32> = g.generators().iter().map(|&s| proj[s as usize]).filter(|&c| c != 0).collect();
    gens.sort_unstable();
    gens.dedup();
    Ok((TableGroup::from_trusted(m, table, gens)?, proj))
}

/// Least `k >= 1` with `x^k = e`.
pub fn element_order<G: IndexedGroup>(g: &G, x: u32) -> u64 {
    let id = g.identity();
    let mut y = x;
    let mut k = 1u64;
    while y != id {
        y = g.mul(y, x);
        k += 1;
    }
    k
}

/// Checks closure, identity, inverses and associativity.
///
/// Up to `exhaustive_limit` elements every pair (and every triple for
/// associativity up to the cube root of that limit) is checked; above that,
/// `samples` random pairs and triples are drawn from a seeded generator.
pub fn verify_group_axioms<G: IndexedGroup>(g: &G, exhaustive_limit: usize, samples: usize, seed: u64) -> Result<()> {
    let m = g.order();
    let id = g.identity();
    let check_pair = |a: u32, b: u32| -> Result<u32> {
        g.try_mul(a, b).ok_or_else(|| Error::structural(format!("product of {a} and {b} leaves the group")))
    };
    let check_elem = |a: u32| -> Result<()> {
        if check_pair(a, id)? != a || check_pair(id, a)? != a {
            return Err(Error::structural(format!("identity fails on {a}")));
        }
        let ai = g.inv(a);
        if check_pair(a, ai)? != id || check_pair(ai, a)? != id {
            return Err(Error::structural(format!("inverse fails on {a}")));
        }
        Ok(())
    };
    let check_triple = |a: u32, b: u32, c: u32| -> Result<()> {
        let l = check_pair(check_pair(a, b)?, c)?;
        let r = check_pair(a, check_pair(b, c)?)?;
        if l != r {
            return Err(Error::structural(format!("associativity fails on ({a}, {b}, {c})")));
        }
        Ok(())
    };
    if m <= exhaustive_limit {
        for a in 0..m as u32 {
            check_elem(a)?;
            for b in 0..m as u32 {
                check_pair(a, b)?;
            }
        }
        let cube = (1..=m).take_while(|k| k * k * k <= exhaustive_limit).last().unwrap_or(1);
        if m <= cube {
            for a in 0..m as u32 {
                for b in 0..m as u32 {
                    for c in 0..m as u32 {
                        check_triple(a, b, c)?;
                    }
                }
            }
            return Ok(());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pick = || (rng.next_u64() % m as u64) as u32;
    for _ in 0..samples {
        let (a, b, c) = (pick(), pick(), pick());
        check_elem(a)?;
        check_triple(a, b, c)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroup::group::{bfs_closure, FiniteGroup, PermDomain};

    fn s3() -> (FiniteGroup<PermDomain>, PermDomain) {
        let d = PermDomain::new(3).unwrap();
        let gens = [d.from_cycles(&[&[1, 2]]).unwrap(), d.from_cycles(&[&[1, 2, 3]]).unwrap()];
        (bfs_closure(d, &gens, 10).unwrap(), d)
    }

    #[test]
    fn s3_cosets_and_closure() {
        let (g, d) = s3();
        let t = g.index_of(&d.from_cycles(&[&[1, 2]]).unwrap()).unwrap();
        let k = subgroup_generated(&g, &[t]);
        assert_eq!(cosets(&g, &k).unwrap().count(), 3);
        let c = g.index_of(&d.from_cycles(&[&[1, 2, 3]]).unwrap()).unwrap();
        let a3 = normal_closure(&g, &[c]);
        assert_eq!(a3.order(), 3);
        assert!(is_normal(&g, &a3));
        assert!(!is_normal(&g, &k));
        assert_eq!(normal_closure(&g, &[t]).order(), 6);
        assert_eq!(normal_closure(&g, &[g.identity()]).order(), 1);
        assert_eq!(element_order(&g, c), 3);
        assert_eq!(element_order(&g, g.identity()), 1);
    }

    #[test]
    fn quotients() {
        let (g, d) = s3();
        let c = g.index_of(&d.from_cycles(&[&[1, 2, 3]]).unwrap()).unwrap();
        let a3 = normal_closure(&g, &[c]);
        let (q, proj) = quotient(&g, &a3).unwrap();
        assert_eq!(q.order(), 2);
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(proj[g.mul(a, b) as usize], q.mul(proj[a as usize], proj[b as usize]));
            }
        }
        let (q1, _) = quotient(&g, &Subgroup::trivial(&g)).unwrap();
        assert_eq!(q1.order(), 6);
        let (qg, _) = quotient(&g, &Subgroup::full(&g)).unwrap();
        assert_eq!(qg.order(), 1);
        let t = g.index_of(&d.from_cycles(&[&[1, 2]]).unwrap()).unwrap();
        assert!(matches!(quotient(&g, &subgroup_generated(&g, &[t])), Err(Error::Structural(_))));
    }

    #[test]
    fn from_elements_validates() {
        let (g, d) = s3();
        let t = g.index_of(&d.from_cycles(&[&[1, 2]]).unwrap()).unwrap();
        let u = g.index_of(&d.from_cycles(&[&[2, 3]]).unwrap()).unwrap();
        assert!(Subgroup::from_elements(&g, &[g.identity(), t]).is_ok());
        assert!(Subgroup::from_elements(&g, &[g.identity(), t, u]).is_err());
        assert!(Subgroup::from_elements(&g, &[t]).is_err());
    }

    #[test]
    fn axioms_hold_for_s4() {
        let d = PermDomain::new(4).unwrap();
        let gens = [d.from_cycles(&[&[1, 2]]).unwrap(), d.from_cycles(&[&[1, 2, 3, 4]]).unwrap()];
        let g = bfs_closure(d, &gens, 100).unwrap();
        verify_group_axioms(&g, 100_000, 1000, 7).unwrap();
        verify_group_axioms(&g, 10, 1000, 7).unwrap();
    }
}
