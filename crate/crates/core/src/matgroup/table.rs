use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::group::{bfs_closure, IndexedGroup, PermDomain};
use crate::{Error, Result};

/// A finite group given by its full multiplication table.
///
/// The identity is always element 0. `labels[i]` remembers the label element
/// `i` had in the source it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableGroup {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    generators: Vec<u32>,
    labels: Vec<u32>,
}

/// Tables above this order are refused (the table has `order^2` entries).
pub const TABLE_CAP: usize = 1 << 13;

impl TableGroup {
    /// Validates a row-major table, including associativity.
    pub fn from_table(order: usize, table: Vec<u32>) -> Result<Self> {
        if order == 0 || order > TABLE_CAP {
            return Err(Error::param(format!("table order {order} outside 1..={TABLE_CAP}")));
        }
        if table.len() != order * order {
            return Err(Error::input(format!("table has {} entries, expected {}", table.len(), order * order)));
        }
        if table.iter().any(|&x| x as usize >= order) {
            return Err(Error::input("table entry out of range"));
        }
        let id = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] as usize == x && table[x * order + e] as usize == x))
            .ok_or_else(|| Error::structural("table has no two-sided identity"))?;
        // Swap labels `id` and 0 so the identity is element 0.
        let relabel: Vec<u32> = (0..order as u32)
            .map(|x| if x as usize == id { 0 } else if x == 0 { id as u32 } else { x })
            .collect();
        let mut t = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                t[relabel[a] as usize * order + relabel[b] as usize] = relabel[table[a * order + b] as usize];
            }
        }
        let labels = relabel.clone();
        let mut g = Self::assemble(order, t, Vec::new())?;
        // labels[new] = old; relabel is an involution.
        g.labels = labels;
        g.generators = g.greedy_generators();
        g.check_associative()?;
        Ok(g)
    }

    fn assemble(order: usize, table: Vec<u32>, generators: Vec<u32>) -> Result<Self> {
        let mut inverse = vec![u32::MAX; order];
        for a in 0..order {
            let row = &table[a * order..(a + 1) * order];
            let b = row.iter().position(|&x| x == 0).ok_or_else(|| Error::structural(format!("element {a} has no inverse")))?;
            inverse[a] = b as u32;
        }
        for a in 0..order {
            let mut seen = vec![false; order];
            for &x in &table[a * order..(a + 1) * order] {
                if core::mem::replace(&mut seen[x as usize], true) {
                    return Err(Error::structural("table row is not a permutation"));
                }
            }
        }
        Ok(TableGroup { order, table, inverse, generators, labels: (0..order as u32).collect() })
    }

    /// Cayley table of any indexed group, up to [`TABLE_CAP`] elements.
    ///
    /// Element numbering is kept, except that the identity is moved to 0.
    pub fn from_indexed<G: IndexedGroup>(g: &G) -> Result<Self> {
        let m = g.order();
        if m > TABLE_CAP {
            return Err(Error::resource("building a multiplication table", TABLE_CAP as u64, m as u64));
        }
        let mut table = Vec::with_capacity(m * m);
        for a in 0..m as u32 {
            for b in 0..m as u32 {
                table.push(g.mul(a, b));
            }
        }
        let mut t = Self::from_table(m, table)?;
        t.generators = g.generators().iter().map(|&x| t.from_label(x)).filter(|&x| x != 0).collect();
        Ok(t)
    }

    /// Cyclic group `Z/m` with element `k` meaning `k mod m`.
    pub fn cyclic(m: usize) -> Result<Self> {
        if m == 0 || m > TABLE_CAP {
            return Err(Error::param(format!("cyclic order {m} outside 1..={TABLE_CAP}")));
        }
        let table = (0..m * m).map(|e| ((e / m + e % m) % m) as u32).collect();
        let gens = if m > 1 { vec![1] } else { Vec::new() };
        Self::assemble(m, table, gens)
    }

    /// Symmetric group on `k` points, elements numbered by BFS from the
    /// generators `(1 2)` and `(1 2 ... k)`.
    pub fn symmetric(k: usize) -> Result<Self> {
        if k == 0 || k > 6 {
            return Err(Error::param(format!("symmetric degree {k} outside 1..=6")));
        }
        let d = PermDomain::new(k)?;
        let mut gens = Vec::new();
        if k >= 2 {
            gens.push(d.from_cycles(&[&[1, 2]])?);
            let cyc: Vec<usize> = (1..=k).collect();
            gens.push(d.from_cycles(&[&cyc])?);
        }
        let g = bfs_closure(d, &gens, 720)?;
        Self::from_indexed(&g)
    }

    /// Builds a table group from a quotient table whose identity is 0.
    pub(crate) fn from_trusted(order: usize, table: Vec<u32>, generators: Vec<u32>) -> Result<Self> {
        Self::assemble(order, table, generators)
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    /// Label the element had before the identity was moved to index 0.
    pub fn label(&self, i: u32) -> u32 {
        self.labels[i as usize]
    }

    /// Index of the element that carried `label` in the source.
    pub fn from_label(&self, label: u32) -> u32 {
        // The relabeling is a single transposition, hence its own inverse.
        self.labels[label as usize]
    }

    /// Elements whose order is exactly `k`.
    pub fn elements_of_order(&self, k: u64) -> Vec<u32> {
        (0..self.order as u32).filter(|&x| super::element_order(self, x) == k).collect()
    }

    pub fn is_abelian(&self) -> bool {
        let m = self.order;
        (0..m).all(|a| (0..m).all(|b| self.table[a * m + b] == self.table[b * m + a]))
    }

    /// Light's test: associativity only needs checking against a
    /// generating set.
    fn check_associative(&self) -> Result<()> {
        let m = self.order;
        for &g in &self.generators {
            let g = g as usize;
            for x in 0..m {
                let xg = self.table[x * m + g] as usize;
                for y in 0..m {
                    let gy = self.table[g * m + y] as usize;
                    if self.table[xg * m + y] != self.table[x * m + gy] {
                        return Err(Error::structural(format!("table is not associative at ({x}, {g}, {y})")));
                    }
                }
            }
        }
        Ok(())
    }

    fn greedy_generators(&self) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut inside = vec![false; self.order];
        inside[0] = true;
        for x in 1..self.order as u32 {
            if inside[x as usize] {
                continue;
            }
            gens.push(x);
            let sub = super::subgroup_generated(self, &gens);
            for &m in sub.members() {
                inside[m as usize] = true;
            }
        }
        gens
    }
}

impl IndexedGroup for TableGroup {
    fn order(&self) -> usize {
        self.order
    }

    fn identity(&self) -> u32 {
        0
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order + b as usize]
    }

    fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    fn generators(&self) -> &[u32] {
        &self.generators
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_and_symmetric() {
        let z3 = TableGroup::cyclic(3).unwrap();
        assert_eq!(z3.mul(2, 2), 1);
        assert_eq!(z3.inv(1), 2);
        let s3 = TableGroup::symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(s3.elements_of_order(2).len(), 3);
        assert_eq!(TableGroup::symmetric(4).unwrap().order(), 24);
    }

    #[test]
    fn identity_moved_to_zero() {
        // Z/2 written with identity labelled 1.
        let t = TableGroup::from_table(2, vec![1, 0, 0, 1]).unwrap();
        assert_eq!(t.mul(1, 1), 0);
        assert_eq!(t.label(0), 1);
        assert_eq!(t.from_label(1), 0);
    }

    #[test]
    fn rejects_non_groups() {
        assert!(TableGroup::from_table(2, vec![0, 1, 1, 1]).is_err());
        assert!(TableGroup::from_table(2, vec![0, 1, 1]).is_err());
        assert!(TableGroup::from_table(2, vec![0, 2, 1, 0]).is_err());
    }
}
