//! Steinberg-type relations indexed by pairs of roots, the presentations
//! assembled from them, and evaluation of relation words in concrete groups.
//!
//! Generator parameters are polynomials of degree at most `d`, stored in
//! `F_p[t]/<t^(d+1)>`. Products of two parameters are formed in
//! `F_p[t]/<t^(2d+1)>`, where they are exact.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::matgroup::{elementary, GroupOps, MatElement, MatrixOps};
use crate::polyring::{enumerate_polys, TruncPoly};
use crate::rootsys::{all_roots, non_opposite_pairs, Chamber, ChamberSet, Permutation, Root};
use crate::{Error, Result};

/// The symbol `x_{i,j}(r)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorSymbol {
    pub root: Root,
    pub r: TruncPoly,
}

/// A generator or its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub sym: GeneratorSymbol,
    pub inverse: bool,
}

pub type Word = Vec<Letter>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationKind {
    Zero,
    Additive,
    Commuting,
    SteinbergProduct,
    SteinbergEquality,
    DoubleCommutator,
}

impl RelationKind {
    pub fn name(self) -> &'static str {
        match self {
            RelationKind::Zero => "zero",
            RelationKind::Additive => "additive",
            RelationKind::Commuting => "commuting",
            RelationKind::SteinbergProduct => "steinberg-product",
            RelationKind::SteinbergEquality => "steinberg-equality",
            RelationKind::DoubleCommutator => "double-commutator",
        }
    }
}

/// `lhs = rhs` as words in the generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RelationInstance {
    pub lhs: Word,
    pub rhs: Word,
    pub kind: RelationKind,
    pub source_pair: (Root, Root),
}

impl RelationInstance {
    /// Every root occurring in the relation.
    pub fn roots(&self) -> BTreeSet<Root> {
        self.lhs.iter().chain(&self.rhs).map(|l| l.sym.root).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub name: String,
    pub n: usize,
    pub p: u32,
    pub d: usize,
    pub generators: Vec<GeneratorSymbol>,
    pub relations: Vec<RelationInstance>,
}

impl Presentation {
    /// Checks that every relation only uses listed generators.
    pub fn validate(&self) -> Result<()> {
        let gens: BTreeSet<&GeneratorSymbol> = self.generators.iter().collect();
        for (k, rel) in self.relations.iter().enumerate() {
            for l in rel.lhs.iter().chain(&rel.rhs) {
                if !gens.contains(&l.sym) {
                    return Err(Error::structural(format!("relation {k} uses a symbol outside the generating set")));
                }
            }
        }
        Ok(())
    }

    /// Distinct unordered root pairs that index the relations.
    pub fn pair_set(&self) -> BTreeSet<(Root, Root)> {
        self.relations.iter().map(|r| r.source_pair).collect()
    }
}

fn letter(root: Root, r: &TruncPoly) -> Letter {
    Letter { sym: GeneratorSymbol { root, r: r.clone() }, inverse: false }
}

fn inv(l: &Letter) -> Letter {
    Letter { sym: l.sym.clone(), inverse: !l.inverse }
}

/// `[a, b] = a b a^-1 b^-1`.
pub fn commutator_word(a: &[Letter], b: &[Letter]) -> Word {
    let mut w: Word = a.to_vec();
    w.extend_from_slice(b);
    w.extend(a.iter().rev().map(inv));
    w.extend(b.iter().rev().map(inv));
    w
}

/// Parameters of degree at most `d`, in `F_p[t]/t^(d+1)`.
pub fn parameters(p: u32, d: usize) -> Result<Vec<TruncPoly>> {
    enumerate_polys(p, d + 1, d)
}

fn wide(r: &TruncPoly, d: usize) -> TruncPoly {
    r.with_precision(2 * d + 1).expect("valid ring")
}

fn narrow(r: &TruncPoly, d: usize) -> TruncPoly {
    r.with_precision(d + 1).expect("valid ring")
}

/// Puts a composable pair in the order `((i,j), (j,k))`; other pairs keep
/// their sorted order.
fn normalize(a: Root, b: Root) -> (Root, Root) {
    if a.j == b.i {
        (a, b)
    } else if b.j == a.i {
        (b, a)
    } else if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn product_map(polys: &[TruncPoly], d: usize) -> BTreeMap<TruncPoly, Vec<(usize, usize)>> {
    let mut by_product: BTreeMap<TruncPoly, Vec<(usize, usize)>> = BTreeMap::new();
    for (x, r1) in polys.iter().enumerate() {
        for (y, r2) in polys.iter().enumerate() {
            let prod = wide(r1, d).mul(&wide(r2, d)).expect("same ring");
            by_product.entry(prod).or_default().push((x, y));
        }
    }
    by_product
}

/// The relations indexed by an unordered pair of non-opposite roots.
pub fn pair_relations(a: Root, b: Root, p: u32, d: usize) -> Result<Vec<RelationInstance>> {
    if a.is_opposite(b) {
        return Err(Error::param(format!("roots ({}, {}) and ({}, {}) are opposite", a.i, a.j, b.i, b.j)));
    }
    let polys = parameters(p, d)?;
    let (a, b) = normalize(a, b);
    let pair = (a, b);
    let mut out = Vec::new();
    if a == b {
        let zero = TruncPoly::zero(p, d + 1)?;
        out.push(RelationInstance { lhs: [letter(a, &zero)].into(), rhs: Word::new(), kind: RelationKind::Zero, source_pair: pair });
        for r1 in &polys {
            for r2 in &polys {
                let sum = r1.add(r2)?;
                out.push(RelationInstance {
                    lhs: [letter(a, r1), letter(a, r2)].into(),
                    rhs: [letter(a, &sum)].into(),
                    kind: RelationKind::Additive,
                    source_pair: pair,
                });
            }
        }
    } else if a.j != b.i && b.j != a.i {
        for r1 in &polys {
            for r2 in &polys {
                out.push(RelationInstance {
                    lhs: commutator_word(&[letter(a, r1)], &[letter(b, r2)]),
                    rhs: Word::new(),
                    kind: RelationKind::Commuting,
                    source_pair: pair,
                });
            }
        }
    } else {
        // a = (i, j), b = (j, k)
        let c = Root { i: a.i, j: b.j };
        let by_product = product_map(&polys, d);
        for r1 in &polys {
            for r2 in &polys {
                let prod = wide(r1, d).mul(&wide(r2, d))?;
                if prod.deg().at_most(d) {
                    out.push(RelationInstance {
                        lhs: commutator_word(&[letter(a, r1)], &[letter(b, r2)]),
                        rhs: [letter(c, &narrow(&prod, d))].into(),
                        kind: RelationKind::SteinbergProduct,
                        source_pair: pair,
                    });
                }
            }
        }
        for group in by_product.values() {
            for (u, &(x, y)) in group.iter().enumerate() {
                for &(x2, y2) in &group[u + 1..] {
                    out.push(RelationInstance {
                        lhs: commutator_word(&[letter(a, &polys[x])], &[letter(b, &polys[y])]),
                        rhs: commutator_word(&[letter(a, &polys[x2])], &[letter(b, &polys[y2])]),
                        kind: RelationKind::SteinbergEquality,
                        source_pair: pair,
                    });
                }
            }
        }
    }
    Ok(out)
}

fn generators_over(roots: &[Root], p: u32, d: usize) -> Result<Vec<GeneratorSymbol>> {
    let polys = parameters(p, d)?;
    let mut out = Vec::with_capacity(roots.len() * polys.len());
    for &root in roots {
        for r in &polys {
            out.push(GeneratorSymbol { root, r: r.clone() });
        }
    }
    Ok(out)
}

fn relations_over(pairs: &BTreeSet<(Root, Root)>, p: u32, d: usize) -> Result<Vec<RelationInstance>> {
    let mut out = Vec::new();
    for &(a, b) in pairs {
        out.extend(pair_relations(a, b, p, d)?);
    }
    Ok(out)
}

fn normalized_pairs(pairs: impl IntoIterator<Item = (Root, Root)>) -> BTreeSet<(Root, Root)> {
    pairs.into_iter().map(|(a, b)| normalize(a, b)).collect()
}

/// All root-pair relations for all non-opposite pairs, over all roots.
pub fn presentation_sl(n: usize, p: u32, d: usize) -> Result<Presentation> {
    if n < 3 {
        return Err(Error::param(format!("the root presentation needs n >= 3, got {n}")));
    }
    let pairs = normalized_pairs(non_opposite_pairs(n));
    Ok(Presentation {
        name: String::from("sl"),
        n,
        p,
        d,
        generators: generators_over(&all_roots(n), p, d)?,
        relations: relations_over(&pairs, p, d)?,
    })
}

/// Presentation of the unipotent group generated by `x_{i,i+1}(r)`,
/// `1 <= i <= n`, inside matrices of dimension `n + 1 >= 4`.
pub fn presentation_unipotent(n: usize, p: u32, d: usize) -> Result<Presentation> {
    if n + 1 < 4 {
        return Err(Error::param(format!("the unipotent presentation needs dimension >= 4, got {}", n + 1)));
    }
    let polys = parameters(p, d)?;
    let simple: Vec<Root> = (1..=n).map(|i| Root { i, j: i + 1 }).collect();
    let mut rels = Vec::new();
    let zero = TruncPoly::zero(p, d + 1)?;
    for &a in &simple {
        rels.push(RelationInstance { lhs: [letter(a, &zero)].into(), rhs: Word::new(), kind: RelationKind::Zero, source_pair: (a, a) });
        for r1 in &polys {
            for r2 in &polys {
                rels.push(RelationInstance {
                    lhs: [letter(a, r1), letter(a, r2)].into(),
                    rhs: [letter(a, &r1.add(r2)?)].into(),
                    kind: RelationKind::Additive,
                    source_pair: (a, a),
                });
            }
        }
    }
    for &a in &simple {
        for &b in &simple {
            if a.i + 1 < b.i {
                for r1 in &polys {
                    for r2 in &polys {
                        rels.push(RelationInstance {
                            lhs: commutator_word(&[letter(a, r1)], &[letter(b, r2)]),
                            rhs: Word::new(),
                            kind: RelationKind::Commuting,
                            source_pair: (a, b),
                        });
                    }
                }
            }
        }
    }
    let by_product = product_map(&polys, d);
    for w in simple.windows(2) {
        let (a, b) = (w[0], w[1]);
        for r1 in &polys {
            for r2 in &polys {
                let inner = commutator_word(&[letter(a, r1)], &[letter(b, r2)]);
                for r3 in &polys {
                    for outer in [a, b] {
                        rels.push(RelationInstance {
                            lhs: commutator_word(&inner, &[letter(outer, r3)]),
                            rhs: Word::new(),
                            kind: RelationKind::DoubleCommutator,
                            source_pair: (a, b),
                        });
                    }
                }
            }
        }
        for group in by_product.values() {
            for (u, &(x, y)) in group.iter().enumerate() {
                for &(x2, y2) in &group[u + 1..] {
                    rels.push(RelationInstance {
                        lhs: commutator_word(&[letter(a, &polys[x])], &[letter(b, &polys[y])]),
                        rhs: commutator_word(&[letter(a, &polys[x2])], &[letter(b, &polys[y2])]),
                        kind: RelationKind::SteinbergEquality,
                        source_pair: (a, b),
                    });
                }
            }
        }
    }
    Ok(Presentation { name: String::from("unip"), n, p, d, generators: generators_over(&simple, p, d)?, relations: rels })
}

/// Root pairs used by the pre-chamber and chamber relation sets.
pub struct ChamberPairs {
    pub pre_chamber: BTreeSet<(Root, Root)>,
    pub chamber: BTreeSet<(Root, Root)>,
}

pub fn chamber_pairs(n: usize) -> ChamberPairs {
    let positive: Vec<Root> = all_roots(n).into_iter().filter(|r| r.is_positive()).collect();
    let boundary: Vec<Root> = (1..=n).map(|i| Root { i, j: i + 1 }).collect();
    let mut chamber = BTreeSet::new();
    let mut pre = BTreeSet::new();
    for &a in &positive {
        for &b in &positive {
            chamber.insert(normalize(a, b));
            if a.i == b.i || a.j == b.j {
                pre.insert(normalize(a, b));
            }
        }
    }
    for &a in &boundary {
        for &b in &boundary {
            pre.insert(normalize(a, b));
        }
    }
    ChamberPairs { pre_chamber: pre, chamber }
}

/// Relation lists `(pre_chamber, chamber)`. Both use the positive roots as
/// generators.
pub fn chamber_relation_sets(n: usize, p: u32, d: usize) -> Result<(Presentation, Presentation)> {
    if n < 2 {
        return Err(Error::param(format!("chamber relations need n >= 2, got {n}")));
    }
    let pairs = chamber_pairs(n);
    let positive: Vec<Root> = all_roots(n).into_iter().filter(|r| r.is_positive()).collect();
    let gens = generators_over(&positive, p, d)?;
    let pre = Presentation {
        name: String::from("prechamber"),
        n,
        p,
        d,
        generators: gens.clone(),
        relations: relations_over(&pairs.pre_chamber, p, d)?,
    };
    let full = Presentation { name: String::from("chamber"), n, p, d, generators: gens, relations: relations_over(&pairs.chamber, p, d)? };
    Ok((pre, full))
}

/// Relations for exactly the pairs covered by `C_0 = {C_{gamma_0^i}}`.
pub fn tilde_gamma_presentation(n: usize, p: u32, d: usize) -> Result<Presentation> {
    if n < 3 {
        return Err(Error::param(format!("this presentation needs n >= 3, got {n}")));
    }
    let c0 = ChamberSet::stage_zero(n);
    let pairs = normalized_pairs(non_opposite_pairs(n).into_iter().filter(|&(a, b)| c0.pair_covered(a, b)));
    Ok(Presentation {
        name: String::from("tilde"),
        n,
        p,
        d,
        generators: generators_over(&all_roots(n), p, d)?,
        relations: relations_over(&pairs, p, d)?,
    })
}

/// The chambers `C_{gamma_0^i}` as root sets (one per `K_i` alphabet).
pub fn stage_zero_alphabets(n: usize) -> Vec<BTreeSet<Root>> {
    ChamberSet::stage_zero(n).chambers.iter().map(|c| c.roots().into_iter().collect()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerificationReport {
    pub checked: usize,
    /// Indices of violated relations.
    pub violations: Vec<usize>,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluates every relation in `group` under `assign`.
///
/// Fails with an input error if `assign` leaves a generator undefined.
pub fn verify_relations<G, F>(pres: &Presentation, assign: F, group: &G) -> Result<VerificationReport>
where
    G: GroupOps,
    F: Fn(&GeneratorSymbol) -> Option<G::Elem>,
{
    let mut cache: BTreeMap<GeneratorSymbol, (G::Elem, G::Elem)> = BTreeMap::new();
    for sym in &pres.generators {
        let x = assign(sym).ok_or_else(|| Error::input(format!("no value assigned to x_({},{})({})", sym.root.i, sym.root.j, sym.r)))?;
        let xi = group.inv(&x);
        cache.insert(sym.clone(), (x, xi));
    }
    let eval = |w: &Word| -> Result<G::Elem> {
        let mut acc = group.identity();
        for l in w {
            let (x, xi) = cache.get(&l.sym).ok_or_else(|| Error::input("relation uses an unassigned symbol"))?;
            acc = group.mul(&acc, if l.inverse { xi } else { x });
        }
        Ok(acc)
    };
    let mut report = VerificationReport::default();
    for (k, rel) in pres.relations.iter().enumerate() {
        report.checked += 1;
        if eval(&rel.lhs)? != eval(&rel.rhs)? {
            report.violations.push(k);
        }
    }
    Ok(report)
}

/// Evaluates a presentation in `SL_{n+1}(F_p[t]/<t^s>)` with
/// `x_{i,j}(r) -> e_{i,j}(r)`.
pub fn verify_in_matrices(pres: &Presentation, s: usize) -> Result<VerificationReport> {
    let ops = MatrixOps::new(pres.n + 1, pres.p, s)?;
    let n = pres.n;
    let mut images: BTreeMap<GeneratorSymbol, MatElement> = BTreeMap::new();
    for g in &pres.generators {
        images.insert(g.clone(), elementary(n, g.root.i, g.root.j, &g.r.with_precision(s)?)?);
    }
    verify_relations(pres, |g| images.get(g).cloned(), &ops)
}

/// Outcome of sampling the identity `[x,y]^p = [x^p,y]` over pairs of
/// elementary matrices with `[x,[x,y]] = e`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CommutatorPowerReport {
    pub sampled: u64,
    pub qualifying: u64,
    pub violations: u64,
}

/// Samples pairs `x = e_a(r)`, `y = e_b(r')` of elementary matrices in
/// `SL_{n+1}(F_p[t]/<t^s>)` with uniform roots and parameters, until
/// `target` pairs satisfy `[x,[x,y]] = e` (or `10 * target` draws).
pub fn sample_commutator_power(n: usize, p: u32, s: usize, target: u64, seed: u64) -> Result<CommutatorPowerReport> {
    crate::polyring::check_ring(p, s)?;
    let roots = all_roots(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let poly = |rng: &mut ChaCha8Rng| -> Result<TruncPoly> {
        let c: Vec<u64> = (0..s).map(|_| rng.next_u64() % p as u64).collect();
        TruncPoly::from_coeffs(p, s, &c)
    };
    let mut rep = CommutatorPowerReport::default();
    while rep.qualifying < target && rep.sampled < 10 * target {
        rep.sampled += 1;
        let a = roots[(rng.next_u64() % roots.len() as u64) as usize];
        let b = roots[(rng.next_u64() % roots.len() as u64) as usize];
        let x = elementary(n, a.i, a.j, &poly(&mut rng)?)?;
        let y = elementary(n, b.i, b.j, &poly(&mut rng)?)?;
        let c = x.commutator(&y)?;
        if !x.commutator(&c)?.is_identity() {
            continue;
        }
        rep.qualifying += 1;
        let lhs = c.pow(p as u64);
        let rhs = x.pow(p as u64).commutator(&y)?;
        if lhs != rhs {
            rep.violations += 1;
        }
    }
    Ok(rep)
}

/// The chamber `C_g` for a permutation given by 1-based images.
pub fn chamber_of(images: &[usize]) -> Result<Chamber> {
    Ok(Chamber::new(Permutation::from_images(images)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroup::{elementary, MatrixDomain};

    fn r(i: usize, j: usize) -> Root {
        Root::new(i, j).unwrap()
    }

    fn count(rels: &[RelationInstance], kind: RelationKind) -> usize {
        rels.iter().filter(|x| x.kind == kind).count()
    }

    #[test]
    fn pair_counts() {
        let eq = pair_relations(r(1, 2), r(1, 2), 2, 1).unwrap();
        assert_eq!(count(&eq, RelationKind::Zero), 1);
        assert_eq!(count(&eq, RelationKind::Additive), 16);
        let dis = pair_relations(r(1, 2), r(3, 4), 2, 1).unwrap();
        assert_eq!(dis.len(), 16);
        assert!(dis.iter().all(|x| x.kind == RelationKind::Commuting));
        let comp = pair_relations(r(1, 2), r(2, 3), 2, 1).unwrap();
        // r1 r2 of degree <= 1: 7 pairs with a zero factor, plus 1*1, 1*t, t*1, 1*(1+t), (1+t)*1
        assert_eq!(count(&comp, RelationKind::SteinbergProduct), 12);
        assert!(pair_relations(r(1, 2), r(2, 1), 2, 1).is_err());
    }

    #[test]
    fn pair_relations_symmetric() {
        for (a, b) in [(r(1, 2), r(2, 3)), (r(1, 3), r(2, 4)), (r(2, 3), r(1, 2)), (r(3, 1), r(1, 2))] {
            assert_eq!(pair_relations(a, b, 3, 1).unwrap(), pair_relations(b, a, 3, 1).unwrap());
        }
    }

    #[test]
    fn sl_counts() {
        let pres = presentation_sl(3, 2, 1).unwrap();
        assert_eq!(pres.generators.len(), 48);
        assert_eq!(pres.pair_set().len(), 72);
        assert!(pres.relations.iter().all(|x| !x.source_pair.0.is_opposite(x.source_pair.1)));
        pres.validate().unwrap();
        assert!(presentation_sl(2, 2, 1).is_err());
    }

    #[test]
    fn chamber_sets() {
        let cp = chamber_pairs(3);
        assert!(cp.pre_chamber.is_subset(&cp.chamber));
        assert!(cp.chamber.contains(&(r(1, 3), r(2, 4))));
        assert!(!cp.pre_chamber.contains(&(r(1, 3), r(2, 4))));
        let cp2 = chamber_pairs(2);
        assert_eq!(cp2.pre_chamber, cp2.chamber);
    }

    #[test]
    fn sl_relations_hold_small() {
        let pres = presentation_sl(3, 2, 1).unwrap();
        let s = 3;
        let dom = MatrixDomain::new(4, 2, s).unwrap();
        let rep = verify_relations(&pres, |g| elementary(3, g.root.i, g.root.j, &g.r.with_precision(s).unwrap()).ok(), &dom).unwrap();
        assert!(rep.ok(), "{:?}", rep.violations.len());
    }

    #[test]
    fn unassigned_symbol_is_input_error() {
        let pres = presentation_sl(3, 2, 0).unwrap();
        let dom = MatrixDomain::new(4, 2, 2).unwrap();
        let res = verify_relations(&pres, |_| None, &dom);
        assert!(matches!(res, Err(Error::Input(_))));
    }
}
