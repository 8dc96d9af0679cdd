//! Scott-topological invariants of finite posets.
//!
//! On a finite poset every directed set has a greatest element, so the Scott
//! topology is the Alexandrov topology: closed sets are exactly the lower sets.
//! The fast paths use that; the `*_by_definition` functions do not and serve as
//! oracles.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poset::{inclusion_poset, poset_iso, FinitePoset};
use crate::subset::Subset;

/// Default refusal threshold for |ΓP|.
pub const GAMMA_CAP_DEFAULT: usize = 1 << 16;
pub const KF_MAX_ELEMENTS: usize = 4;
pub const WELL_FILTERED_BRUTE_MAX: usize = 5;
/// Above this many compact saturated sets, the brute-force well-filtered scan
/// enumerates chains instead of arbitrary families.
const FAMILY_SCAN_MAX: usize = 16;

/// The configured |ΓP| cap: `SCOTTLAB_CAP` if set and parseable, else the default.
pub fn gamma_cap() -> usize {
    std::env::var("SCOTTLAB_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(GAMMA_CAP_DEFAULT)
}

/// ΓP ordered by inclusion.
#[derive(Debug, Clone)]
pub struct GammaLattice {
    base: FinitePoset,
    carrier: Vec<Subset>,
    index: HashMap<Subset, usize>,
}

impl GammaLattice {
    pub fn base(&self) -> &FinitePoset {
        &self.base
    }

    /// Members sorted by (size, mask); `carrier()[0]` is ∅.
    pub fn carrier(&self) -> &[Subset] {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn index_of(&self, s: Subset) -> Option<usize> {
        self.index.get(&s).copied()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.index.contains_key(&s)
    }

    pub fn top(&self) -> Subset {
        self.base.all()
    }

    /// The lattice as a poset (labels are the member sets).
    pub fn as_poset(&self) -> Result<FinitePoset> {
        members_poset(&self.base, &self.carrier)
    }

    /// Members that are not the union of the members strictly below them.
    pub fn join_irreducibles(&self) -> Vec<Subset> {
        self.carrier
            .iter()
            .copied()
            .filter(|&a| {
                let below = self
                    .carrier
                    .iter()
                    .filter(|&&b| b.is_proper_subset(a))
                    .fold(Subset::EMPTY, |acc, &b| acc.union(b));
                !a.is_empty() && below != a
            })
            .collect()
    }
}

/// Inclusion poset on a list of subsets of `p`, labelled by their contents.
pub fn members_poset(p: &FinitePoset, sets: &[Subset]) -> Result<FinitePoset> {
    inclusion_poset(p.show_all(sets), sets)
}

pub fn gamma(p: &FinitePoset) -> Result<GammaLattice> {
    gamma_with_cap(p, gamma_cap())
}

pub fn gamma_with_cap(p: &FinitePoset, cap: usize) -> Result<GammaLattice> {
    let carrier = p.lower_sets(cap)?;
    let index = carrier.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    Ok(GammaLattice {
        base: p.clone(),
        carrier,
        index,
    })
}

pub fn scott_closure(p: &FinitePoset, s: Subset) -> Subset {
    p.down_closure(s)
}

pub fn is_scott_closed(p: &FinitePoset, s: Subset) -> bool {
    p.is_lower(s)
}

/// Lower set that contains the sup of each of its directed subsets.
pub fn is_scott_closed_by_definition(p: &FinitePoset, s: Subset) -> bool {
    p.is_lower(s)
        && s.subsets().all(|d| {
            !p.is_directed(d) || p.sup_of(d).is_none_or(|x| s.contains(x))
        })
}

/// Intersection of all definition-closed supersets of `s`.
pub fn scott_closure_by_definition(p: &FinitePoset, s: Subset) -> Subset {
    let rest = p.all().difference(s);
    rest.subsets()
        .map(|extra| s.union(extra))
        .filter(|&c| is_scott_closed_by_definition(p, c))
        .fold(p.all(), |acc, c| acc.intersection(c))
}

fn require_closed(p: &FinitePoset, c: Subset) -> Result<()> {
    if !c.is_subset(p.all()) || !p.is_lower(c) {
        return Err(Error::NotClosed(p.show(c)));
    }
    Ok(())
}

/// Open-set formulation: C meets ↑x and ↑y ⟹ C meets ↑x ∩ ↑y (principal opens suffice).
pub fn is_irreducible(p: &FinitePoset, c: Subset) -> Result<bool> {
    require_closed(p, c)?;
    Ok(!c.is_empty()
        && c.iter().all(|x| {
            c.iter()
                .all(|y| c.meets(p.up(x).intersection(p.up(y))))
        }))
}

/// Pair-of-closed-sets definition over the supplied lattice.
pub fn is_irreducible_by_definition(g: &GammaLattice, c: Subset) -> Result<bool> {
    require_closed(g.base(), c)?;
    if c.is_empty() {
        return Ok(false);
    }
    for &a in g.carrier() {
        for &b in g.carrier() {
            if c.is_subset(a.union(b)) && !c.is_subset(a) && !c.is_subset(b) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// IRR(P), in carrier order.
pub fn irr(p: &FinitePoset) -> Result<Vec<Subset>> {
    let g = gamma(p)?;
    irr_of(&g)
}

pub fn irr_of(g: &GammaLattice) -> Result<Vec<Subset>> {
    let mut out = Vec::new();
    for &c in g.carrier() {
        if is_irreducible(g.base(), c)? {
            out.push(c);
        }
    }
    Ok(out)
}

/// IRR(P) ordered by inclusion.
pub fn sobrification(p: &FinitePoset) -> Result<FinitePoset> {
    members_poset(p, &irr(p)?)
}

/// Every irreducible closed set is ↓x for exactly one x.
pub fn is_sober(p: &FinitePoset) -> Result<bool> {
    Ok(non_principal_irreducibles(p)?.is_empty())
}

/// Irreducible closed sets that are not the closure of a unique point.
pub fn non_principal_irreducibles(p: &FinitePoset) -> Result<Vec<Subset>> {
    Ok(irr(p)?
        .into_iter()
        .filter(|&c| (0..p.len()).filter(|&x| p.down(x) == c).count() != 1)
        .collect())
}

/// Q(P): all nonempty upper sets (every subset of a finite space is compact).
pub fn compact_saturated(p: &FinitePoset) -> Result<Vec<Subset>> {
    let g = gamma(p)?;
    let mut out: Vec<Subset> = g
        .carrier()
        .iter()
        .map(|c| c.complement(p.len()))
        .filter(|k| !k.is_empty())
        .collect();
    out.sort_by_key(|s| (s.len(), s.0));
    Ok(out)
}

/// Upper sets, i.e. the Scott opens.
fn opens(p: &FinitePoset) -> Result<Vec<Subset>> {
    Ok(gamma(p)?
        .carrier()
        .iter()
        .map(|c| c.complement(p.len()))
        .collect())
}

fn is_filtered_family(family: &[Subset]) -> bool {
    !family.is_empty()
        && family.iter().all(|&a| {
            family
                .iter()
                .all(|&b| family.iter().any(|&c| c.is_subset(a.intersection(b))))
        })
}

/// Enumerates the filtered families of `q` that the brute-force scans inspect:
/// every filtered subfamily when `q` is small, otherwise every chain.
fn for_each_filtered_family(q: &[Subset], mut f: impl FnMut(&[Subset]) -> bool) -> bool {
    if q.len() <= FAMILY_SCAN_MAX {
        for mask in Subset::full(q.len()).subsets() {
            let fam: Vec<Subset> = mask.iter().map(|i| q[i]).collect();
            if is_filtered_family(&fam) && !f(&fam) {
                return false;
            }
        }
        true
    } else {
        // q is sorted by size, so strictly decreasing chains extend leftwards
        fn rec(q: &[Subset], chain: &mut Vec<Subset>, f: &mut dyn FnMut(&[Subset]) -> bool) -> bool {
            if !f(chain) {
                return false;
            }
            let last = *chain.last().expect("nonempty chain");
            for &k in q {
                if k.is_proper_subset(last) {
                    chain.push(k);
                    let ok = rec(q, chain, f);
                    chain.pop();
                    if !ok {
                        return false;
                    }
                }
            }
            true
        }
        q.iter().all(|&k| rec(q, &mut vec![k], &mut f))
    }
}

/// Definition scan over filtered families and opens (|P| ≤ 5).
pub fn is_well_filtered_brute(p: &FinitePoset) -> Result<bool> {
    well_filtered_counterexample(p).map(|w| w.is_none())
}

/// A filtered family and an open U with ⋂𝒦 ⊆ U but no member inside U.
pub fn well_filtered_counterexample(p: &FinitePoset) -> Result<Option<(Vec<Subset>, Subset)>> {
    if p.len() > WELL_FILTERED_BRUTE_MAX {
        return Err(Error::cap(
            "well-filtered brute force |P|",
            WELL_FILTERED_BRUTE_MAX,
            p.len(),
        ));
    }
    let q = compact_saturated(p)?;
    let us = opens(p)?;
    let mut witness = None;
    for_each_filtered_family(&q, |fam| {
        let meet = fam.iter().fold(p.all(), |acc, &k| acc.intersection(k));
        for &u in &us {
            if meet.is_subset(u) && !fam.iter().any(|k| k.is_subset(u)) {
                witness = Some((fam.to_vec(), u));
                return false;
            }
        }
        true
    });
    Ok(witness)
}

/// Shortcut: a finite filtered family contains a least member, which is its
/// intersection, so the defining implication holds with that member.
pub fn is_well_filtered_shortcut(p: &FinitePoset) -> Result<bool> {
    let q = compact_saturated(p)?;
    let mut ok = true;
    // spot-check the structural fact on every pair-generated family
    for &a in &q {
        for &b in &q {
            let fam: Vec<Subset> = q
                .iter()
                .copied()
                .filter(|k| a.intersection(b).is_subset(*k))
                .collect();
            if is_filtered_family(&fam) {
                let meet = fam.iter().fold(p.all(), |acc, &k| acc.intersection(k));
                ok &= fam.contains(&meet);
            }
        }
    }
    Ok(ok)
}

pub fn is_well_filtered(p: &FinitePoset) -> Result<bool> {
    if p.len() <= WELL_FILTERED_BRUTE_MAX {
        is_well_filtered_brute(p)
    } else {
        is_well_filtered_shortcut(p)
    }
}

/// Closed KF-sets: closed A that is a minimal closed set meeting every member
/// of some filtered family of compact saturated sets (|P| ≤ 4).
pub fn kf_sets(p: &FinitePoset) -> Result<Vec<Subset>> {
    if p.len() > KF_MAX_ELEMENTS {
        return Err(Error::cap("KF-set enumeration |P|", KF_MAX_ELEMENTS, p.len()));
    }
    let g = gamma(p)?;
    let q = compact_saturated(p)?;
    let mut found = vec![false; g.len()];
    for_each_filtered_family(&q, |fam| {
        let meets_all: Vec<Subset> = g
            .carrier()
            .iter()
            .copied()
            .filter(|c| fam.iter().all(|k| c.meets(*k)))
            .collect();
        for &a in &meets_all {
            if !meets_all.iter().any(|b| b.is_proper_subset(a)) {
                found[g.index_of(a).expect("carrier member")] = true;
            }
        }
        true
    });
    Ok(g.carrier()
        .iter()
        .zip(found)
        .filter(|(_, f)| *f)
        .map(|(&c, _)| c)
        .collect())
}

/// Lattice isomorphism ΓP → ΓQ as a map between carrier indices.
///
/// Birkhoff reduction: match the join-irreducibles with [`poset_iso`], extend
/// by unions, then verify the extension on the whole lattice.
pub fn gamma_iso(p: &FinitePoset, q: &FinitePoset) -> Result<Option<Vec<usize>>> {
    let gp = gamma(p)?;
    let gq = gamma(q)?;
    Ok(gamma_iso_of(&gp, &gq))
}

pub fn gamma_iso_of(gp: &GammaLattice, gq: &GammaLattice) -> Option<Vec<usize>> {
    if gp.len() != gq.len() {
        return None;
    }
    let jp = gp.join_irreducibles();
    let jq = gq.join_irreducibles();
    let pp = members_poset(gp.base(), &jp).ok()?;
    let pq = members_poset(gq.base(), &jq).ok()?;
    let phi = poset_iso(&pp, &pq)?;
    let mut map = Vec::with_capacity(gp.len());
    for &a in gp.carrier() {
        let img = jp
            .iter()
            .enumerate()
            .filter(|(_, j)| j.is_subset(a))
            .fold(Subset::EMPTY, |acc, (k, _)| acc.union(jq[phi[k]]));
        map.push(gq.index_of(img)?);
    }
    let cp = gp.carrier();
    let cq = gq.carrier();
    let bijective = {
        let mut seen = vec![false; gq.len()];
        map.iter().all(|&j| !std::mem::replace(&mut seen[j], true))
    };
    let order_ok = (0..cp.len()).all(|a| {
        (0..cp.len()).all(|b| cp[a].is_subset(cp[b]) == cq[map[a]].is_subset(cq[map[b]]))
    });
    (bijective && order_ok).then_some(map)
}

/// Per-poset summary of the Scott-side invariants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScottSummary {
    pub elements: usize,
    pub gamma_count: usize,
    pub irr_count: usize,
    pub sober: bool,
    pub well_filtered: bool,
    /// Irreducible closed sets that are not ↓x (sobriety witnesses).
    pub non_principal_irr: Vec<String>,
}

pub fn scott_summary(p: &FinitePoset) -> Result<ScottSummary> {
    let g = gamma(p)?;
    let irr = irr_of(&g)?;
    let bad = non_principal_irreducibles(p)?;
    Ok(ScottSummary {
        elements: p.len(),
        gamma_count: g.len(),
        irr_count: irr.len(),
        sober: bad.is_empty(),
        well_filtered: is_well_filtered(p)?,
        non_principal_irr: p.show_all(&bad),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{antichain, chain, diamond};

    #[test]
    fn gamma_examples() {
        let g = gamma(&antichain(2)).unwrap();
        assert_eq!(g.len(), 4);
        assert!(poset_iso(&g.as_poset().unwrap(), &diamond()).is_some());
        let g = gamma(&chain(4)).unwrap();
        assert_eq!(g.len(), 5);
        assert!(poset_iso(&g.as_poset().unwrap(), &chain(5)).is_some());
        assert_eq!(gamma(&diamond()).unwrap().len(), 6);
    }

    #[test]
    fn cap_is_reported() {
        let err = gamma_with_cap(&antichain(10), 100).unwrap_err();
        match err {
            Error::CapExceeded { limit, reached, what } => {
                assert_eq!(limit, 100);
                assert_eq!(reached, 101);
                assert!(what.contains("|P|=10"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn closure_examples() {
        let d = diamond();
        assert_eq!(scott_closure(&d, Subset::singleton(3)), d.all());
        assert_eq!(scott_closure(&d, Subset::EMPTY), Subset::EMPTY);
    }

    #[test]
    fn irreducible_examples() {
        let a = antichain(2);
        assert!(is_irreducible(&a, Subset::singleton(0)).unwrap());
        assert!(!is_irreducible(&a, a.all()).unwrap());
        let c = chain(3);
        assert!(is_irreducible(&c, Subset::singleton(2)).is_err());
    }

    #[test]
    fn compact_saturated_examples() {
        let q = compact_saturated(&chain(2)).unwrap();
        assert_eq!(q, vec![Subset::singleton(1), Subset::from_indices([0, 1])]);
        assert_eq!(compact_saturated(&antichain(2)).unwrap().len(), 3);
    }

    #[test]
    fn kf_singleton() {
        let p = chain(1);
        assert_eq!(kf_sets(&p).unwrap(), vec![Subset::singleton(0)]);
        assert!(kf_sets(&antichain(5)).unwrap_err().is_cap());
    }

    #[test]
    fn gamma_iso_examples() {
        assert!(gamma_iso(&chain(3), &chain(3)).unwrap().is_some());
        assert!(gamma_iso(&chain(2), &antichain(2)).unwrap().is_none());
    }
}
