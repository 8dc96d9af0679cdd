//! Comparison machinery for Γ-faithfulness on finite posets: Ω*-compactness,
//! ◁/∇ and domination on IRR, the beneath relation ≺*, C-compact closed sets,
//! weak domination, ≺ and K(L).
//!
//! Relations are evaluated on an *ambient* poset (P itself, IRR(P), ΓP or
//! C(ΓP) as inclusion posets). ∅ is never reported as a member of C(ΓP): it
//! is not irreducible and the predicates below only range over nonempty sets.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poset::FinitePoset;
use crate::scott::{self, gamma, irr, members_poset, ScottSummary};
use crate::subset::Subset;

/// Largest |ΓP| for which the family-enumeration oracle runs.
pub const FAMILY_ORACLE_MAX: usize = 12;

/// Nonempty closed sets of `ambient` whose sup exists, paired with that sup.
fn closed_with_sup(ambient: &FinitePoset) -> Result<Vec<(Subset, usize)>> {
    Ok(ambient
        .lower_sets(scott::gamma_cap())?
        .into_iter()
        .filter(|c| !c.is_empty())
        .filter_map(|c| ambient.sup_of(c).map(|s| (c, s)))
        .collect())
}

/// `x ≺* y`: every nonempty closed C with a sup and y ≤ sup C contains x.
pub fn beneath(p: &FinitePoset, x: usize, y: usize) -> Result<bool> {
    Ok(beneath_witness(p, x, y)?.is_none())
}

/// A closed set refuting `x ≺* y`, first in canonical order.
pub fn beneath_witness(p: &FinitePoset, x: usize, y: usize) -> Result<Option<Subset>> {
    Ok(closed_with_sup(p)?
        .into_iter()
        .find(|&(c, s)| p.leq(y, s) && !c.contains(x))
        .map(|(c, _)| c))
}

/// Elements `x` with `x ≺* x`, by scanning every closed set of `ambient`.
pub fn c_compact_points(ambient: &FinitePoset) -> Result<Vec<usize>> {
    let cs = closed_with_sup(ambient)?;
    Ok((0..ambient.len())
        .filter(|&x| {
            cs.iter()
                .all(|&(c, s)| !ambient.leq(x, s) || c.contains(x))
        })
        .collect())
}

/// C(ΓP), fast path: A is C-compact iff it belongs to the closed family
/// ↓{↓x : x ∈ A} of ΓP, whose sup (union) is A; that happens iff A is principal.
pub fn c_compact_elements(p: &FinitePoset) -> Result<Vec<Subset>> {
    let g = gamma(p)?;
    Ok(g.carrier()
        .iter()
        .copied()
        .filter(|&a| {
            let family: Vec<Subset> = g
                .carrier()
                .iter()
                .copied()
                .filter(|&b| a.iter().any(|x| b.is_subset(p.down(x))))
                .collect();
            let union = family.iter().fold(Subset::EMPTY, |acc, &b| acc.union(b));
            !a.is_empty() && union == a && family.contains(&a)
        })
        .collect())
}

/// C(ΓP) by the definition, enumerating every Scott closed family of ΓP.
pub fn c_compact_elements_oracle(p: &FinitePoset) -> Result<Vec<Subset>> {
    let g = gamma(p)?;
    if g.len() > FAMILY_ORACLE_MAX {
        return Err(Error::cap("family oracle |ΓP|", FAMILY_ORACLE_MAX, g.len()));
    }
    let ambient = g.as_poset()?;
    Ok(c_compact_points(&ambient)?
        .into_iter()
        .map(|i| g.carrier()[i])
        .filter(|a| !a.is_empty())
        .collect())
}

/// Ω*-compactness: every closed set is compact in the lower topology, whose
/// subbasic closed sets are the ↑a. By the subbase lemma it suffices to look at
/// covers by subbasic opens P∖↑a; on a finite space every such cover is itself
/// a finite subcover, so the scan records the covers it saw and finds none
/// lacking a finite subcover.
pub fn is_omega_star_compact(p: &FinitePoset) -> Result<bool> {
    let g = gamma(p)?;
    for &c in g.carrier() {
        for idx in p.all().subsets() {
            let covered = idx
                .iter()
                .fold(Subset::EMPTY, |acc, a| acc.union(p.up(a).complement(p.len())));
            if c.is_subset(covered) {
                // the cover is indexed by a finite set: it is its own finite subcover
                let finite = idx.len() <= p.len();
                if !finite {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn require_member(members: &[Subset], p: &FinitePoset, a: Subset, what: &str) -> Result<()> {
    if members.contains(&a) {
        Ok(())
    } else if what == "irr" {
        Err(Error::NotIrreducible(p.show(a)))
    } else {
        Err(Error::NotClosed(format!("{} is not C-compact", p.show(a))))
    }
}

fn below_some_point(p: &FinitePoset, a: Subset, b: Subset) -> bool {
    b.iter().any(|x| a.is_subset(p.down(x)))
}

/// A ◁ B on IRR(P): A ⊆ ↓b for some b ∈ B.
pub fn triangle_irr(p: &FinitePoset, a: Subset, b: Subset) -> Result<bool> {
    let members = irr(p)?;
    require_member(&members, p, a, "irr")?;
    require_member(&members, p, b, "irr")?;
    Ok(below_some_point(p, a, b))
}

/// A ◁ B on C(ΓP): A ⊆ ↓x for some x ∈ B.
pub fn triangle_cc(p: &FinitePoset, a: Subset, b: Subset) -> Result<bool> {
    let members = c_compact_elements(p)?;
    require_member(&members, p, a, "cc")?;
    require_member(&members, p, b, "cc")?;
    Ok(below_some_point(p, a, b))
}

/// ∇A inside an ambient collection of closed sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nabla {
    pub base: Vec<Subset>,
    pub target: Subset,
    pub members: Vec<Subset>,
}

impl Nabla {
    fn build(p: &FinitePoset, base: Vec<Subset>, target: Subset) -> Nabla {
        let members = base
            .iter()
            .copied()
            .filter(|&b| below_some_point(p, b, target))
            .collect();
        Nabla {
            base,
            target,
            members,
        }
    }

    /// Membership mask over `base` indices.
    pub fn mask(&self) -> Subset {
        Subset::from_indices(
            self.base
                .iter()
                .enumerate()
                .filter(|(_, b)| self.members.contains(b))
                .map(|(i, _)| i),
        )
    }

    /// Scott closedness of the members inside the inclusion poset on `base`,
    /// by the definition (lower set, contains sups of directed subsets).
    pub fn is_scott_closed(&self, p: &FinitePoset) -> Result<bool> {
        let ambient = members_poset(p, &self.base)?;
        Ok(scott::is_scott_closed_by_definition(&ambient, self.mask()))
    }
}

pub fn nabla_irr(p: &FinitePoset, a: Subset) -> Result<Nabla> {
    let base = irr(p)?;
    require_member(&base, p, a, "irr")?;
    Ok(Nabla::build(p, base, a))
}

pub fn nabla_cc(p: &FinitePoset, a: Subset) -> Result<Nabla> {
    let base = c_compact_elements(p)?;
    require_member(&base, p, a, "cc")?;
    Ok(Nabla::build(p, base, a))
}

/// First A ∈ IRR(P) whose ∇A is not Scott closed in IRR(P).
pub fn dominated_witness(p: &FinitePoset) -> Result<Option<Subset>> {
    for a in irr(p)? {
        if !nabla_irr(p, a)?.is_scott_closed(p)? {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

pub fn is_dominated(p: &FinitePoset) -> Result<bool> {
    Ok(dominated_witness(p)?.is_none())
}

/// First A ∈ C(ΓP) whose ∇A is not Scott closed in C(ΓP).
pub fn weakly_dominated_witness(p: &FinitePoset) -> Result<Option<Subset>> {
    for a in c_compact_elements(p)? {
        if !nabla_cc(p, a)?.is_scott_closed(p)? {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

pub fn is_weakly_dominated(p: &FinitePoset) -> Result<bool> {
    Ok(weakly_dominated_witness(p)?.is_none())
}

/// `x ≺ y` in `l`: every closed C-compact A of `l` with y ≤ sup A contains x.
/// A missing sup makes the condition vacuous for that A.
pub fn prec(l: &FinitePoset, x: usize, y: usize) -> Result<bool> {
    Ok(c_compact_elements(l)?
        .into_iter()
        .all(|a| l.sup_of(a).is_none_or(|s| !l.leq(y, s) || a.contains(x))))
}

/// K(L) = { x : x ≺ x }.
pub fn k_elements(l: &FinitePoset) -> Result<Vec<usize>> {
    let cc = c_compact_elements(l)?;
    Ok((0..l.len())
        .filter(|&x| {
            cc.iter()
                .all(|&a| l.sup_of(a).is_none_or(|s| !l.leq(x, s) || a.contains(x)))
        })
        .collect())
}

/// Checks `f` (as an index table) is monotone `p → q`.
pub fn check_monotone(f: &[usize], p: &FinitePoset, q: &FinitePoset) -> Result<()> {
    if f.len() != p.len() || f.iter().any(|&y| y >= q.len()) {
        return Err(Error::NotMonotone("table does not map P into Q".into()));
    }
    for a in 0..p.len() {
        for b in p.up(a).iter() {
            if !q.leq(f[a], f[b]) {
                return Err(Error::NotMonotone(format!(
                    "{} ≤ {} but f({}) ≰ f({})",
                    p.label(a),
                    p.label(b),
                    p.label(a),
                    p.label(b)
                )));
            }
        }
    }
    Ok(())
}

/// First A ∈ C(ΓP) with cl(f(A)) ∉ C(ΓQ).
pub fn c_compact_image_failure(
    f: &[usize],
    p: &FinitePoset,
    q: &FinitePoset,
) -> Result<Option<Subset>> {
    check_monotone(f, p, q)?;
    let target = c_compact_elements(q)?;
    for a in c_compact_elements(p)? {
        let image = Subset::from_indices(a.iter().map(|x| f[x]));
        if !target.contains(&scott::scott_closure(q, image)) {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

pub fn c_compact_image_check(f: &[usize], p: &FinitePoset, q: &FinitePoset) -> Result<bool> {
    Ok(c_compact_image_failure(f, p, q)?.is_none())
}

/// Validates that `family` is a Scott closed subset of the poset C(ΓP).
fn require_closed_family(p: &FinitePoset, cc: &[Subset], family: &[Subset]) -> Result<Subset> {
    let mut mask = Subset::EMPTY;
    for a in family {
        match cc.iter().position(|b| b == a) {
            Some(i) => mask = mask.with(i),
            None => return Err(Error::NotClosed(format!("{} ∉ C(ΓP)", p.show(*a)))),
        }
    }
    let ambient = members_poset(p, cc)?;
    if !scott::is_scott_closed_by_definition(&ambient, mask) {
        return Err(Error::NotClosed("family is not Scott closed in C(ΓP)".into()));
    }
    Ok(mask)
}

/// ⋃𝒜 for 𝒜 Scott closed in C(ΓP).
pub fn union_of_closed_family(p: &FinitePoset, family: &[Subset]) -> Result<Subset> {
    let cc = c_compact_elements(p)?;
    require_closed_family(p, &cc, family)?;
    Ok(family.iter().fold(Subset::EMPTY, |acc, &a| acc.union(a)))
}

/// □A = { K ∈ C(ΓP) : K ⊆ A }.
pub fn box_family(p: &FinitePoset, a: Subset) -> Result<Vec<Subset>> {
    Ok(c_compact_elements(p)?
        .into_iter()
        .filter(|k| k.is_subset(a))
        .collect())
}

/// Whether `family` contains the sup (in C(ΓP)) of each of its subsets that is
/// a C-compact set of the poset C(ΓP).
pub fn closed_under_c_compact_sups(p: &FinitePoset, family: &[Subset]) -> Result<bool> {
    let cc = c_compact_elements(p)?;
    let mask = require_closed_family(p, &cc, family)?;
    let ambient = members_poset(p, &cc)?;
    let second = c_compact_elements(&ambient)?;
    for s in mask.subsets().filter(|s| !s.is_empty()) {
        if second.contains(&ambient.down_closure(s)) {
            match ambient.sup_of(s) {
                Some(x) if !mask.contains(x) => return Ok(false),
                _ => {}
            }
        }
    }
    Ok(true)
}

/// Scott closed subsets of C(ΓP), as member lists.
pub fn closed_families(p: &FinitePoset) -> Result<Vec<Vec<Subset>>> {
    let cc = c_compact_elements(p)?;
    let ambient = members_poset(p, &cc)?;
    Ok(ambient
        .lower_sets(scott::gamma_cap())?
        .into_iter()
        .map(|m| m.iter().map(|i| cc[i]).collect())
        .collect())
}

/// `analyze` record for one poset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalyzeReport {
    #[serde(flatten)]
    pub scott: ScottSummary,
    pub omega_star_compact: bool,
    pub dominated: bool,
    pub weakly_dominated: bool,
    pub c_compact_count: usize,
    /// IRR member whose ∇ fails to be Scott closed, if any.
    pub dominated_witness: Option<String>,
    pub weakly_dominated_witness: Option<String>,
}

pub fn analyze(p: &FinitePoset) -> Result<AnalyzeReport> {
    let dw = dominated_witness(p)?;
    let ww = weakly_dominated_witness(p)?;
    Ok(AnalyzeReport {
        scott: scott::scott_summary(p)?,
        omega_star_compact: is_omega_star_compact(p)?,
        dominated: dw.is_none(),
        weakly_dominated: ww.is_none(),
        c_compact_count: c_compact_elements(p)?.len(),
        dominated_witness: dw.map(|a| p.show(a)),
        weakly_dominated_witness: ww.map(|a| p.show(a)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{antichain, chain, diamond};

    #[test]
    fn beneath_examples() {
        let c = chain(3);
        assert!(beneath(&c, 0, 2).unwrap());
        // two incomparable points under a common top
        let v = FinitePoset::from_covers(
            ["a", "b", "top"].map(String::from).to_vec(),
            &[(0, 2), (1, 2)],
        )
        .unwrap();
        assert!(beneath(&v, 0, 2).unwrap());
        assert!(!beneath(&v, 0, 1).unwrap());
    }

    #[test]
    fn c_compact_of_two_chain() {
        let c = chain(2);
        let cc = c_compact_elements(&c).unwrap();
        assert_eq!(cc, vec![c.down(0), c.down(1)]);
        assert_eq!(c_compact_elements_oracle(&c).unwrap(), cc);
    }

    #[test]
    fn small_predicates() {
        assert!(is_omega_star_compact(&chain(4)).unwrap());
        assert!(is_dominated(&diamond()).unwrap());
        assert!(is_weakly_dominated(&antichain(3)).unwrap());
    }

    #[test]
    fn triangle_domain_checks() {
        let a = antichain(2);
        assert!(triangle_irr(&a, a.all(), a.down(0)).is_err());
        assert!(triangle_cc(&a, a.down(0), a.down(0)).unwrap());
    }

    #[test]
    fn box_and_union_examples() {
        let d = diamond();
        let top = d.down(3);
        assert_eq!(box_family(&d, d.all()).unwrap(), c_compact_elements(&d).unwrap());
        let fam = box_family(&d, top).unwrap();
        assert_eq!(union_of_closed_family(&d, &fam).unwrap(), top);
        assert!(union_of_closed_family(&d, &[top]).is_err());
    }

    #[test]
    fn monotone_validation() {
        let c = chain(2);
        assert!(c_compact_image_check(&[1, 0], &c, &c).is_err());
        assert!(c_compact_image_check(&[0, 1], &c, &c).unwrap());
        assert!(c_compact_image_check(&[1, 1], &c, &c).unwrap());
    }
}
