//! Example M = P ∪ 𝕁∞: weakly dominated but not dominated.

use std::fmt;

use num_rational::Rational64;
use serde::Serialize;

use super::example_i::{anchor, anchor_index, example_i_leq, FinSupportMap, InjRegistry, LElem, PElem};
use super::jinf::{jinf_leq, JInfElem, JVal};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum MElem {
    P(PElem),
    J(JInfElem),
}

impl fmt::Display for MElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MElem::P(p) => write!(f, "{p}"),
            MElem::J(x) => write!(f, "{x}"),
        }
    }
}

/// P's order, 𝕁∞'s order, and the bridge `(c,a,b) ≤ (aₙ, ⊤)` for `c ≤ n`.
pub fn m_leq(reg: &InjRegistry, a: &MElem, b: &MElem) -> bool {
    match (a, b) {
        (MElem::P(x), MElem::P(y)) => example_i_leq(reg, x, y),
        (MElem::J(x), MElem::J(y)) => jinf_leq(x, y),
        (MElem::J(x), MElem::P(y)) => {
            y.base == LElem::Top && anchor_index(y.r).is_some_and(|n| x.k <= n)
        }
        (MElem::P(_), MElem::J(_)) => false,
    }
}

pub fn anchor_top(n: u64) -> MElem {
    MElem::P(PElem::top(anchor(n)))
}

/// Members of C(ΓM): `↓x`, `𝕁₁ ∪ … ∪ 𝕁ₙ`, `𝕁∞`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum MClosed {
    Principal(MElem),
    Prefix(u64),
    All,
}

impl fmt::Display for MClosed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MClosed::Principal(x) => write!(f, "↓{x}"),
            MClosed::Prefix(n) => write!(f, "J1..J{n}"),
            MClosed::All => write!(f, "J∞"),
        }
    }
}

/// A point of 𝕁∞ that is not below `x`, by shape of `x`.
pub fn escape_point(x: &MElem) -> JInfElem {
    match x {
        MElem::J(y) => JInfElem::at(y.k + 1, 1, 1),
        MElem::P(p) => match (p.base == LElem::Top).then(|| anchor_index(p.r)).flatten() {
            Some(n) => JInfElem::at(n + 1, 1, 1),
            None => JInfElem::at(1, 1, 1),
        },
    }
}

/// `B ⊆ C` between named closed sets of M.
pub fn m_closed_leq(reg: &InjRegistry, b: &MClosed, c: &MClosed) -> bool {
    match (b, c) {
        (MClosed::Principal(x), MClosed::Principal(y)) => m_leq(reg, x, y),
        (MClosed::Principal(x), MClosed::Prefix(n)) => matches!(x, MElem::J(j) if j.k <= *n),
        (MClosed::Principal(x), MClosed::All) => matches!(x, MElem::J(_)),
        // a block has infinitely many maximal points; only an anchor with a
        // large enough index covers it
        (MClosed::Prefix(n), MClosed::Principal(y)) => {
            matches!(y, MElem::P(p) if p.base == LElem::Top && anchor_index(p.r).is_some_and(|m| *n <= m))
        }
        (MClosed::Prefix(n), MClosed::Prefix(m)) => n <= m,
        (MClosed::Prefix(_), MClosed::All) => true,
        (MClosed::All, MClosed::All) => true,
        // escape_point(y) lies in 𝕁∞ outside ↓y
        (MClosed::All, MClosed::Principal(_)) => false,
        (MClosed::All, MClosed::Prefix(_)) => false,
    }
}

/// `B ◁ A` on C(ΓM): `B ⊆ ↓x` for some `x ∈ A`.
pub fn m_triangle(reg: &InjRegistry, b: &MClosed, a: &MClosed) -> bool {
    match a {
        MClosed::Principal(x) => m_closed_leq(reg, b, &MClosed::Principal(x.clone())),
        // x ranges over 𝕁∞ points, none of which dominates a whole block
        MClosed::Prefix(_) | MClosed::All => {
            matches!(b, MClosed::Principal(MElem::J(_))) && m_closed_leq(reg, b, a)
        }
    }
}

/// Probe points: small 𝕁∞ corner, a few P fibers, anchors, coded tops.
pub struct MProbe {
    pub reg: InjRegistry,
    pub points: Vec<MElem>,
    /// Stand-in for "every n": exceeds every index in sight.
    pub generic: u64,
}

impl MProbe {
    pub fn standard() -> Self {
        let mut reg = InjRegistry::new();
        let mut points = Vec::new();
        for k in 1..=3 {
            for n in 1..=3 {
                for j in 0..=3 {
                    points.push(MElem::J(JInfElem::at(k, n, j)));
                }
            }
        }
        let f = FinSupportMap::constant(1).with(2, 3);
        for r in [0i64, 1, 2] {
            let r = Rational64::from_integer(r);
            for m in 1..=2 {
                for n in 1..=3 {
                    points.push(MElem::P(PElem::new(LElem::S(m, n), r)));
                }
            }
            points.push(MElem::P(PElem::new(LElem::T(f.clone(), 2), r)));
            points.push(MElem::P(PElem::top(r)));
        }
        points.push(MElem::P(PElem::top(Rational64::new(7, 2))));
        for n in 3..=5 {
            points.push(anchor_top(n));
        }
        let half = Rational64::new(1, 2);
        let c1 = reg.inj_i(Rational64::from_integer(1), Rational64::from_integer(2), f.clone(), 2).expect("t > s");
        let c2 = reg.inj_i(half, Rational64::from_integer(2), f, 2).expect("t > s");
        points.push(MElem::P(PElem::top(c1)));
        points.push(MElem::P(PElem::top(c2)));
        points.sort();
        points.dedup();
        MProbe { reg, points, generic: 12 }
    }

    /// Closed descriptors in sight.
    pub fn descriptors(&self) -> Vec<MClosed> {
        let mut out: Vec<MClosed> = self.points.iter().cloned().map(MClosed::Principal).collect();
        out.extend((1..=self.generic).map(MClosed::Prefix));
        out.push(MClosed::All);
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ShapeRefutation {
    pub shape: String,
    pub x: MElem,
    /// A point of 𝕁∞ outside ↓x.
    pub escape: JInfElem,
    pub replay_ok: bool,
}

impl ShapeRefutation {
    /// Re-evaluates the order on the stored pair; no registry entry is
    /// needed since 𝕁∞ points reach P only through integer anchors.
    pub fn replay(&self) -> bool {
        !m_leq(&InjRegistry::new(), &MElem::J(self.escape), &self.x)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MDominatedReport {
    /// (a) prefixes pairwise comparable, hence directed.
    pub directed: bool,
    /// (b) `Prefix(n) ⊆ ↓(aₙ, ⊤)` for each listed n.
    pub prefix_bounds: Vec<(u64, String, bool)>,
    /// (c) every probed 𝕁∞ point lies in some prefix, so the sup is 𝕁∞.
    pub sup_is_all: bool,
    /// (d) 𝕁∞ escapes every probed x.
    pub all_refutations: Vec<ShapeRefutation>,
    pub verdict: String,
}

impl MDominatedReport {
    pub fn passed(&self) -> bool {
        self.directed
            && self.prefix_bounds.iter().all(|b| b.2)
            && self.sup_is_all
            && self.all_refutations.iter().all(|r| r.replay_ok)
            && self.verdict == "not dominated"
    }

    /// Re-checks the stored witnesses from scratch.
    pub fn replay(&self) -> bool {
        let reg = InjRegistry::new();
        self.all_refutations.iter().all(|r| r.replay())
            && self.prefix_bounds.iter().all(|(n, _, _)| {
                let y = anchor_top(*n);
                m_leq(&reg, &MElem::J(JInfElem::at(*n, 1, 0)), &y)
                    && !m_leq(&reg, &MElem::J(JInfElem::at(n + 1, 1, 1)), &y)
            })
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("(a) {{J1..Jn}} directed: {}\n", self.directed));
        let ok = self.prefix_bounds.iter().filter(|b| b.2).count();
        s.push_str(&format!(
            "(b) J1..Jn below (a_n,T): {ok}/{} verified\n",
            self.prefix_bounds.len()
        ));
        s.push_str(&format!("(c) sup_n J1..Jn = J∞: {}\n", self.sup_is_all));
        let ok = self.all_refutations.iter().filter(|r| r.replay_ok).count();
        s.push_str(&format!(
            "(d) J∞ ⊄ ↓x for every shape of x: {ok}/{} refuted\n",
            self.all_refutations.len()
        ));
        for r in &self.all_refutations {
            s.push_str(&format!("    {}: x={} escapes via {}\n", r.shape, r.x, r.escape));
        }
        s.push_str(&format!("verdict: {}\n", self.verdict));
        s
    }
}

fn shape_of(x: &MElem) -> &'static str {
    match x {
        MElem::J(_) => "x in J∞",
        MElem::P(p) if p.base == LElem::Top && anchor_index(p.r).is_some() => "x = (a_n,T)",
        MElem::P(_) => "x other P",
    }
}

/// Four-part witness that ∇*M is not Scott closed: the prefixes lie in ∇*M,
/// form a directed family with sup 𝕁∞, and 𝕁∞ fits under no single point.
pub fn m_dominated_witness() -> MDominatedReport {
    let probe = MProbe::standard();
    let g = probe.generic;
    let reg = &probe.reg;
    let directed = (1..=10u64).all(|n| {
        (1..=10u64).all(|m| {
            let hi = MClosed::Prefix(n.max(m));
            m_closed_leq(reg, &MClosed::Prefix(n), &hi) && m_closed_leq(reg, &MClosed::Prefix(m), &hi)
        })
    });
    let prefix_bounds = (1..=10u64)
        .map(|n| {
            let y = anchor_top(n);
            // every point of the prefix with coordinates up to the generic bound
            let pointwise = (1..=n).all(|k| {
                (1..=g).all(|a| {
                    (0..=g).all(|b| m_leq(reg, &MElem::J(JInfElem::at(k, a, b)), &y))
                })
            });
            let tight = !m_leq(reg, &MElem::J(JInfElem::at(n + 1, 1, 1)), &y);
            (n, y.to_string(), pointwise && tight && m_closed_leq(reg, &MClosed::Prefix(n), &MClosed::Principal(y.clone())))
        })
        .collect();
    let sup_is_all = probe.points.iter().all(|x| match x {
        MElem::J(j) => m_closed_leq(reg, &MClosed::Principal(x.clone()), &MClosed::Prefix(j.k)),
        MElem::P(_) => true,
    }) && (1..=g).all(|n| m_closed_leq(reg, &MClosed::Prefix(n), &MClosed::All));
    let mut xs = probe.points.clone();
    xs.extend((1..=10).map(anchor_top));
    xs.sort();
    xs.dedup();
    let all_refutations = xs
        .iter()
        .map(|x| {
            let e = escape_point(x);
            ShapeRefutation {
                shape: shape_of(x).to_string(),
                x: x.clone(),
                escape: e,
                replay_ok: !m_leq(reg, &MElem::J(e), x),
            }
        })
        .collect();
    let mut rep = MDominatedReport {
        directed,
        prefix_bounds,
        sup_is_all,
        all_refutations,
        verdict: String::new(),
    };
    let holds = rep.directed
        && rep.prefix_bounds.iter().all(|b| b.2)
        && rep.sup_is_all
        && rep.all_refutations.iter().all(|r| r.replay_ok);
    rep.verdict = if holds { "not dominated" } else { "inconclusive" }.to_string();
    rep
}

#[derive(Debug, Clone, Serialize)]
pub struct NablaClassCheck {
    pub class: String,
    pub members_in_sight: usize,
    pub down_closed: bool,
    /// `↓(k,m,n)` for all n ⟹ `↓(k,m,ω)`.
    pub column_schema: bool,
    /// `↓((m,n),r)` for all n ⟹ `↓(⊤,r)`.
    pub fiber_schema: bool,
    /// every prefix ⟹ 𝕁∞.
    pub prefix_schema: bool,
    /// Does ∇A hold any prefix? (Never for A ⊆ 𝕁∞.)
    pub holds_prefix: bool,
}

impl NablaClassCheck {
    pub fn closed(&self) -> bool {
        self.down_closed && self.column_schema && self.fiber_schema && self.prefix_schema
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MWeakReport {
    pub classes: Vec<NablaClassCheck>,
    pub verdict: String,
}

impl MWeakReport {
    pub fn passed(&self) -> bool {
        self.classes.iter().all(|c| c.closed()) && self.verdict == "weakly dominated"
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for c in &self.classes {
            s.push_str(&format!(
                "∇({}): {} members in sight, lower={}, column={}, fiber={}, prefix={}\n",
                c.class, c.members_in_sight, c.down_closed, c.column_schema, c.fiber_schema, c.prefix_schema
            ));
        }
        s.push_str(&format!("verdict: {}\n", self.verdict));
        s
    }
}

fn check_class(probe: &MProbe, a: &MClosed) -> NablaClassCheck {
    let reg = &probe.reg;
    let g = probe.generic;
    let pool = probe.descriptors();
    let inn = |b: &MClosed| m_triangle(reg, b, a);
    let members: Vec<&MClosed> = pool.iter().filter(|b| inn(b)).collect();
    let down_closed = members
        .iter()
        .all(|b| pool.iter().all(|c| !m_closed_leq(reg, c, b) || inn(c)));
    let mut column_schema = true;
    for k in 1..=3 {
        for m in 1..=3 {
            let chain = (1..=g).all(|n| inn(&MClosed::Principal(MElem::J(JInfElem::at(k, m, n)))));
            let sup = MClosed::Principal(MElem::J(JInfElem { k, n: m, j: JVal::Omega }));
            column_schema &= !chain || inn(&sup);
        }
    }
    let mut fiber_schema = true;
    let f = FinSupportMap::constant(1).with(2, 3);
    for r in probe.points.iter().filter_map(|x| match x {
        MElem::P(p) => Some(p.r),
        MElem::J(_) => None,
    }) {
        let sup = MClosed::Principal(MElem::P(PElem::top(r)));
        for m in 1..=2 {
            let chain = (1..=g).all(|n| inn(&MClosed::Principal(MElem::P(PElem::new(LElem::S(m, n), r)))));
            fiber_schema &= !chain || inn(&sup);
        }
        let chain = (1..=g).all(|n| inn(&MClosed::Principal(MElem::P(PElem::new(LElem::T(f.clone(), n), r)))));
        fiber_schema &= !chain || inn(&sup);
    }
    let all_prefixes = (1..=g).all(|n| inn(&MClosed::Prefix(n)));
    NablaClassCheck {
        class: a.to_string(),
        members_in_sight: members.len(),
        down_closed,
        column_schema,
        fiber_schema,
        prefix_schema: !all_prefixes || inn(&MClosed::All),
        holds_prefix: members.iter().any(|b| matches!(b, MClosed::Prefix(_))),
    }
}

/// ∇A is Scott closed in C(ΓM) for every class of C(ΓM) in sight.
pub fn m_weakly_dominated_check() -> MWeakReport {
    let probe = MProbe::standard();
    let mut classes: Vec<MClosed> = probe.points.iter().cloned().map(MClosed::Principal).collect();
    classes.extend([1, 2, 5].map(MClosed::Prefix));
    classes.push(MClosed::All);
    let classes: Vec<NablaClassCheck> = classes.iter().map(|a| check_class(&probe, a)).collect();
    let verdict = if classes.iter().all(|c| c.closed()) {
        "weakly dominated"
    } else {
        "inconclusive"
    };
    MWeakReport {
        classes,
        verdict: verdict.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bridge() {
        let reg = InjRegistry::new();
        let x = MElem::J(JInfElem::at(2, 5, 1));
        assert!(m_leq(&reg, &x, &anchor_top(3)));
        assert!(!m_leq(&reg, &x, &anchor_top(1)));
        assert!(!m_leq(&reg, &x, &MElem::P(PElem::s(1, 1, 3))));
    }

    #[test]
    fn reports() {
        let d = m_dominated_witness();
        assert!(d.passed() && d.replay(), "{}", d.render());
        let w = m_weakly_dominated_check();
        assert!(w.passed(), "{}", w.render());
        let all = w.classes.iter().find(|c| c.class == "J∞").unwrap();
        assert!(!all.holds_prefix);
    }
}
