//! Johnstone-style 𝕁∞ = ℕ × (ℕ × (ℕ ∪ {ω})) over positive naturals, its
//! C-compact closed sets, and a refutation search for C-compactness.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A natural-or-ω coordinate. ω is its own marker, not an ordinal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum JVal {
    Nat(u64),
    Omega,
}

impl JVal {
    pub fn is_omega(self) -> bool {
        self == JVal::Omega
    }
}

impl fmt::Display for JVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JVal::Nat(n) => write!(f, "{n}"),
            JVal::Omega => write!(f, "w"),
        }
    }
}

/// `(k, n, j)`: block `k`, column `n`, height `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct JInfElem {
    pub k: u64,
    pub n: u64,
    pub j: JVal,
}

impl JInfElem {
    pub fn new(k: u64, n: u64, j: JVal) -> Result<Self> {
        if k == 0 || n == 0 || j == JVal::Nat(0) {
            return Err(Error::Precondition(format!(
                "𝕁∞ coordinates are positive: ({k},{n},{j})"
            )));
        }
        Ok(JInfElem { k, n, j })
    }

    /// Panicking shorthand for literals; `j = 0` means ω.
    pub fn at(k: u64, n: u64, j: u64) -> Self {
        let j = if j == 0 { JVal::Omega } else { JVal::Nat(j) };
        JInfElem::new(k, n, j).expect("positive coordinates")
    }

    pub fn is_top(self) -> bool {
        self.j.is_omega()
    }
}

impl fmt::Display for JInfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.k, self.n, self.j)
    }
}

/// `(k,m,n) ≤ (c,a,b)` iff `k=c, m=a, n≤b`, or `k≤c, n≤a, b=ω`.
pub fn jinf_leq(x: &JInfElem, y: &JInfElem) -> bool {
    (x.k == y.k && x.n == y.n && x.j <= y.j)
        || (x.k <= y.k && y.j.is_omega() && x.j <= JVal::Nat(y.n))
}

/// Closed subsets of 𝕁∞ the corpus names.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum JInfClosed {
    Principal(JInfElem),
    /// `↓x₁ ∪ … ∪ ↓xₙ`.
    FiniteUnion(Vec<JInfElem>),
    /// `𝕁₁ ∪ … ∪ 𝕁ₙ`.
    UnionPrefix(u64),
    All,
}

impl fmt::Display for JInfClosed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JInfClosed::Principal(x) => write!(f, "↓{x}"),
            JInfClosed::FiniteUnion(xs) => {
                let parts: Vec<String> = xs.iter().map(|x| format!("↓{x}")).collect();
                write!(f, "{}", parts.join(" ∪ "))
            }
            JInfClosed::UnionPrefix(n) => write!(f, "J1..J{n}"),
            JInfClosed::All => write!(f, "J∞"),
        }
    }
}

pub fn jinf_closed_member(d: &JInfClosed, x: &JInfElem) -> bool {
    match d {
        JInfClosed::Principal(y) => jinf_leq(x, y),
        JInfClosed::FiniteUnion(ys) => ys.iter().any(|y| jinf_leq(x, y)),
        JInfClosed::UnionPrefix(n) => x.k <= *n,
        JInfClosed::All => true,
    }
}

/// Maximal generators of a finite union.
pub fn union_maxima(xs: &[JInfElem]) -> Vec<JInfElem> {
    let mut out: Vec<JInfElem> = xs
        .iter()
        .copied()
        .filter(|x| !xs.iter().any(|y| y != x && jinf_leq(x, y)))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Canonical form: a finite union with one maximum becomes principal.
pub fn normalize(d: &JInfClosed) -> Result<JInfClosed> {
    match d {
        JInfClosed::FiniteUnion(xs) => match union_maxima(xs).as_slice() {
            [] => Err(Error::Empty("finite union")),
            [x] => Ok(JInfClosed::Principal(*x)),
            many => Ok(JInfClosed::FiniteUnion(many.to_vec())),
        },
        JInfClosed::UnionPrefix(0) => Err(Error::Unrepresentable("empty prefix union".into())),
        other => Ok(other.clone()),
    }
}

/// Inclusion between named closed sets.
pub fn jinf_descr_leq(a: &JInfClosed, b: &JInfClosed) -> bool {
    use JInfClosed::*;
    match (a, b) {
        (_, All) => true,
        (All, _) => false,
        (Principal(x), _) => jinf_closed_member(b, x),
        (FiniteUnion(xs), _) => xs.iter().all(|x| jinf_closed_member(b, x)),
        (UnionPrefix(n), UnionPrefix(m)) => n <= m,
        // a prefix has infinitely many maximal points (k, a, ω); a finite union
        // of principal ideals holds only finitely many of them
        (UnionPrefix(_), _) => false,
    }
}

/// `A` lies inside the union of the listed closed sets.
fn covered_by(a: &JInfClosed, parts: &[JInfClosed]) -> bool {
    match a {
        JInfClosed::Principal(x) => parts.iter().any(|p| jinf_closed_member(p, x)),
        JInfClosed::FiniteUnion(xs) => xs
            .iter()
            .all(|x| parts.iter().any(|p| jinf_closed_member(p, x))),
        // the maximal points of a block are pairwise incomparable and only a
        // prefix or all of 𝕁∞ holds infinitely many of them
        JInfClosed::UnionPrefix(_) | JInfClosed::All => parts.iter().any(|p| jinf_descr_leq(a, p)),
    }
}

/// Generator of a Scott closed family of Γ𝕁∞.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum JFamGen {
    /// `↓_Γ A`: every closed set inside `A`.
    Set(JInfClosed),
    /// `{ ↓(k, m, ω) : m ∈ ℕ }`, saturated by the sup `𝕁₁ ∪ … ∪ 𝕁ₖ` of the
    /// directed slabs `Aₘ = {(c,a,b) : c ≤ k, b ≤ m}` that it contains.
    Columns(u64),
    /// `{ ↓(k, m, ω) : k, m ∈ ℕ }`, saturated by every prefix and 𝕁∞.
    AllColumns,
}

impl fmt::Display for JFamGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JFamGen::Set(d) => write!(f, "□({d})"),
            JFamGen::Columns(k) => write!(f, "cl{{↓({k},m,w) : m}}"),
            JFamGen::AllColumns => write!(f, "cl{{↓(k,m,w) : k,m}}"),
        }
    }
}

/// A finite union of generated families (unions of closed families are closed).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JFamily {
    pub gens: Vec<JFamGen>,
}

impl fmt::Display for JFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join(" ∪ "))
    }
}

/// Does `↓(k, m, ω)` contain `x` for some `m`?
fn in_some_column(x: &JInfElem, k: u64) -> bool {
    x.k == k || (x.k <= k && !x.j.is_omega())
}

fn gen_contains(g: &JFamGen, a: &JInfClosed) -> bool {
    match g {
        JFamGen::Set(d) => jinf_descr_leq(a, d),
        JFamGen::AllColumns => true,
        JFamGen::Columns(k) => {
            if jinf_descr_leq(a, &JInfClosed::UnionPrefix(*k)) {
                return true;
            }
            match a {
                JInfClosed::Principal(x) => in_some_column(x, *k),
                JInfClosed::FiniteUnion(xs) => {
                    // one column m must hold every generator
                    let mut cands: Vec<u64> = xs.iter().filter(|x| x.k == *k).map(|x| x.n).collect();
                    cands.push(
                        xs.iter()
                            .filter_map(|x| match x.j {
                                JVal::Nat(b) => Some(b),
                                JVal::Omega => None,
                            })
                            .max()
                            .unwrap_or(1),
                    );
                    cands.iter().any(|&m| {
                        xs.iter().all(|x| jinf_leq(x, &JInfElem::at(*k, m, 0)))
                    })
                }
                _ => false,
            }
        }
    }
}

fn gen_union(g: &JFamGen) -> JInfClosed {
    match g {
        JFamGen::Set(d) => d.clone(),
        JFamGen::Columns(k) => JInfClosed::UnionPrefix(*k),
        JFamGen::AllColumns => JInfClosed::All,
    }
}

impl JFamily {
    pub fn contains(&self, a: &JInfClosed) -> bool {
        self.gens.iter().any(|g| gen_contains(g, a))
    }

    /// The closed sets whose union is ⋃𝒜.
    pub fn union_parts(&self) -> Vec<JInfClosed> {
        self.gens.iter().map(gen_union).collect()
    }

    /// `A ⊆ ⋃𝒜` but `A ∉ 𝒜`.
    pub fn refutes(&self, a: &JInfClosed) -> bool {
        covered_by(a, &self.union_parts()) && !self.contains(a)
    }
}

/// Outcome of [`jinf_cc_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CcVerdict {
    pub descriptor: String,
    /// No generated family refutes `A ≺* A`.
    pub compact: bool,
    pub families_checked: usize,
    pub refuting_family: Option<String>,
    #[serde(skip)]
    pub refutation: Option<JFamily>,
}

/// Families tried against `a`: principal covers of its maxima, single
/// generators over a pool sized from `a`, and pairwise unions of those.
pub fn family_library(a: &JInfClosed) -> Vec<JFamily> {
    let mentioned: Vec<u64> = match a {
        JInfClosed::Principal(x) => vec![x.k, x.n],
        JInfClosed::FiniteUnion(xs) => xs.iter().flat_map(|x| [x.k, x.n]).collect(),
        JInfClosed::UnionPrefix(n) => vec![*n],
        JInfClosed::All => vec![],
    };
    let bound = mentioned.iter().copied().max().unwrap_or(1) + 1;
    let mut singles: Vec<JFamGen> = Vec::new();
    let gens: Vec<JInfElem> = match a {
        JInfClosed::Principal(x) => vec![*x],
        JInfClosed::FiniteUnion(xs) => xs.clone(),
        _ => vec![],
    };
    for x in union_maxima(&gens) {
        singles.push(JFamGen::Set(JInfClosed::Principal(x)));
    }
    for k in 1..=bound {
        singles.push(JFamGen::Columns(k));
        singles.push(JFamGen::Set(JInfClosed::UnionPrefix(k)));
        for n in 1..=bound {
            singles.push(JFamGen::Set(JInfClosed::Principal(JInfElem::at(k, n, 0))));
            singles.push(JFamGen::Set(JInfClosed::Principal(JInfElem::at(k, n, bound))));
        }
    }
    singles.push(JFamGen::Set(a.clone()));
    singles.push(JFamGen::AllColumns);
    let mut out: Vec<JFamily> = Vec::new();
    // the principal cover ↓{↓x : x ∈ max A} goes first
    if let JInfClosed::FiniteUnion(xs) = a {
        out.push(JFamily {
            gens: union_maxima(xs)
                .into_iter()
                .map(|x| JFamGen::Set(JInfClosed::Principal(x)))
                .collect(),
        });
    }
    for (i, g) in singles.iter().enumerate() {
        out.push(JFamily { gens: vec![g.clone()] });
        for h in &singles[i + 1..] {
            out.push(JFamily {
                gens: vec![g.clone(), h.clone()],
            });
        }
    }
    out
}

/// C-compactness of `a` in Γ𝕁∞ against the generated family library.
/// Positive verdicts mean "no refutation in the library".
pub fn jinf_cc_check(a: &JInfClosed) -> Result<CcVerdict> {
    let a = normalize(a)?;
    let lib = family_library(&a);
    let refuting = lib.iter().find(|f| f.refutes(&a));
    Ok(CcVerdict {
        descriptor: a.to_string(),
        compact: refuting.is_none(),
        families_checked: lib.len(),
        refuting_family: refuting.map(|f| f.to_string()),
        refutation: refuting.cloned(),
    })
}

/// Replays a refutation of a finite union pointwise: every maximal point of
/// `a` lies in some generator's union, and `a` fits inside no single
/// generator (each generator family is □ of a set, so membership is inclusion).
pub fn replay_refutation(a: &JInfClosed, family: &JFamily) -> bool {
    let JInfClosed::FiniteUnion(xs) = a else {
        return false;
    };
    if !family.gens.iter().all(|g| matches!(g, JFamGen::Set(_))) {
        return false;
    }
    let maxima = union_maxima(xs);
    let parts = family.union_parts();
    let covered = maxima
        .iter()
        .all(|x| parts.iter().any(|p| jinf_closed_member(p, x)));
    let omitted = parts
        .iter()
        .all(|p| maxima.iter().any(|x| !jinf_closed_member(p, x)));
    covered && omitted
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_examples() {
        let x = JInfElem::at(1, 3, 2);
        assert!(!jinf_leq(&x, &JInfElem::at(2, 1, 0)));
        assert!(jinf_leq(&x, &JInfElem::at(2, 2, 0)));
        assert!(jinf_leq(&x, &JInfElem::at(1, 3, 5)));
    }

    #[test]
    fn member_examples() {
        let p = JInfClosed::UnionPrefix(2);
        assert!(jinf_closed_member(&p, &JInfElem::at(1, 5, 0)));
        assert!(!jinf_closed_member(&p, &JInfElem::at(3, 1, 1)));
    }

    #[test]
    fn cc_examples() {
        for n in 1..=5 {
            assert!(jinf_cc_check(&JInfClosed::UnionPrefix(n)).unwrap().compact);
        }
        assert!(jinf_cc_check(&JInfClosed::All).unwrap().compact);
        assert!(jinf_cc_check(&JInfClosed::Principal(JInfElem::at(2, 3, 4))).unwrap().compact);
        let u = JInfClosed::FiniteUnion(vec![JInfElem::at(1, 1, 0), JInfElem::at(2, 1, 0)]);
        let v = jinf_cc_check(&u).unwrap();
        assert!(!v.compact);
        assert_eq!(v.refuting_family.unwrap(), "□(↓(1,1,w)) ∪ □(↓(2,1,w))");
    }

    #[test]
    fn union_normalizes_to_principal() {
        let u = JInfClosed::FiniteUnion(vec![JInfElem::at(1, 2, 1), JInfElem::at(2, 2, 0)]);
        assert_eq!(normalize(&u).unwrap(), JInfClosed::Principal(JInfElem::at(2, 2, 0)));
    }
}
