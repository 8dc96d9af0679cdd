//! Example I: L = S ∪ T ∪ {⊤} and P = L × ℚ, with the coding injection `i`
//! realised as a memo table over a reserved region of ℚ.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};

/// A total map ℕ → ℕ: `default` everywhere except the listed exceptions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FinSupportMap {
    pub default: u64,
    pub exceptions: BTreeMap<u64, u64>,
}

impl FinSupportMap {
    pub fn constant(default: u64) -> Self {
        FinSupportMap {
            default,
            exceptions: BTreeMap::new(),
        }
    }

    /// Drops exceptions equal to the default so equal maps compare equal.
    pub fn with(mut self, k: u64, v: u64) -> Self {
        if v == self.default {
            self.exceptions.remove(&k);
        } else {
            self.exceptions.insert(k, v);
        }
        self
    }

    pub fn eval(&self, k: u64) -> u64 {
        self.exceptions.get(&k).copied().unwrap_or(self.default)
    }
}

impl fmt::Display for FinSupportMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, v) in &self.exceptions {
            write!(f, "{k}->{v},")?;
        }
        write!(f, "_->{}]", self.default)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LElem {
    S(u64, u64),
    T(FinSupportMap, u64),
    Top,
}

impl fmt::Display for LElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LElem::S(m, n) => write!(f, "({m},{n})"),
            LElem::T(g, n) => write!(f, "({g},{n})"),
            LElem::Top => write!(f, "T"),
        }
    }
}

/// Isbell-style order on L: everything below ⊤, otherwise same first
/// coordinate and smaller second.
pub fn l_leq(a: &LElem, b: &LElem) -> bool {
    match (a, b) {
        (_, LElem::Top) => true,
        (LElem::S(m1, n1), LElem::S(m2, n2)) => m1 == m2 && n1 <= n2,
        (LElem::T(f1, n1), LElem::T(f2, n2)) => f1 == f2 && n1 <= n2,
        _ => false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PElem {
    pub base: LElem,
    #[serde(serialize_with = "ser_rational")]
    pub r: Rational64,
}

fn ser_rational<S: serde::Serializer>(r: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl PElem {
    pub fn new(base: LElem, r: Rational64) -> Self {
        PElem { base, r }
    }

    pub fn top(r: Rational64) -> Self {
        PElem::new(LElem::Top, r)
    }

    pub fn s(m: u64, n: u64, r: i64) -> Self {
        PElem::new(LElem::S(m, n), Rational64::from_integer(r))
    }
}

impl fmt::Display for PElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.base, self.r)
    }
}

/// Arguments of `i(s, t, f, k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InjKey {
    pub s: Rational64,
    pub t: Rational64,
    pub f: FinSupportMap,
    pub k: u64,
}

/// Memo table realising `i`. Entry `idx` is sent to
/// `⌊max(s,t)⌋ + 1 + (idx+1)/(idx+2)`: strictly above `s` and `t`, never an
/// integer (so disjoint from the anchors `aₙ = n`), and the fractional part
/// alone recovers `idx`, which makes the map injective.
#[derive(Debug, Clone, Default)]
pub struct InjRegistry {
    keys: Vec<InjKey>,
    index: BTreeMap<InjKey, usize>,
}

fn coded_value(key: &InjKey, idx: usize) -> Result<Rational64> {
    let idx = i64::try_from(idx).map_err(|_| Error::cap("coding region", i64::MAX as usize, idx))?;
    let hi = key.s.max(key.t).floor();
    let frac = Rational64::new(idx + 1, idx + 2);
    Ok(hi + Rational64::from_integer(1) + frac)
}

impl InjRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    /// `i(s, t, f, k)`; requires `t > s`.
    pub fn inj_i(&mut self, s: Rational64, t: Rational64, f: FinSupportMap, k: u64) -> Result<Rational64> {
        if t <= s {
            return Err(Error::Precondition(format!("i(s,t,f,k) needs t > s, got s={s}, t={t}")));
        }
        let key = InjKey { s, t, f, k };
        let idx = match self.index.get(&key) {
            Some(&i) => i,
            None => {
                let i = self.keys.len();
                self.keys.push(key.clone());
                self.index.insert(key.clone(), i);
                i
            }
        };
        coded_value(&key, idx)
    }

    /// The key coded by `r`, if `r` is in the image of `i`.
    pub fn decode(&self, r: Rational64) -> Option<&InjKey> {
        let frac = r - r.floor();
        let one = Rational64::from_integer(1);
        if frac < Rational64::new(1, 2) {
            return None;
        }
        let idx = (frac * 2 - one) / (one - frac);
        if !idx.is_integer() {
            return None;
        }
        let key = self.keys.get(usize::try_from(idx.to_integer()).ok()?)?;
        (coded_value(key, idx.to_integer() as usize).ok()? == r).then_some(key)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&InjKey, Rational64)> + '_ {
        self.keys
            .iter()
            .enumerate()
            .map(|(i, k)| (k, coded_value(k, i).expect("index fits")))
    }

    /// Pairwise distinct outputs across the whole table.
    pub fn collision_free(&self) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        self.entries().all(|(_, v)| seen.insert(v))
    }
}

/// `(n₁,i₁,j₁) ≤ (n₂,i₂,j₂)` in P.
pub fn example_i_leq(reg: &InjRegistry, a: &PElem, b: &PElem) -> bool {
    if a.r == b.r && l_leq(&a.base, &b.base) {
        return true;
    }
    if b.base != LElem::Top {
        return false;
    }
    let Some(key) = reg.decode(b.r) else {
        return false;
    };
    // the coded rule is read up to the fiber order, (n₁,i₁) ≤ (k, f(k)) resp.
    // (n₁,i₁) ≤ (f, k) in L; taken literally it is not transitive
    match &a.base {
        // j₂ = i(j₁, t₁, f, k), t₁ > j₁
        LElem::S(n1, i1) => key.s == a.r && key.t > a.r && key.k == *n1 && *i1 <= key.f.eval(key.k),
        // j₂ = i(t₂, j₁, n₁, i₁), j₁ > t₂
        LElem::T(g, i1) => key.t == a.r && key.s < a.r && key.f == *g && *i1 <= key.k,
        LElem::Top => false,
    }
}

/// Minimal upper bounds of `{a, b}` inside a finite fragment of P.
///
/// The fragment must hold `a`, `b`, the tops `(⊤, a.r)`, `(⊤, b.r)` and every
/// coded top of the registry that the order links to `a` or `b`.
pub fn p_min_upper_bounds(reg: &InjRegistry, a: &PElem, b: &PElem, fragment: &[PElem]) -> Result<Vec<PElem>> {
    let mut required = vec![a.clone(), b.clone(), PElem::top(a.r), PElem::top(b.r)];
    for (_, v) in reg.entries() {
        let t = PElem::top(v);
        if example_i_leq(reg, a, &t) || example_i_leq(reg, b, &t) {
            required.push(t);
        }
    }
    if let Some(miss) = required.iter().find(|x| !fragment.contains(x)) {
        return Err(Error::Precondition(format!("fragment not closed: missing {miss}")));
    }
    let ubs: Vec<&PElem> = fragment
        .iter()
        .filter(|x| example_i_leq(reg, a, x) && example_i_leq(reg, b, x))
        .collect();
    let mut out: Vec<PElem> = ubs
        .iter()
        .filter(|x| !ubs.iter().any(|y| y != *x && example_i_leq(reg, y, x)))
        .map(|x| (*x).clone())
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Anchor `aₙ`: the integer `n`, outside the coding region.
pub fn anchor(n: u64) -> Rational64 {
    Rational64::from_integer(n as i64)
}

pub fn anchor_index(r: Rational64) -> Option<u64> {
    (r.is_integer() && r.to_integer() >= 1).then(|| r.to_integer() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational64 {
        Rational64::from_integer(n)
    }

    #[test]
    fn fiber_order() {
        let reg = InjRegistry::new();
        assert!(example_i_leq(&reg, &PElem::s(2, 1, 0), &PElem::s(2, 4, 0)));
        assert!(!example_i_leq(&reg, &PElem::s(2, 1, 0), &PElem::s(2, 4, 1)));
    }

    #[test]
    fn coded_tops() {
        let mut reg = InjRegistry::new();
        let f = FinSupportMap::constant(1).with(3, 7);
        let j = reg.inj_i(q(2), q(5), f.clone(), 3).unwrap();
        assert!(j > q(5) && !j.is_integer());
        assert!(example_i_leq(&reg, &PElem::s(3, 7, 2), &PElem::top(j)));
        assert!(example_i_leq(&reg, &PElem::s(3, 1, 2), &PElem::top(j)));
        assert!(!example_i_leq(&reg, &PElem::s(3, 8, 2), &PElem::top(j)));
        assert!(!example_i_leq(&reg, &PElem::s(2, 1, 2), &PElem::top(j)));
        // T case: (f, 3) in fiber 5 sits below the same code, since 5 > 2
        let t = PElem::new(LElem::T(f, 3), q(5));
        assert!(example_i_leq(&reg, &t, &PElem::top(j)));
        assert_eq!(reg.inj_i(q(2), q(5), FinSupportMap::constant(1).with(3, 7), 3).unwrap(), j);
        assert!(reg.inj_i(q(5), q(5), FinSupportMap::constant(1), 1).is_err());
    }

    #[test]
    fn shared_cover() {
        let reg = InjRegistry::new();
        let a = PElem::s(1, 1, 0);
        let b = PElem::s(2, 1, 0);
        let frag = vec![a.clone(), b.clone(), PElem::top(q(0))];
        assert_eq!(p_min_upper_bounds(&reg, &a, &b, &frag).unwrap(), vec![PElem::top(q(0))]);
        assert!(p_min_upper_bounds(&reg, &a, &b, &frag[..2]).is_err());
    }
}
