//! Countable ordinals below ω^ω in Cantor normal form, the adjoined top ω₁,
//! and finite strings of ordinals.
//!
//! Text grammar:
//!
//! ```text
//! ordinal := term ('+' term)*
//! term    := 'w' ['^' nat] ['*' nat] | nat
//! string  := 'eps' | item ('.' item)*
//! item    := nat | '(' ordinal ')'
//! ```
//!
//! `ω` is accepted wherever `w` is. Printing always produces the canonical form,
//! so `parse(print(x)) == x`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;


use crate::error::{Error, Result};

/// A single CNF term `ω^exponent · coefficient`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Term {
    pub exponent: u32,
    pub coefficient: u64,
}

/// An ordinal `ω^e₁·c₁ + … + ω^eₖ·cₖ` with `e₁ > … > eₖ` and every `cᵢ ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<Term>,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn nat(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            Ordinal {
                terms: vec![Term {
                    exponent: 0,
                    coefficient: n,
                }],
            }
        }
    }

    pub fn omega() -> Self {
        Self::omega_pow(1)
    }

    /// `ω^k`.
    pub fn omega_pow(k: u32) -> Self {
        Ordinal {
            terms: vec![Term {
                exponent: k,
                coefficient: 1,
            }],
        }
    }

    /// Builds an ordinal from `(exponent, coefficient)` pairs, rejecting anything
    /// that is not in Cantor normal form.
    pub fn from_terms(terms: impl IntoIterator<Item = (u32, u64)>) -> Result<Self> {
        let terms: Vec<Term> = terms
            .into_iter()
            .map(|(exponent, coefficient)| Term {
                exponent,
                coefficient,
            })
            .collect();
        for (i, t) in terms.iter().enumerate() {
            if t.coefficient == 0 {
                return Err(Error::parse(0, "zero coefficient in CNF term"));
            }
            if i > 0 && terms[i - 1].exponent <= t.exponent {
                return Err(Error::parse(0, "CNF exponents must strictly decrease"));
            }
        }
        Ok(Ordinal { terms })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value as a natural number, if finite.
    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [Term {
                exponent: 0,
                coefficient,
            }] => Some(*coefficient),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_nat().is_some()
    }

    /// True for nonzero ordinals with no successor predecessor (ω, ω·2, ω², …).
    pub fn is_limit(&self) -> bool {
        matches!(self.terms.last(), Some(t) if t.exponent > 0)
    }

    /// `self + 1`.
    pub fn succ(&self) -> Self {
        let mut terms = self.terms.clone();
        match terms.last_mut() {
            Some(t) if t.exponent == 0 => t.coefficient += 1,
            _ => terms.push(Term {
                exponent: 0,
                coefficient: 1,
            }),
        }
        Ordinal { terms }
    }

    /// `self + n` for a natural `n`.
    pub fn plus_nat(&self, n: u64) -> Self {
        (0..n).fold(self.clone(), |acc, _| acc.succ())
    }
}

/// Three-way CNF comparison: walk both term lists in lockstep.
pub fn ord_compare(a: &Ordinal, b: &Ordinal) -> Ordering {
    for (x, y) in a.terms.iter().zip(b.terms.iter()) {
        let c = x
            .exponent
            .cmp(&y.exponent)
            .then(x.coefficient.cmp(&y.coefficient));
        if c != Ordering::Equal {
            return c;
        }
    }
    a.terms.len().cmp(&b.terms.len())
}

pub fn ord_succ(a: &Ordinal) -> Ordinal {
    a.succ()
}

/// Maximum of a nonempty finite list.
pub fn ord_sup(xs: &[Ordinal]) -> Result<Ordinal> {
    xs.iter()
        .max_by(|a, b| ord_compare(a, b))
        .cloned()
        .ok_or(Error::Empty("ord_sup needs at least one ordinal"))
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        ord_compare(self, other)
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::nat(n)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            match (t.exponent, t.coefficient) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "w")?,
                (1, c) => write!(f, "w*{c}")?,
                (k, 1) => write!(f, "w^{k}")?,
                (k, c) => write!(f, "w^{k}*{c}")?,
            }
        }
        Ok(())
    }
}

/// Either a countable ordinal or the top marker ω₁.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrdinalOrTop {
    Ord(Ordinal),
    Top,
}

impl OrdinalOrTop {
    pub fn is_top(&self) -> bool {
        matches!(self, OrdinalOrTop::Top)
    }
}

impl From<Ordinal> for OrdinalOrTop {
    fn from(o: Ordinal) -> Self {
        OrdinalOrTop::Ord(o)
    }
}

impl fmt::Display for OrdinalOrTop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrdinalOrTop::Ord(o) => write!(f, "{o}"),
            OrdinalOrTop::Top => write!(f, "w1"),
        }
    }
}

/// A finite string of ordinals. Index 0 is the head, so `u.s` prepends `u`
/// and `t.concat(s)` places `t` in front of `s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct OrdString {
    items: Vec<Ordinal>,
}

impl OrdString {
    pub fn eps() -> Self {
        OrdString { items: Vec::new() }
    }

    pub fn new(items: Vec<Ordinal>) -> Self {
        OrdString { items }
    }

    pub fn from_nats(ns: &[u64]) -> Self {
        OrdString {
            items: ns.iter().map(|&n| Ordinal::nat(n)).collect(),
        }
    }

    pub fn items(&self) -> &[Ordinal] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn head(&self) -> Option<&Ordinal> {
        self.items.first()
    }

    /// Everything after the head; `None` for ε.
    pub fn tail(&self) -> Option<OrdString> {
        if self.items.is_empty() {
            None
        } else {
            Some(OrdString {
                items: self.items[1..].to_vec(),
            })
        }
    }

    /// `u.self`.
    pub fn cons(&self, u: Ordinal) -> OrdString {
        let mut items = Vec::with_capacity(self.items.len() + 1);
        items.push(u);
        items.extend_from_slice(&self.items);
        OrdString { items }
    }

    /// `self` followed by `rest`.
    pub fn concat(&self, rest: &OrdString) -> OrdString {
        let mut items = self.items.clone();
        items.extend_from_slice(&rest.items);
        OrdString { items }
    }

    /// The suffix of length `len`, if `len <= self.len()`.
    pub fn suffix(&self, len: usize) -> Option<OrdString> {
        (len <= self.items.len()).then(|| OrdString {
            items: self.items[self.items.len() - len..].to_vec(),
        })
    }

    /// The prefix of length `len`.
    pub fn prefix(&self, len: usize) -> Option<OrdString> {
        (len <= self.items.len()).then(|| OrdString {
            items: self.items[..len].to_vec(),
        })
    }

    /// If `suffix` is a suffix of `self`, the remaining front part `t` with `self = t·suffix`.
    pub fn strip_suffix(&self, suffix: &OrdString) -> Option<OrdString> {
        let n = self.items.len();
        let k = suffix.items.len();
        if k > n || self.items[n - k..] != suffix.items[..] {
            return None;
        }
        Some(OrdString {
            items: self.items[..n - k].to_vec(),
        })
    }

    /// All suffixes, from ε up to the whole string.
    pub fn suffixes(&self) -> impl Iterator<Item = OrdString> + '_ {
        (0..=self.items.len()).map(move |k| self.suffix(k).expect("k <= len"))
    }

    /// Replaces the head, keeping the tail.
    pub fn with_head(&self, u: Ordinal) -> Option<OrdString> {
        if self.items.is_empty() {
            return None;
        }
        let mut items = self.items.clone();
        items[0] = u;
        Some(OrdString { items })
    }
}

/// Least ordinal in a nonempty string.
pub fn min_of_string(t: &OrdString) -> Result<Ordinal> {
    t.items
        .iter()
        .min()
        .cloned()
        .ok_or(Error::Empty("min of the empty string"))
}

impl fmt::Display for OrdString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.items.is_empty() {
            return write!(f, "eps");
        }
        for (i, o) in self.items.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            if o.is_finite() {
                write!(f, "{o}")?;
            } else {
                write!(f, "({o})")?;
            }
        }
        Ok(())
    }
}

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor {
            chars: src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
            pos: 0,
            src,
        }
    }

    fn column(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|(i, _)| self.src[..*i].chars().count() + 1)
            .unwrap_or_else(|| self.src.chars().count() + 1)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_omega(&mut self) -> bool {
        self.eat('w') || self.eat('ω')
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn nat(&mut self) -> Result<u64> {
        let col = self.column();
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(|c| c.is_ascii_digit()) {
            digits.push(c);
            self.pos += 1;
        }
        if digits.is_empty() {
            return Err(Error::parse(col, "expected a natural number"));
        }
        digits
            .parse()
            .map_err(|_| Error::parse(col, "natural number out of range"))
    }

    fn term(&mut self) -> Result<(u32, u64)> {
        if self.eat_omega() {
            let mut exponent = 1u32;
            let mut coefficient = 1u64;
            if self.eat('^') {
                let col = self.column();
                exponent = u32::try_from(self.nat()?)
                    .map_err(|_| Error::parse(col, "exponent out of range"))?;
            }
            if self.eat('*') {
                coefficient = self.nat()?;
            }
            Ok((exponent, coefficient))
        } else {
            Ok((0, self.nat()?))
        }
    }

    fn ordinal(&mut self) -> Result<Ordinal> {
        let col = self.column();
        let mut terms = vec![self.term()?];
        while self.eat('+') {
            terms.push(self.term()?);
        }
        // A lone `0` is zero; zero terms elsewhere are malformed.
        if terms == [(0, 0)] {
            return Ok(Ordinal::zero());
        }
        Ordinal::from_terms(terms).map_err(|e| match e {
            Error::Parse { message, .. } => Error::parse(col, message),
            other => other,
        })
    }

    fn item(&mut self) -> Result<Ordinal> {
        if self.eat('(') {
            let o = self.ordinal()?;
            if !self.eat(')') {
                return Err(Error::parse(self.column(), "expected ')'"));
            }
            Ok(o)
        } else {
            self.ordinal()
        }
    }

    fn finish(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(Error::parse(self.column(), "unexpected trailing input"))
        }
    }
}

pub fn parse_ordinal(s: &str) -> Result<Ordinal> {
    let mut c = Cursor::new(s);
    let o = c.ordinal()?;
    c.finish()?;
    Ok(o)
}

pub fn parse_ord_string(s: &str) -> Result<OrdString> {
    if s.trim() == "eps" || s.trim() == "ε" {
        return Ok(OrdString::eps());
    }
    let mut c = Cursor::new(s);
    let mut items = vec![c.item()?];
    while c.eat('.') {
        items.push(c.item()?);
    }
    c.finish()?;
    Ok(OrdString { items })
}

impl FromStr for Ordinal {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_ordinal(s)
    }
}

impl FromStr for OrdString {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_ord_string(s)
    }
}

impl FromStr for OrdinalOrTop {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "w1" | "ω1" | "ω₁" => Ok(OrdinalOrTop::Top),
            other => parse_ordinal(other).map(OrdinalOrTop::Ord),
        }
    }
}

macro_rules! text_serde {
    ($t:ty) => {
        impl serde::Serialize for $t {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }
        impl<'de> serde::Deserialize<'de> for $t {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let s = <String as serde::Deserialize>::deserialize(d)?;
                s.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}
pub(crate) use text_serde;

text_serde!(Ordinal);
text_serde!(OrdString);
text_serde!(OrdinalOrTop);

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    /// Independent comparison: map each ordinal < ω^ω to a coefficient vector
    /// indexed by exponent and compare from the highest exponent down.
    fn dense_cmp(a: &Ordinal, b: &Ordinal) -> Ordering {
        let top = a
            .terms()
            .iter()
            .chain(b.terms())
            .map(|t| t.exponent)
            .max()
            .unwrap_or(0);
        let dense = |x: &Ordinal| {
            let mut v = vec![0u64; top as usize + 1];
            for t in x.terms() {
                v[t.exponent as usize] = t.coefficient;
            }
            v.reverse();
            v
        };
        dense(a).cmp(&dense(b))
    }

    #[test]
    fn compare_examples() {
        assert_eq!(ord_compare(&o("3"), &o("3")), Ordering::Equal);
        assert_eq!(ord_compare(&o("w"), &o("3")), Ordering::Greater);
        assert_eq!(ord_compare(&o("w*2+1"), &o("w*2")), Ordering::Greater);
        assert_eq!(dense_cmp(&o("w*2+1"), &o("w*2")), Ordering::Greater);
    }

    #[test]
    fn succ_examples() {
        assert_eq!(ord_succ(&o("0")), o("1"));
        assert_eq!(ord_succ(&o("w")), o("w+1"));
        assert_eq!(ord_succ(&o("w*2+4")), o("w*2+5"));
    }

    #[test]
    fn sup_examples() {
        assert_eq!(ord_sup(&[o("1"), o("5"), o("3")]).unwrap(), o("5"));
        assert_eq!(ord_sup(&[o("w"), o("7")]).unwrap(), o("w"));
        assert_eq!(ord_sup(&[o("w+1"), o("w*2")]).unwrap(), o("w*2"));
        assert!(ord_sup(&[]).is_err());
    }

    #[test]
    fn min_examples() {
        let s = |x: &str| x.parse::<OrdString>().unwrap();
        assert_eq!(min_of_string(&s("2.7.1")).unwrap(), o("1"));
        assert_eq!(min_of_string(&s("5")).unwrap(), o("5"));
        assert_eq!(min_of_string(&s("(w).3.(w+1)")).unwrap(), o("3"));
        assert!(min_of_string(&OrdString::eps()).is_err());
    }

    #[test]
    fn grammar() {
        assert_eq!(o("w^2*3+w*4+7").to_string(), "w^2*3+w*4+7");
        assert_eq!(o("ω^3").to_string(), "w^3");
        let s: OrdString = "3.(w+1).0".parse().unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.to_string(), "3.(w+1).0");
        assert_eq!("eps".parse::<OrdString>().unwrap(), OrdString::eps());
        assert!(matches!(
            "w+w^2".parse::<Ordinal>(),
            Err(Error::Parse { .. })
        ));
        match "3.(w+".parse::<OrdString>() {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 6),
            other => panic!("{other:?}"),
        }
        assert!("w1".parse::<OrdinalOrTop>().unwrap().is_top());
    }

    #[test]
    fn top_exceeds_everything() {
        assert!(OrdinalOrTop::Top > OrdinalOrTop::Ord(o("w^9*9")));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        pub fn ordinal() -> impl Strategy<Value = Ordinal> {
            proptest::collection::btree_map(0u32..4, 1u64..5, 0..4).prop_map(|m| {
                Ordinal::from_terms(m.into_iter().rev()).unwrap()
            })
        }

        fn string() -> impl Strategy<Value = OrdString> {
            proptest::collection::vec(ordinal(), 0..5).prop_map(OrdString::new)
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(2000))]

            #[test]
            fn compare_agrees_with_dense(a in ordinal(), b in ordinal()) {
                prop_assert_eq!(ord_compare(&a, &b), dense_cmp(&a, &b));
                prop_assert_eq!(ord_compare(&a, &b), ord_compare(&b, &a).reverse());
            }

            #[test]
            fn transitive(a in ordinal(), b in ordinal(), c in ordinal()) {
                if a <= b && b <= c { prop_assert!(a <= c); }
            }

            #[test]
            fn succ_is_strict_and_tight(a in ordinal(), b in ordinal()) {
                let s = a.succ();
                prop_assert!(a < s);
                // nothing strictly between a and a+1
                prop_assert!(!(a < b && b < s));
            }

            #[test]
            fn sup_fold_laws(a in ordinal(), b in ordinal(), c in ordinal()) {
                let sup2 = |x: &Ordinal, y: &Ordinal| ord_sup(&[x.clone(), y.clone()]).unwrap();
                prop_assert_eq!(ord_sup(std::slice::from_ref(&a)).unwrap(), a.clone());
                prop_assert_eq!(sup2(&a, &a), a.clone());
                prop_assert_eq!(sup2(&a, &b), sup2(&b, &a));
                prop_assert_eq!(sup2(&sup2(&a, &b), &c), sup2(&a, &sup2(&b, &c)));
            }

            #[test]
            fn text_round_trip(a in ordinal(), s in string()) {
                prop_assert_eq!(parse_ordinal(&a.to_string()).unwrap(), a);
                prop_assert_eq!(parse_ord_string(&s.to_string()).unwrap(), s);
            }

            #[test]
            fn concat_associative(a in string(), b in string(), c in string()) {
                prop_assert_eq!(a.concat(&b).concat(&c), a.concat(&b.concat(&c)));
                prop_assert_eq!(a.concat(&OrdString::eps()), a.clone());
            }
        }

        #[test]
        fn succ_injective_on_sample() {
            use std::collections::HashSet;
            let mut seen = HashSet::new();
            let mut count = 0;
            for e2 in 0..5u64 {
                for e1 in 0..20u64 {
                    for e0 in 0..100u64 {
                        let a = Ordinal::from_terms(
                            [(2, e2), (1, e1), (0, e0)].into_iter().filter(|t| t.1 > 0),
                        )
                        .unwrap();
                        assert!(seen.insert(a.succ()));
                        count += 1;
                    }
                }
            }
            assert_eq!(count, 10_000);
        }
    }
}
