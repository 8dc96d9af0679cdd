//! The poset Y, the dcpo 𝒵 = 𝕎 × 𝕎* with its three generating relations, the
//! string order ⊑ on 𝒯 = 𝕎*, chain suprema, and the irreducible closed sets of
//! 𝒵 as descriptors.
//!
//! Ordinals below ε₀ stand in for 𝕎 = [0, ω₁). Uncountable index sets are a
//! tag on [`ChainDescriptor`], never materialised.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ordinal::{parse_ord_string, Ordinal, OrdinalOrTop, OrdString};

// ---------------------------------------------------------------- Y

/// An element `(m, u)` of Y: column `m`, level `u ≤ ω₁`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct YElem {
    pub m: Ordinal,
    pub u: OrdinalOrTop,
}

impl YElem {
    pub fn new(m: Ordinal, u: OrdinalOrTop) -> Self {
        YElem { m, u }
    }
}

/// `(m,u) ≤ (m',u')` iff same column and `u ≤ u'`, or `u' = ω₁` and `u ≤ m'`.
pub fn y_leq(a: &YElem, b: &YElem) -> bool {
    (a.m == b.m && a.u <= b.u) || (b.u.is_top() && a.u <= OrdinalOrTop::Ord(b.m.clone()))
}

// ---------------------------------------------------------------- 𝒵

/// An element `(m, s)` of 𝒵.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZElem {
    pub m: Ordinal,
    pub s: OrdString,
}

impl ZElem {
    pub fn new(m: Ordinal, s: OrdString) -> Self {
        ZElem { m, s }
    }

    /// Shorthand with natural-number entries.
    pub fn nats(m: u64, s: &[u64]) -> Self {
        ZElem::new(Ordinal::nat(m), OrdString::from_nats(s))
    }
}

impl fmt::Display for ZElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ; {}", self.m, self.s)
    }
}

impl FromStr for ZElem {
    type Err = Error;

    /// `m ; s`, e.g. `3 ; 1.7`.
    fn from_str(text: &str) -> Result<Self> {
        let Some(semi) = text.find(';') else {
            return Err(Error::parse(text.len() + 1, "expected `m ; s`"));
        };
        let (left, right) = (&text[..semi], &text[semi + 1..]);
        let m = left.trim().parse::<Ordinal>().map_err(|e| shift(e, offset(text, left)))?;
        let s = parse_ord_string(right.trim()).map_err(|e| shift(e, offset(text, right)))?;
        Ok(ZElem { m, s })
    }
}

/// Column offset of the first non-blank character of `part` inside `whole`.
fn offset(whole: &str, part: &str) -> usize {
    let start = part.as_ptr() as usize - whole.as_ptr() as usize;
    start + (part.len() - part.trim_start().len())
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { column, message } => Error::Parse {
            column: column + by,
            message,
        },
        other => other,
    }
}

crate::ordinal::text_serde!(ZElem);

/// Which relation shape relates two elements of 𝒵.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ZTag {
    R1,
    R2,
    R3,
    /// `<₂;<₁`: below an intermediate via `<₂`, which is below the target via `<₁`.
    R2R1,
    R3R1,
    Eq,
}

impl fmt::Display for ZTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ZTag::R1 => "R1",
            ZTag::R2 => "R2",
            ZTag::R3 => "R3",
            ZTag::R2R1 => "R2;R1",
            ZTag::R3R1 => "R3;R1",
            ZTag::Eq => "EQ",
        })
    }
}

/// A relation shape plus, for composites, the forced intermediate element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZRelWitness {
    pub tag: ZTag,
    pub intermediate: Option<ZElem>,
}

impl ZRelWitness {
    fn plain(tag: ZTag) -> Self {
        ZRelWitness {
            tag,
            intermediate: None,
        }
    }
}

/// `(m, u.s) <₁ (m, u'.s)` with `u < u'`.
pub fn lt1(a: &ZElem, b: &ZElem) -> bool {
    a.m == b.m && head_lt(&a.s, &b.s)
}

/// Strings of equal nonzero length with equal tails and a smaller head.
fn head_lt(s: &OrdString, t: &OrdString) -> bool {
    s.len() == t.len()
        && match (s.head(), t.head()) {
            (Some(x), Some(y)) => x < y && s.items()[1..] == t.items()[1..],
            _ => false,
        }
}

/// The nonempty front part `t` with `s = t·suffix`.
fn proper_prefix(s: &OrdString, suffix: &OrdString) -> Option<OrdString> {
    s.strip_suffix(suffix).filter(|t| !t.is_empty())
}

/// `(m, ts) <₂ (m, s)` with `t ≠ ε`.
pub fn lt2(a: &ZElem, b: &ZElem) -> bool {
    a.m == b.m && proper_prefix(&a.s, &b.s).is_some()
}

/// `(m, ts) <₃ (m', s)` with `t ≠ ε` and `min(t) ≤ m'`.
pub fn lt3(a: &ZElem, b: &ZElem) -> bool {
    proper_prefix(&a.s, &b.s).is_some_and(|t| min_le(&t, &b.m))
}

fn min_le(t: &OrdString, m: &Ordinal) -> bool {
    t.items().iter().any(|x| x <= m)
}

/// The intermediate `c` forced for `a <ᵢ c <₁ b`: `c.s` is the suffix of `a.s`
/// of length |b.s|, and for `i = 3` also `c.m = b.m`.
fn composite(a: &ZElem, b: &ZElem, via3: bool) -> Option<ZElem> {
    if b.s.is_empty() || a.s.len() <= b.s.len() {
        return None;
    }
    let cs = a.s.suffix(b.s.len())?;
    if !head_lt(&cs, &b.s) {
        return None;
    }
    let c = ZElem::new(if via3 { b.m.clone() } else { a.m.clone() }, cs);
    let first = if via3 { lt3(a, &c) } else { lt2(a, &c) };
    (first && lt1(&c, b)).then_some(c)
}

/// The first relation shape (R1, R2, R3, R2;R1, R3;R1, EQ) relating `a` to `b`.
pub fn z_rel(a: &ZElem, b: &ZElem) -> Option<ZRelWitness> {
    if lt1(a, b) {
        return Some(ZRelWitness::plain(ZTag::R1));
    }
    if lt2(a, b) {
        return Some(ZRelWitness::plain(ZTag::R2));
    }
    if lt3(a, b) {
        return Some(ZRelWitness::plain(ZTag::R3));
    }
    if let Some(c) = composite(a, b, false) {
        return Some(ZRelWitness {
            tag: ZTag::R2R1,
            intermediate: Some(c),
        });
    }
    if let Some(c) = composite(a, b, true) {
        return Some(ZRelWitness {
            tag: ZTag::R3R1,
            intermediate: Some(c),
        });
    }
    (a == b).then(|| ZRelWitness::plain(ZTag::Eq))
}

/// Re-checks a witness against the generating relations.
pub fn witness_holds(a: &ZElem, b: &ZElem, w: &ZRelWitness) -> bool {
    match (w.tag, &w.intermediate) {
        (ZTag::R1, None) => lt1(a, b),
        (ZTag::R2, None) => lt2(a, b),
        (ZTag::R3, None) => lt3(a, b),
        (ZTag::R2R1, Some(c)) => lt2(a, c) && lt1(c, b),
        (ZTag::R3R1, Some(c)) => lt3(a, c) && lt1(c, b),
        (ZTag::Eq, None) => a == b,
        _ => false,
    }
}

pub fn z_lt(a: &ZElem, b: &ZElem) -> bool {
    z_rel(a, b).is_some_and(|w| w.tag != ZTag::Eq)
}

pub fn z_leq(a: &ZElem, b: &ZElem) -> bool {
    a == b || z_rel(a, b).is_some()
}

// ---------------------------------------------------------------- 𝒯

/// `s ⊑ t` where ⊑ = ⊏₁ ∪ ⊏₂ ∪ (⊏₂;⊏₁) ∪ =.
pub fn t_leq(s: &OrdString, t: &OrdString) -> bool {
    if s == t || head_lt(s, t) || proper_prefix(s, t).is_some() {
        return true;
    }
    // s ⊏₂ c ⊏₁ t with c the suffix of s of length |t|
    !t.is_empty() && s.len() > t.len() && s.suffix(t.len()).is_some_and(|c| head_lt(&c, t))
}

/// Every pair of sampled members of ↑s is ⊑-comparable. Samples outside ↑s
/// are ignored.
pub fn upset_linearity_check(s: &OrdString, samples: &[OrdString]) -> bool {
    let up: Vec<&OrdString> = samples.iter().filter(|x| t_leq(s, x)).collect();
    up.iter()
        .all(|x| up.iter().all(|y| t_leq(x, y) || t_leq(y, x)))
}

/// f(m, s) = s.
pub fn f_project(z: &ZElem) -> OrdString {
    z.s.clone()
}

// ---------------------------------------------------------------- chains

/// Index set W of a chain `(m, u.s)_{u ∈ W}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChainIndex {
    /// Countable W with `sup W = sup`; samples are members of W.
    Countable { sup: Ordinal, samples: Vec<Ordinal> },
    /// Uncountable (hence cofinal in 𝕎) W; samples are members of W.
    Uncountable { samples: Vec<Ordinal> },
}

/// The chain `(m, u.s)_{u ∈ W}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainDescriptor {
    pub m: Ordinal,
    pub s: OrdString,
    pub w: ChainIndex,
}

impl ChainDescriptor {
    pub fn countable(m: Ordinal, s: OrdString, sup: Ordinal, samples: Vec<Ordinal>) -> Self {
        ChainDescriptor {
            m,
            s,
            w: ChainIndex::Countable { sup, samples },
        }
    }

    pub fn uncountable(m: Ordinal, s: OrdString, samples: Vec<Ordinal>) -> Self {
        ChainDescriptor {
            m,
            s,
            w: ChainIndex::Uncountable { samples },
        }
    }

    pub fn samples(&self) -> &[Ordinal] {
        match &self.w {
            ChainIndex::Countable { samples, .. } | ChainIndex::Uncountable { samples } => samples,
        }
    }

    /// Sampled chain members `(m, u.s)`.
    pub fn sample_elems(&self) -> Vec<ZElem> {
        self.samples()
            .iter()
            .map(|u| ZElem::new(self.m.clone(), self.s.cons(u.clone())))
            .collect()
    }

    /// Samples pairwise distinct and, for countable W, bounded by its sup.
    pub fn validate(&self) -> Result<()> {
        let xs = self.samples();
        for (i, a) in xs.iter().enumerate() {
            if xs[..i].contains(a) {
                return Err(Error::MalformedChain(format!("repeated sample {a}")));
            }
        }
        if let ChainIndex::Countable { sup, .. } = &self.w {
            if let Some(big) = xs.iter().find(|u| *u > sup) {
                return Err(Error::MalformedChain(format!("sample {big} exceeds sup {sup}")));
            }
        }
        Ok(())
    }
}

/// sup of the chain: `(m, s)` for uncountable W, `(m, u₀.s)` with `u₀ = sup W` otherwise.
pub fn chain_sup(c: &ChainDescriptor) -> Result<ZElem> {
    c.validate()?;
    Ok(match &c.w {
        ChainIndex::Uncountable { .. } => ZElem::new(c.m.clone(), c.s.clone()),
        ChainIndex::Countable { sup, .. } => ZElem::new(c.m.clone(), c.s.cons(sup.clone())),
    })
}

/// Decides `chain_sup(c) ≤ candidate` from how the chain sits below the
/// candidate, without comparing against the sup directly.
///
/// Every sample must lie below the candidate. For an uncountable W the
/// candidate must moreover bound the whole (cofinal) chain; when the relation
/// shape makes that impossible the candidate is rejected as not an upper bound.
pub fn least_upper_bound_check(c: &ChainDescriptor, candidate: &ZElem) -> Result<bool> {
    c.validate()?;
    let elems = c.sample_elems();
    if elems.is_empty() {
        return Err(Error::MalformedChain("no samples to classify".into()));
    }
    if let Some(bad) = elems.iter().find(|a| !z_leq(a, candidate)) {
        return Err(Error::NotAnUpperBound(format!("{bad} ≰ {candidate}")));
    }
    let top = elems
        .iter()
        .max_by(|a, b| a.s.head().cmp(&b.s.head()))
        .expect("nonempty");
    let tag = z_rel(top, candidate).expect("checked above").tag;
    let (m2, s2) = (&candidate.m, &candidate.s);
    match tag {
        // same length as u.s: the candidate's head must dominate every index
        ZTag::Eq | ZTag::R1 => {
            let head = s2.head().expect("same length as u.s");
            match &c.w {
                ChainIndex::Countable { sup, .. } => Ok(sup <= head),
                ChainIndex::Uncountable { .. } => Err(Error::NotAnUpperBound(format!(
                    "{candidate} is a single head above uncountably many indices"
                ))),
            }
        }
        // shorter than u.s: u.s = u·t₀·(suffix of length |s'|)
        ZTag::R2 | ZTag::R3 | ZTag::R2R1 | ZTag::R3R1 => {
            let t0 = c.s.prefix(c.s.len() - s2.len()).expect("|s'| ≤ |s|");
            if c.m == *m2 {
                return Ok(true);
            }
            match &c.w {
                ChainIndex::Countable { sup, .. } => Ok(min_le(&t0.cons(sup.clone()), m2)),
                ChainIndex::Uncountable { .. } => {
                    if min_le(&t0, m2) {
                        Ok(true)
                    } else {
                        Err(Error::NotAnUpperBound(format!(
                            "{candidate} needs min(u.t) ≤ {m2} for cofinally many u"
                        )))
                    }
                }
            }
        }
    }
}

/// For `(m1, u1.s)` and `(m2, u2.s)`, the point `(max(u1,u2), s)` of `L_s`
/// above both.
pub fn irreducibility_probe(a: &ZElem, b: &ZElem) -> Result<ZElem> {
    let (ta, tb) = (a.s.tail(), b.s.tail());
    match (ta, tb) {
        (Some(sa), Some(sb)) if sa == sb => {
            let u = a.s.head().max(b.s.head()).expect("nonempty").clone();
            let p = ZElem::new(u, sa);
            debug_assert!(z_leq(a, &p) && z_leq(b, &p));
            Ok(p)
        }
        _ => Err(Error::Precondition(format!(
            "{a} and {b} are not of the form (m, u.s) over a common s"
        ))),
    }
}

// ---------------------------------------------------------------- IRR(𝒵)

/// `↓(m, s)` or `↓L_s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ZClosedDescr {
    Principal(ZElem),
    Level(OrdString),
}

impl fmt::Display for ZClosedDescr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZClosedDescr::Principal(z) => write!(f, "principal({};{})", z.m, z.s),
            ZClosedDescr::Level(s) => write!(f, "level({s})"),
        }
    }
}

impl FromStr for ZClosedDescr {
    type Err = Error;

    /// `principal(3;1.7)` or `level(7)`.
    fn from_str(text: &str) -> Result<Self> {
        let t = text.trim();
        let lead = text.len() - text.trim_start().len();
        let inner = |name: &str| -> Option<&str> {
            t.strip_prefix(name)?.trim_start().strip_prefix('(')?.strip_suffix(')')
        };
        if let Some(body) = inner("principal") {
            let z: ZElem = body.parse().map_err(|e| shift(e, lead + offset(t, body)))?;
            Ok(ZClosedDescr::Principal(z))
        } else if let Some(body) = inner("level") {
            let s = parse_ord_string(body.trim()).map_err(|e| shift(e, lead + offset(t, body)))?;
            Ok(ZClosedDescr::Level(s))
        } else {
            Err(Error::parse(lead + 1, "expected principal(m;s) or level(s)"))
        }
    }
}

crate::ordinal::text_serde!(ZClosedDescr);

/// `z ∈ d`. For `Level(s)`: some `m` has `z ≤ (m, s)`, which happens exactly
/// when `z.s ⊑ s` (the column never matters: R3 only needs m large).
pub fn closed_member(d: &ZClosedDescr, z: &ZElem) -> bool {
    match d {
        ZClosedDescr::Principal(w) => z_leq(z, w),
        ZClosedDescr::Level(s) => t_leq(&z.s, s),
    }
}

/// Finite set of columns that decides `∃m. z ≤ (m, s)`: every ordinal in
/// sight, plus one above them all.
pub fn level_probe_columns(z: &ZElem, s: &OrdString) -> Vec<Ordinal> {
    let mut cols: Vec<Ordinal> = std::iter::once(&z.m)
        .chain(z.s.items())
        .chain(s.items())
        .cloned()
        .collect();
    cols.push(generic_above(cols.iter()));
    cols.push(Ordinal::zero());
    cols.sort();
    cols.dedup();
    cols
}

/// An ordinal strictly above every listed one.
pub fn generic_above<'a>(xs: impl IntoIterator<Item = &'a Ordinal>) -> Ordinal {
    xs.into_iter()
        .max()
        .map_or(Ordinal::zero(), |m| m.succ())
}

/// Brute-force `∃m. z ≤ (m, s)` over [`level_probe_columns`].
pub fn closed_member_scan(d: &ZClosedDescr, z: &ZElem) -> bool {
    match d {
        ZClosedDescr::Principal(w) => z_leq(z, w),
        ZClosedDescr::Level(s) => level_probe_columns(z, s)
            .into_iter()
            .any(|m| z_leq(z, &ZElem::new(m, s.clone()))),
    }
}

fn descr_ordinals(d: &ZClosedDescr) -> Vec<&Ordinal> {
    match d {
        ZClosedDescr::Principal(z) => std::iter::once(&z.m).chain(z.s.items()).collect(),
        ZClosedDescr::Level(s) => s.items().iter().collect(),
    }
}

/// Inclusion of the denoted closed sets.
pub fn descr_leq(d1: &ZClosedDescr, d2: &ZClosedDescr) -> bool {
    use ZClosedDescr::*;
    match (d1, d2) {
        (Principal(z), _) => closed_member(d2, z),
        (Level(s), Level(s2)) => t_leq(s, s2),
        (Level(s), Principal(w)) => {
            // columns of L_s only matter when equal to an ordinal in sight,
            // so one generic column decides all of them
            let big = generic_above(descr_ordinals(d1).into_iter().chain(descr_ordinals(d2)));
            z_leq(&ZElem::new(big, s.clone()), w)
        }
    }
}

/// A directed family of descriptors, presented finitely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DescrFamily {
    Finite(Vec<ZClosedDescr>),
    /// `{ Level(m.s) : m ∈ 𝕎 }`.
    LevelSchema(OrdString),
    /// `{ Principal(m, u.s) : u ∈ W }`.
    PrincipalChain(ChainDescriptor),
}

/// Supremum in Γ𝒵 of a directed family.
pub fn descr_sup(family: &DescrFamily) -> Result<ZClosedDescr> {
    match family {
        DescrFamily::LevelSchema(s) => Ok(ZClosedDescr::Level(s.clone())),
        DescrFamily::PrincipalChain(c) => Ok(ZClosedDescr::Principal(chain_sup(c)?)),
        DescrFamily::Finite(ds) => {
            if ds.is_empty() {
                return Err(Error::Empty("descriptor family"));
            }
            for a in ds {
                for b in ds {
                    if !ds.iter().any(|c| descr_leq(a, c) && descr_leq(b, c)) {
                        return Err(Error::NotDirected(format!("{a} and {b} have no bound in the family")));
                    }
                }
            }
            let top = ds
                .iter()
                .find(|c| ds.iter().all(|a| descr_leq(a, c)))
                .expect("finite directed family has a maximum");
            Ok(top.clone())
        }
    }
}

// ---------------------------------------------------------------- □⋃ round trip

/// Generator of a down-closed family of IRR(𝒵) descriptors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyGen {
    Single(ZClosedDescr),
    /// `{ Principal(m, r) : m ∈ 𝕎 }`.
    AllColumns(OrdString),
}

impl fmt::Display for FamilyGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyGen::Single(d) => write!(f, "{d}"),
            FamilyGen::AllColumns(r) => write!(f, "principal(*;{r})"),
        }
    }
}

fn gen_ordinals(gens: &[FamilyGen]) -> Vec<Ordinal> {
    let mut out: Vec<Ordinal> = Vec::new();
    for g in gens {
        match g {
            FamilyGen::Single(d) => out.extend(descr_ordinals(d).into_iter().cloned()),
            FamilyGen::AllColumns(r) => out.extend(r.items().iter().cloned()),
        }
    }
    out.sort();
    out.dedup();
    out
}

fn gen_strings(gens: &[FamilyGen]) -> Vec<OrdString> {
    let mut out: Vec<OrdString> = Vec::new();
    for g in gens {
        let s = match g {
            FamilyGen::Single(ZClosedDescr::Principal(z)) => &z.s,
            FamilyGen::Single(ZClosedDescr::Level(s)) | FamilyGen::AllColumns(s) => s,
        };
        out.extend(s.suffixes());
    }
    out.sort();
    out.dedup();
    out
}

/// `d` belongs to the down-closure of the generators.
pub fn family_contains(gens: &[FamilyGen], d: &ZClosedDescr) -> bool {
    gens.iter().any(|g| match g {
        FamilyGen::Single(top) => descr_leq(d, top),
        FamilyGen::AllColumns(r) => match d {
            ZClosedDescr::Principal(z) => closed_member(&ZClosedDescr::Level(r.clone()), z),
            ZClosedDescr::Level(s) => {
                // a large column is the most permissive one
                let big = generic_above(s.items().iter().chain(r.items()));
                descr_leq(d, &ZClosedDescr::Principal(ZElem::new(big, r.clone())))
            }
        },
    })
}

/// `z` lies in the union of the family.
pub fn union_contains(gens: &[FamilyGen], z: &ZElem) -> bool {
    gens.iter().any(|g| match g {
        FamilyGen::Single(d) => closed_member(d, z),
        FamilyGen::AllColumns(r) => t_leq(&z.s, r),
    })
}

/// Checks the family holds `Level(s)` whenever it holds every `Level(m.s)`.
pub fn check_schema_closure(gens: &[FamilyGen]) -> Result<()> {
    let ords = gen_ordinals(gens);
    let big = generic_above(ords.iter());
    for s in gen_strings(gens) {
        let deeper = ZClosedDescr::Level(s.cons(big.clone()));
        let level = ZClosedDescr::Level(s.clone());
        if family_contains(gens, &deeper) && !family_contains(gens, &level) {
            return Err(Error::Precondition(format!(
                "family holds level(m.{s}) for every m but not their sup {level}"
            )));
        }
    }
    Ok(())
}

/// Outcome of [`box_union_roundtrip`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundTrip {
    pub holds: bool,
    pub probes: usize,
    /// A descriptor inside ⋃𝒜 that is missing from 𝒜.
    pub missing: Option<ZClosedDescr>,
}

/// Probe descriptors for a family: columns from the ordinals in sight (plus 0
/// and one above them all), strings from generator suffixes, their head
/// variants and one-step extensions.
fn probe_descriptors(gens: &[FamilyGen]) -> Vec<ZClosedDescr> {
    let mut cols = gen_ordinals(gens);
    cols.push(Ordinal::zero());
    cols.push(generic_above(cols.iter()));
    cols.sort();
    cols.dedup();
    let mut strings = Vec::new();
    for s in gen_strings(gens) {
        strings.push(s.clone());
        for u in &cols {
            if let Some(v) = s.with_head(u.clone()) {
                strings.push(v);
            }
            strings.push(s.cons(u.clone()));
        }
    }
    strings.sort();
    strings.dedup();
    let mut out: Vec<ZClosedDescr> = strings.iter().cloned().map(ZClosedDescr::Level).collect();
    for s in &strings {
        for m in &cols {
            out.push(ZClosedDescr::Principal(ZElem::new(m.clone(), s.clone())));
        }
    }
    out
}

/// Verifies 𝒜 = □(⋃𝒜) for the family generated by `gens`: every probe
/// descriptor whose set lies inside ⋃𝒜 already belongs to 𝒜.
pub fn box_union_roundtrip(gens: &[FamilyGen]) -> Result<RoundTrip> {
    if gens.is_empty() {
        return Err(Error::Empty("family generators"));
    }
    check_schema_closure(gens)?;
    let probes = probe_descriptors(gens);
    for d in &probes {
        let inside = match d {
            ZClosedDescr::Principal(z) => union_contains(gens, z),
            ZClosedDescr::Level(s) => {
                let mut cols = gen_ordinals(gens);
                cols.extend(s.items().iter().cloned());
                cols.push(Ordinal::zero());
                cols.push(generic_above(cols.iter()));
                cols.into_iter()
                    .all(|a| union_contains(gens, &ZElem::new(a, s.clone())))
            }
        };
        if inside && !family_contains(gens, d) {
            return Ok(RoundTrip {
                holds: false,
                probes: probes.len(),
                missing: Some(d.clone()),
            });
        }
    }
    Ok(RoundTrip {
        holds: true,
        probes: probes.len(),
        missing: None,
    })
}

// ---------------------------------------------------------------- sampling

/// Small ordinals that collide often: 0..=6, ω, ω+1, ω·2, ω².
pub fn ordinal_pool() -> Vec<Ordinal> {
    let mut v: Vec<Ordinal> = (0..=6).map(Ordinal::nat).collect();
    v.push(Ordinal::omega());
    v.push(Ordinal::omega().succ());
    v.push(Ordinal::from_terms([(1, 2)]).expect("cnf"));
    v.push(Ordinal::omega_pow(2));
    v
}

pub fn random_ordinal(rng: &mut impl Rng) -> Ordinal {
    let pool = ordinal_pool();
    pool[rng.gen_range(0..pool.len())].clone()
}

pub fn random_string(rng: &mut impl Rng, max_len: usize) -> OrdString {
    let n = rng.gen_range(0..=max_len);
    OrdString::new((0..n).map(|_| random_ordinal(rng)).collect())
}

pub fn random_zelem(rng: &mut impl Rng) -> ZElem {
    ZElem::new(random_ordinal(rng), random_string(rng, 3))
}

fn random_nonempty(rng: &mut impl Rng) -> OrdString {
    let n = rng.gen_range(1..=2);
    OrdString::new((0..n).map(|_| random_ordinal(rng)).collect())
}

/// An element strictly below `z` (usually), built by one random generating step.
pub fn random_below(rng: &mut impl Rng, z: &ZElem) -> ZElem {
    match rng.gen_range(0..4) {
        0 => {
            // <₁: lower the head
            let pool = ordinal_pool();
            match z.s.head() {
                Some(h) => {
                    let smaller: Vec<&Ordinal> = pool.iter().filter(|u| *u < h).collect();
                    if smaller.is_empty() {
                        z.clone()
                    } else {
                        let u = smaller[rng.gen_range(0..smaller.len())].clone();
                        ZElem::new(z.m.clone(), z.s.with_head(u).expect("nonempty"))
                    }
                }
                None => z.clone(),
            }
        }
        1 => ZElem::new(z.m.clone(), random_nonempty(rng).concat(&z.s)),
        2 => {
            // <₃: prefix whose least entry is at most the target column
            let low: Vec<Ordinal> = ordinal_pool().into_iter().filter(|u| *u <= z.m).collect();
            let u = low[rng.gen_range(0..low.len())].clone();
            let t = random_string(rng, 1).cons(u);
            ZElem::new(random_ordinal(rng), t.concat(&z.s))
        }
        _ => random_zelem(rng),
    }
}

/// An element of ↑s in 𝒯 (usually strictly above), by one random ⊑ step.
pub fn random_t_above(rng: &mut impl Rng, s: &OrdString) -> OrdString {
    let raise = |rng: &mut dyn rand::RngCore, t: &OrdString| -> OrdString {
        let Some(h) = t.head() else { return t.clone() };
        let bigger: Vec<Ordinal> = ordinal_pool().into_iter().filter(|u| u > h).collect();
        if bigger.is_empty() {
            t.clone()
        } else {
            let k = (rng.next_u32() as usize) % bigger.len();
            t.with_head(bigger[k].clone()).expect("nonempty")
        }
    };
    match rng.gen_range(0..3) {
        0 => raise(rng, s),
        1 => s.suffix(rng.gen_range(0..=s.len())).expect("in range"),
        _ => {
            let cut = s.suffix(rng.gen_range(0..=s.len())).expect("in range");
            raise(rng, &cut)
        }
    }
}

/// A family that satisfies the schema-closure precondition: every
/// `AllColumns(r)` comes with `Level(r)`.
pub fn random_valid_family(rng: &mut impl Rng) -> Vec<FamilyGen> {
    let n = rng.gen_range(1..=3);
    let mut gens = Vec::new();
    for _ in 0..n {
        match rng.gen_range(0..3) {
            0 => gens.push(FamilyGen::Single(ZClosedDescr::Principal(ZElem::new(
                random_ordinal(rng),
                random_string(rng, 2),
            )))),
            1 => gens.push(FamilyGen::Single(ZClosedDescr::Level(random_string(rng, 2)))),
            _ => {
                let r = random_string(rng, 2);
                gens.push(FamilyGen::AllColumns(r.clone()));
                gens.push(FamilyGen::Single(ZClosedDescr::Level(r)));
            }
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(text: &str) -> ZElem {
        text.parse().unwrap()
    }

    fn s(text: &str) -> OrdString {
        text.parse().unwrap()
    }

    fn o(text: &str) -> Ordinal {
        text.parse().unwrap()
    }

    #[test]
    fn y_examples() {
        let y = |m: u64, u: &str| YElem::new(Ordinal::nat(m), u.parse().unwrap());
        assert!(y_leq(&y(0, "5"), &y(0, "w")));
        assert!(y_leq(&y(3, "2"), &y(7, "w1")));
        assert!(!y_leq(&y(3, "9"), &y(7, "w1")));
    }

    #[test]
    fn z_rel_examples() {
        assert_eq!(z_rel(&z("0;5"), &z("0;7")).unwrap().tag, ZTag::R1);
        assert_eq!(z_rel(&z("4;2.7"), &z("4;7")).unwrap().tag, ZTag::R2);
        assert!(z_rel(&z("3;9.7"), &z("5;7")).is_none());
        assert_eq!(z_rel(&z("3;1.7"), &z("5;7")).unwrap().tag, ZTag::R3);
        let w = z_rel(&z("3;1.2.7"), &z("5;4.7")).unwrap();
        assert_eq!(w.tag, ZTag::R3R1);
        assert_eq!(w.intermediate, Some(z("5;2.7")));
        let w = z_rel(&z("5;1.2.7"), &z("5;4.7")).unwrap();
        assert_eq!(w.tag, ZTag::R2R1);
        assert_eq!(z_rel(&z("5;7"), &z("5;7")).unwrap().tag, ZTag::Eq);
    }

    #[test]
    fn t_examples() {
        assert!(t_leq(&s("2.1"), &s("1")));
        assert!(t_leq(&s("1.1"), &s("2.1")));
        assert!(!t_leq(&s("1"), &s("2.1")));
        assert!(upset_linearity_check(&s("3"), &[s("3"), s("7"), OrdString::eps()]));
        assert!(upset_linearity_check(&OrdString::eps(), &[OrdString::eps()]));
    }

    #[test]
    fn chain_examples() {
        let samples: Vec<Ordinal> = (1..=5).map(Ordinal::nat).collect();
        let c = ChainDescriptor::countable(o("2"), s("7"), o("w"), samples.clone());
        assert_eq!(chain_sup(&c).unwrap(), z("2;w.7"));
        assert!(least_upper_bound_check(&c, &z("2;w+1.7")).unwrap());
        assert!(least_upper_bound_check(&c, &chain_sup(&c).unwrap()).unwrap());
        assert!(!least_upper_bound_check(&c, &z("2;6.7")).unwrap());
        let u = ChainDescriptor::uncountable(o("2"), s("7"), samples);
        assert_eq!(chain_sup(&u).unwrap(), z("2;7"));
        assert!(least_upper_bound_check(&u, &z("2;7")).unwrap());
        assert!(matches!(
            least_upper_bound_check(&u, &z("2;w.7")),
            Err(Error::NotAnUpperBound(_))
        ));
        let trivial = ChainDescriptor::countable(o("2"), s("7"), o("5"), vec![o("1"), o("5")]);
        assert_eq!(chain_sup(&trivial).unwrap(), z("2;5.7"));
        let dup = ChainDescriptor::countable(o("2"), s("7"), o("5"), vec![o("1"), o("1")]);
        assert!(matches!(chain_sup(&dup), Err(Error::MalformedChain(_))));
    }

    #[test]
    fn member_examples() {
        let lvl = ZClosedDescr::Level(s("7"));
        assert!(closed_member(&lvl, &z("9;4.7")));
        assert!(closed_member(&lvl, &z("9;7")));
        assert!(!closed_member(&lvl, &z("9;8")));
    }

    #[test]
    fn descriptor_examples() {
        let d: ZClosedDescr = "level(4.7)".parse().unwrap();
        let p: ZClosedDescr = "principal(4;7)".parse().unwrap();
        assert!(descr_leq(&d, &p));
        assert_eq!(p.to_string(), "principal(4;7)");
        assert_eq!(
            descr_sup(&DescrFamily::LevelSchema(s("7"))).unwrap(),
            ZClosedDescr::Level(s("7"))
        );
        assert_eq!(descr_sup(&DescrFamily::Finite(vec![p.clone()])).unwrap(), p);
        let q: ZClosedDescr = "principal(5;7)".parse().unwrap();
        assert!(matches!(
            descr_sup(&DescrFamily::Finite(vec![p, q])),
            Err(Error::NotDirected(_))
        ));
    }

    #[test]
    fn round_trip_examples() {
        let gens = [FamilyGen::Single("principal(3;7)".parse().unwrap())];
        assert!(box_union_roundtrip(&gens).unwrap().holds);
        let cols = [FamilyGen::AllColumns(s("7"))];
        assert!(matches!(box_union_roundtrip(&cols), Err(Error::Precondition(_))));
        let fixed = [
            FamilyGen::AllColumns(s("7")),
            FamilyGen::Single(ZClosedDescr::Level(s("7"))),
        ];
        assert!(box_union_roundtrip(&fixed).unwrap().holds);
    }

    #[test]
    fn probe_examples() {
        let p = irreducibility_probe(&z("1;2.7"), &z("4;5.7")).unwrap();
        assert_eq!(p, z("5;7"));
        assert!(irreducibility_probe(&z("1;2.7"), &z("4;5.8")).is_err());
    }

    #[test]
    fn text_forms() {
        assert_eq!(z("3 ; 1.7").to_string(), "3 ; 1.7");
        match "3 ; 1.(w+".parse::<ZElem>() {
            Err(Error::Parse { column, .. }) => assert!(column > 4),
            other => panic!("{other:?}"),
        }
        assert!("lvl(7)".parse::<ZClosedDescr>().is_err());
        assert_eq!("level(eps)".parse::<ZClosedDescr>().unwrap(), ZClosedDescr::Level(OrdString::eps()));
    }
}
