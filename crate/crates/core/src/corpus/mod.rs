//! Named structures: 𝕁∞, Example I's P, Example M, plus finite truncations
//! of every infinite structure and a registry addressable by name.

pub mod example_i;
pub mod example_m;
pub mod jinf;

use std::collections::BTreeMap;

use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ordinal::{Ordinal, OrdinalOrTop, OrdString};
use crate::poset::{self, FinitePoset};
use crate::subset::MAX_ELEMENTS;
use crate::zed::{y_leq, z_leq, YElem, ZElem};

pub use example_i::{example_i_leq, p_min_upper_bounds, FinSupportMap, InjRegistry, LElem, PElem};
pub use example_m::{m_dominated_witness, m_leq, m_weakly_dominated_check, MClosed, MElem};
pub use jinf::{jinf_cc_check, jinf_closed_member, jinf_leq, JInfClosed, JInfElem, JVal};

/// Bitset width of the finite engine.
pub const TRUNCATION_MAX: usize = MAX_ELEMENTS;

/// Cap assignments such as `k=2,n=2,j=2`.
pub type Caps = BTreeMap<String, u64>;

pub fn parse_caps(text: &str) -> Result<Caps> {
    let mut caps = Caps::new();
    let mut col = 0;
    for part in text.split(',') {
        let trimmed = part.trim();
        if !trimmed.is_empty() {
            let (k, v) = trimmed
                .split_once('=')
                .ok_or_else(|| Error::parse(col, format!("expected key=value, got {trimmed:?}")))?;
            let v: u64 = v
                .trim()
                .parse()
                .map_err(|_| Error::parse(col + k.len() + 1, format!("cap {k:?} is not a natural")))?;
            caps.insert(k.trim().to_string(), v);
        }
        col += part.len() + 1;
    }
    Ok(caps)
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusEntry {
    pub id: &'static str,
    pub kind: &'static str,
    /// Cap keys with their defaults; empty for fixed finite posets.
    pub caps: Vec<(&'static str, u64)>,
    pub description: &'static str,
}

pub fn corpus_list() -> Vec<CorpusEntry> {
    let fixed = |id, description| CorpusEntry {
        id,
        kind: "finite",
        caps: vec![],
        description,
    };
    let trunc = |id, caps, description| CorpusEntry {
        id,
        kind: "truncation",
        caps,
        description,
    };
    vec![
        fixed("chain2", "2-element chain"),
        fixed("chain3", "3-element chain"),
        fixed("chain4", "4-element chain"),
        fixed("antichain2", "2-element antichain"),
        fixed("antichain3", "3-element antichain"),
        fixed("diamond", "bot < a, b < top"),
        fixed("n", "the N-shaped poset"),
        fixed("v", "one bottom under two maxima"),
        trunc("y", vec![("m", 2), ("u", 2)], "the Y dcpo: columns m, heights u plus w1"),
        trunc("jinf", vec![("k", 2), ("n", 2), ("j", 2)], "𝕁∞ blocks k, columns n, heights j plus w"),
        trunc("jinf-trunc", vec![("k", 2), ("n", 2), ("j", 2)], "alias of jinf"),
        trunc("jinf1", vec![("n", 3), ("j", 2)], "single Johnstone block 𝕁₁"),
        trunc("m", vec![("k", 2), ("n", 1), ("j", 1), ("a", 2), ("s", 1)], "Example M: 𝕁∞ corner, anchor fibers 1..a with S points (1..s,1..s)"),
        trunc("z", vec![("m", 1), ("a", 1), ("len", 2)], "𝒵 over columns 0..m, strings over 0..a up to length len"),
    ]
}

fn cap_of(caps: &Caps, entry: &CorpusEntry, key: &str) -> u64 {
    caps.get(key)
        .copied()
        .or_else(|| entry.caps.iter().find(|c| c.0 == key).map(|c| c.1))
        .unwrap_or(0)
}

fn build<T>(items: Vec<T>, label: impl Fn(&T) -> String, leq: impl Fn(&T, &T) -> bool) -> Result<FinitePoset> {
    if items.len() > TRUNCATION_MAX {
        return Err(Error::cap("truncation size", TRUNCATION_MAX, items.len()));
    }
    let labels = items.iter().map(label).collect();
    FinitePoset::from_fn(labels, |i, j| leq(&items[i], &items[j]))
}

fn jinf_points(blocks: u64, cols: u64, heights: u64) -> Vec<JInfElem> {
    let mut out = Vec::new();
    for k in 1..=blocks {
        for n in 1..=cols {
            for j in (1..=heights).chain([0]) {
                out.push(JInfElem::at(k, n, j));
            }
        }
    }
    out
}

/// Induced sub-poset of a named structure on the points within `caps`.
pub fn truncate(id: &str, caps: &Caps) -> Result<FinitePoset> {
    let entry = corpus_list()
        .into_iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownStructure(id.to_string()))?;
    if let Some(bad) = caps.keys().find(|k| !entry.caps.iter().any(|c| c.0 == k.as_str())) {
        return Err(Error::Precondition(format!("structure {id} has no cap {bad:?}")));
    }
    let c = |key: &str| cap_of(caps, &entry, key);
    // guard before enumerating so that huge caps fail fast
    let estimate: u128 = match id {
        "y" => (c("m") as u128 + 1) * (c("u") as u128 + 2),
        "jinf" | "jinf-trunc" => c("k") as u128 * c("n") as u128 * (c("j") as u128 + 1),
        "jinf1" => c("n") as u128 * (c("j") as u128 + 1),
        "m" => {
            c("k") as u128 * c("n") as u128 * (c("j") as u128 + 1)
                + c("a") as u128 * (c("s") as u128 * c("s") as u128 + 1)
        }
        "z" => {
            let a = c("a") as u128 + 1;
            let strings: u128 = (0..=c("len").min(64)).map(|l| a.saturating_pow(l as u32)).sum();
            (c("m") as u128 + 1).saturating_mul(strings)
        }
        _ => 0,
    };
    if estimate > TRUNCATION_MAX as u128 {
        return Err(Error::cap(
            format!("truncation of {id}"),
            TRUNCATION_MAX,
            usize::try_from(estimate).unwrap_or(usize::MAX),
        ));
    }
    match id {
        "chain2" => Ok(poset::chain(2)),
        "chain3" => Ok(poset::chain(3)),
        "chain4" => Ok(poset::chain(4)),
        "antichain2" => Ok(poset::antichain(2)),
        "antichain3" => Ok(poset::antichain(3)),
        "diamond" => Ok(poset::diamond()),
        "n" => Ok(poset::n_poset()),
        "v" => Ok(poset::v_poset()),
        "y" => {
            let mut pts = Vec::new();
            for m in 0..=c("m") {
                for u in (0..=c("u")).map(|u| OrdinalOrTop::Ord(Ordinal::nat(u))).chain([OrdinalOrTop::Top]) {
                    pts.push(YElem::new(Ordinal::nat(m), u));
                }
            }
            build(pts, |y| format!("({},{})", y.m, y.u), y_leq)
        }
        "jinf" | "jinf-trunc" => build(jinf_points(c("k"), c("n"), c("j")), |x| x.to_string(), jinf_leq),
        "jinf1" => build(jinf_points(1, c("n"), c("j")), |x| x.to_string(), jinf_leq),
        "m" => {
            let reg = InjRegistry::new();
            let mut pts: Vec<MElem> = jinf_points(c("k"), c("n"), c("j")).into_iter().map(MElem::J).collect();
            for a in 1..=c("a") {
                let r = Rational64::from_integer(a as i64);
                for m in 1..=c("s") {
                    for n in 1..=c("s") {
                        pts.push(MElem::P(PElem::new(LElem::S(m, n), r)));
                    }
                }
                pts.push(MElem::P(PElem::top(r)));
            }
            build(pts, |x| x.to_string(), |x, y| m_leq(&reg, x, y))
        }
        "z" => {
            let mut strings = vec![OrdString::eps()];
            let mut layer = vec![OrdString::eps()];
            for _ in 0..c("len") {
                layer = layer
                    .iter()
                    .flat_map(|s| (0..=c("a")).map(move |u| s.cons(Ordinal::nat(u))))
                    .collect();
                strings.extend(layer.iter().cloned());
            }
            let mut pts = Vec::new();
            for m in 0..=c("m") {
                for s in &strings {
                    pts.push(ZElem::new(Ordinal::nat(m), s.clone()));
                }
            }
            build(pts, |z| z.to_string(), z_leq)
        }
        other => Err(Error::UnknownStructure(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn caps_parse() {
        let c = parse_caps("k=2, n=3,j=1").unwrap();
        assert_eq!(c["n"], 3);
        assert!(matches!(parse_caps("k=2,n"), Err(Error::Parse { column: 4, .. })));
    }

    #[test]
    fn truncation_sizes() {
        let none = Caps::new();
        assert_eq!(truncate("jinf", &none).unwrap().len(), 12);
        assert_eq!(truncate("y", &none).unwrap().len(), 12);
        assert_eq!(truncate("jinf1", &none).unwrap().len(), 9);
        assert_eq!(truncate("m", &none).unwrap().len(), 8);
        assert_eq!(truncate("z", &none).unwrap().len(), 14);
        let big = parse_caps("k=5,n=5,j=5").unwrap();
        assert!(truncate("jinf", &big).unwrap_err().is_cap());
        assert!(matches!(truncate("nope", &none), Err(Error::UnknownStructure(_))));
    }
}
