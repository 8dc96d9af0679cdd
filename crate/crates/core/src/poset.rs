//! Finite posets stored as full order relations (one bitmask row per element).

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::{Subset, MAX_ELEMENTS};

/// Hard cap for [`all_posets_up_to`].
pub const ALL_POSETS_MAX: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinitePoset {
    labels: Vec<String>,
    /// `up[i]` = { j : i ≤ j }.
    up: Vec<Subset>,
    /// `down[i]` = { j : j ≤ i }.
    down: Vec<Subset>,
}

/// JSON interchange form: element labels plus cover pairs `[lower, upper]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetDoc {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

fn check_labels(labels: &[String]) -> Result<()> {
    if labels.len() > MAX_ELEMENTS {
        return Err(Error::cap("poset size", MAX_ELEMENTS, labels.len()));
    }
    let mut seen = std::collections::HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

impl FinitePoset {
    fn from_up_rows(labels: Vec<String>, up: Vec<Subset>) -> Self {
        let n = labels.len();
        let mut down = vec![Subset::EMPTY; n];
        for (i, row) in up.iter().enumerate() {
            for j in row.iter() {
                down[j] = down[j].with(i);
            }
        }
        FinitePoset { labels, up, down }
    }

    /// Validates an explicit order relation given as `(lower, upper)` index pairs.
    /// Reports the first violating pair or triple.
    pub fn from_leq_pairs(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        check_labels(&labels)?;
        let n = labels.len();
        let mut up = vec![Subset::EMPTY; n];
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::UnknownLabel(format!("index {}", a.max(b))));
            }
            up[a] = up[a].with(b);
        }
        Self::validate_rows(labels, up)
    }

    /// Validates `leq` given as a predicate over indices.
    pub fn from_fn(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        check_labels(&labels)?;
        let n = labels.len();
        let up = (0..n)
            .map(|i| Subset::from_indices((0..n).filter(|&j| leq(i, j))))
            .collect();
        Self::validate_rows(labels, up)
    }

    fn validate_rows(labels: Vec<String>, up: Vec<Subset>) -> Result<Self> {
        let n = labels.len();
        for i in 0..n {
            if !up[i].contains(i) {
                return Err(Error::NotReflexive(labels[i].clone()));
            }
        }
        for i in 0..n {
            for j in up[i].iter() {
                if j != i && up[j].contains(i) {
                    return Err(Error::NotAntisymmetric(labels[i].clone(), labels[j].clone()));
                }
            }
        }
        for i in 0..n {
            for j in up[i].iter() {
                if let Some(k) = up[j].difference(up[i]).iter().next() {
                    return Err(Error::NotTransitive(
                        labels[i].clone(),
                        labels[j].clone(),
                        labels[k].clone(),
                    ));
                }
            }
        }
        Ok(Self::from_up_rows(labels, up))
    }

    /// Closes a cover (or any generating) relation reflexively and transitively.
    pub fn from_covers(labels: Vec<String>, covers: &[(usize, usize)]) -> Result<Self> {
        check_labels(&labels)?;
        let n = labels.len();
        let mut up: Vec<Subset> = (0..n).map(Subset::singleton).collect();
        for &(a, b) in covers {
            if a >= n || b >= n {
                return Err(Error::UnknownLabel(format!("index {}", a.max(b))));
            }
            up[a] = up[a].with(b);
        }
        for k in 0..n {
            for i in 0..n {
                if up[i].contains(k) {
                    up[i] = up[i].union(up[k]);
                }
            }
        }
        Self::validate_rows(labels, up)
    }

    pub fn from_doc(doc: &PosetDoc) -> Result<Self> {
        let index: HashMap<&str, usize> = doc
            .elements
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let look = |l: &String| {
            index
                .get(l.as_str())
                .copied()
                .ok_or_else(|| Error::UnknownLabel(l.clone()))
        };
        let covers = doc
            .covers
            .iter()
            .map(|(a, b)| Ok((look(a)?, look(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_covers(doc.elements.clone(), &covers)
    }

    pub fn to_doc(&self) -> PosetDoc {
        PosetDoc {
            elements: self.labels.clone(),
            covers: self
                .covers()
                .into_iter()
                .map(|(a, b)| (self.labels[a].clone(), self.labels[b].clone()))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `{a,b}` using element labels.
    pub fn show(&self, s: Subset) -> String {
        let parts: Vec<&str> = s.iter().map(|i| self.labels[i].as_str()).collect();
        format!("{{{}}}", parts.join(","))
    }

    pub fn show_all(&self, sets: &[Subset]) -> Vec<String> {
        sets.iter().map(|&s| self.show(s)).collect()
    }

    pub fn all(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// ↑x
    pub fn up(&self, x: usize) -> Subset {
        self.up[x]
    }

    /// ↓x
    pub fn down(&self, x: usize) -> Subset {
        self.down[x]
    }

    /// Number of pairs in the order relation (including the diagonal).
    pub fn relation_size(&self) -> usize {
        self.up.iter().map(|r| r.len()).sum()
    }

    pub fn down_closure(&self, s: Subset) -> Subset {
        s.iter().fold(Subset::EMPTY, |acc, x| acc.union(self.down[x]))
    }

    pub fn up_closure(&self, s: Subset) -> Subset {
        s.iter().fold(Subset::EMPTY, |acc, x| acc.union(self.up[x]))
    }

    pub fn is_lower(&self, s: Subset) -> bool {
        self.down_closure(s) == s
    }

    pub fn is_upper(&self, s: Subset) -> bool {
        self.up_closure(s) == s
    }

    /// Elements above every member of `s`.
    pub fn upper_bounds(&self, s: Subset) -> Subset {
        s.iter().fold(self.all(), |acc, x| acc.intersection(self.up[x]))
    }

    pub fn lower_bounds(&self, s: Subset) -> Subset {
        s.iter().fold(self.all(), |acc, x| acc.intersection(self.down[x]))
    }

    /// Least element of `s`, if any.
    pub fn least_of(&self, s: Subset) -> Option<usize> {
        s.iter().find(|&x| s.is_subset(self.up[x]))
    }

    pub fn greatest_of(&self, s: Subset) -> Option<usize> {
        s.iter().find(|&x| s.is_subset(self.down[x]))
    }

    /// Least upper bound of `s`, if it exists.
    pub fn sup_of(&self, s: Subset) -> Option<usize> {
        self.least_of(self.upper_bounds(s))
    }

    pub fn inf_of(&self, s: Subset) -> Option<usize> {
        self.greatest_of(self.lower_bounds(s))
    }

    /// Nonempty, and every finite subset has an upper bound inside `s`
    /// (pairs suffice by induction).
    pub fn is_directed(&self, s: Subset) -> bool {
        !s.is_empty()
            && s.iter().all(|a| {
                s.iter()
                    .all(|b| self.upper_bounds(Subset::from_indices([a, b])).meets(s))
            })
    }

    pub fn is_filtered(&self, s: Subset) -> bool {
        !s.is_empty()
            && s.iter().all(|a| {
                s.iter()
                    .all(|b| self.lower_bounds(Subset::from_indices([a, b])).meets(s))
            })
    }

    pub fn minimal(&self, s: Subset) -> Subset {
        Subset::from_indices(
            s.iter()
                .filter(|&x| self.down[x].intersection(s) == Subset::singleton(x)),
        )
    }

    pub fn maximal(&self, s: Subset) -> Subset {
        Subset::from_indices(
            s.iter()
                .filter(|&x| self.up[x].intersection(s) == Subset::singleton(x)),
        )
    }

    /// Hasse diagram edges `(lower, upper)` in lexicographic order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in self.up[a].without(a).iter() {
                let between = self.up[a].intersection(self.down[b]);
                if between.len() == 2 {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Indices sorted so that every element precedes the elements above it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut ix: Vec<usize> = (0..self.len()).collect();
        ix.sort_by_key(|&i| (self.down[i].len(), i));
        ix
    }

    /// Length of the longest chain ending at each element (minimal elements at 0).
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0usize; self.len()];
        for &i in &self.linear_extension() {
            h[i] = self.down[i]
                .without(i)
                .iter()
                .map(|j| h[j] + 1)
                .max()
                .unwrap_or(0);
        }
        h
    }

    /// All lower sets, sorted by (size, mask). Fails once more than `cap` are found.
    pub fn lower_sets(&self, cap: usize) -> Result<Vec<Subset>> {
        let mut order = self.linear_extension();
        order.reverse();
        let mut out = Vec::new();
        self.lower_sets_rec(&order, 0, Subset::EMPTY, Subset::EMPTY, cap, &mut out)?;
        out.sort_by_key(|s| (s.len(), s.0));
        Ok(out)
    }

    fn lower_sets_rec(
        &self,
        order: &[usize],
        pos: usize,
        inc: Subset,
        exc: Subset,
        cap: usize,
        out: &mut Vec<Subset>,
    ) -> Result<()> {
        let decided = inc.union(exc);
        let next = order[pos..].iter().position(|&e| !decided.contains(e));
        match next {
            None => {
                if out.len() >= cap {
                    return Err(Error::cap(
                        format!("closed-set count for |P|={}", self.len()),
                        cap,
                        out.len() + 1,
                    ));
                }
                out.push(inc);
                Ok(())
            }
            Some(off) => {
                let p = pos + off;
                let e = order[p];
                self.lower_sets_rec(order, p + 1, inc.union(self.down[e]), exc, cap, out)?;
                self.lower_sets_rec(order, p + 1, inc, exc.union(self.up[e]), cap, out)
            }
        }
    }

    /// The induced sub-poset on `s`, with indices renumbered in increasing order.
    pub fn restrict(&self, s: Subset) -> FinitePoset {
        let keep: Vec<usize> = s.iter().collect();
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let up = keep
            .iter()
            .map(|&i| {
                Subset::from_indices(
                    keep.iter()
                        .enumerate()
                        .filter(|(_, &j)| self.leq(i, j))
                        .map(|(k, _)| k),
                )
            })
            .collect();
        Self::from_up_rows(labels, up)
    }

    /// Relabels by a permutation: element `i` moves to position `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> FinitePoset {
        let n = self.len();
        let mut labels = vec![String::new(); n];
        let mut up = vec![Subset::EMPTY; n];
        for i in 0..n {
            labels[perm[i]] = self.labels[i].clone();
            up[perm[i]] = Subset::from_indices(self.up[i].iter().map(|j| perm[j]));
        }
        Self::from_up_rows(labels, up)
    }

    pub fn with_labels(&self, labels: Vec<String>) -> Result<FinitePoset> {
        check_labels(&labels)?;
        assert_eq!(labels.len(), self.len());
        Ok(FinitePoset {
            labels,
            up: self.up.clone(),
            down: self.down.clone(),
        })
    }

    /// Same element count and identical relation under the label correspondence.
    pub fn order_equal(&self, other: &FinitePoset) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let map: Option<Vec<usize>> = self.labels.iter().map(|l| other.index_of(l)).collect();
        let Some(map) = map else { return false };
        (0..self.len()).all(|i| {
            (0..self.len()).all(|j| self.leq(i, j) == other.leq(map[i], map[j]))
        })
    }

    /// Graphviz rendering of the Hasse diagram, bottom to top.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{}\" {{", escape(name));
        let _ = writeln!(s, "  rankdir=BT;");
        let _ = writeln!(s, "  node [shape=circle];");
        for l in &self.labels {
            let _ = writeln!(s, "  \"{}\";", escape(l));
        }
        for (a, b) in self.covers() {
            let _ = writeln!(
                s,
                "  \"{}\" -> \"{}\";",
                escape(&self.labels[a]),
                escape(&self.labels[b])
            );
        }
        s.push_str("}\n");
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Poset of sets ordered by inclusion.
pub fn inclusion_poset(labels: Vec<String>, sets: &[Subset]) -> Result<FinitePoset> {
    FinitePoset::from_fn(labels, |i, j| sets[i].is_subset(sets[j]))
}

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

pub fn chain(n: usize) -> FinitePoset {
    FinitePoset::from_fn(numbered(n), |i, j| i <= j).expect("chain is a poset")
}

pub fn antichain(n: usize) -> FinitePoset {
    FinitePoset::from_fn(numbered(n), |i, j| i == j).expect("antichain is a poset")
}

/// ⊥ < a, b < ⊤.
pub fn diamond() -> FinitePoset {
    let labels = ["bot", "a", "b", "top"].map(String::from).to_vec();
    FinitePoset::from_covers(labels, &[(0, 1), (0, 2), (1, 3), (2, 3)]).expect("diamond")
}

/// a < c, b < c, b < d.
pub fn n_poset() -> FinitePoset {
    let labels = ["a", "b", "c", "d"].map(String::from).to_vec();
    FinitePoset::from_covers(labels, &[(0, 2), (1, 2), (1, 3)]).expect("N")
}

/// a < b, a < c.
pub fn v_poset() -> FinitePoset {
    let labels = ["a", "b", "c"].map(String::from).to_vec();
    FinitePoset::from_covers(labels, &[(0, 1), (0, 2)]).expect("V")
}

/// Random poset on `n` elements: each pair `i < j` (by index) becomes a
/// generating relation with probability `edge_prob`, then the relation is closed.
pub fn random_poset(n: usize, edge_prob: f64, seed: u64) -> Result<FinitePoset> {
    if n > MAX_ELEMENTS {
        return Err(Error::cap("poset size", MAX_ELEMENTS, n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut covers = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(edge_prob.clamp(0.0, 1.0)) {
                covers.push((i, j));
            }
        }
    }
    FinitePoset::from_covers(numbered(n), &covers)
}

/// A uniformly random permutation of `0..n`.
pub fn random_permutation(n: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        p.swap(i, j);
    }
    p
}

/// Color refinement on the disjoint union of the given posets. Returns one color
/// vector per poset; colors are comparable across posets.
fn refine_colors(ps: &[&FinitePoset]) -> Vec<Vec<usize>> {
    let mut colors: Vec<Vec<usize>> = ps
        .iter()
        .map(|p| {
            let h = p.heights();
            (0..p.len())
                .map(|i| {
                    // packed initial invariant, renumbered below
                    (p.down(i).len() << 16) | (p.up(i).len() << 8) | h[i]
                })
                .collect()
        })
        .collect();
    let mut classes = usize::MAX;
    loop {
        let mut table: BTreeMap<(usize, Vec<usize>, Vec<usize>), usize> = BTreeMap::new();
        let sigs: Vec<Vec<(usize, Vec<usize>, Vec<usize>)>> = ps
            .iter()
            .zip(&colors)
            .map(|(p, col)| {
                (0..p.len())
                    .map(|i| {
                        let mut below: Vec<usize> =
                            p.down(i).without(i).iter().map(|j| col[j]).collect();
                        let mut above: Vec<usize> =
                            p.up(i).without(i).iter().map(|j| col[j]).collect();
                        below.sort_unstable();
                        above.sort_unstable();
                        (col[i], below, above)
                    })
                    .collect()
            })
            .collect();
        for s in sigs.iter().flatten() {
            let k = table.len();
            table.entry(s.clone()).or_insert(k);
        }
        // renumber in sorted-signature order so colors are canonical
        for (k, v) in table.values_mut().enumerate() {
            *v = k;
        }
        colors = sigs
            .iter()
            .map(|v| v.iter().map(|s| table[s]).collect())
            .collect();
        if table.len() == classes {
            return colors;
        }
        classes = table.len();
    }
}

/// An order isomorphism `p → q` as an index map, if one exists.
pub fn poset_iso(p: &FinitePoset, q: &FinitePoset) -> Option<Vec<usize>> {
    if p.len() != q.len() || p.relation_size() != q.relation_size() {
        return None;
    }
    let colors = refine_colors(&[p, q]);
    let (cp, cq) = (&colors[0], &colors[1]);
    let mut hp = cp.clone();
    let mut hq = cq.clone();
    hp.sort_unstable();
    hq.sort_unstable();
    if hp != hq {
        return None;
    }
    let mut class_size: HashMap<usize, usize> = HashMap::new();
    for &c in cp {
        *class_size.entry(c).or_default() += 1;
    }
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by_key(|&i| (class_size[&cp[i]], i));
    let mut map = vec![usize::MAX; p.len()];
    let mut used = vec![false; q.len()];
    if iso_search(p, q, cp, cq, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn iso_search(
    p: &FinitePoset,
    q: &FinitePoset,
    cp: &[usize],
    cq: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&i) = order.get(depth) else {
        return true;
    };
    for j in 0..q.len() {
        if used[j] || cq[j] != cp[i] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&k| {
            p.leq(i, k) == q.leq(j, map[k]) && p.leq(k, i) == q.leq(map[k], j)
        });
        if !consistent {
            continue;
        }
        map[i] = j;
        used[j] = true;
        if iso_search(p, q, cp, cq, order, depth + 1, map, used) {
            return true;
        }
        used[j] = false;
        map[i] = usize::MAX;
    }
    false
}

/// Checks that `map` is an order isomorphism `p → q`.
pub fn is_iso_map(p: &FinitePoset, q: &FinitePoset, map: &[usize]) -> bool {
    if p.len() != q.len() || map.len() != p.len() {
        return false;
    }
    let mut seen = vec![false; q.len()];
    for &j in map {
        if j >= q.len() || std::mem::replace(&mut seen[j], true) {
            return false;
        }
    }
    (0..p.len()).all(|a| (0..p.len()).all(|b| p.leq(a, b) == q.leq(map[a], map[b])))
}

/// One representative per isomorphism class of posets with exactly `n` elements.
pub fn all_posets_up_to(n: usize) -> Result<Vec<FinitePoset>> {
    if n > ALL_POSETS_MAX {
        return Err(Error::cap("all_posets_up_to size", ALL_POSETS_MAX, n));
    }
    let mut level = vec![antichain(0)];
    for size in 1..=n {
        let mut buckets: BTreeMap<Vec<usize>, Vec<FinitePoset>> = BTreeMap::new();
        let mut out = Vec::new();
        for base in &level {
            // every poset arises from a smaller one by adding a maximal element
            // above some lower set
            for below in base.lower_sets(usize::MAX)? {
                let mut up: Vec<Subset> = (0..base.len()).map(|i| base.up(i)).collect();
                for i in below.iter() {
                    up[i] = up[i].with(size - 1);
                }
                up.push(Subset::singleton(size - 1));
                let cand = FinitePoset::from_up_rows(numbered(size), up);
                let mut key: Vec<usize> = refine_colors(&[&cand])[0].clone();
                key.sort_unstable();
                key.push(cand.relation_size());
                let bucket = buckets.entry(key).or_default();
                if bucket.iter().all(|r| poset_iso(r, &cand).is_none()) {
                    bucket.push(cand.clone());
                    out.push(cand);
                }
            }
        }
        level = out;
    }
    Ok(level)
}

/// Iso-class representatives for every size `0..=n`.
pub fn all_posets_of_size_at_most(n: usize) -> Result<Vec<FinitePoset>> {
    let mut out = Vec::new();
    for k in 0..=n {
        out.extend(all_posets_up_to(k)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn validate_examples() {
        let p = FinitePoset::from_covers(labels(&["a", "b"]), &[(0, 1)]).unwrap();
        assert_eq!(p.relation_size(), 3);
        let err = FinitePoset::from_leq_pairs(
            labels(&["a", "b"]),
            &[(0, 0), (1, 1), (0, 1), (1, 0)],
        )
        .unwrap_err();
        assert_eq!(err, Error::NotAntisymmetric("a".into(), "b".into()));
        let p = FinitePoset::from_covers(labels(&["a", "b", "c"]), &[(0, 1), (1, 2)]).unwrap();
        assert!(p.leq(0, 2));
        let err = FinitePoset::from_leq_pairs(
            labels(&["a", "b", "c"]),
            &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)],
        )
        .unwrap_err();
        assert_eq!(err, Error::NotTransitive("a".into(), "b".into(), "c".into()));
        assert_eq!(
            FinitePoset::from_leq_pairs(labels(&["a"]), &[]).unwrap_err(),
            Error::NotReflexive("a".into())
        );
    }

    #[test]
    fn closure_examples() {
        let c = chain(3);
        assert_eq!(c.down_closure(Subset::singleton(2)), c.all());
        assert_eq!(c.up_closure(Subset::EMPTY), Subset::EMPTY);
        let v = v_poset();
        assert_eq!(
            v.down_closure(Subset::from_indices([1, 2])),
            Subset::from_indices([0, 1, 2])
        );
    }

    #[test]
    fn directed_and_sup_examples() {
        let a = antichain(2);
        assert!(!a.is_directed(a.all()));
        assert_eq!(a.sup_of(a.all()), None);
        let c = chain(4);
        let s = Subset::from_indices([0, 2, 3]);
        assert!(c.is_directed(s));
        assert_eq!(c.sup_of(s), Some(3));
        // V-poset turned upside down: b, c have two minimal upper bounds
        let w = FinitePoset::from_covers(
            labels(&["b", "c", "x", "y"]),
            &[(0, 2), (0, 3), (1, 2), (1, 3)],
        )
        .unwrap();
        let pair = Subset::from_indices([0, 1]);
        // brute-force: upper bounds, then check none is below all others
        let ubs: Vec<usize> = (0..4)
            .filter(|&u| pair.iter().all(|x| w.leq(x, u)))
            .collect();
        assert_eq!(ubs, vec![2, 3]);
        assert!(!ubs.iter().any(|&u| ubs.iter().all(|&v| w.leq(u, v))));
        assert_eq!(w.sup_of(pair), None);
    }

    #[test]
    fn iso_examples() {
        let c = chain(3);
        let relabeled = c.permuted(&[2, 0, 1]).with_labels(labels(&["x", "y", "z"])).unwrap();
        let m = poset_iso(&c, &relabeled).unwrap();
        assert!(is_iso_map(&c, &relabeled, &m));
        assert!(poset_iso(&chain(3), &antichain(3)).is_none());
        assert!(poset_iso(&n_poset(), &diamond()).is_none());
    }

    /// Brute force: every relation on `n` labelled points that is a partial
    /// order, deduplicated by a permutation-minimal adjacency code.
    fn brute_force_class_count(n: usize) -> usize {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .collect();
        let perms = permutations(n);
        let mut codes = std::collections::HashSet::new();
        for mask in 0u64..(1 << pairs.len()) {
            let mut rel: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
            rel.extend(pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &p)| p));
            let Ok(p) = FinitePoset::from_leq_pairs(numbered(n), &rel) else {
                continue;
            };
            let code = perms
                .iter()
                .map(|perm| {
                    let mut bits = 0u64;
                    for a in 0..n {
                        for b in 0..n {
                            if p.leq(a, b) {
                                bits |= 1 << (perm[a] * n + perm[b]);
                            }
                        }
                    }
                    bits
                })
                .min()
                .unwrap();
            codes.insert(code);
        }
        codes.len()
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..n {
                let mut q: Vec<usize> = p.to_vec();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn all_posets_counts() {
        assert_eq!(brute_force_class_count(3), 5);
        assert_eq!(brute_force_class_count(4), 16);
        let counts: Vec<usize> = (0..=6)
            .map(|n| all_posets_up_to(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63, 318]);
        assert!(all_posets_up_to(7).unwrap_err().is_cap());
        assert_eq!(chain(1).len(), 1);
    }

    #[test]
    fn random_poset_is_seeded() {
        let a = random_poset(8, 0.3, 42).unwrap();
        let b = random_poset(8, 0.3, 42).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn lower_sets_of_diamond() {
        assert_eq!(diamond().lower_sets(usize::MAX).unwrap().len(), 6);
        assert!(chain(20).lower_sets(5).unwrap_err().is_cap());
    }

    #[test]
    fn doc_round_trip_and_dot() {
        let d = diamond();
        let back = FinitePoset::from_doc(&d.to_doc()).unwrap();
        assert!(d.order_equal(&back));
        let dot = d.to_dot("diamond");
        assert_eq!(dot.matches(" -> ").count(), 4);
        assert_eq!(dot.lines().filter(|l| l.trim_end().ends_with("\";") && !l.contains("->")).count(), 4);
    }

    #[test]
    fn exhaustive_closure_and_sup_properties() {
        for n in 0..=5 {
            for p in all_posets_up_to(n).unwrap() {
                for s in p.all().subsets() {
                    let d = p.down_closure(s);
                    assert_eq!(p.down_closure(d), d);
                    assert!(s.is_subset(d));
                    if let Some(x) = p.sup_of(s) {
                        assert!(s.iter().all(|a| p.leq(a, x)));
                        let ubs = (0..p.len()).filter(|&u| s.iter().all(|a| p.leq(a, u)));
                        for u in ubs {
                            assert!(p.leq(x, u));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn iso_is_an_equivalence_on_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for seed in 0..60 {
            let p = random_poset(6, 0.35, seed).unwrap();
            let q = p.permuted(&random_permutation(6, &mut rng));
            let r = q.permuted(&random_permutation(6, &mut rng));
            assert!(poset_iso(&p, &p).is_some());
            let pq = poset_iso(&p, &q).unwrap();
            let qp = poset_iso(&q, &p).unwrap();
            let qr = poset_iso(&q, &r).unwrap();
            assert!(is_iso_map(&p, &q, &pq) && is_iso_map(&q, &p, &qp));
            let pr: Vec<usize> = pq.iter().map(|&j| qr[j]).collect();
            assert!(is_iso_map(&p, &r, &pr));
            assert!(poset_iso(&p, &r).is_some());
        }
    }
}
