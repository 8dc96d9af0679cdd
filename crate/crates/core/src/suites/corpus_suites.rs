use num_rational::Rational64;
use rand::Rng;

use super::{rng_for, Check, SuiteConfig, Tally};
use crate::corpus::example_i::{l_leq, FinSupportMap, InjRegistry, LElem, PElem};
use crate::corpus::example_m::{m_dominated_witness, m_leq, m_weakly_dominated_check, MElem};
use crate::corpus::jinf::{
    jinf_cc_check, jinf_leq, replay_refutation, union_maxima, JInfClosed, JInfElem, JVal,
};
use crate::corpus::{corpus_list, truncate, Caps};
use crate::error::Result;
use crate::faithfulness::{is_dominated, is_weakly_dominated};
use crate::scott::{is_sober, is_well_filtered};

fn random_jinf(rng: &mut impl Rng) -> JInfElem {
    let j = if rng.gen_bool(0.3) { JVal::Omega } else { JVal::Nat(rng.gen_range(1..=6)) };
    JInfElem {
        k: rng.gen_range(1..=5),
        n: rng.gen_range(1..=6),
        j,
    }
}

/// A finite union with at least two maxima.
fn random_proper_union(rng: &mut impl Rng) -> JInfClosed {
    loop {
        let xs: Vec<JInfElem> = (0..rng.gen_range(2..=4)).map(|_| random_jinf(rng)).collect();
        if union_maxima(&xs).len() >= 2 {
            return JInfClosed::FiniteUnion(xs);
        }
    }
}

pub(crate) fn example_j(cfg: &SuiteConfig) -> Vec<Check> {
    let mut rng = rng_for(cfg.seed, 700);
    let n = (cfg.count / 500).max(20);
    let mut principal = Tally::new(format!("Principal(x) C-compact ({n} sampled x)"));
    for _ in 0..n {
        let x = random_jinf(&mut rng);
        principal.record(jinf_cc_check(&JInfClosed::Principal(x)).is_ok_and(|v| v.compact), || x.to_string());
    }
    let mut prefix = Tally::new("UnionPrefix(n) C-compact for n ≤ 5, and J∞");
    for k in 1..=5 {
        prefix.record(jinf_cc_check(&JInfClosed::UnionPrefix(k)).is_ok_and(|v| v.compact), || format!("J1..J{k}"));
    }
    prefix.record(jinf_cc_check(&JInfClosed::All).is_ok_and(|v| v.compact), || "J∞".into());
    let mut unions = Tally::new(format!("non-principal non-prefix unions refuted ({n} generated)"));
    for _ in 0..n {
        let a = random_proper_union(&mut rng);
        let v = jinf_cc_check(&a);
        let ok = v.as_ref().is_ok_and(|v| {
            !v.compact && v.refutation.as_ref().is_some_and(|f| replay_refutation(&a, f))
        });
        unions.record(ok, || format!("{a} -> {v:?}"));
    }
    vec![principal.finish(), prefix.finish(), unions.finish()]
}

pub(crate) fn example_m() -> (Vec<Check>, String) {
    let d = m_dominated_witness();
    let w = m_weakly_dominated_check();
    let mut dom = Tally::new("m_dominated_witness: four parts verified, verdict 'not dominated'");
    dom.record(d.passed(), || d.render());
    let mut replay = Tally::new("dominated witness replays");
    replay.record(d.replay(), || d.render());
    let mut weak = Tally::new("m_weakly_dominated_check: verdict 'weakly dominated'");
    weak.record(w.passed(), || w.render());
    let mut trunc = Tally::new("finite truncations of M are weakly dominated");
    for caps in ["k=2,n=1,j=1,a=2,s=1", "k=1,n=2,j=2,a=1,s=2", "k=3,n=1,j=1,a=3,s=1"] {
        let ok = crate::corpus::parse_caps(caps)
            .and_then(|c| truncate("m", &c))
            .and_then(|p| is_weakly_dominated(&p));
        trunc.record(ok == Ok(true), || format!("m --caps {caps}: {ok:?}"));
    }
    let detail = format!("{}\n{}", d.render(), w.render());
    (vec![dom.finish(), replay.finish(), weak.finish(), trunc.finish()], detail)
}

fn random_l(rng: &mut impl Rng, maps: &[FinSupportMap]) -> LElem {
    match rng.gen_range(0..5) {
        0 => LElem::Top,
        1 | 2 => LElem::S(rng.gen_range(1..=3), rng.gen_range(1..=4)),
        _ => LElem::T(maps[rng.gen_range(0..maps.len())].clone(), rng.gen_range(1..=4)),
    }
}

fn small_q(rng: &mut impl Rng) -> Rational64 {
    Rational64::new(rng.gen_range(0..8), rng.gen_range(1..=2))
}

/// A registry with a few codes and a pool of P points around them.
fn p_pool(rng: &mut impl Rng) -> (InjRegistry, Vec<PElem>) {
    let maps = [
        FinSupportMap::constant(1),
        FinSupportMap::constant(2).with(1, 4),
        FinSupportMap::constant(1).with(3, 3),
    ];
    let mut reg = InjRegistry::new();
    let mut pts = Vec::new();
    for _ in 0..6 {
        let s = small_q(rng);
        let t = s + Rational64::new(rng.gen_range(1..4), 2);
        let f = maps[rng.gen_range(0..maps.len())].clone();
        let k = rng.gen_range(1..=3);
        let code = reg.inj_i(s, t, f.clone(), k).expect("t > s");
        pts.push(PElem::top(code));
        // points the code lies above, by both bullets
        pts.push(PElem::new(LElem::S(k, rng.gen_range(1..=f.eval(k))), s));
        pts.push(PElem::new(LElem::T(f, rng.gen_range(1..=k)), t));
    }
    for _ in 0..10 {
        pts.push(PElem::new(random_l(rng, &maps), small_q(rng)));
    }
    (reg, pts)
}

fn po_checks<T: std::fmt::Display>(
    pts: &[T],
    leq: impl Fn(&T, &T) -> bool,
    rng: &mut impl Rng,
    triples: usize,
    out: &mut Tally,
) {
    for _ in 0..triples {
        let a = &pts[rng.gen_range(0..pts.len())];
        let b = &pts[rng.gen_range(0..pts.len())];
        let c = &pts[rng.gen_range(0..pts.len())];
        let refl = leq(a, a);
        let anti = !(leq(a, b) && leq(b, a)) || a.to_string() == b.to_string();
        let trans = !(leq(a, b) && leq(b, c)) || leq(a, c);
        out.record(refl && anti && trans, || format!("({a}) ({b}) ({c})"));
    }
}

pub(crate) fn orders(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut rng = rng_for(cfg.seed, 800);
    let n = cfg.count;
    let mut j = Tally::new("𝕁∞ order is a partial order");
    let jp: Vec<JInfElem> = (0..200).map(|_| random_jinf(&mut rng)).collect();
    po_checks(&jp, jinf_leq, &mut rng, n, &mut j);

    let mut l = Tally::new("L order is a partial order");
    let maps = [FinSupportMap::constant(1), FinSupportMap::constant(1).with(2, 5)];
    let lp: Vec<LElem> = (0..100).map(|_| random_l(&mut rng, &maps)).collect();
    po_checks(&lp, l_leq, &mut rng, n, &mut l);

    let mut p = Tally::new("P order is a partial order");
    let mut m = Tally::new("M order is a partial order");
    let mut bridge = Tally::new("𝕁∞ ↔ anchor bridge: (c,a,b) ≤ (a_n,T) iff c ≤ n");
    for round in 0..10 {
        let (reg, mut pts) = p_pool(&mut rng);
        po_checks(&pts, |a, b| crate::corpus::example_i_leq(&reg, a, b), &mut rng, n / 10, &mut p);
        pts.extend((1..=4).map(|a| PElem::top(Rational64::from_integer(a))));
        let mut mp: Vec<MElem> = pts.into_iter().map(MElem::P).collect();
        mp.extend((0..40).map(|_| MElem::J(random_jinf(&mut rng))));
        po_checks(&mp, |a, b| m_leq(&reg, a, b), &mut rng, n / 10, &mut m);
        if round == 0 {
            for x in &jp {
                for a in 1..=6u64 {
                    let y = MElem::P(PElem::top(Rational64::from_integer(a as i64)));
                    bridge.record(m_leq(&reg, &MElem::J(*x), &y) == (x.k <= a), || format!("{x} vs a_{a}"));
                }
            }
        }
    }

    let mut inj = Tally::new("inj_i is injective over distinct argument tuples, output > max(s,t), off the anchors");
    let mut reg = InjRegistry::new();
    let mut seen = std::collections::BTreeSet::new();
    let mut keys = 0;
    while keys < n {
        let s = Rational64::new(rng.gen_range(-50..50), rng.gen_range(1..=7));
        let t = s + Rational64::new(rng.gen_range(1..40), rng.gen_range(1..=5));
        let f = FinSupportMap::constant(rng.gen_range(1..=3)).with(rng.gen_range(1..=4), rng.gen_range(1..=9));
        let k = rng.gen_range(1..=6);
        if !seen.insert((s, t, f.clone(), k)) {
            continue;
        }
        keys += 1;
        let v = reg.inj_i(s, t, f, k)?;
        inj.record(v > s.max(t) && !v.is_integer(), || format!("i({s},{t},..,{k}) = {v}"));
    }
    inj.record(reg.collision_free() && reg.len() == keys, || format!("{} codes, {} keys", reg.len(), keys));

    let mut trunc = Tally::new("truncations are valid posets satisfying the finite universals");
    for e in corpus_list() {
        let p = truncate(e.id, &Caps::new())?;
        let ok = is_sober(&p)? && is_well_filtered(&p)? && is_dominated(&p)? && is_weakly_dominated(&p)?;
        trunc.record(ok, || e.id.to_string());
    }
    Ok([j, l, p, m, bridge, inj, trunc].map(Tally::finish).to_vec())
}
