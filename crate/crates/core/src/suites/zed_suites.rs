use rand::Rng;

use super::{rng_for, Check, SuiteConfig, Tally};
use crate::error::Error;
use crate::ordinal::{min_of_string, Ordinal, OrdString};
use crate::zed::*;

fn pick<T: Clone>(rng: &mut impl Rng, xs: &[T]) -> Option<T> {
    (!xs.is_empty()).then(|| xs[rng.gen_range(0..xs.len())].clone())
}

fn nonempty_zelem(rng: &mut impl Rng) -> ZElem {
    loop {
        let z = random_zelem(rng);
        if !z.s.is_empty() {
            return z;
        }
    }
}

/// `c` with `a <₁ c`: raise the head.
fn up1(rng: &mut impl Rng, a: &ZElem) -> Option<ZElem> {
    let h = a.s.head()?;
    let mut bigger: Vec<Ordinal> = ordinal_pool().into_iter().filter(|u| u > h).collect();
    bigger.push(h.succ());
    let u = pick(rng, &bigger)?;
    Some(ZElem::new(a.m.clone(), a.s.with_head(u)?))
}

/// `b` with `a <₂ b`: drop a nonempty front part.
fn up2(rng: &mut impl Rng, a: &ZElem) -> Option<ZElem> {
    if a.s.is_empty() {
        return None;
    }
    let keep = rng.gen_range(0..a.s.len());
    Some(ZElem::new(a.m.clone(), a.s.suffix(keep)?))
}

/// `b` with `a <₃ b`: drop a front part `t` and move to a column `≥ min(t)`.
fn up3(rng: &mut impl Rng, a: &ZElem) -> Option<ZElem> {
    if a.s.is_empty() {
        return None;
    }
    let keep = rng.gen_range(0..a.s.len());
    let t = a.s.prefix(a.s.len() - keep)?;
    let lo = min_of_string(&t).ok()?;
    let mut cols: Vec<Ordinal> = ordinal_pool().into_iter().filter(|m| *m >= lo).collect();
    cols.push(lo);
    Some(ZElem::new(pick(rng, &cols)?, a.s.suffix(keep)?))
}

fn up_any(rng: &mut impl Rng, a: &ZElem) -> Option<ZElem> {
    match rng.gen_range(0..3) {
        0 => up1(rng, a),
        1 => up2(rng, a),
        _ => up3(rng, a),
    }
}

/// Retries `f` until it yields a value.
fn retry<R: Rng, T>(rng: &mut R, mut f: impl FnMut(&mut R) -> Option<T>) -> T {
    loop {
        if let Some(v) = f(rng) {
            return v;
        }
    }
}

type Step = fn(&mut dyn rand::RngCore, &ZElem) -> Option<ZElem>;

fn s1(mut r: &mut dyn rand::RngCore, a: &ZElem) -> Option<ZElem> {
    up1(&mut r, a)
}
fn s2(mut r: &mut dyn rand::RngCore, a: &ZElem) -> Option<ZElem> {
    up2(&mut r, a)
}
fn s3(mut r: &mut dyn rand::RngCore, a: &ZElem) -> Option<ZElem> {
    up3(&mut r, a)
}

/// A triple `a R c S b` built by stepping up twice from a random `a`.
fn chain3<R: Rng>(rng: &mut R, first: Step, second: Step) -> (ZElem, ZElem, ZElem) {
    retry(rng, |r| {
        let a = nonempty_zelem(r);
        let c = first(r, &a)?;
        let b = second(r, &c)?;
        Some((a, c, b))
    })
}

fn show3(a: &ZElem, c: &ZElem, b: &ZElem) -> String {
    format!("a=({a}) c=({c}) b=({b})")
}

pub(crate) fn prop_order(cfg: &SuiteConfig) -> Vec<Check> {
    let mut out = Vec::new();
    let laws: [(&str, Step, fn(&ZElem, &ZElem) -> bool); 3] = [("<1", s1, lt1), ("<2", s2, lt2), ("<3", s3, lt3)];
    for (i, (name, step, rel)) in laws.iter().enumerate() {
        let mut rng = rng_for(cfg.seed, 100 + i as u64);
        let mut irr = Tally::new(format!("item 1: {name} irreflexive"));
        let mut tr = Tally::new(format!("item 1: {name} transitive"));
        for _ in 0..cfg.count {
            let a = random_zelem(&mut rng);
            irr.record(!rel(&a, &a), || format!("a=({a})"));
            let (a, c, b) = chain3(&mut rng, *step, *step);
            tr.record(rel(&a, &b), || show3(&a, &c, &b));
        }
        out.push(irr.finish());
        out.push(tr.finish());
    }

    let mut rng = rng_for(cfg.seed, 110);
    let mut sub = Tally::new("item 2: <1;<2 ⊆ <2");
    let mut sup = Tally::new("item 2: <2 ⊆ <1;<2");
    for _ in 0..cfg.count {
        let (a, c, b) = chain3(&mut rng, s1, s2);
        sub.record(lt2(&a, &b), || show3(&a, &c, &b));
        // every a <₂ b factors through a raised head
        let (a, b) = retry(&mut rng, |r| {
            let a = nonempty_zelem(r);
            let b = up2(r, &a)?;
            Some((a, b))
        });
        let c = retry(&mut rng, |r| up1(r, &a));
        sup.record(lt2(&a, &b) && lt1(&a, &c) && lt2(&c, &b), || show3(&a, &c, &b));
    }
    out.push(sub.finish());
    out.push(sup.finish());

    let comps: [(&str, Step, Step); 3] = [
        ("item 3: <1;<3 ⊆ <3", s1, s3),
        ("item 4: <2;<3 ⊆ <3", s2, s3),
        ("item 5: <3;<2 ⊆ <3", s3, s2),
    ];
    for (i, (name, f, g)) in comps.iter().enumerate() {
        let mut rng = rng_for(cfg.seed, 120 + i as u64);
        let mut t = Tally::new(*name);
        for _ in 0..cfg.count {
            let (a, c, b) = chain3(&mut rng, *f, *g);
            t.record(lt3(&a, &b), || show3(&a, &c, &b));
        }
        out.push(t.finish());
    }

    let mut rng = rng_for(cfg.seed, 130);
    let mut irr = Tally::new("item 6: < irreflexive");
    let mut tr = Tally::new("item 6: < transitive");
    let mut wit = Tally::new("item 6: witnesses re-check");
    for _ in 0..cfg.count {
        let a = random_zelem(&mut rng);
        irr.record(!z_lt(&a, &a), || format!("a=({a})"));
        let (a, c, b) = retry(&mut rng, |r| {
            let a = nonempty_zelem(r);
            let c = up_any(r, &a)?;
            let b = up_any(r, &c)?;
            Some((a, c, b))
        });
        tr.record(!(z_lt(&a, &c) && z_lt(&c, &b)) || z_lt(&a, &b), || show3(&a, &c, &b));
        let x = random_zelem(&mut rng);
        let y = if rng.gen_bool(0.5) { random_below(&mut rng, &x) } else { random_zelem(&mut rng) };
        let ok = z_rel(&y, &x).is_none_or(|w| witness_holds(&y, &x, &w));
        wit.record(ok, || format!("({y}) vs ({x})"));
    }
    out.push(irr.finish());
    out.push(tr.finish());
    out.push(wit.finish());

    let mut rng = rng_for(cfg.seed, 140);
    let mut refl = Tally::new("item 7: ≤ reflexive");
    let mut anti = Tally::new("item 7: ≤ antisymmetric");
    let mut tr = Tally::new("item 7: ≤ transitive");
    for _ in 0..cfg.count {
        let b = random_zelem(&mut rng);
        refl.record(z_leq(&b, &b), || format!("({b})"));
        let c = random_below(&mut rng, &b);
        let a = random_below(&mut rng, &c);
        anti.record(!(z_leq(&c, &b) && z_leq(&b, &c)) || b == c, || format!("({c}) vs ({b})"));
        tr.record(!(z_leq(&a, &c) && z_leq(&c, &b)) || z_leq(&a, &b), || show3(&a, &c, &b));
    }
    out.push(refl.finish());
    out.push(anti.finish());
    out.push(tr.finish());
    out
}

fn random_chain(rng: &mut impl Rng, countable: bool) -> ChainDescriptor {
    let pool = ordinal_pool();
    let m = random_ordinal(rng);
    let s = random_string(rng, 2);
    let take = |rng: &mut dyn rand::RngCore, from: Vec<Ordinal>| -> Vec<Ordinal> {
        let mut xs = from;
        let n = 1 + (rng.next_u32() as usize) % xs.len().min(4);
        let mut out = Vec::new();
        for _ in 0..n {
            let i = (rng.next_u32() as usize) % xs.len();
            out.push(xs.swap_remove(i));
        }
        out.sort();
        out
    };
    if countable {
        let sup = pool[rng.gen_range(1..pool.len())].clone();
        // a trivial chain now and then: the sup itself is sampled
        let below: Vec<Ordinal> = pool.iter().filter(|u| **u < sup || (**u == sup && rng.gen_bool(0.1))).cloned().collect();
        let samples = take(&mut *rng, below);
        ChainDescriptor::countable(m, s, sup, samples)
    } else {
        ChainDescriptor::uncountable(m, s, take(&mut *rng, pool))
    }
}

/// Candidates that bound every sample: a column above the largest index, or
/// a step up from one.
fn sample_bound(rng: &mut impl Rng, c: &ChainDescriptor) -> ZElem {
    let top = c.samples().iter().max().expect("nonempty").clone();
    let mut heads: Vec<Ordinal> = ordinal_pool().into_iter().filter(|u| *u >= top).collect();
    heads.push(top.succ());
    let u = pick(rng, &heads).expect("nonempty");
    let z = ZElem::new(c.m.clone(), c.s.cons(u));
    if rng.gen_bool(0.5) {
        up_any(rng, &z).unwrap_or(z)
    } else {
        z
    }
}

pub(crate) fn chain_sups(cfg: &SuiteConfig) -> Vec<Check> {
    let mut out = Vec::new();
    for (salt, countable, tag) in [(200u64, true, "countable"), (201, false, "uncountable")] {
        let mut rng = rng_for(cfg.seed, salt);
        let mut ub = Tally::new(format!("{tag}: chain_sup bounds every sample"));
        let mut own = Tally::new(format!("{tag}: least_upper_bound_check accepts chain_sup"));
        let mut larger = Tally::new(format!("{tag}: strictly larger candidates accepted"));
        let mut nonbound = Tally::new(format!("{tag}: non-bounds rejected"));
        let mut decided = Tally::new(format!("{tag}: sample bounds classified against z_leq(sup, candidate)"));
        for _ in 0..cfg.count {
            let c = random_chain(&mut rng, countable);
            let show = || serde_json::to_string(&c).expect("serializable");
            let sup = chain_sup(&c).expect("valid by construction");
            ub.record(c.sample_elems().iter().all(|x| z_leq(x, &sup)), show);
            own.record(least_upper_bound_check(&c, &sup) == Ok(true), show);

            // (m, ε) is maximal, so there may be nothing strictly above the sup
            if let Some(big) = (0..64).find_map(|_| up_any(&mut rng, &sup)) {
                larger.record(z_lt(&sup, &big) && least_upper_bound_check(&c, &big) == Ok(true), || {
                    format!("{} candidate ({big})", show())
                });
            }

            let cand = loop {
                let x = if rng.gen_bool(0.5) {
                    random_zelem(&mut rng)
                } else {
                    let i = rng.gen_range(0..c.samples().len());
                    random_below(&mut rng, &c.sample_elems()[i])
                };
                if c.sample_elems().iter().any(|e| !z_leq(e, &x)) {
                    break x;
                }
            };
            nonbound.record(
                matches!(least_upper_bound_check(&c, &cand), Err(Error::NotAnUpperBound(_))),
                || format!("{} candidate ({cand})", show()),
            );

            let cand = sample_bound(&mut rng, &c);
            let expect = z_leq(&sup, &cand);
            let got = least_upper_bound_check(&c, &cand);
            let ok = match (countable, expect) {
                (true, e) => got == Ok(e),
                (false, true) => got == Ok(true),
                (false, false) => matches!(got, Err(Error::NotAnUpperBound(_))),
            };
            decided.record(ok, || format!("{} candidate ({cand}) got {got:?}", show()));
        }
        out.extend([ub, own, larger, nonbound, decided].map(Tally::finish));
    }
    out
}

pub(crate) fn membership(cfg: &SuiteConfig) -> Vec<Check> {
    let mut rng = rng_for(cfg.seed, 300);
    let mut agree = Tally::new("closed_member agrees with the bounded ∃m scan");
    let mut own = Tally::new("L_s ⊆ ↓L_s");
    let mut lower = Tally::new("level ideals are lower sets (comparable pairs)");
    let mut probe = Tally::new("irreducibility probe finds a common point in L_s");
    for i in 0..cfg.count {
        let s = random_string(&mut rng, 2);
        let m = random_ordinal(&mut rng);
        let d = if rng.gen_bool(0.7) {
            ZClosedDescr::Level(s.clone())
        } else {
            ZClosedDescr::Principal(ZElem::new(m.clone(), s.clone()))
        };
        let z = if rng.gen_bool(0.5) {
            let top = ZElem::new(random_ordinal(&mut rng), s.clone());
            random_below(&mut rng, &top)
        } else {
            random_zelem(&mut rng)
        };
        agree.record(closed_member(&d, &z) == closed_member_scan(&d, &z), || format!("{d} ∋ ({z})?"));
        own.record(closed_member(&ZClosedDescr::Level(s.clone()), &ZElem::new(m.clone(), s.clone())), || {
            format!("({m} ; {s})")
        });

        let level = ZClosedDescr::Level(s.clone());
        let (hi, lo) = retry(&mut rng, |r| {
            let top = ZElem::new(random_ordinal(r), s.clone());
            let hi = random_below(r, &top);
            let lo = random_below(r, &hi);
            (closed_member(&level, &hi) && z_leq(&lo, &hi)).then_some((hi, lo))
        });
        lower.record(closed_member(&level, &lo), || format!("{level}: ({lo}) ≤ ({hi})"));

        if i % 10 == 0 {
            let a = ZElem::new(random_ordinal(&mut rng), s.cons(random_ordinal(&mut rng)));
            let b = ZElem::new(random_ordinal(&mut rng), s.cons(random_ordinal(&mut rng)));
            let ok = irreducibility_probe(&a, &b).is_ok_and(|p| p.s == s && z_leq(&a, &p) && z_leq(&b, &p));
            probe.record(ok, || format!("({a}) , ({b})"));
        }
    }
    [agree, own, lower, probe].map(Tally::finish).to_vec()
}

pub(crate) fn roundtrip(cfg: &SuiteConfig) -> Vec<Check> {
    let mut rng = rng_for(cfg.seed, 400);
    let families = (cfg.count / 100).max(100);
    let mut valid = Tally::new("generated valid families satisfy A = box(union A)");
    for _ in 0..families {
        let gens = random_valid_family(&mut rng);
        let res = box_union_roundtrip(&gens);
        valid.record(res.as_ref().is_ok_and(|r| r.holds), || {
            let g: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
            format!("[{}] -> {res:?}", g.join(", "))
        });
    }
    let mut missing = Tally::new("family missing level(s) fails with the schema-sup witness");
    let mut strings = vec!["7".parse::<OrdString>().expect("literal")];
    strings.extend((0..families / 4).map(|_| random_string(&mut rng, 2)));
    for s in strings {
        let gens = [FamilyGen::AllColumns(s.clone())];
        let want = format!("family holds level(m.{s}) for every m but not their sup level({s})");
        let res = box_union_roundtrip(&gens);
        let ok = match &res {
            Err(Error::Precondition(msg)) => *msg == want,
            _ => false,
        };
        missing.record(ok, || format!("{} -> {res:?}", gens[0]));
    }
    vec![valid.finish(), missing.finish()]
}

pub(crate) fn t_order(cfg: &SuiteConfig) -> Vec<Check> {
    let mut rng = rng_for(cfg.seed, 500);
    let lit = |x: &str| x.parse::<OrdString>().expect("literal");
    let mut ex = Tally::new("examples: 2.1 ⊑ 1, 1.1 ⊑ 2.1");
    ex.record(t_leq(&lit("2.1"), &lit("1")), || "2.1 ⊑ 1".into());
    ex.record(t_leq(&lit("1.1"), &lit("2.1")), || "1.1 ⊑ 2.1".into());
    ex.record(upset_linearity_check(&lit("3"), &[lit("3"), lit("7"), OrdString::eps()]), || "↑3".into());
    let mut po = Tally::new("⊑ is a partial order");
    let mut bridge = Tally::new("s ⊑ s' ⟹ (m,s) ≤ (m,s')");
    let mut proj = Tally::new("(m,s) ≤ (m',s') ⟹ s ⊑ s'");
    for _ in 0..cfg.count {
        let s = random_string(&mut rng, 3);
        let t = random_t_above(&mut rng, &s);
        let u = random_t_above(&mut rng, &t);
        let ok = t_leq(&s, &s)
            && t_leq(&s, &t)
            && t_leq(&s, &u)
            && (s == t || !t_leq(&t, &s));
        po.record(ok, || format!("{s} ⊑ {t} ⊑ {u}"));
        let m = random_ordinal(&mut rng);
        bridge.record(z_leq(&ZElem::new(m.clone(), s.clone()), &ZElem::new(m.clone(), t.clone())), || {
            format!("m={m}: {s} ⊑ {t}")
        });
        let b = random_zelem(&mut rng);
        let a = random_below(&mut rng, &b);
        proj.record(!z_leq(&a, &b) || t_leq(&f_project(&a), &f_project(&b)), || format!("({a}) ≤ ({b})"));
    }
    let mut lin = Tally::new("↑s is linear (100 strings × 50 samples)");
    for _ in 0..100 {
        let s = random_string(&mut rng, 3);
        let samples: Vec<OrdString> = (0..50)
            .map(|_| {
                let mut t = s.clone();
                for _ in 0..rng.gen_range(1..=3) {
                    t = random_t_above(&mut rng, &t);
                }
                t
            })
            .collect();
        let ok = samples.iter().all(|t| t_leq(&s, t)) && upset_linearity_check(&s, &samples);
        lin.record(ok, || format!("s={s}"));
    }
    [ex, po, bridge, proj, lin].map(Tally::finish).to_vec()
}
