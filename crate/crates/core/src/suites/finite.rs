use rand::Rng;

use super::{rng_for, Check, SuiteConfig, Tally};
use crate::error::Result;
use crate::faithfulness::{
    c_compact_elements, c_compact_elements_oracle, is_dominated, is_omega_star_compact, is_weakly_dominated,
    FAMILY_ORACLE_MAX,
};
use crate::poset::{all_posets_of_size_at_most, is_iso_map, poset_iso, random_permutation, random_poset, FinitePoset};
use crate::scott::{gamma, gamma_iso_of, irr_of, is_sober, is_well_filtered_brute, kf_sets, KF_MAX_ELEMENTS, WELL_FILTERED_BRUTE_MAX};
use crate::subset::Subset;

fn describe(p: &FinitePoset) -> String {
    serde_json::to_string(&p.to_doc()).expect("serializable")
}

fn sorted(mut v: Vec<Subset>) -> Vec<Subset> {
    v.sort();
    v
}

/// One pair: gamma_iso present ⟺ poset_iso present, and any returned map is
/// re-verified; for small lattices the verdict is also matched against a
/// direct isomorphism search on ΓP and ΓQ as posets.
fn compare_pair(p: &FinitePoset, q: &FinitePoset, agree: &mut Tally, direct: &mut Tally) -> Result<()> {
    let gp = gamma(p)?;
    let gq = gamma(q)?;
    let g = gamma_iso_of(&gp, &gq);
    let lp = gp.as_poset()?;
    let lq = gq.as_poset()?;
    let g_ok = g.as_ref().is_none_or(|m| is_iso_map(&lp, &lq, m));
    let pi = poset_iso(p, q);
    agree.record(g_ok && g.is_some() == pi.is_some(), || {
        format!("P={} Q={} gamma_iso={} poset_iso={}", describe(p), describe(q), g.is_some(), pi.is_some())
    });
    if gp.len() == gq.len() && gp.len() <= 16 {
        let d = poset_iso(&lp, &lq);
        direct.record(d.is_some() == g.is_some(), || format!("P={} Q={}", describe(p), describe(q)));
    }
    Ok(())
}

pub(crate) fn gamma_faithful(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let classes = all_posets_of_size_at_most(cfg.max)?;
    let mut agree = Tally::new(format!("exhaustive |P|,|Q| ≤ {}: gamma_iso ⟺ poset_iso", cfg.max));
    let mut direct = Tally::new("gamma_iso agrees with a direct lattice isomorphism search");
    for p in &classes {
        for q in &classes {
            compare_pair(p, q, &mut agree, &mut direct)?;
        }
    }
    let mut rnd = Tally::new("seeded random pairs with 6 elements: gamma_iso ⟺ poset_iso");
    let mut rng = rng_for(cfg.seed, 600);
    let pairs = (cfg.count / 50).max(200);
    let mut scratch = Tally::new("");
    for _ in 0..pairs {
        let p = random_poset(6, rng.gen_range(0.1..0.6), rng.gen())?;
        let q = if rng.gen_bool(0.5) {
            let perm = random_permutation(6, &mut rng);
            p.permuted(&perm)
        } else {
            random_poset(6, rng.gen_range(0.1..0.6), rng.gen())?
        };
        compare_pair(&p, &q, &mut rnd, &mut scratch)?;
    }
    Ok(vec![agree.finish(), direct.finish(), rnd.finish()])
}

pub(crate) fn universals(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let classes = all_posets_of_size_at_most(cfg.max)?;
    let mut sober = Tally::new("is_sober");
    let mut wf = Tally::new(format!("is_well_filtered (brute force, |P| ≤ {WELL_FILTERED_BRUTE_MAX})"));
    let mut dom = Tally::new("is_dominated");
    let mut weak = Tally::new("is_weakly_dominated");
    let mut omega = Tally::new("is_omega_star_compact");
    let mut irr_cc = Tally::new("IRR(P) = C(ΓP) = {↓x}");
    let mut oracle = Tally::new(format!("C(ΓP) matches the ≺* family oracle (|ΓP| ≤ {FAMILY_ORACLE_MAX})"));
    for p in &classes {
        let show = || describe(p);
        sober.record(is_sober(p)?, show);
        if p.len() <= WELL_FILTERED_BRUTE_MAX {
            wf.record(is_well_filtered_brute(p)?, show);
        }
        dom.record(is_dominated(p)?, show);
        weak.record(is_weakly_dominated(p)?, show);
        omega.record(is_omega_star_compact(p)?, show);
        let g = gamma(p)?;
        let principal = sorted((0..p.len()).map(|x| p.down(x)).collect());
        let irr = sorted(irr_of(&g)?);
        let cc = sorted(c_compact_elements(p)?);
        irr_cc.record(irr == principal && cc == principal, show);
        if g.len() <= FAMILY_ORACLE_MAX {
            oracle.record(sorted(c_compact_elements_oracle(p)?) == principal, show);
        }
    }
    Ok([sober, wf, dom, weak, omega, irr_cc, oracle].map(Tally::finish).to_vec())
}

pub(crate) fn kf_discipline(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let max = cfg.max.min(KF_MAX_ELEMENTS);
    let classes = all_posets_of_size_at_most(max)?;
    let mut sub = Tally::new(format!("KF(P) ⊆ IRR(P), |P| ≤ {max}"));
    let mut iff = Tally::new("well-filtered ⟺ every KF-set is a point closure");
    for p in &classes {
        let g = gamma(p)?;
        let irr = irr_of(&g)?;
        let kf = kf_sets(p)?;
        sub.record(kf.iter().all(|k| irr.contains(k)), || describe(p));
        let points = kf.iter().all(|k| (0..p.len()).any(|x| p.down(x) == *k));
        iff.record(is_well_filtered_brute(p)? == points, || describe(p));
    }
    Ok(vec![sub.finish(), iff.finish()])
}
