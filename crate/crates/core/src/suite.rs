//! The acceptance criteria as runnable checks, shared by the integration
//! test and the `verify-paper` command.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{are_isomorphic, direct_product, enumerate_subalgebras, quotient, FiniteAlgebra};
use crate::brouwer::{
    dual_of_hom, hat, heyting_chain, heyting_square_plus_top, k_poset, p6, poset_isomorphism, prime_filters,
    sh_membership_dual, surjective_pmorphism_exists, up_algebra, DominatedPoset,
};
use crate::congruence::{all_congruences, si_status, Congruence, SiStatus};
use crate::demorgan::{
    c4, catalog, classify_psc_variety, d4, dmm_facts_suite, dmm_signature, dunn_reduct, in_m, is_demorgan_monoid,
    reflect, reflect_congruence, s3, two, x_construction, PscClass,
};
use crate::error::Result;
use crate::gen::{random_brouwerian, random_demorgan_monoid, random_dominated_poset};
use crate::limits::Limits;
use crate::morphisms::{embedding_exists, enumerate_homs};
use crate::oracle::{jep_oracle, psc_oracle};
use crate::quasivar::{
    jep_check, minimal_quasivariety_check, psc_check, q_membership, sc_check, si_in_hs, v_membership, Answer,
    GeneratorSet, ScOptions, Witness,
};

/// Outcome of one criterion.
#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    /// One line per check, failures prefixed with `FAIL`.
    pub checks: Vec<String>,
    pub elapsed_ms: u128,
    pub budget_ms: u128,
}

pub const CRITERIA: [(usize, &str, u64); 13] = [
    (1, "catalog validity", 1),
    (2, "minimality", 30),
    (3, "PSC classification", 120),
    (4, "JEP", 300),
    (5, "no single FSI generator", 600),
    (6, "reflection instances", 60),
    (7, "duality round trips", 120),
    (8, "hard-part lemma instances", 300),
    (9, "structural incompleteness witness", 600),
    (10, "separation of V(K3*) and V(K4*)", 300),
    (11, "facts suite", 120),
    (12, "oracle equivalence", 900),
    (13, "SC => PSC => JEP", 900),
];

/// Default seed for the random instances of criteria 7 and 11.
pub const SEED: u64 = 20_240_601;

struct Checks {
    lines: Vec<String>,
    ok: bool,
}

impl Checks {
    fn new() -> Self {
        Checks {
            lines: Vec::new(),
            ok: true,
        }
    }

    fn check(&mut self, holds: bool, what: impl Into<String>) {
        let what = what.into();
        if holds {
            self.lines.push(what);
        } else {
            self.ok = false;
            self.lines.push(format!("FAIL {what}"));
        }
    }

    /// Records an error as a failed check.
    fn run(&mut self, what: &str, f: impl FnOnce(&mut Checks) -> Result<()>) {
        if let Err(e) = f(self) {
            self.check(false, format!("{what}: {e}"));
        }
    }
}

fn gens(v: Vec<FiniteAlgebra>) -> Result<GeneratorSet> {
    GeneratorSet::new(v)
}

fn two_by_s3(limits: &Limits) -> Result<FiniteAlgebra> {
    direct_product(dmm_signature(), &[&two(), &s3()], limits)
}

fn iso(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<bool> {
    Ok(are_isomorphic(a, b)?.is_some())
}

/// The catalog algebras by name, as used by the oracle and hierarchy checks.
pub fn catalog_members() -> Result<Vec<(String, FiniteAlgebra)>> {
    ["two", "s3", "s5", "s7", "c4", "d4", "x-trivial"]
        .iter()
        .map(|n| Ok((n.to_string(), catalog(n)?)))
        .collect()
}

/// Catalog generator sets with one or two members.
pub fn catalog_generator_sets() -> Result<Vec<(String, GeneratorSet)>> {
    let members = catalog_members()?;
    let mut out = Vec::new();
    for (i, (ni, ai)) in members.iter().enumerate() {
        out.push((format!("{{{ni}}}"), GeneratorSet::single(ai.clone())));
        for (nj, aj) in &members[i + 1..] {
            out.push((format!("{{{ni}, {nj}}}"), gens(vec![ai.clone(), aj.clone()])?));
        }
    }
    Ok(out)
}

fn criterion_1(c: &mut Checks, limits: &Limits) -> Result<()> {
    for name in ["two", "s3", "s5", "s7", "c4", "d4", "x-trivial"] {
        let a = catalog(name)?;
        c.check(is_demorgan_monoid(&a)?, format!("{name} is a De Morgan monoid"));
    }
    for name in ["c4", "d4", "two", "x-trivial"] {
        let a = catalog(name)?;
        c.check(si_status(&a, None, limits)? == SiStatus::Simple, format!("{name} is simple"));
    }
    Ok(())
}

fn criterion_2(c: &mut Checks, limits: &Limits) -> Result<()> {
    for (name, a) in [("two", two()), ("s3", s3()), ("c4", c4()), ("d4", d4())] {
        let v = minimal_quasivariety_check(&GeneratorSet::single(a), limits)?;
        c.check(v.is_yes(), format!("{{{name}}} generates a minimal quasivariety: {:?}", v.answer));
    }
    Ok(())
}

fn criterion_3(c: &mut Checks, limits: &Limits) -> Result<()> {
    let cases = [
        ("{two}", vec![two()], PscClass::Boolean),
        ("{d4}", vec![d4()], PscClass::D4),
        ("{s3}", vec![s3()], PscClass::OddSugihara),
        ("{c4}", vec![c4()], PscClass::SubM),
        ("{two, s3}", vec![two(), s3()], PscClass::NotPsc),
        ("{X(2 x s3)}", vec![x_construction(&two_by_s3(limits)?)?], PscClass::NotPsc),
    ];
    for (name, v, expected) in cases {
        let g = gens(v)?;
        let class = classify_psc_variety(&g, limits)?;
        c.check(class == expected, format!("{name} classified {class:?}, expected {expected:?}"));
        let verdict = psc_check(&g, limits)?;
        c.check(
            verdict.answer.is_definite() && verdict.is_yes() == class.is_psc(),
            format!("{name} psc_check {:?} agrees", verdict.answer),
        );
    }
    Ok(())
}

fn criterion_4(c: &mut Checks, limits: &Limits) -> Result<()> {
    let heyting = vec![heyting_chain(5)?, heyting_square_plus_top()];
    let cases = [
        ("{X(2 x s3)}", vec![x_construction(&two_by_s3(limits)?)?], true),
        ("{5-chain, 2x2+1}", heyting, true),
        ("{two, s3}", vec![two(), s3()], false),
        ("{c4, d4}", vec![c4(), d4()], false),
    ];
    for (name, v, expected) in cases {
        let verdict = jep_check(&gens(v)?, limits)?;
        let want = if expected { Answer::Yes } else { Answer::No };
        c.check(verdict.answer == want, format!("{name} JEP {:?}", verdict.answer));
    }
    Ok(())
}

fn criterion_5(c: &mut Checks, limits: &Limits) -> Result<()> {
    let heyting = gens(vec![heyting_chain(5)?, heyting_square_plus_top()])?;
    let x = x_construction(&two_by_s3(limits)?)?;
    let xg = GeneratorSet::single(x.clone());
    for (name, g, embed_all) in [("Heyting pair", &heyting, false), ("X(2 x s3)", &xg, true)] {
        // finite FSI algebras are SI
        let pieces: Vec<FiniteAlgebra> = si_in_hs(g, limits)?.into_iter().map(|s| s.algebra).collect();
        c.check(!pieces.is_empty(), format!("{name}: {} SI members in HS", pieces.len()));
        for (i, p) in pieces.iter().enumerate() {
            let mut missing = None;
            for (j, q) in pieces.iter().enumerate() {
                if i != j && crate::quasivar::hs_membership(q, p)?.is_none() {
                    missing = Some(j);
                    break;
                }
            }
            c.check(
                missing.is_some(),
                format!("{name}: member {i} (size {}) misses member {:?} in its HS", p.size(), missing),
            );
        }
        if embed_all {
            for (i, p) in pieces.iter().enumerate() {
                if !p.is_trivial() {
                    c.check(
                        embedding_exists(p, &x)?.is_some(),
                        format!("{name}: member {i} embeds into the generator"),
                    );
                }
            }
        }
    }
    Ok(())
}

fn criterion_6(c: &mut Checks, limits: &Limits) -> Result<()> {
    let trivial = FiniteAlgebra::trivial(dmm_signature().clone());
    for (name, a) in [("trivial", trivial), ("two", two()), ("s3", s3()), ("2 x s3", two_by_s3(limits)?)] {
        let d = dunn_reduct(&a)?;
        let r = reflect(&d)?;
        c.check(in_m(&r)?, format!("reflection of {name} lies in M"));
        let n = d.size();
        let subs_a = enumerate_subalgebras(&d, false, limits)?;
        let subs_r = enumerate_subalgebras(&r, false, limits)?;
        let mut matched = subs_a.len() == subs_r.len();
        for s in &subs_a {
            let mut u = s.inclusion.clone();
            u.extend(s.inclusion.iter().map(|x| x + n));
            u.extend([2 * n, 2 * n + 1]);
            u.sort_unstable();
            match subs_r.iter().find(|t| t.inclusion == u) {
                Some(t) => matched &= iso(&t.algebra, &reflect(&s.algebra)?)?,
                None => matched = false,
            }
        }
        c.check(matched, format!("{name}: subalgebras correspond ({} each)", subs_a.len()));
        let con_a = all_congruences(&d, limits)?;
        let con_r = all_congruences(&r, limits)?;
        let mut images: Vec<Congruence> = con_a
            .congruences()
            .iter()
            .map(|t| reflect_congruence(&d, t))
            .collect::<Result<_>>()?;
        let mut matched = true;
        for (t, rt) in con_a.congruences().iter().zip(&images) {
            let (qa, _) = quotient(&d, t)?;
            let (qr, _) = quotient(&r, rt)?;
            matched &= iso(&qr, &reflect(&qa)?)?;
        }
        images.push(Congruence::total(r.size()));
        matched &= images.len() == con_r.len() && images.iter().all(|t| con_r.contains(t));
        c.check(matched, format!("{name}: congruences correspond ({} and total)", con_a.len()));
    }
    let r = reflect(&dunn_reduct(&FiniteAlgebra::trivial(dmm_signature().clone()))?)?;
    c.check(iso(&r, &c4())?, "reflection of the trivial algebra is C4");
    Ok(())
}

fn criterion_7(c: &mut Checks, limits: &Limits, seed: u64) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = 0;
    for _ in 0..200 {
        let x = random_dominated_poset(&mut rng, 7);
        let back = prime_filters(&up_algebra(&x, limits)?.algebra)?.poset;
        if poset_isomorphism(&back, &x).is_none() {
            bad += 1;
        }
    }
    c.check(bad == 0, format!("200 posets: X and (X*)_* isomorphic ({bad} failures)"));
    let mut bad = 0;
    for _ in 0..200 {
        let a = random_brouwerian(&mut rng, 12);
        let back = up_algebra(&prime_filters(&a)?.poset, limits)?.algebra;
        if !iso(&back, &a)? {
            bad += 1;
        }
    }
    c.check(bad == 0, format!("200 algebras: A and (A_*)* isomorphic ({bad} failures)"));
    let (mut bad, mut surjective, mut injective) = (0, 0, 0);
    for _ in 0..200 {
        let a = random_brouwerian(&mut rng, 8);
        let b = random_brouwerian(&mut rng, 8);
        let homs = enumerate_homs(&a, &b, Some(64))?;
        let h = &homs[rng.gen_range(0..homs.len())];
        let g = dual_of_hom(&a, &b, h)?;
        let mut img = h.clone();
        img.sort_unstable();
        img.dedup();
        let (s, i) = (img.len() == b.size(), img.len() == a.size());
        surjective += s as usize;
        injective += i as usize;
        if s != g.is_injective() || i != g.is_surjective() {
            bad += 1;
        }
    }
    c.check(
        bad == 0,
        format!("200 homomorphisms ({surjective} onto, {injective} one-one): h onto iff h_* one-one and conversely ({bad} failures)"),
    );
    Ok(())
}

fn lemma_posets() -> Result<Vec<(&'static str, DominatedPoset)>> {
    Ok(vec![("P6", p6()), ("K3", k_poset(3)?), ("K4", k_poset(4)?)])
}

fn criterion_8(c: &mut Checks, limits: &Limits) -> Result<()> {
    let ps = lemma_posets()?;
    for (zn, z) in &ps {
        let zh = hat(z)?;
        for (yn, y) in &ps {
            if *yn != "P6" && yn != zn {
                let w = sh_membership_dual(y, &zh, limits)?;
                c.check(w.is_none(), format!("{yn}* not in SH(hat {zn}*)"));
            }
        }
        for (wn, w) in &ps {
            c.check(
                surjective_pmorphism_exists(&zh, w).is_none(),
                format!("{wn}* not in IS(hat {zn}*)"),
            );
        }
    }
    Ok(())
}

fn criterion_9(c: &mut Checks, limits: &Limits) -> Result<()> {
    let a = up_algebra(&hat(&p6())?, limits)?.algebra;
    let b = up_algebra(&hat(&k_poset(3)?)?, limits)?.algebra;
    let p = up_algebra(&p6(), limits)?.algebra;
    let g = gens(vec![a.clone(), b.clone()])?;
    let v = sc_check(&g, ScOptions { bound: 2, assume_cd: true }, limits)?;
    let witness_is_p6 = match &v.witness {
        Some(Witness::ScRefutation { algebra, .. }) => iso(&algebra.to_algebra()?, &p)?,
        _ => false,
    };
    c.check(v.is_no(), format!("sc_check answers {:?}", v.answer));
    c.check(witness_is_p6, "the refuting algebra is P6*");
    let d = direct_product(a.signature(), &[&a, &b], limits)?;
    c.check(!q_membership(&p, &GeneratorSet::single(d))?, "P6* not in Q(product)");
    c.check(v_membership(&p, &GeneratorSet::single(a), limits)?, "P6* in V(hat P6*)");
    Ok(())
}

fn criterion_10(c: &mut Checks, limits: &Limits) -> Result<()> {
    let k3 = up_algebra(&k_poset(3)?, limits)?.algebra;
    let k4 = up_algebra(&k_poset(4)?, limits)?.algebra;
    c.check(!v_membership(&k3, &GeneratorSet::single(k4.clone()), limits)?, "K3* not in V(K4*)");
    c.check(!v_membership(&k4, &GeneratorSet::single(k3), limits)?, "K4* not in V(K3*)");
    Ok(())
}

fn criterion_11(c: &mut Checks, limits: &Limits, seed: u64) -> Result<()> {
    for (name, a) in catalog_members()? {
        let failed: Vec<&str> = dmm_facts_suite(&a, limits)?.iter().filter(|f| !f.holds).map(|f| f.name).collect();
        c.check(failed.is_empty(), format!("{name}: all facts hold {failed:?}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut sizes = [0usize; 7];
    for i in 0..100 {
        let a = random_demorgan_monoid(&mut rng, 6);
        sizes[a.size()] += 1;
        for f in dmm_facts_suite(&a, limits)? {
            if !f.holds {
                failures.push(format!("#{i} {}", f.name));
            }
        }
    }
    c.check(
        failures.is_empty(),
        format!("100 random De Morgan monoids (sizes 1..6: {:?}) {failures:?}", &sizes[1..]),
    );
    Ok(())
}

fn criterion_12(c: &mut Checks, limits: &Limits) -> Result<()> {
    for (name, g) in catalog_generator_sets()? {
        let jep = jep_check(&g, limits)?;
        let oracle = jep_oracle(&g)?;
        c.check(
            jep.answer.is_definite() && jep.is_yes() == oracle,
            format!("{name}: jep {:?}, oracle {oracle}", jep.answer),
        );
        let psc = psc_check(&g, limits)?;
        let oracle = psc_oracle(&g, 16)?;
        c.check(
            psc.answer.is_definite() && psc.is_yes() == oracle,
            format!("{name}: psc {:?}, oracle {oracle}", psc.answer),
        );
    }
    Ok(())
}

fn criterion_13(c: &mut Checks, limits: &Limits) -> Result<()> {
    let mut sets = catalog_generator_sets()?;
    sets.push(("{X(2 x s3)}".into(), GeneratorSet::single(x_construction(&two_by_s3(limits)?)?)));
    sets.push(("{5-chain, 2x2+1}".into(), gens(vec![heyting_chain(5)?, heyting_square_plus_top()])?));
    sets.push((
        "{Up(hat P6), Up(hat K3)}".into(),
        gens(vec![
            up_algebra(&hat(&p6())?, limits)?.algebra,
            up_algebra(&hat(&k_poset(3)?)?, limits)?.algebra,
        ])?,
    ));
    for (name, g) in sets {
        c.run(&name, |c| {
            let sc = sc_check(&g, ScOptions { bound: 2, assume_cd: true }, limits)?.answer;
            let psc = psc_check(&g, limits)?.answer;
            let jep = jep_check(&g, limits)?.answer;
            let respects = !(sc == Answer::Yes && psc == Answer::No) && !(psc == Answer::Yes && jep == Answer::No);
            c.check(respects, format!("{name}: sc {sc:?}, psc {psc:?}, jep {jep:?}"));
            Ok(())
        });
    }
    Ok(())
}

/// Runs criterion `id` (1 to 13). `seed` drives the random instances.
pub fn run_criterion(id: usize, limits: &Limits, seed: u64) -> CriterionReport {
    let &(_, title, budget) = CRITERIA.iter().find(|c| c.0 == id).expect("criteria are numbered 1 to 13");
    let start = Instant::now();
    let mut c = Checks::new();
    c.run(title, |c| match id {
        1 => criterion_1(c, limits),
        2 => criterion_2(c, limits),
        3 => criterion_3(c, limits),
        4 => criterion_4(c, limits),
        5 => criterion_5(c, limits),
        6 => criterion_6(c, limits),
        7 => criterion_7(c, limits, seed),
        8 => criterion_8(c, limits),
        9 => criterion_9(c, limits),
        10 => criterion_10(c, limits),
        11 => criterion_11(c, limits, seed),
        12 => criterion_12(c, limits),
        _ => criterion_13(c, limits),
    });
    let elapsed = start.elapsed();
    let budget = Duration::from_secs(budget);
    if elapsed > budget {
        c.check(false, format!("took {elapsed:?}, budget {budget:?}"));
    }
    CriterionReport {
        id,
        title,
        passed: c.ok,
        checks: c.lines,
        elapsed_ms: elapsed.as_millis(),
        budget_ms: budget.as_millis(),
    }
}
