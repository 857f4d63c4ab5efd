mod input;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use quasivar::algebra::{QuasiEquation, Term};
use quasivar::brouwer::{hat, prime_filters, up_algebra};
use quasivar::congruence::{all_congruences, relative_congruences};
use quasivar::demorgan::{
    brouwer_violation, catalog, catalog_names, classify_psc_variety, demorgan_violation, dmm_signature, dunn_reduct,
    dunn_violation, jep_classification_conditions, reflect, x_construction,
};
use quasivar::format::{algebra_to_json, parse_qe, poset_to_json, AlgebraJson, PosetJson};
use quasivar::morphisms::{embedding_exists, enumerate_homs, separates};
use quasivar::quasivar::{
    admissible_upto, free_algebra, jep_check, lattice_reduct, minimal_quasivariety_check, psc_check, sc_check,
    unifiable, v_membership, valid, GeneratorSet, Replay, ReplayContext, ScOptions, Verdict, Witness,
};
use quasivar::suite::{run_criterion, CRITERIA, SEED};
use quasivar::{FiniteAlgebra, Limits};

use input::Input;
use report::Report;

#[derive(Parser)]
#[command(name = "quasivar", version, about = "Decision procedures for finitely generated quasivarieties")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Largest carrier a derived algebra (product, free algebra) may have.
    #[arg(long, global = true)]
    guard_size: Option<usize>,
    /// Largest free rank searched by `sc`, `admissible` and `minimal`.
    #[arg(long, global = true, default_value_t = 2)]
    bound: usize,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for the randomized suites.
    #[arg(long, global = true, default_value_t = SEED)]
    seed: u64,
    /// Worker threads (default: one per core). Output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Demorgan,
    Dunn,
    Brouwerian,
}

/// Algebras are JSON files or catalog names; posets are JSON files or
/// `p6`, `k<n>`, `chain<n>`; quasi-equations are inline text or `@file`.
#[derive(Subcommand)]
enum Cmd {
    /// Check the axioms of a De Morgan monoid, Dunn monoid or Brouwerian algebra.
    Axioms {
        algebra: String,
        #[arg(long, value_enum, default_value = "demorgan")]
        kind: Kind,
    },
    /// Homomorphisms (or embeddings) between two algebras.
    Homs {
        source: String,
        target: String,
        #[arg(long)]
        embeddings: bool,
        /// Most maps listed.
        #[arg(long, default_value_t = 16)]
        limit: usize,
    },
    /// Congruence lattice; relative to the generated quasivariety with `--gen`.
    Congruences {
        algebra: String,
        /// Generating algebra: a JSON file or a catalog name (repeatable)
        #[arg(long = "gen")]
        gens: Vec<String>,
    },
    /// Free algebra of the generated class.
    Free {
        /// Generating algebra: a JSON file or a catalog name (repeatable)
        #[arg(long = "gen", required = true)]
        gens: Vec<String>,
        #[arg(long, default_value_t = 1)]
        rank: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validity of a quasi-equation in the generated quasivariety.
    Valid {
        /// Generating algebra: a JSON file or a catalog name (repeatable)
        #[arg(long = "gen", required = true)]
        gens: Vec<String>,
        /// Quasi-equation, e.g. `x = ~x => x = e`; `@file` reads it from a file
        qe: String,
    },
    /// Unifiability of equations `s = t` (one per argument).
    Unify {
        /// Generating algebra: a JSON file or a catalog name (repeatable)
        #[arg(long = "gen", required = true)]
        gens: Vec<String>,
        #[arg(required = true)]
        equations: Vec<String>,
    },
    /// Joint embedding property.
    Jep {
        /// Generating algebra: a JSON file or a catalog name (repeatable)
        #[arg(long = "gen", required = true)]
        gens: Vec<String>,
        /// Also report the De Morgan monoid JEP conditions.
        #[arg(long)]
        conditions: bool,
    },
    /// Passive structural completeness.
    Psc {
        /// Generating algebra: a JSON file or a catalog name (repeatable)
        #[arg(long = "gen", required = true)]
        gens: Vec<String>,
        /// Also name the PSC variety of De Morgan monoids.
        #[arg(long)]
        classify: bool,
    },
    /// Minimality of the generated quasivariety.
    Minimal {
        /// Generating algebra: a JSON file or a catalog name (repeatable)
        #[arg(long = "gen", required = true)]
        gens: Vec<String>,
    },
    /// Structural completeness.
    Sc {
        /// Generating algebra: a JSON file or a catalog name (repeatable)
        #[arg(long = "gen", required = true)]
        gens: Vec<String>,
        /// Assert congruence distributivity when no lattice reduct shows it.
        #[arg(long)]
        assume_cd: bool,
    },
    /// Admissibility of a quasi-equation, checked in free algebras up to `--bound`.
    Admissible {
        /// Generating algebra: a JSON file or a catalog name (repeatable)
        #[arg(long = "gen", required = true)]
        gens: Vec<String>,
        /// Quasi-equation, e.g. `x = ~x => x = e`; `@file` reads it from a file
        qe: String,
    },
    /// Membership in the generated quasivariety.
    MemberQ {
        algebra: String,
        /// Generating algebra: a JSON file or a catalog name (repeatable)
        #[arg(long = "gen", required = true)]
        gens: Vec<String>,
    },
    /// Membership in the generated variety.
    MemberV {
        algebra: String,
        /// Generating algebra: a JSON file or a catalog name (repeatable)
        #[arg(long = "gen", required = true)]
        gens: Vec<String>,
    },
    /// Reflection of a Dunn monoid (or of the Dunn reduct of a De Morgan monoid).
    Reflect {
        algebra: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The reflection with a self-negating middle element added.
    Xcon {
        algebra: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Algebra of up-sets of a dominated poset.
    Up {
        poset: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Prime-filter poset of a Brouwerian or Heyting algebra.
    Dual {
        algebra: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The poset with a point added below each incomparable pair.
    Hat {
        poset: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the catalog, or print one of its algebras.
    Catalog {
        name: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the acceptance suite and print a pass/fail matrix.
    VerifyPaper {
        /// Run only these criteria.
        #[arg(long)]
        only: Vec<usize>,
    },
}

type Res<T> = Result<T, String>;

fn err(e: quasivar::Error) -> String {
    e.to_string()
}

struct Ctx {
    limits: Limits,
    bound: usize,
    seed: u64,
}

fn load_gens(specs: &[String], inputs: &mut Vec<Input>) -> Res<GeneratorSet> {
    let algebras = specs
        .iter()
        .map(|s| input::algebra(s, inputs))
        .collect::<Res<Vec<_>>>()?;
    GeneratorSet::new(algebras).map_err(err)
}

fn load_qe(arg: &str, gens: &GeneratorSet, inputs: &mut Vec<Input>) -> Res<QuasiEquation> {
    let text = input::text(arg, inputs)?;
    parse_qe(&text, Some(gens.signature())).map_err(err)
}

/// Writes `text` to `out`, or puts it in the report when there is no file.
fn emit(r: &mut Report, text: String, value: Value, out: &Option<PathBuf>) -> Res<()> {
    match out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display()))?;
            r.line(format!("written to {}", path.display()));
        }
        None => r.line(text),
    }
    r.result = value;
    Ok(())
}

/// Replays the witness; a failed replay is an error, never a report.
fn decide(r: &mut Report, verdict: Verdict, ctx: ReplayContext<'_>) -> Res<()> {
    if let Some(w) = &verdict.witness {
        let replay = w.replay(&ctx).map_err(err)?;
        if let Replay::Failed(m) = &replay {
            return Err(format!("witness replay failed: {m}"));
        }
        r.replay = Some(replay);
    }
    r.verdict = Some(verdict);
    Ok(())
}

fn replay_ctx<'a>(gens: &'a GeneratorSet, limits: &'a Limits) -> ReplayContext<'a> {
    ReplayContext {
        gens,
        qe: None,
        equations: None,
        maps: None,
        limits,
    }
}

fn bool_verdict(holds: bool, why_not: impl FnOnce() -> Witness) -> Verdict {
    if holds {
        Verdict::yes(None)
    } else {
        Verdict::no(why_not())
    }
}

fn run(cmd: Cmd, ctx: &Ctx) -> Res<Report> {
    let limits = &ctx.limits;
    let name = match &cmd {
        Cmd::Axioms { .. } => "axioms",
        Cmd::Homs { .. } => "homs",
        Cmd::Congruences { .. } => "congruences",
        Cmd::Free { .. } => "free",
        Cmd::Valid { .. } => "valid",
        Cmd::Unify { .. } => "unify",
        Cmd::Jep { .. } => "jep",
        Cmd::Psc { .. } => "psc",
        Cmd::Minimal { .. } => "minimal",
        Cmd::Sc { .. } => "sc",
        Cmd::Admissible { .. } => "admissible",
        Cmd::MemberQ { .. } => "member-q",
        Cmd::MemberV { .. } => "member-v",
        Cmd::Reflect { .. } => "reflect",
        Cmd::Xcon { .. } => "xcon",
        Cmd::Up { .. } => "up",
        Cmd::Dual { .. } => "dual",
        Cmd::Hat { .. } => "hat",
        Cmd::Catalog { .. } => "catalog",
        Cmd::VerifyPaper { .. } => "verify-paper",
    };
    let mut r = Report::new(name);
    let mut loaded = Vec::new();
    let inputs = &mut loaded;
    match cmd {
        Cmd::Axioms { algebra, kind } => {
            let a = input::algebra(&algebra, inputs)?;
            let (kind, failure) = match kind {
                Kind::Demorgan => ("De Morgan monoid", demorgan_violation(&a)),
                Kind::Dunn => ("Dunn monoid", dunn_violation(&a)),
                Kind::Brouwerian => ("Brouwerian algebra", brouwer_violation(&a)),
            };
            let failure = failure.map_err(err)?;
            r.result = json!({ "kind": kind, "failure": failure });
            let verdict = match &failure {
                None => Verdict::yes(None),
                Some(f) => {
                    let labels: Vec<String> = f.elements.iter().map(|&x| a.label(x)).collect();
                    r.line(format!("{} fails at {}", f.axiom, labels.join(", ")));
                    Verdict::no(Witness::Exhausted {
                        searched: format!("{} fails at {:?}", f.axiom, f.elements),
                    })
                }
            };
            r.verdict = Some(verdict);
        }
        Cmd::Homs {
            source,
            target,
            embeddings,
            limit,
        } => {
            let a = input::algebra(&source, inputs)?;
            let b = input::algebra(&target, inputs)?;
            let maps: Vec<Vec<usize>> = if embeddings {
                embedding_exists(&a, &b).map_err(err)?.into_iter().collect()
            } else {
                enumerate_homs(&a, &b, Some(limit)).map_err(err)?
            };
            for m in &maps {
                let pairs: Vec<String> = m.iter().enumerate().map(|(x, &y)| format!("{}->{}", a.label(x), b.label(y))).collect();
                r.line(pairs.join(" "));
            }
            r.result = json!({ "maps": maps });
            let verdict = match maps.first() {
                Some(m) if embeddings => Verdict::yes(Some(Witness::Embedding { map: m.clone() })),
                Some(m) => Verdict::yes(Some(Witness::Homomorphism { map: m.clone() })),
                None => Verdict::no(Witness::Exhausted {
                    searched: "every map compatible with the operations".into(),
                }),
            };
            let gens = GeneratorSet::single(a.clone());
            decide(&mut r, verdict, ReplayContext { maps: Some((&a, &b)), ..replay_ctx(&gens, limits) })?;
        }
        Cmd::Congruences { algebra, gens } => {
            let a = input::algebra(&algebra, inputs)?;
            let lattice = if gens.is_empty() {
                all_congruences(&a, limits)
            } else {
                let g = load_gens(&gens, inputs)?;
                relative_congruences(&a, g.algebras())
            }
            .map_err(err)?;
            let blocks: Vec<String> = lattice.congruences().iter().map(|c| c.block_string()).collect();
            let status = lattice.si_status();
            r.line(format!("{} congruences, {status:?}", blocks.len()));
            r.lines.extend(blocks.iter().cloned());
            r.result = json!({ "congruences": blocks, "status": status });
        }
        Cmd::Free { gens, rank, out } => {
            let g = load_gens(&gens, inputs)?;
            let f = free_algebra(&g, rank, limits).map_err(err)?;
            let terms: Vec<String> = f.terms.iter().map(|t| t.to_string()).collect();
            r.line(format!("F({rank}) has {} elements", f.algebra.size()));
            let value = json!({ "rank": rank, "generators": f.generators, "terms": terms, "algebra": AlgebraJson::from(&f.algebra) });
            match out {
                Some(_) => emit(&mut r, algebra_to_json(&f.algebra), value, &out)?,
                None => {
                    r.lines.extend(terms.iter().enumerate().map(|(i, t)| format!("{i}: {t}")));
                    r.result = value;
                }
            }
        }
        Cmd::Valid { gens, qe } => {
            let g = load_gens(&gens, inputs)?;
            let q = load_qe(&qe, &g, inputs)?;
            let verdict = valid(&q, &g, limits).map_err(err)?;
            decide(&mut r, verdict, ReplayContext { qe: Some(&q), ..replay_ctx(&g, limits) })?;
        }
        Cmd::Unify { gens, equations } => {
            let g = load_gens(&gens, inputs)?;
            let mut eqs: Vec<(Term, Term)> = Vec::new();
            for e in &equations {
                let q = load_qe(e, &g, inputs)?;
                if !q.premises.is_empty() {
                    return Err(format!("`{e}` is not an equation"));
                }
                eqs.push(q.conclusion);
            }
            let verdict = unifiable(&eqs, &g, limits).map_err(err)?;
            decide(&mut r, verdict, ReplayContext { equations: Some(&eqs), ..replay_ctx(&g, limits) })?;
        }
        Cmd::Jep { gens, conditions } => {
            let g = load_gens(&gens, inputs)?;
            if conditions {
                let c = jep_classification_conditions(&g, limits).map_err(err)?;
                r.line(format!(
                    "psc variety: {}, simple over D4: {}, quasivariety over C4: {}",
                    c.psc_variety,
                    c.simple_over_d4.is_some(),
                    c.quasivariety_over_c4.is_some()
                ));
                r.result = json!({
                    "psc": c.psc,
                    "psc_variety": c.psc_variety,
                    "simple_over_d4": c.simple_over_d4.as_ref().map(|e| AlgebraJson::from(&e.simple)),
                    "quasivariety_over_c4": c.quasivariety_over_c4.as_ref().map(|e| AlgebraJson::from(&e.simple)),
                });
            }
            let verdict = jep_check(&g, limits).map_err(err)?;
            decide(&mut r, verdict, replay_ctx(&g, limits))?;
        }
        Cmd::Psc { gens, classify } => {
            let g = load_gens(&gens, inputs)?;
            if classify {
                let class = classify_psc_variety(&g, limits).map_err(err)?;
                r.line(format!("class: {class:?}"));
                r.result = json!({ "class": class });
            }
            let verdict = psc_check(&g, limits).map_err(err)?;
            decide(&mut r, verdict, replay_ctx(&g, limits))?;
        }
        Cmd::Minimal { gens } => {
            let g = load_gens(&gens, inputs)?;
            let verdict = minimal_quasivariety_check(&g, limits).map_err(err)?;
            decide(&mut r, verdict, replay_ctx(&g, limits))?;
        }
        Cmd::Sc { gens, assume_cd } => {
            let g = load_gens(&gens, inputs)?;
            let opts = ScOptions {
                bound: ctx.bound,
                assume_cd: assume_cd || lattice_reduct(&g).is_some(),
            };
            let verdict = sc_check(&g, opts, limits).map_err(err)?;
            decide(&mut r, verdict, replay_ctx(&g, limits))?;
        }
        Cmd::Admissible { gens, qe } => {
            let g = load_gens(&gens, inputs)?;
            let q = load_qe(&qe, &g, inputs)?;
            let verdict = admissible_upto(&q, &g, ctx.bound, limits).map_err(err)?;
            decide(&mut r, verdict, ReplayContext { qe: Some(&q), ..replay_ctx(&g, limits) })?;
        }
        Cmd::MemberQ { algebra, gens } => {
            let a = input::algebra(&algebra, inputs)?;
            let g = load_gens(&gens, inputs)?;
            let sep = separates(&a, g.algebras()).map_err(err)?;
            let verdict = bool_verdict(sep.separated(), || {
                let (x, y) = sep.failing_pair.expect("not separated");
                Witness::Exhausted {
                    searched: format!(
                        "homomorphisms into the generators; none separates {} and {}",
                        a.label(x),
                        a.label(y)
                    ),
                }
            });
            r.result = json!({ "failing_pair": sep.failing_pair });
            decide(&mut r, verdict, replay_ctx(&g, limits))?;
        }
        Cmd::MemberV { algebra, gens } => {
            let a = input::algebra(&algebra, inputs)?;
            let g = load_gens(&gens, inputs)?;
            let holds = v_membership(&a, &g, limits).map_err(err)?;
            let verdict = bool_verdict(holds, || Witness::Exhausted {
                searched: "subdirectly irreducible quotients against HS of the generators, or the free algebra".into(),
            });
            r.verdict = Some(verdict);
        }
        Cmd::Reflect { algebra, out } => {
            let a = input::algebra(&algebra, inputs)?;
            let a = if a.signature() == dmm_signature() { dunn_reduct(&a).map_err(err)? } else { a };
            let b = reflect(&a).map_err(err)?;
            emit(&mut r, algebra_to_json(&b), json!(AlgebraJson::from(&b)), &out)?;
        }
        Cmd::Xcon { algebra, out } => {
            let a = input::algebra(&algebra, inputs)?;
            let b = x_construction(&a).map_err(err)?;
            emit(&mut r, algebra_to_json(&b), json!(AlgebraJson::from(&b)), &out)?;
        }
        Cmd::Up { poset, out } => {
            let x = input::dominated(&poset, inputs)?;
            let u = up_algebra(&x, limits).map_err(err)?;
            emit(&mut r, algebra_to_json(&u.algebra), json!(AlgebraJson::from(&u.algebra)), &out)?;
        }
        Cmd::Dual { algebra, out } => {
            let a = input::algebra(&algebra, inputs)?;
            let pf = prime_filters(&a).map_err(err)?;
            let p = pf.poset.poset();
            emit(&mut r, poset_to_json(p), json!(PosetJson::from(p)), &out)?;
        }
        Cmd::Hat { poset, out } => {
            let x = input::dominated(&poset, inputs)?;
            let h = hat(&x).map_err(err)?;
            emit(&mut r, poset_to_json(h.poset()), json!(PosetJson::from(h.poset())), &out)?;
        }
        Cmd::Catalog { name, out } => match name {
            None => {
                r.lines.extend(catalog_names().iter().map(|s| s.to_string()));
                r.result = json!({ "names": catalog_names() });
            }
            Some(n) => {
                let a: FiniteAlgebra = catalog(&n).map_err(err)?;
                emit(&mut r, algebra_to_json(&a), json!(AlgebraJson::from(&a)), &out)?;
            }
        },
        Cmd::VerifyPaper { only } => {
            let ids: Vec<usize> = CRITERIA
                .iter()
                .map(|c| c.0)
                .filter(|id| only.is_empty() || only.contains(id))
                .collect();
            r.line(format!("seed {}", ctx.seed));
            let reports: Vec<_> = ids.par_iter().map(|&id| run_criterion(id, limits, ctx.seed)).collect();
            for c in &reports {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                r.line(format!("[{mark}] {:>2} {:<36} {:>8} ms", c.id, c.title, c.elapsed_ms));
                if !c.passed {
                    r.lines.extend(c.checks.iter().map(|l| format!("       {l}")));
                }
            }
            let passed = reports.iter().filter(|c| c.passed).count();
            r.line(format!("{passed}/{} criteria passed", reports.len()));
            r.exit = Some(if passed == reports.len() { 0 } else { 1 });
            r.result = json!({ "seed": ctx.seed, "criteria": reports });
        }
    }
    r.inputs = loaded;
    Ok(r)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // exit codes 1 and 2 are verdicts
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    }
    let mut limits = Limits::default();
    if let Some(n) = cli.guard_size {
        limits = limits.with_carrier(n);
    }
    let ctx = Ctx {
        limits,
        bound: cli.bound,
        seed: cli.seed,
    };
    let start = Instant::now();
    match run(cli.cmd, &ctx) {
        Ok(mut r) => {
            r.elapsed_ms = start.elapsed().as_millis();
            // a closed pipe is not worth a panic
            let _ = std::io::stdout().lock().write_all(r.render(cli.json).as_bytes());
            ExitCode::from(r.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
