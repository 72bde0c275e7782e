//! Acceptance gate: one `PASS`/`FAIL` line per criterion. Exits non-zero if
//! any criterion fails.

use lindep::batch;
use lindep::driver::{self, Program};
use lindep::kernel::{conv, Ctx, Env};
use lindep::oracle::brute_force_reachable;
use lindep::random::{self, SupplyShape};
use lindep::solver::{solve, symmetrize};
use lindep::supply::{self, check_production, endpoints, pow_production, tensor_pow_distr};
use lindep::syntax::*;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::Rng;
use std::path::PathBuf;
use std::time::Instant;

const SOUNDNESS_CASES: usize = 1000;
const COMPLETENESS_CASES: usize = 500;
const ORACLE_DEPTH: usize = 12;
const SYMMETRY_CASES: usize = 500;
const LAW_RANGE: u64 = 4;
const LAW_BASES: usize = 20;
const SUBSTITUTION_CASES: u32 = 300;
const COHERENCE_CASES: usize = 200;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);
type Constructor = (&'static str, Vec<usize>, fn(Vec<Term>) -> Term);
type Injection = (fn(Term) -> Production, fn(Term) -> Production);

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name)
}

fn load(name: &str) -> driver::Report {
    let src = std::fs::read_to_string(corpus(name)).expect("corpus file");
    driver::check_source(&src).expect("corpus file parses")
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut argv = vec!["lindep"];
    argv.extend_from_slice(args);
    let code = lindep::cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn corpus_positive() -> Verdict {
    let mut names: Vec<String> = [
        "idJ",
        "var-rule",
        "switchJ",
        "foldMaybe-ish",
        "pair",
        "switch",
        "curry",
        "uncurry",
        "copyj",
        "copy",
        "copytwice",
        "compose",
        "ifthenelse",
        "foldMaybe",
        "map",
        "copy-bang",
        "drop",
        "copy-fn",
        "copytwice-bang",
        "mapMaybe",
    ]
    .map(String::from)
    .to_vec();
    for m in 0..=3 {
        for n in 0..=3 {
            names.push(format!("compose'-{m}-{n}"));
        }
    }
    let path = corpus("paper.ld");
    let (code, _, err) = cli(&["check", "--no-color", path.to_str().unwrap()]);
    if code != 0 {
        return Err(format!("exit {code}: {}", err.trim()));
    }
    let report = load("paper.ld");
    let missing: Vec<&String> = names
        .iter()
        .filter(|n| report.outcome(n).is_none_or(|o| o.error.is_some()))
        .collect();
    if !missing.is_empty() {
        return Err(format!("not checked: {missing:?}"));
    }
    Ok(format!("{} definitions, exit 0", names.len()))
}

fn corpus_negative() -> Verdict {
    let report = load("impossible.ld");
    for name in ["impossible", "twice", "twice-once"] {
        let o = report.outcome(name).ok_or(format!("`{name}` missing"))?;
        let d = o.error.as_ref().ok_or(format!("`{name}` was accepted"))?;
        let r = d
            .residue
            .as_ref()
            .ok_or(format!("`{name}`: no residue in {}", d.message))?;
        if !r.left.is_empty() || r.right != ["ι x"] {
            return Err(format!("`{name}`: residue {r:?}"));
        }
        if name == "impossible" && r.inequation() != "ι x ⊗ ◇ ≠ ◇" {
            return Err(format!("rendered as {}", r.inequation()));
        }
    }
    let path = corpus("impossible.ld");
    let (code, _, _) = cli(&["check", "--no-color", path.to_str().unwrap()]);
    if code != 1 {
        return Err(format!("CLI exit {code}, expected 1"));
    }
    Ok("3 definitions rejected with residue {ι x} on the right".into())
}

fn pairs(seed: u64, n: usize, shape: SupplyShape) -> Vec<(Term, Term)> {
    let mut r = random::rng(seed);
    (0..n)
        .map(|_| random::supply_pair(&mut r, &shape))
        .collect()
}

fn solver_soundness() -> Verdict {
    let (env, ctx) = random::context(3);
    let shape = SupplyShape {
        vars: 3,
        max_atoms: 6,
        opaque: true,
    };
    let problems = pairs(0x50_0d, SOUNDNESS_CASES, shape);
    let results = batch::solve_batch(&env, &ctx, &problems);
    let mut solved = 0;
    for ((d0, d1), res) in problems.iter().zip(&results) {
        if let Ok(p) = res {
            solved += 1;
            check_production(&env, &ctx, p, d0, d1).map_err(|e| {
                format!(
                    "witness for {} ▷ {} rejected: {}",
                    ctx.show(d0),
                    ctx.show(d1),
                    e.message
                )
            })?;
        }
    }
    Ok(format!(
        "{solved}/{SOUNDNESS_CASES} solved, every witness re-checks"
    ))
}

fn solver_completeness() -> Verdict {
    let (env, ctx) = random::context(3);
    let shape = SupplyShape {
        vars: 3,
        max_atoms: 5,
        opaque: false,
    };
    let problems = pairs(0xc0_11, COMPLETENESS_CASES, shape);
    let verdicts = batch::map(&problems, |(d0, d1)| {
        (
            brute_force_reachable(d0, d1, ORACLE_DEPTH),
            solve(&env, &ctx, d0, d1).is_ok(),
        )
    });
    let mut reachable = 0;
    for ((d0, d1), (oracle, solver)) in problems.iter().zip(&verdicts) {
        if *oracle {
            reachable += 1;
            if !solver {
                return Err(format!(
                    "oracle reaches {} ▷ {}, solver fails",
                    ctx.show(d0),
                    ctx.show(d1)
                ));
            }
        }
    }
    Ok(format!(
        "{reachable}/{COMPLETENESS_CASES} oracle-reachable, all solved (depth {ORACLE_DEPTH})"
    ))
}

fn symmetry() -> Verdict {
    let (env, ctx) = random::context(3);
    let problems = pairs(0x5e_ed, SYMMETRY_CASES, SupplyShape::default());
    let mut solved = 0;
    for (d0, d1) in &problems {
        let there = solve(&env, &ctx, d0, d1);
        let back = solve(&env, &ctx, d1, d0);
        if there.is_ok() != back.is_ok() {
            return Err(format!(
                "asymmetric on {} and {}",
                ctx.show(d0),
                ctx.show(d1)
            ));
        }
        if let Ok(p) = there {
            solved += 1;
            let q = symmetrize(&ctx, &p).map_err(|e| e.message)?;
            check_production(&env, &ctx, &q, d1, d0)
                .map_err(|e| format!("inverse of {} rejected: {}", ctx.show(&p), e.message))?;
        }
    }
    Ok(format!(
        "{solved}/{SYMMETRY_CASES} solvable both ways, inverses re-check"
    ))
}

fn quantitative_laws() -> Verdict {
    let (env, ctx) = random::context(3);
    let shape = SupplyShape {
        vars: 3,
        max_atoms: 3,
        opaque: false,
    };
    let mut r = random::rng(0x9a_75);
    let mut checked = 0;
    for _ in 0..LAW_BASES {
        let d0 = random::supply(&mut r, &shape);
        let d0b = random::rewrite_walk(&mut r, &d0, 4);
        let d1 = random::supply(&mut r, &shape);
        let delta = solve(&env, &ctx, &d0, &d0b).map_err(|e| e.to_string())?;
        for k in 0..=LAW_RANGE {
            let p = pow_production(&env, &delta, &numeral(k)).map_err(|e| e.message)?;
            let (s, t) = (pow(d0.clone(), numeral(k)), pow(d0b.clone(), numeral(k)));
            check_production(&env, &ctx, &p, &s, &t)
                .map_err(|e| format!("δ^{k}: {}", e.message))?;
            checked += 1;
        }
        for m in 0..=LAW_RANGE {
            for n in 0..=LAW_RANGE {
                let (mm, nn) = (numeral(m), numeral(n));
                let s = tensor(pow(d0.clone(), mm.clone()), pow(d1.clone(), numeral(m * n)));
                let t = pow(tensor(d0.clone(), pow(d1.clone(), nn.clone())), mm.clone());
                let p = tensor_pow_distr(&env, &mm, &nn, &d0, &d1).map_err(|e| e.message)?;
                check_production(&env, &ctx, &p, &s, &t)
                    .map_err(|e| format!("distr {m} {n}: {}", e.message))?;
                let q = solve(&env, &ctx, &s, &t)
                    .map_err(|e| format!("solver on distr {m} {n}: {e}"))?;
                check_production(&env, &ctx, &q, &s, &t).map_err(|e| e.message)?;
                checked += 2;
            }
        }
    }
    Ok(format!(
        "{checked} instances over {LAW_BASES} bases, m,n,k ≤ {LAW_RANGE}"
    ))
}

fn erasure() -> Verdict {
    let report = load("paper.ld");
    let program: &Program = &report.program;
    let k = konst;
    let list = |xs: Vec<Term>| {
        xs.into_iter()
            .rev()
            .fold(init(inl(Term::Tt)), |tail, x| init(inr(pair(x, tail))))
    };
    let mapped: Vec<Term> = ["a", "b", "c"].iter().map(|x| app(k("f"), k(x))).collect();
    let aa = pair(k("a"), k("a"));
    let cases: Vec<(&str, Vec<&str>, Term)> = vec![
        ("idJ", vec!["4"], numeral(4)),
        ("switch", vec!["(a , b)"], pair(k("b"), k("a"))),
        ("foldMaybe", vec!["just a", "f", "n"], app(k("f"), k("a"))),
        ("foldMaybe", vec!["nothing", "f", "n"], k("n")),
        (
            "map",
            vec!["A", "B", "cons a (cons b (cons c nil))", "f"],
            list(mapped),
        ),
        ("copytwice", vec!["a"], pair(aa.clone(), aa)),
    ];
    for (name, args, want) in &cases {
        let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        let got =
            driver::run(program, name, &args).map_err(|e| format!("{name}: {}", e.message))?;
        if &got != want {
            return Err(format!("{name} {args:?} gave {got:?}"));
        }
    }
    Ok(format!("{} closed runs match exactly", cases.len()))
}

/// Constructors with one supply or term per field and the number of binders
/// each field sits under.
fn constructors() -> Vec<Constructor> {
    use Production as P;
    fn p(x: P) -> Term {
        prod(x)
    }
    vec![
        ("ι", vec![0], |v| iota(v[0].clone())),
        ("⊗", vec![0, 0], |v| tensor(v[0].clone(), v[1].clone())),
        ("◇", vec![], |_| Term::Empty),
        ("^", vec![0, 0], |v| pow(v[0].clone(), v[1].clone())),
        ("!", vec![0], |v| bang(v[0].clone())),
        ("[,]", vec![0, 0], |v| hom(v[0].clone(), v[1].clone())),
        ("Λ", vec![0, 1], |v| sup_abs(v[0].clone(), v[1].clone())),
        ("id", vec![0], |v| p(P::Id(v[0].clone()))),
        ("∘", vec![0, 0], |v| {
            p(P::Comp(v[0].clone(), v[1].clone()))
        }),
        ("⊗f", vec![0, 0], |v| {
            p(P::TensorF(v[0].clone(), v[1].clone()))
        }),
        ("assoc", vec![0, 0, 0], |v| {
            p(P::Assoc(v[0].clone(), v[1].clone(), v[2].clone()))
        }),
        ("swap", vec![0, 0], |v| {
            p(P::Swap(v[0].clone(), v[1].clone()))
        }),
        ("unitr", vec![0], |v| p(P::Unitr(v[0].clone()))),
        ("unitr'", vec![0], |v| p(P::UnitrInv(v[0].clone()))),
        ("opltt", vec![], |_| p(P::OplTt)),
        ("laxtt", vec![], |_| p(P::LaxTt)),
        ("opl", vec![0, 0], |v| {
            p(P::OplPair(v[0].clone(), v[1].clone()))
        }),
        ("lax", vec![0, 0], |v| {
            p(P::LaxPair(v[0].clone(), v[1].clone()))
        }),
        ("secinl", vec![0], |v| p(P::SecInl(v[0].clone()))),
        ("retinl", vec![0], |v| p(P::RetInl(v[0].clone()))),
        ("secinr", vec![0], |v| p(P::SecInr(v[0].clone()))),
        ("retinr", vec![0], |v| p(P::RetInr(v[0].clone()))),
        ("secinit", vec![0], |v| p(P::SecInit(v[0].clone()))),
        ("retinit", vec![0], |v| p(P::RetInit(v[0].clone()))),
        ("curry", vec![0], |v| p(P::Curry(v[0].clone()))),
        ("uncurry", vec![0], |v| p(P::Uncurry(v[0].clone()))),
        ("bind", vec![0, 1], |v| {
            p(P::Bind(v[0].clone(), v[1].clone()))
        }),
        ("free", vec![0, 0], |v| {
            p(P::Free(v[0].clone(), v[1].clone()))
        }),
        ("!f", vec![0], |v| p(P::BangF(v[0].clone()))),
        ("dupl", vec![0], |v| p(P::Dupl(v[0].clone()))),
        ("erase", vec![0], |v| p(P::Erase(v[0].clone()))),
        ("use", vec![0], |v| p(P::Use(v[0].clone()))),
        ("mult", vec![0], |v| p(P::Mult(v[0].clone()))),
        ("coh◇", vec![], |_| p(P::CohEmpty)),
        ("coh⊗", vec![0, 0], |v| {
            p(P::CohTensor(v[0].clone(), v[1].clone()))
        }),
    ]
}

fn substitution_laws() -> Verdict {
    let table = constructors();
    let shape = SupplyShape {
        vars: 3,
        max_atoms: 4,
        opaque: true,
    };
    let mut runner = TestRunner::new(Config {
        cases: SUBSTITUTION_CASES,
        failure_persistence: None,
        ..Config::default()
    });
    let outcome = runner.run(
        &(any::<u64>(), 0usize..3, 0usize..2),
        |(seed, target, repl)| {
            let mut r = random::rng(seed);
            let s = var(repl);
            let fields: Vec<Term> = (0..3).map(|_| random::supply(&mut r, &shape)).collect();
            for (name, binders, build) in &table {
                let args: Vec<Term> = binders
                    .iter()
                    .zip(&fields)
                    .map(|(_, f)| f.clone())
                    .collect();
                let whole = substitute(&build(args.clone()), target, &s);
                let parts: Vec<Term> = binders
                    .iter()
                    .zip(&args)
                    .map(|(b, a)| substitute(a, target + b, &weaken(&s, 0, *b)))
                    .collect();
                prop_assert_eq!(whole, build(parts), "{} does not commute", name);
            }
            let (env, ctx) = random::context(3);
            let (d0, d1) = random::supply_pair(&mut r, &shape);
            if let Ok(p) = solve(&env, &ctx, &d0, &d1) {
                let (_, smaller) = random::context(2);
                let sub = |t: &Term| substitute(t, target, &s);
                prop_assert!(
                    check_production(&env, &smaller, &sub(&p), &sub(&d0), &sub(&d1)).is_ok(),
                    "witness stops checking after substitution"
                );
            }
            Ok(())
        },
    );
    match outcome {
        Ok(()) => Ok(format!(
            "{SUBSTITUTION_CASES} cases over {} constructors, witnesses stable",
            table.len()
        )),
        Err(e) => Err(e.to_string()),
    }
}

fn round_trip(env: &Env, ctx: &Ctx, p: Term, label: &str) -> Result<(), String> {
    let (s, t) = endpoints(env, ctx, &p).map_err(|e| format!("{label}: {}", e.message))?;
    if !conv(env, &s, &t) {
        return Err(format!("{label}: {} ≠ {}", ctx.show(&s), ctx.show(&t)));
    }
    check_production(env, ctx, &p, &s, &t).map_err(|e| format!("{label}: {}", e.message))
}

fn coherence() -> Verdict {
    use Production as P;
    let (env, ctx) = random::context(3);
    let shape = SupplyShape {
        opaque: true,
        ..SupplyShape::default()
    };
    let mut r = random::rng(0xc0_4e);
    for _ in 0..COHERENCE_CASES {
        let a = random::supply(&mut r, &shape);
        let b = random::supply(&mut r, &shape);
        let mut budget = 3;
        let h = random::host_term(&mut r, 3, &mut budget, 2);
        round_trip(
            &env,
            &ctx,
            supply::compose(supply::unitr_inv(a.clone()), supply::unitr(a.clone())),
            "unitr'∘unitr",
        )?;
        round_trip(
            &env,
            &ctx,
            supply::compose(
                supply::swap(b.clone(), a.clone()),
                supply::swap(a.clone(), b.clone()),
            ),
            "swap∘swap",
        )?;
        let inj: [Injection; 3] = [
            (P::SecInl, P::RetInl),
            (P::SecInr, P::RetInr),
            (P::SecInit, P::RetInit),
        ];
        let (sec, ret) = inj[r.gen_range(0..3)];
        round_trip(
            &env,
            &ctx,
            supply::compose(prod(sec(h.clone())), prod(ret(h.clone()))),
            "sec∘ret",
        )?;
        round_trip(
            &env,
            &ctx,
            supply::compose(prod(ret(h.clone())), prod(sec(h))),
            "ret∘sec",
        )?;
    }
    Ok(format!(
        "{COHERENCE_CASES} random supplies, 4 composites each"
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("corpus-positive", corpus_positive),
        ("corpus-negative", corpus_negative),
        ("solver-soundness", solver_soundness),
        ("solver-completeness", solver_completeness),
        ("symmetry", symmetry),
        ("quantitative-laws", quantitative_laws),
        ("erasure", erasure),
        ("substitution-laws", substitution_laws),
        ("coherence", coherence),
    ];
    let only: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let (mut ran, mut failed) = (0, 0);
    for (i, (name, f)) in criteria.iter().enumerate() {
        if !only.is_empty() && !only.iter().any(|o| name.contains(o.as_str())) {
            continue;
        }
        ran += 1;
        let start = Instant::now();
        let verdict = f();
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}; {secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why}; {secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {ran} criteria pass", ran - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
