//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails or overruns its time limit.
//!
//! Every comparison is exact. Values that the checks depend on are computed
//! here by an independent route: the brute-force Gram oracle, the subset
//! oracle, or a second search backend.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{all_symmetric, random_family, random_oriented, random_symmetric, random_tournament};
use invlab_core::construct::{blow_up, c3, dijoin, k_join, qn, qn_family, transitive};
use invlab_core::digraph::{enumerate_tournaments, family_to_assignment, Digraph, InversionFamily};
use invlab_core::experiments::{self, Experiment, ExperimentParams, Verdict};
use invlab_core::f2::{gram_factor, gram_of, min_gram_dim, realize_oracle, DEFAULT_ORACLE_BUDGET};
use invlab_core::solver::{
    inv_exact, inv_order_backend, inv_subset_oracle, inv_value, rank_bound, Backend, SearchOptions,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn opts() -> SearchOptions {
    SearchOptions::default()
}

fn inv_of(d: &Digraph) -> Result<usize, String> {
    inv_value(d, &opts()).map_err(|e| format!("{d:?}: {e}"))
}

fn all_tournaments(max_n: usize) -> Vec<Digraph> {
    (1..=max_n).flat_map(|n| enumerate_tournaments(n).unwrap()).collect()
}

fn gram_odd_orders() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0001);
    for i in 0..500 {
        let n = 2 * rng.gen_range(0..8) + 1;
        let m = random_symmetric(&mut rng, n);
        let f = gram_factor(&m).ok_or_else(|| format!("case {i}: no factorization of {m:?}"))?;
        ensure(f.k == n && gram_of(&f.columns).unwrap() == m, || format!("case {i}: wrong factor for {m:?}"))?;
    }
    Ok("500 matrices, n in {1,3,..,15}".into())
}

fn gram_even_orders() -> Result<String, String> {
    let mut total = 0;
    for n in [2, 4] {
        for m in all_symmetric(n) {
            total += 1;
            let rule = m.has_nonzero_diagonal() || m.rank() < n;
            let got = gram_factor(&m);
            ensure(got.is_some() == rule, || format!("{m:?}: factorable={} rule={rule}", got.is_some()))?;
            if let Some(f) = got {
                ensure(gram_of(&f.columns).unwrap() == m, || format!("{m:?}: wrong factor"))?;
            }
        }
    }
    ensure(total == 8 + 1024, || format!("enumerated {total} matrices"))?;
    Ok(format!("{total} matrices"))
}

fn min_dim_rule_vs_oracle() -> Result<String, String> {
    let mut total = 0;
    for n in 0..=4 {
        for m in all_symmetric(n) {
            total += 1;
            let mut oracle = None;
            for k in 0..=5 {
                let found = realize_oracle(&m, k, DEFAULT_ORACLE_BUDGET).map_err(|e| e.to_string())?;
                if let Some(vs) = found {
                    ensure(gram_of(&vs).unwrap() == m, || format!("{m:?}: oracle witness wrong"))?;
                    oracle = Some(k);
                    break;
                }
            }
            let rule = min_gram_dim(&m);
            ensure(oracle == Some(rule), || format!("{m:?}: rule {rule}, oracle {oracle:?}"))?;
            ensure(gram_factor(&m).is_some() == (rule <= n), || format!("{m:?}: factorable disagrees"))?;
        }
    }
    Ok(format!("{total} matrices, k <= 5"))
}

fn three_backends() -> Result<String, String> {
    let all: Vec<Digraph> = enumerate_tournaments(5).unwrap().collect();
    let order = opts().with_backend(Backend::Order);
    let mut resolved = 0;
    for d in &all {
        let a = inv_exact(d, &opts()).and_then(|o| o.into_result()).map_err(|e| e.to_string())?;
        let b = inv_order_backend(d, &order).and_then(|o| o.into_result()).map_err(|e| e.to_string())?;
        ensure(a.value == b.value, || format!("{d:?}: assign {} order {}", a.value, b.value))?;
        match inv_subset_oracle(d, 2, 1 << 20).map_err(|e| e.to_string())? {
            Some(c) => {
                resolved += 1;
                ensure(c == a.value, || format!("{d:?}: subset {c} assign {}", a.value))?;
            }
            None => ensure(a.value > 2, || format!("{d:?}: subset found nothing, assign {}", a.value))?,
        }
    }
    ensure(all.len() == 1024, || format!("{} tournaments", all.len()))?;
    Ok(format!("{} tournaments, subset oracle resolved {resolved}", all.len()))
}

fn sweep(exp: Experiment, n_max: usize) -> Result<experiments::ExperimentReport, String> {
    let params = ExperimentParams {
        n_max: Some(n_max),
        labeled: true,
        opts: opts(),
    };
    experiments::run(exp, &params).map_err(|e| e.to_string())
}

fn c3_dijoin_even() -> Result<String, String> {
    let r = sweep(Experiment::Thm13, 6)?;
    let even: Vec<_> = r.instances.iter().filter(|i| i.get("inv_d") == Some("2")).collect();
    for i in &even {
        ensure(i.verdict == Verdict::Pass && i.get("inv_c3_d") == Some("3"), || format!("{i:?}"))?;
    }
    ensure(r.all_pass(), || r.findings.join("; "))?;
    Ok(format!("{} labeled tournaments with inv 2", even.len()))
}

fn direction() -> Result<String, String> {
    let mut count = 0;
    for d in all_tournaments(5) {
        let a = inv_of(&dijoin(&c3(), &d).unwrap())?;
        let b = inv_of(&dijoin(&d, &c3()).unwrap())?;
        ensure(a == b, || format!("{d:?}: {a} vs {b}"))?;
        count += 1;
    }
    Ok(format!("{count} labeled tournaments"))
}

fn blow_up_of_c3() -> Result<String, String> {
    let mut hosts = 0;
    for t in enumerate_tournaments(3).unwrap() {
        if inv_of(&t)? != 1 {
            continue;
        }
        hosts += 1;
        let g = blow_up(&t, &[c3(), c3(), c3()]).unwrap();
        let v = inv_of(&g)?;
        ensure(v == 4, || format!("{t:?}: inv {v}"))?;
    }
    ensure(hosts == 2, || format!("{hosts} hosts"))?;
    Ok("both labeled C3 hosts give 4".into())
}

fn abnormal() -> Result<String, String> {
    let mut rows = Vec::new();
    for (name, d) in [("K1", transitive(1)), ("TT3", transitive(3)), ("C3", c3())] {
        let a = inv_of(&k_join(&[c3(), c3(), d.clone()]).unwrap())?;
        let b = inv_of(&dijoin(&c3(), &d).unwrap())?;
        ensure(a == b + 1, || format!("{name}: {a} != {b} + 1"))?;
        rows.push(format!("{name}:{a}={b}+1"));
    }
    ensure(rows[2] == "C3:3=2+1", || rows[2].clone())?;
    Ok(rows.join(" "))
}

fn qn_table() -> Result<String, String> {
    let start = Instant::now();
    for n in 0..=15 {
        let f = qn_family(n);
        ensure(qn(n).apply_family(&f).unwrap().is_acyclic(), || format!("family fails for n={n}"))?;
    }
    let family_time = start.elapsed();
    ensure(family_time < Duration::from_secs(1), || format!("family checks took {family_time:?}"))?;
    let mut values = Vec::new();
    for n in 1..=7 {
        let v = inv_of(&qn(n))?;
        let bound = (n - 1) / 2;
        ensure(v <= bound, || format!("inv(Q{n}) = {v} > {bound}"))?;
        values.push(format!("Q{n}={v}"));
    }
    Ok(values.join(" "))
}

fn rank_laws() -> Result<String, String> {
    let order = opts().with_backend(Backend::Order);
    let mut witnesses = 0;
    for d in all_tournaments(5) {
        for o in [opts(), order.clone()] {
            let r = invlab_core::solver::inv(&d, &o)
                .and_then(|x| x.into_result())
                .map_err(|e| e.to_string())?;
            let a = family_to_assignment(&r.witness, d.order()).unwrap();
            let verdict = rank_bound(r.value, &a);
            ensure(verdict.holds, || format!("{d:?} ({}): {verdict:?}", o.backend))?;
            if r.value % 2 == 0 {
                ensure(verdict.rank == r.value, || format!("{d:?}: even inv with rank {}", verdict.rank))?;
            }
            witnesses += 1;
        }
    }
    Ok(format!("{witnesses} witnesses, 0 violations"))
}

fn properties() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0011);
    for i in 0..1000 {
        let n = rng.gen_range(0..=16);
        let d = random_oriented(&mut rng, n);
        let k = rng.gen_range(0..=8);
        let f = random_family(&mut rng, n, k);
        for s in &f.sets {
            ensure(d.invert(*s).invert(*s) == d, || format!("case {i}: invert twice"))?;
        }
        let mut rev = f.sets.clone();
        rev.reverse();
        let applied = d.apply_family(&f).unwrap();
        ensure(d.apply_family(&InversionFamily::new(rev)).unwrap() == applied, || format!("case {i}: order"))?;
        let a = family_to_assignment(&f, n).unwrap();
        ensure(d.apply_assignment(&a).unwrap() == applied, || format!("case {i}: assignment path"))?;
    }
    for i in 0..500 {
        let n = rng.gen_range(1..=7);
        let d = random_tournament(&mut rng, n);
        let keep: Vec<usize> = (0..n).filter(|_| rng.gen::<bool>()).collect();
        let (sub, whole) = (inv_of(&d.induced(&keep))?, inv_of(&d)?);
        ensure(sub <= whole, || format!("case {i}: {d:?} on {keep:?}: {sub} > {whole}"))?;
    }
    let mut reversed = 0;
    for d in all_tournaments(5) {
        ensure(inv_of(&d)? == inv_of(&d.reverse())?, || format!("{d:?}: reverse"))?;
        reversed += 1;
    }
    Ok(format!("1000 family cases, 500 induced pairs, {reversed} reversals"))
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, u64, Check); 11] = [
        (1, "Gram factorization, random odd orders", 1, gram_odd_orders),
        (2, "Even-order factorability rule, exhaustive n = 2, 4", 1, gram_even_orders),
        (3, "Minimum Gram dimension rule vs brute-force oracle, n <= 4", 10, min_dim_rule_vs_oracle),
        (4, "assign = order = subset on all 5-vertex tournaments", 60, three_backends),
        (5, "inv(C3 => D) = 3 for every tournament with n <= 6 and inv 2", 1800, c3_dijoin_even),
        (6, "inv(C3 => D) = inv(D => C3), tournaments n <= 5", 600, direction),
        (7, "inv(T[C3, C3, C3]) = 4 for 3-vertex T with inv 1", 600, blow_up_of_c3),
        (8, "inv([C3, C3, D]) = inv(C3 => D) + 1 for D in {K1, TT3, C3}", 600, abnormal),
        (9, "Qn family decycles for n <= 15; exact inv(Qn) <= floor((n-1)/2), n <= 7", 600, qn_table),
        (10, "Rank of minimal witnesses, tournaments n <= 5", 300, rank_laws),
        (11, "Property suite", 300, properties),
    ];
    let mut failed = 0;
    for (id, title, limit_s, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let limit = Duration::from_secs(limit_s);
        let (status, detail) = match outcome {
            Ok(_) if elapsed >= limit => ("FAIL", format!("over time limit {limit_s}s")),
            Ok(detail) => ("PASS", detail),
            Err(why) => ("FAIL", why),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("{status} [{id:>2}] {title} ({:.3}s / {limit_s}s): {detail}", elapsed.as_secs_f64());
    }
    println!("acceptance: {} passed, {failed} failed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
