//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use gbott::model::{validate, DimensionVector, ReducedMatrix};
use gbott::oracle::{oracle_has_spin, sw_oracle};
use gbott::swclosed::{self, Condition, Reading};
use gbott::verify::{self, Check, DiscrepancyReport, RunConfig};
use gbott::wdigraph;

type Outcome = Result<String, String>;

fn omega(d: &[usize]) -> DimensionVector {
    DimensionVector::new(d.to_vec()).unwrap()
}

fn m(dims: &[usize], rows: &[&str]) -> ReducedMatrix {
    ReducedMatrix::from_strs(dims, rows).unwrap()
}

fn rp(n: usize) -> ReducedMatrix {
    ReducedMatrix::identity(omega(&[n]))
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn clean(r: &DiscrepancyReport) -> Result<(), String> {
    ensure(
        r.is_clean(),
        format!("{} discrepancies over {:?} ({})\n{r}", r.discrepancies.len(), r.omega, r.check),
    )
}

fn section3() -> ReducedMatrix {
    m(
        &[2, 3, 5],
        &["100", "100", "011", "111", "110", "101", "101", "101", "001", "001"],
    )
}

fn c1() -> Outcome {
    let a = section3();
    ensure(validate(&a).valid, "matrix does not validate")?;
    let spin = swclosed::has_spin(&a).map_err(|e| e.to_string())?.spin;
    let suff = swclosed::spin_sufficient(&a).map_err(|e| e.to_string())?;
    let orc = oracle_has_spin(&a).map_err(|e| e.to_string())?;
    ensure(spin && suff && orc, format!("has_spin={spin} sufficient={suff} oracle={orc}"))?;
    Ok("valid, has_spin = spin_sufficient = oracle = true".into())
}

fn spin_zero(d: &[usize]) -> Result<u64, String> {
    let r = verify::crosscheck_spin(&omega(d)).map_err(|e| e.to_string())?;
    clean(&r)?;
    ensure(r.count("spin") == 0, format!("{} spin covers over {d:?}", r.count("spin")))?;
    Ok(r.valid)
}

fn c2() -> Outcome {
    let v = spin_zero(&[1, 2, 2])?;
    Ok(format!("ω=(1,2,2): 1024 candidates, {v} valid, 0 spin by all deciders, 0 discrepancies"))
}

fn c3() -> Outcome {
    let a = m(
        &[2, 3, 3, 3],
        &["1101", "1001", "0100", "0100", "0100", "0010", "0010", "0010", "0111", "0101", "0111"],
    );
    let g = wdigraph::from_matrix(&a).map_err(|e| e.to_string())?;
    let edges: Vec<(usize, usize, String)> =
        g.edges().map(|(i, j, w)| (i + 1, j + 1, w.to_string())).collect();
    let want = vec![
        (1, 2, "10".to_string()),
        (1, 4, "11".to_string()),
        (4, 2, "111".to_string()),
        (4, 3, "101".to_string()),
    ];
    ensure(edges == want, format!("edges {edges:?}"))?;
    let d3 = wdigraph::weighted_in_degree(&g, 2).map_err(|e| e.to_string())?;
    ensure(d3 == 2, format!("deg⁻(v3) = {d3}"))?;
    let r = wdigraph::has_spin_digraph(&g);
    ensure(!r.spin, "digraph reported spin")?;
    ensure(r.failed_condition() == Some(Condition::I), format!("failed {:?}", r.failed))?;
    let at_v3 = r
        .violations
        .iter()
        .any(|v| v.condition == Condition::I && v.indices == [2]);
    ensure(at_v3, "condition i does not fail at v3")?;
    let listed: Vec<String> = r.violations.iter().map(|v| v.to_string()).collect();
    Ok(format!("4 edges as printed, deg⁻(v3)=2, not spin: {}", listed.join("; ")))
}

/// `I × Δ^{4t+2}`: column 1 is `e_1`, column 2 is all ones.
fn interval_construction(t: usize) -> ReducedMatrix {
    let n = 4 * t + 2;
    let mut rows = vec!["11"];
    rows.extend(std::iter::repeat("01").take(n));
    m(&[1, n], &rows)
}

fn c4() -> Outcome {
    let mut notes = Vec::new();
    for t in 0..2 {
        let a = interval_construction(t);
        let s = swclosed::has_spin(&a).map_err(|e| e.to_string())?.spin;
        let o = oracle_has_spin(&a).map_err(|e| e.to_string())?;
        ensure(s && o, format!("t={t} ω={}: has_spin={s} oracle={o}", a.omega()))?;
        notes.push(format!("t={t} ω={} spin", a.omega()));
    }
    let v = spin_zero(&[1, 4])?;
    notes.push(format!("ω=(1,4): {v} valid, 0 spin"));
    Ok(notes.join(", "))
}

fn c5() -> Outcome {
    let fams: [&[usize]; 8] = [&[1, 1], &[2], &[3], &[1, 2], &[2, 2], &[1, 1, 1], &[2, 3], &[1, 3]];
    let mut total = 0;
    for d in fams {
        let r = verify::crosscheck_spin(&omega(d)).map_err(|e| e.to_string())?;
        let spin_flags = r
            .discrepancies
            .iter()
            .filter(|x| x.flags.iter().any(|f| f == "spin"))
            .count();
        ensure(spin_flags == 0, format!("{spin_flags} spin disagreements over {d:?}"))?;
        clean(&r)?;
        total += r.valid;
    }
    Ok(format!("8 families, {total} valid matrices, 0 discrepancies"))
}

fn c6_runs() -> [(DimensionVector, Check, RunConfig); 3] {
    let full = RunConfig::default();
    let sampled = RunConfig {
        sample: Some(1000),
        ..RunConfig::default()
    };
    [
        (omega(&[3, 3]), Check::W(3), full),
        (omega(&[4, 4]), Check::W(4), full),
        (omega(&[3, 3, 3]), Check::W(3), sampled),
    ]
}

fn c6() -> Outcome {
    let mut notes = Vec::new();
    for (o, check, cfg) in c6_runs() {
        let r = verify::run(&o, check, &cfg, None).map_err(|e| e.to_string())?;
        clean(&r)?;
        notes.push(format!("{} {}: {} valid", o, check.name(), r.valid));
    }
    Ok(format!("{}; 0 discrepancies", notes.join(", ")))
}

fn c7() -> Outcome {
    for n in 2..=9 {
        let a = rp(n);
        let want = n % 4 == 3;
        let s = swclosed::has_spin(&a).map_err(|e| e.to_string())?.spin;
        let o = oracle_has_spin(&a).map_err(|e| e.to_string())?;
        ensure(s == want && o == want, format!("RP^{n}: closed={s} oracle={o}"))?;
    }
    let nonzero = |n: usize, d: usize| -> Result<bool, String> {
        let o = !sw_oracle(&rp(n), d).map_err(|e| e.to_string())?.is_zero();
        let table = if d == 3 {
            swclosed::w3_coefficients(&rp(n))
        } else {
            swclosed::w4_coefficients(&rp(n))
        }
        .map_err(|e| e.to_string())?;
        let c = !table.is_zero();
        ensure(o == c, format!("w{d}(RP^{n}): oracle {o} closed {c}"))?;
        Ok(o)
    };
    ensure(nonzero(6, 3)?, "w3(RP^6) = 0")?;
    ensure(nonzero(4, 4)?, "w4(RP^4) = 0")?;
    ensure(!nonzero(8, 4)?, "w4(RP^8) != 0")?;
    for n in 4..=9 {
        let f = swclosed::first_seven_vanish(&rp(n)).map_err(|e| e.to_string())?;
        ensure(f == (n == 7), format!("first_seven_vanish(RP^{n}) = {f}"))?;
    }
    Ok("spin iff n≡3 mod 4 for n=2..9; w3(RP6)≠0, w4(RP4)≠0, w4(RP8)=0; first seven vanish only for n=7".into())
}

fn c8() -> Outcome {
    let a = spin_zero(&[2, 2])?;
    let b = spin_zero(&[4, 5])?;
    Ok(format!("ω=(2,2): {a} valid, ω=(4,5): {b} valid, 0 spin"))
}

fn c9() -> Outcome {
    let a = spin_zero(&[1, 2, 2])?;
    let b = spin_zero(&[1, 2, 4])?;
    Ok(format!("ω=(1,2,2): {a} valid, ω=(1,2,4): {b} valid, 0 spin"))
}

fn c10() -> Outcome {
    let r = verify::verify_conjecture(&omega(&[2, 2]), 1, Reading::Shifted).map_err(|e| e.to_string())?;
    clean(&r)?;
    let r = verify::verify_conjecture(&omega(&[4, 4]), 2, Reading::Shifted).map_err(|e| e.to_string())?;
    clean(&r)?;
    let aw = verify::verify_conjecture(&omega(&[2, 2]), 1, Reading::AsWritten).map_err(|e| e.to_string())?;
    // a family where the vacuous pair modulus does show up
    let other = verify::verify_conjecture(&omega(&[4, 3]), 1, Reading::AsWritten).map_err(|e| e.to_string())?;
    ensure(
        !aw.discrepancies.is_empty(),
        format!(
            "shifted readings match the oracle, but the as-written list on ω=(2,2) is empty \
             ({} valid, none with k_1 ≡ k_2 ≡ 3 mod 4); on ω=(4,3) it has length {}",
            aw.valid,
            other.discrepancies.len()
        ),
    )?;
    Ok(format!(
        "shifted readings match; as-written list on ω=(2,2) has length {}",
        aw.discrepancies.len()
    ))
}

fn census_bytes(o: &DimensionVector, check: Check, cfg: RunConfig, threads: usize) -> Result<Vec<u8>, String> {
    let mut buf = Vec::new();
    let cfg = RunConfig { threads, ..cfg };
    verify::run(o, check, &cfg, Some(&mut buf)).map_err(|e| e.to_string())?;
    Ok(buf)
}

fn cli_census(dir: &Path, args: &[&str], threads: &str) -> Result<Vec<u8>, String> {
    let out = dir.join(format!("census-{threads}.jsonl"));
    let status = Command::new(env!("CARGO_BIN_EXE_gbott"))
        .args(args)
        .args(["--threads", threads, "--out"])
        .arg(&out)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(status.status.code() == Some(0), format!("gbott exited {:?}", status.status.code()))?;
    std::fs::read(&out).map_err(|e| e.to_string())
}

fn c11() -> Outcome {
    let mut bytes = 0;
    for (o, check, cfg) in c6_runs() {
        let one = census_bytes(&o, check, cfg, 1)?;
        let eight = census_bytes(&o, check, cfg, 8)?;
        ensure(one == eight, format!("census for {o} differs between 1 and 8 threads"))?;
        bytes += one.len();
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for args in [
        &["verify", "--omega", "3,3", "--check", "w3"][..],
        &["verify", "--omega", "4,4", "--check", "w4"],
        &["verify", "--omega", "3,3,3", "--check", "w3", "--sample", "1000"],
    ] {
        let one = cli_census(dir.path(), args, "1")?;
        let eight = cli_census(dir.path(), args, "8")?;
        ensure(one == eight, format!("CLI census differs for {args:?}"))?;
    }
    Ok(format!("library and CLI censuses byte-identical across 1 and 8 threads ({bytes} bytes over three censuses)"))
}

struct Criterion {
    id: u32,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion { id: 1, limit: Duration::from_secs(1), run: c1 },
        Criterion { id: 2, limit: Duration::from_secs(10), run: c2 },
        Criterion { id: 3, limit: Duration::from_secs(5), run: c3 },
        Criterion { id: 4, limit: Duration::from_secs(5), run: c4 },
        Criterion { id: 5, limit: Duration::from_secs(120), run: c5 },
        Criterion { id: 6, limit: Duration::from_secs(300), run: c6 },
        Criterion { id: 7, limit: Duration::from_secs(60), run: c7 },
        Criterion { id: 8, limit: Duration::from_secs(60), run: c8 },
        Criterion { id: 9, limit: Duration::from_secs(120), run: c9 },
        Criterion { id: 10, limit: Duration::from_secs(120), run: c10 },
        Criterion { id: 11, limit: Duration::from_secs(600), run: c11 },
    ];
    let mut failed = Vec::new();
    for c in criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > c.limit => Err(format!("{msg}; took {elapsed:.2?}, limit {:?}", c.limit)),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("criterion {:>2}: PASS  {msg} [{elapsed:.2?}]", c.id),
            Err(msg) => {
                println!("criterion {:>2}: FAIL  {msg} [{elapsed:.2?}]", c.id);
                failed.push(c.id);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria pass");
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
