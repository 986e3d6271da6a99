//! One pass/fail line per acceptance criterion.
//!
//! Runs without the libtest harness so every line is printed even when an
//! earlier criterion fails; exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use bhlab::bhmat::BHMatrix;
use bhlab::chaincx::{ChainElement, Monomial};
use bhlab::clifford::PiLaurent;
use bhlab::cli::run;
use bhlab::cohoring::{orbifold_basis, Reducer};
use bhlab::corpus::{corpus, small_corpus};
use bhlab::dwork::{tfr_matrix, verify_chain_commutation, verify_commutation, PiField};
use bhlab::homolab::{default_window, truncate, verify_ranks};
use bhlab::rational::{double_factorial_odd, factorial, qi, Q};
use bhlab::suites::{oracle_agreement, random_monomial, run_suite, Suite, SuiteConfig};

type Check = Result<String, String>;

fn bh(e: &[&[i64]]) -> BHMatrix {
    BHMatrix::validate(e.iter().map(|r| r.to_vec()).collect()).unwrap()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn cli_json(args: &[&str]) -> Result<Value, String> {
    let out = run([&["bhlab"], args, &["--format", "json"]].concat());
    ensure(out.code == 0, format!("{args:?} exited {}: {}", out.code, out.stderr))?;
    serde_json::from_str(&out.stdout).map_err(|e| e.to_string())
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect()
}

fn group_table() -> Check {
    let v = cli_json(&["group", "-m", "[[2,1],[0,3]]"])?;
    let side = |key: &str| -> Vec<(Vec<i64>, Vec<String>)> {
        v[key]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| (serde_json::from_value(r["lambda"].clone()).unwrap(), strings(&r["charges"])))
            .collect()
    };
    let expect = |rows: &[([i64; 2], [&str; 2])]| -> Vec<(Vec<i64>, Vec<String>)> {
        rows.iter().map(|(l, c)| (l.to_vec(), c.iter().map(|s| s.to_string()).collect())).collect()
    };
    let ga = expect(&[
        ([0, 0], ["0", "0"]),
        ([1, 0], ["1/2", "0"]),
        ([1, 1], ["1/3", "1/3"]),
        ([1, 2], ["1/6", "2/3"]),
        ([2, 1], ["5/6", "1/3"]),
        ([2, 2], ["2/3", "2/3"]),
    ]);
    let gt = expect(&[
        ([0, 0], ["0", "0"]),
        ([0, 1], ["0", "1/3"]),
        ([0, 2], ["0", "2/3"]),
        ([1, 1], ["1/2", "1/6"]),
        ([1, 2], ["1/2", "1/2"]),
        ([1, 3], ["1/2", "5/6"]),
    ]);
    ensure(side("group") == ga, "G_A rows differ")?;
    ensure(side("dual_group") == gt, "G_{A^T} rows differ")?;
    Ok("6 + 6 sector rows match".into())
}

fn basis_table() -> Check {
    let b = cli_json(&["basis", "-m", "[[2,1],[0,3]]"])?;
    let rows = b["basis"].as_array().unwrap();
    ensure(rows.len() == 10, format!("{} basis rows", rows.len()))?;
    let totals: Vec<i64> = rows.iter().map(|r| r["total"].as_i64().unwrap()).collect();
    let halves: Vec<String> = rows.iter().map(|r| r["half_sharp"].as_str().unwrap().to_string()).collect();
    ensure(totals == [2, 2, 2, 2, 3, 3, 4, 4, 4, 4], format!("Q+Q^v column {totals:?}"))?;
    ensure(halves == ["1", "1", "1", "0", "0", "0", "-1", "-1", "-1", "-1"], format!("(#-#^v)/2 column {halves:?}"))?;
    let t = cli_json(&["basis", "-m", "[[2,0],[1,3]]"])?;
    ensure(t["basis"].as_array().unwrap().len() == 10, "transpose basis size")?;
    let d = cli_json(&["dual", "-m", "[[2,1],[0,3]]"])?;
    let expect = [
        ("x1x2e1e2", 2, "1", "y1y2", 4, "-1"),
        ("x1x2²e1e2", 2, "1", "y1y2²", 4, "-1"),
        ("x1x2³e1e2", 2, "1", "y1y2³", 4, "-1"),
        ("x1²x2e1e2", 2, "0", "x1x2³e1e2", 2, "0"),
        ("x2y1e2", 3, "0", "x1y2e1", 3, "0"),
        ("x2²y1e2", 3, "0", "x1y2²e1", 3, "0"),
        ("y1y2", 4, "-1", "x1x2e1e2", 2, "1"),
        ("y1y2²", 4, "-1", "x1x2²e1e2", 2, "1"),
        ("y1²y2", 4, "-1", "x1²x2e1e2", 2, "1"),
        ("y1²y2²", 4, "-1", "x1²x2²e1e2", 2, "1"),
    ];
    let pairs = d["pairs"].as_array().unwrap();
    ensure(pairs.len() == 10, "pair count")?;
    for (p, e) in pairs.iter().zip(expect) {
        let (s, t) = (&p["source"], &p["target"]);
        let got = (
            s["monomial"].as_str().unwrap(),
            s["total"].as_i64().unwrap(),
            s["half_sharp"].as_str().unwrap(),
            t["monomial"].as_str().unwrap_or("?"),
            t["total"].as_i64().unwrap_or(0),
            t["half_sharp"].as_str().unwrap_or("?"),
        );
        ensure(got == e, format!("pair {got:?} != {e:?}"))?;
    }
    Ok("10 rows per side and 10 duality pairs match".into())
}

fn x_squared_frobenius() -> Check {
    let m = bh(&[&[2]]);
    let mut notes = Vec::new();
    for p in [5u64, 7] {
        let prec = 2 * (p as i64 - 1);
        let f = tfr_matrix(&m, p, prec).map_err(|e| e.to_string())?;
        let (x, y) = (&f.entries[0][0], &f.entries[1][1]);
        ensure(x.sub(y).is_zero(), format!("p={p}: x1e1 and y1 entries differ"))?;
        let half = (p - 1) / 2;
        let comp = x.components().get(&half).ok_or(format!("p={p}: no σ^{half} component"))?;
        ensure(x.components().len() == 1, format!("p={p}: extra σ components"))?;
        let u = comp.mul_exact(&PiField::pi_pow(p, half as i64).scale(&Q::new(1.into(), p.into())));
        ensure(u.valuation() == 0, format!("p={p}: u is not a unit"))?;
        let want = (factorial(half) % BigInt::from(p)).to_u64().unwrap();
        ensure(u.digits()[0] == want, format!("p={p}: u ≡ {} mod π, want {want}", u.digits()[0]))?;
        ensure(f.certified_prec() >= prec, format!("p={p}: certified {}", f.certified_prec()))?;
        notes.push(format!("p={p}: u ≡ {want}"));
    }
    Ok(notes.join(", "))
}

fn commutation() -> Check {
    let m = bh(&[&[2, 1], &[0, 3]]);
    let mut notes = Vec::new();
    for p in [7u64, 13] {
        let prec = 2 * (p as i64 - 1);
        let r = verify_commutation(&m, p, prec).map_err(|e| e.to_string())?;
        ensure(r.pass && r.certified_prec >= prec, format!("p={p}: {r:?}"))?;
        let v = r.min_valuation.map_or("exact zero".to_string(), |v| format!("valuation {v}"));
        notes.push(format!("p={p}: {v}, certified {}", r.certified_prec));
    }
    Ok(notes.join("; "))
}

fn chain_commutation() -> Check {
    let m = bh(&[&[2, 1], &[0, 3]]);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let monos: Vec<Monomial> = (0..100).map(|_| random_monomial(&m, &mut rng, 6, true)).collect();
    let r = verify_chain_commutation(&m, 7, 2, &monos).map_err(|e| e.to_string())?;
    ensure(r.pass, format!("failures: {:?}", &r.failures[..r.failures.len().min(5)]))?;
    Ok(format!("{} S_A monomials, p=7, order 2", r.checked))
}

fn eigenvalue() -> Check {
    let r = run_suite(Suite::Eigenvalue, None, &SuiteConfig::default());
    ensure(r.matrices >= 30, "corpus too small")?;
    ensure(r.pass, format!("{:?}", &r.failures[..r.failures.len().min(5)]))?;
    Ok(format!("{} basis monomials over {} matrices", r.cases, r.matrices))
}

fn property_suites() -> Check {
    let cfg = SuiteConfig { seed: 2024, ..Default::default() };
    let mut notes = Vec::new();
    for s in [Suite::Chain, Suite::Grading, Suite::Star, Suite::Delta] {
        let r = run_suite(s, None, &cfg);
        ensure(r.cases >= 1000, format!("{s}: only {} cases", r.cases))?;
        ensure(r.pass, format!("{s}: {:?}", &r.failures[..r.failures.len().min(3)]))?;
        notes.push(format!("{s} {}", r.cases));
    }
    Ok(notes.join(", "))
}

fn oracle() -> Check {
    for e in corpus() {
        let r = verify_ranks(&e.matrix, default_window(&e.matrix), false).map_err(|x| format!("{}: {x}", e.atom))?;
        ensure(r.pass, format!("{}: rank {} vs {}", e.atom, r.total_b, r.total_milnor))?;
    }
    let mats: Vec<BHMatrix> = small_corpus().into_iter().map(|e| e.matrix).collect();
    let f = oracle_agreement(&mats, 200, 8);
    ensure(f.is_empty(), format!("{:?}", &f[..f.len().min(3)]))?;

    let m = bh(&[&[2]]);
    let red = Reducer::new(&m);
    let tc = truncate(&m, 12, qi(1)).map_err(|e| e.to_string())?;
    let basis = red.basis.monomials();
    for k in 0..=5u32 {
        let v = ChainElement::from_monomial(Monomial::x(&[2 * k + 1], &[0]));
        let want = Q::from(double_factorial_odd(k as u64)) / Q::from(BigInt::from(-2).pow(k));
        let want = PiLaurent::term(want, -(k as i64));
        let cf = red.closed_form(&v).map_err(|e| e.to_string())?;
        let or = tc.reduce_by_oracle(&v, &basis).map_err(|e| e.to_string())?;
        ensure(cf.residual.is_zero() && cf.reduced.coeff(&basis[0]) == want, format!("closed form k={k}"))?;
        ensure(or.coords[0] == want && or.coords[1].is_zero(), format!("oracle k={k}"))?;
    }
    let t = bh(&[&[2, 0], &[1, 3]]);
    let red = Reducer::new(&t);
    let coords = red.normal_form(&ChainElement::from_monomial(Monomial::y(&[2, 1])), 6).map_err(|e| e.to_string())?;
    let k = red.basis.index_of(&Monomial::x(&[1, 3], &[0, 1])).ok_or("x1x2³e1e2 not in basis")?;
    let c = coords[k].as_monomial().map(|(c, p)| (c.abs(), p));
    ensure(c == Some((qi(3), 1)), format!("y1²y2 coefficient {}", coords[k]))?;
    ensure(coords.iter().filter(|c| !c.is_zero()).count() == 1, "y1²y2 has extra components")?;
    Ok(format!("{} corpus ranks, 200 cocycles, x1^(2k+1)e1 for k<=5, y1²y2 ≡ {}·x1x2³e1e2", corpus().len(), coords[k]))
}

fn totals() -> Check {
    for e in corpus() {
        let (a, b) = (orbifold_basis(&e.matrix).len(), orbifold_basis(&e.matrix.transpose()).len());
        ensure(a == b, format!("{}: {a} vs {b}", e.atom))?;
    }
    let m = bh(&[&[2, 1], &[0, 3]]);
    let (a, b) = (orbifold_basis(&m).len(), orbifold_basis(&m.transpose()).len());
    ensure(a == 10 && b == 10, format!("[[2,1],[0,3]]: {a} / {b}"))?;
    Ok(format!("{} matrices, [[2,1],[0,3]] 10 / 10", corpus().len()))
}

fn main() {
    bhlab::cli::init_threads();
    let criteria: [(&str, Duration, fn() -> Check); 9] = [
        ("group table for [[2,1],[0,3]]", Duration::from_secs(1), group_table),
        ("basis and duality table for [[2,1],[0,3]]", Duration::from_secs(5), basis_table),
        ("Frobenius of x1^2", Duration::from_secs(10), x_squared_frobenius),
        ("Frobenius commutes with duality", Duration::from_secs(300), commutation),
        ("chain-level commutation", Duration::from_secs(60), chain_commutation),
        ("eigenvalue identity", Duration::from_secs(60), eigenvalue),
        ("property suites", Duration::from_secs(120), property_suites),
        ("oracle agreement", Duration::from_secs(300), oracle),
        ("duality of totals", Duration::from_secs(5), totals),
    ];
    let mut failed = 0;
    for (k, (name, limit, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let dt = t.elapsed();
        let (ok, detail) = match res {
            Ok(d) if dt <= *limit => (true, d),
            Ok(d) => (false, format!("{d}; too slow ({:.1?} > {:?})", dt, limit)),
            Err(e) => (false, e),
        };
        failed += usize::from(!ok);
        println!("criterion {}: {} {name} ({:.2?}): {detail}", k + 1, if ok { "PASS" } else { "FAIL" }, dt);
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
