//! Seeded property suites over the corpus.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bhmat::BHMatrix;
use crate::chaincx::{ChainElement, Cx, Monomial};
use crate::clifford::{contract_e, e_op, e_vee_op, mul_e, star, ExtElement, PiLaurent, Wedge};
use crate::cohoring::{duality_matrix, eigenvalue_identity, orbifold_basis, Reducer};
use crate::corpus::{corpus, small_corpus};
use crate::homolab::{default_window, truncate, verify_quasi_iso};
use crate::rational::{qi, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Chain,
    Grading,
    Star,
    Delta,
    Duality,
    Eigenvalue,
    Quasiiso,
}

impl Suite {
    pub const ALL: [Suite; 7] =
        [Suite::Chain, Suite::Grading, Suite::Star, Suite::Delta, Suite::Duality, Suite::Eigenvalue, Suite::Quasiiso];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Chain => "chain",
            Suite::Grading => "grading",
            Suite::Star => "star",
            Suite::Delta => "delta",
            Suite::Duality => "duality",
            Suite::Eigenvalue => "eigenvalue",
            Suite::Quasiiso => "quasiiso",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| format!("unknown suite {s}"))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub matrices: usize,
    pub cases: usize,
    pub failures: Vec<String>,
    pub pass: bool,
}

/// Options shared by all suites.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Randomized cases per suite (spread over the matrices).
    pub cases: usize,
    /// Oracle window override.
    pub window: Option<u32>,
    /// Use the full corpus even for expensive suites.
    pub full_corpus: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 0, cases: 1000, window: None, full_corpus: false }
    }
}

/// Random admissible monomial; `sa` restricts `γ` to `S_A`.
pub fn random_monomial(m: &BHMatrix, rng: &mut impl Rng, max_exp: u32, sa: bool) -> Monomial {
    let n = m.n();
    let cx = Cx::new(m);
    let sectors = m.group_elements();
    let s = &sectors[rng.gen_range(0..sectors.len())];
    let charges: Vec<Q> = s.charges.iter().map(|c| c + qi(rng.gen_range(0..2))).collect();
    let lam: Vec<u32> = m.lambda_from_charges(&charges).into_iter().map(|l| l as u32).collect();
    let wedge = Wedge(rng.gen_range(0..1u32 << n));
    for _ in 0..1000 {
        let gamma: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
        if !sa || cx.in_sa(&gamma) {
            return Monomial { gamma, lam, wedge };
        }
    }
    let gamma = (0..n).map(|i| m.row(i).iter().sum::<i64>() as u32).collect();
    Monomial { gamma, lam, wedge }
}

/// Random combination of up to three monomials with small integer coefficients.
pub fn random_element(m: &BHMatrix, rng: &mut impl Rng, max_exp: u32, sa: bool) -> ChainElement {
    let k = rng.gen_range(1..=3);
    (0..k)
        .map(|_| {
            let c = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
            let pw = rng.gen_range(-1..=1);
            (random_monomial(m, rng, max_exp, sa), PiLaurent::term(qi(c), pw))
        })
        .collect()
}

/// A top-degree cocycle `Σ c x^γ y^λ e^F` inside one random sector, with all
/// exponents at most `window`.
pub fn random_top_cocycle(m: &BHMatrix, rng: &mut impl Rng, window: u32) -> ChainElement {
    let sectors = m.group_elements();
    let s = &sectors[rng.gen_range(0..sectors.len())];
    let fixed = s.fixed();
    let mut v = ChainElement::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let lam = loop {
            let charges: Vec<Q> = (0..m.n())
                .map(|i| if s.jvee[i] { &s.charges[i] + qi(rng.gen_range(0..2)) } else { qi(0) })
                .collect();
            let lam: Vec<i64> = m.lambda_from_charges(&charges);
            if lam.iter().all(|&l| l <= window as i64) {
                break lam.into_iter().map(|l| l as u32).collect::<Vec<_>>();
            }
        };
        let gamma = (0..m.n()).map(|i| if s.jvee[i] { 0 } else { rng.gen_range(1..=window) }).collect();
        let c = PiLaurent::term(qi(rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 }), rng.gen_range(-1..=1));
        v.add_term(Monomial::new(gamma, lam, &fixed), &c);
    }
    v
}

/// Compares the Pochhammer normal form against pure linear algebra on
/// `cases` random cocycles spread over `mats`; returns failures.
pub fn oracle_agreement(mats: &[BHMatrix], cases: usize, seed: u64) -> Vec<String> {
    let per: Vec<Vec<String>> = mats
        .par_iter()
        .enumerate()
        .map(|(k, m)| {
            let red = Reducer::new(m);
            let w = default_window(m);
            let basis = red.basis.monomials();
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (k as u64) << 32);
            let share = cases / mats.len() + usize::from(k < cases % mats.len());
            let mut fails = Vec::new();
            let tc = match truncate(m, w, qi(1)) {
                Ok(t) => t,
                Err(e) => return vec![format!("{m}: {e}")],
            };
            for _ in 0..share {
                let v = random_top_cocycle(m, &mut rng, w);
                let fast = red.normal_form(&v, w);
                let slow = tc.reduce_by_oracle(&v, &basis);
                match (fast, slow) {
                    (Ok(a), Ok(b)) if a == b.coords => {}
                    (Ok(_), Ok(_)) => fails.push(format!("{m}: normal forms differ on {v}")),
                    (a, b) => fails.push(format!("{m}: {v}: {:?} / {:?}", a.err(), b.err())),
                }
            }
            fails
        })
        .collect();
    per.into_iter().flatten().collect()
}

/// Expensive suites check only the user matrix when one is given.
fn expensive_matrices(user: Option<&BHMatrix>, full: bool) -> Vec<BHMatrix> {
    match user {
        Some(u) => vec![u.clone()],
        None => matrices(None, !full),
    }
}

fn matrices(user: Option<&BHMatrix>, small: bool) -> Vec<BHMatrix> {
    let mut out: Vec<BHMatrix> =
        if small { small_corpus() } else { corpus() }.into_iter().map(|e| e.matrix).collect();
    if let Some(u) = user {
        if !out.contains(u) {
            out.push(u.clone());
        }
    }
    out
}

/// Runs `per_case` on `cases` seeded cases spread round-robin over matrices.
fn randomized(
    mats: &[BHMatrix],
    cfg: &SuiteConfig,
    per_case: impl Fn(&BHMatrix, &Cx, &mut ChaCha8Rng) -> Option<String> + Sync,
) -> (usize, Vec<String>) {
    let cxs: Vec<Cx> = mats.iter().map(Cx::new).collect();
    let failures: Vec<String> = (0..cfg.cases)
        .into_par_iter()
        .filter_map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(0x9e37_79b9).wrapping_add(k as u64));
            let idx = k % mats.len();
            per_case(&mats[idx], &cxs[idx], &mut rng).map(|f| format!("{} case {k}: {f}", mats[idx]))
        })
        .collect();
    (cfg.cases, failures)
}

fn chain_case(m: &BHMatrix, cx: &Cx, rng: &mut ChaCha8Rng) -> Option<String> {
    let v = cx.canonical(&random_element(m, rng, 6, false));
    let dd = cx.apply_d(&cx.apply_d(&v));
    let vv = cx.apply_dvee(&cx.apply_dvee(&v));
    let tt = cx.apply_total(&cx.apply_total(&v));
    (!(dd.is_zero() && vv.is_zero() && tt.is_zero())).then(|| format!("D² ≠ 0 on {v}"))
}

fn grading_case(m: &BHMatrix, cx: &Cx, rng: &mut ChaCha8Rng) -> Option<String> {
    let n = m.n();
    let v = cx.canonical(&random_element(m, rng, 6, false));
    let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
    let q = |x: &ChainElement| cx.diagonal(x, |mo| cx.q_i(i, mo));
    let qv = |x: &ChainElement| cx.diagonal(x, |mo| cx.qvee_i(i, mo));
    let qv_j = |x: &ChainElement| cx.diagonal(x, |mo| cx.qvee_i(j, mo));
    let comm = |a: &dyn Fn(&ChainElement) -> ChainElement, b: &dyn Fn(&ChainElement) -> ChainElement| {
        a(&b(&v)).sub(&b(&a(&v)))
    };
    let d_j = |x: &ChainElement| cx.apply_d_i(j, x);
    let dv_j = |x: &ChainElement| cx.apply_dvee_i(j, x);
    let delta = if i == j { 1 } else { 0 };
    let checks = [
        ("[Q_i,Q_j^∨]", comm(&q, &qv_j), ChainElement::zero()),
        ("[Q_i^∨,d_j]", comm(&qv, &d_j), ChainElement::zero()),
        ("[Q_i,d_j]", comm(&q, &d_j), d_j(&v).scale(&PiLaurent::int(delta))),
        ("[Q_i,d_j^∨]", comm(&q, &dv_j), ChainElement::zero()),
        ("[Q_i^∨,d_j^∨]", comm(&qv, &dv_j), dv_j(&v).scale(&PiLaurent::int(delta))),
    ];
    checks.into_iter().find(|(_, got, want)| got != want).map(|(name, _, _)| format!("{name} fails (i={i}, j={j}) on {v}"))
}

fn random_ext(n: usize, rng: &mut ChaCha8Rng) -> ExtElement {
    let mut v = ExtElement::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let w = Wedge(rng.gen_range(0..1u32 << n));
        v.add_term(w, &PiLaurent::int(rng.gen_range(1..=4)));
    }
    v
}

fn star_case(m: &BHMatrix, _cx: &Cx, rng: &mut ChaCha8Rng) -> Option<String> {
    let n = m.n();
    let t = m.transpose();
    let v = random_ext(n, rng);
    let i = rng.gen_range(0..n);
    let s = |x: &ExtElement| star(m, x);
    let ss = |x: &ExtElement| star(&t, &star(m, x));
    let checks = [
        ("*E_i = e_i^∨ *", s(&e_op(m, i, &v)), contract_e(i, &s(&v))),
        ("*E_i^∨ = e_i *", s(&e_vee_op(m, i, &v)), mul_e(i, &s(&v))),
        ("[**, e_i]", ss(&mul_e(i, &v)), mul_e(i, &ss(&v))),
        ("[**, e_i^∨]", ss(&contract_e(i, &v)), contract_e(i, &ss(&v))),
    ];
    checks.into_iter().find(|(_, a, b)| a != b).map(|(name, _, _)| format!("{name} fails (i={i}) on {v}"))
}

fn delta_case(m: &BHMatrix, cx: &Cx, rng: &mut ChaCha8Rng) -> Option<String> {
    let dual = cx.dual();
    let v = cx.canonical(&random_element(m, rng, 6, true));
    let lhs = match cx.delta(&cx.apply_total(&v)) {
        Ok(x) => dual.canonical(&x),
        Err(e) => return Some(e.to_string()),
    };
    let rhs = match cx.delta(&v) {
        Ok(x) => dual.apply_total(&dual.canonical(&x)),
        Err(e) => return Some(e.to_string()),
    };
    (lhs != rhs).then(|| format!("ΔD ≠ D'Δ on {v}"))
}

/// Runs one suite over the corpus plus an optional user matrix.
pub fn run_suite(suite: Suite, user: Option<&BHMatrix>, cfg: &SuiteConfig) -> SuiteReport {
    let (mats, cases, failures) = match suite {
        Suite::Chain | Suite::Grading | Suite::Star | Suite::Delta => {
            let mats = matrices(user, false);
            let f = match suite {
                Suite::Chain => randomized(&mats, cfg, chain_case),
                Suite::Grading => randomized(&mats, cfg, grading_case),
                Suite::Star => randomized(&mats, cfg, star_case),
                _ => randomized(&mats, cfg, delta_case),
            };
            (mats.len(), f.0, f.1)
        }
        Suite::Eigenvalue => {
            let mats = matrices(user, false);
            let res: Vec<(usize, Vec<String>)> = mats
                .par_iter()
                .map(|m| {
                    let b = orbifold_basis(m);
                    let bad = b
                        .entries
                        .iter()
                        .filter(|e| {
                            let g = &e.gradings;
                            eigenvalue_identity(g, m.n()) != Some(true) || g.qhat.map(|h| 2 * h - g.sharp) != Some(g.ext)
                        })
                        .map(|e| format!("{m}: {}", e.mono))
                        .collect();
                    (b.len(), bad)
                })
                .collect();
            let cases = res.iter().map(|r| r.0).sum();
            (mats.len(), cases, res.into_iter().flat_map(|r| r.1).collect())
        }
        Suite::Duality => {
            let mats = expensive_matrices(user, cfg.full_corpus);
            let res: Vec<Option<String>> = mats
                .par_iter()
                .map(|m| {
                    let (a, b) = (orbifold_basis(m).len(), orbifold_basis(&m.transpose()).len());
                    if a != b {
                        return Some(format!("{m}: basis sizes {a} vs {b}"));
                    }
                    let d = match duality_matrix(m) {
                        Ok(d) => d,
                        Err(e) => return Some(format!("{m}: {e}")),
                    };
                    let back = match duality_matrix(&m.transpose()) {
                        Ok(d) => d,
                        Err(e) => return Some(format!("{m}: {e}")),
                    };
                    if !d.inverts_with(&back) {
                        return Some(format!("{m}: H(Δ') H(Δ) is not an invertible diagonal"));
                    }
                    (!d.exchanges_gradings()).then(|| format!("{m}: (#-#^v)/2 not negated under duality"))
                })
                .collect();
            (mats.len(), mats.len(), res.into_iter().flatten().collect())
        }
        Suite::Quasiiso => {
            let mats = expensive_matrices(user, cfg.full_corpus);
            let res: Vec<Option<String>> = mats
                .par_iter()
                .map(|m| {
                    let w = cfg.window.unwrap_or_else(|| default_window(m));
                    match verify_quasi_iso(m, w) {
                        Ok(r) if r.pass => None,
                        Ok(r) => Some(format!("{m}: ranks {} vs Milnor {}", r.total_b, r.total_milnor)),
                        Err(e) => Some(format!("{m}: {e}")),
                    }
                })
                .collect();
            (mats.len(), mats.len(), res.into_iter().flatten().collect())
        }
    };
    SuiteReport { suite, matrices: mats, cases, pass: failures.is_empty(), failures }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_small() {
        let cfg = SuiteConfig { cases: 60, ..Default::default() };
        for s in [Suite::Chain, Suite::Grading, Suite::Star, Suite::Delta] {
            let r = run_suite(s, None, &cfg);
            assert!(r.pass, "{s}: {:?}", &r.failures[..r.failures.len().min(3)]);
        }
    }

    #[test]
    fn oracle_agrees_on_small_matrices() {
        let mats: Vec<BHMatrix> = [vec![vec![2]], vec![vec![2, 1], vec![0, 3]], vec![vec![2, 1], vec![1, 2]]]
            .into_iter()
            .map(|e| BHMatrix::validate(e).unwrap())
            .collect();
        let f = oracle_agreement(&mats, 30, 1);
        assert!(f.is_empty(), "{:?}", &f[..f.len().min(3)]);
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }
}
