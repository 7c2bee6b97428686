//! Verification sweeps. Each suite is a list of independent cases run in
//! parallel; a case either passes or reports what went wrong.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fgl::verify_fgl_axioms;
use crate::kernels::{
    kernel_c, multischur_det, multischur_pf, pfaffian_identity_check, pfaffian_recursion, phi,
    vandermonde_identity_check, ClassSymbolFamily, SymbolKind,
};
use crate::kl::{
    at_alpha_zero, kl_a_closed, kl_a_iterated, kl_c_closed, kl_c_iterated, specialize_split, GrassmannSetup,
    LagrangianSetup, Setup,
};
use crate::poly::{GradedPoly, Homogeneity, VarId};
use crate::report::ResidualReport;
use crate::segre::SegreContext;
use crate::symfn::{complete_sym, newton_identity_residuals, virtual_power_sum_checked, VirtualBundle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Fgl,
    Segre,
    Series,
    Push,
    Kernels,
    KlA,
    KlC,
    Classical,
    Newton,
    All,
}

impl Suite {
    pub const EACH: [Suite; 9] = [
        Suite::Fgl,
        Suite::Segre,
        Suite::Series,
        Suite::Push,
        Suite::Kernels,
        Suite::KlA,
        Suite::KlC,
        Suite::Classical,
        Suite::Newton,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Fgl => "fgl",
            Suite::Segre => "segre",
            Suite::Series => "series",
            Suite::Push => "push",
            Suite::Kernels => "kernels",
            Suite::KlA => "kl-a",
            Suite::KlC => "kl-c",
            Suite::Classical => "classical",
            Suite::Newton => "newton",
            Suite::All => "all",
        }
    }

    /// Largest `m` swept when no cap is given.
    pub fn default_max_m(self) -> u32 {
        match self {
            Suite::Fgl => 4,
            Suite::Segre | Suite::Kernels => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .iter()
            .chain(std::iter::once(&Suite::All))
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Caps every suite's `m` range when set.
    pub max_m: Option<u32>,
    pub seed: u64,
    /// Number of sampled setups in the specialized sweeps.
    pub samples: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            max_m: None,
            seed: 0,
            samples: 6,
        }
    }
}

impl SuiteConfig {
    fn max_m(&self, suite: Suite) -> u32 {
        self.max_m
            .map_or(suite.default_max_m(), |cap| cap.min(suite.default_max_m()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub case: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
    #[serde(serialize_with = "as_secs")]
    pub wall_time: Duration,
}

fn as_secs<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {}/{} cases passed in {:.2}s",
            self.suite,
            self.cases - self.failures.len(),
            self.cases,
            self.wall_time.as_secs_f64()
        )?;
        for fail in &self.failures {
            writeln!(f, "  FAIL {}: {}", fail.case, fail.detail)?;
        }
        Ok(())
    }
}

type Outcome = Result<Option<String>>;
type CaseFn = Box<dyn Fn() -> Outcome + Send + Sync>;

struct Case {
    id: String,
    run: CaseFn,
}

fn case(id: impl Into<String>, run: impl Fn() -> Outcome + Send + Sync + 'static) -> Case {
    Case {
        id: id.into(),
        run: Box::new(run),
    }
}

fn from_report(r: ResidualReport) -> Outcome {
    Ok(if r.is_clean() {
        None
    } else {
        Some(
            r.failures()
                .map(|e| format!("{} = {}", e.label, e.residual))
                .collect::<Vec<_>>()
                .join("; "),
        )
    })
}

fn expect_eq<T: PartialEq + fmt::Display>(what: &str, left: &T, right: &T) -> Option<String> {
    (left != right).then(|| format!("{what}: {left} != {right}"))
}

fn run_cases(suite: Suite, cases: Vec<Case>) -> VerifyReport {
    let start = Instant::now();
    let mut failures: Vec<Failure> = cases
        .par_iter()
        .filter_map(|c| {
            let detail = match (c.run)() {
                Ok(None) => return None,
                Ok(Some(d)) => d,
                Err(e) => format!("error: {e}"),
            };
            Some(Failure {
                case: c.id.clone(),
                detail,
            })
        })
        .collect();
    failures.sort_by(|a, b| a.case.cmp(&b.case));
    VerifyReport {
        suite: suite.name().to_string(),
        cases: cases.len(),
        failures,
        wall_time: start.elapsed(),
    }
}

fn vars(f: fn(u32) -> VarId, n: u32, m: u32) -> Vec<GradedPoly> {
    (1..=n).map(|i| GradedPoly::var(f(i), m)).collect()
}

/// Weakly decreasing sequences of positive parts at most `max_part`, with
/// length between 1 and `max_len`.
pub fn partitions(max_len: usize, max_part: i64) -> Vec<Vec<i64>> {
    fn rec(prefix: &mut Vec<i64>, max_len: usize, bound: i64, out: &mut Vec<Vec<i64>>) {
        if !prefix.is_empty() {
            out.push(prefix.clone());
        }
        if prefix.len() == max_len {
            return;
        }
        for p in 1..=bound {
            prefix.push(p);
            rec(prefix, max_len, p, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), max_len, max_part, &mut out);
    out
}

/// Strictly decreasing sequences of positive parts at most `max_part`, with
/// length between 1 and `max_len`.
pub fn strict_partitions(max_len: usize, max_part: i64) -> Vec<Vec<i64>> {
    partitions(max_len, max_part)
        .into_iter()
        .filter(|p| p.windows(2).all(|w| w[0] > w[1]))
        .collect()
}

fn fgl_cases(cfg: &SuiteConfig) -> Vec<Case> {
    (1..=cfg.max_m(Suite::Fgl))
        .map(|m| case(format!("fgl m={m}"), move || from_report(verify_fgl_axioms(m)?)))
        .collect()
}

fn segre_cases(cfg: &SuiteConfig) -> Vec<Case> {
    let mut out = Vec::new();
    for m in 1..=cfg.max_m(Suite::Segre) {
        for e in 0..=4u32 {
            let lo = -2 * i64::from(m);
            for k in lo..=5 {
                out.push(case(format!("segre m={m} e={e} k={k}"), move || {
                    let ctx = SegreContext::new(m)?;
                    let roots = vars(VarId::x, e, m);
                    let formula = ctx.segre_formula(k, &roots)?;
                    // the symmetrization needs k + e - 1 >= 0; zero roots do not change the class
                    let mut padded = roots.clone();
                    while k + padded.len() as i64 - 1 < 0 {
                        padded.push(GradedPoly::zero(m));
                    }
                    let vishik = ctx.segre_vishik(k, &padded)?;
                    let mut with_zero = roots.clone();
                    with_zero.push(GradedPoly::zero(m));
                    let stable = ctx.segre_formula(k, &with_zero)?;
                    Ok(expect_eq("formula vs symmetrization", &formula, &vishik)
                        .or_else(|| expect_eq("stability", &formula, &stable))
                        .or_else(|| {
                            expect_eq("classical part", &formula.alpha_free_part(), &complete_sym(k, &roots, m))
                        }))
                }));
            }
        }
    }
    out
}

fn series_cases(cfg: &SuiteConfig) -> Vec<Case> {
    let mut out = Vec::new();
    for m in 1..=cfg.max_m(Suite::Series) {
        for e in 0..=4u32 {
            out.push(case(format!("series m={m} e={e}"), move || {
                let ctx = SegreContext::new(m)?;
                let lo = -2 * i64::from(m) - 3;
                from_report(ctx.series_identity_residuals(&vars(VarId::x, e, m), lo, i64::from(e) + 3)?)
            }));
        }
    }
    out
}

fn push_cases(cfg: &SuiteConfig) -> Vec<Case> {
    let mut out = Vec::new();
    for m in 1..=cfg.max_m(Suite::Push) {
        for e in 1..=3u32 {
            for f in 0..=3u32 {
                for s in 0..=3i64 {
                    out.push(case(format!("push m={m} e={e} f={f} s={s}"), move || {
                        let ctx = SegreContext::new(m)?;
                        let (x, y) = (vars(VarId::x, e, m), vars(VarId::y, f, m));
                        let pushed = ctx.push_twisted_top(s, &x, &y)?;
                        let k = s + i64::from(f) - i64::from(e) + 1;
                        let segre = ctx.segre_virtual(k, &x, &y)?;
                        Ok(expect_eq("push vs virtual Segre", &pushed, &segre))
                    }));
                }
            }
        }
    }
    out
}

fn kernel_cases(cfg: &SuiteConfig) -> Vec<Case> {
    let mut out = Vec::new();
    let max_m = cfg.max_m(Suite::Kernels);
    for m in 1..=max_m {
        for lam in partitions(4, 4) {
            out.push(case(format!("vandermonde m={m} {lam:?}"), move || {
                from_report(vandermonde_identity_check(&lam, m)?)
            }));
        }
    }
    for m in 1..=max_m.min(2) {
        for lam in strict_partitions(4, 5) {
            let id = format!("pfaffian kernel m={m} {lam:?}");
            let l2 = lam.clone();
            out.push(case(id, move || from_report(pfaffian_identity_check(&l2, m)?)));
            if lam.len() % 2 == 0 {
                let l3 = lam.clone();
                out.push(case(format!("pfaffian recursion m={m} {lam:?}"), move || {
                    let rows: Vec<(i64, i64)> = l3.iter().map(|&p| (p - 1, p)).collect();
                    let pf = multischur_pf(SymbolKind::C, &rows, m)?;
                    let rec = pfaffian_recursion(SymbolKind::C, &rows, m)?;
                    Ok(expect_eq("kernel Pfaffian vs recursion", &pf, &rec))
                }));
            }
            if lam.len() <= 3 {
                out.push(case(format!("truncation stability m={m} {lam:?}"), move || {
                    let fam = ClassSymbolFamily::new(SymbolKind::C, lam.iter().map(|p| p - 1).collect(), m);
                    let a = phi(&kernel_c(&lam, m, 0)?.poly, lam.len(), &fam, 0)?;
                    let b = phi(&kernel_c(&lam, m, 2)?.poly, lam.len(), &fam, 0)?;
                    Ok(expect_eq("margin 0 vs margin 2", &a, &b))
                }));
            }
        }
    }
    out
}

/// All nonempty `lambda` in `P_d(n)`.
pub fn grassmann_partitions(n: u32, d: u32) -> Vec<Vec<i64>> {
    partitions(d as usize, i64::from(n - d))
}

/// All nonempty strict `lambda` in `SP(n)`.
pub fn lagrangian_partitions(n: u32) -> Vec<Vec<i64>> {
    strict_partitions(n as usize, i64::from(n))
}

fn swap_vars(p: &GradedPoly, a: VarId, b: VarId) -> Result<GradedPoly> {
    p.eval(|v| {
        let w = if *v == a {
            b
        } else if *v == b {
            a
        } else {
            *v
        };
        Ok(GradedPoly::var(w, p.m()))
    })
}

fn kl_a_cases(cfg: &SuiteConfig) -> Vec<Case> {
    let mut out = Vec::new();
    let max_m = cfg.max_m(Suite::KlA);
    for m in 1..=max_m {
        for n in 1..=4u32 {
            for d in 1..=n.min(2) {
                for lam in grassmann_partitions(n, d) {
                    out.push(case(format!("kl-a m={m} n={n} d={d} {lam:?}"), move || {
                        let g = GrassmannSetup::new(n, d, &lam, m)?;
                        let closed = kl_a_closed(&g)?;
                        let iterated = kl_a_iterated(&g)?;
                        let deg = Homogeneity::Degree(lam.iter().sum());
                        Ok(expect_eq("closed vs iterated", &closed, &iterated).or_else(|| {
                            (closed.homogeneous_degree() != deg)
                                .then(|| format!("not homogeneous of degree {}", lam.iter().sum::<i64>()))
                        }))
                    }));
                }
            }
        }
    }
    let mut sampled: Vec<(u32, Vec<i64>)> = (1..=max_m)
        .flat_map(|m| grassmann_partitions(5, 3).into_iter().map(move |l| (m, l)))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    sampled.shuffle(&mut rng);
    for (m, lam) in sampled.into_iter().take(cfg.samples) {
        out.push(case(format!("kl-a split m={m} n=5 d=3 {lam:?}"), move || {
            let g = GrassmannSetup::new(5, 3, &lam, m)?;
            let setup = Setup::A(g.clone());
            let closed = specialize_split(&kl_a_closed(&g)?, &setup)?;
            let iterated = specialize_split(&kl_a_iterated(&g)?, &setup)?;
            let swapped = swap_vars(&closed, VarId::x(1), VarId::x(3))?;
            Ok(expect_eq("specialized closed vs iterated", &closed, &iterated)
                .or_else(|| expect_eq("symmetry in x", &closed, &swapped)))
        }));
    }
    out
}

fn kl_c_cases(cfg: &SuiteConfig) -> Vec<Case> {
    let mut out = Vec::new();
    let max_m = cfg.max_m(Suite::KlC);
    for m in 1..=max_m {
        for n in 1..=3u32 {
            for lam in lagrangian_partitions(n) {
                out.push(case(format!("kl-c m={m} n={n} {lam:?}"), move || {
                    let s = LagrangianSetup::new(n, &lam, m)?;
                    let closed = kl_c_closed(&s)?;
                    let iterated = kl_c_iterated(&s)?;
                    let deg = Homogeneity::Degree(lam.iter().sum());
                    Ok(expect_eq("closed vs iterated", &closed, &iterated).or_else(|| {
                        (closed.homogeneous_degree() != deg)
                            .then(|| format!("not homogeneous of degree {}", lam.iter().sum::<i64>()))
                    }))
                }));
            }
        }
    }
    let mut sampled: Vec<Vec<i64>> = lagrangian_partitions(2);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(1));
    sampled.shuffle(&mut rng);
    for lam in sampled.into_iter().take(cfg.samples.min(2)) {
        out.push(case(format!("kl-c split m=1 n=2 {lam:?}"), move || {
            let s = LagrangianSetup::new(2, &lam, 1)?;
            let setup = Setup::C(s.clone());
            let closed = specialize_split(&kl_c_closed(&s)?, &setup)?;
            let iterated = specialize_split(&kl_c_iterated(&s)?, &setup)?;
            let swapped = swap_vars(&closed, VarId::x(1), VarId::x(2))?;
            Ok(expect_eq("specialized closed vs iterated", &closed, &iterated)
                .or_else(|| expect_eq("symmetry in x", &closed, &swapped)))
        }));
    }
    out
}

fn classical_cases(cfg: &SuiteConfig) -> Vec<Case> {
    let mut out = vec![case("grassmannian of lines, lambda=(1)", || {
        let g = GrassmannSetup::new(2, 1, &[1], 1)?;
        let k = specialize_split(&kl_a_closed(&g)?, &Setup::A(g))?;
        let expected = GradedPoly::parse("(y1-x1)*(1-al*x1*y1)", 1)?;
        let classical = GradedPoly::parse("y1-x1", 1)?;
        Ok(expect_eq("specialized class", &k, &expected)
            .or_else(|| expect_eq("classical part", &k.alpha_free_part(), &classical)))
    })];
    for m in 1..=cfg.max_m(Suite::Classical) {
        for lam in grassmann_partitions(4, 2) {
            out.push(case(format!("alpha=0 type A m={m} {lam:?}"), move || {
                let g = GrassmannSetup::new(4, 2, &lam, m)?;
                let rows: Vec<(i64, i64)> = g.superscripts().into_iter().zip(lam.iter().copied()).collect();
                let det = multischur_det(SymbolKind::A, &rows, m);
                Ok(expect_eq("alpha=0 part", &at_alpha_zero(&kl_a_closed(&g)?), &det))
            }));
        }
        for lam in lagrangian_partitions(3) {
            out.push(case(format!("alpha=0 type C m={m} {lam:?}"), move || {
                let s = LagrangianSetup::new(3, &lam, m)?;
                let rows: Vec<(i64, i64)> = lam.iter().map(|&p| (p - 1, p)).collect();
                let pf = multischur_pf(SymbolKind::C, &rows, m)?;
                Ok(expect_eq("alpha=0 part", &at_alpha_zero(&kl_c_closed(&s)?), &pf))
            }));
        }
    }
    out
}

fn newton_cases(_cfg: &SuiteConfig) -> Vec<Case> {
    let mut out = Vec::new();
    for n in 0..=4u32 {
        out.push(case(format!("newton {n} variables"), move || {
            from_report(newton_identity_residuals(8, &vars(VarId::x, n, 1), 1))
        }));
    }
    for e in 0..=3u32 {
        for f in 0..=3u32 {
            out.push(case(format!("virtual power sums e={e} f={f}"), move || {
                let v = VirtualBundle::new(vars(VarId::x, e, 1), vars(VarId::y, f, 1), 1)?;
                for k in 1..=6 {
                    virtual_power_sum_checked(k, &v)?;
                }
                Ok(None)
            }));
        }
    }
    out
}

/// Runs one suite; `Suite::All` runs each suite in turn.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Vec<VerifyReport> {
    let cases = match suite {
        Suite::All => return Suite::EACH.iter().flat_map(|s| run_suite(*s, cfg)).collect(),
        Suite::Fgl => fgl_cases(cfg),
        Suite::Segre => segre_cases(cfg),
        Suite::Series => series_cases(cfg),
        Suite::Push => push_cases(cfg),
        Suite::Kernels => kernel_cases(cfg),
        Suite::KlA => kl_a_cases(cfg),
        Suite::KlC => kl_c_cases(cfg),
        Suite::Classical => classical_cases(cfg),
        Suite::Newton => newton_cases(cfg),
    };
    vec![run_cases(suite, cases)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        // partitions inside a 2 x 2 box, minus the empty one
        assert_eq!(partitions(2, 2).len(), 5);
        assert_eq!(grassmann_partitions(5, 3).len(), 9);
        assert_eq!(lagrangian_partitions(3).len(), 7);
        assert_eq!(strict_partitions(4, 5).len(), 30);
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        let cfg = SuiteConfig {
            max_m: Some(1),
            ..SuiteConfig::default()
        };
        for s in [Suite::Fgl, Suite::Newton, Suite::Classical] {
            for r in run_suite(s, &cfg) {
                assert!(r.passed(), "{r}");
            }
        }
    }
}
