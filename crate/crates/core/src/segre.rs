//! Segre classes of bundles and virtual bundles, and the pushforward from the
//! projective bundle computed by symmetrization over Chern roots.

use std::collections::HashMap;

use crate::coeffs::{gamma_table, GammaTable};
use crate::error::{Error, Result};
use crate::fgl::{build_fgl, FormalGroupLaw};
use crate::poly::{GradedPoly, VarId};
use crate::report::ResidualReport;
use crate::symfn::{complete_sym, elem_sym, power_sum, virtual_chern, virtual_power_sum, VirtualBundle};

#[derive(Clone, Debug)]
pub struct SegreContext {
    m: u32,
    gamma: GammaTable,
    fgl: FormalGroupLaw,
}

fn sign(i: i64) -> i64 {
    if i.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl SegreContext {
    pub fn new(m: u32) -> Result<Self> {
        Ok(Self {
            m,
            gamma: gamma_table(m)?,
            fgl: build_fgl(m)?,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn gamma(&self) -> &GammaTable {
        &self.gamma
    }

    pub fn fgl(&self) -> &FormalGroupLaw {
        &self.fgl
    }

    fn g(&self, l: i64) -> i64 {
        i64::try_from(self.gamma.gamma(l)).expect("gamma fits in i64")
    }

    fn check_roots(&self, roots: &[GradedPoly]) -> Result<()> {
        for r in roots {
            if r.m() != self.m {
                return Err(Error::MixedParameter { left: self.m, right: r.m() });
            }
        }
        Ok(())
    }

    /// `h_k - al sum_{l=0}^{2m-1} (-1)^l gamma_l p_l h_{2m+k-l}`.
    pub fn segre_formula(&self, k: i64, roots: &[GradedPoly]) -> Result<GradedPoly> {
        self.check_roots(roots)?;
        let m = self.m;
        let n = 2 * i64::from(m);
        let mut corr = GradedPoly::zero(m);
        for l in 0..n {
            let h = complete_sym(n + k - l, roots, m);
            if h.is_zero() {
                continue;
            }
            corr.add_assign_ref(&(power_sum(l, roots, m) * h).scale_int(sign(l) * self.g(l)));
        }
        Ok(complete_sym(k, roots, m) - corr.times_alpha())
    }

    /// `sum_i g(x_i) / prod_{j != i} (x_i (+) (-x_j))` for `g` a polynomial in `xi`.
    pub fn vishik_push(&self, g: &GradedPoly, roots: &[GradedPoly]) -> Result<GradedPoly> {
        self.check_roots(roots)?;
        let m = self.m;
        let e = roots.len();
        let xi: Vec<GradedPoly> = (1..=e as u32).map(|i| GradedPoly::var(VarId::xi(i), m)).collect();
        let unit = self.fgl.factors().1;
        let mut assign = HashMap::new();
        // z_{ij}, where x_i (+) (-x_j) = (x_i - x_j)(1 + al z_{ij})
        let z = |i: usize, j: usize| -> Result<GradedPoly> {
            let mut a = HashMap::new();
            a.insert(VarId::u(), xi[i].clone());
            a.insert(VarId::v(), -&xi[j]);
            Ok(unit.substitute(&a)?.alpha_part())
        };
        let vandermonde = |skip: Option<usize>| {
            let mut v = GradedPoly::one(m);
            for a in 0..e {
                for b in a + 1..e {
                    if Some(a) != skip && Some(b) != skip {
                        v = v * (&xi[a] - &xi[b]);
                    }
                }
            }
            v
        };
        let mut numer = GradedPoly::zero(m);
        for i in 0..e {
            assign.insert(VarId::xi(0), xi[i].clone());
            let mut term = g.substitute(&assign)?;
            for j in (0..e).filter(|&j| j != i) {
                term = term * (GradedPoly::one(m) - z(i, j)?.times_alpha());
            }
            term = term * vandermonde(Some(i));
            numer.add_assign_ref(&term.scale_int(sign(i as i64)));
        }
        let quotient = numer.div_exact(&vandermonde(None))?;
        let back: HashMap<VarId, GradedPoly> = (0..e)
            .map(|i| (VarId::xi(i as u32 + 1), roots[i].clone()))
            .collect();
        quotient.substitute(&back)
    }

    /// The pushforward of `xi^{k+e-1}`; requires `k + e - 1 >= 0`.
    pub fn segre_vishik(&self, k: i64, roots: &[GradedPoly]) -> Result<GradedPoly> {
        let s = k + roots.len() as i64 - 1;
        if s < 0 {
            return Err(Error::Precondition(format!(
                "k + e - 1 = {s} is negative; pad the root list with zero roots"
            )));
        }
        let g = GradedPoly::var(VarId::xi(0), self.m).pow(s as u32);
        self.vishik_push(&g, roots)
    }

    /// The `t^k` coefficient of `c_{-t}(F - E)(1 - al sum_{i=1}^{2m} (-1)^i
    /// gamma_{2m-i} p_{2m-i}(E - F) t^{-i})`, checked against the expansion of
    /// `c_t(F^dual) S_t(E) (1 + al sum_{i=1}^{2m-1} gamma_{2m-i} p_{2m-i}(F^dual) t^{-i})`.
    pub fn segre_virtual(&self, k: i64, e_roots: &[GradedPoly], f_roots: &[GradedPoly]) -> Result<GradedPoly> {
        let first = self.segre_virtual_chern(k, e_roots, f_roots)?;
        let second = self.segre_virtual_relative(k, e_roots, f_roots)?;
        if first != second {
            return Err(Error::PathDisagreement {
                what: format!("virtual Segre class of index {k}"),
                residual: (&first - &second).to_string(),
            });
        }
        Ok(first)
    }

    fn segre_virtual_chern(&self, k: i64, e_roots: &[GradedPoly], f_roots: &[GradedPoly]) -> Result<GradedPoly> {
        let m = self.m;
        let n = 2 * i64::from(m);
        let f_minus_e = VirtualBundle::new(f_roots.to_vec(), e_roots.to_vec(), m)?;
        let e_minus_f = VirtualBundle::new(e_roots.to_vec(), f_roots.to_vec(), m)?;
        let c = |j: i64| virtual_chern(j, &f_minus_e).scale_int(sign(j));
        let mut corr = GradedPoly::zero(m);
        for i in 1..=n {
            let cj = c(k + i);
            if cj.is_zero() {
                continue;
            }
            let p = virtual_power_sum(n - i, &e_minus_f);
            corr.add_assign_ref(&(p * cj).scale_int(sign(i) * self.g(n - i)));
        }
        Ok(c(k) - corr.times_alpha())
    }

    fn segre_virtual_relative(&self, k: i64, e_roots: &[GradedPoly], f_roots: &[GradedPoly]) -> Result<GradedPoly> {
        let m = self.m;
        let n = 2 * i64::from(m);
        let f_dual: Vec<GradedPoly> = f_roots.iter().map(|r| -r).collect();
        let mut out = GradedPoly::zero(m);
        for l in 0..=f_dual.len() as i64 {
            let c = elem_sym(l, &f_dual, m);
            let mut inner = self.segre_formula(k - l, e_roots)?;
            let mut corr = GradedPoly::zero(m);
            for i in 1..n {
                let s = self.segre_formula(k - l + i, e_roots)?;
                corr.add_assign_ref(&(power_sum(n - i, &f_dual, m) * s).scale_int(self.g(n - i)));
            }
            inner = inner + corr.times_alpha();
            out.add_assign_ref(&(c * inner));
        }
        Ok(out)
    }

    /// `c_e(L (x) E)` where `c_1(L) = tau`, in closed form; checked against
    /// `prod_i (tau (+) x_i)`.
    pub fn top_chern_twist(&self, roots: &[GradedPoly], tau: &GradedPoly) -> Result<GradedPoly> {
        self.check_roots(roots)?;
        let m = self.m;
        let e = roots.len() as i64;
        let mut base = GradedPoly::zero(m);
        for l in 0..=e {
            base.add_assign_ref(&(elem_sym(l, roots, m) * tau.pow((e - l) as u32)));
        }
        let mut corr = GradedPoly::zero(m);
        for j in 1..2 * i64::from(m) {
            corr.add_assign_ref(
                &(power_sum(j, roots, m) * tau.pow((2 * i64::from(m) - j) as u32)).scale_int(self.g(j)),
            );
        }
        let closed = base * (GradedPoly::one(m) + corr.times_alpha());
        let direct = roots
            .iter()
            .fold(GradedPoly::one(m), |acc, x| acc * self.fgl.apply(tau, x));
        if closed != direct {
            return Err(Error::PathDisagreement {
                what: "twisted top Chern class".into(),
                residual: (&closed - &direct).to_string(),
            });
        }
        Ok(closed)
    }

    /// The pushforward of `xi^s c_f(Q (x) F^dual)` from the projective bundle
    /// of `E`, by symmetrization.
    pub fn push_twisted_top(&self, s: i64, e_roots: &[GradedPoly], f_roots: &[GradedPoly]) -> Result<GradedPoly> {
        if s < 0 {
            return Err(Error::Precondition(format!("exponent s = {s} must be nonnegative")));
        }
        self.check_roots(f_roots)?;
        let m = self.m;
        let xi = GradedPoly::var(VarId::xi(0), m);
        let mut g = xi.pow(s as u32);
        for y in f_roots {
            g = g * self.fgl.apply(&xi, &-y);
        }
        self.vishik_push(&g, e_roots)
    }

    /// Residuals of `S_t(E) c_{-t}(E) = 1 - al sum_{i=1}^{2m} (-1)^i
    /// gamma_{2m-i} p_{2m-i}(E) t^{-i}` for `t`-degrees in `[lo, hi]`.
    pub fn series_identity_residuals(&self, roots: &[GradedPoly], lo: i64, hi: i64) -> Result<ResidualReport> {
        let m = self.m;
        let n = 2 * i64::from(m);
        let e = roots.len() as i64;
        let mut report = ResidualReport::new();
        for i in lo..=hi {
            let mut r = GradedPoly::zero(m);
            for q in 0..=e {
                r.add_assign_ref(&(elem_sym(q, roots, m) * self.segre_formula(i - q, roots)?).scale_int(sign(q)));
            }
            let expected = if i == 0 {
                GradedPoly::one(m)
            } else if (-n..0).contains(&i) {
                let j = -i;
                power_sum(n - j, roots, m)
                    .scale_int(-sign(j) * self.g(n - j))
                    .times_alpha()
            } else {
                GradedPoly::zero(m)
            };
            report.push(format!("R_{i}"), &(r - expected));
        }
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, m: u32) -> GradedPoly {
        GradedPoly::parse(s, m).unwrap()
    }

    fn vars(f: fn(u32) -> VarId, n: u32, m: u32) -> Vec<GradedPoly> {
        (1..=n).map(|i| GradedPoly::var(f(i), m)).collect()
    }

    fn padded(mut roots: Vec<GradedPoly>, k: i64, m: u32) -> Vec<GradedPoly> {
        while k + roots.len() as i64 - 1 < 0 {
            roots.push(GradedPoly::zero(m));
        }
        roots
    }

    #[test]
    fn formula_examples() {
        let ctx = SegreContext::new(1).unwrap();
        let x = vars(VarId::x, 2, 1);
        assert_eq!(ctx.segre_formula(1, &x).unwrap(), p("(x1+x2)*(1+al*x1*x2)", 1));
        assert_eq!(ctx.segre_formula(-2, &x).unwrap(), p("-al", 1));
        assert!(ctx.segre_formula(-1, &x).unwrap().is_zero());
        assert!(ctx.segre_formula(-3, &x).unwrap().is_zero());
        assert_eq!(ctx.segre_formula(0, &x).unwrap(), p("1+al*x1*x2", 1));
    }

    #[test]
    fn vishik_examples() {
        let ctx = SegreContext::new(1).unwrap();
        let x = vars(VarId::x, 2, 1);
        assert_eq!(ctx.segre_vishik(1, &x).unwrap(), p("(x1+x2)*(1+al*x1*x2)", 1));
        assert_eq!(ctx.segre_vishik(0, &x).unwrap(), p("1+al*x1*x2", 1));
        for m in 1..=3 {
            let ctx = SegreContext::new(m).unwrap();
            let one = vars(VarId::x, 1, m);
            for k in 0..5 {
                assert_eq!(ctx.segre_vishik(k, &one).unwrap(), one[0].pow(k as u32));
            }
        }
        assert!(ctx.segre_vishik(-2, &x).is_err());
    }

    #[test]
    fn formula_matches_vishik() {
        for m in 1..=2 {
            let ctx = SegreContext::new(m).unwrap();
            for e in 1..=3 {
                for k in -2 * i64::from(m)..=4 {
                    let roots = padded(vars(VarId::x, e, m), k, m);
                    assert_eq!(
                        ctx.segre_formula(k, &roots).unwrap(),
                        ctx.segre_vishik(k, &roots).unwrap(),
                        "m={m} e={e} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn alpha_free_part_is_classical() {
        let ctx = SegreContext::new(2).unwrap();
        let x = vars(VarId::x, 3, 2);
        for k in -4..5 {
            assert_eq!(
                ctx.segre_formula(k, &x).unwrap().alpha_free_part(),
                complete_sym(k, &x, 2)
            );
        }
    }

    #[test]
    fn virtual_examples() {
        let ctx = SegreContext::new(1).unwrap();
        let x = vars(VarId::x, 1, 1);
        let y = vars(VarId::y, 1, 1);
        assert_eq!(ctx.segre_virtual(1, &x, &y).unwrap(), p("(x1-y1)*(1-al*x1*y1)", 1));
        let x3 = vars(VarId::x, 3, 1);
        for k in -3..4 {
            assert_eq!(
                ctx.segre_virtual(k, &x3, &[]).unwrap(),
                ctx.segre_formula(k, &x3).unwrap()
            );
        }
        for m in 1..=2 {
            let ctx = SegreContext::new(m).unwrap();
            let (x, y) = (vars(VarId::x, 2, m), vars(VarId::y, 2, m));
            assert!(ctx.segre_virtual(-2 * i64::from(m) - 1, &x, &y).unwrap().is_zero());
        }
    }

    #[test]
    fn twisted_top_chern() {
        let ctx = SegreContext::new(1).unwrap();
        let tau = GradedPoly::var(VarId::tau(1), 1);
        let x = vars(VarId::x, 1, 1);
        assert_eq!(ctx.top_chern_twist(&x, &tau).unwrap(), p("(tau1+x1)*(1+al*tau1*x1)", 1));
        assert!(ctx.top_chern_twist(&[], &tau).unwrap().is_one());
        for m in 1..=3 {
            let ctx = SegreContext::new(m).unwrap();
            let tau = GradedPoly::var(VarId::tau(1), m);
            ctx.top_chern_twist(&vars(VarId::x, 3, m), &tau).unwrap();
        }
    }

    #[test]
    fn push_of_tensor_examples() {
        let ctx = SegreContext::new(1).unwrap();
        let x = vars(VarId::x, 1, 1);
        let y = vars(VarId::y, 1, 1);
        assert_eq!(ctx.push_twisted_top(0, &x, &y).unwrap(), p("(x1-y1)*(1-al*x1*y1)", 1));
        let x2 = vars(VarId::x, 2, 1);
        assert_eq!(
            ctx.push_twisted_top(1, &x2, &y).unwrap(),
            ctx.segre_virtual(1, &x2, &y).unwrap()
        );
        for s in 0..3 {
            assert_eq!(
                ctx.push_twisted_top(s, &x2, &[]).unwrap(),
                ctx.segre_formula(s - 1, &x2).unwrap()
            );
        }
    }

    #[test]
    fn push_of_tensor_small_grid() {
        for m in 1..=2 {
            let ctx = SegreContext::new(m).unwrap();
            for e in 1..=2 {
                for f in 0..=2 {
                    for s in 0..=2 {
                        let (x, y) = (vars(VarId::x, e, m), vars(VarId::y, f, m));
                        let k = s + i64::from(f) - i64::from(e) + 1;
                        assert_eq!(
                            ctx.push_twisted_top(s, &x, &y).unwrap(),
                            ctx.segre_virtual(k, &x, &y).unwrap(),
                            "m={m} e={e} f={f} s={s}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn series_identity() {
        for m in 1..=2 {
            let ctx = SegreContext::new(m).unwrap();
            for e in 0..=3 {
                let r = ctx
                    .series_identity_residuals(&vars(VarId::x, e, m), -2 * i64::from(m) - 3, i64::from(e) + 3)
                    .unwrap();
                assert!(r.is_clean(), "m={m} e={e}\n{r}");
            }
        }
    }
}
