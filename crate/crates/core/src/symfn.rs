//! Symmetric polynomials on root lists and Chern data of virtual bundles.

use crate::error::{Error, Result};
use crate::poly::{GradedPoly, Monomial, Poly, Variable};
use crate::report::ResidualReport;

/// `e_k(roots)`; `e_0 = 1`, negative `k` gives 0.
pub fn elem_sym(k: i64, roots: &[GradedPoly], m: u32) -> GradedPoly {
    if k < 0 {
        return GradedPoly::zero(m);
    }
    let k = k as usize;
    let mut e = vec![GradedPoly::zero(m); k + 1];
    e[0] = GradedPoly::one(m);
    for (n, r) in roots.iter().enumerate() {
        for j in (1..=k.min(n + 1)).rev() {
            let t = &e[j - 1] * r;
            e[j].add_assign_ref(&t);
        }
    }
    e.swap_remove(k)
}

/// `h_k(roots)`; `h_0 = 1`, negative `k` gives 0.
pub fn complete_sym(k: i64, roots: &[GradedPoly], m: u32) -> GradedPoly {
    if k < 0 {
        return GradedPoly::zero(m);
    }
    let k = k as usize;
    let mut h = vec![GradedPoly::zero(m); k + 1];
    h[0] = GradedPoly::one(m);
    for r in roots {
        for j in 1..=k {
            let t = &h[j - 1] * r;
            h[j].add_assign_ref(&t);
        }
    }
    h.swap_remove(k)
}

/// `p_k(roots)`; `p_0 = 1` by convention, negative `k` gives 0.
pub fn power_sum(k: i64, roots: &[GradedPoly], m: u32) -> GradedPoly {
    match k {
        k if k < 0 => GradedPoly::zero(m),
        0 => GradedPoly::one(m),
        k => {
            let mut out = GradedPoly::zero(m);
            for r in roots {
                out.add_assign_ref(&r.pow(k as u32));
            }
            out
        }
    }
}

fn sign(i: i64) -> i64 {
    if i.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Residuals of the four Newton identities for `1 <= k <= k_max`.
pub fn newton_identity_residuals(k_max: i64, roots: &[GradedPoly], m: u32) -> ResidualReport {
    let e: Vec<_> = (0..=k_max).map(|k| elem_sym(k, roots, m)).collect();
    let h: Vec<_> = (0..=k_max).map(|k| complete_sym(k, roots, m)).collect();
    let p: Vec<_> = (0..=k_max).map(|k| power_sum(k, roots, m)).collect();
    let mut report = ResidualReport::new();
    for k in 1..=k_max {
        let ku = k as usize;
        // a) p_k = (-1)^{k+1} k e_k - sum_{i=1}^{k-1} (-1)^i p_{k-i} e_i
        let mut rhs = e[ku].scale_int(sign(k + 1) * k);
        for i in 1..ku {
            rhs = rhs - (&p[ku - i] * &e[i]).scale_int(sign(i as i64));
        }
        report.push(format!("a) k={k}"), &(&p[ku] - &rhs));

        // b) both sums for k e_k
        let lhs = e[ku].scale_int(k);
        let mut first = GradedPoly::zero(m);
        let mut second = GradedPoly::zero(m);
        for i in 1..=ku {
            first.add_assign_ref(&(&p[i] * &e[ku - i]).scale_int(sign(i as i64 + 1)));
        }
        for i in 0..ku {
            second.add_assign_ref(&(&p[ku - i] * &e[i]).scale_int(sign(k + 1 - i as i64)));
        }
        report.push(format!("b) first sum k={k}"), &(&lhs - &first));
        report.push(format!("b) second sum k={k}"), &(&lhs - &second));

        // c) p_k = k h_k - sum_{i=1}^{k-1} p_i h_{k-i}
        let mut rhs = h[ku].scale_int(k);
        for i in 1..ku {
            rhs = rhs - &p[i] * &h[ku - i];
        }
        report.push(format!("c) k={k}"), &(&p[ku] - &rhs));

        // d) both sums for k h_k
        let lhs = h[ku].scale_int(k);
        let mut first = GradedPoly::zero(m);
        let mut second = GradedPoly::zero(m);
        for i in 1..=ku {
            first.add_assign_ref(&(&p[i] * &h[ku - i]));
        }
        for i in 0..ku {
            second.add_assign_ref(&(&p[ku - i] * &h[i]));
        }
        report.push(format!("d) first sum k={k}"), &(&lhs - &first));
        report.push(format!("d) second sum k={k}"), &(&lhs - &second));
    }
    report
}

/// A formal difference `E - F` given by Chern roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualBundle {
    m: u32,
    pos: Vec<GradedPoly>,
    neg: Vec<GradedPoly>,
}

impl VirtualBundle {
    pub fn new(pos: Vec<GradedPoly>, neg: Vec<GradedPoly>, m: u32) -> Result<Self> {
        for r in pos.iter().chain(&neg) {
            if r.m() != m {
                return Err(Error::MixedParameter { left: m, right: r.m() });
            }
        }
        Ok(Self { m, pos, neg })
    }

    /// A genuine bundle with the given roots.
    pub fn bundle(roots: Vec<GradedPoly>, m: u32) -> Result<Self> {
        Self::new(roots, Vec::new(), m)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn pos(&self) -> &[GradedPoly] {
        &self.pos
    }

    pub fn neg(&self) -> &[GradedPoly] {
        &self.neg
    }

    pub fn rank(&self) -> i64 {
        self.pos.len() as i64 - self.neg.len() as i64
    }

    /// Every root `r` replaced by `-r`.
    pub fn dual(&self) -> Self {
        Self {
            m: self.m,
            pos: self.pos.iter().map(|r| -r).collect(),
            neg: self.neg.iter().map(|r| -r).collect(),
        }
    }

    /// `E - F` as `(E + F^-) - (F + E^-)` for virtual summands.
    pub fn difference(&self, other: &Self) -> Self {
        let mut pos = self.pos.clone();
        pos.extend(other.neg.iter().cloned());
        let mut neg = self.neg.clone();
        neg.extend(other.pos.iter().cloned());
        Self { m: self.m, pos, neg }
    }
}

/// `c_k(E - F) = sum_j e_{k-j}(E) (-1)^j h_j(F)`.
pub fn virtual_chern(k: i64, v: &VirtualBundle) -> GradedPoly {
    let m = v.m;
    if k < 0 {
        return GradedPoly::zero(m);
    }
    let mut out = GradedPoly::zero(m);
    for j in 0..=k {
        let e = elem_sym(k - j, &v.pos, m);
        if e.is_zero() {
            continue;
        }
        out.add_assign_ref(&(e * complete_sym(j, &v.neg, m)).scale_int(sign(j)));
    }
    out
}

/// `c_t(E - F)` truncated after `t^order`, as a polynomial in `t`.
pub fn virtual_chern_series<V: Variable>(
    v: &VirtualBundle,
    order: i64,
    t: V,
    embed: impl Fn(&GradedPoly) -> Poly<V>,
) -> Poly<V> {
    let mut out = Poly::zero(v.m);
    for k in 0..=order {
        let c = embed(&virtual_chern(k, v));
        out.add_assign_ref(&c.mul_monomial(&Monomial::var(t.clone(), k)));
    }
    out
}

/// `p_k(E - F) = p_k(E) - p_k(F)` for `k >= 1`.
pub fn virtual_power_sum(k: i64, v: &VirtualBundle) -> GradedPoly {
    if k < 1 {
        return if k == 0 {
            GradedPoly::one(v.m)
        } else {
            GradedPoly::zero(v.m)
        };
    }
    power_sum(k, &v.pos, v.m) - power_sum(k, &v.neg, v.m)
}

/// `p_k(E - F)` through the recursion expressing `p_k` in the `e`-basis,
/// with `e_i` evaluated as `c_i(E - F)`.
pub fn virtual_power_sum_via_chern(k: i64, v: &VirtualBundle) -> GradedPoly {
    let m = v.m;
    if k < 1 {
        return virtual_power_sum(k, v);
    }
    let c: Vec<_> = (0..=k).map(|i| virtual_chern(i, v)).collect();
    let mut p: Vec<GradedPoly> = vec![GradedPoly::one(m)];
    for n in 1..=k {
        let nu = n as usize;
        let mut val = c[nu].scale_int(sign(n + 1) * n);
        for i in 1..nu {
            val = val - (&p[nu - i] * &c[i]).scale_int(sign(i as i64));
        }
        p.push(val);
    }
    p.swap_remove(k as usize)
}

/// Checks both routes to `p_k(E - F)` and returns the common value.
pub fn virtual_power_sum_checked(k: i64, v: &VirtualBundle) -> Result<GradedPoly> {
    let direct = virtual_power_sum(k, v);
    let other = virtual_power_sum_via_chern(k, v);
    if direct != other {
        return Err(Error::PathDisagreement {
            what: format!("virtual power sum p_{k}"),
            residual: (&direct - &other).to_string(),
        });
    }
    Ok(direct)
}

/// Inverse of a power series in `var` modulo `var^{order+1}`; the constant
/// term must be a unit of the coefficient ring.
pub fn series_inverse<V: Variable>(p: &Poly<V>, var: &V, order: i64) -> Result<Poly<V>> {
    let m = p.m();
    let coeffs = p.coefficients_in(var);
    if coeffs.keys().any(|&e| e < 0) {
        return Err(Error::NegativeExponent(var.to_string()));
    }
    let c0 = coeffs.get(&0).cloned().unwrap_or_else(|| Poly::zero(m));
    // c0 = a + al*b with a = +-1 a constant and b arbitrary; its inverse is a - al*b
    let free = c0.alpha_free_part();
    let unit = free.constant_term();
    if free.len() != 1 || !free.coeff(&Monomial::one()).a().magnitude().eq(&1u32.into()) {
        return Err(Error::NonUnitConstant(c0.to_string()));
    }
    let a = unit.a().clone();
    let inv0 = Poly::from_int(a.clone(), m) - c0.alpha_part().times_alpha();
    let mut out: Vec<Poly<V>> = vec![inv0.clone()];
    for n in 1..=order {
        let mut acc = Poly::zero(m);
        for j in 1..=n {
            if let Some(cj) = coeffs.get(&j) {
                acc.add_assign_ref(&(cj * &out[(n - j) as usize]));
            }
        }
        out.push(-(&inv0 * &acc));
    }
    let mut res = Poly::zero(m);
    for (n, c) in out.into_iter().enumerate() {
        res.add_assign_ref(&c.mul_monomial(&Monomial::var(var.clone(), n as i64)));
    }
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarId;

    fn p(s: &str, m: u32) -> GradedPoly {
        GradedPoly::parse(s, m).unwrap()
    }

    fn xs(n: u32, m: u32) -> Vec<GradedPoly> {
        (1..=n).map(|i| GradedPoly::var(VarId::x(i), m)).collect()
    }

    fn ys(n: u32, m: u32) -> Vec<GradedPoly> {
        (1..=n).map(|i| GradedPoly::var(VarId::y(i), m)).collect()
    }

    #[test]
    fn basic_values() {
        let x = xs(2, 1);
        assert_eq!(complete_sym(2, &x, 1), p("x1^2+x1*x2+x2^2", 1));
        assert!(elem_sym(3, &x, 1).is_zero());
        assert_eq!(power_sum(2, &x, 1), p("x1^2+x2^2", 1));
        assert!(power_sum(0, &x, 1).is_one());
        assert!(elem_sym(-1, &x, 1).is_zero());
        assert!(complete_sym(-2, &x, 1).is_zero());
        assert!(power_sum(-1, &x, 1).is_zero());
    }

    #[test]
    fn newton_small() {
        for n in 0..=4 {
            let r = newton_identity_residuals(8, &xs(n, 2), 2);
            assert!(r.is_clean(), "{r}");
        }
        // identity c) at k = 3 by direct expansion in three variables
        let x = xs(3, 1);
        let rhs = complete_sym(3, &x, 1).scale_int(3)
            - &power_sum(1, &x, 1) * &complete_sym(2, &x, 1)
            - &power_sum(2, &x, 1) * &complete_sym(1, &x, 1);
        assert_eq!(rhs, p("x1^3+x2^3+x3^3", 1));
    }

    #[test]
    fn chern_of_differences() {
        let v = VirtualBundle::new(xs(1, 1), ys(1, 1), 1).unwrap();
        assert_eq!(virtual_chern(1, &v), p("x1-y1", 1));
        let e = VirtualBundle::new(xs(2, 1), xs(2, 1), 1).unwrap();
        for k in 1..5 {
            assert!(virtual_chern(k, &e).is_zero());
        }
        let w = VirtualBundle::new(xs(2, 1), ys(1, 1), 1).unwrap();
        assert_eq!(virtual_chern(2, &w), p("x1*x2-(x1+x2)*y1+y1^2", 1));
        let g = VirtualBundle::bundle(xs(3, 1), 1).unwrap();
        for k in 0..5 {
            assert_eq!(virtual_chern(k, &g), elem_sym(k, &xs(3, 1), 1));
        }
    }

    #[test]
    fn chern_series_matches_product_times_inverse() {
        let m = 1;
        let t = VarId::t(1);
        let v = VirtualBundle::new(xs(2, m), ys(2, m), m).unwrap();
        let series = virtual_chern_series(&v, 5, t, |q| q.clone());
        let tt = GradedPoly::var(t, m);
        let num = xs(2, m)
            .iter()
            .fold(GradedPoly::one(m), |acc, r| acc * (GradedPoly::one(m) + r * &tt));
        let den = ys(2, m)
            .iter()
            .fold(GradedPoly::one(m), |acc, r| acc * (GradedPoly::one(m) + r * &tt));
        let mut oracle = num * series_inverse(&den, &t, 5).unwrap();
        oracle.retain(|mono| mono.exponent(&t) <= 5);
        assert_eq!(series, oracle);
    }

    #[test]
    fn series_inverse_handles_alpha_units() {
        let m = 1;
        let t = VarId::t(1);
        let f = p("-1+al*x1+2*t1+al*t1^2", m);
        let g = series_inverse(&f, &t, 6).unwrap();
        let mut prod = &f * &g;
        prod.retain(|mono| mono.exponent(&t) <= 6);
        assert!(prod.is_one());
        assert!(series_inverse(&p("2+t1", m), &t, 3).is_err());
        assert!(series_inverse(&p("x1+t1", m), &t, 3).is_err());
    }

    #[test]
    fn power_sums_of_differences() {
        let v = VirtualBundle::new(xs(1, 1), ys(1, 1), 1).unwrap();
        assert_eq!(virtual_power_sum(2, &v), p("x1^2-y1^2", 1));
        let w = VirtualBundle::new(xs(3, 2), ys(2, 2), 2).unwrap();
        assert_eq!(
            virtual_power_sum(1, &w),
            elem_sym(1, &xs(3, 2), 2) - elem_sym(1, &ys(2, 2), 2)
        );
        for k in 1..=6 {
            virtual_power_sum_checked(k, &w).unwrap();
            let same = VirtualBundle::new(xs(2, 2), xs(2, 2), 2).unwrap();
            assert!(virtual_power_sum(k, &same).is_zero());
        }
    }

    #[test]
    fn dual_is_involution() {
        let v = VirtualBundle::new(xs(2, 1), ys(3, 1), 1).unwrap();
        assert_eq!(v.dual().dual(), v);
        assert_eq!(v.rank(), -1);
    }
}
