//! Kempf–Laksov classes for Grassmann and Lagrangian Grassmann bundles, by
//! the closed determinant/Pfaffian formulas and by stagewise pushforward.

use std::collections::HashMap;

use crate::coeffs::gamma_table;
use crate::error::{Error, Result};
use crate::kernels::{multischur_det, multischur_pf, validate_partition, ClassPoly, ClassVar, SymbolKind};
use crate::poly::{GradedPoly, Monomial, VarId};
use crate::segre::SegreContext;
use crate::symfn::{elem_sym, power_sum, virtual_chern, virtual_power_sum, VirtualBundle};

fn sign(i: i64) -> i64 {
    if i.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn strip_zeros(parts: &[i64]) -> Vec<i64> {
    parts.iter().copied().filter(|&p| p != 0).collect()
}

fn check_m(m: u32) -> Result<()> {
    if m == 0 {
        Err(Error::ZeroParameter)
    } else {
        Ok(())
    }
}

/// `Gr_d(E)` with `rk E = n` and a partition in `P_d(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassmannSetup {
    pub n: u32,
    pub d: u32,
    pub lambda: Vec<i64>,
    pub m: u32,
}

impl GrassmannSetup {
    pub fn new(n: u32, d: u32, lambda: &[i64], m: u32) -> Result<Self> {
        check_m(m)?;
        let lambda = strip_zeros(lambda);
        let bad = |reason: String| Error::InvalidPartition {
            parts: lambda.clone(),
            reason,
        };
        if d == 0 || d > n {
            return Err(bad(format!("need 1 <= d <= n, got d={d}, n={n}")));
        }
        if !lambda.is_empty() {
            validate_partition(&lambda, false)?;
            if lambda[0] > i64::from(n - d) {
                return Err(bad(format!("largest part exceeds n-d = {}", n - d)));
            }
        }
        if lambda.len() > d as usize {
            return Err(bad(format!("length exceeds d = {d}")));
        }
        Ok(Self { n, d, lambda, m })
    }

    /// `k_i = lambda_i - i + d`, for `i = 1..r`.
    pub fn superscripts(&self) -> Vec<i64> {
        self.lambda
            .iter()
            .enumerate()
            .map(|(i, &l)| l - (i as i64 + 1) + i64::from(self.d))
            .collect()
    }

    fn rows(&self) -> Vec<(i64, i64)> {
        self.superscripts().into_iter().zip(self.lambda.iter().copied()).collect()
    }
}

/// `LG(E)` with `rk E = 2n` and a strict partition in `SP(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LagrangianSetup {
    pub n: u32,
    pub lambda: Vec<i64>,
    pub m: u32,
}

impl LagrangianSetup {
    pub fn new(n: u32, lambda: &[i64], m: u32) -> Result<Self> {
        check_m(m)?;
        let lambda = strip_zeros(lambda);
        if !lambda.is_empty() {
            validate_partition(&lambda, true)?;
            if lambda[0] > i64::from(n) {
                return Err(Error::InvalidPartition {
                    parts: lambda,
                    reason: format!("largest part exceeds n = {n}"),
                });
            }
        }
        Ok(Self { n, lambda, m })
    }

    pub fn superscripts(&self) -> Vec<i64> {
        self.lambda.iter().map(|l| l - 1).collect()
    }

    fn rows(&self) -> Vec<(i64, i64)> {
        self.superscripts().into_iter().zip(self.lambda.iter().copied()).collect()
    }
}

/// `Det[A_lambda] + al sum_{l=-m+1}^{m-1} (-1)^{m+l} gamma_{m+l} sum_{a<b}
/// Det[rows a, b raised by m+l, m-l]`.
pub fn kl_a_closed(setup: &GrassmannSetup) -> Result<ClassPoly> {
    let m = setup.m;
    let gamma = gamma_table(m)?;
    let rows = setup.rows();
    if rows.is_empty() {
        return Ok(ClassPoly::one(m));
    }
    let mi = i64::from(m);
    let mut corr = ClassPoly::zero(m);
    for l in (-mi + 1)..mi {
        let c = gamma.gamma(mi + l) * sign(mi + l);
        for b in 0..rows.len() {
            for a in 0..b {
                let mut shifted = rows.clone();
                shifted[a].1 += mi + l;
                shifted[b].1 += mi - l;
                corr.add_assign_ref(&multischur_det(SymbolKind::A, &shifted, m).scale_int(c.clone()));
            }
        }
    }
    Ok(multischur_det(SymbolKind::A, &rows, m) + corr.times_alpha())
}

/// `Pf[C_lambda] - 2 al sum_q gamma_{2q-1} sum_{i<j} Pf[rows i, j raised by
/// 2q-1, 2m-2q+1]`.
pub fn kl_c_closed(setup: &LagrangianSetup) -> Result<ClassPoly> {
    let m = setup.m;
    let gamma = gamma_table(m)?;
    let rows = setup.rows();
    if rows.is_empty() {
        return Ok(ClassPoly::one(m));
    }
    let mi = i64::from(m);
    let mut corr = ClassPoly::zero(m);
    for q in 1..=mi {
        for j in 0..rows.len() {
            for i in 0..j {
                let mut shifted = rows.clone();
                shifted[i].1 += 2 * q - 1;
                shifted[j].1 += 2 * mi - 2 * q + 1;
                corr.add_assign_ref(&multischur_pf(SymbolKind::C, &shifted, m)?.scale_int(gamma.gamma(2 * q - 1)));
            }
        }
    }
    Ok(multischur_pf(SymbolKind::C, &rows, m)? - corr.scale_int(2).times_alpha())
}

fn taus(count: usize, m: u32) -> Vec<GradedPoly> {
    (1..=count as u32).map(|i| GradedPoly::var(VarId::tau(i), m)).collect()
}

fn to_class(p: &GradedPoly) -> ClassPoly {
    p.map_vars(|v| match v.family {
        crate::poly::Family::Tau => ClassVar::Tau(v.index),
        _ => unreachable!("stage coefficients only involve tau variables"),
    })
}

/// Replaces, stage by stage from `r` down to 1, each `tau_i^s` by the image
/// `stage(i, s)` of the stage pushforward.
fn eliminate(r: usize, m: u32, mut stage: impl FnMut(usize, i64) -> Result<ClassPoly>) -> Result<ClassPoly> {
    let mut state = ClassPoly::one(m);
    for i in (1..=r).rev() {
        let tau = ClassVar::Tau(i as u32);
        let mut images: HashMap<i64, ClassPoly> = HashMap::new();
        let mut next = ClassPoly::zero(m);
        for (mono, c) in state.terms() {
            let (s, rest) = mono.split_off(&tau);
            if s < 0 {
                return Err(Error::NegativeTauExponent { stage: i, exponent: s });
            }
            if !images.contains_key(&s) {
                images.insert(s, stage(i, s)?);
            }
            let img = &images[&s];
            next.add_assign_ref(&img.mul_monomial(&rest).scale(c));
        }
        state = next;
    }
    Ok(state)
}

/// Stagewise pushforward along the flag tower, using at stage `i`
/// `tau_i^s -> sum_p e_p(-tau_{<i}) (A_{l_i+s-p} + al sum_l gamma_l
/// p_l(-tau_{<i}) A_{l_i+s-p+2m-l})` with superscript `k_i`.
pub fn kl_a_iterated(setup: &GrassmannSetup) -> Result<ClassPoly> {
    let m = setup.m;
    let gamma = gamma_table(m)?;
    let rows = setup.rows();
    let n2 = 2 * i64::from(m);
    let vanish = -n2;
    eliminate(rows.len(), m, |i, s| {
        let (sup, li) = rows[i - 1];
        let neg_tau: Vec<GradedPoly> = taus(i - 1, m).into_iter().map(|t| -t).collect();
        let sym = |idx: i64| -> ClassPoly {
            if idx < vanish {
                ClassPoly::zero(m)
            } else {
                ClassPoly::var(ClassVar::sym(SymbolKind::A, sup, idx), m)
            }
        };
        let mut out = ClassPoly::zero(m);
        for p in 0..i as i64 {
            let mut inner = sym(li + s - p);
            let mut corr = ClassPoly::zero(m);
            for l in 1..n2 {
                let pl = to_class(&power_sum(l, &neg_tau, m));
                corr.add_assign_ref(&(pl * sym(li + s - p + n2 - l)).scale_int(gamma.gamma(l)));
            }
            inner = inner + corr.times_alpha();
            out.add_assign_ref(&(to_class(&elem_sym(p, &neg_tau, m)) * inner));
        }
        Ok(out)
    })
}

/// `H_q(tau_1..tau_j)`: the `u^q` coefficient of `prod_k (1 - tau_k u)/(1 + tau_k u)`.
pub fn h_coefficient(q: i64, vars: &[GradedPoly], m: u32) -> Result<GradedPoly> {
    let neg: Vec<GradedPoly> = vars.iter().map(|v| -v).collect();
    Ok(virtual_chern(q, &VirtualBundle::new(neg, vars.to_vec(), m)?))
}

/// Stagewise pushforward for the Lagrangian tower, with coefficients
/// `c_q(D - D^dual) = H_q(tau_{<i})` and `p_a(D - D^dual) = ((-1)^a - 1)
/// p_a(tau_{<i})`.
pub fn kl_c_iterated(setup: &LagrangianSetup) -> Result<ClassPoly> {
    let m = setup.m;
    let gamma = gamma_table(m)?;
    let rows = setup.rows();
    let n2 = 2 * i64::from(m);
    let vanish = -n2;
    let mut h_cache: HashMap<(usize, i64), ClassPoly> = HashMap::new();
    eliminate(rows.len(), m, |i, s| {
        let (sup, li) = rows[i - 1];
        let tau = taus(i - 1, m);
        let neg: Vec<GradedPoly> = tau.iter().map(|t| -t).collect();
        let d_minus_dual = VirtualBundle::new(neg, tau.clone(), m)?;
        let pa: Vec<ClassPoly> = (0..n2).map(|a| to_class(&virtual_power_sum(a, &d_minus_dual))).collect();
        let sym = |idx: i64| -> ClassPoly {
            if idx < vanish {
                ClassPoly::zero(m)
            } else {
                ClassPoly::var(ClassVar::sym(SymbolKind::C, sup, idx), m)
            }
        };
        let mut out = ClassPoly::zero(m);
        // every symbol below index -2m vanishes, which bounds q
        let q_max = if i == 1 { 0 } else { li + s + 2 * n2 - 1 };
        for q in 0..=q_max {
            let h = match h_cache.get(&(i, q)) {
                Some(h) => h.clone(),
                None => {
                    let h = to_class(&h_coefficient(q, &tau, m)?);
                    h_cache.insert((i, q), h.clone());
                    h
                }
            };
            if h.is_zero() {
                continue;
            }
            let mut inner = sym(li + s - q);
            let mut corr = ClassPoly::zero(m);
            for a in 1..n2 {
                corr.add_assign_ref(&(&pa[a as usize] * &sym(li + s - q + n2 - a)).scale_int(gamma.gamma(a)));
            }
            inner = inner + corr.times_alpha();
            out.add_assign_ref(&(h * inner));
        }
        Ok(out)
    })
}

/// The Grassmann or Lagrangian data needed to specialize symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Setup {
    A(GrassmannSetup),
    C(LagrangianSetup),
}

impl Setup {
    pub fn m(&self) -> u32 {
        match self {
            Setup::A(s) => s.m,
            Setup::C(s) => s.m,
        }
    }
}

fn neg_vars(f: fn(u32) -> VarId, n: u32, m: u32) -> Vec<GradedPoly> {
    (1..=n).map(|i| -GradedPoly::var(f(i), m)).collect()
}

/// Image of a single symbol in the split model: `S` has roots `x_1..x_d`
/// (resp. `L` has `x_1..x_n`) and `E/F^l` has roots `y_1..y_l` (resp.
/// `y_1..y_n, -y_1..-y_l`).
pub fn specialize_symbol(kind: SymbolKind, sup: i64, index: i64, setup: &Setup, ctx: &SegreContext) -> Result<GradedPoly> {
    let m = setup.m();
    match (kind, setup) {
        (SymbolKind::A, Setup::A(g)) => {
            if sup < 0 || sup > i64::from(g.n) {
                return Err(Error::SuperscriptOutOfRange { sup, max: i64::from(g.n) });
            }
            ctx.segre_virtual(index, &neg_vars(VarId::x, g.d, m), &neg_vars(VarId::y, sup as u32, m))
        }
        (SymbolKind::C, Setup::C(c)) => {
            if sup < 0 || sup >= i64::from(c.n) {
                return Err(Error::SuperscriptOutOfRange { sup, max: i64::from(c.n) - 1 });
            }
            let mut f = neg_vars(VarId::y, c.n, m);
            f.extend((1..=sup as u32).map(|i| GradedPoly::var(VarId::y(i), m)));
            ctx.segre_virtual(index, &neg_vars(VarId::x, c.n, m), &f)
        }
        _ => Err(Error::Precondition("symbol kind does not match the setup".into())),
    }
}

/// Substitutes every symbol by its split-model Segre class.
pub fn specialize_split(c: &ClassPoly, setup: &Setup) -> Result<GradedPoly> {
    let ctx = SegreContext::new(setup.m())?;
    let mut cache: HashMap<ClassVar, GradedPoly> = HashMap::new();
    c.eval(|v| {
        if let Some(p) = cache.get(v) {
            return Ok(p.clone());
        }
        let img = match v {
            ClassVar::Tau(_) => return Err(Error::Precondition("tau variables cannot be specialized".into())),
            ClassVar::Sym(s) => specialize_symbol(s.kind, s.sup, s.index, setup, &ctx)?,
        };
        cache.insert(*v, img.clone());
        Ok(img)
    })
}

/// The classical (`al = 0`) part.
pub fn at_alpha_zero(c: &ClassPoly) -> ClassPoly {
    c.alpha_free_part()
}

/// Whether a monomial of a class polynomial carries exactly one symbol per
/// row, each with the row's superscript.
pub fn is_row_multilinear(c: &ClassPoly, superscripts: &[i64]) -> bool {
    c.terms().all(|(mono, _): (&Monomial<ClassVar>, _)| {
        let mut sups: Vec<i64> = mono
            .exponents()
            .iter()
            .flat_map(|(v, e)| match v {
                ClassVar::Sym(s) => vec![s.sup; *e as usize],
                ClassVar::Tau(_) => vec![i64::MIN],
            })
            .collect();
        let mut want = superscripts.to_vec();
        sups.sort_unstable();
        want.sort_unstable();
        sups == want
    })
}
