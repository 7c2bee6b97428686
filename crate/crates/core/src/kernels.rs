//! Kernel Laurent polynomials in `t_1..t_r`, the specialization map to class
//! symbols, multi-Schur determinants and Pfaffians.

use std::cmp::{Ordering, Reverse};
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::coeffs::{gamma_table, Q2mScalar};
use crate::error::{Error, Result};
use crate::poly::{GradedPoly, Monomial, Poly, VarId, Variable};
use crate::report::ResidualReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymbolKind {
    A,
    C,
}

impl SymbolKind {
    fn letter(self) -> &'static str {
        match self {
            SymbolKind::A => "A",
            SymbolKind::C => "C",
        }
    }
}

/// `A^{(sup)}_{index}` or `C^{(sup)}_{index}`: an inert Segre-type class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ClassSymbol {
    pub kind: SymbolKind,
    pub sup: i64,
    pub index: i64,
}

impl Ord for ClassSymbol {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.kind, Reverse(self.sup), self.index).cmp(&(other.kind, Reverse(other.sup), other.index))
    }
}

impl PartialOrd for ClassSymbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassVar {
    Tau(u32),
    Sym(ClassSymbol),
}

impl ClassVar {
    pub fn sym(kind: SymbolKind, sup: i64, index: i64) -> Self {
        ClassVar::Sym(ClassSymbol { kind, sup, index })
    }
}

impl fmt::Display for ClassVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassVar::Tau(i) => write!(f, "tau{i}"),
            ClassVar::Sym(s) => write!(f, "{}[{};{}]", s.kind.letter(), s.sup, s.index),
        }
    }
}

impl Variable for ClassVar {
    fn weight(&self) -> i64 {
        match self {
            ClassVar::Tau(_) => 1,
            ClassVar::Sym(s) => s.index,
        }
    }

    fn laurent(&self) -> bool {
        false
    }

    fn latex(&self) -> String {
        match self {
            ClassVar::Tau(i) => format!("\\tau_{{{i}}}"),
            ClassVar::Sym(s) => format!("\\mathcal{{{}}}^{{({})}}_{{{}}}", s.kind.letter(), s.sup, s.index),
        }
    }

    fn parse_token(token: &str) -> Option<Self> {
        if let Some(i) = token.strip_prefix("tau") {
            return i.parse().ok().map(ClassVar::Tau);
        }
        let kind = match token.get(..2)? {
            "A[" => SymbolKind::A,
            "C[" => SymbolKind::C,
            _ => return None,
        };
        let (sup, index) = token[2..].strip_suffix(']')?.split_once(';')?;
        Some(ClassVar::sym(kind, sup.trim().parse().ok()?, index.trim().parse().ok()?))
    }
}

pub type ClassPoly = Poly<ClassVar>;

/// Superscripts per row position and the index below which symbols vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSymbolFamily {
    pub kind: SymbolKind,
    pub superscripts: Vec<i64>,
    pub vanish_below: i64,
}

impl ClassSymbolFamily {
    pub fn new(kind: SymbolKind, superscripts: Vec<i64>, m: u32) -> Self {
        Self {
            kind,
            superscripts,
            vanish_below: -2 * i64::from(m),
        }
    }

    /// The symbol of row `row` (0-based) at `index`, or `None` if it vanishes.
    pub fn symbol(&self, row: usize, index: i64) -> Option<ClassVar> {
        (index >= self.vanish_below).then(|| ClassVar::sym(self.kind, self.superscripts[row], index))
    }
}

/// A finite Laurent polynomial in `t_1..t_r` whose support, shifted by
/// `shift`, lies in the cone `s_1 >= 0, s_1+s_2 >= 0, ...`. Exponents below
/// `lower_bound` have been discarded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeLaurentSeries {
    pub r: usize,
    pub m: u32,
    pub poly: GradedPoly,
    pub shift: Vec<i64>,
    pub lower_bound: Option<i64>,
}

impl ConeLaurentSeries {
    fn new(r: usize, poly: GradedPoly, lower_bound: Option<i64>) -> Self {
        Self {
            r,
            m: poly.m(),
            poly,
            shift: vec![0; r],
            lower_bound,
        }
    }

    pub fn exponents(mono: &Monomial<VarId>, r: usize) -> Vec<i64> {
        (1..=r as u32).map(|i| mono.exponent(&VarId::t(i))).collect()
    }

    /// Whether every term satisfies the cone inequalities after shifting.
    pub fn in_cone(&self) -> bool {
        self.poly.terms().all(|(mono, _)| {
            let mut acc = 0;
            Self::exponents(mono, self.r)
                .iter()
                .zip(&self.shift)
                .all(|(s, sh)| {
                    acc += s + sh;
                    acc >= 0
                })
        })
    }
}

fn t_monomial(exps: &[i64]) -> Monomial<VarId> {
    Monomial::from_pairs(exps.iter().enumerate().map(|(i, &e)| (VarId::t(i as u32 + 1), e)))
}

fn sign(i: i64) -> i64 {
    if i.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub fn validate_partition(parts: &[i64], strict: bool) -> Result<()> {
    let bad = |reason: &str| Error::InvalidPartition {
        parts: parts.to_vec(),
        reason: reason.into(),
    };
    if parts.is_empty() {
        return Err(bad("empty"));
    }
    if parts.iter().any(|&p| p <= 0) {
        return Err(bad("parts must be positive"));
    }
    for w in parts.windows(2) {
        if strict && w[0] <= w[1] {
            return Err(bad("parts must be strictly decreasing"));
        }
        if w[0] < w[1] {
            return Err(bad("parts must be weakly decreasing"));
        }
    }
    Ok(())
}

/// `prod t_i^{l_i} prod_{i<j} (1 - t_i/t_j) (1 + al sum_{l=-m+1}^{m-1}
/// (-1)^{m+l} gamma_{m+l} sum_{i<j} t_i^{m+l} t_j^{m-l})`.
pub fn kernel_a(lambda: &[i64], m: u32) -> Result<ConeLaurentSeries> {
    validate_partition(lambda, false)?;
    let r = lambda.len();
    let mut base = GradedPoly::monomial(t_monomial(lambda), Q2mScalar::one(m));
    for j in 0..r {
        for i in 0..j {
            let ratio = GradedPoly::monomial(
                Monomial::from_pairs([(VarId::t(i as u32 + 1), 1), (VarId::t(j as u32 + 1), -1)]),
                Q2mScalar::one(m),
            );
            base = base * (GradedPoly::one(m) - ratio);
        }
    }
    let corr = pair_correction_a(r, m)?;
    Ok(ConeLaurentSeries::new(r, &base + (&base * &corr).times_alpha(), None))
}

fn pair_correction_a(r: usize, m: u32) -> Result<GradedPoly> {
    let gamma = gamma_table(m)?;
    let mi = i64::from(m);
    let mut corr = GradedPoly::zero(m);
    for l in (-mi + 1)..mi {
        let c = Q2mScalar::from_int(gamma.gamma(mi + l) * sign(mi + l), m);
        for j in 0..r {
            for i in 0..j {
                let mut e = vec![0; r];
                e[i] = mi + l;
                e[j] = mi - l;
                corr.add_term(t_monomial(&e), &c);
            }
        }
    }
    Ok(corr)
}

/// `Det[t^l]`: the determinant with `(i, j)` entry `t_i^{l_i + j - i}`.
pub fn det_t(ell: &[i64], m: u32) -> GradedPoly {
    let r = ell.len();
    let mut out = GradedPoly::zero(m);
    for (perm, sgn) in permutations(r) {
        let e: Vec<i64> = (0..r).map(|i| ell[i] + perm[i] as i64 - i as i64).collect();
        out.add_term(t_monomial(&e), &Q2mScalar::from_int(sgn, m));
    }
    out
}

/// All permutations of `0..n` with their signs.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], sgn: i64, out: &mut Vec<(Vec<usize>, i64)>) {
        let n = used.len();
        if prefix.len() == n {
            out.push((prefix.clone(), sgn));
            return;
        }
        for v in 0..n {
            if used[v] {
                continue;
            }
            // inversions created by placing v after the elements already used
            let inv = used[v + 1..].iter().filter(|&&u| u).count() as i64;
            used[v] = true;
            prefix.push(v);
            rec(prefix, used, sgn * sign(inv), out);
            prefix.pop();
            used[v] = false;
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], 1, &mut out);
    out
}

/// Residual of `kernel_A = Det[t^l] + al sum_l (-1)^{m+l} gamma_{m+l} sum_{a<b}
/// Det[l with rows a, b raised by m+l, m-l]`.
pub fn vandermonde_identity_check(lambda: &[i64], m: u32) -> Result<ResidualReport> {
    let gamma = gamma_table(m)?;
    let r = lambda.len();
    let lhs = kernel_a(lambda, m)?.poly;
    let mi = i64::from(m);
    let mut corr = GradedPoly::zero(m);
    for l in (-mi + 1)..mi {
        let c = gamma.gamma(mi + l) * sign(mi + l);
        for b in 0..r {
            for a in 0..b {
                let mut ell = lambda.to_vec();
                ell[a] += mi + l;
                ell[b] += mi - l;
                corr.add_assign_ref(&det_t(&ell, m).scale_int(c.clone()));
            }
        }
    }
    let rhs = det_t(lambda, m) + corr.times_alpha();
    let mut report = ResidualReport::new();
    report.push(format!("vandermonde {lambda:?} m={m}"), &(lhs - rhs));
    Ok(report)
}

/// Expansion of `prod t^l prod_{i<j} (1 - t_i/t_j)/(1 + t_i/t_j)` keeping
/// exactly the terms whose every exponent is at least `lower`.
///
/// Variables are processed from `t_r` down to `t_2`; once the pair factors
/// `(i, j)` for `i < j` are chosen the exponent of `t_j` is final, so the
/// number of powers drawn from those factors is bounded by the budget
/// `exponent_j - lower`.
pub fn kernel_c_base(ell: &[i64], m: u32, lower: i64) -> GradedPoly {
    let r = ell.len();
    let mut states: HashMap<Vec<i64>, BigInt> = HashMap::new();
    states.insert(ell.to_vec(), BigInt::one());
    for j in (1..r).rev() {
        let mut next: HashMap<Vec<i64>, BigInt> = HashMap::new();
        for (exps, coeff) in states {
            let budget = exps[j] - lower;
            if budget < 0 {
                continue;
            }
            let mut ks = vec![0i64; j];
            distribute(&mut ks, 0, budget, &mut |ks| {
                let mut c = coeff.clone();
                let mut e = exps.clone();
                for (i, &k) in ks.iter().enumerate() {
                    if k > 0 {
                        c *= 2 * sign(k);
                        e[i] += k;
                        e[j] -= k;
                    }
                }
                *next.entry(e).or_insert_with(BigInt::zero) += c;
            });
        }
        next.retain(|_, c| !c.is_zero());
        states = next;
    }
    let mut out = GradedPoly::zero(m);
    for (exps, c) in states {
        if exps.iter().all(|&e| e >= lower) {
            out.add_term(t_monomial(&exps), &Q2mScalar::from_int(c, m));
        }
    }
    out
}

/// Calls `f` on every vector of nonnegative entries from position `pos` on
/// whose sum is at most `budget`.
fn distribute(ks: &mut Vec<i64>, pos: usize, budget: i64, f: &mut impl FnMut(&[i64])) {
    if pos == ks.len() {
        f(ks);
        return;
    }
    for k in 0..=budget {
        ks[pos] = k;
        distribute(ks, pos + 1, budget - k, f);
    }
    ks[pos] = 0;
}

/// `sum_{q=1}^m gamma_{2q-1} sum_{i<j} t_i^{2q-1} t_j^{2m-2q+1}`.
fn pair_correction_c(r: usize, m: u32) -> Result<GradedPoly> {
    let gamma = gamma_table(m)?;
    let mi = i64::from(m);
    let mut corr = GradedPoly::zero(m);
    for q in 1..=mi {
        let c = Q2mScalar::from_int(gamma.gamma(2 * q - 1), m);
        for j in 0..r {
            for i in 0..j {
                let mut e = vec![0; r];
                e[i] = 2 * q - 1;
                e[j] = 2 * mi - 2 * q + 1;
                corr.add_term(t_monomial(&e), &c);
            }
        }
    }
    Ok(corr)
}

/// The type C kernel times `1 - 2 al sum_q gamma_{2q-1} sum_{i<j} t_i^{2q-1}
/// t_j^{2m-2q+1}`, with every term having an exponent below `-2m - margin`
/// discarded.
pub fn kernel_c(lambda: &[i64], m: u32, margin: i64) -> Result<ConeLaurentSeries> {
    validate_partition(lambda, true)?;
    let r = lambda.len();
    let keep = -2 * i64::from(m) - margin;
    let lower = keep - (2 * i64::from(m) - 1);
    let base = kernel_c_base(lambda, m, lower);
    let corr = pair_correction_c(r, m)?;
    let mut full = &base - (&base * &corr).scale_int(2).times_alpha();
    full.retain(|mono| ConeLaurentSeries::exponents(mono, r).iter().all(|&e| e >= keep));
    Ok(ConeLaurentSeries::new(r, full, Some(keep)))
}

/// Residual of the type C kernel against `Pf[t^l] - 2 al sum_q gamma_{2q-1}
/// sum_{i<j} Pf[t^l with rows i, j raised by 2q-1, 2m-2q+1]`, all truncated at
/// exponent `-2m`.
pub fn pfaffian_identity_check(lambda: &[i64], m: u32) -> Result<ResidualReport> {
    let gamma = gamma_table(m)?;
    let lhs = kernel_c(lambda, m, 0)?.poly;
    let mi = i64::from(m);
    let lower = -2 * mi;
    let r = lambda.len();
    let mut corr = GradedPoly::zero(m);
    for q in 1..=mi {
        for j in 0..r {
            for i in 0..j {
                let mut ell = lambda.to_vec();
                ell[i] += 2 * q - 1;
                ell[j] += 2 * mi - 2 * q + 1;
                corr.add_assign_ref(&kernel_c_base(&ell, m, lower).scale_int(gamma.gamma(2 * q - 1)));
            }
        }
    }
    let rhs = kernel_c_base(lambda, m, lower) - corr.scale_int(2).times_alpha();
    let mut report = ResidualReport::new();
    report.push(format!("pfaffian kernel {lambda:?} m={m}"), &(lhs - rhs));
    Ok(report)
}

/// Sends `t_j^s` to `tau_j^s` for `j <= prefix` and to the row-`j` symbol of
/// index `s` otherwise; symbols below the vanishing threshold kill the term.
pub fn phi(series: &GradedPoly, r: usize, family: &ClassSymbolFamily, prefix: usize) -> Result<ClassPoly> {
    let m = series.m();
    let mut out = ClassPoly::zero(m);
    'terms: for (mono, c) in series.terms() {
        let exps = ConeLaurentSeries::exponents(mono, r);
        let mut pairs = Vec::with_capacity(r);
        for (j, &s) in exps.iter().enumerate() {
            if j < prefix {
                if s < 0 {
                    return Err(Error::NegativeTauExponent { stage: j + 1, exponent: s });
                }
                pairs.push((ClassVar::Tau(j as u32 + 1), s));
            } else {
                match family.symbol(j, s) {
                    Some(sym) => pairs.push((sym, 1)),
                    None => continue 'terms,
                }
            }
        }
        out.add_term(Monomial::from_pairs(pairs), c);
    }
    Ok(out)
}

/// The multi-Schur determinant `det(c^{(i)}_{l_i + j - i})` with row `i`
/// drawn from the symbols of superscript `rows[i].0` and `l_i = rows[i].1`.
pub fn multischur_det(kind: SymbolKind, rows: &[(i64, i64)], m: u32) -> ClassPoly {
    let family = ClassSymbolFamily::new(kind, rows.iter().map(|r| r.0).collect(), m);
    let mut out = ClassPoly::zero(m);
    'perms: for (perm, sgn) in permutations(rows.len()) {
        let mut pairs = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            match family.symbol(i, row.1 + perm[i] as i64 - i as i64) {
                Some(s) => pairs.push((s, 1)),
                None => continue 'perms,
            }
        }
        out.add_term(Monomial::from_pairs(pairs), &Q2mScalar::from_int(sgn, m));
    }
    out
}

/// The multi-Schur Pfaffian, defined as the image under `phi` of the
/// expanded kernel `prod t^l prod_{i<j} (1 - t_i/t_j)/(1 + t_i/t_j)`.
pub fn multischur_pf(kind: SymbolKind, rows: &[(i64, i64)], m: u32) -> Result<ClassPoly> {
    if rows.is_empty() {
        return Ok(ClassPoly::one(m));
    }
    let ell: Vec<i64> = rows.iter().map(|r| r.1).collect();
    let family = ClassSymbolFamily::new(kind, rows.iter().map(|r| r.0).collect(), m);
    let base = kernel_c_base(&ell, m, family.vanish_below);
    phi(&base, rows.len(), &family, 0)
}

/// `sum_{j>=2} (-1)^j Pf[row 1, row j] Pf[other rows]`, expanding recursively
/// down to two-row Pfaffians; `rows.len()` must be even.
pub fn pfaffian_recursion(kind: SymbolKind, rows: &[(i64, i64)], m: u32) -> Result<ClassPoly> {
    if rows.len() % 2 != 0 {
        return Err(Error::Precondition("the Pfaffian recursion needs an even number of rows".into()));
    }
    if rows.len() <= 2 {
        return multischur_pf(kind, rows, m);
    }
    let mut out = ClassPoly::zero(m);
    for j in 1..rows.len() {
        let pair = multischur_pf(kind, &[rows[0], rows[j]], m)?;
        let rest: Vec<(i64, i64)> = rows[1..]
            .iter()
            .enumerate()
            .filter(|(i, _)| i + 1 != j)
            .map(|(_, r)| *r)
            .collect();
        let term = pair * pfaffian_recursion(kind, &rest, m)?;
        // rows are 1-based in the sign (-1)^j, so row index j here is j+1
        out.add_assign_ref(&term.scale_int(sign(j as i64 + 1)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tp(s: &str, m: u32) -> GradedPoly {
        GradedPoly::parse(s, m).unwrap()
    }

    fn cp(s: &str, m: u32) -> ClassPoly {
        ClassPoly::parse(s, m).unwrap()
    }

    #[test]
    fn class_symbol_text_round_trip() {
        let f = cp("A[2;1]*A[1;1]-A[2;2]*A[1;0]+3*al*tau1^2*C[0;-2]", 1);
        assert_eq!(ClassPoly::parse(&f.to_string(), 1).unwrap(), f);
        let g = multischur_det(SymbolKind::A, &[(2, 1), (1, 1)], 1);
        assert_eq!(g.to_string(), "A[2;1]*A[1;1]-A[2;2]*A[1;0]");
        assert_eq!(
            ClassVar::sym(SymbolKind::C, 3, -1).latex(),
            "\\mathcal{C}^{(3)}_{-1}"
        );
    }

    #[test]
    fn kernel_a_examples() {
        assert_eq!(kernel_a(&[3], 2).unwrap().poly, tp("t1^3", 2));
        let k = kernel_a(&[2, 1], 1).unwrap();
        assert_eq!(
            k.poly,
            tp("t1^2*t2-t1^3-al*(t1^3*t2^2-t1^4*t2)", 1)
        );
        assert!(k.in_cone());
        for lam in [[3, 1, 1], [2, 2, 1]] {
            let k = kernel_a(&lam, 2).unwrap();
            assert_eq!(
                k.poly.homogeneous_degree(),
                crate::poly::Homogeneity::Degree(lam.iter().sum())
            );
            assert!(k.in_cone());
        }
        assert!(kernel_a(&[1, 2], 1).is_err());
    }

    #[test]
    fn vandermonde_cases() {
        for (lam, m) in [(vec![1, 1], 1), (vec![4], 3), (vec![2, 1, 1], 2), (vec![3, 3, 2, 1], 3)] {
            let r = vandermonde_identity_check(&lam, m).unwrap();
            assert!(r.is_clean(), "{r}");
        }
    }

    #[test]
    fn two_row_c_kernel_is_geometric() {
        // (1 - z)/(1 + z) = 1 + 2 sum_{k>=1} (-z)^k, z = t1/t2, truncated at t2^-2
        let m = 1;
        let got = kernel_c_base(&[3, 1], m, -2);
        let mut expected = tp("t1^3*t2", m);
        for k in 1..=3 {
            expected = expected
                + GradedPoly::term(2 * sign(k), [(VarId::t(1), 3 + k), (VarId::t(2), 1 - k)], m);
        }
        assert_eq!(got, expected);
        assert_eq!(kernel_c_base(&[5], m, -2), tp("t1^5", m));
    }

    #[test]
    fn three_row_c_kernel_matches_series_product() {
        // oracle: multiply the three pair series, each truncated well below the cut
        let m = 1;
        let ell = [3, 2, 1];
        let lower = -2;
        let pair = |i: u32, j: u32, n: i64| {
            let mut s = GradedPoly::one(m);
            for k in 1..=n {
                s = s + GradedPoly::term(2 * sign(k), [(VarId::t(i), k), (VarId::t(j), -k)], m);
            }
            s
        };
        let mut prod = tp("t1^3*t2^2*t3", m) * pair(1, 2, 12) * pair(1, 3, 12) * pair(2, 3, 12);
        prod.retain(|mono| ConeLaurentSeries::exponents(mono, 3).iter().all(|&e| e >= lower));
        assert_eq!(kernel_c_base(&ell, m, lower), prod);
    }

    #[test]
    fn phi_examples() {
        let fam = ClassSymbolFamily::new(SymbolKind::A, vec![4, 2], 1);
        assert_eq!(phi(&tp("t1^2*t2", 1), 2, &fam, 0).unwrap(), cp("A[4;2]*A[2;1]", 1));
        assert_eq!(phi(&tp("t1^3", 1), 2, &fam, 1).unwrap(), cp("tau1^3*A[2;0]", 1));
        assert!(phi(&tp("t1^3*t2^-3", 1), 2, &fam, 0).unwrap().is_zero());
        assert!(phi(&tp("t1^-1*t2", 1), 2, &fam, 1).is_err());
        // module structure over the prefix variables
        let f = tp("t1*t2^2-3*t2^-1+al*t1^2", 1);
        let g = tp("2*t1+t1^3", 1);
        let lhs = phi(&(&g * &f), 2, &fam, 1).unwrap();
        let rhs = phi(&g, 2, &fam, 1)
            .unwrap()
            .eval(|v| match v {
                ClassVar::Sym(_) => Ok(ClassPoly::one(1)),
                other => Ok(ClassPoly::var(*other, 1)),
            })
            .unwrap()
            * phi(&f, 2, &fam, 1).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(multischur_det(SymbolKind::A, &[(3, 2)], 1), cp("A[3;2]", 1));
        assert_eq!(
            multischur_det(SymbolKind::A, &[(3, 2), (1, 5)], 1),
            cp("A[3;2]*A[1;5]-A[3;3]*A[1;4]", 1)
        );
    }

    #[test]
    fn pfaffian_examples() {
        let m = 1;
        assert_eq!(multischur_pf(SymbolKind::C, &[(2, 3)], m).unwrap(), cp("C[2;3]", m));
        assert_eq!(
            multischur_pf(SymbolKind::C, &[(1, 2), (0, 1)], m).unwrap(),
            cp("C[1;2]*C[0;1]-2*C[1;3]*C[0;0]+2*C[1;4]*C[0;-1]-2*C[1;5]*C[0;-2]", m)
        );
        let rows = [(4, 5), (3, 4), (1, 2), (0, 1)];
        assert_eq!(
            multischur_pf(SymbolKind::C, &rows, m).unwrap(),
            pfaffian_recursion(SymbolKind::C, &rows, m).unwrap()
        );
    }

    #[test]
    fn c_kernel_identity_and_stability() {
        for m in 1..=2 {
            for lam in [vec![1], vec![2, 1], vec![4, 2, 1]] {
                let r = pfaffian_identity_check(&lam, m).unwrap();
                assert!(r.is_clean(), "{r}");
                let fam = ClassSymbolFamily::new(SymbolKind::C, lam.iter().map(|p| p - 1).collect(), m);
                let a = phi(&kernel_c(&lam, m, 0).unwrap().poly, lam.len(), &fam, 0).unwrap();
                let b = phi(&kernel_c(&lam, m, 2).unwrap().poly, lam.len(), &fam, 0).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn permutation_signs() {
        let perms = permutations(3);
        assert_eq!(perms.len(), 6);
        assert_eq!(perms.iter().map(|p| p.1).sum::<i64>(), 0);
        assert!(perms.contains(&(vec![1, 0, 2], -1)));
        assert!(perms.contains(&(vec![1, 2, 0], 1)));
    }
}
