//! The formal group law of the even infinitesimal theory `I_{2m}`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::coeffs::{binomial, gamma_table, GammaTable, Q2mScalar};
use crate::error::{Error, Result};
use crate::poly::{GradedPoly, Monomial, VarId};
use crate::report::ResidualReport;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalGroupLaw {
    m: u32,
    gamma: GammaTable,
    sum: GradedPoly,
}

/// `1 + al * sum_{i=1}^{2m-1} gamma_i u^i v^{2m-i}`, the unit cofactor of `u+v`.
fn unit_factor(gamma: &GammaTable, u: VarId, v: VarId) -> GradedPoly {
    let m = gamma.m();
    let n = 2 * i64::from(m);
    let mut corr = GradedPoly::zero(m);
    for i in 1..n {
        corr.add_term(
            Monomial::from_pairs([(u, i), (v, n - i)]),
            &Q2mScalar::from_int(gamma.gamma(i), m),
        );
    }
    GradedPoly::one(m) + corr.times_alpha()
}

/// `u + v + al/d * sum_{i=1}^{2m} C(2m+1, i) u^i v^{2m+1-i}`.
fn unfactored_sum(gamma: &GammaTable) -> Result<GradedPoly> {
    let m = gamma.m();
    let n = 2 * u64::from(m);
    let mut out = GradedPoly::var(VarId::u(), m) + GradedPoly::var(VarId::v(), m);
    for i in 1..=n {
        let (q, r) = binomial(n + 1, i).div_rem(gamma.d());
        if !r.is_zero() {
            return Err(Error::Divisibility {
                index: i as usize,
                dividend: binomial(n + 1, i).to_string(),
                divisor: gamma.d().to_string(),
            });
        }
        out.add_term(
            Monomial::from_pairs([(VarId::u(), i as i64), (VarId::v(), (n + 1 - i) as i64)]),
            &Q2mScalar::new(0, q, m),
        );
    }
    Ok(out)
}

/// Builds `u (+) v = (u+v)(1 + al sum gamma_i u^i v^{2m-i})` and cross-checks
/// it against the binomial presentation.
pub fn build_fgl(m: u32) -> Result<FormalGroupLaw> {
    let gamma = gamma_table(m)?;
    let uv = GradedPoly::var(VarId::u(), m) + GradedPoly::var(VarId::v(), m);
    let sum = &uv * &unit_factor(&gamma, VarId::u(), VarId::v());
    let other = unfactored_sum(&gamma)?;
    if sum != other {
        return Err(Error::PathDisagreement {
            what: format!("formal group law presentations for m={m}"),
            residual: (&sum - &other).to_string(),
        });
    }
    Ok(FormalGroupLaw { m, gamma, sum })
}

impl FormalGroupLaw {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn gamma(&self) -> &GammaTable {
        &self.gamma
    }

    /// The polynomial `u (+) v` in the variables `u`, `v`.
    pub fn sum(&self) -> &GradedPoly {
        &self.sum
    }

    /// The two factors `(u+v)` and `1 + al*(...)` of the sum.
    pub fn factors(&self) -> (GradedPoly, GradedPoly) {
        let m = self.m;
        (
            GradedPoly::var(VarId::u(), m) + GradedPoly::var(VarId::v(), m),
            unit_factor(&self.gamma, VarId::u(), VarId::v()),
        )
    }

    /// `a (+) b` for arbitrary polynomials.
    pub fn apply(&self, a: &GradedPoly, b: &GradedPoly) -> GradedPoly {
        let mut assign = HashMap::new();
        assign.insert(VarId::u(), a.clone());
        assign.insert(VarId::v(), b.clone());
        self.sum
            .substitute(&assign)
            .expect("substitution of polynomials with matching m")
    }

    /// The formal inverse, `-u`.
    pub fn inverse(&self) -> GradedPoly {
        -GradedPoly::var(VarId::u(), self.m)
    }
}

/// Returns `-u` after checking `u (+) (-u) = 0`.
pub fn fgl_inverse(m: u32) -> Result<GradedPoly> {
    let fgl = build_fgl(m)?;
    let inv = fgl.inverse();
    let check = fgl.apply(&GradedPoly::var(VarId::u(), m), &inv);
    if !check.is_zero() {
        return Err(Error::PathDisagreement {
            what: "formal inverse".into(),
            residual: check.to_string(),
        });
    }
    Ok(inv)
}

/// Unitality, commutativity and associativity residuals, plus the inverse.
pub fn verify_fgl_axioms(m: u32) -> Result<ResidualReport> {
    let fgl = build_fgl(m)?;
    let var = |i| GradedPoly::var(VarId::x(i), m);
    let (a, b, c) = (var(1), var(2), var(3));
    let zero = GradedPoly::zero(m);
    let mut report = ResidualReport::new();
    report.push("unit F(u,0)-u", &(fgl.apply(&a, &zero) - &a));
    report.push("unit F(0,u)-u", &(fgl.apply(&zero, &a) - &a));
    report.push(
        "commutativity F(u,v)-F(v,u)",
        &(fgl.apply(&a, &b) - fgl.apply(&b, &a)),
    );
    let left = fgl.apply(&a, &fgl.apply(&b, &c));
    let right = fgl.apply(&fgl.apply(&a, &b), &c);
    report.push("associativity", &(left - right));
    report.push("inverse F(u,-u)", &fgl.apply(&a, &-&a));
    Ok(report)
}

/// Integer coefficients of the correction `sum gamma_i u^i v^{2m-i}`, by `i`.
pub fn correction_coefficients(fgl: &FormalGroupLaw) -> Vec<BigInt> {
    (1..2 * i64::from(fgl.m)).map(|i| fgl.gamma.gamma(i)).collect()
}
