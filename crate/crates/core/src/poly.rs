//! Sparse multivariate Laurent polynomials over `Q_{2m}`.
//!
//! A [`Poly`] is generic over its variable type so that the same arithmetic
//! serves both the root/series polynomials ([`GradedPoly`], variables
//! [`VarId`]) and the class polynomials built from inert Segre symbols.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose order is
//! graded: lower total degree first, and within one degree the
//! lexicographically larger monomial (on the variable order) first. The
//! canonical text form prints terms in exactly this order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::coeffs::Q2mScalar;
use crate::error::{Error, Result};

/// A polynomial indeterminate.
pub trait Variable: Clone + Ord + Eq + Hash + fmt::Debug + fmt::Display {
    /// Degree contributed by one power of the variable.
    fn weight(&self) -> i64;
    /// Whether negative exponents are allowed.
    fn laurent(&self) -> bool;
    fn latex(&self) -> String;
    /// Parses a single identifier token produced by the text printer.
    fn parse_token(token: &str) -> Option<Self>;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    X,
    Y,
    T,
    Tau,
    U,
    V,
    Xi,
}

/// A named variable such as `x3`, `tau1`, `u` or `xi2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId {
    pub family: Family,
    pub index: u32,
}

impl VarId {
    pub const fn new(family: Family, index: u32) -> Self {
        Self { family, index }
    }
    pub const fn x(i: u32) -> Self {
        Self::new(Family::X, i)
    }
    pub const fn y(i: u32) -> Self {
        Self::new(Family::Y, i)
    }
    pub const fn t(i: u32) -> Self {
        Self::new(Family::T, i)
    }
    pub const fn tau(i: u32) -> Self {
        Self::new(Family::Tau, i)
    }
    pub const fn u() -> Self {
        Self::new(Family::U, 0)
    }
    pub const fn v() -> Self {
        Self::new(Family::V, 0)
    }
    pub const fn xi(i: u32) -> Self {
        Self::new(Family::Xi, i)
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.family {
            Family::X => "x",
            Family::Y => "y",
            Family::T => "t",
            Family::Tau => "tau",
            Family::U => "u",
            Family::V => "v",
            Family::Xi => "xi",
        };
        let bare = matches!(self.family, Family::U | Family::V | Family::Xi) && self.index == 0;
        if bare {
            write!(f, "{name}")
        } else {
            write!(f, "{name}{}", self.index)
        }
    }
}

impl Variable for VarId {
    fn weight(&self) -> i64 {
        1
    }

    fn laurent(&self) -> bool {
        matches!(self.family, Family::T | Family::Xi)
    }

    fn latex(&self) -> String {
        let name = match self.family {
            Family::X => "x",
            Family::Y => "y",
            Family::T => "t",
            Family::Tau => "\\tau",
            Family::U => "u",
            Family::V => "v",
            Family::Xi => "\\xi",
        };
        if matches!(self.family, Family::U | Family::V | Family::Xi) && self.index == 0 {
            name.to_string()
        } else {
            format!("{name}_{{{}}}", self.index)
        }
    }

    fn parse_token(token: &str) -> Option<Self> {
        let split = token
            .find(|c: char| c.is_ascii_digit())
            .unwrap_or(token.len());
        let (name, digits) = token.split_at(split);
        let family = match name {
            "x" => Family::X,
            "y" => Family::Y,
            "t" => Family::T,
            "tau" => Family::Tau,
            "u" => Family::U,
            "v" => Family::V,
            "xi" => Family::Xi,
            _ => return None,
        };
        let index = if digits.is_empty() {
            if matches!(family, Family::U | Family::V | Family::Xi) {
                0
            } else {
                return None;
            }
        } else {
            digits.parse().ok()?
        };
        Some(VarId::new(family, index))
    }
}

/// A product of variable powers, stored sparsely and sorted by variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial<V> {
    exps: Vec<(V, i64)>,
}

impl<V: Variable> Monomial<V> {
    pub fn one() -> Self {
        Self { exps: Vec::new() }
    }

    pub fn var(v: V, e: i64) -> Self {
        Self::from_pairs([(v, e)])
    }

    /// Builds a monomial from (variable, exponent) pairs; repeated variables add.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (V, i64)>) -> Self {
        let mut map: BTreeMap<V, i64> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        Self {
            exps: map.into_iter().filter(|(_, e)| *e != 0).collect(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponents(&self) -> &[(V, i64)] {
        &self.exps
    }

    pub fn exponent(&self, v: &V) -> i64 {
        self.exps
            .binary_search_by(|(w, _)| w.cmp(v))
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> i64 {
        self.exps.iter().map(|(_, e)| e).sum()
    }

    pub fn weighted_degree(&self) -> i64 {
        self.exps.iter().map(|(v, e)| v.weight() * e).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            let (a, ea) = &self.exps[i];
            let (b, eb) = &other.exps[j];
            match a.cmp(b) {
                Ordering::Less => {
                    out.push((a.clone(), *ea));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b.clone(), *eb));
                    j += 1;
                }
                Ordering::Equal => {
                    if ea + eb != 0 {
                        out.push((a.clone(), ea + eb));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.exps[i..]);
        out.extend_from_slice(&other.exps[j..]);
        Self { exps: out }
    }

    pub fn inverse(&self) -> Self {
        Self {
            exps: self.exps.iter().map(|(v, e)| (v.clone(), -e)).collect(),
        }
    }

    /// `self / other`, or `None` if a non-Laurent exponent would go negative.
    pub fn div(&self, other: &Self) -> Option<Self> {
        let q = self.mul(&other.inverse());
        if q.exps.iter().all(|(v, e)| *e >= 0 || v.laurent()) {
            Some(q)
        } else {
            None
        }
    }

    /// Drops the variable `v`, returning its exponent and the remaining monomial.
    pub fn split_off(&self, v: &V) -> (i64, Self) {
        let mut e = 0;
        let rest = self
            .exps
            .iter()
            .filter(|(w, x)| {
                if w == v {
                    e = *x;
                    false
                } else {
                    true
                }
            })
            .cloned()
            .collect();
        (e, Self { exps: rest })
    }

    fn lex_cmp(&self, other: &Self) -> Ordering {
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.exps.get(i), other.exps.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some((_, e)), None) => return e.cmp(&0),
                (None, Some((_, e))) => return 0.cmp(e),
                (Some((a, ea)), Some((b, eb))) => match a.cmp(b) {
                    Ordering::Less => return ea.cmp(&0),
                    Ordering::Greater => return 0.cmp(eb),
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }

    fn text(&self) -> String {
        self.exps
            .iter()
            .map(|(v, e)| {
                if *e == 1 {
                    v.to_string()
                } else {
                    format!("{v}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    fn latex(&self) -> String {
        self.exps
            .iter()
            .map(|(v, e)| {
                if *e == 1 {
                    v.latex()
                } else {
                    format!("{}^{{{e}}}", v.latex())
                }
            })
            .collect()
    }
}

impl<V: Variable> Ord for Monomial<V> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| other.lex_cmp(self))
    }
}

impl<V: Variable> PartialOrd for Monomial<V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<V: Variable> fmt::Display for Monomial<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            write!(f, "1")
        } else {
            write!(f, "{}", self.text())
        }
    }
}

/// Result of [`Poly::homogeneous_degree`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Degree(i64),
    Inhomogeneous,
}

/// A finitely supported Laurent polynomial with `Q_{2m}` coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<V: Variable> {
    m: u32,
    terms: BTreeMap<Monomial<V>, Q2mScalar>,
}

pub type GradedPoly = Poly<VarId>;

impl<V: Variable> Poly<V> {
    pub fn zero(m: u32) -> Self {
        Self {
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(m: u32) -> Self {
        Self::constant(Q2mScalar::one(m))
    }

    pub fn from_int(c: impl Into<BigInt>, m: u32) -> Self {
        Self::constant(Q2mScalar::from_int(c, m))
    }

    pub fn alpha(m: u32) -> Self {
        Self::constant(Q2mScalar::alpha(m))
    }

    pub fn constant(c: Q2mScalar) -> Self {
        Self::monomial(Monomial::one(), c)
    }

    pub fn var(v: V, m: u32) -> Self {
        Self::monomial(Monomial::var(v, 1), Q2mScalar::one(m))
    }

    pub fn monomial(mono: Monomial<V>, c: Q2mScalar) -> Self {
        let mut p = Self::zero(c.m());
        p.add_term(mono, &c);
        p
    }

    /// Builds `c * prod v^e` with an integer coefficient.
    pub fn term(c: impl Into<BigInt>, pairs: impl IntoIterator<Item = (V, i64)>, m: u32) -> Self {
        Self::monomial(Monomial::from_pairs(pairs), Q2mScalar::from_int(c, m))
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.first_key_value().is_some_and(|(k, c)| k.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial<V>, &Q2mScalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial<V>, Q2mScalar)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, mono: &Monomial<V>) -> Q2mScalar {
        self.terms
            .get(mono)
            .cloned()
            .unwrap_or_else(|| Q2mScalar::zero(self.m))
    }

    pub fn constant_term(&self) -> Q2mScalar {
        self.coeff(&Monomial::one())
    }

    /// Adds `c * mono` in place.
    pub fn add_term(&mut self, mono: Monomial<V>, c: &Q2mScalar) {
        assert_eq!(c.m(), self.m, "mixed half-degree parameters");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                slot.get_mut().add_assign_unchecked(c);
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.m == other.m {
            Ok(())
        } else {
            Err(Error::MixedParameter {
                left: self.m,
                right: other.m,
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (mono, c) in &other.terms {
            out.add_term(mono.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (mono, c) in &other.terms {
            out.add_term(mono.clone(), &-c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.m);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca.mul_unchecked(cb);
                if !c.is_zero() {
                    out.add_term(ma.mul(mb), &c);
                }
            }
        }
        Ok(out)
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        self.check(other).expect("polynomial arithmetic");
        for (mono, c) in &other.terms {
            self.add_term(mono.clone(), c);
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.m);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: &Q2mScalar) -> Self {
        assert_eq!(c.m(), self.m, "mixed half-degree parameters");
        let mut out = Self::zero(self.m);
        for (mono, d) in &self.terms {
            out.add_term(mono.clone(), &d.mul_unchecked(c));
        }
        out
    }

    pub fn scale_int(&self, c: impl Into<BigInt>) -> Self {
        self.scale(&Q2mScalar::from_int(c, self.m))
    }

    pub fn times_alpha(&self) -> Self {
        self.scale(&Q2mScalar::alpha(self.m))
    }

    pub fn mul_monomial(&self, mono: &Monomial<V>) -> Self {
        Self {
            m: self.m,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(mono), c.clone()))
                .collect(),
        }
    }

    /// The `al^0` part.
    pub fn alpha_free_part(&self) -> Self {
        let mut out = Self::zero(self.m);
        for (mono, c) in &self.terms {
            out.add_term(mono.clone(), &c.alpha_free());
        }
        out
    }

    /// The coefficient of `al`, as an `al`-free polynomial.
    pub fn alpha_part(&self) -> Self {
        let mut out = Self::zero(self.m);
        for (mono, c) in &self.terms {
            out.add_term(mono.clone(), &Q2mScalar::from_int(c.b().clone(), self.m));
        }
        out
    }

    /// `free + al * alpha`, both inputs taken modulo `al`.
    pub fn from_parts(free: &Self, alpha: &Self) -> Self {
        free.alpha_free_part() + alpha.alpha_free_part().times_alpha()
    }

    pub fn max_exponent(&self, v: &V) -> Option<i64> {
        self.terms.keys().map(|k| k.exponent(v)).max()
    }

    pub fn min_exponent(&self, v: &V) -> Option<i64> {
        self.terms.keys().map(|k| k.exponent(v)).min()
    }

    /// Groups terms by the exponent of `v`; the values no longer contain `v`.
    pub fn coefficients_in(&self, v: &V) -> BTreeMap<i64, Self> {
        let mut out: BTreeMap<i64, Self> = BTreeMap::new();
        for (mono, c) in &self.terms {
            let (e, rest) = mono.split_off(v);
            out.entry(e)
                .or_insert_with(|| Self::zero(self.m))
                .add_term(rest, c);
        }
        out
    }

    /// Coefficient of `v^e`, a polynomial free of `v`.
    pub fn coefficient_of(&self, v: &V, e: i64) -> Self {
        let mut out = Self::zero(self.m);
        for (mono, c) in &self.terms {
            if mono.exponent(v) == e {
                out.add_term(mono.split_off(v).1, c);
            }
        }
        out
    }

    pub fn variables(&self) -> Vec<V> {
        let mut vs: Vec<V> = self
            .terms
            .keys()
            .flat_map(|k| k.exps.iter().map(|(v, _)| v.clone()))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Keeps the terms whose monomial satisfies `keep`.
    pub fn retain(&mut self, mut keep: impl FnMut(&Monomial<V>) -> bool) {
        self.terms.retain(|k, _| keep(k));
    }

    /// Renames variables; the map must be injective on the variables present.
    pub fn map_vars<W: Variable>(&self, mut f: impl FnMut(&V) -> W) -> Poly<W> {
        let mut out = Poly::zero(self.m);
        for (mono, c) in &self.terms {
            let mono = Monomial::from_pairs(mono.exps.iter().map(|(v, e)| (f(v), *e)));
            out.add_term(mono, c);
        }
        out
    }

    /// Substitutes every variable by a polynomial in another variable type.
    ///
    /// A negative exponent is only allowed when the image is a monomial with
    /// coefficient `+-1`.
    pub fn eval<W: Variable>(&self, mut image: impl FnMut(&V) -> Result<Poly<W>>) -> Result<Poly<W>> {
        let mut images: HashMap<V, Poly<W>> = HashMap::new();
        let mut powers: HashMap<(V, i64), Poly<W>> = HashMap::new();
        let mut out = Poly::zero(self.m);
        for (mono, c) in &self.terms {
            let mut acc = Poly::constant(c.clone());
            for (v, e) in &mono.exps {
                if !images.contains_key(v) {
                    let img = image(v)?;
                    img.check_m(self.m)?;
                    images.insert(v.clone(), img);
                }
                if !powers.contains_key(&(v.clone(), *e)) {
                    let img = &images[v];
                    let p = if *e >= 0 {
                        img.pow(*e as u32)
                    } else {
                        img.monomial_inverse()
                            .ok_or_else(|| {
                                Error::NotDivisible(format!("cannot invert image {img} of {v}"))
                            })?
                            .pow((-*e) as u32)
                    };
                    powers.insert((v.clone(), *e), p);
                }
                acc = &acc * &powers[&(v.clone(), *e)];
                if acc.is_zero() {
                    break;
                }
            }
            out.add_assign_ref(&acc);
        }
        Ok(out)
    }

    /// Substitutes the listed variables and keeps the others.
    pub fn substitute(&self, assignment: &HashMap<V, Poly<V>>) -> Result<Self> {
        let m = self.m;
        self.eval(|v| Ok(assignment.get(v).cloned().unwrap_or_else(|| Poly::var(v.clone(), m))))
    }

    fn check_m(&self, m: u32) -> Result<()> {
        if self.m == m {
            Ok(())
        } else {
            Err(Error::MixedParameter {
                left: m,
                right: self.m,
            })
        }
    }

    /// Inverse of a unit monomial `+-(1 + b al) * mono`.
    pub fn monomial_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (mono, c) = self.terms.iter().next()?;
        let inv = c.inverse().ok()?;
        Some(Self::monomial(mono.inverse(), inv))
    }

    /// Common degree of all terms, counting `deg al = -2m`.
    pub fn homogeneous_degree(&self) -> Homogeneity {
        let mut deg = None;
        for (mono, c) in &self.terms {
            let base = mono.weighted_degree();
            let parts = [
                (!c.a().is_zero()).then_some(base),
                (!c.b().is_zero()).then_some(base - 2 * i64::from(self.m)),
            ];
            for d in parts.into_iter().flatten() {
                match deg {
                    None => deg = Some(d),
                    Some(prev) if prev != d => return Homogeneity::Inhomogeneous,
                    _ => {}
                }
            }
        }
        deg.map_or(Homogeneity::Zero, Homogeneity::Degree)
    }

    pub fn leading_term(&self) -> Option<(&Monomial<V>, &Q2mScalar)> {
        self.terms.iter().next_back()
    }

    /// Exact division by an `al`-free divisor; fails unless the remainder is zero.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        self.check(divisor)?;
        if divisor.is_zero() {
            return Err(Error::NotDivisible("division by zero".into()));
        }
        if divisor.terms.values().any(|c| !c.b().is_zero()) {
            return Err(Error::NotDivisible(format!("divisor {divisor} involves al")));
        }
        let (lead_mono, lead_c) = divisor.leading_term().unwrap();
        let (lead_mono, lead_c) = (lead_mono.clone(), lead_c.a().clone());
        let mut rem = self.clone();
        let mut quot = Self::zero(self.m);
        while let Some((mono, c)) = rem.leading_term() {
            let fail = || Error::NotDivisible(format!("{self} by {divisor}"));
            let q_mono = mono.div(&lead_mono).ok_or_else(fail)?;
            let (qa, ra) = c.a().div_rem(&lead_c);
            let (qb, rb) = c.b().div_rem(&lead_c);
            if !ra.is_zero() || !rb.is_zero() {
                return Err(fail());
            }
            let q = Q2mScalar::new(qa, qb, self.m);
            for (dm, dc) in &divisor.terms {
                rem.add_term(dm.mul(&q_mono), &-dc.mul_unchecked(&q));
            }
            quot.add_term(q_mono, &q);
        }
        Ok(quot)
    }

    fn term_text(mono: &Monomial<V>, c: &Q2mScalar) -> String {
        let mono_part = mono.text();
        let coeff = if c.b().is_zero() {
            int_prefix(c.a(), "")
        } else if c.a().is_zero() {
            int_prefix(c.b(), "al")
        } else {
            format!("({c})")
        };
        match (coeff.as_str(), mono_part.is_empty()) {
            ("", true) => "1".to_string(),
            ("-", true) => "-1".to_string(),
            (_, true) => coeff,
            ("", false) => mono_part,
            ("-", false) => format!("-{mono_part}"),
            (_, false) => format!("{coeff}*{mono_part}"),
        }
    }

    fn term_latex(&self, mono: &Monomial<V>, c: &Q2mScalar) -> String {
        let alpha = format!("\\alpha_{{{}}}", 2 * self.m);
        let mono_part = mono.latex();
        let coeff = if c.b().is_zero() {
            int_prefix_latex(c.a(), "")
        } else if c.a().is_zero() {
            int_prefix_latex(c.b(), &alpha)
        } else {
            let sign = if c.b().is_negative() { "-" } else { "+" };
            format!("({}{sign}{}{alpha})", c.a(), unit_free(&c.b().abs()))
        };
        match (coeff.as_str(), mono_part.is_empty()) {
            ("", true) => "1".to_string(),
            ("-", true) => "-1".to_string(),
            (_, true) => coeff,
            (_, false) => format!("{coeff}{mono_part}"),
        }
    }

    fn join_signed(pieces: impl Iterator<Item = String>) -> String {
        let mut out = String::new();
        for (i, p) in pieces.enumerate() {
            if i > 0 && !p.starts_with('-') {
                out.push('+');
            }
            out.push_str(&p);
        }
        if out.is_empty() {
            "0".to_string()
        } else {
            out
        }
    }

    pub fn to_latex(&self) -> String {
        Self::join_signed(self.terms.iter().map(|(k, c)| self.term_latex(k, c)))
    }

    /// Splits `f = f0 + al*f1` as `f0 * (1 + al*q)` when `f0` has at least two
    /// terms and divides `f1` exactly.
    pub fn alpha_factorization(&self) -> Option<(Self, Self)> {
        let f0 = self.alpha_free_part();
        let f1 = self.alpha_part();
        if f0.len() < 2 || f1.is_zero() {
            return None;
        }
        let q = f1.div_exact(&f0).ok()?;
        Some((f0, q))
    }

    /// Canonical text, using the factored form `(f0)*(1+al*q)` when available.
    pub fn to_factored_text(&self) -> String {
        match self.alpha_factorization() {
            Some((f0, q)) => {
                let unit = if q.len() == 1 {
                    (Self::one(self.m) + q.times_alpha()).to_string()
                } else {
                    format!("1+al*({q})")
                };
                format!("({f0})*({unit})")
            }
            None => self.to_string(),
        }
    }

    pub fn to_factored_latex(&self) -> String {
        match self.alpha_factorization() {
            Some((f0, q)) => {
                let alpha = format!("\\alpha_{{{}}}", 2 * self.m);
                let unit = if q.len() == 1 {
                    (Self::one(self.m) + q.times_alpha()).to_latex()
                } else {
                    format!("1+{alpha}\\left({}\\right)", q.to_latex())
                };
                format!("\\left({}\\right)\\left({unit}\\right)", f0.to_latex())
            }
            None => self.to_latex(),
        }
    }

    /// Parses the canonical text form (and any expression built from
    /// `+ - * ^`, parentheses, integers, `al` and variable names).
    pub fn parse(s: &str, m: u32) -> Result<Self> {
        let tokens = tokenize(s)?;
        let mut parser = Parser { tokens, pos: 0, m };
        let p = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(Error::Parse(format!("trailing input in {s:?}")));
        }
        Ok(p)
    }
}

fn unit_free(n: &BigInt) -> String {
    if n.is_one() {
        String::new()
    } else {
        n.to_string()
    }
}

fn int_prefix(n: &BigInt, suffix: &str) -> String {
    let body = match (n.abs().is_one(), suffix.is_empty()) {
        (true, true) => String::new(),
        (true, false) => suffix.to_string(),
        (false, true) => n.abs().to_string(),
        (false, false) => format!("{}*{suffix}", n.abs()),
    };
    if n.is_negative() {
        format!("-{body}")
    } else {
        body
    }
}

fn int_prefix_latex(n: &BigInt, suffix: &str) -> String {
    let body = format!("{}{suffix}", unit_free(&n.abs()));
    if n.is_negative() {
        format!("-{body}")
    } else {
        body
    }
}

impl<V: Variable> fmt::Display for Poly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = Self::join_signed(self.terms.iter().map(|(k, c)| Self::term_text(k, c)));
        write!(f, "{s}")
    }
}

impl<V: Variable> Poly<V> {
    /// Parses with `m` taken from context; see [`Poly::parse`].
    pub fn from_str_with_m(s: &str, m: u32) -> Result<Self> {
        Self::parse(s, m)
    }
}

impl FromStr for Monomial<VarId> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_monomial(s)
    }
}

/// Parses a bare monomial such as `u^2*v` (or `1`).
pub fn parse_monomial<V: Variable>(s: &str) -> Result<Monomial<V>> {
    let p: Poly<V> = Poly::parse(s, 1)?;
    match p.terms.into_iter().collect::<Vec<_>>().as_slice() {
        [(mono, c)] if c.is_one() => Ok(mono.clone()),
        _ => Err(Error::Parse(format!("{s:?} is not a monomial"))),
    }
}

macro_rules! forward_poly_op {
    ($tr:ident, $method:ident, $try:ident) => {
        impl<V: Variable> $tr<&Poly<V>> for &Poly<V> {
            type Output = Poly<V>;
            fn $method(self, rhs: &Poly<V>) -> Poly<V> {
                self.$try(rhs).expect("polynomial arithmetic")
            }
        }
        impl<V: Variable> $tr<Poly<V>> for Poly<V> {
            type Output = Poly<V>;
            fn $method(self, rhs: Poly<V>) -> Poly<V> {
                (&self).$try(&rhs).expect("polynomial arithmetic")
            }
        }
        impl<V: Variable> $tr<&Poly<V>> for Poly<V> {
            type Output = Poly<V>;
            fn $method(self, rhs: &Poly<V>) -> Poly<V> {
                (&self).$try(rhs).expect("polynomial arithmetic")
            }
        }
        impl<V: Variable> $tr<Poly<V>> for &Poly<V> {
            type Output = Poly<V>;
            fn $method(self, rhs: Poly<V>) -> Poly<V> {
                self.$try(&rhs).expect("polynomial arithmetic")
            }
        }
    };
}

forward_poly_op!(Add, add, try_add);
forward_poly_op!(Sub, sub, try_sub);
forward_poly_op!(Mul, mul, try_mul);

impl<V: Variable> Neg for &Poly<V> {
    type Output = Poly<V>;
    fn neg(self) -> Poly<V> {
        Poly {
            m: self.m,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }
}

impl<V: Variable> Neg for Poly<V> {
    type Output = Poly<V>;
    fn neg(self) -> Poly<V> {
        -&self
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            '(' => {
                out.push(Token::LParen);
                i += 1;
            }
            ')' => {
                out.push(Token::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push(Token::Int(digits.parse().expect("digits")));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphabetic() {
                    i += 1;
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i < chars.len() && chars[i] == '[' {
                    while i < chars.len() && chars[i] != ']' {
                        i += 1;
                    }
                    if i == chars.len() {
                        return Err(Error::Parse(format!("unclosed '[' in {s:?}")));
                    }
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected {other:?} in {s:?}"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    m: u32,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr<V: Variable>(&mut self) -> Result<Poly<V>> {
        let mut acc = match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                -self.term::<V>()?
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term<V: Variable>(&mut self) -> Result<Poly<V>> {
        let mut acc = self.factor()?;
        while let Some(Token::Star) = self.peek() {
            self.pos += 1;
            acc = acc * self.factor()?;
        }
        Ok(acc)
    }

    fn factor<V: Variable>(&mut self) -> Result<Poly<V>> {
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            self.pos += 1;
            let negative = matches!(self.peek(), Some(Token::Minus));
            if negative {
                self.pos += 1;
            }
            let e = match self.next() {
                Some(Token::Int(n)) => u32::try_from(n)
                    .map_err(|_| Error::Parse("exponent too large".into()))?,
                other => return Err(Error::Parse(format!("expected exponent, got {other:?}"))),
            };
            if negative {
                let inv = base
                    .monomial_inverse()
                    .ok_or_else(|| Error::Parse("negative power of a non-monomial".into()))?;
                return Ok(inv.pow(e));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom<V: Variable>(&mut self) -> Result<Poly<V>> {
        match self.next() {
            Some(Token::Int(n)) => Ok(Poly::from_int(n, self.m)),
            Some(Token::Ident(name)) if name == "al" => Ok(Poly::alpha(self.m)),
            Some(Token::Ident(name)) => V::parse_token(&name)
                .map(|v| Poly::var(v, self.m))
                .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}"))),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token::RParen) => Ok(inner),
                    other => Err(Error::Parse(format!("expected ')', got {other:?}"))),
                }
            }
            Some(Token::Minus) => Ok(-self.factor::<V>()?),
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Convenience: the list of variables `family1 .. familyN` as polynomials.
pub fn var_list(family: Family, n: u32, m: u32) -> Vec<GradedPoly> {
    (1..=n).map(|i| Poly::var(VarId::new(family, i), m)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, m: u32) -> GradedPoly {
        GradedPoly::parse(s, m).unwrap()
    }

    #[test]
    fn square_of_sum() {
        let s = p("u+v", 1);
        assert_eq!(s.pow(2), p("u^2+2*u*v+v^2", 1));
        assert_eq!(s.pow(2).to_string(), "u^2+2*u*v+v^2");
    }

    #[test]
    fn substitution_cancels() {
        let s = p("u+v", 1);
        let mut assign = HashMap::new();
        assign.insert(VarId::v(), -GradedPoly::var(VarId::u(), 1));
        assert!(s.substitute(&assign).unwrap().is_zero());
    }

    #[test]
    fn alpha_squared_vanishes() {
        let a = p("al*u", 2);
        let b = p("al*v", 2);
        assert!((a * b).is_zero());
    }

    #[test]
    fn homogeneity() {
        assert_eq!(
            p("x1*x2+al*x1^2*x2^2*x3*x4", 1).homogeneous_degree(),
            Homogeneity::Inhomogeneous
        );
        assert_eq!(
            p("(u+v)*(1+al*u*v)", 1).homogeneous_degree(),
            Homogeneity::Degree(1)
        );
        assert_eq!(GradedPoly::zero(1).homogeneous_degree(), Homogeneity::Zero);
        assert_eq!(p("t1^-1*t2^3", 1).homogeneous_degree(), Homogeneity::Degree(2));
    }

    #[test]
    fn mixed_m_is_rejected() {
        let a = GradedPoly::one(1);
        let b = GradedPoly::one(2);
        assert!(matches!(a.try_mul(&b), Err(Error::MixedParameter { .. })));
        assert!(matches!(a.try_add(&b), Err(Error::MixedParameter { .. })));
    }

    #[test]
    fn canonical_text_shapes() {
        assert_eq!(p("3+2*al", 1).to_string(), "(3+2*al)");
        assert_eq!(p("-x1+y1", 1).to_string(), "-x1+y1");
        assert_eq!(p("(2-al)*x1^2*t1^-1", 1).to_string(), "(2-al)*x1^2*t1^-1");
        assert_eq!(p("-al*x1", 1).to_string(), "-al*x1");
        assert_eq!(p("1-al*x1*y1", 1).to_string(), "1-al*x1*y1");
        assert_eq!(GradedPoly::zero(1).to_string(), "0");
    }

    #[test]
    fn factored_text() {
        let f = p("(u+v)*(1+al*u*v)", 1);
        assert_eq!(f.to_factored_text(), "(u+v)*(1+al*u*v)");
        let g = p("(u+v)*(1+al*(u*v^3+u^2*v^2+u^3*v))", 2);
        assert_eq!(g.to_factored_text(), "(u+v)*(1+al*(u^3*v+u^2*v^2+u*v^3))");
        let h = p("(y1-x1)*(1-al*x1*y1)", 1);
        assert_eq!(h.to_factored_text(), "(-x1+y1)*(1-al*x1*y1)");
        assert_eq!(p("x1+x2", 1).to_factored_text(), "x1+x2");
    }

    #[test]
    fn latex_rendering() {
        let f = p("(u+v)*(1+al*u*v)", 1);
        assert_eq!(f.to_factored_latex(), "\\left(u+v\\right)\\left(1+\\alpha_{2}uv\\right)");
        assert_eq!(p("tau1^2-3*al*xi", 2).to_latex(), "-3\\alpha_{4}\\xi+\\tau_{1}^{2}");
    }

    #[test]
    fn exact_division() {
        let a = p("x1^3-x2^3", 1);
        let b = p("x1-x2", 1);
        assert_eq!(a.div_exact(&b).unwrap(), p("x1^2+x1*x2+x2^2", 1));
        assert!(p("x1^2+1", 1).div_exact(&b).is_err());
        let c = p("al*(x1^2-x2^2)+x1-x2", 1);
        assert_eq!(c.div_exact(&b).unwrap(), p("1+al*(x1+x2)", 1));
    }

    #[test]
    fn laurent_monomial_inverse_in_eval() {
        let f = p("t1^-2*t2", 1);
        let g = f
            .eval(|v| Ok(GradedPoly::var(VarId::new(Family::Xi, v.index), 1).scale_int(-1)))
            .unwrap();
        assert_eq!(g, p("-xi1^-2*xi2", 1));
    }

    #[test]
    fn parse_errors() {
        assert!(GradedPoly::parse("x1+", 1).is_err());
        assert!(GradedPoly::parse("q7", 1).is_err());
        assert!(GradedPoly::parse("(x1", 1).is_err());
    }
}
