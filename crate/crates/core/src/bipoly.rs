//! Binary forms over cyclotomic fields, their localisation at one form `P`,
//! and small matrices over any of these rings.

use crate::error::{AliaError, Result};
use crate::exactnum::{CycNum, Rat};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Minimal ring interface shared by scalars, forms and localised forms.
pub trait RingElem: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn radd(&self, o: &Self) -> Self;
    fn rsub(&self, o: &Self) -> Self;
    fn rmul(&self, o: &Self) -> Self;
    fn rneg(&self) -> Self;
    fn rscale(&self, c: &CycNum) -> Self;
}

impl RingElem for CycNum {
    fn zero_like(&self) -> Self {
        CycNum::zero(self.order())
    }
    fn one_like(&self) -> Self {
        CycNum::one(self.order())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn radd(&self, o: &Self) -> Self {
        self + o
    }
    fn rsub(&self, o: &Self) -> Self {
        self - o
    }
    fn rmul(&self, o: &Self) -> Self {
        self * o
    }
    fn rneg(&self) -> Self {
        -self
    }
    fn rscale(&self, c: &CycNum) -> Self {
        self * c
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

/// A polynomial in `X, Y`; `terms[(a, b)]` is the coefficient of `X^a Y^b`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct BiForm {
    terms: BTreeMap<(u32, u32), CycNum>,
}

impl BiForm {
    pub fn zero() -> BiForm {
        BiForm::default()
    }

    pub fn constant(c: CycNum) -> BiForm {
        BiForm::monomial(c, 0, 0)
    }

    pub fn monomial(c: CycNum, a: u32, b: u32) -> BiForm {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b), c);
        }
        BiForm { terms }
    }

    pub fn x() -> BiForm {
        BiForm::monomial(CycNum::one(1), 1, 0)
    }

    pub fn y() -> BiForm {
        BiForm::monomial(CycNum::one(1), 0, 1)
    }

    /// Builds a form from `(coefficient, a, b)` triples; repeated exponents are summed.
    pub fn from_terms(items: impl IntoIterator<Item = (CycNum, u32, u32)>) -> BiForm {
        let mut f = BiForm::zero();
        for (c, a, b) in items {
            f.add_term(a, b, &c);
        }
        f
    }

    /// Integer-coefficient convenience constructor.
    pub fn from_int_terms(items: &[(i64, u32, u32)]) -> BiForm {
        BiForm::from_terms(items.iter().map(|&(c, a, b)| (CycNum::from_int(1, c), a, b)))
    }

    fn add_term(&mut self, a: u32, b: u32, c: &CycNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&(a, b)) {
            Some(v) => {
                *v = &*v + c;
                if v.is_zero() {
                    self.terms.remove(&(a, b));
                }
            }
            None => {
                self.terms.insert((a, b), c.clone());
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &CycNum)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: u32, b: u32) -> Option<&CycNum> {
        self.terms.get(&(a, b))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree of a nonzero homogeneous form; `None` for zero or mixed degrees.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|&(a, b)| a + b);
        let d = it.next()?;
        if it.all(|e| e == d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    /// Lcm of the coefficient field orders.
    pub fn field_order(&self) -> u32 {
        self.terms
            .values()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.order() as u64)) as u32
    }

    /// Re-expresses every coefficient in `ℚ(ζ_m)`.
    pub fn embed(&self, m: u32) -> Result<BiForm> {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            terms.insert(*k, c.embed(m)?);
        }
        Ok(BiForm { terms })
    }

    pub fn add(&self, other: &BiForm) -> BiForm {
        let mut out = self.clone();
        for (&(a, b), c) in &other.terms {
            out.add_term(a, b, c);
        }
        out
    }

    pub fn sub(&self, other: &BiForm) -> BiForm {
        let mut out = self.clone();
        for (&(a, b), c) in &other.terms {
            out.add_term(a, b, &-c);
        }
        out
    }

    pub fn neg(&self) -> BiForm {
        BiForm { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }

    pub fn scale(&self, c: &CycNum) -> BiForm {
        if c.is_zero() {
            return BiForm::zero();
        }
        BiForm { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    pub fn scale_rat(&self, r: &Rat) -> BiForm {
        if r.is_zero() {
            return BiForm::zero();
        }
        BiForm { terms: self.terms.iter().map(|(k, v)| (*k, v.scale_rat(r))).collect() }
    }

    pub fn mul(&self, other: &BiForm) -> BiForm {
        if self.is_zero() || other.is_zero() {
            return BiForm::zero();
        }
        if let (Some(d1), Some(d2)) = (self.degree(), other.degree()) {
            return self.mul_homogeneous(other, d1, d2);
        }
        let mut out = BiForm::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &other.terms {
                out.add_term(a1 + a2, b1 + b2, &(c1 * c2));
            }
        }
        out
    }

    fn mul_homogeneous(&self, other: &BiForm, d1: u32, d2: u32) -> BiForm {
        let d = (d1 + d2) as usize;
        let mut acc: Vec<Option<CycNum>> = vec![None; d + 1];
        for (&(a1, _), c1) in &self.terms {
            for (&(a2, _), c2) in &other.terms {
                let p = c1 * c2;
                let slot = &mut acc[(a1 + a2) as usize];
                *slot = Some(match slot.take() {
                    Some(v) => &v + &p,
                    None => p,
                });
            }
        }
        let mut terms = BTreeMap::new();
        for (a, c) in acc.into_iter().enumerate() {
            if let Some(c) = c {
                if !c.is_zero() {
                    terms.insert((a as u32, (d - a) as u32), c);
                }
            }
        }
        BiForm { terms }
    }

    pub fn pow(&self, e: u32) -> BiForm {
        let mut acc = BiForm::constant(CycNum::one(1));
        let mut base = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn partial(&self, v: Var) -> BiForm {
        let mut out = BiForm::zero();
        for (&(a, b), c) in &self.terms {
            match v {
                Var::X if a > 0 => out.add_term(a - 1, b, &c.scale_rat(&Rat::from_integer(a.into()))),
                Var::Y if b > 0 => out.add_term(a, b - 1, &c.scale_rat(&Rat::from_integer(b.into()))),
                _ => {}
            }
        }
        out
    }

    /// Splits into homogeneous components keyed by degree.
    pub fn homogeneous_parts(&self) -> BTreeMap<u32, BiForm> {
        let mut parts: BTreeMap<u32, BiForm> = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            parts.entry(a + b).or_default().terms.insert((a, b), c.clone());
        }
        parts
    }

    /// Returns `f(aX + bY, cX + dY)` for `g = [[a, b], [c, d]]`.
    pub fn substitute(&self, g: &Mat<CycNum>) -> BiForm {
        assert!(g.rows() == 2 && g.cols() == 2, "substitution needs a 2x2 matrix");
        let mut out = BiForm::zero();
        for (deg, part) in self.homogeneous_parts() {
            out = out.add(&part.substitute_homogeneous(g, deg));
        }
        out
    }

    fn substitute_homogeneous(&self, g: &Mat<CycNum>, d: u32) -> BiForm {
        let l1 = BiForm::from_terms([(g.get(0, 0).clone(), 1, 0), (g.get(0, 1).clone(), 0, 1)]);
        let l2 = BiForm::from_terms([(g.get(1, 0).clone(), 1, 0), (g.get(1, 1).clone(), 0, 1)]);
        let d = d as usize;
        let mut l2_pows = Vec::with_capacity(d + 1);
        l2_pows.push(BiForm::constant(CycNum::one(1)));
        for i in 1..=d {
            let next = l2_pows[i - 1].mul(&l2);
            l2_pows.push(next);
        }
        // Horner in l1: Σ c_i l1^i l2^{d-i}
        let coeff = |i: usize| self.terms.get(&(i as u32, (d - i) as u32));
        let mut acc = match coeff(d) {
            Some(c) => BiForm::constant(c.clone()),
            None => BiForm::zero(),
        };
        for i in (0..d).rev() {
            acc = acc.mul(&l1);
            if let Some(c) = coeff(i) {
                acc = acc.add(&l2_pows[d - i].scale(c));
            }
        }
        acc
    }

    /// Exact quotient `self / p`, or `None` if `p` does not divide `self`.
    pub fn div_exact(&self, p: &BiForm) -> Option<BiForm> {
        if p.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(BiForm::zero());
        }
        p.degree()?;
        let mut out = BiForm::zero();
        for (_, part) in self.homogeneous_parts() {
            out = out.add(&part.div_exact_homogeneous(p)?);
        }
        Some(out)
    }

    fn min_exponents(&self) -> (u32, u32) {
        let a = self.terms.keys().map(|k| k.0).min().unwrap_or(0);
        let b = self.terms.keys().map(|k| k.1).min().unwrap_or(0);
        (a, b)
    }

    fn shift_down(&self, a: u32, b: u32) -> BiForm {
        BiForm { terms: self.terms.iter().map(|(&(x, y), c)| ((x - a, y - b), c.clone())).collect() }
    }

    fn div_exact_homogeneous(&self, p: &BiForm) -> Option<BiForm> {
        // strip the monomial factor X^a Y^b of p, then divide dehomogenised at Y = 1
        let (pa, pb) = p.min_exponents();
        let (fa, fb) = self.min_exponents();
        if fa < pa || fb < pb {
            return None;
        }
        let q = p.shift_down(pa, pb);
        let g = self.shift_down(pa, pb);
        let dq = q.degree()? as usize;
        let dg = g.degree()? as usize;
        if dg < dq {
            return None;
        }
        let mut rem: Vec<Option<CycNum>> = (0..=dg).map(|i| g.terms.get(&(i as u32, (dg - i) as u32)).cloned()).collect();
        let qc: Vec<Option<&CycNum>> = (0..=dq).map(|i| q.terms.get(&(i as u32, (dq - i) as u32))).collect();
        let lc = qc[dq].expect("leading coefficient present after stripping");
        let lc_inv = lc.inv().ok()?;
        let dh = dg - dq;
        let mut quot = BTreeMap::new();
        for i in (0..=dh).rev() {
            let top = match rem[i + dq].take() {
                Some(c) if !c.is_zero() => c,
                _ => continue,
            };
            let c = &top * &lc_inv;
            for (j, qj) in qc.iter().enumerate().take(dq) {
                if let Some(qj) = qj {
                    let t = &c * qj;
                    let slot = &mut rem[i + j];
                    *slot = Some(match slot.take() {
                        Some(v) => &v - &t,
                        None => -&t,
                    });
                }
            }
            quot.insert((i as u32, (dh - i) as u32), c);
        }
        if rem.iter().any(|c| c.as_ref().is_some_and(|c| !c.is_zero())) {
            return None;
        }
        Some(BiForm { terms: quot })
    }

    /// Display rendering, e.g. `X^{11} Y - 11 X^{6} Y^{6} - X Y^{11}`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (&(a, b), c) in self.terms.iter().rev() {
            let mono = monomial_text(a, b);
            let (neg, coeff) = match c.as_rat() {
                Some(r) => {
                    let neg = r.is_negative();
                    let abs = r.abs();
                    let s = if abs.is_one() && !mono.is_empty() { String::new() } else { abs.to_string() };
                    (neg, s)
                }
                None => (false, format!("({})", c.canonical())),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&coeff);
            if !coeff.is_empty() && !mono.is_empty() {
                out.push(' ');
            }
            out.push_str(&mono);
        }
        out
    }

    pub fn to_json(&self) -> FormJson {
        FormJson {
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(&(a, b), c)| TermJson { x: a, y: b, coeff: c.clone() })
                .collect(),
        }
    }

    pub fn from_json(j: &FormJson) -> BiForm {
        BiForm::from_terms(j.terms.iter().map(|t| (t.coeff.clone(), t.x, t.y)))
    }
}

fn monomial_text(a: u32, b: u32) -> String {
    let var = |v: &str, e: u32| match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{{{e}}}"),
    };
    let (x, y) = (var("X", a), var("Y", b));
    match (x.is_empty(), y.is_empty()) {
        (true, _) => y,
        (_, true) => x,
        _ => format!("{x} {y}"),
    }
}

impl fmt::Display for BiForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub x: u32,
    pub y: u32,
    pub coeff: CycNum,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormJson {
    pub terms: Vec<TermJson>,
}

impl RingElem for BiForm {
    fn zero_like(&self) -> Self {
        BiForm::zero()
    }
    fn one_like(&self) -> Self {
        BiForm::constant(CycNum::one(1))
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn radd(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn rsub(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn rmul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn rneg(&self) -> Self {
        self.neg()
    }
    fn rscale(&self, c: &CycNum) -> Self {
        self.scale(c)
    }
}

/// `numerator / P^m` in `ℂ[X, Y, P^{-1}]`, kept reduced: `P ∤ numerator` when `m > 0`.
#[derive(Clone, Debug)]
pub struct LocElem {
    num: BiForm,
    pole: Arc<BiForm>,
    m: u32,
}

impl LocElem {
    pub fn new(num: BiForm, pole: &Arc<BiForm>, m: u32) -> LocElem {
        let mut e = LocElem { num, pole: pole.clone(), m };
        e.reduce();
        e
    }

    pub fn from_form(f: BiForm, pole: &Arc<BiForm>) -> LocElem {
        LocElem { num: f, pole: pole.clone(), m: 0 }
    }

    pub fn zero(pole: &Arc<BiForm>) -> LocElem {
        LocElem::from_form(BiForm::zero(), pole)
    }

    pub fn one(pole: &Arc<BiForm>) -> LocElem {
        LocElem::from_form(BiForm::constant(CycNum::one(1)), pole)
    }

    pub fn numerator(&self) -> &BiForm {
        &self.num
    }

    pub fn pole_form(&self) -> &Arc<BiForm> {
        &self.pole
    }

    pub fn pole_power(&self) -> u32 {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.m = 0;
            return;
        }
        while self.m > 0 {
            match self.num.div_exact(&self.pole) {
                Some(q) => {
                    self.num = q;
                    self.m -= 1;
                }
                None => break,
            }
        }
    }

    fn check_pole(&self, other: &LocElem) {
        assert!(
            Arc::ptr_eq(&self.pole, &other.pole) || *self.pole == *other.pole,
            "localised elements with different pole forms"
        );
    }

    pub fn same_pole(&self, other: &LocElem) -> bool {
        Arc::ptr_eq(&self.pole, &other.pole) || *self.pole == *other.pole
    }

    /// Degree `deg(numerator) − m·deg(P)` for nonzero homogeneous elements.
    pub fn degree(&self) -> Option<i64> {
        let dn = self.num.degree()? as i64;
        let dp = self.pole.degree()? as i64;
        Some(dn - self.m as i64 * dp)
    }

    fn lift(&self, to: u32) -> BiForm {
        if to == self.m {
            self.num.clone()
        } else {
            self.num.mul(&self.pole.pow(to - self.m))
        }
    }

    pub fn add(&self, other: &LocElem) -> LocElem {
        self.check_pole(other);
        let m = self.m.max(other.m);
        LocElem::new(self.lift(m).add(&other.lift(m)), &self.pole, m)
    }

    pub fn sub(&self, other: &LocElem) -> LocElem {
        self.check_pole(other);
        let m = self.m.max(other.m);
        LocElem::new(self.lift(m).sub(&other.lift(m)), &self.pole, m)
    }

    pub fn mul(&self, other: &LocElem) -> LocElem {
        self.check_pole(other);
        LocElem::new(self.num.mul(&other.num), &self.pole, self.m + other.m)
    }

    pub fn neg(&self) -> LocElem {
        LocElem { num: self.num.neg(), pole: self.pole.clone(), m: self.m }
    }

    pub fn scale(&self, c: &CycNum) -> LocElem {
        if c.is_zero() {
            return LocElem::zero(&self.pole);
        }
        LocElem { num: self.num.scale(c), pole: self.pole.clone(), m: self.m }
    }

    pub fn mul_form(&self, f: &BiForm) -> LocElem {
        LocElem::new(self.num.mul(f), &self.pole, self.m)
    }

    pub fn pow(&self, e: u32) -> LocElem {
        LocElem::new(self.num.pow(e), &self.pole, self.m * e)
    }

    /// Applies `(X, Y) ↦ g(X, Y)`; requires `P∘g = c·P` for a constant `c`.
    pub fn substitute(&self, g: &Mat<CycNum>) -> Result<LocElem> {
        let num = self.num.substitute(g);
        if self.m == 0 {
            return Ok(LocElem::from_form(num, &self.pole));
        }
        let moved = self.pole.substitute(g);
        let c = moved
            .div_exact(&self.pole)
            .filter(|q| q.degree() == Some(0))
            .and_then(|q| q.coeff(0, 0).cloned())
            .ok_or_else(|| AliaError::Domain("pole form is not relatively invariant".into()))?;
        let scale = c.pow(-(self.m as i64))?;
        Ok(LocElem::new(num.scale(&scale), &self.pole, self.m))
    }

    /// Same element with pole form `P·R`: `a/P^m = a R^m / (P R)^m`.
    pub fn widen(&self, wide: &Arc<BiForm>, extra: &BiForm) -> LocElem {
        LocElem::new(self.num.mul(&extra.pow(self.m)), wide, self.m)
    }

    /// Inverse of [`LocElem::widen`]: re-expresses an element of the wider ring over `P`,
    /// failing if it does not lie in `ℂ[X, Y, P^{-1}]`.
    pub fn narrow(&self, pole: &Arc<BiForm>, extra: &BiForm) -> Result<LocElem> {
        let mut num = self.num.clone();
        for _ in 0..self.m {
            num = num
                .div_exact(extra)
                .ok_or_else(|| AliaError::Domain("element has poles outside P".into()))?;
        }
        Ok(LocElem::new(num, pole, self.m))
    }

    /// Cross-multiplied equality with a fraction `n/d` of forms.
    pub fn equals_fraction(&self, n: &BiForm, d: &BiForm) -> bool {
        self.num.mul(d) == n.mul(&self.pole.pow(self.m))
    }

    pub fn pretty(&self) -> String {
        if self.m == 0 {
            return self.num.pretty();
        }
        let p = if self.m == 1 {
            format!("({})", self.pole.pretty())
        } else {
            format!("({})^{{{}}}", self.pole.pretty(), self.m)
        };
        format!("({}) / {}", self.num.pretty(), p)
    }
}

impl PartialEq for LocElem {
    fn eq(&self, other: &LocElem) -> bool {
        self.same_pole(other) && self.m == other.m && self.num == other.num
    }
}

impl RingElem for LocElem {
    fn zero_like(&self) -> Self {
        LocElem::zero(&self.pole)
    }
    fn one_like(&self) -> Self {
        LocElem::one(&self.pole)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn radd(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn rsub(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn rmul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn rneg(&self) -> Self {
        self.neg()
    }
    fn rscale(&self, c: &CycNum) -> Self {
        self.scale(c)
    }
}

/// Dense row-major matrix over a ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

pub type RfMatrix = Mat<LocElem>;

impl<R: RingElem> Mat<R> {
    pub fn from_rows(rows: Vec<Vec<R>>) -> Mat<R> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn filled(rows: usize, cols: usize, v: R) -> Mat<R> {
        Mat { rows, cols, data: vec![v; rows * cols] }
    }

    pub fn identity_like(n: usize, proto: &R) -> Mat<R> {
        let mut m = Mat::filled(n, n, proto.zero_like());
        for i in 0..n {
            m.set(i, i, proto.one_like());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn map<S: RingElem>(&self, f: impl Fn(&R) -> S) -> Mat<S> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<S: RingElem, E>(&self, f: impl Fn(&R) -> std::result::Result<S, E>) -> std::result::Result<Mat<S>, E> {
        let data = self.data.iter().map(f).collect::<std::result::Result<Vec<_>, E>>()?;
        Ok(Mat { rows: self.rows, cols: self.cols, data })
    }

    pub fn mul(&self, other: &Mat<R>) -> Mat<R> {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let proto = self.data.first().or(other.data.first()).expect("nonempty matrix");
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = proto.zero_like();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if a.is_zero_elem() || b.is_zero_elem() {
                        continue;
                    }
                    acc = acc.radd(&a.rmul(b));
                }
                data.push(acc);
            }
        }
        Mat { rows: self.rows, cols: other.cols, data }
    }

    pub fn add(&self, other: &Mat<R>) -> Mat<R> {
        assert!(self.rows == other.rows && self.cols == other.cols);
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a.radd(b)).collect() }
    }

    pub fn sub(&self, other: &Mat<R>) -> Mat<R> {
        assert!(self.rows == other.rows && self.cols == other.cols);
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a.rsub(b)).collect() }
    }

    pub fn neg(&self) -> Mat<R> {
        self.map(|a| a.rneg())
    }

    pub fn scale(&self, s: &R) -> Mat<R> {
        self.map(|a| a.rmul(s))
    }

    pub fn scale_scalar(&self, c: &CycNum) -> Mat<R> {
        self.map(|a| a.rscale(c))
    }

    pub fn transpose(&self) -> Mat<R> {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Mat { rows: self.cols, cols: self.rows, data }
    }

    /// `[A, B] = AB − BA`.
    pub fn commutator(&self, other: &Mat<R>) -> Mat<R> {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero_elem())
    }

    /// Determinant by cofactor expansion (intended for small matrices).
    pub fn det(&self) -> R {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let idx: Vec<usize> = (0..self.cols).collect();
        self.det_rec(0, &idx)
    }

    fn det_rec(&self, row: usize, cols: &[usize]) -> R {
        if cols.len() == 1 {
            return self.get(row, cols[0]).clone();
        }
        let mut acc = self.get(row, cols[0]).zero_like();
        for (k, &c) in cols.iter().enumerate() {
            let a = self.get(row, c);
            if a.is_zero_elem() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = a.rmul(&self.det_rec(row + 1, &rest));
            acc = if k % 2 == 0 { acc.radd(&term) } else { acc.rsub(&term) };
        }
        acc
    }

    /// Adjugate of a 2×2 matrix; the inverse when the determinant is 1.
    pub fn adjugate2(&self) -> Mat<R> {
        assert!(self.rows == 2 && self.cols == 2);
        Mat::from_rows(vec![
            vec![self.get(1, 1).clone(), self.get(0, 1).rneg()],
            vec![self.get(1, 0).rneg(), self.get(0, 0).clone()],
        ])
    }

    pub fn pow(&self, e: u32) -> Mat<R> {
        let mut acc = Mat::identity_like(self.rows, &self.data[0]);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl Mat<CycNum> {
    pub fn from_ints(n: u32, rows: &[&[i64]]) -> Mat<CycNum> {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&v| CycNum::from_int(n, v)).collect()).collect())
    }

    pub fn is_identity(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| {
            let v = self.get(i, j);
            if i == j { v.is_one() } else { v.is_zero() }
        }))
    }
}
