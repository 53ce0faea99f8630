//! Exact rationals and elements of cyclotomic fields.
//!
//! A [`CycNum`] of order `n` is a residue modulo the cyclotomic polynomial
//! `Φ_n`, stored as integer numerators over one positive common denominator in
//! the basis `1, ζ, …, ζ^{φ(n)-1}`.

use crate::error::{AliaError, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    Rat::from_str(s.trim()).map_err(|_| AliaError::Parse(format!("bad rational {s:?}")))
}

/// Precomputed data for `ℚ(ζ_n)`.
#[derive(Debug)]
pub struct Cyclotomic {
    n: u32,
    phi: usize,
    /// Coefficients of `Φ_n`, lowest degree first; monic.
    poly: Vec<BigInt>,
    /// `ζ^j mod Φ_n` for `0 ≤ j < n`.
    powers: Vec<Vec<BigInt>>,
}

impl Cyclotomic {
    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn poly(&self) -> &[BigInt] {
        &self.poly
    }

    fn build(n: u32) -> Cyclotomic {
        let poly = cyclotomic_poly(n);
        let phi = poly.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![BigInt::zero(); phi];
        cur[0] = BigInt::one();
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by x and reduce the x^phi term
            let mut next = vec![BigInt::zero(); phi + 1];
            for (i, c) in cur.iter().enumerate() {
                next[i + 1] = c.clone();
            }
            let top = next[phi].clone();
            if !top.is_zero() {
                for i in 0..phi {
                    next[i] -= &top * &poly[i];
                }
            }
            next.truncate(phi);
            cur = next;
        }
        Cyclotomic { n, phi, poly, powers }
    }
}

fn cyclotomic_poly(n: u32) -> Vec<BigInt> {
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = BigInt::from(-1);
    p[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let q = cyclotomic_poly(d);
            p = div_monic_int(&p, &q);
        }
    }
    p
}

fn div_monic_int(p: &[BigInt], q: &[BigInt]) -> Vec<BigInt> {
    let dq = q.len() - 1;
    let mut r = p.to_vec();
    let dp = r.len() - 1;
    let mut out = vec![BigInt::zero(); dp - dq + 1];
    for i in (0..=dp - dq).rev() {
        let c = r[i + dq].clone();
        if c.is_zero() {
            continue;
        }
        for j in 0..=dq {
            r[i + j] -= &c * &q[j];
        }
        out[i] = c;
    }
    debug_assert!(r.iter().all(|c| c.is_zero()));
    out
}

/// Shared field data for `ℚ(ζ_n)`; cached per order.
pub fn field(n: u32) -> Arc<Cyclotomic> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Cyclotomic>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("field cache poisoned");
    guard
        .entry(n)
        .or_insert_with(|| Arc::new(Cyclotomic::build(n)))
        .clone()
}

pub fn euler_phi(n: u32) -> usize {
    let mut result = n as usize;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p as usize;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m as usize;
    }
    result
}

/// An exact element of `ℚ(ζ_n)`.
#[derive(Clone)]
pub struct CycNum {
    field: Arc<Cyclotomic>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNum {
    pub fn zero(n: u32) -> CycNum {
        let f = field(n);
        let num = vec![BigInt::zero(); f.phi];
        CycNum { field: f, num, den: BigInt::one() }
    }

    pub fn one(n: u32) -> CycNum {
        CycNum::from_int(n, 1)
    }

    pub fn from_int(n: u32, v: i64) -> CycNum {
        let mut z = CycNum::zero(n);
        z.num[0] = BigInt::from(v);
        z
    }

    pub fn from_rat(n: u32, r: &Rat) -> CycNum {
        let mut z = CycNum::zero(n);
        z.num[0] = r.numer().clone();
        z.den = r.denom().clone();
        z.normalize();
        z
    }

    /// Builds `Σ coeffs[i] ζ^i`; `coeffs` may be longer than `φ(n)`.
    pub fn from_coeffs(n: u32, coeffs: &[Rat]) -> CycNum {
        let f = field(n);
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let mut acc = vec![BigInt::zero(); f.phi];
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let scaled = c.numer() * (&den / c.denom());
            let pw = &f.powers[i % f.n as usize];
            for (a, p) in acc.iter_mut().zip(pw) {
                if !p.is_zero() {
                    *a += &scaled * p;
                }
            }
        }
        let mut z = CycNum { field: f, num: acc, den };
        z.normalize();
        z
    }

    /// `ζ_n^k`.
    pub fn root_of_unity(n: u32, k: i64) -> CycNum {
        let f = field(n);
        let idx = k.rem_euclid(n as i64) as usize;
        let num = f.powers[idx].clone();
        CycNum { field: f, num, den: BigInt::one() }
    }

    pub fn order(&self) -> u32 {
        self.field.n
    }

    pub fn coeffs(&self) -> Vec<Rat> {
        self.num
            .iter()
            .map(|c| Rat::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    fn is_rational(&self) -> bool {
        self.num[1..].iter().all(|c| c.is_zero())
    }

    /// The value as a rational number, if it lies in `ℚ`.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.is_rational() {
            Some(Rat::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in self.num.iter_mut() {
                *c = -&*c;
            }
        }
        if self.is_zero() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if !c.is_zero() {
                g = g.gcd(c);
                if g.is_one() {
                    return;
                }
            }
        }
        if !g.is_one() {
            self.den /= &g;
            for c in self.num.iter_mut() {
                if !c.is_zero() {
                    *c /= &g;
                }
            }
        }
    }

    /// Embeds into `ℚ(ζ_m)`; `m` must be a multiple of the current order.
    pub fn embed(&self, m: u32) -> Result<CycNum> {
        let n = self.field.n;
        if m == n {
            return Ok(self.clone());
        }
        if m == 0 || m % n != 0 {
            return Err(AliaError::Domain(format!(
                "cannot embed order {n} into order {m}"
            )));
        }
        let f = field(m);
        let step = (m / n) as usize;
        let mut acc = vec![BigInt::zero(); f.phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let pw = &f.powers[(i * step) % m as usize];
            for (a, p) in acc.iter_mut().zip(pw) {
                if !p.is_zero() {
                    *a += c * p;
                }
            }
        }
        let mut z = CycNum { field: f, num: acc, den: self.den.clone() };
        z.normalize();
        Ok(z)
    }

    fn unify(a: &CycNum, b: &CycNum) -> (CycNum, CycNum) {
        let m = (a.order() as u64).lcm(&(b.order() as u64)) as u32;
        (a.embed(m).expect("lcm embedding"), b.embed(m).expect("lcm embedding"))
    }

    fn same_field(&self, other: &CycNum) -> bool {
        self.field.n == other.field.n
    }

    fn add_same(&self, other: &CycNum, negate: bool) -> CycNum {
        let (num, den) = if self.den == other.den {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if negate { a - b } else { a + b })
                .collect();
            (num, self.den.clone())
        } else {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| {
                    let x = a * &other.den;
                    let y = b * &self.den;
                    if negate {
                        x - y
                    } else {
                        x + y
                    }
                })
                .collect();
            (num, &self.den * &other.den)
        };
        let mut z = CycNum { field: self.field.clone(), num, den };
        z.normalize();
        z
    }

    fn mul_same(&self, other: &CycNum) -> CycNum {
        let f = &self.field;
        let phi = f.phi;
        let num = if other.is_rational() {
            let s = &other.num[0];
            self.num.iter().map(|c| c * s).collect()
        } else if self.is_rational() {
            let s = &self.num[0];
            other.num.iter().map(|c| c * s).collect()
        } else {
            let mut prod = vec![BigInt::zero(); 2 * phi - 1];
            for (i, a) in self.num.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in other.num.iter().enumerate() {
                    if !b.is_zero() {
                        prod[i + j] += a * b;
                    }
                }
            }
            let mut out: Vec<BigInt> = prod[..phi].to_vec();
            for (t, c) in prod.iter().enumerate().skip(phi) {
                if c.is_zero() {
                    continue;
                }
                let pw = &f.powers[t % f.n as usize];
                for (o, p) in out.iter_mut().zip(pw) {
                    if !p.is_zero() {
                        *o += c * p;
                    }
                }
            }
            out
        };
        let mut z = CycNum { field: f.clone(), num, den: &self.den * &other.den };
        z.normalize();
        z
    }

    pub fn inv(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(AliaError::DivisionByZero);
        }
        if let Some(r) = self.as_rat() {
            return Ok(CycNum::from_rat(self.order(), &(Rat::one() / r)));
        }
        // extended Euclid in ℚ[x] against Φ_n
        let modulus: Vec<Rat> = self.field.poly.iter().map(|c| Rat::from(c.clone())).collect();
        let a: Vec<Rat> = self.coeffs();
        let (g, s) = poly_ext_gcd(&modulus, &a);
        debug_assert_eq!(g.len(), 1);
        let c = g[0].clone();
        let coeffs: Vec<Rat> = s.iter().map(|x| x / &c).collect();
        Ok(CycNum::from_coeffs(self.order(), &coeffs))
    }

    pub fn checked_div(&self, other: &CycNum) -> Result<CycNum> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<CycNum> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = CycNum::one(self.order());
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            k >>= 1;
            if k > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> CycNum {
        let n = self.field.n as i64;
        let coeffs: Vec<(usize, &BigInt)> =
            self.num.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        let mut acc = vec![BigInt::zero(); self.field.phi];
        for (i, c) in coeffs {
            let pw = &self.field.powers[(-(i as i64)).rem_euclid(n) as usize];
            for (a, p) in acc.iter_mut().zip(pw) {
                if !p.is_zero() {
                    *a += c * p;
                }
            }
        }
        let mut z = CycNum { field: self.field.clone(), num: acc, den: self.den.clone() };
        z.normalize();
        z
    }

    pub fn scale_rat(&self, r: &Rat) -> CycNum {
        let mut z = CycNum {
            field: self.field.clone(),
            num: self.num.iter().map(|c| c * r.numer()).collect(),
            den: &self.den * r.denom(),
        };
        z.normalize();
        z
    }

    /// The canonical text form `c0 + c1*z + c2*z^2 …`.
    pub fn canonical(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let r = Rat::new(c.clone(), self.den.clone());
            let body = match i {
                0 => format!("{}", r.abs()),
                1 => format!("{}*z", r.abs()),
                _ => format!("{}*z^{}", r.abs(), i),
            };
            if out.is_empty() {
                if r.is_negative() {
                    out.push('-');
                }
            } else if r.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&body);
        }
        out
    }
}

fn poly_trim(p: &mut Vec<Rat>) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    if r.len() - 1 < db {
        return (vec![Rat::zero()], r);
    }
    let lc = b[db].clone();
    let mut q = vec![Rat::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = &r[i + db] / &lc;
        if c.is_zero() {
            continue;
        }
        for j in 0..=db {
            let t = &c * &b[j];
            r[i + j] -= t;
        }
        q[i] = c;
    }
    r.truncate(db.max(1));
    poly_trim(&mut r);
    (q, r)
}

fn poly_sub_mul(a: &[Rat], q: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let len = a.len().max(q.len() + b.len() - 1);
    let mut out = vec![Rat::zero(); len];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, x) in q.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] -= x * y;
        }
    }
    poly_trim(&mut out);
    out
}

/// Returns `(g, s)` with `s·a ≡ g (mod m)` and `g` the gcd (a constant when `a` is a unit).
fn poly_ext_gcd(m: &[Rat], a: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    poly_trim(&mut r1);
    let mut s0 = vec![Rat::zero()];
    let mut s1 = vec![Rat::one()];
    while r1.len() != 1 {
        let (q, r) = poly_divrem(&r0, &r1);
        let s2 = poly_sub_mul(&s0, &q, &s1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    (r1, s1)
}

impl PartialEq for CycNum {
    fn eq(&self, other: &CycNum) -> bool {
        if self.same_field(other) {
            self.den == other.den && self.num == other.num
        } else {
            let (a, b) = CycNum::unify(self, other);
            a.den == b.den && a.num == b.num
        }
    }
}

impl Eq for CycNum {}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]_{}", self.canonical(), self.field.n)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        if self.same_field(rhs) {
            self.add_same(rhs, false)
        } else {
            let (a, b) = CycNum::unify(self, rhs);
            a.add_same(&b, false)
        }
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        if self.same_field(rhs) {
            self.add_same(rhs, true)
        } else {
            let (a, b) = CycNum::unify(self, rhs);
            a.add_same(&b, true)
        }
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        if self.same_field(rhs) {
            self.mul_same(rhs)
        } else {
            let (a, b) = CycNum::unify(self, rhs);
            a.mul_same(&b)
        }
    }
}

impl<'a> Div<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    /// Panics on division by zero; use [`CycNum::checked_div`] to handle it.
    fn div(self, rhs: &CycNum) -> CycNum {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: &CycNum) -> CycNum {
                (&self).$m(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

#[derive(Serialize, Deserialize)]
struct CycRepr {
    order: u32,
    coeffs: Vec<String>,
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycRepr {
            order: self.order(),
            coeffs: self.coeffs().iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<CycNum, D::Error> {
        let r = CycRepr::deserialize(d)?;
        if r.order == 0 {
            return Err(serde::de::Error::custom("order must be positive"));
        }
        let coeffs = r
            .coeffs
            .iter()
            .map(|s| parse_rat(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(CycNum::from_coeffs(r.order, &coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        let p = field(12);
        let expect: Vec<BigInt> = [1, 0, -1, 0, 1].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(p.poly(), &expect[..]);
        assert_eq!(field(20).degree(), 8);
        assert_eq!(field(24).degree(), 8);
        assert_eq!(euler_phi(20), 8);
        assert_eq!(field(1).degree(), 1);
    }

    #[test]
    fn roots_of_unity() {
        assert!(CycNum::root_of_unity(1, 0).is_one());
        let i = CycNum::root_of_unity(4, 1);
        assert_eq!(&i * &i, CycNum::from_int(4, -1));
        let z = CycNum::root_of_unity(20, 2);
        assert!(z.pow(10).unwrap().is_one());
        assert!(!z.pow(5).unwrap().is_one());
        let w = CycNum::root_of_unity(3, 1);
        assert_eq!(&w + &w.pow(2).unwrap(), CycNum::from_int(3, -1));
    }

    #[test]
    fn inverse_and_embedding() {
        let a = CycNum::from_coeffs(12, &[rat(1, 2), rat(3, 1), rat(-2, 7), rat(5, 3)]);
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
        let e = a.embed(24).unwrap();
        assert_eq!(e, a);
        assert!(CycNum::zero(5).inv().is_err());
    }

    #[test]
    fn i_sqrt3_in_zeta12() {
        let isq3 = &CycNum::from_int(12, 2) * &CycNum::root_of_unity(12, 2) - CycNum::one(12);
        assert_eq!(&isq3 * &isq3, CycNum::from_int(12, -3));
    }

    #[test]
    fn canonical_text() {
        let a = CycNum::from_coeffs(12, &[rat(1, 2), rat(0, 1), rat(0, 1), rat(-1, 2)]);
        assert_eq!(a.canonical(), "1/2 - 1/2*z^3");
        assert_eq!(CycNum::zero(7).canonical(), "0");
        let json = serde_json::to_string(&a).unwrap();
        let back: CycNum = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
    }
}
