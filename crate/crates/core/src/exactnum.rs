//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! A [`CycNum`] stores the remainder of its defining polynomial in `ζ_N`
//! modulo the cyclotomic polynomial `Φ_N`, so two values at the same
//! conductor are equal exactly when their coefficient vectors are. Values at
//! different conductors are compared and combined after lifting both to the
//! least common multiple through `ζ_N = ζ_L^{L/N}`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

fn cache() -> &'static Mutex<HashMap<u32, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients (constant term first) of the `n`-th cyclotomic polynomial.
///
/// Computed as `(x^n - 1) / Π_{d | n, d < n} Φ_d` and memoized.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<BigInt>> {
    assert!(n > 0, "cyclotomic polynomial of conductor 0");
    if let Some(p) = cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let den = cyclotomic_polynomial(d);
            num = exact_div_monic(&num, &den);
        }
    }
    let p = Arc::new(num);
    cache().lock().unwrap().insert(n, p.clone());
    p
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = num.len() - 1 - dd;
    let mut quot = vec![BigInt::zero(); qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// Euler's totient, the degree of `Φ_n`.
pub fn euler_phi(n: u32) -> usize {
    cyclotomic_polynomial(n).len() - 1
}

/// Reduces a polynomial in `ζ_n` (any length) to canonical form.
fn reduce(n: u32, coeffs: Vec<BigRational>) -> Vec<BigRational> {
    let n_us = n as usize;
    let mut folded = coeffs;
    if folded.len() > n_us {
        let mut f = vec![BigRational::zero(); n_us];
        for (k, c) in folded.into_iter().enumerate() {
            if !c.is_zero() {
                f[k % n_us] += c;
            }
        }
        folded = f;
    }
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    for k in (deg..folded.len()).rev() {
        if folded[k].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut folded[k], BigRational::zero());
        for (i, p) in phi.iter().enumerate().take(deg) {
            if !p.is_zero() {
                folded[k - deg + i] -= &c * BigRational::from_integer(p.clone());
            }
        }
    }
    folded.resize(deg, BigRational::zero());
    folded
}

/// An exact element of `Q(ζ_N)`.
#[derive(Clone)]
pub struct CycNum {
    conductor: u32,
    /// Canonical remainder mod `Φ_N`, exactly `φ(N)` entries.
    coeffs: Vec<BigRational>,
}

impl CycNum {
    /// Builds `Σ coeffs[k] ζ_N^k` from coefficients of any length.
    pub fn new(conductor: u32, coeffs: Vec<BigRational>) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::InvalidConductor(0));
        }
        Ok(CycNum {
            conductor,
            coeffs: reduce(conductor, coeffs),
        })
    }

    pub fn from_rational(q: BigRational) -> Self {
        CycNum {
            conductor: 1,
            coeffs: vec![q],
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    /// `ζ_N^{k mod N}`.
    pub fn root_of_unity(conductor: u32, k: i64) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::InvalidConductor(0));
        }
        let e = k.rem_euclid(conductor as i64) as usize;
        let mut c = vec![BigRational::zero(); e + 1];
        c[e] = BigRational::one();
        Self::new(conductor, c)
    }

    /// `Σ_{ξ ∈ R_n} ξ^k`, summed term by term.
    pub fn geometric_sum(n: u32, k: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidConductor(0));
        }
        let mut acc = vec![BigRational::zero(); n as usize];
        for t in 0..n as i64 {
            let e = (t * k).rem_euclid(n as i64) as usize;
            acc[e] += BigRational::one();
        }
        Self::new(n, acc)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Canonical coefficients, `φ(N)` of them.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Canonical coefficients padded with zeros to length `N`.
    pub fn coeffs_full(&self) -> Vec<BigRational> {
        let mut c = self.coeffs.clone();
        c.resize(self.conductor as usize, BigRational::zero());
        c
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            Some(self.coeffs.first().cloned().unwrap_or_else(BigRational::zero))
        } else {
            None
        }
    }

    /// Re-expresses the value at conductor `target`, a multiple of the current one.
    pub fn lift(&self, target: u32) -> Self {
        assert!(
            target.is_multiple_of(self.conductor),
            "cannot lift conductor {} to {}",
            self.conductor,
            target
        );
        if target == self.conductor {
            return self.clone();
        }
        if self.is_rational() {
            let mut c = vec![BigRational::zero(); euler_phi(target)];
            c[0] = self.coeffs[0].clone();
            return CycNum {
                conductor: target,
                coeffs: c,
            };
        }
        let step = (target / self.conductor) as usize;
        let mut c = vec![BigRational::zero(); target as usize];
        for (k, v) in self.coeffs.iter().enumerate() {
            c[k * step] = v.clone();
        }
        CycNum {
            conductor: target,
            coeffs: reduce(target, c),
        }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let l = a.conductor.lcm(&b.conductor);
        (a.lift(l), b.lift(l))
    }

    fn scale(&self, q: &BigRational) -> Self {
        CycNum {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    fn add_ref(&self, other: &Self) -> Self {
        if self.conductor == other.conductor {
            return CycNum {
                conductor: self.conductor,
                coeffs: self
                    .coeffs
                    .iter()
                    .zip(&other.coeffs)
                    .map(|(a, b)| a + b)
                    .collect(),
            };
        }
        let (a, b) = Self::common(self, other);
        a.add_ref(&b)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.conductor != other.conductor {
            if self.is_rational() && other.conductor.is_multiple_of(self.conductor) {
                return other.scale(&self.coeffs[0]);
            }
            if other.is_rational() && self.conductor.is_multiple_of(other.conductor) {
                return self.scale(&other.coeffs[0]);
            }
            let (a, b) = Self::common(self, other);
            return a.mul_ref(&b);
        }
        if self.is_rational() {
            return other.scale(&self.coeffs[0]);
        }
        if other.is_rational() {
            return self.scale(&other.coeffs[0]);
        }
        let mut prod = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        CycNum {
            conductor: self.conductor,
            coeffs: reduce(self.conductor, prod),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in `Q[x]`.
    pub fn checked_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.as_rational() {
            let mut c = vec![BigRational::zero(); self.coeffs.len()];
            c[0] = q.recip();
            return Some(CycNum {
                conductor: self.conductor,
                coeffs: c,
            });
        }
        let modulus: Vec<BigRational> = cyclotomic_polynomial(self.conductor)
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let s = poly_inverse_mod(&self.coeffs, &modulus)?;
        Some(CycNum {
            conductor: self.conductor,
            coeffs: reduce(self.conductor, s),
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        let inv = other.checked_inv().ok_or(Error::DivisionByZero)?;
        Ok(self.mul_ref(&inv))
    }

    /// Floating-point value at `ζ_N = e^{2πi/N}`. Not used for any exact decision.
    pub fn to_complex(&self) -> Complex64 {
        let n = self.conductor as f64;
        self.coeffs
            .iter()
            .enumerate()
            .fold(Complex64::new(0.0, 0.0), |acc, (k, c)| {
                let theta = 2.0 * std::f64::consts::PI * k as f64 / n;
                acc + Complex64::from_polar(1.0, theta) * c.to_f64().unwrap_or(f64::NAN)
            })
    }

    /// Short human-readable form: a plain rational when possible, otherwise a
    /// sum of `c·z^k` terms with `z = ζ_N`.
    pub fn pretty(&self) -> String {
        if let Some(q) = self.as_rational() {
            return q.to_string();
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => c.to_string(),
                _ if c.is_one() => format!("z{}^{}", self.conductor, k),
                _ => format!("{}*z{}^{}", c, self.conductor, k),
            })
            .collect();
        terms.join(" + ")
    }
}

fn trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = &b[db];
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / lead;
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] -= &c * bi;
        }
        q[shift] = c;
        r.pop();
        trim(&mut r);
    }
    (q, r)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

/// `s` with `s·a ≡ 1 (mod m)`, or `None` when `gcd(a, m) ≠ 1`.
fn poly_inverse_mod(a: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0: Vec<BigRational> = vec![];
    let mut s1: Vec<BigRational> = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].recip();
    Some(s0.into_iter().map(|x| x * &c).collect())
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        if self.is_rational() && other.is_rational() {
            return self.coeffs[0] == other.coeffs[0];
        }
        let (a, b) = Self::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycNum {}

impl Zero for CycNum {
    fn zero() -> Self {
        CycNum {
            conductor: 1,
            coeffs: vec![BigRational::zero()],
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl One for CycNum {
    fn one() -> Self {
        CycNum {
            conductor: 1,
            coeffs: vec![BigRational::one()],
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            conductor: self.conductor,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -self.clone()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&CycNum> for &CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                let f: fn(&CycNum, &CycNum) -> CycNum = $body;
                f(self, rhs)
            }
        }
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                (&self).$method(rhs)
            }
        }
        impl $tr<CycNum> for &CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_ref(b));
forward_binop!(Sub, sub, |a, b| a.add_ref(&-b));
forward_binop!(Mul, mul, |a, b| a.mul_ref(b));
forward_binop!(Div, div, |a, b| a
    .checked_div(b)
    .expect("division by zero in Q(zeta)"));

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `cyc(N)[c0,c1,...]`, canonical coefficients with rationals as `p/q`.
impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cyc({})[", self.conductor)?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

impl FromStr for CycNum {
    type Err = Error;

    /// Accepts `cyc(N)[...]` with any number of coefficients, or a bare rational.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadNumber(s.to_string());
        let t = s.trim();
        let Some(rest) = t.strip_prefix("cyc(") else {
            return parse_rational(t).map(CycNum::from_rational).ok_or_else(bad);
        };
        let (n, rest) = rest.split_once(')').ok_or_else(bad)?;
        let n: u32 = n.trim().parse().map_err(|_| bad())?;
        let body = rest
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        let coeffs = if body.trim().is_empty() {
            vec![]
        } else {
            body.split(',')
                .map(parse_rational)
                .collect::<Option<Vec<_>>>()
                .ok_or_else(bad)?
        };
        CycNum::new(n, coeffs)
    }
}

impl serde::Serialize for CycNum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for CycNum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Sign of a rational, exposed for report formatting.
pub fn rational_sign(q: &BigRational) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn z(n: u32, k: i64) -> CycNum {
        CycNum::root_of_unity(n, k).unwrap()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        let as_i64 = |n| -> Vec<i64> {
            cyclotomic_polynomial(n)
                .iter()
                .map(|c| c.to_i64().unwrap())
                .collect()
        };
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(2), vec![1, 1]);
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(9), 6);
    }

    #[test]
    fn roots_of_unity_examples() {
        assert_eq!(z(4, 2), CycNum::from_integer(-1));
        assert_eq!(z(3, 1) + z(3, 2), CycNum::from_integer(-1));
        assert_eq!(z(5, 0), CycNum::one());
        assert_eq!(z(5, -1), z(5, 4));
        assert_eq!(CycNum::root_of_unity(0, 1).unwrap_err(), Error::InvalidConductor(0));
    }

    #[test]
    fn zeta6_canonical_form() {
        // Φ_6 = x^2 - x + 1, so x itself is already reduced; x^2 = x - 1.
        let z6 = z(6, 1);
        assert_eq!(z6.coeffs(), &[q(0, 1), q(1, 1)]);
        assert_eq!(z(6, 2).coeffs(), &[q(-1, 1), q(1, 1)]);
        // ζ_6 = ζ_3 + 1 under the embedding ζ_3 = ζ_6^2.
        assert_eq!(z6, z(3, 1) + CycNum::one());
    }

    #[test]
    fn field_arith_examples() {
        assert_eq!(z(4, 1) * z(4, 1), CycNum::from_integer(-1));
        assert_eq!(CycNum::one() / z(3, 1), z(3, 2));
        let p = z(2, 1) * z(3, 1);
        assert_eq!(p.conductor(), 6);
        assert_eq!(p, z(6, 5));
        assert!((p.to_complex() - Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * 5.0 / 6.0)).norm() < 1e-12);
        assert_eq!(
            CycNum::one().checked_div(&CycNum::zero()).unwrap_err(),
            Error::DivisionByZero
        );
    }

    #[test]
    fn geometric_sums() {
        assert_eq!(CycNum::geometric_sum(3, 0).unwrap(), CycNum::from_integer(3));
        assert!(CycNum::geometric_sum(3, 1).unwrap().is_zero());
        assert!(CycNum::geometric_sum(4, 6).unwrap().is_zero());
        assert_eq!(CycNum::geometric_sum(4, 8).unwrap(), CycNum::from_integer(4));
    }

    #[test]
    fn unit_circle_identities() {
        for n in 1..=12u32 {
            assert_eq!(z(n, n as i64), CycNum::one());
            if n > 1 {
                let s = (0..n as i64).fold(CycNum::zero(), |acc, k| acc + z(n, k));
                assert!(s.is_zero(), "sum of {n}-th roots");
            }
        }
    }

    #[test]
    fn inverse_of_non_unit() {
        let a = CycNum::from_integer(2) + z(5, 1) + z(5, 3) * CycNum::from_rational(q(-1, 3));
        let inv = a.checked_inv().unwrap();
        assert_eq!(&a * &inv, CycNum::one());
    }

    #[test]
    fn text_round_trip() {
        let a = z(12, 5) + CycNum::from_rational(q(-7, 3));
        let s = a.to_string();
        assert!(s.starts_with("cyc(12)["));
        assert_eq!(s.parse::<CycNum>().unwrap(), a);
        // Non-canonical input is normalized.
        assert_eq!("cyc(4)[0,0,1]".parse::<CycNum>().unwrap(), CycNum::from_integer(-1));
        assert_eq!("3/4".parse::<CycNum>().unwrap(), CycNum::from_rational(q(3, 4)));
        assert!("cyc(4)[x]".parse::<CycNum>().is_err());
    }

    #[test]
    fn equality_across_conductors() {
        assert_eq!(z(3, 1), z(6, 2));
        assert_eq!(z(3, 1).lift(12), z(12, 4));
        assert_ne!(z(4, 1), z(8, 1));
    }
}
