//! Exact arithmetic in the cyclotomic field `Q(ζ₁₂₀)`.
//!
//! Every element is stored as a residue of `Q[x] / Φ₁₂₀(x)` with `x ↦ ζ₁₂₀ = e^{2πi/120}`,
//! written over a single positive common denominator. The representation is fully
//! reduced, so structural equality is field equality and the type can be hashed.
//!
//! Arithmetic runs on a small-integer path (`i128` accumulators) whenever all
//! numerators fit in 40 bits and falls back to arbitrary precision otherwise.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary precision rational number in lowest terms.
pub type Rational = BigRational;

/// The fixed conductor `N` of the field `Q(ζ_N)`.
pub const CONDUCTOR: u32 = 120;

/// `φ(120)`, the degree of the field over `Q`.
pub const DEGREE: usize = 32;

const SMALL_LIMIT: i64 = 1 << 40;

struct FieldData {
    /// Coefficients of `Φ₁₂₀`, constant term first.
    modulus: Vec<i64>,
    /// `x^e mod Φ₁₂₀` for `0 <= e < 120`.
    powers: Vec<[i64; DEGREE]>,
    /// Exponents `k` with `gcd(k, 120) = 1`, ascending.
    units: Vec<u32>,
}

fn field() -> &'static FieldData {
    static FIELD: OnceLock<FieldData> = OnceLock::new();
    FIELD.get_or_init(FieldData::new)
}

/// Exact division of integer polynomials by a monic divisor (constant term first).
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    let mut quot = vec![0i64; rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

/// `Φ_d` by dividing `x^d - 1` by every `Φ_e` with `e | d`, `e < d`.
fn cyclotomic_polynomial(d: usize, cache: &mut BTreeMap<usize, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = cache.get(&d) {
        return p.clone();
    }
    let mut p = vec![0i64; d + 1];
    p[0] = -1;
    p[d] = 1;
    for e in 1..d {
        if d % e == 0 {
            let phi_e = cyclotomic_polynomial(e, cache);
            p = poly_div_exact(&p, &phi_e);
        }
    }
    cache.insert(d, p.clone());
    p
}

impl FieldData {
    fn new() -> Self {
        let mut cache = BTreeMap::new();
        let modulus = cyclotomic_polynomial(CONDUCTOR as usize, &mut cache);
        assert_eq!(modulus.len() - 1, DEGREE, "Φ₁₂₀ must have degree φ(120) = 32");

        let mut powers = Vec::with_capacity(CONDUCTOR as usize);
        let mut cur = [0i64; DEGREE];
        cur[0] = 1;
        for _ in 0..CONDUCTOR {
            powers.push(cur);
            // multiply by x and reduce the overflowing x^32 term
            let top = cur[DEGREE - 1];
            let mut next = [0i64; DEGREE];
            next[1..DEGREE].copy_from_slice(&cur[..(DEGREE - 1)]);
            if top != 0 {
                for k in 0..DEGREE {
                    next[k] -= top * modulus[k];
                }
            }
            cur = next;
        }
        // x^120 must reduce to 1
        let mut one = [0i64; DEGREE];
        one[0] = 1;
        assert_eq!(cur, one, "x^120 ≢ 1 mod Φ₁₂₀");
        assert!(powers.iter().flatten().all(|c| c.abs() <= 64));

        let units = (1..CONDUCTOR).filter(|k| k.gcd(&CONDUCTOR) == 1).collect::<Vec<_>>();
        assert_eq!(units.len(), DEGREE);
        FieldData {
            modulus,
            powers,
            units,
        }
    }
}

/// Coefficients of the defining polynomial `Φ₁₂₀`, constant term first.
pub fn modulus() -> &'static [i64] {
    &field().modulus
}

/// The exponents `k` in `1..120` coprime to 120, i.e. the Galois group.
pub fn galois_units() -> &'static [u32] {
    &field().units
}

/// An exact element of `Q(ζ₁₂₀)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloNum {
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycloNum {
    pub fn zero() -> Self {
        CycloNum {
            num: vec![BigInt::zero(); DEGREE],
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        let mut c = Self::zero();
        c.num[0] = BigInt::from(n);
        c
    }

    pub fn from_rational(q: &Rational) -> Self {
        let mut num = vec![BigInt::zero(); DEGREE];
        num[0] = q.numer().clone();
        Self::from_big(num, q.denom().clone())
    }

    /// Builds a value from rational coefficients in the power basis `1, ζ, …, ζ³¹`.
    pub fn from_coeffs(coeffs: &[Rational]) -> Result<Self> {
        if coeffs.len() != DEGREE {
            return Err(Error::Parse(format!(
                "expected {DEGREE} coefficients, got {}",
                coeffs.len()
            )));
        }
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Ok(Self::from_big(num, den))
    }

    /// Rational coefficients in the power basis.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|n| Rational::new(n.clone(), self.den.clone()))
            .collect()
    }

    fn from_big(mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        assert!(!den.is_zero());
        if den.is_negative() {
            den = -den;
            for n in num.iter_mut() {
                *n = -&*n;
            }
        }
        let g = num.iter().fold(den.clone(), |acc, n| acc.gcd(n));
        if !g.is_one() {
            for n in num.iter_mut() {
                *n = &*n / &g;
            }
            den = &den / &g;
        }
        CycloNum { num, den }
    }

    fn from_i128(mut num: [i128; DEGREE], mut den: i128) -> Self {
        debug_assert!(den != 0);
        if den < 0 {
            den = -den;
            for n in num.iter_mut() {
                *n = -*n;
            }
        }
        let g = num.iter().fold(den, |acc, &n| acc.gcd(&n));
        if g > 1 {
            for n in num.iter_mut() {
                *n /= g;
            }
            den /= g;
        }
        CycloNum {
            num: num.iter().map(|&n| BigInt::from(n)).collect(),
            den: BigInt::from(den),
        }
    }

    fn small(&self) -> Option<([i64; DEGREE], i64)> {
        let den = self.den.to_i64().filter(|d| *d < SMALL_LIMIT)?;
        let mut out = [0i64; DEGREE];
        for (o, n) in out.iter_mut().zip(&self.num) {
            *o = n.to_i64().filter(|v| v.abs() < SMALL_LIMIT)?;
        }
        Some((out, den))
    }

    /// `ζ_m^k = ζ₁₂₀^{(120/m)·k}`.
    pub fn root_of_unity(m: u32, k: i64) -> Result<Self> {
        if m == 0 || CONDUCTOR % m != 0 {
            return Err(Error::Conductor(m));
        }
        let step = (CONDUCTOR / m) as i64;
        let e = (step * k).rem_euclid(CONDUCTOR as i64) as usize;
        Ok(Self::from_power_row(&field().powers[e]))
    }

    /// `ζ₁₂₀^e` for any integer `e`.
    pub fn zeta(e: i64) -> Self {
        let e = e.rem_euclid(CONDUCTOR as i64) as usize;
        Self::from_power_row(&field().powers[e])
    }

    fn from_power_row(row: &[i64; DEGREE]) -> Self {
        CycloNum {
            num: row.iter().map(|&c| BigInt::from(c)).collect(),
            den: BigInt::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational number, if it lies in `Q`.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(Rational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// The value as an integer, if it lies in `Z`.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    /// The value as an `i64`, if it is a (small) rational integer.
    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|n| n.to_i64())
    }

    /// Scales by a rational number.
    pub fn scale(&self, q: &Rational) -> Self {
        let num = self.num.iter().map(|n| n * q.numer()).collect();
        Self::from_big(num, &self.den * q.denom())
    }

    /// Applies the field automorphism `ζ₁₂₀ ↦ ζ₁₂₀^k`.
    pub fn galois(&self, k: i64) -> Result<Self> {
        let k = k.rem_euclid(CONDUCTOR as i64);
        if (k as u32).gcd(&CONDUCTOR) != 1 {
            return Err(Error::NotAutomorphism(k));
        }
        Ok(self.galois_unchecked(k as usize))
    }

    fn galois_unchecked(&self, k: usize) -> Self {
        let powers = &field().powers;
        if let Some((a, den)) = self.small() {
            let mut out = [0i128; DEGREE];
            for (i, &c) in a.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let row = &powers[(i * k) % CONDUCTOR as usize];
                for (o, &p) in out.iter_mut().zip(row) {
                    *o += c as i128 * p as i128;
                }
            }
            return Self::from_i128(out, den as i128);
        }
        let mut out = vec![BigInt::zero(); DEGREE];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &powers[(i * k) % CONDUCTOR as usize];
            for (o, &p) in out.iter_mut().zip(row) {
                if p != 0 {
                    *o += c * p;
                }
            }
        }
        Self::from_big(out, self.den.clone())
    }

    /// Applies the automorphism of the subfield `Q(ζ_m)` given by `ζ_m ↦ ζ_m^k`, lifted to
    /// the smallest exponent `K ≡ k (mod m)` coprime to 120.
    pub fn galois_on_subfield(&self, m: u32, k: i64) -> Result<Self> {
        self.galois(lift_unit(m, k)?)
    }

    /// Complex conjugation, the automorphism `k = -1`.
    pub fn conj(&self) -> Self {
        self.galois_unchecked(CONDUCTOR as usize - 1)
    }

    /// Multiplicative inverse via the field norm.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // a · Π_{k≠1} σ_k(a) = N(a) ∈ Q
        let mut cofactor = CycloNum::one();
        for &k in &field().units[1..] {
            cofactor = &cofactor * &self.galois_unchecked(k as usize);
        }
        let norm = (self * &cofactor)
            .to_rational()
            .expect("field norm must be rational");
        Ok(cofactor.scale(&norm.recip()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = CycloNum::one();
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

    /// Sum of all Galois conjugates, always rational.
    pub fn trace(&self) -> Rational {
        let mut acc = CycloNum::zero();
        for &k in &field().units {
            acc = &acc + &self.galois_unchecked(k as usize);
        }
        acc.to_rational().expect("field trace must be rational")
    }

    /// Complex value under the embedding `ζ₁₂₀ ↦ e^{2πi/120}`; display and diagnostics only.
    pub fn embed(&self) -> Complex64 {
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, n) in self.num.iter().enumerate() {
            if n.is_zero() {
                continue;
            }
            let theta = 2.0 * std::f64::consts::PI * i as f64 / CONDUCTOR as f64;
            acc += Complex64::from_polar(n.to_f64().unwrap_or(f64::NAN), theta);
        }
        acc / den
    }

    /// Compact human-readable form: exact when rational, otherwise the complex approximation.
    pub fn display_approx(&self) -> String {
        if let Some(q) = self.to_rational() {
            return q.to_string();
        }
        let z = self.embed();
        let re = clean(z.re);
        let im = clean(z.im);
        if im == 0.0 {
            format!("{re:.4}")
        } else if re == 0.0 {
            format!("{im:.4}i")
        } else {
            format!("{re:.4}{im:+.4}i")
        }
    }

    /// Numerators and common denominator as strings, for serialization.
    pub fn to_wire(&self) -> CycloWire {
        CycloWire {
            num: self.num.iter().map(ToString::to_string).collect(),
            den: self.den.to_string(),
        }
    }

    pub fn from_wire(w: &CycloWire) -> Result<Self> {
        if w.num.len() != DEGREE {
            return Err(Error::Parse(format!(
                "expected {DEGREE} numerators, got {}",
                w.num.len()
            )));
        }
        let parse = |s: &str| {
            s.parse::<BigInt>()
                .map_err(|e| Error::Parse(format!("bad integer {s:?}: {e}")))
        };
        let num = w.num.iter().map(|s| parse(s)).collect::<Result<Vec<_>>>()?;
        let den = parse(&w.den)?;
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(Self::from_big(num, den))
    }
}

/// Smallest `K ≥ 1` with `K ≡ k (mod m)` and `gcd(K, 120) = 1`.
pub fn lift_unit(m: u32, k: i64) -> Result<i64> {
    if m == 0 || CONDUCTOR % m != 0 {
        return Err(Error::Conductor(m));
    }
    let m = m as i64;
    let k0 = k.rem_euclid(m);
    (0..CONDUCTOR as i64 / m)
        .map(|t| k0 + t * m)
        .find(|&c| c > 0 && (c as u32).gcd(&CONDUCTOR) == 1)
        .ok_or(Error::NotAutomorphism(k))
}

fn clean(x: f64) -> f64 {
    if x.abs() < 5e-13 {
        0.0
    } else {
        x
    }
}

/// Serialized form of a [`CycloNum`]: power-basis numerators over a common denominator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycloWire {
    pub num: Vec<String>,
    pub den: String,
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum({})", self)
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        if !self.den.is_one() {
            write!(f, "(")?;
        }
        for (i, n) in self.num.iter().enumerate() {
            if n.is_zero() {
                continue;
            }
            let sign = if n.is_negative() { "-" } else { "+" };
            let mag = n.abs();
            if first {
                if n.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "z^{i}")?,
                (_, false) => write!(f, "{mag}*z^{i}")?,
            }
        }
        if !self.den.is_one() {
            write!(f, ")/{}", self.den)?;
        }
        Ok(())
    }
}

impl Default for CycloNum {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for CycloNum {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl<'a> Add<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;

    fn add(self, rhs: &'a CycloNum) -> CycloNum {
        if let (Some((a, da)), Some((b, db))) = (self.small(), rhs.small()) {
            let (da, db) = (da as i128, db as i128);
            let mut out = [0i128; DEGREE];
            for k in 0..DEGREE {
                out[k] = a[k] as i128 * db + b[k] as i128 * da;
            }
            return CycloNum::from_i128(out, da * db);
        }
        let num = self
            .num
            .iter()
            .zip(&rhs.num)
            .map(|(a, b)| a * &rhs.den + b * &self.den)
            .collect();
        CycloNum::from_big(num, &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;

    fn sub(self, rhs: &'a CycloNum) -> CycloNum {
        self + &(-rhs)
    }
}

impl<'a> Neg for &'a CycloNum {
    type Output = CycloNum;

    fn neg(self) -> CycloNum {
        CycloNum {
            num: self.num.iter().map(|n| -n).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;

    fn neg(self) -> CycloNum {
        -&self
    }
}

impl<'a> Mul<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;

    fn mul(self, rhs: &'a CycloNum) -> CycloNum {
        if self.is_zero() || rhs.is_zero() {
            return CycloNum::zero();
        }
        let powers = &field().powers;
        if let (Some((a, da)), Some((b, db))) = (self.small(), rhs.small()) {
            let mut prod = [0i128; 2 * DEGREE - 1];
            for (i, &ai) in a.iter().enumerate() {
                if ai == 0 {
                    continue;
                }
                for (j, &bj) in b.iter().enumerate() {
                    prod[i + j] += ai as i128 * bj as i128;
                }
            }
            let mut out = [0i128; DEGREE];
            out.copy_from_slice(&prod[..DEGREE]);
            for (e, &c) in prod.iter().enumerate().skip(DEGREE) {
                if c == 0 {
                    continue;
                }
                for (o, &p) in out.iter_mut().zip(&powers[e]) {
                    *o += c * p as i128;
                }
            }
            return CycloNum::from_i128(out, da as i128 * db as i128);
        }
        let mut prod = vec![BigInt::zero(); 2 * DEGREE - 1];
        for (i, ai) in self.num.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in rhs.num.iter().enumerate() {
                if !bj.is_zero() {
                    prod[i + j] += ai * bj;
                }
            }
        }
        let mut out: Vec<BigInt> = prod[..DEGREE].to_vec();
        for (e, c) in prod.iter().enumerate().skip(DEGREE) {
            if c.is_zero() {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(&powers[e]) {
                if p != 0 {
                    *o += c * p;
                }
            }
        }
        CycloNum::from_big(out, &self.den * &rhs.den)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: CycloNum) -> CycloNum {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: &'a CycloNum) -> CycloNum {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&CycloNum> for CycloNum {
    fn add_assign(&mut self, rhs: &CycloNum) {
        *self = &*self + rhs;
    }
}

impl std::iter::Sum for CycloNum {
    fn sum<I: Iterator<Item = CycloNum>>(iter: I) -> Self {
        iter.fold(CycloNum::zero(), |acc, x| acc + x)
    }
}

/// `√2 = ζ₈ + ζ₈⁻¹`.
pub fn sqrt2() -> CycloNum {
    CycloNum::zeta(15) + CycloNum::zeta(-15)
}

/// `√3 = ζ₁₂ + ζ₁₂⁻¹`.
pub fn sqrt3() -> CycloNum {
    CycloNum::zeta(10) + CycloNum::zeta(-10)
}

/// `√5 = 1 + 2(ζ₅ + ζ₅⁴)`.
pub fn sqrt5() -> CycloNum {
    let two = CycloNum::from_integer(2);
    CycloNum::one() + &two * &(CycloNum::zeta(24) + CycloNum::zeta(96))
}

/// The golden ratio `τ = (1 + √5) / 2`.
pub fn golden_ratio() -> CycloNum {
    (CycloNum::one() + sqrt5()).scale(&Rational::new(1.into(), 2.into()))
}

/// `1/2` as a field element.
pub fn half() -> CycloNum {
    CycloNum::from_rational(&Rational::new(1.into(), 2.into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn modulus_is_phi_120() {
        // Φ₁₂₀(x) = Φ₃₀(x⁴) = x³² + x²⁸ − x²⁰ − x¹⁶ − x¹² + x⁴ + 1
        let mut expected = vec![0i64; 33];
        for (e, c) in [(32, 1), (28, 1), (20, -1), (16, -1), (12, -1), (4, 1), (0, 1)] {
            expected[e] = c;
        }
        assert_eq!(modulus(), expected.as_slice());
    }

    #[test]
    fn root_of_unity_examples() {
        assert!(CycloNum::root_of_unity(1, 0).unwrap().is_one());
        assert!(CycloNum::root_of_unity(120, 120).unwrap().is_one());
        let s = CycloNum::root_of_unity(5, 1).unwrap() + CycloNum::root_of_unity(5, 4).unwrap();
        let expected = 2.0 * (2.0 * std::f64::consts::PI / 5.0).cos();
        assert!((s.embed().re - expected).abs() < 1e-12);
        assert!((s.embed().re - 0.6180339887498949).abs() < 1e-12);
        assert!(matches!(
            CycloNum::root_of_unity(7, 1),
            Err(Error::Conductor(7))
        ));
    }

    #[test]
    fn root_orders() {
        for m in [1u32, 2, 3, 4, 5, 6, 8, 10, 12, 120] {
            for k in -3..=3 {
                let z = CycloNum::root_of_unity(m, k).unwrap();
                assert!(z.pow(m).is_one());
                let ord = m / (k.unsigned_abs() as u32).gcd(&m).max(1);
                let ord = if k == 0 { 1 } else { ord };
                assert!(z.pow(ord).is_one());
                for d in 1..ord {
                    if ord % d == 0 {
                        assert!(!z.pow(d).is_one(), "m={m} k={k} d={d}");
                    }
                }
            }
        }
    }

    #[test]
    fn arithmetic_examples() {
        let z8 = CycloNum::root_of_unity(8, 1).unwrap();
        assert!((z8.inv().unwrap() * &z8).is_one());
        assert!((z8.galois(-1).unwrap() * &z8).is_one());

        let z5 = |k| CycloNum::root_of_unity(5, k).unwrap();
        let a = z5(1) + z5(4);
        let b = z5(2) + z5(3);
        assert_eq!(a * b, CycloNum::from_integer(-1));
        assert!(matches!(CycloNum::zero().inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn galois_examples() {
        let z3 = CycloNum::root_of_unity(3, 1).unwrap();
        assert_eq!(z3.galois(-1).unwrap(), CycloNum::root_of_unity(3, 2).unwrap());
        let z5 = |k| CycloNum::root_of_unity(5, k).unwrap();
        // ζ₅ ↦ ζ₅² is realised on Q(ζ₁₂₀) by any unit K ≡ 2 (mod 5)
        assert_eq!(lift_unit(5, 2).unwrap(), 7);
        assert_eq!((z5(1) + z5(4)).galois_on_subfield(5, 2).unwrap(), z5(2) + z5(3));
        assert_eq!((z5(1) + z5(4)).galois(7).unwrap(), z5(2) + z5(3));
        assert!(matches!(lift_unit(4, 2), Err(Error::NotAutomorphism(2))));
        assert!(matches!(z3.galois(2), Err(Error::NotAutomorphism(2))));
        assert_eq!(z3.galois(1).unwrap(), z3);
    }

    #[test]
    fn embed_examples() {
        assert!(close(CycloNum::one().embed(), Complex64::new(1.0, 0.0)));
        let i = CycloNum::root_of_unity(4, 1).unwrap();
        assert!(close(i.embed(), Complex64::new(0.0, 1.0)));
        let v = CycloNum::root_of_unity(10, 1).unwrap() + CycloNum::root_of_unity(10, 9).unwrap();
        assert!((v.embed().re - 2.0 * (std::f64::consts::PI / 5.0).cos()).abs() < 1e-12);
    }

    #[test]
    fn surds() {
        let two = CycloNum::from_integer(2);
        assert_eq!(&sqrt2() * &sqrt2(), two);
        assert_eq!(&sqrt3() * &sqrt3(), CycloNum::from_integer(3));
        assert_eq!(&sqrt5() * &sqrt5(), CycloNum::from_integer(5));
        let tau = golden_ratio();
        assert_eq!(&tau * &tau, &tau + &CycloNum::one());
        assert!((tau.embed().re - 1.618033988749895).abs() < 1e-12);
    }

    #[test]
    fn big_path_matches_small_path() {
        // force large numerators so arithmetic leaves the i128 path
        let big = CycloNum::from_integer(1 << 50);
        let z = CycloNum::zeta(7);
        let p = &(&big * &z) * &z;
        let q = &big * &CycloNum::zeta(14);
        assert_eq!(p, q);
        let inv = big.inv().unwrap();
        assert!((&inv * &big).is_one());
    }

    #[test]
    fn wire_roundtrip() {
        let x = sqrt5().scale(&Rational::new(3.into(), 7.into())) + CycloNum::zeta(11);
        assert_eq!(CycloNum::from_wire(&x.to_wire()).unwrap(), x);
        let coeffs = x.coeffs();
        assert_eq!(CycloNum::from_coeffs(&coeffs).unwrap(), x);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_cyclo() -> impl Strategy<Value = CycloNum> {
            proptest::collection::vec((-6i64..=6, 0i64..120), 0..5).prop_map(|terms| {
                terms
                    .into_iter()
                    .map(|(c, e)| &CycloNum::from_integer(c) * &CycloNum::zeta(e))
                    .sum()
            })
        }

        fn arb_unit() -> impl Strategy<Value = i64> {
            proptest::sample::select(galois_units().to_vec()).prop_map(|k| k as i64)
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn ring_laws(a in arb_cyclo(), b in arb_cyclo(), c in arb_cyclo()) {
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert!((&a - &a).is_zero());
                prop_assert_eq!((&a - &b).is_zero(), a == b);
            }

            #[test]
            fn inverse(a in arb_cyclo()) {
                prop_assume!(!a.is_zero());
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }

            #[test]
            fn galois_is_a_homomorphism(a in arb_cyclo(), b in arb_cyclo(), k in arb_unit(), k2 in arb_unit()) {
                prop_assert_eq!((&a * &b).galois(k).unwrap(), a.galois(k).unwrap() * b.galois(k).unwrap());
                prop_assert_eq!((&a + &b).galois(k).unwrap(), a.galois(k).unwrap() + b.galois(k).unwrap());
                prop_assert_eq!(
                    a.galois(k).unwrap().galois(k2).unwrap(),
                    a.galois((k * k2).rem_euclid(120)).unwrap()
                );
            }

            #[test]
            fn trace_is_rational(a in arb_cyclo()) {
                let t = a.trace();
                let direct: CycloNum = galois_units()
                    .iter()
                    .map(|&k| a.galois(k as i64).unwrap())
                    .sum();
                prop_assert_eq!(direct.to_rational(), Some(t));
            }

            #[test]
            fn embedding_is_consistent(a in arb_cyclo(), b in arb_cyclo()) {
                let p = (&a * &b).embed();
                prop_assert!((p - a.embed() * b.embed()).norm() < 1e-9);
            }
        }
    }
}
