//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! Values are stored in the power basis `1, ζ, …, ζ^{φ(N)-1}` modulo the
//! `N`-th cyclotomic polynomial, with a single positive common denominator.
//! Canonical form makes coefficient-wise equality decide field equality.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycError {
    #[error("exponent {t} is not coprime to conductor {conductor}")]
    NotCoprime { t: u64, conductor: u32 },
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("cannot parse cyclotomic number at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Reduction data for one conductor.
#[derive(Debug)]
pub struct CyclotomicField {
    conductor: u32,
    degree: usize,
    /// The cyclotomic polynomial, low degree first, monic.
    polynomial: Vec<i64>,
    /// `powers[e]` is `x^e mod Φ_N` for `0 <= e < N`.
    powers: Vec<Vec<i64>>,
}

impl CyclotomicField {
    fn build(n: u32) -> Self {
        let polynomial = cyclotomic_polynomial(n);
        let degree = polynomial.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        if degree == 0 {
            unreachable!("cyclotomic polynomials have positive degree");
        }
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by x, then reduce the overflow coefficient
            let top = cur[degree - 1];
            for k in (1..degree).rev() {
                cur[k] = cur[k - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for k in 0..degree {
                    cur[k] -= top * polynomial[k];
                }
            }
        }
        CyclotomicField {
            conductor: n,
            degree,
            polynomial,
            powers,
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Euler's totient of the conductor, the dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn polynomial(&self) -> &[i64] {
        &self.polynomial
    }

    /// Coefficients of `ζ^e` in the power basis; `e` is taken modulo `N`.
    pub fn power(&self, e: u64) -> &[i64] {
        &self.powers[(e % self.conductor as u64) as usize]
    }
}

/// `Φ_n` by exact division of `x^n - 1` by `Φ_d` for proper divisors `d`.
fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    let n = n as usize;
    let mut p = vec![0i64; n + 1];
    p[0] = -1;
    p[n] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let q = cyclotomic_polynomial(d as u32);
            p = poly_exact_div(&p, &q);
        }
    }
    p
}

fn poly_exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = num.len() - 1 - dd;
    let mut quot = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (t, &dc) in den.iter().enumerate() {
                rem[k + t] -= c * dc;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

static FIELDS: OnceLock<Mutex<HashMap<u32, Arc<CyclotomicField>>>> = OnceLock::new();

/// Shared reduction data for conductor `n`, built once per process.
pub fn field(n: u32) -> Arc<CyclotomicField> {
    assert!(n > 0, "conductor must be positive");
    let cache = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("cyclotomic field cache poisoned");
    guard
        .entry(n)
        .or_insert_with(|| Arc::new(CyclotomicField::build(n)))
        .clone()
}

pub fn lcm_u32(a: u32, b: u32) -> u32 {
    a / a.gcd(&b) * b
}

/// An element of `Q(ζ_N)` in canonical form.
#[derive(Clone)]
pub struct CycNum {
    field: Arc<CyclotomicField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum({})", self)
    }
}

impl CycNum {
    pub fn zero(conductor: u32) -> Self {
        let field = field(conductor);
        let num = vec![BigInt::zero(); field.degree];
        CycNum {
            field,
            num,
            den: BigInt::one(),
        }
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_int(conductor, 1)
    }

    pub fn from_int(conductor: u32, value: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(conductor);
        z.num[0] = value.into();
        z
    }

    pub fn from_ratio(conductor: u32, num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(conductor);
        z.num[0] = num.into();
        z.den = den.into();
        assert!(!z.den.is_zero(), "zero denominator");
        z.canonicalize();
        z
    }

    /// `ζ_N^k`.
    pub fn zeta_pow(conductor: u32, k: u64) -> Self {
        let field = field(conductor);
        let num = field.power(k).iter().map(|&c| BigInt::from(c)).collect();
        CycNum {
            field,
            num,
            den: BigInt::one(),
        }
    }

    /// Builds `(Σ_e coeffs[e] ζ^e) / den` where exponents are arbitrary
    /// (reduced modulo `N` and then modulo `Φ_N`).
    pub fn from_exponent_coeffs(conductor: u32, coeffs: &[BigInt], den: BigInt) -> Self {
        let field = field(conductor);
        let mut num = vec![BigInt::zero(); field.degree];
        for (e, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, &p) in field.power(e as u64).iter().enumerate() {
                if p != 0 {
                    num[k] += c * p;
                }
            }
        }
        assert!(!den.is_zero(), "zero denominator");
        let mut z = CycNum { field, num, den };
        z.canonicalize();
        z
    }

    /// Builds from power-basis coefficients (length at most `φ(N)`).
    pub fn from_basis(conductor: u32, coeffs: Vec<BigInt>, den: BigInt) -> Self {
        let field = field(conductor);
        assert!(coeffs.len() <= field.degree, "too many basis coefficients");
        let mut num = coeffs;
        num.resize(field.degree, BigInt::zero());
        assert!(!den.is_zero(), "zero denominator");
        let mut z = CycNum { field, num, den };
        z.canonicalize();
        z
    }

    fn canonicalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in &mut self.num {
                *c = -&*c;
            }
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor
    }

    pub fn field(&self) -> &CyclotomicField {
        &self.field
    }

    /// Power-basis numerator coefficients.
    pub fn numerator(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational integer, if it is one.
    pub fn is_rational_integer(&self) -> Option<BigInt> {
        if self.den.is_one() && self.num[1..].iter().all(Zero::is_zero) {
            Some(self.num[0].clone())
        } else {
            None
        }
    }

    /// `(numerator, denominator)` if the value is rational.
    pub fn as_rational(&self) -> Option<(BigInt, BigInt)> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some((self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// Algebraic integer test: in the power basis of `Z[ζ]` this is
    /// exactly a trivial denominator.
    pub fn is_algebraic_integer(&self) -> bool {
        self.den.is_one()
    }

    /// Re-expresses the value in `Q(ζ_M)`; `M` must be a multiple of `N`.
    pub fn embed(&self, m: u32) -> CycNum {
        let n = self.conductor();
        assert!(m.is_multiple_of(n), "cannot embed conductor {n} into {m}");
        if m == n {
            return self.clone();
        }
        let step = (m / n) as usize;
        let mut coeffs = vec![BigInt::zero(); m as usize];
        for (k, c) in self.num.iter().enumerate() {
            coeffs[k * step] = c.clone();
        }
        CycNum::from_exponent_coeffs(m, &coeffs, self.den.clone())
    }

    fn aligned(a: &CycNum, b: &CycNum) -> (CycNum, CycNum) {
        let m = lcm_u32(a.conductor(), b.conductor());
        (a.embed(m), b.embed(m))
    }

    /// The field automorphism `ζ ↦ ζ^t`.
    pub fn galois(&self, t: u64) -> Result<CycNum, CycError> {
        let n = self.conductor();
        if t.gcd(&(n as u64)) != 1 {
            return Err(CycError::NotCoprime { t, conductor: n });
        }
        let mut coeffs = vec![BigInt::zero(); n as usize];
        for (k, c) in self.num.iter().enumerate() {
            let e = (k as u64 * t) % n as u64;
            coeffs[e as usize] += c;
        }
        Ok(CycNum::from_exponent_coeffs(n, &coeffs, self.den.clone()))
    }

    /// Complex conjugation, `ζ ↦ ζ^{N-1}`.
    pub fn conj(&self) -> CycNum {
        let n = self.conductor() as u64;
        self.galois(if n == 1 { 1 } else { n - 1 })
            .expect("N-1 is coprime to N")
    }

    /// `a · conj(a)`.
    pub fn abs_squared(&self) -> CycNum {
        self * &self.conj()
    }

    pub fn pow(&self, mut e: u64) -> CycNum {
        let mut base = self.clone();
        let mut acc = CycNum::one(self.conductor());
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

    /// Multiplicative order if the value is a root of unity. Every root of
    /// unity in `Q(ζ_N)` has order dividing `lcm(2, N)`.
    pub fn is_root_of_unity(&self) -> Option<u32> {
        if self.is_zero() || !self.den.is_one() {
            return None;
        }
        let l = lcm_u32(2, self.conductor());
        if !self.pow(l as u64).is_one() {
            return None;
        }
        (1..=l)
            .filter(|d| l.is_multiple_of(*d))
            .find(|&d| self.pow(d as u64).is_one())
    }

    /// Multiplies by the rational `num/den`.
    pub fn scale(&self, num: &BigInt, den: &BigInt) -> CycNum {
        assert!(!den.is_zero(), "division by zero");
        let mut z = CycNum {
            field: self.field.clone(),
            num: self.num.iter().map(|c| c * num).collect(),
            den: &self.den * den,
        };
        z.canonicalize();
        z
    }

    pub fn div_int(&self, d: impl Into<BigInt>) -> CycNum {
        self.scale(&BigInt::one(), &d.into())
    }

    pub fn mul_int(&self, m: impl Into<BigInt>) -> CycNum {
        self.scale(&m.into(), &BigInt::one())
    }

    /// Total order used for reproducible sorting: by conductor, then the
    /// numerator coefficients, then the denominator.
    pub fn canonical_cmp(&self, other: &CycNum) -> Ordering {
        self.conductor()
            .cmp(&other.conductor())
            .then_with(|| self.num.cmp(&other.num))
            .then_with(|| self.den.cmp(&other.den))
    }

    fn add_same(&self, other: &CycNum, negate: bool) -> CycNum {
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| {
                let l = a * &other.den;
                let r = b * &self.den;
                if negate {
                    l - r
                } else {
                    l + r
                }
            })
            .collect();
        let mut z = CycNum {
            field: self.field.clone(),
            num,
            den: &self.den * &other.den,
        };
        z.canonicalize();
        z
    }

    fn mul_same(&self, other: &CycNum) -> CycNum {
        let n = self.conductor() as usize;
        let mut prod = vec![BigInt::zero(); n];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[(i + j) % n] += a * b;
                }
            }
        }
        let deg = self.field.degree;
        let mut num = vec![BigInt::zero(); deg];
        for (e, c) in prod.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if e < deg {
                num[e] += c;
            } else {
                for (k, &p) in self.field.powers[e].iter().enumerate() {
                    if p != 0 {
                        num[k] += &c * p;
                    }
                }
            }
        }
        let mut z = CycNum {
            field: self.field.clone(),
            num,
            den: &self.den * &other.den,
        };
        z.canonicalize();
        z
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor() == other.conductor() {
            self.den == other.den && self.num == other.num
        } else {
            let (a, b) = CycNum::aligned(self, other);
            a.den == b.den && a.num == b.num
        }
    }
}

impl Eq for CycNum {}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &'a CycNum) -> CycNum {
        if self.conductor() == rhs.conductor() {
            self.add_same(rhs, false)
        } else {
            let (a, b) = CycNum::aligned(self, rhs);
            a.add_same(&b, false)
        }
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &'a CycNum) -> CycNum {
        if self.conductor() == rhs.conductor() {
            self.add_same(rhs, true)
        } else {
            let (a, b) = CycNum::aligned(self, rhs);
            a.add_same(&b, true)
        }
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &'a CycNum) -> CycNum {
        if self.conductor() == rhs.conductor() {
            self.mul_same(rhs)
        } else {
            let (a, b) = CycNum::aligned(self, rhs);
            a.mul_same(&b)
        }
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

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

/// Renders as `(c0 + c1*z + c2*z^2)/d @N`, where `z` is a primitive `N`-th
/// root of unity. Rationals drop the parentheses and the annotation.
impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((n, d)) = self.as_rational() {
            return if d.is_one() {
                write!(f, "{n}")
            } else {
                write!(f, "{n}/{d}")
            };
        }
        let mut body = String::new();
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if body.is_empty() {
                if c.is_negative() {
                    body.push('-');
                }
            } else {
                body.push_str(if c.is_negative() { " - " } else { " + " });
            }
            match k {
                0 => body.push_str(&mag.to_string()),
                _ => {
                    if !mag.is_one() {
                        body.push_str(&format!("{mag}*"));
                    }
                    body.push('z');
                    if k > 1 {
                        body.push_str(&format!("^{k}"));
                    }
                }
            }
        }
        if self.den.is_one() {
            write!(f, "({body}) @{}", self.conductor())
        } else {
            write!(f, "({body})/{} @{}", self.den, self.conductor())
        }
    }
}

impl FromStr for CycNum {
    type Err = CycError;

    /// Parses the rendering produced by `Display`. Exponents above `φ(N)-1`
    /// are accepted and reduced. Without an `@N` suffix the value must be
    /// rational and gets conductor 1.
    fn from_str(s: &str) -> Result<Self, CycError> {
        let err = |pos: usize, msg: &str| CycError::Parse {
            pos,
            msg: msg.to_string(),
        };
        let (body, conductor) = match s.rfind('@') {
            Some(at) => {
                let n: u32 = s[at + 1..].trim().parse().map_err(|_| err(at + 1, "bad conductor"))?;
                if n == 0 {
                    return Err(CycError::ZeroConductor);
                }
                (&s[..at], n)
            }
            None => (s, 1),
        };
        let body = body.trim();
        let (inner, den_str) = if let Some(rest) = body.strip_prefix('(') {
            let close = rest.rfind(')').ok_or_else(|| err(0, "unbalanced parenthesis"))?;
            let tail = rest[close + 1..].trim();
            let den = match tail.strip_prefix('/') {
                Some(d) => Some(d.trim()),
                None if tail.is_empty() => None,
                None => return Err(err(close + 2, "expected '/' after ')'")),
            };
            (&rest[..close], den)
        } else {
            match body.split_once('/') {
                Some((a, b)) if !a.contains('z') => (a, Some(b.trim())),
                _ => (body, None),
            }
        };
        let den: BigInt = match den_str {
            Some(d) => d.parse().map_err(|_| err(0, "bad denominator"))?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(err(0, "zero denominator"));
        }
        let mut coeffs = vec![BigInt::zero(); conductor as usize];
        let compact: String = inner.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err(0, "empty number"));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 && !compact[..i].ends_with('^') {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        for term in terms {
            let (sign, t) = match term.strip_prefix('-') {
                Some(r) => (-1, r),
                None => (1, term.strip_prefix('+').unwrap_or(term)),
            };
            let (coef, exp) = if let Some(zpos) = t.find('z') {
                let c = t[..zpos].trim_end_matches('*');
                let coef: BigInt = if c.is_empty() {
                    BigInt::one()
                } else {
                    c.parse().map_err(|_| err(0, "bad coefficient"))?
                };
                let e = match t[zpos + 1..].strip_prefix('^') {
                    Some(e) => e.parse::<u64>().map_err(|_| err(0, "bad exponent"))?,
                    None if t.len() == zpos + 1 => 1,
                    None => return Err(err(0, "trailing characters after z")),
                };
                (coef, e)
            } else {
                (t.parse::<BigInt>().map_err(|_| err(0, "bad integer"))?, 0)
            };
            if exp > 0 && conductor == 1 {
                return Err(err(0, "powers of z need an @N conductor"));
            }
            coeffs[(exp % conductor as u64) as usize] += coef * sign;
        }
        Ok(CycNum::from_exponent_coeffs(conductor, &coeffs, den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: u64) -> CycNum {
        CycNum::zeta_pow(n, k)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn third_roots_sum_to_zero() {
        let s = &(&z(3, 1) + &z(3, 2)) + &CycNum::one(3);
        assert!(s.is_zero());
    }

    #[test]
    fn i_squared() {
        assert_eq!(&z(4, 1) * &z(4, 1), CycNum::from_int(4, -1));
        let a = &CycNum::one(5) + &z(5, 1);
        assert_eq!(&a * &CycNum::one(5), a);
    }

    #[test]
    fn conjugation() {
        assert_eq!(z(4, 1).conj(), -z(4, 1));
        let q = CycNum::from_ratio(7, 3, 5);
        assert_eq!(q.conj(), q);
        let r = &z(5, 1) + &z(5, 4);
        assert_eq!(r.conj(), r);
    }

    #[test]
    fn galois_maps() {
        assert_eq!(z(5, 1).galois(2).unwrap(), z(5, 2));
        let a = &z(5, 1) + &CycNum::from_int(5, 3);
        assert_eq!(a.galois(1).unwrap(), a);
        assert_eq!(a.galois(2).unwrap().galois(3).unwrap(), a.galois(6 % 5).unwrap());
        assert_eq!(z(6, 1).galois(3), Err(CycError::NotCoprime { t: 3, conductor: 6 }));
    }

    #[test]
    fn rational_integer_detection() {
        assert_eq!(CycNum::from_int(3, 7).is_rational_integer(), Some(7.into()));
        assert_eq!(CycNum::from_ratio(3, 1, 2).is_rational_integer(), None);
        assert_eq!(z(3, 1).is_rational_integer(), None);
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(CycNum::from_int(1, -1).is_root_of_unity(), Some(2));
        let one_plus_i = &CycNum::one(4) + &z(4, 1);
        assert_eq!(one_plus_i.pow(8), CycNum::from_int(4, 16));
        assert_eq!(one_plus_i.is_root_of_unity(), None);
        assert_eq!(z(6, 1).is_root_of_unity(), Some(6));
        // -ζ_3 has order 6 inside conductor 3
        assert_eq!((-z(3, 1)).is_root_of_unity(), Some(6));
        assert_eq!(CycNum::zero(5).is_root_of_unity(), None);
    }

    #[test]
    fn abs_squared_values() {
        assert!(z(4, 1).abs_squared().is_one());
        assert!(CycNum::zero(4).abs_squared().is_zero());
        let one_plus_i = &CycNum::one(4) + &z(4, 1);
        assert_eq!(one_plus_i.abs_squared(), CycNum::from_int(4, 2));
    }

    #[test]
    fn mixed_conductors_embed() {
        let s = &z(4, 1) + &z(3, 1);
        assert_eq!(s.conductor(), 12);
        assert_eq!(z(4, 1), z(12, 3));
        assert_eq!(CycNum::from_int(5, 2), CycNum::from_int(1, 2));
    }

    #[test]
    fn canonical_denominator() {
        let a = CycNum::from_exponent_coeffs(4, &[2.into(), 4.into()], 6.into());
        assert_eq!(a.denominator(), &BigInt::from(3));
        assert_eq!(a.numerator(), &[BigInt::from(1), BigInt::from(2)]);
        let zero = CycNum::from_exponent_coeffs(4, &[0.into()], 6.into());
        assert!(zero.denominator().is_one());
    }

    #[test]
    fn render_and_parse() {
        let a = CycNum::from_exponent_coeffs(8, &[1.into(), 0.into(), (-2).into()], 3.into());
        let s = a.to_string();
        assert_eq!(s, "(1 - 2*z^2)/3 @8");
        assert_eq!(s.parse::<CycNum>().unwrap(), a);
        assert_eq!("7".parse::<CycNum>().unwrap(), CycNum::from_int(1, 7));
        assert_eq!("-1/2".parse::<CycNum>().unwrap(), CycNum::from_ratio(1, -1, 2));
        assert_eq!("(z^3) @4".parse::<CycNum>().unwrap(), -z(4, 1));
        assert_eq!(z(3, 2).to_string(), "(-1 - z) @3");
        assert!("(1 + z".parse::<CycNum>().is_err());
        assert!("z".parse::<CycNum>().is_err());
    }
}
