//! Exact scalar fields: prime fields GF(p) and the rationals.
//!
//! Computation goes through the [`Field`] trait, a field object that owns
//! its arithmetic so elements can stay plain (`u64` residues or
//! [`BigRational`]). [`FieldElement`] is the self-describing scalar used at
//! interface boundaries, where the field is only known at run time.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand_core::RngCore;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("field mismatch: {0} vs {1}")]
    DescriptorMismatch(FieldDescriptor, FieldDescriptor),
    #[error("zero has no multiplicative inverse")]
    ZeroInversion,
    #[error("multiplicative order of zero is undefined")]
    ZeroOrder,
    #[error("{0} is not prime (or exceeds 2^63)")]
    NotPrime(u64),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("cannot parse field descriptor {0:?} (expected \"q\" or \"gfp:<p>\")")]
    Descriptor(String),
}

/// Which field a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldDescriptor {
    Prime(u64),
    Rationals,
}

impl FieldDescriptor {
    pub fn prime(p: u64) -> Result<Self, ScalarError> {
        if p >= 1 << 63 || !is_prime(p) {
            return Err(ScalarError::NotPrime(p));
        }
        Ok(FieldDescriptor::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDescriptor::Prime(p) => *p,
            FieldDescriptor::Rationals => 0,
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Prime(p) => write!(f, "gfp:{p}"),
            FieldDescriptor::Rationals => f.write_str("q"),
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "q" {
            return Ok(FieldDescriptor::Rationals);
        }
        let p = s
            .strip_prefix("gfp:")
            .and_then(|p| p.parse::<u64>().ok())
            .ok_or_else(|| ScalarError::Descriptor(s.to_string()))?;
        FieldDescriptor::prime(p)
    }
}

/// Multiplicative order of a nonzero scalar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl Order {
    pub fn is_finite(&self) -> bool {
        matches!(self, Order::Finite(_))
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(m) => write!(f, "{m}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

/// A field object. Elements are plain values; all arithmetic goes through
/// the field so the element type can stay small.
pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static;

    fn descriptor(&self) -> FieldDescriptor;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, ScalarError>;
    fn multiplicative_order(&self, a: &Self::Elem) -> Result<Order, ScalarError>;
    fn random(&self, rng: &mut dyn RngCore) -> Self::Elem;
    fn render(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem, ScalarError>;
    fn to_element(&self, a: &Self::Elem) -> FieldElement;
    fn from_element(&self, a: &FieldElement) -> Result<Self::Elem, ScalarError>;

    /// Roots lying in the field of a polynomial given by ascending
    /// coefficients. Repeated roots are reported once.
    fn roots(&self, poly: &[Self::Elem], rng: &mut dyn RngCore) -> Vec<Self::Elem>;

    fn characteristic(&self) -> u64 {
        self.descriptor().characteristic()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, ScalarError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `a^k` for any integer `k`; negative powers need `a != 0`.
    fn pow(&self, a: &Self::Elem, k: i64) -> Result<Self::Elem, ScalarError> {
        let base = if k < 0 { self.inv(a)? } else { a.clone() };
        Ok(self.pow_u64(&base, k.unsigned_abs()))
    }

    fn pow_u64(&self, a: &Self::Elem, mut k: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    /// `a += b * c`
    fn add_mul_assign(&self, a: &mut Self::Elem, b: &Self::Elem, c: &Self::Elem) {
        *a = self.add(a, &self.mul(b, c));
    }
}

// ---------------------------------------------------------------------------
// GF(p)

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, ScalarError> {
        FieldDescriptor::prime(p)?;
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    fn reduce_i128(&self, v: i128) -> u64 {
        v.rem_euclid(self.p as i128) as u64
    }
}

#[inline]
pub(crate) fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut k: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while k > 0 {
        if k & 1 == 1 {
            acc = mulmod(acc, a, m);
        }
        a = mulmod(a, a, m);
        k >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &sp in &SMALL {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &SMALL {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mulmod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Distinct prime factors of `n`.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for sp in 2u64..1000 {
        if n % sp == 0 {
            out.push(sp);
            while n % sp == 0 {
                n /= sp;
            }
        }
    }
    let mut stack = Vec::new();
    if n > 1 {
        stack.push(n);
    }
    while let Some(m) = stack.pop() {
        if is_prime(m) {
            out.push(m);
        } else {
            let d = pollard_rho(m);
            stack.push(d);
            stack.push(m / d);
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

impl Field for PrimeField {
    type Elem = u64;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Prime(self.p)
    }
    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i128(v as i128)
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = *a as u128 + *b as u128;
        (s % self.p as u128) as u64
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mulmod(*a, *b, self.p)
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Result<u64, ScalarError> {
        if *a == 0 {
            return Err(ScalarError::ZeroInversion);
        }
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let qt = r0 / r1;
            (r0, r1) = (r1, r0 - qt * r1);
            (t0, t1) = (t1, t0 - qt * t1);
        }
        Ok(self.reduce_i128(t0))
    }
    fn multiplicative_order(&self, a: &u64) -> Result<Order, ScalarError> {
        if *a == 0 {
            return Err(ScalarError::ZeroOrder);
        }
        let mut m = self.p - 1;
        for f in prime_factors(self.p - 1) {
            while m % f == 0 && powmod(*a, m / f, self.p) == 1 {
                m /= f;
            }
        }
        Ok(Order::Finite(m))
    }
    fn random(&self, rng: &mut dyn RngCore) -> u64 {
        // rejection sampling keeps the distribution uniform
        let zone = u64::MAX - u64::MAX % self.p;
        loop {
            let v = rng.next_u64();
            if v < zone {
                return v % self.p;
            }
        }
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u64, ScalarError> {
        let s = s.trim();
        let bad = || ScalarError::Parse(s.to_string());
        let int = |t: &str| -> Result<u64, ScalarError> {
            let v: BigInt = t.trim().parse().map_err(|_| bad())?;
            let r = v.mod_floor(&BigInt::from(self.p));
            Ok(r.to_u64().expect("residue fits"))
        };
        match s.split_once('/') {
            None => int(s),
            Some((a, b)) => {
                let b = int(b)?;
                self.div(&int(a)?, &b).map_err(|_| bad())
            }
        }
    }
    fn to_element(&self, a: &u64) -> FieldElement {
        FieldElement::Residue {
            value: *a,
            modulus: self.p,
        }
    }
    fn from_element(&self, a: &FieldElement) -> Result<u64, ScalarError> {
        match a {
            FieldElement::Residue { value, modulus } if *modulus == self.p => Ok(*value),
            other => Err(ScalarError::DescriptorMismatch(other.descriptor(), self.descriptor())),
        }
    }
    fn roots(&self, poly: &[u64], rng: &mut dyn RngCore) -> Vec<u64> {
        prime_field_roots(self, poly, rng)
    }
}

// Polynomial helpers over GF(p), ascending coefficients, trimmed.

fn trim(f: &PrimeField, mut a: Vec<u64>) -> Vec<u64> {
    while a.last().is_some_and(|c| f.is_zero(c)) {
        a.pop();
    }
    a
}

fn poly_mulmod(f: &PrimeField, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = alloc::vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            prod[i + j] = f.add(&prod[i + j], &f.mul(x, y));
        }
    }
    poly_rem(f, prod, m)
}

fn poly_rem(f: &PrimeField, mut a: Vec<u64>, m: &[u64]) -> Vec<u64> {
    let dm = m.len() - 1;
    let lead_inv = f.inv(&m[dm]).expect("monic divisor");
    a = trim(f, a);
    while a.len() > dm {
        let top = a.len() - 1;
        let c = f.mul(&a[top], &lead_inv);
        for k in 0..=dm {
            let idx = top - dm + k;
            a[idx] = f.sub(&a[idx], &f.mul(&c, &m[k]));
        }
        a = trim(f, a);
    }
    a
}

fn poly_gcd(f: &PrimeField, a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    let (mut a, mut b) = (trim(f, a), trim(f, b));
    while !b.is_empty() {
        let r = poly_rem(f, a, &b);
        a = b;
        b = r;
    }
    if let Some(lc) = a.last().copied() {
        let li = f.inv(&lc).expect("nonzero");
        for c in a.iter_mut() {
            *c = f.mul(c, &li);
        }
    }
    a
}

fn poly_powmod(f: &PrimeField, base: &[u64], mut k: u64, m: &[u64]) -> Vec<u64> {
    let mut acc = alloc::vec![1u64];
    let mut b = poly_rem(f, base.to_vec(), m);
    while k > 0 {
        if k & 1 == 1 {
            acc = poly_mulmod(f, &acc, &b, m);
        }
        b = poly_mulmod(f, &b, &b, m);
        k >>= 1;
    }
    acc
}

fn prime_field_roots(f: &PrimeField, poly: &[u64], rng: &mut dyn RngCore) -> Vec<u64> {
    let poly = trim(f, poly.to_vec());
    if poly.len() <= 1 {
        return Vec::new();
    }
    let p = f.p;
    if p < 64 {
        return (0..p)
            .filter(|x| {
                let mut acc = 0u64;
                for c in poly.iter().rev() {
                    acc = f.add(&f.mul(&acc, x), c);
                }
                acc == 0
            })
            .collect();
    }
    // g = gcd(poly, x^p - x) is the product of the distinct linear factors
    let mut xp = poly_powmod(f, &[0, 1], p, &poly);
    xp.resize(xp.len().max(2), 0);
    xp[1] = f.sub(&xp[1], &1);
    let g = poly_gcd(f, poly.clone(), xp);
    let mut out = Vec::new();
    let mut stack = alloc::vec![g];
    while let Some(g) = stack.pop() {
        match g.len() {
            0 | 1 => {}
            2 => out.push(f.neg(&f.div(&g[0], &g[1]).expect("monic"))),
            _ => loop {
                let a = f.random(rng);
                let mut h = poly_powmod(f, &[a, 1], (p - 1) / 2, &g);
                if h.is_empty() {
                    continue;
                }
                h[0] = f.sub(&h[0], &1);
                let d = poly_gcd(f, g.clone(), h);
                if d.len() > 1 && d.len() < g.len() {
                    let mut q = Vec::new();
                    let mut rem = g.clone();
                    // exact division g / d
                    let dd = d.len() - 1;
                    q.resize(g.len() - dd, 0);
                    for top in (dd..rem.len()).rev() {
                        let c = rem[top];
                        q[top - dd] = c;
                        for k in 0..=dd {
                            rem[top - dd + k] = f.sub(&rem[top - dd + k], &f.mul(&c, &d[k]));
                        }
                    }
                    stack.push(d);
                    stack.push(trim(f, q));
                    break;
                }
            },
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

// ---------------------------------------------------------------------------
// Q

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

/// Rational root search gives up on coefficients beyond this bound.
const RATIONAL_ROOT_BOUND: u64 = 1 << 40;

impl Rationals {
    fn divisors(n: &BigInt) -> Option<Vec<u64>> {
        let n = n.abs().to_u64()?;
        if n > RATIONAL_ROOT_BOUND {
            return None;
        }
        let mut out = Vec::new();
        let mut d = 1u64;
        while d * d <= n {
            if n % d == 0 {
                out.push(d);
                out.push(n / d);
            }
            d += 1;
        }
        out.sort_unstable();
        out.dedup();
        Some(out)
    }

    fn eval(poly: &[BigRational], x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in poly.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

impl Field for Rationals {
    type Elem = BigRational;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Result<BigRational, ScalarError> {
        if a.is_zero() {
            Err(ScalarError::ZeroInversion)
        } else {
            Ok(a.recip())
        }
    }
    fn multiplicative_order(&self, a: &BigRational) -> Result<Order, ScalarError> {
        if a.is_zero() {
            Err(ScalarError::ZeroOrder)
        } else if a.is_one() {
            Ok(Order::Finite(1))
        } else if *a == -BigRational::one() {
            Ok(Order::Finite(2))
        } else {
            Ok(Order::Infinite)
        }
    }
    fn random(&self, rng: &mut dyn RngCore) -> BigRational {
        let v = (rng.next_u32() % 61) as i64 - 30;
        self.from_i64(v)
    }
    fn render(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn parse(&self, s: &str) -> Result<BigRational, ScalarError> {
        let s = s.trim();
        let bad = || ScalarError::Parse(s.to_string());
        let (num, den) = match s.split_once('/') {
            None => (s, "1"),
            Some(pair) => pair,
        };
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(BigRational::new(num, den))
    }
    fn to_element(&self, a: &BigRational) -> FieldElement {
        FieldElement::Rational(a.clone())
    }
    fn from_element(&self, a: &FieldElement) -> Result<BigRational, ScalarError> {
        match a {
            FieldElement::Rational(v) => Ok(v.clone()),
            other => Err(ScalarError::DescriptorMismatch(
                other.descriptor(),
                FieldDescriptor::Rationals,
            )),
        }
    }
    fn roots(&self, poly: &[BigRational], _rng: &mut dyn RngCore) -> Vec<BigRational> {
        let mut poly: Vec<BigRational> = poly.to_vec();
        while poly.last().is_some_and(|c| c.is_zero()) {
            poly.pop();
        }
        if poly.len() <= 1 {
            return Vec::new();
        }
        let mut out = Vec::new();
        // strip factors of x
        let lowest = poly.iter().position(|c| !c.is_zero()).unwrap_or(0);
        if lowest > 0 {
            out.push(BigRational::zero());
            poly.drain(..lowest);
        }
        if poly.len() <= 1 {
            return out;
        }
        // clear denominators
        let lcm = poly.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = poly
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let (Some(nums), Some(dens)) = (Self::divisors(&ints[0]), Self::divisors(ints.last().expect("nonempty")))
        else {
            return out;
        };
        for a in &nums {
            for b in &dens {
                for sign in [1i64, -1] {
                    let cand = BigRational::new(BigInt::from(*a) * sign, BigInt::from(*b));
                    if Self::eval(&poly, &cand).is_zero() && !out.contains(&cand) {
                        out.push(cand);
                    }
                }
            }
        }
        out.sort();
        out
    }
}

// ---------------------------------------------------------------------------
// Self-describing scalars

/// A scalar that carries its field. Used for parameter files and anywhere
/// the field is chosen at run time.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Residue { value: u64, modulus: u64 },
    Rational(BigRational),
}

macro_rules! dispatch_binary {
    ($name:ident) => {
        pub fn $name(&self, other: &FieldElement) -> Result<FieldElement, ScalarError> {
            match (self, other) {
                (
                    FieldElement::Residue { value: a, modulus: p },
                    FieldElement::Residue {
                        value: b,
                        modulus: p2,
                    },
                ) if p == p2 => {
                    let f = PrimeField { p: *p };
                    Ok(f.to_element(&f.$name(a, b)))
                }
                (FieldElement::Rational(a), FieldElement::Rational(b)) => {
                    Ok(FieldElement::Rational(Rationals.$name(a, b)))
                }
                _ => Err(ScalarError::DescriptorMismatch(
                    self.descriptor(),
                    other.descriptor(),
                )),
            }
        }
    };
}

impl FieldElement {
    pub fn descriptor(&self) -> FieldDescriptor {
        match self {
            FieldElement::Residue { modulus, .. } => FieldDescriptor::Prime(*modulus),
            FieldElement::Rational(_) => FieldDescriptor::Rationals,
        }
    }

    pub fn parse(field: FieldDescriptor, s: &str) -> Result<FieldElement, ScalarError> {
        match field {
            FieldDescriptor::Prime(p) => {
                let f = PrimeField::new(p)?;
                Ok(f.to_element(&f.parse(s)?))
            }
            FieldDescriptor::Rationals => Ok(FieldElement::Rational(Rationals.parse(s)?)),
        }
    }

    pub fn from_i64(field: FieldDescriptor, v: i64) -> Result<FieldElement, ScalarError> {
        match field {
            FieldDescriptor::Prime(p) => {
                let f = PrimeField::new(p)?;
                Ok(f.to_element(&f.from_i64(v)))
            }
            FieldDescriptor::Rationals => Ok(FieldElement::Rational(Rationals.from_i64(v))),
        }
    }

    pub fn render(&self) -> String {
        match self {
            FieldElement::Residue { value, .. } => value.to_string(),
            FieldElement::Rational(v) => Rationals.render(v),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Residue { value, .. } => *value == 0,
            FieldElement::Rational(v) => v.is_zero(),
        }
    }

    dispatch_binary!(add);
    dispatch_binary!(sub);
    dispatch_binary!(mul);

    pub fn neg(&self) -> FieldElement {
        match self {
            FieldElement::Residue { value, modulus } => FieldElement::Residue {
                value: PrimeField { p: *modulus }.neg(value),
                modulus: *modulus,
            },
            FieldElement::Rational(v) => FieldElement::Rational(-v),
        }
    }

    pub fn inv(&self) -> Result<FieldElement, ScalarError> {
        match self {
            FieldElement::Residue { value, modulus } => {
                let f = PrimeField { p: *modulus };
                Ok(f.to_element(&f.inv(value)?))
            }
            FieldElement::Rational(v) => Ok(FieldElement::Rational(Rationals.inv(v)?)),
        }
    }

    pub fn multiplicative_order(&self) -> Result<Order, ScalarError> {
        match self {
            FieldElement::Residue { value, modulus } => PrimeField { p: *modulus }.multiplicative_order(value),
            FieldElement::Rational(v) => Rationals.multiplicative_order(v),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand_chacha::ChaCha8Rng;
    use rand_core::SeedableRng;

    fn q(s: &str) -> FieldElement {
        FieldElement::parse(FieldDescriptor::Rationals, s).unwrap()
    }

    fn gf7(v: i64) -> FieldElement {
        FieldElement::from_i64(FieldDescriptor::Prime(7), v).unwrap()
    }

    #[test]
    fn prime_field_products_and_inverses() {
        assert_eq!(gf7(3).mul(&gf7(5)).unwrap(), gf7(1));
        assert_eq!(gf7(3).inv().unwrap(), gf7(5));
        assert_eq!(gf7(0).inv(), Err(ScalarError::ZeroInversion));
        for x in 0..7 {
            assert!(gf7(0).mul(&gf7(x)).unwrap().is_zero());
        }
    }

    #[test]
    fn rational_arithmetic() {
        assert_eq!(q("1/2").add(&q("1/3")).unwrap(), q("5/6"));
        assert_eq!(q("3/2").inv().unwrap(), q("2/3"));
        assert_eq!(q("6/-4").render(), "-3/2");
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let err = gf7(1).add(&q("1")).unwrap_err();
        assert!(matches!(err, ScalarError::DescriptorMismatch(..)));
        let gf11 = FieldElement::from_i64(FieldDescriptor::Prime(11), 1).unwrap();
        assert!(gf7(1).mul(&gf11).is_err());
    }

    #[test]
    fn orders() {
        assert_eq!(gf7(2).multiplicative_order().unwrap(), Order::Finite(3));
        assert_eq!(q("-1").multiplicative_order().unwrap(), Order::Finite(2));
        assert_eq!(q("2").multiplicative_order().unwrap(), Order::Infinite);
        assert_eq!(gf7(0).multiplicative_order(), Err(ScalarError::ZeroOrder));
    }

    #[test]
    fn descriptors_parse() {
        assert_eq!(
            "gfp:101".parse::<FieldDescriptor>().unwrap(),
            FieldDescriptor::Prime(101)
        );
        assert_eq!("q".parse::<FieldDescriptor>().unwrap(), FieldDescriptor::Rationals);
        assert!("gfp:100".parse::<FieldDescriptor>().is_err());
        assert!("gf7".parse::<FieldDescriptor>().is_err());
        assert_eq!(FieldDescriptor::Prime(101).to_string(), "gfp:101");
    }

    #[test]
    fn large_prime_order() {
        let p = (1u64 << 61) - 1;
        let f = PrimeField::new(p).unwrap();
        let Order::Finite(m) = f.multiplicative_order(&3).unwrap() else {
            panic!()
        };
        assert_eq!(f.pow_u64(&3, m), 1);
        assert_eq!((p - 1) % m, 0);
    }

    #[test]
    fn roots_over_gf_and_q() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = PrimeField::new(101).unwrap();
        // (x-3)(x-7)(x^2+1)  ; -1 is a square mod 101 (101 = 1 mod 4): 10^2 = -1
        let mut poly = alloc::vec![1u64];
        for root in [3u64, 7, 10, 91] {
            let mut next = alloc::vec![0u64; poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1] = f.add(&next[i + 1], c);
                next[i] = f.sub(&next[i], &f.mul(c, &root));
            }
            poly = next;
        }
        assert_eq!(f.roots(&poly, &mut rng), alloc::vec![3, 7, 10, 91]);
        // x^2 - 2 has no roots mod 101 (2 is a non-residue since 101 = 5 mod 8)
        assert!(f.roots(&[99, 0, 1], &mut rng).is_empty());

        let qq = Rationals;
        // 2x^2 - x - 1 = (2x+1)(x-1)
        let roots = qq.roots(&[qq.from_i64(-1), qq.from_i64(-1), qq.from_i64(2)], &mut rng);
        assert_eq!(roots, alloc::vec![qq.parse("-1/2").unwrap(), qq.one()]);
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
    }

    proptest! {
        #[test]
        fn gf_order_is_minimal(a in 1u64..101) {
            let f = PrimeField::new(101).unwrap();
            let Order::Finite(m) = f.multiplicative_order(&a).unwrap() else { panic!() };
            prop_assert_eq!(f.pow_u64(&a, m), 1);
            for k in 1..m {
                prop_assert_ne!(f.pow_u64(&a, k), 1);
            }
        }

        #[test]
        fn gf_field_axioms(a in 0u64..1009, b in 0u64..1009, c in 0u64..1009) {
            let f = PrimeField::new(1009).unwrap();
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.add(&f.sub(&a, &b), &b), a);
            if a != 0 {
                prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
            }
        }

        #[test]
        fn rational_canonical_and_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
            let x = Rationals.parse(&format!("{n}/{d}")).unwrap();
            prop_assert!(x.numer().gcd(x.denom()).is_one());
            prop_assert!(x.denom().is_positive());
            let el = FieldElement::Rational(x);
            prop_assert_eq!(FieldElement::parse(FieldDescriptor::Rationals, &el.render()).unwrap(), el);
        }

        #[test]
        fn residue_round_trip(v in 0u64..101) {
            let el = FieldElement::from_i64(FieldDescriptor::Prime(101), v as i64).unwrap();
            prop_assert_eq!(el.render(), v.to_string());
            prop_assert_eq!(FieldElement::parse(FieldDescriptor::Prime(101), &el.render()).unwrap(), el);
        }
    }
}
