//! The base coefficient field F_q = F_{p^e}.
//!
//! Elements are dense coordinate vectors over F_p, reduced modulo a fixed
//! monic irreducible of degree `e`. The modulus is the first irreducible in
//! counting order, so every run of every binary picks the same one.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// An element of F_q as a length-`e` coordinate vector over F_p.
///
/// The vector is always fully reduced (entries `< p`, length exactly `e`).
/// Ordering is the counting order: the vector read as base-p digits with
/// index 0 least significant.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FqElem {
    data: Vec<u64>,
}

impl FqElem {
    pub(crate) fn from_raw(data: Vec<u64>) -> Self {
        FqElem { data }
    }

    pub fn coords(&self) -> &[u64] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&c| c == 0)
    }

    /// The element as an integer index in counting order.
    pub fn index(&self, p: u64) -> u64 {
        let mut v = 0u64;
        for &c in self.data.iter().rev() {
            v = v * p + c;
        }
        v
    }
}

impl PartialOrd for FqElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FqElem {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_counting(&self.data, &other.data)
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.data.len() == 1 {
            write!(f, "{}", self.data[0])
        } else {
            write!(f, "[")?;
            for (i, c) in self.data.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, "]")
        }
    }
}

/// Counting-order comparison of two digit strings (index 0 least significant).
pub(crate) fn cmp_counting(a: &[u64], b: &[u64]) -> Ordering {
    debug_assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        match x.cmp(y) {
            Ordering::Equal => {}
            ord => return ord,
        }
    }
    Ordering::Equal
}

/// Arithmetic context for F_q = F_{p^e}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fq {
    p: u64,
    e: usize,
    /// Monic irreducible of degree `e` over F_p (low-degree first, length e+1).
    /// For e = 1 this is the polynomial u itself.
    modulus: Vec<u64>,
}

impl Fq {
    /// The prime field F_p.
    pub fn prime(p: u64) -> Result<Fq> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Fq {
            p,
            e: 1,
            modulus: vec![0, 1],
        })
    }

    /// F_{p^e} with the deterministic (counting-order least) modulus.
    pub fn new(p: u64, e: usize) -> Result<Fq> {
        if e == 0 {
            return Err(Error::InvalidParams("extension degree e must be >= 1".into()));
        }
        let base = Fq::prime(p)?;
        check_size(p, e)?;
        if e == 1 {
            return Ok(base);
        }
        let m = crate::ffield::find_irreducible(&base, e);
        Ok(Fq {
            p,
            e,
            modulus: m.into_data(),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> usize {
        self.e
    }

    /// q = p^e. Guaranteed to fit by the construction-time size check.
    pub fn order(&self) -> u64 {
        self.p.pow(self.e as u32)
    }

    pub fn modulus_coeffs(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FqElem {
        FqElem::from_raw(vec![0; self.e])
    }

    pub fn one(&self) -> FqElem {
        self.from_u64(1)
    }

    /// The constant c mod p, embedded as an element of F_q.
    pub fn from_u64(&self, c: u64) -> FqElem {
        let mut data = vec![0; self.e];
        data[0] = c % self.p;
        FqElem::from_raw(data)
    }

    /// Build an element from F_p coordinates (low index first). Shorter
    /// vectors are zero-padded; longer ones are rejected.
    pub fn elem(&self, coords: &[u64]) -> Result<FqElem> {
        if coords.len() > self.e {
            return Err(Error::InvalidParams(format!(
                "coordinate vector of length {} in a field of degree {}",
                coords.len(),
                self.e
            )));
        }
        let mut data = vec![0; self.e];
        for (i, &c) in coords.iter().enumerate() {
            data[i] = c % self.p;
        }
        Ok(FqElem::from_raw(data))
    }

    /// The element with the given counting-order index.
    pub fn elem_from_index(&self, mut idx: u64) -> FqElem {
        let mut data = vec![0; self.e];
        for slot in data.iter_mut() {
            *slot = idx % self.p;
            idx /= self.p;
        }
        FqElem::from_raw(data)
    }

    /// All q elements in counting order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.order()).map(move |i| self.elem_from_index(i))
    }

    pub fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.check(a);
        self.check(b);
        let mut data = a.data.clone();
        pf_add_assign(self.p, &mut data, &b.data);
        FqElem::from_raw(data)
    }

    pub fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.check(a);
        self.check(b);
        let mut data = a.data.clone();
        pf_sub_assign(self.p, &mut data, &b.data);
        FqElem::from_raw(data)
    }

    pub fn neg(&self, a: &FqElem) -> FqElem {
        self.check(a);
        let mut data = a.data.clone();
        pf_neg(self.p, &mut data);
        FqElem::from_raw(data)
    }

    pub fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.check(a);
        self.check(b);
        let mut data = vec![0; self.e];
        self.mul_into(&a.data, &b.data, &mut data);
        FqElem::from_raw(data)
    }

    pub fn inv(&self, a: &FqElem) -> Result<FqElem> {
        self.check(a);
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.e == 1 {
            return Ok(FqElem::from_raw(vec![inv_mod_p(a.data[0], self.p)]));
        }
        let inv = pf_inv(self.p, &a.data, &self.modulus).ok_or(Error::DivisionByZero)?;
        let mut data = vec![0; self.e];
        data[..inv.len()].copy_from_slice(&inv);
        Ok(FqElem::from_raw(data))
    }

    pub fn pow(&self, a: &FqElem, mut exp: u64) -> FqElem {
        self.check(a);
        let mut acc = self.one();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    /// a^(p^j). Identity on the prime field.
    pub fn pow_p(&self, a: &FqElem, j: usize) -> FqElem {
        if self.e == 1 {
            return a.clone();
        }
        let mut out = a.clone();
        for _ in 0..j {
            out = self.pow(&out, self.p);
        }
        out
    }

    fn check(&self, a: &FqElem) {
        assert_eq!(
            a.data.len(),
            self.e,
            "field element has {} coordinates, context expects {}",
            a.data.len(),
            self.e
        );
    }

    /// out (length e) = a * b reduced modulo the field modulus.
    /// Raw-slice entry point used by the polynomial layers.
    pub(crate) fn mul_into(&self, a: &[u64], b: &[u64], out: &mut [u64]) {
        debug_assert_eq!(a.len(), self.e);
        debug_assert_eq!(b.len(), self.e);
        if self.e == 1 {
            out[0] = a[0] * b[0] % self.p;
            return;
        }
        let mut scratch = vec![0u64; 2 * self.e - 1];
        pf_mul_acc(self.p, &mut scratch, a, b);
        pf_rem(self.p, &mut scratch, &self.modulus);
        out.fill(0);
        out[..scratch.len().min(self.e)].copy_from_slice(&scratch[..scratch.len().min(self.e)]);
    }
}

fn check_size(p: u64, e: usize) -> Result<()> {
    // Keep q (and later q^N) inside u64 exponent arithmetic.
    let bits = (64 - p.leading_zeros() as usize) * e;
    if bits > 32 {
        return Err(Error::ParamsTooLarge(format!("p^e = {p}^{e} exceeds 2^32")));
    }
    Ok(())
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn inv_mod_p(a: u64, p: u64) -> u64 {
    // Extended Euclid on signed ints; p is prime and a != 0 mod p.
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1, "inverse of non-unit");
    (s0.rem_euclid(p as i128)) as u64
}

// --- dense polynomial helpers over F_p (low-degree-first slices) ---

pub(crate) fn pf_add_assign(p: u64, a: &mut [u64], b: &[u64]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x = (*x + *y) % p;
    }
}

pub(crate) fn pf_sub_assign(p: u64, a: &mut [u64], b: &[u64]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x = (*x + p - *y) % p;
    }
}

pub(crate) fn pf_neg(p: u64, a: &mut [u64]) {
    for x in a.iter_mut() {
        *x = (p - *x) % p;
    }
}

/// acc[i+j] += a[i]*b[j]; acc must have length >= a.len()+b.len()-1.
pub(crate) fn pf_mul_acc(p: u64, acc: &mut [u64], a: &[u64], b: &[u64]) {
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            if bj == 0 {
                continue;
            }
            let slot = &mut acc[i + j];
            *slot = (*slot + ai * bj) % p;
        }
    }
}

/// Reduce `data` modulo the monic `modulus`, truncating in place.
pub(crate) fn pf_rem(p: u64, data: &mut Vec<u64>, modulus: &[u64]) {
    let deg_m = modulus.len() - 1;
    while data.len() > deg_m {
        let lead = *data.last().unwrap();
        let top = data.len() - 1;
        if lead != 0 {
            for (k, &mk) in modulus.iter().take(deg_m).enumerate() {
                let slot = &mut data[top - deg_m + k];
                *slot = (*slot + p - lead * mk % p) % p;
            }
        }
        data.pop();
    }
    while data.len() > 1 && *data.last().unwrap() == 0 {
        data.pop();
    }
}

/// Inverse of `a` modulo the monic irreducible `modulus`, over F_p.
fn pf_inv(p: u64, a: &[u64], modulus: &[u64]) -> Option<Vec<u64>> {
    // Extended Euclid over F_p[u].
    let trim = |v: &mut Vec<u64>| {
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
    };
    let is_zero = |v: &[u64]| v.iter().all(|&c| c == 0);

    let mut r0: Vec<u64> = modulus.to_vec();
    let mut r1: Vec<u64> = a.to_vec();
    trim(&mut r1);
    let mut s0: Vec<u64> = vec![0];
    let mut s1: Vec<u64> = vec![1];

    while !is_zero(&r1) {
        // divide r0 by r1
        let mut rem = r0.clone();
        let mut quo = vec![0u64; rem.len().saturating_sub(r1.len()) + 1];
        let lead_inv = inv_mod_p(*r1.last().unwrap(), p);
        while rem.len() >= r1.len() && !is_zero(&rem) {
            let shift = rem.len() - r1.len();
            let c = *rem.last().unwrap() * lead_inv % p;
            if c != 0 {
                quo[shift] = c;
                for (k, &rk) in r1.iter().enumerate() {
                    let slot = &mut rem[shift + k];
                    *slot = (*slot + p - c * rk % p) % p;
                }
            }
            rem.pop();
            trim(&mut rem);
            if rem.len() < r1.len() {
                break;
            }
        }
        trim(&mut rem);
        // s_new = s0 - quo * s1
        let mut qs = vec![0u64; quo.len() + s1.len() - 1];
        pf_mul_acc(p, &mut qs, &quo, &s1);
        let n = qs.len().max(s0.len());
        let mut s_new = vec![0u64; n];
        s_new[..s0.len()].copy_from_slice(&s0);
        for (k, &c) in qs.iter().enumerate() {
            s_new[k] = (s_new[k] + p - c) % p;
        }
        trim(&mut s_new);
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s_new;
    }
    // r0 = gcd; must be a nonzero constant for invertible a
    if r0.len() != 1 || r0[0] == 0 {
        return None;
    }
    let scale = inv_mod_p(r0[0], p);
    for c in s0.iter_mut() {
        *c = *c * scale % p;
    }
    Some(s0)
}
