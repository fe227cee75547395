//! Arithmetic in GF(2^r), the characteristic-2 Galois fields.
//!
//! Elements are r-bit values in the polynomial basis: bit i is the
//! coefficient of x^i. Addition is XOR; multiplication reduces modulo a
//! fixed primitive polynomial, so the class of x (value `0b10`) generates
//! the multiplicative group. Fields up to r = 16 precompute log/antilog
//! tables; larger fields multiply by shift-and-reduce.

use crate::error::Error;

/// Descriptor of a binary field: degree and irreducible polynomial.
///
/// The polynomial is stored with bit i holding the coefficient of x^i,
/// so it always has bit `degree` set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub degree: u32,
    pub poly: u64,
}

/// An element value paired with the spec of the field it lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldElement {
    value: u64,
    spec: FieldSpec,
}

impl FieldElement {
    pub fn value(self) -> u64 {
        self.value
    }

    pub fn spec(self) -> FieldSpec {
        self.spec
    }
}

/// Fixed primitive polynomials for GF(2^r), r = 2..=32. For every entry the
/// class of x is a primitive element, so the same generator works across the
/// whole supported range. Verified irreducible and primitive by the tests.
const DEFAULT_POLYS: [u64; 31] = [
    0x7,         // r=2:  x^2+x+1
    0xB,         // r=3:  x^3+x+1
    0x13,        // r=4:  x^4+x+1
    0x25,        // r=5:  x^5+x^2+1
    0x43,        // r=6:  x^6+x+1
    0x89,        // r=7:  x^7+x^3+1
    0x11D,       // r=8:  x^8+x^4+x^3+x^2+1
    0x211,       // r=9:  x^9+x^4+1
    0x409,       // r=10: x^10+x^3+1
    0x805,       // r=11: x^11+x^2+1
    0x1053,      // r=12: x^12+x^6+x^4+x+1
    0x201B,      // r=13: x^13+x^4+x^3+x+1
    0x4443,      // r=14: x^14+x^10+x^6+x+1
    0x8003,      // r=15: x^15+x+1
    0x1100B,     // r=16: x^16+x^12+x^3+x+1
    0x20009,     // r=17: x^17+x^3+1
    0x40081,     // r=18: x^18+x^7+1
    0x80027,     // r=19: x^19+x^5+x^2+x+1
    0x100009,    // r=20: x^20+x^3+1
    0x200005,    // r=21: x^21+x^2+1
    0x400003,    // r=22: x^22+x+1
    0x800021,    // r=23: x^23+x^5+1
    0x1000087,   // r=24: x^24+x^7+x^2+x+1
    0x2000009,   // r=25: x^25+x^3+1
    0x4000047,   // r=26: x^26+x^6+x^2+x+1
    0x8000027,   // r=27: x^27+x^5+x^2+x+1
    0x10000009,  // r=28: x^28+x^3+1
    0x20000005,  // r=29: x^29+x^2+1
    0x40000053,  // r=30: x^30+x^6+x^4+x+1
    0x80000009,  // r=31: x^31+x^3+1
    0x100400007, // r=32: x^32+x^22+x^2+x+1
];

/// Prime factors of 2^r-1 for r = 2..=32, used to check that x has full
/// multiplicative order without iterating the whole group.
const GROUP_ORDER_FACTORS: [&[u64]; 31] = [
    &[3],
    &[7],
    &[3, 5],
    &[31],
    &[3, 7],
    &[127],
    &[3, 5, 17],
    &[7, 73],
    &[3, 11, 31],
    &[23, 89],
    &[3, 5, 7, 13],
    &[8191],
    &[3, 43, 127],
    &[7, 31, 151],
    &[3, 5, 17, 257],
    &[131071],
    &[3, 7, 19, 73],
    &[524287],
    &[3, 5, 11, 31, 41],
    &[7, 127, 337],
    &[3, 23, 89, 683],
    &[47, 178481],
    &[3, 5, 7, 13, 17, 241],
    &[31, 601, 1801],
    &[3, 2731, 8191],
    &[7, 73, 262657],
    &[3, 5, 29, 43, 113, 127],
    &[233, 1103, 2089],
    &[3, 7, 11, 31, 151, 331],
    &[2147483647],
    &[3, 5, 17, 257, 65537],
];

pub const MIN_DEGREE: u32 = 2;
pub const MAX_DEGREE: u32 = 32;
const TABLE_DEGREE_LIMIT: u32 = 16;

/// Returns the fixed field descriptor for GF(2^r).
pub fn default_spec(degree: u32) -> Result<FieldSpec, Error> {
    if !(MIN_DEGREE..=MAX_DEGREE).contains(&degree) {
        return Err(Error::UnsupportedDegree(degree));
    }
    Ok(FieldSpec {
        degree,
        poly: DEFAULT_POLYS[(degree - MIN_DEGREE) as usize],
    })
}

/// Shift-and-reduce product of two elements modulo `poly` of degree `r`.
fn mul_reduce(mut a: u64, mut b: u64, poly: u64, r: u32) -> u64 {
    let mut acc = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if (a >> r) & 1 == 1 {
            a ^= poly;
        }
    }
    acc
}

/// Trial division by every polynomial of degree 1..=r/2.
fn is_irreducible(poly: u64, r: u32) -> bool {
    for deg in 1..=(r / 2) {
        for f in (1u64 << deg)..(1u64 << (deg + 1)) {
            let mut rem = poly;
            while rem.leading_zeros() <= f.leading_zeros() {
                rem ^= f << (f.leading_zeros() - rem.leading_zeros());
            }
            if rem == 0 {
                return false;
            }
        }
    }
    true
}

/// Arithmetic engine for one GF(2^r).
#[derive(Debug, Clone)]
pub struct Field {
    spec: FieldSpec,
    /// exp[k] = x^k for k in 0..2^r-1; empty above the table limit.
    exp: Vec<u64>,
    /// log[v] = k with x^k = v (log[0] unused); empty above the table limit.
    log: Vec<u32>,
}

impl Field {
    /// Field with the fixed default polynomial for the given degree.
    pub fn new(degree: u32) -> Result<Field, Error> {
        Field::from_spec(default_spec(degree)?)
    }

    /// Field over a caller-supplied polynomial. The polynomial must be
    /// irreducible of the exact degree and x must be primitive modulo it.
    pub fn with_poly(degree: u32, poly: u64) -> Result<Field, Error> {
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&degree) {
            return Err(Error::UnsupportedDegree(degree));
        }
        Field::from_spec(FieldSpec { degree, poly })
    }

    fn from_spec(spec: FieldSpec) -> Result<Field, Error> {
        let r = spec.degree;
        if spec.poly >> r != 1 {
            return Err(Error::NotIrreducible {
                degree: r,
                poly: spec.poly,
            });
        }
        if !is_irreducible(spec.poly, r) {
            return Err(Error::NotIrreducible {
                degree: r,
                poly: spec.poly,
            });
        }
        let order = order_of(r);
        for &q in GROUP_ORDER_FACTORS[(r - MIN_DEGREE) as usize] {
            if pow_reduce(ALPHA_VALUE, order / q, spec.poly, r) == 1 {
                return Err(Error::NotPrimitive { poly: spec.poly });
            }
        }
        let mut field = Field {
            spec,
            exp: Vec::new(),
            log: Vec::new(),
        };
        if r <= TABLE_DEGREE_LIMIT {
            let order = order as usize;
            let mut exp = vec![0u64; order];
            let mut log = vec![0u32; 1 << r];
            let mut v = 1u64;
            for (k, e) in exp.iter_mut().enumerate() {
                *e = v;
                log[v as usize] = k as u32;
                v = mul_reduce(v, ALPHA_VALUE, spec.poly, r);
            }
            field.exp = exp;
            field.log = log;
        }
        Ok(field)
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn degree(&self) -> u32 {
        self.spec.degree
    }

    /// Number of elements, 2^r.
    pub fn size(&self) -> u64 {
        1u64 << self.spec.degree
    }

    /// Multiplicative group order, 2^r - 1.
    pub fn order(&self) -> u64 {
        order_of(self.spec.degree)
    }

    /// The canonical primitive element, the class of x.
    pub fn alpha(&self) -> FieldElement {
        FieldElement {
            value: ALPHA_VALUE,
            spec: self.spec,
        }
    }

    /// Wraps a raw value, rejecting anything outside 0..2^r.
    pub fn element(&self, value: u64) -> Result<FieldElement, Error> {
        if value >= self.size() {
            return Err(Error::ValueOutOfField {
                value,
                degree: self.spec.degree,
            });
        }
        Ok(FieldElement {
            value,
            spec: self.spec,
        })
    }

    fn check(&self, e: FieldElement) -> Result<u64, Error> {
        if e.spec != self.spec {
            return Err(Error::FieldMismatch(e.spec, self.spec));
        }
        Ok(e.value)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, Error> {
        let (a, b) = (self.check(a)?, self.check(b)?);
        self.element(self.add_raw(a, b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, Error> {
        let (a, b) = (self.check(a)?, self.check(b)?);
        self.element(self.mul_raw(a, b))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> Result<FieldElement, Error> {
        let a = self.check(a)?;
        self.element(self.pow_raw(a, e))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, Error> {
        let a = self.check(a)?;
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        self.element(self.inv_raw(a))
    }

    #[inline]
    pub fn add_raw(&self, a: u64, b: u64) -> u64 {
        a ^ b
    }

    #[inline]
    pub fn mul_raw(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.exp.is_empty() {
            return mul_reduce(a, b, self.spec.poly, self.spec.degree);
        }
        let order = self.order();
        let k = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % order;
        self.exp[k as usize]
    }

    /// Repeated-squaring exponentiation; pow_raw(a, 0) = 1 for every a.
    pub fn pow_raw(&self, a: u64, e: u64) -> u64 {
        pow_with(|x, y| self.mul_raw(x, y), a, e)
    }

    /// Multiplicative inverse of a nonzero element.
    ///
    /// Panics on zero; use [`Field::inv`] for the checked variant.
    pub fn inv_raw(&self, a: u64) -> u64 {
        assert!(a != 0, "zero has no inverse");
        if self.exp.is_empty() {
            return self.pow_raw(a, self.order() - 1);
        }
        let order = self.order();
        self.exp[((order - self.log[a as usize] as u64) % order) as usize]
    }

    /// Discrete log base alpha of a nonzero element.
    pub fn log_raw(&self, a: u64) -> Option<u64> {
        if a == 0 || a >= self.size() {
            return None;
        }
        if !self.log.is_empty() {
            return Some(self.log[a as usize] as u64);
        }
        let mut v = 1u64;
        for k in 0..self.order() {
            if v == a {
                return Some(k);
            }
            v = self.mul_raw(v, ALPHA_VALUE);
        }
        None
    }
}

const ALPHA_VALUE: u64 = 0b10;

fn order_of(degree: u32) -> u64 {
    if degree == 64 {
        u64::MAX
    } else {
        (1u64 << degree) - 1
    }
}

fn pow_with(mul: impl Fn(u64, u64) -> u64, mut base: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    while e != 0 {
        if e & 1 == 1 {
            acc = mul(acc, base);
        }
        base = mul(base, base);
        e >>= 1;
    }
    acc
}

fn pow_reduce(base: u64, e: u64, poly: u64, r: u32) -> u64 {
    pow_with(|x, y| mul_reduce(x, y, poly, r), base, e)
}
