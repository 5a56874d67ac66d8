//! Finite fields `GF(p^k)`.
//!
//! Elements are integer codes `0..q`: the code of a polynomial
//! `c_0 + c_1 x + ... + c_{k-1} x^{k-1}` is `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`.
//! The modulus is the least monic irreducible polynomial of degree `k`, where
//! polynomials are compared coefficient by coefficient from the top degree
//! down (equivalently, by the code of their lower coefficients). This fixes
//! every element code, so matrix files written on one machine read back
//! identically on another.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use crate::{Caps, Error, Result};

/// Integer code of a field element.
pub type Elem = u32;

/// Shared handle to a field. Fields are immutable once built.
pub type Field = Arc<FiniteField>;

pub struct FiniteField {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: Elem,
    // exp has length 2(q-1) so a product of two logs never needs a reduction.
    exp: Vec<Elem>,
    log: Vec<u32>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.k)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^k` with `p` prime, or `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while q % p != 0 {
        p += 1;
    }
    let mut k = 0;
    let mut rest = q;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p as u32, k))
}

/// Builds `GF(p^k)` with the default order cap.
pub fn make_field(p: u32, k: u32) -> Result<Field> {
    make_field_capped(p, k, &Caps::default())
}

/// Builds `GF(q)` for a prime power `q`.
pub fn field_of_order(q: u32) -> Result<Field> {
    let (p, k) = prime_power(q as u64).ok_or(Error::NotPrime(q as u64))?;
    make_field(p, k)
}

pub fn make_field_capped(p: u32, k: u32, caps: &Caps) -> Result<Field> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if k == 0 {
        return Err(Error::DegreeZero);
    }
    let q = (p as u128).pow(k);
    if q > caps.field_order as u128 {
        return Err(Error::cap("field order", q, caps.field_order as u128));
    }
    let modulus = least_irreducible(p, k);
    Ok(Arc::new(FiniteField::with_modulus(p, k, modulus)))
}

/// Builds `GF(p^k)` from an explicit monic modulus (little-endian coefficients,
/// `k + 1` entries). Used when reading files that carry a `poly` line.
pub fn make_field_with_modulus(p: u32, modulus: &[u32]) -> Result<Field> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if modulus.len() < 2 {
        return Err(Error::DegreeZero);
    }
    let k = (modulus.len() - 1) as u32;
    if *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p) {
        return Err(Error::FieldMismatch(format!(
            "modulus {modulus:?} is not a monic polynomial over GF({p})"
        )));
    }
    let q = (p as u128).pow(k);
    if q > Caps::default().field_order as u128 {
        return Err(Error::cap("field order", q, Caps::default().field_order as u128));
    }
    if !is_irreducible(p, modulus) {
        return Err(Error::FieldMismatch(format!("modulus {modulus:?} is reducible")));
    }
    Ok(Arc::new(FiniteField::with_modulus(p, k, modulus.to_vec())))
}

fn poly_rem(p: u32, num: &[u32], den: &[u32]) -> Vec<u32> {
    // den is monic
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    while r.len() > dd {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dd;
        if lead != 0 {
            for (i, &c) in den.iter().enumerate() {
                let t = (lead as u64 * c as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - t) % p;
            }
        }
        r.pop();
    }
    r
}

fn digits(mut code: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = code % p;
            code /= p;
            d
        })
        .collect()
}

fn is_irreducible(p: u32, poly: &[u32]) -> bool {
    let k = poly.len() as u32 - 1;
    if k <= 1 {
        return true;
    }
    for deg in 1..=k / 2 {
        for low in 0..p.pow(deg) {
            let mut divisor = digits(low, p, deg);
            divisor.push(1);
            if poly_rem(p, poly, &divisor).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn least_irreducible(p: u32, k: u32) -> Vec<u32> {
    (0..p.pow(k))
        .map(|low| {
            let mut poly = digits(low, p, k);
            poly.push(1);
            poly
        })
        .find(|poly| is_irreducible(p, poly))
        .expect("an irreducible polynomial exists in every degree")
}

impl FiniteField {
    fn with_modulus(p: u32, k: u32, modulus: Vec<u32>) -> Self {
        let q = p.pow(k);
        let mut field = FiniteField {
            p,
            k,
            q,
            modulus,
            generator: 1,
            exp: Vec::new(),
            log: Vec::new(),
        };
        let order = q - 1;
        let generator = (1..q)
            .find(|&g| {
                let mut x = g;
                let mut n = 1;
                while x != 1 {
                    x = field.mul_slow(x, g);
                    n += 1;
                }
                n == order
            })
            .expect("the multiplicative group of a finite field is cyclic");
        let mut exp = Vec::with_capacity(2 * order as usize);
        let mut log = vec![0; q as usize];
        let mut x = 1;
        for i in 0..order {
            exp.push(x);
            log[x as usize] = i;
            x = field.mul_slow(x, generator);
        }
        for i in 0..order as usize {
            exp.push(exp[i]);
        }
        field.generator = generator;
        field.exp = exp;
        field.log = log;
        field
    }

    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        if self.k == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as Elem;
        }
        let da = digits(a, self.p, self.k);
        let db = digits(b, self.p, self.k);
        let mut prod = vec![0u32; (2 * self.k - 1) as usize];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % self.p as u64) as u32;
            }
        }
        let r = poly_rem(self.p, &prod, &self.modulus);
        self.from_digits(&r)
    }

    fn from_digits(&self, ds: &[u32]) -> Elem {
        ds.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, little-endian, `degree() + 1` entries.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// A fixed primitive element (the least code of multiplicative order `q - 1`).
    pub fn generator(&self) -> Elem {
        self.generator
    }

    pub fn contains(&self, a: Elem) -> bool {
        a < self.q
    }

    pub fn elem(&self, value: Elem) -> Result<FieldElem<'_>> {
        if value < self.q {
            Ok(FieldElem { value, field: self })
        } else {
            Err(Error::BadElement {
                code: value,
                order: self.q,
            })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            a ^ b
        } else if self.k == 1 {
            (a + b) % self.p
        } else {
            let (mut a, mut b) = (a, b);
            let mut out = 0;
            let mut place = 1;
            for _ in 0..self.k {
                out += ((a % self.p + b % self.p) % self.p) * place;
                a /= self.p;
                b /= self.p;
                place *= self.p;
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 {
            a
        } else if self.k == 1 {
            (self.p - a) % self.p
        } else {
            let mut a = a;
            let mut out = 0;
            let mut place = 1;
            for _ in 0..self.k {
                out += ((self.p - a % self.p) % self.p) * place;
                a /= self.p;
                place *= self.p;
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            None
        } else {
            let n = self.q - 1;
            Some(self.exp[((n - self.log[a as usize]) % n) as usize])
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.q - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % n)) % n) as usize]
    }

    /// Discrete logarithm to the base [`generator`](Self::generator).
    pub fn log(&self, a: Elem) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    /// `generator^e`.
    pub fn exp(&self, e: u64) -> Elem {
        self.exp[(e % (self.q as u64 - 1)) as usize]
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Elem) -> Option<u32> {
        let l = self.log(a)?;
        let n = self.q - 1;
        Some(n / gcd(n, l))
    }

    fn eval_poly_in_field(&self, coeffs: &[u32], x: Elem) -> Elem {
        // coefficients are prime-field constants, whose codes are themselves
        coeffs.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }
}

pub(crate) fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// An element together with the field it lives in, for arithmetic with
/// ordinary operators.
#[derive(Clone, Copy)]
pub struct FieldElem<'a> {
    pub value: Elem,
    pub field: &'a FiniteField,
}

impl PartialEq for FieldElem<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.field == other.field
    }
}

impl fmt::Debug for FieldElem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{:?}", self.value, self.field)
    }
}

impl fmt::Display for FieldElem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl<'a> FieldElem<'a> {
    pub fn inv(self) -> Option<FieldElem<'a>> {
        self.field.inv(self.value).map(|value| FieldElem { value, ..self })
    }

    pub fn pow(self, e: u64) -> FieldElem<'a> {
        FieldElem {
            value: self.field.pow(self.value, e),
            ..self
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr for FieldElem<'a> {
            type Output = FieldElem<'a>;
            fn $m(self, rhs: Self) -> FieldElem<'a> {
                assert!(self.field == rhs.field, "mixing elements of different fields");
                let f: fn(&FiniteField, Elem, Elem) -> Elem = $body;
                FieldElem {
                    value: f(self.field, self.value, rhs.value),
                    field: self.field,
                }
            }
        }
    };
}

binop!(Add, add, |f, a, b| f.add(a, b));
binop!(Sub, sub, |f, a, b| f.sub(a, b));
binop!(Mul, mul, |f, a, b| f.mul(a, b));
binop!(Div, div, |f, a, b| f.div(a, b).expect("division by zero"));

impl<'a> Neg for FieldElem<'a> {
    type Output = FieldElem<'a>;
    fn neg(self) -> FieldElem<'a> {
        FieldElem {
            value: self.field.neg(self.value),
            field: self.field,
        }
    }
}

/// A subfield `GF(p^d)` of `GF(p^k)` with its embedding.
#[derive(Debug, Clone)]
pub struct Subfield {
    /// The subfield as a field in its own right (with its own modulus).
    pub field: Field,
    /// `embed[c]` is the code in the ambient field of subfield element `c`.
    pub embed: Vec<Elem>,
    project: Vec<Option<Elem>>,
}

impl Subfield {
    pub fn degree(&self) -> u32 {
        self.field.degree()
    }

    pub fn order(&self) -> u32 {
        self.field.order()
    }

    /// Whether an ambient element lies in the image of the embedding.
    pub fn contains(&self, ambient: Elem) -> bool {
        self.project.get(ambient as usize).copied().flatten().is_some()
    }

    /// The subfield code of an ambient element, if it lies in the subfield.
    pub fn project(&self, ambient: Elem) -> Option<Elem> {
        self.project.get(ambient as usize).copied().flatten()
    }
}

/// One subfield per divisor of the extension degree, smallest first.
pub fn subfield_lattice(f: &Field) -> Vec<Subfield> {
    let k = f.degree();
    (1..=k)
        .filter(|d| k % d == 0)
        .map(|d| subfield_of_degree(f, d).expect("divisor degrees always give a subfield"))
        .collect()
}

pub fn prime_subfield(f: &Field) -> Subfield {
    subfield_of_degree(f, 1).expect("degree 1 divides every degree")
}

/// The subfield of degree `d` over the prime field, with the embedding that
/// sends `x` to the least-code root of the subfield's modulus.
pub fn subfield_of_degree(f: &Field, d: u32) -> Result<Subfield> {
    let k = f.degree();
    if d == 0 || k % d != 0 {
        return Err(Error::NotASubfield(format!(
            "degree {d} does not divide {k}"
        )));
    }
    let small = if d == k {
        f.clone()
    } else {
        make_field(f.characteristic(), d)?
    };
    let embed: Vec<Elem> = if d == k {
        f.elements().collect()
    } else {
        let root = f
            .elements()
            .find(|&x| f.eval_poly_in_field(small.modulus(), x) == 0)
            .expect("the modulus of a subfield splits in the extension");
        let p = f.characteristic();
        small
            .elements()
            .map(|c| {
                let ds = digits(c, p, d);
                let mut acc = 0;
                let mut power = 1;
                for &a in &ds {
                    acc = f.add(acc, f.mul(a, power));
                    power = f.mul(power, root);
                }
                acc
            })
            .collect()
    };
    let mut project = vec![None; f.order() as usize];
    for (c, &e) in embed.iter().enumerate() {
        project[e as usize] = Some(c as Elem);
    }
    Ok(Subfield {
        field: small,
        embed,
        project,
    })
}

/// Finds the subfield of `f` isomorphic to `sub` (same characteristic, degree dividing).
pub fn subfield_matching(f: &Field, sub: &FiniteField) -> Result<Subfield> {
    if sub.characteristic() != f.characteristic() || f.degree() % sub.degree() != 0 {
        return Err(Error::NotASubfield(format!("{sub:?} is not a subfield of {f:?}")));
    }
    subfield_of_degree(f, sub.degree())
}

/// A subgroup of the multiplicative group of a field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultSubgroup {
    field: Field,
    elements: Vec<Elem>,
}

impl MultSubgroup {
    /// The unique subgroup of the given order (`order` must divide `q - 1`).
    pub fn of_order(field: &Field, order: u32) -> Result<Self> {
        let n = field.order() - 1;
        if order == 0 || n % order != 0 {
            return Err(Error::DomainError(format!(
                "no subgroup of order {order} in a cyclic group of order {n}"
            )));
        }
        let step = (n / order) as u64;
        let mut elements: Vec<Elem> = (0..order as u64).map(|i| field.exp(i * step)).collect();
        elements.sort_unstable();
        Ok(MultSubgroup {
            field: field.clone(),
            elements,
        })
    }

    /// Validates that `elements` is a subgroup.
    pub fn from_elements(field: &Field, elements: &[Elem]) -> Result<Self> {
        let mut els = elements.to_vec();
        els.sort_unstable();
        els.dedup();
        if els.iter().any(|&e| e == 0 || !field.contains(e)) {
            return Err(Error::DomainError("subgroup elements must be nonzero field elements".into()));
        }
        let closed = els.contains(&1)
            && els.iter().all(|&a| {
                els.binary_search(&field.inv(a).unwrap()).is_ok()
                    && els.iter().all(|&b| els.binary_search(&field.mul(a, b)).is_ok())
            });
        if !closed {
            return Err(Error::DomainError(format!("{els:?} is not a multiplicative subgroup")));
        }
        Ok(MultSubgroup {
            field: field.clone(),
            elements: els,
        })
    }

    pub fn trivial(field: &Field) -> Self {
        MultSubgroup {
            field: field.clone(),
            elements: vec![1],
        }
    }

    pub fn full(field: &Field) -> Self {
        MultSubgroup::of_order(field, field.order() - 1).expect("q - 1 divides itself")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Elements in increasing code order.
    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.elements.binary_search(&a).is_ok()
    }
}

/// All multiplicative subgroups, one per divisor of `q - 1`, by increasing order.
pub fn mult_subgroups(f: &Field) -> Vec<MultSubgroup> {
    let n = f.order() - 1;
    (1..=n)
        .filter(|d| n % d == 0)
        .map(|d| MultSubgroup::of_order(f, d).expect("divisor"))
        .collect()
}
