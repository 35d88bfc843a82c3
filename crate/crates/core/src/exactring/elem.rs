use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::fpoly;
use super::poly::Poly;
use super::ring::{Ring, RingDescriptor};
use crate::error::{Error, Result};

/// Canonical payloads. Every constructor normalizes, so derived equality is
/// semantic equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Val {
    Q(BigRational),
    /// least nonnegative residue (prime fields and residue rings)
    Z(u64),
    /// trimmed ascending coefficients modulo the field modulus
    Ext(Vec<u64>),
    /// numerator, denominator: coprime, denominator monic
    Frac(Poly, Poly),
}

/// An element of one of the supported rings.
#[derive(Clone)]
pub struct RingElem {
    ring: Ring,
    val: Val,
}

impl PartialEq for RingElem {
    fn eq(&self, other: &Self) -> bool {
        self.val == other.val && self.ring == other.ring
    }
}

impl Eq for RingElem {}

impl Hash for RingElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.val.hash(state)
    }
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl RingElem {
    pub(crate) fn from_parts(ring: Ring, val: Val) -> RingElem {
        RingElem { ring, val }
    }

    pub(crate) fn val(&self) -> &Val {
        &self.val
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Extension-field element from (possibly unreduced) coefficients.
    pub fn ext_from_coeffs(ring: &Ring, coeffs: &[u64]) -> RingElem {
        let RingDescriptor::ExtensionField { p, modulus, .. } = ring.descriptor() else {
            panic!("ext_from_coeffs on {ring}");
        };
        let c: Vec<u64> = coeffs.iter().map(|c| c % p).collect();
        let v = fpoly::rem(&c, modulus, *p);
        RingElem::from_parts(ring.clone(), Val::Ext(v))
    }

    /// Coefficients of an extension-field element (ascending, trimmed), or of
    /// a prime-field element as a length-0/1 vector.
    pub fn ext_coeffs(&self) -> Option<Vec<u64>> {
        match &self.val {
            Val::Ext(v) => Some(v.clone()),
            Val::Z(0) if self.ring.is_finite_field() => Some(Vec::new()),
            Val::Z(c) if self.ring.is_finite_field() => Some(vec![*c]),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.val {
            Val::Q(q) => Some(q),
            _ => None,
        }
    }

    /// Least nonnegative residue, for prime fields and residue rings.
    pub fn as_residue(&self) -> Option<u64> {
        match &self.val {
            Val::Z(v) => Some(*v),
            _ => None,
        }
    }

    /// Builds `num/den` in a rational function field and normalizes it.
    pub fn fraction(ring: &Ring, num: Poly, den: Poly) -> Result<RingElem> {
        let Some(base) = ring.base() else {
            return Err(Error::Unsupported(format!("fraction in {ring}")));
        };
        if num.ring() != base || den.ring() != base {
            return Err(Error::DescriptorMismatch(num.ring().to_string(), base.to_string()));
        }
        if den.is_zero() {
            return Err(Error::NotUnit { elem: "0".into(), ring: ring.to_string() });
        }
        Ok(RingElem::from_parts(ring.clone(), normalize_frac(num, den)))
    }

    pub fn from_poly(ring: &Ring, num: Poly) -> Result<RingElem> {
        let one = Poly::one(num.ring());
        RingElem::fraction(ring, num, one)
    }

    pub fn numer(&self) -> Option<&Poly> {
        match &self.val {
            Val::Frac(n, _) => Some(n),
            _ => None,
        }
    }

    pub fn denom(&self) -> Option<&Poly> {
        match &self.val {
            Val::Frac(_, d) => Some(d),
            _ => None,
        }
    }

    /// The function as a polynomial, if its denominator is 1.
    pub fn as_poly(&self) -> Option<&Poly> {
        match &self.val {
            Val::Frac(n, d) if d.is_one() => Some(n),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.val {
            Val::Q(q) => q.is_zero(),
            Val::Z(v) => *v == 0,
            Val::Ext(v) => v.is_empty(),
            Val::Frac(n, _) => n.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.ring.one()
    }

    pub fn is_unit(&self) -> bool {
        match (&self.val, self.ring.descriptor()) {
            (Val::Z(v), RingDescriptor::ResidueRing { n, .. }) => fpoly::gcd_u64(*v, *n) == 1,
            _ => !self.is_zero(),
        }
    }

    fn check_same(&self, other: &RingElem) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch(self.ring.to_string(), other.ring.to_string()))
        }
    }

    pub fn checked_add(&self, other: &RingElem) -> Result<RingElem> {
        self.check_same(other)?;
        let val = match (&self.val, &other.val) {
            (Val::Q(a), Val::Q(b)) => Val::Q(a + b),
            (Val::Z(a), Val::Z(b)) => Val::Z(fpoly::add_mod(*a, *b, self.ring.modulus())),
            (Val::Ext(a), Val::Ext(b)) => Val::Ext(fpoly::add(a, b, self.ring.modulus())),
            (Val::Frac(n1, d1), Val::Frac(n2, d2)) => {
                if d1 == d2 {
                    normalize_frac(n1 + n2, d1.clone())
                } else {
                    normalize_frac(&(n1 * d2) + &(n2 * d1), d1 * d2)
                }
            }
            _ => unreachable!("payload does not match descriptor"),
        };
        Ok(RingElem::from_parts(self.ring.clone(), val))
    }

    pub fn checked_sub(&self, other: &RingElem) -> Result<RingElem> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &RingElem) -> Result<RingElem> {
        self.check_same(other)?;
        let val = match (&self.val, &other.val) {
            (Val::Q(a), Val::Q(b)) => Val::Q(a * b),
            (Val::Z(a), Val::Z(b)) => Val::Z(fpoly::mul_mod(*a, *b, self.ring.modulus())),
            (Val::Ext(a), Val::Ext(b)) => {
                let RingDescriptor::ExtensionField { p, modulus, .. } = self.ring.descriptor() else {
                    unreachable!()
                };
                Val::Ext(fpoly::mul_rem(a, b, modulus, *p))
            }
            (Val::Frac(n1, d1), Val::Frac(n2, d2)) => {
                if d1.is_one() && d2.is_one() {
                    Val::Frac(n1 * n2, d1.clone())
                } else {
                    normalize_frac(n1 * n2, d1 * d2)
                }
            }
            _ => unreachable!("payload does not match descriptor"),
        };
        Ok(RingElem::from_parts(self.ring.clone(), val))
    }

    pub fn inv(&self) -> Result<RingElem> {
        let not_unit = || Error::NotUnit { elem: self.to_string(), ring: self.ring.to_string() };
        let val = match &self.val {
            Val::Q(a) => {
                if a.is_zero() {
                    return Err(not_unit());
                }
                Val::Q(a.recip())
            }
            Val::Z(a) => Val::Z(fpoly::inv_mod(*a, self.ring.modulus()).ok_or_else(not_unit)?),
            Val::Ext(a) => {
                let RingDescriptor::ExtensionField { p, modulus, .. } = self.ring.descriptor() else {
                    unreachable!()
                };
                if a.is_empty() {
                    return Err(not_unit());
                }
                Val::Ext(fpoly::inv_rem(a, modulus, *p).ok_or_else(not_unit)?)
            }
            Val::Frac(n, d) => {
                if n.is_zero() {
                    return Err(not_unit());
                }
                normalize_frac(d.clone(), n.clone())
            }
        };
        Ok(RingElem::from_parts(self.ring.clone(), val))
    }

    pub fn checked_div(&self, other: &RingElem) -> Result<RingElem> {
        self.check_same(other)?;
        self.checked_mul(&other.inv()?)
    }

    pub fn pow(&self, e: u64) -> RingElem {
        self.pow_big(&BigUint::from(e))
    }

    pub fn pow_big(&self, e: &BigUint) -> RingElem {
        let mut acc = self.ring.one();
        for i in (0..e.bits()).rev() {
            acc = &acc * &acc;
            if e.bit(i) {
                acc = &acc * self;
            }
        }
        acc
    }

    pub fn square(&self) -> RingElem {
        self * self
    }

    /// `self^p` where `p` is the characteristic: the Frobenius map on finite
    /// fields.
    pub fn frobenius(&self) -> RingElem {
        self.pow(self.ring.characteristic())
    }

    /// True when the element lies in the prime subfield of a finite field.
    pub fn in_prime_field(&self) -> bool {
        match &self.val {
            Val::Z(_) => true,
            Val::Ext(v) => v.len() <= 1,
            _ => false,
        }
    }

    /// Chooses a sign representative: among `{c, -c}` exactly one is
    /// sign-canonical unless `c = -c = 0`.
    ///
    /// Rationals: `c >= 0`. Prime fields: residue `<= (p-1)/2`. Extension
    /// fields: the first nonzero coefficient is `<= (p-1)/2`. Function fields:
    /// the leading numerator coefficient is sign-canonical.
    pub fn is_sign_canonical(&self) -> bool {
        match &self.val {
            Val::Q(q) => !q.is_negative(),
            Val::Z(v) => *v <= self.ring.modulus() / 2,
            Val::Ext(v) => v.iter().find(|c| **c != 0).is_none_or(|c| *c <= self.ring.modulus() / 2),
            Val::Frac(n, _) => n.lc().is_none_or(|c| c.is_sign_canonical()),
        }
    }

    /// Evaluates a function-field element at a base-field value.
    /// Fails with `NotUnit` when the denominator vanishes there.
    pub fn eval(&self, at: &RingElem) -> Result<RingElem> {
        let (Some(n), Some(d)) = (self.numer(), self.denom()) else {
            return Err(Error::Unsupported(format!("evaluation of {self}")));
        };
        let dv = d.eval(at)?;
        if dv.is_zero() {
            return Err(Error::NotUnit { elem: format!("denominator at {at}"), ring: self.ring.to_string() });
        }
        n.eval(at)?.checked_div(&dv)
    }

    /// Substitutes `t -> -t` in a function-field element.
    pub fn reflect(&self) -> RingElem {
        match &self.val {
            Val::Frac(n, d) => RingElem::from_parts(self.ring.clone(), normalize_frac(n.reflect(), d.reflect())),
            _ => self.clone(),
        }
    }

    /// Substitutes `t -> 1/t` in a function-field element.
    pub fn at_reciprocal(&self) -> RingElem {
        match &self.val {
            Val::Frac(n, d) => {
                let (dn, dd) = (n.degree().unwrap_or(0), d.degree().unwrap_or(0));
                let mut rn = n.reverse(dn);
                let mut rd = d.reverse(dd);
                if dn > dd {
                    rd = rd.shift(dn - dd);
                } else {
                    rn = rn.shift(dd - dn);
                }
                RingElem::from_parts(self.ring.clone(), normalize_frac(rn, rd))
            }
            _ => self.clone(),
        }
    }

    /// Formal derivative of a function-field element in its variable.
    pub fn derivative(&self) -> RingElem {
        match &self.val {
            Val::Frac(n, d) => {
                let num = &(&n.derivative() * d) - &(n * &d.derivative());
                RingElem::from_parts(self.ring.clone(), normalize_frac(num, d * d))
            }
            _ => self.ring.zero(),
        }
    }

    /// Applies `f` to every base-field coefficient of a function-field
    /// element, producing an element of `target`.
    pub fn map_coeffs(&self, target: &Ring, f: &dyn Fn(&RingElem) -> Result<RingElem>) -> Result<RingElem> {
        let (Some(n), Some(d)) = (self.numer(), self.denom()) else {
            return Err(Error::Unsupported(format!("coefficient map on {}", self.ring)));
        };
        let tb = target.base().ok_or_else(|| Error::Unsupported(format!("target {target}")))?;
        let n = n.map(tb, f)?;
        let d = d.map(tb, f)?;
        RingElem::fraction(target, n, d)
    }

}

pub(crate) fn normalize_frac(num: Poly, den: Poly) -> Val {
    let base = num.ring().clone();
    if num.is_zero() {
        return Val::Frac(num, Poly::one(&base));
    }
    let (num, den) = if den.degree() == Some(0) {
        (num, den)
    } else {
        let g = num.gcd(&den);
        if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        }
    };
    let lc = den.lc().expect("nonzero denominator").clone();
    if lc.is_one() {
        return Val::Frac(num, den);
    }
    let inv = lc.inv().expect("leading coefficient over a field");
    Val::Frac(num.scale(&inv), den.scale(&inv))
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.val {
            Val::Q(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Val::Z(v) => write!(f, "{v}"),
            Val::Ext(v) => {
                if v.len() <= 1 {
                    write!(f, "{}", v.first().copied().unwrap_or(0))
                } else {
                    let s: Vec<String> = v.iter().map(|c| c.to_string()).collect();
                    write!(f, "[{}]", s.join(","))
                }
            }
            Val::Frac(n, d) => {
                let var = self.ring.var().unwrap_or("?");
                if d.is_one() {
                    write!(f, "{}", n.display(var))
                } else {
                    let wrap = |p: &Poly| {
                        if p.term_count() > 1 {
                            format!("({})", p.display(var))
                        } else {
                            p.display(var)
                        }
                    };
                    write!(f, "{}/{}", wrap(n), wrap(d))
                }
            }
        }
    }
}

impl RingElem {
    /// True when the printed form needs parentheses as a product factor.
    pub(crate) fn is_compound(&self) -> bool {
        match &self.val {
            Val::Q(q) => !q.denom().is_one(),
            Val::Frac(n, d) => !d.is_one() || n.term_count() > 1 || n.lc().is_some_and(|c| c.is_compound()),
            _ => false,
        }
    }

    pub(crate) fn is_negative_rational(&self) -> bool {
        matches!(&self.val, Val::Q(q) if q.is_negative())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&RingElem> for &RingElem {
            type Output = RingElem;
            fn $method(self, rhs: &RingElem) -> RingElem {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<RingElem> for RingElem {
            type Output = RingElem;
            fn $method(self, rhs: RingElem) -> RingElem {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&RingElem> for RingElem {
            type Output = RingElem;
            fn $method(self, rhs: &RingElem) -> RingElem {
                (&self).$method(rhs)
            }
        }
        impl $tr<RingElem> for &RingElem {
            type Output = RingElem;
            fn $method(self, rhs: RingElem) -> RingElem {
                self.$method(&rhs)
            }
        }
    };
}

// Operators panic on mismatched descriptors; use the `checked_*` methods
// when the operands come from untrusted input.
forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        let val = match &self.val {
            Val::Q(a) => Val::Q(-a),
            Val::Z(a) => Val::Z(fpoly::neg_mod(*a, self.ring.modulus())),
            Val::Ext(a) => Val::Ext(fpoly::sub(&[], a, self.ring.modulus())),
            Val::Frac(n, d) => Val::Frac(-n, d.clone()),
        };
        RingElem::from_parts(self.ring.clone(), val)
    }
}

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        -&self
    }
}

/// Integer square root test for rationals.
pub(crate) fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_in_f5() {
        let f5 = Ring::parse("fp:5").unwrap();
        assert_eq!(f5.from_i64(3).inv().unwrap(), f5.from_i64(2));
        assert!(f5.from_i64(0).inv().is_err());
    }

    #[test]
    fn residue_ring_units() {
        let z15 = Ring::parse("z:15").unwrap();
        assert!(!z15.from_i64(5).is_unit());
        assert!(z15.from_i64(7).is_unit());
        assert!(matches!(z15.from_i64(5).inv(), Err(Error::NotUnit { .. })));
        assert_eq!(z15.from_i64(7).inv().unwrap(), z15.from_i64(13));
    }

    #[test]
    fn function_field_inverse_cancels() {
        let r = Ring::parse("ratfunc:q:s").unwrap();
        let s = r.generator().unwrap();
        let one = r.one();
        let a = s.checked_div(&(&s + &one)).unwrap();
        let b = (&s + &one).checked_div(&s).unwrap();
        assert_eq!(&a * &b, one);
    }

    #[test]
    fn mismatch_is_an_error() {
        let f5 = Ring::parse("fp:5").unwrap();
        let f7 = Ring::parse("fp:7").unwrap();
        assert!(matches!(f5.one().checked_add(&f7.one()), Err(Error::DescriptorMismatch(..))));
    }

    #[test]
    fn canonical_fraction_has_monic_denominator() {
        let r = Ring::parse("ratfunc:fp:7:s").unwrap();
        let s = r.generator().unwrap();
        let x = r.from_i64(3).checked_div(&(&r.from_i64(2) * &s)).unwrap();
        assert!(x.denom().unwrap().lc().unwrap().is_one());
        assert_eq!(x.to_string(), "5/s");
    }

    #[test]
    fn reciprocal_substitution() {
        let r = Ring::parse("ratfunc:q:t").unwrap();
        let t = r.generator().unwrap();
        // (t^2 + 1)/t  ->  (1 + t^2)/t
        let f = (&(&t * &t) + &r.one()).checked_div(&t).unwrap();
        assert_eq!(f.at_reciprocal(), f);
        // t^3 -> 1/t^3
        let g = t.pow(3);
        assert_eq!(g.at_reciprocal(), g.inv().unwrap());
    }
}
