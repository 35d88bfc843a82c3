use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::elem::{RingElem, Val};
use super::fpoly;
use super::poly::Poly;
use crate::error::{Error, Result};

/// The coefficient domains supported by the library. Characteristic 2 is
/// never representable.
#[derive(Debug, PartialEq, Eq, Hash)]
pub enum RingDescriptor {
    Rationals,
    PrimeField {
        p: u64,
    },
    /// `F_p[x]/(modulus)`; `modulus` is monic irreducible of degree `k`,
    /// coefficients ascending.
    ExtensionField {
        p: u64,
        k: usize,
        modulus: Vec<u64>,
    },
    RationalFunctionField {
        base: Ring,
        var: String,
    },
    /// `Z/n` with `n` odd; `factors` is the prime factorization of `n`.
    ResidueRing {
        n: u64,
        factors: Vec<(u64, u32)>,
    },
}

/// Shared handle to a [`RingDescriptor`]. Cloning is cheap.
#[derive(Clone, Debug)]
pub struct Ring(Arc<RingDescriptor>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Ring {}

impl Hash for Ring {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl Ring {
    pub fn rationals() -> Ring {
        Ring(Arc::new(RingDescriptor::Rationals))
    }

    pub fn prime_field(p: u64) -> Result<Ring> {
        if p == 2 || !fpoly::is_prime_u64(p) {
            return Err(Error::InvalidDescriptor(format!(
                "{p} is not an odd prime"
            )));
        }
        Ok(Ring(Arc::new(RingDescriptor::PrimeField { p })))
    }

    /// `F_{p^k}`. Without an explicit modulus the least monic irreducible
    /// polynomial of degree `k` is used (see [`Ring::least_modulus`]).
    pub fn extension_field(p: u64, k: usize, modulus: Option<Vec<u64>>) -> Result<Ring> {
        Ring::prime_field(p)?;
        if k == 0 {
            return Err(Error::InvalidDescriptor("extension degree must be >= 1".into()));
        }
        let modulus = match modulus {
            Some(mut m) => {
                for c in m.iter_mut() {
                    *c %= p;
                }
                if m.len() != k + 1 || m[k] != 1 {
                    return Err(Error::InvalidDescriptor(format!(
                        "modulus must be monic of degree {k}"
                    )));
                }
                if !fpoly::is_irreducible(&m, p) {
                    return Err(Error::InvalidDescriptor(format!(
                        "modulus {m:?} is reducible over F_{p}"
                    )));
                }
                m
            }
            None => Ring::least_modulus(p, k),
        };
        Ok(Ring(Arc::new(RingDescriptor::ExtensionField { p, k, modulus })))
    }

    /// The least monic irreducible of degree `k` over `F_p`, ordering
    /// candidates by the integer `c_0 + c_1 p + ... + c_{k-1} p^(k-1)`.
    pub fn least_modulus(p: u64, k: usize) -> Vec<u64> {
        fpoly::least_irreducible(p, k)
    }

    pub fn rational_functions(base: &Ring, var: &str) -> Result<Ring> {
        if !base.is_field() {
            return Err(Error::InvalidDescriptor(format!(
                "rational function field over non-field {base}"
            )));
        }
        if var.is_empty()
            || !var.chars().all(|c| c.is_ascii_alphabetic())
            || var == "inf"
            || base.has_variable(var)
        {
            return Err(Error::InvalidDescriptor(format!("bad variable name `{var}`")));
        }
        Ok(Ring(Arc::new(RingDescriptor::RationalFunctionField {
            base: base.clone(),
            var: var.to_string(),
        })))
    }

    pub fn residue(n: u64) -> Result<Ring> {
        if n < 2 || n.is_multiple_of(2) {
            return Err(Error::InvalidDescriptor(format!(
                "residue ring modulus {n} must be odd and >= 3"
            )));
        }
        let factors = fpoly::factor_u64(n);
        Ok(Ring(Arc::new(RingDescriptor::ResidueRing { n, factors })))
    }

    pub fn descriptor(&self) -> &RingDescriptor {
        &self.0
    }

    pub fn ptr_eq(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    fn has_variable(&self, var: &str) -> bool {
        match self.descriptor() {
            RingDescriptor::RationalFunctionField { base, var: v } => v == var || base.has_variable(var),
            _ => false,
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self.descriptor(), RingDescriptor::ResidueRing { .. })
    }

    pub fn is_finite_field(&self) -> bool {
        matches!(
            self.descriptor(),
            RingDescriptor::PrimeField { .. } | RingDescriptor::ExtensionField { .. }
        )
    }

    /// Characteristic; `0` for the rationals and function fields over them.
    pub fn characteristic(&self) -> u64 {
        match self.descriptor() {
            RingDescriptor::Rationals => 0,
            RingDescriptor::PrimeField { p } | RingDescriptor::ExtensionField { p, .. } => *p,
            RingDescriptor::RationalFunctionField { base, .. } => base.characteristic(),
            RingDescriptor::ResidueRing { n, .. } => *n,
        }
    }

    /// Number of elements for finite rings.
    pub fn order(&self) -> Option<BigUint> {
        match self.descriptor() {
            RingDescriptor::PrimeField { p } => Some(BigUint::from(*p)),
            RingDescriptor::ExtensionField { p, k, .. } => Some(BigUint::from(*p).pow(*k as u32)),
            RingDescriptor::ResidueRing { n, .. } => Some(BigUint::from(*n)),
            _ => None,
        }
    }

    /// Degree over the prime field, for finite fields.
    pub fn finite_degree(&self) -> Option<usize> {
        match self.descriptor() {
            RingDescriptor::PrimeField { .. } => Some(1),
            RingDescriptor::ExtensionField { k, .. } => Some(*k),
            _ => None,
        }
    }

    /// Base field of a rational function field.
    pub fn base(&self) -> Option<&Ring> {
        match self.descriptor() {
            RingDescriptor::RationalFunctionField { base, .. } => Some(base),
            _ => None,
        }
    }

    pub fn var(&self) -> Option<&str> {
        match self.descriptor() {
            RingDescriptor::RationalFunctionField { var, .. } => Some(var),
            _ => None,
        }
    }

    pub(crate) fn modulus(&self) -> u64 {
        match self.descriptor() {
            RingDescriptor::PrimeField { p } | RingDescriptor::ExtensionField { p, .. } => *p,
            RingDescriptor::ResidueRing { n, .. } => *n,
            _ => unreachable!("modulus of a characteristic-zero or function field"),
        }
    }

    pub fn zero(&self) -> RingElem {
        let val = match self.descriptor() {
            RingDescriptor::Rationals => Val::Q(BigRational::zero()),
            RingDescriptor::PrimeField { .. } | RingDescriptor::ResidueRing { .. } => Val::Z(0),
            RingDescriptor::ExtensionField { .. } => Val::Ext(Vec::new()),
            RingDescriptor::RationalFunctionField { base, .. } => {
                Val::Frac(Poly::zero(base), Poly::one(base))
            }
        };
        RingElem::from_parts(self.clone(), val)
    }

    pub fn one(&self) -> RingElem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> RingElem {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> RingElem {
        let val = match self.descriptor() {
            RingDescriptor::Rationals => Val::Q(BigRational::from_integer(v.clone())),
            RingDescriptor::PrimeField { p } | RingDescriptor::ResidueRing { n: p, .. } => {
                Val::Z(reduce_bigint(v, *p))
            }
            RingDescriptor::ExtensionField { p, .. } => {
                let c = reduce_bigint(v, *p);
                Val::Ext(if c == 0 { Vec::new() } else { vec![c] })
            }
            RingDescriptor::RationalFunctionField { base, .. } => {
                Val::Frac(Poly::constant(base.from_bigint(v)), Poly::one(base))
            }
        };
        RingElem::from_parts(self.clone(), val)
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<RingElem> {
        let num = self.from_bigint(q.numer());
        let den = self.from_bigint(q.denom());
        num.checked_div(&den)
    }

    /// The adjoined element: the variable of a function field, or the class
    /// of `x` in an extension field.
    pub fn generator(&self) -> Option<RingElem> {
        let val = match self.descriptor() {
            RingDescriptor::ExtensionField { k, .. } => {
                if *k == 1 {
                    // F_p[x]/(x + c): x = -c
                    return Some(RingElem::ext_from_coeffs(self, &[0, 1]));
                }
                Val::Ext(vec![0, 1])
            }
            RingDescriptor::RationalFunctionField { base, .. } => {
                Val::Frac(Poly::x(base), Poly::one(base))
            }
            _ => return None,
        };
        Some(RingElem::from_parts(self.clone(), val))
    }

    /// Embeds an element of the base field of a function field as a constant.
    pub fn lift(&self, c: &RingElem) -> Result<RingElem> {
        match self.descriptor() {
            RingDescriptor::RationalFunctionField { base, .. } => {
                if c.ring() == self {
                    return Ok(c.clone());
                }
                let c = base.lift(c)?;
                Ok(RingElem::from_parts(
                    self.clone(),
                    Val::Frac(Poly::constant(c), Poly::one(base)),
                ))
            }
            _ if c.ring() == self => Ok(c.clone()),
            _ => Err(Error::DescriptorMismatch(c.ring().to_string(), self.to_string())),
        }
    }

    /// Resolves a variable name through a tower of function fields.
    pub fn variable(&self, name: &str) -> Option<RingElem> {
        match self.descriptor() {
            RingDescriptor::RationalFunctionField { base, var } => {
                if var == name {
                    self.generator()
                } else {
                    base.variable(name).and_then(|v| self.lift(&v).ok())
                }
            }
            _ => None,
        }
    }

    /// The `i`-th element of a finite ring in the base-`p` digit order
    /// (constant coefficient least significant).
    pub fn element_from_index(&self, i: &BigUint) -> Option<RingElem> {
        match self.descriptor() {
            RingDescriptor::PrimeField { p } | RingDescriptor::ResidueRing { n: p, .. } => {
                let v = (i % BigUint::from(*p)).to_u64().unwrap();
                Some(RingElem::from_parts(self.clone(), Val::Z(v)))
            }
            RingDescriptor::ExtensionField { p, k, .. } => {
                let pb = BigUint::from(*p);
                let mut rest = i.clone();
                let mut coeffs = Vec::with_capacity(*k);
                for _ in 0..*k {
                    coeffs.push((&rest % &pb).to_u64().unwrap());
                    rest /= &pb;
                }
                Some(RingElem::ext_from_coeffs(self, &coeffs))
            }
            _ => None,
        }
    }

    /// All elements of a finite ring, in index order.
    pub fn elements(&self) -> Option<Vec<RingElem>> {
        let order = self.order()?.to_usize()?;
        Some(
            (0..order)
                .map(|i| self.element_from_index(&BigUint::from(i)).unwrap())
                .collect(),
        )
    }

    /// Parses the compact descriptor grammar:
    /// `q`, `fp:P`, `fpk:P:K[:c0,...,cK]`, `ratfunc:<base>:VAR`, `z:N`.
    pub fn parse(s: &str) -> Result<Ring> {
        let s = s.trim();
        let bad = || Error::InvalidDescriptor(s.to_string());
        let num = |t: &str| t.trim().parse::<u64>().map_err(|_| bad());
        if s == "q" {
            return Ok(Ring::rationals());
        }
        if let Some(rest) = s.strip_prefix("ratfunc:") {
            let (base, var) = rest.rsplit_once(':').ok_or_else(bad)?;
            return Ring::rational_functions(&Ring::parse(base)?, var);
        }
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["fp", p] => Ring::prime_field(num(p)?),
            ["fpk", p, k] => Ring::extension_field(num(p)?, num(k)? as usize, None),
            ["fpk", p, k, m] => {
                let m = m.split(',').map(num).collect::<Result<Vec<_>>>()?;
                Ring::extension_field(num(p)?, num(k)? as usize, Some(m))
            }
            ["z", n] => Ring::residue(num(n)?),
            _ => Err(bad()),
        }
    }
}

pub(crate) fn reduce_bigint(v: &BigInt, m: u64) -> u64 {
    let mb = BigInt::from(m);
    let r = ((v % &mb) + &mb) % &mb;
    r.abs().to_u64().unwrap()
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.descriptor() {
            RingDescriptor::Rationals => write!(f, "q"),
            RingDescriptor::PrimeField { p } => write!(f, "fp:{p}"),
            RingDescriptor::ExtensionField { p, k, modulus } => {
                let m: Vec<String> = modulus.iter().map(|c| c.to_string()).collect();
                write!(f, "fpk:{p}:{k}:{}", m.join(","))
            }
            RingDescriptor::RationalFunctionField { base, var } => write!(f, "ratfunc:{base}:{var}"),
            RingDescriptor::ResidueRing { n, .. } => write!(f, "z:{n}"),
        }
    }
}

impl std::str::FromStr for Ring {
    type Err = Error;
    fn from_str(s: &str) -> Result<Ring> {
        Ring::parse(s)
    }
}

#[allow(dead_code)]
#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_roundtrip() {
        for s in ["q", "fp:5", "fpk:5:2:2,0,1", "ratfunc:fp:7:s", "z:15", "ratfunc:ratfunc:fp:7:s:t"] {
            let r = Ring::parse(s).unwrap();
            assert_eq!(r.to_string(), s);
            assert_eq!(Ring::parse(&r.to_string()).unwrap(), r);
        }
        // auto modulus is printed explicitly
        assert_eq!(Ring::parse("fpk:5:2").unwrap().to_string(), "fpk:5:2:2,0,1");
    }

    #[test]
    fn rejects_characteristic_two_and_bad_input() {
        assert!(Ring::parse("fp:2").is_err());
        assert!(Ring::parse("fp:9").is_err());
        assert!(Ring::parse("z:10").is_err());
        assert!(Ring::parse("ratfunc:z:15:s").is_err());
        assert!(Ring::parse("ratfunc:ratfunc:fp:7:s:s").is_err());
        assert!(Ring::parse("fpk:5:2:4,0,1").is_err()); // x^2 - 1 is reducible
        assert!(Ring::parse("nonsense").is_err());
    }

    #[test]
    fn element_enumeration() {
        let f25 = Ring::parse("fpk:5:2").unwrap();
        let all = f25.elements().unwrap();
        assert_eq!(all.len(), 25);
        let set: std::collections::HashSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), 25);
    }
}
