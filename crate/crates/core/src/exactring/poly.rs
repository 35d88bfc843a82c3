use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::elem::RingElem;
use super::ring::Ring;
use crate::error::{Error, Result};

/// Dense univariate polynomial with ascending coefficients and no trailing
/// zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    ring: Ring,
    coeffs: Vec<RingElem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("t"))
    }
}

impl Poly {
    pub fn new(ring: &Ring, mut coeffs: Vec<RingElem>) -> Poly {
        debug_assert!(coeffs.iter().all(|c| c.ring() == ring));
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { ring: ring.clone(), coeffs }
    }

    pub fn from_i64s(ring: &Ring, coeffs: &[i64]) -> Poly {
        Poly::new(ring, coeffs.iter().map(|&c| ring.from_i64(c)).collect())
    }

    pub fn zero(ring: &Ring) -> Poly {
        Poly { ring: ring.clone(), coeffs: Vec::new() }
    }

    pub fn one(ring: &Ring) -> Poly {
        Poly::constant(ring.one())
    }

    pub fn constant(c: RingElem) -> Poly {
        let ring = c.ring().clone();
        Poly::new(&ring, vec![c])
    }

    /// The polynomial `x`.
    pub fn x(ring: &Ring) -> Poly {
        Poly::new(ring, vec![ring.zero(), ring.one()])
    }

    /// `x - r`.
    pub fn linear(r: &RingElem) -> Poly {
        Poly::new(r.ring(), vec![-r, r.ring().one()])
    }

    /// `c * x^n`.
    pub fn monomial(c: RingElem, n: usize) -> Poly {
        let ring = c.ring().clone();
        let mut coeffs = vec![ring.zero(); n];
        coeffs.push(c);
        Poly::new(&ring, coeffs)
    }

    /// `prod (x - r_i)`.
    pub fn from_roots(ring: &Ring, roots: &[RingElem]) -> Poly {
        roots.iter().fold(Poly::one(ring), |acc, r| &acc * &Poly::linear(r))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn coeffs(&self) -> &[RingElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RingElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&RingElem> {
        self.coeffs.last()
    }

    pub(crate) fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn scale(&self, c: &RingElem) -> Poly {
        Poly::new(&self.ring, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `x^n`.
    pub fn shift(&self, n: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.ring.zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { ring: self.ring.clone(), coeffs }
    }

    /// `x^n p(1/x)`; `n` must be at least the degree.
    pub fn reverse(&self, n: usize) -> Poly {
        let mut coeffs: Vec<RingElem> = (0..=n).map(|i| self.coeff(i)).collect();
        coeffs.reverse();
        Poly::new(&self.ring, coeffs)
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Poly {
        Poly::new(
            &self.ring,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn monic(&self) -> Result<Poly> {
        match self.lc() {
            None => Ok(self.clone()),
            Some(lc) => Ok(self.scale(&lc.inv()?)),
        }
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            &self.ring,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| &self.ring.from_i64(i as i64) * c)
                .collect(),
        )
    }

    pub fn eval(&self, at: &RingElem) -> Result<RingElem> {
        if at.ring() != &self.ring {
            return Err(Error::DescriptorMismatch(at.ring().to_string(), self.ring.to_string()));
        }
        Ok(self
            .coeffs
            .iter()
            .rev()
            .fold(self.ring.zero(), |acc, c| &(&acc * at) + c))
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &Poly) -> Poly {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(&self.ring), |acc, c| &(&acc * inner) + &Poly::constant(c.clone()))
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(&self.ring), |acc, _| &acc * self)
    }

    /// Division with remainder; the divisor's leading coefficient must be a
    /// unit.
    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dl = d.lc().ok_or(Error::ZeroPolynomial)?;
        let inv = dl.inv()?;
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() < d.coeffs.len() {
            return Ok((Poly::zero(&self.ring), self.clone()));
        }
        let mut q = vec![self.ring.zero(); r.len() - dd];
        while r.len() >= d.coeffs.len() {
            let shift = r.len() - d.coeffs.len();
            let c = r.last().unwrap() * &inv;
            for (i, di) in d.coeffs.iter().enumerate() {
                r[shift + i] = &r[shift + i] - &(&c * di);
            }
            q[shift] = c;
            r.pop(); // leading term cancels exactly
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Ok((Poly::new(&self.ring, q), Poly::new(&self.ring, r)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.divrem(d)?.1)
    }

    /// Quotient of a division known to be exact.
    pub fn exact_div(&self, d: &Poly) -> Poly {
        let (q, r) = self.divrem(d).expect("divisor with unit leading coefficient");
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    /// Monic gcd over a field; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("gcd over a field");
            a = b;
            b = r;
        }
        a.monic().expect("gcd over a field")
    }

    /// Extended Euclid: `(g, u, v)` with `u*self + v*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> Result<(Poly, Poly, Poly)> {
        let ring = &self.ring;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(ring), Poly::zero(ring));
        let (mut t0, mut t1) = (Poly::zero(ring), Poly::one(ring));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        match r0.lc() {
            None => Ok((r0, s0, t0)),
            Some(lc) => {
                let inv = lc.inv()?;
                Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
            }
        }
    }

    /// Inverse of `self` modulo `m`, when coprime.
    pub fn inv_mod(&self, m: &Poly) -> Result<Poly> {
        let (g, u, _) = self.ext_gcd(m)?;
        if !g.is_one() {
            return Err(Error::NotUnit { elem: format!("{self:?}"), ring: format!("K[t]/({m:?})") });
        }
        u.rem(m)
    }

    /// Squarefree over a field of characteristic not 2 (and at least the
    /// degree): `gcd(f, f') = 1`.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            _ => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// Applies a coefficient map into `target`.
    pub fn map(&self, target: &Ring, f: &dyn Fn(&RingElem) -> Result<RingElem>) -> Result<Poly> {
        Ok(Poly::new(target, self.coeffs.iter().map(f).collect::<Result<Vec<_>>>()?))
    }

    /// Human-readable form in the variable `var`, highest degree first.
    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, c) = if c.is_negative_rational() { (true, -c) } else { (false, c.clone()) };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let cs = if c.is_compound() { format!("({c})") } else { c.to_string() };
            if mono.is_empty() {
                out.push_str(&cs);
            } else if c.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{cs}*{mono}"));
            }
        }
        out
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(&self.ring, coeffs)
    }
}

impl Add<Poly> for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.ring);
        }
        let mut coeffs = vec![self.ring.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Poly::new(&self.ring, coeffs)
    }
}

impl Mul<Poly> for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_and_gcd() {
        let q = Ring::rationals();
        let a = Poly::from_i64s(&q, &[-1, 0, 1]); // t^2 - 1
        let b = Poly::from_i64s(&q, &[1, 1]); // t + 1
        let (quo, r) = a.divrem(&b).unwrap();
        assert!(r.is_zero());
        assert_eq!(quo, Poly::from_i64s(&q, &[-1, 1]));
        assert_eq!(a.gcd(&Poly::from_i64s(&q, &[2, 2])), b);
    }

    #[test]
    fn squarefree_detection() {
        let f5 = Ring::parse("fp:5").unwrap();
        assert!(Poly::from_i64s(&f5, &[-1, 0, 1]).is_squarefree());
        assert!(!Poly::from_i64s(&f5, &[1, 2, 1]).is_squarefree());
    }

    #[test]
    fn inverse_modulo() {
        let f7 = Ring::parse("fp:7").unwrap();
        let m = Poly::from_i64s(&f7, &[1, 0, 0, 1, 0, 1]);
        let a = Poly::from_i64s(&f7, &[3, 1, 4]);
        let inv = a.inv_mod(&m).unwrap();
        assert!((&a * &inv).rem(&m).unwrap().is_one());
    }

    #[test]
    fn display_form() {
        let q = Ring::rationals();
        let p = Poly::new(&q, vec![q.from_i64(-3), q.zero(), q.from_rational(&num_rational::BigRational::new(3.into(), 8.into())).unwrap()]);
        assert_eq!(p.display("t"), "(3/8)*t^2 - 3");
    }
}
