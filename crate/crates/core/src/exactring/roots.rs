//! Root finding and square roots over the supported fields.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::elem::{rational_sqrt, RingElem, Val};
use super::poly::Poly;
use super::ring::Ring;
use crate::error::{Error, Result};

/// A total order on elements of one ring used for deterministic output:
/// rationals by value, finite rings by element index, function fields by
/// printed form.
pub fn canonical_cmp(a: &RingElem, b: &RingElem) -> Ordering {
    match (a.val(), b.val()) {
        (Val::Q(x), Val::Q(y)) => x.cmp(y),
        (Val::Z(x), Val::Z(y)) => x.cmp(y),
        (Val::Ext(x), Val::Ext(y)) => x.len().cmp(&y.len()).then_with(|| x.iter().rev().cmp(y.iter().rev())),
        _ => a.to_string().cmp(&b.to_string()),
    }
}

/// `base^e mod m`.
pub fn pow_mod(base: &Poly, e: &BigUint, m: &Poly) -> Result<Poly> {
    let mut acc = Poly::one(base.ring()).rem(m)?;
    let b = base.rem(m)?;
    for i in (0..e.bits()).rev() {
        acc = (&acc * &acc).rem(m)?;
        if e.bit(i) {
            acc = (&acc * &b).rem(m)?;
        }
    }
    Ok(acc)
}

/// Roots in the coefficient field with multiplicities, sorted by
/// [`canonical_cmp`]. Supported over finite fields and the rationals.
pub fn poly_roots(f: &Poly) -> Result<Vec<(RingElem, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ring = f.ring().clone();
    let mut distinct = if ring.is_finite_field() {
        finite_field_distinct_roots(f)?
    } else if ring.as_rationals() {
        rational_distinct_roots(f)?
    } else {
        return Err(Error::Unsupported(format!("root finding over {ring}")));
    };
    distinct.sort_by(canonical_cmp);
    let mut out = Vec::with_capacity(distinct.len());
    for r in distinct {
        let lin = Poly::linear(&r);
        let mut g = f.clone();
        let mut mult = 0;
        loop {
            let (q, rem) = g.divrem(&lin)?;
            if !rem.is_zero() {
                break;
            }
            mult += 1;
            g = q;
        }
        debug_assert!(mult > 0);
        out.push((r, mult));
    }
    Ok(out)
}

/// Roots listed with repetition according to multiplicity.
pub fn poly_roots_flat(f: &Poly) -> Result<Vec<RingElem>> {
    Ok(poly_roots(f)?
        .into_iter()
        .flat_map(|(r, m)| std::iter::repeat_n(r, m))
        .collect())
}

fn finite_field_distinct_roots(f: &Poly) -> Result<Vec<RingElem>> {
    let ring = f.ring();
    let q = ring.order().expect("finite field");
    let p = ring.characteristic();
    let k = ring.finite_degree().unwrap();
    let f = f.monic()?;
    if f.degree() == Some(0) {
        return Ok(Vec::new());
    }
    // x^q mod f by k successive p-th powers
    let x = Poly::x(ring);
    let mut xq = x.rem(&f)?;
    for _ in 0..k {
        xq = pow_mod(&xq, &BigUint::from(p), &f)?;
    }
    let g = f.gcd(&(&xq - &x));
    let half = (&q - 1u32) / 2u32;
    let mut out = Vec::new();
    split_roots(&g, &half, &q, &mut out)?;
    Ok(out)
}

fn split_roots(g: &Poly, half: &BigUint, q: &BigUint, out: &mut Vec<RingElem>) -> Result<()> {
    let ring = g.ring();
    match g.degree() {
        None | Some(0) => return Ok(()),
        Some(1) => {
            out.push(-&(&g.coeff(0) * &g.coeff(1).inv()?));
            return Ok(());
        }
        _ => {}
    }
    let mut i = BigUint::zero();
    while &i < q {
        let delta = ring.element_from_index(&i).unwrap();
        let shifted = &Poly::x(ring) + &Poly::constant(delta);
        let h = &pow_mod(&shifted, half, g)? - &Poly::one(ring);
        let d = g.gcd(&h);
        if let Some(dd) = d.degree() {
            if dd > 0 && Some(dd) < g.degree() {
                split_roots(&d, half, q, out)?;
                split_roots(&g.exact_div(&d), half, q, out)?;
                return Ok(());
            }
        }
        i += 1u32;
    }
    Err(Error::InternalConsistency(format!("could not split {g:?}")))
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let e = &n / &d;
            if e != d {
                large.push(e);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

fn rational_distinct_roots(f: &Poly) -> Result<Vec<RingElem>> {
    let ring = f.ring();
    // clear denominators
    let mut l = BigInt::one();
    for c in f.coeffs() {
        l = l.lcm(c.as_rational().unwrap().denom());
    }
    let ints: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| (c.as_rational().unwrap() * BigRational::from_integer(l.clone())).to_integer())
        .collect();
    let mut out = Vec::new();
    let lowest = ints.iter().position(|c| !c.is_zero()).unwrap();
    if lowest > 0 {
        out.push(ring.zero());
    }
    let ints = &ints[lowest..];
    if ints.len() == 1 {
        return Ok(out);
    }
    let a0 = &ints[0];
    let an = ints.last().unwrap();
    let eval = |num: &BigInt, den: &BigInt| -> bool {
        // homogeneous evaluation sum c_i num^i den^(n-i)
        let n = ints.len() - 1;
        let mut acc = BigInt::zero();
        for (i, c) in ints.iter().enumerate() {
            acc += c * num.pow(i as u32) * den.pow((n - i) as u32);
        }
        acc.is_zero()
    };
    let mut found = Vec::new();
    for d in divisors(a0) {
        for e in divisors(an) {
            if !d.gcd(&e).is_one() {
                continue;
            }
            for num in [d.clone(), -d.clone()] {
                if eval(&num, &e) {
                    found.push(BigRational::new(num, e.clone()));
                }
            }
        }
    }
    found.sort();
    found.dedup();
    out.extend(found.into_iter().map(|r| ring.from_rational(&r).unwrap()));
    Ok(out)
}

/// Square root in a field: `Some(w)` with `w^2 = a` when `a` is a square.
/// The returned root is the sign-canonical one of `{w, -w}`.
pub fn is_square(a: &RingElem) -> Result<Option<RingElem>> {
    let ring = a.ring();
    if !ring.is_field() {
        return Err(Error::Unsupported(format!("square roots in {ring}")));
    }
    let w = if a.is_zero() {
        Some(a.clone())
    } else {
        match a.val() {
            Val::Q(q) => rational_sqrt(q).map(|r| ring.from_rational(&r).unwrap()),
            Val::Z(_) | Val::Ext(_) => tonelli_shanks(a),
            Val::Frac(n, d) => {
                // n/d = (n d)/d^2
                poly_sqrt(&(n * d))?.map(|s| RingElem::fraction(ring, s, d.clone()).unwrap())
            }
        }
    };
    Ok(w.map(|w| if w.is_sign_canonical() { w } else { -w }))
}

fn tonelli_shanks(a: &RingElem) -> Option<RingElem> {
    let ring = a.ring();
    let q = ring.order().unwrap();
    let qm1 = &q - 1u32;
    if !a.pow_big(&(&qm1 / 2u32)).is_one() {
        return None;
    }
    let s = qm1.trailing_zeros().unwrap();
    let m = &qm1 >> s;
    // least non-residue by index
    let mut i = BigUint::from(2u32);
    let z = loop {
        let z = ring.element_from_index(&i).unwrap();
        if !z.is_zero() && !z.pow_big(&(&qm1 / 2u32)).is_one() {
            break z;
        }
        i += 1u32;
    };
    let mut c = z.pow_big(&m);
    let mut x = a.pow_big(&((&m + 1u32) / 2u32));
    let mut t = a.pow_big(&m);
    let mut r = s;
    while !t.is_one() {
        let mut i = 0u64;
        let mut tt = t.clone();
        while !tt.is_one() {
            tt = tt.square();
            i += 1;
        }
        let mut b = c.clone();
        for _ in 0..(r - i - 1) {
            b = b.square();
        }
        x = &x * &b;
        c = b.square();
        t = &t * &c;
        r = i;
    }
    debug_assert_eq!(x.square(), *a);
    Some(x)
}

/// Square root of a polynomial over a field of odd characteristic.
pub fn poly_sqrt(f: &Poly) -> Result<Option<Poly>> {
    let ring = f.ring();
    let Some(deg) = f.degree() else {
        return Ok(Some(f.clone()));
    };
    if deg % 2 == 1 {
        return Ok(None);
    }
    let Some(top) = is_square(f.lc().unwrap())? else {
        return Ok(None);
    };
    let m = deg / 2;
    let mut g = vec![ring.zero(); m + 1];
    g[m] = top.clone();
    let two_top_inv = (&ring.from_i64(2) * &top).inv()?;
    // coefficient of t^(m+k) in g^2 is 2 g_m g_k + sum_{i,l > k, i+l = m+k} g_i g_l
    for k in (0..m).rev() {
        let mut acc = f.coeff(m + k);
        for i in (k + 1)..=m {
            let l = m + k - i;
            if l > k && l <= m {
                acc = &acc - &(&g[i] * &g[l]);
            }
        }
        g[k] = &acc * &two_top_inv;
    }
    let g = Poly::new(ring, g);
    if &(&g * &g) == f {
        Ok(Some(g))
    } else {
        Ok(None)
    }
}

impl Ring {
    pub(crate) fn as_rationals(&self) -> bool {
        matches!(self.descriptor(), super::ring::RingDescriptor::Rationals)
    }
}

#[allow(dead_code)]
#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Ring {
        Ring::parse("fp:5").unwrap()
    }

    #[test]
    fn roots_over_f5() {
        let r = f5();
        let roots = |c: &[i64]| -> Vec<u64> {
            poly_roots(&Poly::from_i64s(&r, c))
                .unwrap()
                .into_iter()
                .map(|(x, _)| x.as_residue().unwrap())
                .collect()
        };
        // 4t^2 + 4 = 4(t^2 + 1): t = 2, 3
        assert_eq!(roots(&[4, 0, 4]), vec![2, 3]);
        assert_eq!(roots(&[-1, 0, 1]), vec![1, 4]);
        assert_eq!(roots(&[3, 0, 4]), Vec::<u64>::new());
    }

    #[test]
    fn exhaustive_check_of_4t2_plus_3() {
        // t^2 = -3/4 = 2 in F_5; 2 is not a square
        let r = f5();
        let f = Poly::from_i64s(&r, &[3, 0, 4]);
        for x in r.elements().unwrap() {
            assert!(!f.eval(&x).unwrap().is_zero());
        }
    }

    #[test]
    fn rational_roots() {
        let q = Ring::rationals();
        assert!(poly_roots(&Poly::from_i64s(&q, &[4, 0, 1])).unwrap().is_empty());
        let roots = poly_roots(&Poly::from_i64s(&q, &[-3, 2, 8])).unwrap(); // (2t-... ) 8t^2+2t-3 = (4t+3)(2t-1)
        let shown: Vec<String> = roots.iter().map(|(r, _)| r.to_string()).collect();
        assert_eq!(shown, vec!["-3/4", "1/2"]);
    }

    #[test]
    fn multiplicities() {
        let r = f5();
        // (t-1)^2 (t-3)
        let f = &Poly::from_i64s(&r, &[1, -2, 1]) * &Poly::from_i64s(&r, &[-3, 1]);
        let roots = poly_roots(&f).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].1, 2);
        assert_eq!(roots[1].1, 1);
    }

    #[test]
    fn squares() {
        let r = f5();
        assert_eq!(is_square(&r.from_i64(4)).unwrap(), Some(r.from_i64(2)));
        assert_eq!(is_square(&r.from_i64(2)).unwrap(), None);
        let q = Ring::rationals();
        let nine_quarters = q.from_i64(9).checked_div(&q.from_i64(4)).unwrap();
        assert_eq!(is_square(&nine_quarters).unwrap().unwrap().to_string(), "3/2");
        assert!(is_square(&Ring::parse("z:15").unwrap().from_i64(4)).is_err());
    }

    #[test]
    fn squares_in_f5_are_exactly_0_1_4() {
        let r = f5();
        let sq: Vec<u64> = r
            .elements()
            .unwrap()
            .into_iter()
            .filter(|x| is_square(x).unwrap().is_some())
            .map(|x| x.as_residue().unwrap())
            .collect();
        assert_eq!(sq, vec![0, 1, 4]);
    }

    #[test]
    fn square_roots_in_extension_and_function_fields() {
        let f = Ring::parse("fpk:7:3").unwrap();
        for x in f.elements().unwrap().into_iter().take(60) {
            let sq = x.square();
            let w = is_square(&sq).unwrap().unwrap();
            assert_eq!(w.square(), sq);
        }
        let k = Ring::parse("ratfunc:fp:7:s").unwrap();
        let s = k.generator().unwrap();
        let a = (&s + &k.one()).checked_div(&(&s - &k.from_i64(3))).unwrap();
        let w = is_square(&a.square()).unwrap().unwrap();
        assert!(w == a || w == -&a);
        assert!(is_square(&s).unwrap().is_none());
    }
}
