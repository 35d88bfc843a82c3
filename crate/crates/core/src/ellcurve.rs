//! Elliptic curves `y^2 = (x - e1)(x - e2)(x - e3)` with split 2-torsion,
//! and isomorphisms of their 2-torsion groups.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactring::{parse_elem_list, Poly, Ring, RingElem};

/// An elliptic curve in factored Weierstrass form. The roots are kept in
/// the order given; that order is what a [`TwoTorsionIso`] refers to.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct EllCurve {
    e: [RingElem; 3],
}

impl EllCurve {
    pub fn new(e: [RingElem; 3]) -> Result<EllCurve> {
        let ring = e[0].ring().clone();
        if !ring.is_field() {
            return Err(Error::Unsupported(format!("curves over {ring}")));
        }
        for x in &e[1..] {
            if x.ring() != &ring {
                return Err(Error::DescriptorMismatch(ring.to_string(), x.ring().to_string()));
            }
        }
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            if e[i] == e[j] {
                return Err(Error::InvalidCurve(format!("e{} = e{} = {}", i + 1, j + 1, e[i])));
            }
        }
        Ok(EllCurve { e })
    }

    /// Parses `a,b,c`.
    pub fn parse(ring: &Ring, s: &str) -> Result<EllCurve> {
        let v = parse_elem_list(ring, s)?;
        let e: [RingElem; 3] = v
            .try_into()
            .map_err(|v: Vec<RingElem>| Error::Parse(format!("expected three roots, got {}", v.len())))?;
        EllCurve::new(e)
    }

    pub fn ring(&self) -> &Ring {
        self.e[0].ring()
    }

    pub fn roots(&self) -> &[RingElem; 3] {
        &self.e
    }

    /// `(x - e1)(x - e2)(x - e3)`.
    pub fn cubic(&self) -> Poly {
        Poly::from_roots(self.ring(), &self.e)
    }

    pub fn eval_cubic(&self, x: &RingElem) -> RingElem {
        self.e.iter().fold(self.ring().one(), |acc, e| &acc * &(x - e))
    }

    /// The origin followed by `(e_i, 0)`.
    pub fn two_torsion(&self) -> [CurvePoint; 4] {
        let z = self.ring().zero();
        [
            CurvePoint::Infinity,
            CurvePoint::Affine(self.e[0].clone(), z.clone()),
            CurvePoint::Affine(self.e[1].clone(), z.clone()),
            CurvePoint::Affine(self.e[2].clone(), z),
        ]
    }

    pub fn j_invariant(&self) -> RingElem {
        let [e1, e2, e3] = &self.e;
        let l = (e3 - e1).checked_div(&(e2 - e1)).expect("distinct roots");
        let one = self.ring().one();
        let num = self.ring().from_i64(256) * (&(&(&l * &l) - &l) + &one).pow(3);
        let den = &(&l * &l) * &(&l - &one).square();
        num.checked_div(&den).expect("distinct roots")
    }

    /// The curve with roots permuted: `out[i] = e[perm[i]]`.
    pub fn relabel(&self, perm: [usize; 3]) -> EllCurve {
        EllCurve { e: perm.map(|i| self.e[i].clone()) }
    }

    /// Base change along a coefficient map.
    pub fn map(&self, f: &dyn Fn(&RingElem) -> Result<RingElem>) -> Result<EllCurve> {
        let e = [f(&self.e[0])?, f(&self.e[1])?, f(&self.e[2])?];
        EllCurve::new(e)
    }
}

impl fmt::Display for EllCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.e;
        write!(f, "({a},{b},{c})")
    }
}

/// A point of a curve in Weierstrass form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum CurvePoint {
    Infinity,
    Affine(RingElem, RingElem),
}

impl CurvePoint {
    pub fn x(&self) -> Option<&RingElem> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine(x, _) => Some(x),
        }
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "O"),
            CurvePoint::Affine(x, y) => write!(f, "({x},{y})"),
        }
    }
}

/// An isomorphism `E[2] -> E'[2]`, recorded as the permutation with
/// `(e_i, 0) -> (e'_sigma(i), 0)`. Indices are 0-based internally and
/// 1-based in text.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct TwoTorsionIso {
    sigma: [usize; 3],
}

impl TwoTorsionIso {
    pub fn new(sigma: [usize; 3]) -> Result<TwoTorsionIso> {
        let mut seen = [false; 3];
        for &j in &sigma {
            if j > 2 || seen[j] {
                return Err(Error::InvalidPermutation(format!("{sigma:?}")));
            }
            seen[j] = true;
        }
        Ok(TwoTorsionIso { sigma })
    }

    pub fn identity() -> TwoTorsionIso {
        TwoTorsionIso { sigma: [0, 1, 2] }
    }

    /// All six permutations, in lexicographic order.
    pub fn all() -> [TwoTorsionIso; 6] {
        [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]].map(|sigma| TwoTorsionIso { sigma })
    }

    /// Parses `i,j,k` (1-based) or the compact form `ijk`.
    pub fn parse(s: &str) -> Result<TwoTorsionIso> {
        let digits: Vec<&str> = if s.contains(',') {
            s.split(',').map(str::trim).collect()
        } else {
            s.trim().split("").filter(|d| !d.is_empty()).collect()
        };
        let v = digits
            .iter()
            .map(|d| d.parse::<usize>().ok().filter(|&i| (1..=3).contains(&i)).map(|i| i - 1))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Parse(format!("bad permutation `{s}`")))?;
        let sigma: [usize; 3] = v.try_into().map_err(|_| Error::Parse(format!("bad permutation `{s}`")))?;
        TwoTorsionIso::new(sigma).map_err(|_| Error::Parse(format!("`{s}` is not a permutation")))
    }

    pub fn sigma(&self) -> [usize; 3] {
        self.sigma
    }

    pub fn apply(&self, i: usize) -> usize {
        self.sigma[i]
    }

    pub fn inverse(&self) -> TwoTorsionIso {
        let mut inv = [0; 3];
        for (i, &j) in self.sigma.iter().enumerate() {
            inv[j] = i;
        }
        TwoTorsionIso { sigma: inv }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &TwoTorsionIso) -> TwoTorsionIso {
        TwoTorsionIso { sigma: other.sigma.map(|i| self.sigma[i]) }
    }

    /// The comma-separated 1-based form accepted by [`TwoTorsionIso::parse`].
    pub fn to_arg(&self) -> String {
        let [a, b, c] = self.sigma.map(|i| i + 1);
        format!("{a},{b},{c}")
    }
}

impl fmt::Display for TwoTorsionIso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.sigma.map(|i| i + 1);
        write!(f, "{a}{b}{c}")
    }
}

/// Looks for an isomorphism `E -> E'` over the algebraic closure restricting
/// to `psi` on 2-torsion. Such maps have the form `x -> u^2 x + r`; `u^2`
/// and `r` are forced by the images of `e1`, `e2`, and the map exists iff
/// `e3` then lands on `e'_sigma(3)`. Returns `(u^2, r)` on success.
pub fn geometric_iso_for_psi(e: &EllCurve, ep: &EllCurve, psi: &TwoTorsionIso) -> Result<Option<(RingElem, RingElem)>> {
    if e.ring() != ep.ring() {
        return Err(Error::DescriptorMismatch(e.ring().to_string(), ep.ring().to_string()));
    }
    let t = |i: usize| &ep.e[psi.apply(i)];
    let u2 = (t(0) - t(1)).checked_div(&(&e.e[0] - &e.e[1]))?;
    let r = t(0) - &(&u2 * &e.e[0]);
    let image = &(&u2 * &e.e[2]) + &r;
    Ok((image == *t(2)).then_some((u2, r)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(ring: &str, e: &str) -> EllCurve {
        EllCurve::parse(&Ring::parse(ring).unwrap(), e).unwrap()
    }

    #[test]
    fn j_invariant_examples() {
        assert_eq!(curve("q", "0,1,-1").j_invariant().to_string(), "1728");
        assert_eq!(curve("q", "0,1,2").j_invariant().to_string(), "1728");
        let c = curve("q", "0,1,5");
        let j = c.j_invariant();
        for psi in TwoTorsionIso::all() {
            assert_eq!(c.relabel(psi.sigma()).j_invariant(), j);
        }
    }

    #[test]
    fn j_invariant_matches_short_weierstrass_formula() {
        // y^2 = x^3 + a2 x^2 + a4 x + a6 -> c4 = 16 (a2^2 - 3 a4), disc, j = c4^3 / disc
        let q = Ring::rationals();
        for e in ["0,1,5", "2,-3,7", "1/2,4,-6"] {
            let c = EllCurve::parse(&q, e).unwrap();
            let f = c.cubic();
            let (a6, a4, a2) = (f.coeff(0), f.coeff(1), f.coeff(2));
            let n = |v: i64| q.from_i64(v);
            let b2 = &n(4) * &a2;
            let b4 = &n(2) * &a4;
            let b6 = &n(4) * &a6;
            let b8 = &(&n(4) * &(&a2 * &a6)) - &(&a4 * &a4);
            let c4 = &(&b2 * &b2) - &(&n(24) * &b4);
            let disc = &(&(&(-&(&(&b2 * &b2) * &b8) - &(&n(8) * &b4.pow(3))) - &(&n(27) * &(&b6 * &b6)))
                + &(&n(9) * &(&(&b2 * &b4) * &b6)));
            assert_eq!(c.j_invariant(), c4.pow(3).checked_div(disc).unwrap());
        }
    }

    #[test]
    fn two_torsion_points() {
        let c = curve("ratfunc:fp:7:s", "0,s,s+1");
        let xs: Vec<String> = c.two_torsion().iter().map(|p| p.x().map_or("inf".into(), |x| x.to_string())).collect();
        assert_eq!(xs, ["inf", "0", "s", "s + 1"]);
    }

    #[test]
    fn geometric_iso_examples() {
        let e = curve("q", "0,1,-1");
        assert_eq!(
            geometric_iso_for_psi(&e, &e, &TwoTorsionIso::identity()).unwrap(),
            Some((e.ring().one(), e.ring().zero()))
        );
        let e = curve("fp:5", "0,1,4");
        let ep = curve("fp:5", "0,2,3");
        let r = e.ring().clone();
        assert_eq!(
            geometric_iso_for_psi(&e, &ep, &TwoTorsionIso::identity()).unwrap(),
            Some((r.from_i64(2), r.zero()))
        );
        let psi = TwoTorsionIso::parse("2,1,3").unwrap();
        assert_eq!(geometric_iso_for_psi(&e, &ep, &psi).unwrap(), None);
    }

    #[test]
    fn rejects_bad_input() {
        let q = Ring::rationals();
        assert!(matches!(EllCurve::parse(&q, "0,1,1"), Err(Error::InvalidCurve(_))));
        assert!(matches!(EllCurve::parse(&q, "0,1"), Err(Error::Parse(_))));
        assert!(TwoTorsionIso::parse("1,1,2").is_err());
        assert!(TwoTorsionIso::parse("1,2,4").is_err());
        assert_eq!(TwoTorsionIso::parse("213").unwrap(), TwoTorsionIso::parse("2,1,3").unwrap());
    }

    #[test]
    fn permutation_algebra() {
        for a in TwoTorsionIso::all() {
            assert_eq!(a.compose(&a.inverse()), TwoTorsionIso::identity());
            for b in TwoTorsionIso::all() {
                let ab = a.compose(&b);
                assert!((0..3).all(|i| ab.apply(i) == a.apply(b.apply(i))));
            }
        }
    }
}
