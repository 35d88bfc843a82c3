//! Point-level checks over finite fields.

use std::collections::HashSet;

use num_bigint::BigUint;

use crate::ellcurve::CurvePoint;
use crate::error::{Error, Result};
use crate::exactring::{is_square, Poly, Ring, RingElem};
use crate::projline::embedding;

use super::construct::{CoverMap, GluedPair};

/// `y^2 = x^3 + a2 x^2 + a4 x + a6` over some field.
#[derive(Clone, Debug)]
pub struct Weierstrass {
    pub a2: RingElem,
    pub a4: RingElem,
    pub a6: RingElem,
}

impl Weierstrass {
    pub fn from_cubic(c: &Poly) -> Weierstrass {
        Weierstrass { a2: c.coeff(2), a4: c.coeff(1), a6: c.coeff(0) }
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine(x, y) => y.square() == self.rhs(x),
        }
    }

    pub fn rhs(&self, x: &RingElem) -> RingElem {
        &(&(&(&(x + &self.a2) * x) + &self.a4) * x) + &self.a6
    }

    pub fn neg(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => CurvePoint::Affine(x.clone(), -y),
        }
    }

    /// Chord-tangent addition.
    pub fn add(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        let (CurvePoint::Affine(x1, y1), CurvePoint::Affine(x2, y2)) = (p, q) else {
            // O + Q = Q, P + O = P
            return if *p == CurvePoint::Infinity { q.clone() } else { p.clone() };
        };
        let slope = if x1 == x2 {
            // vertical line: Q = -P, which covers doubling a point with y = 0
            if *y1 == -y2 {
                return CurvePoint::Infinity;
            }
            // tangent at P = Q
            let r = x1.ring();
            let num = &(&(&r.from_i64(3) * &x1.square()) + &(&(&r.from_i64(2) * &self.a2) * x1)) + &self.a4;
            num.checked_div(&(&r.from_i64(2) * y1)).unwrap()
        } else {
            (y2 - y1).checked_div(&(x2 - x1)).unwrap()
        };
        let x3 = &(&(&slope.square() - &self.a2) - x1) - x2;
        let y3 = &(&slope * &(x1 - &x3)) - y1;
        CurvePoint::Affine(x3, y3)
    }
}

/// A point of the genus-2 model: affine `(t, y)` or one of the two points
/// at infinity, `v = y / t^3` at `s = 1/t = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ModelPoint {
    Affine(RingElem, RingElem),
    Infinite(RingElem),
}

/// A cover with coefficients moved into a field `L`, in both charts.
struct CoverOver {
    x: (Poly, Poly),
    ymul: (Poly, Poly),
    x_inf: (Poly, Poly),
    ymul_inf: (Poly, Poly),
}

fn frac_over(v: &RingElem, l: &Ring, embed: &dyn Fn(&RingElem) -> RingElem) -> Result<(Poly, Poly)> {
    let f = |c: &RingElem| Ok(embed(c));
    Ok((v.numer().unwrap().map(l, &f)?, v.denom().unwrap().map(l, &f)?))
}

impl CoverOver {
    fn new(c: &CoverMap, kt: &Ring, l: &Ring, embed: &dyn Fn(&RingElem) -> RingElem) -> Result<CoverOver> {
        let s3 = kt.generator().unwrap().pow(3);
        Ok(CoverOver {
            x: frac_over(&c.x, l, embed)?,
            ymul: frac_over(&c.ymul, l, embed)?,
            x_inf: frac_over(&c.x.at_reciprocal(), l, embed)?,
            ymul_inf: frac_over(&c.ymul.at_reciprocal().checked_div(&s3)?, l, embed)?,
        })
    }

    /// Image of a model point; a pole of the x-coordinate maps to the
    /// origin.
    fn apply(&self, p: &ModelPoint) -> Result<CurvePoint> {
        let (x, ymul, t, y) = match p {
            ModelPoint::Affine(t, y) => (&self.x, &self.ymul, t.clone(), y),
            ModelPoint::Infinite(v) => (&self.x_inf, &self.ymul_inf, v.ring().zero(), v),
        };
        let xd = x.1.eval(&t)?;
        if xd.is_zero() {
            return Ok(CurvePoint::Infinity);
        }
        let yd = ymul.1.eval(&t)?;
        if yd.is_zero() {
            return Err(Error::FiberFailure("y-multiplier has a pole where x is finite".into()));
        }
        let xv = x.0.eval(&t)?.checked_div(&xd)?;
        let yv = &ymul.0.eval(&t)?.checked_div(&yd)? * y;
        Ok(CurvePoint::Affine(xv, yv))
    }
}

/// Outcome of a point-level check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCheck {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl PointCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn finite_base(g: &GluedPair) -> Result<(u64, usize)> {
    let k = g.field();
    match (k.is_finite_field(), k.finite_degree()) {
        (true, Some(m)) => Ok((k.characteristic(), m)),
        _ => Err(Error::Unsupported(format!("point enumeration over {k}"))),
    }
}

/// Checks that `f_* f'^*` kills every point of `E'` over the degree-`k`
/// extension of the base field.
///
/// Points `Q'` are enumerated over `M = F_{q^k}`; the fiber
/// `t^2 = (x' - a)/lambda`, `y = y'` lives over `L = F_{q^2k}`, where the
/// two fiber points are pushed through `f` and added on `E`. The fiber over
/// the origin is the pair of points at infinity.
pub fn trace_pushpull(g: &GluedPair, k: usize) -> Result<PointCheck> {
    let (p, m) = finite_base(g)?;
    if k == 0 || m * k > 4 {
        return Err(Error::Unsupported(format!("extension degree {k} over {}", g.field())));
    }
    let big = Ring::extension_field(p, 2 * m * k, None)?;
    let mid = Ring::extension_field(p, m * k, None)?;
    let embed = embedding(g.field(), &big)?;
    let embed_mid = embedding(&mid, &big)?;
    let mid_order: BigUint = mid.order().unwrap();
    let in_mid = |z: &RingElem| z.pow_big(&mid_order) == *z;

    let f_l = CoverOver::new(&g.f, &g.fn_ring, &big, &*embed)?;
    let e_l = Weierstrass::from_cubic(&g.e.cubic().map(&big, &|c| Ok(embed(c)))?);
    let ep_l = Weierstrass::from_cubic(&g.eprime.cubic().map(&big, &|c| Ok(embed(c)))?);
    let a = embed(&g.a);
    let lambda = embed(&g.lambda);
    let lambda_inv = lambda.inv()?;

    let mut points = vec![CurvePoint::Infinity];
    for x in mid.elements().unwrap().iter().map(embed_mid) {
        if let Some(y) = is_square(&ep_l.rhs(&x))? {
            if in_mid(&y) {
                points.push(CurvePoint::Affine(x.clone(), y.clone()));
                if !y.is_zero() {
                    points.push(CurvePoint::Affine(x, -&y));
                }
            }
        }
    }

    let mut out = PointCheck { checked: 0, failures: Vec::new() };
    for q in &points {
        let fiber = match q {
            CurvePoint::Infinity => {
                let v = is_square(&(&lambda * &lambda.square()))?
                    .ok_or_else(|| Error::FiberFailure("lambda^3 has no square root".into()))?;
                [ModelPoint::Infinite(v.clone()), ModelPoint::Infinite(-&v)]
            }
            CurvePoint::Affine(x, y) => {
                let t = is_square(&(&(x - &a) * &lambda_inv))?
                    .ok_or_else(|| Error::FiberFailure(format!("no square root of (x' - a)/lambda at x' = {x}")))?;
                [ModelPoint::Affine(t.clone(), y.clone()), ModelPoint::Affine(-&t, y.clone())]
            }
        };
        let images = [f_l.apply(&fiber[0])?, f_l.apply(&fiber[1])?];
        for im in &images {
            if !e_l.contains(im) {
                out.failures.push(format!("f({fiber:?}) = {im} is not on E"));
            }
        }
        let sum = e_l.add(&images[0], &images[1]);
        if sum != CurvePoint::Infinity {
            out.failures.push(format!("Q' = {q}: f(P1) + f(P2) = {sum}"));
        }
        out.checked += 1;
    }
    Ok(out)
}

/// Whether `1 / (h (x' - a)) = t` in `K(t)`.
pub fn recovers_t(g: &GluedPair) -> Result<bool> {
    let kt = &g.fn_ring;
    let recovered = (g.h() * &(&g.fprime.x - &kt.lift(&g.a)?)).inv()?;
    Ok(recovered == kt.generator().unwrap())
}

/// Rational points of the model over the base field.
pub fn rational_points(g: &GluedPair) -> Result<Vec<ModelPoint>> {
    finite_base(g)?;
    let k = g.field();
    let mut out = Vec::new();
    for t in k.elements().unwrap() {
        if let Some(y) = is_square(&g.sextic.eval(&t)?)? {
            if !y.is_zero() {
                out.push(ModelPoint::Affine(t.clone(), -&y));
            }
            out.push(ModelPoint::Affine(t, y));
        }
    }
    if let Some(v) = is_square(g.sextic.lc().unwrap())? {
        out.push(ModelPoint::Infinite(-&v));
        out.push(ModelPoint::Infinite(v));
    }
    Ok(out)
}

/// Checks that `(f, f')` separates rational points.
///
/// A pair of Weierstrass points `(t, 0)`, `(-t, 0)` has the same image under
/// both maps (they are swapped by both deck involutions), so such pairs are
/// the expected exceptions: they are counted, and any other collision is a
/// failure. The algebraic form of the statement is also checked:
/// `t = 1 / (h (x' - a))`, so `t` is a function of the image coordinates.
pub fn birationality_check(g: &GluedPair) -> Result<BirationalityReport> {
    let kt = &g.fn_ring;
    let algebraic = recovers_t(g)?;

    let embed = |c: &RingElem| c.clone();
    let f = CoverOver::new(&g.f, kt, g.field(), &embed)?;
    let fp = CoverOver::new(&g.fprime, kt, g.field(), &embed)?;
    let pts = rational_points(g)?;
    let mut seen = std::collections::HashMap::new();
    let mut collisions = HashSet::new();
    let mut failures = Vec::new();
    for p in &pts {
        let key = (f.apply(p)?, fp.apply(p)?);
        if let Some(q) = seen.insert(key, p.clone()) {
            let weierstrass_pair = matches!((p, &q), (ModelPoint::Affine(t1, y1), ModelPoint::Affine(t2, y2))
                if y1.is_zero() && y2.is_zero() && *t1 == -t2);
            if weierstrass_pair {
                collisions.insert(format!("{p:?}~{q:?}"));
            } else {
                failures.push(format!("{p:?} and {q:?} have the same image"));
            }
        }
    }
    Ok(BirationalityReport {
        points: pts.len(),
        algebraic,
        weierstrass_pairs: collisions.len(),
        failures,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BirationalityReport {
    pub points: usize,
    /// `t` is recovered from the image coordinates
    pub algebraic: bool,
    /// unseparated pairs of Weierstrass points
    pub weierstrass_pairs: usize,
    pub failures: Vec<String>,
}

impl BirationalityReport {
    pub fn passed(&self) -> bool {
        self.algebraic && self.failures.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glueconstruct::fixtures::example_f5;

    #[test]
    fn group_law_matches_counting() {
        // over F_7 every point has order dividing #E; check n P = O
        let f7 = Ring::parse("fp:7").unwrap();
        let c = Poly::from_roots(&f7, &[f7.from_i64(0), f7.from_i64(1), f7.from_i64(3)]);
        let w = Weierstrass::from_cubic(&c);
        let mut pts = vec![CurvePoint::Infinity];
        for x in f7.elements().unwrap() {
            if let Some(y) = is_square(&w.rhs(&x)).unwrap() {
                pts.push(CurvePoint::Affine(x.clone(), y.clone()));
                if !y.is_zero() {
                    pts.push(CurvePoint::Affine(x, -&y));
                }
            }
        }
        let n = pts.len();
        for p in &pts {
            let mut acc = CurvePoint::Infinity;
            for _ in 0..n {
                acc = w.add(&acc, p);
                assert!(w.contains(&acc));
            }
            assert_eq!(acc, CurvePoint::Infinity);
        }
        // associativity on a sample
        for p in &pts {
            for q in &pts {
                for r in pts.iter().take(4) {
                    assert_eq!(w.add(&w.add(p, q), r), w.add(p, &w.add(q, r)));
                }
            }
        }
    }

    #[test]
    fn trace_over_f25() {
        let g = example_f5();
        let r = trace_pushpull(&g, 2).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        // E'(F_25) has at least the 4 two-torsion points
        assert!(r.checked >= 4);
        assert!(trace_pushpull(&g, 1).unwrap().passed());
    }

    #[test]
    fn birationality_f5() {
        let g = example_f5();
        let r = birationality_check(&g).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert!(r.algebraic);
        // sextic roots t = 1, 4 and t = 2, 3 give two unseparated pairs
        assert_eq!(r.weierstrass_pairs, 2);
        // lambda = 4 is a square so both points at infinity are rational
        assert!(rational_points(&g).unwrap().iter().filter(|p| matches!(p, ModelPoint::Infinite(_))).count() == 2);
    }
}
