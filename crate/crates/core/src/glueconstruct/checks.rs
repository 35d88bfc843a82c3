use std::fmt;

use crate::ellcurve::{CurvePoint, TwoTorsionIso};
use crate::error::{Error, Result};
use crate::exactring::{is_square, poly_roots, Poly, Ring, RingElem};

use super::construct::{Cover, CoverMap, GluedPair, Involution};

/// Characteristic polynomial `det(X - m)` by Berkowitz's division-free
/// recursion; coefficients ascending.
pub fn charpoly(m: &[Vec<RingElem>], ring: &Ring) -> Poly {
    fn vector(m: &[Vec<RingElem>], ring: &Ring) -> Vec<RingElem> {
        // highest degree first
        let n = m.len();
        if n == 0 {
            return vec![ring.one()];
        }
        let a = &m[0][0];
        let row: Vec<RingElem> = m[0][1..].to_vec();
        let sub: Vec<Vec<RingElem>> = m[1..].iter().map(|r| r[1..].to_vec()).collect();
        let mut col: Vec<RingElem> = m[1..].iter().map(|r| r[0].clone()).collect();
        let mut diags = vec![ring.one(), -a];
        for i in 0..n.saturating_sub(1) {
            if i > 0 {
                col = sub
                    .iter()
                    .map(|r| r.iter().zip(&col).fold(ring.zero(), |acc, (x, y)| &acc + &(x * y)))
                    .collect();
            }
            let d = row.iter().zip(&col).fold(ring.zero(), |acc, (x, y)| &acc + &(x * y));
            diags.push(-&d);
        }
        let inner = vector(&sub, ring);
        (0..=n)
            .map(|i| {
                (0..n)
                    .filter(|&j| j <= i)
                    .fold(ring.zero(), |acc, j| &acc + &(&diags[i - j] * &inner[j]))
            })
            .collect()
    }
    let mut v = vector(m, ring);
    v.reverse();
    Poly::new(ring, v)
}

/// Reduces a function-field element with denominator prime to `modulus`
/// to a polynomial mod `modulus`.
fn reduce_mod(x: &RingElem, modulus: &Poly) -> Result<Poly> {
    let (n, d) = (x.numer().unwrap(), x.denom().unwrap());
    (n * &d.inv_mod(modulus)?).rem(modulus)
}

/// The pushforward of the Weierstrass divisor `{y = 0}` along a cover, as
/// multiplicities of x-values on the target; `residual` collects the part
/// of the image not supported on the 2-torsion (1 when there is none).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pushforward {
    pub multiplicities: Vec<(RingElem, usize)>,
    pub residual: Poly,
}

impl Pushforward {
    /// Every 2-torsion x-value appears exactly twice and nothing else does.
    pub fn is_normalized(&self) -> bool {
        self.residual.is_one() && self.multiplicities.len() == 3 && self.multiplicities.iter().all(|(_, m)| *m == 2)
    }
}

impl fmt::Display for Pushforward {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.multiplicities.iter().map(|(x, m)| format!("{x}:{m}")).collect();
        write!(f, "{{{}}}", parts.join(", "))?;
        if !self.residual.is_one() {
            write!(f, " + ({})", self.residual.display("X"))?;
        }
        Ok(())
    }
}

/// Images of the six roots of the sextic: the characteristic polynomial of
/// multiplication by `x(t)` on `K[t]/(sextic)` is `prod (X - x(w))` over
/// the roots `w`, so no splitting field is needed.
pub fn weierstrass_pushforward(g: &GluedPair, which: Cover) -> Result<Pushforward> {
    let k = g.field();
    let s = &g.sextic;
    let xm = reduce_mod(&g.cover(which).x, s)?;
    let n = 6;
    let mut m = vec![vec![k.zero(); n]; n];
    let mut col = xm.clone();
    for j in 0..n {
        for (i, row) in m.iter_mut().enumerate() {
            row[j] = col.coeff(i);
        }
        col = (&col * &Poly::x(k)).rem(s)?;
    }
    let mut chi = charpoly(&m, k);
    let mut multiplicities = Vec::new();
    for x in g.target(which).roots() {
        let lin = Poly::linear(x);
        let mut mult = 0;
        loop {
            let (q, r) = chi.divrem(&lin)?;
            if !r.is_zero() {
                break;
            }
            chi = q;
            mult += 1;
        }
        multiplicities.push((x.clone(), mult));
    }
    Ok(Pushforward { multiplicities, residual: chi })
}

/// Reads off the permutation matching `f(w)` and `f'(w)` over the
/// Weierstrass points `w`: the roots with `x'(w) = e'_j` are cut out by
/// `gcd(sextic, x'(t) - e'_j)`, and `x(t)` must be constant modulo it.
pub fn recover_psi(g: &GluedPair) -> Result<TwoTorsionIso> {
    let xp = g.fprime.x.as_poly().ok_or_else(|| Error::InternalConsistency("x' is not a polynomial".into()))?;
    let mut sigma = [usize::MAX; 3];
    for (j, ej) in g.eprime.roots().iter().enumerate() {
        let q = g.sextic.gcd(&(xp - &Poly::constant(ej.clone())));
        if q.degree() != Some(2) {
            return Err(Error::InternalConsistency(format!(
                "{} Weierstrass points over e'_{} = {ej}",
                q.degree().unwrap_or(0),
                j + 1
            )));
        }
        let xv = reduce_mod(&g.f.x, &q)?;
        let i = match xv.degree() {
            None => g.e.roots().iter().position(|r| r.is_zero()),
            Some(0) => g.e.roots().iter().position(|r| *r == xv.coeff(0)),
            _ => None,
        }
        .ok_or_else(|| {
            Error::InternalConsistency(format!("f does not send the points over e'_{} to one 2-torsion point", j + 1))
        })?;
        if sigma[i] != usize::MAX {
            return Err(Error::InternalConsistency(format!("e_{} is hit twice", i + 1)));
        }
        sigma[i] = j;
    }
    TwoTorsionIso::new(sigma).map_err(|e| Error::InternalConsistency(e.to_string()))
}

/// A closed subscheme of the model supported over one chart: `locus` is a
/// polynomial in the chart coordinate (`t`, or `s = 1/t` at infinity, where
/// only `s = 0` is recorded); `on_y_zero` restricts to points with `y = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartLocus {
    pub locus: Poly,
    pub on_y_zero: bool,
}

impl ChartLocus {
    pub fn degree(&self) -> usize {
        self.locus.degree().unwrap_or(usize::MAX) * if self.on_y_zero { 1 } else { 2 }
    }
}

/// A finite subscheme of the model, split into the affine chart and the
/// two points at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointScheme {
    pub affine: ChartLocus,
    pub at_infinity: ChartLocus,
}

impl PointScheme {
    pub fn degree(&self) -> usize {
        self.affine.degree().saturating_add(self.at_infinity.degree())
    }
}

impl fmt::Display for PointScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (chart, l) in [("t", &self.affine), ("s", &self.at_infinity)] {
            if !l.locus.is_one() {
                let y = if l.on_y_zero { ", y = 0" } else { "" };
                parts.push(format!("{{{} = 0{y}}}", l.locus.display(chart)));
            }
        }
        if parts.is_empty() {
            write!(f, "empty")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// The ramification subscheme of a cover, with rationality of its points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Different {
    pub scheme: PointScheme,
    /// the cover is unramified over the origin of its target
    pub unramified_over_origin: bool,
    /// every geometric point is rational
    pub split: bool,
}

/// Chart data: the sextic in the chart coordinate and the cover in it.
struct Chart {
    sextic: Poly,
    x: RingElem,
    ymul: RingElem,
}

fn charts(g: &GluedPair, cover: &CoverMap) -> (Chart, Chart) {
    let kt = &g.fn_ring;
    let s = kt.generator().unwrap();
    let affine = Chart { sextic: g.sextic.clone(), x: cover.x.clone(), ymul: cover.ymul.clone() };
    // s = 1/t, v = y s^3, so y_E = ymul(1/s) s^-3 v
    let infinity = Chart {
        sextic: g.sextic.reverse(6),
        x: cover.x.at_reciprocal(),
        ymul: cover.ymul.at_reciprocal().checked_div(&s.pow(3)).unwrap(),
    };
    (affine, infinity)
}

fn strip(mut p: Poly, q: &Poly) -> Poly {
    loop {
        let d = p.gcd(q);
        if d.degree().unwrap_or(0) == 0 {
            return p;
        }
        p = p.exact_div(&d);
    }
}

fn only_origin(p: &Poly) -> Poly {
    let k = p.ring();
    if !p.is_zero() && !p.coeff(0).is_zero() {
        Poly::one(k)
    } else {
        Poly::x(k)
    }
}

/// Radical of a polynomial over a perfect field.
fn radical(p: &Poly) -> Poly {
    if p.degree().unwrap_or(0) == 0 {
        return Poly::one(p.ring());
    }
    let d = p.gcd(&p.derivative());
    let r = p.monic().unwrap().exact_div(&d);
    // in characteristic p the derivative may vanish identically on p-th powers
    if d.degree().unwrap_or(0) > 0 && r.degree().unwrap_or(0) == 0 {
        return p.monic().unwrap();
    }
    r
}

/// Fitting ideal of the relative differentials in one chart. On
/// `F = y^2 - S(t)` with the map `(X(t), Y(t) y)` the 2x2 minors of the
/// Jacobian of `(F, X, Y y)` are `X' Y`, `-2 y X'` and
/// `-(S' Y + 2 Y' S)` after `y^2 = S`; their common zeros in `t` away from
/// the poles of the map form the locus.
fn chart_different(c: &Chart, kt: &Ring) -> Result<(Poly, Poly)> {
    let s = RingElem::from_poly(kt, c.sextic.clone())?;
    let xd = c.x.derivative();
    let m1 = &xd * &c.ymul;
    let m3 = &(&s.derivative() * &c.ymul) + &(&kt.from_i64(2) * &(&c.ymul.derivative() * &s));
    let locus = m1.numer().unwrap().gcd(m3.numer().unwrap());
    let poles = c.x.denom().unwrap() * c.ymul.denom().unwrap();
    let locus = if locus.is_zero() { locus } else { strip(locus, &poles) };
    Ok((locus, radical(c.x.denom().unwrap())))
}

/// Geometric points of the model over the roots of `p` in a chart.
fn fiber_points(p: &Poly, sextic: &Poly) -> usize {
    let r = radical(p);
    let d = r.degree().unwrap_or(0);
    2 * d - r.gcd(sextic).degree().unwrap_or(0)
}

fn locus_is_split(locus: &ChartLocus, sextic: &Poly) -> Result<bool> {
    let Some(deg) = locus.locus.degree() else {
        return Ok(false);
    };
    let roots = poly_roots(&locus.locus)?;
    if roots.len() != deg {
        return Ok(false);
    }
    for (r, _) in roots {
        if !locus.on_y_zero && is_square(&sextic.eval(&r)?)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The Kaehler different of `f` or `f'`.
pub fn kahler_different(g: &GluedPair, which: Cover) -> Result<Different> {
    let kt = &g.fn_ring;
    let (aff, inf) = charts(g, g.cover(which));
    let (la, pa) = chart_different(&aff, kt)?;
    let (li, pi) = chart_different(&inf, kt)?;
    let scheme = PointScheme {
        affine: ChartLocus { locus: la.monic().unwrap_or(la), on_y_zero: false },
        at_infinity: ChartLocus { locus: if li.is_zero() { li } else { only_origin(&li) }, on_y_zero: false },
    };
    let over_origin = fiber_points(&pa, &aff.sextic) + fiber_points(&only_origin(&pi), &inf.sextic);
    let split = locus_is_split(&scheme.affine, &aff.sextic)? && locus_is_split(&scheme.at_infinity, &inf.sextic)?;
    Ok(Different { scheme, unramified_over_origin: over_origin == 2, split })
}

/// Fixed-point scheme of a sign involution, chart by chart. In the chart at
/// infinity `s -> (sign t) s` and `v -> (sign y)(sign t) v`.
pub fn fixed_point_scheme(g: &GluedPair, inv: Involution) -> PointScheme {
    let k = g.field();
    let chart = |ts: i8, ys: i8, sextic: &Poly, origin_only: bool| -> ChartLocus {
        let t_eq = if ts < 0 { Poly::x(k) } else { Poly::zero(k) };
        let (locus, on_y_zero) = if ys < 0 { (t_eq.gcd(sextic), true) } else { (t_eq, false) };
        let locus = if locus.is_zero() { locus } else { locus.monic().unwrap() };
        let locus = if origin_only && !locus.is_zero() && !locus.is_one() { only_origin(&locus) } else { locus };
        // the empty scheme carries no y condition
        ChartLocus { on_y_zero: on_y_zero && !locus.is_one(), locus }
    };
    let (ts, ys) = inv.signs();
    PointScheme {
        affine: chart(ts, ys, &g.sextic, false),
        at_infinity: chart(ts, ys * ts, &g.sextic.reverse(6), true),
    }
}

/// `f'` sends the different of `f` to the origin of `E'`, and `f` sends the
/// different of `f'` to the origin of `E`: each locus must lie in the pole
/// set of the other map's x-coordinate.
pub fn ram_image_check(g: &GluedPair) -> Result<bool> {
    for (ramified, other) in [(Cover::F, Cover::FPrime), (Cover::FPrime, Cover::F)] {
        let v = kahler_different(g, ramified)?;
        if v.scheme.degree() != 2 {
            return Ok(false);
        }
        let (aff, inf) = charts(g, g.cover(other));
        for (locus, chart) in [(&v.scheme.affine, &aff), (&v.scheme.at_infinity, &inf)] {
            if locus.locus.is_one() {
                continue;
            }
            // every point of the locus is a pole
            if !chart.x.denom().unwrap().rem(&radical(&locus.locus))?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The branch divisor `f_*(V)`: points `(x0, +-w)` of the target with
/// `w^2 = w2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discriminant {
    pub x: RingElem,
    pub w2: RingElem,
    pub split: bool,
    /// rational points when split
    pub points: Vec<CurvePoint>,
}

impl fmt::Display for Discriminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x = {}, w^2 = {}", self.x, self.w2)?;
        if self.split {
            let pts: Vec<String> = self.points.iter().map(|p| p.to_string()).collect();
            write!(f, ", split: {{{}}}", pts.join(", "))
        } else {
            write!(f, ", not split")
        }
    }
}

/// Pushes the different forward. Both covers ramify over a single
/// x-value, found by evaluating the cover at the rational point of `V`'s
/// locus; `w^2 = Y(t0)^2 S(t0)` must equal the target's cubic there.
pub fn discriminant(g: &GluedPair, which: Cover) -> Result<Discriminant> {
    let v = kahler_different(g, which)?;
    let (aff, inf) = charts(g, g.cover(which));
    let (locus, chart) = if v.scheme.at_infinity.locus.is_one() { (&v.scheme.affine, &aff) } else { (&v.scheme.at_infinity, &inf) };
    if locus.locus.degree() != Some(1) || locus.on_y_zero {
        return Err(Error::Unsupported(format!("different {} is not a single fiber", v.scheme)));
    }
    let t0 = -&locus.locus.monic()?.coeff(0);
    let x = chart.x.eval(&t0)?;
    let ymul = chart.ymul.eval(&t0)?;
    let w2 = &ymul.square() * &chart.sextic.eval(&t0)?;
    if w2 != g.target(which).eval_cubic(&x) {
        return Err(Error::InternalConsistency(format!("branch point ({x}, w^2 = {w2}) is not on the target")));
    }
    let root = is_square(&w2)?;
    let points = root
        .iter()
        .flat_map(|w| [CurvePoint::Affine(x.clone(), w.clone()), CurvePoint::Affine(x.clone(), -w)])
        .collect();
    Ok(Discriminant { x, w2, split: root.is_some(), points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::parse_elem;
    use crate::glueconstruct::fixtures::{example_f5, example_q};

    #[test]
    fn berkowitz_small() {
        let q = Ring::rationals();
        let n = |v: i64| q.from_i64(v);
        // [[2, 1], [1, 3]]: X^2 - 5X + 5
        let m = vec![vec![n(2), n(1)], vec![n(1), n(3)]];
        assert_eq!(charpoly(&m, &q), Poly::from_i64s(&q, &[5, -5, 1]));
        let m3 = vec![vec![n(1), n(2), n(0)], vec![n(0), n(1), n(4)], vec![n(5), n(0), n(1)]];
        // det(X - m3) = (X-1)^3 - 40
        assert_eq!(charpoly(&m3, &q), Poly::from_i64s(&q, &[-41, 3, -3, 1]));
    }

    #[test]
    fn pushforward_examples() {
        let g = example_q();
        let q = g.field().clone();
        let v = |s: &str| parse_elem(&q, s).unwrap();
        let pf = weierstrass_pushforward(&g, Cover::FPrime).unwrap();
        assert!(pf.is_normalized());
        assert_eq!(pf.multiplicities, vec![(v("0"), 2), (v("1"), 2), (v("3"), 2)]);
        let pf = weierstrass_pushforward(&g, Cover::F).unwrap();
        assert!(pf.is_normalized());
        assert_eq!(pf.to_string(), "{0:2, 1:2, -1:2}");
        let g = example_f5();
        assert_eq!(weierstrass_pushforward(&g, Cover::FPrime).unwrap().to_string(), "{0:2, 2:2, 3:2}");
    }

    #[test]
    fn psi_roundtrip_examples() {
        assert_eq!(recover_psi(&example_q()).unwrap(), TwoTorsionIso::identity());
        assert_eq!(recover_psi(&example_f5()).unwrap(), TwoTorsionIso::parse("2,1,3").unwrap());
    }

    #[test]
    fn differents() {
        let g = example_q();
        let k = g.field().clone();
        let vf = kahler_different(&g, Cover::F).unwrap();
        assert!(vf.scheme.affine.locus.is_one());
        assert_eq!(vf.scheme.at_infinity.locus, Poly::x(&k));
        assert_eq!(vf.scheme.degree(), 2);
        assert!(vf.unramified_over_origin);
        assert!(!vf.split);
        let vfp = kahler_different(&g, Cover::FPrime).unwrap();
        assert_eq!(vfp.scheme.affine.locus, Poly::x(&k));
        assert!(vfp.scheme.at_infinity.locus.is_one());
        assert!(!vfp.split);
        assert_eq!(vf.scheme, fixed_point_scheme(&g, Involution::Tau));
        assert_eq!(vfp.scheme, fixed_point_scheme(&g, Involution::TauPrime));
        // F_5: y^2 = P_E'(1) = 2 is not a square
        assert!(!kahler_different(&example_f5(), Cover::FPrime).unwrap().split);
        // lambda = 4 is a square in F_5
        assert!(kahler_different(&example_f5(), Cover::F).unwrap().split);
    }

    #[test]
    fn hyperelliptic_fixed_points_are_weierstrass() {
        let g = example_f5();
        let w = fixed_point_scheme(&g, Involution::Hyperelliptic);
        assert_eq!(w.affine.locus, g.sextic.monic().unwrap());
        assert!(w.at_infinity.locus.is_one());
        assert_eq!(w.degree(), 6);
    }

    #[test]
    fn ram_image() {
        assert!(ram_image_check(&example_q()).unwrap());
        assert!(ram_image_check(&example_f5()).unwrap());
    }

    #[test]
    fn discriminants() {
        let g = example_q();
        let d = discriminant(&g, Cover::F).unwrap();
        assert_eq!((d.x.to_string(), d.w2.to_string(), d.split), ("-1/2".into(), "3/8".into(), false));
        let dp = discriminant(&g, Cover::FPrime).unwrap();
        assert_eq!((dp.x.to_string(), dp.w2.to_string()), ("3/2".into(), "-9/8".into()));
        let g = example_f5();
        let d = discriminant(&g, Cover::F).unwrap();
        assert_eq!(d.to_string(), "x = 3, w^2 = 4, split: {(3,2), (3,3)}");
    }
}
