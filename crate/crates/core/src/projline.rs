//! Points of the projective line and Moebius transformations over fields and
//! odd residue rings `Z/n`.
//!
//! Over `Z/n` a class modulo units is normalized one prime-power component
//! at a time (`Z/n = prod Z/p^e`): in each component the first entry that is
//! a unit there is scaled to 1, and the scaling factors are glued with the
//! Chinese remainder theorem. Over a field this is the usual rule.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactring::{
    canonical_cmp, factor_u64, gcd_u64, inv_mod_u64, parse_elem, poly_roots, split_list, Poly, Ring,
    RingDescriptor, RingElem,
};

fn prime_powers(ring: &Ring) -> Option<Vec<(u64, u64)>> {
    match ring.descriptor() {
        RingDescriptor::ResidueRing { factors, .. } => {
            Some(factors.iter().map(|&(p, e)| (p, p.pow(e))).collect())
        }
        _ => None,
    }
}

fn crt(residues: &[(u64, u64)]) -> u64 {
    // residues: (value, modulus), moduli pairwise coprime
    let n: u64 = residues.iter().map(|r| r.1).product();
    let mut acc: u128 = 0;
    for &(r, m) in residues {
        let rest = n / m;
        let inv = inv_mod_u64(rest % m, m).unwrap();
        acc = (acc + r as u128 * rest as u128 % n as u128 * inv as u128) % n as u128;
    }
    acc as u64
}

/// A unit `s` such that in `s * entries` the first entry that is a unit
/// (per prime-power component, for residue rings) equals 1. Fails when some
/// component has no unit entry, i.e. the entries do not generate the unit
/// ideal.
fn normalizing_unit(ring: &Ring, entries: &[RingElem]) -> Option<RingElem> {
    match prime_powers(ring) {
        None => entries.iter().find(|e| !e.is_zero()).map(|e| e.inv().unwrap()),
        Some(comps) => {
            let mut parts = Vec::with_capacity(comps.len());
            for (p, q) in comps {
                let first = entries
                    .iter()
                    .map(|e| e.as_residue().unwrap() % q)
                    .find(|v| v % p != 0)?;
                parts.push((inv_mod_u64(first, q).unwrap(), q));
            }
            Some(ring.from_i64(crt(&parts) as i64))
        }
    }
}

/// The primes `p` (or `None` over a field) modulo which `d` vanishes.
fn vanishing_primes(d: &RingElem) -> Vec<Option<u64>> {
    match d.ring().descriptor() {
        RingDescriptor::ResidueRing { factors, .. } => factors
            .iter()
            .filter(|(p, _)| d.as_residue().unwrap().is_multiple_of(*p))
            .map(|(p, _)| Some(*p))
            .collect(),
        _ if d.is_zero() => vec![None],
        _ => Vec::new(),
    }
}

/// A point `[u : v]` of the projective line, stored in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    u: RingElem,
    v: RingElem,
}

impl ProjPoint {
    pub fn new(u: RingElem, v: RingElem) -> Result<ProjPoint> {
        if u.ring() != v.ring() {
            return Err(Error::DescriptorMismatch(u.ring().to_string(), v.ring().to_string()));
        }
        let ring = u.ring().clone();
        let s = normalizing_unit(&ring, &[v.clone(), u.clone()])
            .ok_or_else(|| Error::InvalidPoint(format!("[{u} : {v}] does not generate the unit ideal")))?;
        Ok(ProjPoint { u: &u * &s, v: &v * &s })
    }

    /// The affine point `[x : 1]`.
    pub fn affine(x: RingElem) -> ProjPoint {
        let one = x.ring().one();
        ProjPoint { u: x, v: one }
    }

    /// `[1 : 0]`.
    pub fn infinity(ring: &Ring) -> ProjPoint {
        ProjPoint { u: ring.one(), v: ring.zero() }
    }

    pub fn ring(&self) -> &Ring {
        self.u.ring()
    }

    pub fn coords(&self) -> (&RingElem, &RingElem) {
        (&self.u, &self.v)
    }

    pub fn is_infinity(&self) -> bool {
        self.v.is_zero()
    }

    /// `u/v` when `v` is a unit.
    pub fn to_affine(&self) -> Option<RingElem> {
        self.v.is_one().then(|| self.u.clone())
    }

    /// Parses `inf`, an element, or `[u:v]`-style `u:v`.
    pub fn parse(ring: &Ring, s: &str) -> Result<ProjPoint> {
        let s = s.trim();
        if s == "inf" || s == "∞" {
            return Ok(ProjPoint::infinity(ring));
        }
        if let Some((u, v)) = s.split_once(':') {
            return ProjPoint::new(parse_elem(ring, u)?, parse_elem(ring, v)?);
        }
        Ok(ProjPoint::affine(parse_elem(ring, s)?))
    }

    /// `u1 v2 - u2 v1`; two points are distinct modulo every prime exactly
    /// when this is a unit.
    pub fn cross(&self, other: &ProjPoint) -> RingElem {
        &(&self.u * &other.v) - &(&other.u * &self.v)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_one() {
            write!(f, "{}", self.u)
        } else if self.v.is_zero() {
            write!(f, "inf")
        } else {
            write!(f, "[{}:{}]", self.u, self.v)
        }
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An invertible 2x2 matrix `[[a, b], [c, d]]` modulo units, acting by
/// `[u : v] -> [a u + b v : c u + d v]`, i.e. `t -> (a t + b)/(c t + d)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MoebiusMap {
    m: [RingElem; 4],
}

impl MoebiusMap {
    pub fn new(a: RingElem, b: RingElem, c: RingElem, d: RingElem) -> Result<MoebiusMap> {
        let ring = a.ring().clone();
        for x in [&b, &c, &d] {
            if x.ring() != &ring {
                return Err(Error::DescriptorMismatch(ring.to_string(), x.ring().to_string()));
            }
        }
        let det = &(&a * &d) - &(&b * &c);
        if !det.is_unit() {
            return Err(Error::SingularMatrix(det.to_string()));
        }
        Ok(MoebiusMap::canonical([a, b, c, d]))
    }

    fn canonical(m: [RingElem; 4]) -> MoebiusMap {
        let ring = m[0].ring().clone();
        let s = normalizing_unit(&ring, &m).expect("invertible matrix has a unit entry locally");
        MoebiusMap { m: m.map(|x| &x * &s) }
    }

    pub fn identity(ring: &Ring) -> MoebiusMap {
        MoebiusMap { m: [ring.one(), ring.zero(), ring.zero(), ring.one()] }
    }

    pub fn ring(&self) -> &Ring {
        self.m[0].ring()
    }

    /// Canonical entries `[a, b, c, d]` in row-major order.
    pub fn entries(&self) -> &[RingElem; 4] {
        &self.m
    }

    pub fn det(&self) -> RingElem {
        &(&self.m[0] * &self.m[3]) - &(&self.m[1] * &self.m[2])
    }

    pub fn is_identity(&self) -> bool {
        *self == MoebiusMap::identity(self.ring())
    }

    pub fn apply(&self, x: &ProjPoint) -> Result<ProjPoint> {
        if x.ring() != self.ring() {
            return Err(Error::DescriptorMismatch(x.ring().to_string(), self.ring().to_string()));
        }
        let [a, b, c, d] = &self.m;
        let u = &(a * &x.u) + &(b * &x.v);
        let v = &(c * &x.u) + &(d * &x.v);
        ProjPoint::new(u, v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MoebiusMap) -> MoebiusMap {
        let [a, b, c, d] = &self.m;
        let [e, f, g, h] = &other.m;
        MoebiusMap::canonical([
            &(a * e) + &(b * g),
            &(a * f) + &(b * h),
            &(c * e) + &(d * g),
            &(c * f) + &(d * h),
        ])
    }

    pub fn inverse(&self) -> MoebiusMap {
        let [a, b, c, d] = &self.m;
        MoebiusMap::canonical([d.clone(), -b, -c, a.clone()])
    }

    /// The unique class sending `src[i]` to `dst[i]` for `i = 1, 2, 3`.
    ///
    /// Each triple is first moved to the standard frame `(inf, 0, 1)`: with
    /// `M` the matrix whose columns are the first two points, `M` is
    /// invertible because its determinant is a unit, and `M^-1` sends the
    /// third point to some `[a : b]` with `a`, `b` units; then
    /// `diag(1/a, 1/b) M^-1` is the frame map. The result is
    /// `frame(dst)^-1 ∘ frame(src)`.
    pub fn from_triples(src: &[ProjPoint; 3], dst: &[ProjPoint; 3]) -> Result<MoebiusMap> {
        let ring = src[0].ring().clone();
        if !ring.is_field() && !matches!(ring.descriptor(), RingDescriptor::ResidueRing { .. }) {
            return Err(Error::Unsupported(format!("Moebius interpolation over {ring}")));
        }
        for p in src.iter().chain(dst.iter()) {
            if p.ring() != &ring {
                return Err(Error::DescriptorMismatch(ring.to_string(), p.ring().to_string()));
            }
        }
        let fs = frame(src, "source")?;
        let fd = frame(dst, "target")?;
        Ok(fd.inverse().compose(&fs))
    }

    /// Moebius map over the base field matching the roots of `c` to the
    /// roots of `c2`, computed in a common splitting field and descended.
    ///
    /// Roots are ordered by [`canonical_cmp`] in the splitting field;
    /// `matching[i] = j` sends the `i`-th root of `c` to the `j`-th root of
    /// `c2`.
    pub fn from_cubics(c: &Poly, c2: &Poly, matching: [usize; 3]) -> Result<MoebiusMap> {
        CubicMatching::new(c, c2)?.gamma(matching)
    }

    /// Plain-text rational map, e.g. `t -> (3*t)/(2*t + 1)`. Over the
    /// rationals the primitive integer representative is printed.
    pub fn rational_map(&self, var: &str) -> String {
        let m = self.display_entries();
        let ring = self.ring();
        let num = Poly::new(ring, vec![m[1].clone(), m[0].clone()]);
        let den = Poly::new(ring, vec![m[3].clone(), m[2].clone()]);
        if den.is_one() {
            format!("{var} -> {}", num.display(var))
        } else {
            let n = num.display(var);
            let n = if num.term_count() > 1 { format!("({n})") } else { n };
            format!("{var} -> {n}/({})", den.display(var))
        }
    }

    /// Entries used for printing: primitive integers over the rationals with
    /// a positive first nonzero entry, the canonical entries otherwise.
    pub fn display_entries(&self) -> [RingElem; 4] {
        let ring = self.ring();
        let Some(qs) = self.m.iter().map(|x| x.as_rational().cloned()).collect::<Option<Vec<_>>>() else {
            return self.m.clone();
        };
        let l = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let ints: Vec<BigInt> = qs.iter().map(|q| (q * num_rational::BigRational::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let sign = if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) { -1 } else { 1 };
        let out: Vec<RingElem> = ints.iter().map(|x| ring.from_bigint(&(x / &g * sign))).collect();
        [out[0].clone(), out[1].clone(), out[2].clone(), out[3].clone()]
    }
}

fn frame(pts: &[ProjPoint; 3], which: &'static str) -> Result<MoebiusMap> {
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let d = pts[i].cross(&pts[j]);
        if let Some(prime) = vanishing_primes(&d).into_iter().next() {
            return Err(Error::PointsNotDistinct { which, i: i + 1, j: j + 1, prime });
        }
    }
    let (a1, b1) = pts[0].coords();
    let (a2, b2) = pts[1].coords();
    let (a3, b3) = pts[2].coords();
    let det = &(a1 * b2) - &(a2 * b1);
    let dinv = det.inv()?;
    // M^-1 = adj(M)/det
    let mi = [b2 * &dinv, -&(a2 * &dinv), -&(b1 * &dinv), a1 * &dinv];
    let a = &(&mi[0] * a3) + &(&mi[1] * b3);
    let b = &(&mi[2] * a3) + &(&mi[3] * b3);
    let (ai, bi) = (a.inv()?, b.inv()?);
    Ok(MoebiusMap::canonical([
        &mi[0] * &ai,
        &mi[1] * &ai,
        &mi[2] * &bi,
        &mi[3] * &bi,
    ]))
}

impl fmt::Display for MoebiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.m;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

impl fmt::Debug for MoebiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Two squarefree cubics over a finite field or the rationals together with
/// their ordered roots in a common splitting field.
pub struct CubicMatching {
    base: Ring,
    split: Ring,
    /// roots of the first cubic, in the splitting field
    pub roots: [RingElem; 3],
    /// roots of the second cubic, in the splitting field
    pub roots2: [RingElem; 3],
    // splitting-field image -> base element, for descent
    back: Option<HashMap<RingElem, RingElem>>,
}

const MAX_SPLITTING_DEGREE: usize = 6;

impl CubicMatching {
    pub fn new(c: &Poly, c2: &Poly) -> Result<CubicMatching> {
        let base = c.ring().clone();
        if c2.ring() != &base {
            return Err(Error::DescriptorMismatch(base.to_string(), c2.ring().to_string()));
        }
        for f in [c, c2] {
            if f.degree() != Some(3) {
                return Err(Error::InvalidCurve(format!("{f:?} is not a cubic")));
            }
            if !f.is_squarefree() {
                return Err(Error::NotSquarefree(format!("{f:?}")));
            }
        }
        let three = |v: Vec<(RingElem, usize)>| -> Option<[RingElem; 3]> {
            let flat: Vec<RingElem> = v.into_iter().map(|(r, _)| r).collect();
            <[RingElem; 3]>::try_from(flat).ok()
        };
        if base.characteristic() == 0 && base.base().is_none() {
            let r1 = three(poly_roots(c)?).ok_or_else(|| Error::Unsupported("cubic does not split over the rationals".into()))?;
            let r2 = three(poly_roots(c2)?).ok_or_else(|| Error::Unsupported("cubic does not split over the rationals".into()))?;
            return Ok(CubicMatching { base: base.clone(), split: base, roots: r1, roots2: r2, back: None });
        }
        let m = base
            .finite_degree()
            .ok_or_else(|| Error::Unsupported(format!("splitting fields over {base}")))?;
        let p = base.characteristic();
        for j in 1..=MAX_SPLITTING_DEGREE {
            if !MAX_SPLITTING_DEGREE.is_multiple_of(j) {
                continue;
            }
            let split = Ring::extension_field(p, m * j, None)?;
            let embed = embedding(&base, &split)?;
            let lc = |f: &Poly| f.map(&split, &|x| Ok(embed(x)));
            let (r1, r2) = (poly_roots(&lc(c)?)?, poly_roots(&lc(c2)?)?);
            if let (Some(r1), Some(r2)) = (three(r1), three(r2)) {
                let back = base
                    .elements()
                    .ok_or_else(|| Error::Unsupported("base field too large to enumerate".into()))?
                    .into_iter()
                    .map(|x| (embed(&x), x))
                    .collect();
                return Ok(CubicMatching { base, split, roots: r1, roots2: r2, back: Some(back) });
            }
        }
        Err(Error::Unsupported(format!(
            "no common splitting field of degree <= {MAX_SPLITTING_DEGREE}"
        )))
    }

    pub fn splitting_field(&self) -> &Ring {
        &self.split
    }

    /// The map over the splitting field realizing `matching`.
    pub fn gamma_split(&self, matching: [usize; 3]) -> Result<MoebiusMap> {
        check_permutation(matching)?;
        let src = self.roots.clone().map(ProjPoint::affine);
        let dst = [0, 1, 2].map(|i| ProjPoint::affine(self.roots2[matching[i]].clone()));
        MoebiusMap::from_triples(&src, &dst)
    }

    /// The map descended to the base field.
    pub fn gamma(&self, matching: [usize; 3]) -> Result<MoebiusMap> {
        let g = self.gamma_split(matching)?;
        let Some(back) = &self.back else {
            return Ok(g);
        };
        let m = g
            .entries()
            .iter()
            .map(|x| {
                back.get(x).cloned().ok_or_else(|| {
                    Error::DescentFailed(format!("entry {x} of {g} is not in {}", self.base))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let [a, b, c, d]: [RingElem; 4] = m.try_into().unwrap();
        MoebiusMap::new(a, b, c, d)
    }

    /// Permutation of root indices induced by `x -> x^q`, `q = |base|`.
    pub fn frobenius_action(&self) -> Option<([usize; 3], [usize; 3])> {
        let q = self.base.order()?;
        let act = |roots: &[RingElem; 3]| -> [usize; 3] {
            [0, 1, 2].map(|i| {
                let img = roots[i].pow_big(&q);
                roots.iter().position(|r| *r == img).unwrap()
            })
        };
        Some((act(&self.roots), act(&self.roots2)))
    }
}

fn check_permutation(m: [usize; 3]) -> Result<()> {
    let mut seen = [false; 3];
    for &j in &m {
        if j > 2 || seen[j] {
            return Err(Error::InvalidPermutation(format!("{m:?}")));
        }
        seen[j] = true;
    }
    Ok(())
}

pub type Embedding = Box<dyn Fn(&RingElem) -> RingElem + Send + Sync>;

/// Field embedding `base -> target` between finite fields of the same
/// characteristic: the identity on the prime field, and for an extension
/// base the generator goes to the least root (by [`canonical_cmp`]) of the
/// base modulus in `target`.
pub fn embedding(base: &Ring, target: &Ring) -> Result<Embedding> {
    if base.characteristic() != target.characteristic() || !base.is_finite_field() || !target.is_finite_field() {
        return Err(Error::Unsupported(format!("embedding {base} into {target}")));
    }
    let t = target.clone();
    match base.descriptor() {
        RingDescriptor::PrimeField { .. } => Ok(Box::new(move |x: &RingElem| {
            t.from_i64(x.as_residue().expect("prime field element") as i64)
        })),
        RingDescriptor::ExtensionField { modulus, .. } => {
            let (m, k) = (base.finite_degree().unwrap(), target.finite_degree().unwrap());
            if k % m != 0 {
                return Err(Error::Unsupported(format!("{base} does not embed in {target}")));
            }
            let f = Poly::new(target, modulus.iter().map(|&c| target.from_i64(c as i64)).collect());
            let mut roots: Vec<RingElem> = poly_roots(&f)?.into_iter().map(|(r, _)| r).collect();
            roots.sort_by(canonical_cmp);
            let theta = roots.into_iter().next().ok_or_else(|| Error::Unsupported("no embedding".into()))?;
            Ok(Box::new(move |x: &RingElem| {
                let coeffs = x.ext_coeffs().expect("extension field element");
                coeffs
                    .iter()
                    .rev()
                    .fold(t.zero(), |acc, &c| &(&acc * &theta) + &t.from_i64(c as i64))
            }))
        }
        _ => unreachable!(),
    }
}

/// Parses a comma-separated triple of projective points.
pub fn parse_triple(ring: &Ring, s: &str) -> Result<[ProjPoint; 3]> {
    let parts = split_list(s);
    if parts.len() != 3 {
        return Err(Error::Parse(format!("expected three points, got `{s}`")));
    }
    let pts = parts.iter().map(|p| ProjPoint::parse(ring, p)).collect::<Result<Vec<_>>>()?;
    Ok(pts.try_into().unwrap())
}

/// Number of units of `Z/n` or of a finite field, for enumeration tests.
pub fn unit_count(ring: &Ring) -> Option<BigUint> {
    match ring.descriptor() {
        RingDescriptor::ResidueRing { n, .. } => {
            Some(BigUint::from((1..*n).filter(|&x| gcd_u64(x, *n) == 1).count()))
        }
        _ => ring.order().map(|q| q - 1u32),
    }
}

#[allow(dead_code)]
fn prime_factors(n: u64) -> Vec<u64> {
    factor_u64(n).into_iter().map(|(p, _)| p).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::parse_elem;

    fn pts(ring: &Ring, s: &str) -> [ProjPoint; 3] {
        parse_triple(ring, s).unwrap()
    }

    #[test]
    fn identity_over_z15() {
        let r = Ring::parse("z:15").unwrap();
        let g = MoebiusMap::from_triples(&pts(&r, "0,1,2"), &pts(&r, "0,1,2")).unwrap();
        assert!(g.is_identity());
    }

    #[test]
    fn f5_example() {
        let r = Ring::parse("fp:5").unwrap();
        let g = MoebiusMap::from_triples(&pts(&r, "0,1,4"), &pts(&r, "2,0,3")).unwrap();
        // (3t+2)/(3t+1), canonical: (t+4)/(t+2)
        let expected = MoebiusMap::new(r.from_i64(3), r.from_i64(2), r.from_i64(3), r.from_i64(1)).unwrap();
        assert_eq!(g, expected);
        assert_eq!(g.to_string(), "[[1, 4], [1, 2]]");
        assert_eq!(g.apply(&ProjPoint::infinity(&r)).unwrap(), ProjPoint::affine(r.one()));
    }

    #[test]
    fn z15_rejects_points_equal_mod_5() {
        let r = Ring::parse("z:15").unwrap();
        let err = MoebiusMap::from_triples(&pts(&r, "0,5,1"), &pts(&r, "0,1,2")).unwrap_err();
        assert_eq!(err, Error::PointsNotDistinct { which: "source", i: 1, j: 2, prime: Some(5) });
    }

    #[test]
    fn rational_example_and_inverse() {
        let q = Ring::rationals();
        let g = MoebiusMap::from_triples(&pts(&q, "0,1,-1"), &pts(&q, "0,1,3")).unwrap();
        assert_eq!(g.rational_map("t"), "t -> 3*t/(2*t + 1)");
        let at_inf = g.apply(&ProjPoint::infinity(&q)).unwrap();
        assert_eq!(at_inf.to_affine().unwrap(), parse_elem(&q, "3/2").unwrap());
        let gi = g.inverse();
        assert_eq!(gi.rational_map("t"), "t -> t/(-2*t + 3)");
        assert!(g.compose(&gi).is_identity());
        assert!(MoebiusMap::identity(&q).inverse().is_identity());
    }

    #[test]
    fn residue_points_need_unimodular_coordinates() {
        let r = Ring::parse("z:15").unwrap();
        assert!(ProjPoint::new(r.from_i64(3), r.from_i64(6)).is_err());
        // [3 : 5] is fine: mod 3 it is [0:2], mod 5 it is [3:0]
        let p = ProjPoint::new(r.from_i64(3), r.from_i64(5)).unwrap();
        assert_eq!(p, ProjPoint::new(r.from_i64(6), r.from_i64(10)).unwrap());
    }

    #[test]
    fn unit_entry_free_matrix_over_z15() {
        // no entry is a unit, but the determinant 9 - 25 = -16 is
        let r = Ring::parse("z:15").unwrap();
        let g = MoebiusMap::new(r.from_i64(3), r.from_i64(5), r.from_i64(5), r.from_i64(3)).unwrap();
        assert!(g.compose(&g.inverse()).is_identity());
    }

    #[test]
    fn cubic_examples() {
        let f5 = Ring::parse("fp:5").unwrap();
        let c = Poly::from_roots(&f5, &[f5.from_i64(0), f5.from_i64(1), f5.from_i64(4)]);
        let id = MoebiusMap::from_cubics(&Poly::from_i64s(&f5, &[0, -1, 0, 1]), &Poly::from_i64s(&f5, &[0, -1, 0, 1]), [0, 1, 2]).unwrap();
        assert!(id.is_identity());
        let c2 = Poly::from_roots(&f5, &[f5.from_i64(0), f5.from_i64(2), f5.from_i64(3)]);
        // roots sorted: (0,1,4) and (0,2,3); 0->2, 1->0, 4->3
        let g = MoebiusMap::from_cubics(&c, &c2, [1, 0, 2]).unwrap();
        let expected = MoebiusMap::new(f5.from_i64(3), f5.from_i64(2), f5.from_i64(3), f5.from_i64(1)).unwrap();
        assert_eq!(g, expected);
    }

    #[test]
    fn irreducible_cubic_descent() {
        // x^3 - 2 is irreducible over F_7 and splits over F_{7^3}; its roots
        // are r, 2r, 4r, and Frobenius permutes them cyclically.
        let f7 = Ring::parse("fp:7").unwrap();
        let c = Poly::from_i64s(&f7, &[-2, 0, 0, 1]);
        let cm = CubicMatching::new(&c, &c).unwrap();
        assert_eq!(cm.splitting_field().finite_degree(), Some(3));
        assert!(cm.gamma([0, 1, 2]).unwrap().is_identity());
        // a transposition does not commute with the 3-cycle
        assert!(matches!(cm.gamma([1, 0, 2]), Err(Error::DescentFailed(_))));
        // multiplication by 2 permutes the roots equivariantly
        let two = f7.from_i64(2);
        let m = [0, 1, 2].map(|i| {
            let img = &cm.roots[i] * &embedding(&f7, cm.splitting_field()).unwrap()(&two);
            cm.roots2.iter().position(|r| *r == img).unwrap()
        });
        let g = cm.gamma(m).unwrap();
        assert_eq!(g, MoebiusMap::new(two.clone(), f7.zero(), f7.zero(), f7.one()).unwrap());
    }

    fn all_classes(r: &Ring, n: i64) -> Vec<MoebiusMap> {
        let mut out = std::collections::HashSet::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        if let Ok(g) = MoebiusMap::new(r.from_i64(a), r.from_i64(b), r.from_i64(c), r.from_i64(d)) {
                            out.insert(g);
                        }
                    }
                }
            }
        }
        out.into_iter().collect()
    }

    fn all_points(r: &Ring, n: i64) -> Vec<ProjPoint> {
        let mut out = std::collections::HashSet::new();
        for u in 0..n {
            for v in 0..n {
                if let Ok(p) = ProjPoint::new(r.from_i64(u), r.from_i64(v)) {
                    out.insert(p);
                }
            }
        }
        let mut v: Vec<_> = out.into_iter().collect();
        v.sort_by_key(|p| p.to_string());
        v
    }

    #[test]
    fn brute_force_pgl2_f5() {
        let r = Ring::parse("fp:5").unwrap();
        let group = all_classes(&r, 5);
        assert_eq!(group.len(), 120);
        let points = all_points(&r, 5);
        assert_eq!(points.len(), 6);
        let src = [points[0].clone(), points[2].clone(), points[5].clone()];
        for dst in [[1, 3, 4], [5, 0, 2], [4, 1, 0]] {
            let dst = dst.map(|i| points[i].clone());
            let hits: Vec<_> = group
                .iter()
                .filter(|g| (0..3).all(|i| g.apply(&src[i]).unwrap() == dst[i]))
                .collect();
            assert_eq!(hits.len(), 1);
            assert_eq!(*hits[0], MoebiusMap::from_triples(&src, &dst).unwrap());
        }
    }

    #[test]
    fn brute_force_pgl2_z15() {
        let r = Ring::parse("z:15").unwrap();
        let group = all_classes(&r, 15);
        // PGL2(F_3) x PGL2(F_5)
        assert_eq!(group.len(), 24 * 120);
        let points = all_points(&r, 15);
        assert_eq!(points.len(), 4 * 6);
        let src = pts(&r, "0,1,2");
        let dst = pts(&r, "7,inf,3");
        let hits: Vec<_> = group
            .iter()
            .filter(|g| (0..3).all(|i| g.apply(&src[i]).unwrap() == dst[i]))
            .collect();
        assert_eq!(hits.len(), 1);
        assert_eq!(*hits[0], MoebiusMap::from_triples(&src, &dst).unwrap());
    }
}
