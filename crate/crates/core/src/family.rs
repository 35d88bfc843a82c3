//! The construction over a rational function field `F_p(s)` and its
//! specializations `s -> s0`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;

use crate::ellcurve::{EllCurve, TwoTorsionIso};
use crate::error::{Error, Result};
use crate::exactring::{canonical_cmp, poly_roots, Poly, Ring, RingElem};
use crate::glueconstruct::{construct, theta_smooth, CoverMap, GluedPair};
use crate::projline::{embedding, MoebiusMap};

/// Largest extension degree searched for bad parameter values.
pub const MAX_BAD_DEGREE: usize = 3;

/// A pair of curves over `F_p(s)` with a constant 2-torsion isomorphism.
#[derive(Clone, Debug)]
pub struct Family {
    pub e: EllCurve,
    pub eprime: EllCurve,
    pub psi: TwoTorsionIso,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BadReason {
    Denominator,
    Collision,
    ThetaDegeneration,
}

impl fmt::Display for BadReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BadReason::Denominator => "denominator",
            BadReason::Collision => "collision",
            BadReason::ThetaDegeneration => "theta-degeneration",
        })
    }
}

/// A bad parameter value, in the field of degree `degree` over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadPoint {
    pub s0: RingElem,
    pub degree: usize,
    pub reasons: BTreeSet<BadReason>,
}

impl BadPoint {
    /// The reason a fiberwise scan would report first: undefined roots,
    /// then colliding roots, then failure of theta-smoothness.
    pub fn primary(&self) -> BadReason {
        *self.reasons.iter().next().unwrap()
    }
}

impl fmt::Display for BadPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r: Vec<String> = self.reasons.iter().map(|r| r.to_string()).collect();
        write!(f, "{}: {}", self.s0, r.join(", "))
    }
}

/// The generic construction and the places where it degenerates.
#[derive(Clone, Debug)]
pub struct FamilyReport {
    pub generic: GluedPair,
    /// `gamma` as a polynomial matrix with coprime entries
    pub gamma_poly: [Poly; 4],
    /// bad values in `F_p`
    pub bad: Vec<BadPoint>,
    /// bad values of degree 2..=MAX_BAD_DEGREE, one per conjugate
    pub bad_extension: Vec<BadPoint>,
    /// per good `s0 in F_p`: the specialized pair and whether specializing
    /// the generic pair gives the same thing
    pub table: Vec<(RingElem, GluedPair, bool)>,
}

impl Family {
    pub fn new(e: EllCurve, eprime: EllCurve, psi: TwoTorsionIso) -> Result<Family> {
        let ring = e.ring();
        if ring != eprime.ring() {
            return Err(Error::DescriptorMismatch(ring.to_string(), eprime.ring().to_string()));
        }
        match ring.base() {
            Some(b) if b.finite_degree() == Some(1) && b.is_finite_field() => {}
            _ => return Err(Error::Unsupported(format!("families over {ring}"))),
        }
        Ok(Family { e, eprime, psi })
    }

    /// Parses root triples over `F_p(var)`.
    pub fn parse(p: u64, var: &str, e: &str, eprime: &str, psi: &str) -> Result<Family> {
        let ring = Ring::rational_functions(&Ring::prime_field(p)?, var)?;
        Family::new(EllCurve::parse(&ring, e)?, EllCurve::parse(&ring, eprime)?, TwoTorsionIso::parse(psi)?)
    }

    pub fn ring(&self) -> &Ring {
        self.e.ring()
    }

    pub fn base(&self) -> &Ring {
        self.ring().base().unwrap()
    }

    pub fn generic(&self) -> Result<GluedPair> {
        if !theta_smooth(&self.e, &self.eprime, &self.psi)? {
            return Err(Error::GloballyBad);
        }
        construct(&self.e, &self.eprime, &self.psi)
    }

    /// The fiber at `s0`, or the reason it is degenerate.
    pub fn fiber(&self, s0: &RingElem) -> std::result::Result<(EllCurve, EllCurve), BadReason> {
        let at = |c: &EllCurve| -> std::result::Result<EllCurve, BadReason> {
            let mut roots = Vec::new();
            for r in c.roots() {
                roots.push(r.eval(s0).map_err(|_| BadReason::Denominator)?);
            }
            EllCurve::new(roots.try_into().unwrap()).map_err(|_| BadReason::Collision)
        };
        // undefined roots on either curve take precedence over collisions
        let (e, ep) = (at(&self.e), at(&self.eprime));
        match (e, ep) {
            (Ok(e), Ok(ep)) => Ok((e, ep)),
            (Err(BadReason::Denominator), _) | (_, Err(BadReason::Denominator)) => Err(BadReason::Denominator),
            (Err(r), _) | (_, Err(r)) => Err(r),
        }
    }

    /// Fiberwise scan over all `s0 in F_p`.
    pub fn brute_force_bad_locus(&self) -> Result<BTreeMap<u64, BadReason>> {
        let mut out = BTreeMap::new();
        for s0 in self.base().elements().unwrap() {
            let key = s0.as_residue().unwrap();
            match self.fiber(&s0) {
                Err(r) => {
                    out.insert(key, r);
                }
                Ok((e, ep)) => {
                    if !theta_smooth(&e, &ep, &self.psi)? {
                        out.insert(key, BadReason::ThetaDegeneration);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn report(&self) -> Result<FamilyReport> {
        let generic = self.generic()?;
        let gamma_poly = primitive_matrix(&generic.gamma)?;
        let (bad, bad_extension) = self.bad_locus(&gamma_poly)?;
        let mut table = Vec::new();
        for s0 in self.base().elements().unwrap() {
            if bad.iter().any(|b| b.s0 == s0) {
                continue;
            }
            let (e, ep) = self.fiber(&s0).map_err(|r| Error::InternalConsistency(format!("{s0} is {r} but not in the bad locus")))?;
            let direct = construct(&e, &ep, &self.psi)?;
            let same = specialize(&generic, &gamma_poly, &s0)?.model_key() == direct.model_key();
            table.push((s0, direct, same));
        }
        Ok(FamilyReport { generic, gamma_poly, bad, bad_extension, table })
    }

    fn bad_locus(&self, gamma_poly: &[Poly; 4]) -> Result<(Vec<BadPoint>, Vec<BadPoint>)> {
        let base = self.base().clone();
        let mut sources: Vec<(Poly, BadReason)> = Vec::new();
        for c in [&self.e, &self.eprime] {
            let r = c.roots();
            for x in r {
                sources.push((x.denom().unwrap().clone(), BadReason::Denominator));
            }
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                sources.push(((&r[i] - &r[j]).numer().unwrap().clone(), BadReason::Collision));
            }
        }
        let c = &gamma_poly[2];
        if c.is_zero() {
            return Err(Error::GloballyBad);
        }
        sources.push((c.clone(), BadReason::ThetaDegeneration));

        let p = base.characteristic();
        let mut bad = Vec::new();
        let mut ext = Vec::new();
        for k in 1..=MAX_BAD_DEGREE {
            let field = if k == 1 { base.clone() } else { Ring::extension_field(p, k, None)? };
            let embed = embedding(&base, &field)?;
            let mut found: Vec<BadPoint> = Vec::new();
            for (poly, reason) in &sources {
                if poly.degree().unwrap_or(0) == 0 {
                    continue;
                }
                let poly = poly.map(&field, &|x| Ok(embed(x)))?;
                for (r, _) in poly_roots(&poly)? {
                    if k > 1 && !is_new_at_degree(&r, k) {
                        continue;
                    }
                    match found.iter_mut().find(|b| b.s0 == r) {
                        Some(b) => {
                            b.reasons.insert(*reason);
                        }
                        None => found.push(BadPoint { s0: r, degree: k, reasons: [*reason].into() }),
                    }
                }
            }
            // theta-degeneration only counts where the fibers are curves
            for b in &mut found {
                if b.reasons.len() > 1 {
                    b.reasons.remove(&BadReason::ThetaDegeneration);
                }
            }
            found.sort_by(|a, b| canonical_cmp(&a.s0, &b.s0));
            if k == 1 {
                bad = found;
            } else {
                ext.extend(found);
            }
        }
        Ok((bad, ext))
    }
}

/// Elements of `F_{p^k}` that lie in no proper subfield.
fn is_new_at_degree(r: &RingElem, k: usize) -> bool {
    let p = BigInt::from(r.ring().characteristic());
    (1..k).filter(|d| k.is_multiple_of(*d)).all(|d| {
        let q = p.pow(d as u32).to_biguint().unwrap();
        r.pow_big(&q) != *r
    })
}

/// Clears denominators of a matrix over `F_p(s)` and removes the common
/// polynomial factor.
pub fn primitive_matrix(g: &MoebiusMap) -> Result<[Poly; 4]> {
    let entries = g.entries();
    let base = g.ring().base().ok_or_else(|| Error::Unsupported(format!("{} is not a function field", g.ring())))?;
    let mut l = Poly::one(base);
    for x in entries {
        let d = x.denom().unwrap();
        l = &l.exact_div(&l.gcd(d)) * d;
    }
    let polys: Vec<Poly> = entries
        .iter()
        .map(|x| x.numer().unwrap() * &l.exact_div(x.denom().unwrap()))
        .collect();
    let g0 = polys.iter().fold(Poly::zero(base), |acc, p| acc.gcd(p));
    let out: Vec<Poly> = polys.iter().map(|p| p.exact_div(&g0)).collect();
    Ok(out.try_into().unwrap())
}

/// Evaluates every stored datum of a pair over `F_p(s)` at `s0`.
pub fn specialize(g: &GluedPair, gamma_poly: &[Poly; 4], s0: &RingElem) -> Result<GluedPair> {
    let base = s0.ring().clone();
    let ev = |x: &RingElem| x.eval(s0);
    let e = g.e.map(&ev)?;
    let eprime = g.eprime.map(&ev)?;
    let m = gamma_poly.iter().map(|p| p.eval(s0)).collect::<Result<Vec<_>>>()?;
    let [ga, gb, gc, gd]: [RingElem; 4] = m.try_into().unwrap();
    let gamma = MoebiusMap::new(ga, gb, gc, gd)?;
    let kt = Ring::rational_functions(&base, g.fn_ring.var().unwrap())?;
    let cover = |c: &CoverMap| -> Result<CoverMap> {
        Ok(CoverMap { x: c.x.map_coeffs(&kt, &ev)?, ymul: c.ymul.map_coeffs(&kt, &ev)? })
    };
    Ok(GluedPair {
        e,
        eprime,
        psi: g.psi,
        gamma,
        a: ev(&g.a)?,
        b: ev(&g.b)?,
        lambda: ev(&g.lambda)?,
        sextic: g.sextic.map(&base, &ev)?,
        f: cover(&g.f)?,
        fprime: cover(&g.fprime)?,
        fn_ring: kt,
    })
}

/// Construct-then-specialize equals specialize-then-construct at `s0`.
pub fn specialize_commutes(fam: &Family, s0: &RingElem) -> Result<bool> {
    let (e, ep) = fam
        .fiber(s0)
        .map_err(|r| Error::BadParameter { s0: s0.to_string(), reasons: r.to_string() })?;
    if !theta_smooth(&e, &ep, &fam.psi)? {
        return Err(Error::BadParameter { s0: s0.to_string(), reasons: BadReason::ThetaDegeneration.to_string() });
    }
    let generic = fam.generic()?;
    let gp = primitive_matrix(&generic.gamma)?;
    let direct = construct(&e, &ep, &fam.psi)?;
    let via = specialize(&generic, &gp, s0)?;
    Ok(via.model_key() == direct.model_key() && via.e == direct.e && via.eprime == direct.eprime)
}
