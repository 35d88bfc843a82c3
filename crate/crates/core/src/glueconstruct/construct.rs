use std::fmt;

use crate::ellcurve::{geometric_iso_for_psi, EllCurve, TwoTorsionIso};
use crate::error::{Error, Result};
use crate::exactring::{is_square, Poly, Ring, RingElem};
use crate::projline::{MoebiusMap, ProjPoint};

/// Name of the coordinate on the genus-2 model.
pub const CURVE_VAR: &str = "t";

/// The Moebius map sending `e_i` to `e'_sigma(i)`.
pub fn gamma_of(e: &EllCurve, ep: &EllCurve, psi: &TwoTorsionIso) -> Result<MoebiusMap> {
    if e.ring() != ep.ring() {
        return Err(Error::DescriptorMismatch(e.ring().to_string(), ep.ring().to_string()));
    }
    let src = e.roots().clone().map(ProjPoint::affine);
    let dst = [0, 1, 2].map(|i| ProjPoint::affine(ep.roots()[psi.apply(i)].clone()));
    MoebiusMap::from_triples(&src, &dst)
}

/// Whether `gamma_of` moves infinity, cross-checked against the absence of
/// a geometric isomorphism restricting to `psi`.
pub fn theta_smooth(e: &EllCurve, ep: &EllCurve, psi: &TwoTorsionIso) -> Result<bool> {
    let gamma = gamma_of(e, ep, psi)?;
    theta_smooth_with(e, ep, psi, &gamma)
}

pub(crate) fn theta_smooth_with(e: &EllCurve, ep: &EllCurve, psi: &TwoTorsionIso, gamma: &MoebiusMap) -> Result<bool> {
    let moves_infinity = !gamma.entries()[2].is_zero();
    let no_iso = geometric_iso_for_psi(e, ep, psi)?.is_none();
    if moves_infinity != no_iso {
        return Err(Error::InternalConsistency(format!(
            "gamma = {gamma} {} infinity but a geometric isomorphism {}",
            if moves_infinity { "moves" } else { "fixes" },
            if no_iso { "does not exist" } else { "exists" }
        )));
    }
    Ok(moves_infinity)
}

/// A map from the genus-2 model to a Weierstrass curve, of the form
/// `(t, y) -> (x(t), ymul(t) * y)` with `x`, `ymul` in `K(t)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoverMap {
    pub x: RingElem,
    pub ymul: RingElem,
}

impl CoverMap {
    /// Precomposition with an involution of the model.
    pub fn after(&self, inv: Involution) -> CoverMap {
        let (ts, ys) = inv.signs();
        let (x, ymul) = if ts < 0 { (self.x.reflect(), self.ymul.reflect()) } else { (self.x.clone(), self.ymul.clone()) };
        CoverMap { x, ymul: if ys < 0 { -&ymul } else { ymul } }
    }

    /// Postcomposition with `[-1]` on the target.
    pub fn negate(&self) -> CoverMap {
        CoverMap { x: self.x.clone(), ymul: -&self.ymul }
    }
}

impl fmt::Display for CoverMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ymul = if self.ymul.is_one() {
            "y".to_string()
        } else if self.ymul.numer().is_some_and(|n| n.term_count() > 1) || self.ymul.denom().is_some_and(|d| !d.is_one()) {
            format!("({})*y", self.ymul)
        } else {
            format!("{}*y", self.ymul)
        };
        write!(f, "(t, y) -> ({}, {ymul})", self.x)
    }
}

/// Involutions of the model that act by signs on `t` and `y`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Involution {
    /// `(t, y) -> (-t, -y)`, the deck involution of `f`
    Tau,
    /// `(t, y) -> (-t, y)`, the deck involution of `f'`
    TauPrime,
    /// `(t, y) -> (t, -y)`
    Hyperelliptic,
    Identity,
}

impl Involution {
    pub fn signs(self) -> (i8, i8) {
        match self {
            Involution::Tau => (-1, -1),
            Involution::TauPrime => (-1, 1),
            Involution::Hyperelliptic => (1, -1),
            Involution::Identity => (1, 1),
        }
    }

    fn from_signs(s: (i8, i8)) -> Involution {
        match s {
            (-1, -1) => Involution::Tau,
            (-1, 1) => Involution::TauPrime,
            (1, -1) => Involution::Hyperelliptic,
            _ => Involution::Identity,
        }
    }

    pub fn compose(self, other: Involution) -> Involution {
        let (a, b) = self.signs();
        let (c, d) = other.signs();
        Involution::from_signs((a * c, b * d))
    }

    pub fn name(self) -> &'static str {
        match self {
            Involution::Tau => "tau",
            Involution::TauPrime => "tau'",
            Involution::Hyperelliptic => "sigma_C",
            Involution::Identity => "id",
        }
    }
}

/// A genus-2 curve `y^2 = sextic(t)` with degree-2 maps to `E` and `E'`.
///
/// Coordinates are chosen so that `f'` is `x' = lambda t^2 + a`, `y' = y`,
/// where `a = gamma(inf)`, `b = gamma^-1(inf)` and `lambda = P_E(b)`; then
/// `f` is `x = gamma^-1(x')` and `y_E = h(t) y`.
#[derive(Clone, Debug)]
pub struct GluedPair {
    pub e: EllCurve,
    pub eprime: EllCurve,
    pub psi: TwoTorsionIso,
    pub gamma: MoebiusMap,
    pub a: RingElem,
    pub b: RingElem,
    pub lambda: RingElem,
    pub sextic: Poly,
    /// `K(t)`
    pub fn_ring: Ring,
    pub f: CoverMap,
    pub fprime: CoverMap,
}

impl GluedPair {
    pub fn field(&self) -> &Ring {
        self.e.ring()
    }

    pub fn h(&self) -> &RingElem {
        &self.f.ymul
    }

    pub fn cover(&self, which: Cover) -> &CoverMap {
        match which {
            Cover::F => &self.f,
            Cover::FPrime => &self.fprime,
        }
    }

    pub fn target(&self, which: Cover) -> &EllCurve {
        match which {
            Cover::F => &self.e,
            Cover::FPrime => &self.eprime,
        }
    }

    pub fn deck(&self, which: Cover) -> Involution {
        match which {
            Cover::F => Involution::Tau,
            Cover::FPrime => Involution::TauPrime,
        }
    }

    /// The parts that define the model and maps; two pairs with equal keys
    /// are the same object regardless of how their inputs were labeled.
    pub fn model_key(&self) -> String {
        format!(
            "{}|{}|{}|{}|{}|{}|{}",
            self.gamma,
            self.a,
            self.b,
            self.lambda,
            self.sextic.display(CURVE_VAR),
            self.f,
            self.fprime
        )
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Cover {
    F,
    FPrime,
}

impl Cover {
    pub fn name(self) -> &'static str {
        match self {
            Cover::F => "f",
            Cover::FPrime => "f'",
        }
    }
}

/// Builds the symmetric pair for a theta-smooth `psi`.
pub fn construct(e: &EllCurve, ep: &EllCurve, psi: &TwoTorsionIso) -> Result<GluedPair> {
    let gamma = gamma_of(e, ep, psi)?;
    if !theta_smooth_with(e, ep, psi, &gamma)? {
        return Err(Error::NotThetaSmooth);
    }
    let k = e.ring().clone();
    let [ga, gb, gc, gd] = gamma.entries().clone();
    let a = ga.checked_div(&gc)?;
    let b = (-&gd).checked_div(&gc)?;
    let lambda = e.eval_cubic(&b);
    for ei in ep.roots() {
        if *ei == a {
            return Err(Error::InternalConsistency(format!("branch point {a} is a root of E'")));
        }
    }
    if lambda.is_zero() {
        return Err(Error::InternalConsistency(format!("gamma^-1(inf) = {b} is a root of E")));
    }

    // x' = lambda t^2 + a
    let xp_poly = Poly::new(&k, vec![a.clone(), k.zero(), lambda.clone()]);
    let sextic = ep.cubic().compose(&xp_poly);
    if sextic.degree() != Some(6) || !sextic.is_squarefree() {
        return Err(Error::InternalConsistency(format!("model sextic {sextic:?} is not squarefree of degree 6")));
    }

    let kt = Ring::rational_functions(&k, CURVE_VAR)?;
    let lift = |c: &RingElem| kt.lift(c).expect("constant lifts");
    let t = kt.generator().unwrap();
    let xp = &(&lift(&lambda) * &t.square()) + &lift(&a);
    // gamma^-1 = [[d, -b], [-c, a]]
    let x = (&(&lift(&gd) * &xp) - &lift(&gb)).checked_div(&(&lift(&ga) - &(&lift(&gc) * &xp)))?;
    let sextic_t = RingElem::from_poly(&kt, sextic.clone())?;
    let px = lift_cubic_eval(e, &kt, &x);
    let ratio = px.checked_div(&sextic_t)?;
    let root = is_square(&ratio)?
        .ok_or_else(|| Error::SquareRootExtractionFailed(format!("P_E(x(t))/sextic = {ratio} is not a square in {kt}")))?;
    let h = if (&lift(&lambda) * &root).is_sign_canonical() { root } else { -&root };

    if &h.square() * &sextic_t != px {
        return Err(Error::InternalConsistency("h^2 * sextic != P_E(x(t))".into()));
    }
    if lift_cubic_eval(ep, &kt, &xp) != sextic_t {
        return Err(Error::InternalConsistency("P_E'(x'(t)) != sextic".into()));
    }

    Ok(GluedPair {
        e: e.clone(),
        eprime: ep.clone(),
        psi: *psi,
        gamma,
        a,
        b,
        lambda,
        sextic,
        f: CoverMap { x, ymul: h },
        fprime: CoverMap { x: xp, ymul: kt.one() },
        fn_ring: kt,
    })
}

/// `P_E(x)` for `x` in a function field over the curve's field.
pub(crate) fn lift_cubic_eval(e: &EllCurve, kt: &Ring, x: &RingElem) -> RingElem {
    e.roots().iter().fold(kt.one(), |acc, r| &acc * &(x - &kt.lift(r).unwrap()))
}
