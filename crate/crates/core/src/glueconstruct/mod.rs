//! The degree-2 glueing of two elliptic curves along a 2-torsion
//! isomorphism, and checks of its defining properties.

mod checks;
mod construct;
mod points;

pub use checks::{
    charpoly, discriminant, fixed_point_scheme, kahler_different, ram_image_check, recover_psi,
    weierstrass_pushforward, ChartLocus, Different, Discriminant, PointScheme, Pushforward,
};
pub use construct::{
    construct, gamma_of, theta_smooth, Cover, CoverMap, GluedPair, Involution, CURVE_VAR,
};
pub use points::{
    birationality_check, rational_points, recovers_t, trace_pushpull, BirationalityReport, ModelPoint, PointCheck,
    Weierstrass,
};

use crate::error::{Error, Result};

/// One line of a verification table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Options for [`verify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// extension degree for the trace check over finite fields
    pub trace_degree: usize,
    pub point_checks: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { trace_degree: 2, point_checks: true }
    }
}

fn outcome(name: &'static str, r: Result<(bool, String)>) -> CheckOutcome {
    match r {
        Ok((passed, detail)) => CheckOutcome { name, passed, detail },
        Err(e) => CheckOutcome { name, passed: false, detail: e.to_string() },
    }
}

/// Runs every check on a constructed pair. Point-level checks are skipped
/// over infinite fields.
pub fn verify(g: &GluedPair, opts: VerifyOptions) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let kt = &g.fn_ring;

    out.push(outcome("genus_two", Ok((
        g.sextic.degree() == Some(6) && g.sextic.is_squarefree(),
        format!("deg {}", g.sextic.degree().unwrap_or(0)),
    ))));
    out.push(outcome("f_lands_on_E", (|| {
        let s = crate::exactring::RingElem::from_poly(kt, g.sextic.clone())?;
        let lhs = &g.h().square() * &s;
        Ok((lhs == construct::lift_cubic_eval(&g.e, kt, &g.f.x), "h^2 sextic = P_E(x)".into()))
    })()));
    out.push(outcome("fprime_lands_on_Eprime", (|| {
        let s = crate::exactring::RingElem::from_poly(kt, g.sextic.clone())?;
        Ok((construct::lift_cubic_eval(&g.eprime, kt, &g.fprime.x) == s, "P_E'(x') = sextic".into()))
    })()));
    out.push(outcome("theta_criteria_agree", construct::theta_smooth(&g.e, &g.eprime, &g.psi).map(|b| (b, String::new()))));

    use Involution::*;
    let relations = Tau.compose(TauPrime) == Hyperelliptic
        && TauPrime.compose(Tau) == Hyperelliptic
        && g.f.after(Tau) == g.f
        && g.fprime.after(TauPrime) == g.fprime
        && g.f.after(TauPrime) == g.f.negate()
        && g.fprime.after(Tau) == g.fprime.negate();
    out.push(outcome("involutions", Ok((relations, "tau tau' = sigma_C; f tau = f; f' tau' = f'".into()))));

    for which in [Cover::F, Cover::FPrime] {
        let name = match which {
            Cover::F => "weierstrass_pushforward_f",
            Cover::FPrime => "weierstrass_pushforward_fprime",
        };
        out.push(outcome(name, weierstrass_pushforward(g, which).map(|p| (p.is_normalized(), p.to_string()))));
    }
    out.push(outcome("psi_roundtrip", recover_psi(g).map(|s| (s == g.psi, format!("sigma = {s}")))));

    for which in [Cover::F, Cover::FPrime] {
        let name = match which {
            Cover::F => "different_f_is_fixed_locus_of_tau",
            Cover::FPrime => "different_fprime_is_fixed_locus_of_tau'",
        };
        out.push(outcome(name, kahler_different(g, which).map(|v| {
            let fixed = fixed_point_scheme(g, g.deck(which));
            (
                v.scheme == fixed && v.scheme.degree() == 2 && v.unramified_over_origin,
                format!("V = {}{}", v.scheme, if v.split { " (split)" } else { "" }),
            )
        })));
    }
    out.push(outcome("ramification_image", ram_image_check(g).map(|b| (b, String::new()))));
    for which in [Cover::F, Cover::FPrime] {
        let name = match which {
            Cover::F => "discriminant_f",
            Cover::FPrime => "discriminant_fprime",
        };
        let expected_x = match which {
            Cover::F => &g.b,
            Cover::FPrime => &g.a,
        };
        out.push(outcome(name, discriminant(g, which).map(|d| (d.x == *expected_x, d.to_string()))));
    }

    if opts.point_checks && g.field().is_finite_field() {
        out.push(outcome("trace_pushpull", trace_pushpull(g, opts.trace_degree).map(|r| {
            (r.passed(), format!("{} points over degree {}; {}", r.checked, opts.trace_degree, r.failures.join("; ")))
        })));
        out.push(outcome("birationality", birationality_check(g).map(|r| {
            (
                r.passed(),
                format!("{} rational points, {} Weierstrass pairs; {}", r.points, r.weierstrass_pairs, r.failures.join("; ")),
            )
        })));
    } else {
        out.push(outcome("birationality", recovers_t(g).map(|b| (b, "t = 1/(h (x' - a))".into()))));
    }
    out
}

/// The first failed check as an error.
pub fn first_failure(results: &[CheckOutcome]) -> Result<()> {
    match results.iter().find(|c| !c.passed) {
        Some(c) => Err(Error::InternalConsistency(format!("{} failed: {}", c.name, c.detail))),
        None => Ok(()),
    }
}
