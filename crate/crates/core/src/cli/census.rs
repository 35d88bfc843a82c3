use std::io::Write;

use rayon::prelude::*;

use crate::ellcurve::{EllCurve, TwoTorsionIso};
use crate::error::{Error, Result};
use crate::exactring::{Poly, Ring, RingElem};
use crate::glueconstruct::{construct, theta_smooth, CURVE_VAR};

pub const CSV_HEADER: &str = "e1,e2,e3,ep1,ep2,ep3,sigma,j,jp,theta_smooth,sextic";

#[derive(Clone, Debug)]
pub struct CensusRow {
    pub e: EllCurve,
    pub eprime: EllCurve,
    pub psi: TwoTorsionIso,
    pub j: RingElem,
    pub jp: RingElem,
    pub theta_smooth: bool,
    pub sextic: Option<Poly>,
}

/// Ordered triples of distinct elements of a finite field, as curves.
pub fn all_curves(ring: &Ring) -> Result<Vec<EllCurve>> {
    let elems = ring
        .elements()
        .ok_or_else(|| Error::Unsupported(format!("census over {ring}")))?;
    let mut out = Vec::new();
    for a in &elems {
        for b in &elems {
            for c in &elems {
                if a != b && a != c && b != c {
                    out.push(EllCurve::new([a.clone(), b.clone(), c.clone()])?);
                }
            }
        }
    }
    Ok(out)
}

/// Every `(E, E', sigma)` over a finite field, ordered by `E`, then `E'`,
/// then `sigma`.
pub fn census(ring: &Ring, with_sextic: bool) -> Result<Vec<CensusRow>> {
    if !ring.is_finite_field() {
        return Err(Error::Unsupported(format!("census over {ring}")));
    }
    let curves = all_curves(ring)?;
    let js: Vec<RingElem> = curves.iter().map(|c| c.j_invariant()).collect();
    let n = curves.len();
    let perms = TwoTorsionIso::all();
    (0..n * n * 6)
        .into_par_iter()
        .map(|idx| {
            let (i, rest) = (idx / (6 * n), idx % (6 * n));
            let (k, s) = (rest / 6, rest % 6);
            let (e, ep, psi) = (&curves[i], &curves[k], perms[s]);
            let smooth = theta_smooth(e, ep, &psi)?;
            let sextic = if smooth && with_sextic { Some(construct(e, ep, &psi)?.sextic) } else { None };
            Ok(CensusRow {
                e: e.clone(),
                eprime: ep.clone(),
                psi,
                j: js[i].clone(),
                jp: js[k].clone(),
                theta_smooth: smooth,
                sextic,
            })
        })
        .collect()
}

fn csv_field(s: String) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}

pub fn write_census_csv(out: &mut dyn Write, rows: &[CensusRow]) -> Result<()> {
    let mut w = std::io::BufWriter::new(out);
    writeln!(w, "{CSV_HEADER}")?;
    for r in rows {
        let mut fields: Vec<String> = r.e.roots().iter().chain(r.eprime.roots()).map(|x| x.to_string()).collect();
        fields.push(r.psi.to_string());
        fields.push(r.j.to_string());
        fields.push(r.jp.to_string());
        fields.push(r.theta_smooth.to_string());
        fields.push(r.sextic.as_ref().map(|s| s.display(CURVE_VAR)).unwrap_or_default());
        let line: Vec<String> = fields.into_iter().map(csv_field).collect();
        writeln!(w, "{}", line.join(","))?;
    }
    w.flush()?;
    Ok(())
}

/// For every curve pair with different j-invariants all six `sigma` must be
/// theta-smooth. Returns the number of such pairs and of their rows.
pub fn check_j_implication(rows: &[CensusRow]) -> Result<(usize, usize)> {
    let mut pairs = 0;
    let mut smooth = 0;
    for chunk in rows.chunks(6) {
        let r = &chunk[0];
        if chunk.iter().any(|x| x.e != r.e || x.eprime != r.eprime) {
            return Err(Error::InternalConsistency("census rows are not grouped by curve pair".into()));
        }
        if r.j != r.jp {
            pairs += 1;
            if let Some(bad) = chunk.iter().find(|x| !x.theta_smooth) {
                return Err(Error::InternalConsistency(format!(
                    "j(E) != j(E') for E = {}, E' = {} but sigma = {} is not theta-smooth",
                    bad.e, bad.eprime, bad.psi
                )));
            }
            smooth += chunk.len();
        }
    }
    Ok((pairs, smooth))
}
