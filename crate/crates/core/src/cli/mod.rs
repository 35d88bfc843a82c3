//! Command-line front end.

mod census;
mod report;

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::ellcurve::{EllCurve, TwoTorsionIso};
use crate::error::{Error, Result};
use crate::exactring::Ring;
use crate::family::Family;
use crate::glueconstruct::{construct, first_failure, verify, VerifyOptions};
use crate::projline::{parse_triple, MoebiusMap};

pub use census::{census, check_j_implication, write_census_csv, CensusRow, CSV_HEADER};
pub use report::{construct_json, family_json};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl Format {
    fn as_arg(self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

/// A parsed command line.
#[derive(Parser, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[command(name = "symglue", version, about = "Genus 2 curves glued from two elliptic curves along 2-torsion")]
pub struct RunConfig {
    /// Output format (census always writes CSV)
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Command {
    /// Build the genus 2 curve and both covers
    Construct {
        #[command(flatten)]
        pair: PairArgs,
        /// Also run the verification suite
        #[arg(long)]
        verify: bool,
    },
    /// Build and run every check; exits with 4 if any fails
    Verify {
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Enumerate every input over a finite field and write CSV
    Census {
        #[arg(long)]
        field: String,
        /// Include the sextic of every theta-smooth input
        #[arg(long)]
        construct: bool,
    },
    /// Run the construction over F_p(var) and specialize
    Family {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value = "s")]
        var: String,
        #[arg(long)]
        e: String,
        #[arg(long)]
        eprime: String,
        #[arg(long, default_value = "1,2,3")]
        sigma: String,
    },
    /// Moebius map through three points
    Moebius {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
}

#[derive(Args, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairArgs {
    /// Field descriptor: q, fp:P, fpk:P:K[:modulus], ratfunc:<base>:VAR
    #[arg(long)]
    pub field: String,
    /// Roots of E, comma separated
    #[arg(long)]
    pub e: String,
    /// Roots of E', comma separated
    #[arg(long)]
    pub eprime: String,
    /// sigma(1),sigma(2),sigma(3)
    #[arg(long, default_value = "1,2,3")]
    pub sigma: String,
    /// Extension degree for the trace check over finite fields
    #[arg(long, default_value_t = 2)]
    pub trace_degree: usize,
    /// Skip the point-enumeration checks
    #[arg(long)]
    pub no_point_checks: bool,
}

impl PairArgs {
    fn to_args(&self) -> Vec<String> {
        let mut v = vec![
            "--field".into(),
            self.field.clone(),
            "--e".into(),
            self.e.clone(),
            "--eprime".into(),
            self.eprime.clone(),
            "--sigma".into(),
            self.sigma.clone(),
            "--trace-degree".into(),
            self.trace_degree.to_string(),
        ];
        if self.no_point_checks {
            v.push("--no-point-checks".into());
        }
        v
    }

    fn parse(&self) -> Result<(EllCurve, EllCurve, TwoTorsionIso)> {
        let ring = Ring::parse(&self.field)?;
        Ok((
            EllCurve::parse(&ring, &self.e)?,
            EllCurve::parse(&ring, &self.eprime)?,
            TwoTorsionIso::parse(&self.sigma)?,
        ))
    }

    fn options(&self) -> VerifyOptions {
        VerifyOptions { trace_degree: self.trace_degree, point_checks: !self.no_point_checks }
    }
}

impl RunConfig {
    /// Command-line arguments (without the program name) that parse back to
    /// this configuration.
    pub fn to_args(&self) -> Vec<String> {
        let mut v: Vec<String> = Vec::new();
        match &self.command {
            Command::Construct { pair, verify } => {
                v.push("construct".into());
                v.extend(pair.to_args());
                if *verify {
                    v.push("--verify".into());
                }
            }
            Command::Verify { pair } => {
                v.push("verify".into());
                v.extend(pair.to_args());
            }
            Command::Census { field, construct } => {
                v.extend(["census".into(), "--field".into(), field.clone()]);
                if *construct {
                    v.push("--construct".into());
                }
            }
            Command::Family { p, var, e, eprime, sigma } => {
                v.extend(
                    ["family", "--p", &p.to_string(), "--var", var, "--e", e, "--eprime", eprime, "--sigma", sigma]
                        .map(String::from),
                );
            }
            Command::Moebius { ring, from, to } => {
                v.extend(["moebius", "--ring", ring, "--from", from, "--to", to].map(String::from));
            }
        }
        v.extend(["--format".into(), self.format.as_arg().into()]);
        v
    }
}

/// Executes a command, writing the report to `out` and diagnostics to
/// `err`.
pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match &config.command {
        Command::Construct { pair, verify: with_checks } => {
            let (e, ep, psi) = pair.parse()?;
            let g = construct(&e, &ep, &psi)?;
            let checks = with_checks.then(|| verify(&g, pair.options()));
            report::write_construct(out, config.format, &g, checks.as_deref())?;
            if let Some(c) = &checks {
                first_failure(c)?;
            }
        }
        Command::Verify { pair } => {
            let (e, ep, psi) = pair.parse()?;
            let g = construct(&e, &ep, &psi)?;
            let checks = verify(&g, pair.options());
            report::write_construct(out, config.format, &g, Some(&checks))?;
            first_failure(&checks)?;
        }
        Command::Census { field, construct } => {
            let ring = Ring::parse(field)?;
            let rows = census(&ring, *construct)?;
            write_census_csv(out, &rows)?;
            let (pairs, smooth) = check_j_implication(&rows)?;
            writeln!(
                err,
                "{} rows; {pairs} curve pairs with distinct j-invariants, all {smooth} of their sigma theta-smooth",
                rows.len()
            )?;
        }
        Command::Family { p, var, e, eprime, sigma } => {
            let fam = Family::parse(*p, var, e, eprime, sigma)?;
            let rep = fam.report()?;
            let brute = fam.brute_force_bad_locus()?;
            report::write_family(out, config.format, &fam, &rep, &brute)?;
            let alg: std::collections::BTreeMap<u64, _> =
                rep.bad.iter().map(|b| (b.s0.as_residue().unwrap(), b.primary())).collect();
            if alg != brute {
                return Err(Error::InternalConsistency("bad locus differs from the fiberwise scan".into()));
            }
            if let Some((s0, _, _)) = rep.table.iter().find(|r| !r.2) {
                return Err(Error::InternalConsistency(format!("specialization at {s0} does not commute")));
            }
        }
        Command::Moebius { ring, from, to } => {
            let ring = Ring::parse(ring)?;
            let g = MoebiusMap::from_triples(&parse_triple(&ring, from)?, &parse_triple(&ring, to)?)?;
            report::write_moebius(out, config.format, &g)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> RunConfig {
        RunConfig::try_parse_from(std::iter::once("symglue").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn args_roundtrip() {
        for args in [
            &["construct", "--field", "fp:5", "--e", "0,1,4", "--eprime", "0,2,3", "--sigma", "2,1,3", "--verify"][..],
            &["census", "--field", "fp:5", "--construct"],
            &["family", "--p", "7", "--e", "0,1,s", "--eprime", "0,1,s+1", "--format", "json"],
            &["moebius", "--ring", "z:15", "--from", "0,1,2", "--to", "0,1,2"],
        ] {
            let c = parse(args);
            let again = RunConfig::try_parse_from(std::iter::once("symglue".to_string()).chain(c.to_args())).unwrap();
            assert_eq!(c, again);
            let json = serde_json::to_string(&c).unwrap();
            assert_eq!(serde_json::from_str::<RunConfig>(&json).unwrap(), c);
        }
    }

    #[test]
    fn moebius_identity_over_z15() {
        let c = parse(&["moebius", "--ring", "z:15", "--from", "0,1,2", "--to", "0,1,2"]);
        let mut out = Vec::new();
        run(&c, &mut out, &mut Vec::new()).unwrap();
        let s = String::from_utf8(out).unwrap();
        assert!(s.contains("[[1, 0], [0, 1]]"), "{s}");
        assert!(s.contains("t -> t"), "{s}");
    }

    #[test]
    fn exit_codes() {
        let c = parse(&["construct", "--field", "fp:5", "--e", "0,1,4", "--eprime", "0,2,3", "--sigma", "1,2,3"]);
        assert_eq!(run(&c, &mut Vec::new(), &mut Vec::new()).unwrap_err().exit_code(), 3);
        let c = parse(&["construct", "--field", "fp:4", "--e", "0,1,4", "--eprime", "0,2,3"]);
        assert_eq!(run(&c, &mut Vec::new(), &mut Vec::new()).unwrap_err().exit_code(), 2);
        let c = parse(&["construct", "--field", "fp:5", "--e", "0,1,x", "--eprime", "0,2,3"]);
        assert_eq!(run(&c, &mut Vec::new(), &mut Vec::new()).unwrap_err().exit_code(), 2);
    }
}
