use std::io::Write;

use clap::ValueEnum;
use rayon::prelude::*;
use serde::Serialize;

use super::{parse_character, parse_datum, types_up_to, CliError, OutputFormat, VerifyArgs};
use crate::algebra::GroupRingElem;
use crate::hecke::verify::{self, check_all, Mutation, Outcome, Witness};
use crate::hecke::{CharValue, HeckeCharacter};
use crate::root_system::{coweight_box, dominant_up_to_height, Coweight, Family, RootDatum};
use crate::spherical::{self, Formula};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum)]
pub enum Suite {
    Quadratic,
    Braid,
    Bernstein,
    DeformedDemazure,
    RhoPairing,
    OperatorIdentity,
    AlternatorFormula,
    Intertwiner,
    OmegaSymmetry,
    Q0Degeneration,
    IwahoriSum,
    Demazure,
    WeylDemazure,
    CasselmanShalika,
    Macdonald,
    Shalika,
}

impl Suite {
    pub const ALL: [Suite; 16] = [
        Suite::Quadratic,
        Suite::Braid,
        Suite::Bernstein,
        Suite::DeformedDemazure,
        Suite::RhoPairing,
        Suite::OperatorIdentity,
        Suite::AlternatorFormula,
        Suite::Intertwiner,
        Suite::OmegaSymmetry,
        Suite::Q0Degeneration,
        Suite::IwahoriSum,
        Suite::Demazure,
        Suite::WeylDemazure,
        Suite::CasselmanShalika,
        Suite::Macdonald,
        Suite::Shalika,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Quadratic => "quadratic",
            Suite::Braid => "braid",
            Suite::Bernstein => "bernstein",
            Suite::DeformedDemazure => "deformed-demazure",
            Suite::RhoPairing => "rho-pairing",
            Suite::OperatorIdentity => "operator-identity",
            Suite::AlternatorFormula => "alternator-formula",
            Suite::Intertwiner => "intertwiner",
            Suite::OmegaSymmetry => "omega-symmetry",
            Suite::Q0Degeneration => "q0-degeneration",
            Suite::IwahoriSum => "iwahori-sum",
            Suite::Demazure => "demazure",
            Suite::WeylDemazure => "weyl-demazure",
            Suite::CasselmanShalika => "casselman-shalika",
            Suite::Macdonald => "macdonald",
            Suite::Shalika => "shalika",
        }
    }

    /// The character a suite is tied to; `Some(None)` for suites that do not
    /// involve a character, `None` for suites run once per character.
    fn fixed_character(self) -> Option<Option<&'static str>> {
        match self {
            Suite::Demazure | Suite::WeylDemazure => Some(None),
            Suite::CasselmanShalika => Some(Formula::CasselmanShalika.fixed_character()),
            Suite::Macdonald => Some(Formula::Macdonald.fixed_character()),
            Suite::Shalika => Some(Formula::Shalika.fixed_character()),
            _ => None,
        }
    }

    fn applies_to(self, datum: &RootDatum) -> bool {
        match self {
            Suite::Shalika => datum.roots.cartan_type().family == Family::B,
            _ => true,
        }
    }

    /// Suites a mutation breaks; these are the defaults under `--mutate`.
    fn targets(mutation: Mutation) -> &'static [Suite] {
        match mutation {
            Mutation::QSquared => &[Suite::Quadratic],
            Mutation::InconsistentCharacter => &[Suite::Braid],
            Mutation::FlipBernstein => &[Suite::Bernstein],
            Mutation::SwapDeformedDemazure => &[Suite::DeformedDemazure],
            Mutation::RhoForRhoEps => &[Suite::RhoPairing],
            Mutation::DropSignCorrection => &[Suite::OperatorIdentity, Suite::AlternatorFormula],
        }
    }
}

/// One line of the verification report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    pub identity: &'static str,
    #[serde(rename = "type")]
    pub cartan: String,
    pub character: Option<String>,
    pub status: &'static str,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug)]
struct Grid {
    basis: Vec<Coweight>,
    small: Vec<Coweight>,
    dominant: Vec<Coweight>,
}

struct Job<'a> {
    suite: Suite,
    datum: &'a RootDatum,
    grid: &'a Grid,
    character: Option<HeckeCharacter>,
}

/// The `(-1, q, q, ...)` assignment, kept only where it fails to be a
/// character.
fn inconsistent_character(datum: &RootDatum) -> Option<HeckeCharacter> {
    let values: Vec<CharValue> =
        (0..datum.rank()).map(|i| if i == 0 { CharValue::MinusOne } else { CharValue::Q }).collect();
    let rs = &datum.roots;
    HeckeCharacter::new(rs, "inconsistent", values.clone())
        .is_err()
        .then(|| HeckeCharacter::unchecked(rs, "inconsistent", values))
}

fn characters_for(
    datum: &RootDatum,
    only: Option<&str>,
    mutation: Option<Mutation>,
) -> Result<Vec<HeckeCharacter>, CliError> {
    if mutation == Some(Mutation::InconsistentCharacter) {
        return Ok(inconsistent_character(datum).into_iter().collect());
    }
    match only {
        Some(name) => Ok(vec![parse_character(datum, name)?]),
        None => Ok(HeckeCharacter::all(&datum.roots)),
    }
}

fn over_lambdas(
    lambdas: &[Coweight],
    check: impl Fn(&Coweight) -> crate::Result<(GroupRingElem, GroupRingElem)> + Sync + Send,
) -> Outcome {
    check_all(lambdas, |lambda| match check(lambda) {
        Ok((lhs, rhs)) => (lhs != rhs).then(|| Witness::new(format!("lambda={lambda}"), lhs, rhs)),
        Err(e) => Some(Witness::new(format!("lambda={lambda}"), "error", e)),
    })
}

fn run_job(job: &Job<'_>, mutation: Option<Mutation>) -> Outcome {
    let d = job.datum;
    let g = job.grid;
    let fallback = HeckeCharacter::trivial(&d.roots);
    let eps = job.character.as_ref().unwrap_or(&fallback);
    let is = |m: Mutation| mutation == Some(m);
    let signed = !is(Mutation::DropSignCorrection);
    match job.suite {
        Suite::Quadratic => verify::verify_quadratic(d, eps, &g.basis, is(Mutation::QSquared)),
        Suite::Braid => verify::verify_braid(d, eps, &g.basis),
        Suite::Bernstein => verify::verify_bernstein(d, eps, &g.basis, &g.small, is(Mutation::FlipBernstein)),
        Suite::DeformedDemazure => {
            verify::verify_deformed_demazure(d, eps, &g.basis, is(Mutation::SwapDeformedDemazure))
        }
        Suite::RhoPairing => verify::verify_rho_pairing(d, eps, is(Mutation::RhoForRhoEps)),
        Suite::OperatorIdentity => verify::verify_operator_identity(d, eps, &g.basis, signed),
        Suite::AlternatorFormula => over_lambdas(&g.basis, |l| {
            Ok((spherical::theorem_lhs(d, eps, l)?, spherical::theorem_rhs_with(d, eps, l, signed)?))
        }),
        Suite::Intertwiner => verify::verify_intertwiner(d, eps, &g.basis),
        Suite::OmegaSymmetry => verify::verify_omega_symmetry(d, eps, &g.small),
        Suite::Q0Degeneration => verify::verify_q0_degeneration(d, eps, &g.basis),
        Suite::IwahoriSum => {
            over_lambdas(&g.dominant, |l| Ok((spherical::iwahori_sum(d, eps, l)?, spherical::theorem_lhs(d, eps, l)?)))
        }
        Suite::Demazure => verify::verify_demazure_relations(d, &g.basis),
        Suite::WeylDemazure => {
            over_lambdas(&g.dominant, |l| Ok((spherical::demazure_character(d, l)?, spherical::weyl_character(d, l)?)))
        }
        Suite::CasselmanShalika => over_lambdas(&g.dominant, |l| {
            let cs = spherical::casselman_shalika(d, l)?;
            Ok((cs.theorem_value, cs.closed_form))
        }),
        Suite::Macdonald => over_lambdas(&g.dominant, |l| {
            let lhs = spherical::theorem_lhs(d, eps, l)?;
            let closed = spherical::macdonald(d, l)?;
            if l.is_zero() {
                let poincare = GroupRingElem::constant(d.rank(), spherical::poincare_polynomial(d));
                if closed != poincare {
                    return Ok((closed, poincare));
                }
            }
            Ok((lhs, closed))
        }),
        Suite::Shalika => over_lambdas(&g.dominant, |l| {
            let forms = spherical::shalika(d, l)?;
            Ok((forms.theorem_form, forms.rewritten_form))
        }),
    }
}

/// Run the configured suites and return the report in a fixed order:
/// type, then suite, then character.
fn collect_records(args: &VerifyArgs) -> Result<Vec<Record>, CliError> {
    let data: Vec<RootDatum> = if args.types.is_empty() {
        types_up_to(args.max_rank).into_iter().map(RootDatum::new).collect::<crate::Result<_>>()?
    } else {
        args.types.iter().map(|t| parse_datum(t)).collect::<Result<_, _>>()?
    };
    let suites: Vec<Suite> = match (args.suite.is_empty(), args.mutate) {
        (false, _) => {
            let mut s = args.suite.clone();
            s.sort();
            s.dedup();
            s
        }
        (true, Some(m)) => Suite::targets(m).to_vec(),
        (true, None) => Suite::ALL.to_vec(),
    };
    let grids: Vec<Grid> = data
        .iter()
        .map(|d| Grid {
            basis: coweight_box(d.rank(), args.radius, args.cap),
            small: coweight_box(d.rank(), args.radius.min(1), args.cap),
            dominant: dominant_up_to_height(d.rank(), args.height),
        })
        .collect();

    let mut jobs = Vec::new();
    for (datum, grid) in data.iter().zip(&grids) {
        let characters = characters_for(datum, args.character.as_deref(), args.mutate)?;
        for &suite in &suites {
            if !suite.applies_to(datum) {
                continue;
            }
            match suite.fixed_character() {
                Some(None) => jobs.push(Job { suite, datum, grid, character: None }),
                Some(Some(name)) => {
                    if args.character.as_deref().is_none_or(|c| c == name) && args.mutate.is_none() {
                        let character = Some(parse_character(datum, name)?);
                        jobs.push(Job { suite, datum, grid, character });
                    }
                }
                None => {
                    for eps in &characters {
                        jobs.push(Job { suite, datum, grid, character: Some(eps.clone()) });
                    }
                }
            }
        }
    }

    Ok(jobs
        .par_iter()
        .map(|job| {
            let outcome = run_job(job, args.mutate);
            Record {
                identity: job.suite.name(),
                cartan: job.datum.roots.cartan_type().to_string(),
                character: job.character.as_ref().map(|c| c.name().to_string()),
                status: if outcome.passed() { "pass" } else { "fail" },
                checked: outcome.checked,
                witness: outcome.witness,
            }
        })
        .collect())
}

pub(super) fn run_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let records = collect_records(args)?;
    write_report(&records, args.output, out).map_err(CliError::io("writing report"))?;
    match records.iter().filter(|r| r.witness.is_some()).count() {
        0 => Ok(()),
        n => Err(CliError::Failed(n)),
    }
}

fn write_report(records: &[Record], format: OutputFormat, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, records)?;
            writeln!(out)
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["identity", "type", "character", "status", "checked", "input", "lhs", "rhs"])?;
            for r in records {
                let (input, lhs, rhs) = match &r.witness {
                    Some(w) => (w.input.as_str(), w.lhs.as_str(), w.rhs.as_str()),
                    None => ("", "", ""),
                };
                let checked = r.checked.to_string();
                let character = r.character.as_deref().unwrap_or("");
                w.write_record([r.identity, &r.cartan, character, r.status, &checked, input, lhs, rhs])?;
            }
            w.flush()
        }
        OutputFormat::Text => {
            for r in records {
                let character = r.character.as_deref().unwrap_or("-");
                writeln!(
                    out,
                    "{:4} {:<20} {:<3} {:<12} checked={}",
                    r.status, r.identity, r.cartan, character, r.checked
                )?;
                if let Some(w) = &r.witness {
                    writeln!(out, "     witness {}", serde_json::to_string(w)?)?;
                }
            }
            Ok(())
        }
    }
}
