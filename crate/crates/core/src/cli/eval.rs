use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use super::{parse_character, parse_datum, parse_lambda, CliError, EvalArgs, OutputFormat};
use crate::algebra::TermRecord;
use crate::spherical::{evaluate, FormulaRequest};

#[derive(Serialize)]
struct EvalReport<'a> {
    #[serde(rename = "type")]
    cartan: String,
    character: &'a str,
    lambda: &'a [i32],
    formula: &'static str,
    value: Vec<TermRecord>,
    display: String,
    notes: BTreeMap<&'a str, &'a str>,
}

fn parse_word(s: Option<&str>) -> Result<Vec<usize>, CliError> {
    let Some(s) = s.map(str::trim).filter(|s| !s.is_empty()) else {
        return Ok(Vec::new());
    };
    s.split(',')
        .map(|part| match part.trim().parse::<usize>() {
            Ok(i) if i >= 1 => Ok(i - 1),
            _ => Err(CliError::Parse(format!("bad word letter {part:?}; letters are 1-based"))),
        })
        .collect()
}

pub(super) fn run_eval(args: &EvalArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let datum = parse_datum(&args.cartan)?;
    let name = args.character.as_deref().or(args.formula.fixed_character()).unwrap_or("triv");
    let character = parse_character(&datum, name)?;
    let lambda = parse_lambda(&datum, args.lambda.as_deref())?;
    let word = parse_word(args.word.as_deref())?;
    let request = FormulaRequest { datum: &datum, character: &character, lambda, formula: args.formula, word };
    let evaluation = evaluate(&request)?;

    let cartan = datum.roots.cartan_type().to_string();
    let display = evaluation.value.to_string();
    let write = |out: &mut dyn Write| -> std::io::Result<()> {
        match args.output {
            OutputFormat::Text => {
                writeln!(out, "{display}")?;
                for (key, value) in &evaluation.notes {
                    writeln!(out, "{key}: {value}")?;
                }
                Ok(())
            }
            OutputFormat::Json => {
                let report = EvalReport {
                    cartan: cartan.clone(),
                    character: name,
                    lambda: request.lambda.coords(),
                    formula: args.formula.name(),
                    value: evaluation.value.to_records(),
                    display: display.clone(),
                    notes: evaluation.notes.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect(),
                };
                serde_json::to_writer_pretty(&mut *out, &report)?;
                writeln!(out)
            }
            OutputFormat::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(["type", "character", "lambda", "formula", "value"])?;
                let lambda = request.lambda.to_string();
                w.write_record([cartan.as_str(), name, &lambda, args.formula.name(), &display])?;
                w.flush()
            }
        }
    };
    write(out).map_err(CliError::io("writing value"))
}
