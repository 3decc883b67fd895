use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use super::{parse_character, parse_datum, CliError, TableArgs, OUTPUT_DIR_ENV};
use crate::algebra::TermRecord;
use crate::hecke::HeckeCharacter;
use crate::root_system::{dominant_up_to_height, Coweight, RootDatum};
use crate::spherical::{evaluate, Formula, FormulaRequest};

/// Formulas tabulated per `(type, character, lambda)`.
pub const TABLE_FORMULAS: [Formula; 7] = [
    Formula::TheoremLhs,
    Formula::TheoremRhs,
    Formula::WeylChar,
    Formula::DemazureChar,
    Formula::CasselmanShalika,
    Formula::Macdonald,
    Formula::Shalika,
];

#[derive(Serialize)]
struct Row {
    #[serde(rename = "type")]
    cartan: String,
    character: String,
    lambda: Vec<i32>,
    formula: &'static str,
    value: String,
    terms: Vec<TermRecord>,
}

struct Cell<'a> {
    datum: &'a RootDatum,
    character: HeckeCharacter,
    lambda: Coweight,
    formula: Formula,
}

fn output_dir(args: &TableArgs) -> PathBuf {
    args.out_dir
        .clone()
        .or_else(|| std::env::var_os(OUTPUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."))
}

/// Write `bytes` next to `path` and rename into place.
fn stage(path: &Path, bytes: &[u8]) -> Result<PathBuf, CliError> {
    let file_name = path.file_name().and_then(|n| n.to_str()).unwrap_or("table");
    let tmp = path.with_file_name(format!(".{file_name}.{}.tmp", std::process::id()));
    fs::write(&tmp, bytes).map_err(CliError::io(format!("writing {}", tmp.display())))?;
    Ok(tmp)
}

pub(super) fn run_table(args: &TableArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let data: Vec<RootDatum> = args.types.iter().map(|t| parse_datum(t)).collect::<Result<_, _>>()?;
    let mut cells = Vec::new();
    for datum in &data {
        let characters = match args.character.as_deref() {
            Some(name) => vec![parse_character(datum, name)?],
            None => HeckeCharacter::all(&datum.roots),
        };
        for character in characters {
            for lambda in dominant_up_to_height(datum.rank(), args.height) {
                for formula in TABLE_FORMULAS {
                    if formula.applies_to(datum, character.name()) {
                        cells.push(Cell { datum, character: character.clone(), lambda: lambda.clone(), formula });
                    }
                }
            }
        }
    }

    let rows: Vec<Row> = cells
        .par_iter()
        .map(|cell| {
            let request = FormulaRequest {
                datum: cell.datum,
                character: &cell.character,
                lambda: cell.lambda.clone(),
                formula: cell.formula,
                word: Vec::new(),
            };
            let value = evaluate(&request)?.value;
            Ok(Row {
                cartan: cell.datum.roots.cartan_type().to_string(),
                character: cell.character.name().to_string(),
                lambda: cell.lambda.coords().to_vec(),
                formula: cell.formula.name(),
                value: value.to_string(),
                terms: value.to_records(),
            })
        })
        .collect::<crate::Result<_>>()?;

    let mut csv_bytes = Vec::new();
    {
        let mut w = csv::Writer::from_writer(&mut csv_bytes);
        w.write_record(["type", "character", "lambda", "formula", "value"])
            .map_err(|e| CliError::io("encoding csv")(e.into()))?;
        for row in &rows {
            let lambda = Coweight::new(row.lambda.iter().copied()).to_string();
            w.write_record([row.cartan.as_str(), &row.character, &lambda, row.formula, &row.value])
                .map_err(|e| CliError::io("encoding csv")(e.into()))?;
        }
        w.flush().map_err(CliError::io("encoding csv"))?;
    }
    let mut json_bytes = serde_json::to_vec_pretty(&rows).map_err(|e| CliError::io("encoding json")(e.into()))?;
    json_bytes.push(b'\n');

    let dir = output_dir(args);
    fs::create_dir_all(&dir).map_err(CliError::io(format!("creating {}", dir.display())))?;
    let targets = [dir.join(format!("{}.csv", args.name)), dir.join(format!("{}.json", args.name))];
    let staged = [stage(&targets[0], &csv_bytes)?, stage(&targets[1], &json_bytes)?];
    for (tmp, target) in staged.iter().zip(&targets) {
        fs::rename(tmp, target).map_err(CliError::io(format!("renaming to {}", target.display())))?;
    }
    for target in &targets {
        writeln!(out, "{}", target.display()).map_err(CliError::io("writing report"))?;
    }
    writeln!(out, "{} rows", rows.len()).map_err(CliError::io("writing report"))?;
    Ok(())
}
