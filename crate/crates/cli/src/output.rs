use std::io::Write;

use serde::Serialize;

use crate::args::Format;
use crate::CliError;

/// Writes `rows` as CSV under `headers`, or as a JSON array of objects.
pub fn emit<R: Serialize>(
    format: Format,
    headers: &[&str],
    rows: &[R],
    out: &mut dyn Write,
) -> Result<(), CliError> {
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(&mut *out);
            w.write_record(headers)?;
            for row in rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
        Format::Json => json(rows, out)?,
    }
    Ok(())
}

pub fn json<T: Serialize + ?Sized>(value: &T, out: &mut dyn Write) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}
