//! CSV emission with deterministic formatting: 17 significant digits
//! guarantee bit-exact float round-trips, so identical inputs produce
//! byte-identical files.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use crate::CliError;

pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Opens the output sink: a file when a path is given, stdout otherwise.
pub fn open_sink(path: Option<&PathBuf>) -> Result<Box<dyn Write>, CliError> {
    match path {
        Some(p) => {
            let file = File::create(p)
                .map_err(|e| CliError::Input(format!("cannot write {}: {e}", p.display())))?;
            Ok(Box::new(BufWriter::new(file)))
        }
        None => Ok(Box::new(BufWriter::new(io::stdout()))),
    }
}

pub fn write_row(sink: &mut dyn Write, values: &[f64]) -> io::Result<()> {
    let mut first = true;
    for v in values {
        if !first {
            write!(sink, ",")?;
        }
        write!(sink, "{}", format_float(*v))?;
        first = false;
    }
    writeln!(sink)
}

pub fn write_header(sink: &mut dyn Write, columns: &[String]) -> io::Result<()> {
    writeln!(sink, "{}", columns.join(","))
}
