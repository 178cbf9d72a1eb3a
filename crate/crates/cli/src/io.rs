use std::io::Write;
use std::path::Path;

use ida_core::stats::Dataset;
use tempfile::NamedTempFile;

use crate::error::{CliError, CliResult};

/// Reads a comma-separated file with a header row. The column named
/// `response` becomes the response.
pub fn read_dataset(path: &Path, response: &str) -> CliResult<Dataset<f64>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::Input(format!("cannot open {}: {e}", path.display())))?;
    let names: Vec<String> =
        reader.headers().map_err(|e| CliError::Input(format!("bad header: {e}")))?.iter().map(str::to_string).collect();
    if names.is_empty() || names.iter().any(String::is_empty) {
        return Err(CliError::Input("header row must name every column".into()));
    }
    let y = names
        .iter()
        .position(|n| n == response)
        .ok_or_else(|| CliError::Input(format!("unknown response column `{response}`")))?;
    let mut rows = Vec::new();
    for (k, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| CliError::Input(format!("malformed CSV: {e}")))?;
        let row = rec
            .iter()
            .enumerate()
            .map(|(c, field)| {
                field.parse::<f64>().map_err(|_| {
                    CliError::Input(format!("data row {}, column `{}`: `{field}` is not a number", k + 1, names[c]))
                })
            })
            .collect::<CliResult<Vec<f64>>>()?;
        rows.push(row);
    }
    Ok(Dataset::new(rows, names, y)?)
}

/// Writes `contents` to a temporary file beside `path` and renames it into
/// place, so a failed run leaves no partial output.
pub fn write_atomic(path: &Path, contents: &[u8]) -> CliResult<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| CliError::Io(e.to_string()))?;
    Ok(())
}

/// Serializes `rows` as CSV with a header taken from the field names.
pub fn csv_bytes<S: serde::Serialize>(rows: &[S]) -> CliResult<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    w.into_inner().map_err(|e| CliError::Io(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(contents: &str) -> NamedTempFile {
        let mut f = NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f
    }

    #[test]
    fn reads_named_columns() {
        let f = write("a, b ,y\n1,2,3\n4,5,6.5\n");
        let d = read_dataset(f.path(), "b").unwrap();
        assert_eq!(d.names(), ["a", "b", "y"]);
        assert_eq!(d.response(), 1);
        assert_eq!(d.value(1, 2), 6.5);
    }

    #[test]
    fn rejects_bad_input() {
        let f = write("a,y\n1,x\n2,3\n");
        assert!(matches!(read_dataset(f.path(), "y"), Err(CliError::Input(m)) if m.contains("`x`")));
        let f = write("a,y\n1,2\n2,3\n");
        assert!(matches!(read_dataset(f.path(), "z"), Err(CliError::Input(_))));
        let f = write("a,y\n1,2\n2\n");
        assert!(matches!(read_dataset(f.path(), "y"), Err(CliError::Input(_))));
        assert!(matches!(read_dataset(Path::new("/nonexistent/x.csv"), "y"), Err(CliError::Input(_))));
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("out.txt");
        write_atomic(&p, b"one").unwrap();
        write_atomic(&p, b"two").unwrap();
        assert_eq!(std::fs::read(&p).unwrap(), b"two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
