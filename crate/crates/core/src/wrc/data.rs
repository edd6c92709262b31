//! Retention data as CSV: header `h,theta`, one point per row, `h` in cm.

use std::io::Read;
use std::path::Path;

use super::RetentionPoint;
use crate::error::{Error, Result};

/// Reads retention points. Rows are numbered from 1 after the header; every
/// invalid row is reported, not only the first.
pub fn read_retention_csv<R: Read>(reader: R) -> Result<Vec<RetentionPoint>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| Error::Data(e.to_string()))?
        .clone();
    if headers.len() != 2 || &headers[0] != "h" || &headers[1] != "theta" {
        return Err(Error::Data(format!(
            "expected header \"h,theta\", found {:?}",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut points = Vec::new();
    let mut bad = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let row = i + 1;
        let rec = rec.map_err(|e| Error::Data(format!("row {row}: {e}")))?;
        let parsed = (
            rec.get(0).map(str::parse::<f64>),
            rec.get(1).map(str::parse::<f64>),
        );
        match parsed {
            (Some(Ok(h)), Some(Ok(theta)))
                if h.is_finite()
                    && theta.is_finite()
                    && h > 0.0
                    && (0.0..=1.0).contains(&theta) =>
            {
                points.push(RetentionPoint { h, theta })
            }
            _ => bad.push(row),
        }
    }
    if !bad.is_empty() {
        return Err(Error::Data(format!(
            "invalid rows {bad:?}: need finite h > 0 and 0 <= theta <= 1"
        )));
    }
    Ok(points)
}

pub fn read_retention_file(path: impl AsRef<Path>) -> Result<Vec<RetentionPoint>> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })?;
    read_retention_csv(file)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_points() {
        let pts = read_retention_csv("h,theta\n1,0.5\n 10 , 0.29\n".as_bytes()).unwrap();
        assert_eq!(
            pts,
            vec![
                RetentionPoint { h: 1.0, theta: 0.5 },
                RetentionPoint {
                    h: 10.0,
                    theta: 0.29
                }
            ]
        );
    }

    #[test]
    fn reports_every_bad_row() {
        let err = read_retention_csv("h,theta\n1,0.5\nNaN,0.3\n3,inf\n4,0.2\n-1,0.1\n".as_bytes())
            .unwrap_err();
        assert!(err.to_string().contains("[2, 3, 5]"), "{err}");
    }

    #[test]
    fn rejects_wrong_header() {
        assert!(matches!(
            read_retention_csv("head,theta\n1,0.5\n".as_bytes()),
            Err(Error::Data(_))
        ));
    }

    #[test]
    fn missing_file() {
        assert!(matches!(
            read_retention_file("/nonexistent/retention.csv"),
            Err(Error::Io(_))
        ));
    }
}
