//! Replicate records and their CSV persistence.
//!
//! Column order is fixed: `experiment, dist, n, replicate_index, seed_used,
//! estimate, target, linear_term, remainder, skipped, aux1, aux2, aux3,
//! aux4`. The header row is mandatory; the file is UTF-8 with LF line
//! endings; floats carry 17 significant digits (`{:.16e}`), which
//! round-trips f64 exactly. The `dist` field contains commas and is
//! double-quoted per RFC 4180.

use serde::Serialize;
use std::io::Write;

/// One (n, replicate) row. The meaning of `skipped` and the `aux` columns
/// is experiment-specific and documented in [`crate::runner`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReplicateRecord {
    pub n: usize,
    pub replicate_index: u64,
    pub seed_used: u64,
    pub estimate: f64,
    pub target: f64,
    pub linear_term: f64,
    pub remainder: f64,
    pub skipped: u64,
    pub aux: [f64; 4],
}

/// All rows of one run plus the identifying strings echoed into each row.
#[derive(Debug, Clone, Serialize)]
pub struct ResultSet {
    pub experiment: String,
    pub dist: String,
    pub records: Vec<ReplicateRecord>,
}

pub const CSV_HEADER: &str = "experiment,dist,n,replicate_index,seed_used,estimate,target,linear_term,remainder,skipped,aux1,aux2,aux3,aux4";

fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Serializes a result set in the fixed column order.
pub fn csv_string(results: &ResultSet) -> String {
    let mut out = String::with_capacity(64 + results.records.len() * 160);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in &results.records {
        out.push_str(&results.experiment);
        out.push_str(",\"");
        out.push_str(&results.dist);
        out.push_str("\",");
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.n,
            r.replicate_index,
            r.seed_used,
            fmt_f64(r.estimate),
            fmt_f64(r.target),
            fmt_f64(r.linear_term),
            fmt_f64(r.remainder),
            r.skipped,
            fmt_f64(r.aux[0]),
            fmt_f64(r.aux[1]),
            fmt_f64(r.aux[2]),
            fmt_f64(r.aux[3]),
        ));
    }
    out
}

/// Writes the CSV to `path` (LF endings regardless of platform).
pub fn write_csv(results: &ResultSet, path: &str) -> std::io::Result<()> {
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    f.write_all(csv_string(results).as_bytes())?;
    f.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_shape_and_float_format() {
        let rs = ResultSet {
            experiment: "bahadur_rate".into(),
            dist: "normal(0,1)".into(),
            records: vec![ReplicateRecord {
                n: 256,
                replicate_index: 3,
                seed_used: 42,
                estimate: std::f64::consts::PI,
                target: 0.5,
                linear_term: -0.25,
                remainder: 1.0 / 3.0,
                skipped: 0,
                aux: [0.0, 1.0, -2.5, 1e-300],
            }],
        };
        let text = csv_string(&rs);
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        let row = lines.next().unwrap();
        assert!(row.starts_with("bahadur_rate,\"normal(0,1)\",256,3,42,"));
        assert!(row.contains("3.1415926535897931e0"));
        assert!(row.contains("3.3333333333333331e-1"));
        assert!(!text.contains('\r'));
        // every float round-trips exactly
        let fields: Vec<&str> = row.split(',').collect();
        // dist is quoted and contains a comma, so index from the back
        let est: f64 = fields[fields.len() - 9].parse().unwrap();
        assert_eq!(est, std::f64::consts::PI);
    }
}
