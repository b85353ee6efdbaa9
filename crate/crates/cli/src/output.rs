//! Row and report serialization.
//!
//! CSV columns are fixed as `tau,x,y,mag2,rank_q1,rank_q2,eps1,eps2`;
//! rows computed without the quadratic-form engine leave the last four
//! cells empty. JSON output wraps the same rows in an object with a
//! `meta` block describing the run.

use std::io::{self, Write};

use serde::Serialize;

use terncorr_core::{RankReport, TauAnalysis};

pub const CSV_HEADER: &str = "tau,x,y,mag2,rank_q1,rank_q2,eps1,eps2";

/// One spectrum row: the correlation value `x + y*omega`, its squared
/// magnitude, and the two form ranks/signs when the engine produced them.
#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub tau: u64,
    pub x: i64,
    pub y: i64,
    pub mag2: u128,
    pub rank_q1: Option<usize>,
    pub rank_q2: Option<usize>,
    pub eps1: Option<i8>,
    pub eps2: Option<i8>,
}

impl Row {
    pub fn from_analysis(a: &TauAnalysis) -> Self {
        Row {
            tau: a.tau,
            x: a.c_d.x,
            y: a.c_d.y,
            mag2: a.mag2,
            rank_q1: Some(a.q1.rank),
            rank_q2: Some(a.q2.rank),
            eps1: Some(a.q1.epsilon),
            eps2: Some(a.q2.epsilon),
        }
    }

    pub fn direct(tau: u64, x: i64, y: i64, mag2: u128) -> Self {
        Row {
            tau,
            x,
            y,
            mag2,
            rank_q1: None,
            rank_q2: None,
            eps1: None,
            eps2: None,
        }
    }
}

/// Run description included in JSON output.
#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub command: String,
    pub k: u64,
    pub n: usize,
    pub d: u128,
    pub modulus: String,
    pub seed: u64,
    pub bound: u128,
    pub bound_squared: u128,
}

#[derive(Serialize)]
struct RowsDoc<'a> {
    meta: &'a Meta,
    rows: &'a [Row],
}

fn opt_cell<T: std::fmt::Display>(v: &Option<T>) -> String {
    match v {
        Some(x) => x.to_string(),
        None => String::new(),
    }
}

pub fn write_csv<W: Write>(mut w: W, rows: &[Row]) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{}",
            r.tau,
            r.x,
            r.y,
            r.mag2,
            opt_cell(&r.rank_q1),
            opt_cell(&r.rank_q2),
            opt_cell(&r.eps1),
            opt_cell(&r.eps2),
        )?;
    }
    Ok(())
}

pub fn write_json<W: Write>(mut w: W, meta: &Meta, rows: &[Row]) -> io::Result<()> {
    let doc = RowsDoc { meta, rows };
    serde_json::to_writer_pretty(&mut w, &doc).map_err(io::Error::from)?;
    writeln!(w)
}

/// Rank/sign histogram rows for `rank-dist`.
#[derive(Debug, Clone, Serialize)]
pub struct RankDistEntry {
    pub rank_q1: usize,
    pub rank_q2: usize,
    pub eps1: i8,
    pub eps2: i8,
    pub count: u64,
}

pub const RANK_DIST_HEADER: &str = "rank_q1,rank_q2,eps1,eps2,count";

#[derive(Serialize)]
struct RankDistDoc<'a> {
    meta: &'a Meta,
    entries: &'a [RankDistEntry],
}

pub fn write_rank_dist_csv<W: Write>(mut w: W, entries: &[RankDistEntry]) -> io::Result<()> {
    writeln!(w, "{RANK_DIST_HEADER}")?;
    for e in entries {
        writeln!(
            w,
            "{},{},{},{},{}",
            e.rank_q1, e.rank_q2, e.eps1, e.eps2, e.count
        )?;
    }
    Ok(())
}

pub fn write_rank_dist_json<W: Write>(
    mut w: W,
    meta: &Meta,
    entries: &[RankDistEntry],
) -> io::Result<()> {
    let doc = RankDistDoc { meta, entries };
    serde_json::to_writer_pretty(&mut w, &doc).map_err(io::Error::from)?;
    writeln!(w)
}

/// Compact per-shift summary used in human-readable listings.
pub fn describe_rank(r: &RankReport) -> String {
    format!(
        "rank {} radical {} eps {:+}",
        r.rank, r.radical_dim, r.epsilon
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout_with_and_without_ranks() {
        let rows = vec![
            Row {
                tau: 0,
                x: -10,
                y: 0,
                mag2: 100,
                rank_q1: Some(2),
                rank_q2: Some(4),
                eps1: Some(-1),
                eps2: Some(1),
            },
            Row::direct(1, -1, 0, 1),
        ];
        let mut buf = Vec::new();
        write_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "tau,x,y,mag2,rank_q1,rank_q2,eps1,eps2");
        assert_eq!(lines[1], "0,-10,0,100,2,4,-1,1");
        assert_eq!(lines[2], "1,-1,0,1,,,,");
        assert_eq!(lines.len(), 3);
    }

    #[test]
    fn json_is_meta_plus_rows() {
        let meta = Meta {
            command: "spectrum".into(),
            k: 1,
            n: 4,
            d: 5,
            modulus: "2,1,0,0,1".into(),
            seed: 0,
            bound: 46,
            bound_squared: 2116,
        };
        let rows = vec![Row::direct(3, 8, 0, 64)];
        let mut buf = Vec::new();
        write_json(&mut buf, &meta, &rows).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["meta"]["k"], 1);
        assert_eq!(v["meta"]["d"], 5);
        assert_eq!(v["meta"]["modulus"], "2,1,0,0,1");
        assert_eq!(v["meta"]["bound_squared"], 2116);
        assert_eq!(v["rows"][0]["tau"], 3);
        assert_eq!(v["rows"][0]["mag2"], 64);
        assert!(v["rows"][0]["rank_q1"].is_null());
    }
}
