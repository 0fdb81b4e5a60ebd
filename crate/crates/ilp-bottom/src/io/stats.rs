use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::IoError;

/// One benchmark run. Field order is the CSV column order.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct StatsRow {
    pub task: String,
    pub mode: String,
    pub seed: u64,
    pub solved: bool,
    pub time_total: f64,
    pub time_preprocess: f64,
    pub time_variantgen: f64,
    pub time_generate: f64,
    pub time_test: f64,
    pub time_constrain: f64,
    pub programs_generated: u64,
    pub variants_generated: u64,
    pub solution_literals: u64,
    pub non_optimal: bool,
    pub accuracy: Option<f64>,
    pub timeouts_during_test: u64,
}

struct Counting<W> {
    inner: W,
    bytes: usize,
}

impl<W: Write> Write for Counting<W> {
    fn write(&mut self, buf: &[u8]) -> std::io::Result<usize> {
        let n = self.inner.write(buf)?;
        self.bytes += n;
        Ok(n)
    }

    fn flush(&mut self) -> std::io::Result<()> {
        self.inner.flush()
    }
}

/// Writes a header and one line per row; returns the number of bytes written.
pub fn write_stats_csv<W: Write>(rows: &[StatsRow], sink: W) -> Result<usize, IoError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Counting { inner: sink, bytes: 0 });
    // serde only emits a header alongside the first record
    w.write_record([
        "task",
        "mode",
        "seed",
        "solved",
        "time_total",
        "time_preprocess",
        "time_variantgen",
        "time_generate",
        "time_test",
        "time_constrain",
        "programs_generated",
        "variants_generated",
        "solution_literals",
        "non_optimal",
        "accuracy",
        "timeouts_during_test",
    ])?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    let inner = w.into_inner().map_err(|e| IoError::Io(e.into_error()))?;
    Ok(inner.bytes)
}

pub fn read_stats_csv<R: Read>(src: R) -> Result<Vec<StatsRow>, IoError> {
    let mut r = csv::Reader::from_reader(src);
    let mut out = Vec::new();
    for row in r.deserialize() {
        out.push(row?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(i: u64) -> StatsRow {
        StatsRow {
            task: "trains".into(),
            mode: if i % 2 == 0 { "baseline".into() } else { "both".into() },
            seed: i,
            solved: true,
            time_total: 0.25 * i as f64,
            programs_generated: 10 + i,
            accuracy: if i % 3 == 0 { None } else { Some(0.5) },
            ..Default::default()
        }
    }

    #[test]
    fn empty_is_header_only() {
        let mut buf = Vec::new();
        let n = write_stats_csv(&[], &mut buf).unwrap();
        assert_eq!(n, buf.len());
        let s = String::from_utf8(buf).unwrap();
        assert_eq!(s.lines().count(), 1);
        assert!(s.starts_with("task,mode,seed,solved,time_total"));
    }

    #[test]
    fn one_run_two_lines() {
        let mut buf = Vec::new();
        write_stats_csv(&[row(1)], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 2);
    }

    #[test]
    fn many_rows_round_trip() {
        let rows: Vec<StatsRow> = (0..200).map(row).collect();
        let mut buf = Vec::new();
        write_stats_csv(&rows, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap().lines().count(), 201);
        let back = read_stats_csv(buf.as_slice()).unwrap();
        assert_eq!(back, rows);
        let mean = |m: &str| {
            let xs: Vec<f64> = back.iter().filter(|r| r.mode == m).map(|r| r.programs_generated as f64).collect();
            xs.iter().sum::<f64>() / xs.len() as f64
        };
        assert_eq!(mean("baseline"), 109.0);
        assert_eq!(mean("both"), 110.0);
    }
}
