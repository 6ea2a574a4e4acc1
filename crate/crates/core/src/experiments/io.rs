//! CSV input and output for sweep results.

use std::io::{Read, Write};

use serde::Serialize;

use super::compare::ComparisonReport;
use super::sweep::{RunRecord, SweepSummary};
use crate::society::Mode;

pub type CsvResult<T> = Result<T, csv::Error>;

/// Writer whose header is written by hand, so it appears even with no rows.
fn headerless<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().has_headers(false).from_writer(out)
}

/// Raw CSV: one line per run.
pub fn write_raw<W: Write>(out: W, runs: &[RunRecord]) -> CsvResult<()> {
    let mut w = headerless(out);
    w.write_record([
        "set",
        "experiment_no",
        "num_avs",
        "mode",
        "rep",
        "seed",
        "ticks",
        "collisions",
    ])?;
    for r in runs {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_raw<R: Read>(input: R) -> CsvResult<Vec<RunRecord>> {
    csv::Reader::from_reader(input).deserialize().collect()
}

#[derive(Serialize)]
struct SummaryLine<'a> {
    set: &'a str,
    num_avs: usize,
    mode: Mode,
    mean: f64,
    stdev: f64,
}

/// Summary CSV: one line per row of each summary.
pub fn write_summary<W: Write>(out: W, summaries: &[&SweepSummary]) -> CsvResult<()> {
    let mut w = headerless(out);
    w.write_record(["set", "num_avs", "mode", "mean", "stdev"])?;
    for s in summaries {
        for r in &s.rows {
            w.serialize(SummaryLine {
                set: &s.set,
                num_avs: r.num_avs,
                mode: r.mode,
                mean: r.mean,
                stdev: r.stdev,
            })?;
        }
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct ComparisonLine<'a> {
    set_a: &'a str,
    set_b: &'a str,
    num_avs: usize,
    mean_a: f64,
    mean_b: f64,
    delta: f64,
    ratio: f64,
    pass: bool,
}

pub fn write_comparisons<W: Write>(out: W, reports: &[ComparisonReport]) -> CsvResult<()> {
    let mut w = headerless(out);
    w.write_record([
        "set_a", "set_b", "num_avs", "mean_a", "mean_b", "delta", "ratio", "pass",
    ])?;
    for rep in reports {
        for r in &rep.rows {
            w.serialize(ComparisonLine {
                set_a: &rep.set_a,
                set_b: &rep.set_b,
                num_avs: r.num_avs,
                mean_a: r.mean_a,
                mean_b: r.mean_b,
                delta: r.delta,
                ratio: r.ratio,
                pass: r.pass,
            })?;
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn raw_round_trip() {
        let runs = vec![RunRecord {
            set: "A1-s2".into(),
            experiment_no: 1,
            num_avs: 10,
            mode: Mode::RandomWalk,
            rep: 0,
            seed: 1,
            ticks: 1000,
            collisions: 17,
        }];
        let mut buf = Vec::new();
        write_raw(&mut buf, &runs).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(
            text,
            "set,experiment_no,num_avs,mode,rep,seed,ticks,collisions\nA1-s2,1,10,random-walk,0,1,1000,17\n"
        );
        assert_eq!(read_raw(&buf[..]).unwrap(), runs);
    }
}
