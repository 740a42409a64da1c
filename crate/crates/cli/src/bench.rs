use std::io::Write;
use std::time::Instant;

use geoknap::generate::{Corpus, CorpusEntry};
use geoknap::solvers::{
    brute_force_oracle_with, solve_cardinality_with, solve_weighted_with, SolveConfig,
};
use geoknap::{Error, Rat, Result};
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Card,
    Weighted,
}

impl Mode {
    pub fn parse(s: &str) -> Result<Mode> {
        match s {
            "card" | "cardinality" => Ok(Mode::Card),
            "weighted" => Ok(Mode::Weighted),
            _ => Err(Error::Parameter(format!("unknown mode {s:?}"))),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Mode::Card => "card",
            Mode::Weighted => "weighted",
        }
    }
}

#[derive(Debug)]
pub struct Row {
    pub instance: String,
    pub mode: &'static str,
    pub profit: i64,
    pub oracle: Option<i64>,
    pub ratio: Option<f64>,
    pub wall_ms: u128,
}

/// Optimum from the corpus if recorded, otherwise from the brute-force oracle
/// when the instance is small enough.
fn optimum(e: &CorpusEntry, cfg: &SolveConfig) -> Result<Option<i64>> {
    if e.optimum.is_some() {
        return Ok(e.optimum);
    }
    if e.instance.items.len() > cfg.oracle_cap {
        return Ok(None);
    }
    Ok(Some(
        brute_force_oracle_with(&e.instance, cfg.oracle_cap)?.0,
    ))
}

fn run_one(e: &CorpusEntry, mode: Mode, eps: Rat, cfg: &SolveConfig, oracle: bool) -> Result<Row> {
    let start = Instant::now();
    let report = match mode {
        Mode::Card => solve_cardinality_with(&e.instance, eps, cfg)?,
        Mode::Weighted => solve_weighted_with(&e.instance, eps, cfg)?,
    };
    let wall_ms = start.elapsed().as_millis();
    let opt = if oracle { optimum(e, cfg)? } else { None };
    let ratio = opt.map(|o| {
        if o == 0 {
            1.0
        } else {
            report.profit as f64 / o as f64
        }
    });
    Ok(Row {
        instance: e.name.clone(),
        mode: mode.name(),
        profit: report.profit,
        oracle: opt,
        ratio,
        wall_ms,
    })
}

/// Solves every corpus entry in every mode in parallel; rows keep corpus order.
pub fn run(
    corpus: &Corpus,
    modes: &[Mode],
    eps: Rat,
    cfg: &SolveConfig,
    oracle: bool,
) -> Result<Vec<Row>> {
    let jobs: Vec<(&CorpusEntry, Mode)> = corpus
        .entries
        .iter()
        .flat_map(|e| modes.iter().map(move |&m| (e, m)))
        .collect();
    jobs.par_iter()
        .map(|&(e, m)| run_one(e, m, eps, cfg, oracle))
        .collect()
}

pub fn write_csv(rows: &[Row], out: impl Write) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["instance", "mode", "profit", "oracle", "ratio", "wall_ms"])?;
    for r in rows {
        w.write_record([
            r.instance.clone(),
            r.mode.to_string(),
            r.profit.to_string(),
            r.oracle.map(|o| o.to_string()).unwrap_or_default(),
            r.ratio.map(|x| format!("{x:.6}")).unwrap_or_default(),
            r.wall_ms.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_corpus_gives_header_only() {
        let rows = run(
            &Corpus::default(),
            &[Mode::Card],
            geoknap::rat(1, 13),
            &SolveConfig::default(),
            true,
        )
        .unwrap();
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "instance,mode,profit,oracle,ratio,wall_ms\n"
        );
    }

    #[test]
    fn modes_parse() {
        assert_eq!(Mode::parse("card").unwrap(), Mode::Card);
        assert_eq!(Mode::parse("weighted").unwrap(), Mode::Weighted);
        assert!(Mode::parse("rot").is_err());
    }
}
