//! JSON documents and CSV/TSV tables. Every document carries its
//! [`RunManifest`]; tables carry it as a leading `#` comment line.

use std::io::Write;
use std::path::Path;

use serde::Serialize;
use volcano_core::fd::CrossValidation;
use volcano_core::spectrum::{SpectrumReport, SplitRow, SweepRow};
use volcano_core::units::{classify_band, transition_wavelength, Band, UnitContext};

use crate::error::{CliError, Result};
use crate::manifest::RunManifest;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Tsv,
}

impl Format {
    fn delimiter(self) -> Option<u8> {
        match self {
            Format::Json => None,
            Format::Csv => Some(b','),
            Format::Tsv => Some(b'\t'),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct Document<'a, T> {
    manifest: &'a RunManifest,
    data: &'a T,
}

pub fn render<T: Serialize>(
    format: Format,
    manifest: &RunManifest,
    data: &T,
    table: impl FnOnce() -> Table,
) -> Result<String> {
    match format.delimiter() {
        None => {
            let mut s = serde_json::to_string_pretty(&Document { manifest, data })?;
            s.push('\n');
            Ok(s)
        }
        Some(d) => render_table(manifest, &table(), d),
    }
}

fn render_table(manifest: &RunManifest, table: &Table, delimiter: u8) -> Result<String> {
    let mut out = format!("# manifest {}\n", serde_json::to_string(manifest)?).into_bytes();
    {
        let mut w = csv::WriterBuilder::new().delimiter(delimiter).from_writer(&mut out);
        w.write_record(&table.header)?;
        for row in &table.rows {
            w.write_record(row)?;
        }
        w.flush().map_err(|e| CliError::Output(e.to_string()))?;
    }
    String::from_utf8(out).map_err(|e| CliError::Output(e.to_string()))
}

/// Writes to `path`, or to stdout when there is none.
pub fn emit(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Output(e.to_string()))
        }
    }
}

/// Shortest round-trip text, in exponent form for very large or small values.
fn num(x: f64) -> String {
    if x.is_finite() {
        serde_json::Number::from_f64(x)
            .map(|n| n.to_string())
            .unwrap_or_default()
    } else {
        x.to_string()
    }
}

fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

/// One row per real root; `class` is `bound` or `below_min`.
pub fn solve_table(report: &SpectrumReport) -> Table {
    let gap_of = |e: f64| report.pairs.iter().find(|p| p.low == e || p.high == e).map(|p| p.gap);
    Table {
        header: vec!["energy", "class", "converged", "residual", "first_seen_k", "pair_gap"],
        rows: report
            .states
            .iter()
            .map(|s| {
                vec![
                    num(s.energy),
                    if s.bound { "bound" } else { "below_min" }.to_string(),
                    s.converged.to_string(),
                    num(s.residual),
                    s.first_seen_k.to_string(),
                    opt_num(gap_of(s.energy)),
                ]
            })
            .collect(),
    }
}

/// Long format: one row per bound state per parameter value. A failed
/// point gets a single row with the error in `status`.
pub fn sweep_table(rows: &[SweepRow]) -> Table {
    let mut out = Vec::new();
    for r in rows {
        let t = r.transition.as_ref();
        let tail = [
            opt_num(t.map(|t| t.delta_e)),
            opt_num(t.map(|t| t.wavelength_um)),
            t.map(|t| t.band.to_string()).unwrap_or_default(),
        ];
        let head = |status: &str, index: String, energy: String| {
            let mut row = vec![
                r.param.name().to_string(),
                num(r.value),
                status.to_string(),
                index,
                energy,
            ];
            row.extend(tail.iter().cloned());
            row
        };
        match &r.error {
            Some(e) => out.push(head(&format!("error: {e}"), String::new(), String::new())),
            None if r.bound_states.is_empty() => out.push(head("empty", String::new(), String::new())),
            None => out.extend(
                r.bound_states
                    .iter()
                    .enumerate()
                    .map(|(i, e)| head("ok", i.to_string(), num(*e))),
            ),
        }
    }
    Table {
        header: vec![
            "param",
            "value",
            "status",
            "index",
            "energy",
            "delta_e",
            "wavelength_um",
            "band",
        ],
        rows: out,
    }
}

pub fn split_table(rows: &[SplitRow]) -> Table {
    Table {
        header: vec!["c", "gap", "midpoint", "note"],
        rows: rows
            .iter()
            .map(|r| {
                vec![
                    num(r.c),
                    opt_num(r.gap),
                    opt_num(r.midpoint),
                    r.note.clone().unwrap_or_default(),
                ]
            })
            .collect(),
    }
}

pub fn oracle_table(cv: &CrossValidation) -> Table {
    Table {
        header: vec!["aim", "fd", "abs_dev", "rel_dev", "agrees"],
        rows: cv
            .comparisons
            .iter()
            .map(|c| {
                vec![
                    num(c.aim),
                    opt_num(c.fd),
                    opt_num(c.abs_dev),
                    opt_num(c.rel_dev),
                    c.agrees.to_string(),
                ]
            })
            .collect(),
    }
}

/// A dimensionless energy difference in physical units.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UnitsReport {
    pub delta_e: f64,
    pub x0_angstrom: f64,
    pub mass_kg: f64,
    pub energy_scale_ev: f64,
    pub delta_e_ev: f64,
    pub wavelength_um: f64,
    pub band: Band,
}

impl UnitsReport {
    pub fn new(delta_e: f64, ctx: &UnitContext) -> Result<Self> {
        let wavelength_um = transition_wavelength(delta_e, ctx)?;
        Ok(Self {
            delta_e,
            x0_angstrom: ctx.x0_angstrom,
            mass_kg: ctx.mass_kg,
            energy_scale_ev: ctx.energy_scale_ev,
            delta_e_ev: ctx.to_ev(delta_e),
            wavelength_um,
            band: classify_band(wavelength_um),
        })
    }

    pub fn table(&self) -> Table {
        Table {
            header: vec![
                "delta_e",
                "x0_angstrom",
                "mass_kg",
                "energy_scale_ev",
                "delta_e_ev",
                "wavelength_um",
                "band",
            ],
            rows: vec![vec![
                num(self.delta_e),
                num(self.x0_angstrom),
                num(self.mass_kg),
                num(self.energy_scale_ev),
                num(self.delta_e_ev),
                num(self.wavelength_um),
                self.band.to_string(),
            ]],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use volcano_core::Param;

    fn manifest() -> RunManifest {
        RunManifest::new(vec!["test".into()], None, &())
    }

    #[test]
    fn csv_quotes_fields_with_commas() {
        let rows = [SweepRow {
            param: Param::B,
            value: 1.0,
            error: Some("bad, very bad".into()),
            bound_states: vec![],
            pair_gaps: vec![],
            transition: None,
        }];
        let text = render(Format::Csv, &manifest(), &rows, || sweep_table(&rows)).unwrap();
        let mut lines = text.lines();
        assert!(lines.next().unwrap().starts_with("# manifest {"));
        assert_eq!(
            lines.next().unwrap(),
            "param,value,status,index,energy,delta_e,wavelength_um,band"
        );
        assert_eq!(lines.next().unwrap(), "b,1.0,\"error: bad, very bad\",,,,,");
    }

    #[test]
    fn tsv_uses_tabs() {
        let rows = [SplitRow {
            c: 0.0,
            gap: Some(1e-5),
            midpoint: Some(-0.25),
            numerical_floor: true,
            note: Some("numerical floor".into()),
        }];
        let text = render(Format::Tsv, &manifest(), &rows, || split_table(&rows)).unwrap();
        assert!(text.contains("c\tgap\tmidpoint\tnote\n0.0\t0.00001\t-0.25\tnumerical floor\n"));
    }

    #[test]
    fn json_wraps_data_with_manifest() {
        let text = render(Format::Json, &manifest(), &[1.5, 2.5], || unreachable!()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["data"][1], 2.5);
        assert_eq!(v["manifest"]["schema_version"], crate::manifest::SCHEMA_VERSION);
    }

    #[test]
    fn units_report() {
        let ctx = UnitContext::electron(10.0).unwrap();
        let r = UnitsReport::new(81.51, &ctx).unwrap();
        assert!((r.wavelength_um - 0.4).abs() < 5e-4);
        assert_eq!(r.band, Band::Visible);
        assert!(UnitsReport::new(-1.0, &ctx).is_err());
    }
}
