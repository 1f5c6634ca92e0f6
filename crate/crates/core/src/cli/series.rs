use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::analytic::AmplitudeState;
use crate::dynamics::DensityMatrix5;
use crate::entanglement::{
    concurrence, concurrence_atoms_closed, concurrence_cavities_closed, partial_trace_atoms,
    partial_trace_cavities,
};
use crate::error::{Error, Result};

pub const CSV_HEADER: &str = "t,p_a,p_b,p_c,p_d,p_e,c_at,c_cav";

/// One row: occupation probabilities of `a..e` and both concurrences.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesPoint {
    pub t: f64,
    pub populations: [f64; 5],
    pub c_at: f64,
    pub c_cav: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct TimeSeries {
    pub points: Vec<SeriesPoint>,
}

impl TimeSeries {
    /// Rows from closed-form or integrated amplitudes; concurrences use the
    /// `2|α||γ|`, `2|β||δ|` closed forms.
    pub fn from_amplitudes(states: &[AmplitudeState]) -> Self {
        let points = states
            .iter()
            .map(|s| SeriesPoint {
                t: s.t,
                populations: s.populations(),
                c_at: concurrence_atoms_closed(s.alpha, s.gamma),
                c_cav: concurrence_cavities_closed(s.beta, s.delta),
            })
            .collect();
        Self { points }
    }

    /// Rows from density matrices; concurrences go through the partial
    /// traces and the general two-qubit formula.
    pub fn from_densities(states: &[DensityMatrix5]) -> Result<Self> {
        let points = states
            .iter()
            .map(|rho| {
                let reduced = |e: Error| match e {
                    Error::InvalidState(msg) => Error::InvalidState(format!(
                        "reduced state at t = {}: {msg} (a smaller dt may help)",
                        rho.t()
                    )),
                    other => other,
                };
                Ok(SeriesPoint {
                    t: rho.t(),
                    populations: rho.populations(),
                    c_at: concurrence(&partial_trace_cavities(rho)).map_err(reduced)?,
                    c_cav: concurrence(&partial_trace_atoms(rho)).map_err(reduced)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn times(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.t).collect()
    }

    pub fn c_at(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.c_at).collect()
    }

    pub fn c_cav(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.c_cav).collect()
    }

    /// Row sums of the populations must be 1 within `1e-8` and both
    /// concurrences must lie in `[0, 1]`.
    pub fn validate(&self) -> Result<()> {
        for (row, p) in self.points.iter().enumerate() {
            let sum: f64 = p.populations.iter().sum();
            if (sum - 1.0).abs() > 1e-8 {
                return Err(Error::InvalidState(format!(
                    "row {row} (t = {}): populations sum to {sum}",
                    p.t
                )));
            }
            for (name, c) in [("c_at", p.c_at), ("c_cav", p.c_cav)] {
                if !(0.0..=1.0).contains(&c) {
                    return Err(Error::InvalidState(format!(
                        "row {row}: {name} = {c} outside [0, 1]"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `x` with 12 significant digits, fixed notation for exponents in
/// `[-4, 12)` and scientific otherwise, trailing zeros removed.
pub fn format_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exponent) = sci.split_once('e').expect("exponent marker");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    if (-4..12).contains(&exponent) {
        let decimals = (11 - exponent) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    } else {
        format!("{}e{exponent}", trim_fraction(mantissa))
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Writes the series as CSV (header plus one LF-terminated row per point).
pub fn write_csv<W: Write>(series: &TimeSeries, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for p in &series.points {
        let mut line = format_sig12(p.t);
        for v in p.populations.iter().chain([&p.c_at, &p.c_cav]) {
            line.push(',');
            line.push_str(&format_sig12(*v));
        }
        line.push('\n');
        out.write_all(line.as_bytes())?;
    }
    Ok(())
}

/// Validates `series` and writes it to `path`.
pub fn emit_csv(series: &TimeSeries, path: &Path) -> Result<()> {
    series.validate()?;
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut writer = BufWriter::new(file);
    write_csv(series, &mut writer).map_err(|e| Error::io(path, e))?;
    writer.flush().map_err(|e| Error::io(path, e))
}

/// Parses text produced by [`write_csv`].
pub fn parse_csv(text: &str) -> Result<TimeSeries> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == CSV_HEADER => {}
        _ => {
            return Err(Error::Parse {
                line: 1,
                message: format!("expected header `{CSV_HEADER}`"),
            })
        }
    }
    let mut points = Vec::new();
    for (idx, line) in lines {
        let values: Vec<f64> = line
            .split(',')
            .map(|field| field.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse {
                line: idx + 1,
                message: e.to_string(),
            })?;
        if values.len() != 8 {
            return Err(Error::Parse {
                line: idx + 1,
                message: format!("expected 8 fields, found {}", values.len()),
            });
        }
        points.push(SeriesPoint {
            t: values[0],
            populations: [values[1], values[2], values[3], values[4], values[5]],
            c_at: values[6],
            c_cav: values[7],
        });
    }
    Ok(TimeSeries { points })
}
