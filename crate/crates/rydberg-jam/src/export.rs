//! CSV tables. Floats use [`crate::format::sig`]; counts are exact decimal
//! strings.

use std::io::Write;

use anyhow::Result;
use csv::Writer;

use rydberg_jam_core::complexity::ComplexityPoint;
use rydberg_jam_core::genfunc::{CoeffTable, TableModel};
use rydberg_jam_core::model::JammedCounts;
use rydberg_jam_core::quadrature::QuadratureResult;
use rydberg_jam_core::rsa::{ScaledLimitRow, SimSummary};

use crate::format::{sig, sig_opt};

/// `b,N,L,count` per nonzero `N`, then an `all` row with `J_L`.
pub fn write_enumeration<W: Write>(out: W, counts: &JammedCounts) -> Result<()> {
    let rows: Vec<(usize, String)> = counts.nonzero().map(|(n, c)| (n, c.to_string())).collect();
    write_count_rows(
        out,
        counts.params.b(),
        counts.length,
        &rows,
        &counts.total().to_string(),
    )
}

/// [`write_enumeration`] read off a generating-function table, for lengths
/// beyond the brute-force cap.
pub fn write_enumeration_from_table<W: Write>(
    out: W,
    table: &CoeffTable,
    length: usize,
) -> Result<()> {
    let TableModel::Rydberg(p) = table.model() else {
        anyhow::bail!("enumeration tables are defined for the blockade model only");
    };
    let rows: Vec<(usize, String)> = table
        .row(length)
        .filter(|(_, c)| c.bits() > 0)
        .map(|(n, c)| (n, c.to_string()))
        .collect();
    write_count_rows(out, p.b(), length, &rows, &table.total(length).to_string())
}

fn write_count_rows<W: Write>(
    out: W,
    b: usize,
    length: usize,
    rows: &[(usize, String)],
    total: &str,
) -> Result<()> {
    let mut w = Writer::from_writer(out);
    let b = b.to_string();
    let l = length.to_string();
    w.write_record(["b", "N", "L", "count"])?;
    for (n, c) in rows {
        w.write_record([b.as_str(), &n.to_string(), &l, c])?;
    }
    w.write_record([b.as_str(), "all", &l, total])?;
    w.flush()?;
    Ok(())
}

/// `b,N,L,count` (or `k,N,L,count`) for every stored coefficient, ordered by
/// `L` then `N`.
pub fn write_coefficients<W: Write>(out: W, table: &CoeffTable) -> Result<()> {
    let mut w = Writer::from_writer(out);
    let (key, value) = match table.model() {
        TableModel::Rydberg(p) => ("b", p.b()),
        TableModel::Kmer { k } => ("k", k),
    };
    let value = value.to_string();
    w.write_record([key, "N", "L", "count"])?;
    for (n, l, c) in table.iter() {
        w.write_record([
            value.as_str(),
            &n.to_string(),
            &l.to_string(),
            &c.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// `b,rho,z,f` (or `k,rho,z,f` in coverage units); `z` is empty where no
/// root is defined.
pub fn write_complexity<W: Write>(
    out: W,
    key: &str,
    value: usize,
    rows: &[ComplexityPoint],
) -> Result<()> {
    let mut w = Writer::from_writer(out);
    let value = value.to_string();
    w.write_record([key, "rho", "z", "f"])?;
    for r in rows {
        w.write_record([value.clone(), sig(r.rho), sig_opt(r.z), sig(r.f)])?;
    }
    w.flush()?;
    Ok(())
}

/// One row of the `rho-star` / `compare` tables. `rho_inf` is `None` when
/// its quadrature failed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquilibriumRow {
    pub b: usize,
    pub rho_star: f64,
    pub rho_inf: Option<f64>,
    pub f_at_star: f64,
    pub ln_w_b: f64,
}

pub const EQUILIBRIUM_HEADER: [&str; 7] = [
    "b",
    "rho_star",
    "rho_inf",
    "b_rho_star",
    "b_rho_inf",
    "f_at_star",
    "ln_w_b",
];

const ERROR_CELL: &str = "error";

/// A missing `rho_inf` is written as `error` in both columns that need it.
pub fn write_equilibrium<W: Write>(out: W, rows: &[EquilibriumRow]) -> Result<()> {
    let mut w = Writer::from_writer(out);
    w.write_record(EQUILIBRIUM_HEADER)?;
    for r in rows {
        let bf = r.b as f64;
        let inf = |scale: f64| {
            r.rho_inf
                .map(|v| sig(scale * v))
                .unwrap_or_else(|| ERROR_CELL.into())
        };
        w.write_record([
            r.b.to_string(),
            sig(r.rho_star),
            inf(1.0),
            sig(bf * r.rho_star),
            inf(bf),
            sig(r.f_at_star),
            sig(r.ln_w_b),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// `k,rho_star,rho_inf` in coverage units.
pub fn write_kmer_equilibrium<W: Write>(out: W, rows: &[(usize, f64, Option<f64>)]) -> Result<()> {
    let mut w = Writer::from_writer(out);
    w.write_record(["k", "rho_star", "rho_inf"])?;
    for (k, star, inf) in rows {
        let inf = inf.map(sig).unwrap_or_else(|| ERROR_CELL.into());
        w.write_record([k.to_string(), sig(*star), inf])?;
    }
    w.flush()?;
    Ok(())
}

/// `key,rho_inf,abs_error_estimate,evaluations` for a single quadrature.
pub fn write_quadrature<W: Write>(
    out: W,
    key: &str,
    value: usize,
    r: &QuadratureResult,
) -> Result<()> {
    let mut w = Writer::from_writer(out);
    w.write_record([key, "rho_inf", "abs_error_estimate", "evaluations"])?;
    w.write_record([
        value.to_string(),
        sig(r.value),
        sig(r.abs_error_estimate),
        r.evaluations.to_string(),
    ])?;
    w.flush()?;
    Ok(())
}

/// `b,b_rho_inf,b_times_direct`: the substituted integral next to `b` times
/// the direct one.
pub fn write_scaled_limits<W: Write>(out: W, rows: &[ScaledLimitRow]) -> Result<()> {
    let mut w = Writer::from_writer(out);
    w.write_record(["b", "b_rho_inf", "b_times_direct"])?;
    for r in rows {
        w.write_record([r.b.to_string(), sig(r.b_rho_inf), sig(r.b_times_direct)])?;
    }
    w.flush()?;
    Ok(())
}

/// `renyi_constant,abs_error_estimate,evaluations`.
pub fn write_renyi<W: Write>(out: W, r: &QuadratureResult) -> Result<()> {
    let mut w = Writer::from_writer(out);
    w.write_record(["renyi_constant", "abs_error_estimate", "evaluations"])?;
    w.write_record([
        sig(r.value),
        sig(r.abs_error_estimate),
        r.evaluations.to_string(),
    ])?;
    w.flush()?;
    Ok(())
}

/// `length,b,trials,seed,mean_density,std_error`.
pub fn write_simulation_csv<W: Write>(
    out: W,
    length: usize,
    b: usize,
    s: &SimSummary,
) -> Result<()> {
    let mut w = Writer::from_writer(out);
    w.write_record(["length", "b", "trials", "seed", "mean_density", "std_error"])?;
    w.write_record([
        length.to_string(),
        b.to_string(),
        s.trials.to_string(),
        s.seed.to_string(),
        sig(s.mean_density),
        sig(s.std_error),
    ])?;
    w.flush()?;
    Ok(())
}

/// JSON lines: one `summary` object, then one `trial` object per trial if
/// `per_trial` is set. Numbers are full-precision JSON floats.
pub fn write_simulation_jsonl<W: Write>(
    mut out: W,
    length: usize,
    b: usize,
    s: &SimSummary,
    per_trial: bool,
) -> Result<()> {
    let summary = serde_json::json!({
        "type": "summary",
        "length": length,
        "b": b,
        "trials": s.trials,
        "seed": s.seed,
        "mean_density": s.mean_density,
        "std_error": s.std_error,
    });
    writeln!(out, "{summary}")?;
    if per_trial {
        for (t, d) in s.per_trial_densities.iter().enumerate() {
            let line = serde_json::json!({"type": "trial", "trial": t, "density": d});
            writeln!(out, "{line}")?;
        }
    }
    out.flush()?;
    Ok(())
}
