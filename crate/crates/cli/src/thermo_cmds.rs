//! `partition`, `beta-max`, `spectrum` and `multiplicities`.

use rayon::prelude::*;
use serde_json::{json, Value};

use fockforge::oneparticle::LowestWeightIrrep;
use fockforge::thermo::{beta_max, multiplicities, partition_closed, partition_truncated, split_annotation};

use crate::format::{num, opt_num, sci, sig, Table};
use crate::CliError;

/// Inclusive linear grid; `steps ≥ 2`, `start < stop`.
pub fn linspace(start: f64, stop: f64, steps: usize) -> Result<Vec<f64>, CliError> {
    if !(start < stop) || !start.is_finite() || !stop.is_finite() {
        return Err(CliError::Config(format!("beta-range needs START < STOP, got {start} {stop}")));
    }
    if steps < 2 {
        return Err(CliError::Config(format!("beta-range needs STEPS >= 2, got {steps}")));
    }
    let h = (stop - start) / (steps - 1) as f64;
    Ok((0..steps).map(|i| if i + 1 == steps { stop } else { start + h * i as f64 }).collect())
}

pub fn partition(weight: u32, betas: &[f64], m_max: usize) -> Result<(Table, String), CliError> {
    if let Some(b) = betas.iter().find(|b| !(**b > 0.0) || !b.is_finite()) {
        return Err(CliError::Config(format!("beta must be positive, got {b}")));
    }
    let annotation = split_annotation(weight)?;
    let rows = betas
        .par_iter()
        .map(|&beta| -> Result<_, CliError> {
            let closed = partition_closed(weight, beta)?;
            let trunc = partition_truncated(weight, beta, m_max)?;
            Ok((beta, closed, trunc))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut csv_rows = Vec::with_capacity(rows.len());
    let mut json_rows = Vec::with_capacity(rows.len());
    for (beta, closed, trunc) in rows {
        let status = if closed.is_finite() { "finite" } else { "divergent" };
        csv_rows.push(vec![
            sig(beta),
            sci(closed.q),
            status.to_string(),
            closed.value().map(sig).unwrap_or_default(),
            sig(trunc.value),
            trunc.tail_bound.map(sci).unwrap_or_default(),
        ]);
        json_rows.push(json!({
            "beta": num(beta),
            "q": num(closed.q),
            "status": status,
            "value": opt_num(closed.value()),
            "truncated": num(trunc.value),
            "tail_bound": opt_num(trunc.tail_bound),
        }));
    }
    let table = Table {
        command: "partition",
        header: vec!["beta", "q", "status", "value", "truncated", "tail_bound"],
        csv_rows,
        json_rows,
        extra: vec![
            ("weight", json!(weight)),
            ("m_max", json!(m_max)),
            ("annotation", Value::String(annotation.clone())),
        ],
    };
    Ok((table, annotation))
}

/// Parses `a..b` (inclusive) or a single weight.
pub fn parse_weights(spec: &str) -> Result<Vec<u32>, CliError> {
    let bad = || CliError::Config(format!("weights must look like A..B with 1 <= A <= B, got {spec:?}"));
    let (a, b) = match spec.split_once("..") {
        Some((a, b)) => (a.trim().parse::<u32>().map_err(|_| bad())?, b.trim().parse::<u32>().map_err(|_| bad())?),
        None => {
            let n = spec.trim().parse::<u32>().map_err(|_| bad())?;
            (n, n)
        }
    };
    if a == 0 || a > b {
        return Err(bad());
    }
    Ok((a..=b).collect())
}

pub fn beta_max_table(weights: &[u32]) -> Result<Table, CliError> {
    let roots = weights.par_iter().map(|&n| beta_max(n)).collect::<Result<Vec<_>, _>>()?;
    let csv_rows = roots
        .iter()
        .map(|r| vec![r.weight.to_string(), sig(r.beta), sig(r.x_root), sci(r.residual)])
        .collect();
    let json_rows = roots
        .iter()
        .map(|r| {
            json!({
                "n": r.weight,
                "beta_n": num(r.beta),
                "x_root": num(r.x_root),
                "residual": num(r.residual),
            })
        })
        .collect();
    Ok(Table {
        command: "beta-max",
        header: vec!["n", "beta_n", "x_root", "residual"],
        csv_rows,
        json_rows,
        extra: vec![],
    })
}

pub fn spectrum(weight: u32, d: usize, beta: Option<f64>) -> Result<Table, CliError> {
    if let Some(b) = beta {
        if !(b > 0.0) || !b.is_finite() {
            return Err(CliError::Config(format!("beta must be positive, got {b}")));
        }
    }
    let irrep = LowestWeightIrrep::new(weight, d)?;
    let gibbs = beta.map(|b| irrep.gibbs_factor(b));
    let mut csv_rows = Vec::new();
    let mut json_rows = Vec::new();
    for (k, e) in irrep.rotation_spectrum().into_iter().enumerate() {
        let g = gibbs.as_ref().map(|g| g[(k, k)]);
        csv_rows.push(vec![k.to_string(), sig(e), g.map(sig).unwrap_or_default()]);
        json_rows.push(json!({ "k": k, "energy": num(e), "gibbs": opt_num(g) }));
    }
    Ok(Table {
        command: "spectrum",
        header: vec!["k", "energy", "gibbs"],
        csv_rows,
        json_rows,
        extra: vec![("weight", json!(weight))],
    })
}

pub fn multiplicity_table(weight: u32, m_max: usize) -> Result<Table, CliError> {
    let table = multiplicities(weight, m_max)?;
    let csv_rows = table.nu().iter().enumerate().map(|(m, nu)| vec![m.to_string(), nu.to_string()]).collect();
    // exact integers as strings: they overflow every JSON number type
    let json_rows = table.nu().iter().enumerate().map(|(m, nu)| json!({ "m": m, "nu": nu.to_string() })).collect();
    Ok(Table {
        command: "multiplicities",
        header: vec!["m", "nu"],
        csv_rows,
        json_rows,
        extra: vec![("weight", json!(weight))],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linspace_is_inclusive() {
        let g = linspace(0.12, 0.5, 10).unwrap();
        assert_eq!(g.len(), 10);
        assert_eq!(g[0], 0.12);
        assert_eq!(g[9], 0.5);
        assert!(linspace(0.5, 0.12, 10).is_err());
        assert!(linspace(0.1, 0.2, 1).is_err());
    }

    #[test]
    fn weight_ranges() {
        assert_eq!(parse_weights("1..8").unwrap(), (1..=8).collect::<Vec<_>>());
        assert_eq!(parse_weights("3").unwrap(), vec![3]);
        assert!(parse_weights("0..2").is_err());
        assert!(parse_weights("5..2").is_err());
        assert!(parse_weights("a..b").is_err());
    }
}
