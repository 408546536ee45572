//! Pretty, JSON and CSV renderings of command results.

use std::io::Write;

use kaehler_core::{
    ImageMembership, JacobianMatrix, JetDimensionReport, PdCertificate, PresentationReport, RankCertificate,
    SmoothnessVerdict, TorsionOutcome, TorsionVerdict,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cli::Format;
use crate::CliError;

pub enum Output {
    Matrix(JacobianMatrix),
    Smoothness(SmoothnessVerdict),
    Jet(JetDimensionReport),
    Presentation(PresentationReport),
    Rank(RankCertificate),
    Member(ImageMembership),
    Torsion(TorsionVerdict),
    /// Certificate plus variable names, for naming the pivot.
    Pd(PdCertificate, Vec<String>),
}

pub fn emit(output: &Output, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    match format {
        Format::Json => {
            let text = serde_json::to_string_pretty(&document(output)).expect("serializable");
            writeln!(out, "{text}")?;
        }
        Format::Csv => write_csv(output, out)?,
        Format::Pretty => out.write_all(pretty(output).as_bytes())?,
    }
    Ok(())
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// JSON document of a result.
pub fn document(output: &Output) -> Value {
    match output {
        Output::Matrix(jac) => matrix_json(jac),
        Output::Smoothness(v) => to_value(v),
        Output::Jet(r) => to_value(r),
        Output::Presentation(r) => to_value(r),
        Output::Rank(c) => to_value(c),
        Output::Member(m) => {
            let mut v = json!({ "verdict": if m.member { "IN" } else { "NOT_IN" } });
            if let (Value::Object(target), Value::Object(rest)) = (&mut v, to_value(m)) {
                target.extend(rest);
            }
            v
        }
        Output::Torsion(t) => to_value(t),
        Output::Pd(c, names) => {
            let mut v = json!({ "pivot_variable": names[c.pivot_var] });
            if let (Value::Object(target), Value::Object(rest)) = (&mut v, to_value(c)) {
                target.extend(rest);
            }
            v
        }
    }
}

/// `{"s","n","r","row_labels":[[i,[beta]]],"col_labels":[[alpha]],"entries":[[poly]]}`
/// with 1-based generator numbers.
pub fn matrix_json(jac: &JacobianMatrix) -> Value {
    let dims = jac.dims();
    json!({
        "s": dims.s,
        "n": dims.n,
        "r": dims.r,
        "row_labels": jac.row_labels().iter().map(|l| json!([l.generator + 1, l.shift])).collect::<Vec<_>>(),
        "col_labels": jac.col_labels(),
        "entries": jac.entries().iter()
            .map(|row| row.iter().map(|p| p.to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

fn write_csv(output: &Output, out: &mut dyn Write) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| CliError::Io(std::io::Error::other(e));
    if let Output::Matrix(jac) = output {
        let mut header = vec!["generator".to_string(), "shift".to_string()];
        header.extend(jac.col_labels().iter().map(|a| a.to_string()));
        w.write_record(&header).map_err(csv_err)?;
        for (label, row) in jac.row_labels().iter().zip(jac.entries()) {
            let mut record = vec![(label.generator + 1).to_string(), label.shift.to_string()];
            record.extend(row.iter().map(|p| p.to_string()));
            w.write_record(&record).map_err(csv_err)?;
        }
    } else if let Value::Object(map) = document(output) {
        w.write_record(map.keys()).map_err(csv_err)?;
        w.write_record(map.values().map(|v| match v {
            Value::String(s) => s.clone(),
            Value::Array(_) | Value::Object(_) => v.to_string(),
            other => other.to_string(),
        }))
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

fn point_text(p: &[kaehler_core::FieldElement]) -> String {
    format!("({})", p.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
}

fn matrix_pretty(jac: &JacobianMatrix) -> String {
    let mut cells: Vec<Vec<String>> = Vec::new();
    let mut header = vec![String::new()];
    header.extend(jac.col_labels().iter().map(|a| a.to_string()));
    cells.push(header);
    for (label, row) in jac.row_labels().iter().zip(jac.entries()) {
        let mut line = vec![format!("f{} {}", label.generator + 1, label.shift)];
        line.extend(row.iter().map(|p| p.to_string()));
        cells.push(line);
    }
    let widths: Vec<usize> =
        (0..cells[0].len()).map(|c| cells.iter().map(|r| r[c].chars().count()).max().unwrap_or(0)).collect();
    let mut s = String::new();
    for row in &cells {
        let line: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        s.push_str(line.join("  ").trim_end());
        s.push('\n');
    }
    s
}

fn verdict_name<T: Serialize>(v: &T) -> String {
    match to_value(v) {
        Value::String(s) => s,
        other => other.to_string(),
    }
}

pub fn pretty(output: &Output) -> String {
    match output {
        Output::Matrix(jac) => matrix_pretty(jac),
        Output::Smoothness(v) => format!(
            "{} rank={} M={}\npoint={} n={}\nwitness rows={:?} cols={:?} det={}\n",
            verdict_name(&v.verdict),
            v.rank,
            v.big_m,
            point_text(&v.point),
            v.n,
            v.certificate.witness_rows,
            v.certificate.witness_cols,
            v.certificate.witness_det
        ),
        Output::Jet(r) => format!(
            "jet_dim={} threshold={} regular={}\npoint={} n={}\n",
            r.jet_dim,
            r.threshold,
            r.regular,
            point_text(&r.point),
            r.n
        ),
        Output::Presentation(r) => format!(
            "0 -> B^{} -> B^{} -> Omega^({}) -> 0\nfree_rank={} relation_rows={} quotient_lifts={} generic_rank={} expected_fiber_dim={}\nN={} M={} L={}\n",
            r.relation_rows,
            r.free_rank,
            r.dims.n,
            r.free_rank,
            r.relation_rows,
            r.quotient_lifts,
            r.generic_rank,
            r.expected_fiber_dim,
            r.dims.big_n,
            r.dims.big_m,
            r.dims.big_l
        ),
        Output::Rank(c) => format!(
            "rank={}\nwitness rows={:?} cols={:?} det={}\n",
            c.rank, c.witness_rows, c.witness_cols, c.witness_det
        ),
        Output::Member(m) => match &m.certificate {
            Some(c) => format!("IN\ncertificate: {} terms, verified\n", c.terms.len()),
            None if m.member => "IN\n".to_string(),
            None => "NOT_IN\n".to_string(),
        },
        Output::Torsion(t) => {
            let mut s = format!(
                "{}\nh_nonzero_in_B={} hm_in_image={} m_in_image={}\n",
                verdict_name(&t.verdict),
                t.checks.h_nonzero_in_b,
                t.checks.hm_in_image,
                t.checks.m_in_image
            );
            if let Some(c) = &t.hm_certificate {
                s.push_str(&format!("h*m certificate: {} terms, verified\n", c.terms.len()));
            }
            if t.verdict == TorsionOutcome::ClassIsZero {
                if let Some(c) = &t.m_certificate {
                    s.push_str(&format!("m certificate: {} terms, verified\n", c.terms.len()));
                }
            }
            s
        }
        Output::Pd(c, names) => format!(
            "{} pivot_var={} M={} echelon={}\nminor rows={:?} cols={:?} det={}\n",
            if c.verified { "CERTIFIED" } else { "UNVERIFIED" },
            names[c.pivot_var],
            c.big_m,
            c.echelon.holds,
            c.minor.witness_rows,
            c.minor.witness_cols,
            c.minor.witness_det
        ),
    }
}
