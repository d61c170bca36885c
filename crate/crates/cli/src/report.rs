//! Run reports and their CSV/JSON serializations.
//!
//! Column order is fixed: case, solver, result, fval, cd_n_or_en,
//! iterations, time_ms, status. Floats are written with 17 significant
//! digits so re-parsing reproduces them bit for bit; the correct-digits
//! metric is capped at 16 for display and an exact hit prints as `exact`.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

/// Number of correct digits: -log10 |t_ref - t_got|, infinite on an exact hit.
pub fn cd_n(t_star: f64, t_approx: f64) -> f64 {
    let diff = (t_star - t_approx).abs();
    if diff == 0.0 {
        f64::INFINITY
    } else {
        -diff.log10()
    }
}

/// 17-significant-digit rendering, enough to round-trip any f64.
pub fn fmt_g17(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug, Clone, PartialEq)]
pub enum ResultValue {
    Scalar(f64),
    Vector(Vec<f64>),
    Omitted(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MetricValue {
    /// Correct digits against the 1-D reference.
    Cd(f64),
    /// Exact hit (infinite correct digits).
    CdExact,
    /// Euclidean error norm against the reference point.
    ErrorNorm(f64),
    /// No reference available.
    Absent,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseRow {
    pub case_name: String,
    pub solver: String,
    pub result: ResultValue,
    pub fval: f64,
    pub metric: MetricValue,
    pub iterations: usize,
    pub time_ms: f64,
    pub status: String,
    /// Drives the exit code; not serialized.
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub suite: String,
    pub rows: Vec<CaseRow>,
}

impl RunReport {
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }
}

pub const CSV_HEADER: &str = "case,solver,result,fval,cd_n_or_en,iterations,time_ms,status";

fn result_field(r: &ResultValue) -> String {
    match r {
        ResultValue::Scalar(v) => fmt_g17(*v),
        ResultValue::Vector(v) => v.iter().map(|x| fmt_g17(*x)).collect::<Vec<_>>().join(";"),
        ResultValue::Omitted(d) => format!("omitted(d={d})"),
    }
}

fn metric_field(m: &MetricValue) -> String {
    match m {
        MetricValue::Cd(v) => fmt_g17(v.min(16.0)),
        MetricValue::CdExact => "exact".into(),
        MetricValue::ErrorNorm(v) => fmt_g17(*v),
        MetricValue::Absent => "-".into(),
    }
}

pub fn to_csv(report: &RunReport) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in &report.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{:.3},{}",
            r.case_name,
            r.solver,
            result_field(&r.result),
            fmt_g17(r.fval),
            metric_field(&r.metric),
            r.iterations,
            r.time_ms,
            r.status
        );
    }
    out
}

fn json_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn to_json(report: &RunReport) -> String {
    let mut out = String::new();
    let _ = write!(
        out,
        "{{\"suite\":\"{}\",\"rows\":[",
        json_escape(&report.suite)
    );
    for (i, r) in report.rows.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let result = match &r.result {
            ResultValue::Scalar(v) => fmt_g17(*v),
            ResultValue::Vector(v) => format!(
                "[{}]",
                v.iter().map(|x| fmt_g17(*x)).collect::<Vec<_>>().join(",")
            ),
            ResultValue::Omitted(d) => format!("\"omitted(d={d})\""),
        };
        let metric = match &r.metric {
            MetricValue::Cd(v) => fmt_g17(v.min(16.0)),
            MetricValue::CdExact => "\"exact\"".into(),
            MetricValue::ErrorNorm(v) => fmt_g17(*v),
            MetricValue::Absent => "null".into(),
        };
        let _ = write!(
            out,
            "{{\"case\":\"{}\",\"solver\":\"{}\",\"result\":{},\"fval\":{},\"cd_n_or_en\":{},\"iterations\":{},\"time_ms\":{:.3},\"status\":\"{}\"}}",
            json_escape(&r.case_name),
            json_escape(&r.solver),
            result,
            fmt_g17(r.fval),
            metric,
            r.iterations,
            r.time_ms,
            json_escape(&r.status)
        );
    }
    out.push_str("]}");
    out
}

/// Parse a CSV report back into rows (metric kinds are inferred from the
/// suite-independent field forms). Used by the round-trip tests.
pub fn parse_csv(text: &str) -> Result<RunReport, String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty report")?;
    if header != CSV_HEADER {
        return Err(format!("unexpected header `{header}`"));
    }
    let mut rows = Vec::new();
    for (ln, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 8 {
            return Err(format!(
                "row {}: expected 8 columns, got {}",
                ln + 1,
                cols.len()
            ));
        }
        let result = if let Some(rest) = cols[2].strip_prefix("omitted(d=") {
            let d: usize = rest
                .trim_end_matches(')')
                .parse()
                .map_err(|_| format!("row {}: bad omitted dim", ln + 1))?;
            ResultValue::Omitted(d)
        } else if cols[2].contains(';') {
            let vals = cols[2]
                .split(';')
                .map(|v| v.parse::<f64>().map_err(|e| e.to_string()))
                .collect::<Result<Vec<_>, _>>()?;
            ResultValue::Vector(vals)
        } else {
            ResultValue::Scalar(cols[2].parse::<f64>().map_err(|e| e.to_string())?)
        };
        let metric = match cols[4] {
            "exact" => MetricValue::CdExact,
            "-" => MetricValue::Absent,
            other => MetricValue::Cd(other.parse::<f64>().map_err(|e| e.to_string())?),
        };
        rows.push(CaseRow {
            case_name: cols[0].to_string(),
            solver: cols[1].to_string(),
            result,
            fval: cols[3].parse::<f64>().map_err(|e| e.to_string())?,
            metric,
            iterations: cols[5].parse::<usize>().map_err(|e| e.to_string())?,
            time_ms: cols[6].parse::<f64>().map_err(|e| e.to_string())?,
            status: cols[7].to_string(),
            passed: true,
        });
    }
    Ok(RunReport {
        suite: String::new(),
        rows,
    })
}

/// Serialize in the chosen format and write to the path or stdout.
pub fn write_report(report: &RunReport, format: &str, out: Option<&Path>) -> io::Result<()> {
    let body = match format {
        "json" => to_json(report),
        _ => to_csv(report),
    };
    match out {
        Some(path) => fs::write(path, body)
            .map_err(|e| io::Error::new(e.kind(), format!("writing {}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cd_examples() {
        assert!((cd_n(2.0, 2.0 + 1e-10) - 10.0).abs() < 1e-6);
        assert!(cd_n(0.0, 0.0).is_infinite());
        assert_eq!(cd_n(5.0, 4.0), 0.0);
    }

    #[test]
    fn cd_display_caps_at_sixteen_digits() {
        assert_eq!(metric_field(&MetricValue::Cd(22.3)), fmt_g17(16.0));
        assert_eq!(metric_field(&MetricValue::CdExact), "exact");
    }

    #[test]
    fn empty_report_is_header_only() {
        let r = RunReport {
            suite: "table1".into(),
            rows: vec![],
        };
        assert_eq!(to_csv(&r), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn single_row_round_trips() {
        let r = RunReport {
            suite: "table1".into(),
            rows: vec![CaseRow {
                case_name: "f1".into(),
                solver: "cpslsm2".into(),
                result: ResultValue::Scalar(8.27846234384512),
                fval: -2271.581681192,
                metric: MetricValue::Cd(12.25),
                iterations: 9,
                time_ms: 0.321,
                status: "converged".into(),
                passed: true,
            }],
        };
        let csv = to_csv(&r);
        assert!(csv.contains("converged"));
        let parsed = parse_csv(&csv).unwrap();
        assert_eq!(parsed.rows.len(), 1);
        assert_eq!(parsed.rows[0].result, r.rows[0].result);
        assert_eq!(parsed.rows[0].fval, r.rows[0].fval);
        // serializing the parse reproduces the text exactly
        assert_eq!(
            to_csv(&RunReport {
                suite: "table1".into(),
                rows: parsed.rows
            }),
            csv
        );
    }

    #[test]
    fn vector_and_absent_rows_round_trip() {
        let r = RunReport {
            suite: "table2".into(),
            rows: vec![CaseRow {
                case_name: "styblinski_tang_d4".into(),
                solver: "bfgs-cpslsm".into(),
                result: ResultValue::Vector(vec![-2.9035, -2.9035, 2.7468, 2.7468]),
                fval: -128.39,
                metric: MetricValue::Absent,
                iterations: 11,
                time_ms: 0.05,
                status: "converged_step".into(),
                passed: true,
            }],
        };
        let parsed = parse_csv(&to_csv(&r)).unwrap();
        assert_eq!(parsed.rows[0].result, r.rows[0].result);
        assert_eq!(parsed.rows[0].metric, MetricValue::Absent);
    }

    #[test]
    fn json_mirrors_fields() {
        let r = RunReport {
            suite: "table2".into(),
            rows: vec![CaseRow {
                case_name: "easom".into(),
                solver: "bfgs-cpslsm".into(),
                result: ResultValue::Vector(vec![3.25, -0.75]),
                fval: -1.0,
                metric: MetricValue::ErrorNorm(4.3e-14),
                iterations: 3,
                time_ms: 1.5,
                status: "converged".into(),
                passed: true,
            }],
        };
        let json = to_json(&r);
        assert!(json.starts_with("{\"suite\":\"table2\""));
        assert!(json.contains("\"case\":\"easom\""));
        assert!(json.contains("\"iterations\":3"));
    }
}
