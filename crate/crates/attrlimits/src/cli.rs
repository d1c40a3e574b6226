//! Ingestion and rendering for the `attrlimits` binary.
//!
//! CSV comes in with the fixed header `subgroup,count,size` (UTF-8, LF or
//! CRLF, no quoting). JSON goes out with sorted keys and numbers rounded
//! to 12 significant digits, so repeated invocations are byte-identical.

use serde_json::{json, Value};

use crate::chart::{ChartResult, Dataset, ParameterSource, SubgroupRecord};
use crate::error::{Error, Result};
use crate::fiducial::Interval;
use crate::simulation::CoverageReport;

pub const CSV_HEADER: &str = "subgroup,count,size";

/// Parse subgroup records from CSV text. Errors carry 1-based line numbers.
pub fn parse_dataset_csv(text: &str) -> Result<Dataset> {
    let mut lines = text.lines();
    let Some(header) = lines.next() else {
        return Err(Error::Csv {
            line: 1,
            message: format!("missing header; expected {CSV_HEADER:?}"),
        });
    };
    if header.trim_end_matches('\r') != CSV_HEADER {
        return Err(Error::Csv {
            line: 1,
            message: format!("header must be exactly {CSV_HEADER:?}"),
        });
    }
    let mut records = Vec::new();
    for (index, raw) in lines.enumerate() {
        let line = index + 2;
        let row = raw.trim_end_matches('\r');
        let fields: Vec<&str> = row.split(',').collect();
        if fields.len() != 3 {
            return Err(Error::Csv {
                line,
                message: format!(
                    "expected 3 comma-separated fields, found {}",
                    if row.is_empty() { 0 } else { fields.len() }
                ),
            });
        }
        let count: u64 = fields[1].parse().map_err(|_| Error::Csv {
            line,
            message: format!("count must be a nonnegative integer, got {:?}", fields[1]),
        })?;
        let size: u64 = fields[2].parse().map_err(|_| Error::Csv {
            line,
            message: format!("size must be a positive integer, got {:?}", fields[2]),
        })?;
        if size == 0 {
            return Err(Error::Csv {
                line,
                message: "size must be >= 1".into(),
            });
        }
        records.push(SubgroupRecord {
            id: fields[0].to_string(),
            count,
            size,
        });
    }
    if records.is_empty() {
        return Err(Error::EmptyDataset);
    }
    Dataset::new(records)
}

/// Round to 12 significant digits; keeps serialized numbers stable across
/// runs while staying below every tolerance in the crate.
pub fn sig12(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    format!("{x:.11e}").parse().expect("formatted float")
}

fn num(x: f64) -> Value {
    serde_json::Number::from_f64(sig12(x))
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

pub fn interval_json(interval: &Interval) -> Value {
    json!({
        "confidence": num(interval.confidence),
        "lower": num(interval.lower),
        "upper": num(interval.upper),
    })
}

pub fn chart_json(chart: &ChartResult) -> Value {
    let points: Vec<Value> = chart
        .points
        .iter()
        .map(|p| {
            json!({
                "id": p.id,
                "lcl": num(p.lcl),
                "signal": p.signal,
                "statistic": num(p.statistic),
                "ucl": num(p.ucl),
            })
        })
        .collect();
    let source = match &chart.parameter_source {
        ParameterSource::Known(value) => json!({ "known": num(*value) }),
        ParameterSource::Estimated { point, interval } => json!({
            "estimated": {
                "interval": interval_json(interval),
                "point": num(*point),
            }
        }),
    };
    json!({
        "alpha": num(chart.alpha),
        "center": num(chart.center),
        "kind": chart.kind.as_str(),
        "parameter_source": source,
        "points": points,
    })
}

pub fn report_json(report: &CoverageReport) -> Value {
    json!({
        "alpha": num(report.alpha),
        "distribution": report.distribution.as_str(),
        "fiducial_coverage": num(report.fiducial_coverage),
        "mean_width_fiducial": num(report.mean_width_fiducial),
        "mean_width_normal": num(report.mean_width_normal),
        "n": report.n,
        "normal_coverage": num(report.normal_coverage),
        "replications": report.replications,
        "seed": report.seed,
        "true_param": num(report.true_param),
    })
}

/// Serialize with sorted keys (the default map is ordered) and two-space
/// indentation.
pub fn to_json_string(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("serializable value")
}

pub fn interval_text(interval: &Interval) -> String {
    format!(
        "lower:      {}\nupper:      {}\nconfidence: {}",
        sig12(interval.lower),
        sig12(interval.upper),
        sig12(interval.confidence)
    )
}

pub fn chart_text(chart: &ChartResult) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{} chart  alpha={}  center={}\n",
        chart.kind.as_str(),
        sig12(chart.alpha),
        sig12(chart.center)
    ));
    match &chart.parameter_source {
        ParameterSource::Known(v) => out.push_str(&format!("parameter: known {}\n", sig12(*v))),
        ParameterSource::Estimated { point, interval } => out.push_str(&format!(
            "parameter: estimated {} (fiducial {} .. {}, confidence {})\n",
            sig12(*point),
            sig12(interval.lower),
            sig12(interval.upper),
            sig12(interval.confidence)
        )),
    }
    out.push_str("subgroup\tstatistic\tlcl\tucl\tsignal\n");
    for p in &chart.points {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            p.id,
            sig12(p.statistic),
            sig12(p.lcl),
            sig12(p.ucl),
            if p.signal { "SIGNAL" } else { "-" }
        ));
    }
    out.pop();
    out
}

pub fn report_text(report: &CoverageReport) -> String {
    format!(
        "distribution:        {}\ntrue_param:          {}\nn:                   {}\nalpha:               {}\nreplications:        {}\nseed:                {}\nfiducial_coverage:   {}\nnormal_coverage:     {}\nmean_width_fiducial: {}\nmean_width_normal:   {}",
        report.distribution.as_str(),
        sig12(report.true_param),
        report.n,
        sig12(report.alpha),
        report.replications,
        report.seed,
        sig12(report.fiducial_coverage),
        sig12(report.normal_coverage),
        sig12(report.mean_width_fiducial),
        sig12(report.mean_width_normal)
    )
}

const SVG_WIDTH: f64 = 760.0;
const SVG_HEIGHT: f64 = 420.0;
const MARGIN_LEFT: f64 = 64.0;
const MARGIN_RIGHT: f64 = 16.0;
const MARGIN_TOP: f64 = 24.0;
const MARGIN_BOTTOM: f64 = 44.0;

/// Render a chart as a standalone SVG: center line, step-wise limit lines,
/// plotted statistics, signals highlighted.
pub fn chart_svg(chart: &ChartResult) -> String {
    let n = chart.points.len();
    let plot_w = SVG_WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = SVG_HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let mut lo = chart.center;
    let mut hi = chart.center;
    for p in &chart.points {
        lo = lo.min(p.lcl).min(p.statistic);
        hi = hi.max(p.ucl).max(p.statistic);
    }
    let pad = if hi > lo { 0.08 * (hi - lo) } else { 1.0 };
    lo -= pad;
    hi += pad;
    let x = |i: usize| MARGIN_LEFT + (i as f64 + 0.5) * plot_w / n as f64;
    let y = |v: f64| MARGIN_TOP + (hi - v) / (hi - lo) * plot_h;
    let slot = plot_w / n as f64;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SVG_WIDTH}\" height=\"{SVG_HEIGHT}\" viewBox=\"0 0 {SVG_WIDTH} {SVG_HEIGHT}\">\n"
    ));
    svg.push_str("  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg.push_str(&format!(
        "  <text x=\"{:.2}\" y=\"16\" font-family=\"sans-serif\" font-size=\"13\">{} chart (alpha = {})</text>\n",
        MARGIN_LEFT,
        chart.kind.as_str(),
        sig12(chart.alpha)
    ));
    // Axis frame.
    svg.push_str(&format!(
        "  <rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"none\" stroke=\"#999\"/>\n",
        MARGIN_LEFT, MARGIN_TOP, plot_w, plot_h
    ));
    // Center line.
    svg.push_str(&format!(
        "  <line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#2ca02c\" stroke-dasharray=\"6 3\"/>\n",
        MARGIN_LEFT,
        y(chart.center),
        MARGIN_LEFT + plot_w,
        y(chart.center)
    ));
    // Step-wise control limits.
    for p in chart.points.iter().enumerate() {
        let (i, pt) = p;
        let x0 = x(i) - 0.5 * slot;
        let x1 = x(i) + 0.5 * slot;
        svg.push_str(&format!(
            "  <line x1=\"{x0:.2}\" y1=\"{:.2}\" x2=\"{x1:.2}\" y2=\"{:.2}\" stroke=\"#d62728\" stroke-width=\"1.2\"/>\n",
            y(pt.lcl),
            y(pt.lcl)
        ));
        svg.push_str(&format!(
            "  <line x1=\"{x0:.2}\" y1=\"{:.2}\" x2=\"{x1:.2}\" y2=\"{:.2}\" stroke=\"#d62728\" stroke-width=\"1.2\"/>\n",
            y(pt.ucl),
            y(pt.ucl)
        ));
    }
    // Connecting polyline.
    if n > 1 {
        let pts: Vec<String> = chart
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| format!("{:.2},{:.2}", x(i), y(p.statistic)))
            .collect();
        svg.push_str(&format!(
            "  <polyline points=\"{}\" fill=\"none\" stroke=\"#1f77b4\"/>\n",
            pts.join(" ")
        ));
    }
    // Points, signals highlighted.
    for (i, p) in chart.points.iter().enumerate() {
        let fill = if p.signal { "#d62728" } else { "#1f77b4" };
        svg.push_str(&format!(
            "  <circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3.5\" fill=\"{fill}\"><title>{}</title></circle>\n",
            x(i),
            y(p.statistic),
            p.id
        ));
    }
    // Y-axis labels.
    for v in [lo + pad, chart.center, hi - pad] {
        svg.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">{:.4}</text>\n",
            MARGIN_LEFT - 6.0,
            y(v) + 3.0,
            v
        ));
    }
    // X labels, thinned when crowded.
    let stride = n.div_ceil(12).max(1);
    for (i, p) in chart.points.iter().enumerate() {
        if i % stride == 0 {
            svg.push_str(&format!(
                "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">{}</text>\n",
                x(i),
                MARGIN_TOP + plot_h + 16.0,
                p.id
            ));
        }
    }
    svg.push_str("</svg>");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::{build_chart, ChartKind};

    fn sample_chart() -> ChartResult {
        let data = parse_dataset_csv(
            "subgroup,count,size\nA,1,50\nB,3,50\nC,0,45\nD,9,50\n",
        )
        .unwrap();
        build_chart(&data, ChartKind::P, 0.0027, Some(0.1)).unwrap()
    }

    #[test]
    fn csv_parses_lf_and_crlf() {
        let lf = parse_dataset_csv("subgroup,count,size\nA,1,50\nB,2,60\n").unwrap();
        let crlf = parse_dataset_csv("subgroup,count,size\r\nA,1,50\r\nB,2,60\r\n").unwrap();
        assert_eq!(lf, crlf);
        assert_eq!(lf.len(), 2);
        assert_eq!(lf.records()[1].size, 60);
    }

    #[test]
    fn csv_header_only_is_no_records() {
        assert_eq!(
            parse_dataset_csv("subgroup,count,size\n"),
            Err(Error::EmptyDataset)
        );
    }

    #[test]
    fn csv_rejects_bad_header() {
        let err = parse_dataset_csv("id,count,n\nA,1,2\n").unwrap_err();
        assert!(matches!(err, Error::Csv { line: 1, .. }));
    }

    #[test]
    fn csv_errors_carry_one_based_line_numbers() {
        let err = parse_dataset_csv("subgroup,count,size\nA,1,50\nB,nope,60\n").unwrap_err();
        match err {
            Error::Csv { line, message } => {
                assert_eq!(line, 3);
                assert!(message.contains("count"));
            }
            other => panic!("unexpected {other:?}"),
        }
        let err = parse_dataset_csv("subgroup,count,size\nA,1\n").unwrap_err();
        assert!(matches!(err, Error::Csv { line: 2, .. }));
        let err = parse_dataset_csv("subgroup,count,size\nA,1,0\n").unwrap_err();
        assert!(matches!(err, Error::Csv { line: 2, .. }));
    }

    #[test]
    fn sig12_rounds_and_normalizes() {
        assert_eq!(sig12(0.1 + 0.2), 0.3);
        assert_eq!(sig12(-0.0), 0.0);
        assert_eq!(sig12(1.0), 1.0);
        assert_eq!(sig12(0.123456789012345), 0.123456789012);
    }

    #[test]
    fn json_output_is_stable_and_sorted() {
        let chart = sample_chart();
        let a = to_json_string(&chart_json(&chart));
        let b = to_json_string(&chart_json(&chart));
        assert_eq!(a, b);
        let alpha_pos = a.find("\"alpha\"").unwrap();
        let points_pos = a.find("\"points\"").unwrap();
        let center_pos = a.find("\"center\"").unwrap();
        assert!(alpha_pos < center_pos && center_pos < points_pos);
    }

    #[test]
    fn interval_json_has_expected_fields() {
        let iv = Interval {
            lower: 0.25,
            upper: 0.5,
            confidence: 0.95,
        };
        let v = interval_json(&iv);
        assert_eq!(v["lower"], json!(0.25));
        assert_eq!(v["upper"], json!(0.5));
        assert_eq!(v["confidence"], json!(0.95));
    }

    #[test]
    fn svg_contains_expected_elements() {
        let chart = sample_chart();
        let svg = chart_svg(&chart);
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>"));
        assert_eq!(svg.matches("<circle").count(), chart.points.len());
        assert!(svg.contains("stroke-dasharray"));
        assert!(svg.contains("p chart"));
    }

    #[test]
    fn text_renderings_mention_signals() {
        let chart = sample_chart();
        let text = chart_text(&chart);
        assert!(text.contains("subgroup"));
        assert!(text.lines().count() >= chart.points.len() + 2);
    }
}
