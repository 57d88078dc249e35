//! Rendering of sweep results: aligned text tables, CSV, plot-ready series,
//! and an optional static SVG line chart.
//!
//! Capacities are formatted in Gbps with exactly 4 decimal places and
//! relative differences in percent with 4 decimal places, matching the
//! published tables digit for digit. Internally everything stays in bit/s.

use crate::error::{Error, Result};
use crate::sweep::{SweepResult, SweptParameter};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    AlignedText,
    Csv,
    PlotSeries,
}

/// A fully formatted table, ready to print or write.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportDocument {
    pub title: String,
    /// (name, unit) per column.
    pub columns: Vec<(String, String)>,
    pub rows: Vec<Vec<String>>,
    pub format: Format,
}

/// Cut to 4 decimal places, truncating toward zero. The published tables
/// truncate rather than round; truncation reproduces every printed digit,
/// rounding does not (e.g. 22.20786 appears as 22.2078, -79.06467 as
/// -79.0646).
pub fn format_4dp(value: f64) -> String {
    // the 1e-12 relative nudge keeps decimal constants that sit exactly on
    // a 1e-4 boundary (stored one ulp low) from truncating a digit short
    let scaled = value * 1e4 * (1.0 + 1e-12);
    format!("{:.4}", scaled.trunc() / 1e4)
}

fn gbps(bit_per_s: f64) -> String {
    format_4dp(bit_per_s / 1e9)
}

fn percent(p: f64) -> String {
    format_4dp(p)
}

fn grid_label(parameter: SweptParameter, value: f64) -> String {
    match parameter {
        SweptParameter::Distance => format!("{value}"),
        SweptParameter::FMin => format!("{} GHz", value / 1e9),
        SweptParameter::Bandwidth => format!("{} MHz", value / 1e6),
        SweptParameter::NoiseFigure => format!("{value} dB"),
        SweptParameter::NSc => format!("{value} bins"),
        SweptParameter::DutyCycle => format!("{value}"),
    }
}

impl ReportDocument {
    /// Render to its final textual form. CSV uses `,` separators, `.`
    /// decimal points, a header row, and LF line endings.
    pub fn render(&self) -> String {
        match self.format {
            Format::Csv | Format::PlotSeries => {
                let mut out = String::new();
                let header: Vec<String> = self
                    .columns
                    .iter()
                    .map(|(name, unit)| {
                        if unit.is_empty() {
                            name.clone()
                        } else {
                            format!("{name}_{unit}")
                        }
                    })
                    .collect();
                out.push_str(&header.join(","));
                out.push('\n');
                for row in &self.rows {
                    out.push_str(&row.join(","));
                    out.push('\n');
                }
                out
            }
            Format::AlignedText => {
                let headers: Vec<String> = self
                    .columns
                    .iter()
                    .map(|(name, unit)| {
                        if unit.is_empty() {
                            name.clone()
                        } else {
                            format!("{name} ({unit})")
                        }
                    })
                    .collect();
                let mut widths: Vec<usize> = headers.iter().map(String::len).collect();
                for row in &self.rows {
                    for (w, cell) in widths.iter_mut().zip(row) {
                        *w = (*w).max(cell.len());
                    }
                }
                let mut out = String::new();
                if !self.title.is_empty() {
                    out.push_str(&self.title);
                    out.push('\n');
                }
                let fmt_row = |cells: &[String]| -> String {
                    cells
                        .iter()
                        .zip(&widths)
                        .map(|(c, w)| format!("{c:>w$}"))
                        .collect::<Vec<_>>()
                        .join("  ")
                };
                out.push_str(&fmt_row(&headers));
                out.push('\n');
                out.push_str(&"-".repeat(widths.iter().sum::<usize>() + 2 * (widths.len() - 1)));
                out.push('\n');
                for row in &self.rows {
                    out.push_str(&fmt_row(row));
                    out.push('\n');
                }
                out
            }
        }
    }
}

/// Render a sweep as a paper-style table.
///
/// Two-value grids get the published layout: one row per distance with both
/// capacity columns and the relative-difference column. Anything else gets
/// the generic (grid value, distance, capacity) layout.
pub fn render_table(result: &SweepResult, format: Format) -> Result<ReportDocument> {
    if result.rows.is_empty() {
        return Err(Error::EmptyResult);
    }

    if let (2, Some(diffs)) = (result.grid.len(), result.relative_diffs.as_ref()) {
        let n = result.distances.len();
        let columns = vec![
            ("d".to_string(), "m".to_string()),
            (
                format!("C[{}]", grid_label(result.parameter, result.grid[0])),
                "Gbps".to_string(),
            ),
            (
                format!("C[{}]", grid_label(result.parameter, result.grid[1])),
                "Gbps".to_string(),
            ),
            ("dC/C".to_string(), "%".to_string()),
        ];
        let rows = (0..n)
            .map(|i| {
                vec![
                    format!("{}", result.distances[i]),
                    gbps(result.rows[i].estimate.reported),
                    gbps(result.rows[n + i].estimate.reported),
                    percent(diffs[i]),
                ]
            })
            .collect();
        return Ok(ReportDocument {
            title: format!("capacity vs {}", result.parameter.key()),
            columns,
            rows,
            format,
        });
    }

    let columns = vec![
        (result.parameter.key().to_string(), String::new()),
        ("d".to_string(), "m".to_string()),
        ("C".to_string(), "Gbps".to_string()),
    ];
    let rows = result
        .rows
        .iter()
        .map(|r| {
            vec![
                format!("{}", r.grid_value),
                format!("{}", r.distance_m),
                gbps(r.estimate.reported),
            ]
        })
        .collect();
    Ok(ReportDocument {
        title: format!("capacity vs {}", result.parameter.key()),
        columns,
        rows,
        format,
    })
}

/// The capacity-vs-distance comparison series for the two built-in radios:
/// (distance_m, radcom_gbps, wifi_bd_gbps).
pub fn render_fig2_series(
    radcom: &SweepResult,
    wifi: &SweepResult,
    format: Format,
) -> Result<ReportDocument> {
    if radcom.rows.is_empty() {
        return Err(Error::EmptyResult);
    }
    let same_grid = radcom.rows.len() == wifi.rows.len()
        && radcom
            .rows
            .iter()
            .zip(&wifi.rows)
            .all(|(a, b)| a.distance_m == b.distance_m);
    if !same_grid {
        return Err(Error::MismatchedGrids(
            "the two series must share one distance grid".to_string(),
        ));
    }
    let columns = vec![
        ("distance".to_string(), "m".to_string()),
        ("radcom".to_string(), "gbps".to_string()),
        ("wifi_bd".to_string(), "gbps".to_string()),
    ];
    let rows = radcom
        .rows
        .iter()
        .zip(&wifi.rows)
        .map(|(r, w)| {
            vec![
                format!("{}", r.distance_m),
                gbps(r.estimate.reported),
                gbps(w.estimate.reported),
            ]
        })
        .collect();
    Ok(ReportDocument {
        title: "channel capacity vs distance".to_string(),
        columns,
        rows,
        format,
    })
}

/// Static SVG 1.1 line chart of the two capacity-vs-distance curves.
/// Linear axes, no scripting.
pub fn render_svg_chart(radcom: &SweepResult, wifi: &SweepResult) -> Result<String> {
    // grid validation only; the chart reads the raw series
    render_fig2_series(radcom, wifi, Format::PlotSeries)?;
    let (w, h, ml, mb, mt, mr) = (640.0, 420.0, 60.0, 50.0, 30.0, 20.0);
    let plot_w = w - ml - mr;
    let plot_h = h - mt - mb;

    let xs: Vec<f64> = radcom.rows.iter().map(|r| r.distance_m).collect();
    let series = [
        (
            "radcom",
            "#c0392b",
            radcom
                .rows
                .iter()
                .map(|r| r.estimate.reported / 1e9)
                .collect::<Vec<_>>(),
        ),
        (
            "wifi_bd",
            "#2980b9",
            wifi.rows
                .iter()
                .map(|r| r.estimate.reported / 1e9)
                .collect::<Vec<_>>(),
        ),
    ];
    let x_min = xs[0];
    let x_max = *xs.last().unwrap();
    let y_max = series
        .iter()
        .flat_map(|(_, _, ys)| ys.iter())
        .fold(0.0f64, |a, &b| a.max(b))
        .ceil();

    let sx = |x: f64| ml + (x - x_min) / (x_max - x_min).max(1e-12) * plot_w;
    let sy = |y: f64| mt + (1.0 - y / y_max) * plot_h;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n"
    ));
    svg.push_str(&format!(
        "<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n"
    ));
    // axes
    svg.push_str(&format!(
        "<line x1=\"{ml}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        mt + plot_h,
        ml + plot_w,
        mt + plot_h
    ));
    svg.push_str(&format!(
        "<line x1=\"{ml}\" y1=\"{mt}\" x2=\"{ml}\" y2=\"{}\" stroke=\"black\"/>\n",
        mt + plot_h
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"12\">distance (m)</text>\n",
        ml + plot_w / 2.0,
        h - 10.0
    ));
    svg.push_str(&format!(
        "<text x=\"14\" y=\"{}\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 14 {})\">capacity (Gbps)</text>\n",
        mt + plot_h / 2.0,
        mt + plot_h / 2.0
    ));
    // y ticks
    let n_ticks = 5;
    for i in 0..=n_ticks {
        let y = y_max * i as f64 / n_ticks as f64;
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{:.1}\" text-anchor=\"end\" font-size=\"10\">{y:.0}</text>\n",
            ml - 6.0,
            sy(y) + 3.0
        ));
    }
    // x ticks
    for i in 0..=4 {
        let x = x_min + (x_max - x_min) * i as f64 / 4.0;
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{}\" text-anchor=\"middle\" font-size=\"10\">{x:.0}</text>\n",
            sx(x),
            mt + plot_h + 14.0
        ));
    }
    for (idx, (name, color, ys)) in series.iter().enumerate() {
        let points: Vec<String> = xs
            .iter()
            .zip(ys)
            .map(|(&x, &y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        svg.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
            points.join(" ")
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-size=\"11\" fill=\"{color}\">{name}</text>\n",
            ml + plot_w - 70.0,
            mt + 16.0 + 14.0 * idx as f64
        ));
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profiles::{builtin_radcom, builtin_wifi_bd};
    use crate::sweep::{capacity_vs_distance, run_sweep, Denominator, SweepSpec};

    fn table3_result() -> SweepResult {
        let spec = SweepSpec {
            name: "f_min".into(),
            base_profile: "radcom".into(),
            parameter: SweptParameter::FMin,
            grid: vec![76e9, 81e9],
            distances: vec![1.0, 50.0, 200.0],
            denominator: Denominator::First,
        };
        run_sweep(&spec, &builtin_radcom()).unwrap()
    }

    #[test]
    fn csv_rows_match_published_digits() {
        let doc = render_table(&table3_result(), Format::Csv).unwrap();
        let text = doc.render();
        let mut lines = text.lines();
        lines.next(); // header
        assert_eq!(lines.next().unwrap(), "1,22.2078,22.0251,0.8226");
        assert_eq!(lines.next().unwrap(), "50,10.9208,10.7383,1.6718");
        assert_eq!(lines.next().unwrap(), "200,6.9320,6.7509,2.6123");
    }

    #[test]
    fn noise_figure_row_matches_published_digits() {
        let spec = SweepSpec {
            name: "nf".into(),
            base_profile: "radcom".into(),
            parameter: SweptParameter::NoiseFigure,
            grid: vec![8.0, 10.0],
            distances: vec![1.0, 50.0, 200.0],
            denominator: Denominator::Second,
        };
        let result = run_sweep(&spec, &builtin_radcom()).unwrap();
        let doc = render_table(&result, Format::Csv).unwrap();
        let last = doc.render().lines().last().unwrap().to_string();
        assert_eq!(last, "200,6.9320,6.2745,10.4787");
    }

    #[test]
    fn single_row_renders_header_plus_one() {
        let r = capacity_vs_distance(&builtin_radcom(), &[1.0]).unwrap();
        let doc = render_table(&r, Format::Csv).unwrap();
        assert_eq!(doc.render().lines().count(), 2);
    }

    #[test]
    fn empty_result_is_an_error() {
        let mut r = table3_result();
        r.rows.clear();
        assert!(matches!(render_table(&r, Format::Csv), Err(Error::EmptyResult)));
    }

    #[test]
    fn fig2_series_rows() {
        let grid: Vec<f64> = (1..=200).map(|d| d as f64).collect();
        let radcom = capacity_vs_distance(&builtin_radcom(), &grid).unwrap();
        let wifi = capacity_vs_distance(&builtin_wifi_bd(), &grid).unwrap();
        let doc = render_fig2_series(&radcom, &wifi, Format::Csv).unwrap();
        let text = doc.render();
        let rows: Vec<&str> = text.lines().collect();
        assert_eq!(rows.len(), 201);
        assert!(rows[1].starts_with("1,22.2078,"));
        assert!(rows[50].starts_with("50,10.9208,"));
        assert!(rows[200].starts_with("200,6.9320,"));
    }

    #[test]
    fn fig2_rejects_mismatched_grids() {
        let radcom = capacity_vs_distance(&builtin_radcom(), &[1.0, 2.0, 3.0]).unwrap();
        let wifi = capacity_vs_distance(&builtin_wifi_bd(), &[1.0, 2.0]).unwrap();
        assert!(matches!(
            render_fig2_series(&radcom, &wifi, Format::Csv),
            Err(Error::MismatchedGrids(_))
        ));
    }

    #[test]
    fn rendering_is_pure() {
        let r = table3_result();
        let a = render_table(&r, Format::AlignedText).unwrap().render();
        let b = render_table(&r, Format::AlignedText).unwrap().render();
        assert_eq!(a, b);
        assert!(!a.contains('\t'));
    }

    #[test]
    fn format_truncates_not_rounds() {
        assert_eq!(format_4dp(22.20786), "22.2078");
        assert_eq!(format_4dp(-79.06467), "-79.0646");
        assert_eq!(format_4dp(21.5434), "21.5434"); // exact decimal boundary
        assert_eq!(format_4dp(-0.00265), "-0.0026");
        assert_eq!(format_4dp(0.0), "0.0000");
    }

    #[test]
    fn svg_is_static_and_well_formed() {
        let grid: Vec<f64> = (1..=20).map(|d| d as f64 * 10.0).collect();
        let radcom = capacity_vs_distance(&builtin_radcom(), &grid).unwrap();
        let wifi = capacity_vs_distance(&builtin_wifi_bd(), &grid).unwrap();
        let svg = render_svg_chart(&radcom, &wifi).unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(!svg.contains("<script"));
        assert_eq!(svg.matches("<polyline").count(), 2);
    }
}
