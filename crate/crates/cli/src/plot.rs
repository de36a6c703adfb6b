//! SVG rendering of cloud shapes and average trajectories. The CSV files
//! are the contract; these plots are a convenience view of the same data.

use std::path::Path;

use anyhow::{anyhow, Result};
use fitcloud::{AverageTrajectory, CloudShape};
use plotters::prelude::*;

/// Draw the shape curves (FC_min / FC_mean / FC_max), the one-deviation band
/// around the mean curve, the diagonal, and optionally an average GHC
/// trajectory on top.
pub fn plot_shape(
    path: &Path,
    title: &str,
    shape: &CloudShape,
    trajectory: Option<&AverageTrajectory>,
) -> Result<()> {
    let root = SVGBackend::new(path, (900, 900)).into_drawing_area();
    root.fill(&WHITE).map_err(|e| anyhow!("plot: {e}"))?;
    let mut chart = ChartBuilder::on(&root)
        .caption(title, ("sans-serif", 22))
        .margin(18)
        .x_label_area_size(42)
        .y_label_area_size(52)
        .build_cartesian_2d(0.0..1.0, 0.0..1.0)
        .map_err(|e| anyhow!("plot: {e}"))?;
    chart
        .configure_mesh()
        .x_desc("fitness")
        .y_desc("bordering fitness")
        .draw()
        .map_err(|e| anyhow!("plot: {e}"))?;

    let rows = shape.rows();
    let mut band: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| (r.phi, (r.mean + r.std).min(1.0)))
        .collect();
    band.extend(rows.iter().rev().map(|r| (r.phi, (r.mean - r.std).max(0.0))));
    chart
        .draw_series(std::iter::once(Polygon::new(band, RED.mix(0.15))))
        .map_err(|e| anyhow!("plot: {e}"))?;

    let curves: [(&str, fn(&fitcloud::ShapeRow) -> f64, RGBColor); 3] = [
        ("FC_min", |r| r.min, BLUE),
        ("FC_mean", |r| r.mean, RED),
        ("FC_max", |r| r.max, GREEN),
    ];
    for (name, value, color) in curves {
        chart
            .draw_series(LineSeries::new(rows.iter().map(|r| (r.phi, value(r))), &color))
            .map_err(|e| anyhow!("plot: {e}"))?
            .label(name)
            .legend(move |(x, y)| PathElement::new(vec![(x, y), (x + 18, y)], color));
    }

    chart
        .draw_series(LineSeries::new([(0.0, 0.0), (1.0, 1.0)], &BLACK))
        .map_err(|e| anyhow!("plot: {e}"))?
        .label("diagonal")
        .legend(|(x, y)| PathElement::new(vec![(x, y), (x + 18, y)], BLACK));

    if let Some(avg) = trajectory {
        chart
            .draw_series(LineSeries::new(
                avg.points().iter().map(|p| (p.mean_f, p.mean_f_border)),
                MAGENTA.stroke_width(2),
            ))
            .map_err(|e| anyhow!("plot: {e}"))?
            .label("average trajectory")
            .legend(|(x, y)| PathElement::new(vec![(x, y), (x + 18, y)], MAGENTA));
        let t = avg.terminal();
        chart
            .draw_series(std::iter::once(Circle::new(
                (t.mean_f, t.mean_f_border),
                4,
                MAGENTA.filled(),
            )))
            .map_err(|e| anyhow!("plot: {e}"))?;
    }

    chart
        .configure_series_labels()
        .border_style(BLACK)
        .background_style(WHITE.mix(0.85))
        .position(SeriesLabelPosition::UpperLeft)
        .draw()
        .map_err(|e| anyhow!("plot: {e}"))?;
    root.present().map_err(|e| anyhow!("plot: {e}"))?;
    Ok(())
}
