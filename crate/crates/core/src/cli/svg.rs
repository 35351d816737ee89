//! Hand-emitted SVG rendering of survival curves (no plotting dependency).

use crate::oracle::SurvivalCurve;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 20.0;
const MARGIN_T: f64 = 30.0;
const MARGIN_B: f64 = 50.0;

/// Log-scale survivor fraction against step, with the fitted slope line and
/// an optional reference rate overlaid.
pub fn survival_svg(curve: &SurvivalCurve, fit: Option<(f64, f64)>, reference: Option<f64>) -> String {
    let points: Vec<(f64, f64)> = curve
        .counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(t, &c)| (t as f64, (c as f64 / curve.samples as f64).ln()))
        .collect();
    let x_max = (curve.counts.len() - 1).max(1) as f64;
    let y_min = points
        .iter()
        .map(|&(_, y)| y)
        .fold(-1e-6_f64, f64::min)
        .min(-1e-6);
    let plot_w = WIDTH - MARGIN_L - MARGIN_R;
    let plot_h = HEIGHT - MARGIN_T - MARGIN_B;
    let sx = move |x: f64| MARGIN_L + x / x_max * plot_w;
    let sy = move |y: f64| MARGIN_T + (y / y_min) * plot_h;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    // axes
    svg.push_str(&format!(
        "<line x1=\"{MARGIN_L}\" y1=\"{MARGIN_T}\" x2=\"{MARGIN_L}\" y2=\"{}\" stroke=\"black\"/>\n",
        MARGIN_T + plot_h
    ));
    svg.push_str(&format!(
        "<line x1=\"{MARGIN_L}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        MARGIN_T + plot_h,
        MARGIN_L + plot_w,
        MARGIN_T + plot_h
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\">step</text>\n",
        MARGIN_L + plot_w / 2.0,
        HEIGHT - 12.0
    ));
    svg.push_str(&format!(
        "<text x=\"16\" y=\"{}\" font-size=\"12\" transform=\"rotate(-90 16 {})\" \
         text-anchor=\"middle\">ln survivor fraction</text>\n",
        MARGIN_T + plot_h / 2.0,
        MARGIN_T + plot_h / 2.0
    ));
    // axis ticks
    for frac in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let x = MARGIN_L + frac * plot_w;
        let label = (frac * x_max).round();
        svg.push_str(&format!(
            "<line x1=\"{x}\" y1=\"{0}\" x2=\"{x}\" y2=\"{1}\" stroke=\"black\"/>\n\
             <text x=\"{x}\" y=\"{2}\" font-size=\"10\" text-anchor=\"middle\">{label}</text>\n",
            MARGIN_T + plot_h,
            MARGIN_T + plot_h + 5.0,
            MARGIN_T + plot_h + 18.0
        ));
        let y = MARGIN_T + frac * plot_h;
        let ylabel = frac * y_min;
        svg.push_str(&format!(
            "<line x1=\"{0}\" y1=\"{y}\" x2=\"{MARGIN_L}\" y2=\"{y}\" stroke=\"black\"/>\n\
             <text x=\"{1}\" y=\"{2}\" font-size=\"10\" text-anchor=\"end\">{ylabel:.2}</text>\n",
            MARGIN_L - 5.0,
            MARGIN_L - 8.0,
            y + 3.0
        ));
    }
    // survival polyline
    if !points.is_empty() {
        let path: Vec<String> = points
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        svg.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"{}\"/>\n",
            path.join(" ")
        ));
    }
    // fitted slope over the tail window
    if let Some((rho_hat, _)) = fit {
        if let Some(&(x0, y0)) = points.get(points.len() / 2) {
            let x1 = points.last().map(|&(x, _)| x).unwrap_or(x_max);
            let y1 = y0 - rho_hat * (x1 - x0);
            svg.push_str(&format!(
                "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"crimson\" \
                 stroke-width=\"1.5\" stroke-dasharray=\"6 3\"/>\n",
                sx(x0),
                sy(y0),
                sx(x1),
                sy(y1)
            ));
            svg.push_str(&format!(
                "<text x=\"{}\" y=\"{}\" font-size=\"12\" fill=\"crimson\">fit rho = {rho_hat:.6}</text>\n",
                MARGIN_L + 12.0,
                MARGIN_T + 16.0
            ));
        }
    }
    if let Some(rho) = reference {
        if let Some(&(x0, y0)) = points.first() {
            let x1 = points.last().map(|&(x, _)| x).unwrap_or(x_max);
            let y1 = y0 - rho * (x1 - x0);
            svg.push_str(&format!(
                "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"seagreen\" \
                 stroke-width=\"1\" stroke-dasharray=\"2 3\"/>\n",
                sx(x0),
                sy(y0),
                sx(x1),
                sy(y1)
            ));
            svg.push_str(&format!(
                "<text x=\"{}\" y=\"{}\" font-size=\"12\" fill=\"seagreen\">spectral rho = {rho:.6}</text>\n",
                MARGIN_L + 12.0,
                MARGIN_T + 32.0
            ));
        }
    }
    svg.push_str("</svg>\n");
    svg
}
