//! Deterministic SVG scatter plots: two zero series (sequence member as
//! diamonds, reference family member as circles) against their ascending
//! index, with gridlines at ±1 and ±a.
//!
//! All coordinates are computed in exact rational arithmetic and rendered
//! with two fixed decimals, so identical inputs produce byte-identical
//! files. No timestamps, no randomness, no floating point.

use wendroff_core::{rat, rat_int, to_decimal_fixed, Rational};

/// Everything the renderer needs; zeros are refined root values, ascending.
#[derive(Debug, Clone)]
pub struct FigureSpec {
    pub title: String,
    pub d_label: String,
    pub c_label: String,
    pub d_zeros: Vec<Rational>,
    pub c_zeros: Vec<Rational>,
    /// Containment radius a; drawn as the outer gridline pair.
    pub radius: Rational,
}

const WIDTH: i64 = 480;
const HEIGHT: i64 = 360;
const MARGIN_LEFT: i64 = 56;
const MARGIN_RIGHT: i64 = 16;
const MARGIN_TOP: i64 = 40;
const MARGIN_BOTTOM: i64 = 36;

const D_FILL: &str = "#8b4513";
const C_FILL: &str = "#1f77b4";

struct Frame {
    left: Rational,
    top: Rational,
    width: Rational,
    height: Rational,
    /// Vertical half-range; the y-axis spans [−y_max, y_max].
    y_max: Rational,
}

impl Frame {
    fn new(spec: &FigureSpec) -> Frame {
        // 10% headroom above the radius, widened further if a zero value
        // (which containment keeps below the radius anyway) ever exceeded it.
        let mut extent = spec.radius.clone();
        for z in spec.d_zeros.iter().chain(&spec.c_zeros) {
            let magnitude = if z < &rat_int(0) { -z.clone() } else { z.clone() };
            if magnitude > extent {
                extent = magnitude;
            }
        }
        Frame {
            left: rat_int(MARGIN_LEFT),
            top: rat_int(MARGIN_TOP),
            width: rat_int(WIDTH - MARGIN_LEFT - MARGIN_RIGHT),
            height: rat_int(HEIGHT - MARGIN_TOP - MARGIN_BOTTOM),
            y_max: extent * rat(11, 10),
        }
    }

    /// Pixel y for a zero value v: top edge is +y_max, bottom edge −y_max.
    fn y(&self, v: &Rational) -> String {
        let scaled = (&self.y_max - v) / (&self.y_max * rat_int(2));
        to_decimal_fixed(&(&self.top + &self.height * scaled), 2)
    }

    /// Pixel x for index i (0-based) out of count points, spread evenly.
    fn x(&self, i: usize, count: usize) -> String {
        let offset = if count <= 1 {
            &self.width / rat_int(2)
        } else {
            &self.width * rat_int(i as i64) / rat_int(count as i64 - 1)
        };
        to_decimal_fixed(&(&self.left + offset), 2)
    }
}

fn push_gridline(svg: &mut String, frame: &Frame, value: &Rational, dash: &str, stroke: &str) {
    let y = frame.y(value);
    let x1 = to_decimal_fixed(&frame.left, 2);
    let x2 = to_decimal_fixed(&(&frame.left + &frame.width), 2);
    svg.push_str(&format!(
        "  <line x1=\"{x1}\" y1=\"{y}\" x2=\"{x2}\" y2=\"{y}\" stroke=\"{stroke}\"{dash}/>\n"
    ));
    svg.push_str(&format!(
        "  <text x=\"{}\" y=\"{y}\" text-anchor=\"end\" dominant-baseline=\"middle\" \
         font-family=\"monospace\" font-size=\"10\" fill=\"#444444\">{}</text>\n",
        to_decimal_fixed(&(&frame.left - rat_int(6)), 2),
        to_decimal_fixed(value, 2),
    ));
}

fn push_diamond(svg: &mut String, x: &str, y: &str) {
    // A diamond is drawn relative to its center with path arithmetic done
    // by the viewer: move up, and trace the four corners at ±4 px.
    svg.push_str(&format!(
        "  <path d=\"M {x} {y} m 0 -4 l 4 4 l -4 4 l -4 -4 z\" fill=\"{D_FILL}\" fill-opacity=\"0.85\"/>\n"
    ));
}

fn push_circle(svg: &mut String, x: &str, y: &str) {
    svg.push_str(&format!(
        "  <circle cx=\"{x}\" cy=\"{y}\" r=\"3.2\" fill=\"{C_FILL}\" fill-opacity=\"0.85\"/>\n"
    ));
}

/// Render the figure; the output is self-contained and deterministic.
pub fn render_svg(spec: &FigureSpec) -> String {
    let frame = Frame::new(spec);
    let mut svg = String::new();

    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" \
         width=\"{WIDTH}\" height=\"{HEIGHT}\" role=\"img\">\n"
    ));
    svg.push_str(&format!("  <title>{}</title>\n", xml_escape(&spec.title)));
    svg.push_str(&format!(
        "  <rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"#ffffff\"/>\n"
    ));

    // Title and legend.
    svg.push_str(&format!(
        "  <text x=\"{}\" y=\"16\" text-anchor=\"middle\" font-family=\"monospace\" \
         font-size=\"13\" fill=\"#222222\">{}</text>\n",
        WIDTH / 2,
        xml_escape(&spec.title),
    ));
    let legend_y = 30;
    push_diamond(&mut svg, &format!("{MARGIN_LEFT}"), &format!("{legend_y}"));
    svg.push_str(&format!(
        "  <text x=\"{}\" y=\"{legend_y}\" dominant-baseline=\"middle\" font-family=\"monospace\" \
         font-size=\"11\" fill=\"#222222\">{}</text>\n",
        MARGIN_LEFT + 10,
        xml_escape(&spec.d_label),
    ));
    push_circle(&mut svg, &format!("{}", MARGIN_LEFT + 70), &format!("{legend_y}"));
    svg.push_str(&format!(
        "  <text x=\"{}\" y=\"{legend_y}\" dominant-baseline=\"middle\" font-family=\"monospace\" \
         font-size=\"11\" fill=\"#222222\">{}</text>\n",
        MARGIN_LEFT + 80,
        xml_escape(&spec.c_label),
    ));

    // Plot frame, zero axis, and the ±1 / ±a gridlines.
    svg.push_str(&format!(
        "  <rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#333333\"/>\n",
        MARGIN_LEFT,
        MARGIN_TOP,
        WIDTH - MARGIN_LEFT - MARGIN_RIGHT,
        HEIGHT - MARGIN_TOP - MARGIN_BOTTOM,
    ));
    push_gridline(&mut svg, &frame, &rat_int(0), "", "#888888");
    for sign in [1i64, -1] {
        push_gridline(
            &mut svg,
            &frame,
            &rat_int(sign),
            " stroke-dasharray=\"4 3\"",
            "#bbbbbb",
        );
        let a = &spec.radius * rat_int(sign);
        push_gridline(&mut svg, &frame, &a, " stroke-dasharray=\"2 3\"", "#999999");
    }

    // Series: circles first so the diamonds stay visible where they overlap.
    for (i, z) in spec.c_zeros.iter().enumerate() {
        let x = frame.x(i, spec.c_zeros.len());
        let y = frame.y(z);
        push_circle(&mut svg, &x, &y);
    }
    for (i, z) in spec.d_zeros.iter().enumerate() {
        let x = frame.x(i, spec.d_zeros.len());
        let y = frame.y(z);
        push_diamond(&mut svg, &x, &y);
    }

    svg.push_str("</svg>\n");
    svg
}

fn xml_escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
