//! Thermograph rendering: ASCII, SVG and JSON.
//!
//! Both drawings put game values on the horizontal axis increasing to the
//! left and temperature on the vertical axis increasing upward, from
//! `t = -1` to one above the temperature (to `0` for integers).

use std::fmt::Write as _;

use thermocalc::{Dyadic, DyadicInt, Extended, Thermograph, Trajectory};

pub const ASCII_COLS: usize = 80;
pub const ASCII_ROWS: usize = 24;

/// Top of the drawn temperature range.
fn top<I: DyadicInt>(tg: &Thermograph<I>) -> Dyadic<I> {
    match &tg.temp {
        Extended::Finite(t) => t + &Dyadic::one(),
        _ => Dyadic::zero(),
    }
}

/// Value range `(low, high)` covered by the walls; both walls are monotone,
/// so the extremes sit at `t = -1`.
fn value_range<I: DyadicInt>(tg: &Thermograph<I>) -> (Dyadic<I>, Dyadic<I>) {
    let start = Trajectory::<I>::domain_start();
    let high = tg.left.eval(&start).expect("walls start at the domain start");
    let low = tg.right.eval(&start).expect("walls start at the domain start");
    (low, high)
}

/// Knots of `wall` from `-1` up to `upto`, ending exactly at `upto`.
fn polyline<I: DyadicInt>(wall: &Trajectory<I>, upto: &Dyadic<I>) -> Vec<(Dyadic<I>, Dyadic<I>)> {
    let mut pts: Vec<_> = wall.knots().into_iter().filter(|(t, _)| t < upto).collect();
    pts.push((upto.clone(), wall.eval(upto).expect("upto is inside the domain")));
    pts
}

pub fn json<I: DyadicInt>(tg: &Thermograph<I>, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(tg).expect("thermographs serialize")
    } else {
        serde_json::to_string(tg).expect("thermographs serialize")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SvgStyle {
    /// Pixels per unit of value and of temperature.
    pub scale: u64,
    pub margin: u64,
}

impl Default for SvgStyle {
    fn default() -> Self {
        SvgStyle {
            scale: 64,
            margin: 48,
        }
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// SVG drawing. Coordinates are exact decimals: every value is a dyadic
/// multiplied by the integer scale.
pub fn svg<I: DyadicInt>(tg: &Thermograph<I>, title: &str, style: SvgStyle) -> String {
    let scale = Dyadic::<I>::from_integer(I::from_u64(style.scale).expect("scale fits"));
    let margin = Dyadic::<I>::from_integer(I::from_u64(style.margin).expect("margin fits"));
    let minus_one = Dyadic::<I>::int(-1);
    let top = top(tg);
    let (low, high) = value_range(tg);
    let x = |v: &Dyadic<I>| (&margin + &(&(&high - v) * &scale)).to_decimal_string();
    let y = |t: &Dyadic<I>| (&margin + &(&(&top - t) * &scale)).to_decimal_string();
    let two = Dyadic::<I>::int(2);
    let width = (&(&two * &margin) + &(&(&high - &low) * &scale)).to_decimal_string();
    let height = (&(&two * &margin) + &(&(&top - &minus_one) * &scale)).to_decimal_string();

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(s, "<title>{}</title>", escape(title));
    let _ = writeln!(
        s,
        r#"<g font-family="monospace" font-size="11" fill="black">"#
    );

    // value axis at t = 0, temperature axis at the mast (or the integer)
    let zero = Dyadic::<I>::zero();
    let axis_pad = Dyadic::<I>::frac(1, 2);
    let (left_end, right_end) = (&high + &axis_pad, &low - &axis_pad);
    let _ = writeln!(
        s,
        r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#999" stroke-width="1"/>"##,
        x(&left_end),
        y(&zero),
        x(&right_end),
        y(&zero)
    );
    let _ = writeln!(
        s,
        r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#999" stroke-width="1"/>"##,
        x(&tg.mast_value),
        y(&minus_one),
        x(&tg.mast_value),
        y(&top)
    );

    // value ticks at integers and at the mast, temperature ticks at integers
    // and at the temperature
    let mut values: Vec<Dyadic<I>> = Vec::new();
    let mut v = Dyadic::from_integer(low.ceil());
    while v <= high {
        values.push(v.clone());
        v = &v + &Dyadic::one();
    }
    values.push(tg.mast_value.clone());
    values.sort();
    values.dedup();
    for v in &values {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="middle">{v}</text>"#,
            x(v),
            (&(&margin + &(&(&top - &minus_one) * &scale)) + &Dyadic::int(16)).to_decimal_string()
        );
    }
    let mut temps: Vec<Dyadic<I>> = Vec::new();
    let mut t = minus_one.clone();
    while t <= top {
        temps.push(t.clone());
        t = &t + &Dyadic::one();
    }
    if let Extended::Finite(temp) = &tg.temp {
        temps.push(temp.clone());
    }
    temps.sort();
    temps.dedup();
    for t in &temps {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="start">t={t}</text>"#,
            (&(&margin + &(&(&high - &low) * &scale)) + &Dyadic::int(6)).to_decimal_string(),
            y(t)
        );
    }
    let _ = writeln!(s, "</g>");

    let wall_top = match &tg.temp {
        Extended::Finite(temp) => temp.clone(),
        _ => top.clone(),
    };
    for wall in [&tg.left, &tg.right] {
        let pts = polyline(wall, &wall_top);
        let d: Vec<String> = pts.iter().map(|(t, v)| format!("{},{}", x(v), y(t))).collect();
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="black" stroke-width="2"/>"#,
            d.join(" ")
        );
    }
    if tg.temp.is_finite() {
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="2" stroke-dasharray="6 4"/>"#,
            x(&tg.mast_value),
            y(&wall_top),
            x(&tg.mast_value),
            y(&top)
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Character drawing sampled at quarter steps in both directions. Larger
/// thermographs are clipped to `ASCII_COLS` x `ASCII_ROWS` around the mast,
/// never rescaled.
pub fn ascii<I: DyadicInt>(tg: &Thermograph<I>) -> String {
    let to_steps = |x: &Dyadic<I>| -> i64 {
        (x * &Dyadic::int(4)).floor().to_i64().expect("drawing coordinates fit i64")
    };
    let top_q = to_steps(&top(tg)).max(0);
    let bottom_q = -4;
    let (low, high) = value_range(tg);
    let high_q = to_steps(&high) + 1;
    let low_q = to_steps(&low) - 1;

    const GUTTER: usize = 8;
    let rows_needed = (top_q - bottom_q + 1) as usize;
    let cols_needed = (high_q - low_q + 1) as usize;
    let max_rows = ASCII_ROWS - 2;
    let max_cols = ASCII_COLS - GUTTER;

    // keep the rows nearest the top and the columns centered on the mast
    let first_row = top_q;
    let last_row = (top_q - max_rows as i64 + 1).max(bottom_q);
    let mast_q = to_steps(&tg.mast_value);
    let (mut col_hi, mut col_lo) = (high_q, low_q);
    if cols_needed > max_cols {
        let half = (max_cols / 2) as i64;
        col_hi = (mast_q + half).min(high_q);
        col_lo = col_hi - max_cols as i64 + 1;
        if col_lo < low_q {
            col_lo = low_q;
            col_hi = col_lo + max_cols as i64 - 1;
        }
    }
    let clipped = rows_needed > max_rows || cols_needed > max_cols;

    let mut out = String::new();
    for row in (last_row..=first_row).rev() {
        let t = Dyadic::<I>::frac(row, 2);
        let l = to_steps(&tg.left.eval(&t).expect("inside domain"));
        let r = to_steps(&tg.right.eval(&t).expect("inside domain"));
        let mut line = format!("{:>6} |", t.to_string());
        for col in (col_lo..=col_hi).rev() {
            let c = if col == l && col == r {
                '|'
            } else if col == l {
                '\\'
            } else if col == r {
                '/'
            } else if row == 0 {
                '-'
            } else {
                ' '
            };
            line.push(c);
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    let left_label = Dyadic::<I>::frac(col_hi, 2).to_string();
    let right_label = Dyadic::<I>::frac(col_lo, 2).to_string();
    let span = (col_hi - col_lo + 1) as usize;
    let pad = span.saturating_sub(left_label.len() + right_label.len()).max(1);
    let _ = writeln!(out, "{:>6}  {left_label}{}{right_label}", "value", " ".repeat(pad));
    if clipped {
        let _ = writeln!(
            out,
            "clipped: showing t in [{}, {}], values in [{}, {}]",
            Dyadic::<I>::frac(last_row, 2),
            Dyadic::<I>::frac(first_row, 2),
            Dyadic::<I>::frac(col_lo, 2),
            Dyadic::<I>::frac(col_hi, 2)
        );
    }
    out
}
