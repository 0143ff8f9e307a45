//! Point charts of permutations: element `i` is drawn at column `i`, and
//! bigger elements are drawn higher.

use std::fmt::Write as _;

use sturmlab::{Pattern, Representative};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ChartError {
    #[error("nothing to chart: the input has no elements")]
    EmptyInput,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry {
    pub width: f64,
    pub height: f64,
    pub margin: f64,
}

impl Default for Geometry {
    fn default() -> Self {
        Geometry { width: 640.0, height: 320.0, margin: 24.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Style {
    pub point_radius: f64,
    pub axes: bool,
}

impl Default for Style {
    fn default() -> Self {
        Style { point_radius: 3.0, axes: true }
    }
}

/// One point per index, indices contiguous from 0.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartDocument {
    heights: Vec<f64>,
    ranks: Vec<u32>,
    pub geometry: Geometry,
    pub style: Style,
}

impl ChartDocument {
    /// Heights are ranks, or the values themselves when `by_value` is set.
    pub fn from_representative(rep: &Representative, by_value: bool) -> Result<Self, ChartError> {
        if rep.is_empty() {
            return Err(ChartError::EmptyInput);
        }
        let heights = if by_value {
            rep.values().iter().map(|v| v.to_f64()).collect()
        } else {
            rep.ranks().iter().map(|&r| f64::from(r)).collect()
        };
        Ok(Self::build(heights, rep.ranks().to_vec()))
    }

    pub fn from_pattern(pattern: &Pattern) -> Result<Self, ChartError> {
        if pattern.is_empty() {
            return Err(ChartError::EmptyInput);
        }
        let ranks: Vec<u32> = pattern.ranks().iter().map(|&r| r - 1).collect();
        Ok(Self::build(ranks.iter().map(|&r| f64::from(r)).collect(), ranks))
    }

    fn build(heights: Vec<f64>, ranks: Vec<u32>) -> Self {
        ChartDocument { heights, ranks, geometry: Geometry::default(), style: Style::default() }
    }

    pub fn points(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.heights.iter().copied().enumerate()
    }

    fn project(&self) -> Vec<(f64, f64)> {
        let Geometry { width, height, margin } = self.geometry;
        let (inner_w, inner_h) = (width - 2.0 * margin, height - 2.0 * margin);
        let (lo, hi) = self.heights.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &h| (lo.min(h), hi.max(h)));
        let n = self.heights.len();
        self.points()
            .map(|(i, h)| {
                let x = if n == 1 { width / 2.0 } else { margin + inner_w * i as f64 / (n - 1) as f64 };
                let y = if hi > lo { height - margin - inner_h * (h - lo) / (hi - lo) } else { height / 2.0 };
                (x, y)
            })
            .collect()
    }

    pub fn to_svg(&self) -> String {
        let Geometry { width, height, margin } = self.geometry;
        let mut s = String::new();
        s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            s,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width:.0}\" height=\"{height:.0}\" viewBox=\"0 0 {width:.0} {height:.0}\">"
        );
        let _ = writeln!(s, "<rect x=\"0\" y=\"0\" width=\"{width:.0}\" height=\"{height:.0}\" fill=\"white\"/>");
        if self.style.axes {
            let (x0, y0) = (margin / 2.0, height - margin / 2.0);
            let _ = writeln!(
                s,
                "<path d=\"M{x0:.2} {:.2}V{y0:.2}H{:.2}\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1\"/>",
                margin / 2.0,
                width - margin / 2.0
            );
        }
        s.push_str("<g fill=\"black\">\n");
        for (x, y) in self.project() {
            let _ = writeln!(s, "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"{:.2}\"/>", self.style.point_radius);
        }
        s.push_str("</g>\n</svg>\n");
        s
    }

    /// One column per index and one row per rank, highest rank on top.
    pub fn to_ascii(&self) -> String {
        let n = self.ranks.len();
        let mut s = String::with_capacity(n * (n + 1));
        for row in (0..n as u32).rev() {
            s.extend(self.ranks.iter().map(|&r| if r == row { 'o' } else { '.' }));
            s.push('\n');
        }
        s
    }
}
