//! Static SVG drawings of planar scenes.
//!
//! World coordinates map affinely onto the pixel canvas with the y axis
//! pointing up; the mapping is written into a header comment of every file.

use std::fmt::Write as _;

use crate::conformal::{GeneralizedSphere, Region, Side};
use crate::domain::Obstacle;
use crate::extgeom::{ExtendedPoint, Vector};

/// A world rectangle drawn on a `size × size·aspect` canvas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Viewport {
    pub xmin: f64,
    pub ymin: f64,
    pub xmax: f64,
    pub ymax: f64,
    pub width: u32,
    pub height: u32,
}

impl Viewport {
    pub fn new(rect: [f64; 4], size: u32) -> Option<Self> {
        let [xmin, ymin, xmax, ymax] = rect;
        if !(xmax > xmin && ymax > ymin) || size == 0 {
            return None;
        }
        let height = ((size as f64) * (ymax - ymin) / (xmax - xmin)).round().max(1.0) as u32;
        Some(Self { xmin, ymin, xmax, ymax, width: size, height })
    }

    pub fn scale(&self) -> f64 {
        self.width as f64 / (self.xmax - self.xmin)
    }

    pub fn to_px(&self, x: f64, y: f64) -> (f64, f64) {
        let s = self.scale();
        ((x - self.xmin) * s, (self.ymax - y) * s)
    }

    /// Half the diagonal, in world units; long enough to leave the canvas.
    fn reach(&self) -> f64 {
        let (cx, cy) = (0.5 * (self.xmin + self.xmax), 0.5 * (self.ymin + self.ymax));
        2.0 * ((self.xmax - self.xmin).hypot(self.ymax - self.ymin) + cx.hypot(cy))
    }
}

/// An SVG document under construction.
pub struct SvgDocument {
    view: Viewport,
    body: String,
}

impl SvgDocument {
    pub fn new(view: Viewport) -> Self {
        Self { view, body: String::new() }
    }

    fn circle_path(&self, c: &Vector, r: f64) -> String {
        let (cx, cy) = self.view.to_px(c[0], c[1]);
        let rp = r * self.view.scale();
        format!(
            "M {:.4} {:.4} a {rp:.4} {rp:.4} 0 1 0 {:.4} 0 a {rp:.4} {rp:.4} 0 1 0 {:.4} 0 Z",
            cx - rp,
            cy,
            2.0 * rp,
            -2.0 * rp
        )
    }

    fn polygon(&self, pts: &[(f64, f64)]) -> String {
        let mut s = String::new();
        for (i, (x, y)) in pts.iter().enumerate() {
            let (px, py) = self.view.to_px(*x, *y);
            let _ = write!(s, "{} {px:.4} {py:.4} ", if i == 0 { "M" } else { "L" });
        }
        s.push('Z');
        s
    }

    /// `{⟨n, x⟩ ≥ offset}` as a large quadrilateral clipped by the canvas.
    fn half_plane(&self, normal: &Vector, offset: f64) -> String {
        let l = self.view.reach();
        let (nx, ny) = (normal[0], normal[1]);
        let (fx, fy) = (nx * offset, ny * offset);
        let (tx, ty) = (-ny, nx);
        self.polygon(&[
            (fx + l * tx, fy + l * ty),
            (fx - l * tx, fy - l * ty),
            (fx - l * tx + l * nx, fy - l * ty + l * ny),
            (fx + l * tx + l * nx, fy + l * ty + l * ny),
        ])
    }

    fn canvas_rect(&self) -> String {
        format!("M 0 0 L {w} 0 L {w} {h} L 0 {h} Z", w = self.view.width, h = self.view.height)
    }

    pub fn comment(&mut self, text: &str) {
        let _ = writeln!(self.body, "<!-- {} -->", text.replace("--", "- -"));
    }

    pub fn obstacle(&mut self, o: &Obstacle, fill: &str) {
        let d = match o {
            Obstacle::ClosedBall { center, radius } => self.circle_path(center, *radius),
            Obstacle::ClosedBallExterior { center, radius } => {
                format!("{} {}", self.canvas_rect(), self.circle_path(center, *radius))
            }
            Obstacle::ClosedHalfSpace { normal, offset } => self.half_plane(normal, *offset),
            Obstacle::SinglePoint(ExtendedPoint::Finite(p)) => {
                self.point(p, 3.0, fill);
                return;
            }
            Obstacle::SinglePoint(ExtendedPoint::Infinity) => return,
        };
        let _ = writeln!(self.body, r#"<path d="{d}" fill="{fill}" fill-rule="evenodd" stroke="none"/>"#);
    }

    /// The boundary of a region as an outline.
    pub fn outline(&mut self, r: &Region, stroke: &str) {
        let d = match r.surface() {
            GeneralizedSphere::Sphere { center, radius } => self.circle_path(center, *radius),
            GeneralizedSphere::Hyperplane { normal, offset } => {
                let l = self.view.reach();
                let (fx, fy) = (normal[0] * offset, normal[1] * offset);
                let (tx, ty) = (-normal[1], normal[0]);
                let (ax, ay) = self.view.to_px(fx + l * tx, fy + l * ty);
                let (bx, by) = self.view.to_px(fx - l * tx, fy - l * ty);
                format!("M {ax:.4} {ay:.4} L {bx:.4} {by:.4}")
            }
        };
        let dash = if r.side() == Side::Positive { r#" stroke-dasharray="6 3""# } else { "" };
        let _ = writeln!(self.body, r#"<path d="{d}" fill="none" stroke="{stroke}" stroke-width="1.5"{dash}/>"#);
    }

    pub fn disk(&mut self, c: &Vector, r: f64, fill: &str) {
        let d = self.circle_path(c, r);
        let _ = writeln!(self.body, r#"<path d="{d}" fill="{fill}" stroke="none"/>"#);
    }

    /// A dot with a fixed pixel radius.
    pub fn point(&mut self, p: &Vector, radius_px: f64, fill: &str) {
        let (x, y) = self.view.to_px(p[0], p[1]);
        let _ = writeln!(self.body, r#"<circle cx="{x:.4}" cy="{y:.4}" r="{radius_px}" fill="{fill}"/>"#);
    }

    pub fn finish(self, header: &[String]) -> String {
        let v = self.view;
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
            w = v.width,
            h = v.height
        );
        for line in header {
            let _ = writeln!(out, "<!-- {} -->", line.replace("--", "- -"));
        }
        let _ = writeln!(
            out,
            "<!-- viewport: world [{}, {}] x [{}, {}] -> pixels [0, {}] x [0, {}]; px = (x - {}) * {s}, py = ({} - y) * {s} -->",
            v.xmin,
            v.xmax,
            v.ymin,
            v.ymax,
            v.width,
            v.height,
            v.xmin,
            v.ymax,
            s = v.scale()
        );
        let _ = writeln!(out, r#"<rect width="{}" height="{}" fill="white"/>"#, v.width, v.height);
        out.push_str(&self.body);
        out.push_str("</svg>\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mapping_flips_y() {
        let v = Viewport::new([-1.0, -1.0, 1.0, 1.0], 200).unwrap();
        assert_eq!(v.to_px(-1.0, 1.0), (0.0, 0.0));
        assert_eq!(v.to_px(1.0, -1.0), (200.0, 200.0));
        assert!(Viewport::new([1.0, 0.0, 0.0, 1.0], 10).is_none());
    }

    #[test]
    fn document_is_well_formed() {
        let v = Viewport::new([-2.0, -1.0, 2.0, 1.0], 400).unwrap();
        assert_eq!(v.height, 200);
        let mut doc = SvgDocument::new(v);
        doc.obstacle(&Obstacle::ball_exterior(Vector::zeros(2), 1.0).unwrap(), "#ccc");
        doc.obstacle(&Obstacle::half_space(Vector::from_column_slice(&[1.0, 0.0]), 1.5).unwrap(), "#ccc");
        doc.point(&Vector::zeros(2), 2.0, "blue");
        let svg = doc.finish(&["test".to_owned()]);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains("viewport: world [-2, 2] x [-1, 1]"));
        assert_eq!(svg.matches("<path").count(), 2);
    }
}
