//! SVG rendering of `1..=limit` laid out on concentric `s`-gons.
//!
//! Spoke `m` (1-based) sits at angle `360 * m / s` degrees clockwise from
//! twelve o'clock, so spoke `s` is at the top and spoke 1 just right of it.
//! Ring `k` holds `(k - 1) * s + 1 ..= k * s`.

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{check_resource, Error, Result};
use crate::numerics::WheelConfig;
use crate::oracle;
use crate::pipeline::{self, SearchStrategy};

/// Rendering cap; every cell carries a number label up to this limit.
pub const WHEEL_CAP: u64 = 10_000;

const RING_GAP: f64 = 16.0;
const MARGIN: f64 = 40.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WheelCell {
    pub n: u64,
    pub modulus: u64,
    pub ring: u64,
    pub prime: bool,
}

/// A laid-out wheel whose prime markers have been cross-checked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WheelRender {
    wheel: WheelConfig,
    limit: u64,
    highlighted: Vec<u64>,
    cells: Vec<WheelCell>,
}

impl WheelRender {
    /// Lays out `1..=limit`, marking primes by the staged pipeline.
    ///
    /// Fails with [`Error::Internal`] if the pipeline and the sieve disagree
    /// on any cell, or if a prime above 3 lands off the prime spokes.
    pub fn build(sides: u64, limit: u64) -> Result<Self> {
        if limit == 0 {
            return Err(Error::Invalid { n: 0, min: 1 });
        }
        check_resource("wheel limit", limit, WHEEL_CAP)?;
        let wheel = WheelConfig::covering(sides, limit)?;
        let highlighted = wheel.prime_moduli();
        let table = oracle::sieve(limit.max(2))?;

        let mut cells = Vec::with_capacity(limit as usize);
        for n in 1..=limit {
            let pos = wheel.position(n)?;
            let prime = pipeline::is_prime(n, SearchStrategy::AscendingScan)?
                .kind
                .is_prime();
            if prime != table.is_prime(n) {
                return Err(Error::Internal(format!(
                    "pipeline and sieve disagree on {n} while rendering"
                )));
            }
            if prime && n > 3 && !highlighted.contains(&pos.modulus) {
                return Err(Error::Internal(format!(
                    "prime {n} on non-prime spoke {}",
                    pos.modulus
                )));
            }
            cells.push(WheelCell {
                n,
                modulus: pos.modulus,
                ring: pos.ring,
                prime,
            });
        }
        Ok(WheelRender {
            wheel,
            limit,
            highlighted,
            cells,
        })
    }

    pub fn sides(&self) -> u64 {
        self.wheel.sides()
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn rings(&self) -> u64 {
        self.wheel.rings()
    }

    pub fn highlighted(&self) -> &[u64] {
        &self.highlighted
    }

    pub fn cells(&self) -> &[WheelCell] {
        &self.cells
    }

    /// Primes sitting off the highlighted spokes (only ever 2 and 3).
    pub fn off_pattern_primes(&self) -> Vec<u64> {
        self.cells
            .iter()
            .filter(|c| c.prime && !self.highlighted.contains(&c.modulus))
            .map(|c| c.n)
            .collect()
    }
}

struct Geometry {
    sides: u64,
    inner: f64,
    center: f64,
}

impl Geometry {
    fn new(render: &WheelRender) -> Self {
        let sides = render.sides();
        // Keep neighbouring cells on the innermost ring about one gap apart.
        let inner = (RING_GAP * sides as f64 / (2.0 * PI)).max(3.0 * RING_GAP);
        let outer = inner + (render.rings() - 1) as f64 * RING_GAP;
        Geometry {
            sides,
            inner,
            center: outer + MARGIN,
        }
    }

    fn radius(&self, ring: u64) -> f64 {
        self.inner + (ring - 1) as f64 * RING_GAP
    }

    fn point(&self, modulus: u64, radius: f64) -> (f64, f64) {
        let theta = 2.0 * PI * modulus as f64 / self.sides as f64 - PI / 2.0;
        (
            self.center + radius * theta.cos(),
            self.center + radius * theta.sin(),
        )
    }
}

// Fixed precision keeps the output byte-stable; -0.00 is folded to 0.00.
fn f(v: f64) -> String {
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

/// Serializes a render as a standalone SVG 1.1 document.
pub fn emit_wheel_svg(render: &WheelRender) -> String {
    let g = Geometry::new(render);
    let size = 2.0 * g.center;
    let outer = g.radius(render.rings()) + RING_GAP / 2.0;
    let cell_r = (RING_GAP * 0.42).min(PI * g.inner / g.sides as f64 * 0.8);
    let digits = render.limit().to_string().len().max(2) as f64;
    let font = (2.0 * cell_r / (0.6 * digits)).min(cell_r * 1.1);

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{0}" height="{0}" viewBox="0 0 {0} {0}">"#,
        f(size)
    );
    let _ = writeln!(
        s,
        "<title>{}-sided prime wheel, 1 to {}</title>",
        render.sides(),
        render.limit()
    );
    let _ = writeln!(
        s,
        "<style>.ring{{fill:none;stroke:#c8c8c8;stroke-width:0.6}}\
.spoke{{stroke:#e4e4e4;stroke-width:0.8}}\
.spoke.prime-modulus{{stroke:#d9534f;stroke-width:1.6}}\
.cell{{fill:#ffffff;stroke:#999999;stroke-width:0.4}}\
.cell.prime{{fill:#f0ad4e;stroke:#b35c00}}\
.cell.prime.off-pattern{{fill:#5bc0de;stroke:#1b6d85}}\
.label{{font-family:monospace;text-anchor:middle;dominant-baseline:central}}\
.spoke-label{{font-family:monospace;font-size:10px;text-anchor:middle;dominant-baseline:central}}</style>"
    );
    let _ = writeln!(s, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);

    let _ = writeln!(s, r#"<g id="spokes">"#);
    for m in 1..=g.sides {
        let (x, y) = g.point(m, outer);
        let class = if render.highlighted().contains(&m) {
            "spoke prime-modulus"
        } else {
            "spoke"
        };
        let _ = writeln!(
            s,
            r#"<line class="{class}" data-modulus="{m}" x1="{c}" y1="{c}" x2="{}" y2="{}"/>"#,
            f(x),
            f(y),
            c = f(g.center)
        );
        let (lx, ly) = g.point(m, outer + 14.0);
        let _ = writeln!(
            s,
            r#"<text class="spoke-label" x="{}" y="{}">{m}</text>"#,
            f(lx),
            f(ly)
        );
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r#"<g id="rings">"#);
    for ring in 1..=render.rings() {
        let r = g.radius(ring);
        let points: Vec<String> = (1..=g.sides)
            .map(|m| {
                let (x, y) = g.point(m, r);
                format!("{},{}", f(x), f(y))
            })
            .collect();
        let _ = writeln!(
            s,
            r#"<polygon class="ring" data-ring="{ring}" points="{}"/>"#,
            points.join(" ")
        );
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r#"<g id="cells">"#);
    for c in render.cells() {
        let (x, y) = g.point(c.modulus, g.radius(c.ring));
        let class = match (c.prime, render.highlighted().contains(&c.modulus)) {
            (true, true) => "cell prime",
            (true, false) => "cell prime off-pattern",
            (false, _) => "cell",
        };
        let _ = writeln!(
            s,
            r#"<circle class="{class}" data-n="{}" data-modulus="{}" cx="{}" cy="{}" r="{}"/>"#,
            c.n,
            c.modulus,
            f(x),
            f(y),
            f(cell_r)
        );
        let _ = writeln!(
            s,
            r#"<text class="label" x="{}" y="{}" font-size="{}">{}</text>"#,
            f(x),
            f(y),
            f(font),
            c.n
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    s
}
