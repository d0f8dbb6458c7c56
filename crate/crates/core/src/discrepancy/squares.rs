//! Exhaustive statistics over integer-corner squares of a net window.
//!
//! Points are binned into unit cells by exact floors of their ring
//! coordinates, so half-open membership in `[j, j + l) x [k, k + l)` is
//! decided without rounding; 2D prefix sums make each square O(1).

use rayon::prelude::*;
use serde::Serialize;

use super::density::e_rho;
use super::pairwise_sum;
use crate::error::{Error, Result};
use crate::geom::Square;
use crate::golden::PHI;
use crate::net::{Net, SourceKind};

pub struct SquareCounter {
    /// Integer corner of the first cell.
    x0: i64,
    y0: i64,
    nx: usize,
    ny: usize,
    kites: Vec<u32>,
    darts: Vec<u32>,
}

/// Result of scanning every square of one side length.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SquareScan {
    pub side: i64,
    pub squares: u64,
    /// Largest e_rho: the estimate of E_rho, a lower bound for the sup.
    pub e_max: f64,
    pub e_max_at: (i64, i64),
    pub e_min: f64,
    pub e_mean: f64,
    /// Largest `|K/D - phi|` over squares with `D > 0`.
    pub gap_max: f64,
    pub gap_max_at: (i64, i64),
    /// Squares skipped in the ratio statistics because `D = 0`.
    pub skipped_no_darts: u64,
}

#[derive(Clone, Copy)]
struct Partial {
    squares: u64,
    e_max: f64,
    e_max_at: (i64, i64),
    e_min: f64,
    gap_max: f64,
    gap_max_at: (i64, i64),
    skipped: u64,
}

impl Partial {
    fn empty() -> Self {
        Partial {
            squares: 0,
            e_max: f64::NEG_INFINITY,
            e_max_at: (0, 0),
            e_min: f64::INFINITY,
            gap_max: f64::NEG_INFINITY,
            gap_max_at: (0, 0),
            skipped: 0,
        }
    }

    /// Merge with a later partial; ties keep the earlier location.
    fn merge(mut self, o: &Partial) -> Self {
        self.squares += o.squares;
        if o.e_max > self.e_max {
            self.e_max = o.e_max;
            self.e_max_at = o.e_max_at;
        }
        self.e_min = self.e_min.min(o.e_min);
        if o.gap_max > self.gap_max {
            self.gap_max = o.gap_max;
            self.gap_max_at = o.gap_max_at;
        }
        self.skipped += o.skipped;
        self
    }
}

impl SquareCounter {
    /// Bins the points of `net` over the integer cells of its window.
    pub fn new(net: &Net) -> Result<Self> {
        let w = &net.window;
        let x0 = w.x.ceil() as i64;
        let y0 = w.y.ceil() as i64;
        let x1 = (w.x + w.side).floor() as i64;
        let y1 = (w.y + w.side).floor() as i64;
        if x1 <= x0 || y1 <= y0 {
            return Err(Error::WindowTooSmall(format!("window {w} holds no unit cell")));
        }
        let nx = (x1 - x0) as usize;
        let ny = (y1 - y0) as usize;
        let stride = nx + 1;
        let mut kites = vec![0u32; stride * (ny + 1)];
        let mut darts = vec![0u32; stride * (ny + 1)];
        for p in &net.points {
            let (fx, fy) = p.origin.scale_phi_pow(-net.scale_exp).floor_xy();
            let (cx, cy) = (fx - x0, fy - y0);
            if cx < 0 || cy < 0 || cx >= nx as i64 || cy >= ny as i64 {
                continue;
            }
            let c = (cy as usize + 1) * stride + cx as usize + 1;
            match p.source_kind {
                SourceKind::Kite => kites[c] += 1,
                SourceKind::Dart => darts[c] += 1,
            }
        }
        for grid in [&mut kites, &mut darts] {
            for y in 1..=ny {
                for x in 1..=nx {
                    let i = y * stride + x;
                    grid[i] = grid[i] + grid[i - 1] + grid[i - stride] - grid[i - stride - 1];
                }
            }
        }
        Ok(SquareCounter { x0, y0, nx, ny, kites, darts })
    }

    fn rect(&self, grid: &[u32], cx: usize, cy: usize, l: usize) -> u64 {
        let s = self.nx + 1;
        let at = |x: usize, y: usize| grid[y * s + x] as u64;
        at(cx + l, cy + l) + at(cx, cy) - at(cx, cy + l) - at(cx + l, cy)
    }

    /// Kite and dart counts in `[j1, j1 + l) x [j2, j2 + l)`.
    pub fn counts(&self, j1: i64, j2: i64, l: i64) -> Result<(u64, u64)> {
        let (cx, cy) = (j1 - self.x0, j2 - self.y0);
        if l < 0 || cx < 0 || cy < 0 || cx + l > self.nx as i64 || cy + l > self.ny as i64 {
            return Err(Error::OutsideWindow {
                square: Square::new(j1 as f64, j2 as f64, l as f64).to_string(),
                window: self.cells().to_string(),
            });
        }
        let (cx, cy, l) = (cx as usize, cy as usize, l as usize);
        Ok((self.rect(&self.kites, cx, cy, l), self.rect(&self.darts, cx, cy, l)))
    }

    /// Square spanned by the binned cells.
    pub fn cells(&self) -> Square {
        Square::new(self.x0 as f64, self.y0 as f64, self.nx.min(self.ny) as f64)
    }

    /// Number of admissible corners per axis for side `l`.
    fn positions(&self, l: i64) -> Result<(usize, usize)> {
        if l < 1 || l as usize > self.nx || l as usize > self.ny {
            return Err(Error::WindowTooSmall(format!(
                "no square of side {l} fits in {}x{} integer cells",
                self.nx, self.ny
            )));
        }
        Ok((self.nx - l as usize + 1, self.ny - l as usize + 1))
    }

    /// Every integer-corner square of side `l` inside the window.
    pub fn scan(&self, l: i64, rho: f64) -> Result<SquareScan> {
        self.scan_strided(l, rho, 1)
    }

    /// Like `scan`, but only corners on a `stride` sub-lattice.
    pub fn scan_strided(&self, l: i64, rho: f64, stride: usize) -> Result<SquareScan> {
        let (px, py) = self.positions(l)?;
        let stride = stride.max(1);
        let area = (l * l) as f64;
        let rows: Vec<Result<(Partial, f64)>> = (0..py)
            .into_par_iter()
            .filter(|cy| cy % stride == 0)
            .map(|cy| {
                let mut part = Partial::empty();
                let mut es = Vec::with_capacity(px / stride + 1);
                for cx in (0..px).step_by(stride) {
                    let k = self.rect(&self.kites, cx, cy, l as usize);
                    let d = self.rect(&self.darts, cx, cy, l as usize);
                    let at = (self.x0 + cx as i64, self.y0 + cy as i64);
                    let e = e_rho(k + d, area, rho)?;
                    part.squares += 1;
                    es.push(e);
                    if e > part.e_max {
                        part.e_max = e;
                        part.e_max_at = at;
                    }
                    part.e_min = part.e_min.min(e);
                    if d == 0 {
                        part.skipped += 1;
                    } else {
                        let gap = (k as f64 / d as f64 - PHI).abs();
                        if gap > part.gap_max {
                            part.gap_max = gap;
                            part.gap_max_at = at;
                        }
                    }
                }
                Ok((part, pairwise_sum(&es)))
            })
            .collect();
        let mut total = Partial::empty();
        let mut sums = Vec::with_capacity(rows.len());
        for r in rows {
            let (p, s) = r?;
            total = total.merge(&p);
            sums.push(s);
        }
        Ok(SquareScan {
            side: l,
            squares: total.squares,
            e_max: total.e_max,
            e_max_at: total.e_max_at,
            e_min: total.e_min,
            e_mean: pairwise_sum(&sums) / total.squares as f64,
            gap_max: if total.gap_max.is_finite() { total.gap_max } else { f64::NAN },
            gap_max_at: total.gap_max_at,
            skipped_no_darts: total.skipped,
        })
    }
}

/// Largest e_rho over all integer-corner squares of side `2^i` inside the
/// net window; a lower bound for the supremum over the whole plane.
#[allow(non_snake_case)]
pub fn estimate_E_rho(net: &Net, i: u32, rho: f64) -> Result<f64> {
    Ok(SquareCounter::new(net)?.scan(1i64 << i, rho)?.e_max)
}

/// Worst-case ratio gap against `phi^(-i/3)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Prop22Check {
    pub i: u32,
    pub gap: f64,
    pub bound: f64,
    pub holds: bool,
    pub squares: u64,
    pub skipped_no_darts: u64,
    /// Whether `i` is in the range where the bound is guaranteed.
    pub guaranteed: bool,
}

pub fn prop22_bound(i: u32) -> f64 {
    PHI.powf(-(i as f64) / 3.0)
}

pub fn prop22_from_scan(i: u32, scan: &SquareScan) -> Prop22Check {
    let bound = prop22_bound(i);
    Prop22Check {
        i,
        gap: scan.gap_max,
        bound,
        holds: scan.gap_max <= bound,
        squares: scan.squares,
        skipped_no_darts: scan.skipped_no_darts,
        guaranteed: i >= 50,
    }
}

pub fn check_prop22(net: &Net, i: u32) -> Result<Prop22Check> {
    // rho only affects e_rho, which is not used here
    let scan = SquareCounter::new(net)?.scan(1i64 << i, 1.0)?;
    Ok(prop22_from_scan(i, &scan))
}

/// `E - 1 <= 10 phi^(-i/3)`.
pub fn check_prop23(e: f64, i: u32) -> bool {
    e - 1.0 <= 10.0 * prop22_bound(i)
}
