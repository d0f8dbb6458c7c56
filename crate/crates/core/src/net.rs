//! Separated nets: one point per kite or dart of a patch.
//!
//! Mirror half-tiles are paired through their shared axis; each full tile
//! contributes its incenter. A half-tile whose mirror partner is missing
//! (patch boundary) contributes the incenter of the tile it would complete,
//! which lies on its axis, so the points agree with the net of the
//! unbounded tiling.

use std::collections::HashMap;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{dist, Square, Xy};
use crate::golden::{embed, CycloPoint};
use crate::tiling::{Patch, TileKind};

/// Grid spacing used to estimate the covering radius.
pub const DEFAULT_SAMPLE_SPACING: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SourceKind {
    Kite,
    Dart,
}

impl SourceKind {
    pub fn label(self) -> &'static str {
        match self {
            SourceKind::Kite => "kite",
            SourceKind::Dart => "dart",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NetPoint {
    pub position: Xy,
    /// Exact location, in ring coordinates at the net's `scale_exp`.
    pub origin: CycloPoint,
    pub source_kind: SourceKind,
    /// Index in the patch of the first half-tile of the source tile.
    pub tile_id: usize,
}

#[derive(Clone, Debug)]
pub struct Net {
    pub points: Vec<NetPoint>,
    /// Minimum pairwise distance.
    pub c1: f64,
    /// Sampled covering radius over `window`; may underestimate the true
    /// value by at most `sample_spacing / sqrt 2`.
    pub c2: f64,
    pub window: Square,
    pub scale_exp: i32,
    pub sample_spacing: f64,
    /// Number of points that came from a half-tile without its partner.
    pub lone_halves: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct NetOptions {
    pub sample_spacing: f64,
    /// Overrides the patch window.
    pub window: Option<Square>,
}

impl Default for NetOptions {
    fn default() -> Self {
        NetOptions { sample_spacing: DEFAULT_SAMPLE_SPACING, window: None }
    }
}

pub fn extract_net(p: &Patch) -> Result<Net> {
    extract_net_with(p, NetOptions::default())
}

pub fn extract_net_with(p: &Patch, opts: NetOptions) -> Result<Net> {
    if p.is_empty() {
        return Err(Error::EmptyNet);
    }
    let window = opts
        .window
        .or(p.window)
        .ok_or_else(|| Error::InvalidArgument("patch has no window".into()))?;
    if !(opts.sample_spacing > 0.0) {
        return Err(Error::InvalidArgument("sample spacing must be positive".into()));
    }

    let mut first_half: HashMap<(TileKind, CycloPoint, CycloPoint), (usize, bool)> =
        HashMap::with_capacity(p.len() / 2 + 1);
    let mut order = Vec::with_capacity(p.len() / 2 + 1);
    for (i, t) in p.tiles.iter().enumerate() {
        first_half
            .entry((t.kind, t.apex, t.axis_end))
            .and_modify(|e| e.1 = true)
            .or_insert_with(|| {
                order.push(i);
                (i, false)
            });
    }
    let lone_halves = first_half.values().filter(|(_, paired)| !paired).count();
    drop(first_half);

    let points: Vec<NetPoint> = order
        .into_iter()
        .map(|i| {
            let t = &p.tiles[i];
            let origin = t.full_tile_incenter();
            NetPoint {
                position: embed(origin, p.scale_exp),
                origin,
                source_kind: if t.is_kite() { SourceKind::Kite } else { SourceKind::Dart },
                tile_id: i,
            }
        })
        .collect();

    let grid = PointGrid::new(&points, 1.0);
    let c1 = grid.min_pairwise(&points);
    let c2 = grid.covering_radius(&points, &window, opts.sample_spacing);
    Ok(Net { points, c1, c2, window, scale_exp: p.scale_exp, sample_spacing: opts.sample_spacing, lone_halves })
}

impl Net {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Kite- and dart-sourced points in the half-open square.
pub fn count_in_square(net: &Net, square: &Square) -> Result<(u64, u64)> {
    let w = net.window.dilate(1e-9);
    if !w.contains_square(square) {
        return Err(Error::OutsideWindow { square: square.to_string(), window: net.window.to_string() });
    }
    let mut k = 0;
    let mut d = 0;
    for p in &net.points {
        if square.contains_half_open(p.position) {
            match p.source_kind {
                SourceKind::Kite => k += 1,
                SourceKind::Dart => d += 1,
            }
        }
    }
    Ok((k, d))
}

/// Delimited text export: `#`-prefixed header, then `x,y,source_kind,tile_id`.
pub fn write_net<W: Write>(net: &Net, mut w: W) -> Result<()> {
    writeln!(w, "# penrose-net 1")?;
    writeln!(w, "# c1 {}", net.c1)?;
    writeln!(w, "# c2 {}", net.c2)?;
    writeln!(w, "# window {} {} {}", net.window.x, net.window.y, net.window.side)?;
    writeln!(w, "# scale_exp {}", net.scale_exp)?;
    writeln!(w, "x,y,source_kind,tile_id")?;
    for p in &net.points {
        writeln!(w, "{},{},{},{}", p.position.0, p.position.1, p.source_kind.label(), p.tile_id)?;
    }
    Ok(())
}

/// Bucket grid over point positions, stored CSR-style.
pub struct PointGrid {
    x0: f64,
    y0: f64,
    h: f64,
    nx: usize,
    ny: usize,
    start: Vec<u32>,
    idx: Vec<u32>,
}

impl PointGrid {
    pub fn new(points: &[NetPoint], h: f64) -> Self {
        let xs = points.iter().map(|p| p.position.0);
        let ys = points.iter().map(|p| p.position.1);
        let x0 = xs.clone().fold(f64::INFINITY, f64::min);
        let y0 = ys.clone().fold(f64::INFINITY, f64::min);
        let x1 = xs.fold(f64::NEG_INFINITY, f64::max);
        let y1 = ys.fold(f64::NEG_INFINITY, f64::max);
        let nx = ((x1 - x0) / h).floor() as usize + 1;
        let ny = ((y1 - y0) / h).floor() as usize + 1;
        let cell_of = |p: &NetPoint| {
            let cx = (((p.position.0 - x0) / h) as usize).min(nx - 1);
            let cy = (((p.position.1 - y0) / h) as usize).min(ny - 1);
            cy * nx + cx
        };
        let mut start = vec![0u32; nx * ny + 1];
        for p in points {
            start[cell_of(p) + 1] += 1;
        }
        for i in 0..nx * ny {
            start[i + 1] += start[i];
        }
        let mut fill = start.clone();
        let mut idx = vec![0u32; points.len()];
        for (i, p) in points.iter().enumerate() {
            let c = cell_of(p);
            idx[fill[c] as usize] = i as u32;
            fill[c] += 1;
        }
        PointGrid { x0, y0, h, nx, ny, start, idx }
    }

    fn cell(&self, q: Xy) -> (i64, i64) {
        (((q.0 - self.x0) / self.h).floor() as i64, ((q.1 - self.y0) / self.h).floor() as i64)
    }

    fn bucket(&self, cx: i64, cy: i64) -> &[u32] {
        if cx < 0 || cy < 0 || cx >= self.nx as i64 || cy >= self.ny as i64 {
            return &[];
        }
        let c = cy as usize * self.nx + cx as usize;
        &self.idx[self.start[c] as usize..self.start[c + 1] as usize]
    }

    /// Distance from `q` to the nearest point.
    pub fn nearest(&self, points: &[NetPoint], q: Xy) -> f64 {
        let (cx, cy) = self.cell(q);
        let mut best = f64::INFINITY;
        let max_ring = self.nx.max(self.ny) as i64 + cx.abs().max(cy.abs()) + 1;
        for r in 0..=max_ring {
            for (x, y) in ring(cx, cy, r) {
                for &i in self.bucket(x, y) {
                    best = best.min(dist(points[i as usize].position, q));
                }
            }
            // everything beyond ring r is at least r*h away
            if best <= r as f64 * self.h {
                break;
            }
        }
        best
    }

    /// Minimum distance over all pairs of distinct points.
    pub fn min_pairwise(&self, points: &[NetPoint]) -> f64 {
        let best = (0..points.len())
            .into_par_iter()
            .map(|i| {
                let p = points[i].position;
                let (cx, cy) = self.cell(p);
                let mut b = f64::INFINITY;
                for y in cy - 2..=cy + 2 {
                    for x in cx - 2..=cx + 2 {
                        for &j in self.bucket(x, y) {
                            if j as usize > i {
                                b = b.min(dist(p, points[j as usize].position));
                            }
                        }
                    }
                }
                b
            })
            .reduce(|| f64::INFINITY, f64::min);
        if best < 2.0 * self.h {
            best
        } else {
            brute_force_min_pairwise(points)
        }
    }

    /// Max over the sample grid `window.x + k s`, `window.y + l s` of the
    /// distance to the nearest point.
    ///
    /// Samples are visited in 5x5 blocks. A block whose centre sits at
    /// distance `d` can hold no sample farther than `d + r` (`r` its
    /// radius), so blocks that cannot beat the best block centre are
    /// skipped; the result equals the exhaustive maximum.
    pub fn covering_radius(&self, points: &[NetPoint], window: &Square, spacing: f64) -> f64 {
        let n = (window.side / spacing + 1e-9).floor() as usize + 1;
        let sample = |k: usize, l: usize| (window.x + k as f64 * spacing, window.y + l as f64 * spacing);
        const B: usize = 5;
        let nb = n.div_ceil(B);
        let block = |b: usize| {
            let lo = b * B;
            let hi = (lo + B - 1).min(n - 1);
            let mid = (lo + hi) / 2;
            (lo, hi, mid)
        };
        let centres: Vec<f64> = (0..nb * nb)
            .into_par_iter()
            .map(|i| {
                let (_, _, kx) = block(i % nb);
                let (_, _, ky) = block(i / nb);
                self.nearest(points, sample(kx, ky))
            })
            .collect();
        let floor = centres.iter().cloned().fold(0.0, f64::max);
        (0..nb * nb)
            .into_par_iter()
            .map(|i| {
                let (x_lo, x_hi, kx) = block(i % nb);
                let (y_lo, y_hi, ky) = block(i / nb);
                let rx = (kx - x_lo).max(x_hi - kx) as f64 * spacing;
                let ry = (ky - y_lo).max(y_hi - ky) as f64 * spacing;
                if centres[i] + rx.hypot(ry) + 1e-12 < floor {
                    return floor;
                }
                let mut m = floor;
                for ly in y_lo..=y_hi {
                    for lx in x_lo..=x_hi {
                        m = m.max(self.nearest(points, sample(lx, ly)));
                    }
                }
                m
            })
            .reduce(|| floor, f64::max)
    }
}

fn ring(cx: i64, cy: i64, r: i64) -> impl Iterator<Item = (i64, i64)> {
    let side = (-r..=r).flat_map(move |d| {
        let top = (cx + d, cy + r);
        let bottom = (cx + d, cy - r);
        if r == 0 {
            vec![(cx, cy)]
        } else {
            vec![top, bottom]
        }
    });
    let vertical = (-r + 1..=r - 1).flat_map(move |d| [(cx - r, cy + d), (cx + r, cy + d)]);
    side.chain(if r == 0 { None } else { Some(vertical) }.into_iter().flatten())
}

pub fn brute_force_min_pairwise(points: &[NetPoint]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            best = best.min(dist(points[i].position, points[j].position));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiling::deflate_patch;

    fn pt(x: f64, y: f64) -> NetPoint {
        NetPoint { position: (x, y), origin: CycloPoint::ZERO, source_kind: SourceKind::Kite, tile_id: 0 }
    }

    #[test]
    fn ring_enumerates_cells_once() {
        for r in 0..4 {
            let cells: Vec<_> = ring(3, -2, r).collect();
            let expected = if r == 0 { 1 } else { 8 * r as usize };
            assert_eq!(cells.len(), expected);
            let mut dedup = cells.clone();
            dedup.sort_unstable();
            dedup.dedup();
            assert_eq!(dedup.len(), expected);
            assert!(cells.iter().all(|&(x, y)| (x - 3).abs().max((y + 2).abs()) == r));
        }
    }

    #[test]
    fn grid_nearest_matches_brute_force() {
        let pts: Vec<NetPoint> = (0..200)
            .map(|i| {
                let t = i as f64;
                pt((t * 0.7371).sin() * 9.0, (t * 1.311).cos() * 7.0)
            })
            .collect();
        let grid = PointGrid::new(&pts, 1.0);
        for k in 0..100 {
            let q = ((k as f64 * 0.37).sin() * 15.0, (k as f64 * 0.91).cos() * 12.0);
            let brute = pts.iter().map(|p| dist(p.position, q)).fold(f64::INFINITY, f64::min);
            assert_eq!(grid.nearest(&pts, q), brute);
        }
        assert_eq!(grid.min_pairwise(&pts), brute_force_min_pairwise(&pts));
        // sparse points force the brute-force fallback
        let sparse = vec![pt(0.0, 0.0), pt(10.0, 0.0), pt(0.0, 7.0)];
        assert_eq!(PointGrid::new(&sparse, 1.0).min_pairwise(&sparse), 7.0);
    }

    #[test]
    fn covering_radius_matches_exhaustive_sampling() {
        let pts: Vec<NetPoint> = (0..150)
            .map(|i| {
                let t = i as f64;
                pt(((t * 0.531).sin() + 1.0) * 5.0, ((t * 1.77).cos() + 1.0) * 5.0)
            })
            .collect();
        let grid = PointGrid::new(&pts, 1.0);
        let w = Square::new(1.0, 1.5, 7.3);
        let s = 0.1;
        let n = (w.side / s + 1e-9).floor() as usize + 1;
        let mut brute = 0.0f64;
        for l in 0..n {
            for k in 0..n {
                let q = (w.x + k as f64 * s, w.y + l as f64 * s);
                brute = brute.max(pts.iter().map(|p| dist(p.position, q)).fold(f64::INFINITY, f64::min));
            }
        }
        assert_eq!(grid.covering_radius(&pts, &w, s), brute);
    }

    #[test]
    fn one_round_pairs_the_kite_halves() {
        // a half-kite splits into a full kite and a lone half-dart
        let p = deflate_patch(&Patch::seed(TileKind::HalfKite, 1), 1).unwrap();
        let net = extract_net(&p).unwrap();
        assert_eq!(net.len(), 2);
        assert_eq!(net.lone_halves, 1);
        assert_eq!(net.points[0].source_kind, SourceKind::Kite);
        assert_eq!(net.points[0].tile_id, 0);
        assert_eq!(net.points[1].source_kind, SourceKind::Dart);
        assert_eq!(net.points[1].origin, p.tiles[2].full_tile_incenter());
        assert!((net.c1 - brute_force_min_pairwise(&net.points)).abs() == 0.0);
    }

    #[test]
    fn empty_patch_errors() {
        assert!(matches!(extract_net(&Patch::empty()), Err(Error::EmptyNet)));
    }

    #[test]
    fn counting_contract() {
        let p = deflate_patch(&Patch::seed(TileKind::HalfKite, 7), 7).unwrap();
        let net = extract_net(&p).unwrap();
        let w = net.window;
        let (k, d) = count_in_square(&net, &Square::new(w.x, w.y, 0.0)).unwrap();
        assert_eq!((k, d), (0, 0));
        let (k, d) = count_in_square(&net, &w).unwrap();
        let inside = net.points.iter().filter(|q| w.contains_half_open(q.position)).count() as u64;
        assert_eq!(k + d, inside);
        assert!(count_in_square(&net, &w.dilate(1.0)).is_err());
    }
}
