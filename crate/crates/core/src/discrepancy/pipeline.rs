//! Full per-scale analysis of a patch.

use std::collections::BTreeMap;

use serde::Serialize;

use super::density::DensityModel;
use super::product::{partial_product, PartialProduct};
use super::ratio::{check_prop21, RatioRow};
use super::region::{phi_exponent, region_analysis_with, RegionCounts};
use super::squares::{check_prop23, prop22_bound, prop22_from_scan, Prop22Check, SquareCounter, SquareScan};
use crate::error::{Error, Result};
use crate::geom::{dist, Square};
use crate::golden::PHI;
use crate::net::{extract_net_with, Net, NetOptions, SourceKind, DEFAULT_SAMPLE_SPACING};
use crate::tiling::{Patch, TileCensus, DEFAULT_TILE_CAP};

/// Seeds for the exact ratio suite, as censuses at `n = 1`.
pub const PROP21_SEEDS: [(u32, u32); 4] = [(1, 1), (2, 1), (1, 2), (5, 3)];
pub const PROP21_N_MAX: u32 = 25;

#[derive(Clone, Copy, Debug)]
pub struct AnalysisOptions {
    pub i_min: u32,
    pub i_max: u32,
    pub sample_spacing: f64,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { i_min: 4, i_max: 9, sample_spacing: DEFAULT_SAMPLE_SPACING }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NetSummary {
    pub points: u64,
    pub kites: u64,
    pub darts: u64,
    pub c1: f64,
    pub c2: f64,
    pub sample_spacing: f64,
    pub window: Square,
    pub lone_halves: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PatchSummary {
    pub generation: u32,
    pub half_kites: u64,
    pub half_darts: u64,
    pub pruned_half_kites: u64,
    pub pruned_half_darts: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Prop21Summary {
    pub seed: (u32, u32),
    pub n_max: u32,
    pub holds: bool,
    pub rows: Vec<RatioRow>,
}

/// Statistics at one scale `l = 2^i`.
#[derive(Clone, Debug, Serialize)]
pub struct ScaleRow {
    pub i: u32,
    pub side: i64,
    /// Lower-left corner of the window-centred reference square.
    pub reference: (i64, i64),
    pub k: u64,
    pub d: u64,
    /// `|K/D - phi|` in the reference square.
    pub ratio_gap: f64,
    pub scan: SquareScan,
    pub prop22: Prop22Check,
    /// `E - 1`, with E the `scan.e_max` estimate.
    pub e_minus_1: f64,
    pub prop23_bound: f64,
    pub prop23_holds: bool,
    pub region: RegionCounts,
    pub ratio_sandwich: bool,
}

/// Checks that hold at every scale; the exit status is derived from these.
#[derive(Clone, Debug, Serialize)]
pub struct HardChecks {
    pub prop21_exact: bool,
    pub census_matches_recursion: bool,
    pub rho_identity: bool,
    pub e_at_least_one: bool,
    pub log_sum_inequality: bool,
    pub region_contracts: bool,
    pub separation_positive: bool,
}

impl HardChecks {
    pub fn all(&self) -> bool {
        self.prop21_exact
            && self.census_matches_recursion
            && self.rho_identity
            && self.e_at_least_one
            && self.log_sum_inequality
            && self.region_contracts
            && self.separation_positive
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DiscrepancyReport {
    pub density: DensityModel,
    pub rho_residual: f64,
    pub patch: PatchSummary,
    pub net: NetSummary,
    pub prop21: Vec<Prop21Summary>,
    pub rows: Vec<ScaleRow>,
    pub product: PartialProduct,
    pub hard: HardChecks,
    pub hard_ok: bool,
}

fn check_unit_scale(p: &Patch) -> Result<()> {
    let t = p.tiles.first().ok_or(Error::EmptyNet)?;
    let [a, b, c] = p.triangle(t);
    let long = dist(a, b).max(dist(a, c)).max(dist(b, c));
    if (long - PHI).abs() > 1e-9 {
        return Err(Error::InvalidArgument(format!(
            "tiles must have edge lengths 1 and phi, found a longest edge of {long}"
        )));
    }
    Ok(())
}

pub fn prop21_suite() -> Result<Vec<Prop21Summary>> {
    PROP21_SEEDS
        .iter()
        .map(|&(k, d)| {
            let t = check_prop21(&TileCensus::new(k, d), PROP21_N_MAX)?;
            Ok(Prop21Summary {
                seed: (k, d),
                n_max: PROP21_N_MAX,
                holds: t.all_hold(),
                rows: t.steps.iter().map(RatioRow::from).collect(),
            })
        })
        .collect()
}

pub fn analyze(patch: &Patch, opts: &AnalysisOptions) -> Result<DiscrepancyReport> {
    if opts.i_min > opts.i_max {
        return Err(Error::InvalidArgument(format!("i_min {} > i_max {}", opts.i_min, opts.i_max)));
    }
    if opts.i_max > 40 {
        return Err(Error::InvalidArgument(format!("i_max {} is out of range", opts.i_max)));
    }
    check_unit_scale(patch)?;
    let density = DensityModel::penrose();
    let net = extract_net_with(patch, NetOptions { sample_spacing: opts.sample_spacing, window: None })?;
    let counter = SquareCounter::new(&net)?;
    let cells = counter.cells();
    let max_side = 1i64 << opts.i_max;
    if (cells.side as i64) < max_side {
        return Err(Error::WindowTooSmall(format!(
            "window {} holds no integer-corner square of side 2^{} = {max_side}",
            net.window, opts.i_max
        )));
    }

    let mut ancestors: BTreeMap<u32, Patch> = BTreeMap::new();
    let mut rows = Vec::new();
    for i in opts.i_min..=opts.i_max {
        let l = 1i64 << i;
        let scan = counter.scan(l, density.rho)?;
        let off = (cells.side as i64 - l) / 2;
        let reference = (cells.x as i64 + off, cells.y as i64 + off);
        let (k, d) = counter.counts(reference.0, reference.1, l)?;
        let square = Square::new(reference.0 as f64, reference.1 as f64, l as f64);

        let h = (phi_exponent(l as f64) / 2) as u32;
        let coarse_gen = patch.generation.checked_sub(h).ok_or_else(|| {
            Error::InvalidArgument(format!("patch generation {} is below {h}", patch.generation))
        })?;
        if let std::collections::btree_map::Entry::Vacant(v) = ancestors.entry(coarse_gen) {
            v.insert(patch.regenerate(coarse_gen, DEFAULT_TILE_CAP)?);
        }
        let region = region_analysis_with(patch, &square, ancestors.get(&coarse_gen))?;
        // larger squares need the same or coarser ancestors
        ancestors.retain(|&g, _| g <= coarse_gen);

        let prop22 = prop22_from_scan(i, &scan);
        let e = scan.e_max;
        rows.push(ScaleRow {
            i,
            side: l,
            reference,
            k,
            d,
            ratio_gap: if d > 0 { (k as f64 / d as f64 - PHI).abs() } else { f64::NAN },
            prop22,
            e_minus_1: e - 1.0,
            prop23_bound: 10.0 * prop22_bound(i),
            prop23_holds: check_prop23(e, i),
            ratio_sandwich: region.ratio_sandwich(k, d),
            region,
            scan,
        });
    }

    let product = partial_product(&rows.iter().map(|r| (r.i, r.scan.e_max)).collect::<Vec<_>>())?;
    let prop21 = prop21_suite()?;
    let census = patch.census();
    let hard = HardChecks {
        prop21_exact: prop21.iter().all(|s| s.holds),
        census_matches_recursion: &census + &patch.pruned == patch.expected_census(),
        rho_identity: density.residual().abs() <= 1e-12,
        e_at_least_one: rows.iter().all(|r| r.scan.e_min >= 1.0),
        log_sum_inequality: product.holds,
        region_contracts: rows.iter().all(|r| r.region.contract_ok()),
        separation_positive: net.c1 > 0.0,
    };
    Ok(DiscrepancyReport {
        density,
        rho_residual: density.residual(),
        patch: PatchSummary {
            generation: patch.generation,
            half_kites: census.kites_u64(),
            half_darts: census.darts_u64(),
            pruned_half_kites: patch.pruned.kites_u64(),
            pruned_half_darts: patch.pruned.darts_u64(),
        },
        net: summarize(&net),
        prop21,
        rows,
        product,
        hard_ok: hard.all(),
        hard,
    })
}

fn summarize(net: &Net) -> NetSummary {
    let kites = net.points.iter().filter(|p| p.source_kind == SourceKind::Kite).count() as u64;
    NetSummary {
        points: net.len() as u64,
        kites,
        darts: net.len() as u64 - kites,
        c1: net.c1,
        c2: net.c2,
        sample_spacing: net.sample_spacing,
        window: net.window,
        lone_halves: net.lone_halves as u64,
    }
}
