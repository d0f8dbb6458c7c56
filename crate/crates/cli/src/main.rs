//! `penrose`: generate patches, analyze their nets, render SVG, verify.
//!
//! Exit status: 0 on success, 1 when a hard check fails (exact ratio
//! suite, census recursion, contract invariants), 2 on any error. The
//! empirical small-scale bounds never affect the status.

mod config;
mod render;

use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;
use num_rational::BigRational;
use penrose_core::discrepancy::{
    analyze, contraction_holds, dart_area, iterate_ratio_map, kite_area, prop21_suite, AnalysisOptions, DensityModel,
};
use penrose_core::geom::Square;
use penrose_core::golden::{GoldenNum, PHI};
use penrose_core::net::{extract_net, write_net};
use penrose_core::report::{csv_string, json_string};
use penrose_core::tiling::{
    deflate_patch_with_cap, generate_patch_covering_with_cap, read_patch, substitution_counts, write_patch, Patch,
    SubstitutionRule, TileKind,
};

use config::{AnalyzeArgs, Cli, Command, FormatArg, GenerateArgs, OverlayArg, RenderArgs, RunConfig, SourceArgs, VerifyArgs};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = RunConfig::from_env();
    let outcome = match cli.command {
        Command::Generate(a) => cmd_generate(cfg, a),
        Command::Analyze(a) => cmd_analyze(cfg, a),
        Command::Render(a) => cmd_render(cfg, a),
        Command::Verify(a) => cmd_verify(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn build_patch(src: &SourceArgs, default_window: Option<Square>) -> Result<Patch> {
    let kind = TileKind::from(src.seed);
    if let Some(sq) = src.window.or(if src.rounds.is_none() { default_window } else { None }) {
        return generate_patch_covering_with_cap(&sq, src.cap).with_context(|| format!("covering {sq}"));
    }
    let n = src.rounds.context("give --rounds or --window")?;
    let seed = Patch::seed(kind, n as i32);
    Ok(deflate_patch_with_cap(&seed, n, src.cap)?)
}

fn out_path(cfg: &RunConfig, given: Option<PathBuf>, default_name: &str) -> PathBuf {
    given.unwrap_or_else(|| cfg.out_dir.join(default_name))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
}

fn load_patch(path: &Path) -> Result<Patch> {
    let f = fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
    read_patch(BufReader::new(f)).with_context(|| format!("reading {}", path.display()))
}

fn cmd_generate(cfg: RunConfig, a: GenerateArgs) -> Result<bool> {
    let cfg = RunConfig { seed: a.source.seed.into(), cap: a.source.cap, ..cfg };
    let patch = build_patch(&a.source, None)?;
    let path = out_path(&cfg, a.out, "patch.txt");
    let mut buf = Vec::new();
    write_patch(&patch, &mut buf)?;
    write_file(&path, &buf)?;
    let census = patch.census();
    let expected = patch.expected_census();
    if a.source.window.is_none() {
        println!("seed {}", cfg.seed.label());
    }
    println!("generation {} (cap {})", patch.generation, cfg.cap);
    println!("census half-kites {} half-darts {} total {}", census.kites, census.darts, census.total());
    if !patch.pruned.is_empty() {
        println!("pruned half-kites {} half-darts {}", patch.pruned.kites, patch.pruned.darts);
    }
    println!("recursion half-kites {} half-darts {}", expected.kites, expected.darts);
    println!("wrote {}", path.display());
    Ok(&census + &patch.pruned == expected)
}

fn cmd_analyze(cfg: RunConfig, a: AnalyzeArgs) -> Result<bool> {
    let cfg = RunConfig {
        i_min: a.i_min,
        i_max: a.i_max,
        formats: a.format.map(|f| vec![f]).unwrap_or(cfg.formats),
        ..cfg
    };
    anyhow::ensure!(cfg.i_min <= cfg.i_max, "--i-min {} exceeds --i-max {}", cfg.i_min, cfg.i_max);
    anyhow::ensure!(cfg.i_max < 20, "--i-max {} is beyond what fits in memory", cfg.i_max);
    let patch = match &a.patch {
        Some(p) => load_patch(p)?,
        None => {
            let side = (1u64 << (cfg.i_max + 1)) as f64;
            build_patch(&a.source, Some(Square::new(0.0, 0.0, side)))?
        }
    };
    let opts = AnalysisOptions { i_min: cfg.i_min, i_max: cfg.i_max, sample_spacing: a.spacing };
    let report = analyze(&patch, &opts)?;
    let dir = a.out.unwrap_or(cfg.out_dir);
    for f in &cfg.formats {
        let (name, text) = match f {
            FormatArg::Csv => ("report.csv", csv_string(&report)?),
            FormatArg::Json => ("report.json", json_string(&report)?),
        };
        let path = dir.join(name);
        write_file(&path, text.as_bytes())?;
        println!("wrote {}", path.display());
    }
    println!(
        "net: {} points, c1 {:.9}, c2 {:.6} (grid {})",
        report.net.points, report.net.c1, report.net.c2, report.net.sample_spacing
    );
    for r in &report.rows {
        println!(
            "i {:>2}: worst |K/D-phi| {:.6} (bound {:.6}, {}), E {:.6} (E-1 bound {:.4}, {}), log-sum {:.6}",
            r.i,
            r.scan.gap_max,
            r.prop22.bound,
            if r.prop22.holds { "holds" } else { "violated" },
            r.scan.e_max,
            r.prop23_bound,
            if r.prop23_holds { "holds" } else { "violated" },
            report.product.prefix.iter().find(|p| p.0 == r.i).map_or(f64::NAN, |p| p.2),
        );
    }
    println!("hard checks: {}", if report.hard_ok { "ok" } else { "FAILED" });
    Ok(report.hard_ok)
}

fn cmd_render(cfg: RunConfig, a: RenderArgs) -> Result<bool> {
    let patch = load_patch(&a.patch)?;
    let cfg = RunConfig {
        render: config::RenderStyle {
            stroke_width: a.stroke_width,
            kite_fill: a.kite_fill,
            dart_fill: a.dart_fill,
            overlay: a.overlay,
            grid_step: a.grid_step,
        },
        ..cfg
    };
    let style = &cfg.render;
    let net = match style.overlay {
        OverlayArg::Net => Some(extract_net(&patch)?),
        _ => None,
    };
    let svg = render::render_svg(&patch, net.as_ref(), style);
    let path = out_path(&cfg, a.out, "patch.svg");
    write_file(&path, svg.as_bytes())?;
    if let Some(net) = &net {
        let mut buf = Vec::new();
        write_net(net, &mut buf)?;
        let net_path = path.with_extension("net.csv");
        write_file(&net_path, &buf)?;
        println!("wrote {}", net_path.display());
    }
    println!("{} polygons, {} net points", patch.len(), net.as_ref().map_or(0, |n| n.len()));
    println!("wrote {}", path.display());
    Ok(true)
}

fn report_line(name: &str, ok: bool) -> bool {
    println!("{} {name}", if ok { "PASS" } else { "FAIL" });
    ok
}

fn cmd_verify(a: VerifyArgs) -> Result<bool> {
    let mut ok = true;
    let phi = GoldenNum::phi();
    ok &= report_line("phi^2 = phi + 1", &phi * &phi == &phi + &GoldenNum::one());
    ok &= report_line("phi * (1/phi) = 1", &phi * &phi.recip().expect("nonzero") == GoldenNum::one());

    let mut census_ok = true;
    for kind in [TileKind::HalfKite, TileKind::HalfDart] {
        for n in 0..=a.rounds {
            let p = deflate_patch_with_cap(&Patch::seed(kind, n as i32), n, u64::MAX)?;
            census_ok &= p.census() == substitution_counts(&Patch::seed(kind, 0).census(), n);
        }
    }
    ok &= report_line(&format!("geometric census = recursion, n = 0..{}", a.rounds), census_ok);

    ok &= report_line(
        "|K_n/D_n - phi| <= 2^(1-n), seeds (1,1) (2,1) (1,2) (5,3), n = 3..25",
        prop21_suite()?.iter().all(|s| s.holds),
    );

    // 1000 rational pairs spread over [1, 2]
    let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let contraction = (0..1000i64).all(|k| contraction_holds(&q(1000 + k, 1000), &q(1001 + (k * 617) % 1001, 1001)));
    ok &= report_line("|f(x) - f(y)| <= |x - y|/4 on 1000 pairs", contraction);
    let fixed = [q(1, 1), q(3, 2), q(2, 1)]
        .iter()
        .map(|x0| iterate_ratio_map(x0, 15).map(|t| t.all_hold()))
        .collect::<Result<Vec<bool>, _>>()?;
    ok &= report_line("|f^n(x0) - phi| <= 4^-n, x0 in {1, 3/2, 2}, n <= 15", fixed.iter().all(|&b| b));

    ok &= report_line("kite area / dart area = phi", (kite_area() / dart_area() - PHI).abs() <= 1e-9);
    let m = DensityModel::penrose();
    ok &= report_line("rho psi (1 + phi^2) = phi^2", m.residual().abs() <= 1e-12);

    let perron = SubstitutionRule::penrose().perron();
    ok &= report_line(
        "Perron eigenvalue phi^2, eigenvector ratio phi",
        (perron.eigenvalue - PHI * PHI).abs() <= 1e-10
            && (perron.eigenvector[0] / perron.eigenvector[1] - PHI).abs() <= 1e-10,
    );
    println!("{}", if ok { "all checks passed" } else { "some checks FAILED" });
    Ok(ok)
}
