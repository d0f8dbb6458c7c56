use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use penrose_core::geom::Square;
use penrose_core::tiling::{TileKind, DEFAULT_TILE_CAP};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "PENROSE_OUT_DIR";

#[derive(Parser, Debug)]
#[command(name = "penrose", version, about = "Exact Penrose kite/dart patches, nets and discrepancy reports")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Deflate a seed half-tile and write the patch file.
    Generate(GenerateArgs),
    /// Extract the net and write CSV/JSON discrepancy reports.
    Analyze(AnalyzeArgs),
    /// Draw a patch file as SVG.
    Render(RenderArgs),
    /// Run the exact, scale-independent checks.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeedArg {
    HalfKite,
    HalfDart,
}

impl From<SeedArg> for TileKind {
    fn from(s: SeedArg) -> Self {
        match s {
            SeedArg::HalfKite => TileKind::HalfKite,
            SeedArg::HalfDart => TileKind::HalfDart,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OverlayArg {
    Net,
    Grid,
    None,
}

/// How to obtain a patch: from a file, a seed, or a covered square.
#[derive(Args, Debug, Clone)]
pub struct SourceArgs {
    #[arg(long, value_enum, default_value = "half-kite")]
    pub seed: SeedArg,
    /// Deflation rounds; the seed is scaled so the result has unit tiles.
    #[arg(long)]
    pub rounds: Option<u32>,
    /// Cover the square `x,y,side` instead of deflating a bare seed.
    #[arg(long, value_parser = parse_square, conflicts_with = "rounds")]
    pub window: Option<Square>,
    /// Maximum number of half-tiles.
    #[arg(long, default_value_t = DEFAULT_TILE_CAP)]
    pub cap: u64,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Output file; defaults to `patch.txt` in the output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    /// Patch file to analyze; otherwise one is generated.
    #[arg(long, conflicts_with_all = ["rounds", "window"])]
    pub patch: Option<PathBuf>,
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, default_value_t = 4)]
    pub i_min: u32,
    #[arg(long, default_value_t = 9)]
    pub i_max: u32,
    /// Write only this format (default: both).
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
    /// Grid spacing for the covering-radius estimate.
    #[arg(long, default_value_t = penrose_core::net::DEFAULT_SAMPLE_SPACING)]
    pub spacing: f64,
    /// Output directory for `report.csv` / `report.json`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RenderArgs {
    #[arg(long)]
    pub patch: PathBuf,
    #[arg(long, value_enum, default_value = "none")]
    pub overlay: OverlayArg,
    /// Output file; defaults to `patch.svg` in the output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 0.02)]
    pub stroke_width: f64,
    #[arg(long, default_value = "#f2c14e")]
    pub kite_fill: String,
    #[arg(long, default_value = "#5b8e7d")]
    pub dart_fill: String,
    /// Grid overlay spacing.
    #[arg(long, default_value_t = 1.0)]
    pub grid_step: f64,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Largest n for the census-versus-geometry check.
    #[arg(long, default_value_t = 10)]
    pub rounds: u32,
}

fn parse_square(s: &str) -> Result<Square, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}")))
        .collect::<Result<_, _>>()?;
    match v[..] {
        [x, y, side] if side > 0.0 => Ok(Square::new(x, y, side)),
        [side] if side > 0.0 => Ok(Square::new(0.0, 0.0, side)),
        _ => Err("expected `x,y,side` or `side` with side > 0".into()),
    }
}

/// Resolved settings for one invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub out_dir: PathBuf,
    pub seed: TileKind,
    pub cap: u64,
    pub i_min: u32,
    pub i_max: u32,
    pub formats: Vec<FormatArg>,
    pub render: RenderStyle,
}

#[derive(Debug, Clone)]
pub struct RenderStyle {
    pub stroke_width: f64,
    pub kite_fill: String,
    pub dart_fill: String,
    pub overlay: OverlayArg,
    pub grid_step: f64,
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle {
            stroke_width: 0.02,
            kite_fill: "#f2c14e".into(),
            dart_fill: "#5b8e7d".into(),
            overlay: OverlayArg::None,
            grid_step: 1.0,
        }
    }
}

impl RunConfig {
    pub fn from_env() -> Self {
        RunConfig {
            out_dir: std::env::var_os(OUT_DIR_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(".")),
            seed: TileKind::HalfKite,
            cap: DEFAULT_TILE_CAP,
            i_min: 4,
            i_max: 9,
            formats: vec![FormatArg::Csv, FormatArg::Json],
            render: RenderStyle::default(),
        }
    }
}
