//! Line-oriented text format for patches.
//!
//! ```text
//! penrose-patch 1
//! generation <g>
//! scale_exp <s>
//! window <x> <y> <side> | window none
//! clip <x> <y> <side>   | clip none
//! pruned <K> <D>
//! seed <tile> <seed_scale_exp>
//! tiles <n>
//! <tile>
//! ...
//! ```
//!
//! `<tile>` is `kind chirality generation` followed by the twelve ring
//! coefficients of apex, axis end and wing: kind is `K` (half-kite) or `D`
//! (half-dart), chirality `L` or `R`. Floats use the shortest round-trip
//! decimal representation, so a write/read cycle is lossless.

use std::fmt::Write as _;
use std::io::{BufRead, Write};

use num_bigint::BigUint;

use super::halftile::{Chirality, HalfTile, TileKind};
use super::patch::{Patch, Provenance};
use super::substitution::TileCensus;
use crate::error::{Error, Result};
use crate::geom::Square;
use crate::golden::CycloPoint;

const MAGIC: &str = "penrose-patch 1";

fn tile_line(t: &HalfTile) -> String {
    let mut s = String::with_capacity(96);
    let kind = if t.is_kite() { 'K' } else { 'D' };
    let chir = match t.chirality {
        Chirality::Left => 'L',
        Chirality::Right => 'R',
    };
    write!(s, "{kind} {chir} {}", t.generation).unwrap();
    for p in t.vertices() {
        for c in p.c {
            write!(s, " {c}").unwrap();
        }
    }
    s
}

fn square_field(sq: &Option<Square>) -> String {
    match sq {
        Some(s) => format!("{} {} {}", s.x, s.y, s.side),
        None => "none".to_string(),
    }
}

pub fn write_patch<W: Write>(p: &Patch, mut w: W) -> Result<()> {
    writeln!(w, "{MAGIC}")?;
    writeln!(w, "generation {}", p.generation)?;
    writeln!(w, "scale_exp {}", p.scale_exp)?;
    writeln!(w, "window {}", square_field(&p.window))?;
    writeln!(w, "clip {}", square_field(&p.provenance.clip))?;
    writeln!(w, "pruned {} {}", p.pruned.kites, p.pruned.darts)?;
    writeln!(w, "seed {} {}", tile_line(&p.provenance.seed), p.provenance.seed_scale_exp)?;
    writeln!(w, "tiles {}", p.tiles.len())?;
    for t in &p.tiles {
        writeln!(w, "{}", tile_line(t))?;
    }
    Ok(())
}

pub fn patch_to_string(p: &Patch) -> String {
    let mut buf = Vec::new();
    write_patch(p, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}

struct Lines<R> {
    inner: std::io::Lines<R>,
    line: usize,
}

impl<R: BufRead> Lines<R> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { line: self.line, msg: msg.into() }
    }

    fn next_line(&mut self) -> Result<String> {
        self.line += 1;
        match self.inner.next() {
            Some(l) => Ok(l?),
            None => Err(self.err("unexpected end of file")),
        }
    }

    /// Next line, which must start with `key`; returns the remaining fields.
    fn keyed(&mut self, key: &str) -> Result<Vec<String>> {
        let l = self.next_line()?;
        let mut it = l.split_whitespace();
        if it.next() != Some(key) {
            return Err(self.err(format!("expected `{key}`")));
        }
        Ok(it.map(str::to_string).collect())
    }

    fn parse<T: std::str::FromStr>(&self, s: &str) -> Result<T> {
        s.parse().map_err(|_| self.err(format!("bad number `{s}`")))
    }

    fn square(&self, f: &[String]) -> Result<Option<Square>> {
        match f {
            [none] if none == "none" => Ok(None),
            [x, y, s] => Ok(Some(Square::new(self.parse(x)?, self.parse(y)?, self.parse(s)?))),
            _ => Err(self.err("expected `none` or three numbers")),
        }
    }

    fn tile(&self, f: &[String]) -> Result<HalfTile> {
        if f.len() != 15 {
            return Err(self.err(format!("tile needs 15 fields, got {}", f.len())));
        }
        let kind = match f[0].as_str() {
            "K" => TileKind::HalfKite,
            "D" => TileKind::HalfDart,
            k => return Err(self.err(format!("unknown tile kind `{k}`"))),
        };
        let chirality = match f[1].as_str() {
            "L" => Chirality::Left,
            "R" => Chirality::Right,
            c => return Err(self.err(format!("unknown chirality `{c}`"))),
        };
        let generation = self.parse(&f[2])?;
        let mut pts = [CycloPoint::ZERO; 3];
        for (k, p) in pts.iter_mut().enumerate() {
            for j in 0..4 {
                p.c[j] = self.parse(&f[3 + 4 * k + j])?;
            }
        }
        Ok(HalfTile::new(kind, chirality, pts[0], pts[1], pts[2], generation))
    }
}

pub fn read_patch<R: BufRead>(r: R) -> Result<Patch> {
    let mut lines = Lines { inner: r.lines(), line: 0 };
    if lines.next_line()?.trim() != MAGIC {
        return Err(lines.err(format!("expected header `{MAGIC}`")));
    }
    let f = lines.keyed("generation")?;
    let generation = lines.parse(f.first().ok_or_else(|| lines.err("missing value"))?)?;
    let f = lines.keyed("scale_exp")?;
    let scale_exp = lines.parse(f.first().ok_or_else(|| lines.err("missing value"))?)?;
    let f = lines.keyed("window")?;
    let window = lines.square(&f)?;
    let f = lines.keyed("clip")?;
    let clip = lines.square(&f)?;
    let f = lines.keyed("pruned")?;
    if f.len() != 2 {
        return Err(lines.err("pruned needs two counts"));
    }
    let pruned = TileCensus::new(lines.parse::<BigUint>(&f[0])?, lines.parse::<BigUint>(&f[1])?);
    let f = lines.keyed("seed")?;
    if f.len() != 16 {
        return Err(lines.err("seed needs a tile and a scale exponent"));
    }
    let seed = lines.tile(&f[..15])?;
    let seed_scale_exp = lines.parse(&f[15])?;
    let f = lines.keyed("tiles")?;
    let n: usize = lines.parse(f.first().ok_or_else(|| lines.err("missing value"))?)?;
    let mut tiles = Vec::with_capacity(n);
    for _ in 0..n {
        let l = lines.next_line()?;
        let f: Vec<String> = l.split_whitespace().map(str::to_string).collect();
        tiles.push(lines.tile(&f)?);
    }
    Ok(Patch {
        tiles,
        generation,
        scale_exp,
        provenance: Provenance { seed, seed_scale_exp, clip },
        window,
        pruned,
    })
}
