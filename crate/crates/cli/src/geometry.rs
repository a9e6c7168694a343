use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};

use badtri::delone::{
    analyze_patch, chabauty_fell_distance, orientation_discrepancy, restricted_convergence_check,
    PointSet, CF_TOL,
};
use badtri::gifs::{
    build_gifs, epsilon_rule, match_tiles, nesting_report, point_set, stationary_sequence, Patch,
    TileKind, NESTING_TOL,
};
use badtri::io::{
    export_svg, parse_angles, patch_from_json, patch_to_json, points_to_csv, Preset, SvgOptions,
};

use crate::{AnalyzeKind, ExportArgs, TileArgs};

fn suffixed(path: &Path, k: usize) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("patch");
    let name = match path.extension().and_then(|e| e.to_str()) {
        Some(ext) => format!("{stem}-{k}.{ext}"),
        None => format!("{stem}-{k}"),
    };
    path.with_file_name(name)
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn load(path: &Path) -> Result<Patch> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(patch_from_json(&text)?)
}

pub fn tile(args: TileArgs) -> Result<bool> {
    let angles = match (&args.preset, &args.angles) {
        (Some(p), _) => p.parse::<Preset>()?.angles(),
        (None, Some(a)) => parse_angles(a)?,
        (None, None) => bail!("one of --preset or --angles is required"),
    };
    let gifs = build_gifs(&angles)?;
    if let Some(n) = args.stationary {
        let seq = stationary_sequence(&gifs, n)?;
        let mut ok = true;
        for (k, patch) in seq.iter().enumerate() {
            write(&suffixed(&args.out, k), &patch_to_json(patch))?;
            let highlight = if k > 0 {
                let m = match_tiles(&seq[k - 1], patch, NESTING_TOL);
                let rep = nesting_report(&seq[k - 1], patch, NESTING_TOL);
                println!(
                    "P{k}: {} tiles, {}/{} tiles of P{} matched (max offset {:e})",
                    patch.len(),
                    rep.matched,
                    rep.total,
                    k - 1,
                    rep.max_offset
                );
                ok &= rep.complete();
                m.into_iter().flatten().map(|(i, _)| i).collect()
            } else {
                println!("P0: {} tiles", patch.len());
                Vec::new()
            };
            if let Some(svg) = &args.svg {
                let opts = SvgOptions {
                    highlight,
                    ..SvgOptions::default()
                };
                write(&suffixed(svg, k), &export_svg(patch, &opts))?;
            }
        }
        return Ok(ok);
    }
    let Some(epsilon) = args.epsilon else {
        bail!("--epsilon is required");
    };
    let start = TileKind::from_number(args.start).context("--start must be 1 or 2")?;
    let patch = epsilon_rule(start, epsilon, &gifs)?;
    write(&args.out, &patch_to_json(&patch))?;
    if let Some(svg) = &args.svg {
        write(svg, &export_svg(&patch, &SvgOptions::default()))?;
    }
    let (lo, hi) = patch.area_range();
    println!("tiles: {}", patch.len());
    println!("points: {}", patch.len());
    println!("area range: [{lo}, {hi}] (a_min = {})", gifs.a_min());
    println!("total area: {}", patch.total_area());
    Ok(true)
}

pub fn analyze(
    what: AnalyzeKind,
    input: &Path,
    other: Option<&Path>,
    radii: &[f64],
) -> Result<bool> {
    let patch = load(input)?;
    match what {
        AnalyzeKind::Delone => {
            let rep = analyze_patch(&patch)?;
            println!("{}", rep.to_json());
            Ok(rep.pass())
        }
        AnalyzeKind::Cfdist => {
            let a = PointSet::new(point_set(&patch))?;
            if let Some(other) = other {
                let b = PointSet::new(point_set(&load(other)?))?;
                println!("{}", chabauty_fell_distance(&a, &b, CF_TOL));
                return Ok(true);
            }
            let rep = restricted_convergence_check(&a, radii, CF_TOL);
            println!("{}", serde_json::to_string_pretty(&rep)?);
            Ok(rep.iter().all(|r| r.ok))
        }
        AnalyzeKind::Discrepancy => {
            let d = orientation_discrepancy(&patch)?;
            println!("{}", serde_json::to_string(&d)?);
            Ok(true)
        }
    }
}

pub fn export(args: ExportArgs) -> Result<bool> {
    let patch = load(&args.input)?;
    if args.svg.is_none() && args.json.is_none() && args.csv.is_none() {
        bail!("nothing to export: pass --svg, --json or --csv");
    }
    if let Some(p) = &args.svg {
        let opts = SvgOptions {
            show_points: !args.no_points,
            ..SvgOptions::default()
        };
        write(p, &export_svg(&patch, &opts))?;
    }
    if let Some(p) = &args.json {
        write(p, &patch_to_json(&patch))?;
    }
    if let Some(p) = &args.csv {
        write(p, &points_to_csv(&point_set(&patch)))?;
    }
    Ok(true)
}
