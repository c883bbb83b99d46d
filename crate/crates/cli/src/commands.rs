use crate::config::Config;
use crate::svg;
use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;
use treewidth_core::builder::{self, BuildConfig};
use treewidth_core::cuts::{self, LowerBoundConstants};
use treewidth_core::mesh::{self, SurfaceMesh, Variant};
use treewidth_core::{metric, powergap, subdivide, tree};

/// Exact column order of the sweep CSV.
pub const SWEEP_HEADER: &str =
    "h,variant,k_or_side,r,n_vertices,diameter,best_cut_length,balance_dev,m_l,m_s,paper_bound_l0,seconds,seed";

#[derive(Parser)]
#[command(
    name = "treewidth",
    version,
    about = "Surfaces of small diameter whose balanced separating cycles are long"
)]
pub struct Cli {
    /// key = value defaults file; explicit flags override it
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// deterministic output: wallclock fields zeroed, volatile SVG comments dropped
    #[arg(long, global = true)]
    pub reproducible: bool,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand)]
pub enum Cmd {
    /// Construct a mesh and write it in SMESH format
    Build {
        /// hyperbolic | flat_cone | round_sphere | flat_torus | genus_g
        #[arg(long)]
        variant: Option<String>,
        /// tree height (glued variants)
        #[arg(long)]
        h: Option<u32>,
        /// curvature scale (hyperbolic; defaults to the minimal admissible)
        #[arg(long)]
        k: Option<f64>,
        /// triangle side (flat cone)
        #[arg(long)]
        side: Option<f64>,
        /// resolution: segments per boundary interval / grid subdivisions
        #[arg(long)]
        r: Option<u32>,
        /// genus (genus_g variant)
        #[arg(long)]
        genus: Option<u32>,
        /// override the disc ring count (coarse test meshes)
        #[arg(long)]
        rings: Option<u32>,
        /// rescale so the graph diameter equals 1
        #[arg(long)]
        normalize: bool,
        /// output path (stdout if omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate an SMESH file; exit 2 when invalid
    Validate {
        input: PathBuf,
    },
    /// Exact graph diameter (or sweep bounds with --approx)
    Diameter {
        input: PathBuf,
        #[arg(long)]
        approx: bool,
    },
    /// Search a minimum-length balanced separating cut; emits the cut JSON
    Cut {
        input: PathBuf,
        /// balance tolerance as a fraction of total area
        #[arg(long)]
        balance_tol_frac: Option<f64>,
        /// attempted moves per restart
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        restarts: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decompose a cut's cycles and evaluate the certificate chain
    Certify {
        input: PathBuf,
        /// cut JSON produced by `cut`
        #[arg(long)]
        cut: PathBuf,
        /// constant inside the logarithm of the final bound
        #[arg(long)]
        c1: Option<f64>,
        /// residual budget per long arc (units of |M|/N(h))
        #[arg(long)]
        slack_per_arc: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify the signed power-sum gap bound; emits CSV
    Lemma {
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        n_max: Option<u32>,
        #[arg(long)]
        m_max: Option<u32>,
        /// restrict exponents to h >= 1
        #[arg(long)]
        positive_exponents: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Split a surface into two near-half-area regions by a short curve
    Subdivide {
        input: PathBuf,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Height sweep: build, measure, cut; emits CSV and an SVG summary
    Sweep {
        /// hyperbolic | flat_cone
        #[arg(long)]
        variant: Option<String>,
        /// height range, e.g. 1..3 (inclusive)
        #[arg(long)]
        h: Option<String>,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        balance_tol_frac: Option<f64>,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        restarts: Option<usize>,
        #[arg(long)]
        out_csv: Option<PathBuf>,
        #[arg(long)]
        out_svg: Option<PathBuf>,
    },
}

fn read_mesh(path: &Path) -> Result<SurfaceMesh> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    Ok(mesh::parse_smesh(&text)?)
}

fn emit(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, content).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

pub fn run(cli: Cli) -> Result<ExitCode> {
    let cfg = Config::load(cli.config.as_deref())?;
    match cli.cmd {
        Cmd::Build {
            variant,
            h,
            k,
            side,
            r,
            genus,
            rings,
            normalize,
            out,
        } => {
            let variant_str: String = cfg.resolve(variant, "variant", "hyperbolic".into());
            let variant = Variant::parse(&variant_str)
                .ok_or_else(|| anyhow!("unknown variant '{variant_str}'"))?;
            let mut bc = BuildConfig::new(variant);
            bc.h = cfg.resolve(h, "h", 1);
            bc.k = cfg.resolve_opt(k, "k");
            bc.side = cfg.resolve(side, "side", 0.5);
            bc.resolution = cfg.resolve(r, "r", 4);
            bc.genus = cfg.resolve(genus, "genus", 2);
            bc.rings = cfg.resolve_opt(rings, "rings");
            bc.normalize = normalize;
            let mesh = builder::build(&bc)?;
            for w in &mesh.meta.warnings {
                eprintln!("warning: {w}");
            }
            emit(out.as_deref(), &mesh::write_smesh(&mesh))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Validate { input } => {
            let mesh = read_mesh(&input)?;
            let report = mesh::validate_mesh(&mesh);
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(if report.valid {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Cmd::Diameter { input, approx } => {
            let mesh = read_mesh(&input)?;
            let json = if approx {
                let (lo, hi) = metric::diameter_estimate(&mesh, 4)?;
                serde_json::json!({
                    "approximate": true,
                    "diameter_lower": lo,
                    "diameter_upper": hi,
                    "vertices": mesh.vertex_count(),
                })
            } else {
                let s = metric::diameter(&mesh)?;
                serde_json::json!({
                    "approximate": false,
                    "diameter": s.diameter,
                    "witness": [s.witness.0, s.witness.1],
                    "vertices": mesh.vertex_count(),
                })
            };
            println!("{}", serde_json::to_string_pretty(&json)?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Cut {
            input,
            balance_tol_frac,
            budget,
            seed,
            restarts,
            out,
        } => {
            let mesh = read_mesh(&input)?;
            let frac = cfg.resolve(balance_tol_frac, "balance_tol_frac", 0.01);
            let budget = cfg.resolve(budget, "budget", default_budget(&mesh));
            let seed = cfg.resolve(seed, "seed", 7);
            let restarts = cfg.resolve(restarts, "restarts", 16);
            let tol = frac * mesh.total_area();
            let opts = cuts::SearchOptions {
                restarts,
                budget,
                seed,
            };
            let cut = cuts::find_balanced_cut_with(&mesh, tol, opts)?;
            let decomp = decompose_cut(&mesh, &cut)?;
            let json = cut.to_json(&mesh, seed, decomp.as_ref());
            emit(out.as_deref(), &format!("{}\n", serde_json::to_string_pretty(&json)?))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Certify {
            input,
            cut,
            c1,
            slack_per_arc,
            out,
        } => {
            let mesh = read_mesh(&input)?;
            let constants = LowerBoundConstants {
                c1: cfg.resolve(c1, "c1", 1.0),
                slack_per_arc: cfg.resolve(slack_per_arc, "slack_per_arc", 1.0),
            };
            let text = std::fs::read_to_string(&cut)
                .with_context(|| format!("reading {}", cut.display()))?;
            let json: serde_json::Value = serde_json::from_str(&text)?;
            let faces_a: Vec<u32> = serde_json::from_value(
                json.get("faces_A")
                    .cloned()
                    .ok_or_else(|| anyhow!("cut JSON missing faces_A"))?,
            )?;
            let mut in_a = vec![false; mesh.face_count()];
            for f in faces_a {
                *in_a
                    .get_mut(f as usize)
                    .ok_or_else(|| anyhow!("face id {f} out of range"))? = true;
            }
            let cut = cuts::CutResult::from_partition(&mesh, &in_a)?;
            let report = certify_report(&mesh, &cut, &constants)?;
            emit(out.as_deref(), &format!("{}\n", serde_json::to_string_pretty(&report)?))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Lemma {
            p,
            n_max,
            m_max,
            positive_exponents,
            out,
        } => {
            let p = cfg.resolve(p, "p", 3);
            let n_max = cfg.resolve(n_max, "n_max", 10);
            let m_max = cfg.resolve(m_max, "m_max", 5);
            let report = powergap::verify_lemma(p, n_max, m_max, positive_exponents)?;
            let mut csv = String::from("p,n,m,min,bound,holds,equality,witness\n");
            for row in &report.rows {
                let witness: Vec<String> = row
                    .witness
                    .iter()
                    .map(|&(neg, h)| format!("{}p^{h}", if neg { "-" } else { "+" }))
                    .collect();
                csv.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    row.p,
                    row.n,
                    row.m,
                    row.min_value,
                    row.bound,
                    row.holds,
                    row.equality,
                    witness.join(" ")
                ));
            }
            emit(out.as_deref(), &csv)?;
            if !report.all_hold {
                bail!("power-gap bound violated in the sweep");
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Subdivide { input, epsilon, out } => {
            let mesh = read_mesh(&input)?;
            let epsilon = cfg.resolve(epsilon, "epsilon", 0.1);
            let result = subdivide::subdivide_half(&mesh, epsilon)?;
            emit(
                out.as_deref(),
                &format!("{}\n", serde_json::to_string_pretty(&result.to_json())?),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Sweep {
            variant,
            h,
            r,
            seed,
            balance_tol_frac,
            budget,
            restarts,
            out_csv,
            out_svg,
        } => {
            let variant_str: String = cfg.resolve(variant, "variant", "hyperbolic".into());
            let variant = Variant::parse(&variant_str)
                .ok_or_else(|| anyhow!("unknown variant '{variant_str}'"))?;
            if !matches!(variant, Variant::Hyperbolic | Variant::FlatCone) {
                bail!("sweep expects a glued variant (hyperbolic or flat_cone)");
            }
            let h_spec: String = cfg.resolve(h, "h", "1..3".into());
            let (h_lo, h_hi) = parse_range(&h_spec)?;
            let r = cfg.resolve(r, "r", 8);
            let seed = cfg.resolve(seed, "seed", 7);
            let frac = cfg.resolve(balance_tol_frac, "balance_tol_frac", 0.01);
            let budget_flag = cfg.resolve_opt(budget, "budget");
            let restarts = cfg.resolve(restarts, "restarts", 16);

            let mut provenance = format!(
                "# treewidth sweep variant={} h={h_lo}..{h_hi} r={r} seed={seed} \
                 balance_tol_frac={frac} restarts={restarts}",
                variant.as_str()
            );
            if let Some(b) = budget_flag {
                provenance.push_str(&format!(" budget={b}"));
            }
            // cells run in the worker pool; rows are sorted before emission
            // so parallelism never changes the output bytes
            use rayon::prelude::*;
            let cells: Vec<u32> = (h_lo..=h_hi).collect();
            let reproducible = cli.reproducible;
            let mut rows = cells
                .par_iter()
                .map(|&h| -> anyhow::Result<_> {
                    let started = Instant::now();
                    let mut bc = BuildConfig::new(variant);
                    bc.h = h;
                    bc.resolution = r;
                    let mesh = builder::build(&bc)?;
                    let diameter = metric::diameter(&mesh)?.diameter;
                    let budget = budget_flag.unwrap_or_else(|| default_budget(&mesh));
                    let tol = frac * mesh.total_area();
                    let opts = cuts::SearchOptions {
                        restarts,
                        budget,
                        seed,
                    };
                    let cut = cuts::find_balanced_cut_with(&mesh, tol, opts)?;
                    let decomp = decompose_cut(&mesh, &cut)?;
                    let (m_l, m_s) = decomp
                        .as_ref()
                        .map(|d| (d.long_count, d.whole_tree_edges))
                        .unwrap_or((0, 0));
                    let l0 = cuts::cut_length_bound(h, &LowerBoundConstants::default());
                    let seconds = if reproducible {
                        0.0
                    } else {
                        started.elapsed().as_secs_f64()
                    };
                    let k_or_side = mesh.meta.k.or(mesh.meta.side).unwrap_or(f64::NAN);
                    Ok((
                        h,
                        variant.as_str().to_string(),
                        k_or_side,
                        r,
                        mesh.vertex_count(),
                        diameter,
                        cut.length,
                        cut.balance_dev,
                        m_l,
                        m_s,
                        l0,
                        seconds,
                        seed,
                    ))
                })
                .collect::<anyhow::Result<Vec<_>>>()?;
            rows.sort_by_key(|row| (row.0, row.12));
            let mut csv = format!("{provenance}\n{SWEEP_HEADER}\n");
            for row in &rows {
                csv.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{},{},{:.3},{}\n",
                    row.0,
                    row.1,
                    row.2,
                    row.3,
                    row.4,
                    row.5,
                    row.6,
                    row.7,
                    row.8,
                    row.9,
                    row.10,
                    row.11,
                    row.12
                ));
            }
            emit(out_csv.as_deref(), &csv)?;
            if let Some(svg_path) = out_svg {
                let cut_series = svg::Series {
                    label: "best_cut_length",
                    points: rows.iter().map(|r| (r.0 as f64, r.6)).collect(),
                    color: "#c0392b",
                };
                let diam_series = svg::Series {
                    label: "diameter",
                    points: rows.iter().map(|r| (r.0 as f64, r.5)).collect(),
                    color: "#2980b9",
                };
                let comment = if cli.reproducible {
                    None
                } else {
                    Some(provenance.trim_start_matches("# ").to_string())
                };
                let svg = svg::line_plot(
                    "cut length and diameter vs tree height",
                    "h",
                    &[cut_series, diam_series],
                    comment.as_deref(),
                );
                std::fs::write(&svg_path, svg)
                    .with_context(|| format!("writing {}", svg_path.display()))?;
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Budget heuristic: enough moves to churn the boundary many times over.
fn default_budget(mesh: &SurfaceMesh) -> usize {
    (mesh.face_count() * 12).clamp(20_000, 200_000)
}

/// Aggregate decomposition over all cycles of a cut (glued meshes only).
fn decompose_cut(
    mesh: &SurfaceMesh,
    cut: &cuts::CutResult,
) -> Result<Option<cuts::ArcDecomposition>> {
    let Some(h) = mesh.meta.h else {
        return Ok(None);
    };
    if mesh.tree_tags().is_empty() {
        return Ok(None);
    }
    let tree = tree::build_tree(h)?;
    let mut merged: Option<cuts::ArcDecomposition> = None;
    for cycle in &cut.cycles {
        let d = cuts::decompose_cycle(mesh, &tree, cycle)?;
        merged = Some(match merged {
            None => d,
            Some(mut m) => {
                m.long_count += d.long_count;
                m.whole_tree_edges += d.whole_tree_edges;
                m.short_length += d.short_length;
                m.arcs.extend(d.arcs);
                m
            }
        });
    }
    Ok(merged)
}

fn certify_report(
    mesh: &SurfaceMesh,
    cut: &cuts::CutResult,
    constants: &LowerBoundConstants,
) -> Result<serde_json::Value> {
    let decomp = decompose_cut(mesh, cut)?
        .ok_or_else(|| anyhow!("certify needs a glued (tree-tagged) mesh"))?;
    let h = mesh.meta.h.expect("tagged mesh has height");
    let bound = cuts::decomposition_length_bound(&decomp);
    let length_ok = cut.length >= bound - 1e-12;
    let gap_rows: Vec<serde_json::Value> = (1..h)
        .map(|m_prime| {
            let gap = cuts::area_gap_bound(h, m_prime, mesh.total_area()).expect("0<m'<h");
            serde_json::json!({"m_prime": m_prime, "area_gap": gap})
        })
        .collect();
    Ok(serde_json::json!({
        "h": h,
        "cut_length": cut.length,
        "m_l": decomp.long_count,
        "m_s": decomp.whole_tree_edges,
        "L_s": decomp.short_length,
        "threshold": decomp.threshold,
        "length_lower_bound": bound,
        "length_bound_holds": length_ok,
        "area_gap_bounds": gap_rows,
        "length_bound_l0": cuts::cut_length_bound(h, constants),
        "constants": {"c1": constants.c1, "slack_per_arc": constants.slack_per_arc},
    }))
}

fn parse_range(s: &str) -> Result<(u32, u32)> {
    if let Some((a, b)) = s.split_once("..") {
        let lo: u32 = a.trim().parse().context("bad range start")?;
        let hi: u32 = b.trim().trim_start_matches('=').parse().context("bad range end")?;
        if hi < lo {
            bail!("empty range {s}");
        }
        Ok((lo, hi))
    } else {
        let v: u32 = s.trim().parse().context("bad height")?;
        Ok((v, v))
    }
}
