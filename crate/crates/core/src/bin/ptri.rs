//! Command-line front end. Exit codes: 0 success, 1 usage or I/O error,
//! 2 negative result (not Delaunay, non-regular, invalid, not isomorphic).

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;

use ptri::enumerate::{
    adjacency_classification, flip_closure_from, infinite_family, infinite_family_control, local_enumerate, Budget,
    ClosureState, ClosureStatus,
};
use ptri::io::{read_archive, read_checkpoint, read_form, read_ptri, write_archive, write_checkpoint, write_ptri};
use ptri::predicates::{
    cube_tile, delaunay_test, freudenthal_seed, nonregularity_test, prism_extend, refine, Refinement,
};
use ptri::stats::{stats, summarize, Stats};
use ptri::symmetry::isomorphic;
use ptri::Error;

#[derive(Parser)]
#[command(name = "ptri", version, about = "Periodic lattice triangulations of Z^n")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exhaustive local enumeration (dimensions 3 and 4).
    Enumerate {
        #[arg(long, value_parser = clap::value_parser!(u8).range(3..=4))]
        dim: u8,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write a seed triangulation.
    Seed {
        #[arg(long, required = true)]
        freudenthal: bool,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=8))]
        dim: u8,
        #[arg(long)]
        out: PathBuf,
    },
    /// Flip closure up to equivalence; resumes from the checkpoint if present.
    Closure {
        #[arg(long)]
        seed: PathBuf,
        #[arg(long)]
        checkpoint: PathBuf,
        #[arg(long)]
        max_nodes: Option<usize>,
        /// Checkpoint after this many processed triangulations.
        #[arg(long, default_value_t = 25, value_parser = clap::value_parser!(u64).range(1..))]
        every: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Certify a property of one triangulation.
    Check {
        #[command(subcommand)]
        what: Check,
    },
    /// Test two triangulations for affine unimodular equivalence.
    Iso { file1: PathBuf, file2: PathBuf },
    /// Summary statistics.
    Stats {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Statistics over an archive directory.
    Classify {
        dir: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Compatibility of the infinite neighbour family in dimension 5.
    Thm61 {
        #[arg(long)]
        kmax: u32,
    },
    /// Refine a periodic tiling by a quadratic form.
    Refine {
        #[arg(long, value_enum)]
        tiling: Tiling,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=8))]
        dim: u8,
        #[arg(long)]
        form: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Extend a triangulation by prisms to a higher dimension and refine.
    Extend {
        #[arg(long)]
        seed: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=8))]
        dim: u8,
        #[arg(long)]
        form: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum Check {
    /// Delaunay test via Voronoi regulators (exit 2 if not Delaunay)
    Delaunay { file: PathBuf },
    /// Height-function feasibility on the box [-R, R]^n (exit 2 if certified non-regular)
    Regular {
        file: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        radius: i64,
    },
    /// Full exact validation: volume sum and pairwise compatibility (exit 2 if invalid)
    Valid { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Tiling {
    Cube,
}

enum Outcome {
    Yes,
    No,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(Outcome::Yes) => ExitCode::SUCCESS,
        Ok(Outcome::No) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn verdict(b: bool) -> Outcome {
    if b {
        Outcome::Yes
    } else {
        Outcome::No
    }
}

fn print_stats(s: &Stats) {
    println!("dim                 {}", s.dim);
    println!("classes             {}", s.classes);
    println!("volumes             {:?}", s.volumes);
    println!("facet classes       {}", s.facet_classes);
    println!("point group order   {}", s.point_group_order);
    println!("centrally symmetric {}", s.centrally_symmetric);
    println!("delaunay            {}", s.delaunay);
}

fn write_refinement(r: Refinement, out: &Path) -> Result<Outcome, Error> {
    match r {
        Refinement::Triangulation(t) => {
            write_ptri(out, &t)?;
            println!("{} classes written to {}", t.len(), out.display());
            Ok(Outcome::Yes)
        }
        Refinement::NonGeneric { cells } => {
            eprintln!("form is not generic: {} lower cells are not simplices", cells.len());
            for c in cells.iter().take(5) {
                eprintln!("  {c:?}");
            }
            Ok(Outcome::No)
        }
    }
}

fn run(cmd: Cmd) -> Result<Outcome, Error> {
    match cmd {
        Cmd::Enumerate { dim, out } => {
            let start = Instant::now();
            let r = local_enumerate(dim as usize)?;
            write_archive(&out, &r.triangulations)?;
            let delaunay =
                r.triangulations.iter().map(delaunay_test).filter(|d| d.as_ref().is_ok_and(|d| d.is_delaunay)).count();
            let audit = format!(
                "states {}\ndead_ends {}\nrejected_structural {}\nrejected_compat {}\nstates_per_level {:?}\n",
                r.audit.states,
                r.audit.dead_ends,
                r.audit.rejected_structural,
                r.audit.rejected_compat,
                r.audit.states_per_level
            );
            std::fs::write(out.join("audit.txt"), &audit)
                .map_err(|e| ptri::io::IoError::Io { path: out.join("audit.txt"), source: e })?;
            println!(
                "{} triangulations: {} Delaunay, {} non-Delaunay; {} partial states, {} dead ends ({:.1}s)",
                r.triangulations.len(),
                delaunay,
                r.triangulations.len() - delaunay,
                r.audit.states,
                r.audit.dead_ends,
                start.elapsed().as_secs_f64()
            );
            Ok(Outcome::Yes)
        }
        Cmd::Seed { dim, out, .. } => {
            write_ptri(&out, &freudenthal_seed(dim as usize))?;
            Ok(Outcome::Yes)
        }
        Cmd::Closure { seed, checkpoint, max_nodes, every, out } => {
            let state = if checkpoint.exists() {
                let st = read_checkpoint(&checkpoint)?;
                eprintln!("resuming: {} known, {} queued", st.archive.len(), st.queue.len());
                st
            } else {
                ClosureState::new(&read_ptri(&seed)?)
            };
            let start = Instant::now();
            let mut save_err = None;
            let report = flip_closure_from(state, &Budget { max_nodes }, |s| {
                if s.processed as u64 % every == 0 {
                    eprintln!(
                        "[{:.0}s] processed {} known {} queued {}",
                        start.elapsed().as_secs_f64(),
                        s.processed,
                        s.archive.len(),
                        s.queue.len()
                    );
                    if let Err(e) = write_checkpoint(&checkpoint, s) {
                        save_err.get_or_insert(e);
                    }
                }
            });
            if let Some(e) = save_err {
                return Err(e.into());
            }
            write_checkpoint(&checkpoint, &report.state)?;
            write_archive(&out, &report.state.archive)?;
            let status = match report.status {
                ClosureStatus::Complete => "complete",
                ClosureStatus::BudgetExhausted => "budget exhausted",
            };
            println!("{status}: {} classes, {} queued", report.state.archive.len(), report.state.queue.len());
            Ok(Outcome::Yes)
        }
        Cmd::Check { what: Check::Delaunay { file } } => {
            let d = delaunay_test(&read_ptri(&file)?)?;
            if d.is_delaunay {
                println!("delaunay; witness form {:?}", d.witness.as_ref().expect("present"));
            } else if let Some(y) = &d.flat_certificate {
                let support = y.iter().filter(|w| !w.is_zero()).count();
                println!("not delaunay: regulators vanish in a convex combination of {support}");
            } else {
                println!(
                    "not delaunay: full-dimensional cone {}, positive definite interior {}",
                    d.full_dimensional, d.positive_definite
                );
            }
            Ok(verdict(d.is_delaunay))
        }
        Cmd::Check { what: Check::Regular { file, radius } } => {
            let r = nonregularity_test(&read_ptri(&file)?, radius)?;
            println!(
                "system: {} points, {} simplices, {} constraints",
                r.system.points.len(),
                r.system.simplices.len(),
                r.system.constraint_count()
            );
            if r.regular_possible {
                println!("feasible at radius {radius}: no obstruction found");
                Ok(Outcome::Yes)
            } else {
                let f = r.certificate.as_ref().expect("infeasible");
                println!(
                    "non-regular: certificate with {} constraints over {} simplices and {} points, verified {}",
                    f.len(),
                    r.certificate_simplices(),
                    r.certificate_points(),
                    r.verify()
                );
                Ok(Outcome::No)
            }
        }
        Cmd::Check { what: Check::Valid { file } } => {
            let report = read_ptri(&file)?.validate();
            match &report.failure {
                None => println!("valid"),
                Some(f) => println!("invalid: {f}"),
            }
            Ok(verdict(report.is_valid()))
        }
        Cmd::Iso { file1, file2 } => {
            let (t1, t2) = (read_ptri(&file1)?, read_ptri(&file2)?);
            match isomorphic(&t1, &t2) {
                Some(g) => {
                    println!("isomorphic: x -> A x + b with A = {:?}, b = {:?}", g.a, g.b);
                    Ok(Outcome::Yes)
                }
                None => {
                    println!("not isomorphic");
                    Ok(Outcome::No)
                }
            }
        }
        Cmd::Stats { file, json } => {
            let s = stats(&read_ptri(&file)?)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&s).expect("serializable"));
            } else {
                print_stats(&s);
            }
            Ok(Outcome::Yes)
        }
        Cmd::Classify { dir, json } => {
            let archive = read_archive(&dir)?;
            let mut rows = Vec::with_capacity(archive.len());
            for (path, t) in &archive {
                let s = stats(t)?;
                if !json {
                    let name = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                    println!(
                        "{name}  classes {:>4}  volumes {:>10}  |Pt| {:>5}  cs {:>5}  delaunay {:>5}",
                        s.classes,
                        format!("{:?}", volume_counts(&s.volumes)),
                        s.point_group_order,
                        s.centrally_symmetric,
                        s.delaunay
                    );
                }
                rows.push(s);
            }
            let summary = summarize(&rows);
            let codes = adjacency_classification(archive.iter().map(|(_, t)| t));
            if json {
                let codes: Vec<String> = codes.iter().map(|c| c.to_string()).collect();
                let v = serde_json::json!({ "triangulations": rows, "summary": summary, "adjacency": codes });
                println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
            } else {
                println!(
                    "{} total, {} Delaunay, {} centrally symmetric non-Delaunay",
                    summary.total, summary.delaunay, summary.centrally_symmetric_non_delaunay
                );
                println!(
                    "simplex volumes {:?}, max point group order {}",
                    summary.volumes, summary.max_point_group_order
                );
                let unimodular = codes.iter().filter(|c| c.neighbour_volume() == 1).count();
                println!("adjacency encodings ({}, {unimodular} between volume-1 simplices):", codes.len());
                for c in &codes {
                    println!("  {c}  neighbour volume {}", c.neighbour_volume());
                }
            }
            Ok(Outcome::Yes)
        }
        Cmd::Thm61 { kmax } => {
            let mut ok = true;
            for row in infinite_family(kmax as i64) {
                if !row.holds() {
                    ok = false;
                    println!("k = {}: FAILS {:?}", row.k, row);
                }
            }
            let control = infinite_family_control(kmax.min(5) as i64);
            let failing = control.iter().filter(|r| !r.holds()).count();
            println!(
                "k = 0..={kmax}: {}; negative control fails for {failing} of {} values",
                if ok { "all compatible" } else { "contradiction" },
                control.len()
            );
            Ok(verdict(ok))
        }
        Cmd::Refine { tiling: Tiling::Cube, dim, form, out } => {
            let a = read_form(&form)?;
            write_refinement(refine(dim as usize, &[cube_tile(dim as usize)], &a)?, &out)
        }
        Cmd::Extend { seed, dim, form, out } => {
            let t = read_ptri(&seed)?;
            if dim as usize <= t.dim() {
                eprintln!("error: target dimension must exceed {}", t.dim());
                return Err(ptri::tri::TriError::BadDimension(dim as usize).into());
            }
            let a = read_form(&form)?;
            write_refinement(prism_extend(&t, dim as usize, &a)?, &out)
        }
    }
}

/// `(volume, multiplicity)` pairs of a sorted volume vector.
fn volume_counts(v: &[u64]) -> Vec<(u64, usize)> {
    let mut out: Vec<(u64, usize)> = Vec::new();
    for &x in v {
        match out.last_mut() {
            Some((y, c)) if *y == x => *c += 1,
            _ => out.push((x, 1)),
        }
    }
    out
}
