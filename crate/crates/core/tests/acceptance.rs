//! End-to-end acceptance run: one PASS/FAIL line per criterion.
//!
//! The binary always exits 0 so the report is printed in full; read the
//! lines, not the exit status.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ptri::enumerate::{
    adjacency_classification, apply_flip, expected_dim5_codes, find_flips, flip_closure_from, infinite_family,
    local_enumerate, search_apexes, Budget, ClosureState, ClosureStatus,
};
use ptri::exact::{q, Point, QuadForm};
use ptri::io::{parse_checkpoint, to_checkpoint};
use ptri::predicates::{
    cube_tile, delaunay_test, freudenthal_seed, generic_form, nonregularity_test, refine, voronoi_regulator,
};
use ptri::stats::{stats, summarize, Stats};
use ptri::symmetry::{isomorphic, verify_split};
use ptri::tri::{CompatCache, PeriodicTriangulation, Simplex};

struct Line {
    ok: bool,
    detail: String,
}

fn report(n: usize, name: &str, elapsed: Duration, line: Line) {
    let tag = if line.ok { "PASS" } else { "FAIL" };
    println!("{tag} {n}. {name} [{:.1}s]: {}", elapsed.as_secs_f64(), line.detail);
}

fn timed(n: usize, name: &str, f: impl FnOnce() -> Line) {
    let start = Instant::now();
    let line = f();
    report(n, name, start.elapsed(), line);
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn dim3() -> Line {
    let start = Instant::now();
    let e = local_enumerate(3).expect("dim 3 supported");
    let t = &e.triangulations;
    let shape = t.len() == 1 && t[0].len() == 6 && t[0].volume_vector().iter().all(|&v| v == 1);
    let delaunay = t.iter().all(|t| delaunay_test(t).unwrap().is_delaunay);
    let fast = start.elapsed() < Duration::from_secs(60);
    Line {
        ok: shape && delaunay && fast,
        detail: format!(
            "{} triangulation(s), classes {:?}, delaunay {delaunay}",
            t.len(),
            t.iter().map(|t| t.len()).collect::<Vec<_>>()
        ),
    }
}

fn dim4() -> (Line, Vec<PeriodicTriangulation>) {
    let start = Instant::now();
    let e = local_enumerate(4).expect("dim 4 supported");
    let t = &e.triangulations;
    let shape = t.len() == 4 && t.iter().all(|t| t.len() == 24 && t.volume_vector().iter().all(|&v| v == 1));
    let flags: Vec<(bool, bool)> =
        t.iter().map(|t| (delaunay_test(t).unwrap().is_delaunay, t.is_centrally_symmetric())).collect();
    let delaunay = flags.iter().filter(|f| f.0).count();
    let odd_one_not_cs = flags.iter().filter(|f| !f.0).all(|f| !f.1);
    let ok = shape
        && delaunay == 3
        && odd_one_not_cs
        && e.audit.dead_ends == 0
        && start.elapsed() < Duration::from_secs(30 * 60);
    let line = Line {
        ok,
        detail: format!(
            "{} triangulations, {delaunay} Delaunay, non-Delaunay centrally symmetric: {}, dead ends {}",
            t.len(),
            !odd_one_not_cs,
            e.audit.dead_ends
        ),
    };
    (line, e.triangulations)
}

fn neighbours() -> Line {
    let found: BTreeSet<Point> = search_apexes(4, 4, &mut CompatCache::default()).into_iter().collect();
    let mut expected = BTreeSet::new();
    for i in 0..4 {
        for j in i + 1..4 {
            let mut v = [0; 4];
            v[i] = 1;
            v[j] = 1;
            expected.insert(Point::new(&v));
        }
        let mut w = [1; 4];
        w[i] = -1;
        expected.insert(Point::new(&w));
    }
    Line { ok: found == expected, detail: format!("{} apexes found, {} expected", found.len(), expected.len()) }
}

fn family() -> Line {
    let start = Instant::now();
    let rows = infinite_family(50);
    let bad: Vec<i64> = rows.iter().filter(|r| !r.holds()).map(|r| r.k).collect();
    Line {
        ok: rows.len() == 51 && bad.is_empty() && start.elapsed() < Duration::from_secs(300),
        detail: format!("{}/{} compatible, failing k: {bad:?}", rows.len() - bad.len(), rows.len()),
    }
}

/// Runs the dim-5 closure in two legs through a serialized checkpoint.
fn closure5() -> (Result<Vec<PeriodicTriangulation>, String>, String) {
    let seed = freudenthal_seed(5);
    let first = flip_closure_from(ClosureState::new(&seed), &Budget { max_nodes: Some(120) }, |_| {});
    if first.status != ClosureStatus::BudgetExhausted {
        return (Err("first leg did not stop at its budget".into()), String::new());
    }
    let partial = first.state.archive.clone();
    let resumed = match parse_checkpoint(&to_checkpoint(&first.state)) {
        Ok(s) => s,
        Err(e) => return (Err(format!("checkpoint does not parse back: {e}")), String::new()),
    };
    let mut sizes = vec![partial.len()];
    let second = flip_closure_from(resumed, &Budget::default(), |s| {
        if s.processed % 100 == 0 {
            sizes.push(s.archive.len());
        }
    });
    let archive = second.state.archive;
    sizes.push(archive.len());
    let monotone = sizes.windows(2).all(|w| w[0] <= w[1]);
    let prefix = archive.len() >= partial.len() && archive[..partial.len()] == partial[..];
    let note = format!("checkpoint after 120 nodes held {} members; growth {sizes:?}", partial.len());
    if second.status != ClosureStatus::Complete || !monotone || !prefix {
        return (Err(format!("resume broke monotonicity or prefix ({note})")), note);
    }
    (Ok(archive), note)
}

fn classify5(archive: &[PeriodicTriangulation], note: &str, all_stats: &[Stats]) -> Line {
    let summary = summarize(all_stats);
    let codes = adjacency_classification(archive);
    let unimodular: BTreeSet<_> = codes.iter().filter(|c| c.neighbour_volume() == 1).cloned().collect();
    let checks = [
        ("950 classes", summary.total == 950),
        ("222 Delaunay", summary.delaunay == 222),
        ("23 centrally symmetric non-Delaunay", summary.centrally_symmetric_non_delaunay == 23),
        ("volumes in {1,2}", summary.volumes.iter().all(|v| [1, 2].contains(v))),
        ("max point group 720", summary.max_point_group_order == 720),
        ("adjacency codes between volume-1 simplices = the five listed", unimodular == expected_dim5_codes()),
    ];
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    let codes_s: Vec<String> = codes.iter().map(|c| c.to_string()).collect();
    Line {
        ok: failed.is_empty(),
        detail: format!(
            "{} total, {} Delaunay, {} CS non-Delaunay, volumes {:?}, max |Pt| {}, {} encodings [{}]; {note}; unmet: {failed:?}",
            summary.total,
            summary.delaunay,
            summary.centrally_symmetric_non_delaunay,
            summary.volumes,
            summary.max_point_group_order,
            codes.len(),
            codes_s.join(" "),
        ),
    }
}

/// Tries non-Delaunay members from the end of the archive until one is
/// certified non-regular at radius 2.
fn nonregular5(archive: &[PeriodicTriangulation], all_stats: &[Stats]) -> Line {
    let mut tried = Vec::new();
    for i in (0..archive.len()).rev().filter(|&i| !all_stats[i].delaunay).take(3) {
        let r = nonregularity_test(&archive[i], 2).expect("regularity solve");
        tried.push(i);
        if !r.regular_possible {
            return Line {
                ok: r.verify(),
                detail: format!(
                    "member #{i} infeasible on {} constraints; certificate uses {} constraints, {} simplices, {} points; exact re-verification {}",
                    r.system.constraint_count(),
                    r.certificate.as_ref().map_or(0, |c| c.len()),
                    r.certificate_simplices(),
                    r.certificate_points(),
                    r.verify()
                ),
            };
        }
    }
    Line { ok: false, detail: format!("no certificate at radius 2 for members {tried:?}") }
}

fn refinement(dim3_unique: &PeriodicTriangulation) -> Line {
    let start = Instant::now();
    let r = refine(3, &[cube_tile(3)], &generic_form(3)).expect("positive definite");
    match r.triangulation() {
        Some(t) => {
            let iso = isomorphic(t, dim3_unique).is_some();
            Line {
                ok: iso && start.elapsed() < Duration::from_secs(60),
                detail: format!("{} classes, isomorphic to the enumerated one: {iso}", t.len()),
            }
        }
        None => Line { ok: false, detail: "generic form produced a non-simplicial tiling".into() },
    }
}

fn random_form(rng: &mut ChaCha8Rng, n: usize) -> QuadForm {
    let b: Vec<i64> = (0..n * n).map(|_| rng.gen_range(-2..=2)).collect();
    let mut a = vec![0i64; n * n];
    for i in 0..n {
        for j in 0..n {
            a[i * n + j] = (0..n).map(|k| b[k * n + i] * b[k * n + j]).sum::<i64>() + (i == j) as i64;
        }
    }
    QuadForm::from_i64(n, &a).unwrap()
}

fn properties(archives: &[(&str, &[PeriodicTriangulation])]) -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut problems = Vec::new();

    // flip involution
    let mut flips = 0;
    for (n, steps) in [(2, 20), (3, 25), (4, 30), (5, 25)] {
        let mut t = freudenthal_seed(n);
        for _ in 0..steps {
            let f = find_flips(&t).choose(&mut rng).cloned().expect("flip exists");
            let t2 = apply_flip(&t, &f).unwrap();
            let back = find_flips(&t2).into_iter().find(|g| g.inserted == f.removed && g.removed == f.inserted);
            if back.and_then(|g| apply_flip(&t2, &g).ok()).as_ref() != Some(&t) {
                problems.push(format!("flip in dim {n} has no exact inverse"));
            }
            flips += 1;
            t = t2;
        }
    }

    // regulator linearity on random instances
    let mut regs = 0;
    while regs < 50 {
        let n = rng.gen_range(2..=3);
        let pts: Vec<Point> =
            (0..=n).map(|_| Point::new(&(0..n).map(|_| rng.gen_range(-3..=3)).collect::<Vec<_>>())).collect();
        let Ok(s) = Simplex::new(n, pts) else { continue };
        let v = Point::new(&(0..n).map(|_| rng.gen_range(-3..=3)).collect::<Vec<_>>());
        if s.vertices.contains(&v) {
            continue;
        }
        let (a, b) = (random_form(&mut rng, n), random_form(&mut rng, n));
        let (x, y) = (rng.gen_range(0..5), rng.gen_range(0..5));
        let r = voronoi_regulator(&s, v);
        if r.eval(&a.scale(&q(x)).add(&b.scale(&q(y)))) != q(x) * r.eval(&a) + q(y) * r.eval(&b) {
            problems.push("regulator not linear".into());
        }
        regs += 1;
    }

    // archive-wide invariants
    let mut members = 0;
    for (name, archive) in archives {
        for (i, t) in archive.iter().enumerate() {
            members += 1;
            if t.total_volume() != factorial(t.dim()) {
                problems.push(format!("{name} #{i}: total volume {}", t.total_volume()));
            }
            if !t.volume_bounds_hold() {
                problems.push(format!("{name} #{i}: volume bound violated"));
            }
            if !verify_split(t) {
                problems.push(format!("{name} #{i}: point group does not split"));
            }
        }
    }
    problems.dedup();
    Line {
        ok: problems.is_empty() && flips == 100 && regs == 50,
        detail: format!(
            "{flips} flips inverted, {regs} regulators linear, {members} archive members checked for volume sum, bounds and split stabilizer; problems: {problems:?}"
        ),
    }
}

fn main() {
    // `cargo test` passes harness flags; skip the long run when only listing
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let start = Instant::now();
    timed(1, "dim-3 enumeration", dim3);
    let t0 = Instant::now();
    let (line, dim4_all) = dim4();
    report(2, "dim-4 enumeration", t0.elapsed(), line);
    timed(3, "dim-4 neighbour search", neighbours);
    timed(4, "infinite neighbour family", family);

    let t0 = Instant::now();
    let (archive5, note) = closure5();
    let closure_time = t0.elapsed();
    let archive5 = match archive5 {
        Ok(a) => a,
        Err(e) => {
            report(5, "dim-5 flip closure", closure_time, Line { ok: false, detail: e });
            Vec::new()
        }
    };
    let all_stats: Vec<Stats> = archive5.iter().map(|t| stats(t).expect("stats")).collect();
    if !archive5.is_empty() {
        report(5, "dim-5 flip closure", t0.elapsed(), classify5(&archive5, &note, &all_stats));
    }
    timed(6, "non-regularity certificate", || nonregular5(&archive5, &all_stats));
    let dim3_unique = local_enumerate(3).unwrap().triangulations.remove(0);
    timed(7, "cube refinement", || refinement(&dim3_unique));
    timed(8, "property suites", || {
        properties(&[("dim3", std::slice::from_ref(&dim3_unique)), ("dim4", &dim4_all), ("dim5", &archive5)])
    });
    println!("acceptance run finished in {:.0}s", start.elapsed().as_secs_f64());
}
