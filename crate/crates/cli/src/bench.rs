//! Benchmark scenarios: planted-root recovery across system families, plus
//! a robustness experiment with one solution drifting toward infinity.
//!
//! CSV column order is pinned (golden-file tested):
//!   standard rows:  n,s,d,delta_expected,gamma,d_size,bwe_max,bwe_geomean,
//!                   t_offline_s,t_online_s,recovered_count
//!   infinity rows:  e,n,s,d,delta_expected,recovered_count,bwe_max,
//!                   max_solution_norm

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::Context;
use clap::Args;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use eigensolver::admissible::{incremental_unmixed, tuple_dense};
use eigensolver::generators::{gen_dense, gen_vandermonde_system, system_through_points};
use eigensolver::lattice::{dilate_lattice_points, LatticePolytopeSpec};

use eigensolver::solver::{solve, Precomputed, SolveOptions, SolveReport};
use eigensolver::{PolySystem, Support, C64};

use crate::commands::{resolve_seed, EXIT_OK, EXIT_PARSE};

pub const STANDARD_HEADER: &str =
    "n,s,d,delta_expected,gamma,d_size,bwe_max,bwe_geomean,t_offline_s,t_online_s,recovered_count";
pub const INFINITY_HEADER: &str =
    "e,n,s,d,delta_expected,recovered_count,bwe_max,max_solution_norm";

pub const SCENARIOS: &[(&str, &str)] = &[
    (
        "table3_small",
        "overdetermined dense, n=3, s=6, d in {2,4,6} (--full adds d=8,10)",
    ),
    (
        "table3_n15_smoke",
        "one strongly overdetermined cubic row: n=15, 216 equations, 600 roots (slow)",
    ),
    (
        "table4_small",
        "overdetermined unmixed, n=3, s=6, d in {1,2,3}",
    ),
    (
        "square_dense",
        "square dense systems n=2 d=(20,20) and n=3 d=(4,8,12)",
    ),
    (
        "infinity_stress",
        "one planted root scaled by 10^e, e=0..8, n=3 s=6 d=3",
    ),
];

#[derive(Args)]
pub struct BenchArgs {
    /// Scenario name; omit to list the registry.
    pub scenario: Option<String>,
    /// Include the slow rows excluded at desk scale.
    #[arg(long)]
    pub full: bool,
    #[arg(long)]
    pub seed: Option<u64>,
    /// CSV destination (stdout when omitted).
    #[arg(long)]
    pub output: Option<PathBuf>,
}

struct BenchRow {
    n: usize,
    s: usize,
    d: String,
    delta_expected: usize,
    gamma: usize,
    d_size: usize,
    bwe_max: f64,
    bwe_geomean: f64,
    t_offline_s: f64,
    t_online_s: f64,
    recovered_count: usize,
}

impl BenchRow {
    fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{:e},{:e},{:.3},{:.3},{}",
            self.n,
            self.s,
            self.d,
            self.delta_expected,
            self.gamma,
            self.d_size,
            self.bwe_max,
            self.bwe_geomean,
            self.t_offline_s,
            self.t_online_s,
            self.recovered_count
        )
    }
}

fn geomean(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut count = 0usize;
    for v in values {
        sum += v.max(1e-300).ln();
        count += 1;
    }
    if count == 0 {
        0.0
    } else {
        (sum / count as f64).exp()
    }
}

fn rel_distance(a: &[C64], b: &[C64]) -> f64 {
    let diff: f64 = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let na: f64 = a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    diff / na.max(nb).max(1e-300)
}

fn recovered_count(report: &SolveReport, planted: &[Vec<C64>]) -> usize {
    planted
        .iter()
        .filter(|root| {
            report
                .solutions
                .iter()
                .any(|s| rel_distance(&s.point, root) < 1e-6)
        })
        .count()
}

/// Offline: incremental tuple construction + solve with its by-products.
/// Online: fresh solve that recomputes the cokernel from the saved tuple.
fn run_planted_dense_row(n: usize, s_wanted: usize, d: u32, seed: u64) -> anyhow::Result<BenchRow> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let simplex = LatticePolytopeSpec::simplex(n);
    let a = dilate_lattice_points(&simplex, d);
    let delta = a.len() - s_wanted;
    let (f, roots) = gen_vandermonde_system(&a, delta, &mut rng)?;
    assert_eq!(f.len(), s_wanted);
    let gens = dilate_lattice_points(&simplex, 1);
    run_planted_row(&f, &roots, &gens, &vec![d; s_wanted], seed, &d.to_string())
}

fn run_planted_row(
    f: &PolySystem,
    roots: &[Vec<C64>],
    gens: &Support,
    degrees: &[u32],
    seed: u64,
    d_label: &str,
) -> anyhow::Result<BenchRow> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed ^ 0xabcdef);
    let opts = SolveOptions {
        seed,
        ..Default::default()
    };

    let t0 = Instant::now();
    let inc = incremental_unmixed(f, gens, degrees, &mut rng, opts.rtol, None)?;
    let tuple = inc.tuple.clone();
    let offline_report = solve(
        f,
        &tuple,
        &opts,
        Some(Precomputed {
            cokernel: inc.cokernel,
            n_f0: inc.n_f0,
            f0: inc.f0,
        }),
    )?;
    let t_offline = t0.elapsed().as_secs_f64();

    let t0 = Instant::now();
    let online_report = solve(f, &tuple, &opts, None)?;
    let t_online = t0.elapsed().as_secs_f64();

    Ok(BenchRow {
        n: f.dim(),
        s: f.len(),
        d: d_label.to_string(),
        delta_expected: roots.len(),
        gamma: online_report.gamma,
        d_size: online_report.d_size,
        bwe_max: offline_report.max_bwe(),
        bwe_geomean: geomean(offline_report.solutions.iter().map(|s| s.bwe)),
        t_offline_s: t_offline,
        t_online_s: t_online,
        recovered_count: recovered_count(&offline_report, roots),
    })
}

fn table3_small(seed: u64, full: bool) -> anyhow::Result<Vec<BenchRow>> {
    let mut ds = vec![2u32, 4, 6];
    if full {
        ds.extend([8, 10]);
    }
    ds.iter()
        .map(|&d| run_planted_dense_row(3, 6, d, seed.wrapping_add(d as u64)))
        .collect()
}

/// Single strongly overdetermined row: 216 cubics in 15 variables with 600
/// planted roots. The offline incremental construction stays feasible here;
/// the online path (a fresh cokernel of the full matrix) is the slow half.
fn table3_n15_smoke(seed: u64, _full: bool) -> anyhow::Result<Vec<BenchRow>> {
    Ok(vec![run_planted_dense_row(15, 216, 3, seed)?])
}

/// Generators of the 3-variable polytope used by the unmixed scenario.
fn table4_polytope() -> Support {
    Support::from_rows(
        3,
        &[
            vec![2, 1, 0],
            vec![2, 1, 2],
            vec![0, 0, 1],
            vec![1, 0, 0],
            vec![1, 1, 2],
            vec![0, 1, 2],
            vec![0, 0, 0],
        ],
    )
    .expect("scenario polytope")
}

fn table4_small(seed: u64, full: bool) -> anyhow::Result<Vec<BenchRow>> {
    let gens = table4_polytope();
    let p = LatticePolytopeSpec::new(gens.clone())?;
    let mut ds = vec![1u32, 2, 3];
    if full {
        ds.push(4);
    }
    let s_wanted = 6usize;
    ds.iter()
        .map(|&d| {
            let mut rng = ChaCha12Rng::seed_from_u64(seed.wrapping_add(100 + d as u64));
            let a = dilate_lattice_points(&p, d);
            let delta = a.len() - s_wanted;
            let (f, roots) = gen_vandermonde_system(&a, delta, &mut rng)?;
            run_planted_row(&f, &roots, &gens, &vec![d; s_wanted], seed, &d.to_string())
        })
        .collect()
}

fn square_dense(seed: u64, _full: bool) -> anyhow::Result<Vec<BenchRow>> {
    let cases: Vec<(usize, Vec<u32>, usize)> =
        vec![(2, vec![20, 20], 400), (3, vec![4, 8, 12], 384)];
    let mut rows = Vec::new();
    for (n, degrees, bezout) in cases {
        let mut rng = ChaCha12Rng::seed_from_u64(seed.wrapping_add(n as u64));
        let f = gen_dense(n, &degrees, &mut rng)?;
        let opts = SolveOptions {
            seed,
            ..Default::default()
        };
        let t0 = Instant::now();
        let tuple = tuple_dense(n, &degrees)?;
        let offline_report = solve(&f, &tuple, &opts, None)?;
        let t_offline = t0.elapsed().as_secs_f64();
        let t0 = Instant::now();
        let online_report = solve(&f, &tuple, &opts, None)?;
        let t_online = t0.elapsed().as_secs_f64();
        rows.push(BenchRow {
            n,
            s: degrees.len(),
            d: degrees
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join("|"),
            delta_expected: bezout,
            gamma: online_report.gamma,
            d_size: online_report.d_size,
            bwe_max: offline_report.max_bwe(),
            bwe_geomean: geomean(offline_report.solutions.iter().map(|s| s.bwe)),
            t_offline_s: t_offline,
            t_online_s: t_online,
            recovered_count: offline_report.solutions.len(),
        });
    }
    Ok(rows)
}

struct InfinityRow {
    e: u32,
    n: usize,
    s: usize,
    d: u32,
    delta_expected: usize,
    recovered_count: usize,
    bwe_max: f64,
    max_solution_norm: f64,
}

fn infinity_stress(seed: u64, _full: bool) -> anyhow::Result<Vec<InfinityRow>> {
    let n = 3usize;
    let d = 3u32;
    let simplex = LatticePolytopeSpec::simplex(n);
    let a = dilate_lattice_points(&simplex, d);
    let s_wanted = 6usize;
    let delta = a.len() - s_wanted;
    let gens = dilate_lattice_points(&simplex, 1);
    let mut out = Vec::new();
    for e in 0..=8u32 {
        // Fresh draw per e with a fixed base point set: scale the last root.
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let (_f, mut roots) = gen_vandermonde_system(&a, delta, &mut rng)?;
        let factor = 10f64.powi(e as i32);
        for c in roots.last_mut().expect("delta >= 1").iter_mut() {
            *c *= factor;
        }
        // Rebuild the system vanishing on the scaled set.
        let f = system_through_points(&a, &roots)?;
        let mut srng = ChaCha12Rng::seed_from_u64(seed.wrapping_add(e as u64));
        let inc = incremental_unmixed(&f, &gens, &vec![d; s_wanted], &mut srng, 1e-8, None)?;
        let opts = SolveOptions {
            seed: seed.wrapping_add(e as u64),
            ..Default::default()
        };
        let report = solve(
            &f,
            &inc.tuple,
            &opts,
            Some(Precomputed {
                cokernel: inc.cokernel,
                n_f0: inc.n_f0,
                f0: inc.f0,
            }),
        )?;
        let max_norm = report
            .solutions
            .iter()
            .map(|s| s.point.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
            .fold(0.0f64, f64::max);
        out.push(InfinityRow {
            e,
            n,
            s: s_wanted,
            d,
            delta_expected: delta,
            recovered_count: recovered_count(&report, &roots),
            bwe_max: report.max_bwe(),
            max_solution_norm: max_norm,
        });
    }
    Ok(out)
}

pub fn run_bench(args: BenchArgs) -> anyhow::Result<i32> {
    let Some(name) = args.scenario.as_deref() else {
        println!("available scenarios:");
        for (name, desc) in SCENARIOS {
            println!("  {name:<16} {desc}");
        }
        return Ok(EXIT_OK);
    };
    let seed = resolve_seed(args.seed);
    let mut csv = String::new();
    match name {
        "table3_small" => {
            csv.push_str(STANDARD_HEADER);
            csv.push('\n');
            for row in table3_small(seed, args.full)? {
                csv.push_str(&row.csv());
                csv.push('\n');
            }
        }
        "table3_n15_smoke" => {
            csv.push_str(STANDARD_HEADER);
            csv.push('\n');
            for row in table3_n15_smoke(seed, args.full)? {
                csv.push_str(&row.csv());
                csv.push('\n');
            }
        }
        "table4_small" => {
            csv.push_str(STANDARD_HEADER);
            csv.push('\n');
            for row in table4_small(seed, args.full)? {
                csv.push_str(&row.csv());
                csv.push('\n');
            }
        }
        "square_dense" => {
            csv.push_str(STANDARD_HEADER);
            csv.push('\n');
            for row in square_dense(seed, args.full)? {
                csv.push_str(&row.csv());
                csv.push('\n');
            }
        }
        "infinity_stress" => {
            csv.push_str(INFINITY_HEADER);
            csv.push('\n');
            for row in infinity_stress(seed, args.full)? {
                csv.push_str(&format!(
                    "{},{},{},{},{},{},{:e},{:e}\n",
                    row.e,
                    row.n,
                    row.s,
                    row.d,
                    row.delta_expected,
                    row.recovered_count,
                    row.bwe_max,
                    row.max_solution_norm
                ));
            }
        }
        other => {
            eprintln!("error: unknown scenario {other:?}; run `eigensolver bench` to list");
            return Ok(EXIT_PARSE);
        }
    }
    match &args.output {
        Some(path) => {
            fs::write(path, &csv).with_context(|| format!("writing {}", path.display()))?
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(csv.as_bytes())?;
        }
    }
    Ok(EXIT_OK)
}
