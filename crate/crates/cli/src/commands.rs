use std::fs;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context};
use clap::Args;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use eigensolver::admissible::{
    incremental_unmixed, tuple_dense, tuple_mixed, tuple_multi_dense, tuple_multi_unmixed,
    tuple_unmixed, AdmissibleTuple, TupleFamily,
};
use eigensolver::generators::{
    builtin_systems, gen_dense, gen_mixed, gen_multi_dense, gen_multi_unmixed, gen_unmixed,
    gen_vandermonde_system,
};
use eigensolver::json::{ReportJson, StructureJson, SystemJson, TupleJson};
use eigensolver::lattice::{dilate_lattice_points, LatticePolytopeSpec};
use eigensolver::solver::{solve, Precomputed, SolveOptions};
use eigensolver::{Error, PolySystem, Support};

pub const EXIT_OK: i32 = 0;
pub const EXIT_RANK: i32 = 2;
pub const EXIT_PARSE: i32 = 3;

#[derive(Args)]
pub struct SolveArgs {
    /// System JSON file.
    #[arg(long)]
    pub input: PathBuf,
    /// Tuple construction: dense | unmixed | multi-dense | multi-unmixed |
    /// mixed | incremental. Required unless --tuple is given.
    #[arg(long)]
    pub family: Option<String>,
    /// Reuse a previously saved tuple (online path).
    #[arg(long)]
    pub tuple: Option<PathBuf>,
    /// Save the constructed tuple for later reuse.
    #[arg(long)]
    pub save_tuple: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-8)]
    pub rtol: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub cluster_tol: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub bwe_threshold: f64,
    /// Column/row ratio above which the cokernel uses the random
    /// compression sketch.
    #[arg(long, default_value_t = 1.5)]
    pub compression_factor: f64,
    /// RNG seed; falls back to EIGENSOLVER_SEED, then to entropy.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Report JSON destination (stdout when omitted).
    #[arg(long)]
    pub output: Option<PathBuf>,
}

pub fn resolve_seed(flag: Option<u64>) -> u64 {
    if let Some(s) = flag {
        return s;
    }
    if let Ok(v) = std::env::var("EIGENSOLVER_SEED") {
        if let Ok(s) = v.parse() {
            return s;
        }
    }
    rand::random()
}

fn parse_usize_list(s: &str) -> anyhow::Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|e| anyhow!("bad list entry {t:?}: {e}"))
        })
        .collect()
}

fn parse_u32_list(s: &str) -> anyhow::Result<Vec<u32>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|e| anyhow!("bad list entry {t:?}: {e}"))
        })
        .collect()
}

fn parse_point_rows(s: &str) -> anyhow::Result<Vec<Vec<u32>>> {
    s.split(';').map(parse_u32_list).collect()
}

fn inferred_degrees(f: &PolySystem) -> Vec<u32> {
    f.polys()
        .iter()
        .map(|p| {
            p.terms()
                .map(|(e, _)| e.total_degree())
                .max()
                .unwrap_or(0)
                .max(1)
        })
        .collect()
}

struct LoadedSystem {
    system: PolySystem,
    structure: StructureJson,
}

fn load_system(path: &PathBuf) -> anyhow::Result<LoadedSystem> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let json: SystemJson = serde_json::from_str(&text).context("parsing system JSON")?;
    let system = json.to_system().context("validating system")?;
    Ok(LoadedSystem {
        system,
        structure: json.structure.unwrap_or_default(),
    })
}

fn structure_generators(structure: &StructureJson, dim: usize) -> anyhow::Result<Support> {
    let rows = structure
        .generators
        .as_ref()
        .ok_or_else(|| anyhow!("this family needs \"structure.generators\" in the system file"))?;
    Ok(Support::from_rows(dim, rows)?)
}

fn structure_degrees(structure: &StructureJson, f: &PolySystem) -> Vec<u32> {
    structure
        .degrees
        .clone()
        .unwrap_or_else(|| inferred_degrees(f))
}

pub fn run_solve(args: SolveArgs) -> anyhow::Result<i32> {
    let loaded = match load_system(&args.input) {
        Ok(l) => l,
        Err(e) => {
            eprintln!("error: {e:#}");
            return Ok(EXIT_PARSE);
        }
    };
    let f = loaded.system;
    let seed = resolve_seed(args.seed);
    let opts = SolveOptions {
        rtol: args.rtol,
        cluster_tol: args.cluster_tol,
        bwe_threshold: args.bwe_threshold,
        compression_factor: args.compression_factor,
        seed,
        ..Default::default()
    };

    let mut precomputed: Option<Precomputed> = None;
    let tuple: AdmissibleTuple = if let Some(tuple_path) = &args.tuple {
        let text = match fs::read_to_string(tuple_path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: reading {}: {e}", tuple_path.display());
                return Ok(EXIT_PARSE);
            }
        };
        match serde_json::from_str::<TupleJson>(&text)
            .map_err(anyhow::Error::from)
            .and_then(|j| j.to_tuple(f.dim()).map_err(anyhow::Error::from))
        {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: parsing tuple: {e:#}");
                return Ok(EXIT_PARSE);
            }
        }
    } else {
        let Some(family_str) = args.family.as_deref() else {
            eprintln!("usage error: --family is required when no --tuple is given");
            return Ok(EXIT_PARSE);
        };
        let Some(family) = TupleFamily::parse(family_str) else {
            eprintln!(
                "usage error: unknown family {family_str:?} (expected dense, unmixed, multi-dense, multi-unmixed, mixed or incremental)"
            );
            return Ok(EXIT_PARSE);
        };
        let structure = &loaded.structure;
        match family {
            TupleFamily::Dense => tuple_dense(f.dim(), &structure_degrees(structure, &f))?,
            TupleFamily::Unmixed => {
                let gens = match structure_generators(structure, f.dim()) {
                    Ok(g) => g,
                    Err(e) => {
                        eprintln!("error: {e:#}");
                        return Ok(EXIT_PARSE);
                    }
                };
                tuple_unmixed(&gens, &structure_degrees(structure, &f))?
            }
            TupleFamily::MultiDense => {
                let (Some(blocks), Some(dmat)) =
                    (structure.blocks.clone(), structure.degree_matrix.clone())
                else {
                    eprintln!(
                        "error: multi-dense needs structure.blocks and structure.degree_matrix"
                    );
                    return Ok(EXIT_PARSE);
                };
                tuple_multi_dense(&blocks, &dmat)?
            }
            TupleFamily::MultiUnmixed => {
                let (Some(bgens), Some(dmat)) = (
                    structure.block_generators.clone(),
                    structure.degree_matrix.clone(),
                ) else {
                    eprintln!(
                        "error: multi-unmixed needs structure.block_generators and structure.degree_matrix"
                    );
                    return Ok(EXIT_PARSE);
                };
                let blocks = bgens
                    .iter()
                    .map(|rows| {
                        let dim = rows.first().map(|r| r.len()).unwrap_or(0);
                        Support::from_rows(dim, rows)
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                tuple_multi_unmixed(&blocks, &dmat)?
            }
            TupleFamily::Mixed => tuple_mixed(&f.supports())?,
            TupleFamily::Incremental => {
                let gens = match structure_generators(structure, f.dim()) {
                    Ok(g) => g,
                    Err(e) => {
                        eprintln!("error: {e:#}");
                        return Ok(EXIT_PARSE);
                    }
                };
                let degrees = structure_degrees(structure, &f);
                let mut rng = ChaCha12Rng::seed_from_u64(seed);
                match incremental_unmixed(&f, &gens, &degrees, &mut rng, opts.rtol, None) {
                    Ok(res) => {
                        precomputed = Some(Precomputed {
                            cokernel: res.cokernel,
                            n_f0: res.n_f0,
                            f0: res.f0,
                        });
                        res.tuple
                    }
                    Err(Error::RankNeverMet { cap }) => {
                        eprintln!("error: rank condition never met up to dilation {cap}");
                        return Ok(EXIT_RANK);
                    }
                    Err(e) => return Err(e.into()),
                }
            }
        }
    };

    if let Some(path) = &args.save_tuple {
        let json = TupleJson::from(&tuple);
        fs::write(path, serde_json::to_string_pretty(&json)?)?;
    }

    let report = match solve(&f, &tuple, &opts, precomputed) {
        Ok(r) => r,
        Err(Error::RankConditionFailed) => {
            eprintln!("error: rank condition failed: tuple too small or assumption violated");
            return Ok(EXIT_RANK);
        }
        Err(e) => return Err(e.into()),
    };

    eprintln!(
        "solved: {} solutions (gamma {}, #D {}, candidates {}, max bwe {:.2e}, seed {}) in {:.2}s",
        report.solutions.len(),
        report.gamma,
        report.d_size,
        report.candidates_total,
        report.max_bwe(),
        report.seed,
        report.timings.total_s,
    );
    let json = serde_json::to_string_pretty(&ReportJson::from(&report))?;
    match &args.output {
        Some(path) => fs::write(path, json)?,
        None => println!("{json}"),
    }
    Ok(EXIT_OK)
}

#[derive(Args)]
pub struct GenArgs {
    /// Builtin fixed system: demo-2d | molecular-biology.
    #[arg(long, conflicts_with = "family")]
    pub builtin: Option<String>,
    /// Random family: dense | unmixed | multi-dense | multi-unmixed | mixed |
    /// vandermonde.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub dim: Option<usize>,
    /// Comma-separated degrees (dense/unmixed), or the single degree for
    /// vandermonde.
    #[arg(long)]
    pub degrees: Option<String>,
    /// Polytope generator points, e.g. "0,0;1,0;1,1;0,1;2,2".
    #[arg(long)]
    pub generators: Option<String>,
    /// Block sizes for multi families, e.g. "2,2".
    #[arg(long)]
    pub blocks: Option<String>,
    /// Degree matrix rows separated by ';', e.g. "1,6;2,1;3,2;4,1".
    #[arg(long)]
    pub degree_matrix: Option<String>,
    /// Per-block generators for multi-unmixed, blocks separated by '|'.
    #[arg(long)]
    pub block_generators: Option<String>,
    /// Planted root count (vandermonde).
    #[arg(long)]
    pub planted: Option<usize>,
    /// Also write the planted roots as JSON.
    #[arg(long)]
    pub roots_output: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub output: PathBuf,
}

pub fn run_gen(args: GenArgs) -> anyhow::Result<i32> {
    let seed = resolve_seed(args.seed);
    let mut rng = ChaCha12Rng::seed_from_u64(seed);

    let (system, structure, roots) = if let Some(name) = &args.builtin {
        let Some((_, f)) = builtin_systems().into_iter().find(|(n, _)| n == name) else {
            eprintln!(
                "error: unknown builtin {name:?}; available: {}",
                builtin_systems()
                    .iter()
                    .map(|(n, _)| *n)
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            return Ok(EXIT_PARSE);
        };
        (f, StructureJson::default(), None)
    } else {
        let Some(family) = args.family.as_deref() else {
            eprintln!("usage error: gen needs --builtin or --family");
            return Ok(EXIT_PARSE);
        };
        match family {
            "dense" => {
                let dim = args.dim.ok_or_else(|| anyhow!("--dim required"))?;
                let degrees = parse_u32_list(
                    args.degrees
                        .as_deref()
                        .ok_or_else(|| anyhow!("--degrees required"))?,
                )?;
                let f = gen_dense(dim, &degrees, &mut rng)?;
                let simplex = LatticePolytopeSpec::simplex(dim);
                let gens = dilate_lattice_points(&simplex, 1);
                let structure = StructureJson {
                    degrees: Some(degrees),
                    generators: Some(gens.iter().map(|e| e.entries().to_vec()).collect()),
                    ..Default::default()
                };
                (f, structure, None)
            }
            "unmixed" => {
                let rows = parse_point_rows(
                    args.generators
                        .as_deref()
                        .ok_or_else(|| anyhow!("--generators required"))?,
                )?;
                let dim = rows.first().map(|r| r.len()).unwrap_or(0);
                let gens = Support::from_rows(dim, &rows)?;
                let degrees = parse_u32_list(
                    args.degrees
                        .as_deref()
                        .ok_or_else(|| anyhow!("--degrees required"))?,
                )?;
                let f = gen_unmixed(&gens, &degrees, &mut rng)?;
                let structure = StructureJson {
                    degrees: Some(degrees),
                    generators: Some(rows),
                    ..Default::default()
                };
                (f, structure, None)
            }
            "multi-dense" => {
                let blocks = parse_usize_list(
                    args.blocks
                        .as_deref()
                        .ok_or_else(|| anyhow!("--blocks required"))?,
                )?;
                let dmat = args
                    .degree_matrix
                    .as_deref()
                    .ok_or_else(|| anyhow!("--degree-matrix required"))?
                    .split(';')
                    .map(parse_u32_list)
                    .collect::<anyhow::Result<Vec<_>>>()?;
                let f = gen_multi_dense(&blocks, &dmat, &mut rng)?;
                let structure = StructureJson {
                    blocks: Some(blocks),
                    degree_matrix: Some(dmat),
                    ..Default::default()
                };
                (f, structure, None)
            }
            "multi-unmixed" => {
                let bgens = args
                    .block_generators
                    .as_deref()
                    .ok_or_else(|| anyhow!("--block-generators required"))?
                    .split('|')
                    .map(parse_point_rows)
                    .collect::<anyhow::Result<Vec<_>>>()?;
                let supports = bgens
                    .iter()
                    .map(|rows| {
                        let dim = rows.first().map(|r| r.len()).unwrap_or(0);
                        Support::from_rows(dim, rows)
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let dmat = args
                    .degree_matrix
                    .as_deref()
                    .ok_or_else(|| anyhow!("--degree-matrix required"))?
                    .split(';')
                    .map(parse_u32_list)
                    .collect::<anyhow::Result<Vec<_>>>()?;
                let f = gen_multi_unmixed(&supports, &dmat, &mut rng)?;
                let structure = StructureJson {
                    degree_matrix: Some(dmat),
                    block_generators: Some(bgens),
                    ..Default::default()
                };
                (f, structure, None)
            }
            "mixed" => {
                // Random coefficients on supports given as blocks of points.
                let bgens = args
                    .block_generators
                    .as_deref()
                    .ok_or_else(|| {
                        anyhow!("--block-generators required (one block per polynomial)")
                    })?
                    .split('|')
                    .map(parse_point_rows)
                    .collect::<anyhow::Result<Vec<_>>>()?;
                let supports = bgens
                    .iter()
                    .map(|rows| {
                        let dim = rows.first().map(|r| r.len()).unwrap_or(0);
                        Support::from_rows(dim, rows)
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let f = gen_mixed(&supports, &mut rng)?;
                (f, StructureJson::default(), None)
            }
            "vandermonde" => {
                let dim = args.dim.ok_or_else(|| anyhow!("--dim required"))?;
                let degrees = parse_u32_list(
                    args.degrees
                        .as_deref()
                        .ok_or_else(|| anyhow!("--degrees required"))?,
                )?;
                if degrees.len() != 1 {
                    bail!("vandermonde takes a single degree");
                }
                let delta = args.planted.ok_or_else(|| anyhow!("--planted required"))?;
                let simplex = LatticePolytopeSpec::simplex(dim);
                let a = dilate_lattice_points(&simplex, degrees[0]);
                let (f, roots) = gen_vandermonde_system(&a, delta, &mut rng)?;
                let gens = dilate_lattice_points(&simplex, 1);
                let structure = StructureJson {
                    degrees: Some(vec![degrees[0]; f.len()]),
                    generators: Some(gens.iter().map(|e| e.entries().to_vec()).collect()),
                    ..Default::default()
                };
                (f, structure, Some(roots))
            }
            other => {
                eprintln!("error: unknown generator family {other:?}");
                return Ok(EXIT_PARSE);
            }
        }
    };

    let json = SystemJson::from_system(&system, Some(structure));
    fs::write(&args.output, serde_json::to_string_pretty(&json)?)?;
    eprintln!(
        "wrote {} ({} polynomials in {} variables, seed {seed})",
        args.output.display(),
        system.len(),
        system.dim()
    );
    if let (Some(path), Some(roots)) = (&args.roots_output, roots) {
        let rows: Vec<Vec<[f64; 2]>> = roots
            .iter()
            .map(|z| z.iter().map(|c| [c.re, c.im]).collect())
            .collect();
        fs::write(path, serde_json::to_string_pretty(&rows)?)?;
    }
    Ok(EXIT_OK)
}
