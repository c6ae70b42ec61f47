//! Shared fixtures for the criterion benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use eigensolver::admissible::{tuple_dense, AdmissibleTuple};
use eigensolver::generators::{gen_dense, gen_vandermonde_system};
use eigensolver::lattice::{dilate_lattice_points, LatticePolytopeSpec};
use eigensolver::{PolySystem, Support, C64};

pub struct DenseFixture {
    pub system: PolySystem,
    pub tuple: AdmissibleTuple,
}

/// Square dense system with a reproducible seed.
pub fn dense_fixture(n: usize, degrees: &[u32], seed: u64) -> DenseFixture {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    DenseFixture {
        system: gen_dense(n, degrees, &mut rng).expect("dense system"),
        tuple: tuple_dense(n, degrees).expect("dense tuple"),
    }
}

pub struct PlantedFixture {
    pub system: PolySystem,
    pub roots: Vec<Vec<C64>>,
    pub generators: Support,
    pub degrees: Vec<u32>,
}

/// Overdetermined planted-root system on a dense support.
pub fn planted_fixture(n: usize, d: u32, s: usize, seed: u64) -> PlantedFixture {
    let simplex = LatticePolytopeSpec::simplex(n);
    let a = dilate_lattice_points(&simplex, d);
    let delta = a.len() - s;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let (system, roots) = gen_vandermonde_system(&a, delta, &mut rng).expect("planted system");
    PlantedFixture {
        system,
        roots,
        generators: dilate_lattice_points(&simplex, 1),
        degrees: vec![d; s],
    }
}
