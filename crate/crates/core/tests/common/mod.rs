#![allow(dead_code)]

use std::path::PathBuf;

use horofan::cli::document::{read_document, Document};
use horofan::coloured::{validate_fan, Colour, ColouredConeData, ColouredFan, ColouredLattice};
use horofan::cone::Cone;
use horofan::fantastack::{build_fantastack, spans_lattice, FantastackInput};
use horofan::lattice::IntMatrix;
use horofan::stacky::{StackyColouredFan, StackyMap};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const GOLDEN_FANS: [&str; 11] = [
    "ex3_a2z2",
    "ex3_p2",
    "ex3_sl3_beta11",
    "ex3_sl3_beta21_01",
    "ex3_trivial_fan",
    "ex5_1",
    "ex5_2",
    "ex5_3",
    "ex6_1",
    "ex6_2",
    "ex6_3",
];

/// Golden maps with their expected isomorphism and good moduli space verdicts.
pub const GOLDEN_MAPS: [(&str, bool, bool); 4] = [
    ("map_decolour62", false, false),
    ("map_gms62", false, true),
    ("map_cox52", true, true),
    ("map_fantastack51", false, true),
];

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/golden")
}

pub fn golden_path(name: &str) -> PathBuf {
    golden_dir().join(format!("{name}.json"))
}

pub fn load_fan(name: &str) -> StackyColouredFan {
    match read_document(&golden_path(name)).unwrap() {
        Document::Fan(doc) => doc.stacky().unwrap(),
        Document::Map(_) => panic!("{name} is a map document"),
    }
}

pub fn load_map(name: &str) -> StackyMap {
    match read_document(&golden_path(name)).unwrap() {
        Document::Map(doc) => doc.stacky_map(&golden_dir()).unwrap(),
        Document::Fan(_) => panic!("{name} is a fan document"),
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn v(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn random_vector(rng: &mut impl Rng, dim: usize, lo: i64, hi: i64) -> Vec<BigInt> {
    (0..dim)
        .map(|_| BigInt::from(rng.gen_range(lo..=hi)))
        .collect()
}

pub fn random_nonzero(rng: &mut impl Rng, dim: usize, bound: i64) -> Vec<BigInt> {
    loop {
        let x = random_vector(rng, dim, -bound, bound);
        if x.iter().any(|c| !c.is_zero()) {
            return x;
        }
    }
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let entries = (0..rows * cols)
        .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
        .collect();
    IntMatrix::new(rows, cols, entries).unwrap()
}

/// A strongly convex cone on at most `max_gens` generators with coordinates in `[-bound, bound]`.
pub fn random_cone(rng: &mut impl Rng, dim: usize, bound: i64, max_gens: usize) -> Cone {
    loop {
        let k = rng.gen_range(0..=max_gens);
        let gens: Vec<Vec<BigInt>> = (0..k).map(|_| random_nonzero(rng, dim, bound)).collect();
        let cone = Cone::from_generators(dim, &gens).unwrap();
        if cone.is_strongly_convex() {
            return cone;
        }
    }
}

/// A valid coloured fan grown greedily from random cones; colour sets are random subsets
/// of the admissible colours.
pub fn random_fan(
    rng: &mut impl Rng,
    rank: usize,
    bound: i64,
    colours: usize,
    max_cones: usize,
) -> ColouredFan {
    let lattice = ColouredLattice::new(
        rank,
        (0..colours)
            .map(|i| Colour::new(format!("c{i}"), random_nonzero(rng, rank, bound)))
            .collect(),
    )
    .unwrap();
    let mut accepted: Vec<ColouredConeData> = Vec::new();
    for _ in 0..4 * max_cones {
        if accepted.len() == max_cones {
            break;
        }
        let mut cone = random_cone(rng, rank, bound, rank);
        if let Some(c) = lattice.colours().choose(rng) {
            let mut gens = cone.rays().to_vec();
            gens.push(c.point.clone());
            let widened = Cone::from_generators(rank, &gens).unwrap();
            if rng.gen_bool(0.5) && widened.is_strongly_convex() {
                cone = widened;
            }
        }
        let admissible: Vec<String> = lattice
            .colours()
            .iter()
            .filter(|c| cone.contains_point(&c.point).unwrap())
            .map(|c| c.label.clone())
            .collect();
        let data = ColouredConeData {
            generators: cone.rays().to_vec(),
            colours: admissible
                .into_iter()
                .filter(|_| rng.gen_bool(0.5))
                .collect(),
        };
        accepted.push(data);
        if !validate_fan(&lattice, &accepted).is_valid() {
            accepted.pop();
        }
    }
    ColouredFan::new(lattice, &accepted).unwrap()
}

/// A random fan whose colour points and support span the lattice.
pub fn random_spanning_fan(rng: &mut impl Rng, max_rank: usize, bound: i64) -> ColouredFan {
    loop {
        let rank = rng.gen_range(1..=max_rank);
        let colours = rng.gen_range(0..=2);
        let f = random_fan(rng, rank, bound, colours, 3);
        if spans_lattice(&f) {
            return f;
        }
    }
}

/// A random input satisfying the four fantastack conditions with at most `max_columns`
/// columns.
pub fn random_cf_input(
    rng: &mut impl Rng,
    max_rank: usize,
    max_columns: usize,
    bound: i64,
) -> FantastackInput {
    loop {
        let f = random_spanning_fan(rng, max_rank, bound);
        let mut extra: Vec<Vec<BigInt>> = f
            .non_coloured_rays()
            .into_iter()
            .map(|r| {
                let k = BigInt::from(rng.gen_range(1..=2));
                r.iter().map(|x| x * &k).collect()
            })
            .collect();
        if rng.gen_bool(0.5) {
            if let Some(sigma) = f.maximal_cones().choose(rng) {
                let mut p = vec![BigInt::zero(); f.rank()];
                for r in sigma.cone().rays() {
                    let k = BigInt::from(rng.gen_range(0..=2));
                    p = p.iter().zip(r).map(|(a, b)| a + b * &k).collect();
                }
                extra.push(p);
            }
        }
        extra.shuffle(rng);
        if f.lattice().colours().len() + extra.len() > max_columns {
            continue;
        }
        return FantastackInput::with_extra_columns(f, &extra).unwrap();
    }
}

/// The fantastack with its structure map to the base fan.
pub fn fantastack_map(fi: &FantastackInput) -> StackyMap {
    let s = build_fantastack(fi).unwrap();
    let base = StackyColouredFan::identity(fi.base_fan().clone());
    let id = IntMatrix::identity(fi.base_fan().rank());
    StackyMap::new(s, base, fi.beta().clone(), id).unwrap()
}

/// Rank over the rationals by fraction-free elimination.
pub fn rank(vectors: &[Vec<BigInt>]) -> usize {
    let mut rows: Vec<Vec<BigRational>> = vectors
        .iter()
        .map(|r| r.iter().cloned().map(BigRational::from_integer).collect())
        .collect();
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &rows[r][c];
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(pivot) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

/// Determinant by cofactor expansion; fine for the small matrices used here.
pub fn det(m: &[Vec<BigInt>]) -> BigInt {
    if m.is_empty() {
        return BigInt::one();
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<BigInt>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(k, _)| *k != j)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let term = &m[0][j] * det(&minor);
            if j % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Gcd of the maximal minors of the matrix with the given columns: the index of the lattice
/// they span inside its saturation.
pub fn saturation_index(columns: &[Vec<BigInt>]) -> BigInt {
    let k = columns.len();
    let dim = columns.first().map_or(0, Vec::len);
    subsets(dim, k)
        .into_iter()
        .map(|rows| {
            let sub: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|&i| columns.iter().map(|c| c[i].clone()).collect())
                .collect();
            det(&sub).abs()
        })
        .fold(BigInt::zero(), |a, b| a.gcd(&b))
}

/// A maximal linearly independent subset, chosen greedily.
pub fn independent_subset(vectors: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    for x in vectors {
        out.push(x.clone());
        if rank(&out) < out.len() {
            out.pop();
        }
    }
    out
}

pub fn apply(m: &IntMatrix, x: &[BigInt]) -> Vec<BigInt> {
    m.apply(x).unwrap()
}

/// Integer points of the cone spanned by `gens` with every coefficient at most `reach`, kept
/// inside `[0, bound]^dim`.
pub fn box_points(gens: &[Vec<BigInt>], dim: usize, reach: i64, bound: i64) -> Vec<Vec<BigInt>> {
    let mut points = vec![vec![BigInt::zero(); dim]];
    for g in gens {
        let mut next = Vec::new();
        for p in &points {
            for k in 0..=reach {
                let q: Vec<BigInt> = p.iter().zip(g).map(|(a, b)| a + b * k).collect();
                if q.iter()
                    .all(|x| !x.is_negative() && *x <= BigInt::from(bound))
                {
                    next.push(q);
                }
            }
        }
        next.sort();
        next.dedup();
        points = next;
    }
    points
}
