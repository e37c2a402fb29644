//! Small exact vector helpers shared by the lattice and cone code.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub(crate) type Vector = Vec<BigInt>;

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn is_zero(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub(crate) fn neg(v: &[BigInt]) -> Vector {
    v.iter().map(|x| -x).collect()
}

pub(crate) fn sub(a: &[BigInt], b: &[BigInt]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn add(a: &[BigInt], b: &[BigInt]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `s·a + t·b`
pub(crate) fn combine(s: &BigInt, a: &[BigInt], t: &BigInt, b: &[BigInt]) -> Vector {
    a.iter().zip(b).map(|(x, y)| s * x + t * y).collect()
}

pub(crate) fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divides out the gcd of the coordinates, keeping the direction.
pub(crate) fn primitive(v: &[BigInt]) -> Vector {
    let g = content(v);
    if g.is_zero() || g.is_one() {
        v.to_vec()
    } else {
        v.iter().map(|x| x / &g).collect()
    }
}

pub(crate) fn to_rational(v: &[BigInt]) -> Vec<BigRational> {
    v.iter()
        .map(|x| BigRational::from_integer(x.clone()))
        .collect()
}

/// Clears denominators and returns the primitive integer vector in the same direction.
pub(crate) fn clear_denominators(v: &[BigRational]) -> Vector {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vector = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    primitive(&ints)
}

/// Rank over the rationals of a list of vectors of length `dim`.
pub(crate) fn rank(vectors: &[Vector], dim: usize) -> usize {
    let mut rows: Vec<Vec<BigRational>> = vectors.iter().map(|v| to_rational(v)).collect();
    let mut r = 0;
    for col in 0..dim {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][col].clone();
        for i in (r + 1)..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let f = &rows[i][col] / &pivot;
            let (top, rest) = rows.split_at_mut(i);
            for (x, y) in rest[0][col..dim].iter_mut().zip(&top[r][col..dim]) {
                *x -= &f * y;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Solves `a·x = b` for a square nonsingular rational matrix; `None` when singular.
pub(crate) fn solve(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, p);
        let pivot = m[col][col].clone();
        for x in &mut m[col][col..=n] {
            *x = &*x / &pivot;
        }
        let pivot_row = m[col].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row[col..=n].iter_mut().zip(&pivot_row[col..=n]) {
                *x -= &f * y;
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Component of `v` orthogonal to the span of `basis` (linearly independent), scaled to a
/// primitive integer vector.
pub(crate) fn project_orthogonal(v: &[BigInt], basis: &[Vector]) -> Vector {
    if basis.is_empty() {
        return primitive(v);
    }
    let gram: Vec<Vec<BigRational>> = basis
        .iter()
        .map(|x| {
            basis
                .iter()
                .map(|y| BigRational::from_integer(dot(x, y)))
                .collect()
        })
        .collect();
    let rhs: Vec<BigRational> = basis
        .iter()
        .map(|x| BigRational::from_integer(dot(x, v)))
        .collect();
    let coeffs = solve(&gram, &rhs).expect("basis vectors must be independent");
    let mut out = to_rational(v);
    for (c, b) in coeffs.iter().zip(basis) {
        for (o, x) in out.iter_mut().zip(b) {
            *o -= c * BigRational::from_integer(x.clone());
        }
    }
    clear_denominators(&out)
}
