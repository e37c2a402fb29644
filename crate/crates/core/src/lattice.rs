//! Exact integer linear algebra: matrices over Z, Smith and Hermite normal forms, kernels,
//! cokernels, saturation and quotient lattices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{self, Vector};

/// Converts a slice of machine integers into an exact vector.
pub fn int_vec(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

/// A dense integer matrix stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        check_dim(rows * cols, entries.len())?;
        Ok(IntMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row vectors, each of length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<BigInt>]) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            check_dim(cols, r.len())?;
            entries.extend(r.iter().cloned());
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Result<Self> {
        for c in columns {
            check_dim(rows, c.len())?;
        }
        let cols = columns.len();
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for c in columns {
                entries.push(c[i].clone());
            }
        }
        Ok(IntMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        Self::new(rows, cols, int_vec(entries))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_columns(self.cols, &self.row_vectors()).expect("shape is consistent")
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        check_dim(self.cols, other.rows)?;
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// Image of a column vector.
    pub fn apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        check_dim(self.cols, v.len())?;
        Ok(self.apply_unchecked(v))
    }

    pub(crate) fn apply_unchecked(&self, v: &[BigInt]) -> Vector {
        (0..self.rows)
            .map(|i| linalg::dot(self.row(i), v))
            .collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        check_dim(self.rows, self.cols)?;
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.row_vectors();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(p) => {
                        a.swap(k, p);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let val = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = val / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.row_vectors(), self.cols)
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square()
            && self
                .determinant()
                .map(|d| d.abs().is_one())
                .unwrap_or(false)
    }

    /// The block matrix `[[self, 0], [0, other]]`.
    pub fn block_diagonal(&self, other: &IntMatrix) -> IntMatrix {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        let cols = out.cols;
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[i * cols + j] = self.get(i, j).clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.entries[(self.rows + i) * cols + self.cols + j] = other.get(i, j).clone();
            }
        }
        out
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// `U·M·V = D` with `U`, `V` unimodular and `D` diagonal with a divisibility chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries of `D`, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i).clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

struct Workspace {
    d: Vec<Vector>,
    u: Vec<Vector>,
    v: Vec<Vector>,
}

impl Workspace {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap(a, b);
        self.u.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for row in self.d.iter_mut().chain(self.v.iter_mut()) {
            row.swap(a, b);
        }
    }

    /// row[target] += q·row[source]
    fn add_row(&mut self, target: usize, source: usize, q: &BigInt) {
        for m in [&mut self.d, &mut self.u] {
            let src = m[source].clone();
            for (x, y) in m[target].iter_mut().zip(&src) {
                *x += q * y;
            }
        }
    }

    /// col[target] += q·col[source]
    fn add_col(&mut self, target: usize, source: usize, q: &BigInt) {
        for row in self.d.iter_mut().chain(self.v.iter_mut()) {
            let s = row[source].clone();
            row[target] += q * s;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.d, &mut self.u] {
            for x in m[i].iter_mut() {
                *x = -&*x;
            }
        }
    }

    fn smallest_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in self.d.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if x.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => x.abs() < self.d[bi][bj].abs(),
                };
                if better {
                    best = Some((i, j));
                }
            }
        }
        best
    }
}

fn rows_identity(n: usize) -> Vec<Vector> {
    IntMatrix::identity(n).row_vectors()
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (r, c) = (m.rows, m.cols);
    let mut w = Workspace {
        d: m.row_vectors(),
        u: rows_identity(r),
        v: rows_identity(c),
    };
    for t in 0..r.min(c) {
        loop {
            let Some((pi, pj)) = w.smallest_entry(t) else {
                return finish(w, r, c);
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let mut clean = true;
            for i in t + 1..r {
                if w.d[i][t].is_zero() {
                    continue;
                }
                let q = -w.d[i][t].div_floor(&w.d[t][t]);
                w.add_row(i, t, &q);
                clean &= w.d[i][t].is_zero();
            }
            for j in t + 1..c {
                if w.d[t][j].is_zero() {
                    continue;
                }
                let q = -w.d[t][j].div_floor(&w.d[t][t]);
                w.add_col(j, t, &q);
                clean &= w.d[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let pivot = w.d[t][t].clone();
            let offender =
                (t + 1..r).find(|&i| (t + 1..c).any(|j| !w.d[i][j].is_multiple_of(&pivot)));
            match offender {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.d[t][t].is_negative() {
            w.negate_row(t);
        }
    }
    finish(w, r, c)
}

fn finish(w: Workspace, r: usize, c: usize) -> SmithForm {
    SmithForm {
        u: IntMatrix::from_rows(r, &w.u).expect("square"),
        d: IntMatrix::from_rows(c, &w.d).expect("shape"),
        v: IntMatrix::from_rows(c, &w.v).expect("square"),
    }
}

/// Row-style Hermite normal form of the lattice spanned by `vectors`: echelon rows with
/// positive pivots, entries above each pivot reduced into `[0, pivot)`, zero rows dropped.
pub fn hermite_normal_form(vectors: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vector> = vectors
        .iter()
        .filter(|v| !linalg::is_zero(v))
        .cloned()
        .collect();
    let mut p = 0;
    for col in 0..dim {
        if p == rows.len() {
            break;
        }
        loop {
            let best = (p..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let Some(b) = best else { break };
            rows.swap(p, b);
            let mut done = true;
            for i in p + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[p][col]);
                let pivot_row = rows[p].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
                done &= rows[i][col].is_zero();
            }
            if done {
                break;
            }
        }
        if rows[p][col].is_zero() {
            continue;
        }
        if rows[p][col].is_negative() {
            rows[p] = linalg::neg(&rows[p]);
        }
        let pivot_row = rows[p].clone();
        for row in rows.iter_mut().take(p) {
            let q = row[col].div_floor(&pivot_row[col]);
            if q.is_zero() {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &q * y;
            }
        }
        p += 1;
    }
    rows.truncate(p);
    rows
}

/// A sublattice of `Z^n` stored by its Hermite basis, so equality is entrywise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sublattice {
    ambient_rank: usize,
    basis: Vec<Vec<BigInt>>,
}

impl Sublattice {
    pub fn span(ambient_rank: usize, generators: &[Vec<BigInt>]) -> Result<Self> {
        for g in generators {
            check_dim(ambient_rank, g.len())?;
        }
        Ok(Sublattice {
            ambient_rank,
            basis: hermite_normal_form(generators, ambient_rank),
        })
    }

    pub fn zero(ambient_rank: usize) -> Self {
        Sublattice {
            ambient_rank,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_rank: usize) -> Self {
        Sublattice {
            ambient_rank,
            basis: IntMatrix::identity(ambient_rank).row_vectors(),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// Basis vectors as the rows of a `rank × ambient_rank` matrix.
    pub fn basis_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(self.ambient_rank, &self.basis)
            .expect("basis rows have ambient length")
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool> {
        check_dim(self.ambient_rank, v.len())?;
        Ok(self.coordinates(v).is_some())
    }

    /// Integer coordinates of `v` in the Hermite basis, if `v` lies in the sublattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        for b in &self.basis {
            let col = b
                .iter()
                .position(|x| !x.is_zero())
                .expect("basis rows are nonzero");
            if rest[..col].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let (q, r) = rest[col].div_rem(&b[col]);
            if !r.is_zero() {
                return None;
            }
            for (x, y) in rest.iter_mut().zip(b) {
                *x -= &q * y;
            }
            coords.push(q);
        }
        linalg::is_zero(&rest).then_some(coords)
    }

    pub fn contains_sublattice(&self, other: &Sublattice) -> bool {
        self.ambient_rank == other.ambient_rank
            && other.basis.iter().all(|b| self.coordinates(b).is_some())
    }

    pub fn is_saturated(&self) -> bool {
        saturation(self) == *self
    }
}

/// The full integer kernel of `m` (a saturated sublattice of the domain).
pub fn kernel_basis(m: &IntMatrix) -> Sublattice {
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    let gens: Vec<Vector> = (rank..m.cols).map(|j| snf.v.column(j)).collect();
    Sublattice::span(m.cols, &gens).expect("columns of V have domain length")
}

/// Vectors orthogonal to every basis vector of `s`.
fn annihilator(s: &Sublattice) -> Sublattice {
    kernel_basis(&s.basis_matrix())
}

pub fn saturation(s: &Sublattice) -> Sublattice {
    annihilator(&annihilator(s))
}

/// Structure of `Z^rows / image(m)`.
pub fn cokernel_structure(m: &IntMatrix) -> AbelianGroupStructure {
    let snf = smith_normal_form(m);
    let factors = snf.invariant_factors();
    AbelianGroupStructure {
        free_rank: m.rows - factors.len(),
        torsion: factors.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

/// A surjection `Z^n → Z^(n-k)` whose kernel is exactly the saturated sublattice `s`.
/// The rows of the projection are the Hermite basis of the vectors orthogonal to `s`.
pub fn quotient_map(ambient_rank: usize, s: &Sublattice) -> Result<(usize, IntMatrix)> {
    check_dim(ambient_rank, s.ambient_rank)?;
    if !s.is_saturated() {
        return Err(Error::NotSaturated);
    }
    let complement = annihilator(s);
    Ok((complement.rank(), complement.basis_matrix()))
}

/// A finitely generated abelian group `Z^r ⊕ Z/d_1 ⊕ … ⊕ Z/d_k` with `d_1 | … | d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroupStructure {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl AbelianGroupStructure {
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        let invalid = |detail: String| Error::ValidationError {
            axiom: "invariant factors".into(),
            detail,
        };
        if let Some(d) = torsion.iter().find(|d| *d < &BigInt::from(2)) {
            return Err(invalid(format!("factor {d} is smaller than 2")));
        }
        if let Some(w) = torsion.windows(2).find(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(invalid(format!("{} does not divide {}", w[0], w[1])));
        }
        Ok(AbelianGroupStructure { free_rank, torsion })
    }

    pub fn trivial() -> Self {
        AbelianGroupStructure {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn direct_sum(&self, other: &AbelianGroupStructure) -> AbelianGroupStructure {
        let factors: Vec<&BigInt> = self.torsion.iter().chain(&other.torsion).collect();
        let n = factors.len();
        let mut diag = IntMatrix::zeros(n, n);
        for (i, d) in factors.into_iter().enumerate() {
            diag.entries[i * n + i] = d.clone();
        }
        let finite = cokernel_structure(&diag);
        AbelianGroupStructure {
            free_rank: self.free_rank + other.free_rank,
            torsion: finite.torsion,
        }
    }

    /// Name of the diagonalizable group with this character group, e.g. `G_m^2 × μ₂`.
    pub fn diagonalizable_name(&self) -> String {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("G_m".to_string()),
            r => parts.push(format!("G_m^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("μ{}", subscript(&d.to_string())));
        }
        if parts.is_empty() {
            "trivial".to_string()
        } else {
            parts.join(" × ")
        }
    }
}

fn subscript(digits: &str) -> String {
    digits
        .chars()
        .map(|c| match c.to_digit(10) {
            Some(d) => char::from_u32(0x2080 + d).unwrap_or(c),
            None => c,
        })
        .collect()
}

impl fmt::Display for AbelianGroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let torsion: Vec<String> = self.torsion.iter().map(|d| d.to_string()).collect();
        write!(
            f,
            "{} (rank {}, torsion [{}])",
            self.diagonalizable_name(),
            self.free_rank,
            torsion.join(", ")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn m(rows: usize, cols: usize, xs: &[i64]) -> IntMatrix {
        IntMatrix::from_i64(rows, cols, xs).unwrap()
    }

    fn check_smith(mat: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(mat);
        assert_eq!(s.u.mul(mat).unwrap().mul(&s.v).unwrap(), s.d);
        assert!(s.u.is_unimodular() && s.v.is_unimodular());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let f = s.invariant_factors();
        assert!(f.iter().all(|d| d.is_positive()));
        assert!(f.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
        s
    }

    #[test]
    fn smith_examples() {
        assert_eq!(
            check_smith(&m(1, 1, &[2])).invariant_factors(),
            int_vec(&[2])
        );
        assert_eq!(
            check_smith(&m(2, 2, &[2, 0, 0, 3])).invariant_factors(),
            int_vec(&[1, 6])
        );
        let s = check_smith(&m(2, 2, &[1, 1, 0, 0]));
        assert_eq!(s.invariant_factors(), int_vec(&[1]));
        assert_eq!(s.rank(), m(2, 2, &[1, 1, 0, 0]).rank());
        check_smith(&m(3, 4, &[4, -6, 8, 2, 6, 9, -3, 0, 10, 3, 5, 7]));
        check_smith(&m(0, 3, &[]));
        check_smith(&m(2, 0, &[]));
    }

    #[test]
    fn cokernel_examples() {
        let c = cokernel_structure(&m(1, 1, &[2]));
        assert_eq!((c.free_rank(), c.torsion().to_vec()), (0, int_vec(&[2])));
        assert!(cokernel_structure(&IntMatrix::identity(3)).is_trivial());
        let beta =
            IntMatrix::from_columns(4, &[int_vec(&[1, 1, 1, 0]), int_vec(&[0, 0, 1, 2])]).unwrap();
        let c = cokernel_structure(&beta);
        assert_eq!((c.free_rank(), c.torsion().len()), (2, 0));
        assert_eq!(
            cokernel_structure(&m(0, 2, &[])),
            AbelianGroupStructure::trivial()
        );
        assert_eq!(cokernel_structure(&m(2, 0, &[])).free_rank(), 2);
    }

    /// Rational null space of a small matrix, scaled to primitive integer vectors.
    fn rational_kernel_dimension(mat: &IntMatrix) -> usize {
        mat.cols() - mat.rank()
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&m(1, 2, &[1, -1]));
        assert_eq!(k.basis(), &[int_vec(&[1, 1])]);
        assert_eq!(kernel_basis(&IntMatrix::identity(3)).rank(), 0);
        let k = kernel_basis(&m(1, 2, &[1, 1]));
        assert_eq!(k.basis(), &[int_vec(&[1, -1])]);
        let mat = m(2, 4, &[2, 4, 6, 8, 1, 3, 5, 7]);
        let k = kernel_basis(&mat);
        assert_eq!(k.rank(), rational_kernel_dimension(&mat));
        for b in k.basis() {
            assert!(linalg::is_zero(&mat.apply(b).unwrap()));
        }
        assert!(k.is_saturated());
    }

    /// Points of the box `[-b, b]^n` having a nonzero rational multiple in `s`.
    fn saturation_oracle(s: &Sublattice, b: i64) -> Vec<Vector> {
        let n = s.ambient_rank();
        let mut out = Vec::new();
        let mut point = vec![-b; n];
        loop {
            let v = int_vec(&point);
            let in_sat = (1..=12).any(|k| {
                let scaled: Vector = v.iter().map(|x| x * k).collect();
                s.contains(&scaled).unwrap()
            });
            if in_sat {
                out.push(v);
            }
            let mut i = 0;
            while i < n {
                point[i] += 1;
                if point[i] <= b {
                    break;
                }
                point[i] = -b;
                i += 1;
            }
            if i == n {
                break;
            }
        }
        out
    }

    #[test]
    fn saturation_examples() {
        let s = Sublattice::span(2, &[int_vec(&[2, 0])]).unwrap();
        assert_eq!(
            saturation(&s),
            Sublattice::span(2, &[int_vec(&[1, 0])]).unwrap()
        );
        let s = Sublattice::span(2, &[int_vec(&[2, 2])]).unwrap();
        let sat = saturation(&s);
        assert_eq!(sat, Sublattice::span(2, &[int_vec(&[1, 1])]).unwrap());
        assert_eq!(saturation(&sat), sat);
        let s = Sublattice::span(3, &[int_vec(&[2, 4, 0]), int_vec(&[0, 3, 3])]).unwrap();
        let sat = saturation(&s);
        for p in saturation_oracle(&s, 3) {
            assert!(sat.contains(&p).unwrap());
        }
        assert_eq!(sat.rank(), s.rank());
    }

    #[test]
    fn quotient_examples() {
        let s = Sublattice::span(2, &[int_vec(&[1, 1])]).unwrap();
        let (rank, p) = quotient_map(2, &s).unwrap();
        assert_eq!(rank, 1);
        assert_eq!(p, m(1, 2, &[1, -1]));
        assert!(cokernel_structure(&p).is_trivial());
        let (rank, p) = quotient_map(2, &Sublattice::zero(2)).unwrap();
        assert_eq!((rank, p), (2, IntMatrix::identity(2)));
        let s = Sublattice::span(2, &[int_vec(&[0, 1])]).unwrap();
        assert_eq!(quotient_map(2, &s).unwrap().1, m(1, 2, &[1, 0]));
        let s = Sublattice::span(2, &[int_vec(&[2, 0])]).unwrap();
        assert_eq!(quotient_map(2, &s), Err(Error::NotSaturated));
    }

    #[test]
    fn hermite_is_canonical() {
        let a = Sublattice::span(2, &[int_vec(&[1, 2]), int_vec(&[3, 4])]).unwrap();
        let b =
            Sublattice::span(2, &[int_vec(&[2, 2]), int_vec(&[1, 2]), int_vec(&[0, 2])]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.basis(), &[int_vec(&[1, 0]), int_vec(&[0, 2])]);
    }

    #[test]
    fn determinant_by_cofactors() {
        let mat = m(3, 3, &[2, -1, 0, 4, 3, 1, -2, 5, 7]);
        assert_eq!(mat.determinant().unwrap(), BigInt::from(62));
        let rows: Vec<Vec<BigRational>> = mat
            .row_vectors()
            .iter()
            .map(|r| linalg::to_rational(r))
            .collect();
        assert!(linalg::solve(&rows, &linalg::to_rational(&int_vec(&[1, 0, 0]))).is_some());
        assert_eq!(
            m(2, 2, &[0, 1, 1, 0]).determinant().unwrap(),
            BigInt::from(-1)
        );
    }

    #[test]
    fn group_names() {
        let g = cokernel_structure(&m(1, 1, &[2]));
        assert_eq!(g.to_string(), "μ₂ (rank 0, torsion [2])");
        assert_eq!(
            AbelianGroupStructure::new(1, vec![]).unwrap().to_string(),
            "G_m (rank 1, torsion [])"
        );
        assert_eq!(
            AbelianGroupStructure::trivial().diagonalizable_name(),
            "trivial"
        );
        let a = AbelianGroupStructure::new(0, int_vec(&[2])).unwrap();
        let b = AbelianGroupStructure::new(1, int_vec(&[3])).unwrap();
        assert_eq!(
            a.direct_sum(&b),
            AbelianGroupStructure::new(1, int_vec(&[6])).unwrap()
        );
        assert!(AbelianGroupStructure::new(0, int_vec(&[2, 3])).is_err());
    }
}
